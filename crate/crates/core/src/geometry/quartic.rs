use super::cyclotomic::Cyclotomic;
use super::monomial::{common_fixed_subspaces, normalize, rank, MonomialMap, Vector};
use crate::error::{Error, Result};
use crate::groups::{close_generators, subgroups, PermGroup, Permutation};
use crate::lattice::{exceptional_classes, LatticeAction, PicardLattice};

/// Intersection of two diagonal quadrics in `P⁴` with a group of monomial automorphisms.
#[derive(Debug, Clone)]
pub struct QuarticModel {
    /// Diagonal coefficients of the two quadrics.
    pub quadrics: [Vector; 2],
    pub generators: Vec<MonomialMap>,
}

/// A projective line through two points.
#[derive(Debug, Clone)]
pub struct Line {
    pub p: Vector,
    pub q: Vector,
}

impl Line {
    pub fn same_as(&self, other: &Line) -> Result<bool> {
        Ok(rank(&[self.p.clone(), self.q.clone(), other.p.clone(), other.q.clone()], 5)? == 2)
    }

    pub fn meets(&self, other: &Line) -> Result<bool> {
        Ok(rank(&[self.p.clone(), self.q.clone(), other.p.clone(), other.q.clone()], 5)? <= 3)
    }

    pub fn image(&self, g: &MonomialMap) -> Result<Line> {
        Ok(Line {
            p: g.apply(&self.p)?,
            q: g.apply(&self.q)?,
        })
    }
}

/// The group generated by the model's maps, with a faithful permutation representation.
#[derive(Debug, Clone)]
pub struct QuarticGroup {
    /// Regular representation on `maps`.
    pub group: PermGroup,
    /// Projectively normalized maps; `maps[0]` is the identity.
    pub maps: Vec<MonomialMap>,
}

impl QuarticGroup {
    /// The monomial map of a group element.
    pub fn map_of(&self, element: usize) -> &MonomialMap {
        &self.maps[self.group.element(element).apply(0)]
    }
}

fn z(m: u32, k: i64) -> Cyclotomic {
    Cyclotomic::zeta(m, k).expect("supported conductor")
}

fn int(n: i64) -> Cyclotomic {
    Cyclotomic::integer(n)
}

fn bilinear(coeffs: &[Cyclotomic], u: &[Cyclotomic], v: &[Cyclotomic]) -> Result<Cyclotomic> {
    let mut acc = int(0);
    for ((c, a), b) in coeffs.iter().zip(u).zip(v) {
        acc = acc.try_add(&c.try_mul(a)?.try_mul(b)?)?;
    }
    Ok(acc)
}

impl QuarticModel {
    /// The surface `x0² + ζ3 x1² + ζ3² x2² + x3² = x0² + ζ3² x1² + ζ3 x2² + x4² = 0`
    /// with `γ` and `β`.
    pub fn standard() -> Self {
        let q1 = vec![int(1), z(3, 1), z(3, 2), int(1), int(0)];
        let q2 = vec![int(1), z(3, 2), z(3, 1), int(0), int(1)];
        let gamma = MonomialMap::new(vec![1, 2, 0, 3, 4], vec![0, 0, 0, 4, 8], 12).expect("valid");
        let beta = MonomialMap::new(vec![0, 2, 1, 4, 3], vec![0, 0, 0, 6, 0], 12).expect("valid");
        Self {
            quadrics: [q1, q2],
            generators: vec![gamma, beta],
        }
    }

    pub fn quadric_values(&self, x: &[Cyclotomic]) -> Result<[Cyclotomic; 2]> {
        Ok([
            bilinear(&self.quadrics[0], x, x)?,
            bilinear(&self.quadrics[1], x, x)?,
        ])
    }

    pub fn contains_point(&self, x: &[Cyclotomic]) -> Result<bool> {
        Ok(self.quadric_values(x)?.iter().all(Cyclotomic::is_zero))
    }

    pub fn contains_line(&self, l: &Line) -> Result<bool> {
        for c in &self.quadrics {
            for (u, v) in [(&l.p, &l.p), (&l.p, &l.q), (&l.q, &l.q)] {
                if !bilinear(c, u, v)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Pulls back a diagonal quadric along a monomial map.
    fn pullback(coeffs: &[Cyclotomic], g: &MonomialMap) -> Result<Vector> {
        let mut out = vec![int(0); coeffs.len()];
        for (i, c) in coeffs.iter().enumerate() {
            let s = Cyclotomic::zeta(g.conductor(), 2 * g.exponents()[i])?;
            out[g.perm()[i]] = c.try_mul(&s)?;
        }
        Ok(out)
    }

    /// Checks that every generator preserves the pencil and that the group has order 12.
    pub fn validate(&self) -> Result<QuarticGroup> {
        for g in &self.generators {
            for q in &self.quadrics {
                let pulled = Self::pullback(q, g)?;
                let r = rank(&[self.quadrics[0].clone(), self.quadrics[1].clone(), pulled], 5)?;
                if r != 2 {
                    return Err(Error::NotAnAction(
                        "a generator does not preserve the pencil of quadrics".into(),
                    ));
                }
            }
        }
        let group = self.group()?;
        if group.group.order() != 12 {
            return Err(Error::NotAnAction(format!(
                "expected a group of order 12, found {}",
                group.group.order()
            )));
        }
        Ok(group)
    }

    /// Projective closure of the generators.
    pub fn group(&self) -> Result<QuarticGroup> {
        let n = self.quadrics[0].len();
        let mut maps = vec![MonomialMap::identity(n)];
        let mut i = 0;
        while i < maps.len() {
            for g in &self.generators {
                let h = g.compose(&maps[i])?.projective_normal();
                if !maps.contains(&h) {
                    maps.push(h);
                    if maps.len() > crate::groups::order_bound() {
                        return Err(Error::OrderBoundExceeded {
                            bound: crate::groups::order_bound(),
                        });
                    }
                }
            }
            i += 1;
        }
        let index = |m: &MonomialMap| maps.iter().position(|x| x == m).expect("closed");
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| {
                let images = maps
                    .iter()
                    .map(|e| Ok(index(&g.compose(e)?.projective_normal())))
                    .collect::<Result<Vec<_>>>()?;
                Permutation::from_images(images)
            })
            .collect::<Result<_>>()?;
        let group = close_generators(&gens, maps.len())?;
        Ok(QuarticGroup { group, maps })
    }

    /// A line on the surface defined over `Q(ζ24)`.
    fn seed_line(&self) -> Result<Line> {
        let lambda = z(12, 1).try_add(&int(-1))?;
        let r = z(12, 5);
        let i = z(4, 1);
        let half = Cyclotomic::rational(num_rational::BigRational::new(1.into(), 2.into()));
        let zeta3 = z(3, 1);
        let point = |s: i64, t: i64| -> Result<Vector> {
            let (s, t) = (int(s), int(t));
            let u = lambda.try_mul(&s)?;
            let v = (-&zeta3).try_mul(&t)?.try_div(&lambda)?;
            let x0 = u.try_add(&v)?.try_mul(&half)?;
            let x3 = u.try_add(&-&v)?.try_mul(&half)?.try_div(&i)?;
            let x1 = s.try_add(&t)?.try_mul(&half)?;
            let x2 = s.try_add(&-&t)?.try_mul(&half)?.try_div(&r)?;
            Ok(vec![x0, x1, x2, x3, int(0)])
        };
        let (mut p, mut q) = (point(1, 0)?, point(0, 1)?);
        let c2 = &self.quadrics[1];
        let a = bilinear(c2, &p, &p)?;
        let b = bilinear(c2, &p, &q)?.try_mul(&int(2))?;
        let root = (-&a).sqrt()?;
        p[4] = root.clone();
        q[4] = root.try_mul(&b)?.try_div(&a.try_mul(&int(2))?)?;
        Ok(Line { p, q })
    }

    /// The 16 lines: sign changes of the seed line.
    pub fn lines(&self) -> Result<Vec<Line>> {
        let seed = self.seed_line()?;
        let mut lines: Vec<Line> = Vec::new();
        for mask in 0u32..32 {
            let flip = |v: &Vector| -> Vector {
                v.iter()
                    .enumerate()
                    .map(|(k, x)| if mask >> k & 1 == 1 { -x } else { x.clone() })
                    .collect()
            };
            let l = Line {
                p: flip(&seed.p),
                q: flip(&seed.q),
            };
            if !self.contains_line(&l)? {
                return Err(Error::LineEnumerationFailure(lines.len()));
            }
            let mut fresh = true;
            for m in &lines {
                if m.same_as(&l)? {
                    fresh = false;
                    break;
                }
            }
            if fresh {
                lines.push(l);
            }
        }
        if lines.len() != 16 {
            return Err(Error::LineEnumerationFailure(lines.len()));
        }
        Ok(lines)
    }
}

/// Finds a bijection `f` with `adj_a[i][j] == adj_b[f(i)][f(j)]`.
fn graph_isomorphism(adj_a: &[Vec<bool>], adj_b: &[Vec<bool>]) -> Option<Vec<usize>> {
    fn extend(a: &[Vec<bool>], b: &[Vec<bool>], f: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let i = f.len();
        if i == a.len() {
            return true;
        }
        for j in 0..b.len() {
            if used[j] || (0..i).any(|k| a[i][k] != b[j][f[k]]) {
                continue;
            }
            f.push(j);
            used[j] = true;
            if extend(a, b, f, used) {
                return true;
            }
            f.pop();
            used[j] = false;
        }
        false
    }
    let mut f = Vec::with_capacity(adj_a.len());
    let mut used = vec![false; adj_b.len()];
    extend(adj_a, adj_b, &mut f, &mut used).then_some(f)
}

/// The action of the model's group on the degree 4 Picard lattice, read off from its lines.
pub fn dp4_line_action(model: &QuarticModel) -> Result<LatticeAction> {
    model.validate()?;
    let lines = model.lines()?;
    let lat = PicardLattice::del_pezzo(4)?;
    let classes = exceptional_classes(&lat);
    let n = lines.len();
    let mut line_adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            line_adj[i][j] = i != j && lines[i].meets(&lines[j])?;
        }
    }
    let class_adj: Vec<Vec<bool>> = (0..n)
        .map(|i| (0..n).map(|j| lat.dot(&classes[i], &classes[j]) == 1).collect())
        .collect();
    let to_class = graph_isomorphism(&line_adj, &class_adj)
        .ok_or(Error::LineEnumerationFailure(n))?;
    let mut to_line = vec![0; n];
    for (l, &c) in to_class.iter().enumerate() {
        to_line[c] = l;
    }
    let gens: Vec<Permutation> = model
        .generators
        .iter()
        .map(|g| {
            let mut images = vec![0; n];
            for c in 0..n {
                let img = lines[to_line[c]].image(g)?;
                let mut found = None;
                for (k, l) in lines.iter().enumerate() {
                    if l.same_as(&img)? {
                        found = Some(k);
                        break;
                    }
                }
                let k = found.ok_or(Error::LineEnumerationFailure(n))?;
                images[c] = to_class[k];
            }
            Permutation::from_images(images)
        })
        .collect::<Result<_>>()?;
    let group = close_generators(&gens, n)?;
    LatticeAction::from_class_permutations(lat, group)
}

fn trim(mut p: Vec<Cyclotomic>) -> Vec<Cyclotomic> {
    while p.last().is_some_and(Cyclotomic::is_zero) {
        p.pop();
    }
    p
}

/// Remainder of `a` modulo `b` (coefficients in increasing degree, `b` nonzero).
fn poly_rem(a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<Vec<Cyclotomic>> {
    let mut r = trim(a.to_vec());
    let lead = b.last().expect("nonzero").inv()?;
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let f = r.last().expect("nonempty").try_mul(&lead)?;
        for (k, c) in b.iter().enumerate() {
            r[shift + k] = r[shift + k].try_add(&-(f.try_mul(c)?))?;
        }
        r = trim(r);
    }
    Ok(r)
}

/// Common zeros in `P¹` of binary quadratic forms `(a, b, c) = a s² + b s t + c t²`.
fn common_roots(forms: &[[Cyclotomic; 3]]) -> Result<Vec<(Cyclotomic, Cyclotomic)>> {
    let mut roots = Vec::new();
    if forms.iter().all(|f| f[0].is_zero()) {
        roots.push((int(1), int(0)));
    }
    let mut g: Vec<Cyclotomic> = Vec::new();
    for f in forms {
        let mut p = trim(vec![f[2].clone(), f[1].clone(), f[0].clone()]);
        while !p.is_empty() {
            let r = poly_rem(&g, &p)?;
            g = p;
            p = r;
        }
    }
    match g.len() {
        0 => unreachable!("caller rejects identically vanishing forms"),
        1 => {}
        2 => roots.push((-(g[0].try_div(&g[1])?), int(1))),
        _ => {
            let disc = g[1].try_mul(&g[1])?.try_add(&-(int(4).try_mul(&g[0])?.try_mul(&g[2])?))?;
            let d = disc.sqrt()?;
            let two_a = int(2).try_mul(&g[2])?;
            for sd in [d.clone(), -&d] {
                let s = (-&g[1]).try_add(&sd)?.try_div(&two_a)?;
                if !roots.iter().any(|(x, y)| x == &s && y == &int(1)) {
                    roots.push((s, int(1)));
                }
            }
        }
    }
    Ok(roots)
}

fn combine(u: &[Cyclotomic], v: &[Cyclotomic], s: &Cyclotomic, t: &Cyclotomic) -> Result<Vector> {
    u.iter()
        .zip(v)
        .map(|(a, b)| s.try_mul(a)?.try_add(&t.try_mul(b)?))
        .collect()
}

fn surface_points_in(model: &QuarticModel, basis: &[Vector]) -> Result<Vec<Vector>> {
    match basis.len() {
        1 => Ok(if model.contains_point(&basis[0])? {
            vec![basis[0].clone()]
        } else {
            vec![]
        }),
        2 => {
            let (u, v) = (&basis[0], &basis[1]);
            let forms: Vec<[Cyclotomic; 3]> = model
                .quadrics
                .iter()
                .map(|c| {
                    Ok([
                        bilinear(c, u, u)?,
                        int(2).try_mul(&bilinear(c, u, v)?)?,
                        bilinear(c, v, v)?,
                    ])
                })
                .collect::<Result<_>>()?;
            if forms.iter().flatten().all(Cyclotomic::is_zero) {
                return Err(Error::PositiveDimensionalComponent(
                    "a fixed line lies on the surface".into(),
                ));
            }
            common_roots(&forms)?
                .iter()
                .map(|(s, t)| combine(u, v, s, t))
                .collect()
        }
        d => Err(Error::Unsupported(format!(
            "fixed locus of projective dimension {}",
            d - 1
        ))),
    }
}

/// Orbit of a point under the whole group, normalized.
fn orbit_of(group: &QuarticGroup, x: &[Cyclotomic]) -> Result<Vec<Vector>> {
    let mut out: Vec<Vector> = Vec::new();
    for g in &group.maps {
        let y = normalize(&g.apply(x)?)?;
        if !out.contains(&y) {
            out.push(y);
        }
    }
    Ok(out)
}

/// All orbits of length at most `max_length` of points on the surface.
pub fn small_orbits_dp4(model: &QuarticModel, max_length: usize) -> Result<Vec<Vec<Vector>>> {
    let group = model.validate()?;
    let n = model.quadrics[0].len();
    let mut orbits: Vec<Vec<Vector>> = Vec::new();
    for h in subgroups(&group.group, Some(max_length))? {
        let gens: Vec<MonomialMap> = h
            .generators()
            .iter()
            .map(|p| group.maps[p.apply(0)].clone())
            .collect();
        for basis in common_fixed_subspaces(&gens, n)? {
            for x in surface_points_in(model, &basis)? {
                let orbit = orbit_of(&group, &x)?;
                if orbit.len() <= max_length && !orbits.iter().any(|o| o.contains(&orbit[0])) {
                    orbits.push(orbit);
                }
            }
        }
    }
    orbits.sort_by_key(Vec::len);
    Ok(orbits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::monomial::fixed_subspaces;

    #[test]
    fn model_is_valid() {
        let g = QuarticModel::standard().validate().unwrap();
        assert_eq!(g.group.order(), 12);
        assert_eq!(g.maps[0], MonomialMap::identity(5));
    }

    #[test]
    fn gamma_eigenspace_contains_the_fixed_point() {
        let model = QuarticModel::standard();
        let target: Vector = vec![int(1), int(1), int(1), int(0), int(0)];
        let subs = fixed_subspaces(&model.generators[0]).unwrap();
        assert!(subs.iter().any(|s| {
            let mut rows = s.basis.clone();
            rows.push(target.clone());
            rank(&rows, 5).unwrap() == s.basis.len()
        }));
    }

    #[test]
    fn sixteen_lines_on_the_surface() {
        let model = QuarticModel::standard();
        let lines = model.lines().unwrap();
        for l in &lines {
            let meets = lines.iter().filter(|m| !m.same_as(l).unwrap() && m.meets(l).unwrap()).count();
            assert_eq!(meets, 5);
        }
    }

    #[test]
    fn binary_gcd_roots() {
        let f = [int(1), int(0), int(-1)];
        let g = [int(1), int(-2), int(1)];
        let roots = common_roots(&[f, g]).unwrap();
        assert_eq!(roots, vec![(int(1), int(1))]);
    }
}

#[cfg(test)]
mod model_tests {
    use super::*;
    use crate::cohomology::{h1_all_subgroups, H1Check};
    use crate::groups::{iso_type, IsoType};
    use crate::lattice::invariant_rank;

    #[test]
    fn line_action() {
        let action = dp4_line_action(&QuarticModel::standard()).unwrap();
        assert_eq!(action.group().order(), 12);
        assert_eq!(iso_type(action.group()), IsoType::Dicyclic(3));
        assert_eq!(invariant_rank(&action), 1);
        let mut lens = action.group().point_orbits().iter().map(Vec::len).collect::<Vec<_>>();
        lens.sort();
        assert_eq!(lens, vec![4, 12]);
        assert!(matches!(h1_all_subgroups(&action).unwrap(), H1Check::Vanishes));
    }

    #[test]
    fn small_orbits() {
        let orbits = small_orbits_dp4(&QuarticModel::standard(), 3).unwrap();
        let lens: Vec<usize> = orbits.iter().map(Vec::len).collect();
        assert_eq!(lens, vec![1, 3]);
        let pt = |v: [i64; 5]| v.iter().map(|&x| int(x)).collect::<Vector>();
        assert_eq!(orbits[0], vec![pt([1, 1, 1, 0, 0])]);
        for p in [pt([-1, 1, 1, 0, 0]), pt([1, 1, -1, 0, 0]), pt([1, -1, 1, 0, 0])] {
            assert!(orbits[1].contains(&normalize(&p).unwrap()));
        }
    }
}
