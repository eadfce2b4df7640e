use serde::{Deserialize, Serialize};

use super::picard::{exceptional_classes, LatticeVector, PicardLattice};
use crate::error::{Error, Result};
use crate::groups::{GroupLiteral, PermGroup, Permutation};
use crate::linalg::{rank_i64, IMat};

/// An isometry of a Picard lattice fixing the canonical class.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatticeAut {
    matrix: IMat,
}

impl LatticeAut {
    pub fn new(lat: &PicardLattice, matrix: IMat) -> Result<Self> {
        if matrix.dim() != lat.rank() {
            return Err(Error::InvalidIsometry(format!(
                "matrix of size {} on a lattice of rank {}",
                matrix.dim(),
                lat.rank()
            )));
        }
        let g = lat.gram_matrix();
        if matrix.transpose().mul(&g).mul(&matrix) != g {
            return Err(Error::InvalidIsometry("intersection form not preserved".into()));
        }
        let k = lat.canonical();
        if matrix.apply(&k) != k {
            return Err(Error::InvalidIsometry("canonical class not fixed".into()));
        }
        Ok(Self { matrix })
    }

    pub fn identity(lat: &PicardLattice) -> Self {
        Self {
            matrix: IMat::identity(lat.rank()),
        }
    }

    pub fn matrix(&self) -> &IMat {
        &self.matrix
    }

    pub fn into_matrix(self) -> IMat {
        self.matrix
    }

    pub fn apply(&self, v: &[i64]) -> LatticeVector {
        self.matrix.apply(v)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &LatticeAut) -> LatticeAut {
        LatticeAut {
            matrix: self.matrix.mul(&other.matrix),
        }
    }

    /// The induced permutation of `classes`, if the set is preserved.
    pub fn permutation_of(&self, classes: &[LatticeVector]) -> Option<Permutation> {
        let images: Option<Vec<usize>> = classes
            .iter()
            .map(|c| {
                let img = self.apply(c);
                classes.iter().position(|d| *d == img)
            })
            .collect();
        Permutation::from_images(images?).ok()
    }
}

/// A finite group acting linearly on `Z^n`: generator matrices plus the full
/// element table, validated against the group's multiplication.
#[derive(Debug, Clone)]
pub struct GModule {
    group: PermGroup,
    matrices: Vec<IMat>,
}

impl GModule {
    /// Builds the module from matrices for the given generating permutations.
    ///
    /// `ρ(a ∘ b) = ρ(a) ρ(b)` is checked on every Cayley-graph edge.
    pub fn new(group: PermGroup, n: usize, gens: &[Permutation], mats: &[IMat]) -> Result<Self> {
        if gens.len() != mats.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} matrices for {} generators",
                mats.len(),
                gens.len()
            )));
        }
        if mats.iter().any(|m| m.dim() != n) {
            return Err(Error::NotAHomomorphism(format!("matrices must be {n} x {n}")));
        }
        let gen_idx: Vec<usize> = gens
            .iter()
            .map(|g| {
                group
                    .index_of(g)
                    .ok_or_else(|| Error::NotAHomomorphism(format!("{g} is not in the group")))
            })
            .collect::<Result<_>>()?;
        let mut table: Vec<Option<IMat>> = vec![None; group.order()];
        table[0] = Some(IMat::identity(n));
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for (&s, m) in gen_idx.iter().zip(mats) {
                let y = group.mul(x, s);
                let my = table[x].as_ref().expect("visited").mul(m);
                match &table[y] {
                    None => {
                        table[y] = Some(my);
                        queue.push(y);
                    }
                    Some(existing) if *existing != my => {
                        return Err(Error::NotAHomomorphism(format!(
                            "matrix relation fails at {}",
                            group.element(y)
                        )));
                    }
                    Some(_) => {}
                }
            }
        }
        let matrices: Vec<IMat> = table
            .into_iter()
            .map(|m| m.ok_or_else(|| Error::NotAHomomorphism("generators do not span the group".into())))
            .collect::<Result<_>>()?;
        Ok(Self { group, matrices })
    }

    /// Matrices for the group's own generators.
    pub fn from_generator_matrices(group: PermGroup, n: usize, mats: &[IMat]) -> Result<Self> {
        let gens = group.generators().to_vec();
        Self::new(group, n, &gens, mats)
    }

    /// The trivial group acting on `Z^n`.
    pub fn trivial(n: usize) -> Self {
        Self {
            group: PermGroup::trivial(1),
            matrices: vec![IMat::identity(n)],
        }
    }

    /// The permutation module of `group` acting on its points.
    pub fn permutation_module(group: &PermGroup) -> Self {
        let n = group.degree();
        let matrices = group
            .elements()
            .iter()
            .map(|p| {
                let mut m = IMat::zero(n);
                for i in 0..n {
                    m.set(p.apply(i), i, 1);
                }
                m
            })
            .collect();
        Self {
            group: group.clone(),
            matrices,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.matrices.first().map_or(0, IMat::dim)
    }

    pub fn matrix(&self, element: usize) -> &IMat {
        &self.matrices[element]
    }

    pub fn generator_matrices(&self) -> Vec<&IMat> {
        self.group
            .generator_indices()
            .into_iter()
            .map(|g| &self.matrices[g])
            .collect()
    }

    /// Restriction to a subgroup of `self.group()`.
    pub fn restrict(&self, sub: &PermGroup) -> GModule {
        let matrices = sub
            .elements()
            .iter()
            .map(|e| self.matrices[self.group.index_of(e).expect("subgroup element")].clone())
            .collect();
        GModule {
            group: sub.clone(),
            matrices,
        }
    }

    /// Direct sum with another module over the same group.
    pub fn direct_sum(&self, other: &GModule) -> GModule {
        let matrices = self
            .group
            .elements()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let j = other.group.index_of(e).expect("same group");
                self.matrices[i].block_sum(&other.matrices[j])
            })
            .collect();
        GModule {
            group: self.group.clone(),
            matrices,
        }
    }

    /// Rank of the invariant sublattice.
    pub fn invariant_rank(&self) -> usize {
        let n = self.rank();
        let rows: Vec<Vec<i64>> = self
            .generator_matrices()
            .into_iter()
            .flat_map(|m| m.minus_identity().rows())
            .collect();
        n - rank_i64(&rows, n)
    }
}

/// A group acting on a Picard lattice by isometries fixing `K`.
#[derive(Debug, Clone)]
pub struct LatticeAction {
    lattice: PicardLattice,
    module: GModule,
}

impl LatticeAction {
    pub fn new(lattice: PicardLattice, group: PermGroup, gens: &[Permutation], mats: &[IMat]) -> Result<Self> {
        for m in mats {
            LatticeAut::new(&lattice, m.clone())?;
        }
        let module = GModule::new(group, lattice.rank(), gens, mats)?;
        Ok(Self { lattice, module })
    }

    /// The action of a group of permutations of the exceptional classes.
    pub fn from_class_permutations(lattice: PicardLattice, group: PermGroup) -> Result<Self> {
        let gens = group.generators().to_vec();
        let mats: Vec<IMat> = gens
            .iter()
            .map(|g| action_from_line_images(&lattice, g).map(LatticeAut::into_matrix))
            .collect::<Result<_>>()?;
        Self::new(lattice, group, &gens, &mats)
    }

    pub fn trivial(lattice: PicardLattice) -> Self {
        Self {
            lattice,
            module: GModule::trivial(lattice.rank()),
        }
    }

    pub fn lattice(&self) -> &PicardLattice {
        &self.lattice
    }

    pub fn group(&self) -> &PermGroup {
        self.module.group()
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn restrict(&self, sub: &PermGroup) -> LatticeAction {
        Self {
            lattice: self.lattice,
            module: self.module.restrict(sub),
        }
    }

    /// Conjugate action `g ↦ c ρ(g) c⁻¹` for an isometry `c`.
    pub fn conjugate(&self, c: &LatticeAut, c_inv: &LatticeAut) -> Result<Self> {
        let gens = self.group().generators().to_vec();
        let mats: Vec<IMat> = self
            .module
            .generator_matrices()
            .into_iter()
            .map(|m| c.matrix().mul(m).mul(c_inv.matrix()))
            .collect();
        Self::new(self.lattice, self.group().clone(), &gens, &mats)
    }

    pub fn to_literal(&self) -> LatticeActionLiteral {
        LatticeActionLiteral {
            lattice: self.lattice,
            group: self.group().to_literal(),
            images: self
                .module
                .generator_matrices()
                .into_iter()
                .map(|m| m.rows())
                .collect(),
        }
    }
}

/// Serialized lattice action: lattice kind, group literal and one row-major
/// matrix per listed generator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeActionLiteral {
    pub lattice: PicardLattice,
    pub group: GroupLiteral,
    pub images: Vec<Vec<Vec<i64>>>,
}

impl LatticeActionLiteral {
    pub fn to_action(&self) -> Result<LatticeAction> {
        let gens = self.group.permutations()?;
        if gens.len() != self.images.len() {
            return Err(Error::malformed(
                "images",
                format!("{} matrices for {} generators", self.images.len(), gens.len()),
            ));
        }
        let mats: Vec<IMat> = self
            .images
            .iter()
            .enumerate()
            .map(|(i, rows)| {
                IMat::from_rows(rows.clone())
                    .ok_or_else(|| Error::malformed(format!("images[{i}]"), "matrix is not square"))
            })
            .collect::<Result<_>>()?;
        let group = PermGroup::close_generators(&gens, self.group.degree)?;
        LatticeAction::new(self.lattice, group, &gens, &mats)
    }
}

/// Rank of the sublattice fixed by every group element.
pub fn invariant_rank(action: &LatticeAction) -> usize {
    action.module.invariant_rank()
}

pub fn is_minimal(action: &LatticeAction) -> bool {
    invariant_rank(action) == 1
}

/// The isometry inducing `perm` on the exceptional classes (canonical order).
///
/// The classes `E1, ..., Ek` together with `H = L12 + E1 + E2` form a basis, so
/// the extension is read off from their images and then checked on every class.
pub fn action_from_line_images(lat: &PicardLattice, perm: &Permutation) -> Result<LatticeAut> {
    let classes = exceptional_classes(lat);
    let k = match lat {
        PicardLattice::Blowup { k } if *k >= 2 => *k,
        _ => {
            return Err(Error::NotExtendable(
                "exceptional classes do not span this lattice".into(),
            ))
        }
    };
    if perm.degree() != classes.len() {
        return Err(Error::DegreeMismatch {
            expected: classes.len(),
            found: perm.degree(),
        });
    }
    for i in 0..classes.len() {
        for j in i..classes.len() {
            let before = lat.dot(&classes[i], &classes[j]);
            let after = lat.dot(&classes[perm.apply(i)], &classes[perm.apply(j)]);
            if before != after {
                return Err(Error::NotIntersectionPreserving(format!(
                    "{}·{} = {before} but the images meet in {after}",
                    lat.label(&classes[i]),
                    lat.label(&classes[j])
                )));
            }
        }
    }
    let pos = |v: &LatticeVector| classes.iter().position(|c| c == v).expect("class");
    let image = |v: &LatticeVector| classes[perm.apply(pos(v))].clone();
    let e = |i: usize| lat.basis_vector(i);
    let mut l12 = vec![0; k + 1];
    l12[0] = 1;
    l12[1] = -1;
    l12[2] = -1;
    let mut cols = Vec::with_capacity(k + 1);
    let h_img: Vec<i64> = image(&l12)
        .iter()
        .zip(image(&e(1)))
        .zip(image(&e(2)))
        .map(|((a, b), c)| a + b + c)
        .collect();
    cols.push(h_img);
    for i in 1..=k {
        cols.push(image(&e(i)));
    }
    let m = IMat::from_columns(&cols).expect("square");
    for (i, c) in classes.iter().enumerate() {
        if m.apply(c) != classes[perm.apply(i)] {
            return Err(Error::NotExtendable(format!(
                "{} is not sent to its prescribed image",
                lat.label(c)
            )));
        }
    }
    LatticeAut::new(lat, m).map_err(|e| Error::NotExtendable(e.to_string()))
}

/// Reflection `v ↦ v + (v·r) r` in a root with `r·r = −2`.
pub fn reflection(lat: &PicardLattice, r: &[i64]) -> LatticeAut {
    let n = lat.rank();
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let e = lat.basis_vector(j);
            let t = lat.dot(&e, r);
            e.iter().zip(r).map(|(a, b)| a + t * b).collect()
        })
        .collect();
    LatticeAut::new(lat, IMat::from_columns(&cols).expect("square")).expect("reflections are isometries")
}

pub const WEYL_MIN_DEGREE: i64 = 3;
pub const WEYL_MAX_DEGREE: i64 = 6;
const WEYL_ORDER_BOUND: usize = 100_000;

/// Weyl group of `K^⊥` with its permutation action on the exceptional classes.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    pub lattice: PicardLattice,
    pub classes: Vec<LatticeVector>,
    pub group: PermGroup,
    pub reflections: Vec<LatticeAut>,
}

impl WeylGroup {
    /// The isometry of the element with index `i`.
    pub fn aut(&self, i: usize) -> LatticeAut {
        action_from_line_images(&self.lattice, self.group.element(i)).expect("Weyl element")
    }

    pub fn aut_of(&self, p: &Permutation) -> Result<LatticeAut> {
        action_from_line_images(&self.lattice, p)
    }

    pub fn action(&self) -> Result<LatticeAction> {
        let gens: Vec<Permutation> = self
            .reflections
            .iter()
            .map(|r| r.permutation_of(&self.classes).expect("reflection permutes classes"))
            .collect();
        let mats: Vec<IMat> = self.reflections.iter().map(|r| r.matrix().clone()).collect();
        LatticeAction::new(self.lattice, self.group.clone(), &gens, &mats)
    }
}

/// Generated by reflections in `E_i − E_{i+1}` and `H − E1 − E2 − E3`.
pub fn weyl_group(lat: &PicardLattice) -> Result<WeylGroup> {
    let degree = lat.degree();
    let k = match lat {
        PicardLattice::Blowup { k } if (WEYL_MIN_DEGREE..=WEYL_MAX_DEGREE).contains(&degree) => *k,
        _ => {
            return Err(Error::DegreeOutOfRange {
                degree,
                min: WEYL_MIN_DEGREE,
                max: WEYL_MAX_DEGREE,
            })
        }
    };
    let classes = exceptional_classes(lat);
    let mut roots = Vec::new();
    for i in 1..k {
        let mut r = vec![0; k + 1];
        r[i] = 1;
        r[i + 1] = -1;
        roots.push(r);
    }
    let mut r = vec![0; k + 1];
    r[..4].copy_from_slice(&[1, -1, -1, -1]);
    roots.push(r);
    let reflections: Vec<LatticeAut> = roots.iter().map(|r| reflection(lat, r)).collect();
    let perms: Vec<Permutation> = reflections
        .iter()
        .map(|r| r.permutation_of(&classes).expect("reflection permutes classes"))
        .collect();
    let group = PermGroup::close_generators_bounded(&perms, classes.len(), WEYL_ORDER_BOUND)?;
    Ok(WeylGroup {
        lattice: *lat,
        classes,
        group,
        reflections,
    })
}

/// Adjoins an orbit of `m` new exceptional classes permuted by `orbit_images`
/// (one permutation of degree `m` per generator of the action's group).
///
/// A blowup lattice gains `m` orthogonal `(−1)`-classes. The quadric first
/// passes to the blowup basis `H = F1 + F2 − G1`, `E1 = F2 − G1`, `E2 = F1 − G1`,
/// `E_{i+1} = G_i`, where `G_i` are the new classes.
pub fn blowup_orbit(
    action: &LatticeAction,
    m: usize,
    orbit_images: &[Permutation],
) -> Result<LatticeAction> {
    let degree = action.lattice.degree();
    if m == 0 || m as i64 >= degree {
        return Err(Error::DegreeUnderflow { degree, length: m });
    }
    if orbit_images.iter().any(|p| p.degree() != m) {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: orbit_images.iter().map(Permutation::degree).find(|&d| d != m).unwrap_or(m),
        });
    }
    let gens = action.group().generators().to_vec();
    if gens.len() != orbit_images.len() {
        return Err(Error::NotAHomomorphism(format!(
            "{} orbit permutations for {} generators",
            orbit_images.len(),
            gens.len()
        )));
    }
    let perm_matrix = |p: &Permutation| {
        let mut pm = IMat::zero(m);
        for i in 0..m {
            pm.set(p.apply(i), i, 1);
        }
        pm
    };
    let extended: Vec<IMat> = action
        .module
        .generator_matrices()
        .into_iter()
        .zip(orbit_images)
        .map(|(a, p)| a.block_sum(&perm_matrix(p)))
        .collect();
    let (lattice, mats) = match action.lattice {
        PicardLattice::Blowup { k } => (PicardLattice::Blowup { k: k + m }, extended),
        PicardLattice::Quadric => {
            let n = m + 2;
            // columns: new basis vectors in (F1, F2, G1, ..., Gm) coordinates
            let mut c = IMat::zero(n);
            let mut c_inv = IMat::zero(n);
            for (j, col) in [[1, 1, -1], [0, 1, -1], [1, 0, -1]].iter().enumerate() {
                for (i, &x) in col.iter().enumerate() {
                    c.set(i, j, x);
                }
            }
            // F1 = H − E1, F2 = H − E2, G1 = H − E1 − E2
            for (j, col) in [[1, -1, 0], [1, 0, -1], [1, -1, -1]].iter().enumerate() {
                for (i, &x) in col.iter().enumerate() {
                    c_inv.set(i, j, x);
                }
            }
            for i in 3..n {
                c.set(i, i, 1);
                c_inv.set(i, i, 1);
            }
            debug_assert!(c.mul(&c_inv).is_identity());
            let mats = extended
                .iter()
                .map(|a| c_inv.mul(a).mul(&c))
                .collect();
            (PicardLattice::Blowup { k: m + 1 }, mats)
        }
    };
    LatticeAction::new(lattice, action.group().clone(), &gens, &mats)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{iso_type, IsoType};

    #[test]
    fn weyl_orders() {
        let orders: Vec<usize> = [6, 5, 4]
            .iter()
            .map(|&d| weyl_group(&PicardLattice::del_pezzo(d).unwrap()).unwrap().group.order())
            .collect();
        assert_eq!(orders, vec![12, 120, 1920]);
        assert!(weyl_group(&PicardLattice::del_pezzo(2).unwrap()).is_err());
    }

    #[test]
    fn small_weyl_types() {
        let w6 = weyl_group(&PicardLattice::del_pezzo(6).unwrap()).unwrap();
        assert_eq!(
            iso_type(&w6.group),
            IsoType::direct(IsoType::Sym(3), IsoType::Cyclic(2))
        );
        let w5 = weyl_group(&PicardLattice::del_pezzo(5).unwrap()).unwrap();
        assert_eq!(iso_type(&w5.group), IsoType::Sym(5));
        assert_eq!(invariant_rank(&w6.action().unwrap()), 1);
    }

    #[test]
    fn identity_extends_to_identity() {
        let lat = PicardLattice::del_pezzo(4).unwrap();
        let a = action_from_line_images(&lat, &Permutation::identity(16)).unwrap();
        assert!(a.matrix().is_identity());
    }

    #[test]
    fn hexagon_rotation() {
        let lat = PicardLattice::del_pezzo(6).unwrap();
        // canonical order E1 E2 E3 L23 L13 L12; hexagon E1 L12 E2 L23 E3 L13
        let hexagon = [0, 5, 1, 3, 2, 4];
        let mut images = vec![0; 6];
        for s in 0..6 {
            images[hexagon[s]] = hexagon[(s + 1) % 6];
        }
        let rot = Permutation::from_images(images).unwrap();
        let a = action_from_line_images(&lat, &rot).unwrap();
        assert_eq!(a.matrix().order(12), Some(6));
        let g = PermGroup::close_generators(&[rot], 6).unwrap();
        let act = LatticeAction::from_class_permutations(lat, g).unwrap();
        assert_eq!(invariant_rank(&act), 1);
    }

    #[test]
    fn non_isometric_permutation_is_rejected() {
        let lat = PicardLattice::del_pezzo(6).unwrap();
        let swap = Permutation::from_cycles(6, &[&[0, 3]]).unwrap();
        assert!(matches!(
            action_from_line_images(&lat, &swap),
            Err(Error::NotIntersectionPreserving(_))
        ));
    }

    #[test]
    fn quadric_swap_is_minimal() {
        let c2 = crate::groups::catalog::cyclic(2);
        let swap = IMat::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let gens = c2.generators().to_vec();
        let act = LatticeAction::new(PicardLattice::Quadric, c2, &gens, &[swap]).unwrap();
        assert!(is_minimal(&act));
        assert!(!is_minimal(&LatticeAction::trivial(PicardLattice::Quadric)));
    }

    #[test]
    fn d5_on_five_points_gives_rank_two() {
        let d5 = crate::groups::catalog::dihedral(5);
        let gens = d5.generators().to_vec();
        let p2 = LatticeAction::new(
            PicardLattice::Blowup { k: 0 },
            d5.clone(),
            &gens,
            &vec![IMat::identity(1); gens.len()],
        )
        .unwrap();
        let x4 = blowup_orbit(&p2, 5, &gens).unwrap();
        assert_eq!(x4.lattice().degree(), 4);
        assert_eq!(invariant_rank(&x4), 2);
    }

    #[test]
    fn quadric_blowup_at_a_point() {
        let q = LatticeAction::trivial(PicardLattice::Quadric);
        assert_eq!(blowup_orbit(&q, 1, &[]).unwrap().lattice().degree(), 7);
        assert!(matches!(
            blowup_orbit(&q, 8, &[]),
            Err(Error::DegreeUnderflow { .. })
        ));
        let c2 = crate::groups::catalog::cyclic(2);
        let swap = IMat::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        let gens = c2.generators().to_vec();
        let act = LatticeAction::new(PicardLattice::Quadric, c2, &gens, &[swap]).unwrap();
        let x7 = blowup_orbit(&act, 1, &[Permutation::identity(1)]).unwrap();
        assert_eq!(x7.lattice().degree(), 7);
        assert_eq!(invariant_rank(&x7), 2);
    }
}
