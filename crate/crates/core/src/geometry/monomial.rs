use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

pub type Vector = Vec<Cyclotomic>;

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut [Vector], cols: usize) -> Result<Vec<usize>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv()?;
        rows[r] = rows[r].iter().map(|x| x.try_mul(&inv)).collect::<Result<_>>()?;
        for i in 0..rows.len() {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                let updated: Vector = rows[i]
                    .iter()
                    .zip(&rows[r])
                    .map(|(a, b)| a.try_add(&-(f.try_mul(b)?)))
                    .collect::<Result<_>>()?;
                rows[i] = updated;
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    Ok(pivots)
}

pub fn rank(rows: &[Vector], cols: usize) -> Result<usize> {
    let mut m = rows.to_vec();
    Ok(rref(&mut m, cols)?.len())
}

/// Basis of the right kernel of `rows` (each row of length `cols`).
pub fn kernel(rows: &[Vector], cols: usize) -> Result<Vec<Vector>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, cols)?;
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    Ok(free
        .iter()
        .map(|&f| {
            let mut v = vec![Cyclotomic::integer(0); cols];
            v[f] = Cyclotomic::integer(1);
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = -&m[row][f];
            }
            v
        })
        .collect())
}

/// Scales a nonzero vector so its first nonzero coordinate is 1.
pub fn normalize(v: &[Cyclotomic]) -> Result<Vector> {
    let lead = v
        .iter()
        .find(|x| !x.is_zero())
        .ok_or_else(|| Error::Unsupported("the zero vector is not a projective point".into()))?
        .inv()?;
    v.iter().map(|x| x.try_mul(&lead)).collect()
}

pub fn projectively_equal(a: &[Cyclotomic], b: &[Cyclotomic]) -> Result<bool> {
    Ok(rank(&[a.to_vec(), b.to_vec()], a.len())? == 1)
}

/// The projective map `x ↦ y` with `y_i = ζ_m^{exponents[i]} · x_{perm[i]}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MonomialMap {
    perm: Vec<usize>,
    exponents: Vec<i64>,
    conductor: u32,
}

impl MonomialMap {
    pub fn new(perm: Vec<usize>, exponents: Vec<i64>, conductor: u32) -> Result<Self> {
        Cyclotomic::zeta(conductor, 0)?;
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidPermutation(format!("{perm:?}")));
            }
        }
        if exponents.len() != n {
            return Err(Error::DegreeMismatch {
                expected: n,
                found: exponents.len(),
            });
        }
        let exponents = exponents
            .into_iter()
            .map(|e| e.rem_euclid(conductor as i64))
            .collect();
        Ok(Self {
            perm,
            exponents,
            conductor,
        })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            perm: (0..n).collect(),
            exponents: vec![0; n],
            conductor: 1,
        }
    }

    /// Number of homogeneous coordinates.
    pub fn len(&self) -> usize {
        self.perm.len()
    }

    pub fn is_empty(&self) -> bool {
        self.perm.is_empty()
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn exponents(&self) -> &[i64] {
        &self.exponents
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    fn with_conductor(&self, m: u32) -> Self {
        let f = (m / self.conductor) as i64;
        Self {
            perm: self.perm.clone(),
            exponents: self.exponents.iter().map(|e| e * f).collect(),
            conductor: m,
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Result<Self> {
        let m = self.conductor.lcm(&other.conductor);
        let (f, g) = (self.with_conductor(m), other.with_conductor(m));
        let perm = (0..f.len()).map(|i| g.perm[f.perm[i]]).collect();
        let exponents = (0..f.len())
            .map(|i| f.exponents[i] + g.exponents[f.perm[i]])
            .collect();
        Self::new(perm, exponents, m)
    }

    /// Representative with the first exponent zero (same projective map).
    pub fn projective_normal(&self) -> Self {
        let shift = self.exponents.first().copied().unwrap_or(0);
        let m = self.conductor as i64;
        let g = self
            .exponents
            .iter()
            .fold(m, |acc, e| acc.gcd(&(e - shift).rem_euclid(m)));
        let m2 = (m / g.max(1)).max(1);
        Self {
            perm: self.perm.clone(),
            exponents: self
                .exponents
                .iter()
                .map(|e| (e - shift).rem_euclid(m) / (m / m2))
                .collect(),
            conductor: m2 as u32,
        }
    }

    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.projective_normal() == other.projective_normal()
    }

    pub fn is_linear_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p) && self.exponents.iter().all(|&e| e == 0)
    }

    /// Order of the linear map (not the projective one).
    pub fn linear_order(&self) -> u64 {
        let mut acc = self.clone();
        let mut k = 1;
        while !acc.is_linear_identity() {
            acc = acc.compose(self).expect("same conductor");
            k += 1;
        }
        k
    }

    pub fn apply(&self, x: &[Cyclotomic]) -> Result<Vector> {
        (0..self.len())
            .map(|i| Cyclotomic::zeta(self.conductor, self.exponents[i])?.try_mul(&x[self.perm[i]]))
            .collect()
    }

    pub fn matrix(&self) -> Result<Vec<Vector>> {
        let n = self.len();
        (0..n)
            .map(|i| {
                let mut row = vec![Cyclotomic::integer(0); n];
                row[self.perm[i]] = Cyclotomic::zeta(self.conductor, self.exponents[i])?;
                Ok(row)
            })
            .collect()
    }
}

/// An eigenspace of a monomial map: a projective subspace of fixed points.
#[derive(Debug, Clone)]
pub struct FixedSubspace {
    /// Eigenvalue as `ζ_conductor^k`.
    pub eigenvalue: (u32, i64),
    pub basis: Vec<Vector>,
}

impl FixedSubspace {
    pub fn projective_dim(&self) -> isize {
        self.basis.len() as isize - 1
    }
}

/// Common eigenspaces of `maps`; their union is the common fixed locus.
pub fn common_fixed_subspaces(maps: &[MonomialMap], n: usize) -> Result<Vec<Vec<Vector>>> {
    if maps.is_empty() {
        let id = (0..n)
            .map(|i| {
                let mut v = vec![Cyclotomic::integer(0); n];
                v[i] = Cyclotomic::integer(1);
                v
            })
            .collect();
        return Ok(vec![id]);
    }
    let orders: Vec<u64> = maps.iter().map(MonomialMap::linear_order).collect();
    let cond = maps
        .iter()
        .zip(&orders)
        .fold(1u32, |acc, (m, &o)| acc.lcm(&m.conductor).lcm(&(o as u32)));
    let mats: Vec<Vec<Vector>> = maps.iter().map(|m| m.matrix()).collect::<Result<_>>()?;
    let mut out = Vec::new();
    let mut choice = vec![0u64; maps.len()];
    loop {
        let mut rows: Vec<Vector> = Vec::new();
        for (j, mat) in mats.iter().enumerate() {
            let lambda = Cyclotomic::zeta(cond, (choice[j] * cond as u64 / orders[j]) as i64)?;
            for (i, row) in mat.iter().enumerate() {
                let mut r = row.clone();
                r[i] = r[i].try_add(&-&lambda)?;
                rows.push(r);
            }
        }
        let k = kernel(&rows, n)?;
        if !k.is_empty() {
            out.push(k);
        }
        let mut j = 0;
        loop {
            if j == choice.len() {
                return Ok(out);
            }
            choice[j] += 1;
            if choice[j] < orders[j] {
                break;
            }
            choice[j] = 0;
            j += 1;
        }
    }
}

/// Eigenspace decomposition of a single monomial map.
pub fn fixed_subspaces(map: &MonomialMap) -> Result<Vec<FixedSubspace>> {
    let order = map.linear_order();
    let cond = map.conductor.lcm(&(order as u32));
    let mat = map.matrix()?;
    let n = map.len();
    let mut out = Vec::new();
    for k in 0..order {
        let e = (k * cond as u64 / order) as i64;
        let lambda = Cyclotomic::zeta(cond, e)?;
        let rows: Vec<Vector> = mat
            .iter()
            .enumerate()
            .map(|(i, row)| {
                let mut r = row.clone();
                r[i] = r[i].try_add(&-&lambda)?;
                Ok(r)
            })
            .collect::<Result<_>>()?;
        let basis = kernel(&rows, n)?;
        if !basis.is_empty() {
            out.push(FixedSubspace {
                eigenvalue: (cond, e),
                basis,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_fixes_everything() {
        let subs = fixed_subspaces(&MonomialMap::identity(5)).unwrap();
        assert_eq!(subs.len(), 1);
        assert_eq!(subs[0].projective_dim(), 4);
    }

    #[test]
    fn five_cycle_has_five_fixed_points() {
        let m = MonomialMap::new(vec![1, 2, 3, 4, 0], vec![0; 5], 1).unwrap();
        let subs = fixed_subspaces(&m).unwrap();
        assert_eq!(subs.len(), 5);
        for s in &subs {
            assert_eq!(s.basis.len(), 1);
            let v = normalize(&s.basis[0]).unwrap();
            let z = &v[1];
            for k in 0..5 {
                assert_eq!(v[k], z.pow(k as i64).unwrap());
            }
        }
    }

    #[test]
    fn composition_law() {
        let f = MonomialMap::new(vec![1, 2, 0], vec![0, 1, 2], 3).unwrap();
        let g = MonomialMap::new(vec![0, 2, 1], vec![1, 0, 0], 2).unwrap();
        let x: Vector = (1..=3).map(Cyclotomic::integer).collect();
        let lhs = f.compose(&g).unwrap().apply(&x).unwrap();
        let rhs = f.apply(&g.apply(&x).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(f.linear_order(), 3);
    }

    #[test]
    fn projective_equality_ignores_scalars() {
        let a = MonomialMap::new(vec![0, 1], vec![1, 1], 4).unwrap();
        assert!(a.projectively_equal(&MonomialMap::identity(2)));
        assert_eq!(a.projective_normal(), MonomialMap::identity(2));
    }
}
