//! First cohomology of finite groups with coefficients in lattices.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{order_bound, subgroups, PermGroup};
use crate::lattice::{GModule, LatticeAction};
use crate::linalg::{smith_invariants, BigMatrix, ColumnEchelon, IMat};

/// A finite abelian group in elementary-divisor form `Z/d1 × Z/d2 × ...`, `d1 | d2 | ...`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FiniteAbelianGroup {
    divisors: Vec<u64>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        Self::default()
    }

    /// Canonical form of `⊕ Z/n_i`; entries `0` and `1` are dropped.
    pub fn from_orders(orders: &[u64]) -> Self {
        // primary decomposition, then recombine into a divisor chain
        let mut prime_powers: Vec<(u64, Vec<u64>)> = Vec::new();
        for &n in orders.iter().filter(|&&n| n > 1) {
            let mut rest = n;
            let mut p = 2;
            while rest > 1 {
                if rest % p == 0 {
                    let mut q = 1;
                    while rest % p == 0 {
                        rest /= p;
                        q *= p;
                    }
                    match prime_powers.iter_mut().find(|(pp, _)| *pp == p) {
                        Some((_, v)) => v.push(q),
                        None => prime_powers.push((p, vec![q])),
                    }
                }
                p += 1;
            }
        }
        let len = prime_powers.iter().map(|(_, v)| v.len()).max().unwrap_or(0);
        for (_, v) in prime_powers.iter_mut() {
            v.sort_unstable();
            while v.len() < len {
                v.insert(0, 1);
            }
        }
        let divisors = (0..len)
            .map(|i| prime_powers.iter().map(|(_, v)| v[i]).product())
            .collect();
        Self { divisors }
    }

    pub fn divisors(&self) -> &[u64] {
        &self.divisors
    }

    pub fn is_trivial(&self) -> bool {
        self.divisors.is_empty()
    }

    pub fn order(&self) -> u64 {
        self.divisors.iter().product()
    }

    pub fn exponent(&self) -> u64 {
        self.divisors.last().copied().unwrap_or(1)
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.divisors.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.divisors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// A subgroup with nonvanishing first cohomology.
#[derive(Debug, Clone)]
pub struct H1Witness {
    pub subgroup: PermGroup,
    pub h1: FiniteAbelianGroup,
}

#[derive(Debug, Clone)]
pub enum H1Check {
    Vanishes,
    Witness(H1Witness),
}

/// Integer row space kept in Hermite form, one pivot row per pivot column.
struct RowBasis {
    cols: usize,
    rows: Vec<Option<Vec<BigInt>>>,
}

impl RowBasis {
    fn new(cols: usize) -> Self {
        Self {
            cols,
            rows: vec![None; cols],
        }
    }

    fn insert(&mut self, mut v: Vec<BigInt>) {
        for c in 0..self.cols {
            if v[c].is_zero() {
                continue;
            }
            match self.rows[c].take() {
                None => {
                    if v[c].is_negative() {
                        v.iter_mut().for_each(|x| *x = -&*x);
                    }
                    self.rows[c] = Some(v);
                    return;
                }
                Some(p) => {
                    let e = p[c].extended_gcd(&v[c]);
                    let (pg, vg) = (&p[c] / &e.gcd, &v[c] / &e.gcd);
                    let pivot: Vec<BigInt> =
                        p.iter().zip(&v).map(|(a, b)| &e.x * a + &e.y * b).collect();
                    let rest: Vec<BigInt> =
                        p.iter().zip(&v).map(|(a, b)| &pg * b - &vg * a).collect();
                    self.rows[c] = Some(pivot);
                    v = rest;
                }
            }
        }
    }

    fn matrix(&self) -> BigMatrix {
        self.rows.iter().flatten().cloned().collect()
    }
}

/// `H¹(G, M)` for the module of a lattice action.
pub fn h1(action: &LatticeAction) -> Result<FiniteAbelianGroup> {
    h1_module(action.module())
}

/// `H¹(G, M)` as `Z¹ / B¹`.
///
/// A crossed homomorphism is fixed by its values on the generators; walking a
/// Schreier tree expresses every `f(g)` linearly in those values and each
/// non-tree Cayley edge contributes the cocycle equations.
pub fn h1_module(module: &GModule) -> Result<FiniteAbelianGroup> {
    let g = module.group();
    let bound = order_bound();
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded { bound });
    }
    let n = module.rank();
    let gens = g.generator_indices();
    let r = gens.len();
    let cols = r * n;
    if cols == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }

    // f(x) as an n × cols integer matrix, filled along a BFS tree
    let mut f: Vec<Option<Vec<Vec<i64>>>> = vec![None; g.order()];
    f[0] = Some(vec![vec![0; cols]; n]);
    let mut basis = RowBasis::new(cols);
    let mut queue = vec![0usize];
    let mut k = 0;
    while k < queue.len() {
        let x = queue[k];
        k += 1;
        let mx = module.matrix(x);
        for (j, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            // f(x s) = f(x) + x · f(s)
            let mut fy = f[x].clone().expect("visited");
            for a in 0..n {
                for b in 0..n {
                    fy[a][j * n + b] += mx.get(a, b);
                }
            }
            match &f[y] {
                None => {
                    f[y] = Some(fy);
                    queue.push(y);
                }
                Some(existing) => {
                    for (row_new, row_old) in fy.iter().zip(existing) {
                        if row_new != row_old {
                            basis.insert(
                                row_new
                                    .iter()
                                    .zip(row_old)
                                    .map(|(a, b)| BigInt::from(a - b))
                                    .collect(),
                            );
                        }
                    }
                }
            }
        }
    }

    let eqs = basis.matrix();
    let echelon = ColumnEchelon::new(&eqs, cols);
    let z1_rank = cols - echelon.rank;
    if z1_rank == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    // coboundaries of the basis vectors e_i: s_j ↦ (s_j − 1) e_i
    let gen_mats: Vec<IMat> = gens.iter().map(|&s| module.matrix(s).minus_identity()).collect();
    let b1: BigMatrix = (0..n)
        .map(|i| {
            let v: Vec<BigInt> = gen_mats
                .iter()
                .flat_map(|m| m.column(i))
                .map(BigInt::from)
                .collect();
            echelon.kernel_coordinates(&v)
        })
        .collect();
    finite_quotient(&b1, z1_rank)
}

/// `Z^rank / (row span of gens)`, which must be finite.
fn finite_quotient(gens: &BigMatrix, rank: usize) -> Result<FiniteAbelianGroup> {
    let inv = smith_invariants(gens, rank);
    if inv.len() < rank {
        return Err(Error::Unsupported(
            "coboundaries have lower rank than cocycles".into(),
        ));
    }
    let orders: Vec<u64> = inv
        .iter()
        .map(|d| d.to_u64().ok_or_else(|| Error::Unsupported("divisor overflow".into())))
        .collect::<Result<_>>()?;
    Ok(FiniteAbelianGroup::from_orders(&orders))
}

/// `ker(N) / im(σ − 1)` for the cyclic group generated by a matrix `sigma` of order `order`.
pub fn h1_cyclic(sigma: &IMat, order: u64) -> Result<FiniteAbelianGroup> {
    let n = sigma.dim();
    let mut norm = IMat::zero(n);
    let mut power = IMat::identity(n);
    for _ in 0..order {
        for i in 0..n {
            for j in 0..n {
                norm.set(i, j, norm.get(i, j) + power.get(i, j));
            }
        }
        power = power.mul(sigma);
    }
    let echelon = ColumnEchelon::new(&crate::linalg::to_big(&norm.rows()), n);
    let ker_rank = n - echelon.rank;
    if ker_rank == 0 {
        return Ok(FiniteAbelianGroup::trivial());
    }
    let s1 = sigma.minus_identity();
    let image: BigMatrix = (0..n)
        .map(|i| {
            let v: Vec<BigInt> = s1.column(i).into_iter().map(BigInt::from).collect();
            echelon.kernel_coordinates(&v)
        })
        .collect();
    finite_quotient(&image, ker_rank)
}

/// Checks `H¹(H, M) = 0` for every subgroup `H`, in the deterministic subgroup order.
pub fn h1_all_subgroups(action: &LatticeAction) -> Result<H1Check> {
    h1_all_subgroups_module(action.module())
}

pub fn h1_all_subgroups_module(module: &GModule) -> Result<H1Check> {
    for sub in subgroups(module.group(), None)? {
        let h = h1_module(&module.restrict(&sub))?;
        if !h.is_trivial() {
            return Ok(H1Check::Witness(H1Witness { subgroup: sub, h1: h }));
        }
    }
    Ok(H1Check::Vanishes)
}

/// Whether the exponent of `h` divides the group order.
pub fn annihilated_by_order(h: &FiniteAbelianGroup, group_order: u64) -> bool {
    h.is_trivial() || BigInt::from(group_order).is_multiple_of(&BigInt::from(h.exponent()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    fn module(g: PermGroup, mats: Vec<Vec<Vec<i64>>>) -> GModule {
        let n = mats[0].len();
        let mats: Vec<IMat> = mats.into_iter().map(|m| IMat::from_rows(m).unwrap()).collect();
        GModule::from_generator_matrices(g, n, &mats).unwrap()
    }

    #[test]
    fn sign_module_of_c2() {
        let m = module(catalog::cyclic(2), vec![vec![vec![-1]]]);
        assert_eq!(h1_module(&m).unwrap().divisors(), &[2]);
        let sigma = IMat::from_rows(vec![vec![-1]]).unwrap();
        assert_eq!(h1_cyclic(&sigma, 2).unwrap().divisors(), &[2]);
    }

    #[test]
    fn trivial_and_permutation_modules_vanish() {
        let s3 = catalog::symmetric(3);
        let triv = module(s3.clone(), vec![vec![vec![1]]; s3.generators().len()]);
        assert!(h1_module(&triv).unwrap().is_trivial());
        assert!(h1_module(&GModule::permutation_module(&s3)).unwrap().is_trivial());
        assert!(h1_module(&GModule::permutation_module(&catalog::dihedral(4)))
            .unwrap()
            .is_trivial());
    }

    #[test]
    fn augmentation_kernel_of_c3() {
        // Z[C3]/Z: sigma = [[0,-1],[1,-1]], H¹ = Z/3
        let m = module(catalog::cyclic(3), vec![vec![vec![0, -1], vec![1, -1]]]);
        assert_eq!(h1_module(&m).unwrap().divisors(), &[3]);
    }

    #[test]
    fn quadric_swap() {
        let c2 = catalog::cyclic(2);
        let m = module(c2, vec![vec![vec![0, 1], vec![1, 0]]]);
        assert!(h1_module(&m).unwrap().is_trivial());
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(FiniteAbelianGroup::from_orders(&[2, 3]).divisors(), &[6]);
        assert_eq!(FiniteAbelianGroup::from_orders(&[4, 2, 1]).divisors(), &[2, 4]);
        assert_eq!(FiniteAbelianGroup::from_orders(&[6, 4]).divisors(), &[2, 12]);
        assert_eq!(FiniteAbelianGroup::from_orders(&[2, 2]).to_string(), "Z/2 x Z/2");
    }
}
