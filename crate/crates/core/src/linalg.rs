//! Exact integer linear algebra: small square matrices for lattice isometries and
//! arbitrary-precision echelon / Smith forms for cohomology.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Square integer matrix acting on column vectors, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<i64>>", try_from = "Vec<Vec<i64>>")]
pub struct IMat {
    n: usize,
    data: Vec<i64>,
}

impl IMat {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![0; n * n];
        for i in 0..n {
            data[i * n + i] = 1;
        }
        Self { n, data }
    }

    pub fn zero(n: usize) -> Self {
        Self {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> Option<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return None;
        }
        Some(Self {
            n,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose `j`-th column is `cols[j]`.
    pub fn from_columns(cols: &[Vec<i64>]) -> Option<Self> {
        let n = cols.len();
        if cols.iter().any(|c| c.len() != n) {
            return None;
        }
        let mut m = Self::zero(n);
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Some(m)
    }

    /// Block-diagonal sum.
    pub fn block_sum(&self, other: &IMat) -> IMat {
        let n = self.n + other.n;
        let mut m = Self::zero(n);
        for i in 0..self.n {
            for j in 0..self.n {
                m.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                m.set(self.n + i, self.n + j, other.get(i, j));
            }
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        self.data[i * self.n + j] = x;
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.data.chunks(self.n.max(1)).map(|r| r.to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        (0..self.n).map(|i| self.get(i, j)).collect()
    }

    pub fn mul(&self, other: &IMat) -> IMat {
        let n = self.n;
        let mut out = Self::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    out.data[i * n + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        (0..self.n)
            .map(|i| (0..self.n).map(|j| self.get(i, j) * v[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> IMat {
        let mut out = Self::zero(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.set(j, i, self.get(i, j));
            }
        }
        out
    }

    pub fn minus_identity(&self) -> IMat {
        let mut out = self.clone();
        for i in 0..self.n {
            out.data[i * self.n + i] -= 1;
        }
        out
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n)
    }

    pub fn pow(&self, mut e: u64) -> IMat {
        let mut base = self.clone();
        let mut acc = Self::identity(self.n);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative order, if it is at most `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut acc = self.clone();
        for k in 1..=limit {
            if acc.is_identity() {
                return Some(k);
            }
            acc = acc.mul(self);
        }
        None
    }

    pub fn determinant(&self) -> BigInt {
        let rows: Vec<Vec<BigInt>> = self
            .rows()
            .into_iter()
            .map(|r| r.into_iter().map(BigInt::from).collect())
            .collect();
        bareiss_determinant(rows)
    }
}

impl fmt::Debug for IMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.rows())
    }
}

impl From<IMat> for Vec<Vec<i64>> {
    fn from(m: IMat) -> Self {
        m.rows()
    }
}

impl TryFrom<Vec<Vec<i64>>> for IMat {
    type Error = String;

    fn try_from(rows: Vec<Vec<i64>>) -> Result<Self, Self::Error> {
        IMat::from_rows(rows).ok_or_else(|| "matrix rows must form a square".to_string())
    }
}

fn bareiss_determinant(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * a[n - 1][n - 1].clone()
}

/// Rectangular matrix over the integers with arbitrary precision.
pub type BigMatrix = Vec<Vec<BigInt>>;

pub fn to_big(rows: &[Vec<i64>]) -> BigMatrix {
    rows.iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect()
}

/// Column echelon form `m · u = h` with `u` unimodular and `u_inv = u⁻¹`.
///
/// The first `rank` columns of `h` are nonzero; the remaining columns of `u`
/// form a basis of the integer kernel of `m`.
pub struct ColumnEchelon {
    pub h: BigMatrix,
    pub u: BigMatrix,
    pub u_inv: BigMatrix,
    pub rank: usize,
}

impl ColumnEchelon {
    pub fn new(m: &BigMatrix, cols: usize) -> Self {
        let rows = m.len();
        let mut h: BigMatrix = m.clone();
        let mut u = big_identity(cols);
        let mut u_inv = big_identity(cols);
        let mut p = 0;
        for r in 0..rows {
            if p == cols {
                break;
            }
            loop {
                let best = (p..cols)
                    .filter(|&j| !h[r][j].is_zero())
                    .min_by(|&a, &b| h[r][a].abs().cmp(&h[r][b].abs()));
                let Some(best) = best else { break };
                if best != p {
                    swap_cols(&mut h, best, p);
                    swap_cols(&mut u, best, p);
                    u_inv.swap(best, p);
                }
                let mut done = true;
                for j in p + 1..cols {
                    if h[r][j].is_zero() {
                        continue;
                    }
                    let q = h[r][j].div_floor(&h[r][p]);
                    // col_j -= q col_p ; inverse: row_p += q row_j
                    add_col(&mut h, j, p, &-&q);
                    add_col(&mut u, j, p, &-&q);
                    add_row(&mut u_inv, p, j, &q);
                    if !h[r][j].is_zero() {
                        done = false;
                    }
                }
                if done {
                    break;
                }
            }
            if p < cols && !h[r][p].is_zero() {
                p += 1;
            }
        }
        Self {
            h,
            u,
            u_inv,
            rank: p,
        }
    }

    /// Kernel basis vectors (columns of `u` past the rank).
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let cols = self.u.len();
        (self.rank..cols)
            .map(|j| (0..cols).map(|i| self.u[i][j].clone()).collect())
            .collect()
    }

    /// Coordinates of a kernel vector in [`Self::kernel_basis`].
    pub fn kernel_coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        let cols = self.u.len();
        (self.rank..cols)
            .map(|i| {
                self.u_inv[i]
                    .iter()
                    .zip(v)
                    .map(|(a, b)| a * b)
                    .sum::<BigInt>()
            })
            .collect()
    }
}

fn big_identity(n: usize) -> BigMatrix {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { BigInt::one() } else { BigInt::zero() })
                .collect()
        })
        .collect()
}

fn swap_cols(m: &mut BigMatrix, a: usize, b: usize) {
    for row in m.iter_mut() {
        row.swap(a, b);
    }
}

/// `col_dst += k · col_src`
fn add_col(m: &mut BigMatrix, dst: usize, src: usize, k: &BigInt) {
    for row in m.iter_mut() {
        let add = &row[src] * k;
        row[dst] += add;
    }
}

/// `row_dst += k · row_src`
fn add_row(m: &mut BigMatrix, dst: usize, src: usize, k: &BigInt) {
    let add: Vec<BigInt> = m[src].iter().map(|x| x * k).collect();
    for (x, a) in m[dst].iter_mut().zip(add) {
        *x += a;
    }
}

/// Rank over the rationals.
pub fn rank(m: &BigMatrix, cols: usize) -> usize {
    ColumnEchelon::new(m, cols).rank
}

pub fn rank_i64(rows: &[Vec<i64>], cols: usize) -> usize {
    rank(&to_big(rows), cols)
}

/// Nonzero Smith invariants `d1 | d2 | ...` of an integer matrix (all positive).
pub fn smith_invariants(m: &BigMatrix, cols: usize) -> Vec<BigInt> {
    let mut a = m.clone();
    let rows = a.len();
    let mut out = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                let neg = -q;
                add_row(&mut a, i, t, &neg);
                if !a[i][t].is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                add_col(&mut a, j, t, &-q);
                if !a[t][j].is_zero() {
                    clean = false;
                }
            }
            if !clean {
                let best = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| (i == t || j == t) && !a[i][j].is_zero())
                    .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()))
                    .expect("pivot row or column is nonzero");
                a.swap(t, best.0);
                swap_cols(&mut a, t, best.1);
                continue;
            }
            let bad = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match bad {
                Some((i, _)) => {
                    let one = BigInt::one();
                    add_row(&mut a, t, i, &one);
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
        t += 1;
    }
    out
}


/// Diagonalization `u · a · v = s` over the integers, with `u`, `v` unimodular.
///
/// The diagonal of `s` is not normalized to divisibility order.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub u: Vec<Vec<i64>>,
    pub s: Vec<Vec<i64>>,
    pub v: Vec<Vec<i64>>,
}

fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect()
}

impl SmithForm {
    pub fn new(a: &[Vec<i64>], cols: usize) -> Self {
        let rows = a.len();
        let mut s = a.to_vec();
        let mut u = identity_rows(rows);
        let mut v = identity_rows(cols);
        for t in 0..rows.min(cols) {
            loop {
                let Some((pi, pj)) = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| s[i][j] != 0)
                    .min_by_key(|&(i, j)| s[i][j].abs())
                else {
                    return Self { u, s, v };
                };
                s.swap(t, pi);
                u.swap(t, pi);
                for r in s.iter_mut() {
                    r.swap(t, pj);
                }
                for r in v.iter_mut() {
                    r.swap(t, pj);
                }
                let p = s[t][t];
                let mut clean = true;
                for i in t + 1..rows {
                    let q = s[i][t].div_euclid(p);
                    for j in 0..cols {
                        s[i][j] -= q * s[t][j];
                    }
                    for j in 0..rows {
                        u[i][j] -= q * u[t][j];
                    }
                    clean &= s[i][t] == 0;
                }
                for j in t + 1..cols {
                    let q = s[t][j].div_euclid(p);
                    for i in 0..rows {
                        s[i][j] -= q * s[i][t];
                    }
                    for r in v.iter_mut() {
                        r[j] -= q * r[t];
                    }
                    clean &= s[t][j] == 0;
                }
                if clean {
                    break;
                }
            }
        }
        Self { u, s, v }
    }

    pub fn diagonal(&self) -> Vec<i64> {
        (0..self.s.len().min(self.v.len())).map(|i| self.s[i][i]).collect()
    }
}

#[cfg(test)]
mod smith_tests {
    use super::*;

    fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
        a.iter()
            .map(|r| (0..b[0].len()).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
            .collect()
    }

    #[test]
    fn transforms_diagonalize() {
        let a = vec![vec![2, 4], vec![6, 8], vec![-1, 3]];
        let f = SmithForm::new(&a, 2);
        assert_eq!(mul(&mul(&f.u, &a), &f.v), f.s);
        for i in 0..3 {
            for j in 0..2 {
                if i != j {
                    assert_eq!(f.s[i][j], 0);
                }
            }
        }
        let d: i64 = f.diagonal().iter().product();
        assert_eq!(d.abs(), 2);
    }
}
