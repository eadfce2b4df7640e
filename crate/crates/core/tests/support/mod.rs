//! Test-side oracles, kept free of the library's own linear algebra.
#![allow(dead_code)]

use cremona_lab::cohomology::FiniteAbelianGroup;
use cremona_lab::groups::{catalog, PermGroup, Permutation};
use cremona_lab::lattice::GModule;
use cremona_lab::linalg::IMat;
use rand::seq::SliceRandom;
use rand::Rng;

pub type Mat = Vec<Vec<i128>>;

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let (n, k, m) = (a.len(), b.len(), b.first().map_or(0, Vec::len));
    (0..n)
        .map(|i| (0..m).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum()).collect())
        .collect()
}

pub fn to_mat(m: &IMat) -> Mat {
    m.rows().into_iter().map(|r| r.into_iter().map(i128::from).collect()).collect()
}

fn to_imat(m: &Mat) -> IMat {
    IMat::from_rows(m.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect()).unwrap()
}

/// Nonzero Smith invariants of an integer matrix, by plain pivoting.
pub fn smith_diagonal(mut a: Mat) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            let Some((pi, pj)) = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| a[i][j] != 0)
                .min_by_key(|&(i, j)| a[i][j].abs())
            else {
                return out;
            };
            a.swap(t, pi);
            for r in a.iter_mut() {
                r.swap(t, pj);
            }
            let p = a[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = a[i][t] / p;
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
                clean &= a[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = a[t][j] / p;
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
                clean &= a[t][j] == 0;
            }
            if !clean {
                continue;
            }
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| a[i][j] % p != 0);
            match bad {
                Some((i, _)) => {
                    for j in t..cols {
                        a[t][j] += a[i][j];
                    }
                }
                None => break,
            }
        }
        out.push(a[t][t].abs());
    }
    out
}

/// `ker N / im(σ − 1)` for `σ` of order `m`.
pub fn h1_cyclic_oracle(sigma: &Mat, m: u64) -> FiniteAbelianGroup {
    let n = sigma.len();
    let mut norm = vec![vec![0i128; n]; n];
    let mut p = identity(n);
    for _ in 0..m {
        for i in 0..n {
            for j in 0..n {
                norm[i][j] += p[i][j];
            }
        }
        p = mul(&p, sigma);
    }
    // column-reduce the norm: norm · u is echelon, u_inv tracks the inverse
    let mut a = norm;
    let mut u = identity(n);
    let mut u_inv = identity(n);
    let mut pivot_cols = 0;
    for row in 0..n {
        loop {
            let nz: Vec<usize> = (pivot_cols..n).filter(|&j| a[row][j] != 0).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    swap_cols(&mut a, &mut u, &mut u_inv, pivot_cols, j);
                    pivot_cols += 1;
                }
                break;
            }
            let j0 = *nz.iter().min_by_key(|&&j| a[row][j].abs()).unwrap();
            for &j in &nz {
                if j != j0 {
                    let q = a[row][j] / a[row][j0];
                    add_col(&mut a, &mut u, &mut u_inv, j, j0, -q);
                }
            }
        }
        if pivot_cols == n {
            break;
        }
    }
    let kernel: Vec<usize> = (pivot_cols..n).collect();
    if kernel.is_empty() {
        return FiniteAbelianGroup::trivial();
    }
    let mut coords = vec![vec![0i128; n]; kernel.len()];
    for j in 0..n {
        let mut v: Vec<i128> = (0..n).map(|i| sigma[i][j]).collect();
        v[j] -= 1;
        let c: Vec<i128> = (0..n).map(|i| (0..n).map(|t| u_inv[i][t] * v[t]).sum()).collect();
        for (r, &k) in kernel.iter().enumerate() {
            coords[r][j] = c[k];
        }
        debug_assert!((0..pivot_cols).all(|k| c[k] == 0));
    }
    let d = smith_diagonal(coords);
    assert_eq!(d.len(), kernel.len(), "image of σ − 1 has full rank in ker N");
    FiniteAbelianGroup::from_orders(&d.iter().map(|&x| x as u64).collect::<Vec<_>>())
}

fn swap_cols(a: &mut Mat, u: &mut Mat, u_inv: &mut Mat, i: usize, j: usize) {
    for r in a.iter_mut().chain(u.iter_mut()) {
        r.swap(i, j);
    }
    u_inv.swap(i, j);
}

/// column j += q · column k
fn add_col(a: &mut Mat, u: &mut Mat, u_inv: &mut Mat, j: usize, k: usize, q: i128) {
    for r in a.iter_mut().chain(u.iter_mut()) {
        r[j] += q * r[k];
    }
    let n = u_inv.len();
    for t in 0..n {
        let x = u_inv[j][t];
        u_inv[k][t] -= q * x;
    }
}

const BLOCKS: &[&[&[i128]]] = &[
    &[&[1]],
    &[&[-1]],
    &[&[0, 1], &[1, 0]],
    &[&[0, -1], &[1, -1]],
    &[&[0, -1], &[1, 0]],
    &[&[0, -1], &[1, 1]],
    &[&[0, 0, 1], &[1, 0, 0], &[0, 1, 0]],
    &[&[0, 0, -1], &[1, 0, 0], &[0, 1, 0]],
];

fn order(m: &Mat) -> u64 {
    let n = m.len();
    let mut p = m.clone();
    for k in 1..=60 {
        if p == identity(n) {
            return k;
        }
        p = mul(&p, m);
    }
    panic!("matrix of infinite order");
}

/// A finite-order matrix of rank at most `max_rank`, conjugated by a random
/// unimodular matrix, with its order.
pub fn random_finite_order(rng: &mut impl Rng, max_rank: usize) -> (Mat, u64) {
    let mut blocks: Vec<&[&[i128]]> = Vec::new();
    let mut rank = 0;
    let target = rng.gen_range(1..=max_rank);
    while rank < target {
        let b = *BLOCKS.choose(rng).unwrap();
        if rank + b.len() <= max_rank {
            rank += b.len();
            blocks.push(b);
        }
    }
    let mut m = vec![vec![0i128; rank]; rank];
    let mut off = 0;
    for b in blocks {
        for (i, r) in b.iter().enumerate() {
            for (j, &x) in r.iter().enumerate() {
                m[off + i][off + j] = x;
            }
        }
        off += b.len();
    }
    let mut c = identity(rank);
    let mut c_inv = identity(rank);
    if rank > 1 {
        for _ in 0..3 {
            let i = rng.gen_range(0..rank);
            let mut j = rng.gen_range(0..rank);
            while j == i {
                j = rng.gen_range(0..rank);
            }
            let q: i128 = if rng.gen() { 1 } else { -1 };
            let mut e = identity(rank);
            e[i][j] = q;
            let mut e_inv = identity(rank);
            e_inv[i][j] = -q;
            c = mul(&c, &e);
            c_inv = mul(&e_inv, &c_inv);
        }
    }
    let sigma = mul(&mul(&c, &m), &c_inv);
    let ord = order(&sigma);
    (sigma, ord)
}

pub fn cyclic_module(sigma: &Mat, m: u64) -> GModule {
    if m == 1 {
        return GModule::trivial(sigma.len());
    }
    GModule::from_generator_matrices(catalog::cyclic(m as usize), sigma.len(), &[to_imat(sigma)]).unwrap()
}

pub fn random_perm_group(rng: &mut impl Rng, max_degree: usize) -> PermGroup {
    let n = rng.gen_range(1..=max_degree);
    let gens: Vec<Permutation> = (0..rng.gen_range(1..=2))
        .map(|_| {
            let mut p: Vec<usize> = (0..n).collect();
            p.shuffle(rng);
            Permutation::from_images(p).unwrap()
        })
        .collect();
    PermGroup::close_generators(&gens, n).unwrap()
}
