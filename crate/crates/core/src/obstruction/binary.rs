//! Binary polyhedral groups as subgroups of `SL(2, p)` acting on `F_p² ∖ 0`.

use crate::groups::{PermGroup, Permutation};

type Mat2 = [[u32; 2]; 2];

fn mul(p: u32, a: &Mat2, b: &Mat2) -> Mat2 {
    let mut out = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = (a[i][0] * b[0][j] + a[i][1] * b[1][j]) % p;
        }
    }
    out
}

fn order(p: u32, a: &Mat2) -> u32 {
    let id = [[1, 0], [0, 1]];
    let mut acc = *a;
    let mut k = 1;
    while acc != id {
        acc = mul(p, &acc, a);
        k += 1;
    }
    k
}

/// Permutation of the nonzero vectors `(x, y) ↦ 1 + x p + y − 1` induced by `v ↦ a v`.
fn to_perm(p: u32, a: &Mat2) -> Permutation {
    let n = (p * p - 1) as usize;
    let mut images = vec![0; n];
    for x in 0..p {
        for y in 0..p {
            if x == 0 && y == 0 {
                continue;
            }
            let nx = (a[0][0] * x + a[0][1] * y) % p;
            let ny = (a[1][0] * x + a[1][1] * y) % p;
            images[(x * p + y - 1) as usize] = (nx * p + ny - 1) as usize;
        }
    }
    Permutation::from_images(images).expect("invertible matrix")
}

fn special_linear(p: u32) -> Vec<Mat2> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..p {
            for c in 0..p {
                for d in 0..p {
                    if (a * d + p * p - b * c) % p == 1 {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

fn generate(p: u32, gens: &[Mat2]) -> PermGroup {
    let perms: Vec<Permutation> = gens.iter().map(|g| to_perm(p, g)).collect();
    PermGroup::close_generators_bounded(&perms, (p * p - 1) as usize, usize::MAX)
        .expect("unbounded closure")
}

/// `SL(2, 3)`, the binary tetrahedral group.
pub fn binary_tetrahedral() -> PermGroup {
    generate(3, &[[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
}

/// `SL(2, 5)`, the binary icosahedral group.
pub fn binary_icosahedral() -> PermGroup {
    generate(5, &[[[1, 1], [0, 1]], [[1, 0], [1, 1]]])
}

/// The binary octahedral group as an order-48 subgroup of `SL(2, 7)`, generated
/// by the first (order 8, order 3) pair, in lexicographic order, that generates it.
pub fn binary_octahedral() -> PermGroup {
    let p = 7;
    let sl = special_linear(p);
    let eights: Vec<&Mat2> = sl.iter().filter(|m| order(p, m) == 8).collect();
    let threes: Vec<&Mat2> = sl.iter().filter(|m| order(p, m) == 3).collect();
    for a in &eights {
        for b in &threes {
            if order(p, &mul(p, a, b)) != 4 {
                continue;
            }
            let g = generate(p, &[**a, **b]);
            if g.order() == 48 {
                return g;
            }
        }
    }
    unreachable!("SL(2,7) contains the binary octahedral group")
}
