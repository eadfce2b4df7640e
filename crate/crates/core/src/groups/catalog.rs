//! Constructors for the concrete groups named throughout the crate.

use super::group::PermGroup;
use super::perm::Permutation;

fn build(degree: usize, gens: Vec<Permutation>) -> PermGroup {
    PermGroup::close_generators_bounded(&gens, degree, usize::MAX).expect("catalog group")
}

fn cycle(n: usize) -> Permutation {
    Permutation::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap()
}

/// Cyclic group of order `n` acting regularly on `n` points.
pub fn cyclic(n: usize) -> PermGroup {
    assert!(n >= 1);
    build(n, vec![cycle(n)])
}

/// Dihedral group of order `2n`: the symmetries of an `n`-gon for `n ≥ 3`,
/// `C2` for `n = 1` and the Klein four-group on 4 points for `n = 2`.
pub fn dihedral(n: usize) -> PermGroup {
    match n {
        0 => panic!("dihedral group of order 0"),
        1 => cyclic(2),
        2 => build(
            4,
            vec![
                Permutation::from_cycles(4, &[&[0, 1], &[2, 3]]).unwrap(),
                Permutation::from_cycles(4, &[&[0, 2], &[1, 3]]).unwrap(),
            ],
        ),
        _ => {
            let flip = Permutation::from_images((0..n).map(|i| (n - i) % n).collect()).unwrap();
            build(n, vec![cycle(n), flip])
        }
    }
}

/// Dicyclic group of order `4n` in its regular action.
///
/// Elements are `a^k x^e` with `a` of order `2n`, `x² = aⁿ`, `x a x⁻¹ = a⁻¹`;
/// the point `2k + e` stands for `a^k x^e` and generators act by left multiplication.
pub fn dicyclic(n: usize) -> PermGroup {
    assert!(n >= 1);
    let m = 2 * n;
    let pt = |k: usize, e: usize| 2 * (k % m) + e;
    let mut a = vec![0; 2 * m];
    let mut x = vec![0; 2 * m];
    for k in 0..m {
        a[pt(k, 0)] = pt(k + 1, 0);
        a[pt(k, 1)] = pt(k + 1, 1);
        // x a^k = a^{-k} x ; x a^k x = a^{-k} a^n
        x[pt(k, 0)] = pt(m - k, 1);
        x[pt(k, 1)] = pt(m - k + n, 0);
    }
    build(
        2 * m,
        vec![
            Permutation::from_images(a).unwrap(),
            Permutation::from_images(x).unwrap(),
        ],
    )
}

pub fn symmetric(n: usize) -> PermGroup {
    if n < 2 {
        return PermGroup::trivial(n.max(1));
    }
    let swap = Permutation::from_cycles(n, &[&[0, 1]]).unwrap();
    build(n, vec![swap, cycle(n)])
}

pub fn alternating(n: usize) -> PermGroup {
    if n < 3 {
        return PermGroup::trivial(n.max(1));
    }
    let gens = (2..n)
        .map(|k| Permutation::from_cycles(n, &[&[0, 1, k]]).unwrap())
        .collect();
    build(n, gens)
}

/// The affine group `x ↦ ax + b` over `F_p`, i.e. `C_p ⋊ C_{p-1}`.
pub fn frobenius(p: usize) -> PermGroup {
    let primitive = (2..p)
        .find(|&g| (1..p - 1).all(|k| pow_mod(g, k, p) != 1))
        .unwrap_or(1);
    let mul = Permutation::from_images((0..p).map(|x| x * primitive % p).collect()).unwrap();
    build(p, vec![cycle(p), mul])
}

fn pow_mod(b: usize, e: usize, m: usize) -> usize {
    (0..e).fold(1, |acc, _| acc * b % m)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orders() {
        assert_eq!(cyclic(7).order(), 7);
        assert_eq!(dihedral(5).order(), 10);
        assert_eq!(dihedral(2).order(), 4);
        assert_eq!(dicyclic(3).order(), 12);
        assert_eq!(dicyclic(2).order(), 8);
        assert_eq!(symmetric(5).order(), 120);
        assert_eq!(alternating(5).order(), 60);
        assert_eq!(frobenius(5).order(), 20);
    }

    #[test]
    fn dicyclic_has_a_unique_involution() {
        for n in 2..8 {
            let g = dicyclic(n);
            let involutions = (0..g.order()).filter(|&i| g.element_order(i) == 2).count();
            assert_eq!(involutions, 1, "Dic{n}");
        }
    }
}
