use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::IMat;

pub type LatticeVector = Vec<i64>;

/// Picard lattice of a del Pezzo surface in one of its two standard models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PicardLattice {
    /// Blowup of the plane in `k` points: basis `H, E1, ..., Ek`.
    Blowup { k: usize },
    /// `P¹ × P¹`: basis of the two ruling classes.
    Quadric,
}

impl PicardLattice {
    /// Blowup model of the del Pezzo surface of degree `d` (`1 ≤ d ≤ 9`).
    pub fn del_pezzo(degree: i64) -> Result<Self> {
        if !(1..=9).contains(&degree) {
            return Err(Error::DegreeOutOfRange {
                degree,
                min: 1,
                max: 9,
            });
        }
        Ok(PicardLattice::Blowup {
            k: (9 - degree) as usize,
        })
    }

    pub fn rank(&self) -> usize {
        match self {
            PicardLattice::Blowup { k } => k + 1,
            PicardLattice::Quadric => 2,
        }
    }

    pub fn degree(&self) -> i64 {
        let k = self.canonical();
        self.dot(&k, &k)
    }

    pub fn gram(&self, i: usize, j: usize) -> i64 {
        match self {
            PicardLattice::Blowup { .. } => match (i, j) {
                (0, 0) => 1,
                _ if i == j => -1,
                _ => 0,
            },
            PicardLattice::Quadric => i64::from(i != j),
        }
    }

    pub fn gram_matrix(&self) -> IMat {
        let n = self.rank();
        IMat::from_rows(
            (0..n)
                .map(|i| (0..n).map(|j| self.gram(i, j)).collect())
                .collect(),
        )
        .expect("square")
    }

    pub fn canonical(&self) -> LatticeVector {
        match self {
            PicardLattice::Blowup { k } => {
                let mut v = vec![1; k + 1];
                v[0] = -3;
                v
            }
            PicardLattice::Quadric => vec![-2, -2],
        }
    }

    pub fn dot(&self, u: &[i64], v: &[i64]) -> i64 {
        match self {
            PicardLattice::Blowup { .. } => {
                u[0] * v[0] - u[1..].iter().zip(&v[1..]).map(|(a, b)| a * b).sum::<i64>()
            }
            PicardLattice::Quadric => u[0] * v[1] + u[1] * v[0],
        }
    }

    pub fn basis_vector(&self, i: usize) -> LatticeVector {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// Short label for a class of the blowup model (`E1`, `L12`, `C`, ...).
    pub fn label(&self, v: &[i64]) -> String {
        match self {
            PicardLattice::Quadric => format!("{v:?}"),
            PicardLattice::Blowup { .. } => {
                let idx = |val: i64| -> Vec<usize> {
                    v[1..]
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c == val)
                        .map(|(i, _)| i + 1)
                        .collect()
                };
                let join = |ix: Vec<usize>| ix.iter().map(|i| i.to_string()).collect::<String>();
                match v[0] {
                    0 if idx(1).len() == 1 => format!("E{}", join(idx(1))),
                    1 if idx(-1).len() == 2 => format!("L{}", join(idx(-1))),
                    2 if idx(-1).len() == 5 => format!("C{}", join(idx(0))),
                    _ => format!("{v:?}"),
                }
            }
        }
    }
}

/// All classes `C` with `C·C = −1` and `C·K = −1`, in canonical order:
/// by the `H` coefficient, then by the remaining coordinates descending.
pub fn exceptional_classes(lat: &PicardLattice) -> Vec<LatticeVector> {
    let k = match lat {
        PicardLattice::Quadric => return Vec::new(),
        PicardLattice::Blowup { k } => *k,
    };
    if k == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    // Cauchy–Schwarz on the E-coordinates bounds c0: (1 − 3c0)² ≤ k(c0² + 1)
    let admissible = |c0: i64| (1 - 3 * c0).pow(2) <= k as i64 * (c0 * c0 + 1);
    for c0 in (-64..=64).filter(|&c0| admissible(c0)) {
        let mut tail = Vec::with_capacity(k);
        fill(k, 1 - 3 * c0, c0 * c0 + 1, &mut tail, &mut |t| {
            let mut v = vec![c0];
            v.extend_from_slice(t);
            out.push(v);
        });
    }
    out.sort_by(|a, b| a[0].cmp(&b[0]).then_with(|| b[1..].cmp(&a[1..])));
    out
}

/// Enumerates integer tuples of length `k` with the given sum and sum of squares.
fn fill(
    k: usize,
    sum: i64,
    sumsq: i64,
    prefix: &mut Vec<i64>,
    emit: &mut dyn FnMut(&[i64]),
) {
    let remaining = k - prefix.len();
    if remaining == 0 {
        if sum == 0 && sumsq == 0 {
            emit(prefix);
        }
        return;
    }
    if sumsq < 0 || sum * sum > remaining as i64 * sumsq {
        return;
    }
    let bound = (sumsq as f64).sqrt() as i64 + 1;
    for c in -bound..=bound {
        if c * c > sumsq {
            continue;
        }
        prefix.push(c);
        fill(k, sum - c, sumsq - c * c, prefix, emit);
        prefix.pop();
    }
}
