use std::collections::HashMap;
use std::hash::Hash;

use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// Points checked against the action axioms before orbits are computed.
const SAMPLE: usize = 16;

/// Partition of `points` into orbits of `g` under `action`.
///
/// The action is a left action: `action(a ∘ b, p) = action(a, action(b, p))`.
/// Orbits are listed by first appearance in `points`, members in `points` order.
pub fn orbits<P, F>(g: &PermGroup, action: F, points: &[P]) -> Result<Vec<Vec<P>>>
where
    P: Clone + Eq + Hash,
    F: Fn(&Permutation, &P) -> P,
{
    let position: HashMap<&P, usize> = points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    if position.len() != points.len() {
        return Err(Error::NotAnAction("point list has repeated entries".into()));
    }
    let id = Permutation::identity(g.degree());
    for p in points.iter().take(SAMPLE) {
        if action(&id, p) != *p {
            return Err(Error::NotAnAction("identity moves a point".into()));
        }
        for a in g.generators() {
            for b in g.generators() {
                if action(&a.compose(b), p) != action(a, &action(b, p)) {
                    return Err(Error::NotAnAction(format!(
                        "composition of {a} and {b} is not respected"
                    )));
                }
            }
        }
    }

    let mut orbit_of = vec![usize::MAX; points.len()];
    let mut out: Vec<Vec<usize>> = Vec::new();
    for start in 0..points.len() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        orbit_of[start] = id;
        let mut members = vec![start];
        let mut k = 0;
        while k < members.len() {
            let p = &points[members[k]];
            k += 1;
            for a in g.generators() {
                let q = action(a, p);
                let qi = *position.get(&q).ok_or_else(|| {
                    Error::NotAnAction("a point is mapped outside the point set".into())
                })?;
                if orbit_of[qi] == usize::MAX {
                    orbit_of[qi] = id;
                    members.push(qi);
                }
            }
        }
        if !g.order().is_multiple_of(members.len()) {
            return Err(Error::NotAnAction(format!(
                "orbit of length {} in a group of order {}",
                members.len(),
                g.order()
            )));
        }
        members.sort_unstable();
        out.push(members);
    }
    Ok(out
        .into_iter()
        .map(|o| o.into_iter().map(|i| points[i].clone()).collect())
        .collect())
}

/// Orbit lengths of `g` on `points`, sorted ascending.
pub fn orbit_lengths<P, F>(g: &PermGroup, action: F, points: &[P]) -> Result<Vec<usize>>
where
    P: Clone + Eq + Hash,
    F: Fn(&Permutation, &P) -> P,
{
    let mut lens: Vec<usize> = orbits(g, action, points)?.iter().map(|o| o.len()).collect();
    lens.sort_unstable();
    Ok(lens)
}
