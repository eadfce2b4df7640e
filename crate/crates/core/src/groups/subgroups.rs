use std::collections::HashSet;

use super::group::{order_bound, PermGroup};
use crate::error::{Error, Result};

/// Fixed-width bitset over the element indices of a parent group.
#[derive(Clone, PartialEq, Eq, Hash)]
struct ElementSet(Vec<u64>);

impl ElementSet {
    fn from_members(n: usize, members: &[usize]) -> Self {
        let mut words = vec![0u64; n.div_ceil(64)];
        for &m in members {
            words[m / 64] |= 1 << (m % 64);
        }
        Self(words)
    }

    fn contains(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
}

struct Found {
    members: Vec<usize>,
    gens: Vec<usize>,
    set: ElementSet,
}

/// Element-index lists of every subgroup, sorted by order then lexicographically.
///
/// Cyclic subgroups are the seeds; every subgroup is a join of cyclic ones, so
/// joining each found subgroup with each seed until nothing new appears is
/// exhaustive.
pub(crate) fn subgroup_index_sets(g: &PermGroup) -> Vec<(Vec<usize>, Vec<usize>)> {
    let n = g.order();
    let mut seen: HashSet<ElementSet> = HashSet::new();
    let mut found: Vec<Found> = Vec::new();

    let mut cyclic: Vec<usize> = Vec::new();
    for x in 0..n {
        let (members, gens) = g.closure_of(&[x]);
        let set = ElementSet::from_members(n, &members);
        if seen.insert(set.clone()) {
            cyclic.push(found.len());
            found.push(Found { members, gens, set });
        }
    }
    let seeds: Vec<usize> = cyclic
        .iter()
        .map(|&i| found[i].gens.first().copied().unwrap_or(0))
        .collect();

    let mut frontier: Vec<usize> = (0..found.len()).collect();
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for &h in &frontier {
            for &s in &seeds {
                if found[h].set.contains(s) {
                    continue;
                }
                let mut gens = found[h].gens.clone();
                gens.push(s);
                let (members, gens) = g.closure_of(&gens);
                let set = ElementSet::from_members(n, &members);
                if seen.insert(set.clone()) {
                    next.push(found.len());
                    found.push(Found { members, gens, set });
                }
            }
        }
        frontier = next;
    }

    let mut out: Vec<(Vec<usize>, Vec<usize>)> =
        found.into_iter().map(|f| (f.members, f.gens)).collect();
    out.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    out
}

/// All subgroups of `g`, or those of index at most `max_index`.
///
/// The order is deterministic: by subgroup order, then by element set.
pub fn subgroups(g: &PermGroup, max_index: Option<usize>) -> Result<Vec<PermGroup>> {
    let bound = order_bound();
    if g.order() > bound {
        return Err(Error::OrderBoundExceeded { bound });
    }
    Ok(subgroup_index_sets(g)
        .into_iter()
        .filter(|(members, _)| max_index.is_none_or(|m| g.order() / members.len() <= m))
        .map(|(members, gens)| g.subgroup_from_indices(&members, &gens))
        .collect())
}

pub fn normal_subgroups(g: &PermGroup) -> Result<Vec<PermGroup>> {
    Ok(subgroups(g, None)?
        .into_iter()
        .filter(|h| g.is_normal(h))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::catalog;

    #[test]
    fn s3_has_six_subgroups() {
        let subs = subgroups(&catalog::symmetric(3), None).unwrap();
        let orders: Vec<usize> = subs.iter().map(|s| s.order()).collect();
        assert_eq!(orders, vec![1, 2, 2, 2, 3, 6]);
    }

    #[test]
    fn lagrange_and_membership() {
        let g = catalog::symmetric(4);
        let subs = subgroups(&g, None).unwrap();
        assert_eq!(subs.len(), 30);
        for h in &subs {
            assert_eq!(g.order() % h.order(), 0);
            assert!(g.contains_group(h));
        }
        assert_eq!(normal_subgroups(&g).unwrap().len(), 4);
    }

    #[test]
    fn a5_has_no_small_index_subgroups() {
        let a5 = catalog::alternating(5);
        let small = subgroups(&a5, Some(4)).unwrap();
        assert_eq!(small.len(), 1);
        assert_eq!(small[0].order(), 60);
        assert_eq!(subgroups(&a5, None).unwrap().len(), 59);
    }
}
