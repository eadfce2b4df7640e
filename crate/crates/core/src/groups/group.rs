use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::perm::Permutation;
use crate::error::{Error, Result};

pub const DEFAULT_ORDER_BOUND: usize = 10_000;
pub const ORDER_BOUND_ENV: &str = "CREMONA_LAB_ORDER_BOUND";

/// Multiplication tables are only built for groups up to this order.
const TABLE_LIMIT: usize = 2_500;

/// The group order bound, overridable through `CREMONA_LAB_ORDER_BOUND`.
pub fn order_bound() -> usize {
    static BOUND: OnceLock<usize> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var(ORDER_BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse().ok())
            .unwrap_or(DEFAULT_ORDER_BOUND)
    })
}

/// A finite permutation group stored by full element enumeration.
///
/// Elements are kept sorted by their image lists, so the identity is always
/// element 0 and element indices are a canonical labeling of the group.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    table: OnceLock<Vec<u32>>,
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        Self {
            degree: self.degree,
            generators: self.generators.clone(),
            elements: self.elements.clone(),
            index: self.index.clone(),
            table: OnceLock::new(),
        }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// Closure of `gens` under composition, as in [`PermGroup::close_generators`].
pub fn close_generators(gens: &[Permutation], degree: usize) -> Result<PermGroup> {
    PermGroup::close_generators(gens, degree)
}

impl PermGroup {
    pub fn close_generators(gens: &[Permutation], degree: usize) -> Result<Self> {
        Self::close_generators_bounded(gens, degree, order_bound())
    }

    pub fn close_generators_bounded(
        gens: &[Permutation],
        degree: usize,
        bound: usize,
    ) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let generators: Vec<Permutation> =
            gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut elements = vec![id];
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for g in &generators {
                let next = elements[i].compose(g);
                if !seen.contains_key(&next) {
                    if elements.len() >= bound {
                        return Err(Error::OrderBoundExceeded { bound });
                    }
                    seen.insert(next.clone(), ());
                    queue.push_back(elements.len());
                    elements.push(next);
                }
            }
        }
        Ok(Self::from_closed_elements(degree, generators, elements))
    }

    /// Builds a group from a set already known to be closed.
    pub(crate) fn from_closed_elements(
        degree: usize,
        generators: Vec<Permutation>,
        mut elements: Vec<Permutation>,
    ) -> Self {
        elements.sort();
        elements.dedup();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let mut group = Self {
            degree,
            generators,
            elements,
            index,
            table: OnceLock::new(),
        };
        if group.generators.is_empty() && group.order() > 1 {
            group.generators = group.small_generating_set();
        }
        group
    }

    pub fn trivial(degree: usize) -> Self {
        Self::from_closed_elements(degree, Vec::new(), vec![Permutation::identity(degree)])
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub const IDENTITY: usize = 0;

    fn table(&self) -> Option<&[u32]> {
        if self.order() > TABLE_LIMIT {
            return None;
        }
        Some(self.table.get_or_init(|| {
            let n = self.order();
            let mut t = Vec::with_capacity(n * n);
            for a in &self.elements {
                for b in &self.elements {
                    t.push(self.index[&a.compose(b)] as u32);
                }
            }
            t
        }))
    }

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match self.table() {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    pub fn element_order(&self, a: usize) -> u64 {
        self.elements[a].order()
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .all(|a| g.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Greedy generating set: scan elements by decreasing order.
    fn small_generating_set(&self) -> Vec<Permutation> {
        let mut order: Vec<usize> = (1..self.order()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.elements[i].order()), i));
        let mut gens: Vec<usize> = Vec::new();
        let mut span = vec![false; self.order()];
        span[0] = true;
        let mut size = 1;
        for i in order {
            if size == self.order() {
                break;
            }
            if span[i] {
                continue;
            }
            gens.push(i);
            let (members, _) = self.closure_of(&gens);
            span = vec![false; self.order()];
            for &m in &members {
                span[m] = true;
            }
            size = members.len();
        }
        gens.into_iter().map(|i| self.elements[i].clone()).collect()
    }

    /// Element indices of the subgroup generated by `gens` (sorted), plus gens.
    pub(crate) fn closure_of(&self, gens: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut inside = vec![false; self.order()];
        inside[0] = true;
        let mut members = vec![0usize];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &g in &gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        (members, gens)
    }

    /// The subgroup generated by the given element indices.
    pub fn subgroup_generated(&self, gens: &[usize]) -> PermGroup {
        let (members, gens) = self.closure_of(gens);
        self.subgroup_from_indices(&members, &gens)
    }

    pub(crate) fn subgroup_from_indices(&self, members: &[usize], gens: &[usize]) -> PermGroup {
        let elements = members.iter().map(|&i| self.elements[i].clone()).collect();
        let generators = gens.iter().map(|&i| self.elements[i].clone()).collect();
        PermGroup::from_closed_elements(self.degree, generators, elements)
    }

    /// Whether every element of `sub` lies in `self`.
    pub fn contains_group(&self, sub: &PermGroup) -> bool {
        sub.degree == self.degree && sub.elements.iter().all(|e| self.contains(e))
    }

    pub fn is_normal(&self, sub: &PermGroup) -> bool {
        self.generators.iter().all(|g| {
            let gi = g.inverse();
            sub.generators
                .iter()
                .all(|h| sub.contains(&g.compose(h).compose(&gi)))
        })
    }

    pub fn center(&self) -> PermGroup {
        let members: Vec<usize> = (0..self.order())
            .filter(|&i| {
                let x = &self.elements[i];
                self.generators
                    .iter()
                    .all(|g| g.compose(x) == x.compose(g))
            })
            .collect();
        self.subgroup_from_indices(&members, &[])
    }

    /// Smallest normal subgroup containing the given elements.
    pub fn normal_closure(&self, seeds: &[Permutation]) -> PermGroup {
        let mut gens: Vec<usize> = seeds.iter().map(|s| self.index[s]).collect();
        loop {
            let (members, _) = self.closure_of(&gens);
            let inside: std::collections::HashSet<usize> = members.iter().copied().collect();
            let mut extra = Vec::new();
            for &m in &members {
                for g in &self.generators {
                    let c = g.compose(&self.elements[m]).compose(&g.inverse());
                    let ci = self.index[&c];
                    if !inside.contains(&ci) {
                        extra.push(ci);
                    }
                }
                if !extra.is_empty() {
                    break;
                }
            }
            if extra.is_empty() {
                return self.subgroup_from_indices(&members, &gens);
            }
            gens.extend(extra);
        }
    }

    pub fn derived_subgroup(&self) -> PermGroup {
        let mut comms = Vec::new();
        for a in &self.generators {
            for b in &self.generators {
                let c = a
                    .compose(b)
                    .compose(&a.inverse())
                    .compose(&b.inverse());
                if !c.is_identity() {
                    comms.push(c);
                }
            }
        }
        self.normal_closure(&comms)
    }

    /// Conjugacy classes as sorted element-index lists, ordered by first member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for start in 0..n {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut members = vec![start];
            class_of[start] = id;
            let mut k = 0;
            while k < members.len() {
                let x = &self.elements[members[k]];
                k += 1;
                for g in &self.generators {
                    let c = self.index[&g.compose(x).compose(&g.inverse())];
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
            }
            members.sort_unstable();
            classes.push(members);
        }
        classes
    }

    /// Orbits of the natural action on `0..degree`.
    pub fn point_orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for s in 0..self.degree {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut orbit = vec![s];
            let mut k = 0;
            while k < orbit.len() {
                let p = orbit[k];
                k += 1;
                for g in &self.generators {
                    let q = g.apply(p);
                    if !seen[q] {
                        seen[q] = true;
                        orbit.push(q);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    /// External direct product acting on the disjoint union of point sets.
    pub fn direct_product(a: &PermGroup, b: &PermGroup) -> PermGroup {
        let ida = Permutation::identity(a.degree);
        let idb = Permutation::identity(b.degree);
        let mut gens: Vec<Permutation> = a.generators.iter().map(|g| g.direct_sum(&idb)).collect();
        gens.extend(b.generators.iter().map(|g| ida.direct_sum(g)));
        let mut elements = Vec::with_capacity(a.order() * b.order());
        for x in &a.elements {
            for y in &b.elements {
                elements.push(x.direct_sum(y));
            }
        }
        PermGroup::from_closed_elements(a.degree + b.degree, gens, elements)
    }

    /// Regular representation relabeled onto element indices (left multiplication).
    pub fn regular_representation(&self) -> PermGroup {
        let gens: Vec<Permutation> = self
            .generators
            .iter()
            .map(|g| {
                let gi = self.index[g];
                Permutation::from_images((0..self.order()).map(|x| self.mul(gi, x)).collect())
                    .expect("left multiplication is a bijection")
            })
            .collect();
        PermGroup::close_generators_bounded(&gens, self.order(), usize::MAX)
            .expect("unbounded closure")
    }

    pub fn to_literal(&self) -> GroupLiteral {
        GroupLiteral {
            degree: self.degree,
            generators: self.generators.iter().map(|g| g.images()).collect(),
        }
    }
}

/// Serialized form of a permutation group: `{"degree": n, "generators": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupLiteral {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

impl GroupLiteral {
    pub fn to_group(&self) -> Result<PermGroup> {
        self.to_group_bounded(order_bound())
    }

    pub fn to_group_bounded(&self, bound: usize) -> Result<PermGroup> {
        let gens = self.permutations()?;
        PermGroup::close_generators_bounded(&gens, self.degree, bound)
    }

    pub fn permutations(&self) -> Result<Vec<Permutation>> {
        self.generators
            .iter()
            .map(|g| {
                if g.len() != self.degree {
                    return Err(Error::DegreeMismatch {
                        expected: self.degree,
                        found: g.len(),
                    });
                }
                Permutation::from_images(g.clone())
            })
            .collect()
    }
}
