use super::group::PermGroup;
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A homomorphism between two permutation groups, stored as an element-index map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Homomorphism {
    images: Vec<usize>,
}

impl Homomorphism {
    /// Extends generator images to the whole group, checking every Cayley-graph
    /// edge so that all relations of `source` are respected.
    pub fn from_generator_images(
        source: &PermGroup,
        target: &PermGroup,
        gen_images: &[Permutation],
    ) -> Result<Self> {
        let idx: Vec<usize> = gen_images
            .iter()
            .map(|p| {
                target.index_of(p).ok_or_else(|| {
                    Error::NotAHomomorphism(format!("image {p} is not in the target group"))
                })
            })
            .collect::<Result<_>>()?;
        Self::from_generator_indices(source, target, &idx)
    }

    pub fn from_generator_indices(
        source: &PermGroup,
        target: &PermGroup,
        gen_images: &[usize],
    ) -> Result<Self> {
        let gens = source.generator_indices();
        if gens.len() != gen_images.len() {
            return Err(Error::NotAHomomorphism(format!(
                "{} generator images for {} generators",
                gen_images.len(),
                gens.len()
            )));
        }
        if let Some(&bad) = gen_images.iter().find(|&&i| i >= target.order()) {
            return Err(Error::NotAHomomorphism(format!(
                "element index {bad} out of range for target of order {}",
                target.order()
            )));
        }
        let mut images = vec![usize::MAX; source.order()];
        images[0] = 0;
        let mut queue = vec![0usize];
        let mut k = 0;
        while k < queue.len() {
            let x = queue[k];
            k += 1;
            for (s, &img) in gens.iter().zip(gen_images) {
                let y = source.mul(x, *s);
                let fy = target.mul(images[x], img);
                if images[y] == usize::MAX {
                    images[y] = fy;
                    queue.push(y);
                } else if images[y] != fy {
                    return Err(Error::NotAHomomorphism(format!(
                        "relation violated at element {}",
                        source.element(y)
                    )));
                }
            }
        }
        Ok(Self { images })
    }

    /// Builds the map from an arbitrary function on elements, checking it on generators.
    pub fn from_fn(
        source: &PermGroup,
        target: &PermGroup,
        f: impl Fn(&Permutation) -> Permutation,
    ) -> Result<Self> {
        let gen_images: Vec<Permutation> = source.generators().iter().map(&f).collect();
        Self::from_generator_images(source, target, &gen_images)
    }

    pub fn identity(group: &PermGroup) -> Self {
        Self {
            images: (0..group.order()).collect(),
        }
    }

    #[inline]
    pub fn apply(&self, element: usize) -> usize {
        self.images[element]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// Images of the source generators, as target element indices.
    pub fn generator_images(&self, source: &PermGroup) -> Vec<usize> {
        source
            .generator_indices()
            .into_iter()
            .map(|g| self.images[g])
            .collect()
    }

    pub fn is_surjective(&self, target: &PermGroup) -> bool {
        let mut hit = vec![false; target.order()];
        for &i in &self.images {
            hit[i] = true;
        }
        hit.into_iter().all(|h| h)
    }

    pub fn kernel(&self, source: &PermGroup) -> PermGroup {
        let members: Vec<usize> = (0..source.order())
            .filter(|&i| self.images[i] == 0)
            .collect();
        source.subgroup_from_indices(&members, &[])
    }

    pub fn image(&self, target: &PermGroup) -> PermGroup {
        let mut members: Vec<usize> = self.images.clone();
        members.sort_unstable();
        members.dedup();
        target.subgroup_from_indices(&members, &[])
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &Homomorphism) -> Homomorphism {
        Homomorphism {
            images: self.images.iter().map(|&i| other.images[i]).collect(),
        }
    }
}

/// The quotient `g / n` realized by the action on left cosets, with the projection.
pub fn quotient(g: &PermGroup, n: &PermGroup) -> Result<(PermGroup, Homomorphism)> {
    if !g.contains_group(n) || !g.is_normal(n) {
        return Err(Error::NotAHomomorphism(
            "quotient by a subgroup that is not normal".into(),
        ));
    }
    let nidx: Vec<usize> = n.elements().iter().map(|e| g.index_of(e).unwrap()).collect();
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        reps.push(x);
        for &m in &nidx {
            coset_of[g.mul(x, m)] = id;
        }
    }
    let degree = reps.len();
    let act = |e: usize| -> Permutation {
        Permutation::from_images(reps.iter().map(|&r| coset_of[g.mul(e, r)]).collect())
            .expect("coset action is a bijection")
    };
    let gens: Vec<Permutation> = g.generator_indices().into_iter().map(act).collect();
    let q = PermGroup::close_generators_bounded(&gens, degree, usize::MAX)?;
    let hom = Homomorphism::from_generator_images(g, &q, &gens)?;
    Ok((q, hom))
}
