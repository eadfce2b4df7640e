use serde::{Deserialize, Serialize};

use super::group::{GroupLiteral, PermGroup};
use super::hom::{quotient, Homomorphism};
use super::perm::Permutation;
use crate::error::{Error, Result};

/// A subgroup of `a1 × a2` presented as the fiber product `a1 ×_d a2`.
#[derive(Debug, Clone)]
pub struct GoursatData {
    pub a1: PermGroup,
    pub a2: PermGroup,
    pub d: PermGroup,
    pub phi: Homomorphism,
    pub psi: Homomorphism,
}

impl GoursatData {
    /// Checks both maps are epimorphisms onto `d`.
    pub fn new(
        a1: PermGroup,
        a2: PermGroup,
        d: PermGroup,
        phi: Homomorphism,
        psi: Homomorphism,
    ) -> Result<Self> {
        if !phi.is_surjective(&d) || !psi.is_surjective(&d) {
            return Err(Error::NotSurjective("phi and psi must map onto d".into()));
        }
        Ok(Self { a1, a2, d, phi, psi })
    }

    /// `A ×_A A` through identity maps: the diagonal.
    pub fn diagonal(a: &PermGroup) -> Self {
        Self {
            a1: a.clone(),
            a2: a.clone(),
            d: a.clone(),
            phi: Homomorphism::identity(a),
            psi: Homomorphism::identity(a),
        }
    }

    /// `A ×_{A/N} A` for a normal subgroup `n`.
    pub fn over_quotient(a: &PermGroup, n: &PermGroup) -> Result<Self> {
        let (d, pi) = quotient(a, n)?;
        Ok(Self {
            a1: a.clone(),
            a2: a.clone(),
            d,
            phi: pi.clone(),
            psi: pi,
        })
    }

    pub fn fiber_order(&self) -> usize {
        self.a1.order() * self.a2.order() / self.d.order()
    }

    pub fn to_literal(&self) -> GoursatLiteral {
        let images = |h: &Homomorphism, src: &PermGroup| {
            h.generator_images(src)
                .into_iter()
                .map(|i| self.d.element(i).images())
                .collect()
        };
        GoursatLiteral {
            a1: self.a1.to_literal(),
            a2: self.a2.to_literal(),
            d: self.d.to_literal(),
            phi: images(&self.phi, &self.a1),
            psi: images(&self.psi, &self.a2),
        }
    }
}

/// Serialized Goursat data: the three groups and generator images of both maps.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoursatLiteral {
    pub a1: GroupLiteral,
    pub a2: GroupLiteral,
    pub d: GroupLiteral,
    pub phi: Vec<Vec<usize>>,
    pub psi: Vec<Vec<usize>>,
}

impl GoursatLiteral {
    pub fn to_data(&self) -> Result<GoursatData> {
        let a1 = self.a1.to_group()?;
        let a2 = self.a2.to_group()?;
        let d = self.d.to_group()?;
        let map = |imgs: &[Vec<usize>], src: &PermGroup| -> Result<Homomorphism> {
            let perms: Vec<Permutation> = imgs
                .iter()
                .map(|v| Permutation::from_images(v.clone()))
                .collect::<Result<_>>()?;
            Homomorphism::from_generator_images(src, &d, &perms)
        };
        let phi = map(&self.phi, &a1)?;
        let psi = map(&self.psi, &a2)?;
        GoursatData::new(a1, a2, d, phi, psi)
    }
}

/// Recovers the Goursat data of `b` from its two projections onto `a1` and `a2`.
///
/// `d = a1 / N1` with `N1` the image of `ker proj2`; `psi(h) = phi(x)` for any
/// `(x, h)` in `b`.
pub fn goursat_decompose(
    b: &PermGroup,
    a1: &PermGroup,
    a2: &PermGroup,
    proj1: &Homomorphism,
    proj2: &Homomorphism,
) -> Result<GoursatData> {
    if !proj1.is_surjective(a1) {
        return Err(Error::NotSurjective("first projection".into()));
    }
    if !proj2.is_surjective(a2) {
        return Err(Error::NotSurjective("second projection".into()));
    }
    let mut n1: Vec<usize> = (0..b.order())
        .filter(|&x| proj2.apply(x) == PermGroup::IDENTITY)
        .map(|x| proj1.apply(x))
        .collect();
    n1.sort_unstable();
    n1.dedup();
    let n1 = a1.subgroup_from_indices(&n1, &[]);
    let (d, phi) = quotient(a1, &n1)?;

    let mut lift = vec![usize::MAX; a2.order()];
    for x in 0..b.order() {
        let h = proj2.apply(x);
        if lift[h] == usize::MAX {
            lift[h] = x;
        }
    }
    let gen_images: Vec<usize> = a2
        .generator_indices()
        .into_iter()
        .map(|h| phi.apply(proj1.apply(lift[h])))
        .collect();
    let psi = Homomorphism::from_generator_indices(a2, &d, &gen_images)?;
    let data = GoursatData::new(a1.clone(), a2.clone(), d, phi, psi)?;
    debug_assert_eq!(b.order() * data.d.order(), a1.order() * a2.order());
    Ok(data)
}

/// Projections of a subgroup of `a1 × a2` (acting on the disjoint union of the
/// two point sets) onto its factors.
pub fn product_projections(
    b: &PermGroup,
    a1: &PermGroup,
    a2: &PermGroup,
) -> Result<(Homomorphism, Homomorphism)> {
    let n1 = a1.degree();
    let p1 = Homomorphism::from_fn(b, a1, |p| {
        p.restrict_block(0, n1).unwrap_or_else(|_| Permutation::identity(n1))
    })?;
    let p2 = Homomorphism::from_fn(b, a2, |p| {
        p.restrict_block(n1, a2.degree())
            .unwrap_or_else(|_| Permutation::identity(a2.degree()))
    })?;
    Ok((p1, p2))
}

/// `{(g, h) ∈ a1 × a2 : phi(g) = psi(h)}` acting on the disjoint union of points.
pub fn fiber_product(data: &GoursatData) -> Result<PermGroup> {
    if !data.phi.is_surjective(&data.d) || !data.psi.is_surjective(&data.d) {
        return Err(Error::NotAHomomorphism(
            "fiber product needs epimorphisms onto d".into(),
        ));
    }
    let mut by_image: Vec<Vec<usize>> = vec![Vec::new(); data.d.order()];
    for h in 0..data.a2.order() {
        by_image[data.psi.apply(h)].push(h);
    }
    let mut elements = Vec::with_capacity(data.fiber_order());
    for g in 0..data.a1.order() {
        for &h in &by_image[data.phi.apply(g)] {
            elements.push(data.a1.element(g).direct_sum(data.a2.element(h)));
        }
    }
    Ok(PermGroup::from_closed_elements(
        data.a1.degree() + data.a2.degree(),
        Vec::new(),
        elements,
    ))
}
