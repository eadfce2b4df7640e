use crate::cohomology::{h1, h1_all_subgroups, H1Check, H1Witness};
use crate::error::{Error, Result};
use crate::geometry::{
    is_torus_free, psi_lattice_action, sextic_closure, sextic_fixed_point, small_orbits_dp4,
    PsiImage, QuarticModel, SexticAut, SexticGeneratorLiteral,
};
use crate::groups::{iso_type, subgroups, IsoType, PermGroup};
use crate::lattice::{invariant_rank, LatticeAction, PicardLattice};
use crate::links::{reachable, ModelNode, OrbitOracle};
use crate::obstruction::{amitsur_diag_p1p1, has_linear_lift};

use super::certificate::{Certificate, StableStatus, Verdict, WitnessRecord};
use super::descriptor::{ActionDescriptor, Resolved};

/// One branch of the decision procedure.
pub trait Strategy: Send + Sync {
    fn name(&self) -> &'static str;

    fn handles(&self, input: &Resolved) -> bool;

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict>;
}

pub struct Registry {
    strategies: Vec<Box<dyn Strategy>>,
}

impl Default for Registry {
    fn default() -> Self {
        Self::standard()
    }
}

impl Registry {
    pub fn empty() -> Self {
        Self {
            strategies: Vec::new(),
        }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(LowDegree);
        r.register(Quartic);
        r.register(Quintic);
        r.register(Sextic);
        r.register(Quadric);
        r.register(Plane);
        r.register(DegreeSeven);
        r
    }

    pub fn register<S: Strategy + 'static>(&mut self, s: S) {
        self.strategies.push(Box::new(s));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    pub fn get(&self, name: &str) -> Option<&dyn Strategy> {
        self.strategies
            .iter()
            .find(|s| s.name() == name)
            .map(|s| s.as_ref())
    }

    /// Classifies a descriptor. Malformed input is an error; failures inside a
    /// strategy become an `OutOfScope` verdict with an inconclusive record.
    pub fn classify(
        &self,
        descriptor: &ActionDescriptor,
        strategy: Option<&str>,
    ) -> Result<(Verdict, Certificate)> {
        let descriptor = match descriptor {
            ActionDescriptor::Builtin { name } => super::examples::builtin(name)
                .map(|d| &d.descriptor)
                .ok_or_else(|| Error::malformed("name", format!("no built-in example `{name}`")))?,
            d => d,
        };
        let digest = super::certificate::digest(&descriptor.canonical_json());
        let resolved = match descriptor.resolve() {
            Ok(r) => r,
            Err(e @ Error::MalformedDescriptor { .. }) => return Err(e),
            Err(e) => {
                let mut cert = Certificate::new("none", digest);
                cert.record("inconclusive", &(), e.to_string(), false, "the input could not be built");
                return Ok((out_of_scope(e.to_string()), cert));
            }
        };
        let chosen = match strategy {
            Some(name) => {
                let s = self
                    .get(name)
                    .ok_or_else(|| Error::malformed("strategy", format!("unknown strategy `{name}`")))?;
                Some(s).filter(|s| s.handles(&resolved))
            }
            None => self
                .strategies
                .iter()
                .map(|s| s.as_ref())
                .find(|s| s.handles(&resolved)),
        };
        let Some(s) = chosen else {
            let cert = Certificate::new(strategy.unwrap_or("none"), digest);
            return Ok((out_of_scope("no strategy handles this input".into()), cert));
        };
        let mut cert = Certificate::new(s.name(), digest);
        match s.decide(&resolved, &mut cert) {
            Ok(v) => Ok((v, cert)),
            Err(e) => {
                cert.record("inconclusive", &(), e.to_string(), false, "a computation failed");
                Ok((out_of_scope(e.to_string()), cert))
            }
        }
    }
}

fn out_of_scope(reason: String) -> Verdict {
    Verdict::OutOfScope { reason }
}

fn lattice_degree(input: &Resolved) -> Option<i64> {
    match input {
        Resolved::Lattice { action, .. } => Some(action.lattice().degree()),
        _ => None,
    }
}

fn check_minimal(action: &LatticeAction, cert: &mut Certificate) -> Option<Verdict> {
    let r = invariant_rank(action);
    cert.record(
        "invariant_rank",
        &action.to_literal(),
        r.to_string(),
        true,
        "rank of the Picard sublattice fixed by the group; minimality needs rank one",
    );
    (r != 1).then_some(Verdict::NotMinimal { invariant_rank: r })
}

fn record_iso(cert: &mut Certificate, g: &PermGroup, expected: Option<&IsoType>) -> IsoType {
    let iso = iso_type(g);
    let ok = expected.is_none_or(|e| *e == iso);
    let result = match expected {
        Some(e) if !ok => format!("{iso} (expected {e})"),
        _ => iso.to_string(),
    };
    cert.record(
        "iso_type",
        &g.to_literal(),
        result,
        ok,
        "isomorphism type of the acting group",
    );
    iso
}

/// Re-checks a witness by recomputing `H¹` of the restriction.
fn verified_witness(action: &LatticeAction, w: &H1Witness) -> Result<WitnessRecord> {
    let again = h1(&action.restrict(&w.subgroup))?;
    if again != w.h1 || again.is_trivial() {
        return Err(Error::Unsupported("witness did not re-verify".into()));
    }
    Ok(WitnessRecord {
        subgroup: w.subgroup.to_literal(),
        order: w.subgroup.order(),
        h1: w.h1.clone(),
    })
}

fn record_reachability(
    cert: &mut Certificate,
    start: ModelNode,
    oracle: &OrbitOracle,
    expect_plane: bool,
    rationale: &str,
) -> Result<bool> {
    let set = reachable(start, oracle)?;
    let plane = set.contains(&ModelNode::ProjectivePlane);
    let names: Vec<String> = set.iter().map(ToString::to_string).collect();
    cert.record(
        "link_reachability",
        &(start, oracle),
        format!("from {start}: {{{}}}", names.join(", ")),
        plane == expect_plane,
        rationale,
    );
    Ok(plane)
}

/// Minimal del Pezzo surfaces of degree at most 3.
pub struct LowDegree;

impl Strategy for LowDegree {
    fn name(&self) -> &'static str {
        "low-degree"
    }

    fn handles(&self, input: &Resolved) -> bool {
        lattice_degree(input).is_some_and(|d| d <= 3)
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        let Resolved::Lattice { action, .. } = input else {
            unreachable!("handles checked")
        };
        if let Some(v) = check_minimal(action, cert) {
            return Ok(v);
        }
        let degree = action.lattice().degree();
        let rationale = if degree == 3 {
            "minimal cubic surfaces are never linearizable; a subgroup with nonzero H1 rules out stable linearizability"
        } else {
            "minimal surfaces of degree one or two are never linearizable; stable status inferred from a nonzero H1 on a subgroup"
        };
        match h1_all_subgroups(action)? {
            H1Check::Witness(w) => {
                let witness = verified_witness(action, &w)?;
                cert.record(
                    "h1_witness",
                    &action.to_literal(),
                    format!("H1 = {} on a subgroup of order {}", witness.h1, witness.order),
                    true,
                    rationale,
                );
                Ok(Verdict::NonLinearizable {
                    stable_status: StableStatus::NotStablyLinearizable { witness },
                })
            }
            H1Check::Vanishes => {
                cert.record(
                    "h1_witness",
                    &action.to_literal(),
                    "H1 vanishes on every subgroup",
                    true,
                    rationale,
                );
                Ok(Verdict::open())
            }
        }
    }
}

/// Minimal quartic del Pezzo surfaces.
pub struct Quartic;

impl Quartic {
    fn oracle(model: Option<&str>, given: Option<&OrbitOracle>) -> Result<Option<OrbitOracle>> {
        if let Some(o) = given {
            return Ok(Some(o.clone()));
        }
        match model {
            Some("quartic") => {
                let orbits = small_orbits_dp4(&QuarticModel::standard(), 3)?;
                let lengths: Vec<u8> = orbits.iter().map(|o| o.len() as u8).collect();
                Ok(Some(OrbitOracle::new([(ModelNode::DelPezzo(4), lengths)])?))
            }
            Some(other) => Err(Error::malformed("model", format!("unknown model `{other}`"))),
            None => Ok(None),
        }
    }
}

impl Strategy for Quartic {
    fn name(&self) -> &'static str {
        "quartic"
    }

    fn handles(&self, input: &Resolved) -> bool {
        lattice_degree(input) == Some(4)
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        let Resolved::Lattice {
            action,
            model,
            oracle,
        } = input
        else {
            unreachable!("handles checked")
        };
        if let Some(v) = check_minimal(action, cert) {
            return Ok(v);
        }
        match h1_all_subgroups(action)? {
            H1Check::Witness(w) => {
                let witness = verified_witness(action, &w)?;
                cert.record(
                    "h1_all_subgroups",
                    &action.to_literal(),
                    format!("H1 = {} on a subgroup of order {}", witness.h1, witness.order),
                    true,
                    "a subgroup with nonzero H1 rules out stable linearizability",
                );
                Ok(Verdict::NonLinearizable {
                    stable_status: StableStatus::NotStablyLinearizable { witness },
                })
            }
            H1Check::Vanishes => {
                cert.record(
                    "h1_all_subgroups",
                    &action.to_literal(),
                    "H1 vanishes on every subgroup",
                    true,
                    "for degree four this singles out the dicyclic group of order 12",
                );
                record_iso(cert, action.group(), Some(&IsoType::Dicyclic(3)));
                if let Some(o) = Self::oracle(model.as_deref(), oracle.as_ref())? {
                    record_reachability(
                        cert,
                        ModelNode::DelPezzo(4),
                        &o,
                        false,
                        "the small orbits only lead to conic bundles and selfmaps, never to the plane",
                    )?;
                }
                Ok(Verdict::open())
            }
        }
    }
}

/// Minimal quintic del Pezzo surfaces.
pub struct Quintic;

impl Strategy for Quintic {
    fn name(&self) -> &'static str {
        "quintic"
    }

    fn handles(&self, input: &Resolved) -> bool {
        lattice_degree(input) == Some(5)
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        let Resolved::Lattice { action, .. } = input else {
            unreachable!("handles checked")
        };
        if let Some(v) = check_minimal(action, cert) {
            return Ok(v);
        }
        let g = action.group();
        match record_iso(cert, g, None) {
            IsoType::Cyclic(5) => {
                let oracle = OrbitOracle::new([(ModelNode::DelPezzo(5), vec![1])])?;
                record_reachability(
                    cert,
                    ModelNode::DelPezzo(5),
                    &oracle,
                    true,
                    "a cyclic group of order five fixes a point, and the link centered there ends on the plane",
                )?;
                Ok(Verdict::Linearizable)
            }
            IsoType::Dihedral(5) => {
                cert.record(
                    "construction",
                    &g.to_literal(),
                    "D5 preserves five points in general position in the plane",
                    true,
                    "blowing up five such points and contracting the conic through them is equivariant",
                );
                Ok(Verdict::Linearizable)
            }
            IsoType::Frobenius(5) | IsoType::Sym(5) => Ok(Verdict::open()),
            IsoType::Alt(5) => {
                let small: Vec<usize> = subgroups(g, Some(4))?.iter().map(PermGroup::order).collect();
                cert.record(
                    "subgroups_index_le_4",
                    &g.to_literal(),
                    format!("orders {small:?}"),
                    small == [g.order()],
                    "no proper subgroup of index at most four means no orbit short enough to start a link",
                );
                Ok(Verdict::open())
            }
            other => Ok(out_of_scope(format!("{other} is not a minimal group on the quintic"))),
        }
    }
}

/// The sextic del Pezzo surface, given either as `T ⋊ W` data or as a lattice action.
pub struct Sextic;

impl Sextic {
    fn psi_rank(gens: &[SexticAut], cert: &mut Certificate) -> Result<Option<Verdict>> {
        let action = psi_lattice_action(gens)?;
        Ok(check_minimal(&action, cert))
    }

    fn decide_torus(gens: &[SexticAut], cert: &mut Certificate) -> Result<Verdict> {
        let literal: Vec<SexticGeneratorLiteral> = gens.iter().map(Into::into).collect();
        let free = is_torus_free(gens)?;
        let order = sextic_closure(gens)?.len();
        cert.record(
            "torus_intersection",
            &literal,
            if free { "trivial".to_string() } else { format!("nontrivial (|G| = {order})") },
            true,
            "a nontrivial subgroup of the torus obstructs linearizability",
        );
        if let Some(v) = Self::psi_rank(gens, cert)? {
            return Ok(v);
        }
        if !free {
            return Ok(Verdict::open());
        }
        let ws: Vec<_> = gens.iter().map(|g| g.w).collect();
        let psi = PsiImage::of(&ws);
        cert.record(
            "psi_image",
            &literal,
            format!("{psi:?}"),
            psi != PsiImage::Other,
            "image of the group in the Weyl group of the hexagon",
        );
        match psi {
            PsiImage::W => Ok(Verdict::open()),
            PsiImage::C6 | PsiImage::S3Twisted => {
                let Some(p) = sextic_fixed_point(gens)? else {
                    cert.record("fixed_point", &literal, "none", false, "expected a fixed point on the torus");
                    return Ok(out_of_scope("no fixed point found".into()));
                };
                cert.record(
                    "fixed_point",
                    &literal,
                    format!("{p} on the open torus"),
                    true,
                    "a fixed point off the hexagon is the center of a link to the quadric",
                );
                let oracle = OrbitOracle::new([
                    (ModelNode::DelPezzo(6), vec![1]),
                    (ModelNode::QuadricSurface, vec![1]),
                ])?;
                record_reachability(
                    cert,
                    ModelNode::DelPezzo(6),
                    &oracle,
                    true,
                    "two links through fixed points reach the plane",
                )?;
                Ok(Verdict::Linearizable)
            }
            PsiImage::S3 | PsiImage::Other => Ok(out_of_scope(format!("unexpected image {psi:?}"))),
        }
    }

    fn decide_lattice(action: &LatticeAction, cert: &mut Certificate) -> Result<Verdict> {
        if let Some(v) = check_minimal(action, cert) {
            return Ok(v);
        }
        let iso = record_iso(cert, action.group(), None);
        cert.record(
            "torus_intersection",
            &action.to_literal(),
            "trivial",
            true,
            "the torus acts trivially on the Picard lattice, so a faithful lattice action meets it trivially",
        );
        match iso {
            IsoType::Cyclic(6) | IsoType::Sym(3) => Ok(Verdict::Linearizable),
            t if t == IsoType::dihedral(6) => Ok(Verdict::open()),
            other => Ok(out_of_scope(format!("{other} is not a minimal image in W"))),
        }
    }
}

impl Strategy for Sextic {
    fn name(&self) -> &'static str {
        "sextic"
    }

    fn handles(&self, input: &Resolved) -> bool {
        matches!(input, Resolved::Sextic { .. }) || lattice_degree(input) == Some(6)
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        match input {
            Resolved::Sextic { generators } => Self::decide_torus(generators, cert),
            Resolved::Lattice { action, .. } => Self::decide_lattice(action, cert),
            _ => unreachable!("handles checked"),
        }
    }
}

/// `P¹ × P¹` with the Goursat structure of the ruling-preserving part.
pub struct Quadric;

impl Strategy for Quadric {
    fn name(&self) -> &'static str {
        "quadric"
    }

    fn handles(&self, input: &Resolved) -> bool {
        matches!(input, Resolved::P1p1 { .. })
            || matches!(input, Resolved::Lattice { action, .. } if *action.lattice() == PicardLattice::Quadric)
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        let (goursat, swap) = match input {
            Resolved::P1p1 {
                goursat,
                swap_present,
            } => (goursat, *swap_present),
            _ => return Ok(out_of_scope("the quadric needs Goursat data".into())),
        };
        let literal = goursat.to_literal();
        cert.record(
            "swap_present",
            &literal,
            swap.to_string(),
            true,
            "without an element exchanging the rulings both ruling classes are invariant",
        );
        if !swap {
            return Ok(Verdict::NotMinimal { invariant_rank: 2 });
        }
        let (a1, a2) = (iso_type(&goursat.a1), iso_type(&goursat.a2));
        cert.record(
            "goursat_factor",
            &literal,
            format!("A = {a1}, D of order {}", goursat.d.order()),
            a1 == a2,
            "the swap conjugates the two factors, so they are isomorphic",
        );
        if a1 != a2 {
            return Ok(out_of_scope(format!("factors {a1} and {a2} differ")));
        }
        if let IsoType::Cyclic(_) = a1 {
            let oracle = OrbitOracle::new([(ModelNode::QuadricSurface, vec![1])])?;
            record_reachability(
                cert,
                ModelNode::QuadricSurface,
                &oracle,
                true,
                "a fixed point on the diagonal is the center of a link to the plane",
            )?;
            return Ok(Verdict::Linearizable);
        }
        let polyhedral = a1.dihedral_degree().is_some()
            || matches!(a1, IsoType::Alt(4) | IsoType::Sym(4) | IsoType::Alt(5));
        if !polyhedral {
            return Ok(out_of_scope(format!("{a1} is not a finite subgroup of PGL(2)")));
        }
        if let Some(n) = a1.dihedral_degree() {
            cert.record(
                "tag_normalization",
                &a1,
                format!("{a1} read as the dihedral group of degree {n}"),
                true,
                "small dihedral groups carry their abstract name",
            );
        }
        if !has_linear_lift(&a1)? {
            let am = amitsur_diag_p1p1(&a1)?;
            cert.record(
                "amitsur",
                &a1,
                format!("Am = {am}"),
                !am.is_trivial(),
                "the embedding in PGL(2) does not lift to GL(2), giving a nonzero Amitsur class",
            );
        }
        Ok(Verdict::open())
    }
}

/// Linear actions on the plane.
pub struct Plane;

impl Strategy for Plane {
    fn name(&self) -> &'static str {
        "plane"
    }

    fn handles(&self, input: &Resolved) -> bool {
        matches!(input, Resolved::Plane { .. })
            || matches!(input, Resolved::Lattice { action, .. } if *action.lattice() == PicardLattice::Blowup { k: 0 })
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        let g = match input {
            Resolved::Plane { group } => group,
            Resolved::Lattice { action, .. } => action.group(),
            _ => unreachable!("handles checked"),
        };
        cert.record(
            "linear",
            &g.to_literal(),
            format!("group of order {}", g.order()),
            true,
            "the action is already linear on the plane",
        );
        Ok(Verdict::Linearizable)
    }
}

/// Degrees 7 and 8 obtained by blowing up one or two points.
pub struct DegreeSeven;

impl Strategy for DegreeSeven {
    fn name(&self) -> &'static str {
        "degree-7"
    }

    fn handles(&self, input: &Resolved) -> bool {
        matches!(input, Resolved::Lattice { action, .. }
            if matches!(action.lattice(), PicardLattice::Blowup { k: 1 | 2 }))
    }

    fn decide(&self, input: &Resolved, cert: &mut Certificate) -> Result<Verdict> {
        let Resolved::Lattice { action, .. } = input else {
            unreachable!("handles checked")
        };
        cert.record(
            "degree",
            &action.to_literal(),
            action.lattice().degree().to_string(),
            true,
            "these surfaces always have an invariant exceptional curve, so they are never minimal",
        );
        Ok(out_of_scope("blowups of one or two points are never minimal".into()))
    }
}
