//! Regenerates the JSON assets bundled with the library.
//!
//! Run with `cargo run -p cremona-lab --example gen_assets` from the workspace root.

use std::fs;
use std::path::Path;

use cremona_lab::classifier::{ActionDescriptor, NamedDescriptor};
use cremona_lab::cohomology::{h1_all_subgroups, H1Check};
use cremona_lab::geometry::{dp4_line_action, weyl_normal_form, QuarticModel, SexticAut, TorusPoint, WElement};
use cremona_lab::groups::{catalog, iso_type, subgroups, GoursatData, IsoType, PermGroup};
use cremona_lab::lattice::{invariant_rank, weyl_group, LatticeAction, PicardLattice};
use num_rational::Rational64;

type Res<T> = Result<T, Box<dyn std::error::Error>>;

fn lattice(action: &LatticeAction, model: Option<&str>) -> ActionDescriptor {
    ActionDescriptor::DelPezzoLattice {
        action: action.to_literal(),
        model: model.map(String::from),
        orbit_lengths: None,
    }
}

fn sextic(gens: &[SexticAut]) -> ActionDescriptor {
    ActionDescriptor::Sextic {
        generators: gens.iter().map(Into::into).collect(),
    }
}

fn quadric(g: &PermGroup) -> ActionDescriptor {
    ActionDescriptor::P1p1 {
        goursat: GoursatData::diagonal(g).to_literal(),
        swap_present: true,
    }
}

/// Cyclic subgroup of order three in `W(E6)` whose lattice has nonzero `H¹`.
fn cubic_c3() -> Res<LatticeAction> {
    let w = weyl_group(&PicardLattice::del_pezzo(3)?)?;
    let full = w.action()?;
    for i in 0..w.group.order() {
        if w.group.element_order(i) != 3 {
            continue;
        }
        let sub = w.group.subgroup_generated(&[i]);
        let a = full.restrict(&sub);
        if invariant_rank(&a) == 1 && matches!(h1_all_subgroups(&a)?, H1Check::Witness(_)) {
            return Ok(a);
        }
    }
    Err("no order-three witness in W(E6)".into())
}

fn quintic_subgroups() -> Res<Vec<(&'static str, LatticeAction)>> {
    let w = weyl_group(&PicardLattice::del_pezzo(5)?)?;
    let full = w.action()?;
    let subs = subgroups(&w.group, None)?;
    let mut out = Vec::new();
    for (name, want) in [
        ("dp5-c5", IsoType::Cyclic(5)),
        ("dp5-d5", IsoType::dihedral(5)),
        ("dp5-f20", IsoType::Frobenius(5)),
        ("dp5-a5", IsoType::Alt(5)),
        ("dp5-s5", IsoType::Sym(5)),
    ] {
        let g = subs
            .iter()
            .find(|s| iso_type(s) == want)
            .ok_or_else(|| format!("no {want} in W(A4)"))?;
        out.push((name, full.restrict(g)));
    }
    Ok(out)
}

fn descriptors() -> Res<Vec<NamedDescriptor>> {
    let named = |name: &str, summary: &str, d: ActionDescriptor| NamedDescriptor {
        name: name.into(),
        summary: summary.into(),
        descriptor: d,
    };
    let mut out = vec![named(
        "cubic-c3",
        "order-three element of W(E6) on a cubic surface with nonzero H1",
        lattice(&cubic_c3()?, None),
    )];
    let quartic = dp4_line_action(&QuarticModel::standard())?;
    out.push(named(
        "dp4-dicyclic",
        "dicyclic group of order 12 on the diagonal quartic del Pezzo surface",
        lattice(&quartic, Some("quartic")),
    ));
    for (name, a) in quintic_subgroups()? {
        let summary = format!("{} acting on the quintic del Pezzo surface", iso_type(a.group()));
        out.push(named(name, &summary, lattice(&a, None)));
    }
    let tc3 = SexticAut::pure(WElement::TAU.mul(&WElement::C3));
    let half = Rational64::new(1, 2);
    let third = Rational64::new(1, 3);
    out.push(named("dp6-c6", "C6 inside the Weyl group of the hexagon", sextic(&[tc3])));
    out.push(named(
        "dp6-s3tw",
        "S3 acting with invariant rank one on the sextic",
        sextic(&[SexticAut::pure(WElement::C3), SexticAut::pure(WElement::C2)]),
    ));
    out.push(named(
        "dp6-torus",
        "C6 extended by a torus translation of order two",
        sextic(&[tc3, SexticAut::translation(TorusPoint::new(half, 0.into()))]),
    ));
    out.push(named(
        "dp6-weyl",
        "torus-free lift of the full Weyl group with nontrivial twist",
        sextic(&weyl_normal_form(third, third)),
    ));
    for (name, g) in [
        ("p1p1-c4", catalog::cyclic(4)),
        ("p1p1-d4", catalog::dihedral(4)),
        ("p1p1-d5", catalog::dihedral(5)),
        ("p1p1-a4", catalog::alternating(4)),
        ("p1p1-s4", catalog::symmetric(4)),
        ("p1p1-a5", catalog::alternating(5)),
    ] {
        let summary = format!("diagonal {} with the factor swap", iso_type(&g));
        out.push(named(name, &summary, quadric(&g)));
    }
    out.push(named(
        "plane-s3",
        "S3 permuting the coordinates of the plane",
        ActionDescriptor::PlaneLinear {
            group: catalog::symmetric(3).to_literal(),
        },
    ));
    Ok(out)
}

fn main() -> Res<()> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("assets");
    let binary = cremona_lab::obstruction::build_binary_asset();
    fs::write(
        dir.join("binary_groups.json"),
        serde_json::to_string_pretty(&binary)? + "\n",
    )?;
    println!("wrote {} binary group entries", binary.len());
    let examples = dir.join("examples");
    fs::create_dir_all(&examples)?;
    for d in descriptors()? {
        fs::write(
            examples.join(format!("{}.json", d.name)),
            serde_json::to_string_pretty(&d)? + "\n",
        )?;
        println!("wrote example {}", d.name);
    }
    Ok(())
}
