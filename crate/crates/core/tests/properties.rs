mod support;

use std::collections::BTreeSet;

use cremona_lab::classifier::{builtin, classify, ActionDescriptor, StableStatus, Verdict};
use cremona_lab::cohomology::{h1, h1_all_subgroups, h1_module, H1Check};
use cremona_lab::geometry::{sextic_compose, sextic_project, Cyclotomic, SexticAut, TorusPoint, WElement};
use cremona_lab::groups::{catalog, iso_type, GoursatData, IsoType, PermGroup, Permutation};
use cremona_lab::lattice::{invariant_rank, weyl_group, LatticeAction, PicardLattice, WeylGroup};
use cremona_lab::links::{reachable, rule_table, ModelNode, OrbitOracle};
use num_rational::Rational64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::OnceLock;

fn cyclotomic() -> impl Strategy<Value = Cyclotomic> {
    (prop::sample::select(vec![1u32, 3, 4, 5, 6, 12]), prop::collection::vec(-4i64..=4, 1..5)).prop_map(
        |(m, cs)| {
            cs.iter().enumerate().fold(Cyclotomic::integer(0), |acc, (k, &c)| {
                acc + Cyclotomic::integer(c) * Cyclotomic::zeta(m, k as i64).unwrap()
            })
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn cyclotomic_field_axioms(a in cyclotomic(), b in cyclotomic(), c in cyclotomic()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert!((&a - &a).is_zero());
        if !a.is_zero() {
            prop_assert_eq!(&a * &a.inv().unwrap(), Cyclotomic::one());
        }
    }

    #[test]
    fn reachability_is_monotone(
        extra in prop::collection::vec((0usize..4, 1u8..8), 0..6),
        start in prop::sample::select(vec!["quadric", "dp6", "dp5", "dp4", "cb3"]),
    ) {
        let nodes = [ModelNode::QuadricSurface, ModelNode::DelPezzo(6), ModelNode::DelPezzo(5), ModelNode::DelPezzo(4)];
        let base: Vec<(ModelNode, Vec<u8>)> = nodes.iter().map(|n| (*n, vec![])).collect();
        let mut grown = base.clone();
        for (i, d) in extra {
            if d < nodes[i].degree() {
                grown[i].1.push(d);
            }
        }
        let start: ModelNode = start.parse().unwrap();
        let small = reachable(start, &OrbitOracle::new(base).unwrap()).unwrap();
        let big = reachable(start, &OrbitOracle::new(grown).unwrap()).unwrap();
        prop_assert!(small.is_subset(&big));
        prop_assert!(big.contains(&start));
    }

    #[test]
    fn sextic_composition_is_associative_and_projects(
        ws in prop::collection::vec(0usize..12, 3),
        ts in prop::collection::vec((0i64..12, 0i64..12), 3),
    ) {
        let all = WElement::all();
        let g: Vec<SexticAut> = ws.iter().zip(&ts).map(|(&w, &(p, q))| {
            SexticAut::new(TorusPoint::new(Rational64::new(p, 12), Rational64::new(q, 12)), all[w])
        }).collect();
        let left = sextic_compose(&sextic_compose(&g[0], &g[1]), &g[2]);
        let right = sextic_compose(&g[0], &sextic_compose(&g[1], &g[2]));
        prop_assert_eq!(&left, &right);
        prop_assert_eq!(sextic_project(&sextic_compose(&g[0], &g[1])), sextic_project(&g[0]).mul(&sextic_project(&g[1])));
        prop_assert!(sextic_compose(&g[0], &g[0].inverse()).is_identity());
        let p = TorusPoint::new(Rational64::new(ts[0].1, 7), Rational64::new(ts[1].0, 5));
        prop_assert_eq!(sextic_compose(&g[0], &g[1]).apply(&p), g[0].apply(&g[1].apply(&p)));
    }

    #[test]
    fn cohomology_matches_oracle(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (sigma, m) = support::random_finite_order(&mut rng, 5);
        let got = h1_module(&support::cyclic_module(&sigma, m)).unwrap();
        prop_assert_eq!(got, support::h1_cyclic_oracle(&sigma, m));
    }
}

fn weyl(degree: i64) -> &'static WeylGroup {
    static W: OnceLock<Vec<(i64, WeylGroup)>> = OnceLock::new();
    let all = W.get_or_init(|| {
        [3, 4, 5]
            .into_iter()
            .map(|d| (d, weyl_group(&PicardLattice::del_pezzo(d).unwrap()).unwrap()))
            .collect()
    });
    &all.iter().find(|(d, _)| *d == degree).unwrap().1
}

fn weyl_action(degree: i64) -> &'static LatticeAction {
    static A: OnceLock<Vec<(i64, LatticeAction)>> = OnceLock::new();
    let all = A.get_or_init(|| [3, 4].into_iter().map(|d| (d, weyl(d).action().unwrap())).collect());
    &all.iter().find(|(d, _)| *d == degree).unwrap().1
}

fn lattice_example(name: &str) -> LatticeAction {
    match &builtin(name).unwrap().descriptor {
        ActionDescriptor::DelPezzoLattice { action, .. } => action.to_action().unwrap(),
        _ => unreachable!(),
    }
}

fn lattice_descriptor(a: &LatticeAction) -> ActionDescriptor {
    ActionDescriptor::DelPezzoLattice {
        action: a.to_literal(),
        model: None,
        orbit_lengths: None,
    }
}

fn kind(v: &Verdict) -> String {
    match v {
        Verdict::NonLinearizable { stable_status: StableStatus::NotStablyLinearizable { .. } } => "nsl".into(),
        other => other.label(),
    }
}

fn conjugated(g: &PermGroup, p: &Permutation) -> PermGroup {
    let gens: Vec<Permutation> = g
        .generators()
        .iter()
        .map(|x| p.compose(x).compose(&p.inverse()))
        .collect();
    PermGroup::close_generators(&gens, g.degree()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn lattice_verdict_is_conjugation_invariant(
        name in prop::sample::select(vec!["cubic-c3", "dp5-c5", "dp5-d5", "dp5-f20", "dp5-a5"]),
        pick in any::<prop::sample::Index>(),
    ) {
        let a = lattice_example(name);
        let w = weyl(a.lattice().degree());
        let i = pick.index(w.group.order());
        let c = w.aut(i);
        let c_inv = w.aut(w.group.inv(i));
        let b = a.conjugate(&c, &c_inv).unwrap();
        let (v1, _) = classify(&lattice_descriptor(&a)).unwrap();
        let (v2, _) = classify(&lattice_descriptor(&b)).unwrap();
        prop_assert_eq!(kind(&v1), kind(&v2));
    }

    #[test]
    fn sextic_verdict_is_translation_invariant(
        name in prop::sample::select(vec!["dp6-c6", "dp6-s3tw", "dp6-torus", "dp6-weyl"]),
        p in 0i64..12, q in 0i64..12,
    ) {
        let ActionDescriptor::Sextic { generators } = &builtin(name).unwrap().descriptor else { unreachable!() };
        let u = TorusPoint::new(Rational64::new(p, 12), Rational64::new(q, 12));
        let moved = ActionDescriptor::Sextic {
            generators: generators.iter().map(|g| (&g.to_aut().unwrap().conjugate_by(&u)).into()).collect(),
        };
        let (v1, _) = classify(&builtin(name).unwrap().descriptor).unwrap();
        let (v2, _) = classify(&moved).unwrap();
        prop_assert_eq!(kind(&v1), kind(&v2));
    }

    #[test]
    fn quadric_verdict_is_relabeling_invariant(
        which in 0usize..6,
        seed in any::<u64>(),
    ) {
        use rand::seq::SliceRandom;
        let groups = [catalog::cyclic(5), catalog::dihedral(4), catalog::dihedral(3), catalog::alternating(4), catalog::symmetric(4), catalog::alternating(5)];
        let g = &groups[which];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut images: Vec<usize> = (0..g.degree()).collect();
        images.shuffle(&mut rng);
        let h = conjugated(g, &Permutation::from_images(images).unwrap());
        let d = |x: &PermGroup| ActionDescriptor::P1p1 { goursat: GoursatData::diagonal(x).to_literal(), swap_present: true };
        let (v1, _) = classify(&d(g)).unwrap();
        let (v2, _) = classify(&d(&h)).unwrap();
        prop_assert_eq!(kind(&v1), kind(&v2));
    }

    /// Minimal quartic actions with vanishing H¹ everywhere are dicyclic of order 12.
    #[test]
    fn quartic_vanishing_h1_means_dicyclic(picks in prop::collection::vec(any::<prop::sample::Index>(), 1..3)) {
        let w = weyl(4);
        let full = weyl_action(4);
        let idx: Vec<usize> = picks.iter().map(|p| p.index(w.group.order())).collect();
        let sub = w.group.subgroup_generated(&idx);
        prop_assume!(sub.order() <= 48);
        let a = full.restrict(&sub);
        if invariant_rank(&a) == 1 {
            if let H1Check::Vanishes = h1_all_subgroups(&a).unwrap() {
                prop_assert_eq!(iso_type(a.group()), IsoType::Dicyclic(3));
            }
        }
    }
}

#[test]
fn shipped_quartic_is_the_vanishing_case() {
    let a = lattice_example("dp4-dicyclic");
    assert!(matches!(h1_all_subgroups(&a).unwrap(), H1Check::Vanishes));
    assert_eq!(iso_type(a.group()), IsoType::Dicyclic(3));
}

#[test]
fn stable_witnesses_recheck() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let w = weyl(3);
    let full = weyl_action(3);
    for _ in 0..40 {
        use rand::Rng;
        let i = rng.gen_range(0..w.group.order());
        let a = full.restrict(&w.group.subgroup_generated(&[i]));
        let (v, _) = classify(&lattice_descriptor(&a)).unwrap();
        if let Verdict::NonLinearizable { stable_status: StableStatus::NotStablyLinearizable { witness } } = v {
            let sub = witness.subgroup.to_group().unwrap();
            let again = h1(&a.restrict(&sub)).unwrap();
            assert_eq!(again, witness.h1);
            assert!(!again.is_trivial());
        }
    }
}

#[test]
fn linearizable_verdicts_never_contradict_reachability() {
    for ex in cremona_lab::classifier::builtin_examples() {
        let (v, cert) = classify(&ex.descriptor).unwrap();
        if v != Verdict::Linearizable {
            continue;
        }
        for r in cert.records.iter().filter(|r| r.check == "link_reachability") {
            assert!(r.ok && r.result.contains("p2"), "{}: {}", ex.name, r.result);
        }
    }
    let used: BTreeSet<ModelNode> = rule_table().iter().map(|r| r.source).collect();
    assert!(used.contains(&ModelNode::DelPezzo(4)));
}
