use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::group::PermGroup;
use super::hom::quotient;
use super::subgroups::subgroups;

/// Above this order, recognition skips the direct-factor search and class counts.
const DEEP_RECOGNITION_LIMIT: usize = 240;
const CLASS_COUNT_LIMIT: usize = 2_000;

/// Isomorphism type of a finite group, normalized so that each group has one tag.
///
/// Normalizations: `D1 = C2`, `D2 = C2 × C2`, `D3 = S3`, `D6 = S3 × C2`,
/// `Dic1 = C4`; abelian groups are nested direct products of cyclic groups
/// along their invariant factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", content = "args")]
pub enum IsoType {
    Cyclic(u64),
    Dihedral(u64),
    Alt(u8),
    Sym(u8),
    Dicyclic(u64),
    /// `C_p ⋊ C_{p-1}` with faithful action (the affine group of `F_p`).
    Frobenius(u64),
    DirectProduct(Box<IsoType>, Box<IsoType>),
    Other { order: u64, fingerprint: String },
}

impl IsoType {
    pub fn direct(a: IsoType, b: IsoType) -> Self {
        IsoType::DirectProduct(Box::new(a), Box::new(b))
    }

    pub fn order(&self) -> u64 {
        match self {
            IsoType::Cyclic(n) => *n,
            IsoType::Dihedral(n) => 2 * n,
            IsoType::Alt(n) => (1..=*n as u64).product::<u64>() / 2,
            IsoType::Sym(n) => (1..=*n as u64).product(),
            IsoType::Dicyclic(n) => 4 * n,
            IsoType::Frobenius(p) => p * (p - 1),
            IsoType::DirectProduct(a, b) => a.order() * b.order(),
            IsoType::Other { order, .. } => *order,
        }
    }

    /// Canonical tag of the dihedral group of order `2n`.
    pub fn dihedral(n: u64) -> Self {
        match n {
            1 => IsoType::Cyclic(2),
            2 => IsoType::direct(IsoType::Cyclic(2), IsoType::Cyclic(2)),
            3 => IsoType::Sym(3),
            6 => IsoType::direct(IsoType::Sym(3), IsoType::Cyclic(2)),
            _ => IsoType::Dihedral(n),
        }
    }

    /// Canonical tag of the dicyclic group of order `4n`.
    pub fn dicyclic(n: u64) -> Self {
        if n == 1 {
            IsoType::Cyclic(4)
        } else {
            IsoType::Dicyclic(n)
        }
    }

    /// `Some(n)` when the tag is the dihedral group of order `2n` for some `n ≥ 2`.
    pub fn dihedral_degree(&self) -> Option<u64> {
        match self {
            IsoType::Dihedral(n) => Some(*n),
            IsoType::Sym(3) => Some(3),
            t if *t == IsoType::dihedral(2) => Some(2),
            t if *t == IsoType::dihedral(6) => Some(6),
            _ => None,
        }
    }

    /// Parses the short names used on the command line and in reports
    /// (`C5`, `D4`, `Dic3`, `A5`, `S4`, `F20`).
    pub fn parse_short(s: &str) -> Option<Self> {
        let s = s.trim();
        let num = |p: &str| s.strip_prefix(p).and_then(|r| r.parse::<u64>().ok());
        if let Some(n) = num("Dic") {
            return Some(IsoType::dicyclic(n));
        }
        if let Some(n) = num("C") {
            return Some(IsoType::Cyclic(n));
        }
        if let Some(n) = num("D") {
            return Some(IsoType::dihedral(n));
        }
        if let Some(n) = num("A") {
            return matches!(n, 4 | 5).then_some(IsoType::Alt(n as u8));
        }
        if let Some(n) = num("S") {
            return matches!(n, 3..=5).then_some(IsoType::Sym(n as u8));
        }
        if let Some(n) = num("F") {
            let p = (2..=n).find(|p| p * (p - 1) == n)?;
            return Some(IsoType::Frobenius(p));
        }
        None
    }
}

impl fmt::Display for IsoType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IsoType::Cyclic(n) => write!(f, "C{n}"),
            IsoType::Dihedral(n) => write!(f, "D{n}"),
            IsoType::Alt(n) => write!(f, "A{n}"),
            IsoType::Sym(n) => write!(f, "S{n}"),
            IsoType::Dicyclic(n) => write!(f, "Dic{n}"),
            IsoType::Frobenius(p) => write!(f, "C{p}:C{}", p - 1),
            IsoType::DirectProduct(a, b) => {
                let wrap = |t: &IsoType| match t {
                    IsoType::DirectProduct(..) => format!("({t})"),
                    _ => t.to_string(),
                };
                write!(f, "{} x {}", wrap(a), wrap(b))
            }
            IsoType::Other { order, fingerprint } => write!(f, "Other[{order}; {fingerprint}]"),
        }
    }
}

/// Invariant factors `d1 | d2 | ...` of an abelian group from its element orders.
pub fn abelian_invariants(element_orders: &[u64]) -> Vec<u64> {
    let n = element_orders.len() as u64;
    let mut factors: Vec<u64> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    // per prime: exponents of the cyclic p-factors
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    while rest > 1 {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            let mut counts = Vec::new(); // log_p #{x : x^{p^k} = 1}
            let mut k = 0u32;
            loop {
                k += 1;
                let pk = p.pow(k);
                let c = element_orders.iter().filter(|&&o| pk % o == 0).count() as u64;
                let mut e = 0;
                let mut c2 = c;
                while c2 > 1 {
                    c2 /= p;
                    e += 1;
                }
                counts.push(e);
                if k > 1 && counts[k as usize - 1] == counts[k as usize - 2] {
                    break;
                }
            }
            // number of factors of order >= p^k is counts[k-1] - counts[k-2]
            let mut exps: Vec<u64> = Vec::new();
            let mut prev = 0;
            let ranks: Vec<u64> = counts
                .iter()
                .map(|&c| {
                    let r = c - prev;
                    prev = c;
                    r
                })
                .collect();
            for (k, w) in ranks.windows(2).enumerate() {
                for _ in 0..(w[0] - w[1]) {
                    exps.push(p.pow(k as u32 + 1));
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push(exps);
        }
        p += 1;
    }
    let len = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    for i in 0..len {
        factors.push(
            per_prime
                .iter()
                .map(|v| v.get(i).copied().unwrap_or(1))
                .product(),
        );
    }
    factors.reverse();
    factors
}

fn abelian_tag(invariants: &[u64]) -> IsoType {
    match invariants {
        [] => IsoType::Cyclic(1),
        [n] => IsoType::Cyclic(*n),
        [first, rest @ ..] => IsoType::direct(IsoType::Cyclic(*first), abelian_tag(rest)),
    }
}

struct Stats {
    orders: Vec<u64>,
    histogram: BTreeMap<u64, usize>,
}

impl Stats {
    fn new(g: &PermGroup) -> Self {
        let orders: Vec<u64> = (0..g.order()).map(|i| g.element_order(i)).collect();
        let mut histogram = BTreeMap::new();
        for &o in &orders {
            *histogram.entry(o).or_insert(0) += 1;
        }
        Self { orders, histogram }
    }

    fn count(&self, o: u64) -> usize {
        self.histogram.get(&o).copied().unwrap_or(0)
    }
}

/// Recognizes `g` against the catalog; unknown groups get an invariant fingerprint.
pub fn iso_type(g: &PermGroup) -> IsoType {
    let n = g.order() as u64;
    if n == 1 {
        return IsoType::Cyclic(1);
    }
    let stats = Stats::new(g);
    if g.is_abelian() {
        return abelian_tag(&abelian_invariants(&stats.orders));
    }
    if n == 6 {
        return IsoType::Sym(3);
    }
    if let Some(k) = dihedral_check(g, &stats) {
        return IsoType::dihedral(k);
    }
    if let Some(k) = dicyclic_check(g, &stats) {
        return IsoType::dicyclic(k);
    }
    match n {
        12 if stats.count(4) == 0 && stats.count(6) == 0 && von_dyck(g, &stats, 3) => {
            return IsoType::Alt(4)
        }
        24 if von_dyck(g, &stats, 4) => return IsoType::Sym(4),
        60 if von_dyck(g, &stats, 5) => return IsoType::Alt(5),
        120 if g.center().order() == 1 => {
            let d = g.derived_subgroup();
            if d.order() == 60 && iso_type(&d) == IsoType::Alt(5) {
                return IsoType::Sym(5);
            }
        }
        _ => {}
    }
    if let Some(p) = frobenius_check(g, &stats) {
        return IsoType::Frobenius(p);
    }
    if g.order() <= DEEP_RECOGNITION_LIMIT {
        if let Some((h, p)) = split_central_factor(g, &stats) {
            return IsoType::direct(iso_type(&h), IsoType::Cyclic(p));
        }
    }
    IsoType::Other {
        order: n,
        fingerprint: fingerprint(g, &stats),
    }
}

fn dihedral_check(g: &PermGroup, stats: &Stats) -> Option<u64> {
    let n = g.order() as u64;
    if !n.is_multiple_of(2) || n < 6 {
        return None;
    }
    let k = n / 2;
    for a in (0..g.order()).filter(|&i| stats.orders[i] == k) {
        let (members, _) = g.closure_of(&[a]);
        let mut inside = vec![false; g.order()];
        for m in members {
            inside[m] = true;
        }
        if (0..g.order()).all(|i| inside[i] || stats.orders[i] == 2) {
            return Some(k);
        }
    }
    None
}

fn dicyclic_check(g: &PermGroup, stats: &Stats) -> Option<u64> {
    let n = g.order() as u64;
    if !n.is_multiple_of(4) || n < 8 || stats.count(2) != 1 {
        return None;
    }
    let k = n / 4;
    for a in (0..g.order()).filter(|&i| stats.orders[i] == 2 * k) {
        let (members, _) = g.closure_of(&[a]);
        let mut inside = vec![false; g.order()];
        for m in members {
            inside[m] = true;
        }
        if (0..g.order()).all(|i| inside[i] || stats.orders[i] == 4) {
            return Some(k);
        }
    }
    None
}

/// Whether `g` is generated by `a`, `b` with `a² = b³ = (ab)^k = 1` and has the
/// order of that von Dyck group (12, 24, 60 for k = 3, 4, 5).
fn von_dyck(g: &PermGroup, stats: &Stats, k: u64) -> bool {
    let n = g.order();
    let expected = match k {
        3 => 12,
        4 => 24,
        5 => 60,
        _ => return false,
    };
    if n != expected {
        return false;
    }
    for a in (0..n).filter(|&i| stats.orders[i] == 2) {
        for b in (0..n).filter(|&i| stats.orders[i] == 3) {
            if stats.orders[g.mul(a, b)] == k && g.closure_of(&[a, b]).0.len() == n {
                return true;
            }
        }
    }
    false
}

fn frobenius_check(g: &PermGroup, stats: &Stats) -> Option<u64> {
    let n = g.order() as u64;
    let p = (5..=n).find(|p| p * (p - 1) == n)?;
    if !(2..p).all(|d| p % d != 0) {
        return None;
    }
    let unique_sylow = stats.count(p) as u64 == p - 1;
    if unique_sylow && stats.count(p - 1) > 0 && g.center().order() == 1 {
        Some(p)
    } else {
        None
    }
}

/// Finds `g ≅ h × C_p` with `p` the smallest prime admitting such a split.
///
/// A central `z` of order `p` splits off iff it survives in `g / (g' g^p)`;
/// `h` is then the preimage of a hyperplane avoiding the image of `z`.
fn split_central_factor(g: &PermGroup, stats: &Stats) -> Option<(PermGroup, u64)> {
    let center = g.center();
    let mut primes: Vec<u64> = center
        .elements()
        .iter()
        .map(|e| e.order())
        .filter(|&o| o > 1 && (2..o).all(|d| o % d != 0))
        .collect();
    primes.sort_unstable();
    primes.dedup();
    let derived = g.derived_subgroup();
    for p in primes {
        let mut seeds: Vec<_> = derived.generators().to_vec();
        seeds.extend(g.elements().iter().map(|e| e.pow(p)).filter(|e| !e.is_identity()));
        seeds.sort();
        seeds.dedup();
        let frattini_like = g.normal_closure(&seeds);
        let z = center
            .elements()
            .iter()
            .find(|e| e.order() == p && !frattini_like.contains(e));
        let Some(z) = z else { continue };
        let Ok((v, pi)) = quotient(g, &frattini_like) else { continue };
        let zbar = pi.apply(g.index_of(z).unwrap());
        let target = v.order() / p as usize;
        let hyper = subgroups(&v, Some(p as usize))
            .ok()?
            .into_iter()
            .find(|s| s.order() == target && !s.contains(v.element(zbar)))?;
        let members: Vec<usize> = (0..g.order())
            .filter(|&i| hyper.contains(v.element(pi.apply(i))))
            .collect();
        let h = g.subgroup_from_indices(&members, &[]);
        debug_assert_eq!(h.order() as u64 * p, g.order() as u64);
        let _ = stats;
        return Some((h, p));
    }
    None
}

fn fingerprint(g: &PermGroup, stats: &Stats) -> String {
    let hist: Vec<String> = stats
        .histogram
        .iter()
        .map(|(o, c)| format!("{o}:{c}"))
        .collect();
    let derived = g.derived_subgroup();
    let ab = if g.order() <= DEEP_RECOGNITION_LIMIT {
        match quotient(g, &derived) {
            Ok((q, _)) => {
                let orders: Vec<u64> = (0..q.order()).map(|i| q.element_order(i)).collect();
                format!("{:?}", abelian_invariants(&orders))
            }
            Err(_) => "?".into(),
        }
    } else {
        format!("[{}]", g.order() / derived.order())
    };
    let classes = if g.order() <= CLASS_COUNT_LIMIT {
        g.conjugacy_classes().len().to_string()
    } else {
        "?".into()
    };
    format!(
        "orders={{{}}} ab={} z={} cc={}",
        hist.join(","),
        ab,
        g.center().order(),
        classes
    )
}
