//! Automorphisms of the degree 6 del Pezzo surface as `T ⋊ W`, with `T` the
//! open 2-torus in additive `(Q/Z)²` coordinates and `W = S3 × C2` acting by
//! integer matrices.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groups::{close_generators, order_bound, Permutation};
use crate::lattice::{exceptional_classes, LatticeAction, PicardLattice};
use crate::linalg::SmithForm;

type Mat2 = [[i64; 2]; 2];

fn frac(x: Rational64) -> Rational64 {
    x - x.floor()
}

/// A torsion point of the torus, coordinates in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[[i64; 2]; 2]", into = "[[i64; 2]; 2]")]
pub struct TorusPoint([Rational64; 2]);

impl TorusPoint {
    pub fn new(a: Rational64, b: Rational64) -> Self {
        Self([frac(a), frac(b)])
    }

    pub fn from_fractions(p: i64, q: i64, r: i64, s: i64) -> Result<Self> {
        if q == 0 || s == 0 {
            return Err(Error::malformed("torus", "zero denominator"));
        }
        Ok(Self::new(Rational64::new(p, q), Rational64::new(r, s)))
    }

    pub fn zero() -> Self {
        Self([Rational64::zero(); 2])
    }

    pub fn coords(&self) -> [Rational64; 2] {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Least common denominator: the point lies in `μ_N²`.
    pub fn denominator(&self) -> i64 {
        self.0[0].denom().lcm(self.0[1].denom())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(self.0[0] + other.0[0], self.0[1] + other.0[1])
    }

    pub fn neg(&self) -> Self {
        Self::new(-self.0[0], -self.0[1])
    }

    pub fn transform(&self, m: &Mat2) -> Self {
        let [a, b] = self.0;
        Self::new(
            a * m[0][0] + b * m[0][1],
            a * m[1][0] + b * m[1][1],
        )
    }
}

impl TryFrom<[[i64; 2]; 2]> for TorusPoint {
    type Error = Error;

    fn try_from(v: [[i64; 2]; 2]) -> Result<Self> {
        Self::from_fractions(v[0][0], v[0][1], v[1][0], v[1][1])
    }
}

impl From<TorusPoint> for [[i64; 2]; 2] {
    fn from(p: TorusPoint) -> Self {
        let [a, b] = p.0;
        [[*a.numer(), *a.denom()], [*b.numer(), *b.denom()]]
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0[0], self.0[1])
    }
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An element of `W`, stored as its matrix on the cocharacter lattice.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct WElement(Mat2);

impl WElement {
    pub const ID: Self = Self([[1, 0], [0, 1]]);
    /// `(x; y) ↦ (y; x)`.
    pub const C2: Self = Self([[0, 1], [1, 0]]);
    /// `(x; y) ↦ (y; 1/xy)`.
    pub const C3: Self = Self([[0, 1], [-1, -1]]);
    /// `(x; y) ↦ (1/x; 1/y)`.
    pub const TAU: Self = Self([[-1, 0], [0, -1]]);

    pub fn matrix(&self) -> &Mat2 {
        &self.0
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = (&self.0, &other.0);
        let mut out = [[0; 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
            }
        }
        Self(out)
    }

    pub fn inverse(&self) -> Self {
        let mut acc = *self;
        while acc.mul(self) != Self::ID {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn order(&self) -> usize {
        let mut acc = *self;
        let mut k = 1;
        while acc != Self::ID {
            acc = acc.mul(self);
            k += 1;
        }
        k
    }

    pub fn letter(name: &str) -> Option<Self> {
        match name {
            "c2" => Some(Self::C2),
            "c3" => Some(Self::C3),
            "tau" => Some(Self::TAU),
            "id" | "1" => Some(Self::ID),
            _ => None,
        }
    }

    /// Product of letters `c2`, `c3`, `tau` separated by spaces, `*` or `.`.
    pub fn from_word(word: &str) -> Result<Self> {
        word.split(|c: char| c.is_whitespace() || c == '*' || c == '.')
            .filter(|s| !s.is_empty())
            .try_fold(Self::ID, |acc, s| {
                Self::letter(s)
                    .map(|l| acc.mul(&l))
                    .ok_or_else(|| Error::malformed("w", format!("unknown letter `{s}`")))
            })
    }

    /// A shortest word for this element.
    pub fn word(&self) -> String {
        let letters = [("c2", Self::C2), ("c3", Self::C3), ("tau", Self::TAU)];
        let mut seen = HashSet::from([Self::ID]);
        let mut queue = VecDeque::from([(Self::ID, Vec::<&str>::new())]);
        while let Some((w, word)) = queue.pop_front() {
            if w == *self {
                return if word.is_empty() { "id".into() } else { word.join(" ") };
            }
            for (name, l) in letters {
                let next = w.mul(&l);
                if seen.insert(next) {
                    let mut nw = word.clone();
                    nw.push(name);
                    queue.push_back((next, nw));
                }
            }
        }
        unreachable!("W is generated by c2, c3 and tau")
    }

    /// All twelve elements.
    pub fn all() -> Vec<Self> {
        closure_w(&[Self::C2, Self::C3, Self::TAU])
    }
}

impl Serialize for WElement {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.word())
    }
}

impl<'de> Deserialize<'de> for WElement {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Self::from_word(&s).map_err(serde::de::Error::custom)
    }
}

fn closure_w(gens: &[WElement]) -> Vec<WElement> {
    let mut out = vec![WElement::ID];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let n = out[i].mul(g);
            if !out.contains(&n) {
                out.push(n);
            }
        }
        i += 1;
    }
    out.sort();
    out
}

/// `p ↦ t + w·p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct SexticAut {
    pub torus: TorusPoint,
    pub w: WElement,
}

impl SexticAut {
    pub fn new(torus: TorusPoint, w: WElement) -> Self {
        Self { torus, w }
    }

    pub fn pure(w: WElement) -> Self {
        Self::new(TorusPoint::zero(), w)
    }

    pub fn translation(t: TorusPoint) -> Self {
        Self::new(t, WElement::ID)
    }

    pub fn identity() -> Self {
        Self::pure(WElement::ID)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    pub fn apply(&self, p: &TorusPoint) -> TorusPoint {
        self.torus.add(&p.transform(&self.w.0))
    }

    pub fn inverse(&self) -> Self {
        let wi = self.w.inverse();
        Self::new(self.torus.transform(&wi.0).neg(), wi)
    }

    /// Conjugate by the translation `u`: `t ↦ t + (I − w)u`.
    pub fn conjugate_by(&self, u: &TorusPoint) -> Self {
        Self::new(self.torus.add(u).add(&u.transform(&self.w.0).neg()), self.w)
    }
}

/// `(t1, w1)(t2, w2) = (t1 + w1·t2, w1 w2)`.
pub fn sextic_compose(a: &SexticAut, b: &SexticAut) -> SexticAut {
    SexticAut::new(a.torus.add(&b.torus.transform(&a.w.0)), a.w.mul(&b.w))
}

pub fn sextic_project(a: &SexticAut) -> WElement {
    a.w
}

/// Serialized generator: `{"torus": [[p, q], [r, s]], "w": "c3 c2"}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SexticGeneratorLiteral {
    pub torus: [[i64; 2]; 2],
    pub w: String,
}

impl SexticGeneratorLiteral {
    pub fn to_aut(&self) -> Result<SexticAut> {
        let t = TorusPoint::try_from(self.torus)?;
        Ok(SexticAut::new(t, WElement::from_word(&self.w)?))
    }
}

impl From<&SexticAut> for SexticGeneratorLiteral {
    fn from(a: &SexticAut) -> Self {
        Self {
            torus: a.torus.into(),
            w: a.w.word(),
        }
    }
}

/// All elements of the group generated by `gens`.
pub fn sextic_closure(gens: &[SexticAut]) -> Result<Vec<SexticAut>> {
    let bound = order_bound();
    let mut seen = HashSet::from([SexticAut::identity()]);
    let mut out = vec![SexticAut::identity()];
    let mut i = 0;
    while i < out.len() {
        for g in gens {
            let n = sextic_compose(&out[i], g);
            if seen.insert(n) {
                out.push(n);
                if out.len() > bound {
                    return Err(Error::OrderBoundExceeded { bound });
                }
            }
        }
        i += 1;
    }
    out.sort();
    Ok(out)
}

/// Whether the group meets the torus only in the identity.
pub fn is_torus_free(gens: &[SexticAut]) -> Result<bool> {
    Ok(sextic_closure(gens)?
        .iter()
        .all(|g| g.w != WElement::ID || g.is_identity()))
}

/// Image of a subgroup under `ψ`, named by how it acts on the hexagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsiImage {
    C6,
    /// The `S3` whose involutions exchange exceptional curves and lines.
    S3Twisted,
    S3,
    W,
    Other,
}

impl PsiImage {
    pub fn of(ws: &[WElement]) -> Self {
        let h = closure_w(ws);
        let contains = |w: WElement| h.contains(&w);
        match h.len() {
            12 => Self::W,
            6 if contains(WElement::TAU) => Self::C6,
            6 if contains(WElement::C2) => Self::S3Twisted,
            6 => Self::S3,
            _ => Self::Other,
        }
    }

    /// Standard generators of the image.
    pub fn standard_generators(&self) -> Option<Vec<WElement>> {
        use WElement as E;
        match self {
            Self::C6 => Some(vec![E::TAU.mul(&E::C3)]),
            Self::S3Twisted => Some(vec![E::C3, E::C2]),
            Self::S3 => Some(vec![E::C3, E::TAU.mul(&E::C2)]),
            Self::W => Some(vec![E::C2, E::C3, E::TAU]),
            Self::Other => None,
        }
    }
}

/// Rays of the fan with their classes: the hexagon `E1, L12, E2, L23, E3, L13`.
const HEXAGON: [([i64; 2], &str); 6] = [
    ([1, 0], "E1"),
    ([0, 1], "L12"),
    ([-1, 1], "E2"),
    ([-1, 0], "L23"),
    ([0, -1], "E3"),
    ([1, -1], "L13"),
];

/// Permutation of the exceptional classes of the degree 6 lattice induced by `w`.
pub fn hexagon_permutation(w: &WElement) -> Permutation {
    let lat = PicardLattice::del_pezzo(6).expect("degree 6");
    let classes = exceptional_classes(&lat);
    let class_of = |label: &str| {
        classes
            .iter()
            .position(|c| lat.label(c) == label)
            .expect("hexagon label")
    };
    let mut images = vec![0; classes.len()];
    for (ray, label) in HEXAGON {
        let m = &w.0;
        let image = [
            m[0][0] * ray[0] + m[0][1] * ray[1],
            m[1][0] * ray[0] + m[1][1] * ray[1],
        ];
        let (_, target) = HEXAGON
            .iter()
            .find(|(r, _)| *r == image)
            .expect("W preserves the fan");
        images[class_of(label)] = class_of(target);
    }
    Permutation::from_images(images).expect("bijection")
}

/// The action of `ψ(G)` on the degree 6 Picard lattice.
pub fn psi_lattice_action(gens: &[SexticAut]) -> Result<LatticeAction> {
    let lat = PicardLattice::del_pezzo(6)?;
    let perms: Vec<Permutation> = gens.iter().map(|g| hexagon_permutation(&g.w)).collect();
    let group = close_generators(&perms, 6)?;
    LatticeAction::from_class_permutations(lat, group)
}

/// Common fixed point on the open torus, found by solving the congruences
/// `(w − I)p ≡ −t (mod Z²)` for every generator.
pub fn sextic_fixed_point(gens: &[SexticAut]) -> Result<Option<TorusPoint>> {
    if gens.is_empty() {
        return Ok(Some(TorusPoint::zero()));
    }
    let mut a: Vec<Vec<i64>> = Vec::new();
    let mut b: Vec<Rational64> = Vec::new();
    for g in gens {
        let m = &g.w.0;
        let t = g.torus.neg().coords();
        for i in 0..2 {
            a.push(vec![m[i][0] - i64::from(i == 0), m[i][1] - i64::from(i == 1)]);
            b.push(t[i]);
        }
    }
    let f = SmithForm::new(&a, 2);
    let ub: Vec<Rational64> = f
        .u
        .iter()
        .map(|row| frac(row.iter().zip(&b).map(|(x, y)| y * *x).sum()))
        .collect();
    let d = f.diagonal();
    let mut q = [Rational64::zero(); 2];
    for (i, c) in ub.iter().enumerate() {
        match d.get(i).copied().filter(|&s| s != 0) {
            Some(s) => q[i] = *c / s,
            None if !c.is_zero() => return Ok(None),
            None => {}
        }
    }
    let p = TorusPoint::new(
        q[0] * f.v[0][0] + q[1] * f.v[0][1],
        q[0] * f.v[1][0] + q[1] * f.v[1][1],
    );
    debug_assert!(gens.iter().all(|g| g.apply(&p) == p));
    Ok(Some(p))
}

/// Result of normalizing a torus-free group by torus conjugation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SexticNormalForm {
    pub psi: PsiImage,
    /// Translation `u` such that the new generators are `u g u⁻¹`.
    pub conjugator: TorusPoint,
    /// Lifts of the standard generators of `ψ(G)`, conjugated.
    pub generators: Vec<SexticAut>,
    /// Translation part of `τ` in the `W` case.
    pub parameters: Option<TorusPoint>,
}

/// Offset subtracted from the `τ` translation when ranking candidates, so the
/// `ζ3` form is the preferred representative.
fn tau_reference() -> TorusPoint {
    TorusPoint::new(Rational64::new(1, 3), Rational64::new(1, 3))
}

/// Conjugates `G` by a torus translation into a canonical form: translations of
/// the standard generators of `ψ(G)` are made lexicographically minimal.
pub fn sextic_normal_form(gens: &[SexticAut]) -> Result<SexticNormalForm> {
    let elements = sextic_closure(gens)?;
    if elements.iter().any(|g| g.w == WElement::ID && !g.is_identity()) {
        return Err(Error::NotTorusFree);
    }
    let ws: Vec<WElement> = gens.iter().map(|g| g.w).collect();
    let psi = PsiImage::of(&ws);
    let standard = psi
        .standard_generators()
        .ok_or_else(|| Error::Unsupported("ψ(G) is not C6, S3 or W".into()))?;
    let lifts: Vec<SexticAut> = standard
        .iter()
        .map(|w| *elements.iter().find(|g| g.w == *w).expect("torus-free lift"))
        .collect();
    let den = lifts
        .iter()
        .fold(1i64, |acc, g| acc.lcm(&g.torus.denominator()))
        * 12;
    let key = |gs: &[SexticAut]| -> Vec<TorusPoint> {
        gs.iter()
            .map(|g| {
                if g.w == WElement::TAU {
                    g.torus.add(&tau_reference().neg())
                } else {
                    g.torus
                }
            })
            .collect()
    };
    let mut best: Option<(Vec<TorusPoint>, TorusPoint, Vec<SexticAut>)> = None;
    for i in 0..den {
        for j in 0..den {
            let u = TorusPoint::new(Rational64::new(i, den), Rational64::new(j, den));
            let conj: Vec<SexticAut> = lifts.iter().map(|g| g.conjugate_by(&u)).collect();
            let k = key(&conj);
            if best.as_ref().is_none_or(|(bk, _, _)| k < *bk) {
                best = Some((k, u, conj));
            }
        }
    }
    let (_, conjugator, generators) = best.expect("nonempty search");
    let parameters = (psi == PsiImage::W).then(|| generators[2].torus);
    Ok(SexticNormalForm {
        psi,
        conjugator,
        generators,
        parameters,
    })
}

/// `⟨c2, c3, τ⟩` with `τ: (x; y) ↦ (α/x; β/y)`, where `α = e^{2πi a}`, `β = e^{2πi b}`.
pub fn weyl_normal_form(alpha: Rational64, beta: Rational64) -> Vec<SexticAut> {
    vec![
        SexticAut::pure(WElement::C2),
        SexticAut::pure(WElement::C3),
        SexticAut::new(TorusPoint::new(alpha, beta), WElement::TAU),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{iso_type, IsoType};
    use crate::lattice::invariant_rank;

    fn r(n: i64, d: i64) -> Rational64 {
        Rational64::new(n, d)
    }

    #[test]
    fn w_has_twelve_elements() {
        let all = WElement::all();
        assert_eq!(all.len(), 12);
        for w in &all {
            assert_eq!(WElement::from_word(&w.word()).unwrap(), *w);
        }
        assert_eq!(WElement::C3.order(), 3);
    }

    #[test]
    fn composition_law() {
        let t = SexticAut::translation(TorusPoint::new(r(1, 2), r(1, 3)));
        let u = SexticAut::translation(TorusPoint::new(r(1, 3), r(1, 2)));
        assert_eq!(
            sextic_compose(&t, &u),
            SexticAut::translation(TorusPoint::new(r(5, 6), r(5, 6)))
        );
        let c3 = SexticAut::pure(WElement::C3);
        assert!(sextic_compose(&c3, &sextic_compose(&c3, &c3)).is_identity());
        let g = SexticAut::new(TorusPoint::new(r(1, 5), r(2, 7)), WElement::C2);
        assert!(sextic_compose(&g, &g.inverse()).is_identity());
        assert_eq!(sextic_project(&g), WElement::C2);
    }

    #[test]
    fn psi_images_on_the_hexagon() {
        let lat6 = |ws: &[WElement]| {
            let gens: Vec<SexticAut> = ws.iter().map(|w| SexticAut::pure(*w)).collect();
            let a = psi_lattice_action(&gens).unwrap();
            (iso_type(a.group()), invariant_rank(&a))
        };
        assert_eq!(lat6(&[WElement::C2, WElement::C3, WElement::TAU]).1, 1);
        let c6 = PsiImage::C6.standard_generators().unwrap();
        assert_eq!(lat6(&c6), (IsoType::Cyclic(6), 1));
        let tw = PsiImage::S3Twisted.standard_generators().unwrap();
        assert_eq!(lat6(&tw), (IsoType::Sym(3), 1));
        let s3 = PsiImage::S3.standard_generators().unwrap();
        assert_eq!(lat6(&s3), (IsoType::Sym(3), 2));
    }

    #[test]
    fn c6_has_a_fixed_point() {
        let g = SexticAut::new(TorusPoint::new(r(1, 7), r(3, 5)), WElement::TAU.mul(&WElement::C3));
        let p = sextic_fixed_point(&[g]).unwrap().unwrap();
        assert_eq!(g.apply(&p), p);
    }

    #[test]
    fn translations_have_no_fixed_points() {
        let t = SexticAut::translation(TorusPoint::new(r(1, 2), r(0, 1)));
        assert_eq!(sextic_fixed_point(&[t]).unwrap(), None);
        assert!(!is_torus_free(&[t]).unwrap());
        assert!(matches!(sextic_normal_form(&[t]), Err(Error::NotTorusFree)));
    }

    #[test]
    fn twisted_s3_groups_are_conjugate_to_the_pure_one() {
        let u = TorusPoint::new(r(1, 4), r(2, 9));
        let gens: Vec<SexticAut> = [WElement::C3, WElement::C2]
            .iter()
            .map(|w| SexticAut::pure(*w).conjugate_by(&u))
            .collect();
        let nf = sextic_normal_form(&gens).unwrap();
        assert_eq!(nf.psi, PsiImage::S3Twisted);
        assert!(nf.generators.iter().all(|g| g.torus.is_zero()));
    }

    #[test]
    fn zeta3_weyl_form_is_normalized() {
        let gens = weyl_normal_form(r(1, 3), r(1, 3));
        let nf = sextic_normal_form(&gens).unwrap();
        assert_eq!(nf.generators, gens);
        assert_eq!(nf.parameters, Some(TorusPoint::new(r(1, 3), r(1, 3))));
    }

    #[test]
    fn descriptor_round_trip() {
        let lit: SexticGeneratorLiteral =
            serde_json::from_str(r#"{"torus": [[1, 3], [2, 3]], "w": "tau c3"}"#).unwrap();
        let a = lit.to_aut().unwrap();
        assert_eq!(a.w, WElement::TAU.mul(&WElement::C3));
        assert_eq!(SexticGeneratorLiteral::from(&a).to_aut().unwrap(), a);
        let bad: SexticGeneratorLiteral =
            serde_json::from_str(r#"{"torus": [[1, 0], [2, 3]], "w": "c2"}"#).unwrap();
        assert!(bad.to_aut().is_err());
    }
}

