//! Reachability over minimal model kinds through equivariant Sarkisov links.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ModelNode {
    DelPezzo(u8),
    ConicBundle(u8),
    QuadricSurface,
    ProjectivePlane,
}

impl ModelNode {
    pub fn del_pezzo(degree: u8) -> Result<Self> {
        if (1..=6).contains(&degree) {
            Ok(Self::DelPezzo(degree))
        } else {
            Err(Error::DegreeOutOfRange {
                degree: degree.into(),
                min: 1,
                max: 6,
            })
        }
    }

    pub fn conic_bundle(degree: u8) -> Result<Self> {
        if (1..=8).contains(&degree) {
            Ok(Self::ConicBundle(degree))
        } else {
            Err(Error::DegreeOutOfRange {
                degree: degree.into(),
                min: 1,
                max: 8,
            })
        }
    }

    /// `K²` of the surface.
    pub fn degree(&self) -> u8 {
        match self {
            Self::DelPezzo(d) | Self::ConicBundle(d) => *d,
            Self::QuadricSurface => 8,
            Self::ProjectivePlane => 9,
        }
    }
}

impl fmt::Display for ModelNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::DelPezzo(d) => write!(f, "dp{d}"),
            Self::ConicBundle(d) => write!(f, "cb{d}"),
            Self::QuadricSurface => f.write_str("quadric"),
            Self::ProjectivePlane => f.write_str("p2"),
        }
    }
}

impl FromStr for ModelNode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        let bad = || Error::malformed("node", format!("unknown model `{s}`"));
        match s.as_str() {
            "p2" | "plane" => Ok(Self::ProjectivePlane),
            "quadric" | "p1p1" => Ok(Self::QuadricSurface),
            _ => {
                let (ctor, rest): (fn(u8) -> Result<Self>, &str) = if let Some(r) = s.strip_prefix("dp") {
                    (Self::del_pezzo, r)
                } else if let Some(r) = s.strip_prefix("cb") {
                    (Self::conic_bundle, r)
                } else {
                    return Err(bad());
                };
                ctor(rest.parse().map_err(|_| bad())?)
                    .map_err(|e| Error::malformed("node", e.to_string()))
            }
        }
    }
}

impl Serialize for ModelNode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ModelNode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LinkRule {
    pub source: ModelNode,
    /// Orbit lengths that trigger the rule; `None` for links that need no center.
    pub centers: Option<Vec<u8>>,
    pub target: ModelNode,
    pub note: String,
}

impl LinkRule {
    fn validate(&self) -> Result<()> {
        for &d in self.centers.iter().flatten() {
            if d == 0 || d >= self.source.degree() {
                return Err(Error::malformed(
                    "centers",
                    format!("center of length {d} on {} (degree {})", self.source, self.source.degree()),
                ));
            }
        }
        Ok(())
    }

    pub fn applies(&self, lengths: &BTreeSet<u8>) -> bool {
        match &self.centers {
            None => true,
            Some(ds) => ds.iter().any(|d| lengths.contains(d)),
        }
    }
}

const RULE_ASSET: &str = include_str!("../assets/link_rules.json");

/// The shipped rule table, validated on first use.
pub fn rule_table() -> &'static [LinkRule] {
    static TABLE: OnceLock<Vec<LinkRule>> = OnceLock::new();
    TABLE.get_or_init(|| parse_rules(RULE_ASSET).expect("shipped link rules are valid"))
}

pub fn parse_rules(text: &str) -> Result<Vec<LinkRule>> {
    let rules: Vec<LinkRule> =
        serde_json::from_str(text).map_err(|e| Error::malformed("rules", e.to_string()))?;
    for r in &rules {
        r.validate()?;
    }
    Ok(rules)
}

/// Realizable orbit lengths on each model.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitOracle {
    pub orbit_lengths: BTreeMap<ModelNode, BTreeSet<u8>>,
}

impl OrbitOracle {
    pub fn new(entries: impl IntoIterator<Item = (ModelNode, Vec<u8>)>) -> Result<Self> {
        let oracle = Self {
            orbit_lengths: entries
                .into_iter()
                .map(|(n, ls)| (n, ls.into_iter().collect()))
                .collect(),
        };
        oracle.validate()?;
        Ok(oracle)
    }

    pub fn validate(&self) -> Result<()> {
        for (node, lengths) in &self.orbit_lengths {
            if let Some(d) = lengths.iter().find(|&&d| d == 0 || d >= node.degree()) {
                return Err(Error::malformed(
                    "orbit_lengths",
                    format!("length {d} is not below the degree of {node}"),
                ));
            }
        }
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let oracle: Self =
            serde_json::from_str(text).map_err(|e| Error::malformed("orbit_lengths", e.to_string()))?;
        oracle.validate()?;
        Ok(oracle)
    }
}

/// All models reachable from `start` by applicable links.
pub fn reachable(start: ModelNode, oracle: &OrbitOracle) -> Result<BTreeSet<ModelNode>> {
    reachable_with(rule_table(), start, oracle)
}

pub fn reachable_with(
    rules: &[LinkRule],
    start: ModelNode,
    oracle: &OrbitOracle,
) -> Result<BTreeSet<ModelNode>> {
    let empty = BTreeSet::new();
    let mut seen = BTreeSet::from([start]);
    let mut queue = VecDeque::from([start]);
    while let Some(node) = queue.pop_front() {
        let outgoing: Vec<&LinkRule> = rules.iter().filter(|r| r.source == node).collect();
        let needs_oracle = outgoing.iter().any(|r| r.centers.is_some());
        let lengths = match oracle.orbit_lengths.get(&node) {
            Some(ls) => ls,
            None if needs_oracle => return Err(Error::MissingOracleEntry(node.to_string())),
            None => &empty,
        };
        for r in outgoing {
            if r.applies(lengths) && seen.insert(r.target) {
                queue.push_back(r.target);
            }
        }
    }
    Ok(seen)
}

/// Whether the plane can be reached at all.
pub fn linearizability_necessary_condition(start: ModelNode, oracle: &OrbitOracle) -> Result<bool> {
    Ok(reachable(start, oracle)?.contains(&ModelNode::ProjectivePlane))
}

#[cfg(test)]
mod tests {
    use super::*;
    use ModelNode::*;

    #[test]
    fn table_loads() {
        assert!(!rule_table().is_empty());
        assert!(rule_table()
            .iter()
            .any(|r| r.source == QuadricSurface && r.target == ProjectivePlane));
        assert!(parse_rules(r#"[{"source":"dp4","centers":[4],"target":"dp4","note":""}]"#).is_err());
    }

    #[test]
    fn quartic_example_stays_away_from_the_plane() {
        let oracle = OrbitOracle::new([(DelPezzo(4), vec![1, 3])]).unwrap();
        let r = reachable(DelPezzo(4), &oracle).unwrap();
        assert_eq!(r, BTreeSet::from([DelPezzo(4), ConicBundle(3)]));
        assert!(!linearizability_necessary_condition(DelPezzo(4), &oracle).unwrap());
    }

    #[test]
    fn quadric_with_fixed_point() {
        let oracle = OrbitOracle::new([(QuadricSurface, vec![1])]).unwrap();
        assert!(reachable(QuadricSurface, &oracle).unwrap().contains(&ProjectivePlane));
        let even = OrbitOracle::new([(QuadricSurface, vec![2, 4])]).unwrap();
        let r = reachable(QuadricSurface, &even).unwrap();
        assert!(!r.contains(&ProjectivePlane) && !r.contains(&DelPezzo(5)));
    }

    #[test]
    fn sextic_through_quadric() {
        let oracle =
            OrbitOracle::new([(DelPezzo(6), vec![1]), (QuadricSurface, vec![1])]).unwrap();
        assert!(linearizability_necessary_condition(DelPezzo(6), &oracle).unwrap());
        let oracle = OrbitOracle::new([(DelPezzo(6), vec![1])]).unwrap();
        assert!(matches!(
            reachable(DelPezzo(6), &oracle),
            Err(Error::MissingOracleEntry(n)) if n == "quadric"
        ));
    }

    #[test]
    fn names_and_bad_oracles() {
        for n in ["p2", "quadric", "dp4", "cb3"] {
            assert_eq!(n.parse::<ModelNode>().unwrap().to_string(), n);
        }
        assert!("dp7".parse::<ModelNode>().is_err());
        assert!(OrbitOracle::new([(DelPezzo(4), vec![4])]).is_err());
        let o = OrbitOracle::from_json(r#"{"orbit_lengths": {"dp4": [1, 3]}}"#).unwrap();
        assert_eq!(o.orbit_lengths[&DelPezzo(4)], BTreeSet::from([1, 3]));
    }
}
