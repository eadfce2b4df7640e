use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{SexticAut, SexticGeneratorLiteral};
use crate::groups::{GoursatData, GoursatLiteral, GroupLiteral, PermGroup};
use crate::lattice::{LatticeAction, LatticeActionLiteral};
use crate::links::{ModelNode, OrbitOracle};

/// Classifier input, as read from a descriptor file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ActionDescriptor {
    DelPezzoLattice {
        action: LatticeActionLiteral,
        /// Tag of a built-in explicit model the action comes from.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        model: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        orbit_lengths: Option<BTreeMap<ModelNode, Vec<u8>>>,
    },
    P1p1 {
        goursat: GoursatLiteral,
        swap_present: bool,
    },
    Sextic {
        generators: Vec<SexticGeneratorLiteral>,
    },
    PlaneLinear {
        group: GroupLiteral,
    },
    Builtin {
        name: String,
    },
}

/// A descriptor file: an optional display name plus the descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedDescriptor {
    pub name: String,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub summary: String,
    pub descriptor: ActionDescriptor,
}

/// Descriptor with every constituent built and validated.
#[derive(Debug, Clone)]
pub enum Resolved {
    Lattice {
        action: LatticeAction,
        model: Option<String>,
        oracle: Option<OrbitOracle>,
    },
    P1p1 {
        goursat: GoursatData,
        swap_present: bool,
    },
    Sextic {
        generators: Vec<SexticAut>,
    },
    Plane {
        group: PermGroup,
    },
}

fn field(name: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| match e {
        Error::MalformedDescriptor { field, message } => Error::MalformedDescriptor {
            field: format!("{name}.{field}"),
            message,
        },
        other => Error::malformed(name, other.to_string()),
    }
}

impl ActionDescriptor {
    /// Parses JSON, reporting the failing field on schema errors.
    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::malformed("descriptor", e.to_string()))?;
        let value = match value.get("descriptor") {
            Some(inner) if value.get("kind").is_none() => inner.clone(),
            _ => value,
        };
        serde_json::from_value(value).map_err(|e| {
            let msg = e.to_string();
            let field = msg
                .split('`')
                .nth(1)
                .filter(|_| msg.starts_with("missing field") || msg.starts_with("unknown field"))
                .unwrap_or("descriptor")
                .to_string();
            Error::malformed(field, msg)
        })
    }

    pub fn resolve(&self) -> Result<Resolved> {
        match self {
            Self::DelPezzoLattice {
                action,
                model,
                orbit_lengths,
            } => {
                let oracle = orbit_lengths
                    .as_ref()
                    .map(|m| OrbitOracle::new(m.iter().map(|(k, v)| (*k, v.clone()))))
                    .transpose()
                    .map_err(field("orbit_lengths"))?;
                Ok(Resolved::Lattice {
                    action: action.to_action().map_err(field("action"))?,
                    model: model.clone(),
                    oracle,
                })
            }
            Self::P1p1 {
                goursat,
                swap_present,
            } => Ok(Resolved::P1p1 {
                goursat: goursat.to_data().map_err(field("goursat"))?,
                swap_present: *swap_present,
            }),
            Self::Sextic { generators } => Ok(Resolved::Sextic {
                generators: generators
                    .iter()
                    .enumerate()
                    .map(|(i, g)| g.to_aut().map_err(field(&format!("generators[{i}]"))))
                    .collect::<Result<_>>()?,
            }),
            Self::PlaneLinear { group } => Ok(Resolved::Plane {
                group: group.to_group().map_err(field("group"))?,
            }),
            Self::Builtin { name } => super::examples::builtin(name)
                .ok_or_else(|| Error::malformed("name", format!("no built-in example `{name}`")))?
                .descriptor
                .resolve(),
        }
    }

    /// Canonical JSON bytes, used for digests.
    pub fn canonical_json(&self) -> Vec<u8> {
        serde_json::to_vec(self).expect("descriptor serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn missing_field_is_named() {
        let err = ActionDescriptor::from_json(r#"{"kind": "p1p1", "swap_present": true}"#).unwrap_err();
        match err {
            Error::MalformedDescriptor { field, .. } => assert_eq!(field, "goursat"),
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn invalid_group_is_reported_under_its_field() {
        let text = r#"{"kind": "plane_linear", "group": {"degree": 2, "generators": [[0, 0]]}}"#;
        let d = ActionDescriptor::from_json(text).unwrap();
        match d.resolve().unwrap_err() {
            Error::MalformedDescriptor { field, .. } => assert_eq!(field, "group"),
            e => panic!("unexpected {e}"),
        }
    }
}
