use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::cohomology::FiniteAbelianGroup;
use crate::groups::GroupLiteral;

pub fn digest(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn digest_json<T: Serialize + ?Sized>(value: &T) -> String {
    digest(&serde_json::to_vec(value).expect("serializable"))
}

/// A subgroup with nonzero `H¹`, in re-checkable form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub subgroup: GroupLiteral,
    pub order: usize,
    pub h1: FiniteAbelianGroup,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum StableStatus {
    Open,
    NotStablyLinearizable { witness: WitnessRecord },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Linearizable,
    NonLinearizable { stable_status: StableStatus },
    NotMinimal { invariant_rank: usize },
    OutOfScope { reason: String },
}

impl Verdict {
    pub fn open() -> Self {
        Self::NonLinearizable {
            stable_status: StableStatus::Open,
        }
    }

    /// Short label: `linearizable`, `non-linearizable (open)`, and so on.
    pub fn label(&self) -> String {
        match self {
            Self::Linearizable => "linearizable".into(),
            Self::NonLinearizable {
                stable_status: StableStatus::Open,
            } => "non-linearizable (stable status open)".into(),
            Self::NonLinearizable {
                stable_status: StableStatus::NotStablyLinearizable { witness },
            } => format!(
                "not stably linearizable (H1 = {} on a subgroup of order {})",
                witness.h1, witness.order
            ),
            Self::NotMinimal { invariant_rank } => {
                format!("not minimal (invariant rank {invariant_rank})")
            }
            Self::OutOfScope { reason } => format!("out of scope: {reason}"),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// One evidence record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub check: String,
    pub inputs_digest: String,
    pub result: String,
    pub ok: bool,
    pub rationale: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub strategy: String,
    pub descriptor_digest: String,
    pub records: Vec<Evidence>,
}

impl Certificate {
    pub fn new(strategy: &str, descriptor_digest: String) -> Self {
        Self {
            strategy: strategy.into(),
            descriptor_digest,
            records: Vec::new(),
        }
    }

    pub fn record<T: Serialize + ?Sized>(
        &mut self,
        check: &str,
        inputs: &T,
        result: impl Into<String>,
        ok: bool,
        rationale: &str,
    ) {
        self.records.push(Evidence {
            check: check.into(),
            inputs_digest: digest_json(inputs),
            result: result.into(),
            ok,
            rationale: rationale.into(),
        });
    }

    pub fn get(&self, check: &str) -> Option<&Evidence> {
        self.records.iter().find(|r| r.check == check)
    }

    pub fn all_ok(&self) -> bool {
        self.records.iter().all(|r| r.ok)
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "strategy: {}", self.strategy)?;
        writeln!(f, "descriptor: {}", &self.descriptor_digest[..16.min(self.descriptor_digest.len())])?;
        for r in &self.records {
            let mark = if r.ok { "ok" } else { "!!" };
            writeln!(f, "  [{mark}] {}: {}", r.check, r.result)?;
            writeln!(f, "       {}", r.rationale)?;
        }
        Ok(())
    }
}
