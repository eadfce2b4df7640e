use std::fmt;

use serde::{Deserialize, Serialize};

use super::certificate::{Certificate, StableStatus, Verdict};
use super::descriptor::ActionDescriptor;
use super::strategy::Registry;
use crate::error::{Error, Result};
use crate::lattice::{weyl_group, PicardLattice};

/// The verdict a suite row must produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expected {
    Linearizable,
    NonLinearizableOpen,
    NotStablyLinearizable,
}

impl Expected {
    pub fn matches(&self, v: &Verdict) -> bool {
        match (self, v) {
            (Self::Linearizable, Verdict::Linearizable) => true,
            (
                Self::NonLinearizableOpen,
                Verdict::NonLinearizable {
                    stable_status: StableStatus::Open,
                },
            ) => true,
            (
                Self::NotStablyLinearizable,
                Verdict::NonLinearizable {
                    stable_status: StableStatus::NotStablyLinearizable { .. },
                },
            ) => true,
            _ => false,
        }
    }
}

#[derive(Debug, Clone)]
pub struct RowSpec {
    pub name: String,
    pub descriptor: ActionDescriptor,
    pub expected: Expected,
    /// Checks that must appear in the certificate.
    pub required: Vec<&'static str>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub name: String,
    pub expected: Expected,
    pub verdict: Verdict,
    pub passed: bool,
    pub detail: String,
    pub certificate: Certificate,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub rows: Vec<RowReport>,
    pub passed: bool,
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            let mark = if r.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{mark} {:<14} {}", r.name, r.verdict)?;
            if !r.passed {
                writeln!(f, "     {}", r.detail)?;
            }
        }
        let n = self.rows.iter().filter(|r| r.passed).count();
        write!(f, "{n}/{} rows passed", self.rows.len())
    }
}

fn row_spec(name: &str, expected: Expected, required: &[&'static str]) -> RowSpec {
    RowSpec {
        name: name.into(),
        descriptor: ActionDescriptor::Builtin { name: name.into() },
        expected,
        required: required.to_vec(),
    }
}

/// One row per case of the classification, plus the linearizable complements.
pub fn suite_rows() -> Vec<RowSpec> {
    use Expected::*;
    vec![
        row_spec("cubic-c3", NotStablyLinearizable, &["invariant_rank", "h1_witness"]),
        row_spec(
            "dp4-dicyclic",
            NonLinearizableOpen,
            &["invariant_rank", "h1_all_subgroups", "iso_type", "link_reachability"],
        ),
        row_spec("dp5-c5", Linearizable, &["iso_type", "link_reachability"]),
        row_spec("dp5-d5", Linearizable, &["iso_type", "construction"]),
        row_spec("dp5-f20", NonLinearizableOpen, &["iso_type"]),
        row_spec("dp5-a5", NonLinearizableOpen, &["iso_type", "subgroups_index_le_4"]),
        row_spec("dp5-s5", NonLinearizableOpen, &["iso_type"]),
        row_spec("dp6-c6", Linearizable, &["torus_intersection", "fixed_point"]),
        row_spec("dp6-s3tw", Linearizable, &["torus_intersection", "fixed_point"]),
        row_spec("dp6-torus", NonLinearizableOpen, &["torus_intersection"]),
        row_spec("dp6-weyl", NonLinearizableOpen, &["torus_intersection", "psi_image"]),
        row_spec("p1p1-c4", Linearizable, &["swap_present", "link_reachability"]),
        row_spec("p1p1-d4", NonLinearizableOpen, &["goursat_factor", "amitsur"]),
        row_spec("p1p1-d5", NonLinearizableOpen, &["goursat_factor"]),
        row_spec("p1p1-a4", NonLinearizableOpen, &["goursat_factor", "amitsur"]),
        row_spec("p1p1-s4", NonLinearizableOpen, &["goursat_factor", "amitsur"]),
        row_spec("p1p1-a5", NonLinearizableOpen, &["goursat_factor", "amitsur"]),
    ]
}

/// A quartic row whose action is cyclic of order 12 but which claims the
/// dicyclic verdict. Certification must reject it.
pub fn corrupted_quartic_row() -> Result<RowSpec> {
    let w = weyl_group(&PicardLattice::del_pezzo(4)?)?;
    let full = w.action()?;
    let i = (0..w.group.order())
        .find(|&i| w.group.element_order(i) == 12)
        .ok_or_else(|| Error::Unsupported("no element of order 12 in W(D5)".into()))?;
    let action = full.restrict(&w.group.subgroup_generated(&[i]));
    Ok(RowSpec {
        name: "dp4-corrupted".into(),
        descriptor: ActionDescriptor::DelPezzoLattice {
            action: action.to_literal(),
            model: None,
            orbit_lengths: None,
        },
        expected: Expected::NonLinearizableOpen,
        required: vec!["invariant_rank", "h1_all_subgroups", "iso_type"],
    })
}

pub fn certify_rows(registry: &Registry, rows: &[RowSpec]) -> SuiteReport {
    let rows: Vec<RowReport> = rows
        .iter()
        .map(|row| match registry.classify(&row.descriptor, None) {
            Ok((verdict, certificate)) => {
                let mut problems = Vec::new();
                if !row.expected.matches(&verdict) {
                    problems.push(format!("verdict mismatch: expected {:?}", row.expected));
                }
                for c in &row.required {
                    if certificate.get(c).is_none() {
                        problems.push(format!("missing check {c}"));
                    }
                }
                for r in certificate.records.iter().filter(|r| !r.ok) {
                    problems.push(format!("check {} failed: {}", r.check, r.result));
                }
                RowReport {
                    name: row.name.clone(),
                    expected: row.expected,
                    passed: problems.is_empty(),
                    detail: problems.join("; "),
                    verdict,
                    certificate,
                }
            }
            Err(e) => RowReport {
                name: row.name.clone(),
                expected: row.expected,
                verdict: Verdict::OutOfScope {
                    reason: e.to_string(),
                },
                passed: false,
                detail: e.to_string(),
                certificate: Certificate::default(),
            },
        })
        .collect();
    let passed = rows.iter().all(|r| r.passed);
    SuiteReport { rows, passed }
}

pub fn certify_suite() -> SuiteReport {
    certify_rows(&Registry::standard(), &suite_rows())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_passes() {
        let report = certify_suite();
        assert!(report.passed, "{report}");
        assert_eq!(report, certify_suite());
    }

    #[test]
    fn corrupted_row_fails() {
        let row = corrupted_quartic_row().unwrap();
        let report = certify_rows(&Registry::standard(), &[row]);
        assert!(!report.passed);
        assert!(!report.rows[0].detail.is_empty());
    }
}
