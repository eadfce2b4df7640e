//! The decision procedure: descriptors in, verdicts and certificates out.

pub mod certificate;
pub mod descriptor;
pub mod examples;
pub mod strategy;
pub mod suite;

pub use certificate::{digest, Certificate, Evidence, StableStatus, Verdict, WitnessRecord};
pub use descriptor::{ActionDescriptor, NamedDescriptor, Resolved};
pub use examples::{builtin, builtin_examples, builtin_text};
pub use strategy::{Registry, Strategy};
pub use suite::{certify_suite, certify_rows, suite_rows, Expected, RowReport, RowSpec, SuiteReport};

use crate::error::Result;

/// Classifies with the standard strategy registry.
pub fn classify(descriptor: &ActionDescriptor) -> Result<(Verdict, Certificate)> {
    Registry::standard().classify(descriptor, None)
}
