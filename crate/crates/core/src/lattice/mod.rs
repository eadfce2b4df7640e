//! Picard lattices of del Pezzo surfaces and group actions on them.

mod action;
mod picard;

pub use action::{
    action_from_line_images, blowup_orbit, invariant_rank, is_minimal, reflection, weyl_group,
    GModule, LatticeAction, LatticeActionLiteral, LatticeAut, WeylGroup, WEYL_MAX_DEGREE,
    WEYL_MIN_DEGREE,
};
pub use picard::{exceptional_classes, LatticeVector, PicardLattice};
