//! Finite permutation groups and the constructions built on them.

pub mod catalog;
mod goursat;
mod group;
mod hom;
mod iso;
mod orbits;
mod perm;
mod subgroups;

pub use goursat::{fiber_product, goursat_decompose, product_projections, GoursatData, GoursatLiteral};
pub use group::{close_generators, order_bound, GroupLiteral, PermGroup, DEFAULT_ORDER_BOUND, ORDER_BOUND_ENV};
pub use hom::{quotient, Homomorphism};
pub use iso::{abelian_invariants, iso_type, IsoType};
pub use orbits::{orbit_lengths, orbits};
pub use perm::Permutation;
pub use subgroups::{normal_subgroups, subgroups};
