//! Explicit models: monomial automorphisms of a quartic del Pezzo surface
//! over cyclotomic fields, and translations on the sextic torus.

pub mod cyclotomic;
pub mod monomial;
pub mod quartic;
pub mod sextic;

pub use cyclotomic::Cyclotomic;
pub use monomial::{common_fixed_subspaces, fixed_subspaces, FixedSubspace, MonomialMap};
pub use quartic::{dp4_line_action, small_orbits_dp4, Line, QuarticGroup, QuarticModel};
pub use sextic::{
    hexagon_permutation, is_torus_free, psi_lattice_action, sextic_closure, sextic_compose,
    sextic_fixed_point, sextic_normal_form, sextic_project, weyl_normal_form, PsiImage, SexticAut,
    SexticGeneratorLiteral, SexticNormalForm, TorusPoint, WElement,
};
