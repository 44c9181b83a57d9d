//! The `S_n × S_n` action on vertex labels: action forms, the stabilizer of
//! `ν_2`, its orbit and minimal polynomial, and the relations among the forms.

pub mod action;
pub mod perm;
pub mod relations;

pub use action::{
    action_form, action_matrix, eval_form, eval_pair, minimal_poly, minimal_poly_with, orbit_data,
    stabilizer, stabilizer_exhaustive, ActionForm, MinimalPoly, OrbitData,
};
pub use perm::{Perm, PermPair};
pub use relations::{
    graded_rank, linear_relations, phi_basis, phi_value, relation_checks, rho_check, rho_value,
    segre_failures, span_rank, GradedRow, LinearRelationReport, RelationReport,
};
