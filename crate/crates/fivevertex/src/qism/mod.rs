//! Operator realization of the transfer-matrix algebra: local vertex
//! operators, monodromy matrices on the tensor quantum space, the
//! partition function as a vacuum matrix element, and verifiers for the
//! intertwining relation, the sixteen commutation relations, the
//! off-shell action formula and the string-symmetry statement.
//!
//! Operators are immutable once built and all products are pure, so
//! independent verification cases can run concurrently.

mod lemmas;
mod monodromy;
mod ops;
mod rll;
mod solutions;

pub use lemmas::{action_formula_residual, symmetry_violation, weighted_string};
pub use monodromy::{
    build_monodromy, five_vertex_sites, matrix_element_z, monodromy_from_sites,
    site_vacuum_eigenvalues, vacuum_a, vacuum_bracket, vacuum_d, vacuum_state, MiddleOps,
    OperatorQuad, Site, DEFAULT_DIMENSION_CAP,
};
pub use ops::{DenseMatrix, LocalLOperator, SparseOperator};
pub use rll::{
    all_relations_hold, commutation_residuals, f_func, g_func, rll_residual, verify_rll, RMatrix,
    RELATION_NAMES,
};
pub use solutions::{
    bosonic_l, bosonic_shift_ops, corrupted_five_vertex_l, five_vertex_l, four_vertex_l, spm_l,
    BosonicSign, SpmParams, SpmVariant,
};
