//! The finite levels `F_N` of the AF-core and the maps `V`, `H`, `φ_E`.
//!
//! `F_N` is spanned by matrix units `s_μ s_ν*` with `|μ| = |ν|`,
//! `r(μ) = r(ν)`, and either `|μ| = N` or `r(μ)` a sink with `|μ| ≤ N`.

mod axioms;
mod bratteli;
mod core;
mod element;
mod state;

pub use self::axioms::{
    diagonal_preservation_probe, ideal_invariance_check, verify_interaction_axioms, AxiomReport,
    AxiomViolation, DiagonalProbe,
};
pub use self::bratteli::{bratteli, BratteliDiagram, BratteliEdge, BratteliNode, NodeKind};
pub use self::core::{Core, DEFAULT_BASIS_BOUND};
pub use self::element::{is_basis_pair, matrix_unit, vertex_projection, CoreElement, ElementDisplay, PathPair};
pub use self::state::state_eval;
