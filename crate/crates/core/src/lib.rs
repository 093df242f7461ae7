//! Exact computations for the interaction `(V, H)` that a finite directed
//! multigraph induces on the AF-core of its graph C*-algebra.
//!
//! Orientation convention: an edge `e` goes from `s(e)` to `r(e)`, paths are
//! composed left to right (`r(μ_i) = s(μ_{i+1})`), `n_v` counts edges
//! *entering* `v`, and the Cuntz-Krieger relations read `S_e* S_e = P_{r(e)}`,
//! `P_v = Σ_{s(e)=v} S_e S_e*`. Much graph-algebra software uses the reversed
//! convention; inputs written for it must have every edge flipped.
//!
//! Modules:
//! - [`graph`]: the multigraph, paths, text/JSON formats, `A_E` and `P`.
//! - [`structure`]: purely combinatorial decisions (interaction powers,
//!   loops, conditions (L)/(K), hereditary saturated sets, verdicts).
//! - [`arith`]: radical scalars, integer matrices, Smith normal form,
//!   finitely generated abelian groups.
//! - [`algebra`]: the finite levels `F_N` of the core, the maps `V`, `H`,
//!   `φ_E`, axiom verification, Bratteli diagrams, path states.
//! - [`rep`]: a truncated path-space representation used as an operator
//!   oracle for the symbolic formulas.
//! - [`dynamics`]: eventually periodic and sink paths, the shift, eventual
//!   equality and the quotient basis sets.
//! - [`ktheory`]: `K_0`, `K_1` of `C*(E)` through `Δ_E` and through a
//!   truncated presentation of `K_0(F_E)`.

pub mod algebra;
pub mod arith;
pub mod dynamics;
pub mod error;
pub mod graph;
pub mod ktheory;
pub mod rep;
pub mod structure;

pub use error::{Error, Result};
pub use graph::{Graph, Path};
