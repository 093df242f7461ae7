//! Combinatorial decisions that need no algebra: interaction powers, loops,
//! conditions (L) and (K), hereditary saturated sets and the resulting
//! verdicts.

mod hereditary;
mod loops;
mod powers;

pub use hereditary::{
    all_hereditary_saturated, hereditary_saturated_closure, hereditary_saturated_closure_of_names,
    is_hereditary, is_hereditary_saturated, is_saturated, set_names, VertexSet, DEFAULT_LATTICE_BOUND,
};
pub use loops::{
    canonical_rotation, condition_K_by_reentry, condition_L, loop_exits, loops_without_exit,
    reentering_exit, simple_loops,
};
pub use powers::{
    cstar_horizon, interaction_powers, is_H_multiplicative, is_cstar_dynamical, powers_via_matrix,
    powers_via_paths, PowerSet,
};

use serde::Serialize;

use crate::graph::Graph;
use crate::{Error, Result};

/// Condition (K) through hereditary saturated sets: (L) holds on the
/// subgraph spanned by the complement of every hereditary saturated set.
/// Cross-checked against [`condition_K_by_reentry`]; disagreement is an
/// [`Error::OracleMismatch`].
#[allow(non_snake_case)]
pub fn condition_K(g: &Graph) -> Result<bool> {
    let lattice = all_hereditary_saturated(g, DEFAULT_LATTICE_BOUND)?;
    let by_lattice = lattice.iter().all(|hs| {
        let keep: Vec<bool> = (0..g.vertex_count()).map(|v| !hs.contains(&v)).collect();
        condition_L(&g.induced_subgraph(&keep))
    });
    let by_reentry = condition_K_by_reentry(g);
    if by_lattice != by_reentry {
        return Err(Error::OracleMismatch {
            context: "condition (K)",
            detail: format!("hereditary-saturated form {by_lattice} vs re-entry form {by_reentry}"),
        });
    }
    Ok(by_lattice)
}

/// A boolean outcome with a short human-readable justification.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub reason: String,
}

/// Structural verdicts. `simple` is a sufficient criterion only: when it
/// fails the report says the criteria are not met, not that the algebra is
/// non-simple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdicts {
    pub simple: Verdict,
    pub purely_infinite: Verdict,
    pub minimal: bool,
    pub topologically_free: bool,
    pub free: bool,
}

impl Verdicts {
    pub fn simple_label(&self) -> &'static str {
        if self.simple.holds {
            "criteria met"
        } else {
            "criteria not met"
        }
    }
}

pub fn verdicts(g: &Graph) -> Result<Verdicts> {
    let exitless = loops_without_exit(g);
    let l = exitless.is_empty();
    let k = condition_K(g)?;
    let lattice = all_hereditary_saturated(g, DEFAULT_LATTICE_BOUND)?;
    let minimal = lattice.len() <= 2;
    let l_reason = match exitless.first() {
        Some(lp) => format!("loop {} has no exit", g.path_string(lp)),
        None => "every loop has an exit".to_string(),
    };
    let simple = Verdict {
        holds: l && minimal,
        reason: match (l, minimal) {
            (true, true) => format!("{l_reason}; no nontrivial hereditary saturated subsets"),
            (false, _) => l_reason.clone(),
            (true, false) => {
                let witness = &lattice[1];
                format!("nontrivial hereditary saturated subset {{{}}}", set_names(g, witness).join(","))
            }
        },
    };
    let sinks = g.sinks();
    let purely_infinite = Verdict {
        holds: sinks.is_empty() && l,
        reason: if let Some(&w) = sinks.first() {
            format!("vertex {} is a sink", g.vertex_name(w))
        } else {
            format!("no sinks; {l_reason}")
        },
    };
    Ok(Verdicts {
        simple,
        purely_infinite,
        minimal,
        topologically_free: l,
        free: k,
    })
}
