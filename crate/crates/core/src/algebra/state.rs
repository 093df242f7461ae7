use super::element::CoreElement;
use crate::arith::RadicalScalar;
use crate::dynamics::PathPoint;
use crate::graph::Graph;

/// The state `ω_μ`: `ω_μ(s_ν s_η*) = 1` if `ν = η` is an initial segment of
/// `μ`, and `0` otherwise.
pub fn state_eval(g: &Graph, p: &PathPoint, a: &CoreElement) -> RadicalScalar {
    let mut acc = RadicalScalar::zero();
    for ((nu, eta), c) in a.terms() {
        if nu == eta && p.prefix(g, nu.len()).as_ref() == Some(nu) {
            acc.add_assign_ref(c);
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{matrix_unit, Core};
    use crate::graph::samples::*;
    use crate::graph::Path;

    #[test]
    fn product_state_values() {
        let g = rose(2);
        let core = Core::new(&g);
        let p = PathPoint::parse(&g, "e1.(e2)*").unwrap();
        let e1 = Path::edge(&g, 0);
        let e2 = Path::edge(&g, 1);
        assert!(state_eval(&g, &p, &matrix_unit(&g, &e1, &e1, 1).unwrap()).is_one());
        assert!(state_eval(&g, &p, &matrix_unit(&g, &e2, &e2, 1).unwrap()).is_zero());
        assert!(state_eval(&g, &p, &matrix_unit(&g, &e1, &e2, 1).unwrap()).is_zero());
        for n in 0..4 {
            assert!(state_eval(&g, &p, &core.unit(n)).is_one());
        }
    }

    #[test]
    fn sink_point_normalised() {
        let g = single_edge();
        let core = Core::new(&g);
        let p = PathPoint::parse(&g, "e1!").unwrap();
        for n in 0..4 {
            assert!(state_eval(&g, &p, &core.unit(n)).is_one());
        }
    }
}
