mod common;

use common::arb_graph;
use grint::algebra::{verify_interaction_axioms, Core, CoreElement};
use grint::arith::RadicalScalar;
use grint::Graph;
use proptest::prelude::*;
use proptest::sample::Index;

const MAX_BASIS: usize = 300;
/// The axiom check is quadratic in the basis size.
const MAX_AXIOM_BASIS: usize = 80;

/// Integer combination of up to three matrix units of `F_level`.
fn element(core: &Core<'_>, level: usize, picks: &[(Index, i64)]) -> CoreElement {
    let basis = core.basis_elements(level).unwrap();
    let mut out = CoreElement::zero(level);
    if basis.is_empty() {
        return out;
    }
    for (ix, c) in picks {
        out = out.add(&basis[ix.index(basis.len())].scale(&RadicalScalar::integer(*c)));
    }
    out
}

fn small(g: &Graph, level: usize) -> bool {
    Core::new(g).basis_size(level) <= MAX_BASIS
}

fn picks() -> impl Strategy<Value = Vec<(Index, i64)>> {
    prop::collection::vec((any::<Index>(), -3i64..=3), 1..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn multiplication_is_associative_and_distributive(
        g in arb_graph(3, 5), level in 0usize..=2, a in picks(), b in picks(), c in picks()
    ) {
        prop_assume!(small(&g, level));
        let core = Core::new(&g);
        let (a, b, c) = (element(&core, level, &a), element(&core, level, &b), element(&core, level, &c));
        let ab_c = core.mul(&core.mul(&a, &b), &c);
        let a_bc = core.mul(&a, &core.mul(&b, &c));
        prop_assert!(core.equal(&ab_c, &a_bc));
        let left = core.mul(&a, &core.add(&b, &c));
        let right = core.add(&core.mul(&a, &b), &core.mul(&a, &c));
        prop_assert!(core.equal(&left, &right));
    }

    #[test]
    fn adjoint_reverses_products(g in arb_graph(3, 5), level in 0usize..=2, a in picks(), b in picks()) {
        prop_assume!(small(&g, level));
        let core = Core::new(&g);
        let (a, b) = (element(&core, level, &a), element(&core, level, &b));
        let lhs = core.mul(&a, &b).adjoint();
        let rhs = core.mul(&b.adjoint(), &a.adjoint());
        prop_assert!(core.equal(&lhs, &rhs));
        prop_assert!(core.equal(&a.adjoint().adjoint(), &a));
    }

    #[test]
    fn inclusion_is_a_homomorphism(g in arb_graph(3, 5), level in 0usize..=1, a in picks(), b in picks()) {
        prop_assume!(small(&g, level + 1));
        let core = Core::new(&g);
        let (a, b) = (element(&core, level, &a), element(&core, level, &b));
        let up = |x: &CoreElement| core.include_to_level(x, level + 1);
        prop_assert!(core.equal(&up(&core.mul(&a, &b)), &core.mul(&up(&a), &up(&b))));
        prop_assert!(core.equal(&up(&a), &a));
    }

    #[test]
    fn interaction_axioms_on_random_graphs(g in arb_graph(3, 5)) {
        let core = Core::new(&g);
        for level in 1..=2 {
            if core.basis_size(level) > MAX_AXIOM_BASIS {
                break;
            }
            let r = verify_interaction_axioms(&core, level).unwrap();
            prop_assert!(r.passed(), "{}level {}: {:?}", g, level, r.violations);
        }
    }

    #[test]
    fn v_and_h_commute_with_adjoints(g in arb_graph(3, 5), level in 0usize..=2, a in picks()) {
        prop_assume!(small(&g, level + 1));
        let core = Core::new(&g);
        let a = element(&core, level, &a);
        prop_assert!(core.equal(&core.map_V(&a.adjoint()), &core.map_V(&a).adjoint()));
        prop_assert!(core.equal(&core.map_H(&a.adjoint()), &core.map_H(&a).adjoint()));
    }
}
