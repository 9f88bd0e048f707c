use proptest::prelude::*;

use hallvertex::algebra::{symmetrize, MPoly, Rat, VarId};
use hallvertex::coha::{assoc_check, shuffle_product};
use hallvertex::quiver::{hilbert_series, theta_factors, CohClass, DimVector, Quiver};
use hallvertex::verify::monomial_basis;

fn quiver() -> impl Strategy<Value = Quiver> {
    (1usize..=3)
        .prop_flat_map(|n| prop::collection::vec(prop::collection::vec(0u32..=2, n), n))
        .prop_map(|arrows| {
            let nodes = (0..arrows.len()).map(|i| format!("n{i}")).collect();
            Quiver::new(nodes, arrows).expect("square arrow matrix")
        })
}

fn dims(q: &Quiver, max: u32) -> impl Strategy<Value = DimVector> {
    prop::collection::vec(0u32..=max, q.num_nodes()).prop_map(DimVector)
}

fn quiver_with_pair() -> impl Strategy<Value = (Quiver, DimVector, DimVector)> {
    quiver().prop_flat_map(|q| {
        let (a, b) = (dims(&q, 3), dims(&q, 3));
        (Just(q), a, b)
    })
}

/// A polynomial in the factor-1 roots of `γ` with small exponents.
fn root_poly(g: &DimVector, exps: &[u32], coeffs: &[i64]) -> MPoly {
    let roots: Vec<VarId> = g.root_blocks(1).into_iter().flatten().collect();
    let mut p = MPoly::zero();
    for (i, c) in coeffs.iter().enumerate() {
        let mut m = MPoly::int(*c);
        for (j, v) in roots.iter().enumerate() {
            m = m.mul(&MPoly::var(*v).pow(exps[(i + 3 * j) % exps.len()]));
        }
        p.add_assign(&m);
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn theta_rank_is_euler_form((q, g, h) in quiver_with_pair(), w in prop_oneof![Just(-1i64), Just(1)]) {
        prop_assert_eq!(theta_factors(&q, &g, &h, w).rank(), q.euler_form(&g, &h));
    }

    #[test]
    fn euler_form_is_bilinear((q, g, h) in quiver_with_pair()) {
        let zero = DimVector::zero(q.num_nodes());
        prop_assert_eq!(q.euler_form(&g, &zero), 0);
        prop_assert_eq!(q.euler_form(&g.add(&h), &h), q.euler_form(&g, &h) + q.euler_form(&h, &h));
    }

    #[test]
    fn symmetrized_classes_are_accepted(
        (q, g, _) in quiver_with_pair(),
        exps in prop::collection::vec(0u32..3, 1..6),
        coeffs in prop::collection::vec(-3i64..=3, 1..4),
    ) {
        prop_assume!(g.total() <= 4);
        let p = root_poly(&g, &exps, &coeffs);
        let s = symmetrize(&p, &g.root_blocks(1));
        prop_assert!(CohClass::new(&q, g.clone(), s).is_ok());
        let invariant = CohClass::new(&q, g.clone(), p.clone()).is_ok();
        let blocks = g.root_blocks(1);
        let sym_again = symmetrize(&p, &blocks);
        let order: i64 = blocks.iter().map(|b| (1..=b.len() as i64).product::<i64>()).product();
        prop_assert_eq!(invariant, sym_again == p.scale(&Rat::from_int(order)));
    }

    #[test]
    fn asymmetric_monomials_are_rejected(q in quiver(), node in 0usize..3) {
        let node = node % q.num_nodes();
        let mut v = vec![0; q.num_nodes()];
        v[node] = 2;
        let g = DimVector(v);
        let x1 = MPoly::var(VarId::Root { factor: 1, node: node as u16, slot: 0 });
        prop_assert!(CohClass::new(&q, g, x1).is_err());
    }
}

#[test]
fn hilbert_series_counts_invariants() {
    let q = Quiver::kronecker();
    for a in 0..=3 {
        for b in 0..=3 {
            let g = DimVector(vec![a, b]);
            let h = hilbert_series(&g, 21);
            let basis = monomial_basis(&g, 10);
            for d in 0..=10u32 {
                let count = basis
                    .iter()
                    .filter(|p| p.degree().unwrap_or(0) == d)
                    .count() as u64;
                assert_eq!(h[2 * d as usize], count, "{g} degree {d}");
                assert_eq!(h[2 * d as usize + 1], 0);
            }
            if a + b <= 2 {
                for p in &basis {
                    assert!(CohClass::new(&q, g.clone(), p.clone()).is_ok());
                }
            }
        }
    }
}

#[test]
fn coha_unit_and_associativity_on_samples() {
    for q in [Quiver::a1(), Quiver::jordan(), Quiver::kronecker()] {
        let unit = CohClass::unit(&q);
        let samples = hallvertex::verify::sample_classes(&q, 2, 2);
        for a in &samples {
            assert_eq!(&shuffle_product(&q, &unit, a).unwrap(), a);
            assert_eq!(&shuffle_product(&q, a, &unit).unwrap(), a);
        }
        for a in samples.iter().step_by(3) {
            for b in samples.iter().step_by(2) {
                for c in samples.iter().step_by(5) {
                    assert!(assoc_check(&q, a, b, c).unwrap().holds);
                }
            }
        }
    }
}
