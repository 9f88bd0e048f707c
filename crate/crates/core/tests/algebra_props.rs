use proptest::prelude::*;

use hallvertex::algebra::{
    parse_poly, render_poly, series_expand, MPoly, Rat, RatFn, VarId, VarNames, ZSeries,
};

fn root(slot: u16) -> VarId {
    VarId::Root {
        factor: 1,
        node: 0,
        slot,
    }
}

fn rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| Rat::new(n, d))
}

fn poly() -> impl Strategy<Value = MPoly> {
    prop::collection::vec(((0u32..3, 0u32..3, 0u32..2), rat()), 0..5).prop_map(|terms| {
        let mut p = MPoly::zero();
        for ((a, b, c), k) in terms {
            let m = MPoly::var(root(0))
                .pow(a)
                .mul(&MPoly::var(root(1)).pow(b))
                .mul(&MPoly::z().pow(c));
            p.add_assign(&m.scale(&k));
        }
        p
    })
}

/// Nonzero linear forms `a x1 + b x2 + w z` with `w != 0`.
fn linear() -> impl Strategy<Value = MPoly> {
    (-3i64..=3, -3i64..=3, prop_oneof![-2i64..=-1, 1i64..=2]).prop_map(|(a, b, w)| {
        &(&MPoly::var(root(0)).scale(&Rat::from_int(a))
            + &MPoly::var(root(1)).scale(&Rat::from_int(b)))
            + &MPoly::z().scale(&Rat::from_int(w))
    })
}

fn ratfn() -> impl Strategy<Value = RatFn> {
    (
        prop::collection::vec(linear(), 0..3),
        prop::collection::vec(linear(), 0..3),
    )
        .prop_map(|(num, den)| {
            RatFn::new(MPoly::product(&num), MPoly::product(&den)).expect("nonzero denominator")
        })
}

proptest! {
    #[test]
    fn rational_field_axioms(a in rat(), b in rat(), c in rat()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
        if !b.is_zero() {
            prop_assert_eq!(&(&a / &b) * &b, a);
        }
    }

    #[test]
    fn polynomial_ring_axioms(p in poly(), q in poly(), r in poly()) {
        prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
        prop_assert_eq!(&p + &q, &q + &p);
        prop_assert_eq!(p.mul(&q).mul(&r), p.mul(&q.mul(&r)));
        prop_assert_eq!(p.mul(&q), q.mul(&p));
        prop_assert_eq!(p.mul(&(&q + &r)), &p.mul(&q) + &p.mul(&r));
        prop_assert_eq!(p.mul(&MPoly::one()), p.clone());
        prop_assert!((&p - &p).is_zero());
    }

    #[test]
    fn exact_division_inverts_multiplication(p in poly(), q in poly()) {
        prop_assume!(!q.is_zero());
        prop_assert_eq!(p.mul(&q).div_exact(&q), Some(p));
    }

    #[test]
    fn render_parse_round_trip(p in poly()) {
        let names = VarNames::default();
        prop_assert_eq!(parse_poly(&render_poly(&p, &names), &names).unwrap(), p);
    }

    #[test]
    fn series_expansion_is_multiplicative(f in ratfn(), g in ratfn()) {
        let lead = |h: &RatFn| h.num().degree_in(VarId::Z) as i64 - h.den().degree_in(VarId::Z) as i64;
        let (lf, lg) = (lead(&f), lead(&g));
        let depth = 4;
        let sf = series_expand(&f, (lf - depth, lf)).unwrap();
        let sg = series_expand(&g, (lg - depth, lg)).unwrap();
        let sfg = series_expand(&f.mul(&g), (lf + lg - depth, lf + lg)).unwrap();
        let prod: ZSeries = sf.mul(&sg);
        for k in (lf + lg - depth)..=(lf + lg) {
            prop_assert_eq!(prod.coeff_at(k).unwrap(), sfg.coeff_at(k).unwrap());
        }
    }

    #[test]
    fn rational_functions_form_a_field(f in ratfn(), g in ratfn()) {
        prop_assert_eq!(f.mul(&g), g.mul(&f));
        prop_assert!(f.sub(&f).is_zero());
        let back = f.mul(&g).div(&g).unwrap();
        prop_assert_eq!(back.reduced(), f.reduced());
    }
}
