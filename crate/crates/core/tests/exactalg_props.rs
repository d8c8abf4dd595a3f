use deligne_core::exactalg::{
    falling_factorial, lagrange_interpolate, q, qi, rank_drop_locus, MultiPoly, PolyMatrix, RatFn,
    RatMatrix, Monomial, Q, T,
};
use proptest::prelude::*;

fn poly_in(vars: usize, max_deg: u32) -> impl Strategy<Value = MultiPoly> {
    prop::collection::vec(
        (prop::collection::vec(0..=max_deg, vars), -5i64..=5, 1i64..=3),
        0..5,
    )
    .prop_map(|terms| {
        let mut p = MultiPoly::zero();
        for (exps, n, d) in terms {
            let exps: Vec<u32> = exps.into_iter().map(|e| e / 2).collect();
            p += &MultiPoly::monomial(Monomial::from_exps(exps), q(n, d));
        }
        p
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fraction_normalization_cancels_common_factor(
        p in poly_in(2, 6), qq in poly_in(2, 6), r in poly_in(2, 4)
    ) {
        prop_assume!(!qq.is_zero() && !r.is_zero());
        let a = RatFn::new(&p * &r, &qq * &r).unwrap();
        let b = RatFn::new(p, qq).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ring_axioms_hold(a in poly_in(3, 4), b in poly_in(3, 4), c in poly_in(3, 4)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
        }
    }

    #[test]
    fn display_parse_round_trip(a in poly_in(3, 6)) {
        let s = a.to_string();
        prop_assert_eq!(deligne_core::exactalg::parse_poly(&s).unwrap(), a);
    }

    #[test]
    fn interpolation_reproduces_samples(ys in prop::collection::vec(-20i64..20, 1..7), start in -5i64..5) {
        let samples: Vec<(i64, Q)> = ys.iter().enumerate().map(|(i, y)| (start + i as i64, qi(*y))).collect();
        let p = lagrange_interpolate(&samples, samples.len() - 1).unwrap();
        for (x, y) in &samples {
            prop_assert_eq!(p.eval_var(T, &qi(*x)).constant_value().unwrap(), y.clone());
        }
    }

    #[test]
    fn rank_matches_random_specialization(
        entries in prop::collection::vec(poly_in(1, 3), 16),
        pick in 0usize..4,
        seed in 17i64..97
    ) {
        // Force some rank deficiency in a quarter of the cases.
        let mut rows: Vec<Vec<MultiPoly>> = entries.chunks(4).map(<[MultiPoly]>::to_vec).collect();
        if pick == 0 {
            rows[3] = rows[0].iter().zip(&rows[1]).map(|(a, b)| a + b).collect();
        }
        let m = PolyMatrix::from_rows(rows);
        let generic = m.rank();
        let value = q(seed, 7);
        if generic > 0 {
            let locus = rank_drop_locus(&m, generic).unwrap();
            prop_assume!(!locus.eval_var(T, &value).is_zero());
        }
        prop_assert_eq!(m.eval_var(T, &value).rank(), generic);
        let rm: RatMatrix = m.to_ratmatrix();
        prop_assert_eq!(rm.rank(), generic);
    }
}

#[test]
fn falling_factorial_counts_injections() {
    for n in 0..=10i64 {
        for k in 0..=n as usize {
            let v = falling_factorial(&MultiPoly::var(T), k).eval_var(T, &qi(n)).constant_value().unwrap();
            let expect: i64 = ((n - k as i64 + 1)..=n).product();
            assert_eq!(v, qi(expect));
        }
    }
}
