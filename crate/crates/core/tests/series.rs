use hypineq::hyp::d_pq;
use hypineq::region::approx;
use hypineq::series::{
    d_x4_closed_form, d_x6_closed_form, d_x6_on_boundary, taylor_d, taylor_d_to,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

fn rational() -> impl Strategy<Value = BigRational> {
    (-60i64..60, 1i64..20).prop_map(|(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
}

fn r(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

proptest! {
    #[test]
    fn low_order_coefficients_match_closed_forms(p in rational(), q in rational()) {
        let t = taylor_d(&p, &q);
        prop_assert!(t.coeff(0) == r(0, 1) && t.coeff(2) == r(0, 1));
        prop_assert_eq!(t.coeff(4), d_x4_closed_form(&p, &q));
        prop_assert_eq!(t.coeff(6), d_x6_closed_form(&p, &q));
        prop_assert!(t.coeff(1) == r(0, 1) && t.coeff(3) == r(0, 1) && t.coeff(5) == r(0, 1));
    }

    #[test]
    fn boundary_line_kills_the_quartic_term(q in rational()) {
        let p = &q * r(3, 1) - r(8, 5);
        let t = taylor_d(&p, &q);
        prop_assert_eq!(t.coeff(4), r(0, 1));
        prop_assert_eq!(t.coeff(6), d_x6_on_boundary(&q));
    }

    #[test]
    fn float_evaluator_agrees_with_exact_series(p in rational(), q in rational(), k in 1u32..6) {
        // At x <= 0.05 the terms through x^16 leave a remainder below 1e-19 of D's scale.
        let x = 0.01 * k as f64;
        let t = taylor_d_to(&p, &q, 16);
        let exact: f64 = (0..=16).step_by(2).map(|j| approx(&t.coeff(j)) * x.powi(j as i32)).sum();
        let (pf, qf) = (approx(&p), approx(&q));
        let got = d_pq(x, pf, qf).unwrap().value;
        // Scale: the magnitude of Sh and Ch/3 being subtracted.
        let scale = x * x * (1.0 + pf.abs() + qf.abs()).powi(4);
        prop_assert!((got - exact).abs() <= 1e-14 * scale, "{} vs {}", got, exact);
    }
}
