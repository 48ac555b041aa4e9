#![allow(clippy::excessive_precision)]

use hypineq::hyp::{ch_q, d_limit_x4, d_pq, h_pq, m_bound, sh_p, sinhc, u_p};
use hypineq::scalar::rel_diff;
use proptest::prelude::*;

// 50-digit reference values at the f64 inputs, with relative tolerances.
const ORACLE: &[(&str, f64, f64)] = &[
    ("sinhc(1e-3)", 1.000000166666675, 1e-13),
    ("u(1.5, -3.7)", 0.20997814158388492752, 1e-13),
    ("h(0.05; 2, 0.5)", 0.33347917421949452068, 1e-13),
    ("h(5; -1, 2)", 3.3875689975446113615e-4, 1e-13),
    ("d(1; 3, 1)", 0.026662400601460201201, 1e-13),
    ("d(1; 1, 1)", -0.0058256846279464692769, 1e-13),
    ("d(1e-3; 1, 1)", -5.5555558201058256173e-15, 1e-13),
    ("d(0.1; 2, 0.5)", 2.9160613598738211546e-6, 1e-13),
    // On the boundary the x^4 coefficient cancels to rounding, leaving eps * x^4.
    ("d(0.01; 1.4, 1)", 1.0582072309299251182e-16, 1e-9),
    ("m(2; 0.5, -1)", 1.1736111111111111111, 1e-13),
];

fn computed(name: &str) -> f64 {
    match name {
        "sinhc(1e-3)" => sinhc(1e-3).unwrap().value,
        "u(1.5, -3.7)" => u_p(1.5, -3.7).unwrap().value,
        "h(0.05; 2, 0.5)" => h_pq(0.05, 2.0, 0.5).unwrap().value,
        "h(5; -1, 2)" => h_pq(5.0, -1.0, 2.0).unwrap().value,
        "d(1; 3, 1)" => d_pq(1.0, 3.0, 1.0).unwrap().value,
        "d(1; 1, 1)" => d_pq(1.0, 1.0, 1.0).unwrap().value,
        "d(1e-3; 1, 1)" => d_pq(1e-3, 1.0, 1.0).unwrap().value,
        "d(0.1; 2, 0.5)" => d_pq(0.1, 2.0, 0.5).unwrap().value,
        "d(0.01; 1.4, 1)" => d_pq(0.01, 1.4, 1.0).unwrap().value,
        "m(2; 0.5, -1)" => m_bound(2.0, 0.5, -1.0).unwrap().value,
        other => panic!("no evaluator for {other}"),
    }
}

#[test]
fn matches_high_precision_values() {
    for &(name, want, tol) in ORACLE {
        let got = computed(name);
        assert!(rel_diff(got, want) < tol, "{name}: {got} vs {want}");
    }
}

#[test]
fn d_keeps_relative_accuracy_near_zero() {
    // D ~ x^4 (p - 3q + 8/5) / 72 while Sh and Ch/3 are O(x^2).
    for x in [1e-4f64, 1e-3, 1e-2] {
        let d = d_pq(x, 2.0, 0.5).unwrap().value;
        let lead = d_limit_x4(2.0, 0.5) * x.powi(4);
        assert!(rel_diff(d, lead) < 0.05, "{x}: {d} vs {lead}");
    }
}

proptest! {
    #[test]
    fn u_p_increasing_in_p(t in 1.001f64..50.0, p in -4.0f64..4.0, dp in 0.01f64..1.0) {
        prop_assert!(u_p(t, p + dp).unwrap().value > u_p(t, p).unwrap().value);
    }

    #[test]
    fn d_is_sh_minus_ch_over_three(x in 0.2f64..30.0, p in -3.0f64..3.0, q in -3.0f64..3.0) {
        let d = d_pq(x, p, q).unwrap().value;
        let s = sh_p(x, p).unwrap().value;
        let c = ch_q(x, q).unwrap().value / 3.0;
        prop_assert!((d - (s - c)).abs() <= 1e-12 * s.abs().max(c.abs()).max(1.0));
    }

    #[test]
    fn h_tends_to_one_third(p in -3.0f64..3.0, q in -3.0f64..3.0) {
        let h = h_pq(1e-4, p, q).unwrap().value;
        prop_assert!((h - 1.0 / 3.0).abs() < 1e-6);
    }

    #[test]
    fn small_x_sign_follows_leading_coefficient(p in -3.0f64..3.0, q in -3.0f64..3.0) {
        let c = p - 3.0 * q + 1.6;
        prop_assume!(c.abs() > 0.01);
        let d = d_pq(1e-3, p, q).unwrap().value;
        prop_assert_eq!(d > 0.0, c > 0.0);
    }

    #[test]
    fn continuous_across_series_window(p in -3.0f64..3.0, q in -3.0f64..3.0) {
        let (lo, hi) = (0.125 * (1.0 - 1e-12), 0.125 * (1.0 + 1e-12));
        let (a, b) = (d_pq(lo, p, q).unwrap().value, d_pq(hi, p, q).unwrap().value);
        let scale = sh_p(hi, p).unwrap().value.abs() + ch_q(hi, q).unwrap().value.abs();
        prop_assert!((a - b).abs() < 1e-13 * scale, "{} {}", a, b);
    }

    #[test]
    fn f32_tracks_f64(x in 0.01f64..10.0, p in -2.0f64..2.0, q in -2.0f64..2.0) {
        let h64 = h_pq(x, p, q).unwrap().value;
        let h32 = h_pq(x as f32, p as f32, q as f32).unwrap().value as f64;
        prop_assert!(rel_diff(h32, h64) < 1e-4);
    }
}
