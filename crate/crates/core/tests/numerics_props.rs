mod common;

use maass_core::numerics::{
    bessel_i, bessel_j, cos, exp, incomplete_gamma_int, parse_ball, pi, recognize_rational, BallReal,
};
use num_rational::BigRational;
use proptest::prelude::*;

fn ball(x: f64, prec: u32) -> BallReal {
    BallReal::from_f64(x, prec)
}

/// Value at `2·prec` lies in the ball computed at `prec`.
fn refines(lo: &BallReal, hi: &BallReal) -> bool {
    lo.contains_ball(hi) || (lo.overlaps(hi) && hi.rad_f64() > lo.rad_f64())
}

fn near(b: &BallReal, oracle: f64, slack: f64) -> bool {
    (b.mid_f64() - oracle).abs() <= b.rad_f64() + slack
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bessel_i_matches_oracle(nu in 1u32..12, x in 0.0f64..40.0, prec in 64u32..200) {
        let lo = bessel_i(nu, &ball(x, prec)).unwrap();
        let hi = bessel_i(nu, &ball(x, 2 * prec)).unwrap();
        prop_assert!(refines(&lo, &hi), "{lo} vs {hi}");
        let o = common::bessel_i(nu, x);
        prop_assert!(near(&lo, o, 1e-13 * o.abs()));
    }

    #[test]
    fn bessel_j_matches_oracle(nu in 1u32..12, x in 0.0f64..25.0, prec in 64u32..200) {
        let lo = bessel_j(nu, &ball(x, prec)).unwrap();
        let hi = bessel_j(nu, &ball(x, 2 * prec)).unwrap();
        prop_assert!(refines(&lo, &hi), "{lo} vs {hi}");
        prop_assert!(near(&lo, common::bessel_j(nu, x), common::bessel_j_slack(nu, x)));
    }

    #[test]
    fn j_is_dominated_by_i(nu in 1u32..12, x in 0.0f64..30.0) {
        let j = bessel_j(nu, &ball(x, 128)).unwrap();
        let i = bessel_i(nu, &ball(x, 128)).unwrap();
        prop_assert!(j.abs_lower() <= i.abs_upper());
    }

    #[test]
    fn i_below_majorant(nu in 1u32..12, x in 0.0f64..30.0) {
        // I_ν(x) <= (x/2)^ν e^{x²/4} / ν!
        let i = bessel_i(nu, &ball(x, 128)).unwrap();
        let bound = (x / 2.0).powi(nu as i32) * (x * x / 4.0).exp() / common::factorial(nu);
        prop_assert!(i.lower_f64() <= bound * (1.0 + 1e-12));
    }

    #[test]
    fn incomplete_gamma_matches_oracle(a in 1i64..12, x in 0.0f64..60.0, prec in 64u32..200) {
        let lo = incomplete_gamma_int(a, &ball(x, prec)).unwrap();
        let hi = incomplete_gamma_int(a, &ball(x, 2 * prec)).unwrap();
        prop_assert!(refines(&lo, &hi));
        let o = common::incomplete_gamma(a as u32, x);
        prop_assert!(near(&lo, o, 1e-13 * o));
    }

    #[test]
    fn wide_inputs_give_wide_outputs(nu in 1u32..8, x in 0.5f64..10.0, r in 1e-12f64..1e-3) {
        let b = BallReal::with_radius(x, r, 128);
        let y = bessel_i(nu, &b).unwrap();
        // the ball must cover the image of both endpoints
        prop_assert!(near(&y, common::bessel_i(nu, x - r), 1e-13 * y.mid_f64().abs()));
        prop_assert!(near(&y, common::bessel_i(nu, x + r), 1e-13 * y.mid_f64().abs()));
    }

    #[test]
    fn elementary_functions(x in -20.0f64..20.0) {
        let e = exp(&ball(x, 128));
        prop_assert!(near(&e, x.exp(), 4.0 * f64::EPSILON * x.exp()));
        let c = cos(&ball(x, 128));
        prop_assert!(near(&c, x.cos(), 4.0 * f64::EPSILON));
    }

    #[test]
    fn recognition_round_trip(p in -10_000i64..10_000, d in 1u64..5000, bits in 64u32..256) {
        let q = BigRational::new(p.into(), (d as i64).into());
        let x = BallReal::from_rational(&q, bits);
        prop_assert_eq!(recognize_rational(&x, d), Some(q));
    }

    #[test]
    fn ball_text_round_trip(x in -1e6f64..1e6, r in 0.0f64..1.0) {
        let b = BallReal::with_radius(x, r, 128);
        let back = parse_ball(&b.to_string(), 128).unwrap();
        prop_assert!(back.contains_ball(&b));
    }
}

#[test]
fn pi_digits() {
    let p = pi(256);
    assert!(p.contains_f64(std::f64::consts::PI) || near(&p, std::f64::consts::PI, 1e-16));
    assert!(p.rad_f64() < 1e-70);
}

#[test]
fn recognition_refuses_wide_balls() {
    let x = BallReal::with_radius(0.25, 0.01, 128);
    assert_eq!(recognize_rational(&x, 100), None);
    let x = BallReal::with_radius(0.25, 1e-9, 128);
    assert_eq!(recognize_rational(&x, 4), Some(BigRational::new(1.into(), 4.into())));
}
