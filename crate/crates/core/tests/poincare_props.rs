use maass_core::numerics::{pi, BallReal, Mag};
use maass_core::poincare::{
    assemble_q, cusp_poincare_coeff, cusp_poincare_full_coeff, eval_expansion, maass_poincare_holo_coeff,
    maass_poincare_nonholo_coeff, resolve_c_max, tail_bound, weakly_holo_poincare_coeff, xi_operator, Coefficient, HarmonicExpansion,
    PoincareError, PoincareParams, TruncationPolicy,
};
use maass_core::qseries::{g_series, m_series, Rational};
use proptest::prelude::*;

type CoeffFn = fn(&PoincareParams, i64, &TruncationPolicy) -> Result<Coefficient, PoincareError>;

fn kinds() -> Vec<(&'static str, CoeffFn)> {
    vec![
        ("cusp", |p, n, t| cusp_poincare_coeff(p, n as u64, t)),
        ("weak", |p, n, t| weakly_holo_poincare_coeff(p, n as u64, t)),
        ("holo", |p, n, t| maass_poincare_holo_coeff(p, n as u64, t)),
        ("nonholo", |p, n, t| maass_poincare_nonholo_coeff(p, -n, t)),
    ]
}

fn params() -> impl Strategy<Value = PoincareParams> {
    (1u64..4, prop::sample::select(vec![4u32, 6, 8, 12]), prop::sample::select(vec![1u64, 2, 3, 4, 9]))
        .prop_map(|(m, k, n)| PoincareParams::new(m, k, n).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// The certified tail is honest: extending the sum stays inside the ball.
    #[test]
    fn longer_sums_stay_in_the_ball(p in params(), n in 1i64..10, terms in 5u64..40, kind in 0usize..4) {
        let (name, f) = kinds()[kind];
        let short = f(&p, n, &TruncationPolicy::fixed(terms * p.level, 96)).unwrap();
        let long = f(&p, n, &TruncationPolicy::fixed(4 * terms * p.level, 96)).unwrap();
        prop_assert!(short.value.overlaps(&long.value), "{name}: {} vs {}", short.value, long.value);
        prop_assert!(long.tail <= short.tail);
    }

    #[test]
    fn bol_identity(p in params(), n in 1u64..8) {
        let t = TruncationPolicy::fixed(60 * p.level, 128);
        let b = maass_poincare_holo_coeff(&p, n, &t).unwrap().value;
        let a = weakly_holo_poincare_coeff(&p, n, &t).unwrap().value;
        let k = p.k as i64;
        let lhs = b.mul(&BallReal::from_i64(n as i64, 128).pow_int(k - 1).unwrap());
        let rhs = a.mul(&BallReal::from_i64(p.m as i64, 128).pow_int(k - 1).unwrap()).neg();
        prop_assert!(lhs.overlaps(&rhs));
    }

    /// Automatic truncation picks the first multiple of `N` whose tail meets the target.
    #[test]
    fn auto_truncation_is_minimal(p in params(), n in 1i64..6, e in 3i32..12) {
        let target = 10f64.powi(-e);
        let tail = |c: u64| tail_bound(&p, n, c).unwrap().mid_f64();
        match resolve_c_max(&p, n, Mag::from_f64(1.0), &TruncationPolicy::auto(target, 96)) {
            Ok((c, certified)) => {
                prop_assert!(certified);
                prop_assert_eq!(c % p.level, 0);
                prop_assert!(tail(c) < target);
                if c >= p.level {
                    prop_assert!(tail(c - p.level) >= target);
                }
            }
            Err(PoincareError::CapExceeded { .. }) => {}
            Err(e) => prop_assert!(false, "{e}"),
        }
    }
}

#[test]
fn thread_count_does_not_change_results() {
    let p = PoincareParams::new(1, 4, 9).unwrap();
    let t = TruncationPolicy::fixed(900, 128);
    let run = |threads| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| (1..=6).map(|n| weakly_holo_poincare_coeff(&p, n, &t).unwrap().value).collect::<Vec<_>>())
    };
    assert_eq!(run(1), run(4));
}

#[test]
fn weight_two_is_flagged() {
    let p = PoincareParams::new(1, 2, 1).unwrap();
    let c = weakly_holo_poincare_coeff(&p, 1, &TruncationPolicy::fixed(50, 96)).unwrap();
    assert!(!c.certified);
    assert!(matches!(
        weakly_holo_poincare_coeff(&p, 1, &TruncationPolicy::auto(1e-3, 96)),
        Err(PoincareError::Uncertified(2))
    ));
}

#[test]
fn level_nine_vanishing_patterns() {
    let p = PoincareParams::new(1, 4, 9).unwrap();
    let t = TruncationPolicy::fixed(1350, 128);
    assert!(cusp_poincare_coeff(&p, 2, &t).unwrap().value.contains_f64(0.0));
    for n in [1u64, 4, 7, 10] {
        assert!(weakly_holo_poincare_coeff(&p, n, &t).unwrap().value.contains_f64(0.0));
    }
    for n in [2i64, 5, 8] {
        assert!(maass_poincare_nonholo_coeff(&p, -n, &t).unwrap().value.contains_f64(0.0));
    }
    assert!(maass_poincare_holo_coeff(&p, 0, &t).unwrap().value.is_zero_exact());
}

#[test]
fn empty_sums_are_pure_tail() {
    let p = PoincareParams::new(1, 4, 9).unwrap();
    let c = cusp_poincare_coeff(&p, 1, &TruncationPolicy::fixed(5, 96)).unwrap();
    assert!(c.value.midpoint().is_zero());
    assert!(c.value.rad_f64() >= 0.99 * c.tail.to_f64());
}

#[test]
fn xi_constant_at_one() {
    let p = PoincareParams::new(1, 4, 9).unwrap();
    let t = TruncationPolicy::fixed(1350, 128);
    let q = assemble_q(&p, 7, &t).unwrap();
    assert_eq!(q.weight, -2);
    assert_eq!(q.principal.get(&-1), Some(&Rational::from_integer(1.into())));
    let xi = xi_operator(&q, 4).unwrap();
    let a1 = cusp_poincare_full_coeff(&p, 1, &t).unwrap().value;
    let expected = pi(128).mul_2exp(2).pow_int(3).unwrap().mul(&a1).mul_2exp(-1);
    assert!(xi[&1].overlaps(&expected));
    // ratios follow g = q - 8q^4 + 20q^7
    let r4 = xi[&4].div(&xi[&1]).unwrap();
    let r7 = xi[&7].div(&xi[&1]).unwrap();
    assert!((r4.mid_f64() + 8.0).abs() < 1e-3 && (r7.mid_f64() - 20.0).abs() < 1e-3);
}

/// `Q(-1,4,9)` satisfies `f(γz) = (9z+1)^{-2} f(z)` for `γ = [[1,0],[9,1]]`.
/// At `z = -1/9 + i/9`, `9z+1 = i` and `γz = z + 2/9`, so `f(z + 2/9) = -f(z)`.
///
/// The holomorphic part is taken exactly as `-m(n)/n³`; the non-holomorphic
/// part as `-a(1,4,9;n)/(2n³)` with `a(1,4,9;n) = a(1,4,9;1) g(n)`.
#[test]
fn modularity_at_level_nine() {
    let prec = 320;
    let p = PoincareParams::new(1, 4, 9).unwrap();
    let a1 = cusp_poincare_full_coeff(&p, 1, &TruncationPolicy::fixed(1350, prec)).unwrap().value;
    let holo_terms = 700;
    let m = m_series(holo_terms + 2);
    let g = g_series(80);
    let mut f = HarmonicExpansion::new(-2);
    f.principal.insert(-1, Rational::from_integer(1.into()));
    for n in 0..=holo_terms as i64 {
        let c = if n == 0 { Rational::from_integer(0.into()) } else { -m.coefficient(n).unwrap() / Rational::from_integer((n * n * n).into()) };
        f.holo.insert(n, BallReal::from_rational(&c, prec));
    }
    for n in 1..80i64 {
        let gn = BallReal::from_rational(&g.coefficient(n).unwrap(), prec);
        f.nonholo.insert(-n, a1.mul(&gn).div_u64(2 * (n * n * n) as u64).neg());
    }
    let y = BallReal::one(prec).div_u64(9);
    let x = y.neg();
    let (re0, im0) = eval_expansion(&f, 4, &x, &y).unwrap();
    let x2 = x.add(&BallReal::from_i64(2, prec).div_u64(9));
    let (re1, im1) = eval_expansion(&f, 4, &x2, &y).unwrap();
    let sum_re = re0.add(&re1);
    let sum_im = im0.add(&im1);
    assert!(sum_re.contains_f64(0.0) && sum_im.contains_f64(0.0), "{sum_re} {sum_im}");
    assert!(sum_re.abs_upper().to_f64() < 1e-4 && sum_im.abs_upper().to_f64() < 1e-4, "{sum_re} {sum_im}");
    assert!(re0.abs_lower().to_f64() > 1e-2 || im0.abs_lower().to_f64() > 1e-2, "not a trivial zero");
}
