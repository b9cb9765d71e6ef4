mod common;

use maass_core::kloosterman::{kloosterman, mod_inverse, parse_dump_line, ramanujan_sum, KloostermanCache, KloostermanKey};
use maass_core::numerics::PrecisionConfig;
use proptest::prelude::*;

fn k(m: i64, n: i64, c: u64) -> maass_core::numerics::BallReal {
    kloosterman(KloostermanKey::new(m, n, c).unwrap(), &PrecisionConfig::with_bits(128))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn matches_naive_sum(m in -50i64..50, n in -50i64..50, c in 1u64..120) {
        let v = k(m, n, c);
        let naive = common::kloosterman(m, n, c as i64);
        prop_assert!((v.mid_f64() - naive).abs() <= v.rad_f64() + 1e-11 * c as f64, "{v} vs {naive}");
        prop_assert!(v.rad_f64() < 1e-30);
    }

    #[test]
    fn symmetric_and_real(m in -50i64..50, n in -50i64..50, c in 1u64..120) {
        prop_assert!(k(m, n, c).overlaps(&k(n, m, c)));
        // conjugation sends (m, n) to (-m, -n); the sum is real
        prop_assert!(k(m, n, c).overlaps(&k(-m, -n, c)));
    }

    #[test]
    fn periodic_in_m_and_n(m in -50i64..50, n in -50i64..50, c in 1u64..60) {
        prop_assert!(k(m, n, c).overlaps(&k(m + c as i64, n - 2 * c as i64, c)));
    }

    #[test]
    fn phi_and_weil_bounds(m in -50i64..50, n in -50i64..50, c in 1u64..150) {
        let v = k(m, n, c).abs_lower().to_f64();
        let ci = c as i64;
        prop_assert!(v <= common::euler_phi(ci) as f64 + 1e-9);
        let g = common::gcd(common::gcd(m, n), ci) as f64;
        let weil = common::num_divisors(ci) as f64 * g.sqrt() * (c as f64).sqrt();
        prop_assert!(v <= weil + 1e-9);
    }

    #[test]
    fn ramanujan_sums_are_exact(m in -200i64..200, c in 1u64..200) {
        let exact = common::ramanujan(m, c as i64);
        prop_assert_eq!(ramanujan_sum(m, c), exact);
        let v = k(m, 0, c);
        prop_assert!(v.contains_f64(exact as f64));
        prop_assert!(k(0, m, c).contains_f64(exact as f64));
    }

    #[test]
    fn inverses(v in -1000i64..1000, c in 1u64..500) {
        match mod_inverse(v, c) {
            Ok(w) => prop_assert_eq!((v.rem_euclid(c as i64) as u64 * w) % c, 1 % c),
            Err(_) => prop_assert_ne!(common::gcd(v, c as i64), 1),
        }
    }
}

#[test]
fn cache_reuses_and_dumps() {
    let cache = KloostermanCache::new(1000);
    let prec = PrecisionConfig::with_bits(96);
    let key = KloostermanKey::new(-1, 2, 9).unwrap();
    let a = cache.kloosterman(key, &prec);
    let b = cache.kloosterman(KloostermanKey::new(8, 11, 9).unwrap(), &prec);
    assert_eq!(a, b);
    let dump = cache.dump();
    let line = dump.lines().find(|l| l.starts_with("K ")).expect("dump has entries");
    let (_, ball) = parse_dump_line(line).unwrap();
    assert!(ball.overlaps(&a));
    assert!(KloostermanKey::new(1, 1, 0).is_err());
}

#[test]
fn vanishes_at_level_nine_for_one_mod_three() {
    for c in (9..=900).step_by(9) {
        for n in (1..40).step_by(3) {
            assert!(k(-1, n, c).contains_f64(0.0), "K(-1,{n},{c})");
        }
    }
}
