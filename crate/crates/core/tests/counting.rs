use artin3_core::counting::{
    a_m, a_m_oracle, asymptotic_a, d_m_chain, default_h_l, default_n_p_third,
    imprimitive_nongalois_bound, induced_conductor_exponent, p3_pipeline, r_count, r_count_floor,
    r_count_real, split_ray_sum, theorem1_bound, theorem2_constant, theorem2_constant_check,
    theorem4_bound, BoundParams, InducedCase, P1Case, THEOREM2_PRINTED,
};
use artin3_core::verify::count_planes;
use artin3_core::BoundReport;
use num_rational::Ratio;
use proptest::prelude::*;
use std::f64::consts::PI;

fn primes_1_mod_4(limit: u64) -> Vec<u64> {
    (5..=limit)
        .filter(|&p| p % 4 == 1 && (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0))
        .collect()
}

#[test]
fn r_count_examples() {
    assert_eq!(r_count(3, 2, 2).unwrap(), 1);
    assert_eq!(r_count(2, 1, 3).unwrap(), 7);
    assert_eq!(r_count(3, 2, 4).unwrap(), 130);
    assert_eq!(count_planes(3, 4), 130);
    assert_eq!(r_count(5, 2, 1).unwrap(), 0);
    assert_eq!(r_count(5, 1, 0).unwrap(), 0);
}

#[test]
fn r_count_matches_plane_enumeration() {
    for a in [2u64, 3] {
        for x in 0..=5 {
            assert_eq!(
                r_count(a, 2, x).unwrap(),
                count_planes(a, x) as u128,
                "a={a} x={x}"
            );
        }
    }
}

#[test]
fn theorem1_examples() {
    assert_eq!(theorem1_bound(5, 3).unwrap(), Ratio::new(50, 3));
    assert_eq!(theorem1_bound(11, 1).unwrap(), Ratio::new(2, 3));
    assert_eq!(theorem1_bound(7, 4).unwrap(), Ratio::new(686, 3));
    assert!(theorem1_bound(3, 4).is_err());
    assert!(theorem1_bound(2, 4).is_err());
    for h in 1..=3u64 {
        let (lhs, rhs) = d_m_chain(7, 4, h).unwrap();
        assert!(lhs < rhs, "h_L = {h}");
    }
}

#[test]
fn theorem2_examples() {
    for (p, m) in [(5u64, 2u32), (13, 4), (29, 7)] {
        let b = imprimitive_nongalois_bound(p, m, default_h_l(p), default_n_p_third(p)).unwrap();
        assert!((b.total - b.printed).abs() / b.printed < 1e-3);
        let expected = THEOREM2_PRINTED * m as f64 * (p as f64).powi(m as i32 + 1) / PI.powi(5);
        assert!((b.printed - expected).abs() / expected < 1e-12);
    }
    assert!((theorem2_constant() - 985.68).abs() < 1e-9);
    let check = theorem2_constant_check();
    assert!(check.within(1e-3));
    assert!(!check.exceeds_printed);
}

#[test]
fn split_ray_sums() {
    for m in 1..=8 {
        let s = split_ray_sum(5, m).unwrap();
        let direct: u128 = (0..m)
            .map(|a| (5u128.pow(a) - 1) * (5u128.pow(m - 1 - a) - 1))
            .sum();
        assert_eq!(s, direct);
        assert!(s < m as u128 * 5u128.pow(m - 1));
    }
    assert_eq!(split_ray_sum(5, 1).unwrap(), 0);
}

#[test]
fn induced_exponents() {
    assert_eq!(induced_conductor_exponent(InducedCase::Galois(0)), 2);
    assert_eq!(induced_conductor_exponent(InducedCase::Galois(3)), 5);
    assert_eq!(induced_conductor_exponent(InducedCase::NonGalois(2, 1)), 4);
}

#[test]
fn a_m_examples() {
    assert_eq!(a_m(P1Case::I, 5, 6).unwrap(), 40);
    assert_eq!(a_m(P1Case::I, 13, 4).unwrap(), 0);
    assert_eq!(
        a_m(P1Case::I, 13, 12).unwrap(),
        a_m_oracle(P1Case::I, 13, 12).unwrap()
    );
    assert!(a_m(P1Case::I, 7, 6).is_err());
}

#[test]
fn a_m_matches_oracle() {
    for p in primes_1_mod_4(61) {
        for m in 1..=30 {
            for case in [P1Case::I, P1Case::Ii] {
                assert_eq!(
                    a_m(case, p, m).unwrap(),
                    a_m_oracle(case, p, m).unwrap(),
                    "{case:?} p={p} m={m}"
                );
            }
        }
    }
}

#[test]
fn a_m_vanishes_exactly_off_multiples_of_three() {
    for p in primes_1_mod_4(100) {
        for m in 1..=30 {
            let v = a_m(P1Case::I, p, m).unwrap();
            assert_eq!(v == 0, m % 3 != 0, "p={p} m={m}");
            let w = a_m(P1Case::Ii, p, m).unwrap();
            if m % 3 != 0 {
                assert_eq!(w, 0);
            } else if (p - 1) % 12 == 0 {
                assert!(w > 0, "p={p} m={m}");
            }
        }
    }
}

#[test]
fn asymptotic_examples() {
    let a = asymptotic_a(P1Case::I, 13, 30).unwrap();
    assert!((a.ratio - 1.0).abs() < 0.15, "ratio {}", a.ratio);
    let b = asymptotic_a(P1Case::I, 17, 3).unwrap();
    assert_eq!(b.partial_sum, a_m(P1Case::I, 17, 3).unwrap());
    let c = asymptotic_a(P1Case::Ii, 13, 6).unwrap();
    let by_hand: u128 = (1..=6).map(|m| a_m(P1Case::Ii, 13, m).unwrap()).sum();
    assert_eq!(c.partial_sum, by_hand);
    // Only c = 1 divides (13 - 1)/12, so a_6 = 8 · 13 · 1.
    assert_eq!(a_m(P1Case::Ii, 13, 6).unwrap(), 104);
}

#[test]
fn theorem4_smoke_and_trend() {
    let t = theorem4_bound(5, 3).unwrap();
    assert!(t.composed.is_finite() && t.composed > 0.0);
    assert!(t.closed_form.is_finite() && t.closed_form > 0.0);
    let ratios: Vec<f64> = [5u64, 13, 17, 29]
        .iter()
        .map(|&p| theorem4_bound(p, 9).unwrap().ratio)
        .collect();
    // Composed and closed forms differ by a power of p, so the ratio is
    // monotone in p.
    assert!(ratios.windows(2).all(|w| w[1] < w[0]), "{ratios:?}");
}

#[test]
fn p3_pipeline_examples() {
    let a = p3_pipeline(5, 3).unwrap();
    assert_eq!(a.k, Some(0));
    assert_eq!(a.per_f_x2, "14/3");
    assert_eq!(a.per_f_x1, "28/3");
    let b = p3_pipeline(5, 6).unwrap();
    assert!((a.theorem5 / b.theorem5 - 0.2).abs() < 1e-12);
    let c = p3_pipeline(5, 4).unwrap();
    assert_eq!(c.k, None);
    assert_eq!((c.per_f_x1.as_str(), c.theorem5), ("0", 0.0));
}

#[test]
fn floored_ranks_stay_within_one_rank() {
    for p in (5u64..=97).filter(|&p| (2..p).all(|d| p % d != 0)) {
        let pipe = p3_pipeline(p, 9).unwrap();
        for (a, b, x) in [
            (2u64, 1u32, pipe.beta),
            (2, 2, pipe.k_cap),
            (3, 1, pipe.l_cap_unramified),
            (3, 2, pipe.l_cap_ramified),
        ] {
            let lo = r_count_real(a, b, x.floor());
            let hi = r_count_real(a, b, x.floor() + 1.0);
            let raw = r_count_real(a, b, x);
            if let Ok(exact) = r_count_floor(a, b, x) {
                assert!((exact as f64 - lo).abs() <= 1e-9 * lo.max(1.0));
            }
            assert!(
                lo <= raw * (1.0 + 1e-12) && raw <= hi * (1.0 + 1e-12),
                "p={p} a={a} b={b} x={x}"
            );
        }
    }
}

#[test]
fn bounds_increase() {
    for p in [5u64, 13, 17, 29] {
        let mut last = [0f64; 4];
        for m in (3..=24).step_by(3) {
            let t1 = *theorem1_bound(p, m).unwrap().numer() as f64 / 3.0;
            let t2 = imprimitive_nongalois_bound(p, m, default_h_l(p), default_n_p_third(p))
                .unwrap()
                .printed;
            let t4 = theorem4_bound(p, m).unwrap().closed_form;
            let t5 = p3_pipeline(p, m).unwrap().theorem5;
            let now = [t1, t2, t4, t5];
            assert!(now.iter().zip(&last).all(|(a, b)| a > b), "p={p} m={m}");
            last = now;
        }
    }
    for m in (3..=15).step_by(3) {
        let at = |p: u64| {
            (
                imprimitive_nongalois_bound(p, m, default_h_l(p), default_n_p_third(p))
                    .unwrap()
                    .printed,
                theorem4_bound(p, m).unwrap().closed_form,
                p3_pipeline(p, m).unwrap().theorem5,
            )
        };
        let (a, b) = (at(13), at(17));
        assert!(b.0 > a.0 && b.1 > a.1 && b.2 > a.2);
    }
}

#[test]
fn report_json_round_trips() {
    let r = BoundReport::compute(5, 9, &BoundParams::default()).unwrap();
    let json = r.to_json().unwrap();
    let back: BoundReport = serde_json::from_str(&json).unwrap();
    assert_eq!(back.to_json().unwrap(), json);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    for key in [
        "theorem1",
        "theorem2",
        "a_m_i",
        "a_m_ii",
        "A_m_F_i",
        "A_m_F_ii",
        "theorem4",
        "theorem5",
        "beta",
        "rank_caps",
    ] {
        assert!(v["values"][key]["value"].as_f64().unwrap() >= 0.0, "{key}");
    }
    assert!(!r.to_text().is_empty());
}

#[test]
fn report_for_m_one() {
    let r = BoundReport::compute(5, 1, &BoundParams::default()).unwrap();
    assert_eq!(r.values.theorem1.exact.as_deref(), Some("2/3"));
}

#[test]
fn report_respects_overrides() {
    let params = BoundParams::parse_config("# sharper data\nh_L = 1\nn_p_third = 2\n").unwrap();
    let r = BoundReport::compute(13, 6, &params).unwrap();
    let expected = imprimitive_nongalois_bound(13, 6, 1.0, 2.0).unwrap().total;
    assert!((r.values.theorem2.value - expected).abs() / expected < 1e-12);
    assert!(BoundParams::parse_config("h_L = abc").is_err());
    assert!(BoundParams::parse_config("unknown = 1").is_err());
}

proptest! {
    #[test]
    fn galois_induction_adds_two(v in 0u64..1_000_000) {
        prop_assert_eq!(induced_conductor_exponent(InducedCase::Galois(v)) - v, 2);
    }

    #[test]
    fn a_m_is_zero_off_multiples_of_three(pi in 0usize..11, m in 1u32..40) {
        let primes = primes_1_mod_4(100);
        let p = primes[pi % primes.len()];
        let v = a_m(P1Case::I, p, m).unwrap();
        prop_assert_eq!(v == 0, m % 3 != 0);
        prop_assert_eq!(v, a_m_oracle(P1Case::I, p, m).unwrap());
    }

    #[test]
    fn real_r_count_agrees_at_integers(a in prop::sample::select(vec![2u64, 3, 5, 7]), b in 1u32..3, x in 0u32..12) {
        let exact = r_count(a, b, x).unwrap() as f64;
        let real = r_count_real(a, b, x as f64);
        prop_assert!((exact - real).abs() <= 1e-9 * exact.max(1.0));
    }
}
