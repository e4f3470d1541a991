mod oracle;

use twohop_core::af::{af_strong_rate, noisy_interference_capacity, EquivChannel};
use twohop_core::df::{half_duplex_objective, HALF_DUPLEX_SEGMENT_POINTS};
use twohop_core::{
    af_rate, af_regime, af_weak_rate, crossover_window, df_rate, df_rate_with, half_duplex_rate,
    hk_hop1, hk_hop1_switched, mac_hop2, mac_hop2_strong, mac_hop2_switched, maximize,
    naive_strong_rate, parallel_awgn_rate, ChannelParams, Duplex, OptimizerSpec, Phase, RatePair,
    SecondHop,
};

fn params(a: f64, b: f64, p1: f64, p2: f64) -> ChannelParams {
    ChannelParams::new(a, b, p1, p2).unwrap()
}

fn quick() -> OptimizerSpec {
    OptimizerSpec {
        coarse_points: 41,
        ..OptimizerSpec::default()
    }
}

#[test]
fn df_rates_are_finite_and_nonnegative() {
    for a in [0.0, 0.4, 1.0, 1.7, 3.0] {
        for b in [0.0, 0.6, 1.0, 2.5] {
            let r = df_rate(&params(a, b, 5.0, 7.0), &quick()).unwrap();
            assert!(
                r.rate.is_finite() && r.rate >= 0.0,
                "({a}, {b}) -> {}",
                r.rate
            );
            assert_eq!(r.switched, a > 1.0);
        }
    }
}

#[test]
fn df_nondecreasing_in_each_power() {
    let powers = [0.5, 1.0, 3.0, 10.0, 30.0];
    for (a, b) in [(0.3, 0.6), (0.5, 2.0), (2.0, 0.4), (1.5, 2.5)] {
        let by_p1: Vec<f64> = powers
            .iter()
            .map(|&p| df_rate(&params(a, b, p, 5.0), &quick()).unwrap().rate)
            .collect();
        let by_p2: Vec<f64> = powers
            .iter()
            .map(|&p| df_rate(&params(a, b, 5.0, p), &quick()).unwrap().rate)
            .collect();
        for w in by_p1.windows(2).chain(by_p2.windows(2)) {
            assert!(w[1] >= w[0] - 1e-9, "({a}, {b}): {by_p1:?} / {by_p2:?}");
        }
    }
}

#[test]
fn convex_union_dominates_single_modes() {
    for (a, b) in [(0.2, 0.9), (0.7, 1.8), (2.2, 0.3), (1.4, 1.4)] {
        let p = params(a, b, 8.0, 8.0);
        let both = df_rate_with(&p, SecondHop::Combined, &quick())
            .unwrap()
            .rate;
        let dpc = df_rate_with(&p, SecondHop::DpcOnly, &quick()).unwrap().rate;
        let mac = df_rate_with(&p, SecondHop::MacOnly, &quick()).unwrap().rate;
        assert!(both >= dpc && both >= mac, "({a}, {b}): {both} {dpc} {mac}");
    }
}

#[test]
fn role_switching_beats_naive_at_a_strong_point() {
    let p = params(2.0, 2.0, 10.0, 10.0);
    let df = df_rate(&p, &OptimizerSpec::default()).unwrap();
    assert!(df.switched);
    assert!(df.rate >= naive_strong_rate(&p).unwrap().rate - 1e-9);
}

#[test]
fn df_contract_rejects_half_duplex() {
    let half = params(0.5, 0.5, 10.0, 10.0).with_duplex(Duplex::Half);
    assert!(df_rate(&half, &quick()).is_err());
    assert!(half_duplex_rate(&half.with_duplex(Duplex::Full), &quick()).is_err());
}

#[test]
fn unit_gain_boundaries_agree() {
    for p in [0.3, 2.0, 25.0] {
        for k in 0..=20 {
            let x = k as f64 / 20.0;
            assert_eq!(
                hk_hop1(1.0, p, x).unwrap(),
                hk_hop1_switched(1.0, p, x).unwrap()
            );
        }
    }
}

#[test]
fn mac_without_sub_split_is_the_strong_form() {
    for b in [0.1, 0.5, 0.9, 1.0] {
        for beta in [0.0, 0.3, 1.0] {
            let weak = mac_hop2(b, 6.0, beta, 0.0).unwrap();
            let strong = mac_hop2_strong(b, 6.0, beta, true).unwrap();
            assert!((weak.rp - strong.rp).abs() < 1e-12 && weak.rc == strong.rc);
        }
    }
    for b in [1.0, 1.5, 3.0] {
        for beta in [0.0, 0.3, 1.0] {
            let weak = mac_hop2_switched(b, 6.0, beta, 0.0).unwrap();
            let strong = mac_hop2_strong(b, 6.0, beta, false).unwrap();
            assert!((weak.rp - strong.rp).abs() < 1e-12 && weak.rc == strong.rc);
        }
    }
}

#[test]
fn half_duplex_objective_examples() {
    let p = RatePair::new(0.6, 0.2);
    assert!((half_duplex_objective(&p, &p).unwrap() - 0.4).abs() < 1e-15);
    let double = RatePair::new(1.2, 0.4);
    assert!((half_duplex_objective(&p, &double).unwrap() - 0.8 * 2.0 / 3.0).abs() < 1e-15);
    assert_eq!(
        half_duplex_objective(&RatePair::new(0.5, 0.0), &RatePair::new(1.0, 0.0)),
        Some(0.5 / 1.5)
    );
    assert_eq!(
        half_duplex_objective(&RatePair::new(0.5, 0.1), &RatePair::new(1.0, 0.0)),
        None
    );
}

#[test]
fn half_duplex_below_hop1_sum_at_its_split() {
    for (a, b) in [(0.5, 0.5), (0.3, 2.0), (2.0, 0.5)] {
        let p = params(a, b, 10.0, 10.0).with_duplex(Duplex::Half);
        let r = half_duplex_rate(&p, &quick()).unwrap();
        let alpha = r.alpha.unwrap();
        let hop1 = if a > 1.0 {
            hk_hop1_switched(a, 10.0, alpha)
        } else {
            hk_hop1(a, 10.0, alpha)
        }
        .unwrap();
        assert!(
            r.rate > 0.0 && r.rate < hop1.sum(),
            "({a}, {b}): {} vs {}",
            r.rate,
            hop1.sum()
        );
    }
}

#[test]
fn half_duplex_matches_brute_force() {
    let p = params(0.5, 0.5, 10.0, 10.0).with_duplex(Duplex::Half);
    let lib = half_duplex_rate(&p, &OptimizerSpec::default())
        .unwrap()
        .rate;
    let reference = oracle::half_duplex_rate(
        0.5,
        0.5,
        10.0,
        10.0,
        oracle::GRID,
        HALF_DUPLEX_SEGMENT_POINTS,
    );
    assert!((lib - reference).abs() <= 1e-3, "{lib} vs {reference}");
}

#[test]
fn full_duplex_matches_brute_force_in_weak_regime() {
    let lib = df_rate(&params(0.5, 0.5, 10.0, 10.0), &OptimizerSpec::default())
        .unwrap()
        .rate;
    let reference = oracle::df_rate(0.5, 0.5, 10.0, 10.0, oracle::Hop2::Both, oracle::GRID);
    assert!((lib - reference).abs() <= 1e-3, "{lib} vs {reference}");
}

#[test]
fn af_regime_is_phase_independent() {
    for i in 0..=30 {
        for j in 0..=30 {
            let p = params(0.1 * i as f64, 0.1 * j as f64, 10.0, 10.0);
            assert_eq!(
                af_regime(&p, Phase::InPhase),
                af_regime(&p, Phase::OutOfPhase)
            );
        }
    }
}

#[test]
fn af_window_soundness_and_necessity() {
    for a in [0.08, 0.10, 0.12, 0.15] {
        let w = crossover_window(a).unwrap();
        assert!(w.nonempty);
        for k in 1..20 {
            let p = w.lower + (w.upper - w.lower) * k as f64 / 20.0;
            let cap = noisy_interference_capacity(a, p)
                .unwrap()
                .expect("inside noisy regime");
            assert!(parallel_awgn_rate(a, p, p) > cap, "a={a} P={p}");
        }
        let p = 0.95 * w.lower;
        let cap = noisy_interference_capacity(a, p).unwrap().unwrap();
        assert!(parallel_awgn_rate(a, p, p) <= cap, "a={a} P={p}");
    }
}

#[test]
fn af_out_of_phase_equal_gains_uses_parallel_links() {
    let r = af_rate(
        &params(0.15, 0.15, 80.0, 80.0),
        Phase::OutOfPhase,
        &OptimizerSpec::default(),
    )
    .unwrap();
    assert_eq!(r.alpha, Some(1.0));
    assert!((r.rate - parallel_awgn_rate(0.15, 80.0, 80.0)).abs() < 1e-12);
}

#[test]
fn af_rates_nonincreasing_in_noise() {
    let base = EquivChannel {
        g_direct: 1.3,
        g_cross: 0.4,
        noise_var: 1.0,
        common_bound_gain: 0.4,
        phase: Phase::InPhase,
    };
    let weak_best = |eq: &EquivChannel| {
        maximize(1, &quick(), |x| af_weak_rate(eq, 10.0, x[0]).unwrap().sum())
            .unwrap()
            .value
    };
    let mut last = (f64::INFINITY, f64::INFINITY);
    for k in 0..20 {
        let eq = EquivChannel {
            noise_var: 1.0 + 0.5 * k as f64,
            ..base
        };
        let now = (af_strong_rate(&eq, 10.0), weak_best(&eq));
        assert!(now.0 <= last.0 && now.1 <= last.1 + 1e-12);
        last = now;
    }
}

#[test]
fn af_without_relay_power_is_zero() {
    for phase in [Phase::InPhase, Phase::OutOfPhase] {
        let r = af_rate(&params(0.5, 2.0, 10.0, 0.0), phase, &quick()).unwrap();
        assert_eq!(r.rate, 0.0);
    }
}
