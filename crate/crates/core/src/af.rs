//! Amplify-and-forward relaying.
//!
//! Each relay scales its received signal by `c` (full power) and forwards
//! it, in phase or with one relay's sign flipped. Since the destinations do
//! not cooperate, the end-to-end channel is equivalent to a single Gaussian
//! interference channel with composite gains and noise variance
//! `1 + b² + 1/c²`, which is then treated as strong or weak.

use serde::{Deserialize, Serialize};

use crate::channel::{gamma_unchecked as g, ChannelParams};
use crate::error::{check_fraction, check_nonneg, Error, Result};
use crate::optimize::{maximize, OptimizerSpec};
use crate::region::RatePair;
use crate::scheme::{SchemeKind, SchemeResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Phase {
    InPhase,
    OutOfPhase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum AfRegime {
    EquivStrong,
    EquivWeak,
}

impl AfRegime {
    pub fn name(self) -> &'static str {
        match self {
            AfRegime::EquivStrong => "equiv-strong",
            AfRegime::EquivWeak => "equiv-weak",
        }
    }
}

/// End-to-end interference channel seen by the destinations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EquivChannel {
    pub g_direct: f64,
    pub g_cross: f64,
    /// `1 + b² + 1/c²`; infinite when the relays have no power.
    pub noise_var: f64,
    /// Gain in the individual common-message bound of the weak-regime rate:
    /// the cross gain in phase, the direct gain out of phase.
    pub common_bound_gain: f64,
    pub phase: Phase,
}

impl EquivChannel {
    pub fn is_degenerate(&self) -> bool {
        !self.noise_var.is_finite()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossoverWindow {
    pub lower: f64,
    pub upper: f64,
    pub nonempty: bool,
}

/// Relay amplitude scale that spends the full relay power.
pub fn af_gain(params: &ChannelParams) -> f64 {
    (params.p2 / ((1.0 + params.a * params.a) * params.p1 + 1.0)).sqrt()
}

pub fn equivalent_channel(params: &ChannelParams, phase: Phase) -> EquivChannel {
    let ChannelParams { a, b, .. } = *params;
    let c = af_gain(params);
    let noise_var = if c > 0.0 {
        1.0 + b * b + 1.0 / (c * c)
    } else {
        f64::INFINITY
    };
    let (g_direct, g_cross, common_bound_gain) = match phase {
        Phase::InPhase => (1.0 + a * b, a + b, a + b),
        Phase::OutOfPhase => (a * b - 1.0, b - a, a * b - 1.0),
    };
    EquivChannel {
        g_direct,
        g_cross,
        noise_var,
        common_bound_gain,
        phase,
    }
}

/// The equivalent channel has strong interference exactly when one hop is
/// weak and the other strong; the condition is the same for both phases.
pub fn af_regime(params: &ChannelParams, _phase: Phase) -> AfRegime {
    if (1.0 - params.a) * (1.0 - params.b) < 0.0 {
        AfRegime::EquivStrong
    } else {
        AfRegime::EquivWeak
    }
}

/// Symmetric rate when both destinations decode both messages.
pub fn af_strong_rate(eq: &EquivChannel, p1: f64) -> f64 {
    let d2 = eq.g_direct * eq.g_direct;
    let c2 = eq.g_cross * eq.g_cross;
    g(d2 * p1 / eq.noise_var).min(0.5 * g((d2 + c2) * p1 / eq.noise_var))
}

/// Han–Kobayashi pair on the equivalent weak channel.
pub fn af_weak_rate(eq: &EquivChannel, p1: f64, alpha: f64) -> Result<RatePair> {
    check_nonneg("P1", p1)?;
    check_fraction("alpha", alpha)?;
    Ok(af_weak_raw(eq, p1, alpha))
}

fn af_weak_raw(eq: &EquivChannel, p1: f64, alpha: f64) -> RatePair {
    let d2 = eq.g_direct * eq.g_direct;
    let c2 = eq.g_cross * eq.g_cross;
    let k2 = eq.common_bound_gain * eq.common_bound_gain;
    let private = alpha * p1;
    let common = (1.0 - alpha) * p1;
    let s1 = (d2 + c2) * private + eq.noise_var;
    let s2 = (d2 + c2) * common;
    RatePair::new(
        g(d2 * private / (c2 * private + eq.noise_var)),
        g(k2 * common / s1).min(0.5 * g(s2 / s1)),
    )
}

pub fn af_rate(params: &ChannelParams, phase: Phase, spec: &OptimizerSpec) -> Result<SchemeResult> {
    params.validate()?;
    let kind = match phase {
        Phase::InPhase => SchemeKind::AfInPhase,
        Phase::OutOfPhase => SchemeKind::AfOutOfPhase,
    };
    let mut result = SchemeResult {
        scheme: kind,
        rate: 0.0,
        alpha: None,
        beta: None,
        alpha2: None,
        share: None,
        switched: false,
    };
    let eq = equivalent_channel(params, phase);
    if eq.is_degenerate() {
        return Ok(result);
    }
    match af_regime(params, phase) {
        AfRegime::EquivStrong => result.rate = af_strong_rate(&eq, params.p1),
        AfRegime::EquivWeak => {
            let best = maximize(1, spec, |x| af_weak_raw(&eq, params.p1, x[0]).sum())?;
            result.rate = best.value;
            result.alpha = Some(best.argmax[0]);
        }
    }
    Ok(result)
}

/// Rate of each of the two parallel AWGN links that out-of-phase relaying
/// creates when `a = b`.
pub fn parallel_awgn_rate(a: f64, p1: f64, p2: f64) -> f64 {
    let a2 = a * a;
    g((1.0 - a2).powi(2) * p1 * p2 / ((1.0 + a2) * (p1 + p2) + 1.0))
}

/// Largest `P1` for which the weak interference channel is in the
/// noisy-interference regime.
pub fn noisy_interference_threshold(a: f64) -> f64 {
    (1.0 / (a * a)) * (1.0 / (2.0 * a) - 1.0)
}

/// Symmetric capacity of a hop in the noisy-interference regime
/// (`a(a²P1 + 1) <= 1/2`), where treating interference as noise is optimal.
/// `None` outside that regime, where the capacity is unknown.
pub fn noisy_interference_capacity(a: f64, p1: f64) -> Result<Option<f64>> {
    check_nonneg("a", a)?;
    check_nonneg("P1", p1)?;
    if a >= 1.0 {
        return Err(Error::domain("a", a, "< 1 (weak interference)"));
    }
    if a * (a * a * p1 + 1.0) <= 0.5 {
        Ok(Some(g(p1 / (1.0 + a * a * p1))))
    } else {
        Ok(None)
    }
}

/// Range of `P1 = P2` where the out-of-phase parallel-link rate beats the
/// noisy-interference capacity of each hop (`a = b`).
pub fn crossover_window(a: f64) -> Result<CrossoverWindow> {
    if !(a > 0.0 && a < 1.0) {
        return Err(Error::domain("a", a, "in (0, 1)"));
    }
    let a2 = a * a;
    let k = 1.0 + 4.0 * a2 - a2 * a2;
    let m = (1.0 - a2).powi(2);
    let lower = (k + (k * k + 4.0 * a2 * m).sqrt()) / (2.0 * a2 * m);
    let upper = noisy_interference_threshold(a);
    Ok(CrossoverWindow {
        lower,
        upper,
        nonempty: lower < upper,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(a: f64, b: f64, p1: f64, p2: f64) -> ChannelParams {
        ChannelParams::new(a, b, p1, p2).unwrap()
    }

    fn close(x: f64, y: f64, tol: f64) -> bool {
        (x - y).abs() <= tol
    }

    #[test]
    fn gain_values() {
        assert_eq!(af_gain(&params(1.0, 0.3, 1.0, 3.0)), 1.0);
        assert_eq!(af_gain(&params(0.7, 0.3, 0.0, 4.0)), 2.0);
        assert!(close(
            af_gain(&params(0.5, 0.3, 10.0, 10.0)),
            0.860662965823870,
            1e-12
        ));
        assert_eq!(af_gain(&params(0.5, 0.3, 10.0, 0.0)), 0.0);
    }

    #[test]
    fn equivalent_channel_gains() {
        let eq = equivalent_channel(&params(0.4, 0.4, 2.0, 2.0), Phase::OutOfPhase);
        assert_eq!(eq.g_cross, 0.0);
        let eq = equivalent_channel(&params(0.0, 0.0, 5.0, 2.0), Phase::InPhase);
        assert_eq!((eq.g_direct, eq.g_cross), (1.0, 0.0));
        assert!(close(eq.noise_var, 1.0 + (5.0 + 1.0) / 2.0, 1e-12));
        let eq = equivalent_channel(&params(0.5, 2.0, 1.0, 1.0), Phase::InPhase);
        assert_eq!((eq.g_direct, eq.g_cross), (2.0, 2.5));
        assert!(eq.g_cross > eq.g_direct);
        assert!(equivalent_channel(&params(0.5, 2.0, 1.0, 0.0), Phase::InPhase).is_degenerate());
    }

    #[test]
    fn regime_examples() {
        assert_eq!(
            af_regime(&params(0.5, 2.0, 1.0, 1.0), Phase::InPhase),
            AfRegime::EquivStrong
        );
        assert_eq!(
            af_regime(&params(2.0, 3.0, 1.0, 1.0), Phase::InPhase),
            AfRegime::EquivWeak
        );
        assert_eq!(
            af_regime(&params(1.0, 5.0, 1.0, 1.0), Phase::OutOfPhase),
            AfRegime::EquivWeak
        );
    }

    #[test]
    fn strong_rate_values() {
        let p = params(0.0, 2.0, 10.0, 10.0);
        let inp = equivalent_channel(&p, Phase::InPhase);
        assert!(close(inp.noise_var, 6.1, 1e-12));
        assert!(close(af_strong_rate(&inp, 10.0), 0.700089770275865, 1e-12));
        let out = equivalent_channel(&p, Phase::OutOfPhase);
        assert!(close(
            af_strong_rate(&out, 10.0),
            af_strong_rate(&inp, 10.0),
            1e-15
        ));

        // engineered γ(3) with the sum branch slack
        let eq = EquivChannel {
            g_direct: 1.0,
            g_cross: 2.0,
            noise_var: 2.0,
            common_bound_gain: 2.0,
            phase: Phase::InPhase,
        };
        assert_eq!(af_strong_rate(&eq, 6.0), 1.0);
    }

    #[test]
    fn weak_rate_edges() {
        let p = params(0.3, 0.6, 4.0, 9.0);
        let eq = equivalent_channel(&p, Phase::InPhase);
        let r = af_weak_rate(&eq, 4.0, 1.0).unwrap();
        assert_eq!(r.rc, 0.0);
        let d2 = eq.g_direct.powi(2);
        let c2 = eq.g_cross.powi(2);
        assert!(close(r.rp, g(d2 * 4.0 / (c2 * 4.0 + eq.noise_var)), 1e-15));
        assert!(af_weak_rate(&eq, 4.0, 1.2).is_err());
    }

    #[test]
    fn out_of_phase_equal_gains_is_parallel_awgn() {
        let p = params(0.35, 0.35, 7.0, 3.0);
        let eq = equivalent_channel(&p, Phase::OutOfPhase);
        let r = af_weak_rate(&eq, 7.0, 1.0).unwrap();
        assert!(close(r.rp, parallel_awgn_rate(0.35, 7.0, 3.0), 1e-12));
    }

    #[test]
    fn af_rate_dispatch() {
        let spec = OptimizerSpec::default();
        let p = params(0.15, 0.15, 80.0, 80.0);
        let r = af_rate(&p, Phase::OutOfPhase, &spec).unwrap();
        assert_eq!(r.alpha, Some(1.0));
        assert!(close(r.rate, parallel_awgn_rate(0.15, 80.0, 80.0), 1e-12));

        let p = params(0.5, 2.0, 3.0, 7.0);
        let r = af_rate(&p, Phase::InPhase, &spec).unwrap();
        let eq = equivalent_channel(&p, Phase::InPhase);
        assert_eq!(r.rate, af_strong_rate(&eq, 3.0));
        assert_eq!(r.alpha, None);

        let p = params(0.0, 0.0, 10.0, 10.0);
        let r = af_rate(&p, Phase::InPhase, &spec).unwrap();
        assert!(close(r.rate, 1.263272907247917, 1e-12));

        let p = params(0.3, 0.3, 10.0, 0.0);
        assert_eq!(af_rate(&p, Phase::InPhase, &spec).unwrap().rate, 0.0);
    }

    #[test]
    fn parallel_values() {
        assert_eq!(parallel_awgn_rate(1.0, 5.0, 5.0), 0.0);
        assert!(close(
            parallel_awgn_rate(0.0, 3.0, 3.0),
            0.596322538971198,
            1e-12
        ));
        assert!(close(
            parallel_awgn_rate(0.15, 80.0, 80.0),
            2.626845780607465,
            1e-12
        ));
    }

    #[test]
    fn noisy_interference_values() {
        let c = noisy_interference_capacity(0.15, 100.0).unwrap().unwrap();
        assert!(close(c, 2.494779126639177, 1e-12));
        assert_eq!(noisy_interference_capacity(0.15, 104.0).unwrap(), None);
        assert_eq!(noisy_interference_capacity(0.5, 1.0).unwrap(), None);
        assert!(noisy_interference_capacity(1.0, 1.0).is_err());
    }

    #[test]
    fn window_values() {
        let w = crossover_window(0.15).unwrap();
        assert!(close(w.lower, 51.5785522593115, 1e-9));
        assert!(close(w.upper, 103.703703703704, 1e-9));
        assert!(w.nonempty);

        let w = crossover_window(0.5).unwrap();
        assert_eq!(w.upper, 0.0);
        assert!(!w.nonempty);

        let w = crossover_window(0.10).unwrap();
        assert!(close(w.lower, 107.054488074218, 1e-9));
        assert!(close(w.upper, 400.0, 1e-9));
        assert!(w.nonempty);

        for bad in [0.0, 1.0, -0.2, 1.5] {
            assert!(crossover_window(bad).is_err());
        }
    }

    #[test]
    fn window_bound_orders() {
        // lower ~ 1/a², upper ~ 1/(2a³) as a -> 0
        for a in [1e-2, 1e-3] {
            let w = crossover_window(a).unwrap();
            assert!(close(w.lower * a * a, 1.0, 10.0 * a));
            assert!(close(w.upper * a * a * a, 0.5, 10.0 * a));
        }
    }
}
