//! Symmetric two-hop Gaussian interference network.
//!
//! Transmitters reach the relays through an interference channel with
//! direct gain 1 and cross gain `a`; relays reach the destinations through a
//! second one with cross gain `b`. All noise variances are 1. The network is
//! fully described by `(a, b, P1, P2)` and the relay duplex mode.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_nonneg, Error, Result};

/// Natural log of the rate unit's base. `LN_2` gives bits per channel use;
/// set to `1.0` for nats.
pub const RATE_UNIT_LN: f64 = std::f64::consts::LN_2;

/// Absolute tolerance for region membership and dominance checks.
pub const TOL: f64 = 1e-9;

/// `½·log(1 + x)` in the configured unit, for `x >= 0`.
pub fn gamma(x: f64) -> Result<f64> {
    check_nonneg("x", x)?;
    Ok(gamma_unchecked(x))
}

/// Hot-path form of [`gamma`]; callers guarantee `x >= 0`.
#[inline]
pub(crate) fn gamma_unchecked(x: f64) -> f64 {
    0.5 * x.ln_1p() / RATE_UNIT_LN
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Duplex {
    #[default]
    Full,
    Half,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelParams {
    /// First-hop cross gain.
    pub a: f64,
    /// Second-hop cross gain.
    pub b: f64,
    /// Transmitter power.
    pub p1: f64,
    /// Relay power.
    pub p2: f64,
    pub duplex: Duplex,
    /// Set when the relays have swapped roles (gains are then `1/a`, `1/b`).
    pub switched: bool,
}

impl ChannelParams {
    pub fn new(a: f64, b: f64, p1: f64, p2: f64) -> Result<Self> {
        Ok(Self {
            a: check_nonneg("a", a)?,
            b: check_nonneg("b", b)?,
            p1: check_nonneg("P1", p1)?,
            p2: check_nonneg("P2", p2)?,
            duplex: Duplex::Full,
            switched: false,
        })
    }

    pub fn with_duplex(mut self, duplex: Duplex) -> Self {
        self.duplex = duplex;
        self
    }

    pub fn validate(&self) -> Result<()> {
        check_nonneg("a", self.a)?;
        check_nonneg("b", self.b)?;
        check_nonneg("P1", self.p1)?;
        check_nonneg("P2", self.p2)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Regime {
    WeakWeak,
    WeakStrong,
    StrongWeak,
    StrongStrong,
}

impl Regime {
    pub fn name(self) -> &'static str {
        match self {
            Regime::WeakWeak => "weak-weak",
            Regime::WeakStrong => "weak-strong",
            Regime::StrongWeak => "strong-weak",
            Regime::StrongStrong => "strong-strong",
        }
    }

    pub fn first_hop_strong(self) -> bool {
        matches!(self, Regime::StrongWeak | Regime::StrongStrong)
    }

    pub fn second_hop_strong(self) -> bool {
        matches!(self, Regime::WeakStrong | Regime::StrongStrong)
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Quadrant of `(a, b)` relative to 1. A gain of exactly 1 counts as weak.
pub fn classify(params: &ChannelParams) -> Regime {
    match (params.a > 1.0, params.b > 1.0) {
        (false, false) => Regime::WeakWeak,
        (false, true) => Regime::WeakStrong,
        (true, false) => Regime::StrongWeak,
        (true, true) => Regime::StrongStrong,
    }
}

/// Swaps which relay serves which user: cross gains become `1/a` and `1/b`.
///
/// The accompanying noise rescaling is folded into the role-switched rate
/// formulas in [`crate::df`], so only the gains and the flag change here.
pub fn switch_roles(params: &ChannelParams) -> Result<ChannelParams> {
    if params.a == 0.0 {
        return Err(Error::domain(
            "a",
            params.a,
            "nonzero to switch relay roles",
        ));
    }
    if params.b == 0.0 {
        return Err(Error::domain(
            "b",
            params.b,
            "nonzero to switch relay roles",
        ));
    }
    Ok(ChannelParams {
        a: 1.0 / params.a,
        b: 1.0 / params.b,
        switched: !params.switched,
        ..*params
    })
}
