use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::af::{af_rate, noisy_interference_capacity, Phase};
use crate::channel::{ChannelParams, Duplex};
use crate::df::{df_rate_with, half_duplex_rate, naive_strong_rate, SecondHop};
use crate::error::Result;
use crate::optimize::OptimizerSpec;

/// Which derivation produced a rate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SchemeKind {
    /// Decode-and-forward, relays keep their roles.
    DfDirect,
    /// Decode-and-forward after role switching.
    DfSwitched,
    DfNaiveStrong,
    DfHalfDuplex,
    AfInPhase,
    AfOutOfPhase,
    /// Per-hop noisy-interference capacity (a reference, not a scheme).
    CapPerHop,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchemeResult {
    pub scheme: SchemeKind,
    /// Symmetric rate per user.
    pub rate: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub alpha2: Option<f64>,
    /// Time fraction spent in the DPC mode on hop 2.
    pub share: Option<f64>,
    pub switched: bool,
}

/// Scheme identifiers accepted on the command line and written to sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Scheme {
    Df,
    DfDpcOnly,
    DfMacOnly,
    DfNaive,
    DfHalfDuplex,
    AfIn,
    AfOut,
    CapPerHop,
}

impl Scheme {
    pub const ALL: [Scheme; 8] = [
        Scheme::Df,
        Scheme::DfDpcOnly,
        Scheme::DfMacOnly,
        Scheme::DfNaive,
        Scheme::DfHalfDuplex,
        Scheme::AfIn,
        Scheme::AfOut,
        Scheme::CapPerHop,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Scheme::Df => "df",
            Scheme::DfDpcOnly => "df-dpc-only",
            Scheme::DfMacOnly => "df-mac-only",
            Scheme::DfNaive => "df-naive",
            Scheme::DfHalfDuplex => "df-halfduplex",
            Scheme::AfIn => "af-in",
            Scheme::AfOut => "af-out",
            Scheme::CapPerHop => "cap-per-hop",
        }
    }

    /// Whether the scheme has a value at `params`. `df-naive` needs
    /// `a, b > 1`; `cap-per-hop` needs both hops in noisy interference.
    pub fn applies_to(self, params: &ChannelParams) -> bool {
        match self {
            Scheme::DfNaive => params.a > 1.0 && params.b > 1.0,
            Scheme::CapPerHop => cap_per_hop(params).is_some(),
            _ => true,
        }
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Scheme {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Scheme::ALL
            .into_iter()
            .find(|k| k.id() == s)
            .ok_or_else(|| {
                let ids: Vec<_> = Scheme::ALL.iter().map(|k| k.id()).collect();
                format!("unknown scheme '{s}' (expected one of: {})", ids.join(", "))
            })
    }
}

/// Smaller of the two hops' noisy-interference symmetric capacities, when
/// both hops satisfy the noisy-interference condition.
pub fn cap_per_hop(params: &ChannelParams) -> Option<f64> {
    if !(params.a > 0.0 && params.a < 1.0 && params.b > 0.0 && params.b < 1.0) {
        return None;
    }
    let c1 = noisy_interference_capacity(params.a, params.p1).ok()??;
    let c2 = noisy_interference_capacity(params.b, params.p2).ok()??;
    Some(c1.min(c2))
}

/// Evaluates one scheme. `df` honours `params.duplex`; `df-halfduplex`
/// always uses half-duplex relays and the other DF variants full duplex.
/// Returns `Ok(None)` when the scheme does not apply (see
/// [`Scheme::applies_to`]).
pub fn evaluate(
    scheme: Scheme,
    params: &ChannelParams,
    spec: &OptimizerSpec,
) -> Result<Option<SchemeResult>> {
    if !scheme.applies_to(params) {
        return Ok(None);
    }
    let full = params.with_duplex(Duplex::Full);
    let half = params.with_duplex(Duplex::Half);
    let r = match scheme {
        Scheme::Df => match params.duplex {
            Duplex::Full => df_rate_with(&full, SecondHop::Combined, spec)?,
            Duplex::Half => half_duplex_rate(&half, spec)?,
        },
        Scheme::DfDpcOnly => df_rate_with(&full, SecondHop::DpcOnly, spec)?,
        Scheme::DfMacOnly => df_rate_with(&full, SecondHop::MacOnly, spec)?,
        Scheme::DfNaive => naive_strong_rate(&full)?,
        Scheme::DfHalfDuplex => half_duplex_rate(&half, spec)?,
        Scheme::AfIn => af_rate(params, Phase::InPhase, spec)?,
        Scheme::AfOut => af_rate(params, Phase::OutOfPhase, spec)?,
        Scheme::CapPerHop => SchemeResult {
            scheme: SchemeKind::CapPerHop,
            rate: cap_per_hop(params).expect("checked by applies_to"),
            alpha: None,
            beta: None,
            alpha2: None,
            share: None,
            switched: false,
        },
    };
    Ok(Some(r))
}
