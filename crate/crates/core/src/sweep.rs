//! Parameter sweeps and their CSV / JSON serialization.

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use serde::Serialize;

use crate::af::{af_regime, Phase};
use crate::channel::{classify, ChannelParams, Duplex};
use crate::error::{Error, Result};
use crate::optimize::OptimizerSpec;
use crate::scheme::{evaluate, Scheme, SchemeResult};

pub const CSV_HEADER: &str =
    "varied_param,value,scheme,rate_bits,alpha,beta,alpha2,share,switched,regime";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Vary {
    A,
    B,
    P1,
    P2,
    /// `P1 = P2` moved together.
    PJoint,
}

impl Vary {
    pub fn column_name(self) -> &'static str {
        match self {
            Vary::A => "a",
            Vary::B => "b",
            Vary::P1 => "P1",
            Vary::P2 => "P2",
            Vary::PJoint => "P_joint",
        }
    }

    pub fn apply(self, base: &ChannelParams, value: f64) -> ChannelParams {
        let mut p = *base;
        match self {
            Vary::A => p.a = value,
            Vary::B => p.b = value,
            Vary::P1 => p.p1 = value,
            Vary::P2 => p.p2 = value,
            Vary::PJoint => {
                p.p1 = value;
                p.p2 = value;
            }
        }
        p
    }
}

impl fmt::Display for Vary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column_name())
    }
}

impl FromStr for Vary {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "a" => Ok(Vary::A),
            "b" => Ok(Vary::B),
            "p1" => Ok(Vary::P1),
            "p2" => Ok(Vary::P2),
            "p-joint" | "pjoint" => Ok(Vary::PJoint),
            _ => Err(format!(
                "unknown sweep parameter '{s}' (expected a, b, p1, p2 or p-joint)"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub vary: Vary,
    pub start: f64,
    pub stop: f64,
    pub points: usize,
    /// Holds the fixed parameters; the varied field is overwritten per row.
    pub base: ChannelParams,
    pub schemes: Vec<Scheme>,
    pub duplex: Duplex,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        if !(self.start.is_finite() && self.stop.is_finite() && self.start < self.stop) {
            return Err(Error::domain("start", self.start, "finite and < stop"));
        }
        if self.points < 2 {
            return Err(Error::domain("points", self.points as f64, ">= 2"));
        }
        if self.schemes.is_empty() {
            return Err(Error::Contract("a sweep needs at least one scheme"));
        }
        Ok(())
    }

    pub fn values(&self) -> Vec<f64> {
        let n = self.points - 1;
        (0..=n)
            .map(|i| self.start + (self.stop - self.start) * i as f64 / n as f64)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub vary: Vary,
    pub value: f64,
    pub scheme: Scheme,
    pub result: SchemeResult,
    pub regime: &'static str,
}

/// Regime label written next to a result: the equivalent-channel regime
/// for AF schemes, the `(a, b)` quadrant otherwise.
pub fn regime_label(scheme: Scheme, params: &ChannelParams) -> &'static str {
    match scheme {
        Scheme::AfIn => af_regime(params, Phase::InPhase).name(),
        Scheme::AfOut => af_regime(params, Phase::OutOfPhase).name(),
        _ => classify(params).name(),
    }
}

/// Evaluates every scheme at every grid value. Schemes that do not apply at
/// a point produce no row. Rows come out ordered by value, then scheme id.
pub fn run_sweep(spec: &SweepSpec, opt: &OptimizerSpec) -> Result<Vec<SweepRow>> {
    spec.validate()?;
    let mut schemes = spec.schemes.clone();
    schemes.sort_by_key(|s| s.id());
    schemes.dedup();

    let mut rows = Vec::new();
    for value in spec.values() {
        let params = spec.vary.apply(&spec.base, value).with_duplex(spec.duplex);
        params.validate()?;
        for &scheme in &schemes {
            if let Some(result) = evaluate(scheme, &params, opt)? {
                rows.push(SweepRow {
                    vary: spec.vary,
                    value,
                    scheme,
                    result,
                    regime: regime_label(scheme, &params),
                });
            }
        }
    }
    Ok(rows)
}

/// `%.12g`-style formatting: 12 significant digits, no trailing zeros,
/// locale independent.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.11e}", x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!(
            "{}e{}{:02}",
            trim_zeros(mantissa.to_string()),
            if exp < 0 { '-' } else { '+' },
            exp.abs()
        )
    }
}

fn trim_zeros(s: String) -> String {
    if !s.contains('.') {
        return s;
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt_sig).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{},{}",
            r.vary.column_name(),
            fmt_sig(r.value),
            r.scheme.id(),
            fmt_sig(r.result.rate),
            opt(r.result.alpha),
            opt(r.result.beta),
            opt(r.result.alpha2),
            opt(r.result.share),
            r.result.switched,
            r.regime,
        )?;
    }
    out.flush()
}

/// One flat JSON object per row, same columns as the CSV.
#[derive(Debug, Serialize)]
pub struct JsonRow {
    pub varied_param: &'static str,
    pub value: f64,
    pub scheme: &'static str,
    pub rate_bits: f64,
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    pub alpha2: Option<f64>,
    pub share: Option<f64>,
    pub switched: bool,
    pub regime: &'static str,
}

impl From<&SweepRow> for JsonRow {
    fn from(r: &SweepRow) -> Self {
        JsonRow {
            varied_param: r.vary.column_name(),
            value: r.value,
            scheme: r.scheme.id(),
            rate_bits: r.result.rate,
            alpha: r.result.alpha,
            beta: r.result.beta,
            alpha2: r.result.alpha2,
            share: r.result.share,
            switched: r.result.switched,
            regime: r.regime,
        }
    }
}

pub fn write_json<W: Write>(rows: &[SweepRow], mut out: W) -> io::Result<()> {
    let json: Vec<JsonRow> = rows.iter().map(JsonRow::from).collect();
    serde_json::to_writer_pretty(&mut out, &json)?;
    writeln!(out)?;
    out.flush()
}
