//! Decode-and-forward relaying.
//!
//! Hop 1 uses Han–Kobayashi rate splitting with sequential decoding. Hop 2
//! time-shares between a dirty-paper-coding mode and a compound-MAC mode.
//! When the first hop has strong interference (`a > 1`) the relays swap
//! roles, which turns both hops' cross gains into `1/a`, `1/b`; the
//! `*_switched` formulas are written in terms of the original gains with the
//! resulting noise rescaling already folded in.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::channel::{gamma_unchecked as g, ChannelParams, Duplex, TOL};
use crate::error::{check_fraction, check_nonneg, Error, Result};
use crate::optimize::{maximize, OptimizerSpec};
use crate::region::{convex_union, max_sum_in_intersection, rect_region, RatePair, RateRegion};
use crate::scheme::{SchemeKind, SchemeResult};

/// Hop-2 boundary points per segment searched by the half-duplex rate.
pub const HALF_DUPLEX_SEGMENT_POINTS: usize = 101;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PowerSplit {
    /// Fraction of `P1` on the hop-1 private messages.
    pub alpha: f64,
    /// Fraction of `P2` on the hop-2 private messages.
    pub beta: f64,
    /// Fraction of the hop-2 private power on the sub-private part (MAC mode).
    pub alpha2: f64,
}

impl PowerSplit {
    pub fn new(alpha: f64, beta: f64, alpha2: f64) -> Result<Self> {
        Ok(Self {
            alpha: check_fraction("alpha", alpha)?,
            beta: check_fraction("beta", beta)?,
            alpha2: check_fraction("alpha2", alpha2)?,
        })
    }
}

/// Power allocation inside the general MAC-mode region.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MacRegionPowers {
    pub pp: f64,
    pub pc1: f64,
    pub pc2: f64,
    pub ppc: f64,
    pub ppp: f64,
}

impl MacRegionPowers {
    pub fn new(p2: f64, pp: f64, pc1: f64, pc2: f64, ppc: f64, ppp: f64) -> Result<Self> {
        for (name, v) in [
            ("Pp", pp),
            ("Pc1", pc1),
            ("Pc2", pc2),
            ("Ppc", ppc),
            ("Ppp", ppp),
        ] {
            check_nonneg(name, v)?;
        }
        let scale = 1.0 + p2.abs();
        if (pp + pc1 + pc2 - p2).abs() > TOL * scale {
            return Err(Error::domain(
                "Pp + Pc1 + Pc2",
                pp + pc1 + pc2,
                "equal to P2",
            ));
        }
        if (ppc + ppp - pp).abs() > TOL * scale {
            return Err(Error::domain("Ppc + Ppp", ppc + ppp, "equal to Pp"));
        }
        Ok(Self {
            pp,
            pc1,
            pc2,
            ppc,
            ppp,
        })
    }
}

/// Upper bounds of the seven MAC-mode inequalities, as displayed: three on
/// the common rate (the last bounds `2·Rc`), three on the sub-common rate
/// (the last bounds `2·Rpc`), one on the sub-private rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MacBounds {
    pub rc: [f64; 3],
    pub rpc: [f64; 3],
    pub rpp: f64,
}

impl MacBounds {
    pub fn max_rc(&self) -> f64 {
        self.rc[0].min(self.rc[1]).min(0.5 * self.rc[2])
    }

    pub fn max_rpc(&self) -> f64 {
        self.rpc[0].min(self.rpc[1]).min(0.5 * self.rpc[2])
    }
}

pub fn mac_region_general(b: f64, powers: &MacRegionPowers) -> Result<MacBounds> {
    check_nonneg("b", b)?;
    let MacRegionPowers {
        pp,
        pc1,
        pc2,
        ppc,
        ppp,
    } = *powers;
    let b2 = b * b;
    let beam1 = (pc1.sqrt() + b * pc2.sqrt()).powi(2);
    let beam2 = (pc2.sqrt() + b * pc1.sqrt()).powi(2);
    let noise_c = 1.0 + (1.0 + b2) * pp;
    let noise_pc = 1.0 + (1.0 + b2) * ppp;
    Ok(MacBounds {
        rc: [
            g(beam1 / noise_c),
            g(beam2 / noise_c),
            g((beam1 + beam2) / noise_c),
        ],
        rpc: [
            g(ppc / noise_pc),
            g(b2 * ppc / noise_pc),
            g((1.0 + b2) * ppc / noise_pc),
        ],
        rpp: g(ppp / (1.0 + b2 * ppp)),
    })
}

fn hk_raw(a: f64, p1: f64, alpha: f64) -> RatePair {
    let a2 = a * a;
    let s1 = 1.0 + (1.0 + a2) * alpha * p1;
    let common = (1.0 - alpha) * p1;
    RatePair::new(
        g(alpha * p1 / (1.0 + a2 * alpha * p1)),
        g(a2 * common / s1).min(0.5 * g((1.0 + a2) * common / s1)),
    )
}

fn hk_switched_raw(a: f64, p1: f64, alpha: f64) -> RatePair {
    let a2 = a * a;
    let s1 = 1.0 + (1.0 + a2) * alpha * p1;
    let common = (1.0 - alpha) * p1;
    RatePair::new(
        g(a2 * alpha * p1 / (1.0 + alpha * p1)),
        g(common / s1).min(0.5 * g((1.0 + a2) * common / s1)),
    )
}

fn dpc_common(b: f64, p2: f64, beta: f64) -> f64 {
    let b2 = b * b;
    let s2 = 1.0 + (1.0 + b2) * beta * p2;
    let common = (1.0 - beta) * p2;
    let x = (1.0 - b2).powi(2) * common * common / (s2 * s2) + 2.0 * (1.0 + b2) * common / s2;
    0.5 * g(x)
}

fn dpc_raw(b: f64, p2: f64, beta: f64) -> RatePair {
    RatePair::new(
        g(beta * p2 / (1.0 + b * b * beta * p2)),
        dpc_common(b, p2, beta),
    )
}

fn dpc_switched_raw(b: f64, p2: f64, beta: f64) -> RatePair {
    RatePair::new(
        g(b * b * beta * p2 / (1.0 + beta * p2)),
        dpc_common(b, p2, beta),
    )
}

fn mac_common(b: f64, p2: f64, beta: f64) -> f64 {
    0.5 * g((1.0 + b).powi(2) * (1.0 - beta) * p2 / (1.0 + (1.0 + b * b) * beta * p2))
}

fn mac_raw(b: f64, p2: f64, beta: f64, alpha2: f64) -> RatePair {
    let b2 = b * b;
    let private = beta * p2;
    let s3 = 1.0 + (1.0 + b2) * alpha2 * private;
    let sub_common = (1.0 - alpha2) * private;
    let rp = g(b2 * sub_common / s3).min(0.5 * g((1.0 + b2) * sub_common / s3))
        + g(alpha2 * private / (1.0 + b2 * alpha2 * private));
    RatePair::new(rp, mac_common(b, p2, beta))
}

fn mac_switched_raw(b: f64, p2: f64, beta: f64, alpha2: f64) -> RatePair {
    let b2 = b * b;
    let private = beta * p2;
    let s3 = 1.0 + (1.0 + b2) * alpha2 * private;
    let sub_common = (1.0 - alpha2) * private;
    let rp = g(sub_common / s3).min(0.5 * g((1.0 + b2) * sub_common / s3))
        + g(b2 * alpha2 * private / (1.0 + alpha2 * private));
    RatePair::new(rp, mac_common(b, p2, beta))
}

fn mac_strong_raw(b: f64, p2: f64, beta: f64, switched: bool) -> RatePair {
    let b2 = b * b;
    let private = beta * p2;
    let direct = if switched { b2 * private } else { private };
    RatePair::new(
        g(direct).min(0.5 * g((1.0 + b2) * private)),
        mac_common(b, p2, beta),
    )
}

/// Hop-1 Han–Kobayashi pair for weak interference.
pub fn hk_hop1(a: f64, p1: f64, alpha: f64) -> Result<RatePair> {
    check_nonneg("a", a)?;
    check_nonneg("P1", p1)?;
    check_fraction("alpha", alpha)?;
    Ok(hk_raw(a, p1, alpha))
}

/// Hop-1 pair after role switching; `a` is the original (strong) gain.
pub fn hk_hop1_switched(a: f64, p1: f64, alpha: f64) -> Result<RatePair> {
    check_nonneg("a", a)?;
    check_nonneg("P1", p1)?;
    check_fraction("alpha", alpha)?;
    Ok(hk_switched_raw(a, p1, alpha))
}

/// Hop-2 dirty-paper-coding pair.
pub fn dpc_hop2(b: f64, p2: f64, beta: f64) -> Result<RatePair> {
    check_nonneg("b", b)?;
    check_nonneg("P2", p2)?;
    check_fraction("beta", beta)?;
    Ok(dpc_raw(b, p2, beta))
}

pub fn dpc_hop2_switched(b: f64, p2: f64, beta: f64) -> Result<RatePair> {
    check_nonneg("b", b)?;
    check_nonneg("P2", p2)?;
    check_fraction("beta", beta)?;
    Ok(dpc_switched_raw(b, p2, beta))
}

/// Hop-2 MAC-mode pair at a fixed sub-private fraction `alpha2`, weak
/// second hop. Maximizing over `alpha2` is left to the caller.
pub fn mac_hop2(b: f64, p2: f64, beta: f64, alpha2: f64) -> Result<RatePair> {
    check_nonneg("b", b)?;
    check_nonneg("P2", p2)?;
    check_fraction("beta", beta)?;
    check_fraction("alpha2", alpha2)?;
    Ok(mac_raw(b, p2, beta, alpha2))
}

/// MAC-mode pair after role switching, weak transformed second hop (`b >= 1`).
pub fn mac_hop2_switched(b: f64, p2: f64, beta: f64, alpha2: f64) -> Result<RatePair> {
    check_nonneg("b", b)?;
    check_nonneg("P2", p2)?;
    check_fraction("beta", beta)?;
    check_fraction("alpha2", alpha2)?;
    Ok(mac_switched_raw(b, p2, beta, alpha2))
}

/// MAC-mode pair for a strong second hop: every message is decoded at both
/// destinations, so there is no sub-private part.
pub fn mac_hop2_strong(b: f64, p2: f64, beta: f64, switched: bool) -> Result<RatePair> {
    check_nonneg("b", b)?;
    check_nonneg("P2", p2)?;
    check_fraction("beta", beta)?;
    Ok(mac_strong_raw(b, p2, beta, switched))
}

/// Which hop-2 modes the end-to-end optimization may use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SecondHop {
    Combined,
    DpcOnly,
    MacOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum MacForm {
    Weak,
    WeakSwitched,
    Strong,
    StrongSwitched,
}

/// The formula family selected by the regime of `(a, b)`.
#[derive(Debug, Clone, Copy)]
struct Family {
    a: f64,
    b: f64,
    p1: f64,
    p2: f64,
    switched: bool,
    mac: MacForm,
}

impl Family {
    fn select(params: &ChannelParams) -> Result<Self> {
        params.validate()?;
        let switched = params.a > 1.0;
        let mac = if switched {
            // transformed cross gain 1/b is strong iff b < 1; b = 0 is allowed
            if params.b < 1.0 {
                MacForm::StrongSwitched
            } else {
                MacForm::WeakSwitched
            }
        } else if params.b > 1.0 {
            MacForm::Strong
        } else {
            MacForm::Weak
        };
        Ok(Self {
            a: params.a,
            b: params.b,
            p1: params.p1,
            p2: params.p2,
            switched,
            mac,
        })
    }

    fn hop1(&self, alpha: f64) -> RatePair {
        if self.switched {
            hk_switched_raw(self.a, self.p1, alpha)
        } else {
            hk_raw(self.a, self.p1, alpha)
        }
    }

    fn dpc(&self, beta: f64) -> RatePair {
        if self.switched {
            dpc_switched_raw(self.b, self.p2, beta)
        } else {
            dpc_raw(self.b, self.p2, beta)
        }
    }

    fn has_alpha2(&self) -> bool {
        matches!(self.mac, MacForm::Weak | MacForm::WeakSwitched)
    }

    fn mac(&self, beta: f64, alpha2: f64) -> RatePair {
        match self.mac {
            MacForm::Weak => mac_raw(self.b, self.p2, beta, alpha2),
            MacForm::WeakSwitched => mac_switched_raw(self.b, self.p2, beta, alpha2),
            MacForm::Strong => mac_strong_raw(self.b, self.p2, beta, false),
            MacForm::StrongSwitched => mac_strong_raw(self.b, self.p2, beta, true),
        }
    }

    fn kind(&self) -> SchemeKind {
        if self.switched {
            SchemeKind::DfSwitched
        } else {
            SchemeKind::DfDirect
        }
    }
}

/// MAC corner with `R_p` maximized over `alpha2`, memoized per `beta`.
///
/// The hop-2 region only grows with the MAC private rate, so the inner
/// maximum can be taken before the outer search without changing the optimum.
struct MacBest<'a> {
    family: &'a Family,
    spec: &'a OptimizerSpec,
    cache: HashMap<u64, Option<(RatePair, Option<f64>)>>,
}

impl<'a> MacBest<'a> {
    fn new(family: &'a Family, spec: &'a OptimizerSpec) -> Self {
        Self {
            family,
            spec,
            cache: HashMap::new(),
        }
    }

    fn get(&mut self, beta: f64) -> Option<(RatePair, Option<f64>)> {
        let (family, spec) = (self.family, self.spec);
        *self.cache.entry(beta.to_bits()).or_insert_with(|| {
            if !family.has_alpha2() {
                return Some((family.mac(beta, 0.0), None));
            }
            let best = maximize(1, spec, |x| family.mac(beta, x[0]).rp).ok()?;
            let alpha2 = best.argmax[0];
            Some((family.mac(beta, alpha2), Some(alpha2)))
        })
    }
}

fn hop2_region(which: SecondHop, dpc: RatePair, mac: RatePair) -> RateRegion {
    match which {
        SecondHop::Combined => convex_union(&rect_region(dpc), &rect_region(mac)),
        SecondHop::DpcOnly => rect_region(dpc),
        SecondHop::MacOnly => rect_region(mac),
    }
}

/// Smallest DPC time fraction `λ` with `x <= λ·dpc + (1-λ)·mac`.
pub fn time_share(x: &RatePair, dpc: &RatePair, mac: &RatePair) -> f64 {
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for (xi, di, mi) in [(x.rp, dpc.rp, mac.rp), (x.rc, dpc.rc, mac.rc)] {
        let diff = di - mi;
        if diff > 0.0 {
            lo = lo.max((xi - TOL - mi) / diff);
        } else if diff < 0.0 {
            hi = hi.min((mi - xi + TOL) / -diff);
        }
    }
    lo.min(hi).clamp(0.0, 1.0)
}

/// End-to-end full-duplex decode-and-forward rate (Han–Kobayashi hop 1,
/// DPC/MAC time sharing on hop 2), with role switching when `a > 1`.
pub fn df_rate(params: &ChannelParams, spec: &OptimizerSpec) -> Result<SchemeResult> {
    df_rate_with(params, SecondHop::Combined, spec)
}

pub fn df_rate_with(
    params: &ChannelParams,
    which: SecondHop,
    spec: &OptimizerSpec,
) -> Result<SchemeResult> {
    if params.duplex != Duplex::Full {
        return Err(Error::Contract(
            "df_rate needs full-duplex relays; use half_duplex_rate",
        ));
    }
    let family = Family::select(params)?;
    let mut mac_best = MacBest::new(&family, spec);
    let mut objective = |which: SecondHop, alpha: f64, beta: f64| {
        let Some((mac, _)) = mac_best.get(beta) else {
            return f64::NAN;
        };
        let hop1 = rect_region(family.hop1(alpha));
        let hop2 = hop2_region(which, family.dpc(beta), mac);
        max_sum_in_intersection(&hop1, &hop2).0
    };

    let best = maximize(2, spec, |x| objective(which, x[0], x[1]))?;
    let (mut alpha, mut beta) = (best.argmax[0], best.argmax[1]);
    if which == SecondHop::Combined {
        // Restart from the single-mode optima: the combined region contains
        // both, so its rate never falls below either single-mode search.
        let mut value = best.value;
        for single in [SecondHop::DpcOnly, SecondHop::MacOnly] {
            let start = maximize(2, spec, |x| objective(single, x[0], x[1]))?;
            let (sa, sb) = (start.argmax[0], start.argmax[1]);
            let v = objective(SecondHop::Combined, sa, sb);
            if v > value {
                (value, alpha, beta) = (v, sa, sb);
            }
        }
    }

    let (mac, alpha2) = mac_best.get(beta).ok_or(Error::NonFinite {
        point: vec![beta],
        value: f64::NAN,
    })?;
    let dpc = family.dpc(beta);
    let hop2 = hop2_region(which, dpc, mac);
    let (rate, point) = max_sum_in_intersection(&rect_region(family.hop1(alpha)), &hop2);

    let (alpha2, share) = match which {
        SecondHop::Combined => (alpha2, time_share(&point, &dpc, &mac)),
        SecondHop::DpcOnly => (None, 1.0),
        SecondHop::MacOnly => (alpha2, 0.0),
    };
    Ok(SchemeResult {
        scheme: family.kind(),
        rate,
        alpha: Some(alpha),
        beta: Some(beta),
        alpha2,
        share: Some(share),
        switched: family.switched,
    })
}

/// Baseline for `a > 1, b > 1`: both relays decode both messages, then
/// broadcast with DPC; no role switching.
pub fn naive_strong_rate(params: &ChannelParams) -> Result<SchemeResult> {
    params.validate()?;
    let ChannelParams { a, b, p1, p2, .. } = *params;
    if a <= 1.0 {
        return Err(Error::domain(
            "a",
            a,
            "> 1 for the strong-interference baseline",
        ));
    }
    if b <= 1.0 {
        return Err(Error::domain(
            "b",
            b,
            "> 1 for the strong-interference baseline",
        ));
    }
    let (hop1, hop2) = naive_strong_hops(a, b, p1, p2);
    Ok(SchemeResult {
        scheme: SchemeKind::DfNaiveStrong,
        rate: hop1.min(hop2),
        alpha: None,
        beta: None,
        alpha2: None,
        share: None,
        switched: false,
    })
}

/// Per-hop rates `(R1, R2)` of the no-switching baseline.
pub fn naive_strong_hops(a: f64, b: f64, p1: f64, p2: f64) -> (f64, f64) {
    let hop1 = g(p1).min(0.5 * g((1.0 + a * a) * p1));
    let hop2 = 0.5 * g((b * b - 1.0).powi(2) * p2 * p2 + 2.0 * p2 * (1.0 + b * b));
    (hop1, hop2)
}

/// Half-duplex rate for a fixed hop-1 point and hop-2 operating point.
///
/// `0/0` ratios count as 0; `x/0` with `x > 0` makes the point infeasible
/// (`None`).
pub fn half_duplex_objective(hop1: &RatePair, hop2: &RatePair) -> Option<f64> {
    fn ratio(x: f64, y: f64) -> Option<f64> {
        if x <= 0.0 {
            Some(0.0)
        } else if y <= 0.0 {
            None
        } else {
            Some(x / y)
        }
    }
    let worst = ratio(hop1.rp, hop2.rp)?.max(ratio(hop1.rc, hop2.rc)?);
    Some(hop1.sum() / (1.0 + worst))
}

/// Half-duplex decode-and-forward rate: hop 2 needs extra channel uses to
/// carry what hop 1 delivered, and the hop-2 point may sit anywhere on the
/// DPC/MAC time-sharing boundary.
pub fn half_duplex_rate(params: &ChannelParams, spec: &OptimizerSpec) -> Result<SchemeResult> {
    if params.duplex != Duplex::Half {
        return Err(Error::Contract(
            "half_duplex_rate needs half-duplex relays; use df_rate",
        ));
    }
    let family = Family::select(params)?;
    let mut mac_best = MacBest::new(&family, spec);

    let best_on_boundary = |hop1: &RatePair, dpc: RatePair, mac: RatePair| {
        let region = convex_union(&rect_region(dpc), &rect_region(mac));
        let mut best = (0.0, RatePair::ORIGIN);
        for p in region.boundary_samples(HALF_DUPLEX_SEGMENT_POINTS) {
            if let Some(r) = half_duplex_objective(hop1, &p) {
                if r > best.0 {
                    best = (r, p);
                }
            }
        }
        best
    };

    let best = maximize(2, spec, |x| {
        let (alpha, beta) = (x[0], x[1]);
        let Some((mac, _)) = mac_best.get(beta) else {
            return f64::NAN;
        };
        best_on_boundary(&family.hop1(alpha), family.dpc(beta), mac).0
    })?;

    let (alpha, beta) = (best.argmax[0], best.argmax[1]);
    let (mac, alpha2) = mac_best.get(beta).ok_or(Error::NonFinite {
        point: vec![beta],
        value: f64::NAN,
    })?;
    let dpc = family.dpc(beta);
    let (rate, point) = best_on_boundary(&family.hop1(alpha), dpc, mac);
    Ok(SchemeResult {
        scheme: SchemeKind::DfHalfDuplex,
        rate,
        alpha: Some(alpha),
        beta: Some(beta),
        alpha2,
        share: Some(time_share(&point, &dpc, &mac)),
        switched: family.switched,
    })
}

/// Hop-1 pair the DF search uses for `params` at private fraction `alpha`.
pub fn hop1_point(params: &ChannelParams, alpha: f64) -> Result<RatePair> {
    check_fraction("alpha", alpha)?;
    Ok(Family::select(params)?.hop1(alpha))
}
