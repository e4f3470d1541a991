//! Brute-force reference for the decode-and-forward rates.
//!
//! Written independently of the library: its own formula transcriptions, a
//! dense exhaustive grid instead of refinement, and the hop-2 time sharing
//! parameterized directly by the DPC fraction `lam` rather than through
//! corner chains.

#![allow(dead_code)]

pub const GRID: usize = 1001;

fn c(x: f64) -> f64 {
    0.5 * (1.0 + x).log2()
}

fn grid(n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |k| k as f64 / (n - 1) as f64)
}

/// One regime's formula family, indexed by the three split fractions.
#[derive(Clone, Copy)]
pub struct Formulas {
    a: f64,
    b: f64,
    p1: f64,
    p2: f64,
    switched: bool,
}

impl Formulas {
    pub fn new(a: f64, b: f64, p1: f64, p2: f64) -> Self {
        Self {
            a,
            b,
            p1,
            p2,
            switched: a > 1.0,
        }
    }

    pub fn hop1(&self, al: f64) -> (f64, f64) {
        let (a2, p) = (self.a * self.a, self.p1);
        let pr = al * p;
        let cm = (1.0 - al) * p;
        let n1 = 1.0 + (1.0 + a2) * pr;
        if self.switched {
            (
                c(a2 * pr / (1.0 + pr)),
                c(cm / n1).min(0.5 * c((1.0 + a2) * cm / n1)),
            )
        } else {
            (
                c(pr / (1.0 + a2 * pr)),
                c(a2 * cm / n1).min(0.5 * c((1.0 + a2) * cm / n1)),
            )
        }
    }

    pub fn dpc(&self, be: f64) -> (f64, f64) {
        let (b2, p) = (self.b * self.b, self.p2);
        let pr = be * p;
        let cm = (1.0 - be) * p;
        let n2 = 1.0 + (1.0 + b2) * pr;
        let q = cm / n2;
        let rc = 0.5 * c((b2 - 1.0) * (b2 - 1.0) * q * q + 2.0 * (1.0 + b2) * q);
        let rp = if self.switched {
            c(b2 * pr / (1.0 + pr))
        } else {
            c(pr / (1.0 + b2 * pr))
        };
        (rp, rc)
    }

    /// Whether the MAC mode has a sub-private split (weak second hop after
    /// any role switch).
    fn mac_has_split(&self) -> bool {
        if self.switched {
            self.b >= 1.0
        } else {
            self.b <= 1.0
        }
    }

    pub fn mac(&self, be: f64, al2: f64) -> (f64, f64) {
        let (b, p) = (self.b, self.p2);
        let b2 = b * b;
        let pr = be * p;
        let rc = 0.5 * c((1.0 + b) * (1.0 + b) * (1.0 - be) * p / (1.0 + (1.0 + b2) * pr));
        let rp = if self.mac_has_split() {
            let sub = (1.0 - al2) * pr;
            let own = al2 * pr;
            let n3 = 1.0 + (1.0 + b2) * own;
            let (cross, direct) = if self.switched {
                (sub / n3, c(b2 * own / (1.0 + own)))
            } else {
                (b2 * sub / n3, c(own / (1.0 + b2 * own)))
            };
            c(cross).min(0.5 * c((1.0 + b2) * sub / n3)) + direct
        } else {
            let gain = if self.switched { b2 } else { 1.0 };
            c(gain * pr).min(0.5 * c((1.0 + b2) * pr))
        };
        (rp, rc)
    }

    /// MAC point with the private rate maximized over a dense `alpha2` grid.
    pub fn mac_best(&self, be: f64, n: usize) -> (f64, f64) {
        if !self.mac_has_split() {
            return self.mac(be, 0.0);
        }
        grid(n)
            .map(|al2| self.mac(be, al2))
            .fold(
                (f64::NEG_INFINITY, 0.0),
                |acc, m| if m.0 > acc.0 { m } else { acc },
            )
    }
}

/// `max rp + rc` with `rp <= h.0`, `rc <= h.1` and `(rp, rc)` dominated by
/// `lam·d + (1 - lam)·m` for some `lam` in `[0, 1]`. The objective is
/// concave piecewise linear in `lam`, so its breakpoints suffice.
pub fn clipped_sum(h: (f64, f64), d: (f64, f64), m: (f64, f64)) -> f64 {
    let f = |lam: f64| {
        let x = lam * d.0 + (1.0 - lam) * m.0;
        let y = lam * d.1 + (1.0 - lam) * m.1;
        h.0.min(x) + h.1.min(y)
    };
    let mut best = f(0.0).max(f(1.0));
    for (cap, di, mi) in [(h.0, d.0, m.0), (h.1, d.1, m.1)] {
        if di != mi {
            let lam = (cap - mi) / (di - mi);
            if (0.0..=1.0).contains(&lam) {
                best = best.max(f(lam));
            }
        }
    }
    best
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub enum Hop2 {
    Both,
    Dpc,
    Mac,
}

/// Exhaustive full-duplex rate on an `n`-point grid in each of alpha, beta
/// and alpha2. The `alpha2` maximum is taken per beta: the hop-2 region only
/// grows with the MAC private rate, so this equals the joint maximum.
pub fn df_rate(a: f64, b: f64, p1: f64, p2: f64, which: Hop2, n: usize) -> f64 {
    let f = Formulas::new(a, b, p1, p2);
    let hop1: Vec<_> = grid(n).map(|al| f.hop1(al)).collect();
    let mut best = 0.0f64;
    for be in grid(n) {
        let d = f.dpc(be);
        let m = f.mac_best(be, n);
        let (d, m) = match which {
            Hop2::Both => (d, m),
            Hop2::Dpc => (d, d),
            Hop2::Mac => (m, m),
        };
        for &h in &hop1 {
            best = best.max(clipped_sum(h, d, m));
        }
    }
    best
}

/// Half-duplex rate on an `n`-point (alpha, beta) grid, with the hop-2
/// point swept over the time-sharing boundary (`per_segment` samples on each
/// of the three boundary pieces).
pub fn half_duplex_rate(a: f64, b: f64, p1: f64, p2: f64, n: usize, per_segment: usize) -> f64 {
    let f = Formulas::new(a, b, p1, p2);
    let hop1: Vec<_> = grid(n).map(|al| f.hop1(al)).collect();
    let ratio = |x: f64, y: f64| {
        if x <= 0.0 {
            Some(0.0)
        } else if y <= 0.0 {
            None
        } else {
            Some(x / y)
        }
    };
    let mut best = 0.0f64;
    for be in grid(n) {
        let d = f.dpc(be);
        let m = f.mac_best(be, n);
        let boundary = boundary_points(d, m, per_segment);
        for &h in &hop1 {
            for q in &boundary {
                if let (Some(u), Some(v)) = (ratio(h.0, q.0), ratio(h.1, q.1)) {
                    best = best.max((h.0 + h.1) / (1.0 + u.max(v)));
                }
            }
        }
    }
    best
}

/// Pareto boundary of `conv(rect(d) ∪ rect(m))`: the segment between the two
/// corners when neither dominates, plus the axis-aligned edges out to the
/// axes.
fn boundary_points(d: (f64, f64), m: (f64, f64), k: usize) -> Vec<(f64, f64)> {
    let (top, right) = if d.1 >= m.1 { (d, m) } else { (m, d) };
    let mut chain = vec![(0.0, top.1), top];
    if right.0 > top.0 {
        chain.push(right);
    }
    let last = *chain.last().unwrap();
    chain.push((last.0, 0.0));
    let mut out = Vec::new();
    for w in chain.windows(2) {
        for t in grid(k) {
            out.push((
                w[0].0 + t * (w[1].0 - w[0].0),
                w[0].1 + t * (w[1].1 - w[0].1),
            ));
        }
    }
    out
}
