//! Downward-closed convex rate regions in the (private, common) plane.

use serde::{Deserialize, Serialize};

use crate::channel::TOL;
use crate::error::{check_nonneg, Result};

/// A (private rate, common rate) operating point for one hop.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct RatePair {
    pub rp: f64,
    pub rc: f64,
}

impl RatePair {
    pub const ORIGIN: RatePair = RatePair { rp: 0.0, rc: 0.0 };

    pub const fn new(rp: f64, rc: f64) -> Self {
        Self { rp, rc }
    }

    pub fn checked(rp: f64, rc: f64) -> Result<Self> {
        Ok(Self {
            rp: check_nonneg("rp", rp)?,
            rc: check_nonneg("rc", rc)?,
        })
    }

    pub fn sum(&self) -> f64 {
        self.rp + self.rc
    }

    /// Componentwise `self <= other` within [`TOL`].
    pub fn dominated_by(&self, other: &RatePair) -> bool {
        self.rp <= other.rp + TOL && self.rc <= other.rc + TOL
    }

    fn lerp(&self, other: &RatePair, t: f64) -> RatePair {
        RatePair::new(
            self.rp + t * (other.rp - self.rp),
            self.rc + t * (other.rc - self.rc),
        )
    }
}

/// Region described by the corners of its upper-right boundary.
///
/// Corners are sorted by strictly increasing `rp` and strictly decreasing
/// `rc`, and form a concave chain. The region is everything componentwise
/// below the convex hull of the corners, clipped to the nonnegative quadrant.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateRegion {
    corners: Vec<RatePair>,
}

impl RateRegion {
    pub fn origin() -> Self {
        Self {
            corners: vec![RatePair::ORIGIN],
        }
    }

    /// Smallest downward-closed convex region containing every point.
    pub fn hull_of<I: IntoIterator<Item = RatePair>>(points: I) -> Self {
        let mut pts: Vec<RatePair> = points.into_iter().collect();
        if pts.is_empty() {
            return Self::origin();
        }
        pts.sort_by(|x, y| y.rp.total_cmp(&x.rp).then(y.rc.total_cmp(&x.rc)));

        // Pareto front, scanned right to left.
        let mut front: Vec<RatePair> = Vec::with_capacity(pts.len());
        let mut best_rc = f64::NEG_INFINITY;
        for p in pts {
            if p.rc > best_rc + TOL {
                best_rc = p.rc;
                front.push(p);
            }
        }
        front.reverse();

        let mut chain: Vec<RatePair> = Vec::with_capacity(front.len());
        for q in front {
            while chain.len() >= 2 {
                let o = chain[chain.len() - 2];
                let m = chain[chain.len() - 1];
                let cross = (m.rp - o.rp) * (q.rc - o.rc) - (m.rc - o.rc) * (q.rp - o.rp);
                // keep m only on a strict clockwise turn
                if cross > -TOL * TOL {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(q);
        }
        Self { corners: chain }
    }

    pub fn corners(&self) -> &[RatePair] {
        &self.corners
    }

    fn first(&self) -> RatePair {
        self.corners[0]
    }

    fn last(&self) -> RatePair {
        self.corners[self.corners.len() - 1]
    }

    /// Largest common rate available at private rate `rp`, or `None` past the
    /// region's right edge.
    pub fn upper_rc(&self, rp: f64) -> Option<f64> {
        let (first, last) = (self.first(), self.last());
        if rp > last.rp + TOL {
            return None;
        }
        if rp <= first.rp {
            return Some(first.rc);
        }
        if rp >= last.rp {
            return Some(last.rc);
        }
        let k = self.corners.partition_point(|c| c.rp <= rp);
        let (lo, hi) = (self.corners[k - 1], self.corners[k]);
        let t = (rp - lo.rp) / (hi.rp - lo.rp);
        Some(lo.rc + t * (hi.rc - lo.rc))
    }

    pub fn contains(&self, p: &RatePair) -> bool {
        if p.rp < -TOL || p.rc < -TOL {
            return false;
        }
        match self.upper_rc(p.rp.min(self.last().rp)) {
            Some(rc) => p.rp <= self.last().rp + TOL && p.rc <= rc + TOL,
            None => false,
        }
    }

    /// Largest `rp + rc` in the region; ties resolved to the smallest `rp`.
    pub fn max_sum(&self) -> (f64, RatePair) {
        pick_max_sum(self.corners.iter().copied())
    }

    /// Vertices of the closed boundary: left axis point, corners, bottom
    /// axis point.
    fn outline(&self) -> Vec<RatePair> {
        let mut v = Vec::with_capacity(self.corners.len() + 2);
        v.push(RatePair::new(0.0, self.first().rc));
        v.extend_from_slice(&self.corners);
        v.push(RatePair::new(self.last().rp, 0.0));
        v
    }

    /// Points on the Pareto boundary: every corner, plus `per_segment`
    /// evenly spaced points (endpoints included) on each corner-to-corner
    /// segment.
    pub fn boundary_samples(&self, per_segment: usize) -> Vec<RatePair> {
        if self.corners.len() == 1 || per_segment < 2 {
            return self.corners.clone();
        }
        let mut out = vec![self.first()];
        for w in self.corners.windows(2) {
            let steps = per_segment - 1;
            for i in 1..=steps {
                out.push(w[0].lerp(&w[1], i as f64 / steps as f64));
            }
        }
        out
    }
}

/// Downward-closed rectangle generated by a single operating point.
pub fn rect_region(point: RatePair) -> RateRegion {
    RateRegion {
        corners: vec![point],
    }
}

/// Convex closure of the union of two regions (time sharing).
pub fn convex_union(r1: &RateRegion, r2: &RateRegion) -> RateRegion {
    RateRegion::hull_of(r1.corners.iter().chain(r2.corners.iter()).copied())
}

/// Maximizes `rp + rc` over `hop1 ∩ hop2`.
///
/// The optimum of a linear objective over a convex polygon sits at a vertex,
/// so it suffices to check each region's boundary vertices that lie in the
/// other region, plus the crossings of the two boundaries. Ties go to the
/// smallest `rp`.
pub fn max_sum_in_intersection(hop1: &RateRegion, hop2: &RateRegion) -> (f64, RatePair) {
    let o1 = hop1.outline();
    let o2 = hop2.outline();
    let mut cands = vec![RatePair::ORIGIN];
    cands.extend(o1.iter().filter(|p| hop2.contains(p)));
    cands.extend(o2.iter().filter(|p| hop1.contains(p)));
    for s in o1.windows(2) {
        for t in o2.windows(2) {
            if let Some(x) = segment_crossing(s[0], s[1], t[0], t[1]) {
                cands.push(x);
            }
        }
    }
    pick_max_sum(cands)
}

fn pick_max_sum<I: IntoIterator<Item = RatePair>>(points: I) -> (f64, RatePair) {
    let pts: Vec<RatePair> = points.into_iter().collect();
    let best = pts
        .iter()
        .map(RatePair::sum)
        .fold(f64::NEG_INFINITY, f64::max);
    let chosen = pts
        .into_iter()
        .filter(|p| p.sum() >= best - TOL)
        .min_by(|x, y| x.rp.total_cmp(&y.rp))
        .unwrap_or(RatePair::ORIGIN);
    (chosen.sum(), chosen)
}

fn segment_crossing(p0: RatePair, p1: RatePair, q0: RatePair, q1: RatePair) -> Option<RatePair> {
    let d = RatePair::new(p1.rp - p0.rp, p1.rc - p0.rc);
    let e = RatePair::new(q1.rp - q0.rp, q1.rc - q0.rc);
    let denom = d.rp * e.rc - d.rc * e.rp;
    if denom.abs() < 1e-300 {
        return None;
    }
    let w = RatePair::new(q0.rp - p0.rp, q0.rc - p0.rc);
    let t = (w.rp * e.rc - w.rc * e.rp) / denom;
    let u = (w.rp * d.rc - w.rc * d.rp) / denom;
    let eps = 1e-12;
    if (-eps..=1.0 + eps).contains(&t) && (-eps..=1.0 + eps).contains(&u) {
        Some(p0.lerp(&p1, t.clamp(0.0, 1.0)))
    } else {
        None
    }
}
