//! Deterministic grid search with local refinement on `[0, 1]^d`.
//!
//! The rate objectives are built from `min` terms and regime switches, so they
//! have kinks everywhere; an exhaustive grid followed by shrinking windows
//! around the incumbent is used instead of anything derivative-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimizerSpec {
    /// Grid points per variable, in the coarse pass and every refinement.
    pub coarse_points: usize,
    pub refine_rounds: usize,
    /// Refinement half-width as a fraction of the previous window width.
    pub shrink: f64,
}

impl Default for OptimizerSpec {
    fn default() -> Self {
        Self {
            coarse_points: 101,
            refine_rounds: 3,
            shrink: 0.1,
        }
    }
}

impl OptimizerSpec {
    pub fn validate(&self) -> Result<()> {
        if self.coarse_points < 2 {
            return Err(Error::OptimizerSpec("coarse_points must be >= 2"));
        }
        if !(self.shrink > 0.0 && self.shrink < 1.0) {
            return Err(Error::OptimizerSpec("shrink must lie in (0, 1)"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    pub value: f64,
    pub argmax: Vec<f64>,
    /// Incumbent value after the coarse pass and after each refinement.
    pub rounds: Vec<f64>,
}

/// Maximizes `objective` over `[0, 1]^dims`.
///
/// Ties are broken toward the lexicographically smallest argument vector.
/// A non-finite objective value aborts the search with the offending point.
pub fn maximize<F>(dims: usize, spec: &OptimizerSpec, mut objective: F) -> Result<Optimum>
where
    F: FnMut(&[f64]) -> f64,
{
    spec.validate()?;
    if !(1..=3).contains(&dims) {
        return Err(Error::OptimizerSpec("dims must be 1, 2 or 3"));
    }
    let n = spec.coarse_points;
    let mut best: Option<(f64, Vec<f64>)> = None;
    let mut rounds = Vec::with_capacity(spec.refine_rounds + 1);

    let coarse: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
    let axes = vec![coarse; dims];
    scan(&axes, &mut objective, &mut best)?;
    rounds.push(best.as_ref().map(|b| b.0).unwrap_or(f64::NEG_INFINITY));

    let mut width = 1.0;
    for _ in 0..spec.refine_rounds {
        let half = spec.shrink * width;
        let center = best.as_ref().map(|b| b.1.clone()).unwrap_or_default();
        let axes: Vec<Vec<f64>> = center
            .iter()
            .map(|&c| {
                let lo = (c - half).max(0.0);
                let hi = (c + half).min(1.0);
                (0..n)
                    .map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64)
                    .collect()
            })
            .collect();
        scan(&axes, &mut objective, &mut best)?;
        rounds.push(best.as_ref().map(|b| b.0).unwrap_or(f64::NEG_INFINITY));
        width = 2.0 * half;
    }

    let (value, argmax) = best.expect("grid has at least two points per axis");
    Ok(Optimum {
        value,
        argmax,
        rounds,
    })
}

fn scan<F>(axes: &[Vec<f64>], objective: &mut F, best: &mut Option<(f64, Vec<f64>)>) -> Result<()>
where
    F: FnMut(&[f64]) -> f64,
{
    let dims = axes.len();
    let mut idx = vec![0usize; dims];
    let mut x: Vec<f64> = axes.iter().map(|a| a[0]).collect();
    loop {
        let v = objective(&x);
        if !v.is_finite() {
            return Err(Error::NonFinite {
                point: x.clone(),
                value: v,
            });
        }
        let better = match best {
            None => true,
            Some((bv, bx)) => v > *bv || (v == *bv && lex_less(&x, bx)),
        };
        if better {
            *best = Some((v, x.clone()));
        }

        // odometer increment, last coordinate fastest
        let mut d = dims;
        loop {
            if d == 0 {
                return Ok(());
            }
            d -= 1;
            idx[d] += 1;
            if idx[d] < axes[d].len() {
                x[d] = axes[d][idx[d]];
                break;
            }
            idx[d] = 0;
            x[d] = axes[d][0];
        }
    }
}

fn lex_less(x: &[f64], y: &[f64]) -> bool {
    for (a, b) in x.iter().zip(y) {
        if a < b {
            return true;
        }
        if a > b {
            return false;
        }
    }
    false
}
