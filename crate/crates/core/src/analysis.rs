//! Parameter studies over pursuer speed with a Euclidean metric.

use std::fmt::Write as _;

use thiserror::Error;

use crate::instance::Instance;
use crate::network::{euclidean_metric, NetworkError, NodeId};
use crate::solver::{solve, SolveError, SolveOptions};
use crate::time;

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("bracket [{lo}, {hi}] does not straddle the positive-delay threshold")]
    BracketInvalid { lo: f64, hi: f64 },
    #[error(transparent)]
    Network(#[from] NetworkError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub speed: f64,
    /// `None` when the speed gives no valid metric on this network.
    pub latest: Option<f64>,
    pub first_move: Option<NodeId>,
}

impl SweepRow {
    pub fn is_valid(&self) -> bool {
        self.latest.is_some()
    }

    /// `max(0, D)`.
    pub fn delay(&self) -> Option<f64> {
        self.latest.map(|d| d.max(0.0))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpeedSweep {
    pub rows: Vec<SweepRow>,
}

impl SpeedSweep {
    /// Header `V,D,delay,mu`; invalid speeds leave the last three fields empty.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("V,D,delay,mu\n");
        for r in &self.rows {
            match (r.latest, r.delay()) {
                (Some(d), Some(delay)) => {
                    let mu = r.first_move.map(|u| u.0.to_string()).unwrap_or_default();
                    let _ = writeln!(out, "{},{},{},{}", r.speed, d, delay, mu);
                }
                _ => {
                    let _ = writeln!(out, "{},,,", r.speed);
                }
            }
        }
        out
    }

    /// Grid indices where the first move differs from the previous valid row.
    pub fn structure_changes(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut prev: Option<Option<NodeId>> = None;
        for (i, r) in self.rows.iter().enumerate().filter(|(_, r)| r.is_valid()) {
            if prev.is_some_and(|p| p != r.first_move) {
                out.push(i);
            }
            prev = Some(r.first_move);
        }
        out
    }

    pub fn is_monotone(&self) -> bool {
        let valid: Vec<f64> = self.rows.iter().filter_map(|r| r.latest).collect();
        valid.windows(2).all(|w| time::le(w[0], w[1]))
    }
}

/// Solves `inst`'s network at one speed; `None` if the speed is too slow
/// for a valid metric.
pub fn solve_at_speed(inst: &Instance, speed: f64, options: SolveOptions) -> Result<SweepRow, AnalysisError> {
    let metric = match euclidean_metric(&inst.network, speed) {
        Ok(m) => m,
        Err(NetworkError::InvalidMetric(_)) | Err(NetworkError::NonPositiveSpeed(_)) => {
            return Ok(SweepRow {
                speed,
                latest: None,
                first_move: None,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let at_speed = inst.with_metric(metric)?;
    let r = solve(&at_speed, None, options)?;
    Ok(SweepRow {
        speed,
        latest: Some(r.root_latest()),
        first_move: r.root_move(),
    })
}

/// One solve per speed, in grid order. `inst`'s own metric is ignored.
pub fn sweep(inst: &Instance, grid: &[f64], options: SolveOptions) -> Result<SpeedSweep, AnalysisError> {
    let rows = grid
        .iter()
        .map(|&v| solve_at_speed(inst, v, options))
        .collect::<Result<_, _>>()?;
    Ok(SpeedSweep { rows })
}

/// `n` speeds evenly spaced over `[lo, hi]`.
pub fn linear_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![lo],
        _ => (0..n)
            .map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64)
            .collect(),
    }
}

pub const DEFAULT_SPEED_TOL: f64 = 1e-4;

/// Infimum speed with a positive tolerable delay, by bisection on the sign
/// of `D(1 | {1..n})` (the value itself can jump when the policy changes
/// shape; its sign cannot go back). Speeds too slow for a valid metric
/// count as "no delay".
pub fn critical_speed(
    inst: &Instance,
    lo: f64,
    hi: f64,
    tol: f64,
    options: SolveOptions,
) -> Result<f64, AnalysisError> {
    let positive = |v: f64| -> Result<bool, AnalysisError> {
        Ok(solve_at_speed(inst, v, options)?
            .latest
            .is_some_and(|d| time::gt(d, 0.0)))
    };
    if !(lo < hi) || positive(lo)? || !positive(hi)? {
        return Err(AnalysisError::BracketInvalid { lo, hi });
    }
    let (mut lo, mut hi) = (lo, hi);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if positive(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
