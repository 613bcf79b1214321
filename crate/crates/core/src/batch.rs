//! Grid sweeps and batch evaluation.
//!
//! With the `parallel` feature (on by default) [`map_indices`] fans out over
//! rayon's pool; without it, everything runs on the calling thread. Output
//! order is the index order either way.

use std::fmt;
use std::str::FromStr;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::chainfile::fmt_sig17;
use crate::wigner::{closure_residual, wigner_angle};

/// Evaluates `f(0), …, f(n-1)` and returns results in index order.
pub fn map_indices<T, F>(n: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_indices_sequential(n, f)
    }
}

/// Single-threaded [`map_indices`], available regardless of features.
pub fn map_indices_sequential<T, F>(n: usize, f: F) -> Vec<T>
where
    F: Fn(usize) -> T,
{
    (0..n).map(f).collect()
}

/// Inclusive, evenly spaced `start:end:count` range.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LinRange {
    pub start: f64,
    pub end: f64,
    pub count: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RangeError(pub String);

impl fmt::Display for RangeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for RangeError {}

impl LinRange {
    pub fn new(start: f64, end: f64, count: usize) -> Result<Self, RangeError> {
        if !start.is_finite() || !end.is_finite() {
            return Err(RangeError("range bounds must be finite".into()));
        }
        if !(start < end) {
            return Err(RangeError(format!("range needs start < end, got {start}:{end}")));
        }
        if count < 2 {
            return Err(RangeError(format!("range needs at least 2 points, got {count}")));
        }
        Ok(LinRange { start, end, count })
    }

    pub fn value(&self, i: usize) -> f64 {
        if i + 1 == self.count {
            self.end
        } else {
            self.start + (self.end - self.start) * i as f64 / (self.count - 1) as f64
        }
    }

    pub fn values(&self) -> Vec<f64> {
        (0..self.count).map(|i| self.value(i)).collect()
    }
}

impl FromStr for LinRange {
    type Err = RangeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let [a, b, n] = parts[..] else {
            return Err(RangeError(format!("expected a:b:n, got `{s}`")));
        };
        let num = |t: &str| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| RangeError(format!("bad number `{t}` in range `{s}`")))
        };
        let count = n
            .trim()
            .parse::<usize>()
            .map_err(|_| RangeError(format!("bad count `{n}` in range `{s}`")))?;
        LinRange::new(num(a)?, num(b)?, count)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SweepRow {
    pub eta: f64,
    pub theta: f64,
    pub omega: f64,
    pub residual: f64,
}

fn sweep_row(etas: &LinRange, thetas: &LinRange, k: usize) -> SweepRow {
    let eta = etas.value(k / thetas.count);
    let theta = thetas.value(k % thetas.count);
    SweepRow {
        eta,
        theta,
        omega: wigner_angle(eta, theta),
        residual: closure_residual(eta, theta),
    }
}

/// Wigner angle and closure residual over the grid, `eta`-major.
pub fn wigner_sweep(etas: &LinRange, thetas: &LinRange) -> Vec<SweepRow> {
    map_indices(etas.count * thetas.count, |k| sweep_row(etas, thetas, k))
}

pub fn wigner_sweep_sequential(etas: &LinRange, thetas: &LinRange) -> Vec<SweepRow> {
    map_indices_sequential(etas.count * thetas.count, |k| sweep_row(etas, thetas, k))
}

pub const SWEEP_HEADER: &str = "eta,theta,omega_rad,residual_maxabs";

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(rows.len() * 80 + 40);
    out.push_str(SWEEP_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{}\n",
            fmt_sig17(r.eta),
            fmt_sig17(r.theta),
            fmt_sig17(r.omega),
            fmt_sig17(r.residual)
        ));
    }
    out
}
