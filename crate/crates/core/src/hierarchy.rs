//! A numeric stand-in for the time-hierarchy gap condition
//! `f(n) * ln f(n) = o(g(n))`, and the orbit separation it induces.
//!
//! Little-o is not decidable from finitely many samples, so the check is
//! an explicitly labelled heuristic: the ratio `r(n) = f(n) ln f(n) / g(n)`
//! is sampled at geometrically spaced points, in log-space so that
//! astronomically large values cost nothing, and the verdict looks at the
//! tail of the sequence. INCONCLUSIVE is a first-class answer, never an
//! error.

use serde::Serialize;

use crate::dynamics::{scan_separation, ScanMode, SeparationResult};
use crate::error::{Error, Result};
use crate::funcspace::ComplexityFunction;

/// Default number of geometric sample points `n = 2^i`.
///
/// Deep tails matter: slowly closing gaps (polylog factors) only sink
/// below the decision threshold around `n ~ 2^150`, which is still cheap
/// to sample in log-space.
pub const DEFAULT_GAP_POINTS: u32 = 160;

/// How many tail samples the verdict inspects.
const TAIL: usize = 5;

/// Thresholds on the final ratio: below the first, the gap is declared to
/// hold (together with a strictly decreasing tail); a tail that never
/// drops below the second declares it failed.
const HOLD_THRESHOLD: f64 = 0.01;
const FAIL_THRESHOLD: f64 = 0.1;

/// Heuristic verdict on the gap condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum GapVerdict {
    GapHolds,
    GapFails,
    Inconclusive,
}

/// One ratio sample. The ratio is also kept in log form because the plain
/// value often underflows to zero long before the verdict is decided.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapSample {
    /// Sample point; a float because the deep tail exceeds integer range.
    pub n: f64,
    /// `f(n) * ln f(n) / g(n)`, possibly underflown to zero.
    pub ratio: f64,
    pub ln_ratio: f64,
}

/// Sampled gap ratios and the tail verdict.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapTrace {
    pub samples: Vec<GapSample>,
    pub verdict: GapVerdict,
}

impl GapTrace {
    /// CSV interchange form of the samples.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,ratio\n");
        for sample in &self.samples {
            out.push_str(&format!("{},{}\n", sample.n, sample.ratio));
        }
        out
    }
}

/// Samples `r(n) = f(n) ln f(n) / g(n)` at `n = 2^i` for `i = 1..=n_points`
/// and judges the tail.
///
/// Sample points where the ratio is undefined (either function escapes
/// its domain, or `f <= 1` so `ln ln f` does not exist) are skipped; the
/// verdict needs at least two valid samples. The verdict is GAP_HOLDS when
/// the tail decreases strictly and ends below the hold threshold,
/// GAP_FAILS when the tail is non-decreasing or never drops below the fail
/// threshold, and INCONCLUSIVE otherwise.
pub fn gap_check(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    n_points: u32,
) -> Result<GapTrace> {
    if n_points < 4 {
        return Err(Error::InvalidParameter(format!(
            "the gap heuristic needs at least 4 sample points, got {n_points}"
        )));
    }
    let mut samples = Vec::new();
    for i in 1..=n_points {
        let x = 2f64.powi(i as i32);
        let ln_f = match f.ln_at(x) {
            Ok(v) => v,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        };
        if ln_f <= 0.0 {
            continue;
        }
        let ln_g = match g.ln_at(x) {
            Ok(v) => v,
            Err(Error::Domain(_)) => continue,
            Err(e) => return Err(e),
        };
        let ln_ratio = ln_f + ln_f.ln() - ln_g;
        samples.push(GapSample {
            n: x,
            ratio: ln_ratio.exp(),
            ln_ratio,
        });
    }
    if samples.len() < 2 {
        return Err(Error::Domain(format!(
            "the gap ratio of {} and {} is undefined at almost every sample point",
            f.source(),
            g.source()
        )));
    }

    let tail: Vec<f64> = samples
        .iter()
        .rev()
        .take(TAIL)
        .rev()
        .map(|s| s.ln_ratio)
        .collect();
    let strictly_decreasing = tail.windows(2).all(|w| w[1] < w[0]);
    let non_decreasing = tail.windows(2).all(|w| w[1] >= w[0]);
    let final_ln = *tail.last().expect("at least two samples");
    let verdict = if strictly_decreasing && final_ln < HOLD_THRESHOLD.ln() {
        GapVerdict::GapHolds
    } else if non_decreasing || tail.iter().all(|&r| r >= FAIL_THRESHOLD.ln()) {
        GapVerdict::GapFails
    } else {
        GapVerdict::Inconclusive
    };
    Ok(GapTrace { samples, verdict })
}

/// Orbit separation witnessed by the symmetrized distance only: the form
/// the hierarchy statement uses.
pub fn hierarchy_separation(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    alpha: f64,
    delta: f64,
    max_magnitude: u32,
    truncation: u32,
) -> Result<SeparationResult> {
    scan_separation(
        f,
        g,
        alpha,
        delta,
        max_magnitude,
        truncation,
        ScanMode::SymmetrizedOnly,
    )
}
