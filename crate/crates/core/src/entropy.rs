//! Spanning-set entropy estimation for the scaling map restricted to a
//! finite set of functions.
//!
//! The iterated metric `d_n` takes the worst symmetrized distance seen
//! along `n` steps of the orbit; `r(n, eps)` is the size of the smallest
//! subset whose `eps`-balls in `d_n` cover the set. The growth rate of
//! `ln r(n, eps)` in `n` estimates the entropy. Two iteration windows are
//! implemented: the forward window from the definition, and a two-sided
//! window reflecting how the lower-bound argument actually uses backward
//! expansion. Any finite set saturates (`r` cannot exceed its size), so
//! the full-range slope always decays toward zero; the slope over the
//! pre-saturation window is the desk-scale proxy for the expansion rate.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::dynamics::iterate;
use crate::error::{Error, Result};
use crate::funcspace::ComplexityFunction;
use crate::qmetric::dc;

/// Which orbit window the iterated metric maximizes over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Variant {
    /// Iterates `j = 0..n-1`.
    Forward,
    /// Iterates `j = -(n-1)..=n-1`.
    TwoSided,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Forward => "FORWARD",
            Variant::TwoSided => "TWO_SIDED",
        })
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "forward" => Ok(Variant::Forward),
            "two-sided" | "two_sided" | "twosided" => Ok(Variant::TwoSided),
            _ => Err(Error::InvalidParameter(format!(
                "unknown variant {s:?}, expected \"forward\" or \"two-sided\""
            ))),
        }
    }
}

/// How the spanning number is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CoverMode {
    /// First-fit cover in input order: an upper bound on the minimum.
    Greedy,
    /// Exhaustive minimisation; only for sets of at most twelve functions.
    Exact,
}

impl FromStr for CoverMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "greedy" => Ok(CoverMode::Greedy),
            "exact" => Ok(CoverMode::Exact),
            _ => Err(Error::InvalidParameter(format!(
                "unknown cover mode {s:?}, expected \"greedy\" or \"exact\""
            ))),
        }
    }
}

const EXACT_COVER_LIMIT: usize = 12;

fn capped_sym(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    truncation: u32,
) -> Result<f64> {
    let fwd = dc(f, g, truncation)?.value;
    let bwd = dc(g, f, truncation)?.value;
    Ok(fwd.max(bwd).min(1.0))
}

fn window(n: u32, variant: Variant) -> std::ops::RangeInclusive<i32> {
    let top = n as i32 - 1;
    match variant {
        Variant::Forward => 0..=top,
        Variant::TwoSided => -top..=top,
    }
}

/// Worst capped symmetrized distance between the orbits of `f` and `g`
/// over the iteration window.
pub fn iterated_metric(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    alpha: f64,
    n: u32,
    variant: Variant,
    truncation: u32,
) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "iterated metric needs at least one step".into(),
        ));
    }
    let mut worst = 0.0f64;
    for j in window(n, variant) {
        let d = capped_sym(&iterate(f, alpha, j)?, &iterate(g, alpha, j)?, truncation)?;
        worst = worst.max(d);
    }
    Ok(worst)
}

/// Symmetric matrix of iterated-metric values over a function set, with
/// per-iterate distances shared across the `n` sweep.
struct PairDistances {
    size: usize,
    /// For each unordered pair `(i, j)`, `i < j`: capped symmetrized
    /// distance at every iterate offset `-(max_n-1)..=max_n-1`.
    profiles: Vec<Vec<f64>>,
    max_n: u32,
}

impl PairDistances {
    fn build(
        set: &[ComplexityFunction],
        alpha: f64,
        max_n: u32,
        truncation: u32,
    ) -> Result<Self> {
        let size = set.len();
        let top = max_n as i32 - 1;
        let mut profiles = Vec::with_capacity(size * (size - 1) / 2);
        for i in 0..size {
            for j in (i + 1)..size {
                let mut profile = Vec::with_capacity((2 * top + 1) as usize);
                for offset in -top..=top {
                    let fi = iterate(&set[i], alpha, offset)?;
                    let fj = iterate(&set[j], alpha, offset)?;
                    profile.push(capped_sym(&fi, &fj, truncation)?);
                }
                profiles.push(profile);
            }
        }
        Ok(PairDistances {
            size,
            profiles,
            max_n,
        })
    }

    fn pair_index(&self, i: usize, j: usize) -> usize {
        let (lo, hi) = if i < j { (i, j) } else { (j, i) };
        // Offset of pair (lo, hi) in row-major upper-triangle order.
        lo * self.size - lo * (lo + 1) / 2 + (hi - lo - 1)
    }

    /// `d_n` between elements `i` and `j`.
    fn at(&self, i: usize, j: usize, n: u32, variant: Variant) -> f64 {
        if i == j {
            return 0.0;
        }
        let profile = &self.profiles[self.pair_index(i, j)];
        let zero = (self.max_n - 1) as usize;
        window(n, variant)
            .map(|offset| profile[(zero as i32 + offset) as usize])
            .fold(0.0, f64::max)
    }
}

fn greedy_cover(dist: &impl Fn(usize, usize) -> f64, size: usize, epsilon: f64) -> u32 {
    let mut representatives: Vec<usize> = Vec::new();
    for p in 0..size {
        if !representatives.iter().any(|&e| dist(e, p) < epsilon) {
            representatives.push(p);
        }
    }
    representatives.len() as u32
}

fn exact_cover(dist: &impl Fn(usize, usize) -> f64, size: usize, epsilon: f64) -> u32 {
    let full: u32 = (1 << size) - 1;
    let mut best = size as u32;
    'mask: for mask in 1..=full {
        if mask.count_ones() >= best {
            continue;
        }
        for p in 0..size {
            let covered = (0..size)
                .any(|e| mask & (1 << e) != 0 && dist(e, p) < epsilon);
            if !covered {
                continue 'mask;
            }
        }
        best = mask.count_ones();
    }
    best
}

fn check_set(set: &[ComplexityFunction], epsilon: f64, mode: CoverMode) -> Result<()> {
    if set.is_empty() {
        return Err(Error::InvalidParameter(
            "the function set must be non-empty".into(),
        ));
    }
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "covering radius must be positive, got {epsilon}"
        )));
    }
    if mode == CoverMode::Exact && set.len() > EXACT_COVER_LIMIT {
        return Err(Error::InvalidParameter(format!(
            "exact covers are limited to {EXACT_COVER_LIMIT} functions, got {}",
            set.len()
        )));
    }
    Ok(())
}

/// Size of an `(n, epsilon)`-spanning subset of `set`: greedy upper bound
/// or exhaustive minimum depending on the mode.
pub fn spanning_number(
    set: &[ComplexityFunction],
    n: u32,
    epsilon: f64,
    alpha: f64,
    variant: Variant,
    mode: CoverMode,
    truncation: u32,
) -> Result<u32> {
    check_set(set, epsilon, mode)?;
    if n == 0 {
        return Err(Error::InvalidParameter(
            "the spanning number needs at least one step".into(),
        ));
    }
    let distances = PairDistances::build(set, alpha, n, truncation)?;
    let dist = |i: usize, j: usize| distances.at(i, j, n, variant);
    Ok(match mode {
        CoverMode::Greedy => greedy_cover(&dist, set.len(), epsilon),
        CoverMode::Exact => exact_cover(&dist, set.len(), epsilon),
    })
}

/// One spanning count.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SpanningCount {
    pub n: u32,
    pub r: u32,
}

/// Spanning counts for `n = 1..n_max` and the two fitted slopes.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EntropyEstimate {
    pub spanning_counts: Vec<SpanningCount>,
    /// Least-squares slope of `ln r` against `n` over all counts. Decays
    /// toward zero as `n_max` grows, since a finite set saturates.
    pub slope_full_range: f64,
    /// The same fit restricted to `n` strictly before the first count that
    /// already equals the final one; zero when fewer than two such points
    /// exist. This window is the proxy for the expansion rate.
    pub slope_pre_saturation: f64,
    pub epsilon: f64,
    pub alpha: f64,
    pub variant: Variant,
}

impl EntropyEstimate {
    /// CSV interchange form of the counts.
    pub fn counts_to_csv(&self) -> String {
        let mut out = String::from("n,r\n");
        for count in &self.spanning_counts {
            out.push_str(&format!("{},{}\n", count.n, count.r));
        }
        out
    }
}

fn least_squares_slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return 0.0;
    }
    let first = points[0].1;
    if points.iter().all(|&(_, y)| y == first) {
        return 0.0;
    }
    let len = points.len() as f64;
    let mean_x = points.iter().map(|&(x, _)| x).sum::<f64>() / len;
    let mean_y = points.iter().map(|&(_, y)| y).sum::<f64>() / len;
    let cov: f64 = points
        .iter()
        .map(|&(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let var: f64 = points.iter().map(|&(x, _)| (x - mean_x).powi(2)).sum();
    cov / var
}

/// Spanning counts for `n = 1..=n_max` plus least-squares slopes of
/// `ln r(n)` over the full range and over the pre-saturation window.
pub fn entropy_estimate(
    set: &[ComplexityFunction],
    alpha: f64,
    epsilon: f64,
    n_max: u32,
    variant: Variant,
    mode: CoverMode,
    truncation: u32,
) -> Result<EntropyEstimate> {
    check_set(set, epsilon, mode)?;
    if n_max < 4 {
        return Err(Error::InvalidParameter(format!(
            "the count sequence needs n_max >= 4, got {n_max}"
        )));
    }
    let distances = PairDistances::build(set, alpha, n_max, truncation)?;
    let mut spanning_counts = Vec::with_capacity(n_max as usize);
    for n in 1..=n_max {
        let dist = |i: usize, j: usize| distances.at(i, j, n, variant);
        let r = match mode {
            CoverMode::Greedy => greedy_cover(&dist, set.len(), epsilon),
            CoverMode::Exact => exact_cover(&dist, set.len(), epsilon),
        };
        spanning_counts.push(SpanningCount { n, r });
    }

    let log_points: Vec<(f64, f64)> = spanning_counts
        .iter()
        .map(|c| (f64::from(c.n), f64::from(c.r).ln()))
        .collect();
    let final_r = spanning_counts.last().expect("n_max >= 4").r;
    let saturation = spanning_counts
        .iter()
        .position(|c| c.r == final_r)
        .expect("the final count equals itself");
    let slope_full_range = least_squares_slope(&log_points);
    let slope_pre_saturation = least_squares_slope(&log_points[..saturation]);

    Ok(EntropyEstimate {
        spanning_counts,
        slope_full_range,
        slope_pre_saturation,
        epsilon,
        alpha,
        variant,
    })
}
