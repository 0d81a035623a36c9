//! Scaling dynamics on the function space: the pointwise-scaling map, its
//! iterates and orbit traces, the exact Lipschitz scaling identity,
//! expansiveness checks, separation iterates, and the additive-translation
//! counterexample.
//!
//! Scaling by `alpha > 1` contracts the asymmetric distance by exactly
//! `1/alpha` per forward step and expands it by `alpha` per backward step,
//! so every distinct pair of functions is eventually separated unless
//! `alpha = 1`. Orbit rows report series distances capped at one; the
//! uncapped contraction-law prediction is kept in a separate column.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::{ComplexityFunction, Expr};
use crate::qmetric::dc;

/// Pointwise multiplication of a running-time function by a fixed factor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScalingMap {
    alpha: f64,
}

impl ScalingMap {
    /// Requires a finite factor strictly greater than zero.
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "scale factor must be a finite positive real, got {alpha}"
            )));
        }
        Ok(ScalingMap { alpha })
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// One application of the map.
    pub fn apply(&self, f: &ComplexityFunction) -> ComplexityFunction {
        scale_unchecked(f, self.alpha)
    }

    /// The `k`-th iterate, negative `k` meaning the inverse map.
    pub fn iterate(&self, f: &ComplexityFunction, k: i32) -> Result<ComplexityFunction> {
        iterate(f, self.alpha, k)
    }
}

fn scale_unchecked(f: &ComplexityFunction, factor: f64) -> ComplexityFunction {
    ComplexityFunction::from_expr(Expr::Mul(
        Box::new(Expr::Number(factor)),
        Box::new(f.expr().clone()),
    ))
}

/// `f` scaled pointwise by `alpha`, as a new function whose syntax tree is
/// the product node.
pub fn scale(f: &ComplexityFunction, alpha: f64) -> Result<ComplexityFunction> {
    Ok(ScalingMap::new(alpha)?.apply(f))
}

/// The `k`-th iterate of scaling by `alpha`: one multiplication by
/// `alpha^k`, not `k` repeated products, so no rounding drift accumulates.
pub fn iterate(f: &ComplexityFunction, alpha: f64, k: i32) -> Result<ComplexityFunction> {
    let map = ScalingMap::new(alpha)?;
    if k == 0 {
        return Ok(f.clone());
    }
    let factor = map.alpha.powi(k);
    if !factor.is_finite() || factor <= 0.0 {
        return Err(Error::Overflow(format!(
            "{alpha}^{k} is not representable as a positive finite real"
        )));
    }
    Ok(scale_unchecked(f, factor))
}

/// `|dc(alpha f, alpha g) - dc(f, g) / alpha|`: the defect of the exact
/// scaling identity at a finite truncation.
pub fn lipschitz_residual(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    alpha: f64,
    truncation: u32,
) -> Result<f64> {
    let scaled = dc(&scale(f, alpha)?, &scale(g, alpha)?, truncation)?.value;
    let base = dc(f, g, truncation)?.value;
    Ok((scaled - base / alpha).abs())
}

/// One orbit sample: distances between the `k`-th iterates of the two
/// functions, capped at one, plus the uncapped contraction-law prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitRow {
    pub k: i32,
    pub d_fg: f64,
    pub d_gf: f64,
    pub d_sym: f64,
    /// `alpha^-k` times the distance at `k = 0`; absent for maps without a
    /// contraction law (translation).
    pub theoretical_fg: Option<f64>,
}

/// Distances along a pair of orbits, one row per iterate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct OrbitTrace {
    pub rows: Vec<OrbitRow>,
    pub alpha: f64,
    #[serde(rename = "truncation_N")]
    pub truncation: u32,
}

impl OrbitTrace {
    /// The interchange format for plotting.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,d_fg,d_gf,d_sym,theoretical_fg\n");
        for row in &self.rows {
            out.push_str(&format!("{},{},{},{}", row.k, row.d_fg, row.d_gf, row.d_sym));
            match row.theoretical_fg {
                Some(t) => out.push_str(&format!(",{t}\n")),
                None => out.push_str(",\n"),
            }
        }
        out
    }
}

fn capped(f: &ComplexityFunction, g: &ComplexityFunction, truncation: u32) -> Result<f64> {
    Ok(dc(f, g, truncation)?.value.min(1.0))
}

/// Orbit distances of `(f, g)` under scaling by `alpha` for `k` in
/// `k_min..=k_max`, in increasing `k`.
pub fn orbit_trace(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    alpha: f64,
    k_min: i32,
    k_max: i32,
    truncation: u32,
) -> Result<OrbitTrace> {
    if k_min > k_max {
        return Err(Error::InvalidParameter(format!(
            "empty iterate range: k_min = {k_min} > k_max = {k_max}"
        )));
    }
    let d0 = dc(f, g, truncation)?.value;
    let mut rows = Vec::with_capacity((k_max - k_min + 1) as usize);
    for k in k_min..=k_max {
        let fk = iterate(f, alpha, k)?;
        let gk = iterate(g, alpha, k)?;
        rows.push(OrbitRow {
            k,
            d_fg: capped(&fk, &gk, truncation)?,
            d_gf: capped(&gk, &fk, truncation)?,
            d_sym: capped(&fk, &gk, truncation)?.max(capped(&gk, &fk, truncation)?),
            theoretical_fg: Some(alpha.powi(-k) * d0),
        });
    }
    Ok(OrbitTrace {
        rows,
        alpha,
        truncation,
    })
}

/// Which distance witnessed a separation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SeparationDirection {
    ForwardDc,
    Conjugate,
    Symmetrized,
}

/// Outcome of scanning an orbit for an iterate at which the pair is more
/// than `delta` apart.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeparationResult {
    pub found: bool,
    /// First iterate in scan order whose distance exceeds `delta`.
    pub at_iterate: Option<i32>,
    /// The distance observed at that iterate.
    pub distance: Option<f64>,
    pub witness_direction: Option<SeparationDirection>,
    /// Iterate count predicted from the initial distance and the expansion
    /// rate; absent when the map does not expand (`alpha = 1`).
    pub predicted_iterate: Option<u32>,
}

pub(crate) enum ScanMode {
    /// Test forward, conjugate, and symmetrized distances, in that order.
    AllDirections,
    /// Test only the symmetrized distance.
    SymmetrizedOnly,
}

/// Iterates in the order 0, +1, -1, +2, -2, ..., so the reported witness
/// has minimal magnitude.
fn scan_order(max_magnitude: u32) -> impl Iterator<Item = i32> {
    let m = max_magnitude as i32;
    std::iter::once(0).chain((1..=m).flat_map(|k| [k, -k]))
}

pub(crate) fn scan_separation(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    alpha: f64,
    delta: f64,
    max_magnitude: u32,
    truncation: u32,
    mode: ScanMode,
) -> Result<SeparationResult> {
    ScalingMap::new(alpha)?;
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "separation threshold must be positive, got {delta}"
        )));
    }
    let fwd0 = dc(f, g, truncation)?.value;
    let bwd0 = dc(g, f, truncation)?.value;
    let initial = fwd0.max(bwd0);
    if initial == 0.0 {
        return Err(Error::InputsIndistinguishable { truncation });
    }
    let rate = alpha.max(1.0 / alpha);
    let predicted_iterate = if rate > 1.0 {
        Some(separation_iterate(initial, rate, delta)?)
    } else {
        None
    };

    for k in scan_order(max_magnitude) {
        let fk = iterate(f, alpha, k)?;
        let gk = iterate(g, alpha, k)?;
        let d_fg = capped(&fk, &gk, truncation)?;
        let d_gf = capped(&gk, &fk, truncation)?;
        let checks = [
            (SeparationDirection::ForwardDc, d_fg),
            (SeparationDirection::Conjugate, d_gf),
            (SeparationDirection::Symmetrized, d_fg.max(d_gf)),
        ];
        let selected: &[(SeparationDirection, f64)] = match mode {
            ScanMode::AllDirections => &checks,
            ScanMode::SymmetrizedOnly => &checks[2..],
        };
        for &(direction, value) in selected {
            if value > delta {
                return Ok(SeparationResult {
                    found: true,
                    at_iterate: Some(k),
                    distance: Some(value),
                    witness_direction: Some(direction),
                    predicted_iterate,
                });
            }
        }
    }
    Ok(SeparationResult {
        found: false,
        at_iterate: None,
        distance: None,
        witness_direction: None,
        predicted_iterate,
    })
}

/// Scans iterates `|k| <= max_magnitude` for one at which `f` and `g` are
/// more than `delta` apart in any of the three distances.
///
/// Inputs the series cannot tell apart at the given truncation are
/// rejected: separation questions only make sense for distinct points.
pub fn check_expansive(
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
        ScanMode::AllDirections,
    )
}

/// Smallest non-negative `k` with `alpha^k * d > delta`, namely
/// `max(ceil(log_alpha(delta / d)), 0)`.
pub fn separation_iterate(d: f64, alpha: f64, delta: f64) -> Result<u32> {
    if !d.is_finite() || d <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "initial distance must be positive, got {d}"
        )));
    }
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "expansion rate must exceed 1, got {alpha}"
        )));
    }
    if !delta.is_finite() || delta <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "separation threshold must be positive, got {delta}"
        )));
    }
    let k = ((delta / d).ln() / alpha.ln()).ceil();
    Ok(if k > 0.0 { k as u32 } else { 0 })
}

/// `f + c`, the additive translation of a running-time function.
pub fn translate(f: &ComplexityFunction, c: f64) -> Result<ComplexityFunction> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "translation offset must be positive, got {c}"
        )));
    }
    Ok(ComplexityFunction::from_expr(Expr::Add(
        Box::new(f.expr().clone()),
        Box::new(Expr::Number(c)),
    )))
}

/// Orbit distances under translation by `c`, forward iterates only.
///
/// No contraction law applies, so the theoretical column is empty; the
/// trace exists to show that translation shrinks every distance toward
/// zero and therefore separates nothing.
pub fn translation_orbit(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    c: f64,
    k_max: u32,
    truncation: u32,
) -> Result<OrbitTrace> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "translation offset must be positive, got {c}"
        )));
    }
    let mut rows = Vec::with_capacity(k_max as usize + 1);
    for k in 0..=k_max {
        let (fk, gk) = if k == 0 {
            (f.clone(), g.clone())
        } else {
            let offset = c * f64::from(k);
            (translate(f, offset)?, translate(g, offset)?)
        };
        let d_fg = capped(&fk, &gk, truncation)?;
        let d_gf = capped(&gk, &fk, truncation)?;
        rows.push(OrbitRow {
            k: k as i32,
            d_fg,
            d_gf,
            d_sym: d_fg.max(d_gf),
            theoretical_fg: None,
        });
    }
    Ok(OrbitTrace {
        rows,
        alpha: 1.0,
        truncation,
    })
}
