//! The complexity quasi-metric: a weighted series over reciprocal
//! differences, its conjugate, its symmetrisation, and a small table of
//! closed-form reference constants.
//!
//! The distance from `f` to `g` is
//! `sum_{n=1..N} 2^-n * max(0, 1/g(n) - 1/f(n))`,
//! which is `0` exactly when `f <= g` pointwise on the horizon: moving to a
//! slower function is free, speeding up costs. The omitted tail is bounded
//! by `2^-N` whenever `g >= 1` on the tail.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::funcspace::ComplexityFunction;

/// Default number of series terms; `2^-80` is far below `f64` resolution
/// for values of order one.
pub const DEFAULT_TRUNCATION: u32 = 80;

const MAX_TRUNCATION: u32 = 1000;

/// A truncated series distance together with its rigorous tail bound.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceResult {
    /// Truncated series value.
    pub value: f64,
    /// Number of terms summed.
    #[serde(rename = "truncation_N")]
    pub truncation: u32,
    /// `2^-truncation`, exact.
    pub error_bound: f64,
    /// True when dominance over the horizon forced every term to zero.
    pub zero_by_dominance: bool,
}

fn check_truncation(truncation: u32) -> Result<()> {
    if truncation == 0 || truncation > MAX_TRUNCATION {
        return Err(Error::InvalidParameter(format!(
            "truncation must be in 1..={MAX_TRUNCATION}, got {truncation}"
        )));
    }
    Ok(())
}

/// Distance from `f` to `g`: how much of `g`'s reciprocal advantage `f`
/// fails to cover, weighted by `2^-n` and summed in increasing `n`.
pub fn dc(f: &ComplexityFunction, g: &ComplexityFunction, truncation: u32) -> Result<DistanceResult> {
    check_truncation(truncation)?;
    let mut sum = 0.0;
    let mut any_positive = false;
    let mut weight = 1.0;
    for n in 1..=u64::from(truncation) {
        weight *= 0.5;
        let diff = g.recip(n)? - f.recip(n)?;
        if diff > 0.0 {
            any_positive = true;
            sum += weight * diff;
        }
    }
    Ok(DistanceResult {
        value: sum,
        truncation,
        error_bound: 0.5f64.powi(truncation as i32),
        zero_by_dominance: !any_positive,
    })
}

/// The conjugate distance: `dc` with the arguments swapped.
pub fn dc_conjugate(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    truncation: u32,
) -> Result<DistanceResult> {
    dc(g, f, truncation)
}

/// Symmetrisation: componentwise max of the two directions. This is a
/// genuine metric on the function space.
pub fn dc_sym(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    truncation: u32,
) -> Result<DistanceResult> {
    let fwd = dc(f, g, truncation)?;
    let bwd = dc(g, f, truncation)?;
    Ok(DistanceResult {
        value: fwd.value.max(bwd.value),
        truncation,
        error_bound: fwd.error_bound,
        zero_by_dominance: fwd.zero_by_dominance && bwd.zero_by_dominance,
    })
}

/// Running partial sums `S_1..S_up_to` of the `dc` series, for convergence
/// display.
pub fn partial_sums(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    up_to: u32,
) -> Result<Vec<(u32, f64)>> {
    check_truncation(up_to)?;
    let mut out = Vec::with_capacity(up_to as usize);
    let mut sum = 0.0;
    let mut weight = 1.0;
    for n in 1..=up_to {
        weight *= 0.5;
        let diff = g.recip(u64::from(n))? - f.recip(u64::from(n))?;
        if diff > 0.0 {
            sum += weight * diff;
        }
        out.push((n, sum));
    }
    Ok(out)
}

/// Pairs of functions whose distance has a closed form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OraclePair {
    /// `dc(n^2, n)`
    QuadVsLin,
    /// `dc(2n, n)`
    DoubleVsLin,
    /// `dc(1, 1/n)`
    ConstVsRecip,
    /// `dc(n+1, n)`
    SuccVsLin,
}

/// Dilogarithm at one half, via `pi^2/12 - (ln 2)^2 / 2`.
const LI2_ONE_HALF: f64 = std::f64::consts::PI * std::f64::consts::PI / 12.0
    - std::f64::consts::LN_2 * std::f64::consts::LN_2 / 2.0;

impl OraclePair {
    pub const ALL: [OraclePair; 4] = [
        OraclePair::QuadVsLin,
        OraclePair::DoubleVsLin,
        OraclePair::ConstVsRecip,
        OraclePair::SuccVsLin,
    ];

    /// The `(f, g)` sources whose `dc(f, g)` the oracle value refers to.
    pub fn functions(self) -> (&'static str, &'static str) {
        match self {
            OraclePair::QuadVsLin => ("n^2", "n"),
            OraclePair::DoubleVsLin => ("2*n", "n"),
            OraclePair::ConstVsRecip => ("1", "1/n"),
            OraclePair::SuccVsLin => ("n+1", "n"),
        }
    }
}

impl fmt::Display for OraclePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            OraclePair::QuadVsLin => "QUAD_VS_LIN",
            OraclePair::DoubleVsLin => "DOUBLE_VS_LIN",
            OraclePair::ConstVsRecip => "CONST_VS_RECIP",
            OraclePair::SuccVsLin => "SUCC_VS_LIN",
        };
        f.write_str(s)
    }
}

impl FromStr for OraclePair {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "QUAD_VS_LIN" => Ok(OraclePair::QuadVsLin),
            "DOUBLE_VS_LIN" => Ok(OraclePair::DoubleVsLin),
            "CONST_VS_RECIP" => Ok(OraclePair::ConstVsRecip),
            "SUCC_VS_LIN" => Ok(OraclePair::SuccVsLin),
            _ => Err(Error::UnknownPair(s.to_string())),
        }
    }
}

/// Analytic limit of the distance series for the tabulated pairs, evaluated
/// from closed-form constants rather than the series itself.
pub fn closed_form_oracle(pair: OraclePair) -> f64 {
    use std::f64::consts::LN_2;
    match pair {
        OraclePair::QuadVsLin => LN_2 - LI2_ONE_HALF,
        OraclePair::DoubleVsLin => 0.5 * LN_2,
        OraclePair::ConstVsRecip => 1.0,
        OraclePair::SuccVsLin => 1.0 - LN_2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::REFERENCE_CORPUS;

    fn f(src: &str) -> ComplexityFunction {
        ComplexityFunction::parse(src).unwrap()
    }

    fn corpus() -> Vec<ComplexityFunction> {
        REFERENCE_CORPUS.iter().map(|s| f(s)).collect()
    }

    /// Independent series oracle over plain closures, bypassing the parser
    /// and evaluator.
    fn series(fv: impl Fn(f64) -> f64, gv: impl Fn(f64) -> f64, n_terms: u32) -> f64 {
        let mut sum = 0.0;
        for n in 1..=n_terms {
            let x = f64::from(n);
            let diff = 1.0 / gv(x) - 1.0 / fv(x);
            if diff > 0.0 {
                sum += 0.5f64.powi(n as i32) * diff;
            }
        }
        sum
    }

    #[test]
    fn distance_examples() {
        let d = dc(&f("n^2"), &f("n"), 80).unwrap();
        assert!((d.value - 0.1109).abs() <= 1e-3);
        assert!(!d.zero_by_dominance);
        assert_eq!(d.error_bound, 0.5f64.powi(80));
        assert_eq!(d.truncation, 80);

        let d = dc(&f("n"), &f("n^2"), 80).unwrap();
        assert_eq!(d.value, 0.0);
        assert!(d.zero_by_dominance);

        assert!((dc(&f("n+1"), &f("n"), 80).unwrap().value - 0.3069).abs() <= 1e-3);
        assert!((dc(&f("1"), &f("1/n"), 80).unwrap().value - 1.0).abs() <= 1e-12);
        assert_eq!(dc(&f("n"), &f("n"), 80).unwrap().value, 0.0);
        assert!((dc(&f("2*n"), &f("n"), 80).unwrap().value - 0.3466).abs() <= 1e-3);
    }

    #[test]
    fn conjugate_and_symmetrisation() {
        let alternating = f("n + (-1)^(n+1)");
        let lin = f("n");
        assert_eq!(
            dc_conjugate(&lin, &f("n^2"), 80).unwrap().value,
            dc(&f("n^2"), &lin, 80).unwrap().value
        );
        assert!((dc_conjugate(&alternating, &lin, 80).unwrap().value - 0.131).abs() <= 2e-3);
        assert!((dc_sym(&alternating, &lin, 80).unwrap().value - 0.262).abs() <= 2e-3);
        let s = dc_sym(&lin, &lin, 80).unwrap();
        assert_eq!(s.value, 0.0);
        assert!(s.zero_by_dominance);
    }

    #[test]
    fn oracle_constants_match_reported_digits() {
        // The six-digit reference 0.110906 truncates 0.11090665..., so the
        // window is one full ulp of the last printed digit.
        assert!((closed_form_oracle(OraclePair::QuadVsLin) - 0.110906).abs() <= 1e-6);
        assert!((closed_form_oracle(OraclePair::DoubleVsLin) - 0.346574).abs() <= 5e-7);
        assert_eq!(closed_form_oracle(OraclePair::ConstVsRecip), 1.0);
        assert!((closed_form_oracle(OraclePair::SuccVsLin) - 0.306853).abs() <= 5e-7);
    }

    #[test]
    fn series_agrees_with_all_four_oracles() {
        let tol = 0.5f64.powi(80) + 1e-12;
        for pair in OraclePair::ALL {
            let (fs, gs) = pair.functions();
            let d = dc(&f(fs), &f(gs), 80).unwrap();
            let oracle = closed_form_oracle(pair);
            assert!(
                (d.value - oracle).abs() <= tol,
                "{pair}: series {} vs oracle {oracle}",
                d.value
            );
        }
    }

    type PointwiseFn = fn(f64) -> f64;

    #[test]
    fn series_matches_independent_closure_oracle() {
        let cases: [(&str, &str, PointwiseFn, PointwiseFn); 3] = [
            ("n^2", "n", |x| x * x, |x| x),
            ("n + 1", "n", |x| x + 1.0, |x| x),
            ("n", "log(n+1)", |x| x, |x| (x + 1.0).ln()),
        ];
        for (fs, gs, fv, gv) in cases {
            let got = dc(&f(fs), &f(gs), 80).unwrap().value;
            let expected = series(fv, gv, 80);
            assert!(
                (got - expected).abs() <= 1e-15,
                "{fs} vs {gs}: {got} != {expected}"
            );
        }
    }

    #[test]
    fn partial_sum_convergence() {
        let sums = partial_sums(&f("n^2"), &f("n"), 5).unwrap();
        assert_eq!(sums[1], (2, 0.0625));
        assert!((sums[2].1 - 0.0903).abs() <= 5e-4);
        assert!((sums[3].1 - 0.1020).abs() <= 5e-4);
        assert!((sums[4].1 - 0.1070).abs() <= 5e-4);

        let zeros = partial_sums(&f("n"), &f("n^2"), 12).unwrap();
        assert!(zeros.iter().all(|(_, s)| *s == 0.0));
    }

    #[test]
    fn q1_identity_is_exact_zero() {
        for g in corpus() {
            let d = dc(&g, &g, 80).unwrap();
            assert_eq!(d.value, 0.0, "Q1 failed for {}", g.source());
            assert!(d.zero_by_dominance);
        }
    }

    #[test]
    fn q2_triangle_inequality_over_corpus() {
        let fns = corpus();
        let n = fns.len();
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                d[i][j] = dc(&fns[i], &fns[j], 80).unwrap().value;
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    assert!(
                        d[i][k] <= d[i][j] + d[j][k] + 1e-12,
                        "triangle failed: {} -> {} -> {}",
                        fns[i].source(),
                        fns[j].source(),
                        fns[k].source()
                    );
                }
            }
        }
    }

    #[test]
    fn q3_separation_over_corpus() {
        let fns = corpus();
        for a in &fns {
            for b in &fns {
                let fwd = dc(a, b, 80).unwrap().value;
                let bwd = dc(b, a, 80).unwrap().value;
                if fwd <= 1e-15 && bwd <= 1e-15 {
                    for n in 1..=80 {
                        let (va, vb) = (a.eval(n).unwrap(), b.eval(n).unwrap());
                        assert!(
                            (va - vb).abs() <= 1e-12,
                            "{} and {} differ at n={n}",
                            a.source(),
                            b.source()
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn bound_holds_over_corpus() {
        let fns = corpus();
        for a in &fns {
            for b in &fns {
                let d = dc(a, b, 80).unwrap().value;
                assert!(
                    (0.0..=1.0).contains(&d),
                    "dc({}, {}) = {d} outside [0,1]",
                    a.source(),
                    b.source()
                );
            }
        }
    }

    #[test]
    fn dominance_equivalence() {
        let fns = corpus();
        for a in &fns {
            for b in &fns {
                let dom = crate::funcspace::dominates(a, b, 80).unwrap().dominates;
                let d = dc(a, b, 80).unwrap();
                assert_eq!(
                    dom,
                    d.value == 0.0,
                    "dominance mismatch for {} vs {}",
                    a.source(),
                    b.source()
                );
                assert_eq!(d.zero_by_dominance, d.value == 0.0);
            }
        }
    }

    #[test]
    fn truncation_error_is_within_bound() {
        let fns = corpus();
        for n_terms in [10u32, 40, 80] {
            for a in &fns {
                for b in &fns {
                    let coarse = dc(a, b, n_terms).unwrap().value;
                    let fine = dc(a, b, n_terms + 40).unwrap().value;
                    assert!(
                        (coarse - fine).abs() <= 0.5f64.powi(n_terms as i32),
                        "truncation bound failed for {} vs {} at N={n_terms}",
                        a.source(),
                        b.source()
                    );
                }
            }
        }
    }

    #[test]
    fn sym_is_symmetric_and_triangular() {
        let fns = corpus();
        let n = fns.len();
        let mut d = vec![vec![0.0; n]; n];
        for i in 0..n {
            for j in 0..n {
                d[i][j] = dc_sym(&fns[i], &fns[j], 80).unwrap().value;
            }
        }
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i][j], d[j][i]);
                for k in 0..n {
                    assert!(d[i][k] <= d[i][j] + d[j][k] + 1e-12);
                }
            }
        }
    }

    #[test]
    fn invalid_truncation_is_rejected() {
        assert!(matches!(
            dc(&f("n"), &f("n"), 0),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            dc(&f("n"), &f("n"), 1001),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            "NO_SUCH_PAIR".parse::<OraclePair>(),
            Err(Error::UnknownPair(_))
        ));
    }
}
