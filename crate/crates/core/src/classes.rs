//! Membership tests for the stable and unstable sets of the scaling map.
//!
//! For a scale factor above one, the stable set of `f` at tolerance `delta`
//! is exactly the ball `{g : dc(f, g) <= delta}`, and the unstable set is
//! `{g : g <= f pointwise}`, independent of `delta`. Membership is decided
//! both by scanning forward iterates and by the closed-form criterion; the
//! two must agree, and a disagreement is reported as an error rather than
//! silently resolved.

use serde::Serialize;

use crate::dynamics::iterate;
use crate::error::{Error, Result};
use crate::funcspace::{dominates, ComplexityFunction};
use crate::qmetric::{dc, DEFAULT_TRUNCATION};

/// Why a membership verdict came out the way it did.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "certificate", content = "value", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    /// Distance within tolerance; carries the distance.
    DcWithinDelta(f64),
    /// Membership forced by pointwise dominance over the horizon.
    Dominance,
    /// Distance above tolerance; carries the distance.
    DistanceExceeds(f64),
    /// Dominance broken; carries the first witnessing index.
    ViolationAtN(u64),
}

/// A membership decision together with its certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MembershipVerdict {
    pub member: bool,
    #[serde(flatten)]
    pub certificate: Certificate,
    /// Tolerance used; absent for unstable verdicts, which do not depend
    /// on one.
    pub delta: Option<f64>,
    /// Series truncation (stable) or dominance horizon (unstable): the
    /// finite range the verdict actually inspected.
    pub horizon: u32,
}

/// Decides whether `g` stays within `delta` of `f` along the entire
/// forward orbit of scaling by `alpha`.
///
/// Runs the forward scan over `k = 0..=scan_bound` and, independently, the
/// closed-form criterion `dc(f, g) <= delta`; the scan is redundant for
/// `alpha > 1` (distances only contract), which is exactly why agreement
/// between the two is checked on every call.
pub fn stable_membership(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    alpha: f64,
    delta: f64,
    scan_bound: u32,
    truncation: u32,
) -> Result<MembershipVerdict> {
    if !alpha.is_finite() || alpha <= 1.0 {
        return Err(Error::InvalidParameter(format!(
            "stable sets are defined for scale factors above 1, got {alpha}"
        )));
    }
    if !delta.is_finite() || delta < 0.0 {
        return Err(Error::InvalidParameter(format!(
            "tolerance must be non-negative, got {delta}"
        )));
    }
    let d0 = dc(f, g, truncation)?;
    let criterion_member = d0.value <= delta;

    let mut scan_member = true;
    for k in 0..=scan_bound {
        let dk = dc(&iterate(f, alpha, k as i32)?, &iterate(g, alpha, k as i32)?, truncation)?;
        if dk.value > delta {
            scan_member = false;
            break;
        }
    }

    if scan_member != criterion_member && (d0.value - delta).abs() >= 1e-10 {
        return Err(Error::InconsistentCriteria(format!(
            "orbit scan says member = {scan_member} but the closed-form criterion says \
             member = {criterion_member} for dc = {} vs delta = {delta}",
            d0.value
        )));
    }

    let certificate = if criterion_member {
        if d0.zero_by_dominance {
            Certificate::Dominance
        } else {
            Certificate::DcWithinDelta(d0.value)
        }
    } else {
        Certificate::DistanceExceeds(d0.value)
    };
    Ok(MembershipVerdict {
        member: criterion_member,
        certificate,
        delta: Some(delta),
        horizon: truncation,
    })
}

/// Decides whether `g` lies in the unstable set of `f`: whether `g` is
/// pointwise at most `f` over the horizon. No tolerance is involved.
pub fn unstable_membership(
    f: &ComplexityFunction,
    g: &ComplexityFunction,
    horizon: u32,
) -> Result<MembershipVerdict> {
    let verdict = dominates(g, f, horizon)?;
    let (member, certificate) = match verdict.first_violation {
        None => (true, Certificate::Dominance),
        Some(n) => (false, Certificate::ViolationAtN(n)),
    };
    Ok(MembershipVerdict {
        member,
        certificate,
        delta: None,
        horizon,
    })
}

/// Both verdicts for one candidate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentRow {
    pub candidate: String,
    pub stable: MembershipVerdict,
    pub unstable: MembershipVerdict,
}

/// Joint stable/unstable verdicts over a candidate list, plus whether
/// every unstable member was also a stable member at the given tolerance.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub rows: Vec<ContainmentRow>,
    /// True when no candidate was in the unstable set but outside the
    /// stable one. Holds whenever `delta` is at least the largest distance
    /// from `f` to a dominated candidate; small tolerances can break it.
    pub containment_holds: bool,
}

const DEFAULT_SCAN_BOUND: u32 = 10;

/// Evaluates both membership tests for every candidate and reports whether
/// the unstable set was contained in the stable one.
pub fn containment_check(
    f: &ComplexityFunction,
    candidates: &[ComplexityFunction],
    alpha: f64,
    delta: f64,
    horizon: u32,
) -> Result<ContainmentReport> {
    let mut rows = Vec::with_capacity(candidates.len());
    let mut containment_holds = true;
    for g in candidates {
        let stable = stable_membership(f, g, alpha, delta, DEFAULT_SCAN_BOUND, DEFAULT_TRUNCATION)?;
        let unstable = unstable_membership(f, g, horizon)?;
        if unstable.member && !stable.member {
            containment_holds = false;
        }
        rows.push(ContainmentRow {
            candidate: g.source().to_string(),
            stable,
            unstable,
        });
    }
    Ok(ContainmentReport {
        rows,
        containment_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::report::REFERENCE_CORPUS;

    fn f(src: &str) -> ComplexityFunction {
        ComplexityFunction::parse(src).unwrap()
    }

    const N: u32 = DEFAULT_TRUNCATION;

    #[test]
    fn stable_examples() {
        let v = stable_membership(&f("n"), &f("sqrt(n)"), 2.0, 0.1, 10, N).unwrap();
        assert!(!v.member);
        match v.certificate {
            Certificate::DistanceExceeds(d) => assert!((d - 0.113).abs() <= 1e-3),
            other => panic!("unexpected certificate {other:?}"),
        }

        let v = stable_membership(&f("n"), &f("2*n"), 2.0, 0.1, 10, N).unwrap();
        assert!(v.member);
        assert_eq!(v.certificate, Certificate::Dominance);

        let v = stable_membership(&f("n"), &f("sqrt(n)"), 2.0, 0.2, 10, N).unwrap();
        assert!(v.member);
        match v.certificate {
            Certificate::DcWithinDelta(d) => assert!((d - 0.113).abs() <= 1e-3),
            other => panic!("unexpected certificate {other:?}"),
        }

        let v = stable_membership(&f("2^n"), &f("n^100"), 2.0, 0.01, 10, N).unwrap();
        assert!(!v.member);
        match v.certificate {
            Certificate::DistanceExceeds(d) => assert!((d - 0.25).abs() <= 1e-3),
            other => panic!("unexpected certificate {other:?}"),
        }
    }

    #[test]
    fn stable_rejects_bad_parameters() {
        assert!(matches!(
            stable_membership(&f("n"), &f("n"), 1.0, 0.1, 10, N),
            Err(Error::InvalidParameter(_))
        ));
        assert!(matches!(
            stable_membership(&f("n"), &f("n"), 2.0, -0.1, 10, N),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn unstable_examples() {
        let v = unstable_membership(&f("n^2"), &f("n"), 80).unwrap();
        assert!(v.member);
        assert_eq!(v.certificate, Certificate::Dominance);
        assert_eq!(v.delta, None);

        let v = unstable_membership(&f("n"), &f("n+1"), 80).unwrap();
        assert!(!v.member);
        assert_eq!(v.certificate, Certificate::ViolationAtN(1));

        assert!(!unstable_membership(&f("n^2"), &f("2^n"), 80).unwrap().member);
        assert!(unstable_membership(&f("n"), &f("log(n+1)"), 80).unwrap().member);
    }

    #[test]
    fn membership_is_monotone_in_delta() {
        let fns: Vec<_> = REFERENCE_CORPUS.iter().map(|s| f(s)).collect();
        let grid = [0.05, 0.1, 0.2, 0.5];
        for a in &fns {
            for b in &fns {
                let mut previous = false;
                for delta in grid {
                    let member = stable_membership(a, b, 2.0, delta, 10, N).unwrap().member;
                    assert!(
                        !previous || member,
                        "membership lost as delta grew for {} vs {}",
                        a.source(),
                        b.source()
                    );
                    previous = member;
                }
            }
        }
    }

    #[test]
    fn containment_on_the_example_candidates() {
        let base = f("n");
        let candidates: Vec<_> = ["sqrt(n)", "2*n", "log(n+1)"].iter().map(|s| f(s)).collect();

        let report = containment_check(&base, &candidates, 2.0, 0.5, 80).unwrap();
        assert_eq!(report.rows.len(), 3);
        assert!(report.containment_holds);
        assert!(report.rows[0].unstable.member && report.rows[0].stable.member);
        assert!(!report.rows[1].unstable.member);
        assert!(report.rows[2].unstable.member && report.rows[2].stable.member);

        // A tolerance below dc(n, log(n+1)) ~ 0.417 exposes a dominated
        // candidate outside the distance ball; the report must say so
        // rather than hide it.
        let tight = containment_check(&base, &candidates, 2.0, 0.2, 80).unwrap();
        assert!(!tight.containment_holds);

        let empty = containment_check(&base, &[], 2.0, 0.2, 80).unwrap();
        assert!(empty.rows.is_empty());
        assert!(empty.containment_holds);

        let reflexive =
            containment_check(&base, std::slice::from_ref(&base), 2.0, 0.2, 80).unwrap();
        assert!(reflexive.rows[0].stable.member);
        assert!(reflexive.rows[0].unstable.member);
    }

    #[test]
    fn containment_holds_on_corpus_at_wide_tolerance() {
        // The widest distance from a corpus function to one it dominates is
        // dc(2^n, n log^2(n+1)) ~ 0.842, so 0.9 covers every dominated pair.
        let fns: Vec<_> = REFERENCE_CORPUS.iter().map(|s| f(s)).collect();
        for a in &fns {
            let report = containment_check(a, &fns, 2.0, 0.9, 80).unwrap();
            assert!(
                report.containment_holds,
                "containment violated for reference {}",
                a.source()
            );
        }
    }

    #[test]
    fn verdict_serialises_flat() {
        let v = stable_membership(&f("n"), &f("sqrt(n)"), 2.0, 0.2, 10, N).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["member"], true);
        assert_eq!(json["certificate"], "DC_WITHIN_DELTA");
        assert!(json["value"].as_f64().unwrap() > 0.1);
        assert_eq!(json["horizon"], 80);

        let v = unstable_membership(&f("n"), &f("n+1"), 80).unwrap();
        let json = serde_json::to_value(&v).unwrap();
        assert_eq!(json["certificate"], "VIOLATION_AT_N");
        assert_eq!(json["value"], 1);
        assert_eq!(json["delta"], serde_json::Value::Null);
    }
}
