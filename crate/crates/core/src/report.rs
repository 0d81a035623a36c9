//! The reproduction report: every headline number this library is built
//! around, recomputed on demand and compared against its reference value
//! with an explicit per-row tolerance.
//!
//! The rows dealing with series distances honour the requested truncation,
//! so running the report at a coarse truncation makes the
//! truncation-sensitive rows fail visibly instead of quietly widening.

use serde::Serialize;

use crate::dynamics::{orbit_trace, separation_iterate};
use crate::entropy::{entropy_estimate, CoverMode, Variant};
use crate::error::Result;
use crate::funcspace::ComplexityFunction;
use crate::hierarchy::{gap_check, hierarchy_separation, GapVerdict, DEFAULT_GAP_POINTS};
use crate::qmetric::{closed_form_oracle, dc, dc_sym, partial_sums, OraclePair};

/// Twelve running-time profiles spanning constant through exponential
/// growth, used as the standing test corpus for metric and dynamics
/// properties. All take values at least 2^-80 on 1..=80, keeping series
/// distances within the unit bound.
pub const REFERENCE_CORPUS: [&str; 12] = [
    "n",
    "n^2",
    "n^3",
    "2*n",
    "n+1",
    "sqrt(n)",
    "log(n+1)",
    "2^n",
    "n * log(n+1)^2",
    "n + (-1)^(n+1)",
    "1",
    "n^1.5",
];

/// One recomputed value against its reference.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub id: &'static str,
    pub description: &'static str,
    pub expected: String,
    pub computed: String,
    pub tolerance: f64,
    pub pass: bool,
}

/// The full table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.rows.iter().all(|row| row.pass)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("id,description,expected,computed,tolerance,pass\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{}\n",
                row.id, row.description, row.expected, row.computed, row.tolerance, row.pass
            ));
        }
        out
    }

    pub fn render_table(&self) -> String {
        let mut out = format!(
            "{:<26} {:>14} {:>14} {:>10}  {}\n",
            "id", "expected", "computed", "tolerance", "result"
        );
        for row in &self.rows {
            out.push_str(&format!(
                "{:<26} {:>14} {:>14} {:>10}  {}\n",
                row.id,
                row.expected,
                row.computed,
                fmt_num(row.tolerance),
                if row.pass { "PASS" } else { "FAIL" }
            ));
        }
        let passed = self.rows.iter().filter(|r| r.pass).count();
        out.push_str(&format!("{passed}/{} rows pass\n", self.rows.len()));
        out
    }
}

fn fmt_num(v: f64) -> String {
    if v == v.trunc() && v.abs() < 1e15 {
        return format!("{v:.0}");
    }
    let s = format!("{v:.6}");
    let trimmed = s.trim_end_matches('0');
    let trimmed = trimmed.strip_suffix('.').unwrap_or(trimmed);
    trimmed.to_string()
}

fn numeric_row(
    id: &'static str,
    description: &'static str,
    expected: f64,
    computed: f64,
    tolerance: f64,
) -> ReportRow {
    ReportRow {
        id,
        description,
        expected: fmt_num(expected),
        computed: fmt_num(computed),
        tolerance,
        pass: (computed - expected).abs() <= tolerance,
    }
}

fn text_row(
    id: &'static str,
    description: &'static str,
    expected: String,
    computed: String,
) -> ReportRow {
    let pass = expected == computed;
    ReportRow {
        id,
        description,
        expected,
        computed,
        tolerance: 0.0,
        pass,
    }
}

fn verdict_name(v: GapVerdict) -> &'static str {
    match v {
        GapVerdict::GapHolds => "GAP_HOLDS",
        GapVerdict::GapFails => "GAP_FAILS",
        GapVerdict::Inconclusive => "INCONCLUSIVE",
    }
}

/// Recomputes every reference value at the given series truncation.
pub fn reproduction_report(truncation: u32) -> Result<Report> {
    let parse = ComplexityFunction::parse;
    let mut rows = Vec::with_capacity(34);

    // Closed forms: the series against analytic constants, with the
    // tolerance tied to the truncation bound.
    let oracle_tol = 0.5f64.powi(truncation as i32) + 1e-12;
    let oracle_rows: [(&'static str, &'static str, OraclePair); 4] = [
        (
            "oracle/quad_vs_lin",
            "series vs closed form for (n^2 to n)",
            OraclePair::QuadVsLin,
        ),
        (
            "oracle/double_vs_lin",
            "series vs closed form for (2n to n)",
            OraclePair::DoubleVsLin,
        ),
        (
            "oracle/const_vs_recip",
            "series vs closed form for (1 to 1/n)",
            OraclePair::ConstVsRecip,
        ),
        (
            "oracle/succ_vs_lin",
            "series vs closed form for (n+1 to n)",
            OraclePair::SuccVsLin,
        ),
    ];
    for (id, description, pair) in oracle_rows {
        let (fs, gs) = pair.functions();
        let computed = dc(&parse(fs)?, &parse(gs)?, truncation)?.value;
        rows.push(numeric_row(id, description, closed_form_oracle(pair), computed, oracle_tol));
    }

    // The distance table.
    let table: [(&'static str, &'static str, &'static str, &'static str, f64); 10] = [
        ("dist/quad_vs_lin", "dc(n^2; n)", "n^2", "n", 0.111),
        ("dist/succ_vs_lin", "dc(n+1; n)", "n+1", "n", 0.307),
        ("dist/double_vs_lin", "dc(2n; n)", "2*n", "n", 0.347),
        ("dist/lin_vs_log", "dc(n; log(n+1))", "n", "log(n+1)", 0.417),
        ("dist/lin_vs_sqrt", "dc(n; sqrt n)", "n", "sqrt(n)", 0.113),
        ("dist/cube_vs_quad", "dc(n^3; n^2)", "n^3", "n^2", 0.045),
        ("dist/const_vs_recip", "dc(1; 1/n)", "1", "1/n", 1.0),
        (
            "dist/alternating_conj",
            "dc(n; n+(-1)^(n+1)) - the conjugate view of an incomparable pair",
            "n",
            "n + (-1)^(n+1)",
            0.131,
        ),
        (
            "dist/alternating_sym",
            "symmetrized distance of the incomparable pair",
            "n + (-1)^(n+1)",
            "n",
            0.262,
        ),
        (
            "dist/hierarchy_sym",
            "symmetrized distance of the hierarchy pair",
            "n",
            "n * log(n+1)^2",
            0.541,
        ),
    ];
    for (id, description, fs, gs, expected) in table {
        let f = parse(fs)?;
        let g = parse(gs)?;
        let computed = if id.ends_with("_sym") {
            dc_sym(&f, &g, truncation)?.value
        } else {
            dc(&f, &g, truncation)?.value
        };
        rows.push(numeric_row(id, description, expected, computed, 2e-3));
    }

    // Partial sums of the quadratic-vs-linear series.
    let sums = partial_sums(&parse("n^2")?, &parse("n")?, 5)?;
    rows.push(numeric_row("sums/s2", "2-term partial sum of dc(n^2; n)", 0.0625, sums[1].1, 0.0));
    rows.push(numeric_row("sums/s3", "3-term partial sum of dc(n^2; n)", 0.0903, sums[2].1, 5e-4));
    rows.push(numeric_row("sums/s4", "4-term partial sum of dc(n^2; n)", 0.1020, sums[3].1, 5e-4));
    rows.push(numeric_row("sums/s5", "5-term partial sum of dc(n^2; n)", 0.1070, sums[4].1, 5e-4));

    // Separation iterates, exact integers.
    rows.push(text_row(
        "sep/iterate_fast",
        "first backward iterate separating d=0.111 past 0.5 at rate 2",
        "3".into(),
        separation_iterate(0.111, 2.0, 0.5)?.to_string(),
    ));
    rows.push(text_row(
        "sep/iterate_slow",
        "first backward iterate separating d=0.307 past 0.5 at rate 1.01",
        "50".into(),
        separation_iterate(0.307, 1.01, 0.5)?.to_string(),
    ));

    // Forward contraction of the cubic-vs-quadratic orbit.
    let contraction = orbit_trace(&parse("n^3")?, &parse("n^2")?, 2.0, 0, 3, truncation)?;
    let contraction_ids: [(&'static str, &'static str, f64); 4] = [
        ("orbit/contraction_k0", "dc(n^3; n^2) orbit at k=0, rate 2", 0.045),
        ("orbit/contraction_k1", "dc(n^3; n^2) orbit at k=1, rate 2", 0.023),
        ("orbit/contraction_k2", "dc(n^3; n^2) orbit at k=2, rate 2", 0.011),
        ("orbit/contraction_k3", "dc(n^3; n^2) orbit at k=3, rate 2", 0.006),
    ];
    for ((id, description, expected), row) in contraction_ids.into_iter().zip(&contraction.rows) {
        rows.push(numeric_row(id, description, expected, row.d_fg, 1e-3));
    }

    // Backward expansion, capped at the unit bound.
    let backward = orbit_trace(&parse("n^2")?, &parse("n")?, 3.0, -3, 0, truncation)?;
    let backward_ids: [(&'static str, &'static str, i32, f64); 4] = [
        ("orbit/backward_k0", "dc(n^2; n) orbit at k=0, rate 3", 0, 0.111),
        ("orbit/backward_k1", "dc(n^2; n) orbit at k=-1, rate 3", -1, 0.333),
        ("orbit/backward_k2", "dc(n^2; n) orbit at k=-2, rate 3", -2, 0.999),
        ("orbit/backward_k3", "dc(n^2; n) orbit at k=-3, rate 3 (capped)", -3, 1.000),
    ];
    for (id, description, k, expected) in backward_ids {
        let row = backward
            .rows
            .iter()
            .find(|r| r.k == k)
            .expect("iterate in range");
        rows.push(numeric_row(id, description, expected, row.d_fg, 2e-3));
    }

    // Gap verdicts.
    let gap_rows: [(&'static str, &'static str, &'static str, &'static str, GapVerdict); 3] = [
        (
            "gap/lin_vs_polylog",
            "gap verdict for (n; n log^2(n+1))",
            "n",
            "n * log(n+1)^2",
            GapVerdict::GapHolds,
        ),
        (
            "gap/quad_vs_exp",
            "gap verdict for (n^2; 2^n)",
            "n^2",
            "2^n",
            GapVerdict::GapHolds,
        ),
        (
            "gap/insufficient",
            "gap verdict for (n log n; n log n loglog n)",
            "n * log(n)",
            "n * log(n) * log(log(n))",
            GapVerdict::GapFails,
        ),
    ];
    for (id, description, fs, gs, expected) in gap_rows {
        let trace = gap_check(&parse(fs)?, &parse(gs)?, DEFAULT_GAP_POINTS)?;
        rows.push(text_row(
            id,
            description,
            verdict_name(expected).into(),
            verdict_name(trace.verdict).into(),
        ));
    }

    // The hierarchy pair separates at the origin.
    let sep = hierarchy_separation(
        &parse("n")?,
        &parse("n * log(n+1)^2")?,
        2.0,
        0.05,
        50,
        truncation,
    )?;
    rows.push(text_row(
        "hier/separation_at",
        "iterate separating the hierarchy pair past 0.05",
        "0".into(),
        sep.at_iterate.map_or_else(|| "none".into(), |k| k.to_string()),
    ));

    // A singleton set spans itself: counts stay at one, slope zero.
    let singleton = [parse("n")?];
    let est = entropy_estimate(
        &singleton,
        2.0,
        0.1,
        6,
        Variant::TwoSided,
        CoverMode::Exact,
        truncation,
    )?;
    let counts: Vec<String> = est.spanning_counts.iter().map(|c| c.r.to_string()).collect();
    rows.push(text_row(
        "entropy/singleton_counts",
        "spanning counts of a one-function set",
        "1 1 1 1 1 1".into(),
        counts.join(" "),
    ));
    rows.push(numeric_row(
        "entropy/singleton_slope",
        "entropy slope of a one-function set",
        0.0,
        est.slope_full_range,
        0.0,
    ));

    Ok(Report { rows })
}
