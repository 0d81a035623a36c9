//! The acceptance gate: one test per headline claim, each printing a
//! single PASS/FAIL line (visible with `--nocapture`, and in the captured
//! output of any failing test).

use std::panic::{catch_unwind, resume_unwind, AssertUnwindSafe};
use std::process::Command;

use cqdyn::classes::{containment_check, stable_membership, unstable_membership, Certificate};
use cqdyn::dynamics::{
    check_expansive, lipschitz_residual, orbit_trace, scale, separation_iterate,
};
use cqdyn::entropy::{entropy_estimate, CoverMode, Variant};
use cqdyn::funcspace::{dominates, ComplexityFunction};
use cqdyn::hierarchy::{gap_check, hierarchy_separation, GapVerdict, DEFAULT_GAP_POINTS};
use cqdyn::qmetric::{closed_form_oracle, dc, dc_conjugate, dc_sym, partial_sums, OraclePair};
use cqdyn::report::REFERENCE_CORPUS;

const N: u32 = 80;

fn criterion(number: u32, description: &str, body: impl FnOnce()) {
    match catch_unwind(AssertUnwindSafe(body)) {
        Ok(()) => println!("PASS criterion {number}: {description}"),
        Err(payload) => {
            println!("FAIL criterion {number}: {description}");
            resume_unwind(payload);
        }
    }
}

fn f(src: &str) -> ComplexityFunction {
    ComplexityFunction::parse(src).unwrap()
}

fn corpus() -> Vec<ComplexityFunction> {
    REFERENCE_CORPUS.iter().map(|s| f(s)).collect()
}

#[test]
fn criterion_01_closed_forms() {
    criterion(
        1,
        "series distance at N=80 matches the four closed forms within 2^-80 + 1e-12",
        || {
            let tolerance = 0.5f64.powi(80) + 1e-12;
            for pair in OraclePair::ALL {
                let (fs, gs) = pair.functions();
                let series = dc(&f(fs), &f(gs), N).unwrap().value;
                let exact = closed_form_oracle(pair);
                assert!(
                    (series - exact).abs() <= tolerance,
                    "{pair}: series {series} vs closed form {exact}"
                );
            }
        },
    );
}

#[test]
fn criterion_02_distance_table() {
    criterion(2, "the ten reference distances reproduce within 2e-3", || {
        let cases: [(&str, &str, f64); 6] = [
            ("n^2", "n", 0.111),
            ("n+1", "n", 0.307),
            ("2*n", "n", 0.347),
            ("n", "log(n+1)", 0.417),
            ("n", "sqrt(n)", 0.113),
            ("n^3", "n^2", 0.045),
        ];
        for (fs, gs, expected) in cases {
            let got = dc(&f(fs), &f(gs), N).unwrap().value;
            assert!((got - expected).abs() <= 2e-3, "dc({fs}; {gs}) = {got}");
        }
        let alternating = f("n + (-1)^(n+1)");
        let lin = f("n");
        let sym = dc_sym(&alternating, &lin, N).unwrap().value;
        let conj = dc_conjugate(&alternating, &lin, N).unwrap().value;
        assert!((sym - 0.262).abs() <= 2e-3, "sym = {sym}");
        assert!((conj - 0.131).abs() <= 2e-3, "conj = {conj}");
        let hier = dc_sym(&f("n"), &f("n * log(n+1)^2"), N).unwrap().value;
        assert!((hier - 0.541).abs() <= 2e-3, "hierarchy sym = {hier}");
        let unit = dc(&f("1"), &f("1/n"), N).unwrap().value;
        assert!((unit - 1.0).abs() <= 2e-3, "const vs reciprocal = {unit}");
    });
}

#[test]
fn criterion_03_partial_sums() {
    criterion(
        3,
        "partial sums: S2 exactly 0.0625; S3..S5 within 5e-4 of their references",
        || {
            let sums = partial_sums(&f("n^2"), &f("n"), 5).unwrap();
            assert_eq!(sums[1], (2, 0.0625));
            for (index, expected) in [(2usize, 0.0903), (3, 0.1020), (4, 0.1070)] {
                let (_, got) = sums[index];
                assert!((got - expected).abs() <= 5e-4, "S{} = {got}", index + 1);
            }
        },
    );
}

#[test]
fn criterion_04_quasi_metric_axioms() {
    criterion(
        4,
        "Q1-Q3 and the unit bound hold over the 12-function corpus (triangle tol 1e-12)",
        || {
            let fns = corpus();
            assert!(fns.len() >= 10);
            let size = fns.len();
            let mut matrix = vec![0.0f64; size * size];
            for (i, a) in fns.iter().enumerate() {
                for (j, b) in fns.iter().enumerate() {
                    matrix[i * size + j] = dc(a, b, N).unwrap().value;
                }
            }
            for (i, a) in fns.iter().enumerate() {
                // Q1: self-distance vanishes.
                assert_eq!(matrix[i * size + i], 0.0, "Q1 fails for {}", a.source());
                for (j, b) in fns.iter().enumerate() {
                    // Unit bound (no corpus pair involves sub-unit tails).
                    assert!(matrix[i * size + j] <= 1.0 + 1e-12);
                    // Q2: both directions vanish exactly when the functions
                    // dominate each other pointwise.
                    let both_zero = matrix[i * size + j] == 0.0 && matrix[j * size + i] == 0.0;
                    let mutual = dominates(a, b, N).unwrap().dominates
                        && dominates(b, a, N).unwrap().dominates;
                    assert_eq!(both_zero, mutual, "Q2 fails for {} vs {}", a.source(), b.source());
                    // Q3: triangle inequality through every intermediary.
                    for k in 0..size {
                        assert!(
                            matrix[i * size + j]
                                <= matrix[i * size + k] + matrix[k * size + j] + 1e-12,
                            "Q3 fails for ({}, {}, {})",
                            a.source(),
                            b.source(),
                            fns[k].source()
                        );
                    }
                }
            }
        },
    );
}

#[test]
fn criterion_05_lipschitz_identity() {
    criterion(
        5,
        "scaling residual under 1e-12 for corpus x {1/3,1/2,2,3,10}; spot check 0.037",
        || {
            let fns = corpus();
            for alpha in [1.0 / 3.0, 0.5, 2.0, 3.0, 10.0] {
                for a in &fns {
                    for b in &fns {
                        let residual = lipschitz_residual(a, b, alpha, N).unwrap();
                        assert!(
                            residual <= 1e-12,
                            "residual {residual} for ({}, {}) at alpha {alpha}",
                            a.source(),
                            b.source()
                        );
                    }
                }
            }
            let scaled = dc(&scale(&f("n^2"), 3.0).unwrap(), &scale(&f("n"), 3.0).unwrap(), N)
                .unwrap()
                .value;
            assert!((scaled - 0.037).abs() <= 1e-3, "spot check = {scaled}");
        },
    );
}

#[test]
fn criterion_06_expansiveness_dichotomy() {
    criterion(
        6,
        "alpha in {1/2,2} separates all distinct pairs within prediction+1; alpha=1 never; iterates 3 and 50 exact",
        || {
            let fns = corpus();
            let delta = 0.5;
            for alpha in [0.5, 2.0] {
                for a in &fns {
                    for b in &fns {
                        let initial = dc_sym(a, b, N).unwrap().value;
                        if initial == 0.0 {
                            continue;
                        }
                        let result = check_expansive(a, b, alpha, delta, 60, N).unwrap();
                        assert!(result.found, "({}, {}) at alpha {alpha}", a.source(), b.source());
                        let witness = result.at_iterate.unwrap().unsigned_abs();
                        let predicted = result.predicted_iterate.unwrap();
                        assert!(
                            witness <= predicted + 1,
                            "({}, {}): witness {witness} vs predicted {predicted}",
                            a.source(),
                            b.source()
                        );
                    }
                }
            }
            for a in &fns {
                for b in &fns {
                    let initial = dc_sym(a, b, N).unwrap().value.min(1.0);
                    if initial == 0.0 {
                        continue;
                    }
                    let result = check_expansive(a, b, 1.0, initial + 1e-9, 30, N).unwrap();
                    assert!(!result.found, "({}, {})", a.source(), b.source());
                    assert_eq!(result.predicted_iterate, None);
                }
            }
            assert_eq!(separation_iterate(0.111, 2.0, 0.5).unwrap(), 3);
            assert_eq!(separation_iterate(0.307, 1.01, 0.5).unwrap(), 50);
        },
    );
}

#[test]
fn criterion_07_hyperbolic_orbits() {
    criterion(
        7,
        "contraction 0.045->0.006 within 1e-3 per step; capped backward run within 2e-3",
        || {
            let forward = orbit_trace(&f("n^3"), &f("n^2"), 2.0, 0, 3, N).unwrap();
            for (row, expected) in forward.rows.iter().zip([0.045, 0.023, 0.011, 0.006]) {
                assert!(
                    (row.d_fg - expected).abs() <= 1e-3,
                    "k={}: {} vs {expected}",
                    row.k,
                    row.d_fg
                );
            }
            let backward = orbit_trace(&f("n^2"), &f("n"), 3.0, -3, 0, N).unwrap();
            let expected = [(-3, 1.000), (-2, 0.999), (-1, 0.333), (0, 0.111)];
            for (k, value) in expected {
                let row = backward.rows.iter().find(|r| r.k == k).unwrap();
                assert!(
                    (row.d_fg - value).abs() <= 2e-3,
                    "k={k}: {} vs {value}",
                    row.d_fg
                );
            }
        },
    );
}

#[test]
fn criterion_08_class_membership() {
    criterion(
        8,
        "the six membership verdicts reproduce; unstable set sits inside the wide stable set over the corpus",
        || {
            let narrow = stable_membership(&f("n"), &f("sqrt(n)"), 2.0, 0.1, 10, N).unwrap();
            assert!(!narrow.member);
            let wide = stable_membership(&f("n"), &f("sqrt(n)"), 2.0, 0.2, 10, N).unwrap();
            assert!(wide.member);
            let doubled = stable_membership(&f("n"), &f("2*n"), 2.0, 0.1, 10, N).unwrap();
            assert!(doubled.member);
            assert_eq!(doubled.certificate, Certificate::Dominance);
            let successor = unstable_membership(&f("n"), &f("n+1"), 1000).unwrap();
            assert!(!successor.member);
            assert_eq!(successor.certificate, Certificate::ViolationAtN(1));
            let shallower = unstable_membership(&f("n^2"), &f("n"), 1000).unwrap();
            assert!(shallower.member);
            let exponential = stable_membership(&f("2^n"), &f("n^100"), 2.0, 0.01, 10, N).unwrap();
            assert!(!exponential.member);

            let fns = corpus();
            for reference in &fns {
                let report = containment_check(reference, &fns, 2.0, 0.9, N).unwrap();
                assert!(
                    report.containment_holds,
                    "containment fails for {}",
                    reference.source()
                );
            }
        },
    );
}

#[test]
fn criterion_09_hierarchy() {
    criterion(
        9,
        "gap verdicts HOLDS/HOLDS/FAILS; separation of the first pair at k=0 with d 0.541 +- 2e-3",
        || {
            let polylog = gap_check(&f("n"), &f("n * log(n+1)^2"), DEFAULT_GAP_POINTS).unwrap();
            assert_eq!(polylog.verdict, GapVerdict::GapHolds);
            let exponential = gap_check(&f("n^2"), &f("2^n"), DEFAULT_GAP_POINTS).unwrap();
            assert_eq!(exponential.verdict, GapVerdict::GapHolds);
            let insufficient = gap_check(
                &f("n * log(n)"),
                &f("n * log(n) * log(log(n))"),
                DEFAULT_GAP_POINTS,
            )
            .unwrap();
            assert_eq!(insufficient.verdict, GapVerdict::GapFails);

            let sep = hierarchy_separation(&f("n"), &f("n * log(n+1)^2"), 2.0, 0.05, 50, N).unwrap();
            assert!(sep.found);
            assert_eq!(sep.at_iterate, Some(0));
            let witness = sep.distance.unwrap();
            assert!((witness - 0.541).abs() <= 2e-3, "witness = {witness}");
        },
    );
}

#[test]
fn criterion_10_entropy() {
    criterion(
        10,
        "singleton flat; forward slope exactly 0; slope halves from n_max 8 to 32; greedy within 1 of exact; proxy within 0.3 of ln 2",
        || {
            let geometric = |count: u32| -> Vec<ComplexityFunction> {
                (0..count).map(|a| f(&format!("{} * n", 1u64 << a))).collect()
            };

            let singleton =
                entropy_estimate(&[f("n")], 2.0, 0.1, 6, Variant::TwoSided, CoverMode::Exact, N)
                    .unwrap();
            assert!(singleton.spanning_counts.iter().all(|c| c.r == 1));
            assert_eq!(singleton.slope_full_range, 0.0);
            assert_eq!(singleton.slope_pre_saturation, 0.0);

            let forward =
                entropy_estimate(&geometric(4), 2.0, 0.1, 6, Variant::Forward, CoverMode::Exact, N)
                    .unwrap();
            assert_eq!(forward.slope_full_range, 0.0);

            let narrow =
                entropy_estimate(&geometric(4), 2.0, 0.1, 8, Variant::TwoSided, CoverMode::Exact, N)
                    .unwrap();
            let wide =
                entropy_estimate(&geometric(4), 2.0, 0.1, 32, Variant::TwoSided, CoverMode::Exact, N)
                    .unwrap();
            assert!(
                wide.slope_full_range < narrow.slope_full_range / 2.0,
                "{} vs {}",
                wide.slope_full_range,
                narrow.slope_full_range
            );

            for size in [4u32, 6, 8] {
                let set = geometric(size);
                for epsilon in [0.05, 0.1, 0.3, 0.4, 0.7] {
                    for n in [1, 2, 3] {
                        let exact =
                            cqdyn::entropy::spanning_number(&set, n, epsilon, 2.0, Variant::TwoSided, CoverMode::Exact, N)
                                .unwrap();
                        let greedy =
                            cqdyn::entropy::spanning_number(&set, n, epsilon, 2.0, Variant::TwoSided, CoverMode::Greedy, N)
                                .unwrap();
                        assert!(
                            greedy >= exact && greedy <= exact + 1,
                            "|K|={size}, eps={epsilon}, n={n}: greedy {greedy} vs exact {exact}"
                        );
                    }
                }
            }

            let proxy =
                entropy_estimate(&geometric(6), 2.0, 0.4, 5, Variant::TwoSided, CoverMode::Exact, N)
                    .unwrap();
            let counts: Vec<u32> = proxy.spanning_counts.iter().map(|c| c.r).collect();
            assert_eq!(counts, vec![1, 2, 3, 4, 5]);
            assert!(
                (proxy.slope_pre_saturation - std::f64::consts::LN_2).abs() <= 0.3,
                "proxy slope = {}",
                proxy.slope_pre_saturation
            );
        },
    );
}

#[test]
fn criterion_11_reproduce_command() {
    criterion(
        11,
        "the reproduce command exits 0 and lists every reference row; a coarse truncation exits 1",
        || {
            let binary = env!("CARGO_BIN_EXE_cqdyn");
            let output = Command::new(binary).arg("reproduce").output().unwrap();
            assert!(output.status.success(), "reproduce exited {:?}", output.status);
            let table = String::from_utf8(output.stdout).unwrap();
            let required = [
                "oracle/quad_vs_lin",
                "oracle/double_vs_lin",
                "oracle/const_vs_recip",
                "oracle/succ_vs_lin",
                "dist/quad_vs_lin",
                "dist/succ_vs_lin",
                "dist/double_vs_lin",
                "dist/lin_vs_log",
                "dist/lin_vs_sqrt",
                "dist/cube_vs_quad",
                "dist/alternating_sym",
                "dist/alternating_conj",
                "dist/hierarchy_sym",
                "dist/const_vs_recip",
                "sums/s2",
                "sums/s3",
                "sums/s4",
                "sums/s5",
                "sep/iterate_fast",
                "sep/iterate_slow",
                "orbit/contraction_k0",
                "orbit/contraction_k3",
                "orbit/backward_k0",
                "orbit/backward_k3",
                "gap/lin_vs_polylog",
                "gap/quad_vs_exp",
                "gap/insufficient",
                "hier/separation_at",
            ];
            for id in required {
                assert!(table.contains(id), "missing row {id}");
            }
            assert!(
                table.contains("34/34 rows pass"),
                "not every row passed:\n{table}"
            );

            let coarse = Command::new(binary)
                .args(["reproduce", "--N", "4"])
                .output()
                .unwrap();
            assert_eq!(coarse.status.code(), Some(1));
            let coarse_table = String::from_utf8(coarse.stdout).unwrap();
            assert!(coarse_table.contains(" FAIL\n"));
        },
    );
}
