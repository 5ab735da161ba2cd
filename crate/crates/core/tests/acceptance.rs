//! Acceptance gate: one line per criterion, with its runtime budget.

use qpade_core::report::{tally, CheckReport};
use qpade_core::suite::{self, SuiteOptions, WeylGroup, QRT_STEPS};
use std::io::Write;
use std::time::{Duration, Instant};

const SEED: u64 = 42;

struct Outcome {
    id: usize,
    title: &'static str,
    ok: bool,
    detail: String,
}

fn judge(
    id: usize,
    title: &'static str,
    budget_secs: u64,
    required: &[&str],
    run: impl FnOnce() -> qpade_core::Result<Vec<CheckReport>>,
) -> Outcome {
    let start = Instant::now();
    let result = run();
    let elapsed = start.elapsed();
    let in_time = elapsed <= Duration::from_secs(budget_secs);
    match result {
        Ok(reports) => {
            let t = tally(&reports);
            let missing: Vec<&str> = required
                .iter()
                .copied()
                .filter(|name| !reports.iter().any(|r| r.check.starts_with(name) && r.passed()))
                .collect();
            let failing: Vec<&str> = reports
                .iter()
                .filter(|r| r.failed())
                .map(|r| r.check.as_str())
                .collect();
            let ok = in_time && t.fail == 0 && t.pass > 0 && missing.is_empty();
            let mut detail = format!(
                "{} pass, {} fail, {} skip in {:.2?} (budget {budget_secs} s)",
                t.pass, t.fail, t.skip, elapsed
            );
            if !missing.is_empty() {
                detail += &format!("; missing {missing:?}");
            }
            if let Some(first) = failing.first() {
                detail += &format!("; first failure {first}");
            }
            Outcome {
                id,
                title,
                ok,
                detail,
            }
        }
        Err(e) => Outcome {
            id,
            title,
            ok: false,
            detail: format!("error: {e} after {elapsed:.2?}"),
        },
    }
}

#[test]
fn acceptance() {
    let mut rows = vec![
        judge(
            1,
            "q-kernel identities",
            5,
            &[
                "qkernel-q-neg-n-relation",
                "qkernel-finite-q-relation",
                "qkernel-f-prime-product",
            ],
            || suite::qkernel_checks(SEED),
        ),
        judge(
            2,
            "Padé correctness",
            20,
            &[
                "pade-d5-series-residual",
                "pade-e6-nodal-residual",
                "pade-e6-det-vs-solver",
            ],
            || suite::pade_checks(SEED, 5),
        ),
        judge(
            3,
            "Lax exactness",
            30,
            &[
                "lax-l2-p[D5_T]",
                "lax-l3-yq-series[D5_T]",
                "lax-l2-yq-nodes[E6_T]",
                "lax-l2-p[E6_T1]",
                "lax-l2-p[E6_T2]",
                "lax-l2-p[E6_T3]",
                "lax-l3-p[E6_T4]",
            ],
            || suite::lax_checks(SEED, 5),
        ),
        judge(
            4,
            "compatibility identities",
            60,
            &[
                "d5-g-evolution",
                "d5-f-evolution",
                "d5-c1c2-f-product",
                "d5-c1c2-lowest-order",
                "e6-g-evolution",
                "e6-f-evolution",
                "e6-c1c2-at-g",
                "e6-c1c2-highest-order",
            ],
            || suite::compat_checks(SEED, 5),
        ),
        judge(
            5,
            "hypergeometric solutions",
            30,
            &[
                "special-value-",
                "special-ratio-",
                "solution-f-at-",
                "solution-f-closed-constant",
            ],
            || suite::solution_checks(SEED, 5),
        ),
        judge(
            6,
            "direction contiguity",
            60,
            &[
                "direction-contiguity-g1-g2",
                "direction-contiguity-g1-g3",
                "direction-contiguity-g1-g4",
                "direction-g2-vs-t",
                "direction-t1-g-equation",
                "direction-t2-g-equation",
                "direction-t3-g-equation",
                "direction-t4-g-equation",
            ],
            || suite::direction_checks(SEED, 3),
        ),
        judge(
            7,
            "QRT pencils and orbits",
            30,
            &[
                "qrt-qp6-pencil-dimension",
                "qrt-qp6-broken-condition-dimension",
                "qrt-qp6-lambda-conserved",
                "qrt-qp6-horizontal-closed-form",
                "qrt-qp6-x0-zero-product",
                "qrt-e6-pencil-dimension",
                "qrt-e6-lambda-conserved",
                "qrt-e6-vertical-closed-form",
            ],
            || suite::qrt_checks(SEED, 5, QRT_STEPS),
        ),
        judge(
            8,
            "Weyl engine",
            60,
            &[
                "weyl-involution-",
                "weyl-braid-",
                "weyl-pi1-pi2-cubed",
                "weyl-conjugate-",
                "weyl-translation-parameter-shift",
                "weyl-g-equation",
                "weyl-f-equation",
                "weyl-scaling-commutes-",
            ],
            || {
                let mut out = Vec::new();
                for g in [
                    WeylGroup::Relations,
                    WeylGroup::Translation,
                    WeylGroup::Directions,
                ] {
                    out.extend(suite::weyl_checks(SEED, 5, g)?);
                }
                Ok(out)
            },
        ),
    ];

    let start = Instant::now();
    let runs: Vec<_> = (0..2)
        .map(|_| {
            suite::run_suite(SuiteOptions {
                seed: SEED,
                float_sanity: false,
            })
        })
        .collect();
    let each = start.elapsed() / 2;
    rows.push(match (&runs[0], &runs[1]) {
        (Ok(a), Ok(b)) => {
            let (ja, jb) = (
                serde_json::to_string(a).unwrap(),
                serde_json::to_string(b).unwrap(),
            );
            let t = tally(a);
            Outcome {
                id: 9,
                title: "determinism and total runtime",
                ok: ja == jb && t.fail == 0 && each <= Duration::from_secs(300),
                detail: format!(
                    "byte-identical {}, {} records ({} fail), {:.2?} per run (budget 300 s)",
                    ja == jb,
                    a.len(),
                    t.fail,
                    each
                ),
            }
        }
        _ => Outcome {
            id: 9,
            title: "determinism and total runtime",
            ok: false,
            detail: "suite errored".into(),
        },
    });

    rows.push(match suite::float_sanity() {
        Ok(r) => Outcome {
            id: 10,
            title: "float sanity (non-exact)",
            ok: r.passed(),
            detail: format!(
                "|P/Q - Y| = {} (tolerance {})",
                r.witness["abs_error"], r.witness["tolerance"]
            ),
        },
        Err(e) => Outcome {
            id: 10,
            title: "float sanity (non-exact)",
            ok: false,
            detail: e.to_string(),
        },
    });

    // straight to the stderr handle so the table shows without --nocapture
    let mut err = std::io::stderr().lock();
    for r in &rows {
        writeln!(
            err,
            "criterion {:>2} {} {}: {}",
            r.id,
            if r.ok { "PASS" } else { "FAIL" },
            r.title,
            r.detail
        )
        .unwrap();
    }
    let failed: Vec<usize> = rows.iter().filter(|r| !r.ok).map(|r| r.id).collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
