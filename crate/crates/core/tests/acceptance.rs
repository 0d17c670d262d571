//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use gt_core::harmonic::harmonic_suite;
use gt_core::oracle::{bessel_check, census, elementwise_agreement, orthogonality, s4_fixture, verify_embedding};
use gt_core::sl3::witness_no_gelfand;
use gt_core::suites::{freeness, indx_counts};
use gt_core::tensor::{classify_gelfand, compare_all, compare_sampled};
use gt_core::{Gl2Irrep, GroupParams, MultTable, Report};

const ALL_Q: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];
const SEED: u64 = 20240601;

struct Outcome {
    pass: bool,
    /// Failure matching a documented deviation; does not fail the run.
    known_deviation: bool,
    summary: String,
}

impl Outcome {
    fn from_bool(pass: bool, summary: String) -> Self {
        Self {
            pass,
            known_deviation: false,
            summary,
        }
    }
}

fn reports_ok(reports: &[Report]) -> (bool, String) {
    let bad: Vec<String> = reports
        .iter()
        .filter(|r| !r.pass)
        .map(|r| format!("{r} {}", r.first_failure().map(|v| v.to_string()).unwrap_or_default()))
        .collect();
    (bad.is_empty(), if bad.is_empty() { format!("{} reports", reports.len()) } else { bad.join("; ") })
}

fn closed_vs_sum() -> Outcome {
    let mut detail = Vec::new();
    let mut pass = true;
    for q in ALL_Q {
        let table = MultTable::new(GroupParams::new(q).unwrap());
        let n = table.irreps().len();
        let (bad, count) = if q <= 5 {
            (compare_all(&table), n * n * n)
        } else {
            (compare_sampled(&table, 10_000, SEED + q), 10_000)
        };
        if let Some(d) = bad.first() {
            detail.push(format!("q={q}: {d}"));
        }
        pass &= bad.is_empty();
        detail.push(format!("q={q}:{count}"));
    }
    Outcome::from_bool(pass, format!("triples {}", detail.join(" ")))
}

fn gelfand_classification() -> Outcome {
    let mut mismatches = Vec::new();
    for q in ALL_Q {
        let table = MultTable::new(GroupParams::new(q).unwrap());
        let g = *table.params();
        let got = classify_gelfand(&table).unwrap();
        let want: BTreeSet<Gl2Irrep> = g.irreps().into_iter().filter(|p| [1, q - 1].contains(&p.dim(&g))).collect();
        if got != want {
            let extra: Vec<String> = got.symmetric_difference(&want).map(ToString::to_string).collect();
            mismatches.push((q, extra));
        }
    }
    let known = mismatches == vec![(2, vec!["V:0".to_string()])];
    let summary = if mismatches.is_empty() {
        "dims {1, q-1} at every q".to_string()
    } else {
        let list: Vec<String> = mismatches.iter().map(|(q, e)| format!("q={q} differs on {}", e.join(","))).collect();
        format!(
            "{}{}",
            list.join("; "),
            if known {
                "; GL2(2) = S3 and V:0 (dim q = 2) is multiplicity free there; claim holds for all q >= 3"
            } else {
                ""
            }
        )
    };
    Outcome {
        pass: mismatches.is_empty(),
        known_deviation: known,
        summary,
    }
}

fn indx() -> Outcome {
    let reports: Vec<Report> = [3, 4, 5, 7, 8, 9].iter().map(|&q| indx_counts(q).unwrap()).collect();
    let (ok, s) = reports_ok(&reports);
    let labels: usize = reports.iter().map(|r| r.details.len()).sum();
    Outcome::from_bool(ok, format!("{labels} X labels; {s}"))
}

fn sl3() -> Outcome {
    let mut pass = true;
    let mut flagged = Vec::new();
    let mut count = 0;
    for q in ALL_Q {
        let g = GroupParams::new(q).unwrap();
        for tau in g.irreps() {
            count += 1;
            match witness_no_gelfand(&tau, &g) {
                Ok(w) => {
                    pass &= w.mult >= 2 && w.mult == w.expected;
                    if w.exceeds_two_for_x && !flagged.contains(&q) {
                        flagged.push(q);
                    }
                }
                Err(_) => pass = false,
            }
        }
    }
    let flags_ok = flagged == vec![4, 7];
    Outcome::from_bool(
        pass && flags_ok,
        format!("{count} irreps, all multiplicities >= 2 and exact; d = 3 flag raised at q = {flagged:?}"),
    )
}

fn oracle_suite() -> Outcome {
    let mut reports = Vec::new();
    for q in [2, 3, 4, 5] {
        reports.push(census(q).unwrap());
        reports.push(orthogonality(q).unwrap());
        let samples = (q > 3).then_some((1_000, SEED + q));
        reports.push(elementwise_agreement(q, samples).unwrap());
        reports.push(verify_embedding(q).unwrap());
    }
    let (ok, s) = reports_ok(&reports);
    Outcome::from_bool(ok, s)
}

fn fixtures() -> Outcome {
    let mut reports = vec![s4_fixture().unwrap()];
    for q in [3, 4, 5] {
        reports.push(bessel_check(q).unwrap());
    }
    let (ok, s) = reports_ok(&reports);
    Outcome::from_bool(ok, s)
}

fn harmonic() -> Outcome {
    let reports: Vec<Report> = [2, 3].iter().map(|&q| harmonic_suite(q).unwrap()).collect();
    let (ok, s) = reports_ok(&reports);
    let dims: Vec<String> = reports
        .iter()
        .flat_map(|r| {
            r.details
                .iter()
                .filter(|d| d.get("expected").is_some() && d.get("irrep").is_some())
                .map(move |d| format!("q={} {}={}", r.q, d["irrep"].as_str().unwrap_or(""), d["dim"]))
        })
        .collect();
    Outcome::from_bool(ok, format!("{s}; {}", dims.join(" ")))
}

fn freeness_all() -> Outcome {
    let reports: Vec<Report> = [3, 4, 5, 7, 8, 9].iter().map(|&q| freeness(q).unwrap()).collect();
    let (ok, s) = reports_ok(&reports);
    let pairs: Vec<String> = reports
        .iter()
        .map(|r| format!("q={}: {}/{}", r.q, r.details[0]["dim_e_x"], r.details[0]["dim_e_u0"]))
        .collect();
    Outcome::from_bool(ok, format!("{s}; {}", pairs.join(" ")))
}

fn main() -> ExitCode {
    let criteria: [(&str, Duration, fn() -> Outcome); 8] = [
        ("closed form equals class sum", Duration::from_secs(300), closed_vs_sum),
        ("Gelfand classification", Duration::from_secs(600), gelfand_classification),
        ("Ind X counts", Duration::from_secs(600), indx),
        ("SL3 witnesses", Duration::from_secs(600), sl3),
        ("oracle suite", Duration::from_secs(120), oracle_suite),
        ("S4/C3 and Bessel fixtures", Duration::from_secs(600), fixtures),
        ("harmonic suite", Duration::from_secs(600), harmonic),
        ("freeness obstruction", Duration::from_secs(600), freeness_all),
    ];
    let mut unexpected = 0;
    let mut passed = 0;
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let in_time = took <= *limit;
        let pass = out.pass && in_time;
        passed += pass as usize;
        if !pass && !(out.known_deviation && in_time) {
            unexpected += 1;
        }
        let tag = if pass { "PASS" } else { "FAIL" };
        let note = if !pass && out.known_deviation { " [known deviation]" } else { "" };
        let time_note = if in_time { String::new() } else { format!(" over limit {:.0}s", limit.as_secs_f64()) };
        println!(
            "criterion {}: {tag}{note} {name} ({:.1}s{time_note}) {}",
            i + 1,
            took.as_secs_f64(),
            out.summary
        );
    }
    println!("acceptance: {passed}/8 PASS, {unexpected} unexpected failure(s)");
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
