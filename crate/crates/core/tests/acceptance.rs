//! Acceptance run: one line per criterion with its verdict, wall time and
//! time bound.  Ranges, sample counts and tolerances are pinned here.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use sbdo_core::verify::{plan, CheckRecord, Ranges, Suite, CONSTANT_SAMPLES, CONSTANT_TOLERANCE, INVERSION_POINTS, ROUND_TRIPS};

struct Criterion {
    id: usize,
    title: String,
    suite: Suite,
    ranges: Ranges,
    bound: Duration,
}

fn criterion(id: usize, title: &str, suite: Suite, n_max: usize, m_max: usize, bound_secs: u64) -> Criterion {
    Criterion { id, title: title.to_string(), suite, ranges: Ranges { n_max, m_max }, bound: Duration::from_secs(bound_secs) }
}

fn criteria() -> Vec<Criterion> {
    vec![
        criterion(1, "sum_i e_i e_J e_i = (-1)^(k-1)(n-2k) e_J, all blades, n <= 6", Suite::Lemma, 6, 1, 1),
        criterion(2, "Psi^(k) L = (-1)^k (n-2k) Psi^(k), n <= 5", Suite::Psi, 5, 1, 5),
        criterion(
            3,
            &format!("inversion factors at {INVERSION_POINTS} points and {ROUND_TRIPS} round trips per n <= 4"),
            Suite::Gn,
            4,
            1,
            10,
        ),
        criterion(4, "symb(F_{s,t}) = f_{s,t}, formal s, t, n <= 3", Suite::Symbol, 3, 1, 30),
        criterion(5, "convolution-multiplication symbol identity with c(s,t), n <= 3", Suite::Main, 3, 1, 120),
        criterion(6, "derivative formulas of the Clifford-Riesz symbols, formal s, n <= 3", Suite::Derivatives, 3, 1, 1),
        criterion(
            7,
            &format!("Fourier constant relations below {CONSTANT_TOLERANCE:e} at {CONSTANT_SAMPLES} samples per n <= 4"),
            Suite::Constants,
            4,
            1,
            1,
        ),
        criterion(8, "M and E_{lambda,mu} covariant for every basis bivector, n <= 3", Suite::Covariance, 3, 1, 300),
        criterion(9, "B^(m)_k covariant and homogeneous, m <= 2, all k, n <= 3", Suite::Sbdo, 3, 2, 600),
        criterion(10, "B^(m) = B^(m-1)_{lambda+1,mu+1} o E_{lambda,mu}, m in {2,3}, n <= 2", Suite::Recurrence, 2, 3, 300),
        criterion(11, "n = 1 reduces to the three-term bracket up to a constant", Suite::RankinCohen, 1, 1, 1),
        criterion(12, "[d pi(X), d pi(Y)] = d pi([X,Y]) on all representations, n <= 3", Suite::Rep, 3, 1, 60),
        criterion(13, "discrepancy ledger against the printed closed forms, n <= 3", Suite::Ledger, 3, 1, 300),
    ]
}

fn run(c: &Criterion) -> (Vec<CheckRecord>, Duration) {
    let start = Instant::now();
    let checks = plan(&[c.suite], c.ranges);
    let records: Vec<CheckRecord> = checks.par_iter().map(|check| check.run()).collect();
    (records, start.elapsed())
}

#[test]
fn acceptance() {
    let mut failed = Vec::new();
    for c in criteria() {
        let (records, elapsed) = run(&c);
        let bad: Vec<&CheckRecord> = records.iter().filter(|r| !r.passed).collect();
        let in_time = elapsed <= c.bound;
        let ok = bad.is_empty() && !records.is_empty() && in_time;
        println!(
            "{} criterion {:>2}: {} [{} checks, {:.2} s, bound {} s]",
            if ok { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            records.len(),
            elapsed.as_secs_f64(),
            c.bound.as_secs()
        );
        for r in &bad {
            println!("    failed {} {}: {}", r.check, r.params, r.detail.as_deref().unwrap_or(""));
        }
        if c.suite == Suite::Ledger || c.suite == Suite::RankinCohen {
            for r in records.iter().filter(|r| r.passed) {
                println!("    {} {}: {}", r.check, r.params, r.detail.as_deref().unwrap_or(""));
            }
        }
        if !ok {
            failed.push(c.id);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
