mod common;

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use common::brute_force_count;
use superschur::kostant::*;
use superschur::qalgebra::enumerate_basis_yq;
use superschur::qfield::Rational;
use superschur::qreplift::*;
use superschur::replift::*;
use superschur::report::VerificationReport;
use superschur::superroot::Dims;

const SMALL: [(usize, usize, usize, u128); 6] = [
    (1, 1, 1, 4),
    (1, 1, 2, 8),
    (1, 1, 3, 12),
    (2, 1, 2, 41),
    (1, 2, 2, 41),
    (2, 2, 2, 128),
];

fn dims(m: usize, n: usize, d: usize) -> Dims {
    Dims::new(m, n, d).unwrap()
}

static CHECKS: AtomicUsize = AtomicUsize::new(0);

fn tally(k: usize) {
    CHECKS.fetch_add(k, Ordering::Relaxed);
}

fn report_failures(r: &VerificationReport) -> Vec<String> {
    tally(r.len());
    r.failures().map(|c| format!("{}: {c}", r.title)).collect()
}

fn dimensions() -> Vec<String> {
    let q0 = Rational::from_integer(2.into());
    let mut bad = Vec::new();
    for (m, n, d, expected) in SMALL {
        let g = dims(m, n, d);
        let (_, classical) = basis_rank_certify(&g);
        let (_, quantum) = basis_rank_certify_q(&g, &q0, false).unwrap();
        let values = [
            ("formula", dimension_count(&g)),
            ("monomial count", brute_force_count(m, n, d)),
            ("|Y|", enumerate_basis_y(&g).len() as u128),
            ("|Y_q|", enumerate_basis_yq(&g).len() as u128),
            ("rank ρ(Y)", classical.rank as u128),
            ("rank ρ(Y_q)", quantum.rank as u128),
            ("commutant", commutant_dimension(&g) as u128),
        ];
        tally(values.len());
        for (what, v) in values {
            if v != expected {
                bad.push(format!("{g}: {what} = {v}, expected {expected}"));
            }
        }
    }
    bad
}

fn classical_relations() -> Vec<String> {
    SMALL
        .iter()
        .flat_map(|&(m, n, d, _)| report_failures(&verify_relations_classical(&dims(m, n, d))))
        .collect()
}

fn classical_commutation() -> Vec<String> {
    report_failures(&verify_commutation_classical(&dims(2, 2, 3), 3))
}

fn quantum_relations() -> Vec<String> {
    [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 1, 2), (2, 2, 2)]
        .iter()
        .flat_map(|&(m, n, d)| report_failures(&verify_relations_quantum(&dims(m, n, d))))
        .collect()
}

fn quantum_commutation() -> Vec<String> {
    let r = verify_commutation_quantum(&dims(2, 2, 3), 2);
    let mut bad = report_failures(&r);
    if !r.checks.iter().any(|c| c.name == "root-vector-via" && c.passed) {
        bad.push("root-vector-via check missing".into());
    }
    bad
}

fn omega() -> Vec<String> {
    [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 1, 1), (2, 1, 2)]
        .iter()
        .flat_map(|&(m, n, d)| report_failures(&verify_omega(&dims(m, n, d)).0))
        .collect()
}

fn bijection() -> Vec<String> {
    let mut bad = Vec::new();
    for (m, n, d) in [(1, 1, 1), (1, 1, 2), (1, 1, 3), (2, 1, 2)] {
        let g = dims(m, n, d);
        let ys = enumerate_basis_y(&g);
        let ps = enumerate_p(&g);
        if ps.len() != ys.len() {
            bad.push(format!("{g}: |P| = {}, |Y| = {}", ps.len(), ys.len()));
        }
        let images: BTreeSet<_> = ps.iter().map(|p| p_to_y(p, &g).unwrap()).collect();
        if images.len() != ps.len() || images != ys.iter().cloned().collect() {
            bad.push(format!("{g}: P → Y is not a bijection"));
        }
        tally(ys.len() + 2);
        for y in &ys {
            let back = y_to_p(y, &g).and_then(|p| p_to_y(&p, &g));
            if back.as_ref() != Ok(y) {
                bad.push(format!("{g}: round trip fails at {y}"));
            }
        }
    }
    bad
}

fn idempotents() -> Vec<String> {
    let mut bad = Vec::new();
    for (m, n, d) in [(1, 1, 2), (2, 1, 2)] {
        let g = dims(m, n, d);
        bad.extend(report_failures(&verify_idempotents_classical(&g)));
        bad.extend(report_failures(&verify_idempotents_quantum(&g)));
    }
    bad
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Vec<String>); 8] = [
        ("dimension agreement (exact equality)", 120, dimensions),
        ("classical defining relations (exact)", 60, classical_relations),
        ("classical commutation formulas, (2|2,3), powers <= 3 (exact)", 120, classical_commutation),
        ("quantum defining relations over Q(q) (exact)", 300, quantum_relations),
        ("quantum commutation formulas, (2|2,3), powers <= 2 (exact)", 600, quantum_commutation),
        ("Ω construction (exact)", 60, omega),
        ("P ↔ Y bijection (exact)", 30, bijection),
        ("idempotent identities, classical and quantum (exact)", 60, idempotents),
    ];
    let mut all = true;
    for (k, (label, limit, run)) in criteria.iter().enumerate() {
        CHECKS.store(0, Ordering::Relaxed);
        let start = Instant::now();
        let bad = run();
        let took = start.elapsed();
        let limit = Duration::from_secs(*limit);
        let ok = bad.is_empty() && took <= limit;
        all &= ok;
        println!(
            "criterion {} {}: {label}; {} checks; {:.2?} (limit {:?})",
            k + 1,
            if ok { "PASS" } else { "FAIL" },
            CHECKS.load(Ordering::Relaxed),
            took,
            limit
        );
        for b in bad.iter().take(10) {
            println!("    {b}");
        }
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
