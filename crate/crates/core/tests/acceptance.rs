//! The twelve acceptance criteria, each run at its stated scale and time
//! limit. Prints one line per criterion and exits nonzero if any fails.

use std::time::{Duration, Instant};

use num_rational::BigRational;

use glqv_core::exact::parse_ratio;
use glqv_core::fqpoly::{verify_repeated_factor_counts, FqCtx};
use glqv_core::glnq::{
    build_r_set, group_order, prime_powers_up_to, sum_degree_squares, verify_class_count_bounds,
    verify_counting_lemmas, verify_ord_ell, verify_parametrization, verify_sampler_fit, SampleMode,
};
use glqv_core::numtheory::{verify_big_factor, verify_cong_batch, verify_primitive_orders, verify_product_identity};
use glqv_core::partitions::{verify_power2_phi, verify_rare, verify_recurrence};
use glqv_core::{gl2, oracle, Caps, Report, Result};

struct Outcome {
    ok: bool,
    detail: String,
}

fn from_report(r: Report) -> Outcome {
    let detail = format!(
        "{} checks passed, {} failed, {} skipped, {} unverified{}",
        r.passed,
        r.failed,
        r.skipped,
        r.unverified,
        r.first_failure().map(|f| format!("; first failure: {f}")).unwrap_or_default()
    );
    Outcome { ok: r.is_pass() && r.passed > 0, detail }
}

fn ratio(s: &str) -> BigRational {
    parse_ratio(s).expect("literal fraction")
}

fn degree_squares() -> Result<Outcome> {
    let mut cases: Vec<(u32, u64)> = Vec::new();
    for q in [2u64, 3, 4, 5] {
        for n in 1..=4 {
            cases.push((n, q));
        }
    }
    cases.extend([(5, 2), (6, 2), (5, 3)]);
    let mut report = Report::new("Σ d² = |G|");
    for (n, q) in cases {
        let sum = sum_degree_squares(&*FqCtx::new(q)?, n, &Caps::default())?;
        let order = group_order(n, q);
        report.check(sum == order, || format!("n={n}, q={q}: Σ d² = {sum}, |G| = {order}"));
    }
    Ok(from_report(report))
}

fn class_certificate() -> Result<Outcome> {
    let caps = Caps::default();
    let cases = [(2usize, 2u64), (2, 3), (3, 2), (2, 4), (2, 5)];
    let mut report = oracle::verify_oracle(&cases, &caps)?;
    for (n, q) in cases {
        report.absorb(verify_parametrization(&*FqCtx::new(q)?, n as u32, &caps)?);
    }
    Ok(from_report(report))
}

fn class_count_bounds() -> Result<Outcome> {
    Ok(from_report(verify_class_count_bounds(20, &[2, 3, 4, 5, 7, 8, 9])))
}

fn partition_suite() -> Result<Outcome> {
    let mut report = Report::new("partitions");
    report.absorb(verify_power2_phi(1000));
    report.absorb(verify_rare(200, 2));
    report.absorb(verify_recurrence(40));
    Ok(from_report(report))
}

fn cyclotomic_suite() -> Result<Outcome> {
    let caps = Caps::default();
    let mut report = Report::new("cyclotomic");
    report.absorb(verify_product_identity(200, &[2, 3, 5, 10]));
    report.absorb(verify_big_factor(3..=100, &[2, 3, 4, 5], &caps));
    report.absorb(verify_primitive_orders(20, 60, &[2, 3], &caps));
    report.absorb(verify_cong_batch(500, 20_240_601));
    Ok(from_report(report))
}

fn ord_ell() -> Result<Outcome> {
    Ok(from_report(verify_ord_ell(1 << 10, &Caps::default())?))
}

fn counting_bounds() -> Result<Outcome> {
    let thresholds: Vec<u32> = (2..=8).collect();
    Ok(from_report(verify_counting_lemmas(12, &[2, 3], &thresholds)))
}

fn gl2_tables() -> Result<Outcome> {
    let grid: Vec<BigRational> = ["1/20", "1/10", "1/5", "1/4", "1/2", "1"].iter().map(|s| ratio(s)).collect();
    let mut report = Report::new("GL(2,q) tables");
    for q in prime_powers_up_to(25) {
        let table = gl2::build_table(q)?;
        report.absorb(table.verify_orthogonality());
        report.absorb(table.verify_lemma_a(&grid).0);
    }
    Ok(from_report(report))
}

fn burnside_chain() -> Result<Outcome> {
    let mut report = Report::new("Burnside chain");
    for q in prime_powers_up_to(9) {
        report.absorb(gl2::verify_burnside_chain(q)?);
    }
    Ok(from_report(report))
}

fn r_set() -> Result<Outcome> {
    let caps = Caps::default();
    let mut report = Report::new("R-set");
    let mut off_r = 0;
    for n in [3u32, 4] {
        let r = build_r_set(&*FqCtx::new(2)?, n, &ratio("100"), &ratio("1/2"), &caps)?;
        off_r += r.off_r_pairs;
        report.check(!r.empty_x, || format!("X is empty at n={n}"));
        report.absorb(r.checks);
    }
    report.check(off_r > 0, || "no pair lies off R".into());
    Ok(from_report(report))
}

fn sampler_fidelity() -> Result<Outcome> {
    let fit = verify_sampler_fit(FqCtx::new(2)?, 3, SampleMode::ClassSizeWeighted, 100_000, 1_234_567, 0.999, &Caps::default())?;
    Ok(Outcome {
        ok: fit.pass,
        detail: format!(
            "{} samples over {} classes: χ² = {:.3} vs 0.999 quantile {:.3}",
            fit.samples, fit.classes, fit.statistic, fit.critical
        ),
    })
}

fn nearly_squarefree() -> Result<Outcome> {
    Ok(from_report(verify_repeated_factor_counts(12, &[2, 3])))
}

type Criterion = (u32, &'static str, Duration, fn() -> Result<Outcome>);

fn main() {
    let criteria: [Criterion; 12] = [
        (1, "degree-formula certificate", Duration::from_secs(120), degree_squares),
        (2, "class certificate against the matrix oracle", Duration::from_secs(60), class_certificate),
        (3, "class-count bounds q^n/2 ≤ k ≤ q^n", Duration::from_secs(60), class_count_bounds),
        (4, "partition suite", Duration::from_secs(30), partition_suite),
        (5, "cyclotomic suite", Duration::from_secs(120), cyclotomic_suite),
        (6, "ord-ℓ degree formula", Duration::from_secs(120), ord_ell),
        (7, "deficiency and degree-m counting bounds", Duration::from_secs(120), counting_bounds),
        (8, "GL(2,q) orthogonality and P ≤ Q(ε)+ε²", Duration::from_secs(180), gl2_tables),
        (9, "Burnside chain", Duration::from_secs(180), burnside_chain),
        (10, "R-set mechanics", Duration::from_secs(60), r_set),
        (11, "weighted sampler fidelity", Duration::from_secs(60), sampler_fidelity),
        (12, "nearly-squarefree counting step", Duration::from_secs(60), nearly_squarefree),
    ];
    let mut failed = 0;
    for (id, name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (ok, detail) = match result {
            Ok(o) => (o.ok && elapsed < limit, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {} {name} [{:.2}s / {}s] {detail}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if failed > 0 {
        println!("acceptance: {failed} of 12 criteria failed");
        std::process::exit(1);
    }
    println!("acceptance: all 12 criteria passed");
}
