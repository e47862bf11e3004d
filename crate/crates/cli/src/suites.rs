//! The `verify` subcommand: module verifiers grouped into suites.

use std::path::Path;

use clap::ValueEnum;
use serde_json::{json, Value};

use glqv_core::exact::parse_ratio;
use glqv_core::fqpoly::verify_repeated_factor_counts;
use glqv_core::glnq::{
    build_r_set, group_order, verify_class_count_bounds, verify_counting_lemmas, verify_ord_ell,
    verify_parametrization, verify_sampler_fit, SampleMode,
};
use glqv_core::numtheory::{verify_big_factor, verify_cong_batch, verify_primitive_orders, verify_product_identity};
use glqv_core::partitions::{verify_power2_phi, verify_rare, verify_recurrence};
use glqv_core::{gl2, oracle, Caps, Report};

use crate::commands::field;
use crate::emit::{to_json, Artifact};
use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Partitions,
    Numtheory,
    Fqpoly,
    Glnq,
    Sampler,
    Gl2,
    Oracle,
}

const ORDER: [Suite; 7] = [
    Suite::Partitions,
    Suite::Numtheory,
    Suite::Fqpoly,
    Suite::Glnq,
    Suite::Sampler,
    Suite::Gl2,
    Suite::Oracle,
];

/// Largest `q^n` used by the enumerating glnq checks inside `verify`.
const ENUMERATION_LIMIT: u64 = 1 << 12;

pub struct Scope<'a> {
    pub max_n: u32,
    pub qs: &'a [u64],
    pub caps: &'a Caps,
    pub snapshot_dump: Option<&'a Path>,
}

fn small_cases(scope: &Scope) -> Vec<(u32, u64)> {
    let mut out = Vec::new();
    for &q in scope.qs {
        for n in 1..=scope.max_n {
            if q.checked_pow(n).is_some_and(|s| s <= ENUMERATION_LIMIT) {
                out.push((n, q));
            }
        }
    }
    out
}

fn partitions() -> Vec<Report> {
    vec![verify_power2_phi(1000), verify_rare(200, 2), verify_recurrence(40)]
}

fn numtheory(caps: &Caps) -> Vec<Report> {
    vec![
        verify_product_identity(100, &[2, 3, 5, 10]),
        verify_big_factor(3..=40, &[2, 3], caps),
        verify_primitive_orders(10, 30, &[2, 3], caps),
        verify_cong_batch(200, 1),
    ]
}

fn glnq(scope: &Scope) -> Result<Vec<Report>, Failure> {
    let mut out = Vec::new();
    for (n, q) in small_cases(scope) {
        out.push(verify_parametrization(&*field(q)?, n, scope.caps)?);
    }
    out.push(verify_class_count_bounds(20, scope.qs));
    let thresholds: Vec<u32> = (2..=8).collect();
    out.push(verify_counting_lemmas(scope.max_n.max(8), scope.qs, &thresholds));
    let largest = small_cases(scope).iter().map(|&(n, q)| q.pow(n)).max().unwrap_or(1);
    out.push(verify_ord_ell(largest.min(1 << 10), scope.caps)?);
    let k = parse_ratio("100").expect("literal");
    let eps = parse_ratio("1/2").expect("literal");
    for (n, q) in small_cases(scope) {
        if n >= 3 {
            out.push(build_r_set(&*field(q)?, n, &k, &eps, scope.caps)?.checks);
        }
    }
    Ok(out)
}

fn sampler(scope: &Scope) -> Result<Vec<Report>, Failure> {
    let n = scope.max_n.min(3);
    let q = scope.qs.iter().copied().min().unwrap_or(2);
    let mut out = Vec::new();
    for mode in [SampleMode::UniformCharacters, SampleMode::ClassSizeWeighted] {
        let fit = verify_sampler_fit(field(q)?, n, mode, 20_000, 7, 0.999, scope.caps)?;
        let mut r = Report::new(format!("sampler fit n={n} q={q} {mode:?}"));
        r.check(fit.pass, || format!("χ² = {:.3} exceeds {:.3}", fit.statistic, fit.critical));
        r.note(format!("χ² = {:.3}, critical value {:.3}, {} classes", fit.statistic, fit.critical, fit.classes));
        out.push(r);
    }
    Ok(out)
}

fn gl2_suite(scope: &Scope) -> Result<Vec<Report>, Failure> {
    let grid: Vec<_> = ["1/20", "1/10", "1/5", "1/4", "1/2", "1"].iter().filter_map(|s| parse_ratio(s)).collect();
    let mut out = Vec::new();
    for &q in scope.qs {
        let table = gl2::build_table(q)?;
        out.push(table.verify_orthogonality());
        out.push(table.verify_lemma_a(&grid).0);
        if q <= 9 {
            out.push(table.verify_burnside_chain());
        }
        out.push(table.crosscheck_with_glnq(scope.caps)?);
    }
    Ok(out)
}

fn oracle_suite(scope: &Scope) -> Result<Vec<Report>, Failure> {
    let mut snapshots = Vec::new();
    let mut out = Vec::new();
    for &q in scope.qs {
        for n in 2..=scope.max_n {
            if group_order(n, q) > scope.caps.group_order.into() {
                continue;
            }
            let snap = oracle::snapshot(n as usize, q, scope.caps)?;
            out.push(oracle::match_parametrization(&snap)?);
            if scope.snapshot_dump.is_some() {
                snapshots.push(to_json(&snap));
            }
        }
    }
    if let Some(path) = scope.snapshot_dump {
        let bytes = serde_json::to_vec_pretty(&Value::Array(snapshots)).map_err(|e| Failure::Internal(e.to_string()))?;
        std::fs::write(path, bytes).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    Ok(out)
}

fn run_one(suite: Suite, scope: &Scope) -> Result<Vec<Report>, Failure> {
    Ok(match suite {
        Suite::Partitions => partitions(),
        Suite::Numtheory => numtheory(scope.caps),
        Suite::Fqpoly => vec![verify_repeated_factor_counts(scope.max_n.max(8) as u64, scope.qs)],
        Suite::Glnq => glnq(scope)?,
        Suite::Sampler => sampler(scope)?,
        Suite::Gl2 => gl2_suite(scope)?,
        Suite::Oracle => oracle_suite(scope)?,
        Suite::All => unreachable!("expanded by the caller"),
    })
}

fn name(suite: Suite) -> String {
    suite.to_possible_value().expect("no skipped variants").get_name().to_string()
}

pub fn verify(suite: Suite, scope: &Scope) -> Result<Artifact, Failure> {
    let selected: Vec<Suite> = if suite == Suite::All { ORDER.to_vec() } else { vec![suite] };
    let mut art = Artifact::new(
        vec!["suite", "check", "passed", "failed", "skipped", "unverified", "pass", "first_failure"],
        Value::Null,
    );
    let mut suites = Vec::new();
    for s in selected {
        let reports = run_one(s, scope)?;
        let mut pass = true;
        for r in &reports {
            pass &= r.is_pass();
            art.row(vec![
                name(s),
                r.name.clone(),
                r.passed.to_string(),
                r.failed.to_string(),
                r.skipped.to_string(),
                r.unverified.to_string(),
                r.is_pass().to_string(),
                r.first_failure().unwrap_or("").to_string(),
            ]);
        }
        art.pass &= pass;
        suites.push(json!({ "suite": name(s), "pass": pass, "reports": to_json(&reports) }));
    }
    art.json = json!({
        "suite": name(suite),
        "max_n": scope.max_n,
        "q": scope.qs,
        "pass": art.pass,
        "suites": suites,
    });
    Ok(art)
}
