//! Exact counts of `ν`-maps by generating functions, and the finite
//! inequalities they are checked against.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exact::{fib_lucas, pow_nat, sign_quadratic, to_bigint};
use crate::fqpoly::count_irreducibles_q;
use crate::partitions::partition_numbers;
use crate::report::Report;
use crate::series;

/// `[x^n] ∏_d (Σ_s g_d[s]·x^{d·s})^{N_d}` where `g_d = block(d)` has
/// constant term 1 and `N_d` counts degree-`d` irreducibles.
fn layered(n: u32, q: u64, block: impl Fn(u32) -> Vec<BigUint>) -> BigUint {
    let len = n as usize;
    let mut acc = series::one(len);
    for d in 1..=n {
        let g = block(d);
        let mut spread = vec![BigUint::zero(); len + 1];
        for (s, c) in g.into_iter().enumerate() {
            let idx = s * d as usize;
            if idx > len {
                break;
            }
            spread[idx] = c;
        }
        let powered = series::pow_trunc(&spread, &count_irreducibles_q(q, d as u64), len);
        acc = series::mul_trunc(&acc, &powered, len);
    }
    acc[len].clone()
}

/// Number of degree-`n` maps, i.e. `k(GL(n,q))`: the coefficient of `x^n`
/// in `∏_d ∏_k (1 − x^{dk})^{−N_d}`.
pub fn count_numaps(n: u32, q: u64) -> BigUint {
    let len = n as usize;
    let mut acc = series::one(len);
    for d in 1..=len {
        let count = count_irreducibles_q(q, d as u64);
        for k in 1..=len / d {
            acc = series::mul_trunc(&acc, &series::inverse_binomial(&count, d * k, len), len);
        }
    }
    acc[len].clone()
}

/// `q^n/2 ≤ k ≤ q^n`.
pub fn class_count_bounds_hold(n: u32, q: u64, count: &BigUint) -> bool {
    let qn = pow_nat(q, n as u64);
    count * 2u32 >= qn && *count <= qn
}

pub fn verify_class_count_bounds(n_max: u32, qs: &[u64]) -> Report {
    let mut report = Report::new("class-count bounds");
    for &q in qs {
        for n in 1..=n_max {
            let count = count_numaps(n, q);
            report.check(class_count_bounds_hold(n, q, &count), || {
                format!("n={n}, q={q}: k(G)={count} outside [q^n/2, q^n]")
            });
        }
    }
    report
}

/// Degree-`n` maps with `deg f·(|ν(f)| − 1) ≥ N` for some `f`; counted as
/// the complement of maps where every `|ν(f)| ≤ 1 + ⌊(N−1)/deg f⌋`.
pub fn count_high_deficiency(n: u32, q: u64, big_n: u32) -> Result<BigUint> {
    if big_n == 0 {
        return Err(Error::Domain("the deficiency threshold N must be positive".into()));
    }
    let p = partition_numbers(n as u64);
    let low = layered(n, q, |d| {
        let s_max = (1 + (big_n - 1) / d).min(n / d);
        p[..=s_max as usize].to_vec()
    });
    Ok(count_numaps(n, q) - low)
}

/// `count < (2Nγ^N/(1−γ)²)·q^n` with `γ = φ/2`, decided exactly.
///
/// With `φ^N = (L_N + F_N√5)/2` and `1/(1−γ)² = 2(7 + 3√5)`, the bound reads
/// `count·2^{N−1} < N·q^n·(A + B√5)` where `A = 7L + 15F`, `B = 3L + 7F`.
pub fn deficiency_bound_holds(count: &BigUint, n: u32, q: u64, big_n: u32) -> bool {
    assert!(big_n >= 1, "N must be positive");
    let (f, l) = fib_lucas(big_n);
    let a: BigInt = &l * 7 + &f * 15;
    let b: BigInt = &l * 3 + &f * 7;
    let scale = to_bigint(&(pow_nat(q, n as u64) * big_n));
    let lhs = to_bigint(&(count << (big_n as usize - 1)));
    let u = &scale * a - lhs;
    let v = scale * b;
    sign_quadratic(&u, &v, 5) == Ordering::Greater
}

/// Degree-`n` maps with `ν(f) = (1)` for some `f` of degree `m`.
pub fn count_degree_m_single_box(n: u32, q: u64, m: u32) -> BigUint {
    if m == 0 || m > n {
        return BigUint::zero();
    }
    let p = partition_numbers(n as u64);
    let avoid = layered(n, q, |d| {
        let mut g: Vec<BigUint> = p[..=(n / d) as usize].to_vec();
        if d == m {
            g[1] -= 1u32;
        }
        g
    });
    count_numaps(n, q) - avoid
}

/// `count < q^n/m`.
pub fn degree_m_bound_holds(count: &BigUint, n: u32, q: u64, m: u32) -> bool {
    count * m < pow_nat(q, n as u64)
}

/// Both counting lemmas over `n ≤ n_max`, `q ∈ qs`, `N ∈ thresholds`, `m ≤ n`.
pub fn verify_counting_lemmas(n_max: u32, qs: &[u64], thresholds: &[u32]) -> Report {
    let mut report = Report::new("deficiency and degree-m counts");
    for &q in qs {
        for n in 1..=n_max {
            for &big_n in thresholds {
                let count = count_high_deficiency(n, q, big_n).expect("positive threshold");
                report.check(deficiency_bound_holds(&count, n, q, big_n), || {
                    format!("deficiency: n={n}, q={q}, N={big_n}, count={count}")
                });
            }
            for m in 1..=n {
                let count = count_degree_m_single_box(n, q, m);
                report.check(degree_m_bound_holds(&count, n, q, m), || {
                    format!("degree-m: n={n}, q={q}, m={m}, count={count}")
                });
            }
        }
    }
    report
}

