//! Counting and listing irreducibles, and counting polynomials with a
//! repeated irreducible factor of large degree.

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use super::field::FqCtx;
use super::poly::MonicPoly;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::pow_nat;
use crate::numtheory::{divisors, moebius};
use crate::report::Report;
use crate::series;

/// Number of monic irreducibles of degree `d` over `F_q` with nonzero
/// constant term (so `x` is excluded when `d = 1`).
pub fn count_irreducibles_q(q: u64, d: u64) -> BigUint {
    assert!(d >= 1, "degree must be positive");
    let mut acc = BigInt::zero();
    for e in divisors(d) {
        acc += BigInt::from(moebius(d / e)) * BigInt::from(pow_nat(q, e));
    }
    let mut n = (acc / BigInt::from(d)).to_biguint().expect("necklace count is positive");
    if d == 1 {
        n -= 1u32;
    }
    n
}

pub fn count_irreducibles(ctx: &FqCtx, d: u64) -> BigUint {
    count_irreducibles_q(ctx.q() as u64, d)
}

/// All degree-`d` monic irreducibles with nonzero constant term, in ascending
/// encoding order.
pub fn enumerate_irreducibles(ctx: &FqCtx, d: u32, caps: &Caps) -> Result<Vec<MonicPoly>> {
    let q = ctx.q() as u64;
    let scan = pow_nat(q, d as u64);
    if scan > BigUint::from(caps.poly_scan) {
        return Err(Error::resource(format!("irreducible scan over F_{q} in degree {d}"), scan, caps.poly_scan));
    }
    let scan = scan.to_u64().expect("below cap");
    let mut out = Vec::new();
    let mut coeffs = vec![0u32; d as usize + 1];
    coeffs[d as usize] = 1;
    for low in 0..scan {
        let mut rest = low;
        for c in coeffs.iter_mut().take(d as usize) {
            *c = (rest % q) as u32;
            rest /= q;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let f = MonicPoly::new(coeffs.clone()).expect("monic");
        if ctx.is_irreducible(&f) {
            out.push(f);
        }
    }
    Ok(out)
}

/// Number of monic degree-`n` polynomials with nonzero constant term that are
/// divisible by `f²` for some irreducible `f` of degree `≥ m`.
///
/// Counts the complement by its generating function
/// `∏_{d<m} (1−u^d)^{−N_d} · ∏_{d≥m} (1+u^d)^{N_d}` (each large-degree
/// irreducible used at most once) and subtracts from `q^n − q^{n−1}`.
pub fn count_repeated_factor_polys(q: u64, n: u64, m: u64) -> BigUint {
    assert!(n >= 1 && m >= 1, "n and m must be positive");
    let len = n as usize;
    let mut nice = series::one(len);
    for d in 1..=n {
        let count = count_irreducibles_q(q, d);
        let factor = if d < m {
            series::inverse_binomial(&count, d as usize, len)
        } else {
            series::binomial(&count, d as usize, len)
        };
        nice = series::mul_trunc(&nice, &factor, len);
    }
    let total = pow_nat(q, n) - pow_nat(q, n - 1);
    total - &nice[len]
}

/// The same count by listing every polynomial and factoring it. Only for
/// small `q^n`.
pub fn count_repeated_factor_polys_by_factoring(ctx: &FqCtx, n: u32, m: u32, caps: &Caps) -> Result<BigUint> {
    let q = ctx.q() as u64;
    let scan = pow_nat(q, n as u64);
    if scan > BigUint::from(caps.poly_scan) {
        return Err(Error::resource("polynomial scan", scan, caps.poly_scan));
    }
    let mut hits = 0u64;
    let mut coeffs = vec![0u32; n as usize + 1];
    coeffs[n as usize] = 1;
    for low in 0..scan.to_u64().expect("below cap") {
        let mut rest = low;
        for c in coeffs.iter_mut().take(n as usize) {
            *c = (rest % q) as u32;
            rest /= q;
        }
        if coeffs[0] == 0 {
            continue;
        }
        let f = MonicPoly::new(coeffs.clone()).expect("monic");
        let repeated = super::factor_poly(ctx, &f)
            .iter()
            .any(|(g, mult)| *mult >= 2 && g.degree() as u32 >= m);
        if repeated {
            hits += 1;
        }
    }
    Ok(BigUint::from(hits))
}

/// Checks `count_repeated_factor_polys(q, n, m) < 2q^{n−m}` for all
/// `1 ≤ m ≤ n ≤ n_max` and each `q`.
pub fn verify_repeated_factor_counts(n_max: u64, qs: &[u64]) -> Report {
    let mut report = Report::new("repeated-factor polynomial counts");
    for &q in qs {
        for n in 1..=n_max {
            for m in 1..=n {
                let count = count_repeated_factor_polys(q, n, m);
                let bound = pow_nat(q, n - m) * 2u32;
                report.check(count < bound, || format!("q = {q}, n = {n}, m = {m}: {count} ≥ {bound}"));
            }
        }
    }
    report
}

/// `Σ_{d|D} d·I_d = q^D` where `I_d` counts all monic irreducibles of degree
/// `d` (including `x`).
pub fn necklace_identity_holds(q: u64, big_d: u64) -> bool {
    let total = divisors(big_d).into_iter().fold(BigUint::zero(), |acc, d| {
        let with_x = count_irreducibles_q(q, d) + if d == 1 { BigUint::one() } else { BigUint::zero() };
        acc + with_x * d
    });
    total == pow_nat(q, big_d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducible_counts() {
        assert_eq!(count_irreducibles_q(2, 1), BigUint::from(1u32));
        assert_eq!(count_irreducibles_q(2, 2), BigUint::from(1u32));
        assert_eq!(count_irreducibles_q(2, 3), BigUint::from(2u32));
        assert_eq!(count_irreducibles_q(3, 1), BigUint::from(2u32));
        assert_eq!(count_irreducibles_q(2, 4), BigUint::from(3u32));
    }

    #[test]
    fn enumeration_examples() {
        let caps = Caps::default();
        let f2 = FqCtx::new(2).unwrap();
        let list = enumerate_irreducibles(&f2, 2, &caps).unwrap();
        assert_eq!(list, vec![MonicPoly::new(vec![1, 1, 1]).unwrap()]);
        let f3 = FqCtx::new(3).unwrap();
        let list: Vec<Vec<u32>> = enumerate_irreducibles(&f3, 1, &caps)
            .unwrap()
            .into_iter()
            .map(MonicPoly::into_coeffs)
            .collect();
        assert_eq!(list, vec![vec![1, 1], vec![2, 1]]);
        assert_eq!(enumerate_irreducibles(&f2, 4, &caps).unwrap().len(), 3);
        let tight = Caps { poly_scan: 8, ..Caps::default() };
        assert!(enumerate_irreducibles(&f2, 4, &tight).is_err());
    }

    #[test]
    fn enumeration_matches_counts() {
        let caps = Caps::default();
        for (q, dmax) in [(2u64, 10u32), (3, 6), (4, 5), (5, 4), (7, 3), (8, 3), (9, 3)] {
            let ctx = FqCtx::new(q).unwrap();
            for d in 1..=dmax {
                let list = enumerate_irreducibles(&ctx, d, &caps).unwrap();
                assert_eq!(BigUint::from(list.len()), count_irreducibles(&ctx, d as u64), "q={q} d={d}");
                assert!(list.windows(2).all(|w| w[0] < w[1]));
                // fewer than q^d/d
                assert!(BigUint::from(list.len()) * d < pow_nat(q, d as u64));
            }
        }
    }

    #[test]
    fn necklace() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 27] {
            for d in 1..=12 {
                assert!(necklace_identity_holds(q, d), "q={q} D={d}");
            }
        }
    }

    #[test]
    fn repeated_factor_examples() {
        assert_eq!(count_repeated_factor_polys(2, 2, 1), BigUint::from(1u32));
        assert_eq!(count_repeated_factor_polys(2, 3, 2), BigUint::zero());
        for n in 1..=9 {
            for m in (n / 2 + 1)..=n {
                assert!(count_repeated_factor_polys(3, n, m).is_zero());
            }
        }
    }

    #[test]
    fn generating_function_matches_factoring() {
        let caps = Caps::default();
        for (q, nmax) in [(2u64, 8u32), (3, 5), (4, 4)] {
            let ctx = FqCtx::new(q).unwrap();
            for n in 1..=nmax {
                for m in 1..=n {
                    assert_eq!(
                        count_repeated_factor_polys(q, n as u64, m as u64),
                        count_repeated_factor_polys_by_factoring(&ctx, n, m, &caps).unwrap(),
                        "q={q} n={n} m={m}"
                    );
                }
            }
        }
    }
}
