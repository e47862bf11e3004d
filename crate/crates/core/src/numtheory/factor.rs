//! Integer factorization: trial division plus Brent's variant of Pollard rho,
//! with deterministic per-call seeds and an iteration budget.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::primes::{is_prime_u64, is_probable_prime, mul_mod};
use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 10_000;

/// Prime factorization of a `u64` as `(prime, exponent)` pairs in increasing order.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let mut p = 2;
    while p * p <= n && p <= TRIAL_LIMIT {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        let mut primes = Vec::new();
        split_u64(n, &mut primes);
        primes.sort_unstable();
        for p in primes {
            match out.last_mut() {
                Some((q, e)) if *q == p => *e += 1,
                _ => out.push((p, 1)),
            }
        }
    }
    out
}

fn split_u64(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime_u64(n) {
        out.push(n);
        return;
    }
    let mut c = 1;
    let d = loop {
        if let Some(d) = rho_u64(n, c) {
            break d;
        }
        c += 1;
    };
    split_u64(d, out);
    split_u64(n / d, out);
}

fn rho_u64(n: u64, c: u64) -> Option<u64> {
    if n % 2 == 0 {
        return Some(2);
    }
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut y, mut r, mut q, mut g) = (2u64, 1u64, 1u64, 1u64);
    let mut x = y;
    let mut ys = y;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..128.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = q.gcd(&n);
            k += 128;
        }
        r *= 2;
    }
    if g == n {
        loop {
            ys = f(ys);
            g = x.abs_diff(ys).gcd(&n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

/// Brent–Pollard rho on a big odd composite; `None` when the budget runs out
/// or the cycle closes without a proper factor.
fn rho_big(n: &BigUint, c: u64, budget: &mut u64) -> Option<BigUint> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let one = BigUint::one();
    let mut y = BigUint::from(2u32);
    let mut x = y.clone();
    let mut ys = y.clone();
    let mut q = one.clone();
    let mut g = one.clone();
    let mut r: u64 = 1;
    while g.is_one() {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r && g.is_one() {
            ys = y.clone();
            let steps = 128.min(r - k);
            if *budget < steps {
                return None;
            }
            *budget -= steps;
            for _ in 0..steps {
                y = f(&y);
                let diff = if x > y { &x - &y } else { &y - &x };
                q = (q * diff) % n;
            }
            g = q.gcd(n);
            k += 128;
        }
        r *= 2;
    }
    if &g == n {
        loop {
            if *budget == 0 {
                return None;
            }
            *budget -= 1;
            ys = f(&ys);
            let diff = if x > ys { &x - &ys } else { &ys - &x };
            g = diff.gcd(n);
            if !g.is_one() {
                break;
            }
        }
    }
    (&g != n).then_some(g)
}

/// Full prime factorization of `n ≥ 1`, `(prime, exponent)` ascending.
///
/// Primes above `2^64` are Baillie–PSW probable primes. `rho_budget` bounds
/// the total Pollard rho iterations; when exhausted the error carries the
/// factors found so far and the unfactored cofactor.
pub fn factor_big(n: &BigUint, rho_budget: u64) -> Result<Vec<(BigUint, u32)>> {
    if let Some(small) = n.to_u64() {
        return Ok(factor_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect());
    }
    let mut rest = n.clone();
    let mut primes: Vec<BigUint> = Vec::new();
    for p in 2..=TRIAL_LIMIT {
        if rest.is_one() {
            break;
        }
        while (&rest % p).is_zero() {
            rest /= p;
            primes.push(BigUint::from(p));
        }
    }
    let mut budget = rho_budget;
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if let Some(small) = m.to_u64() {
            primes.extend(factor_u64(small).into_iter().flat_map(|(p, e)| {
                std::iter::repeat_n(BigUint::from(p), e as usize)
            }));
            continue;
        }
        if is_probable_prime(&m) {
            primes.push(m);
            continue;
        }
        let mut found = None;
        for c in 1..=16u64 {
            match rho_big(&m, c, &mut budget) {
                Some(d) => {
                    found = Some(d);
                    break;
                }
                None if budget == 0 => break,
                None => {}
            }
        }
        match found {
            Some(d) => {
                let other = &m / &d;
                stack.push(d);
                stack.push(other);
            }
            None => {
                primes.sort();
                let mut cofactor = m;
                for s in stack {
                    cofactor *= s;
                }
                return Err(Error::FactorizationBudget {
                    partial: primes.iter().map(ToString::to_string).collect(),
                    cofactor: cofactor.to_string(),
                });
            }
        }
    }
    primes.sort();
    let mut out: Vec<(BigUint, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    Ok(out)
}

/// Distinct prime divisors of `n`.
pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor_u64(n).into_iter().map(|(p, _)| p).collect()
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor_u64(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for i in 0..len {
                divs.push(divs[i] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Möbius function.
pub fn moebius(d: u64) -> i8 {
    assert!(d >= 1, "moebius is defined on positive integers");
    let f = factor_u64(d);
    if f.iter().any(|&(_, e)| e > 1) {
        0
    } else if f.len() % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .fold(n, |acc, (p, _)| acc / p * (p - 1))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn product(f: &[(BigUint, u32)]) -> BigUint {
        f.iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * num_traits::pow(p.clone(), *e as usize))
    }

    #[test]
    fn moebius_examples() {
        assert_eq!(moebius(1), 1);
        assert_eq!(moebius(6), 1);
        assert_eq!(moebius(12), 0);
        assert_eq!(moebius(30), -1);
    }

    #[test]
    fn factor_u64_round_trip() {
        for n in [1u64, 2, 97, 1001, 1 << 40, 600_851_475_143, 18_446_744_073_709_551_615] {
            let f = factor_u64(n);
            let prod: u64 = f.iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
            assert!(f.iter().all(|&(p, _)| is_prime_u64(p)));
        }
        // semiprime with two ~32-bit factors forces the rho path
        let n = 4_294_967_291u64 * 4_294_967_279u64;
        let prod: u64 = factor_u64(n).iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(prod, n);
    }

    #[test]
    fn factor_big_mersenne() {
        let m67 = (BigUint::one() << 67usize) - 1u32;
        let f = factor_big(&m67, 1 << 22).unwrap();
        assert_eq!(
            f,
            vec![
                (BigUint::from(193_707_721u64), 1),
                (BigUint::from(761_838_257_287u64), 1)
            ]
        );
        let n = (BigUint::one() << 100usize) - 1u32;
        let f = factor_big(&n, 1 << 22).unwrap();
        assert_eq!(product(&f), n);
    }

    #[test]
    fn factor_big_budget_reports_partial() {
        // product of two 40-bit primes with a tiny budget
        let p = BigUint::from(1_099_511_627_791u64);
        let q = BigUint::from(1_099_511_628_401u64);
        let n = &p * &q * 6u32;
        match factor_big(&n, 10) {
            Err(Error::FactorizationBudget { partial, cofactor }) => {
                assert_eq!(partial, vec!["2".to_string(), "3".to_string()]);
                assert_eq!(cofactor, (&p * &q).to_string());
            }
            other => panic!("expected budget error, got {other:?}"),
        }
    }

    #[test]
    fn divisors_and_phi() {
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(624), 192);
        assert_eq!(prime_divisors(360), vec![2, 3, 5]);
    }
}
