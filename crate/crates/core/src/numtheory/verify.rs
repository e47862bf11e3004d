//! Exact verifiers for the cyclotomic lemmas.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cyclo::{cyclotomic_value, ord_prime, ord_prime_u64, split_primitive_part};
use super::factor::{divisors, euler_phi, factor_big, factor_u64};
use super::primes::{is_prime_u64, Primality};
use crate::caps::Caps;
use crate::error::Error;
use crate::exact::{abs_nat, gt_pow2_sqrt, pow_nat};
use crate::report::{Outcome, Report};

/// Checks the lifting-the-exponent congruences for one `(ℓ, n, k)`:
/// with `e = ord_ℓ(n−1) ≥ 1`, `gcd(k, ℓ) = 1` forces `ord_ℓ(n^k−1) = e`, and
/// for odd `ℓ` with `ord_ℓ(k) = 1` it forces `e + 1`. Instances meeting
/// neither hypothesis, or with `e = 0`, are skipped.
pub fn verify_cong(ell: u64, n: i64, k: u64) -> Outcome {
    if !is_prime_u64(ell) || k == 0 {
        return Outcome::Skip;
    }
    let base = BigInt::from(n);
    let nm1 = abs_nat(&(&base - 1));
    if nm1.is_zero() {
        return Outcome::Skip;
    }
    let e = ord_prime_u64(ell, &nm1).expect("nonzero");
    if e == 0 {
        return Outcome::Skip;
    }
    let value = abs_nat(&(num_traits::pow(base, k as usize) - 1));
    if value.is_zero() {
        return Outcome::Skip;
    }
    let got = ord_prime_u64(ell, &value).expect("nonzero");
    let coprime = k % ell != 0;
    let k_ord_one = ell % 2 == 1 && k % ell == 0 && (k / ell) % ell != 0;
    if coprime {
        if got == e { Outcome::Pass } else { Outcome::Fail }
    } else if k_ord_one {
        if got == e + 1 { Outcome::Pass } else { Outcome::Fail }
    } else {
        Outcome::Skip
    }
}

/// `count` seeded random instances of [`verify_cong`], each drawn so that one
/// of the two hypotheses applies.
pub fn verify_cong_batch(count: usize, seed: u64) -> Report {
    const PRIMES: [u64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = Report::new("binomial congruences");
    for _ in 0..count {
        let ell = PRIMES[rng.gen_range(0..PRIMES.len())];
        let e = rng.gen_range(1..=3u32);
        let mut unit: i64 = rng.gen_range(1..=50);
        if unit % ell as i64 == 0 {
            unit += 1;
        }
        if rng.gen_bool(0.25) {
            unit = -unit;
        }
        let n = 1 + unit * (ell as i64).pow(e);
        let mut k: u64 = rng.gen_range(1..=12);
        let odd_case = ell % 2 == 1 && rng.gen_bool(0.5);
        if odd_case {
            if k % ell == 0 {
                k += 1;
            }
            k *= ell;
        } else if k % ell == 0 {
            k += 1;
        }
        let outcome = verify_cong(ell, n, k);
        report.record(outcome, || format!("ell = {ell}, n = {n}, k = {k}"));
    }
    report
}

/// `∏_{d|n} Φ_d(a) = a^n − 1` for all `1 ≤ n ≤ n_max` and `a` in `a_set`.
pub fn verify_product_identity(n_max: u64, a_set: &[u64]) -> Report {
    let mut report = Report::new("cyclotomic product identity");
    for &a in a_set {
        let mut phi: HashMap<u64, BigUint> = HashMap::new();
        for n in 1..=n_max {
            let value = match cyclotomic_value(n, a) {
                Ok(v) => v,
                Err(e) => {
                    report.check(false, || format!("n = {n}, a = {a}: {e}"));
                    continue;
                }
            };
            phi.insert(n, value);
            let prod = divisors(n)
                .into_iter()
                .fold(BigUint::one(), |acc, d| acc * &phi[&d]);
            report.check(prod == pow_nat(a, n) - 1u32, || format!("n = {n}, a = {a}"));
        }
    }
    report
}

/// Parts (i)–(iii) of the primitive-part lemma and the `2^{φ(n)}/4` lower
/// bound, for every `n` in `ns` and `a` in `a_set`:
///
/// * (i) every prime of `P_n(a)` is `≡ 1 (mod n)`; needs a full factorization,
///   marked unverified when the rho budget runs out;
/// * (ii) for `n ≥ 3`, `R_n(a)` is squarefree and divides `n`;
/// * (iii) for `n ≥ 3`, `4n·P_n(a) > 2^{√(n/2)}`, decided exactly;
/// * for `n ≥ 3`, `4·Φ_n(a) ≥ 2^{φ(n)}`.
pub fn verify_big_factor(ns: impl IntoIterator<Item = u64>, a_set: &[u64], caps: &Caps) -> Report {
    let mut report = Report::new("primitive-part lemma (i)-(iii)");
    let mut probable = 0usize;
    for n in ns {
        for &a in a_set {
            let split = match split_primitive_part(n, a) {
                Ok(s) => s,
                Err(e) => {
                    report.check(false, || format!("n = {n}, a = {a}: {e}"));
                    continue;
                }
            };
            // (i)
            match factor_big(&split.p_part, caps.rho_iterations) {
                Ok(factors) => {
                    for (p, _) in &factors {
                        if super::primality(p) == Primality::ProbablePrime {
                            probable += 1;
                        }
                    }
                    let ok = factors.iter().all(|(p, _)| (p % n).is_one() || n == 1);
                    report.check(ok, || format!("(i) n = {n}, a = {a}: P has a prime ≢ 1 mod n"));
                }
                Err(Error::FactorizationBudget { cofactor, .. }) => {
                    report.record(Outcome::Unverified, || {
                        format!("(i) n = {n}, a = {a}: cofactor {cofactor} not factored")
                    });
                }
                Err(e) => report.check(false, || format!("(i) n = {n}, a = {a}: {e}")),
            }
            if n < 3 {
                continue;
            }
            // (ii)
            let r = split.r_part.to_u64();
            let squarefree = r.is_some_and(|r| factor_u64(r).iter().all(|&(_, e)| e == 1));
            let divides = r.is_some_and(|r| n % r == 0);
            report.check(squarefree && divides, || {
                format!("(ii) n = {n}, a = {a}: R = {}", split.r_part)
            });
            // (iii)
            let lhs = &split.p_part * BigUint::from(4 * n);
            match gt_pow2_sqrt(&lhs, n, 2, 24) {
                Some(ok) => report.check(ok, || format!("(iii) n = {n}, a = {a}: P = {}", split.p_part)),
                None => report.record(Outcome::Unverified, || format!("(iii) n = {n}, a = {a}: undecided")),
            }
            // 4Φ_n(a) ≥ 2^{φ(n)}
            let four_phi = &split.phi_value * 4u32;
            report.check(four_phi >= BigUint::one() << euler_phi(n) as usize, || {
                format!("quarter bound n = {n}, a = {a}")
            });
        }
    }
    if probable > 0 {
        report.note(format!("{probable} prime factors above 2^64 are Baillie-PSW probable primes"));
    }
    report
}

/// Part (iv): for `m ≤ m_max`, each prime `ℓ | P_m(a)` and each `n ≤ n_max`
/// with `mℓ > n`, `ord_ℓ(a^n − 1)` equals `ord_ℓ P_m(a)` when `m | n` and `0`
/// otherwise.
pub fn verify_primitive_orders(m_max: u64, n_max: u64, a_set: &[u64], caps: &Caps) -> Report {
    let mut report = Report::new("primitive-part lemma (iv)");
    for &a in a_set {
        for m in 1..=m_max {
            let split = match split_primitive_part(m, a) {
                Ok(s) => s,
                Err(e) => {
                    report.check(false, || format!("m = {m}, a = {a}: {e}"));
                    continue;
                }
            };
            if split.p_part.is_one() {
                continue;
            }
            let primes = match factor_big(&split.p_part, caps.rho_iterations) {
                Ok(f) => f,
                Err(_) => {
                    report.record(Outcome::Unverified, || format!("m = {m}, a = {a}: P_m not factored"));
                    continue;
                }
            };
            for (ell, e) in primes {
                for n in 1..=n_max {
                    if BigUint::from(m) * &ell <= BigUint::from(n) {
                        continue;
                    }
                    let value = pow_nat(a, n) - 1u32;
                    let got = ord_prime(&ell, &value).expect("a ≥ 2");
                    let want = if n % m == 0 { e } else { 0 };
                    report.check(got == want, || {
                        format!("m = {m}, a = {a}, ell = {ell}, n = {n}: ord {got} vs {want}")
                    });
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cong_examples() {
        assert_eq!(verify_cong(5, 6, 2), Outcome::Pass);
        assert_eq!(verify_cong(5, 6, 5), Outcome::Pass);
        assert_eq!(verify_cong(3, 4, 2), Outcome::Pass);
        // ord_5(6) = 0 → precondition fails
        assert_eq!(verify_cong(5, 7, 2), Outcome::Skip);
        // k = 25 has ord_5 = 2: neither part applies
        assert_eq!(verify_cong(5, 6, 25), Outcome::Skip);
    }

    #[test]
    fn cong_batch_all_pass() {
        let r = verify_cong_batch(200, 7);
        assert!(r.is_pass(), "{:?}", r.failures);
        assert!(r.passed >= 150);
    }

    #[test]
    fn product_identity_examples() {
        assert!(verify_product_identity(12, &[2, 3]).is_pass());
        assert_eq!(verify_product_identity(1, &[2]).passed, 1);
    }

    #[test]
    fn big_factor_examples() {
        let caps = Caps::default();
        let r = verify_big_factor(3..=30, &[2, 3], &caps);
        assert!(r.is_pass(), "{:?}", r.failures);
        assert_eq!(r.unverified, 0);
        let r = verify_primitive_orders(2, 4, &[2], &caps);
        assert!(r.is_pass());
        // m = 2, ℓ = 3 covers n = 1..=4 (6 > n); m = 1 has P_1(2) = 1
        assert_eq!(r.passed, 4);
    }
}
