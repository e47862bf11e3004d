//! Primality: deterministic Miller–Rabin below `2^64`, Baillie–PSW above.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// How much a primality verdict is worth.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Primality {
    Composite,
    /// Proven: deterministic test below `2^64`.
    Prime,
    /// Passed Baillie–PSW; not proven.
    ProbablePrime,
}

impl Primality {
    pub fn is_prime(self) -> bool {
        !matches!(self, Primality::Composite)
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic for all `u64` (the first twelve primes are a sufficient base set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in SMALL_PRIMES {
        if n % p == 0 {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, base: u64) -> bool {
    let one = BigUint::one();
    let nm1 = n - &one;
    let s = nm1.trailing_zeros().unwrap_or(0);
    let d = &nm1 >> s;
    let mut x = BigUint::from(base).modpow(&d, n);
    if x == one || x == nm1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == nm1 {
            return true;
        }
    }
    false
}

/// Jacobi symbol `(a/n)` for odd positive `n`.
fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x: BigInt = if x.is_odd() { x + n } else { x };
    let half: BigInt = x >> 1usize;
    half.mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge parameters.
fn strong_lucas(n: &BigUint) -> bool {
    let nn = BigInt::from(n.clone());
    let root = n.sqrt();
    if &root * &root == *n {
        return false;
    }
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &nn) {
            -1 => break,
            0 => {
                if d.abs() != nn {
                    return false;
                }
            }
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { -(d - 2u32) };
    }
    let p: BigInt = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4u32;
    let np1: BigInt = &nn + 1u32;
    let s = np1.trailing_zeros().unwrap_or(0);
    let k = &np1 >> s;

    // Lucas chain over the bits of k.
    let mut u: BigInt = BigInt::zero();
    let mut v: BigInt = BigInt::from(2);
    let mut qk: BigInt = BigInt::one();
    for i in (0..k.bits()).rev() {
        // double
        u = (&u * &v).mod_floor(&nn);
        v = (&v * &v - &qk * 2u32).mod_floor(&nn);
        qk = (&qk * &qk).mod_floor(&nn);
        if k.bit(i) {
            let nu = half_mod(&p * &u + &v, &nn);
            let nv = half_mod(&d * &u + &p * &v, &nn);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&nn);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk * 2u32).mod_floor(&nn);
        qk = (&qk * &qk).mod_floor(&nn);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality of an arbitrary natural number.
pub fn primality(n: &BigUint) -> Primality {
    if let Some(small) = n.to_u64() {
        return if is_prime_u64(small) {
            Primality::Prime
        } else {
            Primality::Composite
        };
    }
    for p in SMALL_PRIMES {
        if (n % p).is_zero() {
            return Primality::Composite;
        }
    }
    if strong_probable_prime(n, 2) && strong_lucas(n) {
        Primality::ProbablePrime
    } else {
        Primality::Composite
    }
}

pub fn is_probable_prime(n: &BigUint) -> bool {
    primality(n).is_prime()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sieve(n: usize) -> Vec<bool> {
        let mut is = vec![true; n + 1];
        is[0] = false;
        is[1] = false;
        let mut i = 2;
        while i * i <= n {
            if is[i] {
                for j in (i * i..=n).step_by(i) {
                    is[j] = false;
                }
            }
            i += 1;
        }
        is
    }

    #[test]
    fn matches_sieve() {
        let s = sieve(100_000);
        for (n, &p) in s.iter().enumerate() {
            assert_eq!(is_prime_u64(n as u64), p, "n = {n}");
        }
    }

    #[test]
    fn known_pseudoprimes_rejected() {
        // strong pseudoprimes to several bases
        for n in [3_215_031_751u64, 2_152_302_898_747, 3_474_749_660_383, 341_550_071_728_321] {
            assert!(!is_prime_u64(n));
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest prime below 2^64
    }

    #[test]
    fn lucas_agrees_on_small_odd_numbers() {
        let s = sieve(20_000);
        for n in (5..20_000usize).step_by(2) {
            let big = BigUint::from(n);
            let bpsw = strong_probable_prime(&big, 2) && strong_lucas(&big);
            assert_eq!(bpsw, s[n], "n = {n}");
        }
    }

    #[test]
    fn big_primes_and_composites() {
        let m127 = (BigUint::one() << 127usize) - 1u32;
        assert_eq!(primality(&m127), Primality::ProbablePrime);
        let m67 = (BigUint::one() << 67usize) - 1u32; // 193707721 · 761838257287
        assert_eq!(primality(&m67), Primality::Composite);
        let sq = BigUint::from(4_294_967_311u64) * BigUint::from(4_294_967_311u64);
        assert_eq!(primality(&sq), Primality::Composite);
    }
}
