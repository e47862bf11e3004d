//! Integer values `Φ_n(a)` of cyclotomic polynomials and their split into a
//! part coprime to `n` and a part supported on the primes of `n`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::factor::{divisors, factor_big, prime_divisors};
use super::primes::{is_prime_u64, primality};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::pow_nat;
use crate::numtheory::moebius;

/// `Φ_n(a) = P_n(a)·R_n(a)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CycloFactorization {
    pub n: u64,
    pub a: u64,
    #[serde(serialize_with = "crate::numtheory::ser_decimal")]
    pub phi_value: BigUint,
    #[serde(serialize_with = "crate::numtheory::ser_decimal")]
    pub p_part: BigUint,
    #[serde(serialize_with = "crate::numtheory::ser_decimal")]
    pub r_part: BigUint,
}

/// `Φ_n(a)` as the exact quotient of `∏_{μ(d)=1}(a^{n/d}−1)` by
/// `∏_{μ(d)=−1}(a^{n/d}−1)` over `d | n`.
pub fn cyclotomic_value(n: u64, a: u64) -> Result<BigUint> {
    if n == 0 || a < 2 {
        return Err(Error::Domain(format!("cyclotomic_value needs n ≥ 1, a ≥ 2 (got n={n}, a={a})")));
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for d in divisors(n) {
        match moebius(d) {
            1 => num *= pow_nat(a, n / d) - 1u32,
            -1 => den *= pow_nat(a, n / d) - 1u32,
            _ => {}
        }
    }
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("Möbius quotient for Φ_{n}({a}) is not exact")));
    }
    Ok(quot)
}

/// Largest `e` with `ℓ^e | x`. `x = 0` is a domain error.
pub fn ord_prime(ell: &BigUint, x: &BigUint) -> Result<u32> {
    if x.is_zero() {
        return Err(Error::Domain("ord of zero is undefined".into()));
    }
    if *ell < BigUint::from(2u32) {
        return Err(Error::Domain(format!("{ell} is not a prime")));
    }
    let mut e = 0;
    let mut x = x.clone();
    loop {
        let (q, r) = x.div_rem(ell);
        if !r.is_zero() {
            return Ok(e);
        }
        x = q;
        e += 1;
    }
}

/// `ord_prime` for a small prime.
pub fn ord_prime_u64(ell: u64, x: &BigUint) -> Result<u32> {
    ord_prime(&BigUint::from(ell), x)
}

/// Splits `Φ_n(a)` into `P_n(a)` (coprime to `n`) and `R_n(a)` (the product
/// of `ℓ^{ord_ℓ Φ_n(a)}` over primes `ℓ | n`).
pub fn split_primitive_part(n: u64, a: u64) -> Result<CycloFactorization> {
    let phi_value = cyclotomic_value(n, a)?;
    let mut r_part = BigUint::one();
    for ell in prime_divisors(n) {
        let e = ord_prime_u64(ell, &phi_value)?;
        r_part *= pow_nat(ell, e as u64);
    }
    let p_part = &phi_value / &r_part;
    Ok(CycloFactorization {
        n,
        a,
        phi_value,
        p_part,
        r_part,
    })
}

/// Candidates `≡ 1 (mod m)` tried by trial division before falling back to a
/// full factorization.
const PROGRESSION_LIMIT: u64 = 1 << 20;

/// The smallest prime divisor of `P_m(q)`.
///
/// Trial division runs over the progression `1 + m·t` (every prime divisor of
/// `P_m(q)` lies there); if nothing is found below the limit, the remaining
/// value is factored completely and its least prime returned.
pub fn smallest_prime_factor_primitive(m: u64, q: u64, caps: &Caps) -> Result<BigUint> {
    let split = split_primitive_part(m, q)?;
    let p = split.p_part;
    if p.is_one() {
        return Err(Error::NoPrimitivePrime { m, q });
    }
    let step = m.max(1);
    let mut c = if m == 1 { 2 } else { 1 + step };
    while c <= PROGRESSION_LIMIT {
        let cc = BigUint::from(c);
        if &cc * &cc > p {
            break;
        }
        if (&p % c).is_zero() && is_prime_u64(c) {
            return Ok(cc);
        }
        c += if m == 1 { 1 } else { step };
    }
    if primality(&p).is_prime() {
        return Ok(p);
    }
    let factors = factor_big(&p, caps.rho_iterations)?;
    Ok(factors.into_iter().map(|(p, _)| p).min().expect("P_m(q) > 1"))
}

/// Small-number convenience: `Some(ℓ)` if the prime fits in `u64`.
pub fn smallest_primitive_prime_u64(m: u64, q: u64, caps: &Caps) -> Result<Option<u64>> {
    smallest_prime_factor_primitive(m, q, caps).map(|p| p.to_u64())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent route: Φ_n(x) as an integer polynomial by repeated exact
    /// division of x^n − 1 by Φ_d for proper divisors d, then evaluated.
    fn phi_poly(n: u64) -> Vec<i64> {
        let mut p = vec![0i64; n as usize + 1];
        p[0] = -1;
        p[n as usize] = 1;
        for d in divisors(n).into_iter().filter(|&d| d < n) {
            let div = phi_poly(d);
            let mut rem = p.clone();
            let mut quot = vec![0i64; rem.len() - div.len() + 1];
            for i in (0..quot.len()).rev() {
                let c = rem[i + div.len() - 1];
                quot[i] = c;
                for (j, &dj) in div.iter().enumerate() {
                    rem[i + j] -= c * dj;
                }
            }
            assert!(rem.iter().all(|&r| r == 0));
            p = quot;
        }
        p
    }

    fn eval(poly: &[i64], a: i64) -> i128 {
        poly.iter().rev().fold(0i128, |acc, &c| acc * a as i128 + c as i128)
    }

    #[test]
    fn values_match_polynomial_route() {
        for n in 1..=30u64 {
            let poly = phi_poly(n);
            for a in [2u64, 3, 5] {
                let want = eval(&poly, a as i64);
                assert_eq!(cyclotomic_value(n, a).unwrap(), BigUint::from(want as u128), "Φ_{n}({a})");
            }
        }
    }

    #[test]
    fn cyclotomic_examples() {
        assert_eq!(cyclotomic_value(1, 2).unwrap(), BigUint::from(1u32));
        assert_eq!(cyclotomic_value(6, 2).unwrap(), BigUint::from(3u32));
        assert_eq!(cyclotomic_value(12, 2).unwrap(), BigUint::from(13u32));
        assert!(cyclotomic_value(0, 2).is_err());
        assert!(cyclotomic_value(3, 1).is_err());
    }

    #[test]
    fn split_examples() {
        let s = split_primitive_part(3, 2).unwrap();
        assert_eq!((s.phi_value, s.p_part, s.r_part), (7u32.into(), 7u32.into(), 1u32.into()));
        let s = split_primitive_part(6, 2).unwrap();
        assert_eq!((s.phi_value, s.p_part, s.r_part), (3u32.into(), 1u32.into(), 3u32.into()));
        let s = split_primitive_part(10, 2).unwrap();
        assert_eq!((s.phi_value, s.p_part, s.r_part), (11u32.into(), 11u32.into(), 1u32.into()));
    }

    #[test]
    fn ord_examples() {
        assert_eq!(ord_prime_u64(3, &63u32.into()).unwrap(), 2);
        assert_eq!(ord_prime_u64(5, &7u32.into()).unwrap(), 0);
        assert_eq!(ord_prime_u64(2, &(BigUint::one() << 40usize)).unwrap(), 40);
        assert!(ord_prime_u64(3, &BigUint::zero()).is_err());
    }

    #[test]
    fn smallest_primitive_examples() {
        let caps = Caps::default();
        assert_eq!(smallest_primitive_prime_u64(2, 2, &caps).unwrap(), Some(3));
        assert_eq!(smallest_primitive_prime_u64(4, 2, &caps).unwrap(), Some(5));
        assert_eq!(smallest_primitive_prime_u64(3, 2, &caps).unwrap(), Some(7));
        // Φ_6(2) = 3 divides 6, so P_6(2) = 1
        assert_eq!(
            smallest_prime_factor_primitive(6, 2, &caps),
            Err(Error::NoPrimitivePrime { m: 6, q: 2 })
        );
        // Φ_1(2) = 1
        assert!(smallest_prime_factor_primitive(1, 2, &caps).is_err());
    }
}
