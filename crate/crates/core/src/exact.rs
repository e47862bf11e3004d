//! Small exact-comparison helpers: signs in `Z[√d]`, Fibonacci/Lucas pairs
//! for powers of the golden ratio, and a few integer utilities.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Sign of `u + v·√d` for a non-square `d > 0`.
pub fn sign_quadratic(u: &BigInt, v: &BigInt, d: u64) -> Ordering {
    let zero = BigInt::zero();
    let su = u.cmp(&zero);
    let sv = v.cmp(&zero);
    match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        (Ordering::Greater, Ordering::Less) => (u * u).cmp(&(v * v * BigInt::from(d))),
        (Ordering::Less, Ordering::Greater) => (v * v * BigInt::from(d)).cmp(&(u * u)),
    }
}

/// `(F_n, L_n)` so that `φ^n = (L_n + F_n √5) / 2`.
pub fn fib_lucas(n: u32) -> (BigInt, BigInt) {
    let (mut f, mut l) = (BigInt::zero(), BigInt::from(2));
    // F_{k+1} = (F_k + L_k)/2, L_{k+1} = (5F_k + L_k)/2
    for _ in 0..n {
        let nf = (&f + &l) >> 1;
        let nl = (&f * 5 + &l) >> 1;
        f = nf;
        l = nl;
    }
    (f, l)
}

/// Exact test of `x ≤ φ^n`, i.e. `2x − L_n ≤ F_n √5`.
pub fn le_golden_power(x: &BigUint, n: u32) -> bool {
    let (f, l) = fib_lucas(n);
    let lhs: BigInt = BigInt::from(x.clone()) * 2u32 - l;
    sign_quadratic(&(-lhs), &f, 5) != Ordering::Less
}

/// Largest `e` with `2^e ≤ x`, for `x ≥ 1`.
pub fn floor_log2(x: &BigUint) -> u64 {
    debug_assert!(!x.is_zero());
    x.bits() - 1
}

/// Decides `x > 2^{√r}` exactly for a positive rational `r` (`r = num/den`)
/// and `x ≥ 1`. Uses the bit length first and refines with rational bounds on
/// `√r` only when the bit length is inconclusive. Returns `None` if `rounds`
/// refinements do not settle it.
pub fn gt_pow2_sqrt(x: &BigUint, num: u64, den: u64, rounds: u32) -> Option<bool> {
    // s = √(num/den) = √(num·den)/den.
    let nd = BigUint::from(num) * BigUint::from(den);
    let root = nd.sqrt();
    if &root * &root == nd {
        // s rational: compare x^den > 2^root.
        let lhs = num_traits::pow(x.clone(), den as usize);
        return Some(lhs > (BigUint::one() << root.to_u64()?));
    }
    let b = x.bits(); // 2^{b-1} ≤ x < 2^b
    // s < b − 1  ⟺  num < den·(b−1)²  ⇒  x ≥ 2^{b−1} > 2^s
    let bm1 = BigUint::from(b.saturating_sub(1));
    if BigUint::from(num) < BigUint::from(den) * &bm1 * &bm1 {
        return Some(true);
    }
    // s ≥ b  ⇒  x < 2^b ≤ 2^s
    let bb = BigUint::from(b);
    if BigUint::from(num) >= BigUint::from(den) * &bb * &bb {
        return Some(false);
    }
    // lo/2^k ≤ s ≤ hi/2^k with lo = ⌊√(num·den·4^k)⌋/den.
    for k in 1..=rounds {
        let scaled = &nd << (2 * k as usize);
        let r = scaled.sqrt();
        // s·2^k ∈ [r/den, (r+1)/den]
        // x > 2^{(r+1)/(den·2^k)} ⟺ x^{den·2^k} > 2^{r+1}
        let e = (den as usize) << k;
        let lhs = num_traits::pow(x.clone(), e);
        let hi = &r + 1u32;
        let lo = r.clone();
        if lhs > (BigUint::one() << hi.to_u64()?) {
            return Some(true);
        }
        if lhs <= (BigUint::one() << lo.to_u64()?) {
            return Some(false);
        }
    }
    None
}

/// A rational upper bound on `ln n` exceeding it by at most about `1e-9`.
pub fn ln_upper_bound(n: u64) -> BigRational {
    let approx = (n as f64).ln() + 1e-9;
    BigRational::from_float(approx).expect("finite logarithm")
}

pub fn to_bigint(x: &BigUint) -> BigInt {
    BigInt::from_biguint(Sign::Plus, x.clone())
}

/// `|x|` as a natural number.
pub fn abs_nat(x: &BigInt) -> BigUint {
    x.abs().to_biguint().expect("absolute value is non-negative")
}

/// `base^exp` as a natural number.
pub fn pow_nat(base: u64, exp: u64) -> BigUint {
    num_traits::pow(BigUint::from(base), exp as usize)
}

/// Compares `a/b` against `c/d` for positive denominators.
pub fn cmp_fractions(a: &BigUint, b: &BigUint, c: &BigUint, d: &BigUint) -> Ordering {
    (a * d).cmp(&(c * b))
}

/// `a/b` in lowest terms, or just `a` for integers.
pub fn ratio_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Parses `a/b` or `a` (optionally signed) as an exact rational.
pub fn parse_ratio(s: &str) -> Option<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (a.trim().parse::<BigInt>().ok()?, b.trim().parse::<BigInt>().ok()?),
        None => (s.parse::<BigInt>().ok()?, BigInt::one()),
    };
    if den.is_zero() {
        return None;
    }
    Some(BigRational::new(num, den))
}

pub(crate) fn ser_ratio<S: serde::Serializer>(x: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&ratio_string(x))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ratio_round_trip() {
        for text in ["1/10", "3", "-2/7", "0"] {
            let r = parse_ratio(text).unwrap();
            assert_eq!(ratio_string(&r), text);
        }
        assert_eq!(ratio_string(&parse_ratio("2/4").unwrap()), "1/2");
        assert!(parse_ratio("1/0").is_none());
        assert!(parse_ratio("x").is_none());
    }

    #[test]
    fn fib_lucas_small() {
        let want = [(0, 2), (1, 1), (1, 3), (2, 4), (3, 7), (5, 11), (8, 18)];
        for (n, &(f, l)) in want.iter().enumerate() {
            assert_eq!(fib_lucas(n as u32), (BigInt::from(f), BigInt::from(l)));
        }
    }

    #[test]
    fn golden_power_bounds() {
        // φ^4 ≈ 6.854
        assert!(le_golden_power(&BigUint::from(6u32), 4));
        assert!(!le_golden_power(&BigUint::from(7u32), 4));
        assert!(le_golden_power(&BigUint::from(1u32), 0));
        assert!(!le_golden_power(&BigUint::from(2u32), 0));
    }

    #[test]
    fn sign_quadratic_cases() {
        let s = |u: i64, v: i64| sign_quadratic(&BigInt::from(u), &BigInt::from(v), 5);
        assert_eq!(s(3, -1), Ordering::Greater); // 3 − 2.236
        assert_eq!(s(2, -1), Ordering::Less);
        assert_eq!(s(-3, 1), Ordering::Less);
        assert_eq!(s(-2, 1), Ordering::Greater);
        assert_eq!(s(0, 0), Ordering::Equal);
    }

    #[test]
    fn pow2_sqrt_comparisons() {
        // 2^{√2} ≈ 2.665
        assert_eq!(gt_pow2_sqrt(&BigUint::from(3u32), 2, 1, 20), Some(true));
        assert_eq!(gt_pow2_sqrt(&BigUint::from(2u32), 2, 1, 20), Some(false));
        // √(8/2) = 2 exactly: 4 > 4 is false, 5 > 4 true
        assert_eq!(gt_pow2_sqrt(&BigUint::from(4u32), 8, 2, 20), Some(false));
        assert_eq!(gt_pow2_sqrt(&BigUint::from(5u32), 8, 2, 20), Some(true));
        // 2^{√(3/2)} ≈ 2.337
        assert_eq!(gt_pow2_sqrt(&BigUint::from(2u32), 3, 2, 20), Some(false));
        assert_eq!(gt_pow2_sqrt(&BigUint::from(3u32), 3, 2, 20), Some(true));
    }

    #[test]
    fn ln_bound_is_above() {
        for n in [2u64, 3, 10, 1000] {
            let b = ln_upper_bound(n).to_f64().unwrap();
            assert!(b >= (n as f64).ln());
            assert!(b - (n as f64).ln() < 2e-9);
        }
    }
}
