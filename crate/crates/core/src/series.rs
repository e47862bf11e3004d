//! Truncated power series with natural-number coefficients.

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Coefficients `0..=n` of `a·b`.
pub(crate) fn mul_trunc(a: &[BigUint], b: &[BigUint], n: usize) -> Vec<BigUint> {
    let mut out = vec![BigUint::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `a^e` truncated at degree `n`, by repeated squaring.
pub(crate) fn pow_trunc(a: &[BigUint], e: &BigUint, n: usize) -> Vec<BigUint> {
    let mut acc = one(n);
    for i in (0..e.bits()).rev() {
        acc = mul_trunc(&acc, &acc, n);
        if e.bit(i) {
            acc = mul_trunc(&acc, a, n);
        }
    }
    acc
}

pub(crate) fn one(n: usize) -> Vec<BigUint> {
    let mut s = vec![BigUint::zero(); n + 1];
    s[0] = BigUint::one();
    s
}

/// `(1 − x^step)^{−count}` truncated at degree `n`: coefficient of
/// `x^{step·j}` is `C(count + j − 1, j)`.
pub(crate) fn inverse_binomial(count: &BigUint, step: usize, n: usize) -> Vec<BigUint> {
    let mut s = vec![BigUint::zero(); n + 1];
    let mut c = BigUint::one();
    for j in 0..=n / step {
        s[j * step] = c.clone();
        c = c * (count + BigUint::from(j)) / BigUint::from(j + 1);
    }
    s
}

/// `(1 + x^step)^{count}` truncated at degree `n`.
pub(crate) fn binomial(count: &BigUint, step: usize, n: usize) -> Vec<BigUint> {
    let mut s = vec![BigUint::zero(); n + 1];
    let mut c = BigUint::one();
    for j in 0..=n / step {
        if BigUint::from(j) > *count {
            break;
        }
        s[j * step] = c.clone();
        c = c * (count - BigUint::from(j)) / BigUint::from(j + 1);
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: &[u64]) -> Vec<BigUint> {
        v.iter().map(|&x| BigUint::from(x)).collect()
    }

    #[test]
    fn binomials() {
        assert_eq!(inverse_binomial(&3u32.into(), 1, 4), nat(&[1, 3, 6, 10, 15]));
        assert_eq!(inverse_binomial(&2u32.into(), 2, 5), nat(&[1, 0, 2, 0, 3, 0]));
        assert_eq!(binomial(&3u32.into(), 1, 5), nat(&[1, 3, 3, 1, 0, 0]));
        assert_eq!(binomial(&0u32.into(), 1, 2), nat(&[1, 0, 0]));
    }

    #[test]
    fn power_matches_products() {
        let a = nat(&[1, 2, 0, 1]);
        let mut direct = one(6);
        for _ in 0..5 {
            direct = mul_trunc(&direct, &a, 6);
        }
        assert_eq!(pow_trunc(&a, &5u32.into(), 6), direct);
        assert_eq!(pow_trunc(&a, &0u32.into(), 6), one(6));
    }
}
