//! Dense polynomials over `F_q`, ascending coefficients, no trailing zeros
//! (the zero polynomial is the empty vector).

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use super::field::FqCtx;
use crate::error::{Error, Result};

pub type Poly = Vec<u32>;

/// A monic polynomial of degree ≥ 1. Ordered by degree, then by the
/// base-`q` integer encoding of its coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MonicPoly {
    coeffs: Vec<u32>,
}

impl MonicPoly {
    pub fn new(coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.len() < 2 || coeffs.last() != Some(&1) {
            return Err(Error::Domain(format!("{coeffs:?} is not monic of degree ≥ 1")));
        }
        Ok(MonicPoly { coeffs })
    }

    /// Validates coefficients against a field as well.
    pub fn in_field(ctx: &FqCtx, coeffs: Vec<u32>) -> Result<Self> {
        if coeffs.iter().any(|&c| c >= ctx.q()) {
            return Err(Error::Domain(format!("coefficient out of range for F_{}", ctx.q())));
        }
        Self::new(coeffs)
    }

    /// `x − a`.
    pub fn linear(ctx: &FqCtx, root: u32) -> Self {
        MonicPoly { coeffs: vec![ctx.neg(root), 1] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Nonzero constant term, the membership condition for the index set.
    pub fn has_nonzero_constant(&self) -> bool {
        self.coeffs[0] != 0
    }

    /// `Σ c_i q^i`.
    pub fn encoding(&self, q: u32) -> BigUint {
        self.coeffs
            .iter()
            .rev()
            .fold(BigUint::from(0u32), |acc, &c| acc * q + c)
    }
}

impl Ord for MonicPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl PartialOrd for MonicPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MonicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs)
    }
}

pub(crate) fn trim(mut a: Poly) -> Poly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn degree(a: &[u32]) -> Option<usize> {
    a.len().checked_sub(1)
}

impl FqCtx {
    pub fn poly_add(&self, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.add(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        trim(out)
    }

    pub fn poly_sub(&self, a: &[u32], b: &[u32]) -> Poly {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| self.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
            .collect();
        trim(out)
    }

    pub fn poly_scale(&self, a: &[u32], c: u32) -> Poly {
        trim(a.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &[u32], b: &[u32]) -> Poly {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        trim(out)
    }

    /// Quotient and remainder; panics if `b` is zero.
    pub fn poly_divrem(&self, a: &[u32], b: &[u32]) -> (Poly, Poly) {
        let db = degree(b).expect("division by the zero polynomial");
        let inv_lead = self.inv(b[db]);
        let mut rem = trim(a.to_vec());
        if rem.len() <= db {
            return (vec![], rem);
        }
        let mut quot = vec![0u32; rem.len() - db];
        while rem.len() > db {
            let top = rem.len() - 1;
            let c = self.mul(rem[top], inv_lead);
            quot[top - db] = c;
            for (i, &bi) in b.iter().enumerate() {
                let idx = top - db + i;
                rem[idx] = self.sub(rem[idx], self.mul(c, bi));
            }
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn poly_rem(&self, a: &[u32], b: &[u32]) -> Poly {
        self.poly_divrem(a, b).1
    }

    /// Scales to leading coefficient one (zero stays zero).
    pub fn poly_monic(&self, a: &[u32]) -> Poly {
        match a.last() {
            None => vec![],
            Some(&lead) => self.poly_scale(a, self.inv(lead)),
        }
    }

    /// Monic gcd.
    pub fn poly_gcd(&self, a: &[u32], b: &[u32]) -> Poly {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = self.poly_rem(&a, &b);
            a = b;
            b = r;
        }
        self.poly_monic(&a)
    }

    pub fn poly_mulmod(&self, a: &[u32], b: &[u32], m: &[u32]) -> Poly {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// `base^e mod m` for an exponent given by its bits.
    pub fn poly_powmod_big(&self, base: &[u32], e: &BigUint, m: &[u32]) -> Poly {
        let mut acc = self.poly_rem(&[1], m);
        let b = self.poly_rem(base, m);
        for i in (0..e.bits()).rev() {
            acc = self.poly_mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.poly_mulmod(&acc, &b, m);
            }
        }
        acc
    }

    pub fn poly_powmod(&self, base: &[u32], e: u64, m: &[u32]) -> Poly {
        self.poly_powmod_big(base, &BigUint::from(e), m)
    }

    pub fn poly_derivative(&self, a: &[u32]) -> Poly {
        let out = a
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| self.mul(c, self.from_int((i % self.p() as usize) as i64)))
            .collect();
        trim(out)
    }

    /// `a^{q^k}` mod `m` for polynomials, i.e. `k` applications of Frobenius.
    pub fn poly_frobenius_pow(&self, a: &[u32], k: u32, m: &[u32]) -> Poly {
        let mut h = self.poly_rem(a, m);
        for _ in 0..k {
            h = self.poly_powmod(&h, self.q() as u64, m);
        }
        h
    }

    /// Evaluates at a field element.
    pub fn poly_eval(&self, a: &[u32], x: u32) -> u32 {
        a.iter().rev().fold(0, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Rabin's irreducibility test for a monic `f` of degree `d ≥ 1`:
    /// `x^{q^d} ≡ x (mod f)` and `gcd(x^{q^{d/r}} − x, f) = 1` for every
    /// prime `r | d`.
    pub fn is_irreducible(&self, f: &MonicPoly) -> bool {
        let d = f.degree() as u32;
        if d == 1 {
            return true;
        }
        let m = f.coeffs();
        let x: Poly = vec![0, 1];
        let xq = self.poly_frobenius_pow(&x, d, m);
        if xq != self.poly_rem(&x, m) {
            return false;
        }
        crate::numtheory::prime_divisors(d as u64).into_iter().all(|r| {
            let h = self.poly_sub(&self.poly_frobenius_pow(&x, d / r as u32, m), &x);
            self.poly_gcd(m, &h).len() == 1
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn monic_validation_and_order() {
        assert!(MonicPoly::new(vec![1]).is_err());
        assert!(MonicPoly::new(vec![1, 2]).is_err());
        let a = MonicPoly::new(vec![1, 1, 1]).unwrap();
        let b = MonicPoly::new(vec![0, 0, 0, 1]).unwrap();
        let c = MonicPoly::new(vec![1, 0, 1]).unwrap();
        assert!(c < a && a < b);
        assert_eq!(a.encoding(2), BigUint::from(7u32));
        let f = FqCtx::new(2).unwrap();
        assert!(MonicPoly::in_field(&f, vec![2, 1]).is_err());
    }

    #[test]
    fn divrem_reconstructs() {
        let f = FqCtx::new(9).unwrap();
        let a: Poly = vec![3, 7, 0, 5, 1, 8];
        let b: Poly = vec![2, 4, 1];
        let (quot, rem) = f.poly_divrem(&a, &b);
        assert!(rem.len() < b.len());
        assert_eq!(f.poly_add(&f.poly_mul(&quot, &b), &rem), a);
    }

    #[test]
    fn irreducibility_small_cases() {
        let f2 = FqCtx::new(2).unwrap();
        let irr = |c: Vec<u32>| f2.is_irreducible(&MonicPoly::new(c).unwrap());
        assert!(irr(vec![1, 1, 1]));
        assert!(!irr(vec![1, 0, 1]));
        assert!(irr(vec![1, 1, 0, 1]));
        assert!(irr(vec![1, 0, 1, 1]));
        assert!(!irr(vec![1, 1, 1, 1]));
        // (x²+x+1)² has no roots but is reducible
        assert!(!irr(vec![1, 0, 1, 0, 1]));
    }
}
