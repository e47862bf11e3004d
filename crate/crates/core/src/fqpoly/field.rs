//! Explicit finite fields `F_q`, `q = p^k ≤ 2^20`.
//!
//! Elements are integers in `[0, q)`: the base-`p` digits are the coordinates
//! in the polynomial basis `1, α, …, α^{k−1}` where `α` is a root of the
//! field's modulus. The modulus is the smallest monic irreducible of degree
//! `k` over `F_p` (ascending-coefficient encoding); the stored generator is
//! the smallest encoding of multiplicative order `q − 1`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::numtheory::{factor_u64, is_prime_u64};

/// Largest supported field size.
pub const MAX_FIELD: u32 = 1 << 20;

#[derive(Debug)]
pub struct FqCtx {
    p: u32,
    k: u32,
    q: u32,
    /// Coefficients over `F_p`, ascending, length `k + 1`.
    modulus: Vec<u32>,
    generator: u32,
    /// `exp[i] = generator^i` for `i < 2(q−1)`.
    exp: Vec<u32>,
    /// `log[x]` for `x ≠ 0`.
    log: Vec<u32>,
    /// `p^i` for `i ≤ k`.
    pow_p: Vec<u32>,
}

/// Splits `q` as `p^k`, or `None` if `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_u64(q);
    if f.len() == 1 {
        Some((u32::try_from(f[0].0).ok()?, f[0].1))
    } else {
        None
    }
}

fn field_cache() -> &'static Mutex<HashMap<u32, Arc<FqCtx>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<FqCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

// Arithmetic in F_p[x] used only while constructing the field.
mod prime_poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let inv_lead = inverse(m[dm], p);
        while r.len() > dm {
            let top = r.len() - 1;
            let c = (r[top] as u64 * inv_lead as u64 % p as u64) as u32;
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                r[idx] = ((r[idx] as u64 + (p - c) as u64 * mi as u64) % p as u64) as u32;
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return vec![];
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
            }
        }
        let out: Vec<u32> = out.into_iter().map(|v| v as u32).collect();
        rem(&out, m, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut acc = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_mod(&acc, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        rem(&acc, m, p)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn inverse(a: u32, p: u32) -> u32 {
        let mut acc = 1u64;
        let mut b = a as u64 % p as u64;
        let mut e = p as u64 - 2;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        acc as u32
    }

    /// Rabin's test for a monic `f` of degree `k` over `F_p`.
    pub fn is_irreducible(f: &[u32], p: u32, prime_divisors_of_k: &[u64]) -> bool {
        let k = f.len() as u32 - 1;
        let x = vec![0u32, 1];
        // x^{p^i} mod f
        let frob = |i: u32| {
            let mut h = rem(&x, f, p);
            for _ in 0..i {
                h = pow_mod(&h, p as u64, f, p);
            }
            h
        };
        if sub(&frob(k), &rem(&x, f, p), p) != Vec::<u32>::new() {
            return false;
        }
        prime_divisors_of_k.iter().all(|&r| {
            let h = sub(&frob(k / r as u32), &x, p);
            gcd(f, &h, p).len() == 1
        })
    }
}

impl FqCtx {
    /// The field with `q` elements (cached; construction is deterministic).
    pub fn new(q: u64) -> Result<Arc<FqCtx>> {
        let Some((p, k)) = prime_power(q) else {
            return Err(Error::Domain(format!("{q} is not a prime power")));
        };
        if q > MAX_FIELD as u64 {
            return Err(Error::resource("field size", q, MAX_FIELD));
        }
        let q = q as u32;
        if let Some(ctx) = field_cache().lock().expect("field cache").get(&q) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::build(p, k));
        field_cache().lock().expect("field cache").insert(q, ctx.clone());
        Ok(ctx)
    }

    fn build(p: u32, k: u32) -> FqCtx {
        debug_assert!(is_prime_u64(p as u64));
        let q = p.pow(k);
        let pow_p: Vec<u32> = (0..=k).map(|i| p.pow(i)).collect();
        let modulus = if k == 1 {
            vec![0, 1]
        } else {
            let rs: Vec<u64> = factor_u64(k as u64).into_iter().map(|(r, _)| r).collect();
            (0..q)
                .map(|low| {
                    let mut c: Vec<u32> = (0..k).map(|i| low / pow_p[i as usize] % p).collect();
                    c.push(1);
                    c
                })
                .find(|c| prime_poly::is_irreducible(c, p, &rs))
                .expect("an irreducible of every degree exists")
        };
        let digits = |x: u32| -> Vec<u32> { (0..k).map(|i| x / pow_p[i as usize] % p).collect() };
        let undigits = |d: &[u32]| -> u32 { d.iter().enumerate().map(|(i, &c)| c * pow_p[i]).sum() };
        let slow_mul = |a: u32, b: u32| -> u32 {
            let r = prime_poly::mul_mod(
                &prime_poly::trim(digits(a)),
                &prime_poly::trim(digits(b)),
                &modulus,
                p,
            );
            undigits(&r)
        };
        let order = q - 1;
        let cofactors: Vec<u32> = factor_u64(order as u64)
            .into_iter()
            .map(|(r, _)| order / r as u32)
            .collect();
        let slow_pow = |g: u32, mut e: u32| {
            let (mut acc, mut b) = (1u32, g);
            while e > 0 {
                if e & 1 == 1 {
                    acc = slow_mul(acc, b);
                }
                b = slow_mul(b, b);
                e >>= 1;
            }
            acc
        };
        let generator = if q == 2 {
            1
        } else {
            (2..q)
                .find(|&g| cofactors.iter().all(|&c| slow_pow(g, c) != 1))
                .expect("multiplicative group is cyclic")
        };
        let mut exp = Vec::with_capacity(2 * order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u32;
        for i in 0..order {
            exp.push(x);
            log[x as usize] = i;
            x = slow_mul(x, generator);
        }
        debug_assert_eq!(x, 1);
        for i in 0..order as usize {
            exp.push(exp[i]);
        }
        FqCtx {
            p,
            k,
            q,
            modulus,
            generator,
            exp,
            log,
            pow_p,
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn k(&self) -> u32 {
        self.k
    }
    pub fn q(&self) -> u32 {
        self.q
    }
    /// The defining polynomial over `F_p`, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }
    /// The fixed generator of `F_q^×`.
    pub fn generator(&self) -> u32 {
        self.generator
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        if self.k == 1 {
            let s = a + b;
            return if s >= self.p { s - self.p } else { s };
        }
        let mut out = 0;
        for i in 0..self.k as usize {
            let d = (a / self.pow_p[i] % self.p + b / self.pow_p[i] % self.p) % self.p;
            out += d * self.pow_p[i];
        }
        out
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.p == 2 {
            return a;
        }
        if self.k == 1 {
            return if a == 0 { 0 } else { self.p - a };
        }
        let mut out = 0;
        for i in 0..self.k as usize {
            let d = a / self.pow_p[i] % self.p;
            out += (self.p - d) % self.p * self.pow_p[i];
        }
        out
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let order = self.q - 1;
        self.exp[((order - self.log[a as usize]) % order) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let order = (self.q - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % order)) % order) as usize]
    }

    /// Discrete logarithm to the fixed generator; `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        (a != 0).then(|| self.log[a as usize])
    }

    /// `generator^i`.
    pub fn exp(&self, i: u64) -> u32 {
        self.exp[(i % (self.q - 1) as u64) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: u32) -> u32 {
        let order = self.q - 1;
        order / gcd_u32(order, self.log[a as usize])
    }

    /// The integer `c ∈ F_p ⊂ F_q` (reduced mod `p`).
    pub fn from_int(&self, c: i64) -> u32 {
        c.rem_euclid(self.p as i64) as u32
    }

    /// Product computed from the polynomial-basis coordinates, independent of
    /// the log tables. Used to validate them.
    pub fn mul_by_coordinates(&self, a: u32, b: u32) -> u32 {
        let digits = |x: u32| -> Vec<u32> {
            prime_poly::trim((0..self.k).map(|i| x / self.pow_p[i as usize] % self.p).collect())
        };
        let r = prime_poly::mul_mod(&digits(a), &digits(b), &self.modulus, self.p);
        r.iter().enumerate().map(|(i, &c)| c * self.pow_p[i]).sum()
    }

    /// The embedding `F_q → F_{q'}` for a larger field of the same
    /// characteristic with `k | k'`, as a lookup table. The image of the
    /// modulus root is the smallest-encoded root in the larger field.
    pub fn embed_into(&self, big: &FqCtx) -> Result<Vec<u32>> {
        if big.p != self.p || big.k % self.k != 0 {
            return Err(Error::Domain(format!(
                "F_{} does not embed in F_{}",
                self.q, big.q
            )));
        }
        let eval = |x: u32| {
            self.modulus
                .iter()
                .rev()
                .fold(0u32, |acc, &c| big.add(big.mul(acc, x), c))
        };
        let root = if self.k == 1 {
            0
        } else {
            (0..big.q)
                .find(|&x| eval(x) == 0)
                .ok_or_else(|| Error::Internal("modulus has no root in extension".into()))?
        };
        let table = (0..self.q)
            .map(|a| {
                let mut acc = 0;
                let mut power = 1;
                for i in 0..self.k as usize {
                    let d = a / self.pow_p[i] % self.p;
                    acc = big.add(acc, big.mul(d, power));
                    power = big.mul(power, root);
                }
                acc
            })
            .collect();
        Ok(table)
    }
}

fn gcd_u32(a: u32, b: u32) -> u32 {
    if b == 0 { a } else { gcd_u32(b, a % b) }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_prime_powers() {
        assert!(FqCtx::new(6).is_err());
        assert!(FqCtx::new(1).is_err());
        assert!(matches!(FqCtx::new(1 << 21), Err(Error::Resource { .. })));
    }

    #[test]
    fn moduli_are_smallest() {
        assert_eq!(FqCtx::new(4).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(FqCtx::new(8).unwrap().modulus(), &[1, 1, 0, 1]);
        assert_eq!(FqCtx::new(9).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(FqCtx::new(16).unwrap().modulus(), &[1, 1, 0, 0, 1]);
        assert_eq!(FqCtx::new(7).unwrap().modulus(), &[0, 1]);
    }

    #[test]
    fn generators() {
        assert_eq!(FqCtx::new(7).unwrap().generator(), 3);
        assert_eq!(FqCtx::new(5).unwrap().generator(), 2);
        // x² + 1 over F_3: x has order 4, x + 1 (encoding 4) generates
        assert_eq!(FqCtx::new(9).unwrap().generator(), 4);
    }

    #[test]
    fn full_tables_small_fields() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let f = FqCtx::new(q).unwrap();
            let q = q as u32;
            for a in 0..q {
                assert_eq!(f.add(a, f.neg(a)), 0);
                for b in 0..q {
                    assert_eq!(f.mul(a, b), f.mul_by_coordinates(a, b), "q = {q}: {a}·{b}");
                    assert_eq!(f.add(a, b), f.add(b, a));
                    for c in [0, 1, q - 1, q / 2] {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(a, f.add(b, c)), f.add(f.add(a, b), c));
                    }
                }
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a)), 1);
                }
            }
        }
    }

    #[test]
    fn embedding_is_a_ring_map() {
        for (small, big) in [(2u64, 4u64), (3, 9), (4, 16), (2, 8), (5, 25), (9, 81)] {
            let s = FqCtx::new(small).unwrap();
            let b = FqCtx::new(big).unwrap();
            let e = s.embed_into(&b).unwrap();
            for x in 0..s.q() {
                for y in 0..s.q() {
                    assert_eq!(e[s.mul(x, y) as usize], b.mul(e[x as usize], e[y as usize]));
                    assert_eq!(e[s.add(x, y) as usize], b.add(e[x as usize], e[y as usize]));
                }
            }
        }
        assert!(FqCtx::new(4).unwrap().embed_into(&FqCtx::new(8).unwrap()).is_err());
    }
}
