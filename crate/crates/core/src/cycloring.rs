//! Exact arithmetic in `Z[ζ_M]`.
//!
//! Elements are integer vectors in the power basis `1, ζ, …, ζ^{φ(M)−1}`,
//! always reduced modulo `Φ_M(x)`. Since `Φ_M` is the minimal polynomial and
//! the power basis is an integral basis, an element is zero exactly when its
//! coordinates are, and `α/d ∈ Z[ζ_M]` exactly when `d` divides every
//! coordinate.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numtheory::{euler_phi, factor_u64, moebius};

/// Largest supported root-of-unity order.
pub const MAX_ORDER: u64 = 100_000;

/// Powers `x^k mod Φ_M` are tabulated when `M·φ(M)` stays below this.
const POWER_TABLE_LIMIT: u64 = 1 << 22;

/// Per-`M` data: `Φ_M`, trace values on the basis, optional power table.
#[derive(Debug)]
pub struct CycloCtx {
    m: u64,
    phi: usize,
    /// `Φ_M` ascending, monic, length `φ + 1`.
    cyclo: Vec<i64>,
    /// Nonzero non-leading coefficients of `Φ_M`.
    sparse: Vec<(usize, i64)>,
    /// `Tr(ζ^k)` for `k < φ`.
    trace: Vec<i64>,
    powers: Option<Vec<Vec<i64>>>,
}

fn ctx_cache() -> &'static RwLock<HashMap<u64, Arc<CycloCtx>>> {
    static CACHE: OnceLock<RwLock<HashMap<u64, Arc<CycloCtx>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Exact quotient of integer polynomials by a monic divisor.
fn div_exact_monic(a: &[i64], b: &[i64]) -> Vec<i64> {
    let db = b.len() - 1;
    let mut rem = a.to_vec();
    let mut quot = vec![0i64; a.len() - db];
    for i in (0..quot.len()).rev() {
        let c = rem[i + db];
        quot[i] = c;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                rem[i + j] -= c * bj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0), "inexact cyclotomic division");
    quot
}

/// `Φ_M` via `Φ_{pm}(x) = Φ_m(x^p)/Φ_m(x)` over the distinct primes of `M`,
/// then `Φ_M(x) = Φ_{rad M}(x^{M/rad M})`.
pub fn cyclotomic_polynomial(m: u64) -> Vec<i64> {
    let primes: Vec<u64> = factor_u64(m).into_iter().map(|(p, _)| p).collect();
    let mut poly = vec![-1i64, 1];
    let mut rad = 1u64;
    for p in primes {
        let mut stretched = vec![0i64; (poly.len() - 1) * p as usize + 1];
        for (i, &c) in poly.iter().enumerate() {
            stretched[i * p as usize] = c;
        }
        poly = div_exact_monic(&stretched, &poly);
        rad *= p;
    }
    let s = (m / rad) as usize;
    let mut out = vec![0i64; (poly.len() - 1) * s + 1];
    for (i, &c) in poly.iter().enumerate() {
        out[i * s] = c;
    }
    out
}

impl CycloCtx {
    /// Shared context for order `m` (cached behind a lock).
    pub fn get(m: u64) -> Result<Arc<CycloCtx>> {
        if m == 0 || m > MAX_ORDER {
            return Err(Error::Domain(format!("root-of-unity order {m} outside 1..={MAX_ORDER}")));
        }
        if let Some(ctx) = ctx_cache().read().expect("cyclo cache").get(&m) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::build(m));
        let mut cache = ctx_cache().write().expect("cyclo cache");
        Ok(cache.entry(m).or_insert(ctx).clone())
    }

    fn build(m: u64) -> CycloCtx {
        let cyclo = cyclotomic_polynomial(m);
        let phi = cyclo.len() - 1;
        debug_assert_eq!(phi as u64, euler_phi(m));
        let sparse = cyclo[..phi]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(i, &c)| (i, c))
            .collect();
        let trace = (0..phi as u64)
            .map(|k| {
                let d = m / m.gcd(&k);
                moebius(d) as i64 * (phi as u64 / euler_phi(d)) as i64
            })
            .collect();
        let mut ctx = CycloCtx {
            m,
            phi,
            cyclo,
            sparse,
            trace,
            powers: None,
        };
        if m * phi as u64 <= POWER_TABLE_LIMIT {
            let powers = (0..m)
                .map(|k| {
                    let mut v = vec![0i64; (k as usize + 1).max(phi)];
                    v[k as usize] = 1;
                    ctx.reduce_in_place(&mut v);
                    v.truncate(phi);
                    v
                })
                .collect();
            ctx.powers = Some(powers);
        }
        ctx
    }

    pub fn order(&self) -> u64 {
        self.m
    }

    pub fn degree(&self) -> usize {
        self.phi
    }

    pub fn cyclotomic(&self) -> &[i64] {
        &self.cyclo
    }

    /// Reduces an integer polynomial modulo `Φ_M`; the low `φ` entries hold
    /// the result afterwards.
    fn reduce_in_place(&self, a: &mut [i64]) {
        for i in (self.phi..a.len()).rev() {
            let c = a[i];
            if c == 0 {
                continue;
            }
            a[i] = 0;
            let base = i - self.phi;
            for &(j, cj) in &self.sparse {
                a[base + j] = a[base + j]
                    .checked_sub(c.checked_mul(cj).expect("cyclotomic coefficient overflow"))
                    .expect("cyclotomic coefficient overflow");
            }
        }
    }

    /// Reduces a vector indexed by exponents modulo `M` (an element of the
    /// group ring `Z[C_M]`).
    pub fn reduce_group_ring(self: &Arc<Self>, mut a: Vec<i64>) -> CycloElem {
        debug_assert_eq!(a.len() as u64, self.m);
        match &self.powers {
            Some(powers) if a.iter().filter(|&&c| c != 0).count() * self.phi < a.len() * self.sparse.len() => {
                let mut out = vec![0i64; self.phi];
                for (k, &c) in a.iter().enumerate() {
                    if c != 0 {
                        add_scaled(&mut out, &powers[k], c);
                    }
                }
                self.elem(out)
            }
            _ => {
                if a.len() < self.phi {
                    a.resize(self.phi, 0);
                }
                self.reduce_in_place(&mut a);
                a.truncate(self.phi);
                self.elem(a)
            }
        }
    }

    fn elem(self: &Arc<Self>, coeffs: Vec<i64>) -> CycloElem {
        CycloElem { ctx: self.clone(), coeffs }
    }

    /// `ζ^k` reduced, as coordinates.
    fn power(&self, k: u64) -> Vec<i64> {
        let k = k % self.m;
        if let Some(powers) = &self.powers {
            return powers[k as usize].clone();
        }
        let mut v = vec![0i64; (k as usize + 1).max(self.phi)];
        v[k as usize] = 1;
        self.reduce_in_place(&mut v);
        v.truncate(self.phi);
        v
    }
}

fn add_scaled(out: &mut [i64], v: &[i64], c: i64) {
    for (o, &x) in out.iter_mut().zip(v) {
        if x != 0 {
            *o = o
                .checked_add(x.checked_mul(c).expect("cyclotomic coefficient overflow"))
                .expect("cyclotomic coefficient overflow");
        }
    }
}

/// An element of `Z[ζ_M]`.
#[derive(Clone)]
pub struct CycloElem {
    ctx: Arc<CycloCtx>,
    coeffs: Vec<i64>,
}

impl PartialEq for CycloElem {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.m == other.ctx.m && self.coeffs == other.coeffs
    }
}
impl Eq for CycloElem {}

impl fmt::Debug for CycloElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloElem(M={}, {:?})", self.ctx.m, self.coeffs)
    }
}

impl Serialize for CycloElem {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CycloElem", 2)?;
        st.serialize_field("m", &self.ctx.m)?;
        st.serialize_field("coeffs", &self.coeffs)?;
        st.end()
    }
}

impl CycloElem {
    pub fn zero(m: u64) -> Result<Self> {
        let ctx = CycloCtx::get(m)?;
        Ok(ctx.elem(vec![0; ctx.phi]))
    }

    pub fn one(m: u64) -> Result<Self> {
        Self::from_integer(m, 1)
    }

    pub fn from_integer(m: u64, c: i64) -> Result<Self> {
        let mut e = Self::zero(m)?;
        e.coeffs[0] = c;
        Ok(e)
    }

    /// `ζ_M^k` for any integer `k`.
    pub fn from_root_power(m: u64, k: i64) -> Result<Self> {
        let ctx = CycloCtx::get(m)?;
        let k = k.rem_euclid(m as i64) as u64;
        let coeffs = ctx.power(k);
        Ok(ctx.elem(coeffs))
    }

    /// From power-basis coordinates of any length (reduced here).
    pub fn from_coeffs(m: u64, coeffs: &[i64]) -> Result<Self> {
        let ctx = CycloCtx::get(m)?;
        let mut v = coeffs.to_vec();
        if v.len() < ctx.phi {
            v.resize(ctx.phi, 0);
        }
        ctx.reduce_in_place(&mut v);
        v.truncate(ctx.phi);
        Ok(ctx.elem(v))
    }

    pub fn order(&self) -> u64 {
        self.ctx.m
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// `Some(c)` when the element is the rational integer `c`.
    pub fn as_integer(&self) -> Option<i64> {
        self.coeffs[1..].iter().all(|&c| c == 0).then_some(self.coeffs[0])
    }

    fn same_order(&self, other: &Self) {
        assert_eq!(
            self.ctx.m, other.ctx.m,
            "mixed-order arithmetic needs an explicit embedding"
        );
    }

    pub fn add(&self, other: &Self) -> Self {
        self.same_order(other);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a.checked_add(*b).expect("cyclotomic coefficient overflow"))
            .collect();
        self.ctx.elem(coeffs)
    }

    pub fn neg(&self) -> Self {
        self.ctx.elem(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| a.checked_mul(c).expect("cyclotomic coefficient overflow"))
            .collect();
        self.ctx.elem(coeffs)
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.same_order(other);
        let phi = self.ctx.phi;
        let mut prod = vec![0i64; 2 * phi - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a != 0 {
                add_scaled(&mut prod[i..i + phi], &other.coeffs, a);
            }
        }
        self.ctx.reduce_in_place(&mut prod);
        prod.truncate(phi);
        self.ctx.elem(prod)
    }

    /// `σ_j : ζ ↦ ζ^j` for `gcd(j, M) = 1` (negative `j` allowed; `σ_{−1}`
    /// is complex conjugation).
    pub fn galois_apply(&self, j: i64) -> Result<Self> {
        let m = self.ctx.m as i64;
        let j = j.rem_euclid(m);
        if j.gcd(&m) != 1 {
            return Err(Error::Domain(format!("σ_{j} is not an automorphism of Q(ζ_{m})")));
        }
        let mut acc = vec![0i64; self.ctx.m as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c != 0 {
                let idx = (k as i64 * j).rem_euclid(m) as usize;
                acc[idx] += c;
            }
        }
        Ok(self.ctx.reduce_group_ring(acc))
    }

    pub fn conj(&self) -> Self {
        self.galois_apply(-1).expect("−1 is a unit")
    }

    /// `Tr_{Q(ζ_M)/Q}`, using `Tr(ζ^k) = μ(d)·φ(M)/φ(d)` with `d = M/gcd(M, k)`.
    pub fn trace(&self) -> BigInt {
        self.coeffs
            .iter()
            .zip(&self.ctx.trace)
            .map(|(&c, &t)| BigInt::from(c) * t)
            .sum()
    }

    /// Average of `|σ(α)|²` over the Galois group, exactly:
    /// `Tr(α·ᾱ) / φ(M)`.
    pub fn average_galois_norm(&self) -> BigRational {
        let t = self.mul(&self.conj()).trace();
        BigRational::new(t, BigInt::from(self.ctx.phi))
    }

    /// `α/d` if it lies in `Z[ζ_M]`, `None` otherwise.
    pub fn divide_by_integer(&self, d: i64) -> Option<Self> {
        assert!(d >= 1, "divisor must be positive");
        if self.coeffs.iter().any(|c| c % d != 0) {
            return None;
        }
        Some(self.ctx.elem(self.coeffs.iter().map(|c| c / d).collect()))
    }

    /// Image in `Z[ζ_{M'}]` for a multiple `M'` of `M`, via `ζ_M ↦ ζ_{M'}^{M'/M}`.
    pub fn embed(&self, big_m: u64) -> Result<Self> {
        if big_m % self.ctx.m != 0 {
            return Err(Error::Domain(format!("{} does not divide {big_m}", self.ctx.m)));
        }
        let big = CycloCtx::get(big_m)?;
        let s = big_m / self.ctx.m;
        let mut acc = vec![0i64; big_m as usize];
        for (k, &c) in self.coeffs.iter().enumerate() {
            acc[(k as u64 * s % big_m) as usize] += c;
        }
        Ok(big.reduce_group_ring(acc))
    }

    /// Complex value at `ζ = e^{2πi/M}`; diagnostics only.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.ctx.m as f64;
        self.coeffs.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, &c)| {
            let t = std::f64::consts::TAU * k as f64 / m;
            (re + c as f64 * t.cos(), im + c as f64 * t.sin())
        })
    }
}

/// A finite sum `Σ c_k ζ_M^k` kept unreduced. Cheap to build and multiply
/// when only a few roots are involved.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct RootSum {
    /// `(exponent mod M, coefficient)`, exponents distinct and sorted.
    terms: Vec<(u64, i64)>,
}

impl RootSum {
    pub fn new(m: u64, terms: impl IntoIterator<Item = (i64, i64)>) -> Self {
        let mut v: Vec<(u64, i64)> = terms
            .into_iter()
            .map(|(k, c)| (k.rem_euclid(m as i64) as u64, c))
            .collect();
        v.sort_unstable();
        let mut merged: Vec<(u64, i64)> = Vec::with_capacity(v.len());
        for (k, c) in v {
            match merged.last_mut() {
                Some((kk, cc)) if *kk == k => *cc += c,
                _ => merged.push((k, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        RootSum { terms: merged }
    }

    pub fn terms(&self) -> &[(u64, i64)] {
        &self.terms
    }

    /// Formally empty (certainly zero). A nonempty sum may still vanish.
    pub fn is_formally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Reduced element of `Z[ζ_M]`.
    pub fn reduce(&self, ctx: &Arc<CycloCtx>) -> CycloElem {
        let mut out = vec![0i64; ctx.phi];
        for &(k, c) in &self.terms {
            add_scaled(&mut out, &ctx.power(k), c);
        }
        ctx.elem(out)
    }

    /// Adds `weight · self · conj(other)` into a group-ring accumulator.
    pub fn accumulate_times_conj(&self, other: &RootSum, weight: i64, m: u64, acc: &mut [i64]) {
        for &(a, ca) in &self.terms {
            for &(b, cb) in &other.terms {
                let idx = ((a + m - b) % m) as usize;
                acc[idx] += weight * ca * cb;
            }
        }
    }

    /// `σ_j` applied termwise.
    pub fn galois_apply(&self, j: u64, m: u64) -> RootSum {
        RootSum::new(m, self.terms.iter().map(|&(k, c)| ((k * j % m) as i64, c)))
    }
}

/// Convenience: the value as `f64` complex, diagnostics only.
pub fn approx_abs(e: &CycloElem) -> f64 {
    let (re, im) = e.to_complex();
    (re * re + im * im).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};
    use proptest::prelude::*;

    fn el(m: u64, c: &[i64]) -> CycloElem {
        CycloElem::from_coeffs(m, c).unwrap()
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
        // Φ_105 has a coefficient −2
        assert!(cyclotomic_polynomial(105).contains(&-2));
        for m in 1..200 {
            assert_eq!(cyclotomic_polynomial(m).len() as u64 - 1, euler_phi(m));
        }
    }

    #[test]
    fn root_power_examples() {
        assert_eq!(CycloElem::from_root_power(7, 0).unwrap(), CycloElem::one(7).unwrap());
        assert_eq!(CycloElem::from_root_power(4, 2).unwrap().coeffs(), &[-1, 0]);
        assert_eq!(CycloElem::from_root_power(3, 2).unwrap().coeffs(), &[-1, -1]);
        assert_eq!(CycloElem::from_root_power(3, -1).unwrap(), CycloElem::from_root_power(3, 2).unwrap());
    }

    #[test]
    fn galois_examples() {
        let z = CycloElem::from_root_power(5, 1).unwrap();
        assert_eq!(z.galois_apply(1).unwrap(), z);
        for j in [1i64, 2, 3, 4] {
            for k in 0..5 {
                let zk = CycloElem::from_root_power(5, k).unwrap();
                assert_eq!(zk.galois_apply(j).unwrap(), CycloElem::from_root_power(5, j * k).unwrap());
            }
        }
        let a = el(5, &[3, -1, 2, 7]);
        let twice = a.galois_apply(2).unwrap().galois_apply(2).unwrap();
        assert_eq!(twice, a.conj());
        assert!(a.galois_apply(5).is_err());
        assert!(CycloElem::one(12).unwrap().galois_apply(4).is_err());
    }

    #[test]
    fn average_norm_examples() {
        assert!(CycloElem::zero(9).unwrap().average_galois_norm().is_zero());
        for m in [1u64, 2, 3, 8, 15, 24] {
            for k in 0..m as i64 {
                let z = CycloElem::from_root_power(m, k).unwrap();
                assert!(z.average_galois_norm().is_one(), "M={m}, k={k}");
            }
        }
        let a = el(5, &[1, 1]);
        assert_eq!(a.average_galois_norm(), BigRational::new(3.into(), 2.into()));
    }

    #[test]
    fn division_examples() {
        let a = el(7, &[1, -2, 0, 5]);
        assert_eq!(a.scale(2).divide_by_integer(2), Some(a.clone()));
        assert_eq!(el(3, &[1, 1]).divide_by_integer(2), None);
        assert_eq!(el(3, &[3, 3]).divide_by_integer(3), Some(el(3, &[1, 1])));
    }

    #[test]
    fn embedding_respects_roots() {
        let z = CycloElem::from_root_power(6, 1).unwrap();
        assert_eq!(z.embed(24).unwrap(), CycloElem::from_root_power(24, 4).unwrap());
        let a = el(6, &[2, -3]);
        let b = el(6, &[1, 4]);
        assert_eq!(a.mul(&b).embed(24).unwrap(), a.embed(24).unwrap().mul(&b.embed(24).unwrap()));
        // the Galois average is the same in the larger field
        assert_eq!(a.average_galois_norm(), a.embed(24).unwrap().average_galois_norm());
        assert!(a.embed(9).is_err());
    }

    #[test]
    fn root_sums_reduce_consistently() {
        let ctx = CycloCtx::get(12).unwrap();
        let s = RootSum::new(12, [(1, 1), (7, 1)]); // ζ + ζ^7 = 0
        assert!(s.reduce(&ctx).is_zero());
        assert!(!s.is_formally_zero());
        let t = RootSum::new(12, [(5, 2), (-7, 3), (17, -1)]);
        let direct = CycloElem::from_root_power(12, 5).unwrap().scale(4);
        assert_eq!(t.reduce(&ctx), direct);
    }

    fn arb_elem(m: u64) -> impl Strategy<Value = CycloElem> {
        let phi = euler_phi(m) as usize;
        proptest::collection::vec(-20i64..=20, phi).prop_map(move |c| el(m, &c))
    }

    proptest! {
        #[test]
        fn ring_axioms(m in prop::sample::select(vec![3u64, 5, 8, 12, 15, 20, 21]),
                       seed in any::<u64>()) {
            use rand::{Rng, SeedableRng};
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let phi = euler_phi(m) as usize;
            let mut draw = || el(m, &(0..phi).map(|_| rng.gen_range(-9..=9)).collect::<Vec<_>>());
            let (a, b, c) = (draw(), draw(), draw());
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
            prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert!(a.sub(&a).is_zero());
        }

        #[test]
        fn galois_composition(a in arb_elem(20), j in prop::sample::select(vec![1i64, 3, 7, 9, 11, 13, 17, 19]),
                              k in prop::sample::select(vec![1i64, 3, 7, 9, 11, 13, 17, 19])) {
            let lhs = a.galois_apply(k).unwrap().galois_apply(j).unwrap();
            prop_assert_eq!(lhs, a.galois_apply(j * k % 20).unwrap());
        }

        #[test]
        fn nonzero_average_norm_at_least_one(a in arb_elem(15)) {
            let norm = a.mul(&a.conj());
            prop_assert_eq!(norm.conj(), norm.clone());
            if !a.is_zero() {
                prop_assert!(a.average_galois_norm() >= BigRational::one());
            }
        }
    }
}
