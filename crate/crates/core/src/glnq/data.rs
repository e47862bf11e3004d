//! Class sizes, centralizer orders and character degrees of `GL(n,q)` in
//! terms of `ν`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::numap::{visit_numaps, NuMap};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::pow_nat;
use crate::fqpoly::{FqCtx, MonicPoly};
use crate::numtheory::ser_decimal;
use crate::partitions::Partition;

/// `|GL(n,q)|`, computed as `∏(q^n − q^i)` and as
/// `q^{n(n−1)/2}·∏(q^i − 1)`; the two must agree.
pub fn group_order(n: u32, q: u64) -> BigUint {
    let qn = pow_nat(q, n as u64);
    let direct: BigUint = (0..n).map(|i| &qn - pow_nat(q, i as u64)).product();
    let factored = pow_nat(q, (n as u64) * (n as u64).saturating_sub(1) / 2) * q_factorial_part(n, q);
    assert_eq!(direct, factored, "two forms of |GL({n},{q})| disagree");
    direct
}

/// `∏_{i=1}^n (q^i − 1)`.
pub fn q_factorial_part(n: u32, q: u64) -> BigUint {
    (1..=n as u64).map(|i| pow_nat(q, i) - 1u32).product()
}

/// `c_λ(Q) = Q^{|λ|+2n(λ)}·∏_i ∏_{k≤m_i} (1 − Q^{−k})`, the order of the
/// centralizer of a primary block, as an exact integer.
pub fn centralizer_factor(lambda: &Partition, big_q: &BigUint) -> BigUint {
    let mults = lambda.multiplicities();
    let shift: u64 = mults.iter().map(|&(_, m)| m as u64 * (m as u64 + 1) / 2).sum();
    let exp = lambda.size() as u64 + 2 * lambda.n_stat() - shift;
    let mut acc = num_traits::pow(big_q.clone(), exp as usize);
    for &(_, m) in &mults {
        for k in 1..=m as usize {
            acc *= num_traits::pow(big_q.clone(), k) - 1u32;
        }
    }
    acc
}

/// Centralizer order of the class `ν`: `∏_f c_{ν(f)}(q^{deg f})`.
pub fn centralizer_order(nu: &NuMap) -> BigUint {
    nu.support()
        .iter()
        .map(|(f, l)| centralizer_factor(l, &pow_nat(nu.q() as u64, f.degree() as u64)))
        .product()
}

/// Degree of the character `ν`:
/// `q^{N_ν}·∏_{i≤n}(q^i − 1) / ∏_f ∏_{h ∈ hooks ν(f)} (q^{h·deg f} − 1)`
/// with `N_ν = Σ deg f·n(ν(f))`. Errors if the division is not exact.
/// With this normalization `{x−1 ↦ (n)}` is the trivial character and
/// `{x−1 ↦ (1^n)}` the Steinberg character.
pub fn degree_of(nu: &NuMap) -> Result<BigUint> {
    let q = nu.q() as u64;
    let num = pow_nat(q, nu.q_exponent()) * q_factorial_part(nu.degree(), q);
    let mut den = BigUint::one();
    for (f, l) in nu.support() {
        for h in l.hooks() {
            den *= pow_nat(q, h as u64 * f.degree() as u64) - 1u32;
        }
    }
    let (quot, rem) = num.div_rem(&den);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("degree formula is not integral at ν = {nu}")));
    }
    Ok(quot)
}

/// Data attached to the conjugacy class `ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub nu: NuMap,
    #[serde(serialize_with = "ser_decimal")]
    pub centralizer_order: BigUint,
    #[serde(serialize_with = "ser_decimal")]
    pub class_size: BigUint,
    pub char_poly: MonicPoly,
}

pub fn class_data(ctx: &FqCtx, nu: &NuMap) -> Result<ClassData> {
    let order = group_order(nu.degree(), ctx.q() as u64);
    let cent = centralizer_order(nu);
    let (size, rem) = order.div_rem(&cent);
    if !rem.is_zero() {
        return Err(Error::Internal(format!("centralizer order {cent} does not divide |G| at ν = {nu}")));
    }
    Ok(ClassData {
        nu: nu.clone(),
        centralizer_order: cent,
        class_size: size,
        char_poly: nu.char_poly(ctx),
    })
}

/// Data attached to the irreducible character `ν`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CharData {
    pub nu: NuMap,
    #[serde(serialize_with = "ser_decimal")]
    pub degree: BigUint,
    pub q_exponent: u64,
    pub deficiency: u32,
}

pub fn char_degree(nu: &NuMap) -> Result<CharData> {
    let degree = degree_of(nu)?;
    let order = group_order(nu.degree(), nu.q() as u64);
    if degree.is_zero() || !(&order % &degree).is_zero() {
        return Err(Error::Internal(format!("degree {degree} does not divide |G| at ν = {nu}")));
    }
    Ok(CharData {
        nu: nu.clone(),
        degree,
        q_exponent: nu.q_exponent(),
        deficiency: nu.deficiency(),
    })
}

/// `Σ_χ d_χ²` over all degree-`n` maps.
pub fn sum_degree_squares(ctx: &FqCtx, n: u32, caps: &Caps) -> Result<BigUint> {
    let mut total = BigUint::zero();
    let mut err = None;
    visit_numaps(ctx, n, caps, |nu| {
        if err.is_some() {
            return;
        }
        match degree_of(nu) {
            Ok(d) => total += &d * &d,
            Err(e) => err = Some(e),
        }
    })?;
    match err {
        Some(e) => Err(e),
        None => Ok(total),
    }
}
