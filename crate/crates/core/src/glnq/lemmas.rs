//! The `ord_ℓ` machinery on character degrees, the class statistics
//! (`Fact`, repeated factors) and the order-equality probability.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::data::{centralizer_order, degree_of, group_order};
use super::numap::{visit_numaps, NuMap};
use super::sampler::{NuSampler, SampleMode};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{ser_ratio, pow_nat};
use crate::fqpoly::{prime_power, FqCtx};
use crate::numtheory::{is_probable_prime, ord_prime, smallest_prime_factor_primitive, split_primitive_part};
use crate::report::{Outcome, Report};

/// Both sides of the `ord_ℓ` degree formula for one `(ν, m, ℓ)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrdEll {
    /// `e = ord_ℓ(P_m(q))`.
    pub e: u32,
    /// `#{f ∈ supp ν : m | deg f}`.
    pub divisible: u32,
    /// `e·⌊n/m⌋ − e·divisible`.
    pub formula: i64,
    /// `ord_ℓ(d_χ)`.
    pub direct: u32,
    /// `ord_ℓ(|G|)`.
    pub group: u32,
}

impl OrdEll {
    /// `formula = direct` and `formula = ord_ℓ(|G|) − e·divisible`.
    pub fn holds(&self) -> bool {
        self.formula == self.direct as i64
            && self.formula == self.group as i64 - self.e as i64 * self.divisible as i64
    }
}

/// Evaluates both sides; `Ok(None)` when the preconditions (`ℓm > n`,
/// `ℓ | P_m(q)`, deficiency `< m/2`) fail.
pub fn ord_ell_degree(nu: &NuMap, m: u32, ell: &BigUint) -> Result<Option<OrdEll>> {
    let n = nu.degree();
    let q = nu.q() as u64;
    if m == 0 || ell * m <= BigUint::from(n) || 2 * nu.deficiency() >= m {
        return Ok(None);
    }
    let p_part = split_primitive_part(m as u64, q)?.p_part;
    let e = ord_prime(ell, &p_part)?;
    if e == 0 {
        return Ok(None);
    }
    let divisible = nu.support().iter().filter(|(f, _)| f.degree() as u32 % m == 0).count() as u32;
    let formula = e as i64 * (n / m) as i64 - e as i64 * divisible as i64;
    let direct = ord_prime(ell, &degree_of(nu)?)?;
    let group = ord_prime(ell, &group_order(n, q))?;
    Ok(Some(OrdEll { e, divisible, formula, direct, group }))
}

/// Prime powers `q ≤ limit`.
pub fn prime_powers_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&q| prime_power(q).is_some()).collect()
}

/// The `ord_ℓ` formula for every qualifying `(ν, m, ℓ)` with `q^n ≤ max_size`
/// and `m ≤ n`, taking `ℓ` the least primitive prime divisor of `q^m − 1`.
pub fn verify_ord_ell(max_size: u64, caps: &Caps) -> Result<Report> {
    let mut report = Report::new("ord-ℓ degree formula");
    for q in prime_powers_up_to(max_size) {
        let ctx = FqCtx::new(q)?;
        let mut n = 1u32;
        while pow_nat(q, n as u64) <= BigUint::from(max_size) {
            let ells: Vec<Option<BigUint>> = (1..=n)
                .map(|m| match smallest_prime_factor_primitive(m as u64, q, caps) {
                    Ok(l) => Ok(Some(l)),
                    Err(Error::NoPrimitivePrime { .. }) => Ok(None),
                    Err(e) => Err(e),
                })
                .collect::<Result<_>>()?;
            let mut err = None;
            visit_numaps(&ctx, n, caps, |nu| {
                for m in 1..=n {
                    let Some(ell) = &ells[m as usize - 1] else {
                        report.record(Outcome::Skip, String::new);
                        continue;
                    };
                    match ord_ell_degree(nu, m, ell) {
                        Ok(Some(v)) => report.check(v.holds(), || {
                            format!("q={q}, n={n}, m={m}, ℓ={ell}, ν={nu}: formula {} vs direct {} (|G| gives {})", v.formula, v.direct, v.group)
                        }),
                        Ok(None) => report.record(Outcome::Skip, String::new),
                        Err(e) => err = Some(e),
                    }
                }
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            n += 1;
        }
    }
    Ok(report)
}

/// How a probability over characters or classes is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "lowercase")]
pub enum Evaluation {
    Exact,
    Sample { count: u64, seed: u64 },
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderEquality {
    pub n: u32,
    pub q: u32,
    pub m: u32,
    pub ell: String,
    pub evaluation: Evaluation,
    #[serde(serialize_with = "ser_ratio")]
    pub probability: BigRational,
    /// `1 − (2 + 2 log n − 2 log m)/m`, for context only.
    pub asymptotic_expression: f64,
}

/// Probability over uniform `χ` that `ord_ℓ(d_χ) = ord_ℓ(|G|)`.
pub fn prob_order_equality(
    ctx: std::sync::Arc<FqCtx>,
    n: u32,
    m: u32,
    ell: &BigUint,
    evaluation: Evaluation,
    caps: &Caps,
) -> Result<OrderEquality> {
    let q = ctx.q() as u64;
    if m == 0 || n == 0 {
        return Err(Error::Domain("n and m must be positive".into()));
    }
    let p_part = split_primitive_part(m as u64, q)?.p_part;
    if !is_probable_prime(ell) || !(&p_part % ell).is_zero() {
        return Err(Error::Domain(format!("{ell} is not a prime divisor of P_{m}({q})")));
    }
    let target = ord_prime(ell, &group_order(n, q))?;
    let probability = match evaluation {
        Evaluation::Exact => {
            let (mut hits, mut total) = (0u64, 0u64);
            let mut err = None;
            visit_numaps(&ctx, n, caps, |nu| match degree_of(nu).and_then(|d| ord_prime(ell, &d)) {
                Ok(o) => {
                    total += 1;
                    hits += (o == target) as u64;
                }
                Err(e) => err = Some(e),
            })?;
            if let Some(e) = err {
                return Err(e);
            }
            BigRational::new(hits.into(), total.into())
        }
        Evaluation::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::Domain("sample count must be positive".into()));
            }
            let sampler = NuSampler::new(ctx.clone(), n, SampleMode::UniformCharacters, caps)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for _ in 0..count {
                let nu = sampler.sample(&mut rng);
                hits += (ord_prime(ell, &degree_of(&nu)?)? == target) as u64;
            }
            BigRational::new(hits.into(), count.into())
        }
    };
    let (nf, mf) = (n as f64, m as f64);
    Ok(OrderEquality {
        n,
        q: ctx.q(),
        m,
        ell: ell.to_string(),
        evaluation,
        probability,
        asymptotic_expression: 1.0 - (2.0 + 2.0 * nf.ln() - 2.0 * mf.ln()) / mf,
    })
}

/// Class-size-weighted distribution of `Fact(p_g) = Σ|ν(f)|`; the values
/// sum to `|G|`.
pub fn fact_distribution(ctx: &FqCtx, n: u32, caps: &Caps) -> Result<BTreeMap<u32, BigUint>> {
    let order = group_order(n, ctx.q() as u64);
    let mut dist: BTreeMap<u32, BigUint> = BTreeMap::new();
    visit_numaps(ctx, n, caps, |nu| {
        *dist.entry(nu.fact()).or_default() += &order / centralizer_order(nu);
    })?;
    Ok(dist)
}

/// Probability over uniform `g ∈ G` that some `f` with `deg f ≥ m` has
/// `|ν(f)| ≥ 2`.
pub fn repeated_factor_probability(ctx: &FqCtx, n: u32, m: u32, caps: &Caps) -> Result<BigRational> {
    let order = group_order(n, ctx.q() as u64);
    let mut hit = BigUint::zero();
    visit_numaps(ctx, n, caps, |nu| {
        if nu.support().iter().any(|(f, l)| f.degree() as u32 >= m && l.size() >= 2) {
            hit += &order / centralizer_order(nu);
        }
    })?;
    Ok(BigRational::new(BigInt::from(hit), BigInt::from(order)))
}

/// `Σ` class sizes `= |G|`, `Σ d_χ² = |G|`, `d_χ | |G|`, and the enumerated
/// count equals the generating-function count, for one `(n, q)`.
pub fn verify_parametrization(ctx: &FqCtx, n: u32, caps: &Caps) -> Result<Report> {
    let q = ctx.q() as u64;
    let mut report = Report::new(format!("parametrization n={n} q={q}"));
    let order = group_order(n, q);
    let mut sizes = BigUint::zero();
    let mut squares = BigUint::zero();
    let mut count = 0u64;
    visit_numaps(ctx, n, caps, |nu| {
        count += 1;
        let cent = centralizer_order(nu);
        report.check((&order % &cent).is_zero(), || format!("centralizer of {nu} does not divide |G|"));
        sizes += &order / cent;
        match degree_of(nu) {
            Ok(d) => {
                report.check((&order % &d).is_zero(), || format!("degree {d} of {nu} does not divide |G|"));
                squares += &d * &d;
            }
            Err(e) => report.check(false, || e.to_string()),
        }
    })?;
    report.check(sizes == order, || format!("class sizes sum to {sizes}, |G| = {order}"));
    report.check(squares == order, || format!("squared degrees sum to {squares}, |G| = {order}"));
    let gf = super::counting::count_numaps(n, q);
    report.check(gf.to_u64() == Some(count), || format!("enumerated {count} maps, generating function gives {gf}"));
    Ok(report)
}
