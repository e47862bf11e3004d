//! Statistics over pairs `(χ, g) ∈ Irr(G) × G`: the ratio statistic `Q(ε)`
//! and the exceptional set `R` built from primitive prime divisors.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::data::{centralizer_order, degree_of, group_order};
use super::lemmas::Evaluation;
use super::numap::{enumerate_numaps, NuMap};
use super::sampler::{NuSampler, SampleMode};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::{ln_upper_bound, ser_ratio};
use crate::fqpoly::{FqCtx, MonicPoly};
use crate::numtheory::{ord_prime, ser_decimal, smallest_prime_factor_primitive};
use crate::report::Report;

/// `gcd(d, s)/d ≥ ε`, by cross-multiplication.
pub fn ratio_at_least(d: &BigUint, s: &BigUint, eps: &BigRational) -> bool {
    let lhs = BigInt::from(d.gcd(s)) * eps.denom();
    let rhs = BigInt::from(d.clone()) * eps.numer();
    lhs >= rhs
}

#[derive(Debug, Clone, Serialize)]
pub struct PairStats {
    pub n: u32,
    pub q: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub eps: BigRational,
    pub evaluation: Evaluation,
    /// Measure of pairs with `gcd(d_χ, s_g)/d_χ ≥ ε`.
    #[serde(serialize_with = "ser_ratio")]
    pub q_eps: BigRational,
}

/// Degree multiset and class-size multiset of `GL(n,q)`.
#[derive(Debug, Clone)]
pub struct Spectrum {
    pub group_order: BigUint,
    pub degrees: BTreeMap<BigUint, u64>,
    pub sizes: BTreeMap<BigUint, u64>,
    pub classes: u64,
}

impl Spectrum {
    pub fn new(ctx: &FqCtx, n: u32, caps: &Caps) -> Result<Self> {
        let order = group_order(n, ctx.q() as u64);
        let mut degrees = BTreeMap::new();
        let mut sizes = BTreeMap::new();
        let mut classes = 0;
        for nu in enumerate_numaps(ctx, n, caps)? {
            *degrees.entry(degree_of(&nu)?).or_insert(0) += 1;
            *sizes.entry(&order / centralizer_order(&nu)).or_insert(0) += 1;
            classes += 1;
        }
        Ok(Spectrum { group_order: order, degrees, sizes, classes })
    }

    /// Exact `Q(ε)`.
    pub fn q_eps(&self, eps: &BigRational) -> BigRational {
        let mut hit = BigUint::zero();
        for (d, &dm) in &self.degrees {
            for (s, &sm) in &self.sizes {
                if ratio_at_least(d, s, eps) {
                    hit += s * (dm * sm);
                }
            }
        }
        let total = &self.group_order * self.classes;
        BigRational::new(hit.into(), total.into())
    }
}

/// `Q(ε)` with `χ` uniform and `g` uniform on `G`.
pub fn ratio_statistic(
    ctx: std::sync::Arc<FqCtx>,
    n: u32,
    eps: &BigRational,
    evaluation: Evaluation,
    caps: &Caps,
) -> Result<PairStats> {
    let q_eps = match evaluation {
        Evaluation::Exact => Spectrum::new(&ctx, n, caps)?.q_eps(eps),
        Evaluation::Sample { count, seed } => {
            if count == 0 {
                return Err(Error::Domain("sample count must be positive".into()));
            }
            let chars = NuSampler::new(ctx.clone(), n, SampleMode::UniformCharacters, caps)?;
            let classes = NuSampler::new(ctx.clone(), n, SampleMode::ClassSizeWeighted, caps)?;
            let order = group_order(n, ctx.q() as u64);
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut hits = 0u64;
            for _ in 0..count {
                let d = degree_of(&chars.sample(&mut rng))?;
                let s = &order / centralizer_order(&classes.sample(&mut rng));
                hits += ratio_at_least(&d, &s, eps) as u64;
            }
            BigRational::new(hits.into(), count.into())
        }
    };
    Ok(PairStats {
        n,
        q: ctx.q(),
        eps: eps.clone(),
        evaluation,
        q_eps,
    })
}

/// A class admitted to `X`, with its chosen simple factor and prime.
#[derive(Debug, Clone, Serialize)]
pub struct RClass {
    pub nu: NuMap,
    #[serde(serialize_with = "ser_decimal")]
    pub class_size: BigUint,
    pub factor: MonicPoly,
    pub m_g: u32,
    #[serde(serialize_with = "ser_decimal")]
    pub ell_g: BigUint,
    /// `m_g > 1/ε`.
    pub m_g_exceeds_inverse_eps: bool,
}

/// A class kept out of `X`, and why.
#[derive(Debug, Clone, Serialize)]
pub struct Excluded {
    pub nu: NuMap,
    pub reason: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RReport {
    pub n: u32,
    pub q: u32,
    #[serde(serialize_with = "ser_ratio")]
    pub k_factor: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub eps: BigRational,
    pub characters: u64,
    #[serde(serialize_with = "ser_decimal")]
    pub group_order: BigUint,
    pub x: Vec<RClass>,
    pub excluded: Vec<Excluded>,
    pub empty_x: bool,
    /// Measure of `R` in `Irr(G) × G`.
    #[serde(serialize_with = "ser_ratio")]
    pub r_measure: BigRational,
    pub off_r_pairs: u64,
    pub checks: Report,
}

/// Builds `X` and `R` for `GL(n,q)` and checks every pair off `R`.
pub fn build_r_set(
    ctx: &FqCtx,
    n: u32,
    k_factor: &BigRational,
    eps: &BigRational,
    caps: &Caps,
) -> Result<RReport> {
    if n < 2 {
        return Err(Error::Domain("the R-set needs n ≥ 2".into()));
    }
    let q = ctx.q() as u64;
    let order = group_order(n, q);
    let maps = enumerate_numaps(ctx, n, caps)?;
    let degrees: Vec<BigUint> = maps.iter().map(degree_of).collect::<Result<_>>()?;
    let fact_limit = k_factor * ln_upper_bound(n as u64);
    let big_enough = |deg: usize| (deg as u64) * (deg as u64) >= n as u64;

    let mut x = Vec::new();
    let mut excluded = Vec::new();
    let mut chosen: Vec<Option<usize>> = Vec::with_capacity(maps.len());
    for nu in &maps {
        let reason = if BigRational::from_integer(nu.fact().into()) > fact_limit {
            Some("Fact(p_g) exceeds k·log n".to_string())
        } else if nu.support().iter().any(|(f, l)| big_enough(f.degree()) && l.size() >= 2) {
            Some("repeated factor of degree ≥ √n".to_string())
        } else {
            None
        };
        if let Some(reason) = reason {
            excluded.push(Excluded { nu: nu.clone(), reason });
            chosen.push(None);
            continue;
        }
        // maximal degree, then smallest encoding: the first of the top degree
        let factor = nu
            .support()
            .iter()
            .filter(|(f, l)| big_enough(f.degree()) && l.size() == 1)
            .map(|(f, _)| f)
            .fold(None::<&MonicPoly>, |best, f| match best {
                Some(b) if b.degree() >= f.degree() => Some(b),
                _ => Some(f),
            });
        let Some(factor) = factor else {
            excluded.push(Excluded {
                nu: nu.clone(),
                reason: "no simple factor of degree ≥ √n".into(),
            });
            chosen.push(None);
            continue;
        };
        let m_g = factor.degree() as u32;
        let ell = match smallest_prime_factor_primitive(m_g as u64, q, caps) {
            Ok(l) => l,
            Err(Error::NoPrimitivePrime { .. }) => {
                excluded.push(Excluded {
                    nu: nu.clone(),
                    reason: format!("P_{m_g}({q}) = 1 has no prime divisor"),
                });
                chosen.push(None);
                continue;
            }
            Err(e) => return Err(e),
        };
        chosen.push(Some(x.len()));
        x.push(RClass {
            nu: nu.clone(),
            class_size: &order / centralizer_order(nu),
            factor: factor.clone(),
            m_g,
            ell_g: ell,
            m_g_exceeds_inverse_eps: eps * BigRational::from_integer(m_g.into()) > BigRational::one(),
        });
    }

    let mut checks = Report::new(format!("R-set n={n} q={q}"));
    let mut r_weight = BigUint::zero();
    let mut off_r = 0u64;
    for (g, nu) in maps.iter().enumerate() {
        let size = &order / centralizer_order(nu);
        let Some(ix) = chosen[g] else {
            r_weight += &size * maps.len();
            continue;
        };
        let class = &x[ix];
        let ell = &class.ell_g;
        let m = BigUint::from(class.m_g);
        checks.check((ell % &m).is_one() || class.m_g == 1, || {
            format!("ℓ_g = {ell} is not 1 mod m_g = {m} at g = {nu}")
        });
        checks.check(*ell > m, || format!("ℓ_g = {ell} ≤ m_g = {m} at g = {nu}"));
        let ord_group = ord_prime(ell, &order)?;
        let ord_size = ord_prime(ell, &size)?;
        for d in &degrees {
            let ord_d = ord_prime(ell, d)?;
            if ord_d != ord_group {
                r_weight += &size;
                continue;
            }
            off_r += 1;
            let ord_gcd = ord_prime(ell, &d.gcd(&size))?;
            checks.check(ord_size < ord_d && ord_gcd == ord_size, || {
                format!("off-R pair (d={d}, g={nu}): ord_{ell}(s)={ord_size}, ord_{ell}(d)={ord_d}")
            });
        }
    }
    let r_measure = BigRational::new(r_weight.into(), (&order * maps.len()).into());
    Ok(RReport {
        n,
        q: ctx.q(),
        k_factor: k_factor.clone(),
        eps: eps.clone(),
        characters: maps.len() as u64,
        group_order: order,
        empty_x: x.is_empty(),
        x,
        excluded,
        r_measure,
        off_r_pairs: off_r,
        checks,
    })
}
