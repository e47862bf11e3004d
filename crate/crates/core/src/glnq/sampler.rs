//! Exact random sampling of `ν`-maps, uniformly or proportionally to class
//! size, by dynamic programming over the layered generating function.

use std::collections::{BTreeSet, HashMap};

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::data::centralizer_factor;
use super::numap::NuMap;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::pow_nat;
use crate::fqpoly::{enumerate_irreducibles, FqCtx, MonicPoly};
use crate::partitions::{enumerate_partitions, Partition};

/// Target distribution of a sampler.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    /// Every degree-`n` map equally likely (uniform over `Irr(G)`).
    UniformCharacters,
    /// `ν` with probability `|class ν|/|G|` (uniform over `G`).
    ClassSizeWeighted,
}

/// Discrete distribution with exact integer weights.
#[derive(Debug, Clone)]
struct Choice {
    labels: Vec<u32>,
    cumulative: Vec<BigUint>,
}

impl Choice {
    fn new(weights: Vec<(u32, BigRational)>) -> Option<Self> {
        let weights: Vec<_> = weights.into_iter().filter(|(_, w)| !w.is_zero()).collect();
        if weights.is_empty() {
            return None;
        }
        let lcm = weights.iter().fold(BigInt::one(), |acc, (_, w)| acc.lcm(w.denom()));
        let mut labels = Vec::with_capacity(weights.len());
        let mut cumulative = Vec::with_capacity(weights.len());
        let mut total = BigUint::zero();
        for (label, w) in weights {
            let scaled = (w * BigRational::from_integer(lcm.clone())).to_integer();
            total += scaled.to_biguint().expect("weights are non-negative");
            labels.push(label);
            cumulative.push(total.clone());
        }
        Some(Choice { labels, cumulative })
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> u32 {
        let total = self.cumulative.last().expect("nonempty");
        let u = rng.gen_biguint_below(total);
        let idx = self.cumulative.partition_point(|c| *c <= u);
        self.labels[idx]
    }
}

fn binom(n: &BigUint, k: u32) -> BigUint {
    let mut c = BigUint::one();
    for j in 0..k {
        if BigUint::from(j) >= *n {
            return BigUint::zero();
        }
        c = c * (n - BigUint::from(j)) / BigUint::from(j + 1);
    }
    c
}

/// Precomputed tables for repeated sampling at one `(n, q, mode)`.
#[derive(Debug, Clone)]
pub struct NuSampler {
    ctx: std::sync::Arc<FqCtx>,
    n: u32,
    mode: SampleMode,
    /// `(d, remaining degree) ↦` number of boxes placed in layer `d`.
    layer: HashMap<(u32, u32), Choice>,
    /// `(d, boxes) ↦` support size of layer `d`.
    support: HashMap<(u32, u32), Choice>,
    /// `(d, slots left, boxes left) ↦` index into `parts`.
    slot: HashMap<(u32, u32, u32), Choice>,
    parts: Vec<Partition>,
    listed: HashMap<u32, Vec<MonicPoly>>,
    total: BigRational,
}

const LIST_LIMIT: u64 = 1 << 16;

impl NuSampler {
    pub fn new(ctx: std::sync::Arc<FqCtx>, n: u32, mode: SampleMode, caps: &Caps) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("n must be positive".into()));
        }
        if n > caps.partitions {
            return Err(Error::resource(format!("sampler tables for n={n}"), n, caps.partitions));
        }
        let q = ctx.q() as u64;
        let mut parts = Vec::new();
        let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); n as usize + 1];
        for s in 1..=n {
            for l in enumerate_partitions(s, caps.partitions)? {
                by_size[s as usize].push(parts.len());
                parts.push(l);
            }
        }
        let weight = |l: &Partition, d: u32| -> BigRational {
            match mode {
                SampleMode::UniformCharacters => BigRational::one(),
                SampleMode::ClassSizeWeighted => BigRational::new(
                    BigInt::one(),
                    centralizer_factor(l, &pow_nat(q, d as u64)).into(),
                ),
            }
        };

        let mut layer_series: Vec<Vec<BigRational>> = vec![Vec::new(); n as usize + 2];
        let mut support = HashMap::new();
        let mut slot = HashMap::new();
        for d in 1..=n {
            let smax = (n / d) as usize;
            let count = crate::fqpoly::count_irreducibles_q(q, d as u64);
            // e[j]: total weight of partitions of j
            let e: Vec<BigRational> = (0..=smax)
                .map(|j| {
                    if j == 0 {
                        BigRational::zero()
                    } else {
                        by_size[j].iter().map(|&i| weight(&parts[i], d)).sum()
                    }
                })
                .collect();
            // b[r][s] = [y^s] (Σ_{j≥1} e_j y^j)^r
            let mut b = vec![vec![BigRational::zero(); smax + 1]; smax + 1];
            b[0][0] = BigRational::one();
            for r in 1..=smax {
                for s in r..=smax {
                    let mut acc = BigRational::zero();
                    for j in 1..=s - (r - 1) {
                        if !b[r - 1][s - j].is_zero() {
                            acc += &e[j] * &b[r - 1][s - j];
                        }
                    }
                    b[r][s] = acc;
                }
            }
            let mut a = vec![BigRational::zero(); smax + 1];
            a[0] = BigRational::one();
            for s in 1..=smax {
                let mut options = Vec::new();
                for r in 1..=s {
                    let w = BigRational::from_integer(binom(&count, r as u32).into()) * &b[r][s];
                    a[s] += &w;
                    options.push((r as u32, w));
                }
                if let Some(c) = Choice::new(options) {
                    support.insert((d, s as u32), c);
                }
            }
            for r in 1..=smax {
                for s in r..=smax {
                    let mut options = Vec::new();
                    for j in 1..=s - (r - 1) {
                        for &i in &by_size[j] {
                            options.push((i as u32, weight(&parts[i], d) * &b[r - 1][s - j]));
                        }
                    }
                    if let Some(c) = Choice::new(options) {
                        slot.insert((d, r as u32, s as u32), c);
                    }
                }
            }
            layer_series[d as usize] = a;
        }

        // suffix[d][t]: weight of layers ≥ d with total degree t
        let len = n as usize;
        let mut suffix = vec![vec![BigRational::zero(); len + 1]; len + 2];
        suffix[len + 1][0] = BigRational::one();
        let mut layer = HashMap::new();
        for d in (1..=len).rev() {
            for t in 0..=len {
                let mut acc = BigRational::zero();
                let mut options = Vec::new();
                for s in 0..=t / d {
                    let w = &layer_series[d][s] * &suffix[d + 1][t - d * s];
                    acc += &w;
                    options.push((s as u32, w));
                }
                suffix[d][t] = acc;
                if let Some(c) = Choice::new(options) {
                    layer.insert((d as u32, t as u32), c);
                }
            }
        }
        let total = suffix[1][len].clone();

        let mut listed = HashMap::new();
        for d in 1..=n {
            if pow_nat(q, d as u64) <= BigUint::from(LIST_LIMIT.min(caps.poly_scan)) {
                listed.insert(d, enumerate_irreducibles(&ctx, d, caps)?);
            }
        }
        Ok(NuSampler {
            ctx,
            n,
            mode,
            layer,
            support,
            slot,
            parts,
            listed,
            total,
        })
    }

    pub fn mode(&self) -> SampleMode {
        self.mode
    }

    /// Total weight of all degree-`n` maps: `k(G)` in uniform mode, `1` in
    /// weighted mode.
    pub fn total_weight(&self) -> &BigRational {
        &self.total
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> NuMap {
        let mut support = Vec::new();
        let mut rem = self.n;
        for d in 1..=self.n {
            if rem == 0 {
                break;
            }
            let s = self.layer[&(d, rem)].draw(rng);
            if s == 0 {
                continue;
            }
            rem -= d * s;
            let r = self.support[&(d, s)].draw(rng);
            let mut lambdas = Vec::with_capacity(r as usize);
            let mut boxes = s;
            for left in (1..=r).rev() {
                let idx = self.slot[&(d, left, boxes)].draw(rng) as usize;
                boxes -= self.parts[idx].size();
                lambdas.push(self.parts[idx].clone());
            }
            let polys = self.distinct_irreducibles(d, r as usize, rng);
            support.extend(polys.into_iter().zip(lambdas));
        }
        NuMap::new(&self.ctx, support).expect("sampled support is valid")
    }

    /// `r` distinct degree-`d` irreducibles, uniformly, sorted.
    fn distinct_irreducibles(&self, d: u32, r: usize, rng: &mut ChaCha8Rng) -> Vec<MonicPoly> {
        if let Some(list) = self.listed.get(&d) {
            let mut idx = rand::seq::index::sample(rng, list.len(), r).into_vec();
            idx.sort_unstable();
            return idx.into_iter().map(|i| list[i].clone()).collect();
        }
        let q = self.ctx.q();
        let mut chosen = BTreeSet::new();
        while chosen.len() < r {
            let mut coeffs: Vec<u32> = (0..d).map(|_| rng.gen_range(0..q)).collect();
            coeffs.push(1);
            if coeffs[0] == 0 {
                continue;
            }
            let f = MonicPoly::new(coeffs).expect("monic");
            if self.ctx.is_irreducible(&f) {
                chosen.insert(f);
            }
        }
        chosen.into_iter().collect()
    }
}

/// One map drawn with a fresh ChaCha8 stream seeded by `seed`.
pub fn sample_numap(ctx: std::sync::Arc<FqCtx>, n: u32, mode: SampleMode, seed: u64, caps: &Caps) -> Result<NuMap> {
    let sampler = NuSampler::new(ctx, n, mode, caps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok(sampler.sample(&mut rng))
}

/// Pearson statistic of observed counts against exact probabilities.
pub fn chi_square_statistic(observed: &[u64], probabilities: &[BigRational]) -> f64 {
    let total: u64 = observed.iter().sum();
    observed
        .iter()
        .zip(probabilities)
        .map(|(&o, p)| {
            let expected = p.to_f64().unwrap_or(0.0) * total as f64;
            if expected == 0.0 {
                if o == 0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            } else {
                (o as f64 - expected).powi(2) / expected
            }
        })
        .sum()
}

/// Outcome of a goodness-of-fit run of a sampler against the exact law.
#[derive(Debug, Clone, Serialize)]
pub struct FitCheck {
    pub n: u32,
    pub q: u32,
    pub mode: SampleMode,
    pub samples: u64,
    pub seed: u64,
    pub classes: usize,
    pub statistic: f64,
    pub critical: f64,
    pub level: f64,
    pub pass: bool,
}

/// Draws `samples` maps and compares class frequencies with the exact
/// probabilities (uniform, or `|class|/|G|`) by a chi-square test at `level`.
pub fn verify_sampler_fit(
    ctx: std::sync::Arc<FqCtx>,
    n: u32,
    mode: SampleMode,
    samples: u64,
    seed: u64,
    level: f64,
    caps: &Caps,
) -> Result<FitCheck> {
    use statrs::distribution::{ChiSquared, ContinuousCDF};

    let maps = super::numap::enumerate_numaps(&ctx, n, caps)?;
    let probabilities: Vec<BigRational> = maps
        .iter()
        .map(|nu| match mode {
            SampleMode::UniformCharacters => BigRational::new(BigInt::one(), BigInt::from(maps.len())),
            SampleMode::ClassSizeWeighted => {
                BigRational::new(BigInt::one(), super::data::centralizer_order(nu).into())
            }
        })
        .collect();
    let index: HashMap<&NuMap, usize> = maps.iter().enumerate().map(|(i, nu)| (nu, i)).collect();
    let sampler = NuSampler::new(ctx.clone(), n, mode, caps)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut observed = vec![0u64; maps.len()];
    for _ in 0..samples {
        let nu = sampler.sample(&mut rng);
        let i = *index
            .get(&nu)
            .ok_or_else(|| Error::Internal(format!("sampled map {nu} is not in the enumeration")))?;
        observed[i] += 1;
    }
    let statistic = chi_square_statistic(&observed, &probabilities);
    let df = (maps.len().max(2) - 1) as f64;
    let critical = ChiSquared::new(df)
        .map_err(|e| Error::Internal(format!("chi-square distribution: {e}")))?
        .inverse_cdf(level);
    Ok(FitCheck {
        n,
        q: ctx.q(),
        mode,
        samples,
        seed,
        classes: maps.len(),
        statistic,
        critical,
        level,
        pass: statistic < critical,
    })
}
