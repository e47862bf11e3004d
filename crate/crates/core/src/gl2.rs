//! The character table of `GL(2,q)` with exact values in `Z[ζ_{q²−1}]`,
//! the proportion of nonvanishing entries, and the Galois-averaging chain
//! bounding it.
//!
//! Everything is indexed through one generator `g₂` of `F_{q²}^×` (the field
//! generator chosen by [`FqCtx`]); `F_q^×` is generated by `g₂^{q+1}`. A
//! multiplicative character of `F_q^×` with index `a` sends `g₂^{(q+1)i}` to
//! `ζ_M^{(q+1)ai}`, `M = q² − 1`, and one of `F_{q²}^×` with index `t` sends
//! `g₂^k` to `ζ_M^{tk}`.

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::caps::Caps;
use crate::cycloring::{CycloCtx, CycloElem, RootSum};
use crate::error::{Error, Result};
use crate::exact::{ratio_string, ser_ratio};
use crate::fqpoly::{prime_power, FqCtx, MonicPoly};
use crate::glnq::{char_degree, class_data, enumerate_numaps, group_order, NuMap};
use crate::numtheory::ser_decimal;
use crate::partitions::Partition;
use crate::report::Report;

/// Largest `q` accepted by [`build_table`].
pub const MAX_Q: u64 = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassKind {
    /// `a_x = x·I`.
    Central,
    /// `b_x = x·(I + E₁₂)`.
    NonSemisimple,
    /// `c_{x,y} = diag(x, y)`, `x ≠ y`.
    Split,
    /// `d_z`, eigenvalues `z, z^q` with `z ∉ F_q`.
    Elliptic,
}

/// A conjugacy class. Parameters are exponents of `g₂`: one for central and
/// non-semisimple classes, the pair `{x, y}` for split ones, and the
/// smallest representative of `{k, qk}` for elliptic ones.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gl2Class {
    pub kind: ClassKind,
    pub exponents: Vec<u64>,
    #[serde(serialize_with = "ser_decimal")]
    pub size: BigUint,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharKind {
    /// `U_α = α∘det`.
    Linear,
    /// `V_α`, the Steinberg character twisted by `α∘det`.
    SteinbergTwist,
    /// `W_{α,β}`, principal series.
    PrincipalSeries,
    /// `X_θ`, cuspidal.
    Cuspidal,
}

/// An irreducible character with its indices (`α, β` mod `q − 1`; `θ` mod
/// `q² − 1`, smallest of `{θ, qθ}`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Gl2Char {
    pub kind: CharKind,
    pub indices: Vec<u64>,
    pub degree: u64,
}

/// The full table. `values[χ][g]` is a short root sum; reduced values come
/// from [`Gl2Table::value`].
#[derive(Debug, Clone)]
pub struct Gl2Table {
    q: u64,
    m: u64,
    order: BigUint,
    ring: Arc<CycloCtx>,
    pub classes: Vec<Gl2Class>,
    pub chars: Vec<Gl2Char>,
    values: Vec<Vec<RootSum>>,
}

/// Representatives of `k ∈ Z/M` with `k ∉ (q+1)Z`, one per orbit `{k, qk}`.
fn frobenius_orbit_reps(q: u64, m: u64) -> Vec<u64> {
    (1..m).filter(|&k| k % (q + 1) != 0 && k <= (q * k) % m).collect()
}

pub fn build_table(q: u64) -> Result<Gl2Table> {
    if prime_power(q).is_none() {
        return Err(Error::Domain(format!("{q} is not a prime power")));
    }
    if q > MAX_Q {
        return Err(Error::Domain(format!("q = {q} exceeds {MAX_Q}")));
    }
    let m = q * q - 1;
    let ring = CycloCtx::get(m)?;
    let order = group_order(2, q);
    let qq = q + 1;

    let mut classes = Vec::new();
    for i in 0..q - 1 {
        classes.push(Gl2Class { kind: ClassKind::Central, exponents: vec![qq * i], size: BigUint::one() });
    }
    for i in 0..q - 1 {
        classes.push(Gl2Class { kind: ClassKind::NonSemisimple, exponents: vec![qq * i], size: (q * q - 1).into() });
    }
    for i in 0..q - 1 {
        for j in i + 1..q - 1 {
            classes.push(Gl2Class { kind: ClassKind::Split, exponents: vec![qq * i, qq * j], size: (q * q + q).into() });
        }
    }
    for k in frobenius_orbit_reps(q, m) {
        classes.push(Gl2Class { kind: ClassKind::Elliptic, exponents: vec![k], size: (q * q - q).into() });
    }

    let mut chars = Vec::new();
    for a in 0..q - 1 {
        chars.push(Gl2Char { kind: CharKind::Linear, indices: vec![a], degree: 1 });
    }
    for a in 0..q - 1 {
        chars.push(Gl2Char { kind: CharKind::SteinbergTwist, indices: vec![a], degree: q });
    }
    for a in 0..q - 1 {
        for b in a + 1..q - 1 {
            chars.push(Gl2Char { kind: CharKind::PrincipalSeries, indices: vec![a, b], degree: q + 1 });
        }
    }
    for t in frobenius_orbit_reps(q, m) {
        chars.push(Gl2Char { kind: CharKind::Cuspidal, indices: vec![t], degree: q - 1 });
    }

    let values = chars
        .par_iter()
        .map(|chi| classes.iter().map(|g| entry(q, m, chi, g)).collect())
        .collect();
    Ok(Gl2Table { q, m, order, ring, classes, chars, values })
}

/// One table entry as a root sum. Class exponents `e` of `F_q^×` elements
/// are multiples of `q + 1`, so `α_a(g₂^e) = ζ_M^{a·e}`.
fn entry(q: u64, m: u64, chi: &Gl2Char, g: &Gl2Class) -> RootSum {
    let qi = q as i64;
    let root = |c: i64, e: u64| RootSum::new(m, [((e % m) as i64, c)]);
    let e = &g.exponents;
    let ix = &chi.indices;
    // the norm z^{q+1} of an elliptic parameter, as an exponent
    let norm = |k: u64| k * (q + 1) % m;
    match chi.kind {
        CharKind::Linear => {
            let a = ix[0];
            match g.kind {
                ClassKind::Central | ClassKind::NonSemisimple => root(1, a * 2 * e[0]),
                ClassKind::Split => root(1, a * (e[0] + e[1])),
                ClassKind::Elliptic => root(1, a * norm(e[0])),
            }
        }
        CharKind::SteinbergTwist => {
            let a = ix[0];
            match g.kind {
                ClassKind::Central => root(qi, a * 2 * e[0]),
                ClassKind::NonSemisimple => RootSum::default(),
                ClassKind::Split => root(1, a * (e[0] + e[1])),
                ClassKind::Elliptic => root(-1, a * norm(e[0])),
            }
        }
        CharKind::PrincipalSeries => {
            let (a, b) = (ix[0], ix[1]);
            match g.kind {
                ClassKind::Central => root(qi + 1, (a + b) * e[0]),
                ClassKind::NonSemisimple => root(1, (a + b) * e[0]),
                ClassKind::Split => RootSum::new(
                    m,
                    [
                        (((a * e[0] + b * e[1]) % m) as i64, 1),
                        (((a * e[1] + b * e[0]) % m) as i64, 1),
                    ],
                ),
                ClassKind::Elliptic => RootSum::default(),
            }
        }
        CharKind::Cuspidal => {
            let t = ix[0];
            match g.kind {
                ClassKind::Central => root(qi - 1, t * e[0]),
                ClassKind::NonSemisimple => root(-1, t * e[0]),
                ClassKind::Split => RootSum::default(),
                ClassKind::Elliptic => RootSum::new(
                    m,
                    [((t * e[0] % m) as i64, -1), ((t * e[0] * q % m) as i64, -1)],
                ),
            }
        }
    }
}

impl Gl2Table {
    pub fn q(&self) -> u64 {
        self.q
    }

    /// `M = q² − 1`.
    pub fn modulus(&self) -> u64 {
        self.m
    }

    pub fn group_order(&self) -> &BigUint {
        &self.order
    }

    pub fn root_sum(&self, chi: usize, g: usize) -> &RootSum {
        &self.values[chi][g]
    }

    pub fn value(&self, chi: usize, g: usize) -> CycloElem {
        self.values[chi][g].reduce(&self.ring)
    }

    fn order_i64(&self) -> i64 {
        self.order.to_i64().expect("|GL(2,q)| fits in i64 for q ≤ 64")
    }

    fn size_i64(&self, g: usize) -> i64 {
        self.classes[g].size.to_i64().expect("class size fits in i64")
    }

    /// Both orthogonality relations, exactly in `Z[ζ_M]`.
    pub fn verify_orthogonality(&self) -> Report {
        let mut report = Report::new(format!("GL(2,{}) orthogonality", self.q));
        let m = self.m as usize;
        let k = self.chars.len();
        let order = self.order_i64();
        let rows: Vec<Report> = (0..k)
            .into_par_iter()
            .map(|i| {
                let mut r = Report::new("rows");
                for j in i..k {
                    let mut acc = vec![0i64; m];
                    for g in 0..self.classes.len() {
                        self.values[i][g].accumulate_times_conj(&self.values[j][g], self.size_i64(g), self.m, &mut acc);
                    }
                    let got = self.ring.reduce_group_ring(acc);
                    let want = if i == j { order } else { 0 };
                    r.check(got.as_integer() == Some(want), || {
                        format!("⟨χ{i}, χ{j}⟩·|G| = {:?}, expected {want}", got.coeffs())
                    });
                }
                r
            })
            .collect();
        let cols: Vec<Report> = (0..self.classes.len())
            .into_par_iter()
            .map(|g| {
                let mut r = Report::new("columns");
                for h in g..self.classes.len() {
                    let mut acc = vec![0i64; m];
                    for chi in 0..k {
                        self.values[chi][g].accumulate_times_conj(&self.values[chi][h], 1, self.m, &mut acc);
                    }
                    let got = self.ring.reduce_group_ring(acc);
                    let want = if g == h { order / self.size_i64(g) } else { 0 };
                    r.check(got.as_integer() == Some(want), || {
                        format!("column sum ({g}, {h}) = {:?}, expected {want}", got.coeffs())
                    });
                }
                r
            })
            .collect();
        for r in rows.into_iter().chain(cols) {
            report.absorb(r);
        }
        report
    }

    /// `(nonzero weight, total weight)` with weights `s_g`; the zero test is
    /// the canonical-form test in `Z[ζ_M]`.
    fn nonvanishing_weight(&self) -> BigUint {
        let per_row: Vec<BigUint> = self
            .values
            .par_iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(_, v)| !v.reduce(&self.ring).is_zero())
                    .map(|(g, _)| self.classes[g].size.clone())
                    .sum()
            })
            .collect();
        per_row.into_iter().sum()
    }

    /// `P_{2,q}`: the proportion of `(χ, g) ∈ Irr(G) × G` with `χ(g) ≠ 0`.
    pub fn vanishing_proportion(&self) -> BigRational {
        let total = &self.order * self.chars.len();
        BigRational::new(self.nonvanishing_weight().into(), total.into())
    }

    /// The same proportion counted without reduction: structural zeros
    /// (formally empty entries) plus two-term sums `±(ζ^a + ζ^b)` with
    /// `a − b ≡ M/2`, the only way such a sum vanishes.
    pub fn vanishing_proportion_by_exponents(&self) -> BigRational {
        let mut zero = BigUint::zero();
        for row in &self.values {
            for (g, v) in row.iter().enumerate() {
                let vanishes = match v.terms() {
                    [] => true,
                    [(a, ca), (b, cb)] => ca == cb && self.m % 2 == 0 && (a + self.m - b) % self.m == self.m / 2,
                    _ => false,
                };
                if vanishes {
                    zero += &self.classes[g].size;
                }
            }
        }
        let total = &self.order * self.chars.len();
        BigRational::new(BigInt::from(&total - zero), total.into())
    }

    /// `Q(ε)` from the table's degrees and class sizes.
    pub fn q_eps(&self, eps: &BigRational) -> BigRational {
        let mut hit = BigUint::zero();
        for chi in &self.chars {
            let d = BigUint::from(chi.degree);
            for g in &self.classes {
                if crate::glnq::ratio_at_least(&d, &g.size, eps) {
                    hit += &g.size;
                }
            }
        }
        let total = &self.order * self.chars.len();
        BigRational::new(hit.into(), total.into())
    }

    /// `P ≤ Q(ε) + ε²` for each `ε`.
    pub fn verify_lemma_a(&self, grid: &[BigRational]) -> (Report, Vec<LemmaARow>) {
        let mut report = Report::new(format!("GL(2,{}) P ≤ Q(ε) + ε²", self.q));
        let p = self.vanishing_proportion();
        let mut rows = Vec::new();
        for eps in grid {
            let q_eps = self.q_eps(eps);
            let bound = &q_eps + eps * eps;
            let pass = p <= bound;
            report.check(pass, || {
                format!("ε = {}: P = {} > {}", ratio_string(eps), ratio_string(&p), ratio_string(&bound))
            });
            rows.push(LemmaARow { q: self.q, eps: eps.clone(), p: p.clone(), q_eps, bound, pass });
        }
        (report, rows)
    }

    /// The Burnside chain: `α = χ(g)·(d,s)/d` is integral, the row identity
    /// holds before and after Galois averaging, the average of `|σα|²` is at
    /// least one for `α ≠ 0`, and the two dashed sums are bounded.
    pub fn verify_burnside_chain(&self) -> Report {
        let order = BigRational::from_integer(self.order.clone().into());
        let k = self.chars.len();
        let per_char: Vec<(Report, BigRational)> = (0..k)
            .into_par_iter()
            .map(|c| {
                let mut r = Report::new(format!("χ{c}"));
                let d = self.chars[c].degree as i64;
                let mut norm_sum = CycloElem::zero(self.m).expect("valid order");
                let mut averaged = BigRational::zero();
                let mut dashed = BigRational::zero();
                for g in 0..self.classes.len() {
                    let v = self.value(c, g);
                    if v.is_zero() {
                        continue;
                    }
                    let s = self.size_i64(g);
                    let gcd = d.gcd(&s);
                    let Some(alpha) = v.scale(gcd).divide_by_integer(d) else {
                        r.check(false, || format!("α at (χ{c}, g{g}) is not integral"));
                        continue;
                    };
                    let factor = d / gcd;
                    r.check(alpha.scale(factor) == v, || format!("α·d/(d,s) ≠ χ(g) at (χ{c}, g{g})"));
                    let weight = s * factor * factor;
                    norm_sum = norm_sum.add(&alpha.mul(&alpha.conj()).scale(weight));
                    let avg = alpha.average_galois_norm();
                    r.check(avg >= BigRational::one(), || {
                        format!("Galois average {} < 1 at (χ{c}, g{g})", ratio_string(&avg))
                    });
                    averaged += avg * BigRational::from_integer(weight.into());
                    dashed += BigRational::from_integer(weight.into());
                }
                let want = self.order_i64();
                r.check(norm_sum.as_integer() == Some(want), || {
                    format!("Σ s·(d/(d,s))²·|α|² = {:?} ≠ |G| for χ{c}", norm_sum.coeffs())
                });
                r.check(averaged == order, || {
                    format!("Galois-averaged row sum {} ≠ |G| for χ{c}", ratio_string(&averaged))
                });
                r.check(dashed <= order, || {
                    format!("Σ' s·(d/(d,s))² = {} > |G| for χ{c}", ratio_string(&dashed))
                });
                (r, dashed)
            })
            .collect();
        let mut report = Report::new(format!("GL(2,{}) Burnside chain", self.q));
        let mut total = BigRational::zero();
        for (r, dashed) in per_char {
            total += dashed;
            report.absorb(r);
        }
        let cap = order * BigRational::from_integer(k.into());
        report.check(total <= cap, || {
            format!("Σ_χ Σ' s·(d/(d,s))² = {} > k(G)·|G|", ratio_string(&total))
        });
        report
    }

    /// Matches classes and degrees with the `ν`-parametrization of `GL(2,q)`.
    pub fn crosscheck_with_glnq(&self, caps: &Caps) -> Result<Report> {
        let mut report = Report::new(format!("GL(2,{}) against ν-maps", self.q));
        let small = FqCtx::new(self.q)?;
        let big = FqCtx::new(self.q * self.q)?;
        let embed = small.embed_into(&big)?;
        let back: HashMap<u32, u32> = embed.iter().enumerate().map(|(a, &b)| (b, a as u32)).collect();
        let to_small = |x: u32| -> Result<u32> {
            back.get(&x).copied().ok_or_else(|| Error::Internal(format!("{x} is not in the subfield")))
        };
        let elem = |e: u64| big.exp(e);
        let linear = |e: u64| -> Result<MonicPoly> { Ok(MonicPoly::linear(&small, to_small(elem(e))?)) };

        let maps = enumerate_numaps(&small, 2, caps)?;
        let data: HashMap<NuMap, _> = maps
            .iter()
            .map(|nu| Ok((nu.clone(), class_data(&small, nu)?)))
            .collect::<Result<_>>()?;
        report.check(maps.len() == self.classes.len(), || {
            format!("{} ν-maps vs {} classes", maps.len(), self.classes.len())
        });
        let mut seen = std::collections::HashSet::new();
        for class in &self.classes {
            let support = match class.kind {
                ClassKind::Central => vec![(linear(class.exponents[0])?, Partition::column(2))],
                ClassKind::NonSemisimple => vec![(linear(class.exponents[0])?, Partition::row(2))],
                ClassKind::Split => vec![
                    (linear(class.exponents[0])?, Partition::row(1)),
                    (linear(class.exponents[1])?, Partition::row(1)),
                ],
                ClassKind::Elliptic => {
                    let z = elem(class.exponents[0]);
                    let trace = big.add(z, big.pow(z, self.q));
                    let norm = big.pow(z, self.q + 1);
                    let f = vec![to_small(norm)?, small.neg(to_small(trace)?), 1];
                    vec![(MonicPoly::new(f)?, Partition::row(1))]
                }
            };
            let nu = NuMap::new(&small, support)?;
            let Some(cd) = data.get(&nu) else {
                report.check(false, || format!("class {class:?} maps to {nu}, which is not enumerated"));
                continue;
            };
            report.check(seen.insert(nu.clone()), || format!("two classes map to {nu}"));
            report.check(cd.class_size == class.size, || {
                format!("{nu}: size {} vs {}", cd.class_size, class.size)
            });
            report.check(&cd.centralizer_order * &class.size == self.order, || {
                format!("{nu}: centralizer {} inconsistent", cd.centralizer_order)
            });
        }
        let mut ours: Vec<u64> = self.chars.iter().map(|c| c.degree).collect();
        let mut theirs: Vec<u64> = maps
            .iter()
            .map(|nu| Ok(char_degree(nu)?.degree.to_u64().expect("small degree")))
            .collect::<Result<_>>()?;
        ours.sort_unstable();
        theirs.sort_unstable();
        report.check(ours == theirs, || format!("degree multisets differ: {ours:?} vs {theirs:?}"));
        Ok(report)
    }

    /// JSON-ready dump with reduced coefficient arrays.
    pub fn dump(&self) -> TableDump {
        TableDump {
            q: self.q,
            modulus: self.m,
            group_order: self.order.to_string(),
            classes: self.classes.clone(),
            chars: self.chars.clone(),
            values: (0..self.chars.len())
                .map(|c| (0..self.classes.len()).map(|g| self.value(c, g)).collect())
                .collect(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TableDump {
    pub q: u64,
    pub modulus: u64,
    pub group_order: String,
    pub classes: Vec<Gl2Class>,
    pub chars: Vec<Gl2Char>,
    pub values: Vec<Vec<CycloElem>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct LemmaARow {
    pub q: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub eps: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub p: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub q_eps: BigRational,
    #[serde(serialize_with = "ser_ratio")]
    pub bound: BigRational,
    pub pass: bool,
}

pub fn vanishing_proportion(q: u64) -> Result<BigRational> {
    Ok(build_table(q)?.vanishing_proportion())
}

pub fn verify_lemma_a(q: u64, grid: &[BigRational]) -> Result<Report> {
    Ok(build_table(q)?.verify_lemma_a(grid).0)
}

pub fn verify_burnside_chain(q: u64) -> Result<Report> {
    Ok(build_table(q)?.verify_burnside_chain())
}

pub fn crosscheck_with_glnq(q: u64, caps: &Caps) -> Result<Report> {
    build_table(q)?.crosscheck_with_glnq(caps)
}

#[cfg(test)]
mod tests;
