//! Degree-`n` maps `ν` from monic irreducibles (nonzero constant term) to
//! partitions, and their enumeration.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::{SerializeSeq, SerializeStruct};
use serde::{Serialize, Serializer};

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::exact::pow_nat;
use crate::fqpoly::{enumerate_irreducibles, FqCtx, MonicPoly};
use crate::partitions::{enumerate_partitions, Partition};

/// A finitely supported map `ν`. Only the support is stored, sorted by
/// `(deg f, encoding of f)`; every other polynomial maps to the empty
/// partition. The field is identified by `q`; operations needing field
/// arithmetic take the matching [`FqCtx`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NuMap {
    q: u32,
    support: Vec<(MonicPoly, Partition)>,
    degree: u32,
}

impl NuMap {
    /// Validates and sorts the support.
    pub fn new(ctx: &FqCtx, mut support: Vec<(MonicPoly, Partition)>) -> Result<Self> {
        for (f, lambda) in &support {
            if lambda.is_empty() {
                return Err(Error::Domain(format!("empty partition attached to {f}")));
            }
            if f.coeffs().iter().any(|&c| c >= ctx.q()) || !f.has_nonzero_constant() || !ctx.is_irreducible(f) {
                return Err(Error::Domain(format!(
                    "{f} is not an irreducible with nonzero constant term over F_{}",
                    ctx.q()
                )));
            }
        }
        support.sort_by(|a, b| a.0.cmp(&b.0));
        if support.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Domain("repeated polynomial in support".into()));
        }
        let degree = support.iter().map(|(f, l)| f.degree() as u32 * l.size()).sum();
        Ok(NuMap { q: ctx.q(), support, degree })
    }

    pub(crate) fn empty(q: u32) -> Self {
        NuMap { q, support: Vec::new(), degree: 0 }
    }

    pub(crate) fn push(&mut self, f: MonicPoly, lambda: Partition) {
        self.degree += f.degree() as u32 * lambda.size();
        self.support.push((f, lambda));
    }

    pub(crate) fn pop(&mut self) {
        if let Some((f, lambda)) = self.support.pop() {
            self.degree -= f.degree() as u32 * lambda.size();
        }
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn support(&self) -> &[(MonicPoly, Partition)] {
        &self.support
    }

    /// `Σ deg f·|ν(f)|`.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// `max deg f·(|ν(f)| − 1)`, zero for the empty support.
    pub fn deficiency(&self) -> u32 {
        self.support
            .iter()
            .map(|(f, l)| f.degree() as u32 * (l.size() - 1))
            .max()
            .unwrap_or(0)
    }

    /// `Σ |ν(f)|`: the number of irreducible factors of the characteristic
    /// polynomial, with multiplicity.
    pub fn fact(&self) -> u32 {
        self.support.iter().map(|(_, l)| l.size()).sum()
    }

    /// `N_ν = Σ deg f·n(ν(f))`.
    pub fn q_exponent(&self) -> u64 {
        self.support.iter().map(|(f, l)| f.degree() as u64 * l.n_stat()).sum()
    }

    /// `∏ f^{|ν(f)|}`.
    pub fn char_poly(&self, ctx: &FqCtx) -> MonicPoly {
        let mut acc = vec![1u32];
        for (f, l) in &self.support {
            for _ in 0..l.size() {
                acc = ctx.poly_mul(&acc, f.coeffs());
            }
        }
        MonicPoly::new(acc).expect("product of monic polynomials of positive total degree")
    }

    /// Value at `f` (the empty partition off the support).
    pub fn get(&self, f: &MonicPoly) -> Partition {
        self.support
            .iter()
            .find(|(g, _)| g == f)
            .map(|(_, l)| l.clone())
            .unwrap_or_default()
    }
}

impl fmt::Display for NuMap {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "{{")?;
        for (i, (f, l)) in self.support.iter().enumerate() {
            if i > 0 {
                write!(out, ", ")?;
            }
            write!(out, "{f} ↦ {l}")?;
        }
        write!(out, "}}")
    }
}

struct Entry<'a>(&'a MonicPoly, &'a Partition);

impl Serialize for Entry<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Entry", 2)?;
        st.serialize_field("partition", self.1)?;
        st.serialize_field("poly", self.0)?;
        st.end()
    }
}

/// Serialized as a list of `{partition, poly}` objects.
impl Serialize for NuMap {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.support.len()))?;
        for (f, l) in &self.support {
            seq.serialize_element(&Entry(f, l))?;
        }
        seq.end()
    }
}

/// Irreducibles of every degree up to a bound, sorted by `(degree, encoding)`.
#[derive(Debug, Clone)]
pub struct IrreducibleTable {
    flat: Vec<MonicPoly>,
}

impl IrreducibleTable {
    pub fn new(ctx: &FqCtx, max_degree: u32, caps: &Caps) -> Result<Self> {
        let mut flat = Vec::new();
        for d in 1..=max_degree {
            flat.extend(enumerate_irreducibles(ctx, d, caps)?);
        }
        Ok(IrreducibleTable { flat })
    }

    pub fn all(&self) -> &[MonicPoly] {
        &self.flat
    }

    pub fn of_degree(&self, d: u32) -> impl Iterator<Item = &MonicPoly> {
        self.flat.iter().filter(move |f| f.degree() as u32 == d)
    }
}

fn check_cap(n: u32, q: u32, caps: &Caps) -> Result<()> {
    let size = pow_nat(q as u64, n as u64);
    if size > BigUint::from(caps.numaps) {
        return Err(Error::resource(
            format!("ν-map enumeration for n={n}, q={q} (use sampling mode)"),
            size,
            caps.numaps,
        ));
    }
    Ok(())
}

/// Calls `visit` once for every degree-`n` map, in a fixed order: depth
/// first over the support, polynomials ascending, partitions of each size in
/// reverse-lexicographic order.
pub fn visit_numaps(ctx: &FqCtx, n: u32, caps: &Caps, mut visit: impl FnMut(&NuMap)) -> Result<()> {
    check_cap(n, ctx.q(), caps)?;
    let table = IrreducibleTable::new(ctx, n, caps)?;
    let parts: Vec<Vec<Partition>> = (0..=n)
        .map(|s| enumerate_partitions(s, caps.partitions.max(n)))
        .collect::<Result<_>>()?;
    let mut cur = NuMap::empty(ctx.q());
    dfs(table.all(), &parts, 0, n, &mut cur, &mut visit);
    Ok(())
}

fn dfs(
    flat: &[MonicPoly],
    parts: &[Vec<Partition>],
    start: usize,
    rem: u32,
    cur: &mut NuMap,
    visit: &mut impl FnMut(&NuMap),
) {
    if rem == 0 {
        visit(cur);
        return;
    }
    for i in start..flat.len() {
        let d = flat[i].degree() as u32;
        if d > rem {
            break;
        }
        for s in 1..=rem / d {
            for lambda in &parts[s as usize] {
                cur.push(flat[i].clone(), lambda.clone());
                dfs(flat, parts, i + 1, rem - d * s, cur, visit);
                cur.pop();
            }
        }
    }
}

/// All degree-`n` maps, in the order of [`visit_numaps`].
pub fn enumerate_numaps(ctx: &FqCtx, n: u32, caps: &Caps) -> Result<Vec<NuMap>> {
    let mut out = Vec::new();
    visit_numaps(ctx, n, caps, |nu| out.push(nu.clone()))?;
    Ok(out)
}
