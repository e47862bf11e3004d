//! Brute-force ground truth for tiny general linear groups: every matrix,
//! conjugation orbits, centralizers by counting, characteristic polynomials,
//! and the recovery of `ν` from nullities.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::fqpoly::{factor_count, factor_poly, FqCtx, MonicPoly, Poly};
use crate::glnq::{class_data, count_numaps, group_order, NuMap};
use crate::partitions::Partition;
use crate::report::Report;

/// An `n × n` matrix over `F_q`, row-major.
pub type Matrix = Vec<u32>;

/// One conjugacy class found by orbit closure.
#[derive(Debug, Clone, Serialize)]
pub struct OracleClass {
    pub representative: Matrix,
    pub size: u64,
    pub centralizer_order: u64,
    pub char_poly: MonicPoly,
}

/// All of `GL(n,q)` with its conjugacy classes.
#[derive(Debug, Clone, Serialize)]
pub struct MatrixGroupSnapshot {
    pub n: usize,
    pub q: u32,
    #[serde(skip)]
    pub elements: Vec<Matrix>,
    pub classes: Vec<OracleClass>,
    /// For each element, the index of its class.
    #[serde(skip)]
    pub class_of: Vec<usize>,
}

struct Mats<'a> {
    ctx: &'a FqCtx,
    n: usize,
}

impl Mats<'_> {
    fn mul(&self, a: &[u32], b: &[u32]) -> Matrix {
        let n = self.n;
        let mut out = vec![0u32; n * n];
        for i in 0..n {
            for k in 0..n {
                let x = a[i * n + k];
                if x == 0 {
                    continue;
                }
                for j in 0..n {
                    out[i * n + j] = self.ctx.add(out[i * n + j], self.ctx.mul(x, b[k * n + j]));
                }
            }
        }
        out
    }

    fn identity(&self) -> Matrix {
        let n = self.n;
        (0..n * n).map(|i| (i / n == i % n) as u32).collect()
    }

    fn rank(&self, a: &[u32]) -> usize {
        let n = self.n;
        let mut m = a.to_vec();
        let mut rank = 0;
        for col in 0..n {
            let Some(pivot) = (rank..n).find(|&r| m[r * n + col] != 0) else {
                continue;
            };
            for j in 0..n {
                m.swap(rank * n + j, pivot * n + j);
            }
            let inv = self.ctx.inv(m[rank * n + col]);
            for j in 0..n {
                m[rank * n + j] = self.ctx.mul(m[rank * n + j], inv);
            }
            for r in 0..n {
                if r != rank && m[r * n + col] != 0 {
                    let factor = m[r * n + col];
                    for j in 0..n {
                        let sub = self.ctx.mul(factor, m[rank * n + j]);
                        m[r * n + j] = self.ctx.sub(m[r * n + j], sub);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn inverse(&self, a: &[u32]) -> Matrix {
        let n = self.n;
        let mut m = a.to_vec();
        let mut inv = self.identity();
        for col in 0..n {
            let pivot = (col..n).find(|&r| m[r * n + col] != 0).expect("invertible");
            for j in 0..n {
                m.swap(col * n + j, pivot * n + j);
                inv.swap(col * n + j, pivot * n + j);
            }
            let s = self.ctx.inv(m[col * n + col]);
            for j in 0..n {
                m[col * n + j] = self.ctx.mul(m[col * n + j], s);
                inv[col * n + j] = self.ctx.mul(inv[col * n + j], s);
            }
            for r in 0..n {
                if r != col && m[r * n + col] != 0 {
                    let f = m[r * n + col];
                    for j in 0..n {
                        let a = self.ctx.mul(f, m[col * n + j]);
                        let b = self.ctx.mul(f, inv[col * n + j]);
                        m[r * n + j] = self.ctx.sub(m[r * n + j], a);
                        inv[r * n + j] = self.ctx.sub(inv[r * n + j], b);
                    }
                }
            }
        }
        inv
    }

    /// `f(A)` by Horner.
    fn eval_poly(&self, f: &[u32], a: &[u32]) -> Matrix {
        let n = self.n;
        let mut acc = vec![0u32; n * n];
        for &c in f.iter().rev() {
            acc = self.mul(&acc, a);
            for i in 0..n {
                acc[i * n + i] = self.ctx.add(acc[i * n + i], c);
            }
        }
        acc
    }

    /// `det(tI − A)` by Laplace expansion along the first row.
    fn char_poly(&self, a: &[u32]) -> Poly {
        let n = self.n;
        let entries: Vec<Poly> = (0..n * n)
            .map(|idx| {
                let (i, j) = (idx / n, idx % n);
                let c = self.ctx.neg(a[idx]);
                if i == j {
                    vec![c, 1]
                } else if c == 0 {
                    Vec::new()
                } else {
                    vec![c]
                }
            })
            .collect();
        let rows: Vec<usize> = (0..n).collect();
        self.laplace(&entries, &rows, &(0..n).collect::<Vec<_>>())
    }

    fn laplace(&self, e: &[Poly], rows: &[usize], cols: &[usize]) -> Poly {
        if rows.len() == 1 {
            return e[rows[0] * self.n + cols[0]].clone();
        }
        let mut acc: Poly = Vec::new();
        for (k, &c) in cols.iter().enumerate() {
            let entry = &e[rows[0] * self.n + c];
            if entry.is_empty() {
                continue;
            }
            let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
            let minor = self.laplace(e, &rows[1..], &rest);
            let term = self.ctx.poly_mul(entry, &minor);
            acc = if k % 2 == 0 { self.ctx.poly_add(&acc, &term) } else { self.ctx.poly_sub(&acc, &term) };
        }
        acc
    }
}

fn encode(m: &[u32], q: u32) -> u64 {
    m.iter().rev().fold(0u64, |acc, &x| acc * q as u64 + x as u64)
}

/// Enumerates `GL(n,q)` and its classes. Rows are generated one at a time,
/// each outside the span of the previous ones.
pub fn snapshot(n: usize, q: u64, caps: &Caps) -> Result<MatrixGroupSnapshot> {
    if n == 0 {
        return Err(Error::Domain("n must be positive".into()));
    }
    let order = group_order(n as u32, q);
    if order > BigUint::from(caps.group_order) {
        return Err(Error::resource(format!("matrix enumeration of GL({n},{q})"), order, caps.group_order));
    }
    let ctx: Arc<FqCtx> = FqCtx::new(q)?;
    let mats = Mats { ctx: &ctx, n };
    let qq = ctx.q();
    let vectors: Vec<Vec<u32>> = (0..(q as u64).pow(n as u32))
        .map(|mut v| {
            (0..n)
                .map(|_| {
                    let d = (v % q) as u32;
                    v /= q;
                    d
                })
                .collect()
        })
        .collect();
    let mut elements = Vec::new();
    let mut rows: Vec<usize> = Vec::new();
    grow(&ctx, &vectors, n, &mut rows, &mut vec![vec![0u32; n]], &mut elements);
    debug_assert_eq!(BigUint::from(elements.len()), order);

    let index: HashMap<u64, usize> = elements.iter().enumerate().map(|(i, m)| (encode(m, qq), i)).collect();
    let gens = generators(&ctx, n);
    let gen_pairs: Vec<(Matrix, Matrix)> = gens.iter().map(|g| (g.clone(), mats.inverse(g))).collect();
    let mut class_of = vec![usize::MAX; elements.len()];
    let mut classes = Vec::new();
    for start in 0..elements.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        let mut queue = VecDeque::from([start]);
        class_of[start] = id;
        let mut size = 0u64;
        while let Some(i) = queue.pop_front() {
            size += 1;
            for (g, gi) in &gen_pairs {
                let conj = mats.mul(&mats.mul(g, &elements[i]), gi);
                let j = index[&encode(&conj, qq)];
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    queue.push_back(j);
                }
            }
        }
        let rep = &elements[start];
        let centralizer = elements.iter().filter(|g| mats.mul(g, rep) == mats.mul(rep, g)).count() as u64;
        let char_poly = MonicPoly::new(mats.char_poly(rep))?;
        classes.push(OracleClass {
            representative: rep.clone(),
            size,
            centralizer_order: centralizer,
            char_poly,
        });
    }
    Ok(MatrixGroupSnapshot { n, q: qq, elements, classes, class_of })
}

fn grow(ctx: &FqCtx, vectors: &[Vec<u32>], n: usize, rows: &mut Vec<usize>, span: &mut Vec<Vec<u32>>, out: &mut Vec<Matrix>) {
    if rows.len() == n {
        out.push(rows.iter().flat_map(|&r| vectors[r].iter().copied()).collect());
        return;
    }
    let inside: HashSet<&Vec<u32>> = span.iter().collect();
    let candidates: Vec<usize> = (0..vectors.len()).filter(|&v| !inside.contains(&vectors[v])).collect();
    for v in candidates {
        let mut bigger = Vec::with_capacity(span.len() * ctx.q() as usize);
        for c in 0..ctx.q() {
            for s in span.iter() {
                bigger.push(s.iter().zip(&vectors[v]).map(|(&a, &b)| ctx.add(a, ctx.mul(c, b))).collect());
            }
        }
        rows.push(v);
        grow(ctx, vectors, n, rows, &mut bigger, out);
        rows.pop();
    }
}

/// Transvections `I + cE_{ij}` and `diag(g, 1, …, 1)`; these generate `GL(n,q)`.
fn generators(ctx: &FqCtx, n: usize) -> Vec<Matrix> {
    let mats = Mats { ctx, n };
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            for c in 1..ctx.q() {
                let mut m = mats.identity();
                m[i * n + j] = c;
                gens.push(m);
            }
        }
    }
    let mut d = mats.identity();
    d[0] = ctx.generator();
    gens.push(d);
    gens
}

impl MatrixGroupSnapshot {
    /// `ν` of the class containing `a`: for each irreducible factor `f` of
    /// the characteristic polynomial, the nullity increments of `f(A)^j`
    /// divided by `deg f` give the conjugate of `ν(f)`.
    pub fn recover_numap(&self, ctx: &FqCtx, a: &[u32]) -> Result<NuMap> {
        let mats = Mats { ctx, n: self.n };
        let p = MonicPoly::new(mats.char_poly(a))?;
        let mut support = Vec::new();
        for (f, e) in factor_poly(ctx, &p) {
            let d = f.degree();
            let fa = mats.eval_poly(f.coeffs(), a);
            let mut power = mats.identity();
            let mut prev = 0usize;
            let mut conj = Vec::new();
            for _ in 0..e {
                power = mats.mul(&power, &fa);
                let nullity = self.n - mats.rank(&power);
                let step = nullity - prev;
                if step % d != 0 {
                    return Err(Error::Internal(format!("nullity step {step} not divisible by deg {f}")));
                }
                if step > 0 {
                    conj.push((step / d) as u32);
                }
                prev = nullity;
            }
            support.push((f, Partition::new(conj)?.conjugate()));
        }
        NuMap::new(ctx, support)
    }

    /// Direct character table of `GL(2,2) ≅ S_3` from its action on the
    /// three nonzero vectors of `F_2²`: trivial, sign, and fixed points
    /// minus one. Indexed by this snapshot's classes.
    pub fn s3_character_table(&self) -> Result<Vec<Vec<i64>>> {
        if self.n != 2 || self.q != 2 {
            return Err(Error::Domain("the direct table is only built for GL(2,2)".into()));
        }
        let nonzero = [[1u32, 0], [0, 1], [1, 1]];
        let act = |m: &[u32], v: &[u32; 2]| -> [u32; 2] {
            [(m[0] * v[0] + m[1] * v[1]) % 2, (m[2] * v[0] + m[3] * v[1]) % 2]
        };
        let mut sign = Vec::new();
        let mut fixed = Vec::new();
        for class in &self.classes {
            let m = &class.representative;
            let perm: Vec<usize> = nonzero
                .iter()
                .map(|v| nonzero.iter().position(|w| *w == act(m, v)).expect("permutes nonzero vectors"))
                .collect();
            let inversions = (0..3).flat_map(|i| (i + 1..3).map(move |j| (i, j))).filter(|&(i, j)| perm[i] > perm[j]).count();
            sign.push(if inversions % 2 == 0 { 1 } else { -1 });
            fixed.push((0..3).filter(|&i| perm[i] == i).count() as i64);
        }
        Ok(vec![
            vec![1; self.classes.len()],
            sign,
            fixed.iter().map(|f| f - 1).collect(),
        ])
    }
}

/// Checks the snapshot against the `ν`-parametrization class by class.
pub fn match_parametrization(snap: &MatrixGroupSnapshot) -> Result<Report> {
    let ctx = FqCtx::new(snap.q as u64)?;
    let order = group_order(snap.n as u32, snap.q as u64).to_u64().expect("small group");
    let mut report = Report::new(format!("oracle GL({},{})", snap.n, snap.q));
    let total: u64 = snap.classes.iter().map(|c| c.size).sum();
    report.check(total == order, || format!("orbit sizes sum to {total}, |G| = {order}"));
    report.check(snap.elements.len() as u64 == order, || format!("{} elements enumerated", snap.elements.len()));
    let k = count_numaps(snap.n as u32, snap.q as u64);
    report.check(BigUint::from(snap.classes.len()) == k, || {
        format!("{} orbits, {k} ν-maps", snap.classes.len())
    });
    let mut seen = HashSet::new();
    for class in &snap.classes {
        report.check(order % class.size == 0 && class.size * class.centralizer_order == order, || {
            format!("orbit size {} and centralizer {} inconsistent", class.size, class.centralizer_order)
        });
        let nu = snap.recover_numap(&ctx, &class.representative)?;
        report.check(nu.degree() as usize == snap.n, || format!("{nu} has the wrong degree"));
        report.check(seen.insert(nu.clone()), || format!("two orbits recover {nu}"));
        let data = class_data(&ctx, &nu)?;
        report.check(data.class_size == BigUint::from(class.size), || {
            format!("{nu}: orbit size {} vs formula {}", class.size, data.class_size)
        });
        report.check(data.centralizer_order == BigUint::from(class.centralizer_order), || {
            format!("{nu}: centralizer {} vs formula {}", class.centralizer_order, data.centralizer_order)
        });
        report.check(data.char_poly == class.char_poly, || format!("{nu}: characteristic polynomial mismatch"));
        report.check(factor_count(&ctx, &class.char_poly) == nu.fact(), || format!("{nu}: Fact mismatch"));
    }
    Ok(report)
}

/// Snapshot and matching for each `(n, q)`.
pub fn verify_oracle(cases: &[(usize, u64)], caps: &Caps) -> Result<Report> {
    let mut report = Report::new("matrix-group oracle");
    for &(n, q) in cases {
        let snap = snapshot(n, q, caps)?;
        report.absorb(match_parametrization(&snap)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sizes(n: usize, q: u64) -> Vec<u64> {
        let mut v: Vec<u64> = snapshot(n, q, &Caps::default()).unwrap().classes.iter().map(|c| c.size).collect();
        v.sort_unstable();
        v
    }

    #[test]
    fn snapshot_examples() {
        assert_eq!(sizes(2, 2), vec![1, 2, 3]);
        let s23 = snapshot(2, 3, &Caps::default()).unwrap();
        assert_eq!(s23.elements.len(), 48);
        assert_eq!(s23.classes.len(), 8);
        assert_eq!(sizes(3, 2), vec![1, 21, 24, 24, 42, 56]);
    }

    #[test]
    fn elements_are_distinct_and_invertible() {
        let s = snapshot(2, 4, &Caps::default()).unwrap();
        let ctx = FqCtx::new(4).unwrap();
        let mats = Mats { ctx: &ctx, n: 2 };
        let set: HashSet<_> = s.elements.iter().collect();
        assert_eq!(set.len(), 180);
        assert!(s.elements.iter().all(|m| mats.rank(m) == 2));
    }

    #[test]
    fn parametrization_matches() {
        let caps = Caps::default();
        let r = verify_oracle(&[(1, 5), (2, 2), (2, 3), (3, 2), (2, 4), (2, 5)], &caps).unwrap();
        assert!(r.is_pass(), "{:?}", r.first_failure());
    }

    #[test]
    fn recovered_maps_for_known_elements() {
        let s = snapshot(2, 3, &Caps::default()).unwrap();
        let ctx = FqCtx::new(3).unwrap();
        let id = s.recover_numap(&ctx, &[1, 0, 0, 1]).unwrap();
        assert_eq!(id.support()[0].1, Partition::column(2));
        let tv = s.recover_numap(&ctx, &[1, 1, 0, 1]).unwrap();
        assert_eq!(tv.support()[0].1, Partition::row(2));
        let neg_tv = s.recover_numap(&ctx, &[2, 1, 0, 2]).unwrap();
        assert_eq!(neg_tv.support()[0].0, MonicPoly::new(vec![1, 1]).unwrap());
        assert_eq!(neg_tv.support()[0].1, Partition::row(2));
        // the two order-7 classes of GL(3,2) recover the two cubics
        let s32 = snapshot(3, 2, &Caps::default()).unwrap();
        let ctx2 = FqCtx::new(2).unwrap();
        let cubics: HashSet<_> = s32
            .classes
            .iter()
            .filter(|c| c.size == 24)
            .map(|c| s32.recover_numap(&ctx2, &c.representative).unwrap().support()[0].0.clone())
            .collect();
        assert_eq!(cubics.len(), 2);
        assert!(cubics.iter().all(|f| f.degree() == 3));
    }

    #[test]
    fn s3_table_matches_gl2_table() {
        let s = snapshot(2, 2, &Caps::default()).unwrap();
        let direct = s.s3_character_table().unwrap();
        let sizes: Vec<i64> = s.classes.iter().map(|c| c.size as i64).collect();
        for row in &direct {
            let norm: i64 = row.iter().zip(&sizes).map(|(x, s)| x * x * s).sum();
            assert_eq!(norm, 6);
        }
        // same multiset of (size, value) columns as the GL(2,q) formula table
        let t = crate::gl2::build_table(2).unwrap();
        let mut ours: Vec<Vec<(u64, i64)>> = (0..3)
            .map(|c| {
                let mut r: Vec<(u64, i64)> = (0..3)
                    .map(|g| (t.classes[g].size.to_u64().unwrap(), t.value(c, g).as_integer().unwrap()))
                    .collect();
                r.sort_unstable();
                r
            })
            .collect();
        let mut theirs: Vec<Vec<(u64, i64)>> = direct
            .iter()
            .map(|row| {
                let mut r: Vec<(u64, i64)> = row.iter().enumerate().map(|(g, &x)| (s.classes[g].size, x)).collect();
                r.sort_unstable();
                r
            })
            .collect();
        ours.sort();
        theirs.sort();
        assert_eq!(ours, theirs);
    }

    #[test]
    fn order_cap() {
        let caps = Caps { group_order: 100, ..Caps::default() };
        assert!(matches!(snapshot(2, 5, &caps), Err(Error::Resource { .. })));
    }
}
