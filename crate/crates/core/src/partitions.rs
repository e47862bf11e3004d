//! Integer partitions: enumeration, the pentagonal recurrence for `p(n)`,
//! hook lengths, and exact checks of the elementary partition bounds.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{fib_lucas, le_golden_power, pow_nat, sign_quadratic};
use crate::report::Report;

/// A partition stored as weakly decreasing positive parts. The empty list is
/// the empty partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    /// Builds a partition from parts in any order. Zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::Domain("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    /// The one-row partition `(n)`, or `∅` for `n = 0`.
    pub fn row(n: u32) -> Self {
        Partition {
            parts: if n == 0 { vec![] } else { vec![n] },
        }
    }

    /// The one-column partition `(1^n)`.
    pub fn column(n: u32) -> Self {
        Partition { parts: vec![1; n as usize] }
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Number of parts.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    /// `|λ|`.
    pub fn size(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|j| self.parts.iter().take_while(|&&p| p >= j).count() as u32)
            .collect();
        Partition { parts }
    }

    /// Hook lengths of all cells, row by row.
    pub fn hooks(&self) -> Vec<u32> {
        let conj = self.conjugate();
        let mut out = Vec::with_capacity(self.size() as usize);
        for (i, &row) in self.parts.iter().enumerate() {
            for j in 0..row {
                let arm = row - j - 1;
                let leg = conj.parts[j as usize] - i as u32 - 1;
                out.push(arm + leg + 1);
            }
        }
        out
    }

    /// `n(λ) = Σ (i−1)·λ_i`.
    pub fn n_stat(&self) -> u64 {
        self.parts
            .iter()
            .enumerate()
            .map(|(i, &p)| i as u64 * p as u64)
            .sum()
    }

    /// Multiplicities `(part, m_part)` in decreasing order of part.
    pub fn multiplicities(&self) -> Vec<(u32, u32)> {
        let mut out: Vec<(u32, u32)> = Vec::new();
        for &p in &self.parts {
            match out.last_mut() {
                Some((q, m)) if *q == p => *m += 1,
                _ => out.push((p, 1)),
            }
        }
        out
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) || parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain(format!("not a partition: {parts:?}")));
        }
        Ok(Partition { parts })
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return write!(f, "∅");
        }
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// Generalized pentagonal numbers `k(3k−1)/2` for `k = 1, −1, 2, −2, …`, up to `n`.
fn generalized_pentagonals(n: u64) -> impl Iterator<Item = (u64, bool)> {
    (1u64..)
        .flat_map(|k| [(k * (3 * k - 1) / 2, k), (k * (3 * k + 1) / 2, k)])
        .take_while(move |&(g, _)| g <= n)
        .map(|(g, k)| (g, k % 2 == 1))
}

/// `p(0), …, p(n_max)` by the pentagonal recurrence with sign pattern `++−−`.
pub fn partition_numbers(n_max: u64) -> Vec<BigUint> {
    let mut p: Vec<BigInt> = Vec::with_capacity(n_max as usize + 1);
    p.push(BigInt::one());
    for n in 1..=n_max {
        let mut acc = BigInt::zero();
        for (g, positive) in generalized_pentagonals(n) {
            let term = &p[(n - g) as usize];
            if positive {
                acc += term;
            } else {
                acc -= term;
            }
        }
        p.push(acc);
    }
    p.into_iter()
        .map(|x| x.to_biguint().expect("partition numbers are positive"))
        .collect()
}

/// `p(n)`.
pub fn count_partitions(n: u64) -> BigUint {
    partition_numbers(n).pop().expect("table is non-empty")
}

/// All partitions of `n` in reverse-lexicographic order, `(n)` first and
/// `(1^n)` last.
pub fn enumerate_partitions(n: u32, cap: u32) -> Result<Vec<Partition>> {
    if n > cap {
        return Err(Error::resource("partition enumeration", n, cap));
    }
    let mut out = Vec::new();
    visit_partitions(n, |p| out.push(Partition { parts: p.to_vec() }));
    Ok(out)
}

/// Calls `f` on every partition of `n` (reverse-lexicographic), without
/// allocating a list.
pub fn visit_partitions(n: u32, mut f: impl FnMut(&[u32])) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut parts = vec![n];
    loop {
        f(&parts);
        // drop trailing ones, decrement the last part > 1, refill
        let mut ones = 0;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        let Some(last) = parts.last_mut() else { return };
        *last -= 1;
        let cap = *last;
        let mut rest = ones + 1;
        while rest > 0 {
            let take = rest.min(cap);
            parts.push(take);
            rest -= take;
        }
    }
}

/// Exact test of `p(b) / q^{a(b−1)} < 2·γ^N` with `γ = φ/2`, i.e.
/// `p(b)·2^N < (L_N + F_N√5)·q^{a(b−1)}`.
pub fn rare_inequality(a: u64, b: u64, n_exp: u32, q: u64, p_b: &BigUint) -> bool {
    let (f, l) = fib_lucas(n_exp);
    let scale = BigInt::from(pow_nat(q, a * (b - 1)));
    let lhs = BigInt::from(p_b.clone()) << n_exp as usize;
    // lhs < (l + f√5)·scale ⟺ (l·scale − lhs) + f·scale·√5 > 0
    sign_quadratic(&(l * &scale - lhs), &(f * scale), 5) == Ordering::Greater
}

/// `p(n) ≤ 2^{n−1}`, `p(n) ≤ φ^n` and monotonicity for `1 ≤ n ≤ n_max`.
pub fn verify_power2_phi(n_max: u64) -> Report {
    let mut report = Report::new("partition bounds 2^(n-1), phi^n");
    let p = partition_numbers(n_max);
    for n in 1..=n_max {
        let pn = &p[n as usize];
        report.check(pn <= &(BigUint::one() << (n - 1) as usize), || {
            format!("p({n}) = {pn} exceeds 2^{}", n - 1)
        });
        report.check(le_golden_power(pn, n as u32), || format!("p({n}) = {pn} exceeds phi^{n}"));
        report.check(pn >= &p[n as usize - 1], || format!("p({n}) < p({})", n - 1));
    }
    report
}

/// The cross-multiplied inequality `p(b)/q^{a(b−1)} < 2γ^N` for all positive
/// `a, b` with `a(b−1) ≤ m_max`, at the tightest exponent `N = a(b−1)`
/// (`γ < 1`, so smaller `N` only loosen the right-hand side).
pub fn verify_rare(m_max: u64, q: u64) -> Report {
    let mut report = Report::new(format!("rare-partition inequality, q = {q}"));
    let p = partition_numbers(m_max + 1);
    for a in 1..=m_max.max(1) {
        for b in 1..=(m_max / a + 1) {
            let m = a * (b - 1);
            if m > m_max {
                break;
            }
            let ok = rare_inequality(a, b, m as u32, q, &p[b as usize]);
            report.check(ok, || format!("a = {a}, b = {b}, N = {m}"));
        }
    }
    report
}

/// `p(n)` from the pentagonal recurrence equals the number of listed
/// partitions for `n ≤ n_max`.
pub fn verify_recurrence(n_max: u32) -> Report {
    let mut report = Report::new("pentagonal recurrence against enumeration");
    let p = partition_numbers(n_max as u64);
    for n in 0..=n_max {
        let mut listed = 0u64;
        visit_partitions(n, |_| listed += 1);
        report.check(p[n as usize] == BigUint::from(listed), || {
            format!("p({n}) = {} but {listed} partitions listed", p[n as usize])
        });
    }
    report
}

/// Runs the power-of-two, golden-ratio, and rare-partition checks up to
/// `n_max` (with `q = 2` for the last).
pub fn verify_partition_bounds(n_max: u64) -> Report {
    let mut report = Report::new("partition bounds");
    report.absorb(verify_power2_phi(n_max));
    report.absorb(verify_rare(n_max, 2));
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn brute_count(n: u32, max_part: u32) -> u64 {
        if n == 0 {
            return 1;
        }
        (1..=max_part.min(n)).map(|k| brute_count(n - k, k)).sum()
    }

    #[test]
    fn counts_match_brute_force() {
        assert_eq!(count_partitions(0), BigUint::from(1u32));
        assert_eq!(brute_count(5, 5), 7);
        assert_eq!(brute_count(10, 10), 42);
        assert_eq!(count_partitions(5), BigUint::from(7u32));
        assert_eq!(count_partitions(10), BigUint::from(42u32));
        let table = partition_numbers(30);
        for n in 0..=30u32 {
            assert_eq!(table[n as usize], BigUint::from(brute_count(n, n)));
        }
    }

    #[test]
    fn enumeration_order_and_size() {
        let parts = |n| enumerate_partitions(n, 60).unwrap();
        assert_eq!(parts(0), vec![Partition::empty()]);
        let three: Vec<Vec<u32>> = parts(3).into_iter().map(Into::into).collect();
        assert_eq!(three, vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(parts(4).len(), 5);
        assert!(matches!(enumerate_partitions(61, 60), Err(Error::Resource { .. })));
    }

    #[test]
    fn enumeration_is_reverse_lexicographic() {
        let list = enumerate_partitions(12, 60).unwrap();
        for w in list.windows(2) {
            assert!(w[0].parts() > w[1].parts());
        }
    }

    #[test]
    fn hooks_examples() {
        assert!(Partition::empty().hooks().is_empty());
        let mut h = Partition::row(4).hooks();
        h.sort_unstable();
        assert_eq!(h, vec![1, 2, 3, 4]);
        let mut h = Partition::new(vec![2, 1]).unwrap().hooks();
        h.sort_unstable();
        assert_eq!(h, vec![1, 1, 3]);
    }

    #[test]
    fn n_stat_examples() {
        assert_eq!(Partition::row(7).n_stat(), 0);
        assert_eq!(Partition::column(3).n_stat(), 3);
        assert_eq!(Partition::new(vec![2, 1]).unwrap().n_stat(), 1);
    }

    #[test]
    fn multiplicities_and_conjugate() {
        let l = Partition::new(vec![1, 3, 3, 2, 1, 1]).unwrap();
        assert_eq!(l.parts(), &[3, 3, 2, 1, 1, 1]);
        assert_eq!(l.multiplicities(), vec![(3, 2), (2, 1), (1, 3)]);
        assert_eq!(l.conjugate().parts(), &[6, 3, 2]);
        assert_eq!(l.conjugate().conjugate(), l);
    }

    #[test]
    fn rejects_bad_parts() {
        assert!(Partition::new(vec![2, 0]).is_err());
        assert!(Partition::try_from(vec![1, 2]).is_err());
        let p: Partition = serde_json::from_str("[3,1]").unwrap();
        assert_eq!(p.size(), 4);
        assert!(serde_json::from_str::<Partition>("[1,3]").is_err());
    }

    #[test]
    fn bound_examples() {
        assert!(verify_partition_bounds(4).is_pass());
        assert!(verify_partition_bounds(1).is_pass());
        // p(4)/2^3 = 5/8 < 2(φ/2)^3
        assert!(rare_inequality(1, 4, 3, 2, &BigUint::from(5u32)));
        // and the inequality is not vacuous: it fails once the left side is inflated
        assert!(!rare_inequality(1, 4, 3, 2, &BigUint::from(9u32)));
    }
}
