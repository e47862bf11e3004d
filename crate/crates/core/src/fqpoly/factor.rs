//! Factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting, and Cantor–Zassenhaus equal-degree splitting with a seed
//! derived from `(q, f)` so results are reproducible.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::FqCtx;
use super::poly::{MonicPoly, Poly};
use crate::exact::pow_nat;

fn seed_for(ctx: &FqCtx, f: &[u32]) -> u64 {
    // FNV-1a
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let bytes = ctx
        .q()
        .to_le_bytes()
        .into_iter()
        .chain(f.iter().flat_map(|c| c.to_le_bytes()));
    for b in bytes {
        h ^= b as u64;
        h = h.wrapping_mul(0x0100_0000_01b3);
    }
    h
}

/// `a(x)^{1/p}` for `a` whose exponents are all multiples of `p`.
fn pth_root(ctx: &FqCtx, a: &[u32]) -> Poly {
    let p = ctx.p() as usize;
    let e = (ctx.q() / ctx.p()) as u64;
    a.iter().step_by(p).map(|&c| ctx.pow(c, e)).collect()
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, i)` with the
/// `g` squarefree, pairwise coprime, and `f = ∏ g^i`.
pub fn squarefree_decomposition(ctx: &FqCtx, f: &[u32]) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    sff(ctx, f, 1, &mut out);
    out
}

fn sff(ctx: &FqCtx, f: &[u32], scale: u32, out: &mut Vec<(Poly, u32)>) {
    if f.len() <= 1 {
        return;
    }
    let df = ctx.poly_derivative(f);
    if df.is_empty() {
        sff(ctx, &pth_root(ctx, f), scale * ctx.p(), out);
        return;
    }
    let mut c = ctx.poly_gcd(f, &df);
    let mut w = ctx.poly_divrem(f, &c).0;
    let mut i = 1;
    while w.len() > 1 {
        let y = ctx.poly_gcd(&w, &c);
        let z = ctx.poly_divrem(&w, &y).0;
        if z.len() > 1 {
            out.push((ctx.poly_monic(&z), i * scale));
        }
        i += 1;
        c = ctx.poly_divrem(&c, &y).0;
        w = y;
    }
    if c.len() > 1 {
        sff(ctx, &pth_root(ctx, &c), scale * ctx.p(), out);
    }
}

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// `(g_d, d)` where `g_d` is the product of all its degree-`d` factors.
pub fn distinct_degree(ctx: &FqCtx, f: &[u32]) -> Vec<(Poly, u32)> {
    let mut out = Vec::new();
    let mut g = f.to_vec();
    let x: Poly = vec![0, 1];
    let mut h = ctx.poly_rem(&x, &g);
    let mut d = 0;
    while g.len() > 1 {
        d += 1;
        if 2 * d > (g.len() - 1) as u32 {
            out.push((g.clone(), (g.len() - 1) as u32));
            break;
        }
        h = ctx.poly_powmod(&h, ctx.q() as u64, &g);
        let gd = ctx.poly_gcd(&g, &ctx.poly_sub(&h, &x));
        if gd.len() > 1 {
            g = ctx.poly_divrem(&g, &gd).0;
            h = ctx.poly_rem(&h, &g);
            out.push((gd, d));
        }
    }
    out
}

/// Splits a product of distinct degree-`d` irreducibles into its factors.
pub fn equal_degree(ctx: &FqCtx, f: &[u32], d: u32, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let n = (f.len() - 1) as u32;
    if n == d {
        return vec![f.to_vec()];
    }
    let q = ctx.q();
    let odd_exp = (q % 2 == 1).then(|| (pow_nat(q as u64, d as u64) - 1u32) >> 1usize);
    loop {
        let a: Poly = super::poly::trim((0..n).map(|_| rng.gen_range(0..q)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = match &odd_exp {
            Some(e) => ctx.poly_sub(&ctx.poly_powmod_big(&a, e, f), &[1]),
            None => {
                // trace map a + a^2 + … + a^{2^{kd−1}}
                let mut t = ctx.poly_rem(&a, f);
                let mut acc = t.clone();
                for _ in 1..(ctx.k() * d) {
                    t = ctx.poly_mulmod(&t, &t, f);
                    acc = ctx.poly_add(&acc, &t);
                }
                acc
            }
        };
        let g = ctx.poly_gcd(f, &b);
        if g.len() > 1 && g.len() < f.len() {
            let other = ctx.poly_divrem(f, &g).0;
            let mut out = equal_degree(ctx, &g, d, rng);
            out.extend(equal_degree(ctx, &ctx.poly_monic(&other), d, rng));
            return out;
        }
    }
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by factor.
pub fn factor_poly(ctx: &FqCtx, f: &MonicPoly) -> Vec<(MonicPoly, u32)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed_for(ctx, f.coeffs()));
    let mut out: Vec<(MonicPoly, u32)> = Vec::new();
    for (g, mult) in squarefree_decomposition(ctx, f.coeffs()) {
        for (gd, d) in distinct_degree(ctx, &g) {
            for factor in equal_degree(ctx, &gd, d, &mut rng) {
                let factor = MonicPoly::new(ctx.poly_monic(&factor)).expect("nonconstant factor");
                out.push((factor, mult));
            }
        }
    }
    out.sort();
    out
}

/// Number of irreducible factors counted with multiplicity.
pub fn factor_count(ctx: &FqCtx, f: &MonicPoly) -> u32 {
    factor_poly(ctx, f).iter().map(|(_, m)| m).sum()
}

/// Multiplies a factorization back out.
pub fn expand(ctx: &FqCtx, factors: &[(MonicPoly, u32)]) -> Poly {
    let mut acc: Poly = vec![1];
    for (f, m) in factors {
        for _ in 0..*m {
            acc = ctx.poly_mul(&acc, f.coeffs());
        }
    }
    acc
}
