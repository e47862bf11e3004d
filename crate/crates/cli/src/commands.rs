//! One function per subcommand. Each returns an [`Artifact`] and leaves
//! emission and exit status to the caller.

use std::path::Path;
use std::sync::Arc;

use serde_json::{json, Value};

use glqv_core::exact::ratio_string;
use glqv_core::fqpoly::FqCtx;
use glqv_core::glnq::{
    build_r_set, char_degree, class_data, enumerate_numaps, group_order, ratio_statistic, Evaluation, Spectrum,
};
use glqv_core::numtheory::split_primitive_part;
use glqv_core::partitions::partition_numbers;
use glqv_core::{gl2, BigNat, BigRat, Caps};

use crate::emit::{cell, to_json, Artifact};
use crate::Failure;

pub fn field(q: u64) -> Result<Arc<FqCtx>, Failure> {
    Ok(FqCtx::new(q)?)
}

pub fn pfun(max: u64) -> Artifact {
    let values = partition_numbers(max);
    let mut art = Artifact::new(vec!["n", "p"], Value::Null);
    let mut rows = Vec::new();
    for (n, p) in values.iter().enumerate() {
        art.row(vec![n.to_string(), p.to_string()]);
        rows.push(json!({ "n": n, "p": p.to_string() }));
    }
    art.json = json!({ "max": max, "rows": rows });
    art
}

pub fn cyclo(a: u64, max: u64, split: bool) -> Result<Artifact, Failure> {
    let headers = if split { vec!["n", "phi", "p_part", "r_part"] } else { vec!["n", "phi"] };
    let mut art = Artifact::new(headers, Value::Null);
    let mut rows = Vec::new();
    for n in 1..=max {
        let f = split_primitive_part(n, a)?;
        if split {
            art.row(vec![n.to_string(), f.phi_value.to_string(), f.p_part.to_string(), f.r_part.to_string()]);
            rows.push(to_json(&f));
        } else {
            art.row(vec![n.to_string(), f.phi_value.to_string()]);
            rows.push(json!({ "n": n, "a": a, "phi_value": f.phi_value.to_string() }));
        }
    }
    art.json = json!({ "a": a, "max": max, "split": split, "rows": rows });
    Ok(art)
}

pub fn classes(n: u32, q: u64, caps: &Caps) -> Result<Artifact, Failure> {
    let ctx = field(q)?;
    let order = group_order(n, q);
    let mut art = Artifact::new(vec!["nu", "char_poly", "centralizer_order", "class_size", "fact"], Value::Null);
    let mut total = BigNat::default();
    let mut list = Vec::new();
    for nu in enumerate_numaps(&ctx, n, caps)? {
        let data = class_data(&ctx, &nu)?;
        total += &data.class_size;
        art.row(vec![
            cell(&data.nu),
            cell(&data.char_poly),
            data.centralizer_order.to_string(),
            data.class_size.to_string(),
            nu.fact().to_string(),
        ]);
        let mut entry = to_json(&data);
        entry["fact"] = json!(nu.fact());
        list.push(entry);
    }
    art.pass = total == order;
    art.json = json!({
        "n": n,
        "q": q,
        "group_order": order.to_string(),
        "class_count": list.len(),
        "sum_class_sizes": total.to_string(),
        "pass": art.pass,
        "classes": list,
    });
    Ok(art)
}

pub fn chars(n: u32, q: u64, caps: &Caps) -> Result<Artifact, Failure> {
    let ctx = field(q)?;
    let order = group_order(n, q);
    let mut art = Artifact::new(vec!["nu", "degree", "q_exponent", "deficiency"], Value::Null);
    let mut squares = BigNat::default();
    let mut list = Vec::new();
    for nu in enumerate_numaps(&ctx, n, caps)? {
        let data = char_degree(&nu)?;
        squares += &data.degree * &data.degree;
        art.row(vec![
            cell(&data.nu),
            data.degree.to_string(),
            data.q_exponent.to_string(),
            data.deficiency.to_string(),
        ]);
        list.push(to_json(&data));
    }
    art.pass = squares == order;
    art.json = json!({
        "n": n,
        "q": q,
        "group_order": order.to_string(),
        "character_count": list.len(),
        "sum_degree_squares": squares.to_string(),
        "pass": art.pass,
        "characters": list,
    });
    Ok(art)
}

pub fn pairstats(n: u32, q: u64, eps: &BigRat, sample: Option<(u64, u64)>, caps: &Caps) -> Result<Artifact, Failure> {
    let ctx = field(q)?;
    let evaluation = match sample {
        Some((count, seed)) => Evaluation::Sample { count, seed },
        None => Evaluation::Exact,
    };
    let stats = ratio_statistic(ctx, n, eps, evaluation, caps)?;
    let (mode, count, seed) = match evaluation {
        Evaluation::Exact => ("exact", String::new(), String::new()),
        Evaluation::Sample { count, seed } => ("sample", count.to_string(), seed.to_string()),
    };
    let mut art = Artifact::new(vec!["n", "q", "eps", "mode", "samples", "seed", "q_eps"], to_json(&stats));
    art.row(vec![
        n.to_string(),
        q.to_string(),
        ratio_string(eps),
        mode.into(),
        count,
        seed,
        ratio_string(&stats.q_eps),
    ]);
    Ok(art)
}

pub fn rset(n: u32, q: u64, k: &BigRat, eps: &BigRat, caps: &Caps) -> Result<Artifact, Failure> {
    let ctx = field(q)?;
    let r = build_r_set(&ctx, n, k, eps, caps)?;
    let mut art = Artifact::new(
        vec!["status", "nu", "class_size", "factor", "m_g", "ell_g", "m_g_exceeds_inverse_eps", "reason"],
        Value::Null,
    );
    for c in &r.x {
        art.row(vec![
            "x".into(),
            cell(&c.nu),
            c.class_size.to_string(),
            cell(&c.factor),
            c.m_g.to_string(),
            c.ell_g.to_string(),
            c.m_g_exceeds_inverse_eps.to_string(),
            String::new(),
        ]);
    }
    for e in &r.excluded {
        art.row(vec![
            "excluded".into(),
            cell(&e.nu),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            e.reason.clone(),
        ]);
    }
    art.pass = r.checks.is_pass();
    art.json = to_json(&r);
    art.json["pass"] = json!(art.pass);
    Ok(art)
}

pub fn gl2(q: u64, grid: &[BigRat], dump: Option<&Path>) -> Result<Artifact, Failure> {
    let table = gl2::build_table(q)?;
    if let Some(path) = dump {
        let bytes = serde_json::to_vec_pretty(&to_json(&table.dump())).map_err(|e| Failure::Internal(e.to_string()))?;
        std::fs::write(path, bytes).map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display())))?;
    }
    let (report, rows) = table.verify_lemma_a(grid);
    let mut art = Artifact::new(vec!["eps", "p", "q_eps", "bound", "pass"], Value::Null);
    for r in &rows {
        art.row(vec![
            ratio_string(&r.eps),
            ratio_string(&r.p),
            ratio_string(&r.q_eps),
            ratio_string(&r.bound),
            r.pass.to_string(),
        ]);
    }
    art.pass = report.is_pass();
    art.json = json!({
        "q": q,
        "group_order": table.group_order().to_string(),
        "p": ratio_string(&table.vanishing_proportion()),
        "pass": art.pass,
        "rows": to_json(&rows),
    });
    Ok(art)
}

/// `P ≤ Q(ε) + ε²` tables for every `(n, q)` in the grid. `P` is exact for
/// `n = 1` (characters are linear and never vanish, so `P = 1`) and `n = 2`
/// (from the explicit table); for larger `n` only the bound is reported.
pub fn report(max_n: u32, qs: &[u64], grid: &[BigRat], caps: &Caps) -> Result<Artifact, Failure> {
    let mut art = Artifact::new(vec!["n", "q", "eps", "p", "q_eps", "bound", "pass"], Value::Null);
    let mut rows = Vec::new();
    let mut narrative = vec![
        "P is the proportion of pairs (χ, g) with χ(g) ≠ 0; Q(ε) is the proportion with gcd(d_χ, |g^G|)/d_χ ≥ ε.".to_string(),
        "For every ε > 0, P ≤ Q(ε) + ε².".to_string(),
        "Q(ε) ≤ δ once n is large in terms of δ and ε, uniformly in q, so P ≤ δ + ε² for all large n.".to_string(),
    ];
    let mut all_pass = true;
    for &q in qs {
        let ctx = field(q)?;
        for n in 1..=max_n {
            let p = match n {
                1 => Some(BigRat::from_integer(1.into())),
                2 => Some(gl2::vanishing_proportion(q)?),
                _ => None,
            };
            let spectrum = Spectrum::new(&ctx, n, caps)?;
            for eps in grid {
                let q_eps = spectrum.q_eps(eps);
                let bound = &q_eps + eps * eps;
                let pass = p.as_ref().map(|p| *p <= bound);
                all_pass &= pass != Some(false);
                let p_text = p.as_ref().map(ratio_string).unwrap_or_else(|| "unavailable".into());
                let pass_text = pass.map(|b| b.to_string()).unwrap_or_else(|| "n/a".into());
                art.row(vec![
                    n.to_string(),
                    q.to_string(),
                    ratio_string(eps),
                    p_text.clone(),
                    ratio_string(&q_eps),
                    ratio_string(&bound),
                    pass_text.clone(),
                ]);
                rows.push(json!({
                    "n": n,
                    "q": q,
                    "eps": ratio_string(eps),
                    "p": p_text,
                    "q_eps": ratio_string(&q_eps),
                    "bound": ratio_string(&bound),
                    "pass": pass_text,
                }));
            }
            if let Some(p) = &p {
                narrative.push(format!("GL({n},{q}): P = {} exactly.", ratio_string(p)));
            }
        }
    }
    if max_n >= 3 {
        narrative.push("For n ≥ 3 character values are not computed; only Q(ε) + ε² is shown.".into());
    }
    art.pass = all_pass;
    art.json = json!({ "max_n": max_n, "q": qs, "pass": all_pass, "narrative": narrative, "rows": rows });
    Ok(art)
}
