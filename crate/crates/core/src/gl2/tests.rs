use std::collections::HashSet;

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::*;
use crate::exact::parse_ratio;

fn ratio(s: &str) -> BigRational {
    parse_ratio(s).unwrap()
}

#[test]
fn family_sizes() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let t = build_table(q).unwrap();
        let count = |k: ClassKind| t.classes.iter().filter(|c| c.kind == k).count() as u64;
        assert_eq!(count(ClassKind::Central), q - 1);
        assert_eq!(count(ClassKind::NonSemisimple), q - 1);
        assert_eq!(count(ClassKind::Split), (q - 1) * (q - 2) / 2);
        assert_eq!(count(ClassKind::Elliptic), q * (q - 1) / 2);
        assert_eq!(t.classes.len() as u64, q * q - 1);
        assert_eq!(t.chars.len() as u64, q * q - 1);
        let sizes: BigUint = t.classes.iter().map(|c| c.size.clone()).sum();
        assert_eq!(&sizes, t.group_order());
        let squares: u64 = t.chars.iter().map(|c| c.degree * c.degree).sum();
        assert_eq!(BigUint::from(squares), *t.group_order());
    }
}

#[test]
fn gl22_is_the_s3_table() {
    let t = build_table(2).unwrap();
    let table: Vec<Vec<i64>> = (0..3)
        .map(|c| (0..3).map(|g| t.value(c, g).as_integer().unwrap()).collect())
        .collect();
    // classes: identity (1), transvections (3), order 3 (2)
    let sizes: Vec<u64> = t.classes.iter().map(|c| c.size.to_u64().unwrap()).collect();
    assert_eq!(sizes, vec![1, 3, 2]);
    let mut rows = table.clone();
    rows.sort();
    assert_eq!(rows, vec![vec![1, -1, 1], vec![1, 1, 1], vec![2, 0, -1]]);
    assert_eq!(t.vanishing_proportion(), ratio("5/6"));
}

#[test]
fn orthogonality_small_q() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let r = build_table(q).unwrap().verify_orthogonality();
        assert!(r.is_pass(), "q={q}: {:?}", r.first_failure());
        let k = q * q - 1;
        assert_eq!(r.passed, k * (k + 1));
    }
}

#[test]
fn corrupted_table_fails_orthogonality() {
    let mut t = build_table(3).unwrap();
    let last = t.classes.len() - 1;
    t.values[4][last] = RootSum::new(t.modulus(), [(0, 1)]);
    assert!(!t.verify_orthogonality().is_pass());
}

#[test]
fn row_norms_at_q3() {
    let t = build_table(3).unwrap();
    for c in 0..t.chars.len() {
        let mut total = CycloElem::zero(8).unwrap();
        for g in 0..t.classes.len() {
            let v = t.value(c, g);
            total = total.add(&v.mul(&v.conj()).scale(t.classes[g].size.to_i64().unwrap()));
        }
        assert_eq!(total.as_integer(), Some(48));
    }
}

#[test]
fn zero_counts_agree() {
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13] {
        let t = build_table(q).unwrap();
        assert_eq!(t.vanishing_proportion(), t.vanishing_proportion_by_exponents(), "q={q}");
    }
}

#[test]
fn sporadic_zeros_exist_for_odd_q() {
    // X_θ(d_z) = −ζ^{tk}(1 + ζ^{tk(q−1)}) vanishes when tk(q−1) ≡ M/2
    let t = build_table(3).unwrap();
    let formally_nonzero_zero = (0..t.chars.len())
        .flat_map(|c| (0..t.classes.len()).map(move |g| (c, g)))
        .filter(|&(c, g)| !t.root_sum(c, g).is_formally_zero() && t.value(c, g).is_zero())
        .count();
    assert!(formally_nonzero_zero > 0);
}

#[test]
fn galois_action_permutes_rows() {
    for q in [3u64, 4, 5] {
        let t = build_table(q).unwrap();
        let m = t.modulus();
        let rows: HashSet<Vec<Vec<i64>>> = (0..t.chars.len())
            .map(|c| (0..t.classes.len()).map(|g| t.value(c, g).coeffs().to_vec()).collect())
            .collect();
        for j in (1..m).filter(|j| j.gcd(&m) == 1) {
            for c in 0..t.chars.len() {
                let image: Vec<Vec<i64>> = (0..t.classes.len())
                    .map(|g| t.value(c, g).galois_apply(j as i64).unwrap().coeffs().to_vec())
                    .collect();
                assert!(rows.contains(&image), "q={q}, σ_{j} moves χ{c} off the table");
            }
        }
    }
}

#[test]
fn lemma_a_examples() {
    let t = build_table(3).unwrap();
    let (r, rows) = t.verify_lemma_a(&[ratio("1/2"), ratio("1")]);
    assert!(r.is_pass());
    assert!(rows.iter().all(|row| row.pass));
    let grid: Vec<BigRational> = (2..=20).map(|d| BigRational::new(1.into(), d.into())).collect();
    assert!(verify_lemma_a(5, &grid).unwrap().is_pass());
}

#[test]
fn burnside_chain_small_q() {
    for q in [2u64, 3, 4, 5] {
        let r = verify_burnside_chain(q).unwrap();
        assert!(r.is_pass(), "q={q}: {:?}", r.first_failure());
    }
}

#[test]
fn steinberg_twist_dashed_sum_at_q3() {
    // classes with V ≠ 0: 2 central, 1 split, 3 elliptic
    let t = build_table(3).unwrap();
    for (c, chi) in t.chars.iter().enumerate().filter(|(_, c)| c.kind == CharKind::SteinbergTwist) {
        let mut dashed = 0u64;
        let mut support = 0;
        for g in 0..t.classes.len() {
            if t.value(c, g).is_zero() {
                continue;
            }
            support += 1;
            let s = t.classes[g].size.to_u64().unwrap();
            let f = chi.degree / chi.degree.gcd(&s);
            dashed += s * f * f;
        }
        assert_eq!(support, 6);
        assert!(dashed <= 48);
    }
}

#[test]
fn matches_numap_parametrization() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        let r = crosscheck_with_glnq(q, &Caps::default()).unwrap();
        assert!(r.is_pass(), "q={q}: {:?}", r.first_failure());
    }
}

#[test]
fn input_validation() {
    assert!(matches!(build_table(6), Err(Error::Domain(_))));
    assert!(matches!(build_table(67), Err(Error::Domain(_))));
}

#[test]
fn dump_is_serializable() {
    let d = build_table(2).unwrap().dump();
    let v = serde_json::to_value(&d).unwrap();
    assert_eq!(v["values"].as_array().unwrap().len(), 3);
    assert_eq!(v["classes"][0]["size"], "1");
}
