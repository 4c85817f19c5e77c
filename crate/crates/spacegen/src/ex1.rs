//! Level 124, weight 3/2, trivial character: the weight-2 eigensystems of
//! levels 31 and 62 inside M_2(Gamma_0(124)), the certified high-precision
//! fixture, and the printed-precision fixture over the joint quadratic field.

use std::collections::BTreeMap;
use std::path::Path;

use crate::curves::find_curve;
use crate::eigensplit::{joint_eigenspace, orbit_ap_table, t_p_matrix};
use crate::emit::{self, PacketSpec};
use crate::extract::{
    assemble_ambient, candidate_summand, dense_to_series, rational_rows_of_orbit,
    rational_rows_plain, w_space, HalfSpec,
};
use crate::mspace::m2_gamma0_4p;
use num_bigint::BigInt;
use shimdec_core::chars::DirichletCharacter;
use shimdec_core::decomp::AmbientSpace;
use shimdec_core::field::{compositum, Field, NfElement, NumberField, DEFAULT_DEGREE_LIMIT};
use shimdec_core::poly::rat;
use shimdec_core::qseries::QExpansion;

const GEN_PREC: usize = 1048;
const FIXTURE_PREC: u64 = 1001;
const PRINTED_PREC: u64 = 12;

/// b has minimal polynomial x^2 - x - 1.
fn golden_field() -> NumberField {
    NumberField::new(vec![BigInt::from(-1), BigInt::from(-1), BigInt::from(1)]).unwrap()
}

/// a has minimal polynomial x^2 - 2x - 2.
fn sqrt3_field() -> NumberField {
    NumberField::new(vec![BigInt::from(-2), BigInt::from(-2), BigInt::from(1)]).unwrap()
}

/// Coefficient tables of the printed summand bases as (index, c0 + c1 * root)
/// pairs over the orbit fields: f1, f2 over Q(b); f5 rational; f6 over Q(a).
fn printed_f1_f2() -> Vec<Vec<(u64, (i64, i64))>> {
    vec![
        vec![(1, (1, 0)), (2, (-1, 1)), (5, (-1, 0)), (7, (0, 1)), (9, (1, -2)), (10, (1, 1))],
        vec![(4, (1, 0)), (7, (0, -1)), (8, (-1, 1))],
    ]
}

fn printed_f5() -> Vec<(u64, i64)> {
    vec![(3, 1), (6, -1), (11, -1)]
}

fn printed_f6() -> Vec<(u64, (i64, i64))> {
    vec![
        (1, (1, 0)),
        (2, (1, 1)),
        (4, (-1, 0)),
        (5, (0, -2)),
        (7, (0, -1)),
        (8, (-1, -1)),
        (9, (1, 1)),
        (10, (-2, 0)),
    ]
}

fn nf_table(field: &NumberField, rows: &[Vec<(u64, (i64, i64))>]) -> Vec<Vec<(u64, NfElement)>> {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|&(n, (c0, c1))| (n, field.element(vec![rat(c0), rat(c1)]).unwrap()))
                .collect()
        })
        .collect()
}

pub fn run(fixtures: &Path) {
    let q = NumberField::rationals();
    let kb = golden_field();
    let ka = sqrt3_field();
    let chi = DirichletCharacter::trivial(124);

    println!("[124] assembling M_2(Gamma_0(124)) with span certificate");
    let span = m2_gamma0_4p(31, GEN_PREC);
    println!("[124] solving the T_3 and T_5 actions");
    let t3 = t_p_matrix(&span, 3, 2, 124);
    let t5 = t_p_matrix(&span, 5, 2, 124);

    // level-31 orbit: lambda_3 = -2b, lambda_5 = 1
    let lam3_b = kb.element(vec![rat(0), rat(-2)]).unwrap();
    let e31 = joint_eigenspace(&span, &kb, &[(t3.clone(), lam3_b), (t5.clone(), kb.one())]);
    assert_eq!(e31.dim(), 3, "three dilation copies of the level-31 orbit");
    let table31 = orbit_ap_table(&e31, 4, 401);
    // the printed eigensystem: a_2 = b, a_3 = -2b, a_5 = 1, a_7 = 2b - 3
    assert_eq!(table31[&2], kb.gen(), "a_2 of the level-31 orbit is the golden root");
    assert_eq!(table31[&7], kb.element(vec![rat(-3), rat(2)]).unwrap());
    // a_31 must be a unit eigenvalue
    let a31 = table31[&31].as_rational().unwrap();
    assert!(a31 == rat(1) || a31 == rat(-1), "31 || 31 forces a_31 = +-1");
    println!("[124] level-31 orbit recovered; a_31 = {a31}");

    // rational level-62 form: lambda_3 = 0, lambda_5 = -2
    let e62a = joint_eigenspace(&span, &q, &[(t3.clone(), q.zero()), (t5.clone(), q.from_i64(-2))]);
    assert_eq!(e62a.dim(), 2);
    let table62a = orbit_ap_table(&e62a, 2, 401);
    // cross-oracle: the conductor-62 curve matching the printed coefficients
    let targets: Vec<i64> = vec![1, 1, 0, 1, -2, 0, 0];
    let curve62 = find_curve(&targets, &[2, 31], 15).expect("conductor-62 curve in the box");
    for (&p, v) in &table62a {
        assert_eq!(
            v.as_rational().unwrap(),
            rat(curve62.ap(p)),
            "level-62 rational form vs point counts at p = {p}"
        );
    }
    println!("[124] rational level-62 form agrees with point counting up to 401");

    // level-62 quadratic orbit: lambda_3 = a, lambda_5 = 2 - 2a
    let lam3_a = ka.gen();
    let lam5_a = ka.element(vec![rat(2), rat(-2)]).unwrap();
    let e62b = joint_eigenspace(&span, &ka, &[(t3.clone(), lam3_a), (t5.clone(), lam5_a)]);
    assert_eq!(e62b.dim(), 2);
    let table62b = orbit_ap_table(&e62b, 2, 401);
    assert_eq!(table62b[&2], ka.from_i64(-1), "printed a_2 = -1");
    assert_eq!(table62b[&7], ka.from_i64(2), "printed a_7 = 2");
    println!("[124] level-62 quadratic orbit recovered");

    let bound_ap = |t: &BTreeMap<u64, NfElement>| -> BTreeMap<u64, NfElement> {
        t.range(..=100u64).map(|(k, v)| (*k, v.clone())).collect()
    };
    let packets_spec = vec![
        PacketSpec {
            label: "31.2.a".into(),
            level: 31,
            weight: 2,
            character: "trivial".into(),
            field: kb.clone(),
            root_index: None,
            root_label: Some("b".into()),
            ap: bound_ap(&table31),
        },
        PacketSpec {
            label: "62.2.a.a".into(),
            level: 62,
            weight: 2,
            character: "trivial".into(),
            field: q.clone(),
            root_index: Some(0),
            root_label: None,
            ap: bound_ap(&table62a),
        },
        PacketSpec {
            label: "62.2.b".into(),
            level: 62,
            weight: 2,
            character: "trivial".into(),
            field: ka.clone(),
            root_index: None,
            root_label: Some("a".into()),
            ap: bound_ap(&table62b),
        },
    ];
    emit::write_newforms(&fixtures.join("nf_124.json"), &packets_spec);

    // quotient by theta and extract the three root-side candidates; the
    // conjugate summands are coordinate conjugates, so the rational union
    // of an orbit candidate spans both
    println!("[124] extracting joint eigenspace candidates in M_2(124)/theta");
    let w = w_space(&span, 1);
    let spec = HalfSpec { level: 124, k: 3, chi: chi.clone() };
    let conds = |table: &BTreeMap<u64, NfElement>| -> Vec<(u64, NfElement)> {
        [3u64, 5, 7].iter().map(|p| (*p, table[p].clone())).collect()
    };
    let c31 = candidate_summand(&w, &spec, &kb, &conds(&table31), 2, "31.2.a root");
    let c62a = candidate_summand(&w, &spec, &q, &conds(&table62a), 1, "62.2.a.a");
    let c62b = candidate_summand(&w, &spec, &ka, &conds(&table62b), 1, "62.2.b root");

    // printed-precision comparison
    crate::extract::assert_matches_table(&kb, &c31, &nf_table(&kb, &printed_f1_f2()), PRINTED_PREC, "f1 f2");
    let f5_nf: Vec<Vec<(u64, NfElement)>> = vec![printed_f5()
        .into_iter()
        .map(|(n, v)| (n, q.from_i64(v)))
        .collect()];
    crate::extract::assert_matches_table(&q, &c62a, &f5_nf, PRINTED_PREC, "f5");
    crate::extract::assert_matches_table(&ka, &c62b, &nf_table(&ka, &[printed_f6()]), PRINTED_PREC, "f6");
    println!("[124] certified candidates reproduce all printed coefficients");

    // certified ambient fixture over Q
    let meta = spec.meta();
    let mut rows = rational_rows_of_orbit(&kb, &c31);
    rows.extend(rational_rows_plain(&q, &c62a));
    rows.extend(rational_rows_of_orbit(&ka, &c62b));
    let ambient = assemble_ambient(rows, GEN_PREC, 7);
    let basis: Vec<_> = ambient
        .iter()
        .map(|d| dense_to_series(d, &q, &meta, FIXTURE_PREC))
        .collect();
    let space = AmbientSpace {
        level: 124,
        k: 3,
        character: chi.clone(),
        field: q.clone(),
        precision: FIXTURE_PREC,
        basis,
        claims: None,
    };
    emit::write_space(&fixtures.join("space_124_certified.json"), &space);

    // printed-precision fixture over the compositum of the two orbit fields
    let comp = compositum(&kb, &ka, DEFAULT_DEGREE_LIMIT).unwrap();
    let k4 = comp.field.clone();
    let eb = comp.embed1.clone();
    let ea = comp.embed2.clone();
    println!(
        "[124] joint field of the printed basis has degree {} over Q",
        k4.degree()
    );
    let meta_k4 = spec.meta();
    let into_k4_b = |rows: &[Vec<(u64, (i64, i64))>]| -> Vec<QExpansion<NumberField>> {
        rows.iter()
            .map(|r| {
                let mut s = QExpansion::new(k4.clone(), meta_k4.clone(), PRINTED_PREC);
                for &(n, (c0, c1)) in r {
                    let val = k4.add(&k4.from_i64(c0), &k4.mul(&k4.from_i64(c1), &eb));
                    s.set(n, val);
                }
                s
            })
            .collect()
    };
    let into_k4_a = |rows: &[Vec<(u64, (i64, i64))>]| -> Vec<QExpansion<NumberField>> {
        rows.iter()
            .map(|r| {
                let mut s = QExpansion::new(k4.clone(), meta_k4.clone(), PRINTED_PREC);
                for &(n, (c0, c1)) in r {
                    let val = k4.add(&k4.from_i64(c0), &k4.mul(&k4.from_i64(c1), &ea));
                    s.set(n, val);
                }
                s
            })
            .collect()
    };
    let conj_b = conjugate_rows(&printed_f1_f2());
    let conj_a = conjugate_row(&printed_f6(), 2); // conjugate of a is 2 - a
    let f12 = into_k4_b(&printed_f1_f2());
    let f34 = into_k4_b(&conj_b);
    let f5 = {
        let mut s = QExpansion::new(k4.clone(), meta_k4.clone(), PRINTED_PREC);
        for (n, v) in printed_f5() {
            s.set(n, k4.from_i64(v));
        }
        vec![s]
    };
    let f6 = into_k4_a(&[printed_f6()]);
    let f7 = into_k4_a(&[conj_a]);
    let all: Vec<QExpansion<NumberField>> = f12
        .iter()
        .chain(&f34)
        .chain(&f5)
        .chain(&f6)
        .chain(&f7)
        .cloned()
        .collect();
    let spot = AmbientSpace {
        level: 124,
        k: 3,
        character: chi.clone(),
        field: k4.clone(),
        precision: PRINTED_PREC,
        basis: all,
        claims: Some(emit::claims(
            vec![
                ("31.2.a.x0".into(), f12.clone()),
                ("31.2.a.x1".into(), f34.clone()),
                ("62.2.a.a".into(), f5.clone()),
                ("62.2.b.x0".into(), f6.clone()),
                ("62.2.b.x1".into(), f7.clone()),
            ],
            vec![],
            vec![
                ("31.2.a.x0".into(), eb.clone()),
                ("31.2.a.x1".into(), eb.clone()),
                ("62.2.b.x0".into(), ea.clone()),
                ("62.2.b.x1".into(), ea.clone()),
            ],
        )),
    };
    emit::write_space(&fixtures.join("space_124_spot.json"), &spot);
    println!("[124] done");
}

/// Conjugates coefficient pairs (c0, c1) -> value at the other root of
/// x^2 - trace x + norm: c0 + c1 root -> (c0 + c1 trace) - c1 root.
fn conjugate_row(row: &[(u64, (i64, i64))], trace: i64) -> Vec<(u64, (i64, i64))> {
    row.iter()
        .map(|&(n, (c0, c1))| (n, (c0 + c1 * trace, -c1)))
        .collect()
}

fn conjugate_rows(rows: &[Vec<(u64, (i64, i64))>]) -> Vec<Vec<(u64, (i64, i64))>> {
    rows.iter().map(|r| conjugate_row(r, 1)).collect()
}
