//! Level 180, weight 3/2, character (3|.): eigenvalue packets for the six
//! weight-2 newforms of level dividing 90 via conductor-matched elliptic
//! curves, and the printed-precision fixture with its claimed grouping.

use std::collections::BTreeMap;
use std::path::Path;

use crate::curves::find_curve;
use crate::emit::{self, PacketSpec};
use shimdec_core::chars::DirichletCharacter;
use shimdec_core::decomp::AmbientSpace;
use shimdec_core::field::{Field, NfElement, NumberField};
use shimdec_core::qseries::{QExpansion, SeriesMeta, Weight};
use shimdec_core::theta;

const PRINTED_PREC: u64 = 50;

/// Printed coefficients of the six weight-2 newforms, n = 2 .. 11.
/// Levels: 15, 30, 45, 90, 90, 90.
fn printed_newforms() -> Vec<(u64, [i64; 10])> {
    vec![
        (15, [-1, -1, -1, 1, 1, 0, 3, 1, -1, -4]),
        (30, [-1, 1, 1, -1, -1, -4, -1, 1, 1, 0]),
        (45, [1, 0, -1, -1, 0, 0, -3, 0, -1, 4]),
        (90, [-1, 0, 1, 1, 0, 2, -1, 0, -1, 6]),
        (90, [1, 0, 1, -1, 0, 2, 1, 0, -1, -6]),
        (90, [1, 0, 1, 1, 0, -4, 1, 0, 1, 0]),
    ]
}

/// Printed summand bases h_1 ... h_12 as (index, value) lists.
fn printed_h_table() -> Vec<Vec<(u64, i64)>> {
    vec![
        vec![(1, 1), (16, -2), (25, 1), (40, -2), (49, -1)],
        vec![(4, 1), (10, 1), (16, -1), (19, -2), (31, -2), (34, 2), (40, -1)],
        vec![(5, 1), (20, -2), (29, -2), (41, 2), (44, 4)],
        vec![(6, 1), (15, -1), (24, -1), (36, 1), (45, -1)],
        vec![(9, 1), (24, -2), (45, -1)],
        vec![(11, 1), (14, -1), (20, -1), (26, 1), (35, -1), (41, 1), (44, 1)],
        vec![(2, 1), (5, -1), (8, -1), (20, 1), (23, -2), (32, 1), (35, 2), (38, 4), (47, -2)],
        vec![(3, 1), (12, -1), (18, -1), (27, 1), (30, -1), (45, 1), (48, 1)],
        vec![(7, 1), (10, -1), (13, 1), (22, -1), (28, -1), (37, -1), (40, 1)],
        vec![(2, 1), (8, 1), (17, -2), (20, 1), (23, -2), (32, -1), (35, -2), (47, 2)],
        vec![(5, 1), (8, -2), (17, 2), (32, -2)],
        vec![(1, 1), (4, 1), (10, -3), (16, 1), (19, -6), (25, 1), (31, 6), (34, 6), (40, -3), (49, -5)],
    ]
}

pub fn run(fixtures: &Path) {
    let q = NumberField::rationals();
    let chi = DirichletCharacter::kronecker(3, 180).unwrap();

    // locate the six curves from the printed coefficients
    println!("[180] searching conductor-matched curves for the six newforms");
    let labels = ["15.2.a.a", "30.2.a.a", "45.2.a.a", "90.2.a.a", "90.2.a.b", "90.2.a.c"];
    let mut packets_spec = Vec::new();
    let mut curves = Vec::new();
    for ((level, coeffs), label) in printed_newforms().into_iter().zip(labels) {
        let targets: Vec<i64> = std::iter::once(1).chain(coeffs).collect();
        let support: Vec<u64> = shimdec_core::arith::factor(level).iter().map(|&(p, _)| p).collect();
        let curve = find_curve(&targets, &support, 100)
            .unwrap_or_else(|| panic!("curve of conductor {level} matching the printed data"));
        println!("[180] {label}: curve [{},{},{},{},{}]", curve.a1, curve.a2, curve.a3, curve.a4, curve.a6);
        let mut ap: BTreeMap<u64, NfElement> = BTreeMap::new();
        for p in shimdec_core::arith::primes_up_to(100) {
            ap.insert(p, q.from_i64(curve.ap(p)));
        }
        curves.push(curve);
        packets_spec.push(PacketSpec {
            label: label.into(),
            level,
            weight: 2,
            character: "trivial".into(),
            field: q.clone(),
            root_index: Some(0),
            root_label: None,
            ap,
        });
    }
    // the three conductor-90 classes must be pairwise distinct
    assert!(curves[3] != curves[4] && curves[4] != curves[5] && curves[3] != curves[5]);
    emit::write_newforms(&fixtures.join("nf_180.json"), &packets_spec);

    // the theta generator of S_0(180, chi): V(1) h_{chi_-3}
    let s0 = theta::s0_basis(180, &chi, 3, PRINTED_PREC).unwrap();
    assert_eq!(s0.len(), 1);
    assert_eq!(s0[0].0.t, 1);
    assert_eq!(s0[0].0.conductor(), 3);
    let meta = SeriesMeta::new(Weight::Half(3), 180, chi.clone()).unwrap();
    // the theta series lives in a degree-1 cyclotomic presentation; re-host
    // it over Q with the ambient meta for the fixture
    let s0_series: QExpansion<NumberField> = {
        let src = &s0[0].1;
        let mut out = QExpansion::new(q.clone(), meta.clone(), PRINTED_PREC);
        for (&n, c) in src.iter() {
            out.set(n, q.from_rat(&c.as_rational().expect("real theta coefficients")));
        }
        out
    };

    // printed fixture with claims
    let h_series: Vec<QExpansion<NumberField>> = printed_h_table()
        .iter()
        .map(|row| {
            let mut s = QExpansion::new(q.clone(), meta.clone(), PRINTED_PREC);
            for &(n, v) in row {
                s.set(n, q.from_i64(v));
            }
            s
        })
        .collect();
    let mut basis = h_series.clone();
    basis.push(s0_series.clone());
    let spot = AmbientSpace {
        level: 180,
        k: 3,
        character: chi.clone(),
        field: q.clone(),
        precision: PRINTED_PREC,
        basis,
        claims: Some(emit::claims(
            vec![
                ("15.2.a.a".into(), h_series[0..6].to_vec()),
                ("30.2.a.a".into(), h_series[6..9].to_vec()),
                ("45.2.a.a".into(), h_series[9..11].to_vec()),
                ("90.2.a.a".into(), vec![]),
                ("90.2.a.b".into(), vec![]),
                ("90.2.a.c".into(), h_series[11..12].to_vec()),
            ],
            vec![s0_series],
            vec![],
        )),
    };
    emit::write_space(&fixtures.join("space_180_spot.json"), &spot);

    // the dilated theta generator as a standalone series file, for the
    // hecke subcommand example
    let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
    let v1h = theta::dilated_theta_series(&psi, 1, 200).unwrap();
    emit::write_series(&fixtures.join("v1_htheta.json"), &v1h);

    println!("[180] done");
}
