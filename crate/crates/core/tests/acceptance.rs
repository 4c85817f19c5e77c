//! Acceptance suite: reproduction of the three worked decompositions, the
//! certified-mode runs on high-precision fixtures, and the property suites
//! pinning the operator formulas. Each criterion prints one line.
//!
//! Everything here runs from committed fixtures with no network access.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use shimdec_core::arith::{is_squarefree, primes_up_to};
use shimdec_core::chars::{primitive_odd_characters, DirichletCharacter};
use shimdec_core::decomp::{
    decompose, verify_report, AmbientSpace, DecomposeOptions, DecompositionReport, Mode,
};
use shimdec_core::field::{Field, NfElement, NumberField};
use shimdec_core::hecke::{t_p2_half, t_p_integral, HeckeContext};
use shimdec_core::lift::{lift_of_eigenform_check, shimura_lift, theta_eigenvalue_table, LiftContext};
use shimdec_core::lmfdb::{lmfdb_fetch, LmfdbConfig};
use shimdec_core::newforms::{distinguishing_primes, eigenvalues_equal, parse_packets, NewformPacket};
use shimdec_core::qseries::QExpansion;
use shimdec_core::theta;
use shimdec_core::Rat;

fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn load_space(name: &str) -> AmbientSpace {
    let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
    AmbientSpace::from_json(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn load_packets(name: &str) -> Vec<NewformPacket> {
    let text = std::fs::read_to_string(fixtures().join(name)).unwrap();
    parse_packets(&serde_json::from_str(&text).unwrap()).unwrap()
}

fn report_line(criterion: u32, elapsed: Duration, detail: &str) {
    println!("criterion {criterion:02}: PASS in {elapsed:?} - {detail}");
}

fn assert_runtime(criterion: u32, elapsed: Duration, budget_secs: u64) {
    assert!(
        elapsed < Duration::from_secs(budget_secs),
        "criterion {criterion} exceeded its {budget_secs} s budget: {elapsed:?}"
    );
}

/// Coefficients of a summand basis vector checked against a table of
/// (index, rational, root-multiple) entries, where the root is identified by
/// the claimed embedding.
fn assert_vector(
    v: &QExpansion<NumberField>,
    root: Option<&NfElement>,
    table: &[(u64, i64, i64)],
    label: &str,
) {
    let f = &v.field;
    let prec = v.precision;
    let mut expect: BTreeMap<u64, NfElement> = BTreeMap::new();
    for &(n, c0, c1) in table {
        let mut val = f.from_i64(c0);
        if c1 != 0 {
            let r = root.expect("irrational entry needs a root");
            val = f.add(&val, &f.mul(&f.from_i64(c1), r));
        }
        expect.insert(n, val);
    }
    for n in 1..prec {
        let got = v.coeff(n).unwrap();
        let want = expect.get(&n).cloned().unwrap_or_else(|| f.zero());
        assert_eq!(got, want, "{label}: coefficient at q^{n}");
    }
}

// ---------------------------------------------------------------------------
// printed tables of the worked decompositions, transcribed independently of
// the fixture generator
// ---------------------------------------------------------------------------

fn f_table_31_root() -> Vec<Vec<(u64, i64, i64)>> {
    vec![
        vec![(1, 1, 0), (2, -1, 1), (5, -1, 0), (7, 0, 1), (9, 1, -2), (10, 1, 1)],
        vec![(4, 1, 0), (7, 0, -1), (8, -1, 1)],
    ]
}

fn f5_table() -> Vec<(u64, i64, i64)> {
    vec![(3, 1, 0), (6, -1, 0), (11, -1, 0)]
}

fn f6_table() -> Vec<(u64, i64, i64)> {
    vec![
        (1, 1, 0),
        (2, 1, 1),
        (4, -1, 0),
        (5, 0, -2),
        (7, 0, -1),
        (8, -1, -1),
        (9, 1, 1),
        (10, -2, 0),
    ]
}

fn g_tables() -> Vec<Vec<(u64, i64, i64)>> {
    let raw: Vec<Vec<(u64, i64)>> = vec![
        vec![(1, 1), (4, -2), (7, 6), (10, -12), (16, 4), (19, 6), (22, 12), (25, 1), (28, -12)],
        vec![(3, 1), (6, -2), (9, 1), (12, -2), (15, 2), (24, 4), (27, -3)],
        vec![(1, 1), (7, -4), (10, 2), (13, 2), (16, -8), (19, 8), (22, 4), (25, -5), (28, 16)],
        vec![(2, 1), (8, -2), (11, -4), (14, 2), (17, 2), (20, 6), (23, 4), (26, -4)],
        vec![(4, 1), (7, -2), (10, 1), (13, -2), (19, 4), (22, 2), (28, -4)],
        vec![(5, 1), (8, -2), (17, 1), (20, 2), (29, -3)],
    ];
    raw.into_iter()
        .map(|r| r.into_iter().map(|(n, c)| (n, c, 0)).collect())
        .collect()
}

fn h_tables() -> Vec<Vec<(u64, i64, i64)>> {
    let raw: Vec<Vec<(u64, i64)>> = vec![
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
    ];
    raw.into_iter()
        .map(|r| r.into_iter().map(|(n, c)| (n, c, 0)).collect())
        .collect()
}

fn spot_report_124() -> (DecompositionReport, AmbientSpace, Vec<NewformPacket>) {
    let space = load_space("space_124_spot.json");
    let packets = load_packets("nf_124.json");
    let opts = DecomposeOptions { mode: Mode::SpotCheck, ..Default::default() };
    let report = decompose(&space, &packets, &opts).unwrap();
    (report, space, packets)
}

fn spot_report_36() -> (DecompositionReport, AmbientSpace, Vec<NewformPacket>) {
    let space = load_space("space_36_spot.json");
    let packets = load_packets("nf_36.json");
    let opts = DecomposeOptions { mode: Mode::SpotCheck, ..Default::default() };
    let report = decompose(&space, &packets, &opts).unwrap();
    (report, space, packets)
}

fn spot_report_180() -> (DecompositionReport, AmbientSpace, Vec<NewformPacket>) {
    let space = load_space("space_180_spot.json");
    let packets = load_packets("nf_180.json");
    let opts = DecomposeOptions { mode: Mode::SpotCheck, ..Default::default() };
    let report = decompose(&space, &packets, &opts).unwrap();
    (report, space, packets)
}

#[test]
fn criterion_01_level_124_reproduction() {
    let t = Instant::now();
    let (report, space, _) = spot_report_124();
    assert!(report.all_pass(), "all spot checks pass: {:?}", report.checks);
    assert!(report.s0.is_empty(), "theta subspace is zero dimensional");
    let dims: Vec<usize> = ["31.2.a.x0", "31.2.a.x1", "62.2.a.a", "62.2.b.x0", "62.2.b.x1"]
        .iter()
        .map(|l| report.dims[*l])
        .collect();
    assert_eq!(dims, vec![2, 2, 1, 1, 1]);
    assert_eq!(dims.iter().sum::<usize>(), 7);

    // echelonized bases agree with the printed expansions exactly
    let claims = space.claims.as_ref().unwrap();
    let eb = &claims.root_embeddings["31.2.a.x0"];
    let ea = &claims.root_embeddings["62.2.b.x0"];
    let k4 = &space.field;
    let eb_conj = {
        // the conjugate root of x^2 - x - 1 is 1 - b
        k4.sub(&k4.one(), eb)
    };
    let ea_conj = k4.sub(&k4.from_i64(2), ea);
    let s31 = &report.summands["31.2.a.x0"];
    for (v, table) in s31.iter().zip(f_table_31_root()) {
        assert_vector(v, Some(eb), &table, "f1 f2");
    }
    let s31c = &report.summands["31.2.a.x1"];
    for (v, table) in s31c.iter().zip(f_table_31_root()) {
        assert_vector(v, Some(&eb_conj), &table, "f3 f4");
    }
    assert_vector(&report.summands["62.2.a.a"][0], None, &f5_table(), "f5");
    assert_vector(&report.summands["62.2.b.x0"][0], Some(ea), &f6_table(), "f6");
    assert_vector(&report.summands["62.2.b.x1"][0], Some(&ea_conj), &f6_table(), "f7");

    let elapsed = t.elapsed();
    assert_runtime(1, elapsed, 10);
    report_line(1, elapsed, "level 124 spot-check: dims (2,2,1,1,1), printed bases exact");
}

#[test]
fn criterion_02_level_36_reproduction() {
    let t = Instant::now();
    let (report, _, _) = spot_report_36();
    assert!(report.all_pass(), "all spot checks pass: {:?}", report.checks);
    assert!(report.s0.is_empty());
    assert_eq!(report.dims["6.4.a.a"], 2);
    assert_eq!(report.dims["9.4.a.a"], 4);
    assert_eq!(report.dims["18.4.a.a"], 0);
    let g = g_tables();
    for (v, table) in report.summands["6.4.a.a"].iter().zip(&g[0..2]) {
        assert_vector(v, None, table, "g1 g2");
    }
    for (v, table) in report.summands["9.4.a.a"].iter().zip(&g[2..6]) {
        assert_vector(v, None, table, "g3 g4 g5 g6");
    }
    let elapsed = t.elapsed();
    assert_runtime(2, elapsed, 10);
    report_line(2, elapsed, "level 36 spot-check: dims (2,4,0), printed bases exact");
}

#[test]
fn criterion_03_level_180_reproduction() {
    let t = Instant::now();
    let (report, _, _) = spot_report_180();
    assert!(report.all_pass(), "all spot checks pass: {:?}", report.checks);
    assert_eq!(report.s0.len(), 1, "theta subspace is one dimensional");
    let (descriptor, theta_series) = &report.s0[0];
    assert_eq!(descriptor.t, 1);
    assert_eq!(descriptor.conductor(), 3);
    assert_eq!(descriptor.psi, DirichletCharacter::kronecker(-3, 3).unwrap());
    // the generator is q - 2q^4 + 4q^16 - 5q^25 + 7q^49 at the fixture precision
    for (n, c) in [(1u64, 1i64), (4, -2), (16, 4), (25, -5), (36, 0), (49, 7)] {
        assert_eq!(
            theta_series.coeff(n).unwrap().as_rational().unwrap(),
            Rat::from_integer(c.into()),
            "theta coefficient at q^{n}"
        );
    }
    let dims: Vec<usize> =
        ["15.2.a.a", "30.2.a.a", "45.2.a.a", "90.2.a.a", "90.2.a.b", "90.2.a.c"]
            .iter()
            .map(|l| report.dims[*l])
            .collect();
    assert_eq!(dims, vec![6, 3, 2, 0, 0, 1]);
    assert_eq!(dims.iter().sum::<usize>() + report.s0.len(), 13);

    let h = h_tables();
    for (v, table) in report.summands["15.2.a.a"].iter().zip(&h[0..6]) {
        assert_vector(v, None, table, "h1..h6");
    }
    for (v, table) in report.summands["30.2.a.a"].iter().zip(&h[6..9]) {
        assert_vector(v, None, table, "h7..h9");
    }
    for (v, table) in report.summands["45.2.a.a"].iter().zip(&h[9..11]) {
        assert_vector(v, None, table, "h10 h11");
    }
    for (v, table) in report.summands["90.2.a.c"].iter().zip(&h[11..12]) {
        assert_vector(v, None, table, "h12");
    }
    let elapsed = t.elapsed();
    assert_runtime(3, elapsed, 30);
    report_line(3, elapsed, "level 180 spot-check: dim S0 = 1, dims (6,3,2,0,0,1), printed bases exact");
}

#[test]
fn criterion_04_certified_mode() {
    let t = Instant::now();
    let opts = DecomposeOptions { mode: Mode::Certified, ..Default::default() };

    let space124 = load_space("space_124_certified.json");
    let packets124 = load_packets("nf_124.json");
    let report124 = decompose(&space124, &packets124, &opts).unwrap();
    assert!(report124.all_pass(), "{:?}", report124.checks);
    assert!(report124
        .checks
        .iter()
        .any(|c| c.name == "direct-sum-rank" && c.pass));
    let dims: Vec<usize> = ["31.2.a.x0", "31.2.a.x1", "62.2.a.a", "62.2.b.x0", "62.2.b.x1"]
        .iter()
        .map(|l| report124.dims[*l])
        .collect();
    assert_eq!(dims, vec![2, 2, 1, 1, 1]);

    let space36 = load_space("space_36_certified.json");
    let packets36 = load_packets("nf_36.json");
    let report36 = decompose(&space36, &packets36, &opts).unwrap();
    assert!(report36.all_pass());
    assert_eq!(report36.dims["6.4.a.a"], 2);
    assert_eq!(report36.dims["9.4.a.a"], 4);
    assert_eq!(report36.dims["18.4.a.a"], 0);

    // spot-check results are restrictions of the certified results: the
    // certified summand bases truncated to the printed precision agree with
    // the spot-check bases coefficient by coefficient
    let (spot36, _, _) = spot_report_36();
    for label in ["6.4.a.a", "9.4.a.a"] {
        let certified = &report36.summands[label];
        let spot = &spot36.summands[label];
        assert_eq!(certified.len(), spot.len());
        for (c, s) in certified.iter().zip(spot) {
            for n in 1..s.precision {
                assert_eq!(
                    c.coeff(n).unwrap().as_rational().unwrap(),
                    s.coeff(n).unwrap().as_rational().unwrap(),
                    "{label}: restriction at q^{n}"
                );
            }
        }
    }
    // level 124: compare through the claimed root embeddings of the spot space
    let (spot124, spot_space, _) = spot_report_124();
    let claims = spot_space.claims.as_ref().unwrap();
    let k4 = &spot_space.field;
    for label in ["31.2.a.x0", "31.2.a.x1", "62.2.a.a", "62.2.b.x0", "62.2.b.x1"] {
        let certified = &report124.summands[label];
        let spot = &spot124.summands[label];
        assert_eq!(certified.len(), spot.len(), "{label}");
        let embed = claims.root_embeddings.get(label);
        for (c, s) in certified.iter().zip(spot) {
            for n in 1..s.precision {
                let cv = c.coeff(n).unwrap();
                let mapped = match embed {
                    Some(e) => k4.eval_poly(&cv.coords, e),
                    None => k4.from_rat(&cv.as_rational().expect("rational packet")),
                };
                assert_eq!(mapped, s.coeff(n).unwrap(), "{label}: restriction at q^{n}");
            }
        }
    }
    let elapsed = t.elapsed();
    assert_runtime(4, elapsed, 300);
    report_line(4, elapsed, "certified decompositions at 124 and 36; spot data is a restriction");
}

#[test]
fn criterion_05_theta_eigenvalue_suite() {
    let t = Instant::now();
    let mut triples = 0;
    for r in [3u64, 4, 5, 7] {
        for psi in primitive_odd_characters(r) {
            for tt in [1u64, 2, 3] {
                let f = theta::dilated_theta_series(&psi, tt, 2200).unwrap();
                let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
                for p in [2u64, 3, 5, 7, 11, 13] {
                    let img = t_p2_half(&f, p, &ctx).unwrap();
                    let lam = theta::theta_eigenvalue(&psi, tt, p);
                    let scaled = f.truncate(img.precision).scale(&lam);
                    assert_eq!(img, scaled, "psi mod {r}, t = {tt}, p = {p}");
                    triples += 1;
                }
            }
        }
    }
    assert!(triples >= 20, "at least twenty triples checked, got {triples}");
    let elapsed = t.elapsed();
    assert_runtime(5, elapsed, 5);
    report_line(5, elapsed, &format!("{triples} closed-form eigenvalue identities exact"));
}

#[test]
fn criterion_06_commutation_suite() {
    let t = Instant::now();
    let mut checked = 0u64;
    let mut skipped = 0u64;
    for (name, space_file) in [
        ("124", "space_124_certified.json"),
        ("36", "space_36_certified.json"),
    ] {
        let space = load_space(space_file);
        let ctx = space.hecke_context().unwrap();
        for (vi, v) in space.basis.iter().enumerate() {
            for p in primes_up_to(13) {
                for tt in 1..=5u64 {
                    if !is_squarefree(tt) {
                        continue;
                    }
                    let lc = LiftContext::new(tt, ctx.clone()).unwrap();
                    let lhs = match t_p2_half(v, p, &ctx) {
                        Ok(tv) => match shimura_lift(&tv, &lc) {
                            Ok(l) => l,
                            Err(_) => {
                                skipped += 1;
                                continue;
                            }
                        },
                        Err(_) => {
                            skipped += 1;
                            continue;
                        }
                    };
                    let rhs = {
                        let sv = shimura_lift(v, &lc).unwrap();
                        t_p_integral(&sv, p, ctx.k - 1, &sv.meta.character).unwrap()
                    };
                    let common = lhs.precision.min(rhs.precision);
                    assert!(common >= 2, "empty range at level {name}, p = {p}, t = {tt}");
                    for n in 1..common {
                        assert_eq!(
                            lhs.coeff(n).unwrap(),
                            rhs.coeff(n).unwrap(),
                            "level {name}, vector {vi}, p = {p}, t = {tt}, n = {n}"
                        );
                        checked += 1;
                    }
                }
            }
        }
    }
    assert_eq!(skipped, 0, "certified fixtures have adequate precision for every combination");
    let elapsed = t.elapsed();
    report_line(
        6,
        elapsed,
        &format!("{checked} commutation identities (all p <= 13 including p | N, squarefree t <= 5)"),
    );
}

#[test]
fn criterion_07_euler_product_suite() {
    let t = Instant::now();
    // closed-form theta generator
    let psi = DirichletCharacter::kronecker(-3, 3).unwrap();
    let f = theta::dilated_theta_series(&psi, 1, 1700).unwrap();
    let ctx = HeckeContext::new(3, f.meta.level, f.meta.character.clone()).unwrap();
    let lc = LiftContext::new(1, ctx).unwrap();
    let evs = theta_eigenvalue_table(&psi, 1, 60);
    assert!(lift_of_eigenform_check(&f, &lc, &evs).unwrap());

    // h12 of the level-180 decomposition against the level-90 eigenvalues
    let space180 = load_space("space_180_spot.json");
    let packets180 = load_packets("nf_180.json");
    let h12 = space180.claims.as_ref().unwrap().summands["90.2.a.c"][0].clone();
    let psi6 = packets180.iter().find(|p| p.label == "90.2.a.c").unwrap();
    let ctx180 = space180.hecke_context().unwrap();
    let lc180 = LiftContext::new(1, ctx180).unwrap();
    let evs6: BTreeMap<u64, NfElement> = psi6.eigenvalues.clone();
    assert!(lift_of_eigenform_check(&h12, &lc180, &evs6).unwrap(), "h12 at t = 1");

    // g1 of the level-36 decomposition: t = 1 is obstructed at q^3 because
    // the lift is phi6 + 3 V_3 phi6 rather than a multiple of the Euler
    // expansion, so the identity is checked at t = 7 where a_7 != 0
    let space36 = load_space("space_36_spot.json");
    let packets36 = load_packets("nf_36.json");
    let g1 = space36.claims.as_ref().unwrap().summands["6.4.a.a"][0].clone();
    let phi6 = packets36.iter().find(|p| p.label == "6.4.a.a").unwrap();
    let ctx36 = space36.hecke_context().unwrap();
    let evs_phi6: BTreeMap<u64, NfElement> = phi6.eigenvalues.clone();
    let lc1 = LiftContext::new(1, ctx36.clone()).unwrap();
    assert!(
        !lift_of_eigenform_check(&g1, &lc1, &evs_phi6).unwrap(),
        "the t = 1 lift of g1 mixes dilations and must fail the Euler comparison"
    );
    let lc7 = LiftContext::new(7, ctx36).unwrap();
    assert!(lift_of_eigenform_check(&g1, &lc7, &evs_phi6).unwrap(), "g1 at t = 7");

    let elapsed = t.elapsed();
    report_line(7, elapsed, "Euler-product identities for the theta generator, h12 and g1");
}

#[test]
fn criterion_08_lift_membership_suite() {
    let t = Instant::now();
    // hand oracle: Sh_1(g1) = V_1 phi6 + 3 V_3 phi6 on n <= 5
    let space36 = load_space("space_36_spot.json");
    let packets36 = load_packets("nf_36.json");
    let g1 = space36.claims.as_ref().unwrap().summands["6.4.a.a"][0].clone();
    let ctx36 = space36.hecke_context().unwrap();
    let lc1 = LiftContext::new(1, ctx36).unwrap();
    let lifted = shimura_lift(&g1, &lc1).unwrap();
    assert!(lifted.precision >= 6);
    let phi6 = packets36.iter().find(|p| p.label == "6.4.a.a").unwrap();
    let phi6_exp = phi6.q_expansion(lifted.precision).unwrap();
    let v3 = phi6_exp.v_operator(3, phi6_exp.meta.clone()).truncate(lifted.precision);
    let q = NumberField::rationals();
    let expect = phi6_exp
        .truncate(lifted.precision)
        .add(&v3.scale(&q.from_i64(3)))
        .unwrap();
    for n in 1..=5u64 {
        assert_eq!(lifted.coeff(n).unwrap(), expect.coeff(n).unwrap(), "Sh_1(g1) at q^{n}");
    }

    // the membership test passes for every summand vector of the three
    // reports whenever a usable square-free index exists
    let mut verified = 0;
    for (report, space, packets) in [spot_report_124(), spot_report_36(), spot_report_180()] {
        let results = verify_report(&report, &space, &packets);
        let lift_check = results.iter().find(|c| c.name == "lift-membership").unwrap();
        assert!(lift_check.pass, "{}", lift_check.detail);
        verified += 1;
    }
    let elapsed = t.elapsed();
    report_line(8, elapsed, &format!("lift coefficients (1, 3) verified; membership passes in {verified} reports"));
}

#[test]
fn criterion_09_distinguishing_primes() {
    let t = Instant::now();
    let packets124 = load_packets("nf_124.json");
    let set124 = distinguishing_primes(&packets124, 124, 100).unwrap();
    assert_eq!(set124.primes, vec![3], "the five level-124 systems split at p = 3");

    let packets180 = load_packets("nf_180.json");
    let by_label = |l: &str| packets180.iter().find(|p| p.label == l).unwrap();
    // the printed collisions at p = 7
    assert!(eigenvalues_equal(by_label("30.2.a.a"), by_label("90.2.a.c"), 7).unwrap());
    assert!(eigenvalues_equal(by_label("90.2.a.a"), by_label("90.2.a.b"), 7).unwrap());
    let set180 = distinguishing_primes(&packets180, 180, 100).unwrap();
    assert!(
        set180.primes.len() >= 2,
        "level 180 needs at least two distinguishing primes, got {:?}",
        set180.primes
    );
    let elapsed = t.elapsed();
    report_line(
        9,
        elapsed,
        &format!("124 -> {:?}; 180 -> {:?} with the documented collisions at 7", set124.primes, set180.primes),
    );
}

#[test]
fn criterion_10_network_free() {
    let t = Instant::now();
    // criteria 1-9 already run from committed fixtures with no network; this
    // exercises the client's recorded-response path explicitly: a cache miss
    // with networking disabled must fail, a seeded cache must serve
    // byte-identical packets
    let dir = std::env::temp_dir().join(format!("shimdec-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let config = LmfdbConfig {
        base_url: "http://127.0.0.1:1".into(),
        cache_dir: dir.clone(),
        offline: true,
    };
    assert!(lmfdb_fetch(&config, 2, "trivial", 62, 7).is_err());

    // seed the cache with the committed packet data for level 62 queries
    let committed = std::fs::read_to_string(fixtures().join("nf_124.json")).unwrap();
    let doc: serde_json::Value = serde_json::from_str(&committed).unwrap();
    let all = doc["newforms"].as_array().unwrap();
    for level in [1u64, 2, 31, 62] {
        let subset: Vec<_> = all
            .iter()
            .filter(|e| e["level"].as_u64() == Some(level))
            .cloned()
            .collect();
        let normalized = serde_json::json!({
            "schema": "shimdec-newforms-1",
            "newforms": subset,
        });
        let path = config.packets_path(2, "trivial", level, 7);
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, serde_json::to_vec_pretty(&normalized).unwrap()).unwrap();
    }
    let first = lmfdb_fetch(&config, 2, "trivial", 62, 7).unwrap();
    assert_eq!(first.len(), 5, "the level-31 orbit and the three level-62 systems");
    let bytes1 = std::fs::read(config.packets_path(2, "trivial", 62, 7)).unwrap();
    let second = lmfdb_fetch(&config, 2, "trivial", 62, 7).unwrap();
    let bytes2 = std::fs::read(config.packets_path(2, "trivial", 62, 7)).unwrap();
    assert_eq!(bytes1, bytes2, "cache hits are byte identical");
    assert_eq!(first.len(), second.len());
    let elapsed = t.elapsed();
    report_line(10, elapsed, "offline run with recorded-response cache identity");
}
