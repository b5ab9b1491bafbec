//! Acceptance suite: the quantitative content of the whole pipeline, one
//! test per criterion, all exact. Each prints a PASS line when it holds.

mod common;

use common::{oracle_profile, random_connected_map, random_map, Rng};
use num_bigint::BigInt;
use quasitree::cli::{pd_file_metadata, run_counterexample, FIXTURE_KNOTATLAS, FIXTURE_KNOTSCAPE};
use quasitree::diagram::{parse_pd, reidemeister_3};
use quasitree::goeritz::knot_determinant;
use quasitree::map::EdgeSet;
use quasitree::quasi::{
    brt_polynomial, enumerate_quasi_trees, quasi_tree_polynomial, two_variable_q,
};
use quasitree::ribbon::{all_a_ribbon_graph, turaev_genus};

fn atlas_fixtures() -> (
    quasitree::diagram::KnotDiagram,
    quasitree::diagram::KnotDiagram,
) {
    let atlas = parse_pd(FIXTURE_KNOTATLAS).unwrap();
    let face: usize = pd_file_metadata(FIXTURE_KNOTATLAS)["r3-face"]
        .parse()
        .unwrap();
    let moved = reidemeister_3(&atlas, face).unwrap();
    (atlas, moved)
}

#[test]
fn criterion_1_counterexample_reproduction() {
    let (atlas, moved) = atlas_fixtures();
    assert_eq!(turaev_genus(&atlas), 2);
    assert_eq!(turaev_genus(&moved), 1);
    let q = quasi_tree_polynomial(&all_a_ribbon_graph(&moved)).unwrap();
    assert_eq!(q.coefficients(), &[BigInt::from(21), BigInt::from(6)]);
    println!("criterion 1: PASS - genus 2 fixture moves to genus 1 with q = 21 + 6t");
}

#[test]
fn criterion_2_second_diagram() {
    let ks = parse_pd(FIXTURE_KNOTSCAPE).unwrap();
    assert_eq!(turaev_genus(&ks), 1);
    let q = quasi_tree_polynomial(&all_a_ribbon_graph(&ks)).unwrap();
    assert_eq!(q.coefficients(), &[BigInt::from(9), BigInt::from(24)]);
    println!("criterion 2: PASS - second fixture has genus 1 and q = 9 + 24t");
}

#[test]
fn criterion_3_non_invariance_verdict() {
    let report = run_counterexample(FIXTURE_KNOTATLAS, FIXTURE_KNOTSCAPE).unwrap();
    assert!(report.polynomials_differ);
    assert_eq!(report.atlas_genus_after, 1);
    assert_eq!(report.knotscape_genus, 1);
    assert_eq!(report.q_atlas_at_minus_1.abs(), 15);
    assert_eq!(report.q_knotscape_at_minus_1.abs(), 15);
    assert!(report.verdict, "failures: {:?}", report.failures);
    println!("criterion 3: PASS - counterexample pipeline succeeds with unequal polynomials");
}

#[test]
fn criterion_4_determinant_identity() {
    let (atlas, moved) = atlas_fixtures();
    let ks = parse_pd(FIXTURE_KNOTSCAPE).unwrap();
    for (name, d) in [("atlas", &atlas), ("atlas+r3", &moved), ("knotscape", &ks)] {
        let det = knot_determinant(d);
        assert_eq!(det, BigInt::from(15), "{name}");
        // |q(-1)| of the all-A graph matches the determinant on every
        // diagram, minimal genus or not.
        let q = quasi_tree_polynomial(&all_a_ribbon_graph(d)).unwrap();
        assert_eq!(q.at_minus_one().magnitude(), det.magnitude(), "{name}");
    }
    // Batch identity over the bundled table.
    let rows = quasitree::cli::parse_table(quasitree::cli::FIXTURE_TABLE).unwrap();
    assert!(!rows.is_empty());
    for row in &rows {
        let d = parse_pd(&row.pd).unwrap();
        let q = quasi_tree_polynomial(&all_a_ribbon_graph(&d)).unwrap();
        let det = knot_determinant(&d);
        assert_eq!(
            q.at_minus_one().magnitude(),
            det.magnitude(),
            "row {}",
            row.name
        );
        // Classical parity fact: knot determinants are odd.
        assert_eq!(&det % 2, BigInt::from(1), "row {}", row.name);
        if let Some(expected) = &row.expected_det {
            assert_eq!(&det, expected, "row {}", row.name);
        }
    }
    println!(
        "criterion 4: PASS - |q(-1)| = det on both fixtures and all {} table rows",
        rows.len()
    );
}

#[test]
fn criterion_5_evaluation_at_one_counts_quasi_trees() {
    let (_, moved) = atlas_fixtures();
    let ks = parse_pd(FIXTURE_KNOTSCAPE).unwrap();
    for d in [&moved, &ks] {
        let map = all_a_ribbon_graph(d);
        let q = quasi_tree_polynomial(&map).unwrap();
        assert_eq!(
            q.total(),
            BigInt::from(enumerate_quasi_trees(&map).unwrap().len())
        );
    }
    let mut rng = Rng::new(0xACCE);
    let mut tested = 0;
    while tested < 100 {
        let edges = 1 + rng.below(6);
        let map = random_connected_map(&mut rng, edges);
        let q = quasi_tree_polynomial(&map).unwrap();
        assert_eq!(
            q.total(),
            BigInt::from(enumerate_quasi_trees(&map).unwrap().len())
        );
        tested += 1;
    }
    println!("criterion 5: PASS - q(1) counts quasi-trees on fixtures and {tested} random maps");
}

#[test]
fn criterion_6_specialization_identity() {
    let mut rng = Rng::new(0x6060);
    let mut tested = 0;
    while tested < 100 {
        let edges = 1 + rng.below(5);
        let map = random_connected_map(&mut rng, edges);
        let two = two_variable_q(&map).unwrap();
        assert_eq!(two.at_y_zero(), quasi_tree_polynomial(&map).unwrap());
        let brt = brt_polynomial(&map).unwrap();
        assert_eq!(brt.at_x_one_sub_z(), two);
        tested += 1;
    }
    let (_, moved) = atlas_fixtures();
    let map = all_a_ribbon_graph(&moved);
    assert_eq!(
        brt_polynomial(&map).unwrap().at_x_one_sub_z(),
        two_variable_q(&map).unwrap()
    );
    println!(
        "criterion 6: PASS - q(t,0) and the formal substitution agree on {tested} random maps"
    );
}

#[test]
fn criterion_7_oracle_equivalence() {
    let mut rng = Rng::new(0x0777);
    let mut maps = 0;
    let mut subsets = 0;
    while maps < 40 {
        let edges = 1 + rng.below(6);
        let map = random_map(&mut rng, edges);
        for bits in 0..(1u64 << edges) {
            let subset = EdgeSet(bits);
            let (f_oracle, k_oracle, _) = oracle_profile(&map, subset);
            let p = map.subgraph_profile(subset).unwrap();
            assert_eq!(p.f, f_oracle);
            assert_eq!(p.k, k_oracle);
            subsets += 1;
        }
        maps += 1;
    }
    println!("criterion 7: PASS - boundary walk matches the orbit oracle on {subsets} subsets of {maps} maps");
}

#[test]
fn criterion_8_structural_invariants() {
    let (atlas, moved) = atlas_fixtures();
    let ks = parse_pd(FIXTURE_KNOTSCAPE).unwrap();
    let trefoil = parse_pd(quasitree::cli::FIXTURE_TREFOIL).unwrap();
    let eight = parse_pd(quasitree::cli::FIXTURE_FIGURE_EIGHT).unwrap();
    for d in [&atlas, &moved, &ks, &trefoil, &eight] {
        let map = all_a_ribbon_graph(d);
        // Euler relation on the built map.
        let p = map.subgraph_profile(map.full_edge_set()).unwrap();
        assert_eq!(
            map.vertex_count() as i64 - map.edge_count() as i64 + p.f as i64,
            2 * p.k as i64 - 2 * p.g as i64
        );
        // Genus of the all-A map equals the Turaev genus of the diagram.
        assert_eq!(map.genus(), turaev_genus(d));
        // n - 2g = f - k on every subset.
        for bits in 0..(1u64 << map.edge_count().min(10)) {
            let p = map.subgraph_profile(EdgeSet(bits)).unwrap();
            assert_eq!(p.n as i64 - 2 * p.g as i64, p.f as i64 - p.k as i64);
        }
    }
    println!("criterion 8: PASS - Euler relation, subset identities and genus cross-check hold");
}
