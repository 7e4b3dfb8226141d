mod common;

use common::{
    connected_graphs, eigenvalues_below, exact_ineq3_rhs, one_based, random_nonnegative,
    random_partition, shifted_determinant,
};
use interlace::audit::{
    audit_corollary1, audit_finck_grohmann, audit_theorem1, audit_theorem2, audit_theorem3,
    audit_theorem4, audit_theorem5, BoundId, TheoremId,
};
use interlace::graph::join;
use interlace::partition::{classify_graph_partition, enumerate_partitions, GraphPartitionClass};
use interlace::search::find_equitable_partitions;
use interlace::{DenseMatrix, Graph, Partition, TolerancePolicy};
use num_rational::Ratio;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn policy() -> TolerancePolicy {
    TolerancePolicy::default()
}

fn proper_partitions(n: usize) -> Vec<Partition> {
    enumerate_partitions(n, None, false)
        .unwrap()
        .filter(|p| p.len() > 1 && p.len() < n)
        .collect()
}

#[test]
fn bound_equalities_force_structure_on_documented_examples() {
    let c4 = Graph::cycle(4).unwrap();
    let v = audit_theorem1(&c4, &one_based(4, &[&[1, 3], &[2, 4]]), &policy()).unwrap();
    assert!(v.hypotheses_hold());
    assert_eq!(v.conclusion_holds(), Some(true));
    assert!(v.conclusion_check("ineq3 => G regular").unwrap().holds);
    assert!(v.conclusion_check("ineq3 => equitable").unwrap().holds);

    let v = audit_theorem1(
        &Graph::complete(3),
        &one_based(3, &[&[1], &[2, 3]]),
        &policy(),
    )
    .unwrap();
    assert!(v.conclusion_check("ineq4 => equitable").unwrap().holds);

    let two_k2 = Graph::from_one_based(4, &[(1, 2), (3, 4)]).unwrap();
    let v = audit_theorem1(&two_k2, &one_based(4, &[&[1, 2], &[3, 4]]), &policy()).unwrap();
    assert!(v.conclusion_check("lapl1 => semiequitable").unwrap().holds);
    assert_eq!(v.conclusion_holds(), Some(true));
}

/// Equality in ineq3 does not force regularity: this graph has degrees
/// (4,4,4,4,2,2) yet attains it with two blocks.
#[test]
fn ineq3_equality_on_an_irregular_graph() {
    let g = Graph::from_one_based(
        6,
        &[
            (1, 2),
            (1, 3),
            (1, 4),
            (1, 6),
            (2, 3),
            (2, 4),
            (2, 6),
            (3, 4),
            (3, 5),
            (4, 5),
        ],
    )
    .unwrap();
    let p = one_based(6, &[&[1, 2, 5], &[3, 4, 6]]);
    assert!(!g.is_regular());
    assert_eq!(
        classify_graph_partition(&g, &p).unwrap(),
        GraphPartitionClass::Neither
    );

    // exact: rhs = 2/3 + 2/3 − 20/6 = −2, and −2 is an eigenvalue with an
    // integer eigenvector
    let rhs = exact_ineq3_rhs(&g, &p);
    assert_eq!(rhs, Ratio::from_integer(-2));
    assert_eq!(
        shifted_determinant(&g.adjacency_matrix(), rhs),
        Ratio::from_integer(0)
    );
    let x = [1.0, 1.0, -1.0, -1.0, 1.0, -1.0];
    let ax = g.adjacency_matrix().mul_vec(&x).unwrap();
    assert_eq!(ax, x.iter().map(|t| -2.0 * t).collect::<Vec<_>>());
    // by inertia, exactly one eigenvalue lies below −1.999 and none below
    // −2.001, so −2 is the smallest
    let a = g.adjacency_matrix();
    assert_eq!(eigenvalues_below(&a, Ratio::new(-2001, 1000)), Some(0));
    assert_eq!(eigenvalues_below(&a, Ratio::new(-1999, 1000)), Some(1));

    let v = audit_theorem1(&g, &p, &policy()).unwrap();
    assert!(v.hypotheses_hold());
    assert!(v.is_counterexample());
    assert!(!v.conclusion_check("ineq3 => G regular").unwrap().holds);
    assert!(!v.conclusion_check("ineq3 => equitable").unwrap().holds);
    let bounds = v.witness["bounds"].as_array().unwrap();
    let ineq3 = bounds
        .iter()
        .find(|b| b["id"] == BoundId::Ineq3.as_str())
        .unwrap();
    assert_eq!(ineq3["equality"], true);
}

#[test]
fn other_bound_equalities_hold_exhaustively_up_to_five_vertices() {
    for n in 3..=5 {
        let partitions = proper_partitions(n);
        for g in connected_graphs(n) {
            for p in &partitions {
                let v = audit_theorem1(&g, p, &policy()).unwrap();
                for c in &v.conclusion.checks {
                    assert!(c.holds, "{} fails on {:?} with {p}", c.name, g.edges());
                }
            }
        }
    }
}

#[test]
fn blow_up_structure_on_documented_examples() {
    let k23 = Graph::complete_bipartite(2, 3);
    let v = audit_theorem2(&k23, &one_based(5, &[&[1, 2], &[3, 4, 5]]), &policy()).unwrap();
    assert!(v.hypotheses_hold());
    assert_eq!(v.conclusion_holds(), Some(true));
    let six = 6f64.sqrt();
    let spectrum: Vec<f64> = v.witness["nonzero_spectrum_matrix"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_f64().unwrap())
        .collect();
    assert_eq!(spectrum.len(), 2);
    assert!((spectrum[0] - six).abs() < 1e-12 && (spectrum[1] + six).abs() < 1e-12);
    assert_eq!(v.witness_f64("trace_square_matrix"), Some(12.0));
    assert_eq!(v.witness_f64("trace_square_quotient"), Some(12.0));

    let v = audit_theorem2(
        &Graph::cycle(4).unwrap(),
        &one_based(4, &[&[1, 2], &[3, 4]]),
        &policy(),
    )
    .unwrap();
    assert!(!v.hypotheses_hold());
    assert_eq!(v.conclusion_holds(), None);
}

#[test]
fn equitable_partitions_keep_the_perron_root() {
    for n in 2..=5 {
        for g in connected_graphs(n) {
            for p in find_equitable_partitions(&g, n, false).unwrap() {
                let v = audit_theorem3(&g.adjacency_matrix(), &p, &policy()).unwrap();
                assert!(v.hypotheses_hold(), "{:?} {p}", g.edges());
                assert_eq!(v.conclusion_holds(), Some(true), "{:?} {p}", g.edges());
            }
        }
    }
}

#[test]
fn perron_audit_rejects_unmet_hypotheses() {
    let two_k2 = Graph::from_one_based(4, &[(1, 2), (3, 4)]).unwrap();
    let v = audit_theorem3(
        &two_k2.adjacency_matrix(),
        &one_based(4, &[&[1, 3], &[2, 4]]),
        &policy(),
    )
    .unwrap();
    assert!(!v.hypotheses_hold());
    assert_eq!(v.conclusion_holds(), None);
    let signed = DenseMatrix::from_rows(&[vec![0.0, -1.0], vec![-1.0, 0.0]]).unwrap();
    let v = audit_theorem3(&signed, &Partition::singletons(2), &policy()).unwrap();
    assert!(!v.hypotheses_hold());
}

#[test]
fn diagonal_block_regularity_decides_perron_equality_exhaustively() {
    let mut evaluated = 0;
    for n in 2..=5 {
        let partitions: Vec<Partition> = enumerate_partitions(n, None, false).unwrap().collect();
        for g in connected_graphs(n) {
            let a = g.adjacency_matrix();
            for p in &partitions {
                let v = audit_theorem5(&a, p, &policy()).unwrap();
                if v.hypotheses_hold() {
                    evaluated += 1;
                    assert_eq!(v.conclusion_holds(), Some(true), "{:?} {p}", g.edges());
                }
            }
        }
    }
    assert!(evaluated > 100);
}

#[test]
fn semiequitable_partitions_of_connected_graphs_exhaustively() {
    let mut evaluated = 0;
    for n in 2..=5 {
        let partitions: Vec<Partition> = enumerate_partitions(n, None, false).unwrap().collect();
        for g in connected_graphs(n) {
            for p in &partitions {
                let v = audit_corollary1(&g, p, &policy()).unwrap();
                if v.hypotheses_hold() {
                    evaluated += 1;
                    assert_eq!(v.conclusion_holds(), Some(true), "{:?} {p}", g.edges());
                }
            }
        }
    }
    assert!(evaluated > 100);
}

#[test]
fn paw_with_center_split_is_semiequitable_without_equality() {
    let paw = Graph::from_one_based(4, &[(1, 2), (1, 3), (1, 4), (2, 3)]).unwrap();
    let p = one_based(4, &[&[1], &[2, 3, 4]]);
    assert_eq!(
        classify_graph_partition(&paw, &p).unwrap(),
        GraphPartitionClass::SemiequitableOnly
    );
    let v = audit_corollary1(&paw, &p, &policy()).unwrap();
    assert!(v.hypotheses_hold());
    assert_eq!(v.conclusion_holds(), Some(true));
    assert!(v.witness_f64("gap").unwrap() > 1e-3);
}

/// Constant blocks make every product partition equitable.
fn block_constant(rng: &mut ChaCha8Rng, rows: &Partition, cols: &Partition) -> DenseMatrix {
    let values: Vec<Vec<f64>> = (0..rows.len())
        .map(|_| (0..cols.len()).map(|_| rng.gen_range(0.1..3.0)).collect())
        .collect();
    let (rl, cl) = (rows.labels(), cols.labels());
    let data = (0..rows.ground() * cols.ground())
        .map(|ij| values[rl[ij / cols.ground()]][cl[ij % cols.ground()]])
        .collect();
    DenseMatrix::new(rows.ground(), cols.ground(), data).unwrap()
}

#[test]
fn singular_value_equality_for_equitable_products() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let (m, n) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let k = rng.gen_range(1..=m);
        let rows = random_partition(&mut rng, m, k);
        let k = rng.gen_range(1..=n);
        let cols = random_partition(&mut rng, n, k);
        let a = block_constant(&mut rng, &rows, &cols);
        let v = audit_theorem4(&a, &rows, &cols, &policy()).unwrap();
        assert!(v.hypotheses_hold());
        assert_eq!(v.conclusion_holds(), Some(true));
    }
    for _ in 0..200 {
        let (m, n) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let a = random_nonnegative(&mut rng, m, n);
        let k = rng.gen_range(1..=m);
        let rows = random_partition(&mut rng, m, k);
        let k = rng.gen_range(1..=n);
        let cols = random_partition(&mut rng, n, k);
        let v = audit_theorem4(&a, &rows, &cols, &policy()).unwrap();
        assert!(v.conclusion_check("sigma1 inequality").unwrap().holds);
        assert!(!v.is_counterexample());
    }
}

#[test]
fn join_audit_matches_closed_form() {
    let v =
        audit_finck_grohmann(&Graph::cycle(4).unwrap(), &Graph::complete(2), &policy()).unwrap();
    assert_eq!(v.theorem, TheoremId::FinckGrohmann);
    assert_eq!(v.conclusion_holds(), Some(true));
    let v = audit_finck_grohmann(&Graph::path(3), &Graph::complete(2), &policy()).unwrap();
    assert!(!v.hypotheses_hold());
    let (j, p) = join(&[Graph::hypercube(3), Graph::empty(2)]).unwrap();
    assert_eq!(j.order(), 10);
    assert_eq!(p.sizes(), vec![8, 2]);
}
