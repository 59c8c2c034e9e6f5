//! Frozen values computed by an independent dense eigensolver.

#[path = "common/oracle.rs"]
mod oracle;

use gepgap::coset::{check_left_action_hypotheses, quotient_graph};
use gepgap::graph::{check_morphism_indices, spectrum_contained};
use gepgap::perm::Subgroup;
use gepgap::processes::{
    block_product, extended_graph, gep_graph, interchange_group, last_point_stabilizer, prefix_symmetric,
    random_walk, BaseGraph, GepConfig, RateMode,
};
use gepgap::verify::{verify_aldous, verify_commutative_diagram, DEFAULT_TOL};
use gepgap::WeightedDigraph;

/// Star with center `c` and leaf rates 1, 2 and 0.5.
fn star() -> BaseGraph {
    let names: Vec<String> = ["c", "a", "b", "d"].iter().map(|s| s.to_string()).collect();
    let e = |u: &str, w: &str, r: f64| (u.to_string(), w.to_string(), r);
    BaseGraph::from_edges(names, &[e("c", "a", 1.0), e("c", "b", 2.0), e("c", "d", 0.5)]).unwrap()
}

const STAR_GAP: f64 = 0.6012604589726132;

fn oracle_spectrum<S: gepgap::graph::StateLabel>(g: &WeightedDigraph<S>) -> Vec<f64> {
    oracle::reversible_spectrum(g.len(), g.row_major())
}

#[test]
fn star_aldous_golden() {
    let x = star();
    let rep = verify_aldous(&x, None, DEFAULT_TOL).unwrap();
    assert_eq!(rep.overall_pass(), Some(true));
    assert_eq!(rep.state_count, 24);
    assert!((rep.gap - STAR_GAP).abs() < 1e-10);
    let rw = random_walk(&x, 1.0).unwrap();
    assert!((rw.spectrum().unwrap().gap() - STAR_GAP).abs() < 1e-10);
    let ip = interchange_group(&x).cayley_graph().unwrap();
    assert!((oracle_spectrum(&ip)[1] - STAR_GAP).abs() < 1e-10);
}

#[test]
fn path_spectrum_golden() {
    let g = random_walk(&BaseGraph::path(&[1.0, 1.0]).unwrap(), 1.0).unwrap();
    let s = g.spectrum().unwrap();
    for (a, b) in s.spectrum().iter().zip([0.0, 1.0, 3.0]) {
        assert!((a - b).abs() < 1e-12);
    }
    let f = [1.0, 0.0, -1.0];
    assert!((g.rayleigh_quotient(&f, s.measure()).unwrap() - 1.0).abs() < 1e-12);
}

#[test]
fn ip_k3_contains_rw() {
    let x = BaseGraph::complete(3, 1.0).unwrap();
    let ip = interchange_group(&x).cayley_graph().unwrap();
    let rw = random_walk(&x, 1.0).unwrap();
    let oracle = oracle_spectrum(&ip);
    let ours = ip.spectrum().unwrap();
    for (a, b) in ours.spectrum().iter().zip(&oracle) {
        assert!((a - b).abs() < 1e-10);
    }
    assert!(spectrum_contained(&rw.spectrum().unwrap(), &ours, 1e-8));
    let h2 = Subgroup::on_points(3, &[0, 1]).unwrap();
    let q = quotient_graph(&interchange_group(&x), &Subgroup::trivial(3), &h2).unwrap();
    assert!(check_morphism_indices(&ip, q.graph(), q.projection()).unwrap());
}

#[test]
fn gep_gaps_golden() {
    let two = BaseGraph::complete(2, 1.0).unwrap();
    for l in 1..=3 {
        let g = gep_graph(&GepConfig::uniform(two.clone(), 2, l).unwrap(), RateMode::Normal).unwrap();
        assert!((oracle_spectrum(&g)[1] - 4.0).abs() < 1e-10);
        assert!((g.spectrum().unwrap().gap() - 4.0).abs() < 1e-10);
    }
    let k3 = BaseGraph::complete(3, 1.0).unwrap();
    for l in 1..=5 {
        let g = gep_graph(&GepConfig::uniform(k3.clone(), 2, l).unwrap(), RateMode::Normal).unwrap();
        assert!((oracle_spectrum(&g)[1] - 6.0).abs() < 1e-10);
    }
    let path = BaseGraph::path(&[1.0, 1.0]).unwrap();
    let g = gep_graph(&GepConfig::uniform(path, 2, 1).unwrap(), RateMode::Normal).unwrap();
    assert!((oracle_spectrum(&g)[1] - 2.0).abs() < 1e-10);
}

#[test]
fn diagram_k3_golden() {
    let cfg = GepConfig::uniform(BaseGraph::complete(3, 1.0).unwrap(), 2, 2).unwrap();
    let rep = verify_commutative_diagram(&cfg, DEFAULT_TOL).unwrap();
    assert_eq!(rep.overall_pass(), Some(true), "{:?}", rep.failed_checks().collect::<Vec<_>>());
    assert_eq!(rep.state_count, 720);
    assert!((rep.gap - 6.0).abs() < 1e-9);
}

/// With `H' = H_l` the equivariance condition fails on the smallest
/// instance: `x = id`, `y = (0 2)`, `h = (2 3)` give sums 1 and 0.
#[test]
fn left_action_prefix_variant_fails() {
    let cfg = GepConfig::uniform(BaseGraph::complete(2, 1.0).unwrap(), 2, 2).unwrap();
    let eg = extended_graph(cfg.base(), cfg.k()).unwrap();
    let group = interchange_group(eg.graph());
    let blocks = block_product(&eg).unwrap();
    let trivial = Subgroup::trivial(4);
    let prefix = check_left_action_hypotheses(&group, &trivial, &blocks, &prefix_symmetric(4, 2).unwrap()).unwrap();
    assert!(!prefix.cond_equivariant);
    let last = check_left_action_hypotheses(&group, &trivial, &blocks, &last_point_stabilizer(4).unwrap()).unwrap();
    assert!(last.all_hold());
    assert_eq!(last.min_escape, 2.0);
}

/// One heavy between-block rate and near-zero within-block rates make the
/// second condition fail.
#[test]
fn left_action_broken_instance() {
    let x = BaseGraph::complete(2, 1e6).unwrap();
    let eg = extended_graph(&x, &[2, 2]).unwrap();
    let base = eg.graph();
    let n = eg.sites();
    let mut dense = vec![0.0; n * n];
    for a in 0..n {
        for b in 0..n {
            if a != b {
                dense[a * n + b] = if eg.block_of(a) == eg.block_of(b) { 1e-6 } else { base.rate(a, b) };
            }
        }
    }
    let skewed = BaseGraph::new(base.vertices().to_vec(), dense).unwrap();
    let group = interchange_group(&skewed);
    let blocks = block_product(&eg).unwrap();
    let rep = check_left_action_hypotheses(&group, &Subgroup::trivial(n), &blocks, &last_point_stabilizer(n).unwrap()).unwrap();
    assert!(!rep.cond_large_enough);
}
