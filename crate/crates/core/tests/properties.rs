mod common;

use proptest::prelude::*;

use raag::jsj::{self, hnn_split, star_amalgam_split, validate};
use raag::oracles::{bfs_equal, projection_equal, OracleBudget};
use raag::{CentralizerMode, Letter, SimplicialGraph, VertexSet, Word};

fn graph_from_mask(n: usize, mask: u32) -> SimplicialGraph {
    let names = common::names(n);
    let mut edges = Vec::new();
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask & (1 << bit) != 0 {
                edges.push((names[u].clone(), names[v].clone()));
            }
            bit += 1;
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

fn any_graph() -> impl Strategy<Value = SimplicialGraph> {
    (1usize..=6, any::<u32>()).prop_map(|(n, mask)| graph_from_mask(n, mask))
}

fn connected_graph() -> impl Strategy<Value = SimplicialGraph> {
    (1usize..=7, any::<u32>()).prop_filter_map("disconnected", |(n, mask)| {
        let g = graph_from_mask(n, mask);
        g.is_connected().then_some(g)
    })
}

/// Raw letters as (generator seed, inverse); reduced modulo the vertex count.
fn raw_word(max: usize) -> impl Strategy<Value = Vec<(usize, bool)>> {
    prop::collection::vec((0usize..64, any::<bool>()), 0..=max)
}

fn word<'g>(g: &'g SimplicialGraph, raw: &[(usize, bool)]) -> Word<'g> {
    let n = g.vertex_count();
    Word::new(g, raw.iter().map(|&(v, inv)| Letter::new(v % n, inv)).collect()).unwrap()
}

fn same_element(x: &Word<'_>, y: &Word<'_>) -> bool {
    projection_equal(x.graph(), x.letters(), y.letters())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_is_idempotent_geodesic_and_sound(g in any_graph(), raw in raw_word(10)) {
        let w = word(&g, &raw);
        let nf = w.normal_form();
        prop_assert!(nf.len() <= w.len());
        prop_assert_eq!(nf.normal_form().letters().to_vec(), nf.letters().to_vec());
        prop_assert!(same_element(&w, &nf));
        prop_assert_eq!(nf.len(), raag::oracles::cancel_pairs(&g, w.letters()).len());
    }

    #[test]
    fn equality_agrees_with_bfs(g in any_graph(), a in raw_word(6), b in raw_word(6)) {
        let (x, y) = (word(&g, &a), word(&g, &b));
        prop_assert_eq!(x.equal(&y).unwrap(), bfs_equal(&x, &y, &OracleBudget::default()).unwrap());
    }

    #[test]
    fn inverse_cancels(g in any_graph(), raw in raw_word(10)) {
        let w = word(&g, &raw);
        prop_assert!(w.concat(&w.inverse()).unwrap().normal_form().is_empty());
    }

    #[test]
    fn support_is_preserved_by_powers_and_inversion(g in any_graph(), raw in raw_word(8), k in 1i64..=6) {
        let w = word(&g, &raw);
        prop_assert_eq!(w.power(k).support(), w.support());
        prop_assert_eq!(w.power(-k).support(), w.support());
    }

    #[test]
    fn retraction_is_a_homomorphism(g in any_graph(), a in raw_word(6), b in raw_word(6), mask in any::<u8>()) {
        let (x, y) = (word(&g, &a), word(&g, &b));
        let s: VertexSet = (0..g.vertex_count()).filter(|v| mask & (1 << v) != 0).collect();
        let whole = x.concat(&y).unwrap().retract(&s).unwrap();
        let parts = x.retract(&s).unwrap().concat(&y.retract(&s).unwrap()).unwrap();
        prop_assert!(whole.equal(&parts).unwrap());
        prop_assert!(whole.support().is_subset(&s));
    }

    #[test]
    fn cyclic_reduction_conjugates(g in any_graph(), raw in raw_word(10)) {
        let w = word(&g, &raw);
        let cr = w.cyclically_reduce();
        let back = cr.conjugator.inverse().concat(&w).unwrap().concat(&cr.conjugator).unwrap();
        prop_assert!(same_element(&back, &cr.reduced));
        prop_assert!(cr.reduced.is_cyclically_reduced());
        prop_assert!(cr.reduced.len() <= w.normal_form().len());
    }

    #[test]
    fn centralizer_generators_commute(g in any_graph(), raw in raw_word(6)) {
        let w = word(&g, &raw);
        let d = w.centralizer_descriptor(CentralizerMode::ProP).unwrap();
        for h in d.generators() {
            let hw = h.concat(&w).unwrap();
            let wh = w.concat(&h).unwrap();
            prop_assert!(same_element(&hw, &wh), "{} does not commute with {}", h, w);
            prop_assert!(d.contains(&h).unwrap());
        }
        prop_assert!(d.contains(&w).unwrap());
        for f in &d.factors {
            let part = d.reduced.retract(&f.support).unwrap();
            prop_assert!(f.root.power(f.exponent as i64).equal(&part).unwrap());
        }
    }

    #[test]
    fn links_and_stars_are_consistent(g in any_graph(), mask in any::<u8>()) {
        let s: VertexSet = (0..g.vertex_count()).filter(|v| mask & (1 << v) != 0).collect();
        let link = g.link(&s).unwrap();
        let expected = s.iter().fold(g.all_vertices(), |acc, v| {
            acc.intersection(&g.link(&VertexSet::singleton(v)).unwrap())
        });
        prop_assert_eq!(&link, &expected);
        prop_assert!(link.is_disjoint(&s));
        for v in g.all_vertices().iter() {
            let mut star = g.link(&VertexSet::singleton(v)).unwrap();
            star.insert(v);
            prop_assert_eq!(g.star(v).unwrap(), star);
        }
    }

    #[test]
    fn clique_separators_are_minimal_disconnecting_cliques(g in connected_graph()) {
        let seps = g.clique_separators().unwrap();
        for k in &seps {
            prop_assert!(g.is_clique(k).unwrap());
            prop_assert!(g.disconnects(k));
            for v in k.iter() {
                let mut smaller = k.clone();
                smaller.remove(v);
                prop_assert!(!g.disconnects(&smaller));
            }
        }
        prop_assert_eq!(seps.is_empty(), g.minimum_clique_separator().unwrap().is_none());
    }

    #[test]
    fn jsj_decompositions_validate(g in connected_graph()) {
        let report = jsj::JsjReport::build(&g).unwrap();
        for c in &report.validation {
            prop_assert!(c.passed, "{}: {}", c.name, c.detail);
        }
        for v in report.hanging.iter() {
            prop_assert!(report.abelian.nodes.iter().all(|n| !n.group.contains(v)));
        }
    }

    #[test]
    fn one_vertex_splittings_validate(g in connected_graph(), seed in any::<usize>()) {
        prop_assume!(g.vertex_count() >= 2);
        let v = seed % g.vertex_count();
        let hnn = hnn_split(&g, v).unwrap();
        prop_assert_eq!(hnn.nodes.len(), 1);
        prop_assert_eq!(hnn.loops().count(), 1);
        let amalgam = star_amalgam_split(&g, v).unwrap();
        prop_assert_eq!(amalgam.nodes.len(), 2);
        let checks = validate(&amalgam);
        let inclusions = checks.iter().find(|c| c.name == "inclusions").unwrap();
        prop_assert!(inclusions.passed, "{}", inclusions.detail);
    }

    #[test]
    fn serializations_round_trip(g in any_graph()) {
        prop_assert_eq!(SimplicialGraph::parse(&g.to_json()).unwrap(), g.clone());
        prop_assert_eq!(SimplicialGraph::parse(&g.to_dot()).unwrap(), g);
    }
}
