//! Acceptance criteria, one line each: `PASS`/`FAIL`, id, title, elapsed time
//! against its limit, and a short detail. Exits non-zero if any fails.
//!
//! Pass criterion ids as arguments to run a subset:
//! `cargo test --test acceptance -- 1 8`.

mod common;

use std::collections::{HashMap, HashSet};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use raag::jsj::{abelian_jsj, JsjReport};
use raag::oracles::{
    ball, bfs_equal, brute_clique_separators, commuting_within, connected_graphs,
    connected_graphs_up_to_isomorphism, rewriting_classes, OracleBudget,
};
use raag::{CentralizerMode, SimplicialGraph, VertexSet, Word};

use common::{random_connected_graph, random_graph, random_word, scramble};

type Outcome = Result<String, String>;

const P4: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/data/p4.dot");

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn run_cli(args: &[&str]) -> Result<Value, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_raag"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot run raag: {e}"))?;
    ensure(out.status.code() == Some(0), || {
        format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr))
    })?;
    serde_json::from_slice(&out.stdout).map_err(|e| format!("stdout is not JSON: {e}"))
}

fn jsj_via_cli(mode: &str) -> Result<Value, String> {
    let v = run_cli(&["jsj", P4, "--mode", mode, "--format", "json"])?;
    ensure(v["valid"] == json!(true), || format!("validation failed: {v}"))?;
    let components = v["components"].as_array().ok_or("missing components")?;
    ensure(components.len() == 1, || format!("expected one component, got {}", components.len()))?;
    Ok(components[0]["decomposition"].clone())
}

fn c1_p4_relative() -> Outcome {
    let expected = json!({
        "nodes": [
            {"id": 0, "group": ["a", "b"], "flexible": true},
            {"id": 1, "group": ["b", "c"], "flexible": true},
            {"id": 2, "group": ["c", "d"], "flexible": true}
        ],
        "edges": [
            {"id": 0, "ends": [0, 1], "group": ["b"], "stable_letter": null},
            {"id": 1, "ends": [1, 2], "group": ["c"], "stable_letter": null}
        ]
    });
    let got = jsj_via_cli("relative")?;
    ensure(got == expected, || format!("got {got}"))?;
    Ok("path {a,b} -{b}- {b,c} -{c}- {c,d}".into())
}

fn c2_p4_abelian() -> Outcome {
    let expected = json!({
        "nodes": [{"id": 0, "group": ["b", "c"], "flexible": true}],
        "edges": [
            {"id": 0, "ends": [0, 0], "group": ["b"], "stable_letter": "a"},
            {"id": 1, "ends": [0, 0], "group": ["c"], "stable_letter": "d"}
        ]
    });
    let got = jsj_via_cli("abelian")?;
    ensure(got == expected, || format!("got {got}"))?;
    Ok("node {b,c}, loops {b} (a) and {c} (d)".into())
}

fn complete_graph(n: usize) -> SimplicialGraph {
    let names = common::names(n);
    let edges: Vec<(String, String)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .map(|(u, v)| (names[u].clone(), names[v].clone()))
        .collect();
    SimplicialGraph::new(&names, &edges).unwrap()
}

fn c3_complete_graphs() -> Outcome {
    for n in 1..=6 {
        let k = complete_graph(n);
        let jsj = abelian_jsj(&k).map_err(|e| format!("K_{n}: {e}"))?;
        let expected = if n == 1 {
            json!({
                "nodes": [{"id": 0, "group": [], "flexible": true}],
                "edges": [{"id": 0, "ends": [0, 0], "group": [], "stable_letter": "a"}]
            })
        } else {
            json!({
                "nodes": [{"id": 0, "group": common::names(n), "flexible": true}],
                "edges": []
            })
        };
        let got: Value = serde_json::from_str(&jsj.to_json()).unwrap();
        ensure(got == expected, || format!("K_{n}: got {got}"))?;
    }
    Ok("K_1 node+loop, K_2..K_6 single flexible node".into())
}

/// Connected components of the complement of `g` restricted to `within`,
/// by plain search on non-adjacency.
fn complement_components(g: &SimplicialGraph, within: &VertexSet) -> Vec<VertexSet> {
    let mut left: Vec<usize> = within.iter().collect();
    let mut out = Vec::new();
    while let Some(start) = left.pop() {
        let mut comp = VertexSet::singleton(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            let (next, rest): (Vec<usize>, Vec<usize>) = left.iter().partition(|&&v| !g.adjacent(u, v));
            left = rest;
            for v in next {
                comp.insert(v);
                stack.push(v);
            }
        }
        out.push(comp);
    }
    out.sort();
    out
}

fn c4_join_criterion() -> Outcome {
    let mut graphs = 0;
    let mut joins = 0;
    for n in 1..=6 {
        for g in connected_graphs(n).unwrap() {
            graphs += 1;
            let all = g.all_vertices();
            let factors = g.join_factors();
            let complement = complement_components(&g, &all);
            let show = || g.to_json();
            ensure((factors.len() >= 2) == (complement.len() >= 2), || format!("join iff mismatch on {}", show()))?;
            ensure(factors == complement, || format!("factors differ from complement components on {}", show()))?;
            let union = factors.iter().fold(VertexSet::new(), |acc, f| acc.union(f));
            ensure(union == all && factors.iter().map(VertexSet::len).sum::<usize>() == n, || {
                format!("factors do not partition the vertices of {}", show())
            })?;
            for (i, f) in factors.iter().enumerate() {
                for h in &factors[i + 1..] {
                    let cross = f.iter().all(|u| h.iter().all(|v| g.adjacent(u, v)));
                    ensure(cross, || format!("factors not completely joined in {}", show()))?;
                }
                ensure(complement_components(&g, f).len() == 1, || format!("factor not finest in {}", show()))?;
            }
            joins += usize::from(factors.len() >= 2);
        }
    }
    Ok(format!("{graphs} labeled connected graphs, {joins} joins"))
}

fn c5_clique_separators() -> Outcome {
    let budget = OracleBudget::from_env().expect("RAAG_ORACLE_BUDGET");
    let mut graphs = 0;
    let mut with_separator = 0;
    let mut compare = |g: &SimplicialGraph| -> Result<(), String> {
        let fast = g.clique_separators().map_err(|e| e.to_string())?;
        let brute = brute_clique_separators(g, &budget).map_err(|e| e.to_string())?;
        ensure(fast == brute, || format!("{}: {fast:?} vs oracle {brute:?}", g.to_json()))?;
        graphs += 1;
        with_separator += usize::from(!fast.is_empty());
        Ok(())
    };
    for n in 1..=6 {
        for g in connected_graphs(n).unwrap() {
            compare(&g)?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x5e9a);
    for i in 0..300 {
        let g = random_connected_graph(&mut rng, 7 + i % 2);
        compare(&g)?;
    }
    Ok(format!("{graphs} graphs ({with_separator} split over a clique)"))
}

fn c6_word_problem() -> Outcome {
    let budget = OracleBudget::from_env().expect("RAAG_ORACLE_BUDGET");
    let mut graphs = 0;
    let mut words = 0;
    let mut pairs: u64 = 0;
    let mut spot = 0;
    let mut rng = StdRng::seed_from_u64(0x6b0f);
    for n in 1..=4 {
        for g in connected_graphs(n).unwrap() {
            graphs += 1;
            let classes = rewriting_classes(&g, 4, &budget).map_err(|e| e.to_string())?;
            // Equal partitions means every pair is classified the same way.
            // Each normal form must land in a single oracle class; with equal
            // class counts the two partitions coincide, which settles every pair.
            let mut by_engine: HashMap<Vec<raag::Letter>, usize> = HashMap::new();
            let mut members: HashMap<usize, Vec<usize>> = HashMap::new();
            for (i, (letters, class)) in classes.iter().enumerate() {
                let nf = Word::new(&g, letters.clone()).unwrap().normal_form().letters().to_vec();
                let first = *by_engine.entry(nf).or_insert(*class);
                ensure(first == *class, || {
                    let w = Word::new(&g, letters.clone()).unwrap();
                    format!("{}: word `{w}` classified differently", g.to_json())
                })?;
                members.entry(*class).or_default().push(i);
            }
            ensure(members.len() == by_engine.len(), || format!("{}: class counts differ", g.to_json()))?;
            words += classes.len();
            pairs += (classes.len() as u64).pow(2);

            // Direct BFS on a sample of the same pairs, half of them equal.
            for _ in 0..200 {
                let (x, cx) = &classes[rng.gen_range(0..classes.len())];
                let (y, cy) = if rng.gen_bool(0.5) {
                    let same = &members[cx];
                    &classes[same[rng.gen_range(0..same.len())]]
                } else {
                    &classes[rng.gen_range(0..classes.len())]
                };
                let (x, y) = (Word::new(&g, x.clone()).unwrap(), Word::new(&g, y.clone()).unwrap());
                let bfs = bfs_equal(&x, &y, &budget).map_err(|e| e.to_string())?;
                ensure(bfs == (cx == cy), || format!("BFS disagrees with its closure on `{x}` vs `{y}`"))?;
                ensure(bfs == x.equal(&y).unwrap(), || format!("engine disagrees with BFS on `{x}` vs `{y}`"))?;
                spot += 1;
            }
        }
    }

    let mut equal = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(2..=6);
        let g = random_connected_graph(&mut rng, n);
        let (lx, ly) = (rng.gen_range(5..=6), rng.gen_range(5..=6));
        let x = random_word(&mut rng, &g, lx);
        let y = if rng.gen_bool(0.5) { scramble(&mut rng, &x, 12, 6) } else { random_word(&mut rng, &g, ly) };
        let bfs = bfs_equal(&x, &y, &budget).map_err(|e| e.to_string())?;
        let engine = x.equal(&y).unwrap();
        ensure(bfs == engine, || format!("{}: `{x}` vs `{y}`: engine {engine}, BFS {bfs}", g.to_json()))?;
        equal += usize::from(bfs);
    }
    Ok(format!(
        "{graphs} graphs, {words} words ({pairs} pairs) partition-exact, {spot} direct BFS spot checks, 10000 random pairs ({equal} equal)"
    ))
}

fn c7_isolation() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x7150);
    let mut nontrivial = 0;
    for _ in 0..5_000 {
        let n = rng.gen_range(1..=6);
        let p = rng.gen_range(0.0..1.0);
        let g = random_graph(&mut rng, n, p);
        let len = rng.gen_range(0..=6);
        let w = random_word(&mut rng, &g, len);
        let k = rng.gen_range(1..=5);
        let (s, sk) = (w.support(), w.power(k).support());
        ensure(s == sk, || format!("{}: supp({w}) = {s:?} but supp(w^{k}) = {sk:?}", g.to_json()))?;
        nontrivial += usize::from(!s.is_empty());
    }
    Ok(format!("5000 instances ({nontrivial} with nonempty support)"))
}

fn c8_centralizer_ball() -> Outcome {
    const RADIUS: usize = 5;
    const RANDOM_INPUTS: usize = 200;
    let budget = OracleBudget::from_env().expect("RAAG_ORACLE_BUDGET");
    let graphs: Vec<SimplicialGraph> =
        (1..=5).flat_map(|n| connected_graphs_up_to_isomorphism(n).unwrap()).collect();

    // Every graph gets the identity, each generator, and its own random inputs.
    let mut rng = StdRng::seed_from_u64(0x8ce7);
    let inputs: Vec<Vec<Word<'_>>> = graphs
        .iter()
        .map(|g| {
            let mut words: Vec<Word<'_>> = std::iter::once(Word::identity(g))
                .chain(g.names().iter().map(|v| Word::generator(g, v).unwrap()))
                .collect();
            for _ in 0..RANDOM_INPUTS {
                let len = rng.gen_range(1..=4);
                words.push(random_word(&mut rng, g, len));
            }
            words
        })
        .collect();

    let mut checked = 0;
    let mut members = 0;
    for (g, words) in graphs.iter().zip(&inputs) {
        let candidates = ball(g, RADIUS, &budget).map_err(|e| e.to_string())?;
        for w in words {
            let oracle: HashSet<Vec<raag::Letter>> = commuting_within(g, w, candidates.clone())
                .into_iter()
                .map(|u| u.letters().to_vec())
                .collect();
            let d = w.centralizer_descriptor(CentralizerMode::ProP).map_err(|e| format!("`{w}`: {e}"))?;
            let mut engine = HashSet::new();
            for u in &candidates {
                if d.contains(u).map_err(|e| e.to_string())? {
                    engine.insert(u.letters().to_vec());
                }
            }
            ensure(engine == oracle, || {
                let show = |s: &HashSet<Vec<raag::Letter>>| {
                    s.iter().take(3).map(|l| Word::new(g, l.clone()).unwrap().to_string()).collect::<Vec<_>>()
                };
                format!(
                    "{}: `{w}`: descriptor-only {:?}, oracle-only {:?}",
                    g.to_json(),
                    show(&engine.difference(&oracle).cloned().collect()),
                    show(&oracle.difference(&engine).cloned().collect())
                )
            })?;
            checked += 1;
            members += oracle.len();
        }
    }
    Ok(format!(
        "{} graphs up to isomorphism, {checked} inputs ({RANDOM_INPUTS} random per graph), {members} ball members matched",
        graphs.len()
    ))
}

fn c9_jsj_validation() -> Outcome {
    let mut graphs = 0;
    let mut separators = 0;
    let mut check = |g: &SimplicialGraph| -> Result<(), String> {
        let report = JsjReport::build(g).map_err(|e| format!("{}: {e}", g.to_json()))?;
        if let Some(c) = report.validation.iter().find(|c| !c.passed) {
            return Err(format!("{}: {} failed: {}", g.to_json(), c.name, c.detail));
        }
        graphs += 1;
        separators += report.separators_used.len();
        Ok(())
    };
    for n in 1..=6 {
        for g in connected_graphs(n).unwrap() {
            check(&g)?;
        }
    }
    let mut rng = StdRng::seed_from_u64(0x95a1);
    for i in 0..200 {
        let g = random_connected_graph(&mut rng, 7 + i % 3);
        check(&g)?;
    }
    Ok(format!("{graphs} graphs, {separators} recursion separators all minimal and cascading"))
}

struct Criterion {
    id: u32,
    title: &'static str,
    limit: Duration,
    run: fn() -> Outcome,
}

fn main() {
    let criteria = [
        Criterion { id: 1, title: "P4 relative JSJ", limit: Duration::from_secs(1), run: c1_p4_relative },
        Criterion { id: 2, title: "P4 abelian JSJ", limit: Duration::from_secs(1), run: c2_p4_abelian },
        Criterion { id: 3, title: "abelian JSJ of complete graphs", limit: Duration::from_secs(1), run: c3_complete_graphs },
        Criterion { id: 4, title: "join criterion, exhaustive <= 6", limit: Duration::from_secs(60), run: c4_join_criterion },
        Criterion { id: 5, title: "clique separators vs brute force", limit: Duration::from_secs(120), run: c5_clique_separators },
        Criterion { id: 6, title: "word engine vs BFS oracle", limit: Duration::from_secs(120), run: c6_word_problem },
        Criterion { id: 7, title: "isolation of supports under powers", limit: Duration::from_secs(60), run: c7_isolation },
        Criterion { id: 8, title: "centralizer ball of radius 5", limit: Duration::from_secs(300), run: c8_centralizer_ball },
        Criterion { id: 9, title: "JSJ validation suite", limit: Duration::from_secs(300), run: c9_jsj_validation },
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();

    let mut failed = 0;
    for c in criteria.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        let start = Instant::now();
        let outcome = (c.run)();
        let elapsed = start.elapsed();
        let (passed, detail) = match outcome {
            Ok(_) if elapsed > c.limit => (false, format!("too slow, limit {:.0?}", c.limit)),
            Ok(d) => (true, d),
            Err(e) => (false, e),
        };
        failed += usize::from(!passed);
        println!(
            "{} criterion {}: {} [{:.2}s / {}s] {}",
            if passed { "PASS" } else { "FAIL" },
            c.id,
            c.title,
            elapsed.as_secs_f64(),
            c.limit.as_secs(),
            detail
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
