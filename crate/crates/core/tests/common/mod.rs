#![allow(dead_code)]

use rand::Rng;
use raag::{Letter, SimplicialGraph, Word};

pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Graph on `a, b, …` containing each edge independently with probability `p`.
pub fn random_graph(rng: &mut impl Rng, n: usize, p: f64) -> SimplicialGraph {
    let names = names(n);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((names[u].clone(), names[v].clone()));
            }
        }
    }
    SimplicialGraph::new(&names, &edges).unwrap()
}

/// Connected graph with a random edge density, by rejection.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize) -> SimplicialGraph {
    loop {
        let p = rng.gen_range(0.25..0.85);
        let g = random_graph(rng, n, p);
        if g.is_connected() {
            return g;
        }
    }
}

pub fn random_letter(rng: &mut impl Rng, g: &SimplicialGraph) -> Letter {
    Letter::new(rng.gen_range(0..g.vertex_count()), rng.gen_bool(0.5))
}

pub fn random_word<'g>(rng: &mut impl Rng, g: &'g SimplicialGraph, len: usize) -> Word<'g> {
    let letters = (0..len).map(|_| random_letter(rng, g)).collect();
    Word::new(g, letters).unwrap()
}

/// Applies random group-preserving moves: commuting swaps, insertions and
/// deletions of `x x⁻¹`. The result never exceeds `max_len` letters.
pub fn scramble<'g>(rng: &mut impl Rng, w: &Word<'g>, moves: usize, max_len: usize) -> Word<'g> {
    let g = w.graph();
    let mut letters = w.letters().to_vec();
    for _ in 0..moves {
        match rng.gen_range(0..3) {
            0 if letters.len() >= 2 => {
                let i = rng.gen_range(0..letters.len() - 1);
                let (x, y) = (letters[i], letters[i + 1]);
                if x.generator != y.generator && g.adjacent(x.generator, y.generator) {
                    letters.swap(i, i + 1);
                }
            }
            1 if letters.len() + 2 <= max_len => {
                let i = rng.gen_range(0..=letters.len());
                let x = random_letter(rng, g);
                letters.splice(i..i, [x, x.inv()]);
            }
            2 if letters.len() >= 2 => {
                let i = rng.gen_range(0..letters.len() - 1);
                if letters[i].inv() == letters[i + 1] {
                    letters.drain(i..i + 2);
                }
            }
            _ => {}
        }
    }
    Word::new(g, letters).unwrap()
}
