//! Brute-force reference implementations for certifying the main algorithms
//! on small instances.
//!
//! Nothing here calls the graph or word algorithms it is meant to check; the
//! only shared surface is adjacency lookup and the data types.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};
use crate::word::{Letter, Word};

/// Environment variable read by [`OracleBudget::from_env`]:
/// `max_vertices,max_word_length,max_states`.
pub const BUDGET_ENV: &str = "RAAG_ORACLE_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_vertices: usize,
    pub max_word_length: usize,
    pub max_states: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        Self { max_vertices: 8, max_word_length: 6, max_states: 1_000_000 }
    }
}

impl OracleBudget {
    pub fn new(max_vertices: usize, max_word_length: usize, max_states: usize) -> Result<Self> {
        if max_vertices == 0 || max_word_length == 0 || max_states == 0 {
            return Err(Error::Domain("oracle budgets must be positive".into()));
        }
        Ok(Self { max_vertices, max_word_length, max_states })
    }

    /// Defaults, overridden by `RAAG_ORACLE_BUDGET` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(text) => Self::parse(&text),
            Err(_) => Ok(Self::default()),
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let parts: Vec<usize> = text
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::Domain(format!("bad oracle budget `{text}`: {e}")))?;
        match parts[..] {
            [v, w, s] => Self::new(v, w, s),
            _ => Err(Error::Domain(format!("oracle budget `{text}` needs three comma-separated values"))),
        }
    }

    fn check_vertices(&self, g: &SimplicialGraph) -> Result<()> {
        if g.vertex_count() > self.max_vertices {
            return Err(Error::CapExceeded(format!(
                "{} vertices exceed the oracle limit of {}",
                g.vertex_count(),
                self.max_vertices
            )));
        }
        Ok(())
    }
}

fn connected_after_removing(g: &SimplicialGraph, removed: u64) -> bool {
    let n = g.vertex_count();
    let Some(start) = (0..n).find(|v| removed & (1 << v) == 0) else {
        return true;
    };
    let mut seen = removed | (1 << start);
    let mut stack = vec![start];
    while let Some(u) = stack.pop() {
        for v in 0..n {
            if seen & (1 << v) == 0 && g.adjacent(u, v) {
                seen |= 1 << v;
                stack.push(v);
            }
        }
    }
    seen.count_ones() as usize == n
}

/// Every proper vertex subset that is a clique and disconnects the graph,
/// filtered to the inclusion-minimal ones and sorted by (size, lexicographic).
pub fn brute_clique_separators(g: &SimplicialGraph, budget: &OracleBudget) -> Result<Vec<VertexSet>> {
    budget.check_vertices(g)?;
    let n = g.vertex_count();
    if !connected_after_removing(g, 0) {
        return Err(Error::Domain("oracle expects a connected graph".into()));
    }
    let full: u64 = if n == 0 { 0 } else { (1u64 << n) - 1 };
    let is_clique = |mask: u64| {
        (0..n).all(|u| mask & (1 << u) == 0 || (u + 1..n).all(|v| mask & (1 << v) == 0 || g.adjacent(u, v)))
    };
    let separators: Vec<u64> = (0..full)
        .filter(|&mask| is_clique(mask) && !connected_after_removing(g, mask))
        .collect();
    let minimal: Vec<u64> = separators
        .iter()
        .copied()
        .filter(|&s| !separators.iter().any(|&t| t != s && t & s == t))
        .collect();
    let mut sets: Vec<VertexSet> =
        minimal.iter().map(|&m| (0..n).filter(|v| m & (1 << v) != 0).collect()).collect();
    sets.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
    Ok(sets)
}

fn encode(letters: &[Letter]) -> Vec<u8> {
    letters.iter().map(|l| (l.generator as u8) << 1 | l.inverse as u8).collect()
}

/// Decides `w1 = w2` by breadth-first search from `w1 · w2⁻¹` towards the
/// empty word. A move deletes a letter `x` together with a later `x⁻¹` when
/// every letter strictly between them commutes with `x`; that is a run of
/// commuting swaps followed by one free cancellation. A word is trivial iff
/// some sequence of such moves empties it, so plain commuting swaps need not
/// be explored on their own.
pub fn bfs_equal(w1: &Word<'_>, w2: &Word<'_>, budget: &OracleBudget) -> Result<bool> {
    let g = w1.graph();
    if !(std::ptr::eq(g, w2.graph()) || g == w2.graph()) {
        return Err(Error::Domain("words are over different graphs".into()));
    }
    if w1.len() + w2.len() > 2 * budget.max_word_length {
        return Err(Error::CapExceeded(format!(
            "combined length {} exceeds the oracle limit of {}",
            w1.len() + w2.len(),
            2 * budget.max_word_length
        )));
    }
    if g.vertex_count() > 127 {
        return Err(Error::CapExceeded("too many generators for the BFS encoding".into()));
    }
    let mut start = encode(w1.letters());
    start.extend(encode(w2.letters()).iter().rev().map(|c| c ^ 1));
    let commute = |x: u8, y: u8| x >> 1 != y >> 1 && g.adjacent((x >> 1) as Vertex, (y >> 1) as Vertex);

    let mut seen = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(state) = queue.pop_front() {
        if state.is_empty() {
            return Ok(true);
        }
        for i in 0..state.len() {
            for j in i + 1..state.len() {
                if state[j] == state[i] ^ 1 {
                    let mut next = state.clone();
                    next.remove(j);
                    next.remove(i);
                    if seen.insert(next.clone()) {
                        if seen.len() > budget.max_states {
                            return Err(Error::CapExceeded(format!("BFS exceeded {} states", budget.max_states)));
                        }
                        queue.push_back(next);
                    }
                }
                if !commute(state[i], state[j]) {
                    break;
                }
            }
        }
    }
    Ok(false)
}

/// Every word of length at most `max_len`, paired with a class id: two words
/// share an id iff they are joined by a chain of single moves (swap adjacent
/// commuting letters, delete an adjacent `x x⁻¹`) taken in either direction.
/// Those moves are confluent, so the classes are exactly the group elements
/// and comparing this partition against another decides equality for every
/// pair of listed words at once.
pub fn rewriting_classes(g: &SimplicialGraph, max_len: usize, budget: &OracleBudget) -> Result<Vec<(Vec<Letter>, usize)>> {
    budget.check_vertices(g)?;
    if max_len > budget.max_word_length {
        return Err(Error::CapExceeded(format!(
            "length {max_len} exceeds the oracle word limit of {}",
            budget.max_word_length
        )));
    }
    let alphabet: Vec<Letter> = (0..g.vertex_count())
        .flat_map(|v| [Letter::new(v, false), Letter::new(v, true)])
        .collect();
    let mut words: Vec<Vec<Letter>> = vec![vec![]];
    let mut start = 0;
    for _ in 0..max_len {
        let end = words.len();
        for i in start..end {
            for &l in &alphabet {
                let mut w = words[i].clone();
                w.push(l);
                words.push(w);
            }
        }
        start = end;
        if words.len() > budget.max_states {
            return Err(Error::CapExceeded(format!("more than {} words to classify", budget.max_states)));
        }
    }
    let index: HashMap<&[Letter], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();

    let mut parent: Vec<usize> = (0..words.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (i, w) in words.iter().enumerate() {
        for p in 0..w.len().saturating_sub(1) {
            let (x, y) = (w[p], w[p + 1]);
            let next: Vec<Letter> = if x.inv() == y {
                [&w[..p], &w[p + 2..]].concat()
            } else if x.generator != y.generator && g.adjacent(x.generator, y.generator) {
                let mut s = w.clone();
                s.swap(p, p + 1);
                s
            } else {
                continue;
            };
            let j = index[next.as_slice()];
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            parent[ri.max(rj)] = ri.min(rj);
        }
    }
    let classes = (0..words.len()).map(|i| find(&mut parent, i)).collect::<Vec<_>>();
    Ok(words.into_iter().zip(classes).collect())
}

/// Deletes pairs `x … x⁻¹` whose in-between letters all commute with `x`
/// until none is left. The result is a geodesic for the same element.
pub fn cancel_pairs(g: &SimplicialGraph, letters: &[Letter]) -> Vec<Letter> {
    let mut w = letters.to_vec();
    'restart: loop {
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                let (x, y) = (w[i], w[j]);
                if y.generator == x.generator {
                    if y.inverse != x.inverse {
                        w.remove(j);
                        w.remove(i);
                        continue 'restart;
                    }
                    break;
                }
                if !g.adjacent(x.generator, y.generator) {
                    break;
                }
            }
        }
        return w;
    }
}

/// Projections of a word onto every pair of non-commuting generators
/// (including each generator paired with itself). Two geodesic words are
/// commutation-equivalent iff all these projections agree.
pub fn projection_key(g: &SimplicialGraph, letters: &[Letter]) -> Vec<Vec<u8>> {
    let n = g.vertex_count();
    let mut key = Vec::new();
    for a in 0..n {
        for b in a..n {
            if a == b || !g.adjacent(a, b) {
                key.push(
                    letters
                        .iter()
                        .filter(|l| l.generator == a || l.generator == b)
                        .map(|l| (l.generator as u8) << 1 | l.inverse as u8)
                        .collect(),
                );
            }
        }
    }
    key
}

/// Group equality decided by pair cancellation followed by comparing
/// projections. Serves where the full BFS closure is too large.
pub fn projection_equal(g: &SimplicialGraph, x: &[Letter], y: &[Letter]) -> bool {
    let (x, y) = (cancel_pairs(g, x), cancel_pairs(g, y));
    x.len() == y.len() && projection_key(g, &x) == projection_key(g, &y)
}

/// All group elements of length at most `max_len`, each as the shortlex-least
/// word representing it, in shortlex order.
pub fn ball<'g>(g: &'g SimplicialGraph, max_len: usize, budget: &OracleBudget) -> Result<Vec<Word<'g>>> {
    budget.check_vertices(g)?;
    if max_len > budget.max_word_length {
        return Err(Error::CapExceeded(format!(
            "radius {max_len} exceeds the oracle word limit of {}",
            budget.max_word_length
        )));
    }
    let alphabet: Vec<Letter> = (0..g.vertex_count())
        .flat_map(|v| [Letter::new(v, false), Letter::new(v, true)])
        .collect();
    let mut seen: HashSet<Vec<Vec<u8>>> = HashSet::new();
    let mut out = Vec::new();
    let mut layer: Vec<Vec<Letter>> = vec![vec![]];
    let mut visited = 0usize;
    for len in 0..=max_len {
        let mut next = Vec::new();
        // `layer` holds the freely reduced words of this length in lexicographic order.
        for word in &layer {
            visited += 1;
            if visited > budget.max_states {
                return Err(Error::CapExceeded(format!("ball enumeration exceeded {} words", budget.max_states)));
            }
            if cancel_pairs(g, word).len() == len && seen.insert(projection_key(g, word)) {
                out.push(Word::new(g, word.clone())?);
            }
            if len < max_len {
                for &l in &alphabet {
                    if word.last() != Some(&l.inv()) {
                        let mut w = word.clone();
                        w.push(l);
                        next.push(w);
                    }
                }
            }
        }
        layer = next;
    }
    Ok(out)
}

/// Elements of length at most `max_len` commuting with `w`, as shortlex-least
/// words in shortlex order.
pub fn commuting_words<'g>(
    g: &'g SimplicialGraph,
    w: &Word<'_>,
    max_len: usize,
    budget: &OracleBudget,
) -> Result<Vec<Word<'g>>> {
    let candidates = ball(g, max_len, budget)?;
    Ok(commuting_within(g, w, candidates))
}

/// Filters a precomputed [`ball`] to the elements commuting with `w`.
pub fn commuting_within<'g>(g: &'g SimplicialGraph, w: &Word<'_>, candidates: Vec<Word<'g>>) -> Vec<Word<'g>> {
    candidates
        .into_iter()
        .filter(|u| {
            let uw = [u.letters(), w.letters()].concat();
            let wu = [w.letters(), u.letters()].concat();
            projection_equal(g, &uw, &wu)
        })
        .collect()
}

fn letter_name(i: usize) -> String {
    ((b'a' + i as u8) as char).to_string()
}

/// Every labeled simple graph on the vertices `a, b, …` (n of them).
pub fn exhaustive_graphs(n: usize) -> Result<impl Iterator<Item = SimplicialGraph>> {
    if n > 7 {
        return Err(Error::CapExceeded(format!("exhaustive enumeration supports at most 7 vertices, got {n}")));
    }
    let names: Vec<String> = (0..n).map(letter_name).collect();
    let pairs: Vec<(Vertex, Vertex)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
    Ok((0u64..1 << pairs.len()).map(move |mask| {
        let edges = pairs.iter().enumerate().filter(|(i, _)| mask & (1 << i) != 0).map(|(_, &e)| e);
        SimplicialGraph::from_indices(names.clone(), edges)
    }))
}

/// Connected labeled graphs on `n` vertices.
pub fn connected_graphs(n: usize) -> Result<impl Iterator<Item = SimplicialGraph>> {
    Ok(exhaustive_graphs(n)?.filter(|g| connected_after_removing(g, 0)))
}

/// One representative per isomorphism class of connected graphs on `n` vertices.
pub fn connected_graphs_up_to_isomorphism(n: usize) -> Result<Vec<SimplicialGraph>> {
    if n > 6 {
        return Err(Error::CapExceeded(format!("isomorphism reduction supports at most 6 vertices, got {n}")));
    }
    let mut perms: Vec<Vec<usize>> = vec![vec![]];
    for k in 0..n {
        perms = perms
            .into_iter()
            .flat_map(|p| (0..=k).map(move |pos| {
                let mut q = p.clone();
                q.insert(pos, k);
                q
            }))
            .collect();
    }
    let mut classes: HashMap<Vec<(usize, usize)>, SimplicialGraph> = HashMap::new();
    for g in connected_graphs(n)? {
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| g.adjacent(u, v))
            .collect();
        let canonical = perms
            .iter()
            .map(|p| {
                let mut e: Vec<(usize, usize)> =
                    edges.iter().map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v]))).collect();
                e.sort();
                e
            })
            .min()
            .unwrap_or_default();
        classes.entry(canonical).or_insert(g);
    }
    let mut reps: Vec<SimplicialGraph> = classes.into_values().collect();
    reps.sort_by_key(|g| (g.edge_count(), g.to_json()));
    Ok(reps)
}
