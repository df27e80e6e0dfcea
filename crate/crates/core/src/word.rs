//! Elements of the right-angled Artin group defined by a simplicial graph.
//!
//! Two generators commute exactly when they are adjacent. A [`Word`] is any
//! sequence of generator letters; [`Word::normal_form`] returns the
//! shortlex-least geodesic representative of its element, so equality of
//! elements is equality of normal forms letter by letter.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};

/// Default cap on prefix states visited by [`Word::primitive_root`].
pub const DEFAULT_ROOT_SEARCH_CAP: usize = 100_000;

/// A generator or its inverse. Ordered by generator, positive letter first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter {
    pub generator: Vertex,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: Vertex, inverse: bool) -> Self {
        Self { generator, inverse }
    }

    pub fn pos(generator: Vertex) -> Self {
        Self::new(generator, false)
    }

    pub fn neg(generator: Vertex) -> Self {
        Self::new(generator, true)
    }

    pub fn inv(self) -> Self {
        Self::new(self.generator, !self.inverse)
    }

    fn commutes_with(self, other: Letter, graph: &SimplicialGraph) -> bool {
        self.generator != other.generator && graph.adjacent(self.generator, other.generator)
    }
}

fn same_graph(a: &SimplicialGraph, b: &SimplicialGraph) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// A word over the generators of a graph and their inverses.
#[derive(Clone)]
pub struct Word<'g> {
    graph: &'g SimplicialGraph,
    letters: Vec<Letter>,
}

impl<'g> Word<'g> {
    pub fn new(graph: &'g SimplicialGraph, letters: Vec<Letter>) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.generator >= graph.vertex_count()) {
            return Err(Error::Domain(format!("generator index {} is outside the graph", l.generator)));
        }
        Ok(Self { graph, letters })
    }

    pub(crate) fn from_letters(graph: &'g SimplicialGraph, letters: Vec<Letter>) -> Self {
        Self { graph, letters }
    }

    pub fn identity(graph: &'g SimplicialGraph) -> Self {
        Self { graph, letters: Vec::new() }
    }

    pub fn generator(graph: &'g SimplicialGraph, name: &str) -> Result<Self> {
        Ok(Self { graph, letters: vec![Letter::pos(graph.vertex(name)?)] })
    }

    /// Parses whitespace-separated tokens `v`, `v^-1` or `v^k`.
    pub fn parse(graph: &'g SimplicialGraph, text: &str) -> Result<Self> {
        let mut letters = Vec::new();
        for (line_no, line) in text.split('\n').enumerate() {
            let mut offset = 0;
            for token in line.split_whitespace() {
                let start = offset + line[offset..].find(token).unwrap_or(0);
                offset = start + token.len();
                let column = line[..start].chars().count() + 1;
                let (name, exponent) = match token.split_once('^') {
                    None => (token, 1i64),
                    Some((name, exp)) => {
                        let k = exp.parse::<i64>().map_err(|_| Error::Parse {
                            line: line_no + 1,
                            column,
                            message: format!("bad exponent in `{token}`"),
                        })?;
                        (name, k)
                    }
                };
                let v = graph.vertex(name)?;
                let letter = Letter::new(v, exponent < 0);
                letters.extend(std::iter::repeat_n(letter, exponent.unsigned_abs() as usize));
            }
        }
        Ok(Self { graph, letters })
    }

    pub fn graph(&self) -> &'g SimplicialGraph {
        self.graph
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn check_same_graph(&self, other: &Word<'_>) -> Result<()> {
        if same_graph(self.graph, other.graph) {
            Ok(())
        } else {
            Err(Error::Domain("words are over different graphs".into()))
        }
    }

    /// The concatenation `self · other`.
    pub fn concat(&self, other: &Word<'_>) -> Result<Word<'g>> {
        self.check_same_graph(other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Self { graph: self.graph, letters })
    }

    pub fn inverse(&self) -> Word<'g> {
        Self { graph: self.graph, letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    /// `self` repeated `|k|` times, inverted when `k < 0`.
    pub fn power(&self, k: i64) -> Word<'g> {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let letters = base.letters.repeat(k.unsigned_abs() as usize);
        Self { graph: self.graph, letters }
    }

    pub fn normal_form(&self) -> NormalForm<'g> {
        let reduced = reduce(self.graph, &self.letters);
        NormalForm(Self { graph: self.graph, letters: canonical_order(self.graph, reduced) })
    }

    /// Whether the two words represent the same group element.
    pub fn equal(&self, other: &Word<'_>) -> Result<bool> {
        self.check_same_graph(other)?;
        Ok(self.normal_form().letters == other.normal_form().letters)
    }

    /// Generators of the smallest standard subgroup containing the element.
    pub fn support(&self) -> VertexSet {
        reduce(self.graph, &self.letters).iter().map(|l| l.generator).collect()
    }

    /// Image under the retraction onto the standard subgroup on `s`: letters
    /// outside `s` are deleted.
    pub fn retract(&self, s: &VertexSet) -> Result<Word<'g>> {
        if let Some(v) = s.iter().find(|&v| v >= self.graph.vertex_count()) {
            return Err(Error::Domain(format!("vertex index {v} is outside the graph")));
        }
        let letters = self.letters.iter().copied().filter(|l| s.contains(l.generator)).collect();
        Ok(Self { graph: self.graph, letters })
    }

    /// Conjugates the element to one of minimal support: returns `reduced`
    /// and `conjugator` with `reduced = conjugator⁻¹ · self · conjugator`.
    pub fn cyclically_reduce(&self) -> CyclicReduction<'g> {
        let graph = self.graph;
        let mut letters = reduce(graph, &self.letters);
        let mut conjugator = Vec::new();
        loop {
            let front = movable_to_front(graph, &letters);
            let back = movable_to_back(graph, &letters);
            let pair = front
                .iter()
                .filter_map(|&i| {
                    back.iter()
                        .find(|&&j| letters[j] == letters[i].inv())
                        .map(|&j| (i, j))
                })
                .min_by_key(|&(i, _)| letters[i]);
            let Some((i, j)) = pair else { break };
            conjugator.push(letters[i]);
            // i < j: the inverse cannot sit before a letter movable to the front.
            letters.remove(j);
            letters.remove(i);
        }
        CyclicReduction {
            reduced: NormalForm(Self { graph, letters: canonical_order(graph, letters) }),
            conjugator: Self { graph, letters: conjugator },
        }
    }

    pub fn primitive_root(&self) -> Result<(NormalForm<'g>, u64)> {
        self.primitive_root_with_cap(DEFAULT_ROOT_SEARCH_CAP)
    }

    /// Writes a nonempty cyclically reduced element with directly
    /// indecomposable support as `root^exponent` with the exponent maximal.
    ///
    /// Candidate roots are the downward-closed prefixes of the word's
    /// dependence order; `cap` bounds how many prefix states are visited.
    pub fn primitive_root_with_cap(&self, cap: usize) -> Result<(NormalForm<'g>, u64)> {
        let nf = self.normal_form();
        if nf.is_empty() {
            return Err(Error::Domain("the identity has no primitive root".into()));
        }
        if !nf.is_cyclically_reduced() {
            return Err(Error::Domain("primitive roots need a cyclically reduced element".into()));
        }
        let support = nf.support();
        if self.graph.join_factors_within(&support).len() >= 2 {
            return Err(Error::Domain(format!(
                "support {} is a join; factor the element first",
                self.graph.format_set(&support)
            )));
        }

        let letters = nf.letters();
        let n = letters.len();
        let mut counts = vec![0usize; self.graph.vertex_count()];
        for l in letters {
            counts[l.generator] += 1;
        }
        let common = counts.iter().copied().filter(|&c| c > 0).fold(0, gcd);
        let mut budget = cap;
        for k in (1..=common).rev().filter(|k| common % k == 0) {
            let target: Vec<usize> = counts.iter().map(|c| c / k).collect();
            let mut search = PrefixSearch::new(self.graph, letters, n / k, &target, &mut budget);
            if let Some(prefix) = search.find(|prefix| {
                Word::from_letters(self.graph, prefix.to_vec()).power(k as i64).normal_form().letters() == letters
            })? {
                let root = Word::from_letters(self.graph, prefix).normal_form();
                return Ok((root, k as u64));
            }
        }
        Err(Error::InvariantViolation("no root found, not even the element itself".into()))
    }

    pub fn centralizer_descriptor(&self, mode: CentralizerMode) -> Result<CentralizerDescriptor<'g>> {
        self.centralizer_descriptor_with_cap(mode, DEFAULT_ROOT_SEARCH_CAP)
    }

    /// Describes the centralizer as `t (⟨h₁⟩ × ⋯ × ⟨h_s⟩ × G_Link) t⁻¹`.
    pub fn centralizer_descriptor_with_cap(&self, mode: CentralizerMode, cap: usize) -> Result<CentralizerDescriptor<'g>> {
        let graph = self.graph;
        let CyclicReduction { reduced, conjugator } = self.cyclically_reduce();
        let support = reduced.support();
        let link_part = graph.link(&support)?;
        let factors = graph
            .join_factors_within(&support)
            .into_iter()
            .map(|factor| {
                let projected = reduced.retract(&factor)?;
                let (root, exponent) = projected.primitive_root_with_cap(cap)?;
                Ok(CentralizerFactor { support: factor, root, exponent })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(CentralizerDescriptor { conjugator, reduced, factors, link_part, mode })
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Free-and-commutation reduction: appends letters one at a time, cancelling
/// against the last letter of the same generator when everything after it
/// commutes with the new letter.
fn reduce(graph: &SimplicialGraph, letters: &[Letter]) -> Vec<Letter> {
    let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
    for &x in letters {
        let mut cancel = None;
        for (i, &y) in out.iter().enumerate().rev() {
            if y.generator == x.generator {
                if y.inverse != x.inverse {
                    cancel = Some(i);
                }
                break;
            }
            if !graph.adjacent(y.generator, x.generator) {
                break;
            }
        }
        match cancel {
            Some(i) => {
                out.remove(i);
            }
            None => out.push(x),
        }
    }
    out
}

/// Shortlex-least linearization: repeatedly emit the least letter that
/// commutes past everything before it.
fn canonical_order(graph: &SimplicialGraph, mut rest: Vec<Letter>) -> Vec<Letter> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let pick = movable_to_front(graph, &rest)
            .into_iter()
            .min_by_key(|&i| rest[i])
            .expect("the first letter is always movable");
        out.push(rest.remove(pick));
    }
    out
}

fn movable_to_front(graph: &SimplicialGraph, letters: &[Letter]) -> Vec<usize> {
    (0..letters.len())
        .filter(|&i| letters[..i].iter().all(|&y| y.commutes_with(letters[i], graph)))
        .collect()
}

fn movable_to_back(graph: &SimplicialGraph, letters: &[Letter]) -> Vec<usize> {
    (0..letters.len())
        .filter(|&i| letters[i + 1..].iter().all(|&y| y.commutes_with(letters[i], graph)))
        .collect()
}

/// Enumerates downward-closed subsets of a fixed size in the dependence order
/// of a reduced word, pruned by per-generator letter counts.
struct PrefixSearch<'a> {
    graph: &'a SimplicialGraph,
    letters: &'a [Letter],
    size: usize,
    target: &'a [usize],
    budget: &'a mut usize,
    seen: HashSet<Vec<bool>>,
}

impl<'a> PrefixSearch<'a> {
    fn new(
        graph: &'a SimplicialGraph,
        letters: &'a [Letter],
        size: usize,
        target: &'a [usize],
        budget: &'a mut usize,
    ) -> Self {
        Self { graph, letters, size, target, budget, seen: HashSet::new() }
    }

    fn find(&mut self, mut accept: impl FnMut(&[Letter]) -> bool) -> Result<Option<Vec<Letter>>> {
        let mut chosen = vec![false; self.letters.len()];
        let mut counts = vec![0usize; self.target.len()];
        self.descend(&mut chosen, &mut counts, 0, &mut accept)
    }

    fn descend(
        &mut self,
        chosen: &mut Vec<bool>,
        counts: &mut Vec<usize>,
        taken: usize,
        accept: &mut impl FnMut(&[Letter]) -> bool,
    ) -> Result<Option<Vec<Letter>>> {
        if !self.seen.insert(chosen.clone()) {
            return Ok(None);
        }
        if *self.budget == 0 {
            return Err(Error::CapExceeded("primitive root search visited too many prefixes".into()));
        }
        *self.budget -= 1;
        if taken == self.size {
            let prefix: Vec<Letter> =
                self.letters.iter().zip(chosen.iter()).filter(|(_, &c)| c).map(|(&l, _)| l).collect();
            return Ok(accept(&prefix).then_some(prefix));
        }
        for i in 0..self.letters.len() {
            let l = self.letters[i];
            if chosen[i] || counts[l.generator] == self.target[l.generator] {
                continue;
            }
            let minimal = (0..i).all(|j| chosen[j] || self.letters[j].commutes_with(l, self.graph));
            if !minimal {
                continue;
            }
            chosen[i] = true;
            counts[l.generator] += 1;
            let found = self.descend(chosen, counts, taken + 1, accept)?;
            chosen[i] = false;
            counts[l.generator] -= 1;
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}

impl PartialEq for Word<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_graph(self.graph, other.graph)
    }
}

impl Eq for Word<'_> {}

impl fmt::Debug for Word<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl fmt::Display for Word<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            f.write_str(self.graph.name(l.generator))?;
            if l.inverse {
                f.write_str("^-1")?;
            }
        }
        Ok(())
    }
}

/// The canonical representative of a group element.
#[derive(Clone, PartialEq, Eq)]
pub struct NormalForm<'g>(Word<'g>);

impl<'g> NormalForm<'g> {
    pub fn as_word(&self) -> &Word<'g> {
        &self.0
    }

    pub fn into_word(self) -> Word<'g> {
        self.0
    }

    /// True when no letter movable to the front has its inverse movable to the back.
    pub fn is_cyclically_reduced(&self) -> bool {
        let graph = self.0.graph;
        let letters = &self.0.letters;
        let back = movable_to_back(graph, letters);
        !movable_to_front(graph, letters)
            .iter()
            .any(|&i| back.iter().any(|&j| letters[j] == letters[i].inv()))
    }
}

impl<'g> std::ops::Deref for NormalForm<'g> {
    type Target = Word<'g>;

    fn deref(&self) -> &Word<'g> {
        &self.0
    }
}

impl Hash for NormalForm<'_> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.letters.hash(state);
    }
}

impl PartialOrd for NormalForm<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Shortlex.
impl Ord for NormalForm<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.len(), self.letters()).cmp(&(other.len(), other.letters()))
    }
}

impl fmt::Debug for NormalForm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NormalForm({})", self.0)
    }
}

impl fmt::Display for NormalForm<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone)]
pub struct CyclicReduction<'g> {
    pub reduced: NormalForm<'g>,
    pub conjugator: Word<'g>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CentralizerMode {
    /// Pro-p completions: each factor is exactly the procyclic group of its root.
    ProP,
    /// General pro-C completions: each factor contains the group of its root
    /// and may be a larger projective group.
    ProC,
}

impl CentralizerMode {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::ProP => "pro-p",
            Self::ProC => "pro-C",
        }
    }
}

#[derive(Debug, Clone)]
pub struct CentralizerFactor<'g> {
    pub support: VertexSet,
    pub root: NormalForm<'g>,
    pub exponent: u64,
}

/// `C(g) = t · (H₁ × ⋯ × H_s × G_Link) · t⁻¹` where `g = t · reduced · t⁻¹`.
#[derive(Debug, Clone)]
pub struct CentralizerDescriptor<'g> {
    pub conjugator: Word<'g>,
    pub reduced: NormalForm<'g>,
    pub factors: Vec<CentralizerFactor<'g>>,
    pub link_part: VertexSet,
    pub mode: CentralizerMode,
}

impl<'g> CentralizerDescriptor<'g> {
    pub fn lower_bound(&self) -> bool {
        self.mode == CentralizerMode::ProC
    }

    /// Generators of the described subgroup of the abstract group, conjugated
    /// back by the conjugator: one per root and one per link vertex.
    pub fn generators(&self) -> Vec<Word<'g>> {
        let graph = self.conjugator.graph();
        let t = &self.conjugator;
        let conj = |w: &Word<'g>| Word::from_letters(graph, [t.letters(), w.letters(), t.inverse().letters()].concat());
        self.factors
            .iter()
            .map(|f| conj(f.root.as_word()))
            .chain(self.link_part.iter().map(|v| conj(&Word::from_letters(graph, vec![Letter::pos(v)]))))
            .collect()
    }

    /// Membership of `u` in `t (⟨h₁⟩ × ⋯ × ⟨h_s⟩ × G_Link) t⁻¹`, the abstract
    /// centralizer of the input.
    pub fn contains(&self, u: &Word<'_>) -> Result<bool> {
        self.conjugator.check_same_graph(u)?;
        let graph = self.conjugator.graph();
        let t = &self.conjugator;
        let inner = Word::from_letters(graph, [t.inverse().letters(), u.letters(), t.letters()].concat()).normal_form();
        let mut allowed = self.link_part.clone();
        for f in &self.factors {
            allowed = allowed.union(&f.support);
        }
        if !inner.support().is_subset(&allowed) {
            return Ok(false);
        }
        for f in &self.factors {
            let part = inner.retract(&f.support)?.normal_form();
            let max = (part.len() / f.root.len()) as i64;
            let is_power = (-max..=max).any(|m| f.root.power(m).normal_form() == part);
            if !is_power {
                return Ok(false);
            }
        }
        Ok(true)
    }
}
