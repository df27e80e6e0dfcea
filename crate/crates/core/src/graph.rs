//! Finite simplicial graphs and the pure graph computations behind the
//! decompositions: links, stars, components, join factors, clique separators
//! and hanging vertices.
//!
//! Vertices are stored sorted by name, so vertex indices follow the canonical
//! order and every tie-break reduces to comparing index sequences.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Index of a vertex in its graph's canonical order.
pub type Vertex = usize;

/// A subset of the vertices of a graph, kept in canonical order.
///
/// The derived ordering is lexicographic on the sorted index sequence, which
/// matches the lexicographic order on sorted vertex names.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexSet(BTreeSet<Vertex>);

impl VertexSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(v: Vertex) -> Self {
        Self(BTreeSet::from([v]))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.0.contains(&v)
    }

    pub fn insert(&mut self, v: Vertex) -> bool {
        self.0.insert(v)
    }

    pub fn remove(&mut self, v: Vertex) -> bool {
        self.0.remove(&v)
    }

    pub fn iter(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().copied()
    }

    pub fn first(&self) -> Option<Vertex> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        Self(self.0.union(&other.0).copied().collect())
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        Self(self.0.intersection(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        Self(self.0.difference(&other.0).copied().collect())
    }

    /// Sort key used for separator lists: cardinality first, then lexicographic.
    pub fn size_lex_key(&self) -> (usize, &VertexSet) {
        (self.len(), self)
    }
}

impl FromIterator<Vertex> for VertexSet {
    fn from_iter<I: IntoIterator<Item = Vertex>>(iter: I) -> Self {
        Self(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = Vertex;
    type IntoIter = std::iter::Copied<std::collections::btree_set::Iter<'a, Vertex>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// A finite simplicial graph with named vertices: the defining graph of a RAAG.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SimplicialGraph {
    names: Vec<String>,
    adjacency: Vec<BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<String>,
    edges: Vec<[String; 2]>,
}

impl SimplicialGraph {
    /// Builds a graph from vertex names and edges given by name.
    ///
    /// Vertices are re-sorted canonically. Repeated edges collapse; duplicate
    /// vertices, self-loops and edges to undeclared vertices are rejected.
    pub fn new<S, E>(vertices: &[S], edges: &[(E, E)]) -> Result<Self>
    where
        S: AsRef<str>,
        E: AsRef<str>,
    {
        let mut names: Vec<String> = vertices.iter().map(|s| s.as_ref().to_owned()).collect();
        names.sort();
        if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Validation(format!("duplicate vertex `{}`", w[0])));
        }
        let index: BTreeMap<&str, Vertex> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();
        let mut adjacency = vec![BTreeSet::new(); names.len()];
        for (u, v) in edges {
            let (u, v) = (u.as_ref(), v.as_ref());
            if u == v {
                return Err(Error::Validation(format!("self-loop at `{u}`")));
            }
            let lookup = |x: &str| {
                index
                    .get(x)
                    .copied()
                    .ok_or_else(|| Error::Validation(format!("edge endpoint `{x}` is not a declared vertex")))
            };
            let (i, j) = (lookup(u)?, lookup(v)?);
            adjacency[i].insert(j);
            adjacency[j].insert(i);
        }
        Ok(Self { names, adjacency })
    }

    /// The graph on vertices `0..n` named by `names` (already sorted) with index edges.
    pub(crate) fn from_indices(names: Vec<String>, edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Self {
        debug_assert!(names.windows(2).all(|w| w[0] < w[1]));
        let mut adjacency = vec![BTreeSet::new(); names.len()];
        for (u, v) in edges {
            debug_assert_ne!(u, v);
            adjacency[u].insert(v);
            adjacency[v].insert(u);
        }
        Self { names, adjacency }
    }

    /// Parses either the JSON format or the DOT subset, chosen by the first
    /// non-blank character.
    pub fn parse(text: &str) -> Result<Self> {
        if text.trim_start().starts_with('{') {
            Self::from_json(text)
        } else {
            crate::dot::parse_graph(text)
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let edges: Vec<(&str, &str)> = raw.edges.iter().map(|[u, v]| (u.as_str(), v.as_str())).collect();
        Self::new(&raw.vertices, &edges)
    }

    /// Canonical JSON: sorted vertices, edges sorted with the smaller endpoint first.
    pub fn to_json(&self) -> String {
        let raw = GraphJson {
            vertices: self.names.clone(),
            edges: self
                .edges()
                .map(|(u, v)| [self.names[u].clone(), self.names[v].clone()])
                .collect(),
        };
        serde_json::to_string(&raw).expect("graph serialization cannot fail")
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for (v, name) in self.names.iter().enumerate() {
            if self.adjacency[v].is_empty() {
                out.push_str(&format!("  {};\n", crate::dot::quote_id(name)));
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!(
                "  {} -- {};\n",
                crate::dot::quote_id(&self.names[u]),
                crate::dot::quote_id(&self.names[v])
            ));
        }
        out.push_str("}\n");
        out
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn index_of(&self, name: &str) -> Option<Vertex> {
        self.names.binary_search_by(|n| n.as_str().cmp(name)).ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn adjacent(&self, u: Vertex, v: Vertex) -> bool {
        self.adjacency[u].contains(&v)
    }

    pub fn neighbors(&self, v: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adjacency[v].len()
    }

    pub fn all_vertices(&self) -> VertexSet {
        (0..self.vertex_count()).collect()
    }

    /// Resolves vertex names into a set.
    pub fn vertex_set<S: AsRef<str>>(&self, names: &[S]) -> Result<VertexSet> {
        names
            .iter()
            .map(|n| {
                let n = n.as_ref();
                self.index_of(n).ok_or_else(|| Error::UnknownGenerator(n.to_owned()))
            })
            .collect()
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index_of(name).ok_or_else(|| Error::UnknownGenerator(name.to_owned()))
    }

    pub fn set_names(&self, s: &VertexSet) -> Vec<String> {
        s.iter().map(|v| self.names[v].clone()).collect()
    }

    /// `{a, b}` style rendering of a vertex set.
    pub fn format_set(&self, s: &VertexSet) -> String {
        format!("{{{}}}", self.set_names(s).join(", "))
    }

    fn check_subset(&self, s: &VertexSet) -> Result<()> {
        match s.iter().find(|&v| v >= self.vertex_count()) {
            Some(v) => Err(Error::Domain(format!("vertex index {v} is outside the graph"))),
            None => Ok(()),
        }
    }

    fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.vertex_count() {
            Ok(())
        } else {
            Err(Error::Domain(format!("vertex index {v} is outside the graph")))
        }
    }

    /// The full subgraph spanned by `s`.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<SimplicialGraph> {
        self.check_subset(s)?;
        let old: Vec<Vertex> = s.iter().collect();
        let names = old.iter().map(|&v| self.names[v].clone()).collect();
        let edges = old.iter().enumerate().flat_map(|(i, &u)| {
            old.iter()
                .enumerate()
                .skip(i + 1)
                .filter(move |&(_, &v)| self.adjacent(u, v))
                .map(move |(j, _)| (i, j))
        });
        Ok(Self::from_indices(names, edges))
    }

    /// Vertices outside `s` adjacent to every vertex of `s`. The link of the
    /// empty set is the whole vertex set.
    pub fn link(&self, s: &VertexSet) -> Result<VertexSet> {
        self.check_subset(s)?;
        Ok((0..self.vertex_count())
            .filter(|&v| !s.contains(v) && s.iter().all(|u| self.adjacent(u, v)))
            .collect())
    }

    pub fn star(&self, v: Vertex) -> Result<VertexSet> {
        self.check_vertex(v)?;
        let mut s: VertexSet = self.neighbors(v).collect();
        s.insert(v);
        Ok(s)
    }

    pub fn is_clique(&self, s: &VertexSet) -> Result<bool> {
        self.check_subset(s)?;
        Ok(self.is_clique_unchecked(s))
    }

    pub(crate) fn is_clique_unchecked(&self, s: &VertexSet) -> bool {
        let members: Vec<Vertex> = s.iter().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &u)| members[i + 1..].iter().all(|&v| self.adjacent(u, v)))
    }

    pub fn is_complete(&self) -> bool {
        self.is_clique_unchecked(&self.all_vertices())
    }

    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.all_vertices())
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Components of the subgraph induced on `within`, sorted by smallest member.
    pub(crate) fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        self.components_by(within, |u, v| self.adjacent(u, v))
    }

    fn components_by(&self, within: &VertexSet, linked: impl Fn(Vertex, Vertex) -> bool) -> Vec<VertexSet> {
        let mut unseen = within.clone();
        let mut components = Vec::new();
        while let Some(start) = unseen.first() {
            unseen.remove(start);
            let mut component = VertexSet::singleton(start);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let next: Vec<Vertex> = unseen.iter().filter(|&v| linked(u, v)).collect();
                for v in next {
                    unseen.remove(v);
                    component.insert(v);
                    queue.push_back(v);
                }
            }
            components.push(component);
        }
        // Seeds are taken in increasing order, so components come out sorted
        // by smallest member already.
        components
    }

    pub(crate) fn is_connected_within(&self, within: &VertexSet) -> bool {
        self.components_within(within).len() <= 1
    }

    /// Finest join decomposition: components of the complement graph, sorted
    /// by smallest member. At least two factors iff the graph is a join.
    pub fn join_factors(&self) -> Vec<VertexSet> {
        self.join_factors_within(&self.all_vertices())
    }

    pub(crate) fn join_factors_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        self.components_by(within, |u, v| u != v && !self.adjacent(u, v))
    }

    pub fn is_join(&self) -> bool {
        self.join_factors().len() >= 2
    }

    /// Neighbors of `c` inside `within` that are not in `c`.
    fn boundary_within(&self, c: &VertexSet, within: &VertexSet) -> VertexSet {
        c.iter()
            .flat_map(|u| self.neighbors(u))
            .filter(|&v| within.contains(v) && !c.contains(v))
            .collect()
    }

    /// All minimal vertex separators of the connected subgraph on `within`.
    ///
    /// Seeds with the boundaries of components of `G - N[v]`, then closes
    /// under `S -> N(C)` for components `C` of `G - (S ∪ N(x))`, `x ∈ S`.
    fn minimal_separators_within(&self, within: &VertexSet) -> BTreeSet<VertexSet> {
        let mut found = BTreeSet::new();
        let mut pending = Vec::new();
        let record = |s: VertexSet, found: &mut BTreeSet<VertexSet>, pending: &mut Vec<VertexSet>| {
            if !s.is_empty() && found.insert(s.clone()) {
                pending.push(s);
            }
        };
        for v in within {
            let mut closed: VertexSet = self.neighbors(v).filter(|&u| within.contains(u)).collect();
            closed.insert(v);
            for c in self.components_within(&within.difference(&closed)) {
                record(self.boundary_within(&c, within), &mut found, &mut pending);
            }
        }
        while let Some(s) = pending.pop() {
            for x in &s {
                let mut removed = s.clone();
                removed.extend_neighbors(self, x);
                for c in self.components_within(&within.difference(&removed)) {
                    record(self.boundary_within(&c, within), &mut found, &mut pending);
                }
            }
        }
        found
    }

    /// Inclusion-minimal disconnecting cliques of a connected graph, sorted by
    /// (cardinality, lexicographic).
    pub fn clique_separators(&self) -> Result<Vec<VertexSet>> {
        self.require_connected()?;
        Ok(self.clique_separators_within(&self.all_vertices()))
    }

    pub(crate) fn clique_separators_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let cliques: Vec<VertexSet> = self
            .minimal_separators_within(within)
            .into_iter()
            .filter(|s| self.is_clique_unchecked(s))
            .collect();
        let mut minimal: Vec<VertexSet> = cliques
            .iter()
            .filter(|s| !cliques.iter().any(|t| t != *s && t.is_subset(s)))
            .cloned()
            .collect();
        minimal.sort_by(|a, b| a.size_lex_key().cmp(&b.size_lex_key()));
        minimal
    }

    /// A disconnecting clique of minimum cardinality, lexicographically least
    /// among those. `None` iff there is no clique separator.
    pub fn minimum_clique_separator(&self) -> Result<Option<VertexSet>> {
        Ok(self.clique_separators()?.into_iter().next())
    }

    pub(crate) fn minimum_clique_separator_within(&self, within: &VertexSet) -> Option<VertexSet> {
        self.clique_separators_within(within).into_iter().next()
    }

    fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Domain("graph is disconnected; split it into components first".into()))
        }
    }

    /// Vertices whose star is complete while no neighbor has a complete star.
    /// An isolated vertex qualifies vacuously.
    pub fn hanging_vertices(&self) -> VertexSet {
        let star_complete: Vec<bool> = (0..self.vertex_count())
            .map(|v| self.is_clique_unchecked(&self.star_unchecked(v)))
            .collect();
        (0..self.vertex_count())
            .filter(|&v| star_complete[v] && self.neighbors(v).all(|w| !star_complete[w]))
            .collect()
    }

    pub(crate) fn star_unchecked(&self, v: Vertex) -> VertexSet {
        let mut s: VertexSet = self.neighbors(v).collect();
        s.insert(v);
        s
    }

    pub(crate) fn link_unchecked(&self, v: Vertex) -> VertexSet {
        self.neighbors(v).collect()
    }

    /// Whether removing `k` disconnects the graph.
    pub fn disconnects(&self, k: &VertexSet) -> bool {
        !self.is_connected_within(&self.all_vertices().difference(k))
    }
}

impl VertexSet {
    fn extend_neighbors(&mut self, graph: &SimplicialGraph, v: Vertex) {
        self.0.extend(graph.neighbors(v));
    }
}

impl fmt::Display for SimplicialGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_json())
    }
}
