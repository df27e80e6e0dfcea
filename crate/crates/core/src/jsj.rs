//! Graphs of groups whose vertex and edge groups are standard subgroups, the
//! one-vertex splittings, and the relative and abelian JSJ constructions.
//!
//! Every group is named by the vertex set generating it, so all edge-to-vertex
//! embeddings are inclusions of vertex sets and need no extra data.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{SimplicialGraph, Vertex, VertexSet};

#[derive(Debug, Clone)]
pub struct Node {
    pub id: usize,
    pub group: VertexSet,
    /// Derived: the node group is abelian. Not part of equality.
    pub flexible: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    /// Node ids; equal for a loop.
    pub ends: (usize, usize),
    pub group: VertexSet,
    /// For loops: the generator acting as stable letter of the HNN extension.
    pub stable_letter: Option<Vertex>,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends.0 == self.ends.1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecompositionKind {
    /// Output of [`relative_jsj`]: a tree, canonical generators elliptic.
    Relative,
    /// Output of [`abelian_jsj`]: a tree with loops at hanging vertices.
    Abelian,
    /// A single splitting or a hand-built graph of groups.
    Splitting,
}

#[derive(Debug, Clone)]
pub struct GraphOfGroups {
    pub nodes: Vec<Node>,
    pub edges: Vec<Edge>,
    pub base_graph: SimplicialGraph,
    pub kind: DecompositionKind,
}

impl PartialEq for GraphOfGroups {
    fn eq(&self, other: &Self) -> bool {
        let nodes = |g: &Self| g.nodes.iter().map(|n| (n.id, n.group.clone())).collect::<Vec<_>>();
        nodes(self) == nodes(other) && self.edges == other.edges && self.base_graph == other.base_graph
    }
}

impl Eq for GraphOfGroups {}

/// A separator picked by the relative construction, with the vertex set of
/// the subgraph it was picked in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatorChoice {
    pub within: VertexSet,
    pub separator: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, failures: Vec<String>) -> Self {
        Self { name: name.to_owned(), passed: failures.is_empty(), detail: failures.join("; ") }
    }

    fn skipped(name: &str, why: &str) -> Self {
        Self { name: name.to_owned(), passed: true, detail: format!("skipped: {why}") }
    }
}

impl GraphOfGroups {
    fn from_parts(
        base: &SimplicialGraph,
        kind: DecompositionKind,
        groups: Vec<VertexSet>,
        edges: Vec<(usize, usize, VertexSet, Option<Vertex>)>,
    ) -> Self {
        let nodes = groups
            .into_iter()
            .enumerate()
            .map(|(id, group)| Node { id, flexible: base.is_clique_unchecked(&group), group })
            .collect();
        let edges = edges
            .into_iter()
            .enumerate()
            .map(|(id, (u, v, group, stable_letter))| Edge { id, ends: (u, v), group, stable_letter })
            .collect();
        Self { nodes, edges, base_graph: base.clone(), kind }
    }

    pub fn node(&self, id: usize) -> Option<&Node> {
        self.nodes.iter().find(|n| n.id == id)
    }

    pub fn loops(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(|e| e.is_loop())
    }

    /// Renumbers nodes in order of their groups and edges by endpoints, group
    /// and stable letter, so equal decompositions serialize identically.
    pub fn canonicalize(&mut self) {
        self.nodes.sort_by(|a, b| a.group.cmp(&b.group).then(a.id.cmp(&b.id)));
        let renumber: std::collections::HashMap<usize, usize> =
            self.nodes.iter().enumerate().map(|(new, n)| (n.id, new)).collect();
        for (new, n) in self.nodes.iter_mut().enumerate() {
            n.id = new;
        }
        for e in &mut self.edges {
            let (u, v) = (renumber[&e.ends.0], renumber[&e.ends.1]);
            e.ends = (u.min(v), u.max(v));
        }
        self.edges.sort_by(|a, b| {
            (a.ends, a.is_loop(), &a.group, a.stable_letter).cmp(&(b.ends, b.is_loop(), &b.group, b.stable_letter))
        });
        for (new, e) in self.edges.iter_mut().enumerate() {
            e.id = new;
        }
    }

    pub fn serializable(&self) -> GraphOfGroupsJson<'_> {
        let g = &self.base_graph;
        let names = |s: &VertexSet| s.iter().map(|v| g.name(v)).collect::<Vec<_>>();
        let mut nodes: Vec<NodeJson<'_>> = self
            .nodes
            .iter()
            .map(|n| NodeJson { id: n.id, group: names(&n.group), flexible: n.flexible })
            .collect();
        nodes.sort_by_key(|n| n.id);
        let mut edges: Vec<EdgeJson<'_>> = self
            .edges
            .iter()
            .map(|e| EdgeJson {
                id: e.id,
                ends: [e.ends.0, e.ends.1],
                group: names(&e.group),
                stable_letter: e.stable_letter.map(|v| g.name(v)),
            })
            .collect();
        edges.sort_by_key(|e| e.id);
        GraphOfGroupsJson { nodes, edges }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.serializable()).expect("graph of groups serialization cannot fail")
    }

    /// DOT rendering: node and edge labels are group sets; loops carry their
    /// stable letter after a slash.
    pub fn to_dot(&self) -> String {
        let g = &self.base_graph;
        let mut out = String::from("graph GraphOfGroups {\n");
        let mut nodes: Vec<&Node> = self.nodes.iter().collect();
        nodes.sort_by_key(|n| n.id);
        for n in nodes {
            let shape = if n.flexible { "ellipse" } else { "box" };
            let _ = writeln!(out, "  n{} [label={}, shape={shape}];", n.id, dot_label(&g.format_set(&n.group)));
        }
        let mut edges: Vec<&Edge> = self.edges.iter().collect();
        edges.sort_by_key(|e| e.id);
        for e in edges {
            let mut label = g.format_set(&e.group);
            if let Some(t) = e.stable_letter {
                label.push_str(" / ");
                label.push_str(g.name(t));
            }
            let _ = writeln!(out, "  n{} -- n{} [label={}];", e.ends.0, e.ends.1, dot_label(&label));
        }
        out.push_str("}\n");
        out
    }
}

fn dot_label(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

#[derive(Debug, Serialize)]
pub struct NodeJson<'a> {
    pub id: usize,
    pub group: Vec<&'a str>,
    pub flexible: bool,
}

#[derive(Debug, Serialize)]
pub struct EdgeJson<'a> {
    pub id: usize,
    pub ends: [usize; 2],
    pub group: Vec<&'a str>,
    pub stable_letter: Option<&'a str>,
}

#[derive(Debug, Serialize)]
pub struct GraphOfGroupsJson<'a> {
    pub nodes: Vec<NodeJson<'a>>,
    pub edges: Vec<EdgeJson<'a>>,
}

fn require_vertex(g: &SimplicialGraph, v: Vertex) -> Result<()> {
    if v < g.vertex_count() {
        Ok(())
    } else {
        Err(Error::Domain(format!("vertex index {v} is outside the graph")))
    }
}

fn require_connected(g: &SimplicialGraph) -> Result<()> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(Error::Domain("graph is disconnected; decompose each component separately".into()))
    }
}

/// `G = HNN(G_{V∖v}, G_Link(v), id)` with stable letter `v`.
pub fn hnn_split(g: &SimplicialGraph, v: Vertex) -> Result<GraphOfGroups> {
    require_vertex(g, v)?;
    let mut rest = g.all_vertices();
    rest.remove(v);
    Ok(GraphOfGroups::from_parts(
        g,
        DecompositionKind::Splitting,
        vec![rest],
        vec![(0, 0, g.link_unchecked(v), Some(v))],
    ))
}

/// `G = G_{V∖v} *_{G_Link(v)} G_Star(v)`.
pub fn star_amalgam_split(g: &SimplicialGraph, v: Vertex) -> Result<GraphOfGroups> {
    require_vertex(g, v)?;
    if g.vertex_count() < 2 {
        return Err(Error::Domain("the one-vertex graph has no amalgam splitting".into()));
    }
    let mut rest = g.all_vertices();
    rest.remove(v);
    Ok(GraphOfGroups::from_parts(
        g,
        DecompositionKind::Splitting,
        vec![rest, g.star_unchecked(v)],
        vec![(0, 1, g.link_unchecked(v), None)],
    ))
}

/// Amalgam over a disconnecting clique `k`: a path of the groups `K ∪ Γⁱ`
/// over the components `Γⁱ` of `Γ ∖ K`, every edge carrying `K`.
pub fn amalgam_split(g: &SimplicialGraph, k: &VertexSet) -> Result<GraphOfGroups> {
    require_connected(g)?;
    if !g.is_clique(k)? || !g.disconnects(k) {
        return Err(Error::Domain(format!("{} is not a disconnecting clique", g.format_set(k))));
    }
    let components = g.components_within(&g.all_vertices().difference(k));
    let groups: Vec<VertexSet> = components.iter().map(|c| c.union(k)).collect();
    let edges = (1..groups.len()).map(|i| (i - 1, i, k.clone(), None)).collect();
    Ok(GraphOfGroups::from_parts(g, DecompositionKind::Splitting, groups, edges))
}

struct TreeParts {
    groups: Vec<VertexSet>,
    edges: Vec<(usize, usize, VertexSet)>,
}

fn build_relative(g: &SimplicialGraph, within: &VertexSet, choices: &mut Vec<SeparatorChoice>) -> Result<TreeParts> {
    let separator = if g.is_clique_unchecked(within) { None } else { g.minimum_clique_separator_within(within) };
    let Some(k) = separator else {
        return Ok(TreeParts { groups: vec![within.clone()], edges: vec![] });
    };
    choices.push(SeparatorChoice { within: within.clone(), separator: k.clone() });

    let mut tree = TreeParts { groups: vec![], edges: vec![] };
    let mut previous_anchor: Option<usize> = None;
    for component in g.components_within(&within.difference(&k)) {
        let sub = build_relative(g, &component.union(&k), choices)?;
        let offset = tree.groups.len();
        let anchor = sub
            .groups
            .iter()
            .enumerate()
            .filter(|(_, group)| k.is_subset(group))
            .min_by(|a, b| a.1.cmp(b.1))
            .map(|(i, _)| offset + i)
            .ok_or_else(|| {
                Error::InvariantViolation(format!("no node group contains the separator {}", g.format_set(&k)))
            })?;
        tree.groups.extend(sub.groups);
        tree.edges.extend(sub.edges.into_iter().map(|(u, v, e)| (u + offset, v + offset, e)));
        if let Some(prev) = previous_anchor {
            tree.edges.push((prev, anchor, k.clone()));
        }
        previous_anchor = Some(anchor);
    }
    Ok(tree)
}

/// Relative JSJ decomposition with the separators chosen along the way.
pub fn relative_jsj_traced(g: &SimplicialGraph) -> Result<(GraphOfGroups, Vec<SeparatorChoice>)> {
    require_connected(g)?;
    let mut choices = Vec::new();
    let tree = build_relative(g, &g.all_vertices(), &mut choices)?;
    let edges = tree.edges.into_iter().map(|(u, v, k)| (u, v, k, None)).collect();
    let mut gog = GraphOfGroups::from_parts(g, DecompositionKind::Relative, tree.groups, edges);
    let d = check_reduced(&gog);
    if !d.passed {
        return Err(Error::InvariantViolation(format!("relative decomposition is not reduced: {}", d.detail)));
    }
    gog.canonicalize();
    Ok((gog, choices))
}

/// Reduced tree of standard subgroups splitting over minimum disconnecting
/// cliques, recursively, with every canonical generator elliptic.
pub fn relative_jsj(g: &SimplicialGraph) -> Result<GraphOfGroups> {
    relative_jsj_traced(g).map(|(gog, _)| gog)
}

/// Abelian JSJ decomposition: the relative tree with each hanging vertex
/// turned into a loop over its link, then reduced.
pub fn abelian_jsj(g: &SimplicialGraph) -> Result<GraphOfGroups> {
    require_connected(g)?;
    if g.vertex_count() == 1 {
        return Ok(GraphOfGroups::from_parts(
            g,
            DecompositionKind::Abelian,
            vec![VertexSet::new()],
            vec![(0, 0, VertexSet::new(), Some(0))],
        ));
    }
    let mut gog = relative_jsj(g)?;
    gog.kind = DecompositionKind::Abelian;
    if gog.nodes.len() == 1 {
        return Ok(gog);
    }
    for v in &g.hanging_vertices() {
        let star = g.star_unchecked(v);
        let link = g.link_unchecked(v);
        let node = gog.nodes.iter_mut().find(|n| n.group == star).ok_or_else(|| {
            Error::InvariantViolation(format!(
                "no vertex group equals the star {} of hanging vertex {}",
                g.format_set(&star),
                g.name(v)
            ))
        })?;
        node.group = link.clone();
        node.flexible = true;
        let id = node.id;
        let edge_id = gog.edges.len();
        gog.edges.push(Edge { id: edge_id, ends: (id, id), group: link, stable_letter: Some(v) });
    }
    let mut gog = reduce(gog);
    gog.canonicalize();
    Ok(gog)
}

/// Contracts, lowest id first, every non-loop edge whose group equals an
/// endpoint group, merging that endpoint into the other one.
pub fn reduce(mut gog: GraphOfGroups) -> GraphOfGroups {
    loop {
        let collapsible = gog
            .edges
            .iter()
            .filter(|e| !e.is_loop())
            .filter_map(|e| {
                let (u, v) = e.ends;
                let gu = &gog.node(u)?.group;
                let gv = &gog.node(v)?.group;
                if &e.group == gu {
                    Some((e.id, u, v))
                } else if &e.group == gv {
                    Some((e.id, v, u))
                } else {
                    None
                }
            })
            .min_by_key(|&(id, ..)| id);
        let Some((edge_id, gone, keep)) = collapsible else { break };
        gog.edges.retain(|e| e.id != edge_id);
        for e in &mut gog.edges {
            if e.ends.0 == gone {
                e.ends.0 = keep;
            }
            if e.ends.1 == gone {
                e.ends.1 = keep;
            }
        }
        gog.nodes.retain(|n| n.id != gone);
    }
    gog
}

fn check_reduced(gog: &GraphOfGroups) -> CheckResult {
    let g = &gog.base_graph;
    let failures = gog
        .edges
        .iter()
        .filter(|e| !e.is_loop())
        .filter(|e| {
            [e.ends.0, e.ends.1]
                .iter()
                .any(|&n| gog.node(n).is_none_or(|node| node.group == e.group))
        })
        .map(|e| format!("edge {} group {} equals an endpoint group", e.id, g.format_set(&e.group)))
        .collect();
    CheckResult::new("reduced", failures)
}

/// Structural checks on a decomposition. Failures are reported, not raised.
pub fn validate(gog: &GraphOfGroups) -> Vec<CheckResult> {
    let g = &gog.base_graph;
    let fmt = |s: &VertexSet| g.format_set(s);
    let node_ids: BTreeSet<usize> = gog.nodes.iter().map(|n| n.id).collect();
    let mut checks = Vec::new();

    // Edge groups embed in both endpoint groups.
    let mut failures = Vec::new();
    for e in &gog.edges {
        for end in [e.ends.0, e.ends.1] {
            match gog.node(end) {
                None => failures.push(format!("edge {} ends at missing node {end}", e.id)),
                Some(n) if !e.group.is_subset(&n.group) => failures.push(format!(
                    "edge {} group {} is not inside node {} group {}",
                    e.id,
                    fmt(&e.group),
                    n.id,
                    fmt(&n.group)
                )),
                _ => {}
            }
        }
        if e.stable_letter.is_some() && !e.is_loop() {
            failures.push(format!("edge {} has a stable letter but is not a loop", e.id));
        }
    }
    checks.push(CheckResult::new("inclusions", failures));

    // (a) the non-loop edges form a spanning tree.
    let mut failures = Vec::new();
    let tree_edges: Vec<&Edge> = gog.edges.iter().filter(|e| !e.is_loop()).collect();
    if gog.nodes.is_empty() {
        failures.push("no nodes".to_string());
    } else if tree_edges.len() + 1 != gog.nodes.len() {
        failures.push(format!("{} nodes but {} non-loop edges", gog.nodes.len(), tree_edges.len()));
    } else {
        let mut reached = BTreeSet::from([gog.nodes[0].id]);
        let mut grew = true;
        while grew {
            grew = false;
            for e in &tree_edges {
                let (u, v) = e.ends;
                if reached.contains(&u) != reached.contains(&v) {
                    reached.insert(u);
                    reached.insert(v);
                    grew = true;
                }
            }
        }
        if reached != node_ids {
            failures.push("underlying graph is not connected".to_string());
        }
    }
    checks.push(CheckResult::new("tree_shape", failures));

    // (b) vertex groups abelian or free of disconnecting cliques.
    let failures = gog
        .nodes
        .iter()
        .filter(|n| {
            !g.is_clique_unchecked(&n.group)
                && (!g.is_connected_within(&n.group) || !g.clique_separators_within(&n.group).is_empty())
        })
        .map(|n| format!("node {} group {} has a disconnecting clique", n.id, fmt(&n.group)))
        .collect();
    checks.push(CheckResult::new("vertex_groups", failures));

    // (c) edge groups are disconnecting cliques of the base graph.
    if g.vertex_count() == 1 && gog.edges.iter().all(|e| e.group.is_empty()) {
        checks.push(CheckResult::skipped("edge_groups", "single vertex with trivial groups"));
    } else {
        let failures = gog
            .edges
            .iter()
            .filter(|e| !g.is_clique_unchecked(&e.group) || !g.disconnects(&e.group))
            .map(|e| format!("edge {} group {} is not a disconnecting clique", e.id, fmt(&e.group)))
            .collect();
        checks.push(CheckResult::new("edge_groups", failures));
    }

    // (d)
    checks.push(check_reduced(gog));

    // (e) every generator is in a vertex group or is a stable letter.
    let mut covered = VertexSet::new();
    for n in &gog.nodes {
        covered = covered.union(&n.group);
    }
    for t in gog.edges.iter().filter_map(|e| e.stable_letter) {
        covered.insert(t);
    }
    let failures = g
        .all_vertices()
        .difference(&covered)
        .iter()
        .map(|v| format!("generator {} is not covered", g.name(v)))
        .collect();
    checks.push(CheckResult::new("covering", failures));

    let failures = gog
        .nodes
        .iter()
        .filter(|n| n.flexible != g.is_clique_unchecked(&n.group))
        .map(|n| format!("node {} flexible flag disagrees with its group", n.id))
        .collect();
    checks.push(CheckResult::new("flexible_flags", failures));

    // (f)
    if gog.kind == DecompositionKind::Abelian {
        let hanging = g.hanging_vertices();
        let failures = gog
            .nodes
            .iter()
            .filter(|n| !n.group.is_disjoint(&hanging))
            .map(|n| format!("node {} group {} contains a hanging vertex", n.id, fmt(&n.group)))
            .collect();
        checks.push(CheckResult::new("hanging_excluded", failures));
    }
    checks
}

/// Both decompositions of a connected graph with every check applied.
#[derive(Debug, Clone)]
pub struct JsjReport {
    pub input: SimplicialGraph,
    pub relative: GraphOfGroups,
    pub abelian: GraphOfGroups,
    pub hanging: VertexSet,
    pub separators_used: Vec<SeparatorChoice>,
    pub validation: Vec<CheckResult>,
}

impl JsjReport {
    pub fn build(g: &SimplicialGraph) -> Result<Self> {
        let (relative, separators_used) = relative_jsj_traced(g)?;
        let abelian = abelian_jsj(g)?;
        let mut validation: Vec<CheckResult> = validate(&relative)
            .into_iter()
            .map(|c| CheckResult { name: format!("relative.{}", c.name), ..c })
            .collect();
        validation.extend(
            validate(&abelian)
                .into_iter()
                .map(|c| CheckResult { name: format!("abelian.{}", c.name), ..c }),
        );
        validation.extend(separator_checks(g, &separators_used));
        Ok(Self { input: g.clone(), hanging: g.hanging_vertices(), relative, abelian, separators_used, validation })
    }

    pub fn passed(&self) -> bool {
        self.validation.iter().all(|c| c.passed)
    }
}

/// Each chosen separator is an inclusion-minimal disconnecting clique of the
/// subgraph it was chosen in, and also disconnects the whole graph.
pub fn separator_checks(g: &SimplicialGraph, choices: &[SeparatorChoice]) -> Vec<CheckResult> {
    let minimal = choices
        .iter()
        .filter(|c| !g.clique_separators_within(&c.within).contains(&c.separator))
        .map(|c| format!("{} is not a minimal clique separator of {}", g.format_set(&c.separator), g.format_set(&c.within)))
        .collect();
    let cascade = choices
        .iter()
        .filter(|c| !g.disconnects(&c.separator))
        .map(|c| format!("{} does not disconnect the whole graph", g.format_set(&c.separator)))
        .collect();
    vec![CheckResult::new("separator_minimality", minimal), CheckResult::new("separator_cascade", cascade)]
}
