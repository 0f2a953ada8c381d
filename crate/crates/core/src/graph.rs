//! Graphs, colorings, online game events and per-class move legality.
//!
//! An online game starts from a class-specific initial graph `G_0` and adds
//! one vertex per step. The step may also delete edges. Which (attach,
//! delete) shapes are legal depends on the graph class being played.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

pub type VertexId = u32;
/// Colors are positive integers `1..=palette_size`.
pub type Color = u32;

fn norm(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

/// Undirected simple graph over stable integer vertex ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertices: BTreeSet<VertexId>,
    edges: BTreeSet<(VertexId, VertexId)>,
}

impl Graph {
    pub fn new() -> Self {
        Graph { vertices: BTreeSet::new(), edges: BTreeSet::new() }
    }

    pub fn with_vertices(ids: impl IntoIterator<Item = VertexId>) -> Self {
        Graph { vertices: ids.into_iter().collect(), edges: BTreeSet::new() }
    }

    /// Complete graph on `1..=n`.
    pub fn complete(n: u32) -> Self {
        let mut g = Graph::with_vertices(1..=n);
        for a in 1..=n {
            for b in a + 1..=n {
                g.add_edge(a, b);
            }
        }
        g
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn has_vertex(&self, v: VertexId) -> bool {
        self.vertices.contains(&v)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edges.contains(&norm(a, b))
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, a: VertexId, b: VertexId) {
        assert!(a != b, "self-loop on {a}");
        assert!(
            self.has_vertex(a) && self.has_vertex(b),
            "edge endpoints must exist: {a},{b}"
        );
        self.edges.insert(norm(a, b));
    }

    pub fn remove_edge(&mut self, a: VertexId, b: VertexId) {
        self.edges.remove(&norm(a, b));
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.edges.iter().copied()
    }

    pub fn max_vertex(&self) -> Option<VertexId> {
        self.vertices.iter().next_back().copied()
    }

    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        let mut out = Vec::new();
        for &(a, b) in &self.edges {
            if a == v {
                out.push(b);
            } else if b == v {
                out.push(a);
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn is_clique(&self, vs: &BTreeSet<VertexId>) -> bool {
        let ids: Vec<_> = vs.iter().copied().collect();
        for i in 0..ids.len() {
            for j in i + 1..ids.len() {
                if !self.has_edge(ids[i], ids[j]) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::new();
        let mut stack = vec![start];
        seen.insert(start);
        while let Some(v) = stack.pop() {
            for w in self.neighbors(v) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.n()
    }

    pub fn is_path_graph(&self) -> bool {
        if self.n() == 0 {
            return false;
        }
        if self.n() == 1 {
            return self.m() == 0;
        }
        if self.m() != self.n() - 1 || !self.is_connected() {
            return false;
        }
        let ends = self.vertices().filter(|&v| self.degree(v) == 1).count();
        ends == 2 && self.vertices().all(|v| self.degree(v) <= 2)
    }

    pub fn is_cycle_graph(&self) -> bool {
        self.n() >= 3
            && self.m() == self.n()
            && self.is_connected()
            && self.vertices().all(|v| self.degree(v) == 2)
    }

    pub fn is_tree_graph(&self) -> bool {
        self.n() >= 1 && self.m() == self.n() - 1 && self.is_connected()
    }

    /// Degree-1 endpoints of a path graph (the single vertex when n = 1).
    pub fn path_ends(&self) -> Vec<VertexId> {
        if self.n() == 1 {
            return self.vertices().collect();
        }
        self.vertices().filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices of a path graph in path order, starting from its smallest end.
    pub fn path_order(&self) -> Option<Vec<VertexId>> {
        if !self.is_path_graph() {
            return None;
        }
        if self.n() == 1 {
            return Some(self.vertices().collect());
        }
        let start = *self.path_ends().iter().min().unwrap();
        let mut order = vec![start];
        let mut prev = None;
        let mut cur = start;
        while order.len() < self.n() {
            let next = self
                .neighbors(cur)
                .into_iter()
                .find(|&w| Some(w) != prev)
                .expect("path invariant");
            order.push(next);
            prev = Some(cur);
            cur = next;
        }
        Some(order)
    }

    /// Vertices of a cycle graph in cyclic order, starting from the smallest
    /// id, heading toward its smaller neighbor.
    pub fn cycle_order(&self) -> Option<Vec<VertexId>> {
        if !self.is_cycle_graph() {
            return None;
        }
        let start = self.vertices().min().unwrap();
        let mut nbrs = self.neighbors(start);
        nbrs.sort();
        let mut order = vec![start];
        let mut prev = start;
        let mut cur = nbrs[0];
        while cur != start {
            order.push(cur);
            let next = self
                .neighbors(cur)
                .into_iter()
                .find(|&w| w != prev)
                .expect("cycle invariant");
            prev = cur;
            cur = next;
        }
        Some(order)
    }
}

impl Default for Graph {
    fn default() -> Self {
        Graph::new()
    }
}

/// Recognizes k-trees by repeatedly stripping a simplicial vertex of degree
/// exactly k, then checking that the core is a complete graph on k+1
/// vertices. Reversing the removals rebuilds the graph by legal k-tree
/// attachments, so this is sound and complete.
pub fn is_k_tree(g: &Graph, k: u8) -> bool {
    let k = k as usize;
    if g.n() < k + 1 {
        return false;
    }
    let mut h = g.clone();
    'strip: while h.n() > k + 1 {
        for v in h.vertices().collect::<Vec<_>>() {
            let nbrs: BTreeSet<_> = h.neighbors(v).into_iter().collect();
            if nbrs.len() == k && h.is_clique(&nbrs) {
                for &w in &nbrs {
                    h.remove_edge(v, w);
                }
                h.vertices.remove(&v);
                continue 'strip;
            }
        }
        return false;
    }
    h.m() == k * (k + 1) / 2 && h.vertices().all(|v| h.degree(v) == k)
}

/// Total assignment of colors to the vertices of some graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    pub assignment: std::collections::BTreeMap<VertexId, Color>,
    pub palette_size: u32,
}

impl Coloring {
    pub fn new(palette_size: u32) -> Self {
        Coloring { assignment: Default::default(), palette_size }
    }

    pub fn set(&mut self, v: VertexId, c: Color) {
        assert!(c >= 1 && c <= self.palette_size, "color {c} outside palette");
        self.assignment.insert(v, c);
    }

    pub fn get(&self, v: VertexId) -> Option<Color> {
        self.assignment.get(&v).copied()
    }

    pub fn color(&self, v: VertexId) -> Color {
        self.assignment[&v]
    }

    pub fn is_total_on(&self, g: &Graph) -> bool {
        g.vertices().all(|v| self.assignment.contains_key(&v))
    }
}

/// One online step: a fresh vertex `v`, the prior vertices it attaches to,
/// and the prior edges deleted in the same step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameEvent {
    pub v: VertexId,
    pub attach: BTreeSet<VertexId>,
    pub delete: BTreeSet<(VertexId, VertexId)>,
}

impl GameEvent {
    pub fn add(v: VertexId, attach: impl IntoIterator<Item = VertexId>) -> Self {
        GameEvent { v, attach: attach.into_iter().collect(), delete: BTreeSet::new() }
    }

    pub fn subdivide(v: VertexId, a: VertexId, b: VertexId) -> Self {
        GameEvent {
            v,
            attach: [a, b].into_iter().collect(),
            delete: [norm(a, b)].into_iter().collect(),
        }
    }
}

/// Graph classes from the online coloring game, each with its own initial
/// graph and legal move shapes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GraphClassRule {
    LeftToRightPath,
    Path,
    Tree,
    Cycle,
    SeriesParallel,
    PartialKTree(u8),
    KTree(u8),
}

impl GraphClassRule {
    /// `G_0`: a single vertex, except a triangle for cycles and a complete
    /// graph on k+1 vertices for k-trees.
    pub fn initial_graph(&self) -> Graph {
        match self {
            GraphClassRule::Cycle => Graph::complete(3),
            GraphClassRule::KTree(k) => Graph::complete(*k as u32 + 1),
            _ => Graph::with_vertices([1]),
        }
    }

    pub fn k(&self) -> Option<u8> {
        match self {
            GraphClassRule::PartialKTree(k) | GraphClassRule::KTree(k) => Some(*k),
            _ => None,
        }
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            GraphClassRule::LeftToRightPath => "left_to_right_path",
            GraphClassRule::Path => "path",
            GraphClassRule::Tree => "tree",
            GraphClassRule::Cycle => "cycle",
            GraphClassRule::SeriesParallel => "series_parallel",
            GraphClassRule::PartialKTree(_) => "partial_k_tree",
            GraphClassRule::KTree(_) => "k_tree",
        }
    }

    pub fn from_name(name: &str, k: Option<u8>) -> Option<GraphClassRule> {
        Some(match (name, k) {
            ("left_to_right_path", None) => GraphClassRule::LeftToRightPath,
            ("path", None) => GraphClassRule::Path,
            ("tree", None) => GraphClassRule::Tree,
            ("cycle", None) => GraphClassRule::Cycle,
            ("series_parallel", None) => GraphClassRule::SeriesParallel,
            ("partial_k_tree", Some(k)) => GraphClassRule::PartialKTree(k),
            ("k_tree", Some(k)) => GraphClassRule::KTree(k),
            _ => return None,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub reason: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "illegal event: {}", self.reason)
    }
}

impl std::error::Error for Violation {}

fn violation<T>(reason: impl Into<String>) -> Result<T, Violation> {
    Err(Violation { reason: reason.into() })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum InvalidEvent {
    StaleVertex(VertexId),
    MissingNeighbor(VertexId),
    MissingEdge(VertexId, VertexId),
}

impl fmt::Display for InvalidEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InvalidEvent::StaleVertex(v) => write!(f, "vertex {v} already exists"),
            InvalidEvent::MissingNeighbor(v) => write!(f, "attach vertex {v} does not exist"),
            InvalidEvent::MissingEdge(a, b) => write!(f, "deleted edge {a}-{b} does not exist"),
        }
    }
}

impl std::error::Error for InvalidEvent {}

/// Applies one event: `V(G_t) = V ∪ {v}`, `E(G_t) = E ∪ D_t \ C_t`.
/// Legality under a class rule is [`validate_event`]'s job; this only
/// rejects structurally broken events.
pub fn apply_event(g: &Graph, e: &GameEvent) -> Result<Graph, InvalidEvent> {
    if g.has_vertex(e.v) {
        return Err(InvalidEvent::StaleVertex(e.v));
    }
    for &a in &e.attach {
        if !g.has_vertex(a) {
            return Err(InvalidEvent::MissingNeighbor(a));
        }
    }
    for &(a, b) in &e.delete {
        if !g.has_edge(a, b) {
            return Err(InvalidEvent::MissingEdge(a, b));
        }
    }
    let mut out = g.clone();
    out.add_vertex(e.v);
    for &a in &e.attach {
        out.add_edge(e.v, a);
    }
    for &(a, b) in &e.delete {
        out.remove_edge(a, b);
    }
    Ok(out)
}

/// Checks that `e` matches one of the class's allowed move shapes on `g`.
pub fn validate_event(rule: GraphClassRule, g: &Graph, e: &GameEvent) -> Result<(), Violation> {
    if g.has_vertex(e.v) {
        return violation(format!("vertex {} is not fresh", e.v));
    }
    if let Some(&a) = e.attach.iter().find(|&&a| !g.has_vertex(a)) {
        return violation(format!("attach vertex {a} does not exist"));
    }
    if let Some(&(a, b)) = e.delete.iter().find(|&&(a, b)| !g.has_edge(a, b)) {
        return violation(format!("deleted edge {a}-{b} does not exist"));
    }

    let is_append_to = |x: VertexId| g.n() == 1 || g.degree(x) == 1;
    let one_attach = || e.attach.iter().copied().next().unwrap();
    let attach_pair = || {
        let mut it = e.attach.iter().copied();
        (it.next().unwrap(), it.next().unwrap())
    };
    let is_subdivision = || {
        if e.attach.len() != 2 {
            return false;
        }
        let (a, b) = attach_pair();
        g.has_edge(a, b) && e.delete.len() == 1 && e.delete.contains(&norm(a, b))
    };

    match rule {
        GraphClassRule::LeftToRightPath => {
            let last = g.max_vertex().unwrap();
            if e.attach.len() == 1 && one_attach() == last && e.delete.is_empty() {
                Ok(())
            } else {
                violation("left-to-right appends attach only to the previous vertex")
            }
        }
        GraphClassRule::Path => {
            let append = e.attach.len() == 1 && e.delete.is_empty() && is_append_to(one_attach());
            if append || is_subdivision() {
                Ok(())
            } else {
                violation("path moves are end-appends or edge subdivisions")
            }
        }
        GraphClassRule::Tree => {
            let attach_one = e.attach.len() == 1 && e.delete.is_empty();
            if attach_one || is_subdivision() {
                Ok(())
            } else {
                violation("tree moves attach to one vertex or subdivide an edge")
            }
        }
        GraphClassRule::Cycle => {
            if is_subdivision() {
                Ok(())
            } else {
                violation("cycle moves subdivide an edge")
            }
        }
        GraphClassRule::SeriesParallel => {
            if e.attach.len() == 1 && e.delete.is_empty() {
                return Ok(());
            }
            if is_subdivision() {
                return Ok(());
            }
            // Parallel addition: join both endpoints of an existing edge,
            // keeping the edge.
            if e.attach.len() == 2 && e.delete.is_empty() {
                let (a, b) = attach_pair();
                if g.has_edge(a, b) {
                    return Ok(());
                }
            }
            violation("series-parallel moves attach to one vertex, subdivide, or double an edge")
        }
        GraphClassRule::PartialKTree(k) => {
            if e.attach.len() > k as usize {
                return violation(format!("attach set exceeds size {k}"));
            }
            if !g.is_clique(&e.attach) {
                return violation("attach set is not a clique");
            }
            Ok(())
        }
        GraphClassRule::KTree(k) => {
            if !e.delete.is_empty() {
                return violation("k-tree moves never delete edges");
            }
            if e.attach.len() != k as usize {
                return violation(format!("attach set must have size {k}"));
            }
            if !g.is_clique(&e.attach) {
                return violation("attach set is not a clique");
            }
            Ok(())
        }
    }
}

/// A full event sequence together with the class it is played under and the
/// palette the painter is allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameScript {
    pub rule: GraphClassRule,
    pub palette_size: u32,
    pub events: Vec<GameEvent>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScriptError {
    Parse(String),
    InvalidScript(String),
}

impl fmt::Display for ScriptError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ScriptError::Parse(m) => write!(f, "script parse error: {m}"),
            ScriptError::InvalidScript(m) => write!(f, "invalid script: {m}"),
        }
    }
}

impl std::error::Error for ScriptError {}

#[derive(Serialize, Deserialize)]
struct ScriptHeader {
    class: String,
    k: Option<u8>,
    palette: u32,
}

#[derive(Serialize, Deserialize)]
struct EventRecord {
    op: String,
    v: VertexId,
    attach: Vec<VertexId>,
    delete: Vec<(VertexId, VertexId)>,
}

impl GameScript {
    /// One structured-text record per line: a header declaring class, k and
    /// palette size, then one `add` record per event. Round-trips bit-exactly.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        let header = ScriptHeader {
            class: self.rule.class_name().to_string(),
            k: self.rule.k(),
            palette: self.palette_size,
        };
        out.push_str(&serde_json::to_string(&header).unwrap());
        out.push('\n');
        for e in &self.events {
            let rec = EventRecord {
                op: "add".to_string(),
                v: e.v,
                attach: e.attach.iter().copied().collect(),
                delete: e.delete.iter().copied().collect(),
            };
            out.push_str(&serde_json::to_string(&rec).unwrap());
            out.push('\n');
        }
        out
    }

    pub fn from_jsonl(text: &str) -> Result<GameScript, ScriptError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: ScriptHeader = match lines.next() {
            Some(l) => serde_json::from_str(l).map_err(|e| ScriptError::Parse(e.to_string()))?,
            None => return Err(ScriptError::Parse("empty script file".into())),
        };
        let rule = GraphClassRule::from_name(&header.class, header.k)
            .ok_or_else(|| ScriptError::Parse(format!("unknown class {:?}", header.class)))?;
        let mut events = Vec::new();
        for line in lines {
            let rec: EventRecord =
                serde_json::from_str(line).map_err(|e| ScriptError::Parse(e.to_string()))?;
            if rec.op != "add" {
                return Err(ScriptError::Parse(format!("unknown op {:?}", rec.op)));
            }
            events.push(GameEvent {
                v: rec.v,
                attach: rec.attach.into_iter().collect(),
                delete: rec.delete.into_iter().map(|(a, b)| norm(a, b)).collect(),
            });
        }
        Ok(GameScript { rule, palette_size: header.palette, events })
    }
}

/// Replays a script from its initial graph, validating every event, and
/// returns every intermediate graph (`result[t]` is `G_t`).
pub fn replay_script(script: &GameScript) -> Result<Vec<Graph>, ScriptError> {
    let mut graphs = vec![script.rule.initial_graph()];
    let mut next_id = graphs[0].max_vertex().unwrap() + 1;
    for (t, e) in script.events.iter().enumerate() {
        if e.v != next_id {
            return Err(ScriptError::InvalidScript(format!(
                "event {} adds vertex {} but {} was expected",
                t + 1,
                e.v,
                next_id
            )));
        }
        let g = graphs.last().unwrap();
        validate_event(script.rule, g, e)
            .map_err(|v| ScriptError::InvalidScript(format!("event {}: {}", t + 1, v)))?;
        let g2 = apply_event(g, e)
            .map_err(|v| ScriptError::InvalidScript(format!("event {}: {}", t + 1, v)))?;
        graphs.push(g2);
        next_id += 1;
    }
    Ok(graphs)
}

/// Extends `attach` to a clique of size exactly `k` inside `g`, adding
/// smallest-id eligible vertices first. In a k-tree every clique of size
/// at most k extends to one of size k, so this cannot get stuck there.
pub fn extend_to_k_clique(
    g: &Graph,
    attach: &BTreeSet<VertexId>,
    k: u8,
) -> Result<BTreeSet<VertexId>, ScriptError> {
    let k = k as usize;
    if !g.is_clique(attach) {
        return Err(ScriptError::InvalidScript("attach set is not a clique".into()));
    }
    if attach.len() > k {
        return Err(ScriptError::InvalidScript("attach set larger than k".into()));
    }
    let mut clique = attach.clone();
    while clique.len() < k {
        let next = g
            .vertices()
            .find(|&w| !clique.contains(&w) && clique.iter().all(|&c| g.has_edge(w, c)));
        match next {
            Some(w) => {
                clique.insert(w);
            }
            None => {
                return Err(ScriptError::InvalidScript(
                    "no vertex extends the attach clique".into(),
                ))
            }
        }
    }
    Ok(clique)
}

/// Rewrites a partial k-tree script as a full k-tree script: the first k+1
/// arrivals become the complete initial graph, deletions are dropped, and
/// every later attach set is extended to a k-clique of the augmented graph.
/// The input graph stays a subgraph of the augmented graph at every arrival,
/// so a coloring of the output is valid for the input.
pub fn reduce_partial_to_full(k: u8, script: &GameScript) -> Result<GameScript, ScriptError> {
    match script.rule {
        GraphClassRule::PartialKTree(kk) if kk == k => {}
        _ => {
            return Err(ScriptError::InvalidScript(format!(
                "script class is {} but partial_k_tree({k}) was expected",
                script.rule.class_name()
            )))
        }
    }
    let mut input = script.rule.initial_graph();
    let mut next_id: VertexId = 2;
    let mut augmented = Graph::complete(k as u32 + 1);
    let mut events = Vec::new();
    for (t, e) in script.events.iter().enumerate() {
        if e.v != next_id {
            return Err(ScriptError::InvalidScript(format!(
                "event {} adds vertex {} but {} was expected",
                t + 1,
                e.v,
                next_id
            )));
        }
        validate_event(script.rule, &input, e)
            .map_err(|v| ScriptError::InvalidScript(format!("event {}: {}", t + 1, v)))?;
        input = apply_event(&input, e)
            .map_err(|v| ScriptError::InvalidScript(format!("event {}: {}", t + 1, v)))?;
        if e.v > k as u32 + 1 {
            let clique = extend_to_k_clique(&augmented, &e.attach, k)?;
            augmented = apply_event(&augmented, &GameEvent::add(e.v, clique.iter().copied()))
                .expect("augmented ids are consecutive");
            events.push(GameEvent { v: e.v, attach: clique, delete: BTreeSet::new() });
        }
        next_id += 1;
    }
    Ok(GameScript { rule: GraphClassRule::KTree(k), palette_size: script.palette_size, events })
}

/// Graph text format: a header, then sorted node records, then sorted edge
/// (or arc) records, one per line.
pub fn graph_to_jsonl(g: &Graph) -> String {
    let mut out = String::from("{\"format\":\"graph\",\"directed\":false}\n");
    for v in g.vertices() {
        out.push_str(&format!("{{\"node\":{v}}}\n"));
    }
    for (a, b) in g.edges() {
        out.push_str(&format!("{{\"edge\":[{a},{b}]}}\n"));
    }
    out
}

#[derive(Deserialize)]
struct GraphHeader {
    format: String,
    directed: bool,
}

#[derive(Deserialize)]
struct GraphRecord {
    node: Option<VertexId>,
    edge: Option<(VertexId, VertexId)>,
    arc: Option<(VertexId, VertexId)>,
}

/// Parses the graph text format. Returns the undirected edges and, when the
/// file is directed, the arcs instead.
pub fn graph_from_jsonl(text: &str) -> Result<(Graph, Option<Vec<(VertexId, VertexId)>>), ScriptError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: GraphHeader = match lines.next() {
        Some(l) => serde_json::from_str(l).map_err(|e| ScriptError::Parse(e.to_string()))?,
        None => return Err(ScriptError::Parse("empty graph file".into())),
    };
    if header.format != "graph" {
        return Err(ScriptError::Parse(format!("not a graph file: {:?}", header.format)));
    }
    let mut g = Graph::new();
    let mut arcs = Vec::new();
    for line in lines {
        let rec: GraphRecord =
            serde_json::from_str(line).map_err(|e| ScriptError::Parse(e.to_string()))?;
        if let Some(v) = rec.node {
            g.add_vertex(v);
        } else if let Some((a, b)) = rec.edge {
            if header.directed {
                return Err(ScriptError::Parse("edge record in a directed file".into()));
            }
            g.add_edge(a, b);
        } else if let Some((a, b)) = rec.arc {
            if !header.directed {
                return Err(ScriptError::Parse("arc record in an undirected file".into()));
            }
            g.add_vertex(a);
            g.add_vertex(b);
            arcs.push((a, b));
        } else {
            return Err(ScriptError::Parse(format!("unrecognized record: {line}")));
        }
    }
    Ok((g, if header.directed { Some(arcs) } else { None }))
}

pub fn coloring_to_jsonl(c: &Coloring) -> String {
    let mut out = format!("{{\"format\":\"colors\",\"palette\":{}}}\n", c.palette_size);
    for (&v, &col) in &c.assignment {
        out.push_str(&format!("{{\"node\":{v},\"color\":{col}}}\n"));
    }
    out
}

#[derive(Deserialize)]
struct ColorsHeader {
    format: String,
    palette: u32,
}

#[derive(Deserialize)]
struct ColorRecord {
    node: VertexId,
    color: Color,
}

pub fn coloring_from_jsonl(text: &str) -> Result<Coloring, ScriptError> {
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: ColorsHeader = match lines.next() {
        Some(l) => serde_json::from_str(l).map_err(|e| ScriptError::Parse(e.to_string()))?,
        None => return Err(ScriptError::Parse("empty colors file".into())),
    };
    if header.format != "colors" {
        return Err(ScriptError::Parse(format!("not a colors file: {:?}", header.format)));
    }
    let mut c = Coloring::new(header.palette);
    for line in lines {
        let rec: ColorRecord =
            serde_json::from_str(line).map_err(|e| ScriptError::Parse(e.to_string()))?;
        if rec.color < 1 || rec.color > header.palette {
            return Err(ScriptError::Parse(format!(
                "color {} outside palette {}",
                rec.color, header.palette
            )));
        }
        c.set(rec.node, rec.color);
    }
    Ok(c)
}
