//! Repetition detection on colored structures: paths, general graphs, trees,
//! vertical paths in rooted trees and directed paths in digraphs, plus exact
//! minimum-palette search for small instances.
//!
//! All checkers return canonical witnesses: the shortest repetition first,
//! ties broken by the lexicographically smallest vertex sequence.
//! [`check_path`] is the exception; it inherits the leftmost-then-shortest
//! order of [`crate::sequences::find_repetition`], which it delegates to.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::graph::{Color, Graph, VertexId};
use crate::sequences;

/// Default vertex budget for unbounded general-graph and directed checks.
pub const GENERAL_CHECK_BUDGET: usize = 24;
/// Default vertex budget for exact minimum-palette search, full mode.
pub const MIN_COLORS_FULL_BUDGET: usize = 16;
/// Default vertex budget for exact minimum-palette search, vertical and
/// directed modes.
pub const MIN_COLORS_VERTICAL_BUDGET: usize = 24;

/// A concrete repetitively colored path: `color(path[i]) == color(path[i + half_len])`
/// for all `i < half_len`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepetitionWitness {
    pub path: Vec<VertexId>,
    pub half_len: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckError {
    /// The instance exceeds the configured vertex budget for an exhaustive
    /// check; rerun with a bound or a bigger budget.
    SizeGuard { budget: usize, actual: usize },
    NotATree,
}

impl fmt::Display for CheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CheckError::SizeGuard { budget, actual } => {
                write!(f, "graph has {actual} vertices, over the exhaustive-check budget {budget}")
            }
            CheckError::NotATree => write!(f, "graph is not a tree"),
        }
    }
}

impl std::error::Error for CheckError {}

/// Directed simple graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Digraph {
    vertices: BTreeSet<VertexId>,
    arcs: BTreeSet<(VertexId, VertexId)>,
}

impl Digraph {
    pub fn new() -> Self {
        Digraph { vertices: BTreeSet::new(), arcs: BTreeSet::new() }
    }

    pub fn add_vertex(&mut self, v: VertexId) {
        self.vertices.insert(v);
    }

    pub fn add_arc(&mut self, from: VertexId, to: VertexId) {
        assert!(from != to, "self-loop on {from}");
        self.vertices.insert(from);
        self.vertices.insert(to);
        self.arcs.insert((from, to));
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.vertices.iter().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn has_arc(&self, from: VertexId, to: VertexId) -> bool {
        self.arcs.contains(&(from, to))
    }

    /// Replaces every edge of `g` by two opposite arcs.
    pub fn bidirect(g: &Graph) -> Self {
        let mut d = Digraph::new();
        for v in g.vertices() {
            d.add_vertex(v);
        }
        for (a, b) in g.edges() {
            d.add_arc(a, b);
            d.add_arc(b, a);
        }
        d
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::from("{\"format\":\"graph\",\"directed\":true}\n");
        for v in self.vertices() {
            out.push_str(&format!("{{\"node\":{v}}}\n"));
        }
        for (a, b) in self.arcs() {
            out.push_str(&format!("{{\"arc\":[{a},{b}]}}\n"));
        }
        out
    }
}

impl Default for Digraph {
    fn default() -> Self {
        Digraph::new()
    }
}

/// A tree with a distinguished root and the induced parent map.
#[derive(Clone, Debug)]
pub struct RootedTree {
    graph: Graph,
    root: VertexId,
    parent: BTreeMap<VertexId, VertexId>,
}

impl RootedTree {
    pub fn new(graph: Graph, root: VertexId) -> Result<Self, CheckError> {
        if !graph.has_vertex(root) || !graph.is_tree_graph() {
            return Err(CheckError::NotATree);
        }
        let mut parent = BTreeMap::new();
        let mut stack = vec![root];
        let mut seen = BTreeSet::from([root]);
        while let Some(v) = stack.pop() {
            for w in graph.neighbors(v) {
                if seen.insert(w) {
                    parent.insert(w, v);
                    stack.push(w);
                }
            }
        }
        Ok(RootedTree { graph, root, parent })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn root(&self) -> VertexId {
        self.root
    }

    pub fn parent(&self, v: VertexId) -> Option<VertexId> {
        self.parent.get(&v).copied()
    }

    /// Walks from `v` toward the root, inclusive.
    pub fn ancestor_chain(&self, v: VertexId) -> Vec<VertexId> {
        let mut chain = vec![v];
        let mut cur = v;
        while let Some(p) = self.parent(cur) {
            chain.push(p);
            cur = p;
        }
        chain
    }

    pub fn is_ancestor_of(&self, a: VertexId, v: VertexId) -> bool {
        self.ancestor_chain(v).contains(&a)
    }
}

fn path_colors(path: &[VertexId], c: &crate::graph::Coloring) -> Vec<Color> {
    path.iter().map(|&v| c.color(v)).collect()
}

fn is_square(colors: &[Color]) -> bool {
    let l = colors.len() / 2;
    colors.len() % 2 == 0 && l > 0 && (0..l).all(|i| colors[i] == colors[i + l])
}

// ---------------------------------------------------------------------------
// Dense scratch representation shared by the exhaustive checkers.

struct Dense {
    ids: Vec<VertexId>,
    adj: Vec<Vec<usize>>,
    colors: Vec<Color>,
}

fn dense_undirected(g: &Graph, c: &crate::graph::Coloring) -> Dense {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); ids.len()];
    for (a, b) in g.edges() {
        let (ia, ib) = (index[&a], index[&b]);
        adj[ia].push(ib);
        adj[ib].push(ia);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let colors = ids.iter().map(|&v| c.color(v)).collect();
    Dense { ids, adj, colors }
}

fn dense_directed(d: &Digraph, c: &crate::graph::Coloring) -> Dense {
    let ids: Vec<VertexId> = d.vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut adj = vec![Vec::new(); ids.len()];
    for (a, b) in d.arcs() {
        adj[index[&a]].push(index[&b]);
    }
    for l in &mut adj {
        l.sort_unstable();
    }
    let colors = ids.iter().map(|&v| c.color(v)).collect();
    Dense { ids, adj, colors }
}

/// Level-wise lexicographic DFS for a repetitively colored simple path of
/// exactly `2l` vertices. Positions at or past the half length are pruned
/// against their mirror, so only genuine square candidates are walked.
fn find_square_path(d: &Dense, bound: usize) -> Option<RepetitionWitness> {
    let n = d.ids.len();
    fn extend(d: &Dense, l: usize, path: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let m = path.len();
        if m == 2 * l {
            return true;
        }
        let last = *path.last().unwrap();
        for &w in &d.adj[last] {
            if used[w] {
                continue;
            }
            if m >= l && d.colors[w] != d.colors[path[m - l]] {
                continue;
            }
            used[w] = true;
            path.push(w);
            if extend(d, l, path, used) {
                return true;
            }
            path.pop();
            used[w] = false;
        }
        false
    }
    for l in 1..=bound {
        if 2 * l > n {
            break;
        }
        for start in 0..n {
            let mut used = vec![false; n];
            used[start] = true;
            let mut path = vec![start];
            if extend(d, l, &mut path, &mut used) {
                return Some(RepetitionWitness {
                    path: path.into_iter().map(|i| d.ids[i]).collect(),
                    half_len: l,
                });
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Checkers.

/// Checks the color string of a path graph given in path order. Delegates to
/// [`sequences::find_repetition`]; the witness carries the path positions.
pub fn check_path(colors: &[Color]) -> Option<RepetitionWitness> {
    sequences::find_repetition(colors).map(|sq| RepetitionWitness {
        path: (sq.start..sq.start + 2 * sq.half_len).map(|i| i as VertexId).collect(),
        half_len: sq.half_len,
    })
}

pub fn check_graph(
    g: &Graph,
    c: &crate::graph::Coloring,
    max_half_len: Option<usize>,
) -> Result<Option<RepetitionWitness>, CheckError> {
    check_graph_budgeted(g, c, max_half_len, GENERAL_CHECK_BUDGET)
}

/// Exhaustive search over simple paths, up to `2 * max_half_len` vertices
/// when bounded. An unbounded check on a graph over `budget` vertices is
/// refused rather than silently attempted.
pub fn check_graph_budgeted(
    g: &Graph,
    c: &crate::graph::Coloring,
    max_half_len: Option<usize>,
    budget: usize,
) -> Result<Option<RepetitionWitness>, CheckError> {
    assert!(c.is_total_on(g), "coloring must be total");
    if max_half_len.is_none() && g.n() > budget {
        return Err(CheckError::SizeGuard { budget, actual: g.n() });
    }
    let bound = max_half_len.unwrap_or(g.n() / 2).min(g.n() / 2);
    let d = dense_undirected(g, c);
    Ok(find_square_path(&d, bound))
}

pub fn check_directed(
    d: &Digraph,
    c: &crate::graph::Coloring,
    max_half_len: Option<usize>,
) -> Result<Option<RepetitionWitness>, CheckError> {
    check_directed_budgeted(d, c, max_half_len, GENERAL_CHECK_BUDGET)
}

pub fn check_directed_budgeted(
    d: &Digraph,
    c: &crate::graph::Coloring,
    max_half_len: Option<usize>,
    budget: usize,
) -> Result<Option<RepetitionWitness>, CheckError> {
    if max_half_len.is_none() && d.n() > budget {
        return Err(CheckError::SizeGuard { budget, actual: d.n() });
    }
    let bound = max_half_len.unwrap_or(d.n() / 2).min(d.n() / 2);
    let dd = dense_directed(d, c);
    Ok(find_square_path(&dd, bound))
}

/// Checks the unique path between every vertex pair of a tree.
pub fn check_tree(
    t: &Graph,
    c: &crate::graph::Coloring,
) -> Result<Option<RepetitionWitness>, CheckError> {
    if !t.is_tree_graph() {
        return Err(CheckError::NotATree);
    }
    assert!(c.is_total_on(t), "coloring must be total");
    let root = t.vertices().min().expect("nonempty tree");
    let rt = RootedTree::new(t.clone(), root)?;
    let ids: Vec<VertexId> = t.vertices().collect();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    for &v in &ids {
        depth.insert(v, rt.ancestor_chain(v).len() - 1);
    }
    let tree_path = |u: VertexId, v: VertexId| -> Vec<VertexId> {
        let (mut a, mut b) = (u, v);
        let mut up = vec![a];
        let mut down = vec![b];
        while depth[&a] > depth[&b] {
            a = rt.parent(a).unwrap();
            up.push(a);
        }
        while depth[&b] > depth[&a] {
            b = rt.parent(b).unwrap();
            down.push(b);
        }
        while a != b {
            a = rt.parent(a).unwrap();
            up.push(a);
            b = rt.parent(b).unwrap();
            down.push(b);
        }
        down.pop();
        up.extend(down.into_iter().rev());
        up
    };
    let n = t.n();
    for l in 1..=n / 2 {
        let mut best: Option<Vec<VertexId>> = None;
        for &u in &ids {
            for &v in &ids {
                if u == v {
                    continue;
                }
                let path = tree_path(u, v);
                if path.len() != 2 * l {
                    continue;
                }
                if is_square(&path_colors(&path, c)) {
                    best = Some(match best {
                        Some(b) if b <= path => b,
                        _ => path,
                    });
                }
            }
        }
        if let Some(path) = best {
            return Ok(Some(RepetitionWitness { path, half_len: l }));
        }
    }
    Ok(None)
}

/// Checks exactly the ancestor-descendant paths of a rooted tree.
pub fn check_vertical(
    t: &RootedTree,
    c: &crate::graph::Coloring,
) -> Option<RepetitionWitness> {
    assert!(c.is_total_on(t.graph()), "coloring must be total");
    let ids: Vec<VertexId> = t.graph().vertices().collect();
    let n = ids.len();
    for l in 1..=n / 2 {
        let mut best: Option<Vec<VertexId>> = None;
        for &w in &ids {
            let chain = t.ancestor_chain(w);
            if chain.len() < 2 * l {
                continue;
            }
            let path = &chain[..2 * l];
            if is_square(&path_colors(path, c)) {
                for cand in [path.to_vec(), path.iter().rev().copied().collect()] {
                    best = Some(match best.take() {
                        Some(b) if b <= cand => b,
                        _ => cand,
                    });
                }
            }
        }
        if let Some(path) = best {
            return Some(RepetitionWitness { path, half_len: l });
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Witness validation.

pub fn validate_witness_graph(
    g: &Graph,
    c: &crate::graph::Coloring,
    w: &RepetitionWitness,
) -> bool {
    w.path.len() == 2 * w.half_len
        && w.half_len > 0
        && w.path.iter().collect::<BTreeSet<_>>().len() == w.path.len()
        && w.path.windows(2).all(|p| g.has_edge(p[0], p[1]))
        && is_square(&path_colors(&w.path, c))
}

pub fn validate_witness_directed(
    d: &Digraph,
    c: &crate::graph::Coloring,
    w: &RepetitionWitness,
) -> bool {
    w.path.len() == 2 * w.half_len
        && w.half_len > 0
        && w.path.iter().collect::<BTreeSet<_>>().len() == w.path.len()
        && w.path.windows(2).all(|p| d.has_arc(p[0], p[1]))
        && is_square(&path_colors(&w.path, c))
}

/// A vertical witness must also run along one ancestor chain.
pub fn validate_witness_vertical(
    t: &RootedTree,
    c: &crate::graph::Coloring,
    w: &RepetitionWitness,
) -> bool {
    let first = *match w.path.first() {
        Some(v) => v,
        None => return false,
    };
    let last = *w.path.last().unwrap();
    let vertical = t.is_ancestor_of(last, first) || t.is_ancestor_of(first, last);
    let chain_ok = w.path.windows(2).all(|p| {
        t.parent(p[0]) == Some(p[1]) || t.parent(p[1]) == Some(p[0])
    });
    vertical
        && chain_ok
        && w.path.len() == 2 * w.half_len
        && w.path.iter().collect::<BTreeSet<_>>().len() == w.path.len()
        && is_square(&path_colors(&w.path, c))
}

// ---------------------------------------------------------------------------
// Incremental square detection through one vertex. Used by the backtracking
// colorers and the online engine: when the rest of the coloring is already
// square-free, any new square must run through the vertex that changed.

/// Path family on a dense indexed structure. `colors[i] == 0` marks an
/// uncolored vertex, which no path may use.
pub(crate) enum FamilyCtx<'a> {
    Full { adj: &'a [Vec<usize>] },
    Directed { out: &'a [Vec<usize>], inn: &'a [Vec<usize>] },
    VerticalTree { parent: &'a [Option<usize>], children: &'a [Vec<usize>] },
}

// Incremental detectors. Each enumerates candidate square paths with the
// mirror constraint enforced during the walk (a position past the half
// length must repeat the color of its mirror), which prunes almost every
// branch immediately, plus a reachability bound that forces the path to
// pass through the pivot vertex.

fn bfs_dist(adj: &[Vec<usize>], colors: &[Color], v: usize) -> Vec<usize> {
    let mut dist = vec![usize::MAX; colors.len()];
    dist[v] = 0;
    let mut queue = std::collections::VecDeque::from([v]);
    while let Some(x) = queue.pop_front() {
        for &w in &adj[x] {
            if colors[w] != 0 && dist[w] == usize::MAX {
                dist[w] = dist[x] + 1;
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Mirror-pruned DFS for a repetitively colored simple path of exactly `2l`
/// vertices that contains `v`. `fwd` lists the legal next vertices, `dist`
/// gives a lower bound on the remaining steps needed to reach `v`.
fn square_dfs_through(
    fwd: &[Vec<usize>],
    colors: &[Color],
    dist_to_v: &[usize],
    v: usize,
    l: usize,
    path: &mut Vec<usize>,
    used: &mut [bool],
    has_v: bool,
) -> bool {
    let m = path.len();
    if m == 2 * l {
        return has_v;
    }
    let last = *path.last().unwrap();
    for &w in &fwd[last] {
        if used[w] || colors[w] == 0 {
            continue;
        }
        if m >= l && colors[w] != colors[path[m - l]] {
            continue;
        }
        let remaining = 2 * l - 1 - m;
        if !has_v && w != v && dist_to_v[w] > remaining {
            continue;
        }
        used[w] = true;
        path.push(w);
        if square_dfs_through(fwd, colors, dist_to_v, v, l, path, used, has_v || w == v) {
            return true;
        }
        path.pop();
        used[w] = false;
    }
    false
}

fn square_through_family(
    fwd: &[Vec<usize>],
    dist_to_v: &[usize],
    colors: &[Color],
    v: usize,
    max_half: usize,
) -> bool {
    let n = colors.len();
    let mut used = vec![false; n];
    for l in 1..=max_half.min(n / 2) {
        let span = 2 * l;
        for start in 0..n {
            if colors[start] == 0 || dist_to_v[start] >= span {
                continue;
            }
            used[start] = true;
            let mut path = vec![start];
            let hit = square_dfs_through(
                fwd,
                colors,
                dist_to_v,
                v,
                l,
                &mut path,
                &mut used,
                start == v,
            );
            used[start] = false;
            if hit {
                return true;
            }
        }
    }
    false
}

impl FamilyCtx<'_> {
    /// True when some family path through `v` carries a repetition, looking
    /// only at colored vertices. `max_half` bounds the repetition half
    /// length; pass the vertex count for an unbounded check.
    pub(crate) fn square_through(&self, colors: &[Color], v: usize, max_half: usize) -> bool {
        debug_assert!(colors[v] != 0);
        match self {
            FamilyCtx::Full { adj } => {
                let dist = bfs_dist(adj, colors, v);
                square_through_family(adj, &dist, colors, v, max_half)
            }
            FamilyCtx::Directed { out, inn } => {
                // Distance from each vertex forward to v, so walk arcs
                // backward from v.
                let dist = bfs_dist(inn, colors, v);
                square_through_family(out, &dist, colors, v, max_half)
            }
            FamilyCtx::VerticalTree { parent, children } => {
                square_through_vertical(parent, children, colors, v, max_half)
            }
        }
    }
}

/// Through-vertex square detection specialized to acyclic colored
/// structures: enumerate chains ending at `v` paired with chains leaving it
/// (first steps into different branches), checking suffix squares as the
/// right side grows. In a tree this visits each (left, right) pair once, so
/// the whole scan is quadratic.
pub(crate) fn square_through_in_tree(adj: &[Vec<usize>], colors: &[Color], v: usize) -> bool {
    let n = colors.len();
    let palette = colors.iter().copied().max().unwrap_or(1).max(1);
    let mut t = TreeThrough {
        adj,
        colors,
        seq: vec![0; 2 * n + 1],
        verts: vec![usize::MAX; 2 * n + 1],
        by_color: vec![std::collections::VecDeque::new(); palette as usize + 1],
        center: n,
        lo: n,
        hi: n,
    };
    t.seq[n] = colors[v];
    t.verts[n] = v;
    t.by_color[colors[v] as usize].push_back(n);
    // Left side empty: right-only chains host squares ending past v.
    if t.dfs_right(v, usize::MAX, usize::MAX) {
        return true;
    }
    let first_lefts: Vec<usize> = adj[v].iter().copied().filter(|&w| colors[w] != 0).collect();
    for &w in &first_lefts {
        t.push_left(w, colors[w]);
        if t.dfs_left(w, v, v, w) {
            return true;
        }
        t.pop_left();
    }
    false
}

struct TreeThrough<'a> {
    adj: &'a [Vec<usize>],
    colors: &'a [Color],
    seq: Vec<Color>,
    verts: Vec<usize>,
    by_color: Vec<std::collections::VecDeque<usize>>,
    center: usize,
    lo: usize,
    hi: usize,
}

impl TreeThrough<'_> {
    fn push_left(&mut self, vertex: usize, color: Color) {
        self.lo -= 1;
        self.seq[self.lo] = color;
        self.verts[self.lo] = vertex;
        self.by_color[color as usize].push_front(self.lo);
    }

    fn pop_left(&mut self) {
        let color = self.seq[self.lo];
        self.by_color[color as usize].pop_front();
        self.lo += 1;
    }

    fn push_right(&mut self, vertex: usize, color: Color) {
        self.hi += 1;
        self.seq[self.hi] = color;
        self.verts[self.hi] = vertex;
        self.by_color[color as usize].push_back(self.hi);
    }

    fn pop_right(&mut self) {
        let color = self.seq[self.hi];
        self.by_color[color as usize].pop_back();
        self.hi -= 1;
    }

    /// A square inside `[lo, hi]` ending at `hi` and covering the center.
    fn square_ending_at_hi(&self) -> bool {
        let m = self.hi;
        let l_min = (m + 1 - self.center).div_ceil(2).max(1);
        let l_max = (m + 1 - self.lo) / 2;
        if l_min > l_max {
            return false;
        }
        for &p in self.by_color[self.seq[m] as usize].iter().rev() {
            if p + l_min > m {
                continue;
            }
            if p + l_max < m {
                break;
            }
            let l = m - p;
            let start = m + 1 - 2 * l;
            if (0..l - 1).all(|i| self.seq[start + i] == self.seq[start + l + i]) {
                return true;
            }
        }
        false
    }

    /// A square inside `[lo, hi]` starting at `lo` and covering the center.
    fn square_starting_at_lo(&self) -> bool {
        let s = self.lo;
        let l_min = (self.center + 1 - s).div_ceil(2).max(1);
        let l_max = (self.hi + 1 - s) / 2;
        if l_min > l_max {
            return false;
        }
        for &p in self.by_color[self.seq[s] as usize].iter() {
            if p < s + l_min {
                continue;
            }
            if p > s + l_max {
                break;
            }
            let l = p - s;
            if (1..l).all(|i| self.seq[s + i] == self.seq[s + l + i]) {
                return true;
            }
        }
        false
    }

    fn dfs_left(&mut self, cur: usize, prev: usize, v: usize, first_left: usize) -> bool {
        if self.square_starting_at_lo() {
            return true;
        }
        if self.dfs_right(v, usize::MAX, first_left) {
            return true;
        }
        for i in 0..self.adj[cur].len() {
            let w = self.adj[cur][i];
            if w == prev || self.colors[w] == 0 {
                continue;
            }
            self.push_left(w, self.colors[w]);
            let hit = self.dfs_left(w, cur, v, first_left);
            self.pop_left();
            if hit {
                return true;
            }
        }
        false
    }

    fn dfs_right(&mut self, cur: usize, prev: usize, banned_first: usize) -> bool {
        let at_center = self.hi == self.center;
        for i in 0..self.adj[cur].len() {
            let w = self.adj[cur][i];
            if w == prev || self.colors[w] == 0 {
                continue;
            }
            if at_center && w == banned_first {
                continue;
            }
            self.push_right(w, self.colors[w]);
            let hit = self.square_ending_at_hi() || self.dfs_right(w, cur, banned_first);
            self.pop_right();
            if hit {
                return true;
            }
        }
        false
    }
}

/// Vertical paths are ancestor chains, so walk down to every colored
/// descendant of `v` and scan its upward chain for squares covering `v`.
fn square_through_vertical(
    parent: &[Option<usize>],
    children: &[Vec<usize>],
    colors: &[Color],
    v: usize,
    max_half: usize,
) -> bool {
    let mut stack = vec![v];
    while let Some(bottom) = stack.pop() {
        // The chain from this descendant upward, as colors.
        let mut chain = Vec::new();
        let mut cur = bottom;
        let mut pos_v = None;
        loop {
            if cur == v {
                pos_v = Some(chain.len());
            }
            chain.push(colors[cur]);
            match parent[cur] {
                Some(p) if colors[p] != 0 && chain.len() < 4 * max_half + 2 => cur = p,
                _ => break,
            }
        }
        let pos_v = pos_v.expect("descendant chains pass through v");
        let m = chain.len();
        for l in 1..=max_half.min(m / 2) {
            // Squares [start, start + 2l) covering pos_v.
            let lo = pos_v.saturating_sub(2 * l - 1);
            let hi = pos_v.min(m - 2 * l);
            for start in lo..=hi {
                if chain[start + l - 1] == chain[start + 2 * l - 1]
                    && (0..l - 1).all(|i| chain[start + i] == chain[start + l + i])
                {
                    return true;
                }
            }
        }
        for &w in &children[bottom] {
            if colors[w] != 0 {
                stack.push(w);
            }
        }
    }
    false
}

/// Incremental form of [`check_graph`]: is there a repetition running
/// through `v`? When every earlier prefix of a growing graph was already
/// clean, checking each new vertex this way covers all prefixes, because no
/// class move adds an edge between two old vertices.
pub fn check_graph_through(
    g: &Graph,
    c: &crate::graph::Coloring,
    v: VertexId,
    max_half_len: Option<usize>,
) -> bool {
    let d = dense_undirected(g, c);
    let idx = d.ids.iter().position(|&x| x == v).expect("vertex in graph");
    let ctx = FamilyCtx::Full { adj: &d.adj };
    ctx.square_through(&d.colors, idx, max_half_len.unwrap_or(g.n() / 2).min(g.n() / 2).max(1))
}

/// Incremental form of [`check_tree`]: is there a repetition through `v`?
pub fn check_tree_through(t: &Graph, c: &crate::graph::Coloring, v: VertexId) -> bool {
    debug_assert!(t.is_tree_graph());
    let d = dense_undirected(t, c);
    let idx = d.ids.iter().position(|&x| x == v).expect("vertex in tree");
    square_through_in_tree(&d.adj, &d.colors, idx)
}

// ---------------------------------------------------------------------------
// Exact minimum palette sizes.

/// Backtracking colorer over a family context: vertices in the given order,
/// smallest color first. With `introduce_cap` set, a vertex may use at most
/// one color beyond those already used, which breaks color-name symmetry
/// without losing completeness of the existence question.
pub(crate) fn family_color_search(
    ctx: &FamilyCtx,
    order: &[usize],
    n: usize,
    palette: u32,
    max_half: usize,
    introduce_cap: bool,
) -> Option<Vec<Color>> {
    let mut colors = vec![0u32; n];
    fn rec(
        ctx: &FamilyCtx,
        order: &[usize],
        colors: &mut Vec<Color>,
        at: usize,
        palette: u32,
        max_half: usize,
        introduce_cap: bool,
        max_used: u32,
    ) -> bool {
        if at == order.len() {
            return true;
        }
        let v = order[at];
        let cap = if introduce_cap { palette.min(max_used + 1) } else { palette };
        for color in 1..=cap {
            colors[v] = color;
            if !ctx.square_through(colors, v, max_half)
                && rec(ctx, order, colors, at + 1, palette, max_half, introduce_cap, max_used.max(color))
            {
                return true;
            }
        }
        colors[v] = 0;
        false
    }
    if rec(ctx, order, &mut colors, 0, palette, max_half, introduce_cap, 0) {
        Some(colors)
    } else {
        None
    }
}

fn min_colors_over(ctx: &FamilyCtx, n: usize, max_half: usize) -> u32 {
    let order: Vec<usize> = (0..n).collect();
    for p in 1..=(n as u32) {
        if family_color_search(ctx, &order, n, p, max_half, true).is_some() {
            return p;
        }
    }
    n as u32
}

/// Exact `min` palette size for a nonrepetitive coloring of `g`, by
/// exhaustive search with color-symmetry pruning.
pub fn min_colors(g: &Graph) -> Result<u32, CheckError> {
    min_colors_budgeted(g, MIN_COLORS_FULL_BUDGET)
}

pub fn min_colors_budgeted(g: &Graph, budget: usize) -> Result<u32, CheckError> {
    if g.n() > budget {
        return Err(CheckError::SizeGuard { budget, actual: g.n() });
    }
    if g.n() == 0 {
        return Ok(0);
    }
    let d = dense_undirected(g, &trivial_coloring(g));
    let ctx = FamilyCtx::Full { adj: &d.adj };
    Ok(min_colors_over(&ctx, g.n(), g.n()))
}

/// Exact minimum palette admitting a vertically nonrepetitive coloring.
pub fn min_colors_vertical(t: &RootedTree) -> Result<u32, CheckError> {
    min_colors_vertical_budgeted(t, MIN_COLORS_VERTICAL_BUDGET)
}

pub fn min_colors_vertical_budgeted(t: &RootedTree, budget: usize) -> Result<u32, CheckError> {
    let n = t.graph().n();
    if n > budget {
        return Err(CheckError::SizeGuard { budget, actual: n });
    }
    let ids: Vec<VertexId> = t.graph().vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent = vec![None; n];
    let mut children = vec![Vec::new(); n];
    for &v in &ids {
        if let Some(p) = t.parent(v) {
            parent[index[&v]] = Some(index[&p]);
            children[index[&p]].push(index[&v]);
        }
    }
    for l in &mut children {
        l.sort_unstable();
    }
    let ctx = FamilyCtx::VerticalTree { parent: &parent, children: &children };
    Ok(min_colors_over(&ctx, n, n))
}

/// Exact minimum palette admitting a directed-nonrepetitive coloring.
pub fn min_colors_directed(d: &Digraph) -> Result<u32, CheckError> {
    min_colors_directed_budgeted(d, MIN_COLORS_VERTICAL_BUDGET)
}

pub fn min_colors_directed_budgeted(d: &Digraph, budget: usize) -> Result<u32, CheckError> {
    if d.n() > budget {
        return Err(CheckError::SizeGuard { budget, actual: d.n() });
    }
    if d.n() == 0 {
        return Ok(0);
    }
    let dd = dense_directed(d, &trivial_coloring_digraph(d));
    let ids: Vec<VertexId> = d.vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut inn = vec![Vec::new(); d.n()];
    for (a, b) in d.arcs() {
        inn[index[&b]].push(index[&a]);
    }
    for l in &mut inn {
        l.sort_unstable();
    }
    let ctx = FamilyCtx::Directed { out: &dd.adj, inn: &inn };
    Ok(min_colors_over(&ctx, d.n(), d.n()))
}

fn trivial_coloring(g: &Graph) -> crate::graph::Coloring {
    let mut c = crate::graph::Coloring::new(1);
    for v in g.vertices() {
        c.set(v, 1);
    }
    c
}

fn trivial_coloring_digraph(d: &Digraph) -> crate::graph::Coloring {
    let mut c = crate::graph::Coloring::new(1);
    for v in d.vertices() {
        c.set(v, 1);
    }
    c
}
