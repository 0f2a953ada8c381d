//! Lazy, canonical representations of two universal graphs and the
//! incremental injections of online games into them.
//!
//! `O` hosts every online path. It starts as a single edge; each round
//! subdivides the previous round's new edges and appends one vertex past
//! each end. Identifying vertices with exact dyadic rationals makes both
//! adjacency and the round a vertex appears in closed-form computable, so
//! the graph never has to be materialized beyond what a game touches.
//!
//! `U(k)` hosts every online k-tree: starting from a complete graph on k+1
//! vertices, every round adds one fresh copy vertex per k-clique. Vertices
//! are identified by the clique they attach to plus a copy index, and
//! hash-consed to integer handles.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::graph::{GameEvent, Graph, VertexId};

// ---------------------------------------------------------------------------
// O: the universal online path graph.

/// A vertex of `O`: an exact dyadic height `num / 2^exp`, kept in lowest
/// terms (`exp == 0` or `num` odd). Values outside `[0, 1]` are reached by
/// the appended ends.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OVertexId {
    num: BigInt,
    exp: u32,
}

impl OVertexId {
    pub fn new(num: BigInt, exp: u32) -> Self {
        let mut v = OVertexId { num, exp };
        v.normalize();
        v
    }

    pub fn from_int(i: i64) -> Self {
        OVertexId { num: BigInt::from(i), exp: 0 }
    }

    fn from_bigint(num: BigInt) -> Self {
        OVertexId { num, exp: 0 }
    }

    fn normalize(&mut self) {
        if self.num.is_zero() {
            self.exp = 0;
            return;
        }
        while self.exp > 0 && (&self.num % BigInt::from(2)).is_zero() {
            self.num /= 2;
            self.exp -= 1;
        }
    }

    /// Depth of the dyadic: the least `s` with `q * 2^s` integral.
    pub fn depth(&self) -> u32 {
        self.exp
    }

    /// Numerator after lifting to denominator `2^exp`.
    fn lift(&self, exp: u32) -> BigInt {
        debug_assert!(exp >= self.exp);
        &self.num << (exp - self.exp)
    }

    /// Exact midpoint of two heights.
    pub fn midpoint(a: &OVertexId, b: &OVertexId) -> OVertexId {
        let e = a.exp.max(b.exp);
        OVertexId::new(a.lift(e) + b.lift(e), e + 1)
    }

    pub fn canonical_string(&self) -> String {
        format!("{}/2^{}", self.num, self.exp)
    }

    pub fn parse(text: &str) -> Option<OVertexId> {
        let (num, exp) = text.split_once("/2^")?;
        let num: BigInt = num.parse().ok()?;
        let exp: u32 = exp.parse().ok()?;
        let v = OVertexId { num, exp };
        let mut canon = v.clone();
        canon.normalize();
        if canon == v {
            Some(v)
        } else {
            None
        }
    }
}

impl PartialOrd for OVertexId {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OVertexId {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        let e = self.exp.max(other.exp);
        self.lift(e).cmp(&other.lift(e))
    }
}

impl fmt::Display for OVertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.canonical_string())
    }
}

/// Closed-form adjacency of `O`: two heights are joined exactly when they
/// are consecutive multiples of `2^-d` at the deeper of their two depths,
/// i.e. `|u - v| = 2^-max(d(u), d(v))`.
pub fn o_adjacent(u: &OVertexId, v: &OVertexId) -> bool {
    if u == v {
        return false;
    }
    let e = u.exp.max(v.exp);
    (u.lift(e) - v.lift(e)).abs().is_one()
}

/// Closed-form first round containing a height: its integer distance from
/// `[0, 1]` rounded outward, plus its depth, plus one.
pub fn o_stage(q: &OVertexId) -> u32 {
    let den: BigInt = BigInt::one() << q.exp;
    let dist: BigInt = if q.num.is_negative() {
        (-&q.num + (&den - 1)) / &den
    } else if q.num > den {
        (&q.num - 1) / &den
    } else {
        BigInt::zero()
    };
    let dist_u32: u32 = dist.try_into().expect("stage fits in u32");
    dist_u32 + q.exp + 1
}

/// `O_depth` built directly from the construction rules; the closed forms
/// above are validated against this.
pub struct OMaterialization {
    pub vertices: Vec<OVertexId>,
    pub edges: Vec<(OVertexId, OVertexId)>,
}

pub fn materialize_o(depth: u32) -> OMaterialization {
    assert!(depth >= 1 && depth <= 16, "materialized O grows as 2^depth");
    let zero = OVertexId::from_int(0);
    let one = OVertexId::from_int(1);
    let mut vertices = vec![zero.clone(), one.clone()];
    let mut edges = vec![(zero.clone(), one.clone())];
    let mut new_edges = vec![(zero, one)];
    let mut lo = BigInt::zero();
    let mut hi = BigInt::one();
    for _ in 1..depth {
        let mut next_new = Vec::new();
        for (a, b) in &new_edges {
            let m = OVertexId::midpoint(a, b);
            vertices.push(m.clone());
            edges.push((a.clone(), m.clone()));
            edges.push((m.clone(), b.clone()));
            next_new.push((a.clone(), m.clone()));
            next_new.push((m, b.clone()));
        }
        lo -= 1;
        hi += 1;
        let lo_v = OVertexId::from_bigint(lo.clone());
        let lo_next = OVertexId::from_bigint(&lo + 1);
        let hi_v = OVertexId::from_bigint(hi.clone());
        let hi_prev = OVertexId::from_bigint(&hi - 1);
        vertices.push(lo_v.clone());
        vertices.push(hi_v.clone());
        edges.push((lo_v.clone(), lo_next.clone()));
        edges.push((hi_prev.clone(), hi_v.clone()));
        next_new.push((lo_v, lo_next));
        next_new.push((hi_prev, hi_v));
        new_edges = next_new;
    }
    OMaterialization { vertices, edges }
}

/// Numbered dump of `O_depth`, vertices sorted by height. Returns the
/// undirected graph and the id-to-height sidecar.
pub fn o_graph(depth: u32) -> (Graph, Vec<(VertexId, OVertexId)>) {
    let mat = materialize_o(depth);
    let mut heights = mat.vertices;
    heights.sort();
    let index: BTreeMap<OVertexId, VertexId> = heights
        .iter()
        .enumerate()
        .map(|(i, q)| (q.clone(), i as VertexId + 1))
        .collect();
    let mut g = Graph::with_vertices(1..=heights.len() as u32);
    for (a, b) in &mat.edges {
        g.add_edge(index[a], index[b]);
    }
    let sidecar = heights
        .into_iter()
        .enumerate()
        .map(|(i, q)| (i as VertexId + 1, q))
        .collect();
    (g, sidecar)
}

// ---------------------------------------------------------------------------
// U(k): the universal online k-tree.

/// Interned handle for a vertex of `U(k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UVertexId(u32);

/// Structural identity of a `U(k)` vertex, independent of any interner:
/// either one of the k+1 starting vertices, or the j-th copy hung on a
/// k-clique. Clique members are kept sorted by this type's order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum UCanon {
    Base(u16),
    Derived(Vec<UCanon>, u32),
}

impl UCanon {
    pub fn canonical_string(&self) -> String {
        match self {
            UCanon::Base(i) => format!("b{i}"),
            UCanon::Derived(clique, copy) => {
                let members: Vec<String> =
                    clique.iter().map(|m| m.canonical_string()).collect();
                format!("[{}]:{}", members.join(","), copy)
            }
        }
    }

    pub fn parse(text: &str) -> Option<UCanon> {
        if let Some(i) = text.strip_prefix('b') {
            return Some(UCanon::Base(i.parse().ok()?));
        }
        let inner = text.strip_prefix('[')?;
        // Split "members]:copy" at the bracket that closes the clique.
        let mut depth = 1usize;
        let mut close = None;
        for (pos, ch) in inner.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => {
                    depth -= 1;
                    if depth == 0 {
                        close = Some(pos);
                        break;
                    }
                }
                _ => {}
            }
        }
        let close = close?;
        let members_text = &inner[..close];
        let copy: u32 = inner[close + 1..].strip_prefix(':')?.parse().ok()?;
        let mut members = Vec::new();
        let mut start = 0;
        let mut depth = 0usize;
        for (pos, ch) in members_text.char_indices() {
            match ch {
                '[' => depth += 1,
                ']' => depth -= 1,
                ',' if depth == 0 => {
                    members.push(UCanon::parse(&members_text[start..pos])?);
                    start = pos + 1;
                }
                _ => {}
            }
        }
        members.push(UCanon::parse(&members_text[start..])?);
        Some(UCanon::Derived(members, copy))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum UNode {
    Base(u16),
    Derived { clique: Vec<UVertexId>, copy: u32 },
}

/// Hash-consing table for `U(k)` vertices. Only vertices a session touches
/// are ever materialized.
pub struct UInterner {
    k: u8,
    nodes: Vec<UNode>,
    stages: Vec<u32>,
    index: HashMap<UNode, UVertexId>,
}

impl UInterner {
    pub fn new(k: u8) -> Self {
        assert!(k >= 1, "k-trees need k >= 1");
        let mut interner = UInterner {
            k,
            nodes: Vec::new(),
            stages: Vec::new(),
            index: HashMap::new(),
        };
        for i in 0..=k as u16 {
            interner.insert(UNode::Base(i), 1);
        }
        interner
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    fn insert(&mut self, node: UNode, stage: u32) -> UVertexId {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = UVertexId(self.nodes.len() as u32);
        self.nodes.push(node.clone());
        self.stages.push(stage);
        self.index.insert(node, id);
        id
    }

    pub fn base(&self, i: u16) -> UVertexId {
        assert!(i <= self.k as u16);
        UVertexId(i as u32)
    }

    /// Interns the `copy`-th vertex hung on `clique`. The members must be
    /// pairwise adjacent and exactly k of them.
    pub fn derived(&mut self, clique: &[UVertexId], copy: u32) -> UVertexId {
        assert_eq!(clique.len(), self.k as usize, "clique must have k members");
        assert!(copy >= 1);
        let mut sorted = clique.to_vec();
        sorted.sort_by(|&a, &b| self.structural_cmp(a, b));
        sorted.dedup();
        assert_eq!(sorted.len(), self.k as usize, "clique members must be distinct");
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                assert!(
                    self.adjacent(sorted[i], sorted[j]),
                    "clique members must be pairwise adjacent"
                );
            }
        }
        let stage = sorted.iter().map(|&m| self.stage(m)).max().unwrap() + copy;
        self.insert(UNode::Derived { clique: sorted, copy }, stage)
    }

    /// First construction round that contains the vertex.
    pub fn stage(&self, v: UVertexId) -> u32 {
        self.stages[v.0 as usize]
    }

    /// Adjacency of `U(k)`: the starting vertices are pairwise adjacent, and
    /// a copy vertex is adjacent exactly to its clique members.
    pub fn adjacent(&self, a: UVertexId, b: UVertexId) -> bool {
        if a == b {
            return false;
        }
        match (&self.nodes[a.0 as usize], &self.nodes[b.0 as usize]) {
            (UNode::Base(_), UNode::Base(_)) => true,
            (UNode::Derived { clique, .. }, _) if clique.contains(&b) => true,
            (_, UNode::Derived { clique, .. }) if clique.contains(&a) => true,
            _ => false,
        }
    }

    /// Session-independent total order on structural identities.
    pub fn structural_cmp(&self, a: UVertexId, b: UVertexId) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        if a == b {
            return Ordering::Equal;
        }
        match (&self.nodes[a.0 as usize], &self.nodes[b.0 as usize]) {
            (UNode::Base(i), UNode::Base(j)) => i.cmp(j),
            (UNode::Base(_), UNode::Derived { .. }) => Ordering::Less,
            (UNode::Derived { .. }, UNode::Base(_)) => Ordering::Greater,
            (
                UNode::Derived { clique: qa, copy: ca },
                UNode::Derived { clique: qb, copy: cb },
            ) => {
                for (&x, &y) in qa.iter().zip(qb.iter()) {
                    match self.structural_cmp(x, y) {
                        Ordering::Equal => {}
                        other => return other,
                    }
                }
                qa.len().cmp(&qb.len()).then(ca.cmp(cb))
            }
        }
    }

    pub fn canon(&self, v: UVertexId) -> UCanon {
        match &self.nodes[v.0 as usize] {
            UNode::Base(i) => UCanon::Base(*i),
            UNode::Derived { clique, copy } => {
                UCanon::Derived(clique.iter().map(|&m| self.canon(m)).collect(), *copy)
            }
        }
    }

    pub fn intern_canon(&mut self, canon: &UCanon) -> UVertexId {
        match canon {
            UCanon::Base(i) => self.base(*i),
            UCanon::Derived(members, copy) => {
                let handles: Vec<UVertexId> =
                    members.iter().map(|m| self.intern_canon(m)).collect();
                self.derived(&handles, *copy)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UniversalError {
    SizeGuard { budget: usize, projected: usize },
    InvalidEvent(String),
}

impl fmt::Display for UniversalError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UniversalError::SizeGuard { budget, projected } => {
                write!(f, "materialization would reach {projected} vertices, over budget {budget}")
            }
            UniversalError::InvalidEvent(m) => write!(f, "invalid event: {m}"),
        }
    }
}

impl std::error::Error for UniversalError {}

pub const U_MATERIALIZE_BUDGET: usize = 200_000;

/// Materializes all vertices of `U_stage` in canonical order: round by
/// round, base cliques first, then each copy vertex's cliques in order of
/// the dropped member.
pub fn materialize_u(
    interner: &mut UInterner,
    stage: u32,
    budget: usize,
) -> Result<Vec<UVertexId>, UniversalError> {
    assert!(stage >= 1);
    let k = interner.k() as usize;
    let mut verts: Vec<UVertexId> = (0..=k as u16).map(|i| interner.base(i)).collect();
    for s in 2..=stage {
        // Every k-clique of the previous round gets one more copy. A clique
        // is either all-base or determined by its newest copy vertex.
        let mut cliques: Vec<Vec<UVertexId>> = Vec::new();
        for drop in (0..=k).rev() {
            let members: Vec<UVertexId> = (0..=k)
                .filter(|&i| i != drop)
                .map(|i| interner.base(i as u16))
                .collect();
            cliques.push(members);
        }
        for &v in &verts {
            if let UNode::Derived { clique, .. } = &interner.nodes[v.0 as usize] {
                let clique = clique.clone();
                for drop in 0..k {
                    let mut members: Vec<UVertexId> = clique
                        .iter()
                        .enumerate()
                        .filter(|&(i, _)| i != drop)
                        .map(|(_, &m)| m)
                        .collect();
                    members.push(v);
                    cliques.push(members);
                }
            }
        }
        let projected = verts.len() + cliques.len();
        if projected > budget {
            return Err(UniversalError::SizeGuard { budget, projected });
        }
        for clique in cliques {
            let max_stage = clique.iter().map(|&m| interner.stage(m)).max().unwrap();
            let copy = s - max_stage;
            verts.push(interner.derived(&clique, copy));
        }
    }
    Ok(verts)
}

/// Vertex count of `U_stage`, by materializing it.
pub fn u_count(k: u8, stage: u32) -> Result<usize, UniversalError> {
    let mut interner = UInterner::new(k);
    Ok(materialize_u(&mut interner, stage, U_MATERIALIZE_BUDGET)?.len())
}

/// Numbered dump of `U_stage` in canonical order, plus the id-to-identity
/// sidecar.
pub fn u_graph(
    k: u8,
    stage: u32,
) -> Result<(Graph, Vec<(VertexId, UCanon)>), UniversalError> {
    let mut interner = UInterner::new(k);
    let verts = materialize_u(&mut interner, stage, U_MATERIALIZE_BUDGET)?;
    let mut g = Graph::with_vertices(1..=verts.len() as u32);
    for i in 0..verts.len() {
        for j in i + 1..verts.len() {
            if interner.adjacent(verts[i], verts[j]) {
                g.add_edge(i as u32 + 1, j as u32 + 1);
            }
        }
    }
    let sidecar = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (i as VertexId + 1, interner.canon(v)))
        .collect();
    Ok((g, sidecar))
}

// ---------------------------------------------------------------------------
// Embeddings of online games.

/// Incremental injection of an online path game into `O`. Never rewrites an
/// entry: each step extends the map by exactly one vertex.
#[derive(Clone, Debug)]
pub struct PathEmbedding {
    map: BTreeMap<VertexId, OVertexId>,
    lo: BigInt,
    hi: BigInt,
}

impl PathEmbedding {
    /// Seeds the injection: the first game vertex sits at height 0, and the
    /// first append will sit at height 1 (the other end of the starting
    /// edge). Later appends extend past the current extreme heights.
    pub fn start(first_vertex: VertexId) -> Self {
        let mut map = BTreeMap::new();
        map.insert(first_vertex, OVertexId::from_int(0));
        PathEmbedding { map, lo: BigInt::zero(), hi: BigInt::zero() }
    }

    pub fn image(&self, v: VertexId) -> Option<&OVertexId> {
        self.map.get(&v)
    }

    pub fn images(&self) -> impl Iterator<Item = (VertexId, &OVertexId)> {
        self.map.iter().map(|(&v, q)| (v, q))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Maps one legal path event: an end-append goes one past the extreme
    /// height at that end, a subdivision goes to the exact midpoint of the
    /// subdivided edge's image.
    pub fn extend(
        &mut self,
        g_prev: &Graph,
        e: &GameEvent,
    ) -> Result<OVertexId, UniversalError> {
        if self.map.contains_key(&e.v) {
            return Err(UniversalError::InvalidEvent(format!("vertex {} already embedded", e.v)));
        }
        let image = if e.attach.len() == 1 && e.delete.is_empty() {
            let x = *e.attach.iter().next().unwrap();
            let qx = self
                .map
                .get(&x)
                .ok_or_else(|| UniversalError::InvalidEvent(format!("vertex {x} not embedded")))?;
            if g_prev.n() == 1 {
                self.hi = BigInt::one();
                OVertexId::from_bigint(self.hi.clone())
            } else if *qx == OVertexId::from_bigint(self.hi.clone()) {
                self.hi += 1;
                OVertexId::from_bigint(self.hi.clone())
            } else if *qx == OVertexId::from_bigint(self.lo.clone()) {
                self.lo -= 1;
                OVertexId::from_bigint(self.lo.clone())
            } else {
                return Err(UniversalError::InvalidEvent(format!(
                    "append target {x} is not at an extreme height"
                )));
            }
        } else if e.attach.len() == 2 && e.delete.len() == 1 {
            let mut it = e.attach.iter();
            let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
            let qa = self
                .map
                .get(&a)
                .ok_or_else(|| UniversalError::InvalidEvent(format!("vertex {a} not embedded")))?;
            let qb = self
                .map
                .get(&b)
                .ok_or_else(|| UniversalError::InvalidEvent(format!("vertex {b} not embedded")))?;
            debug_assert!(o_adjacent(qa, qb), "subdivided edge must map to an edge of O");
            OVertexId::midpoint(qa, qb)
        } else {
            return Err(UniversalError::InvalidEvent("not a path move".into()));
        };
        debug_assert!(!self.map.values().any(|q| *q == image), "images must stay injective");
        self.map.insert(e.v, image.clone());
        Ok(image)
    }
}

/// True when the embedded heights strictly increase along the path read from
/// one end to the other.
pub fn image_is_vertical(emb: &PathEmbedding, g: &Graph) -> bool {
    let Some(order) = g.path_order() else {
        return false;
    };
    let heights: Vec<&OVertexId> = match order.iter().map(|v| emb.image(*v)).collect() {
        Some(h) => h,
        None => return false,
    };
    heights.windows(2).all(|w| w[0] < w[1]) || heights.windows(2).all(|w| w[0] > w[1])
}

/// Incremental injection of an online k-tree game into `U(k)`. Copy indices
/// are allocated per clique, smallest unused first, which pins the injection
/// for replays and shared prefixes.
#[derive(Clone)]
pub struct KTreeEmbedding {
    map: BTreeMap<VertexId, UVertexId>,
    counters: HashMap<Vec<UVertexId>, u32>,
}

impl KTreeEmbedding {
    /// Maps the k+1 starting vertices onto the base clique in id order.
    pub fn start(interner: &UInterner, base_vertices: &[VertexId]) -> Self {
        assert_eq!(base_vertices.len(), interner.k() as usize + 1);
        let map = base_vertices
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, interner.base(i as u16)))
            .collect();
        KTreeEmbedding { map, counters: HashMap::new() }
    }

    pub fn image(&self, v: VertexId) -> Option<UVertexId> {
        self.map.get(&v).copied()
    }

    pub fn images(&self) -> impl Iterator<Item = (VertexId, UVertexId)> + '_ {
        self.map.iter().map(|(&v, &u)| (v, u))
    }

    /// Maps one attachment to a k-clique onto the next unused copy vertex of
    /// the clique's image.
    pub fn extend(
        &mut self,
        interner: &mut UInterner,
        attach: &BTreeSet<VertexId>,
        v: VertexId,
    ) -> Result<UVertexId, UniversalError> {
        if self.map.contains_key(&v) {
            return Err(UniversalError::InvalidEvent(format!("vertex {v} already embedded")));
        }
        if attach.len() != interner.k() as usize {
            return Err(UniversalError::InvalidEvent(format!(
                "attach set has {} members, expected {}",
                attach.len(),
                interner.k()
            )));
        }
        let mut clique = Vec::with_capacity(attach.len());
        for &a in attach {
            clique.push(self.map.get(&a).copied().ok_or_else(|| {
                UniversalError::InvalidEvent(format!("vertex {a} not embedded"))
            })?);
        }
        clique.sort_by(|&a, &b| interner.structural_cmp(a, b));
        let next = self.counters.entry(clique.clone()).or_insert(1);
        let copy = *next;
        *next += 1;
        let image = interner.derived(&clique, copy);
        self.map.insert(v, image);
        Ok(image)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::apply_event;

    fn dy(num: i64, exp: u32) -> OVertexId {
        OVertexId::new(BigInt::from(num), exp)
    }

    #[test]
    fn o_adjacency_examples() {
        assert!(o_adjacent(&dy(0, 0), &dy(1, 0)));
        assert!(o_adjacent(&dy(0, 0), &dy(1, 1)));
        assert!(!o_adjacent(&dy(1, 2), &dy(3, 2)));
        assert!(o_adjacent(&dy(-1, 0), &dy(0, 0)));
        assert!(o_adjacent(&dy(1, 3), &dy(1, 2)));
        assert!(!o_adjacent(&dy(1, 3), &dy(3, 3)));
        assert!(!o_adjacent(&dy(1, 1), &dy(1, 1)));
    }

    #[test]
    fn o_stage_examples() {
        assert_eq!(o_stage(&dy(0, 0)), 1);
        assert_eq!(o_stage(&dy(1, 0)), 1);
        assert_eq!(o_stage(&dy(1, 1)), 2);
        assert_eq!(o_stage(&dy(-1, 0)), 2);
        assert_eq!(o_stage(&dy(2, 0)), 2);
        assert_eq!(o_stage(&dy(-1, 1)), 3);
        assert_eq!(o_stage(&dy(3, 1)), 3);
        assert_eq!(o_stage(&dy(-3, 1)), 4);
        assert_eq!(o_stage(&dy(5, 1)), 4);
    }

    #[test]
    fn o_vertex_counts() {
        let expected = [2usize, 5, 11, 23, 47];
        for (i, &n) in expected.iter().enumerate() {
            let mat = materialize_o(i as u32 + 1);
            assert_eq!(mat.vertices.len(), n, "O_{}", i + 1);
            // The closed form sees exactly the same vertex set.
            assert!(mat.vertices.iter().all(|q| o_stage(q) <= i as u32 + 1));
        }
    }

    #[test]
    fn closed_forms_match_recursive_construction() {
        let mat = materialize_o(6);
        assert_eq!(mat.vertices.len(), 95);
        let edge_set: BTreeSet<(OVertexId, OVertexId)> = mat
            .edges
            .iter()
            .map(|(a, b)| if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) })
            .collect();
        for (i, a) in mat.vertices.iter().enumerate() {
            assert_eq!(o_stage(a), stage_by_construction(a), "stage of {a}");
            for b in mat.vertices.iter().skip(i + 1) {
                let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                assert_eq!(
                    o_adjacent(a, b),
                    edge_set.contains(&key),
                    "adjacency of {a} and {b}"
                );
            }
        }
    }

    fn stage_by_construction(q: &OVertexId) -> u32 {
        for d in 1..=8 {
            if materialize_o(d).vertices.contains(q) {
                return d;
            }
        }
        panic!("{q} not found up to O_8");
    }

    #[test]
    fn midpoint_is_exact() {
        assert_eq!(OVertexId::midpoint(&dy(0, 0), &dy(1, 0)), dy(1, 1));
        assert_eq!(OVertexId::midpoint(&dy(1, 1), &dy(1, 0)), dy(3, 2));
        assert_eq!(OVertexId::midpoint(&dy(-1, 0), &dy(0, 0)), dy(-1, 1));
    }

    #[test]
    fn canonical_string_round_trip() {
        for q in [dy(0, 0), dy(1, 1), dy(-5, 3), dy(7, 0)] {
            assert_eq!(OVertexId::parse(&q.canonical_string()), Some(q.clone()));
        }
        // Non-canonical text is rejected.
        assert_eq!(OVertexId::parse("2/2^1"), None);
    }

    #[test]
    fn u_adjacency_examples() {
        let mut interner = UInterner::new(2);
        let (b0, b1, b2) = (interner.base(0), interner.base(1), interner.base(2));
        assert!(interner.adjacent(b0, b2));
        let d1 = interner.derived(&[b0, b1], 1);
        let d2 = interner.derived(&[b0, b1], 2);
        assert!(!interner.adjacent(d1, d2));
        assert!(interner.adjacent(d1, b0));
        assert!(interner.adjacent(d1, b1));
        assert!(!interner.adjacent(d1, b2));

        let mut i1 = UInterner::new(1);
        let (a0, a1) = (i1.base(0), i1.base(1));
        let c = i1.derived(&[a0], 1);
        assert!(i1.adjacent(c, a0));
        assert!(!i1.adjacent(c, a1));
    }

    #[test]
    fn u_counts_match_the_copy_recurrence() {
        // One new copy per k-clique per round gives
        // v_{s+1} = (k+1) * (v_s - k + 1).
        for k in 1..=2u8 {
            let mut expect = k as usize + 1;
            for s in 1..=4u32 {
                assert_eq!(u_count(k, s).unwrap(), expect, "k {k} stage {s}");
                expect = (k as usize + 1) * (expect - k as usize + 1);
            }
        }
        assert_eq!(u_count(1, 4).unwrap(), 16);
        assert_eq!(u_count(2, 4).unwrap(), 42);
    }

    #[test]
    fn u_stages_are_k_trees() {
        for k in 1..=2u8 {
            for s in 1..=4u32 {
                let (g, _) = u_graph(k, s).unwrap();
                assert!(crate::graph::is_k_tree(&g, k), "U({k}) stage {s}");
            }
        }
    }

    #[test]
    fn u_canon_round_trip() {
        let mut interner = UInterner::new(2);
        let (b0, b1, b2) = (interner.base(0), interner.base(1), interner.base(2));
        let d1 = interner.derived(&[b0, b1], 1);
        let d2 = interner.derived(&[d1, b0], 3);
        let _ = b2;
        for v in [b0, d1, d2] {
            let canon = interner.canon(v);
            let text = canon.canonical_string();
            assert_eq!(UCanon::parse(&text), Some(canon.clone()));
            assert_eq!(interner.intern_canon(&canon), v);
        }
        assert_eq!(interner.canon(d2).canonical_string(), "[b0,[b0,b1]:1]:3");
    }

    #[test]
    fn ktree_embedding_allocates_copies_in_order() {
        let mut interner = UInterner::new(2);
        let mut emb = KTreeEmbedding::start(&interner, &[1, 2, 3]);
        let attach: BTreeSet<u32> = [1, 2].into_iter().collect();
        let first = emb.extend(&mut interner, &attach, 4).unwrap();
        let second = emb.extend(&mut interner, &attach, 5).unwrap();
        assert_eq!(interner.canon(first).canonical_string(), "[b0,b1]:1");
        assert_eq!(interner.canon(second).canonical_string(), "[b0,b1]:2");
        assert_ne!(first, second);
        // Attaching to the new vertex's clique starts its own counter.
        let attach2: BTreeSet<u32> = [1, 4].into_iter().collect();
        let third = emb.extend(&mut interner, &attach2, 6).unwrap();
        assert_eq!(interner.canon(third).canonical_string(), "[b0,[b0,b1]:1]:1");
    }

    #[test]
    fn ktree_embedding_replay_is_deterministic() {
        let events: Vec<(Vec<u32>, u32)> =
            vec![(vec![1, 2], 4), (vec![2, 3], 5), (vec![1, 2], 6), (vec![2, 5], 7)];
        let run = || {
            let mut interner = UInterner::new(2);
            let mut emb = KTreeEmbedding::start(&interner, &[1, 2, 3]);
            let mut out = Vec::new();
            for (attach, v) in &events {
                let set: BTreeSet<u32> = attach.iter().copied().collect();
                let img = emb.extend(&mut interner, &set, *v).unwrap();
                out.push(interner.canon(img).canonical_string());
            }
            out
        };
        assert_eq!(run(), run());
    }

    #[test]
    fn path_embedding_seeding_and_midpoints() {
        let mut g = Graph::with_vertices([1]);
        let mut emb = PathEmbedding::start(1);
        assert_eq!(emb.image(1), Some(&dy(0, 0)));
        let e = GameEvent::add(2, [1]);
        let img = emb.extend(&g, &e).unwrap();
        assert_eq!(img, dy(1, 0));
        g = apply_event(&g, &e).unwrap();
        let e = GameEvent::subdivide(3, 1, 2);
        let img = emb.extend(&g, &e).unwrap();
        assert_eq!(img, dy(1, 1));
        g = apply_event(&g, &e).unwrap();
        // Appending at the low end goes negative.
        let e = GameEvent::add(4, [1]);
        let img = emb.extend(&g, &e).unwrap();
        assert_eq!(img, dy(-1, 0));
        g = apply_event(&g, &e).unwrap();
        assert!(image_is_vertical(&emb, &g));
    }

    #[test]
    fn nine_vertex_game_embeds_monotonically() {
        // append, append, subdivide, subdivide, append-low, subdivide, ...
        let mut g = Graph::with_vertices([1]);
        let mut emb = PathEmbedding::start(1);
        let events = vec![
            GameEvent::add(2, [1]),
            GameEvent::add(3, [2]),
            GameEvent::subdivide(4, 1, 2),
            GameEvent::subdivide(5, 4, 2),
            GameEvent::add(6, [1]),
            GameEvent::subdivide(7, 6, 1),
            GameEvent::add(8, [3]),
            GameEvent::subdivide(9, 8, 3),
        ];
        for e in &events {
            emb.extend(&g, e).unwrap();
            g = apply_event(&g, e).unwrap();
        }
        assert_eq!(g.n(), 9);
        assert!(g.is_path_graph());
        assert!(image_is_vertical(&emb, &g));
        // Every image is a distinct height.
        let mut seen = BTreeSet::new();
        for (_, q) in emb.images() {
            assert!(seen.insert(q.clone()));
        }
    }

    #[test]
    fn non_monotone_assignment_is_rejected() {
        let mut g = Graph::with_vertices([1]);
        g.add_vertex(2);
        g.add_vertex(3);
        g.add_edge(1, 2);
        g.add_edge(2, 3);
        let mut emb = PathEmbedding::start(1);
        // Hand-build a bent map: 1 -> 0, 2 -> 1, 3 -> 1/2.
        emb.map.insert(2, dy(1, 0));
        emb.map.insert(3, dy(1, 1));
        assert!(!image_is_vertical(&emb, &g));
    }
}
