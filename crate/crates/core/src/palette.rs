//! Coloring oracles for the universal graphs, plus a general offline
//! backtracking nonrepetitive colorer.
//!
//! An infinite universal graph cannot ship with a proven coloring, so the
//! oracle is a frozen palette: a deterministic exhaustive-search coloring of
//! the graph up to a declared stage horizon, persisted together with an
//! honest record of how thoroughly it was verified. Games that stay within
//! the horizon get the full guarantee.

use std::collections::BTreeMap;
use std::fmt;

use crate::graph::{Color, Coloring, Graph, VertexId};
use crate::repetition::{self, Digraph, FamilyCtx, RootedTree};
use crate::rng::SplitMix64;
use crate::universal::{
    self, materialize_o, materialize_u, o_stage, OVertexId, UCanon, UInterner,
};

pub const ORDER_VERSION: &str = "v1";

/// Which universal graph a palette colors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PaletteTarget {
    OPath,
    UTree { k: u8 },
}

/// How thoroughly the stored coloring was checked. The level is part of the
/// palette's identity and is re-run when a palette file is loaded.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verification {
    /// Every path of the horizon graph (undirected family; U targets).
    Full,
    /// Every height-monotone path of the horizon graph (O target).
    VerticalFull,
    /// Every family path, repetition half length capped at the bound.
    Bounded(usize),
    /// Random family paths only; an honest spot check, not a guarantee.
    Sampled { samples: u32, max_half: usize, seed: u64 },
}

impl Verification {
    fn as_string(&self) -> String {
        match self {
            Verification::Full => "full".into(),
            Verification::VerticalFull => "vertical-full".into(),
            Verification::Bounded(l) => format!("bounded:{l}"),
            Verification::Sampled { samples, max_half, seed } => {
                format!("sampled:{samples}:{max_half}:{seed}")
            }
        }
    }

    fn parse(text: &str) -> Option<Verification> {
        match text {
            "full" => return Some(Verification::Full),
            "vertical-full" => return Some(Verification::VerticalFull),
            _ => {}
        }
        if let Some(l) = text.strip_prefix("bounded:") {
            return Some(Verification::Bounded(l.parse().ok()?));
        }
        if let Some(rest) = text.strip_prefix("sampled:") {
            let mut it = rest.split(':');
            let samples = it.next()?.parse().ok()?;
            let max_half = it.next()?.parse().ok()?;
            let seed = it.next()?.parse().ok()?;
            if it.next().is_some() {
                return None;
            }
            return Some(Verification::Sampled { samples, max_half, seed });
        }
        None
    }

    /// Half-length cap the search enforces while coloring.
    fn search_cap(&self, n: usize) -> usize {
        match self {
            Verification::Full | Verification::VerticalFull => n,
            Verification::Bounded(l) => *l,
            Verification::Sampled { max_half, .. } => *max_half,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PaletteError {
    /// The exhaustive search ran out of colorings.
    Unsatisfiable,
    SizeGuard { budget: usize, actual: usize },
    HorizonExceeded { stage: u32, horizon: u32 },
    IncompatibleLevel(String),
    Format(String),
    VerificationFailed(String),
}

impl fmt::Display for PaletteError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PaletteError::Unsatisfiable => write!(f, "no coloring exists within the palette"),
            PaletteError::SizeGuard { budget, actual } => {
                write!(f, "instance size {actual} exceeds budget {budget}")
            }
            PaletteError::HorizonExceeded { stage, horizon } => {
                write!(f, "vertex at stage {stage} is beyond the palette horizon {horizon}")
            }
            PaletteError::IncompatibleLevel(m) => write!(f, "incompatible verification level: {m}"),
            PaletteError::Format(m) => write!(f, "palette format error: {m}"),
            PaletteError::VerificationFailed(m) => write!(f, "palette verification failed: {m}"),
        }
    }
}

impl std::error::Error for PaletteError {}

// ---------------------------------------------------------------------------
// Offline coloring of ordinary graphs.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorMode {
    Full,
    Vertical { root: VertexId },
}

/// Deterministic backtracking colorer: vertices in ascending id order,
/// smallest color first, each step checked only through the vertex just
/// colored. The result always passes the matching repetition checker.
pub fn offline_color(
    g: &Graph,
    palette_size: u32,
    mode: ColorMode,
    max_half_len: Option<usize>,
) -> Result<Coloring, PaletteError> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    enum Owned {
        Full(Vec<Vec<usize>>),
        Vertical(Vec<Option<usize>>, Vec<Vec<usize>>),
    }
    let owned = match mode {
        ColorMode::Full => {
            let mut adj = vec![Vec::new(); n];
            for (a, b) in g.edges() {
                adj[index[&a]].push(index[&b]);
                adj[index[&b]].push(index[&a]);
            }
            for l in &mut adj {
                l.sort_unstable();
            }
            Owned::Full(adj)
        }
        ColorMode::Vertical { root } => {
            let t = RootedTree::new(g.clone(), root)
                .map_err(|_| PaletteError::Format("vertical mode needs a tree".into()))?;
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
            Owned::Vertical(parent, children)
        }
    };
    let ctx = match &owned {
        Owned::Full(adj) => FamilyCtx::Full { adj },
        Owned::Vertical(parent, children) => {
            FamilyCtx::VerticalTree { parent, children }
        }
    };
    let order: Vec<usize> = (0..n).collect();
    let cap = max_half_len.unwrap_or(n);
    let colors = repetition::family_color_search(&ctx, &order, n, palette_size, cap, false)
        .ok_or(PaletteError::Unsatisfiable)?;
    let mut out = Coloring::new(palette_size);
    for (i, &v) in ids.iter().enumerate() {
        out.set(v, colors[i]);
    }
    Ok(out)
}

/// Directed-family variant of [`offline_color`].
pub fn offline_color_directed(
    d: &Digraph,
    palette_size: u32,
    max_half_len: Option<usize>,
) -> Result<Coloring, PaletteError> {
    let ids: Vec<VertexId> = d.vertices().collect();
    let index: BTreeMap<VertexId, usize> =
        ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let n = ids.len();
    let mut out_adj = vec![Vec::new(); n];
    let mut in_adj = vec![Vec::new(); n];
    for (a, b) in d.arcs() {
        out_adj[index[&a]].push(index[&b]);
        in_adj[index[&b]].push(index[&a]);
    }
    for l in out_adj.iter_mut().chain(in_adj.iter_mut()) {
        l.sort_unstable();
    }
    let ctx = FamilyCtx::Directed { out: &out_adj, inn: &in_adj };
    let order: Vec<usize> = (0..n).collect();
    let cap = max_half_len.unwrap_or(n);
    let colors = repetition::family_color_search(&ctx, &order, n, palette_size, cap, false)
        .ok_or(PaletteError::Unsatisfiable)?;
    let mut coloring = Coloring::new(palette_size);
    for (i, &v) in ids.iter().enumerate() {
        coloring.set(v, colors[i]);
    }
    Ok(coloring)
}

// ---------------------------------------------------------------------------
// Frozen palettes.

/// A persisted, deterministic partial coloring of a universal graph with a
/// declared horizon and verification level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrozenPalette {
    pub horizon: u32,
    pub palette_size: u32,
    pub verification: Verification,
    pub order_version: String,
    kind: PaletteKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum PaletteKind {
    OPath(BTreeMap<OVertexId, Color>),
    UTree { k: u8, map: BTreeMap<UCanon, Color> },
}

impl FrozenPalette {
    pub fn target(&self) -> PaletteTarget {
        match &self.kind {
            PaletteKind::OPath(_) => PaletteTarget::OPath,
            PaletteKind::UTree { k, .. } => PaletteTarget::UTree { k: *k },
        }
    }

    pub fn len(&self) -> usize {
        match &self.kind {
            PaletteKind::OPath(m) => m.len(),
            PaletteKind::UTree { map, .. } => map.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Color of an `O` vertex, or `HorizonExceeded` past the horizon.
    pub fn color_of_o(&self, q: &OVertexId) -> Result<Color, PaletteError> {
        match &self.kind {
            PaletteKind::OPath(map) => map.get(q).copied().ok_or(PaletteError::HorizonExceeded {
                stage: o_stage(q),
                horizon: self.horizon,
            }),
            PaletteKind::UTree { .. } => {
                Err(PaletteError::Format("not an O palette".into()))
            }
        }
    }

    /// Color of a `U(k)` vertex, or `HorizonExceeded` past the horizon.
    pub fn color_of_u(&self, interner: &UInterner, v: universal::UVertexId) -> Result<Color, PaletteError> {
        self.color_of_u_canon(&interner.canon(v), interner.stage(v))
    }

    pub fn color_of_u_canon(&self, canon: &UCanon, stage: u32) -> Result<Color, PaletteError> {
        match &self.kind {
            PaletteKind::UTree { map, .. } => map.get(canon).copied().ok_or(
                PaletteError::HorizonExceeded { stage, horizon: self.horizon },
            ),
            PaletteKind::OPath(_) => Err(PaletteError::Format("not a U palette".into())),
        }
    }

    pub fn to_text(&self) -> String {
        let (target, k) = match &self.kind {
            PaletteKind::OPath(_) => ("O", None),
            PaletteKind::UTree { k, .. } => ("U", Some(*k)),
        };
        let k_text = match k {
            Some(k) => k.to_string(),
            None => "null".into(),
        };
        let mut out = format!(
            "{{\"format\":\"palette\",\"version\":1,\"target\":\"{}\",\"k\":{},\"horizon\":{},\"palette\":{},\"verification\":\"{}\",\"order\":\"{}\"}}\n",
            target, k_text, self.horizon, self.palette_size, self.verification.as_string(), self.order_version
        );
        match &self.kind {
            PaletteKind::OPath(map) => {
                for (q, c) in map {
                    out.push_str(&format!("{{\"id\":\"{}\",\"color\":{}}}\n", q.canonical_string(), c));
                }
            }
            PaletteKind::UTree { map, .. } => {
                for (canon, c) in map {
                    out.push_str(&format!(
                        "{{\"id\":\"{}\",\"color\":{}}}\n",
                        canon.canonical_string(),
                        c
                    ));
                }
            }
        }
        out
    }

    /// Parses and re-verifies a persisted palette.
    pub fn from_text(text: &str) -> Result<FrozenPalette, PaletteError> {
        let palette = Self::from_text_unverified(text)?;
        palette.verify()?;
        Ok(palette)
    }

    pub fn from_text_unverified(text: &str) -> Result<FrozenPalette, PaletteError> {
        #[derive(serde::Deserialize)]
        struct Header {
            format: String,
            version: u32,
            target: String,
            k: Option<u8>,
            horizon: u32,
            palette: u32,
            verification: String,
            order: String,
        }
        #[derive(serde::Deserialize)]
        struct Record {
            id: String,
            color: Color,
        }
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: Header = match lines.next() {
            Some(l) => serde_json::from_str(l).map_err(|e| PaletteError::Format(e.to_string()))?,
            None => return Err(PaletteError::Format("empty palette file".into())),
        };
        if header.format != "palette" || header.version != 1 {
            return Err(PaletteError::Format("unsupported palette header".into()));
        }
        if header.order != ORDER_VERSION {
            return Err(PaletteError::Format(format!(
                "palette was computed under order version {:?}, this build uses {:?}",
                header.order, ORDER_VERSION
            )));
        }
        let verification = Verification::parse(&header.verification)
            .ok_or_else(|| PaletteError::Format(format!("bad verification {:?}", header.verification)))?;
        let kind = match (header.target.as_str(), header.k) {
            ("O", None) => {
                let mut map = BTreeMap::new();
                for line in lines {
                    let rec: Record = serde_json::from_str(line)
                        .map_err(|e| PaletteError::Format(e.to_string()))?;
                    let q = OVertexId::parse(&rec.id)
                        .ok_or_else(|| PaletteError::Format(format!("bad id {:?}", rec.id)))?;
                    if rec.color < 1 || rec.color > header.palette {
                        return Err(PaletteError::Format(format!("color {} outside palette", rec.color)));
                    }
                    map.insert(q, rec.color);
                }
                PaletteKind::OPath(map)
            }
            ("U", Some(k)) => {
                let mut map = BTreeMap::new();
                for line in lines {
                    let rec: Record = serde_json::from_str(line)
                        .map_err(|e| PaletteError::Format(e.to_string()))?;
                    let canon = UCanon::parse(&rec.id)
                        .ok_or_else(|| PaletteError::Format(format!("bad id {:?}", rec.id)))?;
                    if rec.color < 1 || rec.color > header.palette {
                        return Err(PaletteError::Format(format!("color {} outside palette", rec.color)));
                    }
                    map.insert(canon, rec.color);
                }
                PaletteKind::UTree { k, map }
            }
            _ => return Err(PaletteError::Format("bad target/k combination".into())),
        };
        Ok(FrozenPalette {
            horizon: header.horizon,
            palette_size: header.palette,
            verification,
            order_version: header.order,
            kind,
        })
    }

    /// Re-checks the stored coloring at its declared verification level.
    pub fn verify(&self) -> Result<(), PaletteError> {
        match &self.kind {
            PaletteKind::OPath(map) => {
                let mat = materialize_o(self.horizon);
                if mat.vertices.len() != map.len()
                    || mat.vertices.iter().any(|q| !map.contains_key(q))
                {
                    return Err(PaletteError::VerificationFailed(
                        "palette is not total on its horizon".into(),
                    ));
                }
                let mut heights: Vec<OVertexId> = mat.vertices.clone();
                heights.sort();
                let colors: Vec<Color> = heights.iter().map(|q| map[q]).collect();
                let up = o_up_adjacency(&heights);
                match &self.verification {
                    Verification::Full => {
                        return Err(PaletteError::IncompatibleLevel(
                            "O palettes use vertical-full, bounded or sampled".into(),
                        ))
                    }
                    Verification::VerticalFull => {
                        if self.horizon > 5 {
                            return Err(PaletteError::IncompatibleLevel(
                                "vertical-full is only checkable up to horizon 5".into(),
                            ));
                        }
                        if let Some(path) = sweep_monotone(&up, &colors, colors.len() / 2) {
                            return Err(verification_witness(&heights, &path));
                        }
                    }
                    Verification::Bounded(l) => {
                        if let Some(path) = sweep_monotone(&up, &colors, *l) {
                            return Err(verification_witness(&heights, &path));
                        }
                    }
                    Verification::Sampled { samples, max_half, seed } => {
                        if let Some(path) =
                            sample_monotone(&up, &colors, *samples, *max_half, *seed)
                        {
                            return Err(verification_witness(&heights, &path));
                        }
                    }
                }
                Ok(())
            }
            PaletteKind::UTree { k, map } => {
                let mut interner = UInterner::new(*k);
                let verts =
                    materialize_u(&mut interner, self.horizon, universal::U_MATERIALIZE_BUDGET)
                        .map_err(|e| PaletteError::VerificationFailed(e.to_string()))?;
                if verts.len() != map.len() {
                    return Err(PaletteError::VerificationFailed(
                        "palette is not total on its horizon".into(),
                    ));
                }
                let mut g = Graph::with_vertices(1..=verts.len() as u32);
                let mut coloring = Coloring::new(self.palette_size);
                for (i, &v) in verts.iter().enumerate() {
                    let canon = interner.canon(v);
                    let color = map.get(&canon).ok_or_else(|| {
                        PaletteError::VerificationFailed("palette is missing a horizon vertex".into())
                    })?;
                    coloring.set(i as u32 + 1, *color);
                }
                for i in 0..verts.len() {
                    for j in i + 1..verts.len() {
                        if interner.adjacent(verts[i], verts[j]) {
                            g.add_edge(i as u32 + 1, j as u32 + 1);
                        }
                    }
                }
                let witness = match &self.verification {
                    Verification::VerticalFull => {
                        return Err(PaletteError::IncompatibleLevel(
                            "U palettes use full, bounded or sampled".into(),
                        ))
                    }
                    Verification::Full => {
                        let limit = if *k == 1 { 64 } else { repetition::GENERAL_CHECK_BUDGET };
                        if g.n() > limit {
                            return Err(PaletteError::IncompatibleLevel(format!(
                                "full verification of U({k}) is only checkable up to {limit} vertices"
                            )));
                        }
                        if *k == 1 {
                            repetition::check_tree(&g, &coloring)
                                .map_err(|e| PaletteError::VerificationFailed(e.to_string()))?
                        } else {
                            repetition::check_graph_budgeted(&g, &coloring, None, g.n())
                                .map_err(|e| PaletteError::VerificationFailed(e.to_string()))?
                        }
                    }
                    Verification::Bounded(l) => repetition::check_graph_budgeted(&g, &coloring, Some(*l), g.n())
                        .map_err(|e| PaletteError::VerificationFailed(e.to_string()))?,
                    Verification::Sampled { samples, max_half, seed } => {
                        sample_undirected(&g, &coloring, *samples, *max_half, *seed)
                    }
                };
                match witness {
                    Some(w) => Err(PaletteError::VerificationFailed(format!(
                        "repetition along {:?}",
                        w.path
                    ))),
                    None => Ok(()),
                }
            }
        }
    }
}

fn verification_witness(heights: &[OVertexId], path: &[usize]) -> PaletteError {
    let names: Vec<String> = path.iter().map(|&i| heights[i].canonical_string()).collect();
    PaletteError::VerificationFailed(format!("repetition along {}", names.join(" ")))
}

/// Up-neighbor lists over heights sorted ascending.
pub fn o_up_adjacency(heights_sorted: &[OVertexId]) -> Vec<Vec<usize>> {
    let n = heights_sorted.len();
    let mut up = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if universal::o_adjacent(&heights_sorted[i], &heights_sorted[j]) {
                up[i].push(j);
            }
        }
    }
    up
}

/// Exhaustive walk of every monotone path, testing each extension for a
/// repetition ending there. Independent of the search-time incremental
/// checks: this one enumerates paths forward from every start. Candidate
/// half lengths come from earlier occurrences of the last element's color.
fn sweep_monotone(up: &[Vec<usize>], colors: &[Color], max_half: usize) -> Option<Vec<usize>> {
    struct Sweep<'a> {
        up: &'a [Vec<usize>],
        colors: &'a [Color],
        path: Vec<usize>,
        seq: Vec<Color>,
        by_color: Vec<Vec<usize>>,
        max_half: usize,
    }
    impl Sweep<'_> {
        fn dfs(&mut self) -> bool {
            let m = self.seq.len();
            let last = self.seq[m - 1];
            // A repetition ending at the last vertex: its mirror must be an
            // earlier occurrence of the same color.
            for idx in (0..self.by_color[last as usize].len() - 1).rev() {
                let p = self.by_color[last as usize][idx];
                let l = m - 1 - p;
                if l > self.max_half || 2 * l > m {
                    break;
                }
                if (0..l - 1).all(|i| self.seq[m - 2 * l + i] == self.seq[m - l + i]) {
                    return true;
                }
            }
            // Any square within the cap lies inside a window of 2 * max_half
            // vertices walked from the square's own start vertex.
            if m >= 2 * self.max_half {
                return false;
            }
            let at = *self.path.last().unwrap();
            for i in 0..self.up[at].len() {
                let w = self.up[at][i];
                let c = self.colors[w];
                self.path.push(w);
                self.seq.push(c);
                self.by_color[c as usize].push(self.seq.len() - 1);
                let hit = self.dfs();
                self.by_color[c as usize].pop();
                self.path.pop();
                self.seq.pop();
                if hit {
                    return true;
                }
            }
            false
        }
    }
    let palette = colors.iter().copied().max().unwrap_or(1).max(1);
    for start in 0..up.len() {
        let mut sweep = Sweep {
            up,
            colors,
            path: vec![start],
            seq: vec![colors[start]],
            by_color: vec![Vec::new(); palette as usize + 1],
            max_half,
        };
        sweep.by_color[colors[start] as usize].push(0);
        if sweep.dfs() {
            return Some(sweep.path);
        }
    }
    None
}

/// Random monotone walks; returns a repetition witness path if one is hit.
fn sample_monotone(
    up: &[Vec<usize>],
    colors: &[Color],
    samples: u32,
    max_half: usize,
    seed: u64,
) -> Option<Vec<usize>> {
    let mut rng = SplitMix64::new(seed);
    let n = up.len();
    for _ in 0..samples {
        let mut v = rng.below(n as u64) as usize;
        let mut path = vec![v];
        let mut seq = vec![colors[v]];
        loop {
            if up[v].is_empty() {
                break;
            }
            v = up[v][rng.below(up[v].len() as u64) as usize];
            path.push(v);
            seq.push(colors[v]);
            let m = seq.len();
            for l in 1..=(m / 2).min(max_half) {
                if (0..l).all(|i| seq[m - 2 * l + i] == seq[m - l + i]) {
                    return Some(path);
                }
            }
        }
    }
    None
}

/// Random simple walks in an undirected colored graph.
fn sample_undirected(
    g: &Graph,
    c: &Coloring,
    samples: u32,
    max_half: usize,
    seed: u64,
) -> Option<repetition::RepetitionWitness> {
    let ids: Vec<VertexId> = g.vertices().collect();
    let mut rng = SplitMix64::new(seed);
    for _ in 0..samples {
        let mut v = *rng.pick(&ids);
        let mut path = vec![v];
        let mut seq = vec![c.color(v)];
        for _ in 0..2 * max_half {
            let nbrs: Vec<VertexId> = g
                .neighbors(v)
                .into_iter()
                .filter(|w| !path.contains(w))
                .collect();
            if nbrs.is_empty() {
                break;
            }
            v = *rng.pick(&nbrs);
            path.push(v);
            seq.push(c.color(v));
            let m = seq.len();
            for l in 1..=(m / 2).min(max_half) {
                if (0..l).all(|i| seq[m - 2 * l + i] == seq[m - l + i]) {
                    return Some(repetition::RepetitionWitness {
                        path: path[m - 2 * l..].to_vec(),
                        half_len: l,
                    });
                }
            }
        }
    }
    None
}

/// Runs the deterministic search on the materialized horizon graph and
/// freezes the result. Fails honestly: `Unsatisfiable` means the search
/// space is exhausted, a build-stopping event for the shipped constants.
pub fn precompute(
    target: PaletteTarget,
    palette_size: u32,
    horizon: u32,
    verification: Verification,
) -> Result<FrozenPalette, PaletteError> {
    match target {
        PaletteTarget::OPath => precompute_o(palette_size, horizon, verification),
        PaletteTarget::UTree { k } => precompute_u(k, palette_size, horizon, verification),
    }
}

fn precompute_o(
    palette_size: u32,
    horizon: u32,
    verification: Verification,
) -> Result<FrozenPalette, PaletteError> {
    match verification {
        Verification::Full => {
            return Err(PaletteError::IncompatibleLevel(
                "O palettes use vertical-full, bounded or sampled".into(),
            ))
        }
        Verification::VerticalFull if horizon > 5 => {
            return Err(PaletteError::SizeGuard { budget: 5, actual: horizon as usize })
        }
        _ => {}
    }
    if horizon > 14 {
        return Err(PaletteError::SizeGuard { budget: 14, actual: horizon as usize });
    }
    let mat = materialize_o(horizon);
    // Canonical order: stage first, then height.
    let mut order_ids: Vec<OVertexId> = mat.vertices.clone();
    order_ids.sort_by(|a, b| (o_stage(a), a).cmp(&(o_stage(b), b)));
    let mut heights = mat.vertices;
    heights.sort();
    let index: BTreeMap<&OVertexId, usize> =
        heights.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let up = o_up_adjacency(&heights);
    let mut down = vec![Vec::new(); heights.len()];
    for (i, ups) in up.iter().enumerate() {
        for &j in ups {
            down[j].push(i);
        }
    }
    let ctx = FamilyCtx::Directed { out: &up, inn: &down };
    let order: Vec<usize> = order_ids.iter().map(|q| index[q]).collect();
    let n = heights.len();
    let cap = verification.search_cap(n);
    let colors = repetition::family_color_search(&ctx, &order, n, palette_size, cap, false)
        .ok_or(PaletteError::Unsatisfiable)?;
    let map: BTreeMap<OVertexId, Color> = heights
        .iter()
        .enumerate()
        .map(|(i, q)| (q.clone(), colors[i]))
        .collect();
    let palette = FrozenPalette {
        horizon,
        palette_size,
        verification,
        order_version: ORDER_VERSION.into(),
        kind: PaletteKind::OPath(map),
    };
    palette.verify()?;
    Ok(palette)
}

fn precompute_u(
    k: u8,
    palette_size: u32,
    horizon: u32,
    verification: Verification,
) -> Result<FrozenPalette, PaletteError> {
    match verification {
        Verification::VerticalFull => {
            return Err(PaletteError::IncompatibleLevel(
                "U palettes use full, bounded or sampled".into(),
            ))
        }
        Verification::Full => {
            let count = universal::u_count(k, horizon)
                .map_err(|e| PaletteError::Format(e.to_string()))?;
            let limit = if k == 1 { 64 } else { repetition::GENERAL_CHECK_BUDGET };
            if count > limit {
                return Err(PaletteError::SizeGuard { budget: limit, actual: count });
            }
        }
        _ => {}
    }
    let mut interner = UInterner::new(k);
    let verts = materialize_u(&mut interner, horizon, universal::U_MATERIALIZE_BUDGET)
        .map_err(|e| PaletteError::Format(e.to_string()))?;
    let n = verts.len();
    let mut adj = vec![Vec::new(); n];
    for i in 0..n {
        for j in i + 1..n {
            if interner.adjacent(verts[i], verts[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let ctx = FamilyCtx::Full { adj: &adj };
    let order: Vec<usize> = (0..n).collect(); // materialization order is stage-major
    let cap = verification.search_cap(n);
    let colors = repetition::family_color_search(&ctx, &order, n, palette_size, cap, false)
        .ok_or(PaletteError::Unsatisfiable)?;
    let map: BTreeMap<UCanon, Color> = verts
        .iter()
        .enumerate()
        .map(|(i, &v)| (interner.canon(v), colors[i]))
        .collect();
    let palette = FrozenPalette {
        horizon,
        palette_size,
        verification,
        order_version: ORDER_VERSION.into(),
        kind: PaletteKind::UTree { k, map },
    };
    palette.verify()?;
    Ok(palette)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_graph(n: u32) -> Graph {
        let mut g = Graph::with_vertices(1..=n);
        for v in 1..n {
            g.add_edge(v, v + 1);
        }
        g
    }

    #[test]
    fn offline_colors_a_path_with_three() {
        let g = path_graph(20);
        let c = offline_color(&g, 3, ColorMode::Full, None).unwrap();
        let order = g.path_order().unwrap();
        let colors: Vec<Color> = order.iter().map(|&v| c.color(v)).collect();
        assert!(repetition::check_path(&colors).is_none());
    }

    #[test]
    fn single_edge_needs_two_colors() {
        let g = path_graph(2);
        assert_eq!(
            offline_color(&g, 1, ColorMode::Full, None),
            Err(PaletteError::Unsatisfiable)
        );
        assert!(offline_color(&g, 2, ColorMode::Full, None).is_ok());
    }

    #[test]
    fn offline_color_is_deterministic() {
        let g = path_graph(12);
        let a = offline_color(&g, 3, ColorMode::Full, None).unwrap();
        let b = offline_color(&g, 3, ColorMode::Full, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn o4_admits_a_12_coloring_vertically() {
        let mat = materialize_o(4);
        assert_eq!(mat.vertices.len(), 23);
        let mut heights = mat.vertices;
        heights.sort();
        let mut d = Digraph::new();
        for (i, a) in heights.iter().enumerate() {
            d.add_vertex(i as u32 + 1);
            for (j, b) in heights.iter().enumerate().skip(i + 1) {
                if universal::o_adjacent(a, b) {
                    d.add_arc(i as u32 + 1, j as u32 + 1);
                }
            }
        }
        let c = offline_color_directed(&d, 12, None).unwrap();
        assert!(repetition::check_directed_budgeted(&d, &c, None, d.n()).unwrap().is_none());
    }

    #[test]
    fn tiny_o_palette_round_trips() {
        let p = precompute(PaletteTarget::OPath, 4, 3, Verification::VerticalFull).unwrap();
        assert_eq!(p.len(), 11);
        let text = p.to_text();
        let q = FrozenPalette::from_text(&text).unwrap();
        assert_eq!(p, q);
        assert_eq!(q.to_text(), text);
    }

    #[test]
    fn two_colors_on_o3_are_unsatisfiable() {
        // O_3 contains a monotone path on five vertices, and two colors fail
        // on any such path.
        assert_eq!(
            precompute(PaletteTarget::OPath, 2, 3, Verification::VerticalFull),
            Err(PaletteError::Unsatisfiable)
        );
    }

    #[test]
    fn color_of_respects_horizon() {
        let p = precompute(PaletteTarget::OPath, 4, 3, Verification::VerticalFull).unwrap();
        let q0 = OVertexId::from_int(0);
        let c = p.color_of_o(&q0).unwrap();
        assert!(c >= 1 && c <= 4);
        let deep = OVertexId::parse("1/2^5").unwrap();
        assert!(matches!(
            p.color_of_o(&deep),
            Err(PaletteError::HorizonExceeded { stage: 6, horizon: 3 })
        ));
    }

    #[test]
    fn u1_small_full_palette() {
        let p = precompute(PaletteTarget::UTree { k: 1 }, 4, 4, Verification::Full).unwrap();
        assert_eq!(p.len(), 16);
        let text = p.to_text();
        let q = FrozenPalette::from_text(&text).unwrap();
        assert_eq!(q, p);
        // Base vertices are colored.
        let interner = UInterner::new(1);
        let c = p.color_of_u(&interner, interner.base(0)).unwrap();
        assert!(c >= 1 && c <= 4);
    }

    #[test]
    fn u2_bounded_palette() {
        let p = precompute(PaletteTarget::UTree { k: 2 }, 16, 2, Verification::Bounded(4)).unwrap();
        assert_eq!(p.len(), 6);
        let text = p.to_text();
        assert!(text.starts_with("{\"format\":\"palette\",\"version\":1,\"target\":\"U\",\"k\":2,\"horizon\":2,\"palette\":16,\"verification\":\"bounded:4\",\"order\":\"v1\"}"));
    }

    #[test]
    fn precompute_is_bit_deterministic() {
        let a = precompute(PaletteTarget::OPath, 5, 3, Verification::VerticalFull).unwrap();
        let b = precompute(PaletteTarget::OPath, 5, 3, Verification::VerticalFull).unwrap();
        assert_eq!(a.to_text(), b.to_text());
    }

    #[test]
    fn loads_answer_identically() {
        let p = precompute(PaletteTarget::OPath, 4, 3, Verification::VerticalFull).unwrap();
        let text = p.to_text();
        let a = FrozenPalette::from_text(&text).unwrap();
        let b = FrozenPalette::from_text(&text).unwrap();
        let mat = materialize_o(3);
        let mut rng = SplitMix64::new(7);
        for _ in 0..10_000 {
            let q = &mat.vertices[rng.below(mat.vertices.len() as u64) as usize];
            assert_eq!(a.color_of_o(q).unwrap(), b.color_of_o(q).unwrap());
        }
    }

    #[test]
    fn tampered_palette_fails_verification() {
        let p = precompute(PaletteTarget::OPath, 4, 2, Verification::VerticalFull).unwrap();
        let text = p.to_text();
        // Force the two endpoints of the base edge to share a color.
        let broken = text
            .lines()
            .map(|l| {
                if l.starts_with("{\"id\":\"0/2^0\"") {
                    "{\"id\":\"0/2^0\",\"color\":1}".to_string()
                } else if l.starts_with("{\"id\":\"1/2^0\"") {
                    "{\"id\":\"1/2^0\",\"color\":1}".to_string()
                } else {
                    l.to_string()
                }
            })
            .collect::<Vec<_>>()
            .join("\n");
        assert!(matches!(
            FrozenPalette::from_text(&broken),
            Err(PaletteError::VerificationFailed(_))
        ));
    }

    #[test]
    fn vertical_full_is_for_o_only() {
        assert!(matches!(
            precompute(PaletteTarget::UTree { k: 1 }, 4, 2, Verification::VerticalFull),
            Err(PaletteError::IncompatibleLevel(_))
        ));
        assert!(matches!(
            precompute(PaletteTarget::OPath, 12, 2, Verification::Full),
            Err(PaletteError::IncompatibleLevel(_))
        ));
    }
}
