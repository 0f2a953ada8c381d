//! The online list-coloring game on left-to-right paths: the adversary
//! reveals each new vertex's allowed color list, the painter must pick from
//! it keeping the color sequence square-free.
//!
//! Positions are canonicalized by renaming colors in first-occurrence order;
//! list members then split into seen colors and interchangeable fresh ones,
//! which makes the adversary's move space finite. The solver collapses the
//! list choice exactly: appending a fresh color is always immediately legal,
//! fresh colors are interchangeable, and the adversary can avoid fresh
//! colors only when enough seen colors exist. So the adversary wins one step
//! iff the fresh continuation loses, or at least `s` seen colors have losing
//! continuations (it then plays a list made of losers). A literal minimax
//! over raw lists is kept in the tests as the oracle for this collapse.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::adversary::GameOutcome;
use crate::graph::Color;
use crate::rng::SplitMix64;
use crate::sequences;

/// One revealed list; the declared size is the game parameter `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListAssignment {
    pub list: BTreeSet<Color>,
}

/// Renames a sequence into first-occurrence canonical form. Left-to-right
/// games have no reversal symmetry.
pub fn canonical_seq(seq: &[Color]) -> Vec<Color> {
    let mut names: BTreeMap<Color, Color> = BTreeMap::new();
    let mut out = Vec::with_capacity(seq.len());
    for &c in seq {
        let next = names.len() as Color + 1;
        out.push(*names.entry(c).or_insert(next));
    }
    out
}

/// Is appending `c` to the sequence square-free?
fn append_legal(seq: &[Color], c: Color) -> bool {
    let mut next = seq.to_vec();
    next.push(c);
    sequences::find_repetition_through(&next, next.len() - 1, None).is_none()
}

pub const DEFAULT_LIST_NODE_CAP: usize = 4_000_000;

/// Exact solver for the list game at list size `s`.
pub struct ListSolver {
    pub list_size: u32,
    memo: HashMap<(Vec<Color>, u32), bool>,
    node_cap: usize,
    aborted: bool,
}

impl ListSolver {
    pub fn new(list_size: u32, node_cap: usize) -> Self {
        assert!(list_size >= 1);
        ListSolver { list_size, memo: HashMap::new(), node_cap, aborted: false }
    }

    pub fn nodes(&self) -> usize {
        self.memo.len()
    }

    /// Painter survives `budget` more vertices from this canonical position
    /// against every adversary.
    fn survives(&mut self, seq: &[Color], budget: u32) -> bool {
        if budget == 0 {
            return true;
        }
        let key = (seq.to_vec(), budget);
        if let Some(&v) = self.memo.get(&key) {
            return v;
        }
        if self.memo.len() >= self.node_cap {
            self.aborted = true;
            return true;
        }
        let seen = seq.iter().copied().max().unwrap_or(0);
        let fresh = seen + 1;
        // Fresh appends are always legal now; their future decides.
        let mut next = seq.to_vec();
        next.push(fresh);
        let fresh_survives = self.survives(&next, budget - 1);
        let mut losing_seen = 0u32;
        if !fresh_survives {
            // Already decisive, but the seen count is cheap to skip.
        } else {
            for c in 1..=seen {
                next[seq.len()] = c;
                let ok = append_legal(seq, c) && self.survives(&next, budget - 1);
                if !ok {
                    losing_seen += 1;
                    if losing_seen >= self.list_size {
                        break;
                    }
                }
                if self.aborted {
                    return true;
                }
            }
        }
        let adversary_wins = !fresh_survives || losing_seen >= self.list_size;
        let result = !adversary_wins;
        if !self.aborted {
            self.memo.insert(key, result);
        }
        result
    }

    pub fn solve(&mut self, max_plies: u32) -> GameOutcome {
        for depth in 1..=max_plies {
            let survives = self.survives(&[], depth);
            if self.aborted {
                return GameOutcome::Inconclusive { completed_depth: depth - 1 };
            }
            if !survives {
                return GameOutcome::AdversaryWins { depth };
            }
        }
        GameOutcome::PainterSurvives { depth: max_plies }
    }

    /// A winning canonical list for the adversary at this position within
    /// `budget`, as (seen members, fresh count).
    pub fn winning_list(&mut self, seq: &[Color], budget: u32) -> Option<(Vec<Color>, u32)> {
        if budget == 0 {
            return None;
        }
        let s = self.list_size;
        let seen = seq.iter().copied().max().unwrap_or(0);
        let fresh = seen + 1;
        let mut next = seq.to_vec();
        next.push(fresh);
        let fresh_survives = self.survives(&next, budget - 1);
        let mut losers = Vec::new();
        for c in 1..=seen {
            next[seq.len()] = c;
            if !(append_legal(seq, c) && self.survives(&next, budget - 1)) {
                losers.push(c);
            }
        }
        if losers.len() >= s as usize {
            return Some((losers[..s as usize].to_vec(), 0));
        }
        if !fresh_survives {
            let take = losers.len().min(s as usize - 1);
            return Some((losers[..take].to_vec(), s - take as u32));
        }
        None
    }

    /// Longest depth up to `cap` that this canonical position survives.
    pub fn survival_horizon(&mut self, seq: &[Color], cap: u32) -> u32 {
        let mut best = 0;
        for d in 1..=cap {
            if self.survives(seq, d) {
                best = d;
            } else {
                break;
            }
        }
        best
    }
}

// ---------------------------------------------------------------------------
// Playing the game.

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PainterStrategy {
    /// Smallest legal member of the list.
    Greedy,
    /// Member with the longest solver-certified survival, ties to the
    /// smallest color.
    Lookahead { depth: u32 },
}

pub enum AdversarySource {
    /// Uniform s-subsets of `1..=universe`.
    Random { universe: u32, seed: u64 },
    /// Follow a solver: reveal a winning list when one exists, otherwise
    /// fall back to seeded random lists.
    Solver { solver: ListSolver, budget: u32, fallback_seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ListTrace {
    pub list_size: u32,
    pub steps: Vec<(Vec<Color>, Option<Color>)>,
    pub survived: bool,
    /// Vertex index (1-based) where the painter got stuck, if any.
    pub died_at: Option<u32>,
    /// For a lost game: the square the smallest list member would create.
    pub witness: Option<(Color, sequences::SquareAt)>,
}

/// Runs an `n`-vertex list game. Every surviving prefix is square-free; a
/// lost game ends at the stuck step with a witness.
pub fn play_list_game(
    painter: PainterStrategy,
    mut adversary: AdversarySource,
    list_size: u32,
    n: u32,
) -> ListTrace {
    let mut seq: Vec<Color> = Vec::new();
    let mut steps = Vec::new();
    let mut lookahead_solver = match painter {
        PainterStrategy::Lookahead { .. } => {
            Some(ListSolver::new(list_size, DEFAULT_LIST_NODE_CAP))
        }
        PainterStrategy::Greedy => None,
    };
    for t in 1..=n {
        let list = next_list(&mut adversary, &seq, list_size);
        let legal: Vec<Color> =
            list.iter().copied().filter(|&c| append_legal(&seq, c)).collect();
        let choice = match (&painter, legal.as_slice()) {
            (_, []) => None,
            (PainterStrategy::Greedy, _) => Some(legal[0]),
            (PainterStrategy::Lookahead { depth }, _) => {
                let solver = lookahead_solver.as_mut().unwrap();
                let mut best = (0u32, legal[0]);
                for &c in &legal {
                    let mut next = seq.clone();
                    next.push(c);
                    let canon = canonical_seq(&next);
                    let horizon = solver.survival_horizon(&canon, *depth);
                    if horizon > best.0 {
                        best = (horizon, c);
                    }
                }
                Some(best.1)
            }
        };
        let list_vec: Vec<Color> = list.iter().copied().collect();
        match choice {
            Some(c) => {
                steps.push((list_vec, Some(c)));
                seq.push(c);
            }
            None => {
                // Stuck: record the square the smallest member would make.
                let c = *list.iter().next().unwrap();
                let mut attempt = seq.clone();
                attempt.push(c);
                let square = sequences::find_repetition_through(
                    &attempt,
                    attempt.len() - 1,
                    None,
                )
                .expect("an illegal member creates a square");
                steps.push((list_vec, None));
                return ListTrace {
                    list_size,
                    steps,
                    survived: false,
                    died_at: Some(t),
                    witness: Some((c, square)),
                };
            }
        }
    }
    ListTrace { list_size, steps, survived: true, died_at: None, witness: None }
}

fn next_list(adversary: &mut AdversarySource, seq: &[Color], s: u32) -> BTreeSet<Color> {
    match adversary {
        AdversarySource::Random { universe, seed } => {
            let mut rng = SplitMix64::new(seed.wrapping_add(seq.len() as u64 * 0x9e37));
            *seed = rng.next_u64();
            let mut list = BTreeSet::new();
            while list.len() < s as usize {
                list.insert(1 + rng.below(*universe as u64) as Color);
            }
            list
        }
        AdversarySource::Solver { solver, budget, fallback_seed } => {
            let canon = canonical_seq(seq);
            let remaining = budget.saturating_sub(seq.len() as u32);
            if let Some((canon_members, fresh)) = solver.winning_list(&canon, remaining) {
                // Translate canonical names back to the actual colors used.
                let mut by_name: BTreeMap<Color, Color> = BTreeMap::new();
                let mut names: BTreeMap<Color, Color> = BTreeMap::new();
                for &c in seq {
                    let next_name = names.len() as Color + 1;
                    let name = *names.entry(c).or_insert(next_name);
                    by_name.entry(name).or_insert(c);
                }
                let mut list: BTreeSet<Color> =
                    canon_members.iter().map(|m| by_name[m]).collect();
                let mut unused = 1;
                for _ in 0..fresh {
                    while seq.contains(&unused) || list.contains(&unused) {
                        unused += 1;
                    }
                    list.insert(unused);
                }
                list
            } else {
                let mut rng =
                    SplitMix64::new(fallback_seed.wrapping_add(seq.len() as u64 * 0x51));
                *fallback_seed = rng.next_u64();
                let mut list = BTreeSet::new();
                let universe = 2 * s + 2;
                while list.len() < s as usize {
                    list.insert(1 + rng.below(universe as u64) as Color);
                }
                list
            }
        }
    }
}
