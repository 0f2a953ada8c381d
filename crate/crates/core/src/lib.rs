//! Online nonrepetitive graph coloring.
//!
//! A coloring is nonrepetitive when no path reads a color block followed by
//! the same block again. This crate colors graphs that are built online,
//! one vertex per step, so every color is permanent the moment it is
//! assigned:
//!
//! - [`sequences`]: square-free words, the one-dimensional core.
//! - [`graph`]: graphs, colorings, game events and per-class move legality.
//! - [`repetition`]: repetition checkers for paths, graphs, trees, vertical
//!   and directed families, plus exact minimum-palette search.
//! - [`universal`]: the universal online path graph `O` (dyadic heights) and
//!   universal k-trees `U(k)` (hash-consed clique copies), with incremental
//!   game embeddings.
//! - [`palette`]: frozen palettes — persisted exhaustive-search colorings of
//!   universal graphs up to a horizon — and an offline backtracking colorer.
//! - [`engine`]: the online coloring engine over frozen or lazy oracles.
//! - [`adversary`]: random game generation and the exact adversarial path
//!   game solver.
//! - [`listgame`]: the online list-coloring game on left-to-right paths.

pub mod adversary;
pub mod engine;
pub mod graph;
pub mod listgame;
pub mod palette;
pub mod repetition;
pub mod rng;
pub mod sequences;
pub mod universal;
