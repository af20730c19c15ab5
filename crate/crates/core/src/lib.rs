//! Rotation theory for periodic orbits on the triod.
//!
//! The triod `Y` is three segments (branches 0, 1, 2, in cyclic order)
//! glued at a hub. A cyclic pattern records, combinatorially, how a
//! periodic orbit sits on `Y`: a branch and a rank for every time index.
//! This crate builds the connect-the-dots map of a pattern, derives its
//! oriented graph, rotation numbers and sets, code functions and
//! classification (including the triod-twist property and conjugacy to a
//! circle-rotation orbit), and ships a verification suite that replays the
//! theory's inequalities over exhaustively enumerated pattern corpora.
//!
//! Entry points: [`pattern::Pattern`] for parsing and enumeration,
//! [`plinear::PLinearMap`] for the induced map, [`rotation_theory::classify`]
//! for per-pattern reports, [`conjugacy::build_conjugacy`] for rigid
//! rotation models, and [`verify::run_suite`] for corpus checks.

// Index loops over time indices, pieces, and grid cells stay as ranges:
// the indices are the mathematical objects here and appear in diagnostics.
#![allow(clippy::needless_range_loop)]

pub mod conjugacy;
pub mod loop_graph;
pub mod pattern;
pub mod plinear;
pub mod rotation_theory;
pub mod sharkovsky;
pub mod triod;
pub mod verify;

pub use triod::{BranchId, Rational};
