//! Cyclic patterns on the triod: validation, canonical forms, branch
//! relabeling, serialization, and exhaustive enumeration.
//!
//! A pattern of period `n` assigns to each time index `t` a point given by a
//! branch and a rank (rank 1 sits nearest the hub on its branch). The
//! dynamics is implicit: the point at time `t` maps to the point at time
//! `t + 1 (mod n)`. Two patterns are the same cycle if they differ only by
//! the choice of starting time, so the canonical form is the
//! lexicographically least time rotation. Branch labels are semantic and are
//! never quotiented here.

use std::fmt;

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::triod::BranchId;

/// A violation of the pattern invariants.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    /// The pattern has no points.
    #[error("pattern has no points")]
    EmptyPattern,
    /// Two time indices claim the same rank on one branch.
    #[error("rank {rank} appears twice on branch {branch}")]
    DuplicateRank { branch: BranchId, rank: u32 },
    /// The ranks on a branch with k points are not exactly {1..k}.
    #[error("branch {branch} is missing rank {rank}")]
    RankGap { branch: BranchId, rank: u32 },
}

/// A failure to read a serialized pattern.
#[derive(Debug, Error)]
pub enum ParseError {
    /// The document is not well formed (bad JSON, period mismatch, or a
    /// branch index outside {0,1,2}).
    #[error("syntax error: {0}")]
    Syntax(String),
    /// The document parsed but the pattern invariants fail.
    #[error(transparent)]
    Invalid(#[from] PatternError),
}

/// A validated cyclic pattern on the triod.
///
/// `points[t]` is the `(branch, rank)` position of the orbit at time `t`;
/// the point at time `t` maps to the point at time `t + 1 (mod n)`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pattern {
    points: Vec<(BranchId, u32)>,
}

impl Pattern {
    /// Builds a pattern after checking the rank invariants: on each branch
    /// carrying `k` points the ranks are exactly `1..=k`.
    pub fn new(points: Vec<(BranchId, u32)>) -> Result<Pattern, PatternError> {
        if points.is_empty() {
            return Err(PatternError::EmptyPattern);
        }
        for branch in BranchId::all() {
            let mut ranks: Vec<u32> = points
                .iter()
                .filter(|(b, _)| *b == branch)
                .map(|&(_, r)| r)
                .collect();
            ranks.sort_unstable();
            for pair in ranks.windows(2) {
                if pair[0] == pair[1] {
                    return Err(PatternError::DuplicateRank { branch, rank: pair[0] });
                }
            }
            let k = ranks.len() as u32;
            for want in 1..=k {
                if !ranks.contains(&want) {
                    return Err(PatternError::RankGap { branch, rank: want });
                }
            }
        }
        Ok(Pattern { points })
    }

    /// The period `n`.
    pub fn period(&self) -> usize {
        self.points.len()
    }

    /// All points in time order.
    pub fn points(&self) -> &[(BranchId, u32)] {
        &self.points
    }

    /// The point at time `t`, with `t` taken mod the period.
    pub fn point(&self, t: usize) -> (BranchId, u32) {
        self.points[t % self.points.len()]
    }

    /// Number of points on each branch.
    pub fn branch_counts(&self) -> [u32; 3] {
        let mut counts = [0u32; 3];
        for &(b, _) in &self.points {
            counts[b.index() as usize] += 1;
        }
        counts
    }

    /// The time index occupying `(branch, rank)`, if present.
    pub fn time_of(&self, branch: BranchId, rank: u32) -> Option<usize> {
        self.points.iter().position(|&p| p == (branch, rank))
    }

    /// The same cycle restarted at time `k`: the new time 0 is the old
    /// time `k`.
    pub fn rotate_time(&self, k: usize) -> Pattern {
        let n = self.points.len();
        let points = (0..n).map(|t| self.points[(t + k) % n]).collect();
        Pattern { points }
    }

    /// Rotation offset of the canonical form: the `k` minimizing
    /// `rotate_time(k)` lexicographically. Unique because the points of a
    /// cycle are pairwise distinct.
    pub fn canonical_offset(&self) -> usize {
        (0..self.points.len())
            .min_by_key(|&k| self.rotate_time(k).points)
            .unwrap()
    }

    /// The lexicographically least time rotation.
    pub fn canonicalize(&self) -> Pattern {
        self.rotate_time(self.canonical_offset())
    }

    /// Whether this pattern already is its canonical rotation.
    pub fn is_canonical(&self) -> bool {
        self.canonical_offset() == 0
    }

    /// Whether two patterns are the same cycle up to starting time.
    pub fn same_up_to_rotation(&self, other: &Pattern) -> bool {
        self.points.len() == other.points.len()
            && self.canonicalize().points == other.canonicalize().points
    }

    /// Applies a branch permutation (`map[i]` is the new label of branch
    /// `i`), keeping ranks and times.
    pub fn relabel_branches(&self, map: [BranchId; 3]) -> Pattern {
        let mut seen = [false; 3];
        for b in map {
            seen[b.index() as usize] = true;
        }
        assert!(seen.iter().all(|&s| s), "branch map must be a permutation");
        let points = self
            .points
            .iter()
            .map(|&(b, r)| (map[b.index() as usize], r))
            .collect();
        Pattern { points }
    }

    /// Cyclic branch relabeling `b_i -> b_{i+k}`.
    pub fn rotate_branches(&self, k: u8) -> Pattern {
        let map = [
            BranchId::new(0).advance(k),
            BranchId::new(1).advance(k),
            BranchId::new(2).advance(k),
        ];
        self.relabel_branches(map)
    }

    /// Swaps branches 1 and 2. This reverses the cyclic orientation of the
    /// triod, so it exchanges the two nonzero displacement values.
    pub fn reflect_branches(&self) -> Pattern {
        self.relabel_branches([BranchId::new(0), BranchId::new(2), BranchId::new(1)])
    }

    /// Reads one JSON document of the form
    /// `{"period":n,"points":[[branch,rank],...]}`.
    pub fn from_json_line(text: &str) -> Result<Pattern, ParseError> {
        let repr: PatternRepr =
            serde_json::from_str(text).map_err(|e| ParseError::Syntax(e.to_string()))?;
        repr.try_into()
    }

    /// Writes the single-line JSON form.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("pattern serialization cannot fail")
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pattern[")?;
        for (t, &(b, r)) in self.points.iter().enumerate() {
            if t > 0 {
                write!(f, " ")?;
            }
            write!(f, "({b},{r})")?;
        }
        write!(f, "]")
    }
}

#[derive(Serialize, Deserialize)]
struct PatternRepr {
    period: usize,
    points: Vec<(u8, u32)>,
}

impl TryFrom<PatternRepr> for Pattern {
    type Error = ParseError;

    fn try_from(repr: PatternRepr) -> Result<Pattern, ParseError> {
        if repr.period != repr.points.len() {
            return Err(ParseError::Syntax(format!(
                "period {} does not match {} points",
                repr.period,
                repr.points.len()
            )));
        }
        let mut points = Vec::with_capacity(repr.points.len());
        for &(b, r) in &repr.points {
            if b >= 3 {
                return Err(ParseError::Syntax(format!("branch index {b} out of range")));
            }
            points.push((BranchId::new(b), r));
        }
        Ok(Pattern::new(points)?)
    }
}

impl Serialize for Pattern {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = PatternRepr {
            period: self.points.len(),
            points: self.points.iter().map(|&(b, r)| (b.index(), r)).collect(),
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Pattern {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Pattern, D::Error> {
        let repr = PatternRepr::deserialize(deserializer)?;
        repr.try_into().map_err(|e: ParseError| D::Error::custom(e.to_string()))
    }
}

/// Every valid pattern of period exactly `n`, once per time-rotation class,
/// in lexicographic order of the canonical representative.
pub fn enumerate(period: usize) -> Vec<Pattern> {
    assert!(period >= 1, "period must be positive");
    let mut out = Vec::new();
    for_each_raw(period, |p| {
        if p.is_canonical() {
            out.push(p);
        }
    });
    out.sort();
    out
}

/// Every valid pattern of period `n` with no rotation dedup: the
/// independent generation route used to cross-check `enumerate`.
pub fn enumerate_raw(period: usize) -> Vec<Pattern> {
    let mut out = Vec::new();
    for_each_raw(period, |p| out.push(p));
    out
}

/// Further quotients a list of patterns by cyclic branch relabeling
/// (reporting aid; the underlying pattern equivalence keeps labels fixed).
pub fn dedup_modulo_branch_rotation(patterns: &[Pattern]) -> Vec<Pattern> {
    let mut set = std::collections::BTreeSet::new();
    for p in patterns {
        let representative = (0..3)
            .map(|k| p.rotate_branches(k).canonicalize())
            .min()
            .unwrap();
        set.insert(representative);
    }
    set.into_iter().collect()
}

/// Generates every raw assignment: a branch per time index, then on each
/// branch every bijection of its time slots onto ranks `1..=k`.
fn for_each_raw(period: usize, mut sink: impl FnMut(Pattern)) {
    let mut branches = vec![0u8; period];
    loop {
        let mut slots: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for (t, &b) in branches.iter().enumerate() {
            slots[b as usize].push(t);
        }
        let perms: Vec<Vec<Vec<u32>>> = slots
            .iter()
            .map(|s| permutations(s.len() as u32))
            .collect();
        for p0 in &perms[0] {
            for p1 in &perms[1] {
                for p2 in &perms[2] {
                    let chosen = [p0, p1, p2];
                    let mut points = vec![(BranchId::new(0), 0u32); period];
                    for b in 0..3 {
                        for (i, &t) in slots[b].iter().enumerate() {
                            points[t] = (BranchId::new(b as u8), chosen[b][i]);
                        }
                    }
                    let pattern = Pattern::new(points).expect("construction yields valid ranks");
                    sink(pattern);
                }
            }
        }
        // Odometer over branch assignments, base 3.
        let mut i = 0;
        loop {
            if i == period {
                return;
            }
            branches[i] += 1;
            if branches[i] < 3 {
                break;
            }
            branches[i] = 0;
            i += 1;
        }
    }
}

/// All orderings of the ranks `1..=k`.
fn permutations(k: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    let mut used = vec![false; k as usize];
    fn recurse(k: u32, current: &mut Vec<u32>, used: &mut [bool], out: &mut Vec<Vec<u32>>) {
        if current.len() == k as usize {
            out.push(current.clone());
            return;
        }
        for r in 1..=k {
            if !used[(r - 1) as usize] {
                used[(r - 1) as usize] = true;
                current.push(r);
                recurse(k, current, used, out);
                current.pop();
                used[(r - 1) as usize] = false;
            }
        }
    }
    recurse(k, &mut current, &mut used, &mut out);
    out
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    /// Primitive 2-cycle on branches 0 and 1.
    pub fn e2() -> Pattern {
        Pattern::new(vec![(BranchId::new(0), 1), (BranchId::new(1), 1)]).unwrap()
    }

    /// Primitive 3-cycle.
    pub fn e3() -> Pattern {
        Pattern::new(vec![
            (BranchId::new(0), 1),
            (BranchId::new(1), 1),
            (BranchId::new(2), 1),
        ])
        .unwrap()
    }

    /// Period-4 cycle with three black points and one green, rotation
    /// number 1/4.
    pub fn e4() -> Pattern {
        Pattern::new(vec![
            (BranchId::new(0), 1),
            (BranchId::new(1), 1),
            (BranchId::new(2), 1),
            (BranchId::new(0), 2),
        ])
        .unwrap()
    }
}
