//! The connect-the-dots map of a pattern and exact analysis of its orbits.
//!
//! Marked points are the hub plus the cycle points, with the rank-`r` point
//! of a branch placed at coordinate `r`. Between consecutive marked points
//! the map is the constant-speed parametrization of the arc between their
//! images, beyond the outermost marked point of a branch it is constant,
//! and empty branches collapse to the hub. Every piece has length one, so
//! each piece maps by an affine rule with integer slope and offset once arcs
//! through the hub are unfolded onto a signed line. That keeps orbit
//! enumeration exact: loop compositions stay in checked 128-bit integers
//! and only the final solve widens to arbitrary precision.

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::loop_graph::{self, third_shift};
use crate::pattern::Pattern;
use crate::triod::{BranchId, Rational, TriodPoint};

/// One unit interval between consecutive marked points of a branch.
/// `lo = 0` is the piece touching the hub.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Piece {
    pub branch: BranchId,
    pub lo: u32,
}

/// A Markov arrow: the image arc of the source piece covers the whole
/// target piece, and on the preimage of that piece the map in branch
/// coordinates is `c -> slope * c + offset`.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub to: usize,
    pub slope: i64,
    pub offset: i64,
}

/// The image arc of a piece, unfolded on a signed line: position
/// `slope * c + offset` is on `pos` when positive, on `neg` when negative,
/// and at the hub when zero.
#[derive(Debug, Clone, Copy)]
struct Frame {
    slope: i64,
    offset: i64,
    pos: Option<BranchId>,
    neg: Option<BranchId>,
}

/// The induced map of a pattern.
pub struct PLinearMap {
    pattern: Pattern,
    counts: [u32; 3],
    pieces: Vec<Piece>,
    index: [Vec<usize>; 3],
    frames: Vec<Frame>,
    edges: Vec<Vec<Edge>>,
}

impl PLinearMap {
    pub fn build(pattern: &Pattern) -> PLinearMap {
        let counts = pattern.branch_counts();
        let mut pieces = Vec::new();
        let mut index: [Vec<usize>; 3] = [Vec::new(), Vec::new(), Vec::new()];
        for branch in BranchId::all() {
            for lo in 0..counts[branch.index() as usize] {
                index[branch.index() as usize].push(pieces.len());
                pieces.push(Piece { branch, lo });
            }
        }
        let mut map = PLinearMap {
            pattern: pattern.clone(),
            counts,
            pieces,
            index,
            frames: Vec::new(),
            edges: Vec::new(),
        };
        for i in 0..map.pieces.len() {
            let frame = map.frame_for(map.pieces[i]);
            map.frames.push(frame);
        }
        for i in 0..map.pieces.len() {
            let mut edges = Vec::new();
            let f = map.frames[i];
            let lo = map.pieces[i].lo as i64;
            let (a, b) = {
                let u = f.slope * lo + f.offset;
                let v = f.slope * (lo + 1) + f.offset;
                (u.min(v), u.max(v))
            };
            if let Some(gamma) = f.pos {
                for j in 0..map.counts[gamma.index() as usize] as i64 {
                    if j >= a && j < b {
                        edges.push(Edge { to: map.index[gamma.index() as usize][j as usize], slope: f.slope, offset: f.offset });
                    }
                }
            }
            if let Some(delta) = f.neg {
                for j in 0..map.counts[delta.index() as usize] as i64 {
                    if -(j + 1) >= a && -j <= b {
                        edges.push(Edge { to: map.index[delta.index() as usize][j as usize], slope: -f.slope, offset: -f.offset });
                    }
                }
            }
            edges.sort_by_key(|e| e.to);
            map.edges.push(edges);
        }
        map
    }

    /// Image of a marked point: the hub for coordinate 0, otherwise the
    /// successor of the cycle point at `(branch, coord)`.
    pub fn marked_image(&self, branch: BranchId, coord: u32) -> TriodPoint {
        if coord == 0 {
            return TriodPoint::Hub;
        }
        let t = self
            .pattern
            .time_of(branch, coord)
            .expect("marked coordinate must carry a cycle point");
        let (b, r) = self.pattern.point(t + 1);
        TriodPoint::on_branch(b, BigRational::from_integer(BigInt::from(r)))
    }

    fn frame_for(&self, piece: Piece) -> Frame {
        let u = self.marked_image(piece.branch, piece.lo);
        let v = self.marked_image(piece.branch, piece.lo + 1);
        let coord_i64 = |p: &TriodPoint| p.distance().to_integer().to_i64().unwrap();
        let (pos_u, pos_v, pos, neg) = match (u.branch(), v.branch()) {
            (None, Some(bv)) => (0, coord_i64(&v), Some(bv), None),
            (Some(bu), None) => (coord_i64(&u), 0, Some(bu), None),
            (Some(bu), Some(bv)) if bu == bv => (coord_i64(&u), coord_i64(&v), Some(bu), None),
            (Some(bu), Some(bv)) => (-coord_i64(&u), coord_i64(&v), Some(bv), Some(bu)),
            (None, None) => unreachable!("a piece has at most one hub endpoint"),
        };
        let slope = pos_v - pos_u;
        debug_assert!(slope != 0, "marked images are distinct");
        Frame { slope, offset: pos_u - slope * piece.lo as i64, pos, neg }
    }

    pub fn pattern(&self) -> &Pattern {
        &self.pattern
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn edges(&self) -> &[Vec<Edge>] {
        &self.edges
    }

    pub fn piece_id(&self, branch: BranchId, lo: u32) -> usize {
        self.index[branch.index() as usize][lo as usize]
    }

    /// Largest absolute slope over all pieces, a Lipschitz constant.
    pub fn max_slope(&self) -> i64 {
        self.frames.iter().map(|f| f.slope.abs()).max().unwrap_or(1)
    }

    /// Exact evaluation anywhere on the triod. Beyond the outermost marked
    /// point of a branch the value is clamped to that point's image; empty
    /// branches collapse to the hub, which is fixed.
    pub fn evaluate(&self, x: &TriodPoint) -> TriodPoint {
        let (branch, coord) = match x {
            TriodPoint::Hub => return TriodPoint::Hub,
            TriodPoint::OnBranch { branch, coord } => (*branch, coord.clone()),
        };
        let k = self.counts[branch.index() as usize];
        if k == 0 {
            return TriodPoint::Hub;
        }
        let k_rat = BigRational::from_integer(BigInt::from(k));
        let coord = if coord > k_rat { k_rat } else { coord };
        let mut lo = coord.ceil().to_integer().to_i64().unwrap() - 1;
        lo = lo.clamp(0, k as i64 - 1);
        let frame = self.frames[self.piece_id(branch, lo as u32)];
        let pos = BigRational::from_integer(BigInt::from(frame.slope)) * &coord
            + BigRational::from_integer(BigInt::from(frame.offset));
        if pos.is_zero() {
            TriodPoint::Hub
        } else if pos.is_positive() {
            TriodPoint::on_branch(frame.pos.unwrap(), pos)
        } else {
            TriodPoint::on_branch(frame.neg.unwrap(), -pos)
        }
    }

    /// Modality: one plus the number of folds. A fold happens at an interior
    /// marked point whose two neighbors map to the same side of its image,
    /// and at the hub once per occupied germ beyond the number of distinct
    /// germ image branches. Constant stretches never fold (point preimages
    /// stay connected).
    pub fn modality(&self) -> u32 {
        #[derive(PartialEq)]
        enum Dir {
            Outward,
            Inward,
        }
        let dir = |from: &TriodPoint, toward: &TriodPoint| -> Dir {
            let (fb, fc) = match from {
                TriodPoint::OnBranch { branch, coord } => (*branch, coord.clone()),
                TriodPoint::Hub => unreachable!("cycle point images stay off the hub"),
            };
            match toward.branch() {
                Some(tb) if tb == fb && toward.distance() > fc => Dir::Outward,
                _ => Dir::Inward,
            }
        };
        let mut folds = 0;
        for branch in BranchId::all() {
            let k = self.counts[branch.index() as usize];
            for r in 1..k {
                let image = self.marked_image(branch, r);
                let before = self.marked_image(branch, r - 1);
                let after = self.marked_image(branch, r + 1);
                if dir(&image, &before) == dir(&image, &after) {
                    folds += 1;
                }
            }
        }
        let occupied: Vec<BranchId> = BranchId::all()
            .into_iter()
            .filter(|b| self.counts[b.index() as usize] > 0)
            .collect();
        let germ_images: BTreeSet<BranchId> = occupied
            .iter()
            .map(|b| self.marked_image(*b, 1).branch().unwrap())
            .collect();
        folds += occupied.len() as u32 - germ_images.len() as u32;
        1 + folds
    }

    /// Every periodic orbit of period at most `max_period`, except the fixed
    /// hub. Orbits come from closed walks in the piece graph; a walk whose
    /// loop composition is the identity yields a whole interval of periodic
    /// points and is reported once, flagged degenerate, with the interval of
    /// admissible coordinates at every position. The cycle `P` itself is
    /// always represented, either inside such a family or as its own record.
    pub fn periodic_orbits(&self, max_period: usize) -> Vec<OrbitRecord> {
        let mut state = WalkState::new(None);
        let mut budget = usize::MAX;
        for k in 1..=max_period {
            for start in 0..self.pieces.len() {
                let mut prefix = vec![(start, 1i128, 0i128)];
                self.walk_dfs(k, start, &mut prefix, &mut state, None, &mut budget);
            }
        }
        assert!(
            !state.overflow,
            "orbit composition exceeded 128-bit range; lower the period bound"
        );
        let n = self.pattern.period();
        if n <= max_period && !self.marked_orbit_represented(&state.out) {
            let points: Vec<TriodPoint> = (0..n)
                .map(|t| {
                    let (b, r) = self.pattern.point(t);
                    TriodPoint::on_branch(b, BigRational::from_integer(BigInt::from(r)))
                })
                .collect();
            state.out.push(OrbitRecord {
                period: n,
                points,
                pattern: self.pattern.clone(),
                degenerate: false,
                intervals: None,
                injected: true,
            });
        }
        state
            .out
            .sort_by_key(|a| (a.period, orbit_key(&a.points)));
        state.out
    }

    fn marked_orbit_represented(&self, records: &[OrbitRecord]) -> bool {
        let n = self.pattern.period();
        let marked: Vec<(BranchId, BigRational)> = (0..n)
            .map(|t| {
                let (b, r) = self.pattern.point(t);
                (b, BigRational::from_integer(BigInt::from(r)))
            })
            .collect();
        let marked_key = orbit_key(
            &marked
                .iter()
                .map(|(b, c)| TriodPoint::on_branch(*b, c.clone()))
                .collect::<Vec<_>>(),
        );
        for r in records {
            if orbit_key(&r.points) == marked_key {
                return true;
            }
            if r.degenerate && r.period == n {
                let intervals = r.intervals.as_ref().unwrap();
                for phase in 0..n {
                    let ok = (0..n).all(|j| {
                        let (b, c) = &marked[(j + phase) % n];
                        r.points[j].branch() == Some(*b)
                            && intervals[j].0 <= *c
                            && *c <= intervals[j].1
                    });
                    if ok {
                        return true;
                    }
                }
            }
        }
        false
    }

    /// Walks of length exactly `k` from `start` back to `start`, visiting
    /// only pieces with id at least `start` (each closed walk is explored
    /// from its least piece only). `displacement` carries the target filter
    /// used by the forcing search.
    fn walk_dfs(
        &self,
        k: usize,
        start: usize,
        prefix: &mut Vec<(usize, i128, i128)>,
        state: &mut WalkState,
        displacement: Option<&DisplacementFilter>,
        budget: &mut usize,
    ) {
        if *budget == 0 {
            state.cutoff = true;
            return;
        }
        *budget -= 1;
        let depth = prefix.len() - 1;
        let (cur, s, o) = *prefix.last().unwrap();
        if depth == k {
            if cur == start {
                self.solve_leaf(k, prefix, state);
            }
            return;
        }
        for edge in &self.edges[cur] {
            if edge.to < start {
                continue;
            }
            if let Some(filter) = displacement {
                let gained = filter.acc_at(prefix, self);
                let step =
                    third_shift(self.pieces[cur].branch, self.pieces[edge.to].branch) as i64;
                let needed = filter.target - gained - step;
                if !filter.feasible(edge.to, k - depth - 1, needed) {
                    continue;
                }
            }
            let (Some(s2), Some(o2)) = (
                (edge.slope as i128).checked_mul(s),
                (edge.slope as i128)
                    .checked_mul(o)
                    .and_then(|x| x.checked_add(edge.offset as i128)),
            ) else {
                state.overflow = true;
                continue;
            };
            prefix.push((edge.to, s2, o2));
            self.walk_dfs(k, start, prefix, state, displacement, budget);
            prefix.pop();
            if state.stop {
                return;
            }
        }
    }

    fn solve_leaf(&self, k: usize, prefix: &[(usize, i128, i128)], state: &mut WalkState) {
        let (_, s, o) = prefix[k];
        if s == 1 && o == 0 {
            // Identity composition: a closed interval of periodic points.
            let (mut a, mut b) = (None::<BigRational>, None::<BigRational>);
            for &(piece, sj, oj) in &prefix[..k] {
                let u = self.pieces[piece].lo as i64;
                let lo = (big_rat(u as i128) - big_rat(oj)) / big_rat(sj);
                let hi = (big_rat(u as i128 + 1) - big_rat(oj)) / big_rat(sj);
                let (lo, hi) = if sj > 0 { (lo, hi) } else { (hi, lo) };
                a = Some(a.map_or(lo.clone(), |x: BigRational| x.max(lo)));
                b = Some(b.map_or(hi.clone(), |x: BigRational| x.min(hi)));
            }
            let (a, b) = (a.unwrap(), b.unwrap());
            if a > b {
                return;
            }
            if a == b {
                self.emit_solution(k, prefix, a, state, None);
                return;
            }
            let width = &b - &a;
            let mid = (&a + &b) / big_rat(2);
            let mut candidates = vec![mid.clone()];
            let mut step = width.clone() / big_rat(4);
            for _ in 0..12 {
                candidates.push(&mid + &step);
                candidates.push(&mid - &step);
                step /= big_rat(2);
            }
            for c in candidates {
                if self.emit_solution(k, prefix, c, state, Some((&a, &b))) {
                    return;
                }
            }
            // Every sampled point has a shorter period, so the family repeats
            // a loop already recorded at a proper divisor of k.
        } else if s != 1 {
            let c = big_rat(o) / big_rat(1 - s);
            let admissible = prefix[..k].iter().all(|&(piece, sj, oj)| {
                let pos = big_rat(sj) * &c + big_rat(oj);
                let u = big_rat(self.pieces[piece].lo as i128);
                pos >= u && pos <= &u + big_rat(1)
            });
            if admissible {
                self.emit_solution(k, prefix, c, state, None);
            }
        }
    }

    /// Turns an admissible solution into a record. Returns false when the
    /// candidate must be retried (degenerate family sample with a shorter
    /// period than the walk).
    fn emit_solution(
        &self,
        k: usize,
        prefix: &[(usize, i128, i128)],
        c: BigRational,
        state: &mut WalkState,
        family: Option<(&BigRational, &BigRational)>,
    ) -> bool {
        let mut points = Vec::with_capacity(k);
        for &(piece, sj, oj) in &prefix[..k] {
            let pos = big_rat(sj) * &c + big_rat(oj);
            if pos.is_zero() {
                // The orbit runs through the fixed hub, so it is the hub.
                return family.is_none();
            }
            points.push(TriodPoint::on_branch(self.pieces[piece].branch, pos));
        }
        let period = least_period(&points);
        if family.is_some() && period < k {
            return false;
        }
        points.truncate(period);
        let key = orbit_key(&points);
        if !state.seen.insert(key) {
            return true;
        }
        let intervals = family.map(|(a, b)| {
            prefix[..period]
                .iter()
                .map(|&(_, sj, oj)| {
                    let x = big_rat(sj) * a + big_rat(oj);
                    let y = big_rat(sj) * b + big_rat(oj);
                    if x <= y { (x, y) } else { (y, x) }
                })
                .collect()
        });
        let record = OrbitRecord {
            period,
            pattern: orbit_pattern(&points),
            degenerate: family.is_some(),
            intervals,
            points,
            injected: false,
        };
        if let Some(probe) = &state.probe {
            if !record.pattern.same_up_to_rotation(probe) {
                state.witness = Some(record.clone());
                state.stop = true;
            }
        }
        state.out.push(record);
        true
    }
}

fn big_rat(x: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn least_period(points: &[TriodPoint]) -> usize {
    let k = points.len();
    (1..=k)
        .find(|&l| k.is_multiple_of(l) && (0..k).all(|j| points[j] == points[(j + l) % k]))
        .unwrap()
}

fn orbit_key(points: &[TriodPoint]) -> Vec<(u8, BigRational)> {
    let mut key: Vec<(u8, BigRational)> = points
        .iter()
        .map(|p| (p.branch().map_or(3, |b| b.index()), p.distance()))
        .collect();
    key.sort();
    key
}

/// Pattern of an orbit: rank points within each branch by distance.
fn orbit_pattern(points: &[TriodPoint]) -> Pattern {
    let mut coords: [Vec<BigRational>; 3] = [Vec::new(), Vec::new(), Vec::new()];
    for p in points {
        coords[p.branch().unwrap().index() as usize].push(p.distance());
    }
    for c in &mut coords {
        c.sort();
    }
    let ranked = points
        .iter()
        .map(|p| {
            let b = p.branch().unwrap();
            let rank = coords[b.index() as usize]
                .iter()
                .position(|c| *c == p.distance())
                .unwrap() as u32
                + 1;
            (b, rank)
        })
        .collect();
    Pattern::new(ranked).expect("orbit points induce valid ranks")
}

struct WalkState {
    seen: BTreeSet<Vec<(u8, BigRational)>>,
    out: Vec<OrbitRecord>,
    /// When set, stop as soon as an orbit with a different pattern shows up.
    probe: Option<Pattern>,
    witness: Option<OrbitRecord>,
    stop: bool,
    overflow: bool,
    cutoff: bool,
}

impl WalkState {
    fn new(probe: Option<Pattern>) -> WalkState {
        WalkState {
            seen: BTreeSet::new(),
            out: Vec::new(),
            probe,
            witness: None,
            stop: false,
            overflow: false,
            cutoff: false,
        }
    }
}

/// A periodic orbit of the induced map, reduced to its least period.
/// `points[j+1]` is the image of `points[j]` (indices mod the period). For a
/// degenerate family, `points` is one interior representative and
/// `intervals[j]` is the closed coordinate range the family sweeps at
/// position `j`.
#[derive(Debug, Clone)]
pub struct OrbitRecord {
    pub period: usize,
    pub points: Vec<TriodPoint>,
    pub pattern: Pattern,
    pub degenerate: bool,
    pub intervals: Option<Vec<(Rational, Rational)>>,
    /// Set when the record was added by the marked-orbit completeness
    /// fallback rather than found by a piece walk.
    pub injected: bool,
}

/// Whether pattern `a` forces pattern `b`: some orbit of the induced map of
/// `a`, of period at most `max_period`, exhibits `b`.
pub fn forces(a: &Pattern, b: &Pattern, max_period: usize) -> bool {
    PLinearMap::build(a)
        .periodic_orbits(max_period)
        .iter()
        .any(|r| r.pattern.same_up_to_rotation(b))
}

/// The two regularity routes disagreed; this is an internal consistency
/// failure, never resolved silently.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error(
    "regularity cross-check mismatch: orbit route says {orbit_route}, loop route says {loop_route}"
)]
pub struct CrossCheckMismatch {
    pub orbit_route: bool,
    pub loop_route: bool,
}

/// A pattern is regular when it does not force the primitive 2-pattern,
/// equivalently when its oriented graph has no 2-loop mixing both nonzero
/// displacements. Both routes run and must agree.
pub fn is_regular(p: &Pattern) -> Result<bool, CrossCheckMismatch> {
    let orbit_route = !PLinearMap::build(p).periodic_orbits(2).iter().any(|r| {
        r.period == 2 && r.points[0].branch() != r.points[1].branch()
    });
    let loop_route = !loop_graph::has_mixed_two_loop(p);
    if orbit_route != loop_route {
        return Err(CrossCheckMismatch { orbit_route, loop_route });
    }
    Ok(orbit_route)
}

/// Outcome of the bounded search for a forced companion with the same
/// rotation number.
#[derive(Debug, Clone)]
pub enum ForcingWitness {
    /// A forced pattern with the same rotation number, other than the
    /// pattern itself.
    Witness { pattern: Pattern, period: usize },
    /// No companion up to the stated period bound.
    ExhaustedUpTo(usize),
    /// The search hit its node budget or an arithmetic width limit before
    /// the bound.
    Cutoff,
}

struct DisplacementFilter {
    target: i64,
    /// feasible[r][piece] is the set of achievable remaining displacements
    /// (in thirds) for walks of length r from piece back to the start.
    feasible: Vec<Vec<Vec<bool>>>,
    offset: usize,
}

impl DisplacementFilter {
    fn build(map: &PLinearMap, start: usize, k: usize, target: i64) -> DisplacementFilter {
        let pieces = map.pieces().len();
        let offset = 0usize;
        let width = 2 * k + 1;
        let mut feasible = vec![vec![vec![false; width]; pieces]; k + 1];
        for p in 0..pieces {
            if p == start {
                feasible[0][p][0] = true;
            }
        }
        for r in 1..=k {
            for p in 0..pieces {
                for edge in &map.edges()[p] {
                    if edge.to < start {
                        continue;
                    }
                    let step = third_shift(map.pieces()[p].branch, map.pieces()[edge.to].branch)
                        as usize;
                    for t in 0..width {
                        if t >= step && feasible[r - 1][edge.to][t - step] {
                            feasible[r][p][t] = true;
                        }
                    }
                }
            }
        }
        DisplacementFilter { target, feasible, offset }
    }

    fn feasible(&self, piece: usize, remaining: usize, needed: i64) -> bool {
        if needed < 0 {
            return false;
        }
        let needed = needed as usize + self.offset;
        needed < self.feasible[remaining][piece].len() && self.feasible[remaining][piece][needed]
    }

    fn acc_at(&self, prefix: &[(usize, i128, i128)], map: &PLinearMap) -> i64 {
        prefix
            .windows(2)
            .map(|w| third_shift(map.pieces()[w[0].0].branch, map.pieces()[w[1].0].branch) as i64)
            .sum()
    }
}

/// Searches the orbits of `p`'s induced map for a forced pattern with the
/// same rotation number but a different shape, over periods `q, 2q, ...,
/// multiplier * q` where the rotation number is `p'/q` in lowest terms.
/// Only walks whose total branch displacement matches the target can carry
/// such orbits, so the search is pruned by a displacement feasibility table.
pub fn same_rotation_witness(p: &Pattern, multiplier: usize) -> ForcingWitness {
    let n = p.period();
    let thirds: i64 = (0..n)
        .map(|t| third_shift(p.point(t).0, p.point(t + 1).0) as i64)
        .sum();
    // rho = thirds / (3n), reduced to num/den.
    let g = gcd(thirds, 3 * n as i64);
    let (num, den) = (thirds / g, 3 * n as i64 / g);
    let map = PLinearMap::build(p);
    let mut budget: usize = 50_000_000;
    let mut state = WalkState::new(Some(p.clone()));
    for m in 1..=multiplier {
        let k = (m as i64 * den) as usize;
        // Walks of length k carry an orbit of rotation number num/den
        // exactly when their branch displacement sums to 3 * k * rho thirds.
        let target = 3 * m as i64 * num;
        for start in 0..map.pieces().len() {
            let filter = DisplacementFilter::build(&map, start, k, target);
            let mut prefix = vec![(start, 1i128, 0i128)];
            map.walk_dfs(k, start, &mut prefix, &mut state, Some(&filter), &mut budget);
            if state.stop {
                let witness = state.witness.take().unwrap();
                return ForcingWitness::Witness {
                    pattern: witness.pattern,
                    period: witness.period,
                };
            }
        }
    }
    if state.overflow || state.cutoff {
        ForcingWitness::Cutoff
    } else {
        ForcingWitness::ExhaustedUpTo(multiplier * den as usize)
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 { 1 } else { a }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::fixtures::{e2, e3, e4};
    use crate::triod::rat;

    fn pt(b: u8, num: i64, den: i64) -> TriodPoint {
        TriodPoint::on_branch(BranchId::new(b), rat(num, den))
    }

    fn single() -> Pattern {
        Pattern::new(vec![(BranchId::new(0), 1)]).unwrap()
    }

    fn stacked_two() -> Pattern {
        Pattern::new(vec![(BranchId::new(0), 1), (BranchId::new(0), 2)]).unwrap()
    }

    #[test]
    fn evaluation_follows_the_marked_arcs() {
        let f = PLinearMap::build(&e3());
        assert_eq!(f.evaluate(&TriodPoint::Hub), TriodPoint::Hub);
        assert_eq!(f.evaluate(&pt(0, 1, 2)), pt(1, 1, 2));
        assert_eq!(f.evaluate(&pt(0, 1, 1)), pt(1, 1, 1));

        let f = PLinearMap::build(&e4());
        // The outer piece of branch 0 maps across the hub.
        assert_eq!(f.evaluate(&pt(0, 3, 2)), TriodPoint::Hub);
        assert_eq!(f.evaluate(&pt(0, 5, 4)), pt(1, 1, 2));
        assert_eq!(f.evaluate(&pt(0, 7, 4)), pt(0, 1, 2));
        // Beyond the outermost marked point the map clamps.
        assert_eq!(f.evaluate(&pt(0, 9, 1)), f.evaluate(&pt(0, 2, 1)));

        let f = PLinearMap::build(&single());
        assert_eq!(f.evaluate(&pt(0, 1, 2)), pt(0, 1, 2));
        assert_eq!(f.evaluate(&pt(0, 9, 1)), pt(0, 1, 1));
        // Empty branches collapse to the fixed hub.
        assert_eq!(f.evaluate(&pt(1, 7, 1)), TriodPoint::Hub);
    }

    #[test]
    fn modality_counts_folds() {
        assert_eq!(PLinearMap::build(&e3()).modality(), 1);
        assert_eq!(PLinearMap::build(&e4()).modality(), 2);
        assert_eq!(PLinearMap::build(&single()).modality(), 1);
        assert_eq!(PLinearMap::build(&e2()).modality(), 1);
    }

    #[test]
    fn markov_edges_of_the_period_four_example() {
        let f = PLinearMap::build(&e4());
        let outer = f.piece_id(BranchId::new(0), 1);
        let targets: Vec<Piece> = f.edges()[outer].iter().map(|e| f.pieces()[e.to]).collect();
        // The piece between the two branch-0 points covers the hub piece of
        // branch 0 and the hub piece of branch 1.
        assert_eq!(
            targets,
            vec![
                Piece { branch: BranchId::new(0), lo: 0 },
                Piece { branch: BranchId::new(1), lo: 0 },
            ]
        );
    }

    #[test]
    fn rotation_like_three_cycle_has_one_orbit_family() {
        let records = PLinearMap::build(&e3()).periodic_orbits(3);
        assert_eq!(records.len(), 1);
        let r = &records[0];
        assert_eq!(r.period, 3);
        assert!(r.degenerate);
        assert!(r.pattern.same_up_to_rotation(&e3()));
        let intervals = r.intervals.as_ref().unwrap();
        assert_eq!(intervals.len(), 3);
        for (lo, hi) in intervals {
            assert_eq!((lo.clone(), hi.clone()), (rat(0, 1), rat(1, 1)));
        }
    }

    #[test]
    fn period_four_example_orbits() {
        let f = PLinearMap::build(&e4());
        assert!(f.periodic_orbits(2).is_empty());
        let records = f.periodic_orbits(4);
        assert!(records.iter().any(|r| r.pattern.same_up_to_rotation(&e3())));
        let own: Vec<_> = records
            .iter()
            .filter(|r| r.pattern.same_up_to_rotation(&e4()))
            .collect();
        assert!(!own.is_empty());
        assert!(own.iter().any(|r| !r.degenerate
            && r.points.contains(&pt(0, 1, 1))
            && r.points.contains(&pt(0, 2, 1))));
        assert!(forces(&e4(), &e3(), 3));
        assert!(forces(&e4(), &e4(), 4));
        assert!(!forces(&e3(), &e4(), 6));
    }

    #[test]
    fn stacked_pair_forces_the_fixed_point() {
        let p = stacked_two();
        let records = PLinearMap::build(&p).periodic_orbits(2);
        let fixed: Vec<_> = records.iter().filter(|r| r.period == 1).collect();
        assert_eq!(fixed.len(), 1);
        assert_eq!(fixed[0].points[0], pt(0, 3, 2));
        let doubles: Vec<_> = records.iter().filter(|r| r.period == 2).collect();
        assert_eq!(doubles.len(), 1);
        assert!(doubles[0].degenerate);
        assert!(doubles[0].pattern.same_up_to_rotation(&p));

        match same_rotation_witness(&p, 3) {
            ForcingWitness::Witness { pattern, period } => {
                assert_eq!(period, 1);
                assert_eq!(pattern, single());
            }
            other => panic!("expected a witness, got {other:?}"),
        }
    }

    #[test]
    fn regularity_routes_agree_on_the_fixtures() {
        assert!(!is_regular(&e2()).unwrap());
        assert!(is_regular(&e3()).unwrap());
        assert!(is_regular(&e4()).unwrap());
        assert!(is_regular(&single()).unwrap());
        assert!(is_regular(&stacked_two()).unwrap());
    }

    #[test]
    fn witness_search_is_quiet_on_rotation_like_cycles() {
        assert!(matches!(
            same_rotation_witness(&e3(), 3),
            ForcingWitness::ExhaustedUpTo(9)
        ));
        assert!(matches!(
            same_rotation_witness(&e4(), 3),
            ForcingWitness::ExhaustedUpTo(12)
        ));
    }
}
