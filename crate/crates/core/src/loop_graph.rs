//! The oriented graph of a pattern and its loop rotation data.
//!
//! Vertices are the cycle points (indexed by time). There is an arrow from
//! `x` to `y` when some cycle point `p` with `p <= x` maps to a point
//! `f(p) >= y`; because arc extents are attained at endpoints this is
//! exactly the covering relation of the connect-the-dots map restricted to
//! hub-to-point arcs. Every arrow carries the branch displacement of its
//! endpoints in thirds of a turn, which paints it green (0), black (1/3) or
//! red (2/3). Loops average displacement over length, giving rotation
//! numbers; the fundamental loop follows the dynamics itself.

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::pattern::Pattern;
use crate::triod::{BranchId, Rational};

/// Displacement class of an arrow or point.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Color {
    Green,
    Black,
    Red,
}

impl Color {
    pub fn from_shift(thirds: u8) -> Color {
        match thirds {
            0 => Color::Green,
            1 => Color::Black,
            2 => Color::Red,
            _ => unreachable!("branch shift is taken mod 3"),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Color::Green => "green",
            Color::Black => "black",
            Color::Red => "red",
        }
    }
}

/// Branch shift from `from` to `to` in thirds of a full turn.
pub fn third_shift(from: BranchId, to: BranchId) -> u8 {
    (3 + to.index() - from.index()) % 3
}

/// Color of each point: the displacement class of its own dynamical step.
pub fn point_colors(p: &Pattern) -> Vec<Color> {
    (0..p.period())
        .map(|t| Color::from_shift(third_shift(p.point(t).0, p.point(t + 1).0)))
        .collect()
}

/// The oriented graph over the cycle points of one pattern.
pub struct PointGraph {
    n: usize,
    adj: Vec<Vec<bool>>,
    branches: Vec<BranchId>,
}

/// Builds the graph by the reach rule: `t -> s` when a point below `x_t` on
/// its branch maps at or above `x_s`.
pub fn build_graph(p: &Pattern) -> PointGraph {
    let n = p.period();
    let mut adj = vec![vec![false; n]; n];
    for t in 0..n {
        let (bt, rt) = p.point(t);
        for u in 0..n {
            let (bu, ru) = p.point(u);
            if bu != bt || ru > rt {
                continue;
            }
            let (bi, ri) = p.point(u + 1);
            for s in 0..n {
                let (bs, rs) = p.point(s);
                if bs == bi && rs <= ri {
                    adj[t][s] = true;
                }
            }
        }
    }
    PointGraph { n, adj, branches: (0..n).map(|t| p.point(t).0).collect() }
}

impl PointGraph {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn has_arrow(&self, t: usize, s: usize) -> bool {
        self.adj[t][s]
    }

    pub fn arrows(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for t in 0..self.n {
            for s in 0..self.n {
                if self.adj[t][s] {
                    out.push((t, s));
                }
            }
        }
        out
    }

    /// Displacement of the arrow `t -> s` in thirds.
    pub fn shift(&self, t: usize, s: usize) -> u8 {
        third_shift(self.branches[t], self.branches[s])
    }

    pub fn color(&self, t: usize, s: usize) -> Color {
        Color::from_shift(self.shift(t, s))
    }

    /// Whether every vertex reaches every other vertex.
    pub fn is_transitive(&self) -> bool {
        for start in 0..self.n {
            let mut reached = vec![false; self.n];
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for w in 0..self.n {
                    if self.adj[v][w] && !reached[w] {
                        reached[w] = true;
                        stack.push(w);
                    }
                }
            }
            if reached.iter().any(|r| !r) {
                return false;
            }
        }
        true
    }

    /// All elementary loops (simple cycles), each listed once starting from
    /// its least vertex, in lexicographic order.
    pub fn elementary_loops(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        let mut on_path = vec![false; self.n];
        for start in 0..self.n {
            path.push(start);
            on_path[start] = true;
            self.loop_dfs(start, &mut path, &mut on_path, &mut out);
            on_path[start] = false;
            path.pop();
        }
        out.sort();
        out
    }

    fn loop_dfs(
        &self,
        start: usize,
        path: &mut Vec<usize>,
        on_path: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let cur = *path.last().unwrap();
        for next in start..self.n {
            if !self.adj[cur][next] {
                continue;
            }
            if next == start {
                out.push(path.clone());
            } else if !on_path[next] {
                path.push(next);
                on_path[next] = true;
                self.loop_dfs(start, path, on_path, out);
                on_path[next] = false;
                path.pop();
            }
        }
    }

    /// Total displacement of a closed vertex sequence, in thirds.
    pub fn loop_thirds(&self, vertices: &[usize]) -> i64 {
        let k = vertices.len();
        (0..k)
            .map(|i| self.shift(vertices[i], vertices[(i + 1) % k]) as i64)
            .sum()
    }

    /// Rotation number of a loop: displacement over length.
    pub fn loop_rho(&self, vertices: &[usize]) -> Rational {
        BigRational::new(
            BigInt::from(self.loop_thirds(vertices)),
            BigInt::from(3 * vertices.len() as i64),
        )
    }
}

/// An over-period rotation pair `(displacement, length)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct RotationPair {
    pub d: u64,
    pub n: u64,
}

impl RotationPair {
    pub fn rho(&self) -> Rational {
        BigRational::new(BigInt::from(self.d), BigInt::from(self.n))
    }
}

/// A modified rotation pair: reduced rotation number plus multiplicity.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModifiedRotationPair {
    pub t: Rational,
    pub m: u64,
}

/// Reduces a rotation pair: `(d, n) -> (d/g over n/g, g)`. A zero
/// displacement reduces to `(0/1, n)`.
pub fn mrp_of(rp: RotationPair) -> ModifiedRotationPair {
    let g = gcd(rp.d, rp.n);
    ModifiedRotationPair {
        t: BigRational::new(BigInt::from(rp.d / g), BigInt::from(rp.n / g)),
        m: g,
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    if a == 0 { 1 } else { a }
}

/// The fundamental loop `x_0 -> x_1 -> ... -> x_0` and its rotation pair.
/// Its displacement is a whole number of turns because the loop returns to
/// its start branch.
pub fn fundamental_loop(p: &Pattern) -> (Vec<usize>, RotationPair) {
    let n = p.period();
    let thirds: i64 = (0..n)
        .map(|t| third_shift(p.point(t).0, p.point(t + 1).0) as i64)
        .sum();
    assert!(thirds % 3 == 0, "a closed loop shifts by whole turns");
    ((0..n).collect(), RotationPair { d: (thirds / 3) as u64, n: n as u64 })
}

/// The graph is not strongly connected, so the loop-interval description of
/// the rotation set does not apply.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("oriented graph is not transitive")]
pub struct NotTransitive;

/// The rotation set as the closed interval spanned by elementary loop
/// rotation numbers.
pub fn rotation_set(p: &Pattern) -> Result<(Rational, Rational), NotTransitive> {
    let g = build_graph(p);
    if !g.is_transitive() {
        return Err(NotTransitive);
    }
    let rhos: Vec<Rational> = g.elementary_loops().iter().map(|l| g.loop_rho(l)).collect();
    let min = rhos.iter().min().cloned().expect("fundamental loop exists");
    let max = rhos.iter().max().cloned().expect("fundamental loop exists");
    Ok((min, max))
}

/// Whether some 2-loop mixes the two nonzero displacements, the loop-side
/// signature of forcing the primitive 2-pattern.
pub fn has_mixed_two_loop(p: &Pattern) -> bool {
    let g = build_graph(p);
    for t in 0..g.len() {
        for s in t + 1..g.len() {
            if g.has_arrow(t, s) && g.has_arrow(s, t) && g.branches[t] != g.branches[s] {
                return true;
            }
        }
    }
    false
}

/// Arrow lines for one pattern, sorted by source then target:
/// `x0 -> x1 d=1/3 black`.
pub fn dump_lines(p: &Pattern) -> Vec<String> {
    let g = build_graph(p);
    g.arrows()
        .iter()
        .map(|&(t, s)| {
            format!("x{t} -> x{s} d={}/3 {}", g.shift(t, s), g.color(t, s).name())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::fixtures::{e2, e3, e4};
    use crate::triod::rat;

    #[test]
    fn reach_rule_arrows_for_the_period_four_example() {
        let g = build_graph(&e4());
        let expected = vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 0), (3, 1)];
        assert_eq!(g.arrows(), expected);
        assert!(!g.has_arrow(3, 3));
        assert_eq!(g.color(3, 0), Color::Green);
        assert_eq!(g.color(3, 1), Color::Black);
    }

    #[test]
    fn elementary_loops_and_rotation_set_of_the_period_four_example() {
        let g = build_graph(&e4());
        let loops = g.elementary_loops();
        assert_eq!(loops, vec![vec![0, 1, 2], vec![0, 1, 2, 3], vec![1, 2, 3]]);
        for l in &loops {
            assert_eq!(g.loop_thirds(l) % 3, 0);
        }
        assert_eq!(rotation_set(&e4()).unwrap(), (rat(1, 4), rat(1, 3)));
    }

    #[test]
    fn fundamental_pairs_and_colors() {
        let (_, rp) = fundamental_loop(&e2());
        assert_eq!(rp, RotationPair { d: 1, n: 2 });
        assert_eq!(rp.rho(), rat(1, 2));

        let (_, rp) = fundamental_loop(&e3());
        assert_eq!(rp, RotationPair { d: 1, n: 3 });

        let (_, rp) = fundamental_loop(&e4());
        assert_eq!(rp, RotationPair { d: 1, n: 4 });

        assert_eq!(
            point_colors(&e4()),
            vec![Color::Black, Color::Black, Color::Black, Color::Green]
        );
        let census = point_colors(&e4());
        let b = census.iter().filter(|c| **c == Color::Black).count() as i64;
        let r = census.iter().filter(|c| **c == Color::Red).count() as i64;
        assert_eq!(rat(b + 2 * r, 3 * 4), rat(1, 4));
    }

    #[test]
    fn mixed_two_loops_flag_the_primitive_two_pattern() {
        assert!(has_mixed_two_loop(&e2()));
        assert!(!has_mixed_two_loop(&e3()));
        assert!(!has_mixed_two_loop(&e4()));
    }

    #[test]
    fn reduced_pairs() {
        let m = mrp_of(RotationPair { d: 2, n: 6 });
        assert_eq!(m.t, rat(1, 3));
        assert_eq!(m.m, 2);

        let m = mrp_of(RotationPair { d: 0, n: 4 });
        assert_eq!(m.t, rat(0, 1));
        assert_eq!(m.m, 4);

        let m = mrp_of(RotationPair { d: 1, n: 4 });
        assert_eq!(m.t, rat(1, 4));
        assert_eq!(m.m, 1);
    }

    #[test]
    fn primitive_three_cycle_graph_is_a_single_loop() {
        let g = build_graph(&e3());
        assert_eq!(g.arrows(), vec![(0, 1), (1, 2), (2, 0)]);
        assert!(g.is_transitive());
        assert_eq!(rotation_set(&e3()).unwrap(), (rat(1, 3), rat(1, 3)));
        assert_eq!(
            dump_lines(&e3()),
            vec![
                "x0 -> x1 d=1/3 black",
                "x1 -> x2 d=1/3 black",
                "x2 -> x0 d=1/3 black",
            ]
        );
    }
}
