//! Codes, canonical branch ordering, twist classification, and the
//! state/country landscape of a pattern.
//!
//! Rotation quantities depend on the cyclic orientation chosen for the
//! branch labels. For regular patterns whose rank-1 points all carry the
//! same nonzero displacement there is a canonical choice: relabel (possibly
//! reflecting the orientation) so every rank-1 point is black, then pick
//! the lexicographically least of the three cyclic labelings. All theory
//! values of a classification are computed on that canonical form when it
//! exists and on the pattern as given otherwise.

use num::{BigInt, BigRational};
use serde_json::json;
use thiserror::Error;

use crate::loop_graph::{
    fundamental_loop, mrp_of, point_colors, third_shift, Color, ModifiedRotationPair,
    RotationPair,
};
use crate::pattern::Pattern;
use crate::plinear::{self, CrossCheckMismatch, PLinearMap};
use crate::triod::{rat, BranchId, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TheoryError {
    #[error("pattern is not regular")]
    NotRegular,
    #[error("no branch relabeling makes every rank-1 point black")]
    NoCanonicalOrdering,
    #[error("code function is undefined at rotation number 1/3")]
    RotationOneThird,
    #[error("oscillation of an empty subset is undefined")]
    EmptySubset,
    #[error("operation requires the other rotation regime")]
    WrongRegime,
    #[error(transparent)]
    CrossCheck(#[from] CrossCheckMismatch),
}

/// A canonically labeled and canonically rotated copy of a regular pattern.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    pub pattern: Pattern,
    /// `relabel[i]` is the new label of input branch `i`.
    pub relabel: [BranchId; 3],
    /// Whether the orientation was reversed (branches 1 and 2 swapped
    /// before rotating).
    pub reflected: bool,
    /// Time offset: canonical time `t` is input time `(t + rotation) % n`.
    pub rotation: usize,
}

/// Relabels a regular pattern so that every rank-1 point is black, choosing
/// the least of the admissible labelings. Fails when a branch is empty or
/// the rank-1 points do not share one nonzero displacement: green rank-1
/// points survive every relabeling, and mixed black/red rank-1 points stay
/// mixed under reflection.
pub fn canonical_branch_ordering(p: &Pattern) -> Result<CanonicalForm, TheoryError> {
    if !plinear::is_regular(p)? {
        return Err(TheoryError::NotRegular);
    }
    let counts = p.branch_counts();
    if counts.contains(&0) {
        return Err(TheoryError::NoCanonicalOrdering);
    }
    let colors = point_colors(p);
    let rank1: Vec<Color> = BranchId::all()
        .into_iter()
        .map(|b| colors[p.time_of(b, 1).unwrap()])
        .collect();
    let reflected = if rank1.iter().all(|c| *c == Color::Black) {
        false
    } else if rank1.iter().all(|c| *c == Color::Red) {
        true
    } else {
        return Err(TheoryError::NoCanonicalOrdering);
    };
    let base = if reflected { p.reflect_branches() } else { p.clone() };
    let turn = (0..3u8)
        .min_by_key(|&k| base.rotate_branches(k).canonicalize())
        .unwrap();
    let relabeled = base.rotate_branches(turn);
    let rotation = relabeled.canonical_offset();
    let relabel = BranchId::all().map(|b| {
        let r = if reflected { b.reflect() } else { b };
        r.advance(turn)
    });
    Ok(CanonicalForm { pattern: relabeled.canonicalize(), relabel, reflected, rotation })
}

/// The canonical primitive 3-cycle.
pub fn primitive_three() -> Pattern {
    Pattern::new(vec![
        (BranchId::new(0), 1),
        (BranchId::new(1), 1),
        (BranchId::new(2), 1),
    ])
    .unwrap()
}

/// Code values of every point, indexed by time.
///
/// `code[k]` follows the floor form: `k * rho` minus the whole turns
/// accumulated so far. `adjusted[k]` adds `rho - d` at every step instead,
/// so the two agree up to the fractional part of the pending displacement.
/// The floor form matches the definition used for oscillation, conjugacy
/// and reporting; differences of the adjusted form do not depend on the
/// base point and carry the cross-branch movement inequalities.
#[derive(Debug, Clone)]
pub struct CodeTable {
    pub code: Vec<Rational>,
    pub adjusted: Vec<Rational>,
    pub rho: Rational,
}

pub fn code_table(p: &Pattern) -> Result<CodeTable, TheoryError> {
    let (_, rp) = fundamental_loop(p);
    let rho = rp.rho();
    if rho == rat(1, 3) {
        return Err(TheoryError::RotationOneThird);
    }
    let n = p.period();
    let mut code = Vec::with_capacity(n);
    let mut adjusted = Vec::with_capacity(n);
    let mut thirds: i64 = 0;
    for k in 0..n {
        let k_rho = BigRational::from_integer(BigInt::from(k as i64)) * &rho;
        code.push(&k_rho - rat(thirds.div_euclid(3), 1));
        adjusted.push(&k_rho - rat(thirds, 3));
        thirds += third_shift(p.point(k).0, p.point(k + 1).0) as i64;
    }
    Ok(CodeTable { code, adjusted, rho })
}

/// Oscillation: spread of the code over a set of times.
pub fn chi(values: &[Rational], subset: &[usize]) -> Result<Rational, TheoryError> {
    if subset.is_empty() {
        return Err(TheoryError::EmptySubset);
    }
    let max = subset.iter().map(|&t| &values[t]).max().unwrap();
    let min = subset.iter().map(|&t| &values[t]).min().unwrap();
    Ok(max - min)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Monotonicity {
    Decreasing,
    NonDecreasing,
    StrictlyIncreasing,
}

/// Monotonicity of the code along the partial order: below 1/3 the code
/// must fall outward, above 1/3 it must rise outward; strict additionally
/// forbids equal codes at rank-consecutive points of one branch.
pub fn code_monotonicity(p: &Pattern, table: &CodeTable) -> Monotonicity {
    let below = table.rho <= rat(1, 3);
    let counts = p.branch_counts();
    let mut non_decreasing = true;
    let mut strict = true;
    for b in BranchId::all() {
        let k = counts[b.index() as usize];
        let times: Vec<usize> = (1..=k).map(|r| p.time_of(b, r).unwrap()).collect();
        for i in 0..times.len() {
            for j in 0..i {
                // x = times[i] is above y = times[j].
                let (lx, ly) = (&table.code[times[i]], &table.code[times[j]]);
                if (below && lx > ly) || (!below && lx < ly) {
                    non_decreasing = false;
                }
            }
            if i > 0 && table.code[times[i]] == table.code[times[i - 1]] {
                strict = false;
            }
        }
    }
    if !non_decreasing {
        Monotonicity::Decreasing
    } else if strict {
        Monotonicity::StrictlyIncreasing
    } else {
        Monotonicity::NonDecreasing
    }
}

/// Whether comparable points with images on one branch keep their order.
pub fn is_order_preserving(p: &Pattern) -> bool {
    let n = p.period();
    for t in 0..n {
        for u in 0..n {
            let ((bt, rt), (bu, ru)) = (p.point(t), p.point(u));
            if bt != bu || rt <= ru {
                continue;
            }
            let ((bi, ri), (bj, rj)) = (p.point(t + 1), p.point(u + 1));
            if bi == bj && ri <= rj {
                return false;
            }
        }
    }
    true
}

/// The twist criterion: regular, canonically orderable, and on the
/// canonical form either the primitive 3-cycle (at rotation number 1/3) or
/// a coprime rotation pair with strictly increasing code.
pub fn is_triod_twist(p: &Pattern) -> Result<bool, CrossCheckMismatch> {
    match classify(p) {
        Ok(c) => Ok(c.twist),
        Err(e) => Err(e),
    }
}

/// A maximal run of same-colored points along one branch, inner to outer.
#[derive(Debug, Clone)]
pub struct State {
    pub branch: BranchId,
    pub color: Color,
    /// Times, ordered by rank.
    pub times: Vec<usize>,
}

/// A maximal chain of adjacent green states linked by the dynamics: the
/// outer state reaches at or below the inner one.
#[derive(Debug, Clone)]
pub struct Country {
    pub branch: BranchId,
    /// Indices into the state list, inner to outer.
    pub states: Vec<usize>,
}

/// States, countries and colors of one pattern.
pub struct Landscape {
    pattern: Pattern,
    colors: Vec<Color>,
    states: Vec<State>,
    countries: Vec<Country>,
}

impl Landscape {
    pub fn build(p: &Pattern) -> Landscape {
        let colors = point_colors(p);
        let counts = p.branch_counts();
        let mut states: Vec<State> = Vec::new();
        for b in BranchId::all() {
            for r in 1..=counts[b.index() as usize] {
                let t = p.time_of(b, r).unwrap();
                match states.last_mut() {
                    Some(s) if s.branch == b && s.color == colors[t] => s.times.push(t),
                    _ => states.push(State { branch: b, color: colors[t], times: vec![t] }),
                }
            }
        }
        let mut countries: Vec<Country> = Vec::new();
        for b in BranchId::all() {
            let greens: Vec<usize> = (0..states.len())
                .filter(|&i| states[i].branch == b && states[i].color == Color::Green)
                .collect();
            for (pos, &i) in greens.iter().enumerate() {
                let linked_to_previous = pos > 0 && {
                    // A = states[i] is the outer state, B the inner one; they
                    // are linked when some image from A lands at or below the
                    // top of B.
                    let inner = &states[greens[pos - 1]];
                    let top_of_inner = inner.times.iter().map(|&t| p.point(t).1).max().unwrap();
                    states[i].times.iter().any(|&a| {
                        let (fb, fr) = p.point(a + 1);
                        fb == b && fr <= top_of_inner
                    })
                };
                if linked_to_previous {
                    countries.last_mut().unwrap().states.push(i);
                } else {
                    countries.push(Country { branch: b, states: vec![i] });
                }
            }
        }
        Landscape { pattern: p.clone(), colors, states, countries }
    }

    pub fn states(&self) -> &[State] {
        &self.states
    }

    pub fn countries(&self) -> &[Country] {
        &self.countries
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn state_count(&self, color: Color) -> usize {
        self.states.iter().filter(|s| s.color == color).count()
    }

    /// All times of a country, inner to outer.
    pub fn country_times(&self, country: usize) -> Vec<usize> {
        self.countries[country]
            .states
            .iter()
            .flat_map(|&s| self.states[s].times.iter().copied())
            .collect()
    }

    pub fn country_of_time(&self, t: usize) -> Option<usize> {
        (0..self.countries.len()).find(|&c| self.country_times(c).contains(&t))
    }

    /// The anchor of a country: image of the innermost point of its
    /// innermost state. The theory expects it to be black and on the same
    /// branch below one third.
    pub fn country_anchor(&self, country: usize) -> usize {
        let inner_state = &self.states[self.countries[country].states[0]];
        (inner_state.times[0] + 1) % self.pattern.period()
    }

    /// The country maps of the low-rotation regime. `which` selects the
    /// first map (one step from the anchor, landing on the next branch) or
    /// the second (two steps, next branch again). The result is the green
    /// country at or nearest above the landing point, if any.
    pub fn phi(
        &self,
        country: usize,
        which: u8,
        rho: &Rational,
    ) -> Result<Option<usize>, TheoryError> {
        if *rho >= rat(1, 3) {
            return Err(TheoryError::WrongRegime);
        }
        let n = self.pattern.period();
        let anchor = self.country_anchor(country);
        if self.colors[anchor] != Color::Black {
            return Ok(None);
        }
        let landing = match which {
            1 => (anchor + 1) % n,
            2 => {
                let y1 = (anchor + 1) % n;
                if self.colors[y1] != Color::Black {
                    return Ok(None);
                }
                (y1 + 1) % n
            }
            _ => panic!("which must be 1 or 2"),
        };
        Ok(self.country_at_or_above(landing))
    }

    /// The green country containing `t`, or the nearest green country of
    /// `t`'s branch whose points all lie above `t`.
    fn country_at_or_above(&self, t: usize) -> Option<usize> {
        if self.colors[t] == Color::Green {
            return self.country_of_time(t);
        }
        let (b, r) = self.pattern.point(t);
        let mut best: Option<(u32, usize)> = None;
        for c in 0..self.countries.len() {
            if self.countries[c].branch != b {
                continue;
            }
            let bottom = self
                .country_times(c)
                .iter()
                .map(|&u| self.pattern.point(u).1)
                .min()
                .unwrap();
            if bottom > r && best.is_none_or(|(br, _)| bottom < br) {
                best = Some((bottom, c));
            }
        }
        best.map(|(_, c)| c)
    }

    /// Whether every point of country `a` lies strictly above every point
    /// of country `b` on one branch.
    pub fn country_above(&self, a: usize, b: usize) -> bool {
        if self.countries[a].branch != self.countries[b].branch {
            return false;
        }
        let low_a = self
            .country_times(a)
            .iter()
            .map(|&t| self.pattern.point(t).1)
            .min()
            .unwrap();
        let high_b = self
            .country_times(b)
            .iter()
            .map(|&t| self.pattern.point(t).1)
            .max()
            .unwrap();
        low_a > high_b
    }
}

/// Lap count of the normalized code along the branches: a new lap starts
/// when the integer part jumps or the fractional part turns around.
pub fn code_laps(p: &Pattern, table: &CodeTable) -> u32 {
    let min = table.code.iter().min().unwrap().clone();
    let normalized: Vec<Rational> = table.code.iter().map(|l| l - &min).collect();
    let counts = p.branch_counts();
    let mut laps = 0;
    for b in BranchId::all() {
        let values: Vec<&Rational> = (1..=counts[b.index() as usize])
            .map(|r| &normalized[p.time_of(b, r).unwrap()])
            .collect();
        if values.is_empty() {
            continue;
        }
        laps += 1;
        let mut last_dir: Option<bool> = None;
        for w in values.windows(2) {
            let (prev, next) = (w[0], w[1]);
            if prev.floor() != next.floor() {
                laps += 1;
                last_dir = None;
                continue;
            }
            let (fp, fn_) = (prev - prev.floor(), next - next.floor());
            if fp == fn_ {
                continue;
            }
            let dir = fn_ > fp;
            if let Some(d) = last_dir {
                if d != dir {
                    laps += 1;
                }
            }
            last_dir = Some(dir);
        }
    }
    laps
}

/// Everything the classifier reports about one pattern. Rotation data,
/// colors, code-derived values, and the landscape refer to the canonical
/// form when one exists, and to the pattern as given otherwise.
#[derive(Debug, Clone)]
pub struct Classification {
    pub pattern: Pattern,
    pub canonical: Option<CanonicalForm>,
    pub period: usize,
    pub rho: Rational,
    pub rp: RotationPair,
    pub mrp: ModifiedRotationPair,
    /// Green, black, red point counts.
    pub census: [usize; 3],
    pub regular: bool,
    pub order_preserving: bool,
    pub twist: bool,
    pub modality: u32,
    pub monotonicity: Option<Monotonicity>,
    pub chi: Option<Rational>,
    pub laps: Option<u32>,
    pub bound: u32,
    /// Green, black, red state counts.
    pub state_counts: [usize; 3],
    pub country_count: usize,
}

impl Classification {
    /// The pattern the theory values were computed on.
    pub fn working_pattern(&self) -> &Pattern {
        self.canonical.as_ref().map_or(&self.pattern, |c| &c.pattern)
    }
}

pub fn classify(p: &Pattern) -> Result<Classification, CrossCheckMismatch> {
    let regular = plinear::is_regular(p)?;
    let canonical = if regular {
        match canonical_branch_ordering(p) {
            Ok(cf) => Some(cf),
            Err(TheoryError::NoCanonicalOrdering) => None,
            Err(TheoryError::CrossCheck(e)) => return Err(e),
            Err(e) => unreachable!("unexpected canonicalization failure: {e}"),
        }
    } else {
        None
    };
    let w = canonical.as_ref().map_or(p, |c| &c.pattern).clone();
    let (_, rp) = fundamental_loop(&w);
    let rho = rp.rho();
    let colors = point_colors(&w);
    let census = [Color::Green, Color::Black, Color::Red]
        .map(|c| colors.iter().filter(|x| **x == c).count());
    let modality = PLinearMap::build(p).modality();
    let landscape = Landscape::build(&w);
    let table = match code_table(&w) {
        Ok(t) => Some(t),
        Err(TheoryError::RotationOneThird) => None,
        Err(e) => unreachable!("code table failed: {e}"),
    };
    let monotonicity = table.as_ref().map(|t| code_monotonicity(&w, t));
    let twist = if rho == rat(1, 3) {
        canonical.is_some() && w == primitive_three()
    } else {
        canonical.is_some()
            && gcd(rp.d, rp.n) == 1
            && monotonicity == Some(Monotonicity::StrictlyIncreasing)
    };
    let chi_all = table
        .as_ref()
        .map(|t| chi(&t.code, &(0..w.period()).collect::<Vec<_>>()).unwrap());
    let laps = if twist {
        Some(table.as_ref().map_or(3, |t| code_laps(&w, t)))
    } else {
        None
    };
    Ok(Classification {
        pattern: p.clone(),
        canonical,
        period: p.period(),
        rho,
        rp,
        mrp: mrp_of(rp),
        census,
        regular,
        order_preserving: is_order_preserving(p),
        twist,
        modality,
        monotonicity,
        chi: chi_all,
        laps,
        bound: modality + 3,
        state_counts: [Color::Green, Color::Black, Color::Red]
            .map(|c| landscape.state_count(c)),
        country_count: landscape.countries().len(),
    })
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

/// Renders a rational with an explicit denominator, always reduced.
pub fn rational_str(r: &Rational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// The fixed CSV column set.
pub const CSV_HEADER: [&str; 14] = [
    "period",
    "rho",
    "rp",
    "mrp",
    "green",
    "black",
    "red",
    "regular",
    "order_preserving",
    "twist",
    "modality",
    "chi",
    "laps",
    "bound",
];

impl Classification {
    pub fn csv_fields(&self) -> Vec<String> {
        vec![
            self.period.to_string(),
            rational_str(&self.rho),
            format!("({},{})", self.rp.d, self.rp.n),
            format!("({},{})", rational_str(&self.mrp.t), self.mrp.m),
            self.census[0].to_string(),
            self.census[1].to_string(),
            self.census[2].to_string(),
            self.regular.to_string(),
            self.order_preserving.to_string(),
            self.twist.to_string(),
            self.modality.to_string(),
            self.chi.as_ref().map_or(String::new(), rational_str),
            self.laps.map_or(String::new(), |l| l.to_string()),
            self.bound.to_string(),
        ]
    }

    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "pattern": self.pattern,
            "canonical": self.canonical.as_ref().map(|c| &c.pattern),
            "relabel": self.canonical.as_ref().map(|c| c.relabel.map(|b| b.index())),
            "canonicalizable": self.canonical.is_some(),
            "period": self.period,
            "rho": rational_str(&self.rho),
            "rp": [self.rp.d, self.rp.n],
            "mrp": {"t": rational_str(&self.mrp.t), "m": self.mrp.m},
            "census": {"green": self.census[0], "black": self.census[1], "red": self.census[2]},
            "regular": self.regular,
            "order_preserving": self.order_preserving,
            "twist": self.twist,
            "modality": self.modality,
            "chi": self.chi.as_ref().map(rational_str),
            "laps": self.laps,
            "bound": self.bound,
            "states": {
                "green": self.state_counts[0],
                "black": self.state_counts[1],
                "red": self.state_counts[2],
            },
            "countries": self.country_count,
        })
    }
}
