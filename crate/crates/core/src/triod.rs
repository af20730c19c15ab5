//! The triod `Y` and its partial tree order.
//!
//! `Y` is the union of three closed half-open branches glued at a single
//! branching point (the hub). Points are addressed by branch index and a
//! strictly positive coordinate measuring distance from the hub; the hub
//! itself is a separate value. The tree order `x <= y` holds when `x` lies
//! on the arc from the hub to `y`, so the hub is the global minimum and
//! points on distinct branches are incomparable.

use std::cmp::Ordering;
use std::fmt;

use num::BigRational;
use num::FromPrimitive;
use serde::{Deserialize, Serialize};

/// Exact rational scalar used for all public coordinates.
pub type Rational = BigRational;

/// Builds the reduced rational `n/d`.
///
/// Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rational {
    assert!(d != 0, "zero denominator");
    Rational::new(
        num::BigInt::from_i64(n).unwrap(),
        num::BigInt::from_i64(d).unwrap(),
    )
}

/// One of the three branches of the triod, indexed `0`, `1`, `2`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct BranchId(u8);

impl BranchId {
    /// Wraps an index, which must be `0`, `1` or `2`.
    pub fn new(index: u8) -> BranchId {
        assert!(index < 3, "branch index out of range: {index}");
        BranchId(index)
    }

    /// The raw index.
    pub fn index(self) -> u8 {
        self.0
    }

    /// The cyclically next branch (`0 -> 1 -> 2 -> 0`).
    pub fn next(self) -> BranchId {
        BranchId((self.0 + 1) % 3)
    }

    /// The branch reached by `k` cyclic steps forward.
    pub fn advance(self, k: u8) -> BranchId {
        BranchId((self.0 + k) % 3)
    }

    /// Swaps branches `1` and `2`, fixing branch `0`.
    pub fn reflect(self) -> BranchId {
        match self.0 {
            1 => BranchId(2),
            2 => BranchId(1),
            _ => self,
        }
    }

    /// All three branches in index order.
    pub fn all() -> [BranchId; 3] {
        [BranchId(0), BranchId(1), BranchId(2)]
    }
}

impl fmt::Debug for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "b{}", self.0)
    }
}

impl fmt::Display for BranchId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A point of the triod.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum TriodPoint {
    /// The branching point common to all three branches.
    Hub,
    /// A point at distance `coord > 0` from the hub on `branch`.
    OnBranch { branch: BranchId, coord: Rational },
}

impl TriodPoint {
    /// A point on a branch; `coord` must be strictly positive.
    pub fn on_branch(branch: BranchId, coord: Rational) -> TriodPoint {
        assert!(
            coord > Rational::default(),
            "branch coordinate must be positive"
        );
        TriodPoint::OnBranch { branch, coord }
    }

    /// The branch carrying this point, if it is not the hub.
    pub fn branch(&self) -> Option<BranchId> {
        match self {
            TriodPoint::Hub => None,
            TriodPoint::OnBranch { branch, .. } => Some(*branch),
        }
    }

    /// Distance from the hub.
    pub fn distance(&self) -> Rational {
        match self {
            TriodPoint::Hub => Rational::default(),
            TriodPoint::OnBranch { coord, .. } => coord.clone(),
        }
    }
}

/// Compares two points in the tree order. `None` means incomparable, which
/// happens exactly for points on distinct branches.
pub fn tree_compare(x: &TriodPoint, y: &TriodPoint) -> Option<Ordering> {
    match (x, y) {
        (TriodPoint::Hub, TriodPoint::Hub) => Some(Ordering::Equal),
        (TriodPoint::Hub, _) => Some(Ordering::Less),
        (_, TriodPoint::Hub) => Some(Ordering::Greater),
        (
            TriodPoint::OnBranch { branch: bx, coord: cx },
            TriodPoint::OnBranch { branch: by, coord: cy },
        ) => {
            if bx == by {
                Some(cx.cmp(cy))
            } else {
                None
            }
        }
    }
}

/// Whether `x <= y` in the tree order.
pub fn tree_le(x: &TriodPoint, y: &TriodPoint) -> bool {
    matches!(
        tree_compare(x, y),
        Some(Ordering::Less) | Some(Ordering::Equal)
    )
}

/// The arc `[x, y]` of the triod: the unique embedded path joining two
/// points. Its trace on each branch is an interval of coordinates, attained
/// at the endpoints, and it meets the hub exactly when the endpoints lie on
/// distinct branches or one of them is the hub.
#[derive(Clone, Debug)]
pub struct Arc {
    extents: [Option<(Rational, Rational)>; 3],
    contains_hub: bool,
}

impl Arc {
    /// The arc joining `x` and `y`.
    pub fn between(x: &TriodPoint, y: &TriodPoint) -> Arc {
        let mut extents: [Option<(Rational, Rational)>; 3] = [None, None, None];
        let mut contains_hub = false;
        match (x, y) {
            (TriodPoint::Hub, TriodPoint::Hub) => {
                contains_hub = true;
            }
            (TriodPoint::Hub, TriodPoint::OnBranch { branch, coord })
            | (TriodPoint::OnBranch { branch, coord }, TriodPoint::Hub) => {
                contains_hub = true;
                extents[branch.index() as usize] = Some((Rational::default(), coord.clone()));
            }
            (
                TriodPoint::OnBranch { branch: bx, coord: cx },
                TriodPoint::OnBranch { branch: by, coord: cy },
            ) => {
                if bx == by {
                    let (lo, hi) = if cx <= cy { (cx, cy) } else { (cy, cx) };
                    extents[bx.index() as usize] = Some((lo.clone(), hi.clone()));
                } else {
                    contains_hub = true;
                    extents[bx.index() as usize] = Some((Rational::default(), cx.clone()));
                    extents[by.index() as usize] = Some((Rational::default(), cy.clone()));
                }
            }
        }
        Arc { extents, contains_hub }
    }

    /// Whether the arc contains the hub.
    pub fn contains_hub(&self) -> bool {
        self.contains_hub
    }

    /// The coordinate interval traced on `branch`, if any.
    pub fn extent(&self, branch: BranchId) -> Option<(Rational, Rational)> {
        self.extents[branch.index() as usize].clone()
    }

    /// Whether the arc contains the whole coordinate segment `[lo, hi]` of
    /// `branch`.
    pub fn covers(&self, branch: BranchId, lo: &Rational, hi: &Rational) -> bool {
        match &self.extents[branch.index() as usize] {
            Some((a, b)) => a <= lo && hi <= b,
            None => false,
        }
    }

    /// Whether the arc contains the point.
    pub fn contains(&self, p: &TriodPoint) -> bool {
        match p {
            TriodPoint::Hub => self.contains_hub,
            TriodPoint::OnBranch { branch, coord } => {
                match &self.extents[branch.index() as usize] {
                    Some((a, b)) => a <= coord && coord <= b,
                    None => false,
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(b: u8, n: i64, d: i64) -> TriodPoint {
        TriodPoint::on_branch(BranchId::new(b), rat(n, d))
    }

    #[test]
    fn hub_is_global_minimum() {
        let x = pt(1, 7, 2);
        assert_eq!(tree_compare(&TriodPoint::Hub, &x), Some(Ordering::Less));
        assert_eq!(tree_compare(&x, &TriodPoint::Hub), Some(Ordering::Greater));
        assert_eq!(
            tree_compare(&TriodPoint::Hub, &TriodPoint::Hub),
            Some(Ordering::Equal)
        );
    }

    #[test]
    fn same_branch_points_compare_by_distance() {
        let near = pt(0, 1, 1);
        let far = pt(0, 3, 1);
        assert_eq!(tree_compare(&near, &far), Some(Ordering::Less));
        assert!(tree_le(&near, &far));
        assert!(!tree_le(&far, &near));
    }

    #[test]
    fn distinct_branches_are_incomparable() {
        let x = pt(0, 5, 1);
        let y = pt(2, 1, 3);
        assert_eq!(tree_compare(&x, &y), None);
        assert!(!tree_le(&x, &y));
        assert!(!tree_le(&y, &x));
    }

    #[test]
    fn arc_on_one_branch_misses_hub() {
        let arc = Arc::between(&pt(1, 1, 1), &pt(1, 3, 1));
        assert!(!arc.contains_hub());
        assert_eq!(arc.extent(BranchId::new(1)), Some((rat(1, 1), rat(3, 1))));
        assert_eq!(arc.extent(BranchId::new(0)), None);
        assert!(arc.covers(BranchId::new(1), &rat(2, 1), &rat(3, 1)));
        assert!(!arc.covers(BranchId::new(1), &rat(1, 2), &rat(1, 1)));
    }

    #[test]
    fn arc_across_branches_runs_through_hub() {
        let arc = Arc::between(&pt(0, 2, 1), &pt(2, 1, 1));
        assert!(arc.contains_hub());
        assert!(arc.covers(BranchId::new(0), &rat(0, 1), &rat(2, 1)));
        assert!(arc.covers(BranchId::new(2), &rat(0, 1), &rat(1, 1)));
        assert!(!arc.covers(BranchId::new(1), &rat(0, 1), &rat(0, 1)));
        assert!(arc.contains(&TriodPoint::Hub));
        assert!(arc.contains(&pt(0, 1, 2)));
        assert!(!arc.contains(&pt(0, 5, 2)));
    }

    #[test]
    fn hub_anchored_arc_extends_to_its_endpoint() {
        let arc = Arc::between(&TriodPoint::Hub, &pt(2, 3, 1));
        assert!(arc.contains_hub());
        assert!(arc.covers(BranchId::new(2), &rat(1, 1), &rat(2, 1)));
        assert!(!arc.covers(BranchId::new(2), &rat(2, 1), &rat(4, 1)));
    }

    #[test]
    fn reflection_swaps_outer_branches() {
        assert_eq!(BranchId::new(0).reflect(), BranchId::new(0));
        assert_eq!(BranchId::new(1).reflect(), BranchId::new(2));
        assert_eq!(BranchId::new(2).reflect(), BranchId::new(1));
        assert_eq!(BranchId::new(2).next(), BranchId::new(0));
        assert_eq!(BranchId::new(1).advance(2), BranchId::new(0));
    }
}
