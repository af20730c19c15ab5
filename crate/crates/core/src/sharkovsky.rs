//! The Sharkovsky order on periods and hull membership in the space of
//! modified rotation pairs.

use std::cmp::Ordering;
use std::collections::BTreeSet;

use crate::triod::Rational;

/// A period in the extended sense: a natural number or the limit value
/// sitting between the doubling tiers and the powers of two.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SharkovskyValue {
    Finite(u64),
    TwoInfinity,
}

use SharkovskyValue::{Finite, TwoInfinity};

/// Sort key realizing the order: odd multiples beyond 1 come first, by
/// power of two then by odd part; the limit value next; pure powers of two
/// last, largest first.
fn key(v: SharkovskyValue) -> (u8, u64, u64) {
    match v {
        Finite(m) => {
            assert!(m >= 1, "periods start at 1");
            let a = m.trailing_zeros() as u64;
            let o = m >> a;
            if o > 1 {
                (0, a, o)
            } else {
                (2, u64::MAX - a, 0)
            }
        }
        TwoInfinity => (1, 0, 0),
    }
}

/// Total order; `Less` means earlier, i.e. forcing-stronger.
pub fn sharkovsky_compare(a: SharkovskyValue, b: SharkovskyValue) -> Ordering {
    key(a).cmp(&key(b))
}

/// The forcing tail of `k`: every period up to `limit` that `k` dominates,
/// including `k` itself when finite.
pub fn sh_set(k: SharkovskyValue, limit: u64) -> BTreeSet<u64> {
    (1..=limit)
        .filter(|&m| sharkovsky_compare(k, Finite(m)) != Ordering::Greater)
        .collect()
}

/// A closed hull in the space of modified rotation pairs. Membership is
/// wide in the interior coordinate and controlled by the forcing tails at
/// the endpoints.
#[derive(Debug, Clone)]
pub struct MrpHull {
    pub left: (Rational, SharkovskyValue),
    pub right: (Rational, SharkovskyValue),
}

impl MrpHull {
    pub fn new(a: (Rational, SharkovskyValue), b: (Rational, SharkovskyValue)) -> MrpHull {
        if a.0 <= b.0 {
            MrpHull { left: a, right: b }
        } else {
            MrpHull { left: b, right: a }
        }
    }

    pub fn contains(&self, t: &Rational, m: u64) -> bool {
        if *t > self.left.0 && *t < self.right.0 {
            return true;
        }
        for (ti, mi) in [&self.left, &self.right] {
            if t == ti && sh_set(*mi, m).contains(&m) {
                return true;
            }
        }
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triod::rat;

    #[test]
    fn displayed_chain_relations() {
        assert_eq!(sharkovsky_compare(Finite(3), Finite(5)), Ordering::Less);
        assert_eq!(sharkovsky_compare(Finite(5), Finite(3)), Ordering::Greater);
        assert_eq!(sharkovsky_compare(Finite(6), Finite(8)), Ordering::Less);
        assert_eq!(sharkovsky_compare(Finite(1), Finite(1)), Ordering::Equal);
        assert_eq!(sharkovsky_compare(TwoInfinity, Finite(8)), Ordering::Less);
        assert_eq!(sharkovsky_compare(Finite(12), TwoInfinity), Ordering::Less);
        assert_eq!(sharkovsky_compare(Finite(2), Finite(1)), Ordering::Less);
    }

    #[test]
    fn forcing_tails() {
        assert_eq!(sh_set(Finite(4), 10), BTreeSet::from([1, 2, 4]));
        assert_eq!(sh_set(TwoInfinity, 10), BTreeSet::from([1, 2, 4, 8]));
        assert_eq!(sh_set(Finite(3), 8), (1..=8).collect());
    }

    #[test]
    fn tails_nest_along_the_order() {
        for m in 1..=40u64 {
            for n in 1..=40u64 {
                if sharkovsky_compare(Finite(m), Finite(n)) == Ordering::Less {
                    let (sm, sn) = (sh_set(Finite(m), 60), sh_set(Finite(n), 60));
                    assert!(sn.is_subset(&sm), "tail of {n} must lie inside tail of {m}");
                }
            }
        }
    }

    #[test]
    fn total_order_on_small_values() {
        let mut all: Vec<SharkovskyValue> =
            (1..=100).map(Finite).chain([TwoInfinity]).collect();
        all.sort_by(|&a, &b| sharkovsky_compare(a, b));
        for pair in all.windows(2) {
            assert_eq!(sharkovsky_compare(pair[0], pair[1]), Ordering::Less);
            assert_eq!(sharkovsky_compare(pair[1], pair[0]), Ordering::Greater);
        }
        assert_eq!(&all[..4], &[Finite(3), Finite(5), Finite(7), Finite(9)]);
        assert_eq!(all[48], Finite(99));
        assert_eq!(all[49], Finite(6));
        assert_eq!(
            &all[93..],
            &[TwoInfinity, Finite(64), Finite(32), Finite(16), Finite(8), Finite(4), Finite(2), Finite(1)]
        );
    }

    #[test]
    fn hull_membership() {
        let hull = MrpHull::new((rat(1, 4), Finite(1)), (rat(1, 3), Finite(3)));
        assert!(hull.contains(&rat(2, 7), 5));
        assert!(hull.contains(&rat(1, 3), 5));
        assert!(!hull.contains(&rat(1, 4), 3));
        assert!(hull.contains(&rat(1, 4), 1));
        assert!(!hull.contains(&rat(1, 5), 1));
        assert!(!hull.contains(&rat(1, 2), 7));
    }
}
