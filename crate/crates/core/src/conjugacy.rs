//! Conjugacy between a twist cycle and the orbit of 0 under the rigid
//! circle rotation by its rotation number.
//!
//! For a twist pattern with reduced rotation number p/q the period equals
//! q, and reducing the code modulo 1 after normalizing its minimum to zero
//! yields a bijection onto {j/q} that intertwines the pattern dynamics
//! with x -> x + p/q. The rotation number 1/3 is special: the code is
//! undefined there and the primitive 3-cycle is handled directly.

use std::collections::BTreeSet;

use num::{BigRational, Zero};
use serde_json::json;
use thiserror::Error;

use crate::pattern::Pattern;
use crate::plinear::CrossCheckMismatch;
use crate::rotation_theory::{classify, code_laps, code_table, rational_str};
use crate::triod::{rat, Rational};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConjugacyError {
    #[error("pattern is not a triod twist")]
    NotTriodTwist,
    #[error("conjugacy defect at time {time}: expected {expected}, got {got}")]
    EquivarianceFailure { time: usize, expected: String, got: String },
    #[error("lap count {laps} exceeds the bound {bound}")]
    BoundViolated { laps: u32, bound: u32 },
    #[error(transparent)]
    CrossCheck(#[from] CrossCheckMismatch),
}

/// The verified conjugacy data of one twist pattern.
#[derive(Debug, Clone)]
pub struct ConjugacyReport {
    /// Reduced rotation number p/q.
    pub rho: Rational,
    /// Circle coordinate of each point, indexed by input time.
    pub psi: Vec<Rational>,
    /// Input time of the normalization base, the minimal-code point.
    pub base: usize,
    pub laps: u32,
    pub bound: u32,
    pub equivariance_ok: bool,
}

/// Builds and verifies the conjugacy. Equivariance, bijectivity onto the
/// rotation orbit, and the lap bound are all checked exactly; a violation
/// is an error, not a report field, so it cannot pass silently.
pub fn build_conjugacy(p: &Pattern) -> Result<ConjugacyReport, ConjugacyError> {
    let c = classify(p)?;
    if !c.twist {
        return Err(ConjugacyError::NotTriodTwist);
    }
    let cf = c.canonical.as_ref().expect("twists are canonicalizable");
    let w = &cf.pattern;
    let n = p.period();
    let (psi_canonical, base_canonical) = if c.rho == rat(1, 3) {
        ((0..3).map(|i| rat(i, 3)).collect::<Vec<_>>(), 0)
    } else {
        let table = code_table(w).expect("rho is not 1/3 here");
        let base = (0..n)
            .min_by_key(|&t| (table.code[t].clone(), w.point(t)))
            .unwrap();
        let psi = (0..n)
            .map(|t| frac(&(&table.code[t] - &table.code[base])))
            .collect();
        (psi, base)
    };
    let mut psi = vec![Rational::zero(); n];
    for t in 0..n {
        psi[(t + cf.rotation) % n] = psi_canonical[t].clone();
    }
    let base = (base_canonical + cf.rotation) % n;

    let orbit: BTreeSet<Rational> = (0..n as i64).map(|j| rat(j, n as i64)).collect();
    let values: BTreeSet<Rational> = psi.iter().cloned().collect();
    if values != orbit {
        return Err(ConjugacyError::EquivarianceFailure {
            time: base,
            expected: format!("a bijection onto multiples of 1/{n}"),
            got: format!("{} distinct values", values.len()),
        });
    }
    for t in 0..n {
        let expected = frac(&(&psi[t] + &c.rho));
        if psi[(t + 1) % n] != expected {
            return Err(ConjugacyError::EquivarianceFailure {
                time: t,
                expected: rational_str(&expected),
                got: rational_str(&psi[(t + 1) % n]),
            });
        }
    }

    let laps = if c.rho == rat(1, 3) {
        3
    } else {
        code_laps(w, &code_table(w).unwrap())
    };
    let bound = c.modality + 3;
    if laps > bound {
        return Err(ConjugacyError::BoundViolated { laps, bound });
    }
    Ok(ConjugacyReport { rho: c.rho, psi, base, laps, bound, equivariance_ok: true })
}

impl ConjugacyReport {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "rho": rational_str(&self.rho),
            "psi": self
                .psi
                .iter()
                .enumerate()
                .map(|(t, v)| json!([t, rational_str(v)]))
                .collect::<Vec<_>>(),
            "laps": self.laps,
            "bound": self.bound,
        })
    }
}

/// Fractional part in [0, 1).
pub fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

/// Count of distinct integer parts of the normalized code; bounded by the
/// oscillation rounded up plus one.
pub fn floor_class_count(code: &[Rational]) -> usize {
    let min = code.iter().min().unwrap().clone();
    code.iter()
        .map(|l| (l - &min).floor())
        .collect::<BTreeSet<BigRational>>()
        .len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::fixtures::{e2, e3, e4};
    use crate::triod::BranchId;

    #[test]
    fn primitive_three_rotates_by_thirds() {
        let r = build_conjugacy(&e3()).unwrap();
        assert_eq!(r.rho, rat(1, 3));
        assert_eq!(r.psi, vec![rat(0, 1), rat(1, 3), rat(2, 3)]);
        assert_eq!(r.base, 0);
        assert_eq!((r.laps, r.bound), (3, 4));
        let mirror = build_conjugacy(&e3().reflect_branches()).unwrap();
        assert_eq!(mirror.psi, r.psi);
    }

    #[test]
    fn period_four_twist_normalizes_at_the_outer_point() {
        let r = build_conjugacy(&e4()).unwrap();
        assert_eq!(r.rho, rat(1, 4));
        assert_eq!(r.psi, vec![rat(1, 4), rat(1, 2), rat(3, 4), rat(0, 1)]);
        assert_eq!(r.base, 3);
        assert_eq!((r.laps, r.bound), (3, 5));
        assert!(r.equivariance_ok);
    }

    #[test]
    fn psi_follows_the_input_time_indexing() {
        let r = build_conjugacy(&e4().rotate_time(1)).unwrap();
        assert_eq!(r.psi, vec![rat(1, 2), rat(3, 4), rat(0, 1), rat(1, 4)]);
        assert_eq!(r.base, 2);
    }

    #[test]
    fn non_twists_are_rejected() {
        assert_eq!(build_conjugacy(&e2()).unwrap_err(), ConjugacyError::NotTriodTwist);
        let single = Pattern::new(vec![(BranchId::new(0), 1)]).unwrap();
        assert_eq!(build_conjugacy(&single).unwrap_err(), ConjugacyError::NotTriodTwist);
    }

    #[test]
    fn dump_shape_is_stable() {
        let r = build_conjugacy(&e3()).unwrap();
        assert_eq!(
            r.to_json().to_string(),
            r#"{"bound":4,"laps":3,"psi":[[0,"0/1"],[1,"1/3"],[2,"2/3"]],"rho":"1/3"}"#
        );
    }

    #[test]
    fn floor_classes_stay_within_the_oscillation() {
        let table = code_table(&e4()).unwrap();
        assert_eq!(floor_class_count(&table.code), 1);
    }
}
