//! Bookkeeping for surgeries out of overtwisted structures: `d3` under
//! connected sum, framing adjustments, rotation bounds for non-loose knots
//! and the half-integrality test on source `d3`.

use std::collections::BTreeSet;

use num_integer::Integer;

use crate::arith::{int_rational, rational};
use crate::diagram::{ContactSurgeryDiagram, LegendrianComponent};
use crate::{Error, Rational, Result};

/// `d3` of a connected sum; the tight `S^3` (`-1/2`) is the identity.
pub fn connected_sum_d3(d1: &Rational, d2: &Rational) -> Rational {
    d1 + d2 + rational(1, 2)
}

/// Realizes a contact framing on a Legendrian knot in an overtwisted
/// manifold: each connected sum with a suitable knot raises `tb` by 3, each
/// stabilization lowers it by 1, and Legendrian surgery subtracts 1 more.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FramingPlan {
    pub connect_sums: u64,
    pub stabilizations: u64,
}

impl FramingPlan {
    /// Framing reached from `tb`.
    pub fn framing(&self, tb: i64) -> i64 {
        tb + 3 * self.connect_sums as i64 - self.stabilizations as i64 - 1
    }
}

/// The plan with the fewest connected sums.
pub fn plan_framing_adjustment(tb: i64, target_framing: i64) -> FramingPlan {
    let c = Integer::div_ceil(&(target_framing - tb + 1), &3).max(0);
    let s = tb + 3 * c - target_framing - 1;
    debug_assert!(s >= 0);
    FramingPlan {
        connect_sums: c as u64,
        stabilizations: s as u64,
    }
}

/// Largest `|rot|` of a non-loose null-homologous knot of genus `g >= 1`,
/// `2g - 1 + |tb|`.
pub fn nonloose_rot_bound(tb: i64, genus: u64) -> Result<u64> {
    if genus == 0 {
        return Err(Error::GenusZero);
    }
    Ok(2 * genus - 1 + tb.unsigned_abs())
}

/// `(c1^2 - 2 chi - 3 sigma) / 4`.
pub fn degree_shift(c1_square: &Rational, chi: i64, sigma: i64) -> Rational {
    (c1_square - int_rational(2 * chi + 3 * sigma)) / int_rational(4)
}

/// Candidate rotation numbers for a single `-p` framed 2-handle from some
/// `S^3` to a structure with `d3 = target`, with the source `d3` they force.
/// Only pairs whose source `d3` is a half-integer survive, since every
/// plane field on `S^3` has half-integral `d3`.
pub fn source_d3_solver(p: i64, target: &Rational, rot_bound: u64) -> Result<BTreeSet<(i64, Rational)>> {
    if p < 1 {
        return Err(Error::InvalidArgument(format!("p must be >= 1, got {p}")));
    }
    let bound = i64::try_from(rot_bound)
        .map_err(|_| Error::InvalidArgument(format!("rotation bound {rot_bound} too large")))?;
    let half = rational(1, 2);
    let mut out = BTreeSet::new();
    for rot in -bound..=bound {
        let handle = ContactSurgeryDiagram::new(
            vec![LegendrianComponent::legendrian(1 - p, rot)],
            vec![vec![0]],
        )?;
        let c1_sq = handle.c1_square()?;
        let shift = degree_shift(&c1_sq, handle.euler_char() - 1, handle.signature());
        let source = target - shift;
        if (&source - &half).is_integer() {
            out.insert((rot, source));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_sums() {
        let d = rational(-2, 7);
        assert_eq!(connected_sum_d3(&d, &rational(-1, 2)), d);
        assert_eq!(connected_sum_d3(&rational(1, 2), &rational(-3, 2)), rational(-1, 2));
        assert_eq!(connected_sum_d3(&rational(-1, 2), &rational(-1, 2)), rational(-1, 2));
    }

    #[test]
    fn framing_plans() {
        let plan = |c, s| FramingPlan {
            connect_sums: c,
            stabilizations: s,
        };
        assert_eq!(plan_framing_adjustment(5, 4), plan(0, 0));
        assert_eq!(plan_framing_adjustment(5, 5), plan(1, 2));
        assert_eq!(plan_framing_adjustment(5, 0), plan(0, 4));
        assert_eq!(plan_framing_adjustment(-3, 6), plan(4, 2));
        for tb in -10..10 {
            for target in -20..20 {
                let p = plan_framing_adjustment(tb, target);
                assert_eq!(p.framing(tb), target);
                if p.connect_sums > 0 {
                    let fewer = tb + 3 * (p.connect_sums as i64 - 1) - 1;
                    assert!(fewer < target);
                }
            }
        }
    }

    #[test]
    fn rot_bounds() {
        assert_eq!(nonloose_rot_bound(-6, 1).unwrap(), 7);
        assert_eq!(nonloose_rot_bound(0, 1).unwrap(), 1);
        assert_eq!(nonloose_rot_bound(4, 2).unwrap(), 7);
        assert_eq!(nonloose_rot_bound(3, 0), Err(Error::GenusZero));
    }

    #[test]
    fn shifts() {
        assert_eq!(degree_shift(&rational(-1, 7), 1, -1), rational(3, 14));
        assert_eq!(degree_shift(&rational(0, 1), 1, -1), rational(1, 4));
    }

    #[test]
    fn solver() {
        let sols = source_d3_solver(7, &rational(-2, 7), 7).unwrap();
        let want: BTreeSet<_> = [(-1, rational(-1, 2)), (1, rational(-1, 2))].into();
        assert_eq!(sols, want);
        let sols = source_d3_solver(7, &rational(0, 1), 7).unwrap();
        let want: BTreeSet<_> = [(-7, rational(3, 2)), (7, rational(3, 2))].into();
        assert_eq!(sols, want);
        assert!(source_d3_solver(1, &rational(1, 2), 0).unwrap().is_empty());
        assert!(source_d3_solver(0, &rational(1, 2), 3).is_err());
    }
}
