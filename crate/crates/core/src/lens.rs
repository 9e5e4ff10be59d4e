//! Lens spaces `L(p, q)`, oriented as `-p/q` surgery on the unknot, with
//! `S^3` represented as `p = 1`.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;

use crate::arith::{self, gcd, mod_inverse, mul_mod, ExactInt};
use crate::{Error, Int, NegCf, Rational, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: i64,
    q: i64,
}

impl LensSpace {
    pub fn new(p: i64, q: i64) -> Result<Self> {
        if p < 2 || q <= 0 || q >= p || gcd(p, q) != 1 {
            return Err(Error::InvalidLens {
                p: p.to_string(),
                q: q.to_string(),
            });
        }
        Ok(LensSpace { p, q })
    }

    pub const fn sphere() -> Self {
        LensSpace { p: 1, q: 0 }
    }

    /// `S^3` for `p = 1` (any `q`), otherwise [`LensSpace::new`].
    pub fn from_params(p: i64, q: i64) -> Result<Self> {
        if p == 1 {
            Ok(Self::sphere())
        } else {
            Self::new(p, q)
        }
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    /// `0` for `S^3`.
    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn is_sphere(&self) -> bool {
        self.p == 1
    }

    pub fn h1_order(&self) -> i64 {
        self.p
    }

    pub fn orientation_reverse(&self) -> Self {
        if self.is_sphere() {
            *self
        } else {
            LensSpace {
                p: self.p,
                q: self.p - self.q,
            }
        }
    }

    /// Orientation-preserving homeomorphism test.
    pub fn homeo_same_oriented(&self, other: &Self) -> bool {
        if self.p != other.p {
            return false;
        }
        if self.is_sphere() {
            return true;
        }
        self.q == other.q || mul_mod(self.q, other.q, self.p) == 1
    }

    /// The regluing partner `L(p, q')` with `q q' = 1 mod p`. The second
    /// component reports whether that cosmetic surgery is integral, which it
    /// never is.
    pub fn cosmetic_partner(&self) -> (Self, bool) {
        if self.is_sphere() {
            return (*self, false);
        }
        let q_inv = mod_inverse(self.q, self.p).expect("q is a unit mod p");
        (LensSpace { p: self.p, q: q_inv }, false)
    }

    /// Residues `k^2 q' mod p` realized as self-linking numbers of knots.
    pub fn self_linking_values(&self) -> BTreeSet<i64> {
        if self.is_sphere() {
            return BTreeSet::from([0]);
        }
        let q_inv = mod_inverse(self.q, self.p).expect("q is a unit mod p");
        (0..self.p)
            .map(|k| mul_mod(mul_mod(k, k, self.p), q_inv, self.p))
            .collect()
    }

    /// Continued fraction of `-p/q`; `None` for `S^3`.
    pub fn neg_cf(&self) -> Option<NegCf> {
        if self.is_sphere() {
            return None;
        }
        Some(
            arith::neg_continued_fraction(&Int::from(self.p), &Int::from(self.q))
                .expect("validated lens parameters"),
        )
    }

    pub fn d_invariants(&self) -> DInvariantTable {
        DInvariantTable {
            values: d_invariants_in::<Int>(self.p, self.q),
        }
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_sphere() {
            write!(f, "S^3")
        } else {
            write!(f, "L({},{})", self.p, self.q)
        }
    }
}

/// Correction terms indexed by the recursion's Spin-c labels `0..p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DInvariantTable {
    values: Vec<Rational>,
}

impl DInvariantTable {
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn get(&self, label: usize) -> Option<&Rational> {
        self.values.get(label)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Sorted copy of the values.
    pub fn multiset(&self) -> Vec<Rational> {
        let mut v = self.values.clone();
        v.sort();
        v
    }

    /// Multiset inclusion of `sub` in the table.
    pub fn contains_multiset(&self, sub: &[Rational]) -> bool {
        let mut pool = self.multiset();
        for x in sub {
            match pool.binary_search(x) {
                Ok(i) => {
                    pool.remove(i);
                }
                Err(_) => return false,
            }
        }
        true
    }
}

/// Correction terms of `L(p, q)` in this orientation convention, from the
/// recursion
/// `d(p, q, i) = (pq - (2i + 1 - p - q)^2) / 4pq - d(q, p mod q, i mod q)`
/// with `d(1, 0, 0) = 0`. Tables are built bottom-up along the Euclidean
/// chain, so each query costs `O(sum of the p's)`.
pub fn d_invariants_in<I: ExactInt>(p: i64, q: i64) -> Vec<Ratio<I>> {
    let mut chain = vec![(p, q)];
    while chain.last().unwrap().0 > 1 {
        let (a, b) = *chain.last().unwrap();
        chain.push((b, a % b));
    }
    let int = |v: i64| I::from_i64(v).expect("i64 fits the scalar");
    let mut table = vec![Ratio::from_integer(I::zero())];
    for &(a, b) in chain.iter().rev().skip(1) {
        let denom = int(4) * int(a) * int(b);
        table = (0..a)
            .map(|i| {
                let t = int(2 * i + 1 - a - b);
                let head = Ratio::new(int(a) * int(b) - t.clone() * t, denom.clone());
                head - table[(i % b) as usize].clone()
            })
            .collect();
    }
    table
}

/// `d_invariants_in` evaluated with a fixed-width scalar, for cross-checks.
pub fn d_invariants_fixed(p: i64, q: i64) -> Vec<(i128, i128)> {
    d_invariants_in::<i128>(p, q)
        .into_iter()
        .map(|r| (*r.numer(), *r.denom()))
        .collect()
}
