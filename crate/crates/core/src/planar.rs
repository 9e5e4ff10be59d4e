//! Planar open books: monodromies on the disk with `m` holes written as
//! words of Dehn twists, their pure-braid shadows in every boundary view,
//! and the resulting bound on the length of positive factorizations (hence
//! on `b2` of Stein fillings).
//!
//! A twist is recorded by the set of holes its curve encloses. Shrinking
//! the holes to punctures sends the twist to the full twist of the enclosed
//! strands, whose linking number with each enclosed pair is `+1` (or `-1`
//! for a negative twist). View `i >= 1` trades the hole `D_i` for the outer
//! boundary; there the puncture set is `{1..m} \ {i}` together with `0`,
//! which stands for the old outer boundary.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub type HoleSet = BTreeSet<usize>;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Twist {
    pub encloses: HoleSet,
    pub sign: i64,
}

impl Twist {
    pub fn positive<I: IntoIterator<Item = usize>>(holes: I) -> Self {
        Twist {
            encloses: holes.into_iter().collect(),
            sign: 1,
        }
    }

    pub fn negative<I: IntoIterator<Item = usize>>(holes: I) -> Self {
        Twist {
            encloses: holes.into_iter().collect(),
            sign: -1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "MonodromyFile", into = "MonodromyFile")]
pub struct PlanarMonodromy {
    holes: usize,
    twists: Vec<Twist>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MonodromyFile {
    holes: usize,
    twists: Vec<Twist>,
}

impl TryFrom<MonodromyFile> for PlanarMonodromy {
    type Error = Error;

    fn try_from(f: MonodromyFile) -> Result<Self> {
        PlanarMonodromy::new(f.holes, f.twists)
    }
}

impl From<PlanarMonodromy> for MonodromyFile {
    fn from(m: PlanarMonodromy) -> Self {
        MonodromyFile {
            holes: m.holes,
            twists: m.twists,
        }
    }
}

impl PlanarMonodromy {
    pub fn new(holes: usize, twists: Vec<Twist>) -> Result<Self> {
        if holes == 0 {
            return Err(Error::InvalidMonodromy("holes must be at least 1".into()));
        }
        for (k, t) in twists.iter().enumerate() {
            if t.encloses.is_empty() {
                return Err(Error::InvalidMonodromy(format!(
                    "twists[{k}].encloses must be nonempty"
                )));
            }
            if let Some(h) = t.encloses.iter().find(|&&h| h == 0 || h > holes) {
                return Err(Error::InvalidMonodromy(format!(
                    "twists[{k}].encloses contains {h}, outside 1..={holes}"
                )));
            }
            if t.sign != 1 && t.sign != -1 {
                return Err(Error::InvalidMonodromy(format!(
                    "twists[{k}].sign must be +1 or -1, got {}",
                    t.sign
                )));
            }
        }
        Ok(PlanarMonodromy { holes, twists })
    }

    pub fn holes(&self) -> usize {
        self.holes
    }

    pub fn twists(&self) -> &[Twist] {
        &self.twists
    }

    /// Annulus page with `k` positive core twists (`k < 0` gives negative ones).
    pub fn annulus_power(k: i64) -> Self {
        let t = if k >= 0 {
            Twist::positive([1])
        } else {
            Twist::negative([1])
        };
        PlanarMonodromy {
            holes: 1,
            twists: vec![t; k.unsigned_abs() as usize],
        }
    }

    /// One side of the lantern relation: boundary twist and the three hole twists.
    pub fn lantern_lhs() -> Self {
        PlanarMonodromy {
            holes: 3,
            twists: vec![
                Twist::positive([1, 2, 3]),
                Twist::positive([1]),
                Twist::positive([2]),
                Twist::positive([3]),
            ],
        }
    }

    /// The other side: the three twists around pairs of holes.
    pub fn lantern_rhs() -> Self {
        PlanarMonodromy {
            holes: 3,
            twists: vec![
                Twist::positive([1, 2]),
                Twist::positive([1, 3]),
                Twist::positive([2, 3]),
            ],
        }
    }

    pub fn then(mut self, twist: Twist) -> Result<Self> {
        self.twists.push(twist);
        Self::new(self.holes, self.twists)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("monodromy serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: MonodromyFile = serde_json::from_str(text).map_err(|e| Error::InvalidMonodromy(e.to_string()))?;
        file.try_into()
    }
}

/// Enclosed punctures of a twist curve as seen in `view`.
pub fn view_enclosed(set: &HoleSet, view: usize, holes: usize) -> Result<HoleSet> {
    if view > holes {
        return Err(Error::InvalidArgument(format!(
            "view {view} out of range 0..={holes}"
        )));
    }
    if view == 0 || !set.contains(&view) {
        return Ok(set.clone());
    }
    let mut out: HoleSet = (1..=holes).filter(|h| !set.contains(h)).collect();
    out.insert(0);
    Ok(out)
}

/// Punctures present in a view.
pub fn view_punctures(view: usize, holes: usize) -> Vec<usize> {
    if view == 0 {
        (1..=holes).collect()
    } else {
        std::iter::once(0)
            .chain((1..=holes).filter(|&h| h != view))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ViewCrossings {
    pub view: usize,
    /// Linking number of every puncture pair `(a, b)` with `a < b`.
    pub linking: BTreeMap<(usize, usize), i64>,
    pub crossing_number: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingProfile {
    pub views: Vec<ViewCrossings>,
}

impl CrossingProfile {
    pub fn crossing_numbers(&self) -> Vec<i64> {
        self.views.iter().map(|v| v.crossing_number).collect()
    }
}

pub fn crossing_profile(f: &PlanarMonodromy) -> CrossingProfile {
    let m = f.holes;
    let views = (0..=m)
        .map(|view| {
            let punct = view_punctures(view, m);
            let mut linking: BTreeMap<(usize, usize), i64> = BTreeMap::new();
            for (i, &a) in punct.iter().enumerate() {
                for &b in &punct[i + 1..] {
                    linking.insert((a.min(b), a.max(b)), 0);
                }
            }
            let mut crossing_number = 0;
            for t in &f.twists {
                let s = view_enclosed(&t.encloses, view, m).expect("view in range");
                let n = s.len() as i64;
                crossing_number += t.sign * n * (n - 1);
                let v: Vec<usize> = s.into_iter().collect();
                for (i, &a) in v.iter().enumerate() {
                    for &b in &v[i + 1..] {
                        *linking.get_mut(&(a, b)).expect("pair of view punctures") += t.sign;
                    }
                }
            }
            ViewCrossings {
                view,
                linking,
                crossing_number,
            }
        })
        .collect();
    CrossingProfile { views }
}

/// Every pairwise linking number in every view is nonnegative. Necessary
/// for a factorization into positive Dehn twists.
pub fn positive_factorization_necessary(f: &PlanarMonodromy) -> bool {
    crossing_profile(f)
        .views
        .iter()
        .all(|v| v.linking.values().all(|&l| l >= 0))
}

/// Upper bound on the number of twists in any positive factorization.
///
/// For `m >= 2` a positive twist adds at least 2 to the crossing number of
/// some view and nothing negative to any, so half the total over all views
/// bounds the length. The annulus is exact: its mapping class group is
/// generated by the core twist.
pub fn b2_bound(f: &PlanarMonodromy) -> Result<u64> {
    if f.holes == 1 {
        let k: i64 = f.twists.iter().map(|t| t.sign).sum();
        return u64::try_from(k).map_err(|_| {
            Error::NoPositiveFactorization(format!("annulus monodromy is t^{k} with k < 0"))
        });
    }
    if !positive_factorization_necessary(f) {
        return Err(Error::NoPositiveFactorization(
            "a pairwise linking number is negative in some view".into(),
        ));
    }
    let total: i64 = crossing_profile(f).crossing_numbers().iter().sum();
    Ok((total / 2) as u64)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SelfSurgeryVerdict {
    /// Every Stein filling has `b2 <= bound`, but repeated self-surgery would
    /// produce fillings with unbounded `b2`.
    Impossible { bound: u64 },
    Inconclusive { reason: String },
}

pub fn self_surgery_verdict(f: &PlanarMonodromy, fillable: bool) -> SelfSurgeryVerdict {
    if !fillable {
        return SelfSurgeryVerdict::Inconclusive {
            reason: "contact structure not known to be Stein fillable".into(),
        };
    }
    match b2_bound(f) {
        Ok(bound) => SelfSurgeryVerdict::Impossible { bound },
        Err(e) => SelfSurgeryVerdict::Inconclusive {
            reason: format!("monodromy inconsistent with fillability: {e}"),
        },
    }
}
