//! Tight contact structures on lens spaces, presented by Legendrian surgery
//! on the standard chain of unknots with every choice of stabilizations.

use num_traits::ToPrimitive;
use rayon::prelude::*;

use std::sync::Arc;

use crate::diagram::{d3_from_parts, ContactSurgeryDiagram, SpinCClass};
use crate::linalg::dot;
use crate::{Error, Int, LensSpace, NegCf, Rational, Result};

/// Rotation numbers of Legendrian unknots with the given `tb` in the tight
/// `S^3`: `tb+1, tb+3, ..., -tb-1`.
pub fn rot_choices(tb: i64) -> Result<Vec<i64>> {
    if tb >= 0 {
        return Err(Error::InvalidUnknotTb(tb));
    }
    Ok((0..-tb).map(|k| tb + 1 + 2 * k).collect())
}

#[derive(Debug, Clone)]
pub struct TightStructure {
    pub space: LensSpace,
    pub cf: NegCf,
    pub rots: Vec<i64>,
    pub d3: Rational,
    pub spin_c: SpinCClass,
}

impl TightStructure {
    pub fn diagram(&self) -> ContactSurgeryDiagram {
        ContactSurgeryDiagram::build_chain(&self.cf, &self.rots).expect("admissible by construction")
    }

    /// Whether the computed invariants fail to tell the two apart.
    pub fn indistinguishable_from(&self, other: &TightStructure) -> bool {
        self.d3 == other.d3 && self.spin_c == other.spin_c
    }
}

fn chain_tbs(space: &LensSpace) -> Result<(NegCf, Vec<i64>)> {
    let cf = space.neg_cf().ok_or_else(|| {
        Error::InvalidArgument("tight structures are enumerated for p >= 2".into())
    })?;
    let tbs = cf
        .coeffs()
        .iter()
        .map(|a| a.to_i64().expect("chain term fits in i64") + 1)
        .collect();
    Ok((cf, tbs))
}

/// Number of tight structures: the product of `|a_i + 1|` over the chain.
pub fn count_tight(space: &LensSpace) -> Result<u64> {
    let (_, tbs) = chain_tbs(space)?;
    Ok(tbs.iter().map(|tb| tb.unsigned_abs()).product())
}

/// Every admissible rotation tuple on the chain, lexicographic in `rots`.
pub fn enumerate_tight(space: &LensSpace) -> Result<Vec<TightStructure>> {
    let (cf, tbs) = chain_tbs(space)?;
    let choices: Vec<Vec<i64>> = tbs.iter().map(|&tb| rot_choices(tb)).collect::<Result<_>>()?;
    let mut tuples: Vec<Vec<i64>> = vec![Vec::new()];
    for opts in &choices {
        tuples = tuples
            .into_iter()
            .flat_map(|t| {
                opts.iter().map(move |&r| {
                    let mut next = t.clone();
                    next.push(r);
                    next
                })
            })
            .collect();
    }
    // every structure shares the linking matrix; factor it once
    let first: Vec<i64> = choices.iter().map(|c| c[0]).collect();
    let base = ContactSurgeryDiagram::build_chain(&cf, &first)?;
    let q = base.linking_matrix();
    let ldl = q.tridiagonal_ldl().expect("chain matrix is negative definite");
    let (chi, sigma) = (base.euler_char(), ldl.signature());
    let lattice = Arc::new(q.scaled(&Int::from(2)));
    Ok(tuples
        .into_par_iter()
        .map(|rots| {
            let v: Vec<Int> = rots.iter().map(|&r| Int::from(r)).collect();
            let c1_sq = dot(&v, &ldl.solve(&v));
            TightStructure {
                space: *space,
                cf: cf.clone(),
                d3: d3_from_parts(&c1_sq, chi, sigma, 0),
                spin_c: SpinCClass::with_lattice(&rots, lattice.clone()),
                rots,
            }
        })
        .collect())
}

/// Groups of structure indices that share `(d3, spin_c)`.
pub fn indistinguishable_groups(structures: &[TightStructure]) -> Vec<Vec<usize>> {
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (i, s) in structures.iter().enumerate() {
        match groups
            .iter_mut()
            .find(|g| structures[g[0]].indistinguishable_from(s))
        {
            Some(g) => g.push(i),
            None => groups.push(vec![i]),
        }
    }
    groups.retain(|g| g.len() > 1);
    groups
}
