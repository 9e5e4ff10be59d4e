//! Contact (±1) surgery diagrams on Legendrian links in the tight `S^3`.
//!
//! The 4-manifold `X` is `B^4` with one 2-handle per component, attached
//! with smooth framing `tb + coeff`. Rotation numbers evaluate `c1` on the
//! handle classes, so `c1^2 = rot^T Q^{-1} rot` whenever `rot` lies in the
//! image of `Q`, and
//!
//! `d3 = (c1^2 - 2 chi(X) - 3 sigma(X)) / 4 + #(+1 surgeries)`,
//!
//! normalized so that the standard tight `S^3` (the empty diagram) has
//! `d3 = -1/2`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{cf_value, int_rational};
use crate::linalg::dot;
use crate::tightbook::rot_choices;
use crate::{Error, Int, LensSpace, Matrix, NegCf, Rational, Result};

/// A Legendrian knot with its contact surgery coefficient (`+1` or `-1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LegendrianComponent {
    pub tb: i64,
    pub rot: i64,
    pub coeff: i64,
}

impl LegendrianComponent {
    /// Legendrian (`-1`) surgery.
    pub fn legendrian(tb: i64, rot: i64) -> Self {
        LegendrianComponent { tb, rot, coeff: -1 }
    }

    /// Contact `+1` surgery.
    pub fn plus_one(tb: i64, rot: i64) -> Self {
        LegendrianComponent { tb, rot, coeff: 1 }
    }

    pub fn framing(&self) -> i64 {
        self.tb + self.coeff
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "DiagramFile", into = "DiagramFile")]
pub struct ContactSurgeryDiagram {
    components: Vec<LegendrianComponent>,
    linking: Vec<Vec<i64>>,
}

/// On-disk layout of a diagram.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DiagramFile {
    components: Vec<LegendrianComponent>,
    linking: Vec<Vec<i64>>,
}

impl TryFrom<DiagramFile> for ContactSurgeryDiagram {
    type Error = Error;

    fn try_from(f: DiagramFile) -> Result<Self> {
        ContactSurgeryDiagram::new(f.components, f.linking)
    }
}

impl From<ContactSurgeryDiagram> for DiagramFile {
    fn from(d: ContactSurgeryDiagram) -> Self {
        DiagramFile {
            components: d.components,
            linking: d.linking,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramInvariants {
    pub euler_char: i64,
    pub signature: i64,
    /// `|det Q|`; zero when `b1 > 0`.
    pub h1_order: Int,
    pub c1_square: Rational,
    pub d3: Rational,
}

impl ContactSurgeryDiagram {
    /// Validates coefficients and the linking matrix. Diagonal entries of
    /// `linking` must be zero.
    pub fn new(components: Vec<LegendrianComponent>, linking: Vec<Vec<i64>>) -> Result<Self> {
        let n = components.len();
        if linking.len() != n || linking.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidDiagram(format!(
                "linking must be a {n}x{n} matrix"
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if c.coeff != 1 && c.coeff != -1 {
                return Err(Error::InvalidDiagram(format!(
                    "components[{i}].coeff must be +1 or -1, got {}",
                    c.coeff
                )));
            }
        }
        for i in 0..n {
            if linking[i][i] != 0 {
                return Err(Error::InvalidDiagram(format!(
                    "linking[{i}][{i}] must be 0"
                )));
            }
            for j in 0..i {
                if linking[i][j] != linking[j][i] {
                    return Err(Error::InvalidDiagram(format!(
                        "linking is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(ContactSurgeryDiagram {
            components,
            linking,
        })
    }

    pub fn empty() -> Self {
        ContactSurgeryDiagram {
            components: Vec::new(),
            linking: Vec::new(),
        }
    }

    pub fn components(&self) -> &[LegendrianComponent] {
        &self.components
    }

    pub fn linking(&self) -> &[Vec<i64>] {
        &self.linking
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of `+1` surgeries.
    pub fn plus_count(&self) -> i64 {
        self.components.iter().filter(|c| c.coeff == 1).count() as i64
    }

    pub fn rots(&self) -> Vec<Int> {
        self.components.iter().map(|c| Int::from(c.rot)).collect()
    }

    /// Intersection form `Q`: framings on the diagonal, linking numbers off it.
    pub fn linking_matrix(&self) -> Matrix {
        let n = self.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            Int::from(self.components[i].framing())
                        } else {
                            Int::from(self.linking[i][j])
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    pub fn euler_char(&self) -> i64 {
        1 + self.len() as i64
    }

    pub fn signature(&self) -> i64 {
        self.linking_matrix().signature()
    }

    pub fn h1_order(&self) -> Int {
        self.linking_matrix().determinant().abs()
    }

    pub fn c1_square(&self) -> Result<Rational> {
        let rots = self.rots();
        let x = self
            .linking_matrix()
            .solve(&rots)
            .ok_or(Error::NonTorsion)?;
        Ok(dot(&rots, &x))
    }

    pub fn d3(&self) -> Result<Rational> {
        Ok(d3_from_parts(
            &self.c1_square()?,
            self.euler_char(),
            self.signature(),
            self.plus_count(),
        ))
    }

    pub fn invariants(&self) -> Result<DiagramInvariants> {
        let c1_square = self.c1_square()?;
        Ok(DiagramInvariants {
            euler_char: self.euler_char(),
            signature: self.signature(),
            h1_order: self.h1_order(),
            d3: self.d3()?,
            c1_square,
        })
    }

    pub fn spin_c_class(&self) -> SpinCClass {
        SpinCClass {
            rep: self.rots(),
            lattice: Arc::new(self.linking_matrix().scaled(&Int::from(2))),
        }
    }

    /// The lens space presented by a linear chain (consecutive linking 1,
    /// all smooth framings `<= -2`); `None` for anything else.
    pub fn chain_lens(&self) -> Option<LensSpace> {
        let n = self.len();
        if n == 0 {
            return None;
        }
        for i in 0..n {
            for j in 0..n {
                let expected = if i.abs_diff(j) == 1 { 1 } else { 0 };
                if i != j && self.linking[i][j] != expected {
                    return None;
                }
            }
        }
        let framings: Vec<Int> = self
            .components
            .iter()
            .map(|c| Int::from(c.framing()))
            .collect();
        let cf = NegCf::new(framings).ok()?;
        let v = -cf_value(&cf);
        LensSpace::new(v.numer().to_i64()?, v.denom().to_i64()?).ok()
    }

    /// Chain presentation with `tb_i = a_i + 1`, Legendrian surgery on every
    /// component and the given rotation numbers.
    pub fn build_chain(cf: &NegCf, rots: &[i64]) -> Result<Self> {
        if rots.len() != cf.len() {
            return Err(Error::InvalidDiagram(format!(
                "{} rotation numbers for a chain of length {}",
                rots.len(),
                cf.len()
            )));
        }
        let n = cf.len();
        let mut components = Vec::with_capacity(n);
        for (a, &rot) in cf.coeffs().iter().zip(rots) {
            let tb = a.to_i64().ok_or_else(|| {
                Error::InvalidDiagram("continued fraction term out of range".into())
            })? + 1;
            if !rot_choices(tb)?.contains(&rot) {
                return Err(Error::InadmissibleRotation { tb, rot });
            }
            components.push(LegendrianComponent::legendrian(tb, rot));
        }
        let linking = (0..n)
            .map(|i| (0..n).map(|j| i64::from(i.abs_diff(j) == 1)).collect())
            .collect();
        Self::new(components, linking)
    }

    /// Diagrams placed side by side, unlinked.
    pub fn disjoint_union(&self, other: &Self) -> Self {
        let (a, b) = (self.len(), other.len());
        let mut linking = vec![vec![0; a + b]; a + b];
        for i in 0..a {
            linking[i][..a].copy_from_slice(&self.linking[i]);
        }
        for i in 0..b {
            linking[a + i][a..].copy_from_slice(&other.linking[i]);
        }
        let mut components = self.components.clone();
        components.extend_from_slice(&other.components);
        ContactSurgeryDiagram {
            components,
            linking,
        }
    }

    /// Appends a Legendrian knot `K` (Legendrian surgery) and its push-off
    /// (`+1` surgery), both linking the existing components by `links`.
    /// The two surgeries cancel.
    pub fn with_cancelling_pair(&self, tb: i64, rot: i64, links: &[i64]) -> Result<Self> {
        let n = self.len();
        if links.len() != n {
            return Err(Error::InvalidDiagram(format!(
                "need {n} linking numbers for the cancelling pair"
            )));
        }
        let mut linking: Vec<Vec<i64>> = self
            .linking
            .iter()
            .zip(links)
            .map(|(row, &l)| row.iter().copied().chain([l, l]).collect())
            .collect();
        let mut k_row: Vec<i64> = links.to_vec();
        k_row.extend([0, tb]);
        let mut push_row: Vec<i64> = links.to_vec();
        push_row.extend([tb, 0]);
        linking.push(k_row);
        linking.push(push_row);
        let mut components = self.components.clone();
        components.push(LegendrianComponent::legendrian(tb, rot));
        components.push(LegendrianComponent::plus_one(tb, rot));
        Self::new(components, linking)
    }

    /// Reverses the orientation of every component (negates all rotations).
    pub fn conjugate(&self) -> Self {
        let mut out = self.clone();
        for c in &mut out.components {
            c.rot = -c.rot;
        }
        out
    }

    /// Canonical compact JSON, newline terminated.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("diagram serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: DiagramFile = serde_json::from_str(text).map_err(|e| Error::InvalidDiagram(e.to_string()))?;
        file.try_into()
    }
}

/// `(c1^2 - 2 chi - 3 sigma) / 4 + plus_count`.
pub fn d3_from_parts(c1_square: &Rational, chi: i64, sigma: i64, plus_count: i64) -> Rational {
    (c1_square - int_rational(2 * chi + 3 * sigma)) / int_rational(4) + int_rational(plus_count)
}

/// A rotation vector modulo the lattice `2Q Z^n`.
#[derive(Debug, Clone)]
pub struct SpinCClass {
    rep: Vec<Int>,
    lattice: Arc<Matrix>,
}

impl SpinCClass {
    /// Class of `rots` modulo `2Q Z^n` for a shared lattice `2Q`.
    pub fn with_lattice(rots: &[i64], lattice: Arc<Matrix>) -> Self {
        assert_eq!(rots.len(), lattice.dim());
        SpinCClass {
            rep: rots.iter().map(|&r| Int::from(r)).collect(),
            lattice,
        }
    }

    pub fn representative(&self) -> &[Int] {
        &self.rep
    }

    pub fn lattice(&self) -> &Matrix {
        &self.lattice
    }

    pub fn conjugate(&self) -> Self {
        SpinCClass {
            rep: self.rep.iter().map(|x| -x).collect(),
            lattice: self.lattice.clone(),
        }
    }

    pub fn is_self_conjugate(&self) -> bool {
        *self == self.conjugate()
    }
}

impl PartialEq for SpinCClass {
    fn eq(&self, other: &Self) -> bool {
        if !Arc::ptr_eq(&self.lattice, &other.lattice) && self.lattice != other.lattice {
            return false;
        }
        let diff: Vec<Int> = self.rep.iter().zip(&other.rep).map(|(a, b)| a - b).collect();
        diff.iter().all(Zero::is_zero) || self.lattice.column_lattice_contains(&diff)
    }
}

impl Eq for SpinCClass {}
