//! Exact linear algebra on small square integer matrices: determinant,
//! signature by congruence diagonalization, rational solves and integer
//! lattice membership. Generic over the integer type so the same routines
//! run on `i128` and on big integers.

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::arith::ExactInt;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix<I> {
    rows: Vec<Vec<I>>,
}

impl<I: ExactInt> Matrix<I> {
    /// Builds from rows; panics on a non-square input.
    pub fn from_rows(rows: Vec<Vec<I>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
        Matrix { rows }
    }

    pub fn zeros(n: usize) -> Self {
        Matrix {
            rows: vec![vec![I::zero(); n]; n],
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<I>] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> &I {
        &self.rows[i][j]
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..i).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn scaled(&self, k: &I) -> Self {
        Matrix {
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|x| x.clone() * k.clone()).collect())
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        let (a, b) = (self.dim(), other.dim());
        let mut out = Self::zeros(a + b);
        for i in 0..a {
            out.rows[i][..a].clone_from_slice(&self.rows[i]);
        }
        for i in 0..b {
            out.rows[a + i][a..].clone_from_slice(&other.rows[i]);
        }
        out
    }

    pub fn mul_vec(&self, v: &[I]) -> Vec<I> {
        self.rows
            .iter()
            .map(|r| {
                r.iter()
                    .zip(v)
                    .fold(I::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    /// Fraction-free (Bareiss) determinant.
    pub fn determinant(&self) -> I {
        let n = self.dim();
        if n == 0 {
            return I::one();
        }
        let mut a = self.rows.clone();
        let mut sign = I::one();
        let mut prev = I::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        sign = -sign;
                    }
                    None => return I::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                    a[i][j] = v / prev.clone();
                }
            }
            prev = a[k][k].clone();
        }
        sign * a[n - 1][n - 1].clone()
    }

    /// Signature of a symmetric matrix: positive minus negative entries of
    /// a rational diagonalization by congruence. Zero directions count 0.
    pub fn signature(&self) -> i64 {
        debug_assert!(self.is_symmetric());
        match self.tridiagonal_ldl() {
            Some(f) => f.signature(),
            None => self.signature_dense(),
        }
    }

    fn signature_dense(&self) -> i64 {
        let n = self.dim();
        let mut a: Vec<Vec<Ratio<I>>> = self
            .rows
            .iter()
            .map(|r| r.iter().cloned().map(Ratio::from_integer).collect())
            .collect();
        let (mut pos, mut neg) = (0i64, 0i64);
        for k in 0..n {
            if let Some(p) = (k..n).find(|&i| !a[i][i].is_zero()) {
                swap_sym(&mut a, k, p);
            } else if let Some((i, j)) = (k..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !a[i][j].is_zero())
            {
                // diagonal block is zero: e_i + e_j has square 2 a_ij != 0
                for l in 0..n {
                    let v = a[j][l].clone();
                    a[i][l] = a[i][l].clone() + v;
                }
                for l in 0..n {
                    let v = a[l][j].clone();
                    a[l][i] = a[l][i].clone() + v;
                }
                swap_sym(&mut a, k, i);
            } else {
                break;
            }
            let pivot = a[k][k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a[i][k].clone() * a[k][j].clone() / pivot.clone();
                    a[i][j] = a[i][j].clone() - v;
                }
            }
            for i in k + 1..n {
                a[i][k] = Ratio::zero();
                a[k][i] = Ratio::zero();
            }
        }
        pos - neg
    }

    /// Some rational solution of `self * x = b`, or `None` if inconsistent.
    /// Free variables are set to zero.
    pub fn solve(&self, b: &[I]) -> Option<Vec<Ratio<I>>> {
        let n = self.dim();
        assert_eq!(b.len(), n);
        match self.tridiagonal_ldl() {
            Some(f) => Some(f.solve(b)),
            None => self.solve_dense(b),
        }
    }

    fn solve_dense(&self, b: &[I]) -> Option<Vec<Ratio<I>>> {
        let n = self.dim();
        let mut aug: Vec<Vec<Ratio<I>>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                r.iter()
                    .cloned()
                    .chain(std::iter::once(bi.clone()))
                    .map(Ratio::from_integer)
                    .collect()
            })
            .collect();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..n {
            let Some(p) = (row..n).find(|&i| !aug[i][col].is_zero()) else {
                continue;
            };
            aug.swap(row, p);
            let inv = aug[row][col].recip();
            for x in aug[row].iter_mut() {
                *x = x.clone() * inv.clone();
            }
            for i in 0..n {
                if i != row && !aug[i][col].is_zero() {
                    let f = aug[i][col].clone();
                    for j in col..=n {
                        let v = f.clone() * aug[row][j].clone();
                        aug[i][j] = aug[i][j].clone() - v;
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        if aug[row..].iter().any(|r| !r[n].is_zero()) {
            return None;
        }
        let mut x = vec![Ratio::zero(); n];
        for (r, &c) in pivots.iter().enumerate() {
            x[c] = aug[r][n].clone();
        }
        Some(x)
    }

    /// `L D L^T` factorization when the matrix is symmetric tridiagonal and
    /// no pivot vanishes. Linking matrices of plumbing chains take this
    /// path, which is linear in the dimension.
    pub fn tridiagonal_ldl(&self) -> Option<TridiagonalLdl<I>> {
        let n = self.dim();
        let a = &self.rows;
        for i in 0..n {
            for j in i + 2..n {
                if !a[i][j].is_zero() || !a[j][i].is_zero() {
                    return None;
                }
            }
            if i + 1 < n && a[i][i + 1] != a[i + 1][i] {
                return None;
            }
        }
        let mut pivots: Vec<Ratio<I>> = Vec::with_capacity(n);
        let mut lower: Vec<Ratio<I>> = Vec::with_capacity(n.saturating_sub(1));
        for i in 0..n {
            let mut d = Ratio::from_integer(a[i][i].clone());
            if i > 0 {
                let b = Ratio::from_integer(a[i][i - 1].clone());
                let l = b.clone() / pivots[i - 1].clone();
                d = d - l.clone() * b;
                lower.push(l);
            }
            if d.is_zero() {
                return None;
            }
            pivots.push(d);
        }
        Some(TridiagonalLdl { pivots, lower })
    }

    /// Whether `v` lies in the integer span of the columns.
    pub fn column_lattice_contains(&self, v: &[I]) -> bool {
        let n = self.dim();
        assert_eq!(v.len(), n);
        // columns as vectors, brought to echelon form by unimodular column ops
        let mut cols: Vec<Vec<I>> = (0..n)
            .map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect())
            .collect();
        let mut residual = v.to_vec();
        let mut next = 0;
        for r in 0..n {
            for c in next + 1..n {
                while !cols[c][r].is_zero() {
                    let q = cols[next][r].clone() / cols[c][r].clone();
                    for i in 0..n {
                        let t = q.clone() * cols[c][i].clone();
                        cols[next][i] = cols[next][i].clone() - t;
                    }
                    cols.swap(next, c);
                }
            }
            if next < n && !cols[next][r].is_zero() {
                let (q, rem) = residual[r].div_rem(&cols[next][r]);
                if !rem.is_zero() {
                    return false;
                }
                for i in 0..n {
                    let t = q.clone() * cols[next][i].clone();
                    residual[i] = residual[i].clone() - t;
                }
                next += 1;
            } else if !residual[r].is_zero() {
                return false;
            }
        }
        true
    }
}

fn swap_sym<T>(a: &mut [Vec<T>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

/// `x^T y` over rationals.
/// Factorization from [`Matrix::tridiagonal_ldl`]: pivots `D` and the
/// subdiagonal of the unit lower bidiagonal `L`.
#[derive(Debug, Clone)]
pub struct TridiagonalLdl<I> {
    pivots: Vec<Ratio<I>>,
    lower: Vec<Ratio<I>>,
}

impl<I: ExactInt> TridiagonalLdl<I> {
    pub fn signature(&self) -> i64 {
        self.pivots
            .iter()
            .map(|d| if d.is_positive() { 1 } else { -1 })
            .sum()
    }

    /// The unique solution of `A x = b`.
    pub fn solve(&self, b: &[I]) -> Vec<Ratio<I>> {
        let n = self.pivots.len();
        assert_eq!(b.len(), n);
        let mut y: Vec<Ratio<I>> = Vec::with_capacity(n);
        for i in 0..n {
            let mut yi = Ratio::from_integer(b[i].clone());
            if i > 0 {
                yi = yi - self.lower[i - 1].clone() * y[i - 1].clone();
            }
            y.push(yi);
        }
        let mut x = vec![Ratio::zero(); n];
        for i in (0..n).rev() {
            let mut xi = y[i].clone() / self.pivots[i].clone();
            if i + 1 < n {
                xi = xi - self.lower[i].clone() * x[i + 1].clone();
            }
            x[i] = xi;
        }
        x
    }
}

pub fn dot<I: ExactInt>(x: &[I], y: &[Ratio<I>]) -> Ratio<I> {
    x.iter()
        .zip(y)
        .fold(Ratio::zero(), |acc, (a, b)| acc + b.clone() * a.clone())
}
