//! Dense exact matrices over the rationals.
//!
//! Ranks and determinants go through fraction-free (Bareiss) elimination on
//! integer matrices obtained by clearing denominators row by row, so no
//! intermediate value is ever rounded. Reduced row echelon form over the
//! rationals provides canonical subspace representatives and kernel bases.

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{Int, Rational};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>, // row major
}

impl QMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = QMatrix::zero(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != ncols) {
            return Err(Error::invalid("ragged rows in matrix constructor"));
        }
        Ok(QMatrix {
            rows: nrows,
            cols: ncols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        QMatrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Rational::is_zero)
    }

    pub fn transpose(&self) -> QMatrix {
        QMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    /// Stack `other` below `self`.
    pub fn vstack(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.cols {
            return Err(Error::invalid("vstack column mismatch"));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(QMatrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn mul(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.cols != other.rows {
            return Err(Error::invalid("matrix product dimension mismatch"));
        }
        Ok(QMatrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                acc = acc + self.get(i, k) * other.get(k, j);
            }
            acc
        }))
    }

    /// Clear denominators row by row; the row spans (hence rank and kernel)
    /// are unchanged.
    fn to_int_rows(&self) -> Vec<Vec<Int>> {
        (0..self.rows)
            .map(|i| {
                let mut lcm = Int::one();
                for v in self.row(i) {
                    lcm = lcm.lcm(v.denom());
                }
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect()
            })
            .collect()
    }

    /// Rank via fraction-free Gaussian elimination.
    pub fn rank(&self) -> usize {
        bareiss_rank(self.to_int_rows())
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::invalid("determinant of a non-square matrix"));
        }
        if self.rows == 0 {
            return Ok(Rational::one());
        }
        let mut scale = Rational::one();
        let int_rows = (0..self.rows)
            .map(|i| {
                let mut lcm = Int::one();
                for v in self.row(i) {
                    lcm = lcm.lcm(v.denom());
                }
                scale = &scale * &Rational::from(lcm.clone());
                self.row(i)
                    .iter()
                    .map(|v| v.numer() * (&lcm / v.denom()))
                    .collect::<Vec<_>>()
            })
            .collect::<Vec<_>>();
        let d = bareiss_det(int_rows);
        Ok(Rational::from(d).checked_div(&scale).expect("scale nonzero"))
    }

    /// Reduced row echelon form with its pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = m.get(r, c).recip().expect("pivot nonzero");
            for j in c..m.cols {
                m.set(r, j, m.get(r, j) * &inv);
            }
            for i in 0..m.rows {
                if i != r && !m.get(i, c).is_zero() {
                    let f = m.get(i, c).clone();
                    for j in c..m.cols {
                        m.set(i, j, m.get(i, j) - &(&f * m.get(r, j)));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Canonical basis of the right kernel {x : Mx = 0}.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let pivot_set: Vec<Option<usize>> = {
            let mut v = vec![None; self.cols];
            for (row, &c) in pivots.iter().enumerate() {
                v[c] = Some(row);
            }
            v
        };
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivot_set[free].is_some() {
                continue;
            }
            let mut vec = vec![Rational::zero(); self.cols];
            vec[free] = Rational::one();
            for (col, slot) in pivot_set.iter().enumerate() {
                if let Some(row) = slot {
                    vec[col] = -r.get(*row, free);
                }
            }
            basis.push(vec);
        }
        basis
    }

    /// Exact inverse, or None if singular.
    pub fn inverse(&self) -> Option<QMatrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = QMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &c)| c != i) {
            return None;
        }
        Some(QMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Rank of an integer matrix by Bareiss fraction-free elimination; all
/// intermediate entries are minors of the input, and every division is exact.
fn bareiss_rank(mut m: Vec<Vec<Int>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut prev = Int::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in (r + 1)..rows {
            for j in (c + 1)..cols {
                let num = &m[r][c] * &m[i][j] - &m[i][c] * &m[r][j];
                m[i][j] = num / &prev;
            }
            m[i][c] = Int::zero();
        }
        prev = m[r][c].clone();
        r += 1;
    }
    r
}

/// Determinant of a square integer matrix by Bareiss elimination.
fn bareiss_det(mut m: Vec<Vec<Int>>) -> Int {
    let n = m.len();
    if n == 0 {
        return Int::one();
    }
    let mut prev = Int::one();
    let mut sign = 1i32;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else {
            return Int::zero();
        };
        if p != c {
            m.swap(c, p);
            sign = -sign;
        }
        for i in (c + 1)..n {
            for j in (c + 1)..n {
                let num = &m[c][c] * &m[i][j] - &m[i][c] * &m[c][j];
                m[i][j] = num / &prev;
            }
            m[i][c] = Int::zero();
        }
        prev = m[c][c].clone();
    }
    let d = m[n - 1][n - 1].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn q(n: i64) -> Rational {
        Rational::from(n)
    }

    fn mat(rows: &[&[i64]]) -> QMatrix {
        QMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| q(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn rank_of_simple_matrices() {
        assert_eq!(mat(&[&[1, 2], &[2, 4]]).rank(), 1);
        assert_eq!(mat(&[&[1, 0], &[0, 1]]).rank(), 2);
        assert_eq!(QMatrix::zero(3, 4).rank(), 0);
        assert_eq!(mat(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]).rank(), 2);
    }

    #[test]
    fn rank_handles_rational_entries() {
        let m = QMatrix::from_rows(vec![
            vec![rat(1, 2).unwrap(), rat(1, 3).unwrap()],
            vec![rat(3, 2).unwrap(), rat(1, 1).unwrap()],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = mat(&[&[2, -3, 1], &[2, 0, -1], &[1, 4, 5]]);
        // 2*(0*5 - (-1)*4) - (-3)*(2*5 - (-1)*1) + 1*(2*4 - 0*1) = 8 + 33 + 8
        assert_eq!(m.det().unwrap(), q(49));
        let singular = mat(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det().unwrap(), q(0));
    }

    #[test]
    fn rref_is_canonical() {
        let m = mat(&[&[2, 4, 2], &[1, 2, 3]]);
        let (r, pivots) = m.rref();
        assert_eq!(pivots, vec![0, 2]);
        assert_eq!(r, mat(&[&[1, 2, 0], &[0, 0, 1]]));
    }

    #[test]
    fn kernel_vectors_annihilate() {
        let m = mat(&[&[1, 2, 3], &[4, 5, 6]]);
        let ker = m.kernel_basis();
        assert_eq!(ker.len(), 1);
        for v in &ker {
            for i in 0..m.rows() {
                let dot = (0..3).fold(Rational::zero(), |acc, j| acc + m.get(i, j) * &v[j]);
                assert!(dot.is_zero());
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        let m = mat(&[&[2, 1], &[7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), QMatrix::identity(2));
        assert!(mat(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }
}
