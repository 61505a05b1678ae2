//! Dense matrices over a [`FieldSpec`] and exact elimination.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{FieldSpec, Scalar};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub reduced: ExactMatrix,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl ExactMatrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        ExactMatrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Builds a matrix from rows, checking shape and field agreement.
    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let nrows = rows.len();
        let mut data = Vec::with_capacity(nrows * cols);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            if row.iter().any(|s| s.field() != field) {
                return Err(Error::FieldMismatch);
            }
            data.extend(row);
        }
        Ok(ExactMatrix {
            field,
            rows: nrows,
            cols,
            data,
        })
    }

    /// Shorthand for integer matrices; panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(field: FieldSpec, rows: &[R]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&v| field.from_i64(v)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "mixed-field matrix entry");
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn column(&self, j: usize) -> Vec<Scalar> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                data.push(self.get(i, j).clone());
            }
        }
        ExactMatrix {
            field: self.field,
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.data[idx] = &out.data[idx] + &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    /// `self · v` for a column vector given as a slice.
    pub fn apply(&self, v: &[Scalar]) -> Vec<Scalar> {
        assert_eq!(v.len(), self.cols, "vector length");
        (0..self.rows)
            .map(|i| dot(self.row(i), v, self.field))
            .collect()
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &i in idx {
            data.extend_from_slice(self.row(i));
        }
        ExactMatrix {
            field: self.field,
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, other: &ExactMatrix) -> Result<Self> {
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let rows = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.extend_from_slice(other.row(i));
                r
            })
            .collect();
        Self::from_rows(self.field, rows)
    }

    /// Gauss–Jordan elimination, leftmost nonzero entry as pivot.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let Some(p) = (row..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                continue;
            };
            m.swap_rows(row, p);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i == row || m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col).clone();
                for j in col..m.cols {
                    let pivot_entry = m.get(row, j);
                    if pivot_entry.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&factor * pivot_entry);
                    m.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        let rank = pivots.len();
        Rref {
            reduced: m,
            pivots,
            rank,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right null space, one column per free variable of the
    /// reduced row-echelon form (free variable set to 1, the others to 0).
    pub fn kernel_basis(&self) -> ExactMatrix {
        let Rref {
            reduced, pivots, ..
        } = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut k = Self::zeros(self.field, self.cols, free.len());
        for (slot, &f) in free.iter().enumerate() {
            k.set(f, slot, self.field.one());
            for (i, &p) in pivots.iter().enumerate() {
                k.set(p, slot, -reduced.get(i, f));
            }
        }
        k
    }

    /// Particular solution of `self · x = b` with free variables zero, or
    /// `None` if the system is inconsistent.
    pub fn solve(&self, b: &ExactMatrix) -> Result<Option<ExactMatrix>> {
        if self.rows != b.rows {
            return Err(Error::DimensionMismatch(format!(
                "{} equations but right-hand side has {} rows",
                self.rows, b.rows
            )));
        }
        let aug = self.hstack(b)?;
        let Rref {
            reduced, pivots, ..
        } = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return Ok(None);
        }
        let mut x = Self::zeros(self.field, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, reduced.get(i, self.cols + j).clone());
            }
        }
        Ok(Some(x))
    }

    pub fn inverse(&self) -> Option<ExactMatrix> {
        if self.rows != self.cols {
            return None;
        }
        // A·X = I is inconsistent exactly when A is singular.
        self.solve(&Self::identity(self.field, self.rows))
            .expect("shapes agree")
    }

    /// Exact determinant: fraction-free Bareiss over the integers for ℚ
    /// (after clearing row denominators), plain elimination over `GF(p)`.
    pub fn determinant(&self) -> Result<Scalar> {
        if self.rows != self.cols {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(match self.field {
            FieldSpec::Rationals => self.field.from_rational(self.bareiss_rational()),
            FieldSpec::Prime(_) => self.det_gauss(),
        })
    }

    fn bareiss_rational(&self) -> BigRational {
        let n = self.rows;
        if n == 0 {
            return BigRational::one();
        }
        let mut scale = BigInt::one();
        let mut m: Vec<Vec<BigInt>> = (0..n)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, s| {
                    acc.lcm(s.as_rational().expect("rational entry").denom())
                });
                scale *= &lcm;
                row.iter()
                    .map(|s| {
                        let q = s.as_rational().expect("rational entry");
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return BigRational::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = v / &prev;
                }
            }
            prev = m[k][k].clone();
        }
        BigRational::new(sign * &m[n - 1][n - 1], scale)
    }

    fn det_gauss(&self) -> Scalar {
        let n = self.rows;
        let mut m = self.clone();
        let mut det = self.field.one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&i| !m.get(i, k).is_zero()) else {
                return self.field.zero();
            };
            if p != k {
                m.swap_rows(p, k);
                det = -det;
            }
            let pivot = m.get(k, k).clone();
            det = &det * &pivot;
            let inv = pivot.inv().expect("nonzero pivot");
            for i in k + 1..n {
                if m.get(i, k).is_zero() {
                    continue;
                }
                let f = m.get(i, k) * &inv;
                for j in k..n {
                    let v = m.get(i, j) - &(&f * m.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

pub(crate) fn dot(a: &[Scalar], b: &[Scalar], field: FieldSpec) -> Scalar {
    a.iter()
        .zip(b)
        .filter(|(x, y)| !x.is_zero() && !y.is_zero())
        .fold(field.zero(), |acc, (x, y)| &acc + &(x * y))
}

/// Whitespace-separated entries, one row per line.
impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let line: Vec<String> = self.row(i).iter().map(Scalar::to_string).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn rref_identity() {
        let r = ExactMatrix::identity(q(), 2).rref();
        assert_eq!(r.reduced, ExactMatrix::identity(q(), 2));
        assert_eq!(r.pivots, vec![0, 1]);
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn rref_proportional_rows() {
        let r = ExactMatrix::from_ints(q(), &[[1, 1], [2, 2]]).rref();
        assert_eq!(r.rank, 1);
        assert_eq!(r.pivots, vec![0]);
        assert_eq!(r.reduced, ExactMatrix::from_ints(q(), &[[1, 1], [0, 0]]));
    }

    #[test]
    fn kernel_single_relation() {
        let k = ExactMatrix::from_ints(q(), &[[1, 1]]).kernel_basis();
        assert_eq!(k, ExactMatrix::from_ints(q(), &[[-1], [1]]));
    }

    #[test]
    fn kernel_full_rank_is_empty() {
        let m = ExactMatrix::from_ints(q(), &[[2, 1], [1, 1]]);
        assert_eq!(m.kernel_basis().cols(), 0);
    }

    #[test]
    fn kernel_two_relations() {
        let m = ExactMatrix::from_ints(q(), &[[1, 0, 1, 1], [0, 1, 1, 2]]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 2);
        assert!(m.mul(&k).unwrap().is_zero());
        let expected = ExactMatrix::from_ints(q(), &[[-1, -1, 1, 0], [-1, -2, 0, 1]]);
        assert_eq!(k.transpose(), expected);
    }

    #[test]
    fn kernel_of_empty_shapes() {
        let m = ExactMatrix::zeros(q(), 0, 3);
        assert_eq!(m.kernel_basis(), ExactMatrix::identity(q(), 3));
        let m = ExactMatrix::zeros(q(), 2, 0);
        assert_eq!(m.kernel_basis().rows(), 0);
    }

    #[test]
    fn solve_identity_and_inconsistent() {
        let b = ExactMatrix::from_ints(q(), &[[3, 1], [4, 1]]);
        let x = ExactMatrix::identity(q(), 2).solve(&b).unwrap().unwrap();
        assert_eq!(x, b);
        let a = ExactMatrix::from_ints(q(), &[[1], [1]]);
        let b = ExactMatrix::from_ints(q(), &[[0], [1]]);
        assert_eq!(a.solve(&b).unwrap(), None);
        let bad = ExactMatrix::from_ints(q(), &[[0]]);
        assert!(matches!(a.solve(&bad), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn solve_free_variables_zero() {
        let a = ExactMatrix::from_ints(q(), &[[1, 2, 3]]);
        let b = ExactMatrix::from_ints(q(), &[[6]]);
        let x = a.solve(&b).unwrap().unwrap();
        assert_eq!(x, ExactMatrix::from_ints(q(), &[[6], [0], [0]]));
    }

    #[test]
    fn determinant_small_cases() {
        assert!(ExactMatrix::identity(q(), 3).determinant().unwrap().is_one());
        let swap = ExactMatrix::from_ints(q(), &[[0, 1], [1, 0]]);
        assert_eq!(swap.determinant().unwrap(), q().from_i64(-1));
        let f = FieldSpec::prime(7).unwrap();
        let swap = ExactMatrix::from_ints(f, &[[0, 1], [1, 0]]);
        assert_eq!(swap.determinant().unwrap().residue(), Some(6));
        let rect = ExactMatrix::zeros(q(), 2, 3);
        assert!(matches!(rect.determinant(), Err(Error::NotSquare { .. })));
        assert!(ExactMatrix::zeros(q(), 0, 0).determinant().unwrap().is_one());
    }

    #[test]
    fn determinant_with_fractions() {
        let h = FieldSpec::Rationals;
        let m = ExactMatrix::from_rows(
            h,
            vec![
                vec![h.fraction(1, 2), h.fraction(1, 3)],
                vec![h.fraction(1, 4), h.fraction(1, 5)],
            ],
        )
        .unwrap();
        // 1/10 - 1/12 = 1/60
        assert_eq!(m.determinant().unwrap(), h.fraction(1, 60));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = ExactMatrix::from_ints(q(), &[[2, 1], [7, 4]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), ExactMatrix::identity(q(), 2));
        assert!(ExactMatrix::from_ints(q(), &[[1, 2], [2, 4]]).inverse().is_none());
    }

    #[test]
    fn mixed_field_rows_rejected() {
        let f = FieldSpec::prime(5).unwrap();
        let rows = vec![vec![q().one(), f.one()]];
        assert_eq!(ExactMatrix::from_rows(q(), rows), Err(Error::FieldMismatch));
    }
}
