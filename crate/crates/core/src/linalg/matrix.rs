use std::fmt;

use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::field::Field;
use crate::error::{Error, Result};
use crate::exactnum::{scalar_repr::Scalar, RatFun, Rational};

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Debug)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<F>,
}

/// Matrix over the field of rational functions in `q`.
pub type ExactMatrix = Matrix<RatFun>;
/// Matrix over the rationals.
pub type RationalMatrix = Matrix<Rational>;

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, entries: Vec<F>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(Matrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![F::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { F::one() } else { F::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    /// Build from a list of rows. An empty list gives a 0x0 matrix.
    pub fn from_rows(rows: Vec<Vec<F>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Matrix whose columns are the given vectors, each of length `len`.
    pub fn from_columns(len: usize, cols: &[Vec<F>]) -> Self {
        Self::from_fn(len, cols.len(), |i, j| cols[j][i].clone())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[F] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.entries[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<F> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(F::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * rhs.cols + j;
                    out.entries[idx] = out.entries[idx].add(&a.mul(b));
                }
            }
        }
        Ok(out)
    }

    /// Matrix product; panics on shape mismatch.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.checked_mul(rhs).expect("matrix shape mismatch")
    }

    fn zip(&self, rhs: &Self, f: impl Fn(&F, &F) -> F) -> Result<Self> {
        if (self.rows, self.cols) != (rhs.rows, rhs.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, F::add)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip(rhs, F::sub)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.checked_add(rhs).expect("matrix shape mismatch")
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.checked_sub(rhs).expect("matrix shape mismatch")
    }

    pub fn scale(&self, c: &F) -> Self {
        self.map(|a| a.mul(c))
    }

    pub fn neg(&self) -> Self {
        self.map(F::neg)
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add(&a.mul(b)))
            })
            .collect()
    }

    /// `k`-th power of a square matrix by repeated multiplication.
    pub fn pow(&self, k: usize) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..k {
            acc = acc.mul(self);
        }
        Ok(acc)
    }

    /// The 2x2 block matrix `[[a, b], [c, d]]`.
    pub fn block2x2(a: &Self, b: &Self, c: &Self, d: &Self) -> Result<Self> {
        if a.rows != b.rows || c.rows != d.rows || a.cols != c.cols || b.cols != d.cols {
            return Err(Error::DimensionMismatch("incompatible blocks".into()));
        }
        let (r, c0) = (a.rows + c.rows, a.cols + b.cols);
        Ok(Self::from_fn(r, c0, |i, j| {
            let (blk, ii, jj) = match (i < a.rows, j < a.cols) {
                (true, true) => (a, i, j),
                (true, false) => (b, i, j - a.cols),
                (false, true) => (c, i - a.rows, j),
                (false, false) => (d, i - a.rows, j - a.cols),
            };
            blk.get(ii, jj).clone()
        }))
    }

    pub fn block_diagonal(blocks: &[&Self]) -> Self {
        let r: usize = blocks.iter().map(|b| b.rows).sum();
        let c: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(r, c);
        let (mut ro, mut co) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    out.set(ro + i, co + j, b.get(i, j).clone());
                }
            }
            ro += b.rows;
            co += b.cols;
        }
        out
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]).clone())
    }

    /// Reduced row echelon form and pivot columns.
    ///
    /// Pivots are chosen left to right; within a column the topmost nonzero
    /// row is used, so the result is deterministic.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut rows = self.to_rows();
        let pivots = rref_in_place(&mut rows, self.cols);
        let m = Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: rows.into_iter().flatten().collect(),
        };
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null-space basis in echelon form: vector `k` has a one at the `k`-th
    /// free column and zeros at every other free column.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        nullspace_with_free(self).0
    }

    /// Basis of the right null space, each vector scaled so its first
    /// nonzero entry is one. Empty iff the matrix is injective.
    pub fn kernel_basis(&self) -> Vec<Vec<F>> {
        self.nullspace()
            .into_iter()
            .map(|v| {
                let lead = v.iter().find(|x| !x.is_zero()).unwrap().inv();
                v.iter().map(|x| x.mul(&lead)).collect()
            })
            .collect()
    }

    /// Some solution of `self * x = b`, or `None` when inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut rows: Vec<Vec<F>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let pivots = rref_in_place(&mut rows, self.cols + 1);
        if pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        for (r, &p) in pivots.iter().enumerate() {
            x[p] = rows[r][self.cols].clone();
        }
        Ok(Some(x))
    }

    pub fn det(&self) -> Result<F> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut rows = self.to_rows();
        let mut det = F::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !rows[r][c].is_zero()) else {
                return Ok(F::zero());
            };
            if p != c {
                rows.swap(p, c);
                det = det.neg();
            }
            let piv = rows[c][c].clone();
            det = det.mul(&piv);
            let inv = piv.inv();
            for r in c + 1..n {
                if rows[r][c].is_zero() {
                    continue;
                }
                let f = rows[r][c].mul(&inv);
                for k in c..n {
                    let t = f.mul(&rows[c][k]);
                    rows[r][k] = rows[r][k].sub(&t);
                }
            }
        }
        Ok(det)
    }
}

/// Null-space basis together with the free columns it is keyed on.
pub(crate) fn nullspace_with_free<F: Field>(m: &Matrix<F>) -> (Vec<Vec<F>>, Vec<usize>) {
    let (r, pivots) = m.rref();
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    let basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![F::zero(); m.cols];
            v[f] = F::one();
            for (row, &p) in pivots.iter().enumerate() {
                v[p] = r.get(row, f).neg();
            }
            v
        })
        .collect();
    (basis, free)
}

fn rref_in_place<F: Field>(rows: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let n = rows.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == n {
            break;
        }
        let Some(p) = (r..n).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].inv();
        if !inv.is_one() {
            for k in c..cols {
                if !rows[r][k].is_zero() {
                    rows[r][k] = rows[r][k].mul(&inv);
                }
            }
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for k in c..cols {
                if pivot_row[k].is_zero() {
                    continue;
                }
                row[k] = row[k].sub(&f.mul(&pivot_row[k]));
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Echelon basis of the span of `vectors` (all of length `len`).
///
/// Returns the nonzero rows of the reduced echelon form and their pivot
/// positions. The coordinates of any vector `w` in the span with respect to
/// this basis are simply `w[pivot_k]`.
pub fn echelon_span<F: Field>(vectors: &[Vec<F>], len: usize) -> (Vec<Vec<F>>, Vec<usize>) {
    if vectors.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut rows = vectors.to_vec();
    let pivots = rref_in_place(&mut rows, len);
    rows.truncate(pivots.len());
    (rows, pivots)
}

pub fn rank_of<F: Field>(vectors: &[Vec<F>], len: usize) -> usize {
    echelon_span(vectors, len).1.len()
}

impl ExactMatrix {
    /// Integer entries, or an error naming the first non-integer entry.
    pub fn to_integer_rows(&self) -> Result<Vec<Vec<num_bigint::BigInt>>> {
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        self.get(i, j)
                            .as_rational()
                            .filter(|r| r.is_integer())
                            .map(|r| r.to_integer())
                            .ok_or(Error::NotInteger { row: i, col: j })
                    })
                    .collect()
            })
            .collect()
    }

    pub fn to_rational(&self) -> Result<RationalMatrix> {
        let entries = self
            .entries
            .iter()
            .enumerate()
            .map(|(k, e)| {
                e.as_rational().ok_or(Error::InvalidInput(format!(
                    "entry ({}, {}) is not a rational constant",
                    k / self.cols,
                    k % self.cols
                )))
            })
            .collect::<Result<Vec<_>>>()?;
        Matrix::new(self.rows, self.cols, entries)
    }

    pub fn from_rational(m: &RationalMatrix) -> Self {
        m.map(|r| RatFun::from_rational(r.clone()))
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| RatFun::from_int(v)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }
}

impl RationalMatrix {
    pub fn from_ints(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

/// Wire form `{"rows": n, "cols": m, "entries": [[...], ...]}`.
#[derive(Serialize, Deserialize)]
struct MatrixWire {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<Scalar>>,
}

impl Serialize for ExactMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixWire {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows)
                .map(|i| self.row(i).iter().cloned().map(Scalar).collect())
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for ExactMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = MatrixWire::deserialize(d)?;
        if w.entries.len() != w.rows || w.entries.iter().any(|r| r.len() != w.cols) {
            return Err(de::Error::custom(format!(
                "entries do not form a {}x{} matrix",
                w.rows, w.cols
            )));
        }
        let entries = w.entries.into_iter().flatten().map(|s| s.0).collect();
        Matrix::new(w.rows, w.cols, entries).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rational, ratio};

    fn rm(rows: &[&[i64]]) -> RationalMatrix {
        RationalMatrix::from_ints(rows)
    }

    #[test]
    fn kernel_of_identity_is_empty() {
        assert!(rm(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]).kernel_basis().is_empty());
    }

    #[test]
    fn kernel_of_rank_one_block() {
        let m = rm(&[&[1, 1], &[1, 1]]);
        assert_eq!(m.kernel_basis(), vec![vec![rational(1), rational(-1)]]);
    }

    #[test]
    fn kernel_over_rational_functions() {
        let m = ExactMatrix::from_rows(vec![vec![RatFun::q(), RatFun::one()]]).unwrap();
        let k = m.kernel_basis();
        assert_eq!(k, vec![vec![RatFun::one(), -&RatFun::q()]]);
        assert!(m.mul_vec(&k[0]).iter().all(RatFun::is_zero));
    }

    #[test]
    fn solve_examples() {
        let b = vec![rational(3), ratio(-1, 2)];
        assert_eq!(rm(&[&[1, 0], &[0, 1]]).solve(&b).unwrap(), Some(b.clone()));
        assert_eq!(rm(&[&[2]]).solve(&[rational(1)]).unwrap(), Some(vec![ratio(1, 2)]));
        assert_eq!(
            rm(&[&[1, 1], &[2, 2]]).solve(&[rational(1), rational(3)]).unwrap(),
            None
        );
        assert!(matches!(
            rm(&[&[1, 1]]).solve(&[rational(1), rational(1)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn determinant_with_row_swap() {
        assert_eq!(rm(&[&[0, 1], &[1, 0]]).det().unwrap(), rational(-1));
        assert_eq!(rm(&[&[1, 2], &[2, 4]]).det().unwrap(), rational(0));
    }

    #[test]
    fn echelon_span_coordinates_are_pivot_entries() {
        let vs = vec![
            vec![rational(1), rational(2), rational(3)],
            vec![rational(2), rational(4), rational(7)],
        ];
        let (basis, pivots) = echelon_span(&vs, 3);
        assert_eq!(pivots, vec![0, 2]);
        let w = vec![rational(3), rational(6), rational(10)];
        let rebuilt: Vec<Rational> = (0..3)
            .map(|i| basis[0][i].clone() * &w[pivots[0]] + basis[1][i].clone() * &w[pivots[1]])
            .collect();
        assert_eq!(rebuilt, w);
    }

    #[test]
    fn json_wire_format() {
        let m = ExactMatrix::from_rows(vec![
            vec![RatFun::from_int(2), RatFun::q()],
            vec![RatFun::zero(), RatFun::from_rational(ratio(1, 3))],
        ])
        .unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(
            json,
            r#"{"rows":2,"cols":2,"entries":[["2",{"num":["0","1"],"den":["1"]}],["0","1/3"]]}"#
        );
        let back: ExactMatrix = serde_json::from_str(&json).unwrap();
        assert_eq!(back, m);
        let loose: ExactMatrix =
            serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[[1,"q^-1"]]}"#).unwrap();
        assert_eq!(loose.get(0, 1), &RatFun::q_pow(-1));
        assert!(serde_json::from_str::<ExactMatrix>(r#"{"rows":2,"cols":1,"entries":[[1]]}"#)
            .is_err());
    }
}
