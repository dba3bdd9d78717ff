//! Dimension vectors `(t | s)` under `X = [[E, -I], [I, 0]]`, the
//! orthogonality defect, Perron projections and the existence verdict.

mod perron;
mod verdict;

pub use perron::{
    check_quadratic_constraint, coefficient_vector_c, next_beta, perron_projection,
    rational_spectrum, EigenCoefficient, PerronProjection,
};
pub use verdict::{extfinite_verdict, Conclusion, FamilyTag, Verdict};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::chebyshev::{cheb_matrix_seq, x_matrix};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::linalg::{ExactMatrix, RationalMatrix};

/// Default number of steps for defect and orbit checks.
pub const DEFAULT_DEPTH: usize = 10;

/// Top multiplicities `t` and socle multiplicities `s`, one entry per vertex.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct DimVector {
    pub t: Vec<i64>,
    pub s: Vec<i64>,
}

impl DimVector {
    pub fn new(t: Vec<i64>, s: Vec<i64>) -> Self {
        DimVector { t, s }
    }

    /// Checked constructor: equal lengths, at least one vertex.
    pub fn try_new(t: Vec<i64>, s: Vec<i64>) -> Result<Self> {
        if t.len() != s.len() || t.is_empty() {
            return Err(Error::DimensionMismatch(format!(
                "t has {} entries, s has {}",
                t.len(),
                s.len()
            )));
        }
        Ok(DimVector { t, s })
    }

    pub fn n(&self) -> usize {
        self.t.len()
    }

    pub fn is_zero(&self) -> bool {
        self.t.iter().chain(&self.s).all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.t.iter().chain(&self.s).all(|&x| x >= 0)
    }

    /// Total dimension `sum t + sum s` of a module with this vector and
    /// `soc = rad`.
    pub fn total(&self) -> i64 {
        self.t.iter().chain(&self.s).sum()
    }

    /// `(t | s)` as a rational column.
    pub fn column(&self) -> Vec<Rational> {
        self.t
            .iter()
            .chain(&self.s)
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }
}

impl fmt::Display for DimVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "({} | {})", join(&self.t), join(&self.s))
    }
}

/// `[[E, -I], [I, 0]]`.
pub fn build_x(e: &ExactMatrix) -> Result<ExactMatrix> {
    x_matrix(e)
}

fn int_matrix(e: &ExactMatrix) -> Result<Vec<Vec<i64>>> {
    if !e.is_square() {
        return Err(Error::NotSquare {
            rows: e.rows(),
            cols: e.cols(),
        });
    }
    e.to_integer_rows()?
        .into_iter()
        .map(|r| {
            r.into_iter()
                .map(|x| i64::try_from(x).map_err(|_| Error::Overflow))
                .collect()
        })
        .collect()
}

fn check_len(e_rows: usize, v: &DimVector) -> Result<()> {
    if v.t.len() != e_rows || v.s.len() != e_rows {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector {v} does not fit a {e_rows}x{e_rows} matrix"
        )));
    }
    Ok(())
}

/// `X (t | s) = (E t - s | t)` in checked integer arithmetic.
pub fn apply_x(e: &ExactMatrix, v: &DimVector) -> Result<DimVector> {
    let ints = int_matrix(e)?;
    check_len(ints.len(), v)?;
    step(&ints, v)
}

fn step(e: &[Vec<i64>], v: &DimVector) -> Result<DimVector> {
    let mut t = Vec::with_capacity(v.n());
    for (row, s) in e.iter().zip(&v.s) {
        let mut acc: i64 = 0;
        for (a, b) in row.iter().zip(&v.t) {
            acc = a
                .checked_mul(*b)
                .and_then(|p| acc.checked_add(p))
                .ok_or(Error::Overflow)?;
        }
        t.push(acc.checked_sub(*s).ok_or(Error::Overflow)?);
    }
    Ok(DimVector::new(t, v.t.clone()))
}

/// `v0, X v0, ..., X^k v0`; stops with an error at the first iterate with a
/// negative component.
pub fn iterate_dimvec(e: &ExactMatrix, v0: &DimVector, k: usize) -> Result<Vec<DimVector>> {
    let ints = int_matrix(e)?;
    check_len(ints.len(), v0)?;
    if !v0.is_nonnegative() {
        return Err(Error::LeftModuleCone { step: 0 });
    }
    let mut out = vec![v0.clone()];
    for m in 1..=k {
        let next = step(&ints, out.last().unwrap())?;
        if !next.is_nonnegative() {
            return Err(Error::LeftModuleCone { step: m });
        }
        out.push(next);
    }
    Ok(out)
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn ints(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| Rational::from_integer(x.into())).collect()
}

/// `(s | -t) . X^{k+1} (t | s)`, by applying `X` to the column `k + 1` times.
pub fn orthogonality_defect(e: &ExactMatrix, v: &DimVector, k: usize) -> Result<Rational> {
    let em = e.to_rational()?;
    if !em.is_square() {
        return Err(Error::NotSquare {
            rows: em.rows(),
            cols: em.cols(),
        });
    }
    check_len(em.rows(), v)?;
    let (mut t, mut s) = (ints(&v.t), ints(&v.s));
    for _ in 0..=k {
        let et = em.mul_vec(&t);
        let nt: Vec<Rational> = et.iter().zip(&s).map(|(a, b)| a - b).collect();
        s = std::mem::replace(&mut t, nt);
    }
    Ok(dot(&ints(&v.s), &t) - dot(&ints(&v.t), &s))
}

/// `s E f_k(E) t - t f_k(E) t - s f_k(E) s`.
pub fn expand_3k(e: &ExactMatrix, v: &DimVector, k: usize) -> Result<Rational> {
    if k == 0 {
        return Err(Error::InvalidInput("expansion needs k >= 1".into()));
    }
    let em: RationalMatrix = e.to_rational()?;
    let seq = cheb_matrix_seq(e, k)?;
    check_len(em.rows(), v)?;
    let fk = seq.matrices[k].to_rational()?;
    let efk = em.mul(&fk);
    let (t, s) = (ints(&v.t), ints(&v.s));
    Ok(dot(&s, &efk.mul_vec(&t)) - dot(&t, &fk.mul_vec(&t)) - dot(&s, &fk.mul_vec(&s)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn dv(t: &[i64], s: &[i64]) -> DimVector {
        DimVector::new(t.to_vec(), s.to_vec())
    }

    #[test]
    fn x_matrix_literal() {
        let e = ExactMatrix::from_ints(&[&[2]]);
        assert_eq!(build_x(&e).unwrap(), ExactMatrix::from_ints(&[&[2, -1], &[1, 0]]));
        let e = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            build_x(&e).unwrap(),
            ExactMatrix::from_ints(&[&[0, 1, -1, 0], &[1, 0, 0, -1], &[1, 0, 0, 0], &[0, 1, 0, 0]])
        );
    }

    #[test]
    fn orbits() {
        let two = ExactMatrix::from_ints(&[&[2]]);
        let o = iterate_dimvec(&two, &dv(&[1], &[1]), 5).unwrap();
        assert!(o.iter().all(|v| *v == dv(&[1], &[1])));
        let o = iterate_dimvec(&two, &dv(&[2], &[1]), 3).unwrap();
        assert_eq!(o, vec![dv(&[2], &[1]), dv(&[3], &[2]), dv(&[4], &[3]), dv(&[5], &[4])]);
        let e = ExactMatrix::from_ints(&[&[0, 2], &[2, 0]]);
        let o = iterate_dimvec(&e, &dv(&[1, 1], &[1, 1]), 4).unwrap();
        assert!(o.iter().all(|v| *v == dv(&[1, 1], &[1, 1])));
    }

    #[test]
    fn leaving_the_cone() {
        let one = ExactMatrix::from_ints(&[&[1]]);
        // (1|1) -> (0|1) -> (-1|0)
        assert_eq!(
            iterate_dimvec(&one, &dv(&[1], &[1]), 3),
            Err(Error::LeftModuleCone { step: 2 })
        );
        let big = ExactMatrix::from_ints(&[&[i64::MAX]]);
        assert_eq!(iterate_dimvec(&big, &dv(&[2], &[0]), 1), Err(Error::Overflow));
        assert!(iterate_dimvec(&one, &dv(&[1, 1], &[1, 1]), 1).is_err());
    }

    #[test]
    fn defects() {
        let two = ExactMatrix::from_ints(&[&[2]]);
        for k in 0..=10 {
            assert_eq!(orthogonality_defect(&two, &dv(&[1], &[1]), k).unwrap(), rational(0));
        }
        let three = ExactMatrix::from_ints(&[&[3]]);
        // X^2 (1,1) = (5, 2); (1, -1).(5, 2) = 3
        let d = orthogonality_defect(&three, &dv(&[1], &[1]), 1).unwrap();
        assert_eq!(d, rational(3));
        assert_eq!(expand_3k(&three, &dv(&[1], &[1]), 1).unwrap(), d);
        assert_eq!(expand_3k(&two, &dv(&[1], &[1]), 3).unwrap(), rational(0));
        assert!(expand_3k(&two, &dv(&[1], &[1]), 0).is_err());
    }

    #[test]
    fn json_shape() {
        let v = dv(&[1, 2], &[0, 1]);
        let s = serde_json::to_string(&v).unwrap();
        assert_eq!(s, r#"{"t":[1,2],"s":[0,1]}"#);
        assert_eq!(serde_json::from_str::<DimVector>(&s).unwrap(), v);
        assert_eq!(v.to_string(), "(1,2 | 0,1)");
    }
}
