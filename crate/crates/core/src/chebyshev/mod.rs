//! The polynomials `f_0 = 1`, `f_1 = x`, `f_k = x f_{k-1} - f_{k-2}`, their
//! values at scalars and at a matrix `E`, and the block form of powers of
//! `X = [[E, -I], [I, 0]]`.
//!
//! Running the recurrence backwards gives `f_{-1} = 0` and `f_{-2} = -1`; with
//! these conventions `X^k = [[f_k, -f_{k-1}], [f_{k-1}, -f_{k-2}]]` for all
//! `k >= 0`.

mod select;

pub use select::{default_search_bound, select_nonsingular, select_nonsingular_inductive, Selection};

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactnum::{format_rational, parse_rational, Rational};
use crate::linalg::{ExactMatrix, IntPolynomial, Matrix};

/// `f_k` as an integer polynomial.
pub fn cheb_poly(k: usize) -> IntPolynomial {
    let mut prev = IntPolynomial::zero();
    let mut cur = IntPolynomial::one();
    for _ in 0..k {
        let next = &cur.shift() - &prev;
        prev = cur;
        cur = next;
    }
    cur
}

/// `f_k(x)` for `k` in `-2..`; negative indices use the backward conventions.
pub fn cheb_eval(k: i64, x: &Rational) -> Rational {
    match k {
        i64::MIN..=-3 => panic!("index below -2"),
        -2 => -Rational::from_integer(1.into()),
        -1 => Rational::zero(),
        _ => cheb_values(x, k as usize).pop().unwrap(),
    }
}

/// `f_0(x), ..., f_upto(x)`.
pub fn cheb_values(x: &Rational, upto: usize) -> Vec<Rational> {
    let mut out = Vec::with_capacity(upto + 1);
    let mut prev = Rational::zero();
    let mut cur = Rational::from_integer(1.into());
    for _ in 0..=upto {
        out.push(cur.clone());
        let next = x * &cur - &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    out
}

/// `f_0(E), ..., f_K(E)` computed by the matrix recurrence.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct ChebSequence {
    pub base: ExactMatrix,
    pub matrices: Vec<ExactMatrix>,
}

impl ChebSequence {
    pub fn depth(&self) -> usize {
        self.matrices.len() - 1
    }

    /// `f_k(E)` for `k >= -2`.
    pub fn get(&self, k: i64) -> ExactMatrix {
        let n = self.base.rows();
        match k {
            -2 => Matrix::identity(n).neg(),
            -1 => Matrix::zeros(n, n),
            _ => self.matrices[k as usize].clone(),
        }
    }
}

pub fn cheb_matrix_seq(e: &ExactMatrix, depth: usize) -> Result<ChebSequence> {
    if !e.is_square() {
        return Err(Error::NotSquare {
            rows: e.rows(),
            cols: e.cols(),
        });
    }
    let n = e.rows();
    let mut matrices = vec![Matrix::identity(n)];
    let mut prev = Matrix::zeros(n, n);
    for _ in 0..depth {
        let cur = matrices.last().unwrap();
        let next = e.mul(cur).sub(&prev);
        prev = cur.clone();
        matrices.push(next);
    }
    Ok(ChebSequence {
        base: e.clone(),
        matrices,
    })
}

/// `X = [[E, -I], [I, 0]]`.
pub fn x_matrix(e: &ExactMatrix) -> Result<ExactMatrix> {
    if !e.is_square() {
        return Err(Error::NotSquare {
            rows: e.rows(),
            cols: e.cols(),
        });
    }
    let n = e.rows();
    let id = Matrix::identity(n);
    Matrix::block2x2(e, &id.neg(), &id, &Matrix::zeros(n, n))
}

/// The four blocks of `X^k`.
#[derive(Clone, PartialEq, Debug, Serialize, Deserialize)]
pub struct XPowerBlocks {
    pub k: usize,
    pub top_left: ExactMatrix,
    pub top_right: ExactMatrix,
    pub bottom_left: ExactMatrix,
    pub bottom_right: ExactMatrix,
}

impl XPowerBlocks {
    pub fn to_matrix(&self) -> ExactMatrix {
        Matrix::block2x2(
            &self.top_left,
            &self.top_right,
            &self.bottom_left,
            &self.bottom_right,
        )
        .expect("blocks share a size")
    }
}

pub fn x_power_blocks(e: &ExactMatrix, k: usize) -> Result<XPowerBlocks> {
    let seq = cheb_matrix_seq(e, k)?;
    let k1 = k as i64;
    Ok(XPowerBlocks {
        k,
        top_left: seq.get(k1),
        top_right: seq.get(k1 - 1).neg(),
        bottom_left: seq.get(k1 - 1),
        bottom_right: seq.get(k1 - 2).neg(),
    })
}

/// Eventual period of `(f_m(E))`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Periodicity {
    pub period: usize,
    pub preperiod: usize,
}

/// Smallest `p <= bound` with `f_{m+p}(E) = f_m(E)` for all `m` past some
/// preperiod, or `None`.
///
/// The pair `(f_m, f_{m+1})` determines the rest of the sequence, so the
/// first repeated pair gives both the preperiod and the minimal period.
pub fn detect_periodicity(e: &ExactMatrix, bound: usize) -> Result<Option<Periodicity>> {
    let seq = cheb_matrix_seq(e, 2 * bound + 2)?;
    let m = &seq.matrices;
    for j in 1..=2 * bound {
        for i in j.saturating_sub(bound)..j {
            if m[i] == m[j] && m[i + 1] == m[j + 1] {
                return Ok(Some(Periodicity {
                    period: j - i,
                    preperiod: i,
                }));
            }
        }
    }
    Ok(None)
}

/// Row `m` is `(f_m(mu_1), ..., f_m(mu_r))` for `m` in `m_start..=m_end`.
pub fn eigenvalue_row_table(
    eigvals: &[Rational],
    m_start: usize,
    m_end: usize,
) -> Result<Vec<Vec<Rational>>> {
    if m_start > m_end {
        return Err(Error::InvalidInput(format!(
            "row range {m_start}..{m_end} is empty"
        )));
    }
    let cols: Vec<Vec<Rational>> = eigvals.iter().map(|mu| cheb_values(mu, m_end)).collect();
    Ok((m_start..=m_end)
        .map(|m| cols.iter().map(|c| c[m].clone()).collect())
        .collect())
}

/// One row per line, entries tab-separated.
pub fn format_row_table(rows: &[Vec<Rational>]) -> String {
    let mut out = String::new();
    for r in rows {
        let line: Vec<String> = r.iter().map(format_rational).collect();
        out.push_str(&line.join("\t"));
        out.push('\n');
    }
    out
}

pub fn parse_row_table(text: &str) -> Result<Vec<Vec<Rational>>> {
    text.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split('\t').map(parse_rational).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;
    use crate::RatFun;

    fn ints(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
        rows.iter().map(|r| r.iter().map(|&v| rational(v)).collect()).collect()
    }

    #[test]
    fn low_degree_polynomials() {
        assert_eq!(cheb_poly(0), IntPolynomial::one());
        assert_eq!(cheb_poly(1), IntPolynomial::x());
        assert_eq!(cheb_poly(4), IntPolynomial::from_ints(&[1, 0, -3, 0, 1]));
        assert_eq!(cheb_poly(4).eval(&rational(2)), rational(5));
    }

    #[test]
    fn values_at_two_count_up() {
        let v = cheb_values(&rational(2), 10);
        for (k, x) in v.iter().enumerate() {
            assert_eq!(*x, rational(k as i64 + 1));
        }
        assert_eq!(cheb_eval(-1, &rational(5)), rational(0));
        assert_eq!(cheb_eval(-2, &rational(5)), rational(-1));
    }

    #[test]
    fn matrix_sequences() {
        let swap = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        let s = cheb_matrix_seq(&swap, 2).unwrap();
        assert!(s.matrices[2].is_zero());
        let s = cheb_matrix_seq(&swap, 1).unwrap();
        assert_eq!(s.matrices, vec![Matrix::identity(2), swap.clone()]);
        let two = ExactMatrix::from_ints(&[&[2]]);
        let s = cheb_matrix_seq(&two, 3).unwrap();
        let got: Vec<RatFun> = s.matrices.iter().map(|m| m.get(0, 0).clone()).collect();
        assert_eq!(got, (1..=4).map(RatFun::from_int).collect::<Vec<_>>());
        assert!(cheb_matrix_seq(&ExactMatrix::from_ints(&[&[1, 2]]), 2).is_err());
    }

    #[test]
    fn x_power_blocks_small_cases() {
        let e = ExactMatrix::from_ints(&[&[2]]);
        let b = x_power_blocks(&e, 1).unwrap();
        assert_eq!(b.to_matrix(), x_matrix(&e).unwrap());
        let b = x_power_blocks(&e, 2).unwrap();
        assert_eq!(b.to_matrix(), ExactMatrix::from_ints(&[&[3, -2], &[2, -1]]));
        let x = ExactMatrix::from_ints(&[&[2, -1], &[1, 0]]);
        assert_eq!(x.mul(&x), b.to_matrix());
        assert_eq!(x_power_blocks(&e, 0).unwrap().to_matrix(), Matrix::identity(2));
    }

    #[test]
    fn periodicity_examples() {
        let swap = ExactMatrix::from_ints(&[&[0, 1], &[1, 0]]);
        assert_eq!(
            detect_periodicity(&swap, 20).unwrap(),
            Some(Periodicity { period: 6, preperiod: 0 })
        );
        assert_eq!(detect_periodicity(&ExactMatrix::from_ints(&[&[2]]), 50).unwrap(), None);
        assert_eq!(
            detect_periodicity(&ExactMatrix::from_ints(&[&[0]]), 10).unwrap(),
            Some(Periodicity { period: 4, preperiod: 0 })
        );
        assert_eq!(detect_periodicity(&swap, 5).unwrap(), None);
    }

    #[test]
    fn row_tables() {
        let t = eigenvalue_row_table(&[rational(1), rational(-1)], 1, 6).unwrap();
        assert_eq!(
            t,
            ints(&[&[1, -1], &[0, 0], &[-1, 1], &[-1, -1], &[0, 0], &[1, 1]])
        );
        let t = eigenvalue_row_table(&[rational(2)], 0, 3).unwrap();
        assert_eq!(t, ints(&[&[1], &[2], &[3], &[4]]));
        let t = eigenvalue_row_table(&[rational(0)], 0, 3).unwrap();
        assert_eq!(t, ints(&[&[1], &[0], &[-1], &[0]]));
        assert!(eigenvalue_row_table(&[rational(0)], 3, 2).is_err());
    }

    #[test]
    fn row_table_text_round_trip() {
        let t = eigenvalue_row_table(&[rational(1), rational(-1)], 1, 3).unwrap();
        let s = format_row_table(&t);
        assert_eq!(s, "1\t-1\n0\t0\n-1\t1\n");
        assert_eq!(parse_row_table(&s).unwrap(), t);
    }
}
