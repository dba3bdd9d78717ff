use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use super::field::Field;
use super::matrix::{ExactMatrix, Matrix};
use crate::error::{Error, Result};
use crate::exactnum::{Poly, Rational};

/// Polynomial in `x` with integer coefficients, ascending degree, trimmed.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_ints(&[1])
    }

    pub fn x() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coeff().is_some_and(One::is_one)
    }

    /// Multiply by `x`.
    pub fn shift(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = Vec::with_capacity(self.coeffs.len() + 1);
        c.push(BigInt::zero());
        c.extend(self.coeffs.iter().cloned());
        IntPolynomial { coeffs: c }
    }

    pub fn eval_int(&self, at: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn eval(&self, at: &Rational) -> Rational {
        self.coeffs
            .iter()
            .rev()
            .fold(<Rational as Zero>::zero(), |acc, c| acc * at + c)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Rational-coefficient copy.
    pub fn to_poly(&self) -> Poly {
        Poly::new(self.coeffs.iter().cloned().map(Rational::from_integer).collect())
    }

    /// Horner evaluation at a square matrix.
    pub fn eval_matrix<F: Field>(&self, m: &Matrix<F>) -> Result<Matrix<F>> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        let n = m.rows();
        let id = Matrix::<F>::identity(n);
        let mut acc = Matrix::<F>::zeros(n, n);
        for c in self.coeffs.iter().rev() {
            acc = acc
                .mul(m)
                .add(&id.scale(&F::from_rational(Rational::from_integer(c.clone()))));
        }
        Ok(acc)
    }

    /// Quotient by a monic divisor, asserting the remainder vanishes.
    fn div_exact_monic(&self, d: &IntPolynomial) -> IntPolynomial {
        debug_assert!(d.is_monic());
        let dd = d.degree().expect("zero divisor");
        let Some(sd) = self.degree() else {
            return Self::zero();
        };
        if sd < dd {
            debug_assert!(self.is_zero(), "inexact division");
            return Self::zero();
        }
        let mut rem = self.coeffs.clone();
        let mut q = vec![BigInt::zero(); sd - dd + 1];
        for k in (0..=sd - dd).rev() {
            let c = rem[k + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            q[k] = c;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact division");
        Self::new(q)
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let z = BigInt::zero();
        IntPolynomial::new(
            (0..n)
                .map(|i| self.coeffs.get(i).unwrap_or(&z) + rhs.coeffs.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        self + &(-rhs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut c = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            first = false;
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}*x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}*x^{i}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.coeffs
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| s.parse::<BigInt>().map_err(de::Error::custom))
            .collect::<std::result::Result<Vec<_>, _>>()
            .map(IntPolynomial::new)
    }
}

/// Characteristic polynomial `det(xI - E)` of a square integer matrix.
///
/// Fraction-free elimination over `Z[x]`. Every pivot is a leading principal
/// minor of `xI - E`, hence monic, so no row exchanges are needed and every
/// division is exact.
pub fn char_poly(e: &ExactMatrix) -> Result<IntPolynomial> {
    if !e.is_square() {
        return Err(Error::NotSquare {
            rows: e.rows(),
            cols: e.cols(),
        });
    }
    let ints = e.to_integer_rows()?;
    Ok(char_poly_int(&ints))
}

pub(crate) fn char_poly_int(e: &[Vec<BigInt>]) -> IntPolynomial {
    let n = e.len();
    if n == 0 {
        return IntPolynomial::one();
    }
    let mut m: Vec<Vec<IntPolynomial>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    let c = IntPolynomial::new(vec![-e[i][j].clone()]);
                    if i == j {
                        &c + &IntPolynomial::x()
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect();
    let mut prev = IntPolynomial::one();
    for k in 0..n - 1 {
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[k][k] * &m[i][j]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact_monic(&prev);
            }
        }
        prev = m[k][k].clone();
    }
    m[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cp(rows: &[&[i64]]) -> IntPolynomial {
        char_poly(&ExactMatrix::from_ints(rows)).unwrap()
    }

    // Cofactor expansion over Z[x], used as an independent oracle.
    fn cofactor_det(m: &[Vec<IntPolynomial>]) -> IntPolynomial {
        let n = m.len();
        if n == 1 {
            return m[0][0].clone();
        }
        let mut acc = IntPolynomial::zero();
        for j in 0..n {
            let minor: Vec<Vec<IntPolynomial>> = m[1..]
                .iter()
                .map(|r| r.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect())
                .collect();
            let term = &m[0][j] * &cofactor_det(&minor);
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        acc
    }

    fn oracle(rows: &[&[i64]]) -> IntPolynomial {
        let n = rows.len();
        let m: Vec<Vec<IntPolynomial>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = IntPolynomial::from_ints(&[-rows[i][j]]);
                        if i == j {
                            &c + &IntPolynomial::x()
                        } else {
                            c
                        }
                    })
                    .collect()
            })
            .collect();
        cofactor_det(&m)
    }

    #[test]
    fn small_char_polys() {
        assert_eq!(cp(&[&[2]]), IntPolynomial::from_ints(&[-2, 1]));
        let swap: &[&[i64]] = &[&[0, 1], &[1, 0]];
        assert_eq!(cp(swap), IntPolynomial::from_ints(&[-1, 0, 1]));
        assert_eq!(cp(swap), oracle(swap));
        let path: &[&[i64]] = &[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]];
        assert_eq!(cp(path), IntPolynomial::from_ints(&[0, -2, 0, 1]));
        assert_eq!(cp(path), oracle(path));
    }

    #[test]
    fn bareiss_matches_cofactor_oracle() {
        let rows: &[&[i64]] = &[&[1, 2, 0, 3], &[2, 0, 1, 1], &[0, 1, 4, 2], &[3, 1, 2, 0]];
        assert_eq!(cp(rows), oracle(rows));
        let rows: &[&[i64]] = &[&[0, 0, 5], &[0, 0, 0], &[5, 0, 0]];
        assert_eq!(cp(rows), oracle(rows));
    }

    #[test]
    fn rejects_non_square_and_fractions() {
        let m = ExactMatrix::from_ints(&[&[1, 2]]);
        assert!(matches!(char_poly(&m), Err(Error::NotSquare { .. })));
        let m = ExactMatrix::from_rows(vec![vec![crate::RatFun::from_rational(
            crate::exactnum::ratio(1, 2),
        )]])
        .unwrap();
        assert_eq!(char_poly(&m), Err(Error::NotInteger { row: 0, col: 0 }));
    }

    #[test]
    fn display_and_json() {
        let p = IntPolynomial::from_ints(&[1, 0, -3, 0, 1]);
        assert_eq!(p.to_string(), "x^4 - 3*x^2 + 1");
        assert_eq!(IntPolynomial::from_ints(&[0, -2, 0, 1]).to_string(), "x^3 - 2*x");
        assert_eq!(serde_json::to_string(&p).unwrap(), r#"["1","0","-3","0","1"]"#);
        let back: IntPolynomial = serde_json::from_str(r#"["1","0","-3","0","1"]"#).unwrap();
        assert_eq!(back, p);
    }
}
