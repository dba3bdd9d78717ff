use num_traits::{Signed, Zero};

use super::intpoly::IntPolynomial;
use crate::error::{Error, Result};
use crate::exactnum::{Poly, Rational};

/// Sturm chain of the square-free part of a polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence {
    chain: Vec<Poly>,
}

impl SturmSequence {
    pub fn new(p: &IntPolynomial) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_poly(&p.to_poly()))
    }

    pub(crate) fn from_poly(p: &Poly) -> Self {
        let g = Poly::gcd(p, &p.derivative());
        let sqfree = if g.is_constant() { p.clone() } else { p.div_exact(&g) };
        let mut chain = vec![normalize(&sqfree)];
        let d = sqfree.derivative();
        if !d.is_zero() {
            chain.push(normalize(&d));
        }
        while chain.len() >= 2 {
            let n = chain.len();
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(normalize(&r.neg_ref()));
        }
        SturmSequence { chain }
    }

    /// Sign changes in the chain evaluated at `x`, zeros skipped.
    pub fn variations(&self, x: &Rational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.chain {
            let v = p.eval(x);
            let s = if v.is_zero() {
                continue;
            } else if v.is_positive() {
                1
            } else {
                -1
            };
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Distinct real roots in `(lo, hi]`.
    pub fn count(&self, lo: &Rational, hi: &Rational) -> usize {
        self.variations(lo).saturating_sub(self.variations(hi))
    }
}

// Positive rescaling keeps every sign and keeps coefficients small.
fn normalize(p: &Poly) -> Poly {
    match p.leading_coeff() {
        Some(c) => p.scale(&c.abs().recip()),
        None => p.clone(),
    }
}

/// Number of distinct real roots of `p` in the half-open interval `(lo, hi]`.
pub fn sturm_root_count(p: &IntPolynomial, lo: &Rational, hi: &Rational) -> Result<usize> {
    if lo >= hi {
        return Err(Error::InvalidInput(format!(
            "empty interval ({lo}, {hi}]"
        )));
    }
    Ok(SturmSequence::new(p)?.count(lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn count(c: &[i64], lo: i64, hi: i64) -> usize {
        sturm_root_count(&IntPolynomial::from_ints(c), &rational(lo), &rational(hi)).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(count(&[-1, 0, 1], 0, 2), 1);
        assert_eq!(count(&[-2, 1], 2, 10), 0);
        assert_eq!(count(&[-5, 0, 1], 2, 3), 1);
    }

    #[test]
    fn right_endpoint_is_included() {
        assert_eq!(count(&[-2, 1], 1, 2), 1);
        assert_eq!(count(&[-1, 0, 1], -1, 1), 1);
    }

    #[test]
    fn repeated_roots_are_counted_once() {
        // (x - 1)^2 (x + 2)
        assert_eq!(count(&[2, -3, 0, 1], -5, 5), 2);
    }

    #[test]
    fn errors() {
        let z = IntPolynomial::zero();
        assert_eq!(
            sturm_root_count(&z, &rational(0), &rational(1)),
            Err(Error::ZeroPolynomial)
        );
        let p = IntPolynomial::from_ints(&[1, 1]);
        assert!(sturm_root_count(&p, &rational(1), &rational(1)).is_err());
    }

    #[test]
    fn constant_polynomial_has_no_roots() {
        assert_eq!(count(&[7], -3, 3), 0);
    }
}
