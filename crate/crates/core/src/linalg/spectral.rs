use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::interval::{Certified, Interval};
use super::intpoly::{char_poly_int, IntPolynomial};
use super::matrix::{ExactMatrix, Matrix, RationalMatrix};
use super::sturm::SturmSequence;
use crate::error::{Error, Result};
use crate::exactnum::{RatFun, Rational};

/// Position of the largest eigenvalue relative to 2.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum LambdaClass {
    BelowTwo,
    EqualTwo,
    AboveTwo,
}

impl fmt::Display for LambdaClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LambdaClass::BelowTwo => "BELOW_TWO",
            LambdaClass::EqualTwo => "EQUAL_TWO",
            LambdaClass::AboveTwo => "ABOVE_TWO",
        })
    }
}

/// Perron data of an irreducible nonnegative symmetric integer matrix.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SpectralClass {
    pub class: LambdaClass,
    pub perron_multiplicity_one: bool,
    pub perron_vector: Vec<Certified>,
    pub perron_root: Certified,
}

impl SpectralClass {
    /// The Perron vector when every entry is known exactly.
    pub fn exact_vector(&self) -> Option<Vec<Rational>> {
        self.perron_vector
            .iter()
            .map(|c| c.exact().cloned())
            .collect()
    }
}

/// Width below which the Perron root enclosure is accepted.
pub fn enclosure_tolerance() -> Rational {
    Rational::new(BigInt::one(), BigInt::from(10u64).pow(12))
}

/// Checks the standing hypotheses on `E` and returns its integer entries.
///
/// `E` must be square, integral, symmetric, nonnegative and irreducible.
pub fn validate_e(e: &ExactMatrix) -> Result<Vec<Vec<BigInt>>> {
    if !e.is_square() {
        return Err(Error::NotSquare {
            rows: e.rows(),
            cols: e.cols(),
        });
    }
    if e.rows() == 0 {
        return Err(Error::InvalidInput("E is empty".into()));
    }
    let ints = e.to_integer_rows()?;
    let n = ints.len();
    for i in 0..n {
        for j in 0..n {
            if ints[i][j] != ints[j][i] {
                return Err(Error::NotSymmetric);
            }
            if ints[i][j].is_negative() {
                return Err(Error::NegativeEntry);
            }
        }
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..n {
            if !seen[j] && ints[i][j].is_positive() {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    if seen.iter().any(|s| !s) {
        return Err(Error::Reducible);
    }
    Ok(ints)
}

/// Classifies the Perron root of `E` against 2 with exact arithmetic.
pub fn spectral_classify(e: &ExactMatrix) -> Result<SpectralClass> {
    let ints = validate_e(e)?;
    let n = ints.len();
    let p = char_poly_int(&ints);
    let sturm = SturmSequence::new(&p)?;
    let two = Rational::from_integer(2.into());

    let max_entry = ints.iter().flatten().max().cloned().unwrap_or_default();
    let bound = Rational::from_integer(max_entry * BigInt::from(n));
    let above = bound > two && sturm.count(&two, &bound) > 0;
    let class = if above {
        LambdaClass::AboveTwo
    } else if p.eval(&two).is_zero() {
        LambdaClass::EqualTwo
    } else {
        LambdaClass::BelowTwo
    };

    let root = if class == LambdaClass::EqualTwo {
        Certified::Exact(two)
    } else {
        largest_root(&p, &sturm, &ints)
    };

    let dp = p.derivative();
    let perron_multiplicity_one = match &root {
        Certified::Exact(r) => !dp.eval(r).is_zero(),
        Certified::Enclosure(i) => {
            let g = crate::exactnum::Poly::gcd(&p.to_poly(), &dp.to_poly());
            g.is_constant() || SturmSequence::from_poly(&g).count(&i.lo, &i.hi) == 0
        }
    };

    let perron_vector = match &root {
        Certified::Exact(r) => eigenvector_exact(e, r)?
            .into_iter()
            .map(|v| Certified::Exact(Rational::from_integer(v)))
            .collect(),
        Certified::Enclosure(i) => enclose_vector(&ints, i)?,
    };

    Ok(SpectralClass {
        class,
        perron_multiplicity_one,
        perron_vector,
        perron_root: root,
    })
}

// Bisection on Sturm counts down to an interval isolating the largest root;
// an integer root inside it makes the answer exact.
fn largest_root(p: &IntPolynomial, sturm: &SturmSequence, ints: &[Vec<BigInt>]) -> Certified {
    let row_max = ints
        .iter()
        .map(|r| r.iter().map(|v| v.abs()).sum::<BigInt>())
        .max()
        .unwrap_or_default();
    let mut hi = Rational::from_integer(row_max.clone());
    let mut lo = Rational::from_integer(-row_max - 1);
    let tol = enclosure_tolerance();
    let half = Rational::new(1.into(), 2.into());
    while &hi - &lo > tol || sturm.count(&lo, &hi) > 1 {
        let mid = (&lo + &hi) * &half;
        if sturm.count(&mid, &hi) > 0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    let c = Rational::from_integer(lo.floor().to_integer() + 1);
    if c <= hi && p.eval(&c).is_zero() {
        return Certified::Exact(c);
    }
    Certified::Enclosure(Interval::new(lo, hi))
}

// Column 0 of adj(xI - E) is a nonzero multiple of the Perron vector at the
// Perron root; evaluate it on the root enclosure and divide by entry 0.
fn enclose_vector(ints: &[Vec<BigInt>], root: &Interval) -> Result<Vec<Certified>> {
    let n = ints.len();
    let xi = ExactMatrix::from_fn(n, n, |i, j| {
        let c = RatFun::from_rational(Rational::from_integer(-ints[i][j].clone()));
        if i == j {
            &c + &RatFun::q()
        } else {
            c
        }
    });
    let others: Vec<usize> = (1..n).collect();
    let mut col = Vec::with_capacity(n);
    for i in 0..n {
        let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
        let minor = xi.submatrix(&others, &cols).det()?;
        let minor = if i % 2 == 1 { -&minor } else { minor };
        col.push(root.eval_poly(minor.num().coeffs()));
    }
    let d = col[0].clone();
    let mut out = vec![Certified::Exact(Rational::one())];
    for c in &col[1..] {
        let q = c
            .div(&d)
            .ok_or_else(|| Error::InvalidInput("Perron vector enclosure failed".into()))?;
        out.push(Certified::Enclosure(q));
    }
    Ok(out)
}

/// Primitive integer kernel vector of `E - lam I` with first nonzero entry
/// positive.
pub fn eigenvector_exact(e: &ExactMatrix, lam: &Rational) -> Result<Vec<BigInt>> {
    let em: RationalMatrix = e.to_rational()?;
    if !em.is_square() {
        return Err(Error::NotSquare {
            rows: em.rows(),
            cols: em.cols(),
        });
    }
    let shifted = em.sub(&Matrix::identity(em.rows()).scale(lam));
    let basis = shifted.nullspace();
    let v = basis
        .into_iter()
        .next()
        .ok_or_else(|| Error::NotAnEigenvalue(lam.to_string()))?;
    Ok(primitive_integer(&v))
}

/// Scale a nonzero rational vector to coprime integers with first nonzero
/// entry positive.
pub fn primitive_integer(v: &[Rational]) -> Vec<BigInt> {
    let l = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    let g = if g.is_zero() { BigInt::one() } else { g * sign };
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rational;

    fn classify(rows: &[&[i64]]) -> SpectralClass {
        spectral_classify(&ExactMatrix::from_ints(rows)).unwrap()
    }

    #[test]
    fn classification_examples() {
        let s = classify(&[&[2]]);
        assert_eq!(s.class, LambdaClass::EqualTwo);
        assert_eq!(s.perron_root, Certified::Exact(rational(2)));
        assert_eq!(s.exact_vector(), Some(vec![rational(1)]));
        assert!(s.perron_multiplicity_one);

        let s = classify(&[&[0, 1], &[1, 0]]);
        assert_eq!(s.class, LambdaClass::BelowTwo);
        assert_eq!(s.perron_root, Certified::Exact(rational(1)));

        let s = classify(&[&[0, 3], &[3, 0]]);
        assert_eq!(s.class, LambdaClass::AboveTwo);
        assert_eq!(s.perron_root, Certified::Exact(rational(3)));
        assert_eq!(s.exact_vector(), Some(vec![rational(1), rational(1)]));
    }

    #[test]
    fn irrational_root_is_enclosed() {
        // Path on three vertices: largest eigenvalue sqrt 2.
        let s = classify(&[&[0, 1, 0], &[1, 0, 1], &[0, 1, 0]]);
        assert_eq!(s.class, LambdaClass::BelowTwo);
        let Certified::Enclosure(i) = &s.perron_root else {
            panic!("expected enclosure")
        };
        assert!(i.width() <= enclosure_tolerance());
        let two = rational(2);
        assert!(&i.lo * &i.lo < two && two <= &i.hi * &i.hi);
        assert!(s.perron_vector.iter().all(Certified::is_positive));
        // Perron vector (1, sqrt 2, 1).
        assert_eq!(s.perron_vector[2].interval().contains(&rational(1)), true);
        assert!(s.perron_vector[1].interval().contains(&i.hi) || s.perron_vector[1].interval().contains(&i.lo));
    }

    #[test]
    fn hypotheses_are_checked() {
        let e = ExactMatrix::from_ints(&[&[0, 1], &[2, 0]]);
        assert_eq!(spectral_classify(&e), Err(Error::NotSymmetric));
        assert!(Error::NotSymmetric.to_string().contains("E must be symmetric"));
        let e = ExactMatrix::from_ints(&[&[1, 0], &[0, 1]]);
        assert_eq!(spectral_classify(&e), Err(Error::Reducible));
        assert!(Error::Reducible.to_string().contains("algebra assumed indecomposable"));
        let e = ExactMatrix::from_ints(&[&[0, -1], &[-1, 0]]);
        assert_eq!(spectral_classify(&e), Err(Error::NegativeEntry));
    }

    #[test]
    fn eigenvector_examples() {
        let e = ExactMatrix::from_ints(&[&[2]]);
        assert_eq!(eigenvector_exact(&e, &rational(2)).unwrap(), vec![BigInt::from(1)]);
        let e = ExactMatrix::from_ints(&[&[0, 2], &[2, 0]]);
        assert_eq!(
            eigenvector_exact(&e, &rational(2)).unwrap(),
            vec![BigInt::from(1), BigInt::from(1)]
        );
        let e = ExactMatrix::from_ints(&[
            &[0, 1, 0, 1],
            &[1, 0, 1, 0],
            &[0, 1, 0, 1],
            &[1, 0, 1, 0],
        ]);
        assert_eq!(
            eigenvector_exact(&e, &rational(2)).unwrap(),
            vec![BigInt::from(1); 4]
        );
        assert!(matches!(
            eigenvector_exact(&e, &rational(3)),
            Err(Error::NotAnEigenvalue(_))
        ));
    }

    #[test]
    fn primitive_normalization() {
        let v = vec![Rational::new((-2).into(), 3.into()), Rational::new(4.into(), 9.into())];
        assert_eq!(primitive_integer(&v), vec![BigInt::from(3), BigInt::from(-2)]);
    }
}
