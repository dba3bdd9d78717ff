use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::DimVector;
use crate::error::{Error, Result};
use crate::exactnum::{rational_string, Rational};
use crate::linalg::{char_poly, spectral_classify, Certified, ExactMatrix, Interval, Matrix, RationalMatrix};

/// `alpha_1 = sum s_i v_i`, `beta_1 = sum t_i v_i` for the Perron vector `v`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PerronProjection {
    pub alpha1: Certified,
    pub beta1: Certified,
    pub lam: Certified,
}

impl PerronProjection {
    fn exact(&self) -> Option<(&Rational, &Rational, &Rational)> {
        Some((self.alpha1.exact()?, self.beta1.exact()?, self.lam.exact()?))
    }
}

fn pair(weights: &[i64], v: &[Certified]) -> Certified {
    let mut exact = Rational::zero();
    let mut enclosed: Option<Interval> = None;
    for (&w, x) in weights.iter().zip(v) {
        if w == 0 {
            continue;
        }
        let w = Rational::from_integer(w.into());
        match x {
            Certified::Exact(r) => exact += w * r,
            Certified::Enclosure(i) => {
                let term = Interval::point(w).mul(i);
                enclosed = Some(match enclosed {
                    Some(acc) => acc.add(&term),
                    None => term,
                });
            }
        }
    }
    match enclosed {
        None => Certified::Exact(exact),
        Some(i) => Certified::Enclosure(i.add(&Interval::point(exact))),
    }
}

pub fn perron_projection(e: &ExactMatrix, v: &DimVector) -> Result<PerronProjection> {
    let sc = spectral_classify(e)?;
    if v.t.len() != sc.perron_vector.len() || v.s.len() != sc.perron_vector.len() {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector {v} does not fit E"
        )));
    }
    if v.is_zero() {
        return Err(Error::InvalidInput("zero dimension vector".into()));
    }
    Ok(PerronProjection {
        alpha1: pair(&v.s, &sc.perron_vector),
        beta1: pair(&v.t, &sc.perron_vector),
        lam: sc.perron_root,
    })
}

/// `beta/alpha + alpha/beta - lam`; an enclosure when any input is one.
pub fn check_quadratic_constraint(p: &PerronProjection) -> Result<Certified> {
    if let Some((a, b, lam)) = p.exact() {
        if a.is_zero() || b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        return Ok(Certified::Exact(b / a + a / b - lam));
    }
    let (a, b, lam) = (p.alpha1.interval(), p.beta1.interval(), p.lam.interval());
    let ba = b.div(&a).ok_or(Error::DivisionByZero)?;
    let ab = a.div(&b).ok_or(Error::DivisionByZero)?;
    let neg = Interval::new(-lam.hi.clone(), -lam.lo.clone());
    Ok(Certified::Enclosure(ba.add(&ab).add(&neg)))
}

/// The predicted next `beta_1`: `lam beta_1 - alpha_1`.
pub fn next_beta(p: &PerronProjection) -> Result<Rational> {
    let (a, b, lam) = p.exact().ok_or(Error::IntervalInput)?;
    Ok(lam * b - a)
}

/// The distinct eigenvalues of `E` with multiplicities when all are
/// rational, otherwise `None`.
pub fn rational_spectrum(e: &ExactMatrix) -> Result<Option<Vec<(Rational, usize)>>> {
    let p = char_poly(e)?;
    let n = p.degree().unwrap_or(0);
    // a monic integer polynomial has only integer rational roots, each
    // dividing the lowest nonzero coefficient
    let low = p.coeffs().iter().find(|c| !c.is_zero()).cloned().unwrap_or_else(BigInt::one);
    let zero_mult = p.coeffs().iter().take_while(|c| c.is_zero()).count();
    let mut out = Vec::new();
    let mut found = 0;
    if zero_mult > 0 {
        out.push((Rational::zero(), zero_mult));
        found += zero_mult;
    }
    let bound = low.abs();
    let mut d = BigInt::one();
    while &d * &d <= bound {
        if bound.is_multiple_of(&d) {
            let mut cands = vec![d.clone()];
            let other = &bound / &d;
            if other != d {
                cands.push(other);
            }
            for c in cands {
                for r in [c.clone(), -c] {
                    let m = multiplicity(&p, &Rational::from_integer(r.clone()));
                    if m > 0 {
                        out.push((Rational::from_integer(r), m));
                        found += m;
                    }
                }
            }
        }
        if found == n {
            break;
        }
        d += 1;
    }
    if found < n {
        return Ok(None);
    }
    out.sort_by(|a, b| b.0.cmp(&a.0));
    Ok(Some(out))
}

fn multiplicity(p: &crate::linalg::IntPolynomial, r: &Rational) -> usize {
    let mut q = p.clone();
    let mut m = 0;
    while !q.is_zero() && q.eval(r).is_zero() {
        m += 1;
        q = q.derivative();
    }
    m
}

/// The coefficient `c_j` attached to one eigenvalue.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EigenCoefficient {
    #[serde(with = "rational_string")]
    pub eigenvalue: Rational,
    pub multiplicity: usize,
    #[serde(with = "rational_string")]
    pub c: Rational,
}

/// `c_j = mu_j (s P_j t) - t P_j t - s P_j s` with `P_j` the orthogonal
/// projection onto the `mu_j`-eigenspace, built by Lagrange interpolation
/// on the spectrum. Eigenvalues are listed in decreasing order.
pub fn coefficient_vector_c(e: &ExactMatrix, v: &DimVector) -> Result<Vec<EigenCoefficient>> {
    let em: RationalMatrix = e.to_rational()?;
    if !em.is_square() {
        return Err(Error::NotSquare {
            rows: em.rows(),
            cols: em.cols(),
        });
    }
    if !em.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = em.rows();
    if v.t.len() != n || v.s.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "dimension vector {v} does not fit E"
        )));
    }
    let spectrum = rational_spectrum(e)?.ok_or(Error::IrrationalSpectrum)?;
    let t: Vec<Rational> = v.t.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let s: Vec<Rational> = v.s.iter().map(|&x| Rational::from_integer(x.into())).collect();
    let dot = |a: &[Rational], b: &[Rational]| -> Rational { a.iter().zip(b).map(|(x, y)| x * y).sum() };
    let mut out = Vec::with_capacity(spectrum.len());
    for (j, (mu, mult)) in spectrum.iter().enumerate() {
        let mut proj: RationalMatrix = Matrix::identity(n);
        for (l, (nu, _)) in spectrum.iter().enumerate() {
            if l == j {
                continue;
            }
            let factor = em.sub(&Matrix::identity(n).scale(nu)).scale(&(mu - nu).recip());
            proj = proj.mul(&factor);
        }
        let pt = proj.mul_vec(&t);
        let ps = proj.mul_vec(&s);
        let c = mu * dot(&s, &pt) - dot(&t, &pt) - dot(&s, &ps);
        out.push(EigenCoefficient {
            eigenvalue: mu.clone(),
            multiplicity: *mult,
            c,
        });
    }
    Ok(out)
}
