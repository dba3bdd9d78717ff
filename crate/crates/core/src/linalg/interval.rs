use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exactnum::{format_rational, rational_string, Rational};

/// Closed rational interval `[lo, hi]`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Interval {
    #[serde(with = "rational_string")]
    pub lo: Rational,
    #[serde(with = "rational_string")]
    pub hi: Rational,
}

impl Interval {
    pub fn new(lo: Rational, hi: Rational) -> Self {
        debug_assert!(lo <= hi);
        Interval { lo, hi }
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x }
    }

    pub fn width(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / Rational::from_integer(2.into())
    }

    pub fn contains(&self, x: &Rational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let c = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = c.iter().min().unwrap().clone();
        let hi = c.iter().max().unwrap().clone();
        Interval::new(lo, hi)
    }

    /// Quotient; `None` if the divisor straddles zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    /// Horner evaluation of a rational polynomial given by ascending coefficients.
    pub fn eval_poly(&self, coeffs: &[Rational]) -> Interval {
        coeffs.iter().rev().fold(Interval::point(Rational::zero()), |acc, c| {
            acc.mul(self).add(&Interval::point(c.clone()))
        })
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.12}, {:.12}]",
            to_f64(&self.lo),
            to_f64(&self.hi)
        )
    }
}

/// A real number known exactly or enclosed in a rational interval.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Certified {
    Exact(#[serde(with = "rational_string")] Rational),
    Enclosure(Interval),
}

impl Certified {
    pub fn exact(&self) -> Option<&Rational> {
        match self {
            Certified::Exact(r) => Some(r),
            Certified::Enclosure(_) => None,
        }
    }

    pub fn interval(&self) -> Interval {
        match self {
            Certified::Exact(r) => Interval::point(r.clone()),
            Certified::Enclosure(i) => i.clone(),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.interval().is_positive()
    }

    pub fn approx(&self) -> f64 {
        to_f64(&self.interval().midpoint())
    }
}

impl fmt::Display for Certified {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Certified::Exact(r) => write!(f, "{}", format_rational(r)),
            Certified::Enclosure(i) => write!(f, "{i}"),
        }
    }
}

pub fn to_f64(r: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(f64::NAN)
}
