use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::de::{self, Deserializer};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};

use super::poly::{fmt_poly, Poly};
use super::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};

/// Rational function in the transcendental `q` over the rationals.
///
/// Always kept in canonical form: numerator and denominator coprime, the
/// denominator monic, and zero stored as `0/1`. Two values are equal as
/// field elements iff their representations are identical.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    /// Canonical form of `num / den`.
    pub fn new(num: Poly, den: Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: Poly, den: Poly) -> Self {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_constant() {
            let inv = den.coeffs()[0].recip();
            return RatFun {
                num: num.scale(&inv),
                den: Poly::one(),
            };
        }
        let (num, den) = if den.is_monomial() || num.is_monomial() {
            // gcd is a power of q
            let k = num.valuation().unwrap().min(den.valuation().unwrap());
            (num.shift_down(k), den.shift_down(k))
        } else {
            let g = Poly::gcd(&num, &den);
            if g.is_one() {
                (num, den)
            } else {
                (num.div_exact(&g), den.div_exact(&g))
            }
        };
        let inv = den.leading_coeff().unwrap().recip();
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn zero() -> Self {
        RatFun {
            num: Poly::zero(),
            den: Poly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn from_rational(c: Rational) -> Self {
        RatFun {
            num: Poly::constant(c),
            den: Poly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn from_poly(p: Poly) -> Self {
        RatFun {
            num: p,
            den: Poly::one(),
        }
    }

    /// The deformation parameter `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        let m = Poly::monomial(Rational::one(), k.unsigned_abs() as usize);
        if k >= 0 {
            Self::from_poly(m)
        } else {
            RatFun {
                num: Poly::one(),
                den: m,
            }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True when the value is a rational constant.
    pub fn is_constant(&self) -> bool {
        self.den.is_one() && self.num.is_constant()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        self.is_constant().then(|| self.num.coeff(0))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self> {
        Ok(self * &rhs.inv()?)
    }

    /// Exact specialization `q := a`.
    pub fn eval(&self, a: &Rational) -> Result<Rational> {
        let d = self.den.eval(a);
        if d.is_zero() {
            return Err(Error::Pole(format_rational(a)));
        }
        Ok(self.num.eval(a) / d)
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn pow(&self, k: i64) -> Result<Self> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = RatFun::one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    fn both_constant(&self, rhs: &RatFun) -> Option<(Rational, Rational)> {
        match (self.as_rational(), rhs.as_rational()) {
            (Some(a), Some(b)) => Some((a, b)),
            _ => None,
        }
    }
}

impl Default for RatFun {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for RatFun {
    fn from(c: Rational) -> Self {
        Self::from_rational(c)
    }
}

impl From<i64> for RatFun {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl Add for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if let Some((a, b)) = self.both_constant(rhs) {
            return RatFun::from_rational(a + b);
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalize(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFun::normalize(num, &self.den * &rhs.den)
    }
}

impl Sub for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if let Some((a, b)) = self.both_constant(rhs) {
            return RatFun::from_rational(a * b);
        }
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        if let Some(c) = self.as_rational() {
            return RatFun {
                num: rhs.num.scale(&c),
                den: rhs.den.clone(),
            };
        }
        if let Some(c) = rhs.as_rational() {
            return RatFun {
                num: self.num.scale(&c),
                den: self.den.clone(),
            };
        }
        RatFun::normalize(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &RatFun {
    type Output = RatFun;
    /// Panics on division by zero; use [`RatFun::checked_div`] otherwise.
    fn div(self, rhs: &RatFun) -> RatFun {
        self.checked_div(rhs).expect("division by zero")
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: self.num.neg_ref(),
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl One for RatFun {
    fn one() -> Self {
        RatFun::one()
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(c) = self.as_rational() {
            return write!(f, "{}", format_rational(&c));
        }
        let wrap_num = self.num.coeffs().iter().filter(|c| !c.is_zero()).count() > 1;
        if self.den.is_one() {
            return fmt_poly(&self.num, "q", f);
        }
        if wrap_num {
            write!(f, "(")?;
            fmt_poly(&self.num, "q", f)?;
            write!(f, ")")?;
        } else {
            fmt_poly(&self.num, "q", f)?;
        }
        if self.den.is_monomial() {
            write!(f, "/")?;
            fmt_poly(&self.den, "q", f)
        } else {
            write!(f, "/(")?;
            fmt_poly(&self.den, "q", f)?;
            write!(f, ")")
        }
    }
}

impl FromStr for RatFun {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        super::parse_ratfun(s)
    }
}

/// Wire form: `{"num": [coeff strings ascending], "den": [...]}`.
#[derive(Serialize, Deserialize)]
struct RatFunWire {
    num: Vec<String>,
    den: Vec<String>,
}

impl RatFunWire {
    fn from_ratfun(f: &RatFun) -> Self {
        let coeffs = |p: &Poly| p.coeffs().iter().map(format_rational).collect();
        RatFunWire {
            num: coeffs(&f.num),
            den: coeffs(&f.den),
        }
    }

    fn into_ratfun(self) -> Result<RatFun> {
        let poly = |v: Vec<String>| -> Result<Poly> {
            Ok(Poly::new(
                v.iter()
                    .map(|s| parse_rational(s))
                    .collect::<Result<Vec<_>>>()?,
            ))
        };
        RatFun::new(poly(self.num)?, poly(self.den)?)
    }
}

impl Serialize for RatFun {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RatFunWire::from_ratfun(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatFun {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        RatFunWire::deserialize(d)?
            .into_ratfun()
            .map_err(de::Error::custom)
    }
}

/// Serde adapter for matrix entries: constants travel as `"p/q"` strings,
/// other values as the `{"num", "den"}` object. Strings may also hold any
/// expression accepted by [`super::parse_ratfun`]; bare JSON integers are
/// accepted on input.
pub mod scalar_repr {
    use super::*;

    #[derive(Serialize, Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Int(i64),
        Text(String),
        Object(RatFunWire),
    }

    pub fn to_repr<S: Serializer>(f: &RatFun, s: S) -> std::result::Result<S::Ok, S::Error> {
        match f.as_rational() {
            Some(c) => s.serialize_str(&format_rational(&c)),
            None => RatFunWire::from_ratfun(f).serialize(s),
        }
    }

    pub fn from_repr<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<RatFun, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Int(n) => Ok(RatFun::from_int(n)),
            Repr::Text(t) => super::super::parse_ratfun(&t).map_err(de::Error::custom),
            Repr::Object(w) => w.into_ratfun().map_err(de::Error::custom),
        }
    }

    /// Wrapper so collections of scalars can use the adapter.
    #[derive(Clone, Debug, PartialEq)]
    pub struct Scalar(pub RatFun);

    impl Serialize for Scalar {
        fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
            to_repr(&self.0, s)
        }
    }

    impl<'de> Deserialize<'de> for Scalar {
        fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
            from_repr(d).map(Scalar)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> Poly {
        Poly::from_ints(c)
    }

    fn r(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let f = RatFun::new(p(&[-1, 0, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f, RatFun::from_poly(p(&[1, 1])));
    }

    #[test]
    fn normalize_identity_case() {
        assert_eq!(RatFun::new(p(&[0, 1]), p(&[1])).unwrap(), RatFun::q());
    }

    #[test]
    fn normalize_makes_denominator_monic() {
        // 2q / 4: the independent gcd oracle is the integer gcd of contents
        let f = RatFun::new(p(&[0, 2]), p(&[4])).unwrap();
        assert_eq!(f.num().coeffs(), &[r(0, 1), r(1, 2)]);
        assert!(f.den().is_one());
        // 2q / (4q + 4): denominator becomes q + 1
        let g = RatFun::new(p(&[0, 2]), p(&[4, 4])).unwrap();
        assert_eq!(g.den(), &p(&[1, 1]));
        assert_eq!(g.num().coeffs(), &[r(0, 1), r(1, 2)]);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(RatFun::new(p(&[1]), Poly::zero()), Err(Error::DivisionByZero));
        assert_eq!(RatFun::zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn eval_examples() {
        assert_eq!(RatFun::from_poly(p(&[1, 1])).eval(&r(2, 1)).unwrap(), r(3, 1));
        assert_eq!(RatFun::q_pow(-1).eval(&r(1, 3)).unwrap(), r(3, 1));
        // evaluate before and after cancellation
        let raw_num = p(&[-1, 0, 1]);
        let raw_den = p(&[-1, 1]);
        let before = raw_num.eval(&r(5, 1)) / raw_den.eval(&r(5, 1));
        let after = RatFun::new(raw_num, raw_den).unwrap().eval(&r(5, 1)).unwrap();
        assert_eq!(before, r(6, 1));
        assert_eq!(after, before);
    }

    #[test]
    fn eval_at_pole_fails() {
        assert!(matches!(RatFun::q_pow(-1).eval(&r(0, 1)), Err(Error::Pole(_))));
    }

    #[test]
    fn q_powers_compose() {
        assert_eq!(&RatFun::q_pow(3) * &RatFun::q_pow(-5), RatFun::q_pow(-2));
        assert_eq!(RatFun::q().pow(-4).unwrap(), RatFun::q_pow(-4));
    }

    #[test]
    fn display_forms() {
        assert_eq!(RatFun::q_pow(-3).to_string(), "1/q^3");
        assert_eq!(RatFun::from_rational(r(-3, 4)).to_string(), "-3/4");
        let f = RatFun::new(p(&[1, 1]), p(&[-1, 1])).unwrap();
        assert_eq!(f.to_string(), "(q + 1)/(q - 1)");
    }

    #[test]
    fn serde_wire_format() {
        let f = RatFun::new(p(&[1, 0, 2]), p(&[0, 3])).unwrap();
        let json = serde_json::to_string(&f).unwrap();
        assert_eq!(json, r#"{"num":["1/3","0","2/3"],"den":["0","1"]}"#);
        let back: RatFun = serde_json::from_str(&json).unwrap();
        assert_eq!(back, f);
    }
}
