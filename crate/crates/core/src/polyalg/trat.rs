use std::fmt;
use std::ops::{Add, Div, Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::tpoly::TPoly;
use crate::error::{Error, Result};

/// Reduced quotient of two polynomials in `t`.
///
/// Invariants: numerator and denominator share no common factor in `Z[t]`
/// (including integer content), and the denominator is nonzero with a positive
/// leading coefficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TRat {
    num: TPoly,
    den: TPoly,
}

impl TRat {
    pub fn new(num: TPoly, den: TPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(TRat::zero());
        }
        let g = num.primitive_gcd(&den);
        let mut num = num.div_exact(&g)?;
        let mut den = den.div_exact(&g)?;
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_exact(&TPoly::constant(c.clone()))?;
            den = den.div_exact(&TPoly::constant(c))?;
        }
        if den.leading_coeff().map_or(false, |lc| lc.is_negative()) {
            num = -num;
            den = -den;
        }
        Ok(TRat { num, den })
    }

    pub fn zero() -> Self {
        TRat {
            num: TPoly::zero(),
            den: TPoly::one(),
        }
    }

    pub fn one() -> Self {
        TRat::from_poly(TPoly::one())
    }

    pub fn from_poly(p: TPoly) -> Self {
        TRat {
            num: p,
            den: TPoly::one(),
        }
    }

    pub fn from_integer(c: i64) -> Self {
        TRat::from_poly(TPoly::constant(BigInt::from(c)))
    }

    pub fn numer(&self) -> &TPoly {
        &self.num
    }

    pub fn denom(&self) -> &TPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn recip(&self) -> Result<TRat> {
        TRat::new(self.den.clone(), self.num.clone())
    }

    /// Evaluates at a rational point; `None` if the denominator vanishes there.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(x);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x) / d)
        }
    }
}

impl<'a> Add<&'a TRat> for &'a TRat {
    type Output = TRat;
    fn add(self, rhs: &TRat) -> TRat {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        TRat::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl<'a> Sub<&'a TRat> for &'a TRat {
    type Output = TRat;
    fn sub(self, rhs: &TRat) -> TRat {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        TRat::new(num, &self.den * &rhs.den).expect("product of nonzero denominators")
    }
}

impl<'a> Mul<&'a TRat> for &'a TRat {
    type Output = TRat;
    fn mul(self, rhs: &TRat) -> TRat {
        TRat::new(&self.num * &rhs.num, &self.den * &rhs.den)
            .expect("product of nonzero denominators")
    }
}

impl<'a> Div<&'a TRat> for &'a TRat {
    type Output = Result<TRat>;
    fn div(self, rhs: &TRat) -> Result<TRat> {
        TRat::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl Zero for TRat {
    fn zero() -> Self {
        TRat::zero()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl Add for TRat {
    type Output = TRat;
    fn add(self, rhs: TRat) -> TRat {
        &self + &rhs
    }
}

impl fmt::Display for TRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}
