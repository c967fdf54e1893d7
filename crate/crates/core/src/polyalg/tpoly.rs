use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Univariate polynomial with big-integer coefficients in the variable `t = λ^k`.
///
/// Coefficients are stored low degree first with no trailing zeros, so the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct TPoly {
    coeffs: Vec<BigInt>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs)
    }

    /// Builds a polynomial from coefficients listed low degree first.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().map_or(false, Zero::is_zero) {
            coeffs.pop();
        }
        TPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// `t - c`
    pub fn linear_root(c: i64) -> Self {
        Self::from_i64s(&[-c, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> BigInt {
        self.coeffs.get(degree).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content, keeping the sign of the leading coefficient.
    pub fn primitive_part(&self) -> TPoly {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        TPoly {
            coeffs: self.coeffs.iter().map(|x| x / &c).collect(),
        }
    }

    /// Primitive part with positive leading coefficient; the form used as a factor key.
    pub fn canonical(&self) -> TPoly {
        let p = self.primitive_part();
        match p.leading_coeff() {
            Some(lc) if lc.is_negative() => -p,
            _ => p,
        }
    }

    pub fn is_canonical(&self) -> bool {
        !self.is_zero() && *self == self.canonical()
    }

    /// Number of times `t` divides the polynomial.
    pub fn t_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Divides by `t^j`; the caller guarantees `j <= t_valuation()`.
    pub fn shift_down(&self, j: usize) -> TPoly {
        debug_assert!(j <= self.t_valuation() || self.is_zero());
        TPoly::from_coeffs(self.coeffs.iter().skip(j).cloned().collect())
    }

    pub fn scale(&self, c: &BigInt) -> TPoly {
        TPoly::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, mut e: u32) -> TPoly {
        let mut base = self.clone();
        let mut acc = TPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Exact quotient over the integers; fails unless `divisor` divides `self` in `Z[t]`.
    pub fn div_exact(&self, divisor: &TPoly) -> Result<TPoly> {
        let (dd, dlc) = match (divisor.degree(), divisor.leading_coeff()) {
            (Some(d), Some(lc)) => (d, lc.clone()),
            _ => return Err(Error::ZeroDenominator),
        };
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree() else {
            return Ok(TPoly::zero());
        };
        if nd < dd {
            return Err(Error::DivisionNotExact);
        }
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for i in (0..=nd - dd).rev() {
            let top = &rem[i + dd];
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&dlc);
            if !r.is_zero() {
                return Err(Error::DivisionNotExact);
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &q * dc;
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(Error::DivisionNotExact);
        }
        Ok(TPoly::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `divisor` (a nonzero constant multiple of the remainder).
    fn pseudo_rem(&self, divisor: &TPoly) -> TPoly {
        let dd = divisor.degree().expect("nonzero divisor");
        let dlc = divisor.leading_coeff().unwrap().clone();
        let mut r = self.clone();
        while let Some(rd) = r.degree() {
            if rd < dd {
                break;
            }
            let rlc = r.leading_coeff().unwrap().clone();
            let shifted = TPoly::monomial(rlc, rd - dd);
            r = &r.scale(&dlc) - &(&shifted * divisor);
        }
        r
    }

    /// Greatest common divisor in `Z[t]`, returned in canonical form.
    ///
    /// The integer content is included, so `gcd(2t, 4)` is `2`.
    pub fn gcd(&self, other: &TPoly) -> TPoly {
        if self.is_zero() {
            return other.canonical_with_content();
        }
        if other.is_zero() {
            return self.canonical_with_content();
        }
        let c = self.content().gcd(&other.content());
        self.primitive_gcd(other).scale(&c)
    }

    /// Gcd of the primitive parts, canonical (content 1, positive leading coefficient).
    pub fn primitive_gcd(&self, other: &TPoly) -> TPoly {
        if self.is_zero() {
            return other.canonical();
        }
        if other.is_zero() {
            return self.canonical();
        }
        let (mut a, mut b) = (self.primitive_part(), other.primitive_part());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.canonical()
    }

    fn canonical_with_content(&self) -> TPoly {
        match self.leading_coeff() {
            Some(lc) if lc.is_negative() => -self.clone(),
            _ => self.clone(),
        }
    }

    pub fn derivative(&self) -> TPoly {
        TPoly::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigInt::from(i))
                .collect(),
        )
    }

    /// Linear factors `q t - p` (canonical) for the rational roots `p/q`, found by
    /// the rational root test. Gives up (returns none) when the constant or leading
    /// coefficient is too large to enumerate divisors.
    pub fn rational_root_factors(&self) -> Vec<TPoly> {
        let Some(deg) = self.degree() else {
            return Vec::new();
        };
        if deg == 0 {
            return Vec::new();
        }
        let mut out = Vec::new();
        if self.coeffs[0].is_zero() {
            out.push(TPoly::t());
        }
        let low = &self.coeffs[self.t_valuation()];
        let lead = self.leading_coeff().expect("nonzero");
        let (Some(ps), Some(qs)) = (small_divisors(low), small_divisors(lead)) else {
            return out;
        };
        for q in &qs {
            for p in &ps {
                if p.gcd(q) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    let root = BigRational::new(BigInt::from(sign * *p as i64), BigInt::from(*q));
                    if self.eval(&root).is_zero() {
                        out.push(TPoly::from_coeffs(vec![
                            -BigInt::from(sign * *p as i64),
                            BigInt::from(*q),
                        ]));
                    }
                }
            }
        }
        out
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * x + BigRational::from_integer(c.clone()))
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + bigint_to_f64(c))
    }
}

/// Positive divisors of `|c|`, if `|c|` is at most `10^12`.
fn small_divisors(c: &BigInt) -> Option<Vec<u64>> {
    let n = num_traits::ToPrimitive::to_u64(&c.abs())?;
    if n == 0 || n > 1_000_000_000_000 {
        return None;
    }
    let mut out = Vec::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            if d * d != n {
                out.push(n / d);
            }
        }
        d += 1;
    }
    out.sort_unstable();
    Some(out)
}

pub(crate) fn bigint_to_f64(c: &BigInt) -> f64 {
    num_traits::ToPrimitive::to_f64(c).unwrap_or(f64::NAN)
}

/// Display order for factor keys: lower degree first, then coefficients compared
/// from the leading one down by magnitude, so `t-1 < t-2 < t-3 < t^2-3t+1`.
impl Ord for TPoly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs.len().cmp(&other.coeffs.len()).then_with(|| {
            for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                let ord = a
                    .abs()
                    .cmp(&b.abs())
                    .then_with(|| b.is_negative().cmp(&a.is_negative()));
                if ord != Ordering::Equal {
                    return ord;
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for TPoly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn add(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<'a> Sub<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn sub(self, rhs: &TPoly) -> TPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        TPoly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<'a> Mul<&'a TPoly> for &'a TPoly {
    type Output = TPoly;
    fn mul(self, rhs: &TPoly) -> TPoly {
        if self.is_zero() || rhs.is_zero() {
            return TPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TPoly::from_coeffs(out)
    }
}

impl Add for TPoly {
    type Output = TPoly;
    fn add(self, rhs: TPoly) -> TPoly {
        &self + &rhs
    }
}

impl Sub for TPoly {
    type Output = TPoly;
    fn sub(self, rhs: TPoly) -> TPoly {
        &self - &rhs
    }
}

impl Mul for TPoly {
    type Output = TPoly;
    fn mul(self, rhs: TPoly) -> TPoly {
        &self * &rhs
    }
}

impl Neg for TPoly {
    type Output = TPoly;
    fn neg(self) -> TPoly {
        TPoly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for TPoly {
    /// Plain ASCII rendering in `t`, e.g. `t^2 - 3t + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = d == 0 || !mag.is_one();
            if show_mag {
                write!(f, "{mag}")?;
            }
            match d {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{d}")?,
            }
        }
        Ok(())
    }
}
