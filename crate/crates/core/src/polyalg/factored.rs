use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::tpoly::TPoly;
use super::trat::TRat;
use crate::error::{Error, Result};

/// `λ^lambda_exponent · ∏ f(λ^k)^e` with every `f` primitive, positive-leading and
/// of positive degree, and every `e > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactoredCharPoly {
    k: u32,
    lambda_exponent: BigInt,
    factors: BTreeMap<TPoly, BigInt>,
}

impl FactoredCharPoly {
    /// The constant polynomial `1`.
    pub fn one(k: u32) -> Self {
        FactoredCharPoly {
            k,
            lambda_exponent: BigInt::zero(),
            factors: BTreeMap::new(),
        }
    }

    /// Builds a finalized value from parts, validating the invariants.
    pub fn from_parts(
        k: u32,
        lambda_exponent: BigInt,
        factors: impl IntoIterator<Item = (TPoly, BigInt)>,
    ) -> Result<Self> {
        let mut acc = CharPolyAccumulator::new(k);
        acc.mul_lambda(&lambda_exponent);
        for (f, e) in factors {
            if f.is_zero() {
                return Err(Error::InvalidParameter("zero factor".into()));
            }
            acc.mul_factor(&TRat::from_poly(f), &e, &BigInt::zero());
        }
        acc.finalize()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda_exponent(&self) -> &BigInt {
        &self.lambda_exponent
    }

    /// Factors in display order (degree, then coefficients).
    pub fn factors(&self) -> &BTreeMap<TPoly, BigInt> {
        &self.factors
    }

    pub fn exponent_of(&self, f: &TPoly) -> BigInt {
        self.factors.get(f).cloned().unwrap_or_default()
    }

    /// Total degree in λ: `lambda_exponent + k · Σ e·deg f`.
    pub fn degree(&self) -> BigInt {
        let k = BigInt::from(self.k);
        self.factors.iter().fold(self.lambda_exponent.clone(), |acc, (f, e)| {
            acc + &k * e * BigInt::from(f.degree().unwrap_or(0))
        })
    }

    /// Exact value at `λ = lambda0`.
    pub fn eval(&self, lambda0: &BigRational) -> BigRational {
        let t0 = pow_rational(lambda0, &BigInt::from(self.k));
        let mut value = pow_rational(lambda0, &self.lambda_exponent);
        for (f, e) in &self.factors {
            if value.is_zero() {
                break;
            }
            value *= pow_rational(&f.eval(&t0), e);
        }
        value
    }

    /// Expands into dense λ-coefficients, low degree first. Intended for small inputs.
    pub fn expand(&self) -> Vec<BigInt> {
        let mut t_poly = TPoly::one();
        for (f, e) in &self.factors {
            let e = e.to_u32().expect("exponent too large to expand");
            t_poly = &t_poly * &f.pow(e);
        }
        let shift = self
            .lambda_exponent
            .to_usize()
            .expect("λ exponent too large to expand");
        let k = self.k as usize;
        let len = shift + k * t_poly.degree().unwrap_or(0) + 1;
        let mut out = vec![BigInt::zero(); len];
        for (d, c) in t_poly.coeffs().iter().enumerate() {
            out[shift + k * d] = c.clone();
        }
        out
    }
}

/// `base^exp` for a nonnegative big-integer exponent; `0^0 = 1`.
pub(crate) fn pow_rational(base: &BigRational, exp: &BigInt) -> BigRational {
    assert!(!exp.is_negative(), "negative exponent");
    if exp.is_zero() {
        return BigRational::one();
    }
    if base.is_zero() {
        return BigRational::zero();
    }
    let mag = exp.magnitude();
    let numer = biguint_pow(base.numer(), mag);
    let denom = biguint_pow(base.denom(), mag);
    BigRational::new_raw(numer, denom)
}

fn biguint_pow(base: &BigInt, exp: &BigUint) -> BigInt {
    if let Some(e) = exp.to_u32() {
        return num_traits::pow::Pow::pow(base, e);
    }
    let mut acc = BigInt::one();
    for i in (0..exp.bits()).rev() {
        acc = &acc * &acc;
        if exp.bit(i) {
            acc *= base;
        }
    }
    acc
}

/// Accumulates a product of rational factors in `t` and λ-powers.
///
/// Factor keys may carry negative exponents while accumulating; `finalize`
/// requires every denominator to have cancelled.
#[derive(Clone, Debug)]
pub struct CharPolyAccumulator {
    k: u32,
    lambda_exponent: BigInt,
    factors: BTreeMap<TPoly, BigInt>,
    contents: BTreeMap<BigInt, BigInt>,
    negative: bool,
}

impl CharPolyAccumulator {
    pub fn new(k: u32) -> Self {
        CharPolyAccumulator {
            k,
            lambda_exponent: BigInt::zero(),
            factors: BTreeMap::new(),
            contents: BTreeMap::new(),
            negative: false,
        }
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn lambda_exponent(&self) -> &BigInt {
        &self.lambda_exponent
    }

    /// Current exponent ledger, including pending negative entries.
    pub fn pending_factors(&self) -> &BTreeMap<TPoly, BigInt> {
        &self.factors
    }

    pub fn mul_lambda(&mut self, exponent: &BigInt) -> &mut Self {
        self.lambda_exponent += exponent;
        self
    }

    /// Multiplies by `(factor · λ^lambda_shift)^exponent`.
    ///
    /// Powers of `t` in the numerator or denominator move into the λ ledger
    /// (`t = λ^k`), integer content into the content ledger, and the remaining
    /// canonical primitive parts into the factor map.
    pub fn mul_factor(&mut self, factor: &TRat, exponent: &BigInt, lambda_shift: &BigInt) -> &mut Self {
        assert!(!factor.is_zero(), "factor must be nonzero");
        if exponent.is_zero() {
            return self;
        }
        self.lambda_exponent += lambda_shift * exponent;
        self.absorb(factor.numer(), exponent);
        self.absorb(factor.denom(), &-exponent);
        self
    }

    /// Multiplies by a finalized characteristic polynomial raised to `exponent`.
    pub fn mul_charpoly(&mut self, other: &FactoredCharPoly, exponent: &BigInt) -> &mut Self {
        assert_eq!(self.k, other.k, "mismatched uniformity");
        self.lambda_exponent += &other.lambda_exponent * exponent;
        for (f, e) in &other.factors {
            *self.factors.entry(f.clone()).or_default() += e * exponent;
        }
        self
    }

    fn absorb(&mut self, p: &TPoly, exponent: &BigInt) {
        let j = p.t_valuation();
        if j > 0 {
            self.lambda_exponent += BigInt::from(self.k) * BigInt::from(j) * exponent;
        }
        let p = p.shift_down(j);
        let content = p.content();
        let lead_negative = p.leading_coeff().map_or(false, |c| c.is_negative());
        if lead_negative && exponent.is_odd() {
            self.negative = !self.negative;
        }
        if !content.is_one() {
            *self.contents.entry(content).or_default() += exponent;
        }
        if p.degree().unwrap_or(0) > 0 {
            *self.factors.entry(p.canonical()).or_default() += exponent;
        }
    }

    /// Checks that the product is a polynomial with unit content and returns it.
    pub fn finalize(self) -> Result<FactoredCharPoly> {
        let mut factors = BTreeMap::new();
        for (f, e) in split_factors(self.factors) {
            if e.is_negative() {
                return Err(Error::NotPolynomial {
                    factor: format!("({f})"),
                    exponent: e.to_string(),
                });
            }
            if !e.is_zero() {
                factors.insert(f, e);
            }
        }
        if self.lambda_exponent.is_negative() {
            return Err(Error::NotPolynomial {
                factor: "λ".into(),
                exponent: self.lambda_exponent.to_string(),
            });
        }
        let residual = refine_contents(self.contents);
        if let Some((c, e)) = residual.into_iter().next() {
            return Err(Error::NotPolynomial {
                factor: format!("content {c}"),
                exponent: e.to_string(),
            });
        }
        if self.negative {
            return Err(Error::NotPolynomial {
                factor: "content -1".into(),
                exponent: "1".into(),
            });
        }
        Ok(FactoredCharPoly {
            k: self.k,
            lambda_exponent: self.lambda_exponent,
            factors,
        })
    }
}

/// Rewrites `∏ f_i^{e_i}` over a pairwise-coprime base of canonical polynomials.
fn refine_polys(factors: impl IntoIterator<Item = (TPoly, BigInt)>) -> BTreeMap<TPoly, BigInt> {
    let mut items: Vec<(TPoly, BigInt)> = factors
        .into_iter()
        .filter(|(f, e)| f.degree().unwrap_or(0) > 0 && !e.is_zero())
        .collect();
    'outer: loop {
        for i in 0..items.len() {
            for j in (i + 1)..items.len() {
                let g = items[i].0.primitive_gcd(&items[j].0);
                if g.degree().unwrap_or(0) == 0 {
                    continue;
                }
                let (a, ea) = items.swap_remove(j);
                let (b, eb) = items.swap_remove(i);
                let mut push = |f: TPoly, e: BigInt| {
                    if f.degree().unwrap_or(0) > 0 && !e.is_zero() {
                        items.push((f.canonical(), e));
                    }
                };
                push(a.div_exact(&g).expect("gcd divides"), ea.clone());
                push(b.div_exact(&g).expect("gcd divides"), eb.clone());
                push(g, ea + eb);
                continue 'outer;
            }
        }
        break;
    }
    let mut merged: BTreeMap<TPoly, BigInt> = BTreeMap::new();
    for (f, e) in items {
        *merged.entry(f).or_default() += e;
    }
    merged.retain(|_, e| !e.is_zero());
    merged
}

/// Square-free parts of a canonical polynomial, with multiplicities.
fn square_free(f: &TPoly) -> BTreeMap<TPoly, BigInt> {
    let g = f.primitive_gcd(&f.derivative());
    if g.degree().unwrap_or(0) == 0 {
        return BTreeMap::from([(f.clone(), BigInt::one())]);
    }
    let radical = f.div_exact(&g).expect("gcd divides").canonical();
    let mut parts: Vec<(TPoly, BigInt)> = vec![(radical, BigInt::one())];
    parts.extend(square_free(&g));
    refine_polys(parts)
}

/// Coprime base refinement, then square-free splitting and rational linear factors,
/// so that factors sharing a root always share a key.
fn split_factors(factors: BTreeMap<TPoly, BigInt>) -> BTreeMap<TPoly, BigInt> {
    let base = refine_polys(factors);
    let mut pieces: Vec<(TPoly, BigInt)> = Vec::new();
    for (f, e) in base {
        for (sf, m) in square_free(&f) {
            let mut rest = sf;
            for lin in rest.rational_root_factors() {
                rest = rest.div_exact(&lin).expect("root factor divides").canonical();
                pieces.push((lin, &e * &m));
            }
            pieces.push((rest, &e * &m));
        }
    }
    refine_polys(pieces)
}

/// Rewrites `∏ c_i^{e_i}` over a pairwise-coprime base and drops cancelled entries.
fn refine_contents(contents: BTreeMap<BigInt, BigInt>) -> BTreeMap<BigInt, BigInt> {
    let mut items: Vec<(BigInt, BigInt)> = contents
        .into_iter()
        .filter(|(c, e)| !c.is_one() && !e.is_zero())
        .collect();
    'outer: loop {
        for i in 0..items.len() {
            for j in (i + 1)..items.len() {
                let g = items[i].0.gcd(&items[j].0);
                if g.is_one() {
                    continue;
                }
                let (a, ea) = items.swap_remove(j);
                let (b, eb) = items.swap_remove(i);
                let mut push = |c: BigInt, e: BigInt| {
                    if !c.is_one() {
                        items.push((c, e));
                    }
                };
                push(&a / &g, ea.clone());
                push(&b / &g, eb.clone());
                push(g, ea + eb);
                continue 'outer;
            }
        }
        break;
    }
    let mut merged: BTreeMap<BigInt, BigInt> = BTreeMap::new();
    for (c, e) in items {
        *merged.entry(c).or_default() += e;
    }
    merged.retain(|_, e| !e.is_zero());
    merged
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> TPoly {
        TPoly::from_i64s(c)
    }

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn linear_factor_with_denominator_goes_into_ledger() {
        // t - h_2 = t(t-2)/(t-1) with k = 3 raised to the 9th power
        let factor = TRat::new(p(&[0, -2, 1]), p(&[-1, 1])).unwrap();
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_factor(&factor, &big(9), &big(0));
        assert_eq!(acc.lambda_exponent(), &big(27));
        assert_eq!(acc.pending_factors()[&p(&[-2, 1])], big(9));
        assert_eq!(acc.pending_factors()[&p(&[-1, 1])], big(-9));
    }

    #[test]
    fn reducible_keys_split_before_cancelling() {
        // (t-1)(t-3) / (t-1) = t - 3, and (t^2 - 2t + 1) = (t - 1)^2.
        let f = FactoredCharPoly::from_parts(
            3,
            big(0),
            [(p(&[3, -4, 1]), big(2)), (p(&[-1, 1]), big(-2)), (p(&[1, -2, 1]), big(1))],
        )
        .unwrap();
        assert_eq!(f.factors().len(), 2);
        assert_eq!(f.exponent_of(&p(&[-3, 1])), big(2));
        assert_eq!(f.exponent_of(&p(&[-1, 1])), big(2));
        // Irreducible quadratics are left alone.
        let g = FactoredCharPoly::from_parts(3, big(0), [(p(&[1, -3, 1]), big(4))]).unwrap();
        assert_eq!(g.exponent_of(&p(&[1, -3, 1])), big(4));
    }

    #[test]
    fn multiplying_by_t_only_shifts_lambda() {
        let mut acc = CharPolyAccumulator::new(4);
        acc.mul_factor(&TRat::from_poly(TPoly::t()), &big(5), &big(0));
        let f = acc.finalize().unwrap();
        assert_eq!(f.lambda_exponent(), &big(20));
        assert!(f.factors().is_empty());
    }

    #[test]
    fn multiplying_by_one_is_identity() {
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_factor(&TRat::one(), &big(7), &big(0));
        assert_eq!(acc.finalize().unwrap(), FactoredCharPoly::one(3));
    }

    #[test]
    fn pending_negative_exponent_cancels() {
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_factor(&TRat::new(TPoly::one(), p(&[-1, 1])).unwrap(), &big(9), &big(0));
        acc.mul_factor(&TRat::from_poly(p(&[-1, 1])), &big(15), &big(0));
        let f = acc.finalize().unwrap();
        assert_eq!(f.exponent_of(&p(&[-1, 1])), big(6));
    }

    #[test]
    fn uncancelled_denominator_is_not_polynomial() {
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_factor(&TRat::new(TPoly::one(), p(&[-2, 1])).unwrap(), &big(1), &big(0));
        assert!(matches!(acc.finalize(), Err(Error::NotPolynomial { .. })));
    }

    #[test]
    fn negative_lambda_is_not_polynomial() {
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_lambda(&big(-1));
        assert!(matches!(acc.finalize(), Err(Error::NotPolynomial { .. })));
    }

    #[test]
    fn contents_cancel_across_a_coprime_base() {
        // (2t - 2)^1 · (4t - 4)^{-1} · 2 = 1 after refinement of 2 and 4
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_factor(&TRat::from_poly(p(&[-2, 2])), &big(2), &big(0));
        acc.mul_factor(&TRat::new(TPoly::one(), p(&[-4, 4])).unwrap(), &big(1), &big(0));
        acc.mul_factor(&TRat::new(TPoly::one(), p(&[-1, 1])).unwrap(), &big(1), &big(0));
        let f = acc.finalize().unwrap();
        assert_eq!(f, FactoredCharPoly::one(3));
    }

    #[test]
    fn leftover_content_is_rejected() {
        let mut acc = CharPolyAccumulator::new(3);
        acc.mul_factor(&TRat::from_poly(p(&[-3, 3])), &big(1), &big(0));
        assert!(acc.finalize().is_err());
    }

    #[test]
    fn empty_product_is_one() {
        let f = CharPolyAccumulator::new(5).finalize().unwrap();
        assert_eq!(f.degree(), big(0));
        assert_eq!(f.eval(&BigRational::from_integer(big(7))), BigRational::one());
    }

    #[test]
    fn eval_single_edge_at_two() {
        // λ^3 (λ^3 - 1)^3 at λ = 2 is 8 · 343
        let f = FactoredCharPoly::from_parts(3, big(3), [(p(&[-1, 1]), big(3))]).unwrap();
        assert_eq!(f.eval(&BigRational::from_integer(big(2))), BigRational::from_integer(big(2744)));
        assert_eq!(f.degree(), big(12));
    }

    #[test]
    fn eval_matches_expansion() {
        let f = FactoredCharPoly::from_parts(3, big(2), [(p(&[-1, 1]), big(2)), (p(&[1, -3, 1]), big(1))])
            .unwrap();
        let dense = f.expand();
        for x in [-3i64, -1, 0, 2, 5] {
            let x = BigRational::from_integer(big(x));
            let direct = dense
                .iter()
                .rev()
                .fold(BigRational::zero(), |acc, c| acc * &x + BigRational::from_integer(c.clone()));
            assert_eq!(f.eval(&x), direct);
        }
    }

    #[test]
    fn pow_handles_large_exponents() {
        let two = BigRational::from_integer(big(2));
        assert_eq!(pow_rational(&two, &big(10)), BigRational::from_integer(big(1024)));
        assert_eq!(pow_rational(&BigRational::zero(), &big(0)), BigRational::one());
        let huge = BigInt::from_biguint(num_bigint::Sign::Plus, BigUint::from(u64::MAX) + 1u32);
        assert_eq!(pow_rational(&BigRational::one(), &huge), BigRational::one());
    }
}
