//! Sparse multivariate polynomials with exponent-vector monomials.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Monomial = Vec<u32>;

/// Coefficient `a·λ + b` with `λ` a formal symbol of degree zero in the variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct LambdaCoeff {
    pub lambda: BigRational,
    pub constant: BigRational,
}

impl LambdaCoeff {
    pub fn lambda() -> Self {
        LambdaCoeff {
            lambda: BigRational::one(),
            constant: BigRational::zero(),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        LambdaCoeff {
            lambda: BigRational::zero(),
            constant: c,
        }
    }

    pub fn is_numeric(&self) -> bool {
        self.lambda.is_zero()
    }

    pub fn at(&self, lambda0: &BigRational) -> BigRational {
        &self.lambda * lambda0 + &self.constant
    }
}

impl Zero for LambdaCoeff {
    fn zero() -> Self {
        LambdaCoeff::default()
    }
    fn is_zero(&self) -> bool {
        self.lambda.is_zero() && self.constant.is_zero()
    }
}

impl Add for LambdaCoeff {
    type Output = LambdaCoeff;
    fn add(self, rhs: LambdaCoeff) -> LambdaCoeff {
        LambdaCoeff {
            lambda: self.lambda + rhs.lambda,
            constant: self.constant + rhs.constant,
        }
    }
}

impl Neg for LambdaCoeff {
    type Output = LambdaCoeff;
    fn neg(self) -> LambdaCoeff {
        LambdaCoeff {
            lambda: -self.lambda,
            constant: -self.constant,
        }
    }
}

impl fmt::Display for LambdaCoeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.lambda.is_zero(), self.constant.is_zero()) {
            (true, _) => write!(f, "{}", self.constant),
            (false, true) if self.lambda.is_one() => write!(f, "λ"),
            (false, true) => write!(f, "{}λ", self.lambda),
            (false, false) => write!(f, "({}λ + {})", self.lambda, self.constant),
        }
    }
}

/// Polynomial in `nvars` variables; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial<C> {
    nvars: usize,
    terms: BTreeMap<Monomial, C>,
}

impl<C> Polynomial<C>
where
    C: Clone + Zero,
{
    pub fn zero(nvars: usize) -> Self {
        Polynomial {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, C> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &[u32]) -> C {
        self.terms.get(m).cloned().unwrap_or_else(C::zero)
    }

    pub fn add_term(&mut self, monomial: Monomial, c: C) {
        assert_eq!(monomial.len(), self.nvars, "monomial arity");
        let entry = self.terms.entry(monomial).or_insert_with(C::zero);
        *entry = entry.clone() + c;
        self.terms.retain(|_, v| !v.is_zero());
    }

    /// Total degree of every term, if they agree.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|m| m.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Substitutes `x_var := 0` or `x_var := 1` and drops that variable slot.
    pub fn substitute_binary(&self, var: usize, value: bool) -> Self {
        let mut out = Polynomial::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            if !value && m[var] > 0 {
                continue;
            }
            let mut reduced = m.clone();
            reduced.remove(var);
            out.add_term(reduced, c.clone());
        }
        out
    }

    pub fn map_coeffs<D, F>(&self, mut f: F) -> Polynomial<D>
    where
        D: Clone + Zero,
        F: FnMut(&C) -> D,
    {
        let mut out = Polynomial::zero(self.nvars);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), f(c));
        }
        out
    }
}

impl Polynomial<BigRational> {
    /// `x^shift · self`
    pub fn shifted_terms<'a>(&'a self, shift: &'a [u32]) -> impl Iterator<Item = (Monomial, &'a BigRational)> + 'a {
        self.terms.iter().map(move |(m, c)| {
            let mono = m.iter().zip(shift).map(|(a, b)| a + b).collect();
            (mono, c)
        })
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        self.map_coeffs(|c| c * s)
    }
}

impl<C> Polynomial<C>
where
    C: Clone + Zero + Mul<Output = C>,
{
    pub fn mul_poly(&self, rhs: &Polynomial<C>) -> Polynomial<C> {
        assert_eq!(self.nvars, rhs.nvars);
        let mut out = Polynomial::zero(self.nvars);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                let m = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add_term(m, ca.clone() * cb.clone());
            }
        }
        out
    }
}

impl Polynomial<LambdaCoeff> {
    pub fn at(&self, lambda0: &BigRational) -> Polynomial<BigRational> {
        self.map_coeffs(|c| c.at(lambda0))
    }
}

/// Renders with caller-supplied variable names, e.g. `λx0^2 - x1x2`.
pub struct Named<'a, C> {
    pub poly: &'a Polynomial<C>,
    pub names: &'a [usize],
}

impl<C> fmt::Display for Named<'_, C>
where
    C: Clone + Zero + fmt::Display + SignedCoeff,
{
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.poly.is_zero() {
            return write!(f, "0");
        }
        // Symbolic coefficients first, then graded lexicographic, largest first.
        let mut order: Vec<_> = self.poly.terms.iter().collect();
        order.sort_by_key(|(m, c)| {
            let deg: u32 = m.iter().sum();
            (std::cmp::Reverse(c.is_symbolic()), std::cmp::Reverse(deg), std::cmp::Reverse((*m).clone()))
        });
        for (i, (m, c)) in order.into_iter().enumerate() {
            let (neg, body) = c.split_sign();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_const = m.iter().all(|&e| e == 0);
            if body != "1" || is_const {
                write!(f, "{body}")?;
            }
            for (v, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "x{}", self.names[v])?,
                    _ => write!(f, "x{}^{}", self.names[v], e)?,
                }
            }
        }
        Ok(())
    }
}

/// Splits a coefficient into sign and magnitude text for display.
pub trait SignedCoeff {
    fn split_sign(&self) -> (bool, String);
    fn is_symbolic(&self) -> bool {
        false
    }
}

impl SignedCoeff for BigRational {
    fn split_sign(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

impl SignedCoeff for LambdaCoeff {
    fn is_symbolic(&self) -> bool {
        !self.lambda.is_zero()
    }

    fn split_sign(&self) -> (bool, String) {
        if self.lambda.is_zero() {
            self.constant.split_sign()
        } else if self.constant.is_zero() {
            let (neg, mag) = self.lambda.split_sign();
            let text = if mag == "1" { "λ".to_string() } else { format!("{mag}λ") };
            (neg, text)
        } else {
            (false, self.to_string())
        }
    }
}
