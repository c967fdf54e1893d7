//! Brute-force check of the closed forms: the Macaulay resultant of the eigenvalue
//! system at a fixed rational λ, with exact determinants.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::charpoly::Family;
use crate::error::{Error, Result};
use crate::hypergraph::{eigen_system, LambdaValue, UniformHypergraph};
use crate::multipoly::{Monomial, Polynomial};
use crate::polyalg::FactoredCharPoly;

/// Largest Macaulay matrix (columns) the oracle will build.
pub const MAX_COLUMNS: usize = 2500;

/// Largest matrix for which the perturbation fallback (many determinants) is tried.
const MAX_FALLBACK_COLUMNS: usize = 400;

/// At most this many variable orders are tried before falling back.
const MAX_ORDERS: usize = 24;

/// All monomials of total degree `d` in `n` variables, largest first in lex order.
fn monomials(n: usize, d: u32) -> Vec<Monomial> {
    fn rec(n: usize, d: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == n {
            prefix.push(d);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e);
            rec(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, d, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

fn binomial(n: usize, r: usize) -> Option<usize> {
    let r = r.min(n - r);
    (0..r).try_fold(1usize, |acc, i| acc.checked_mul(n - i).map(|x| x / (i + 1)))
}

/// The square Macaulay matrix of a homogeneous system under one variable order,
/// together with the rows/columns of its non-reduced minor.
#[derive(Clone, Debug)]
pub struct MacaulayInstance {
    pub nvars: usize,
    pub degrees: Vec<u32>,
    pub total_degree: u32,
    pub columns: Vec<Monomial>,
    /// `rows[a]` is the row for column monomial `a` (dense, exact rationals).
    pub matrix: Vec<Vec<BigRational>>,
    /// Indices of monomials divisible by at least two `x_i^{d_i}`.
    pub non_reduced: Vec<usize>,
}

impl MacaulayInstance {
    pub fn new(polys: &[Polynomial<BigRational>], order: &[usize]) -> Result<Self> {
        let nvars = check_system(polys)?;
        let degrees: Vec<u32> = polys.iter().map(|p| p.homogeneous_degree().expect("checked")).collect();
        let total_degree = degrees.iter().map(|d| d - 1).sum::<u32>() + 1;
        let size = binomial(total_degree as usize + nvars - 1, nvars - 1).unwrap_or(usize::MAX);
        if size > MAX_COLUMNS {
            return Err(Error::OracleTooLarge {
                columns: size,
                bound: MAX_COLUMNS,
            });
        }
        let columns = monomials(nvars, total_degree);
        let index: HashMap<&Monomial, usize> = columns.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let zero = BigRational::zero();
        let mut matrix = vec![vec![zero; columns.len()]; columns.len()];
        let mut non_reduced = Vec::new();
        for (a, alpha) in columns.iter().enumerate() {
            let divisible: Vec<usize> = (0..nvars).filter(|&i| alpha[i] >= degrees[i]).collect();
            if divisible.len() >= 2 {
                non_reduced.push(a);
            }
            let i = *order
                .iter()
                .find(|&&i| alpha[i] >= degrees[i])
                .expect("degree D forces some x_i^{d_i} to divide");
            let mut shift = alpha.clone();
            shift[i] -= degrees[i];
            for (m, c) in polys[i].shifted_terms(&shift) {
                matrix[a][index[&m]] = c.clone();
            }
        }
        Ok(MacaulayInstance {
            nvars,
            degrees,
            total_degree,
            columns,
            matrix,
            non_reduced,
        })
    }

    pub fn size(&self) -> usize {
        self.columns.len()
    }

    fn minor(&self, s: &BigRational) -> Vec<Vec<BigRational>> {
        self.non_reduced
            .iter()
            .map(|&r| {
                self.non_reduced
                    .iter()
                    .map(|&c| {
                        let x = &self.matrix[r][c];
                        if r == c {
                            x - s
                        } else {
                            x.clone()
                        }
                    })
                    .collect()
            })
            .collect()
    }

    fn full(&self, s: &BigRational) -> Vec<Vec<BigRational>> {
        if s.is_zero() {
            return self.matrix.clone();
        }
        let mut m = self.matrix.clone();
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = &row[i] - s;
        }
        m
    }
}

fn check_system(polys: &[Polynomial<BigRational>]) -> Result<usize> {
    let n = polys.len();
    if n == 0 {
        return Err(Error::InvalidParameter("empty system".into()));
    }
    for (i, p) in polys.iter().enumerate() {
        if p.nvars() != n {
            return Err(Error::InvalidParameter(format!(
                "polynomial {i} has {} variables, expected {n}",
                p.nvars()
            )));
        }
        match p.homogeneous_degree() {
            Some(d) if d >= 1 => {}
            _ => {
                return Err(Error::InvalidParameter(format!(
                    "polynomial {i} is not homogeneous of positive degree"
                )))
            }
        }
    }
    Ok(n)
}

/// Exact determinant. Denominators are cleared row by row; elimination then stays
/// in the integers, touching only rows with a nonzero in the pivot column (the
/// Macaulay matrices here are very sparse) and dividing out row contents.
pub fn determinant(m: &[Vec<BigRational>]) -> BigRational {
    let n = m.len();
    if n == 0 {
        return BigRational::one();
    }
    // det(m) = num / den · det(a), with `a` updated in place.
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            den *= &l;
            row.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    let mut negate = false;
    for k in 0..n {
        // Sparsest remaining row with a nonzero in column k.
        let nonzeros = |r: usize| a[r][k..].iter().filter(|x| !x.is_zero()).count();
        let Some(pos) = (k..n).filter(|&i| !a[active[i]][k].is_zero()).min_by_key(|&i| nonzeros(active[i])) else {
            return BigRational::zero();
        };
        if pos != k {
            active.swap(pos, k);
            negate = !negate;
        }
        let pr = active[k];
        let pivot = a[pr][k].clone();
        let support: Vec<usize> = (k + 1..n).filter(|&j| !a[pr][j].is_zero()).collect();
        for &ri in &active[k + 1..] {
            if a[ri][k].is_zero() {
                continue;
            }
            let g = pivot.gcd(&a[ri][k]);
            let mul = &pivot / &g;
            let sub = &a[ri][k] / &g;
            if !mul.is_one() {
                for x in a[ri][k + 1..].iter_mut().filter(|x| !x.is_zero()) {
                    *x *= &mul;
                }
                den *= &mul;
            }
            for &j in &support {
                let v = &a[pr][j] * &sub;
                a[ri][j] -= v;
            }
            a[ri][k] = BigInt::zero();
            let content = a[ri][k + 1..].iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            if !content.is_zero() && !content.is_one() {
                for x in a[ri][k + 1..].iter_mut() {
                    *x /= &content;
                }
                num *= content;
            }
        }
        num *= pivot;
    }
    if negate {
        num = -num;
    }
    BigRational::new(num, den)
}

/// Variable orders to try: identity, then rotations, reversals and further
/// permutations, capped at `MAX_ORDERS`.
fn candidate_orders(n: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = Vec::new();
    let push = |o: Vec<usize>, out: &mut Vec<Vec<usize>>| {
        if out.len() < MAX_ORDERS && !out.contains(&o) {
            out.push(o);
        }
    };
    for r in 0..n {
        push((0..n).map(|i| (i + r) % n).collect(), &mut out);
        push((0..n).rev().map(|i| (i + r) % n).collect(), &mut out);
    }
    // Heap's algorithm for the remainder.
    let mut perm: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n && out.len() < MAX_ORDERS {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            push(perm.clone(), &mut out);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// `Res(F_1, …, F_n)` for a homogeneous system with rational coefficients, as
/// `det M / det M′`. When the minor is singular under every tried variable order,
/// small systems fall back to perturbing by `-s x_i^{d_i}`: the quotient is then a
/// polynomial in `s`, interpolated at nonzero `s` and evaluated at 0.
pub fn macaulay_resultant(polys: &[Polynomial<BigRational>]) -> Result<BigRational> {
    let n = check_system(polys)?;
    let mut first = None;
    for order in candidate_orders(n) {
        let inst = MacaulayInstance::new(polys, &order)?;
        let minor = determinant(&inst.minor(&BigRational::zero()));
        if !minor.is_zero() {
            return Ok(determinant(&inst.matrix) / minor);
        }
        first.get_or_insert(inst);
    }
    let inst = first.expect("at least one order");
    if inst.size() > MAX_FALLBACK_COLUMNS {
        return Err(Error::DegenerateMinor);
    }
    perturbed_resultant(&inst)
}

fn perturbed_resultant(inst: &MacaulayInstance) -> Result<BigRational> {
    let d = &inst.degrees;
    let bound: usize = (0..d.len())
        .map(|i| d.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x as usize).product::<usize>())
        .sum();
    let mut samples: Vec<(BigRational, BigRational)> = Vec::new();
    let mut s = 1i64;
    while samples.len() <= bound {
        if s > 4 * bound as i64 + 16 {
            return Err(Error::DegenerateMinor);
        }
        let x = BigRational::from_integer(BigInt::from(s));
        let minor = determinant(&inst.minor(&x));
        if !minor.is_zero() {
            samples.push((x.clone(), determinant(&inst.full(&x)) / minor));
        }
        s += 1;
    }
    // Lagrange interpolation evaluated at s = 0.
    let mut total = BigRational::zero();
    for (j, (xj, yj)) in samples.iter().enumerate() {
        let mut w = yj.clone();
        for (m, (xm, _)) in samples.iter().enumerate() {
            if m != j {
                w = w * -xm / (xj - xm);
            }
        }
        total += w;
    }
    Ok(total)
}

/// `φ_H(λ0)` computed directly as the resultant of the eigenvalue system.
pub fn charpoly_eval_oracle(h: &UniformHypergraph, lambda0: &BigRational) -> Result<BigRational> {
    let sys = eigen_system(h, &LambdaValue::Value(lambda0.clone()));
    macaulay_resultant(&sys.at(lambda0))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationEntry {
    pub lambda: String,
    pub closed_form: String,
    pub oracle: String,
    pub equal: bool,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub entries: Vec<VerificationEntry>,
}

impl VerificationReport {
    pub fn all_equal(&self) -> bool {
        self.entries.iter().all(|e| e.equal)
    }
}

/// Compares a closed form against the oracle at each sample point.
pub fn verify_against(h: &UniformHypergraph, f: &FactoredCharPoly, lambdas: &[BigRational]) -> Result<VerificationReport> {
    let mut report = VerificationReport::default();
    for l in lambdas {
        let closed = f.eval(l);
        let oracle = charpoly_eval_oracle(h, l)?;
        report.entries.push(VerificationEntry {
            lambda: l.to_string(),
            closed_form: closed.to_string(),
            oracle: oracle.to_string(),
            equal: closed == oracle,
        });
    }
    Ok(report)
}

pub fn verify_formula(family: &Family, k: usize, lambdas: &[BigRational]) -> Result<VerificationReport> {
    let h = family.hypergraph(k)?;
    let f = family.charpoly(k)?;
    verify_against(&h, &f, lambdas)
}

/// Parses `"2"`, `"-3"` or `"5/2"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidParameter(format!("not a rational number: {s:?}"));
    let (num, den) = match s.trim().split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(num, den);
    Ok(if r.denom().is_negative() { -(-r) } else { r })
}
