//! Closed-form characteristic polynomials of hyperpaths, hyperstars and starlike
//! hypergraphs, assembled as factored polynomials in `t = λ^k`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Pow, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{make_hyperpath, make_hyperstar, make_starlike, UniformHypergraph};
use crate::polyalg::{bigint_to_f64, CharPolyAccumulator, FactoredCharPoly, TPoly, TRat};

/// `h_0 = 0`, `h_1 = 1`, `h_{s+1} = t / (t - h_s)`. The values do not depend on
/// `k`; it only enters through `t = λ^k`.
#[derive(Clone, Debug)]
pub struct HIterates {
    table: Vec<TRat>,
}

impl HIterates {
    pub fn new() -> Self {
        HIterates {
            table: vec![TRat::zero(), TRat::one()],
        }
    }

    pub fn get(&mut self, s: usize) -> &TRat {
        while self.table.len() <= s {
            let last = self.table.last().expect("seeded");
            let t = TRat::from_poly(TPoly::t());
            let next = (&t / &(&t - last)).expect("t - h_s never vanishes");
            self.table.push(next);
        }
        &self.table[s]
    }
}

impl Default for HIterates {
    fn default() -> Self {
        Self::new()
    }
}

pub fn h_iterate(s: usize) -> TRat {
    HIterates::new().get(s).clone()
}

/// Denominators `b_1 = 1`, `b_2 = t - 1`, `b_{s+1} = t b_s - t b_{s-1}`, returned as
/// `[b_0, b_1, …, b_max]`, where `b_0` is only a placeholder. These are not
/// reduced: `h_s = t b_{s-1} / b_s` and `t - h_s = b_{s+1} / b_s` only after
/// cancelling common powers of `t`.
pub fn h_denominators(max: usize) -> Vec<TPoly> {
    let mut b = vec![TPoly::one(), TPoly::one(), TPoly::linear_root(1)];
    let t = TPoly::t();
    while b.len() <= max {
        let n = b.len();
        let next = &(&t * &b[n - 1]) - &(&t * &b[n - 2]);
        b.push(next);
    }
    b.truncate(max + 1);
    b
}

fn big(x: usize) -> BigInt {
    BigInt::from(x)
}

fn pow(base: usize, exp: usize) -> BigInt {
    Pow::pow(big(base), exp)
}

/// Number of stable hyperpath configurations in stratum `s`:
/// `k^{s(k-2)} ((k-1)^{k-1} - k^{k-2}) (k-1)^{(n-s-1)(k-1)}` for `s < n`, and
/// `k^{n(k-2)}` for `s = n`.
pub fn mu(n: usize, k: usize, s: usize) -> Result<BigInt> {
    check_nk(n, k)?;
    if s > n {
        return Err(Error::InvalidParameter(format!("stratum {s} exceeds n = {n}")));
    }
    if s == n {
        return Ok(pow(k, n * (k - 2)));
    }
    let gap = pow(k - 1, k - 1) - pow(k, k - 2);
    Ok(pow(k, s * (k - 2)) * gap * pow(k - 1, (n - s - 1) * (k - 1)))
}

fn check_nk(n: usize, k: usize) -> Result<()> {
    if n < 1 {
        return Err(Error::InvalidParameter("need at least one edge".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("uniformity k = {k} must be at least 2")));
    }
    Ok(())
}

fn k32(k: usize) -> u32 {
    u32::try_from(k).expect("uniformity fits in u32")
}

/// `λ^{k(k-1)^{k-1} - k^{k-1}} (t - 1)^{k^{k-2}}`.
pub fn charpoly_single_edge(k: usize) -> Result<FactoredCharPoly> {
    check_nk(1, k)?;
    let lambda = big(k) * pow(k - 1, k - 1) - pow(k, k - 1);
    FactoredCharPoly::from_parts(k32(k), lambda, [(TPoly::linear_root(1), pow(k, k - 2))])
}

/// Hyperpath with `n` edges by recursion on `n`, starting from the single edge.
pub fn charpoly_path(n: usize, k: usize) -> Result<FactoredCharPoly> {
    check_nk(n, k)?;
    let mut hs = HIterates::new();
    let mut current = charpoly_single_edge(k)?;
    for len in 2..=n {
        let mut acc = CharPolyAccumulator::new(k32(k));
        acc.mul_lambda(&(big(k - 2) * pow(k - 1, len * (k - 1))));
        let shift = -big(k - 1);
        for s in 0..=len {
            let factor = &TRat::from_poly(TPoly::t()) - hs.get(s);
            acc.mul_factor(&factor, &mu(len, k, s)?, &shift);
        }
        acc.mul_charpoly(&current, &pow(k - 1, k - 1));
        current = acc.finalize()?;
    }
    Ok(current)
}

/// Hyperstar with `m` edges sharing vertex 0.
pub fn charpoly_star(m: usize, k: usize) -> Result<FactoredCharPoly> {
    check_nk(m, k)?;
    let r = m * (k - 1);
    let mut acc = CharPolyAccumulator::new(k32(k));
    acc.mul_lambda(&(big(r) * pow(k - 1, r)));
    let gap = pow(k - 1, k - 1) - pow(k, k - 2);
    let shift = -big(k - 1);
    for p in 0..=m {
        let exponent = binomial(m, p) * pow(k, (k - 2) * p) * Pow::pow(&gap, m - p);
        let factor = TRat::from_poly(TPoly::linear_root(p as i64));
        acc.mul_factor(&factor, &exponent, &shift);
    }
    acc.finalize()
}

fn binomial(m: usize, p: usize) -> BigInt {
    (0..p).fold(BigInt::one(), |acc, i| acc * big(m - i) / big(i + 1))
}

/// Hyperpaths of lengths `arms` glued at a common end vertex.
pub fn charpoly_starlike(k: usize, arms: &[usize]) -> Result<FactoredCharPoly> {
    if arms.is_empty() {
        return Err(Error::InvalidParameter("a starlike hypergraph needs at least one arm".into()));
    }
    for &n in arms {
        check_nk(n, k)?;
    }
    let m = arms.len();
    let r: Vec<usize> = arms.iter().map(|&n| n * (k - 1)).collect();
    let r_total: usize = r.iter().sum();
    let ones = arms.iter().filter(|&&n| n == 1).count();

    let mut acc = CharPolyAccumulator::new(k32(k));
    acc.mul_lambda(&(big(m * (k - 2) + ones) * pow(k - 1, r_total)));
    for (i, &n) in arms.iter().enumerate() {
        if n > 1 {
            let sub = charpoly_path(n - 1, k)?;
            acc.mul_charpoly(&sub, &pow(k - 1, k - 1 + r_total - r[i]));
        }
    }

    // The factor for (s_1, …, s_m) depends only on the multiset of the s_i, so
    // accumulate exponents per sorted index vector, one arm at a time.
    let mut groups: BTreeMap<Vec<usize>, BigInt> = BTreeMap::from([(Vec::new(), BigInt::one())]);
    for &n in arms {
        let mus = (0..=n).map(|s| mu(n, k, s)).collect::<Result<Vec<_>>>()?;
        let mut next = BTreeMap::new();
        for (key, e) in &groups {
            for (s, mu_s) in mus.iter().enumerate() {
                if mu_s.is_zero() {
                    continue;
                }
                let mut key = key.clone();
                let pos = key.partition_point(|&x| x <= s);
                key.insert(pos, s);
                *next.entry(key).or_insert_with(BigInt::zero) += e * mu_s;
            }
        }
        groups = next;
    }

    let mut hs = HIterates::new();
    let shift = -big(k - 1);
    for (key, e) in groups {
        let mut sum = TRat::zero();
        for &s in &key {
            sum = &sum + hs.get(s);
        }
        let factor = &TRat::from_poly(TPoly::t()) - &sum;
        acc.mul_factor(&factor, &e, &shift);
    }
    acc.finalize()
}

/// The hypergraph families with closed forms.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    SingleEdge,
    Path { n: usize },
    Star { m: usize },
    Starlike { arms: Vec<usize> },
}

impl Family {
    pub fn name(&self) -> &'static str {
        match self {
            Family::SingleEdge => "single_edge",
            Family::Path { .. } => "path",
            Family::Star { .. } => "star",
            Family::Starlike { .. } => "starlike",
        }
    }

    pub fn charpoly(&self, k: usize) -> Result<FactoredCharPoly> {
        match self {
            Family::SingleEdge => charpoly_single_edge(k),
            Family::Path { n } => charpoly_path(*n, k),
            Family::Star { m } => charpoly_star(*m, k),
            Family::Starlike { arms } => charpoly_starlike(k, arms),
        }
    }

    pub fn hypergraph(&self, k: usize) -> Result<UniformHypergraph> {
        match self {
            Family::SingleEdge => make_hyperpath(1, k),
            Family::Path { n } => make_hyperpath(*n, k),
            Family::Star { m } => make_hyperstar(*m, k),
            Family::Starlike { arms } => make_starlike(k, arms),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::SingleEdge => write!(f, "single edge"),
            Family::Path { n } => write!(f, "hyperpath with {n} edges"),
            Family::Star { m } => write!(f, "hyperstar with {m} edges"),
            Family::Starlike { arms } => write!(f, "starlike hypergraph with arms {arms:?}"),
        }
    }
}

/// Outcome of matching the roots of the `t`-factors against squared path-graph
/// eigenvalues.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct RootCheckReport {
    /// `(factor, root re, root im)` for every root that matched.
    pub matched: Vec<(String, f64, f64)>,
    pub unmatched: Vec<(String, f64, f64)>,
}

impl RootCheckReport {
    pub fn ok(&self) -> bool {
        self.unmatched.is_empty()
    }
}

/// Checks that each root `τ` of each `t`-factor of a hyperpath polynomial equals
/// `μ²` for an eigenvalue `μ = 2cos(πi/(j+1))` of a path graph on `j ≤ n+1`
/// vertices. Floating point, for diagnostics only.
pub fn power_hypergraph_root_check(f: &FactoredCharPoly, n: usize, tol: f64) -> RootCheckReport {
    let squares: Vec<f64> = (1..=n + 1)
        .flat_map(|j| (1..=j).map(move |i| (2.0 * (std::f64::consts::PI * i as f64 / (j as f64 + 1.0)).cos()).powi(2)))
        .collect();
    let mut report = RootCheckReport::default();
    for p in f.factors().keys() {
        for z in polynomial_roots(p) {
            let hit = z.im.abs() <= tol && squares.iter().any(|&s| (z.re - s).abs() <= tol);
            let entry = (p.to_string(), z.re, z.im);
            if hit {
                report.matched.push(entry);
            } else {
                report.unmatched.push(entry);
            }
        }
    }
    report
}

/// Complex roots by Durand–Kerner iteration, then Newton polishing.
pub fn polynomial_roots(p: &TPoly) -> Vec<Complex64> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = bigint_to_f64(p.leading_coeff().expect("nonzero"));
    let monic: Vec<Complex64> = p
        .coeffs()
        .iter()
        .map(|c| Complex64::new(bigint_to_f64(c) / lead, 0.0))
        .collect();
    let eval = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let deriv = |z: Complex64| {
        monic
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| acc * z + c * i as f64)
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..deg).map(|i| seed.powu(i as u32)).collect();
    for _ in 0..1000 {
        let mut delta = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    for z in &mut roots {
        for _ in 0..5 {
            let d = deriv(*z);
            if d.norm() == 0.0 {
                break;
            }
            *z -= eval(*z) / d;
        }
    }
    roots
}
