//! Dollar game on complete graphs and on k-uniform hypergraphs, criticality on
//! `K_k`, and the stratification of stable hyperpath configurations.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// Refuse exhaustive enumerations above this many configurations.
pub const ENUMERATION_BOUND: u64 = 10_000_000;

/// Chips on every vertex. The bank's entry is either tracked (and may go into
/// debt) or omitted, in which case arithmetic on it is a no-op.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Configuration {
    bank: usize,
    bank_tracked: bool,
    values: Vec<i64>,
}

impl Configuration {
    /// Bank entry omitted; `non_bank` lists the other vertices in increasing order.
    pub fn with_omitted_bank(bank: usize, non_bank: &[i64]) -> Result<Self> {
        if bank > non_bank.len() {
            return Err(Error::InvalidParameter(format!("bank {bank} out of range")));
        }
        if let Some(v) = non_bank.iter().find(|&&v| v < 0) {
            return Err(Error::InvalidParameter(format!("negative chip count {v}")));
        }
        let mut values = non_bank.to_vec();
        values.insert(bank, 0);
        Ok(Configuration {
            bank,
            bank_tracked: false,
            values,
        })
    }

    /// All entries given, bank included.
    pub fn with_tracked_bank(bank: usize, values: Vec<i64>) -> Result<Self> {
        if bank >= values.len() {
            return Err(Error::InvalidParameter(format!("bank {bank} out of range")));
        }
        if values.iter().enumerate().any(|(v, &c)| v != bank && c < 0) {
            return Err(Error::InvalidParameter("negative chip count off the bank".into()));
        }
        Ok(Configuration {
            bank,
            bank_tracked: true,
            values,
        })
    }

    pub fn bank(&self) -> usize {
        self.bank
    }

    pub fn bank_value(&self) -> Option<i64> {
        self.bank_tracked.then(|| self.values[self.bank])
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Chips on `v`; the omitted bank reads as 0.
    pub fn get(&self, v: usize) -> i64 {
        self.values[v]
    }

    pub fn non_bank_values(&self) -> Vec<i64> {
        self.values
            .iter()
            .enumerate()
            .filter(|&(v, _)| v != self.bank)
            .map(|(_, &c)| c)
            .collect()
    }

    /// ω(c): chips on the non-bank vertices.
    pub fn weight(&self) -> i64 {
        self.non_bank_values().iter().sum()
    }

    /// Total including a tracked bank.
    pub fn total(&self) -> i64 {
        self.weight() + self.bank_value().unwrap_or(0)
    }

    fn add(&mut self, v: usize, delta: i64) {
        if v != self.bank || self.bank_tracked {
            self.values[v] += delta;
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (v, c) in self.values.iter().enumerate() {
            if v > 0 {
                write!(f, ",")?;
            }
            if v == self.bank && !self.bank_tracked {
                write!(f, "•")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleGraph {
    adjacency: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn complete(k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("K_{k} needs k >= 2")));
        }
        let adjacency = (0..k).map(|v| (0..k).filter(|&u| u != v).collect()).collect();
        Ok(SimpleGraph { adjacency })
    }

    pub fn num_vertices(&self) -> usize {
        self.adjacency.len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }
}

fn check_size(len: usize, expected: usize) -> Result<()> {
    if len != expected {
        return Err(Error::InvalidParameter(format!(
            "configuration has {len} entries, expected {expected}"
        )));
    }
    Ok(())
}

pub fn is_stable_graph(g: &SimpleGraph, c: &Configuration) -> bool {
    (0..g.num_vertices())
        .filter(|&v| v != c.bank)
        .all(|v| (0..g.degree(v) as i64).contains(&c.get(v)))
}

/// Non-bank vertices holding at least their degree.
fn unstable_vertices_graph(g: &SimpleGraph, c: &Configuration) -> Vec<usize> {
    (0..g.num_vertices())
        .filter(|&v| v != c.bank && c.get(v) >= g.degree(v) as i64)
        .collect()
}

/// Fires `v`: it loses one chip per incident edge, each neighbour gains one.
/// The bank may only fire on a stable configuration.
pub fn fire_graph(g: &SimpleGraph, c: &Configuration, v: usize) -> Result<Configuration> {
    check_size(c.len(), g.num_vertices())?;
    if v >= g.num_vertices() {
        return Err(Error::IllegalFiring(format!("vertex {v} out of range")));
    }
    if v == c.bank {
        if !is_stable_graph(g, c) {
            return Err(Error::IllegalFiring("bank fires only on stable configurations".into()));
        }
    } else if c.get(v) < g.degree(v) as i64 {
        return Err(Error::IllegalFiring(format!("vertex {v} holds {} < deg {}", c.get(v), g.degree(v))));
    }
    let mut out = c.clone();
    out.add(v, -(g.degree(v) as i64));
    for &u in g.neighbors(v) {
        out.add(u, 1);
    }
    Ok(out)
}

/// Fires unstable non-bank vertices until stable; `choose` picks an index into
/// the current list of unstable vertices (sorted increasingly).
pub fn stabilize_with<F>(g: &SimpleGraph, c: &Configuration, mut choose: F) -> Result<Configuration>
where
    F: FnMut(&[usize]) -> usize,
{
    let mut cur = c.clone();
    loop {
        let unstable = unstable_vertices_graph(g, &cur);
        if unstable.is_empty() {
            return Ok(cur);
        }
        let v = unstable[choose(&unstable) % unstable.len()];
        cur = fire_graph(g, &cur, v)?;
    }
}

pub fn stabilize(g: &SimpleGraph, c: &Configuration) -> Result<Configuration> {
    stabilize_with(g, c, |_| 0)
}

/// Recurrence test by iterating `c ↦ stabilize(fire bank on c)`: the map acts on a
/// finite set, so `c` is recurrent exactly when its orbit comes back to it.
pub fn is_critical_graph(g: &SimpleGraph, c: &Configuration) -> Result<bool> {
    check_size(c.len(), g.num_vertices())?;
    if !is_stable_graph(g, c) {
        return Err(Error::NotStable);
    }
    let start = forget_bank(c);
    let mut seen = HashSet::new();
    let mut cur = start.clone();
    loop {
        let fired = fire_graph(g, &cur, cur.bank)?;
        cur = stabilize(g, &fired)?;
        if cur == start {
            return Ok(true);
        }
        if !seen.insert(cur.clone()) {
            return Ok(false);
        }
    }
}

fn forget_bank(c: &Configuration) -> Configuration {
    let mut out = c.clone();
    out.bank_tracked = false;
    out.values[out.bank] = 0;
    out
}

pub fn is_critical_complete(k: usize, c: &Configuration) -> Result<bool> {
    is_critical_graph(&SimpleGraph::complete(k)?, c)
}

/// Iterates all vectors in `[0, base)^len` in lexicographic order.
fn for_each_vector<F: FnMut(&[i64])>(len: usize, base: i64, mut f: F) {
    let mut v = vec![0i64; len];
    loop {
        f(&v);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < base {
                break;
            }
            v[i] = 0;
        }
    }
}

fn guard(base: u64, len: usize) -> Result<()> {
    let count = (0..len).try_fold(1u64, |acc, _| acc.checked_mul(base));
    match count {
        Some(c) if c <= ENUMERATION_BOUND => Ok(()),
        _ => Err(Error::EnumerationTooLarge {
            requested: format!("{base}^{len}"),
            bound: ENUMERATION_BOUND,
        }),
    }
}

/// All critical configurations of `K_k` with bank 0 (omitted), in lexicographic
/// order of the non-bank entries.
pub fn critical_configs_complete(k: usize) -> Result<Vec<Configuration>> {
    let g = SimpleGraph::complete(k)?;
    guard((k - 1) as u64, k - 1)?;
    let mut out = Vec::new();
    let mut err = None;
    for_each_vector(k - 1, (k - 1) as i64, |vals| {
        if err.is_some() {
            return;
        }
        let c = Configuration::with_omitted_bank(0, vals).expect("non-negative");
        match is_critical_graph(&g, &c) {
            Ok(true) => out.push(c),
            Ok(false) => {}
            Err(e) => err = Some(e),
        }
    });
    match err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

pub fn is_stable_hyper(h: &UniformHypergraph, c: &Configuration) -> bool {
    let thr = (h.k() - 1) as i64;
    (0..h.num_vertices())
        .filter(|&v| v != c.bank)
        .all(|v| (0..thr).contains(&c.get(v)))
}

/// Fires `v` along edge `e` (an index into `h.edges()`): `v` loses `k-1` chips and
/// every other vertex of `e` gains one.
pub fn fire_hyper(h: &UniformHypergraph, c: &Configuration, v: usize, e: usize) -> Result<Configuration> {
    check_size(c.len(), h.num_vertices())?;
    let edge = h
        .edges()
        .get(e)
        .ok_or_else(|| Error::IllegalFiring(format!("edge {e} out of range")))?;
    if !edge.contains(&v) {
        return Err(Error::IllegalFiring(format!("vertex {v} is not in edge {e}")));
    }
    let thr = (h.k() - 1) as i64;
    if v == c.bank {
        if !is_stable_hyper(h, c) {
            return Err(Error::IllegalFiring("bank fires only on stable configurations".into()));
        }
    } else if c.get(v) < thr {
        return Err(Error::IllegalFiring(format!("vertex {v} holds {} < {thr}", c.get(v))));
    }
    let mut out = c.clone();
    out.add(v, -thr);
    for &u in edge.iter().filter(|&&u| u != v) {
        out.add(u, 1);
    }
    Ok(out)
}

/// Classifies stable configurations of `P_n^k` (bank 0) into strata `B_0..B_n`.
#[derive(Clone, Debug)]
pub struct StrataClassifier {
    n: usize,
    k: usize,
    critical: HashSet<Vec<i64>>,
}

impl StrataClassifier {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        let critical = critical_configs_complete(k)?
            .into_iter()
            .map(|c| c.non_bank_values())
            .collect();
        Ok(StrataClassifier { n, k, critical })
    }

    /// Number of leading edges whose restriction (with the edge's first vertex as
    /// bank) is critical on `K_k`.
    pub fn classify(&self, c: &Configuration) -> Result<usize> {
        let (n, k) = (self.n, self.k);
        check_size(c.len(), n * (k - 1) + 1)?;
        if c.bank != 0 {
            return Err(Error::InvalidParameter("hyperpath configurations use bank 0".into()));
        }
        let thr = (k - 1) as i64;
        if (1..c.len()).any(|v| !(0..thr).contains(&c.get(v))) {
            return Err(Error::NotStable);
        }
        let s = (1..=n)
            .take_while(|&i| {
                let tail: Vec<i64> = ((i - 1) * (k - 1) + 1..=i * (k - 1)).map(|v| c.get(v)).collect();
                self.critical.contains(&tail)
            })
            .count();
        Ok(s)
    }
}

pub fn classify_stable(n: usize, k: usize, c: &Configuration) -> Result<usize> {
    StrataClassifier::new(n, k)?.classify(c)
}

/// Exhaustive `[|B_0|, …, |B_n|]` over all stable configurations of `P_n^k`.
pub fn count_strata(n: usize, k: usize) -> Result<Vec<u64>> {
    if n < 1 || k < 2 {
        return Err(Error::InvalidParameter(format!("need n >= 1 and k >= 2, got n={n}, k={k}")));
    }
    guard((k - 1) as u64, n * (k - 1))?;
    let classifier = StrataClassifier::new(n, k)?;
    let mut counts = vec![0u64; n + 1];
    for_each_vector(n * (k - 1), (k - 1) as i64, |vals| {
        let c = Configuration::with_omitted_bank(0, vals).expect("non-negative");
        counts[classifier.classify(&c).expect("stable by construction")] += 1;
    });
    Ok(counts)
}

/// Every stable configuration of `P_n^k` with bank 0.
pub fn stable_configs_hyperpath(n: usize, k: usize) -> Result<Vec<Configuration>> {
    guard((k - 1) as u64, n * (k - 1))?;
    let mut out = Vec::new();
    for_each_vector(n * (k - 1), (k - 1) as i64, |vals| {
        out.push(Configuration::with_omitted_bank(0, vals).expect("non-negative"));
    });
    Ok(out)
}
