//! k-uniform hypergraphs, the hyperpath / hyperstar / starlike families, and the
//! homogeneous eigenvalue system whose resultant is the characteristic polynomial.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};
use crate::multipoly::{LambdaCoeff, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniformHypergraph {
    k: usize,
    num_vertices: usize,
    edges: Vec<Vec<usize>>,
}

impl UniformHypergraph {
    /// Validates and builds a hypergraph. Each edge is stored sorted.
    pub fn new(k: usize, num_vertices: usize, edges: Vec<Vec<usize>>) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidParameter(format!("uniformity k = {k} must be at least 2")));
        }
        let mut seen = BTreeSet::new();
        let mut sorted_edges = Vec::with_capacity(edges.len());
        for mut e in edges {
            e.sort_unstable();
            let distinct = e.windows(2).all(|w| w[0] != w[1]);
            if e.len() != k || !distinct {
                return Err(Error::InvalidParameter(format!("edge {e:?} does not have {k} distinct vertices")));
            }
            if let Some(&v) = e.iter().find(|&&v| v >= num_vertices) {
                return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
            }
            if !seen.insert(e.clone()) {
                return Err(Error::InvalidParameter(format!("duplicate edge {e:?}")));
            }
            sorted_edges.push(e);
        }
        Ok(UniformHypergraph {
            k,
            num_vertices,
            edges: sorted_edges,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_vertices(&self) -> usize {
        self.num_vertices
    }

    pub fn edges(&self) -> &[Vec<usize>] {
        &self.edges
    }

    /// Indices of the edges containing `v`.
    pub fn incident_edges(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges
            .iter()
            .enumerate()
            .filter(move |(_, e)| e.contains(&v))
            .map(|(i, _)| i)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incident_edges(v).count()
    }

    pub fn is_connected(&self) -> bool {
        let all: Vec<usize> = (0..self.num_vertices).collect();
        components_count(&all, self.edges.iter().map(|e| e.as_slice())) <= 1
    }

    /// Vertices contained in exactly one edge.
    pub fn cored_vertices(&self) -> BTreeSet<usize> {
        (0..self.num_vertices).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Whether removing `v` (and shrinking its edges to `e \ {v}`) disconnects the rest.
    pub fn is_cut_vertex(&self, v: usize) -> Result<bool> {
        if v >= self.num_vertices {
            return Err(Error::InvalidParameter(format!("vertex {v} out of range")));
        }
        if !self.is_connected() {
            return Err(Error::Disconnected);
        }
        let rest: Vec<usize> = (0..self.num_vertices).filter(|&u| u != v).collect();
        let shrunk: Vec<Vec<usize>> = self
            .edges
            .iter()
            .map(|e| e.iter().copied().filter(|&u| u != v).collect())
            .collect();
        Ok(components_count(&rest, shrunk.iter().map(|e| e.as_slice())) > 1)
    }

    /// Deletes `w` together with every edge through it; remaining vertices are
    /// relabelled in increasing order.
    pub fn delete_vertex(&self, w: usize) -> UniformHypergraph {
        let relabel = |u: usize| if u > w { u - 1 } else { u };
        let edges = self
            .edges
            .iter()
            .filter(|e| !e.contains(&w))
            .map(|e| e.iter().map(|&u| relabel(u)).collect())
            .collect();
        UniformHypergraph {
            k: self.k,
            num_vertices: self.num_vertices - 1,
            edges,
        }
    }

    /// Applies a vertex permutation `v -> perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<UniformHypergraph> {
        let edges = self
            .edges
            .iter()
            .map(|e| e.iter().map(|&u| perm[u]).collect())
            .collect();
        UniformHypergraph::new(self.k, self.num_vertices, edges)
    }

    /// Sum over the vertex count `r` of the resultant degree `r (k-1)^(r-1)`.
    pub fn charpoly_degree(&self) -> BigInt {
        let r = self.num_vertices as u32;
        BigInt::from(r) * num_traits::pow::Pow::pow(BigInt::from(self.k - 1), r - 1)
    }
}

fn components_count<'a>(vertices: &[usize], edges: impl Iterator<Item = &'a [usize]>) -> usize {
    let max = vertices.iter().copied().max().map_or(0, |m| m + 1);
    let mut parent: Vec<usize> = (0..max).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for e in edges {
        for w in e.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let roots: BTreeSet<usize> = vertices.iter().map(|&v| find(&mut parent, v)).collect();
    roots.len()
}

/// Hyperpath with `n` edges: vertices `0..=n(k-1)`, edge `t` spans `(k-1)(t-1) ..= (k-1)t`.
pub fn make_hyperpath(n: usize, k: usize) -> Result<UniformHypergraph> {
    if n < 1 {
        return Err(Error::InvalidParameter("a hyperpath needs at least one edge".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("uniformity k = {k} must be at least 2")));
    }
    let edges = (1..=n)
        .map(|t| ((k - 1) * (t - 1)..=(k - 1) * t).collect())
        .collect();
    UniformHypergraph::new(k, n * (k - 1) + 1, edges)
}

/// Hyperpaths of the given lengths glued at vertex 0. Arm `i` takes the next
/// `n_i (k-1)` fresh ids in order, and its first edge contains vertex 0.
pub fn make_starlike(k: usize, arm_lengths: &[usize]) -> Result<UniformHypergraph> {
    if arm_lengths.is_empty() {
        return Err(Error::InvalidParameter("a starlike hypergraph needs at least one arm".into()));
    }
    if k < 2 {
        return Err(Error::InvalidParameter(format!("uniformity k = {k} must be at least 2")));
    }
    if arm_lengths.contains(&0) {
        return Err(Error::InvalidParameter("arm lengths must be at least 1".into()));
    }
    let mut edges = Vec::new();
    let mut base = 1;
    for &n in arm_lengths {
        let global = |local: usize| if local == 0 { 0 } else { base + local - 1 };
        for t in 1..=n {
            edges.push(((k - 1) * (t - 1)..=(k - 1) * t).map(global).collect());
        }
        base += n * (k - 1);
    }
    UniformHypergraph::new(k, base, edges)
}

pub fn make_hyperstar(m: usize, k: usize) -> Result<UniformHypergraph> {
    make_starlike(k, &vec![1; m])
}

/// Value substituted for λ when building the eigenvalue system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LambdaValue {
    Symbolic,
    Value(BigRational),
}

/// One homogeneous polynomial per vertex: `λ x_v^(k-1) - Σ_{v ∈ e} x_{e \ v}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EigenSystem {
    pub variables: Vec<usize>,
    pub polys: Vec<Polynomial<LambdaCoeff>>,
}

impl EigenSystem {
    /// Numeric system at `λ = lambda0`.
    pub fn at(&self, lambda0: &BigRational) -> Vec<Polynomial<BigRational>> {
        self.polys.iter().map(|p| p.at(lambda0)).collect()
    }
}

pub fn eigen_system(h: &UniformHypergraph, lambda: &LambdaValue) -> EigenSystem {
    let r = h.num_vertices;
    let diag = match lambda {
        LambdaValue::Symbolic => LambdaCoeff::lambda(),
        LambdaValue::Value(x) => LambdaCoeff::constant(x.clone()),
    };
    let minus_one = LambdaCoeff::constant(-BigRational::one());
    let polys = (0..r)
        .map(|v| {
            let mut p = Polynomial::zero(r);
            let mut m = vec![0; r];
            m[v] = (h.k - 1) as u32;
            p.add_term(m, diag.clone());
            for e in h.edges.iter().filter(|e| e.contains(&v)) {
                let mut m = vec![0; r];
                for &u in e.iter().filter(|&&u| u != v) {
                    m[u] = 1;
                }
                p.add_term(m, minus_one.clone());
            }
            p
        })
        .collect();
    EigenSystem {
        variables: (0..r).collect(),
        polys,
    }
}

/// The pieces of the eigenvalue system after distinguishing a vertex `w`:
/// `f_w` and `f_v` set `x_w = 1`, `F̄_v` sets `x_w = 0` (for `v ≠ w`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PoissonSplit {
    pub w: usize,
    /// Remaining variables (vertex ids other than `w`, increasing).
    pub variables: Vec<usize>,
    pub f_w: Polynomial<LambdaCoeff>,
    pub f: Vec<Polynomial<LambdaCoeff>>,
    pub f_bar: Vec<Polynomial<LambdaCoeff>>,
}

pub fn poisson_split(h: &UniformHypergraph, w: usize, lambda: &LambdaValue) -> Result<PoissonSplit> {
    if w >= h.num_vertices {
        return Err(Error::InvalidParameter(format!("vertex {w} out of range")));
    }
    let sys = eigen_system(h, lambda);
    let mut f = Vec::new();
    let mut f_bar = Vec::new();
    let mut f_w = None;
    for (v, p) in sys.polys.iter().enumerate() {
        if v == w {
            f_w = Some(p.substitute_binary(w, true));
        } else {
            f.push(p.substitute_binary(w, true));
            f_bar.push(p.substitute_binary(w, false));
        }
    }
    Ok(PoissonSplit {
        w,
        variables: (0..h.num_vertices).filter(|&v| v != w).collect(),
        f_w: f_w.expect("w is a vertex"),
        f,
        f_bar,
    })
}
