//! Firing graphs of hyperpaths: construction from a stable root and checks of the
//! cycle / tail structure and of the joint-vertex and weight invariants.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::chipfiring::{fire_hyper, is_stable_hyper, Configuration};
use crate::error::{Error, Result};
use crate::hypergraph::UniformHypergraph;

/// `from --(vertex, edge)--> to`; node and edge ids are indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Arrow {
    pub from: usize,
    pub to: usize,
    pub vertex: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiringGraph {
    n: usize,
    k: usize,
    nodes: Vec<Configuration>,
    index: HashMap<Configuration, usize>,
    arrows: Vec<Arrow>,
    /// First arrow that reached each node; `None` for the root.
    parent: Vec<Option<usize>>,
}

impl FiringGraph {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Node 0 is the root.
    pub fn nodes(&self) -> &[Configuration] {
        &self.nodes
    }

    pub fn root(&self) -> &Configuration {
        &self.nodes[0]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn node_id(&self, c: &Configuration) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn out_arrows(&self, node: usize) -> impl Iterator<Item = &Arrow> + '_ {
        self.arrows.iter().filter(move |a| a.from == node)
    }

    /// Arrows along the first-discovery path from the root to `node`.
    pub fn path_to(&self, node: usize) -> Vec<Arrow> {
        let mut path = Vec::new();
        let mut cur = node;
        while let Some(a) = self.parent[cur] {
            path.push(self.arrows[a]);
            cur = self.arrows[a].from;
        }
        path.reverse();
        path
    }

    pub fn reachable_from(&self, start: usize) -> BTreeSet<usize> {
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for a in self.out_arrows(u) {
                if seen.insert(a.to) {
                    queue.push_back(a.to);
                }
            }
        }
        seen
    }

    /// DOT text: node labels are configurations, arrow labels `(vertex, e_j)`.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph firing {\n");
        for (i, c) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{c}\"];");
        }
        for a in &self.arrows {
            let _ = writeln!(out, "  n{} -> n{} [label=\"({}, e{})\"];", a.from, a.to, a.vertex, a.edge + 1);
        }
        out.push_str("}\n");
        out
    }
}

/// The vertex fired at an unstable node: the largest non-bank vertex holding at
/// least `k-1` chips.
fn fired_vertex(h: &UniformHypergraph, c: &Configuration) -> Option<usize> {
    let thr = (h.k() - 1) as i64;
    (1..h.num_vertices()).rev().find(|&v| c.get(v) >= thr)
}

/// Builds the firing graph of the hyperpath `h` (bank 0) from a stable root: fire
/// the bank on the first edge, then at every new unstable node fire its largest
/// loaded vertex once on each edge containing it, until no new unstable node
/// appears. Nodes are identified by value.
pub fn build_firing_graph(h: &UniformHypergraph, c0: &Configuration) -> Result<FiringGraph> {
    if c0.len() != h.num_vertices() || c0.bank() != 0 {
        return Err(Error::InvalidParameter("root must be a bank-0 configuration on the hyperpath".into()));
    }
    if !is_stable_hyper(h, c0) {
        return Err(Error::NotStable);
    }
    let k = h.k();
    let mut g = FiringGraph {
        n: h.edges().len(),
        k,
        nodes: vec![c0.clone()],
        index: HashMap::from([(c0.clone(), 0)]),
        arrows: Vec::new(),
        parent: vec![None],
    };
    let mut frontier = VecDeque::new();
    let add = |g: &mut FiringGraph, from: usize, to_cfg: Configuration, vertex: usize, edge: usize| {
        let arrow_id = g.arrows.len();
        let (to, new) = match g.index.get(&to_cfg) {
            Some(&id) => (id, false),
            None => {
                let id = g.nodes.len();
                g.nodes.push(to_cfg.clone());
                g.index.insert(to_cfg, id);
                g.parent.push(Some(arrow_id));
                (id, true)
            }
        };
        g.arrows.push(Arrow { from, to, vertex, edge });
        new.then_some(to)
    };
    let bar = fire_hyper(h, c0, 0, 0)?;
    if let Some(id) = add(&mut g, 0, bar, 0, 0) {
        frontier.push_back(id);
    }
    while let Some(u) = frontier.pop_front() {
        let c = g.nodes[u].clone();
        let Some(v) = fired_vertex(h, &c) else {
            continue;
        };
        for e in h.incident_edges(v).collect::<Vec<_>>() {
            let next = fire_hyper(h, &c, v, e)?;
            if let Some(id) = add(&mut g, u, next, v, e) {
                frontier.push_back(id);
            }
        }
    }
    Ok(g)
}

/// `c ≺ c′`: lighter first; at equal weight, the one that is larger at the first
/// vertex (in `order`) where they differ. Bank entries are ignored.
pub fn anti_lex_less(c: &Configuration, c_prime: &Configuration, order: &[usize]) -> bool {
    let (w, w_prime) = (c.weight(), c_prime.weight());
    if w != w_prime {
        return w < w_prime;
    }
    order
        .iter()
        .filter(|&&v| v != c.bank())
        .map(|&v| (c.get(v), c_prime.get(v)))
        .find(|(a, b)| a != b)
        .is_some_and(|(a, b)| a > b)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    /// Length-`k` cycles found, each as node ids starting at its anchor.
    pub cycles: Vec<Vec<usize>>,
    /// Nodes reachable from the first arrow that leaves the cycle chain.
    pub g_prime: BTreeSet<usize>,
    /// The root precedes every stable node of the tail.
    pub root_precedes_stable_tail: bool,
    /// The root precedes every node of the tail.
    pub root_precedes_all_tail: bool,
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn detected_stratum(&self) -> usize {
        self.cycles.len()
    }

    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Walks the chain of cycles: cycle `j+1` starts at anchor `a_j` (the root for
/// `j = 0`, otherwise the node where the joint vertex `j(k-1)` fires) and follows
/// arrows on edge `e_{j+1}`. The first failed trace marks the start of the tail.
pub fn validate_structure(fg: &FiringGraph, s: usize) -> StructureReport {
    let (n, k) = (fg.n, fg.k);
    let mut report = StructureReport::default();
    let mut anchor = 0;
    let mut tail_entry = None;
    for j in 0..n {
        let arrow_on = |node: usize| fg.out_arrows(node).find(|a| a.edge == j).copied();
        let Some(first) = arrow_on(anchor) else {
            report.violations.push(format!("anchor {} has no arrow on e{}", fg.nodes[anchor], j + 1));
            break;
        };
        let mut cycle = vec![anchor];
        let mut fired = vec![first];
        let mut cur = first.to;
        while cur != anchor && cycle.len() <= k {
            cycle.push(cur);
            match arrow_on(cur) {
                Some(a) => {
                    fired.push(a);
                    cur = a.to;
                }
                None => break,
            }
        }
        if cur != anchor || cycle.len() != k {
            tail_entry = Some(first.to);
            break;
        }
        report.cycles.push(cycle);
        if j + 1 == n {
            break;
        }
        let joint = (j + 1) * (k - 1);
        match fired.iter().find(|a| a.vertex == joint) {
            Some(a) => anchor = a.from,
            None => {
                report.violations.push(format!("joint vertex {joint} never fires on cycle {}", j + 1));
                break;
            }
        }
    }
    if let Some(entry) = tail_entry {
        report.g_prime = fg.reachable_from(entry);
    }

    let detected = report.detected_stratum();
    if detected != s {
        report.violations.push(format!("found {detected} cycles of length {k}, expected {s}"));
    }
    if report.g_prime.is_empty() != (s == n) {
        report.violations.push(format!(
            "tail has {} nodes with s = {s}, n = {n}",
            report.g_prime.len()
        ));
    }
    let cycle_nodes: BTreeSet<usize> = report.cycles.iter().flatten().copied().collect();
    for a in &fg.arrows {
        if report.g_prime.contains(&a.from) && cycle_nodes.contains(&a.to) {
            report.violations.push(format!(
                "tail node {} points back to cycle node {}",
                fg.nodes[a.from], fg.nodes[a.to]
            ));
        }
    }
    let order: Vec<usize> = (0..fg.nodes[0].len()).collect();
    let root = &fg.nodes[0];
    let h_thr = (k - 1) as i64;
    let is_stable = |c: &Configuration| (1..c.len()).all(|v| c.get(v) < h_thr);
    report.root_precedes_all_tail = true;
    report.root_precedes_stable_tail = true;
    for &id in &report.g_prime {
        let c = &fg.nodes[id];
        if !anti_lex_less(root, c, &order) {
            report.root_precedes_all_tail = false;
            if is_stable(c) {
                report.root_precedes_stable_tail = false;
            }
            report.violations.push(format!("root does not precede tail node {c}"));
        }
    }
    report
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct InvariantReport {
    pub violations: Vec<String>,
}

impl InvariantReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// (i) joint vertices `t(k-1)` fire at `c` exactly when `c(t(k-1)) = k-1`;
/// (ii) `ω(c) ≥ ω(c_0)` everywhere, with equality exactly when each of
/// `1..=k-1` fired once on the first edge along the discovery path.
pub fn check_firing_invariants(fg: &FiringGraph) -> InvariantReport {
    let (n, k) = (fg.n, fg.k);
    let thr = (k - 1) as i64;
    let mut report = InvariantReport::default();
    for (id, c) in fg.nodes.iter().enumerate() {
        let fired: BTreeSet<usize> = fg.out_arrows(id).filter(|a| a.vertex != 0).map(|a| a.vertex).collect();
        for t in 1..=n {
            let joint = t * (k - 1);
            if fired.contains(&joint) != (c.get(joint) == thr) {
                report.violations.push(format!(
                    "node {c}: joint vertex {joint} holds {} but fired = {}",
                    c.get(joint),
                    fired.contains(&joint)
                ));
            }
        }
    }
    let w0 = fg.nodes[0].weight();
    for (id, c) in fg.nodes.iter().enumerate() {
        let w = c.weight();
        if w < w0 {
            report.violations.push(format!("node {c} has weight {w} < {w0}"));
        }
        if id == 0 {
            continue;
        }
        let mut counts = vec![0usize; k];
        for a in fg.path_to(id) {
            if a.edge == 0 && a.vertex != 0 {
                counts[a.vertex] += 1;
            }
        }
        let once_each = counts[1..].iter().all(|&x| x == 1);
        if (w == w0) != once_each {
            report.violations.push(format!(
                "node {c}: weight {w} vs root {w0}, first-edge firings {:?}",
                &counts[1..]
            ));
        }
    }
    report
}
