//! Built-in verification suite, one check per acceptance criterion.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow};
use serde::Serialize;

use crate::charpoly::{
    charpoly_path, charpoly_single_edge, charpoly_star, charpoly_starlike, mu, power_hypergraph_root_check, Family,
};
use crate::chipfiring::{classify_stable, count_strata, critical_configs_complete, stable_configs_hyperpath, Configuration};
use crate::document::known_notes;
use crate::error::Result;
use crate::firing_graph::{build_firing_graph, check_firing_invariants, validate_structure};
use crate::hypergraph::{make_hyperpath, UniformHypergraph};
use crate::oracle::verify_against;
use crate::polyalg::{FactoredCharPoly, TPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    /// Skips the 210-column oracle comparison on the two-edge path.
    Quick,
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    pub level: Level,
    /// Negative control: perturbs the closed forms handed to the oracle.
    pub corrupt_closed_form: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub millis: u128,
    /// Set when the failure is a closed-form / oracle disagreement.
    pub oracle_mismatch: bool,
}

pub const CRITERIA: [(u8, &str); 10] = [
    (1, "hyperpath examples"),
    (2, "degree law"),
    (3, "polynomiality"),
    (4, "critical configurations on K_k"),
    (5, "strata counts"),
    (6, "firing-graph structure"),
    (7, "oracle equivalence"),
    (8, "consistency triangle"),
    (9, "starlike degree discrepancy"),
    (10, "power-hypergraph roots"),
];

pub fn run_all(opts: Options) -> Vec<CriterionResult> {
    CRITERIA.iter().map(|&(id, _)| run_criterion(id, opts)).collect()
}

pub fn run_criterion(id: u8, opts: Options) -> CriterionResult {
    let name = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, n)| *n)
        .unwrap_or("unknown");
    let start = Instant::now();
    let outcome = match id {
        1 => hyperpath_examples(),
        2 => degree_law(),
        3 => polynomiality(),
        4 => critical_counts(),
        5 => strata_counts(),
        6 => firing_structure(),
        7 => oracle_equivalence(opts),
        8 => consistency_triangle(),
        9 => starlike_discrepancy(),
        10 => root_diagnostic(),
        _ => Err(format!("no criterion {id}")),
    };
    let (passed, detail, oracle_mismatch) = match outcome {
        Ok(d) => (true, d, false),
        Err(d) => {
            let mismatch = id == 7 && d.starts_with(MISMATCH);
            (false, d, mismatch)
        }
    };
    CriterionResult {
        id,
        name,
        passed,
        detail,
        millis: start.elapsed().as_millis(),
        oracle_mismatch,
    }
}

const MISMATCH: &str = "mismatch";

type Check = std::result::Result<String, String>;

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn expect_fcp(k: u32, lambda: i64, factors: &[(&[i64], i64)]) -> FactoredCharPoly {
    FactoredCharPoly::from_parts(
        k,
        big(lambda),
        factors.iter().map(|(c, e)| (TPoly::from_i64s(c), big(*e))),
    )
    .expect("literal factorization is valid")
}

fn err_str<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

/// `(n, k, expected, degree)` for the seven worked hyperpath examples.
pub fn hyperpath_example_table() -> Vec<(usize, usize, FactoredCharPoly, i64)> {
    vec![
        (1, 3, expect_fcp(3, 3, &[(&[-1, 1], 3)]), 12),
        (2, 3, expect_fcp(3, 35, &[(&[-1, 1], 6), (&[-2, 1], 9)]), 80),
        (3, 3, expect_fcp(3, 151, &[(&[-1, 1], 27), (&[-2, 1], 18), (&[1, -3, 1], 27)]), 448),
        (
            4,
            3,
            expect_fcp(3, 891, &[(&[-1, 1], 201), (&[-2, 1], 81), (&[-3, 1], 81), (&[1, -3, 1], 54)]),
            2304,
        ),
        (1, 4, expect_fcp(4, 44, &[(&[-1, 1], 16)]), 108),
        (2, 4, expect_fcp(4, 2671, &[(&[-1, 1], 352), (&[-2, 1], 256)]), 5103),
        (
            3,
            4,
            expect_fcp(4, 95774, &[(&[-1, 1], 11440), (&[-2, 1], 5632), (&[1, -3, 1], 4096)]),
            196830,
        ),
    ]
}

fn hyperpath_examples() -> Check {
    for (n, k, want, degree) in hyperpath_example_table() {
        let got = charpoly_path(n, k).map_err(err_str)?;
        if got != want {
            return Err(format!("P_{n}^{k}: got {got:?}"));
        }
        if got.degree() != big(degree) {
            return Err(format!("P_{n}^{k}: degree {}", got.degree()));
        }
    }
    Ok("7 examples match".into())
}

/// Integer partitions of `total` as non-increasing lists.
fn partitions(total: usize, max: usize) -> Vec<Vec<usize>> {
    if total == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max.min(total)).rev() {
        for mut rest in partitions(total - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every family instance of the sweep: paths `n ≤ 5`, stars `m ≤ 4`, and arm
/// lists with at most six edges in total, for `k ∈ {3, 4, 5}`.
pub fn sweep() -> Vec<(usize, Family)> {
    let mut out = Vec::new();
    for k in 3..=5 {
        out.extend((1..=5).map(|n| (k, Family::Path { n })));
        out.extend((1..=4).map(|m| (k, Family::Star { m })));
        for total in 1..=6 {
            out.extend(partitions(total, total).into_iter().map(|arms| (k, Family::Starlike { arms })));
        }
    }
    out
}

fn sweep_results() -> Vec<(usize, Family, Result<FactoredCharPoly>, UniformHypergraph)> {
    sweep()
        .into_iter()
        .map(|(k, fam)| {
            let f = fam.charpoly(k);
            let h = fam.hypergraph(k).expect("sweep parameters are valid");
            (k, fam, f, h)
        })
        .collect()
}

fn degree_law() -> Check {
    let results = sweep_results();
    for (k, fam, f, h) in &results {
        let f = f.as_ref().map_err(|e| format!("k={k} {fam}: {e}"))?;
        if f.degree() != h.charpoly_degree() {
            return Err(format!("k={k} {fam}: degree {} vs {}", f.degree(), h.charpoly_degree()));
        }
    }
    Ok(format!("{} instances", results.len()))
}

fn polynomiality() -> Check {
    let results = sweep_results();
    let failures: Vec<String> = results
        .iter()
        .filter_map(|(k, fam, f, _)| f.as_ref().err().map(|e| format!("k={k} {fam}: {e}")))
        .collect();
    if failures.is_empty() {
        Ok(format!("{} instances finalize", results.len()))
    } else {
        Err(failures.join("; "))
    }
}

fn critical_counts() -> Check {
    let mut counts = Vec::new();
    for k in 2..=6usize {
        let n = critical_configs_complete(k).map_err(err_str)?.len();
        if n != k.pow(k as u32 - 2) {
            return Err(format!("K_{k}: {n} critical configurations"));
        }
        counts.push(n);
    }
    Ok(format!("counts {counts:?}"))
}

fn strata_counts() -> Check {
    for (n, k) in [(1, 3), (2, 3), (3, 3), (1, 4), (2, 4)] {
        let counted = count_strata(n, k).map_err(err_str)?;
        let formula: Vec<BigInt> = (0..=n).map(|s| mu(n, k, s)).collect::<Result<_>>().map_err(err_str)?;
        let counted_big: Vec<BigInt> = counted.iter().map(|&c| BigInt::from(c)).collect();
        if counted_big != formula {
            return Err(format!("P_{n}^{k}: counted {counted:?}, formula {formula:?}"));
        }
    }
    Ok("5 cases".into())
}

fn firing_structure() -> Check {
    let mut roots = 0;
    for n in [2, 3] {
        let h = make_hyperpath(n, 3).map_err(err_str)?;
        for c0 in stable_configs_hyperpath(n, 3).map_err(err_str)? {
            let s = classify_stable(n, 3, &c0).map_err(err_str)?;
            let g = build_firing_graph(&h, &c0).map_err(err_str)?;
            let r = validate_structure(&g, s);
            if !r.ok() {
                return Err(format!("P_{n}^3 root {c0}: {}", r.violations.join("; ")));
            }
            let inv = check_firing_invariants(&g);
            if !inv.ok() {
                return Err(format!("P_{n}^3 root {c0}: {}", inv.violations.join("; ")));
            }
            roots += 1;
        }
    }
    let h = make_hyperpath(3, 3).map_err(err_str)?;
    let c0 = Configuration::with_omitted_bank(0, &[1, 1, 1, 1, 0, 0]).map_err(err_str)?;
    let g = build_firing_graph(&h, &c0).map_err(err_str)?;
    let r = validate_structure(&g, 2);
    let ok = r.ok()
        && g.nodes().len() == 13
        && r.cycles.len() == 2
        && r.cycles.iter().all(|c| c.len() == 3)
        && !r.g_prime.is_empty()
        && r.root_precedes_stable_tail;
    if !ok {
        return Err(format!("worked P_3^3 example: {r:?}"));
    }
    Ok(format!("{roots} roots; worked example has 13 nodes, 2 cycles, tail of {}", r.g_prime.len()))
}

fn corrupt(f: &FactoredCharPoly) -> FactoredCharPoly {
    FactoredCharPoly::from_parts(
        f.k(),
        f.lambda_exponent() + BigInt::one(),
        f.factors().iter().map(|(p, e)| (p.clone(), e.clone())),
    )
    .expect("still a polynomial")
}

fn oracle_equivalence(opts: Options) -> Check {
    let lambdas = vec![
        BigRational::from_integer(big(2)),
        BigRational::from_integer(big(3)),
        BigRational::new(big(5), big(2)),
        BigRational::from_integer(big(7)),
    ];
    let mut cases = vec![
        ("single edge k=3", make_hyperpath(1, 3), charpoly_single_edge(3)),
        ("single edge k=4", make_hyperpath(1, 4), charpoly_single_edge(4)),
    ];
    if opts.level == Level::Full {
        cases.push(("P_2^3", make_hyperpath(2, 3), charpoly_path(2, 3)));
    }
    let mut done = Vec::new();
    for (label, h, f) in cases {
        let h = h.map_err(err_str)?;
        let mut f = f.map_err(err_str)?;
        if opts.corrupt_closed_form {
            f = corrupt(&f);
        }
        let report = verify_against(&h, &f, &lambdas).map_err(err_str)?;
        if let Some(bad) = report.entries.iter().find(|e| !e.equal) {
            return Err(format!(
                "{MISMATCH} on {label} at λ={}: closed form {} vs oracle {}",
                bad.lambda, bad.closed_form, bad.oracle
            ));
        }
        done.push(label);
    }
    let skipped = if opts.level == Level::Quick { " (P_2^3 skipped)" } else { "" };
    Ok(format!("{}{skipped}", done.join(", ")))
}

fn consistency_triangle() -> Check {
    for k in 3..=5usize {
        for m in 1..=4 {
            let a = charpoly_starlike(k, &vec![1; m]).map_err(err_str)?;
            let b = charpoly_star(m, k).map_err(err_str)?;
            if a != b {
                return Err(format!("k={k}: starlike [1]^{m} differs from the {m}-edge star"));
            }
        }
        for n in 1..=5 {
            let a = charpoly_starlike(k, &[n]).map_err(err_str)?;
            let b = charpoly_path(n, k).map_err(err_str)?;
            if a != b {
                return Err(format!("k={k}: starlike [{n}] differs from the path"));
            }
        }
        let kb = BigInt::from(k);
        let km1 = BigInt::from(k - 1);
        let mu_k = BigInt::from(2 * k - 1) * Pow::pow(&km1, 2 * (k - 1)) - big(2) * Pow::pow(&kb, k - 1) * Pow::pow(&km1, k - 1)
            + Pow::pow(&kb, 2 * k - 3);
        let star = charpoly_star(2, k).map_err(err_str)?;
        if star.lambda_exponent() != &mu_k {
            return Err(format!("k={k}: two-edge star λ-exponent {} vs {mu_k}", star.lambda_exponent()));
        }
    }
    Ok("k = 3, 4, 5".into())
}

fn starlike_discrepancy() -> Check {
    let fam = Family::Starlike { arms: vec![1, 1, 2] };
    let f = charpoly_starlike(3, &[1, 1, 2]).map_err(err_str)?;
    let want = expect_fcp(
        3,
        999,
        &[(&[-1, 1], 75), (&[-2, 1], 63), (&[-3, 1], 27), (&[1, -3, 1], 54), (&[2, -4, 1], 81)],
    );
    if f != want {
        return Err(format!("got {f:?}"));
    }
    if f.degree() != big(2304) {
        return Err(format!("degree {}", f.degree()));
    }
    let notes = known_notes(&fam, 3);
    if notes.is_empty() {
        return Err("discrepancy note missing".into());
    }
    Ok(format!("degree 2304; note: {}", notes[0]))
}

fn root_diagnostic() -> Check {
    let mut roots = 0;
    for n in 1..=4 {
        let f = charpoly_path(n, 3).map_err(err_str)?;
        let r = power_hypergraph_root_check(&f, n, 1e-9);
        if !r.ok() {
            return Err(format!("P_{n}^3 unmatched roots {:?}", r.unmatched));
        }
        roots += r.matched.len();
    }
    Ok(format!("{roots} roots matched"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partitions_of_small_totals() {
        assert_eq!(partitions(3, 3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        let counts: Vec<usize> = (1..=6).map(|n| partitions(n, n).len()).collect();
        assert_eq!(counts, vec![1, 2, 3, 5, 7, 11]);
    }

    #[test]
    fn quick_suite_passes() {
        let opts = Options {
            level: Level::Quick,
            corrupt_closed_form: false,
        };
        for r in run_all(opts) {
            assert!(r.passed, "criterion {}: {}", r.id, r.detail);
        }
    }

    #[test]
    fn corruption_is_caught_as_an_oracle_mismatch() {
        let r = run_criterion(
            7,
            Options {
                level: Level::Quick,
                corrupt_closed_form: true,
            },
        );
        assert!(!r.passed);
        assert!(r.oracle_mismatch);
    }
}
