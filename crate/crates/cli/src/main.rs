use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use hyperres::charpoly::{mu, Family};
use hyperres::chipfiring::{count_strata, critical_configs_complete, StrataClassifier};
use hyperres::document::{render_latex, render_text, OutputDocument};
use hyperres::firing_graph::{build_firing_graph, check_firing_invariants, validate_structure};
use hyperres::hypergraph::make_hyperpath;
use hyperres::oracle::{parse_rational, verify_against};
use hyperres::selftest::{self, Level, Options};
use hyperres::{Configuration, Error};

#[derive(Parser)]
#[command(name = "hyperres", version, about = "Exact characteristic polynomials of uniform hyperpaths, hyperstars and starlike hypergraphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factored characteristic polynomial of a hypergraph family.
    Charpoly {
        #[command(subcommand)]
        family: FamilyArg,
        #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
        format: Format,
        /// Compare against the resultant oracle at these values of λ (e.g. 2, -3, 5/2).
        #[arg(long = "verify-at", num_args = 1.., allow_negative_numbers = true, global = true)]
        verify_at: Vec<String>,
        /// Write the result to a file instead of stdout.
        #[arg(long, global = true)]
        out: Option<PathBuf>,
    },
    /// Chip-firing utilities.
    Chipfire {
        #[command(subcommand)]
        cmd: ChipCmd,
    },
    /// Runs the built-in verification suite.
    Selftest {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        /// Perturb the closed forms before comparing them with the oracle.
        #[arg(long, hide = true)]
        corrupt_closed_form: bool,
    },
}

#[derive(Subcommand)]
enum FamilyArg {
    /// Loose path with N edges.
    Path { n: usize, k: usize },
    /// M edges sharing one vertex.
    Star { m: usize, k: usize },
    /// Paths of the given lengths glued at one vertex.
    Starlike {
        k: usize,
        #[arg(required = true)]
        arms: Vec<usize>,
    },
    /// A single edge.
    Edge { k: usize },
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Path { n, .. } => Family::Path { n },
            FamilyArg::Star { m, .. } => Family::Star { m },
            FamilyArg::Starlike { arms, .. } => Family::Starlike { arms },
            FamilyArg::Edge { .. } => Family::SingleEdge,
        }
    }
}

impl FamilyArg {
    fn k(&self) -> usize {
        match self {
            FamilyArg::Path { k, .. } | FamilyArg::Star { k, .. } | FamilyArg::Starlike { k, .. } | FamilyArg::Edge { k } => *k,
        }
    }
}

#[derive(Subcommand)]
enum ChipCmd {
    /// Critical configurations of the complete graph K_k (bank at vertex 0).
    Critical {
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Stratum sizes of the stable configurations of the hyperpath.
    Strata {
        n: usize,
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Builds and checks the firing graph rooted at a stable configuration.
    FiringGraph {
        n: usize,
        k: usize,
        /// Chips on vertices 1.. (the bank, vertex 0, is omitted).
        #[arg(long, value_delimiter = ',', required = true)]
        config: Vec<i64>,
        /// Write the graph in Graphviz format.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Quick,
    Full,
}

/// Failure with its exit status.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidParameter(_)
            | Error::Disconnected
            | Error::NotStable
            | Error::IllegalFiring(_)
            | Error::EnumerationTooLarge { .. }
            | Error::OracleTooLarge { .. } => 2,
            Error::NotPolynomial { .. } => 4,
            Error::DivisionNotExact | Error::ZeroDenominator | Error::DegenerateMinor => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: 1,
            message: e.to_string(),
        }
    }
}

fn fail(code: u8, message: impl Into<String>) -> Failure {
    Failure {
        code,
        message: message.into(),
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))?,
        None => println!("{text}"),
    }
    Ok(())
}

fn charpoly(family: FamilyArg, format: Format, verify_at: &[String], out: Option<&PathBuf>) -> Result<(), Failure> {
    let k = family.k();
    let family = Family::from(family);
    let f = family.charpoly(k)?;
    let lambdas = verify_at
        .iter()
        .map(|s| parse_rational(s))
        .collect::<Result<Vec<BigRational>, _>>()?;
    let report = if lambdas.is_empty() {
        None
    } else {
        Some(verify_against(&family.hypergraph(k)?, &f, &lambdas)?)
    };

    let text = match format {
        Format::Json => {
            let mut doc = OutputDocument::from_charpoly(&f, &family);
            doc.verification = report.clone();
            doc.to_json()
        }
        Format::Text | Format::Latex => {
            let mut s = if format == Format::Text { render_text(&f) } else { render_latex(&f) };
            if format == Format::Text {
                s.push_str(&format!("\ndegree {}", f.degree()));
                let doc = OutputDocument::from_charpoly(&f, &family);
                for note in &doc.metadata.notes {
                    s.push_str(&format!("\nnote: {note}"));
                }
                for e in report.iter().flat_map(|r| &r.entries) {
                    let verdict = if e.equal { "ok" } else { "MISMATCH" };
                    s.push_str(&format!("\nλ = {}: {verdict} (closed form {}, oracle {})", e.lambda, e.closed_form, e.oracle));
                }
            }
            s
        }
    };
    emit(&text, out)?;
    match report {
        Some(r) if !r.all_equal() => Err(fail(3, "closed form disagrees with the oracle")),
        _ => Ok(()),
    }
}

fn chipfire(cmd: ChipCmd) -> Result<(), Failure> {
    match cmd {
        ChipCmd::Critical { k, format } => {
            let configs = critical_configs_complete(k)?;
            if format == Format::Json {
                let vals: Vec<Vec<i64>> = configs.iter().map(Configuration::non_bank_values).collect();
                emit(&serde_json::json!({ "k": k, "count": configs.len(), "configurations": vals }).to_string(), None)?;
            } else {
                for c in &configs {
                    println!("{c}");
                }
                println!("{} critical configurations", configs.len());
            }
        }
        ChipCmd::Strata { n, k, format } => {
            let counts = count_strata(n, k)?;
            let predicted: Vec<String> = (0..=n).map(|s| mu(n, k, s).map(|m| m.to_string())).collect::<Result<_, _>>()?;
            if format == Format::Json {
                let json = serde_json::json!({ "n": n, "k": k, "counts": counts, "formula": predicted });
                emit(&json.to_string(), None)?;
            } else {
                for (s, (c, p)) in counts.iter().zip(&predicted).enumerate() {
                    println!("B_{s}: {c} (formula {p})");
                }
            }
            if counts.iter().map(u64::to_string).ne(predicted.iter().cloned()) {
                return Err(fail(1, "stratum counts disagree with the formula"));
            }
        }
        ChipCmd::FiringGraph { n, k, config, dot, format } => {
            let h = make_hyperpath(n, k)?;
            let c0 = Configuration::with_omitted_bank(0, &config)?;
            let s = StrataClassifier::new(n, k)?.classify(&c0)?;
            let g = build_firing_graph(&h, &c0)?;
            let structure = validate_structure(&g, s);
            let invariants = check_firing_invariants(&g);
            if let Some(path) = dot {
                fs::write(path, g.to_dot())?;
            }
            if format == Format::Json {
                let json = serde_json::json!({
                    "root": c0.to_string(),
                    "stratum": s,
                    "nodes": g.nodes().len(),
                    "arrows": g.arrows().len(),
                    "structure": structure,
                    "invariant_violations": invariants.violations,
                });
                emit(&serde_json::to_string_pretty(&json).expect("serializes"), None)?;
            } else {
                println!("root {c0} in B_{s}");
                println!("{} nodes, {} arrows", g.nodes().len(), g.arrows().len());
                for (j, cyc) in structure.cycles.iter().enumerate() {
                    let labels: Vec<String> = cyc.iter().map(|&i| g.nodes()[i].to_string()).collect();
                    println!("cycle {}: {}", j + 1, labels.join(" → "));
                }
                println!("tail: {} nodes", structure.g_prime.len());
                for v in structure.violations.iter().chain(&invariants.violations) {
                    println!("violation: {v}");
                }
            }
            if !structure.ok() || !invariants.ok() {
                return Err(fail(1, "firing graph fails the structure checks"));
            }
        }
    }
    Ok(())
}

fn run_selftest(level: LevelArg, format: Format, corrupt: bool) -> Result<(), Failure> {
    let opts = Options {
        level: match level {
            LevelArg::Quick => Level::Quick,
            LevelArg::Full => Level::Full,
        },
        corrupt_closed_form: corrupt,
    };
    let results = selftest::run_all(opts);
    if format == Format::Json {
        emit(&serde_json::to_string_pretty(&results).expect("serializes"), None)?;
    } else {
        for r in &results {
            let verdict = if r.passed { "PASS" } else { "FAIL" };
            println!("{:>2} {verdict} {} ({} ms): {}", r.id, r.name, r.millis, r.detail);
        }
    }
    if results.iter().any(|r| r.oracle_mismatch) {
        Err(fail(3, "closed form disagrees with the oracle"))
    } else if results.iter().any(|r| !r.passed) {
        Err(fail(1, "self-test failed"))
    } else {
        Ok(())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Charpoly { family, format, verify_at, out } => charpoly(family, format, &verify_at, out.as_ref()),
        Command::Chipfire { cmd } => chipfire(cmd),
        Command::Selftest { level, format, corrupt_closed_form } => run_selftest(level, format, corrupt_closed_form),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
