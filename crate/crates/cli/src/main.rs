use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use thorntree::bijection::{aux_graph, classify, contract, psi, psi_inverse};
use thorntree::counting::{
    bprime_from_table, count_a, count_c, count_d, count_st, solve_b, stirling1_triangle,
    CountTable, Family, SOLVER_LIMIT,
};
use thorntree::dot::{aux_graph_to_dot, labeled_to_dot, map_to_dot, tree_to_dot};
use thorntree::oracle::{census, enumerate_cd, enumerate_st, Budget};
use thorntree::report::{Provenance, Report, Status};
use thorntree::structures::{AnyObject, Canonical, PermutedThornTree};
use thorntree::Error;

mod suites;

#[derive(Parser)]
#[command(
    name = "thorntree",
    version,
    about = "Long-cycle factorizations, star thorn trees and their bijection"
)]
struct Cli {
    /// Largest n for exhaustive sweeps (defaults: 8 over S_n, 6 over maps and trees).
    #[arg(long, global = true)]
    budget: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print a table of exact counts.
    Table {
        family: TableFamily,
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Compute by exhaustive enumeration instead of formula or solver.
        #[arg(long)]
        oracle: bool,
        /// Keep only partitions with length of the same parity as n.
        #[arg(long)]
        parity: bool,
    },
    /// Run a verification suite for every size up to n.
    Verify { suite: Suite, n: usize },
    /// Apply the bijection, its inverse, the image test or a contraction.
    Transform {
        direction: Direction,
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Vertex to contract.
        #[arg(long)]
        vertex: Option<usize>,
    },
    /// Render a map, tree or auxiliary graph as Graphviz DOT.
    ExportDot {
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Render the auxiliary graph of a permuted tree instead of the tree.
        #[arg(long)]
        aux: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableFamily {
    #[value(name = "A", alias = "a")]
    A,
    #[value(name = "B", alias = "b")]
    B,
    #[value(name = "Bprime", alias = "bprime")]
    Bprime,
    #[value(name = "C", alias = "c")]
    C,
    #[value(name = "D", alias = "d")]
    D,
    #[value(name = "ST", alias = "st")]
    St,
    Stirling,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Zagier,
    Reformulation,
    Identities,
    Bijection,
    Proportions,
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Psi,
    Invert,
    Classify,
    Contract,
}

/// Failure modes mapped onto exit codes.
enum Exit {
    Fail,
    Refused(String),
}

impl From<Error> for Exit {
    fn from(e: Error) -> Self {
        Exit::Refused(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let budget = cli.budget.map(Budget::uniform).unwrap_or_default();
    match run(cli.command, &budget) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Exit::Fail) => ExitCode::from(1),
        Err(Exit::Refused(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command, budget: &Budget) -> Result<(), Exit> {
    match command {
        Command::Table {
            family,
            n,
            format,
            oracle,
            parity,
        } => {
            print!("{}", table(family, n, format, oracle, parity, budget)?);
            Ok(())
        }
        Command::Verify { suite, n } => verify(suite, n, budget),
        Command::Transform {
            direction,
            input,
            output,
            vertex,
        } => {
            let text = read(&input)?;
            let out = transform(direction, &text, vertex)?;
            write(output, &out)
        }
        Command::ExportDot { input, output, aux } => {
            let text = read(&input)?;
            let dot = match AnyObject::parse(&text)? {
                AnyObject::Map(m) => map_to_dot(&m),
                AnyObject::Tree(t) if aux => aux_graph_to_dot(&aux_graph(&t)?),
                AnyObject::Tree(t) => tree_to_dot(&t),
                AnyObject::Labeled(t) if aux => aux_graph_to_dot(&aux_graph(&t.to_permuted())?),
                AnyObject::Labeled(t) => labeled_to_dot(&t),
            };
            write(output, &dot)
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| Exit::Refused(format!("{}: {e}", path.display())))
}

fn write(path: Option<PathBuf>, text: &str) -> Result<(), Exit> {
    let text = if text.ends_with('\n') {
        text.to_string()
    } else {
        format!("{text}\n")
    };
    match path {
        Some(p) => fs::write(&p, text).map_err(|e| Exit::Refused(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn table(
    family: TableFamily,
    n: usize,
    format: Format,
    oracle: bool,
    parity: bool,
    budget: &Budget,
) -> Result<String, Exit> {
    if n == 0 || n > SOLVER_LIMIT {
        return Err(Exit::Refused(format!(
            "tables accept 1 <= n <= {SOLVER_LIMIT}, got {n}"
        )));
    }
    let indexed = |label: &str, rows: Vec<(usize, String)>, prov: Provenance| match format {
        Format::Csv => {
            let mut out = format!("{label},value,provenance\n");
            for (k, v) in rows {
                out.push_str(&format!("{k},{v},{}\n", prov_name(prov)));
            }
            out
        }
        Format::Json => {
            let entries: Vec<_> = rows
                .into_iter()
                .map(|(k, v)| serde_json::json!({ label: k, "value": v }))
                .collect();
            let value = serde_json::json!({ "n": n, "provenance": prov, "entries": entries });
            serde_json::to_string_pretty(&value).expect("serializable") + "\n"
        }
    };
    let (fam, prov) = match family {
        TableFamily::Stirling => {
            let row = &stirling1_triangle(n)[n];
            let rows = (1..=n).map(|k| (k, row[k].to_string())).collect();
            return Ok(indexed("k", rows, Provenance::Formula));
        }
        TableFamily::Bprime => {
            let (values, prov) = if oracle {
                (
                    thorntree::oracle::bprime_all(n, budget)?,
                    Provenance::Oracle,
                )
            } else {
                (bprime_from_table(&solve_b(n)?), Provenance::Solver)
            };
            let rows = (1..=n)
                .filter(|m| !parity || m % 2 == n % 2)
                .map(|m| (m, values[m].to_string()))
                .collect();
            return Ok(indexed("m", rows, prov));
        }
        TableFamily::A => (
            Family::A,
            if oracle {
                Provenance::Oracle
            } else {
                Provenance::Formula
            },
        ),
        TableFamily::B => (
            Family::B,
            if oracle {
                Provenance::Oracle
            } else {
                Provenance::Solver
            },
        ),
        TableFamily::C => (
            Family::C,
            if oracle {
                Provenance::Oracle
            } else {
                Provenance::Formula
            },
        ),
        TableFamily::D => (
            Family::D,
            if oracle {
                Provenance::Oracle
            } else {
                Provenance::Formula
            },
        ),
        TableFamily::St => (
            Family::ST,
            if oracle {
                Provenance::Oracle
            } else {
                Provenance::Formula
            },
        ),
    };
    let full = if oracle {
        match fam {
            Family::A | Family::B => {
                let c = census(n, budget)?;
                let counts = if fam == Family::A { c.all } else { c.star };
                CountTable::from_fn(n, fam, prov, |l| {
                    Ok(counts.get(l).copied().unwrap_or(0).into())
                })?
            }
            Family::C => CountTable::from_fn(n, fam, prov, |l| Ok(enumerate_cd(l, budget)?.0))?,
            Family::D => CountTable::from_fn(n, fam, prov, |l| Ok(enumerate_cd(l, budget)?.1))?,
            Family::ST => CountTable::from_fn(n, fam, prov, |l| enumerate_st(l, budget))?,
        }
    } else {
        match fam {
            Family::A => CountTable::from_fn(n, fam, prov, |l| Ok(count_a(l)))?,
            Family::B => solve_b(n)?,
            Family::C => CountTable::from_fn(n, fam, prov, |l| Ok(count_c(l)))?,
            Family::D => CountTable::from_fn(n, fam, prov, count_d)?,
            Family::ST => CountTable::from_fn(n, fam, prov, |l| Ok(count_st(l)))?,
        }
    };
    let mut table = CountTable::new(n, fam, prov);
    for (lam, v) in full.iter() {
        if !parity || lam.len() % 2 == n % 2 {
            table.insert(lam.clone(), v.clone());
        }
    }
    Ok(match format {
        Format::Csv => table.to_csv(),
        Format::Json => table.to_json() + "\n",
    })
}

fn prov_name(p: Provenance) -> String {
    serde_json::to_value(p)
        .expect("serializable")
        .as_str()
        .unwrap_or_default()
        .to_string()
}

fn verify(suite: Suite, n: usize, budget: &Budget) -> Result<(), Exit> {
    let start = Instant::now();
    let name = match suite {
        Suite::Zagier => "zagier",
        Suite::Reformulation => "reformulation",
        Suite::Identities => "identities",
        Suite::Bijection => "bijection",
        Suite::Proportions => "proportions",
    };
    let result = if n == 0 {
        Err(Error::OutOfRange("n must be at least 1".into()))
    } else {
        match suite {
            Suite::Zagier => suites::zagier(n, budget),
            Suite::Reformulation => suites::reformulation(n, budget),
            Suite::Identities => suites::identities(n, budget),
            Suite::Bijection => suites::bijection(n, budget),
            Suite::Proportions => suites::proportions(n, budget),
        }
    };
    let report =
        result.unwrap_or_else(|e| Report::refused(format!("verify {name} {n}"), e.to_string()));
    println!("{}", report.to_json());
    // Timing stays off stdout so identical runs print identical bytes.
    eprintln!(
        "{name}: {:?} in {:.3}s",
        report.status,
        start.elapsed().as_secs_f64()
    );
    match report.status {
        Status::Pass => Ok(()),
        Status::Fail => Err(Exit::Fail),
        Status::Refused => Err(Exit::Refused(report.message.unwrap_or_default())),
    }
}

fn transform(direction: Direction, text: &str, vertex: Option<usize>) -> Result<String, Exit> {
    let object = AnyObject::parse(text)?;
    let tree = |o: AnyObject| -> Result<PermutedThornTree, Exit> {
        match o {
            AnyObject::Tree(t) => Ok(t),
            AnyObject::Labeled(t) => Ok(t.to_permuted()),
            AnyObject::Map(_) => Err(Exit::Refused(
                "expected a permuted thorn tree, got a map".into(),
            )),
        }
    };
    Ok(match direction {
        Direction::Psi => match object {
            AnyObject::Map(m) => psi(&m)?.to_canonical(),
            _ => return Err(Exit::Refused("psi expects a map".into())),
        },
        Direction::Invert => psi_inverse(&tree(object)?).to_json(),
        Direction::Classify => {
            serde_json::to_string(&classify(&tree(object)?)).expect("serializable")
        }
        Direction::Contract => {
            let v = vertex.ok_or_else(|| Exit::Refused("contract needs --vertex".into()))?;
            let (t, mark) = contract(&tree(object)?, v)?;
            // Splice the canonical tree text in verbatim to keep its field order.
            format!(
                "{{\"tree\":{},\"mark\":{},\"type\":{}}}",
                t.to_canonical(),
                serde_json::to_string(&mark).expect("serializable"),
                serde_json::to_string(&t.type_of()).expect("serializable")
            )
        }
    })
}
