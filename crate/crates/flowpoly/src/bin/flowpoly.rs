//! Command-line surface: compute Kostant partition functions, volumes, and
//! the constant-term family by any available method, run the verification
//! suites, and export cliques and flow bijections as JSON.

use clap::{Args, Parser, Subcommand};
use flowpoly::digraph::{
    build_complete, build_gpq, build_kabc, build_kabc_s, Multigraph, SubsetS,
};
use flowpoly::dkk::{max_cliques, theta_pairs, Framing};
use flowpoly::error::Error;
use flowpoly::flows::{enumerate_flows, kpf, NetFlow};
use flowpoly::formulas;
use flowpoly::refine;
use flowpoly::verify::{run_suite, GridSpec, SUITE_NAMES};
use flowpoly::volumes;
use num::BigRational;
use serde_json::json;
use std::fs;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "flowpoly", version, about = "exact flow-polytope computations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Count (or list) the integer flows of a graph for a netflow vector.
    Kpf {
        #[arg(long)]
        graph: String,
        /// Comma-separated netflow entries, one per vertex.
        #[arg(long)]
        netflow: String,
        /// Also list the flows as JSON.
        #[arg(long)]
        list: bool,
    },
    /// Normalized volume of the flow polytope of a graph.
    Volume {
        #[arg(long)]
        graph: String,
        #[arg(long, value_parser = ["kpf", "subdivision", "ehrhart", "lidskii", "dkk"])]
        method: String,
        /// Netflow for the ehrhart/lidskii methods; defaults to unit flow.
        #[arg(long)]
        netflow: Option<String>,
    },
    /// Morris-type constant term M_n(a,b,c).
    Morris(ValueArgs),
    /// Refinement Psi_n(k,a,b,c).
    Psi(ValueArgs),
    /// Scaled refinement Phi_n(k,a,b,c).
    Phi(ValueArgs),
    /// Run a verification suite and emit a JSON report; exits nonzero on
    /// any failed check.
    Verify {
        #[arg(long, value_parser = clap::builder::PossibleValuesParser::new(SUITE_NAMES))]
        suite: String,
        /// Grid bounds like "n<=3,a<=3,b<=3,c<=2".
        #[arg(long)]
        grid: Option<String>,
        /// Human-readable table instead of raw JSON.
        #[arg(long)]
        pretty: bool,
    },
    /// Emit the maximal coherent-route cliques of a framed graph.
    Triangulate {
        #[arg(long)]
        graph: String,
        /// Framing JSON file; defaults to the canonical framing.
        #[arg(long)]
        framing: Option<String>,
    },
    /// Flow bijections derived from the framed-graph structure.
    Bijection {
        #[command(subcommand)]
        which: BijectionCommand,
    },
}

#[derive(Subcommand)]
enum BijectionCommand {
    /// The flow bijection between a graph and its reverse.
    Theta {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        framing: Option<String>,
    },
}

#[derive(Args)]
struct ValueArgs {
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    k: u32,
    #[arg(long)]
    a: u32,
    #[arg(long)]
    b: u32,
    #[arg(long)]
    c: u32,
    /// formula | kpf | volumes | ct | special:<case>
    #[arg(long, default_value = "formula")]
    method: String,
}

/// Graph builder mini-language: kabc:n,a,b,c | kabcS:n,a,b,c,S=i|j|.. |
/// gpq:p,q | complete:n | @file.json
fn parse_graph(spec: &str) -> Result<Multigraph, Error> {
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::InvalidParameter(format!("cannot read {path}: {e}")))?;
        return Multigraph::from_json(&text);
    }
    let (kind, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::InvalidParameter(format!("bad graph spec '{spec}'")))?;
    let parse_nums = |s: &str| -> Result<Vec<usize>, Error> {
        s.split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidParameter(format!("bad number '{x}' in '{spec}'")))
            })
            .collect()
    };
    match kind {
        "kabc" => {
            let v = parse_nums(rest)?;
            if v.len() != 4 {
                return Err(Error::InvalidParameter("kabc needs n,a,b,c".into()));
            }
            build_kabc(v[0], v[1], v[2], v[3])
        }
        "kabcS" => {
            let (nums, subset) = rest
                .split_once(",S=")
                .ok_or_else(|| Error::InvalidParameter("kabcS needs n,a,b,c,S=i|j".into()))?;
            let v = parse_nums(nums)?;
            if v.len() != 4 {
                return Err(Error::InvalidParameter("kabcS needs n,a,b,c,S=i|j".into()));
            }
            let members: Vec<usize> = if subset.is_empty() {
                Vec::new()
            } else {
                subset
                    .split('|')
                    .map(|x| {
                        x.trim().parse::<usize>().map_err(|_| {
                            Error::InvalidParameter(format!("bad subset element '{x}'"))
                        })
                    })
                    .collect::<Result<_, _>>()?
            };
            build_kabc_s(v[0], v[1], v[2], v[3], &SubsetS::new(members))
        }
        "gpq" => {
            let v = parse_nums(rest)?;
            if v.len() != 2 {
                return Err(Error::InvalidParameter("gpq needs p,q".into()));
            }
            build_gpq(v[0], v[1])
        }
        "complete" => {
            let v = parse_nums(rest)?;
            if v.len() != 1 {
                return Err(Error::InvalidParameter("complete needs n".into()));
            }
            build_complete(v[0])
        }
        other => Err(Error::InvalidParameter(format!("unknown graph family '{other}'"))),
    }
}

fn parse_netflow(s: &str) -> Result<NetFlow, Error> {
    let values = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<i64>()
                .map_err(|_| Error::InvalidParameter(format!("bad netflow entry '{x}'")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    NetFlow::new(values)
}

fn load_framing(g: &Multigraph, path: &Option<String>) -> Result<Framing, Error> {
    match path {
        None => Ok(Framing::default_for(g)),
        Some(p) => {
            let text = fs::read_to_string(p)
                .map_err(|e| Error::InvalidParameter(format!("cannot read {p}: {e}")))?;
            Framing::from_json(g, &text)
        }
    }
}

fn print_rational(v: &BigRational) {
    if v.is_integer() {
        println!("{}", v.to_integer());
    } else {
        println!("{v}");
    }
}

fn rational_of_u64(v: u64) -> BigRational {
    BigRational::from(num::BigInt::from(v))
}

fn run_value_command(which: &str, args: &ValueArgs) -> Result<BigRational, Error> {
    let ValueArgs { n, k, a, b, c, method } = args;
    let (n, k, a, b, c) = (*n, *k, *a, *b, *c);
    let method = method.as_str();
    if let Some(case) = method.strip_prefix("special:") {
        return match which {
            "morris" => formulas::morris_special(case.parse()?, n, a, b, c),
            "psi" => formulas::psi_special(case.parse()?, n, k, a, b, c),
            _ => Err(Error::InvalidParameter("phi has no special cases".into())),
        };
    }
    match (which, method) {
        ("morris", "formula") => formulas::morris(n, a, b, c),
        ("morris", "kpf") => refine::morris_via_kpf(n, a, b, c).map(rational_of_u64),
        ("morris", "volumes") => {
            let g = build_kabc(n as usize, a as usize, b as usize, c as usize)?;
            volumes::volume_via_kpf(&g).map(rational_of_u64)
        }
        ("morris", "ct") => flowpoly::ctseries::ct_morris(n, a, b, c).map(BigRational::from),
        ("psi", "formula") => formulas::psi_product(n, k, a, b, c),
        ("psi", "kpf") => refine::psi_via_kpf(n, k, a, b, c).map(rational_of_u64),
        ("psi", "volumes") => refine::psi_via_volumes(n, k, a, b, c).map(rational_of_u64),
        ("psi", "ct") => flowpoly::ctseries::ct_psi(n, k, a, b, c).map(BigRational::from),
        ("phi", "formula") => formulas::phi_scaled(n, k, a, b, c),
        ("phi", "kpf") => refine::phi_via_kpf(n, k, a, b, c).map(rational_of_u64),
        ("phi", "ct") => flowpoly::ctseries::ct_phi(n, k, a, b, c).map(BigRational::from),
        (_, m) => Err(Error::InvalidParameter(format!("unknown method '{m}' for {which}"))),
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Kpf { graph, netflow, list } => {
            let g = parse_graph(&graph)?;
            let a = parse_netflow(&netflow)?;
            let count = kpf(&g, &a)?;
            if list {
                let flows = enumerate_flows(&g, &a)?;
                let payload = json!({
                    "count": count,
                    "edges": g.edges(),
                    "flows": flows.iter().map(|f| f.values().to_vec()).collect::<Vec<_>>(),
                });
                println!("{payload}");
            } else {
                println!("{count}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Volume { graph, method, netflow } => {
            let g = parse_graph(&graph)?;
            let value = match method.as_str() {
                "kpf" => volumes::volume_via_kpf(&g)?,
                "subdivision" => volumes::volume_via_subdivision(&g)?,
                "dkk" => max_cliques(&g, &Framing::default_for(&g))?.len() as u64,
                "ehrhart" => {
                    let a = match netflow {
                        Some(s) => parse_netflow(&s)?,
                        None => NetFlow::unit(g.internal_count()),
                    };
                    flowpoly::flows::ehrhart_volume(&g, &a)?
                }
                "lidskii" => {
                    let a = match netflow {
                        Some(s) => parse_netflow(&s)?,
                        None => NetFlow::unit(g.internal_count()),
                    };
                    volumes::lidskii_volume(&g, &a)?
                }
                _ => unreachable!("clap validates the method"),
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Morris(args) => {
            print_rational(&run_value_command("morris", &args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Psi(args) => {
            print_rational(&run_value_command("psi", &args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Phi(args) => {
            print_rational(&run_value_command("phi", &args)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { suite, grid, pretty } => {
            let grid = match grid {
                Some(s) => GridSpec::from_str(&s)?,
                None => GridSpec::default(),
            };
            let results = run_suite(&suite, &grid)?;
            let failed = results.iter().filter(|r| !r.pass).count();
            if pretty {
                for r in &results {
                    println!(
                        "{} {} [{}] {} vs {}",
                        if r.pass { "pass" } else { "FAIL" },
                        r.relation,
                        r.params,
                        r.lhs,
                        r.rhs
                    );
                }
                println!("{} checks, {} failed", results.len(), failed);
            } else {
                let payload = json!({
                    "suite": suite,
                    "checks": results,
                    "total": results.len(),
                    "failed": failed,
                });
                println!("{payload}");
            }
            Ok(if failed == 0 { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Triangulate { graph, framing } => {
            let g = parse_graph(&graph)?;
            let fr = load_framing(&g, &framing)?;
            let cliques = max_cliques(&g, &fr)?;
            let payload = json!({
                "graph": serde_json::from_str::<serde_json::Value>(&g.to_json())?,
                "clique_count": cliques.len(),
                "cliques": cliques,
            });
            println!("{payload}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Bijection { which } => match which {
            BijectionCommand::Theta { graph, framing } => {
                let g = parse_graph(&graph)?;
                let fr = load_framing(&g, &framing)?;
                let pairs = theta_pairs(&g, &fr)?;
                let payload = json!({
                    "graph": serde_json::from_str::<serde_json::Value>(&g.to_json())?,
                    "pairs": pairs
                        .iter()
                        .map(|(f, t)| json!({"from": f.values(), "to": t.values()}))
                        .collect::<Vec<_>>(),
                });
                println!("{payload}");
                Ok(ExitCode::SUCCESS)
            }
        },
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            // usage problems exit 2; violated internal invariants exit 3
            let code = if matches!(
                e,
                Error::PiExponent(_) | Error::NonIntegralVolume(_) | Error::NoCliquePreimage
            ) {
                3
            } else {
                2
            };
            let payload = json!({"error": {"code": code, "message": e.to_string()}});
            eprintln!("{payload}");
            ExitCode::from(code)
        }
    }
}
