use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use tamejumps_core::catalog;
use tamejumps_core::fiber::{
    h1_character_with, parse_graph, self_intersections, total_trace_with, FiberGraph,
};
use tamejumps_core::jumps::{compute_jumps_with, JumpOptions};
use tamejumps_core::resolution::{is_stable, resolve, Singularity};
use tamejumps_core::singtrace::{TraceRegistry, DEFAULT_METHOD};
use tamejumps_core::Error;

#[derive(Parser, Debug)]
#[command(
    name = "tamejumps",
    version,
    about = "Traces, characters and filtration jumps of SNC fibers under tame base change"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Resolution data of the singularity (m1, m2, n)
    Resolve {
        m1: u64,
        m2: u64,
        n: u64,
        #[arg(long)]
        machine: bool,
    },
    /// Trace polynomial of the singularity (m1, m2, n)
    TraceSing {
        m1: u64,
        m2: u64,
        n: u64,
        #[command(flatten)]
        method: MethodArg,
        #[arg(long)]
        machine: bool,
    },
    /// Total trace of a fiber graph at a given n
    TraceFiber {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        method: MethodArg,
        #[arg(long)]
        machine: bool,
    },
    /// Characters of the action on H^1 at a given n
    Character {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        method: MethodArg,
        #[arg(long)]
        machine: bool,
    },
    /// Filtration jumps of a fiber graph
    Jumps {
        #[command(flatten)]
        input: GraphInput,
        #[arg(long, default_value_t = 1000)]
        n_min: u64,
        #[arg(long, default_value_t = 3)]
        sweeps: usize,
        /// Also sweep the class -1 modulo the multiplicity lcm
        #[arg(long)]
        cross_check: bool,
        #[command(flatten)]
        method: MethodArg,
        #[arg(long)]
        machine: bool,
    },
    /// Built-in fiber types
    CatalogList,
}

#[derive(Args, Debug)]
#[group(required = true, multiple = false)]
struct GraphInput {
    /// Graph file
    #[arg(long)]
    graph: Option<PathBuf>,
    /// Catalog id such as kodaira:IV, kodaira:In*:3 or ogg:4
    #[arg(long)]
    catalog: Option<String>,
}

#[derive(Args, Debug)]
struct MethodArg {
    /// Singularity trace method (chain or closed-form)
    #[arg(long, default_value = DEFAULT_METHOD)]
    method: String,
}

enum Failure {
    Usage(String),
    Invalid(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownMethod(_) => Failure::Usage(e.to_string()),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn load(input: &GraphInput) -> std::result::Result<FiberGraph, Failure> {
    match (&input.graph, &input.catalog) {
        (Some(path), None) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
            Ok(parse_graph(&text)?)
        }
        (None, Some(id)) => Ok(catalog::lookup_str(id)?),
        _ => Err(Failure::Usage(
            "give exactly one of --graph and --catalog".into(),
        )),
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(sep)
}

fn write_terms(out: &mut String, trace: &tamejumps_core::exactalg::GroupRingElement) {
    for (e, c) in trace.terms() {
        let _ = writeln!(out, "term {e} {c}");
    }
}

fn run(cmd: Command) -> std::result::Result<String, Failure> {
    let registry = TraceRegistry::default();
    let mut out = String::new();
    match cmd {
        Command::Resolve { m1, m2, n, machine } => {
            let d = resolve(Singularity::new(m1, m2, n)?)?;
            if machine {
                let _ = writeln!(out, "r {}", d.r);
                let _ = writeln!(out, "b {}", join(&d.jh.b, " "));
                let _ = writeln!(out, "mu {}", join(&d.mu, " "));
            } else {
                let _ = writeln!(out, "singularity ({m1},{m2},{n})");
                let _ = writeln!(out, "r={}", d.r);
                let _ = writeln!(out, "b=[{}]", join(&d.jh.b, ","));
                let _ = writeln!(out, "mu=[{}]", join(&d.mu, ","));
                let _ = writeln!(out, "L={}", d.len());
                let _ = writeln!(out, "alpha1={} alpha2={}", d.alpha1, d.alpha2);
                let _ = writeln!(out, "m={} M={}", d.m, d.big_m);
                let _ = writeln!(out, "stable={}", if is_stable(&d) { "yes" } else { "no" });
            }
        }
        Command::TraceSing {
            m1,
            m2,
            n,
            method,
            machine,
        } => {
            let d = resolve(Singularity::new(m1, m2, n)?)?;
            let trace = registry.get(&method.method)?.trace(&d)?;
            if !machine {
                let _ = writeln!(
                    out,
                    "trace of ({m1},{m2},{n}) by {}: {trace}",
                    method.method
                );
            }
            write_terms(&mut out, &trace);
        }
        Command::TraceFiber {
            input,
            n,
            method,
            machine,
        } => {
            let g = load(&input)?;
            let trace = total_trace_with(&g, n, registry.get(&method.method)?)?;
            if !machine {
                let si = self_intersections(&g, n)?;
                let _ = writeln!(out, "vertex genus mult self-intersection");
                for v in g.vertices() {
                    let _ = writeln!(out, "{} {} {} {}", v.id, v.genus, v.mult, si.values[&v.id]);
                }
                let _ = writeln!(out, "total trace at n={n}: {trace}");
            }
            write_terms(&mut out, &trace);
        }
        Command::Character {
            input,
            n,
            method,
            machine,
        } => {
            let g = load(&input)?;
            let ch = h1_character_with(&g, n, registry.get(&method.method)?)?;
            if !machine {
                let _ = writeln!(out, "characters at n={n}, genus {}", ch.total());
            }
            for (e, k) in &ch.exponents {
                let _ = writeln!(out, "char {e} {k}");
            }
        }
        Command::Jumps {
            input,
            n_min,
            sweeps,
            cross_check,
            method,
            machine,
        } => {
            let g = load(&input)?;
            let opts = JumpOptions {
                n_min,
                sweeps,
                cross_check_residue: cross_check,
            };
            let js = compute_jumps_with(&g, &opts, registry.get(&method.method)?)?;
            if !machine {
                let _ = writeln!(
                    out,
                    "n_tilde={} sampled n: {}",
                    js.n_tilde,
                    join(&js.witnesses, " ")
                );
            }
            for j in js.formatted() {
                let _ = writeln!(out, "jump {j}");
            }
        }
        Command::CatalogList => {
            for (id, desc) in catalog::list() {
                let _ = writeln!(out, "{id}\t{desc}");
            }
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli.command) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
