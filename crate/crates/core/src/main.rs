use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use swtree::harness::bench::{run_bench, BenchConfig};
use swtree::harness::render::{render_ascii, render_dot, render_trace};
use swtree::harness::sizes::parse_sizes;
use swtree::harness::verify::{default_factory, replay, verify, VerifyConfig};
use swtree::harness::workload::WorkloadTrace;
use swtree::harness::HarnessError;
use swtree::{AnyElement, AnyGroup, SouthwestTree, StructureKind};

const EXIT_USAGE: u8 = 1;
const EXIT_VERIFY_FAILED: u8 = 2;

const DEMO: [i64; 9] = [1, 3, 5, 7, 9, 11, 13, 15, 17];

#[derive(Parser)]
#[command(
    name = "swtree",
    version,
    about = "Southwest tree harness: verify, trace, dump and bench"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Replay random workloads through every structure and compare with the oracle.
    Verify(WorkloadArgs),
    /// Count visited nodes and time operations per structure.
    Bench(WorkloadArgs),
    /// Draw the tree built over an input array.
    Dump {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Ascii)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Show the walk and the contributions of one accumulate.
    Trace {
        #[command(flatten)]
        input: InputArgs,
        /// One-based prefix length.
        index: usize,
    },
    /// Re-run a workload trace file.
    Replay {
        file: PathBuf,
        /// Overrides the structures listed in the file.
        #[arg(long)]
        structures: Option<String>,
    },
}

#[derive(Args)]
struct WorkloadArgs {
    #[arg(long, default_value = "wrap-add")]
    group: String,
    /// Sizes, e.g. `1..130,255,1024`; ranges are inclusive.
    #[arg(long = "n")]
    sizes: Option<String>,
    #[arg(long, default_value_t = 1000)]
    ops: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated: swtree, segtree, fenwick, oracle.
    #[arg(long)]
    structures: Option<String>,
    /// verify: where to write a minimized failing trace. bench: report path.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct InputArgs {
    /// Whitespace-separated element literals.
    #[arg(long, conflicts_with = "demo")]
    input: Option<PathBuf>,
    /// Use the odd numbers 1..=17.
    #[arg(long)]
    demo: bool,
    #[arg(long, default_value = "wrap-add")]
    group: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Ascii,
    Dot,
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Verification(String),
}

impl From<HarnessError> for Failure {
    fn from(e: HarnessError) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<swtree::Error> for Failure {
    fn from(e: swtree::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn parse_structures(list: &str) -> Result<Vec<StructureKind>, Failure> {
    let kinds = list
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect::<Result<Vec<StructureKind>, _>>()?;
    if kinds.is_empty() {
        return Err(Failure::Usage("no structures selected".into()));
    }
    Ok(kinds)
}

/// Fenwick joins the defaults only for groups that pass the commutativity check.
fn default_structures(group: &AnyGroup) -> Vec<StructureKind> {
    let mut kinds = vec![StructureKind::SwTree, StructureKind::SegTree];
    if group.passes_commutativity_check(swtree::baselines::COMMUTATIVITY_TRIALS) {
        kinds.push(StructureKind::Fenwick);
    }
    kinds
}

fn load_input(args: &InputArgs) -> Result<SouthwestTree<AnyGroup>, Failure> {
    let group: AnyGroup = args.group.parse()?;
    let init = match args.input.as_ref().filter(|_| !args.demo) {
        None => {
            if !matches!(group, AnyGroup::WrappingAdd(_)) {
                return Err(Failure::Usage("--demo uses the wrap-add group".into()));
            }
            DEMO.map(AnyElement::Int).to_vec()
        }
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            text.lines()
                .flat_map(|l| l.split('#').next().unwrap_or("").split_whitespace())
                .map(|lit| group.parse_element(lit))
                .collect::<Result<Vec<_>, _>>()?
        }
    };
    Ok(SouthwestTree::build(group, init)?)
}

fn write_output(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => {
            fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Verify(args) => {
            let group: AnyGroup = args.group.parse()?;
            let config = VerifyConfig {
                group,
                sizes: parse_sizes(args.sizes.as_deref().unwrap_or("1..64"))?,
                ops: args.ops,
                seed: args.seed,
                structures: match &args.structures {
                    Some(list) => parse_structures(list)?,
                    None => default_structures(&group),
                },
            };
            let report = verify(&config, &default_factory)?;
            print!("{}", report.render(&config));
            if let Some(failure) = report.first_failure() {
                let reproducer = failure.reproducer.as_ref().expect("failures are minimized");
                let path = args
                    .out
                    .unwrap_or_else(|| PathBuf::from("verify-failure.trace"));
                fs::write(&path, reproducer.emit())
                    .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                return Err(Failure::Verification(format!(
                    "mismatch at n={}; minimized trace ({} ops) written to {}",
                    failure.n,
                    reproducer.ops.len(),
                    path.display()
                )));
            }
            Ok(())
        }
        Command::Bench(args) => {
            let group: AnyGroup = args.group.parse()?;
            let config = BenchConfig {
                group,
                sizes: parse_sizes(args.sizes.as_deref().unwrap_or("1024,65536"))?,
                ops: args.ops,
                seed: args.seed,
                structures: match &args.structures {
                    Some(list) => parse_structures(list)?,
                    None => default_structures(&group),
                },
            };
            let report = run_bench(&config)?;
            write_output(args.out.as_deref(), &(report.to_json() + "\n"))
        }
        Command::Dump { input, format, out } => {
            let tree = load_input(&input)?;
            let text = match format {
                Format::Ascii => render_ascii(&tree),
                Format::Dot => render_dot(&tree),
            };
            write_output(out.as_deref(), &text)
        }
        Command::Trace { input, index } => {
            let tree = load_input(&input)?;
            let trace = tree.trace(index)?;
            trace
                .check_partition()
                .map_err(|e| Failure::Verification(format!("trace partition violated: {e}")))?;
            print!("{}", render_trace(&trace, &tree));
            Ok(())
        }
        Command::Replay { file, structures } => {
            let text = fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let mut trace = WorkloadTrace::parse(&text)?;
            if let Some(list) = structures {
                trace.structures = parse_structures(&list)?;
            }
            let report = replay(&trace, &default_factory)?;
            match report.mismatch {
                None => {
                    println!(
                        "replay ok: {} updates, {} accumulates",
                        report.updates, report.accumulates
                    );
                    Ok(())
                }
                Some(m) => Err(Failure::Verification(m.to_string())),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Verification(msg)) => {
            eprintln!("verification failed: {msg}");
            ExitCode::from(EXIT_VERIFY_FAILED)
        }
    }
}
