use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};

use lpsym::aut::{AutError, SearchOptions, DEFAULT_NODE_BUDGET};
use lpsym::bench::{allint, pigeon};
use lpsym::pipeline::{verify_sbc, Outcome};
use lpsym::{
    build_graph, parse_smodels, preprocess, write_smodels, BuildOptions, Config, Program,
    TruncationK,
};

/// Detects symmetries of a ground disjunctive program in smodels format and
/// appends lex-leader symmetry-breaking constraints.
///
/// Exit status: 0 on success, 1 on bad arguments or unreadable or
/// unsupported input, 2 when the automorphism search exceeds its budget
/// (the input is passed through unchanged), 3 when verification fails.
#[derive(Parser, Debug)]
#[command(name = "lpsym", version, args_conflicts_with_subcommands = true)]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    #[command(flatten)]
    run: RunArgs,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Enumerate answer sets before and after symmetry breaking and report
    /// soundness, orbit completeness and compression. Small programs only.
    Verify {
        input: PathBuf,
        #[command(flatten)]
        detect: DetectArgs,
    },
    /// Write a benchmark instance in smodels format.
    Gen {
        #[command(subcommand)]
        family: Family,
        /// Output file; standard output if omitted.
        #[arg(short, long, global = true)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
enum Family {
    /// n pigeons, n - 1 holes.
    Pigeon {
        #[arg(value_parser = clap::value_parser!(u32).range(2..))]
        n: u32,
    },
    /// All-interval series of length n.
    Allint {
        #[arg(value_parser = clap::value_parser!(u32).range(3..))]
        n: u32,
    },
}

#[derive(Args, Debug)]
struct DetectArgs {
    /// Break symmetries only up to the k-th atom of each permutation.
    #[arg(long, value_name = "N|inf", default_value = "inf")]
    k: TruncationK,
    /// Do not give facts their own colour.
    #[arg(long)]
    no_opt_facts: bool,
    /// Keep a body vertex for rules with a single body literal.
    #[arg(long)]
    no_opt_unary: bool,
    /// Node limit for the automorphism search.
    #[arg(long, value_name = "NODES", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
}

impl DetectArgs {
    fn config(&self, name_sbc_atoms: bool) -> Config {
        Config {
            build: BuildOptions {
                opt_facts: !self.no_opt_facts,
                opt_unary: !self.no_opt_unary,
            },
            search: SearchOptions {
                node_budget: self.budget,
            },
            k: self.k,
            name_sbc_atoms,
            ..Config::default()
        }
    }
}

#[derive(Args, Debug)]
struct RunArgs {
    /// Input program; standard input if omitted or `-`.
    input: Option<PathBuf>,
    /// Output file; standard output if omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
    #[command(flatten)]
    detect: DetectArgs,
    /// Print detected generators in cycle notation to standard error.
    #[arg(long)]
    print_generators: bool,
    /// Print statistics to standard error.
    #[arg(long)]
    stats: bool,
    /// Check the result with the answer-set enumerator before writing it.
    #[arg(long)]
    verify: bool,
    /// Give chain atoms names in the symbol table.
    #[arg(long)]
    name_sbc_atoms: bool,
    /// Write the coloured graph in a line-based debug format.
    #[arg(long, value_name = "PATH")]
    dump_graph: Option<PathBuf>,
}

fn read_input(path: Option<&Path>) -> Result<Vec<u8>> {
    match path {
        None => read_stdin(),
        Some(p) if p == Path::new("-") => read_stdin(),
        Some(p) => fs::read(p).with_context(|| format!("cannot read {}", p.display())),
    }
}

fn read_stdin() -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    io::stdin()
        .read_to_end(&mut buf)
        .context("cannot read standard input")?;
    Ok(buf)
}

fn load(path: Option<&Path>) -> Result<Program> {
    let bytes = read_input(path)?;
    let name = path.map_or("<stdin>".into(), |p| p.display().to_string());
    parse_smodels(&bytes).with_context(|| format!("{name}: invalid program"))
}

fn write_output(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => fs::write(p, bytes).with_context(|| format!("cannot write {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush().context("cannot write standard output")
        }
    }
}

fn ms(d: Duration) -> String {
    format!("{:.3}ms", d.as_secs_f64() * 1000.0)
}

fn report(program: &Program, out: &Outcome, args: &RunArgs) {
    let d = &out.detection;
    if args.stats {
        eprintln!("generators: {}", d.generators.len());
    }
    if args.print_generators {
        for g in d.generators.generators() {
            eprintln!("  {}", g.cycle_form().render_with(|a| program.label(a)));
        }
    }
    if args.stats {
        let added: usize = out.sbc_rule_counts.iter().sum();
        let per: Vec<String> = out.sbc_rule_counts.iter().map(usize::to_string).collect();
        eprintln!(
            "graph: {} vertices, {} edges",
            d.graph_vertices, d.graph_edges
        );
        eprintln!(
            "search: {} raw generators, {} identity on atoms, {} rejected",
            d.raw_generators, d.identity_generators, d.rejected_generators
        );
        eprintln!("sbc rules: {added} (per generator: {})", per.join(" "));
        eprintln!(
            "time: graph {}, search {}, verify {}, sbc {}",
            ms(d.times.graph),
            ms(d.times.search),
            ms(d.times.verify),
            ms(d.times.sbc)
        );
    }
}

fn run_preprocess(args: &RunArgs) -> Result<ExitCode> {
    let program = load(args.input.as_deref())?;
    let config = args.detect.config(args.name_sbc_atoms);
    if let Some(path) = &args.dump_graph {
        let (graph, _) = build_graph(&program, config.build);
        fs::write(path, graph.to_debug_text())
            .with_context(|| format!("cannot write {}", path.display()))?;
    }
    let out = match preprocess(&program, &config) {
        Ok(out) => out,
        Err(e @ AutError::SearchBudgetExceeded(_)) => {
            eprintln!("warning: {e}; writing the program unchanged");
            write_output(args.output.as_deref(), &write_smodels(&program))?;
            return Ok(ExitCode::from(2));
        }
        Err(e) => return Err(e.into()),
    };
    report(&program, &out, args);
    if args.verify {
        let verdict = verify_sbc(&program, &out.detection.generators, &out.program)
            .context("cannot verify")?;
        eprintln!("verify: {verdict}");
        if !verdict.ok() {
            eprintln!("error: symmetry breaking failed verification; nothing written");
            return Ok(ExitCode::from(3));
        }
    }
    write_output(args.output.as_deref(), &write_smodels(&out.program))?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(input: &Path, detect: &DetectArgs) -> Result<ExitCode> {
    let program = load(Some(input))?;
    let out = preprocess(&program, &detect.config(false))?;
    let verdict = verify_sbc(&program, &out.detection.generators, &out.program)?;
    println!("{verdict}");
    Ok(if verdict.ok() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(3)
    })
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        None => run_preprocess(&cli.run),
        Some(Command::Verify { input, detect }) => run_verify(&input, &detect),
        Some(Command::Gen { family, output }) => {
            let program = match family {
                Family::Pigeon { n } => pigeon(n),
                Family::Allint { n } => allint(n),
            };
            write_output(output.as_deref(), &write_smodels(&program))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::FAILURE
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
