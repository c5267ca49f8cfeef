use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use qembed::count::{BackendKind, CountBackend, DEFAULT_ENUMERATE_LIMIT};
use qembed::embed::{embed_bennett, embed_coded, embed_minimal, verify_embedding, write_embedding};
use qembed::pla::Format;
use qembed::report::{analyze_file, render_summary, report_csv, run_batch, Emit, RunConfig};
use qembed::selftest::{run_selftest, SelftestConfig};
use qembed::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_INPUT: u8 = 2;

/// Qubit counts and coded reversible embeddings for Boolean functions.
#[derive(Parser)]
#[command(name = "qembed", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print histogram, codes and widths for each input function.
    Analyze(AnalyzeArgs),
    /// Write the width comparison table as CSV.
    Report(InputArgs),
    /// Build an embedding and write it as an annotated truth table.
    Embed(EmbedArgs),
    /// Dump the Pseudo-Huffman tree of a function.
    Tree(TreeArgs),
    /// Check the root-weight bound on random functions.
    Selftest(SelftestArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Auto,
    Pla,
    Tt,
}

#[derive(Clone, Copy, ValueEnum)]
enum BackendArg {
    Cofactor,
    Enumerate,
}

#[derive(Clone, Copy, ValueEnum)]
enum EmitArg {
    Summary,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Bennett,
    Minimal,
    Coded,
}

#[derive(Args)]
struct InputArgs {
    /// Function files (.pla, .tt) or directories containing them.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[arg(long, value_enum, default_value = "cofactor")]
    backend: BackendArg,
    #[arg(long, default_value_t = DEFAULT_ENUMERATE_LIMIT)]
    enumerate_limit: u32,
    /// Treat minterms covered by no row as output 0.
    #[arg(long)]
    implicit_zero: bool,
    /// Leave reversible functions out of the results.
    #[arg(long)]
    skip_reversible: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct AnalyzeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value = "summary")]
    emit: EmitArg,
}

#[derive(Args)]
struct EmbedArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "coded")]
    scheme: SchemeArg,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[arg(long)]
    implicit_zero: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct TreeArgs {
    input: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    format: FormatArg,
    #[arg(long)]
    implicit_zero: bool,
    /// Indented text instead of DOT.
    #[arg(long)]
    text: bool,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct SelftestArgs {
    #[arg(long, default_value_t = 10_000)]
    iterations: usize,
    #[arg(long, default_value_t = 10)]
    max_n: u32,
    #[arg(long, default_value_t = 0x5eed)]
    seed: u64,
}

fn format_of(arg: FormatArg) -> Option<Format> {
    match arg {
        FormatArg::Auto => None,
        FormatArg::Pla => Some(Format::Pla),
        FormatArg::Tt => Some(Format::TruthTable),
    }
}

impl InputArgs {
    fn config(&self, emit: Emit) -> RunConfig {
        RunConfig {
            inputs: self.inputs.clone(),
            format: format_of(self.format),
            backend: CountBackend {
                kind: match self.backend {
                    BackendArg::Cofactor => BackendKind::Cofactor,
                    BackendArg::Enumerate => BackendKind::Enumerate,
                },
                enumerate_limit: self.enumerate_limit,
                memoize: true,
            },
            implicit_zero: self.implicit_zero,
            skip_reversible: self.skip_reversible,
            emit,
            output_path: self.output.clone(),
        }
    }
}

fn write_output(path: Option<&Path>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Error::Io {
            path: p.to_path_buf(),
            message: e.to_string(),
        }),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).map_err(|e| Error::Io {
                path: "<stdout>".into(),
                message: e.to_string(),
            })
        }
    }
}

fn batch(cfg: &RunConfig) -> Result<u8, Error> {
    let results = run_batch(cfg)?;
    if results.is_empty() {
        eprintln!("qembed: no .pla or .tt files found");
        return Ok(EXIT_INPUT);
    }
    let mut status = 0;
    let mut text = String::new();
    let mut reports = Vec::new();
    for (path, outcome) in results {
        match outcome {
            Ok(Some(analysis)) => {
                for w in &analysis.warnings {
                    eprintln!("{}:{}: warning: {}", path.display(), w.line, w.message);
                }
                if cfg.emit == Emit::Summary {
                    text.push_str(&render_summary(&analysis));
                    text.push('\n');
                }
                reports.push(analysis.report);
            }
            Ok(None) => eprintln!("{}: reversible, skipped", path.display()),
            Err(e) => {
                eprintln!("qembed: {e}");
                status = EXIT_INPUT;
            }
        }
    }
    if cfg.emit == Emit::Csv && !reports.is_empty() {
        text = report_csv(&reports);
    }
    write_output(cfg.output_path.as_deref(), &text)?;
    Ok(status)
}

fn embed(args: &EmbedArgs) -> Result<u8, Error> {
    let cfg = RunConfig {
        inputs: vec![args.input.clone()],
        format: format_of(args.format),
        implicit_zero: args.implicit_zero,
        ..Default::default()
    };
    let Some(a) = analyze_file(&args.input, &cfg)? else {
        unreachable!("skip_reversible is off");
    };
    let f = &a.function;
    let spec = match args.scheme {
        SchemeArg::Bennett => embed_bennett(f),
        SchemeArg::Minimal => embed_minimal(f, &a.histogram)?,
        SchemeArg::Coded => embed_coded(f, &a.histogram, &a.codebook)?,
    };
    let report = verify_embedding(&spec, f);
    write_output(args.output.as_deref(), &write_embedding(&spec)?)?;
    eprintln!("{report}");
    Ok(if report.passed() { 0 } else { EXIT_INPUT })
}

fn tree(args: &TreeArgs) -> Result<u8, Error> {
    let cfg = RunConfig {
        inputs: vec![args.input.clone()],
        format: format_of(args.format),
        implicit_zero: args.implicit_zero,
        emit: Emit::TreeDot,
        ..Default::default()
    };
    let Some(a) = analyze_file(&args.input, &cfg)? else {
        unreachable!("skip_reversible is off");
    };
    let text = if args.text {
        a.tree.render_text()
    } else {
        a.tree.to_dot()
    };
    write_output(args.output.as_deref(), &text)?;
    Ok(0)
}

fn selftest(args: &SelftestArgs) -> Result<u8, Error> {
    let summary = run_selftest(&SelftestConfig {
        iterations: args.iterations,
        max_n: args.max_n,
        seed: args.seed,
        ..Default::default()
    })?;
    for failure in &summary.failures {
        eprintln!("{failure}");
    }
    println!(
        "theorem holds: {}/{} ({} with root weight n, {} with n+1)",
        summary.passed,
        summary.iterations,
        summary.exactly_n,
        summary.passed - summary.exactly_n
    );
    Ok(if summary.all_passed() { 0 } else { EXIT_INPUT })
}

fn configure_threads() {
    if let Some(n) = std::env::var("QEMBED_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    configure_threads();
    let result = match &cli.command {
        Command::Analyze(a) => batch(&a.input.config(match a.emit {
            EmitArg::Summary => Emit::Summary,
            EmitArg::Csv => Emit::Csv,
        })),
        Command::Report(input) => batch(&input.config(Emit::Csv)),
        Command::Embed(args) => embed(args),
        Command::Tree(args) => tree(args),
        Command::Selftest(args) => selftest(args),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("qembed: {e}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
