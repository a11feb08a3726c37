//! The `tricolor` command line.
//!
//! Exit codes: 0 success, 1 unusable input (parse, model, size limit, singular matrix),
//! 2 the combinatorial and algebraic computations disagree, 3 a predicate or invariant fails.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{Error, Result};
use crate::generators::{ColoringMode, Family, GreenOrientation, Labels};
use crate::graph::{parse_graph, ColoredDigraph};
use crate::report::{classify, invert, InverseMethod, ReportOptions};
use crate::verify::{verify, SweepSpec};

pub const EXIT_OK: u8 = 0;
pub const EXIT_INPUT: u8 = 1;
pub const EXIT_DISAGREEMENT: u8 = 2;
pub const EXIT_COUNTEREXAMPLE: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "tricolor", version, about = "Determinants, inverses and invertibility checks for 3-colored digraphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Shape, model membership, determinant by both methods and predicate verdicts.
    Analyze(InputArgs),
    /// The inverse adjacency matrix.
    Invert {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value = "both")]
        method: MethodArg,
    },
    /// Like `analyze`, but the graph must be unicyclic or bicyclic with an imaginary cycle, and
    /// the inverse is included.
    Classify(InputArgs),
    /// Sweeps generated graphs and checks every predicate and invariant against exact arithmetic.
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Graph file; `-` reads standard input.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
    /// Record wall time in the report (output is then no longer reproducible byte for byte).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Families to sweep; all three when omitted.
    #[arg(long, value_enum)]
    pub family: Vec<FamilyArg>,
    #[arg(long, default_value_t = 8)]
    pub max_n: usize,
    #[arg(long, value_enum, default_value = "exhaustive")]
    pub coloring: ColoringArg,
    /// Random instances per order with `--coloring sample`.
    #[arg(long, default_value_t = 5000)]
    pub samples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Green arc orientations in exhaustive mode.
    #[arg(long, value_enum, default_value = "canonical")]
    pub green: GreenArg,
    /// Every labelled skeleton instead of one per isomorphism class (orders up to 8).
    #[arg(long)]
    pub labeled: bool,
    /// Also write the full JSON report here.
    #[arg(long)]
    pub report_path: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: Format,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum MethodArg {
    Combinatorial,
    Algebraic,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Unicyclic,
    Binf,
    Btheta,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ColoringArg {
    Exhaustive,
    Sample,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GreenArg {
    Canonical,
    Both,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Unicyclic => Family::Unicyclic,
            FamilyArg::Binf => Family::BicyclicInfinity,
            FamilyArg::Btheta => Family::BicyclicTheta,
        }
    }
}

impl From<MethodArg> for InverseMethod {
    fn from(m: MethodArg) -> InverseMethod {
        match m {
            MethodArg::Combinatorial => InverseMethod::Combinatorial,
            MethodArg::Algebraic => InverseMethod::Algebraic,
            MethodArg::Both => InverseMethod::Both,
        }
    }
}

impl VerifyArgs {
    pub fn sweep_spec(&self) -> SweepSpec {
        let mut families: Vec<Family> = self.family.iter().map(|&f| f.into()).collect();
        if families.is_empty() {
            families = Family::ALL.to_vec();
        }
        families.sort();
        families.dedup();
        let coloring = match self.coloring {
            ColoringArg::Exhaustive => ColoringMode::Exhaustive {
                green: match self.green {
                    GreenArg::Canonical => GreenOrientation::Canonical,
                    GreenArg::Both => GreenOrientation::Both,
                },
            },
            ColoringArg::Sample => ColoringMode::Sampled { count: self.samples, seed: self.seed },
        };
        let mut spec = SweepSpec::new(families, self.max_n, coloring);
        if self.labeled {
            spec.labels = Labels::All;
        }
        spec
    }
}

/// What a command printed and how it ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String, code: u8) -> Self {
        Outcome { stdout, stderr: String::new(), code }
    }

    fn failed(e: &Error) -> Self {
        Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: EXIT_INPUT }
    }
}

fn read_graph(path: &Path) -> Result<ColoredDigraph> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Error::Precondition(format!("cannot read standard input: {e}")))?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?
    };
    parse_graph(&text)
}

fn render(format: Format, text: String, json: String) -> String {
    match format {
        Format::Text => text,
        Format::Json => json,
    }
}

fn analyze(args: &InputArgs, require_model: bool) -> Result<Outcome> {
    let g = read_graph(&args.input)?;
    let report = classify(&g, ReportOptions { inverse: require_model, timing: args.timing })?;
    if require_model {
        if let Some(reason) = &report.verdicts_skipped {
            return Err(Error::Precondition(reason.clone()));
        }
    }
    let code = if report.methods_disagree() {
        EXIT_DISAGREEMENT
    } else if report.has_counterexample() {
        EXIT_COUNTEREXAMPLE
    } else {
        EXIT_OK
    };
    Ok(Outcome::ok(render(args.format, report.to_text(), report.to_json()), code))
}

fn inverse(args: &InputArgs, method: MethodArg) -> Result<Outcome> {
    let g = read_graph(&args.input)?;
    let report = invert(&g, method.into())?;
    let code = if report.methods_agree == Some(false) { EXIT_DISAGREEMENT } else { EXIT_OK };
    Ok(Outcome::ok(render(args.format, report.to_text(), report.to_json()), code))
}

fn sweep(args: &VerifyArgs) -> Result<Outcome> {
    let report = verify(args.sweep_spec())?;
    let json = serde_json::to_string_pretty(&report).expect("reports serialize") + "\n";
    if let Some(path) = &args.report_path {
        fs::write(path, &json).map_err(|e| Error::Precondition(format!("cannot write {}: {e}", path.display())))?;
    }
    let code = if report.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE };
    Ok(Outcome::ok(render(args.format, report.to_text(), json), code))
}

/// Runs a parsed command without touching the process streams (except `--input -`).
pub fn execute(cli: &Cli) -> Outcome {
    let result = match &cli.command {
        Command::Analyze(args) => analyze(args, false),
        Command::Classify(args) => analyze(args, true),
        Command::Invert { input, method } => inverse(input, *method),
        Command::Verify(args) => sweep(args),
    };
    result.unwrap_or_else(|e| Outcome::failed(&e))
}

/// Parses `args` (including the program name), runs the command and prints its output.
pub fn run<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_OK });
        }
    };
    let outcome = execute(&cli);
    print!("{}", outcome.stdout);
    eprint!("{}", outcome.stderr);
    ExitCode::from(outcome.code)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("tricolor").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn verify_defaults() {
        let Command::Verify(args) = parse(&["verify"]).command else { panic!("not verify") };
        let spec = args.sweep_spec();
        assert_eq!(spec.families, Family::ALL.to_vec());
        assert_eq!(spec.max_n, 8);
        assert_eq!(spec.coloring, ColoringMode::Exhaustive { green: GreenOrientation::Canonical });
    }

    #[test]
    fn verify_sampling_flags() {
        let cli = parse(&["verify", "--family", "binf", "--max-n", "9", "--coloring", "sample", "--samples", "50", "--seed", "4"]);
        let Command::Verify(args) = cli.command else { panic!("not verify") };
        let spec = args.sweep_spec();
        assert_eq!(spec.families, vec![Family::BicyclicInfinity]);
        assert_eq!(spec.coloring, ColoringMode::Sampled { count: 50, seed: 4 });
    }

    #[test]
    fn oversize_sweep_is_an_input_error() {
        let out = execute(&parse(&["verify", "--family", "unicyclic", "--max-n", "40"]));
        assert_eq!(out.code, EXIT_INPUT);
        assert!(out.stderr.contains("limit"));
    }

    #[test]
    fn missing_file_is_an_input_error() {
        let out = execute(&parse(&["analyze", "--input", "/nonexistent/graph.txt"]));
        assert_eq!(out.code, EXIT_INPUT);
    }
}
