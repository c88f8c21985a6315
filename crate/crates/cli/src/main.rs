//! `bessel-geom`: evaluation, condition checks, thresholds, figure data and
//! parameter scans for normalized generalized Bessel functions.
//!
//! Exit codes: 0 success, 2 usage or domain error, 3 invariant violation
//! (the record is still printed).

mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Output;

#[derive(Parser, Debug)]
#[command(name = "bessel-geom", version, about = "Starlike/convex conditions for generalized Bessel functions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate u, u', u'' (and optionally w) at one point.
    Eval(EvalArgs),
    /// Run the coefficient, closed-form and disk layers for one parameter set.
    Check(CheckArgs),
    /// Locate the critical root of an auxiliary function.
    Threshold(ThresholdArgs),
    /// Tabulate an auxiliary function for plotting.
    Figure(FigureArgs),
    /// Classify a (p, alpha, beta) grid.
    Scan(ScanArgs),
    /// Printed-vs-derived corollary consistency report.
    Audit(AuditArgs),
}

#[derive(Args, Debug)]
pub struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// Real part of z.
    #[arg(long, allow_hyphen_values = true)]
    pub z: f64,
    #[arg(long, allow_hyphen_values = true, default_value_t = 0.0)]
    pub z_imag: f64,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Also evaluate w and its derivatives at x = z (real, positive).
    #[arg(long)]
    pub w: bool,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassArg {
    Star,
    Convex,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModeArg {
    Lemma,
    Theorem,
    Disk,
    All,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum VariantArg {
    Printed,
    Derived,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormatArg {
    Json,
    Csv,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormatArg {
    Json,
    Markdown,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub p: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: f64,
    #[arg(long, value_enum)]
    pub class: ClassArg,
    #[arg(long, value_enum, default_value_t = ModeArg::All)]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    /// Angles per ring of the disk grid.
    #[arg(long, default_value_t = 720)]
    pub angles: usize,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    /// 1 to 6.
    #[arg(long)]
    pub figure: u8,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Args, Debug)]
pub struct FigureArgs {
    #[arg(long)]
    pub figure: u8,
    #[arg(long, allow_hyphen_values = true)]
    pub low: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub high: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub step: f64,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub b: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub c: f64,
    /// `LOW:HIGH`; a single value gives one point.
    #[arg(long, allow_hyphen_values = true)]
    pub p_range: String,
    #[arg(long, allow_hyphen_values = true, default_value = "0")]
    pub alpha_range: String,
    #[arg(long, allow_hyphen_values = true, default_value = "1")]
    pub beta_range: String,
    #[arg(long, value_enum)]
    pub class: ClassArg,
    /// Points per non-degenerate axis.
    #[arg(long, default_value_t = 11)]
    pub steps: usize,
    #[arg(long, value_enum, default_value_t = VariantArg::Derived)]
    pub variant: VariantArg,
    #[arg(long, default_value_t = 1e-12)]
    pub eps: f64,
    #[arg(long, default_value_t = 720)]
    pub angles: usize,
    /// Worker threads, 0 = auto; overrides BESSEL_GEOM_THREADS.
    #[arg(long)]
    pub parallel: Option<usize>,
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    pub format: FormatArg,
}

#[derive(Args, Debug)]
pub struct AuditArgs {
    #[arg(long, value_enum, default_value_t = ReportFormatArg::Json)]
    pub format: ReportFormatArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Check(a) => commands::check(&a),
        Command::Threshold(a) => commands::threshold(&a),
        Command::Figure(a) => commands::figure(&a),
        Command::Scan(a) => commands::scan(&a),
        Command::Audit(a) => commands::audit(&a),
    };
    match outcome {
        Ok(done) => {
            let text = match done.output {
                Output::Json(v) => {
                    let mut s = serde_json::to_string_pretty(&output::sorted(v)).expect("serializable");
                    s.push('\n');
                    s
                }
                Output::Text(s) => s,
            };
            let mut stdout = std::io::stdout().lock();
            if stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).is_err() {
                return ExitCode::from(2);
            }
            if let Some(why) = done.violation {
                eprintln!("INCONSISTENT: {why}");
                return ExitCode::from(3);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
