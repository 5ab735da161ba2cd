use clap::{Parser, Subcommand, ValueEnum};
use qpade_core::algebra::{parse_scalar, parse_scalar_list, Scalar};
use qpade_core::qrt::{orbit, orbit_csv, sample_config, verify_qrt, Pencil, QrtConfig, Variant};
use qpade_core::report::{tally, CheckReport};
use qpade_core::suite::{self, SuiteOptions, Target, VerifyOptions, WeylGroup, QRT_STEPS};
use qpade_core::Error;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(
    name = "qpade",
    version,
    about = "Exact verification of Padé-derived q-Painlevé systems"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Padé, Lax and compatibility checks over sampled or explicit parameters.
    Verify {
        #[arg(value_enum)]
        target: VerifyTarget,
        /// Base q as "p/q"; needs --a.
        #[arg(long, requires = "a")]
        q: Option<String>,
        /// a1,a2,a3,a4 as comma-separated rationals; needs --q.
        #[arg(long, requires = "q")]
        a: Option<String>,
        #[arg(long, requires = "n")]
        m: Option<usize>,
        #[arg(long, requires = "m")]
        n: Option<usize>,
        /// Samples per (m, n); default 5 (3 for directions).
        #[arg(long)]
        samples: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Pencil construction and orbit of a QRT map; the orbit goes to stdout as CSV.
    Qrt {
        #[arg(long, value_enum, default_value_t = QrtVariant::Qp6)]
        variant: QrtVariant,
        #[arg(long, default_value_t = QRT_STEPS)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// a1..a8 as comma-separated rationals; sampled when absent.
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        x0: Option<String>,
        #[arg(long)]
        y0: Option<String>,
        /// Write the orbit here instead of stdout.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Relation tables and translations of the W(E6) birational action.
    Weyl {
        #[arg(value_enum)]
        group: WeylTarget,
        #[arg(long, default_value_t = 5)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Every check group at its default size.
    Suite {
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Add the floating-point truncated-product comparison (non-exact).
        #[arg(long)]
        float_sanity: bool,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(clap::Args, Debug)]
struct Output {
    /// Write the JSON report array here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Format for stdout.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum VerifyTarget {
    D5,
    E6,
    Solutions,
    Directions,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum QrtVariant {
    Qp6,
    E6,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum WeylTarget {
    Relations,
    Translation,
    Directions,
}

/// Exit codes: 0 all pass, 1 a check failed, 2 invalid configuration,
/// 3 sampling exhausted.
enum Failure {
    Config(String),
    Exhausted(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::SamplingExhausted { .. } => Failure::Exhausted(e.to_string()),
            Error::Precondition(_) | Error::Parse(_) | Error::Inadmissible(_) => {
                Failure::Config(e.to_string())
            }
            // explicit parameters that land on a pole or a degenerate point
            e if e.is_resample() => Failure::Config(e.to_string()),
            e => Failure::Internal(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Config(m) => (2, m),
                Failure::Exhausted(m) => (3, m),
                Failure::Internal(m) => (1, m),
            };
            eprintln!("qpade: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cmd: Command) -> Result<ExitCode, Failure> {
    match cmd {
        Command::Verify {
            target,
            q,
            a,
            m,
            n,
            samples,
            seed,
            out,
        } => {
            let target = match target {
                VerifyTarget::D5 => Target::D5,
                VerifyTarget::E6 => Target::E6,
                VerifyTarget::Solutions => Target::Solutions,
                VerifyTarget::Directions => Target::Directions,
            };
            let point = match (q, a) {
                (Some(q), Some(a)) => {
                    let a: [Scalar; 4] = parse_scalar_list(&a)?
                        .try_into()
                        .map_err(|_| Failure::Config("--a needs exactly 4 values".into()))?;
                    Some((parse_scalar(&q)?, a))
                }
                _ => None,
            };
            let opts = VerifyOptions {
                seed,
                samples: samples.unwrap_or_else(|| target.default_samples()),
                degrees: m.zip(n),
                point,
            };
            emit(&suite::run_verify(target, &opts)?, &out)
        }
        Command::Qrt {
            variant,
            steps,
            seed,
            a,
            x0,
            y0,
            csv,
            json,
        } => qrt(variant, steps, seed, a, x0, y0, csv, json),
        Command::Weyl {
            group,
            samples,
            seed,
            out,
        } => {
            let group = match group {
                WeylTarget::Relations => WeylGroup::Relations,
                WeylTarget::Translation => WeylGroup::Translation,
                WeylTarget::Directions => WeylGroup::Directions,
            };
            emit(&suite::weyl_checks(seed, samples, group)?, &out)
        }
        Command::Suite {
            seed,
            float_sanity,
            out,
        } => emit(&suite::run_suite(SuiteOptions { seed, float_sanity })?, &out),
    }
}

#[allow(clippy::too_many_arguments)]
fn qrt(
    variant: QrtVariant,
    steps: usize,
    seed: u64,
    a: Option<String>,
    x0: Option<String>,
    y0: Option<String>,
    csv: Option<PathBuf>,
    json: Option<PathBuf>,
) -> Result<ExitCode, Failure> {
    let variant = match variant {
        QrtVariant::Qp6 => Variant::Qp6,
        QrtVariant::E6 => Variant::E6,
    };
    let (sampled_cfg, sx, sy) =
        suite::sampled(seed, variant.tag(), (0, 0), 0, |rng| sample_config(rng, variant))?;
    let cfg = match a {
        Some(text) => {
            let a: [Scalar; 8] = parse_scalar_list(&text)?
                .try_into()
                .map_err(|_| Failure::Config("--a needs exactly 8 values".into()))?;
            QrtConfig { variant, a }
        }
        None => sampled_cfg,
    };
    let x0 = x0.map(|t| parse_scalar(&t)).transpose()?.unwrap_or(sx);
    let y0 = y0.map(|t| parse_scalar(&t)).transpose()?.unwrap_or(sy);

    let reports = verify_qrt(&cfg, &x0, &y0, steps)?;
    match Pencil::new(&cfg) {
        Ok(pencil) => {
            let text = orbit_csv(&orbit(&pencil, &x0, &y0, steps)?);
            match &csv {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
        }
        Err(Error::ConditionViolated(_)) => {}
        Err(e) => return Err(e.into()),
    }
    if let Some(path) = &json {
        write(path, &to_json(&reports))?;
    }
    // stdout may carry the CSV, so the summary goes to stderr
    eprint!("{}", text_summary(&reports));
    Ok(exit_code(&reports))
}

fn emit(reports: &[CheckReport], out: &Output) -> Result<ExitCode, Failure> {
    if let Some(path) = &out.json {
        write(path, &to_json(reports))?;
    }
    match out.format {
        Format::Text => print!("{}", text_summary(reports)),
        Format::Json => println!("{}", to_json(reports)),
    }
    Ok(exit_code(reports))
}

fn exit_code(reports: &[CheckReport]) -> ExitCode {
    if reports.iter().any(CheckReport::failed) {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn to_json(reports: &[CheckReport]) -> String {
    serde_json::to_string_pretty(reports).expect("reports serialize")
}

fn write(path: &PathBuf, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Failure::Config(format!("{}: {e}", path.display())))
}

fn text_summary(reports: &[CheckReport]) -> String {
    let mut s = String::new();
    for (name, [pass, fail, skip]) in suite::summarize(reports) {
        let status = if fail > 0 {
            "FAIL"
        } else if pass > 0 {
            "ok"
        } else {
            "skip"
        };
        s += &format!("{status:<5}{name:<56}{pass:>5} pass{fail:>5} fail{skip:>5} skip\n");
    }
    for r in reports.iter().filter(|r| r.failed()) {
        s += &format!(
            "failed {} {:?}\n  lhs {}\n  rhs {}\n",
            r.check, r.params, r.lhs, r.rhs
        );
    }
    let t = tally(reports);
    s += &format!("total: {} pass, {} fail, {} skip\n", t.pass, t.fail, t.skip);
    s
}
