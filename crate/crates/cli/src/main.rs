use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use qtower::{
    bench::{self, speedup},
    bm, bm_interpolate, build_line_cover, classify, drimb, drinb, generate, lower_set,
    newton_interpolate, parse_points, parse_values, plot, points_to_csv, qtbm, verify_groebner,
    Axis, BenchConfig, Error, FieldSpec, Flavor, GeneratorConfig, GroebnerOutput, MonomialOrder,
    PointSet,
};

#[derive(Parser)]
#[command(
    name = "qtower",
    version,
    about = "Interpolation bases and vanishing ideals of planar point sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Common {
    /// `rational` or a prime p < 2^31.
    #[arg(long, default_value = "rational")]
    field: FieldSpec,
    /// lex, invlex, grlex or grevlex.
    #[arg(long, default_value = "grlex")]
    order: MonomialOrder,
    /// Write output here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Bm,
    Qtbm,
}

#[derive(Subcommand)]
enum Command {
    /// Line-cover classification and lower sets.
    Classify {
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Degree-reducing monomial and Newton bases.
    Basis {
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Reduced Gröbner basis of the vanishing ideal.
    Groebner {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, value_enum, default_value = "bm")]
        algo: AlgoArg,
        #[command(flatten)]
        common: Common,
    },
    /// Interpolating polynomial for prescribed values.
    Interpolate {
        #[arg(long)]
        points: PathBuf,
        /// One scalar per line, or a JSON array, aligned with the points.
        #[arg(long)]
        values: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Random point set as CSV.
    Gen {
        /// quasi_x, quasi_y, x_tower, y_tower or arbitrary.
        #[arg(long)]
        flavor: Flavor,
        #[arg(long)]
        mu: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Time BM against QTBM; prints CSV.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "grlex")]
        orders: Vec<MonomialOrder>,
        #[arg(long, value_delimiter = ',', default_value = "37")]
        fields: Vec<FieldSpec>,
        #[arg(long, value_delimiter = ',', default_value = "100,200,300")]
        mus: Vec<usize>,
        #[arg(long, default_value_t = 3)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run cells concurrently.
        #[arg(long)]
        parallel: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a Gröbner output JSON against a point set.
    Verify {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        groebner: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// SVG scatter plot.
    Plot {
        #[arg(long)]
        points: PathBuf,
        #[arg(long, default_value = "rational")]
        field: FieldSpec,
        #[arg(long)]
        out: PathBuf,
    },
}

enum Failure {
    Error(Error),
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Error(Error::Io(e))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(report)) => {
            println!("{report}");
            ExitCode::from(3)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Io(_) => 1,
        Error::OutputMismatch(_)
        | Error::NonZeroResidual(_)
        | Error::TriangularityViolation { .. }
        | Error::ClassificationMismatch(_) => 3,
        _ => 2,
    }
}

fn read_points(path: &Path, field: FieldSpec) -> Result<PointSet, Failure> {
    Ok(parse_points(&std::fs::read_to_string(path)?, field)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn pretty(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Classify { points, common } => {
            let s = read_points(&points, common.field)?;
            let report = json!({
                "mu": s.len(),
                "classification": classify(&s),
                "x_lower_set": lower_set(&build_line_cover(&s, Axis::X)).to_string(),
                "y_lower_set": lower_set(&build_line_cover(&s, Axis::Y)).to_string(),
            });
            emit(common.out.as_deref(), &pretty(&report))
        }
        Command::Basis { points, common } => {
            let s = read_points(&points, common.field)?;
            let report = json!({
                "monomials": drimb(&s, common.order)?,
                "newton": drinb(&s, common.order)?.elements,
            });
            emit(common.out.as_deref(), &pretty(&report))
        }
        Command::Groebner {
            points,
            algo,
            common,
        } => {
            let s = read_points(&points, common.field)?;
            let out = match algo {
                AlgoArg::Bm => bm(&s, common.order),
                AlgoArg::Qtbm => qtbm(&s, common.order)?,
            };
            emit(common.out.as_deref(), &pretty(&out.to_json(common.order)))
        }
        Command::Interpolate {
            points,
            values,
            common,
        } => {
            let s = read_points(&points, common.field)?;
            let f = parse_values(&std::fs::read_to_string(values)?, common.field)?;
            let p = match newton_interpolate(&s, &f, common.order) {
                Err(Error::Unsupported { reason, .. }) => {
                    eprintln!("note: {reason}; interpolating through BM instead");
                    bm_interpolate(&s, &f, common.order)?
                }
                other => other?,
            };
            emit(
                common.out.as_deref(),
                &format!("{}\n", p.format(common.order)),
            )
        }
        Command::Gen {
            flavor,
            mu,
            seed,
            common,
        } => {
            let s = generate(GeneratorConfig {
                field: common.field,
                flavor,
                mu,
                seed,
            })?;
            emit(common.out.as_deref(), &points_to_csv(&s))
        }
        Command::Bench {
            orders,
            fields,
            mus,
            trials,
            seed,
            parallel,
            out,
        } => {
            let config = BenchConfig {
                orders,
                fields,
                mus,
                trials,
                seed,
                parallel,
            };
            let records = bench::bench(&config)?;
            for &o in &config.orders {
                for &f in &config.fields {
                    for &m in &config.mus {
                        if let Some(r) = speedup(&records, o, f, m) {
                            eprintln!("{o} over {f}, mu = {m}: bm/qtbm = {r:.2}");
                        }
                    }
                }
            }
            emit(out.as_deref(), &bench::to_csv(&records))
        }
        Command::Verify {
            points,
            groebner,
            common,
        } => {
            let s = read_points(&points, common.field)?;
            let text = std::fs::read_to_string(groebner)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let out = GroebnerOutput::from_json(&value, common.field)?;
            let report = verify_groebner(&s, &out, common.order);
            let text = pretty(&serde_json::to_value(&report).expect("report serializes"));
            if report.passed {
                emit(common.out.as_deref(), &text)
            } else {
                Err(Failure::Verification(text.trim_end().to_string()))
            }
        }
        Command::Plot { points, field, out } => {
            let s = read_points(&points, field)?;
            plot(&s, &out)?;
            Ok(())
        }
    }
}
