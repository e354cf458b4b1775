//! `curvode`: command-line front end for curve-attached differential
//! equations.
//!
//! Exit codes: 0 success, 1 domain error, 2 usage error. Errors are written
//! to stderr as `{"error": <kind>, "message": <text>}`.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use curvode::coeff;
use curvode::curve::{expand_branch, sharp_embed, sharp_embed_relative, CurveChart};
use curvode::json::SeriesJson;
use curvode::numeric::{eval_function, EvalGrid};
use curvode::operator::DiffOperator;
use curvode::special;
use curvode::verify::{verify_bessel, Perturbation};
use curvode::{parse_expr, Coefficient, Error};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "curvode", version, about = "Differential equations attached to plane algebraic curves")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Expand the branch u(t) of a chart.
    Expand {
        #[arg(long)]
        chart: String,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Laurent expansion ♯(expr) at the chart point.
    Embed {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Solution basis of expr(D) w = 0.
    Solve {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        expr: String,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// The solution of expr(D) w = 0 with given derivatives at 0.
    Ivp {
        #[arg(long)]
        chart: String,
        #[arg(long)]
        expr: String,
        /// Comma-separated w(0), w'(0), … as rationals.
        #[arg(long, allow_hyphen_values = true)]
        init: String,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Sample a solution on a grid lo:hi:count containing 0.
    Eval {
        /// Solution JSON file, or `-` for stdin.
        #[arg(long, default_value = "-")]
        input: String,
        #[arg(long, allow_hyphen_values = true)]
        grid: String,
        /// Which basis element to use when the input is a `solve` result.
        #[arg(long, default_value_t = 0)]
        index: usize,
    },
    /// Check the Bessel closed forms, recurrence and fundamental systems.
    Verify {
        #[arg(long, default_value_t = 8)]
        n_max: u32,
        #[arg(long, default_value_t = 40)]
        trunc: usize,
        /// Test mode: add 1/1000 to derivative INDEX of J_ORDER first.
        #[arg(long, value_name = "ORDER:INDEX")]
        perturb: Option<String>,
    },
    /// Taylor model of J_n.
    Bessel {
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 20)]
        trunc: usize,
    },
    /// Laguerre polynomial L_n as a Taylor model.
    Laguerre {
        #[arg(long)]
        n: u32,
    },
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    kind: String,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Self { code: 2, kind: "UsageError".into(), message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Syntax { .. }
            | Error::UnknownVariable(_)
            | Error::Format(_)
            | Error::InvalidGrid(_)
            | Error::InitLength { .. } => 2,
            _ => 1,
        };
        Self { code, kind: e.kind().into(), message: e.to_string() }
    }
}

/// Command output plus whether it represents success.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn json(v: &Value) -> Self {
        Self { text: format!("{v}\n"), ok: true }
    }
}

fn load_chart(spec: &str) -> Result<CurveChart, Failure> {
    match spec {
        "hyperbola" => Ok(CurveChart::hyperbola()),
        "line" | "projective-line" => Ok(CurveChart::projective_line()),
        s if s.trim_start().starts_with('{') => Ok(CurveChart::from_json(s)?),
        path => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::usage(format!("cannot read chart `{path}`: {e}")))?;
            Ok(CurveChart::from_json(&text)?)
        }
    }
}

fn read_input(spec: &str) -> Result<String, Failure> {
    if spec == "-" {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::usage(format!("cannot read stdin: {e}")))?;
        Ok(text)
    } else {
        fs::read_to_string(spec).map_err(|e| Failure::usage(format!("cannot read `{spec}`: {e}")))
    }
}

fn series_value(s: &SeriesJson) -> Value {
    serde_json::to_value(s).expect("plain data")
}

fn operator_for(chart: &str, expr: &str, trunc: usize) -> Result<DiffOperator, Failure> {
    let chart = load_chart(chart)?;
    let expr = parse_expr(expr)?;
    let phi = sharp_embed_relative(&expr, &chart, trunc)?;
    Ok(DiffOperator::new(phi)?)
}

fn parse_init(text: &str) -> Result<Vec<Coefficient>, Failure> {
    if text.trim().is_empty() {
        return Ok(Vec::new());
    }
    text.split(',')
        .map(|s| coeff::parse(s).map_err(|e| Failure::usage(e.to_string())))
        .collect()
}

fn parse_perturbation(text: &str) -> Result<Perturbation, Failure> {
    let bad = || Failure::usage(format!("expected ORDER:INDEX, got `{text}`"));
    let (order, index) = text.split_once(':').ok_or_else(bad)?;
    Ok(Perturbation {
        order: order.trim().parse().map_err(|_| bad())?,
        index: index.trim().parse().map_err(|_| bad())?,
        delta: coeff::ratio(1, 1000),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    match &cli.command {
        Command::Expand { chart, trunc } => {
            let u = expand_branch(&load_chart(chart)?, *trunc)?;
            Ok(Output::json(&series_value(&SeriesJson::from_series(&u))))
        }
        Command::Embed { chart, expr, trunc } => {
            let phi = sharp_embed(&parse_expr(expr)?, &load_chart(chart)?, *trunc)?;
            Ok(Output::json(&series_value(&SeriesJson::from_laurent(&phi))))
        }
        Command::Solve { chart, expr, trunc } => {
            let op = operator_for(chart, expr, *trunc)?;
            let degree = op.degree();
            if degree <= 0 {
                return Ok(Output::json(&json!({
                    "degree": degree,
                    "basis": [],
                    "note": "no solutions other than 0",
                })));
            }
            let basis: Vec<Value> = op
                .solve(*trunc)?
                .iter()
                .map(|w| series_value(&SeriesJson::from_function(w)))
                .collect();
            Ok(Output::json(&json!({ "degree": degree, "basis": basis })))
        }
        Command::Ivp { chart, expr, init, trunc } => {
            let op = operator_for(chart, expr, *trunc)?;
            let init = parse_init(init)?;
            let degree = op.degree();
            if degree > 0 && init.len() != degree as usize {
                return Err(Failure {
                    code: 2,
                    kind: "UsageError".into(),
                    message: format!("degree {degree} equation needs {degree} initial values, got {}", init.len()),
                });
            }
            let w = op.solve_ivp(&init, *trunc)?;
            Ok(Output::json(&series_value(&SeriesJson::from_function(&w))))
        }
        Command::Eval { input, grid, index } => {
            let grid = EvalGrid::parse(grid)?;
            let text = read_input(input)?;
            let value: Value = serde_json::from_str(&text).map_err(|e| Failure::from(Error::Format(e.to_string())))?;
            let series = match value.get("basis") {
                Some(Value::Array(items)) => items
                    .get(*index)
                    .cloned()
                    .ok_or_else(|| Failure::usage(format!("basis has no element {index}")))?,
                _ => value,
            };
            let series: SeriesJson =
                serde_json::from_value(series).map_err(|e| Failure::from(Error::Format(e.to_string())))?;
            let table = eval_function(&series.to_function()?, &grid);
            match cli.format.unwrap_or(Format::Csv) {
                Format::Csv => Ok(Output { text: table.to_csv(), ok: true }),
                Format::Json => {
                    let rows: Vec<Value> = table
                        .rows
                        .iter()
                        .map(|r| {
                            json!({
                                "xi": r.xi,
                                "value": r.value,
                                "tail_bound": if r.tail_bound.is_finite() { json!(r.tail_bound) } else { Value::Null },
                                "tail_unreliable": r.tail_unreliable,
                            })
                        })
                        .collect();
                    Ok(Output::json(&json!({ "rows": rows })))
                }
            }
        }
        Command::Verify { n_max, trunc, perturb } => {
            let perturb = perturb.as_deref().map(parse_perturbation).transpose()?;
            let report = verify_bessel(*n_max, *trunc, perturb.as_ref());
            let ok = report.all_passed();
            let text = match cli.format {
                Some(Format::Json) => {
                    let checks: Vec<Value> = report
                        .checks
                        .iter()
                        .map(|c| json!({ "name": c.name, "passed": c.passed, "detail": c.detail }))
                        .collect();
                    format!("{}\n", json!({ "passed": ok, "checks": checks }))
                }
                _ => {
                    let summary = if ok { "all checks passed" } else { "some checks FAILED" };
                    format!("{report}{summary}\n")
                }
            };
            Ok(Output { text, ok })
        }
        Command::Bessel { n, trunc } => {
            let w = special::bessel_series(*n, *trunc);
            Ok(Output::json(&series_value(&SeriesJson::from_function(&w))))
        }
        Command::Laguerre { n } => {
            let w = special::laguerre(*n);
            Ok(Output::json(&series_value(&SeriesJson::from_function(&w))))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let written = match &cli.out {
                Some(path) => fs::write(path, &out.text),
                None => io::stdout().write_all(out.text.as_bytes()),
            };
            if let Err(e) = written {
                eprintln!("{}", json!({ "error": "IoError", "message": e.to_string() }));
                return ExitCode::from(2);
            }
            if out.ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.kind, "message": f.message }));
            ExitCode::from(f.code)
        }
    }
}
