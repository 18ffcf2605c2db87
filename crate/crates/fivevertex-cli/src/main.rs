//! Command-line front end: compute the partition function by any route,
//! run verification suites, emit plot-ready tables, and cross-check
//! configuration counts.
//!
//! Exit codes: 0 on success, 1 when a verification (or cross-check)
//! fails, 2 on invalid input. Reports are deterministic for a fixed
//! seed; timings are only included on request so that equal seeds give
//! byte-identical output.

use std::fs;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use serde::Deserialize;
use serde_json::{json, Value};

use fivevertex::checks::{
    applicable_methods, compute_z, homogeneous_input, run_suite, ComputeInput, Method, Suite,
    SuiteConfig, SuiteReport,
};
use fivevertex::exact::{from_wire, rat_pow, to_decimal, to_wire, Rational};
use fivevertex::lattice::{
    count_configs, enumerate_plane_partitions, macmahon_boxed_count, LatticeSpec, WeightParams,
    DEFAULT_ORACLE_BUDGET,
};
use fivevertex::painleve::sigma_from_z;
use fivevertex::Error;

#[derive(Parser)]
#[command(
    name = "fivevertex",
    about = "Exact partition functions of the five-vertex model with fixed boundary conditions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the partition function by one or all applicable routes.
    Compute(ComputeArgs),
    /// Run a named verification suite.
    Verify(VerifyArgs),
    /// Emit (x, Z, sigma) rows over a grid of x values.
    Table(TableArgs),
    /// Cross-check configuration counts against the box formulas.
    Count(CountArgs),
}

#[derive(Args, Clone, Default)]
struct GeometryArgs {
    /// Column count L.
    #[arg(long = "L")]
    l: Option<usize>,
    /// Row count M.
    #[arg(long = "M")]
    m: Option<usize>,
    /// Boundary line count N.
    #[arg(long = "N")]
    n: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct ComputeArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    /// External field, as `p/q`.
    #[arg(long, default_value = "1/1")]
    alpha: String,
    /// Interaction parameter, as `p/q`.
    #[arg(long, default_value = "1/1")]
    delta: String,
    /// Homogeneous rapidity `u`, as `p/q`.
    #[arg(long)]
    u: Option<String>,
    /// Squared rapidity `x = u^2`, as `p/q`.
    #[arg(long)]
    x: Option<String>,
    /// Comma-separated column rapidities (right to left).
    #[arg(long)]
    u_list: Option<String>,
    /// Comma-separated row rapidities (top to bottom).
    #[arg(long)]
    xi_list: Option<String>,
    /// Evaluation route.
    #[arg(long, default_value = "oracle")]
    method: String,
    /// Evaluate every applicable route and require equal values.
    #[arg(long)]
    cross_check: bool,
    /// Enumeration budget (configuration count).
    #[arg(long)]
    budget: Option<u64>,
    /// Include wall-clock timings (breaks byte-for-byte determinism).
    #[arg(long)]
    timings: bool,
    /// JSON file with the same fields; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct ComputeFile {
    #[serde(rename = "L")]
    l: Option<usize>,
    #[serde(rename = "M")]
    m: Option<usize>,
    #[serde(rename = "N")]
    n: Option<usize>,
    alpha: Option<String>,
    delta: Option<String>,
    u: Option<String>,
    x: Option<String>,
    u_list: Option<String>,
    xi_list: Option<String>,
    method: Option<String>,
    cross_check: Option<bool>,
    budget: Option<u64>,
}

#[derive(Args, Clone, Default)]
struct VerifyArgs {
    /// Suite name (theorem1, theorem2-chain, painleve, rll,
    /// commutation16, action-lemma, symmetry, appendix-b, lemma-dets,
    /// derivative-formula, count).
    #[arg(long)]
    suite: Option<String>,
    /// Seed for every random draw in the suite.
    #[arg(long)]
    seed: Option<u64>,
    /// Grid bound on the lattice sides.
    #[arg(long)]
    max_size: Option<usize>,
    /// Random draws per repeated case.
    #[arg(long)]
    draws: Option<usize>,
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Restrict the intertwiner suite to one solution family.
    #[arg(long)]
    solution: Option<String>,
    /// Include wall-clock timings (breaks byte-for-byte determinism).
    #[arg(long)]
    timings: bool,
    /// JSON file with the same fields; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct VerifyFile {
    suite: Option<String>,
    seed: Option<u64>,
    max_size: Option<usize>,
    draws: Option<usize>,
    #[serde(rename = "L")]
    l: Option<usize>,
    #[serde(rename = "M")]
    m: Option<usize>,
    #[serde(rename = "N")]
    n: Option<usize>,
    solution: Option<String>,
}

#[derive(Copy, Clone, PartialEq, Eq, Debug, ValueEnum, Default)]
enum OutputFormat {
    #[default]
    Json,
    Csv,
}

#[derive(Args, Clone, Default)]
struct TableArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    #[arg(long, default_value = "1/1")]
    alpha: String,
    #[arg(long, default_value = "1/1")]
    delta: String,
    /// Grid: an inclusive integer range `2..5` or a comma list of `p/q`.
    #[arg(long)]
    x_grid: Option<String>,
    /// Decimal digits to add alongside the exact values.
    #[arg(long)]
    decimals: Option<usize>,
    #[arg(long, value_enum, default_value_t = OutputFormat::Json)]
    format: OutputFormat,
    /// JSON file with the same fields; explicit flags win.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct TableFile {
    #[serde(rename = "L")]
    l: Option<usize>,
    #[serde(rename = "M")]
    m: Option<usize>,
    #[serde(rename = "N")]
    n: Option<usize>,
    alpha: Option<String>,
    delta: Option<String>,
    x_grid: Option<String>,
    decimals: Option<usize>,
}

#[derive(Args, Clone, Default)]
struct CountArgs {
    #[command(flatten)]
    geometry: GeometryArgs,
    /// Enumeration budget (configuration count).
    #[arg(long)]
    budget: Option<u64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Compute(args) => cmd_compute(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Table(args) => cmd_table(args),
        Command::Count(args) => cmd_count(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

fn fail(msg: impl Into<String>) -> Error {
    Error::InvalidInput(msg.into())
}

fn read_config<T: for<'de> Deserialize<'de> + Default>(
    path: &Option<PathBuf>,
) -> Result<T, Error> {
    match path {
        None => Ok(T::default()),
        Some(path) => {
            let text = fs::read_to_string(path)
                .map_err(|e| fail(format!("cannot read config {}: {e}", path.display())))?;
            serde_json::from_str(&text)
                .map_err(|e| fail(format!("cannot parse config {}: {e}", path.display())))
        }
    }
}

fn geometry(args: &GeometryArgs, file: (Option<usize>, Option<usize>, Option<usize>)) -> Result<LatticeSpec, Error> {
    let l = args.l.or(file.0).ok_or_else(|| fail("missing --L"))?;
    let m = args.m.or(file.1).ok_or_else(|| fail("missing --M"))?;
    let n = args.n.or(file.2).ok_or_else(|| fail("missing --N"))?;
    LatticeSpec::new(l, m, n)
}

fn parse_list(text: &str) -> Result<Vec<Rational>, Error> {
    text.split(',').map(|part| from_wire(part.trim())).collect()
}

fn print_json(value: &Value) {
    let mut stdout = std::io::stdout().lock();
    serde_json::to_writer_pretty(&mut stdout, value).expect("stdout");
    writeln!(stdout).expect("stdout");
}

// --- compute ---

fn cmd_compute(args: ComputeArgs) -> Result<ExitCode, Error> {
    let file: ComputeFile = read_config(&args.config)?;
    let spec = geometry(&args.geometry, (file.l, file.m, file.n))?;
    let alpha = from_wire(&resolve(args.alpha.clone(), file.alpha, "1/1"))?;
    let delta = from_wire(&resolve(args.delta.clone(), file.delta, "1/1"))?;
    let budget = args.budget.or(file.budget).unwrap_or(DEFAULT_ORACLE_BUDGET);
    let method_name = resolve(args.method.clone(), file.method, "oracle");
    let method = Method::from_name(&method_name)
        .ok_or_else(|| fail(format!("unknown method `{method_name}`")))?;
    let cross_check = args.cross_check || file.cross_check.unwrap_or(false);

    let u = args.u.clone().or(file.u).map(|s| from_wire(&s)).transpose()?;
    let x = args.x.clone().or(file.x).map(|s| from_wire(&s)).transpose()?;
    let u_list = args
        .u_list
        .clone()
        .or(file.u_list)
        .map(|s| parse_list(&s))
        .transpose()?;
    let xi_list = args
        .xi_list
        .clone()
        .or(file.xi_list)
        .map(|s| parse_list(&s))
        .transpose()?;

    let input: ComputeInput = match (u_list, xi_list) {
        (Some(us), Some(xis)) => {
            if us.len() != spec.l || xis.len() != spec.m {
                return Err(fail(format!(
                    "expected {} column and {} row rapidities",
                    spec.l, spec.m
                )));
            }
            ComputeInput {
                spec,
                params: WeightParams::inhomogeneous(alpha.clone(), delta.clone(), us, xis)?,
                x_only: None,
                budget,
            }
        }
        (None, None) => homogeneous_input(spec, alpha.clone(), delta.clone(), u, x, budget)?,
        _ => return Err(fail("provide both --u-list and --xi-list, or neither")),
    };

    let started = Instant::now();
    let config_echo = json!({
        "L": spec.l, "M": spec.m, "N": spec.n,
        "alpha": to_wire(&alpha), "delta": to_wire(&delta),
        "method": method.name(), "cross_check": cross_check,
    });

    if !cross_check {
        let z = compute_z(&input, method)?;
        let mut report = json!({
            "command": "compute",
            "config": config_echo,
            "method": method.name(),
            "z": to_wire(&z),
        });
        if args.timings {
            report["timing_ms"] = json!(started.elapsed().as_millis() as u64);
        }
        print_json(&report);
        return Ok(ExitCode::SUCCESS);
    }

    let methods = applicable_methods(&input);
    if methods.is_empty() {
        return Err(fail(
            "no route applies: the result carries a half power of x (provide --u or a square --x)",
        ));
    }
    let values: Vec<(Method, Rational)> = methods
        .iter()
        .map(|&m| compute_z(&input, m).map(|z| (m, z)))
        .collect::<Result<_, _>>()?;
    let reference = values[0].1.clone();
    let all_equal = values.iter().all(|(_, z)| z == &reference);
    let cases: Vec<Value> = values
        .iter()
        .map(|(m, z)| {
            json!({
                "id": m.name(),
                "inputs": "shared geometry and parameters",
                "expected": to_wire(&reference),
                "actual": to_wire(z),
                "pass": z == &reference,
            })
        })
        .collect();
    let mut report = json!({
        "command": "compute",
        "config": config_echo,
        "method_independent": all_equal,
        "z": to_wire(&reference),
        "cases": cases,
        "summary": format!(
            "{}/{} methods agree",
            values.iter().filter(|(_, z)| z == &reference).count(),
            values.len()
        ),
    });
    if args.timings {
        report["timing_ms"] = json!(started.elapsed().as_millis() as u64);
    }
    print_json(&report);
    Ok(if all_equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn resolve(flag: String, file: Option<String>, default: &str) -> String {
    if flag != default {
        flag
    } else {
        file.unwrap_or(flag)
    }
}

// --- verify ---

fn cmd_verify(args: VerifyArgs) -> Result<ExitCode, Error> {
    let file: VerifyFile = read_config(&args.config)?;
    let suite_name = args
        .suite
        .clone()
        .or(file.suite)
        .ok_or_else(|| fail("missing --suite"))?;
    let suite = Suite::from_name(&suite_name)
        .ok_or_else(|| fail(format!("unknown suite `{suite_name}`")))?;
    let only = match (
        args.geometry.l.or(file.l),
        args.geometry.m.or(file.m),
        args.geometry.n.or(file.n),
    ) {
        (Some(l), Some(m), Some(n)) => Some((l, m, n)),
        (None, None, None) => None,
        _ => return Err(fail("give all of --L, --M, --N or none")),
    };
    let config = SuiteConfig {
        seed: args.seed.or(file.seed).unwrap_or(0),
        max_size: args.max_size.or(file.max_size).unwrap_or(4),
        draws: args.draws.or(file.draws).unwrap_or(5),
        only,
        solution: args.solution.clone().or(file.solution),
    };

    let started = Instant::now();
    let report = run_suite(suite, &config)?;
    let value = render_suite_report(&report, &config, args.timings.then(|| started.elapsed()));
    print_json(&value);
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn render_suite_report(
    report: &SuiteReport,
    config: &SuiteConfig,
    elapsed: Option<std::time::Duration>,
) -> Value {
    let cases: Vec<Value> = report
        .cases
        .iter()
        .map(|c| {
            json!({
                "id": c.id,
                "inputs": c.inputs,
                "expected": c.expected,
                "actual": c.actual,
                "pass": c.pass,
            })
        })
        .collect();
    let mut value = json!({
        "command": "verify",
        "config": {
            "suite": report.suite,
            "seed": config.seed,
            "max_size": config.max_size,
            "draws": config.draws,
            "only": config.only.map(|(l, m, n)| json!({"L": l, "M": m, "N": n})),
            "solution": config.solution,
        },
        "cases": cases,
        "summary": report.summary(),
        "all_pass": report.all_pass(),
    });
    if let Some(d) = elapsed {
        value["timing_ms"] = json!(d.as_millis() as u64);
    }
    value
}

// --- table ---

struct TableRow {
    x: Rational,
    z_coefficient: Rational,
    z_doubled_exponent: i64,
    z_exact: Option<Rational>,
    sigma: Option<Rational>,
}

fn cmd_table(args: TableArgs) -> Result<ExitCode, Error> {
    let file: TableFile = read_config(&args.config)?;
    let spec = geometry(&args.geometry, (file.l, file.m, file.n))?;
    let alpha = from_wire(&resolve(args.alpha.clone(), file.alpha, "1/1"))?;
    let delta = from_wire(&resolve(args.delta.clone(), file.delta, "1/1"))?;
    let grid_text = args
        .x_grid
        .clone()
        .or(file.x_grid)
        .ok_or_else(|| fail("missing --x-grid"))?;
    let decimals = args.decimals.or(file.decimals);
    let grid = parse_grid(&grid_text)?;
    for x in &grid {
        if x.is_zero() || x == &Rational::from_integer(BigInt::from(1)) {
            return Err(fail(format!("grid value x = {} touches a pole", to_wire(x))));
        }
    }

    let sigma = sigma_from_z(&spec, &alpha, &delta)?;
    let rows: Vec<TableRow> = grid
        .into_iter()
        .map(|x| -> Result<TableRow, Error> {
            let z = fivevertex::hankel::z_hankel_explicit(
                &spec,
                &x,
                &alpha,
                &delta,
                fivevertex::hankel::Side::smaller(&spec),
            )?;
            // exact value exists for an even power, or at a square x
            let z_exact = z
                .collapse(&x)
                .or_else(|| fivevertex::exact::rat_sqrt(&x).map(|u| z.value_with_u(&u)));
            Ok(TableRow {
                z_exact,
                sigma: sigma.eval(&x),
                z_coefficient: z.coefficient,
                z_doubled_exponent: z.doubled_exponent,
                x,
            })
        })
        .collect::<Result<_, _>>()?;

    match args.format {
        OutputFormat::Json => {
            let json_rows: Vec<Value> = rows.iter().map(|r| row_to_json(r, decimals)).collect();
            print_json(&json!({
                "command": "table",
                "config": {
                    "L": spec.l, "M": spec.m, "N": spec.n,
                    "alpha": to_wire(&alpha), "delta": to_wire(&delta),
                    "decimals": decimals,
                },
                "rows": json_rows,
            }));
        }
        OutputFormat::Csv => {
            let mut writer = csv::Writer::from_writer(std::io::stdout().lock());
            let mut header = vec![
                "x".to_string(),
                "z".to_string(),
                "z_coefficient".to_string(),
                "z_doubled_exponent".to_string(),
                "sigma".to_string(),
            ];
            if decimals.is_some() {
                header.push("z_decimal".into());
                header.push("sigma_decimal".into());
            }
            writer.write_record(&header).map_err(csv_fail)?;
            for row in &rows {
                let mut record = vec![
                    to_wire(&row.x),
                    row.z_exact.as_ref().map(to_wire).unwrap_or_default(),
                    to_wire(&row.z_coefficient),
                    row.z_doubled_exponent.to_string(),
                    row.sigma.as_ref().map(to_wire).unwrap_or_else(|| "pole".into()),
                ];
                if let Some(digits) = decimals {
                    record.push(z_decimal(row, digits));
                    record.push(
                        row.sigma
                            .as_ref()
                            .map(|s| to_decimal(s, digits))
                            .unwrap_or_else(|| "pole".into()),
                    );
                }
                writer.write_record(&record).map_err(csv_fail)?;
            }
            writer.flush().map_err(|e| fail(format!("csv: {e}")))?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn csv_fail(e: csv::Error) -> Error {
    fail(format!("csv: {e}"))
}

fn row_to_json(row: &TableRow, decimals: Option<usize>) -> Value {
    let mut value = json!({
        "x": to_wire(&row.x),
        "z": row.z_exact.as_ref().map(to_wire),
        "z_coefficient": to_wire(&row.z_coefficient),
        "z_doubled_exponent": row.z_doubled_exponent,
        "sigma": row.sigma.as_ref().map(to_wire),
    });
    if let Some(digits) = decimals {
        value["z_decimal"] = json!(z_decimal(row, digits));
        value["sigma_decimal"] = json!(row
            .sigma
            .as_ref()
            .map(|s| to_decimal(s, digits))
            .unwrap_or_else(|| "pole".into()));
    }
    value
}

/// Decimal rendering of `coeff * x^(e/2)`: exact when the power is
/// integral, otherwise via an integer square root of the squared value,
/// truncated at the requested digits.
fn z_decimal(row: &TableRow, digits: usize) -> String {
    if let Some(z) = &row.z_exact {
        return to_decimal(z, digits);
    }
    let squared = &row.z_coefficient
        * &row.z_coefficient
        * rat_pow(&row.x, row.z_doubled_exponent);
    if squared.is_negative() {
        return "imaginary".into();
    }
    let sign = if row.z_coefficient.is_negative() { "-" } else { "" };
    let scale = BigInt::from(10u8).pow(digits as u32);
    let scaled = (squared.numer() * &scale * &scale) / squared.denom();
    let root = scaled.sqrt();
    let int_part = &root / &scale;
    let frac_part = &root % &scale;
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part:0>width$}", width = digits)
    }
}

fn parse_grid(text: &str) -> Result<Vec<Rational>, Error> {
    if let Some((lo, hi)) = text.split_once("..") {
        let lo: i64 = lo
            .trim()
            .parse()
            .map_err(|_| fail(format!("bad grid bound `{lo}`")))?;
        let hi: i64 = hi
            .trim()
            .parse()
            .map_err(|_| fail(format!("bad grid bound `{hi}`")))?;
        if hi < lo {
            return Err(fail("empty grid range"));
        }
        return Ok((lo..=hi)
            .map(|v| Rational::from_integer(BigInt::from(v)))
            .collect());
    }
    parse_list(text)
}

// --- count ---

fn cmd_count(args: CountArgs) -> Result<ExitCode, Error> {
    let spec = geometry(&args.geometry, (None, None, None))?;
    let budget = args.budget.unwrap_or(DEFAULT_ORACLE_BUDGET);
    let product = macmahon_boxed_count(spec.box_a(), spec.box_b(), spec.box_c());
    if product > BigInt::from(budget) {
        return Err(Error::SizeBudget {
            count: (&product).try_into().unwrap_or(u128::MAX),
            budget: u128::from(budget),
        });
    }
    let configurations = count_configs(&spec);
    let arrays = enumerate_plane_partitions(spec.box_a(), spec.box_b(), spec.box_c()).len();
    let all_equal =
        BigInt::from(configurations) == product && BigInt::from(arrays as u64) == product;
    print_json(&json!({
        "command": "count",
        "config": { "L": spec.l, "M": spec.m, "N": spec.n },
        "box": { "A": spec.box_a(), "B": spec.box_b(), "C": spec.box_c() },
        "configurations": configurations,
        "monotone_arrays": arrays,
        "box_product": product.to_string(),
        "all_equal": all_equal,
    }));
    Ok(if all_equal {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

