//! `vmonotone`: moment tables, enumeration, cross-checks, Fock-space scans and
//! the generating function from the command line.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage
//! errors and refused requests.

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde::Serialize;
use serde_json::json;

use vmonotone::fock::{convergence_scan, fit_decay_exponent, omega_n_moment};
use vmonotone::labelings::{count_ov2, enumerate_adapted_free, enumerate_adapted_v};
use vmonotone::mgf::{integral_residual, mgf, MgfConfig};
use vmonotone::moments::{clt_moment, free_polynomial, universal_polynomial, NkTable};
use vmonotone::polyengine::PolyTable;
use vmonotone::verify::{self, Level, DEFAULT_SEED};

#[derive(Parser)]
#[command(name = "vmonotone", version, about = "V-monotone independence engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Recurrence,
    Enumerate,
    Poly,
    Fock,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum LevelArg {
    Fast,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Even moments of the central limit law up to a given order.
    Moments {
        #[arg(long, default_value_t = 20)]
        order_max: usize,
        #[arg(long, value_enum, default_value_t = Method::Recurrence)]
        method: Method,
        /// Number of summands for the Fock method.
        #[arg(long = "N", default_value_t = 100)]
        n: u64,
        /// Highest order the brute-force method accepts.
        #[arg(long, default_value_t = 16)]
        enumerate_cap: usize,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Adapted V-monotone (or free) labeled partitions of an index sequence.
    Enumerate {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<u64>,
        #[arg(long)]
        free: bool,
        #[arg(long, default_value_t = 16)]
        max_len: usize,
    },
    /// Runs every cross-check and prints a JSON report.
    Verify {
        #[arg(long, value_enum, default_value_t = LevelArg::Fast)]
        level: LevelArg,
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
    },
    /// Finite-N moments of the Fock-space sum against the limit.
    FockScan {
        #[arg(long = "N", value_delimiter = ',', default_values_t = [25u64, 100, 400])]
        n: Vec<u64>,
        #[arg(long, value_delimiter = ',', default_values_t = [2usize, 4, 6])]
        orders: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// The moment generating function on a grid, as CSV.
    Mgf {
        /// Explicit grid; overrides the range flags.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        z: Vec<f64>,
        #[arg(long, default_value_t = -0.45, allow_negative_numbers = true)]
        z_min: f64,
        #[arg(long, default_value_t = 0.45, allow_negative_numbers = true)]
        z_max: f64,
        #[arg(long, default_value_t = 19)]
        steps: usize,
    },
    /// The polynomial in the variables `x_B` giving a mixed moment.
    UniversalPoly {
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<u64>,
        #[arg(long)]
        free: bool,
    },
}

enum Failure {
    Usage(String),
    Check,
}

impl From<vmonotone::Error> for Failure {
    fn from(e: vmonotone::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("output: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("output: {e}"))
    }
}

type CmdResult = Result<(), Failure>;

fn factorial(n: usize) -> BigUint {
    (1..=n as u64).map(BigUint::from).product()
}

fn print_json(value: &impl Serialize) -> CmdResult {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value).map_err(|e| Failure::Usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn write_csv(header: &[&str], rows: &[Vec<String>]) -> CmdResult {
    let mut w = csv::Writer::from_writer(io::stdout().lock());
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

fn cell(v: &serde_json::Value) -> String {
    match v {
        serde_json::Value::Null => String::new(),
        serde_json::Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

// Exact values travel as strings, counts and floats as JSON numbers.
fn emit(
    format: Format,
    kind: &str,
    extra: serde_json::Value,
    header: &[&str],
    rows: Vec<Vec<serde_json::Value>>,
) -> CmdResult {
    match format {
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                rows.iter().map(|r| r.iter().map(cell).collect()).collect();
            write_csv(header, &rows)
        }
        Format::Json => {
            let objects: Vec<serde_json::Map<String, serde_json::Value>> = rows
                .into_iter()
                .map(|r| header.iter().map(|h| h.to_string()).zip(r).collect())
                .collect();
            let mut doc = json!({ "kind": kind, "rows": objects });
            if let (Some(d), serde_json::Value::Object(e)) = (doc.as_object_mut(), extra) {
                d.extend(e);
            }
            print_json(&doc)
        }
    }
}

fn moment_row(order: usize, numerator: &BigUint) -> Vec<serde_json::Value> {
    let den = factorial(order / 2);
    let value = BigRational::new(numerator.clone().into(), den.clone().into());
    vec![
        json!(order),
        json!(numerator.to_string()),
        json!(den.to_string()),
        json!(value.to_string()),
        json!(value.to_f64()),
    ]
}

fn cmd_moments(order_max: usize, method: Method, n: u64, cap: usize, format: Format) -> CmdResult {
    let k_max = order_max / 2;
    let header = ["order", "numerator", "denominator", "value", "approx"];
    match method {
        Method::Recurrence => {
            let t = NkTable::new(k_max);
            let rows = (1..=k_max)
                .map(|k| moment_row(2 * k, t.get(k, k + 1).expect("in range")))
                .collect();
            emit(
                format,
                "moments",
                json!({"method": "recurrence", "order_max": order_max}),
                &header,
                rows,
            )
        }
        Method::Enumerate => {
            if order_max > cap {
                return Err(Failure::Usage(format!(
                    "refusing: the enumerate method is capped at order {cap} (requested {order_max}); \
                     brute force grows like Catalan(n)·n!. Raise --enumerate-cap to override"
                )));
            }
            let rows = (1..=k_max)
                .map(|k| Ok(moment_row(2 * k, &BigUint::from(count_ov2(2 * k)?))))
                .collect::<Result<_, Failure>>()?;
            emit(
                format,
                "moments",
                json!({"method": "enumerate", "order_max": order_max}),
                &header,
                rows,
            )
        }
        Method::Poly => {
            let t = PolyTable::new(k_max);
            let rows = (1..=k_max)
                .map(|k| {
                    let v = t.p[k].eval(&BigRational::one())
                        * BigRational::from_integer(factorial(k).into());
                    let num: BigUint = v.to_integer().to_biguint().expect("positive moment");
                    moment_row(2 * k, &num)
                })
                .collect();
            emit(
                format,
                "moments",
                json!({"method": "poly", "order_max": order_max}),
                &header,
                rows,
            )
        }
        Method::Fock => {
            if n == 0 {
                return Err(Failure::Usage("--N must be at least 1".into()));
            }
            // error ~ c/N, so 2 m(2N) - m(N) removes the leading term
            let mut rows = Vec::new();
            for k in 1..=k_max {
                let order = 2 * k;
                let v1 = omega_n_moment(n, order)?;
                let v2 = omega_n_moment(2 * n, order)?;
                let extrapolated = BigRational::from_integer(2.into()) * &v2 - &v1;
                let limit = clt_moment(order);
                rows.push(vec![
                    json!(order),
                    json!(n),
                    json!(v1.to_string()),
                    json!(v1.to_f64()),
                    json!(v2.to_f64()),
                    json!(extrapolated.to_f64()),
                    json!(limit.to_f64()),
                ]);
            }
            emit(
                format,
                "moments",
                json!({"method": "fock", "order_max": order_max, "N": n}),
                &[
                    "order",
                    "N",
                    "value",
                    "approx",
                    "approx_2N",
                    "extrapolated",
                    "limit",
                ],
                rows,
            )
        }
    }
}

fn cmd_enumerate(seq: &[u64], free: bool, max_len: usize) -> CmdResult {
    if seq.len() > max_len {
        return Err(Failure::Usage(format!(
            "refusing: sequences are capped at length {max_len} (got {}). Raise --max-len to override",
            seq.len()
        )));
    }
    if seq.contains(&0) {
        return Err(Failure::Usage("indices must be positive".into()));
    }
    let members = if free {
        enumerate_adapted_free(seq)
    } else {
        enumerate_adapted_v(seq)
    };
    print_json(&json!({
        "kind": "enumerate",
        "seq": seq,
        "class": if free { "free" } else { "v-monotone" },
        "count": members.len(),
        "members": members,
    }))
}

fn cmd_verify(level: LevelArg, seed: u64) -> CmdResult {
    let level = match level {
        LevelArg::Fast => Level::Fast,
        LevelArg::Full => Level::Full,
    };
    let command: Vec<String> = std::env::args().collect();
    let report = verify::run_all(&command.join(" "), level, seed);
    for c in &report.checks {
        eprintln!("{}", c.line());
    }
    print_json(&report)?;
    if report.passed {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn cmd_fock_scan(ns: &[u64], orders: &[usize], format: Format) -> CmdResult {
    if ns.contains(&0) {
        return Err(Failure::Usage("--N values must be at least 1".into()));
    }
    let scan = convergence_scan(ns, orders)?;
    let exponents: Vec<_> = orders
        .iter()
        .map(|&o| {
            let pts: Vec<(u64, f64)> = scan
                .iter()
                .filter(|r| r.order == o)
                .map(|r| (r.n, r.error))
                .collect();
            json!({"order": o, "exponent": fit_decay_exponent(&pts)})
        })
        .collect();
    let rows = scan
        .iter()
        .map(|r| {
            vec![
                json!(r.n),
                json!(r.order),
                json!(r.value),
                json!(r.error),
                json!(r.slope),
            ]
        })
        .collect();
    emit(
        format,
        "fock-scan",
        json!({"exponents": exponents}),
        &["N", "order", "value", "error", "slope"],
        rows,
    )
}

fn cmd_mgf(z: Vec<f64>, z_min: f64, z_max: f64, steps: usize) -> CmdResult {
    let grid = if z.is_empty() {
        if steps < 2 {
            vec![z_min]
        } else {
            (0..steps)
                .map(|i| z_min + (z_max - z_min) * i as f64 / (steps - 1) as f64)
                .collect()
        }
    } else {
        z
    };
    let cfg = MgfConfig::default();
    let rows = grid
        .iter()
        .map(|&z| match mgf(z, &cfg) {
            Ok(m) => {
                // integral equation spot check at x = 0, 1/2, 1 where f is defined
                let a = z.abs();
                let residual = (a > 0.0 && a < 0.25).then(|| {
                    [0.0, 0.5, 1.0]
                        .iter()
                        .map(|&x| {
                            integral_residual(a, x, &cfg)
                                .map(f64::abs)
                                .unwrap_or(f64::NAN)
                        })
                        .fold(0.0, f64::max)
                });
                vec![
                    z.to_string(),
                    m.to_string(),
                    residual.map(|r| format!("{r:.3e}")).unwrap_or_default(),
                    String::new(),
                ]
            }
            Err(e) => vec![
                z.to_string(),
                String::new(),
                String::new(),
                format!("error: {e}"),
            ],
        })
        .collect::<Vec<_>>();
    write_csv(&["z", "M", "residual", "error"], &rows)
}

fn cmd_universal_poly(seq: &[u64], free: bool) -> CmdResult {
    let p = if free {
        free_polynomial(seq)?
    } else {
        universal_polynomial(seq)?
    };
    print_json(&json!({
        "kind": "universal-poly",
        "seq": seq,
        "class": if free { "free" } else { "v-monotone" },
        "terms": p.to_terms(),
        "text": p.to_string(),
    }))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Moments {
            order_max,
            method,
            n,
            enumerate_cap,
            format,
        } => cmd_moments(order_max, method, n, enumerate_cap, format),
        Command::Enumerate { seq, free, max_len } => cmd_enumerate(&seq, free, max_len),
        Command::Verify { level, seed } => cmd_verify(level, seed),
        Command::FockScan { n, orders, format } => cmd_fock_scan(&n, &orders, format),
        Command::Mgf {
            z,
            z_min,
            z_max,
            steps,
        } => cmd_mgf(z, z_min, z_max, steps),
        Command::UniversalPoly { seq, free } => cmd_universal_poly(&seq, free),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("vmonotone: {msg}");
            ExitCode::from(2)
        }
    }
}
