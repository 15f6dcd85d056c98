//! Command-line experiments on Hecke eigenvalues of level-one cusp forms.
//!
//! Every subcommand writes a single JSON document (or JSON lines for
//! `maeda`, or CSV with `--format csv`). Floats are rounded to 15
//! significant digits and exact integers or rationals are printed as
//! decimal strings. Exit status is 0 on success, 1 for invalid input and
//! 2 when an internal identity check fails.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use maeda_core::{angles, bounds, hecke, plancherel_mc, qexpansion, selberg, traceformula, Error};

#[derive(Debug, Parser)]
#[command(name = "maeda", version, about = "Hecke eigenvalue angles, Selberg majorants and pair-count bounds")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Miller basis of S_k(1).
    Basis {
        #[arg(long)]
        k: u32,
        /// Number of q-expansion coefficients (default dim + 2).
        #[arg(long)]
        prec: Option<usize>,
    },
    /// Matrix and characteristic polynomial of T_n on S_k(1).
    Hecke {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
    /// Squarefreeness, irreducibility and Galois evidence for T_p over a weight range.
    Maeda {
        /// Inclusive range lo:hi; odd weights are skipped.
        #[arg(long = "k-range", value_parser = parse_range)]
        k_range: (u32, u32),
        #[arg(long)]
        p: u64,
        #[arg(long = "prime-budget", default_value_t = hecke::DEFAULT_PRIME_BUDGET)]
        prime_budget: usize,
    },
    /// Certified eigenvalues of T_p and their angles.
    Angles {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u64,
        /// Eigenvalues are isolated to width 2^-bits.
        #[arg(long = "precision-bits", default_value_t = 64)]
        precision_bits: u32,
    },
    /// Tr T_n on S_k(1) from the trace formula.
    Trace {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u64,
    },
    /// Moment sums from eigenvalues and from the trace formula against c_m dim.
    Moments {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        p: u64,
        /// Largest m.
        #[arg(long, default_value_t = 10)]
        m: u32,
    },
    /// Selberg majorant of [a, b] of degree M.
    Selberg {
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        a: Rational64,
        #[arg(long, value_parser = parse_rational, allow_hyphen_values = true)]
        b: Rational64,
        #[arg(long = "M")]
        m: usize,
        /// Check majorization, mass and coefficient bounds instead of printing coefficients.
        #[arg(long)]
        check: bool,
        /// Grid intervals used by --check.
        #[arg(long, default_value_t = 10_000)]
        grid: usize,
    },
    /// All terms of the pair-count bound for (k, N, p).
    Bound {
        #[arg(long)]
        k: u32,
        #[arg(long = "N", default_value_t = 1)]
        level: u64,
        #[arg(long)]
        p: u64,
        #[arg(long)]
        dim: Option<f64>,
        #[arg(long = "M")]
        m: Option<usize>,
        #[arg(long, value_parser = parse_rational)]
        delta: Option<Rational64>,
    },
    /// Deviation scaling of moment sums over synthetic Plancherel ensembles.
    Mc {
        #[arg(long)]
        p: u64,
        /// Comma-separated increasing ensemble sizes.
        #[arg(long, value_delimiter = ',', default_values_t = [100usize, 1000, 10000])]
        dims: Vec<usize>,
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 2)]
        m: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_range(s: &str) -> Result<(u32, u32), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected lo:hi")?;
    let lo: u32 = lo.trim().parse().map_err(|e| format!("{e}"))?;
    let hi: u32 = hi.trim().parse().map_err(|e| format!("{e}"))?;
    if lo > hi {
        return Err(format!("empty range {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// Accepts "p/q", integers and finite decimals such as "-0.25".
pub fn parse_rational(s: &str) -> Result<Rational64, String> {
    let s = s.trim();
    let bad = || format!("cannot parse {s:?} as a rational");
    if let Some((n, d)) = s.split_once('/') {
        let n: i64 = n.trim().parse().map_err(|_| bad())?;
        let d: i64 = d.trim().parse().map_err(|_| bad())?;
        if d == 0 {
            return Err("zero denominator".into());
        }
        return Ok(Rational64::new(n, d));
    }
    let (int, frac) = s.split_once('.').unwrap_or((s, ""));
    if frac.len() > 15 || !frac.chars().all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let neg = int.starts_with('-');
    let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
    let n: i64 = digits.parse().map_err(|_| bad())?;
    let r = Rational64::new(n, 10i64.pow(frac.len() as u32));
    Ok(if neg { -r } else { r })
}

/// Rounds every float in `v` to 15 significant digits.
pub fn round_floats(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let x = n.as_f64().expect("f64");
            *v = format!("{x:.14e}").parse::<f64>().map(Value::from).unwrap_or(Value::Null);
        }
        Value::Array(xs) => xs.iter_mut().for_each(round_floats),
        Value::Object(m) => m.values_mut().for_each(round_floats),
        _ => {}
    }
}

/// Decimal expansion of `r` rounded to `places` digits after the point,
/// trailing zeros removed.
pub fn decimal_string(r: &BigRational, places: usize) -> String {
    let scale = BigInt::from(10).pow(places as u32);
    let scaled = r * BigRational::from_integer(scale.clone());
    let n = scaled.round().to_integer();
    let sign = if n.is_negative() { "-" } else { "" };
    let n = n.abs();
    let (int, frac) = (&n / &scale, &n % &scale);
    if frac.is_zero() {
        return format!("{sign}{int}");
    }
    let frac = format!("{frac:0>places$}");
    format!("{sign}{int}.{}", frac.trim_end_matches('0'))
}

enum Output {
    Json(Value),
    JsonLines(Vec<Value>),
    Csv(Vec<String>, Vec<Vec<String>>),
}

fn strings(xs: &[BigInt]) -> Vec<String> {
    xs.iter().map(|x| x.to_string()).collect()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("serializable")
}

fn csv_of(header: &[&str], rows: Vec<Vec<String>>) -> Output {
    Output::Csv(header.iter().map(|s| s.to_string()).collect(), rows)
}

fn f(x: f64) -> String {
    match Value::from(x) {
        mut v @ Value::Number(_) => {
            round_floats(&mut v);
            v.to_string()
        }
        _ => String::new(),
    }
}

fn execute(cmd: &Command, format: Format) -> maeda_core::Result<Output> {
    let csv = format == Format::Csv;
    Ok(match cmd {
        Command::Basis { k, prec } => {
            let dim = qexpansion::valence_dim(*k);
            let b = qexpansion::miller_basis(*k, prec.unwrap_or(dim + 2))?;
            if !b.is_echelon() {
                return Err(Error::Consistency("basis is not in echelon form".into()));
            }
            let forms: Vec<Vec<String>> = b.forms().iter().map(|g| strings(g.coeffs())).collect();
            if csv {
                let rows = forms
                    .iter()
                    .enumerate()
                    .flat_map(|(i, g)| g.iter().enumerate().map(move |(n, c)| vec![i.to_string(), n.to_string(), c.clone()]))
                    .collect();
                csv_of(&["form", "n", "coeff"], rows)
            } else {
                Output::Json(json!({"k": k, "dim": b.dim(), "prec": b.prec(), "forms": forms}))
            }
        }
        Command::Hecke { k, n } => {
            let m = hecke::hecke_matrix(*k, *n)?;
            let cp = hecke::charpoly(&m);
            hecke::check_charpoly(&m, &cp)?;
            let pc = hecke::squarefree_pair_count(&cp);
            let rows: Vec<Vec<String>> = m.matrix().rows().map(strings).collect();
            if csv {
                let rows = rows
                    .iter()
                    .enumerate()
                    .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, x)| vec![i.to_string(), j.to_string(), x.clone()]))
                    .collect();
                csv_of(&["row", "col", "entry"], rows)
            } else {
                Output::Json(json!({
                    "k": k, "n": n, "dim": m.dim(),
                    "matrix": rows,
                    "trace": m.trace().to_string(),
                    "charpoly": to_value(&cp),
                    "cayley_hamilton": true,
                    "squarefree": pc.squarefree,
                    "pair_count": pc.pair_count,
                }))
            }
        }
        Command::Maeda { k_range, p, prime_budget } => {
            let reports = (k_range.0..=k_range.1)
                .filter(|k| k % 2 == 0 && *k >= 4)
                .map(|k| hecke::pair_count_report(k, *p, *prime_budget))
                .collect::<maeda_core::Result<Vec<_>>>()?;
            if csv {
                let rows = reports
                    .iter()
                    .map(|r| {
                        let verdict = match r.sn_galois {
                            hecke::GaloisVerdict::CertifiedFullSymmetric(_) => "certified_full_symmetric",
                            hecke::GaloisVerdict::Inconclusive => "inconclusive",
                        };
                        vec![
                            r.k.to_string(),
                            r.p.to_string(),
                            r.dim.to_string(),
                            r.squarefree.to_string(),
                            to_value(&r.irreducible).as_str().unwrap_or_default().to_string(),
                            r.pair_count.to_string(),
                            verdict.to_string(),
                        ]
                    })
                    .collect();
                csv_of(&["k", "p", "dim", "squarefree", "irreducible", "pair_count", "sn_galois"], rows)
            } else {
                Output::JsonLines(reports.iter().map(to_value).collect())
            }
        }
        Command::Angles { k, p, precision_bits } => {
            if *precision_bits == 0 || *precision_bits > 4096 {
                return Err(Error::InvalidArgument("precision-bits must be in 1..=4096".into()));
            }
            let tol = BigRational::new(BigInt::from(1), BigInt::from(2).pow(*precision_bits));
            let a = angles::angles_for(*k, *p, &tol)?;
            // Digits certified by an interval of width 2^-bits.
            let places = (*precision_bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
            let eig: Vec<String> = a.eigenvalues.iter().map(|r| decimal_string(&r.midpoint(), places)).collect();
            if csv {
                let rows = (0..a.dim)
                    .map(|i| vec![eig[i].clone(), f(a.thetas[i]), f(a.normalized[i])])
                    .collect();
                csv_of(&["eigenvalue", "theta", "normalized"], rows)
            } else {
                Output::Json(json!({
                    "k": k, "p": p, "dim": a.dim,
                    "eigenvalues": eig,
                    "thetas": a.thetas,
                    "normalized": a.normalized,
                    "clamped": a.clamped,
                }))
            }
        }
        Command::Trace { k, n } => {
            let t = traceformula::trace(*k, *n)?;
            if !t.is_integer() {
                return Err(Error::Consistency(format!("trace {t} is not an integer")));
            }
            let t = t.to_integer().to_string();
            if csv {
                csv_of(&["k", "n", "trace"], vec![vec![k.to_string(), n.to_string(), t]])
            } else {
                Output::Json(json!({"k": k, "n": n, "trace": t}))
            }
        }
        Command::Moments { k, p, m } => {
            if *m == 0 {
                return Err(Error::InvalidArgument("m must be positive".into()));
            }
            let a = angles::angles_for(*k, *p, &angles::default_tolerance())?;
            let tf = traceformula::TraceFormula::new();
            let rows = (1..=*m)
                .map(|j| {
                    let emp = angles::empirical_moment(&a, j);
                    let tr = tf.moment_sum(*k, *p, j)?;
                    let c = bounds::c_coeff_f64(*p, j)?;
                    let dev = (tr - c * a.dim as f64).abs();
                    Ok(json!({
                        "m": j,
                        "empirical": emp,
                        "trace_formula": tr,
                        "c_m_dim": c * a.dim as f64,
                        "deviation": dev,
                        "lemma1_bound": bounds::lemma1_bound(*k, 1, *p, j)?,
                        "alt_bound": bounds::alt_bound(*k, 1, *p, j)?,
                    }))
                })
                .collect::<maeda_core::Result<Vec<_>>>()?;
            if csv {
                let cols = ["m", "empirical", "trace_formula", "c_m_dim", "deviation", "lemma1_bound", "alt_bound"];
                let body = rows
                    .iter()
                    .map(|r| cols.iter().map(|c| cell(&r[*c])).collect())
                    .collect();
                csv_of(&cols, body)
            } else {
                Output::Json(json!({"k": k, "p": p, "dim": a.dim, "moments": rows}))
            }
        }
        Command::Selberg { a, b, m, check, grid } => {
            let s = selberg::build_majorant(*a, *b, *m)?;
            if *check {
                let report = s.check(*grid)?;
                if !report.passes() {
                    return Err(Error::Consistency(format!("majorant properties fail: {report:?}")));
                }
                let mut v = to_value(&report);
                v["pass"] = Value::Bool(true);
                if csv {
                    let obj = v.as_object().expect("object");
                    let header: Vec<&str> = obj.keys().map(String::as_str).collect();
                    let row = obj.values().map(cell).collect();
                    return Ok(csv_of(&header, vec![row]));
                }
                Output::Json(json!({"M": m, "a": a.to_string(), "b": b.to_string(), "check": v}))
            } else if csv {
                let rows = s.iter().map(|(n, c)| vec![n.to_string(), f(c.re), f(c.im)]).collect();
                csv_of(&["n", "re", "im"], rows)
            } else {
                let coeffs: Vec<Value> = s.iter().map(|(n, c)| json!({"n": n, "re": c.re, "im": c.im})).collect();
                Output::Json(json!({"M": m, "a": a.to_string(), "b": b.to_string(), "coeffs": coeffs}))
            }
        }
        Command::Bound { k, level, p, dim, m, delta } => {
            let opts = bounds::BoundOptions { dim: *dim, m: *m, delta: *delta };
            let r = bounds::bound_report(*k, *level, *p, opts, &traceformula::TraceFormula::new())?;
            let mut v = to_value(&r);
            v["key_rhs"] = r.key.as_ref().map(|key| Value::from(key.rhs)).unwrap_or(Value::Null);
            if csv {
                let rows = r
                    .lemma1_terms
                    .iter()
                    .map(|t| vec![t.m.to_string(), f(t.c_m), f(t.lemma1), f(t.alt), t.deviation.map(f).unwrap_or_default()])
                    .collect();
                csv_of(&["m", "c_m", "lemma1", "alt", "deviation"], rows)
            } else {
                Output::Json(v)
            }
        }
        Command::Mc { p, dims, trials, m, seed } => {
            let r = plancherel_mc::deviation_scaling(*p, dims, *trials, *m, *seed)?;
            if csv {
                let rows = r
                    .per_dim
                    .iter()
                    .flat_map(|d| d.deviations.iter().enumerate().map(move |(t, x)| vec![d.dim.to_string(), t.to_string(), f(*x)]))
                    .collect();
                csv_of(&["dim", "trial", "deviation"], rows)
            } else {
                Output::Json(to_value(&r))
            }
        }
    })
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => {
            let mut o = other.clone();
            round_floats(&mut o);
            o.to_string()
        }
    }
}

fn render(out: Output) -> std::io::Result<Vec<u8>> {
    let mut buf = Vec::new();
    match out {
        Output::Json(mut v) => {
            round_floats(&mut v);
            serde_json::to_writer(&mut buf, &v)?;
            buf.push(b'\n');
        }
        Output::JsonLines(vs) => {
            for mut v in vs {
                round_floats(&mut v);
                serde_json::to_writer(&mut buf, &v)?;
                buf.push(b'\n');
            }
        }
        Output::Csv(header, rows) => {
            let mut w = csv::Writer::from_writer(&mut buf);
            w.write_record(&header)?;
            for r in rows {
                w.write_record(&r)?;
            }
            w.flush()?;
        }
    }
    Ok(buf)
}

/// Parses `args` (including the program name), runs the command and
/// returns the process exit status. Errors go to standard error.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            if e.use_stderr() {
                eprint!("{e}");
            } else {
                let _ = write!(out, "{e}");
            }
            return code;
        }
    };
    let result = match execute(&cli.command, cli.global.format) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return if e.is_internal() { 2 } else { 1 };
        }
    };
    let bytes = match render(result) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let written = match &cli.global.output {
        Some(path) => std::fs::write(path, &bytes),
        None => out.write_all(&bytes).and_then(|_| out.flush()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 1;
    }
    0
}
