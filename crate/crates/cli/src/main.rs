//! `detgb`: construct the minor families of the matrix-vector entry ideals,
//! verify their Groebner and homological properties, and print Betti data.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error, 3 time
//! budget exceeded.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand};

use detgb_core::betti::{koszul_table, wide_betti_table, GradedBettiTable};
use detgb_core::detideal::{
    column_minors, generators, groebner_family, row_tuples, twisted_minors, MatrixShape,
};
use detgb_core::poly::groebner::reduced_gb;
use detgb_core::verify::{run_suite, Report, RunOptions, Suite};
use detgb_core::{MonomialOrder, Polynomial, RingContext};

#[derive(Parser)]
#[command(name = "detgb", version, about = "Exact Groebner toolkit for the entry ideals of X*Y")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the generators of a shape, or its minor families at level k.
    Gens {
        /// Shape with size, e.g. square:2, symmetric:3, wide:2
        #[arg(long)]
        shape: String,
        /// Minor size; prints the plain and twisted minors plus the basis family
        #[arg(long)]
        k: Option<u32>,
        #[arg(long)]
        json: bool,
    },
    /// Run a verification suite and report per-check results.
    Verify {
        /// One of: gb, sk-gb, reduced, regseq, syzygy, spair-descent, laplace,
        /// cofactor, colon, hilbert, all
        #[arg(long)]
        suite: String,
        /// Shape family (square, symmetric, wide) or pinned size like square:2
        #[arg(long)]
        shape: String,
        /// Size or inclusive range, e.g. 2 or 2..3 (default 2..3); ignored
        /// when --shape pins the size
        #[arg(long)]
        n: Option<String>,
        #[arg(long)]
        json: bool,
        /// Abort with exit code 3 once this budget is spent
        #[arg(long)]
        max_seconds: Option<u64>,
    },
    /// Betti numbers of the quotient by the shape's entry ideal.
    Betti {
        #[arg(long)]
        shape: String,
        /// Print the graded table, not just the totals
        #[arg(long)]
        graded: bool,
        /// Cross-check the table against the Hilbert numerator of the
        /// computed initial ideal
        #[arg(long = "check-hilbert")]
        check_hilbert: bool,
        #[arg(long)]
        json: bool,
    },
    /// Reduced Groebner basis of a shape's entry ideal or of an ideal file.
    Gb {
        /// Shape with size; mutually exclusive with --file
        #[arg(long)]
        shape: Option<String>,
        /// Ideal file: `shape: square:2` header, one polynomial per line,
        /// `#` comments
        #[arg(long)]
        file: Option<PathBuf>,
        /// Monomial order: A (diagonal-first) or B (y-first, row-major)
        #[arg(long, default_value = "B")]
        order: String,
        #[arg(long)]
        json: bool,
    },
}

/// Errors that should surface as exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gens { shape, k, json } => cmd_gens(&shape, k, json),
        Command::Verify { suite, shape, n, json, max_seconds } => {
            cmd_verify(&suite, &shape, n.as_deref(), json, max_seconds)
        }
        Command::Betti { shape, graded, check_hilbert, json } => {
            cmd_betti(&shape, graded, check_hilbert, json)
        }
        Command::Gb { shape, file, order, json } => cmd_gb(shape.as_deref(), file.as_deref(), &order, json),
    };
    match outcome {
        Ok(code) => code,
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn parse_shape(s: &str) -> Result<MatrixShape, UsageError> {
    Ok(s.parse::<MatrixShape>()?)
}

fn order_for(shape: &MatrixShape, name: &str) -> Result<MonomialOrder, UsageError> {
    match name {
        "A" | "a" => Ok(MonomialOrder::diag_lex(shape)),
        "B" | "b" => Ok(MonomialOrder::y_lex(shape)),
        other => Err(UsageError(format!("unknown order `{other}`; expected A or B"))),
    }
}

fn cmd_gens(shape: &str, k: Option<u32>, json: bool) -> Result<ExitCode, UsageError> {
    let shape = parse_shape(shape)?;
    let gens = generators(&shape);
    match k {
        None => {
            if json {
                let value = serde_json::json!({
                    "shape": shape.family(),
                    "n": shape.n(),
                    "generators": gens.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("shape: {shape}");
                for (i, g) in gens.iter().enumerate() {
                    println!("g[{}] = {g}", i + 1);
                }
            }
        }
        Some(k) => {
            let tuples = row_tuples(&shape, k)?;
            let minors = column_minors(&shape, k)?;
            let twisted = twisted_minors(&shape, k)?;
            let family = groebner_family(&shape, k)?;
            if json {
                let value = serde_json::json!({
                    "shape": shape.family(),
                    "n": shape.n(),
                    "k": k,
                    "minors": tuples.iter().zip(&minors).enumerate().map(|(i, (t, m))| {
                        serde_json::json!({"sigma": i + 1, "rows": t.to_string(), "minor": m.to_string()})
                    }).collect::<Vec<_>>(),
                    "twisted": tuples.iter().zip(&twisted).enumerate().map(|(i, (t, m))| {
                        serde_json::json!({"sigma": i + 1, "rows": t.to_string(), "twisted": m.to_string()})
                    }).collect::<Vec<_>>(),
                    "family": family.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
                });
                println!("{}", serde_json::to_string_pretty(&value).unwrap());
            } else {
                println!("shape: {shape}");
                println!("k: {k}");
                for (i, (t, m)) in tuples.iter().zip(&minors).enumerate() {
                    println!("S[{}] {} = {m}", i + 1, t);
                }
                for (i, (t, m)) in tuples.iter().zip(&twisted).enumerate() {
                    println!("S~[{}] {} = {m}", i + 1, t);
                }
                println!("G (k={k}, {} elements):", family.len());
                for g in &family {
                    println!("  {g}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Sizes to run: a pinned `family:n` shape wins, then --n, then 2..3.
fn size_range(shape: &str, n: Option<&str>) -> Result<(String, Vec<u32>), UsageError> {
    if shape.contains(':') {
        let parsed = parse_shape(shape)?;
        return Ok((parsed.family().to_string(), vec![parsed.n()]));
    }
    if !matches!(shape, "square" | "symmetric" | "wide") {
        return Err(UsageError(format!(
            "invalid shape `{shape}`; expected square:n, symmetric:n or wide:n"
        )));
    }
    let sizes = match n {
        None => vec![2, 3],
        Some(range) => match range.split_once("..") {
            None => vec![range.trim().parse::<u32>().map_err(|_| bad_n(range))?],
            Some((lo, hi)) => {
                let lo: u32 = lo.trim().parse().map_err(|_| bad_n(range))?;
                let hi: u32 =
                    hi.trim().trim_start_matches('=').parse().map_err(|_| bad_n(range))?;
                if lo == 0 || hi < lo {
                    return Err(bad_n(range));
                }
                (lo..=hi).collect()
            }
        },
    };
    if sizes.contains(&0) {
        return Err(bad_n(n.unwrap_or("")));
    }
    Ok((shape.to_string(), sizes))
}

fn bad_n(arg: &str) -> UsageError {
    UsageError(format!("invalid --n `{arg}`; expected a size like 3 or a range like 2..3"))
}

fn threads_from_env() -> usize {
    match std::env::var("DETGB_THREADS") {
        Ok(v) => v.trim().parse::<usize>().unwrap_or(1).max(1),
        Err(_) => 1,
    }
}

fn cmd_verify(
    suite: &str,
    shape: &str,
    n: Option<&str>,
    json: bool,
    max_seconds: Option<u64>,
) -> Result<ExitCode, UsageError> {
    let suite: Suite = suite.parse()?;
    let (family, sizes) = size_range(shape, n)?;
    let deadline = max_seconds.map(|s| Instant::now() + Duration::from_secs(s));
    let opts = RunOptions { threads: threads_from_env(), deadline };

    let mut reports: Vec<Report> = Vec::new();
    let mut budget_exceeded = false;
    for &size in &sizes {
        let shape: MatrixShape = format!("{family}:{size}").parse()?;
        let run = run_suite(suite, &shape, &opts)?;
        reports.push(run.report);
        if run.budget_exceeded {
            budget_exceeded = true;
            break;
        }
    }

    let all_pass = reports.iter().all(Report::passed);
    if json {
        let text = if reports.len() == 1 {
            serde_json::to_string_pretty(&reports[0]).unwrap()
        } else {
            serde_json::to_string_pretty(&reports).unwrap()
        };
        println!("{text}");
    } else {
        for report in &reports {
            println!("suite={} shape={} n={}", report.suite, report.shape, report.n);
            for c in &report.checks {
                match &c.witness {
                    None => println!("  {} {} ({} ms)", c.status, c.name, c.millis),
                    Some(w) => println!("  {} {} ({} ms): {w}", c.status, c.name, c.millis),
                }
            }
        }
        if budget_exceeded {
            println!("result: budget exceeded");
        } else {
            println!("result: {}", if all_pass { "pass" } else { "fail" });
        }
    }
    if budget_exceeded {
        return Ok(ExitCode::from(3));
    }
    Ok(if all_pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn betti_table_for(shape: &MatrixShape) -> GradedBettiTable {
    match shape {
        MatrixShape::Wide { n } => wide_betti_table(*n),
        _ => koszul_table(shape.n(), 2),
    }
}

fn cmd_betti(
    shape: &str,
    graded: bool,
    check_hilbert: bool,
    json: bool,
) -> Result<ExitCode, UsageError> {
    let shape = parse_shape(shape)?;
    let table = betti_table_for(&shape);
    let totals = table.totals();

    let hilbert = if check_hilbert {
        let run = run_suite(Suite::Hilbert, &shape, &RunOptions::default())?;
        Some(run.report)
    } else {
        None
    };
    let consistent = hilbert.as_ref().map(Report::passed);

    if json {
        let mut value = serde_json::json!({
            "shape": shape.family(),
            "n": shape.n(),
            "totals": totals,
        });
        let obj = value.as_object_mut().unwrap();
        if graded {
            obj.insert("table".into(), serde_json::to_value(&table).unwrap());
            obj.insert(
                "numerator".into(),
                serde_json::to_value(table.numerator(shape.ring().num_vars())).unwrap(),
            );
        }
        if let Some(ok) = consistent {
            obj.insert(
                "hilbert".into(),
                serde_json::Value::String(if ok { "consistent" } else { "inconsistent" }.into()),
            );
        }
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        println!(
            "{}",
            totals.iter().map(|b| b.to_string()).collect::<Vec<_>>().join(",")
        );
        if graded {
            for (i, j, rank) in table.entries() {
                println!("beta({i},{j}) = {rank}");
            }
        }
        if let Some(ok) = consistent {
            println!("hilbert: {}", if ok { "consistent" } else { "inconsistent" });
        }
    }
    match consistent {
        Some(false) => Ok(ExitCode::from(1)),
        _ => Ok(ExitCode::SUCCESS),
    }
}

fn read_ideal_file(path: &std::path::Path) -> Result<(MatrixShape, Vec<Polynomial>), UsageError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| UsageError(format!("cannot read {}: {e}", path.display())))?;
    let mut shape: Option<MatrixShape> = None;
    let mut polys = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = match raw.split_once('#') {
            Some((before, _)) => before.trim(),
            None => raw.trim(),
        };
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("shape:") {
            if shape.is_some() {
                return Err(UsageError("duplicate shape header".into()));
            }
            shape = Some(rest.trim().parse::<MatrixShape>()?);
            continue;
        }
        let poly: Polynomial = line
            .parse()
            .map_err(|e| UsageError(format!("line {}: {e}", lineno + 1)))?;
        if !poly.is_zero() {
            polys.push(poly);
        }
    }
    let shape = shape.ok_or_else(|| UsageError("missing `shape: ...` header".into()))?;
    let ring = RingContext::new(shape);
    for p in &polys {
        ring.validate(p)
            .map_err(|e| UsageError(format!("polynomial outside the declared ring: {e}")))?;
    }
    Ok((shape, polys))
}

fn cmd_gb(
    shape: Option<&str>,
    file: Option<&std::path::Path>,
    order: &str,
    json: bool,
) -> Result<ExitCode, UsageError> {
    let (shape, gens) = match (shape, file) {
        (Some(_), Some(_)) => {
            return Err(UsageError("--shape and --file are mutually exclusive".into()))
        }
        (None, None) => return Err(UsageError("one of --shape or --file is required".into())),
        (Some(s), None) => {
            let shape = parse_shape(s)?;
            (shape, generators(&shape))
        }
        (None, Some(path)) => read_ideal_file(path)?,
    };
    let ord = order_for(&shape, order)?;
    let basis = if gens.is_empty() { Vec::new() } else { reduced_gb(&gens, &ord)? };
    if json {
        let value = serde_json::json!({
            "shape": shape.family(),
            "n": shape.n(),
            "order": ord.label(),
            "basis": basis.iter().map(|g| g.to_string()).collect::<Vec<_>>(),
        });
        println!("{}", serde_json::to_string_pretty(&value).unwrap());
    } else {
        for g in &basis {
            println!("{g}");
        }
    }
    Ok(ExitCode::SUCCESS)
}
