//! `meshpat`: compute marked-pattern distributions over permutations,
//! run the cross-validation suites, extract integer sequences, and print
//! generating-series tables.
//!
//! Exit codes: 0 success, 1 hard verification failure, 2 usage error,
//! 3 size cap exceeded.

use clap::{Args, Parser, Subcommand, ValueEnum};
use meshpat::oracle::{Oracle, Pattern, PermClass};
use meshpat::perm::{Bound, QuadSpec};
use meshpat::poly::{BiPoly, IntPoly};
use meshpat::recursions::{self, resolve_scalar_family};
use meshpat::series::{self, SeriesId};
use meshpat::verify::{self, Suite, SuiteReport};
use meshpat::Error;

const DEFAULT_CAP: usize = 10;
const HARD_CEILING: usize = 12;

#[derive(Parser)]
#[command(
    name = "meshpat",
    version,
    about = "Distributions of marked quadrant patterns in permutations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distribution polynomial for one size.
    Dist(DistArgs),
    /// Run a named cross-validation suite and print its JSON report.
    Verify(VerifyArgs),
    /// Extract one integer per size from a distribution family.
    Seq(SeqArgs),
    /// Print a generating-series table, one polynomial per order.
    Series(SeriesArgs),
}

#[derive(Args)]
struct DistArgs {
    /// Permutation size.
    #[arg(long)]
    n: usize,
    /// Four comma-separated quadrant bounds: INT, ge:INT, eq:INT, or empty.
    #[arg(long, conflicts_with = "kmax")]
    spec: Option<String>,
    /// Count positions whose largest quadrant is quadrant K instead.
    #[arg(long, value_name = "K")]
    kmax: Option<u32>,
    /// all, one-before-n, block:gamma:K,L, or block:beta:DIGITS,alpha:DIGITS.
    #[arg(long, default_value = "all")]
    class: String,
    /// Refine by the coinversion statistic (JSON output only).
    #[arg(long)]
    q: bool,
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Computation route recorded in the output.
    #[arg(long, value_enum, default_value_t = Route::Oracle)]
    provenance: Route,
    /// Largest size to enumerate (default 10, env MESHPAT_CAP, ceiling 12).
    #[arg(long)]
    cap: Option<usize>,
    /// Worker threads for enumeration.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct VerifyArgs {
    /// symmetry, closed-forms, qanalog, kmax, multivar, bclass, sequences,
    /// series, or all.
    #[arg(long)]
    suite: String,
    /// Largest size the enumeration-backed checks run at.
    #[arg(long, default_value_t = 6)]
    max_n: usize,
}

#[derive(Args)]
struct SeqArgs {
    /// Four comma-separated quadrant bounds.
    #[arg(long, conflicts_with = "kmax")]
    spec: Option<String>,
    /// Use the largest-quadrant count for quadrant K instead.
    #[arg(long, value_name = "K")]
    kmax: Option<u32>,
    /// eval0, eval@V, coeff:K, or top.
    #[arg(long)]
    extract: String,
    /// Emit one value for each n from 1 through this size.
    #[arg(long)]
    max_n: usize,
    /// Largest size to enumerate (default 10, env MESHPAT_CAP, ceiling 12).
    #[arg(long)]
    cap: Option<usize>,
    /// Worker threads for enumeration.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct SeriesArgs {
    /// p_k000, p_eqk000, r_e000, r_kempty00, r_kmax, b_1010, b_1011, or
    /// block_1011 (case-insensitive).
    #[arg(long)]
    id: String,
    /// Number of the highest order printed.
    #[arg(long)]
    order: usize,
    /// Family parameter for the ids that need one.
    #[arg(long)]
    k: Option<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Table,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Route {
    Oracle,
    Recursion,
    Closed,
    Multivar,
}

/// Failures after argument parsing; the payload is printed to stderr.
enum Failure {
    /// Exit 2: the request itself is malformed or unsupported.
    Usage(String),
    /// Exit 3: the request is fine but exceeds the size cap.
    Cap(String),
}

type CliResult<T> = Result<T, Failure>;

fn usage<T>(msg: impl Into<String>) -> CliResult<T> {
    Err(Failure::Usage(msg.into()))
}

fn lib_err(e: Error) -> Failure {
    match e {
        Error::ResourceLimit(_) => Failure::Cap(e.to_string()),
        _ => Failure::Usage(e.to_string()),
    }
}

fn main() {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Dist(args) => cmd_dist(args),
        Command::Verify(args) => cmd_verify(args),
        Command::Seq(args) => cmd_seq(args),
        Command::Series(args) => cmd_series(args),
    };
    let code = match outcome {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {}", msg);
            2
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("error: {}", msg);
            3
        }
    };
    std::process::exit(code);
}

fn resolve_cap(flag: Option<usize>) -> CliResult<usize> {
    let cap = match flag {
        Some(c) => c,
        None => match std::env::var("MESHPAT_CAP") {
            Ok(v) => match v.parse::<usize>() {
                Ok(c) => c,
                Err(_) => return usage(format!("MESHPAT_CAP must be an integer, got {:?}", v)),
            },
            Err(_) => DEFAULT_CAP,
        },
    };
    if cap > HARD_CEILING {
        return usage(format!(
            "cap {} exceeds the hard ceiling {}; sizes past that are not desk-scale",
            cap, HARD_CEILING
        ));
    }
    if cap > DEFAULT_CAP {
        eprintln!(
            "warning: cap {} admits enumerating {}! permutations; expect a long run",
            cap, cap
        );
    }
    Ok(cap)
}

fn build_oracle(cap: usize, threads: Option<usize>) -> Oracle {
    let oracle = Oracle::new().with_cap(cap);
    match threads {
        Some(t) => oracle.with_threads(t),
        None => oracle,
    }
}

fn parse_spec(s: &str) -> CliResult<QuadSpec> {
    s.parse::<QuadSpec>().map_err(lib_err)
}

/// The q-refined statistic is not symmetry-invariant, so the q routes
/// accept only specs literally of the one- or two-bound corner shape.
enum QFamily {
    K(u32),
    Ab(u32, u32),
}

fn q_family(spec: &QuadSpec) -> Option<QFamily> {
    let b = spec.bounds;
    if !b[2].is_vacuous() || !b[3].is_vacuous() {
        return None;
    }
    match (b[0], b[1]) {
        (Bound::AtLeast(k), two) if two.is_vacuous() => Some(QFamily::K(k)),
        (Bound::AtLeast(a), Bound::AtLeast(bb)) if a >= 1 && bb >= 1 => Some(QFamily::Ab(a, bb)),
        _ => None,
    }
}

/// The multivariate engines cover five fixed corner shapes.
fn multivar_route(spec: &QuadSpec, n: usize) -> Option<(String, IntPoly)> {
    let mut lows = [0u32; 4];
    for (slot, b) in lows.iter_mut().zip(spec.bounds) {
        match b {
            Bound::AtLeast(m) => *slot = m,
            _ => return None,
        }
    }
    let (name, polys) = match lows {
        [1, 0, 1, 0] => ("f1010".to_string(), meshpat::multivar::f1010(n)),
        [1, 0, a, 0] if a >= 2 => (
            format!("f10a0:{}", a),
            meshpat::multivar::f10a0(a as usize, n),
        ),
        [2, 0, 2, 0] => ("g2020".to_string(), meshpat::multivar::g2020(n)),
        [1, 0, 1, 1] => ("f1011".to_string(), meshpat::multivar::f1011(n)),
        [1, 1, 1, 1] => ("h1111".to_string(), meshpat::multivar::h1111(n)),
        _ => return None,
    };
    Some((name, polys[n].specialize_to_x()))
}

fn print_univariate(
    format: Format,
    n: usize,
    spec: &str,
    class: &str,
    provenance: &str,
    poly: &IntPoly,
) {
    let coeffs = poly.coeff_strings();
    match format {
        Format::Json => {
            let record = serde_json::json!({
                "n": n,
                "spec": spec,
                "class": class,
                "coeffs": coeffs,
                "provenance": provenance,
            });
            println!("{}", record);
        }
        Format::Csv => {
            let headers: Vec<String> = (0..coeffs.len()).map(|i| format!("c{}", i)).collect();
            println!("n,spec,class,{}", headers.join(","));
            println!("{},\"{}\",\"{}\",{}", n, spec, class, coeffs.join(","));
        }
        Format::Table => {
            println!(
                "n = {}  spec = {}  class = {}  provenance = {}",
                n, spec, class, provenance
            );
            println!("{}", poly);
        }
    }
}

fn print_bivariate(n: usize, spec: &str, class: &str, provenance: &str, poly: &BiPoly) {
    let record = serde_json::json!({
        "n": n,
        "spec": spec,
        "class": class,
        "coeffs": poly.coeff_grid_strings(),
        "provenance": provenance,
    });
    println!("{}", record);
}

fn cmd_dist(args: DistArgs) -> CliResult<i32> {
    let cap = resolve_cap(args.cap)?;
    let class: PermClass = args.class.parse().map_err(lib_err)?;
    let n = args.n;

    let pattern = match (&args.spec, args.kmax) {
        (Some(s), None) => Pattern::Quad(parse_spec(s)?),
        (None, Some(k)) => {
            if k == 0 {
                return usage("--kmax needs a quadrant number from 1 to 4");
            }
            Pattern::KMax(k)
        }
        (None, None) => return usage("one of --spec and --kmax is required"),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    let spec_string = match &pattern {
        Pattern::Quad(s) => s.to_string(),
        Pattern::KMax(k) => format!("kmax:{}", k),
    };
    let class_string = class.to_string();

    if args.q {
        if args.format != Format::Json {
            return usage("--q output is bivariate and is emitted as JSON only");
        }
        if class != PermClass::All {
            return usage("--q supports --class all only");
        }
        let Pattern::Quad(spec) = &pattern else {
            return usage("--q applies to --spec patterns only");
        };
        let (provenance, poly) = match args.provenance {
            Route::Oracle => {
                let oracle = build_oracle(cap, args.threads);
                ("oracle".to_string(), oracle.q_distribution(n, spec).map_err(lib_err)?)
            }
            Route::Recursion | Route::Closed => {
                if n > cap {
                    return Err(Failure::Cap(format!("n = {} exceeds the cap {}", n, cap)));
                }
                let closed = args.provenance == Route::Closed;
                let tag = if closed { "closed" } else { "recursion" };
                match q_family(spec) {
                    Some(QFamily::K(k)) => (
                        format!("{}:q-k000:{}", tag, k),
                        if closed {
                            recursions::q_r_k000_closed(k, n)
                        } else {
                            recursions::q_r_k000(k, n)
                        },
                    ),
                    Some(QFamily::Ab(a, b)) => (
                        format!("{}:q-ab00:{},{}", tag, a, b),
                        if closed {
                            recursions::q_r_ab00_closed(a, b, n)
                        } else {
                            recursions::q_r_ab00(a, b, n)
                        },
                    ),
                    None => {
                        return usage(format!(
                            "no q-refined recursion covers spec {}; use --provenance oracle",
                            spec
                        ))
                    }
                }
            }
            Route::Multivar => return usage("--q has no multivariate route"),
        };
        print_bivariate(n, &spec_string, &class_string, &provenance, &poly);
        return Ok(0);
    }

    let (provenance, poly) = match args.provenance {
        Route::Oracle => {
            let oracle = build_oracle(cap, args.threads);
            (
                "oracle".to_string(),
                oracle.distribution(n, &pattern, &class).map_err(lib_err)?,
            )
        }
        route => {
            if class != PermClass::All {
                return usage("non-oracle provenance supports --class all only");
            }
            if n > cap {
                return Err(Failure::Cap(format!("n = {} exceeds the cap {}", n, cap)));
            }
            match (&pattern, route) {
                (Pattern::Quad(spec), Route::Recursion) => match resolve_scalar_family(spec) {
                    Some(fam) => (format!("recursion:{}", fam), fam.recursion(n)),
                    None => {
                        return usage(format!(
                            "no recursion covers spec {}; use --provenance oracle",
                            spec
                        ))
                    }
                },
                (Pattern::Quad(spec), Route::Closed) => match resolve_scalar_family(spec) {
                    Some(fam) => (format!("closed:{}", fam), fam.closed(n)),
                    None => {
                        return usage(format!(
                            "no closed form covers spec {}; use --provenance oracle",
                            spec
                        ))
                    }
                },
                (Pattern::Quad(spec), Route::Multivar) => match multivar_route(spec, n) {
                    Some((id, poly)) => (format!("multivar:{}", id), poly),
                    None => {
                        return usage(format!(
                            "no multivariate engine covers spec {}; use --provenance oracle",
                            spec
                        ))
                    }
                },
                (Pattern::KMax(k), Route::Recursion) => {
                    (format!("recursion:kmax:{}", k), recursions::r_kmax(*k, n))
                }
                (Pattern::KMax(k), Route::Closed) => {
                    let s = series::r_kmax_series(*k, n).map_err(lib_err)?;
                    (format!("closed:kmax:{}", k), s.term(n).clone())
                }
                (Pattern::KMax(_), Route::Multivar) => {
                    return usage("the largest-quadrant count has no multivariate route")
                }
                (_, Route::Oracle) => unreachable!("handled above"),
            }
        }
    };
    print_univariate(
        args.format,
        n,
        &spec_string,
        &class_string,
        &provenance,
        &poly,
    );
    Ok(0)
}

fn cmd_verify(args: VerifyArgs) -> CliResult<i32> {
    let reports: Vec<SuiteReport> = if args.suite == "all" {
        verify::run_all(args.max_n)
    } else {
        let suite: Suite = args.suite.parse().map_err(lib_err)?;
        vec![suite.run(args.max_n)]
    };
    let rendered = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(&reports)
    };
    println!("{}", rendered.expect("reports are plain data"));
    let hard_failure = reports.iter().any(|r| !r.passed());
    Ok(if hard_failure { 1 } else { 0 })
}

enum Extract {
    Eval(i64),
    Coeff(usize),
    Top,
}

fn parse_extract(s: &str) -> CliResult<Extract> {
    if s == "top" {
        return Ok(Extract::Top);
    }
    if s == "eval0" {
        return Ok(Extract::Eval(0));
    }
    if let Some(v) = s.strip_prefix("eval@") {
        return match v.parse() {
            Ok(v) => Ok(Extract::Eval(v)),
            Err(_) => usage(format!("bad evaluation point in {:?}", s)),
        };
    }
    if let Some(k) = s.strip_prefix("coeff:") {
        return match k.parse() {
            Ok(k) => Ok(Extract::Coeff(k)),
            Err(_) => usage(format!("bad coefficient index in {:?}", s)),
        };
    }
    usage(format!(
        "unknown extraction {:?}; expected eval0, eval@V, coeff:K, or top",
        s
    ))
}

fn cmd_seq(args: SeqArgs) -> CliResult<i32> {
    let extract = parse_extract(&args.extract)?;
    let polys: Vec<IntPoly> = match (&args.spec, args.kmax) {
        (Some(s), None) => {
            let spec = parse_spec(s)?;
            let cap = resolve_cap(args.cap)?;
            let oracle = build_oracle(cap, args.threads);
            let mut out = Vec::with_capacity(args.max_n);
            for n in 1..=args.max_n {
                out.push(
                    oracle
                        .distribution(n, &Pattern::Quad(spec), &PermClass::All)
                        .map_err(lib_err)?,
                );
            }
            out
        }
        (None, Some(k)) => {
            if k == 0 {
                return usage("--kmax needs a quadrant number from 1 to 4");
            }
            // The recursion route is polynomial-time, so no cap applies.
            (1..=args.max_n).map(|n| recursions::r_kmax(k, n)).collect()
        }
        (None, None) => return usage("one of --spec and --kmax is required"),
        (Some(_), Some(_)) => unreachable!("clap rejects the combination"),
    };
    for poly in &polys {
        let value = match extract {
            Extract::Eval(v) => poly.eval_i64(v),
            Extract::Coeff(k) => poly.coeff(k),
            Extract::Top => poly.leading(),
        };
        println!("{}", value);
    }
    Ok(0)
}

fn cmd_series(args: SeriesArgs) -> CliResult<i32> {
    let id: SeriesId = args.id.parse().map_err(lib_err)?;
    let series = series::series_by_id(id, args.k, args.order).map_err(lib_err)?;
    println!("{}", series);
    Ok(0)
}
