use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

use galcover::arith::text::parse_poly_file;
use galcover::arith::integral_model;
use galcover::galois::{certify_galois_group, GroupName};
use galcover::local::local_shape;
use galcover::modp::factor_mod_p;
use galcover::pipeline::{
    emit_report, report_json, report_markdown, search_candidates, shipped_cases, sweep_roots_everywhere, verify_case,
    CaseReport, CaseSpec, SearchBox, VerifyOptions,
};
use galcover::ratfactor::factor_over_q;
use galcover::resolvent::{cubic_resolvent, subset_product_resolvent_rat, subset_sum_resolvent_rat};
use galcover::{IntPoly, RatPoly};

type CliResult<T> = std::result::Result<T, Box<dyn std::error::Error>>;

#[derive(Parser)]
#[command(name = "galcover", version, about = "Verify polynomials with local roots everywhere but no rational root")]
struct Cli {
    /// Seed for Tschirnhausen draws.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Worker threads (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// Directory for report.json and report.md.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the full verification of one case file or of every shipped case.
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
        /// Upper bound for the local root sweep.
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Certify the Galois group of a polynomial from Frobenius samples.
    Galois {
        poly: PathBuf,
        #[arg(long)]
        claim: GroupName,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<u64>,
    },
    /// Factor a polynomial modulo a prime.
    FactorModp { poly: PathBuf, p: u64 },
    /// Sum, product or cubic resolvent.
    Resolvent {
        kind: ResolventKind,
        poly: PathBuf,
        k: Option<usize>,
    },
    /// Factorization shape of a polynomial over Q_p.
    Localshape { poly: PathBuf, p: u64 },
    /// Check for roots in Q_p at all p up to the bound, and no rational root.
    Sweep {
        poly: PathBuf,
        #[arg(long, default_value_t = 10_000)]
        bound: u64,
    },
    /// Scan a coefficient box for polynomials realizing a group.
    Search {
        #[arg(long)]
        group: GroupName,
        /// Ranges for a_0..a_{n-1}, e.g. `-2..2,-3..3,-1..1`.
        #[arg(long = "box")]
        search_box: SearchBox,
        #[arg(long, default_value_t = u64::MAX)]
        budget: u64,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    Case { file: PathBuf },
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ResolventKind {
    Sum,
    Product,
    Cubic,
}

fn read_poly(path: &Path) -> CliResult<RatPoly> {
    Ok(parse_poly_file(&std::fs::read_to_string(path)?)?)
}

fn read_int_poly(path: &Path) -> CliResult<IntPoly> {
    read_poly(path)?.to_int().ok_or_else(|| format!("{}: expected integer coefficients", path.display()).into())
}

fn print_json<T: Serialize>(v: &T) -> CliResult<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn finish_reports(reports: &[CaseReport], out: Option<&Path>) -> CliResult<bool> {
    match out {
        Some(dir) => {
            emit_report(reports, dir)?;
            print!("{}", report_markdown(reports));
        }
        None => print!("{}", report_json(reports)),
    }
    Ok(reports.iter().all(|r| r.passed))
}

fn run(cli: Cli) -> CliResult<bool> {
    let out = cli.out.as_deref();
    match cli.command {
        Command::Verify { target, bound } => {
            let opts = VerifyOptions { seed: cli.seed, sweep_bound: bound, ..VerifyOptions::default() };
            let cases = match target {
                VerifyTarget::Case { file } => vec![CaseSpec::from_json(&std::fs::read_to_string(file)?)?],
                VerifyTarget::All => shipped_cases()?,
            };
            let reports: Vec<CaseReport> = cases.par_iter().map(|c| verify_case(c, &opts)).collect();
            finish_reports(&reports, out)
        }
        Command::Galois { poly, claim, primes } => {
            let cert = certify_galois_group(&read_int_poly(&poly)?, claim, &primes)?;
            print_json(&cert)?;
            Ok(cert.verdict.is_proven())
        }
        Command::FactorModp { poly, p } => {
            let fac = factor_mod_p(&read_int_poly(&poly)?, p)?;
            println!("{}", fac.compact());
            Ok(true)
        }
        Command::Resolvent { kind, poly, k } => {
            let g = read_poly(&poly)?;
            let r = match kind {
                ResolventKind::Sum => subset_sum_resolvent_rat(&g, k.ok_or("sum resolvent needs k")?)?,
                ResolventKind::Product => subset_product_resolvent_rat(&g, k.ok_or("product resolvent needs k")?)?,
                ResolventKind::Cubic => {
                    let f = g.to_int().ok_or("cubic resolvent needs integer coefficients")?;
                    cubic_resolvent(&f)?
                }
            };
            print_json(&r)?;
            Ok(true)
        }
        Command::Localshape { poly, p } => {
            print_json(&local_shape(&read_int_poly(&poly)?, p)?)?;
            Ok(true)
        }
        Command::Sweep { poly, bound } => {
            let (h, _) = integral_model(&read_poly(&poly)?)?;
            let factors: Vec<IntPoly> = factor_over_q(&h)?.factors.into_iter().map(|(q, _)| q).collect();
            let report = sweep_roots_everywhere(&factors, bound)?;
            print_json(&report)?;
            Ok(report.passed())
        }
        Command::Search { group, search_box, budget, checkpoint } => {
            let state = search_candidates(group, &search_box, budget, checkpoint.as_deref())?;
            print_json(&state)?;
            if let Some(dir) = out {
                std::fs::create_dir_all(dir)?;
                std::fs::write(dir.join("search.json"), serde_json::to_string_pretty(&state)? + "\n")?;
            }
            Ok(!state.candidates.is_empty())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if cli.threads > 0 {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
