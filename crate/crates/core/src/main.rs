//! Command-line front end: single-value queries, table generation, the
//! verification suite, the plane-curve oracle, and ring dumps.
//!
//! Exit codes: 0 on success, 1 on argument errors, 2 on any verification
//! failure or cache integrity violation.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use planar_gw::gw::{full_table, load_cache, n_planar, save_cache, GwKey, MemoTable};
use planar_gw::oracle::plane_counts;
use planar_gw::report::{all_ok, run_suite, CheckResult};
use planar_gw::ring::{diagonal, dual_basis, pairing_tensor};
use planar_gw::Error;

/// Environment variable providing a default memo cache path; the `--cache`
/// flag takes precedence.
const CACHE_ENV: &str = "PLANAR_GW_CACHE";

#[derive(Parser)]
#[command(
    name = "planar-gw",
    version,
    about = "Exact counts of rational planar curves in P^3",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Print one count N_d(r, s, theta)
    Compute {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        d: u32,
        #[arg(long)]
        r: u32,
        #[arg(long)]
        s: u32,
        #[arg(long)]
        theta: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Print every balanced entry with d <= dmax
    Table {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dmax: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Run the full verification suite
    Verify {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dmax: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Print the classical plane-curve counts K_d
    Oracle {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        dmax: u32,
        #[arg(long, value_enum, default_value_t)]
        format: Format,
    },
    /// Dump the pairing matrix, dual basis, and diagonal tensor
    Ring {
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            // --help / --version
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::CacheFormat { .. } | Error::CacheConflict { .. } | Error::Io(_) | Error::Json(_) => {
            2
        }
        _ => 1,
    }
}

fn cache_path(flag: Option<PathBuf>) -> Option<PathBuf> {
    flag.or_else(|| {
        std::env::var_os(CACHE_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
    })
}

fn load_cache_if_present(memo: &MemoTable, path: &Path) -> Result<(), Error> {
    if path.exists() {
        load_cache(memo, path)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TableRow {
    d: u32,
    r: u32,
    s: u32,
    theta: u32,
    value: String,
}

fn table_rows(entries: &[(GwKey, planar_gw::rational::Rational)]) -> Vec<TableRow> {
    entries
        .iter()
        .map(|(k, v)| TableRow {
            d: k.d(),
            r: k.r(),
            s: k.s(),
            theta: k.theta(),
            value: v.to_string(),
        })
        .collect()
}

fn print_check_text(c: &CheckResult) {
    let mut line = if c.ok {
        format!("ok   {}", c.check)
    } else {
        format!("FAIL {}", c.check)
    };
    if let (Some(d), Some(r), Some(s), Some(theta)) = (c.d, c.r, c.s, c.theta) {
        line.push_str(&format!(" d={d} r={r} s={s} theta={theta}"));
    }
    if let (Some(lhs), Some(rhs)) = (&c.lhs, &c.rhs) {
        line.push_str(&format!(" lhs={lhs} rhs={rhs}"));
    }
    if let Some(detail) = &c.detail {
        line.push_str(&format!(" ({detail})"));
    }
    println!("{line}");
}

fn run(command: Command) -> Result<u8, Error> {
    match command {
        Command::Compute {
            d,
            r,
            s,
            theta,
            format,
            cache,
        } => {
            let memo = MemoTable::new();
            let cache = cache_path(cache);
            if let Some(path) = &cache {
                load_cache_if_present(&memo, path)?;
            }
            let key = GwKey::new(d, r, s, theta)?;
            let value = n_planar(key, &memo);
            match format {
                Format::Text => println!("{value}"),
                Format::Json => {
                    let row = TableRow {
                        d,
                        r,
                        s,
                        theta,
                        value: value.to_string(),
                    };
                    println!("{}", serde_json::to_string(&row)?);
                }
                Format::Csv => {
                    println!("d,r,s,theta,value");
                    println!("{d},{r},{s},{theta},{value}");
                }
            }
            if let Some(path) = &cache {
                save_cache(&memo, path)?;
            }
            Ok(0)
        }

        Command::Table {
            dmax,
            format,
            cache,
        } => {
            let memo = MemoTable::new();
            let cache = cache_path(cache);
            if let Some(path) = &cache {
                load_cache_if_present(&memo, path)?;
            }
            let entries = full_table(dmax, &memo);
            let rows = table_rows(&entries);
            match format {
                Format::Text => {
                    for row in &rows {
                        println!(
                            "d={} r={} s={} theta={} value={}",
                            row.d, row.r, row.s, row.theta, row.value
                        );
                    }
                }
                Format::Json => println!("{}", serde_json::to_string(&rows)?),
                Format::Csv => {
                    println!("d,r,s,theta,value");
                    for row in &rows {
                        println!("{},{},{},{},{}", row.d, row.r, row.s, row.theta, row.value);
                    }
                }
            }
            if let Some(path) = &cache {
                save_cache(&memo, path)?;
            }
            Ok(0)
        }

        Command::Verify {
            dmax,
            format,
            cache,
        } => {
            let cache = cache_path(cache);
            let results = run_suite(dmax, cache.as_deref())?;
            match format {
                Format::Text => {
                    for c in &results {
                        print_check_text(c);
                    }
                    let failed = results.iter().filter(|c| !c.ok).count();
                    if failed == 0 {
                        println!("all {} checks ok", results.len());
                    } else {
                        println!("{failed} of {} checks FAILED", results.len());
                    }
                }
                Format::Json => {
                    for c in &results {
                        println!("{}", serde_json::to_string(c)?);
                    }
                }
                Format::Csv => {
                    println!("check,d,r,s,theta,ok,lhs,rhs");
                    for c in &results {
                        let opt = |x: &Option<u32>| x.map(|v| v.to_string()).unwrap_or_default();
                        let opt_s = |x: &Option<String>| x.clone().unwrap_or_default();
                        println!(
                            "{},{},{},{},{},{},{},{}",
                            c.check,
                            opt(&c.d),
                            opt(&c.r),
                            opt(&c.s),
                            opt(&c.theta),
                            c.ok,
                            opt_s(&c.lhs),
                            opt_s(&c.rhs)
                        );
                    }
                }
            }
            Ok(if all_ok(&results) { 0 } else { 2 })
        }

        Command::Oracle { dmax, format } => {
            let counts = plane_counts(dmax)?;
            match format {
                Format::Text => {
                    for c in &counts {
                        println!("K_{} = {}", c.d, c.value);
                    }
                }
                Format::Json => println!("{}", serde_json::to_string(&counts)?),
                Format::Csv => {
                    println!("d,value");
                    for c in &counts {
                        println!("{},{}", c.d, c.value);
                    }
                }
            }
            Ok(0)
        }

        Command::Ring { format } => {
            let pairing = pairing_tensor()?;
            let diag = diagonal(&pairing)?;
            let duals = dual_basis();
            match format {
                Format::Csv => {
                    eprintln!("error: the ring dump has no CSV form; use json or text");
                    return Ok(1);
                }
                Format::Json => {
                    #[derive(Serialize)]
                    struct RingDump<'a> {
                        pairing: &'a planar_gw::ring::PairingTensor,
                        dual_basis: &'a [planar_gw::ring::CohClass],
                        diagonal: &'a planar_gw::ring::DiagonalTensor,
                    }
                    let dump = RingDump {
                        pairing: &pairing,
                        dual_basis: &duals,
                        diagonal: &diag,
                    };
                    println!("{}", serde_json::to_string(&dump)?);
                }
                Format::Text => {
                    println!("pairing matrix g (rows/cols in flat T_ij order):");
                    for u in 0..planar_gw::ring::BASIS_DIM {
                        let row: Vec<String> = (0..planar_gw::ring::BASIS_DIM)
                            .map(|v| pairing.g_flat(u, v).to_string())
                            .collect();
                        println!("  [{}]", row.join(", "));
                    }
                    println!("dual basis:");
                    for ((i, j), dual) in planar_gw::ring::basis_pairs().zip(&duals) {
                        println!("  T^{i}{j} = {dual}");
                    }
                    println!("diagonal tensor (equals inverse pairing):");
                    for u in 0..planar_gw::ring::BASIS_DIM {
                        let row: Vec<String> = (0..planar_gw::ring::BASIS_DIM)
                            .map(|v| diag.entry_flat(u, v).to_string())
                            .collect();
                        println!("  [{}]", row.join(", "));
                    }
                }
            }
            Ok(0)
        }
    }
}
