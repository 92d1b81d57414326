//! Batch command-line front end for wrapping-map experiments on SU(2) and
//! SU(3). Subcommands emit self-describing CSV and JSON files; exit code 0
//! means success, 1 a verification failure, 2 a usage error.

use clap::{Args, Parser, Subcommand};
use liewrap::rootdata::GroupId;
use liewrap_cli::acceptance::{all_passed, run_criteria, Status};
use liewrap_cli::commands::{
    build_groups, build_partial_sums, build_transfer, build_verify_bounds, build_wrap,
    BoundsParams, Common, PartialSumsParams, SymbolKind, TransferParams,
};
use liewrap_cli::output::write_files;
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "liewrap",
    version,
    about = "Wrapping-map harmonic analysis on SU(2) and SU(3): transfer experiments, multiplier tables, norm bounds, and partial-sum convergence"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Group to work on.
    #[arg(long, value_parser = parse_group)]
    group: GroupId,
    /// Enumeration radius for shifted weights (per-command default).
    #[arg(long)]
    cutoff: Option<f64>,
    /// Starting panel count per quadrature dimension.
    #[arg(long, default_value_t = 8)]
    quad_panels: usize,
    /// Output directory.
    #[arg(long, default_value = "out")]
    out: PathBuf,
    /// Seed for Monte Carlo oracle checks.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Run the slow seeded Monte Carlo oracle where applicable.
    #[arg(long, default_value_t = false)]
    with_mc_oracle: bool,
}

fn parse_group(s: &str) -> Result<GroupId, String> {
    s.parse::<GroupId>().map_err(|e| e.to_string())
}

impl CommonArgs {
    fn common(&self) -> Common {
        Common {
            group: self.group,
            cutoff: self.cutoff,
            quad_panels: self.quad_panels,
            seed: self.seed,
            with_mc_oracle: self.with_mc_oracle,
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Wrap a Gaussian profile; emit its coefficients and a grid CSV
    /// comparing the lattice and series forms.
    Wrap {
        #[command(flatten)]
        common: CommonArgs,
        /// Width of the Gaussian profile.
        #[arg(long, default_value_t = 1.0)]
        gauss: f64,
        /// Number of grid points in the comparison CSV.
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Tabulate a multiplier symbol in its shifted and orbit-averaged
    /// transferred forms.
    Transfer {
        #[command(flatten)]
        common: CommonArgs,
        /// Symbol family: gauss | riesz | ball | poly.
        #[arg(long)]
        symbol: String,
        /// Which form(s) to compute: star | starstar | both.
        #[arg(long, default_value = "both")]
        form: String,
        /// Heat parameter for the gauss symbol.
        #[arg(long, default_value_t = 0.5)]
        t: f64,
        /// Smoothness parameter for the riesz symbol.
        #[arg(long, default_value_t = 1.0)]
        delta: f64,
        /// Radius for riesz/ball symbols, dilation for poly.
        #[arg(long, default_value_t = 3.0)]
        radius: f64,
    },
    /// Check one transfer inequality over a Gaussian dilation family.
    VerifyBounds {
        #[command(flatten)]
        common: CommonArgs,
        /// Inequality id (see error message for the list).
        #[arg(long)]
        inequality: String,
        /// Left exponent (defaults per inequality; "inf" allowed).
        #[arg(long)]
        p: Option<String>,
        /// Right exponent (defaults per inequality; "inf" allowed).
        #[arg(long)]
        q: Option<String>,
        /// Family spec, e.g. gauss:0.25..4.0:9 (geometric sweep).
        #[arg(long, default_value = "gauss:0.25..4.0:9")]
        family: String,
    },
    /// Polyhedral partial-sum convergence experiment.
    PartialSums {
        #[command(flatten)]
        common: CommonArgs,
        /// Region: ball | hexagon | interval | auto.
        #[arg(long, default_value = "auto")]
        region: String,
        /// Target: gauss:<sigma> or poly:<s>.
        #[arg(long, default_value = "poly:3")]
        target: String,
        /// Additional error exponent beside 2.
        #[arg(long, default_value = "4")]
        p: String,
    },
    /// Run the full verification suite for one group.
    VerifyAll {
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Emit the root-system tables for both groups as JSON.
    Groups {
        /// Output directory.
        #[arg(long, default_value = "out")]
        out: PathBuf,
    },
}

fn main() {
    let cli = Cli::parse();
    std::process::exit(run(cli));
}

fn run(cli: Cli) -> i32 {
    let result: anyhow::Result<i32> = match cli.cmd {
        Cmd::Wrap {
            common,
            gauss,
            grid,
        } => build_wrap(&common.common(), gauss, grid).and_then(|built| {
            write_files(&common.out, &built.files)?;
            println!("{}", built.summary);
            Ok(if built.passed { 0 } else { 1 })
        }),
        Cmd::Transfer {
            common,
            symbol,
            form,
            t,
            delta,
            radius,
        } => symbol
            .parse::<SymbolKind>()
            .and_then(|symbol| {
                build_transfer(
                    &common.common(),
                    &TransferParams {
                        symbol,
                        form,
                        t,
                        delta,
                        radius,
                    },
                )
            })
            .and_then(|built| {
                write_files(&common.out, &built.files)?;
                println!("{}", built.summary);
                Ok(0)
            }),
        Cmd::VerifyBounds {
            common,
            inequality,
            p,
            q,
            family,
        } => build_verify_bounds(
            &common.common(),
            &BoundsParams {
                inequality,
                p,
                q,
                family,
            },
        )
        .and_then(|built| {
            write_files(&common.out, &built.files)?;
            println!("{}", built.summary);
            Ok(if built.passed { 0 } else { 1 })
        }),
        Cmd::PartialSums {
            common,
            region,
            target,
            p,
        } => build_partial_sums(&common.common(), &PartialSumsParams { region, target, p })
            .and_then(|built| {
                write_files(&common.out, &built.files)?;
                println!("{}", built.summary);
                Ok(if built.passed { 0 } else { 1 })
            }),
        Cmd::VerifyAll { common } => {
            let c = common.common();
            run_criteria(c.group, c.seed, c.with_mc_oracle).and_then(|results| {
                let mut csv = String::from("criterion,name,status,detail\n");
                for r in &results {
                    println!("[{}] criterion {:>2}: {} - {}", r.status, r.id, r.name, r.detail);
                    csv.push_str(&format!(
                        "{},{},{},\"{}\"\n",
                        r.id, r.name, r.status, r.detail
                    ));
                }
                write_files(
                    &common.out,
                    &[(format!("verify_all_{}.csv", c.group), csv)],
                )?;
                let ok = all_passed(&results);
                let ran = results.iter().filter(|r| r.status != Status::Skipped).count();
                println!(
                    "verify-all {}: {}/{} criteria evaluated, overall {}",
                    c.group,
                    ran,
                    results.len(),
                    if ok { "PASS" } else { "FAIL" }
                );
                Ok(if ok { 0 } else { 1 })
            })
        }
        Cmd::Groups { out } => build_groups().and_then(|built| {
            write_files(&out, &built.files)?;
            println!("{}", built.summary);
            Ok(0)
        }),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            // parameter problems are usage errors; everything else is a
            // verification/runtime failure
            if e.to_string().starts_with("usage:") {
                2
            } else {
                1
            }
        }
    }
}
