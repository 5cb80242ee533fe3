//! ubseq: exponential-sum, density, and ergodic-average experiments.
//!
//! Exit codes: 0 success, 2 validation error, 3 numeric tolerance failure
//! under --assert.

mod cache;
mod commands;
mod csvout;
mod spec;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use commands::*;

#[derive(Parser, Debug)]
#[command(
    name = "ubseq",
    version,
    about = "Arithmetic-sequence distribution tests and ergodic-average experiments"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Build the Ω/ω/μ/μ² tables and write a binary cache.
    Sieve(SieveArgs),
    /// Emit sequence values a_1..a_N, one per line.
    Seq(SeqArgs),
    /// Averaged Weyl sum (1/N)Σ e^{2πi a_n θ}, optionally mask-restricted.
    Weyl(WeylArgs),
    /// Natural, residue-class, or a-densities.
    Density(DensityArgs),
    /// Mean-stability probes of a model system along a sequence.
    #[command(name = "dynsys-probe")]
    DynsysProbe(ProbeArgs),
    /// Time averages of an observable along a sequence vs a target.
    Converge(ConvergeArgs),
    /// Weighted series (1/N)Σ c_n φ(f^n x) for linear disjointness.
    Disjoint(DisjointArgs),
    /// Liouville/Mertens means and the PNT ratio from the sieve.
    Panel(PanelArgs),
    /// Law checks and rate fits (additivity, transfer, dad, rd, sup-rate).
    Report(ReportArgs),
}

fn threads_of(cmd: &Cmd) -> Option<usize> {
    let common = match cmd {
        Cmd::Sieve(a) => &a.common,
        Cmd::Seq(a) => &a.common,
        Cmd::Weyl(a) => &a.common,
        Cmd::Density(a) => &a.common,
        Cmd::DynsysProbe(a) => &a.common,
        Cmd::Converge(a) => &a.common,
        Cmd::Disjoint(a) => &a.common,
        Cmd::Panel(a) => &a.common,
        Cmd::Report(a) => &a.common,
    };
    common.threads
}

fn dispatch(cmd: &Cmd) -> anyhow::Result<()> {
    match cmd {
        Cmd::Sieve(a) => run_sieve(a),
        Cmd::Seq(a) => run_seq(a),
        Cmd::Weyl(a) => run_weyl(a),
        Cmd::Density(a) => run_density(a),
        Cmd::DynsysProbe(a) => run_probe(a),
        Cmd::Converge(a) => run_converge(a),
        Cmd::Disjoint(a) => run_disjoint(a),
        Cmd::Panel(a) => run_panel(a),
        Cmd::Report(a) => run_report(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = || dispatch(&cli.cmd);
    // determinism does not depend on the pool size; it only caps parallelism
    let result = match threads_of(&cli.cmd) {
        Some(threads) => match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
            Ok(pool) => pool.install(run),
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
        },
        None => run(),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            if let Some(tol) = e.downcast_ref::<commands::ToleranceFailure>() {
                eprintln!("assert failed: {tol}");
                ExitCode::from(3)
            } else {
                eprintln!("error: {e}");
                ExitCode::from(2)
            }
        }
    }
}
