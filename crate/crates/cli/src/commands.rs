//! One function per subcommand. Each writes CSV to --out (or stdout), with
//! '#' comment lines recording the resolved config. Execution-only knobs
//! (--threads, --out) are not part of the config banner, so the same
//! experiment produces byte-identical artifacts at any parallelism.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::Args;

use ubseq_core::arithseq::{
    additivity_check, multiplicativity_check, sequence_values, subsequence_of,
    ArithmeticFunctionTable, SequenceSpec,
};
use ubseq_core::dynsys::{mean_attraction, meq_probe, mls_probe, space_average};
use ubseq_core::ergodic::{
    convergence_report, linear_disjointness_series, masked_time_average_series, time_average_series,
};
use ubseq_core::expsum::{
    a_density, densities, finite_transfer_identity_check, number_theory_panel, prop_dad_check,
    rate_fit, rd_test, residue_densities, restricted_weyl_series, sup_profile_series, weyl_series,
    Theta, DEFAULT_FAREY_ORDER, DEFAULT_H_MAX, DEFAULT_OFFSETS,
};

use crate::cache;
use crate::csvout::{fmt_f64, CsvWriter};
use crate::spec;

/// Numeric tolerance failure under --assert; mapped to exit code 3.
#[derive(Debug, thiserror::Error)]
#[error("tolerance failure: {0}")]
pub struct ToleranceFailure(pub String);

#[derive(Args, Debug)]
pub struct Common {
    /// Root seed for every sampled quantity.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads (default: all hardware threads). Results do not
    /// depend on this.
    #[arg(long)]
    pub threads: Option<usize>,
    /// Output path; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Sieve cache file to load from / write to.
    #[arg(long)]
    pub cache: Option<PathBuf>,
    /// Exit with code 3 when a requested tolerance is not met.
    #[arg(long)]
    pub assert: bool,
}

fn table_for(common: &Common, max_n: u64) -> Result<ArithmeticFunctionTable> {
    cache::load_or_build(max_n, common.cache.as_deref())
}

/// Sequence resolution needs headroom when the spec is a subsequence
/// listing: the N-th member lives well beyond N.
fn resolve_sequence(
    spec: &SequenceSpec,
    n: u64,
    common: &Common,
) -> Result<(Vec<u64>, ArithmeticFunctionTable)> {
    let table_max = match spec {
        SequenceSpec::SubseqOf(_) => subsequence_table_bound(spec, n, common)?,
        _ => n.max(2),
    };
    let table = table_for(common, table_max)?;
    let values = sequence_values(spec, n, &table)?;
    Ok((values, table))
}

/// Doubling search for a sieve bound that yields N members.
fn subsequence_table_bound(spec: &SequenceSpec, n: u64, common: &Common) -> Result<u64> {
    let mut bound = (4 * n).max(64);
    loop {
        let table = table_for(common, bound)?;
        if sequence_values(spec, n, &table).is_ok() {
            return Ok(bound);
        }
        bound = bound
            .checked_mul(2)
            .ok_or_else(|| anyhow!("cannot satisfy {n} members of {spec}"))?;
    }
}

// ---------------------------------------------------------------- sieve --

#[derive(Args, Debug)]
pub struct SieveArgs {
    #[command(flatten)]
    pub common: Common,
    /// Sieve bound (accepts 1e7 shorthand).
    #[arg(long, value_parser = spec::parse_count)]
    pub max: u64,
}

pub fn run_sieve(args: &SieveArgs) -> Result<()> {
    let out = args
        .common
        .out
        .clone()
        .or(args.common.cache.clone())
        .ok_or_else(|| anyhow!("sieve needs --out (or --cache) for the cache file"))?;
    let table = ubseq_core::arithseq::build_sieve_tables(args.max)?;
    cache::write_cache(&out, &table)?;
    eprintln!(
        "wrote sieve cache for max_n={} to {}",
        args.max,
        out.display()
    );
    Ok(())
}

// ------------------------------------------------------------------ seq --

#[derive(Args, Debug)]
pub struct SeqArgs {
    #[command(flatten)]
    pub common: Common,
    /// Sequence spec (omega, smallomega, n, poly:…, subseq:NAME, file:PATH).
    #[arg(long)]
    pub seq: String,
    /// How many values a_1..a_N to emit.
    #[arg(long, value_parser = spec::parse_count)]
    pub n: u64,
}

pub fn run_seq(args: &SeqArgs) -> Result<()> {
    let sspec = spec::parse_sequence_spec(&args.seq)?;
    let (values, _) = resolve_sequence(&sspec, args.n, &args.common)?;
    // one value per line: the sequence-file input format
    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    for v in values {
        w.raw_row(&[v.to_string()])?;
    }
    w.finish()?;
    Ok(())
}

// ----------------------------------------------------------------- weyl --

#[derive(Args, Debug)]
pub struct WeylArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub seq: String,
    #[arg(long)]
    pub theta: String,
    #[arg(long, value_parser = spec::parse_count)]
    pub max: u64,
    /// Restrict the sum to an indicator set (normalization stays 1/N).
    #[arg(long)]
    pub mask: Option<String>,
    #[arg(long)]
    pub checkpoints: Option<String>,
    /// With --assert: require the final |value| to stay below this.
    #[arg(long)]
    pub tol_below: Option<f64>,
    /// With --assert: require the final |value| to stay above this.
    #[arg(long)]
    pub tol_above: Option<f64>,
}

pub fn run_weyl(args: &WeylArgs) -> Result<()> {
    let sspec = spec::parse_sequence_spec(&args.seq)?;
    let theta = spec::parse_theta(&args.theta)?;
    let cps = spec::parse_checkpoints(args.checkpoints.as_deref(), args.max)?;
    let (values, table) = resolve_sequence(&sspec, args.max, &args.common)?;
    let series = match &args.mask {
        None => weyl_series(&values, &theta, &cps, sspec.to_string())?,
        Some(mask) => {
            let ind = spec::parse_indicator(mask, &table)?;
            restricted_weyl_series(&values, &ind, &theta, &cps, sspec.to_string())?
        }
    };
    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    w.comment(&format!(
        "ubseq weyl seq={} theta={} max={} mask={} checkpoints={} seed={}",
        sspec,
        theta,
        args.max,
        args.mask.as_deref().unwrap_or("all"),
        args.checkpoints.as_deref().unwrap_or("geo"),
        args.common.seed,
    ))?;
    w.header(&["N", "re", "im", "abs"])?;
    for &(n, v) in &series.checkpoints {
        w.row(n, &[v.re, v.im, v.norm()])?;
    }
    w.finish()?;

    if args.common.assert {
        let final_abs = series.final_abs();
        if let Some(tol) = args.tol_below {
            if final_abs >= tol {
                return Err(ToleranceFailure(format!("|value| = {final_abs} ≥ {tol}")).into());
            }
        }
        if let Some(tol) = args.tol_above {
            if final_abs <= tol {
                return Err(ToleranceFailure(format!("|value| = {final_abs} ≤ {tol}")).into());
            }
        }
    }
    Ok(())
}

// -------------------------------------------------------------- density --

#[derive(Args, Debug)]
pub struct DensityArgs {
    #[command(flatten)]
    pub common: Common,
    /// Sequence spec; with --mod: residue densities of a_n, with --set:
    /// a-density of the set along a_n.
    #[arg(long)]
    pub seq: Option<String>,
    /// Indicator set (named, all, or mod:m:r).
    #[arg(long)]
    pub set: Option<String>,
    /// Residue modulus.
    #[arg(long, value_parser = spec::parse_count)]
    pub r#mod: Option<u64>,
    #[arg(long, value_parser = spec::parse_count)]
    pub max: u64,
    #[arg(long)]
    pub checkpoints: Option<String>,
    /// With --assert: final value must be within --tol of this.
    #[arg(long)]
    pub target: Option<f64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Residue index the --target check applies to (default 0).
    #[arg(long, value_parser = spec::parse_count, default_value_t = 0)]
    pub residue: u64,
}

pub fn run_density(args: &DensityArgs) -> Result<()> {
    let cps = spec::parse_checkpoints(args.checkpoints.as_deref(), args.max)?;
    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    let final_value: f64 = match (&args.seq, &args.r#mod, &args.set) {
        (Some(seq), Some(m), None) => {
            // residue densities of a_n mod m
            let sspec = spec::parse_sequence_spec(seq)?;
            let (values, _) = resolve_sequence(&sspec, args.max, &args.common)?;
            let reports = residue_densities(&values, *m, &cps)?;
            w.comment(&format!(
                "ubseq density seq={} mod={} max={} checkpoints={} seed={}",
                sspec,
                m,
                args.max,
                args.checkpoints.as_deref().unwrap_or("geo"),
                args.common.seed,
            ))?;
            let cols: Vec<String> = (0..*m).map(|r| format!("r{r}")).collect();
            let mut header = vec!["N".to_string()];
            header.extend(cols);
            w.raw_row(&header)?;
            for rep in &reports {
                w.row(rep.n_used, &rep.densities)?;
            }
            reports
                .last()
                .map(|r| r.densities[args.residue as usize % r.densities.len()])
                .unwrap_or(f64::NAN)
        }
        (Some(seq), None, Some(set)) => {
            // a-density of the set along a_n
            let sspec = spec::parse_sequence_spec(seq)?;
            let (values, table) = resolve_sequence(&sspec, args.max, &args.common)?;
            let ind = spec::parse_indicator(set, &table)?;
            let d = a_density(&values, &ind, &cps)?;
            w.comment(&format!(
                "ubseq density seq={} set={} max={} checkpoints={} seed={}",
                sspec,
                ind.name(),
                args.max,
                args.checkpoints.as_deref().unwrap_or("geo"),
                args.common.seed,
            ))?;
            w.comment(&format!(
                "upper={} lower={}",
                fmt_f64(d.upper),
                fmt_f64(d.lower)
            ))?;
            w.header(&["N", "value"])?;
            for &(n, v) in &d.series {
                w.row(n, &[v])?;
            }
            d.series.last().map(|&(_, v)| v).unwrap_or(f64::NAN)
        }
        (None, None, Some(_)) | (Some(_), None, None) | (None, None, None) => {
            // natural density of a set; `density --seq sf` reads as the set
            let text = args
                .set
                .clone()
                .or(args.seq.clone())
                .ok_or_else(|| anyhow!("density needs --set or --seq"))?;
            let table = table_for(&args.common, args.max)?;
            let ind = spec::parse_indicator(&text, &table)?;
            let d = densities(&ind, &cps)?;
            w.comment(&format!(
                "ubseq density set={} max={} checkpoints={} seed={}",
                ind.name(),
                args.max,
                args.checkpoints.as_deref().unwrap_or("geo"),
                args.common.seed,
            ))?;
            w.comment(&format!(
                "upper={} lower={}",
                fmt_f64(d.upper),
                fmt_f64(d.lower)
            ))?;
            w.header(&["N", "value"])?;
            for &(n, v) in &d.series {
                w.row(n, &[v])?;
            }
            d.series.last().map(|&(_, v)| v).unwrap_or(f64::NAN)
        }
        _ => bail!("density takes --set, --seq with --mod, or --seq with --set"),
    };
    w.finish()?;

    if args.common.assert {
        if let (Some(target), Some(tol)) = (args.target, args.tol) {
            if (final_value - target).abs() >= tol {
                return Err(ToleranceFailure(format!("|{final_value} − {target}| ≥ {tol}")).into());
            }
        }
    }
    Ok(())
}

// --------------------------------------------------------- dynsys-probe --

#[derive(Args, Debug)]
pub struct ProbeArgs {
    #[command(flatten)]
    pub common: Common,
    /// Flow spec: rotation:θ, cyclic:q, odometer:D, denjoy[:θ[:G[:K]]].
    #[arg(long)]
    pub flow: String,
    /// mls, meq, or attract.
    #[arg(long)]
    pub probe: String,
    #[arg(long)]
    pub seq: String,
    /// Orbit horizon N.
    #[arg(long, value_parser = spec::parse_count)]
    pub n: u64,
    #[arg(long, default_value_t = 1e-4)]
    pub delta: f64,
    #[arg(long, default_value_t = 0.05)]
    pub epsilon: f64,
    #[arg(long, value_parser = spec::parse_count, default_value_t = 16)]
    pub pairs: u64,
    /// Start points for the attract probe.
    #[arg(long, default_value = "default")]
    pub x: String,
    #[arg(long, default_value = "default")]
    pub z: String,
    /// With --assert: worst statistic must stay below this.
    #[arg(long)]
    pub tol_below: Option<f64>,
}

pub fn run_probe(args: &ProbeArgs) -> Result<()> {
    let flow = spec::parse_flow(&args.flow)?;
    let sspec = spec::parse_sequence_spec(&args.seq)?;
    let (values, _) = resolve_sequence(&sspec, args.n, &args.common)?;
    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    w.comment(&format!(
        "ubseq dynsys-probe flow={} probe={} seq={} n={} delta={} epsilon={} pairs={} seed={}",
        flow, args.probe, sspec, args.n, args.delta, args.epsilon, args.pairs, args.common.seed,
    ))?;
    let statistic = match args.probe.as_str() {
        "mls" => {
            let r = mls_probe(
                &flow,
                &values,
                args.delta,
                args.epsilon,
                args.pairs,
                args.n,
                args.common.seed,
            )?;
            w.header(&[
                "delta",
                "epsilon",
                "pairs",
                "worst_exceptional_density",
                "worst_mean_distance",
            ])?;
            w.raw_row(&[
                fmt_f64(r.delta),
                fmt_f64(r.epsilon),
                r.pairs_tested.to_string(),
                fmt_f64(r.worst_exceptional_density),
                fmt_f64(r.worst_mean_distance),
            ])?;
            r.worst_exceptional_density
        }
        "meq" => {
            let r = meq_probe(
                &flow,
                &values,
                args.delta,
                args.pairs,
                args.n,
                args.common.seed,
            )?;
            w.header(&["delta", "pairs", "worst_mean_distance"])?;
            w.raw_row(&[
                fmt_f64(r.delta),
                r.pairs_tested.to_string(),
                fmt_f64(r.worst_mean_distance),
            ])?;
            r.worst_mean_distance
        }
        "attract" => {
            let x = spec::parse_start(&args.x, &flow)?;
            let z = spec::parse_start(&args.z, &flow)?;
            let m = mean_attraction(&flow, &x, &z, &values, args.n)?;
            w.header(&["N", "value"])?;
            w.row(args.n, &[m])?;
            m
        }
        other => bail!("unknown probe {other:?} (mls, meq, attract)"),
    };
    w.finish()?;

    if args.common.assert {
        if let Some(tol) = args.tol_below {
            if statistic >= tol {
                return Err(
                    ToleranceFailure(format!("probe statistic {statistic} ≥ {tol}")).into(),
                );
            }
        }
    }
    Ok(())
}

// -------------------------------------------------------------- converge --

#[derive(Args, Debug)]
pub struct ConvergeArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long)]
    pub flow: String,
    #[arg(long)]
    pub obs: String,
    #[arg(long)]
    pub seq: String,
    #[arg(long, value_parser = spec::parse_count)]
    pub max: u64,
    #[arg(long, default_value = "default")]
    pub start: String,
    #[arg(long)]
    pub mask: Option<String>,
    #[arg(long)]
    pub checkpoints: Option<String>,
    /// Convergence target; "auto" uses the space average ∫φdν.
    #[arg(long)]
    pub target: Option<String>,
    #[arg(long)]
    pub tol: Option<f64>,
}

pub fn run_converge(args: &ConvergeArgs) -> Result<()> {
    let flow = spec::parse_flow(&args.flow)?;
    let obs = spec::parse_observable(&args.obs)?;
    let start = spec::parse_start(&args.start, &flow)?;
    let sspec = spec::parse_sequence_spec(&args.seq)?;
    let cps = spec::parse_checkpoints(args.checkpoints.as_deref(), args.max)?;
    let (values, table) = resolve_sequence(&sspec, args.max, &args.common)?;

    let target: Option<f64> = match args.target.as_deref() {
        None => None,
        Some("auto") => {
            if args.mask.is_some() {
                bail!("--target auto is the unmasked space average; give an explicit target with --mask");
            }
            Some(space_average(&flow, &obs)?)
        }
        Some(v) => Some(v.parse()?),
    };

    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    w.comment(&format!(
        "ubseq converge flow={} obs={} seq={} start={} max={} mask={} checkpoints={} seed={}",
        flow,
        obs,
        sspec,
        args.start,
        args.max,
        args.mask.as_deref().unwrap_or("none"),
        args.checkpoints.as_deref().unwrap_or("geo"),
        args.common.seed,
    ))?;

    let series: Vec<(u64, f64)> = match &args.mask {
        None => {
            let s = time_average_series(&flow, &obs, &start, &values, &cps)?;
            w.header(&["N", "value"])?;
            for &(n, v) in &s.checkpoints {
                w.row(n, &[v])?;
            }
            s.checkpoints
        }
        Some(mask) => {
            let ind = spec::parse_indicator(mask, &table)?;
            let s = masked_time_average_series(&flow, &obs, &start, &values, &ind, &cps)?;
            w.header(&["N", "value", "conditional_value"])?;
            for p in &s.checkpoints {
                w.row(p.n, &[p.value, p.conditional_value()])?;
            }
            s.checkpoints.iter().map(|p| (p.n, p.value)).collect()
        }
    };

    let mut failure = None;
    if let Some(target) = target {
        let report = convergence_report(&series, target);
        w.comment(&format!(
            "target={} final_residual={} monotone_improvement={}",
            fmt_f64(report.target),
            fmt_f64(report.final_residual),
            report.monotone_improvement,
        ))?;
        if args.common.assert {
            if let Some(tol) = args.tol {
                if report.final_residual >= tol {
                    failure = Some(format!("residual {} ≥ {tol}", report.final_residual));
                }
            }
        }
    }
    w.finish()?;
    match failure {
        Some(msg) => Err(ToleranceFailure(msg).into()),
        None => Ok(()),
    }
}

// -------------------------------------------------------------- disjoint --

#[derive(Args, Debug)]
pub struct DisjointArgs {
    #[command(flatten)]
    pub common: Common,
    /// Weight sequence: tm, rs, lambda, mobius.
    #[arg(long)]
    pub weights: String,
    #[arg(long)]
    pub flow: String,
    #[arg(long)]
    pub obs: String,
    #[arg(long, default_value = "default")]
    pub start: String,
    #[arg(long, value_parser = spec::parse_count)]
    pub max: u64,
    #[arg(long)]
    pub checkpoints: Option<String>,
    #[arg(long)]
    pub tol_below: Option<f64>,
}

pub fn run_disjoint(args: &DisjointArgs) -> Result<()> {
    let kind = spec::WeightKind::parse(&args.weights)?;
    let flow = spec::parse_flow(&args.flow)?;
    let obs = spec::parse_observable(&args.obs)?;
    let start = spec::parse_start(&args.start, &flow)?;
    let cps = spec::parse_checkpoints(args.checkpoints.as_deref(), args.max)?;
    let table = match kind {
        spec::WeightKind::Liouville | spec::WeightKind::Mobius => {
            Some(table_for(&args.common, args.max)?)
        }
        _ => None,
    };
    let c = kind.values(args.max, table.as_ref())?;
    let series = linear_disjointness_series(&c, &flow, &obs, &start, &cps, kind.as_str())?;

    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    w.comment(&format!(
        "ubseq disjoint weights={} flow={} obs={} start={} max={} checkpoints={} seed={}",
        kind.as_str(),
        flow,
        obs,
        args.start,
        args.max,
        args.checkpoints.as_deref().unwrap_or("geo"),
        args.common.seed,
    ))?;
    w.header(&["N", "value"])?;
    for &(n, v) in &series.checkpoints {
        w.row(n, &[v])?;
    }
    w.finish()?;

    if args.common.assert {
        if let Some(tol) = args.tol_below {
            let v = series.final_value().abs();
            if v >= tol {
                return Err(ToleranceFailure(format!("|S_N| = {v} ≥ {tol}")).into());
            }
        }
    }
    Ok(())
}

// ----------------------------------------------------------------- panel --

#[derive(Args, Debug)]
pub struct PanelArgs {
    #[command(flatten)]
    pub common: Common,
    #[arg(long, value_parser = spec::parse_count)]
    pub max: u64,
    #[arg(long)]
    pub checkpoints: Option<String>,
}

pub fn run_panel(args: &PanelArgs) -> Result<()> {
    let cps = spec::parse_checkpoints(args.checkpoints.as_deref(), args.max)?;
    let table = table_for(&args.common, args.max)?;
    let rows = number_theory_panel(&table, &cps)?;
    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    w.comment(&format!(
        "ubseq panel max={} checkpoints={} seed={}",
        args.max,
        args.checkpoints.as_deref().unwrap_or("geo"),
        args.common.seed,
    ))?;
    w.header(&["N", "liouville_mean", "mertens_mean", "pnt_ratio"])?;
    for r in &rows {
        w.row(r.n, &[r.liouville_mean, r.mertens_mean, r.pnt_ratio])?;
    }
    w.finish()?;
    Ok(())
}

// ---------------------------------------------------------------- report --

#[derive(Args, Debug)]
pub struct ReportArgs {
    #[command(flatten)]
    pub common: Common,
    /// additivity, multiplicativity, transfer, dad, rd, or sup-rate.
    #[arg(long)]
    pub check: String,
    #[arg(long)]
    pub seq: Option<String>,
    #[arg(long)]
    pub set: Option<String>,
    /// Subsequence for the dad check.
    #[arg(long)]
    pub sub: Option<String>,
    #[arg(long)]
    pub theta: Option<String>,
    #[arg(long, value_parser = spec::parse_count)]
    pub n: Option<u64>,
    #[arg(long, value_parser = spec::parse_count, default_value_t = 10_000)]
    pub trials: u64,
    #[arg(long, value_parser = spec::parse_count)]
    pub hmax: Option<u64>,
    #[arg(long)]
    pub tol: Option<f64>,
    /// Weights for sup-rate (tm or rs).
    #[arg(long)]
    pub weights: Option<String>,
    /// Power-of-two exponents bounding the sup-rate checkpoints.
    #[arg(long, value_parser = spec::parse_count, default_value_t = 10)]
    pub n0exp: u64,
    #[arg(long, value_parser = spec::parse_count, default_value_t = 16)]
    pub n1exp: u64,
    #[arg(long)]
    pub slope_min: Option<f64>,
    #[arg(long)]
    pub slope_max: Option<f64>,
}

pub fn run_report(args: &ReportArgs) -> Result<()> {
    let mut w = CsvWriter::open(args.common.out.as_deref())?;
    let mut failure: Option<String> = None;
    match args.check.as_str() {
        "additivity" | "multiplicativity" => {
            let seq = args
                .seq
                .as_deref()
                .ok_or_else(|| anyhow!("--seq required"))?;
            let n = args.n.ok_or_else(|| anyhow!("--n required"))?;
            let sspec = spec::parse_sequence_spec(seq)?;
            let (values, _) = resolve_sequence(&sspec, n, &args.common)?;
            let report = if args.check == "additivity" {
                additivity_check(&values, args.trials, args.common.seed)
            } else {
                multiplicativity_check(&values, args.trials, args.common.seed)
            };
            w.comment(&format!(
                "ubseq report check={} seq={} n={} trials={} seed={}",
                args.check, sspec, n, args.trials, args.common.seed,
            ))?;
            w.header(&["trials", "violations", "witnesses"])?;
            let witnesses: Vec<String> = report
                .witnesses
                .iter()
                .map(|(m, k)| format!("({m};{k})"))
                .collect();
            w.raw_row(&[
                report.trials.to_string(),
                report.violations.to_string(),
                witnesses.join(" "),
            ])?;
            if args.common.assert && !report.holds() {
                failure = Some(format!("{} violations", report.violations));
            }
        }
        "transfer" => {
            let set = args
                .set
                .as_deref()
                .ok_or_else(|| anyhow!("--set required"))?;
            let theta = spec::parse_theta(
                args.theta
                    .as_deref()
                    .ok_or_else(|| anyhow!("--theta required"))?,
            )?;
            let n = args.n.ok_or_else(|| anyhow!("--n required"))?;
            // the indicator must hold at least n members
            let sspec = spec::parse_sequence_spec(set)?;
            let bound = subsequence_table_bound(&sspec, n, &args.common)?;
            let table = table_for(&args.common, bound)?;
            let ind = spec::parse_indicator(set, &table)?;
            let dev = finite_transfer_identity_check(&ind, &theta, n)?;
            w.comment(&format!(
                "ubseq report check=transfer set={} theta={} n={} seed={}",
                ind.name(),
                theta,
                n,
                args.common.seed,
            ))?;
            w.header(&["N", "deviation"])?;
            w.row(n, &[dev])?;
            let tol = args.tol.unwrap_or(1e-6);
            if args.common.assert && dev >= tol {
                failure = Some(format!("deviation {dev} ≥ {tol}"));
            }
        }
        "dad" => {
            let sub = args
                .sub
                .as_deref()
                .ok_or_else(|| anyhow!("--sub required"))?;
            let set = args
                .set
                .as_deref()
                .ok_or_else(|| anyhow!("--set required"))?;
            let n = args.n.ok_or_else(|| anyhow!("--n required"))?;
            let sspec = spec::parse_sequence_spec(sub)?;
            let bound = subsequence_table_bound(&sspec, n, &args.common)?;
            let table = table_for(&args.common, bound)?;
            let sub_ind = spec::parse_indicator(sub, &table)?;
            let listing = subsequence_of(&sub_ind)?;
            let set_ind = spec::parse_indicator(set, &table)?;
            let report = prop_dad_check(&listing, &set_ind, n)?;
            w.comment(&format!(
                "ubseq report check=dad sub={} set={} n={} seed={}",
                sub_ind.name(),
                set_ind.name(),
                n,
                args.common.seed,
            ))?;
            w.header(&["lhs", "rhs", "holds"])?;
            w.raw_row(&[
                fmt_f64(report.lhs),
                fmt_f64(report.rhs),
                report.holds.to_string(),
            ])?;
            if args.common.assert && !report.holds {
                failure = Some(format!("lhs {} > rhs {} + slack", report.lhs, report.rhs));
            }
        }
        "rd" => {
            let seq = args
                .seq
                .as_deref()
                .ok_or_else(|| anyhow!("--seq required"))?;
            let n = args.n.ok_or_else(|| anyhow!("--n required"))?;
            let thetas: Vec<Theta> = args
                .theta
                .as_deref()
                .ok_or_else(|| anyhow!("--theta required"))?
                .split(',')
                .map(spec::parse_theta)
                .collect::<Result<_>>()?;
            let sspec = spec::parse_sequence_spec(seq)?;
            let (values, _) = resolve_sequence(&sspec, n, &args.common)?;
            let hmax = args.hmax.unwrap_or(DEFAULT_H_MAX as u64) as u32;
            let tol = args.tol.unwrap_or(0.05);
            let reports = rd_test(&values, &thetas, n, hmax, tol)?;
            w.comment(&format!(
                "ubseq report check=rd seq={} n={} hmax={hmax} tol={tol} seed={}",
                sspec, n, args.common.seed,
            ))?;
            w.header(&["theta", "h", "abs", "dstar", "pass"])?;
            for r in &reports {
                for (h, abs) in r.weyl_abs.iter().enumerate() {
                    w.raw_row(&[
                        r.theta.to_string(),
                        (h + 1).to_string(),
                        fmt_f64(*abs),
                        fmt_f64(r.dstar),
                        r.pass.to_string(),
                    ])?;
                }
                if args.common.assert && !r.pass {
                    failure = Some(format!("θ = {} fails the Weyl criterion", r.theta));
                }
            }
        }
        "sup-rate" => {
            let kind = spec::WeightKind::parse(
                args.weights
                    .as_deref()
                    .ok_or_else(|| anyhow!("--weights required"))?,
            )?;
            if args.n1exp <= args.n0exp || args.n1exp > 30 {
                bail!("need n0exp < n1exp ≤ 30");
            }
            let n_max = 1u64 << args.n1exp;
            let table = match kind {
                spec::WeightKind::Liouville => Some(table_for(&args.common, n_max)?),
                _ => None,
            };
            let weights = kind.signed_bits(n_max, table.as_ref())?;
            let cps: Vec<u64> = (args.n0exp..=args.n1exp).map(|e| 1u64 << e).collect();
            let grid = ubseq_core::expsum::default_theta_grid(DEFAULT_FAREY_ORDER, DEFAULT_OFFSETS);
            let series = sup_profile_series(&weights, &grid, &cps)?;
            let fit = rate_fit(&series.iter().map(|p| (p.n, p.sup)).collect::<Vec<_>>())?;
            w.comment(&format!(
                "ubseq report check=sup-rate weights={} n0exp={} n1exp={} farey={} offsets={} seed={}",
                kind.as_str(),
                args.n0exp,
                args.n1exp,
                DEFAULT_FAREY_ORDER,
                DEFAULT_OFFSETS,
                args.common.seed,
            ))?;
            w.comment(&format!(
                "slope={} intercept={} r_squared={}",
                fmt_f64(fit.slope),
                fmt_f64(fit.intercept),
                fmt_f64(fit.r_squared)
            ))?;
            w.header(&["N", "sup", "argmax"])?;
            for p in &series {
                w.raw_row(&[p.n.to_string(), fmt_f64(p.sup), p.argmax.to_string()])?;
            }
            if args.common.assert {
                if let Some(lo) = args.slope_min {
                    if fit.slope < lo {
                        failure = Some(format!("slope {} < {lo}", fit.slope));
                    }
                }
                if let Some(hi) = args.slope_max {
                    if fit.slope > hi {
                        failure = Some(format!("slope {} > {hi}", fit.slope));
                    }
                }
            }
        }
        other => bail!("unknown check {other:?}"),
    }
    w.finish()?;
    match failure {
        Some(msg) => Err(ToleranceFailure(msg).into()),
        None => Ok(()),
    }
}
