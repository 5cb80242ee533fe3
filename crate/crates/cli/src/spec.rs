//! Text forms of experiment parameters.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};

use ubseq_core::arithseq::{
    ArithmeticFunctionTable, IndicatorName, IndicatorSequence, SequenceSpec,
};
use ubseq_core::checkpoints;
use ubseq_core::dynsys::{Flow, FlowPoint, FlowSpec, HarmonicPart, Observable, Side};
use ubseq_core::expsum::Theta;
use ubseq_core::fixed;

/// Counts accept scientific shorthand: "1e7", "2.5e3", or plain integers.
pub fn parse_count(text: &str) -> Result<u64> {
    if let Ok(v) = text.parse::<u64>() {
        return Ok(v);
    }
    let v: f64 = text.parse().map_err(|_| anyhow!("not a count: {text:?}"))?;
    if !v.is_finite() || !(0.0..=9e15).contains(&v) {
        bail!("count out of range: {text:?}");
    }
    let rounded = v.round();
    if (v - rounded).abs() > 1e-6 * v.abs().max(1.0) {
        bail!("count is not an integer: {text:?}");
    }
    Ok(rounded as u64)
}

/// "geo:start:ratio:count", "geo" (defaults 1000:√10, up to max), or an
/// explicit comma list. Always ends at `max`.
pub fn parse_checkpoints(spec: Option<&str>, max: u64) -> Result<Vec<u64>> {
    let spec = spec.unwrap_or("geo");
    let cps = if spec == "geo" {
        checkpoints::geometric_to(1000.min(max), 10f64.sqrt(), max)
    } else if let Some(rest) = spec.strip_prefix("geo:") {
        let parts: Vec<&str> = rest.split(':').collect();
        if parts.len() != 3 {
            bail!("geo spec needs start:ratio:count, got {spec:?}");
        }
        let start = parse_count(parts[0])?.max(1);
        let ratio: f64 = parts[1].parse().context("geo ratio")?;
        if ratio <= 1.0 {
            bail!("geo ratio must exceed 1");
        }
        let count: u64 = parts[2].parse().context("geo count")?;
        let mut out = Vec::new();
        let mut x = start as f64;
        for _ in 0..count {
            let n = x.round() as u64;
            if n >= 1 && n <= max && out.last() != Some(&n) {
                out.push(n);
            }
            x *= ratio;
        }
        if out.last() != Some(&max) {
            out.push(max);
        }
        out
    } else {
        let mut out = Vec::new();
        for part in spec.split(',') {
            out.push(parse_count(part.trim())?);
        }
        out
    };
    checkpoints::validate(&cps, max).map_err(|e| anyhow!("{e}"))?;
    Ok(cps)
}

pub fn parse_theta(text: &str) -> Result<Theta> {
    Theta::parse(text).map_err(|e| anyhow!("{e}"))
}

/// Sequence specs: omega, smallomega, n/identity, poly:c0,c1,…,
/// subseq:NAME (or a bare indicator name), file:PATH.
pub fn parse_sequence_spec(text: &str) -> Result<SequenceSpec> {
    match text {
        "omega" => return Ok(SequenceSpec::BigOmega),
        "smallomega" => return Ok(SequenceSpec::SmallOmega),
        "n" | "identity" => return Ok(SequenceSpec::Identity),
        _ => {}
    }
    if let Some(rest) = text.strip_prefix("poly:") {
        let coeffs: Result<Vec<u64>> = rest.split(',').map(|c| parse_count(c.trim())).collect();
        return Ok(SequenceSpec::Poly(coeffs?));
    }
    if let Some(rest) = text.strip_prefix("subseq:") {
        let name: IndicatorName = rest.parse().map_err(|e| anyhow!("{e}"))?;
        return Ok(SequenceSpec::SubseqOf(name));
    }
    if let Some(rest) = text.strip_prefix("file:") {
        return Ok(SequenceSpec::FromFile(PathBuf::from(rest)));
    }
    if let Ok(name) = text.parse::<IndicatorName>() {
        return Ok(SequenceSpec::SubseqOf(name));
    }
    bail!("unknown sequence spec: {text:?}")
}

/// Indicator specs: the named sets, "all", or "mod:m:r".
pub fn parse_indicator(text: &str, table: &ArithmeticFunctionTable) -> Result<IndicatorSequence> {
    if text == "all" {
        return Ok(IndicatorSequence::all_ones(table.max_n()));
    }
    if let Some(rest) = text.strip_prefix("mod:") {
        let (m, r) = rest
            .split_once(':')
            .ok_or_else(|| anyhow!("mod spec needs mod:m:r"))?;
        let m = parse_count(m)?;
        let r = parse_count(r)?;
        if m < 2 {
            bail!("mod:m:r needs m ≥ 2");
        }
        return Ok(IndicatorSequence::residue_class(table.max_n(), m, r));
    }
    let name: IndicatorName = text.parse().map_err(|e| anyhow!("{e}"))?;
    Ok(IndicatorSequence::named(name, table))
}

/// Flow specs: rotation:THETA, cyclic:q, odometer:D, denjoy[:THETA[:G[:K]]].
pub fn parse_flow(text: &str) -> Result<Flow> {
    let (kind, rest) = match text.split_once(':') {
        Some((k, r)) => (k, Some(r)),
        None => (text, None),
    };
    let spec = match kind {
        "rotation" => FlowSpec::Rotation {
            rho: parse_theta(rest.ok_or_else(|| anyhow!("rotation needs an angle"))?)?,
        },
        "cyclic" => FlowSpec::Cyclic {
            q: parse_count(rest.ok_or_else(|| anyhow!("cyclic needs a state count"))?)?,
        },
        "odometer" => FlowSpec::Odometer {
            depth: parse_count(rest.ok_or_else(|| anyhow!("odometer needs a depth"))?)? as u32,
        },
        "denjoy" => {
            let mut rho = Theta::golden();
            let mut gap_ratio = 0.5;
            let mut truncation = 64u32;
            if let Some(rest) = rest {
                let mut parts: Vec<&str> = rest.split(':').collect();
                // "rat:p/q" and "fix:<hex>" thetas span two segments
                if matches!(parts.first(), Some(&"rat") | Some(&"fix")) {
                    if parts.len() < 2 {
                        bail!("incomplete θ in denjoy spec: {text:?}");
                    }
                    rho = parse_theta(&format!("{}:{}", parts[0], parts[1]))?;
                    parts.drain(..2);
                } else if !parts.is_empty() && !parts[0].is_empty() {
                    rho = parse_theta(parts[0])?;
                    parts.remove(0);
                }
                if !parts.is_empty() {
                    gap_ratio = parts.remove(0).parse().context("denjoy gap ratio")?;
                }
                if !parts.is_empty() {
                    truncation = parts.remove(0).parse().context("denjoy truncation")?;
                }
                if !parts.is_empty() {
                    bail!("denjoy spec is denjoy:theta:gap_ratio:truncation");
                }
            }
            FlowSpec::Denjoy {
                rho,
                gap_ratio,
                truncation,
            }
        }
        other => bail!("unknown flow kind: {other:?}"),
    };
    Flow::new(spec).map_err(|e| anyhow!("{e}"))
}

fn parse_harmonic(rest: &str) -> Result<(i32, HarmonicPart)> {
    let (h, part) = rest
        .split_once(':')
        .ok_or_else(|| anyhow!("harmonic needs h:re|im"))?;
    let h: i32 = h.parse().context("harmonic index")?;
    let part = match part {
        "re" => HarmonicPart::Re,
        "im" => HarmonicPart::Im,
        other => bail!("harmonic part must be re or im, got {other:?}"),
    };
    Ok((h, part))
}

/// Observable specs: harm:h:re|im, cyl:BITS, state:r, denharm:h:re|im.
pub fn parse_observable(text: &str) -> Result<Observable> {
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("observable spec needs a kind prefix"))?;
    Ok(match kind {
        "harm" => {
            let (h, part) = parse_harmonic(rest)?;
            Observable::Harmonic { h, part }
        }
        "denharm" => {
            let (h, part) = parse_harmonic(rest)?;
            Observable::ComposedHarmonic { h, part }
        }
        "state" => Observable::StateIndicator {
            r: parse_count(rest)?,
        },
        "cyl" => {
            if rest.len() > 64 {
                bail!("cylinder word longer than 64 digits");
            }
            let mut word = 0u64;
            for (m, c) in rest.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => word |= 1 << m,
                    other => bail!("cylinder word must be 0/1 digits, got {other:?}"),
                }
            }
            Observable::Cylinder {
                word,
                depth: rest.len() as u32,
            }
        }
        other => bail!("unknown observable kind: {other:?}"),
    })
}

/// Start points: angle:X, state:s, word:BITS, denjoy:X:left|right, where X
/// is a fraction of 1 in decimal.
pub fn parse_start(text: &str, flow: &Flow) -> Result<FlowPoint> {
    if text == "default" {
        return Ok(flow.default_start());
    }
    let (kind, rest) = text
        .split_once(':')
        .ok_or_else(|| anyhow!("start point needs a kind prefix"))?;
    let point = match kind {
        "angle" => {
            let x: f64 = rest.parse().context("angle")?;
            if !(0.0..1.0).contains(&x) {
                bail!("angle must lie in [0, 1)");
            }
            FlowPoint::Angle(fixed::from_f64(x))
        }
        "state" => FlowPoint::State(parse_count(rest)?),
        "word" => {
            if rest.len() > 64 {
                bail!("word longer than 64 digits");
            }
            let mut word = 0u64;
            for (m, c) in rest.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => word |= 1 << m,
                    other => bail!("word must be 0/1 digits, got {other:?}"),
                }
            }
            FlowPoint::Word(word)
        }
        "denjoy" => {
            let (y, side) = rest
                .split_once(':')
                .ok_or_else(|| anyhow!("denjoy point is denjoy:y:left|right"))?;
            let y: f64 = y.parse().context("denjoy base angle")?;
            if !(0.0..1.0).contains(&y) {
                bail!("denjoy base angle must lie in [0, 1)");
            }
            let side = match side {
                "left" => Side::Left,
                "right" => Side::Right,
                other => bail!("side must be left or right, got {other:?}"),
            };
            FlowPoint::Denjoy {
                y: fixed::from_f64(y),
                side,
            }
        }
        other => bail!("unknown start point kind: {other:?}"),
    };
    flow.check_point(&point).map_err(|e| anyhow!("{e}"))?;
    Ok(point)
}

/// Weight kinds for the linear-disjointness series.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WeightKind {
    ThueMorse,
    RudinShapiro,
    Liouville,
    Mobius,
}

impl WeightKind {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(match text {
            "tm" => WeightKind::ThueMorse,
            "rs" => WeightKind::RudinShapiro,
            "lambda" | "liouville" => WeightKind::Liouville,
            "mobius" | "mu" => WeightKind::Mobius,
            other => bail!("unknown weights: {other:?} (tm, rs, lambda, mobius)"),
        })
    }

    pub fn as_str(self) -> &'static str {
        match self {
            WeightKind::ThueMorse => "tm",
            WeightKind::RudinShapiro => "rs",
            WeightKind::Liouville => "lambda",
            WeightKind::Mobius => "mobius",
        }
    }

    /// c_1..c_N. The sieve table is only needed for λ and μ.
    pub fn values(self, n: u64, table: Option<&ArithmeticFunctionTable>) -> Result<Vec<f64>> {
        use ubseq_core::arithseq::{automatic_bit, AutomaticKind};
        match self {
            WeightKind::ThueMorse => Ok((1..=n)
                .map(|k| 2.0 * automatic_bit(AutomaticKind::ThueMorse, k) as f64 - 1.0)
                .collect()),
            WeightKind::RudinShapiro => Ok((1..=n)
                .map(|k| 2.0 * automatic_bit(AutomaticKind::RudinShapiro, k) as f64 - 1.0)
                .collect()),
            WeightKind::Liouville => {
                let t = table.ok_or_else(|| anyhow!("λ weights need a sieve table"))?;
                Ok((1..=n).map(|k| t.liouville(k) as f64).collect())
            }
            WeightKind::Mobius => {
                let t = table.ok_or_else(|| anyhow!("μ weights need a sieve table"))?;
                Ok((1..=n).map(|k| t.mobius(k) as f64).collect())
            }
        }
    }

    /// ±1 weights for the sup profile (λ yes, μ no: it takes the value 0).
    pub fn signed_bits(self, n: u64, table: Option<&ArithmeticFunctionTable>) -> Result<Vec<i8>> {
        use ubseq_core::arithseq::{automatic_bit, AutomaticKind};
        match self {
            WeightKind::ThueMorse => Ok((1..=n)
                .map(|k| 2 * automatic_bit(AutomaticKind::ThueMorse, k) as i8 - 1)
                .collect()),
            WeightKind::RudinShapiro => Ok((1..=n)
                .map(|k| 2 * automatic_bit(AutomaticKind::RudinShapiro, k) as i8 - 1)
                .collect()),
            WeightKind::Liouville => {
                let t = table.ok_or_else(|| anyhow!("λ weights need a sieve table"))?;
                Ok((1..=n).map(|k| t.liouville(k)).collect())
            }
            WeightKind::Mobius => bail!("μ takes the value 0 and is not a ±1 weight"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("17").unwrap(), 17);
        assert_eq!(parse_count("1e7").unwrap(), 10_000_000);
        assert_eq!(parse_count("2.5e3").unwrap(), 2500);
        assert!(parse_count("1.5").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn checkpoint_specs() {
        let cps = parse_checkpoints(None, 100_000).unwrap();
        assert_eq!(*cps.last().unwrap(), 100_000);
        assert_eq!(cps[0], 1000);
        let cps = parse_checkpoints(Some("10,100,1000"), 1000).unwrap();
        assert_eq!(cps, vec![10, 100, 1000]);
        let cps = parse_checkpoints(Some("geo:16:2:5"), 1000).unwrap();
        assert_eq!(cps, vec![16, 32, 64, 128, 256, 1000]);
        assert!(parse_checkpoints(Some("5,4"), 10).is_err());
        assert!(parse_checkpoints(Some("5,40"), 10).is_err());
    }

    #[test]
    fn sequence_specs() {
        assert_eq!(
            parse_sequence_spec("omega").unwrap(),
            SequenceSpec::BigOmega
        );
        assert_eq!(
            parse_sequence_spec("poly:0,0,1").unwrap(),
            SequenceSpec::Poly(vec![0, 0, 1])
        );
        assert_eq!(
            parse_sequence_spec("tm").unwrap(),
            SequenceSpec::SubseqOf(IndicatorName::Tm)
        );
        assert_eq!(
            parse_sequence_spec("subseq:sf").unwrap(),
            SequenceSpec::SubseqOf(IndicatorName::Sf)
        );
        assert!(parse_sequence_spec("wat").is_err());
    }

    #[test]
    fn flow_and_observable_specs() {
        assert!(parse_flow("rotation:golden").is_ok());
        assert!(parse_flow("cyclic:2").is_ok());
        assert!(parse_flow("odometer:48").is_ok());
        assert!(parse_flow("denjoy:golden:0.5:64").is_ok());
        assert!(parse_flow("denjoy").is_ok());
        assert!(parse_flow("rotation:rat:1/2").is_err()); // rational rho
        assert!(parse_flow("banana:1").is_err());

        assert_eq!(
            parse_observable("harm:1:re").unwrap(),
            Observable::Harmonic {
                h: 1,
                part: HarmonicPart::Re
            }
        );
        assert_eq!(
            parse_observable("cyl:101").unwrap(),
            Observable::Cylinder {
                word: 0b101,
                depth: 3
            }
        );
        assert_eq!(
            parse_observable("state:0").unwrap(),
            Observable::StateIndicator { r: 0 }
        );
        assert!(parse_observable("harm:1:xy").is_err());
    }

    #[test]
    fn start_points() {
        let flow = parse_flow("odometer:8").unwrap();
        assert_eq!(
            parse_start("word:0110", &flow).unwrap(),
            FlowPoint::Word(0b0110)
        );
        assert_eq!(parse_start("default", &flow).unwrap(), FlowPoint::Word(0));
        let rot = parse_flow("rotation:golden").unwrap();
        assert!(parse_start("angle:0.25", &rot).is_ok());
        assert!(parse_start("state:1", &rot).is_err()); // kind mismatch
    }
}
