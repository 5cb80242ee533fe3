//! Resolving a sequence description to concrete values a_1..a_N.

use std::fmt;
use std::path::PathBuf;

use super::indicator::{subsequence_of, IndicatorName, IndicatorSequence};
use super::table::ArithmeticFunctionTable;
use super::SequenceError;

/// Description of an arithmetic sequence (a_n).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SequenceSpec {
    /// a_n = Ω(n).
    BigOmega,
    /// a_n = ω(n).
    SmallOmega,
    /// a_n = n.
    Identity,
    /// a_n = P(n) with non-negative integer coefficients, constant first.
    Poly(Vec<u64>),
    /// The increasing listing of a named indicator set.
    SubseqOf(IndicatorName),
    /// Values read from a file, one positive decimal integer per line.
    FromFile(PathBuf),
}

impl fmt::Display for SequenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SequenceSpec::BigOmega => write!(f, "omega"),
            SequenceSpec::SmallOmega => write!(f, "smallomega"),
            SequenceSpec::Identity => write!(f, "n"),
            SequenceSpec::Poly(c) => {
                let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
                write!(f, "poly:{}", parts.join(","))
            }
            SequenceSpec::SubseqOf(name) => write!(f, "subseq:{name}"),
            SequenceSpec::FromFile(p) => write!(f, "file:{}", p.display()),
        }
    }
}

fn poly_eval(coeffs: &[u64], n: u64) -> Option<u64> {
    // Horner, checked: coefficients are constant-first
    let mut acc: u64 = 0;
    for &c in coeffs.iter().rev() {
        acc = acc.checked_mul(n)?.checked_add(c)?;
    }
    Some(acc)
}

/// The first N values a_1..a_N of a sequence, resolved against a table.
pub fn sequence_values(
    spec: &SequenceSpec,
    n: u64,
    table: &ArithmeticFunctionTable,
) -> Result<Vec<u64>, SequenceError> {
    match spec {
        SequenceSpec::BigOmega => {
            require_len(n, table.max_n())?;
            Ok((1..=n).map(|k| table.big_omega(k) as u64).collect())
        }
        SequenceSpec::SmallOmega => {
            require_len(n, table.max_n())?;
            Ok((1..=n).map(|k| table.small_omega(k) as u64).collect())
        }
        SequenceSpec::Identity => Ok((1..=n).collect()),
        SequenceSpec::Poly(coeffs) => (1..=n)
            .map(|k| poly_eval(coeffs, k).ok_or(SequenceError::PolyOverflow(k)))
            .collect(),
        SequenceSpec::SubseqOf(name) => {
            let ind = IndicatorSequence::named(*name, table);
            let sub = subsequence_of(&ind)?;
            if sub.len() < n {
                return Err(SequenceError::TooShort {
                    requested: n,
                    available: sub.len(),
                });
            }
            Ok(sub.values()[..n as usize].to_vec())
        }
        SequenceSpec::FromFile(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| SequenceError::BadFile {
                path: path.display().to_string(),
                reason: e.to_string(),
            })?;
            let mut values = Vec::new();
            for (lineno, line) in text.lines().enumerate() {
                let line = line.trim();
                if line.is_empty() {
                    continue;
                }
                let v: u64 = line.parse().map_err(|_| SequenceError::BadFile {
                    path: path.display().to_string(),
                    reason: format!("line {}: not a positive integer: {line:?}", lineno + 1),
                })?;
                if v == 0 {
                    return Err(SequenceError::BadFile {
                        path: path.display().to_string(),
                        reason: format!("line {}: values must be strictly positive", lineno + 1),
                    });
                }
                values.push(v);
            }
            if (values.len() as u64) < n {
                return Err(SequenceError::TooShort {
                    requested: n,
                    available: values.len() as u64,
                });
            }
            values.truncate(n as usize);
            Ok(values)
        }
    }
}

fn require_len(n: u64, available: u64) -> Result<(), SequenceError> {
    if n > available {
        Err(SequenceError::TooShort {
            requested: n,
            available,
        })
    } else {
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithseq::build_sieve_tables;

    #[test]
    fn named_specs() {
        let t = build_sieve_tables(64).unwrap();
        assert_eq!(
            sequence_values(&SequenceSpec::BigOmega, 4, &t).unwrap(),
            vec![0, 1, 1, 2]
        );
        assert_eq!(
            sequence_values(&SequenceSpec::Identity, 3, &t).unwrap(),
            vec![1, 2, 3]
        );
        // P(n) = n²
        assert_eq!(
            sequence_values(&SequenceSpec::Poly(vec![0, 0, 1]), 3, &t).unwrap(),
            vec![1, 4, 9]
        );
        assert_eq!(
            sequence_values(&SequenceSpec::SubseqOf(IndicatorName::Tm), 4, &t).unwrap(),
            vec![1, 2, 4, 7]
        );
    }

    #[test]
    fn poly_overflow_is_reported() {
        let t = build_sieve_tables(16).unwrap();
        let spec = SequenceSpec::Poly(vec![0, u64::MAX / 2, 1]);
        assert!(matches!(
            sequence_values(&spec, 4, &t),
            Err(SequenceError::PolyOverflow(_))
        ));
    }

    #[test]
    fn subsequence_exhaustion() {
        let t = build_sieve_tables(16).unwrap();
        let spec = SequenceSpec::SubseqOf(IndicatorName::Sf);
        assert!(matches!(
            sequence_values(&spec, 1000, &t),
            Err(SequenceError::TooShort { .. })
        ));
    }

    #[test]
    fn file_round_trip() {
        let dir = std::env::temp_dir().join("ubseq-seqspec-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("vals.txt");
        std::fs::write(&path, "3\n5\n9\n").unwrap();
        let t = build_sieve_tables(16).unwrap();
        let spec = SequenceSpec::FromFile(path.clone());
        assert_eq!(sequence_values(&spec, 2, &t).unwrap(), vec![3, 5]);
        std::fs::write(&path, "3\n0\n").unwrap();
        assert!(sequence_values(&spec, 2, &t).is_err());
        std::fs::write(&path, "3\nxyz\n").unwrap();
        assert!(sequence_values(&spec, 2, &t).is_err());
    }
}
