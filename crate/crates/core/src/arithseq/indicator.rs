//! Indicator sets over [1, max_n] and their increasing listings.

use std::fmt;
use std::str::FromStr;

use bitvec::prelude::*;

use super::automatic::{automatic_bit, AutomaticKind};
use super::table::ArithmeticFunctionTable;
use super::SequenceError;

/// The named indicator sets from the arithmetic examples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IndicatorName {
    /// {n ≥ 1 : t(n) = 1}, Thue–Morse.
    Tm,
    /// {n ≥ 1 : r(n) = 1}, Rudin–Shapiro.
    Rs,
    /// Even number of prime factors with multiplicity (Ω(n) even; 1 ∈ EF).
    Ef,
    /// Odd number of prime factors with multiplicity.
    Of,
    /// Square-free numbers.
    Sf,
    /// EF ∩ SF.
    Efsf,
    /// OF ∩ SF.
    Ofsf,
}

impl IndicatorName {
    pub const ALL: [IndicatorName; 7] = [
        IndicatorName::Tm,
        IndicatorName::Rs,
        IndicatorName::Ef,
        IndicatorName::Of,
        IndicatorName::Sf,
        IndicatorName::Efsf,
        IndicatorName::Ofsf,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            IndicatorName::Tm => "tm",
            IndicatorName::Rs => "rs",
            IndicatorName::Ef => "ef",
            IndicatorName::Of => "of",
            IndicatorName::Sf => "sf",
            IndicatorName::Efsf => "efsf",
            IndicatorName::Ofsf => "ofsf",
        }
    }
}

impl fmt::Display for IndicatorName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for IndicatorName {
    type Err = SequenceError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "tm" => Ok(IndicatorName::Tm),
            "rs" => Ok(IndicatorName::Rs),
            "ef" => Ok(IndicatorName::Ef),
            "of" => Ok(IndicatorName::Of),
            "sf" => Ok(IndicatorName::Sf),
            "efsf" => Ok(IndicatorName::Efsf),
            "ofsf" => Ok(IndicatorName::Ofsf),
            other => Err(SequenceError::UnknownIndicator(other.into())),
        }
    }
}

/// A subset of ℕ restricted to [1, max_n], stored as a bitset.
///
/// Membership is defined for every 1 ≤ n ≤ max_n; 0 and values beyond
/// `max_n` are never members (queries beyond the range are an error at the
/// call sites that need to distinguish).
#[derive(Debug, Clone)]
pub struct IndicatorSequence {
    max_n: u64,
    bits: BitVec<u8, Lsb0>,
    name: String,
}

impl IndicatorSequence {
    /// Builds one of the named sets from a sieve table. The domain starts
    /// at n = 1: t(0)/r(0) are defined but index 0 is not listed.
    pub fn named(name: IndicatorName, table: &ArithmeticFunctionTable) -> Self {
        let max_n = table.max_n();
        let mut bits = bitvec![u8, Lsb0; 0; max_n as usize];
        for n in 1..=max_n {
            let member = match name {
                IndicatorName::Tm => automatic_bit(AutomaticKind::ThueMorse, n) == 1,
                IndicatorName::Rs => automatic_bit(AutomaticKind::RudinShapiro, n) == 1,
                IndicatorName::Ef => table.big_omega(n).is_multiple_of(2),
                IndicatorName::Of => table.big_omega(n) % 2 == 1,
                IndicatorName::Sf => table.is_squarefree(n),
                IndicatorName::Efsf => {
                    table.big_omega(n).is_multiple_of(2) && table.is_squarefree(n)
                }
                IndicatorName::Ofsf => table.big_omega(n) % 2 == 1 && table.is_squarefree(n),
            };
            bits.set((n - 1) as usize, member);
        }
        Self {
            max_n,
            bits,
            name: name.as_str().to_string(),
        }
    }

    pub fn from_bits(bits: BitVec<u8, Lsb0>, name: impl Into<String>) -> Self {
        Self {
            max_n: bits.len() as u64,
            bits,
            name: name.into(),
        }
    }

    /// The whole of [1, max_n].
    pub fn all_ones(max_n: u64) -> Self {
        Self {
            max_n,
            bits: bitvec![u8, Lsb0; 1; max_n as usize],
            name: "all".into(),
        }
    }

    /// The empty set on [1, max_n].
    pub fn empty(max_n: u64) -> Self {
        Self {
            max_n,
            bits: bitvec![u8, Lsb0; 0; max_n as usize],
            name: "empty".into(),
        }
    }

    /// The residue class {n : n ≡ r (mod m)} on [1, max_n].
    pub fn residue_class(max_n: u64, m: u64, r: u64) -> Self {
        let mut bits = bitvec![u8, Lsb0; 0; max_n as usize];
        for n in 1..=max_n {
            bits.set((n - 1) as usize, n % m == r % m);
        }
        Self {
            max_n,
            bits,
            name: format!("mod:{m}:{r}"),
        }
    }

    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Membership of n; 0 and values beyond max_n are not members.
    #[inline]
    pub fn contains(&self, n: u64) -> bool {
        n >= 1 && n <= self.max_n && self.bits[(n - 1) as usize]
    }

    /// Membership defined only inside the table range.
    #[inline]
    pub fn contains_checked(&self, n: u64) -> Option<bool> {
        if n > self.max_n {
            None
        } else {
            Some(n >= 1 && self.bits[(n - 1) as usize])
        }
    }

    pub fn count(&self) -> u64 {
        self.bits.count_ones() as u64
    }

    pub fn bits(&self) -> &BitSlice<u8, Lsb0> {
        &self.bits
    }

    /// Members in increasing order.
    pub fn members(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64 + 1)
    }

    /// Intersection with another indicator of the same range.
    pub fn and(&self, other: &IndicatorSequence, name: impl Into<String>) -> IndicatorSequence {
        assert_eq!(self.max_n, other.max_n, "indicator ranges differ");
        let mut bits = self.bits.clone();
        bits &= other.bits.as_bitslice();
        IndicatorSequence {
            max_n: self.max_n,
            bits,
            name: name.into(),
        }
    }
}

/// An increasing listing a_1 < a_2 < … of a subset of ℕ.
#[derive(Debug, Clone)]
pub struct Subsequence {
    values: Vec<u64>,
    source: Option<String>,
}

impl Subsequence {
    /// Wraps a strictly increasing list of positive integers.
    pub fn from_values(values: Vec<u64>, source: Option<String>) -> Result<Self, SequenceError> {
        if values.is_empty() {
            return Err(SequenceError::EmptyIndicator("<values>".into()));
        }
        for w in values.windows(2) {
            if w[0] >= w[1] {
                return Err(SequenceError::BadFile {
                    path: source.clone().unwrap_or_default(),
                    reason: format!("values not strictly increasing at {} ≥ {}", w[0], w[1]),
                });
            }
        }
        if values[0] == 0 {
            return Err(SequenceError::BadFile {
                path: source.clone().unwrap_or_default(),
                reason: "values must be positive".into(),
            });
        }
        Ok(Self { values, source })
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn len(&self) -> u64 {
        self.values.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn source(&self) -> Option<&str> {
        self.source.as_deref()
    }
}

/// Lists an indicator as its increasing subsequence.
pub fn subsequence_of(ind: &IndicatorSequence) -> Result<Subsequence, SequenceError> {
    let values: Vec<u64> = ind.members().collect();
    if values.is_empty() {
        return Err(SequenceError::EmptyIndicator(ind.name().to_string()));
    }
    Ok(Subsequence {
        values,
        source: Some(ind.name().to_string()),
    })
}
