//! Linear-sieve factor-count tables.
//!
//! A single O(N) pass over a smallest-prime-factor linear sieve derives, for
//! every `1 ≤ n ≤ max_n`:
//!
//! - `Ω(n)` — prime factors counted with multiplicity,
//! - `ω(n)` — distinct prime factors,
//! - `μ(n)` — the Möbius function in {−1, 0, 1},
//! - the square-free indicator `μ²(n)` as a bitset.
//!
//! The Liouville function is never stored: `λ(n) = (−1)^{Ω(n)}` is always
//! reconstructed from the Ω parity.

use bitvec::prelude::*;

use super::SequenceError;

/// Default memory budget for a sieve build: 4 GiB.
pub const DEFAULT_BUDGET_BYTES: u64 = 4 << 30;

/// Sieved values of Ω, ω, μ and μ² for `1 ≤ n ≤ max_n`.
///
/// Immutable after construction; safe to share across threads.
#[derive(Debug, Clone)]
pub struct ArithmeticFunctionTable {
    max_n: u64,
    big_omega: Vec<u8>,
    small_omega: Vec<u8>,
    mobius: Vec<i8>,
    squarefree: BitVec<u8, Lsb0>,
}

impl ArithmeticFunctionTable {
    pub fn max_n(&self) -> u64 {
        self.max_n
    }

    /// Ω(n), prime factors with multiplicity. Ω(1) = 0.
    #[inline]
    pub fn big_omega(&self, n: u64) -> u8 {
        self.big_omega[(n - 1) as usize]
    }

    /// ω(n), distinct prime factors. ω(1) = 0.
    #[inline]
    pub fn small_omega(&self, n: u64) -> u8 {
        self.small_omega[(n - 1) as usize]
    }

    /// μ(n) ∈ {−1, 0, 1}. μ(1) = 1.
    #[inline]
    pub fn mobius(&self, n: u64) -> i8 {
        self.mobius[(n - 1) as usize]
    }

    /// μ²(n): 1 iff n is square-free.
    #[inline]
    pub fn is_squarefree(&self, n: u64) -> bool {
        self.squarefree[(n - 1) as usize]
    }

    /// λ(n) = (−1)^{Ω(n)}.
    #[inline]
    pub fn liouville(&self, n: u64) -> i8 {
        if self.big_omega(n) & 1 == 0 {
            1
        } else {
            -1
        }
    }

    /// n is prime iff it has exactly one prime factor, once.
    #[inline]
    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && self.big_omega(n) == 1
    }

    pub fn big_omega_slice(&self) -> &[u8] {
        &self.big_omega
    }

    pub fn small_omega_slice(&self) -> &[u8] {
        &self.small_omega
    }

    pub fn mobius_slice(&self) -> &[i8] {
        &self.mobius
    }

    pub fn squarefree_bits(&self) -> &BitSlice<u8, Lsb0> {
        &self.squarefree
    }

    /// Rebuilds a table from raw component arrays (used by the cache layer).
    ///
    /// The caller is responsible for the arrays being mutually consistent;
    /// lengths and value ranges are still validated.
    pub fn from_parts(
        max_n: u64,
        big_omega: Vec<u8>,
        small_omega: Vec<u8>,
        mobius: Vec<i8>,
        squarefree: BitVec<u8, Lsb0>,
    ) -> Result<Self, SequenceError> {
        if !(2..=(1 << 32)).contains(&max_n) {
            return Err(SequenceError::BadRange(max_n));
        }
        let n = max_n as usize;
        if big_omega.len() != n
            || small_omega.len() != n
            || mobius.len() != n
            || squarefree.len() < n
        {
            return Err(SequenceError::BadFile {
                path: String::new(),
                reason: "component lengths do not match max_n".into(),
            });
        }
        let mut squarefree = squarefree;
        squarefree.truncate(n);
        Ok(Self {
            max_n,
            big_omega,
            small_omega,
            mobius,
            squarefree,
        })
    }

    /// A copy truncated to `new_max ≤ max_n`.
    pub fn truncated(&self, new_max: u64) -> Result<Self, SequenceError> {
        if new_max < 2 || new_max > self.max_n {
            return Err(SequenceError::BadRange(new_max));
        }
        let n = new_max as usize;
        let mut squarefree = self.squarefree.clone();
        squarefree.truncate(n);
        Ok(Self {
            max_n: new_max,
            big_omega: self.big_omega[..n].to_vec(),
            small_omega: self.small_omega[..n].to_vec(),
            mobius: self.mobius[..n].to_vec(),
            squarefree,
        })
    }
}

/// Builds the factor-count tables with the default memory budget.
pub fn build_sieve_tables(max_n: u64) -> Result<ArithmeticFunctionTable, SequenceError> {
    build_sieve_tables_with_budget(max_n, DEFAULT_BUDGET_BYTES)
}

/// Builds the factor-count tables, failing if the working set would exceed
/// `budget_bytes`.
///
/// The linear sieve visits every composite exactly once through its
/// smallest prime factor, so each of Ω, ω, μ extends multiplicatively in
/// O(1) per entry. Construction is single-threaded by nature of the
/// recurrence; readers may share the result freely.
pub fn build_sieve_tables_with_budget(
    max_n: u64,
    budget_bytes: u64,
) -> Result<ArithmeticFunctionTable, SequenceError> {
    if !(2..=(1 << 32)).contains(&max_n) {
        return Err(SequenceError::BadRange(max_n));
    }
    // big_omega + small_omega + mobius + composite flag + bitset + primes
    let estimated = max_n * 4 + max_n / 8 + max_n / 10;
    if estimated > budget_bytes {
        return Err(SequenceError::Capacity {
            requested: estimated,
            budget: budget_bytes,
        });
    }

    let n = max_n as usize;
    let mut big_omega = vec![0u8; n];
    let mut small_omega = vec![0u8; n];
    let mut mobius = vec![0i8; n];
    let mut composite = bitvec![u8, Lsb0; 0; n + 1];
    let mut primes: Vec<u32> = Vec::new();

    mobius[0] = 1; // n = 1: empty product

    for i in 2..=max_n {
        let iu = i as usize;
        if !composite[iu] {
            primes.push(i as u32);
            big_omega[iu - 1] = 1;
            small_omega[iu - 1] = 1;
            mobius[iu - 1] = -1;
        }
        for &p in &primes {
            let p = p as u64;
            let Some(ip) = i.checked_mul(p).filter(|&ip| ip <= max_n) else {
                break;
            };
            let ipu = ip as usize;
            composite.set(ipu, true);
            if i % p == 0 {
                // p is repeated: ip is not square-free
                big_omega[ipu - 1] = big_omega[iu - 1] + 1;
                small_omega[ipu - 1] = small_omega[iu - 1];
                mobius[ipu - 1] = 0;
                break;
            }
            // p < every prime factor of i
            big_omega[ipu - 1] = big_omega[iu - 1] + 1;
            small_omega[ipu - 1] = small_omega[iu - 1] + 1;
            mobius[ipu - 1] = -mobius[iu - 1];
        }
    }

    let mut squarefree = bitvec![u8, Lsb0; 0; n];
    for i in 1..=n {
        squarefree.set(i - 1, mobius[i - 1] != 0);
    }

    Ok(ArithmeticFunctionTable {
        max_n,
        big_omega,
        small_omega,
        mobius,
        squarefree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Trial-division oracle, independent of the sieve path.
    pub(crate) fn factor_counts(mut n: u64) -> (u8, u8, i8) {
        let mut big = 0u8;
        let mut small = 0u8;
        let mut squarefree = true;
        let mut p = 2u64;
        while p * p <= n {
            if n.is_multiple_of(p) {
                small += 1;
                let mut e = 0u8;
                while n.is_multiple_of(p) {
                    n /= p;
                    e += 1;
                }
                big += e;
                if e > 1 {
                    squarefree = false;
                }
            }
            p += 1;
        }
        if n > 1 {
            big += 1;
            small += 1;
        }
        let mu = if !squarefree {
            0
        } else if big.is_multiple_of(2) {
            1
        } else {
            -1
        };
        (big, small, mu)
    }

    #[test]
    fn known_small_values() {
        let t = build_sieve_tables(64).unwrap();
        // 12 = 2²·3
        assert_eq!(t.big_omega(12), 3);
        assert_eq!(t.small_omega(12), 2);
        assert_eq!(t.mobius(12), 0);
        assert!(!t.is_squarefree(12));
        // 1: empty product
        assert_eq!(t.big_omega(1), 0);
        assert_eq!(t.small_omega(1), 0);
        assert_eq!(t.mobius(1), 1);
        assert!(t.is_squarefree(1));
        // 30 = 2·3·5
        assert_eq!(t.big_omega(30), 3);
        assert_eq!(t.small_omega(30), 3);
        assert_eq!(t.mobius(30), -1);
        assert!(t.is_squarefree(30));
    }

    #[test]
    fn matches_trial_division_on_samples() {
        let max = 1_000_000;
        let t = build_sieve_tables(max).unwrap();
        let mut rng = crate::rng::SplitMix64::new(0x5eed);
        for _ in 0..10_000 {
            let n = rng.below_inclusive(max);
            let (big, small, mu) = factor_counts(n);
            assert_eq!(t.big_omega(n), big, "Ω({n})");
            assert_eq!(t.small_omega(n), small, "ω({n})");
            assert_eq!(t.mobius(n), mu, "μ({n})");
            assert_eq!(t.is_squarefree(n), mu != 0, "μ²({n})");
        }
    }

    #[test]
    fn table_invariants_hold_everywhere() {
        let max = 100_000;
        let t = build_sieve_tables(max).unwrap();
        for n in 1..=max {
            let big = t.big_omega(n);
            let small = t.small_omega(n);
            assert!(small <= big);
            assert_eq!(small == big, t.is_squarefree(n) || n == 1, "n={n}");
            assert_eq!(t.mobius(n) != 0, t.is_squarefree(n));
            if t.is_squarefree(n) {
                let sign = if big.is_multiple_of(2) { 1 } else { -1 };
                assert_eq!(t.mobius(n), sign);
            }
            assert_eq!(t.liouville(n), if big.is_multiple_of(2) { 1 } else { -1 });
        }
    }

    #[test]
    fn mobius_squared_convolution_identity() {
        // μ²(n) = Σ_{m² | n} μ(m), exactly, for all n ≤ 10^5
        let max = 100_000u64;
        let t = build_sieve_tables(max).unwrap();
        let mut conv = vec![0i32; max as usize + 1];
        let mut m = 1u64;
        while m * m <= max {
            let mu = t.mobius(m) as i32;
            if mu != 0 {
                let mut k = m * m;
                while k <= max {
                    conv[k as usize] += mu;
                    k += m * m;
                }
            }
            m += 1;
        }
        for n in 1..=max {
            let expect = if t.is_squarefree(n) { 1 } else { 0 };
            assert_eq!(conv[n as usize], expect, "n={n}");
        }
    }

    #[test]
    fn capacity_budget_is_enforced() {
        match build_sieve_tables_with_budget(1 << 30, 1 << 20) {
            Err(SequenceError::Capacity { .. }) => {}
            other => panic!("expected capacity error, got {other:?}"),
        }
        assert!(matches!(
            build_sieve_tables(1),
            Err(SequenceError::BadRange(1))
        ));
    }

    #[test]
    fn prime_detection_and_truncation() {
        let t = build_sieve_tables(1000).unwrap();
        let primes: Vec<u64> = (1..=30).filter(|&n| t.is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        let small = t.truncated(100).unwrap();
        assert_eq!(small.max_n(), 100);
        for n in 1..=100 {
            assert_eq!(small.big_omega(n), t.big_omega(n));
            assert_eq!(small.is_squarefree(n), t.is_squarefree(n));
        }
    }
}
