//! Classical number-theory means from the sieve: Liouville, Mertens, PNT.

use crate::arithseq::ArithmeticFunctionTable;
use crate::checkpoints;
use crate::expsum::ExpsumError;

/// One checkpoint row of the panel.
#[derive(Debug, Clone, Copy)]
pub struct PanelRow {
    pub n: u64,
    /// (1/N) Σ λ(n).
    pub liouville_mean: f64,
    /// (1/N) Σ μ(n).
    pub mertens_mean: f64,
    /// π(N)·ln N / N.
    pub pnt_ratio: f64,
}

/// Exact integer accumulation of Σλ, Σμ and π(N), emitted at checkpoints.
pub fn number_theory_panel(
    table: &ArithmeticFunctionTable,
    cps: &[u64],
) -> Result<Vec<PanelRow>, ExpsumError> {
    checkpoints::validate(cps, table.max_n())?;
    let mut lambda_sum = 0i64;
    let mut mertens = 0i64;
    let mut primes = 0u64;
    let mut out = Vec::with_capacity(cps.len());
    let mut prev = 0u64;
    for &n in cps {
        for k in prev + 1..=n {
            lambda_sum += table.liouville(k) as i64;
            mertens += table.mobius(k) as i64;
            if table.is_prime(k) {
                primes += 1;
            }
        }
        out.push(PanelRow {
            n,
            liouville_mean: lambda_sum as f64 / n as f64,
            mertens_mean: mertens as f64 / n as f64,
            pnt_ratio: primes as f64 * (n as f64).ln() / n as f64,
        });
        prev = n;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arithseq::build_sieve_tables;

    #[test]
    fn first_ten_by_hand() {
        // λ: 1,−1,−1,1,−1,1,−1,−1,1,1 → Σ = 0; μ: 1,−1,−1,0,−1,1,−1,0,0,1 → Σ = −1
        let t = build_sieve_tables(10).unwrap();
        let rows = number_theory_panel(&t, &[10]).unwrap();
        assert_eq!(rows[0].liouville_mean, 0.0);
        assert!((rows[0].mertens_mean - (-0.1)).abs() < 1e-15);
        // π(10) = 4
        assert!((rows[0].pnt_ratio - 4.0 * 10f64.ln() / 10.0).abs() < 1e-15);
    }

    #[test]
    fn means_vanish_at_a_million() {
        let t = build_sieve_tables(1_000_000).unwrap();
        let rows = number_theory_panel(&t, &[10_000, 1_000_000]).unwrap();
        let last = rows.last().unwrap();
        assert!(last.liouville_mean.abs() < 0.002);
        assert!(last.mertens_mean.abs() < 0.002);
        assert!(last.pnt_ratio >= 1.0 && last.pnt_ratio <= 1.12);
        // closer to 1 than at 10^4
        assert!((last.pnt_ratio - 1.0).abs() < (rows[0].pnt_ratio - 1.0).abs());
    }
}
