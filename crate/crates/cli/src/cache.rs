//! Binary sieve cache.
//!
//! Layout, all little-endian:
//!
//! ```text
//! magic      8 bytes   "UBSEQ\0v1"
//! max_n      u64
//! big_omega  max_n bytes        (value for n at offset n−1)
//! small_omega max_n bytes
//! mobius     max_n bytes        (i8 as u8)
//! squarefree ceil(max_n/8) bytes (bit for n: byte (n−1)/8, bit (n−1)%8)
//! checksum   u64               FNV-1a 64 of the payload
//! ```
//!
//! The payload is everything between the magic and the checksum. A request
//! for `max_n` smaller than the cached bound is served from the prefix.

use std::fs;
use std::io::Write;
use std::path::Path;

use ubseq_core::arithseq::ArithmeticFunctionTable;
use ubseq_core::bitvec::prelude::*;

pub const MAGIC: &[u8; 8] = b"UBSEQ\0v1";

#[derive(Debug, thiserror::Error)]
pub enum CacheError {
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("not a sieve cache (bad magic)")]
    BadMagic,
    #[error("cache truncated: expected {expected} bytes, found {found}")]
    Truncated { expected: usize, found: usize },
    #[error("cache checksum mismatch: stored {stored:#018x}, computed {computed:#018x}")]
    ChecksumMismatch { stored: u64, computed: u64 },
    #[error("cache covers max_n = {cached}, requested {requested}")]
    TooSmall { cached: u64, requested: u64 },
    #[error("cache contents malformed: {0}")]
    Malformed(String),
}

const FNV_OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
const FNV_PRIME: u64 = 0x0000_0100_0000_01b3;

pub fn fnv1a(bytes: &[u8]) -> u64 {
    let mut hash = FNV_OFFSET;
    for &b in bytes {
        hash ^= b as u64;
        hash = hash.wrapping_mul(FNV_PRIME);
    }
    hash
}

/// Serializes a table to the cache layout.
pub fn write_cache(path: &Path, table: &ArithmeticFunctionTable) -> Result<(), CacheError> {
    let max_n = table.max_n() as usize;
    let bitset_len = max_n.div_ceil(8);
    let mut payload = Vec::with_capacity(8 + 3 * max_n + bitset_len);
    payload.extend_from_slice(&(table.max_n()).to_le_bytes());
    payload.extend_from_slice(table.big_omega_slice());
    payload.extend_from_slice(table.small_omega_slice());
    payload.extend(table.mobius_slice().iter().map(|&v| v as u8));
    let mut bits: BitVec<u8, Lsb0> = table.squarefree_bits().to_bitvec();
    bits.set_uninitialized(false);
    let raw = bits.as_raw_slice();
    debug_assert_eq!(raw.len(), bitset_len);
    payload.extend_from_slice(raw);

    let mut file = fs::File::create(path)?;
    file.write_all(MAGIC)?;
    file.write_all(&payload)?;
    file.write_all(&fnv1a(&payload).to_le_bytes())?;
    Ok(())
}

/// Loads a table, serving `requested_max` from the cached prefix.
pub fn read_cache(path: &Path, requested_max: u64) -> Result<ArithmeticFunctionTable, CacheError> {
    let data = fs::read(path)?;
    if data.len() < 8 || &data[..8] != MAGIC {
        return Err(CacheError::BadMagic);
    }
    let rest = &data[8..];
    if rest.len() < 16 {
        return Err(CacheError::Truncated {
            expected: 16,
            found: rest.len(),
        });
    }
    let (payload, stored) = rest.split_at(rest.len() - 8);
    let stored = u64::from_le_bytes(stored.try_into().unwrap());
    let computed = fnv1a(payload);
    if stored != computed {
        return Err(CacheError::ChecksumMismatch { stored, computed });
    }
    let max_n = u64::from_le_bytes(payload[..8].try_into().unwrap());
    if max_n < requested_max {
        return Err(CacheError::TooSmall {
            cached: max_n,
            requested: requested_max,
        });
    }
    let n = max_n as usize;
    let bitset_len = n.div_ceil(8);
    let expected = 8 + 3 * n + bitset_len;
    if payload.len() != expected {
        return Err(CacheError::Truncated {
            expected,
            found: payload.len(),
        });
    }
    let body = &payload[8..];
    let (big, rest) = body.split_at(n);
    let (small, rest) = rest.split_at(n);
    let (mobius, sf) = rest.split_at(n);
    let mut bits: BitVec<u8, Lsb0> = BitVec::from_slice(sf);
    bits.truncate(n);
    let table = ArithmeticFunctionTable::from_parts(
        max_n,
        big.to_vec(),
        small.to_vec(),
        mobius.iter().map(|&b| b as i8).collect(),
        bits,
    )
    .map_err(|e| CacheError::Malformed(e.to_string()))?;
    if requested_max == max_n {
        Ok(table)
    } else {
        table
            .truncated(requested_max)
            .map_err(|e| CacheError::Malformed(e.to_string()))
    }
}

/// Loads from the cache when possible, otherwise builds and (if a path is
/// given) writes back. A corrupt cache is rebuilt with a warning.
pub fn load_or_build(
    max_n: u64,
    cache_path: Option<&Path>,
) -> anyhow::Result<ArithmeticFunctionTable> {
    if let Some(path) = cache_path {
        if path.exists() {
            match read_cache(path, max_n) {
                Ok(table) => return Ok(table),
                Err(CacheError::TooSmall { .. }) => {}
                Err(e) => eprintln!("warning: rebuilding sieve cache {}: {e}", path.display()),
            }
        }
    }
    let table = ubseq_core::arithseq::build_sieve_tables(max_n)?;
    if let Some(path) = cache_path {
        write_cache(path, &table)?;
    }
    Ok(table)
}
