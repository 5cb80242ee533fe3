//! Automatic sequences on binary digits.

/// Which automatic sequence a bit is drawn from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AutomaticKind {
    /// Thue–Morse: parity of the number of 1s in binary n.
    ThueMorse,
    /// Rudin–Shapiro: 1 iff the count of overlapping "11" blocks in binary n
    /// is even.
    RudinShapiro,
}

/// t(n) or r(n) for n ≥ 0, as a 0/1 bit.
#[inline]
pub fn automatic_bit(kind: AutomaticKind, n: u64) -> u8 {
    match kind {
        AutomaticKind::ThueMorse => (n.count_ones() & 1) as u8,
        AutomaticKind::RudinShapiro => {
            let adjacent_pairs = (n & (n >> 1)).count_ones();
            (1 ^ (adjacent_pairs & 1)) as u8
        }
    }
}
