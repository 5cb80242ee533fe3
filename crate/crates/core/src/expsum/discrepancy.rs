//! Star discrepancy of a finite point set in [0, 1).

/// D*_N of the points: the worst deviation of the empirical measure from
/// Lebesgue over anchored intervals [0, t).
///
/// For sorted points x_(1) ≤ … ≤ x_(N) this is
/// `max_i max(i/N − x_(i), x_(i) − (i−1)/N)`, always in (0, 1].
pub fn discrepancy_star(points: &[f64]) -> f64 {
    assert!(!points.is_empty(), "discrepancy of an empty set");
    let n = points.len() as f64;
    let mut sorted = points.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    let mut worst = 0.0f64;
    for (i, &x) in sorted.iter().enumerate() {
        debug_assert!((0.0..1.0).contains(&x), "point out of [0,1): {x}");
        let up = (i + 1) as f64 / n - x;
        let down = x - i as f64 / n;
        worst = worst.max(up).max(down);
    }
    worst
}
