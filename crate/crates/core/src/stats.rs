//! Rank statistics used by the ranking comparison.

/// Average (fractional) ranks in descending order: the largest value gets
/// rank 1; tied values share the mean of the ranks they span.
pub fn average_ranks_desc(values: &[f64]) -> Vec<f64> {
    let n = values.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| values[b].partial_cmp(&values[a]).unwrap_or(std::cmp::Ordering::Equal));
    let mut ranks = vec![0.0; n];
    let mut i = 0;
    while i < n {
        let mut j = i;
        while j + 1 < n && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // Positions i..=j (0-based) share the average of ranks i+1..=j+1.
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            ranks[idx] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Tie-adjusted Spearman rank correlation.
///
/// Computed with the classical tie-corrected sum-of-squared-differences
/// formula, which is algebraically the Pearson correlation of the average
/// ranks. Returns 0 when either input is entirely tied (no monotone
/// association is measurable).
pub fn spearman(x: &[f64], y: &[f64]) -> f64 {
    assert_eq!(x.len(), y.len(), "spearman needs paired samples");
    let n = x.len();
    if n < 2 {
        return 0.0;
    }
    let rx = average_ranks_desc(x);
    let ry = average_ranks_desc(y);

    let nf = n as f64;
    let base = (nf * nf * nf - nf) / 6.0;
    let tie_term = |values: &[f64]| -> f64 {
        let mut sorted: Vec<f64> = values.to_vec();
        sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        let mut total = 0.0;
        let mut i = 0;
        while i < sorted.len() {
            let mut j = i;
            while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
                j += 1;
            }
            let t = (j - i + 1) as f64;
            total += (t * t * t - t) / 12.0;
            i = j + 1;
        }
        total
    };
    let tx = tie_term(x);
    let ty = tie_term(y);

    let d2: f64 = rx.iter().zip(&ry).map(|(a, b)| (a - b) * (a - b)).sum();
    let denom = ((base - 2.0 * tx) * (base - 2.0 * ty)).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    ((base - d2 - tx - ty) / denom).clamp(-1.0, 1.0)
}
