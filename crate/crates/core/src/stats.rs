//! Small statistical helpers for cross-run aggregation.

use crate::scalar::Real;

/// Arithmetic mean, summed in slice order.
pub fn mean<R: Real>(values: &[R]) -> R {
    let total: R = values.iter().copied().sum();
    total / R::from_count(values.len())
}

/// Standard error of the mean (sample standard deviation over sqrt n).
/// Zero for a single observation.
pub fn std_error<R: Real>(values: &[R]) -> R {
    let n = values.len();
    if n < 2 {
        return R::zero();
    }
    let m = mean(values);
    let sum_sq: R = values.iter().map(|&v| (v - m) * (v - m)).sum();
    let variance = sum_sq / R::from_count(n - 1);
    (variance / R::from_count(n)).sqrt()
}

/// Spearman rank correlation with average ranks for ties.
///
/// Returns `None` when either series is degenerate (constant), where the
/// correlation is undefined.
pub fn spearman(xs: &[f64], ys: &[f64]) -> Option<f64> {
    assert_eq!(xs.len(), ys.len(), "series must have equal length");
    if xs.len() < 2 {
        return None;
    }
    let rx = ranks(xs);
    let ry = ranks(ys);
    pearson(&rx, &ry)
}

fn pearson(xs: &[f64], ys: &[f64]) -> Option<f64> {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var_x = 0.0;
    let mut var_y = 0.0;
    for (&x, &y) in xs.iter().zip(ys) {
        cov += (x - mx) * (y - my);
        var_x += (x - mx) * (x - mx);
        var_y += (y - my) * (y - my);
    }
    if var_x == 0.0 || var_y == 0.0 {
        return None;
    }
    Some(cov / (var_x * var_y).sqrt())
}

/// Average ranks, 1-based; tied values share the mean of their positions.
fn ranks(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite values"));
    let mut result = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j (0-based) share the average 1-based rank
        let rank = (i + j) as f64 / 2.0 + 1.0;
        for &index in &order[i..=j] {
            result[index] = rank;
        }
        i = j + 1;
    }
    result
}
