//! One-dimensional search helpers shared by the solvers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section search for a minimum of `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `tol` or after `max_iter`
/// reductions. Returns `(x_min, f_min)` and the number of reductions used.
pub fn golden_section_min(
    mut f: impl FnMut(f64) -> f64,
    mut lo: f64,
    mut hi: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64, usize) {
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    let mut iter = 0;
    while iter < max_iter && (hi - lo) > tol {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
        iter += 1;
    }
    if f1 <= f2 {
        (x1, f1, iter)
    } else {
        (x2, f2, iter)
    }
}

/// Golden-section search for a maximum of `f` on `[lo, hi]`.
pub fn golden_section_max(
    mut f: impl FnMut(f64) -> f64,
    lo: f64,
    hi: f64,
    tol: f64,
    max_iter: usize,
) -> (f64, f64, usize) {
    let (x, fx, it) = golden_section_min(|x| -f(x), lo, hi, tol, max_iter);
    (x, -fx, it)
}

/// Indices of discrete local maxima of `values` (plateaus report their last index).
pub fn local_maxima(values: &[f64]) -> Vec<usize> {
    let n = values.len();
    (0..n)
        .filter(|&i| {
            let left = i == 0 || values[i] >= values[i - 1];
            let right = i + 1 == n || values[i] > values[i + 1];
            left && right && values[i].is_finite()
        })
        .collect()
}

/// `n` points from `lo` to `hi` inclusive, uniformly spaced in `log r`.
pub fn log_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    assert!(n >= 2);
    let (a, b) = (lo.ln(), hi.ln());
    let mut grid: Vec<f64> = (0..n)
        .map(|i| (a + (b - a) * i as f64 / (n - 1) as f64).exp())
        .collect();
    grid[0] = lo;
    grid[n - 1] = hi;
    grid
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, fx, _) = golden_section_min(|x| (x - 0.3).powi(2) + 1.0, -1.0, 2.0, 1e-10, 200);
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 1.0).abs() < 1e-15);
    }

    #[test]
    fn golden_converges_to_boundary_minimum() {
        let (x, _, _) = golden_section_min(|x| x, 0.0, 1.0, 1e-12, 200);
        assert!(x < 1e-11);
        let (x, fx, _) = golden_section_max(|x| -(x - 2.0).abs(), 0.0, 1.0, 1e-12, 200);
        assert!((x - 1.0).abs() < 1e-11 && (fx + 1.0).abs() < 1e-11);
    }

    #[test]
    fn local_maxima_on_plateaus_and_edges() {
        assert_eq!(local_maxima(&[3.0, 1.0, 2.0, 2.0, 0.0, 5.0]), vec![0, 3, 5]);
        assert_eq!(local_maxima(&[f64::NEG_INFINITY, 1.0, 0.5]), vec![1]);
    }

    #[test]
    fn log_grid_hits_endpoints() {
        let g = log_grid(1.0, 3.0, 17);
        assert_eq!(g[0], 1.0);
        assert_eq!(g[16], 3.0);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
