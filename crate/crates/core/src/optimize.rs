//! One-dimensional minimization helpers.

/// Index of the smallest value; ties resolve to the first.
pub fn argmin(values: &[f64]) -> Option<usize> {
    values
        .iter()
        .enumerate()
        .filter(|(_, v)| !v.is_nan())
        .min_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i)
}

/// Golden-section search for a minimum of a unimodal `f` on `[lo, hi]`.
///
/// Stops when the bracket is narrower than `rel_tol · max(|x|, abs_floor)`.
/// Returns `(x_min, f(x_min))`.
pub fn golden_section<F: FnMut(f64) -> f64>(
    mut f: F,
    mut lo: f64,
    mut hi: f64,
    rel_tol: f64,
    abs_floor: f64,
) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if hi - lo <= rel_tol * mid.abs().max(abs_floor) {
            break;
        }
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
    }
    if f1 <= f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parabola() {
        let (x, fx) = golden_section(|x| (x - 0.3) * (x - 0.3) + 2.0, 0.0, 1.0, 1e-10, 1.0);
        // a flat minimum is only resolvable to about sqrt(eps)
        assert!((x - 0.3).abs() < 1e-7);
        assert!((fx - 2.0).abs() < 1e-15);
    }

    #[test]
    fn argmin_skips_nan() {
        assert_eq!(argmin(&[3.0, f64::NAN, 1.0, 1.0]), Some(2));
        assert_eq!(argmin(&[]), None);
    }
}
