use crate::error::{Error, Result};

/// Bessel function of the first kind, order zero, by its power series.
///
/// Accurate to roughly 1e-15 for |x| ≤ 2; cancellation grows with |x| and
/// the series is not meant for |x| beyond about 8.
pub fn bessel_j0(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("J0 of non-finite {x}")));
    }
    let q = 0.25 * x * x;
    let mut term = 1.0;
    let mut sum = 1.0;
    let mut k = 1.0;
    loop {
        term *= -q / (k * k);
        sum += term;
        if term.abs() <= f64::EPSILON * 1e-2 * sum.abs().max(1e-300) {
            break;
        }
        k += 1.0;
        if k > 500.0 {
            return Err(Error::NonConvergence(format!("J0 series at x = {x}")));
        }
    }
    Ok(sum)
}
