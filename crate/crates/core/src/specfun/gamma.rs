use std::f64::consts::PI;

use crate::error::{Error, Result};

// Stirling series coefficients B_2k / (2k (2k - 1)), k = 1..7.
const STIRLING: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
];

// Below this the argument is shifted upward by recurrence first.
const STIRLING_MIN: f64 = 20.0;

/// Largest argument for which Γ(x) is representable as an `f64`.
const MAX_ARG: f64 = 171.624_376_956_302_7;

/// Γ(x) for real `x`.
///
/// Uses the Stirling series (after upward recurrence to x ≥ 20) for x ≥ 1/2 and the reflection formula
/// below that. Poles at the non-positive integers are reported as errors.
pub fn gamma_fn(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::InvalidArgument(format!("gamma of non-finite {x}")));
    }
    if x <= 0.0 && x == x.floor() {
        return Err(Error::PoleArgument(x));
    }
    if x > MAX_ARG {
        return Err(Error::Overflow(x));
    }
    if x == x.floor() && x <= 30.0 {
        // exact factorials
        let mut f = 1.0;
        let mut k = 2.0;
        while k < x {
            f *= k;
            k += 1.0;
        }
        return Ok(f);
    }
    if x < 0.5 {
        let reflected = 1.0 - x;
        if reflected > MAX_ARG {
            // |Γ(x)| < 1e-308: underflows.
            return Ok(0.0_f64.copysign(sin_pi(x)));
        }
        let denom = sin_pi(x) * positive(reflected);
        return Ok(PI / denom);
    }
    Ok(positive(x))
}

/// Γ(x) for x ≥ 1/2.
fn positive(x: f64) -> f64 {
    let mut shifted = x;
    let mut divisor = 1.0;
    while shifted < STIRLING_MIN {
        divisor *= shifted;
        shifted += 1.0;
    }
    stirling(shifted) / divisor
}

fn stirling(x: f64) -> f64 {
    let inv = 1.0 / x;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in STIRLING.iter().rev() {
        series = series * inv2 + c;
    }
    series *= inv;
    // x^(x - 1/2) e^-x as a square keeps the intermediate in range
    let half = x.powf(0.5 * (x - 0.5)) * (-0.5 * x).exp();
    (2.0 * PI).sqrt() * half * half * series.exp()
}

/// sin(πx) with exact argument reduction.
fn sin_pi(x: f64) -> f64 {
    let r = x - 2.0 * (0.5 * x).round();
    let sign = r.signum();
    let mut a = r.abs();
    if a > 0.5 {
        a = 1.0 - a;
    }
    sign * (PI * a).sin()
}
