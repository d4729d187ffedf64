//! Composite Simpson quadrature with a deterministic summation order.

use crate::error::{Error, Result};

/// Default panel count; each panel is one parabolic Simpson cell.
pub const DEFAULT_PANELS: usize = 2048;

/// Hard ceiling on panel counts to keep requests bounded.
pub const MAX_PANELS: usize = 1 << 24;

/// Integrates `f` over `[a, b]` with `panels` composite Simpson panels
/// (so `2 * panels` subintervals). Reversing the bounds flips the sign.
///
/// Evaluation points and the pairwise reduction are fixed, so results are
/// bitwise reproducible across runs and platforms with the same libm.
pub fn simpson<F>(f: F, a: f64, b: f64, panels: usize) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    if !a.is_finite() || !b.is_finite() {
        return Err(Error::domain(format!("non-finite bounds ({a}, {b})")));
    }
    if panels == 0 {
        return Err(Error::domain("panel count must be at least 1".to_string()));
    }
    if panels > MAX_PANELS {
        return Err(Error::Resource(format!(
            "panel count {panels} exceeds the maximum {MAX_PANELS}"
        )));
    }
    if a == b {
        return Ok(0.0);
    }
    let n = 2 * panels;
    let h = (b - a) / n as f64;
    let mut terms = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let x = if i == n { b } else { a + i as f64 * h };
        let v = f(x)?;
        if !v.is_finite() {
            return Err(Error::numeric(format!("integrand is not finite at {x}")));
        }
        let weight = if i == 0 || i == n {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        terms.push(weight * v);
    }
    Ok(pairwise_sum(&terms) * h / 3.0)
}

/// Sums a slice by recursive halving; the fixed association order makes the
/// result independent of chunking while keeping rounding error `O(log n)`.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    match values.len() {
        0 => 0.0,
        1 => values[0],
        n => {
            let mid = n / 2;
            pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
        }
    }
}
