use statrs::function::gamma::ln_gamma;

use crate::error::{Error, Result};

const TOLERANCE: f64 = 1e-12;

/// The `y ≥ 2` with `Γ(y) = x`, found by bisection on `ln Γ`, which is
/// increasing on `[2, ∞)`.
pub fn inverse_gamma(x: f64) -> Result<f64> {
    if x.is_nan() || x < 2.0 || x.is_infinite() {
        return Err(Error::Domain(format!(
            "inverse gamma is evaluated on [2, ∞), got {x}"
        )));
    }
    let target = x.ln();
    let mut lo = 2.0_f64;
    let mut hi = 4.0_f64;
    while ln_gamma(hi) < target {
        lo = hi;
        hi *= 2.0;
    }
    while hi - lo > TOLERANCE * hi.max(1.0) {
        let mid = 0.5 * (lo + hi);
        if ln_gamma(mid) < target {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
