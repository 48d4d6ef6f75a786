use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Moment-matched gamma fit of an RIS element-sum amplitude.
///
/// The sum of `n` i.i.d. per-element products with mean `m` and variance
/// `s²` is approximated by Gamma(shape `u`, scale `v`) with
/// `u_raw = n·m²/s²` and `v = s²/m`. The finite CDF sums of the SNR laws
/// need an integer shape, so `u` is `u_raw` rounded (never below 1); both
/// values are kept so the rounding error stays visible.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FittedGamma {
    pub u_raw: f64,
    pub u: u32,
    pub v: f64,
    pub mean: f64,
    pub var: f64,
}

pub fn fit_gamma(mean: f64, var: f64, n_elements: u32) -> Result<FittedGamma> {
    if !(mean > 0.0) || !mean.is_finite() {
        return Err(invalid("mean", format!("must be positive, got {mean}")));
    }
    if n_elements < 1 {
        return Err(invalid("n_elements", "must be at least 1"));
    }
    if !(var > 0.0) || !var.is_finite() {
        return Err(Error::DegenerateFit(format!(
            "variance must be positive, got {var}"
        )));
    }
    let u_raw = n_elements as f64 * mean * mean / var;
    let u = (u_raw.round() as u32).max(1);
    Ok(FittedGamma {
        u_raw,
        u,
        v: var / mean,
        mean,
        var,
    })
}
