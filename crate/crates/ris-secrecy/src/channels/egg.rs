use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};

use super::RisUowcLink;

/// Mixture Exponential-Generalized-Gamma irradiance parameters of one
/// underwater optical hop, plus the pointing-error pair (ξ, A).
///
/// With probability `omega` the turbulence draw is Exponential with mean
/// `lambda`; otherwise Generalized Gamma with shape `a`, scale `b`, power
/// `c`. The pointing-error factor is `A·U^{1/ξ²}` with U uniform on (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EggHop {
    pub omega: f64,
    pub lambda: f64,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    /// Pointing-error severity ξ (larger = milder error).
    pub xi: f64,
    /// Pointing-error gathered-fraction cap A.
    pub a0: f64,
}

impl EggHop {
    #[allow(clippy::too_many_arguments)]
    pub fn new(omega: f64, lambda: f64, a: f64, b: f64, c: f64, xi: f64, a0: f64) -> Result<Self> {
        let hop = EggHop {
            omega,
            lambda,
            a,
            b,
            c,
            xi,
            a0,
        };
        hop.validate()?;
        Ok(hop)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0 && self.omega < 1.0) {
            return Err(invalid("omega", "mixture weight must lie in (0, 1)"));
        }
        for (name, v) in [
            ("lambda", self.lambda),
            ("a", self.a),
            ("b", self.b),
            ("c", self.c),
            ("xi", self.xi),
            ("a0", self.a0),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(invalid("egg", format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// k-th moment of one hop's irradiance including the pointing-error factor:
///
/// ```text
/// [ω λ^k Γ(k+1) + (1−ω) b^k Γ(a + k/c)/Γ(a)] · ξ² A^k / (ξ² + k)
/// ```
pub fn egg_hop_moment(hop: &EggHop, k: u32) -> Result<f64> {
    hop.validate()?;
    let k = k as f64;
    let exp_part = hop.omega * (k * hop.lambda.ln() + ln_gamma(k + 1.0)).exp();
    let gg_part = (1.0 - hop.omega)
        * (k * hop.b.ln() + ln_gamma(hop.a + k / hop.c) - ln_gamma(hop.a)).exp();
    let xi2 = hop.xi * hop.xi;
    let pointing = xi2 * hop.a0.powf(k) / (xi2 + k);
    Ok((exp_part + gg_part) * pointing)
}

/// k-th moment of the per-element cascade of the two EGG hops. Expanding
/// the product of the two mixture brackets yields the four-term sum
/// (exp×exp, exp×GG, GG×exp, GG×GG), each carrying both pointing-error
/// gamma ratios.
pub fn cascade_moment_uowc(link: &RisUowcLink, k: u32) -> Result<f64> {
    link.validate()?;
    if k == 0 {
        return Ok(1.0);
    }
    Ok(egg_hop_moment(&link.hop_s, k)? * egg_hop_moment(&link.hop_r, k)?)
}
