use serde::{Deserialize, Serialize};
use statrs::function::gamma::ln_gamma;

use crate::error::{invalid, Result};

use super::RisRfLink;

/// α-µ fading parameters of one hop: nonlinearity `alpha`, cluster count
/// `mu`, envelope scale `phi` (the α-root mean value, so that
/// `r^α / φ^α ~ Gamma(µ, 1/µ)`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaMuHop {
    pub alpha: f64,
    pub mu: f64,
    pub phi: f64,
}

impl AlphaMuHop {
    pub fn new(alpha: f64, mu: f64, phi: f64) -> Result<Self> {
        let hop = AlphaMuHop { alpha, mu, phi };
        hop.validate()?;
        Ok(hop)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.alpha > 0.0 && self.mu > 0.0 && self.phi > 0.0) {
            return Err(invalid(
                "alpha_mu",
                format!("all parameters must be positive: {self:?}"),
            ));
        }
        Ok(())
    }
}

/// k-th moment of a single α-µ envelope: `φ^k Γ(µ + k/α) / (µ^{k/α} Γ(µ))`.
pub fn alpha_mu_hop_moment(hop: &AlphaMuHop, k: u32) -> Result<f64> {
    hop.validate()?;
    let k = k as f64;
    let ln = k * hop.phi.ln() + ln_gamma(hop.mu + k / hop.alpha)
        - (k / hop.alpha) * hop.mu.ln()
        - ln_gamma(hop.mu);
    Ok(ln.exp())
}

/// k-th moment of the per-element cascade `M = ν·η` of the two hop
/// envelopes. Independence factorizes the moment into the two single-hop
/// gamma-ratio factors; at α = 2 this coincides with the four-constant
/// (λ1..λ4) closed form the CDF machinery is matched against.
pub fn cascade_moment_rf(link: &RisRfLink, k: u32) -> Result<f64> {
    link.validate()?;
    if k == 0 {
        return Ok(1.0);
    }
    Ok(alpha_mu_hop_moment(&link.hop_s, k)? * alpha_mu_hop_moment(&link.hop_r, k)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn default_link() -> RisRfLink {
        RisRfLink {
            hop_s: AlphaMuHop::new(2.0, 4.0, 1.0).unwrap(),
            hop_r: AlphaMuHop::new(2.0, 4.0, 1.0).unwrap(),
            n_elements: 1,
            path_loss: 1.0,
            omega_db: 20.0,
        }
    }

    #[test]
    fn zeroth_moment_is_one() {
        assert_eq!(cascade_moment_rf(&default_link(), 0).unwrap(), 1.0);
    }

    #[test]
    fn second_moment_defaults() {
        // α = 2, µ = 4, φ = 1 per hop: E[ν²] = Γ(5)/(4Γ(4)) = 1, so E[M²] = 1.
        let m2 = cascade_moment_rf(&default_link(), 2).unwrap();
        assert!((m2 - 1.0).abs() < 1e-13);
    }

    #[test]
    fn first_moment_defaults() {
        // E[ν] = Γ(4.5)/(2 Γ(4)); squared for the two identical hops.
        let g45 = statrs::function::gamma::gamma(4.5);
        let want = (g45 / 12.0).powi(2);
        let m1 = cascade_moment_rf(&default_link(), 1).unwrap();
        assert!((m1 - want).abs() < 1e-13);
    }

    #[test]
    fn scale_only_enters_as_power() {
        let mut link = default_link();
        link.hop_s.phi = 3.0;
        link.hop_r.phi = 2.0;
        let m1 = cascade_moment_rf(&link, 1).unwrap();
        let base = cascade_moment_rf(&default_link(), 1).unwrap();
        assert!((m1 - 6.0 * base).abs() < 1e-12);
    }

    #[test]
    fn rejects_nonpositive_parameters() {
        assert!(AlphaMuHop::new(0.0, 4.0, 1.0).is_err());
        assert!(AlphaMuHop::new(2.0, -1.0, 1.0).is_err());
    }
}
