use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};

use crate::channels::{AlphaMuHop, EggHop, RisRfLink, RisUowcLink};
use crate::error::{invalid, Result};

/// One α-µ envelope draw: `φ (G/µ)^{1/α}` with `G ~ Gamma(µ, 1)`, so that
/// `r^α/φ^α ~ Gamma(µ, 1/µ)`. The convention is validated against the
/// analytic cascade moments by `moment_check`, not assumed.
pub fn sample_alpha_mu(hop: &AlphaMuHop, rng: &mut ChaCha8Rng) -> f64 {
    let g: f64 = Gamma::new(hop.mu, 1.0).expect("validated hop").sample(rng);
    hop.phi * (g / hop.mu).powf(1.0 / hop.alpha)
}

/// One EGG irradiance draw with pointing error: with probability ω an
/// Exponential(mean λ) draw, otherwise Generalized Gamma `b·G^{1/c}` with
/// `G ~ Gamma(a, 1)`; multiplied by the pointing factor `A·U^{1/ξ²}`.
pub fn sample_egg(hop: &EggHop, rng: &mut ChaCha8Rng) -> f64 {
    let turbulence = if rng.random::<f64>() < hop.omega {
        -hop.lambda * (1.0 - rng.random::<f64>()).ln()
    } else {
        let g: f64 = Gamma::new(hop.a, 1.0).expect("validated hop").sample(rng);
        hop.b * g.powf(1.0 / hop.c)
    };
    let pointing = hop.a0 * rng.random::<f64>().powf(1.0 / (hop.xi * hop.xi));
    turbulence * pointing
}

/// Precomputed sampler of one RF link SNR.
///
/// Fitted mode draws the moment-matched element-sum `M ~ Gamma(u, v)` and
/// returns `(Ω/l)·M²`; physical mode draws every per-element hop envelope
/// and squares the co-phased sum.
pub struct RfSnrSampler {
    scale: f64,
    n: u32,
    kind: RfKind,
}

enum RfKind {
    Fitted(Gamma<f64>),
    Physical { hop_s: AlphaMuHop, hop_r: AlphaMuHop },
}

impl RfSnrSampler {
    pub fn new(link: &RisRfLink, fitted: bool) -> Result<Self> {
        link.validate()?;
        let scale = link.omega_linear() / link.path_loss;
        let kind = if fitted {
            let fit = link.fit()?;
            let dist = Gamma::new(fit.u as f64, fit.v)
                .map_err(|e| invalid("fit", format!("gamma sampler: {e}")))?;
            RfKind::Fitted(dist)
        } else {
            RfKind::Physical {
                hop_s: link.hop_s,
                hop_r: link.hop_r,
            }
        };
        Ok(RfSnrSampler {
            scale,
            n: link.n_elements,
            kind,
        })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let m = match &self.kind {
            RfKind::Fitted(dist) => dist.sample(rng),
            RfKind::Physical { hop_s, hop_r } => {
                let mut sum = 0.0;
                for _ in 0..self.n {
                    sum += sample_alpha_mu(hop_s, rng) * sample_alpha_mu(hop_r, rng);
                }
                sum
            }
        };
        self.scale * m * m
    }
}

/// Precomputed sampler of one UOWC link SNR: `Ω·(S/E[M])^r` where `S` is
/// the element sum (gamma-fitted or physically sampled) and `E[M]` the
/// analytic single-element cascade mean.
pub struct UowcSnrSampler {
    omega: f64,
    inv_e1: f64,
    r: u32,
    n: u32,
    kind: UowcKind,
}

enum UowcKind {
    Fitted(Gamma<f64>),
    Physical { hop_s: EggHop, hop_r: EggHop },
}

impl UowcSnrSampler {
    pub fn new(link: &RisUowcLink, fitted: bool) -> Result<Self> {
        link.validate()?;
        let fit = link.fit()?;
        let kind = if fitted {
            let dist = Gamma::new(fit.u as f64, fit.v)
                .map_err(|e| invalid("fit", format!("gamma sampler: {e}")))?;
            UowcKind::Fitted(dist)
        } else {
            UowcKind::Physical {
                hop_s: link.hop_s,
                hop_r: link.hop_r,
            }
        };
        Ok(UowcSnrSampler {
            omega: link.omega_linear(),
            inv_e1: 1.0 / fit.mean,
            r: link.detection.r(),
            n: link.n_elements,
            kind,
        })
    }

    pub fn sample(&self, rng: &mut ChaCha8Rng) -> f64 {
        let s = match &self.kind {
            UowcKind::Fitted(dist) => dist.sample(rng),
            UowcKind::Physical { hop_s, hop_r } => {
                let mut sum = 0.0;
                for _ in 0..self.n {
                    sum += sample_egg(hop_s, rng) * sample_egg(hop_r, rng);
                }
                sum
            }
        };
        let ratio = s * self.inv_e1;
        match self.r {
            1 => self.omega * ratio,
            _ => self.omega * ratio * ratio,
        }
    }
}
