//! Channel statistics of the two hops.
//!
//! The RF side is a cascade of two α-µ envelopes reflected by an RIS; the
//! underwater optical side is a cascade of two mixture
//! Exponential-Generalized-Gamma (EGG) irradiances with a pointing-error
//! factor per hop. Each RIS sum of per-element products is moment-matched
//! to a gamma variate (shape `u`, scale `v`), which is what every closed
//! form downstream consumes.
//!
//! All types are immutable after construction and every function is pure.

mod alpha_mu;
mod egg;
mod fit;
mod snr;

pub use alpha_mu::{alpha_mu_hop_moment, cascade_moment_rf, AlphaMuHop};
pub use egg::{cascade_moment_uowc, egg_hop_moment, EggHop};
pub use fit::{fit_gamma, FittedGamma};
pub use snr::{eq_cdf, eq_cdf_asymptotic, RfStats, UowcStats};

use crate::error::{invalid, Result};
use serde::{Deserialize, Serialize};

/// Converts an average/electrical SNR given in dB to linear scale.
pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

/// Optical receiver detection technique.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Detection {
    /// Heterodyne detection (r = 1).
    Heterodyne,
    /// Intensity modulation / direct detection (r = 2).
    ImDd,
}

impl Detection {
    pub fn r(self) -> u32 {
        match self {
            Detection::Heterodyne => 1,
            Detection::ImDd => 2,
        }
    }

    pub fn from_r(r: u32) -> Result<Self> {
        match r {
            1 => Ok(Detection::Heterodyne),
            2 => Ok(Detection::ImDd),
            other => Err(invalid("detection", format!("r must be 1 or 2, got {other}"))),
        }
    }
}

/// Two-hop RIS-reflected RF link: source-side and receiver-side α-µ hops,
/// element count, path loss and average SNR.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RisRfLink {
    pub hop_s: AlphaMuHop,
    pub hop_r: AlphaMuHop,
    pub n_elements: u32,
    pub path_loss: f64,
    pub omega_db: f64,
}

impl RisRfLink {
    pub fn validate(&self) -> Result<()> {
        self.hop_s.validate()?;
        self.hop_r.validate()?;
        if self.n_elements < 1 {
            return Err(invalid("n_elements", "at least one reflecting element"));
        }
        if !(self.path_loss > 0.0) {
            return Err(invalid("path_loss", "must be positive"));
        }
        if !self.omega_db.is_finite() {
            return Err(invalid("omega_db", "must be finite"));
        }
        Ok(())
    }

    pub fn omega_linear(&self) -> f64 {
        db_to_linear(self.omega_db)
    }

    /// Moment-matched gamma fit of the element-sum amplitude.
    pub fn fit(&self) -> Result<FittedGamma> {
        let m1 = cascade_moment_rf(self, 1)?;
        let m2 = cascade_moment_rf(self, 2)?;
        fit_gamma(m1, m2 - m1 * m1, self.n_elements)
    }
}

/// Two-hop RIS-reflected underwater optical link.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RisUowcLink {
    pub hop_s: EggHop,
    pub hop_r: EggHop,
    pub n_elements: u32,
    pub detection: Detection,
    pub omega_db: f64,
}

impl RisUowcLink {
    pub fn validate(&self) -> Result<()> {
        self.hop_s.validate()?;
        self.hop_r.validate()?;
        if self.n_elements < 1 {
            return Err(invalid("n_elements", "at least one reflecting element"));
        }
        if !self.omega_db.is_finite() {
            return Err(invalid("omega_db", "must be finite"));
        }
        Ok(())
    }

    pub fn omega_linear(&self) -> f64 {
        db_to_linear(self.omega_db)
    }

    pub fn fit(&self) -> Result<FittedGamma> {
        let m1 = cascade_moment_uowc(self, 1)?;
        let m2 = cascade_moment_uowc(self, 2)?;
        fit_gamma(m1, m2 - m1 * m1, self.n_elements)
    }
}
