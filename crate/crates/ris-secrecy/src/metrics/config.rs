use serde::{Deserialize, Serialize};

use crate::channels::{
    AlphaMuHop, Detection, RfStats, RisRfLink, RisUowcLink, UowcStats,
};
use crate::error::{Error, Result};
use crate::presets;

/// Which link(s) the eavesdroppers tap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Scenario {
    /// Scenario I: eavesdropper on the RF hop.
    RfEavesdrop,
    /// Scenario II: eavesdropper on the underwater optical hop.
    UowcEavesdrop,
    /// Scenario III: both taps at once.
    Simultaneous,
}

/// Full parameterization of one secrecy evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScenarioConfig {
    pub scenario: Scenario,
    /// Target secrecy rate R0 in bits/s/Hz; the outage threshold is 2^R0.
    pub r0: f64,
    pub main_rf: RisRfLink,
    pub main_uowc: RisUowcLink,
    pub eve_rf: Option<RisRfLink>,
    pub eve_uowc: Option<RisUowcLink>,
}

impl ScenarioConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.r0 >= 0.0) || !self.r0.is_finite() {
            return Err(Error::Scenario(format!(
                "target secrecy rate must be >= 0, got {}",
                self.r0
            )));
        }
        self.main_rf.validate()?;
        self.main_uowc.validate()?;
        let needs_rf = matches!(self.scenario, Scenario::RfEavesdrop | Scenario::Simultaneous);
        let needs_uowc = matches!(
            self.scenario,
            Scenario::UowcEavesdrop | Scenario::Simultaneous
        );
        if needs_rf && self.eve_rf.is_none() {
            return Err(Error::Scenario(
                "scenario requires an RF eavesdropper link (eve_rf)".into(),
            ));
        }
        if needs_uowc && self.eve_uowc.is_none() {
            return Err(Error::Scenario(
                "scenario requires a UOWC eavesdropper link (eve_uowc)".into(),
            ));
        }
        if let Some(l) = &self.eve_rf {
            l.validate()?;
        }
        if let Some(l) = &self.eve_uowc {
            l.validate()?;
        }
        Ok(())
    }

    /// Outage threshold 2^R0 (>= 1).
    pub fn phi(&self) -> f64 {
        2f64.powf(self.r0)
    }

    pub fn require_eve_rf(&self) -> Result<&RisRfLink> {
        self.eve_rf
            .as_ref()
            .ok_or_else(|| Error::Scenario("missing eve_rf link".into()))
    }

    pub fn require_eve_uowc(&self) -> Result<&RisUowcLink> {
        self.eve_uowc
            .as_ref()
            .ok_or_else(|| Error::Scenario("missing eve_uowc link".into()))
    }

    pub fn with_r0(&self, r0: f64) -> Self {
        let mut c = self.clone();
        c.r0 = r0;
        c
    }

    /// Default parameter set: single reflecting element on every RIS,
    /// α = 2, µ = 4, φ = 1 on all RF hops, unit path loss, ξ = 1, A = 1 and
    /// the fresh-water low-bubble preset on all optical hops, heterodyne
    /// detection, R0 = 0.01 bits/s/Hz, Ω_t = 20 dB, Ω_es = 25 dB,
    /// Ω_rd = Ω_rer = 20 dB. Both eavesdropper links are populated so one
    /// baseline serves all three scenarios.
    pub fn baseline(scenario: Scenario) -> Self {
        let rf_hop = AlphaMuHop {
            alpha: 2.0,
            mu: 4.0,
            phi: 1.0,
        };
        let water = presets::get(&presets::builtin(), "fresh_bl2.4").expect("builtin preset");
        let uowc_hop = water.hop(1.0, 1.0).expect("valid hop");
        let rf = |omega_db: f64| RisRfLink {
            hop_s: rf_hop,
            hop_r: rf_hop,
            n_elements: 1,
            path_loss: 1.0,
            omega_db,
        };
        let uowc = |omega_db: f64| RisUowcLink {
            hop_s: uowc_hop,
            hop_r: uowc_hop,
            n_elements: 1,
            detection: Detection::Heterodyne,
            omega_db,
        };
        ScenarioConfig {
            scenario,
            r0: 0.01,
            main_rf: rf(20.0),
            main_uowc: uowc(20.0),
            eve_rf: Some(rf(25.0)),
            eve_uowc: Some(uowc(20.0)),
        }
    }
}

/// How a metric value was obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MetricMethod {
    ClosedForm,
    Asymptotic,
    QuadratureOracle,
}

/// A metric value with its evaluation trail.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MetricResult {
    pub value: f64,
    pub method: MetricMethod,
    /// Absolute error estimate of the numerical evaluation.
    pub error_estimate: f64,
    /// Evaluation notes (contours, truncations, reductions applied).
    pub diagnostics: String,
    /// Set when a probability-valued output fell outside [-1e-6, 1+1e-6]
    /// and was clamped into [0, 1].
    pub clamped: bool,
}

const PROB_SLACK: f64 = 1e-6;

impl MetricResult {
    pub fn new(value: f64, method: MetricMethod, error_estimate: f64, diagnostics: String) -> Self {
        MetricResult {
            value,
            method,
            error_estimate,
            diagnostics,
            clamped: false,
        }
    }

    /// Wraps a probability-valued metric, clamping and flagging values
    /// outside the numerical-noise band around [0, 1].
    pub fn probability(
        raw: f64,
        method: MetricMethod,
        error_estimate: f64,
        mut diagnostics: String,
    ) -> Self {
        let mut clamped = false;
        let value = if raw < -PROB_SLACK || raw > 1.0 + PROB_SLACK {
            clamped = true;
            if !diagnostics.is_empty() {
                diagnostics.push_str("; ");
            }
            diagnostics.push_str(&format!("raw value {raw:.6e} clamped into [0,1]"));
            raw.clamp(0.0, 1.0)
        } else {
            raw.clamp(0.0, 1.0)
        };
        MetricResult {
            value,
            method,
            error_estimate,
            diagnostics,
            clamped,
        }
    }
}

/// Fitted per-link statistics for one scenario evaluation.
pub struct ScenarioStats {
    pub phi: f64,
    pub rf_main: RfStats,
    pub uowc_main: UowcStats,
    pub rf_eve: Option<RfStats>,
    pub uowc_eve: Option<UowcStats>,
}

impl ScenarioStats {
    pub fn new(cfg: &ScenarioConfig) -> Result<Self> {
        cfg.validate()?;
        Ok(ScenarioStats {
            phi: cfg.phi(),
            rf_main: RfStats::new(&cfg.main_rf)?,
            uowc_main: UowcStats::new(&cfg.main_uowc)?,
            rf_eve: match &cfg.eve_rf {
                Some(l) => Some(RfStats::new(l)?),
                None => None,
            },
            uowc_eve: match &cfg.eve_uowc {
                Some(l) => Some(UowcStats::new(l)?),
                None => None,
            },
        })
    }

    pub fn rf_eve(&self) -> Result<&RfStats> {
        self.rf_eve
            .as_ref()
            .ok_or_else(|| Error::Scenario("missing eve_rf link".into()))
    }

    pub fn uowc_eve(&self) -> Result<&UowcStats> {
        self.uowc_eve
            .as_ref()
            .ok_or_else(|| Error::Scenario("missing eve_uowc link".into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn baseline_validates_for_all_scenarios() {
        for s in [
            Scenario::RfEavesdrop,
            Scenario::UowcEavesdrop,
            Scenario::Simultaneous,
        ] {
            assert!(ScenarioConfig::baseline(s).validate().is_ok());
        }
    }

    #[test]
    fn missing_eavesdropper_rejected() {
        let mut cfg = ScenarioConfig::baseline(Scenario::Simultaneous);
        cfg.eve_uowc = None;
        assert!(cfg.validate().is_err());
    }

    #[test]
    fn phi_floor() {
        let cfg = ScenarioConfig::baseline(Scenario::RfEavesdrop);
        assert!(cfg.phi() >= 1.0);
        assert!((cfg.with_r0(0.0).phi() - 1.0).abs() == 0.0);
    }

    #[test]
    fn probability_clamp_flags() {
        let ok = MetricResult::probability(0.5, MetricMethod::ClosedForm, 0.0, String::new());
        assert!(!ok.clamped);
        let noisy = MetricResult::probability(-5e-7, MetricMethod::ClosedForm, 0.0, String::new());
        assert!(!noisy.clamped);
        assert_eq!(noisy.value, 0.0);
        let bad = MetricResult::probability(1.5, MetricMethod::ClosedForm, 0.0, String::new());
        assert!(bad.clamped);
        assert_eq!(bad.value, 1.0);
    }
}
