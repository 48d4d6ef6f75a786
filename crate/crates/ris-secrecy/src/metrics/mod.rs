//! Closed-form secrecy metrics and their asymptotics for the three
//! eavesdropping scenarios, with quadrature oracles for every defining
//! integral.
//!
//! All SOP values are the standard lower-bound forms (the exact dual-hop
//! SOP has no closed form); SPSC and EST are exact algebra on SOP:
//! `SPSC = 1 − SOP|_{R0=0}` and `EST = R0·(1 − SOP)`.

mod asc;
mod config;
mod kernels;
mod oracle;
mod sop;

pub use asc::asc_scenario1;
pub use config::{MetricMethod, MetricResult, Scenario, ScenarioConfig, ScenarioStats};
pub use oracle::{asc_oracle, est_oracle, sop_oracle, spsc_oracle};
pub use sop::{
    scenario3_components, sop_scenario1, sop_scenario1_asymptotic, sop_scenario2,
    sop_scenario2_asymptotic, sop_scenario3, sop_scenario3_asymptotic,
};

use crate::error::Result;
use serde::{Deserialize, Serialize};

/// The four reported metrics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Metric {
    Asc,
    Sop,
    Spsc,
    Est,
}

/// Scenario-dispatched closed-form SOP.
pub fn sop(cfg: &ScenarioConfig) -> Result<MetricResult> {
    match cfg.scenario {
        Scenario::RfEavesdrop => sop_scenario1(cfg),
        Scenario::UowcEavesdrop => sop_scenario2(cfg),
        Scenario::Simultaneous => sop_scenario3(cfg),
    }
}

pub fn sop_asymptotic(cfg: &ScenarioConfig) -> Result<MetricResult> {
    match cfg.scenario {
        Scenario::RfEavesdrop => sop_scenario1_asymptotic(cfg),
        Scenario::UowcEavesdrop => sop_scenario2_asymptotic(cfg),
        Scenario::Simultaneous => sop_scenario3_asymptotic(cfg),
    }
}

/// Probability of strictly positive secrecy capacity: exactly
/// `1 − SOP` at R0 = 0.
pub fn spsc(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let s = sop(&cfg.with_r0(0.0))?;
    Ok(MetricResult::probability(
        1.0 - s.value,
        MetricMethod::ClosedForm,
        s.error_estimate,
        s.diagnostics,
    ))
}

pub fn spsc_asymptotic(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let s = sop_asymptotic(&cfg.with_r0(0.0))?;
    Ok(MetricResult::probability(
        1.0 - s.value,
        MetricMethod::Asymptotic,
        s.error_estimate,
        s.diagnostics,
    ))
}

/// Effective secrecy throughput: exactly `R0 · (1 − SOP)`.
pub fn est(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let s = sop(cfg)?;
    Ok(MetricResult::new(
        cfg.r0 * (1.0 - s.value),
        MetricMethod::ClosedForm,
        cfg.r0 * s.error_estimate,
        s.diagnostics,
    ))
}

pub fn est_asymptotic(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let s = sop_asymptotic(cfg)?;
    Ok(MetricResult::new(
        cfg.r0 * (1.0 - s.value),
        MetricMethod::Asymptotic,
        cfg.r0 * s.error_estimate,
        s.diagnostics,
    ))
}

/// Closed-form dispatch over the metric enum.
pub fn evaluate(metric: Metric, cfg: &ScenarioConfig) -> Result<MetricResult> {
    match metric {
        Metric::Asc => asc_scenario1(cfg),
        Metric::Sop => sop(cfg),
        Metric::Spsc => spsc(cfg),
        Metric::Est => est(cfg),
    }
}

/// Asymptotic dispatch; ASC has no derived asymptote and returns `None`.
pub fn evaluate_asymptotic(metric: Metric, cfg: &ScenarioConfig) -> Result<Option<MetricResult>> {
    Ok(match metric {
        Metric::Asc => None,
        Metric::Sop => Some(sop_asymptotic(cfg)?),
        Metric::Spsc => Some(spsc_asymptotic(cfg)?),
        Metric::Est => Some(est_asymptotic(cfg)?),
    })
}

/// Defining-integral quadrature dispatch.
pub fn evaluate_oracle(metric: Metric, cfg: &ScenarioConfig) -> Result<MetricResult> {
    match metric {
        Metric::Asc => asc_oracle(cfg),
        Metric::Sop => sop_oracle(cfg),
        Metric::Spsc => spsc_oracle(cfg),
        Metric::Est => est_oracle(cfg),
    }
}

/// Monte Carlo dispatch (fitted or physical sampling per settings).
pub fn evaluate_mc(
    metric: Metric,
    cfg: &ScenarioConfig,
    settings: &crate::montecarlo::McSettings,
) -> Result<crate::montecarlo::McEstimate> {
    use crate::montecarlo::{empirical_asc, empirical_sop, McEstimate};
    match metric {
        Metric::Asc => empirical_asc(cfg, settings),
        Metric::Sop => empirical_sop(cfg, settings),
        Metric::Spsc => {
            let s = empirical_sop(&cfg.with_r0(0.0), settings)?;
            Ok(McEstimate {
                mean: 1.0 - s.mean,
                std_error: s.std_error,
                n_samples: s.n_samples,
            })
        }
        Metric::Est => {
            let s = empirical_sop(cfg, settings)?;
            Ok(McEstimate {
                mean: cfg.r0 * (1.0 - s.mean),
                std_error: cfg.r0 * s.std_error,
                n_samples: s.n_samples,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spsc_is_exact_complement() {
        let cfg = ScenarioConfig::baseline(Scenario::Simultaneous);
        let s0 = sop(&cfg.with_r0(0.0)).unwrap();
        let p = spsc(&cfg).unwrap();
        assert_eq!(p.value.to_bits(), (1.0 - s0.value).to_bits());
    }

    #[test]
    fn est_is_exact_product() {
        let cfg = ScenarioConfig::baseline(Scenario::UowcEavesdrop);
        let s = sop(&cfg).unwrap();
        let e = est(&cfg).unwrap();
        assert_eq!(e.value.to_bits(), (cfg.r0 * (1.0 - s.value)).to_bits());
    }

    #[test]
    fn asc_ignores_target_rate() {
        let cfg = ScenarioConfig::baseline(Scenario::RfEavesdrop);
        let a = asc_scenario1(&cfg).unwrap();
        let b = asc_scenario1(&cfg.with_r0(3.7)).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
    }
}
