//! Quadrature oracles: every metric evaluated by adaptive integration of
//! its defining integral, using only the channel CDFs/PDFs. This route
//! never touches the Fox H machinery, so closed-form/oracle disagreement
//! separates special-function bugs from formula-transcription bugs.

use crate::channels::eq_cdf;
use crate::error::Result;
use crate::quad;

use super::config::{MetricMethod, MetricResult, Scenario, ScenarioConfig, ScenarioStats};

const TOL: f64 = 1e-9;

/// All oracle integrands substitute γ = t² so the γ^{u/r−1} density edges
/// (down to γ^{-1/2}) become smooth at the origin.

pub fn asc_oracle(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    let eve = st.rf_eve()?;
    let f = |t: f64| {
        let g = t * t;
        let survival = (1.0 - st.rf_main.cdf(g)) * (1.0 - st.uowc_main.cdf(g));
        2.0 * t * eve.cdf(g) * survival / (1.0 + g)
    };
    let r = quad::integrate_to_inf(&f, 0.0, TOL);
    Ok(MetricResult::new(
        r.value / std::f64::consts::LN_2,
        MetricMethod::QuadratureOracle,
        r.abs_err.max(TOL),
        format!("adaptive quadrature, {} evals", r.evals),
    ))
}

fn tap_integral_oracle(st: &ScenarioStats) -> Result<f64> {
    let er = st.uowc_eve()?;
    let phi = st.phi;
    let f = |t: f64| {
        let g = t * t;
        2.0 * t * st.uowc_main.cdf(phi * g) * er.pdf(g)
    };
    Ok(quad::integrate_to_inf(&f, 0.0, TOL).value)
}

pub fn sop_oracle(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    let phi = st.phi;
    let (value, evals) = match cfg.scenario {
        Scenario::RfEavesdrop => {
            let eve = st.rf_eve()?;
            let f = |t: f64| {
                let g = t * t;
                2.0 * t * eq_cdf(&st.rf_main, &st.uowc_main, phi * g) * eve.pdf(g)
            };
            let r = quad::integrate_to_inf(&f, 0.0, TOL);
            (r.value, r.evals)
        }
        Scenario::UowcEavesdrop => {
            let ft = if phi > 1.0 {
                st.rf_main.cdf(phi - 1.0)
            } else {
                0.0
            };
            (ft + (1.0 - ft) * tap_integral_oracle(&st)?, 0)
        }
        Scenario::Simultaneous => {
            let eve = st.rf_eve()?;
            let f = |t: f64| {
                let g = t * t;
                2.0 * t * st.rf_main.cdf(phi * g) * eve.pdf(g)
            };
            let i_u = quad::integrate_to_inf(&f, 0.0, TOL).value;
            let i_r = tap_integral_oracle(&st)?;
            (1.0 - (1.0 - i_u) * (1.0 - i_r), 0)
        }
    };
    Ok(MetricResult::probability(
        value,
        MetricMethod::QuadratureOracle,
        TOL * 10.0,
        format!("defining-integral quadrature ({evals} evals)"),
    ))
}

pub fn spsc_oracle(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let s = sop_oracle(&cfg.with_r0(0.0))?;
    Ok(MetricResult::probability(
        1.0 - s.value,
        MetricMethod::QuadratureOracle,
        s.error_estimate,
        s.diagnostics,
    ))
}

pub fn est_oracle(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let s = sop_oracle(cfg)?;
    Ok(MetricResult::new(
        cfg.r0 * (1.0 - s.value),
        MetricMethod::QuadratureOracle,
        cfg.r0 * s.error_estimate,
        s.diagnostics,
    ))
}
