//! Average secrecy capacity, RF-eavesdropper scenario.
//!
//! The defining integral is
//!
//! ```text
//! ASC = 1/ln2 · ∫_0^∞ F_es(γ) [1 − F_eq(γ)] / (1+γ) dγ        (bits/s/Hz)
//! ```
//!
//! Expanding `1 − F_eq = (1 − F_t)(1 − F_d)` and `F_es` through their
//! finite sums turns the integral into four kernel families: a univariate
//! Meijer G (`X1`) and three bivariate Fox H shapes (`X2`, `X3`, `X4`).
//! The `X3`/`X4` values depend on the two summation indices only through
//! their sum, so each family is evaluated once per distinct exponent.

use rayon::prelude::*;
use statrs::function::gamma::ln_gamma;

use crate::error::Result;
use crate::specfun::{meijer_g, Eval, FoxHSpec};

use super::config::{MetricMethod, MetricResult, Scenario, ScenarioConfig, ScenarioStats};
use super::kernels::{bivariate, exp_kernel, ratio_kernel, TermSum};

/// Closed-form average secrecy capacity in bits/s/Hz.
pub fn asc_scenario1(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    if cfg.scenario != Scenario::RfEavesdrop {
        return Err(crate::error::Error::Scenario(
            "average secrecy capacity is derived for the RF-eavesdropper scenario".into(),
        ));
    }
    let eve = st.rf_eve()?;
    let d = &st.uowc_main;
    let (kt, kes) = (st.rf_main.kappa, eve.kappa);
    let (ut, ues) = (st.rf_main.u as usize, eve.u as usize);
    let (ud, rd) = (d.u as f64, d.r as f64);
    let q = 2.0 * ud / rd;
    let cd = d.g_scale;
    let gd = d.cdf_g_spec();
    let big_k = kt + kes;

    // X1(η_t) = 1/√π · G^{3,1}_{1,3}[κ_t²/4 | −η_t/2; 0, 1/2, −η_t/2]
    let x1: Vec<Eval> = (0..ut)
        .into_par_iter()
        .map(|et| {
            let half = -(et as f64) / 2.0;
            let spec = FoxHSpec::meijer(3, 1, &[half], &[0.0, 0.5, half])?;
            meijer_g(&spec, 0.25 * kt * kt).map_err(|e| e.in_kernel(format!("X1[{et}]")))
        })
        .collect::<Result<_>>()?;

    // X2(η_t): ratio × UOWC-CDF kernels at (1/κ_t², c_d/κ_t²).
    let x2: Vec<Eval> = (0..ut)
        .into_par_iter()
        .map(|et| {
            bivariate(
                -1.0 - et as f64 - q,
                2.0,
                2.0,
                ratio_kernel(),
                gd.clone(),
                1.0 / (kt * kt),
                cd / (kt * kt),
                "X2",
            )
        })
        .collect::<Result<_>>()?;

    // X3, X4 depend on k = η_t + η_es only.
    let kmax = ut + ues - 1;
    let x3: Vec<Eval> = (0..kmax)
        .into_par_iter()
        .map(|k| {
            bivariate(
                -1.0 - k as f64,
                2.0,
                1.0,
                ratio_kernel(),
                exp_kernel(),
                1.0 / (kt * kt),
                kes / kt,
                "X3",
            )
        })
        .collect::<Result<_>>()?;
    let x4: Vec<Eval> = (0..kmax)
        .into_par_iter()
        .map(|k| {
            bivariate(
                -1.0 - k as f64 - q,
                2.0,
                2.0,
                ratio_kernel(),
                gd.clone(),
                1.0 / (big_k * big_k),
                cd / (big_k * big_k),
                "X4",
            )
        })
        .collect::<Result<_>>()?;

    let ln_wd = d.w.ln();
    let mut sum = TermSum::default();
    for et in 0..ut {
        let etf = et as f64;
        let ln_fact_t = ln_gamma(etf + 1.0);
        // κ_t^{η_t}/η_t! · X1
        sum.add(1.0, etf * kt.ln() - ln_fact_t, &x1[et]);
        // −W_d κ_t^{η_t}/η_t! · 2 κ_t^{−2−η_t−q} · X2: the κ_t^{η_t} cancels.
        sum.add(
            -1.0,
            ln_wd + std::f64::consts::LN_2 + (-2.0 - q) * kt.ln() - ln_fact_t,
            &x2[et],
        );
        for es in 0..ues {
            let esf = es as f64;
            let ln_fact = ln_fact_t + ln_gamma(esf + 1.0);
            // −(κ_es/κ_t)^{η_es} κ_t^{−2} · 2/η_t!η_es! · X3
            sum.add(
                -1.0,
                std::f64::consts::LN_2 + esf * (kes / kt).ln() - 2.0 * kt.ln() - ln_fact,
                &x3[et + es],
            );
            // +W_d κ_t^{η_t} κ_es^{η_es} · 2 K^{−2−k−q}/η_t!η_es! · X4
            sum.add(
                1.0,
                ln_wd
                    + std::f64::consts::LN_2
                    + etf * kt.ln()
                    + esf * kes.ln()
                    + (-2.0 - etf - esf - q) * big_k.ln()
                    - ln_fact,
                &x4[et + es],
            );
        }
    }

    let value = sum.value / std::f64::consts::LN_2;
    Ok(MetricResult::new(
        value.max(0.0),
        MetricMethod::ClosedForm,
        sum.abs_err / std::f64::consts::LN_2,
        format!(
            "u_t={ut} u_es={ues} u_d={ud} r_d={rd}; kernels X1..X4 = {}+{}+{}+{} evals",
            ut,
            ut,
            kmax,
            kmax
        ),
    ))
}
