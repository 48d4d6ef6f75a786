//! Secrecy outage probability, lower-bound forms, for the three
//! eavesdropping scenarios, plus their high-SNR asymptotes.
//!
//! The exact SOP of the dual-hop link is intractable in closed form; as is
//! standard, the reported quantities are the lower-bound events
//! (`γ_eq <= φ·γ_eve` style with φ = 2^R0), which the Monte Carlo layer
//! samples directly so closed form and simulation target the same number.

use statrs::function::gamma::ln_gamma;

use crate::channels::{RfStats, UowcStats};
use crate::error::Result;
use crate::specfun::{fox_h, fox_h_leading, FoxHSpec};

use super::config::{MetricMethod, MetricResult, Scenario, ScenarioConfig, ScenarioStats};
use super::kernels::{bivariate, exp_kernel, log_scaled, TermSum};

/// `Pr{γ_t > φ·γ_es}`: the RF secrecy-survival sum shared by scenarios I
/// and III. Written through `G^{1,1}_{1,1}[κ_es/(κ_t√φ) | 1−η−u_es; 0]`.
fn rf_survival(t: &RfStats, eve: &RfStats, phi: f64) -> Result<TermSum> {
    let z = eve.kappa / (t.kappa * phi.sqrt());
    let ues = eve.u as f64;
    let coef_ln = ues * z.ln() - ln_gamma(ues);
    let mut sum = TermSum::default();
    for et in 0..t.u {
        let spec = FoxHSpec::meijer(1, 1, &[1.0 - et as f64 - ues], &[0.0])?;
        let g = fox_h(&spec, z).map_err(|e| e.in_kernel(format!("survival G11[{et}]")))?;
        sum.add(1.0, coef_ln - ln_gamma(et as f64 + 1.0), &g);
    }
    Ok(sum)
}

/// High-SNR limit of `rf_survival`: Σ_η Γ(η+u_es)/(η! Γ(u_es)) ζ^η with
/// ζ = κ_t√φ/κ_es.
fn rf_survival_asymptotic(t: &RfStats, eve: &RfStats, phi: f64) -> f64 {
    let zeta = t.kappa * phi.sqrt() / eve.kappa;
    let ues = eve.u as f64;
    let mut sum = 0.0;
    for et in 0..t.u {
        let etf = et as f64;
        sum += (ln_gamma(etf + ues) - ln_gamma(etf + 1.0) - ln_gamma(ues) + etf * zeta.ln()).exp();
    }
    sum
}

/// The tap-side integral `J = ∫ F_d(φγ) f_er(γ) dγ` of scenarios II and
/// III, reduced to a single Meijer G by the Mellin transform of the
/// generalized-gamma density (multiplication formula of order r_er):
/// `J = C·G^{r_d, r_er+1}_{r_er+1, r_d+1}[φ·c_d·(r_er/β_er)^{r_er}]`.
struct TapIntegral {
    coef_ln: f64,
    spec: FoxHSpec,
    z: f64,
}

fn tap_integral(d: &UowcStats, er: &UowcStats, phi: f64) -> Result<TapIntegral> {
    let ell = er.r as f64;
    let (ud, rd) = (d.u as f64, d.r as f64);
    let uer = er.u as f64;
    let rho = ud / rd + uer / ell;
    let z = phi * d.g_scale * (ell / er.beta).powf(ell);
    let mut upper: Vec<f64> = (0..er.r).map(|j| 1.0 - rho - j as f64 / ell).collect();
    upper.push(1.0 - ud / rd);
    let mut lower: Vec<f64> = (0..d.r).map(|i| i as f64 / rd).collect();
    lower.push(-ud / rd);
    let spec = FoxHSpec::meijer(d.r as usize, er.r as usize + 1, &upper, &lower)?;
    let ln_m1_er = uer * er.beta.ln() - ln_gamma(uer);
    let coef_ln = d.w.ln() + (ud / rd) * phi.ln() + ln_m1_er - ell * rho * er.beta.ln()
        + 0.5 * (1.0 - ell) * (2.0 * std::f64::consts::PI).ln()
        + (ell * rho - 0.5) * ell.ln();
    Ok(TapIntegral { coef_ln, spec, z })
}

impl TapIntegral {
    fn exact(&self) -> Result<(f64, f64)> {
        let g = fox_h(&self.spec, self.z).map_err(|e| e.in_kernel("tap integral G"))?;
        let value = log_scaled(self.coef_ln, g.value);
        Ok((value, value.abs() * g.rel_err))
    }

    fn asymptotic(&self) -> Result<f64> {
        let g = fox_h_leading(&self.spec, self.z)?;
        Ok(log_scaled(self.coef_ln, g.value))
    }
}

/// Scenario I: eavesdropper on the RF hop. `SOP = Pr{γ_eq <= φ γ_es}`.
pub fn sop_scenario1(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    require(cfg, Scenario::RfEavesdrop)?;
    let eve = st.rf_eve()?;
    let (t, d) = (&st.rf_main, &st.uowc_main);
    let phi = st.phi;
    let sphi = phi.sqrt();
    let (ud, rd) = (d.u as f64, d.r as f64);
    let q = 2.0 * ud / rd;
    let ues = eve.u as f64;

    // F_es contributes 1 via its normalization (the R1 term).
    let mut total = TermSum {
        value: 1.0,
        abs_err: 0.0,
    };
    let survival = rf_survival(t, eve, phi)?;
    total.value -= survival.value;
    total.abs_err += survival.abs_err;

    // UOWC correction: + Σ_η coef · R3(η) with the bivariate kernel.
    let z = eve.kappa / (t.kappa * sphi);
    let coef_ln = d.w.ln()
        + (ud / rd) * phi.ln()
        + ues * eve.kappa.ln()
        + (-ues - q) * (t.kappa * sphi).ln()
        - ln_gamma(ues);
    for et in 0..t.u {
        let r3 = bivariate(
            1.0 - et as f64 - ues - q,
            1.0,
            2.0,
            exp_kernel(),
            d.cdf_g_spec(),
            z,
            d.g_scale / (t.kappa * t.kappa),
            "R3",
        )?;
        total.add(1.0, coef_ln - ln_gamma(et as f64 + 1.0), &r3);
    }
    Ok(MetricResult::probability(
        total.value,
        MetricMethod::ClosedForm,
        total.abs_err,
        format!("u_t={} u_es={} u_d={}", t.u, eve.u, d.u),
    ))
}

/// High-SNR form of scenario I: the eavesdropper-average of the dual-hop
/// CDF expansion, `Σ coeff φ^p Γ(2p+u_es)/(Γ(u_es) κ_es^{2p})`.
pub fn sop_scenario1_asymptotic(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    require(cfg, Scenario::RfEavesdrop)?;
    let eve = st.rf_eve()?;
    let phi = st.phi;
    let ues = eve.u as f64;
    let mut terms = vec![st.rf_main.asymptotic_term()];
    terms.extend(st.uowc_main.asymptotic_terms());
    let mut value = 0.0;
    for (coeff, p) in terms {
        value += coeff
            * (p * phi.ln() + ln_gamma(2.0 * p + ues) - ln_gamma(ues)
                - 2.0 * p * eve.kappa.ln())
            .exp();
    }
    Ok(MetricResult::probability(
        value,
        MetricMethod::Asymptotic,
        0.0,
        "leading residues of F_eq".into(),
    ))
}

/// Scenario II: eavesdropper on the optical hop.
/// `SOP = F_t(φ−1) + (1 − F_t(φ−1))·J`.
pub fn sop_scenario2(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    require(cfg, Scenario::UowcEavesdrop)?;
    let er = st.uowc_eve()?;
    let phi = st.phi;
    // φ = 1 makes the RF floor term vanish identically (F_t(0) = 0).
    let ft = if phi > 1.0 {
        st.rf_main.cdf(phi - 1.0)
    } else {
        0.0
    };
    let tap = tap_integral(&st.uowc_main, er, phi)?;
    let (j, j_err) = tap.exact()?;
    Ok(MetricResult::probability(
        ft + (1.0 - ft) * j,
        MetricMethod::ClosedForm,
        j_err,
        format!("F_t(φ-1)={ft:.3e}; tap J={j:.6e} (G arg {:.3e})", tap.z),
    ))
}

pub fn sop_scenario2_asymptotic(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    require(cfg, Scenario::UowcEavesdrop)?;
    let er = st.uowc_eve()?;
    let phi = st.phi;
    let ft = if phi > 1.0 {
        st.rf_main.cdf_asymptotic(phi - 1.0)
    } else {
        0.0
    };
    let j_inf = tap_integral(&st.uowc_main, er, phi)?.asymptotic()?;
    Ok(MetricResult::probability(
        ft + (1.0 - ft) * j_inf,
        MetricMethod::Asymptotic,
        0.0,
        "leading residues of F_t and the tap integral".into(),
    ))
}

/// Scenario III: simultaneous taps. `SOP = 1 − S_u·S_r` where `S_u`, `S_r`
/// are the per-link secrecy survival probabilities.
pub fn sop_scenario3(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    require(cfg, Scenario::Simultaneous)?;
    let (su, sr, err, diag) = scenario3_components(&st)?;
    Ok(MetricResult::probability(
        1.0 - su * sr,
        MetricMethod::ClosedForm,
        err,
        diag,
    ))
}

/// The two survival components of scenario III, exposed for the dominance
/// checks (`SOP >= 1 − S_u` and `SOP >= 1 − S_r`).
pub fn scenario3_components(st: &ScenarioStats) -> Result<(f64, f64, f64, String)> {
    let eve_rf = st.rf_eve()?;
    let eve_uowc = st.uowc_eve()?;
    let su = rf_survival(&st.rf_main, eve_rf, st.phi)?;
    let tap = tap_integral(&st.uowc_main, eve_uowc, st.phi)?;
    let (j, j_err) = tap.exact()?;
    let sr = 1.0 - j;
    Ok((
        su.value.clamp(0.0, 1.0),
        sr.clamp(0.0, 1.0),
        su.abs_err + j_err,
        format!("S_u={:.6e} S_r={:.6e}", su.value, sr),
    ))
}

pub fn sop_scenario3_asymptotic(cfg: &ScenarioConfig) -> Result<MetricResult> {
    let st = ScenarioStats::new(cfg)?;
    require(cfg, Scenario::Simultaneous)?;
    let su = rf_survival_asymptotic(&st.rf_main, st.rf_eve()?, st.phi);
    let j_inf = tap_integral(&st.uowc_main, st.uowc_eve()?, st.phi)?.asymptotic()?;
    Ok(MetricResult::probability(
        1.0 - su * (1.0 - j_inf),
        MetricMethod::Asymptotic,
        0.0,
        "survival series × leading tap residues".into(),
    ))
}

fn require(cfg: &ScenarioConfig, scenario: Scenario) -> Result<()> {
    if cfg.scenario != scenario {
        return Err(crate::error::Error::Scenario(format!(
            "metric requires {scenario:?}, configuration says {:?}",
            cfg.scenario
        )));
    }
    Ok(())
}
