use statrs::function::gamma::{gamma_lr, ln_gamma};

use crate::error::Result;
use crate::specfun::{self, FoxHSpec};

use super::{FittedGamma, RisRfLink, RisUowcLink};

/// Precomputed distribution parameters of an RF link SNR
/// `γ = (Ω/l)·M²` with `M ~ Gamma(u, v)`.
#[derive(Debug, Clone)]
pub struct RfStats {
    pub fit: FittedGamma,
    pub u: u32,
    pub v: f64,
    /// Average SNR, linear.
    pub omega: f64,
    pub path_loss: f64,
    /// κ = sqrt(l / (Ω v²)); the CDF is P(u, κ√γ).
    pub kappa: f64,
}

impl RfStats {
    pub fn new(link: &RisRfLink) -> Result<Self> {
        link.validate()?;
        let fit = link.fit()?;
        let omega = link.omega_linear();
        let kappa = (link.path_loss / (omega * fit.v * fit.v)).sqrt();
        Ok(RfStats {
            u: fit.u,
            v: fit.v,
            omega,
            path_loss: link.path_loss,
            kappa,
            fit,
        })
    }

    /// SNR density: κ^u γ^{u/2−1} e^{−κ√γ} / (2 Γ(u)).
    pub fn pdf(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        let u = self.u as f64;
        let ln = u * self.kappa.ln() + (0.5 * u - 1.0) * gamma.ln()
            - self.kappa * gamma.sqrt()
            - std::f64::consts::LN_2
            - ln_gamma(u);
        ln.exp()
    }

    /// SNR distribution function: regularized lower incomplete gamma
    /// P(u, κ√γ), identical to the finite exponential sum form.
    pub fn cdf(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        gamma_lr(self.u as f64, self.kappa * gamma.sqrt())
    }

    /// Leading high-SNR term (κ√γ)^u / u!.
    pub fn cdf_asymptotic(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        let (coeff, p) = self.asymptotic_term();
        coeff * gamma.powf(p)
    }

    /// The expansion `F^∞(γ) = coeff·γ^p` as a (coeff, p) pair.
    pub fn asymptotic_term(&self) -> (f64, f64) {
        let u = self.u as f64;
        let coeff = (u * self.kappa.ln() - ln_gamma(u + 1.0)).exp();
        (coeff, 0.5 * u)
    }
}

/// Precomputed distribution parameters of a UOWC link SNR
/// `γ = Ω·(S/E[M])^r` with `S ~ Gamma(u, v)`.
#[derive(Debug, Clone)]
pub struct UowcStats {
    pub fit: FittedGamma,
    pub u: u32,
    pub v: f64,
    /// Mean of the single-element cascade, E[M].
    pub e1: f64,
    /// Detection exponent r (1 = HD, 2 = IM/DD).
    pub r: u32,
    /// Electrical SNR, linear.
    pub omega: f64,
    /// β = E[M] / (v Ω^{1/r}); the CDF is P(u, β γ^{1/r}).
    pub beta: f64,
    /// Argument scale of the CDF Meijer G form: c = (β/r)^r.
    pub g_scale: f64,
    /// Prefactor M₁/(√r (2π)^{(r−1)/2}) of the Meijer G CDF form.
    pub w: f64,
}

impl UowcStats {
    pub fn new(link: &RisUowcLink) -> Result<Self> {
        link.validate()?;
        let fit = link.fit()?;
        let r = link.detection.r();
        let omega = link.omega_linear();
        let beta = fit.mean / (fit.v * omega.powf(1.0 / r as f64));
        let u = fit.u as f64;
        let m1 = (u * beta.ln() - ln_gamma(u)).exp();
        let w = m1
            / ((r as f64).sqrt()
                * (2.0 * std::f64::consts::PI).powf((r as f64 - 1.0) / 2.0));
        Ok(UowcStats {
            u: fit.u,
            v: fit.v,
            e1: fit.mean,
            r,
            omega,
            beta,
            g_scale: (beta / r as f64).powi(r as i32),
            w,
            fit,
        })
    }

    /// SNR density: β^u γ^{u/r−1} e^{−β γ^{1/r}} / (r Γ(u)).
    pub fn pdf(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        let (u, r) = (self.u as f64, self.r as f64);
        let ln = u * self.beta.ln() + (u / r - 1.0) * gamma.ln()
            - self.beta * gamma.powf(1.0 / r)
            - r.ln()
            - ln_gamma(u);
        ln.exp()
    }

    pub fn cdf(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        gamma_lr(self.u as f64, self.beta * gamma.powf(1.0 / self.r as f64))
    }

    /// The CDF kernel `G^{r,1}_{1,r+1}[· | 1−u/r; 0, 1/r, ..., (r−1)/r, −u/r]`;
    /// `cdf(γ) = w · γ^{u/r} · G(g_scale · γ)`.
    pub fn cdf_g_spec(&self) -> FoxHSpec {
        let (u, r) = (self.u as f64, self.r as f64);
        let mut lower: Vec<f64> = (0..self.r).map(|j| j as f64 / r).collect();
        lower.push(-u / r);
        FoxHSpec::meijer(self.r as usize, 1, &[1.0 - u / r], &lower)
            .expect("CDF kernel parameters are always valid")
    }

    /// CDF through the Mellin-Barnes engine; numerically identical to
    /// `cdf` and kept as the cross-validation route.
    pub fn cdf_meijer(&self, gamma: f64) -> Result<f64> {
        if gamma <= 0.0 {
            return Ok(0.0);
        }
        let g = specfun::meijer_g(&self.cdf_g_spec(), self.g_scale * gamma)?;
        let (u, r) = (self.u as f64, self.r as f64);
        Ok(self.w * gamma.powf(u / r) * g.value)
    }

    /// Leading residue layer of the CDF kernel: the first r terms of the
    /// small-argument expansion, `w γ^{u/r} Σ_i C_i (g_scale γ)^{(i−1)/r}`.
    pub fn cdf_asymptotic(&self, gamma: f64) -> f64 {
        if gamma <= 0.0 {
            return 0.0;
        }
        self.asymptotic_terms()
            .iter()
            .map(|&(coeff, p)| coeff * gamma.powf(p))
            .sum()
    }

    /// The expansion `F^∞(γ) = Σ_i coeff_i·γ^{p_i}` as (coeff, p) pairs,
    /// one residue per multiplication-sequence pole of the CDF kernel.
    pub fn asymptotic_terms(&self) -> Vec<(f64, f64)> {
        let (u, r) = (self.u as f64, self.r as f64);
        let mut terms = Vec::with_capacity(self.r as usize);
        for i in 1..=self.r {
            let b = (i as f64 - 1.0) / r;
            let mut coeff = self.w * self.g_scale.powf(b);
            for j in 1..=self.r {
                if j != i {
                    let arg = (j as f64 - i as f64) / r;
                    coeff *= specfun::gamma_signed(arg).expect("non-integer gamma argument");
                }
            }
            coeff *= (ln_gamma(u / r + b) - ln_gamma(1.0 + u / r + b)).exp();
            terms.push((coeff, u / r + b));
        }
        terms
    }
}

/// Dual-hop equivalent SNR CDF: `F_t + F_d − F_t F_d` for
/// `γ_eq = min(γ_t, γ_d)`.
pub fn eq_cdf(rf: &RfStats, uowc: &UowcStats, gamma: f64) -> f64 {
    let ft = rf.cdf(gamma);
    let fd = uowc.cdf(gamma);
    ft + fd - ft * fd
}

/// High-SNR expansion of the dual-hop CDF: sum of the per-link leading
/// terms (their product is higher order and dropped).
pub fn eq_cdf_asymptotic(rf: &RfStats, uowc: &UowcStats, gamma: f64) -> f64 {
    rf.cdf_asymptotic(gamma) + uowc.cdf_asymptotic(gamma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::{AlphaMuHop, Detection, EggHop};
    use crate::quad;

    pub fn default_rf(omega_db: f64) -> RisRfLink {
        RisRfLink {
            hop_s: AlphaMuHop::new(2.0, 4.0, 1.0).unwrap(),
            hop_r: AlphaMuHop::new(2.0, 4.0, 1.0).unwrap(),
            n_elements: 1,
            path_loss: 1.0,
            omega_db,
        }
    }

    pub fn default_uowc(omega_db: f64, detection: Detection) -> RisUowcLink {
        let hop = EggHop::new(0.2130, 0.3291, 1.4299, 1.1817, 17.1984, 1.0, 1.0).unwrap();
        RisUowcLink {
            hop_s: hop,
            hop_r: hop,
            n_elements: 1,
            detection,
            omega_db,
        }
    }

    #[test]
    fn default_rf_fit_values() {
        // Regression fixture: α = 2, µ = 4, φ = 1, N = 1.
        let fit = default_rf(20.0).fit().unwrap();
        assert!((fit.u_raw - 7.530_899_584_9).abs() < 1e-9, "u_raw {}", fit.u_raw);
        assert_eq!(fit.u, 8);
    }

    #[test]
    fn rf_cdf_limits() {
        let s = RfStats::new(&default_rf(20.0)).unwrap();
        assert_eq!(s.cdf(0.0), 0.0);
        assert!(s.cdf(1e12) > 1.0 - 1e-12);
        let mut prev = 0.0;
        for i in 1..100 {
            let c = s.cdf(i as f64);
            assert!(c >= prev);
            prev = c;
        }
    }

    #[test]
    fn rf_pdf_normalizes() {
        let s = RfStats::new(&default_rf(14.0)).unwrap();
        // substitute γ = t²
        let r = quad::integrate_to_inf(&|t: f64| 2.0 * t * s.pdf(t * t), 0.0, 1e-10);
        assert!((r.value - 1.0).abs() < 1e-8, "integral {}", r.value);
    }

    #[test]
    fn uowc_pdf_normalizes_both_detections() {
        for det in [Detection::Heterodyne, Detection::ImDd] {
            let s = UowcStats::new(&default_uowc(17.0, det)).unwrap();
            let r = quad::integrate_to_inf(&|t: f64| 2.0 * t * s.pdf(t * t), 0.0, 1e-10);
            assert!((r.value - 1.0).abs() < 1e-8, "det {det:?}: {}", r.value);
        }
    }

    #[test]
    fn uowc_cdf_matches_pdf_integral() {
        for det in [Detection::Heterodyne, Detection::ImDd] {
            let s = UowcStats::new(&default_uowc(20.0, det)).unwrap();
            for i in 0..20 {
                let g = 10f64.powf(-2.0 + 4.0 * i as f64 / 19.0);
                let integral =
                    quad::integrate(&|t: f64| 2.0 * t * s.pdf(t * t), 0.0, g.sqrt(), 1e-9);
                assert!(
                    (s.cdf(g) - integral.value).abs() < 1e-6,
                    "det {det:?} γ={g}: {} vs {}",
                    s.cdf(g),
                    integral.value
                );
            }
        }
    }

    #[test]
    fn uowc_cdf_meijer_route_agrees() {
        for det in [Detection::Heterodyne, Detection::ImDd] {
            let s = UowcStats::new(&default_uowc(20.0, det)).unwrap();
            for &g in &[0.05, 0.7, 3.0, 40.0, 300.0] {
                let direct = s.cdf(g);
                let via_g = s.cdf_meijer(g).unwrap();
                assert!(
                    (direct - via_g).abs() < 1e-8 * direct.max(1e-12),
                    "det {det:?} γ={g}: {direct} vs {via_g}"
                );
            }
        }
    }

    #[test]
    fn hd_beats_imdd_at_low_snr() {
        // At equal electrical SNR the IM/DD CDF dominates at low γ.
        let hd = UowcStats::new(&default_uowc(20.0, Detection::Heterodyne)).unwrap();
        let imdd = UowcStats::new(&default_uowc(20.0, Detection::ImDd)).unwrap();
        for &g in &[0.01, 0.1, 1.0] {
            assert!(
                imdd.cdf(g) >= hd.cdf(g),
                "γ={g}: imdd {} < hd {}",
                imdd.cdf(g),
                hd.cdf(g)
            );
        }
    }

    #[test]
    fn eq_cdf_is_min_ordering() {
        let rf = RfStats::new(&default_rf(20.0)).unwrap();
        let uowc = UowcStats::new(&default_uowc(20.0, Detection::Heterodyne)).unwrap();
        for i in 0..40 {
            let g = 10f64.powf(-2.0 + 5.0 * i as f64 / 39.0);
            let e = eq_cdf(&rf, &uowc, g);
            assert!(e >= rf.cdf(g).max(uowc.cdf(g)) - 1e-14);
            assert!(e <= 1.0 + 1e-12);
        }
    }

    #[test]
    fn rf_vanishing_makes_eq_cdf_uowc() {
        // Ω_t → ∞ turns F_t off; the composition reduces to F_d.
        let rf = RfStats::new(&default_rf(200.0)).unwrap();
        let uowc = UowcStats::new(&default_uowc(20.0, Detection::Heterodyne)).unwrap();
        for &g in &[0.1, 1.0, 10.0] {
            let e = eq_cdf(&rf, &uowc, g);
            assert!((e - uowc.cdf(g)).abs() < 1e-10);
        }
    }

    #[test]
    fn asymptotic_cdf_converges_at_high_snr() {
        for det in [Detection::Heterodyne, Detection::ImDd] {
            let mut prev_gap = f64::INFINITY;
            for &db in &[40.0, 50.0, 60.0] {
                let rf = RfStats::new(&default_rf(db)).unwrap();
                let uowc = UowcStats::new(&default_uowc(db, det)).unwrap();
                let g = 1.0;
                let exact = eq_cdf(&rf, &uowc, g);
                let asym = eq_cdf_asymptotic(&rf, &uowc, g);
                let gap = (asym - exact).abs() / exact;
                assert!(gap < prev_gap, "det {det:?} {db} dB: gap {gap} grew");
                prev_gap = gap;
                if db == 60.0 {
                    assert!(gap <= 0.05, "det {det:?}: gap {gap}");
                }
            }
        }
    }

    #[test]
    fn asymptotic_single_residue_at_r1() {
        // r = 1 keeps a single residue: F_d^∞ = (βγ)^u / Γ(u+1).
        let s = UowcStats::new(&default_uowc(35.0, Detection::Heterodyne)).unwrap();
        let g = 0.3;
        let direct = ((s.u as f64) * (s.beta * g).ln()
            - statrs::function::gamma::ln_gamma(s.u as f64 + 1.0))
        .exp();
        assert!((s.cdf_asymptotic(g) - direct).abs() < 1e-12 * direct);
    }
}
