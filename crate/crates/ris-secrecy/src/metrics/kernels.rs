//! Shared kernel builders and log-space term assembly for the closed forms.

use crate::error::Result;
use crate::specfun::{fox_h_bivariate, BivariateFoxHSpec, Eval, FoxHSpec, JointGamma};

/// `H^{1,1}_{1,1}[(0,1); (0,1)]`: the Mellin kernel of `1/(1+γ)`.
pub fn ratio_kernel() -> FoxHSpec {
    FoxHSpec::meijer(1, 1, &[0.0], &[0.0]).expect("static kernel")
}

/// `H^{1,0}_{0,1}[-; (0,1)]`: the Mellin kernel of `e^{-x}`.
pub fn exp_kernel() -> FoxHSpec {
    FoxHSpec::meijer(1, 0, &[], &[0.0]).expect("static kernel")
}

/// Multiplies `exp(coef_ln)` by a possibly tiny or huge kernel value
/// without overflowing the intermediate product.
pub fn log_scaled(coef_ln: f64, value: f64) -> f64 {
    if value == 0.0 {
        0.0
    } else {
        value.signum() * (coef_ln + value.abs().ln()).exp()
    }
}

/// Accumulates a closed-form sum along with the propagated absolute error
/// of its kernel evaluations.
#[derive(Debug, Default, Clone, Copy)]
pub struct TermSum {
    pub value: f64,
    pub abs_err: f64,
}

impl TermSum {
    pub fn add(&mut self, sign: f64, coef_ln: f64, kernel: &Eval) {
        let term = log_scaled(coef_ln, kernel.value);
        self.value += sign * term;
        self.abs_err += term.abs() * kernel.rel_err.max(1e-15);
    }
}

/// The bivariate shapes of the secrecy closed forms share one joint
/// factor; only the exponent offset, the scale pair and the two inner
/// kernels differ.
pub fn bivariate(
    joint_a: f64,
    s1: f64,
    s2: f64,
    kernel1: FoxHSpec,
    kernel2: FoxHSpec,
    x: f64,
    y: f64,
    context: &'static str,
) -> Result<Eval> {
    let spec = BivariateFoxHSpec {
        joint: vec![JointGamma { a: joint_a, s1, s2 }],
        kernel1,
        kernel2,
    };
    fox_h_bivariate(&spec, x, y).map_err(|e| e.in_kernel(context))
}
