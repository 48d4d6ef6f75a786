//! Special-function kernel: complex log-gamma, Meijer G, Fox H, and the
//! bivariate Fox H that the closed-form secrecy metrics are written in.
//!
//! Everything is a pure function of its inputs and safe to call from any
//! number of threads.

mod bivariate;
mod gamma;
mod quadrature;
mod univariate;

pub use bivariate::{fox_h_bivariate, fox_h_bivariate_opt, BivariateFoxHSpec, BivariateOptions, JointGamma};
pub(crate) use quadrature::panel as gl_panel;
pub use gamma::{gamma_signed, ln_gamma, ln_gamma_signed, log_gamma_complex};
pub use univariate::{
    fox_h, fox_h_leading, fox_h_opt, meijer_g, Eval, EvalDiag, EvalMethod, EvalOptions, FoxHSpec,
    GammaParam,
};
