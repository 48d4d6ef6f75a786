//! Secrecy metrics for RIS-assisted mixed RF-UOWC networks.
//!
//! The library evaluates closed-form average secrecy capacity (ASC), secrecy
//! outage probability (SOP, lower-bound form), probability of strictly
//! positive secrecy capacity (SPSC) and effective secrecy throughput (EST)
//! for a dual-hop network whose first hop is an RIS-reflected RF link under
//! α-µ fading and whose second hop is an RIS-reflected underwater optical
//! link under mixture Exponential-Generalized-Gamma (EGG) turbulence with
//! pointing errors. Three eavesdropping scenarios are covered: RF tap,
//! underwater optical tap, and both at once.
//!
//! Every closed form is backed by two independent checks: adaptive
//! quadrature of its defining integral, and a Monte Carlo channel simulator
//! with deterministic parallel streams. The special-function layer
//! (`specfun`) evaluates the Meijer G / Fox H / bivariate Fox H kernels the
//! closed forms are written in.

pub mod channels;
pub mod cli;
pub mod error;
pub mod metrics;
pub mod montecarlo;
pub mod presets;
pub mod quad;
pub mod specfun;

pub use error::{Error, Result};
