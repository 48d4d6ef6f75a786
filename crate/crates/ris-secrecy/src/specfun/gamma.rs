//! Complex log-gamma and signed real gamma helpers.
//!
//! The Mellin-Barnes engine evaluates products of up to a dozen gamma factors
//! per contour node, all in log space, so everything here is built around
//! `ln_gamma` of a complex argument. The implementation is the classic
//! shift-and-Stirling scheme: recur the argument up until `Re z >= 10`, then
//! apply the Stirling series with Bernoulli coefficients through `B16`
//! (truncation below 1e-16 there). Arguments left of `Re z = 0.5` go through
//! the reflection formula with a log-domain `ln sin` that cannot overflow for
//! large imaginary parts.

use num_complex::Complex64;

use crate::error::{Error, Result};

const LN_2PI: f64 = 1.837_877_066_409_345_5;
const STIRLING_SHIFT: f64 = 10.0;

/// B(2k) / (2k (2k-1)) for k = 1..=8, the Stirling series coefficients.
const STIRLING_COEFFS: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

/// Principal-branch log-gamma for complex arguments.
///
/// Fails at the poles (non-positive integers on the real axis). Relative
/// accuracy is a few ulps for |z| up to well beyond 50.
pub fn log_gamma_complex(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 && z.re == z.re.floor() {
        return Err(Error::GammaPole(z.re));
    }
    Ok(ln_gamma(z))
}

/// Unchecked complex log-gamma. Callers guarantee `z` is not a pole;
/// contour placement in the engine does exactly that.
pub fn ln_gamma(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        // Reflection: ln Γ(z) = ln π − ln sin(πz) − ln Γ(1−z).
        let lnpi = Complex64::new(std::f64::consts::PI.ln(), 0.0);
        return lnpi - ln_sin_pi(z) - ln_gamma(Complex64::new(1.0, 0.0) - z);
    }
    let mut shift = Complex64::new(0.0, 0.0);
    let mut w = z;
    while w.re < STIRLING_SHIFT {
        shift += w.ln();
        w += 1.0;
    }
    let mut series = Complex64::new(0.0, 0.0);
    let inv = 1.0 / w;
    let inv2 = inv * inv;
    let mut p = inv;
    for c in STIRLING_COEFFS {
        series += p * c;
        p *= inv2;
    }
    (w - 0.5) * w.ln() - w + 0.5 * LN_2PI + series - shift
}

/// log(sin(pi z)) stable for large |Im z|, principal values per factor.
///
/// sin(πz) = −exp(−iπz) (1 − exp(2iπz)) / (2i) for Im z > 0; mirrored below.
/// The exp of the result is exactly sin(πz); the branch chosen keeps the
/// reflection-formula output continuous off the real axis, which is all the
/// log-space gamma products require (they are exponentiated afterwards).
fn ln_sin_pi(z: Complex64) -> Complex64 {
    use std::f64::consts::PI;
    if z.im.abs() < 1.0 {
        let s = (z * PI).sin();
        return s.ln();
    }
    let i = Complex64::new(0.0, 1.0);
    let ln_2i = Complex64::new(std::f64::consts::LN_2, std::f64::consts::FRAC_PI_2);
    if z.im > 0.0 {
        // |exp(2 i π z)| = exp(−2π Im z) < 1: the log1p-style term is tiny.
        let small = (Complex64::new(0.0, 2.0 * PI) * z).exp();
        -i * PI * z + (Complex64::new(1.0, 0.0) - small).ln() - ln_2i + i * PI
    } else {
        let small = (Complex64::new(0.0, -2.0 * PI) * z).exp();
        i * PI * z + (Complex64::new(1.0, 0.0) - small).ln() - ln_2i
    }
}

/// Real log-gamma with sign: returns (sign of Γ(x), ln |Γ(x)|).
///
/// Needed by residue expansions, which evaluate gamma at negative
/// non-integer arguments such as Γ(-1/2).
pub fn ln_gamma_signed(x: f64) -> Result<(f64, f64)> {
    if x > 0.0 {
        return Ok((1.0, statrs::function::gamma::ln_gamma(x)));
    }
    if x == x.floor() {
        return Err(Error::GammaPole(x));
    }
    // Γ(x) Γ(1−x) = π / sin(πx)
    use std::f64::consts::PI;
    let s = (PI * x).sin();
    let ln_abs = PI.ln() - s.abs().ln() - statrs::function::gamma::ln_gamma(1.0 - x);
    Ok((s.signum(), ln_abs))
}

/// Real gamma at possibly negative non-integer arguments.
pub fn gamma_signed(x: f64) -> Result<f64> {
    let (sign, ln) = ln_gamma_signed(x)?;
    Ok(sign * ln.exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lg(re: f64, im: f64) -> Complex64 {
        ln_gamma(Complex64::new(re, im))
    }

    #[test]
    fn known_values() {
        // Γ(1) = 1, Γ(1/2) = sqrt(pi), Γ(5) = 24
        assert!(lg(1.0, 0.0).norm() < 1e-14);
        assert!((lg(0.5, 0.0).re - 0.5 * std::f64::consts::PI.ln()).abs() < 1e-14);
        assert!((lg(5.0, 0.0).re - 24.0f64.ln()).abs() < 1e-13);
    }

    #[test]
    fn poles_rejected() {
        assert!(log_gamma_complex(Complex64::new(0.0, 0.0)).is_err());
        assert!(log_gamma_complex(Complex64::new(-3.0, 0.0)).is_err());
        assert!(log_gamma_complex(Complex64::new(-3.5, 0.0)).is_ok());
    }

    #[test]
    fn recurrence_on_complex_grid() {
        // exp(lnΓ(z+1) − lnΓ(z)) = z to 1e-12 relative.
        for &re in &[-8.3, -2.7, -0.4, 0.3, 1.0, 4.5, 17.2, 43.0] {
            for &im in &[-25.0, -3.2, -0.5, 0.0, 0.7, 6.1, 38.0] {
                let z = Complex64::new(re, im);
                if z.im == 0.0 && z.re <= 0.0 {
                    continue;
                }
                let ratio = (ln_gamma(z + 1.0) - ln_gamma(z)).exp();
                assert!(
                    (ratio - z).norm() <= 1e-12 * z.norm().max(1.0),
                    "recurrence failed at {z}: {ratio}"
                );
            }
        }
    }

    #[test]
    fn modulus_identity_on_imag_axis() {
        // |Γ(1+iy)|^2 = πy / sinh(πy)
        for &y in &[0.1, 0.9, 3.0, 12.0, 30.0] {
            let lhs = 2.0 * lg(1.0, y).re;
            let pi_y = std::f64::consts::PI * y;
            let rhs = (pi_y / pi_y.sinh()).ln();
            assert!((lhs - rhs).abs() < 1e-12 * rhs.abs().max(1.0), "y={y}");
        }
    }

    #[test]
    fn matches_real_ln_gamma() {
        for &x in &[0.05, 0.31, 1.0, 2.5, 9.99, 50.0, 171.0] {
            let a = lg(x, 0.0).re;
            let b = statrs::function::gamma::ln_gamma(x);
            assert!((a - b).abs() <= 1e-13 * b.abs().max(1.0), "x={x}: {a} vs {b}");
        }
    }

    #[test]
    fn signed_gamma_negative_args() {
        // Γ(-1/2) = -2 sqrt(pi), Γ(-3/2) = 4 sqrt(pi) / 3
        let s = std::f64::consts::PI.sqrt();
        assert!((gamma_signed(-0.5).unwrap() + 2.0 * s).abs() < 1e-12);
        assert!((gamma_signed(-1.5).unwrap() - 4.0 * s / 3.0).abs() < 1e-12);
        assert!(gamma_signed(-2.0).is_err());
    }

    #[test]
    fn reflection_large_imaginary() {
        // Recurrence through the reflection region with large |Im|.
        let z = Complex64::new(-0.3, 44.0);
        let ratio = (ln_gamma(z + 1.0) - ln_gamma(z)).exp();
        assert!((ratio - z).norm() < 1e-12 * z.norm());
    }
}
