//! Bivariate Fox H function of the form used by the secrecy closed forms:
//! a double Mellin-Barnes integral whose joint group couples the two
//! integration variables through gamma factors `Γ(1 − a − σ₁ s − σ₂ t)`,
//!
//! ```text
//! H[x, y] = 1/(2πi)² ∬  Π_j Γ(1 − a_j − σ₁ⱼ s − σ₂ⱼ t) · Φ₁(s) Φ₂(t) · x^{-s} y^{-t} ds dt
//! ```
//!
//! with `Φ₁`, `Φ₂` ordinary univariate Fox H integrands. An empty joint
//! group factorizes the double integral into the product of the two inner
//! H functions, which doubles as a validation identity.
//!
//! Contours are vertical lines placed inside each kernel's pole-free strip
//! and pulled toward the origin until every joint gamma keeps a positive
//! real part. Quadrature is a tensor product of Gauss-Legendre panels; the
//! conjugate symmetry of real-parameter integrands halves the work (outer
//! variable restricted to the upper half line, real part doubled).

use num_complex::Complex64;

use super::gamma::ln_gamma;
use super::quadrature::{panel_rule, PANEL_ORDER};
use super::univariate::{fox_h, Eval, EvalDiag, EvalMethod, FoxHSpec};
use crate::error::{invalid, Error, Result};

/// One joint factor `Γ(1 − a − s1·s − s2·t)` of the outer group.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JointGamma {
    pub a: f64,
    pub s1: f64,
    pub s2: f64,
}

/// Parameter block of the bivariate H function.
#[derive(Debug, Clone, PartialEq)]
pub struct BivariateFoxHSpec {
    pub joint: Vec<JointGamma>,
    pub kernel1: FoxHSpec,
    pub kernel2: FoxHSpec,
}

#[derive(Debug, Clone, Copy)]
pub struct BivariateOptions {
    pub rel_tol: f64,
    pub fail_tol: f64,
    pub max_refine: u32,
}

impl Default for BivariateOptions {
    fn default() -> Self {
        BivariateOptions {
            rel_tol: 1e-8,
            fail_tol: 1e-4,
            max_refine: 2,
        }
    }
}

impl BivariateFoxHSpec {
    pub fn validate(&self) -> Result<()> {
        self.kernel1.validate()?;
        self.kernel2.validate()?;
        for j in &self.joint {
            if !j.a.is_finite() || !j.s1.is_finite() || !j.s2.is_finite() {
                return Err(invalid("joint", format!("bad joint factor {j:?}")));
            }
        }
        Ok(())
    }
}

/// Kernel-side contour data reused across evaluations of one spec.
struct Axis {
    /// Quadrature nodes s = c + i·y (y over the full or half line).
    nodes: Vec<Complex64>,
    /// w · exp(L_kernel(s) − s ln(arg)) per node.
    values: Vec<Complex64>,
}

fn kernel_strip(spec: &FoxHSpec) -> (f64, f64) {
    let lo = spec.lower[..spec.m]
        .iter()
        .map(|g| -g.a / g.scale)
        .fold(f64::NEG_INFINITY, f64::max);
    let hi = spec.upper[..spec.n]
        .iter()
        .map(|g| (1.0 - g.a) / g.scale)
        .fold(f64::INFINITY, f64::min);
    (lo, hi)
}

fn kernel_decay(spec: &FoxHSpec) -> f64 {
    let num: f64 = spec.lower[..spec.m]
        .iter()
        .chain(&spec.upper[..spec.n])
        .map(|g| g.scale)
        .sum();
    let den: f64 = spec.upper[spec.n..]
        .iter()
        .chain(&spec.lower[spec.m..])
        .map(|g| g.scale)
        .sum();
    0.5 * std::f64::consts::PI * (num - den)
}

fn kernel_log(spec: &FoxHSpec, s: Complex64, ln_arg: f64) -> Complex64 {
    let mut acc = -s * ln_arg;
    for g in &spec.lower[..spec.m] {
        acc += ln_gamma(g.a + g.scale * s);
    }
    for g in &spec.upper[..spec.n] {
        acc += ln_gamma(1.0 - g.a - g.scale * s);
    }
    for g in &spec.upper[spec.n..] {
        acc -= ln_gamma(g.a + g.scale * s);
    }
    for g in &spec.lower[spec.m..] {
        acc -= ln_gamma(1.0 - g.a - g.scale * s);
    }
    acc
}

/// Contour abscissas for both axes: start from a point inside each kernel
/// strip, then shrink toward the strip floor until every joint gamma has
/// argument real part >= margin.
fn choose_contours(spec: &BivariateFoxHSpec) -> Result<(f64, f64)> {
    let pick = |strip: (f64, f64)| -> Result<(f64, f64)> {
        let (lo, hi) = strip;
        if lo >= hi {
            return Err(Error::Contour(format!(
                "kernel pole families interleave: [{lo}, {hi}]"
            )));
        }
        let lo = if lo.is_finite() { lo } else { hi - 8.0 };
        let c = if hi.is_finite() {
            0.5 * (lo + hi)
        } else {
            lo + 0.75
        };
        Ok((lo, c))
    };
    let (lo1, c1) = pick(kernel_strip(&spec.kernel1))?;
    let (lo2, c2) = pick(kernel_strip(&spec.kernel2))?;

    let feasible = |t: f64| -> bool {
        let a1 = lo1 + t * (c1 - lo1);
        let a2 = lo2 + t * (c2 - lo2);
        spec.joint
            .iter()
            .all(|j| 1.0 - j.a - j.s1 * a1 - j.s2 * a2 > 0.05)
    };
    if feasible(1.0) {
        return Ok((c1, c2));
    }
    // Bisect the largest feasible shrink factor.
    if !feasible(1e-6) {
        return Err(Error::Contour(
            "joint gamma factors exclude the kernel strips".into(),
        ));
    }
    let (mut good, mut bad) = (1e-6, 1.0);
    for _ in 0..40 {
        let mid = 0.5 * (good + bad);
        if feasible(mid) {
            good = mid;
        } else {
            bad = mid;
        }
    }
    let t = 0.9 * good;
    Ok((lo1 + t * (c1 - lo1), lo2 + t * (c2 - lo2)))
}

fn build_axis(
    spec: &FoxHSpec,
    c: f64,
    ln_arg: f64,
    h: f64,
    tol: f64,
    full_line: bool,
) -> Axis {
    let decay = kernel_decay(spec).max(0.3);
    let reach = ((tol.recip().ln() + 8.0) / decay).max(3.0 * h);
    let panels = (reach / h).ceil() as usize;
    let (gl_nodes, gl_weights) = panel_rule();
    let mut nodes = Vec::with_capacity(panels * PANEL_ORDER * 2);
    let mut values = Vec::with_capacity(nodes.capacity());
    let mut emit = |y: f64, w: f64| {
        let s = Complex64::new(c, y);
        nodes.push(s);
        values.push(kernel_log(spec, s, ln_arg).exp() * w);
    };
    for p in 0..panels {
        let a = p as f64 * h;
        for (x, w) in gl_nodes.iter().zip(gl_weights) {
            let y = a + 0.5 * h * (x + 1.0);
            let wy = 0.5 * h * w;
            emit(y, wy);
            if full_line {
                emit(-y, wy);
            }
        }
    }
    Axis { nodes, values }
}

fn tensor_sum(spec: &BivariateFoxHSpec, s_axis: &Axis, t_axis: &Axis) -> f64 {
    let mut total = Complex64::new(0.0, 0.0);
    match spec.joint.len() {
        1 => {
            let j = spec.joint[0];
            let w0 = Complex64::new(1.0 - j.a, 0.0);
            for (t, tv) in t_axis.nodes.iter().zip(&t_axis.values) {
                let base = w0 - j.s2 * t;
                let mut inner = Complex64::new(0.0, 0.0);
                for (s, sv) in s_axis.nodes.iter().zip(&s_axis.values) {
                    inner += ln_gamma(base - j.s1 * s).exp() * sv;
                }
                total += inner * tv;
            }
        }
        _ => {
            for (t, tv) in t_axis.nodes.iter().zip(&t_axis.values) {
                let mut inner = Complex64::new(0.0, 0.0);
                for (s, sv) in s_axis.nodes.iter().zip(&s_axis.values) {
                    let mut joint = Complex64::new(0.0, 0.0);
                    for j in &spec.joint {
                        joint += ln_gamma(Complex64::new(1.0 - j.a, 0.0) - j.s1 * s - j.s2 * t);
                    }
                    inner += joint.exp() * sv;
                }
                total += inner * tv;
            }
        }
    }
    // Upper half line in t, full line in s; conjugate symmetry doubles Re.
    2.0 * total.re / (4.0 * std::f64::consts::PI * std::f64::consts::PI)
}

/// Evaluates the bivariate H at positive real arguments.
pub fn fox_h_bivariate(spec: &BivariateFoxHSpec, x: f64, y: f64) -> Result<Eval> {
    fox_h_bivariate_opt(spec, x, y, &BivariateOptions::default())
}

pub fn fox_h_bivariate_opt(
    spec: &BivariateFoxHSpec,
    x: f64,
    y: f64,
    opts: &BivariateOptions,
) -> Result<Eval> {
    spec.validate()?;
    if !(x > 0.0 && y > 0.0) {
        return Err(invalid("x,y", "bivariate arguments must be positive"));
    }
    if spec.joint.is_empty() {
        // Separable: the double integral factorizes exactly.
        let k1 = fox_h(&spec.kernel1, x)?;
        let k2 = fox_h(&spec.kernel2, y)?;
        return Ok(Eval {
            value: k1.value * k2.value,
            rel_err: k1.rel_err + k2.rel_err,
            diag: EvalDiag {
                method: EvalMethod::Contour,
                contour: k1.diag.contour,
                height: k1.diag.height.max(k2.diag.height),
                panels: k1.diag.panels + k2.diag.panels,
                note: "separable (empty joint group)".into(),
            },
        });
    }

    let (c1, c2) = choose_contours(spec)?;
    let (ln_x, ln_y) = (x.ln(), y.ln());
    let h1 = (12.0 / ln_x.abs().max(1.0)).clamp(0.25, 1.0);
    let h2 = (12.0 / ln_y.abs().max(1.0)).clamp(0.25, 1.0);

    let eval_at = |h1: f64, h2: f64| -> f64 {
        let s_axis = build_axis(&spec.kernel1, c1, ln_x, h1, opts.rel_tol, true);
        let t_axis = build_axis(&spec.kernel2, c2, ln_y, h2, opts.rel_tol, false);
        tensor_sum(spec, &s_axis, &t_axis)
    };

    let mut value = eval_at(h1, h2);
    let mut rel_err = f64::INFINITY;
    let (mut h1, mut h2) = (h1, h2);
    for _ in 0..opts.max_refine {
        h1 *= 0.5;
        h2 *= 0.5;
        let finer = eval_at(h1, h2);
        rel_err = (value - finer).abs() / finer.abs().max(1e-300);
        value = finer;
        if rel_err <= opts.rel_tol {
            break;
        }
    }
    if rel_err > opts.fail_tol {
        return Err(Error::Convergence {
            what: "bivariate mellin-barnes quadrature",
            value,
            achieved: rel_err,
            target: opts.fail_tol,
        });
    }
    Ok(Eval {
        value,
        rel_err,
        diag: EvalDiag {
            method: EvalMethod::Contour,
            contour: c1,
            height: c2,
            panels: 0,
            note: format!("contours Re s = {c1:.4}, Re t = {c2:.4}"),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfun::univariate::GammaParam;

    #[test]
    fn separable_joint_group() {
        // Empty joint group must equal the product of the inner kernels:
        // here e^{-x} * 1/(1+y).
        let spec = BivariateFoxHSpec {
            joint: vec![],
            kernel1: FoxHSpec::meijer(1, 0, &[], &[0.0]).unwrap(),
            kernel2: FoxHSpec::meijer(1, 1, &[0.0], &[0.0]).unwrap(),
        };
        let got = fox_h_bivariate(&spec, 1.3, 0.6).unwrap().value;
        let want = (-1.3f64).exp() / 1.6;
        assert!((got - want).abs() < 1e-9 * want);
    }

    #[test]
    fn joint_exponential_pair_quadrature() {
        // ∫_0^∞ γ^ρ e^{-aγ^{1/2}} e^{-bγ^{1/2}} /(1+γ) dγ written as a
        // bivariate H with kernels 1/(1+γ) and e^{-b√γ}:
        //   2 a^{-2ρ-2} H[(joint: 1-a0=2ρ+2, σ=(2,1)); Γ(s)Γ(1-s); Γ(t)]
        // at x = 1/a², y = b/a. Oracle: direct numerical integration.
        let (rho, a, b) = (1.0_f64, 1.1_f64, 0.8_f64);
        let spec = BivariateFoxHSpec {
            joint: vec![JointGamma {
                a: -1.0 - 2.0 * rho,
                s1: 2.0,
                s2: 1.0,
            }],
            kernel1: FoxHSpec::meijer(1, 1, &[0.0], &[0.0]).unwrap(),
            kernel2: FoxHSpec::new(1, 0, vec![], vec![GammaParam::new(0.0, 1.0)]).unwrap(),
        };
        let h = fox_h_bivariate(&spec, 1.0 / (a * a), b / a).unwrap().value;
        let closed = 2.0 * a.powf(-2.0 * rho - 2.0) * h;

        // Oracle via a simple trapezoid-free marching quadrature.
        let f = |g: f64| g.powf(rho) * (-(a + b) * g.sqrt()).exp() / (1.0 + g);
        let mut oracle = 0.0;
        let n = 400_000;
        let dt = 60.0 / n as f64;
        for i in 0..n {
            let t = (i as f64 + 0.5) * dt; // γ = t²
            oracle += 2.0 * t * f(t * t) * dt;
        }
        assert!(
            (closed - oracle).abs() < 5e-6 * oracle,
            "closed {closed} vs oracle {oracle}"
        );
    }
}
