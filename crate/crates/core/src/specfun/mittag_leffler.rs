//! One-parameter Mittag-Leffler function E_γ(z) = Σ zⁿ / Γ(γn + 1).
//!
//! Small arguments (|z| ≤ 1) are summed directly with a certified remainder
//! bound. Everything else goes through numerical inversion of the Laplace
//! transform s^(γ-1) / (s^γ - z) along an optimal parabolic contour,
//! following Garrappa's OPC scheme (SIAM J. Numer. Anal. 53, 2015): the
//! contour is fitted between the singularities of the transform, residues
//! of the poles left to its right are added explicitly, and the trapezoidal
//! step and node count are chosen from a-priori error estimates.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::gamma::gamma_fn;
use crate::error::{Error, Result};

/// Accuracy knobs for [`mittag_leffler`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct MLConfig {
    /// Absolute error that every evaluation must certify.
    pub target_abs_tol: f64,
    /// Cap on the number of Taylor terms before falling back to the contour.
    pub max_series_terms: usize,
}

impl Default for MLConfig {
    fn default() -> Self {
        Self {
            target_abs_tol: 1e-12,
            max_series_terms: 500,
        }
    }
}

impl MLConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.target_abs_tol > 0.0) || !self.target_abs_tol.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "target_abs_tol must be positive, got {}",
                self.target_abs_tol
            )));
        }
        if self.max_series_terms == 0 {
            return Err(Error::InvalidArgument(
                "max_series_terms must be at least 1".into(),
            ));
        }
        Ok(())
    }
}

// Accuracy the contour parameters aim for; relaxed step by step (up to the
// configured tolerance) when the node count would otherwise explode.
const CONTOUR_LOG_EPS: f64 = -34.538_776_394_910_684; // ln(1e-15)
const LOG_MACHINE_EPS: f64 = -36.043_653_389_117_154; // ln(2^-52)
const MAX_NODES: usize = 200;

/// E_γ(z) for γ > 0 and complex z.
pub fn mittag_leffler(gamma: f64, z: Complex64, cfg: &MLConfig) -> Result<Complex64> {
    if !(gamma > 0.0) || !gamma.is_finite() {
        return Err(Error::InvalidOrder(gamma));
    }
    if !z.re.is_finite() || !z.im.is_finite() {
        return Err(Error::InvalidArgument(format!("non-finite argument {z}")));
    }
    cfg.validate()?;

    if z.norm() < 1e-15 {
        return Ok(Complex64::new(1.0, 0.0) + z / gamma_fn(gamma + 1.0)?);
    }
    if gamma == 1.0 {
        return Ok(z.exp());
    }
    if z.norm() <= 1.0 {
        if let Some(v) = taylor(gamma, z, cfg)? {
            return Ok(v);
        }
    }
    let mut value = contour(gamma, z, cfg)?;
    if z.im == 0.0 {
        value.im = 0.0;
    }
    Ok(value)
}

/// Convenience wrapper for real arguments (imaginary part discarded).
pub fn mittag_leffler_real(gamma: f64, x: f64, cfg: &MLConfig) -> Result<f64> {
    mittag_leffler(gamma, Complex64::new(x, 0.0), cfg).map(|v| v.re)
}

/// Direct summation; `None` when the remainder cannot be certified within
/// `cfg.max_series_terms` terms.
fn taylor(gamma: f64, z: Complex64, cfg: &MLConfig) -> Result<Option<Complex64>> {
    let r = z.norm();
    let mut sum = Complex64::new(0.0, 0.0);
    let mut zn = Complex64::new(1.0, 0.0);
    for n in 0..cfg.max_series_terms {
        let arg = gamma * n as f64 + 1.0;
        let g = match gamma_fn(arg) {
            Ok(g) => g,
            // 1/Γ underflows: every further term is below 1e-300
            Err(Error::Overflow(_)) => return Ok(Some(sum)),
            Err(e) => return Err(e),
        };
        sum += zn / g;
        // Γ is increasing beyond 1.4616, so the term ratio
        // |z| Γ(γn+1) / Γ(γ(n+1)+1) is non-increasing from here on.
        if arg >= 1.5 {
            let next = match gamma_fn(arg + gamma) {
                Ok(v) => v,
                Err(Error::Overflow(_)) => return Ok(Some(sum)),
                Err(e) => return Err(e),
            };
            let ratio = r * g / next;
            if ratio < 1.0 {
                let tail = zn.norm() * r / next / (1.0 - ratio);
                if tail <= 1e-17 || (n + 1 == cfg.max_series_terms && tail <= cfg.target_abs_tol) {
                    return Ok(Some(sum));
                }
            }
        }
        zn *= z;
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy)]
struct ContourParams {
    mu: f64,
    h: f64,
    nodes: usize,
}

fn contour(gamma: f64, lambda: Complex64, cfg: &MLConfig) -> Result<Complex64> {
    // Poles of s^(γ-1)/(s^γ - λ): s* = |λ|^(1/γ) exp(i(θ + 2kπ)/γ) on the
    // principal sheet.
    let theta = lambda.arg();
    let kmin = (-gamma / 2.0 - theta / (2.0 * PI)).ceil() as i64;
    let kmax = (gamma / 2.0 - theta / (2.0 * PI)).floor() as i64;
    let modulus = lambda.norm().powf(1.0 / gamma);
    let mut poles: Vec<(f64, Complex64)> = (kmin..=kmax)
        .map(|k| {
            let s = Complex64::from_polar(modulus, (theta + 2.0 * k as f64 * PI) / gamma);
            ((s.re + s.norm()) / 2.0, s)
        })
        .filter(|(phi, _)| *phi > 1e-15)
        .collect();
    poles.sort_by(|a, b| a.0.total_cmp(&b.0));

    // singularities: origin (branch point) then poles sorted by phi
    let mut sing: Vec<Complex64> = vec![Complex64::new(0.0, 0.0)];
    let mut phi: Vec<f64> = vec![0.0];
    for (p, s) in &poles {
        phi.push(*p);
        sing.push(*s);
    }
    let n_sing = sing.len();
    // strength of the singularity at the left (p) and right (q) end of each region
    let mut p = vec![1.0; n_sing];
    p[0] = 0.0;
    let mut q = vec![1.0; n_sing];
    q[n_sing - 1] = f64::INFINITY;
    phi.push(f64::INFINITY);

    let mut log_eps = CONTOUR_LOG_EPS;
    let log_tol = cfg.target_abs_tol.ln();
    loop {
        let admissible: Vec<usize> = (0..n_sing)
            .filter(|&j| phi[j] < log_eps - LOG_MACHINE_EPS && phi[j] < phi[j + 1])
            .collect();
        let mut best: Option<(usize, ContourParams)> = None;
        for &j in &admissible {
            let params = if j + 1 < n_sing {
                param_bounded(phi[j], phi[j + 1], p[j], q[j], log_eps)
            } else {
                param_unbounded(phi[j], p[j], log_eps)
            };
            if let Some(params) = params {
                if best.as_ref().is_none_or(|(_, b)| params.nodes < b.nodes) {
                    best = Some((j, params));
                }
            }
        }
        match best {
            Some((region, params)) if params.nodes <= MAX_NODES => {
                let integral = trapezoid(gamma, lambda, params);
                let residues: Complex64 = sing[region + 1..].iter().map(|s| s.exp() / gamma).sum();
                return Ok(integral + residues);
            }
            _ => {
                log_eps += std::f64::consts::LN_10;
                if log_eps > log_tol + 1e-9 {
                    return Err(Error::NonConvergence(format!(
                        "Mittag-Leffler contour for gamma = {gamma}, z = {lambda} cannot reach tolerance {:e}",
                        cfg.target_abs_tol
                    )));
                }
            }
        }
    }
}

fn trapezoid(gamma: f64, lambda: Complex64, c: ContourParams) -> Complex64 {
    let n = c.nodes as i64;
    let mut acc = Complex64::new(0.0, 0.0);
    for k in -n..=n {
        let u = c.h * k as f64;
        let z = c.mu * Complex64::new(1.0, u).powi(2);
        let dz = Complex64::new(-2.0 * c.mu * u, 2.0 * c.mu);
        let f = z.powf(gamma - 1.0) / (z.powf(gamma) - lambda) * dz;
        acc += z.exp() * f;
    }
    acc * c.h / Complex64::new(0.0, 2.0 * PI)
}

/// Contour parameters for a region bounded on the right by a pole.
fn param_bounded(phi_j: f64, phi_j1: f64, pj: f64, qj: f64, log_eps: f64) -> Option<ContourParams> {
    const FAC: f64 = 1.01;
    let f_max = (log_eps - LOG_MACHINE_EPS).exp();

    let sq_j = phi_j.sqrt();
    let threshold = 2.0 * (log_eps - LOG_MACHINE_EPS).sqrt();
    let sq_j1 = phi_j1.sqrt().min(threshold - sq_j);

    let (sqb_j, sqb_j1, f_bar) = if pj < 1e-14 && qj < 1e-14 {
        (sq_j, sq_j1, 1.0)
    } else if pj < 1e-14 {
        let f_min = if sq_j > 0.0 {
            FAC * (sq_j / (sq_j1 - sq_j)).powf(qj)
        } else {
            FAC
        };
        if f_min >= f_max {
            return None;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fq = f_bar.powf(-1.0 / qj);
        (sq_j, (2.0 * sq_j1 - fq * sq_j) / (2.0 + fq), f_bar)
    } else if qj < 1e-14 {
        let f_min = FAC * (sq_j1 / (sq_j1 - sq_j)).powf(pj);
        if f_min >= f_max {
            return None;
        }
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / pj);
        ((2.0 * sq_j + fp * sq_j1) / (2.0 - fp), sq_j1, f_bar)
    } else {
        let f_min = FAC * (sq_j + sq_j1) / (sq_j1 - sq_j).powf(pj.max(qj));
        if f_min >= f_max {
            return None;
        }
        let f_min = f_min.max(1.5);
        let f_bar = f_min + f_min / f_max * (f_max - f_min);
        let fp = f_bar.powf(-1.0 / pj);
        let fq = f_bar.powf(-1.0 / qj);
        let w = -phi_j1 / log_eps;
        let den = 2.0 + w - (1.0 + w) * fp + fq;
        let a = ((2.0 + w + fq) * sq_j + fp * sq_j1) / den;
        let b = (-(1.0 + w) * fq * sq_j + (2.0 + w - (1.0 + w) * fp) * sq_j1) / den;
        (a, b, f_bar)
    };

    let log_eps = log_eps - f_bar.ln();
    let w = -sqb_j1 * sqb_j1 / log_eps;
    let mu = (((1.0 + w) * sqb_j + sqb_j1) / (2.0 + w)).powi(2);
    let h = -2.0 * PI / log_eps * (sqb_j1 - sqb_j) / ((1.0 + w) * sqb_j + sqb_j1);
    let nodes = ((1.0 - log_eps / mu).sqrt() / h).ceil();
    finite_params(mu, h, nodes)
}

/// Contour parameters for the right-unbounded region.
fn param_unbounded(phi_j: f64, pj: f64, log_eps: f64) -> Option<ContourParams> {
    let sq_phi_j = phi_j.sqrt();
    let mut phibar = if phi_j > 0.0 { phi_j * 1.01 } else { 0.01 };
    let mut sq_phibar = phibar.sqrt();

    let (f_min, f_max, f_tar) = (1.0_f64, 10.0_f64, 5.0_f64);
    let (mut nodes, mut a, mut sq_mu);
    let mut guard = 0;
    loop {
        let log_eps_phi = log_eps / phibar;
        nodes = (phibar / PI * (1.0 - 1.5 * log_eps_phi + (1.0 - 2.0 * log_eps_phi).sqrt())).ceil();
        a = PI * nodes / phibar;
        sq_mu = sq_phibar * (4.0 - a).abs() / (7.0 - (1.0 + 12.0 * a).sqrt()).abs();
        let fbar = ((sq_phibar - sq_phi_j) / sq_mu).powf(-pj);
        if pj < 1e-14 || (f_min < fbar && fbar < f_max) {
            break;
        }
        sq_phibar = f_tar.powf(-1.0 / pj) * sq_mu + sq_phi_j;
        phibar = sq_phibar * sq_phibar;
        guard += 1;
        if guard > 100 {
            return None;
        }
    }
    let mut mu = sq_mu * sq_mu;
    let mut h = (-3.0 * a - 2.0 + 2.0 * (1.0 + 12.0 * a).sqrt()) / (4.0 - a) / nodes;

    // keep round-off under control
    let threshold = log_eps - LOG_MACHINE_EPS;
    if mu > threshold {
        let qv = if pj.abs() < 1e-14 {
            0.0
        } else {
            f_tar.powf(-1.0 / pj) * mu.sqrt()
        };
        let phibar = (qv + phi_j.sqrt()).powi(2);
        if phibar < threshold {
            let w = (LOG_MACHINE_EPS / (LOG_MACHINE_EPS - log_eps)).sqrt();
            let u = (-phibar / LOG_MACHINE_EPS).sqrt();
            mu = threshold;
            nodes = (w * log_eps / 2.0 / PI / (u * w - 1.0)).ceil();
            h = w / nodes;
        } else {
            return None;
        }
    }
    finite_params(mu, h, nodes)
}

fn finite_params(mu: f64, h: f64, nodes: f64) -> Option<ContourParams> {
    if mu.is_finite() && mu > 0.0 && h.is_finite() && h > 0.0 && nodes.is_finite() && nodes >= 1.0 {
        Some(ContourParams {
            mu,
            h,
            nodes: nodes as usize,
        })
    } else {
        None
    }
}
