//! Extremizer radial densities (MaxEnt, MinInf, MaxTent) constructed from
//! moment constraints, with entropic moments, radial expectation values and
//! information functionals.
//!
//! All closed-form parameters are assembled in log space; pointwise
//! evaluation goes through `log_eval` so that heavy tails and compact-edge
//! zeros never overflow.

use crate::error::{Error, Result};
use crate::numerics::{
    integrate_radial, log_beta, log_gamma, QuadratureSpec, Support,
};

const LN_PI: f64 = 1.144_729_885_849_400_2;
const LN_2: f64 = std::f64::consts::LN_2;

/// System under study: dimension, particle count, spin multiplicity q = 2s+1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SystemSpec {
    pub d: u32,
    pub n_particles: f64,
    pub spin_multiplicity: u32,
}

impl SystemSpec {
    pub fn new(d: u32, n_particles: f64, spin_multiplicity: u32) -> Result<Self> {
        if d < 1 {
            return Err(Error::domain("dimension d must be >= 1"));
        }
        if !(n_particles > 0.0) {
            return Err(Error::domain(format!(
                "particle number N must be positive, got {n_particles}"
            )));
        }
        if spin_multiplicity < 1 {
            return Err(Error::domain("spin multiplicity q must be >= 1"));
        }
        Ok(SystemSpec {
            d,
            n_particles,
            spin_multiplicity,
        })
    }

    /// Electrons in d = 3: q = 2.
    pub fn electrons(n: f64) -> Result<Self> {
        SystemSpec::new(3, n, 2)
    }
}

/// A single radial moment constraint <r^alpha> = value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Constraint {
    pub alpha: f64,
    pub value: f64,
}

impl Constraint {
    pub fn new(alpha: f64, value: f64) -> Result<Self> {
        if !(value > 0.0) {
            return Err(Error::domain(format!(
                "constraint value <r^{alpha}> must be positive, got {value}"
            )));
        }
        Ok(Constraint { alpha, value })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    MaxEnt,
    MinInf,
    MaxTentSubcritical,
    MaxTentCompact,
}

/// Family-specific closed-form parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Params {
    /// rho(r) = exp(-lambda - mu r^alpha)
    MaxEnt { lambda: f64, mu: f64 },
    /// rho(r) = exp(log_amplitude - rate * r)
    MinInf { log_amplitude: f64, rate: f64 },
    /// rho(r) = C [(a^alpha ± r^alpha)/t]^{1/(t-1)}; `log_amplitude` = ln C,
    /// `edge` = a. The sign is picked by the family tag.
    MaxTent { log_amplitude: f64, edge: f64 },
}

/// How a moment was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MomentMethod {
    Analytic,
    Quadrature,
}

/// Entropic moment W_n = ∫ rho^n d^d r.
#[derive(Debug, Clone, Copy)]
pub struct MomentResult {
    pub order: f64,
    pub value: f64,
    pub method: MomentMethod,
}

/// An immutable constructed extremizer density.
#[derive(Debug, Clone)]
pub struct ExtremizerDensity {
    pub family: Family,
    pub d: u32,
    pub n_particles: f64,
    pub constraint: Constraint,
    /// Tsallis parameter, present only for the MaxTent families.
    pub t: Option<f64>,
    pub params: Params,
    pub support: Support,
}

/// ln of the d-dimensional solid angle factor 2 pi^{d/2} / Gamma(d/2).
pub fn log_angular_factor(d: u32) -> f64 {
    LN_2 + 0.5 * d as f64 * LN_PI - log_gamma(0.5 * d as f64).unwrap()
}

/// MaxEnt density e^{-lambda - mu r^alpha} for the constraints (N, <r^alpha>).
pub fn build_maxent(sys: SystemSpec, c: Constraint) -> Result<ExtremizerDensity> {
    if !(c.alpha > 0.0) {
        return Err(Error::domain(format!(
            "MaxEnt requires alpha > 0, got {}",
            c.alpha
        )));
    }
    let d = sys.d as f64;
    let n = sys.n_particles;
    let mu = d * n / (c.alpha * c.value);
    // lambda from the normalization integral
    // N = e^{-lambda} * Omega_d * Gamma(d/alpha) / (alpha mu^{d/alpha}).
    let lambda = log_angular_factor(sys.d) + log_gamma(d / c.alpha)? - c.alpha.ln()
        - (d / c.alpha) * mu.ln()
        - n.ln();
    Ok(ExtremizerDensity {
        family: Family::MaxEnt,
        d: sys.d,
        n_particles: n,
        constraint: c,
        t: None,
        params: Params::MaxEnt { lambda, mu },
        support: Support::SemiInfinite,
    })
}

/// Fisher-minimizing exponential density for the constraints (N, <r^{-1}>).
pub fn build_mininf(sys: SystemSpec, r_inv: f64) -> Result<ExtremizerDensity> {
    if sys.d < 2 {
        return Err(Error::domain(
            "MinInf requires d >= 2 (decay rate carries a factor d-1)",
        ));
    }
    if !(r_inv > 0.0) {
        return Err(Error::domain(format!(
            "MinInf requires <r^-1> > 0, got {r_inv}"
        )));
    }
    let d = sys.d as f64;
    let n = sys.n_particles;
    let rate = (d - 1.0) * r_inv / n;
    let log_amplitude = -d * LN_2 + 0.5 * (1.0 - d) * LN_PI + d * (d - 1.0).ln()
        - log_gamma(0.5 * (d + 1.0))?
        + (1.0 - d) * n.ln()
        + d * r_inv.ln();
    Ok(ExtremizerDensity {
        family: Family::MinInf,
        d: sys.d,
        n_particles: n,
        constraint: Constraint {
            alpha: -1.0,
            value: r_inv,
        },
        t: None,
        params: Params::MinInf {
            log_amplitude,
            rate,
        },
        support: Support::SemiInfinite,
    })
}

fn check_gamma_arg(name: &'static str, value: f64) -> Result<f64> {
    if value > 0.0 {
        Ok(value)
    } else {
        Err(Error::GammaDomain { name, value })
    }
}

/// Tsallis maximizer with heavy tail, 0 < t < 1, alpha > 3(1-t)/t, d = 3.
pub fn build_maxtent_subcritical(
    sys: SystemSpec,
    c: Constraint,
    t: f64,
) -> Result<ExtremizerDensity> {
    if sys.d != 3 {
        return Err(Error::domain("MaxTent densities are defined for d = 3 only"));
    }
    if !(t > 0.0 && t < 1.0) {
        return Err(Error::domain(format!(
            "subcritical MaxTent requires 0 < t < 1, got t = {t}"
        )));
    }
    if !(c.alpha > 3.0 * (1.0 - t) / t) {
        return Err(Error::domain(format!(
            "subcritical MaxTent requires alpha > 3(1-t)/t = {}, got alpha = {}",
            3.0 * (1.0 - t) / t,
            c.alpha
        )));
    }
    let alpha = c.alpha;
    let n = sys.n_particles;
    let s = 1.0 / (t - 1.0);
    check_gamma_arg("1/(1-t) - 3/alpha", 1.0 / (1.0 - t) - 3.0 / alpha)?;
    let tail = check_gamma_arg("t/(1-t) - 3/alpha", t / (1.0 - t) - 3.0 / alpha)?;
    // a^alpha from the constraint ratio <r^alpha>/N.
    let a_pow = alpha * c.value / (3.0 * n) * tail;
    let log_edge = a_pow.ln() / alpha;
    let log_amplitude = n.ln() + alpha.ln() + s * t.ln()
        - (3.0 + alpha * s) * log_edge
        - (LN_2 * 2.0 + LN_PI)
        - log_beta(3.0 / alpha, 1.0 / (1.0 - t) - 3.0 / alpha)?;
    Ok(ExtremizerDensity {
        family: Family::MaxTentSubcritical,
        d: 3,
        n_particles: n,
        constraint: c,
        t: Some(t),
        params: Params::MaxTent {
            log_amplitude,
            edge: log_edge.exp(),
        },
        support: Support::SemiInfinite,
    })
}

/// Tsallis maximizer with compact support [0, a], t > 1, alpha > 0, d = 3.
pub fn build_maxtent_compact(
    sys: SystemSpec,
    c: Constraint,
    t: f64,
) -> Result<ExtremizerDensity> {
    if sys.d != 3 {
        return Err(Error::domain("MaxTent densities are defined for d = 3 only"));
    }
    if !(t > 1.0) {
        return Err(Error::domain(format!(
            "compact MaxTent requires t > 1, got t = {t}"
        )));
    }
    if !(c.alpha > 0.0) {
        return Err(Error::domain(format!(
            "compact MaxTent requires alpha > 0, got {}",
            c.alpha
        )));
    }
    let alpha = c.alpha;
    let n = sys.n_particles;
    let s = 1.0 / (t - 1.0);
    let a_pow = c.value * (alpha * t + 3.0 * (t - 1.0)) / (3.0 * n * (t - 1.0));
    let log_edge = a_pow.ln() / alpha;
    let log_amplitude = n.ln() + alpha.ln() + s * t.ln()
        - (3.0 + alpha * s) * log_edge
        - (LN_2 * 2.0 + LN_PI)
        - log_beta(3.0 / alpha, t / (t - 1.0))?;
    Ok(ExtremizerDensity {
        family: Family::MaxTentCompact,
        d: 3,
        n_particles: n,
        constraint: c,
        t: Some(t),
        params: Params::MaxTent {
            log_amplitude,
            edge: log_edge.exp(),
        },
        support: Support::Finite(log_edge.exp()),
    })
}

impl ExtremizerDensity {
    fn tsallis_exponent(&self) -> f64 {
        1.0 / (self.t.expect("MaxTent family carries t") - 1.0)
    }

    /// ln rho(r); -inf outside the support.
    pub fn log_eval(&self, r: f64) -> f64 {
        let alpha = self.constraint.alpha;
        match (&self.params, self.family) {
            (Params::MaxEnt { lambda, mu }, _) => -lambda - mu * r.powf(alpha),
            (Params::MinInf { log_amplitude, rate }, _) => log_amplitude - rate * r,
            (Params::MaxTent { log_amplitude, edge }, Family::MaxTentCompact) => {
                if r >= *edge {
                    return f64::NEG_INFINITY;
                }
                let s = self.tsallis_exponent();
                // ln(a^alpha - r^alpha) = alpha ln a + ln(1 - (r/a)^alpha)
                let inner = alpha * edge.ln() + (-((r / edge).powf(alpha))).ln_1p();
                log_amplitude + s * (inner - self.t.unwrap().ln())
            }
            (Params::MaxTent { log_amplitude, edge }, _) => {
                let s = self.tsallis_exponent();
                // ln(a^alpha + r^alpha), split for stability at both ends
                let inner = if r > *edge {
                    alpha * r.ln() + (edge / r).powf(alpha).ln_1p()
                } else if r > 0.0 {
                    alpha * edge.ln() + (r / edge).powf(alpha).ln_1p()
                } else {
                    alpha * edge.ln()
                };
                log_amplitude + s * (inner - self.t.unwrap().ln())
            }
        }
    }

    /// rho(r); zero outside compact support.
    pub fn eval(&self, r: f64) -> f64 {
        let l = self.log_eval(r);
        if l == f64::NEG_INFINITY {
            0.0
        } else {
            l.exp()
        }
    }

    /// d ln rho / dr on the interior of the support.
    pub fn log_slope(&self, r: f64) -> f64 {
        let alpha = self.constraint.alpha;
        match (&self.params, self.family) {
            (Params::MaxEnt { mu, .. }, _) => -mu * alpha * r.powf(alpha - 1.0),
            (Params::MinInf { rate, .. }, _) => -rate,
            (Params::MaxTent { edge, .. }, Family::MaxTentCompact) => {
                let s = self.tsallis_exponent();
                -s * alpha * r.powf(alpha - 1.0) / (edge.powf(alpha) - r.powf(alpha))
            }
            (Params::MaxTent { edge, .. }, _) => {
                let s = self.tsallis_exponent();
                s * alpha * r.powf(alpha - 1.0) / (edge.powf(alpha) + r.powf(alpha))
            }
        }
    }

    fn quad_spec(&self) -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn check_moment_convergent(&self, n: f64) -> Result<()> {
        if self.family == Family::MaxTentSubcritical {
            let t = self.t.unwrap();
            let alpha = self.constraint.alpha;
            if !(n / (1.0 - t) - 3.0 / alpha > 0.0) {
                return Err(Error::DivergentMoment {
                    what: format!(
                        "W_{n} tail test failed for subcritical t = {t}, alpha = {alpha}: \
                         requires n/(1-t) > 3/alpha"
                    ),
                });
            }
        }
        Ok(())
    }

    /// ln W_n from the family's closed form.
    fn log_moment_analytic(&self, n: f64) -> Result<f64> {
        let alpha = self.constraint.alpha;
        let d = self.d as f64;
        match (&self.params, self.family) {
            (Params::MaxEnt { lambda, .. }, _) => {
                // W_n = N e^{(1-n) lambda} n^{-d/alpha}
                Ok(self.n_particles.ln() + (1.0 - n) * lambda - (d / alpha) * n.ln())
            }
            (Params::MinInf { log_amplitude, rate }, _) => {
                // W_n = A^n Omega_d Gamma(d) / (n rate)^d
                Ok(n * log_amplitude + log_angular_factor(self.d) + log_gamma(d)?
                    - d * (n * rate).ln())
            }
            (Params::MaxTent { log_amplitude, edge }, family) => {
                let t = self.t.unwrap();
                let s = 1.0 / (t - 1.0);
                let lb = if family == Family::MaxTentCompact {
                    log_beta(3.0 / alpha, n * s + 1.0)?
                } else {
                    log_beta(3.0 / alpha, n / (1.0 - t) - 3.0 / alpha)?
                };
                Ok((LN_2 * 2.0 + LN_PI) + n * (log_amplitude - s * t.ln())
                    + (3.0 + alpha * n * s) * edge.ln()
                    + lb
                    - alpha.ln())
            }
        }
    }

    /// Entropic moment W_n = ∫ rho^n d^d r, n > 0.
    pub fn entropic_moment(&self, n: f64, method: MomentMethod) -> Result<MomentResult> {
        if !(n > 0.0) {
            return Err(Error::domain(format!(
                "entropic moment order must be positive, got {n}"
            )));
        }
        self.check_moment_convergent(n)?;
        let value = match method {
            MomentMethod::Analytic => self.log_moment_analytic(n)?.exp(),
            MomentMethod::Quadrature => {
                let ld = log_angular_factor(self.d);
                let dm1 = (self.d - 1) as f64;
                let q = integrate_radial(
                    |r| {
                        let l = self.log_eval(r);
                        if l == f64::NEG_INFINITY {
                            return 0.0;
                        }
                        let le = ld + dm1 * r.ln() + n * l;
                        if le < -745.0 {
                            0.0
                        } else {
                            le.exp()
                        }
                    },
                    self.support,
                    &self.quad_spec(),
                )?;
                q.value
            }
        };
        Ok(MomentResult {
            order: n,
            value,
            method,
        })
    }

    /// <r^m> = ∫ r^m rho d^d r by quadrature.
    pub fn radial_expectation(&self, m: f64) -> Result<f64> {
        if !(m > -(self.d as f64)) {
            return Err(Error::DivergentMoment {
                what: format!("<r^{m}> diverges at the origin for d = {}", self.d),
            });
        }
        if self.family == Family::MaxTentSubcritical {
            let t = self.t.unwrap();
            let alpha = self.constraint.alpha;
            if !(m < alpha / (1.0 - t) - 3.0) {
                return Err(Error::DivergentMoment {
                    what: format!(
                        "<r^{m}> tail test failed for subcritical t = {t}, alpha = {alpha}"
                    ),
                });
            }
        }
        let ld = log_angular_factor(self.d);
        let dm1 = (self.d - 1) as f64;
        let q = integrate_radial(
            |r| {
                let l = self.log_eval(r);
                if l == f64::NEG_INFINITY || r == 0.0 {
                    return 0.0;
                }
                let le = ld + (dm1 + m) * r.ln() + l;
                if le < -745.0 {
                    0.0
                } else {
                    le.exp()
                }
            },
            self.support,
            &self.quad_spec(),
        )?;
        Ok(q.value)
    }

    /// Shannon entropy −∫ rho ln rho d^d r by quadrature.
    pub fn shannon_entropy(&self) -> Result<f64> {
        let ld = log_angular_factor(self.d);
        let dm1 = (self.d - 1) as f64;
        let q = integrate_radial(
            |r| {
                let l = self.log_eval(r);
                if l == f64::NEG_INFINITY || r == 0.0 {
                    return 0.0;
                }
                let le = ld + dm1 * r.ln() + l;
                if le < -700.0 {
                    0.0
                } else {
                    -le.exp() * l
                }
            },
            self.support,
            &self.quad_spec(),
        )?;
        Ok(q.value)
    }

    /// Tsallis entropy T_t = (1 − W_t)/(t − 1), t > 0, t ≠ 1.
    pub fn tsallis_entropy(&self, t: f64) -> Result<f64> {
        if !(t > 0.0) || t == 1.0 {
            return Err(Error::domain(format!(
                "Tsallis order must satisfy t > 0, t != 1, got {t}"
            )));
        }
        let w = self.entropic_moment(t, MomentMethod::Analytic)?;
        Ok((1.0 - w.value) / (t - 1.0))
    }

    /// Fisher information ∫ rho (rho'/rho)^2 d^d r, with the analytic radial
    /// derivative of the closed-form family.
    pub fn fisher_information(&self) -> Result<f64> {
        if self.family == Family::MaxTentCompact {
            let t = self.t.unwrap();
            // Edge behavior (a - r)^{1/(t-1) - 2}: integrable only for t < 2.
            if t >= 2.0 {
                return Err(Error::DivergentMoment {
                    what: format!(
                        "Fisher information diverges at the support edge for t = {t} >= 2"
                    ),
                });
            }
        }
        let ld = log_angular_factor(self.d);
        let dm1 = (self.d - 1) as f64;
        let q = integrate_radial(
            |r| {
                let l = self.log_eval(r);
                if l == f64::NEG_INFINITY || r == 0.0 {
                    return 0.0;
                }
                let le = ld + dm1 * r.ln() + l;
                if le < -700.0 {
                    return 0.0;
                }
                let slope = self.log_slope(r);
                le.exp() * slope * slope
            },
            self.support,
            &self.quad_spec(),
        )?;
        Ok(q.value)
    }
}
