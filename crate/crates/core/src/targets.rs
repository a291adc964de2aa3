//! Target frequency responses and band weights used by the filter
//! experiments.

use std::fmt;

use crate::dtt::Spectrum;
use crate::scalar::Real;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Target {
    /// `1 / (1 + μλ)`
    Tikhonov { mu: f64 },
    /// `exp(−γ (λ − λ_pb)²)`
    BandpassExp { gamma: f64, center: f64 },
    /// `1` for `λ ≤ λ_c`, `0` above.
    IdealLowpass { cutoff: f64 },
}

impl Target {
    /// `μ = 0.25`.
    pub fn tikhonov_default() -> Self {
        Target::Tikhonov { mu: 0.25 }
    }

    /// `γ = 1`, `λ_pb = λ_max / 2`.
    pub fn bandpass_default(lambda_max: f64) -> Self {
        Target::BandpassExp { gamma: 1.0, center: 0.5 * lambda_max }
    }

    /// `λ_c = λ_max / 2`.
    pub fn lowpass_default(lambda_max: f64) -> Self {
        Target::IdealLowpass { cutoff: 0.5 * lambda_max }
    }

    pub fn eval(&self, lambda: f64) -> f64 {
        match *self {
            Target::Tikhonov { mu } => 1.0 / (1.0 + mu * lambda),
            Target::BandpassExp { gamma, center } => (-gamma * (lambda - center).powi(2)).exp(),
            Target::IdealLowpass { cutoff } => {
                if lambda <= cutoff {
                    1.0
                } else {
                    0.0
                }
            }
        }
    }

    pub fn sample<T: Real>(&self, spectrum: &Spectrum<T>) -> Vec<T> {
        spectrum.values().iter().map(|&l| T::c(self.eval(l.to_f64_lossy()))).collect()
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Target::Tikhonov { mu } => write!(f, "tikhonov(mu={mu})"),
            Target::BandpassExp { gamma, center } => write!(f, "bandpass-exp(gamma={gamma},center={center})"),
            Target::IdealLowpass { cutoff } => write!(f, "ideal-lowpass(cutoff={cutoff})"),
        }
    }
}

/// Pass/transition/stop weights for a low-pass design. The transition band
/// is `[lo · λ_max, hi · λ_max]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandWeights {
    pub pass: f64,
    pub transition: f64,
    pub stop: f64,
    pub lo: f64,
    pub hi: f64,
}

impl Default for BandWeights {
    /// Weights `2, 0, 1` with the transition band `[0.4, 0.6] λ_max`.
    fn default() -> Self {
        Self { pass: 2.0, transition: 0.0, stop: 1.0, lo: 0.4, hi: 0.6 }
    }
}

impl BandWeights {
    pub fn weights<T: Real>(&self, spectrum: &Spectrum<T>, lambda_max: f64) -> Vec<T> {
        let (lo, hi) = (self.lo * lambda_max, self.hi * lambda_max);
        spectrum
            .values()
            .iter()
            .map(|&l| {
                let l = l.to_f64_lossy();
                T::c(if l < lo {
                    self.pass
                } else if l <= hi {
                    self.transition
                } else {
                    self.stop
                })
            })
            .collect()
    }
}
