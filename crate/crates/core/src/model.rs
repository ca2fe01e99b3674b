//! Drive parameters, the steady-state Bloch solution and the scalings that
//! factor out of every susceptibility formula.

use num_complex::Complex64;

use crate::{Error, Result};

/// Control-field and atom parameters.
///
/// `gamma` is the natural decay rate of the excited state, `delta = ω_c − ω₀`
/// the control-field detuning and `rabi` the Rabi frequency `Ω_R`, all in the
/// same frequency unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DriveParams {
    gamma: f64,
    delta: f64,
    rabi: f64,
}

impl DriveParams {
    pub fn new(gamma: f64, delta: f64, rabi: f64) -> Result<Self> {
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidParameter {
                name: "gamma",
                value: gamma,
                reason: "decay rate must be finite and positive",
            });
        }
        if !delta.is_finite() {
            return Err(Error::InvalidParameter {
                name: "delta",
                value: delta,
                reason: "detuning must be finite",
            });
        }
        if !(rabi.is_finite() && rabi >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "rabi",
                value: rabi,
                reason: "Rabi frequency must be finite and non-negative",
            });
        }
        Ok(Self { gamma, delta, rabi })
    }

    /// Parameters specified by saturation instead of Rabi frequency.
    pub fn from_saturation(gamma: f64, delta: f64, s: f64) -> Result<Self> {
        let rabi = rabi_from_saturation(s, gamma, delta)?;
        Self::new(gamma, delta, rabi)
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    pub fn rabi(&self) -> f64 {
        self.rabi
    }

    pub fn saturation(&self) -> f64 {
        saturation(self)
    }

    /// Characteristic frequency scale `max(γ, Ω_R, |Δ|)` used for
    /// scale-aware tolerances.
    pub fn frequency_scale(&self) -> f64 {
        self.gamma.max(self.rabi).max(self.delta.abs())
    }

    /// The same physical point expressed in units where `γ = 1`.
    pub fn normalized(&self) -> Self {
        Self {
            gamma: 1.0,
            delta: self.delta / self.gamma,
            rabi: self.rabi / self.gamma,
        }
    }
}

/// Mean pseudospin values of the driven transition in steady state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SteadyState {
    pub sigma_minus: Complex64,
    pub sigma_plus: Complex64,
    pub sigma_z: f64,
    /// Saturation parameter `s`.
    pub s: f64,
}

impl SteadyState {
    /// Excited-state population `1/2 + σ̄_Z`.
    pub fn upper_population(&self) -> f64 {
        0.5 + self.sigma_z
    }
}

/// Dimensionless density prefactor `n₀d₀²/(ħγ) = (3/4) n₀ ƛ₀³`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DensityScale(f64);

impl DensityScale {
    pub const UNIT: DensityScale = DensityScale(1.0);

    pub fn new(scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "scale",
                value: scale,
                reason: "density scale must be finite and non-negative",
            });
        }
        Ok(Self(scale))
    }

    /// Scale from the density in units of the reduced wavelength cubed, `n₀ƛ₀³`.
    pub fn from_density_lambda3(n_lambda3: f64) -> Result<Self> {
        if !(n_lambda3.is_finite() && n_lambda3 >= 0.0) {
            return Err(Error::InvalidParameter {
                name: "density_lambda3",
                value: n_lambda3,
                reason: "density must be finite and non-negative",
            });
        }
        Ok(Self(0.75 * n_lambda3))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

impl Default for DensityScale {
    fn default() -> Self {
        Self::UNIT
    }
}

/// Saturation parameter `s = (Ω_R²/2) / (Δ² + γ²/4)`.
pub fn saturation(p: &DriveParams) -> f64 {
    0.5 * p.rabi * p.rabi / (p.delta * p.delta + 0.25 * p.gamma * p.gamma)
}

/// Rabi frequency producing saturation `s` at the given `γ` and `Δ`.
pub fn rabi_from_saturation(s: f64, gamma: f64, delta: f64) -> Result<f64> {
    if !(s.is_finite() && s >= 0.0) {
        return Err(Error::InvalidParameter {
            name: "saturation",
            value: s,
            reason: "saturation must be finite and non-negative",
        });
    }
    Ok((2.0 * s * (delta * delta + 0.25 * gamma * gamma)).sqrt())
}

/// Steady-state solution of the optical Bloch equations.
pub fn steady_state(p: &DriveParams) -> SteadyState {
    let s = saturation(p);
    let sigma_z = -0.5 / (s + 1.0);
    if p.rabi == 0.0 {
        // s/(s+1) vanishes as Ω_R² while the prefactor diverges as 1/Ω_R.
        return SteadyState {
            sigma_minus: Complex64::new(0.0, 0.0),
            sigma_plus: Complex64::new(0.0, 0.0),
            sigma_z,
            s,
        };
    }
    let sigma_minus = -Complex64::new(p.delta, -0.5 * p.gamma) / p.rabi * (s / (s + 1.0));
    SteadyState {
        sigma_minus,
        sigma_plus: sigma_minus.conj(),
        sigma_z,
        s,
    }
}

/// Decay renormalization `γ → √ε γ` for a transparent dense medium with
/// real permittivity `ε ≥ 1`.
pub fn renormalize_dense(p: &DriveParams, epsilon: f64) -> Result<DriveParams> {
    if !(epsilon.is_finite() && epsilon >= 1.0) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            reason: "renormalization requires a transparent medium with ε ≥ 1",
        });
    }
    DriveParams::new(epsilon.sqrt() * p.gamma, p.delta, p.rabi)
}
