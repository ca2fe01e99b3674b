//! Nonlinear dielectric susceptibility of a cold atomic ensemble driven by a
//! strong coherent control field.
//!
//! The crate evaluates three principal components of the probe susceptibility
//! tensor of a J=0 → J=1 atom whose z-polarized transition is dressed by the
//! control field:
//!
//! - the Kerr-type elastic response `χ_zz^(+-)` ([`Component::KerrZ`]),
//! - the parametric, phase-conjugating response `χ_zz^(++)` ([`Component::ParametricZ`]),
//! - the transverse response `χ_xx = χ_yy` on the satellite transitions ([`Component::Transverse`]).
//!
//! Every component is a retarded Cauchy transform of a rational commutator
//! spectrum. The crate evaluates it three ways that share no formulas:
//!
//! 1. [`contour::chi_residue`]: exact residue calculus over the closed-form kernels in [`spectra`],
//! 2. [`contour::chi_quadrature`]: Plemelj-split adaptive quadrature over the same kernels,
//! 3. [`oracle::chi_oracle`]: quadrature over spectra rebuilt from the Fourier-domain
//!    Langevin equations and noise diffusion matrices, never touching the closed forms.
//!
//! Frequencies are in units of the decay rate `γ` when `γ = 1`; susceptibilities
//! are in units of `n₀d₀²/(ħγ)` multiplied by a [`DensityScale`].
//!
//! ```
//! use mollow::{contour, Component, DensityScale, DriveParams};
//!
//! let p = DriveParams::new(1.0, 0.0, 0.0).unwrap();
//! let chi = contour::chi_residue(Component::KerrZ, &p, 0.0, DensityScale::UNIT).unwrap();
//! assert!((chi.im - 2.0).abs() < 1e-12 && chi.re.abs() < 1e-12);
//! ```

pub mod asymptotics;
pub mod contour;
pub mod docs;
mod error;
pub mod model;
pub mod oracle;
pub mod poly;
pub mod quad;
pub mod spectra;
pub mod triplet;

pub use error::{Error, Result};
pub use model::{DensityScale, DriveParams, SteadyState};
pub use spectra::Component;

pub use num_complex::Complex64;
