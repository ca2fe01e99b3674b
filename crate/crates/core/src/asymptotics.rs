//! Closed-form limits of the susceptibilities: weak drive (`s ≪ 1`) and deep
//! saturation (`s ≫ 1`). These are regression anchors for the exact
//! evaluators and carry the usual asymptotic error.

use num_complex::Complex64;

use crate::model::{DensityScale, DriveParams};
use crate::spectra::Component;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sideband {
    Blue,
    Red,
}

impl Sideband {
    /// The sideband whose resonance lies on the same side as `omega`. For the
    /// parametric component the probe frequency enters with reversed sign.
    pub fn nearest(component: Component, omega: f64) -> Sideband {
        if component.probe_sign() * omega >= 0.0 {
            Sideband::Blue
        } else {
            Sideband::Red
        }
    }
}

/// Weak-field susceptibility, accurate to first order in `s`.
pub fn chi_weak(component: Component, p: &DriveParams, omega: f64, scale: DensityScale) -> Complex64 {
    let g = p.gamma();
    let d = p.delta();
    let r2 = p.rabi() * p.rabi();
    let k = scale.value();
    let shifted = |share: f64| {
        let depletion = 1.0 - r2 / (share * (d * d + 0.25 * g * g));
        let pole = Complex64::new(omega + d, 0.5 * g) + r2 / (share * Complex64::new(d, -0.5 * g));
        -k * depletion / pole
    };
    match component {
        Component::KerrZ => shifted(2.0),
        Component::Transverse => shifted(4.0),
        Component::ParametricZ => {
            let w = Complex64::new(omega, -0.5 * g);
            -(0.5 * k) * r2 / ((w * w - d * d) * Complex64::new(d, 0.5 * g))
        }
    }
}

fn require_drive(p: &DriveParams) -> Result<()> {
    if p.rabi() == 0.0 {
        return Err(Error::InvalidParameter {
            name: "rabi",
            value: 0.0,
            reason: "saturation forms need a nonzero Rabi frequency",
        });
    }
    Ok(())
}

fn unsupported(what: &'static str, component: Component) -> Error {
    Error::UnsupportedComponent {
        what,
        component: component.name(),
    }
}

/// Saturation form near the central resonance, vanishing as `1/s`.
pub fn chi_saturation_center(
    component: Component,
    p: &DriveParams,
    omega: f64,
    scale: DensityScale,
) -> Result<Complex64> {
    require_drive(p)?;
    let g = p.gamma();
    let d = p.delta();
    let r2 = p.rabi() * p.rabi();
    let k = 0.5 * scale.value();
    match component {
        Component::KerrZ => Ok(k * I * g * Complex64::new(d, 0.5 * g) / (r2 * Complex64::new(omega, 0.5 * g))),
        Component::ParametricZ => Ok(k * I * g * Complex64::new(d, -0.5 * g) / (r2 * Complex64::new(-omega, 0.5 * g))),
        Component::Transverse => Err(unsupported("the central saturation form", component)),
    }
}

/// Blue sideband quasi-energy `Ω_R − 3iγ/4`, or its mirror `−Λ*` for red.
pub fn sideband_pole(p: &DriveParams, side: Sideband) -> Complex64 {
    let blue = Complex64::new(p.rabi(), -0.75 * p.gamma());
    match side {
        Sideband::Blue => blue,
        Sideband::Red => -blue.conj(),
    }
}

/// Saturation form near a Mollow sideband, vanishing as `1/√s`.
pub fn chi_saturation_sideband(
    component: Component,
    p: &DriveParams,
    omega: f64,
    scale: DensityScale,
    side: Sideband,
) -> Result<Complex64> {
    require_drive(p)?;
    let g = p.gamma();
    let d = p.delta();
    let r = p.rabi();
    let lam = sideband_pole(p, side);
    let k = 0.5 * scale.value();
    match component {
        Component::KerrZ => Ok(k * Complex64::new(d, 0.5 * g) / (r * (omega - lam))),
        Component::ParametricZ => Ok(-k * Complex64::new(d, -0.5 * g) / (r * (-omega - lam))),
        Component::Transverse => Err(unsupported("the sideband saturation form", component)),
    }
}

/// Autler-Townes doublet of the transverse component.
pub fn chi_saturation_transverse(p: &DriveParams, omega: f64, scale: DensityScale) -> Complex64 {
    let g = p.gamma();
    let base = Complex64::new(omega + 0.5 * p.delta(), 0.75 * g);
    let half = 0.5 * p.rabi();
    -(0.25 * scale.value()) * (1.0 / (base - half) + 1.0 / (base + half))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(gamma: f64, delta: f64, rabi: f64) -> DriveParams {
        DriveParams::new(gamma, delta, rabi).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    const ONE: DensityScale = DensityScale::UNIT;

    #[test]
    fn weak_examples() {
        let v = chi_weak(Component::KerrZ, &p(1.0, 0.0, 0.0), 0.0, ONE);
        assert!((v - c(0.0, 2.0)).norm() < 1e-15);
        let v = chi_weak(Component::ParametricZ, &p(1.0, 0.0, 0.1), 0.0, ONE);
        assert!((v - c(0.0, -0.04)).norm() < 1e-15, "{v}");
    }

    #[test]
    fn transverse_level_shift_is_half() {
        let pp = p(1.0, 1.0, 0.2);
        // The level shift is the pole displacement away from Ω + Δ + iγ/2.
        let shift = |comp| {
            let v = chi_weak(comp, &pp, 0.0, ONE);
            let depletion = 1.0 - 0.04 / (if comp == Component::KerrZ { 2.0 } else { 4.0 } * 1.25);
            -depletion / v - c(1.0, 0.5)
        };
        let kerr = shift(Component::KerrZ);
        let tr = shift(Component::Transverse);
        assert!((kerr - 2.0 * tr).norm() < 1e-15, "{kerr} vs {tr}");
    }

    #[test]
    fn center_examples() {
        let pp = p(1.0, 0.0, 10.0);
        let k = chi_saturation_center(Component::KerrZ, &pp, 0.0, ONE).unwrap();
        let q = chi_saturation_center(Component::ParametricZ, &pp, 0.0, ONE).unwrap();
        assert!((k - c(0.0, 0.005)).norm() < 1e-17, "{k}");
        assert!((q - c(0.0, -0.005)).norm() < 1e-17, "{q}");
        let k2 = chi_saturation_center(Component::KerrZ, &p(1.0, 0.0, 20.0), 0.0, ONE).unwrap();
        assert!((k2 * 4.0 - k).norm() < 1e-17);
        assert!(chi_saturation_center(Component::Transverse, &pp, 0.0, ONE).is_err());
        assert!(chi_saturation_center(Component::KerrZ, &p(1.0, 0.0, 0.0), 0.0, ONE).is_err());
    }

    #[test]
    fn sideband_examples() {
        let pp = p(1.0, 0.0, 10.0);
        let v = chi_saturation_sideband(Component::KerrZ, &pp, 10.0, ONE, Sideband::Blue).unwrap();
        assert!((v - c(1.0 / 30.0, 0.0)).norm() < 1e-16, "{v}");
        let v4 = chi_saturation_sideband(Component::KerrZ, &p(1.0, 0.0, 40.0), 40.0, ONE, Sideband::Blue).unwrap();
        assert!((v4 * 4.0 - v).norm() < 1e-16);
        // Red resonance sits at the mirrored frequency with the same height.
        let red = chi_saturation_sideband(Component::KerrZ, &pp, -10.0, ONE, Sideband::Red).unwrap();
        assert!((red.norm() - v.norm()).abs() < 1e-16);
        assert_eq!(sideband_pole(&pp, Sideband::Red), c(-10.0, -0.75));
        assert_eq!(Sideband::nearest(Component::KerrZ, 3.0), Sideband::Blue);
        assert_eq!(Sideband::nearest(Component::ParametricZ, 3.0), Sideband::Red);
    }

    #[test]
    fn doublet_examples() {
        let pp = p(1.0, 0.0, 10.0);
        let v = chi_saturation_transverse(&pp, 5.0, ONE);
        let want = -0.25 * (1.0 / c(0.0, 0.75) + 1.0 / c(10.0, 0.75));
        assert!((v - want).norm() < 1e-16);
        assert!((v - c(-0.024_860_1, 0.335_197_8)).norm() < 1e-7, "{v}");
        let minus = chi_saturation_transverse(&pp, -5.0, ONE);
        assert!((minus.norm() - v.norm()).abs() < 1e-15);
    }
}
