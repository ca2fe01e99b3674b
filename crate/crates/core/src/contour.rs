//! Susceptibilities as retarded Cauchy transforms of the spectral kernels:
//!
//! `χ(Ω) = −scale · ∫ dΩ′/2π K(Ω′)/(σΩ − Ω′ + i0)`
//!
//! with `σ = −1` for the parametric component and `+1` otherwise.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::asymptotics::{self, Sideband};
use crate::model::{DensityScale, DriveParams};
use crate::oracle;
use crate::poly::Series;
use crate::quad::{retarded_transform, Tolerance, Window};
use crate::spectra::{build_kernel, Component, Pole, SpectralKernel};
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// Poles closer to the real axis than this make the contour ill-defined.
const AXIS_TOL: f64 = 1e-12;
/// Distinct poles closer than this multiple of the frequency scale are summed
/// together by a contour integral around the cluster.
const CLUSTER_TOL: f64 = 1e-6;
const CIRCLE_NODES: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Method {
    Residue,
    Quadrature,
    Oracle,
    /// Weak-field closed form.
    Weak,
    /// Saturation form near the central resonance.
    SaturationCenter,
    /// Saturation form near the sideband closest to `Ω`.
    SaturationSideband,
    /// Autler-Townes doublet form.
    SaturationTransverse,
}

impl Method {
    pub fn name(&self) -> &'static str {
        match self {
            Method::Residue => "residue",
            Method::Quadrature => "quadrature",
            Method::Oracle => "oracle",
            Method::Weak => "weak",
            Method::SaturationCenter => "sat-center",
            Method::SaturationSideband => "sat-sideband",
            Method::SaturationTransverse => "sat-transverse",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChiSample {
    pub component: Component,
    pub omega: f64,
    pub value: Complex64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub component: Component,
    pub params: DriveParams,
    pub scale: DensityScale,
    pub method: Method,
    pub samples: Vec<ChiSample>,
}

/// Exact susceptibility by the residue theorem, contour closed above.
pub fn chi_residue(component: Component, p: &DriveParams, omega: f64, scale: DensityScale) -> Result<Complex64> {
    chi_residue_kernel(&build_kernel(component, p), omega, scale)
}

pub fn chi_residue_kernel(k: &SpectralKernel, omega: f64, scale: DensityScale) -> Result<Complex64> {
    let x = k.component.probe_sign() * omega;
    if let Some(pole) = k.poles().iter().find(|p| p.location.im.abs() < AXIS_TOL) {
        return Err(Error::DegenerateContour {
            pole: pole.location,
            distance: pole.location.im.abs(),
        });
    }
    if k.numerator.is_zero() {
        return Ok(Complex64::new(0.0, 0.0));
    }

    let upper: Vec<Pole> = k.poles().iter().copied().filter(|p| p.location.im > 0.0).collect();
    let tol = CLUSTER_TOL * k.params.frequency_scale();
    let mut total = -k.eval_unchecked(Complex64::new(x, 0.0));
    for cluster in clusters(&upper, tol) {
        total += if cluster.len() == 1 {
            pole_residue(k, cluster[0], x)
        } else {
            cluster_residue(k, &cluster, x)
        };
    }
    // ∫ = 2πi ΣRes, and the measure carries 1/2π.
    Ok(-scale.value() * I * total)
}

/// Residue of `K(Ω′)/(x − Ω′)` at a kernel pole of any multiplicity.
fn pole_residue(k: &SpectralKernel, pole: Pole, x: f64) -> Complex64 {
    let m = pole.multiplicity as usize;
    let z0 = pole.location;
    let order = m - 1;
    // (Ω′ − z₀)^m f = N(z₀+t) / (C Π_other (z₀ − r + t)^m_r) · (−1)/(z₀ − x + t)
    let mut series = k.numerator.taylor_at(z0, order);
    for other in k.poles().iter().filter(|p| p.location != z0) {
        series = series.mul(&Series::inverse_power(z0 - other.location, other.multiplicity, order));
    }
    series = series.mul(&Series::inverse_power(z0 - x, 1, order));
    -series.coeff(order) / k.constant
}

/// Summed residues of a tight group of poles, by the trapezoid rule on a
/// circle that keeps clear of both the group and its neighbours.
fn cluster_residue(k: &SpectralKernel, cluster: &[Pole], x: f64) -> Complex64 {
    let center = cluster.iter().map(|p| p.location).sum::<Complex64>() / cluster.len() as f64;
    let spread = cluster.iter().map(|p| (p.location - center).norm()).fold(0.0, f64::max);
    let gap = k
        .poles()
        .iter()
        .filter(|p| !cluster.contains(p))
        .map(|p| (p.location - center).norm())
        .chain(std::iter::once((Complex64::new(x, 0.0) - center).norm()))
        .fold(f64::INFINITY, f64::min);
    let radius = (spread * gap).sqrt();
    let mut acc = Complex64::new(0.0, 0.0);
    for j in 0..CIRCLE_NODES {
        let theta = 2.0 * std::f64::consts::PI * j as f64 / CIRCLE_NODES as f64;
        let dz = radius * Complex64::from_polar(1.0, theta);
        let z = center + dz;
        acc += k.eval_unchecked(z) / (x - z) * dz;
    }
    // (1/2πi)∮ f dz with dz = i·(z − z₀)dθ
    acc / CIRCLE_NODES as f64
}

fn clusters(poles: &[Pole], tol: f64) -> Vec<Vec<Pole>> {
    let mut groups: Vec<Vec<Pole>> = Vec::new();
    for &p in poles {
        let hits: Vec<usize> = groups
            .iter()
            .enumerate()
            .filter(|(_, g)| g.iter().any(|q| (q.location - p.location).norm() <= tol))
            .map(|(i, _)| i)
            .collect();
        let mut merged = vec![p];
        for &i in hits.iter().rev() {
            merged.extend(groups.swap_remove(i));
        }
        groups.push(merged);
    }
    groups
}

fn check_tol(tol: f64) -> Result<()> {
    if !(tol > 0.0 && tol <= 1e-3) {
        return Err(Error::InvalidParameter {
            name: "tol",
            value: tol,
            reason: "quadrature tolerance must lie in (0, 1e-3]",
        });
    }
    Ok(())
}

/// Susceptibility by adaptive quadrature with the Plemelj split.
pub fn chi_quadrature(
    component: Component,
    p: &DriveParams,
    omega: f64,
    scale: DensityScale,
    tol: f64,
) -> Result<Complex64> {
    chi_quadrature_kernel(&build_kernel(component, p), omega, scale, tol)
}

pub fn chi_quadrature_kernel(k: &SpectralKernel, omega: f64, scale: DensityScale, tol: f64) -> Result<Complex64> {
    check_tol(tol)?;
    let x = k.component.probe_sign() * omega;
    let f = |w: f64| k.eval_unchecked(Complex64::new(w, 0.0));
    let value = retarded_transform(f, x, Window::covering(&k.params, x), Tolerance::new(tol, 1e-3 * tol))?;
    Ok(-scale.value() * value)
}

/// Evaluates `method` on every grid point, in parallel, preserving grid order.
pub fn sweep(
    component: Component,
    p: &DriveParams,
    omega_grid: &[f64],
    method: Method,
    scale: DensityScale,
    tol: f64,
) -> Result<SweepResult> {
    check_grid(omega_grid)?;
    if matches!(method, Method::Quadrature | Method::Oracle) {
        check_tol(tol)?;
    }
    let kernel = matches!(method, Method::Residue | Method::Quadrature).then(|| build_kernel(component, p));
    let eval = |omega: f64| -> Result<Complex64> {
        match method {
            Method::Residue => chi_residue_kernel(kernel.as_ref().expect("kernel built"), omega, scale),
            Method::Quadrature => chi_quadrature_kernel(kernel.as_ref().expect("kernel built"), omega, scale, tol),
            Method::Oracle => oracle::chi_oracle(component, p, omega, scale, tol),
            Method::Weak => Ok(asymptotics::chi_weak(component, p, omega, scale)),
            Method::SaturationCenter => asymptotics::chi_saturation_center(component, p, omega, scale),
            Method::SaturationSideband => {
                let side = Sideband::nearest(component, omega);
                asymptotics::chi_saturation_sideband(component, p, omega, scale, side)
            }
            Method::SaturationTransverse => match component {
                Component::Transverse => Ok(asymptotics::chi_saturation_transverse(p, omega, scale)),
                other => Err(Error::UnsupportedComponent {
                    what: "the doublet saturation form",
                    component: other.name(),
                }),
            },
        }
    };
    let values: Vec<Result<Complex64>> = omega_grid.par_iter().map(|&w| eval(w)).collect();
    let samples = omega_grid
        .iter()
        .zip(values)
        .map(|(&omega, v)| {
            v.map(|value| ChiSample {
                component,
                omega,
                value,
            })
            .map_err(|e| Error::AtPoint {
                omega,
                source: Box::new(e),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepResult {
        component,
        params: *p,
        scale,
        method,
        samples,
    })
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::InvalidGrid("grid is empty".into()));
    }
    if let Some(w) = grid.iter().find(|w| !w.is_finite()) {
        return Err(Error::InvalidGrid(format!("non-finite frequency {w}")));
    }
    if let Some(pair) = grid.windows(2).find(|w| w[1] <= w[0]) {
        return Err(Error::InvalidGrid(format!(
            "frequencies must be strictly ascending ({} then {})",
            pair[0], pair[1]
        )));
    }
    Ok(())
}

/// `points` evenly spaced frequencies from `min` to `max` inclusive.
pub fn linear_grid(min: f64, max: f64, points: usize) -> Result<Vec<f64>> {
    if points < 2 || min.is_nan() || max.is_nan() || min >= max {
        return Err(Error::InvalidGrid(format!(
            "need at least 2 points and min < max (got {points} points on [{min}, {max}])"
        )));
    }
    let step = (max - min) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| if i + 1 == points { max } else { min + step * i as f64 })
        .collect())
}
