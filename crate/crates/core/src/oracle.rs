//! Commutator spectra rebuilt from the Fourier-domain Langevin equations.
//!
//! The fluctuations solve `A(Ω)·δσ(Ω) = c∘F(Ω)` with a drift matrix `A` and a
//! fixed phase vector `c`. Second moments of the white noise follow
//! `(1/T)⟨F_a(ω)F_b(−ω)⟩ = 2D_{āb}`, where `ā` is the adjoint index. A
//! commutator `⟨[X, Y]⟩` with `X = u·F(Ω′)` and `Y = v·F(−Ω′)` is then
//! `Σ u_a v_b (2D_{āb} − 2D_{b̄a})`. None of this touches [`crate::spectra`].

use std::cell::RefCell;

use num_complex::Complex64;

use crate::model::{steady_state, DensityScale, DriveParams, SteadyState};
use crate::quad::{retarded_transform, Tolerance, Window};
use crate::spectra::Component;
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Channel {
    /// `(δσ₊, δσ₋, δσ_Z)` on the driven transition.
    MainZ,
    /// `(σ₊⁽ˣ⁾, |x⟩⟨b|)` on a satellite transition, written at `−Ω`.
    SatelliteX,
}

/// Drift matrix of one channel at a single frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct DriftSystem {
    pub channel: Channel,
    pub matrix: Vec<Vec<Complex64>>,
    /// Phase multiplying each row's noise forcing.
    pub source_signs: Vec<Complex64>,
}

impl DriftSystem {
    pub fn dimension(&self) -> usize {
        self.matrix.len()
    }

    pub fn det(&self) -> Complex64 {
        let m = &self.matrix;
        match self.dimension() {
            2 => det2(m[0][0], m[0][1], m[1][0], m[1][1]),
            _ => det3(m),
        }
    }

    /// Inverse by the cofactor formula.
    pub fn inverse(&self) -> Vec<Vec<Complex64>> {
        let m = &self.matrix;
        let det = self.det();
        match self.dimension() {
            2 => vec![vec![m[1][1] / det, -m[0][1] / det], vec![-m[1][0] / det, m[0][0] / det]],
            _ => {
                let mut inv = vec![vec![Complex64::new(0.0, 0.0); 3]; 3];
                for (r, row) in inv.iter_mut().enumerate() {
                    for (c, out) in row.iter_mut().enumerate() {
                        // inv[r][c] = cofactor(c, r)/det
                        let (i0, i1) = others(c);
                        let (j0, j1) = others(r);
                        let minor = det2(m[i0][j0], m[i0][j1], m[i1][j0], m[i1][j1]);
                        let sign = if (r + c) % 2 == 0 { 1.0 } else { -1.0 };
                        *out = sign * minor / det;
                    }
                }
                inv
            }
        }
    }
}

fn others(k: usize) -> (usize, usize) {
    match k {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

fn det2(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Complex64 {
    a * d - b * c
}

fn det3(m: &[Vec<Complex64>]) -> Complex64 {
    m[0][0] * det2(m[1][1], m[1][2], m[2][1], m[2][2]) - m[0][1] * det2(m[1][0], m[1][2], m[2][0], m[2][2])
        + m[0][2] * det2(m[1][0], m[1][1], m[2][0], m[2][1])
}

/// Coefficient matrix of the linearized equations, as printed.
pub fn drift_matrix(channel: Channel, p: &DriveParams, omega: Complex64) -> DriftSystem {
    let g = p.gamma();
    let d = p.delta();
    let r = Complex64::new(p.rabi(), 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let half_g = I * (0.5 * g);
    match channel {
        Channel::MainZ => DriftSystem {
            channel,
            matrix: vec![
                vec![d - omega - half_g, zero, -r],
                vec![zero, d + omega + half_g, -r],
                vec![0.5 * r, -0.5 * r, omega + I * g],
            ],
            source_signs: vec![-I, I, I],
        },
        Channel::SatelliteX => DriftSystem {
            channel,
            matrix: vec![vec![d + omega - half_g, -0.5 * r], vec![-0.5 * r, omega - I * g]],
            source_signs: vec![-I, -I],
        },
    }
}

/// Noise diffusion coefficients `D_{qq′}`.
///
/// Main channel index order is `(+, −, Z)`; satellite order is
/// `(+⁽ˣ⁾, −⁽ˣ⁾, xb, bx)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiffusionMatrix {
    pub channel: Channel,
    pub entries: Vec<Vec<Complex64>>,
}

impl DiffusionMatrix {
    /// Adjoint index `q̄`.
    pub fn adjoint(&self, q: usize) -> usize {
        match (self.channel, q) {
            (Channel::MainZ, 0) => 1,
            (Channel::MainZ, 1) => 0,
            (Channel::MainZ, q) => q,
            (Channel::SatelliteX, q) => q ^ 1,
        }
    }

    /// `(1/T)⟨F_a(ω)F_b(−ω)⟩ = 2D_{āb}`.
    pub fn moment(&self, a: usize, b: usize) -> Complex64 {
        2.0 * self.entries[self.adjoint(a)][b]
    }

    /// `⟨[u·F(ω), v·F(−ω)]⟩` per unit time.
    pub fn commutator(&self, u: &[Complex64], v: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (a, ua) in u.iter().enumerate() {
            for (b, vb) in v.iter().enumerate() {
                acc += ua * vb * (self.moment(a, b) - self.moment(b, a));
            }
        }
        acc
    }
}

pub fn diffusion_matrix(channel: Channel, steady: &SteadyState, gamma: f64) -> DiffusionMatrix {
    let k = 0.5 * gamma;
    let zero = Complex64::new(0.0, 0.0);
    let one = Complex64::new(k, 0.0);
    let pm = k * steady.sigma_minus;
    let mp = k * steady.sigma_plus;
    let zz = Complex64::new(k * steady.upper_population(), 0.0);
    let entries = match channel {
        Channel::MainZ => vec![vec![one, zero, pm], vec![zero, zero, zero], vec![mp, zero, zz]],
        Channel::SatelliteX => vec![
            vec![one, zero, pm, zero],
            vec![zero, zero, zero, zero],
            vec![mp, zero, zz, zero],
            vec![zero, zero, zero, zero],
        ],
    };
    DiffusionMatrix { channel, entries }
}

const SINGULAR_DET: f64 = 1e-13;

fn solve_row(sys: &DriftSystem, row: usize, omega: f64) -> Result<Vec<Complex64>> {
    let det = sys.det();
    if det.norm() < SINGULAR_DET {
        return Err(Error::SingularResolvent { omega, det: det.norm() });
    }
    let inv = sys.inverse();
    Ok(inv[row].iter().zip(&sys.source_signs).map(|(g, c)| g * c).collect())
}

/// The commutator spectral density of `component` at real `Ω′`.
pub fn commutator_spectrum(component: Component, p: &DriveParams, omega_prime: f64) -> Result<Complex64> {
    let st = steady_state(p);
    commutator_with(component, p, &st, omega_prime)
}

fn commutator_with(component: Component, p: &DriveParams, st: &SteadyState, w: f64) -> Result<Complex64> {
    const PLUS: usize = 0;
    const MINUS: usize = 1;
    let wc = Complex64::new(w, 0.0);
    match component {
        Component::KerrZ | Component::ParametricZ => {
            let diff = diffusion_matrix(Channel::MainZ, st, p.gamma());
            let u = solve_row(&drift_matrix(Channel::MainZ, p, wc), MINUS, w)?;
            let second = if component == Component::KerrZ { PLUS } else { MINUS };
            let v = solve_row(&drift_matrix(Channel::MainZ, p, -wc), second, -w)?;
            Ok(diff.commutator(&u, &v))
        }
        Component::Transverse => {
            let diff = diffusion_matrix(Channel::SatelliteX, st, p.gamma());
            // σ₊⁽ˣ⁾(−Ω′) = h·(F₊⁽ˣ⁾, F_xb)(−Ω′), h = −i·row 0 of the inverse.
            let h = solve_row(&drift_matrix(Channel::SatelliteX, p, wc), 0, w)?;
            let zero = Complex64::new(0.0, 0.0);
            let v = [h[0], zero, h[1], zero];
            // σ₋⁽ˣ⁾(Ω′) is the coefficient-conjugated system acting on the adjoint sources.
            let u = [zero, h[0].conj(), zero, h[1].conj()];
            Ok(diff.commutator(&u, &v))
        }
    }
}

/// Retarded transform of the reconstructed spectrum, by the same Plemelj
/// quadrature as [`crate::contour::chi_quadrature`].
pub fn chi_oracle(
    component: Component,
    p: &DriveParams,
    omega: f64,
    scale: DensityScale,
    tol: f64,
) -> Result<Complex64> {
    let st = steady_state(p);
    if component == Component::ParametricZ && p.rabi() == 0.0 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let x = component.probe_sign() * omega;
    let failure = RefCell::new(None);
    let k = |w: f64| match commutator_with(component, p, &st, w) {
        Ok(v) => v,
        Err(e) => {
            failure.borrow_mut().get_or_insert(e);
            Complex64::new(0.0, 0.0)
        }
    };
    let value = retarded_transform(k, x, Window::covering(p, x), Tolerance::new(tol, 1e-3 * tol))?;
    if let Some(e) = failure.into_inner() {
        return Err(e);
    }
    Ok(-scale.value() * value)
}
