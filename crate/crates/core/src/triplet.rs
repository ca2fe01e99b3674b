//! The Mollow cubic and its three quasi-energy roots.
//!
//! With `z = Ω + iγ/2` the cubic reads
//! `M = −z³ − i(γ/2)z² + (Δ² + Ω_R²)z + i(γ/2)Δ²`. Substituting `z = iy` turns
//! it into the real cubic `y³ + (γ/2)y² + (Δ² + Ω_R²)y + (γ/2)Δ² = 0`, so the
//! roots are either three purely imaginary `Λ` or one imaginary `Λ` plus a pair
//! placed symmetrically about the imaginary axis. Solving in `y` keeps the
//! central root exactly on the imaginary axis.

use num_complex::Complex64;

use crate::model::DriveParams;
use crate::poly::Poly;

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

/// `M(Ω) = c₃Ω³ + c₂Ω² + c₁Ω + c₀`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CubicPoly {
    pub c3: Complex64,
    pub c2: Complex64,
    pub c1: Complex64,
    pub c0: Complex64,
}

impl CubicPoly {
    pub fn eval(&self, omega: Complex64) -> Complex64 {
        ((self.c3 * omega + self.c2) * omega + self.c1) * omega + self.c0
    }

    pub fn derivative(&self, omega: Complex64) -> Complex64 {
        (3.0 * self.c3 * omega + 2.0 * self.c2) * omega + self.c1
    }

    pub fn to_poly(&self) -> Poly {
        Poly::new(vec![self.c0, self.c1, self.c2, self.c3])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// All three quasi-energies lie on the imaginary axis.
    SubThreshold,
    /// Two sidebands split off symmetrically from the central resonance.
    Triplet,
}

/// Roots `Λ_m = Ω_m − iΓ_m`, ordered by real part and then imaginary part.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TripletRoots {
    pub lambda1: Complex64,
    pub lambda2: Complex64,
    pub lambda3: Complex64,
    pub regime: Regime,
}

impl TripletRoots {
    pub fn as_array(&self) -> [Complex64; 3] {
        [self.lambda1, self.lambda2, self.lambda3]
    }
}

/// Tolerance below which a root's real part counts as zero.
pub fn tol_center(p: &DriveParams) -> f64 {
    1e-9 * p.frequency_scale()
}

/// Coefficients of the Mollow cubic, assembled from its factored form.
pub fn mollow_poly(p: &DriveParams) -> CubicPoly {
    let poly = mollow_poly_expr(p);
    let c = poly.coeffs();
    CubicPoly {
        c3: c[3],
        c2: c[2],
        c1: c[1],
        c0: c[0],
    }
}

/// `iγ/2·[Δ² − (Ω + iγ/2)²] + (Ω + iγ/2)·[Δ² − (Ω + iγ/2)² + Ω_R²]` as a polynomial in Ω.
pub(crate) fn mollow_poly_expr(p: &DriveParams) -> Poly {
    let g = p.gamma();
    let d2 = Poly::real(p.delta() * p.delta());
    let z = Poly::linear(I * (0.5 * g), Complex64::new(1.0, 0.0));
    let bracket = &d2 - &(&z * &z);
    let first = bracket.scale(I * (0.5 * g));
    let second = &z * &(&bracket + &Poly::real(p.rabi() * p.rabi()));
    &first + &second
}

/// Real cubic in `y` whose roots map to the triplet via `Λ = i(y − γ/2)`.
struct RealCubic {
    a: f64,
    b: f64,
    c: f64,
}

impl RealCubic {
    fn eval(&self, y: Complex64) -> Complex64 {
        ((y + self.a) * y + self.b) * y + self.c
    }

    fn derivative(&self, y: Complex64) -> Complex64 {
        (3.0 * y + 2.0 * self.a) * y + self.b
    }

    fn polish(&self, mut y: Complex64) -> Complex64 {
        for _ in 0..8 {
            let d = self.derivative(y);
            if d == Complex64::new(0.0, 0.0) {
                break;
            }
            let step = self.eval(y) / d;
            let next = y - step;
            if !(next.re.is_finite() && next.im.is_finite()) {
                break;
            }
            // Stop once the residual no longer improves.
            if self.eval(next).norm() >= self.eval(y).norm() {
                break;
            }
            y = next;
        }
        y
    }

    fn polish_real(&self, y: f64) -> f64 {
        self.polish(Complex64::new(y, 0.0)).re
    }

    /// Real roots (ascending) or one real root plus the upper member of a
    /// complex-conjugate pair.
    fn solve(&self) -> CubicSolution {
        let (a, b, c) = (self.a, self.b, self.c);
        let shift = a / 3.0;
        let p = b - a * a / 3.0;
        let q = 2.0 * a * a * a / 27.0 - a * b / 3.0 + c;
        let disc = -(4.0 * p * p * p + 27.0 * q * q);
        let size = 4.0 * (p * p * p).abs() + 27.0 * q * q;

        if size == 0.0 || disc.abs() <= 1e-14 * size {
            // Repeated root; exact closed form for vanishing discriminant.
            let (t1, t2) = if p == 0.0 {
                (0.0, 0.0)
            } else {
                (3.0 * q / p, -1.5 * q / p)
            };
            let mut ys = [t1 - shift, t2 - shift, t2 - shift];
            ys.sort_by(f64::total_cmp);
            return CubicSolution::ThreeReal(ys.map(|y| self.polish_real(y)));
        }

        if disc > 0.0 {
            let m = 2.0 * (-p / 3.0).sqrt();
            let arg = (3.0 * q / (p * m)).clamp(-1.0, 1.0);
            let theta = arg.acos() / 3.0;
            let mut ys = [0, 1, 2].map(|k| {
                let t = m * (theta - 2.0 * std::f64::consts::PI * k as f64 / 3.0).cos();
                self.polish_real(t - shift)
            });
            ys.sort_by(f64::total_cmp);
            CubicSolution::ThreeReal(ys)
        } else {
            let root = (q * q / 4.0 + p * p * p / 27.0).sqrt();
            let u3 = -q / 2.0 - q.signum() * root;
            let u = u3.cbrt();
            let v = if u == 0.0 { 0.0 } else { -p / (3.0 * u) };
            let real = self.polish_real(u + v - shift);
            let pair = Complex64::new(-(u + v) / 2.0 - shift, (3f64.sqrt() / 2.0 * (u - v)).abs());
            let pair = self.polish(pair);
            CubicSolution::OneReal {
                real,
                pair: Complex64::new(pair.re, pair.im.abs()),
            }
        }
    }
}

enum CubicSolution {
    ThreeReal([f64; 3]),
    OneReal { real: f64, pair: Complex64 },
}

/// The three roots of the Mollow cubic with regime classification.
pub fn triplet_roots(p: &DriveParams) -> TripletRoots {
    let g = p.gamma();
    let cubic = RealCubic {
        a: 0.5 * g,
        b: p.delta() * p.delta() + p.rabi() * p.rabi(),
        c: 0.5 * g * p.delta() * p.delta(),
    };
    let to_lambda = |y: Complex64| I * (y - 0.5 * g);
    let tol = tol_center(p);

    match cubic.solve() {
        CubicSolution::ThreeReal(ys) => {
            // y ascending maps to Im(Λ) ascending.
            let [a, b, c] = ys.map(|y| to_lambda(Complex64::new(y, 0.0)));
            TripletRoots {
                lambda1: a,
                lambda2: b,
                lambda3: c,
                regime: Regime::SubThreshold,
            }
        }
        CubicSolution::OneReal { real, pair } => {
            let center = to_lambda(Complex64::new(real, 0.0));
            // y = u + iv maps to Λ = −v + i(u − γ/2).
            let left = to_lambda(pair);
            let right = Complex64::new(-left.re, left.im);
            if left.re.abs() <= tol {
                let mut roots = [center, Complex64::new(0.0, left.im), Complex64::new(0.0, left.im)];
                roots.sort_by(|x, y| x.im.total_cmp(&y.im));
                TripletRoots {
                    lambda1: roots[0],
                    lambda2: roots[1],
                    lambda3: roots[2],
                    regime: Regime::SubThreshold,
                }
            } else {
                TripletRoots {
                    lambda1: left,
                    lambda2: center,
                    lambda3: right,
                    regime: Regime::Triplet,
                }
            }
        }
    }
}

/// Saturation-limit roots `{−Ω_R − 3iγ/4, −iγ/2, +Ω_R − 3iγ/4}`.
pub fn triplet_roots_saturation(p: &DriveParams) -> TripletRoots {
    let g = p.gamma();
    let side = Complex64::new(p.rabi(), -0.75 * g);
    TripletRoots {
        lambda1: -side.conj(),
        lambda2: Complex64::new(0.0, -0.5 * g),
        lambda3: side,
        regime: if p.rabi() > 0.0 {
            Regime::Triplet
        } else {
            Regime::SubThreshold
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(gamma: f64, delta: f64, rabi: f64) -> DriveParams {
        DriveParams::new(gamma, delta, rabi).unwrap()
    }

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn expanded_coefficients() {
        // c₃ = −1, c₂ = −2iγ, c₁ = 5γ²/4 + Δ² + Ω_R², c₀ = i(γ³/4 + γΔ² + γΩ_R²/2)
        let (g, d, r) = (0.7, -1.3, 2.1);
        let m = mollow_poly(&p(g, d, r));
        assert_eq!(m.c3, c(-1.0, 0.0));
        assert!((m.c2 - c(0.0, -2.0 * g)).norm() < 1e-14);
        assert!((m.c1 - c(1.25 * g * g + d * d + r * r, 0.0)).norm() < 1e-13);
        assert!((m.c0 - c(0.0, g * g * g / 4.0 + g * d * d + 0.5 * g * r * r)).norm() < 1e-13);
    }

    #[test]
    fn mollow_poly_at_origin() {
        let m = mollow_poly(&p(1.0, 0.0, 1.0));
        assert!((m.eval(c(0.0, 0.0)) - c(0.0, 0.75)).norm() < 1e-15);
    }

    #[test]
    fn mollow_poly_leading_behaviour() {
        let m = mollow_poly(&p(1.0, 1.0, 1.0));
        let w = c(1e4, 0.0);
        assert!((m.eval(w) / (-w * w * w) - 1.0).norm() < 1e-3);
    }

    #[test]
    fn resonant_unit_rabi_roots() {
        let roots = triplet_roots(&p(1.0, 0.0, 1.0));
        let side = 15f64.sqrt() / 4.0;
        assert_eq!(roots.regime, Regime::Triplet);
        assert!((roots.lambda1 - c(-side, -0.75)).norm() < 1e-14);
        assert!((roots.lambda2 - c(0.0, -0.5)).norm() < 1e-14);
        assert!((roots.lambda3 - c(side, -0.75)).norm() < 1e-14);
        assert_eq!(roots.lambda2.re, 0.0);
    }

    #[test]
    fn sub_threshold_roots() {
        let roots = triplet_roots(&p(1.0, 0.0, 0.2));
        assert_eq!(roots.regime, Regime::SubThreshold);
        for (got, want) in roots.as_array().iter().zip([-0.9, -0.6, -0.5]) {
            assert_eq!(got.re, 0.0);
            assert!((got.im - want).abs() < 1e-14, "{got} vs {want}");
        }
    }

    #[test]
    fn strong_drive_roots_near_asymptote() {
        let pp = p(1.0, 0.0, 10.0);
        let roots = triplet_roots(&pp);
        let exact = (100.0f64 - 1.0 / 16.0).sqrt();
        assert!((roots.lambda3 - c(exact, -0.75)).norm() < 1e-12);
        assert!((roots.lambda2 - c(0.0, -0.5)).norm() < 1e-14);
        let asym = triplet_roots_saturation(&pp);
        // Residual gap is γ²/(32Ω_R) to leading order.
        let gap = (roots.lambda3.re - asym.lambda3.re).abs();
        assert!((gap - 1.0 / 320.0).abs() < 1e-5, "{gap}");
        assert_eq!(roots.lambda3.im, asym.lambda3.im);
    }

    #[test]
    fn saturation_roots() {
        let r = triplet_roots_saturation(&p(1.0, 0.0, 10.0));
        assert_eq!(r.as_array(), [c(-10.0, -0.75), c(0.0, -0.5), c(10.0, -0.75)]);
        let r = triplet_roots_saturation(&p(2.0, 0.0, 20.0));
        assert_eq!(r.as_array(), [c(-20.0, -1.5), c(0.0, -1.0), c(20.0, -1.5)]);
        let pp = p(1.0, 0.0, 100.0);
        let exact = triplet_roots(&pp);
        let asym = triplet_roots_saturation(&pp);
        for (e, a) in exact.as_array().iter().zip(asym.as_array()) {
            if a.re != 0.0 {
                assert!(((e.re - a.re) / a.re).abs() < 1e-4);
            }
        }
    }

    #[test]
    fn threshold_flip_at_quarter_gamma() {
        for g in [1.0, 0.3, 4.0] {
            let below = triplet_roots(&p(g, 0.0, g / 4.0 - 1e-6));
            let above = triplet_roots(&p(g, 0.0, g / 4.0 + 1e-6));
            assert_eq!(below.regime, Regime::SubThreshold, "γ = {g}");
            assert_eq!(above.regime, Regime::Triplet, "γ = {g}");
        }
    }

    #[test]
    fn undriven_roots() {
        // M = −(z − Δ)(z + Δ)(z + iγ/2) at Ω_R = 0.
        let roots = triplet_roots(&p(1.0, 0.0, 0.0));
        let want = [c(0.0, -1.0), c(0.0, -0.5), c(0.0, -0.5)];
        for (g, w) in roots.as_array().iter().zip(want) {
            assert!((g - w).norm() < 1e-12, "{g} vs {w}");
        }
        let roots = triplet_roots(&p(1.0, 2.0, 0.0));
        let want = [c(-2.0, -0.5), c(0.0, -1.0), c(2.0, -0.5)];
        for (g, w) in roots.as_array().iter().zip(want) {
            assert!((g - w).norm() < 1e-12, "{g} vs {w}");
        }
    }

    proptest! {
        #[test]
        fn roots_reconstruct_polynomial(gamma in 0.1f64..5.0, delta in -20.0f64..20.0, rabi in 0.0f64..200.0) {
            let pp = p(gamma, delta, rabi);
            let m = mollow_poly(&pp);
            let roots = triplet_roots(&pp);
            let rebuilt = Poly::from_roots(&roots.as_array()).scale(c(-1.0, 0.0));
            let scale = pp.frequency_scale();
            let target = [m.c0, m.c1, m.c2, m.c3];
            for (k, (got, want)) in rebuilt.coeffs().iter().zip(target).enumerate() {
                let mag = scale.powi(3 - k as i32);
                prop_assert!((got - want).norm() <= 1e-10 * mag, "c{} {} vs {}", k, got, want);
            }
            for l in roots.as_array() {
                prop_assert!(m.eval(l).norm() <= 1e-12 * scale.powi(3).max(1.0), "residual {}", m.eval(l).norm());
                prop_assert!(l.im < 0.0);
            }
        }

        #[test]
        fn exactly_one_central_root(gamma in 0.1f64..5.0, delta in -20.0f64..20.0, rabi in 0.0f64..200.0) {
            let pp = p(gamma, delta, rabi);
            let roots = triplet_roots(&pp);
            let tol = tol_center(&pp);
            let central = roots.as_array().iter().filter(|l| l.re.abs() <= tol).count();
            match roots.regime {
                Regime::Triplet => {
                    prop_assert_eq!(central, 1);
                    prop_assert_eq!(roots.lambda2.re, 0.0);
                    prop_assert!(roots.lambda1.re < 0.0 && roots.lambda3.re > 0.0);
                    prop_assert_eq!(roots.lambda1.re, -roots.lambda3.re);
                }
                Regime::SubThreshold => prop_assert_eq!(central, 3),
            }
        }

        #[test]
        fn resonant_factorization(gamma in 0.1f64..5.0, ratio in 0.26f64..100.0) {
            let rabi = ratio * gamma;
            let roots = triplet_roots(&p(gamma, 0.0, rabi));
            let side = (rabi * rabi - gamma * gamma / 16.0).sqrt();
            let tol = 1e-12 * rabi.max(gamma);
            prop_assert!((roots.lambda1 - c(-side, -0.75 * gamma)).norm() <= tol);
            prop_assert!((roots.lambda2 - c(0.0, -0.5 * gamma)).norm() <= tol);
            prop_assert!((roots.lambda3 - c(side, -0.75 * gamma)).norm() <= tol);
        }
    }
}
