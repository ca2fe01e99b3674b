//! Rational commutator spectra `N(Ω′)/D(Ω′)` of the three susceptibility
//! components, as analytic functions of complex `Ω′`.
//!
//! `M̄` below is the coefficient-conjugated Mollow polynomial: it equals
//! `conj(M(Ω′))` on the real axis and its roots are `conj(Λ_m)`.

use std::fmt;

use num_complex::Complex64;

use crate::model::{steady_state, DriveParams, SteadyState};
use crate::poly::Poly;
use crate::triplet::{mollow_poly_expr, triplet_roots};
use crate::{Error, Result};

const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Component {
    /// Elastic response `χ_zz^(+-)` of the z-polarized probe.
    KerrZ,
    /// Phase-conjugating response `χ_zz^(++)`.
    ParametricZ,
    /// Response `χ_xx = χ_yy` of the satellite transitions.
    Transverse,
}

impl Component {
    pub const ALL: [Component; 3] = [Component::KerrZ, Component::ParametricZ, Component::Transverse];

    /// Kebab-case name used on the command line and in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Component::KerrZ => "kerr-z",
            Component::ParametricZ => "parametric-z",
            Component::Transverse => "transverse",
        }
    }

    /// Sign `σ` of the probe frequency in the retarded denominator `σΩ − Ω′ + i0`.
    pub fn probe_sign(&self) -> f64 {
        match self {
            Component::ParametricZ => -1.0,
            _ => 1.0,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Component {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "kerr-z" => Ok(Component::KerrZ),
            "parametric-z" => Ok(Component::ParametricZ),
            "transverse" => Ok(Component::Transverse),
            other => Err(format!(
                "unknown component `{other}` (expected kerr-z, parametric-z or transverse)"
            )),
        }
    }
}

/// A denominator root and its multiplicity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pole {
    pub location: Complex64,
    pub multiplicity: u32,
}

/// Poles closer than this multiple of the frequency scale are merged.
pub const MERGE_TOL: f64 = 1e-10;
/// Absolute distance to a denominator root that counts as a hit.
pub const POLE_HIT_TOL: f64 = 1e-13;

#[derive(Debug, Clone, PartialEq)]
pub struct SpectralKernel {
    pub component: Component,
    pub params: DriveParams,
    pub steady: SteadyState,
    pub numerator: Poly,
    /// Denominator roots, one entry per linear factor.
    roots: Vec<Complex64>,
    /// Roots merged into clusters within [`MERGE_TOL`]`·scale`.
    poles: Vec<Pole>,
    /// Leading coefficient of the denominator.
    pub constant: Complex64,
}

impl SpectralKernel {
    pub fn roots(&self) -> &[Complex64] {
        &self.roots
    }

    pub fn poles(&self) -> &[Pole] {
        &self.poles
    }

    pub fn denominator_degree(&self) -> usize {
        self.roots.len()
    }

    /// The denominator expanded from its factored form.
    pub fn denominator(&self) -> Poly {
        Poly::from_roots(&self.roots).scale(self.constant)
    }

    pub fn eval(&self, omega_prime: Complex64) -> Result<Complex64> {
        eval_kernel(self, omega_prime)
    }

    /// Evaluation without the pole-proximity check.
    pub(crate) fn eval_unchecked(&self, w: Complex64) -> Complex64 {
        let den = self.roots.iter().fold(self.constant, |acc, &r| acc * (w - r));
        self.numerator.eval(w) / den
    }
}

/// Individual numerator terms in the order they appear in the closed forms.
pub fn numerator_terms(component: Component, p: &DriveParams) -> Vec<Poly> {
    let st = steady_state(p);
    let g = p.gamma();
    let d = p.delta();
    let r = p.rabi();
    let h = I * (0.5 * g);
    let sm = st.sigma_minus;
    let sp = st.sigma_plus;
    let one = Complex64::new(1.0, 0.0);
    let w = Poly::x();
    let re = |x: f64| Poly::real(x);
    // Δ ± Ω′ ± iγ/2 as polynomials in Ω′.
    let lin = |sw: f64, sh: f64| Poly::linear(Complex64::new(d, 0.0) + sh * h, sw * one);

    match component {
        Component::KerrZ => {
            let m = mollow_poly_expr(p);
            let mb = m.conj_coeffs();
            vec![
                (&m * &mb).scale(g.into()),
                w.scale((-g * r.powi(4) * d).into()),
                (lin(-1.0, -1.0) * &mb).scale((0.5 * g * r * r).into()),
                (lin(-1.0, 1.0) * &m).scale((0.5 * g * r * r).into()),
                (lin(1.0, -1.0) * (lin(-1.0, 1.0) * &m - (&w * lin(-1.0, -1.0)).scale((r * r).into())))
                    .scale(g * sm * r),
                (lin(1.0, 1.0) * (lin(-1.0, -1.0) * &mb - (&w * lin(-1.0, 1.0)).scale((r * r).into())))
                    .scale(g * sp * r),
            ]
        }
        Component::ParametricZ => {
            let m = mollow_poly_expr(p);
            let mb = m.conj_coeffs();
            vec![
                (lin(-1.0, 1.0) * &m).scale((0.5 * g * r * r).into()),
                (lin(1.0, 1.0) * &mb).scale((0.5 * g * r * r).into()),
                w.scale((-g * r.powi(4) * d).into()),
                (lin(1.0, -1.0) * lin(-1.0, 1.0) * &m).scale(g * sm * r),
                (lin(-1.0, -1.0) * lin(1.0, 1.0) * &mb).scale(g * sm * r),
                (&w * lin(1.0, -1.0) * lin(-1.0, -1.0)).scale(-g * sm * r.powi(3)),
                (&w * lin(1.0, 1.0) * lin(-1.0, 1.0)).scale(-g * sp * r.powi(3)),
            ]
        }
        Component::Transverse => {
            let ig = Complex64::new(0.0, g);
            vec![
                (&w * &w + re(g * g)).scale((16.0 * g).into()),
                re(4.0 * r * r * g * st.upper_population()),
                Poly::linear(ig, one).scale(8.0 * r * g * sm),
                Poly::linear(-ig, one).scale(8.0 * r * g * sp),
            ]
        }
    }
}

/// The closed-form kernel of `component` at `p`.
pub fn build_kernel(component: Component, p: &DriveParams) -> SpectralKernel {
    assemble(component, p, numerator_terms(component, p))
}

/// Kernel with the sign of one numerator term reversed. Used to confirm that
/// the cross-checks detect a transcription error.
pub fn build_kernel_flipped(component: Component, p: &DriveParams, term: usize) -> SpectralKernel {
    let mut terms = numerator_terms(component, p);
    if let Some(t) = terms.get_mut(term) {
        *t = -&*t;
    }
    assemble(component, p, terms)
}

fn assemble(component: Component, p: &DriveParams, terms: Vec<Poly>) -> SpectralKernel {
    let numerator = terms.iter().fold(Poly::zero(), |acc, t| acc + t);
    let (roots, constant) = denominator_roots(component, p);
    let poles = merge_poles(&roots, MERGE_TOL * p.frequency_scale());
    SpectralKernel {
        component,
        params: *p,
        steady: steady_state(p),
        numerator,
        roots,
        poles,
        constant,
    }
}

fn denominator_roots(component: Component, p: &DriveParams) -> (Vec<Complex64>, Complex64) {
    let g = p.gamma();
    let d = p.delta();
    let h = I * (0.5 * g);
    match component {
        Component::KerrZ | Component::ParametricZ => {
            let lam = triplet_roots(p).as_array();
            let mut roots = Vec::with_capacity(8);
            let constant = if component == Component::KerrZ {
                // (Δ+Ω′)² + γ²/4
                roots.extend([-d - h, -d + h]);
                Complex64::new(1.0, 0.0)
            } else {
                // (Δ+Ω′+iγ/2)(Δ−Ω′+iγ/2) = −(Ω′ + Δ + iγ/2)(Ω′ − Δ − iγ/2)
                roots.extend([-d - h, d + h]);
                Complex64::new(-1.0, 0.0)
            };
            // M·M̄ = (−1)² Π(Ω′ − Λ)(Ω′ − Λ*)
            roots.extend(lam);
            roots.extend(lam.map(|l| l.conj()));
            (roots, constant)
        }
        Component::Transverse => {
            let q = transverse_quadratic_roots(p);
            (vec![q[0], q[1], q[0].conj(), q[1].conj()], Complex64::new(16.0, 0.0))
        }
    }
}

/// Roots of `4(Δ + Ω′ + iγ/2)(Ω′ + iγ) − Ω_R²`.
pub fn transverse_quadratic_roots(p: &DriveParams) -> [Complex64; 2] {
    let g = p.gamma();
    let b = Complex64::new(p.delta(), 1.5 * g);
    let c = I * g * Complex64::new(p.delta(), 0.5 * g) - 0.25 * p.rabi() * p.rabi();
    let disc = (b * b - 4.0 * c).sqrt();
    // Pick the sign that avoids cancellation, then recover the other root from the product.
    let big = if (b.conj() * disc).re >= 0.0 {
        -0.5 * (b + disc)
    } else {
        -0.5 * (b - disc)
    };
    let other = if big == Complex64::new(0.0, 0.0) { big } else { c / big };
    let mut roots = [big, other];
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    roots
}

fn merge_poles(roots: &[Complex64], tol: f64) -> Vec<Pole> {
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        match clusters.iter_mut().find(|c| c.iter().any(|x| (x - r).norm() <= tol)) {
            Some(c) => c.push(r),
            None => clusters.push(vec![r]),
        }
    }
    clusters
        .into_iter()
        .map(|c| Pole {
            location: c.iter().sum::<Complex64>() / c.len() as f64,
            multiplicity: c.len() as u32,
        })
        .collect()
}

/// `N(Ω′)/D(Ω′)` with the denominator evaluated in factored form.
pub fn eval_kernel(k: &SpectralKernel, omega_prime: Complex64) -> Result<Complex64> {
    if let Some(distance) = k
        .roots
        .iter()
        .map(|r| (omega_prime - r).norm())
        .find(|&dist| dist <= POLE_HIT_TOL)
    {
        return Err(Error::EvaluationAtPole {
            omega: omega_prime,
            distance,
        });
    }
    Ok(k.eval_unchecked(omega_prime))
}

/// Distinct denominator roots with multiplicities.
pub fn kernel_poles(k: &SpectralKernel) -> Vec<(Complex64, u32)> {
    k.poles.iter().map(|p| (p.location, p.multiplicity)).collect()
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

    fn lorentzian(p: &DriveParams, w: f64) -> f64 {
        p.gamma() / ((p.delta() + w).powi(2) + 0.25 * p.gamma() * p.gamma())
    }

    #[test]
    fn degrees() {
        let pp = p(1.0, 0.7, 1.3);
        let k = build_kernel(Component::KerrZ, &pp);
        assert_eq!(k.denominator_degree(), 8);
        assert!(k.numerator.degree() <= 6);
        let k = build_kernel(Component::ParametricZ, &pp);
        assert_eq!(k.denominator_degree(), 8);
        assert!(k.numerator.degree() <= 5);
        let k = build_kernel(Component::Transverse, &pp);
        assert_eq!(k.denominator_degree(), 4);
        assert!(k.numerator.degree() <= 2);
    }

    #[test]
    fn undriven_reductions() {
        for delta in [0.0, 0.8, -2.5] {
            let pp = p(1.0, delta, 0.0);
            let kerr = build_kernel(Component::KerrZ, &pp);
            let par = build_kernel(Component::ParametricZ, &pp);
            let tr = build_kernel(Component::Transverse, &pp);
            assert!(par.numerator.is_zero());
            for w in [-3.0, -0.4, 0.0, 0.25, 5.0] {
                let z = c(w, 0.0);
                let want = lorentzian(&pp, w);
                let kv = eval_kernel(&kerr, z).unwrap();
                let tv = eval_kernel(&tr, z).unwrap();
                assert!((kv - want).norm() <= 1e-12 * want, "Δ={delta} Ω′={w}: {kv}");
                assert!((tv - want).norm() <= 1e-12 * want, "Δ={delta} Ω′={w}: {tv}");
                assert!((kv - tv).norm() <= 1e-12);
                assert_eq!(eval_kernel(&par, z).unwrap(), c(0.0, 0.0));
            }
        }
        let k = build_kernel(Component::KerrZ, &p(1.0, 0.0, 0.0));
        assert!((eval_kernel(&k, c(0.0, 0.0)).unwrap() - 4.0).norm() < 1e-13);
    }

    #[test]
    fn resonant_poles_have_double_at_half_gamma() {
        let k = build_kernel(Component::KerrZ, &p(1.0, 0.0, 1.0));
        let poles = kernel_poles(&k);
        let upper: Vec<_> = poles.iter().filter(|(z, _)| z.im > 0.0).collect();
        assert_eq!(upper.len(), 3);
        let side = 15f64.sqrt() / 4.0;
        let find = |z: Complex64| upper.iter().find(|(x, _)| (x - z).norm() < 1e-12).map(|(_, m)| *m);
        assert_eq!(find(c(0.0, 0.5)), Some(2));
        assert_eq!(find(c(-side, 0.75)), Some(1));
        assert_eq!(find(c(side, 0.75)), Some(1));
        assert_eq!(poles.iter().map(|(_, m)| m).sum::<u32>(), 8);
    }

    #[test]
    fn transverse_undriven_poles() {
        let k = build_kernel(Component::Transverse, &p(1.0, 0.0, 0.0));
        let mut poles = kernel_poles(&k);
        poles.sort_by(|a, b| a.0.im.total_cmp(&b.0.im));
        let want = [c(0.0, -1.0), c(0.0, -0.5), c(0.0, 0.5), c(0.0, 1.0)];
        assert_eq!(poles.len(), 4);
        for ((z, m), w) in poles.iter().zip(want) {
            assert_eq!(*m, 1);
            assert!((z - w).norm() < 1e-14, "{z} vs {w}");
        }
    }

    #[test]
    fn detuned_parametric_poles_are_simple() {
        let k = build_kernel(Component::ParametricZ, &p(1.0, 1.0, 1.0));
        let poles = kernel_poles(&k);
        assert_eq!(poles.len(), 8);
        assert!(poles.iter().all(|(_, m)| *m == 1));
    }

    #[test]
    fn evaluation_at_pole_is_rejected() {
        let k = build_kernel(Component::KerrZ, &p(1.0, 0.0, 1.0));
        assert!(matches!(
            eval_kernel(&k, c(0.0, 0.5)),
            Err(Error::EvaluationAtPole { .. })
        ));
    }

    #[test]
    fn kerr_denominator_matches_direct_product() {
        for pp in [p(1.0, 0.0, 1.0), p(1.0, 1.3, 0.4), p(0.5, -2.0, 7.0)] {
            let k = build_kernel(Component::KerrZ, &pp);
            let m = mollow_poly_expr(&pp);
            let g = pp.gamma();
            let lor = Poly::new(vec![
                c(pp.delta() * pp.delta() + 0.25 * g * g, 0.0),
                c(2.0 * pp.delta(), 0.0),
                c(1.0, 0.0),
            ]);
            let direct = lor * &m * m.conj_coeffs();
            let expanded = k.denominator();
            let size = direct.coeffs().iter().map(|z| z.norm()).fold(0.0, f64::max);
            for (a, b) in expanded.coeffs().iter().zip(direct.coeffs()) {
                assert!((a - b).norm() <= 1e-10 * size, "{a} vs {b}");
            }
        }
    }

    #[test]
    fn flipped_term_changes_kernel() {
        let pp = p(1.0, 0.6, 1.2);
        let good = build_kernel(Component::KerrZ, &pp);
        let bad = build_kernel_flipped(Component::KerrZ, &pp, 1);
        let z = c(0.3, 0.0);
        assert!((good.eval(z).unwrap() - bad.eval(z).unwrap()).norm() > 1e-3);
    }

    proptest! {
        #[test]
        fn real_on_real_axis(gamma in 0.2f64..3.0, delta in -5.0f64..5.0, rabi in 0.0f64..30.0, w in -40.0f64..40.0) {
            let pp = p(gamma, delta, rabi);
            for comp in [Component::KerrZ, Component::Transverse] {
                let v = eval_kernel(&build_kernel(comp, &pp), c(w, 0.0)).unwrap();
                prop_assert!(v.im.abs() <= 1e-10 * v.norm(), "{} {}", comp, v);
            }
        }

        #[test]
        fn decays_as_inverse_square(gamma in 0.2f64..3.0, delta in -5.0f64..5.0, rabi in 0.0f64..30.0) {
            let pp = p(gamma, delta, rabi);
            for comp in Component::ALL {
                let k = build_kernel(comp, &pp);
                let far: Vec<f64> = [1e4, 1e5, 1e6]
                    .iter()
                    .map(|&w| (eval_kernel(&k, c(w, 0.0)).unwrap() * w * w).norm())
                    .collect();
                prop_assert!(far[2] <= 2.0 * far[0] + 1e-12, "{} {:?}", comp, far);
            }
        }

        #[test]
        fn undriven_isotropy(gamma in 0.2f64..3.0, delta in -5.0f64..5.0, w in -20.0f64..20.0) {
            let pp = p(gamma, delta, 0.0);
            let a = eval_kernel(&build_kernel(Component::KerrZ, &pp), c(w, 0.0)).unwrap();
            let b = eval_kernel(&build_kernel(Component::Transverse, &pp), c(w, 0.0)).unwrap();
            prop_assert!((a - b).norm() <= 1e-12 * a.norm().max(1.0));
        }
    }
}
