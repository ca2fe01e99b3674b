//! Weak-field and saturation limits, and the qualitative spectral shapes.

use mollow::asymptotics::{
    chi_saturation_center, chi_saturation_sideband, chi_saturation_transverse, chi_weak, Sideband,
};
use mollow::contour::{chi_residue, linear_grid, sweep, Method};
use mollow::model::renormalize_dense;
use mollow::triplet::{triplet_roots, triplet_roots_saturation, Regime};
use mollow::{Complex64, Component, DensityScale, DriveParams};

const ONE: DensityScale = DensityScale::UNIT;

fn resonant(s: f64) -> DriveParams {
    DriveParams::from_saturation(1.0, 0.0, s).unwrap()
}

fn residue(comp: Component, p: &DriveParams, omega: f64) -> Complex64 {
    chi_residue(comp, p, omega, ONE).unwrap()
}

fn slope(values: &[f64], s: &[f64]) -> f64 {
    let n = values.len() as f64;
    let xs: Vec<f64> = s.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.ln()).collect();
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let num: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let den: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    num / den
}

fn weak_deviation(comp: Component, s: f64) -> f64 {
    let p = resonant(s);
    linear_grid(-3.0, 3.0, 601)
        .unwrap()
        .into_iter()
        .map(|w| {
            let exact = residue(comp, &p, w);
            (chi_weak(comp, &p, w, ONE) - exact).norm() / exact.norm()
        })
        .fold(0.0, f64::max)
}

#[test]
fn weak_field_limit_is_first_order_overall() {
    let at = |s| Component::ALL.iter().map(|&c| weak_deviation(c, s)).fold(0.0, f64::max);
    let (coarse, fine) = (at(1e-2), at(1e-3));
    assert!(coarse < 0.2, "{coarse}");
    let ratio = coarse / fine;
    assert!((5.0..=20.0).contains(&ratio), "ratio {ratio}");
}

#[test]
fn weak_field_limit_converges_at_least_linearly_per_component() {
    for comp in Component::ALL {
        let ratio = weak_deviation(comp, 1e-2) / weak_deviation(comp, 1e-3);
        assert!(ratio >= 5.0, "{comp}: ratio {ratio}");
    }
}

#[test]
fn weak_field_points_within_first_order_bound() {
    for s in [1e-3, 1e-2] {
        let p = resonant(s);
        for w in [0.0, 0.5, -0.5] {
            for comp in Component::ALL {
                let exact = residue(comp, &p, w);
                let dev = (chi_weak(comp, &p, w, ONE) - exact).norm() / exact.norm();
                assert!(dev <= 20.0 * s, "{comp} s={s} Ω={w}: {dev}");
            }
        }
    }
}

const DEEP: [f64; 3] = [1e2, 1e3, 1e4];

#[test]
fn kerr_center_decays_as_inverse_square_saturation() {
    // On resonance the triplet residues cancel the Lorentzian one at Ω = 0,
    // leaving a 1/s² tail rather than the 1/s of the centre form.
    let v: Vec<f64> = DEEP
        .iter()
        .map(|&s| residue(Component::KerrZ, &resonant(s), 0.0).norm())
        .collect();
    let k = slope(&v, &DEEP);
    assert!((k + 2.0).abs() <= 0.05, "slope {k}");
}

#[test]
fn parametric_center_decays_as_inverse_saturation() {
    let v: Vec<f64> = DEEP
        .iter()
        .map(|&s| residue(Component::ParametricZ, &resonant(s), 0.0).norm())
        .collect();
    let k = slope(&v, &DEEP);
    assert!((k + 1.0).abs() <= 0.05, "slope {k}");
}

#[test]
fn kerr_sideband_decays_as_inverse_root_saturation() {
    let v: Vec<f64> = DEEP
        .iter()
        .map(|&s| {
            let p = resonant(s);
            residue(Component::KerrZ, &p, p.rabi()).norm()
        })
        .collect();
    let k = slope(&v, &DEEP);
    assert!((k + 0.5).abs() <= 0.05, "slope {k}");
}

#[test]
fn center_anchor_error_does_not_shrink() {
    let errs = |comp| -> Vec<f64> {
        DEEP.iter()
            .map(|&s| {
                let p = resonant(s);
                let exact = residue(comp, &p, 0.0);
                (chi_saturation_center(comp, &p, 0.0, ONE).unwrap() - exact).norm() / exact.norm()
            })
            .collect()
    };
    // Kerr: the form keeps a 1/s term the exact value lacks, so the error grows as s.
    let kerr = errs(Component::KerrZ);
    for (e, s) in kerr.iter().zip(DEEP) {
        assert!((e / s - 0.5).abs() < 0.01, "{kerr:?}");
    }
    // Parametric: the error settles at 1/2.
    let par = errs(Component::ParametricZ);
    assert!(par.iter().all(|e| (e - 0.5).abs() < 0.011), "{par:?}");
}

#[test]
fn parametric_center_anchor_within_factor_two() {
    // The closed form keeps only the triplet poles; the measured ratio
    // |exact|/|form| settles at 2 as s grows.
    for s in DEEP {
        let p = resonant(s);
        let exact = residue(Component::ParametricZ, &p, 0.0);
        let form = chi_saturation_center(Component::ParametricZ, &p, 0.0, ONE).unwrap();
        let ratio = exact.norm() / form.norm();
        assert!((ratio - 2.0).abs() < 0.05, "s={s}: {ratio}");
    }
}

#[test]
fn sideband_anchor() {
    let p = resonant(1e4);
    let r = p.rabi();
    let exact = residue(Component::KerrZ, &p, r);
    let form = chi_saturation_sideband(Component::KerrZ, &p, r, ONE, Sideband::Blue).unwrap();
    assert!((form - exact).norm() <= 0.1 * exact.norm(), "{form} vs {exact}");
    let exact = residue(Component::ParametricZ, &p, -r);
    let form = chi_saturation_sideband(Component::ParametricZ, &p, -r, ONE, Sideband::Blue).unwrap();
    assert!((form - exact).norm() <= 0.1 * exact.norm(), "{form} vs {exact}");
}

#[test]
fn red_sideband_form_has_reversed_sign() {
    // Λ → −Λ* alone moves the resonance but keeps the blue prefactor; the
    // exact red peak is its negative.
    let p = resonant(1e4);
    let r = p.rabi();
    let exact = residue(Component::KerrZ, &p, -r);
    let form = chi_saturation_sideband(Component::KerrZ, &p, -r, ONE, Sideband::Red).unwrap();
    assert!((form + exact).norm() <= 0.1 * exact.norm(), "{form} vs {exact}");
}

#[test]
fn doublet_anchor() {
    let p = resonant(1e4);
    for w in [-0.5 * p.rabi(), 0.5 * p.rabi()] {
        let exact = residue(Component::Transverse, &p, w);
        let form = chi_saturation_transverse(&p, w, ONE);
        assert!((form - exact).norm() <= 0.05 * exact.norm(), "Ω={w}: {form} vs {exact}");
    }
}

#[test]
fn resonant_roots_match_factorization() {
    for rabi in [0.3, 1.0, 2.5, 10.0, 40.0] {
        let roots = triplet_roots(&DriveParams::new(1.0, 0.0, rabi).unwrap());
        let side = (rabi * rabi - 1.0 / 16.0).sqrt();
        assert_eq!(roots.regime, Regime::Triplet);
        assert!((roots.lambda1 - Complex64::new(-side, -0.75)).norm() <= 1e-12);
        assert!((roots.lambda2 - Complex64::new(0.0, -0.5)).norm() <= 1e-12);
        assert!((roots.lambda3 - Complex64::new(side, -0.75)).norm() <= 1e-12);
    }
}

#[test]
fn sideband_root_gap_is_second_order() {
    // √(Ω_R² − γ²/16) − Ω_R ≈ −γ²/(32Ω_R): 3.1e-3 at Ω_R = 10, 3.1e-4 at 100.
    for rabi in [10.0, 100.0] {
        let p = DriveParams::new(1.0, 0.0, rabi).unwrap();
        let exact = triplet_roots(&p);
        let asym = triplet_roots_saturation(&p);
        let gap = (exact.lambda3.re - asym.lambda3.re).abs();
        assert!((gap * 32.0 * rabi - 1.0).abs() < 1e-3, "Ω_R={rabi}: {gap}");
        assert_eq!(exact.lambda2.re, asym.lambda2.re);
    }
}

fn local_maxima(values: &[(f64, f64)]) -> Vec<(f64, f64)> {
    values
        .windows(3)
        .filter(|w| w[1].1 > w[0].1 && w[1].1 >= w[2].1)
        .map(|w| w[1])
        .collect()
}

fn grid() -> Vec<f64> {
    linear_grid(-8.0, 8.0, 801).unwrap()
}

#[test]
fn parametric_peak_at_intermediate_saturation() {
    let peaks: Vec<(f64, f64)> = [0.1, 0.3, 1.0, 3.0, 10.0, 100.0]
        .iter()
        .map(|&s| {
            let r = sweep(
                Component::ParametricZ,
                &resonant(s),
                &grid(),
                Method::Residue,
                ONE,
                1e-8,
            )
            .unwrap();
            (s, r.samples.iter().map(|x| x.value.norm()).fold(0.0, f64::max))
        })
        .collect();
    let best = peaks
        .iter()
        .copied()
        .fold((0.0, 0.0), |a, b| if b.1 > a.1 { b } else { a });
    assert!((0.3..=3.0).contains(&best.0), "{peaks:?}");

    let p = resonant(100.0);
    let r = sweep(Component::ParametricZ, &p, &grid(), Method::Residue, ONE, 1e-8).unwrap();
    let abs: Vec<(f64, f64)> = r.samples.iter().map(|x| (x.omega, x.value.norm())).collect();
    let maxima = local_maxima(&abs);
    for target in [-p.rabi(), p.rabi()] {
        assert!(
            maxima.iter().any(|(w, _)| (w - target).abs() <= 1.0),
            "{target}: {maxima:?}"
        );
    }
}

#[test]
fn kerr_gain_under_strong_drive() {
    for s in [10.0, 100.0] {
        let r = sweep(Component::KerrZ, &resonant(s), &grid(), Method::Residue, ONE, 1e-8).unwrap();
        let min = r.samples.iter().map(|x| x.value.im).fold(f64::INFINITY, f64::min);
        assert!(min < 0.0, "s={s}: {min}");
    }
    let r = sweep(
        Component::KerrZ,
        &resonant(10.0),
        &linear_grid(-6.0, 6.0, 481).unwrap(),
        Method::Residue,
        ONE,
        1e-8,
    )
    .unwrap();
    assert!(r.samples.iter().any(|x| x.value.im < 0.0));
}

#[test]
fn transverse_doublet() {
    let p = resonant(100.0);
    let r = sweep(Component::Transverse, &p, &grid(), Method::Residue, ONE, 1e-8).unwrap();
    for key in [|z: Complex64| z.im.abs(), |z: Complex64| z.norm()] {
        let vals: Vec<(f64, f64)> = r.samples.iter().map(|x| (x.omega, key(x.value))).collect();
        let mut maxima = local_maxima(&vals);
        maxima.sort_by(|a, b| b.1.total_cmp(&a.1));
        let (a, b) = (maxima[0], maxima[1]);
        let half = 0.5 * p.rabi();
        let (lo, hi) = if a.0 < b.0 { (a, b) } else { (b, a) };
        assert!((lo.0 + half).abs() <= 0.5 && (hi.0 - half).abs() <= 0.5, "{maxima:?}");
        assert!((a.1 - b.1).abs() <= 0.05 * a.1, "{a:?} {b:?}");
    }
}

#[test]
fn dense_renormalization_is_a_gamma_change() {
    let base = DriveParams::new(1.0, 0.3, 1.7).unwrap();
    let renorm = renormalize_dense(&base, 4.0).unwrap();
    assert_eq!(renorm.gamma(), 2.0);
    let direct = DriveParams::new(2.0, 0.3, 1.7).unwrap();
    let g = linear_grid(-6.0, 6.0, 121).unwrap();
    for comp in Component::ALL {
        let a = sweep(comp, &renorm, &g, Method::Residue, ONE, 1e-8).unwrap();
        let b = sweep(comp, &direct, &g, Method::Residue, ONE, 1e-8).unwrap();
        for (x, y) in a.samples.iter().zip(&b.samples) {
            assert_eq!(x.value.re.to_bits(), y.value.re.to_bits());
            assert_eq!(x.value.im.to_bits(), y.value.im.to_bits());
        }
    }
}

#[test]
fn undriven_sweep_is_linear_response() {
    for delta in [0.0, 1.2] {
        let p = DriveParams::new(1.0, delta, 0.0).unwrap();
        let g = linear_grid(-6.0, 6.0, 481).unwrap();
        let kerr = sweep(Component::KerrZ, &p, &g, Method::Residue, ONE, 1e-8).unwrap();
        let tr = sweep(Component::Transverse, &p, &g, Method::Residue, ONE, 1e-8).unwrap();
        let par = sweep(Component::ParametricZ, &p, &g, Method::Residue, ONE, 1e-8).unwrap();
        for ((k, t), q) in kerr.samples.iter().zip(&tr.samples).zip(&par.samples) {
            let want = -1.0 / Complex64::new(k.omega + delta, 0.5);
            assert!((k.value - want).norm() <= 1e-10 * want.norm());
            assert!((t.value - want).norm() <= 1e-10 * want.norm());
            assert_eq!(q.value, Complex64::new(0.0, 0.0));
        }
    }
}
