//! Self-check suite: the evaluators against each other, and against the
//! closed-form limits.

use mollow::asymptotics::{chi_saturation_sideband, chi_saturation_transverse, chi_weak, Sideband};
use mollow::contour::{chi_quadrature_kernel, chi_residue_kernel, linear_grid};
use mollow::model::steady_state;
use mollow::oracle::{chi_oracle, drift_matrix, Channel};
use mollow::spectra::{build_kernel, build_kernel_flipped, numerator_terms};
use mollow::triplet::{mollow_poly, triplet_roots, Regime};
use mollow::{Complex64, Component, DensityScale, DriveParams};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::config::CheckArgs;
use crate::CliError;

const ONE: DensityScale = DensityScale::UNIT;

/// Parameter point at which a deviation was measured.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Point {
    pub component: Option<&'static str>,
    pub gamma: f64,
    pub delta: f64,
    pub rabi: f64,
    pub saturation: f64,
    pub omega: Option<f64>,
}

impl Point {
    fn new(component: Option<Component>, p: &DriveParams, omega: Option<f64>) -> Self {
        Point {
            component: component.map(|c| c.name()),
            gamma: p.gamma(),
            delta: p.delta(),
            rabi: p.rabi(),
            saturation: p.saturation(),
            omega,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Property {
    pub name: String,
    pub passed: bool,
    pub samples: usize,
    /// Largest deviation found, in the property's own measure.
    pub worst_deviation: f64,
    pub tolerance: f64,
    pub worst_point: Option<Point>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub flipped_term: Option<String>,
    pub properties: Vec<Property>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("report serializes");
        text.push('\n');
        text
    }

    pub fn failed(&self) -> Vec<&str> {
        self.properties
            .iter()
            .filter(|p| !p.passed)
            .map(|p| p.name.as_str())
            .collect()
    }

    pub fn property(&self, name: &str) -> Option<&Property> {
        self.properties.iter().find(|p| p.name == name)
    }
}

/// Worst of a set of `(deviation, limit, point)` measurements; ties keep the first.
fn worst(name: impl Into<String>, tolerance: f64, rows: Vec<(f64, f64, Point)>, detail: String) -> Property {
    let passed = rows.iter().all(|(d, lim, _)| d.is_finite() && d <= lim);
    let score = |(d, lim, _): (f64, f64, Point)| match (d.is_finite(), lim > 0.0) {
        (false, _) => f64::INFINITY,
        (true, true) => d / lim,
        (true, false) if d == 0.0 => 0.0,
        (true, false) => f64::INFINITY,
    };
    let mut best: Option<(f64, f64, Point)> = None;
    for row in rows.iter().copied() {
        if best.is_none_or(|b| score(row) > score(b)) {
            best = Some(row);
        }
    }
    Property {
        name: name.into(),
        passed,
        samples: rows.len(),
        worst_deviation: best.map_or(0.0, |b| b.0),
        tolerance,
        worst_point: best.map(|b| b.2),
        detail,
    }
}

fn scalar(name: &str, passed: bool, deviation: f64, tolerance: f64, point: Option<Point>, detail: String) -> Property {
    Property {
        name: name.to_string(),
        passed,
        samples: 1,
        worst_deviation: deviation,
        tolerance,
        worst_point: point,
        detail,
    }
}

/// Parses `component:index` for the fault-injection flag.
pub fn parse_flip(arg: &str) -> Result<(Component, usize), CliError> {
    let bad = || CliError::Usage(format!("--flip-term expects component:index (got `{arg}`)"));
    let (comp, idx) = arg.split_once(':').ok_or_else(bad)?;
    let comp: Component = comp.parse().map_err(|_| bad())?;
    let idx: usize = idx.parse().map_err(|_| bad())?;
    let probe = DriveParams::new(1.0, 0.0, 1.0).expect("valid probe parameters");
    let terms = numerator_terms(comp, &probe).len();
    if idx >= terms {
        return Err(CliError::Usage(format!(
            "--flip-term: {comp} has {terms} terms (index {idx})"
        )));
    }
    Ok((comp, idx))
}

fn agreement_limit(reference: Complex64) -> (f64, bool) {
    if reference.norm() < 1e-3 {
        (1e-9, false)
    } else {
        (1e-6 * reference.norm(), true)
    }
}

fn triple_agreement(args: &CheckArgs, flip: Option<(Component, usize)>) -> Result<Vec<Property>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed);
    let points: Vec<(Component, DriveParams, f64)> = (0..args.points)
        .map(|_| {
            let s = 10f64.powf(rng.gen_range(-3.0..=3.0));
            let delta = rng.gen_range(-5.0..=5.0);
            let omega = rng.gen_range(-10.0..=10.0);
            let comp = Component::ALL[rng.gen_range(0..3)];
            (
                comp,
                DriveParams::from_saturation(1.0, delta, s).expect("sampled parameters are valid"),
                omega,
            )
        })
        .collect();
    let tol = args.tol;
    let results: Vec<Result<(Component, f64, f64, Point), mollow::Error>> = points
        .par_iter()
        .map(|&(comp, p, omega)| {
            let kernel = match flip {
                Some((c, i)) if c == comp => build_kernel_flipped(comp, &p, i),
                _ => build_kernel(comp, &p),
            };
            let r = chi_residue_kernel(&kernel, omega, ONE)?;
            let q = chi_quadrature_kernel(&kernel, omega, ONE, tol)?;
            let o = chi_oracle(comp, &p, omega, ONE, tol)?;
            let (limit, _) = agreement_limit(o);
            let dev = [(r - q).norm(), (r - o).norm(), (q - o).norm()]
                .into_iter()
                .fold(0.0, f64::max);
            Ok((comp, dev, limit, Point::new(Some(comp), &p, Some(omega))))
        })
        .collect();
    let results = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Component::ALL
        .iter()
        .map(|&comp| {
            let rows: Vec<(f64, f64, Point)> = results
                .iter()
                .filter(|r| r.0 == comp)
                .map(|&(_, d, lim, pt)| (d, lim, pt))
                .collect();
            worst(
                format!("triple_agreement/{}", comp.name()),
                1e-6,
                rows,
                "max pairwise |Δχ| of residue, quadrature and resolvent; limit 1e-6·|χ|, or 1e-9 when |χ| < 1e-3"
                    .into(),
            )
        })
        .collect())
}

fn determinant_identity(args: &CheckArgs) -> Property {
    let mut rng = ChaCha8Rng::seed_from_u64(args.seed.wrapping_add(1));
    let rows = (0..args.det_points)
        .map(|_| {
            let gamma = rng.gen_range(0.2..=3.0);
            let p = DriveParams::new(gamma, rng.gen_range(-5.0..=5.0), rng.gen_range(0.0..=40.0))
                .expect("sampled parameters are valid");
            let w = rng.gen_range(-50.0..=50.0);
            let z = Complex64::new(w, 0.0);
            let det = drift_matrix(Channel::MainZ, &p, z).det();
            let m = mollow_poly(&p).eval(z);
            ((det - m).norm() / m.norm(), 1e-10, Point::new(None, &p, Some(w)))
        })
        .collect();
    worst("determinant_identity", 1e-10, rows, "relative |det A(Ω) − M(Ω)|".into())
}

fn threshold_flip() -> Property {
    let below = triplet_roots(&DriveParams::new(1.0, 0.0, 0.25 - 1e-6).expect("valid"));
    let above = triplet_roots(&DriveParams::new(1.0, 0.0, 0.25 + 1e-6).expect("valid"));
    let passed = below.regime == Regime::SubThreshold && above.regime == Regime::Triplet;
    scalar(
        "threshold_flip",
        passed,
        if passed { 0.0 } else { 1.0 },
        0.0,
        None,
        format!("regime at Ω_R = γ/4 ∓ 1e-6: {:?} / {:?}", below.regime, above.regime),
    )
}

fn steady_state_anchor() -> Property {
    let p = DriveParams::new(1.0, 0.0, 1.0).expect("valid");
    let st = steady_state(&p);
    let dev = [
        (st.s - 2.0).abs(),
        (st.sigma_z + 1.0 / 6.0).abs(),
        (st.sigma_minus - Complex64::new(0.0, 1.0 / 3.0)).norm(),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    let tol = 4.0 * f64::EPSILON;
    scalar(
        "steady_state_anchor",
        dev <= tol,
        dev,
        tol,
        Some(Point::new(None, &p, None)),
        "s = 2, σ_z = −1/6, σ₋ = i/3 at unit resonant drive".into(),
    )
}

fn linear_response() -> Property {
    let grid = linear_grid(-6.0, 6.0, 481).expect("valid grid");
    let mut rows = Vec::new();
    for delta in [0.0, 1.2] {
        let p = DriveParams::new(1.0, delta, 0.0).expect("valid");
        let kerr = build_kernel(Component::KerrZ, &p);
        let tr = build_kernel(Component::Transverse, &p);
        let par = build_kernel(Component::ParametricZ, &p);
        for &w in &grid {
            let want = -1.0 / Complex64::new(w + delta, 0.5);
            for (comp, k) in [(Component::KerrZ, &kerr), (Component::Transverse, &tr)] {
                let dev = match chi_residue_kernel(k, w, ONE) {
                    Ok(v) => (v - want).norm() / want.norm(),
                    Err(_) => f64::INFINITY,
                };
                rows.push((dev, 1e-10, Point::new(Some(comp), &p, Some(w))));
            }
            let dev = match chi_residue_kernel(&par, w, ONE) {
                Ok(v) if v == Complex64::new(0.0, 0.0) => 0.0,
                Ok(v) => v.norm().max(f64::MIN_POSITIVE),
                Err(_) => f64::INFINITY,
            };
            rows.push((dev, 0.0, Point::new(Some(Component::ParametricZ), &p, Some(w))));
        }
    }
    worst(
        "linear_response",
        1e-10,
        rows,
        "undriven χ against −1/(Ω+Δ+iγ/2); the parametric component must vanish exactly".into(),
    )
}

fn resonant(s: f64) -> DriveParams {
    DriveParams::from_saturation(1.0, 0.0, s).expect("valid")
}

fn weak_field_anchor() -> Result<Property, CliError> {
    let grid = linear_grid(-3.0, 3.0, 601).expect("valid grid");
    let deviation = |s: f64| -> Result<(f64, Point), CliError> {
        let p = resonant(s);
        let mut best = (0.0, Point::new(None, &p, None));
        for comp in Component::ALL {
            let k = build_kernel(comp, &p);
            for &w in &grid {
                let exact = chi_residue_kernel(&k, w, ONE)?;
                let dev = (chi_weak(comp, &p, w, ONE) - exact).norm() / exact.norm();
                if dev > best.0 {
                    best = (dev, Point::new(Some(comp), &p, Some(w)));
                }
            }
        }
        Ok(best)
    };
    let (coarse, point) = deviation(1e-2)?;
    let (fine, _) = deviation(1e-3)?;
    let ratio = coarse / fine;
    Ok(scalar(
        "weak_field_anchor",
        coarse < 0.2 && (5.0..=20.0).contains(&ratio),
        coarse,
        0.2,
        Some(point),
        format!("max relative deviation over |Ω| ≤ 3 at s = 1e-2; shrinks by {ratio:.3} at s = 1e-3 (need 5..20)"),
    ))
}

fn sideband_anchor() -> Result<Property, CliError> {
    let p = resonant(1e4);
    let r = p.rabi();
    let mut rows = Vec::new();
    for (comp, omega) in [(Component::KerrZ, r), (Component::ParametricZ, -r)] {
        let exact = chi_residue_kernel(&build_kernel(comp, &p), omega, ONE)?;
        let form = chi_saturation_sideband(comp, &p, omega, ONE, Sideband::Blue)?;
        rows.push((
            (form - exact).norm() / exact.norm(),
            0.1,
            Point::new(Some(comp), &p, Some(omega)),
        ));
    }
    Ok(worst(
        "sideband_anchor",
        0.1,
        rows,
        "blue sideband form against the exact peak at s = 1e4".into(),
    ))
}

fn doublet_anchor() -> Result<Property, CliError> {
    let p = resonant(1e4);
    let k = build_kernel(Component::Transverse, &p);
    let mut rows = Vec::new();
    for w in [-0.5 * p.rabi(), 0.5 * p.rabi()] {
        let exact = chi_residue_kernel(&k, w, ONE)?;
        let form = chi_saturation_transverse(&p, w, ONE);
        rows.push((
            (form - exact).norm() / exact.norm(),
            0.05,
            Point::new(Some(Component::Transverse), &p, Some(w)),
        ));
    }
    Ok(worst(
        "doublet_anchor",
        0.05,
        rows,
        "doublet form against the exact peaks at s = 1e4".into(),
    ))
}

/// Runs every property. Failures of the properties themselves are reported,
/// not returned as errors; only evaluator errors abort.
pub fn run_check(args: &CheckArgs) -> Result<Report, CliError> {
    if args.points == 0 || args.det_points == 0 {
        return Err(CliError::Usage("--points and --det-points must be positive".into()));
    }
    if !(args.tol > 0.0 && args.tol <= 1e-3) {
        return Err(CliError::Usage(format!(
            "--tol must lie in (0, 1e-3] (got {})",
            args.tol
        )));
    }
    let flip = args.flip_term.as_deref().map(parse_flip).transpose()?;
    let mut properties = triple_agreement(args, flip)?;
    properties.push(determinant_identity(args));
    properties.push(threshold_flip());
    properties.push(steady_state_anchor());
    properties.push(linear_response());
    properties.push(weak_field_anchor()?);
    properties.push(sideband_anchor()?);
    properties.push(doublet_anchor()?);
    Ok(Report {
        seed: args.seed,
        passed: properties.iter().all(|p| p.passed),
        flipped_term: args.flip_term.clone(),
        properties,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flip_argument_parsing() {
        assert_eq!(parse_flip("kerr-z:1").unwrap(), (Component::KerrZ, 1));
        assert!(matches!(parse_flip("kerr-z"), Err(CliError::Usage(_))));
        assert!(matches!(parse_flip("kerr:1"), Err(CliError::Usage(_))));
        assert!(matches!(parse_flip("transverse:99"), Err(CliError::Usage(_))));
    }

    #[test]
    fn worst_keeps_largest_ratio() {
        let p = DriveParams::new(1.0, 0.0, 1.0).unwrap();
        let pt = |w| Point::new(None, &p, Some(w));
        let prop = worst(
            "x",
            1.0,
            vec![(0.5, 1.0, pt(0.0)), (0.2, 0.1, pt(1.0)), (0.9, 1.0, pt(2.0))],
            String::new(),
        );
        assert!(!prop.passed);
        assert_eq!(prop.worst_deviation, 0.2);
        assert_eq!(prop.worst_point.unwrap().omega, Some(1.0));
    }

    #[test]
    fn cheap_properties_pass() {
        assert!(threshold_flip().passed);
        assert!(steady_state_anchor().passed);
        assert!(linear_response().passed);
    }
}
