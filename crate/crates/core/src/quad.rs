//! Adaptive Gauss-Kronrod integration of complex-valued functions and the
//! Plemelj-split retarded Cauchy transform built on it.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::model::DriveParams;
use crate::{Error, Result};

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Default cap on the number of subintervals.
pub const DEFAULT_MAX_INTERVALS: usize = 20_000;

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
    resabs: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error) == Ordering::Equal
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// QUADPACK-style error estimate for one real part of the rule.
fn part_error(resk: f64, resg: f64, resabs: f64, resasc: f64) -> f64 {
    let mut err = (resk - resg).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * resabs);
    }
    err
}

fn qk21<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> Segment {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut fv = [Complex64::new(0.0, 0.0); 21];
    fv[0] = f(center);
    for j in 0..10 {
        let dx = half * XGK[j];
        fv[2 * j + 1] = f(center - dx);
        fv[2 * j + 2] = f(center + dx);
    }
    let weight = |j: usize| WGK[if j == 0 { 10 } else { (j - 1) / 2 }];
    let gauss = |j: usize| {
        // Gauss nodes are the odd entries of XGK.
        if j == 0 {
            return 0.0;
        }
        let k = (j - 1) / 2;
        if k % 2 == 1 {
            WG[k / 2]
        } else {
            0.0
        }
    };

    let mut resk = Complex64::new(0.0, 0.0);
    let mut resg = Complex64::new(0.0, 0.0);
    let (mut abs_re, mut abs_im) = (0.0, 0.0);
    for (j, v) in fv.iter().enumerate() {
        resk += v * weight(j);
        resg += v * gauss(j);
        abs_re += weight(j) * v.re.abs();
        abs_im += weight(j) * v.im.abs();
    }
    let mean = resk * 0.5;
    let (mut asc_re, mut asc_im) = (0.0, 0.0);
    for (j, v) in fv.iter().enumerate() {
        asc_re += weight(j) * (v.re - mean.re).abs();
        asc_im += weight(j) * (v.im - mean.im).abs();
    }
    let h = half.abs();
    let error = part_error(resk.re * half, resg.re * half, abs_re * h, asc_re * h)
        + part_error(resk.im * half, resg.im * half, abs_im * h, asc_im * h);
    Segment {
        a,
        b,
        value: resk * half,
        error,
        resabs: (abs_re + abs_im) * h,
    }
}

/// Accuracy target for [`integrate`].
#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub relative: f64,
    pub absolute: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn new(relative: f64, absolute: f64) -> Self {
        Self {
            relative,
            absolute,
            max_intervals: DEFAULT_MAX_INTERVALS,
        }
    }
}

/// Globally adaptive integral of `f` over consecutive `breakpoints`.
///
/// Refinement stops once the summed error estimate is below
/// `max(relative·|I|, absolute)` or below the rounding floor of the rule.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, breakpoints: &[f64], tol: Tolerance) -> Result<Complex64> {
    if breakpoints.len() < 2 {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let mut heap: BinaryHeap<Segment> = breakpoints.windows(2).map(|w| qk21(&f, w[0], w[1])).collect();
    let sums = |heap: &BinaryHeap<Segment>| {
        heap.iter().fold((Complex64::new(0.0, 0.0), 0.0, 0.0), |(v, e, a), s| {
            (v + s.value, e + s.error, a + s.resabs)
        })
    };
    let (mut total, mut error, mut resabs) = sums(&heap);
    loop {
        let target = (tol.relative * total.norm())
            .max(tol.absolute)
            .max(100.0 * f64::EPSILON * resabs);
        if error <= target {
            // Running sums drift; confirm against a fresh summation.
            let fresh = sums(&heap);
            let target = (tol.relative * fresh.0.norm())
                .max(tol.absolute)
                .max(100.0 * f64::EPSILON * fresh.2);
            if fresh.1 <= target {
                return Ok(fresh.0);
            }
            (total, error, resabs) = fresh;
            continue;
        }
        if heap.len() >= tol.max_intervals {
            return Err(Error::ToleranceNotReached {
                achieved: error,
                requested: target,
                intervals: heap.len(),
            });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval can no longer be split in floating point.
            return Err(Error::ToleranceNotReached {
                achieved: error,
                requested: target,
                intervals: heap.len() + 1,
            });
        }
        let left = qk21(&f, worst.a, mid);
        let right = qk21(&f, mid, worst.b);
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        resabs += left.resabs + right.resabs - worst.resabs;
        heap.push(left);
        heap.push(right);
    }
}

/// Integration window for the retarded transform.
#[derive(Debug, Clone, Copy)]
pub struct Window {
    /// Half-width `W` of the directly integrated region; beyond it the
    /// integral runs in the mapped variable `t = W/u`.
    pub half_width: f64,
    /// Extent over which the region starts out uniformly subdivided.
    pub dense_extent: f64,
    /// Initial subinterval width inside the dense extent.
    pub step: f64,
}

impl Window {
    /// Window for a kernel of drive `p` transformed at `x`. The dense extent
    /// covers every pole's real part, stepped finer than the narrowest width.
    pub fn covering(p: &DriveParams, x: f64) -> Self {
        let g = p.gamma();
        let reach = p.rabi() + p.delta().abs() + x.abs();
        Self {
            half_width: 10.0 * (reach + g),
            dense_extent: 2.0 * reach + 5.0 * g,
            step: 0.25 * g,
        }
    }
}

/// `∫ dΩ′/2π K(Ω′)/(x − Ω′ + i0)` for a kernel decaying at least like `1/Ω′²`,
/// split as `PV/2π − (i/2)K(x)`.
///
/// The principal value is folded about `x` so the integrand
/// `[K(x−u) − K(x+u)]/u` is regular at `u = 0`.
pub fn retarded_transform<F: Fn(f64) -> Complex64>(k: F, x: f64, window: Window, tol: Tolerance) -> Result<Complex64> {
    let w = window.half_width;
    let dense = window.dense_extent.min(w);
    let n = ((dense / window.step).ceil() as usize).max(1);
    let mut cuts: Vec<f64> = (0..=n).map(|i| dense * i as f64 / n as f64).collect();
    // Geometric pieces out to the window edge.
    let mut edge = dense;
    while edge < w {
        edge = (2.0 * edge).min(w);
        cuts.push(edge);
    }

    let folded = |u: f64| (k(x - u) - k(x + u)) / u;
    let inner = integrate(folded, &cuts, tol)?;
    let mapped = |t: f64| {
        let u = w / t;
        (k(x - u) - k(x + u)) / t
    };
    let outer = integrate(mapped, &[0.0, 0.5, 1.0], tol)?;

    let pv = inner + outer;
    Ok(pv / (2.0 * std::f64::consts::PI) - Complex64::new(0.0, 0.5) * k(x))
}
