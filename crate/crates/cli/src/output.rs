//! CSV and JSON emission of sweep results.

use mollow::Complex64;
use serde::Serialize;

pub const CSV_HEADER: &str = "omega,re,im,abs,arg";

/// One emitted row. `arg` lies in (−π, π].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Record {
    pub omega: f64,
    pub re: f64,
    pub im: f64,
    pub abs: f64,
    pub arg: f64,
}

impl Record {
    pub fn new(omega: f64, value: Complex64) -> Self {
        // Adding +0.0 turns −0.0 into +0.0, which keeps arg off −π.
        let re = value.re + 0.0;
        let im = value.im + 0.0;
        Record {
            omega: omega + 0.0,
            re,
            im,
            abs: re.hypot(im),
            arg: im.atan2(re),
        }
    }
}

/// Resolved run parameters, echoed in the JSON `meta` block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Meta {
    pub component: String,
    pub gamma: f64,
    pub delta: f64,
    pub rabi: f64,
    pub saturation: f64,
    pub epsilon: Option<f64>,
    pub effective_gamma: f64,
    pub omega_min: f64,
    pub omega_max: f64,
    pub points: usize,
    pub method: String,
    pub scale: f64,
    pub tol: f64,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Serialize)]
struct Document<'a> {
    meta: &'a Meta,
    samples: &'a [Record],
}

/// Shortest decimal that reads back to the same `f64`.
pub fn format_float(x: f64) -> String {
    format!("{:?}", x + 0.0)
}

pub fn to_csv(records: &[Record]) -> String {
    let mut out = String::with_capacity(32 * (records.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for r in records {
        let fields = [r.omega, r.re, r.im, r.abs, r.arg].map(format_float);
        out.push_str(&fields.join(","));
        out.push('\n');
    }
    out
}

pub fn to_json(meta: &Meta, records: &[Record]) -> String {
    let mut text =
        serde_json::to_string_pretty(&Document { meta, samples: records }).expect("finite records serialize");
    text.push('\n');
    text
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn arg_range_excludes_minus_pi() {
        let r = Record::new(0.0, Complex64::new(-1.0, -0.0));
        assert_eq!(r.arg, PI);
        assert_eq!(r.im.to_bits(), 0.0f64.to_bits());
        let r = Record::new(-0.0, Complex64::new(0.0, -0.0));
        assert_eq!(format_float(r.omega), "0.0");
        assert_eq!(r.arg, 0.0);
    }

    #[test]
    fn floats_round_trip() {
        for x in [0.1, -1.0 / 3.0, 1e-300, 6.02e23, 2.0f64.sqrt(), f64::MIN_POSITIVE] {
            assert_eq!(format_float(x).parse::<f64>().unwrap(), x);
        }
    }

    #[test]
    fn csv_layout() {
        let text = to_csv(&[
            Record::new(-1.5, Complex64::new(0.0, 2.0)),
            Record::new(2.0, Complex64::new(3.0, -4.0)),
        ]);
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(lines[1], format!("-1.5,0.0,2.0,2.0,{:?}", PI / 2.0));
        assert!(lines[2].starts_with("2.0,3.0,-4.0,5.0,"));
        assert!(text.ends_with('\n') && !text.contains('\r'));
    }
}
