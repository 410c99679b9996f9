//! Serialization of results to JSON and CSV.
//!
//! Every floating-point value is written with 12 significant digits, and
//! JSON object keys come out in sorted order, so identical inputs give
//! byte-identical output.

use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;
use serde_json::{json, Value};

use crate::correlation::PairScanReport;
use crate::error::{Error, Result};
use crate::spectral::ProductSpectrum;

pub const SIGNIFICANT_DIGITS: usize = 12;

pub const PAIR_SCAN_HEADER: &str =
    "i,j,lambda_i,lambda_j,t_star,global_normalized,identity_residual,mass_below_cutoff";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::InvalidArgument(format!("unknown format {other:?}"))),
        }
    }
}

/// `x` in scientific notation with 12 significant digits.
pub fn format_value(x: f64) -> String {
    format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
}

/// Rounds `x` to 12 significant digits. Non-finite values pass through.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format_value(x).parse().unwrap_or(x)
}

fn round_value(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            if let Some(x) = n.as_f64() {
                *v = json!(round_sig(x));
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_value),
        Value::Object(map) => map.values_mut().for_each(round_value),
        _ => {}
    }
}

/// Pretty JSON of `value` with rounded floats and sorted keys.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_value(&mut v);
    Ok(serde_json::to_string_pretty(&v)?)
}

/// Product spectrum in its documented JSON shape:
/// `{source, eigenvalues, coefficients, cluster_mass: [{eigenvalue, mass}], total_mass}`.
pub fn product_spectrum_json(spectrum: &ProductSpectrum) -> Result<String> {
    let clusters: Vec<Value> = spectrum
        .cluster_mass
        .iter()
        .map(|c| json!({ "eigenvalue": c.eigenvalue, "mass": c.mass }))
        .collect();
    to_json(&json!({
        "source": [spectrum.source.0, spectrum.source.1],
        "eigenvalues": spectrum.eigenvalues,
        "coefficients": spectrum.coefficients,
        "cluster_mass": clusters,
        "total_mass": spectrum.total_mass,
    }))
}

/// Product spectrum as CSV: one row per eigenvector.
pub fn product_spectrum_csv(spectrum: &ProductSpectrum) -> String {
    let mut out = String::from("k,eigenvalue,coefficient\n");
    for (k, (lambda, c)) in spectrum
        .eigenvalues
        .iter()
        .zip(&spectrum.coefficients)
        .enumerate()
    {
        let _ = writeln!(
            out,
            "{},{},{}",
            k + 1,
            format_value(*lambda),
            format_value(*c)
        );
    }
    out
}

/// Pair scan as CSV. The entry rows are followed by `mean`, `stddev`,
/// `distinct_mean` and `distinct_stddev` rows that carry their value in the
/// `global_normalized` column.
pub fn pair_scan_csv(report: &PairScanReport) -> String {
    let mut out = String::from(PAIR_SCAN_HEADER);
    out.push('\n');
    for e in &report.entries {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            e.i,
            e.j,
            format_value(e.lambda_i),
            format_value(e.lambda_j),
            format_value(e.t_star),
            format_value(e.global_normalized),
            format_value(e.identity_residual),
            format_value(e.mass_below_cutoff),
        );
    }
    let _ = writeln!(out, "mean,,,,,{},,", format_value(report.mean));
    let _ = writeln!(out, "stddev,,,,,{},,", format_value(report.stddev));
    let _ = writeln!(
        out,
        "distinct_mean,,,,,{},,",
        format_value(report.distinct_mean)
    );
    let _ = writeln!(
        out,
        "distinct_stddev,,,,,{},,",
        format_value(report.distinct_stddev)
    );
    out
}

pub fn emit_pair_scan(report: &PairScanReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => to_json(report),
        ReportFormat::Csv => Ok(pair_scan_csv(report)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::correlation::{pair_scan, PairEntry};
    use crate::graph::GraphRegistry;
    use crate::spectral::eigendecompose;

    #[test]
    fn rounding() {
        assert_eq!(format_value(1.0), "1.00000000000e0");
        assert_eq!(round_sig(0.1234567890123456), 0.123456789012);
        assert_eq!(round_sig(0.0), 0.0);
        assert!(round_sig(f64::NAN).is_nan());
    }

    #[test]
    fn format_parse() {
        assert_eq!("csv".parse::<ReportFormat>().unwrap(), ReportFormat::Csv);
        assert!("xml".parse::<ReportFormat>().is_err());
    }

    fn empty_scan() -> PairScanReport {
        PairScanReport {
            n: 3,
            entries: vec![PairEntry {
                i: 2,
                j: 3,
                lambda_i: 1.0,
                lambda_j: 3.0,
                t_star: 0.5,
                global_normalized: 0.25,
                identity_residual: 0.0,
                mass_below_cutoff: 1.0,
            }],
            mean: 0.25,
            stddev: 0.0,
            distinct_mean: 0.25,
            distinct_stddev: 0.0,
            max_identity_residual: 0.0,
            outlier_sigmas: 2.0,
            outliers: vec![],
            skipped: vec![],
        }
    }

    #[test]
    fn csv_layout() {
        let csv = pair_scan_csv(&empty_scan());
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], PAIR_SCAN_HEADER);
        assert!(lines[1].starts_with("2,3,1.00000000000e0,"));
        assert_eq!(lines[2], "mean,,,,,2.50000000000e-1,,");
        assert_eq!(lines[3], "stddev,,,,,0.00000000000e0,,");
        assert_eq!(lines[4], "distinct_mean,,,,,2.50000000000e-1,,");
        assert_eq!(lines.len(), 6);
        for line in &lines {
            assert_eq!(line.split(',').count(), 8);
        }
    }

    #[test]
    fn empty_outliers_serialize_as_array() {
        let v: Value = serde_json::from_str(&to_json(&empty_scan()).unwrap()).unwrap();
        assert_eq!(v["outliers"], json!([]));
    }

    #[test]
    fn json_is_deterministic() {
        let g = GraphRegistry::default().resolve("cycle:7").unwrap();
        let dec = eigendecompose(&g.laplacian()).unwrap();
        let a = to_json(&pair_scan(&dec).unwrap()).unwrap();
        let b = to_json(&pair_scan(&dec).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn product_spectrum_shape() {
        let g = GraphRegistry::default().resolve("path:5").unwrap();
        let dec = eigendecompose(&g.laplacian()).unwrap();
        let ps = dec.product_spectrum(2, 3).unwrap();
        let v: Value = serde_json::from_str(&product_spectrum_json(&ps).unwrap()).unwrap();
        let keys: Vec<_> = v.as_object().unwrap().keys().cloned().collect();
        assert_eq!(
            keys,
            [
                "cluster_mass",
                "coefficients",
                "eigenvalues",
                "source",
                "total_mass"
            ]
        );
        assert_eq!(v["source"], json!([2, 3]));
        assert_eq!(v["coefficients"].as_array().unwrap().len(), 5);
        let csv = product_spectrum_csv(&ps);
        assert_eq!(csv.lines().count(), 6);
    }
}
