//! CSV and JSON rendering of flat result rows. JSON objects carry exactly
//! the CSV column names.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::alpha::Alpha;
use crate::charsum::{DensityReport, DirichletCheck};
use crate::error::{Error, Result};
use crate::randmodel::{Parity, RationalDecomposition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Csv => "csv",
            Format::Json => "json",
        })
    }
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            _ => Err(Error::param("format", "csv or json")),
        }
    }
}

/// Rows as CSV with a header line, or as a JSON array.
pub fn render<T: Serialize>(rows: &[T], format: Format) -> Result<String> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for r in rows {
                w.serialize(r).map_err(|e| Error::Output(e.to_string()))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Output(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Output(e.to_string()))
        }
        Format::Json => {
            let mut s = serde_json::to_string_pretty(rows).map_err(|e| Error::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// A single record: one CSV row, or a bare JSON object.
pub fn render_one<T: Serialize>(row: &T, format: Format) -> Result<String> {
    match format {
        Format::Csv => render(std::slice::from_ref(row), format),
        Format::Json => {
            let mut s = serde_json::to_string_pretty(row).map_err(|e| Error::Output(e.to_string()))?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// Columns `alpha, primes, nonneg, strictpos, zero, nonneg_1mod4, nonneg_3mod4, mode`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRow {
    pub alpha: Alpha,
    pub primes: u64,
    pub nonneg: u64,
    pub strictpos: u64,
    pub zero: u64,
    pub nonneg_1mod4: u64,
    pub nonneg_3mod4: u64,
    pub mode: String,
}

impl From<&DensityReport> for DensityRow {
    fn from(r: &DensityReport) -> Self {
        DensityRow {
            alpha: r.alpha,
            primes: r.prime_count,
            nonneg: r.nonneg_count,
            strictpos: r.strict_pos_count,
            zero: r.zero_count,
            nonneg_1mod4: r.nonneg_1mod4,
            nonneg_3mod4: r.nonneg_3mod4,
            mode: r.comparison.to_string(),
        }
    }
}

pub type DirichletRow = DirichletCheck;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FourierRow {
    pub alpha: Alpha,
    pub p: u64,
    pub terms: u64,
    pub exact: i64,
    pub truncated: f64,
    pub abs_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TermRow {
    pub alpha: Alpha,
    pub parity: Parity,
    pub coeff_re: f64,
    pub coeff_im: f64,
    pub character: String,
    pub modulus: u64,
    pub dilation: u64,
}

pub fn term_rows(d: &RationalDecomposition) -> Vec<TermRow> {
    d.terms
        .iter()
        .map(|t| TermRow {
            alpha: Alpha::Rational(d.alpha),
            parity: d.parity,
            coeff_re: t.coeff.re,
            coeff_im: t.coeff.im,
            character: t.character.name.clone(),
            modulus: t.character.modulus,
            dilation: t.dilation,
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentRow {
    pub alpha: Alpha,
    pub parity: Parity,
    pub k: u32,
    /// Empty when the exact sum is beyond the work limit.
    pub direct: Option<f64>,
    pub mc_mean: f64,
    pub mc_std_error: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charsum::{density_scan, Comparison};

    fn keys_match<T: Serialize>(row: &T) {
        let csv = render_one(row, Format::Csv).unwrap();
        let header: Vec<&str> = csv.lines().next().unwrap().split(',').collect();
        let json: serde_json::Value = serde_json::from_str(&render_one(row, Format::Json).unwrap()).unwrap();
        let keys: Vec<&str> = json.as_object().unwrap().keys().map(|k| k.as_str()).collect();
        let mut a = header.clone();
        let mut b = keys.clone();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b);
    }

    #[test]
    fn density_columns() {
        let r = density_scan(&Alpha::rational(2, 5).unwrap(), 100, Comparison::Ge).unwrap();
        let row = DensityRow::from(&r);
        let csv = render(std::slice::from_ref(&row), Format::Csv).unwrap();
        assert_eq!(
            csv.lines().next().unwrap(),
            "alpha,primes,nonneg,strictpos,zero,nonneg_1mod4,nonneg_3mod4,mode"
        );
        assert!(csv.lines().nth(1).unwrap().starts_with("2/5,100,"));
        assert!(csv.trim_end().ends_with(",ge"));
        keys_match(&row);
    }

    #[test]
    fn json_arrays_and_objects() {
        let rows = vec![
            FourierRow {
                alpha: Alpha::rational(1, 3).unwrap(),
                p: 7,
                terms: 10,
                exact: 1,
                truncated: 0.9,
                abs_error: 0.1,
            };
            2
        ];
        let v: serde_json::Value = serde_json::from_str(&render(&rows, Format::Json).unwrap()).unwrap();
        assert_eq!(v.as_array().unwrap().len(), 2);
        assert_eq!(v[0]["alpha"], "1/3");
        keys_match(&rows[0]);
        assert_eq!(render(&rows, Format::Csv).unwrap().lines().count(), 3);
    }

    #[test]
    fn missing_values_are_blank_in_csv() {
        let row = MomentRow {
            alpha: Alpha::rational(1, 4).unwrap(),
            parity: Parity::Plus,
            k: 6,
            direct: None,
            mc_mean: 0.5,
            mc_std_error: 0.01,
        };
        let csv = render_one(&row, Format::Csv).unwrap();
        assert_eq!(csv.lines().nth(1).unwrap(), "1/4,plus,6,,0.5,0.01");
        keys_match(&row);
    }

    #[test]
    fn format_names() {
        assert_eq!("json".parse::<Format>().unwrap(), Format::Json);
        assert!("xml".parse::<Format>().is_err());
        assert_eq!(Format::default().to_string(), "csv");
    }
}
