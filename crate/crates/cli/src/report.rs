//! Serialisable report rows. Weights are divided by the instance's `denom`;
//! ratios are scale-free.

use kpack::audit::{AuditEntry, RatioReport};
use kpack::{Fraction, Packing};
use serde::Serialize;

pub fn decimal(f: &Fraction) -> f64 {
    *f.numer() as f64 / *f.denom() as f64
}

pub fn unscale(raw: i64, denom: i64) -> Fraction {
    Fraction::new(raw as i128, denom as i128)
}

#[derive(Debug, Serialize)]
pub struct PackingOut {
    pub kind: String,
    pub k: usize,
    pub blocks: Vec<Vec<usize>>,
}

impl From<&Packing> for PackingOut {
    fn from(p: &Packing) -> Self {
        Self { kind: p.kind().to_string(), k: p.k(), blocks: p.blocks().to_vec() }
    }
}

#[derive(Debug, Serialize)]
pub struct AuditOut {
    pub name: String,
    pub relation: &'static str,
    pub lhs: Option<String>,
    pub rhs: Option<String>,
    pub lhs_decimal: f64,
    pub rhs_decimal: f64,
    pub holds: bool,
}

impl AuditOut {
    fn new(a: &AuditEntry, denom: i64) -> Self {
        let d = Fraction::from_integer(denom as i128);
        Self {
            name: a.name.clone(),
            relation: if a.equality { "==" } else { ">=" },
            lhs: a.lhs.map(|x| (x / d).to_string()),
            rhs: a.rhs.map(|x| (x / d).to_string()),
            lhs_decimal: a.lhs_decimal / denom as f64,
            rhs_decimal: a.rhs_decimal / denom as f64,
            holds: a.holds,
        }
    }
}

#[derive(Debug, Serialize)]
pub struct OracleOut {
    pub optimum: Option<String>,
    pub optimum_decimal: Option<f64>,
    pub ratio: Option<String>,
    pub ratio_decimal: Option<f64>,
    pub bound: Option<String>,
    pub bound_decimal: Option<f64>,
    pub bound_holds: bool,
    pub audits: Vec<AuditOut>,
}

impl OracleOut {
    pub fn new(r: &RatioReport, denom: i64) -> Self {
        let d = Fraction::from_integer(denom as i128);
        let opt = r.optimum.map(|o| o / d);
        Self {
            optimum: opt.map(|o| o.to_string()),
            optimum_decimal: opt.as_ref().map(decimal),
            ratio: r.ratio.map(|q| q.to_string()),
            ratio_decimal: r.ratio_decimal,
            bound: r.bound.map(|b| b.to_string()),
            bound_decimal: r.bound.map(|b| *b.numer() as f64 / *b.denom() as f64),
            bound_holds: r.bound_holds,
            audits: r.audits.iter().map(|a| AuditOut::new(a, denom)).collect(),
        }
    }
}

/// Full `solve` report.
#[derive(Debug, Serialize)]
pub struct SolveOut {
    pub instance: String,
    pub n: usize,
    pub k: usize,
    pub algorithm: String,
    pub tsp: String,
    pub weight: String,
    pub weight_decimal: f64,
    pub packing: PackingOut,
    pub oracle: Option<OracleOut>,
    pub warnings: Vec<String>,
}

/// Flat row shared by `solve --format csv` and `bench`.
#[derive(Debug, Serialize)]
pub struct Row {
    pub row_type: &'static str,
    pub instance: String,
    pub seed: Option<u64>,
    pub n: Option<usize>,
    pub k: usize,
    pub algorithm: String,
    pub count: Option<usize>,
    pub weight: Option<String>,
    pub optimum: Option<String>,
    pub ratio: Option<String>,
    pub ratio_decimal: Option<f64>,
    pub mean_ratio_decimal: Option<f64>,
    pub bound: Option<String>,
    pub bound_holds: bool,
    pub audits_checked: usize,
    pub audits_failed: usize,
}

impl Row {
    pub fn instance(r: &RatioReport, seed: Option<u64>, denom: i64) -> Self {
        let d = Fraction::from_integer(denom as i128);
        Self {
            row_type: "instance",
            instance: r.instance.clone(),
            seed,
            n: Some(r.n),
            k: r.k,
            algorithm: r.algorithm.to_string(),
            count: None,
            weight: r.weight.map(|w| (w / d).to_string()),
            optimum: r.optimum.map(|o| (o / d).to_string()),
            ratio: r.ratio.map(|q| q.to_string()),
            ratio_decimal: r.ratio_decimal,
            mean_ratio_decimal: None,
            bound: r.bound.map(|b| b.to_string()),
            bound_holds: r.bound_holds,
            audits_checked: r.audits.len(),
            audits_failed: r.failed_audits().count(),
        }
    }
}

pub fn csv_string<T: Serialize>(rows: &[T]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r)?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}
