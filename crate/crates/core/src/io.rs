//! JSON interchange: point files, polynomial and bivector serialization,
//! and report payloads for the census and classification.
//!
//! All numbers are exact rational strings ("a/b", "/1" omitted). Maps are
//! emitted with sorted keys, so identical inputs produce byte-identical
//! output.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::chart::{ChartPoint, GrassPoint};
use crate::error::{Error, Result};
use crate::matrix::QMatrix;
use crate::mpoly::{ChartShape, MPoly};
use crate::poisson::Bivector;
use crate::rat::parse_rat;
use crate::strata::{Classification, StratumCensus};

/// On-disk point format: n rows for a Grassmannian point, n-k rows for a
/// chart point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PointFile {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug, Clone)]
pub enum LoadedPoint {
    Grass(GrassPoint),
    Chart(ChartPoint),
}

pub fn parse_point(text: &str) -> Result<LoadedPoint> {
    let file: PointFile =
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("bad point file: {e}")))?;
    let shape = ChartShape::new(file.k, file.n)?;
    let mut rows = Vec::with_capacity(file.rows.len());
    for row in &file.rows {
        let mut out = Vec::with_capacity(row.len());
        for cell in row {
            out.push(parse_rat(cell)?);
        }
        rows.push(out);
    }
    let m = QMatrix::from_rows(rows)?;
    if m.rows() == file.n {
        Ok(LoadedPoint::Grass(GrassPoint::new(file.k, file.n, m)?))
    } else if m.rows() == shape.rows() {
        Ok(LoadedPoint::Chart(ChartPoint::new(shape, m)?))
    } else {
        Err(Error::InvalidInput(format!(
            "expected {} rows (Grassmannian point) or {} rows (chart point), got {}",
            file.n,
            shape.rows(),
            m.rows()
        )))
    }
}

fn matrix_rows(m: &QMatrix) -> Vec<Vec<String>> {
    (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| m.get(r, c).to_string()).collect())
        .collect()
}

pub fn chart_point_file(x: &ChartPoint) -> PointFile {
    PointFile {
        k: x.shape().k,
        n: x.shape().n,
        rows: matrix_rows(x.matrix()),
    }
}

pub fn grass_point_file(p: &GrassPoint) -> PointFile {
    PointFile {
        k: p.k(),
        n: p.n(),
        rows: matrix_rows(p.matrix()),
    }
}

/// Term list in canonical order: [{"exps": [...], "coeff": "a/b"}, ...].
pub fn poly_json(p: &MPoly) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .map(|(exps, coeff)| {
            json!({
                "exps": exps.iter().map(|&e| e as u64).collect::<Vec<u64>>(),
                "coeff": coeff.to_string(),
            })
        })
        .collect();
    Value::Array(terms)
}

/// Sparse triple list (a, b, polynomial) over the strict upper triangle.
pub fn bivector_json(pi: &Bivector) -> Value {
    let entries: Vec<Value> = pi
        .iter_upper()
        .filter(|(_, _, p)| !p.is_zero())
        .map(|(a, b, p)| json!({"a": a, "b": b, "poly": poly_json(p)}))
        .collect();
    json!({
        "k": pi.shape().k,
        "n": pi.shape().n,
        "entries": entries,
    })
}

pub fn census_json(census: &StratumCensus) -> Value {
    let count_by_dim: serde_json::Map<String, Value> = census
        .count_by_dim
        .iter()
        .map(|(d, c)| (d.to_string(), json!(c)))
        .collect();
    json!({
        "k": census.k,
        "n": census.n,
        "labelCount": census.label_count(),
        "countByDim": count_by_dim,
    })
}

pub fn classification_json(cls: &Classification, label_count: Option<usize>) -> Value {
    let classes: Vec<Value> = cls
        .classes
        .iter()
        .map(|(fp, summary)| {
            let matroid: Vec<Vec<usize>> = fp.envelope_matroid().into_iter().collect();
            json!({
                "matroid": matroid,
                "count": summary.count,
                "rank": summary.rank,
            })
        })
        .collect();
    json!({
        "k": cls.k,
        "n": cls.n,
        "labelCount": label_count,
        "classCount": cls.class_count(),
        "classes": classes,
    })
}
