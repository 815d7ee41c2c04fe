//! Scan reports and tabular curve data.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::grid::{GridMin, GridSpec};
use crate::error::{Error, Result};

/// Which reduced inequality a report certifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseId {
    /// `n = 1`, `s = 3/4`: the logarithmic kernel.
    LogCase,
    /// `n = 1`, `s ≠ 3/4`: the `q_{a,b}` family.
    OneD,
    /// `n ≥ 2` with the hypergeometric condition.
    #[serde(rename = "HighD_C")]
    HighDC,
    /// `n ≥ 2` with the weaker power condition.
    #[serde(rename = "HighD_D")]
    HighDD,
}

impl CaseId {
    pub fn slug(&self) -> &'static str {
        match self {
            CaseId::LogCase => "log",
            CaseId::OneD => "one_d",
            CaseId::HighDC => "high_d_c",
            CaseId::HighDD => "high_d_d",
        }
    }
}

/// The parameters a report was computed for. `s` is set when the case
/// fixes it; `subinterval` is set for the `q_{a,b}` pieces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaseParams {
    pub n: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub subinterval: Option<[f64; 2]>,
}

/// Outcome of one positivity scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub case_id: CaseId,
    pub label: String,
    pub params: CaseParams,
    pub grid: GridSpec,
    pub min_value: f64,
    /// `(s, x)` of the minimum; for the logarithmic case `x` holds `t`.
    pub argmin: [f64; 2],
    pub passed: bool,
    pub points_evaluated: usize,
    /// `|min on the halved grid - min on this grid|`, when computed.
    pub refinement_delta: Option<f64>,
    /// False for scans that reproduce numerical evidence without being
    /// part of the certified range.
    pub certified: bool,
    /// Named auxiliary values (closed-form constants and the like).
    pub constants: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

impl ScanReport {
    pub fn new(
        case_id: CaseId,
        label: impl Into<String>,
        params: CaseParams,
        grid: GridSpec,
        min: GridMin,
        points_evaluated: usize,
    ) -> Self {
        Self {
            case_id,
            label: label.into(),
            params,
            grid,
            min_value: min.value,
            argmin: [min.s, min.x],
            passed: min.value > 0.0,
            points_evaluated,
            refinement_delta: None,
            certified: true,
            constants: BTreeMap::new(),
            notes: Vec::new(),
        }
    }

    /// A file-name friendly identifier, unique within one run.
    pub fn file_stem(&self) -> String {
        let mut stem = self.case_id.slug().to_string();
        if !matches!(self.case_id, CaseId::LogCase | CaseId::OneD) {
            let _ = write!(stem, "_n{}", self.params.n);
        }
        if let Some([a, b]) = self.params.subinterval {
            let _ = write!(stem, "_{}_{}", fmt_compact(a), fmt_compact(b));
        }
        stem
    }
}

fn fmt_compact(v: f64) -> String {
    format!("{v}").replace('.', "p")
}

/// Named real columns with rows kept in sorted order for reproducible
/// output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl CurveSample {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) -> Result<()> {
        if row.len() != self.columns.len() {
            return Err(Error::InvalidParams(format!(
                "row has {} values, expected {}",
                row.len(),
                self.columns.len()
            )));
        }
        self.rows.push(row);
        Ok(())
    }

    /// Sorts rows lexicographically (total order on floats).
    pub fn sort(&mut self) {
        self.rows.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Column index by name.
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// CSV with a header row, LF line endings and shortest round-trip
    /// floats. Rows are sorted first.
    pub fn to_csv(&self) -> String {
        let mut sorted = self.clone();
        sorted.sort();
        let mut out = String::with_capacity(32 * (sorted.rows.len() + 1));
        out.push_str(&sorted.columns.join(","));
        out.push('\n');
        for row in &sorted.rows {
            for (i, v) in row.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v:?}");
            }
            out.push('\n');
        }
        out
    }
}
