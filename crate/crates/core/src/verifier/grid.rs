//! Rectangular `(s, x)` grids and the deterministic parallel minimum scan.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An open interval `(center - half_width, center + half_width)` removed
/// from the `s`-axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Exclusion {
    pub center: f64,
    pub half_width: f64,
}

impl Exclusion {
    pub fn contains(&self, s: f64) -> bool {
        (s - self.center).abs() < self.half_width
    }
}

/// Grid over the open rectangle `(s_min, s_max) × (x_min, x_max)`.
///
/// Points are `s_min + k·s_step`, `k = 1, 2, ...`, strictly inside the
/// range, and likewise in `x`. When `1/step` is an integer the points are
/// formed as exact quotients, so that e.g. `s = 3/4` is hit exactly.
/// `s_min == s_max` denotes a single row at that `s`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub x_min: f64,
    pub x_max: f64,
    pub s_step: f64,
    pub x_step: f64,
    pub exclusions: Vec<Exclusion>,
}

/// Relative slack when deciding whether a point lies strictly inside.
const EDGE_SLACK: f64 = 1e-9;

fn axis(min: f64, max: f64, step: f64) -> Vec<f64> {
    let q = (1.0 / step).round();
    let m0 = (min * q).round();
    let exact = ((q * step) - 1.0).abs() < 1e-12 && (min * q - m0).abs() < 1e-9;
    let limit = max - EDGE_SLACK * step;
    (1..)
        .map(|k| {
            if exact {
                (m0 + k as f64) / q
            } else {
                min + k as f64 * step
            }
        })
        .take_while(|&v| v < limit)
        .collect()
}

impl GridSpec {
    /// The full square `(1/2, 1)²` with `points` interior points per axis.
    pub fn unit_square(points: usize) -> Self {
        let step = 0.5 / (points as f64 + 1.0);
        Self {
            s_min: 0.5,
            s_max: 1.0,
            x_min: 0.5,
            x_max: 1.0,
            s_step: step,
            x_step: step,
            exclusions: Vec::new(),
        }
    }

    /// A one-row grid at fixed `s` scanning `x ∈ (x_min, x_max)`.
    pub fn single_row(s: f64, x_min: f64, x_max: f64, x_step: f64) -> Self {
        Self {
            s_min: s,
            s_max: s,
            x_min,
            x_max,
            s_step: 1.0,
            x_step,
            exclusions: Vec::new(),
        }
    }

    /// An `s`-only grid over `(1/2, 1)` for the one-dimensional case.
    pub fn s_line(s_step: f64, exclusions: Vec<Exclusion>) -> Self {
        Self {
            s_min: 0.5,
            s_max: 1.0,
            x_min: 0.0,
            x_max: 1.0,
            s_step,
            x_step: 0.5,
            exclusions,
        }
    }

    pub fn is_single_row(&self) -> bool {
        self.s_min == self.s_max
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.s_min,
            self.s_max,
            self.x_min,
            self.x_max,
            self.s_step,
            self.x_step,
        ]
        .iter()
        .all(|v| v.is_finite());
        if !finite {
            return Err(Error::Grid("non-finite grid parameter".into()));
        }
        if !(self.s_min >= 0.5 && self.s_max <= 1.0 && self.s_min <= self.s_max) {
            return Err(Error::Grid(format!(
                "s-range ({}, {}) must lie in (1/2, 1)",
                self.s_min, self.s_max
            )));
        }
        if !(self.x_min >= 0.0 && self.x_max <= 1.0 && self.x_min < self.x_max) {
            return Err(Error::Grid(format!(
                "x-range ({}, {}) must lie in (0, 1)",
                self.x_min, self.x_max
            )));
        }
        if !(self.s_step > 0.0 && self.x_step > 0.0) {
            return Err(Error::Grid("steps must be positive".into()));
        }
        if !self.is_single_row() && self.s_step >= self.s_max - self.s_min {
            return Err(Error::Grid("s-step exceeds the s-range".into()));
        }
        if self.x_step >= self.x_max - self.x_min {
            return Err(Error::Grid("x-step exceeds the x-range".into()));
        }
        if self
            .exclusions
            .iter()
            .any(|e| !(e.half_width > 0.0 && e.center.is_finite()))
        {
            return Err(Error::Grid("exclusion half-widths must be positive".into()));
        }
        Ok(())
    }

    /// Grid points on the `s`-axis, with exclusions removed.
    pub fn s_points(&self) -> Vec<f64> {
        if self.is_single_row() {
            return vec![self.s_min];
        }
        axis(self.s_min, self.s_max, self.s_step)
            .into_iter()
            .filter(|&s| !self.exclusions.iter().any(|e| e.contains(s)))
            .collect()
    }

    /// Grid points on the `x`-axis.
    pub fn x_points(&self) -> Vec<f64> {
        axis(self.x_min, self.x_max, self.x_step)
    }

    /// The same rectangle with both steps halved. Its points contain the
    /// original grid as the even-indexed sub-grid.
    pub fn refined(&self) -> Self {
        Self {
            s_step: if self.is_single_row() {
                self.s_step
            } else {
                0.5 * self.s_step
            },
            x_step: 0.5 * self.x_step,
            ..self.clone()
        }
    }
}

/// Grid minimum with its location; ties go to the lexicographically
/// smallest `(s, x)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridMin {
    pub value: f64,
    pub s: f64,
    pub x: f64,
}

impl GridMin {
    fn better_than(&self, other: &GridMin) -> bool {
        match self.value.total_cmp(&other.value) {
            std::cmp::Ordering::Less => true,
            std::cmp::Ordering::Greater => false,
            std::cmp::Ordering::Equal => (self.s, self.x) < (other.s, other.x),
        }
    }

    pub fn min(self, other: GridMin) -> GridMin {
        if other.better_than(&self) {
            other
        } else {
            self
        }
    }
}

/// Values of a scan over a rectangular grid, stored row-major by `s`.
#[derive(Debug, Clone)]
pub struct ScanValues {
    pub s: Vec<f64>,
    pub x: Vec<f64>,
    pub values: Vec<Vec<f64>>,
}

impl ScanValues {
    pub fn points(&self) -> usize {
        self.s.len() * self.x.len()
    }

    /// Minimum over the sub-grid selected by the index predicates.
    pub fn min_where(
        &self,
        keep_s: impl Fn(usize) -> bool,
        keep_x: impl Fn(usize) -> bool,
    ) -> Option<GridMin> {
        let mut best: Option<GridMin> = None;
        for (i, row) in self.values.iter().enumerate() {
            if !keep_s(i) {
                continue;
            }
            for (j, &v) in row.iter().enumerate() {
                if !keep_x(j) {
                    continue;
                }
                let cand = GridMin {
                    value: v,
                    s: self.s[i],
                    x: self.x[j],
                };
                best = Some(match best {
                    Some(b) => b.min(cand),
                    None => cand,
                });
            }
        }
        best
    }

    pub fn min(&self) -> Option<GridMin> {
        self.min_where(|_| true, |_| true)
    }
}

/// Evaluates a row kernel for every grid row in parallel.
///
/// `make_row(s)` builds per-row state (such as hypergeometric coefficient
/// tables) and returns the values at all `x` points. A NaN anywhere is an
/// error. Errors are reported for the smallest failing `s`, so the outcome
/// does not depend on scheduling.
pub fn scan_rows<F>(s: &[f64], x: &[f64], make_row: F) -> Result<ScanValues>
where
    F: Fn(f64, &[f64]) -> Result<Vec<f64>> + Sync,
{
    let values = s
        .par_iter()
        .map(|&si| {
            let row = make_row(si, x)?;
            if let Some(j) = row.iter().position(|v| v.is_nan()) {
                return Err(Error::NonFiniteIntegrand { at: x[j] });
            }
            Ok(row)
        })
        .collect::<Vec<Result<Vec<f64>>>>()
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(ScanValues {
        s: s.to_vec(),
        x: x.to_vec(),
        values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_square_has_requested_points() {
        let g = GridSpec::unit_square(512);
        g.validate().unwrap();
        assert_eq!(g.s_points().len(), 512);
        assert_eq!(g.x_points().len(), 512);
        assert_eq!(g.refined().s_points().len(), 1025);
    }

    #[test]
    fn refined_grid_nests() {
        let g = GridSpec::unit_square(40);
        let base = g.s_points();
        let fine = g.refined().s_points();
        for (k, v) in base.iter().enumerate() {
            assert_eq!(*v, fine[2 * k + 1]);
        }
    }

    #[test]
    fn exact_three_quarters() {
        let g = GridSpec::s_line(1e-3, Vec::new());
        let s = g.s_points();
        assert_eq!(s.len(), 499);
        assert!(s.contains(&0.75));
        assert_eq!(s[0], 0.501);
    }

    #[test]
    fn exclusion_removes_open_interval() {
        let g = GridSpec::s_line(
            1e-3,
            vec![Exclusion {
                center: 0.75,
                half_width: 1e-3,
            }],
        );
        let s = g.s_points();
        assert!(!s.contains(&0.75));
        assert!(s.contains(&0.749) && s.contains(&0.751));
        assert_eq!(s.len(), 498);
    }

    #[test]
    fn invalid_grids() {
        let mut g = GridSpec::unit_square(10);
        g.s_step = -1.0;
        assert!(g.validate().is_err());
        let mut g = GridSpec::unit_square(10);
        g.x_max = 1.5;
        assert!(g.validate().is_err());
        let mut g = GridSpec::unit_square(10);
        g.s_step = 0.7;
        assert!(g.validate().is_err());
    }

    #[test]
    fn ties_break_lexicographically() {
        let v = ScanValues {
            s: vec![0.6, 0.7],
            x: vec![0.1, 0.2],
            values: vec![vec![1.0, 0.5], vec![0.5, 2.0]],
        };
        let m = v.min().unwrap();
        assert_eq!((m.s, m.x), (0.6, 0.2));
    }

    #[test]
    fn scan_is_deterministic_and_reports_nan() {
        let s: Vec<f64> = (1..50).map(|k| 0.5 + k as f64 / 100.0).collect();
        let x: Vec<f64> = (1..50).map(|k| k as f64 / 50.0).collect();
        let f = |si: f64, xs: &[f64]| Ok(xs.iter().map(|xj| (si - 0.7).powi(2) + xj).collect());
        let a = scan_rows(&s, &x, f).unwrap().min().unwrap();
        let b = scan_rows(&s, &x, f).unwrap().min().unwrap();
        assert_eq!(a, b);
        let bad = scan_rows(&s, &x, |_, xs| Ok(vec![f64::NAN; xs.len()]));
        assert!(bad.is_err());
    }
}
