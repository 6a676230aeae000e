//! One-parameter sweeps over a state family and their CSV/JSON encodings.

use std::io::{Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::battery::QubitPairEnergies;
use crate::error::{invalid_argument, Error, Result};
use crate::measurement::{capacity_gain, BasisKind, MeasurementBasis, MixingWeights, Scheme};
use crate::states::{bell_diagonal, example2, is_entangled, werner, x_state, DensityMatrix, XStateParams};

/// State family being swept. The swept parameter is named by the grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    /// Parameter `a`.
    Werner,
    /// Parameter `x`.
    Example2,
    /// Parameter `c1`, `c2` or `c3`; the other two come from `base`.
    BellDiagonal { base: [f64; 3] },
    /// Parameter `rho14` or `rho23` (a real coherence); the rest from `base`.
    XState { base: XStateParams },
}

impl Family {
    pub fn parameter_names(&self) -> &'static [&'static str] {
        match self {
            Family::Werner => &["a"],
            Family::Example2 => &["x"],
            Family::BellDiagonal { .. } => &["c1", "c2", "c3"],
            Family::XState { .. } => &["rho14", "rho23"],
        }
    }

    pub fn default_parameter(&self) -> &'static str {
        self.parameter_names()[0]
    }

    pub fn state(&self, parameter: &str, value: f64) -> Result<DensityMatrix> {
        if !self.parameter_names().contains(&parameter) {
            return Err(invalid_argument(format!(
                "family has no parameter `{parameter}` (expected one of {:?})",
                self.parameter_names()
            )));
        }
        match self {
            Family::Werner => werner(value),
            Family::Example2 => example2(value),
            Family::BellDiagonal { base } => {
                let mut c = *base;
                let idx = parameter[1..].parse::<usize>().expect("c1..c3") - 1;
                c[idx] = value;
                bell_diagonal(c[0], c[1], c[2])
            }
            Family::XState { base } => {
                let mut p = *base;
                let z = num_complex::Complex64::new(value, 0.0);
                if parameter == "rho14" {
                    p.rho14 = z;
                } else {
                    p.rho23 = z;
                }
                x_state(&p)
            }
        }
    }
}

/// `count` evenly spaced points from `start` to `stop`, both included.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub name: String,
    pub start: f64,
    pub stop: f64,
    pub count: usize,
}

impl Grid {
    pub fn values(&self) -> Result<Vec<f64>> {
        if self.count < 2 {
            return Err(invalid_argument(format!("grid needs at least 2 points, got {}", self.count)));
        }
        if !(self.start.is_finite() && self.stop.is_finite()) {
            return Err(invalid_argument("grid bounds must be finite"));
        }
        let step = (self.stop - self.start) / (self.count - 1) as f64;
        Ok((0..self.count)
            .map(|i| if i + 1 == self.count { self.stop } else { self.start + step * i as f64 })
            .collect())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepSpec {
    pub family: Family,
    pub grid: Grid,
    pub energies: QubitPairEnergies,
    pub scheme: Scheme,
    #[serde(default = "computational")]
    pub basis: BasisKind,
}

fn computational() -> BasisKind {
    BasisKind::Computational
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Figure {
    /// Subsystem gain `f(x)` for the `example2` family under uniform mixing.
    Fig2,
    /// Whole-system gain `F(x)` for `example2` with weights `μ = (0.1, 0.9)`.
    Fig3,
}

impl std::str::FromStr for Figure {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fig2" => Ok(Figure::Fig2),
            "fig3" => Ok(Figure::Fig3),
            other => Err(invalid_argument(format!("unknown figure `{other}`"))),
        }
    }
}

impl Figure {
    pub fn spec(self) -> SweepSpec {
        let energies = QubitPairEnergies::new(0.5, 0.3).expect("valid preset energies");
        match self {
            Figure::Fig2 => SweepSpec {
                family: Family::Example2,
                grid: Grid { name: "x".into(), start: 0.0, stop: 0.5, count: 101 },
                energies,
                scheme: Scheme::Uniform,
                basis: BasisKind::Computational,
            },
            // μ0 > 2 x μ1 holds for x < 1/18 ≈ 0.0556; the grid stays below it.
            Figure::Fig3 => SweepSpec {
                family: Family::Example2,
                grid: Grid { name: "x".into(), start: 0.0, stop: 0.055, count: 56 },
                energies,
                scheme: Scheme::Weighted(
                    MixingWeights::new(vec![0.1, 0.9]).expect("valid preset weights"),
                ),
                basis: BasisKind::Computational,
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRow {
    pub parameter: f64,
    pub spectrum: Vec<f64>,
    pub c_before_total: f64,
    pub c_after_total: f64,
    pub c_before_a: f64,
    pub c_after_a: f64,
    pub big_f: f64,
    pub small_f: f64,
    pub entangled: bool,
}

impl SweepSpec {
    pub fn row(&self, value: f64) -> Result<SweepRow> {
        let rho = self.family.state(&self.grid.name, value)?;
        let basis = MeasurementBasis::from_kind(self.basis, rho.dim_b())?;
        let report = capacity_gain(&rho, self.energies, &basis, &self.scheme)?;
        Ok(SweepRow {
            parameter: value,
            spectrum: rho.spectrum().to_vec(),
            c_before_total: report.c_before_total.value(),
            c_after_total: report.c_after_total.value(),
            c_before_a: report.c_before_a.value(),
            c_after_a: report.c_after_a.value(),
            big_f: report.big_f,
            small_f: report.small_f,
            entangled: is_entangled(&rho)?,
        })
    }

    /// Evaluates every grid point; rows come back in grid order.
    pub fn run(&self) -> Result<Vec<SweepRow>> {
        self.grid.values()?.into_par_iter().map(|v| self.row(v)).collect()
    }
}

/// Formats with 12 significant digits, `.` as decimal separator and no
/// locale dependence. Zero (including `-0`) prints as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("round trip through exponent form");
    let magnitude = rounded.abs();
    if (1e-5..1e15).contains(&magnitude) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

fn header(parameter: &str, dim: usize) -> Vec<String> {
    let mut h = vec![parameter.to_string()];
    h.extend((0..dim).map(|i| format!("lambda_{i}")));
    h.extend(
        ["c_before_total", "c_after_total", "c_before_a", "c_after_a", "big_f", "small_f", "entangled"]
            .map(String::from),
    );
    h
}

pub fn write_csv<W: Write>(parameter: &str, rows: &[SweepRow], out: W) -> std::io::Result<()> {
    let dim = rows.first().map_or(4, |r| r.spectrum.len());
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header(parameter, dim))?;
    for r in rows {
        let mut rec = vec![format_number(r.parameter)];
        rec.extend(r.spectrum.iter().map(|&l| format_number(l)));
        rec.extend(
            [r.c_before_total, r.c_after_total, r.c_before_a, r.c_after_a, r.big_f, r.small_f]
                .map(format_number),
        );
        rec.push(r.entangled.to_string());
        w.write_record(rec)?;
    }
    w.flush()
}

/// Parses a file produced by [`write_csv`], returning the parameter name and rows.
pub fn read_csv<R: Read>(input: R) -> Result<(String, Vec<SweepRow>)> {
    let mut r = csv::Reader::from_reader(input);
    let headers = r.headers().map_err(|e| invalid_argument(e.to_string()))?.clone();
    if headers.len() < 8 {
        return Err(invalid_argument("sweep CSV has too few columns"));
    }
    let dim = headers.len() - 8;
    let parameter = headers[0].to_string();
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec.map_err(|e| invalid_argument(e.to_string()))?;
        let num = |i: usize| -> Result<f64> {
            rec[i].parse().map_err(|_| invalid_argument(format!("bad number `{}`", &rec[i])))
        };
        let entangled = rec[headers.len() - 1]
            .parse()
            .map_err(|_| invalid_argument("bad boolean"))?;
        rows.push(SweepRow {
            parameter: num(0)?,
            spectrum: (1..=dim).map(num).collect::<Result<_>>()?,
            c_before_total: num(dim + 1)?,
            c_after_total: num(dim + 2)?,
            c_before_a: num(dim + 3)?,
            c_after_a: num(dim + 4)?,
            big_f: num(dim + 5)?,
            small_f: num(dim + 6)?,
            entangled,
        });
    }
    Ok((parameter, rows))
}

/// JSON array of row objects, numbers formatted as in the CSV.
pub fn rows_to_json(parameter: &str, rows: &[SweepRow]) -> serde_json::Value {
    let num = |x: f64| -> serde_json::Value {
        serde_json::from_str(&format_number(x)).unwrap_or(serde_json::Value::Null)
    };
    serde_json::Value::Array(
        rows.iter()
            .map(|r| {
                let mut obj = serde_json::Map::new();
                obj.insert(parameter.to_string(), num(r.parameter));
                obj.insert("spectrum".into(), r.spectrum.iter().map(|&l| num(l)).collect());
                for (k, v) in [
                    ("c_before_total", r.c_before_total),
                    ("c_after_total", r.c_after_total),
                    ("c_before_a", r.c_before_a),
                    ("c_after_a", r.c_after_a),
                    ("big_f", r.big_f),
                    ("small_f", r.small_f),
                ] {
                    obj.insert(k.into(), num(v));
                }
                obj.insert("entangled".into(), r.entangled.into());
                serde_json::Value::Object(obj)
            })
            .collect(),
    )
}
