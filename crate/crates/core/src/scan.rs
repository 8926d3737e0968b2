//! Parameter sweeps over state and map parameters, gathered into a
//! [`PhaseDiagram`].

use std::f64::consts::FRAC_PI_2;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::linalg::TOLERANCE;
use crate::maps::PartialScalingSpec;
use crate::states::StateFamily;
use crate::witness::witness;

/// Either a pinned value or a uniform sweep `min..=max` over `steps` points.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum AxisSpec {
    Fixed(f64),
    Sweep { min: f64, max: f64, steps: usize },
}

impl AxisSpec {
    pub fn values(&self) -> Vec<f64> {
        match *self {
            AxisSpec::Fixed(v) => vec![v],
            AxisSpec::Sweep { min, max, steps } => {
                let last = (steps.max(2) - 1) as f64;
                (0..steps)
                    .map(|i| {
                        if i + 1 == steps {
                            max
                        } else {
                            min + (max - min) * (i as f64 / last)
                        }
                    })
                    .collect()
            }
        }
    }

    fn bounds(&self) -> (f64, f64) {
        match *self {
            AxisSpec::Fixed(v) => (v, v),
            AxisSpec::Sweep { min, max, .. } => (min, max),
        }
    }

    fn validate(&self, name: &str) -> Result<()> {
        match *self {
            AxisSpec::Fixed(v) if !v.is_finite() => {
                Err(Error::InvalidParameter(format!("{name}: value {v} is not finite")))
            }
            AxisSpec::Sweep { min, max, steps } => {
                if !(min.is_finite() && max.is_finite()) {
                    return Err(Error::InvalidParameter(format!("{name}: bounds must be finite")));
                }
                if steps < 2 {
                    return Err(Error::InvalidParameter(format!(
                        "{name}: a sweep needs at least 2 steps"
                    )));
                }
                if min >= max {
                    return Err(Error::InvalidParameter(format!(
                        "{name}: min {min} must be below max {max}"
                    )));
                }
                Ok(())
            }
            _ => Ok(()),
        }
    }
}

/// Family selector for scans: like [`StateFamily`] but with `theta` left to an axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum ScanFamily {
    GhzWerner {
        d: usize,
        n: usize,
    },
    ThetaWerner,
    WWerner,
    CustomPureWerner {
        amplitudes: Vec<(f64, f64)>,
        dims: Vec<usize>,
    },
}

impl ScanFamily {
    fn factors(&self) -> usize {
        match self {
            ScanFamily::GhzWerner { n, .. } => *n,
            ScanFamily::ThetaWerner | ScanFamily::WWerner => 3,
            ScanFamily::CustomPureWerner { dims, .. } => dims.len(),
        }
    }

    fn with_theta(&self, theta: f64) -> StateFamily {
        match self {
            ScanFamily::GhzWerner { d, n } => StateFamily::GhzWerner { d: *d, n: *n },
            ScanFamily::ThetaWerner => StateFamily::ThetaWerner { theta },
            ScanFamily::WWerner => StateFamily::WWerner,
            ScanFamily::CustomPureWerner { amplitudes, dims } => StateFamily::CustomPureWerner {
                amplitudes: amplitudes.clone(),
                dims: dims.clone(),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanConfig {
    pub family: ScanFamily,
    pub p: AxisSpec,
    /// Required for [`ScanFamily::ThetaWerner`], rejected otherwise.
    pub theta: Option<AxisSpec>,
    /// One axis per tensor factor.
    pub lambdas: Vec<AxisSpec>,
    /// Permits scaling parameters outside `[-1, 1]`.
    pub allow_out_of_range: bool,
    /// Threshold for the witnessed flag; defaults to [`TOLERANCE`].
    pub tolerance: Option<f64>,
}

impl ScanConfig {
    pub fn validate(&self) -> Result<()> {
        let factors = self.family.factors();
        if self.lambdas.len() != factors {
            return Err(Error::DimensionMismatch(format!(
                "{} lambda axes for a {factors}-factor family",
                self.lambdas.len()
            )));
        }
        self.p.validate("p")?;
        let range = self.family.with_theta(0.0).positivity_range();
        let (pmin, pmax) = self.p.bounds();
        if !range.contains(pmin) || !range.contains(pmax) {
            return Err(Error::MixingOutOfRange {
                p: if range.contains(pmin) { pmax } else { pmin },
                min: range.min,
                max: range.max,
            });
        }
        match (&self.family, &self.theta) {
            (ScanFamily::ThetaWerner, None) => {
                return Err(Error::InvalidParameter("theta_werner needs a theta axis".into()))
            }
            (ScanFamily::ThetaWerner, Some(t)) => {
                t.validate("theta")?;
                let (lo, hi) = t.bounds();
                if lo < 0.0 || hi > FRAC_PI_2 + 1e-12 {
                    return Err(Error::InvalidParameter(format!(
                        "theta bounds [{lo}, {hi}] outside [0, pi/2]"
                    )));
                }
            }
            (_, Some(_)) => return Err(Error::InvalidParameter("theta only applies to theta_werner".into())),
            _ => {}
        }
        for (i, axis) in self.lambdas.iter().enumerate() {
            let name = format!("lambda{}", i + 1);
            axis.validate(&name)?;
            let (lo, hi) = axis.bounds();
            if !self.allow_out_of_range && (lo < -1.0 || hi > 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "{name} bounds [{lo}, {hi}] leave [-1, 1]; set the out-of-range override to allow this"
                )));
            }
        }
        if let Some(t) = self.tolerance {
            if !(t.is_finite() && t >= 0.0) {
                return Err(Error::InvalidParameter(format!(
                    "tolerance {t} must be a non-negative number"
                )));
            }
        }
        Ok(())
    }

    pub fn axes(&self) -> Vec<Axis> {
        let mut axes = vec![Axis::new("p", self.p.values())];
        if let Some(t) = &self.theta {
            axes.push(Axis::new("theta", t.values()));
        }
        for (i, l) in self.lambdas.iter().enumerate() {
            axes.push(Axis::new(format!("lambda{}", i + 1), l.values()));
        }
        axes
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Axis {
    pub name: String,
    pub values: Vec<f64>,
}

impl Axis {
    pub fn new(name: impl Into<String>, values: Vec<f64>) -> Self {
        Self {
            name: name.into(),
            values,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Cell {
    /// One coordinate per axis, in axis order.
    pub coords: Vec<f64>,
    pub min_eigenvalue: f64,
    pub negativity_m: f64,
    pub witnessed: bool,
}

/// Row-major grid of witness results; the last axis varies fastest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhaseDiagram {
    pub axes: Vec<Axis>,
    pub cells: Vec<Cell>,
}

impl PhaseDiagram {
    pub fn expected_cells(&self) -> usize {
        self.axes.iter().map(|a| a.values.len()).product()
    }

    pub fn axis_index(&self, name: &str) -> Option<usize> {
        self.axes.iter().position(|a| a.name == name)
    }

    /// Checks cell count, coordinate arity and the witnessed flags against `tolerance`.
    pub fn check(&self, tolerance: f64) -> Result<()> {
        if self.cells.len() != self.expected_cells() {
            return Err(Error::Malformed(format!(
                "{} cells, axes imply {}",
                self.cells.len(),
                self.expected_cells()
            )));
        }
        for (i, cell) in self.cells.iter().enumerate() {
            if cell.coords.len() != self.axes.len() {
                return Err(Error::Malformed(format!(
                    "cell {i} has {} coordinates",
                    cell.coords.len()
                )));
            }
            if cell.witnessed != (cell.min_eigenvalue < -tolerance) {
                return Err(Error::Malformed(format!(
                    "cell {i}: witnessed flag disagrees with min eigenvalue"
                )));
            }
        }
        Ok(())
    }

    /// `(width, height)` of the image view: the last swept axis runs across,
    /// everything else stacks down.
    pub fn image_shape(&self) -> (usize, usize) {
        let width = self
            .axes
            .iter()
            .rev()
            .map(|a| a.values.len())
            .find(|&n| n > 1)
            .unwrap_or(1);
        (width, self.cells.len() / width.max(1))
    }
}

/// Row-major cartesian product of the axis values.
fn grid_points(axes: &[Axis]) -> Vec<Vec<f64>> {
    let total: usize = axes.iter().map(|a| a.values.len()).product();
    let mut points = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut coords = vec![0.0; axes.len()];
        for (slot, axis) in axes.iter().enumerate().rev() {
            coords[slot] = axis.values[idx % axis.values.len()];
            idx /= axis.values.len();
        }
        points.push(coords);
    }
    points
}

/// Evaluates every grid cell; output is independent of `exec`.
pub fn run_scan(config: &ScanConfig, exec: Execution) -> Result<PhaseDiagram> {
    config.validate()?;
    let tolerance = config.tolerance.unwrap_or(TOLERANCE);
    let axes = config.axes();
    let has_theta = config.theta.is_some();
    let lambda_offset = if has_theta { 2 } else { 1 };
    let points = grid_points(&axes);

    let cells = map_ordered(&points, exec, |coords| -> Result<Cell> {
        let theta = if has_theta { coords[1] } else { 0.0 };
        let rho = config.family.with_theta(theta).state(coords[0])?;
        let spec = PartialScalingSpec::new(coords[lambda_offset..].to_vec())?;
        let report = witness(&rho, &spec)?;
        Ok(Cell {
            coords: coords.clone(),
            min_eigenvalue: report.min_eigenvalue,
            negativity_m: report.negativity_m,
            witnessed: report.min_eigenvalue < -tolerance,
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;

    Ok(PhaseDiagram { axes, cells })
}
