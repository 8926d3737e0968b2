//! Witness reports, the negativity-style measure and its maximization over
//! scaling parameters, closed-form spectra for the Werner families, and
//! per-bipartition verdicts for three-factor states.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::{map_ordered, Execution};
use crate::linalg::{DensityMatrix, Solver, TOLERANCE};
use crate::maps::{partial_scaling, PartialScalingSpec};

/// Negativities closer than this are treated as tied when maximizing.
pub const TIE_TOLERANCE: f64 = 1e-12;

/// Spectrum of a partially scaled state and the derived negativity.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub spec: PartialScalingSpec,
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    pub min_eigenvalue: f64,
    /// `sum |e| - 1`.
    pub negativity_m: f64,
    /// `min_eigenvalue < -TOLERANCE`.
    pub entangled_witnessed: bool,
    /// Set when some scaling parameter lies outside `[-1, 1]`.
    pub lambda_out_of_range: bool,
}

impl WitnessReport {
    pub fn from_eigenvalues(spec: PartialScalingSpec, eigenvalues: Vec<f64>) -> Self {
        let min_eigenvalue = eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
        let lambda_out_of_range = spec.out_of_range();
        Self {
            negativity_m: negativity(&eigenvalues),
            entangled_witnessed: min_eigenvalue < -TOLERANCE,
            min_eigenvalue,
            eigenvalues,
            spec,
            lambda_out_of_range,
        }
    }
}

/// `sum |e_j| - 1` for a unit-trace spectrum.
///
/// Evaluated as `sum (|e_j| - e_j)`, which is the same quantity when the
/// eigenvalues sum to one and is exactly zero for a non-negative spectrum.
pub fn negativity(eigenvalues: &[f64]) -> f64 {
    eigenvalues.iter().map(|e| e.abs() - e).sum()
}

pub fn witness(rho: &DensityMatrix, spec: &PartialScalingSpec) -> Result<WitnessReport> {
    witness_with(rho, spec, Solver::Jacobi)
}

pub fn witness_with(rho: &DensityMatrix, spec: &PartialScalingSpec, solver: Solver) -> Result<WitnessReport> {
    let mapped = partial_scaling(rho, spec)?;
    let mut eigenvalues = solver.eigenvalues(&mapped)?;
    eigenvalues.sort_by(f64::total_cmp);
    Ok(WitnessReport::from_eigenvalues(spec.clone(), eigenvalues))
}

/// Maximum negativity over a grid of scaling specs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeasureResult {
    #[serde(rename = "M")]
    pub value: f64,
    pub argmax_spec: PartialScalingSpec,
    pub grid_resolution: usize,
    pub evaluated: usize,
}

/// `points` uniformly spaced values on `[-1, 1]`, endpoints exact.
pub fn axis_values(points: usize) -> Vec<f64> {
    match points {
        0 => vec![],
        1 => vec![1.0],
        _ => {
            let last = (points - 1) as f64;
            (0..points)
                .map(|i| {
                    if i + 1 == points {
                        1.0
                    } else {
                        -1.0 + 2.0 * i as f64 / last
                    }
                })
                .collect()
        }
    }
}

/// Every spec of the measure grid: factor 0 held at the identity, each
/// remaining factor on `axis_values(points)`, row-major with the last factor
/// varying fastest. The hypercube vertices are part of the grid.
pub fn measure_grid(factors: usize, points: usize) -> Vec<PartialScalingSpec> {
    let axis = axis_values(points);
    let free = factors.saturating_sub(1);
    let total = axis.len().pow(free as u32);
    let mut specs = Vec::with_capacity(total);
    for mut idx in 0..total {
        let mut lambdas = vec![1.0; factors];
        for slot in (1..factors).rev() {
            lambdas[slot] = axis[idx % axis.len()];
            idx /= axis.len();
        }
        specs.push(PartialScalingSpec::new(lambdas).expect("finite grid values"));
    }
    specs
}

/// Deterministic arg-max: larger negativity wins, near-ties go to the
/// lexicographically smaller spec.
pub fn best_report<'a, I>(reports: I) -> Option<&'a WitnessReport>
where
    I: IntoIterator<Item = &'a WitnessReport>,
{
    let mut best: Option<&WitnessReport> = None;
    for r in reports {
        best = match best {
            None => Some(r),
            Some(b) => {
                let diff = r.negativity_m - b.negativity_m;
                if diff > TIE_TOLERANCE || (diff.abs() <= TIE_TOLERANCE && r.spec.lex_cmp(&b.spec) == Ordering::Less) {
                    Some(r)
                } else {
                    Some(b)
                }
            }
        };
    }
    best
}

/// `M(rho) = max m(rho, spec)` over [`measure_grid`].
pub fn measure_m(rho: &DensityMatrix, grid_points_per_axis: usize) -> Result<MeasureResult> {
    measure_m_with(rho, grid_points_per_axis, Execution::default(), Solver::Jacobi)
}

pub fn measure_m_with(
    rho: &DensityMatrix,
    grid_points_per_axis: usize,
    exec: Execution,
    solver: Solver,
) -> Result<MeasureResult> {
    if grid_points_per_axis < 2 {
        return Err(Error::InvalidParameter(format!(
            "measure grid needs at least 2 points per axis, got {grid_points_per_axis}"
        )));
    }
    let specs = measure_grid(rho.factors(), grid_points_per_axis);
    let reports = map_ordered(&specs, exec, |spec| witness_with(rho, spec, solver))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let best = best_report(&reports).expect("grid is never empty");
    Ok(MeasureResult {
        value: best.negativity_m,
        argmax_spec: best.spec.clone(),
        grid_resolution: grid_points_per_axis,
        evaluated: reports.len(),
    })
}

/// Closed-form spectrum of `(I (x) T_lambda) w_p` for two-qubit Werner states.
pub fn analytic_werner_eigs(p: f64, lambda: f64) -> [f64; 4] {
    [
        (1.0 - p * lambda) / 4.0,
        (1.0 - p * lambda) / 4.0,
        (1.0 - 2.0 * p + p * lambda) / 4.0,
        (1.0 + 2.0 * p + p * lambda) / 4.0,
    ]
}

/// Closed-form spectrum of `(I (x) T_lambda (x) T_mu) w'_p` for the three-qubit GHZ-Werner state.
pub fn analytic_ghz3_eigs(p: f64, lambda: f64, mu: f64) -> [f64; 8] {
    let noise = (1.0 - p) / 8.0;
    let pp = (1.0 + lambda) * (1.0 + mu) * p / 8.0;
    let pm = (1.0 + lambda) * (1.0 - mu) * p / 8.0;
    let mp = (1.0 - lambda) * (1.0 + mu) * p / 8.0;
    let mm = (1.0 - lambda) * (1.0 - mu) * p / 8.0;
    [
        p / 2.0 + noise + pp,
        p / 2.0 + noise - pp,
        noise + pm,
        noise - pm,
        noise + mp,
        noise - mp,
        noise + mm,
        noise - mm,
    ]
}

/// Smallest Werner mixing weight whose scaled spectrum turns negative.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Threshold {
    /// `1 / (2 - lambda)`.
    pub p: f64,
    /// False at `lambda = 1`: the identity map never detects anything.
    pub detects: bool,
}

pub fn detection_threshold_werner(lambda: f64) -> Result<Threshold> {
    if !(-1.0..=1.0).contains(&lambda) {
        return Err(Error::InvalidParameter(format!("lambda = {lambda} outside [-1, 1]")));
    }
    Ok(Threshold {
        p: 1.0 / (2.0 - lambda),
        detects: lambda < 1.0,
    })
}

/// Outcome of one bipartition scan. `NotWitnessed` does not certify separability.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Witnessed {
        spec: PartialScalingSpec,
        min_eigenvalue: f64,
    },
    NotWitnessed {
        /// Least eigenvalue seen over the scanned specs.
        min_eigenvalue: f64,
    },
}

impl Verdict {
    pub fn is_witnessed(&self) -> bool {
        matches!(self, Verdict::Witnessed { .. })
    }

    fn from_reports(reports: &[WitnessReport]) -> Self {
        let lowest = reports
            .iter()
            .min_by(|a, b| {
                a.min_eigenvalue
                    .total_cmp(&b.min_eigenvalue)
                    .then_with(|| a.spec.lex_cmp(&b.spec))
            })
            .expect("non-empty scan");
        if lowest.entangled_witnessed {
            Verdict::Witnessed {
                spec: lowest.spec.clone(),
                min_eigenvalue: lowest.min_eigenvalue,
            }
        } else {
            Verdict::NotWitnessed {
                min_eigenvalue: lowest.min_eigenvalue,
            }
        }
    }
}

/// Verdicts for a three-factor state under `I (x) T_lambda (x) T_mu`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BipartitionReport {
    /// Spec `(1, -1, -1)`.
    pub s1_s23: Verdict,
    /// Line `(1, lambda, 1)`.
    pub s2_s31: Verdict,
    /// Line `(1, 1, mu)`.
    pub s3_s12: Verdict,
    /// Grid points off both lines and off `(1, -1, -1)`.
    pub tripartite: Verdict,
}

pub fn classify_bipartitions(rho: &DensityMatrix, grid: usize) -> Result<BipartitionReport> {
    classify_bipartitions_with(rho, grid, Execution::default())
}

pub fn classify_bipartitions_with(rho: &DensityMatrix, grid: usize, exec: Execution) -> Result<BipartitionReport> {
    if rho.factors() != 3 {
        return Err(Error::DimensionMismatch(format!(
            "bipartition classification needs 3 factors, state has {}",
            rho.factors()
        )));
    }
    if grid < 2 {
        return Err(Error::InvalidParameter(format!(
            "bipartition grid needs at least 2 points per axis, got {grid}"
        )));
    }
    let axis = axis_values(grid);
    let spec = |l: f64, m: f64| PartialScalingSpec::new(vec![1.0, l, m]).expect("finite");
    let scan = |specs: Vec<PartialScalingSpec>| -> Result<Verdict> {
        let reports = map_ordered(&specs, exec, |s| witness(rho, s))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        Ok(Verdict::from_reports(&reports))
    };

    let s1_s23 = scan(vec![spec(-1.0, -1.0)])?;
    let s2_s31 = scan(axis.iter().map(|&l| spec(l, 1.0)).collect())?;
    let s3_s12 = scan(axis.iter().map(|&m| spec(1.0, m)).collect())?;
    let generic: Vec<PartialScalingSpec> = axis
        .iter()
        .flat_map(|&l| axis.iter().map(move |&m| (l, m)))
        .filter(|&(l, m)| l != 1.0 && m != 1.0 && !(l == -1.0 && m == -1.0))
        .map(|(l, m)| spec(l, m))
        .collect();
    let tripartite = if generic.is_empty() {
        Verdict::NotWitnessed {
            min_eigenvalue: f64::NAN,
        }
    } else {
        scan(generic)?
    };
    Ok(BipartitionReport {
        s1_s23,
        s2_s31,
        s3_s12,
        tripartite,
    })
}
