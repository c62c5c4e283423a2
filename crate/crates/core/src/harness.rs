//! Seeded recovery experiments and threshold sweeps.

use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::recover;
use crate::metrics::{achievability_predicate, recovery_report, RecoveryReport};
use crate::model::{edge_probability, project, sample_hypergraph, DegreeClassSpec, ModelParams};
use crate::seeds::derive_seed;

/// Sample, project, estimate class `target`, and score the estimate.
pub fn run_trial(params: &ModelParams, target: usize, seed: u64) -> Result<RecoveryReport> {
    let spec = params
        .classes
        .get(target)
        .ok_or_else(|| Error::InvalidArgument(format!("no class with index {target}")))?;
    if spec.degree < 3 {
        return Err(Error::DegreeTooSmall(spec.degree));
    }
    let h = sample_hypergraph(params, seed)?;
    let g = project(&h);
    let estimate = recover(&g, spec.degree);
    recovery_report(spec.degree, &h.classes[target].edges, &estimate)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassTemplate {
    pub degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent: Option<f64>,
    /// Sweep values for the exponent; takes precedence over `exponent`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub exponent_grid: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub probability_override: Option<f64>,
}

impl ClassTemplate {
    fn grid(&self) -> Result<Vec<f64>> {
        match (&self.exponent_grid, self.exponent) {
            (Some(g), _) if !g.is_empty() => Ok(g.clone()),
            (Some(_), _) => Err(Error::InvalidArgument(format!(
                "empty exponent grid for degree {}",
                self.degree
            ))),
            (None, Some(x)) => Ok(vec![x]),
            (None, None) => Err(Error::InvalidArgument(format!(
                "class of degree {} has neither exponent nor exponent_grid",
                self.degree
            ))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentConfig {
    pub n_grid: Vec<usize>,
    pub classes: Vec<ClassTemplate>,
    pub target_degree: usize,
    pub trials_per_cell: usize,
    pub base_seed: u64,
    #[serde(default)]
    pub output_path: String,
}

/// One point of the sweep grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub index: usize,
    pub params: ModelParams,
    pub target: usize,
    pub seed: u64,
}

impl ExperimentConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let config: Self = serde_json::from_str(text)?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::InvalidArgument("n_grid is empty".into()));
        }
        if self.classes.is_empty() {
            return Err(Error::InvalidArgument("no classes".into()));
        }
        if self.trials_per_cell == 0 {
            return Err(Error::InvalidArgument("trials_per_cell must be at least 1".into()));
        }
        if self.target_degree < 3 {
            return Err(Error::DegreeTooSmall(self.target_degree));
        }
        if !self.classes.iter().any(|c| c.degree == self.target_degree) {
            return Err(Error::InvalidArgument(format!(
                "no class with target degree {}",
                self.target_degree
            )));
        }
        for c in &self.classes {
            c.grid()?;
        }
        Ok(())
    }

    /// Grid cells: `n` outermost, then class exponents with the first class varying slowest.
    pub fn cells(&self) -> Result<Vec<Cell>> {
        self.validate()?;
        let grids = self
            .classes
            .iter()
            .map(ClassTemplate::grid)
            .collect::<Result<Vec<_>>>()?;
        let mut combos: Vec<Vec<f64>> = vec![Vec::new()];
        for grid in &grids {
            combos = combos
                .iter()
                .flat_map(|prefix| {
                    grid.iter().map(move |&x| {
                        let mut c = prefix.clone();
                        c.push(x);
                        c
                    })
                })
                .collect();
        }
        let mut cells = Vec::with_capacity(self.n_grid.len() * combos.len());
        for &n in &self.n_grid {
            for exps in &combos {
                let classes = self
                    .classes
                    .iter()
                    .zip(exps)
                    .map(|(t, &x)| {
                        let spec = DegreeClassSpec::new(t.degree, x)?;
                        match t.probability_override {
                            Some(p) => spec.with_override(p),
                            None => Ok(spec),
                        }
                    })
                    .collect::<Result<Vec<_>>>()?;
                let params = ModelParams::new(n, classes)?;
                let target = params
                    .class_index(self.target_degree)
                    .expect("validated target degree");
                let index = cells.len();
                cells.push(Cell {
                    index,
                    params,
                    target,
                    seed: derive_seed(self.base_seed, &[index as u64]),
                });
            }
        }
        Ok(cells)
    }
}

/// Seed of trial `trial` within a cell.
pub fn trial_seed(cell_seed: u64, trial: usize) -> u64 {
    derive_seed(cell_seed, &[trial as u64])
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassPoint {
    pub degree: usize,
    pub exponent: f64,
    pub probability: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRow {
    pub n: usize,
    pub classes: Vec<ClassPoint>,
    pub target_d: usize,
    pub delta_star: f64,
    pub target_delta: f64,
    pub p_target: f64,
    pub predicted_achievable: bool,
    pub margin: f64,
    pub trials: usize,
    pub mean_true_count: f64,
    /// Mean of per-trial ratios over trials with nonempty truth (all trials if none).
    pub mean_ratio: f64,
    pub ratio_stderr: f64,
    /// Mean false positives per trial.
    pub mean_fp_rate: f64,
    /// Mean false negatives per trial.
    pub mean_fn_rate: f64,
    pub empty_truth_trials: usize,
    pub seed: u64,
}

pub const SWEEP_CSV_HEADER: &str = "n,target_d,delta_star,target_delta,p_target,predicted_achievable,margin,trials,mean_true_count,mean_ratio,mean_fp_rate,mean_fn_rate,seed";

impl SweepRow {
    pub fn to_csv(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.n,
            self.target_d,
            self.delta_star,
            self.target_delta,
            self.p_target,
            self.predicted_achievable,
            self.margin,
            self.trials,
            self.mean_true_count,
            self.mean_ratio,
            self.mean_fp_rate,
            self.mean_fn_rate,
            self.seed
        )
    }
}

fn mean(xs: impl ExactSizeIterator<Item = f64>) -> f64 {
    let k = xs.len();
    if k == 0 {
        return 0.0;
    }
    xs.sum::<f64>() / k as f64
}

/// Fold the ordered trial reports of one cell into a row.
pub fn summarize_cell(cell: &Cell, reports: &[RecoveryReport]) -> Result<SweepRow> {
    let params = &cell.params;
    let spec = &params.classes[cell.target];
    let verdict = achievability_predicate(params, cell.target)?;
    let trials = reports.len();
    let informative: Vec<f64> = reports
        .iter()
        .filter(|r| !r.empty_truth)
        .map(|r| r.ratio)
        .collect();
    let ratios: Vec<f64> = if informative.is_empty() {
        reports.iter().map(|r| r.ratio).collect()
    } else {
        informative
    };
    let mean_ratio = mean(ratios.iter().copied());
    let ratio_stderr = if ratios.len() > 1 {
        let var = ratios.iter().map(|r| (r - mean_ratio).powi(2)).sum::<f64>()
            / (ratios.len() - 1) as f64;
        (var / ratios.len() as f64).sqrt()
    } else {
        0.0
    };
    Ok(SweepRow {
        n: params.n,
        classes: params
            .classes
            .iter()
            .map(|c| ClassPoint {
                degree: c.degree,
                exponent: c.exponent,
                probability: edge_probability(params.n, c),
            })
            .collect(),
        target_d: spec.degree,
        delta_star: params.delta_star(),
        target_delta: spec.exponent,
        p_target: edge_probability(params.n, spec),
        predicted_achievable: verdict.achievable,
        margin: verdict.margin,
        trials,
        mean_true_count: mean(reports.iter().map(|r| r.true_count as f64)),
        mean_ratio,
        ratio_stderr,
        mean_fp_rate: reports.iter().map(|r| r.false_positives).sum::<usize>() as f64 / trials as f64,
        mean_fn_rate: reports.iter().map(|r| r.false_negatives).sum::<usize>() as f64 / trials as f64,
        empty_truth_trials: reports.iter().filter(|r| r.empty_truth).count(),
        seed: cell.seed,
    })
}

/// Run every cell of the grid on the current rayon pool.
///
/// Trials are scheduled freely but collected by position, so the rows do not
/// depend on the number of threads.
pub fn run_sweep(config: &ExperimentConfig) -> Result<Vec<SweepRow>> {
    let cells = config.cells()?;
    let trials = config.trials_per_cell;
    let jobs: Vec<(usize, usize)> = (0..cells.len())
        .flat_map(|c| (0..trials).map(move |t| (c, t)))
        .collect();
    let reports = jobs
        .par_iter()
        .map(|&(c, t)| {
            let cell = &cells[c];
            run_trial(&cell.params, cell.target, trial_seed(cell.seed, t))
        })
        .collect::<Result<Vec<_>>>()?;
    cells
        .iter()
        .zip(reports.chunks(trials))
        .map(|(cell, chunk)| summarize_cell(cell, chunk))
        .collect()
}

/// [`run_sweep`] on a dedicated pool of `threads` workers.
pub fn run_sweep_with_threads(config: &ExperimentConfig, threads: usize) -> Result<Vec<SweepRow>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?;
    pool.install(|| run_sweep(config))
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(SWEEP_CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&r.to_csv());
        out.push('\n');
    }
    out
}

pub fn write_sweep_csv(rows: &[SweepRow], path: &Path) -> Result<()> {
    std::fs::write(path, sweep_csv(rows))?;
    Ok(())
}
