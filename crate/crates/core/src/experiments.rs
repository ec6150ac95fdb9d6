//! Sweeps over `(t, T)` grids, the sudden-death time finder and the canned
//! jobs behind the four figure surfaces.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::covariance::{
    separable_squeezed, two_mode_squeezed, CovarianceMatrix, SqueezingParameter, SystemParams,
};
use crate::dynamics::{evolve, Temperature};
use crate::error::{Error, Result};
use crate::measures::{
    correlations, log_negativity, CorrelationReport, EntropyLogBase, EpsilonBranch,
};

/// Default number of coarse scan intervals for [`sudden_death_time`].
pub const SCAN_INTERVALS: usize = 1000;

/// Target for `|E_N|` at the reported crossing, and the dead band below zero
/// that a scanned value must clear before it counts as a sign change.
pub const CROSSING_TOL: f64 = 1e-9;

/// Bisection stops once the bracket is at most this wide (and the crossing
/// satisfies [`CROSSING_TOL`]).
pub const BRACKET_WIDTH: f64 = 1e-10;

pub const FIGURE_R: f64 = 4.0;
pub const FIGURE_T_MAX: f64 = 20.0;
pub const FIGURE_T_POINTS: usize = 81;
pub const FIGURE_TEMP_MAX: f64 = 4.0;
pub const FIGURE_TEMP_POINTS: usize = 41;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    SeparableSqueezed(SqueezingParameter),
    TwoModeSqueezed(SqueezingParameter),
}

impl InitialState {
    pub fn covariance(&self) -> CovarianceMatrix {
        match *self {
            InitialState::SeparableSqueezed(r) => separable_squeezed(r),
            InitialState::TwoModeSqueezed(r) => two_mode_squeezed(r),
        }
    }

    pub fn squeezing(&self) -> SqueezingParameter {
        match *self {
            InitialState::SeparableSqueezed(r) | InitialState::TwoModeSqueezed(r) => r,
        }
    }

    /// Short name used in config files: `sep` or `tmss`.
    pub fn kind(&self) -> &'static str {
        match self {
            InitialState::SeparableSqueezed(_) => "sep",
            InitialState::TwoModeSqueezed(_) => "tmss",
        }
    }
}

/// A correlation quantifier that can appear as a sweep column.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Measure {
    SimonS,
    LogNegativity,
    Discord,
    Classical,
    MutualInformation,
}

impl Measure {
    /// Canonical column order.
    pub const ALL: [Measure; 5] = [
        Measure::SimonS,
        Measure::LogNegativity,
        Measure::Discord,
        Measure::Classical,
        Measure::MutualInformation,
    ];

    pub fn column(self) -> &'static str {
        match self {
            Measure::SimonS => "S",
            Measure::LogNegativity => "E_N",
            Measure::Discord => "D",
            Measure::Classical => "C",
            Measure::MutualInformation => "I",
        }
    }

    pub fn value(self, report: &CorrelationReport) -> f64 {
        match self {
            Measure::SimonS => report.simon_s,
            Measure::LogNegativity => report.log_negativity,
            Measure::Discord => report.discord,
            Measure::Classical => report.classical,
            Measure::MutualInformation => report.mutual_information,
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

impl FromStr for Measure {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Measure::ALL
            .into_iter()
            .find(|m| m.column().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| format!("unknown measure {s:?}; expected one of S, E_N, D, C, I"))
    }
}

/// Non-empty, strictly increasing list of non-negative values.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid(Vec<f64>);

impl Grid {
    pub fn new(name: &'static str, values: Vec<f64>) -> Result<Self> {
        let bad = |reason: &str| Error::InvalidGrid {
            name,
            reason: reason.to_string(),
        };
        if values.is_empty() {
            return Err(bad("grid is empty"));
        }
        if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
            return Err(bad("values must be finite and non-negative"));
        }
        if values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(bad("values must be strictly increasing"));
        }
        Ok(Grid(values))
    }

    /// `points` evenly spaced values from `min` to `max` inclusive. Each value
    /// is `min + (max − min)·i/(points − 1)`, so endpoints are exact.
    pub fn linspace(name: &'static str, min: f64, max: f64, points: usize) -> Result<Self> {
        if points == 0 {
            return Err(Error::InvalidGrid {
                name,
                reason: "need at least one point".into(),
            });
        }
        if points == 1 {
            if min != max {
                return Err(Error::InvalidGrid {
                    name,
                    reason: format!("a single point needs min = max (got {min} and {max})"),
                });
            }
            return Grid::new(name, vec![min]);
        }
        let span = max - min;
        let last = (points - 1) as f64;
        let values = (0..points)
            .map(|i| {
                if i == points - 1 {
                    max
                } else {
                    min + span * i as f64 / last
                }
            })
            .collect();
        Grid::new(name, values)
    }

    pub fn values(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepJob {
    pub initial: InitialState,
    pub params: SystemParams,
    pub t_grid: Grid,
    pub temperature_grid: Grid,
    measures: Vec<Measure>,
    pub base: EntropyLogBase,
}

impl SweepJob {
    /// Measures are deduplicated and put in canonical column order.
    pub fn new(
        initial: InitialState,
        params: SystemParams,
        t_grid: Grid,
        temperature_grid: Grid,
        measures: &[Measure],
        base: EntropyLogBase,
    ) -> Result<Self> {
        let mut measures = measures.to_vec();
        measures.sort();
        measures.dedup();
        if measures.is_empty() {
            return Err(Error::InvalidGrid {
                name: "measures",
                reason: "at least one measure is required".into(),
            });
        }
        Ok(SweepJob {
            initial,
            params,
            t_grid,
            temperature_grid,
            measures,
            base,
        })
    }

    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    pub fn cell_count(&self) -> usize {
        self.t_grid.len() * self.temperature_grid.len()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub t: f64,
    pub temperature: f64,
    /// One entry per job measure, in the table's column order.
    pub values: Vec<f64>,
    pub epsilon_branch: EpsilonBranch,
    pub nu_bar_minus: f64,
    pub nu_tilde_minus: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepTable {
    measures: Vec<Measure>,
    rows: Vec<SweepRow>,
}

impl SweepTable {
    pub const DIAGNOSTIC_COLUMNS: [&'static str; 3] =
        ["nu_bar_minus", "nu_tilde_minus", "epsilon_branch"];

    pub fn measures(&self) -> &[Measure] {
        &self.measures
    }

    pub fn rows(&self) -> &[SweepRow] {
        &self.rows
    }

    /// Column manifest: `t`, `T`, the measures, then the diagnostics.
    pub fn columns(&self) -> Vec<&'static str> {
        let mut cols = vec!["t", "T"];
        cols.extend(self.measures.iter().map(|m| m.column()));
        cols.extend(Self::DIAGNOSTIC_COLUMNS);
        cols
    }

    pub fn value(&self, row: usize, measure: Measure) -> Option<f64> {
        let idx = self.measures.iter().position(|&m| m == measure)?;
        self.rows.get(row).map(|r| r.values[idx])
    }

    /// Rows sharing one temperature, in ascending `t`.
    pub fn rows_at_temperature(&self, temperature: f64) -> impl Iterator<Item = &SweepRow> {
        self.rows
            .iter()
            .filter(move |r| r.temperature == temperature)
    }
}

fn sweep_cell(job: &SweepJob, sigma0: &CovarianceMatrix, t: f64, temp: f64) -> Result<SweepRow> {
    let temperature = Temperature::new(temp)?;
    let sigma = evolve(sigma0, &job.params, temperature, t)?;
    let report = correlations(&sigma, job.base)?;
    Ok(SweepRow {
        t,
        temperature: temp,
        values: job.measures.iter().map(|m| m.value(&report)).collect(),
        epsilon_branch: report.epsilon_branch,
        nu_bar_minus: report.nu_bar_minus,
        nu_tilde_minus: report.nu_tilde_minus,
    })
}

/// Evaluates every `(t, T)` cell of `job`. Cells run in parallel; rows come
/// back temperature-major, then ascending `t`. The first failing cell in
/// row order aborts the sweep.
pub fn run_sweep(job: &SweepJob) -> Result<SweepTable> {
    let sigma0 = job.initial.covariance();
    let ts = job.t_grid.values();
    let temps = job.temperature_grid.values();
    let rows: Vec<Result<SweepRow>> = (0..job.cell_count())
        .into_par_iter()
        .map(|idx| {
            let (t, temp) = (ts[idx % ts.len()], temps[idx / ts.len()]);
            sweep_cell(job, &sigma0, t, temp).map_err(|e| Error::SweepCell {
                t,
                temperature: temp,
                source: Box::new(e),
            })
        })
        .collect();
    Ok(SweepTable {
        measures: job.measures.clone(),
        rows: rows.into_iter().collect::<Result<_>>()?,
    })
}

/// Canned job for figure `fig` (1 → E_N, 2 → D, 3 → C, 4 → I).
pub fn figure_job(fig: u8) -> Result<SweepJob> {
    let measure = match fig {
        1 => Measure::LogNegativity,
        2 => Measure::Discord,
        3 => Measure::Classical,
        4 => Measure::MutualInformation,
        other => return Err(Error::UnknownFigure(other)),
    };
    SweepJob::new(
        InitialState::TwoModeSqueezed(SqueezingParameter::new(FIGURE_R)?),
        SystemParams::figure_defaults(),
        Grid::linspace("t", 0.0, FIGURE_T_MAX, FIGURE_T_POINTS)?,
        Grid::linspace("T", 0.0, FIGURE_TEMP_MAX, FIGURE_TEMP_POINTS)?,
        &[measure],
        EntropyLogBase::default(),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuddenDeathStatus {
    Found,
    NoneWithinHorizon,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuddenDeathResult {
    pub status: SuddenDeathStatus,
    pub crossing_time: Option<f64>,
    /// Final bisection bracket; `E_N > 0` at the lower end and `≤ 0` at the
    /// upper end. When nothing was found this is the searched interval.
    pub bracket: (f64, f64),
    /// Width of the final bracket, or the scan step when nothing was found.
    pub tolerance: f64,
    /// `E_N` at the reported crossing.
    pub log_negativity_at_crossing: Option<f64>,
    /// The initial state was not entangled, so the crossing is reported at 0.
    pub initially_separable: bool,
}

impl SuddenDeathResult {
    pub fn found(&self) -> bool {
        self.status == SuddenDeathStatus::Found
    }
}

/// First time at which the logarithmic negativity of the evolved state
/// reaches zero, searched on `[0, horizon]` with [`SCAN_INTERVALS`] coarse steps.
pub fn sudden_death_time(
    initial: &CovarianceMatrix,
    params: &SystemParams,
    temperature: Temperature,
    horizon: f64,
) -> Result<SuddenDeathResult> {
    sudden_death_time_with(initial, params, temperature, horizon, SCAN_INTERVALS)
}

/// [`sudden_death_time`] with an explicit number of scan intervals.
pub fn sudden_death_time_with(
    initial: &CovarianceMatrix,
    params: &SystemParams,
    temperature: Temperature,
    horizon: f64,
    intervals: usize,
) -> Result<SuddenDeathResult> {
    if !horizon.is_finite() || horizon <= 0.0 {
        return Err(Error::invalid(
            "horizon",
            horizon,
            "must be finite and positive",
        ));
    }
    if intervals == 0 {
        return Err(Error::invalid(
            "intervals",
            0.0,
            "need at least one scan interval",
        ));
    }
    let en = |t: f64| -> Result<f64> { log_negativity(&evolve(initial, params, temperature, t)?) };

    let e0 = en(0.0)?;
    if e0 <= 0.0 {
        return Ok(SuddenDeathResult {
            status: SuddenDeathStatus::Found,
            crossing_time: Some(0.0),
            bracket: (0.0, 0.0),
            tolerance: 0.0,
            log_negativity_at_crossing: Some(e0),
            initially_separable: true,
        });
    }

    let time_at = |k: usize| horizon * k as f64 / intervals as f64;
    let mut last_positive = 0;
    let mut first_dead = None;
    for k in 1..=intervals {
        let e = en(time_at(k))?;
        if e > 0.0 {
            last_positive = k;
        } else if e < -CROSSING_TOL {
            first_dead = Some(k);
            break;
        }
    }
    if first_dead.is_none() {
        return Ok(SuddenDeathResult {
            status: SuddenDeathStatus::NoneWithinHorizon,
            crossing_time: None,
            bracket: (0.0, horizon),
            tolerance: horizon / intervals as f64,
            log_negativity_at_crossing: None,
            initially_separable: false,
        });
    }

    let (mut lo, mut hi) = (time_at(last_positive), time_at(last_positive + 1));
    let (mut e_lo, mut e_hi) = (en(lo)?, en(hi)?);
    for _ in 0..200 {
        let converged = hi - lo <= BRACKET_WIDTH && e_lo.abs().min(e_hi.abs()) <= CROSSING_TOL;
        let mid = 0.5 * (lo + hi);
        if converged || mid <= lo || mid >= hi {
            break;
        }
        let e = en(mid)?;
        if e > 0.0 {
            (lo, e_lo) = (mid, e);
        } else {
            (hi, e_hi) = (mid, e);
        }
    }
    let (crossing, e_cross) = if e_lo.abs() <= e_hi.abs() {
        (lo, e_lo)
    } else {
        (hi, e_hi)
    };
    Ok(SuddenDeathResult {
        status: SuddenDeathStatus::Found,
        crossing_time: Some(crossing),
        bracket: (lo, hi),
        tolerance: hi - lo,
        log_negativity_at_crossing: Some(e_cross),
        initially_separable: false,
    })
}

/// Sudden-death search for each entry of `params_list`, which must share
/// `m`, `ω₁`, `ω₂` and list `λ` in strictly ascending order.
pub fn lambda_sensitivity(
    initial: &CovarianceMatrix,
    params_list: &[SystemParams],
    temperature: Temperature,
    horizon: f64,
) -> Result<Vec<SuddenDeathResult>> {
    let Some(first) = params_list.first() else {
        return Err(Error::InvalidGrid {
            name: "lambda",
            reason: "parameter list is empty".into(),
        });
    };
    for pair in params_list.windows(2) {
        if pair[1].lambda() <= pair[0].lambda() {
            return Err(Error::InvalidGrid {
                name: "lambda",
                reason: "dissipation rates must be strictly ascending".into(),
            });
        }
    }
    if params_list
        .iter()
        .any(|p| p.with_lambda(first.lambda()).ok().as_ref() != Some(first))
    {
        return Err(Error::InvalidGrid {
            name: "lambda",
            reason: "only the dissipation rate may vary across the list".into(),
        });
    }
    params_list
        .par_iter()
        .map(|p| sudden_death_time(initial, p, temperature, horizon))
        .collect()
}

/// `Some(true)` when every search found a crossing and the crossing times
/// strictly decrease; `None` when at least one search found nothing.
pub fn crossing_times_strictly_decreasing(results: &[SuddenDeathResult]) -> Option<bool> {
    let times: Option<Vec<f64>> = results.iter().map(|r| r.crossing_time).collect();
    times.map(|ts| ts.windows(2).all(|w| w[1] < w[0]))
}
