//! Command-line front end.
//!
//! Settings are resolved from four layers, highest first: command-line
//! flags, the `--config` file, the figure preset (when `figure` is set) and
//! built-in defaults. Config files hold flat `key = value` lines with `#`
//! comments; the keys are the flag names without the leading `--`.
//!
//! Exit codes: 0 success, 2 validation error, 3 numerical-domain error,
//! 4 I/O error.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

use crate::covariance::{CovarianceMatrix, SqueezingParameter, SystemParams};
use crate::dynamics::{evolve, steady_state, Temperature};
use crate::error::Error;
use crate::experiments::{
    figure_job, run_sweep, sudden_death_time, Grid, InitialState, Measure, SweepJob, SweepTable,
};
use crate::measures::{
    asymptotic_log_negativity, asymptotic_simon, correlations, CorrelationReport, EntropyLogBase,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VALIDATION: i32 = 2;
pub const EXIT_NUMERICAL: i32 = 3;
pub const EXIT_IO: i32 = 4;

/// Every key accepted in a config file or as a flag.
pub const KEYS: [&str; 20] = [
    "state", "r", "m", "omega1", "omega2", "lambda", "T_min", "T_max", "T_points", "t_min",
    "t_max", "t_points", "log_base", "out", "t", "T", "horizon", "measures", "figure", "phys_tol",
];

const DEFAULTS: [(&str, &str); 15] = [
    ("state", "tmss"),
    ("m", "1"),
    ("omega1", "1"),
    ("omega2", "1"),
    ("lambda", "0.1"),
    ("T_min", "0"),
    ("T_max", "4"),
    ("T_points", "41"),
    ("t_min", "0"),
    ("t_max", "20"),
    ("t_points", "81"),
    ("log_base", "natural"),
    ("horizon", "200"),
    ("measures", "S,E_N,D,C,I"),
    ("phys_tol", "1e-8"),
];

#[derive(Debug, Parser)]
#[command(
    name = "twomode",
    version,
    about = "Two-mode Gaussian states in a thermal bath"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Covariance matrix and correlation report at one (t, T)
    Evolve(Keys),
    /// Correlation measures over a (t, T) grid, written as CSV
    Sweep(Keys),
    /// First zero of the logarithmic negativity
    SuddenDeath(Keys),
    /// Asymptotic Gibbs state and its correlations
    SteadyState(Keys),
    /// Write fig<N>.csv for the requested figure presets into `out`
    Figures {
        /// Figure ids (default: 1 2 3 4)
        ids: Vec<String>,
        #[command(flatten)]
        keys: Keys,
    },
}

#[derive(Debug, Args, Default)]
struct Keys {
    /// Flat `key = value` config file
    #[arg(long)]
    config: Option<PathBuf>,
    /// Initial state: sep | tmss
    #[arg(long)]
    state: Option<String>,
    /// Squeezing parameter
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    omega1: Option<String>,
    #[arg(long)]
    omega2: Option<String>,
    /// Dissipation constant
    #[arg(long)]
    lambda: Option<String>,
    #[arg(long = "T_min")]
    temp_min: Option<String>,
    #[arg(long = "T_max")]
    temp_max: Option<String>,
    #[arg(long = "T_points")]
    temp_points: Option<String>,
    #[arg(long = "t_min")]
    t_min: Option<String>,
    #[arg(long = "t_max")]
    t_max: Option<String>,
    #[arg(long = "t_points")]
    t_points: Option<String>,
    /// Entropy logarithm: natural | base2
    #[arg(long = "log_base")]
    log_base: Option<String>,
    /// Output file (sweep) or directory (figures)
    #[arg(long)]
    out: Option<String>,
    /// Time for a single evaluation
    #[arg(long)]
    t: Option<String>,
    /// Bath temperature for a single evaluation
    #[arg(long = "T")]
    temp: Option<String>,
    /// Search horizon for sudden-death
    #[arg(long)]
    horizon: Option<String>,
    /// Comma-separated subset of S,E_N,D,C,I
    #[arg(long)]
    measures: Option<String>,
    /// Figure preset 1-4 for sweep
    #[arg(long)]
    figure: Option<String>,
    /// Physicality tolerance on the smallest symplectic eigenvalue
    #[arg(long = "phys_tol")]
    phys_tol: Option<String>,
}

impl Keys {
    fn flags(&self) -> BTreeMap<&'static str, String> {
        let pairs = [
            ("state", &self.state),
            ("r", &self.r),
            ("m", &self.m),
            ("omega1", &self.omega1),
            ("omega2", &self.omega2),
            ("lambda", &self.lambda),
            ("T_min", &self.temp_min),
            ("T_max", &self.temp_max),
            ("T_points", &self.temp_points),
            ("t_min", &self.t_min),
            ("t_max", &self.t_max),
            ("t_points", &self.t_points),
            ("log_base", &self.log_base),
            ("out", &self.out),
            ("t", &self.t),
            ("T", &self.temp),
            ("horizon", &self.horizon),
            ("measures", &self.measures),
            ("figure", &self.figure),
            ("phys_tol", &self.phys_tol),
        ];
        pairs
            .into_iter()
            .filter_map(|(k, v)| v.clone().map(|v| (k, v)))
            .collect()
    }
}

/// A failure carrying its exit code.
#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub message: String,
}

impl CliError {
    pub fn validation(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_VALIDATION,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_IO,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError {
            code: if e.is_numerical() {
                EXIT_NUMERICAL
            } else {
                EXIT_VALIDATION
            },
            message: e.to_string(),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn canonical_key(key: &str) -> Option<&'static str> {
    KEYS.iter().copied().find(|k| *k == key)
}

/// Parses a flat `key = value` config. Unknown and repeated keys are errors.
pub fn parse_config(text: &str) -> CliResult<BTreeMap<&'static str, String>> {
    let mut out = BTreeMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once('=') else {
            return Err(CliError::validation(format!(
                "config line {}: expected `key = value`",
                lineno + 1
            )));
        };
        let key = key.trim();
        let canonical = canonical_key(key).ok_or_else(|| {
            CliError::validation(format!("config line {}: unknown key: {key}", lineno + 1))
        })?;
        if out.insert(canonical, value.trim().to_string()).is_some() {
            return Err(CliError::validation(format!(
                "config line {}: duplicate key: {key}",
                lineno + 1
            )));
        }
    }
    Ok(out)
}

/// Layered settings after precedence has been applied.
#[derive(Debug, Clone, PartialEq)]
pub struct Settings(BTreeMap<&'static str, String>);

impl Settings {
    /// Merges defaults, the preset implied by `figure`, the file and the flags.
    pub fn resolve(
        file: BTreeMap<&'static str, String>,
        flags: BTreeMap<&'static str, String>,
    ) -> CliResult<Self> {
        let mut map: BTreeMap<&'static str, String> =
            DEFAULTS.iter().map(|&(k, v)| (k, v.to_string())).collect();
        let figure = flags.get("figure").or_else(|| file.get("figure")).cloned();
        if let Some(fig) = figure {
            let job = figure_job(parse_figure(&fig)?)?;
            map.extend(preset_layer(&job));
        }
        map.extend(file);
        map.extend(flags);
        Ok(Settings(map))
    }

    pub fn get(&self, key: &str) -> Option<&str> {
        self.0.get(key).map(String::as_str)
    }

    fn require(&self, key: &str) -> CliResult<&str> {
        self.get(key)
            .ok_or_else(|| CliError::validation(format!("missing required key: {key}")))
    }

    fn f64_of(&self, key: &str) -> CliResult<f64> {
        let raw = self.require(key)?;
        raw.parse::<f64>().map_err(|_| {
            CliError::validation(format!(
                "invalid value for key {key}: {raw:?} (expected a number)"
            ))
        })
    }

    fn usize_of(&self, key: &str) -> CliResult<usize> {
        let raw = self.require(key)?;
        raw.parse::<usize>().map_err(|_| {
            CliError::validation(format!(
                "invalid value for key {key}: {raw:?} (expected a non-negative integer)"
            ))
        })
    }

    pub fn params(&self) -> CliResult<SystemParams> {
        Ok(SystemParams::new(
            self.f64_of("m")?,
            self.f64_of("omega1")?,
            self.f64_of("omega2")?,
            self.f64_of("lambda")?,
        )?)
    }

    pub fn initial_state(&self) -> CliResult<InitialState> {
        let r = SqueezingParameter::new(self.f64_of("r")?)?;
        match self.require("state")? {
            "sep" => Ok(InitialState::SeparableSqueezed(r)),
            "tmss" => Ok(InitialState::TwoModeSqueezed(r)),
            other => Err(CliError::validation(format!(
                "invalid value for key state: {other:?} (expected sep or tmss)"
            ))),
        }
    }

    pub fn base(&self) -> CliResult<EntropyLogBase> {
        match self.require("log_base")? {
            "natural" => Ok(EntropyLogBase::Natural),
            "base2" => Ok(EntropyLogBase::Base2),
            other => Err(CliError::validation(format!(
                "invalid value for key log_base: {other:?} (expected natural or base2)"
            ))),
        }
    }

    pub fn temperature(&self) -> CliResult<Temperature> {
        Ok(Temperature::new(self.f64_of("T")?)?)
    }

    pub fn measures(&self) -> CliResult<Vec<Measure>> {
        self.require("measures")?
            .split(',')
            .map(|m| {
                m.parse::<Measure>().map_err(|e| {
                    CliError::validation(format!("invalid value for key measures: {e}"))
                })
            })
            .collect()
    }

    fn grid(&self, name: &'static str, prefix: &str) -> CliResult<Grid> {
        let min = self.f64_of(&format!("{prefix}_min"))?;
        let max = self.f64_of(&format!("{prefix}_max"))?;
        let points = self.usize_of(&format!("{prefix}_points"))?;
        Ok(Grid::linspace(name, min, max, points)?)
    }

    pub fn sweep_job(&self) -> CliResult<SweepJob> {
        Ok(SweepJob::new(
            self.initial_state()?,
            self.params()?,
            self.grid("t", "t")?,
            self.grid("T", "T")?,
            &self.measures()?,
            self.base()?,
        )?)
    }

    fn phys_tol(&self) -> CliResult<f64> {
        let tol = self.f64_of("phys_tol")?;
        if !(tol.is_finite() && tol >= 0.0) {
            return Err(CliError::validation(format!(
                "invalid value for key phys_tol: {tol} (must be finite and non-negative)"
            )));
        }
        Ok(tol)
    }
}

fn parse_figure(raw: &str) -> CliResult<u8> {
    raw.trim().parse::<u8>().map_err(|_| {
        CliError::validation(format!(
            "unknown figure {raw}; valid figures are 1, 2, 3, 4"
        ))
    })
}

fn preset_layer(job: &SweepJob) -> Vec<(&'static str, String)> {
    let (ts, temps) = (job.t_grid.values(), job.temperature_grid.values());
    let measures: Vec<&str> = job.measures().iter().map(|m| m.column()).collect();
    vec![
        ("state", job.initial.kind().to_string()),
        ("r", job.initial.squeezing().value().to_string()),
        ("m", job.params.m().to_string()),
        ("omega1", job.params.omega1().to_string()),
        ("omega2", job.params.omega2().to_string()),
        ("lambda", job.params.lambda().to_string()),
        ("t_min", ts[0].to_string()),
        ("t_max", ts[ts.len() - 1].to_string()),
        ("t_points", ts.len().to_string()),
        ("T_min", temps[0].to_string()),
        ("T_max", temps[temps.len() - 1].to_string()),
        ("T_points", temps.len().to_string()),
        ("measures", measures.join(",")),
        ("log_base", job.base.name().to_string()),
    ]
}

/// `%.12g`: 12 significant digits, trailing zeros trimmed, `-0` printed as `0`.
pub fn format_number(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let sci = format!("{x:.11e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..12).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    trim_zeros(&format!("{x:.*}", (11 - exp) as usize)).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes a sweep table as CSV: header from the column manifest, then one
/// line per row, `\n` terminated.
pub fn write_csv(table: &SweepTable, w: &mut dyn Write) -> std::io::Result<()> {
    let mut buf = table.columns().join(",");
    buf.push('\n');
    for row in table.rows() {
        let mut fields = vec![format_number(row.t), format_number(row.temperature)];
        fields.extend(row.values.iter().map(|v| format_number(*v)));
        fields.push(format_number(row.nu_bar_minus));
        fields.push(format_number(row.nu_tilde_minus));
        fields.push(row.epsilon_branch.name().to_string());
        buf.push_str(&fields.join(","));
        buf.push('\n');
    }
    w.write_all(buf.as_bytes())
}

fn load_file(path: Option<&Path>) -> CliResult<BTreeMap<&'static str, String>> {
    match path {
        None => Ok(BTreeMap::new()),
        Some(p) => {
            let text = std::fs::read_to_string(p)
                .map_err(|e| CliError::io(format!("cannot read config {}: {e}", p.display())))?;
            parse_config(&text)
        }
    }
}

fn settings_for(keys: &Keys) -> CliResult<Settings> {
    Settings::resolve(load_file(keys.config.as_deref())?, keys.flags())
}

fn write_matrix(out: &mut String, label: &str, sigma: &CovarianceMatrix) {
    let _ = writeln!(out, "{label}:");
    for i in 0..4 {
        let row: Vec<String> = (0..4).map(|j| format_number(sigma.get(i, j))).collect();
        let _ = writeln!(out, "  {}", row.join(" "));
    }
}

fn write_report(out: &mut String, report: &CorrelationReport) {
    let lines = [
        ("S", format_number(report.simon_s)),
        ("E_N", format_number(report.log_negativity)),
        ("D", format_number(report.discord)),
        ("C", format_number(report.classical)),
        ("I", format_number(report.mutual_information)),
        ("nu_bar_minus", format_number(report.nu_bar_minus)),
        ("nu_tilde_minus", format_number(report.nu_tilde_minus)),
        ("epsilon_branch", report.epsilon_branch.name().to_string()),
        ("log_base", report.base.name().to_string()),
    ];
    for (k, v) in lines {
        let _ = writeln!(out, "{k} = {v}");
    }
}

fn write_params(out: &mut String, p: &SystemParams) {
    for (k, v) in [
        ("m", p.m()),
        ("omega1", p.omega1()),
        ("omega2", p.omega2()),
        ("lambda", p.lambda()),
    ] {
        let _ = writeln!(out, "{k} = {}", format_number(v));
    }
}

fn cmd_evolve(s: &Settings) -> CliResult<String> {
    let initial = s.initial_state()?;
    let params = s.params()?;
    let temperature = s.temperature()?;
    let t = s.f64_of("t")?;
    let base = s.base()?;
    let tol = s.phys_tol()?;
    let sigma = evolve(&initial.covariance(), &params, temperature, t)?;
    let report = correlations(&sigma, base)?;

    let mut out = String::new();
    let _ = writeln!(out, "state = {}", initial.kind());
    let _ = writeln!(out, "r = {}", format_number(initial.squeezing().value()));
    write_params(&mut out, &params);
    let _ = writeln!(out, "t = {}", format_number(t));
    let _ = writeln!(out, "T = {}", format_number(temperature.value()));
    write_matrix(&mut out, "sigma", &sigma);
    write_report(&mut out, &report);
    let _ = writeln!(out, "physical = {}", report.nu_bar_minus >= 1.0 - tol);
    Ok(out)
}

fn run_and_check(job: &SweepJob, tol: f64) -> CliResult<SweepTable> {
    let table = run_sweep(job)?;
    if let Some(row) = table.rows().iter().find(|r| r.nu_bar_minus < 1.0 - tol) {
        return Err(CliError {
            code: EXIT_NUMERICAL,
            message: format!(
                "unphysical state at t = {}, T = {}: nu_bar_minus = {}",
                row.t, row.temperature, row.nu_bar_minus
            ),
        });
    }
    Ok(table)
}

fn write_output(path: &Path, bytes: &[u8]) -> CliResult<()> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

fn cmd_sweep(s: &Settings, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let job = s.sweep_job()?;
    let tol = s.phys_tol()?;
    let start = Instant::now();
    let table = run_and_check(&job, tol)?;
    let mut buf = Vec::new();
    write_csv(&table, &mut buf).map_err(|e| CliError::io(e.to_string()))?;
    match s.get("out") {
        Some(path) => write_output(Path::new(path), &buf)?,
        None => stdout
            .write_all(&buf)
            .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))?,
    }
    let _ = writeln!(
        stderr,
        "{} rows in {:.3} s",
        table.rows().len(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}

fn cmd_sudden_death(s: &Settings) -> CliResult<String> {
    let initial = s.initial_state()?;
    let params = s.params()?;
    let temperature = s.temperature()?;
    let horizon = s.f64_of("horizon")?;
    let res = sudden_death_time(&initial.covariance(), &params, temperature, horizon)?;

    let mut out = String::new();
    match res.crossing_time {
        Some(t) => {
            let _ = writeln!(out, "t* = {}", format_number(t));
            if res.initially_separable {
                let _ = writeln!(out, "initial state is not entangled");
            }
        }
        None => {
            let _ = writeln!(out, "no crossing within horizon");
        }
    }
    let _ = writeln!(
        out,
        "bracket = [{}, {}]",
        format_number(res.bracket.0),
        format_number(res.bracket.1)
    );
    let _ = writeln!(out, "tolerance = {}", format_number(res.tolerance));
    if let Some(e) = res.log_negativity_at_crossing {
        let _ = writeln!(out, "E_N(t*) = {}", format_number(e));
    }
    Ok(out)
}

fn cmd_steady_state(s: &Settings) -> CliResult<String> {
    let params = s.params()?;
    let temperature = s.temperature()?;
    let base = s.base()?;
    let sigma = steady_state(&params, temperature);
    let report = correlations(&sigma, base)?;

    let mut out = String::new();
    write_params(&mut out, &params);
    let _ = writeln!(out, "T = {}", format_number(temperature.value()));
    write_matrix(&mut out, "sigma_inf", &sigma);
    write_report(&mut out, &report);
    let _ = writeln!(
        out,
        "S_asymptotic = {}",
        format_number(asymptotic_simon(&params, temperature))
    );
    let _ = writeln!(
        out,
        "E_N_asymptotic = {}",
        format_number(asymptotic_log_negativity(&params, temperature))
    );
    Ok(out)
}

fn cmd_figures(ids: &[String], keys: &Keys, stderr: &mut dyn Write) -> CliResult<()> {
    let figures: Vec<u8> = if ids.is_empty() {
        vec![1, 2, 3, 4]
    } else {
        ids.iter()
            .map(|id| parse_figure(id))
            .collect::<CliResult<_>>()?
    };
    for &fig in &figures {
        figure_job(fig)?;
    }
    let file = load_file(keys.config.as_deref())?;
    let flags = keys.flags();
    if file.contains_key("figure") || flags.contains_key("figure") {
        return Err(CliError::validation(
            "key figure is not accepted by `figures`; pass figure ids as arguments",
        ));
    }
    let dir = PathBuf::from(
        flags
            .get("out")
            .or(file.get("out"))
            .map_or(".", |s| s.as_str()),
    );
    std::fs::create_dir_all(&dir)
        .map_err(|e| CliError::io(format!("cannot create {}: {e}", dir.display())))?;

    for fig in figures {
        let mut file_layer = file.clone();
        file_layer.insert("figure", fig.to_string());
        file_layer.remove("measures");
        let mut flag_layer = flags.clone();
        flag_layer.remove("measures");
        let settings = Settings::resolve(file_layer, flag_layer)?;
        let start = Instant::now();
        let table = run_and_check(&settings.sweep_job()?, settings.phys_tol()?)?;
        let mut buf = Vec::new();
        write_csv(&table, &mut buf).map_err(|e| CliError::io(e.to_string()))?;
        let path = dir.join(format!("fig{fig}.csv"));
        write_output(&path, &buf)?;
        let _ = writeln!(
            stderr,
            "{}: {} rows in {:.3} s",
            path.display(),
            table.rows().len(),
            start.elapsed().as_secs_f64()
        );
    }
    Ok(())
}

fn dispatch(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CliResult<()> {
    let text = match &cli.command {
        Command::Evolve(keys) => cmd_evolve(&settings_for(keys)?)?,
        Command::Sweep(keys) => return cmd_sweep(&settings_for(keys)?, stdout, stderr),
        Command::SuddenDeath(keys) => cmd_sudden_death(&settings_for(keys)?)?,
        Command::SteadyState(keys) => cmd_steady_state(&settings_for(keys)?)?,
        Command::Figures { ids, keys } => return cmd_figures(ids, keys, stderr),
    };
    stdout
        .write_all(text.as_bytes())
        .map_err(|e| CliError::io(format!("cannot write to stdout: {e}")))
}

/// Parses `args` (including the program name) and runs the subcommand,
/// returning the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let target: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = write!(target, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli, stdout, stderr) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message);
            e.code
        }
    }
}
