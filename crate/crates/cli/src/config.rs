//! Line-oriented `key = value` configuration with `#` comments.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use imethod_core::exponents::Lebesgue;
use imethod_core::{AdmissiblePair, Exponent, Grid, SolverConfig};

use crate::error::LabError;

/// Where a setting came from, for error messages.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Location {
    Line(usize),
    Override(usize),
    Default,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Location::Line(n) => write!(f, "line {n}"),
            Location::Override(n) => write!(f, "override {n}"),
            Location::Default => write!(f, "defaults"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    Simulate,
    Decompose,
    Energy,
    SweepGap,
    SweepConservation,
    Smoothing,
    CheckSymbols,
    CheckGeometry,
    Strichartz,
    Exponents,
}

impl Experiment {
    pub const ALL: [Experiment; 10] = [
        Experiment::Simulate,
        Experiment::Decompose,
        Experiment::Energy,
        Experiment::SweepGap,
        Experiment::SweepConservation,
        Experiment::Smoothing,
        Experiment::CheckSymbols,
        Experiment::CheckGeometry,
        Experiment::Strichartz,
        Experiment::Exponents,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Experiment::Simulate => "simulate",
            Experiment::Decompose => "decompose",
            Experiment::Energy => "energy",
            Experiment::SweepGap => "sweep-gap",
            Experiment::SweepConservation => "sweep-conservation",
            Experiment::Smoothing => "smoothing",
            Experiment::CheckSymbols => "check-symbols",
            Experiment::CheckGeometry => "check-geometry",
            Experiment::Strichartz => "strichartz",
            Experiment::Exponents => "exponents",
        }
    }

    /// Whether the experiment integrates the equation.
    pub fn evolves(&self) -> bool {
        matches!(
            self,
            Experiment::Simulate
                | Experiment::Decompose
                | Experiment::Energy
                | Experiment::SweepConservation
                | Experiment::Smoothing
        )
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Experiment::ALL
            .into_iter()
            .find(|e| e.name() == s)
            .ok_or_else(|| {
                let names: Vec<_> = Experiment::ALL.iter().map(|e| e.name()).collect();
                format!(
                    "unknown experiment '{s}' (expected one of {})",
                    names.join(", ")
                )
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DataSpec {
    Gaussian { amplitude: f64, width: f64 },
    PlaneWave { mode: [i64; 3], amplitude: f64 },
    RandomBandlimited { cutoff: f64, amplitude: f64 },
}

impl fmt::Display for DataSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DataSpec::Gaussian { amplitude, width } => write!(f, "gaussian({amplitude}, {width})"),
            DataSpec::PlaneWave { mode, amplitude } => {
                write!(
                    f,
                    "planewave({}:{}:{}, {amplitude})",
                    mode[0], mode[1], mode[2]
                )
            }
            DataSpec::RandomBandlimited { cutoff, amplitude } => {
                write!(f, "random_bandlimited({cutoff}, {amplitude})")
            }
        }
    }
}

/// `name` or `name(a, b)`; missing arguments take defaults.
fn parse_data(s: &str) -> Result<DataSpec, String> {
    let (name, args) = match s.find('(') {
        Some(i) => {
            let inner = s[i + 1..]
                .strip_suffix(')')
                .ok_or("missing ')' in data spec")?;
            let args: Vec<&str> = inner
                .split(',')
                .map(str::trim)
                .filter(|a| !a.is_empty())
                .collect();
            (s[..i].trim(), args)
        }
        None => (s, Vec::new()),
    };
    let arg = |i: usize, default: f64| -> Result<f64, String> {
        args.get(i).map_or(Ok(default), |a| parse_real(a))
    };
    let check_len = |n: usize| {
        if args.len() > n {
            Err(format!(
                "{name} takes at most {n} arguments, got {}",
                args.len()
            ))
        } else {
            Ok(())
        }
    };
    match name {
        "gaussian" => {
            check_len(2)?;
            Ok(DataSpec::Gaussian {
                amplitude: arg(0, 1.0)?,
                width: arg(1, 1.0)?,
            })
        }
        "planewave" => {
            check_len(2)?;
            let mut mode = [0i64; 3];
            if let Some(m) = args.first() {
                let parts: Vec<&str> = m.split(':').map(str::trim).collect();
                if parts.len() > 3 {
                    return Err(format!("plane-wave mode '{m}' has more than 3 components"));
                }
                for (slot, p) in mode.iter_mut().zip(&parts) {
                    *slot = p
                        .parse()
                        .map_err(|_| format!("'{p}' is not an integer wavenumber"))?;
                }
            } else {
                mode[0] = 1;
            }
            Ok(DataSpec::PlaneWave {
                mode,
                amplitude: arg(1, 1.0)?,
            })
        }
        "random_bandlimited" => {
            check_len(2)?;
            Ok(DataSpec::RandomBandlimited {
                cutoff: arg(0, 4.0)?,
                amplitude: arg(1, 1.0)?,
            })
        }
        other => Err(format!(
            "unknown data kind '{other}' (expected gaussian, planewave or random_bandlimited)"
        )),
    }
}

/// A real number, optionally a multiple of `pi`: `0.5`, `pi`, `2pi`, `2*pi`.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let t = s.trim();
    let v = if let Some(head) = t.strip_suffix("pi") {
        let head = head.trim().trim_end_matches('*').trim();
        let c = if head.is_empty() {
            1.0
        } else {
            head.parse::<f64>()
                .map_err(|_| format!("'{s}' is not a number"))?
        };
        c * PI
    } else {
        t.parse::<f64>()
            .map_err(|_| format!("'{s}' is not a number"))?
    };
    if !v.is_finite() {
        return Err(format!("'{s}' is not finite"));
    }
    Ok(v)
}

fn parse_bool(s: &str) -> Result<bool, String> {
    match s {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(format!("'{s}' is not a boolean")),
    }
}

fn parse_list(s: &str) -> Result<Vec<f64>, String> {
    s.split(',')
        .map(str::trim)
        .filter(|x| !x.is_empty())
        .map(parse_real)
        .collect()
}

/// `q:r` pairs separated by commas, e.g. `inf:2, 4:3, 8:12/5`.
fn parse_pairs(s: &str) -> Result<Vec<AdmissiblePair>, String> {
    let mut out = Vec::new();
    for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
        let (q, r) = item
            .split_once(':')
            .ok_or_else(|| format!("pair '{item}' is not of the form q:r"))?;
        let q: Lebesgue = q.trim().parse().map_err(|e| format!("{e}"))?;
        let r: Lebesgue = r.trim().parse().map_err(|e| format!("{e}"))?;
        out.push(AdmissiblePair::new(q, r).map_err(|e| e.to_string())?);
    }
    if out.is_empty() {
        return Err("empty pair list".into());
    }
    Ok(out)
}

pub const KEYS: [&str; 18] = [
    "experiment",
    "dim",
    "modes",
    "box_length",
    "dt",
    "t_end",
    "record_stride",
    "N",
    "s",
    "theta0_exponent",
    "seed",
    "data",
    "N_list",
    "Nj_list",
    "pairs",
    "samples",
    "n_times",
    "dealias",
];

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    pub dim: usize,
    pub modes: usize,
    pub box_length: f64,
    pub dt: f64,
    pub t_end: f64,
    pub record_stride: usize,
    pub n: f64,
    pub s: f64,
    pub theta0_exponent: Exponent,
    pub seed: u64,
    pub data: DataSpec,
    pub n_list: Vec<f64>,
    pub nj_list: Vec<f64>,
    pub pairs: Vec<AdmissiblePair>,
    pub samples: usize,
    pub n_times: usize,
    pub dealias: bool,
}

impl ExperimentConfig {
    pub fn grid(&self) -> Grid {
        Grid::new(self.dim, self.modes, self.box_length).expect("validated at parse time")
    }

    pub fn solver(&self) -> SolverConfig {
        SolverConfig::new(self.grid(), self.dt, self.t_end, self.record_stride)
            .expect("validated at parse time")
            .with_dealias(self.dealias)
    }

    /// The normalized `key = value` form, one setting per line.
    pub fn echo(&self) -> String {
        let list = |v: &[f64]| {
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        let pairs: Vec<String> = self
            .pairs
            .iter()
            .map(|p| format!("{}:{}", p.q(), p.r()))
            .collect();
        let lines = [
            format!("experiment = {}", self.experiment.name()),
            format!("dim = {}", self.dim),
            format!("modes = {}", self.modes),
            format!("box_length = {}", self.box_length),
            format!("dt = {}", self.dt),
            format!("t_end = {}", self.t_end),
            format!("record_stride = {}", self.record_stride),
            format!("N = {}", self.n),
            format!("s = {}", self.s),
            format!("theta0_exponent = {}", self.theta0_exponent),
            format!("seed = {}", self.seed),
            format!("data = {}", self.data),
            format!("N_list = {}", list(&self.n_list)),
            format!("Nj_list = {}", list(&self.nj_list)),
            format!("pairs = {}", pairs.join(", ")),
            format!("samples = {}", self.samples),
            format!("n_times = {}", self.n_times),
            format!("dealias = {}", self.dealias),
        ];
        lines.join("\n") + "\n"
    }
}

/// Raw settings with their origin.
struct Settings(HashMap<&'static str, (String, Location)>);

impl Settings {
    fn get<T>(
        &self,
        key: &'static str,
        default: T,
        parse: impl Fn(&str) -> Result<T, String>,
    ) -> Result<(T, Location), LabError> {
        match self.0.get(key) {
            Some((v, loc)) => parse(v)
                .map(|x| (x, *loc))
                .map_err(|m| config_error(*loc, format!("{key}: {m}"))),
            None => Ok((default, Location::Default)),
        }
    }
}

fn config_error(location: Location, message: String) -> LabError {
    LabError::Config { location, message }
}

fn split_line(line: &str) -> Option<Result<(&str, &str), String>> {
    let body = line.split('#').next().unwrap_or("").trim();
    if body.is_empty() {
        return None;
    }
    Some(match body.split_once('=') {
        Some((k, v)) if !k.trim().is_empty() => Ok((k.trim(), v.trim())),
        _ => Err(format!("expected 'key = value', got '{body}'")),
    })
}

fn known_key(key: &str) -> Option<&'static str> {
    KEYS.iter().copied().find(|k| *k == key)
}

pub fn parse_config(text: &str) -> Result<ExperimentConfig, LabError> {
    parse_with_overrides(text, &[])
}

/// Parses `text`, then applies each `key=value` override in order.
pub fn parse_with_overrides(
    text: &str,
    overrides: &[String],
) -> Result<ExperimentConfig, LabError> {
    let mut raw: HashMap<&'static str, (String, Location)> = HashMap::new();
    let mut feed = |line: &str, loc: Location, allow_repeat: bool| -> Result<(), LabError> {
        let Some(kv) = split_line(line) else {
            return Ok(());
        };
        let (k, v) = kv.map_err(|m| config_error(loc, m))?;
        let key = known_key(k).ok_or_else(|| config_error(loc, format!("unknown key '{k}'")))?;
        if !allow_repeat {
            if let Some((_, Location::Line(prev))) = raw.get(key) {
                return Err(config_error(
                    loc,
                    format!("duplicate key '{key}' (first set on line {prev})"),
                ));
            }
        }
        raw.insert(key, (v.to_string(), loc));
        Ok(())
    };
    for (i, line) in text.lines().enumerate() {
        feed(line, Location::Line(i + 1), false)?;
    }
    for (i, line) in overrides.iter().enumerate() {
        feed(line, Location::Override(i + 1), true)?;
    }
    build(&Settings(raw))
}

fn positive(v: f64) -> Result<f64, String> {
    if v > 0.0 {
        Ok(v)
    } else {
        Err(format!("must be positive, got {v}"))
    }
}

fn build(st: &Settings) -> Result<ExperimentConfig, LabError> {
    let experiment = match st.0.get("experiment") {
        Some((v, loc)) => v.parse::<Experiment>().map_err(|m| config_error(*loc, m))?,
        None => {
            return Err(config_error(
                Location::Default,
                "missing required key 'experiment'".into(),
            ))
        }
    };
    let (dim, dim_loc) = st.get("dim", 1usize, |v| {
        v.parse().map_err(|_| format!("'{v}' is not an integer"))
    })?;
    let (modes, modes_loc) = st.get("modes", 32usize, |v| {
        v.parse().map_err(|_| format!("'{v}' is not an integer"))
    })?;
    let (box_length, box_loc) = st.get("box_length", 2.0 * PI, parse_real)?;
    let (dt, _) = st.get("dt", 1e-3, |v| parse_real(v).and_then(positive))?;
    let (t_end, t_loc) = st.get("t_end", 0.1, parse_real)?;
    let (record_stride, _) = st.get("record_stride", 10usize, |v| match v.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("'{v}' is not a positive integer")),
        Ok(n) => Ok(n),
    })?;
    let (n, _) = st.get("N", 8.0, |v| parse_real(v).and_then(positive))?;
    let (s, _) = st.get("s", 0.7, |v| {
        let s = parse_real(v)?;
        if s > 0.5 && s < 1.0 {
            Ok(s)
        } else {
            Err(format!("s must lie in (1/2, 1), got {s}"))
        }
    })?;
    let (theta0_exponent, _) = st.get("theta0_exponent", Exponent::new(-7, 8), |v| {
        let e: Exponent = v.parse().map_err(|e| format!("{e}"))?;
        if e.to_f64() < 0.0 {
            Ok(e)
        } else {
            Err(format!("theta0 = N^e needs e < 0, got {e}"))
        }
    })?;
    let (seed, _) = st.get("seed", 0u64, |v| {
        v.parse()
            .map_err(|_| format!("'{v}' is not a nonnegative integer"))
    })?;
    let (data, data_loc) = st.get(
        "data",
        DataSpec::Gaussian {
            amplitude: 1.0,
            width: 1.0,
        },
        parse_data,
    )?;
    let dyadic = |v: &str| {
        let list = parse_list(v)?;
        if list.len() < 4 {
            return Err(format!("needs at least 4 values, got {}", list.len()));
        }
        for x in &list {
            let k = x.log2();
            if !(*x > 0.0 && (k - k.round()).abs() < 1e-12) {
                return Err(format!("{x} is not dyadic"));
            }
        }
        Ok(list)
    };
    let (n_list, _) = st.get("N_list", vec![2.0, 4.0, 8.0, 16.0], dyadic)?;
    let (nj_list, nj_loc) = st.get("Nj_list", vec![2.0, 4.0, 8.0, 16.0], dyadic)?;
    let default_pairs = vec![
        AdmissiblePair::energy(),
        AdmissiblePair::default_family()[2],
    ];
    let (pairs, _) = st.get("pairs", default_pairs, parse_pairs)?;
    let (samples, _) = st.get("samples", 10_000usize, |v| match v.parse::<usize>() {
        Ok(0) | Err(_) => Err(format!("'{v}' is not a positive integer")),
        Ok(n) => Ok(n),
    })?;
    let (n_times, _) = st.get("n_times", 33usize, |v| match v.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("'{v}' is not an integer >= 2")),
    })?;
    let (dealias, _) = st.get("dealias", true, parse_bool)?;

    let grid = Grid::new(dim, modes, box_length).map_err(|e| {
        let loc = match &e {
            imethod_core::Error::InvalidGrid(m) if m.starts_with("dim") => dim_loc,
            imethod_core::Error::InvalidGrid(m) if m.starts_with("modes") => modes_loc,
            _ => box_loc,
        };
        config_error(loc, e.to_string())
    })?;
    if experiment.evolves() {
        SolverConfig::new(grid, dt, t_end, record_stride)
            .map_err(|e| config_error(t_loc, e.to_string()))?;
    }
    if experiment == Experiment::Strichartz && t_end <= 0.0 {
        return Err(config_error(
            t_loc,
            format!("strichartz needs t_end > 0, got {t_end}"),
        ));
    }
    if experiment == Experiment::Smoothing {
        if let Some(bad) = nj_list.iter().find(|&&v| v > n) {
            return Err(config_error(nj_loc, format!("N_j = {bad} exceeds N = {n}")));
        }
    }
    if let DataSpec::PlaneWave { mode, .. } = data {
        if mode.iter().skip(dim).any(|&k| k != 0) || !grid.is_retained(&mode) {
            return Err(config_error(
                data_loc,
                format!("plane-wave mode {mode:?} is not a retained wavevector of a {dim}-d grid with {modes} modes"),
            ));
        }
    }
    Ok(ExperimentConfig {
        experiment,
        dim,
        modes,
        box_length,
        dt,
        t_end,
        record_stride,
        n,
        s,
        theta0_exponent,
        seed,
        data,
        n_list,
        nj_list,
        pairs,
        samples,
        n_times,
        dealias,
    })
}
