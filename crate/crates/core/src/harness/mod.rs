//! Experiment runner: each catalog entry checks one identity of the library
//! against an exact value, a closed form or an independent sampler, and
//! produces a machine-readable report.

mod catalog;
mod experiments;
pub mod stats;
pub mod svg;

pub use catalog::{ExperimentId, ParamSpec};

use crate::samplers::RngStream;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::Instant;

/// Base seed used when neither `--seed` nor `POWERGIN_SEED` is given.
pub const DEFAULT_SEED: u64 = 20_240_917;
pub const SEED_ENV: &str = "POWERGIN_SEED";

#[derive(Debug, thiserror::Error)]
pub enum HarnessError {
    #[error("unknown experiment '{0}'")]
    UnknownExperiment(String),
    #[error("experiment {experiment} has no parameter '{key}'")]
    UnknownParameter { experiment: String, key: String },
    #[error("parameter {key}: cannot parse '{value}' ({reason})")]
    Parameter { key: String, value: String, reason: String },
    #[error("config line {line}: {reason}")]
    Config { line: usize, reason: String },
    #[error("statistics: {0}")]
    Statistics(String),
    #[error("{0}")]
    Module(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

macro_rules! module_error {
    ($($t:ty),*) => {$(
        impl From<$t> for HarnessError {
            fn from(e: $t) -> Self {
                HarnessError::Module(e.to_string())
            }
        }
    )*};
}
module_error!(
    crate::numerics::NumericsError,
    crate::exact::ExactError,
    crate::samplers::SamplerError,
    crate::kernels::KernelError,
    crate::latent::LatentError
);

/// The seed from `POWERGIN_SEED`, or `DEFAULT_SEED`.
pub fn default_seed() -> Result<u64, HarnessError> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|e: std::num::ParseIntError| HarnessError::Parameter {
            key: SEED_ENV.into(),
            value: v.clone(),
            reason: e.to_string(),
        }),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

/// Where a reference value comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Computed exactly (determinants, exact integers, quadrature).
    Exact,
    /// An explicit formula.
    ClosedForm,
    /// An independent sampler.
    OracleSampler,
}

/// How the distance between statistic and reference is judged.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Criterion {
    /// `|s - r| <= tolerance`.
    Absolute,
    /// `|s - r| <= tolerance * |r|`.
    Relative,
    /// `|s - r| <= tolerance * standard_error`.
    StandardErrors,
    /// `s <= r`; `tolerance` unused.
    UpperBound,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    #[serde(with = "lenient")]
    pub statistic: f64,
    #[serde(with = "lenient")]
    pub reference: f64,
    pub provenance: Provenance,
    pub criterion: Criterion,
    #[serde(with = "lenient")]
    pub tolerance: f64,
    #[serde(with = "lenient::option", default)]
    pub standard_error: Option<f64>,
    /// Allowed minus observed deviation; negative on failure.
    #[serde(with = "lenient")]
    pub margin: f64,
    pub pass: bool,
}

impl Check {
    fn build(name: &str, statistic: f64, reference: f64, provenance: Provenance, criterion: Criterion, tolerance: f64, se: Option<f64>) -> Self {
        let mut c = Check {
            name: name.to_string(),
            statistic,
            reference,
            provenance,
            criterion,
            tolerance,
            standard_error: se,
            margin: 0.0,
            pass: false,
        };
        c.margin = c.compute_margin();
        c.pass = c.margin >= 0.0;
        c
    }

    pub fn absolute(name: &str, statistic: f64, reference: f64, provenance: Provenance, tolerance: f64) -> Self {
        Self::build(name, statistic, reference, provenance, Criterion::Absolute, tolerance, None)
    }

    pub fn relative(name: &str, statistic: f64, reference: f64, provenance: Provenance, tolerance: f64) -> Self {
        Self::build(name, statistic, reference, provenance, Criterion::Relative, tolerance, None)
    }

    pub fn within_se(name: &str, statistic: f64, reference: f64, provenance: Provenance, se: f64, z: f64) -> Self {
        Self::build(name, statistic, reference, provenance, Criterion::StandardErrors, z, Some(se))
    }

    pub fn at_most(name: &str, statistic: f64, bound: f64, provenance: Provenance) -> Self {
        Self::build(name, statistic, bound, provenance, Criterion::UpperBound, 0.0, None)
    }

    /// A yes/no property, recorded as `1` against reference `1`.
    pub fn holds(name: &str, ok: bool, provenance: Provenance) -> Self {
        Self::absolute(name, if ok { 1.0 } else { 0.0 }, 1.0, provenance, 0.0)
    }

    pub fn compute_margin(&self) -> f64 {
        let (s, r) = (self.statistic, self.reference);
        let m = match self.criterion {
            Criterion::Absolute => self.tolerance - (s - r).abs(),
            Criterion::Relative => self.tolerance * r.abs() - (s - r).abs(),
            Criterion::StandardErrors => self.tolerance * self.standard_error.unwrap_or(f64::NAN) - (s - r).abs(),
            Criterion::UpperBound => r - s,
        };
        if m.is_nan() {
            f64::NEG_INFINITY
        } else {
            m
        }
    }

    /// Margin divided by the allowed deviation, for ranking checks.
    fn normalized_margin(&self) -> f64 {
        let allowed = match self.criterion {
            Criterion::Absolute => self.tolerance,
            Criterion::Relative => self.tolerance * self.reference.abs(),
            Criterion::StandardErrors => self.tolerance * self.standard_error.unwrap_or(0.0),
            Criterion::UpperBound => self.reference.abs(),
        };
        if allowed > 0.0 {
            self.margin / allowed
        } else if self.margin >= 0.0 {
            // an exact yes/no check that holds says nothing about closeness
            f64::INFINITY
        } else {
            self.margin
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TestReport {
    pub experiment: String,
    pub pass: bool,
    /// Statistic, reference and margins of the tightest check.
    #[serde(with = "lenient")]
    pub statistic: f64,
    #[serde(with = "lenient")]
    pub reference: f64,
    pub provenance: Provenance,
    #[serde(with = "lenient::option", default)]
    pub standard_error: Option<f64>,
    #[serde(with = "lenient")]
    pub tolerance: f64,
    #[serde(with = "lenient")]
    pub margin: f64,
    pub runtime_seconds: f64,
    pub seed: u64,
    pub params: BTreeMap<String, String>,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
    pub plots: Vec<String>,
    pub error: Option<String>,
}

impl TestReport {
    fn assemble(id: ExperimentId, seed: u64, params: BTreeMap<String, String>, outcome: &Outcome, runtime: f64) -> Self {
        let worst = outcome
            .checks
            .iter()
            .min_by(|a, b| (a.pass, a.normalized_margin()).partial_cmp(&(b.pass, b.normalized_margin())).unwrap_or(std::cmp::Ordering::Equal));
        let pass = !outcome.checks.is_empty() && outcome.checks.iter().all(|c| c.pass);
        let (statistic, reference, provenance, standard_error, tolerance, margin) = match worst {
            Some(c) => (c.statistic, c.reference, c.provenance, c.standard_error, c.tolerance, c.margin),
            None => (f64::NAN, f64::NAN, Provenance::Exact, None, 0.0, f64::NEG_INFINITY),
        };
        TestReport {
            experiment: id.as_str().to_string(),
            pass,
            statistic,
            reference,
            provenance,
            standard_error,
            tolerance,
            margin,
            runtime_seconds: runtime,
            seed,
            params,
            checks: outcome.checks.clone(),
            notes: outcome.notes.clone(),
            plots: outcome.plots.iter().map(|p| p.name.clone()).collect(),
            error: None,
        }
    }

    fn failed(id: ExperimentId, seed: u64, params: BTreeMap<String, String>, error: String, runtime: f64) -> Self {
        TestReport {
            experiment: id.as_str().to_string(),
            pass: false,
            statistic: f64::NAN,
            reference: f64::NAN,
            provenance: Provenance::Exact,
            standard_error: None,
            tolerance: 0.0,
            margin: f64::NEG_INFINITY,
            runtime_seconds: runtime,
            seed,
            params,
            checks: Vec::new(),
            notes: Vec::new(),
            plots: Vec::new(),
            error: Some(error),
        }
    }

    /// The verdict recomputed from the stored checks.
    pub fn verdict(&self) -> bool {
        self.error.is_none() && !self.checks.is_empty() && self.checks.iter().all(|c| c.compute_margin() >= 0.0)
    }

    pub fn to_json(&self) -> Result<String, HarnessError> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self, HarnessError> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// The report with the runtime zeroed, for determinism comparisons.
    pub fn without_runtime(&self) -> Self {
        TestReport { runtime_seconds: 0.0, ..self.clone() }
    }
}

// serde_json writes NaN and infinities as null; store them as strings.
mod lenient {
    use serde::{Deserialize, Deserializer, Serializer};

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Text(String),
    }

    fn decode<E: serde::de::Error>(r: Repr) -> Result<f64, E> {
        match r {
            Repr::Num(x) => Ok(x),
            Repr::Text(t) => match t.as_str() {
                "NaN" => Ok(f64::NAN),
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                _ => Err(E::custom(format!("not a number: {t}"))),
            },
        }
    }

    fn put<S: Serializer>(x: f64, s: S) -> Result<S::Ok, S::Error> {
        if x.is_finite() {
            s.serialize_f64(x)
        } else if x.is_nan() {
            s.serialize_str("NaN")
        } else if x > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_str("-inf")
        }
    }

    pub fn serialize<S: Serializer>(x: &f64, s: S) -> Result<S::Ok, S::Error> {
        put(*x, s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        decode(Repr::deserialize(d)?)
    }

    pub mod option {
        use super::*;

        pub fn serialize<S: Serializer>(x: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
            match x {
                Some(v) => put(*v, s),
                None => s.serialize_none(),
            }
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
            Option::<Repr>::deserialize(d)?.map(decode).transpose()
        }
    }
}

/// One per-sample record of `data.csv`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub experiment: String,
    pub replicate: usize,
    pub statistic: String,
    pub value: f64,
}

#[derive(Clone, Debug)]
pub struct Plot {
    pub name: String,
    pub svg: String,
}

/// Everything an experiment produces besides timing.
#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub checks: Vec<Check>,
    pub records: Vec<Record>,
    pub plots: Vec<Plot>,
    pub notes: Vec<String>,
}

/// A validated experiment request.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub id: ExperimentId,
    pub params: BTreeMap<String, String>,
    pub seed: u64,
    pub out_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    /// Rejects parameters the experiment does not declare.
    pub fn new(id: ExperimentId, params: BTreeMap<String, String>, seed: u64) -> Result<Self, HarnessError> {
        let known = id.params();
        for key in params.keys() {
            if !known.iter().any(|p| p.key == key) {
                return Err(HarnessError::UnknownParameter { experiment: id.as_str().into(), key: key.clone() });
            }
        }
        Ok(ExperimentSpec { id, params, seed, out_dir: None })
    }

    pub fn with_out_dir(mut self, dir: impl Into<PathBuf>) -> Self {
        self.out_dir = Some(dir.into());
        self
    }

    /// Declared defaults overlaid with the given values.
    pub fn resolved_params(&self) -> BTreeMap<String, String> {
        let mut out: BTreeMap<String, String> = self.id.params().iter().map(|p| (p.key.to_string(), p.default.to_string())).collect();
        for (k, v) in &self.params {
            out.insert(k.clone(), v.clone());
        }
        out
    }
}

/// Typed access to resolved parameters.
pub struct Params<'a> {
    map: &'a BTreeMap<String, String>,
}

impl<'a> Params<'a> {
    pub fn new(map: &'a BTreeMap<String, String>) -> Self {
        Params { map }
    }

    fn raw(&self, key: &str) -> Result<&str, HarnessError> {
        self.map
            .get(key)
            .map(|s| s.as_str())
            .ok_or_else(|| HarnessError::Parameter { key: key.into(), value: String::new(), reason: "missing".into() })
    }

    fn parse<T: std::str::FromStr>(&self, key: &str) -> Result<T, HarnessError>
    where
        T::Err: std::fmt::Display,
    {
        let v = self.raw(key)?;
        v.trim().parse().map_err(|e: T::Err| HarnessError::Parameter { key: key.into(), value: v.into(), reason: e.to_string() })
    }

    pub fn usize(&self, key: &str) -> Result<usize, HarnessError> {
        self.parse(key)
    }

    pub fn f64(&self, key: &str) -> Result<f64, HarnessError> {
        self.parse(key)
    }

    pub fn usize_list(&self, key: &str) -> Result<Vec<usize>, HarnessError> {
        let v = self.raw(key)?;
        v.split(',')
            .map(|s| s.trim().parse().map_err(|e: std::num::ParseIntError| HarnessError::Parameter { key: key.into(), value: v.into(), reason: e.to_string() }))
            .collect()
    }
}

/// Runs one experiment. Module errors become a failed report; outputs are
/// written when `out_dir` is set.
pub fn run(spec: &ExperimentSpec) -> TestReport {
    let (report, outcome) = execute(spec);
    if let Some(dir) = &spec.out_dir {
        if let Err(e) = write_outputs(dir, &report, &outcome) {
            let mut r = report.clone();
            r.pass = false;
            r.error = Some(format!("writing outputs: {e}"));
            return r;
        }
    }
    report
}

fn execute(spec: &ExperimentSpec) -> (TestReport, Outcome) {
    let params = spec.resolved_params();
    let start = Instant::now();
    let rng = RngStream::new(spec.seed).split(spec.id.stream_key());
    let result = experiments::dispatch(spec.id, &Params::new(&params), rng);
    let runtime = start.elapsed().as_secs_f64();
    match result {
        Ok(outcome) => (TestReport::assemble(spec.id, spec.seed, params, &outcome, runtime), outcome),
        Err(e) => (TestReport::failed(spec.id, spec.seed, params, e.to_string(), runtime), Outcome::default()),
    }
}

/// Writes `report.json`, `data.csv` and the plots into `dir`.
pub fn write_outputs(dir: &Path, report: &TestReport, outcome: &Outcome) -> Result<(), HarnessError> {
    std::fs::create_dir_all(dir)?;
    std::fs::write(dir.join("report.json"), report.to_json()? + "\n")?;
    let mut w = csv::Writer::from_path(dir.join("data.csv"))?;
    // header even when there are no records
    if outcome.records.is_empty() {
        w.write_record(["experiment", "replicate", "statistic", "value"])?;
    }
    for r in &outcome.records {
        w.serialize(r)?;
    }
    w.flush()?;
    for p in &outcome.plots {
        std::fs::write(dir.join(&p.name), &p.svg)?;
    }
    Ok(())
}

/// Reads back a `data.csv`.
pub fn read_records(path: &Path) -> Result<Vec<Record>, HarnessError> {
    let mut r = csv::Reader::from_path(path)?;
    Ok(r.deserialize().collect::<Result<Vec<Record>, _>>()?)
}

/// Settings for `run_all`.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub out: Option<PathBuf>,
    /// Restrict to these experiment ids; they run in catalog order.
    #[serde(default)]
    pub only: Option<Vec<String>>,
    #[serde(default)]
    pub workers: Option<usize>,
    #[serde(default)]
    pub params: BTreeMap<String, BTreeMap<String, String>>,
}

impl RunConfig {
    /// JSON when the text starts with `{`, otherwise flat `key=value` lines:
    /// `seed`, `out`, `only` (comma separated), `workers` and
    /// `<experiment>.<param>`. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self, HarnessError> {
        let trimmed = text.trim_start();
        let cfg = if trimmed.starts_with('{') {
            serde_json::from_str(trimmed).map_err(|e| HarnessError::Config { line: e.line(), reason: e.to_string() })?
        } else {
            let mut cfg = RunConfig::default();
            for (i, line) in text.lines().enumerate() {
                let line = line.split('#').next().unwrap_or("").trim();
                if line.is_empty() {
                    continue;
                }
                let err = |reason: String| HarnessError::Config { line: i + 1, reason };
                let (k, v) = line.split_once('=').ok_or_else(|| err(format!("expected key=value, got '{line}'")))?;
                let (k, v) = (k.trim(), v.trim());
                match k {
                    "seed" => cfg.seed = Some(v.parse().map_err(|e| err(format!("seed: {e}")))?),
                    "out" => cfg.out = Some(PathBuf::from(v)),
                    "workers" => cfg.workers = Some(v.parse().map_err(|e| err(format!("workers: {e}")))?),
                    "only" => cfg.only = Some(v.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()),
                    _ => {
                        let (exp, key) = k.split_once('.').ok_or_else(|| err(format!("unknown key '{k}'")))?;
                        cfg.params.entry(exp.to_string()).or_default().insert(key.to_string(), v.to_string());
                    }
                }
            }
            cfg
        };
        cfg.validate()?;
        Ok(cfg)
    }

    fn validate(&self) -> Result<(), HarnessError> {
        for id in self.only.iter().flatten() {
            ExperimentId::parse(id)?;
        }
        for (exp, params) in &self.params {
            let id = ExperimentId::parse(exp)?;
            ExperimentSpec::new(id, params.clone(), 0)?;
        }
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, HarnessError> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    fn selected(&self) -> Result<Vec<ExperimentId>, HarnessError> {
        match &self.only {
            Some(list) => {
                let ids = list.iter().map(|s| ExperimentId::parse(s)).collect::<Result<Vec<_>, _>>()?;
                Ok(ExperimentId::ALL.iter().copied().filter(|id| ids.contains(id)).collect())
            }
            None => Ok(ExperimentId::ALL.to_vec()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: bool,
    pub passed: usize,
    pub failed: usize,
    pub reports: Vec<TestReport>,
}

impl Summary {
    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }
}

/// Runs the selected catalog entries on a worker pool. Each experiment has
/// its own RNG stream, so results do not depend on scheduling.
pub fn run_all(config: &RunConfig) -> Result<Summary, HarnessError> {
    config.validate()?;
    let seed = match config.seed {
        Some(s) => s,
        None => default_seed()?,
    };
    let ids = config.selected()?;
    let mut specs = Vec::with_capacity(ids.len());
    for id in ids {
        let params = config.params.get(id.as_str()).cloned().unwrap_or_default();
        let mut spec = ExperimentSpec::new(id, params, seed)?;
        if let Some(out) = &config.out {
            spec = spec.with_out_dir(out.join(id.as_str()));
        }
        specs.push(spec);
    }
    let workers = config.workers.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)).max(1);
    let next = Mutex::new(0usize);
    let results: Mutex<Vec<Option<TestReport>>> = Mutex::new(vec![None; specs.len()]);
    std::thread::scope(|s| {
        for _ in 0..workers.min(specs.len().max(1)) {
            s.spawn(|| loop {
                let i = {
                    let mut n = next.lock().unwrap();
                    let i = *n;
                    *n += 1;
                    i
                };
                if i >= specs.len() {
                    break;
                }
                let r = run(&specs[i]);
                results.lock().unwrap()[i] = Some(r);
            });
        }
    });
    let reports: Vec<TestReport> = results.into_inner().unwrap().into_iter().flatten().collect();
    let passed = reports.iter().filter(|r| r.pass).count();
    let summary = Summary { pass: passed == reports.len(), passed, failed: reports.len() - passed, reports };
    if let Some(out) = &config.out {
        std::fs::create_dir_all(out)?;
        let lines: Vec<serde_json::Value> = summary
            .reports
            .iter()
            .map(|r| serde_json::json!({"experiment": r.experiment, "pass": r.pass, "runtime_seconds": r.runtime_seconds}))
            .collect();
        let v = serde_json::json!({"pass": summary.pass, "passed": summary.passed, "failed": summary.failed, "experiments": lines});
        std::fs::write(out.join("summary.json"), serde_json::to_string_pretty(&v)? + "\n")?;
    }
    Ok(summary)
}

/// Runs `count` replicates, each with its own substream of `rng`, on the
/// available cores. Output order follows the replicate index.
pub fn replicates<T: Send>(
    count: usize,
    rng: &RngStream,
    f: impl Fn(usize, &mut RngStream) -> Result<T, HarnessError> + Sync,
) -> Result<Vec<T>, HarnessError> {
    let workers = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1).min(count.max(1));
    if workers <= 1 {
        return (0..count).map(|i| f(i, &mut rng.split(i as u64))).collect();
    }
    let next = Mutex::new(0usize);
    let slots: Mutex<Vec<Option<Result<T, HarnessError>>>> = Mutex::new((0..count).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = {
                    let mut n = next.lock().unwrap();
                    let i = *n;
                    *n += 1;
                    i
                };
                if i >= count {
                    break;
                }
                let r = f(i, &mut rng.split(i as u64));
                slots.lock().unwrap()[i] = Some(r);
            });
        }
    });
    slots.into_inner().unwrap().into_iter().map(|r| r.expect("replicate not run")).collect()
}
