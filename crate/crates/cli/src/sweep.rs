//! Parameter grids run on a worker pool into an append-only JSONL store.

use std::collections::HashMap;
use std::fs::OpenOptions;
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use artinian::{seed, Backend};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::{
    BettiParams, Command, FieldArgs, FormMode, FrobergParams, GhostParams, HilbertParams, InstanceArgs,
    LefschetzParams, PointConfig, PointsParams, Preset, SweepArgs,
};
use crate::commands::execute;
use crate::error::{CliError, CliResult};
use crate::instance::default_backend;
use crate::record::{instance_key, ExperimentRecord, VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SweepCommand {
    Hilbert,
    Froberg,
    Wlp,
    Slp,
    Mrp,
    Betti,
    Ghosts,
    Points,
}

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Grid {
    #[serde(default)]
    pub n: Vec<usize>,
    /// Generator counts; degree vectors are all nondecreasing vectors in
    /// `degree_range`. Defaults to `[n]`.
    #[serde(default)]
    pub r: Vec<usize>,
    #[serde(default)]
    pub degree_range: Option<[usize; 2]>,
    /// Explicit degree vectors, used instead of `r` and `degree_range`.
    #[serde(default)]
    pub degree_vectors: Vec<Vec<usize>>,
    #[serde(default)]
    pub monomial_ci: bool,
    #[serde(default)]
    pub preset: Option<Preset>,
    #[serde(default)]
    pub q: Vec<usize>,
    #[serde(default)]
    pub count: Vec<usize>,
    #[serde(default)]
    pub config: Option<PointConfig>,
    #[serde(default)]
    pub fdeg: Vec<usize>,
    #[serde(default)]
    pub fmode: Vec<FormMode>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    pub command: SweepCommand,
    #[serde(default)]
    pub backend: Option<Backend>,
    /// Master seed; instance seeds are derived from it.
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub seeds: usize,
    #[serde(default)]
    pub trials: Option<usize>,
    #[serde(default)]
    pub grid: Grid,
}

fn one() -> usize {
    1
}

impl SweepSpec {
    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        let parsed = if path.extension().is_some_and(|e| e == "toml") {
            toml::from_str(&text).map_err(|e| e.to_string())
        } else {
            serde_json::from_str(&text).map_err(|e| e.to_string())
        };
        parsed.map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
    }
}

fn nondecreasing(r: usize, lo: usize, hi: usize) -> Vec<Vec<usize>> {
    if r == 0 {
        return vec![vec![]];
    }
    (lo..=hi)
        .flat_map(|d| {
            nondecreasing(r - 1, d, hi).into_iter().map(move |mut rest| {
                rest.insert(0, d);
                rest
            })
        })
        .collect()
}

fn degree_vectors(grid: &Grid, n: usize) -> CliResult<Vec<Vec<usize>>> {
    if !grid.degree_vectors.is_empty() {
        return Ok(grid.degree_vectors.clone());
    }
    let Some([lo, hi]) = grid.degree_range else {
        return Err(CliError::usage("sweep grid needs degree_vectors or degree_range"));
    };
    if lo == 0 || lo > hi {
        return Err(CliError::usage("degree_range must be [lo, hi] with 1 <= lo <= hi"));
    }
    let rs = if grid.r.is_empty() { vec![n] } else { grid.r.clone() };
    Ok(rs.into_iter().flat_map(|r| nondecreasing(r, lo, hi)).collect())
}

fn field_args(backend: Backend) -> FieldArgs {
    match backend {
        Backend::Prime(p) => FieldArgs {
            prime: Some(p),
            rational: false,
        },
        Backend::Rational => FieldArgs {
            prime: None,
            rational: true,
        },
    }
}

/// Every instance of the grid, in a fixed order.
pub fn expand(spec: &SweepSpec, backend: Backend) -> CliResult<Vec<Command>> {
    let field = field_args(backend);
    let trials = spec.trials.unwrap_or(artinian::lefschetz::DEFAULT_TRIALS);
    let g = &spec.grid;
    let mut jobs = Vec::new();
    if spec.command == SweepCommand::Points {
        let modes = if g.fmode.is_empty() { vec![FormMode::General] } else { g.fmode.clone() };
        let fdegs: Vec<Option<usize>> = if g.fdeg.is_empty() { vec![None] } else { g.fdeg.iter().map(|&d| Some(d)).collect() };
        let config = g.config.unwrap_or(PointConfig::General);
        if config == PointConfig::File {
            return Err(CliError::usage("sweeps draw points as general or collinear"));
        }
        for &e in &g.count {
            for &d in &fdegs {
                for (m, &mode) in modes.iter().enumerate() {
                    for k in 0..spec.seeds {
                        let path = [seed::stream::INSTANCE, e as u64, d.unwrap_or(0) as u64, m as u64, k as u64];
                        jobs.push(Command::Points(PointsParams {
                            count: Some(e),
                            config,
                            file: None,
                            fdeg: d,
                            fmode: mode,
                            trials,
                            seed: seed::derive(spec.seed, &path),
                            field: field.clone(),
                        }));
                    }
                }
            }
        }
        return Ok(jobs);
    }
    for &n in &g.n {
        for degrees in degree_vectors(g, n)? {
            let qs: Vec<Option<usize>> = if g.q.is_empty() { vec![None] } else { g.q.iter().map(|&q| Some(q)).collect() };
            for &q in &qs {
                for k in 0..spec.seeds {
                    let mut path = vec![seed::stream::INSTANCE, n as u64, degrees.len() as u64];
                    path.extend(degrees.iter().map(|&d| d as u64));
                    path.push(q.unwrap_or(0) as u64);
                    path.push(k as u64);
                    let s = seed::derive(spec.seed, &path);
                    let instance = InstanceArgs {
                        n: Some(n),
                        degrees: degrees.clone(),
                        monomial_ci: g.monomial_ci,
                        seed: s,
                        ..Default::default()
                    };
                    let field = field.clone();
                    jobs.push(match spec.command {
                        SweepCommand::Hilbert => Command::Hilbert(HilbertParams {
                            instance,
                            tmax: None,
                            field,
                        }),
                        SweepCommand::Froberg => Command::Froberg(FrobergParams {
                            n,
                            degrees: degrees.clone(),
                            bound: None,
                            compare: true,
                            seed: s,
                            field,
                        }),
                        SweepCommand::Wlp => Command::Wlp(LefschetzParams { instance, trials, field }),
                        SweepCommand::Slp => Command::Slp(LefschetzParams { instance, trials, field }),
                        SweepCommand::Mrp => Command::Mrp(LefschetzParams { instance, trials, field }),
                        SweepCommand::Betti => Command::Betti(BettiParams {
                            instance,
                            jmax: None,
                            diagram: false,
                            field,
                        }),
                        SweepCommand::Ghosts => Command::Ghosts(GhostParams {
                            instance,
                            preset: g.preset,
                            q,
                            jmax: None,
                            field,
                        }),
                        SweepCommand::Points => unreachable!(),
                    });
                }
            }
        }
    }
    Ok(jobs)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Hilbert(_) => "hilbert",
        Command::Froberg(_) => "froberg",
        Command::Wlp(_) => "wlp",
        Command::Slp(_) => "slp",
        Command::Mrp(_) => "mrp",
        Command::Betti(_) => "betti",
        Command::Ghosts(_) => "ghosts",
        Command::Link(_) => "link",
        Command::Points(_) => "points",
        Command::Sweep(_) => "sweep",
    }
}

fn job_params(c: &Command) -> serde_json::Value {
    let v = match c {
        Command::Hilbert(p) => serde_json::to_value(p),
        Command::Froberg(p) => serde_json::to_value(p),
        Command::Wlp(p) | Command::Slp(p) | Command::Mrp(p) => serde_json::to_value(p),
        Command::Betti(p) => serde_json::to_value(p),
        Command::Ghosts(p) => serde_json::to_value(p),
        Command::Points(p) => serde_json::to_value(p),
        Command::Link(p) => serde_json::to_value(p),
        Command::Sweep(_) => unreachable!("sweeps do not nest"),
    };
    v.expect("parameters serialize")
}

fn job_seed(c: &Command) -> u64 {
    match c {
        Command::Hilbert(p) => p.instance.seed,
        Command::Froberg(p) => p.seed,
        Command::Wlp(p) | Command::Slp(p) | Command::Mrp(p) => p.instance.seed,
        Command::Betti(p) => p.instance.seed,
        Command::Ghosts(p) => p.instance.seed,
        Command::Points(p) => p.seed,
        Command::Link(_) | Command::Sweep(_) => 0,
    }
}

/// Runs one job; engine and parameter errors become part of the record.
pub fn run_job(job: &Command, backend: Backend) -> ExperimentRecord {
    let start = Instant::now();
    let outcome = execute(job, false);
    let elapsed = start.elapsed().as_secs_f64() * 1000.0;
    let params = job_params(job);
    let key = instance_key(command_name(job), backend, &params);
    let mut record = match outcome {
        Ok(r) => ExperimentRecord::from_report(&r),
        Err(e) => ExperimentRecord {
            key: None,
            command: command_name(job).to_string(),
            params: params.clone(),
            backend,
            seed: job_seed(job),
            instance: None,
            outcome: None,
            error: Some(e.to_string()),
            result: serde_json::Value::Null,
            wall_time_ms: None,
            version: VERSION.to_string(),
        },
    };
    record.key = Some(key);
    record.wall_time_ms = Some(elapsed);
    record
}

/// Keyed records of an existing store. Any unreadable line is fatal.
pub fn read_store(path: &Path) -> CliResult<(HashMap<String, ExperimentRecord>, bool)> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok((HashMap::new(), true)),
        Err(e) => return Err(CliError::io(path, e)),
    };
    let corrupt = |line: usize, reason: String| CliError::CorruptStore {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let mut records = HashMap::new();
    for (k, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let r: ExperimentRecord = serde_json::from_str(line).map_err(|e| corrupt(k + 1, e.to_string()))?;
        let key = r.key.clone().ok_or_else(|| corrupt(k + 1, "record has no key".into()))?;
        records.insert(key, r);
    }
    Ok((records, text.is_empty() || text.ends_with('\n')))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub store: String,
    pub instances: usize,
    pub new: usize,
    pub skipped: usize,
    pub errors: usize,
    pub outcome_true: usize,
    pub outcome_false: usize,
    /// Fraction of decided instances with a true outcome.
    pub rate: Option<f64>,
}

impl SweepSummary {
    pub fn text(&self) -> String {
        let mut s = format!(
            "{} instances ({} new, {} already stored), {} errors\n",
            self.instances, self.new, self.skipped, self.errors
        );
        if let Some(rate) = self.rate {
            s.push_str(&format!(
                "outcome true in {}/{} ({:.1}%)\n",
                self.outcome_true,
                self.outcome_true + self.outcome_false,
                rate * 100.0
            ));
        }
        s
    }
}

pub fn run(args: &SweepArgs) -> CliResult<SweepSummary> {
    let spec = SweepSpec::load(&args.spec)?;
    let backend = match spec.backend {
        Some(b) => b,
        None => default_backend()?,
    };
    let jobs = expand(&spec, backend)?;
    let (existing, newline_terminated) = read_store(&args.out)?;
    let keyed: Vec<(String, &Command)> = jobs
        .iter()
        .map(|j| (instance_key(command_name(j), backend, &job_params(j)), j))
        .collect();
    let pending: Vec<&(String, &Command)> = keyed.iter().filter(|(k, _)| !existing.contains_key(k)).collect();

    let mut file = OpenOptions::new()
        .create(true)
        .append(true)
        .open(&args.out)
        .map_err(|e| CliError::io(&args.out, e))?;
    if !newline_terminated {
        file.write_all(b"\n").map_err(|e| CliError::io(&args.out, e))?;
    }
    let store = Mutex::new(file);
    let fresh: Mutex<HashMap<String, ExperimentRecord>> = Mutex::new(HashMap::new());
    let work = || {
        pending.par_iter().try_for_each(|(key, job)| -> CliResult<()> {
            let record = run_job(job, backend);
            debug_assert_eq!(record.key.as_deref(), Some(key.as_str()));
            let line = serde_json::to_string(&record).expect("records serialize");
            {
                let mut f = store.lock().expect("store lock");
                writeln!(f, "{line}").and_then(|_| f.flush()).map_err(|e| CliError::io(&args.out, e))?;
            }
            fresh.lock().expect("record lock").insert(key.clone(), record);
            Ok(())
        })
    };
    match args.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t.max(1))
            .build()
            .map_err(|e| CliError::usage(e.to_string()))?
            .install(work)?,
        None => work()?,
    }
    let fresh = fresh.into_inner().expect("record lock");
    let mut summary = SweepSummary {
        store: args.out.display().to_string(),
        instances: keyed.len(),
        new: fresh.len(),
        skipped: keyed.len() - pending.len(),
        errors: 0,
        outcome_true: 0,
        outcome_false: 0,
        rate: None,
    };
    for (k, _) in &keyed {
        let r = existing.get(k).or_else(|| fresh.get(k)).expect("every instance has a record");
        summary.errors += r.error.is_some() as usize;
        match r.outcome {
            Some(true) => summary.outcome_true += 1,
            Some(false) => summary.outcome_false += 1,
            None => {}
        }
    }
    let decided = summary.outcome_true + summary.outcome_false;
    summary.rate = (decided > 0).then(|| summary.outcome_true as f64 / decided as f64);
    Ok(summary)
}
