//! Reproducible experiment runner: JSON config in, CSV/JSON artifacts and a
//! plain-text verdict block out.
//!
//! Every CSV starts with two `#` lines. The first carries the config hash and
//! seed; the second is the generation timestamp and is the only line that
//! differs between reruns of the same config.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::architecture::{architecture_findings, BlockArchitecture};
use crate::dimension::{dimension_curve, growth_report, DimensionCurve, GrowthReport};
use crate::error::{Error, Result};
use crate::exact::{gate_set_findings, GateRecord, GateSet};
use crate::walk::{
    exact_return_probability, generator_findings, kingman_estimate, return_probability,
    CliffordTBackend, GroupBackend, KEstimate, LatticeBackend, PermutationBackend, WalkRecord,
    RETURN_CSV_HEADER, WALK_CSV_HEADER,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_UNSTABLE: i32 = 3;
pub const EXIT_CENSORED: i32 = 4;

/// Prefix of the timestamp line excluded from golden comparisons.
pub const TIMESTAMP_PREFIX: &str = "# generated_unix=";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    DimensionCurve,
    GrowthReport,
    WalkComplexity,
    ReturnProb,
}

impl ExperimentKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ExperimentKind::DimensionCurve => "dimension-curve",
            ExperimentKind::GrowthReport => "growth-report",
            ExperimentKind::WalkComplexity => "walk-complexity",
            ExperimentKind::ReturnProb => "return-prob",
        }
    }

    fn is_dimension(self) -> bool {
        matches!(
            self,
            ExperimentKind::DimensionCurve | ExperimentKind::GrowthReport
        )
    }
}

/// Architecture given inline or as a path relative to the config file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ArchitectureSource {
    Path(String),
    Inline(ArchitectureSpec),
}

/// Unvalidated architecture document.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArchitectureSpec {
    pub n: usize,
    pub name: String,
    pub slots: Vec<[usize; 2]>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackendName {
    CliffordT,
    Lattice,
    Permutation,
}

fn default_samples() -> usize {
    crate::dimension::DEFAULT_SAMPLES
}
fn default_trials() -> usize {
    50
}
fn default_rel_tol() -> f64 {
    crate::linalg::DEFAULT_REL_TOL
}
fn default_radius_cap() -> usize {
    6
}
fn default_memory_cap() -> usize {
    5_000_000
}
fn default_exact_max_elements() -> usize {
    10_000
}
fn default_true() -> bool {
    true
}
fn default_shortcut_c() -> f64 {
    1.0
}
fn default_lattice_dim() -> usize {
    1
}
fn default_permutation_degree() -> usize {
    3
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<ExperimentKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub architecture: Option<ArchitectureSource>,
    /// Existing curve CSV for `growth-report`; computed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub backend: Option<BackendName>,
    #[serde(default = "default_lattice_dim")]
    pub lattice_dim: usize,
    #[serde(default = "default_permutation_degree")]
    pub permutation_degree: usize,
    /// Image lists; adjacent transpositions when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub permutation_generators: Option<Vec<Vec<usize>>>,
    /// Gate-set file; `{H, S, Sdg, T, Tdg}` when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gate_set: Option<String>,
    /// Count Clifford+T complexity up to global phase.
    #[serde(default = "default_true")]
    pub projective: bool,
    /// Step distribution of the walk; only `uniform` is implemented.
    #[serde(default = "default_measure")]
    pub measure: String,
    #[serde(default)]
    pub k_max: usize,
    #[serde(default)]
    pub k_list: Vec<usize>,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_trials")]
    pub trials: usize,
    #[serde(default = "default_rel_tol")]
    pub rel_tol: f64,
    #[serde(default = "default_radius_cap")]
    pub radius_cap: usize,
    #[serde(default = "default_memory_cap")]
    pub memory_cap: usize,
    /// Largest ball enumerated for exact return probabilities.
    #[serde(default = "default_exact_max_elements")]
    pub exact_max_elements: usize,
    #[serde(default = "default_shortcut_c")]
    pub shortcut_c: f64,
    /// Censored fraction above which the run exits with code 4.
    #[serde(default)]
    pub max_censored_fraction: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
}

fn default_measure() -> String {
    "uniform".into()
}

impl ExperimentConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Config(format!("cannot parse config: {e}")))
    }
}

/// A config plus the directory its relative paths resolve against.
#[derive(Debug, Clone)]
pub struct LoadedConfig {
    pub config: ExperimentConfig,
    pub base_dir: PathBuf,
}

impl LoadedConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read config {}: {e}", path.display())))?;
        Ok(Self {
            config: ExperimentConfig::from_json_str(&text)?,
            base_dir: path.parent().map(Path::to_path_buf).unwrap_or_default(),
        })
    }

    pub fn inline(config: ExperimentConfig, base_dir: impl Into<PathBuf>) -> Self {
        Self {
            config,
            base_dir: base_dir.into(),
        }
    }

    fn resolve(&self, p: &str) -> PathBuf {
        let path = Path::new(p);
        if path.is_absolute() {
            path.to_path_buf()
        } else {
            self.base_dir.join(path)
        }
    }

    fn architecture_spec(&self) -> std::result::Result<ArchitectureSpec, String> {
        match &self.config.architecture {
            None => Err("architecture is required for dimension experiments".into()),
            Some(ArchitectureSource::Inline(spec)) => Ok(spec.clone()),
            Some(ArchitectureSource::Path(p)) => {
                let path = self.resolve(p);
                let text = fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read architecture {}: {e}", path.display()))?;
                serde_json::from_str(&text)
                    .map_err(|e| format!("cannot parse architecture {}: {e}", path.display()))
            }
        }
    }

    fn architecture(&self) -> Result<BlockArchitecture> {
        let spec = self.architecture_spec().map_err(Error::Config)?;
        BlockArchitecture::new(
            spec.n,
            spec.name,
            spec.slots.into_iter().map(|[a, b]| (a, b)).collect(),
        )
    }

    fn gate_set(&self) -> Result<GateSet> {
        match &self.config.gate_set {
            None => Ok(crate::exact::clifford_t_gateset()),
            Some(p) => GateSet::load(&self.resolve(p)),
        }
    }

    /// Config hash over the resolved inputs; `out` is excluded.
    pub fn config_hash(&self) -> String {
        let mut canonical = self.config.clone();
        canonical.out = None;
        if let Ok(spec) = self.architecture_spec() {
            canonical.architecture = Some(ArchitectureSource::Inline(spec));
        }
        let mut hasher = Sha256::new();
        hasher.update(serde_json::to_vec(&canonical).expect("config serializes"));
        if let Some(p) = &self.config.gate_set {
            hasher.update(fs::read(self.resolve(p)).unwrap_or_default());
        }
        if let Some(p) = &self.config.curve {
            hasher.update(fs::read(self.resolve(p)).unwrap_or_default());
        }
        hex::encode(hasher.finalize())
    }
}

/// Problems with a config for the given experiment kind; empty means it
/// can run. Reads referenced files but writes nothing.
pub fn validate(loaded: &LoadedConfig, kind: ExperimentKind) -> Vec<String> {
    let c = &loaded.config;
    let mut out = Vec::new();
    if let Some(k) = c.kind {
        if k != kind {
            out.push(format!(
                "config kind {} does not match subcommand {}",
                k.as_str(),
                kind.as_str()
            ));
        }
    }
    if kind.is_dimension() {
        match loaded.architecture_spec() {
            Err(e) => out.push(e),
            Ok(spec) => {
                let slots: Vec<(usize, usize)> = spec.slots.iter().map(|&[a, b]| (a, b)).collect();
                out.extend(architecture_findings(spec.n, &slots));
                if spec.n > 6 {
                    out.push(format!(
                        "n = {} is beyond the supported size (max 6)",
                        spec.n
                    ));
                }
            }
        }
        if c.k_max == 0 && c.curve.is_none() {
            out.push("k_max must be >= 1".into());
        }
        if c.samples == 0 {
            out.push("samples must be >= 1".into());
        }
        if !(c.rel_tol > 0.0 && c.rel_tol < 0.1) {
            out.push(format!("rel_tol must lie in (0, 0.1), got {}", c.rel_tol));
        }
        if !(c.shortcut_c >= 0.0 && c.shortcut_c.is_finite()) {
            out.push(format!("shortcut_c must be >= 0, got {}", c.shortcut_c));
        }
        if let Some(p) = &c.curve {
            if kind != ExperimentKind::GrowthReport {
                out.push("curve input is only used by growth-report".into());
            }
            if !loaded.resolve(p).is_file() {
                out.push(format!(
                    "curve file {} does not exist",
                    loaded.resolve(p).display()
                ));
            }
        }
    } else {
        if c.k_list.is_empty() {
            out.push("k_list must be nonempty".into());
        }
        if kind == ExperimentKind::ReturnProb && c.k_list.contains(&0) {
            out.push("return-prob needs k >= 1 (walk length 2k)".into());
        }
        if c.trials == 0 {
            out.push("trials must be >= 1".into());
        }
        if c.measure != "uniform" {
            out.push(format!("unsupported step measure '{}'", c.measure));
        }
        if !(0.0..=1.0).contains(&c.max_censored_fraction) {
            out.push("max_censored_fraction must lie in [0, 1]".into());
        }
        if kind == ExperimentKind::WalkComplexity && c.radius_cap == 0 {
            out.push("radius_cap must be >= 1".into());
        }
        match backend_findings(loaded) {
            Err(f) => out.extend(f),
            Ok(radius_one) => {
                if kind == ExperimentKind::WalkComplexity && c.memory_cap < radius_one {
                    out.push(format!(
                        "memory_cap {} is smaller than the radius-1 ball ({radius_one} elements)",
                        c.memory_cap
                    ));
                }
            }
        }
    }
    out
}

/// Checks the backend description; returns `|B(1)|` when valid.
fn backend_findings(loaded: &LoadedConfig) -> std::result::Result<usize, Vec<String>> {
    let c = &loaded.config;
    let Some(name) = c.backend else {
        return Err(vec!["backend is required for walk experiments".into()]);
    };
    match name {
        BackendName::Lattice => {
            if c.lattice_dim == 0 {
                return Err(vec!["lattice_dim must be >= 1".into()]);
            }
            Ok(2 * c.lattice_dim + 1)
        }
        BackendName::Permutation => {
            let result = match &c.permutation_generators {
                None => PermutationBackend::adjacent_transpositions(c.permutation_degree),
                Some(g) => PermutationBackend::new(c.permutation_degree, g.clone()),
            };
            match result {
                Ok(b) => Ok(b.generators().len() + 1),
                Err(e) => Err(vec![e.to_string()]),
            }
        }
        BackendName::CliffordT => {
            let Some(p) = &c.gate_set else {
                return Ok(6);
            };
            let path = loaded.resolve(p);
            let records: Vec<GateRecord> = match fs::read_to_string(&path)
                .map_err(|e| e.to_string())
                .and_then(|t| serde_json::from_str(&t).map_err(|e| e.to_string()))
            {
                Ok(r) => r,
                Err(e) => {
                    return Err(vec![format!(
                        "cannot load gate set {}: {e}",
                        path.display()
                    )])
                }
            };
            let findings = gate_set_findings(&records);
            if !findings.is_empty() {
                return Err(findings);
            }
            let set =
                GateSet::from_records("gate_set", &records).map_err(|e| vec![e.to_string()])?;
            match CliffordTBackend::from_gate_set(&set, c.projective) {
                Ok(b) => {
                    let f = generator_findings(&b);
                    if f.is_empty() {
                        Ok(b.generators().len() + 1)
                    } else {
                        Err(f)
                    }
                }
                Err(e) => Err(vec![e.to_string()]),
            }
        }
    }
}

/// One PASS/FAIL line of the verdict block.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub pass: bool,
}

impl Verdict {
    fn new(name: &str, pass: bool) -> Self {
        Self {
            name: name.into(),
            pass,
        }
    }
}

/// What a run produced.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub files: Vec<PathBuf>,
    pub verdicts: Vec<Verdict>,
    pub config_hash: String,
}

fn csv_preamble(kind: ExperimentKind, hash: &str, seed: u64) -> String {
    let now = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!(
        "# circuit-growth {} config_hash={hash} seed={seed}\n{TIMESTAMP_PREFIX}{now}\n",
        kind.as_str()
    )
}

/// Drops the timestamp line, for golden comparisons.
pub fn strip_timestamp(csv: &str) -> String {
    csv.lines()
        .filter(|l| !l.starts_with(TIMESTAMP_PREFIX))
        .map(|l| format!("{l}\n"))
        .collect()
}

struct Writer<'a> {
    dir: &'a Path,
    files: Vec<PathBuf>,
}

impl Writer<'_> {
    fn write(&mut self, name: &str, body: &str) -> Result<()> {
        let path = self.dir.join(name);
        fs::write(&path, body)?;
        self.files.push(path);
        Ok(())
    }
}

fn verdict_block(kind: ExperimentKind, hash: &str, seed: u64, verdicts: &[Verdict]) -> String {
    let mut out = format!(
        "circuit-growth {} config_hash={hash} seed={seed}\n",
        kind.as_str()
    );
    for v in verdicts {
        writeln!(out, "{} {}", if v.pass { "PASS" } else { "FAIL" }, v.name).unwrap();
    }
    out
}

#[derive(Serialize)]
struct Summary<'a, T: Serialize> {
    kind: &'static str,
    config_hash: &'a str,
    seed: u64,
    config: &'a ExperimentConfig,
    #[serde(flatten)]
    body: T,
    verdicts: &'a [Verdict],
}

/// Runs one experiment, writing artifacts into `out_dir`.
///
/// With `threads` set, work runs on a dedicated pool of that size; results
/// do not depend on it.
pub fn run(
    loaded: &LoadedConfig,
    kind: ExperimentKind,
    out_dir: &Path,
    threads: Option<usize>,
) -> Result<RunOutcome> {
    let findings = validate(loaded, kind);
    if !findings.is_empty() {
        return Err(Error::Config(findings.join("; ")));
    }
    crate::exec::with_threads(threads, || run_validated(loaded, kind, out_dir))
}

fn run_validated(
    loaded: &LoadedConfig,
    kind: ExperimentKind,
    out_dir: &Path,
) -> Result<RunOutcome> {
    fs::create_dir_all(out_dir)?;
    let hash = loaded.config_hash();
    let seed = loaded.config.seed;
    let mut w = Writer {
        dir: out_dir,
        files: Vec::new(),
    };
    let (verdicts, exit_code) = match kind {
        ExperimentKind::DimensionCurve | ExperimentKind::GrowthReport => {
            run_dimension(loaded, kind, &hash, &mut w)?
        }
        ExperimentKind::WalkComplexity => run_walk(loaded, &hash, &mut w)?,
        ExperimentKind::ReturnProb => run_return(loaded, &hash, &mut w)?,
    };
    w.write("verdict.txt", &verdict_block(kind, &hash, seed, &verdicts))?;
    Ok(RunOutcome {
        exit_code,
        files: w.files,
        verdicts,
        config_hash: hash,
    })
}

fn run_dimension(
    loaded: &LoadedConfig,
    kind: ExperimentKind,
    hash: &str,
    w: &mut Writer<'_>,
) -> Result<(Vec<Verdict>, i32)> {
    let c = &loaded.config;
    let arch = Arc::new(loaded.architecture()?);
    let curve = match (&c.curve, kind) {
        (Some(p), ExperimentKind::GrowthReport) => {
            DimensionCurve::from_csv((*arch).clone(), &fs::read_to_string(loaded.resolve(p))?)?
        }
        _ => dimension_curve(&arch, c.k_max, c.samples, c.rel_tol, c.seed)?,
    };
    let report: GrowthReport = growth_report(&curve, c.shortcut_c)?;
    let mut verdicts = vec![
        Verdict::new("eq2_pass", report.eq2_pass),
        Verdict::new("monotone_pass", report.monotone_pass),
        Verdict::new("subadditive_pass", report.subadditive_pass),
        Verdict::new("tol_stable", report.tol_stable),
    ];
    if kind == ExperimentKind::GrowthReport {
        verdicts.push(Verdict::new(
            "strict_growth_pass",
            report.strict_growth_pass,
        ));
        verdicts.push(Verdict::new(
            "c2_fit_positive",
            report.c2_fit.is_some_and(|c2| c2 > 0.0),
        ));
    }
    w.write(
        "curve.csv",
        &format!("{}{}", csv_preamble(kind, hash, c.seed), curve.to_csv()),
    )?;
    let json_name = if kind == ExperimentKind::GrowthReport {
        "growth_report.json"
    } else {
        "summary.json"
    };
    let summary = Summary {
        kind: kind.as_str(),
        config_hash: hash,
        seed: c.seed,
        config: c,
        body: &report,
        verdicts: &verdicts,
    };
    w.write(json_name, &(serde_json::to_string_pretty(&summary)? + "\n"))?;
    let exit = if report.tol_stable {
        EXIT_OK
    } else {
        EXIT_UNSTABLE
    };
    Ok((verdicts, exit))
}

#[derive(Serialize)]
struct WalkBody<'a> {
    backend: &'a str,
    radius_cap: usize,
    ball_radius: usize,
    ball_size: usize,
    censored_count: usize,
    entries: &'a [KEstimate],
}

fn walk_outputs<B: GroupBackend>(
    backend: &B,
    loaded: &LoadedConfig,
    hash: &str,
    w: &mut Writer<'_>,
) -> Result<(Vec<Verdict>, i32)> {
    let c = &loaded.config;
    let (est, records) = kingman_estimate(
        backend,
        &c.k_list,
        c.trials,
        c.radius_cap,
        c.memory_cap,
        c.seed,
    )?;
    let mut csv = csv_preamble(ExperimentKind::WalkComplexity, hash, c.seed);
    csv.push_str(WALK_CSV_HEADER);
    csv.push('\n');
    for r in &records {
        csv.push_str(&r.csv_row());
        csv.push('\n');
    }
    w.write("walk.csv", &csv)?;

    let bounded = records
        .iter()
        .all(|r: &WalkRecord| r.complexity.value().is_none_or(|v| v as usize <= r.k));
    let identity_ok = records.iter().all(|r| match r.complexity.value() {
        Some(0) => r.element_key == hex::encode(backend.key(&backend.identity())),
        Some(_) => r.element_key != hex::encode(backend.key(&backend.identity())),
        None => true,
    });
    let censored = est.total_censored();
    let fraction = censored as f64 / est.total_trials() as f64;
    let censor_ok = fraction <= c.max_censored_fraction;
    let verdicts = vec![
        Verdict::new("complexity_le_k", bounded),
        Verdict::new("zero_iff_identity", identity_ok),
        Verdict::new("censoring_within_threshold", censor_ok),
    ];
    let summary = Summary {
        kind: ExperimentKind::WalkComplexity.as_str(),
        config_hash: hash,
        seed: c.seed,
        config: c,
        body: WalkBody {
            backend: &est.backend,
            radius_cap: est.radius_cap,
            ball_radius: est.ball_radius,
            ball_size: est.ball_size,
            censored_count: censored,
            entries: &est.entries,
        },
        verdicts: &verdicts,
    };
    w.write(
        "summary.json",
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )?;
    Ok((verdicts, if censor_ok { EXIT_OK } else { EXIT_CENSORED }))
}

#[derive(Serialize)]
struct ReturnEntry {
    k: usize,
    two_k: usize,
    trials: usize,
    returns: usize,
    probability: f64,
    rho_estimate: f64,
    upper_bound: bool,
    exact_probability: Option<f64>,
    exact_rho: Option<f64>,
}

#[derive(Serialize)]
struct ReturnBody<'a> {
    backend: &'a str,
    entries: Vec<ReturnEntry>,
}

fn return_outputs<B: GroupBackend>(
    backend: &B,
    loaded: &LoadedConfig,
    hash: &str,
    w: &mut Writer<'_>,
) -> Result<(Vec<Verdict>, i32)> {
    let c = &loaded.config;
    let id = backend.id();
    let est = return_probability(backend, &c.k_list, c.trials, c.seed)?;
    let mut csv = csv_preamble(ExperimentKind::ReturnProb, hash, c.seed);
    csv.push_str(RETURN_CSV_HEADER);
    csv.push('\n');
    for e in &est {
        csv.push_str(&e.csv_row(&id, c.seed));
        csv.push('\n');
    }
    w.write("return_prob.csv", &csv)?;
    let entries: Vec<ReturnEntry> = est
        .iter()
        .map(|e| {
            let exact = exact_return_probability(backend, e.k, c.exact_max_elements).ok();
            ReturnEntry {
                k: e.k,
                two_k: e.two_k,
                trials: e.trials,
                returns: e.returns,
                probability: e.probability,
                rho_estimate: e.rho_estimate,
                upper_bound: e.upper_bound,
                exact_probability: exact,
                exact_rho: exact.map(|p| p.powf(1.0 / e.two_k as f64)),
            }
        })
        .collect();
    let verdicts = vec![Verdict::new(
        "rho_in_unit_interval",
        est.iter()
            .all(|e| e.rho_estimate > 0.0 && e.rho_estimate <= 1.0),
    )];
    let summary = Summary {
        kind: ExperimentKind::ReturnProb.as_str(),
        config_hash: hash,
        seed: c.seed,
        config: c,
        body: ReturnBody {
            backend: &id,
            entries,
        },
        verdicts: &verdicts,
    };
    w.write(
        "summary.json",
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )?;
    Ok((verdicts, EXIT_OK))
}

fn with_backend<T>(
    loaded: &LoadedConfig,
    lattice: impl FnOnce(&LatticeBackend) -> Result<T>,
    perm: impl FnOnce(&PermutationBackend) -> Result<T>,
    clifford: impl FnOnce(&CliffordTBackend) -> Result<T>,
) -> Result<T> {
    let c = &loaded.config;
    match c
        .backend
        .ok_or_else(|| Error::Config("backend is required".into()))?
    {
        BackendName::Lattice => lattice(&LatticeBackend::new(c.lattice_dim)?),
        BackendName::Permutation => {
            let b = match &c.permutation_generators {
                None => PermutationBackend::adjacent_transpositions(c.permutation_degree)?,
                Some(g) => PermutationBackend::new(c.permutation_degree, g.clone())?,
            };
            perm(&b)
        }
        BackendName::CliffordT => clifford(&CliffordTBackend::from_gate_set(
            &loaded.gate_set()?,
            c.projective,
        )?),
    }
}

fn run_walk(loaded: &LoadedConfig, hash: &str, w: &mut Writer<'_>) -> Result<(Vec<Verdict>, i32)> {
    // each closure needs the writer; they are mutually exclusive
    let w = std::cell::RefCell::new(w);
    with_backend(
        loaded,
        |b| walk_outputs(b, loaded, hash, &mut w.borrow_mut()),
        |b| walk_outputs(b, loaded, hash, &mut w.borrow_mut()),
        |b| walk_outputs(b, loaded, hash, &mut w.borrow_mut()),
    )
}

fn run_return(
    loaded: &LoadedConfig,
    hash: &str,
    w: &mut Writer<'_>,
) -> Result<(Vec<Verdict>, i32)> {
    let w = std::cell::RefCell::new(w);
    with_backend(
        loaded,
        |b| return_outputs(b, loaded, hash, &mut w.borrow_mut()),
        |b| return_outputs(b, loaded, hash, &mut w.borrow_mut()),
        |b| return_outputs(b, loaded, hash, &mut w.borrow_mut()),
    )
}

/// Machine-readable error document for config failures.
pub fn error_json(message: &str, findings: &[String]) -> String {
    serde_json::json!({ "error": message, "findings": findings }).to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(text: &str) -> LoadedConfig {
        LoadedConfig::inline(ExperimentConfig::from_json_str(text).unwrap(), ".")
    }

    #[test]
    fn valid_config_has_no_findings() {
        let c = cfg(r#"{"architecture": {"n": 2, "name": "s", "slots": [[0,1]]}, "k_max": 2}"#);
        assert!(validate(&c, ExperimentKind::DimensionCurve).is_empty());
        let w = cfg(r#"{"backend": "lattice", "lattice_dim": 2, "k_list": [4], "trials": 1}"#);
        assert!(validate(&w, ExperimentKind::WalkComplexity).is_empty());
    }

    #[test]
    fn bad_slot_is_reported() {
        let c = cfg(r#"{"architecture": {"n": 3, "name": "bad", "slots": [[0,0]]}, "k_max": 2}"#);
        let f = validate(&c, ExperimentKind::DimensionCurve);
        assert!(
            f.iter().any(|x| x.contains("slot indices must differ")),
            "{f:?}"
        );
    }

    #[test]
    fn kind_mismatch_and_missing_fields() {
        let c = cfg(r#"{"kind": "return-prob", "backend": "lattice", "k_list": [1]}"#);
        assert!(validate(&c, ExperimentKind::WalkComplexity)
            .iter()
            .any(|x| x.contains("does not match")));
        let c = cfg(r#"{"backend": "lattice"}"#);
        assert!(!validate(&c, ExperimentKind::WalkComplexity).is_empty());
        let c = cfg(r#"{"k_max": 3}"#);
        assert!(!validate(&c, ExperimentKind::DimensionCurve).is_empty());
        assert!(ExperimentConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn memory_cap_sanity() {
        let c = cfg(r#"{"backend": "clifford_t", "k_list": [4], "memory_cap": 3}"#);
        assert!(validate(&c, ExperimentKind::WalkComplexity)
            .iter()
            .any(|x| x.contains("radius-1 ball")));
    }

    #[test]
    fn hash_ignores_out_dir() {
        let a = cfg(r#"{"backend": "lattice", "k_list": [4], "out": "x"}"#);
        let b = cfg(r#"{"backend": "lattice", "k_list": [4], "out": "y"}"#);
        let c = cfg(r#"{"backend": "lattice", "k_list": [4], "seed": 1}"#);
        assert_eq!(a.config_hash(), b.config_hash());
        assert_ne!(a.config_hash(), c.config_hash());
    }

    #[test]
    fn strip_timestamp_keeps_other_lines() {
        let s = "# a\n# generated_unix=5\nk,d\n1,2\n";
        assert_eq!(strip_timestamp(s), "# a\nk,d\n1,2\n");
    }
}
