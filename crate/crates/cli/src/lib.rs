//! Config ingestion, report emission and batch driver for the `darmon` tool.
//!
//! Configs and reports are JSON documents carrying a `schema_version`. All
//! polynomial coefficient lists are ascending-degree.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use darmon_core::feasibility::{report_from_profile, RealClass};
use darmon_core::field::IdealFactor;
use darmon_core::oracle::{enumerate_admissible_with, OracleOptions};
use darmon_core::par::{self, Execution};
use darmon_core::{
    build_profile, ConductorProfile, ConstructionKind, Distinguished, ExtensionError,
    FeasibilityError, FeasibilityReport, FieldError, IdealFactorization, IdealInput,
    NumberField, OracleError, PlaceType, PrimeIdeal, QuadraticExtension, QuaternionAlgebraSpec,
    SelectorOptions, ZPoly,
};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub mod trace;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_FEASIBLE: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_INFEASIBLE: i32 = 2;

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

fn default_precision() -> u32 {
    darmon_core::field::DEFAULT_PRECISION_BITS
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunOptions {
    #[serde(default)]
    pub allow_drop_b4: bool,
    #[serde(default)]
    pub oracle_check: bool,
    #[serde(default = "default_precision")]
    pub precision_bits: u32,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { allow_drop_b4: false, oracle_check: false, precision_bits: default_precision() }
    }
}

/// An ideal of `F`, either by principal generator or in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IdealSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub factors: Option<Vec<IdealFactor>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputConfig {
    #[serde(default = "schema_version")]
    pub schema_version: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub field_poly: Vec<i64>,
    pub delta: Vec<i64>,
    pub conductor: IdealSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order_conductor: Option<IdealSpec>,
    #[serde(default)]
    pub options: RunOptions,
}

/// Command-line switches that override per-config options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub oracle_check: bool,
    pub allow_drop_b4: bool,
    pub precision_bits: Option<u32>,
}

impl Overrides {
    pub fn apply(&self, opts: &RunOptions) -> RunOptions {
        RunOptions {
            allow_drop_b4: opts.allow_drop_b4 || self.allow_drop_b4,
            oracle_check: opts.oracle_check || self.oracle_check,
            precision_bits: self.precision_bits.unwrap_or(opts.precision_bits),
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("malformed config: {0}")]
    Config(String),
    #[error("unsupported schema_version {0} (expected {SCHEMA_VERSION})")]
    Schema(u32),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Feasibility(#[from] FeasibilityError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("OracleMismatch: selectors produced {selected} specs, oracle produced {oracle}")]
    OracleMismatch { selected: usize, oracle: usize },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    /// Short machine-readable name of the error.
    pub fn kind(&self) -> String {
        match self {
            CliError::Config(_) | CliError::Schema(_) => "MalformedConfig".into(),
            CliError::Field(e) => variant_name(e),
            CliError::Extension(ExtensionError::Field(e)) => variant_name(e),
            CliError::Extension(e) => variant_name(e),
            CliError::Feasibility(FeasibilityError::Extension(e)) => variant_name(e),
            CliError::Feasibility(e) => variant_name(e),
            CliError::Oracle(e) => variant_name(e),
            CliError::OracleMismatch { .. } => "OracleMismatch".into(),
            CliError::Io { .. } => "Io".into(),
        }
    }
}

fn variant_name<T: std::fmt::Debug>(e: &T) -> String {
    let s = format!("{e:?}");
    s.split(|c: char| !c.is_alphanumeric()).next().unwrap_or_default().to_string()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCheck {
    pub agrees: bool,
    pub oracle_specs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Feasible,
    Infeasible,
}

/// Machine-readable output of one run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub id: Option<String>,
    pub verdict: Verdict,
    pub report: FeasibilityReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheck>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> Result<Self, CliError> {
        serde_json::from_str(s).map_err(|e| CliError::Config(e.to_string()))
    }
}

pub fn parse_config(text: &str) -> Result<InputConfig, CliError> {
    let config: InputConfig =
        serde_json::from_str(text).map_err(|e| CliError::Config(e.to_string()))?;
    validate_config(&config)?;
    Ok(config)
}

fn validate_config(config: &InputConfig) -> Result<(), CliError> {
    if config.schema_version != SCHEMA_VERSION {
        return Err(CliError::Schema(config.schema_version));
    }
    let check = |name: &str, spec: &IdealSpec| match (&spec.generator, &spec.factors) {
        (Some(_), Some(_)) | (None, None) => Err(CliError::Config(format!(
            "{name}: exactly one of `generator` and `factors` is required"
        ))),
        _ => Ok(()),
    };
    check("conductor", &config.conductor)?;
    if let Some(oc) = &config.order_conductor {
        check("order_conductor", oc)?;
    }
    Ok(())
}

fn ideal_input(spec: &IdealSpec) -> IdealInput {
    match (&spec.generator, &spec.factors) {
        (Some(g), _) => IdealInput::Generator(ZPoly::from_i64(g)),
        (None, Some(fs)) => IdealInput::Factored(
            fs.iter()
                .map(|x| {
                    let q = PrimeIdeal { p: x.p, local_factor: x.local_factor.clone(), e: x.e, f: x.f };
                    (q, x.exponent)
                })
                .collect(),
        ),
        (None, None) => IdealInput::Factored(Vec::new()),
    }
}

/// Everything a single run produces.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub document: Option<ReportDocument>,
    pub trace: String,
    pub error: Option<CliError>,
}

struct Evaluated {
    report: FeasibilityReport,
    oracle: Option<OracleCheck>,
}

fn evaluate(config: &InputConfig, opts: &RunOptions) -> Result<Evaluated, CliError> {
    let field = NumberField::parse_with(&config.field_poly, opts.precision_bits)?;
    let k = QuadraticExtension::new(field.clone(), &config.delta)?;
    let n = field.factor_ideal(&ideal_input(&config.conductor))?;
    let order = match &config.order_conductor {
        Some(spec) => Some(field.factor_ideal(&ideal_input(spec))?),
        None => None,
    };
    let profile = build_profile(&k, &n)?;
    let selector_opts = SelectorOptions { allow_drop_b4: opts.allow_drop_b4 };
    let oracle = if opts.oracle_check {
        Some(enumerate_admissible_with(
            &profile,
            OracleOptions { relax_b4: opts.allow_drop_b4, ..Default::default() },
        )?)
    } else {
        None
    };
    let report = report_from_profile(profile, order.as_ref(), selector_opts);
    let oracle = match oracle {
        None => None,
        Some(found) => {
            let mut selected: Vec<QuaternionAlgebraSpec> = report.all_options().cloned().collect();
            selected.sort();
            if selected != found {
                return Err(CliError::OracleMismatch { selected: selected.len(), oracle: found.len() });
            }
            Some(OracleCheck { agrees: true, oracle_specs: found.len() })
        }
    };
    Ok(Evaluated { report, oracle })
}

/// Runs one config. Exit code 0 when some construction applies, 2 when none
/// does, 1 on any input or validation error.
pub fn run_single(config: &InputConfig, overrides: Overrides) -> RunOutcome {
    if let Err(e) = validate_config(config) {
        return failed(e);
    }
    let opts = overrides.apply(&config.options);
    match evaluate(config, &opts) {
        Err(e) => failed(e),
        Ok(Evaluated { report, oracle }) => {
            let verdict = if report.is_feasible() { Verdict::Feasible } else { Verdict::Infeasible };
            let trace = trace::render(&report, oracle.as_ref());
            let exit_code = match verdict {
                Verdict::Feasible => EXIT_FEASIBLE,
                Verdict::Infeasible => EXIT_INFEASIBLE,
            };
            RunOutcome {
                exit_code,
                document: Some(ReportDocument {
                    schema_version: SCHEMA_VERSION,
                    id: config.id.clone(),
                    verdict,
                    report,
                    oracle,
                }),
                trace,
                error: None,
            }
        }
    }
}

fn failed(e: CliError) -> RunOutcome {
    RunOutcome {
        exit_code: EXIT_ERROR,
        document: None,
        trace: format!("error [{}]: {e}\n", e.kind()),
        error: Some(e),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub id: String,
    pub sign: Option<i8>,
    pub gartner: usize,
    pub greenberg: usize,
    /// `feasible`, `infeasible` or `ERROR`.
    pub verdict: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub schema_version: u32,
    pub rows: Vec<SummaryRow>,
}

impl BatchSummary {
    pub fn exit_code(&self) -> i32 {
        if self.rows.iter().any(|r| r.verdict == "ERROR") {
            EXIT_ERROR
        } else {
            EXIT_FEASIBLE
        }
    }

    /// Fixed-width table for terminals.
    pub fn table(&self) -> String {
        let w = self.rows.iter().map(|r| r.id.chars().count()).max().unwrap_or(0).max(2);
        let mut s = format!("{:<w$} {:>5} {:>8} {:>10}  verdict\n", "id", "sign", "gartner", "greenberg");
        for r in &self.rows {
            let sign = r.sign.map_or("-".to_string(), |x| format!("{x:+}"));
            let _ = writeln!(s, "{:<w$} {:>5} {:>8} {:>10}  {}", r.id, sign, r.gartner, r.greenberg, r.verdict);
        }
        s
    }
}

/// Runs every record of a corpus (a JSON array of configs), writing one
/// report per record and `summary.json` into `out_dir`.
pub fn run_batch(corpus_path: &Path, out_dir: &Path, overrides: Overrides) -> Result<BatchSummary, CliError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| CliError::Io { path, source }
    };
    let text = fs::read_to_string(corpus_path).map_err(io(corpus_path))?;
    let summary = run_batch_str(&text, overrides, |id, doc| {
        let path = out_dir.join(format!("{id}.json"));
        fs::create_dir_all(out_dir).map_err(io(out_dir))?;
        fs::write(&path, doc.to_json()).map_err(io(&path))
    })?;
    fs::create_dir_all(out_dir).map_err(io(out_dir))?;
    let path = out_dir.join("summary.json");
    let body = serde_json::to_string_pretty(&summary).expect("summary serializes");
    fs::write(&path, body).map_err(io(&path))?;
    Ok(summary)
}

/// Batch core without filesystem access; `sink` receives each report.
pub fn run_batch_str(
    corpus: &str,
    overrides: Overrides,
    mut sink: impl FnMut(&str, &ReportDocument) -> Result<(), CliError>,
) -> Result<BatchSummary, CliError> {
    let records: Vec<serde_json::Value> = if corpus.trim().is_empty() {
        Vec::new()
    } else {
        serde_json::from_str(corpus).map_err(|e| CliError::Config(format!("corpus: {e}")))?
    };
    let exec = Execution::default();
    let indexed: Vec<(usize, serde_json::Value)> = records.into_iter().enumerate().collect();
    let results = par::map(exec, &indexed, |(i, value)| {
        let fallback = format!("record-{i:04}");
        match serde_json::from_value::<InputConfig>(value.clone()) {
            Err(e) => {
                let id = value.get("id").and_then(|v| v.as_str()).map_or(fallback, str::to_string);
                (id, failed(CliError::Config(e.to_string())))
            }
            Ok(config) => (config.id.clone().unwrap_or(fallback), run_single(&config, overrides)),
        }
    });
    let mut rows = Vec::with_capacity(results.len());
    for (id, outcome) in &results {
        let row = match (&outcome.document, &outcome.error) {
            (Some(doc), _) => {
                sink(id, doc)?;
                SummaryRow {
                    id: id.clone(),
                    sign: Some(doc.report.sign),
                    gartner: doc.report.gartner_options.len(),
                    greenberg: doc.report.greenberg_options.len(),
                    verdict: match doc.verdict {
                        Verdict::Feasible => "feasible".into(),
                        Verdict::Infeasible => "infeasible".into(),
                    },
                    error: None,
                }
            }
            (None, err) => SummaryRow {
                id: id.clone(),
                sign: None,
                gartner: 0,
                greenberg: 0,
                verdict: "ERROR".into(),
                error: err.as_ref().map(|e| format!("{}: {e}", e.kind())),
            },
        };
        rows.push(row);
    }
    rows.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(BatchSummary { schema_version: SCHEMA_VERSION, rows })
}

pub(crate) fn place_label(classes: &[RealClass], index: usize) -> String {
    let approx = classes
        .iter()
        .find(|c| c.place.index == index)
        .map(|c| format!(" (θ ≈ {:.6})", c.place.approx()))
        .unwrap_or_default();
    format!("τ{index}{approx}")
}

pub(crate) fn distinguished_label(profile: &ConductorProfile, d: &Distinguished) -> String {
    match d {
        Distinguished::RealPlace(i) => place_label(&profile.real_classes, *i),
        Distinguished::Prime(q) => format!("𝔭 = {q}"),
    }
}

pub(crate) fn type_name(t: PlaceType) -> &'static str {
    match t {
        PlaceType::Split => "split",
        PlaceType::Inert => "inert",
        PlaceType::Ramified => "ramified",
    }
}

pub(crate) fn kind_label(k: ConstructionKind) -> &'static str {
    match k {
        ConstructionKind::Gartner => "Gartner",
        ConstructionKind::Greenberg => "Greenberg",
    }
}

pub(crate) fn ideal_label(n: &IdealFactorization) -> String {
    n.to_string()
}
