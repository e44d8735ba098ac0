//! Serializable job descriptions and input validation.

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use rbsd::arith::nt::{gcd, modulo};
use rbsd::elliptic::CurveQ;
use rbsd::theta::FieldSpec;
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum JobKind {
    Gauss,
    Theta,
    Distribution,
    Interpolate,
    Hypotheses,
    Rank0,
    Resolvent,
    Equivariance,
}

impl JobKind {
    pub fn name(self) -> &'static str {
        match self {
            JobKind::Gauss => "gauss",
            JobKind::Theta => "theta",
            JobKind::Distribution => "distribution",
            JobKind::Interpolate => "interpolate",
            JobKind::Hypotheses => "hypotheses",
            JobKind::Rank0 => "rank0",
            JobKind::Resolvent => "resolvent",
            JobKind::Equivariance => "equivariance",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub ainvs: [i64; 5],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldRecord {
    pub conductor: u64,
    #[serde(default)]
    pub subgroup_generators: Vec<u64>,
}

/// Everything a run depends on; a report echoes it verbatim.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: JobKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub curve: Option<CurveRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldRecord>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    pub precision: u32,
    pub tolerance: f64,
    pub seed: u64,
    pub embedding: usize,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub places: Vec<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fixtures: Option<PathBuf>,
}

impl JobSpec {
    pub fn new(command: JobKind) -> Self {
        JobSpec {
            command,
            curve: None,
            field: None,
            p: None,
            precision: 10,
            tolerance: 1e-8,
            seed: 0,
            embedding: 0,
            places: Vec::new(),
            sha_trivial: None,
            fixtures: None,
        }
    }
}

/// Curves and an optional field read from a line-delimited file.
#[derive(Clone, Debug)]
pub struct Inputs {
    pub curves: Vec<(CurveRecord, CurveQ)>,
    pub field: Option<(FieldRecord, FieldSpec)>,
}

/// Reads records `{label?, ainvs}` and at most one `{conductor, subgroup_generators}`.
pub fn load_inputs(path: &Path) -> Result<Inputs, CliError> {
    let text =
        std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })?;
    let mut curves = Vec::new();
    let mut field = None;
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| CliError::Parse { line: i + 1, message };
        let value: Value = serde_json::from_str(line).map_err(|e| parse_err(e.to_string()))?;
        if value.get("ainvs").is_some() {
            let record: CurveRecord = serde_json::from_value(value).map_err(|e| parse_err(e.to_string()))?;
            let curve = validate_curve(&record)?;
            curves.push((record, curve));
        } else if value.get("conductor").is_some() {
            if field.is_some() {
                return Err(parse_err("more than one field record".into()));
            }
            let record: FieldRecord = serde_json::from_value(value).map_err(|e| parse_err(e.to_string()))?;
            let spec = validate_field(&record)?;
            field = Some((record, spec));
        } else {
            return Err(parse_err("record has neither ainvs nor conductor".into()));
        }
    }
    Ok(Inputs { curves, field })
}

/// The minimal model of a nonsingular curve.
pub fn validate_curve(record: &CurveRecord) -> Result<CurveQ, CliError> {
    let curve = match &record.label {
        Some(label) => CurveQ::with_label(label, record.ainvs),
        None => CurveQ::new(record.ainvs),
    }
    .map_err(|e| CliError::InvalidCurve(e.to_string()))?;
    Ok(curve.minimal_model())
}

/// A real field: the generators must be units and generate a subgroup holding `-1`.
/// No generators means `Q(zeta_c)^+`.
pub fn validate_field(record: &FieldRecord) -> Result<FieldSpec, CliError> {
    let c = record.conductor;
    if record.subgroup_generators.is_empty() {
        return FieldSpec::real_cyclotomic(c).map_err(|e| CliError::InvalidFieldSpec(e.to_string()));
    }
    for &h in &record.subgroup_generators {
        if gcd(h, c) != 1 {
            return Err(CliError::InvalidFieldSpec(format!("{h} is not a unit mod {c}")));
        }
    }
    if c > 2 && !generated_subgroup(c, &record.subgroup_generators).contains(&(c - 1)) {
        return Err(CliError::InvalidFieldSpec(format!(
            "-1 is not in the subgroup generated by {:?} mod {c}",
            record.subgroup_generators
        )));
    }
    FieldSpec::new(c, &record.subgroup_generators).map_err(|e| CliError::InvalidFieldSpec(e.to_string()))
}

fn generated_subgroup(c: u64, gens: &[u64]) -> Vec<u64> {
    let mut elements = vec![1 % c];
    let mut frontier = elements.clone();
    while let Some(x) = frontier.pop() {
        for &g in gens {
            let y = modulo((x as i64) * (g as i64), c);
            if !elements.contains(&y) {
                elements.push(y);
                frontier.push(y);
            }
        }
    }
    elements
}
