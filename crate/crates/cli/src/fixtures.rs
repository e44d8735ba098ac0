//! Oracle fixtures: one JSON file per `(kind, key)` with a provenance block.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

/// Overrides the fixture directory given on the command line.
pub const FIXTURES_ENV: &str = "RBSD_FIXTURES";

#[derive(Debug, Error)]
pub enum FixtureError {
    #[error("fixture {0} not found")]
    Missing(String),
    #[error("cannot read {path}: {message}")]
    Unreadable { path: String, message: String },
    #[error("{path}: {message}")]
    Schema { path: String, message: String },
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Provenance {
    pub tool: String,
    pub version: String,
    pub script: String,
    pub method: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Fixture {
    pub kind: String,
    pub key: String,
    pub payload: Value,
    pub provenance: Provenance,
}

impl Fixture {
    /// Decimal payload fields must state their precision.
    fn validate(&self, path: &Path) -> Result<(), FixtureError> {
        let decimal =
            ["value", "omega_plus", "analytic_order"].iter().any(|k| self.payload.get(k).is_some_and(Value::is_string));
        if decimal && self.payload.get("precision").and_then(Value::as_u64).is_none() {
            return Err(FixtureError::Schema {
                path: path.display().to_string(),
                message: "decimal payload without precision".into(),
            });
        }
        Ok(())
    }

    pub fn u64_field(&self, name: &str) -> Option<u64> {
        self.payload.get(name).and_then(Value::as_u64)
    }

    pub fn i64_field(&self, name: &str) -> Option<i64> {
        self.payload.get(name).and_then(Value::as_i64)
    }

    pub fn str_field(&self, name: &str) -> Option<&str> {
        self.payload.get(name).and_then(Value::as_str)
    }

    pub fn bool_field(&self, name: &str) -> Option<bool> {
        self.payload.get(name).and_then(Value::as_bool)
    }

    pub fn ainvs(&self) -> Option<[i64; 5]> {
        let v: Vec<i64> = self.payload.get("ainvs")?.as_array()?.iter().map(Value::as_i64).collect::<Option<_>>()?;
        v.try_into().ok()
    }
}

#[derive(Clone, Debug)]
pub struct FixtureSet {
    root: PathBuf,
}

impl FixtureSet {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        FixtureSet { root: root.into() }
    }

    /// `RBSD_FIXTURES` if set, else `fallback`, else the fixtures bundled with the workspace.
    pub fn from_env_or(fallback: Option<&Path>) -> Option<Self> {
        match std::env::var_os(FIXTURES_ENV) {
            Some(dir) => Some(Self::new(dir)),
            None => fallback.map(Self::new).or_else(|| {
                let bundled = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
                bundled.is_dir().then(|| Self::new(bundled))
            }),
        }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn load(&self, kind: &str, key: &str) -> Result<Fixture, FixtureError> {
        let path = self.root.join(kind).join(format!("{key}.json"));
        if !path.exists() {
            return Err(FixtureError::Missing(format!("{kind}/{key}")));
        }
        read_fixture(&path)
    }

    /// Every fixture of one kind, sorted by key.
    pub fn all(&self, kind: &str) -> Result<Vec<Fixture>, FixtureError> {
        let dir = self.root.join(kind);
        let entries = std::fs::read_dir(&dir)
            .map_err(|e| FixtureError::Unreadable { path: dir.display().to_string(), message: e.to_string() })?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        paths.iter().map(|p| read_fixture(p)).collect()
    }

    /// The recorded triviality of the `p`-part of Sha over the degree-`degree`
    /// field of the given conductor.
    pub fn sha_p_part_trivial(
        &self,
        ainvs: [i64; 5],
        conductor: u64,
        degree: usize,
        p: u64,
    ) -> Option<(bool, Fixture)> {
        let all = self.all("sha").ok()?;
        all.into_iter().find_map(|fx| {
            let field = fx.payload.get("field")?;
            let matches = fx.ainvs() == Some(ainvs)
                && field.get("conductor").and_then(Value::as_u64) == Some(conductor)
                && field.get("degree").and_then(Value::as_u64) == Some(degree as u64)
                && fx.u64_field("prime") == Some(p);
            if matches {
                Some((fx.bool_field("p_part_trivial")?, fx))
            } else {
                None
            }
        })
    }
}

fn read_fixture(path: &Path) -> Result<Fixture, FixtureError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| FixtureError::Unreadable { path: path.display().to_string(), message: e.to_string() })?;
    let fixture: Fixture = serde_json::from_str(&text)
        .map_err(|e| FixtureError::Schema { path: path.display().to_string(), message: e.to_string() })?;
    fixture.validate(path)?;
    Ok(fixture)
}
