use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::time::Instant;

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use lg_core::engine::{evaluate_invariant, EngineError, EvaluationBudget};
use lg_core::{Invariant, KnotName, KnotRecord, LaurentPoly2, RepresentationData, SymmetryClass};

use crate::fingerprint::{fingerprint, InvariantFingerprint};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorKind {
    Input,
    Budget,
    Assertion,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordError {
    pub kind: ErrorKind,
    pub message: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnotResult {
    pub name: KnotName,
    pub strands: usize,
    pub braid: String,
    #[serde(default)]
    pub symmetry: SymmetryClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value: Option<LaurentPoly2>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<RecordError>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultsFile {
    pub schema_version: u32,
    pub engine_version: String,
    pub invariant: Invariant,
    pub representation_digest: String,
    pub results: Vec<KnotResult>,
}

#[derive(Debug, Error)]
pub enum ResultsError {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid results file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("results schema version {0} is not supported (expected {SCHEMA_VERSION})")]
    Schema(u32),
}

impl ResultsFile {
    pub fn read(path: &Path) -> Result<Self, ResultsError> {
        let f: ResultsFile = serde_json::from_str(&std::fs::read_to_string(path)?)?;
        if f.schema_version != SCHEMA_VERSION {
            return Err(ResultsError::Schema(f.schema_version));
        }
        Ok(f)
    }

    pub fn write(&self, path: &Path) -> Result<(), ResultsError> {
        std::fs::write(path, serde_json::to_string_pretty(self)? + "\n")?;
        Ok(())
    }

    /// Fingerprints of the successfully evaluated knots.
    pub fn fingerprints(&self) -> Vec<InvariantFingerprint> {
        self.results.iter().filter_map(|r| Some(fingerprint(r.name.clone(), r.value.as_ref()?))).collect()
    }

    pub fn worst_error(&self) -> Option<ErrorKind> {
        let kinds = self.results.iter().filter_map(|r| r.error.as_ref().map(|e| e.kind));
        kinds.max_by_key(|k| match k {
            ErrorKind::Input => 0,
            ErrorKind::Budget => 1,
            ErrorKind::Assertion => 2,
        })
    }
}

/// SHA-256 of the serialized representation data.
pub fn representation_digest(rep: &RepresentationData) -> String {
    hex::encode(Sha256::digest(rep.to_json().as_bytes()))
}

/// A result entry for a row that could not be parsed.
pub fn input_error(name: &str, message: String) -> KnotResult {
    KnotResult {
        name: name.parse().unwrap(),
        strands: 0,
        braid: String::new(),
        symmetry: SymmetryClass::Unknown,
        value: None,
        error: Some(RecordError { kind: ErrorKind::Input, message }),
    }
}

fn evaluate_record(r: &KnotRecord, rep: &RepresentationData, budget: &EvaluationBudget) -> KnotResult {
    let started = Instant::now();
    let outcome = catch_unwind(AssertUnwindSafe(|| evaluate_invariant(&r.braid, rep, budget)));
    let (value, error) = match outcome {
        Ok(Ok(v)) => (Some(v), None),
        Ok(Err(e)) => {
            let kind = match e {
                EngineError::BudgetExceeded(_) => ErrorKind::Budget,
                _ => ErrorKind::Assertion,
            };
            (None, Some(RecordError { kind, message: e.to_string() }))
        }
        Err(p) => {
            let message = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic".into());
            (None, Some(RecordError { kind: ErrorKind::Assertion, message }))
        }
    };
    match &error {
        Some(e) => warn!("{}: {}", r.name, e.message),
        None => info!("{}: {} strands, {:.3}s", r.name, r.braid.strands(), started.elapsed().as_secs_f64()),
    }
    KnotResult {
        name: r.name.clone(),
        strands: r.braid.strands(),
        braid: r.braid.to_string(),
        symmetry: r.symmetry,
        value,
        error,
    }
}

/// Evaluates every record on a pool of `jobs` threads. The output keeps the
/// input order and does not depend on `jobs`.
pub fn run_batch(records: &[KnotRecord], rep: &RepresentationData, jobs: usize) -> ResultsFile {
    let budget = EvaluationBudget { parallel: false, ..Default::default() };
    let run = || -> Vec<KnotResult> { records.par_iter().map(|r| evaluate_record(r, rep, &budget)).collect() };
    let results = match rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build() {
        Ok(pool) => pool.install(run),
        Err(e) => {
            warn!("could not build a thread pool ({e}); using the global one");
            run()
        }
    };
    ResultsFile {
        schema_version: SCHEMA_VERSION,
        engine_version: env!("CARGO_PKG_VERSION").to_string(),
        invariant: rep.label,
        representation_digest: representation_digest(rep),
        results,
    }
}
