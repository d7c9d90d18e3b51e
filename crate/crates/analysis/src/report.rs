use std::collections::BTreeSet;
use std::str::FromStr;

use serde::Serialize;

use lg_core::{Invariant, KnotName, SymmetryClass};

use crate::annotations::{Annotations, CliqueKind};
use crate::batch::ResultsFile;
use crate::cluster::cluster_fingerprints;
use crate::fingerprint::{QParity, SymmetryFlags};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportMode {
    Symmetry,
    Cliques,
    Full,
}

impl FromStr for ReportMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "symmetry" => Ok(ReportMode::Symmetry),
            "cliques" => Ok(ReportMode::Cliques),
            "full" => Ok(ReportMode::Full),
            _ => Err(format!("unknown report mode '{s}'")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct KnotSymmetry {
    pub name: KnotName,
    pub declared: SymmetryClass,
    #[serde(flatten)]
    pub flags: SymmetryFlags,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SymmetrySummary {
    pub evaluated: usize,
    pub chirality_detected: usize,
    /// Declared chiral, but the value is `q`-palindromic.
    pub chiral_undetected: Vec<KnotName>,
    /// Declared achiral, but the value is not `q`-palindromic. Always a bug.
    pub achiral_flagged: Vec<KnotName>,
    pub p_palindromic_failures: Vec<KnotName>,
    pub q_parity_failures: Vec<KnotName>,
    pub sign_pattern_exceptions: Vec<KnotName>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClusterEntry {
    pub members: Vec<KnotName>,
    pub annotated: bool,
    pub kinds: BTreeSet<CliqueKind>,
    /// Reserved for a hyperbolic volume column.
    pub volume: Option<f64>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CliqueSummary {
    pub clusters: Vec<ClusterEntry>,
    /// Annotated groups among the evaluated knots that the invariant did not
    /// reproduce as a cluster.
    pub missing_annotations: Vec<Vec<KnotName>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub invariant: Invariant,
    pub errors: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetrySummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub knots: Option<Vec<KnotSymmetry>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cliques: Option<CliqueSummary>,
}

pub fn symmetry_summary(results: &ResultsFile) -> (SymmetrySummary, Vec<KnotSymmetry>) {
    let mut s = SymmetrySummary::default();
    let mut knots = vec![];
    for (r, fp) in results.results.iter().filter(|r| r.value.is_some()).zip(results.fingerprints()) {
        let fl = &fp.flags;
        s.evaluated += 1;
        s.chirality_detected += fl.chirality_detected as usize;
        let name = || r.name.clone();
        match r.symmetry {
            SymmetryClass::Chiral if !fl.chirality_detected => s.chiral_undetected.push(name()),
            SymmetryClass::Achiral if fl.chirality_detected => s.achiral_flagged.push(name()),
            _ => {}
        }
        if !fl.p_palindromic {
            s.p_palindromic_failures.push(name());
        }
        if fl.q_parity_by_p_degree == QParity::Violation || !fl.q_parity_matches_p_degree {
            s.q_parity_failures.push(name());
        }
        if !fl.sign_pattern {
            s.sign_pattern_exceptions.push(name());
        }
        knots.push(KnotSymmetry { name: name(), declared: r.symmetry, flags: fp.flags });
    }
    (s, knots)
}

pub fn clique_summary(results: &ResultsFile, ann: &Annotations) -> CliqueSummary {
    let evaluated: BTreeSet<KnotName> =
        results.results.iter().filter(|r| r.value.is_some()).map(|r| r.name.clone()).collect();
    let expected: Vec<Vec<KnotName>> = ann
        .expected_groups(None)
        .into_iter()
        .map(|g| g.into_iter().filter(|n| evaluated.contains(n)).collect::<Vec<_>>())
        .filter(|g| g.len() >= 2)
        .collect();
    let clusters: Vec<ClusterEntry> = cluster_fingerprints(&results.fingerprints())
        .into_iter()
        .map(|members| ClusterEntry {
            annotated: expected.contains(&members),
            kinds: ann.kinds_within(&members),
            members,
            volume: None,
        })
        .collect();
    let missing_annotations = expected.into_iter().filter(|g| !clusters.iter().any(|c| &c.members == g)).collect();
    CliqueSummary { clusters, missing_annotations }
}

pub fn emit_report(results: &ResultsFile, ann: &Annotations, mode: ReportMode) -> Report {
    let errors = results.results.iter().filter(|r| r.error.is_some()).count();
    let mut report = Report { invariant: results.invariant, errors, symmetry: None, knots: None, cliques: None };
    if mode != ReportMode::Cliques {
        let (s, k) = symmetry_summary(results);
        report.symmetry = Some(s);
        if mode == ReportMode::Full {
            report.knots = Some(k);
        }
    }
    if mode != ReportMode::Symmetry {
        report.cliques = Some(clique_summary(results, ann));
    }
    report
}
