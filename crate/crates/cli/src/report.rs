//! Output records and their text and JSON renderings.

use std::fmt::Write as _;

use serde::Serialize;
use tourneylab::extremal::{OrderOutcome, VerificationReport};
use tourneylab::fixtures::Fixture;
use tourneylab::structure::{is_almost_regular, is_regular, is_strong, is_transitive, is_upset};
use tourneylab::{c3_direct, c3_from_scores, determinant, scc, ExtremalResult, Tournament};

/// Everything `analyze` reports about one tournament.
#[derive(Debug, Serialize)]
pub struct AnalysisRecord {
    pub code: String,
    pub n: usize,
    pub scores: Vec<u32>,
    pub sorted_scores: Vec<u32>,
    pub c3_scores: u64,
    pub c3_direct: u64,
    pub determinant: i128,
    pub singular: bool,
    pub scc_sizes: Vec<usize>,
    pub scc: Vec<Vec<usize>>,
    pub strong: bool,
    pub transitive: bool,
    pub regular: bool,
    pub almost_regular: bool,
    /// Undefined below order 3.
    pub upset: Option<bool>,
}

impl AnalysisRecord {
    pub fn of(t: &Tournament) -> Self {
        let s = t.score_vector();
        let det = determinant(t).0;
        let d = scc(t);
        AnalysisRecord {
            code: t.encode().to_string(),
            n: t.order(),
            scores: s.raw().to_vec(),
            sorted_scores: s.sorted().to_vec(),
            c3_scores: c3_from_scores(&s).get(),
            c3_direct: c3_direct(t).get(),
            determinant: det,
            singular: det == 0,
            scc_sizes: d.sizes(),
            scc: d.components().iter().map(|c| c.iter().collect()).collect(),
            strong: is_strong(t),
            transitive: is_transitive(t),
            regular: is_regular(t),
            almost_regular: is_almost_regular(t),
            upset: is_upset(t).ok(),
        }
    }

    pub fn to_text(&self) -> String {
        let list = |v: &[u32]| join(v.iter());
        let mut out = String::new();
        let _ = writeln!(out, "code: {}", self.code);
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "scores: ({})", list(&self.scores));
        let _ = writeln!(out, "sorted scores: ({})", list(&self.sorted_scores));
        let _ = writeln!(out, "3-cycles: {} (scores) {} (direct)", self.c3_scores, self.c3_direct);
        let _ = writeln!(out, "determinant: {}", self.determinant);
        let _ = writeln!(out, "singular: {}", self.singular);
        let comps: Vec<String> = self.scc.iter().map(|c| format!("{{{}}}", join(c.iter()))).collect();
        let _ = writeln!(out, "components: {}", comps.join(" > "));
        let _ = writeln!(out, "strong: {}", self.strong);
        let _ = writeln!(out, "transitive: {}", self.transitive);
        let _ = writeln!(out, "regular: {}", self.regular);
        let _ = writeln!(out, "almost regular: {}", self.almost_regular);
        let upset = self.upset.map_or("n/a".to_string(), |u| u.to_string());
        let _ = writeln!(out, "upset: {upset}");
        out
    }
}

fn join<T: ToString>(items: impl Iterator<Item = T>) -> String {
    items.map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Debug, Serialize)]
pub struct ExtremalRecord {
    pub n: usize,
    pub objective: String,
    pub value: u64,
    pub witness_count: usize,
    pub witnesses: Vec<String>,
}

impl From<&ExtremalResult> for ExtremalRecord {
    fn from(r: &ExtremalResult) -> Self {
        ExtremalRecord {
            n: r.n,
            objective: r.objective.to_string(),
            value: r.value,
            witness_count: r.witness_count,
            witnesses: r.witnesses.iter().map(ToString::to_string).collect(),
        }
    }
}

impl ExtremalRecord {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "n={} objective={} value={} witnesses={}\n",
            self.n, self.objective, self.value, self.witness_count
        );
        for w in &self.witnesses {
            let _ = writeln!(out, "  {w}");
        }
        out
    }
}

/// One line of `verify --json` output: a claim at one order.
#[derive(Debug, Serialize)]
pub struct ClaimRecord {
    pub claim_id: String,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub variant: Option<String>,
    pub informational: bool,
    pub status: String,
    pub value: Option<i64>,
    pub witness_count: usize,
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<String>,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

impl ClaimRecord {
    pub fn new(report: &VerificationReport, o: &OrderOutcome, timings: bool) -> Self {
        ClaimRecord {
            claim_id: report.claim_id().to_string(),
            n: o.n,
            variant: o.variant.map(str::to_string),
            informational: o.informational,
            status: o.status.to_string(),
            value: o.value,
            witness_count: o.witness_count,
            witnesses: o.witnesses.clone(),
            counterexamples: o.counterexamples.clone(),
            detail: o.detail.clone(),
            elapsed_ms: timings.then_some(o.elapsed.as_millis()),
        }
    }

    pub fn to_row(&self) -> String {
        let claim = match &self.variant {
            Some(v) => format!("{} [{v}]", self.claim_id),
            None => self.claim_id.clone(),
        };
        let status = if self.informational {
            format!("{} (info)", self.status)
        } else {
            self.status.clone()
        };
        let mut row = format!("{claim:<40} n={:<2} {status:<12} {}", self.n, self.detail);
        if !self.counterexamples.is_empty() {
            let _ = write!(row, " counterexamples: {}", self.counterexamples.join(" "));
        }
        row
    }
}

#[derive(Debug, Serialize)]
pub struct FixtureRecord {
    pub name: String,
    pub code: String,
    pub matrix: Vec<String>,
    pub determinant: i128,
    pub c3: u64,
    pub sorted_scores: Vec<u32>,
}

impl From<&Fixture> for FixtureRecord {
    fn from(f: &Fixture) -> Self {
        FixtureRecord {
            name: f.name.to_string(),
            code: f.tournament.encode().to_string(),
            matrix: f.tournament.to_matrix_text().lines().map(str::to_string).collect(),
            determinant: f.determinant,
            c3: f.c3,
            sorted_scores: f.sorted_scores.to_vec(),
        }
    }
}

impl FixtureRecord {
    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} {} det={} c3={} scores=({})\n",
            self.name,
            self.code,
            self.determinant,
            self.c3,
            join(self.sorted_scores.iter())
        );
        for row in &self.matrix {
            let _ = writeln!(out, "  {row}");
        }
        out
    }
}
