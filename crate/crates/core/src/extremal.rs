//! Extremal 3-cycle searches over isomorphism classes and the claim
//! verification harness.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::str::FromStr;
use std::time::{Duration, Instant};

use num_integer::binomial;
use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cycles::{c3, c3_direct, c3_from_scores, moon_bound, reversal_delta, shader_threshold};
use crate::enumeration::{all_labeled, canonical_code, CanonicalCode, Catalog, ENUM_MAX_ORDER};
use crate::error::{Error, Result};
use crate::linalg::{det_via_scc, determinant, subdeterminant_spectrum, subtournament};
use crate::structure::{
    classify_singular_maximizer, is_regular_or_almost_regular, is_upset, regular_deletion_points,
    scc, SccDecomposition,
};
use crate::tournament::{Tournament, VertexSet};

/// Maximum number of witness codes kept in a result; counts stay exact.
pub const WITNESS_CAP: usize = 1000;

/// Orders up to this bound are checked over every labeled tournament where a
/// claim supports it; larger orders use class representatives.
const LABELED_MAX_ORDER: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Objective {
    MaxC3Singular,
    MinC3Nonsingular,
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::MaxC3Singular => "max-singular",
            Objective::MinC3Nonsingular => "min-nonsingular",
        })
    }
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "max-singular" => Ok(Objective::MaxC3Singular),
            "min-nonsingular" => Ok(Objective::MinC3Nonsingular),
            _ => Err(format!("unknown objective {s:?} (max-singular | min-nonsingular)")),
        }
    }
}

/// Extreme 3-cycle count over a family of classes, with the classes attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtremalResult {
    pub n: usize,
    pub objective: Objective,
    pub value: u64,
    /// Canonical codes of the attaining classes, at most [`WITNESS_CAP`].
    pub witnesses: Vec<CanonicalCode>,
    pub witness_count: usize,
}

/// Per-class quantities shared by the searches and claim checks.
#[derive(Clone, Debug)]
pub struct ClassFacts {
    pub tournament: Tournament,
    pub c3: u64,
    pub det: i128,
    pub scc: SccDecomposition,
}

impl ClassFacts {
    pub fn of(t: &Tournament) -> Self {
        ClassFacts {
            tournament: *t,
            c3: c3(t).get(),
            det: determinant(t).0,
            scc: scc(t),
        }
    }

    pub fn singular(&self) -> bool {
        self.det == 0
    }

    pub fn strong(&self) -> bool {
        self.scc.len() == 1
    }

    fn code(&self) -> CanonicalCode {
        CanonicalCode::of_representative(&self.tournament)
    }
}

fn check_search_order(n: usize) -> Result<()> {
    if n < 3 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 3,
            max: ENUM_MAX_ORDER,
        });
    }
    if n > ENUM_MAX_ORDER {
        return Err(Error::OrderTooLarge {
            n,
            max: ENUM_MAX_ORDER,
        });
    }
    Ok(())
}

fn extreme(n: usize, objective: Objective, facts: &[ClassFacts]) -> Option<ExtremalResult> {
    let keep = |f: &&ClassFacts| match objective {
        Objective::MaxC3Singular => f.singular(),
        Objective::MinC3Nonsingular => !f.singular(),
    };
    let values = facts.par_iter().filter(keep).map(|f| f.c3);
    let value = match objective {
        Objective::MaxC3Singular => values.max()?,
        Objective::MinC3Nonsingular => values.min()?,
    };
    let attaining: Vec<&ClassFacts> = facts.iter().filter(keep).filter(|f| f.c3 == value).collect();
    Some(ExtremalResult {
        n,
        objective,
        value,
        witnesses: attaining.iter().take(WITNESS_CAP).map(|f| f.code()).collect(),
        witness_count: attaining.len(),
    })
}

/// Runs `objective` over precomputed class facts of order `n`.
pub fn search_classes(n: usize, objective: Objective, facts: &[ClassFacts]) -> Result<ExtremalResult> {
    check_search_order(n)?;
    extreme(n, objective, facts).ok_or(Error::OrderOutOfRange {
        n,
        min: 3,
        max: ENUM_MAX_ORDER,
    })
}

/// Largest 3-cycle count over singular classes of order `n`.
pub fn max_c3_singular(n: usize) -> Result<ExtremalResult> {
    Verifier::new().extremal(n, Objective::MaxC3Singular)
}

/// Smallest 3-cycle count over nonsingular classes of order `n`.
pub fn min_c3_nonsingular(n: usize) -> Result<ExtremalResult> {
    Verifier::new().extremal(n, Objective::MinC3Nonsingular)
}

/// The claims the harness can check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Claim {
    Prop1Scores,
    LemmaReversal,
    PropMax3Cycles,
    LemmaMaxSing,
    Shader,
    PropSingularExtreme,
    ThmTse,
    LemmaNonstrongBound,
    PropNontrivialIffStrong,
    PropDeterminant,
    CorSingIffScc,
    CorScc3Verts,
    ThmUpset,
    ThmNonsingularExtreme,
    CorDetMod3,
    CorSubtournamentUnimodular,
}

impl Claim {
    pub const ALL: [Claim; 16] = [
        Claim::Prop1Scores,
        Claim::LemmaReversal,
        Claim::PropMax3Cycles,
        Claim::LemmaMaxSing,
        Claim::Shader,
        Claim::PropSingularExtreme,
        Claim::ThmTse,
        Claim::LemmaNonstrongBound,
        Claim::PropNontrivialIffStrong,
        Claim::PropDeterminant,
        Claim::CorSingIffScc,
        Claim::CorScc3Verts,
        Claim::ThmUpset,
        Claim::ThmNonsingularExtreme,
        Claim::CorDetMod3,
        Claim::CorSubtournamentUnimodular,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Claim::Prop1Scores => "prop1-scores",
            Claim::LemmaReversal => "lemma-reversal",
            Claim::PropMax3Cycles => "prop-max3cycles",
            Claim::LemmaMaxSing => "lemma-maxsing",
            Claim::Shader => "shader",
            Claim::PropSingularExtreme => "prop-singularextreme",
            Claim::ThmTse => "thm-TSE",
            Claim::LemmaNonstrongBound => "lemma-nonstrong-bound",
            Claim::PropNontrivialIffStrong => "prop-nontrivial-iff-strong",
            Claim::PropDeterminant => "prop-determinant",
            Claim::CorSingIffScc => "cor-sing-iff-scc",
            Claim::CorScc3Verts => "cor-scc-3verts",
            Claim::ThmUpset => "thm-upset",
            Claim::ThmNonsingularExtreme => "thm-nonsingularextreme",
            Claim::CorDetMod3 => "cor-det-mod3",
            Claim::CorSubtournamentUnimodular => "cor-subtournament-unimodular",
        }
    }

    /// Smallest order the claim speaks about.
    pub fn min_order(self) -> usize {
        match self {
            Claim::Prop1Scores
            | Claim::PropMax3Cycles
            | Claim::Shader
            | Claim::PropDeterminant
            | Claim::CorSingIffScc
            | Claim::CorScc3Verts => 1,
            Claim::LemmaReversal | Claim::LemmaMaxSing => 2,
            Claim::LemmaNonstrongBound => 6,
            Claim::PropNontrivialIffStrong => 7,
            _ => 3,
        }
    }
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Claim {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Claim::ALL
            .into_iter()
            .find(|c| c.id().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownClaim(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one claim at one order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderOutcome {
    pub n: usize,
    pub status: Status,
    /// Reading of the claim when it has more than one; `None` for the sole reading.
    pub variant: Option<&'static str>,
    /// Informational outcomes never decide the report status.
    pub informational: bool,
    pub value: Option<i64>,
    pub witness_count: usize,
    pub witnesses: Vec<String>,
    pub counterexamples: Vec<String>,
    pub detail: String,
    pub elapsed: Duration,
}

impl OrderOutcome {
    fn new(n: usize) -> Self {
        OrderOutcome {
            n,
            status: Status::Pass,
            variant: None,
            informational: false,
            value: None,
            witness_count: 0,
            witnesses: Vec::new(),
            counterexamples: Vec::new(),
            detail: String::new(),
            elapsed: Duration::ZERO,
        }
    }

    fn skipped(n: usize, min: usize) -> Self {
        OrderOutcome {
            status: Status::Skipped,
            detail: format!("claim concerns orders n >= {min}"),
            ..OrderOutcome::new(n)
        }
    }

    fn witness(&mut self, t: &Tournament) {
        self.witness_count += 1;
        if self.witnesses.len() < WITNESS_CAP {
            self.witnesses.push(t.encode().to_string());
        }
    }

    fn fail(&mut self, t: &Tournament) {
        self.status = Status::Fail;
        if self.counterexamples.len() < WITNESS_CAP {
            self.counterexamples.push(t.encode().to_string());
        }
    }

    fn expect(&mut self, ok: bool, t: &Tournament) {
        if !ok {
            self.fail(t);
        }
    }
}

/// Result of checking one claim over a range of orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub claim: Claim,
    pub n_range: RangeInclusive<usize>,
    pub status: Status,
    pub counterexamples: Vec<String>,
    pub outcomes: Vec<OrderOutcome>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn claim_id(&self) -> &'static str {
        self.claim.id()
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Checks one claim over `n_range`.
pub fn verify(claim_id: &str, n_range: RangeInclusive<usize>) -> Result<VerificationReport> {
    let claim: Claim = claim_id.parse()?;
    Verifier::new().verify(claim, n_range)
}

/// Caches class lists and per-class facts across claims.
#[derive(Default)]
pub struct Verifier {
    catalog: Catalog,
    facts: Vec<Option<Vec<ClassFacts>>>,
}

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn classes(&mut self, n: usize) -> Result<&[Tournament]> {
        self.catalog.classes(n)
    }

    pub fn facts(&mut self, n: usize) -> Result<&[ClassFacts]> {
        if self.facts.len() <= n {
            self.facts.resize(n + 1, None);
        }
        if self.facts[n].is_none() {
            let computed: Vec<ClassFacts> =
                self.catalog.classes(n)?.par_iter().map(ClassFacts::of).collect();
            self.facts[n] = Some(computed);
        }
        Ok(self.facts[n].as_deref().expect("filled above"))
    }

    pub fn extremal(&mut self, n: usize, objective: Objective) -> Result<ExtremalResult> {
        check_search_order(n)?;
        let facts = self.facts(n)?;
        search_classes(n, objective, facts)
    }

    pub fn verify(&mut self, claim: Claim, n_range: RangeInclusive<usize>) -> Result<VerificationReport> {
        let (lo, hi) = (*n_range.start(), *n_range.end());
        if lo == 0 || lo > hi {
            return Err(Error::OrderOutOfRange {
                n: lo,
                min: 1,
                max: ENUM_MAX_ORDER,
            });
        }
        if hi > ENUM_MAX_ORDER {
            return Err(Error::OrderTooLarge {
                n: hi,
                max: ENUM_MAX_ORDER,
            });
        }
        let start = Instant::now();
        let mut outcomes = Vec::new();
        for n in n_range.clone() {
            if n < claim.min_order() {
                outcomes.push(OrderOutcome::skipped(n, claim.min_order()));
                continue;
            }
            let t0 = Instant::now();
            let mut batch = self.check(claim, n)?;
            let elapsed = t0.elapsed();
            for o in &mut batch {
                o.elapsed = elapsed;
            }
            outcomes.extend(batch);
        }
        let decisive = outcomes.iter().filter(|o| !o.informational);
        let status = if decisive.clone().any(|o| o.status == Status::Fail) {
            Status::Fail
        } else if decisive.clone().all(|o| o.status == Status::Skipped) {
            Status::Skipped
        } else {
            Status::Pass
        };
        let mut counterexamples: Vec<String> = outcomes
            .iter()
            .filter(|o| !o.informational)
            .flat_map(|o| o.counterexamples.iter().cloned())
            .collect();
        counterexamples.truncate(WITNESS_CAP);
        Ok(VerificationReport {
            claim,
            n_range,
            status,
            counterexamples,
            outcomes,
            elapsed: start.elapsed(),
        })
    }

    fn check(&mut self, claim: Claim, n: usize) -> Result<Vec<OrderOutcome>> {
        let one = |o: OrderOutcome| Ok(vec![o]);
        match claim {
            Claim::Prop1Scores => one(self.prop1_scores(n)?),
            Claim::LemmaReversal => one(self.lemma_reversal(n)?),
            Claim::PropMax3Cycles => one(self.prop_max3cycles(n)?),
            Claim::LemmaMaxSing => one(self.lemma_maxsing(n)?),
            Claim::Shader => one(self.shader(n)?),
            Claim::PropSingularExtreme => one(self.prop_singularextreme(n)?),
            Claim::ThmTse => one(self.thm_tse(n)?),
            Claim::LemmaNonstrongBound => self.lemma_nonstrong_bound(n),
            Claim::PropNontrivialIffStrong => one(self.prop_nontrivial_iff_strong(n)?),
            Claim::PropDeterminant => one(self.prop_determinant(n)?),
            Claim::CorSingIffScc => one(self.cor_sing_iff_scc(n)?),
            Claim::CorScc3Verts => one(self.cor_scc_3verts(n)?),
            Claim::ThmUpset => one(self.thm_upset(n)?),
            Claim::ThmNonsingularExtreme => one(self.thm_nonsingularextreme(n)?),
            Claim::CorDetMod3 => one(self.cor_det_mod3(n)?),
            Claim::CorSubtournamentUnimodular => one(self.cor_subtournament_unimodular(n)?),
        }
    }

    /// Labeled tournaments for small orders, class representatives otherwise.
    fn population(&mut self, n: usize) -> Result<(Vec<Tournament>, &'static str)> {
        if n <= LABELED_MAX_ORDER {
            Ok((all_labeled(n)?.collect(), "labeled tournaments"))
        } else {
            Ok((self.classes(n)?.to_vec(), "isomorphism classes"))
        }
    }

    fn prop1_scores(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (pop, kind) = self.population(n)?;
        let bad: Vec<Tournament> = pop
            .par_iter()
            .filter(|t| c3_from_scores(&t.score_vector()) != c3_direct(t))
            .copied()
            .collect();
        for t in &bad {
            out.fail(t);
        }
        out.witness_count = pop.len();
        out.detail = format!("{} {kind}, {} disagreements", pop.len(), bad.len());
        Ok(out)
    }

    fn lemma_reversal(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (pop, kind) = self.population(n)?;
        let bad: Vec<Tournament> = pop
            .par_iter()
            .filter(|t| {
                let s = t.score_vector();
                let before = c3_direct(t).get() as i64;
                (0..n).any(|i| {
                    t.out_set(i).iter().any(|j| {
                        let after = c3_direct(&t.reverse_arc(i, j).expect("arc exists")).get() as i64;
                        reversal_delta(&s, i, j).expect("distinct vertices") != after - before
                    })
                })
            })
            .copied()
            .collect();
        for t in &bad {
            out.fail(t);
        }
        out.witness_count = pop.len();
        out.detail = format!("every arc of {} {kind}", pop.len());
        Ok(out)
    }

    fn prop_max3cycles(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let bound = moon_bound(n);
        out.value = Some(bound as i64);
        for f in self.facts(n)? {
            let t = &f.tournament;
            let attains = f.c3 == bound;
            out.expect(f.c3 <= bound, t);
            out.expect(attains == is_regular_or_almost_regular(t), t);
            if attains {
                out.witness(t);
            }
        }
        out.detail = format!(
            "bound {bound}; {} classes attain it, all regular or almost regular",
            out.witness_count
        );
        Ok(out)
    }

    fn max_singular(&mut self, n: usize) -> Result<u64> {
        Ok(self
            .facts(n)?
            .iter()
            .filter(|f| f.singular())
            .map(|f| f.c3)
            .max()
            .expect("the transitive tournament is singular"))
    }

    fn lemma_maxsing(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let max = self.max_singular(n)?;
        let prev = moon_bound(n - 1);
        out.value = Some(max as i64);
        if max < prev {
            out.status = Status::Fail;
        }
        // the sink extension of a maximizer of order n-1 is the witness
        let base = if (n - 1) % 2 == 1 {
            Tournament::regular(n - 1)?
        } else {
            Tournament::almost_regular(n - 1)?
        };
        let ext = base.with_sink()?;
        out.expect(determinant(&ext).is_zero() && c3(&ext).get() == prev, &ext);
        out.witness(&ext);
        out.detail = format!("max over singular = {max} >= max over order {} = {prev}", n - 1);
        Ok(out)
    }

    fn shader(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let threshold = shader_threshold(n);
        let mut max = 0;
        for f in self.facts(n)?.iter().filter(|f| f.singular()) {
            max = max.max(f.c3);
            out.expect(Ratio::from_integer(f.c3) <= threshold, &f.tournament);
        }
        out.value = Some(max as i64);
        out.detail = format!("max over singular = {max} <= {threshold}");
        Ok(out)
    }

    fn prop_singularextreme(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let r = self.extremal(n, Objective::MaxC3Singular)?;
        let c = binomial(n as u64, 3);
        let ok = if n.is_multiple_of(2) {
            out.detail = format!("max = {} vs C({n},3)/4 = {}/4", r.value, c);
            4 * r.value == c
        } else {
            let lower = 2 * binomial((n as u64).div_ceil(2), 3);
            let upper = c / 4;
            out.detail = format!("{lower} <= max = {} <= {upper}", r.value);
            lower <= r.value && r.value <= upper
        };
        if !ok {
            out.status = Status::Fail;
        }
        out.value = Some(r.value as i64);
        out.witness_count = r.witness_count;
        out.witnesses = r.witnesses.iter().map(ToString::to_string).collect();
        Ok(out)
    }

    fn maximizers(&mut self, n: usize) -> Result<(u64, Vec<ClassFacts>)> {
        let max = self.max_singular(n)?;
        let list = self
            .facts(n)?
            .iter()
            .filter(|f| f.singular() && f.c3 == max)
            .cloned()
            .collect();
        Ok((max, list))
    }

    fn thm_tse(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (max, maximizers) = self.maximizers(n)?;
        let mut trivial = 0;
        for f in &maximizers {
            let t = &f.tournament;
            out.witness(t);
            // (i) some vertex extends a regular or almost regular tournament
            let by_definition = !regular_deletion_points(t).is_empty();
            // (ii) that vertex can be taken to be a sink or a source
            let by_sink_source = (0..n).any(|v| {
                let s = t.score(v) as usize;
                (s == 0 || s == n - 1)
                    && subtournament(t, VertexSet(VertexSet::full(n).0 & !(1 << v)))
                        .map(|b| is_regular_or_almost_regular(&b))
                        .unwrap_or(false)
            });
            // (iii) a singleton strong component
            let singleton = f.scc.sizes().contains(&1);
            out.expect(by_definition == by_sink_source && by_sink_source == singleton, t);
            match classify_singular_maximizer(t, max) {
                Ok(class) => out.expect(class.is_trivial() == singleton, t),
                Err(_) => out.fail(t),
            }
            if singleton {
                trivial += 1;
            }
        }
        out.value = Some(max as i64);
        out.detail = format!(
            "{} maximizers with {max} three-cycles: {trivial} trivial, {} nontrivial",
            maximizers.len(),
            maximizers.len() - trivial
        );
        Ok(out)
    }

    fn lemma_nonstrong_bound(&mut self, n: usize) -> Result<Vec<OrderOutcome>> {
        let mut statement = OrderOutcome::new(n);
        statement.variant = Some("statement");
        let mut proof = OrderOutcome::new(n);
        proof.variant = Some("proof");
        proof.informational = true;

        let c = binomial(n as u64 - 2, 3);
        let statement_bound = Ratio::from_integer(c + 1);
        let proof_bound = Ratio::new(c, 4) + Ratio::from_integer(1);
        let mut max = None;
        for f in self.facts(n)? {
            if f.strong() || f.scc.sizes().iter().any(|&s| s < 3) {
                continue;
            }
            let t = &f.tournament;
            let value = Ratio::from_integer(f.c3);
            statement.witness(t);
            proof.witness(t);
            statement.expect(value <= statement_bound, t);
            proof.expect(value <= proof_bound, t);
            max = max.max(Some(f.c3));
        }
        for (o, bound) in [(&mut statement, statement_bound), (&mut proof, proof_bound)] {
            o.value = max.map(|m| m as i64);
            o.detail = format!(
                "{} non-strong classes with all components >= 3, max C3 = {}, bound {bound}",
                o.witness_count,
                max.map_or("-".to_string(), |m| m.to_string())
            );
        }
        Ok(vec![statement, proof])
    }

    fn prop_nontrivial_iff_strong(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (max, maximizers) = self.maximizers(n)?;
        let mut strong = 0;
        for f in &maximizers {
            let t = &f.tournament;
            out.witness(t);
            let nontrivial = regular_deletion_points(t).is_empty();
            out.expect(nontrivial == f.strong(), t);
            strong += f.strong() as usize;
        }
        out.value = Some(max as i64);
        out.detail = format!("{} maximizers, {strong} strong", maximizers.len());
        Ok(out)
    }

    fn prop_determinant(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        for f in self.facts(n)? {
            let via = det_via_scc(&f.tournament, &f.scc)?;
            out.expect(via.0 == f.det, &f.tournament);
            out.witness_count += 1;
        }
        out.detail = format!("{} classes", out.witness_count);
        Ok(out)
    }

    fn cor_sing_iff_scc(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        for f in self.facts(n)? {
            let t = &f.tournament;
            let some_singular = f
                .scc
                .components()
                .iter()
                .any(|&c| determinant(&subtournament(t, c).expect("nonempty component")).is_zero());
            out.expect(f.singular() == some_singular, t);
            out.witness_count += 1;
        }
        out.detail = format!("{} classes", out.witness_count);
        Ok(out)
    }

    fn cor_scc_3verts(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let mut nonsingular = 0;
        for f in self.facts(n)? {
            let sizes = f.scc.sizes();
            out.expect(!sizes.contains(&2), &f.tournament);
            if !f.singular() {
                nonsingular += 1;
                out.expect(sizes.iter().all(|&s| s >= 3), &f.tournament);
            }
        }
        out.witness_count = nonsingular;
        out.detail = format!("{nonsingular} nonsingular classes; no component of size 2");
        Ok(out)
    }

    fn thm_upset(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let closure = upset_closure(n)?;
        let floor = n as u64 - 2;
        let mut minimal = BTreeSet::new();
        for f in self.facts(n)?.iter().filter(|f| f.strong()) {
            out.expect(f.c3 >= floor, &f.tournament);
            if f.c3 == floor {
                minimal.insert(CanonicalCode::of_representative(&f.tournament));
            }
        }
        for code in minimal.symmetric_difference(&closure) {
            out.fail(&code.tournament());
        }
        for code in &minimal {
            out.witness(&code.tournament());
        }
        out.value = Some(floor as i64);
        out.detail = format!(
            "{} strong classes with C3 = {floor}; {} classes from path reversals",
            minimal.len(),
            closure.len()
        );
        Ok(out)
    }

    fn nonsingular_minimizers(&mut self, n: usize) -> Result<(u64, Vec<ClassFacts>)> {
        let r = self.extremal(n, Objective::MinC3Nonsingular)?;
        let list = self
            .facts(n)?
            .iter()
            .filter(|f| !f.singular() && f.c3 == r.value)
            .cloned()
            .collect();
        Ok((r.value, list))
    }

    fn thm_nonsingularextreme(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (min, witnesses) = self.nonsingular_minimizers(n)?;
        let expected = n as u64 - 2 * (n as u64 / 3);
        let k = n / 3;
        out.value = Some(min as i64);
        if min != expected {
            out.status = Status::Fail;
        }
        let upset_blocks = |f: &ClassFacts| {
            f.scc.len() == k
                && f.scc.components().iter().all(|&c| {
                    c.len() >= 3
                        && is_upset(&subtournament(&f.tournament, c).expect("nonempty component"))
                            .unwrap_or(false)
                })
        };
        let mut found = BTreeSet::new();
        for f in &witnesses {
            out.witness(&f.tournament);
            out.expect(upset_blocks(f), &f.tournament);
            found.insert(CanonicalCode::of_representative(&f.tournament));
        }
        // converse: every class built from k upset blocks is a nonsingular minimizer
        for f in self.facts(n)? {
            if upset_blocks(f) {
                let code = CanonicalCode::of_representative(&f.tournament);
                out.expect(!f.singular() && f.c3 == expected && found.contains(&code), &f.tournament);
            }
        }
        out.detail = format!(
            "min = {min} (expected {expected}); {} witnesses, each {k} upset components",
            witnesses.len()
        );
        Ok(out)
    }

    fn cor_det_mod3(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (min, witnesses) = self.nonsingular_minimizers(n)?;
        let expected = if n % 3 == 1 { -1 } else { 1 };
        for f in &witnesses {
            out.witness(&f.tournament);
            out.expect(f.det == expected, &f.tournament);
        }
        out.value = Some(expected as i64);
        out.detail = format!("{} minimizers with C3 = {min}, det expected {expected}", witnesses.len());
        Ok(out)
    }

    fn cor_subtournament_unimodular(&mut self, n: usize) -> Result<OrderOutcome> {
        let mut out = OrderOutcome::new(n);
        let (_, witnesses) = self.nonsingular_minimizers(n)?;
        let allowed = BTreeSet::from([-1, 0, 1]);
        let mut seen = BTreeSet::new();
        for f in &witnesses {
            out.witness(&f.tournament);
            let spectrum = subdeterminant_spectrum(&f.tournament)?;
            out.expect(spectrum.is_subset(&allowed), &f.tournament);
            seen.extend(spectrum);
        }
        out.detail = format!("{} minimizers; principal minors take values {seen:?}", witnesses.len());
        Ok(out)
    }
}

/// Classes obtained from the transitive tournament of order `n` by reversing
/// every arc of a directed path from the top vertex to the bottom vertex.
///
/// In the transitive tournament `i -> j` iff `i > j`, so such paths are the
/// decreasing sequences `n-1 > .. > 0`, one per subset of the inner vertices.
pub fn upset_closure(n: usize) -> Result<BTreeSet<CanonicalCode>> {
    if n < 3 {
        return Err(Error::OrderOutOfRange {
            n,
            min: 3,
            max: ENUM_MAX_ORDER,
        });
    }
    let transitive = Tournament::transitive(n)?;
    let mut out = BTreeSet::new();
    for inner in 0u32..1 << (n - 2) {
        let mut path = vec![n - 1];
        path.extend((1..n - 1).rev().filter(|&v| inner >> (v - 1) & 1 == 1));
        path.push(0);
        let mut t = transitive;
        for w in path.windows(2) {
            t = t.reverse_arc(w[0], w[1])?;
        }
        out.insert(canonical_code(&t)?);
    }
    Ok(out)
}
