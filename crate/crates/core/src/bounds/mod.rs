//! The bound catalog and its evaluator.
//!
//! Every bound compares a spectral quantity (the `lhs`) with a formula in
//! the combinatorial invariants (the `rhs`). Slack is oriented so that a
//! nonnegative value means the bound holds.
//!
//! ```
//! use hyperspectra::bounds::evaluate_all;
//! use hyperspectra::generate::single_edge;
//!
//! let evals = evaluate_all(&single_edge(3).unwrap());
//! assert_eq!(evals.len(), 25);
//! let b17 = &evals[16];
//! assert_eq!(b17.bound_id, "B17");
//! assert!((b17.lhs.unwrap() - 1.5).abs() < 1e-9);
//! assert_eq!(b17.holds, Some(true));
//! ```

mod catalog;
mod context;
mod formulas;

use std::collections::BTreeMap;
use std::io;

use serde::Serialize;
use thiserror::Error;

pub use catalog::{catalog, spec, Assurance, BoundSpec, EqualityRule, EqualitySpec, Target};
pub use context::{Context, XyExtremes, COMPLEMENT_CAP, XY_CAP};

use crate::eigen::DEFAULT_TOL;
use crate::hypergraph::Hypergraph;
use crate::report::{opt_bool_cell, opt_float_cell};
use formulas::{compute, Side};

/// Slack and equality tolerances.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// A bound holds iff its slack is at least `-slack`; a strict one iff
    /// its slack exceeds `slack`.
    pub slack: f64,
    /// Equality is observed iff `|slack| <= equality`.
    pub equality: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { slack: 1e-9, equality: 1e-7 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundError {
    #[error("context was built from a different hypergraph")]
    ContextMismatch,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundEvaluation {
    pub bound_id: &'static str,
    pub target: Target,
    pub assurance: Assurance,
    pub applicable: bool,
    pub reason: Option<String>,
    /// The spectral quantity.
    pub lhs: Option<f64>,
    /// The formula value on the binding side.
    pub rhs: Option<f64>,
    pub slack: Option<f64>,
    pub holds: Option<bool>,
    pub strict: bool,
    pub equality_expected: Option<bool>,
    pub equality_observed: Option<bool>,
    pub consistent: Option<bool>,
    pub equality_assurance: Option<Assurance>,
    /// Auxiliary values: radicands, alternative readings, detected forms.
    pub terms: BTreeMap<String, f64>,
}

impl BoundEvaluation {
    fn inapplicable(spec: &BoundSpec, reason: String, terms: BTreeMap<String, f64>) -> Self {
        BoundEvaluation {
            bound_id: spec.id,
            target: spec.target,
            assurance: spec.assurance,
            applicable: false,
            reason: Some(reason),
            lhs: None,
            rhs: None,
            slack: None,
            holds: None,
            strict: spec.strict,
            equality_expected: None,
            equality_observed: None,
            consistent: None,
            equality_assurance: spec.equality.map(|e| e.assurance),
            terms,
        }
    }

    /// An asserted bound that failed, or an asserted equality
    /// characterization that disagreed with observation.
    pub fn is_asserted_failure(&self) -> bool {
        let bound = self.assurance == Assurance::Asserted && self.holds == Some(false);
        let equality = self.equality_assurance == Some(Assurance::Asserted) && self.consistent == Some(false);
        bound || equality
    }

    /// Any failure or inconsistency on the audited side.
    pub fn is_finding(&self) -> bool {
        let bound = self.assurance == Assurance::Audited && self.holds == Some(false);
        let equality = self.equality_assurance == Some(Assurance::Audited) && self.consistent == Some(false);
        bound || equality
    }
}

/// Evaluates one bound from a prebuilt context.
pub fn evaluate(h: &Hypergraph, spec: &BoundSpec, ctx: &Context, tol: Tolerances) -> Result<BoundEvaluation, BoundError> {
    if !ctx.matches(h) {
        return Err(BoundError::ContextMismatch);
    }
    if let Some(reason) = gate(ctx) {
        return Ok(BoundEvaluation::inapplicable(spec, reason.to_string(), BTreeMap::new()));
    }
    let computed = match compute(spec.id, ctx) {
        Ok(c) => c,
        Err(skip) => return Ok(BoundEvaluation::inapplicable(spec, skip.reason, skip.terms)),
    };
    let (side, rhs, slack) = computed
        .checks
        .iter()
        .map(|&(side, rhs)| (side, rhs, oriented_slack(side, computed.lhs, rhs)))
        .min_by(|a, b| a.2.total_cmp(&b.2))
        .expect("every bound has a check");
    if !slack.is_finite() {
        let reason = format!("non-finite comparison (lhs = {}, rhs = {rhs})", computed.lhs);
        return Ok(BoundEvaluation::inapplicable(spec, reason, computed.terms));
    }
    let holds = if computed.strict && side != Side::Equal { slack > tol.slack } else { slack >= -tol.slack };
    let observed = slack.abs() <= tol.equality;
    let expected = computed.equality_expected;
    Ok(BoundEvaluation {
        bound_id: spec.id,
        target: spec.target,
        assurance: spec.assurance,
        applicable: true,
        reason: None,
        lhs: Some(computed.lhs),
        rhs: Some(rhs),
        slack: Some(slack),
        holds: Some(holds),
        strict: computed.strict,
        equality_expected: expected,
        equality_observed: Some(observed),
        consistent: expected.map(|e| e == observed),
        equality_assurance: spec.equality.map(|e| e.assurance),
        terms: computed.terms,
    })
}

fn oriented_slack(side: Side, lhs: f64, rhs: f64) -> f64 {
    match side {
        Side::AtLeast => lhs - rhs,
        Side::AtMost => rhs - lhs,
        Side::Equal => -(lhs - rhs).abs(),
    }
}

fn gate(ctx: &Context) -> Option<&'static str> {
    if ctx.k.is_none() {
        Some("hypergraph is not uniform")
    } else if ctx.inv.m == 0 {
        Some("hypergraph has no edges")
    } else if !ctx.connected {
        Some("hypergraph is not connected")
    } else {
        None
    }
}

/// All 25 bounds in catalog order with default tolerances.
pub fn evaluate_all(h: &Hypergraph) -> Vec<BoundEvaluation> {
    evaluate_all_with(h, Tolerances::default())
}

pub fn evaluate_all_with(h: &Hypergraph, tol: Tolerances) -> Vec<BoundEvaluation> {
    match Context::build(h, DEFAULT_TOL) {
        Ok(ctx) => evaluate_catalog(h, &ctx, tol),
        Err(e) => catalog()
            .iter()
            .map(|s| BoundEvaluation::inapplicable(s, format!("resource cap: {e}"), BTreeMap::new()))
            .collect(),
    }
}

/// All 25 bounds from an existing context.
pub fn evaluate_catalog(h: &Hypergraph, ctx: &Context, tol: Tolerances) -> Vec<BoundEvaluation> {
    catalog().iter().map(|s| evaluate(h, s, ctx, tol).expect("context built from h")).collect()
}

/// One row per bound that carries an equality characterization.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EqualityRecord {
    pub bound_id: &'static str,
    pub rule: EqualityRule,
    pub assurance: Assurance,
    pub expected: Option<bool>,
    pub observed: Option<bool>,
    pub consistent: Option<bool>,
}

pub fn equality_consistency_report(evals: &[BoundEvaluation]) -> Vec<EqualityRecord> {
    evals
        .iter()
        .filter_map(|e| {
            let eq = spec(e.bound_id)?.equality?;
            Some(EqualityRecord {
                bound_id: e.bound_id,
                rule: eq.rule,
                assurance: eq.assurance,
                expected: e.equality_expected,
                observed: e.equality_observed,
                consistent: e.consistent,
            })
        })
        .collect()
}

pub const CSV_HEADER: [&str; 12] = [
    "bound_id",
    "target",
    "assurance",
    "applicable",
    "reason",
    "lhs",
    "rhs",
    "slack",
    "holds",
    "equality_expected",
    "equality_observed",
    "consistent",
];

/// Writes the evaluations as CSV. Floats use the shortest round-trip form;
/// absent values are empty cells.
pub fn write_csv<W: io::Write>(evals: &[BoundEvaluation], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for e in evals {
        w.write_record([
            e.bound_id.to_string(),
            e.target.as_str().to_string(),
            e.assurance.as_str().to_string(),
            e.applicable.to_string(),
            e.reason.clone().unwrap_or_default(),
            opt_float_cell(e.lhs),
            opt_float_cell(e.rhs),
            opt_float_cell(e.slack),
            opt_bool_cell(e.holds),
            opt_bool_cell(e.equality_expected),
            opt_bool_cell(e.equality_observed),
            opt_bool_cell(e.consistent),
        ])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{complete_bipartite_graph, complete_uniform, single_edge};

    fn by_id<'a>(evals: &'a [BoundEvaluation], id: &str) -> &'a BoundEvaluation {
        evals.iter().find(|e| e.bound_id == id).unwrap()
    }

    fn close(a: Option<f64>, b: f64) -> bool {
        a.is_some_and(|a| (a - b).abs() < 1e-9)
    }

    #[test]
    fn single_edge_three() {
        let evals = evaluate_all(&single_edge(3).unwrap());
        assert!(evals.iter().all(|e| !e.is_asserted_failure()), "{evals:#?}");
        for id in ["B01", "B04", "B05", "B06", "B07", "B08", "B14", "B18", "B24"] {
            assert_eq!(by_id(&evals, id).equality_observed, Some(true), "{id}");
        }
        let b01 = by_id(&evals, "B01");
        assert!(close(b01.rhs, 2.0) && b01.equality_expected == Some(true) && b01.consistent == Some(true));
        let b18 = by_id(&evals, "B18");
        assert!(close(b18.rhs, 1.5));
        assert_eq!(b18.terms["form_n_minus_2"], 1.0);
        assert!((b18.terms["form_t"] - 0.5).abs() < 1e-12);
        assert!(close(by_id(&evals, "B08").rhs, 2.0));
        assert!(close(by_id(&evals, "B24").rhs, 1.5));
    }

    #[test]
    fn complete_uniform_four_three() {
        let evals = evaluate_all(&complete_uniform(4, 3).unwrap());
        let b05 = by_id(&evals, "B05");
        // the upper side binds since q_max = 6 = 2 d_max
        assert!(close(b05.rhs, 6.0) && b05.equality_observed == Some(true));
        let b01 = by_id(&evals, "B01");
        assert!(close(b01.rhs, (3.0 + 45f64.sqrt()) / 2.0));
        assert_eq!((b01.equality_expected, b01.equality_observed, b01.consistent), (Some(false), Some(false), Some(true)));
        let b04 = by_id(&evals, "B04");
        assert!(close(b04.rhs, 6.0) && b04.consistent == Some(true));
    }

    #[test]
    fn b02_finding_on_k23() {
        let evals = evaluate_all(&complete_bipartite_graph(2, 3).unwrap());
        let b02 = by_id(&evals, "B02");
        assert!(close(b02.lhs, 5.0) && close(b02.rhs, 7.0));
        assert_eq!(b02.holds, Some(false));
        assert_eq!(b02.assurance, Assurance::Audited);
        assert!(b02.is_finding() && !b02.is_asserted_failure());
        assert!(evals.iter().all(|e| !e.is_asserted_failure()));
    }

    #[test]
    fn b08_condition() {
        let remark = Hypergraph::new(7, vec![vec![1, 2, 3], vec![3, 4, 5], vec![3, 6, 7]]).unwrap();
        let b08 = by_id(&evaluate_all(&remark), "B08").clone();
        assert!(!b08.applicable);
        assert!(b08.reason.unwrap().contains("(18 > 9)"));
        assert_eq!(b08.terms["radicand"], -8.0);
        let ok = Hypergraph::new(5, vec![vec![1, 2, 3], vec![1, 4, 5], vec![3, 4, 5]]).unwrap();
        let b08 = by_id(&evaluate_all(&ok), "B08").clone();
        assert_eq!((b08.terms["condition_lhs"], b08.terms["condition_rhs"]), (8.0, 9.0));
    }

    #[test]
    fn gate_and_mismatch() {
        let path = Hypergraph::new(4, vec![vec![1, 2], vec![3, 4]]).unwrap();
        let evals = evaluate_all(&path);
        assert!(evals.iter().all(|e| !e.applicable && e.reason.as_deref() == Some("hypergraph is not connected")));
        let mixed = Hypergraph::new(4, vec![vec![1, 2, 3], vec![3, 4]]).unwrap();
        assert!(evaluate_all(&mixed).iter().all(|e| e.reason.as_deref() == Some("hypergraph is not uniform")));
        let h = single_edge(3).unwrap();
        let ctx = Context::build(&h, DEFAULT_TOL).unwrap();
        let other = single_edge(4).unwrap();
        assert_eq!(evaluate(&other, &catalog()[0], &ctx, Tolerances::default()), Err(BoundError::ContextMismatch));
    }

    #[test]
    fn equality_report_and_csv() {
        let evals = evaluate_all(&single_edge(3).unwrap());
        let report = equality_consistency_report(&evals);
        let ids: Vec<&str> = report.iter().map(|r| r.bound_id).collect();
        assert_eq!(ids, ["B01", "B02", "B04", "B05", "B11", "B18", "B24"]);
        assert_eq!(report[0].consistent, Some(true));
        let mut buf = Vec::new();
        write_csv(&evals, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.lines().count(), 26);
        assert!(text.starts_with(&CSV_HEADER.join(",")));
        assert!(text.contains("B17,spreadLower,asserted,true,,1.5,1,0.5,true,,false,"));
    }
}
