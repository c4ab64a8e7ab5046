//! Corpus sweeps: evaluate the whole catalog over a grid of seeded random
//! hypergraphs and aggregate per-bound statistics.
//!
//! Instances are evaluated in parallel but gathered in `(n, k, m, sample)`
//! order, so the CSV bytes do not depend on the worker count.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{catalog, evaluate_all_with, evaluate_catalog, Assurance, BoundEvaluation, Context, Tolerances};
use crate::eigen::{SpectralSummary, DEFAULT_TOL};
use crate::generate::{instance_seed, min_connected_edges, random_connected_uniform, single_edge};
use crate::hypergraph::{binomial, Hypergraph};
use crate::report::{float_cell, opt_bool_cell, opt_float_cell};

/// Examples kept per bound for audited findings; violations are all kept.
pub const FINDING_EXAMPLES: usize = 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub enum SweepFamily {
    /// Seeded random connected `k`-uniform hypergraphs over the full grid.
    RandomConnectedUniform,
    /// `singleEdge(k)` for each `k`; the `n` and `m` ranges are ignored.
    SingleEdge,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepConfig {
    pub family: SweepFamily,
    pub n_range: RangeInclusive<usize>,
    pub k_set: Vec<usize>,
    pub m_range: RangeInclusive<usize>,
    pub samples: usize,
    pub seed: u64,
    #[serde(skip)]
    pub tolerances: Tolerances,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("empty range: {0}")]
    EmptyRange(&'static str),
    #[error("samples must be at least 1")]
    NoSamples,
    #[error("k must be at least 2, got {0}")]
    BadRank(usize),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl SweepConfig {
    pub fn validate(&self) -> Result<(), SweepError> {
        if self.n_range.is_empty() {
            return Err(SweepError::EmptyRange("n"));
        }
        if self.m_range.is_empty() {
            return Err(SweepError::EmptyRange("m"));
        }
        if self.k_set.is_empty() {
            return Err(SweepError::EmptyRange("k"));
        }
        if let Some(&k) = self.k_set.iter().find(|&&k| k < 2) {
            return Err(SweepError::BadRank(k));
        }
        if self.samples == 0 {
            return Err(SweepError::NoSamples);
        }
        Ok(())
    }
}

/// One grid point that produced no instances, and why.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SkippedCell {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InstanceKey {
    pub n: usize,
    pub k: usize,
    pub m: usize,
    pub sample: usize,
    pub instance_seed: u64,
}

/// Evaluations for one hypergraph.
#[derive(Debug, Clone, PartialEq)]
pub struct InstanceResult {
    pub key: InstanceKey,
    pub edge_hash: u64,
    pub summary: Option<SpectralSummary>,
    pub evaluations: Vec<BoundEvaluation>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct BoundSummary {
    pub bound_id: &'static str,
    pub assurance: Assurance,
    pub applicable: usize,
    pub resource_capped: usize,
    pub min_slack: Option<f64>,
    pub equality_hits: usize,
    pub violations: usize,
    pub findings: usize,
}

/// A failing `(instance, bound)` pair with the command that rebuilds the
/// instance.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct FailureRecord {
    pub bound_id: &'static str,
    #[serde(flatten)]
    pub key: InstanceKey,
    pub edge_hash: String,
    pub slack: Option<f64>,
    pub holds: Option<bool>,
    pub consistent: Option<bool>,
    pub reproducer: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct SweepSummary {
    pub config: SweepConfig,
    pub instances: usize,
    pub skipped_cells: Vec<SkippedCell>,
    pub bounds: Vec<BoundSummary>,
    pub violations: Vec<FailureRecord>,
    pub findings: Vec<FailureRecord>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub instances: Vec<InstanceResult>,
    pub summary: SweepSummary,
}

fn plan(config: &SweepConfig) -> (Vec<InstanceKey>, Vec<SkippedCell>) {
    let mut keys = Vec::new();
    let mut skipped = Vec::new();
    let mut ks = config.k_set.clone();
    ks.sort_unstable();
    ks.dedup();
    if config.family == SweepFamily::SingleEdge {
        for k in ks {
            keys.push(InstanceKey { n: k, k, m: 1, sample: 0, instance_seed: 0 });
        }
        return (keys, skipped);
    }
    for n in config.n_range.clone() {
        for &k in &ks {
            for m in config.m_range.clone() {
                let lo = if n >= k { min_connected_edges(n, k).max(1) } else { 0 };
                let reason = if n < k {
                    Some(format!("k = {k} exceeds n = {n}"))
                } else if m < lo {
                    Some(format!("m = {m} below the {lo} edges needed for connectivity"))
                } else if m as u128 > binomial(n as i64, k as i64) {
                    Some(format!("m = {m} exceeds C({n},{k})"))
                } else {
                    None
                };
                if let Some(reason) = reason {
                    skipped.push(SkippedCell { n, k, m, reason });
                    continue;
                }
                for sample in 0..config.samples {
                    let coords = [n as u64, k as u64, m as u64, sample as u64];
                    let instance_seed = instance_seed(config.seed, &coords);
                    keys.push(InstanceKey { n, k, m, sample, instance_seed });
                }
            }
        }
    }
    (keys, skipped)
}

fn build(config: &SweepConfig, key: &InstanceKey) -> Hypergraph {
    match config.family {
        SweepFamily::SingleEdge => single_edge(key.k),
        SweepFamily::RandomConnectedUniform => random_connected_uniform(key.n, key.k, key.m, key.instance_seed),
    }
    .expect("planned cells are feasible")
}

fn run_instance(config: &SweepConfig, key: InstanceKey) -> InstanceResult {
    let h = build(config, &key);
    let (summary, evaluations) = match Context::build(&h, DEFAULT_TOL) {
        Ok(ctx) => (Some(ctx.summary), evaluate_catalog(&h, &ctx, config.tolerances)),
        Err(_) => (None, evaluate_all_with(&h, config.tolerances)),
    };
    InstanceResult { key, edge_hash: h.edge_hash(), summary, evaluations }
}

/// Runs the sweep on a pool of `workers` threads.
pub fn run_sweep(config: &SweepConfig, workers: usize) -> Result<SweepResult, SweepError> {
    config.validate()?;
    let (keys, skipped) = plan(config);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .map_err(|e| SweepError::Pool(e.to_string()))?;
    let instances: Vec<InstanceResult> =
        pool.install(|| keys.par_iter().map(|&key| run_instance(config, key)).collect());
    let summary = summarize(config, &instances, skipped);
    Ok(SweepResult { instances, summary })
}

fn reproducer(config: &SweepConfig, key: &InstanceKey) -> String {
    match config.family {
        SweepFamily::SingleEdge => format!("hyperspectra generate singleEdge {}", key.k),
        SweepFamily::RandomConnectedUniform => format!(
            "hyperspectra generate randomConnectedUniform {} {} {} --seed {}",
            key.n, key.k, key.m, key.instance_seed
        ),
    }
}

fn summarize(config: &SweepConfig, instances: &[InstanceResult], skipped_cells: Vec<SkippedCell>) -> SweepSummary {
    let mut bounds: Vec<BoundSummary> = catalog()
        .iter()
        .map(|s| BoundSummary {
            bound_id: s.id,
            assurance: s.assurance,
            applicable: 0,
            resource_capped: 0,
            min_slack: None,
            equality_hits: 0,
            violations: 0,
            findings: 0,
        })
        .collect();
    let mut violations = Vec::new();
    let mut findings = Vec::new();
    let mut examples: BTreeMap<&str, usize> = BTreeMap::new();
    for inst in instances {
        for (b, e) in bounds.iter_mut().zip(&inst.evaluations) {
            if e.reason.as_deref().is_some_and(|r| r.starts_with("resource cap")) {
                b.resource_capped += 1;
            }
            let Some(slack) = e.slack else { continue };
            b.applicable += 1;
            b.min_slack = Some(b.min_slack.map_or(slack, |m: f64| m.min(slack)));
            b.equality_hits += usize::from(e.equality_observed == Some(true));
            let record = || FailureRecord {
                bound_id: e.bound_id,
                key: inst.key,
                edge_hash: format!("{:016x}", inst.edge_hash),
                slack: e.slack,
                holds: e.holds,
                consistent: e.consistent,
                reproducer: reproducer(config, &inst.key),
            };
            if e.is_asserted_failure() {
                b.violations += 1;
                violations.push(record());
            }
            if e.is_finding() {
                b.findings += 1;
                let seen = examples.entry(e.bound_id).or_default();
                if *seen < FINDING_EXAMPLES {
                    *seen += 1;
                    findings.push(record());
                }
            }
        }
    }
    SweepSummary { config: config.clone(), instances: instances.len(), skipped_cells, bounds, violations, findings }
}

pub const SWEEP_CSV_HEADER: [&str; 16] = [
    "n",
    "k",
    "m",
    "sample",
    "instance_seed",
    "edge_hash",
    "q_max",
    "q_min",
    "s_q",
    "bound_id",
    "assurance",
    "applicable",
    "slack",
    "holds",
    "equality_expected",
    "equality_observed",
];

impl SweepResult {
    /// One row per `(instance, bound)` pair.
    pub fn to_csv(&self) -> csv::Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(SWEEP_CSV_HEADER)?;
        for inst in &self.instances {
            let k = inst.key;
            let s = inst.summary;
            let digest = [
                k.n.to_string(),
                k.k.to_string(),
                k.m.to_string(),
                k.sample.to_string(),
                k.instance_seed.to_string(),
                format!("{:016x}", inst.edge_hash),
                opt_float_cell(s.map(|s| s.q_max)),
                opt_float_cell(s.map(|s| s.q_min)),
                opt_float_cell(s.map(|s| s.s_q)),
            ];
            for e in &inst.evaluations {
                let mut row = digest.to_vec();
                row.extend([
                    e.bound_id.to_string(),
                    e.assurance.as_str().to_string(),
                    e.applicable.to_string(),
                    e.slack.map(float_cell).unwrap_or_default(),
                    opt_bool_cell(e.holds),
                    opt_bool_cell(e.equality_expected),
                    opt_bool_cell(e.equality_observed),
                ]);
                w.write_record(&row)?;
            }
        }
        w.into_inner().map_err(|e| e.into_error().into())
    }

    pub fn summary_json(&self) -> String {
        serde_json::to_string_pretty(&self.summary).expect("summary serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn config(family: SweepFamily, n: RangeInclusive<usize>, k: Vec<usize>, samples: usize) -> SweepConfig {
        SweepConfig {
            family,
            n_range: n,
            k_set: k,
            m_range: 1..=6,
            samples,
            seed: 7,
            tolerances: Tolerances::default(),
        }
    }

    #[test]
    fn plan_skips_infeasible_cells() {
        let (keys, skipped) = plan(&config(SweepFamily::RandomConnectedUniform, 3..=4, vec![3], 2));
        // n = 3: only m = 1; n = 4: m in 2..=4 (one edge cannot cover 4 vertices)
        assert_eq!(keys.len(), 2 * (1 + 3));
        assert_eq!(skipped.len(), 5 + 3);
        assert!(skipped.iter().any(|c| c.reason.contains("exceeds C(4,3)")));
    }

    #[test]
    fn single_edge_family() {
        let r = run_sweep(&config(SweepFamily::SingleEdge, 1..=1, (3..=12).collect(), 1), 2).unwrap();
        for inst in &r.instances {
            let k = inst.key.k as f64;
            assert!((inst.summary.unwrap().s_q - (1.0 + 1.0 / (k - 1.0))).abs() < 1e-9);
        }
        assert!(r.summary.violations.is_empty());
    }

    #[test]
    fn worker_count_does_not_change_bytes() {
        let c = config(SweepFamily::RandomConnectedUniform, 4..=6, vec![2, 3], 2);
        let one = run_sweep(&c, 1).unwrap();
        let four = run_sweep(&c, 4).unwrap();
        assert_eq!(one.to_csv().unwrap(), four.to_csv().unwrap());
        assert_eq!(one.summary_json(), four.summary_json());
    }

    #[test]
    fn rejects_bad_config() {
        let mut c = config(SweepFamily::RandomConnectedUniform, 4..=3, vec![2], 1);
        assert_eq!(run_sweep(&c, 1).unwrap_err(), SweepError::EmptyRange("n"));
        c.n_range = 4..=4;
        c.samples = 0;
        assert_eq!(c.validate(), Err(SweepError::NoSamples));
    }
}
