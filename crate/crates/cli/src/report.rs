//! Result, trace and sweep serialization.
//!
//! Floating-point values are written in shortest round-trip form, so parsing
//! them back yields the exact in-memory `f64`. Field order is fixed, making
//! output byte-identical for identical runs.

use std::fmt::Write as _;
use std::path::Path;

use novelty_core::{FeatureMatrix, NoveltyResult, PowerResult, ScheduleKind, SolverConfig, SweepPoint};
use serde::Serialize;

use crate::error::{CliError, Result};
use crate::io::write_atomic;

/// Widest problem for which the trace can carry one column per item.
pub const WIDE_TRACE_MAX_ITEMS: usize = 2_000;

#[derive(Debug, Serialize)]
pub struct ConfigJson {
    pub k: usize,
    pub epochs: usize,
    pub batch: usize,
    pub lr: f64,
    pub momentum: f64,
    pub seed: u64,
    pub power_tol: f64,
    pub power_max_iters: usize,
    pub schedule: &'static str,
}

impl From<&SolverConfig> for ConfigJson {
    fn from(c: &SolverConfig) -> Self {
        Self {
            k: c.k,
            epochs: c.epochs,
            batch: c.batch,
            lr: c.lr,
            momentum: c.momentum,
            seed: c.seed,
            power_tol: c.power_tol,
            power_max_iters: c.power_max_iters,
            schedule: match c.schedule {
                ScheduleKind::Linear => "linear",
            },
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RankedItem {
    pub index: usize,
    pub weight: f64,
}

#[derive(Debug, Serialize)]
pub struct ResultJson {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub config: ConfigJson,
    pub objective: f64,
    pub ranking: Vec<RankedItem>,
    pub degenerate: bool,
    pub epochs_run: usize,
}

impl ResultJson {
    pub fn new(features: &FeatureMatrix, result: &NoveltyResult) -> Self {
        Self {
            n: features.n_items(),
            m: features.n_dims(),
            k: result.config.k,
            config: (&result.config).into(),
            objective: result.objective,
            ranking: result.ranking.iter().map(|&(index, weight)| RankedItem { index, weight }).collect(),
            degenerate: result.degenerate,
            epochs_run: result.epochs_run,
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types always serialize");
    s.push('\n');
    s
}

pub fn save_result(features: &FeatureMatrix, result: &NoveltyResult, path: &Path) -> Result<()> {
    write_atomic(path, to_json(&ResultJson::new(features, result)).as_bytes())
}

/// Per-epoch CSV. In wide mode one `w<i>` column per item follows; that
/// requires `trace_weights` in the config and at most
/// [`WIDE_TRACE_MAX_ITEMS`] items.
pub fn trace_csv(result: &NoveltyResult, wide: bool) -> Result<String> {
    let n = result.weights.len();
    if wide && n > WIDE_TRACE_MAX_ITEMS {
        return Err(CliError::Usage(format!(
            "wide trace supports at most {WIDE_TRACE_MAX_ITEMS} items, got {n}"
        )));
    }
    let mut out = String::from("epoch,k_t,support_size,objective_estimate");
    if wide {
        for i in 0..n {
            write!(out, ",w{i}").unwrap();
        }
    }
    out.push('\n');
    for rec in &result.trace {
        write!(out, "{},{},{},{:?}", rec.epoch, rec.k_t, rec.support_size, rec.objective_estimate).unwrap();
        if wide {
            let weights = rec
                .weights
                .as_ref()
                .ok_or_else(|| CliError::Usage("wide trace needs per-epoch weights".into()))?;
            for w in weights {
                write!(out, ",{w:?}").unwrap();
            }
        }
        out.push('\n');
    }
    Ok(out)
}

pub fn save_trace(result: &NoveltyResult, path: &Path, wide: bool) -> Result<()> {
    write_atomic(path, trace_csv(result, wide)?.as_bytes())
}

pub fn sweep_csv(points: &[SweepPoint]) -> String {
    let mut out =
        String::from("k,precision,recall,f_measure,n_seeds,macro_precision,macro_recall,macro_f_measure\n");
    for p in points {
        writeln!(
            out,
            "{},{:?},{:?},{:?},{},{:?},{:?},{:?}",
            p.k, p.precision, p.recall, p.f_measure, p.n_seeds, p.macro_precision, p.macro_recall, p.macro_f_measure
        )
        .unwrap();
    }
    out
}

#[derive(Debug, Serialize)]
pub struct PowerJson {
    pub n: usize,
    pub m: usize,
    pub tol: f64,
    pub max_iters: usize,
    pub iterations: usize,
    pub converged: bool,
    pub degenerate: bool,
    pub eigenvalue: f64,
    pub ranking: Vec<RankedItem>,
}

impl PowerJson {
    pub fn new(features: &FeatureMatrix, r: &PowerResult, tol: f64, max_iters: usize) -> Self {
        Self {
            n: features.n_items(),
            m: features.n_dims(),
            tol,
            max_iters,
            iterations: r.iterations,
            converged: r.converged,
            degenerate: r.degenerate,
            eigenvalue: r.eigenvalue,
            ranking: r.weights.ranking().into_iter().map(|(index, weight)| RankedItem { index, weight }).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ExactJson {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub subsets: u128,
    pub support: Vec<usize>,
    pub objective: f64,
}

#[cfg(test)]
mod tests {
    use super::*;
    use novelty_core::{ads_solve, sparsity_schedule};

    fn solved(trace_weights: bool) -> (FeatureMatrix, NoveltyResult) {
        let f = FeatureMatrix::new(12, 2, (0..24).map(|i| ((i * 7) % 11) as f64).collect()).unwrap();
        let cfg = SolverConfig::new(3).with_seed(4).with_trace_weights(trace_weights);
        let r = ads_solve(&f, &cfg).unwrap();
        (f, r)
    }

    #[test]
    fn json_ranking_round_trips() {
        let (f, r) = solved(false);
        let text = to_json(&ResultJson::new(&f, &r));
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(v["n"], 12);
        assert_eq!(v["k"], 3);
        assert_eq!(v["config"]["seed"], 4);
        assert_eq!(v["config"]["epochs"], 20);
        assert_eq!(v["epochs_run"], 20);
        let ranking = v["ranking"].as_array().unwrap();
        assert!(ranking.len() <= 3);
        for (item, &(index, weight)) in ranking.iter().zip(&r.ranking) {
            assert_eq!(item["index"].as_u64().unwrap() as usize, index);
            assert_eq!(item["weight"].as_f64().unwrap().to_bits(), weight.to_bits());
        }
        assert_eq!(text, to_json(&ResultJson::new(&f, &r)));
    }

    #[test]
    fn trace_rows_follow_schedule() {
        let (_, r) = solved(false);
        let csv = trace_csv(&r, false).unwrap();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "epoch,k_t,support_size,objective_estimate");
        assert_eq!(lines.len(), 21);
        for (t, line) in lines[1..].iter().enumerate() {
            let cols: Vec<&str> = line.split(',').collect();
            let k_t: usize = cols[1].parse().unwrap();
            assert_eq!(k_t, sparsity_schedule(t + 1, 12, 3, 20));
            assert!(cols[2].parse::<usize>().unwrap() <= k_t);
        }
        assert!(trace_csv(&r, true).is_err());
    }

    #[test]
    fn wide_trace_has_item_columns() {
        let (_, r) = solved(true);
        let csv = trace_csv(&r, true).unwrap();
        let header = csv.lines().next().unwrap();
        assert!(header.ends_with(",w10,w11"));
        assert!(csv.lines().skip(1).all(|l| l.split(',').count() == 4 + 12));
    }
}
