//! Wall-clock comparison of chi and omega on Watts–Strogatz graphs.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::generators::{watts_strogatz, GeneratorSpec, Model};
use crate::metrics::{chi, omega};
use crate::walker::WalkerConfig;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TimedMetric {
    Chi,
    Omega,
}

impl TimedMetric {
    pub fn as_str(self) -> &'static str {
        match self {
            Self::Chi => "chi",
            Self::Omega => "omega",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Timing {
    pub n: usize,
    pub metric: TimedMetric,
    /// Memory for chi rows, `None` for omega.
    pub mu: Option<usize>,
    pub median_ms: f64,
    pub samples_ms: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchConfig {
    pub sizes: Vec<usize>,
    pub mean_degree: usize,
    pub p: f64,
    pub mus: Vec<usize>,
    pub repeats: usize,
    pub realizations: usize,
    pub seed: u64,
}

pub fn median(values: &[f64]) -> f64 {
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let m = v.len();
    if m == 0 {
        f64::NAN
    } else if m % 2 == 1 {
        v[m / 2]
    } else {
        0.5 * (v[m / 2 - 1] + v[m / 2])
    }
}

fn time_ms<F: FnMut() -> Result<()>>(repeats: usize, mut f: F) -> Result<Vec<f64>> {
    (0..repeats)
        .map(|_| {
            let start = Instant::now();
            f()?;
            Ok(start.elapsed().as_secs_f64() * 1e3)
        })
        .collect()
}

/// Times chi (per memory) and omega on one WS graph per size. Rows come back
/// sorted by metric, then size, then memory.
pub fn run_bench(cfg: &BenchConfig) -> Result<Vec<Timing>> {
    if cfg.repeats == 0 {
        return Err(invalid("repeats", "must be at least 1"));
    }
    let mut rows = Vec::new();
    for &n in &cfg.sizes {
        let g = watts_strogatz(&GeneratorSpec {
            model: Model::WattsStrogatz,
            n,
            mean_degree: cfg.mean_degree,
            rewiring_p: cfg.p,
            seed: cfg.seed,
        })?;
        for &mu in &cfg.mus {
            let wc = WalkerConfig::new(mu);
            let samples = time_ms(cfg.repeats, || chi(&g, wc, cfg.realizations, cfg.seed).map(drop))?;
            rows.push(Timing {
                n,
                metric: TimedMetric::Chi,
                mu: Some(mu),
                median_ms: median(&samples),
                samples_ms: samples,
            });
        }
        let samples = time_ms(cfg.repeats, || omega(&g, cfg.realizations, cfg.seed).map(drop))?;
        rows.push(Timing {
            n,
            metric: TimedMetric::Omega,
            mu: None,
            median_ms: median(&samples),
            samples_ms: samples,
        });
    }
    rows.sort_by_key(|r| (r.metric, r.n, r.mu));
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_values() {
        assert_eq!(median(&[3.0]), 3.0);
        assert_eq!(median(&[5.0, 1.0, 3.0]), 3.0);
        assert_eq!(median(&[4.0, 1.0, 3.0, 2.0]), 2.5);
    }

    #[test]
    fn rows_are_sorted() {
        let rows = run_bench(&BenchConfig {
            sizes: vec![120, 60],
            mean_degree: 4,
            p: 0.1,
            mus: vec![2, 1],
            repeats: 1,
            realizations: 1,
            seed: 0,
        })
        .unwrap();
        let keys: Vec<_> = rows.iter().map(|r| (r.metric, r.n, r.mu)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(rows.len(), 6);
        assert!(rows.iter().all(|r| r.samples_ms.len() == 1 && r.median_ms == r.samples_ms[0]));
    }
}
