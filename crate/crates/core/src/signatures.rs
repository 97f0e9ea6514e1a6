//! Joint (transient, attractor) histograms and the signature vectors built from them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::walker::WalkOutcome;

/// Normalized counter over `(transient, attractor)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointHistogram {
    counts: BTreeMap<(usize, usize), usize>,
    n_launches: usize,
}

impl JointHistogram {
    pub fn from_outcomes(outcomes: &[WalkOutcome]) -> Result<Self> {
        if outcomes.is_empty() {
            return Err(Error::EmptyInput("no walk outcomes"));
        }
        let mut counts = BTreeMap::new();
        for o in outcomes {
            *counts.entry((o.transient, o.attractor)).or_insert(0) += 1;
        }
        Ok(Self {
            counts,
            n_launches: outcomes.len(),
        })
    }

    pub fn n_launches(&self) -> usize {
        self.n_launches
    }

    pub fn count(&self, transient: usize, attractor: usize) -> usize {
        self.counts.get(&(transient, attractor)).copied().unwrap_or(0)
    }

    /// Fraction of launches ending with exactly this pair.
    pub fn mass(&self, transient: usize, attractor: usize) -> f64 {
        self.count(transient, attractor) as f64 / self.n_launches as f64
    }

    /// Non-zero cells in `(t, a)` order with their mass.
    pub fn cells(&self) -> impl Iterator<Item = ((usize, usize), f64)> + '_ {
        let n = self.n_launches as f64;
        self.counts.iter().map(move |(&k, &c)| (k, c as f64 / n))
    }

    /// Trajectory-length histogram `h(l)`: mass of every cell with `t + a = l`.
    pub fn length_histogram(&self) -> LengthHistogram {
        let mut counts = BTreeMap::new();
        for (&(t, a), &c) in &self.counts {
            *counts.entry(t + a).or_insert(0) += c;
        }
        LengthHistogram {
            counts,
            n_launches: self.n_launches,
        }
    }
}

pub fn joint_histogram(outcomes: &[WalkOutcome]) -> Result<JointHistogram> {
    JointHistogram::from_outcomes(outcomes)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthHistogram {
    counts: BTreeMap<usize, usize>,
    n_launches: usize,
}

impl LengthHistogram {
    pub fn get(&self, length: usize) -> f64 {
        self.counts.get(&length).copied().unwrap_or(0) as f64 / self.n_launches as f64
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        let n = self.n_launches as f64;
        self.counts.iter().map(move |(&l, &c)| (l, c as f64 / n))
    }

    /// Mass at lengths in `range`.
    fn mass_in(&self, range: impl std::ops::RangeBounds<usize>) -> usize {
        self.counts.range(range).map(|(_, &c)| c).sum()
    }
}

/// Column `(memory, trajectory length)` of a signature vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutEntry {
    pub memory: usize,
    pub length: usize,
}

/// Signature vector `[h(0), h(mu+1), ..., h(n)]`, possibly concatenated over
/// several memories.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SignatureVector {
    pub memories: Vec<usize>,
    pub values: Vec<f64>,
    pub layout: Vec<LayoutEntry>,
    /// Per-memory mass that no column holds (lengths `1..=mu`, or above `n`).
    pub residual: Vec<f64>,
}

impl SignatureVector {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Column names such as `m2_l0`, `m2_l3`.
    pub fn column_names(&self) -> Vec<String> {
        self.layout
            .iter()
            .map(|e| format!("m{}_l{}", e.memory, e.length))
            .collect()
    }
}

fn check_memory(mu: usize, n: usize) -> Result<()> {
    if mu == 0 {
        return Err(invalid("mu", "must be at least 1"));
    }
    if n < mu {
        return Err(invalid("n", format!("{n} is below memory {mu}")));
    }
    Ok(())
}

/// Signature for one memory over lengths up to `n` (the network size).
pub fn phi(jh: &JointHistogram, mu: usize, n: usize) -> Result<SignatureVector> {
    check_memory(mu, n)?;
    let h = jh.length_histogram();
    let mut values = Vec::with_capacity(1 + n - mu);
    let mut layout = Vec::with_capacity(1 + n - mu);
    values.push(h.get(0));
    layout.push(LayoutEntry { memory: mu, length: 0 });
    for l in mu + 1..=n {
        values.push(h.get(l));
        layout.push(LayoutEntry { memory: mu, length: l });
    }
    let excluded = h.mass_in(1..=mu) + h.mass_in(n + 1..);
    Ok(SignatureVector {
        memories: vec![mu],
        values,
        layout,
        residual: vec![excluded as f64 / jh.n_launches() as f64],
    })
}

/// Like [`phi`] but laid out for a network of size `n_layout`, folding every
/// length at or above `n_layout` into the last column. Lets graphs of
/// different sizes share one feature layout.
pub fn phi_with_tail(jh: &JointHistogram, mu: usize, n_layout: usize) -> Result<SignatureVector> {
    check_memory(mu, n_layout)?;
    let mut sig = phi(jh, mu, n_layout)?;
    let h = jh.length_histogram();
    let tail = h.mass_in(n_layout + 1..) as f64 / jh.n_launches() as f64;
    if n_layout > mu {
        *sig.values.last_mut().expect("layout has a tail column") += tail;
        sig.residual[0] -= tail;
    }
    Ok(sig)
}

/// Concatenation of per-memory signatures. `mus` must be strictly increasing
/// with one histogram per memory.
pub fn psi(jhs: &[JointHistogram], mus: &[usize], n: usize) -> Result<SignatureVector> {
    concat(jhs, mus, |jh, mu| phi(jh, mu, n))
}

pub fn psi_with_tail(jhs: &[JointHistogram], mus: &[usize], n_layout: usize) -> Result<SignatureVector> {
    concat(jhs, mus, |jh, mu| phi_with_tail(jh, mu, n_layout))
}

fn concat<F>(jhs: &[JointHistogram], mus: &[usize], one: F) -> Result<SignatureVector>
where
    F: Fn(&JointHistogram, usize) -> Result<SignatureVector>,
{
    if jhs.len() != mus.len() {
        return Err(invalid(
            "mus",
            format!("{} memories for {} histograms", mus.len(), jhs.len()),
        ));
    }
    if mus.is_empty() {
        return Err(Error::EmptyInput("no memories"));
    }
    if mus.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid("mus", "must be strictly increasing"));
    }
    let mut out = SignatureVector {
        memories: Vec::new(),
        values: Vec::new(),
        layout: Vec::new(),
        residual: Vec::new(),
    };
    for (jh, &mu) in jhs.iter().zip(mus) {
        let part = one(jh, mu)?;
        out.memories.extend(part.memories);
        out.values.extend(part.values);
        out.layout.extend(part.layout);
        out.residual.extend(part.residual);
    }
    Ok(out)
}

/// Mean of `t + a` over the outcomes.
pub fn mean_trajectory_length(outcomes: &[WalkOutcome]) -> Result<f64> {
    if outcomes.is_empty() {
        return Err(Error::EmptyInput("no walk outcomes"));
    }
    let total: usize = outcomes.iter().map(WalkOutcome::length).sum();
    Ok(total as f64 / outcomes.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walker::StopReason;

    fn o(t: usize, a: usize) -> WalkOutcome {
        let stop_reason = match (t, a) {
            (0, 0) => StopReason::FrozenRegular,
            (_, 0) => StopReason::LocallyStuck,
            _ => StopReason::AttractorFound,
        };
        WalkOutcome {
            transient: t,
            attractor: a,
            stop_reason,
        }
    }

    #[test]
    fn joint_histogram_examples() {
        let jh = joint_histogram(&vec![o(0, 0); 100]).unwrap();
        assert_eq!(jh.cells().collect::<Vec<_>>(), vec![((0, 0), 1.0)]);

        let jh = joint_histogram(&[o(1, 2), o(1, 2), o(3, 0), o(0, 0)]).unwrap();
        assert_eq!(jh.mass(1, 2), 0.5);
        assert_eq!(jh.mass(3, 0), 0.25);
        assert_eq!(jh.mass(0, 0), 0.25);
        assert_eq!(jh.mass(2, 2), 0.0);
        assert!(joint_histogram(&[]).is_err());
    }

    #[test]
    fn length_histogram_examples() {
        let h = joint_histogram(&[o(0, 0)]).unwrap().length_histogram();
        assert_eq!(h.get(0), 1.0);
        assert_eq!(h.get(3), 0.0);

        let h = joint_histogram(&[o(1, 2), o(2, 1)]).unwrap().length_histogram();
        assert_eq!(h.get(3), 1.0);

        let h = joint_histogram(&[o(1, 2), o(4, 3), o(0, 0), o(5, 0)]).unwrap().length_histogram();
        assert!((h.iter().map(|(_, m)| m).sum::<f64>() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn phi_examples() {
        let jh = joint_histogram(&vec![o(0, 0); 10]).unwrap();
        let v = phi(&jh, 2, 10).unwrap();
        assert_eq!(v.values, vec![1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0]);
        assert_eq!(v.layout[1], LayoutEntry { memory: 2, length: 3 });
        assert_eq!(v.residual, vec![0.0]);

        let jh = joint_histogram(&[o(0, 3)]).unwrap();
        let v = phi(&jh, 2, 10).unwrap();
        assert_eq!(&v.values[..3], &[0.0, 1.0, 0.0]);

        // a stuck walker of length 1 falls outside the layout
        let jh = joint_histogram(&[o(1, 0), o(0, 3), o(0, 0), o(0, 0)]).unwrap();
        let v = phi(&jh, 2, 10).unwrap();
        assert_eq!(v.residual, vec![0.25]);
        assert!((v.values.iter().sum::<f64>() + 0.25 - 1.0).abs() < 1e-12);
        assert!(phi(&jh, 0, 10).is_err());
    }

    #[test]
    fn psi_examples() {
        let a = joint_histogram(&[o(0, 2), o(1, 3)]).unwrap();
        let b = joint_histogram(&[o(0, 3), o(0, 0)]).unwrap();
        let v = psi(&[a.clone(), b.clone()], &[1, 2], 10).unwrap();
        assert_eq!(v.len(), 19);
        assert_eq!(v.column_names()[10], "m2_l0");
        assert_eq!(psi(std::slice::from_ref(&a), &[1], 10).unwrap(), phi(&a, 1, 10).unwrap());
        assert!(psi(std::slice::from_ref(&a), &[1, 2], 10).is_err());
        assert!(psi(&[a, b], &[2, 1], 10).is_err());
    }

    #[test]
    fn tail_folding() {
        let jh = joint_histogram(&[o(0, 3), o(6, 4), o(20, 0), o(0, 0)]).unwrap();
        let v = phi_with_tail(&jh, 2, 8).unwrap();
        assert_eq!(v.len(), 7);
        assert_eq!(*v.values.last().unwrap(), 0.5);
        assert_eq!(v.residual, vec![0.0]);
    }

    #[test]
    fn mean_length_examples() {
        assert_eq!(mean_trajectory_length(&[o(0, 0); 7]).unwrap(), 0.0);
        assert_eq!(mean_trajectory_length(&[o(1, 2), o(3, 0)]).unwrap(), 3.0);
        assert!(mean_trajectory_length(&[]).is_err());
    }
}
