//! Modified deterministic tourist walk.
//!
//! A walker may only move to a neighbor whose degree differs from the degree
//! of its current node. Among those, it picks the one whose local clustering
//! is closest to the current node's, skipping anything in its memory window
//! (the last `memory` visited nodes, current node included). Ties go to the
//! lowest node id.
//!
//! The walk is a deterministic map on the memory window, so the first
//! repeated window closes the attractor: the transient is the index of its
//! first occurrence and the attractor is the gap between the two.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WalkerConfig {
    pub memory: usize,
    /// Move budget; `None` means the network size.
    pub max_steps: Option<usize>,
}

impl WalkerConfig {
    pub fn new(memory: usize) -> Self {
        Self {
            memory,
            max_steps: None,
        }
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = Some(max_steps);
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.memory == 0 {
            return Err(invalid("memory", "must be at least 1"));
        }
        if let Some(m) = self.max_steps {
            if m < self.memory + 1 {
                return Err(invalid(
                    "max_steps",
                    format!("{m} is below memory + 1 = {}", self.memory + 1),
                ));
            }
        }
        Ok(())
    }

    pub fn max_steps_for(&self, g: &Graph) -> usize {
        self.max_steps.unwrap_or_else(|| g.node_count())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopReason {
    /// No node in the graph has a candidate neighbor.
    FrozenRegular,
    /// The walker ran out of admissible moves.
    LocallyStuck,
    AttractorFound,
    MaxStepsExceeded,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkOutcome {
    pub transient: usize,
    pub attractor: usize,
    pub stop_reason: StopReason,
}

impl WalkOutcome {
    /// Trajectory length `t + a`.
    pub fn length(&self) -> usize {
        self.transient + self.attractor
    }
}

/// Neighbors of `i` whose degree differs from `i`'s, ascending.
pub fn candidates(g: &Graph, i: usize) -> Result<Vec<usize>> {
    let ki = g.degree(i)?;
    Ok(g
        .neighbors(i)
        .iter()
        .copied()
        .filter(|&j| g.degree_unchecked(j) != ki)
        .collect())
}

fn best_move(g: &Graph, clustering: &[f64], window: &[usize]) -> Option<usize> {
    let i = *window.last()?;
    let ki = g.degree_unchecked(i);
    let ci = clustering[i];
    let mut best: Option<(f64, usize)> = None;
    // neighbors are ascending, so keeping the first strict minimum is the lowest-id tie-break
    for &j in g.neighbors(i) {
        if g.degree_unchecked(j) == ki || window.contains(&j) {
            continue;
        }
        let diff = (ci - clustering[j]).abs();
        if best.is_none_or(|(d, _)| diff < d) {
            best = Some((diff, j));
        }
    }
    best.map(|(_, j)| j)
}

/// One move from the last node of `memory_window`, or `None` when every
/// candidate is excluded.
pub fn step(g: &Graph, memory_window: &[usize]) -> Result<Option<usize>> {
    let Some(&i) = memory_window.last() else {
        return Err(Error::EmptyInput("memory window must hold the current node"));
    };
    g.degree(i)?;
    Ok(best_move(g, g.local_clusterings(), memory_window))
}

/// Walker bound to one graph and configuration.
#[derive(Debug, Clone)]
pub struct TouristWalker<'g> {
    graph: &'g Graph,
    clustering: &'g [f64],
    memory: usize,
    max_steps: usize,
    frozen: bool,
}

impl<'g> TouristWalker<'g> {
    pub fn new(graph: &'g Graph, cfg: WalkerConfig) -> Result<Self> {
        cfg.validate()?;
        let frozen = graph
            .edges()
            .all(|(u, v)| graph.degree_unchecked(u) == graph.degree_unchecked(v));
        Ok(Self {
            graph,
            clustering: graph.local_clusterings(),
            memory: cfg.memory,
            max_steps: cfg.max_steps_for(graph),
            frozen,
        })
    }

    /// True when no node in the graph has a candidate neighbor.
    pub fn is_frozen(&self) -> bool {
        self.frozen
    }

    pub fn walk(&self, start: usize) -> Result<WalkOutcome> {
        self.run(start, None)
    }

    /// Like [`walk`](Self::walk) but also returns the visited node sequence,
    /// starting node first.
    pub fn walk_traced(&self, start: usize) -> Result<(WalkOutcome, Vec<usize>)> {
        let mut trace = Vec::new();
        let outcome = self.run(start, Some(&mut trace))?;
        Ok((outcome, trace))
    }

    fn window(&self, end: usize) -> std::ops::Range<usize> {
        let len = self.memory.min(end + 1);
        end + 1 - len..end + 1
    }

    fn run(&self, start: usize, trace: Option<&mut Vec<usize>>) -> Result<WalkOutcome> {
        self.graph.degree(start)?;
        let outcome = |transient, attractor, stop_reason| WalkOutcome {
            transient,
            attractor,
            stop_reason,
        };
        if self.frozen {
            if let Some(t) = trace {
                *t = vec![start];
            }
            return Ok(outcome(0, 0, StopReason::FrozenRegular));
        }

        let mut path = vec![start];
        let mut seen: HashMap<usize, Vec<usize>> = HashMap::new();
        seen.insert(start, vec![0]);
        let result = loop {
            let moves = path.len() - 1;
            let cur = self.window(moves);
            let Some(next) = best_move(self.graph, self.clustering, &path[cur]) else {
                break outcome(moves, 0, StopReason::LocallyStuck);
            };
            if moves == self.max_steps {
                break outcome(self.max_steps, 0, StopReason::MaxStepsExceeded);
            }
            path.push(next);
            let now = moves + 1;
            let now_win = self.window(now);
            let earlier = seen.entry(next).or_default();
            if let Some(&first) = earlier
                .iter()
                .find(|&&s| path[self.window(s)] == path[now_win.clone()])
            {
                break outcome(first, now - first, StopReason::AttractorFound);
            }
            earlier.push(now);
        };
        if let Some(t) = trace {
            *t = path;
        }
        Ok(result)
    }

    /// Outcomes for every start node, in node order, computed in parallel.
    pub fn walk_all(&self) -> Vec<WalkOutcome> {
        (0..self.graph.node_count())
            .into_par_iter()
            .map(|s| self.run(s, None).expect("start ids are in range"))
            .collect()
    }

    pub fn walk_all_serial(&self) -> Vec<WalkOutcome> {
        (0..self.graph.node_count())
            .map(|s| self.run(s, None).expect("start ids are in range"))
            .collect()
    }
}

pub fn walk(g: &Graph, start: usize, cfg: WalkerConfig) -> Result<WalkOutcome> {
    TouristWalker::new(g, cfg)?.walk(start)
}

pub fn walk_all(g: &Graph, cfg: WalkerConfig) -> Result<Vec<WalkOutcome>> {
    Ok(TouristWalker::new(g, cfg)?.walk_all())
}
