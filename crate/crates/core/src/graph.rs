//! Immutable simple undirected graph and the structural measures built on it.
//!
//! Adjacency is stored in compressed sparse row form with every neighbor list
//! sorted ascending. The walker relies on that ordering for its lowest-id
//! tie-break, so every constructor goes through [`Graph::from_edges`] or the
//! crate-private sorted-set path.

use std::collections::VecDeque;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Simple undirected graph on dense node ids `0..n`.
#[derive(Debug, Clone)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    clustering: OnceLock<Vec<f64>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.offsets == other.offsets && self.targets == other.targets
    }
}

impl Eq for Graph {}

/// Per-node degree and local clustering coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NodeMetrics {
    pub degree: usize,
    pub local_clustering: f64,
}

/// Mean shortest-path length over the largest connected component.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PathLength {
    pub mean: f64,
    pub component_size: usize,
    /// Set when the largest component has a single node, in which case `mean` is 0.
    pub degenerate: bool,
}

/// Degree assortativity with a flag for the zero-variance case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Assortativity {
    pub value: f64,
    /// Set when the coefficient is undefined (no edges or equal degrees everywhere); `value` is then 0.
    pub degenerate: bool,
}

impl Graph {
    /// Builds a graph from an undirected edge list.
    ///
    /// Duplicate edges (in either orientation) are collapsed. Self-loops and
    /// endpoints outside `0..n` are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::EmptyInput("graph must have at least one node"));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(Error::NodeOutOfRange {
                        node: x,
                        node_count: n,
                    });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_sorted_adjacency(adj))
    }

    /// Graph with `n` nodes and no edges.
    pub fn edgeless(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    /// Caller guarantees sorted, deduplicated, symmetric lists without self-loops.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<usize>>) -> Self {
        let mut offsets = Vec::with_capacity(adj.len() + 1);
        offsets.push(0);
        let total: usize = adj.iter().map(Vec::len).sum();
        let mut targets = Vec::with_capacity(total);
        for list in adj {
            debug_assert!(list.windows(2).all(|w| w[0] < w[1]));
            targets.extend(list);
            offsets.push(targets.len());
        }
        Self {
            offsets,
            targets,
            clustering: OnceLock::new(),
        }
    }

    pub fn node_count(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Average degree `2|E|/N`.
    pub fn mean_degree(&self) -> f64 {
        self.targets.len() as f64 / self.node_count() as f64
    }

    fn check(&self, i: usize) -> Result<()> {
        if i < self.node_count() {
            Ok(())
        } else {
            Err(Error::NodeOutOfRange {
                node: i,
                node_count: self.node_count(),
            })
        }
    }

    /// Sorted neighbor ids of `i`. Panics when `i` is out of range.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    pub fn degree(&self, i: usize) -> Result<usize> {
        self.check(i)?;
        Ok(self.degree_unchecked(i))
    }

    #[inline]
    pub(crate) fn degree_unchecked(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.offsets.windows(2).map(|w| w[1] - w[0])
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.node_count() && self.neighbors(u).binary_search(&v).is_ok()
    }

    /// Each undirected edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .copied()
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    /// Sorted adjacency lists, one per node.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        (0..self.node_count())
            .map(|i| self.neighbors(i).to_vec())
            .collect()
    }

    pub fn local_clustering(&self, i: usize) -> Result<f64> {
        self.check(i)?;
        Ok(self.local_clusterings()[i])
    }

    /// Local clustering coefficients of all nodes, computed once and cached.
    pub fn local_clusterings(&self) -> &[f64] {
        self.clustering.get_or_init(|| self.compute_clusterings())
    }

    fn compute_clusterings(&self) -> Vec<f64> {
        let n = self.node_count();
        let mut mark = vec![usize::MAX; n];
        (0..n)
            .map(|i| {
                let nbrs = self.neighbors(i);
                let k = nbrs.len();
                if k < 2 {
                    return 0.0;
                }
                for &j in nbrs {
                    mark[j] = i;
                }
                // each neighbor-neighbor edge is seen from both ends
                let twice_links: usize = nbrs
                    .iter()
                    .map(|&j| self.neighbors(j).iter().filter(|&&x| mark[x] == i).count())
                    .sum();
                twice_links as f64 / (k * (k - 1)) as f64
            })
            .collect()
    }

    pub fn node_metrics(&self, i: usize) -> Result<NodeMetrics> {
        self.check(i)?;
        Ok(NodeMetrics {
            degree: self.degree_unchecked(i),
            local_clustering: self.local_clusterings()[i],
        })
    }

    /// Mean of the local clustering coefficients over all nodes.
    pub fn global_clustering(&self) -> f64 {
        let c = self.local_clusterings();
        c.iter().sum::<f64>() / c.len() as f64
    }

    /// Connected components, each sorted ascending, ordered by their lowest node id.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.node_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        let mut queue = VecDeque::new();
        for s in 0..n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            queue.push_back(s);
            let mut comp = Vec::new();
            while let Some(u) = queue.pop_front() {
                comp.push(u);
                for &v in self.neighbors(u) {
                    if !seen[v] {
                        seen[v] = true;
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Induced subgraph on the largest component, relabeled `0..M`, plus the
    /// mapping from new ids to original ids. Ties go to the component holding
    /// the lowest node id.
    pub fn largest_component(&self) -> (Graph, Vec<usize>) {
        let comps = self.components();
        let mut best = 0;
        for (idx, c) in comps.iter().enumerate() {
            if c.len() > comps[best].len() {
                best = idx;
            }
        }
        let members = comps.into_iter().nth(best).unwrap_or_default();
        if members.len() == self.node_count() {
            return (self.clone(), members);
        }
        let mut relabel = vec![usize::MAX; self.node_count()];
        for (new, &old) in members.iter().enumerate() {
            relabel[old] = new;
        }
        let adj = members
            .iter()
            .map(|&old| self.neighbors(old).iter().map(|&v| relabel[v]).collect())
            .collect();
        (Graph::from_sorted_adjacency(adj), members)
    }

    /// Sum of BFS distances from `s` to every reachable node, and the number of
    /// reachable nodes other than `s`.
    fn bfs_distance_sum(&self, s: usize, dist: &mut [u32], queue: &mut VecDeque<usize>) -> (u64, usize) {
        dist.fill(u32::MAX);
        dist[s] = 0;
        queue.clear();
        queue.push_back(s);
        let mut sum = 0u64;
        let mut reached = 0usize;
        while let Some(u) = queue.pop_front() {
            let du = dist[u];
            for &v in self.neighbors(u) {
                if dist[v] == u32::MAX {
                    dist[v] = du + 1;
                    sum += u64::from(du + 1);
                    reached += 1;
                    queue.push_back(v);
                }
            }
        }
        (sum, reached)
    }

    /// Per-node mean distance to the other nodes of its component, for a connected graph.
    fn mean_distances_connected(&self) -> Vec<f64> {
        let n = self.node_count();
        (0..n)
            .into_par_iter()
            .map_init(
                || (vec![u32::MAX; n], VecDeque::new()),
                |(dist, queue), s| {
                    let (sum, reached) = self.bfs_distance_sum(s, dist, queue);
                    if reached == 0 {
                        0.0
                    } else {
                        sum as f64 / reached as f64
                    }
                },
            )
            .collect()
    }

    /// Mean BFS distance over ordered pairs of distinct nodes in the largest component.
    pub fn average_shortest_path(&self) -> PathLength {
        let (lcc, _) = self.largest_component();
        let m = lcc.node_count();
        if m < 2 {
            return PathLength {
                mean: 0.0,
                component_size: m,
                degenerate: true,
            };
        }
        // every node reaches the m-1 others, so the mean of per-node means is the pair mean
        let per_node = lcc.mean_distances_connected();
        PathLength {
            mean: per_node.iter().sum::<f64>() / m as f64,
            component_size: m,
            degenerate: false,
        }
    }

    /// Per-node mean shortest-path length within the largest component.
    pub fn node_mean_distances(&self) -> Vec<f64> {
        let (lcc, _) = self.largest_component();
        lcc.mean_distances_connected()
    }

    /// Pearson correlation of endpoint degrees over both orientations of every edge.
    pub fn assortativity(&self) -> Assortativity {
        let degenerate = Assortativity {
            value: 0.0,
            degenerate: true,
        };
        let m = self.targets.len();
        if m == 0 {
            return degenerate;
        }
        let (mut sx, mut sxx, mut sxy) = (0.0, 0.0, 0.0);
        for u in 0..self.node_count() {
            let ku = self.degree_unchecked(u) as f64;
            for &v in self.neighbors(u) {
                let kv = self.degree_unchecked(v) as f64;
                sx += ku;
                sxx += ku * ku;
                sxy += ku * kv;
            }
        }
        let m = m as f64;
        let mean = sx / m;
        let var = sxx / m - mean * mean;
        if var <= 1e-12 * mean.max(1.0).powi(2) {
            return degenerate;
        }
        let cov = sxy / m - mean * mean;
        Assortativity {
            value: (cov / var).clamp(-1.0, 1.0),
            degenerate: false,
        }
    }
}
