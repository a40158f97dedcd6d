//! Exact minimum terminal cuts via max-flow, the canonical minimal source
//! side, a uniqueness test, and an independent brute-force oracle.
//!
//! The flow algorithm is shortest-augmenting-path (breadth-first) so the
//! number of augmentations is bounded by the graph size alone, independent of
//! capacity magnitudes; exact rational capacities therefore always terminate.
//! Multi-terminal sides are handled with a super-source and super-sink whose
//! attachment capacity exceeds the total graph capacity. The returned source
//! side is the residual-reachability closure of the sources under a maximum
//! flow, which is the unique inclusion-minimal minimum-cut side and is
//! contained in every other minimizer.

use crate::graph::CapGraph;
use crate::scalar::{min2, Scalar};
use crate::{Error, Result};
use std::collections::{BTreeSet, VecDeque};

/// Value and inclusion-minimal source side of one minimum terminal cut.
#[derive(Debug, Clone, PartialEq)]
pub struct MinCutResult<S> {
    pub value: S,
    pub source_side: BTreeSet<String>,
}

/// Minimum cut separating `subset` from the remaining terminals.
pub fn min_terminal_cut<S: Scalar>(
    g: &CapGraph<S>,
    subset: &BTreeSet<String>,
) -> Result<MinCutResult<S>> {
    require_nonnegative(g)?;
    let (sources, sinks) = split_terminals(g, subset)?;
    let solution = solve_min_cut(g, &sources, &sinks);
    let value = g.cut_value_mask(&solution.side_mask);
    debug_assert!(value == solution.flow, "flow/cut duality violated");
    Ok(MinCutResult {
        value,
        source_side: mask_to_names(g, &solution.side_mask),
    })
}

/// Whether exactly one vertex set attains the minimum cut for `subset`.
///
/// Decided by comparing the minimal source side computed from `subset` with
/// the complement of the minimal source side computed from the complementary
/// terminal set; the two coincide exactly when the minimizer is unique.
pub fn is_unique_min_terminal_cut<S: Scalar>(
    g: &CapGraph<S>,
    subset: &BTreeSet<String>,
) -> Result<bool> {
    require_nonnegative(g)?;
    let (sources, sinks) = split_terminals(g, subset)?;
    let forward = solve_min_cut(g, &sources, &sinks);
    let backward = solve_min_cut(g, &sinks, &sources);
    let forward_size = forward.side_mask.iter().filter(|&&b| b).count();
    let backward_size = backward.side_mask.iter().filter(|&&b| b).count();
    Ok(forward_size + backward_size == g.vertex_count())
}

/// Exhaustive oracle: exact minimum and all minimizing sides.
///
/// Enumerates every placement of the non-terminals (guarded to 24 vertices)
/// and therefore also works on graphs with negative capacities, which the
/// flow engine rejects. Minimizers are reported in enumeration order, which
/// starts from the bare terminal subset.
pub fn brute_force_min_terminal_cut<S: Scalar>(
    g: &CapGraph<S>,
    subset: &BTreeSet<String>,
) -> Result<(S, Vec<BTreeSet<String>>)> {
    let n = g.vertex_count();
    if n > 24 {
        return Err(Error::GuardExceeded {
            what: "brute-force cut enumeration",
            limit: 24,
            actual: n,
        });
    }
    let (sources, _) = split_terminals(g, subset)?;
    let nonterminals: Vec<usize> = (0..n)
        .filter(|i| !g.terminal_indices().contains(i))
        .collect();

    let mut mask = vec![false; n];
    for &u in &sources {
        mask[u] = true;
    }
    let mut best: Option<S> = None;
    let mut minimizers: Vec<Vec<bool>> = Vec::new();
    for bits in 0u32..(1u32 << nonterminals.len()) {
        for (pos, &v) in nonterminals.iter().enumerate() {
            mask[v] = bits & (1 << pos) != 0;
        }
        let value = g.cut_value_mask(&mask);
        match &best {
            Some(b) if value > *b => {}
            Some(b) if value == *b => minimizers.push(mask.clone()),
            _ => {
                best = Some(value);
                minimizers = vec![mask.clone()];
            }
        }
    }
    let value = best.expect("at least one placement exists");
    let sides = minimizers.iter().map(|m| mask_to_names(g, m)).collect();
    Ok((value, sides))
}

fn require_nonnegative<S: Scalar>(g: &CapGraph<S>) -> Result<()> {
    match g.first_negative_edge() {
        Some((u, v, cap)) => Err(Error::NegativeCapacity {
            u: u.to_string(),
            v: v.to_string(),
            cap: cap.to_string(),
        }),
        None => Ok(()),
    }
}

/// Split the terminals into source and sink index lists, validating that
/// `subset` is a nonempty proper subset of the terminal set.
fn split_terminals<S: Scalar>(
    g: &CapGraph<S>,
    subset: &BTreeSet<String>,
) -> Result<(Vec<usize>, Vec<usize>)> {
    for name in subset {
        if !g.is_terminal(name) {
            return Err(Error::NotATerminal(name.clone()));
        }
    }
    let mut sources = Vec::new();
    let mut sinks = Vec::new();
    for &t in g.terminal_indices() {
        if subset.contains(g.name_of(t)) {
            sources.push(t);
        } else {
            sinks.push(t);
        }
    }
    if sources.is_empty() || sinks.is_empty() {
        return Err(Error::InvalidTerminalSubset);
    }
    Ok((sources, sinks))
}

fn mask_to_names<S: Scalar>(g: &CapGraph<S>, mask: &[bool]) -> BTreeSet<String> {
    mask.iter()
        .enumerate()
        .filter(|&(_, &b)| b)
        .map(|(i, _)| g.name_of(i).to_string())
        .collect()
}

pub(crate) struct CutSolution<S> {
    pub flow: S,
    /// Membership mask of the inclusion-minimal source side, over graph vertices.
    pub side_mask: Vec<bool>,
}

/// Max-flow between super-source over `sources` and super-sink over `sinks`,
/// plus the residual reachability set.
pub(crate) fn solve_min_cut<S: Scalar>(
    g: &CapGraph<S>,
    sources: &[usize],
    sinks: &[usize],
) -> CutSolution<S> {
    let n = g.vertex_count();
    let (source, sink) = (n, n + 1);
    let mut net = FlowNet::new(n + 2);
    for ((u, v), cap) in g.edges_indexed() {
        net.add_pair(u, v, cap.clone(), cap.clone());
    }
    // Finite surrogate for infinite attachment capacity.
    let big = g.total_capacity() + S::one();
    for &u in sources {
        net.add_pair(source, u, big.clone(), S::zero());
    }
    for &v in sinks {
        net.add_pair(v, sink, big.clone(), S::zero());
    }
    let flow = net.max_flow(source, sink);
    let reachable = net.residual_reachable(source);
    CutSolution {
        flow,
        side_mask: reachable[..n].to_vec(),
    }
}

/// Residual network; edge `e` and `e ^ 1` are each other's reverse.
struct FlowNet<S> {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<S>,
}

impl<S: Scalar> FlowNet<S> {
    fn new(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    fn add_pair(&mut self, u: usize, v: usize, cap_uv: S, cap_vu: S) {
        self.adj[u].push(self.to.len());
        self.to.push(v);
        self.cap.push(cap_uv);
        self.adj[v].push(self.to.len());
        self.to.push(u);
        self.cap.push(cap_vu);
    }

    fn max_flow(&mut self, source: usize, sink: usize) -> S {
        let mut total = S::zero();
        loop {
            // Shortest augmenting path by BFS.
            let mut pred: Vec<Option<usize>> = vec![None; self.adj.len()];
            let mut seen = vec![false; self.adj.len()];
            seen[source] = true;
            let mut queue = VecDeque::from([source]);
            'bfs: while let Some(u) = queue.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.to[e];
                    if !seen[v] && self.cap[e] > S::zero() {
                        seen[v] = true;
                        pred[v] = Some(e);
                        if v == sink {
                            break 'bfs;
                        }
                        queue.push_back(v);
                    }
                }
            }
            if !seen[sink] {
                return total;
            }
            let mut bottleneck: Option<S> = None;
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path edge");
                bottleneck = Some(match bottleneck {
                    None => self.cap[e].clone(),
                    Some(b) => min2(b, self.cap[e].clone()),
                });
                v = self.to[e ^ 1];
            }
            let push = bottleneck.expect("nonempty path");
            let mut v = sink;
            while v != source {
                let e = pred[v].expect("path edge");
                self.cap[e] = self.cap[e].clone() - push.clone();
                self.cap[e ^ 1] = self.cap[e ^ 1].clone() + push.clone();
                v = self.to[e ^ 1];
            }
            total = total + push;
        }
    }

    fn residual_reachable(&self, start: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if !seen[v] && self.cap[e] > S::zero() {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}
