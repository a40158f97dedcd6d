//! Construction of exact cut sparsifiers by signature clustering, exact
//! verification against the original graph, and a brute-force optimality
//! certificate for contraction-based sparsifiers.
//!
//! Two vertices belong to the same cluster exactly when they fall on the same
//! side of every minimum terminal cut; clusters are contracted with summed
//! capacities. Only the `p` computed minimal cuts are ever materialized — the
//! partition is a hash of per-vertex bit vectors, never an enumeration of all
//! `2^p` sign patterns.

use crate::cuts::{canonical_subsets, cut_family, TerminalCutFamily};
use crate::graph::{CapGraph, Cluster, VertexPartition};
use crate::mincut::{brute_force_min_terminal_cut, min_terminal_cut};
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

/// Per-vertex membership bits across the canonical minimum terminal cuts:
/// bit `i` is set when the vertex lies in the minimal source side of cut `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CutSignature {
    bits: Vec<bool>,
}

impl CutSignature {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn bit(&self, i: usize) -> bool {
        self.bits[i]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }
}

impl fmt::Display for CutSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.bits {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Signature of every vertex of `g` with respect to a computed cut family.
pub fn signatures<S: Scalar>(
    g: &CapGraph<S>,
    family: &TerminalCutFamily<S>,
) -> Result<BTreeMap<String, CutSignature>> {
    let terminals: Vec<String> = g.terminal_names().iter().map(|s| s.to_string()).collect();
    let subsets = canonical_subsets(&terminals)?;
    if subsets.len() != family.len()
        || family
            .entries
            .iter()
            .zip(&subsets)
            .any(|(e, s)| &e.subset != s)
    {
        return Err(Error::TerminalMismatch);
    }
    let mut side_masks = Vec::with_capacity(family.len());
    for entry in &family.entries {
        let mut mask = vec![false; g.vertex_count()];
        for name in &entry.cut.source_side {
            mask[g.index_of(name)?] = true;
        }
        side_masks.push(mask);
    }
    Ok(g.vertex_names()
        .iter()
        .enumerate()
        .map(|(v, name)| {
            let bits = side_masks.iter().map(|mask| mask[v]).collect();
            (name.clone(), CutSignature::new(bits))
        })
        .collect())
}

/// A contracted sparsifier together with the partition that produced it and
/// the signature of each cluster.
#[derive(Debug, Clone)]
pub struct MimickingNetwork<S: Scalar> {
    pub network: CapGraph<S>,
    pub partition: VertexPartition,
    pub signature_table: BTreeMap<String, CutSignature>,
}

impl<S: Scalar> MimickingNetwork<S> {
    pub fn cluster_count(&self) -> usize {
        self.network.vertex_count()
    }
}

/// Cluster vertices with equal cut signatures and contract.
///
/// Output is deterministic: clusters are ordered by their smallest original
/// vertex index; a cluster containing a terminal is named by it, the rest are
/// named `h0`, `h1`, ... skipping any collision with terminal names.
pub fn build_mimicking_network<S: Scalar>(g: &CapGraph<S>) -> Result<MimickingNetwork<S>> {
    let family = cut_family(g)?;
    let signature_of = signatures(g, &family)?;

    let mut group_of: HashMap<&CutSignature, usize> = HashMap::new();
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for (v, name) in g.vertex_names().iter().enumerate() {
        let sig = &signature_of[name];
        match group_of.get(sig) {
            Some(&gi) => groups[gi].push(v),
            None => {
                group_of.insert(sig, groups.len());
                groups.push(vec![v]);
            }
        }
    }

    let terminal_names: BTreeSet<&str> = g.terminal_names().into_iter().collect();
    let mut clusters = Vec::with_capacity(groups.len());
    let mut signature_table = BTreeMap::new();
    let mut next_free = 0usize;
    for members in &groups {
        let terminal = members
            .iter()
            .map(|&v| g.name_of(v))
            .find(|name| terminal_names.contains(name));
        let id = match terminal {
            Some(t) => t.to_string(),
            None => loop {
                let candidate = format!("h{next_free}");
                next_free += 1;
                if !terminal_names.contains(candidate.as_str()) {
                    break candidate;
                }
            },
        };
        signature_table.insert(id.clone(), signature_of[g.name_of(members[0])].clone());
        clusters.push(Cluster {
            id,
            members: members.iter().map(|&v| g.name_of(v).to_string()).collect(),
        });
    }

    let partition = VertexPartition { clusters };
    let network = g.contract(&partition)?;
    Ok(MimickingNetwork {
        network,
        partition,
        signature_table,
    })
}

/// One bipartition's values in the original graph and the sparsifier.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexComparison<S> {
    pub subset: BTreeSet<String>,
    pub g_value: S,
    pub h_value: S,
}

/// Outcome of comparing all canonical cut values of two graphs.
///
/// `quality` is the worst ratio of sparsifier value to original value
/// (`None` encodes an infinite ratio); `pass` requires exact equality on
/// every index, in both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport<S> {
    pub per_index: Vec<IndexComparison<S>>,
    pub quality: Option<S>,
    pub pass: bool,
}

/// Compare all canonical minimum terminal cut values of `g` and `h` exactly.
///
/// Values on `h` come from the brute-force oracle whenever `h` is small
/// enough (at most 24 vertices), keeping the check independent of the flow
/// engine that produced the sparsifier; larger `h` falls back to the engine.
pub fn verify_sparsifier<S: Scalar>(
    g: &CapGraph<S>,
    h: &CapGraph<S>,
) -> Result<VerificationReport<S>> {
    if g.terminal_names() != h.terminal_names() {
        return Err(Error::TerminalMismatch);
    }
    let terminals: Vec<String> = g.terminal_names().iter().map(|s| s.to_string()).collect();
    let subsets = canonical_subsets(&terminals)?;

    let mut per_index = Vec::with_capacity(subsets.len());
    for subset in subsets {
        let g_value = eval_original(g, &subset)?;
        let h_value = eval_sparsifier(h, &subset)?;
        per_index.push(IndexComparison {
            subset,
            g_value,
            h_value,
        });
    }

    let pass = per_index.iter().all(|c| c.g_value == c.h_value);
    let mut quality: Option<S> = Some(S::zero());
    for c in &per_index {
        let ratio = if c.g_value > S::zero() {
            Some(c.h_value.clone() / c.g_value.clone())
        } else if c.h_value == S::zero() {
            Some(S::one())
        } else {
            None
        };
        quality = match (quality, ratio) {
            (Some(q), Some(r)) => Some(if r > q { r } else { q }),
            _ => None,
        };
    }
    Ok(VerificationReport {
        per_index,
        quality,
        pass,
    })
}

/// Verify a built network against its source graph.
pub fn verify_mimicking<S: Scalar>(
    g: &CapGraph<S>,
    mn: &MimickingNetwork<S>,
) -> Result<VerificationReport<S>> {
    verify_sparsifier(g, &mn.network)
}

/// Original-graph side: the flow engine, falling back to the oracle only
/// when negative capacities rule the engine out.
fn eval_original<S: Scalar>(g: &CapGraph<S>, subset: &BTreeSet<String>) -> Result<S> {
    if g.first_negative_edge().is_some() {
        Ok(brute_force_min_terminal_cut(g, subset)?.0)
    } else {
        Ok(min_terminal_cut(g, subset)?.value)
    }
}

/// Sparsifier side: the independent exhaustive oracle whenever the graph is
/// small enough for it, so the check does not lean on the engine that built
/// the network.
fn eval_sparsifier<S: Scalar>(h: &CapGraph<S>, subset: &BTreeSet<String>) -> Result<S> {
    if h.vertex_count() <= 24 {
        Ok(brute_force_min_terminal_cut(h, subset)?.0)
    } else {
        Ok(min_terminal_cut(h, subset)?.value)
    }
}

/// Minimum cluster count over all vertex partitions whose contraction is an
/// exact sparsifier. Partitions merging two terminals are skipped; the
/// enumeration walks restricted-growth strings and is guarded to 8 vertices.
pub fn min_contraction_size_bruteforce<S: Scalar>(g: &CapGraph<S>) -> Result<usize> {
    let n = g.vertex_count();
    if n > 8 {
        return Err(Error::GuardExceeded {
            what: "partition enumeration",
            limit: 8,
            actual: n,
        });
    }
    let terminals: Vec<String> = g.terminal_names().iter().map(|s| s.to_string()).collect();
    let subsets = canonical_subsets(&terminals)?;
    let mut reference = Vec::with_capacity(subsets.len());
    for subset in &subsets {
        reference.push(min_terminal_cut(g, subset)?.value);
    }
    let is_terminal: Vec<bool> = (0..n).map(|v| g.terminal_indices().contains(&v)).collect();

    // Cluster-id prefix guaranteed fresh against every vertex name.
    let mut tag = String::from("c");
    while g.vertex_names().iter().any(|name| name.starts_with(&tag)) {
        tag.push('_');
    }

    let mut assignment = vec![0usize; n];
    let mut block_has_terminal = vec![false; n];
    let mut best = n + 1;
    enumerate_partitions(
        g,
        &subsets,
        &reference,
        &is_terminal,
        &tag,
        &mut assignment,
        &mut block_has_terminal,
        0,
        0,
        &mut best,
    )?;
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_partitions<S: Scalar>(
    g: &CapGraph<S>,
    subsets: &[BTreeSet<String>],
    reference: &[S],
    is_terminal: &[bool],
    tag: &str,
    assignment: &mut Vec<usize>,
    block_has_terminal: &mut Vec<bool>,
    pos: usize,
    used: usize,
    best: &mut usize,
) -> Result<()> {
    if used >= *best {
        return Ok(());
    }
    if pos == assignment.len() {
        let blocks = used;
        let mut members: Vec<Vec<String>> = vec![Vec::new(); blocks];
        for (v, &c) in assignment.iter().enumerate() {
            members[c].push(g.vertex_names()[v].clone());
        }
        let partition = VertexPartition {
            clusters: members
                .into_iter()
                .enumerate()
                .map(|(i, members)| Cluster {
                    id: format!("{tag}{i}"),
                    members,
                })
                .collect(),
        };
        let contracted = g.contract(&partition)?;
        for (subset, expected) in subsets.iter().zip(reference) {
            if &min_terminal_cut(&contracted, subset)?.value != expected {
                return Ok(());
            }
        }
        *best = blocks;
        return Ok(());
    }
    for c in 0..=used.min(assignment.len() - 1) {
        let new_block = c == used;
        if is_terminal[pos] && !new_block && block_has_terminal[c] {
            continue;
        }
        assignment[pos] = c;
        let saved = block_has_terminal[c];
        block_has_terminal[c] = saved || is_terminal[pos];
        enumerate_partitions(
            g,
            subsets,
            reference,
            is_terminal,
            tag,
            assignment,
            block_has_terminal,
            pos + 1,
            used + usize::from(new_block),
            best,
        )?;
        block_has_terminal[c] = saved;
    }
    Ok(())
}

/// Whether the subset collection recorded by `sig` is upward closed within
/// the canonical subsets: together with the recorded subset, every canonical
/// superset of it is recorded too.
pub fn signature_is_upward_closed(sig: &CutSignature, subsets: &[BTreeSet<String>]) -> bool {
    for i in 0..subsets.len() {
        for j in 0..subsets.len() {
            if sig.bit(i) && subsets[i].is_subset(&subsets[j]) && !sig.bit(j) {
                return false;
            }
        }
    }
    true
}

/// Whether `sig` records two disjoint subsets (forbidden for any nonempty cluster).
pub fn signature_has_disjoint_pair(sig: &CutSignature, subsets: &[BTreeSet<String>]) -> bool {
    for i in 0..subsets.len() {
        for j in i + 1..subsets.len() {
            if sig.bit(i) && sig.bit(j) && subsets[i].is_disjoint(&subsets[j]) {
                return true;
            }
        }
    }
    false
}

/// Whether all subsets recorded by `sig` share a common terminal (vacuously
/// true for the all-zero signature). Reported as a statistic, not asserted.
pub fn signature_has_common_element(sig: &CutSignature, subsets: &[BTreeSet<String>]) -> bool {
    let mut recorded = (0..subsets.len()).filter(|&i| sig.bit(i));
    let Some(first) = recorded.next() else {
        return true;
    };
    let mut common = subsets[first].clone();
    for i in recorded {
        common = common.intersection(&subsets[i]).cloned().collect();
        if common.is_empty() {
            return false;
        }
    }
    true
}
