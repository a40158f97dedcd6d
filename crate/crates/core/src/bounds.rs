//! Lower-bound machinery: single-coordinate gadget graphs, convex
//! combination of graphs at the cut-vector level, cut matrices, exact rank
//! evidence for the full-dimensionality of the cut-vector set, and the
//! antichain counts that bound cluster numbers.
//!
//! Counting convention: antichains range over nonempty subsets of an n-set
//! and the empty antichain is included. This reproduces the counts
//! 2, 5, 19, 167, 7580 (one less than the classical Dedekind numbers) and
//! the common-element counts 2, 4, 11, 54, 687.

use crate::cuts::{canonical_subsets, cut_family};
use crate::graph::CapGraph;
use crate::scalar::Scalar;
use crate::{Error, Rational, Result};
use std::collections::BTreeSet;

/// `n` as a scalar.
fn small_scalar<S: Scalar>(n: usize) -> S {
    (0..n).fold(S::zero(), |acc, _| acc + S::one())
}

/// Fresh hub name not colliding with any terminal.
fn fresh_hub(base: &str, terminals: &[String]) -> String {
    let mut name = base.to_string();
    while terminals.contains(&name) {
        name.push('_');
    }
    name
}

/// Build the two-hub gadget whose cut vector has entry `subset` equal to
/// `1 - epsilon` while every other entry is independent of `epsilon`.
///
/// Terminals outside `subset` attach to one hub at capacity `1/|K - U|`,
/// terminals inside attach to the other hub at `1/|U|`, and the hubs are
/// joined at `1 - epsilon`; `epsilon` must lie strictly between 0 and
/// `min(1/|U|, 1/|K - U|)`.
pub fn gadget_graph<S: Scalar>(
    terminals: &[String],
    subset: &BTreeSet<String>,
    epsilon: &S,
) -> Result<CapGraph<S>> {
    for name in subset {
        if !terminals.contains(name) {
            return Err(Error::NotATerminal(name.clone()));
        }
    }
    if subset.is_empty() || subset.len() >= terminals.len() {
        return Err(Error::InvalidTerminalSubset);
    }
    if let Some(last) = terminals.last() {
        if subset.contains(last) {
            return Err(Error::ContainsLastTerminal(last.clone()));
        }
    }
    let inside = subset.len();
    let outside = terminals.len() - inside;
    let inv_inside = S::one() / small_scalar::<S>(inside);
    let inv_outside = S::one() / small_scalar::<S>(outside);
    let limit = if inv_inside < inv_outside {
        inv_inside.clone()
    } else {
        inv_outside.clone()
    };
    if *epsilon <= S::zero() || *epsilon >= limit {
        return Err(Error::EpsilonOutOfRange(epsilon.to_string()));
    }

    let hub_out = fresh_hub("u0", terminals);
    let hub_in = fresh_hub("v0", terminals);
    let mut vertices = terminals.to_vec();
    vertices.push(hub_out.clone());
    vertices.push(hub_in.clone());

    let mut edges = Vec::with_capacity(terminals.len() + 1);
    for t in terminals {
        if subset.contains(t) {
            edges.push((t.clone(), hub_in.clone(), inv_inside.clone()));
        } else {
            edges.push((t.clone(), hub_out.clone(), inv_outside.clone()));
        }
    }
    edges.push((hub_out, hub_in, S::one() - epsilon.clone()));
    CapGraph::new(vertices, terminals.to_vec(), edges)
}

/// Graph whose cut vector is `lambda * mtcv(g1) + (1 - lambda) * mtcv(g2)`.
///
/// The graphs must share the identical ordered terminal list; non-terminals
/// are kept disjoint (name collisions on the second graph are resolved by
/// prefixing) so the two scaled edge sets interact only at the terminals.
pub fn convex_combine<S: Scalar>(
    g1: &CapGraph<S>,
    g2: &CapGraph<S>,
    lambda: &S,
) -> Result<CapGraph<S>> {
    if g1.terminal_names() != g2.terminal_names() {
        return Err(Error::TerminalMismatch);
    }
    if *lambda < S::zero() || *lambda > S::one() {
        return Err(Error::LambdaOutOfRange(lambda.to_string()));
    }
    let complement = S::one() - lambda.clone();

    let mut vertices = g1.vertex_names().to_vec();
    let mut used: BTreeSet<String> = vertices.iter().cloned().collect();
    let mut rename = std::collections::HashMap::new();
    for name in g2.vertex_names() {
        if g2.is_terminal(name) {
            continue;
        }
        let mut fresh = name.clone();
        while used.contains(&fresh) {
            fresh = format!("g2.{fresh}");
        }
        used.insert(fresh.clone());
        if &fresh != name {
            rename.insert(name.clone(), fresh.clone());
        }
        vertices.push(fresh);
    }
    let renamed = |name: &str| -> String {
        rename
            .get(name)
            .cloned()
            .unwrap_or_else(|| name.to_string())
    };

    let mut edges: Vec<(String, String, S)> = Vec::new();
    for (u, v, cap) in g1.edges_named() {
        edges.push((u.to_string(), v.to_string(), lambda.clone() * cap.clone()));
    }
    for (u, v, cap) in g2.edges_named() {
        edges.push((renamed(u), renamed(v), complement.clone() * cap.clone()));
    }
    let terminals: Vec<String> = g1.terminal_names().iter().map(|s| s.to_string()).collect();
    CapGraph::new(vertices, terminals, edges)
}

/// 0/1 incidence of edges versus minimum terminal cuts: row `i` marks the
/// edges crossing the minimal source side of canonical cut `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CutMatrix {
    /// Column labels in the graph's canonical edge order.
    pub edge_order: Vec<(String, String)>,
    pub rows: Vec<Vec<bool>>,
}

impl CutMatrix {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.edge_order.len()
    }
}

/// Cut matrix of `g` over its computed minimal cuts.
pub fn cut_matrix<S: Scalar>(g: &CapGraph<S>) -> Result<CutMatrix> {
    let family = cut_family(g)?;
    let edge_order: Vec<(String, String)> = g
        .edges_named()
        .map(|(u, v, _)| (u.to_string(), v.to_string()))
        .collect();
    let mut rows = Vec::with_capacity(family.len());
    for entry in &family.entries {
        let row = edge_order
            .iter()
            .map(|(u, v)| entry.cut.source_side.contains(u) != entry.cut.source_side.contains(v))
            .collect();
        rows.push(row);
    }
    Ok(CutMatrix { edge_order, rows })
}

/// Rank of a row matrix by Gaussian elimination in the scalar field.
///
/// Exact for exact scalars; with floating point this is a naive elimination
/// without pivot-size control.
pub fn matrix_rank<S: Scalar>(rows: &[Vec<S>]) -> usize {
    let mut m: Vec<Vec<S>> = rows.to_vec();
    let nrows = m.len();
    let ncols = m.first().map(Vec::len).unwrap_or(0);
    let mut rank = 0usize;
    for col in 0..ncols {
        let Some(pivot_row) = (rank..nrows).find(|&r| m[r][col] != S::zero()) else {
            continue;
        };
        m.swap(rank, pivot_row);
        let pivot_row = m[rank].clone();
        let pivot = pivot_row[col].clone();
        for row in m.iter_mut().skip(rank + 1) {
            if row[col] != S::zero() {
                let factor = row[col].clone() / pivot.clone();
                for (cell, above) in row.iter_mut().zip(&pivot_row).skip(col) {
                    *cell = cell.clone() - factor.clone() * above.clone();
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

/// Exact rank of the span of gadget cut vectors for `k` terminals.
///
/// For every canonical subset, two gadgets at distinct epsilon values yield
/// cut vectors differing only in that coordinate; stacking all of them with
/// the zero vector and eliminating exactly gives the full `2^(k-1) - 1`
/// whenever the gadget construction behaves, which certifies that the set of
/// attainable cut vectors has full dimension.
pub fn mtcv_rank_evidence(k: usize) -> Result<usize> {
    if !(2..=5).contains(&k) {
        return Err(Error::GuardExceeded {
            what: "rank evidence terminal count",
            limit: 5,
            actual: k,
        });
    }
    let terminals: Vec<String> = (1..=k).map(|i| format!("x{i}")).collect();
    let subsets = canonical_subsets(&terminals)?;
    let p = subsets.len();
    let mut vectors: Vec<Vec<Rational>> = vec![vec![Rational::from_integer(0.into()); p]];
    let third = Rational::new(1.into(), 3.into());
    let two_thirds = Rational::new(2.into(), 3.into());
    for subset in &subsets {
        let inside = subset.len();
        let outside = k - inside;
        let limit = Rational::new(1.into(), (inside.max(outside) as i64).into());
        for fraction in [&third, &two_thirds] {
            let epsilon = limit.clone() * fraction.clone();
            let gadget = gadget_graph(&terminals, subset, &epsilon)?;
            vectors.push(cut_family(&gadget)?.values().values);
        }
    }
    Ok(matrix_rank(&vectors))
}

const MAX_COUNT_SET: usize = 5;

/// Number of antichains of nonempty subsets of an `n`-set, empty antichain
/// included.
pub fn count_antichains(n: usize) -> Result<u64> {
    count_families(n, false)
}

/// Number of such antichains whose members all share a common element,
/// empty antichain included.
pub fn count_common_element_antichains(n: usize) -> Result<u64> {
    count_families(n, true)
}

fn count_families(n: usize, common_element: bool) -> Result<u64> {
    if !(1..=MAX_COUNT_SET).contains(&n) {
        return Err(Error::GuardExceeded {
            what: "antichain enumeration ground set",
            limit: MAX_COUNT_SET,
            actual: n,
        });
    }
    let subsets: Vec<u32> = (1..(1u32 << n)).collect();

    fn incomparable(a: u32, b: u32) -> bool {
        let both = a & b;
        both != a && both != b
    }

    // Counts the current family plus all extensions by later subsets.
    fn explore(
        subsets: &[u32],
        start: usize,
        chosen: &mut Vec<u32>,
        shared: u32,
        common_element: bool,
    ) -> u64 {
        let mut total = 1;
        for i in start..subsets.len() {
            let s = subsets[i];
            if common_element && shared & s == 0 {
                continue;
            }
            if chosen.iter().any(|&c| !incomparable(c, s)) {
                continue;
            }
            chosen.push(s);
            total += explore(subsets, i + 1, chosen, shared & s, common_element);
            chosen.pop();
        }
        total
    }

    let mut chosen = Vec::new();
    Ok(explore(&subsets, 0, &mut chosen, u32::MAX, common_element))
}

/// One row of the bounds table for `k` terminals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundsRow {
    pub k: usize,
    /// Common-element antichain count of a `(k-1)`-set.
    pub z: u64,
    /// Antichain count of a `(k-1)`-set.
    pub m_prime: u64,
    /// Region count `2^(2^(k-1)) - 1`.
    pub two_power: u64,
}

/// Bounds-table row for `k` in `2..=6`.
pub fn bounds_row(k: usize) -> Result<BoundsRow> {
    if !(2..=MAX_COUNT_SET + 1).contains(&k) {
        return Err(Error::GuardExceeded {
            what: "bounds table terminal count",
            limit: MAX_COUNT_SET + 1,
            actual: k,
        });
    }
    Ok(BoundsRow {
        k,
        z: count_common_element_antichains(k - 1)?,
        m_prime: count_antichains(k - 1)?,
        two_power: (1u64 << (1usize << (k - 1))) - 1,
    })
}
