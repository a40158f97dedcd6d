//! Sparsifier constructions specific to trees: pruning and splicing down to
//! at most `2k - 1` vertices, ternarization, and the star-triangle reduction
//! to a cactus of at most `max(2, floor(13k/8 - 3/2))` vertices, together
//! with a linear-time dynamic-programming cut oracle.
//!
//! Every transformation preserves all minimum terminal cut values exactly.
//! Two constructions deserve a note:
//!
//! * Helper edges introduced while ternarizing (pulling an internal terminal
//!   out to a leaf, or splitting a vertex of degree above three) carry the
//!   sum of the capacities they stand in for, which is exactly
//!   cut-preserving. A zero-capacity tie between split halves would let cuts
//!   separate the halves for free and change cut values.
//! * A star-triangle step at a degree-3 non-terminal first clamps each leg
//!   to the sum of the other two. An unclamped heavy leg makes the triangle
//!   capacities negative and breaks cut preservation; the clamped star
//!   contributes identically to every terminal bipartition.

use crate::graph::CapGraph;
use crate::scalar::{min2, two, Scalar};
use crate::{Error, Result};
use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};

/// A capacitated graph whose edges form a forest.
#[derive(Debug, Clone, PartialEq)]
pub struct TreeGraph<S: Scalar> {
    graph: CapGraph<S>,
}

impl<S: Scalar> TreeGraph<S> {
    /// Wrap a graph, verifying it is acyclic.
    pub fn new(graph: CapGraph<S>) -> Result<Self> {
        let mut parent: Vec<usize> = (0..graph.vertex_count()).collect();
        fn find(parent: &mut [usize], mut v: usize) -> usize {
            while parent[v] != v {
                parent[v] = parent[parent[v]];
                v = parent[v];
            }
            v
        }
        for ((u, v), _) in graph.edges_indexed() {
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(Error::NotATree("contains a cycle"));
            }
            parent[ru] = rv;
        }
        Ok(Self { graph })
    }

    pub fn graph(&self) -> &CapGraph<S> {
        &self.graph
    }

    pub fn into_graph(self) -> CapGraph<S> {
        self.graph
    }
}

/// A graph produced by the star-triangle reduction, with its metadata.
#[derive(Debug, Clone)]
pub struct CactusNetwork<S: Scalar> {
    pub graph: CapGraph<S>,
    /// Number of leg-capacity clamps applied before star-triangle steps.
    pub clamps: usize,
    pub is_cactus: bool,
}

/// Upper bound on the cactus size for `k` terminals.
pub fn cactus_size_bound(k: usize) -> usize {
    if k < 2 {
        return 2;
    }
    ((13 * k - 12) / 8).max(2)
}

/// Delete non-terminal leaves and splice non-terminal degree-2 vertices
/// (replacing `u - v - w` by `u - w` with the smaller of the two capacities)
/// until neither exists. The result has at most `2k - 1` vertices and the
/// same minimum terminal cut values.
pub fn reduce_tree<S: Scalar>(t: &TreeGraph<S>) -> Result<TreeGraph<S>> {
    let g = t.graph();
    require_connected(g)?;
    require_nonnegative(g)?;
    let n = g.vertex_count();
    let mut adj = g.adjacency();
    let mut alive = vec![true; n];
    let is_terminal = terminal_flags(g);

    loop {
        let mut changed = false;
        for v in 0..n {
            if !alive[v] || is_terminal[v] {
                continue;
            }
            match adj[v].len() {
                0 | 1 => {
                    detach(&mut adj, v);
                    alive[v] = false;
                    changed = true;
                }
                2 => {
                    let legs: Vec<(usize, S)> =
                        adj[v].iter().map(|(&u, c)| (u, c.clone())).collect();
                    detach(&mut adj, v);
                    alive[v] = false;
                    let cap = min2(legs[0].1.clone(), legs[1].1.clone());
                    merge_edge(&mut adj, legs[0].0, legs[1].0, cap);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    TreeGraph::new(rebuild(g, g.vertex_names().to_vec(), &alive, &adj))
}

/// Rebuild a reduced tree so that leaves are exactly the terminals and every
/// internal vertex is a non-terminal of degree exactly 3.
///
/// Internal terminals are pulled out to a pendant leaf, and vertices of
/// degree above three are split; the helper edges carry the capacity sums
/// described in the module docs, so all cut values are unchanged. New
/// vertices are named `t0`, `t1`, ... deterministically.
pub fn ternarize<S: Scalar>(t: &TreeGraph<S>) -> Result<TreeGraph<S>> {
    let reduced = reduce_tree(t)?;
    if reduced.graph().vertex_count() <= 2 {
        return Ok(reduced);
    }
    let g = reduced.graph();
    let n = g.vertex_count();
    let mut names = g.vertex_names().to_vec();
    let mut adj = g.adjacency();
    let mut is_terminal = terminal_flags(g);
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    let mut next_id = 0usize;
    let mut fresh_name = move || loop {
        let candidate = format!("t{next_id}");
        next_id += 1;
        if taken.insert(candidate.clone()) {
            break candidate;
        }
    };

    // Internal terminals become leaves hanging off a fresh non-terminal that
    // inherits their edges.
    for v in 0..n {
        if !is_terminal[v] || adj[v].len() < 2 {
            continue;
        }
        names.push(fresh_name());
        adj.push(BTreeMap::new());
        is_terminal.push(false);
        let x = adj.len() - 1;
        let legs: Vec<(usize, S)> = adj[v].iter().map(|(&u, c)| (u, c.clone())).collect();
        detach(&mut adj, v);
        let mut pendant = S::zero();
        for (u, cap) in legs {
            pendant = pendant + cap.clone();
            merge_edge(&mut adj, u, x, cap);
        }
        merge_edge(&mut adj, v, x, pendant);
    }

    // Split vertices of degree above three, two legs at a time.
    let mut v = 0;
    while v < adj.len() {
        if is_terminal[v] || adj[v].len() <= 3 {
            v += 1;
            continue;
        }
        names.push(fresh_name());
        adj.push(BTreeMap::new());
        is_terminal.push(false);
        let x = adj.len() - 1;
        let moved: Vec<(usize, S)> = adj[v]
            .iter()
            .take(2)
            .map(|(&u, c)| (u, c.clone()))
            .collect();
        let mut tie = S::zero();
        for (u, cap) in moved {
            adj[v].remove(&u);
            adj[u].remove(&v);
            tie = tie + cap.clone();
            merge_edge(&mut adj, u, x, cap);
        }
        merge_edge(&mut adj, v, x, tie);
    }

    let alive = vec![true; names.len()];
    TreeGraph::new(rebuild(g, names, &alive, &adj))
}

/// Reduce a ternarized tree to a cactus by repeated star-triangle steps.
///
/// Non-terminals are visited along the in-order traversal of the tree rooted
/// next to the last terminal, left subtrees ordered taller. Transforming a
/// vertex raises its neighbors' degrees past 3, so blindly taking the next
/// degree-3 vertex can strand too many untransformed survivors and miss the
/// size bound; instead a maximum independent set of the internal tree is
/// transformed first (its members keep degree exactly 3 until their turn),
/// then any vertices that regain degree 3 are finished greedily.
/// Non-terminals whose degree drops below 3 through capacity merges are
/// pruned or spliced the same way the tree reduction does. Since the
/// independent set covers at least half of the `k - 2` internal vertices,
/// the survivor count meets the `max(2, floor(13k/8 - 3/2))` bound.
pub fn y_delta_reduce<S: Scalar>(t: &TreeGraph<S>) -> Result<CactusNetwork<S>> {
    let g = t.graph();
    require_connected(g)?;
    require_nonnegative(g)?;
    let n = g.vertex_count();
    let mut adj = g.adjacency();
    let is_terminal = terminal_flags(g);
    for v in 0..n {
        if is_terminal[v] && adj[v].len() != 1 && n > 1 {
            return Err(Error::NotTernary("a terminal is not a leaf"));
        }
        if !is_terminal[v] && adj[v].len() != 3 {
            return Err(Error::NotTernary("a non-terminal does not have degree 3"));
        }
    }

    let inorder = inorder_nonterminals(g, &adj, &is_terminal);
    let independent = max_independent_internal(&adj, &is_terminal);
    let mut alive = vec![true; n];
    let mut clamps = 0usize;

    let transform =
        |adj: &mut Vec<BTreeMap<usize, S>>, alive: &mut Vec<bool>, clamps: &mut usize, x: usize| {
            let mut legs: Vec<(usize, S)> = adj[x].iter().map(|(&u, c)| (u, c.clone())).collect();
            for i in 0..3 {
                let others = legs[(i + 1) % 3].1.clone() + legs[(i + 2) % 3].1.clone();
                if legs[i].1 > others {
                    legs[i].1 = others;
                    *clamps += 1;
                }
            }
            detach(adj, x);
            alive[x] = false;
            for (i, j, k) in [(0, 1, 2), (1, 2, 0), (0, 2, 1)] {
                let cap = (legs[i].1.clone() + legs[j].1.clone() - legs[k].1.clone()) / two::<S>();
                debug_assert!(cap >= S::zero(), "triangle capacity negative after clamp");
                merge_edge(adj, legs[i].0, legs[j].0, cap);
            }
        };

    for &x in &inorder {
        if independent[x] {
            debug_assert_eq!(adj[x].len(), 3, "independent-set member kept degree 3");
            transform(&mut adj, &mut alive, &mut clamps, x);
        }
    }

    loop {
        if let Some(&x) = inorder.iter().find(|&&x| alive[x] && adj[x].len() == 3) {
            transform(&mut adj, &mut alive, &mut clamps, x);
            continue;
        }
        // Capacity merges can leave low-degree non-terminals behind; remove
        // them the same way the tree reduction does.
        if let Some(&x) = inorder.iter().find(|&&x| alive[x] && adj[x].len() <= 2) {
            if adj[x].len() == 2 {
                let legs: Vec<(usize, S)> = adj[x].iter().map(|(&u, c)| (u, c.clone())).collect();
                detach(&mut adj, x);
                let cap = min2(legs[0].1.clone(), legs[1].1.clone());
                merge_edge(&mut adj, legs[0].0, legs[1].0, cap);
            } else {
                detach(&mut adj, x);
            }
            alive[x] = false;
            continue;
        }
        break;
    }

    let graph = rebuild(g, g.vertex_names().to_vec(), &alive, &adj);
    let cactus = is_cactus(&graph);
    Ok(CactusNetwork {
        graph,
        clamps,
        is_cactus: cactus,
    })
}

/// Membership mask of a maximum independent set of the subtree induced by
/// the non-terminals, by the standard two-state tree dynamic program.
fn max_independent_internal<S: Scalar>(
    adj: &[BTreeMap<usize, S>],
    is_terminal: &[bool],
) -> Vec<bool> {
    let n = adj.len();
    let mut chosen = vec![false; n];
    let mut visited = vec![false; n];
    for root in 0..n {
        if is_terminal[root] || visited[root] {
            continue;
        }
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in adj[v].keys() {
                if !is_terminal[u] && !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        // take[v]: best size with v in the set; skip[v]: best without.
        let mut take = vec![0usize; n];
        let mut skip = vec![0usize; n];
        for &v in order.iter().rev() {
            take[v] = 1;
            skip[v] = 0;
            for &u in adj[v].keys() {
                if !is_terminal[u] && parent[u] == v {
                    take[v] += skip[u];
                    skip[v] += take[u].max(skip[u]);
                }
            }
        }
        // Reconstruct, preferring inclusion on ties.
        let mut decide = vec![(root, false)];
        while let Some((v, parent_taken)) = decide.pop() {
            let taken = !parent_taken && take[v] >= skip[v];
            chosen[v] = taken;
            for &u in adj[v].keys() {
                if !is_terminal[u] && parent[u] == v {
                    decide.push((u, taken));
                }
            }
        }
    }
    chosen
}

/// Exact minimum terminal cut value on a forest by dynamic programming:
/// minimize the capacity of bichromatic edges over all side assignments
/// extending the terminal labels.
pub fn tree_min_terminal_cut<S: Scalar>(t: &TreeGraph<S>, subset: &BTreeSet<String>) -> Result<S> {
    let g = t.graph();
    for name in subset {
        if !g.is_terminal(name) {
            return Err(Error::NotATerminal(name.clone()));
        }
    }
    if subset.is_empty() || subset.len() == g.terminal_count() {
        return Err(Error::InvalidTerminalSubset);
    }
    let n = g.vertex_count();
    let adj = g.adjacency();
    let forced: Vec<Option<bool>> = (0..n)
        .map(|v| {
            let name = g.name_of(v);
            if g.is_terminal(name) {
                Some(subset.contains(name))
            } else {
                None
            }
        })
        .collect();

    // dp[v][side]: cheapest cut of v's subtree with v on `side`; None = infeasible.
    let mut dp: Vec<[Option<S>; 2]> = vec![[None, None]; n];
    let mut visited = vec![false; n];
    let mut total = S::zero();
    for root in 0..n {
        if visited[root] {
            continue;
        }
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &u in adj[v].keys() {
                if !visited[u] {
                    visited[u] = true;
                    parent[u] = v;
                    stack.push(u);
                }
            }
        }
        for &v in order.iter().rev() {
            let mut entry: [Option<S>; 2] = match forced[v] {
                Some(true) => [None, Some(S::zero())],
                Some(false) => [Some(S::zero()), None],
                None => [Some(S::zero()), Some(S::zero())],
            };
            for (&u, cap) in &adj[v] {
                if parent[u] != v {
                    continue;
                }
                for (side, slot) in entry.iter_mut().enumerate() {
                    let Some(acc) = slot.take() else {
                        continue;
                    };
                    let same = dp[u][side].clone();
                    let crossed = dp[u][1 - side].clone().map(|c| c + cap.clone());
                    *slot = match (same, crossed) {
                        (Some(a), Some(b)) => Some(acc + min2(a, b)),
                        (Some(a), None) => Some(acc + a),
                        (None, Some(b)) => Some(acc + b),
                        (None, None) => None,
                    };
                }
            }
            dp[v] = entry;
        }
        let best = match (dp[root][0].clone(), dp[root][1].clone()) {
            (Some(a), Some(b)) => min2(a, b),
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (None, None) => unreachable!("some assignment always exists"),
        };
        total = total + best;
    }
    Ok(total)
}

/// Whether every edge of `g` lies on at most one simple cycle, i.e. every
/// biconnected component is a single edge or a cycle.
pub fn is_cactus<S: Scalar>(g: &CapGraph<S>) -> bool {
    let n = g.vertex_count();
    let edges: Vec<(usize, usize)> = g.edges_indexed().map(|(e, _)| e).collect();
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (id, &(u, v)) in edges.iter().enumerate() {
        adj[u].push((v, id));
        adj[v].push((u, id));
    }

    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut timer = 0usize;
    let mut edge_stack: Vec<usize> = Vec::new();

    for start in 0..n {
        if disc[start] != usize::MAX {
            continue;
        }
        let mut stack: Vec<(usize, usize, usize)> = vec![(start, usize::MAX, 0)];
        disc[start] = timer;
        low[start] = timer;
        timer += 1;
        while let Some(&mut (v, in_edge, ref mut cursor)) = stack.last_mut() {
            if *cursor < adj[v].len() {
                let (u, id) = adj[v][*cursor];
                *cursor += 1;
                if id == in_edge {
                    continue;
                }
                if disc[u] == usize::MAX {
                    edge_stack.push(id);
                    disc[u] = timer;
                    low[u] = timer;
                    timer += 1;
                    stack.push((u, id, 0));
                } else if disc[u] < disc[v] {
                    edge_stack.push(id);
                    low[v] = low[v].min(disc[u]);
                }
            } else {
                stack.pop();
                if let Some(&mut (p, _, _)) = stack.last_mut() {
                    low[p] = low[p].min(low[v]);
                    if low[v] >= disc[p] {
                        // One biconnected component ends with the edge (p, v).
                        let mut comp_edges = 0usize;
                        let mut comp_vertices: HashSet<usize> = HashSet::new();
                        while let Some(id) = edge_stack.pop() {
                            comp_edges += 1;
                            comp_vertices.insert(edges[id].0);
                            comp_vertices.insert(edges[id].1);
                            if edges[id] == (p.min(v), p.max(v)) {
                                break;
                            }
                        }
                        if comp_edges > comp_vertices.len() {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

fn terminal_flags<S: Scalar>(g: &CapGraph<S>) -> Vec<bool> {
    let mut flags = vec![false; g.vertex_count()];
    for &t in g.terminal_indices() {
        flags[t] = true;
    }
    flags
}

fn require_connected<S: Scalar>(g: &CapGraph<S>) -> Result<()> {
    let n = g.vertex_count();
    if n == 0 {
        return Ok(());
    }
    let adj = g.adjacency();
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    let mut count = 1;
    while let Some(v) = queue.pop_front() {
        for &u in adj[v].keys() {
            if !seen[u] {
                seen[u] = true;
                count += 1;
                queue.push_back(u);
            }
        }
    }
    if count != n {
        return Err(Error::NotATree("not connected"));
    }
    Ok(())
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

/// Remove all edges incident to `v`.
fn detach<S: Scalar>(adj: &mut [BTreeMap<usize, S>], v: usize) {
    let neighbors: Vec<usize> = adj[v].keys().copied().collect();
    for u in neighbors {
        adj[u].remove(&v);
    }
    adj[v].clear();
}

/// Insert edge `u - v`, summing with an existing capacity.
fn merge_edge<S: Scalar>(adj: &mut [BTreeMap<usize, S>], u: usize, v: usize, cap: S) {
    let total = match adj[u].get(&v) {
        Some(existing) => existing.clone() + cap,
        None => cap,
    };
    adj[u].insert(v, total.clone());
    adj[v].insert(u, total);
}

/// Rebuild a graph from a mutated adjacency structure, keeping vertex order.
fn rebuild<S: Scalar>(
    old: &CapGraph<S>,
    names: Vec<String>,
    alive: &[bool],
    adj: &[BTreeMap<usize, S>],
) -> CapGraph<S> {
    let mut new_index = vec![usize::MAX; names.len()];
    let mut new_names = Vec::new();
    for (i, name) in names.iter().enumerate() {
        if alive[i] {
            new_index[i] = new_names.len();
            new_names.push(name.clone());
        }
    }
    let terminals = old
        .terminal_indices()
        .iter()
        .map(|&t| new_index[t])
        .collect();
    let mut edges = BTreeMap::new();
    for (u, neighbors) in adj.iter().enumerate() {
        if !alive[u] {
            continue;
        }
        for (&v, cap) in neighbors {
            if u < v {
                edges.insert((new_index[u], new_index[v]), cap.clone());
            }
        }
    }
    CapGraph::from_parts(new_names, terminals, edges)
}

/// Non-terminals in in-order over the tree rooted at the internal vertex
/// adjacent to the last terminal; left children are taller subtrees, ties
/// broken by vertex index.
fn inorder_nonterminals<S: Scalar>(
    g: &CapGraph<S>,
    adj: &[BTreeMap<usize, S>],
    is_terminal: &[bool],
) -> Vec<usize> {
    let last = *g.terminal_indices().last().expect("terminals exist");
    let Some((&root, _)) = adj[last].iter().next() else {
        return Vec::new();
    };
    if is_terminal[root] {
        // Two-vertex tree; nothing to traverse.
        return Vec::new();
    }
    let n = adj.len();

    let mut parent = vec![usize::MAX; n];
    let mut bfs_order = Vec::new();
    parent[root] = last;
    let mut queue = VecDeque::from([root]);
    let mut seen = vec![false; n];
    seen[root] = true;
    seen[last] = true;
    while let Some(v) = queue.pop_front() {
        bfs_order.push(v);
        for &u in adj[v].keys() {
            if !seen[u] {
                seen[u] = true;
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }

    let mut height = vec![0usize; n];
    for &v in bfs_order.iter().rev() {
        height[v] = adj[v]
            .keys()
            .filter(|&&u| parent[u] == v)
            .map(|&u| height[u] + 1)
            .max()
            .unwrap_or(0);
    }

    let children = |v: usize| -> Vec<usize> {
        let mut kids: Vec<usize> = adj[v].keys().copied().filter(|&u| parent[u] == v).collect();
        kids.sort_by(|&a, &b| height[b].cmp(&height[a]).then(a.cmp(&b)));
        kids
    };

    let mut result = Vec::new();
    let mut stack: Vec<(usize, bool)> = vec![(root, false)];
    while let Some((v, emit)) = stack.pop() {
        if emit {
            result.push(v);
            continue;
        }
        if is_terminal[v] {
            continue;
        }
        let kids = children(v);
        debug_assert_eq!(kids.len(), 2, "internal vertex of a ternary tree");
        stack.push((kids[1], false));
        stack.push((v, true));
        stack.push((kids[0], false));
    }
    result
}
