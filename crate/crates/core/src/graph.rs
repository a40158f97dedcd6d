//! Capacitated undirected graphs with an ordered terminal list, plus the
//! contraction operation that underlies every sparsifier in this crate.
//!
//! Graphs are immutable after construction. Vertices are named by strings and
//! keep their input order; the terminal list is an ordered sublist of the
//! vertices whose last entry is the designated "last terminal" used to
//! canonicalize terminal bipartitions. Parallel edges are merged by capacity
//! summation at construction and self-loops are rejected.

use crate::scalar::Scalar;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, HashMap, HashSet};

/// Immutable capacitated undirected graph with named vertices and terminals.
#[derive(Debug, Clone)]
pub struct CapGraph<S: Scalar> {
    vertices: Vec<String>,
    index: HashMap<String, usize>,
    terminals: Vec<usize>,
    edges: BTreeMap<(usize, usize), S>,
}

impl<S: Scalar> PartialEq for CapGraph<S> {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices
            && self.terminals == other.terminals
            && self.edges == other.edges
    }
}

impl<S: Scalar> CapGraph<S> {
    /// Build a graph, rejecting negative capacities.
    pub fn new<I>(vertices: Vec<String>, terminals: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, S)>,
    {
        Self::build(vertices, terminals, edges, false)
    }

    /// Build a graph that is allowed to carry negative capacities.
    ///
    /// Negative capacities only arise in star-triangle reduction outputs when
    /// clamping is bypassed; ordinary inputs should use [`CapGraph::new`].
    pub fn new_signed<I>(vertices: Vec<String>, terminals: Vec<String>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, S)>,
    {
        Self::build(vertices, terminals, edges, true)
    }

    fn build<I>(
        vertices: Vec<String>,
        terminals: Vec<String>,
        edges: I,
        allow_negative: bool,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (String, String, S)>,
    {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, name) in vertices.iter().enumerate() {
            if index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateVertex(name.clone()));
            }
        }
        if terminals.len() < 2 {
            return Err(Error::TooFewTerminals(terminals.len()));
        }
        let mut terminal_indices = Vec::with_capacity(terminals.len());
        let mut seen = HashSet::new();
        for name in &terminals {
            let &i = index
                .get(name)
                .ok_or_else(|| Error::UnknownTerminal(name.clone()))?;
            if !seen.insert(i) {
                return Err(Error::DuplicateTerminal(name.clone()));
            }
            terminal_indices.push(i);
        }
        let mut merged: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (u, v, cap) in edges {
            let &ui = index
                .get(&u)
                .ok_or_else(|| Error::UnknownVertex(u.clone()))?;
            let &vi = index
                .get(&v)
                .ok_or_else(|| Error::UnknownVertex(v.clone()))?;
            if ui == vi {
                return Err(Error::SelfLoop(u));
            }
            if !allow_negative && cap < S::zero() {
                return Err(Error::NegativeCapacity {
                    u,
                    v,
                    cap: cap.to_string(),
                });
            }
            let key = (ui.min(vi), ui.max(vi));
            match merged.remove(&key) {
                Some(existing) => {
                    merged.insert(key, existing + cap);
                }
                None => {
                    merged.insert(key, cap);
                }
            }
        }
        Ok(Self {
            vertices,
            index,
            terminals: terminal_indices,
            edges: merged,
        })
    }

    /// Internal constructor for graphs already known to satisfy the invariants.
    pub(crate) fn from_parts(
        vertices: Vec<String>,
        terminal_indices: Vec<usize>,
        edges: BTreeMap<(usize, usize), S>,
    ) -> Self {
        let index = vertices
            .iter()
            .enumerate()
            .map(|(i, n)| (n.clone(), i))
            .collect();
        Self {
            vertices,
            index,
            terminals: terminal_indices,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn terminal_count(&self) -> usize {
        self.terminals.len()
    }

    /// Vertex names in input order.
    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    /// Terminal names in input order; the last entry is the designated last terminal.
    pub fn terminal_names(&self) -> Vec<&str> {
        self.terminals
            .iter()
            .map(|&i| self.vertices[i].as_str())
            .collect()
    }

    pub fn last_terminal(&self) -> &str {
        &self.vertices[*self.terminals.last().expect("at least two terminals")]
    }

    pub fn contains_vertex(&self, name: &str) -> bool {
        self.index.contains_key(name)
    }

    pub fn is_terminal(&self, name: &str) -> bool {
        match self.index.get(name) {
            Some(i) => self.terminals.contains(i),
            None => false,
        }
    }

    pub(crate) fn index_of(&self, name: &str) -> Result<usize> {
        self.index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub(crate) fn name_of(&self, idx: usize) -> &str {
        &self.vertices[idx]
    }

    pub(crate) fn terminal_indices(&self) -> &[usize] {
        &self.terminals
    }

    /// Edges in canonical order as `(u, v, capacity)` with `u` before `v` in
    /// vertex order.
    pub fn edges_named(&self) -> impl Iterator<Item = (&str, &str, &S)> {
        self.edges
            .iter()
            .map(move |(&(u, v), cap)| (self.vertices[u].as_str(), self.vertices[v].as_str(), cap))
    }

    pub(crate) fn edges_indexed(&self) -> impl Iterator<Item = ((usize, usize), &S)> {
        self.edges.iter().map(|(&k, c)| (k, c))
    }

    pub fn capacity(&self, u: &str, v: &str) -> Option<&S> {
        let ui = *self.index.get(u)?;
        let vi = *self.index.get(v)?;
        self.edges.get(&(ui.min(vi), ui.max(vi)))
    }

    /// Sum of all edge capacities.
    pub fn total_capacity(&self) -> S {
        self.edges
            .values()
            .fold(S::zero(), |acc, c| acc + c.clone())
    }

    /// First negative-capacity edge, if any.
    pub fn first_negative_edge(&self) -> Option<(&str, &str, &S)> {
        self.edges_named().find(|(_, _, c)| **c < S::zero())
    }

    /// Adjacency lists indexed by vertex, with deterministic neighbor order.
    pub(crate) fn adjacency(&self) -> Vec<BTreeMap<usize, S>> {
        let mut adj = vec![BTreeMap::new(); self.vertices.len()];
        for (&(u, v), cap) in &self.edges {
            adj[u].insert(v, cap.clone());
            adj[v].insert(u, cap.clone());
        }
        adj
    }

    /// Exact total capacity of edges with exactly one endpoint in `side`.
    pub fn cut_value(&self, side: &HashSet<String>) -> Result<S> {
        let mut mask = vec![false; self.vertices.len()];
        for name in side {
            mask[self.index_of(name)?] = true;
        }
        Ok(self.cut_value_mask(&mask))
    }

    pub(crate) fn cut_value_mask(&self, in_side: &[bool]) -> S {
        let mut total = S::zero();
        for (&(u, v), cap) in &self.edges {
            if in_side[u] != in_side[v] {
                total = total + cap.clone();
            }
        }
        total
    }

    /// Graph with every capacity multiplied by `factor`.
    pub fn scale(&self, factor: &S) -> Self {
        let edges = self
            .edges
            .iter()
            .map(|(&k, c)| (k, c.clone() * factor.clone()))
            .collect();
        Self::from_parts(self.vertices.clone(), self.terminals.clone(), edges)
    }

    /// Contract the graph along a vertex partition.
    ///
    /// Each cluster becomes one vertex; inter-cluster capacities are summed
    /// and intra-cluster edges dropped. A cluster containing a terminal takes
    /// that terminal's name, other clusters keep their partition id. Clusters
    /// are ordered by their smallest contained vertex index, and the terminal
    /// order of the input carries over.
    pub fn contract(&self, partition: &VertexPartition) -> Result<CapGraph<S>> {
        let cluster_of = partition.cluster_index_map(self)?;

        // Reject clusters holding two distinct terminals.
        let mut terminal_in_cluster: Vec<Option<usize>> = vec![None; partition.clusters.len()];
        for &t in &self.terminals {
            let c = cluster_of[t];
            if let Some(prev) = terminal_in_cluster[c] {
                return Err(Error::TerminalMerge(
                    self.vertices[prev].clone(),
                    self.vertices[t].clone(),
                ));
            }
            terminal_in_cluster[c] = Some(t);
        }

        // Order clusters by smallest member index.
        let mut min_member: Vec<usize> = vec![usize::MAX; partition.clusters.len()];
        for (v, &c) in cluster_of.iter().enumerate() {
            min_member[c] = min_member[c].min(v);
        }
        let mut order: Vec<usize> = (0..partition.clusters.len()).collect();
        order.sort_by_key(|&c| min_member[c]);
        let mut position = vec![0usize; partition.clusters.len()];
        for (pos, &c) in order.iter().enumerate() {
            position[c] = pos;
        }

        let mut names = Vec::with_capacity(order.len());
        let mut used = HashSet::new();
        for &c in &order {
            let name = match terminal_in_cluster[c] {
                Some(t) => self.vertices[t].clone(),
                None => partition.clusters[c].id.clone(),
            };
            if !used.insert(name.clone()) {
                return Err(Error::InvalidPartition(format!(
                    "contracted vertex name {name:?} is not unique"
                )));
            }
            names.push(name);
        }

        let terminal_indices = self
            .terminals
            .iter()
            .map(|&t| position[cluster_of[t]])
            .collect();

        let mut edges: BTreeMap<(usize, usize), S> = BTreeMap::new();
        for (&(u, v), cap) in &self.edges {
            let (cu, cv) = (position[cluster_of[u]], position[cluster_of[v]]);
            if cu == cv {
                continue;
            }
            let key = (cu.min(cv), cu.max(cv));
            match edges.remove(&key) {
                Some(existing) => {
                    edges.insert(key, existing + cap.clone());
                }
                None => {
                    edges.insert(key, cap.clone());
                }
            }
        }

        Ok(CapGraph::from_parts(names, terminal_indices, edges))
    }
}

/// One cluster of a vertex partition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cluster {
    pub id: String,
    pub members: Vec<String>,
}

/// A total partition of a graph's vertices into named, nonempty clusters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexPartition {
    pub clusters: Vec<Cluster>,
}

impl VertexPartition {
    /// The partition with one singleton cluster per vertex.
    pub fn identity<S: Scalar>(g: &CapGraph<S>) -> Self {
        Self {
            clusters: g
                .vertex_names()
                .iter()
                .map(|name| Cluster {
                    id: name.clone(),
                    members: vec![name.clone()],
                })
                .collect(),
        }
    }

    /// Cluster id that `vertex` belongs to, if any.
    pub fn cluster_of(&self, vertex: &str) -> Option<&str> {
        self.clusters
            .iter()
            .find(|c| c.members.iter().any(|m| m == vertex))
            .map(|c| c.id.as_str())
    }

    /// Map each vertex index of `g` to its cluster position, checking that
    /// the partition is total, disjoint, and free of empty clusters.
    pub(crate) fn cluster_index_map<S: Scalar>(&self, g: &CapGraph<S>) -> Result<Vec<usize>> {
        let mut assignment: Vec<Option<usize>> = vec![None; g.vertex_count()];
        for (c, cluster) in self.clusters.iter().enumerate() {
            if cluster.members.is_empty() {
                return Err(Error::InvalidPartition(format!(
                    "cluster {:?} is empty",
                    cluster.id
                )));
            }
            for member in &cluster.members {
                let v = g.index_of(member)?;
                if assignment[v].is_some() {
                    return Err(Error::InvalidPartition(format!(
                        "vertex {member:?} appears in more than one cluster"
                    )));
                }
                assignment[v] = Some(c);
            }
        }
        assignment
            .into_iter()
            .enumerate()
            .map(|(v, a)| {
                a.ok_or_else(|| {
                    Error::InvalidPartition(format!(
                        "vertex {:?} is not covered by the partition",
                        g.vertex_names()[v]
                    ))
                })
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rational_int;
    use crate::Rational;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn star3() -> CapGraph<Rational> {
        CapGraph::new(
            ["a", "b", "c", "s"].map(String::from).to_vec(),
            ["a", "b", "c"].map(String::from).to_vec(),
            [
                ("a".into(), "s".into(), rational_int(1)),
                ("b".into(), "s".into(), rational_int(2)),
                ("c".into(), "s".into(), rational_int(3)),
            ],
        )
        .unwrap()
    }

    fn set(names: &[&str]) -> HashSet<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn merges_parallel_edges() {
        let g = CapGraph::new(
            ["a", "b"].map(String::from).to_vec(),
            ["a", "b"].map(String::from).to_vec(),
            [
                ("a".into(), "b".into(), rational_int(2)),
                ("b".into(), "a".into(), rational_int(3)),
            ],
        )
        .unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.capacity("a", "b").unwrap(), &rational_int(5));
    }

    #[test]
    fn rejects_invalid_inputs() {
        let verts = ["a", "b"].map(String::from).to_vec();
        let terms = ["a", "b"].map(String::from).to_vec();
        assert!(matches!(
            CapGraph::<Rational>::new(
                verts.clone(),
                terms.clone(),
                [("a".to_string(), "a".to_string(), rational_int(1))],
            ),
            Err(Error::SelfLoop(_))
        ));
        assert!(matches!(
            CapGraph::<Rational>::new(
                verts.clone(),
                terms.clone(),
                [("a".to_string(), "b".to_string(), rational_int(-1))],
            ),
            Err(Error::NegativeCapacity { .. })
        ));
        assert!(matches!(
            CapGraph::<Rational>::new(verts.clone(), vec!["a".to_string()], []),
            Err(Error::TooFewTerminals(1))
        ));
        assert!(matches!(
            CapGraph::<Rational>::new(verts.clone(), ["a", "z"].map(String::from).to_vec(), []),
            Err(Error::UnknownTerminal(_))
        ));
        assert!(matches!(
            CapGraph::<Rational>::new(["a", "a"].map(String::from).to_vec(), terms.clone(), []),
            Err(Error::DuplicateVertex(_))
        ));
    }

    #[test]
    fn signed_constructor_accepts_negative() {
        let g = CapGraph::new_signed(
            ["a", "b"].map(String::from).to_vec(),
            ["a", "b"].map(String::from).to_vec(),
            [("a".into(), "b".into(), rational_int(-1))],
        )
        .unwrap();
        assert_eq!(g.first_negative_edge().unwrap().2, &rational_int(-1));
    }

    #[test]
    fn cut_value_examples() {
        let g = star3();
        assert_eq!(g.cut_value(&set(&["a"])).unwrap(), rational_int(1));
        assert_eq!(
            g.cut_value(&set(&["a", "b", "c", "s"])).unwrap(),
            rational_int(0)
        );
        assert_eq!(g.cut_value(&set(&[])).unwrap(), rational_int(0));
        assert!(matches!(
            g.cut_value(&set(&["zz"])),
            Err(Error::UnknownVertex(_))
        ));
    }

    #[test]
    fn cut_is_symmetric() {
        let g = star3();
        let side = set(&["a", "s"]);
        let other = set(&["b", "c"]);
        assert_eq!(g.cut_value(&side).unwrap(), g.cut_value(&other).unwrap());
    }

    #[test]
    fn contract_star3_example() {
        let g = star3();
        let part = VertexPartition {
            clusters: vec![
                Cluster {
                    id: "a".into(),
                    members: vec!["a".into()],
                },
                Cluster {
                    id: "b".into(),
                    members: vec!["b".into()],
                },
                Cluster {
                    id: "z".into(),
                    members: vec!["s".into(), "c".into()],
                },
            ],
        };
        let h = g.contract(&part).unwrap();
        assert_eq!(h.vertex_count(), 3);
        // Cluster {s, c} carries the terminal name "c".
        assert_eq!(h.vertex_names(), &["a", "b", "c"]);
        assert_eq!(h.terminal_names(), vec!["a", "b", "c"]);
        assert_eq!(h.capacity("a", "c").unwrap(), &rational_int(1));
        assert_eq!(h.capacity("b", "c").unwrap(), &rational_int(2));
        assert_eq!(h.edge_count(), 2);
    }

    #[test]
    fn contract_identity_is_identity() {
        let g = star3();
        let h = g.contract(&VertexPartition::identity(&g)).unwrap();
        assert_eq!(h, g);
    }

    #[test]
    fn contract_rejects_merged_terminals() {
        let g = star3();
        let part = VertexPartition {
            clusters: vec![
                Cluster {
                    id: "ab".into(),
                    members: vec!["a".into(), "b".into()],
                },
                Cluster {
                    id: "c".into(),
                    members: vec!["c".into(), "s".into()],
                },
            ],
        };
        assert!(matches!(g.contract(&part), Err(Error::TerminalMerge(_, _))));
    }

    #[test]
    fn partition_validation() {
        let g = star3();
        let missing = VertexPartition {
            clusters: vec![Cluster {
                id: "x".into(),
                members: vec!["a".into(), "b".into(), "c".into()],
            }],
        };
        assert!(matches!(
            missing.cluster_index_map(&g),
            Err(Error::InvalidPartition(_))
        ));
        let overlapping = VertexPartition {
            clusters: vec![
                Cluster {
                    id: "x".into(),
                    members: vec!["a".into(), "b".into()],
                },
                Cluster {
                    id: "y".into(),
                    members: vec!["b".into(), "c".into(), "s".into()],
                },
            ],
        };
        assert!(matches!(
            overlapping.cluster_index_map(&g),
            Err(Error::InvalidPartition(_))
        ));
    }

    /// Cut values recomputed with an independent little fraction type match
    /// the big-rational arithmetic bit for bit.
    #[test]
    fn cut_values_match_independent_summation() {
        fn gcd(a: i128, b: i128) -> i128 {
            if b == 0 {
                a.abs()
            } else {
                gcd(b, a % b)
            }
        }
        // (numerator, denominator) kept in lowest terms with positive denominator.
        fn add(a: (i128, i128), b: (i128, i128)) -> (i128, i128) {
            let num = a.0 * b.1 + b.0 * a.1;
            let den = a.1 * b.1;
            let g = gcd(num, den).max(1);
            (num / g, den / g)
        }

        let caps = [(1i128, 3i128), (5, 7), (2, 1), (9, 4), (11, 6)];
        let vertices: Vec<String> = (0..6).map(|i| format!("v{i}")).collect();
        let edges: Vec<(String, String, Rational)> = caps
            .iter()
            .enumerate()
            .map(|(i, &(p, q))| {
                (
                    vertices[i].clone(),
                    vertices[i + 1].clone(),
                    Rational::new((p as i64).into(), (q as i64).into()),
                )
            })
            .collect();
        let g = CapGraph::new(vertices.clone(), vertices[..2].to_vec(), edges).unwrap();

        for bits in 0u32..(1 << 6) {
            let side: HashSet<String> = (0..6)
                .filter(|i| bits & (1 << i) != 0)
                .map(|i| vertices[i].clone())
                .collect();
            let value = g.cut_value(&side).unwrap();
            let mut expected = (0i128, 1i128);
            for (i, &cap) in caps.iter().enumerate() {
                let crossing = side.contains(&vertices[i]) != side.contains(&vertices[i + 1]);
                if crossing {
                    expected = add(expected, cap);
                }
            }
            assert_eq!(value.numer().to_string(), expected.0.to_string());
            assert_eq!(value.denom().to_string(), expected.1.to_string());
        }
    }

    proptest! {
        /// The cut function is symmetric in the bipartition.
        #[test]
        fn cut_symmetric_on_random_sides(
            g in crate::testutil::arb_graph(),
            bits in 0u32..256,
        ) {
            let side: HashSet<String> = g
                .vertex_names()
                .iter()
                .enumerate()
                .filter(|&(i, _)| bits & (1 << i) != 0)
                .map(|(_, name)| name.clone())
                .collect();
            let complement: HashSet<String> = g
                .vertex_names()
                .iter()
                .filter(|name| !side.contains(*name))
                .cloned()
                .collect();
            prop_assert_eq!(
                g.cut_value(&side).unwrap(),
                g.cut_value(&complement).unwrap()
            );
        }

        /// Contracting any terminal-separating partition never lowers a
        /// minimum terminal cut value.
        #[test]
        fn contraction_never_lowers_cut_values(
            g in crate::testutil::arb_graph(),
            raw_assignment in proptest::collection::vec(0usize..4, 8),
        ) {
            let n = g.vertex_count();
            // Terminals stay singleton clusters; non-terminals are assigned
            // to shared buckets, so no two terminals ever merge.
            let mut clusters: Vec<Cluster> = Vec::new();
            let mut bucket_members: Vec<Vec<String>> = vec![Vec::new(); 4];
            for v in 0..n {
                let name = g.vertex_names()[v].clone();
                if g.is_terminal(&name) {
                    clusters.push(Cluster {
                        id: name.clone(),
                        members: vec![name],
                    });
                } else {
                    bucket_members[raw_assignment[v]].push(name);
                }
            }
            for (i, members) in bucket_members.into_iter().enumerate() {
                if !members.is_empty() {
                    clusters.push(Cluster {
                        id: format!("merge{i}"),
                        members,
                    });
                }
            }
            let contracted = g.contract(&VertexPartition { clusters }).unwrap();

            let terminals: Vec<String> =
                g.terminal_names().iter().map(|s| s.to_string()).collect();
            for subset in crate::cuts::canonical_subsets(&terminals).unwrap() {
                let (before, _) =
                    crate::mincut::brute_force_min_terminal_cut(&g, &subset).unwrap();
                let (after, _) =
                    crate::mincut::brute_force_min_terminal_cut(&contracted, &subset).unwrap();
                prop_assert!(after >= before);
            }
        }
    }
}
