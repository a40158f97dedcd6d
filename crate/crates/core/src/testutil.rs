//! Shared fixtures and strategies for unit tests.

use crate::graph::CapGraph;
use crate::rational::rational_int;
use crate::Rational;
use proptest::prelude::*;
use std::collections::BTreeSet;

pub fn names(list: &[&str]) -> Vec<String> {
    list.iter().map(|s| s.to_string()).collect()
}

pub fn set(list: &[&str]) -> BTreeSet<String> {
    list.iter().map(|s| s.to_string()).collect()
}

fn graph(vertices: &[&str], terminals: &[&str], edges: &[(&str, &str, i64)]) -> CapGraph<Rational> {
    CapGraph::new(
        names(vertices),
        names(terminals),
        edges
            .iter()
            .map(|&(u, v, c)| (u.to_string(), v.to_string(), rational_int(c))),
    )
    .unwrap()
}

/// Star on terminals a, b, c around non-terminal s with leg capacities 1, 2, 3.
pub fn star3() -> CapGraph<Rational> {
    graph(
        &["a", "b", "c", "s"],
        &["a", "b", "c"],
        &[("a", "s", 1), ("b", "s", 2), ("c", "s", 3)],
    )
}

/// Variant with leg capacities 1, 2, 4; all minimum terminal cuts are unique.
pub fn star3_prime() -> CapGraph<Rational> {
    graph(
        &["a", "b", "c", "s"],
        &["a", "b", "c"],
        &[("a", "s", 1), ("b", "s", 2), ("c", "s", 4)],
    )
}

/// Single edge a-b with capacity 5.
pub fn edge2() -> CapGraph<Rational> {
    graph(&["a", "b"], &["a", "b"], &[("a", "b", 5)])
}

/// Unit triangle on terminals a, b, c.
pub fn triangle_unit() -> CapGraph<Rational> {
    graph(
        &["a", "b", "c"],
        &["a", "b", "c"],
        &[("a", "b", 1), ("b", "c", 1), ("a", "c", 1)],
    )
}

/// Strategy for small graphs with nonnegative integer capacities.
pub fn arb_graph() -> impl Strategy<Value = CapGraph<Rational>> {
    (2usize..8)
        .prop_flat_map(|n| {
            let pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .collect();
            let caps = proptest::collection::vec(
                prop_oneof![3 => Just(None), 7 => (1i64..11).prop_map(Some)],
                pairs.len(),
            );
            (Just(n), Just(pairs), caps, 2usize..=n.min(4))
        })
        .prop_map(|(n, pairs, caps, k)| {
            let vertices: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let edges: Vec<(String, String, Rational)> = pairs
                .iter()
                .zip(caps)
                .filter_map(|(&(i, j), c)| {
                    c.map(|c| (vertices[i].clone(), vertices[j].clone(), rational_int(c)))
                })
                .collect();
            let terminals = vertices[..k].to_vec();
            CapGraph::new(vertices, terminals, edges).unwrap()
        })
}
