//! Canonical enumeration of terminal bipartitions, the family of all
//! minimum terminal cuts of a graph, the vector of their values, and the
//! laminar-structure checks that the minimal-source-side convention
//! guarantees.
//!
//! With `k` terminals there are `p = 2^(k-1) - 1` distinct bipartitions once
//! `[U, K-U]` and `[K-U, U]` are identified; they are canonicalized by always
//! excluding the last terminal of the input order. Index `i` (1-based) maps
//! to the subset whose characteristic bits over the first `k-1` terminals
//! spell `i`.

use crate::graph::CapGraph;
use crate::mincut::{min_terminal_cut, MinCutResult};
use crate::scalar::Scalar;
use crate::{Error, Result};
use std::collections::BTreeSet;

/// Largest supported terminal count for family enumeration (`p` doubles per
/// terminal; 16 terminals already mean 32767 max-flow runs).
pub const MAX_FAMILY_TERMINALS: usize = 16;

/// The `p` canonical terminal subsets in index order.
///
/// Subset `i` contains terminal `j` (0-based position) exactly when bit `j`
/// of `i` is set; the last terminal never appears.
pub fn canonical_subsets(terminals: &[String]) -> Result<Vec<BTreeSet<String>>> {
    let k = terminals.len();
    if k < 2 {
        return Err(Error::TooFewTerminals(k));
    }
    if k > MAX_FAMILY_TERMINALS {
        return Err(Error::GuardExceeded {
            what: "canonical cut enumeration",
            limit: MAX_FAMILY_TERMINALS,
            actual: k,
        });
    }
    let p = (1usize << (k - 1)) - 1;
    let mut subsets = Vec::with_capacity(p);
    for index in 1..=p {
        subsets.push(
            (0..k - 1)
                .filter(|j| index & (1 << j) != 0)
                .map(|j| terminals[j].clone())
                .collect(),
        );
    }
    Ok(subsets)
}

/// One canonical bipartition together with its minimum cut.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyEntry<S> {
    pub subset: BTreeSet<String>,
    pub cut: MinCutResult<S>,
}

/// All `p` minimum terminal cuts of one graph, in canonical index order.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminalCutFamily<S> {
    pub entries: Vec<FamilyEntry<S>>,
}

impl<S: Scalar> TerminalCutFamily<S> {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// The cut values as a vector.
    pub fn values(&self) -> TerminalCutVector<S> {
        TerminalCutVector {
            values: self.entries.iter().map(|e| e.cut.value.clone()).collect(),
        }
    }
}

/// Compute the full minimum-terminal-cut family of `g`.
pub fn cut_family<S: Scalar>(g: &CapGraph<S>) -> Result<TerminalCutFamily<S>> {
    let terminals: Vec<String> = g.terminal_names().iter().map(|s| s.to_string()).collect();
    let mut entries = Vec::new();
    for subset in canonical_subsets(&terminals)? {
        let cut = min_terminal_cut(g, &subset)?;
        entries.push(FamilyEntry { subset, cut });
    }
    Ok(TerminalCutFamily { entries })
}

/// Vector of the `p` minimum terminal cut values, in canonical index order.
#[derive(Debug, Clone, PartialEq)]
pub struct TerminalCutVector<S> {
    pub values: Vec<S>,
}

/// Minimum terminal cut vector of `g`.
pub fn terminal_cut_vector<S: Scalar>(g: &CapGraph<S>) -> Result<TerminalCutVector<S>> {
    Ok(cut_family(g)?.values())
}

/// Kinds of laminar-structure violations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LaminarViolation {
    /// `subset[i] ⊆ subset[j]` but `source[i] ⊄ source[j]`.
    NestedSubsetsNotNested { i: usize, j: usize },
    /// `subset[i] ∩ subset[j] = ∅` but the source sides intersect.
    DisjointSubsetsOverlap { i: usize, j: usize },
}

/// Outcome of checking nesting and disjointness across a whole family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaminarReport {
    pub violations: Vec<LaminarViolation>,
}

impl LaminarReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that nested subsets have nested source sides and disjoint subsets
/// have disjoint source sides, over all index pairs.
///
/// Under the inclusion-minimal source-side convention both properties are
/// theorems, so any violation indicates an engine bug rather than bad input.
pub fn check_laminar<S: Scalar>(family: &TerminalCutFamily<S>) -> LaminarReport {
    let mut violations = Vec::new();
    let n = family.entries.len();
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let (a, b) = (&family.entries[i], &family.entries[j]);
            if a.subset.is_subset(&b.subset) && !a.cut.source_side.is_subset(&b.cut.source_side) {
                violations.push(LaminarViolation::NestedSubsetsNotNested { i, j });
            }
            if i < j
                && a.subset.is_disjoint(&b.subset)
                && !a.cut.source_side.is_disjoint(&b.cut.source_side)
            {
                violations.push(LaminarViolation::DisjointSubsetsOverlap { i, j });
            }
        }
    }
    LaminarReport { violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{ratio, rational_int};
    use crate::testutil::{arb_graph, edge2, names, set, star3, star3_prime, triangle_unit};
    use crate::Rational;
    use proptest::prelude::*;

    #[test]
    fn canonical_subsets_examples() {
        assert_eq!(
            canonical_subsets(&names(&["a", "b", "c"])).unwrap(),
            vec![set(&["a"]), set(&["b"]), set(&["a", "b"])]
        );
        assert_eq!(
            canonical_subsets(&names(&["a", "b"])).unwrap(),
            vec![set(&["a"])]
        );
        let four = canonical_subsets(&names(&["a", "b", "c", "d"])).unwrap();
        assert_eq!(four.len(), 7);
        assert!(four.iter().all(|s| !s.contains("d")));
    }

    #[test]
    fn canonical_subsets_guards() {
        assert!(matches!(
            canonical_subsets(&names(&["a"])),
            Err(Error::TooFewTerminals(1))
        ));
        let big: Vec<String> = (0..17).map(|i| format!("t{i}")).collect();
        assert!(matches!(
            canonical_subsets(&big),
            Err(Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn star3_family() {
        let fam = cut_family(&star3()).unwrap();
        let sides: Vec<_> = fam
            .entries
            .iter()
            .map(|e| e.cut.source_side.clone())
            .collect();
        assert_eq!(sides, vec![set(&["a"]), set(&["b"]), set(&["a", "b"])]);
        assert_eq!(
            fam.values().values,
            vec![rational_int(1), rational_int(2), rational_int(3)]
        );
        assert!(check_laminar(&fam).is_clean());
    }

    #[test]
    fn star3_prime_family() {
        let fam = cut_family(&star3_prime()).unwrap();
        let sides: Vec<_> = fam
            .entries
            .iter()
            .map(|e| e.cut.source_side.clone())
            .collect();
        assert_eq!(sides, vec![set(&["a"]), set(&["b"]), set(&["a", "b"])]);
        assert_eq!(
            fam.values().values,
            vec![rational_int(1), rational_int(2), rational_int(3)]
        );
    }

    #[test]
    fn edge2_family_is_singleton_and_vacuously_laminar() {
        let fam = cut_family(&edge2()).unwrap();
        assert_eq!(fam.len(), 1);
        assert_eq!(fam.entries[0].cut.value, rational_int(5));
        assert_eq!(fam.entries[0].cut.source_side, set(&["a"]));
        assert!(check_laminar(&fam).is_clean());
    }

    #[test]
    fn cut_vector_examples() {
        assert_eq!(
            terminal_cut_vector(&star3()).unwrap().values,
            vec![rational_int(1), rational_int(2), rational_int(3)]
        );
        let disconnected =
            CapGraph::<Rational>::new(names(&["a", "b", "c"]), names(&["a", "b", "c"]), [])
                .unwrap();
        assert_eq!(
            terminal_cut_vector(&disconnected).unwrap().values,
            vec![rational_int(0); 3]
        );
        assert_eq!(
            terminal_cut_vector(&triangle_unit()).unwrap().values,
            vec![rational_int(2); 3]
        );
    }

    #[test]
    fn forged_family_reports_violations() {
        let mut fam = cut_family(&star3()).unwrap();
        // Corrupt the source side of {a}: it now overlaps the disjoint {b}
        // entry and fails to nest inside the {a, b} entry.
        fam.entries[0].cut.source_side = set(&["b", "s"]);
        let report = check_laminar(&fam);
        assert!(!report.is_clean());
        assert!(report
            .violations
            .contains(&LaminarViolation::DisjointSubsetsOverlap { i: 0, j: 1 }));
        assert!(report
            .violations
            .contains(&LaminarViolation::NestedSubsetsNotNested { i: 0, j: 2 }));
    }

    #[test]
    fn disjoint_component_does_not_change_values() {
        let g = star3();
        let mut vertices = g.vertex_names().to_vec();
        vertices.extend(["p", "q"].map(String::from));
        let mut edges: Vec<(String, String, Rational)> = g
            .edges_named()
            .map(|(u, v, c)| (u.to_string(), v.to_string(), c.clone()))
            .collect();
        edges.push(("p".into(), "q".into(), rational_int(7)));
        let bigger = CapGraph::new(vertices, names(&["a", "b", "c"]), edges).unwrap();
        assert_eq!(
            terminal_cut_vector(&bigger).unwrap(),
            terminal_cut_vector(&g).unwrap()
        );
    }

    proptest! {
        /// Each family entry's source side realizes its recorded value.
        #[test]
        fn source_sides_realize_values(g in arb_graph()) {
            let fam = cut_family(&g).unwrap();
            for entry in &fam.entries {
                let side = entry.cut.source_side.iter().cloned().collect();
                prop_assert_eq!(g.cut_value(&side).unwrap(), entry.cut.value.clone());
            }
        }

        /// Nesting and disjointness hold on every computed family.
        #[test]
        fn families_are_laminar(g in arb_graph()) {
            let fam = cut_family(&g).unwrap();
            prop_assert!(check_laminar(&fam).is_clean());
        }

        /// Scaling capacities scales values and keeps source sides.
        #[test]
        fn scaling_scales_values(g in arb_graph(), num in 1i64..9, den in 1i64..9) {
            let factor = ratio(num, den);
            let scaled = g.scale(&factor);
            let fam = cut_family(&g).unwrap();
            let fam_scaled = cut_family(&scaled).unwrap();
            for (a, b) in fam.entries.iter().zip(&fam_scaled.entries) {
                prop_assert_eq!(a.cut.value.clone() * factor.clone(), b.cut.value.clone());
                prop_assert_eq!(&a.cut.source_side, &b.cut.source_side);
            }
        }
    }
}
