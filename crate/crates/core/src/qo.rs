//! Finite quasi-orders.
//!
//! A [`FiniteQO`] is a carrier of labelled elements together with a dense
//! boolean `<=` table. Element indices follow input order and every set dump
//! in the crate is sorted by index, so constructions are reproducible without
//! any external choice of representatives.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Canonical (index-sorted) set of carrier elements.
pub type ElemSet = BTreeSet<usize>;

/// Label given to the fresh incomparable element added by
/// [`FiniteQO::disjoint_union_with_star`].
pub const STAR_LABEL: &str = "⋆";

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteQO {
    labels: Vec<String>,
    leq: Vec<bool>,
}

/// JSON form of a quasi-order: `{"elements": [...], "order": [[a, b], ...], "close": true}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QoSpec {
    pub elements: Vec<String>,
    #[serde(default)]
    pub order: Vec<(String, String)>,
    #[serde(default)]
    pub close: bool,
}

impl FiniteQO {
    /// Builds a quasi-order from labels and `<=` pairs.
    ///
    /// With `close` set the reflexive-transitive closure of the pairs is
    /// taken; otherwise the pairs must already form a quasi-order.
    pub fn from_pairs<S: AsRef<str>>(
        labels: &[S],
        pairs: &[(S, S)],
        close: bool,
    ) -> Result<Self> {
        let labels: Vec<String> = labels.iter().map(|l| l.as_ref().to_string()).collect();
        let index = label_index(&labels)?;
        let n = labels.len();
        let mut leq = vec![false; n * n];
        for (a, b) in pairs {
            let i = lookup(&index, a.as_ref())?;
            let j = lookup(&index, b.as_ref())?;
            leq[i * n + j] = true;
        }
        if close {
            Ok(Self::closed(labels, leq))
        } else {
            Self::from_table(labels, leq)
        }
    }

    /// Builds a quasi-order from a row-major `n x n` table, rejecting tables
    /// that are not reflexive and transitive.
    pub fn from_table(labels: Vec<String>, leq: Vec<bool>) -> Result<Self> {
        label_index(&labels)?;
        let n = labels.len();
        if leq.len() != n * n {
            return Err(Error::BadTableSize { expected: n * n, got: leq.len() });
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::NotReflexive(labels[i].clone()));
            }
        }
        for i in 0..n {
            for j in 0..n {
                if !leq[i * n + j] {
                    continue;
                }
                for k in 0..n {
                    if leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::NotTransitive(
                            labels[i].clone(),
                            labels[j].clone(),
                            labels[k].clone(),
                        ));
                    }
                }
            }
        }
        Ok(FiniteQO { labels, leq })
    }

    /// For tables already known to be quasi-orders (large derived levels).
    pub(crate) fn from_table_unchecked(labels: Vec<String>, leq: Vec<bool>) -> Self {
        debug_assert_eq!(leq.len(), labels.len() * labels.len());
        FiniteQO { labels, leq }
    }

    /// Builds a quasi-order from an arbitrary relation table by taking its
    /// reflexive-transitive closure. Labels must still be distinct.
    pub fn from_relation_closed(labels: Vec<String>, rel: Vec<bool>) -> Result<Self> {
        label_index(&labels)?;
        let n = labels.len();
        if rel.len() != n * n {
            return Err(Error::BadTableSize { expected: n * n, got: rel.len() });
        }
        Ok(Self::closed(labels, rel))
    }

    fn closed(labels: Vec<String>, mut leq: Vec<bool>) -> Self {
        let n = labels.len();
        for i in 0..n {
            leq[i * n + i] = true;
        }
        // Warshall
        for k in 0..n {
            for i in 0..n {
                if !leq[i * n + k] {
                    continue;
                }
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
        FiniteQO { labels, leq }
    }

    pub fn from_spec(spec: &QoSpec) -> Result<Self> {
        let pairs: Vec<(&str, &str)> =
            spec.order.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let labels: Vec<&str> = spec.elements.iter().map(String::as_str).collect();
        Self::from_pairs(&labels, &pairs, spec.close)
    }

    /// JSON form listing every pair of the (closed) relation, reflexive pairs
    /// included, so that it validates again with `close = false`.
    pub fn to_spec(&self) -> QoSpec {
        let n = self.len();
        let mut order = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.leq(i, j) {
                    order.push((self.labels[i].clone(), self.labels[j].clone()));
                }
            }
        }
        QoSpec { elements: self.labels.clone(), order, close: false }
    }

    /// The `n`-element antichain with labels `a`, `b`, ...
    pub fn antichain(n: usize) -> Self {
        let labels = default_labels(n);
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        FiniteQO { labels, leq }
    }

    /// The `n`-element chain `a < b < ...`.
    pub fn chain(n: usize) -> Self {
        let labels = default_labels(n);
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in i..n {
                leq[i * n + j] = true;
            }
        }
        FiniteQO { labels, leq }
    }

    pub fn empty() -> Self {
        FiniteQO { labels: Vec::new(), leq: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.len()
    }

    #[inline]
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.len() + j]
    }

    #[inline]
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && !self.leq(j, i)
    }

    #[inline]
    pub fn equiv(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) && self.leq(j, i)
    }

    /// Row-major copy of the relation table.
    pub fn table(&self) -> &[bool] {
        &self.leq
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.len();
        (0..n).all(|i| (0..n).all(|j| i == j || !self.equiv(i, j)))
    }

    /// Smallest downward-closed superset of `s`.
    pub fn down_closure(&self, s: &ElemSet) -> ElemSet {
        self.elements().filter(|&y| s.iter().any(|&x| self.leq(y, x))).collect()
    }

    /// Smallest upward-closed superset of `s`.
    pub fn up_closure(&self, s: &ElemSet) -> ElemSet {
        self.elements().filter(|&y| s.iter().any(|&x| self.leq(x, y))).collect()
    }

    /// `x↓`
    pub fn down_of(&self, x: usize) -> ElemSet {
        self.elements().filter(|&y| self.leq(y, x)).collect()
    }

    /// `x↑`
    pub fn up_of(&self, x: usize) -> ElemSet {
        self.elements().filter(|&y| self.leq(x, y)).collect()
    }

    pub fn is_downward_closed(&self, s: &ElemSet) -> bool {
        s.iter().all(|&x| self.elements().all(|y| !self.leq(y, x) || s.contains(&y)))
    }

    pub fn is_upward_closed(&self, s: &ElemSet) -> bool {
        s.iter().all(|&x| self.elements().all(|y| !self.leq(x, y) || s.contains(&y)))
    }

    /// Nonempty, and every two members have an upper bound inside `s`.
    pub fn is_directed(&self, s: &ElemSet) -> bool {
        if s.is_empty() {
            return false;
        }
        s.iter().all(|&a| {
            s.iter().all(|&b| s.iter().any(|&c| self.leq(a, c) && self.leq(b, c)))
        })
    }

    /// Members of `s` with nothing strictly above them in `s`.
    pub fn maximal_in(&self, s: &ElemSet) -> ElemSet {
        s.iter().copied().filter(|&x| !s.iter().any(|&y| self.lt(x, y))).collect()
    }

    pub fn minimal_in(&self, s: &ElemSet) -> ElemSet {
        s.iter().copied().filter(|&x| !s.iter().any(|&y| self.lt(y, x))).collect()
    }

    /// Adds a fresh element incomparable with everything else. The new
    /// element is the last index.
    pub fn disjoint_union_with_star(&self) -> FiniteQO {
        let n = self.len();
        let mut star = STAR_LABEL.to_string();
        while self.labels.contains(&star) {
            star.push('\'');
        }
        let mut labels = self.labels.clone();
        labels.push(star);
        let m = n + 1;
        let mut leq = vec![false; m * m];
        for i in 0..n {
            for j in 0..n {
                leq[i * m + j] = self.leq(i, j);
            }
        }
        leq[n * m + n] = true;
        FiniteQO { labels, leq }
    }

    /// Quotient by mutual comparability. Classes are numbered by their
    /// least-index member and labelled with that member's label.
    pub fn quotient(&self) -> QuotientMap {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut members: Vec<Vec<usize>> = Vec::new();
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = members.len();
            let cls: Vec<usize> = (i..n).filter(|&j| self.equiv(i, j)).collect();
            for &j in &cls {
                class_of[j] = c;
            }
            members.push(cls);
        }
        let k = members.len();
        let labels = members.iter().map(|m| self.labels[m[0]].clone()).collect();
        let mut leq = vec![false; k * k];
        for a in 0..k {
            for b in 0..k {
                leq[a * k + b] = self.leq(members[a][0], members[b][0]);
            }
        }
        QuotientMap { class_of, members, classes: FiniteQO { labels, leq } }
    }

    /// Covering pairs `(x, y)` of the quotient order: `x < y` with nothing
    /// strictly between. Indices refer to the quotient's classes.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut edges = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.lt(x, y) && !(0..n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    edges.push((x, y));
                }
            }
        }
        edges
    }

    /// Graphviz rendering of the Hasse diagram of the quotient.
    pub fn to_dot(&self, name: &str) -> String {
        let q = self.quotient();
        let mut out = String::new();
        let _ = writeln!(out, "digraph {} {{", dot_id(name));
        let _ = writeln!(out, "  rankdir=BT;");
        for (c, members) in q.members.iter().enumerate() {
            let label: Vec<&str> = members.iter().map(|&m| self.label(m)).collect();
            let _ = writeln!(out, "  n{} [label={}];", c, dot_string(&label.join(" ≡ ")));
        }
        for (x, y) in q.classes.hasse_edges() {
            let _ = writeln!(out, "  n{} -> n{};", x, y);
        }
        out.push_str("}\n");
        out
    }

    /// Renders a set of elements by label, in index order.
    pub fn show_set(&self, s: &ElemSet) -> String {
        let parts: Vec<&str> = s.iter().map(|&i| self.label(i)).collect();
        format!("{{{}}}", parts.join(","))
    }
}

/// Every quasi-order on `n` labelled elements (labels `a`, `b`, ...), in a
/// fixed order. There are 1, 1, 4, 29, 355, 6942 of them for n = 0..=5.
pub fn all_quasi_orders(n: usize) -> Vec<FiniteQO> {
    assert!(n <= 5, "enumeration of quasi-orders is limited to n <= 5");
    let off: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, j))).collect();
    let labels = default_labels(n);
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << off.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (bit, &(i, j)) in off.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| !leq[i * n + j] || (0..n).all(|k| !leq[j * n + k] || leq[i * n + k]))
        });
        if transitive {
            out.push(FiniteQO { labels: labels.clone(), leq });
        }
    }
    out
}

/// One representative of every isomorphism class of quasi-orders on `n`
/// elements: the member of the class whose table is lexicographically least.
pub fn quasi_orders_up_to_iso(n: usize) -> Vec<FiniteQO> {
    let perms = permutations(n);
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for q in all_quasi_orders(n) {
        let canon = perms
            .iter()
            .map(|p| {
                let mut t = vec![false; n * n];
                for i in 0..n {
                    for j in 0..n {
                        t[p[i] * n + p[j]] = q.leq(i, j);
                    }
                }
                t
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon.clone()) {
            out.push(FiniteQO { labels: default_labels(n), leq: canon });
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// The canonical quotient of a quasi-order by `≡`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuotientMap {
    /// Class index of every source element.
    pub class_of: Vec<usize>,
    /// Source elements of each class, sorted.
    pub members: Vec<Vec<usize>>,
    /// Partial order on the classes.
    pub classes: FiniteQO,
}

impl QuotientMap {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Least-index member of a class.
    pub fn representative(&self, class: usize) -> usize {
        self.members[class][0]
    }
}

fn default_labels(n: usize) -> Vec<String> {
    (0..n)
        .map(|i| {
            if i < 26 {
                ((b'a' + i as u8) as char).to_string()
            } else {
                format!("x{}", i)
            }
        })
        .collect()
}

fn label_index(labels: &[String]) -> Result<HashMap<&str, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.as_str(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

fn lookup(index: &HashMap<&str, usize>, label: &str) -> Result<usize> {
    index.get(label).copied().ok_or_else(|| Error::UnknownLabel(label.to_string()))
}

pub(crate) fn dot_string(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub(crate) fn dot_id(s: &str) -> String {
    let id: String =
        s.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    if id.is_empty() {
        "G".to_string()
    } else {
        id
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    fn n_shape() -> FiniteQO {
        FiniteQO::from_pairs(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")], true)
            .unwrap()
    }

    #[test]
    fn closure_of_empty_relation_is_antichain() {
        let q = FiniteQO::from_pairs::<&str>(&["a", "b"], &[], true).unwrap();
        assert_eq!(q, FiniteQO::antichain(2));
        assert!(q.leq(0, 0) && q.leq(1, 1) && !q.leq(0, 1) && !q.leq(1, 0));
    }

    #[test]
    fn closure_adds_transitive_pair() {
        let q = FiniteQO::from_pairs(&["a", "b", "c"], &[("a", "b"), ("b", "c")], true).unwrap();
        assert!(q.leq(0, 2));
        assert_eq!(q, FiniteQO::chain(3));
    }

    #[test]
    fn unknown_and_duplicate_labels() {
        assert_eq!(
            FiniteQO::from_pairs(&["a"], &[("a", "b")], true),
            Err(Error::UnknownLabel("b".into()))
        );
        assert_eq!(
            FiniteQO::from_pairs::<&str>(&["a", "a"], &[], true),
            Err(Error::DuplicateLabel("a".into()))
        );
    }

    #[test]
    fn unclosed_input_is_rejected() {
        assert_eq!(
            FiniteQO::from_pairs(&["a", "b"], &[("a", "b")], false),
            Err(Error::NotReflexive("a".into()))
        );
        let err = FiniteQO::from_pairs(
            &["a", "b", "c"],
            &[("a", "a"), ("b", "b"), ("c", "c"), ("a", "b"), ("b", "c")],
            false,
        );
        assert_eq!(err, Err(Error::NotTransitive("a".into(), "b".into(), "c".into())));
    }

    #[test]
    fn spec_round_trip() {
        let q = n_shape();
        let again = FiniteQO::from_spec(&q.to_spec()).unwrap();
        assert_eq!(q, again);
    }

    #[test]
    fn quotient_examples() {
        let a2 = FiniteQO::antichain(2).quotient();
        assert_eq!(a2.len(), 2);
        assert_eq!(a2.class_of, vec![0, 1]);

        let collapsed = FiniteQO::from_pairs(&["a", "b"], &[("a", "b"), ("b", "a")], true)
            .unwrap()
            .quotient();
        assert_eq!(collapsed.len(), 1);
        assert_eq!(collapsed.members, vec![vec![0, 1]]);

        let c3 = FiniteQO::chain(3).quotient();
        assert_eq!(c3.classes, FiniteQO::chain(3));
        assert!(c3.classes.is_antisymmetric());
    }

    #[test]
    fn closures_and_directedness() {
        let c3 = FiniteQO::chain(3);
        assert_eq!(c3.down_closure(&set(&[1])), set(&[0, 1]));
        let a2 = FiniteQO::antichain(2);
        assert_eq!(a2.down_closure(&set(&[0])), set(&[0]));
        assert_eq!(a2.up_closure(&set(&[0, 1])), set(&[0, 1]));

        assert!(!a2.is_directed(&set(&[0, 1])));
        assert!(c3.is_directed(&set(&[0, 2])));
        assert!(a2.is_directed(&set(&[1])));
        assert!(!a2.is_directed(&set(&[])));
    }

    #[test]
    fn star_is_fresh_and_incomparable() {
        let s = FiniteQO::antichain(2).disjoint_union_with_star();
        assert_eq!(s, {
            let mut q = FiniteQO::antichain(3);
            q.labels[2] = STAR_LABEL.into();
            q
        });
        let one = FiniteQO::chain(1).disjoint_union_with_star();
        assert_eq!(one.len(), 2);
        assert!(!one.leq(0, 1) && !one.leq(1, 0));
        let e = FiniteQO::empty().disjoint_union_with_star();
        assert_eq!(e.labels(), &[STAR_LABEL.to_string()]);
    }

    #[test]
    fn quasi_order_counts() {
        let counts: Vec<usize> = (0..=4).map(|n| all_quasi_orders(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 4, 29, 355]);
        let iso: Vec<usize> = (0..=4).map(|n| quasi_orders_up_to_iso(n).len()).collect();
        assert_eq!(iso, vec![1, 1, 3, 9, 33]);
    }

    #[test]
    fn hasse_of_chain_has_only_covers() {
        assert_eq!(FiniteQO::chain(3).hasse_edges(), vec![(0, 1), (1, 2)]);
        let dot = n_shape().to_dot("n");
        assert!(dot.contains("n0 -> n2;"));
        assert!(!dot.contains("n0 -> n1;"));
    }
}
