//! Hereditarily finite sets over a quasi-ordered set of urelements.

use std::cmp::Ordering;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::MonoidalQO;
use crate::qo::FiniteQO;

/// A urelement or a finite set of such things. Children are kept sorted and
/// deduplicated, so structural equality is set equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HSet {
    Ur(usize),
    Set(Vec<HSet>),
}

impl HSet {
    /// Fails on an empty child list: every set must reach a urelement.
    pub fn set(children: impl IntoIterator<Item = HSet>) -> Result<HSet> {
        let mut c: Vec<HSet> = children.into_iter().collect();
        if c.is_empty() {
            return Err(Error::EmptySet);
        }
        c.sort();
        c.dedup();
        Ok(HSet::Set(c))
    }

    pub fn singleton(x: HSet) -> HSet {
        HSet::Set(vec![x])
    }

    pub fn is_ur(&self) -> bool {
        matches!(self, HSet::Ur(_))
    }

    pub fn children(&self) -> &[HSet] {
        match self {
            HSet::Ur(_) => &[],
            HSet::Set(c) => c,
        }
    }

    /// `-1` for urelements.
    pub fn rank(&self) -> i64 {
        match self {
            HSet::Ur(_) => -1,
            HSet::Set(c) => 1 + c.iter().map(HSet::rank).max().unwrap_or(-1),
        }
    }

    /// Sorted, deduplicated urelements in the transitive closure.
    pub fn urelements(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_ur(&mut out);
        out.sort_unstable();
        out.dedup();
        out
    }

    fn collect_ur(&self, out: &mut Vec<usize>) {
        match self {
            HSet::Ur(u) => out.push(*u),
            HSet::Set(c) => c.iter().for_each(|x| x.collect_ur(out)),
        }
    }

    /// No empty set occurs anywhere inside.
    pub fn is_grounded(&self) -> bool {
        match self {
            HSet::Ur(_) => true,
            HSet::Set(c) => !c.is_empty() && c.iter().all(HSet::is_grounded),
        }
    }

    pub fn show(&self, q: &FiniteQO) -> String {
        match self {
            HSet::Ur(u) => q.label(*u).to_string(),
            HSet::Set(c) => {
                let inner: Vec<String> = c.iter().map(|x| x.show(q)).collect();
                format!("{{{}}}", inner.join(","))
            }
        }
    }
}

/// The recursive order on hereditary sets: urelements compare in `q`, a
/// urelement is wrapped as a singleton against a set, and sets compare by
/// "every member is below some member".
pub fn lesssim_star(x: &HSet, y: &HSet, q: &FiniteQO) -> bool {
    match (x, y) {
        (HSet::Ur(a), HSet::Ur(b)) => q.leq(*a, *b),
        (HSet::Set(xs), HSet::Ur(_)) => xs.iter().all(|c| lesssim_star(c, y, q)),
        (HSet::Ur(_), HSet::Set(ys)) => ys.iter().any(|d| lesssim_star(x, d, q)),
        (HSet::Set(xs), HSet::Set(ys)) => {
            xs.iter().all(|c| ys.iter().any(|d| lesssim_star(c, d, q)))
        }
    }
}

pub fn sim_star(x: &HSet, y: &HSet, q: &FiniteQO) -> bool {
    lesssim_star(x, y, q) && lesssim_star(y, x, q)
}

/// Strict comparison helper: `Less` / `Greater` / `Equal` for the
/// equivalence, `None` when incomparable.
pub fn compare_star(x: &HSet, y: &HSet, q: &FiniteQO) -> Option<Ordering> {
    match (lesssim_star(x, y, q), lesssim_star(y, x, q)) {
        (true, true) => Some(Ordering::Equal),
        (true, false) => Some(Ordering::Less),
        (false, true) => Some(Ordering::Greater),
        (false, false) => None,
    }
}

/// Extends the monoid product: urelements multiply in the table, a
/// urelement is wrapped as a singleton against a set, and two sets give the
/// set of pairwise products.
pub fn hset_mult(x: &HSet, y: &HSet, m: &MonoidalQO) -> HSet {
    match (x, y) {
        (HSet::Ur(a), HSet::Ur(b)) => HSet::Ur(m.mul(*a, *b)),
        (HSet::Ur(_), HSet::Set(ys)) => collect_set(ys.iter().map(|d| hset_mult(x, d, m))),
        (HSet::Set(xs), HSet::Ur(_)) => collect_set(xs.iter().map(|c| hset_mult(c, y, m))),
        (HSet::Set(xs), HSet::Set(ys)) => {
            collect_set(xs.iter().flat_map(|c| ys.iter().map(move |d| hset_mult(c, d, m))))
        }
    }
}

fn collect_set(items: impl Iterator<Item = HSet>) -> HSet {
    let mut c: Vec<HSet> = items.collect();
    c.sort();
    c.dedup();
    HSet::Set(c)
}

/// Urelements, and sets whose members are hereditarily directed and which
/// contain an upper bound for every pair of members.
pub fn is_hereditarily_directed(x: &HSet, q: &FiniteQO) -> bool {
    match x {
        HSet::Ur(_) => true,
        HSet::Set(c) => {
            c.iter().all(|y| is_hereditarily_directed(y, q))
                && c.iter().all(|y| {
                    c.iter().all(|z| {
                        c.iter().any(|w| lesssim_star(y, w, q) && lesssim_star(z, w, q))
                    })
                })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn ur(i: usize) -> HSet {
        HSet::Ur(i)
    }

    fn set(c: Vec<HSet>) -> HSet {
        HSet::set(c).unwrap()
    }

    #[test]
    fn order_examples_over_a2() {
        let q = fixtures::a2();
        assert!(lesssim_star(&ur(0), &ur(0), &q));
        let ab = set(vec![ur(0), ur(1)]);
        assert!(lesssim_star(&ur(0), &ab, &q));
        assert!(!lesssim_star(&ab, &ur(0), &q));
        assert!(sim_star(&ur(0), &set(vec![ur(0)]), &q));
        assert_eq!(compare_star(&ur(0), &ur(1), &q), None);
    }

    #[test]
    fn ranks() {
        assert_eq!(ur(0).rank(), -1);
        assert_eq!(set(vec![ur(0)]).rank(), 0);
        assert_eq!(set(vec![set(vec![ur(0)])]).rank(), 1);
    }

    #[test]
    fn children_are_canonical() {
        let x = set(vec![ur(1), ur(0), ur(1)]);
        assert_eq!(x, HSet::Set(vec![ur(0), ur(1)]));
        assert_eq!(HSet::set(Vec::new()), Err(Error::EmptySet));
        assert!(!HSet::Set(vec![HSet::Set(vec![])]).is_grounded());
    }

    #[test]
    fn product_cases() {
        let m = fixtures::capped_addition(4);
        let (one, two, three) = (ur(1), ur(2), ur(3));
        assert_eq!(hset_mult(&ur(0), &two, &m), two);
        assert_eq!(hset_mult(&set(vec![one.clone()]), &two, &m), set(vec![three.clone()]));
        assert_eq!(
            hset_mult(&set(vec![one.clone(), two.clone()]), &set(vec![one.clone()]), &m),
            set(vec![two.clone(), three.clone()])
        );
        assert_eq!(hset_mult(&one, &set(vec![one.clone(), three]), &m), set(vec![two, ur(4)]));
    }

    #[test]
    fn directedness() {
        let q = fixtures::a2();
        assert!(is_hereditarily_directed(&set(vec![ur(0)]), &q));
        assert!(!is_hereditarily_directed(&set(vec![ur(0), ur(1)]), &q));
        let c = FiniteQO::chain(3);
        assert!(is_hereditarily_directed(&set(vec![ur(0), ur(2)]), &c));
    }

    #[test]
    fn show_uses_labels() {
        let q = fixtures::a2();
        assert_eq!(set(vec![ur(1), set(vec![ur(0)])]).show(&q), "{b,{a}}");
    }
}
