//! Nonempty downward-closed subsets and ideals of a finite quasi-order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::monoid::MonoidalQO;
use crate::qo::{ElemSet, FiniteQO};

/// A nonempty downward-closed set of elements of some [`FiniteQO`].
///
/// The base order is not stored; every operation takes it explicitly.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Downset(ElemSet);

/// A directed [`Downset`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Ideal(Downset);

impl Downset {
    pub fn new(q: &FiniteQO, members: ElemSet) -> Result<Self> {
        check_members(q, &members)?;
        if members.is_empty() {
            return Err(Error::EmptySet);
        }
        if !q.is_downward_closed(&members) {
            return Err(Error::NotDownwardClosed);
        }
        Ok(Downset(members))
    }

    /// Downward closure of an arbitrary nonempty set.
    pub fn generated_by(q: &FiniteQO, gens: &ElemSet) -> Result<Self> {
        check_members(q, gens)?;
        if gens.is_empty() {
            return Err(Error::EmptySet);
        }
        Ok(Downset(q.down_closure(gens)))
    }

    pub fn principal(q: &FiniteQO, x: usize) -> Self {
        Downset(q.down_of(x))
    }

    pub fn members(&self) -> &ElemSet {
        &self.0
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Downset) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn union(&self, other: &Downset) -> Downset {
        Downset(self.0.union(&other.0).copied().collect())
    }

    pub fn is_ideal(&self, q: &FiniteQO) -> bool {
        q.is_directed(&self.0)
    }

    pub fn into_ideal(self, q: &FiniteQO) -> Option<Ideal> {
        self.is_ideal(q).then_some(Ideal(self))
    }
}

impl Ideal {
    pub fn new(q: &FiniteQO, members: ElemSet) -> Result<Self> {
        let d = Downset::new(q, members)?;
        d.into_ideal(q).ok_or(Error::Internal("set is not directed".into()))
    }

    pub fn principal(q: &FiniteQO, x: usize) -> Self {
        Ideal(Downset::principal(q, x))
    }

    pub fn as_downset(&self) -> &Downset {
        &self.0
    }

    pub fn members(&self) -> &ElemSet {
        self.0.members()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl From<Ideal> for Downset {
    fn from(i: Ideal) -> Downset {
        i.0
    }
}

fn check_members(q: &FiniteQO, s: &ElemSet) -> Result<()> {
    match s.iter().find(|&&x| x >= q.len()) {
        Some(&index) => Err(Error::IndexOutOfRange { index, size: q.len() }),
        None => Ok(()),
    }
}

/// All nonempty downward-closed subsets of `q`, sorted, without duplicates.
pub fn enumerate_downsets(q: &FiniteQO) -> Result<Vec<Downset>> {
    enumerate_downsets_capped(q, usize::MAX)
}

/// As [`enumerate_downsets`], failing with `CombinatorialBlowup` once more
/// than `cap` downsets have been produced.
pub fn enumerate_downsets_capped(q: &FiniteQO, cap: usize) -> Result<Vec<Downset>> {
    if q.is_empty() {
        return Err(Error::EmptyCarrier);
    }
    let quot = q.quotient();
    let k = quot.len();
    // Classes sorted by the size of their down-set form a linear extension.
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&c| (quot.classes.down_of(c).len(), c));
    let below: Vec<Vec<usize>> = (0..k)
        .map(|c| (0..k).filter(|&d| quot.classes.lt(d, c)).collect())
        .collect();

    let mut chosen = vec![false; k];
    let mut out = Vec::new();
    fn walk(
        pos: usize,
        order: &[usize],
        below: &[Vec<usize>],
        chosen: &mut Vec<bool>,
        out: &mut Vec<Vec<bool>>,
        cap: usize,
    ) -> bool {
        if pos == order.len() {
            if chosen.iter().any(|&b| b) {
                if out.len() >= cap {
                    return false;
                }
                out.push(chosen.clone());
            }
            return true;
        }
        let c = order[pos];
        if !walk(pos + 1, order, below, chosen, out, cap) {
            return false;
        }
        if below[c].iter().all(|&d| chosen[d]) {
            chosen[c] = true;
            let ok = walk(pos + 1, order, below, chosen, out, cap);
            chosen[c] = false;
            if !ok {
                return false;
            }
        }
        true
    }
    if !walk(0, &order, &below, &mut chosen, &mut out, cap) {
        return Err(Error::CombinatorialBlowup {
            bound: cap,
            what: format!("downsets of a {}-element order", q.len()),
        });
    }
    let mut sets: Vec<Downset> = out
        .into_iter()
        .map(|mask| {
            Downset(
                q.elements().filter(|&x| mask[quot.class_of[x]]).collect(),
            )
        })
        .collect();
    sets.sort();
    Ok(sets)
}

/// All ideals of `q`: the directed members of [`enumerate_downsets`].
pub fn enumerate_ideals(q: &FiniteQO) -> Result<Vec<Ideal>> {
    Ok(enumerate_downsets(q)?.into_iter().filter_map(|d| d.into_ideal(q)).collect())
}

/// Principal ideals `x↓`, one per `≡`-class, sorted.
pub fn principal_ideals(q: &FiniteQO) -> Vec<Ideal> {
    let quot = q.quotient();
    let mut out: Vec<Ideal> =
        (0..quot.len()).map(|c| Ideal::principal(q, quot.representative(c))).collect();
    out.sort();
    out
}

/// Minimal decomposition of `d` into pairwise incomparable ideals: the
/// principal ideals of its maximal elements, one per `≡`-class.
pub fn ideal_decomposition(q: &FiniteQO, d: &Downset) -> Vec<Ideal> {
    let maxima = q.maximal_in(d.members());
    let mut out: Vec<Ideal> = Vec::new();
    for x in maxima {
        let i = Ideal::principal(q, x);
        if !out.contains(&i) {
            out.push(i);
        }
    }
    out.sort();
    out
}

/// Decomposition by repeated splitting: a non-directed `D` with members
/// `a`, `b` lacking a common upper bound is covered by
/// `D_a = {d : a ≰ d}` and `D_b = {d : b ≰ d}`, both strictly smaller.
/// The resulting ideals are reduced to the inclusion-maximal ones.
pub fn ideal_decomposition_by_splitting(q: &FiniteQO, d: &Downset) -> Vec<Ideal> {
    fn split(q: &FiniteQO, d: &ElemSet, acc: &mut Vec<ElemSet>) {
        let witness = d.iter().find_map(|&a| {
            d.iter()
                .find(|&&b| !d.iter().any(|&c| q.leq(a, c) && q.leq(b, c)))
                .map(|&b| (a, b))
        });
        match witness {
            None => acc.push(d.clone()),
            Some((a, b)) => {
                let da: ElemSet = d.iter().copied().filter(|&x| !q.leq(a, x)).collect();
                let db: ElemSet = d.iter().copied().filter(|&x| !q.leq(b, x)).collect();
                split(q, &da, acc);
                split(q, &db, acc);
            }
        }
    }
    let mut parts = Vec::new();
    split(q, d.members(), &mut parts);
    let mut out: Vec<Ideal> = Vec::new();
    for (i, p) in parts.iter().enumerate() {
        let dominated = parts.iter().enumerate().any(|(j, r)| {
            j != i && p.is_subset(r) && (p != r || j < i)
        });
        if !dominated {
            out.push(Ideal(Downset(p.clone())));
        }
    }
    out.sort();
    out
}

/// `x • y = {z : z ≤ x'y' for some x' ∈ x, y' ∈ y}`.
pub fn downset_product(x: &Downset, y: &Downset, m: &MonoidalQO) -> Downset {
    let q = m.order();
    let products: ElemSet =
        x.members().iter().flat_map(|&a| y.members().iter().map(move |&b| m.mul(a, b))).collect();
    Downset(q.down_closure(&products))
}

/// Product of two ideals; directedness is preserved by the product.
pub fn ideal_product(x: &Ideal, y: &Ideal, m: &MonoidalQO) -> Result<Ideal> {
    downset_product(x.as_downset(), y.as_downset(), m)
        .into_ideal(m.order())
        .ok_or_else(|| Error::Internal("product of ideals is not directed".into()))
}

/// Witnesses `C = ⋃ A_i B_i` with `A_i ⊆ A`, `B_i ⊆ B` for `C ⊆ AB`, built
/// from the sets `B_a = {b ∈ B : ab ∈ C}`: one pair per distinct nonempty
/// `B_a`, with `A_i = {a ∈ A : a b ∈ C for all b ∈ B_i}`.
///
/// Returns `None` when `C ⊄ AB`. The caller decides whether the union
/// actually equals `C` (it does whenever `m` has the +-property).
pub fn product_decomposition(
    a: &Downset,
    b: &Downset,
    c: &Downset,
    m: &MonoidalQO,
) -> Option<Vec<(Downset, Downset)>> {
    if !c.is_subset(&downset_product(a, b, m)) {
        return None;
    }
    let mut b_sets: Vec<ElemSet> = Vec::new();
    for &x in a.members() {
        let bx: ElemSet = b.members().iter().copied().filter(|&y| c.contains(m.mul(x, y))).collect();
        if !bx.is_empty() && !b_sets.contains(&bx) {
            b_sets.push(bx);
        }
    }
    let pairs = b_sets
        .into_iter()
        .map(|bi| {
            let ai: ElemSet = a
                .members()
                .iter()
                .copied()
                .filter(|&x| bi.iter().all(|&y| c.contains(m.mul(x, y))))
                .collect();
            (Downset(ai), Downset(bi))
        })
        .collect();
    Some(pairs)
}

pub fn union_all<'a>(sets: impl IntoIterator<Item = &'a Downset>) -> Option<Downset> {
    let mut it = sets.into_iter();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, d| acc.union(d)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(xs: &[usize]) -> ElemSet {
        xs.iter().copied().collect()
    }

    fn n_shape() -> FiniteQO {
        FiniteQO::from_pairs(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")], true)
            .unwrap()
    }

    fn members(ds: &[Downset]) -> Vec<ElemSet> {
        ds.iter().map(|d| d.members().clone()).collect()
    }

    #[test]
    fn downsets_of_small_orders() {
        let a2 = FiniteQO::antichain(2);
        assert_eq!(
            members(&enumerate_downsets(&a2).unwrap()),
            vec![set(&[0]), set(&[0, 1]), set(&[1])]
        );
        let c2 = FiniteQO::chain(2);
        assert_eq!(members(&enumerate_downsets(&c2).unwrap()), vec![set(&[0]), set(&[0, 1])]);
        assert_eq!(enumerate_downsets(&FiniteQO::antichain(3)).unwrap().len(), 7);
        assert_eq!(enumerate_downsets(&FiniteQO::empty()), Err(Error::EmptyCarrier));
    }

    #[test]
    fn downset_cap_is_enforced() {
        let err = enumerate_downsets_capped(&FiniteQO::antichain(4), 10).unwrap_err();
        assert!(matches!(err, Error::CombinatorialBlowup { bound: 10, .. }));
    }

    #[test]
    fn ideals_of_small_orders() {
        let a2 = enumerate_ideals(&FiniteQO::antichain(2)).unwrap();
        let got: Vec<ElemSet> = a2.iter().map(|i| i.members().clone()).collect();
        assert_eq!(got, vec![set(&[0]), set(&[1])]);
        let c2 = enumerate_ideals(&FiniteQO::chain(2)).unwrap();
        let got: Vec<ElemSet> = c2.iter().map(|i| i.members().clone()).collect();
        assert_eq!(got, vec![set(&[0]), set(&[0, 1])]);
        assert_eq!(enumerate_ideals(&FiniteQO::antichain(3)).unwrap().len(), 3);
    }

    #[test]
    fn decomposition_examples() {
        let a2 = FiniteQO::antichain(2);
        let d = Downset::new(&a2, set(&[0, 1])).unwrap();
        let parts: Vec<ElemSet> =
            ideal_decomposition(&a2, &d).iter().map(|i| i.members().clone()).collect();
        assert_eq!(parts, vec![set(&[0]), set(&[1])]);

        let c2 = FiniteQO::chain(2);
        let d = Downset::new(&c2, set(&[0, 1])).unwrap();
        assert_eq!(ideal_decomposition(&c2, &d).len(), 1);

        let n = n_shape();
        let d = Downset::new(&n, set(&[0, 1])).unwrap();
        let parts: Vec<ElemSet> =
            ideal_decomposition(&n, &d).iter().map(|i| i.members().clone()).collect();
        assert_eq!(parts, vec![set(&[0]), set(&[1])]);
    }

    #[test]
    fn n_shape_decomposition_matches_exhaustive_union_search() {
        // Oracle: among all families of ideals, the inclusion-minimal ones whose
        // union is D.
        let n = n_shape();
        let ideals = enumerate_ideals(&n).unwrap();
        let d = Downset::new(&n, set(&[0, 1])).unwrap();
        let mut best: Option<Vec<usize>> = None;
        for mask in 1u32..(1 << ideals.len()) {
            let fam: Vec<usize> = (0..ideals.len()).filter(|&i| mask >> i & 1 == 1).collect();
            let u = union_all(fam.iter().map(|&i| ideals[i].as_downset())).unwrap();
            if u == d && best.as_ref().is_none_or(|b| fam.len() < b.len()) {
                best = Some(fam);
            }
        }
        let best: Vec<Ideal> = best.unwrap().into_iter().map(|i| ideals[i].clone()).collect();
        assert_eq!(best, ideal_decomposition(&n, &d));
    }

    #[test]
    fn product_examples() {
        let m = fixtures::capped_addition(4);
        let q = m.order();
        let unit = Downset::principal(q, m.unit());
        for d in enumerate_downsets(q).unwrap() {
            assert_eq!(downset_product(&unit, &d, &m), d);
            assert_eq!(downset_product(&d, &unit, &m), d);
        }
        for a in q.elements() {
            for b in q.elements() {
                let lhs = downset_product(&Downset::principal(q, a), &Downset::principal(q, b), &m);
                assert_eq!(lhs, Downset::principal(q, m.mul(a, b)));
            }
        }
    }

    #[test]
    fn product_distributes_over_union_on_three_element_monoid() {
        // {0, 1, 2} under addition capped at 2
        let m = fixtures::capped_addition(2);
        let q = m.order();
        let ideals = enumerate_ideals(q).unwrap();
        for i in &ideals {
            for j in &ideals {
                for k in &ideals {
                    for h in &ideals {
                        let (i, j, k, h) =
                            (i.as_downset(), j.as_downset(), k.as_downset(), h.as_downset());
                        let lhs = downset_product(&i.union(j), &k.union(h), &m);
                        let rhs = union_all([
                            &downset_product(i, k, &m),
                            &downset_product(i, h, &m),
                            &downset_product(j, k, &m),
                            &downset_product(j, h, &m),
                        ])
                        .unwrap();
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }
}
