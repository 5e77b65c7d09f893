//! Monoidal quasi-orders given by a full multiplication table.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::downset::{enumerate_ideals, ideal_product, Ideal};
use crate::error::{Error, Result};
use crate::qo::{ElemSet, FiniteQO, QoSpec};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidalQO {
    order: FiniteQO,
    mult: Vec<usize>,
    unit: usize,
}

/// Element reference in JSON input: a label or a carrier index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ref {
    Index(usize),
    Label(String),
}

/// Which checks a fixture is expected to pass.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Expectations {
    pub axioms: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub plus: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime_product: Option<bool>,
}

/// JSON form: a [`QoSpec`] plus `"mult": [[x, y, xy], ...]` and `"unit"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidSpec {
    #[serde(flatten)]
    pub order: QoSpec,
    pub mult: Vec<(Ref, Ref, Ref)>,
    pub unit: Ref,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectations>,
}

impl MonoidalQO {
    /// Wraps a row-major `n x n` product table. No axiom is enforced here;
    /// run [`MonoidalQO::check_axioms`] to validate.
    pub fn new(order: FiniteQO, mult: Vec<usize>, unit: usize) -> Result<Self> {
        let n = order.len();
        if n == 0 {
            return Err(Error::EmptyCarrier);
        }
        if mult.len() != n * n {
            return Err(Error::BadTableSize { expected: n * n, got: mult.len() });
        }
        if let Some(&bad) = mult.iter().find(|&&k| k >= n) {
            return Err(Error::IndexOutOfRange { index: bad, size: n });
        }
        if unit >= n {
            return Err(Error::IndexOutOfRange { index: unit, size: n });
        }
        Ok(MonoidalQO { order, mult, unit })
    }

    /// Builds the table from a product function.
    pub fn from_fn(order: FiniteQO, unit: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let n = order.len();
        let mult = (0..n * n).map(|k| f(k / n, k % n)).collect();
        Self::new(order, mult, unit)
    }

    pub fn from_spec(spec: &MonoidSpec) -> Result<Self> {
        let order = FiniteQO::from_spec(&spec.order)?;
        let n = order.len();
        let resolve = |r: &Ref| -> Result<usize> {
            match r {
                Ref::Index(i) if *i < n => Ok(*i),
                Ref::Index(i) => Err(Error::IndexOutOfRange { index: *i, size: n }),
                Ref::Label(l) => order.index_of(l),
            }
        };
        let mut table: Vec<Option<usize>> = vec![None; n * n];
        for (x, y, z) in &spec.mult {
            let (x, y, z) = (resolve(x)?, resolve(y)?, resolve(z)?);
            if table[x * n + y].replace(z).is_some() {
                return Err(Error::DuplicateProduct(
                    order.label(x).into(),
                    order.label(y).into(),
                ));
            }
        }
        let mut mult = Vec::with_capacity(n * n);
        for (k, v) in table.into_iter().enumerate() {
            match v {
                Some(z) => mult.push(z),
                None => {
                    return Err(Error::MissingProduct(
                        order.label(k / n).into(),
                        order.label(k % n).into(),
                    ))
                }
            }
        }
        let unit = resolve(&spec.unit)?;
        Self::new(order, mult, unit)
    }

    /// Label-based JSON form with the full table, in index order.
    pub fn to_spec(&self, expect: Option<Expectations>) -> MonoidSpec {
        let n = self.len();
        let lab = |i: usize| Ref::Label(self.order.label(i).to_string());
        let mut mult = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                mult.push((lab(x), lab(y), lab(self.mul(x, y))));
            }
        }
        MonoidSpec { order: self.order.to_spec(), mult, unit: lab(self.unit), expect }
    }

    pub fn order(&self) -> &FiniteQO {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn mul(&self, x: usize, y: usize) -> usize {
        self.mult[x * self.len() + y]
    }

    /// Product of a list; the empty product is the unit.
    pub fn product(&self, xs: &[usize]) -> usize {
        xs.iter().fold(self.unit, |acc, &x| self.mul(acc, x))
    }

    pub fn label(&self, x: usize) -> &str {
        self.order.label(x)
    }

    fn labels_of(&self, xs: &[usize]) -> Vec<String> {
        xs.iter().map(|&x| self.label(x).to_string()).collect()
    }

    /// Elements `u` with `u q ≡ q ≡ q u` for every `q`.
    pub fn neutral_elements(&self) -> ElemSet {
        find_neutral_all(&self.order, &self.mult)
    }

    pub fn check_axioms(&self) -> Report {
        let n = self.len();
        let q = &self.order;
        let mut assoc = Check::new("associativity");
        let mut incr = Check::new("weakly_increasing");
        let mut mono = Check::new("monotone");
        let mut unit = Check::new("unit");
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    let ok = q.equiv(self.mul(ab, c), self.mul(a, self.mul(b, c)));
                    assoc.record(ok, || self.labels_of(&[a, b, c]));
                }
                let ok = q.leq(a, ab);
                incr.record(ok, || self.labels_of(&[a, b]));
            }
        }
        for a in 0..n {
            for a2 in q.up_of(a) {
                for b in 0..n {
                    for b2 in q.up_of(b) {
                        let ok = q.leq(self.mul(a, b), self.mul(a2, b2));
                        mono.record(ok, || self.labels_of(&[a, a2, b, b2]));
                    }
                }
            }
        }
        for a in 0..n {
            let ok = q.equiv(self.mul(self.unit, a), a) && q.equiv(self.mul(a, self.unit), a);
            unit.record(ok, || self.labels_of(&[a]));
        }
        Report { subject: "axioms".into(), checks: vec![assoc, incr, mono, unit] }
    }

    pub fn axioms_hold(&self) -> bool {
        self.check_axioms().passed()
    }

    /// Every `c ≤ ab` must be equivalent to some `a'b'` with `a' ≤ a`, `b' ≤ b`.
    /// Counterexamples are `[a, b, c]`.
    pub fn check_plus_property(&self) -> Check {
        let n = self.len();
        let q = &self.order;
        let quot = q.quotient();
        let mut check = Check::new("plus_property");
        let downs: Vec<ElemSet> = (0..n).map(|x| q.down_of(x)).collect();
        for a in 0..n {
            for b in 0..n {
                let mut reached = vec![false; quot.len()];
                for &a2 in &downs[a] {
                    for &b2 in &downs[b] {
                        reached[quot.class_of[self.mul(a2, b2)]] = true;
                    }
                }
                for &c in &downs[self.mul(a, b)] {
                    check.record(reached[quot.class_of[c]], || self.labels_of(&[a, b, c]));
                }
            }
        }
        check
    }

    pub fn is_prime(&self, p: usize) -> bool {
        let q = &self.order;
        if q.equiv(p, self.unit) {
            return false;
        }
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| !q.equiv(p, self.mul(a, b)) || q.equiv(p, a) || q.equiv(p, b))
        })
    }

    pub fn primes(&self) -> ElemSet {
        (0..self.len()).filter(|&p| self.is_prime(p)).collect()
    }

    /// Splits `x` into primes, always taking the least `(a, b)` (by index)
    /// with `ab ≡ x` and neither factor equivalent to `x`.
    pub fn prime_factorization(&self, x: usize) -> Result<Vec<usize>> {
        if x >= self.len() {
            return Err(Error::IndexOutOfRange { index: x, size: self.len() });
        }
        let mut out = Vec::new();
        self.factor_into(x, &mut out, 0)?;
        Ok(out)
    }

    fn factor_into(&self, x: usize, out: &mut Vec<usize>, depth: usize) -> Result<()> {
        let q = &self.order;
        let fail = || Error::NoFactorization(self.label(x).to_string());
        if depth > self.len() {
            return Err(fail());
        }
        if q.equiv(x, self.unit) {
            return Ok(());
        }
        if self.is_prime(x) {
            out.push(x);
            return Ok(());
        }
        let n = self.len();
        let split = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .find(|&(a, b)| q.equiv(self.mul(a, b), x) && !q.equiv(a, x) && !q.equiv(b, x))
            .ok_or_else(fail)?;
        // Both factors lie strictly below x only when the order is weakly increasing.
        if !(q.lt(split.0, x) && q.lt(split.1, x)) {
            return Err(fail());
        }
        self.factor_into(split.0, out, depth + 1)?;
        self.factor_into(split.1, out, depth + 1)
    }

    /// A prime below a product of up to `max_len` factors lies below one of them.
    /// Counterexamples are `[p, a_0, ..., a_k]`.
    pub fn check_prime_product_lemma(&self, max_len: usize) -> Check {
        let n = self.len();
        let q = &self.order;
        let primes: Vec<usize> = self.primes().into_iter().collect();
        let mut check = Check::new("prime_product");
        let mut tuple = Vec::with_capacity(max_len);
        for len in 1..=max_len {
            tuple.clear();
            tuple.resize(len, 0);
            loop {
                let prod = self.product(&tuple);
                for &p in &primes {
                    if q.leq(p, prod) {
                        let ok = tuple.iter().any(|&a| q.leq(p, a));
                        check.record(ok, || {
                            let mut w = vec![p];
                            w.extend(&tuple);
                            self.labels_of(&w)
                        });
                    }
                }
                if !next_tuple(&mut tuple, n) {
                    break;
                }
            }
        }
        check
    }

    /// All checks together, named for reports.
    pub fn full_report(&self) -> Report {
        let mut r = self.check_axioms();
        r.subject = "monoid".into();
        if r.passed() {
            r.checks.push(self.check_plus_property());
            r.checks.push(self.check_prime_product_lemma(3));
        }
        r
    }
}

/// Odometer step over `[0, n)^len`; false once exhausted.
pub(crate) fn next_tuple(t: &mut [usize], n: usize) -> bool {
    for slot in t.iter_mut().rev() {
        *slot += 1;
        if *slot < n {
            return true;
        }
        *slot = 0;
    }
    false
}

fn find_neutral_all(order: &FiniteQO, mult: &[usize]) -> ElemSet {
    let n = order.len();
    (0..n)
        .filter(|&u| {
            (0..n).all(|x| order.equiv(mult[u * n + x], x) && order.equiv(mult[x * n + u], x))
        })
        .collect()
}

/// Least-index neutral element of a product table, if one exists.
pub fn find_neutral(order: &FiniteQO, mult: &[usize]) -> Option<usize> {
    find_neutral_all(order, mult).into_iter().next()
}

/// The monoid of ideals under `⊆` and the ideal product, along with the
/// ideal behind each new element.
pub fn ideal_monoid(m: &MonoidalQO) -> Result<(MonoidalQO, Vec<Ideal>)> {
    let q = m.order();
    let ideals = enumerate_ideals(q)?;
    let index: HashMap<&Ideal, usize> = ideals.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let k = ideals.len();
    let labels: Vec<String> = ideals.iter().map(|d| ideal_label(q, d)).collect();
    let mut leq = vec![false; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = ideals[i].is_subset(&ideals[j]);
        }
    }
    let order = FiniteQO::from_table(labels, leq)?;
    let mut mult = Vec::with_capacity(k * k);
    for x in &ideals {
        for y in &ideals {
            let z = ideal_product(x, y, m)?;
            let at = *index
                .get(&z)
                .ok_or_else(|| Error::Internal("ideal product left the ideal set".into()))?;
            mult.push(at);
        }
    }
    let unit_ideal = Ideal::principal(q, m.unit());
    let unit = *index
        .get(&unit_ideal)
        .ok_or_else(|| Error::Internal("unit ideal missing".into()))?;
    let out = MonoidalQO::new(order, mult, unit)?;
    Ok((out, ideals))
}

fn ideal_label(q: &FiniteQO, d: &Ideal) -> String {
    let max = q.maximal_in(d.members());
    match max.iter().next() {
        Some(&g) if q.down_of(g) == *d.members() => format!("↓{}", q.label(g)),
        _ => q.show_set(d.members()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn labels(m: &MonoidalQO, xs: &ElemSet) -> Vec<String> {
        xs.iter().map(|&x| m.label(x).to_string()).collect()
    }

    #[test]
    fn capped_addition_passes_everything() {
        let m = fixtures::capped_addition(4);
        assert!(m.check_axioms().passed());
        assert!(m.check_plus_property().passed);
        assert!(m.check_prime_product_lemma(3).passed);
        assert_eq!(labels(&m, &m.primes()), vec!["1"]);
    }

    #[test]
    fn capped_addition_factorization() {
        let m = fixtures::capped_addition(4);
        let three = m.order().index_of("3").unwrap();
        let one = m.order().index_of("1").unwrap();
        assert_eq!(m.prime_factorization(three).unwrap(), vec![one, one, one]);
        assert_eq!(m.prime_factorization(m.unit()).unwrap(), Vec::<usize>::new());
        assert_eq!(m.prime_factorization(one).unwrap(), vec![one]);
    }

    #[test]
    fn idempotent_two_element() {
        let m = fixtures::idempotent_flat(1);
        assert!(m.check_axioms().passed());
        assert!(m.check_plus_property().passed);
        assert_eq!(labels(&m, &m.primes()), vec!["a"]);
        let (im, ideals) = ideal_monoid(&m).unwrap();
        assert_eq!(im.len(), 2);
        assert_eq!(ideals.len(), 2);
        assert_eq!(im.label(im.unit()), "↓e");
    }

    #[test]
    fn broken_idempotent_fails_weak_increase() {
        let m = fixtures::broken_square();
        let r = m.check_axioms();
        assert!(!r.passed());
        let c = r.check("weakly_increasing").unwrap();
        assert!(!c.passed);
        assert_eq!(c.counterexample.as_deref(), Some(&["a".to_string(), "a".to_string()][..]));
    }

    #[test]
    fn flat_with_three_atoms_fails_plus() {
        let m = fixtures::idempotent_flat(3);
        assert!(m.check_axioms().passed());
        let c = m.check_plus_property();
        assert!(!c.passed);
        let w = c.counterexample.unwrap();
        // the third atom lies below the product of the other two
        assert_eq!(w, vec!["a", "b", "c"]);
    }

    #[test]
    fn ideal_monoid_of_chain_is_chain() {
        let m = fixtures::capped_addition(4);
        let (im, _) = ideal_monoid(&m).unwrap();
        assert_eq!(im.len(), 5);
        assert!(im.check_axioms().passed());
        assert!(im.check_plus_property().passed);
        for i in 0..5 {
            for j in 0..5 {
                assert!(im.order().leq(i, j) || im.order().leq(j, i));
            }
        }
    }

    #[test]
    fn neutral_is_least_class() {
        for m in fixtures::all_named().into_iter().map(|(_, m, _)| m) {
            if !m.axioms_hold() {
                continue;
            }
            let neutral = m.neutral_elements();
            let q = m.order();
            let least: ElemSet =
                q.elements().filter(|&x| q.elements().all(|y| q.leq(x, y))).collect();
            assert_eq!(neutral, least);
        }
    }

    #[test]
    fn spec_round_trip() {
        let m = fixtures::capped_addition(2);
        let spec = m.to_spec(None);
        let json = serde_json::to_string(&spec).unwrap();
        let back: MonoidSpec = serde_json::from_str(&json).unwrap();
        assert_eq!(MonoidalQO::from_spec(&back).unwrap(), m);
    }

    #[test]
    fn spec_accepts_indices_and_reports_gaps() {
        let json = r#"{"elements":["e","a"],"order":[["e","a"]],"close":true,
            "mult":[[0,0,0],[0,1,1],["a","e","a"]],"unit":"e"}"#;
        let spec: MonoidSpec = serde_json::from_str(json).unwrap();
        assert_eq!(
            MonoidalQO::from_spec(&spec),
            Err(Error::MissingProduct("a".into(), "a".into()))
        );
    }

    #[test]
    fn next_tuple_counts() {
        let mut t = vec![0; 3];
        let mut count = 1;
        while next_tuple(&mut t, 4) {
            count += 1;
        }
        assert_eq!(count, 64);
    }
}
