//! Symbolic levels: atom alphabets whose words present the iterated ideals
//! of the sequence monoid over a finite quasi-order.

use std::sync::Arc;

use serde::Serialize;

use super::levels::LevelLimits;
use crate::downset::enumerate_downsets_capped;
use crate::error::{Error, Result};
use crate::higman::AtomAlphabet;
use crate::qo::FiniteQO;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub enum AtomKind {
    /// A class of the base order, by its least member.
    NonIdem(usize),
    /// Star of a nonempty downward-closed set of earlier atoms (indices
    /// into the same atom list).
    Idem(Vec<usize>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Atom {
    pub kind: AtomKind,
    /// Least level at which the atom exists.
    pub level: usize,
}

impl Atom {
    pub fn is_idem(&self) -> bool {
        matches!(self.kind, AtomKind::Idem(_))
    }

    pub fn payload(&self) -> &[usize] {
        match &self.kind {
            AtomKind::NonIdem(_) => &[],
            AtomKind::Idem(d) => d,
        }
    }
}

/// Decides one atom comparison `x <= y`. `known(d, e)` answers comparisons
/// between atoms that both precede the pair being decided.
pub trait AtomComparator {
    fn compare(
        &self,
        base: &FiniteQO,
        atoms: &[Atom],
        x: usize,
        y: usize,
        known: &dyn Fn(usize, usize) -> bool,
    ) -> bool;
}

/// Comparison by generators: base classes compare in the base order, a
/// class sits below a star when it sits below one of its generators, stars
/// compare by "every generator below some generator", and a star is never
/// below a class.
#[derive(Debug, Clone, Copy, Default)]
pub struct GeneratorRule;

impl AtomComparator for GeneratorRule {
    fn compare(
        &self,
        base: &FiniteQO,
        atoms: &[Atom],
        x: usize,
        y: usize,
        known: &dyn Fn(usize, usize) -> bool,
    ) -> bool {
        match (&atoms[x].kind, &atoms[y].kind) {
            (AtomKind::NonIdem(p), AtomKind::NonIdem(q)) => base.leq(*p, *q),
            (AtomKind::NonIdem(_), AtomKind::Idem(e)) => e.iter().any(|&j| known(x, j)),
            (AtomKind::Idem(d), AtomKind::Idem(e)) => {
                d.iter().all(|&i| e.iter().any(|&j| known(i, j)))
            }
            (AtomKind::Idem(_), AtomKind::NonIdem(_)) => false,
        }
    }
}

/// Atoms of levels `0..=alpha` with their order.
#[derive(Debug, Clone)]
pub struct SymbolicLevel {
    pub base: FiniteQO,
    pub alpha: usize,
    pub atoms: Vec<Atom>,
    /// Raw comparator output before closure, row-major.
    pub raw: Vec<bool>,
    pub alphabet: Arc<AtomAlphabet>,
    /// Number of atoms first appearing at each level.
    pub new_per_level: Vec<usize>,
}

impl SymbolicLevel {
    pub fn build(base: &FiniteQO, alpha: usize, limits: &LevelLimits) -> Result<Self> {
        Self::build_with(base, alpha, limits, &GeneratorRule, true)
    }

    /// With `validate` unset the alphabet is accepted even when its
    /// idempotent atoms are not upward-closed.
    pub fn build_with(
        base: &FiniteQO,
        alpha: usize,
        limits: &LevelLimits,
        rule: &dyn AtomComparator,
        validate: bool,
    ) -> Result<Self> {
        limits.check_alpha(alpha)?;
        if base.is_empty() {
            return Err(Error::EmptyCarrier);
        }
        let quot = base.quotient();
        let mut atoms: Vec<Atom> = (0..quot.len())
            .map(|c| Atom { kind: AtomKind::NonIdem(quot.representative(c)), level: 0 })
            .collect();
        let mut new_per_level = vec![atoms.len()];
        let mut leq = order_matrix(base, &atoms, rule, &[], 0);
        for level in 1..=alpha {
            let prev = FiniteQO::from_relation_closed(
                (0..atoms.len()).map(|i| i.to_string()).collect(),
                leq.clone(),
            )?;
            let downs = enumerate_downsets_capped(&prev, limits.max_members).map_err(|_| {
                Error::CombinatorialBlowup {
                    bound: limits.max_members,
                    what: format!("downsets of the level-{} alphabet", level - 1),
                }
            })?;
            let before = atoms.len();
            for d in downs {
                let payload: Vec<usize> = d.members().iter().copied().collect();
                let seen = atoms.iter().any(|a| a.payload() == payload.as_slice());
                if !seen {
                    if atoms.len() >= limits.max_members {
                        return Err(Error::CombinatorialBlowup {
                            bound: limits.max_members,
                            what: format!("atoms up to level {level}"),
                        });
                    }
                    atoms.push(Atom { kind: AtomKind::Idem(payload), level });
                }
            }
            new_per_level.push(atoms.len() - before);
            leq = order_matrix(base, &atoms, rule, &leq, before);
        }
        let raw = leq.clone();
        let labels = atom_labels(base, &atoms);
        let order = FiniteQO::from_relation_closed(labels, leq)?;
        let idem = atoms.iter().map(Atom::is_idem).collect();
        let alphabet = if validate {
            AtomAlphabet::new(order, idem)?
        } else {
            AtomAlphabet::new_unchecked(order, idem)?
        };
        Ok(SymbolicLevel {
            base: base.clone(),
            alpha,
            atoms,
            raw,
            alphabet: Arc::new(alphabet),
            new_per_level,
        })
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn label(&self, i: usize) -> &str {
        self.alphabet.label(i)
    }

    /// Index of the atom with this kind, if present.
    pub fn find(&self, kind: &AtomKind) -> Option<usize> {
        self.atoms.iter().position(|a| &a.kind == kind)
    }

    /// `Idem` atom generated by the given base elements' classes.
    pub fn star_of(&self, gens: &[usize]) -> Option<usize> {
        let quot = self.base.quotient();
        let mut payload: Vec<usize> = gens
            .iter()
            .filter_map(|&g| self.find(&AtomKind::NonIdem(quot.representative(quot.class_of[g]))))
            .collect();
        payload.sort_unstable();
        payload.dedup();
        self.find(&AtomKind::Idem(payload))
    }
}

/// Extends the `old`-sized matrix to all atoms; pairs are decided in order
/// of their larger index so that `known` only sees decided pairs.
fn order_matrix(
    base: &FiniteQO,
    atoms: &[Atom],
    rule: &dyn AtomComparator,
    old_leq: &[bool],
    old: usize,
) -> Vec<bool> {
    let n = atoms.len();
    let cell = std::cell::RefCell::new(vec![false; n * n]);
    {
        let mut m = cell.borrow_mut();
        for i in 0..old {
            for j in 0..old {
                m[i * n + j] = old_leq[i * old + j];
            }
        }
    }
    for top in old..n {
        let pairs: Vec<(usize, usize)> =
            (0..=top).map(|i| (i, top)).chain((0..top).map(|j| (top, j))).collect();
        for (x, y) in pairs {
            let known = |a: usize, b: usize| cell.borrow()[a * n + b];
            let v = rule.compare(base, atoms, x, y, &known);
            cell.borrow_mut()[x * n + y] = v;
        }
    }
    cell.into_inner()
}

fn atom_labels(base: &FiniteQO, atoms: &[Atom]) -> Vec<String> {
    let mut labels: Vec<String> = Vec::with_capacity(atoms.len());
    for a in atoms {
        let l = match &a.kind {
            AtomKind::NonIdem(p) => base.label(*p).to_string(),
            AtomKind::Idem(d) => {
                let inner: Vec<&str> = d.iter().map(|&i| labels[i].as_str()).collect();
                format!("{{{}}}*", inner.join(","))
            }
        };
        labels.push(l);
    }
    labels
}
