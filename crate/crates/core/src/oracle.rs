//! Brute-force ground truth over concrete sequences.
//!
//! Every symbolic word denotes a downward-closed set of finite sequences
//! over the base order. Here those sets are materialised as bitsets over all
//! sequences up to a length bound, so containment between symbolic words can
//! be tested directly. Denotations read atoms only for their structure; the
//! atom and word orders appear only as the verdicts being checked and, for
//! the prime sweep, to list candidate words.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::hierarchy::{AtomKind, SymbolicLevel};
use crate::higman::{equiv_letters, leq_letters, prime_words};
use crate::qo::FiniteQO;

pub const MAX_SEQUENCES: usize = 50_000;
pub const MAX_LEN: usize = 8;

/// Classical embedding: `s` maps injectively and in order into `t`, each
/// letter below its image. Earliest matching is optimal.
pub fn higman_embed(s: &[usize], t: &[usize], p: &FiniteQO) -> bool {
    let mut j = 0;
    for &x in s {
        while j < t.len() && !p.leq(x, t[j]) {
            j += 1;
        }
        if j == t.len() {
            return false;
        }
        j += 1;
    }
    true
}

fn all_words(k: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = vec![Vec::new()];
    let mut layer: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * k);
        for w in &layer {
            for x in 0..k {
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Offset-plus-digits position of `w` in [`all_words`] order.
fn word_position(k: usize, w: &[usize]) -> usize {
    let mut offset = 0;
    let mut block = 1;
    for _ in 0..w.len() {
        offset += block;
        block *= k;
    }
    offset + w.iter().fold(0, |acc, &x| acc * k + x)
}

fn count_words(k: usize, max_len: usize) -> usize {
    let mut total = 0usize;
    let mut block = 1usize;
    for _ in 0..=max_len {
        total = total.saturating_add(block);
        block = block.saturating_mul(k);
    }
    total
}

/// All sequences over a finite order up to a length bound, with the
/// embedding order.
#[derive(Debug, Clone)]
pub struct TruncatedSeqQO {
    base: FiniteQO,
    max_len: usize,
    seqs: Vec<Vec<usize>>,
}

impl TruncatedSeqQO {
    pub fn new(base: &FiniteQO, max_len: usize) -> Result<Self> {
        let count = count_words(base.len(), max_len);
        if max_len > MAX_LEN || count > MAX_SEQUENCES {
            return Err(Error::ScaleExceeded(format!(
                "{count} sequences up to length {max_len} (limits {MAX_SEQUENCES}, {MAX_LEN})"
            )));
        }
        Ok(TruncatedSeqQO { base: base.clone(), max_len, seqs: all_words(base.len(), max_len) })
    }

    pub fn base(&self) -> &FiniteQO {
        &self.base
    }

    pub fn max_len(&self) -> usize {
        self.max_len
    }

    pub fn len(&self) -> usize {
        self.seqs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seqs.is_empty()
    }

    pub fn seqs(&self) -> &[Vec<usize>] {
        &self.seqs
    }

    pub fn index_of(&self, s: &[usize]) -> Option<usize> {
        (s.len() <= self.max_len).then(|| word_position(self.base.len(), s))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        higman_embed(&self.seqs[i], &self.seqs[j], &self.base)
    }

    pub fn show(&self, s: &[usize]) -> String {
        if s.is_empty() {
            return "ε".into();
        }
        s.iter().map(|&x| self.base.label(x)).collect::<Vec<_>>().join(".")
    }

    pub fn to_finite_qo(&self) -> Result<FiniteQO> {
        let n = self.len();
        let labels = self.seqs.iter().map(|s| self.show(s)).collect();
        let mut leq = vec![false; n * n];
        for i in 0..n {
            for j in 0..n {
                leq[i * n + j] = self.leq(i, j);
            }
        }
        FiniteQO::from_table(labels, leq)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Bits(Vec<u64>);

impl Bits {
    pub fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }

    pub fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    pub fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a |= b;
        }
    }

    pub fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// First index in `self` but not in `other`.
    pub fn first_outside(&self, other: &Bits) -> Option<usize> {
        self.0.iter().zip(&other.0).enumerate().find_map(|(k, (a, b))| {
            let d = a & !b;
            (d != 0).then(|| k * 64 + d.trailing_zeros() as usize)
        })
    }
}

/// Denotations of the atoms of a symbolic level over sequences up to `L`.
///
/// A class atom denotes the empty sequence and the one-letter sequences
/// below it. A star denotes every concatenation of members of its
/// generators' denotations. A word denotes the sequences that split into
/// consecutive blocks, one per letter, each block in that letter's set.
#[derive(Debug, Clone)]
pub struct Denotations {
    pub universe: TruncatedSeqQO,
    atom_bits: Vec<Bits>,
}

impl Denotations {
    pub fn new(sym: &SymbolicLevel, max_len: usize) -> Result<Self> {
        let universe = TruncatedSeqQO::new(&sym.base, max_len)?;
        let n = universe.len();
        let mut atom_bits: Vec<Bits> = Vec::with_capacity(sym.len());
        for atom in &sym.atoms {
            let mut bits = Bits::new(n);
            match &atom.kind {
                AtomKind::NonIdem(p) => {
                    bits.set(0);
                    for q in sym.base.elements().filter(|&q| sym.base.leq(q, *p)) {
                        if let Some(i) = universe.index_of(&[q]) {
                            bits.set(i);
                        }
                    }
                }
                AtomKind::Idem(gens) => {
                    let mut blocks = Bits::new(n);
                    for &g in gens {
                        blocks.union_with(&atom_bits[g]);
                    }
                    for (i, s) in universe.seqs().iter().enumerate() {
                        if star_member(&universe, &blocks, s) {
                            bits.set(i);
                        }
                    }
                }
            }
            atom_bits.push(bits);
        }
        Ok(Denotations { universe, atom_bits })
    }

    pub fn atom(&self, a: usize) -> &Bits {
        &self.atom_bits[a]
    }

    pub fn word(&self, w: &[usize]) -> Bits {
        let mut bits = Bits::new(self.universe.len());
        for (i, s) in self.universe.seqs().iter().enumerate() {
            if self.split_member(w, s) {
                bits.set(i);
            }
        }
        bits
    }

    /// Membership of a single sequence, for sequences within the bound.
    pub fn member(&self, w: &[usize], s: &[usize]) -> Result<bool> {
        if s.len() > self.universe.max_len() {
            return Err(Error::ScaleExceeded(format!(
                "sequence of length {} beyond the bound {}",
                s.len(),
                self.universe.max_len()
            )));
        }
        Ok(self.split_member(w, s))
    }

    fn split_member(&self, w: &[usize], s: &[usize]) -> bool {
        let n = s.len();
        let mut reach = vec![false; n + 1];
        reach[0] = true;
        for &a in w {
            let mut next = vec![false; n + 1];
            for i in (0..=n).filter(|&i| reach[i]) {
                for j in i..=n {
                    if !next[j] {
                        let block = self.universe.index_of(&s[i..j]).expect("within bound");
                        next[j] = self.atom_bits[a].get(block);
                    }
                }
            }
            reach = next;
        }
        reach[n]
    }
}

fn star_member(universe: &TruncatedSeqQO, blocks: &Bits, s: &[usize]) -> bool {
    let n = s.len();
    let mut ok = vec![false; n + 1];
    ok[0] = true;
    for j in 1..=n {
        ok[j] = (0..j).any(|i| ok[i] && blocks.get(universe.index_of(&s[i..j]).expect("within bound")));
    }
    ok[n]
}

/// Member test for one word and sequence, building denotations up to the
/// sequence's length.
pub fn denote_member(sym: &SymbolicLevel, w: &[usize], s: &[usize]) -> Result<bool> {
    Denotations::new(sym, s.len())?.member(w, s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ContainmentReport {
    pub max_len: usize,
    pub word_len: usize,
    pub pairs: u64,
    /// Pairs ordered symbolically whose denotations are contained.
    pub confirmed: u64,
    /// Pairs not ordered symbolically with a concrete separating sequence.
    pub refuted: u64,
    /// Pairs not ordered symbolically, no separating sequence within the bound.
    pub unresolved: u64,
    /// Pairs ordered symbolically whose denotations are not contained.
    pub disagreements: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_disagreement: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_unresolved: Option<Vec<String>>,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.disagreements == 0
    }
}

fn check_scale(words: usize, what: &str) -> Result<()> {
    if words > 5_000 {
        return Err(Error::ScaleExceeded(format!("{words} words for the {what} sweep")));
    }
    Ok(())
}

/// Compares the word order of the symbolic level with containment of
/// denotations over every pair of words of length at most `word_len`.
pub fn check_containment_agreement(
    sym: &SymbolicLevel,
    max_len: usize,
    word_len: usize,
) -> Result<ContainmentReport> {
    let den = Denotations::new(sym, max_len)?;
    let a = &sym.alphabet;
    let words = all_words(sym.len(), word_len);
    check_scale(words.len(), "containment")?;
    let bits: Vec<Bits> = words.iter().map(|w| den.word(w)).collect();
    let mut r = ContainmentReport {
        max_len,
        word_len,
        pairs: 0,
        confirmed: 0,
        refuted: 0,
        unresolved: 0,
        disagreements: 0,
        first_disagreement: None,
        first_unresolved: None,
    };
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            r.pairs += 1;
            let symbolic = leq_letters(a, u, v);
            let outside = bits[i].first_outside(&bits[j]);
            match (symbolic, outside) {
                (true, None) => r.confirmed += 1,
                (false, Some(_)) => r.refuted += 1,
                (true, Some(k)) => {
                    r.disagreements += 1;
                    r.first_disagreement.get_or_insert_with(|| {
                        vec![a.show_word(u), a.show_word(v), den.universe.show(&den.universe.seqs()[k])]
                    });
                }
                (false, None) => {
                    r.unresolved += 1;
                    r.first_unresolved.get_or_insert_with(|| vec![a.show_word(u), a.show_word(v)]);
                }
            }
        }
    }
    Ok(r)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    /// All concatenations of the one-letter members.
    Star,
    /// The empty sequence and the one-letter members.
    Down,
    /// Both shapes coincide within the bound.
    Unresolved,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PrimeShape {
    pub word: String,
    pub letters: Vec<String>,
    pub shape: Shape,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TwoFormsReport {
    pub max_len: usize,
    pub prime_classes: usize,
    /// Distinct denotations of either shape among all words of length at
    /// most `word_len`, found without consulting any order on words.
    pub shaped_denotations: usize,
    pub star: usize,
    pub down: usize,
    pub unresolved: usize,
    pub violations: usize,
    pub primes: Vec<PrimeShape>,
}

impl TwoFormsReport {
    pub fn passed(&self) -> bool {
        self.violations == 0 && self.unresolved == 0 && self.shaped_denotations == self.prime_classes
    }
}

/// Classifies every prime class among words of length at most `word_len`
/// by the shape of its denotation.
pub fn check_two_forms(sym: &SymbolicLevel, max_len: usize, word_len: usize) -> Result<TwoFormsReport> {
    let den = Denotations::new(sym, max_len)?;
    let a = &sym.alphabet;
    check_scale(count_words(sym.len(), word_len), "prime")?;
    let mut reps: Vec<Vec<usize>> = Vec::new();
    for w in prime_words(a, word_len) {
        if !reps.iter().any(|r| equiv_letters(a, r, &w)) {
            reps.push(w);
        }
    }
    let base = &sym.base;
    let mut report = TwoFormsReport {
        max_len,
        prime_classes: reps.len(),
        shaped_denotations: 0,
        star: 0,
        down: 0,
        unresolved: 0,
        violations: 0,
        primes: Vec::new(),
    };
    for w in &reps {
        let (letters, shape) = classify(&den, base, &den.word(w));
        match shape {
            Shape::Star => report.star += 1,
            Shape::Down => report.down += 1,
            Shape::Unresolved => report.unresolved += 1,
            Shape::Neither => report.violations += 1,
        }
        report.primes.push(PrimeShape {
            word: a.show_word(w),
            letters: letters.iter().map(|&x| base.label(x).to_string()).collect(),
            shape,
        });
    }
    let mut shaped: Vec<Bits> = Vec::new();
    for w in all_words(sym.len(), word_len) {
        let bits = den.word(&w);
        let (letters, shape) = classify(&den, base, &bits);
        if !letters.is_empty() && shape != Shape::Neither && !shaped.contains(&bits) {
            shaped.push(bits);
        }
    }
    report.shaped_denotations = shaped.len();
    Ok(report)
}

/// Letters of length-one members, and which shape over them `bits` has.
fn classify(den: &Denotations, base: &FiniteQO, bits: &Bits) -> (Vec<usize>, Shape) {
    let u = &den.universe;
    let letters: Vec<usize> = base.elements().filter(|&x| bits.get(u.index_of(&[x]).expect("length 1"))).collect();
    let mut star = Bits::new(u.len());
    let mut down = Bits::new(u.len());
    for (i, s) in u.seqs().iter().enumerate() {
        if s.iter().all(|x| letters.contains(x)) {
            star.set(i);
            if s.len() <= 1 {
                down.set(i);
            }
        }
    }
    let shape = match (*bits == star, *bits == down) {
        (true, true) => Shape::Unresolved,
        (true, false) => Shape::Star,
        (false, true) => Shape::Down,
        (false, false) => Shape::Neither,
    };
    (letters, shape)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct XyWzReport {
    pub max_len: usize,
    /// Bound used for the premise `XY ⊆ WZ`.
    pub premise_len: usize,
    pub word_len: usize,
    pub tuples: u64,
    /// Tuples with `XY ⊆ WZ`.
    pub premises: u64,
    pub violations: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_violation: Option<Vec<String>>,
}

impl XyWzReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Over all words `X, Y, W, Z` of length at most `word_len`: whenever
/// `XY ⊆ WZ`, also `X ⊆ W` or `Y ⊆ Z`.
///
/// The conclusions are tested on sequences up to `max_len` and the premise
/// on sequences up to twice that, so a separating pair `x ∉ W`, `y ∉ Z`
/// always leaves its concatenation inside the premise's range.
pub fn check_xy_wz(sym: &SymbolicLevel, max_len: usize, word_len: usize) -> Result<XyWzReport> {
    let premise_len = 2 * max_len;
    let small = Denotations::new(sym, max_len)?;
    let large = Denotations::new(sym, premise_len)?;
    let k = sym.len();
    let short = all_words(k, word_len);
    let long = all_words(k, 2 * word_len);
    check_scale(long.len(), "xy-wz")?;
    let bits: Vec<Bits> = long.iter().map(|w| large.word(w)).collect();
    let pos = |x: &[usize], y: &[usize]| {
        let mut w = x.to_vec();
        w.extend(y);
        word_position(k, &w)
    };
    let m = short.len();
    let short_bits: Vec<Bits> = short.iter().map(|w| small.word(w)).collect();
    let sub: Vec<bool> = (0..m * m).map(|t| short_bits[t / m].is_subset(&short_bits[t % m])).collect();
    let mut r = XyWzReport {
        max_len,
        premise_len,
        word_len,
        tuples: 0,
        premises: 0,
        violations: 0,
        first_violation: None,
    };
    for (ix, x) in short.iter().enumerate() {
        for (iy, y) in short.iter().enumerate() {
            let xy = &bits[pos(x, y)];
            for (iw, w) in short.iter().enumerate() {
                for (iz, z) in short.iter().enumerate() {
                    r.tuples += 1;
                    if !xy.is_subset(&bits[pos(w, z)]) {
                        continue;
                    }
                    r.premises += 1;
                    if !(sub[ix * m + iw] || sub[iy * m + iz]) {
                        r.violations += 1;
                        r.first_violation.get_or_insert_with(|| {
                            [x, y, w, z].iter().map(|v| sym.alphabet.show_word(v)).collect()
                        });
                    }
                }
            }
        }
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::hierarchy::LevelLimits;

    fn sym(q: &FiniteQO, alpha: usize) -> SymbolicLevel {
        SymbolicLevel::build(q, alpha, &LevelLimits::default()).unwrap()
    }

    #[test]
    fn embedding_examples() {
        let p = fixtures::a2();
        assert!(higman_embed(&[0], &[1, 0, 1], &p));
        assert!(!higman_embed(&[0, 0], &[0], &p));
        assert!(higman_embed(&[], &[1], &p));
    }

    #[test]
    fn universe_size_and_positions() {
        let u = TruncatedSeqQO::new(&fixtures::a2(), 4).unwrap();
        assert_eq!(u.len(), 31);
        for (i, s) in u.seqs().iter().enumerate() {
            assert_eq!(u.index_of(s), Some(i));
        }
        assert!(matches!(TruncatedSeqQO::new(&fixtures::a2(), 20), Err(Error::ScaleExceeded(_))));
    }

    #[test]
    fn member_examples() {
        let s = sym(&fixtures::a2(), 1);
        let a = s.alphabet.parse_word("a").unwrap();
        assert!(denote_member(&s, &a, &[0]).unwrap());
        assert!(!denote_member(&s, &a, &[0, 0]).unwrap());
        let a_star = s.alphabet.parse_word("{a}*").unwrap();
        assert!(denote_member(&s, &a_star, &[0, 0, 0]).unwrap());
        assert!(denote_member(&s, &[2, 4, 0], &[]).unwrap());
    }

    #[test]
    fn classical_level_matches_embedding() {
        let s = sym(&fixtures::a2(), 0);
        let u = TruncatedSeqQO::new(&fixtures::a2(), 4).unwrap();
        for x in u.seqs() {
            for y in u.seqs() {
                assert_eq!(leq_letters(&s.alphabet, x, y), higman_embed(x, y, &s.base));
            }
        }
    }

    #[test]
    fn a2_containment_agrees() {
        let r = check_containment_agreement(&sym(&fixtures::a2(), 1), 4, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.unresolved, 0, "{r:?}");
    }

    #[test]
    fn a2_two_forms() {
        let r = check_two_forms(&sym(&fixtures::a2(), 1), 4, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.prime_classes, 5);
        assert_eq!(r.shaped_denotations, 5);
        assert_eq!((r.down, r.star), (2, 3));
    }

    #[test]
    fn singleton_two_forms() {
        let r = check_two_forms(&sym(&FiniteQO::antichain(1), 1), 4, 3).unwrap();
        assert!(r.passed());
        assert_eq!((r.down, r.star), (1, 1));
    }

    #[test]
    fn composite_word_is_not_prime() {
        let s = sym(&fixtures::a2(), 1);
        let r = check_two_forms(&s, 4, 3).unwrap();
        assert!(r.primes.iter().all(|p| p.word != "a,b"));
    }

    #[test]
    fn xy_wz_small() {
        let r = check_xy_wz(&sym(&FiniteQO::antichain(1), 1), 4, 2).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.premises > 0);
    }
}
