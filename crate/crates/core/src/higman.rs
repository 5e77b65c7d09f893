//! Generalized Higman orderings over a finite atom alphabet.
//!
//! A word `u` is below `v` when some weakly increasing map sends each letter
//! of `u` to a letter of `v` above it, and only idempotent letters of `v` may
//! receive more than one letter. With no idempotent letters this is the usual
//! subsequence embedding.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::MonoidalQO;
use crate::qo::{FiniteQO, QoSpec};
use crate::report::{Check, Report};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AtomAlphabet {
    order: FiniteQO,
    idem: Vec<bool>,
}

/// JSON form: a [`QoSpec`] plus `"idem": [labels]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphabetSpec {
    #[serde(flatten)]
    pub order: QoSpec,
    #[serde(default)]
    pub idem: Vec<String>,
}

impl AtomAlphabet {
    /// Requires the idempotent letters to be upward-closed.
    pub fn new(order: FiniteQO, idem: Vec<bool>) -> Result<Self> {
        let a = Self::new_unchecked(order, idem)?;
        for x in a.order.elements() {
            for y in a.order.up_of(x) {
                if a.idem[x] && !a.idem[y] {
                    return Err(Error::IdemNotUpwardClosed(a.order.label(y).to_string()));
                }
            }
        }
        Ok(a)
    }

    /// Skips the closure requirement; only the table size is checked.
    pub fn new_unchecked(order: FiniteQO, idem: Vec<bool>) -> Result<Self> {
        if idem.len() != order.len() {
            return Err(Error::BadTableSize { expected: order.len(), got: idem.len() });
        }
        Ok(AtomAlphabet { order, idem })
    }

    /// No idempotent letters: the classical embedding.
    pub fn classical(order: FiniteQO) -> Self {
        let n = order.len();
        AtomAlphabet { order, idem: vec![false; n] }
    }

    pub fn from_spec(spec: &AlphabetSpec) -> Result<Self> {
        let order = FiniteQO::from_spec(&spec.order)?;
        let mut idem = vec![false; order.len()];
        for l in &spec.idem {
            idem[order.index_of(l)?] = true;
        }
        Self::new(order, idem)
    }

    pub fn to_spec(&self) -> AlphabetSpec {
        AlphabetSpec {
            order: self.order.to_spec(),
            idem: self.idem_letters().map(|i| self.order.label(i).to_string()).collect(),
        }
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

    pub fn is_idem(&self, x: usize) -> bool {
        self.idem[x]
    }

    pub fn idem_flags(&self) -> &[bool] {
        &self.idem
    }

    pub fn idem_letters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&x| self.idem[x])
    }

    pub fn label(&self, x: usize) -> &str {
        self.order.label(x)
    }

    pub fn parse_word(&self, text: &str) -> Result<Vec<usize>> {
        text.split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| self.order.index_of(s))
            .collect()
    }

    pub fn show_word(&self, w: &[usize]) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.iter().map(|&x| self.label(x)).collect::<Vec<_>>().join(",")
    }

    /// All words of length at most `max_len`, shortest first, then
    /// lexicographically by letter index.
    pub fn words_up_to(&self, max_len: usize) -> Vec<Vec<usize>> {
        words_up_to(self.len(), max_len)
    }
}

pub fn words_up_to(letters: usize, max_len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    let mut start = 0;
    for _ in 0..max_len {
        let end = out.len();
        for i in start..end {
            for x in 0..letters {
                let mut w = out[i].clone();
                w.push(x);
                out.push(w);
            }
        }
        start = end;
    }
    out
}

/// Decides `u ≤ v` over letter comparisons `le(i, j)` (letter `i` of `u`
/// against letter `j` of `v`) and target idempotency `idem(j)`.
///
/// `next[j]` / `cur[j]`: the suffix of `u` from row `i + 1` / `i` maps
/// into `v[j..]`.
pub fn embeds_with(
    n: usize,
    m: usize,
    le: impl Fn(usize, usize) -> bool,
    idem: impl Fn(usize) -> bool,
) -> bool {
    if n == 0 {
        return true;
    }
    if m >= 64 {
        return embeds_rows(n, m, &le, &idem, &mut vec![true; m + 1], &mut vec![false; m + 1]);
    }
    embeds_rows(n, m, &le, &idem, &mut [true; 65][..=m], &mut [false; 65][..=m])
}

fn embeds_rows<'r>(
    n: usize,
    m: usize,
    le: &impl Fn(usize, usize) -> bool,
    idem: &impl Fn(usize) -> bool,
    mut next: &'r mut [bool],
    mut cur: &'r mut [bool],
) -> bool {
    for i in (0..n).rev() {
        cur[m] = false;
        for j in (0..m).rev() {
            cur[j] = cur[j + 1] || (le(i, j) && next[if idem(j) { j } else { j + 1 }]);
        }
        if !cur[0] {
            return false;
        }
        std::mem::swap(&mut next, &mut cur);
    }
    next[0]
}

pub fn leq_letters(a: &AtomAlphabet, u: &[usize], v: &[usize]) -> bool {
    embeds_with(u.len(), v.len(), |i, j| a.order.leq(u[i], v[j]), |j| a.idem[v[j]])
}

pub fn equiv_letters(a: &AtomAlphabet, u: &[usize], v: &[usize]) -> bool {
    leq_letters(a, u, v) && leq_letters(a, v, u)
}

const BRUTE_FORCE_MAX: usize = 8;

/// Exhaustive search over weakly increasing maps `u -> v`, abandoning a
/// partial map as soon as one position fails.
pub fn leq_letters_bruteforce(a: &AtomAlphabet, u: &[usize], v: &[usize]) -> Result<bool> {
    if u.len() > BRUTE_FORCE_MAX || v.len() > BRUTE_FORCE_MAX {
        return Err(Error::TooLarge(format!(
            "words of length {} and {} (limit {BRUTE_FORCE_MAX})",
            u.len(),
            v.len()
        )));
    }
    if u.is_empty() {
        return Ok(true);
    }
    if v.is_empty() {
        return Ok(false);
    }
    Ok(extend_map(a, u, v, 0, 0))
}

/// Tries every target `t >= lo` for position `i`; a target shared with the
/// previous position must be idempotent.
fn extend_map(a: &AtomAlphabet, u: &[usize], v: &[usize], i: usize, lo: usize) -> bool {
    if i == u.len() {
        return true;
    }
    (lo..v.len()).any(|t| {
        let shared = i > 0 && t == lo;
        a.order.leq(u[i], v[t]) && (!shared || a.idem[v[t]]) && extend_map(a, u, v, i + 1, t)
    })
}

/// Left-to-right deletion of every letter whose removal keeps the word
/// in the same class.
pub fn canonical_letters(a: &AtomAlphabet, w: &[usize]) -> Vec<usize> {
    let mut cur = w.to_vec();
    let mut i = 0;
    while i < cur.len() {
        let mut shorter = cur.clone();
        shorter.remove(i);
        if leq_letters(a, &cur, &shorter) {
            cur = shorter;
        } else {
            i += 1;
        }
    }
    cur
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HWord {
    alphabet: Arc<AtomAlphabet>,
    letters: Vec<usize>,
}

impl HWord {
    pub fn new(alphabet: Arc<AtomAlphabet>, letters: Vec<usize>) -> Result<Self> {
        if let Some(&bad) = letters.iter().find(|&&x| x >= alphabet.len()) {
            return Err(Error::IndexOutOfRange { index: bad, size: alphabet.len() });
        }
        Ok(HWord { alphabet, letters })
    }

    pub fn empty(alphabet: Arc<AtomAlphabet>) -> Self {
        HWord { alphabet, letters: Vec::new() }
    }

    pub fn parse(alphabet: Arc<AtomAlphabet>, text: &str) -> Result<Self> {
        let letters = alphabet.parse_word(text)?;
        Ok(HWord { alphabet, letters })
    }

    pub fn alphabet(&self) -> &Arc<AtomAlphabet> {
        &self.alphabet
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_alphabet(&self, other: &HWord) -> Result<()> {
        if Arc::ptr_eq(&self.alphabet, &other.alphabet) || self.alphabet == other.alphabet {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch)
        }
    }

    pub fn leq(&self, other: &HWord) -> Result<bool> {
        self.same_alphabet(other)?;
        Ok(leq_letters(&self.alphabet, &self.letters, &other.letters))
    }

    pub fn leq_bruteforce(&self, other: &HWord) -> Result<bool> {
        self.same_alphabet(other)?;
        leq_letters_bruteforce(&self.alphabet, &self.letters, &other.letters)
    }

    pub fn equiv(&self, other: &HWord) -> Result<bool> {
        Ok(self.leq(other)? && other.leq(self)?)
    }

    pub fn concat(&self, other: &HWord) -> Result<HWord> {
        self.same_alphabet(other)?;
        let mut letters = self.letters.clone();
        letters.extend(&other.letters);
        Ok(HWord { alphabet: self.alphabet.clone(), letters })
    }

    pub fn canonical(&self) -> HWord {
        HWord {
            alphabet: self.alphabet.clone(),
            letters: canonical_letters(&self.alphabet, &self.letters),
        }
    }
}

impl fmt::Display for HWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.alphabet.show_word(&self.letters))
    }
}

/// Partition of `words` into equivalence classes; returns the class of each
/// word, classes numbered by first occurrence.
pub fn word_classes(a: &AtomAlphabet, words: &[Vec<usize>]) -> Vec<usize> {
    let mut reps: Vec<usize> = Vec::new();
    let mut class = Vec::with_capacity(words.len());
    for (i, w) in words.iter().enumerate() {
        match reps.iter().position(|&r| equiv_letters(a, &words[r], w)) {
            Some(c) => class.push(c),
            None => {
                class.push(reps.len());
                reps.push(i);
            }
        }
    }
    class
}

/// Words of length at most `max_len` that are prime among those words:
/// not the unit, and every split `w ≡ xy` into words with
/// `|x| + |y| <= max_len` has a factor equivalent to `w`.
pub fn prime_words(a: &AtomAlphabet, max_len: usize) -> Vec<Vec<usize>> {
    let words = a.words_up_to(max_len);
    let class = word_classes(a, &words);
    let composite = composite_classes(a, &words, &class, max_len);
    words
        .iter()
        .enumerate()
        .filter(|&(i, _)| class[i] != class[0] && !composite[class[i]])
        .map(|(_, w)| w.clone())
        .collect()
}

fn composite_classes(
    a: &AtomAlphabet,
    words: &[Vec<usize>],
    class: &[usize],
    max_len: usize,
) -> Vec<bool> {
    let classes = class.iter().max().map_or(0, |c| c + 1);
    let mut composite = vec![false; classes];
    let index = word_index(a.len());
    for x in words {
        for y in words {
            if x.len() + y.len() > max_len {
                continue;
            }
            let mut xy = x.clone();
            xy.extend(y);
            let c = class[index(&xy)];
            if composite[c] {
                continue;
            }
            if !equiv_letters(a, x, &xy) && !equiv_letters(a, y, &xy) {
                composite[c] = true;
            }
        }
    }
    composite
}

/// Position of a word in the ordering produced by [`words_up_to`].
fn word_index(k: usize) -> impl Fn(&[usize]) -> usize {
    move |w: &[usize]| {
        let mut offset = 0;
        let mut block = 1;
        for _ in 0..w.len() {
            offset += block;
            block *= k;
        }
        offset + w.iter().fold(0, |acc, &x| acc * k + x)
    }
}

/// Checks that among words of length at most `max_len` the primes are
/// exactly the words equivalent to single letters, and the idempotent primes
/// exactly those equivalent to idempotent letters.
pub fn hword_primes_check(a: &AtomAlphabet, max_len: usize) -> Report {
    let words = a.words_up_to(max_len);
    let class = word_classes(a, &words);
    let composite = composite_classes(a, &words, &class, max_len);
    let mut primes = Check::new("primes_are_letters");
    let mut idem = Check::new("idempotent_primes_are_idempotent_letters");
    let show = |w: &[usize]| vec![a.show_word(w)];
    for (i, w) in words.iter().enumerate() {
        let prime = class[i] != class[0] && !composite[class[i]];
        let letter = (0..a.len()).find(|&x| equiv_letters(a, w, &[x]));
        primes.record(prime == letter.is_some(), || show(w));
        if prime {
            let mut ww = w.clone();
            ww.extend(w);
            let idempotent = equiv_letters(a, &ww, w);
            let idem_letter = (0..a.len()).any(|x| a.idem[x] && equiv_letters(a, w, &[x]));
            idem.record(idempotent == idem_letter, || show(w));
        }
    }
    Report { subject: "word_primes".into(), checks: vec![primes, idem] }
}

/// Monoid laws of concatenation on words of length at most `max_len`:
/// weak increase, monotonicity, the unit, and the +-property with split
/// factors drawn from the same range. Associativity is exact.
pub fn check_word_monoid_laws(a: &AtomAlphabet, max_len: usize) -> Report {
    let words = a.words_up_to(max_len);
    let show = |ws: &[&Vec<usize>]| ws.iter().map(|w| a.show_word(w)).collect::<Vec<_>>();
    let cat = |x: &[usize], y: &[usize]| {
        let mut z = x.to_vec();
        z.extend(y);
        z
    };
    let mut incr = Check::new("weakly_increasing");
    let mut mono = Check::new("monotone");
    let mut unit = Check::new("unit");
    let mut plus = Check::new("plus_property");
    for x in &words {
        unit.record(leq_letters(a, &[], x), || show(&[x]));
    }
    let below: Vec<Vec<usize>> = words
        .iter()
        .map(|v| (0..words.len()).filter(|&i| leq_letters(a, &words[i], v)).collect())
        .collect();
    for (ix, x) in words.iter().enumerate() {
        for (iy, y) in words.iter().enumerate() {
            let xy = cat(x, y);
            incr.record(leq_letters(a, x, &xy) && leq_letters(a, y, &xy), || show(&[x, y]));
            for &ix2 in &below[ix] {
                for &iy2 in &below[iy] {
                    let small = cat(&words[ix2], &words[iy2]);
                    mono.record(leq_letters(a, &small, &xy), || show(&[&words[ix2], x, &words[iy2], y]));
                }
            }
            if x.len() + y.len() > max_len {
                continue;
            }
            for z in &words {
                if !leq_letters(a, z, &xy) {
                    continue;
                }
                let ok = below[ix].iter().any(|&i| {
                    below[iy].iter().any(|&j| {
                        words[i].len() + words[j].len() <= max_len
                            && equiv_letters(a, z, &cat(&words[i], &words[j]))
                    })
                });
                plus.record(ok, || show(&[x, y, z]));
            }
        }
    }
    Report { subject: "word_monoid".into(), checks: vec![incr, mono, unit, plus] }
}

/// For all prime tuples of length at most `max_len` on each side, the
/// products compare exactly when a weakly increasing map exists that sends
/// each left prime below a right prime and only reuses idempotent targets.
/// Counterexamples are `[p_0, .., "|", q_0, ..]`.
pub fn check_abstractly_higman(m: &MonoidalQO, max_len: usize) -> Check {
    let q = m.order();
    let primes: Vec<usize> = m.primes().into_iter().collect();
    let idem: Vec<bool> = primes.iter().map(|&p| q.equiv(m.mul(p, p), p)).collect();
    let k = primes.len();
    let tuples: Vec<Vec<usize>> = words_up_to(k, max_len).into_iter().skip(1).collect();
    let mut check = Check::new("abstractly_higman");
    for s in &tuples {
        let ps: Vec<usize> = s.iter().map(|&i| primes[i]).collect();
        let lhs = m.product(&ps);
        for t in &tuples {
            let qs: Vec<usize> = t.iter().map(|&i| primes[i]).collect();
            let rhs = m.product(&qs);
            let by_product = q.leq(lhs, rhs);
            let by_map = embeds_with(s.len(), t.len(), |i, j| q.leq(ps[i], qs[j]), |j| idem[t[j]]);
            check.record(by_product == by_map, || {
                let mut w: Vec<String> = ps.iter().map(|&x| m.label(x).to_string()).collect();
                w.push("|".into());
                w.extend(qs.iter().map(|&x| m.label(x).to_string()));
                w
            });
        }
    }
    check
}
