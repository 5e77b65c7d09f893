#![allow(dead_code)]

use idealforge::higman::AtomAlphabet;
use idealforge::FiniteQO;
use proptest::prelude::*;

pub fn labels(n: usize) -> Vec<String> {
    (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect()
}

/// Reflexive-transitive closure of a random relation on `1..=max` points.
pub fn arb_qo(max: usize) -> impl Strategy<Value = FiniteQO> {
    (1..=max).prop_flat_map(|n| {
        prop::collection::vec(prop::bool::weighted(0.3), n * n)
            .prop_map(move |rel| FiniteQO::from_relation_closed(labels(n), rel).unwrap())
    })
}

/// Random order with a random upward-closed set of idempotent letters.
pub fn arb_alphabet(max: usize) -> impl Strategy<Value = AtomAlphabet> {
    arb_qo(max).prop_flat_map(|q| {
        let n = q.len();
        prop::collection::vec(any::<bool>(), n).prop_map(move |seed| {
            let seeds: idealforge::ElemSet = (0..n).filter(|&i| seed[i]).collect();
            let up = q.up_closure(&seeds);
            let idem = (0..n).map(|i| up.contains(&i)).collect();
            AtomAlphabet::new(q.clone(), idem).unwrap()
        })
    })
}

pub fn arb_word(letters: usize, max_len: usize) -> impl Strategy<Value = Vec<usize>> {
    prop::collection::vec(0..letters, 0..=max_len)
}

/// Alphabet together with `k` words over it.
pub fn arb_alphabet_words(max: usize, k: usize, max_len: usize) -> impl Strategy<Value = (AtomAlphabet, Vec<Vec<usize>>)> {
    arb_alphabet(max).prop_flat_map(move |a| {
        let n = a.len();
        (Just(a), prop::collection::vec(arb_word(n, max_len), k))
    })
}

/// Every subset of `0..n`.
pub fn subsets(n: usize) -> impl Iterator<Item = idealforge::ElemSet> {
    (0u32..1 << n).map(move |mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
}
