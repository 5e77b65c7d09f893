//! Small named quasi-orders and monoids used by tests, the CLI and the
//! shipped JSON files under `fixtures/`.

use crate::monoid::{Expectations, MonoidalQO};
use crate::qo::FiniteQO;

/// Two incomparable elements `a`, `b`.
pub fn a2() -> FiniteQO {
    FiniteQO::antichain(2)
}

/// `a, b <= c` and `b <= d`.
pub fn n_shape() -> FiniteQO {
    FiniteQO::from_pairs(&["a", "b", "c", "d"], &[("a", "c"), ("b", "c"), ("b", "d")], true)
        .expect("static order")
}

pub fn named_orders() -> Vec<(&'static str, FiniteQO)> {
    vec![
        ("singleton", FiniteQO::antichain(1)),
        ("a2", a2()),
        ("chain2", FiniteQO::chain(2)),
        ("chain3", FiniteQO::chain(3)),
        ("n_shape", n_shape()),
    ]
}

fn number_chain(n: usize) -> FiniteQO {
    let labels: Vec<String> = (0..n).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in i..n {
            pairs.push((labels[i].clone(), labels[j].clone()));
        }
    }
    FiniteQO::from_pairs(&labels, &pairs, false).expect("chain")
}

/// `{0, ..., cap}` under addition truncated at `cap`.
pub fn capped_addition(cap: usize) -> MonoidalQO {
    MonoidalQO::from_fn(number_chain(cap + 1), 0, |a, b| (a + b).min(cap)).expect("table")
}

/// `{0, ..., n-1}` under `max`.
pub fn max_chain(n: usize) -> MonoidalQO {
    MonoidalQO::from_fn(number_chain(n), 0, |a, b| a.max(b)).expect("table")
}

/// Unit `e` below `k` idempotent incomparable atoms. For `k >= 2` distinct
/// atoms multiply to an absorbing `top`.
pub fn idempotent_flat(k: usize) -> MonoidalQO {
    assert!(k >= 1);
    let mut labels = vec!["e".to_string()];
    labels.extend((0..k).map(|i| ((b'a' + i as u8) as char).to_string()));
    let with_top = k >= 2;
    if with_top {
        labels.push("top".into());
    }
    let n = labels.len();
    let top = n - 1;
    let mut pairs = Vec::new();
    for i in 0..n {
        pairs.push((labels[0].clone(), labels[i].clone()));
        if with_top {
            pairs.push((labels[i].clone(), labels[top].clone()));
        }
    }
    let order = FiniteQO::from_pairs(&labels, &pairs, true).expect("flat order");
    MonoidalQO::from_fn(order, 0, |x, y| match (x, y) {
        (0, y) => y,
        (x, 0) => x,
        (x, y) if x == y => x,
        _ => top,
    })
    .expect("table")
}

/// `{e, a}` with `e < a` and `aa = e`: not weakly increasing.
pub fn broken_square() -> MonoidalQO {
    let order = FiniteQO::from_pairs(&["e", "a"], &[("e", "a")], true).expect("order");
    MonoidalQO::from_fn(order, 0, |x, y| (x + y) % 2).expect("table")
}

/// Finite sequences over `letters` of length at most `max_len` under the
/// subsequence embedding, with concatenation; overlong products collapse to
/// an absorbing `top` above everything.
pub fn truncated_sequences(letters: &FiniteQO, max_len: usize) -> MonoidalQO {
    let mut words: Vec<Vec<usize>> = vec![Vec::new()];
    let mut frontier = vec![Vec::new()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for x in letters.elements() {
                let mut v: Vec<usize> = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        words.extend(next.iter().cloned());
        frontier = next;
    }
    let short = letters.labels().iter().all(|l| l.chars().count() == 1);
    let sep = if short { "" } else { "." };
    let mut labels: Vec<String> = words
        .iter()
        .map(|w| {
            if w.is_empty() {
                "ε".to_string()
            } else {
                w.iter().map(|&x| letters.label(x)).collect::<Vec<_>>().join(sep)
            }
        })
        .collect();
    labels.push("top".into());
    let n = labels.len();
    let top = n - 1;
    let mut leq = vec![false; n * n];
    for i in 0..n {
        leq[i * n + top] = true;
    }
    for (i, u) in words.iter().enumerate() {
        for (j, v) in words.iter().enumerate() {
            leq[i * n + j] = embeds(letters, u, v);
        }
    }
    let order = FiniteQO::from_table(labels, leq).expect("sequence order");
    let index = |w: &[usize]| words.iter().position(|v| v == w);
    MonoidalQO::from_fn(order, 0, |x, y| {
        if x == top || y == top {
            return top;
        }
        let mut w = words[x].clone();
        w.extend(&words[y]);
        index(&w).unwrap_or(top)
    })
    .expect("table")
}

// Greedy left-to-right matching decides the subsequence embedding.
fn embeds(letters: &FiniteQO, u: &[usize], v: &[usize]) -> bool {
    let mut j = 0;
    for &x in u {
        while j < v.len() && !letters.leq(x, v[j]) {
            j += 1;
        }
        if j == v.len() {
            return false;
        }
        j += 1;
    }
    true
}

fn expect(axioms: bool, plus: Option<bool>, prime_product: Option<bool>) -> Expectations {
    Expectations { axioms, plus, prime_product }
}

/// Every shipped monoid fixture with its expected check outcomes.
pub fn all_named() -> Vec<(&'static str, MonoidalQO, Expectations)> {
    let ok = expect(true, Some(true), Some(true));
    vec![
        ("capped_addition_2", capped_addition(2), ok),
        ("capped_addition_4", capped_addition(4), ok),
        ("idempotent_flat_1", idempotent_flat(1), ok),
        ("idempotent_flat_2", idempotent_flat(2), ok),
        ("idempotent_flat_3", idempotent_flat(3), expect(true, Some(false), Some(false))),
        ("broken_square", broken_square(), expect(false, None, None)),
        ("max_chain_4", max_chain(4), ok),
        ("sequences_a2_len2", truncated_sequences(&a2(), 2), expect(true, Some(false), Some(false))),
        ("sequences_singleton_len3", truncated_sequences(&FiniteQO::antichain(1), 3), ok),
    ]
}
