mod common;

use common::arb_qo;
use idealforge::hierarchy::hset::compare_star;
use idealforge::hierarchy::{
    build_levels, is_hereditarily_directed, lesssim_star, sim_star, HSet, LevelKind, LevelLimits, SymbolicLevel,
};
use idealforge::reflect::{build_reflection, verify_reflection};
use idealforge::FiniteQO;
use proptest::prelude::*;

fn arb_hset(urs: usize) -> impl Strategy<Value = HSet> {
    let leaf = (0..urs).prop_map(HSet::Ur);
    leaf.prop_recursive(3, 16, 3, |inner| {
        prop::collection::vec(inner, 1..=3).prop_map(|xs| HSet::set(xs).unwrap())
    })
}

fn qo_with_hsets(k: usize) -> impl Strategy<Value = (FiniteQO, Vec<HSet>)> {
    arb_qo(3).prop_flat_map(move |q| {
        let n = q.len();
        (Just(q), prop::collection::vec(arb_hset(n), k))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn set_order_is_a_quasi_order((q, xs) in qo_with_hsets(3)) {
        let (x, y, z) = (&xs[0], &xs[1], &xs[2]);
        prop_assert!(lesssim_star(x, x, &q));
        if lesssim_star(x, y, &q) && lesssim_star(y, z, &q) {
            prop_assert!(lesssim_star(x, z, &q));
        }
        prop_assert_eq!(sim_star(x, y, &q), lesssim_star(x, y, &q) && lesssim_star(y, x, &q));
        prop_assert_eq!(compare_star(x, y, &q).is_some(), lesssim_star(x, y, &q) || lesssim_star(y, x, &q));
    }

    #[test]
    fn set_order_is_all_exists((q, xs) in qo_with_hsets(2)) {
        let (x, y) = (&xs[0], &xs[1]);
        if let (HSet::Set(a), HSet::Set(b)) = (x, y) {
            let direct = a.iter().all(|s| b.iter().any(|t| lesssim_star(s, t, &q)));
            prop_assert_eq!(lesssim_star(x, y, &q), direct);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn levels_are_consistent(q in arb_qo(3)) {
        let lim = LevelLimits::default();
        let mut sizes = Vec::new();
        for kind in [LevelKind::Vstar, LevelKind::Istar, LevelKind::Ihat] {
            let levels = build_levels(&q, 2, kind, &lim).unwrap();
            for w in levels.windows(2) {
                prop_assert!(w[1].members().starts_with(w[0].members()));
            }
            let top = levels.last().unwrap();
            let xs = top.members();
            for i in 0..xs.len() {
                for j in 0..xs.len() {
                    prop_assert_eq!(top.leq(i, j), lesssim_star(&xs[i], &xs[j], &q));
                    prop_assert!(i == j || !sim_star(&xs[i], &xs[j], &q));
                }
                if kind != LevelKind::Vstar {
                    prop_assert!(is_hereditarily_directed(&xs[i], &q), "{}", xs[i].show(&q));
                }
            }
            sizes.push(levels.iter().map(|l| l.len()).collect::<Vec<_>>());
        }
        // both ideal-style hierarchies pick the same classes
        prop_assert_eq!(&sizes[1], &sizes[2]);
        prop_assert!(sizes[1].iter().zip(&sizes[0]).all(|(i, v)| i <= v));
    }

    #[test]
    fn reflection_on_random_orders(q in arb_qo(4), alpha in 0usize..=1) {
        let s = SymbolicLevel::build(&q, alpha, &LevelLimits::default()).unwrap();
        let t = build_reflection(&s).unwrap();
        let r = verify_reflection(&s, &t);
        prop_assert!(r.passed(), "{:?}", r);
    }
}

#[test]
fn chains_collapse_to_urelements() {
    let q = FiniteQO::chain(4);
    for kind in [LevelKind::Istar, LevelKind::Ihat] {
        let levels = build_levels(&q, 3, kind, &LevelLimits::default()).unwrap();
        assert!(levels.iter().all(|l| l.members().iter().all(HSet::is_ur)), "{kind}");
    }
}
