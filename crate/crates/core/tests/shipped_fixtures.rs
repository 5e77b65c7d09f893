//! The JSON files under `fixtures/` must match the in-code generators.
//! Regenerate them with `IDEALFORGE_WRITE_FIXTURES=1 cargo test --test shipped_fixtures`.

use std::path::PathBuf;

use idealforge::fixtures;
use idealforge::hierarchy::{LevelLimits, SymbolicLevel};
use idealforge::higman::{AlphabetSpec, AtomAlphabet};
use idealforge::monoid::{MonoidSpec, MonoidalQO};
use idealforge::qo::QoSpec;
use idealforge::FiniteQO;

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn alphabets() -> Vec<(&'static str, AtomAlphabet)> {
    let sym = SymbolicLevel::build(&fixtures::a2(), 1, &LevelLimits::default()).unwrap();
    let top_idem = AtomAlphabet::new(FiniteQO::chain(2), vec![false, true]).unwrap();
    vec![
        ("classical_a2", AtomAlphabet::classical(fixtures::a2())),
        ("chain2_top_idem", top_idem),
        ("a2_level1_atoms", (*sym.alphabet).clone()),
    ]
}

fn sync(dir: &str, name: &str, text: String) -> Option<String> {
    let path = root().join(dir).join(format!("{name}.json"));
    if std::env::var("IDEALFORGE_WRITE_FIXTURES").is_ok_and(|v| v == "1") {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, text + "\n").unwrap();
        return None;
    }
    let on_disk = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
    Some(on_disk)
}

#[test]
fn orders_match() {
    for (name, q) in fixtures::named_orders() {
        let text = serde_json::to_string_pretty(&q.to_spec()).unwrap();
        if let Some(disk) = sync("qo", name, text) {
            let spec: QoSpec = serde_json::from_str(&disk).unwrap();
            assert_eq!(FiniteQO::from_spec(&spec).unwrap(), q, "{name}");
        }
    }
}

#[test]
fn monoids_match() {
    for (name, m, e) in fixtures::all_named() {
        let text = serde_json::to_string_pretty(&m.to_spec(Some(e))).unwrap();
        if let Some(disk) = sync("monoid", name, text) {
            let spec: MonoidSpec = serde_json::from_str(&disk).unwrap();
            assert_eq!(spec.expect.as_ref(), Some(&e), "{name}");
            let back = MonoidalQO::from_spec(&spec).unwrap();
            assert_eq!(back.order(), m.order(), "{name}");
            assert!((0..m.len()).all(|x| (0..m.len()).all(|y| back.mul(x, y) == m.mul(x, y))), "{name}");
            assert_eq!(back.unit(), m.unit(), "{name}");
        }
    }
}

#[test]
fn alphabets_match() {
    for (name, a) in alphabets() {
        let text = serde_json::to_string_pretty(&a.to_spec()).unwrap();
        if let Some(disk) = sync("alphabet", name, text) {
            let spec: AlphabetSpec = serde_json::from_str(&disk).unwrap();
            let back = AtomAlphabet::from_spec(&spec).unwrap();
            assert_eq!(back.order(), a.order(), "{name}");
            assert_eq!(back.idem_flags(), a.idem_flags(), "{name}");
        }
    }
}
