use std::path::Path;

use idealforge::downset::{enumerate_downsets, enumerate_ideals, ideal_decomposition};
use idealforge::hierarchy::{build_levels, check_mult_laws, LawSampling, LevelKind, LevelLimits, SymbolicLevel};
use idealforge::higman::{leq_letters, leq_letters_bruteforce, AlphabetSpec, AtomAlphabet};
use idealforge::monoid::{MonoidSpec, MonoidalQO};
use idealforge::oracle::{check_containment_agreement, check_two_forms, check_xy_wz};
use idealforge::qo::QoSpec;
use idealforge::reflect::{build_reflection, verify_reflection};
use idealforge::report::Report;
use idealforge::{Error, FiniteQO};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use crate::{Cli, Command, HierCmd, HigmanCmd, Kind, MonoidCmd, QoCmd, VerifyCmd};

/// Result of one subcommand before rendering.
pub struct Outcome {
    pub passed: bool,
    pub report: Value,
    /// Graphviz text, for commands that have one.
    pub dot: Option<String>,
}

pub type CmdResult = Result<Outcome, String>;

fn read<T: DeserializeOwned>(path: &Path) -> Result<(T, Value), String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let raw: Value = serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))?;
    let parsed = serde_json::from_value(raw.clone()).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((parsed, raw))
}

fn load_qo(path: &Path) -> Result<(FiniteQO, Value), String> {
    let (spec, raw): (QoSpec, Value) = read(path)?;
    let q = FiniteQO::from_spec(&spec).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((q, raw))
}

fn load_monoid(path: &Path) -> Result<(MonoidalQO, MonoidSpec, Value), String> {
    let (spec, raw): (MonoidSpec, Value) = read(path)?;
    let m = MonoidalQO::from_spec(&spec).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((m, spec, raw))
}

fn load_alphabet(path: &Path) -> Result<(AtomAlphabet, Value), String> {
    let (spec, raw): (AlphabetSpec, Value) = read(path)?;
    let a = AtomAlphabet::from_spec(&spec).map_err(|e| format!("{}: {e}", path.display()))?;
    Ok((a, raw))
}

fn fail(e: Error) -> String {
    e.to_string()
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn limits(cli: &Cli) -> LevelLimits {
    let mut l = LevelLimits::from_env();
    if let Some(m) = cli.global.max_members {
        l.max_members = m;
    }
    l
}

fn done(passed: bool, report: Value) -> CmdResult {
    Ok(Outcome { passed, report, dot: None })
}

/// Attaches the parsed input to failing reports so they can be replayed.
fn with_input(mut out: Outcome, input: Value) -> Outcome {
    if !out.passed {
        if let Value::Object(map) = &mut out.report {
            map.insert("input".into(), input);
        }
    }
    out
}

pub fn dispatch(cli: &Cli) -> CmdResult {
    let g = &cli.global;
    match &cli.command {
        Command::Qo(cmd) => qo(cmd),
        Command::Ideals { file } => {
            let (q, _) = load_qo(file)?;
            let ideals = enumerate_ideals(&q).map_err(fail)?;
            let list: Vec<Value> = ideals
                .iter()
                .map(|d| json!({ "top": q.show_set(&q.maximal_in(d.members())), "members": q.show_set(d.members()) }))
                .collect();
            done(true, json!({ "count": list.len(), "ideals": list }))
        }
        Command::Downsets { file } => {
            let (q, _) = load_qo(file)?;
            let downs = enumerate_downsets(&q).map_err(fail)?;
            let list: Vec<Value> = downs
                .iter()
                .map(|d| {
                    let parts: Vec<String> =
                        ideal_decomposition(&q, d).iter().map(|i| q.show_set(&q.maximal_in(i.members()))).collect();
                    json!({ "members": q.show_set(d.members()), "ideals": parts })
                })
                .collect();
            done(true, json!({ "count": list.len(), "downsets": list }))
        }
        Command::Monoid(cmd) => monoid(cmd),
        Command::Higman(HigmanCmd::Leq { alphabet, u, v }) => {
            let (a, raw) = load_alphabet(alphabet)?;
            let uw = a.parse_word(u).map_err(fail)?;
            let vw = a.parse_word(v).map_err(fail)?;
            let leq = leq_letters(&a, &uw, &vw);
            let geq = leq_letters(&a, &vw, &uw);
            let brute = leq_letters_bruteforce(&a, &uw, &vw).ok();
            let agree = brute.is_none_or(|b| b == leq);
            let report = json!({
                "u": a.show_word(&uw), "v": a.show_word(&vw),
                "leq": leq, "geq": geq, "equiv": leq && geq, "bruteforce": brute,
            });
            Ok(with_input(Outcome { passed: agree, report, dot: None }, raw))
        }
        Command::Hier(cmd) => hier(cli, cmd),
        Command::Verify(cmd) => verify(cli, cmd, g.seed, g.maxlen),
    }
}

fn qo(cmd: &QoCmd) -> CmdResult {
    match cmd {
        QoCmd::Validate { file } => {
            let (q, _) = load_qo(file)?;
            done(
                true,
                json!({
                    "valid": true,
                    "elements": q.len(),
                    "antisymmetric": q.is_antisymmetric(),
                    "classes": q.quotient().len(),
                }),
            )
        }
        QoCmd::Quotient { file } => {
            let (q, _) = load_qo(file)?;
            let quot = q.quotient();
            let classes: Vec<Vec<&str>> =
                quot.members.iter().map(|ms| ms.iter().map(|&m| q.label(m)).collect()).collect();
            let name = |c: usize| q.label(quot.representative(c)).to_string();
            let edges: Vec<[String; 2]> =
                quot.classes.hasse_edges().into_iter().map(|(x, y)| [name(x), name(y)]).collect();
            done(true, json!({ "classes": classes, "covers": edges }))
        }
        QoCmd::Dot { file } => {
            let (q, _) = load_qo(file)?;
            let name = file.file_stem().and_then(|s| s.to_str()).unwrap_or("qo");
            let dot = q.to_dot(name);
            Ok(Outcome { passed: true, report: json!({ "dot": dot }), dot: Some(dot) })
        }
    }
}

fn monoid(cmd: &MonoidCmd) -> CmdResult {
    match cmd {
        MonoidCmd::Check { file, product_len } => {
            let (m, spec, raw) = load_monoid(file)?;
            let axioms = m.check_axioms();
            let plus = m.check_plus_property();
            let prime = m.check_prime_product_lemma(*product_len);
            let passed = match &spec.expect {
                Some(e) => {
                    axioms.passed() == e.axioms
                        && e.plus.is_none_or(|p| p == plus.passed)
                        && e.prime_product.is_none_or(|p| p == prime.passed)
                }
                None => axioms.passed() && plus.passed && prime.passed,
            };
            let report = json!({
                "axioms": to_value(&axioms),
                "plus": to_value(&plus),
                "prime_product": to_value(&prime),
                "expect": to_value(&spec.expect),
                "matches_expectations": spec.expect.is_some().then_some(passed),
            });
            Ok(with_input(Outcome { passed, report, dot: None }, raw))
        }
        MonoidCmd::Primes { file } => {
            let (m, _, _) = load_monoid(file)?;
            let primes: Vec<&str> = m.primes().into_iter().map(|p| m.label(p)).collect();
            done(true, json!({ "primes": primes }))
        }
        MonoidCmd::Factor { file, element } => {
            let (m, _, raw) = load_monoid(file)?;
            let x = m.order().index_of(element).map_err(fail)?;
            match m.prime_factorization(x) {
                Ok(f) => {
                    let labels: Vec<&str> = f.iter().map(|&p| m.label(p)).collect();
                    done(true, json!({ "element": element, "factors": labels }))
                }
                Err(e @ Error::NoFactorization(_)) => Ok(with_input(
                    Outcome {
                        passed: false,
                        report: json!({ "element": element, "error": e.to_string() }),
                        dot: None,
                    },
                    raw,
                )),
                Err(e) => Err(fail(e)),
            }
        }
    }
}

fn level_kind(k: Kind) -> LevelKind {
    match k {
        Kind::Vstar => LevelKind::Vstar,
        Kind::Istar => LevelKind::Istar,
        Kind::Ihat => LevelKind::Ihat,
    }
}

fn hier(cli: &Cli, cmd: &HierCmd) -> CmdResult {
    let lim = limits(cli);
    match cmd {
        HierCmd::Build { qo, alpha, kind } => {
            let (q, _) = load_qo(qo)?;
            let levels = build_levels(&q, *alpha, level_kind(*kind), &lim).map_err(fail)?;
            let list: Vec<Value> = levels
                .iter()
                .map(|l| {
                    let members: Vec<String> = l.members().iter().map(|x| x.show(&q)).collect();
                    json!({ "alpha": l.alpha, "size": l.len(), "members": members })
                })
                .collect();
            let top = levels.last().expect("level 0 always exists");
            let dot = top.as_qo(&q).to_dot(&format!("{}_level{}", level_kind(*kind), alpha));
            Ok(Outcome {
                passed: true,
                report: json!({ "kind": level_kind(*kind).to_string(), "levels": list }),
                dot: Some(dot),
            })
        }
        HierCmd::Atoms { qo, alpha } => {
            let (q, _) = load_qo(qo)?;
            let s = SymbolicLevel::build(&q, *alpha, &lim).map_err(fail)?;
            let atoms: Vec<Value> = s
                .atoms
                .iter()
                .enumerate()
                .map(|(i, a)| json!({ "index": i, "label": s.label(i), "idempotent": a.is_idem(), "level": a.level }))
                .collect();
            let order = s.alphabet.order();
            let covers: Vec<[&str; 2]> =
                order.hasse_edges().into_iter().map(|(x, y)| [s.label(x), s.label(y)]).collect();
            let dot = order.to_dot(&format!("atoms_level{alpha}"));
            Ok(Outcome {
                passed: true,
                report: json!({ "alpha": alpha, "count": atoms.len(), "atoms": atoms, "covers": covers }),
                dot: Some(dot),
            })
        }
    }
}

fn symbolic(cli: &Cli, qo: &Path, alpha: usize) -> Result<(SymbolicLevel, Value), String> {
    let (q, raw) = load_qo(qo)?;
    let s = SymbolicLevel::build(&q, alpha, &limits(cli)).map_err(fail)?;
    Ok((s, raw))
}

fn report_outcome(r: Report, raw: Value) -> Outcome {
    with_input(Outcome { passed: r.passed(), report: to_value(&r), dot: None }, raw)
}

fn verify(cli: &Cli, cmd: &VerifyCmd, seed: u64, maxlen: usize) -> CmdResult {
    match cmd {
        VerifyCmd::TwoForms { qo, alpha, word_len } => {
            let (s, raw) = symbolic(cli, qo, *alpha)?;
            let r = check_two_forms(&s, maxlen, *word_len).map_err(fail)?;
            Ok(with_input(Outcome { passed: r.passed(), report: to_value(&r), dot: None }, raw))
        }
        VerifyCmd::Containment { qo, alpha, word_len } => {
            let (s, raw) = symbolic(cli, qo, *alpha)?;
            let r = check_containment_agreement(&s, maxlen, *word_len).map_err(fail)?;
            Ok(with_input(Outcome { passed: r.passed(), report: to_value(&r), dot: None }, raw))
        }
        VerifyCmd::Xywz { qo, alpha, word_len } => {
            let (s, raw) = symbolic(cli, qo, *alpha)?;
            let r = check_xy_wz(&s, maxlen, *word_len).map_err(fail)?;
            Ok(with_input(Outcome { passed: r.passed(), report: to_value(&r), dot: None }, raw))
        }
        VerifyCmd::Reflect { qo, alpha } => {
            let (s, raw) = symbolic(cli, qo, *alpha)?;
            let t = build_reflection(&s).map_err(fail)?;
            let r = verify_reflection(&s, &t);
            let images: Vec<[String; 2]> = (0..s.len()).map(|i| [s.label(i).to_string(), t.show(i)]).collect();
            let mut out = report_outcome(r, raw);
            if let Value::Object(map) = &mut out.report {
                map.insert("images".into(), to_value(&images));
            }
            Ok(out)
        }
        VerifyCmd::HigmanDp { alphabet } => {
            let (a, raw) = load_alphabet(alphabet)?;
            let words = a.words_up_to(maxlen);
            let mut check = idealforge::report::Check::new("dp_matches_bruteforce");
            for u in &words {
                for v in &words {
                    let bf = leq_letters_bruteforce(&a, u, v).map_err(fail)?;
                    check.record(leq_letters(&a, u, v) == bf, || vec![a.show_word(u), a.show_word(v)]);
                }
            }
            let r = Report { subject: format!("higman_dp(maxlen={maxlen})"), checks: vec![check] };
            Ok(report_outcome(r, raw))
        }
        VerifyCmd::Axioms { monoid, samples } => {
            let (m, _, raw) = load_monoid(monoid)?;
            let axioms = m.check_axioms();
            let cfg = LawSampling { samples: *samples, seed, ..LawSampling::default() };
            let laws = check_mult_laws(&m, &cfg, &limits(cli)).map_err(fail)?;
            let passed = axioms.passed() && laws.passed();
            let report = json!({ "axioms": to_value(&axioms), "set_product": to_value(&laws) });
            Ok(with_input(Outcome { passed, report, dot: None }, raw))
        }
    }
}
