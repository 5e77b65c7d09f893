use serde_json::{json, Value};

use crate::commands::Outcome;
use crate::{Cli, Command, Format, HierCmd, HigmanCmd, MonoidCmd, QoCmd, VerifyCmd};

pub fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Qo(QoCmd::Validate { .. }) => "qo validate",
        Command::Qo(QoCmd::Quotient { .. }) => "qo quotient",
        Command::Qo(QoCmd::Dot { .. }) => "qo dot",
        Command::Ideals { .. } => "ideals",
        Command::Downsets { .. } => "downsets",
        Command::Monoid(MonoidCmd::Check { .. }) => "monoid check",
        Command::Monoid(MonoidCmd::Primes { .. }) => "monoid primes",
        Command::Monoid(MonoidCmd::Factor { .. }) => "monoid factor",
        Command::Higman(HigmanCmd::Leq { .. }) => "higman leq",
        Command::Hier(HierCmd::Build { .. }) => "hier build",
        Command::Hier(HierCmd::Atoms { .. }) => "hier atoms",
        Command::Verify(VerifyCmd::TwoForms { .. }) => "verify two-forms",
        Command::Verify(VerifyCmd::Containment { .. }) => "verify containment",
        Command::Verify(VerifyCmd::Xywz { .. }) => "verify xywz",
        Command::Verify(VerifyCmd::Reflect { .. }) => "verify reflect",
        Command::Verify(VerifyCmd::HigmanDp { .. }) => "verify higman-dp",
        Command::Verify(VerifyCmd::Axioms { .. }) => "verify axioms",
    }
}

pub fn render(out: &Outcome, cli: &Cli) -> Result<String, String> {
    let envelope = json!({
        "command": command_name(&cli.command),
        "seed": cli.global.seed,
        "maxlen": cli.global.maxlen,
        "passed": out.passed,
        "report": out.report,
    });
    match cli.global.format {
        Format::Json => Ok(serde_json::to_string_pretty(&envelope).expect("values serialize") + "\n"),
        Format::Dot => out
            .dot
            .clone()
            .ok_or_else(|| format!("`{}` has no dot output", command_name(&cli.command))),
        Format::Text => {
            let mut lines = Vec::new();
            flatten("", &envelope, &mut lines);
            Ok(lines.join("\n") + "\n")
        }
    }
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<String>) {
    let join = |k: &str| if prefix.is_empty() { k.to_string() } else { format!("{prefix}.{k}") };
    match v {
        Value::Object(map) => map.iter().for_each(|(k, x)| flatten(&join(k), x, out)),
        Value::Array(xs) if xs.iter().any(|x| x.is_object() || x.is_array()) => {
            xs.iter().enumerate().for_each(|(i, x)| flatten(&join(&i.to_string()), x, out))
        }
        Value::String(s) => out.push(format!("{prefix}: {s}")),
        other => out.push(format!("{prefix}: {other}")),
    }
}
