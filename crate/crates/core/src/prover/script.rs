//! Proof-script DSL: parsing, printing, and certificate checking.
//!
//! Grammar, one item per line (`#` starts a comment):
//!
//! ```text
//! context s=<int> p=<int> q=<int> [neg]
//! axiom <name>
//! step <id> = <rule> <premise-ids> [<int>|<rel>...] [, <word-literal>]...
//! qed <id>
//! ```
//!
//! Scalar arguments (integers and the case selectors `lt`/`eq`/`gt`) follow
//! the premise ids whitespace-separated; word-literal arguments come last,
//! each introduced by a comma (words themselves contain whitespace). The
//! `neg` marker flips the sign axiom to `NEG k` (see `mirror`).
//!
//! Axiom names: `axK` (POS k, or NEG k under `neg`), `axC` (EQ c = k^q),
//! `axL` (EQ longitude = k^-p), `axR` (EQ relator = 1).

use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use thiserror::Error;

use crate::error::GroupError;
use crate::group::{longitude, relator, SurgeryContext};
use crate::prover::kernel::{apply_rule, Arg, Body, Judgment, Rel, Rule, ScalarKind, SignKind};
use crate::word::{parse_word, Gen, Word};

#[derive(Debug, Error)]
pub enum ProverError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("step '{id}' ({rule}) failed: {reason}")]
    Step {
        id: String,
        rule: &'static str,
        reason: String,
    },
    #[error("unknown premise '{name}' in step '{id}'")]
    UnknownPremise { id: String, name: String },
    #[error("duplicate identifier '{0}'")]
    DuplicateId(String),
    #[error("unknown axiom '{0}' (expected axK, axC, axL or axR)")]
    UnknownAxiom(String),
    #[error("qed names '{0}', which is not an unconditional BOT")]
    BadQed(String),
    #[error(transparent)]
    Context(#[from] GroupError),
}

/// The axiom environment of a script: a surgery context plus the chosen
/// polarity of the sign axiom for k.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProverContext {
    pub ctx: SurgeryContext,
    pub k_positive: bool,
}

pub const AXIOM_NAMES: [&str; 4] = ["axK", "axC", "axL", "axR"];

impl ProverContext {
    pub fn new(ctx: SurgeryContext) -> Self {
        ProverContext {
            ctx,
            k_positive: true,
        }
    }

    /// The judgment attached to a named axiom.
    pub fn axiom(&self, name: &str) -> Result<Judgment, ProverError> {
        let s = self.ctx.s;
        let k = Word::gen(Gen::K);
        let body = match name {
            "axK" => {
                let kind = if self.k_positive {
                    SignKind::Pos
                } else {
                    SignKind::Neg
                };
                Body::Sign(kind, k)
            }
            "axC" => Body::Eq(Word::gen(Gen::C), k.pow(self.ctx.q)),
            "axL" => Body::Eq(longitude(s)?, k.pow(-self.ctx.p)),
            "axR" => Body::Eq(relator(s)?, Word::identity()),
            other => return Err(ProverError::UnknownAxiom(other.to_string())),
        };
        Ok(Judgment::global(body))
    }
}

/// One `step` line of a script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScriptStep {
    pub id: String,
    pub rule: Rule,
    pub premises: Vec<String>,
    pub args: Vec<Arg>,
    pub line: usize,
}

/// A parsed proof script.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub context: SurgeryContext,
    pub negated: bool,
    pub axioms: Vec<String>,
    pub steps: Vec<ScriptStep>,
    pub qed: Option<String>,
}

/// Serialized form of a judgment inside a certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JudgmentRepr {
    pub kind: String,
    pub words: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rel: Option<String>,
    pub branches: Vec<(usize, String)>,
}

impl From<&Judgment> for JudgmentRepr {
    fn from(j: &Judgment) -> Self {
        let (kind, words, rel) = match &j.body {
            Body::Sign(k, w) => (k.name().to_string(), vec![w.to_string()], None),
            Body::Eq(u, v) => ("eq".to_string(), vec![u.to_string(), v.to_string()], None),
            Body::Pt(u, v, r) => (
                "pt".to_string(),
                vec![u.to_string(), v.to_string()],
                Some(r.name().to_string()),
            ),
            Body::Cases(u, v) => (
                "cases".to_string(),
                vec![u.to_string(), v.to_string()],
                None,
            ),
            Body::Bot => ("bot".to_string(), vec![], None),
        };
        JudgmentRepr {
            kind,
            words,
            rel,
            branches: j
                .branches
                .iter()
                .map(|&(i, r)| (i, r.name().to_string()))
                .collect(),
        }
    }
}

/// One verified step of a certificate. Axioms appear as steps with rule
/// `"axiom"`, no premises, and the axiom name as their id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertStep {
    pub id: String,
    pub rule: String,
    pub premises: Vec<String>,
    pub args: Vec<Arg>,
    pub judgment: JudgmentRepr,
    pub verified: bool,
}

/// A fully checked proof: the judgment of every step has been recomputed by
/// the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub context: SurgeryContextRepr,
    pub negated: bool,
    /// `"BOT"` when the qed step is an unconditional contradiction,
    /// `"incomplete"` otherwise.
    pub result: String,
    pub steps: Vec<CertStep>,
}

/// Context as stored in certificate JSON.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryContextRepr {
    pub s: i64,
    pub p: i64,
    pub q: i64,
}

impl Certificate {
    pub fn is_bot(&self) -> bool {
        self.result == "BOT"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serialization cannot fail")
    }
}

// ---------------------------------------------------------------------------
// parsing

struct Line<'a> {
    number: usize,
    text: &'a str,
}

fn perr(line: usize, col: usize, msg: impl Into<String>) -> ProverError {
    ProverError::Parse {
        line,
        col,
        msg: msg.into(),
    }
}

/// Whitespace tokens of a line segment with 1-based column positions.
fn tokens(text: &str, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in text.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((offset + s + 1, &text[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((offset + s + 1, &text[s..]));
    }
    out
}

fn is_identifier(token: &str) -> bool {
    let mut chars = token.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_context(line: &Line) -> Result<(SurgeryContext, bool), ProverError> {
    let mut s = None;
    let mut p = None;
    let mut q = None;
    let mut negated = false;
    for (col, tok) in tokens(line.text, 0).into_iter().skip(1) {
        if tok == "neg" {
            negated = true;
            continue;
        }
        let (key, value) = tok
            .split_once('=')
            .ok_or_else(|| perr(line.number, col, format!("expected key=value, got '{tok}'")))?;
        let value: i64 = value
            .parse()
            .map_err(|_| perr(line.number, col, format!("bad integer in '{tok}'")))?;
        match key {
            "s" => s = Some(value),
            "p" => p = Some(value),
            "q" => q = Some(value),
            _ => return Err(perr(line.number, col, format!("unknown key '{key}'"))),
        }
    }
    match (s, p, q) {
        (Some(s), Some(p), Some(q)) => Ok((SurgeryContext::new(s, p, q)?, negated)),
        _ => Err(perr(line.number, 1, "context needs s=, p= and q=")),
    }
}

fn parse_step(line: &Line) -> Result<ScriptStep, ProverError> {
    let body = line.text.trim_start().strip_prefix("step").unwrap();
    let (head, rest) = body
        .split_once('=')
        .ok_or_else(|| perr(line.number, 1, "expected 'step <id> = <rule> ...'"))?;
    let head_toks = tokens(head, 0);
    if head_toks.len() != 1 || !is_identifier(head_toks[0].1) {
        return Err(perr(line.number, 1, "expected a single step identifier"));
    }
    let id = head_toks[0].1.to_string();

    // word-literal arguments are the comma-separated segments after the first
    let mut segments = rest.split(',');
    let scalar_part = segments.next().unwrap_or("");
    let base = line.text.len() - rest.len();
    let mut scalar_toks = tokens(scalar_part, base).into_iter();
    let (rule_col, rule_name) = scalar_toks
        .next()
        .ok_or_else(|| perr(line.number, base + 1, "missing rule name"))?;
    let rule = Rule::from_dsl_name(rule_name)
        .ok_or_else(|| perr(line.number, rule_col, format!("unknown rule '{rule_name}'")))?;
    let sig = rule.signature();

    let mut premises = Vec::new();
    let mut args = Vec::new();
    for (col, tok) in scalar_toks {
        if premises.len() < sig.premises {
            if !is_identifier(tok) {
                return Err(perr(
                    line.number,
                    col,
                    format!("expected a premise identifier, got '{tok}'"),
                ));
            }
            premises.push(tok.to_string());
        } else {
            let slot = args.len();
            let expected = sig.scalars.get(slot).ok_or_else(|| {
                perr(line.number, col, format!("unexpected extra argument '{tok}'"))
            })?;
            let arg = match expected {
                ScalarKind::Int => Arg::Int(tok.parse().map_err(|_| {
                    perr(line.number, col, format!("expected an integer, got '{tok}'"))
                })?),
                ScalarKind::RelSel => Arg::RelSel(Rel::from_name(tok).ok_or_else(|| {
                    perr(line.number, col, format!("expected lt, eq or gt, got '{tok}'"))
                })?),
            };
            args.push(arg);
        }
    }
    if premises.len() != sig.premises || args.len() != sig.scalars.len() {
        return Err(perr(
            line.number,
            rule_col,
            format!(
                "rule {} takes {} premises and {} scalar arguments",
                rule_name,
                sig.premises,
                sig.scalars.len()
            ),
        ));
    }
    let mut n_words = 0;
    for segment in segments {
        let word = parse_word(segment.trim())
            .map_err(|e| perr(line.number, base + 1, format!("bad word literal: {e}")))?;
        args.push(Arg::Word(word));
        n_words += 1;
    }
    if n_words != sig.words {
        return Err(perr(
            line.number,
            rule_col,
            format!("rule {} takes {} word arguments", rule_name, sig.words),
        ));
    }
    Ok(ScriptStep {
        id,
        rule,
        premises,
        args,
        line: line.number,
    })
}

/// Parse a proof script from DSL text.
pub fn parse_script(text: &str) -> Result<ProofScript, ProverError> {
    let mut context = None;
    let mut negated = false;
    let mut axioms = Vec::new();
    let mut steps: Vec<ScriptStep> = Vec::new();
    let mut qed = None;
    for (idx, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let line = Line {
            number: idx + 1,
            text: content,
        };
        let first = tokens(content, 0)[0].1;
        match first {
            "context" => {
                if context.is_some() {
                    return Err(perr(line.number, 1, "duplicate context line"));
                }
                let (ctx, neg) = parse_context(&line)?;
                context = Some(ctx);
                negated = neg;
            }
            "axiom" => {
                let toks = tokens(content, 0);
                if toks.len() != 2 {
                    return Err(perr(line.number, 1, "expected 'axiom <name>'"));
                }
                let name = toks[1].1.to_string();
                if !AXIOM_NAMES.contains(&name.as_str()) {
                    return Err(ProverError::UnknownAxiom(name));
                }
                if axioms.contains(&name) {
                    return Err(ProverError::DuplicateId(name));
                }
                axioms.push(name);
            }
            "step" => {
                let step = parse_step(&line)?;
                if axioms.contains(&step.id)
                    || steps.iter().any(|s| s.id == step.id)
                {
                    return Err(ProverError::DuplicateId(step.id));
                }
                steps.push(step);
            }
            "qed" => {
                let toks = tokens(content, 0);
                if toks.len() != 2 {
                    return Err(perr(line.number, 1, "expected 'qed <id>'"));
                }
                qed = Some(toks[1].1.to_string());
            }
            other => {
                return Err(perr(
                    line.number,
                    tokens(content, 0)[0].0,
                    format!("unknown directive '{other}'"),
                ))
            }
        }
    }
    let context = context.ok_or_else(|| perr(1, 1, "missing context line"))?;
    Ok(ProofScript {
        context,
        negated,
        axioms,
        steps,
        qed,
    })
}

/// Render a script back to DSL text; `parse_script` inverts this exactly.
pub fn print_script(script: &ProofScript) -> String {
    let mut out = String::new();
    let c = &script.context;
    out.push_str(&format!(
        "context s={} p={} q={}{}\n",
        c.s,
        c.p,
        c.q,
        if script.negated { " neg" } else { "" }
    ));
    for axiom in &script.axioms {
        out.push_str(&format!("axiom {axiom}\n"));
    }
    for step in &script.steps {
        out.push_str(&format!("step {} = {}", step.id, step.rule.dsl_name()));
        for p in &step.premises {
            out.push_str(&format!(" {p}"));
        }
        for arg in &step.args {
            match arg {
                Arg::Word(w) => out.push_str(&format!(", {w}")),
                scalar => out.push_str(&format!(" {scalar}")),
            }
        }
        out.push('\n');
    }
    if let Some(q) = &script.qed {
        out.push_str(&format!("qed {q}\n"));
    }
    out
}

// ---------------------------------------------------------------------------
// checking

/// Verify every step of a script with the kernel, producing a certificate.
/// Fails fast at the first invalid step.
pub fn check_script(script: &ProofScript) -> Result<Certificate, ProverError> {
    let pctx = ProverContext {
        ctx: SurgeryContext::new(script.context.s, script.context.p, script.context.q)?,
        k_positive: !script.negated,
    };
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut judgments: Vec<Judgment> = Vec::new();
    let mut steps: Vec<CertStep> = Vec::new();

    for name in &script.axioms {
        let judgment = pctx.axiom(name)?;
        index.insert(name, judgments.len());
        steps.push(CertStep {
            id: name.clone(),
            rule: "axiom".to_string(),
            premises: vec![],
            args: vec![],
            judgment: JudgmentRepr::from(&judgment),
            verified: true,
        });
        judgments.push(judgment);
    }

    for step in &script.steps {
        let mut resolved = Vec::with_capacity(step.premises.len());
        for name in &step.premises {
            let &i = index
                .get(name.as_str())
                .ok_or_else(|| ProverError::UnknownPremise {
                    id: step.id.clone(),
                    name: name.clone(),
                })?;
            resolved.push((i, &judgments[i]));
        }
        let judgment =
            apply_rule(&pctx.ctx, step.rule, &resolved, &step.args).map_err(|e| {
                ProverError::Step {
                    id: step.id.clone(),
                    rule: e.rule,
                    reason: e.reason,
                }
            })?;
        index.insert(&step.id, judgments.len());
        steps.push(CertStep {
            id: step.id.clone(),
            rule: step.rule.dsl_name().to_string(),
            premises: step.premises.clone(),
            args: step.args.clone(),
            judgment: JudgmentRepr::from(&judgment),
            verified: true,
        });
        judgments.push(judgment);
    }

    let result = match &script.qed {
        Some(goal) => {
            let &i = index
                .get(goal.as_str())
                .ok_or_else(|| ProverError::BadQed(goal.clone()))?;
            if judgments[i].is_bot() && judgments[i].branches.is_empty() {
                "BOT".to_string()
            } else {
                return Err(ProverError::BadQed(goal.clone()));
            }
        }
        None => "incomplete".to_string(),
    };
    Ok(Certificate {
        context: SurgeryContextRepr {
            s: pctx.ctx.s,
            p: pctx.ctx.p,
            q: pctx.ctx.q,
        },
        negated: script.negated,
        result,
        steps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_basic() {
        let text = "\
# derive POS c
context s=3 p=9 q=1
axiom axK
axiom axC
step pkq = pow axK 1
step ec = eq_sym axC
step pc = eqsubst pkq ec
";
        let script = parse_script(text).unwrap();
        assert_eq!(script.context, SurgeryContext::new(3, 9, 1).unwrap());
        assert_eq!(script.axioms, vec!["axK", "axC"]);
        assert_eq!(script.steps.len(), 3);
        assert_eq!(script.steps[0].rule, Rule::Pow);
        assert_eq!(script.steps[0].args, vec![Arg::Int(1)]);
        assert_eq!(script.qed, None);

        let cert = check_script(&script).unwrap();
        assert_eq!(cert.result, "incomplete");
        assert_eq!(cert.steps.last().unwrap().judgment.kind, "pos");
        assert_eq!(cert.steps.last().unwrap().judgment.words, vec!["c"]);
    }

    #[test]
    fn parse_word_args() {
        let text = "\
context s=3 p=9 q=1
axiom axK
step a = conj axK, l^-1 c
step b = pt_hyp eq, k, 1
";
        let script = parse_script(text).unwrap();
        assert_eq!(
            script.steps[0].args,
            vec![Arg::Word(parse_word("l^-1 c").unwrap())]
        );
        assert_eq!(script.steps[1].args.len(), 3);
        check_script(&script).unwrap();
    }

    #[test]
    fn parse_errors_have_positions() {
        let e = parse_script("context s=3 p=9 q=1\nstep x = frobnicate a\n").unwrap_err();
        match e {
            ProverError::Parse { line, col, .. } => {
                assert_eq!(line, 2);
                assert!(col > 1);
            }
            other => panic!("unexpected error {other:?}"),
        }
        assert!(parse_script("step x = pow a 2\n").is_err()); // no context
        assert!(parse_script("context s=3 p=9 q=1\naxiom nope\n").is_err());
        assert!(parse_script("context s=3 p=9 q=1\ngarbage\n").is_err());
    }

    #[test]
    fn duplicate_ids_rejected() {
        let text = "context s=3 p=9 q=1\naxiom axK\nstep axK = inv axK\n";
        assert!(matches!(
            parse_script(text),
            Err(ProverError::DuplicateId(_))
        ));
    }

    #[test]
    fn empty_script_not_bot() {
        let script = parse_script("context s=3 p=9 q=1\n").unwrap();
        let cert = check_script(&script).unwrap();
        assert_eq!(cert.steps.len(), 0);
        assert!(!cert.is_bot());
    }

    #[test]
    fn qed_requires_bot() {
        let text = "context s=3 p=9 q=1\naxiom axK\nstep a = pow axK 2\nqed a\n";
        let script = parse_script(text).unwrap();
        assert!(matches!(check_script(&script), Err(ProverError::BadQed(_))));
    }

    #[test]
    fn failing_step_is_named() {
        let bad = "context s=3 p=8 q=1\naxiom axK\nstep z = kpow_sign axK 1 0\n";
        let err = check_script(&parse_script(bad).unwrap()).unwrap_err();
        match err {
            ProverError::Step { id, rule, .. } => {
                assert_eq!(id, "z");
                assert_eq!(rule, "R-KPOW-SIGN");
            }
            other => panic!("unexpected error {other:?}"),
        }
        let fine = "context s=3 p=8 q=1\naxiom axK\nstep z = kpow_sign axK 1 1\n";
        check_script(&parse_script(fine).unwrap()).unwrap();
    }

    #[test]
    fn roundtrip_print_parse() {
        let text = "\
context s=4 p=23 q=2 neg
axiom axK
axiom axR
step a = conj axK, c l^-2
step e = eq_relator axR 0 0 1, c l
step cs = pt_cases, l, 1
step b = pt_case cs lt
qed a
";
        let script = parse_script(text).unwrap();
        let printed = print_script(&script);
        assert_eq!(parse_script(&printed).unwrap(), script);
        assert_eq!(print_script(&parse_script(&printed).unwrap()), printed);
    }
}
