//! The trusted kernel of the order-certificate calculus.
//!
//! Judgments are facts about words acting on the line by order-preserving
//! bijections: `POS w` means "for all x, x < w x" (`NNEG`, `NEG`, `NPOS`
//! the non-strict and reversed forms), `EQ u v` means u and v act
//! identically, `PT u v rel` is a pointwise fact `u x0 rel v x0` at a
//! symbolic point, and `BOT` is a contradiction. Pointwise facts carry a
//! branch context recording the trichotomy splits they live under.
//!
//! Every rule is a small syntactic check; [`apply_rule`] is the only way to
//! produce a [`Judgment`] outside the context axioms.

use serde::{Deserialize, Serialize};
use std::fmt;

use crate::group::{relator, rewrite_with_relator, SurgeryContext};
use crate::word::{Gen, Word};

/// Order relation in a pointwise fact.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Rel {
    Lt,
    Eq,
    Gt,
}

impl Rel {
    pub fn mirror(self) -> Rel {
        match self {
            Rel::Lt => Rel::Gt,
            Rel::Eq => Rel::Eq,
            Rel::Gt => Rel::Lt,
        }
    }

    pub fn reverse(self) -> Rel {
        self.mirror()
    }

    pub fn name(self) -> &'static str {
        match self {
            Rel::Lt => "lt",
            Rel::Eq => "eq",
            Rel::Gt => "gt",
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Rel::Lt => "<",
            Rel::Eq => "=",
            Rel::Gt => ">",
        }
    }

    pub fn from_name(name: &str) -> Option<Rel> {
        match name {
            "lt" => Some(Rel::Lt),
            "eq" => Some(Rel::Eq),
            "gt" => Some(Rel::Gt),
            _ => None,
        }
    }

    /// Transitive combination; `None` when the directions clash.
    pub fn chain(self, other: Rel) -> Option<Rel> {
        match (self, other) {
            (Rel::Eq, r) | (r, Rel::Eq) => Some(r),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

impl Serialize for Rel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Rel {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        Rel::from_name(&text).ok_or_else(|| serde::de::Error::custom("expected lt, eq or gt"))
    }
}

/// The four universally quantified sign judgments about a word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SignKind {
    /// for all x: x < w x
    Pos,
    /// for all x: x <= w x
    Nneg,
    /// for all x: x > w x
    Neg,
    /// for all x: x >= w x
    Npos,
}

impl SignKind {
    pub fn strict(self) -> bool {
        matches!(self, SignKind::Pos | SignKind::Neg)
    }

    /// Whether w moves points up (Pos/Nneg) or down (Neg/Npos).
    pub fn upward(self) -> bool {
        matches!(self, SignKind::Pos | SignKind::Nneg)
    }

    pub fn with_strict(self, strict: bool) -> SignKind {
        match (self.upward(), strict) {
            (true, true) => SignKind::Pos,
            (true, false) => SignKind::Nneg,
            (false, true) => SignKind::Neg,
            (false, false) => SignKind::Npos,
        }
    }

    /// Same strictness, opposite direction: the image under inversion of the
    /// word or under order reversal of the line.
    pub fn flip_direction(self) -> SignKind {
        match self {
            SignKind::Pos => SignKind::Neg,
            SignKind::Neg => SignKind::Pos,
            SignKind::Nneg => SignKind::Npos,
            SignKind::Npos => SignKind::Nneg,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SignKind::Pos => "pos",
            SignKind::Nneg => "nneg",
            SignKind::Neg => "neg",
            SignKind::Npos => "npos",
        }
    }

    pub fn from_name(name: &str) -> Option<SignKind> {
        match name {
            "pos" => Some(SignKind::Pos),
            "nneg" => Some(SignKind::Nneg),
            "neg" => Some(SignKind::Neg),
            "npos" => Some(SignKind::Npos),
            _ => None,
        }
    }
}

/// A derived fact, together with the trichotomy branches it depends on.
/// A branch frame `(i, rel)` records "inside the `rel` case of the split
/// made at step index `i`".
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Judgment {
    pub branches: Vec<(usize, Rel)>,
    pub body: Body,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Body {
    Sign(SignKind, Word),
    Eq(Word, Word),
    Pt(Word, Word, Rel),
    /// Marker for an open trichotomy split on `u x0` vs `v x0`.
    Cases(Word, Word),
    Bot,
}

impl Judgment {
    pub fn global(body: Body) -> Judgment {
        Judgment {
            branches: vec![],
            body,
        }
    }

    pub fn is_bot(&self) -> bool {
        matches!(self.body, Body::Bot)
    }

    /// Order-reversal image of the judgment.
    pub fn mirror(&self) -> Judgment {
        let body = match &self.body {
            Body::Sign(k, w) => Body::Sign(k.flip_direction(), w.clone()),
            Body::Eq(u, v) => Body::Eq(u.clone(), v.clone()),
            Body::Pt(u, v, r) => Body::Pt(u.clone(), v.clone(), r.mirror()),
            Body::Cases(u, v) => Body::Cases(u.clone(), v.clone()),
            Body::Bot => Body::Bot,
        };
        Judgment {
            branches: self
                .branches
                .iter()
                .map(|&(i, r)| (i, r.mirror()))
                .collect(),
            body,
        }
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.body {
            Body::Sign(k, w) => write!(f, "{} {}", k.name().to_uppercase(), w)?,
            Body::Eq(u, v) => write!(f, "EQ {} = {}", u, v)?,
            Body::Pt(u, v, r) => write!(f, "PT {} {} {}", u, r.symbol(), v)?,
            Body::Cases(u, v) => write!(f, "CASES {} ? {}", u, v)?,
            Body::Bot => write!(f, "BOT")?,
        }
        for (i, r) in &self.branches {
            write!(f, " [{}:{}]", i, r.name())?;
        }
        Ok(())
    }
}

/// The rule set of the calculus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Rule {
    Pow,
    Mul,
    Conj,
    Inv,
    EqSubst,
    KpowSign,
    Contra,
    EqRefl,
    EqSym,
    EqTrans,
    EqMul,
    EqPow,
    EqRelator,
    PtHyp,
    PtApply,
    PtSym,
    PtTrans,
    PtEqSubst,
    PtCases,
    PtCase,
    PtClose,
    PtContra,
    PtGlobalFix,
}

pub const ALL_RULES: [Rule; 23] = [
    Rule::Pow,
    Rule::Mul,
    Rule::Conj,
    Rule::Inv,
    Rule::EqSubst,
    Rule::KpowSign,
    Rule::Contra,
    Rule::EqRefl,
    Rule::EqSym,
    Rule::EqTrans,
    Rule::EqMul,
    Rule::EqPow,
    Rule::EqRelator,
    Rule::PtHyp,
    Rule::PtApply,
    Rule::PtSym,
    Rule::PtTrans,
    Rule::PtEqSubst,
    Rule::PtCases,
    Rule::PtCase,
    Rule::PtClose,
    Rule::PtContra,
    Rule::PtGlobalFix,
];

/// Scalar argument kinds expected by a rule, in order, before the word
/// arguments.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalarKind {
    Int,
    RelSel,
}

/// The fixed signature of a rule: premise count, scalar args, word args.
pub struct Signature {
    pub premises: usize,
    pub scalars: &'static [ScalarKind],
    pub words: usize,
}

impl Rule {
    /// Name used in the proof-script DSL.
    pub fn dsl_name(self) -> &'static str {
        match self {
            Rule::Pow => "pow",
            Rule::Mul => "mul",
            Rule::Conj => "conj",
            Rule::Inv => "inv",
            Rule::EqSubst => "eqsubst",
            Rule::KpowSign => "kpow_sign",
            Rule::Contra => "contra",
            Rule::EqRefl => "eq_refl",
            Rule::EqSym => "eq_sym",
            Rule::EqTrans => "eq_trans",
            Rule::EqMul => "eq_mul",
            Rule::EqPow => "eq_pow",
            Rule::EqRelator => "eq_relator",
            Rule::PtHyp => "pt_hyp",
            Rule::PtApply => "pt_apply",
            Rule::PtSym => "pt_sym",
            Rule::PtTrans => "pt_trans",
            Rule::PtEqSubst => "pt_eqsubst",
            Rule::PtCases => "pt_cases",
            Rule::PtCase => "pt_case",
            Rule::PtClose => "pt_close",
            Rule::PtContra => "pt_contra",
            Rule::PtGlobalFix => "pt_globalfix",
        }
    }

    /// Canonical name used in diagnostics.
    pub fn canonical_name(self) -> &'static str {
        match self {
            Rule::Pow => "R-POW",
            Rule::Mul => "R-MUL",
            Rule::Conj => "R-CONJ",
            Rule::Inv => "R-INV",
            Rule::EqSubst => "R-EQSUBST",
            Rule::KpowSign => "R-KPOW-SIGN",
            Rule::Contra => "R-CONTRA",
            Rule::EqRefl => "R-EQ-REFL",
            Rule::EqSym => "R-EQ-SYM",
            Rule::EqTrans => "R-EQ-TRANS",
            Rule::EqMul => "R-EQ-MUL",
            Rule::EqPow => "R-EQ-POW",
            Rule::EqRelator => "R-EQ-RELATOR",
            Rule::PtHyp => "R-PT-HYP",
            Rule::PtApply => "R-PT-APPLY",
            Rule::PtSym => "R-PT-SYM",
            Rule::PtTrans => "R-PT-TRANS",
            Rule::PtEqSubst => "R-PT-EQSUBST",
            Rule::PtCases => "R-PT-CASES",
            Rule::PtCase => "R-PT-CASE",
            Rule::PtClose => "R-PT-CLOSE",
            Rule::PtContra => "R-PT-CONTRA",
            Rule::PtGlobalFix => "R-PT-GLOBALFIX",
        }
    }

    pub fn from_dsl_name(name: &str) -> Option<Rule> {
        ALL_RULES.iter().copied().find(|r| r.dsl_name() == name)
    }

    pub fn signature(self) -> Signature {
        use ScalarKind::*;
        let (premises, scalars, words): (usize, &'static [ScalarKind], usize) = match self {
            Rule::Pow => (1, &[Int], 0),
            Rule::Mul => (2, &[], 0),
            Rule::Conj => (1, &[], 1),
            Rule::Inv => (1, &[], 0),
            Rule::EqSubst => (2, &[], 0),
            Rule::KpowSign => (1, &[Int, Int], 0),
            Rule::Contra => (2, &[], 0),
            Rule::EqRefl => (0, &[], 1),
            Rule::EqSym => (1, &[], 0),
            Rule::EqTrans => (2, &[], 0),
            Rule::EqMul => (2, &[], 0),
            Rule::EqPow => (1, &[Int], 0),
            Rule::EqRelator => (1, &[Int, Int, Int], 1),
            Rule::PtHyp => (0, &[RelSel], 2),
            Rule::PtApply => (1, &[], 1),
            Rule::PtSym => (1, &[], 0),
            Rule::PtTrans => (2, &[], 0),
            Rule::PtEqSubst => (2, &[Int], 0),
            Rule::PtCases => (0, &[], 2),
            Rule::PtCase => (1, &[RelSel], 0),
            Rule::PtClose => (4, &[], 0),
            Rule::PtContra => (1, &[], 0),
            Rule::PtGlobalFix => (2, &[], 0),
        };
        Signature {
            premises,
            scalars,
            words,
        }
    }
}

/// An argument to a rule application.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Int(i64),
    RelSel(Rel),
    Word(Word),
}

impl fmt::Display for Arg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Arg::Int(n) => write!(f, "{n}"),
            Arg::RelSel(r) => write!(f, "{}", r.name()),
            Arg::Word(w) => write!(f, "{w}"),
        }
    }
}

impl Serialize for Arg {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Arg::Int(n) => s.serialize_i64(*n),
            Arg::RelSel(r) => s.serialize_str(r.name()),
            Arg::Word(w) => s.collect_str(w),
        }
    }
}

impl<'de> Deserialize<'de> for Arg {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let value = serde_json::Value::deserialize(d)?;
        match value {
            serde_json::Value::Number(n) => n
                .as_i64()
                .map(Arg::Int)
                .ok_or_else(|| serde::de::Error::custom("argument integer out of range")),
            serde_json::Value::String(text) => {
                if let Some(r) = Rel::from_name(&text) {
                    Ok(Arg::RelSel(r))
                } else {
                    crate::word::parse_word(&text)
                        .map(Arg::Word)
                        .map_err(serde::de::Error::custom)
                }
            }
            _ => Err(serde::de::Error::custom("argument must be number or string")),
        }
    }
}

/// Failure of a single rule application.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{rule}: {reason}")]
pub struct RuleError {
    pub rule: &'static str,
    pub reason: String,
}

fn err(rule: Rule, reason: impl Into<String>) -> RuleError {
    RuleError {
        rule: rule.canonical_name(),
        reason: reason.into(),
    }
}

/// Branch contexts of ordinary multi-premise rules must be nested: each
/// premise's context must be a prefix of the deepest one.
fn merge_branches(rule: Rule, premises: &[&Judgment]) -> Result<Vec<(usize, Rel)>, RuleError> {
    let deepest = premises
        .iter()
        .map(|j| &j.branches)
        .max_by_key(|b| b.len())
        .cloned()
        .unwrap_or_default();
    for j in premises {
        if deepest[..j.branches.len()] != j.branches[..] {
            return Err(err(rule, "incompatible branch contexts"));
        }
    }
    Ok(deepest)
}

fn ints(args: &[Arg]) -> Vec<i64> {
    args.iter()
        .filter_map(|a| match a {
            Arg::Int(n) => Some(*n),
            _ => None,
        })
        .collect()
}

fn rels(args: &[Arg]) -> Vec<Rel> {
    args.iter()
        .filter_map(|a| match a {
            Arg::RelSel(r) => Some(*r),
            _ => None,
        })
        .collect()
}

fn words(args: &[Arg]) -> Vec<&Word> {
    args.iter()
        .filter_map(|a| match a {
            Arg::Word(w) => Some(w),
            _ => None,
        })
        .collect()
}

fn check_arity(rule: Rule, premises: &[(usize, &Judgment)], args: &[Arg]) -> Result<(), RuleError> {
    let sig = rule.signature();
    if premises.len() != sig.premises {
        return Err(err(
            rule,
            format!("expected {} premises, got {}", sig.premises, premises.len()),
        ));
    }
    let got_scalars: Vec<ScalarKind> = args
        .iter()
        .filter_map(|a| match a {
            Arg::Int(_) => Some(ScalarKind::Int),
            Arg::RelSel(_) => Some(ScalarKind::RelSel),
            Arg::Word(_) => None,
        })
        .collect();
    if got_scalars != sig.scalars {
        return Err(err(rule, "scalar arguments do not match the rule signature"));
    }
    if words(args).len() != sig.words {
        return Err(err(
            rule,
            format!("expected {} word arguments", sig.words),
        ));
    }
    Ok(())
}

/// Apply a rule to resolved premises (each with its global step index) and
/// arguments, under the surgery context `ctx` (used by the relator rule).
pub fn apply_rule(
    ctx: &SurgeryContext,
    rule: Rule,
    premises: &[(usize, &Judgment)],
    args: &[Arg],
) -> Result<Judgment, RuleError> {
    check_arity(rule, premises, args)?;
    let plain: Vec<&Judgment> = premises.iter().map(|&(_, j)| j).collect();
    let branches = if rule == Rule::PtClose {
        vec![] // handled below
    } else {
        merge_branches(rule, &plain)?
    };
    let ints = ints(args);
    let rels = rels(args);
    let words = words(args);
    let body = match rule {
        Rule::Pow => {
            let n = ints[0];
            match &plain[0].body {
                Body::Sign(k, w) => {
                    let min = if k.strict() { 1 } else { 0 };
                    if n < min {
                        return Err(err(rule, format!("exponent {n} below minimum {min}")));
                    }
                    Body::Sign(*k, w.pow(n))
                }
                _ => return Err(err(rule, "premise must be a sign judgment")),
            }
        }
        Rule::Mul => match (&plain[0].body, &plain[1].body) {
            (Body::Sign(k1, u), Body::Sign(k2, v)) => {
                if k1.upward() != k2.upward() {
                    return Err(err(rule, "premises move points in opposite directions"));
                }
                let k = k1.with_strict(k1.strict() || k2.strict());
                Body::Sign(k, u.concat(v))
            }
            _ => return Err(err(rule, "premises must be sign judgments")),
        },
        Rule::Conj => match &plain[0].body {
            Body::Sign(k, u) => Body::Sign(*k, u.conjugate(words[0])),
            _ => return Err(err(rule, "premise must be a sign judgment")),
        },
        Rule::Inv => match &plain[0].body {
            Body::Sign(k, u) => Body::Sign(k.flip_direction(), u.inverse()),
            _ => return Err(err(rule, "premise must be a sign judgment")),
        },
        Rule::EqSubst => match (&plain[0].body, &plain[1].body) {
            (Body::Sign(k, u), Body::Eq(a, b)) => {
                if u != a {
                    return Err(err(rule, "equation left side does not match the subject"));
                }
                Body::Sign(*k, b.clone())
            }
            _ => return Err(err(rule, "premises must be a sign judgment and an equation")),
        },
        Rule::KpowSign => {
            // from x < kx: k^m x <= x when m <= 0 and x <= k^m x when m >= 0
            // (reversed for the mirrored premise x > kx); the `side` argument
            // picks which branch is claimed, so the arithmetic check on m is
            // the step that fails when the slope is below the bound
            let (m, side) = (ints[0], ints[1]);
            match &plain[0].body {
                Body::Sign(k, w) if k.strict() && *w == Word::gen(Gen::K) => {
                    let conclusion_up = match side {
                        0 => {
                            if m > 0 {
                                return Err(err(
                                    rule,
                                    format!("side condition m <= 0 violated: m = {m}"),
                                ));
                            }
                            !k.upward()
                        }
                        1 => {
                            if m < 0 {
                                return Err(err(
                                    rule,
                                    format!("side condition m >= 0 violated: m = {m}"),
                                ));
                            }
                            k.upward()
                        }
                        _ => return Err(err(rule, "side must be 0 (m <= 0) or 1 (m >= 0)")),
                    };
                    let kind = if conclusion_up {
                        SignKind::Nneg
                    } else {
                        SignKind::Npos
                    };
                    Body::Sign(kind, Word::gen_pow(Gen::K, m))
                }
                _ => return Err(err(rule, "premise must be the strict sign axiom for k")),
            }
        }
        Rule::Contra => match (&plain[0].body, &plain[1].body) {
            (Body::Sign(k1, u), Body::Sign(k2, v)) => {
                let opposed = k1.strict()
                    && k1.upward() != k2.upward()
                    && u == v;
                if !opposed {
                    return Err(err(rule, "judgments are not in strict opposition"));
                }
                Body::Bot
            }
            (Body::Sign(k, u), Body::Eq(a, b)) => {
                if !k.strict() || u != a || !b.is_identity() {
                    return Err(err(rule, "need a strict sign of w and EQ w = 1"));
                }
                Body::Bot
            }
            _ => return Err(err(rule, "premises do not form a contradiction")),
        },
        Rule::EqRefl => Body::Eq(words[0].clone(), words[0].clone()),
        Rule::EqSym => match &plain[0].body {
            Body::Eq(a, b) => Body::Eq(b.clone(), a.clone()),
            _ => return Err(err(rule, "premise must be an equation")),
        },
        Rule::EqTrans => match (&plain[0].body, &plain[1].body) {
            (Body::Eq(a, b), Body::Eq(b2, c)) => {
                if b != b2 {
                    return Err(err(rule, "middle terms do not match"));
                }
                Body::Eq(a.clone(), c.clone())
            }
            _ => return Err(err(rule, "premises must be equations")),
        },
        Rule::EqMul => match (&plain[0].body, &plain[1].body) {
            (Body::Eq(a, b), Body::Eq(c, d)) => Body::Eq(a.concat(c), b.concat(d)),
            _ => return Err(err(rule, "premises must be equations")),
        },
        Rule::EqPow => match &plain[0].body {
            Body::Eq(a, b) => Body::Eq(a.pow(ints[0]), b.pow(ints[0])),
            _ => return Err(err(rule, "premise must be an equation")),
        },
        Rule::EqRelator => {
            // premise: the relator acts as the identity; conclusion: a word
            // equals itself with a cyclic conjugate of the relator (or its
            // inverse) inserted at a letter position
            let expected = relator(ctx.s).expect("context is validated");
            match &plain[0].body {
                Body::Eq(r, one) if *r == expected && one.is_identity() => {
                    let (pos, shift, inv) = (ints[0], ints[1], ints[2]);
                    if pos < 0 || shift < 0 || !(0..=1).contains(&inv) {
                        return Err(err(rule, "bad position, shift or inverse flag"));
                    }
                    let rewritten = rewrite_with_relator(
                        words[0],
                        ctx.s,
                        pos as usize,
                        shift as usize,
                        inv == 1,
                    )
                    .map_err(|e| err(rule, e.to_string()))?;
                    Body::Eq(words[0].clone(), rewritten)
                }
                _ => return Err(err(rule, "premise must be the relator axiom")),
            }
        }
        Rule::PtHyp => {
            if !branches.is_empty() {
                return Err(err(rule, "hypotheses may only be introduced at top level"));
            }
            Body::Pt(words[0].clone(), words[1].clone(), rels[0])
        }
        Rule::PtApply => match &plain[0].body {
            Body::Pt(u, v, r) => Body::Pt(words[0].concat(u), words[0].concat(v), *r),
            _ => return Err(err(rule, "premise must be a point fact")),
        },
        Rule::PtSym => match &plain[0].body {
            Body::Pt(u, v, r) => Body::Pt(v.clone(), u.clone(), r.reverse()),
            _ => return Err(err(rule, "premise must be a point fact")),
        },
        Rule::PtTrans => match (&plain[0].body, &plain[1].body) {
            (Body::Pt(u, v, r1), Body::Pt(v2, w, r2)) => {
                if v != v2 {
                    return Err(err(rule, "middle terms do not match"));
                }
                let r = r1
                    .chain(*r2)
                    .ok_or_else(|| err(rule, "relations point in opposite directions"))?;
                Body::Pt(u.clone(), w.clone(), r)
            }
            _ => return Err(err(rule, "premises must be point facts")),
        },
        Rule::PtEqSubst => match (&plain[0].body, &plain[1].body) {
            (Body::Pt(u, v, r), Body::Eq(a, b)) => {
                let side = ints[0];
                match side {
                    0 if u == a => Body::Pt(b.clone(), v.clone(), *r),
                    1 if v == a => Body::Pt(u.clone(), b.clone(), *r),
                    0 | 1 => return Err(err(rule, "equation left side does not match")),
                    _ => return Err(err(rule, "side must be 0 or 1")),
                }
            }
            _ => return Err(err(rule, "premises must be a point fact and an equation")),
        },
        Rule::PtCases => Body::Cases(words[0].clone(), words[1].clone()),
        Rule::PtCase => match &plain[0].body {
            Body::Cases(u, v) => {
                let mut b = branches.clone();
                b.push((premises[0].0, rels[0]));
                return Ok(Judgment {
                    branches: b,
                    body: Body::Pt(u.clone(), v.clone(), rels[0]),
                });
            }
            _ => return Err(err(rule, "premise must be a case split")),
        },
        Rule::PtClose => {
            let (ci, cases) = premises[0];
            if !matches!(cases.body, Body::Cases(_, _)) {
                return Err(err(rule, "first premise must be a case split"));
            }
            let mut seen = Vec::new();
            for &(_, bot) in &premises[1..] {
                if !bot.is_bot() {
                    return Err(err(rule, "branch premises must be BOT"));
                }
                match bot.branches.split_last() {
                    Some((&(i, sel), prefix))
                        if i == ci && prefix == cases.branches.as_slice() =>
                    {
                        seen.push(sel);
                    }
                    _ => {
                        return Err(err(
                            rule,
                            format!("premise is not a BOT in a branch of step {ci}"),
                        ))
                    }
                }
            }
            seen.sort();
            if seen != [Rel::Lt, Rel::Eq, Rel::Gt] {
                return Err(err(rule, "the three branches lt, eq, gt must each close"));
            }
            return Ok(Judgment {
                branches: cases.branches.clone(),
                body: Body::Bot,
            });
        }
        Rule::PtContra => match &plain[0].body {
            Body::Pt(u, v, r) => {
                if u != v || *r == Rel::Eq {
                    return Err(err(rule, "need a strict relation of a word with itself"));
                }
                Body::Bot
            }
            _ => return Err(err(rule, "premise must be a point fact")),
        },
        Rule::PtGlobalFix => {
            // a dynamic realization has no global fixed point, so c x0 = x0
            // and l x0 = x0 together are absurd
            let fixes = |j: &Judgment, g: Gen| {
                matches!(&j.body, Body::Pt(u, v, Rel::Eq)
                    if *u == Word::gen(g) && v.is_identity())
            };
            if !(fixes(plain[0], Gen::C) && fixes(plain[1], Gen::L)) {
                return Err(err(rule, "need c x0 = x0 and l x0 = x0"));
            }
            Body::Bot
        }
    };
    Ok(Judgment { branches, body })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::parse_word;

    fn ctx() -> SurgeryContext {
        SurgeryContext::new(3, 9, 1).unwrap()
    }

    fn w(text: &str) -> Word {
        parse_word(text).unwrap()
    }

    fn pos(text: &str) -> Judgment {
        Judgment::global(Body::Sign(SignKind::Pos, w(text)))
    }

    fn eq(a: &str, b: &str) -> Judgment {
        Judgment::global(Body::Eq(w(a), w(b)))
    }

    fn apply(rule: Rule, premises: &[&Judgment], args: &[Arg]) -> Result<Judgment, RuleError> {
        let indexed: Vec<(usize, &Judgment)> =
            premises.iter().enumerate().map(|(i, j)| (i, *j)).collect();
        apply_rule(&ctx(), rule, &indexed, args)
    }

    #[test]
    fn pow_and_eqsubst() {
        let pk = pos("k");
        let p9 = apply(Rule::Pow, &[&pk], &[Arg::Int(9)]).unwrap();
        assert_eq!(p9, pos("k^9"));
        assert!(apply(Rule::Pow, &[&pk], &[Arg::Int(0)]).is_err());
        let e = eq("k^9", "c");
        let pc = apply(Rule::EqSubst, &[&p9, &e], &[]).unwrap();
        assert_eq!(pc, pos("c"));
    }

    #[test]
    fn mul_directions() {
        let a = pos("c");
        let b = Judgment::global(Body::Sign(SignKind::Nneg, w("l")));
        let ab = apply(Rule::Mul, &[&a, &b], &[]).unwrap();
        assert_eq!(ab, pos("c l"));
        let neg = Judgment::global(Body::Sign(SignKind::Neg, w("l")));
        assert!(apply(Rule::Mul, &[&a, &neg], &[]).is_err());
    }

    #[test]
    fn conj_and_inv() {
        let a = pos("c");
        let conj = apply(Rule::Conj, &[&a], &[Arg::Word(w("l^-1"))]).unwrap();
        assert_eq!(conj, pos("l^-1 c l"));
        let inv = apply(Rule::Inv, &[&a], &[]).unwrap();
        assert_eq!(inv, Judgment::global(Body::Sign(SignKind::Neg, w("c^-1"))));
    }

    #[test]
    fn kpow_sign_side_condition() {
        let pk = pos("k");
        let z = apply(Rule::KpowSign, &[&pk], &[Arg::Int(-3), Arg::Int(0)]).unwrap();
        assert_eq!(z, Judgment::global(Body::Sign(SignKind::Npos, w("k^-3"))));
        let z0 = apply(Rule::KpowSign, &[&pk], &[Arg::Int(0), Arg::Int(0)]).unwrap();
        assert_eq!(
            z0,
            Judgment::global(Body::Sign(SignKind::Npos, Word::identity()))
        );
        let z2 = apply(Rule::KpowSign, &[&pk], &[Arg::Int(2), Arg::Int(1)]).unwrap();
        assert_eq!(z2, Judgment::global(Body::Sign(SignKind::Nneg, w("k^2"))));
        // the claimed branch must match the sign of m
        let e = apply(Rule::KpowSign, &[&pk], &[Arg::Int(1), Arg::Int(0)]).unwrap_err();
        assert!(e.reason.contains("m = 1"), "{e}");
        // only the generator k qualifies
        assert!(apply(Rule::KpowSign, &[&pos("c")], &[Arg::Int(-1), Arg::Int(0)]).is_err());
    }

    #[test]
    fn contra_variants() {
        let a = pos("c l");
        let b = Judgment::global(Body::Sign(SignKind::Npos, w("c l")));
        assert!(apply(Rule::Contra, &[&a, &b], &[]).unwrap().is_bot());
        let e = eq("c l", "");
        assert!(apply(Rule::Contra, &[&a, &e], &[]).unwrap().is_bot());
        let e_bad = eq("c l", "c");
        assert!(apply(Rule::Contra, &[&a, &e_bad], &[]).is_err());
    }

    #[test]
    fn eq_layer() {
        let e1 = apply(Rule::EqRefl, &[], &[Arg::Word(w("c l"))]).unwrap();
        assert_eq!(e1, eq("c l", "c l"));
        let e2 = eq("c", "k^9");
        let e3 = apply(Rule::EqPow, &[&e2], &[Arg::Int(2)]).unwrap();
        assert_eq!(e3, eq("c^2", "k^18"));
        let e4 = apply(Rule::EqSym, &[&e2], &[]).unwrap();
        let e5 = apply(Rule::EqTrans, &[&e4, &e2], &[]).unwrap();
        assert_eq!(e5, eq("k^9", "k^9"));
        let e6 = apply(Rule::EqMul, &[&e2, &e2], &[]).unwrap();
        assert_eq!(e6, eq("c^2", "k^18"));
    }

    #[test]
    fn relator_rule() {
        let r = relator(3).unwrap();
        let ax = Judgment::global(Body::Eq(r.clone(), Word::identity()));
        let out = apply(
            Rule::EqRelator,
            &[&ax],
            &[
                Arg::Int(0),
                Arg::Int(0),
                Arg::Int(0),
                Arg::Word(Word::identity()),
            ],
        )
        .unwrap();
        assert_eq!(out, Judgment::global(Body::Eq(Word::identity(), r)));
        // a non-relator premise is rejected
        let fake = eq("c", "");
        assert!(apply(
            Rule::EqRelator,
            &[&fake],
            &[
                Arg::Int(0),
                Arg::Int(0),
                Arg::Int(0),
                Arg::Word(Word::identity()),
            ],
        )
        .is_err());
    }

    #[test]
    fn pointwise_branching() {
        let hyp = apply(
            Rule::PtHyp,
            &[],
            &[Arg::RelSel(Rel::Eq), Arg::Word(w("k")), Arg::Word(w("1"))],
        )
        .unwrap();
        assert_eq!(hyp.to_string(), "PT k = 1");
        let cases = apply(
            Rule::PtCases,
            &[],
            &[Arg::Word(w("l")), Arg::Word(w("1"))],
        )
        .unwrap();
        // open a branch at index 7
        let indexed = [(7usize, &cases)];
        let lt = apply_rule(&ctx(), Rule::PtCase, &indexed, &[Arg::RelSel(Rel::Lt)]).unwrap();
        assert_eq!(lt.branches, vec![(7, Rel::Lt)]);
        // strict self-relation closes the branch
        let self_lt = Judgment {
            branches: vec![(7, Rel::Lt)],
            body: Body::Pt(w("1"), w("1"), Rel::Lt),
        };
        let bot = apply(Rule::PtContra, &[&self_lt], &[]).unwrap();
        assert_eq!(bot.branches, vec![(7, Rel::Lt)]);
    }

    #[test]
    fn pt_close_needs_all_branches() {
        let cases = Judgment::global(Body::Cases(w("l"), w("1")));
        let bot_in = |r: Rel| Judgment {
            branches: vec![(0, r)],
            body: Body::Bot,
        };
        let (bl, be, bg) = (bot_in(Rel::Lt), bot_in(Rel::Eq), bot_in(Rel::Gt));
        let indexed = [(0usize, &cases), (1, &bl), (2, &be), (3, &bg)];
        let closed = apply_rule(&ctx(), Rule::PtClose, &indexed, &[]).unwrap();
        assert_eq!(closed, Judgment::global(Body::Bot));
        // a missing branch is rejected
        let wrong = [(0usize, &cases), (1, &bl), (2, &bl), (3, &bg)];
        assert!(apply_rule(&ctx(), Rule::PtClose, &wrong, &[]).is_err());
    }

    #[test]
    fn pt_chain_rules() {
        let a = Judgment::global(Body::Pt(w("1"), w("l"), Rel::Lt));
        let b = apply(Rule::PtApply, &[&a], &[Arg::Word(w("l"))]).unwrap();
        assert_eq!(b, Judgment::global(Body::Pt(w("l"), w("l^2"), Rel::Lt)));
        let c = apply(Rule::PtTrans, &[&a, &b], &[]).unwrap();
        assert_eq!(c, Judgment::global(Body::Pt(w("1"), w("l^2"), Rel::Lt)));
        let d = apply(Rule::PtSym, &[&c], &[]).unwrap();
        assert_eq!(d, Judgment::global(Body::Pt(w("l^2"), w("1"), Rel::Gt)));
        // opposite strict relations do not chain
        let e = Judgment::global(Body::Pt(w("l^2"), w("k"), Rel::Lt));
        assert!(apply(Rule::PtTrans, &[&d, &e], &[]).is_err());
    }

    #[test]
    fn globalfix() {
        let pc = Judgment::global(Body::Pt(w("c"), w("1"), Rel::Eq));
        let pl = Judgment::global(Body::Pt(w("l"), w("1"), Rel::Eq));
        assert!(apply(Rule::PtGlobalFix, &[&pc, &pl], &[]).unwrap().is_bot());
        assert!(apply(Rule::PtGlobalFix, &[&pl, &pc], &[]).is_err());
    }

    #[test]
    fn mirror_involution() {
        let j = Judgment {
            branches: vec![(3, Rel::Lt)],
            body: Body::Sign(SignKind::Pos, w("c l^-2")),
        };
        assert_eq!(j.mirror().mirror(), j);
        assert_eq!(
            j.mirror().body,
            Body::Sign(SignKind::Neg, w("c l^-2"))
        );
    }
}
