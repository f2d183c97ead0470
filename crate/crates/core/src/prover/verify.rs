//! An independent, minimal certificate checker.
//!
//! This module deliberately shares no word or rule code with the kernel: it
//! keeps words as flat letter vectors, re-derives every axiom and every
//! step's judgment from the serialized certificate alone, and compares the
//! result against what the certificate claims. It is the second opinion
//! required for certificate independence.

use std::collections::HashMap;

use crate::prover::kernel::Arg;
use crate::prover::script::{Certificate, JudgmentRepr};

/// A freely reduced word as single letters: (generator, +-1).
type Letters = Vec<(u8, i8)>;

fn reduce(letters: impl IntoIterator<Item = (u8, i8)>) -> Letters {
    let mut out: Letters = Vec::new();
    for (g, e) in letters {
        if let Some(&(g2, e2)) = out.last() {
            if g == g2 && e + e2 == 0 {
                out.pop();
                continue;
            }
        }
        out.push((g, e));
    }
    out
}

fn concat(a: &Letters, b: &Letters) -> Letters {
    reduce(a.iter().chain(b.iter()).copied())
}

fn invert(w: &Letters) -> Letters {
    w.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

fn power(w: &Letters, n: i64) -> Letters {
    let base = if n < 0 { invert(w) } else { w.clone() };
    let mut out = Letters::new();
    for _ in 0..n.unsigned_abs() {
        out = concat(&out, &base);
    }
    out
}

fn gen_power(g: u8, n: i64) -> Letters {
    let sign = if n < 0 { -1 } else { 1 };
    (0..n.unsigned_abs()).map(|_| (g, sign)).collect()
}

/// Parse the display form of a word: whitespace-separated `g` or `g^n`
/// tokens over {c, l, k}, or `1` for the identity.
fn parse_letters(text: &str) -> Result<Letters, String> {
    let mut out = Vec::new();
    for token in text.split_whitespace() {
        if token == "1" {
            continue;
        }
        let (head, exp) = match token.split_once('^') {
            Some((h, e)) => (h, e.parse::<i64>().map_err(|_| format!("bad exponent in '{token}'"))?),
            None => (token, 1),
        };
        let g = match head {
            "c" => b'c',
            "l" => b'l',
            "k" => b'k',
            _ => return Err(format!("bad generator in '{token}'")),
        };
        out.extend(gen_power(g, exp));
    }
    Ok(reduce(out))
}

type Branches = Vec<(usize, String)>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum VBody {
    Sign(String, Letters),
    Eq(Letters, Letters),
    Pt(Letters, Letters, String),
    Cases(Letters, Letters),
    Bot,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct VJudg {
    branches: Branches,
    body: VBody,
}

fn from_repr(repr: &JudgmentRepr) -> Result<VJudg, String> {
    let words: Vec<Letters> = repr
        .words
        .iter()
        .map(|w| parse_letters(w))
        .collect::<Result<_, _>>()?;
    let body = match repr.kind.as_str() {
        "pos" | "nneg" | "neg" | "npos" => {
            if words.len() != 1 {
                return Err("sign judgment needs one word".into());
            }
            VBody::Sign(repr.kind.clone(), words[0].clone())
        }
        "eq" | "pt" | "cases" => {
            if words.len() != 2 {
                return Err(format!("{} judgment needs two words", repr.kind));
            }
            match repr.kind.as_str() {
                "eq" => VBody::Eq(words[0].clone(), words[1].clone()),
                "pt" => VBody::Pt(
                    words[0].clone(),
                    words[1].clone(),
                    repr.rel.clone().ok_or("pt judgment needs a relation")?,
                ),
                _ => VBody::Cases(words[0].clone(), words[1].clone()),
            }
        }
        "bot" => VBody::Bot,
        other => return Err(format!("unknown judgment kind '{other}'")),
    };
    Ok(VJudg {
        branches: repr.branches.clone(),
        body,
    })
}

fn strict(kind: &str) -> bool {
    kind == "pos" || kind == "neg"
}

fn upward(kind: &str) -> bool {
    kind == "pos" || kind == "nneg"
}

fn sign_kind(up: bool, strict: bool) -> String {
    match (up, strict) {
        (true, true) => "pos",
        (true, false) => "nneg",
        (false, true) => "neg",
        (false, false) => "npos",
    }
    .to_string()
}

fn relator_letters(s: i64) -> Letters {
    let mut w = Letters::new();
    for part in [
        gen_power(b'c', 1),
        gen_power(b'l', 1),
        gen_power(b'c', 1),
        gen_power(b'l', -1),
        gen_power(b'c', -1),
        gen_power(b'l', -s),
        gen_power(b'c', -1),
        gen_power(b'l', -1),
        gen_power(b'c', 1),
        gen_power(b'l', 1),
        gen_power(b'c', 1),
        gen_power(b'l', s - 1),
    ] {
        w.extend(part);
    }
    reduce(w)
}

fn longitude_letters(s: i64) -> Letters {
    let mut w = Letters::new();
    for part in [
        gen_power(b'c', -(2 * s - 2)),
        gen_power(b'l', 1),
        gen_power(b'c', 1),
        gen_power(b'l', s),
        gen_power(b'c', 1),
        gen_power(b'l', s),
        gen_power(b'c', 1),
        gen_power(b'l', 1),
        gen_power(b'c', -(2 * s + 9)),
    ] {
        w.extend(part);
    }
    reduce(w)
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a.abs() } else { gcd(b, a % b) }
}

fn arg_ints(args: &[Arg]) -> Vec<i64> {
    args.iter()
        .filter_map(|a| match a {
            Arg::Int(n) => Some(*n),
            _ => None,
        })
        .collect()
}

fn arg_rels(args: &[Arg]) -> Vec<String> {
    args.iter()
        .filter_map(|a| match a {
            Arg::RelSel(r) => Some(r.name().to_string()),
            _ => None,
        })
        .collect()
}

fn arg_words(args: &[Arg]) -> Result<Vec<Letters>, String> {
    args.iter()
        .filter_map(|a| match a {
            Arg::Word(w) => Some(parse_letters(&w.to_string())),
            _ => None,
        })
        .collect()
}

fn chain_rel(a: &str, b: &str) -> Option<String> {
    match (a, b) {
        ("eq", r) | (r, "eq") => Some(r.to_string()),
        (x, y) if x == y => Some(x.to_string()),
        _ => None,
    }
}

fn reverse_rel(r: &str) -> String {
    match r {
        "lt" => "gt",
        "gt" => "lt",
        _ => "eq",
    }
    .to_string()
}

/// Deepest-prefix merge of branch contexts; fails when not nested.
fn merge(premises: &[&VJudg]) -> Result<Branches, String> {
    let mut deepest: Branches = Vec::new();
    for p in premises {
        if p.branches.len() > deepest.len() {
            deepest = p.branches.clone();
        }
    }
    for p in premises {
        if deepest[..p.branches.len()] != p.branches[..] {
            return Err("incompatible branch contexts".into());
        }
    }
    Ok(deepest)
}

/// Re-derive the judgment of one step from its premises and arguments.
fn recompute(
    rule: &str,
    premises: &[(usize, &VJudg)],
    args: &[Arg],
    s: i64,
) -> Result<VJudg, String> {
    let plain: Vec<&VJudg> = premises.iter().map(|&(_, j)| j).collect();
    let ints = arg_ints(args);
    let rels = arg_rels(args);
    let words = arg_words(args)?;
    let at = |i: usize| -> Result<&VJudg, String> {
        plain.get(i).copied().ok_or_else(|| "missing premise".to_string())
    };
    let branches = if rule == "pt_close" {
        Vec::new()
    } else {
        merge(&plain)?
    };
    let body = match rule {
        "pow" => match &at(0)?.body {
            VBody::Sign(kind, w) => {
                let n = *ints.first().ok_or("pow needs an exponent")?;
                let min = if strict(kind) { 1 } else { 0 };
                if n < min {
                    return Err("exponent too small".into());
                }
                VBody::Sign(kind.clone(), power(w, n))
            }
            _ => return Err("pow premise must be a sign judgment".into()),
        },
        "mul" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Sign(k1, u), VBody::Sign(k2, v)) => {
                if upward(k1) != upward(k2) {
                    return Err("mul premises have opposite directions".into());
                }
                VBody::Sign(sign_kind(upward(k1), strict(k1) || strict(k2)), concat(u, v))
            }
            _ => return Err("mul premises must be sign judgments".into()),
        },
        "conj" => match &at(0)?.body {
            VBody::Sign(kind, u) => {
                let w = words.first().ok_or("conj needs a word")?;
                VBody::Sign(kind.clone(), concat(&concat(w, u), &invert(w)))
            }
            _ => return Err("conj premise must be a sign judgment".into()),
        },
        "inv" => match &at(0)?.body {
            VBody::Sign(kind, u) => VBody::Sign(sign_kind(!upward(kind), strict(kind)), invert(u)),
            _ => return Err("inv premise must be a sign judgment".into()),
        },
        "eqsubst" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Sign(kind, u), VBody::Eq(a, b)) => {
                if u != a {
                    return Err("eqsubst subject mismatch".into());
                }
                VBody::Sign(kind.clone(), b.clone())
            }
            _ => return Err("eqsubst premises must be sign + eq".into()),
        },
        "kpow_sign" => match &at(0)?.body {
            VBody::Sign(kind, w) if strict(kind) && *w == vec![(b'k', 1)] => {
                let m = *ints.first().ok_or("kpow_sign needs m")?;
                let side = *ints.get(1).ok_or("kpow_sign needs a side")?;
                let conclusion_up = match side {
                    0 if m <= 0 => !upward(kind),
                    1 if m >= 0 => upward(kind),
                    0 | 1 => return Err("kpow_sign side condition on m violated".into()),
                    _ => return Err("kpow_sign side must be 0 or 1".into()),
                };
                VBody::Sign(sign_kind(conclusion_up, false), gen_power(b'k', m))
            }
            _ => return Err("kpow_sign premise must be a strict sign of k".into()),
        },
        "contra" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Sign(k1, u), VBody::Sign(k2, v)) => {
                if !(strict(k1) && upward(k1) != upward(k2) && u == v) {
                    return Err("contra premises are not opposed".into());
                }
                VBody::Bot
            }
            (VBody::Sign(k, u), VBody::Eq(a, b)) => {
                if !(strict(k) && u == a && b.is_empty()) {
                    return Err("contra needs strict sign plus EQ w = 1".into());
                }
                VBody::Bot
            }
            _ => return Err("contra premises invalid".into()),
        },
        "eq_refl" => {
            let w = words.first().ok_or("eq_refl needs a word")?;
            VBody::Eq(w.clone(), w.clone())
        }
        "eq_sym" => match &at(0)?.body {
            VBody::Eq(a, b) => VBody::Eq(b.clone(), a.clone()),
            _ => return Err("eq_sym premise must be an equation".into()),
        },
        "eq_trans" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Eq(a, b), VBody::Eq(b2, c)) => {
                if b != b2 {
                    return Err("eq_trans middle mismatch".into());
                }
                VBody::Eq(a.clone(), c.clone())
            }
            _ => return Err("eq_trans premises must be equations".into()),
        },
        "eq_mul" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Eq(a, b), VBody::Eq(c, d)) => VBody::Eq(concat(a, c), concat(b, d)),
            _ => return Err("eq_mul premises must be equations".into()),
        },
        "eq_pow" => match &at(0)?.body {
            VBody::Eq(a, b) => {
                let n = *ints.first().ok_or("eq_pow needs an exponent")?;
                VBody::Eq(power(a, n), power(b, n))
            }
            _ => return Err("eq_pow premise must be an equation".into()),
        },
        "eq_relator" => match &at(0)?.body {
            VBody::Eq(r, one) if *r == relator_letters(s) && one.is_empty() => {
                if ints.len() != 3 {
                    return Err("eq_relator needs position, shift and inverse flag".into());
                }
                let (pos, shift, inv) = (ints[0], ints[1], ints[2]);
                let w = words.first().ok_or("eq_relator needs a word")?;
                let mut rel = relator_letters(s);
                let len = rel.len() as i64;
                if !(0..len).contains(&shift) || pos < 0 || pos as usize > w.len() {
                    return Err("eq_relator position out of range".into());
                }
                rel.rotate_left(shift as usize);
                if inv == 1 {
                    rel = invert(&rel);
                } else if inv != 0 {
                    return Err("eq_relator inverse flag must be 0 or 1".into());
                }
                let mut spliced = w[..pos as usize].to_vec();
                spliced.extend(rel);
                spliced.extend(w[pos as usize..].iter().copied());
                VBody::Eq(w.clone(), reduce(spliced))
            }
            _ => return Err("eq_relator premise must be the relator axiom".into()),
        },
        "pt_hyp" => {
            if !branches.is_empty() {
                return Err("pt_hyp only at top level".into());
            }
            if words.len() != 2 {
                return Err("pt_hyp needs two words".into());
            }
            VBody::Pt(
                words[0].clone(),
                words[1].clone(),
                rels.first().ok_or("pt_hyp needs a relation")?.clone(),
            )
        }
        "pt_apply" => match &at(0)?.body {
            VBody::Pt(u, v, r) => {
                let w = words.first().ok_or("pt_apply needs a word")?;
                VBody::Pt(concat(w, u), concat(w, v), r.clone())
            }
            _ => return Err("pt_apply premise must be a point fact".into()),
        },
        "pt_sym" => match &at(0)?.body {
            VBody::Pt(u, v, r) => VBody::Pt(v.clone(), u.clone(), reverse_rel(r)),
            _ => return Err("pt_sym premise must be a point fact".into()),
        },
        "pt_trans" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Pt(u, v, r1), VBody::Pt(v2, w, r2)) => {
                if v != v2 {
                    return Err("pt_trans middle mismatch".into());
                }
                VBody::Pt(
                    u.clone(),
                    w.clone(),
                    chain_rel(r1, r2).ok_or("pt_trans relations clash")?,
                )
            }
            _ => return Err("pt_trans premises must be point facts".into()),
        },
        "pt_eqsubst" => match (&at(0)?.body, &at(1)?.body) {
            (VBody::Pt(u, v, r), VBody::Eq(a, b)) => match ints.first() {
                Some(0) if u == a => VBody::Pt(b.clone(), v.clone(), r.clone()),
                Some(1) if v == a => VBody::Pt(u.clone(), b.clone(), r.clone()),
                _ => return Err("pt_eqsubst side mismatch".into()),
            },
            _ => return Err("pt_eqsubst premises must be pt + eq".into()),
        },
        "pt_cases" => {
            if words.len() != 2 {
                return Err("pt_cases needs two words".into());
            }
            VBody::Cases(words[0].clone(), words[1].clone())
        }
        "pt_case" => match &at(0)?.body {
            VBody::Cases(u, v) => {
                let sel = rels.first().ok_or("pt_case needs a selector")?.clone();
                let mut b = branches.clone();
                b.push((premises[0].0, sel.clone()));
                return Ok(VJudg {
                    branches: b,
                    body: VBody::Pt(u.clone(), v.clone(), sel),
                });
            }
            _ => return Err("pt_case premise must be a case split".into()),
        },
        "pt_close" => {
            let &(ci, cases) = premises.first().ok_or("pt_close needs premises")?;
            if !matches!(cases.body, VBody::Cases(_, _)) {
                return Err("pt_close first premise must be a case split".into());
            }
            let mut sels = Vec::new();
            for &(_, bot) in &premises[1..] {
                if bot.body != VBody::Bot {
                    return Err("pt_close branch premises must be BOT".into());
                }
                match bot.branches.split_last() {
                    Some(((i, sel), prefix)) if *i == ci && prefix == &cases.branches[..] => {
                        sels.push(sel.clone());
                    }
                    _ => return Err("pt_close premise in wrong branch".into()),
                }
            }
            sels.sort();
            if sels != ["eq", "gt", "lt"] {
                return Err("pt_close needs all three branches".into());
            }
            return Ok(VJudg {
                branches: cases.branches.clone(),
                body: VBody::Bot,
            });
        }
        "pt_contra" => match &at(0)?.body {
            VBody::Pt(u, v, r) => {
                if u != v || r == "eq" {
                    return Err("pt_contra needs a strict self-relation".into());
                }
                VBody::Bot
            }
            _ => return Err("pt_contra premise must be a point fact".into()),
        },
        "pt_globalfix" => {
            let is_fix = |j: &VJudg, g: u8| {
                matches!(&j.body, VBody::Pt(u, v, r)
                    if *u == vec![(g, 1)] && v.is_empty() && r == "eq")
            };
            if !(is_fix(at(0)?, b'c') && is_fix(at(1)?, b'l')) {
                return Err("pt_globalfix needs c x0 = x0 and l x0 = x0".into());
            }
            VBody::Bot
        }
        other => return Err(format!("unknown rule '{other}'")),
    };
    Ok(VJudg { branches, body })
}

fn axiom_judgment(name: &str, s: i64, p: i64, q: i64, negated: bool) -> Result<VJudg, String> {
    let body = match name {
        "axK" => VBody::Sign(
            if negated { "neg" } else { "pos" }.to_string(),
            vec![(b'k', 1)],
        ),
        "axC" => VBody::Eq(vec![(b'c', 1)], gen_power(b'k', q)),
        "axL" => VBody::Eq(longitude_letters(s), gen_power(b'k', -p)),
        "axR" => VBody::Eq(relator_letters(s), Vec::new()),
        other => return Err(format!("unknown axiom '{other}'")),
    };
    Ok(VJudg {
        branches: Vec::new(),
        body,
    })
}

/// Check a certificate from scratch; `Ok` means every step re-derives to
/// exactly the judgment it claims and the overall result field is honest.
pub fn verify_certificate(cert: &Certificate) -> Result<(), String> {
    let (s, p, q) = (cert.context.s, cert.context.p, cert.context.q);
    if s < 3 || p < 1 || q < 1 || gcd(p, q) != 1 {
        return Err(format!("invalid context ({s}, {p}, {q})"));
    }
    let mut by_id: HashMap<&str, (usize, VJudg)> = HashMap::new();
    let mut has_root_bot = false;
    for (index, step) in cert.steps.iter().enumerate() {
        if !step.verified {
            return Err(format!("step '{}' is marked unverified", step.id));
        }
        if by_id.contains_key(step.id.as_str()) {
            return Err(format!("duplicate step id '{}'", step.id));
        }
        let claimed = from_repr(&step.judgment)
            .map_err(|e| format!("step '{}': bad judgment: {e}", step.id))?;
        let derived = if step.rule == "axiom" {
            if !step.premises.is_empty() || !step.args.is_empty() {
                return Err(format!("axiom step '{}' must have no inputs", step.id));
            }
            axiom_judgment(&step.id, s, p, q, cert.negated)?
        } else {
            let premises: Vec<(usize, &VJudg)> = step
                .premises
                .iter()
                .map(|name| {
                    by_id
                        .get(name.as_str())
                        .map(|(i, j)| (*i, j))
                        .ok_or_else(|| format!("step '{}': unknown premise '{name}'", step.id))
                })
                .collect::<Result<_, _>>()?;
            recompute(&step.rule, &premises, &step.args, s)
                .map_err(|e| format!("step '{}': {e}", step.id))?
        };
        if derived != claimed {
            return Err(format!(
                "step '{}': claimed judgment does not match the re-derived one",
                step.id
            ));
        }
        if derived.body == VBody::Bot && derived.branches.is_empty() {
            has_root_bot = true;
        }
        by_id.insert(&step.id, (index, derived));
    }
    match cert.result.as_str() {
        "BOT" => {
            if has_root_bot {
                Ok(())
            } else {
                Err("result claims BOT but no unconditional BOT was derived".into())
            }
        }
        "incomplete" => Ok(()),
        other => Err(format!("unknown result '{other}'")),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::SurgeryContext;
    use crate::prover::builtin::{builtin_script_fixedpoint, builtin_script_main};

    #[test]
    fn word_helpers() {
        let w = parse_letters("c^2 l^-1").unwrap();
        assert_eq!(w, vec![(b'c', 1), (b'c', 1), (b'l', -1)]);
        assert_eq!(concat(&w, &invert(&w)), Vec::new());
        assert_eq!(parse_letters("1").unwrap(), Vec::new());
        assert_eq!(power(&parse_letters("c").unwrap(), -2), gen_power(b'c', -2));
        assert!(parse_letters("x").is_err());
    }

    #[test]
    fn accepts_builtin_certificates() {
        let cert = builtin_script_main(&SurgeryContext::new(3, 9, 1).unwrap()).unwrap();
        verify_certificate(&cert).unwrap();
        let cert = builtin_script_fixedpoint(3).unwrap();
        verify_certificate(&cert).unwrap();
    }

    #[test]
    fn accepts_json_roundtrip() {
        let cert = builtin_script_main(&SurgeryContext::new(4, 23, 2).unwrap()).unwrap();
        let json = cert.to_json();
        let back: Certificate = serde_json::from_str(&json).unwrap();
        verify_certificate(&back).unwrap();
    }

    #[test]
    fn rejects_tampering() {
        let good = builtin_script_main(&SurgeryContext::new(3, 9, 1).unwrap()).unwrap();

        // flip the claimed result on an incomplete certificate
        let mut cert = good.clone();
        cert.steps.pop();
        assert!(verify_certificate(&cert).is_err());

        // corrupt a judgment
        let mut cert = good.clone();
        cert.steps[5].judgment.words[0] = "c l".to_string();
        assert!(verify_certificate(&cert).is_err());

        // corrupt a premise reference
        let mut cert = good.clone();
        let i = cert.steps.iter().position(|s| s.rule == "mul").unwrap();
        cert.steps[i].premises[0] = cert.steps[0].id.clone();
        assert!(verify_certificate(&cert).is_err());

        // corrupt a rule name
        let mut cert = good;
        let i = cert.steps.iter().position(|s| s.rule == "kpow_sign").unwrap();
        cert.steps[i].rule = "pow".to_string();
        assert!(verify_certificate(&cert).is_err());
    }
}
