//! The shipped proof scripts: the non-left-orderability derivation for
//! slope p/q >= 2s+3 and the no-fixed-point lemma for k, both generated for
//! a concrete context (the calculus has no induction rule, so the two
//! inductions on t are unrolled to s explicit steps).

use crate::error::GroupError;
use crate::group::SurgeryContext;
use crate::prover::kernel::{Arg, Rel, Rule};
use crate::prover::script::{
    check_script, Certificate, ProofScript, ProverError, ScriptStep,
};
use crate::word::{Gen, Word};

struct Builder {
    steps: Vec<ScriptStep>,
}

impl Builder {
    fn new() -> Self {
        Builder { steps: Vec::new() }
    }

    fn step(&mut self, id: impl Into<String>, rule: Rule, premises: &[&str], args: Vec<Arg>) -> String {
        let id = id.into();
        self.steps.push(ScriptStep {
            id: id.clone(),
            rule,
            premises: premises.iter().map(|p| p.to_string()).collect(),
            args,
            line: self.steps.len() + 1,
        });
        id
    }
}

fn wi(g: Gen, e: i64) -> Arg {
    Arg::Word(Word::gen_pow(g, e))
}

fn wr(runs: &[(Gen, i64)]) -> Arg {
    Arg::Word(Word::from_runs(runs.to_vec()))
}

/// The main derivation: replay of the proof that the surgered group with
/// slope p/q >= 2s+3 admits no positive cone containing k.
///
/// Outline: from POS k derive POS c; one relator insertion gives the key
/// fact J1 = POS((clc)^-1 (lcl)); two unrolled inductions extend it to
/// POS((c^s lc)^-1 (lcl^s)) and POS((clc^s)^-1 (l^s cl)); a conjugation
/// chain plus the side condition m = -p + (2s+3)q <= 0 gives
/// J2 = POS(l^-1 c); finally J1 and J2 combine to POS(1), absurd.
pub fn builtin_main_script(ctx: &SurgeryContext) -> ProofScript {
    use Gen::{C, L};
    let (s, p, q) = (ctx.s, ctx.p, ctx.q);
    let m = -p + (2 * s + 3) * q;
    let mut b = Builder::new();

    // POS c
    b.step("pkq", Rule::Pow, &["axK"], vec![Arg::Int(q)]);
    b.step("eqcq", Rule::EqSym, &["axC"], vec![]);
    b.step("posc", Rule::EqSubst, &["pkq", "eqcq"], vec![]);

    // J1 = POS((clc)^-1 (lcl)) by one relator insertion, conjugating POS c
    // by w0^-1 with w0 = l c l^s c l
    b.step(
        "cnj0",
        Rule::Conj,
        &["posc"],
        vec![wr(&[(L, -1), (C, -1), (L, -s), (C, -1), (L, -1)])],
    );
    b.step(
        "rins",
        Rule::EqRelator,
        &["axR"],
        vec![
            Arg::Int(3),
            Arg::Int(0),
            Arg::Int(0),
            wr(&[(C, -1), (L, -1), (C, -1), (L, 1), (C, 1), (L, 1)]),
        ],
    );
    b.step("rsym", Rule::EqSym, &["rins"], vec![]);
    b.step("j1", Rule::EqSubst, &["cnj0", "rsym"], vec![]);

    // unrolled inductions: a{t} = POS((c^t lc)^-1 (lcl^t)),
    // b{t} = POS((clc^t)^-1 (l^t cl)), with a1 = b1 = j1
    let mut a_prev = "j1".to_string();
    for t in 1..s {
        let ac = b.step(format!("ac{t}"), Rule::Conj, &["j1"], vec![wi(L, -t)]);
        a_prev = b.step(format!("a{}", t + 1), Rule::Mul, &[&a_prev, &ac], vec![]);
    }
    let mut b_prev = "j1".to_string();
    for t in 1..s {
        let bc = b.step(format!("bc{t}"), Rule::Conj, &["j1"], vec![wi(C, -t)]);
        b_prev = b.step(format!("b{}", t + 1), Rule::Mul, &[&bc, &b_prev], vec![]);
    }

    // the conjugation chain of Lemma "l x < c x":
    // l x < ... < (c^-s l c l^s c l^s c l c^-(s+3)) x
    b.step("s1", Rule::Conj, &["posc"], vec![wr(&[(C, 2), (L, -1)])]);
    b.step("s2", Rule::Conj, &["j1"], vec![wi(C, 3)]);
    b.step("s3", Rule::Conj, &[&b_prev], vec![wi(C, s + 3)]);
    b.step(
        "s4",
        Rule::Conj,
        &[&a_prev],
        vec![wr(&[(C, 3), (L, -1), (C, -2)])],
    );
    b.step("m1", Rule::Mul, &["s1", "s2"], vec![]);
    b.step("m2", Rule::Mul, &["m1", "s4"], vec![]);
    b.step("m3", Rule::Mul, &["m2", "s3"], vec![]);

    // identify the chain's endpoint with k^m c through the surgery axioms
    b.step("e1", Rule::EqPow, &["axC"], vec![Arg::Int(s - 2)]);
    b.step("e2", Rule::EqPow, &["axC"], vec![Arg::Int(s + 6)]);
    b.step("e3", Rule::EqMul, &["e1", "axL"], vec![]);
    b.step("e4", Rule::EqMul, &["e3", "e2"], vec![]);
    b.step("e5", Rule::EqRefl, &[], vec![wi(Gen::K, m)]);
    b.step("e6", Rule::EqMul, &["e5", "eqcq"], vec![]);
    b.step("e7", Rule::EqTrans, &["e4", "e6"], vec![]);
    b.step("e8", Rule::EqRefl, &[], vec![wi(L, -1)]);
    b.step("e9", Rule::EqMul, &["e8", "e7"], vec![]);
    b.step("pj", Rule::EqSubst, &["m3", "e9"], vec![]);

    // the unique arithmetic side condition: m <= 0
    b.step("z1", Rule::KpowSign, &["axK"], vec![Arg::Int(m), Arg::Int(0)]);
    b.step("z2", Rule::Inv, &["z1"], vec![]);
    b.step("z3", Rule::Conj, &["z2"], vec![wi(C, -1)]);
    b.step("j2", Rule::Mul, &["pj", "z3"], vec![]);

    // closing chain: cl x < ... < cl x
    b.step("g1", Rule::Conj, &["j1"], vec![wi(C, 1)]);
    b.step("g2", Rule::Conj, &["j2"], vec![wi(C, 1)]);
    b.step("g3", Rule::Conj, &["j2"], vec![wr(&[(L, -1), (C, -1)])]);
    b.step("h1", Rule::Mul, &["g1", "g2"], vec![]);
    b.step("h2", Rule::Mul, &["h1", "j1"], vec![]);
    b.step("h3", Rule::Mul, &["h2", "g3"], vec![]);
    b.step("ef", Rule::EqRefl, &[], vec![Arg::Word(Word::identity())]);
    b.step("bot", Rule::Contra, &["h3", "ef"], vec![]);

    ProofScript {
        context: *ctx,
        negated: false,
        axioms: AXIOMS_MAIN.iter().map(|a| a.to_string()).collect(),
        steps: b.steps,
        qed: Some("bot".to_string()),
    }
}

const AXIOMS_MAIN: [&str; 4] = ["axK", "axC", "axL", "axR"];

/// Generate and check the main script; the result is a BOT certificate
/// exactly when p >= (2s+3) q, and otherwise the error names the
/// R-KPOW-SIGN step.
pub fn builtin_script_main(ctx: &SurgeryContext) -> Result<Certificate, ProverError> {
    check_script(&builtin_main_script(ctx))
}

/// The no-fixed-point lemma for k, as a pointwise certificate: assume
/// k x0 = x0, derive c x0 = x0, split on l x0 vs x0; the middle branch is a
/// global fixed point and the outer branches replay the displayed chain
/// through the longitude in both directions.
///
/// The context is fixed to the boundary slope (p, q) = (2s+3, 1); the lemma
/// itself does not depend on the slope.
pub fn builtin_fixedpoint_script(s: i64) -> Result<ProofScript, GroupError> {
    use Gen::{C, K, L};
    let ctx = SurgeryContext::new(s, 2 * s + 3, 1)?;
    let p = ctx.p;
    let mut b = Builder::new();

    // the hypothesis being refuted, and c x0 = x0 (q = 1, so c = k)
    b.step(
        "hyp",
        Rule::PtHyp,
        &[],
        vec![Arg::RelSel(Rel::Eq), wi(K, 1), Arg::Word(Word::identity())],
    );
    b.step("ekc", Rule::EqSym, &["axC"], vec![]);
    b.step("pc", Rule::PtEqSubst, &["hyp", "ekc"], vec![Arg::Int(0)]);
    b.step("pcs", Rule::PtSym, &["pc"], vec![]);

    // k^-p x0 = x0, by p unrolled steps
    b.step("n1", Rule::PtApply, &["hyp"], vec![wi(K, -1)]);
    b.step("n2", Rule::PtSym, &["n1"], vec![]);
    let mut cur = "n2".to_string();
    for i in 2..=p {
        let t = b.step(format!("nt{i}"), Rule::PtApply, &["n2"], vec![wi(K, -(i - 1))]);
        cur = b.step(format!("nu{i}"), Rule::PtTrans, &[&t, &cur], vec![]);
    }
    let kp = cur;

    // c^-n x0 = x0 for every n up to 2s+9; keep the two powers the
    // longitude needs
    b.step("cn1", Rule::PtApply, &["pc"], vec![wi(C, -1)]);
    b.step("cn2", Rule::PtSym, &["cn1"], vec![]);
    let mut cur = "cn2".to_string();
    let mut c_low = String::new();
    for i in 2..=(2 * s + 9) {
        let t = b.step(format!("ct{i}"), Rule::PtApply, &["cn2"], vec![wi(C, -(i - 1))]);
        cur = b.step(format!("cu{i}"), Rule::PtTrans, &[&t, &cur], vec![]);
        if i == 2 * s - 2 {
            c_low = cur.clone();
        }
    }
    let c_high = cur;
    let start = b.step("start", Rule::PtSym, &[&c_low], vec![]);
    let tail = b.step("tail", Rule::PtSym, &[&c_high], vec![]);

    // trichotomy on l x0 vs x0
    b.step(
        "cs",
        Rule::PtCases,
        &[],
        vec![wi(L, 1), Arg::Word(Word::identity())],
    );

    let mut closed = Vec::new();
    for sel in [Rel::Lt, Rel::Gt] {
        let pre = sel.name();
        let case = b.step(format!("{pre}_case"), Rule::PtCase, &["cs"], vec![Arg::RelSel(sel)]);
        let base = b.step(format!("{pre}_base"), Rule::PtSym, &[&case], vec![]);

        // l^j x0 ladder
        let mut cur = base.clone();
        for j in 2..=s {
            let t = b.step(
                format!("{pre}_lt{j}"),
                Rule::PtApply,
                &[&base],
                vec![wi(L, j - 1)],
            );
            cur = b.step(format!("{pre}_lu{j}"), Rule::PtTrans, &[&cur, &t], vec![]);
        }
        let ladder = cur;

        // walk the longitude letter blocks, extending
        // acc = PT(1, <prefix>, rel) one block at a time
        let mut acc = start.clone();
        let blocks: Vec<&str> = vec![&base, "pcs", &ladder, "pcs", &ladder, "pcs", &base, &tail];
        let mut prefix = Word::gen_pow(C, -(2 * s - 2));
        for (i, fact) in blocks.iter().enumerate() {
            let ap = b.step(
                format!("{pre}_ap{i}"),
                Rule::PtApply,
                &[fact],
                vec![Arg::Word(prefix.clone())],
            );
            acc = b.step(format!("{pre}_tr{i}"), Rule::PtTrans, &[&acc, &ap], vec![]);
            let block = match i {
                0 | 6 => Word::gen(L),
                1 | 3 | 5 => Word::gen(C),
                2 | 4 => Word::gen_pow(L, s),
                _ => Word::gen_pow(C, -(2 * s + 9)),
            };
            prefix = prefix.concat(&block);
        }

        // the walked word is the longitude; trade it for k^-p and close
        let sub = b.step(
            format!("{pre}_sub"),
            Rule::PtEqSubst,
            &[&acc, "axL"],
            vec![Arg::Int(1)],
        );
        let fin = b.step(format!("{pre}_fin"), Rule::PtTrans, &[&sub, &kp], vec![]);
        closed.push(b.step(format!("{pre}_bot"), Rule::PtContra, &[&fin], vec![]));
    }

    let eq_case = b.step("eq_case", Rule::PtCase, &["cs"], vec![Arg::RelSel(Rel::Eq)]);
    let eq_bot = b.step("eq_bot", Rule::PtGlobalFix, &["pc", &eq_case], vec![]);

    b.step(
        "done",
        Rule::PtClose,
        &["cs", &closed[0], &eq_bot, &closed[1]],
        vec![],
    );

    Ok(ProofScript {
        context: ctx,
        negated: false,
        axioms: vec!["axC".to_string(), "axL".to_string()],
        steps: b.steps,
        qed: Some("done".to_string()),
    })
}

/// Generate and check the fixed-point script.
pub fn builtin_script_fixedpoint(s: i64) -> Result<Certificate, ProverError> {
    let script = builtin_fixedpoint_script(s).map_err(ProverError::Context)?;
    check_script(&script)
}

/// Order-reversal of a script: flips the polarity of the k axiom and every
/// relation selector. An involution that maps valid certificates to valid
/// certificates.
pub fn mirror(script: &ProofScript) -> ProofScript {
    let steps = script
        .steps
        .iter()
        .map(|step| ScriptStep {
            args: step
                .args
                .iter()
                .map(|a| match a {
                    Arg::RelSel(r) => Arg::RelSel(r.mirror()),
                    other => other.clone(),
                })
                .collect(),
            ..step.clone()
        })
        .collect();
    ProofScript {
        negated: !script.negated,
        steps,
        ..script.clone()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::script::parse_script;
    use crate::prover::script::print_script;

    #[test]
    fn main_script_boundary_cases() {
        let cert = builtin_script_main(&SurgeryContext::new(3, 9, 1).unwrap()).unwrap();
        assert!(cert.is_bot());
        assert!(cert.steps.iter().all(|s| s.verified));

        let cert = builtin_script_main(&SurgeryContext::new(4, 23, 2).unwrap()).unwrap();
        assert!(cert.is_bot());
    }

    #[test]
    fn main_script_fails_below_boundary() {
        let err = builtin_script_main(&SurgeryContext::new(3, 8, 1).unwrap()).unwrap_err();
        match err {
            ProverError::Step { id, rule, reason } => {
                assert_eq!(id, "z1");
                assert_eq!(rule, "R-KPOW-SIGN");
                assert!(reason.contains('1'), "reason should mention m: {reason}");
            }
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn main_script_roundtrips_through_dsl() {
        let script = builtin_main_script(&SurgeryContext::new(3, 9, 1).unwrap());
        let text = print_script(&script);
        let reparsed = parse_script(&text).unwrap();
        assert_eq!(print_script(&reparsed), text);
        assert!(check_script(&reparsed).unwrap().is_bot());
    }

    #[test]
    fn fixedpoint_closes() {
        for s in [3, 5] {
            let cert = builtin_script_fixedpoint(s).unwrap();
            assert!(cert.is_bot(), "s = {s}");
        }
    }

    #[test]
    fn fixedpoint_needs_globalfix() {
        let mut script = builtin_fixedpoint_script(3).unwrap();
        script.steps.retain(|s| s.id != "eq_bot");
        assert!(check_script(&script).is_err());
    }

    #[test]
    fn mirror_is_involution_and_verifies() {
        let script = builtin_main_script(&SurgeryContext::new(3, 9, 1).unwrap());
        let mirrored = mirror(&script);
        assert_eq!(mirror(&mirrored), script);
        let cert = check_script(&mirrored).unwrap();
        assert!(cert.is_bot());
        assert!(cert.negated);

        let fixed = builtin_fixedpoint_script(4).unwrap();
        assert!(check_script(&mirror(&fixed)).unwrap().is_bot());
        assert_eq!(mirror(&ProofScript { steps: vec![], ..fixed.clone() }).steps, vec![]);
    }
}
