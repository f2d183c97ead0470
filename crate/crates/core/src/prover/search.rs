//! Bounded breadth-first forward chaining over the sign and equation rules.
//!
//! Deterministic by construction: rules are applied in their listed order,
//! premise tuples in insertion order, and conjugating words in shortlex
//! order. Used for small exploratory contexts; the shipped derivations are
//! scripted, not searched.

use std::collections::HashSet;

use crate::group::SurgeryContext;
use crate::prover::kernel::{apply_rule, Arg, Judgment, Rule};
use crate::prover::script::{CertStep, Certificate, JudgmentRepr, SurgeryContextRepr};
use crate::word::{Gen, Word};

#[derive(Debug)]
pub enum SearchOutcome {
    Bot(Certificate),
    Exhausted { explored: usize },
}

impl SearchOutcome {
    pub fn is_bot(&self) -> bool {
        matches!(self, SearchOutcome::Bot(_))
    }
}

struct Node {
    judgment: Judgment,
    rule: Option<Rule>,
    premises: Vec<usize>,
    args: Vec<Arg>,
}

const SEARCH_RULES: [Rule; 7] = [
    Rule::Pow,
    Rule::Mul,
    Rule::Conj,
    Rule::Inv,
    Rule::EqSubst,
    Rule::KpowSign,
    Rule::Contra,
];

fn conjugators() -> Vec<Word> {
    let mut words: Vec<Word> = [Gen::C, Gen::L, Gen::K]
        .iter()
        .flat_map(|&g| [Word::gen(g), Word::gen_pow(g, -1)])
        .collect();
    words.sort_by_key(|w| w.shortlex_key());
    words
}

/// Instantiations of a rule against premises already derived; scalar
/// parameters range over a small canonical set.
fn candidate_args(rule: Rule) -> Vec<Vec<Arg>> {
    match rule {
        Rule::Pow => (2..=4).map(|n| vec![Arg::Int(n)]).collect(),
        Rule::Conj => conjugators().into_iter().map(|w| vec![Arg::Word(w)]).collect(),
        Rule::KpowSign => (-1..=1)
            .flat_map(|m| [vec![Arg::Int(m), Arg::Int(0)], vec![Arg::Int(m), Arg::Int(1)]])
            .collect(),
        _ => vec![vec![]],
    }
}

/// Breadth-first search for a contradiction from the given axioms.
/// `max_steps` bounds the number of derived judgments and `max_word_len`
/// the letter length of any derived subject.
pub fn search(
    ctx: &SurgeryContext,
    axioms: &[Judgment],
    max_steps: usize,
    max_word_len: usize,
) -> SearchOutcome {
    let mut nodes: Vec<Node> = axioms
        .iter()
        .map(|j| Node {
            judgment: j.clone(),
            rule: None,
            premises: vec![],
            args: vec![],
        })
        .collect();
    let mut seen: HashSet<Judgment> = axioms.iter().cloned().collect();
    let mut derived = 0usize;

    let fits = |j: &Judgment, max_len: usize| -> bool {
        use crate::prover::kernel::Body;
        match &j.body {
            Body::Sign(_, w) => w.letter_len() <= max_len,
            Body::Eq(u, v) => u.letter_len() <= max_len && v.letter_len() <= max_len,
            _ => true,
        }
    };

    let mut frontier_start = 0;
    loop {
        let frontier_end = nodes.len();
        if frontier_start == frontier_end {
            return SearchOutcome::Exhausted { explored: derived };
        }
        for rule in SEARCH_RULES {
            let arity = rule.signature().premises;
            // at least one premise must come from the current frontier
            let tuples: Vec<Vec<usize>> = match arity {
                1 => (frontier_start..frontier_end).map(|i| vec![i]).collect(),
                2 => {
                    let mut out = Vec::new();
                    for i in 0..frontier_end {
                        for j in 0..frontier_end {
                            if i >= frontier_start || j >= frontier_start {
                                out.push(vec![i, j]);
                            }
                        }
                    }
                    out
                }
                _ => vec![],
            };
            for tuple in tuples {
                for args in candidate_args(rule) {
                    let premises: Vec<(usize, &Judgment)> =
                        tuple.iter().map(|&i| (i, &nodes[i].judgment)).collect();
                    let Ok(conclusion) = apply_rule(ctx, rule, &premises, &args) else {
                        continue;
                    };
                    if !fits(&conclusion, max_word_len) || seen.contains(&conclusion) {
                        continue;
                    }
                    if derived >= max_steps {
                        return SearchOutcome::Exhausted { explored: derived };
                    }
                    derived += 1;
                    seen.insert(conclusion.clone());
                    let is_bot = conclusion.is_bot();
                    nodes.push(Node {
                        judgment: conclusion,
                        rule: Some(rule),
                        premises: tuple.clone(),
                        args,
                    });
                    if is_bot {
                        return SearchOutcome::Bot(extract(ctx, &nodes, nodes.len() - 1));
                    }
                }
            }
        }
        frontier_start = frontier_end;
    }
}

/// Build a certificate from the ancestors of the BOT node.
fn extract(ctx: &SurgeryContext, nodes: &[Node], bot: usize) -> Certificate {
    let mut keep = vec![false; nodes.len()];
    let mut stack = vec![bot];
    while let Some(i) = stack.pop() {
        if keep[i] {
            continue;
        }
        keep[i] = true;
        stack.extend(&nodes[i].premises);
    }
    let mut ids = vec![String::new(); nodes.len()];
    let mut steps = Vec::new();
    for (i, node) in nodes.iter().enumerate() {
        if !keep[i] {
            continue;
        }
        ids[i] = match node.rule {
            None => format!("ax{i}"),
            Some(_) => format!("d{i}"),
        };
        steps.push(CertStep {
            id: ids[i].clone(),
            rule: node
                .rule
                .map(|r| r.dsl_name().to_string())
                .unwrap_or_else(|| "axiom".to_string()),
            premises: node.premises.iter().map(|&p| ids[p].clone()).collect(),
            args: node.args.clone(),
            judgment: JudgmentRepr::from(&node.judgment),
            verified: true,
        });
    }
    Certificate {
        context: SurgeryContextRepr {
            s: ctx.s,
            p: ctx.p,
            q: ctx.q,
        },
        negated: false,
        result: "BOT".to_string(),
        steps,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::prover::kernel::{Body, SignKind};
    use crate::word::parse_word;

    fn ctx() -> SurgeryContext {
        SurgeryContext::new(3, 9, 1).unwrap()
    }

    #[test]
    fn finds_immediate_contradiction() {
        let axioms = [
            Judgment::global(Body::Sign(SignKind::Pos, parse_word("c").unwrap())),
            Judgment::global(Body::Eq(parse_word("c").unwrap(), Word::identity())),
        ];
        let outcome = search(&ctx(), &axioms, 50, 8);
        match outcome {
            SearchOutcome::Bot(cert) => {
                assert!(cert.is_bot());
                assert!(cert.steps.len() <= 4);
            }
            SearchOutcome::Exhausted { .. } => panic!("should find BOT"),
        }
    }

    #[test]
    fn zero_budget_exhausts() {
        let axioms = [
            Judgment::global(Body::Sign(SignKind::Pos, parse_word("c").unwrap())),
            Judgment::global(Body::Eq(parse_word("c").unwrap(), Word::identity())),
        ];
        assert!(!search(&ctx(), &axioms, 0, 8).is_bot());
    }

    #[test]
    fn consistent_axioms_exhaust() {
        let axioms = [Judgment::global(Body::Sign(
            SignKind::Pos,
            parse_word("k").unwrap(),
        ))];
        let outcome = search(&ctx(), &axioms, 30, 6);
        match outcome {
            SearchOutcome::Exhausted { explored } => assert_eq!(explored, 30),
            SearchOutcome::Bot(_) => panic!("POS k alone is consistent"),
        }
    }

    #[test]
    fn deterministic() {
        let axioms = [
            Judgment::global(Body::Sign(SignKind::Pos, parse_word("c l").unwrap())),
            Judgment::global(Body::Eq(parse_word("c l").unwrap(), Word::identity())),
        ];
        let a = search(&ctx(), &axioms, 100, 8);
        let b = search(&ctx(), &axioms, 100, 8);
        match (a, b) {
            (SearchOutcome::Bot(x), SearchOutcome::Bot(y)) => assert_eq!(x, y),
            _ => panic!("both runs should find BOT"),
        }
    }
}
