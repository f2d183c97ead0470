//! A certificate calculus for order facts about words acting on the line.
//!
//! The kernel ([`kernel`]) defines judgments and rules; scripts in a small
//! DSL ([`script`]) drive the kernel and produce certificates; the shipped
//! derivations ([`builtin`]) replay the non-left-orderability argument for
//! surgeries with slope p/q >= 2s+3 and the no-fixed-point lemma for k;
//! bounded forward chaining lives in [`search`], and [`verify`] is a second,
//! minimal certificate checker sharing no rule code with the kernel.

pub mod builtin;
pub mod kernel;
pub mod script;
pub mod search;
pub mod verify;

pub use builtin::{
    builtin_fixedpoint_script, builtin_main_script, builtin_script_fixedpoint,
    builtin_script_main, mirror,
};
pub use kernel::{apply_rule, Arg, Body, Judgment, Rel, Rule, SignKind};
pub use script::{
    check_script, parse_script, print_script, CertStep, Certificate, JudgmentRepr, ProofScript,
    ProverContext, ProverError, ScriptStep,
};
pub use search::{search, SearchOutcome};
pub use verify::verify_certificate;
