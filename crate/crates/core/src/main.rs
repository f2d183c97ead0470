//! Command-line interface.
//!
//! Exit codes: 0 success (for `prove`: contradiction certified), 2 invalid
//! input or failed derivation/invariant, 3 script parse error, 1 failed
//! acceptance run (`verify-all`).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use pretzel::cyclotomic::strip_cyclotomic;
use pretzel::group::{
    h1_order, homology_class, longitude, meridian, relator, surgery_presentation, SurgeryContext,
};
use pretzel::harness::{run_acceptance, AcceptanceParams};
use pretzel::poly::{
    alexander_minus2_pretzel, hyperbolicity_condition, is_reciprocal, simple_roots, IntPoly,
};
use pretzel::prover::{
    builtin_main_script, check_script, parse_script, search, verify_certificate, Certificate,
    ProofScript, ProverContext, ProverError, SearchOutcome,
};
use pretzel::slopes::{slope_table, type1_scan, SlopeTable, Type1System};
use pretzel::sturm::{count_unit_circle_roots, salem_profile, RootProfile};

#[derive(Parser)]
#[command(
    name = "pretzel",
    version,
    about = "Exact computations for surgeries on (-2,3,2s+1)-pretzel knots"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomial and exact root profile of a pretzel knot
    Alexander {
        /// Parameter s of the (-2,3,2s+1)-pretzel knot
        #[arg(long, conflicts_with = "pretzel")]
        s: Option<i64>,
        /// Explicit pretzel parameters, e.g. --pretzel=-2,3,7
        #[arg(long, value_delimiter = ',', allow_negative_numbers = true, num_args = 1..)]
        pretzel: Option<Vec<i64>>,
    },
    /// Boundary-slope table from the edgepath systems
    Slopes {
        /// Parameter s
        #[arg(long)]
        s: i64,
        /// Also scan type I systems, keeping abscissae with denominator up
        /// to this bound
        #[arg(long)]
        denominator_bound: Option<i64>,
    },
    /// Check or search for a non-left-orderability certificate
    Prove {
        /// Parameter s (with --p and --q selects the built-in derivation)
        #[arg(long, required_unless_present = "script")]
        s: Option<i64>,
        /// Surgery slope numerator
        #[arg(long, required_unless_present = "script")]
        p: Option<i64>,
        /// Surgery slope denominator
        #[arg(long, required_unless_present = "script")]
        q: Option<i64>,
        /// Proof script to check instead of the built-in derivation
        #[arg(long, conflicts_with_all = ["s", "p", "q"])]
        script: Option<PathBuf>,
        /// Search for a contradiction by bounded forward chaining instead of
        /// replaying the built-in derivation
        #[arg(long, conflicts_with = "script")]
        max_steps: Option<usize>,
        /// Letter-length bound on derived words during search
        #[arg(long, default_value_t = 12, requires = "max_steps")]
        max_word_len: usize,
    },
    /// Knot-group and surgery presentation data
    Group {
        /// Parameter s
        #[arg(long)]
        s: i64,
        /// Surgery slope numerator (with --q adds the surgered presentation)
        #[arg(long, requires = "q")]
        p: Option<i64>,
        /// Surgery slope denominator
        #[arg(long, requires = "p")]
        q: Option<i64>,
    },
    /// Run the acceptance criteria end to end
    VerifyAll {
        /// Upper s for the polynomial and slope-table criteria
        #[arg(long, default_value_t = 12)]
        s_max: i64,
        /// Upper s for the prover criteria
        #[arg(long, default_value_t = 8)]
        s_max_prover: i64,
        /// Seed for the randomized criteria
        #[arg(long, default_value_t = 0xC0FFEE)]
        seed: u64,
        /// Soundness-fuzz instances
        #[arg(long, default_value_t = 10_000)]
        fuzz_instances: usize,
        /// Certificate mutations
        #[arg(long, default_value_t = 1_000)]
        mutations: usize,
    },
}

fn fail(msg: impl std::fmt::Display) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn emit<T: Serialize>(format: Format, value: &T, text: String) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).expect("report serialization cannot fail")
        ),
        Format::Text => print!("{text}"),
    }
}

// ---------------------------------------------------------------------------
// alexander

#[derive(Serialize)]
struct AlexanderReport {
    pretzel: Vec<i64>,
    polynomial: String,
    coefficients: IntPoly,
    degree: usize,
    reciprocal: bool,
    simple_roots: bool,
    unit_circle_roots: usize,
    /// (n, multiplicity) per cyclotomic factor Phi_n
    cyclotomic_factors: Vec<(u64, usize)>,
    salem_remainder: String,
    /// Root locations of the stripped remainder in the `Q(x) = A(-x)`
    /// normalization; absent when the polynomial is entirely cyclotomic.
    #[serde(skip_serializing_if = "Option::is_none")]
    root_profile: Option<RootProfile>,
    is_salem: bool,
    hyperbolicity_condition: bool,
}

fn cmd_alexander(format: Format, s: Option<i64>, pretzel: Option<Vec<i64>>) -> ExitCode {
    let params = match (s, pretzel) {
        (Some(s), None) => {
            if s < 3 {
                return fail(format!("s must be at least 3, got {s}"));
            }
            vec![-2, 3, 2 * s + 1]
        }
        (None, Some(list)) => list,
        _ => return fail("pass exactly one of --s or --pretzel"),
    };
    if params.first() != Some(&-2) {
        return fail("the first pretzel parameter must be -2");
    }
    let rest = &params[1..];
    let f = match alexander_minus2_pretzel(rest) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let (factors, remainder) = match strip_cyclotomic(&f) {
        Ok(pair) => pair,
        Err(e) => return fail(e),
    };
    let unit_circle_roots = match count_unit_circle_roots(&f) {
        Ok(n) => n,
        Err(e) => return fail(e),
    };
    // undo the t -> -t of the Alexander normalization, so the Salem pair
    // (if any) sits on the positive real axis
    let profile = if remainder.is_constant() {
        None
    } else {
        match salem_profile(&remainder.compose_neg_x()) {
            Ok(p) => Some(p),
            Err(e) => return fail(e),
        }
    };
    let mut abs: Vec<i64> = params.iter().map(|p| p.abs()).collect();
    abs.sort_unstable();
    let hyperbolic = match hyperbolicity_condition(&abs) {
        Ok(h) => h,
        Err(e) => return fail(e),
    };
    let report = AlexanderReport {
        pretzel: params,
        polynomial: f.to_string(),
        degree: f.degree(),
        reciprocal: is_reciprocal(&f),
        simple_roots: simple_roots(&f),
        unit_circle_roots,
        cyclotomic_factors: factors,
        salem_remainder: remainder.to_string(),
        is_salem: profile.as_ref().is_some_and(RootProfile::is_salem),
        root_profile: profile,
        hyperbolicity_condition: hyperbolic,
        coefficients: f,
    };
    let mut text = String::new();
    text.push_str(&format!(
        "pretzel {:?}\nAlexander polynomial: {}\n",
        report.pretzel, report.polynomial
    ));
    text.push_str(&format!(
        "degree {}, reciprocal: {}, simple roots: {}\n",
        report.degree, report.reciprocal, report.simple_roots
    ));
    text.push_str(&format!(
        "unit-circle roots: {}\ncyclotomic factors: {:?}\n",
        report.unit_circle_roots, report.cyclotomic_factors
    ));
    text.push_str(&format!(
        "after stripping: {} ({})\nhyperbolicity condition: {}\n",
        report.salem_remainder,
        if report.is_salem { "Salem" } else { "not Salem" },
        report.hyperbolicity_condition
    ));
    emit(format, &report, text);
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// slopes

#[derive(Serialize)]
struct SlopesReport {
    s: i64,
    table: SlopeTable,
    distinct_slopes: Vec<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    type1: Option<Vec<Type1System>>,
}

fn cmd_slopes(format: Format, s: i64, bound: Option<i64>) -> ExitCode {
    let table = match slope_table(s) {
        Ok(t) => t,
        Err(e) => return fail(e),
    };
    if let Err(e) = table.check_invariants() {
        return fail(e);
    }
    let type1 = match bound {
        Some(b) => match type1_scan(s, b) {
            Ok(v) => Some(v),
            Err(e) => return fail(e),
        },
        None => None,
    };
    let mut text = format!("s = {}\n{}", s, table.render_text());
    text.push_str(&format!(
        "distinct slopes: {:?}\n",
        table.distinct_slopes()
    ));
    if let Some(systems) = &type1 {
        text.push_str(&format!(
            "type I systems (denominator bound {}):\n",
            bound.unwrap()
        ));
        for sys in systems {
            let dirs: String = sys
                .directions
                .iter()
                .map(|d| d.map_or('.', |d| d.sign_char()))
                .collect();
            text.push_str(&format!(
                "  {} u0={} slope={}\n",
                dirs, sys.u0, sys.slope
            ));
        }
    }
    let report = SlopesReport {
        s,
        distinct_slopes: table.distinct_slopes(),
        table,
        type1,
    };
    emit(format, &report, text);
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// prove

#[derive(Serialize)]
struct ProveFailure {
    result: &'static str,
    step: String,
    rule: String,
    reason: String,
}

fn cert_text(cert: &Certificate) -> String {
    let mut text = format!(
        "context s={} p={} q={}{}\nresult: {}\n",
        cert.context.s,
        cert.context.p,
        cert.context.q,
        if cert.negated { " (mirrored)" } else { "" },
        cert.result
    );
    text.push_str(&format!("steps: {}\n", cert.steps.len()));
    text
}

fn finish_prove(format: Format, script: &ProofScript) -> ExitCode {
    match check_script(script) {
        Ok(cert) => {
            if let Err(e) = verify_certificate(&cert) {
                return fail(format!("independent verifier rejected the certificate: {e}"));
            }
            emit(format, &cert, cert_text(&cert));
            if cert.is_bot() {
                ExitCode::SUCCESS
            } else {
                eprintln!("derivation is incomplete: no unconditional contradiction");
                ExitCode::from(2)
            }
        }
        Err(ProverError::Step { id, rule, reason }) => {
            let failure = ProveFailure {
                result: "failed",
                step: id.clone(),
                rule: rule.to_string(),
                reason: reason.clone(),
            };
            emit(
                format,
                &failure,
                format!("derivation failed at step '{id}' ({rule}): {reason}\n"),
            );
            ExitCode::from(2)
        }
        Err(e @ ProverError::Parse { .. }) => {
            eprintln!("error: {e}");
            ExitCode::from(3)
        }
        Err(e) => fail(e),
    }
}

fn cmd_prove(
    format: Format,
    s: Option<i64>,
    p: Option<i64>,
    q: Option<i64>,
    script: Option<PathBuf>,
    max_steps: Option<usize>,
    max_word_len: usize,
) -> ExitCode {
    if let Some(path) = script {
        let text = match std::fs::read_to_string(&path) {
            Ok(t) => t,
            Err(e) => return fail(format!("cannot read {}: {e}", path.display())),
        };
        let parsed = match parse_script(&text) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("error: {e}");
                return ExitCode::from(3);
            }
        };
        return finish_prove(format, &parsed);
    }
    let (Some(s), Some(p), Some(q)) = (s, p, q) else {
        return fail("pass --s, --p and --q (or --script)");
    };
    let ctx = match SurgeryContext::new(s, p, q) {
        Ok(c) => c,
        Err(e) => return fail(e),
    };
    if let Some(max_steps) = max_steps {
        let pctx = ProverContext::new(ctx);
        let axioms: Vec<_> = ["axK", "axC", "axL", "axR"]
            .iter()
            .map(|name| pctx.axiom(name).expect("context axioms are valid"))
            .collect();
        return match search(&ctx, &axioms, max_steps, max_word_len) {
            SearchOutcome::Bot(cert) => {
                if let Err(e) = verify_certificate(&cert) {
                    return fail(format!("verifier rejected the search certificate: {e}"));
                }
                emit(format, &cert, cert_text(&cert));
                ExitCode::SUCCESS
            }
            SearchOutcome::Exhausted { explored } => {
                let failure = ProveFailure {
                    result: "failed",
                    step: String::new(),
                    rule: String::new(),
                    reason: format!("search exhausted after {explored} derived judgments"),
                };
                emit(
                    format,
                    &failure,
                    format!("search exhausted after {explored} derived judgments\n"),
                );
                ExitCode::from(2)
            }
        };
    }
    finish_prove(format, &builtin_main_script(&ctx))
}

// ---------------------------------------------------------------------------
// group

#[derive(Serialize)]
struct SurgeryReport {
    p: i64,
    q: i64,
    relators: Vec<String>,
    h1_order: i64,
}

#[derive(Serialize)]
struct GroupReport {
    s: i64,
    generators: Vec<char>,
    relator: String,
    meridian: String,
    longitude: String,
    meridian_homology_class: i64,
    longitude_homology_class: i64,
    relator_homology_class: i64,
    #[serde(skip_serializing_if = "Option::is_none")]
    surgery: Option<SurgeryReport>,
}

fn cmd_group(format: Format, s: i64, p: Option<i64>, q: Option<i64>) -> ExitCode {
    let (r, lon) = match (relator(s), longitude(s)) {
        (Ok(r), Ok(l)) => (r, l),
        (Err(e), _) | (_, Err(e)) => return fail(e),
    };
    let surgery = match (p, q) {
        (Some(p), Some(q)) => {
            let ctx = match SurgeryContext::new(s, p, q) {
                Ok(c) => c,
                Err(e) => return fail(e),
            };
            let pres = surgery_presentation(&ctx);
            Some(SurgeryReport {
                p,
                q,
                relators: pres.relators.iter().map(|w| w.to_string()).collect(),
                h1_order: h1_order(&ctx),
            })
        }
        _ => None,
    };
    let class = |w| homology_class(w).expect("no k generator in group words");
    let report = GroupReport {
        s,
        generators: vec!['c', 'l'],
        relator: r.to_string(),
        meridian: meridian().to_string(),
        longitude: lon.to_string(),
        meridian_homology_class: class(&meridian()),
        longitude_homology_class: class(&lon),
        relator_homology_class: class(&r),
        surgery,
    };
    let mut text = format!(
        "knot group: < c, l | {} >\nmeridian: {} (class {})\nlongitude: {} (class {})\n",
        report.relator,
        report.meridian,
        report.meridian_homology_class,
        report.longitude,
        report.longitude_homology_class
    );
    if let Some(surg) = &report.surgery {
        text.push_str(&format!(
            "surgery {}/{}: extra relator {}\n|H1| = {}\n",
            surg.p, surg.q, surg.relators[1], surg.h1_order
        ));
    }
    emit(format, &report, text);
    ExitCode::SUCCESS
}

// ---------------------------------------------------------------------------
// verify-all

#[derive(Serialize)]
struct CriterionReport {
    name: &'static str,
    passed: bool,
    detail: String,
}

#[derive(Serialize)]
struct AcceptanceReport {
    passed: bool,
    criteria: Vec<CriterionReport>,
}

fn cmd_verify_all(format: Format, params: AcceptanceParams) -> ExitCode {
    let outcomes = run_acceptance(&params);
    let criteria: Vec<CriterionReport> = outcomes
        .iter()
        .map(|o| CriterionReport {
            name: o.name,
            passed: o.passed,
            detail: o.detail.clone(),
        })
        .collect();
    let passed = criteria.iter().all(|c| c.passed);
    let mut text = String::new();
    for c in &criteria {
        text.push_str(&format!(
            "{} - {}: {}\n",
            if c.passed { "pass" } else { "FAIL" },
            c.name,
            c.detail
        ));
    }
    let report = AcceptanceReport { passed, criteria };
    emit(format, &report, text);
    if passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Alexander { s, pretzel } => cmd_alexander(cli.format, s, pretzel),
        Command::Slopes {
            s,
            denominator_bound,
        } => cmd_slopes(cli.format, s, denominator_bound),
        Command::Prove {
            s,
            p,
            q,
            script,
            max_steps,
            max_word_len,
        } => cmd_prove(cli.format, s, p, q, script, max_steps, max_word_len),
        Command::Group { s, p, q } => cmd_group(cli.format, s, p, q),
        Command::VerifyAll {
            s_max,
            s_max_prover,
            seed,
            fuzz_instances,
            mutations,
        } => cmd_verify_all(
            cli.format,
            AcceptanceParams {
                s_max_poly: s_max,
                s_max_prover,
                seed,
                fuzz_instances,
                mutations,
            },
        ),
    }
}
