//! Command dispatch: parse a problem file, run the requested algorithm, and
//! render deterministic text or JSON output.
//!
//! Exit codes: 0 on success, 1 on mathematical failure (not characterizable,
//! trivial ideal, failed `--check`), 2 on parse or usage errors.

pub mod parser;
pub mod printer;

pub use parser::{parse, parse_expression, ProblemFile};
pub use printer::{charset_element_string, poly_json, poly_string};

use serde_json::{json, Value};

use crate::canonical::{
    canonical_via_gb, canonical_via_invert, is_canonical, order_bound_check,
    validate_characterizing, CanonicalCharSet, CanonicalOptions, CanonicalTrace,
};
use crate::decompose::{
    canonical_from_generators, equal_ideals, kolchin_equality, prune_redundant,
    rosenfeld_groebner, Component,
};
use crate::error::Error;
use crate::groebner::{buchberger, gb_of_poly, poly_of_gb};
use crate::invert::{invert, InvertOutcome};
use crate::reduce::{full_remainder, is_coherent, TriangularSet};

/// Command-line switches shared by every subcommand.
#[derive(Debug, Clone, Default)]
pub struct Flags {
    pub json: bool,
    pub check: bool,
    pub no_precheck: bool,
    pub prune: bool,
    pub max_steps: Option<u64>,
}

impl Flags {
    fn opts(&self) -> CanonicalOptions {
        CanonicalOptions { precheck: !self.no_precheck, limit: self.max_steps }
    }
}

/// Outcome of a command run: the text to emit and the process exit code.
#[derive(Debug)]
pub struct RunOutcome {
    pub exit_code: i32,
    pub output: String,
}

pub const COMMANDS: &[&str] = &[
    "canonical",
    "canonical-from-gens",
    "decompose",
    "member",
    "equal",
    "invert",
    "gb",
    "coherent",
];

/// Run a command against a problem-file text.
pub fn run(command: &str, text: &str, flags: &Flags) -> RunOutcome {
    let result = match command {
        "canonical" => cmd_canonical(text, flags),
        "canonical-from-gens" => cmd_canonical_from_gens(text, flags),
        "decompose" => cmd_decompose(text, flags),
        "member" => cmd_member(text, flags),
        "equal" => cmd_equal(text, flags),
        "invert" => cmd_invert(text, flags),
        "gb" => cmd_gb(text, flags),
        "coherent" => cmd_coherent(text, flags),
        other => {
            return RunOutcome {
                exit_code: 2,
                output: format!(
                    "unknown command `{other}`; expected one of: {}",
                    COMMANDS.join(", ")
                ),
            }
        }
    };
    match result {
        Ok((output, exit_code)) => RunOutcome { exit_code, output },
        Err(e @ Error::Parse { .. }) => RunOutcome { exit_code: 2, output: e.to_string() },
        Err(e) => RunOutcome { exit_code: 1, output: e.to_string() },
    }
}

/// The system interpreted as a characteristic set: it must already be
/// autoreduced, since reducing it first would present a different ideal.
fn system_as_charset(pf: &ProblemFile) -> Result<TriangularSet, Error> {
    let ts = TriangularSet::new(&pf.ring, &pf.ranking, pf.system.clone())?;
    if !ts.is_autoreduced() {
        return Err(Error::NotCharacterizable(
            "the system is not autoreduced; `canonical-from-gens` handles generator input".into(),
        ));
    }
    Ok(ts)
}

fn render_charset(set: &TriangularSet, flags: &Flags) -> String {
    if flags.json {
        let elems: Vec<Value> = set
            .elements()
            .iter()
            .map(|f| poly_json(f, set.ranking()))
            .collect();
        json!({ "elements": elems }).to_string()
    } else {
        set.elements()
            .iter()
            .map(|f| charset_element_string(f, set.ranking()))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

/// The `--check` battery for a canonical output: canonical-form predicate,
/// coherence + invertibility, Gröbner audit, cross-algorithm agreement, and
/// the order bound when one was supplied.
fn check_battery(
    out: &CanonicalCharSet,
    input: Option<&TriangularSet>,
    bound: Option<u32>,
    flags: &Flags,
) -> (String, bool) {
    let mut lines = Vec::new();
    let mut ok = true;
    let mut record = |name: &str, pass: bool| {
        lines.push(format!("check {}: {}", name, if pass { "ok" } else { "FAILED" }));
        ok &= pass;
    };
    record("canonical-form", is_canonical(&out.set).canonical);
    record(
        "characterizes",
        validate_characterizing(&out.set, flags.max_steps).is_ok(),
    );
    let audit = match &out.trace {
        CanonicalTrace::Gb(tr) => tr.audit(),
        CanonicalTrace::Invert(traces) => traces.iter().all(|t| t.audit()),
    };
    record("groebner-audit", audit);
    if let Some(ts) = input {
        let opts = flags.opts();
        let agree = canonical_via_invert(ts, &opts)
            .map(|alt| alt.set.elements() == out.set.elements())
            .unwrap_or(false);
        record("cross-algorithm", agree);
    }
    if let Some(b) = bound {
        if out.set.ring().is_ordinary() {
            record("order-bound", order_bound_check(out, b).unwrap_or(false));
        }
    }
    (lines.join("\n"), ok)
}

fn cmd_canonical(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let ts = system_as_charset(&pf)?;
    let out = canonical_via_gb(&ts, &flags.opts())?;
    let mut output = render_charset(&out.set, flags);
    let mut code = 0;
    if flags.check {
        let (report, ok) = check_battery(&out, Some(&ts), pf.bound, flags);
        output.push('\n');
        output.push_str(&report);
        if !ok {
            code = 1;
        }
    }
    Ok((output, code))
}

fn cmd_canonical_from_gens(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let out = canonical_from_generators(&pf.ring, &pf.ranking, &pf.system, &flags.opts())?;
    let mut output = render_charset(&out.set, flags);
    let mut code = 0;
    if flags.check {
        let (report, ok) = check_battery(&out, Some(&out.set), pf.bound, flags);
        output.push('\n');
        output.push_str(&report);
        if !ok {
            code = 1;
        }
    }
    Ok((output, code))
}

fn cmd_decompose(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let mut dec = rosenfeld_groebner(&pf.ring, &pf.ranking, &pf.system, flags.max_steps)?;
    let mut pruned: Vec<String> = Vec::new();
    if flags.prune {
        pruned = prune_redundant(&mut dec, flags.max_steps)?;
    }
    if flags.json {
        let comps: Vec<Value> = dec
            .components
            .iter()
            .map(|c| {
                let elems: Vec<Value> = c
                    .charset
                    .elements()
                    .iter()
                    .map(|f| poly_json(f, &pf.ranking))
                    .collect();
                Value::Array(elems)
            })
            .collect();
        let v = json!({ "components": comps, "pruned": pruned.len() });
        return Ok((v.to_string(), 0));
    }
    let mut lines = Vec::new();
    for (i, c) in dec.components.iter().enumerate() {
        lines.push(format!("== component {}", i + 1));
        for f in c.charset.elements() {
            lines.push(charset_element_string(f, &pf.ranking));
        }
    }
    if flags.prune {
        lines.push(format!("# pruned: {} component(s) removed", pruned.len()));
    }
    Ok((lines.join("\n"), 0))
}

fn cmd_member(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let probe = pf
        .probe
        .clone()
        .ok_or(Error::Parse { line: 1, col: 1, msg: "member needs a probe block".into() })?;
    let ts = system_as_charset(&pf)?;
    if !flags.no_precheck {
        validate_characterizing(&ts, flags.max_steps)?;
    }
    let member = full_remainder(&probe, &ts).remainder.is_zero();
    let output = if flags.json {
        json!({ "member": member }).to_string()
    } else {
        member.to_string()
    };
    Ok((output, 0))
}

fn cmd_equal(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let second = pf
        .second
        .clone()
        .ok_or(Error::Parse { line: 1, col: 1, msg: "equal needs a second block".into() })?;
    let ts_a = system_as_charset(&pf)?;
    let ts_b = TriangularSet::new(&pf.ring, &pf.ranking, second)?;
    if !ts_b.is_autoreduced() {
        return Err(Error::NotCharacterizable("the second system is not autoreduced".into()));
    }
    if !flags.no_precheck {
        validate_characterizing(&ts_a, flags.max_steps)?;
        validate_characterizing(&ts_b, flags.max_steps)?;
    }
    let a = Component { charset: ts_a };
    let b = Component { charset: ts_b };
    let eq = equal_ideals(&a, &b);
    let report = kolchin_equality(&a, &b);
    let consistent = eq == report.equal();
    let mut code = 0;
    let output = if flags.json {
        json!({
            "equal": eq,
            "kolchin": {
                "a_in_j": report.a_in_j,
                "b_in_i": report.b_in_i,
                "h_a_not_in_j": report.h_a_not_in_j,
                "h_b_not_in_i": report.h_b_not_in_i,
            },
            "consistent": consistent,
        })
        .to_string()
    } else {
        let mut lines = vec![eq.to_string()];
        if flags.check {
            lines.push(format!("kolchin a_in_j: {}", report.a_in_j));
            lines.push(format!("kolchin b_in_i: {}", report.b_in_i));
            lines.push(format!("kolchin h_a_not_in_j: {}", report.h_a_not_in_j));
            lines.push(format!("kolchin h_b_not_in_i: {}", report.h_b_not_in_i));
        }
        if !consistent {
            lines.push("inconsistent equality tests: the inputs may not characterize".into());
        }
        lines.join("\n")
    };
    if !consistent {
        code = 1;
    }
    Ok((output, code))
}

fn cmd_invert(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let probe = pf
        .probe
        .clone()
        .ok_or(Error::Parse { line: 1, col: 1, msg: "invert needs a probe block".into() })?;
    let ts = system_as_charset(&pf)?;
    if !flags.no_precheck {
        validate_characterizing(&ts, flags.max_steps)?;
    }
    let reduced = full_remainder(&probe, &ts).remainder;
    if reduced.is_zero() {
        let output = if flags.json {
            json!({ "invertible": false, "reason": "the probe reduces to zero" }).to_string()
        } else {
            "not invertible\nthe probe reduces to zero modulo the set".to_string()
        };
        return Ok((output, 0));
    }
    let res = invert(&reduced, &ts, flags.max_steps)?;
    let output = match &res.outcome {
        InvertOutcome::Invertible { cofactor, value } => {
            if flags.json {
                json!({
                    "invertible": true,
                    "g": poly_json(cofactor, &pf.ranking),
                    "h": poly_json(value, &pf.ranking),
                })
                .to_string()
            } else {
                format!(
                    "invertible\ng = {}\nh = {}",
                    poly_string(cofactor, &pf.ranking),
                    poly_string(value, &pf.ranking)
                )
            }
        }
        InvertOutcome::NotInvertible { witness } => {
            let deg = witness.degree_in(res.trace.fresh_var);
            if flags.json {
                json!({ "invertible": false, "witness_degree": deg }).to_string()
            } else {
                format!(
                    "not invertible\nthe elimination ideal is generated in degree {deg} with zero constant term"
                )
            }
        }
    };
    Ok((output, 0))
}

fn cmd_gb(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    // reduced Gröbner basis of the system over ℚ in the ranking-induced lex
    // order on all occurring derivatives
    let mut vars: std::collections::BTreeSet<crate::arith::VarId> = Default::default();
    for f in &pf.system {
        vars.extend(f.body().support_vars());
    }
    let mut precedence: Vec<crate::arith::VarId> = vars.into_iter().collect();
    precedence.sort_by(|&a, &b| pf.ring.var_cmp(&pf.ranking, b, a));
    let ord = crate::arith::PrecedenceOrder::new(&precedence);
    let gens = pf.system.iter().map(|f| gb_of_poly(f.body(), &ord)).collect();
    let basis = buchberger(gens, &ord, flags.max_steps)?;
    let polys: Vec<crate::diff::DiffPoly> = basis
        .iter()
        .map(|g| crate::diff::DiffPoly::new(&pf.ring, poly_of_gb(g)))
        .collect();
    let mut code = 0;
    let mut output = if flags.json {
        let elems: Vec<Value> = polys.iter().map(|f| poly_json(f, &pf.ranking)).collect();
        json!({ "elements": elems }).to_string()
    } else {
        polys
            .iter()
            .map(|f| poly_string(f, &pf.ranking))
            .collect::<Vec<_>>()
            .join("\n")
    };
    if flags.check {
        let audit = crate::groebner::spoly_audit(&basis, &ord);
        output.push_str(&format!(
            "\ncheck groebner-audit: {}",
            if audit { "ok" } else { "FAILED" }
        ));
        if !audit {
            code = 1;
        }
    }
    Ok((output, code))
}

fn cmd_coherent(text: &str, flags: &Flags) -> Result<(String, i32), Error> {
    let pf = parse(text)?;
    let ts = system_as_charset(&pf)?;
    let report = is_coherent(&ts, flags.max_steps)?;
    let output = if flags.json {
        let witnesses: Vec<Value> = report
            .witnesses
            .iter()
            .map(|(i, j, d)| json!([i, j, poly_json(d, &pf.ranking)]))
            .collect();
        json!({ "coherent": report.coherent, "witnesses": witnesses }).to_string()
    } else if report.coherent {
        "coherent".to_string()
    } else {
        let mut lines = vec!["not coherent".to_string()];
        for (i, j, d) in &report.witnesses {
            lines.push(format!(
                "witness ({}, {}): {}",
                i + 1,
                j + 1,
                poly_string(d, &pf.ranking)
            ));
        }
        lines.join("\n")
    };
    Ok((output, 0))
}
