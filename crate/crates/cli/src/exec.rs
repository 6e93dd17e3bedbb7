use serde_json::{json, Value};

use motivic_core::dsl::{parse_expr, Command};
use motivic_core::equivalence::{
    birational_report, format_projective_combination, projective_decomposition, rationality_report,
    WitnessReport,
};
use motivic_core::oracle::{
    count_expression, count_points, verify, Budget, CenterSelection, CountOptions, CountingProblem,
    OracleError, PrimeField, MAX_PRIME,
};
use motivic_core::{
    blowup_p3_points, l_equivalent, normalize, stable_birational_class, validate, MotivicClass,
    NormalizeError, PointConfiguration, RingError, VarietyExpr,
};

use crate::record::{class_value, optional_class, ExitCode, OutputRecord};

/// A record together with the exit code it implies.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub record: OutputRecord,
    pub code: ExitCode,
}

impl Outcome {
    fn ok(record: OutputRecord) -> Self {
        Self {
            record,
            code: ExitCode::Success,
        }
    }

    fn fail(command: &str, input: &str, code: ExitCode, diagnostics: Vec<String>) -> Self {
        Self {
            record: OutputRecord::error(command, input, diagnostics),
            code,
        }
    }
}

struct Failure {
    code: ExitCode,
    diagnostics: Vec<String>,
}

impl Failure {
    fn new(code: ExitCode, message: impl Into<String>) -> Self {
        Self {
            code,
            diagnostics: vec![message.into()],
        }
    }
}

impl From<RingError> for Failure {
    fn from(e: RingError) -> Self {
        Failure::new(ExitCode::Computation, format!("computation error: {e}"))
    }
}

impl From<NormalizeError> for Failure {
    fn from(e: NormalizeError) -> Self {
        Failure::new(ExitCode::Computation, format!("computation error: {e}"))
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        let code = match e {
            OracleError::InvalidPrime(_) => ExitCode::Usage,
            OracleError::InvalidProblem(_) | OracleError::NonHomogeneous { .. } => ExitCode::Parse,
            _ => ExitCode::Computation,
        };
        let kind = if code == ExitCode::Computation { "computation error" } else { "invalid input" };
        Failure::new(code, format!("{kind}: {e}"))
    }
}

fn finish(command: &str, input: &str, result: Result<Value, Failure>) -> Outcome {
    match result {
        Ok(v) => Outcome::ok(OutputRecord::ok(command, input, v)),
        Err(f) => Outcome::fail(command, input, f.code, f.diagnostics),
    }
}

/// Parses and validates an expression given on the command line.
pub fn parse_checked(text: &str) -> Result<VarietyExpr, Vec<String>> {
    let e = parse_expr(text).map_err(|err| vec![format!("parse error: {err}")])?;
    let diags = validate(&e);
    if diags.is_empty() {
        Ok(e)
    } else {
        Err(diags.iter().map(|d| format!("invalid expression: {d}")).collect())
    }
}

fn class_of(e: &VarietyExpr) -> Result<MotivicClass, Failure> {
    Ok(normalize(e)?)
}

fn witness_value(r: &WitnessReport) -> Value {
    json!({
        "verdict": r.verdict,
        "difference": class_value(&r.difference),
        "witness": optional_class(r.witness.as_ref()),
        "note": r.note,
    })
}

fn normalize_value(e: &VarietyExpr) -> Result<Value, Failure> {
    Ok(json!({ "class": class_value(&class_of(e)?) }))
}

fn equiv_value(a: &VarietyExpr, b: &VarietyExpr) -> Result<Value, Failure> {
    let r = l_equivalent(&class_of(a)?, &class_of(b)?)?;
    Ok(json!({
        "verdict": r.verdict,
        "difference": class_value(&r.difference),
        "note": r.note,
    }))
}

fn modl_value(e: &VarietyExpr) -> Result<Value, Failure> {
    Ok(json!({ "class": class_value(&stable_birational_class(&class_of(e)?)) }))
}

fn rational_value(e: &VarietyExpr, dim: u32) -> Result<Value, Failure> {
    let r = rationality_report(&class_of(e)?, dim)?;
    let mut v = witness_value(&r);
    v["dim"] = json!(dim);
    Ok(v)
}

fn biratdiff_value(a: &VarietyExpr, b: &VarietyExpr) -> Result<Value, Failure> {
    Ok(witness_value(&birational_report(&class_of(a)?, &class_of(b)?)?))
}

fn count_value(e: &VarietyExpr, p: u32, budget: Budget) -> Result<Value, Failure> {
    let field = PrimeField::new(p)?;
    let opts = CountOptions {
        budget,
        ..CountOptions::default()
    };
    let s = count_expression(e, field, opts)?;
    Ok(json!({ "q": s.q, "count": s.count }))
}

/// Counts over each prime, fits, and compares with the normalizer. A
/// disagreement is returned as a mismatch carrying the full result.
fn verify_value(e: &VarietyExpr, primes: &[u32], budget: Budget) -> Result<(Value, bool), Failure> {
    let mut distinct = primes.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() != primes.len() {
        return Err(Failure::new(ExitCode::Usage, "usage error: primes must be distinct"));
    }
    let class = class_of(e)?;
    if let Some(p) = class.as_lpoly() {
        let needed = p.degree().unwrap_or(0) as usize + 1;
        if primes.len() < needed.max(2) {
            return Err(Failure::new(
                ExitCode::Usage,
                format!(
                    "usage error: the class has degree {}, so at least {} primes are needed to pin down the fit",
                    needed - 1,
                    needed.max(2)
                ),
            ));
        }
    }
    let fields = primes
        .iter()
        .map(|p| PrimeField::new(*p))
        .collect::<Result<Vec<_>, _>>()?;
    let opts = CountOptions {
        budget,
        ..CountOptions::default()
    };
    let v = verify(e, &fields, opts)?;
    let expected = v
        .samples
        .iter()
        .map(|s| Ok(json!({ "q": s.q, "value": v.normalized.eval(s.q)? })))
        .collect::<Result<Vec<_>, RingError>>()?;
    let matched = v.is_match();
    Ok((
        json!({
            "samples": v.samples.iter().map(|s| json!({ "q": s.q, "count": s.count })).collect::<Vec<_>>(),
            "expected": expected,
            "fitted": v.fitted.as_ref().map(|p| class_value(&p.clone().into())),
            "fit_error": v.fit_error,
            "normalized": class_value(&v.normalized),
            "counts_match": v.counts_match,
            "fit_matches": v.fit_matches,
            "verdict": if matched { "MATCH" } else { "MISMATCH" },
        }),
        matched,
    ))
}

fn mismatch_outcome(command: &str, input: &str, result: Value, what: &str) -> Outcome {
    let mut record = OutputRecord::ok(command, input, result);
    record.status = crate::record::Status::Error;
    record.diagnostics = vec![format!("verification mismatch: {what}")];
    Outcome {
        record,
        code: ExitCode::Mismatch,
    }
}

pub fn normalize_cmd(e: &VarietyExpr, input: &str) -> Outcome {
    finish("normalize", input, normalize_value(e))
}

pub fn equiv_cmd(a: &VarietyExpr, b: &VarietyExpr, input: &str) -> Outcome {
    finish("equiv", input, equiv_value(a, b))
}

pub fn modl_cmd(e: &VarietyExpr, input: &str) -> Outcome {
    finish("modl", input, modl_value(e))
}

pub fn rational_cmd(e: &VarietyExpr, dim: u32, input: &str) -> Outcome {
    finish("rational", input, rational_value(e, dim))
}

pub fn biratdiff_cmd(a: &VarietyExpr, b: &VarietyExpr, input: &str) -> Outcome {
    finish("biratdiff", input, biratdiff_value(a, b))
}

pub fn count_cmd(e: &VarietyExpr, p: u32, budget: Budget, input: &str) -> Outcome {
    finish("count", input, count_value(e, p, budget))
}

pub fn verify_cmd(e: &VarietyExpr, primes: &[u32], budget: Budget, input: &str) -> Outcome {
    match verify_value(e, primes, budget) {
        Ok((v, true)) => Outcome::ok(OutputRecord::ok("verify", input, v)),
        Ok((v, false)) => mismatch_outcome("verify", input, v, "oracle counts disagree with the normalized class"),
        Err(f) => Outcome::fail("verify", input, f.code, f.diagnostics),
    }
}

/// Counts the solutions of a JSON problem file's equations.
pub fn count_problem_cmd(text: &str, budget: Budget, input: &str) -> Outcome {
    let result = CountingProblem::from_json(text)
        .and_then(|p| count_points(&p, budget))
        .map(|s| json!({ "q": s.q, "count": s.count }))
        .map_err(Failure::from);
    finish("count-problem", input, result)
}

/// Smallest primes `q` (at most `n` of them) with at least `m` rational
/// points in `P^3(F_q)`.
fn demo_primes(m: u32, n: usize) -> Vec<PrimeField> {
    (2..=MAX_PRIME)
        .filter_map(|p| PrimeField::new(p).ok())
        .filter(|f| {
            let q = f.q() as u64;
            1 + q + q * q + q * q * q >= u64::from(m)
        })
        .take(n)
        .collect()
}

/// The blow-up of `P^3` at `m` points, computed from two differently
/// labelled configurations and counted with two different center choices.
/// All results must agree; any disagreement is a mismatch (exit 4).
pub fn demo_lesieutre(m: u32, budget: Budget) -> Outcome {
    const CMD: &str = "demo lesieutre";
    let input = format!("points={m}");
    if m == 0 {
        return Outcome::fail(
            CMD,
            &input,
            ExitCode::Usage,
            vec!["usage error: the number of points must be at least 1".into()],
        );
    }
    match demo_value(m, budget) {
        Ok((v, true)) => Outcome::ok(OutputRecord::ok(CMD, input, v)),
        Ok((v, false)) => mismatch_outcome(CMD, &input, v, "the two configurations or the oracle disagree"),
        Err(f) => Outcome::fail(CMD, &input, f.code, f.diagnostics),
    }
}

fn demo_value(m: u32, budget: Budget) -> Result<(Value, bool), Failure> {
    let config = |prefix: &str| {
        let cfg = PointConfiguration::labeled((1..=m).map(|i| format!("{prefix}{i}")));
        blowup_p3_points(&cfg).map_err(|diags| Failure {
            code: ExitCode::Usage,
            diagnostics: diags.iter().map(|d| format!("invalid configuration: {d}")).collect(),
        })
    };
    let expr_a = config("p")?;
    let expr_b = config("q")?;
    let class_a = class_of(&expr_a)?;
    let class_b = class_of(&expr_b)?;
    let equiv = l_equivalent(&class_a, &class_b)?;
    let same = class_a == class_b;

    let witness = rationality_report(&class_a, 3)?;
    let shape = witness
        .witness
        .as_ref()
        .and_then(|w| projective_decomposition(w, 1))
        .map(|c| format_projective_combination(&c));

    let fields = demo_primes(m, 2);
    if fields.is_empty() {
        return Err(Failure::new(
            ExitCode::Computation,
            format!("computation error: no supported prime has {m} rational points in P^3"),
        ));
    }
    let mut oracle_ok = true;
    let mut counts = Vec::new();
    for field in fields {
        let count = |expr: &VarietyExpr, centers| {
            count_expression(expr, field, CountOptions { budget, centers }).map(|s| s.count)
        };
        let first = count(&expr_a, CenterSelection::First)?;
        let last = count(&expr_b, CenterSelection::Last)?;
        let expected = class_a.eval(field.q())?;
        oracle_ok &= u64::try_from(expected).ok() == Some(first) && first == last;
        counts.push(json!({ "q": field.q(), "first": first, "last": last, "expected": expected }));
    }

    let agree = same && equiv.verdict && oracle_ok;
    Ok((
        json!({
            "points": m,
            "expression": expr_a.to_string(),
            "class": class_value(&class_a),
            "equal_across_configurations": same,
            "l_equivalent": equiv.verdict,
            "mod_l": class_value(&stable_birational_class(&class_a)),
            "rationality_witness": optional_class(witness.witness.as_ref()),
            "witness_shape": shape,
            "oracle": counts,
            "verdict": if agree { "MATCH" } else { "MISMATCH" },
        }),
        agree,
    ))
}

/// Runs one parsed script command.
pub fn execute(cmd: &Command, budget: Budget) -> Outcome {
    match cmd {
        Command::Normalize(e) => normalize_cmd(e, &e.to_string()),
        Command::Equiv(a, b) => equiv_cmd(a, b, &format!("{a}, {b}")),
        Command::ModL(e) => modl_cmd(e, &e.to_string()),
        Command::Rationality(e, d) => rational_cmd(e, *d, &format!("{e}, dim={d}")),
        Command::BiratDiff(a, b) => biratdiff_cmd(a, b, &format!("{a}, {b}")),
        Command::Count(e, p) => count_cmd(e, *p, budget, &format!("{e}, p={p}")),
        Command::Verify(e, ps) => {
            let list: Vec<String> = ps.iter().map(u32::to_string).collect();
            verify_cmd(e, ps, budget, &format!("{e}, primes=({})", list.join(",")))
        }
        Command::DemoLesieutre(m) => demo_lesieutre(*m, budget),
    }
}

pub fn command_name(cmd: &Command) -> &'static str {
    match cmd {
        Command::Normalize(_) => "normalize",
        Command::Equiv(..) => "equiv",
        Command::ModL(_) => "modl",
        Command::Rationality(..) => "rational",
        Command::BiratDiff(..) => "biratdiff",
        Command::Count(..) => "count",
        Command::Verify(..) => "verify",
        Command::DemoLesieutre(_) => "demo lesieutre",
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn expr(s: &str) -> VarietyExpr {
        parse_checked(s).unwrap()
    }

    #[test]
    fn demo_eight_points() {
        let out = demo_lesieutre(8, Budget::DEFAULT);
        assert_eq!(out.code, ExitCode::Success);
        let r = &out.record.result;
        assert_eq!(r["class"]["text"], "L^3 + 9*L^2 + 9*L + 1");
        assert_eq!(r["equal_across_configurations"], true);
        assert_eq!(r["mod_l"]["text"], "1");
        assert_eq!(r["rationality_witness"]["text"], "8*L + 8");
        assert_eq!(r["witness_shape"], "8*[P^1]");
        assert_eq!(r["oracle"][0], json!({"q": 2, "first": 63, "last": 63, "expected": 63}));
        assert_eq!(r["oracle"][1]["first"], 136);
    }

    #[test]
    fn demo_rejects_zero_points() {
        let out = demo_lesieutre(0, Budget::DEFAULT);
        assert_eq!(out.code, ExitCode::Usage);
        assert!(!out.record.diagnostics.is_empty());
    }

    #[test]
    fn demo_skips_primes_with_too_few_points() {
        let out = demo_lesieutre(20, Budget::DEFAULT);
        assert_eq!(out.code, ExitCode::Success);
        assert_eq!(out.record.result["oracle"][0]["q"], 3);
    }

    #[test]
    fn verify_blowup() {
        let out = verify_cmd(&expr("blowup(P(3); pt, codim=3)"), &[2, 3, 5, 7], Budget::DEFAULT, "");
        assert_eq!(out.code, ExitCode::Success);
        let r = &out.record.result;
        let counts: Vec<u64> = r["samples"].as_array().unwrap().iter().map(|s| s["count"].as_u64().unwrap()).collect();
        assert_eq!(counts, [21, 52, 186, 456]);
        assert_eq!(r["fitted"]["text"], "L^3 + 2*L^2 + 2*L + 1");
        assert_eq!(r["verdict"], "MATCH");
    }

    #[test]
    fn verify_needs_enough_primes() {
        let out = verify_cmd(&expr("P(3)"), &[2, 3], Budget::DEFAULT, "");
        assert_eq!(out.code, ExitCode::Usage);
        let out = verify_cmd(&expr("P(1)"), &[2, 2], Budget::DEFAULT, "");
        assert_eq!(out.code, ExitCode::Usage);
    }

    #[test]
    fn computation_errors() {
        let out = count_cmd(&expr("P(3)"), 97, Budget(10), "");
        assert_eq!(out.code, ExitCode::Computation);
        let out = count_cmd(&expr("atom(\"C\", dim=1)"), 2, Budget::DEFAULT, "");
        assert_eq!(out.code, ExitCode::Computation);
    }

    #[test]
    fn rational_without_witness() {
        let out = rational_cmd(&expr("P(1) * P(1) + pt"), 2, "");
        assert_eq!(out.code, ExitCode::Success);
        assert_eq!(out.record.result["witness"], Value::Null);
        assert_eq!(out.record.result["verdict"], false);
    }
}
