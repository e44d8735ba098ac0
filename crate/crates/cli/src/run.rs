//! Dispatch from a job description to the library operations.

use std::time::Instant;

use rbsd::characters::{enumerate_chars, gauss_sum, tau_star, DirichletChar};
use rbsd::elliptic::CurveQ;
use rbsd::lvalues::{an_coeffs, cyclo_to_complex, LSeriesData};
use rbsd::modsym::interpolated_component;
use rbsd::padic::{
    first_prediction_sum, formal_group_log, log_resolvent, required_places, working_degree, CyclotomicEmbedding,
    SemiLocalPoint, UnramExt, DEFAULT_PRECISION_FLOOR,
};
use rbsd::theta::{
    character_component, curve_functional, distribution_check, hypotheses_report, rank0_verdict, theta_element,
    theta_for_field, FieldSpec, Rank0Conclusion, Verdict, NORMALIZATION_DIGITS,
};
use serde_json::json;

use crate::fixtures::FixtureSet;
use crate::job::{validate_curve, validate_field, JobKind, JobSpec};
use crate::report::{self, Report, Status, VerdictContext};
use crate::CliError;

/// Runs one job. Verdicts that fail are reported, not returned as errors.
pub fn run_job(spec: &JobSpec) -> Result<Report, CliError> {
    let mut report = Report::new(spec.clone());
    let start = Instant::now();
    match spec.command {
        JobKind::Gauss => gauss(spec, &mut report)?,
        JobKind::Theta => theta(spec, &mut report)?,
        JobKind::Distribution => distribution(spec, &mut report)?,
        JobKind::Interpolate => interpolate(spec, &mut report)?,
        JobKind::Hypotheses => hypotheses(spec, &mut report)?,
        JobKind::Rank0 => rank0(spec, &mut report)?,
        JobKind::Resolvent => resolvent(spec, &mut report)?,
        JobKind::Equivariance => equivariance(spec, &mut report)?,
    }
    report.timings.insert("total".into(), start.elapsed().as_millis());
    Ok(report)
}

fn curve(spec: &JobSpec) -> Result<CurveQ, CliError> {
    let record = spec.curve.as_ref().ok_or(CliError::MissingInput { command: spec.command.name(), what: "a curve" })?;
    validate_curve(record)
}

fn field(spec: &JobSpec) -> Result<FieldSpec, CliError> {
    let record = spec
        .field
        .as_ref()
        .ok_or(CliError::MissingInput { command: spec.command.name(), what: "a field conductor" })?;
    validate_field(record)
}

fn prime(spec: &JobSpec) -> Result<u64, CliError> {
    spec.p.ok_or(CliError::MissingInput { command: spec.command.name(), what: "a prime" })
}

fn gauss(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let c = spec.field.as_ref().ok_or(CliError::MissingInput { command: "gauss", what: "a conductor" })?.conductor;
    let chars = enumerate_chars(c, true).map_err(|e| CliError::job("characters", e))?;
    let mut failures = Vec::new();
    for chi in &chars {
        let lhs = gauss_sum(chi, c).map_err(|e| CliError::job("gauss sum", e))?;
        let rhs = tau_star(chi, c).map_err(|e| CliError::job("modified gauss sum", e))?;
        if !same_cyclotomic(&lhs, &rhs) {
            failures.push(chi.generator_exponents().to_vec());
        }
    }
    report.verdict(
        format!("imprimitive_gauss_sum_c{c}"),
        Status::from_bool(failures.is_empty()),
        VerdictContext::Exact,
        format!("{} even characters, failures {:?}", chars.len(), failures),
    );
    let mut norm_failures = Vec::new();
    let primitive: Vec<&DirichletChar> = chars.iter().filter(|chi| chi.is_primitive()).collect();
    for chi in &primitive {
        let tau = gauss_sum(chi, c).map_err(|e| CliError::job("gauss sum", e))?;
        let tau_bar = gauss_sum(&chi.conj(), c).map_err(|e| CliError::job("gauss sum", e))?;
        let sign = if chi.is_even() { 1 } else { -1 };
        let expected =
            rbsd::arith::CycloElem::from_rational(1, rbsd::arith::Rational::from_integer((sign * c as i64).into()));
        if !same_cyclotomic(&(&tau * &tau_bar), &expected) {
            norm_failures.push(chi.generator_exponents().to_vec());
        }
    }
    report.verdict(
        format!("gauss_sum_norm_c{c}"),
        Status::from_bool(norm_failures.is_empty()),
        VerdictContext::Exact,
        format!("{} primitive even characters, failures {:?}", primitive.len(), norm_failures),
    );
    Ok(())
}

fn same_cyclotomic(a: &rbsd::arith::CycloElem, b: &rbsd::arith::CycloElem) -> bool {
    let level = rbsd::arith::nt::lcm(a.level(), b.level());
    match (a.embed(level), b.embed(level)) {
        (Ok(x), Ok(y)) => x == y,
        _ => false,
    }
}

fn theta(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let f = curve_functional(&curve).map_err(|e| CliError::job("modular symbols", e))?;
    report.assumptions.manin_constant_one = true;
    let field = field(spec)?;
    let theta = theta_for_field(&f, &field).map_err(|e| CliError::job("theta element", e))?;
    report.witness("theta", report::group_ring(theta.carrier()));
    report.witness("symbol_denominator", json!(theta.symbol_denominator().to_string()));
    if let Some(p) = spec.p {
        let integral = theta.carrier().min_valuation(p).is_none_or(|v| v >= 0);
        report.verdict(format!("{p}_integral"), Status::from_bool(integral), VerdictContext::Exact, "");
    }
    Ok(())
}

fn distribution(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let f = curve_functional(&curve).map_err(|e| CliError::job("modular symbols", e))?;
    report.assumptions.manin_constant_one = true;
    let c = spec.field.as_ref().map_or(1, |fr| fr.conductor);
    let p = prime(spec)?;
    let outcome = distribution_check(&f, &curve, c, p).map_err(|e| CliError::job("distribution relation", e))?;
    report.verdict(
        format!("distribution_c{c}_p{p}"),
        Status::from_bool(outcome.holds),
        VerdictContext::Exact,
        format!("a_{p} = {}", outcome.ap),
    );
    report.witness("pushforward", report::group_ring(&outcome.lhs));
    report.witness("euler_factor_image", report::group_ring(&outcome.rhs));
    Ok(())
}

fn interpolate(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let f = curve_functional(&curve).map_err(|e| CliError::job("modular symbols", e))?;
    report.assumptions.manin_constant_one = true;
    let c =
        spec.field.as_ref().ok_or(CliError::MissingInput { command: "interpolate", what: "a conductor" })?.conductor;
    let omega = curve.real_period(NORMALIZATION_DIGITS).map_err(|e| CliError::job("real period", e))?.omega_plus;
    let lvalue_tol = spec.tolerance * 1e-3;
    let data = an_coeffs(&curve, LSeriesData::terms_needed(curve.conductor(), c, lvalue_tol / 100.0))
        .map_err(|e| CliError::job("L-series coefficients", e))?;
    let theta = theta_element(&f, c).map_err(|e| CliError::job("theta element", e))?;
    let mut worst: f64 = 0.0;
    let mut count = 0;
    for chi in enumerate_chars(c, true).map_err(|e| CliError::job("characters", e))? {
        if rbsd::arith::nt::gcd(chi.conductor(), curve.conductor()) != 1 {
            continue;
        }
        let exact =
            cyclo_to_complex(&character_component(&theta, &chi).map_err(|e| CliError::job("character component", e))?);
        let (target, _) =
            interpolated_component(&data, &chi, &omega, lvalue_tol).map_err(|e| CliError::job("twisted L-value", e))?;
        worst = worst.max((&exact - &target).abs().to_f64());
        count += 1;
    }
    report.verdict(
        format!("interpolation_c{c}"),
        Status::from_bool(worst < spec.tolerance),
        VerdictContext::Tolerance { tolerance: spec.tolerance, observed: worst },
        format!("{count} even characters"),
    );
    Ok(())
}

fn hypotheses(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let field = field(spec)?;
    let p = prime(spec)?;
    let hyp = hypotheses_report(&curve, &field, p).map_err(|e| CliError::job("hypotheses", e))?;
    for check in &hyp.conditions {
        let status = match check.verdict {
            Verdict::Verified => Status::Pass,
            Verdict::Violated => Status::Fail,
            Verdict::Inconclusive => Status::Inconclusive,
            Verdict::Assumed => Status::Assumed,
            Verdict::NotApplicable => Status::NotApplicable,
        };
        let context = if check.verdict == Verdict::Assumed { VerdictContext::Unchecked } else { VerdictContext::Exact };
        report.verdict(check.name, status, context, check.evidence.clone());
    }
    report.witness(
        "prime_to_p_subfield",
        json!({ "conductor": hyp.prime_to_p_subfield.0, "degree": hyp.prime_to_p_subfield.1 }),
    );
    Ok(())
}

fn rank0(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let field = field(spec)?;
    let p = prime(spec)?;
    let f = curve_functional(&curve).map_err(|e| CliError::job("modular symbols", e))?;
    report.assumptions.manin_constant_one = true;
    let (sha, source) = match spec.sha_trivial {
        Some(flag) => (Some(flag), Some("command line".to_string())),
        None => {
            let ainvs = curve.ainvs_i64().ok_or_else(|| CliError::InvalidCurve("coefficients too large".into()))?;
            match FixtureSet::from_env_or(spec.fixtures.as_deref())
                .and_then(|set| set.sha_p_part_trivial(ainvs, field.conductor(), field.degree(), p))
            {
                Some((flag, fx)) => (Some(flag), Some(format!("fixture sha/{} ({})", fx.key, fx.provenance.method))),
                None => (None, None),
            }
        }
    };
    report.assumptions.sha_p_part_trivial = sha;
    report.assumptions.sha_source = source;
    let verdict = rank0_verdict(&f, &curve, &field, p, spec.precision, sha.unwrap_or(false))
        .map_err(|e| CliError::job("rank zero verdict", e))?;
    let conclusion = if sha.is_none() { Rank0Conclusion::MembershipOnly } else { verdict.conclusion };
    let status = match conclusion {
        Rank0Conclusion::Consistent => Status::Consistent,
        Rank0Conclusion::Inconsistent => Status::Inconsistent,
        Rank0Conclusion::MembershipOnly => Status::MembershipOnly,
    };
    let context = VerdictContext::Padic { prime: p, precision: spec.precision as i64 };
    report.verdict("rank0", status, context.clone(), conclusion.to_string());
    report.verdict("integral", Status::from_bool(verdict.membership.integral), VerdictContext::Exact, "");
    report.verdict("unit", Status::from_bool(verdict.membership.unit), VerdictContext::Exact, "");
    report.witness("theta", report::group_ring(verdict.theta.carrier()));
    report.witness("twisted_lvalue_sizes", json!(verdict.twisted_lvalue_sizes));
    Ok(())
}

fn padic_setup(spec: &JobSpec, field: &FieldSpec, p: u64) -> Result<std::sync::Arc<UnramExt>, CliError> {
    let degree = working_degree(field, p).map_err(|e| CliError::job("local degree", e))?;
    UnramExt::new(p, degree, spec.precision).map_err(|e| CliError::job("unramified extension", e))
}

fn resolvent(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let field = field(spec)?;
    let p = prime(spec)?;
    let ctx = padic_setup(spec, &field, p)?;
    let level = rbsd::arith::nt::lcm(field.group().exponent(), field.conductor());
    let emb = CyclotomicEmbedding::new(&ctx, level, spec.embedding).map_err(|e| CliError::job("embedding", e))?;
    report.assumptions.embedding_residue = Some(emb.choice().to_vec());
    report.assumptions.seed = Some(spec.seed);
    let fg = formal_group_log(&curve, spec.precision as usize + 12);
    let x = SemiLocalPoint::random(&field, p, &ctx, spec.seed).map_err(|e| CliError::job("semi-local point", e))?;
    let y = SemiLocalPoint::random(&field, p, &ctx, spec.seed.wrapping_add(1))
        .map_err(|e| CliError::job("semi-local point", e))?;
    let sum = x.add(&y, &fg).map_err(|e| CliError::job("formal group law", e))?;
    let doubled = x.multiply(2, &fg).map_err(|e| CliError::job("formal group law", e))?;
    let (mut additive, mut linear, mut precision) = (true, true, i64::MAX);
    let mut values = Vec::new();
    for psi in field.group().characters() {
        let lr = |pt: &SemiLocalPoint| {
            log_resolvent(&field, &fg, pt, &psi, &emb).map_err(|e| CliError::job("log resolvent", e))
        };
        let (lx, ly, ls, ld) = (lr(&x)?, lr(&y)?, lr(&sum)?, lr(&doubled)?);
        additive &= ls.eq_at_precision(&lx.add(&ly));
        linear &= ld.eq_at_precision(&lx.add(&lx));
        precision = precision.min(ls.absolute_precision()).min(ld.absolute_precision());
        values.push(json!({ "character": psi.exponents(), "value": report::padic_ext(&lx) }));
    }
    let context = VerdictContext::Padic { prime: p, precision };
    report.verdict("resolvent_additive", Status::from_bool(additive), context.clone(), "");
    report.verdict("resolvent_linear", Status::from_bool(linear), context, "multiplication by 2");
    report.witness("resolvents", json!(values));
    Ok(())
}

fn equivariance(spec: &JobSpec, report: &mut Report) -> Result<(), CliError> {
    let curve = curve(spec)?;
    let field = field(spec)?;
    let p = prime(spec)?;
    let f = curve_functional(&curve).map_err(|e| CliError::job("modular symbols", e))?;
    report.assumptions.manin_constant_one = true;
    let ctx = padic_setup(spec, &field, p)?;
    report.assumptions.seed = Some(spec.seed);
    let places = if spec.places.is_empty() { required_places(&curve, &field, p) } else { spec.places.clone() };
    let x = SemiLocalPoint::random(&field, p, &ctx, spec.seed).map_err(|e| CliError::job("semi-local point", e))?;
    let predict = |pt: &SemiLocalPoint| {
        first_prediction_sum(&f, &curve, &field, p, pt, &places, spec.embedding, DEFAULT_PRECISION_FLOOR)
            .map_err(|e| CliError::job("first prediction", e))
    };
    let base = predict(&x)?;
    report.assumptions.embedding_residue = Some(base.embedding_choice.clone());
    let group = field.group();
    let mut equivariant = true;
    for h in 0..group.order() {
        let moved = predict(&x.act(&field, h))?;
        equivariant &= moved.integral == base.integral
            && (0..group.order()).all(|g| moved.coeffs[g].sub(&base.coeffs[group.mul(g, group.inv(h))]).is_zero());
    }
    let context = VerdictContext::Padic { prime: p, precision: base.precision };
    report.verdict("integral", Status::from_bool(base.integral), context.clone(), format!("places {places:?}"));
    report.verdict("congruences", Status::from_bool(base.congruences.iter().all(|&b| b)), context.clone(), "");
    report.verdict("equivariant", Status::from_bool(equivariant), context, "");
    report.witness("coefficients", json!(base.coeffs.iter().map(report::padic).collect::<Vec<_>>()));
    if let Some(reduced) = &base.reduced {
        report.witness("element", report::group_ring_mod(reduced));
    }
    Ok(())
}
