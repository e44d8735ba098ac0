//! Hypothesis checks and rank-zero verdicts.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::{theta_for_field, FieldSpec, ThetaElement, ThetaError};
use crate::arith::nt::{gcd, is_prime, primes_up_to};
use crate::elliptic::{points_over_extension, CurveQ};
use crate::grouprings::{aug_ideal_membership, padic_integrality_and_unit, UnitVerdict};
use crate::lvalues::{an_coeffs, twisted_lvalue, LSeriesData};
use crate::modsym::{eigen_functional, normalize_functional, ManinSymbolSpace, ModularSymbolFunctional};

/// Digits used when normalizing functionals for theta elements.
pub const NORMALIZATION_DIGITS: u32 = 30;
/// Largest auxiliary prime tried when bounding torsion by reduction.
pub const MAX_AUXILIARY_PRIME: u64 = 500;
/// Target accuracy for the nonvanishing test of twisted L-values.
pub const NONVANISHING_TOLERANCE: f64 = 1e-20;

/// The normalized plus functional attached to `curve`.
pub fn curve_functional(curve: &CurveQ) -> Result<ModularSymbolFunctional, ThetaError> {
    let curve = curve.minimal_model();
    let space = Arc::new(ManinSymbolSpace::new(curve.conductor())?);
    let raw = eigen_functional(space, &curve)?;
    Ok(normalize_functional(&raw, &curve, NORMALIZATION_DIGITS)?.0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified,
    Violated,
    Inconclusive,
    /// Accepted without computation.
    Assumed,
    NotApplicable,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: &'static str,
    pub verdict: Verdict,
    pub evidence: String,
}

#[derive(Clone, Debug)]
pub struct HypothesesReport {
    pub prime: u64,
    pub conductor: u64,
    /// Conductor and degree of the maximal subfield of degree prime to `p`.
    pub prime_to_p_subfield: (u64, usize),
    pub conditions: Vec<ConditionCheck>,
}

impl HypothesesReport {
    pub fn get(&self, name: &str) -> Option<&ConditionCheck> {
        self.conditions.iter().find(|c| c.name == name)
    }

    /// True when no condition is violated or inconclusive.
    pub fn all_decidable_verified(&self) -> bool {
        self.conditions.iter().all(|c| !matches!(c.verdict, Verdict::Violated | Verdict::Inconclusive))
    }
}

fn check(name: &'static str, verdict: Verdict, evidence: impl Into<String>) -> ConditionCheck {
    ConditionCheck { name, verdict, evidence: evidence.into() }
}

fn divides(p: u64, n: &BigInt) -> bool {
    n.is_multiple_of(&BigInt::from(p))
}

/// Checks the conditions (a)-(e) and the hypotheses (H1)-(H6) for
/// `curve`, the field `field` and the odd prime `p`.
pub fn hypotheses_report(curve: &CurveQ, field: &FieldSpec, p: u64) -> Result<HypothesesReport, ThetaError> {
    if p == 2 || !is_prime(p) {
        return Err(ThetaError::NotOddPrime(p));
    }
    let curve = curve.minimal_model();
    let n = curve.conductor();
    let c = field.conductor();
    let sub = field.max_prime_to_p_subfield(p)?;
    let bad = curve.bad_primes();
    let mut conditions = Vec::new();

    // (a): torsion over F' injects into E(k_v) for good v of residue characteristic other than p
    let torsion = curve.torsion_order();
    let a = if torsion.is_multiple_of(p) {
        check("a", Verdict::Violated, format!("p divides #A(Q)_tors = {torsion}"))
    } else if sub.degree() == 1 {
        check("a", Verdict::Verified, format!("F' = Q and #A(Q)_tors = {torsion}"))
    } else {
        let witness = primes_up_to(MAX_AUXILIARY_PRIME)
            .into_iter()
            .filter(|&q| q != p && !n.is_multiple_of(q) && !c.is_multiple_of(q))
            .find_map(|q| {
                let f = sub.residue_degree(q);
                let count = points_over_extension(&curve, q, f as u32).ok()?;
                (!divides(p, &count)).then(|| format!("#A(F_{{{q}^{f}}}) = {count} is prime to p"))
            });
        match witness {
            Some(evidence) => check("a", Verdict::Verified, evidence),
            None => check(
                "a",
                Verdict::Inconclusive,
                format!("no auxiliary prime below {MAX_AUXILIARY_PRIME} bounds the torsion"),
            ),
        }
    };
    conditions.push(a);

    // (b) and (H1)
    let mut tamagawa = Vec::new();
    let mut tamagawa_k = Vec::new();
    for &ell in &bad {
        let local = curve.tate_local(ell)?;
        tamagawa.push((ell, local.tamagawa));
        if sub.conductor() % ell == 0 {
            tamagawa_k.push((ell, None));
        } else {
            let f = sub.residue_degree(ell);
            tamagawa_k.push((ell, Some(local.tamagawa_unramified(f))));
        }
    }
    let b = if n.is_multiple_of(p) {
        check("b", Verdict::Violated, format!("p divides N = {n}"))
    } else if let Some((ell, t)) = tamagawa.iter().find(|(_, t)| t % p == 0) {
        check("b", Verdict::Violated, format!("c_{ell} = {t}"))
    } else {
        check("b", Verdict::Verified, format!("N = {n}, Tamagawa numbers {tamagawa:?}"))
    };
    conditions.push(b);

    // (c) and (H3): only p-adic places over ramified primes matter
    let (c_check, h3) = if !c.is_multiple_of(p) {
        (
            check("c", Verdict::NotApplicable, "p does not divide c"),
            check("H3", Verdict::NotApplicable, "p is unramified in F"),
        )
    } else if n.is_multiple_of(p) {
        let v = check("c", Verdict::Violated, "bad reduction at p");
        (v.clone(), ConditionCheck { name: "H3", ..v })
    } else {
        // K and F' coincide, so both conditions use the same residue field
        let ap = curve.ap(p)?;
        let f = sub.residue_degree(p);
        let count = points_over_extension(&curve, p, f as u32)?;
        let ordinary = ap.rem_euclid(p as i64) != 0;
        let verdict = if ordinary && !divides(p, &count) { Verdict::Verified } else { Verdict::Violated };
        let v = check("c", verdict, format!("a_p = {ap}, #A(F_{{{p}^{f}}}) = {count}"));
        (v.clone(), ConditionCheck { name: "H3", ..v })
    };

    // (d) and (H4): places over ramified primes other than p
    let mut d_evidence = Vec::new();
    let mut d_verdict = Verdict::Verified;
    for ell in crate::arith::nt::prime_divisors(c) {
        if ell == p {
            continue;
        }
        if n.is_multiple_of(ell) {
            d_verdict = Verdict::Violated;
            d_evidence.push(format!("bad reduction at {ell}"));
            continue;
        }
        let f = sub.residue_degree(ell);
        let count = points_over_extension(&curve, ell, f as u32)?;
        if divides(p, &count) {
            d_verdict = Verdict::Violated;
        }
        d_evidence.push(format!("#A(F_{{{ell}^{f}}}) = {count}"));
    }
    if d_evidence.is_empty() {
        d_evidence.push("no prime divisors of c other than p".into());
    }
    conditions.push(c_check);
    let d = check("d", d_verdict, d_evidence.join(", "));
    conditions.push(d.clone());
    conditions.push(check("e", Verdict::Assumed, "Manin constant taken to be 1"));

    let h1 = if let Some((ell, _)) = tamagawa_k.iter().find(|(_, t)| t.is_none()) {
        check("H1", Verdict::Inconclusive, format!("{ell} ramifies in K"))
    } else if let Some((ell, t)) = tamagawa_k.iter().find(|(_, t)| t.is_some_and(|t| t % p == 0)) {
        check("H1", Verdict::Violated, format!("Tamagawa number {} at {ell} over K", t.unwrap_or(0)))
    } else {
        let values: Vec<(u64, u64)> = tamagawa_k.iter().map(|&(l, t)| (l, t.unwrap_or(0))).collect();
        check("H1", Verdict::Verified, format!("Tamagawa numbers over K {values:?}"))
    };
    conditions.push(h1);
    conditions.push(if n.is_multiple_of(p) {
        check("H2", Verdict::Violated, format!("p divides N = {n}"))
    } else {
        check("H2", Verdict::Verified, format!("p does not divide N = {n}"))
    });
    conditions.push(h3);
    conditions.push(ConditionCheck { name: "H4", ..d });
    let g = gcd(n, c);
    conditions.push(if g == 1 {
        check("H5", Verdict::Verified, format!("gcd(N, c) = gcd({n}, {c}) = 1"))
    } else {
        check("H5", Verdict::Violated, format!("gcd(N, c) = {g}"))
    });
    conditions.push(check("H6", Verdict::Assumed, "finiteness of Sha is not computed"));

    Ok(HypothesesReport { prime: p, conductor: c, prime_to_p_subfield: (sub.conductor(), sub.degree()), conditions })
}

/// Integrality and augmentation-filtration data of a theta element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MembershipData {
    pub prime: u64,
    pub precision: u32,
    pub integral: bool,
    pub unit: bool,
    /// Largest `n <= max_power` with the element in `I_p(G)^n` mod `p^precision`.
    pub augmentation_power: Option<u32>,
}

/// Tests p-integrality, units and membership in powers of the augmentation ideal.
pub fn membership_data(theta: &ThetaElement, p: u64, k: u32, max_power: u32) -> Result<MembershipData, ThetaError> {
    let UnitVerdict { integral, unit } = padic_integrality_and_unit(theta.carrier(), p)?;
    let augmentation_power = if integral {
        let reduced = theta.carrier().reduce(p, k)?;
        Some((1..=max_power).take_while(|&n| aug_ideal_membership(&reduced, n)).last().unwrap_or(0))
    } else {
        None
    };
    Ok(MembershipData { prime: p, precision: k, integral, unit, augmentation_power })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Rank0Conclusion {
    /// Sha was asserted trivial and the element is a unit.
    Consistent,
    /// Sha was asserted trivial but the element is not a unit.
    Inconsistent,
    /// No assertion about Sha was supplied.
    MembershipOnly,
}

impl std::fmt::Display for Rank0Conclusion {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Rank0Conclusion::Consistent => "BSD_p(iv) consistent",
            Rank0Conclusion::Inconsistent => "BSD_p(iv) inconsistent",
            Rank0Conclusion::MembershipOnly => "membership data only",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Rank0Verdict {
    pub theta: ThetaElement,
    pub membership: MembershipData,
    /// `|L(A, chi-bar, 1)|` for each character of `G`, in the order of `FieldSpec::characters`.
    pub twisted_lvalue_sizes: Vec<f64>,
    pub conclusion: Rank0Conclusion,
}

/// Computes the theta element of `field` and decides the rank-zero criterion.
pub fn rank0_verdict(
    f: &ModularSymbolFunctional,
    curve: &CurveQ,
    field: &FieldSpec,
    p: u64,
    k: u32,
    sha_trivial: bool,
) -> Result<Rank0Verdict, ThetaError> {
    if p == 2 || !is_prime(p) {
        return Err(ThetaError::NotOddPrime(p));
    }
    let curve = curve.minimal_model();
    let bound = LSeriesData::terms_needed(curve.conductor(), field.conductor(), NONVANISHING_TOLERANCE);
    let data = an_coeffs(&curve, bound)?;
    let mut sizes = Vec::new();
    for (psi, chi) in field.characters() {
        let value = twisted_lvalue(&data, &chi.primitive().conj(), &[], NONVANISHING_TOLERANCE)?;
        let size = value.value.abs().to_f64();
        if size <= 10.0 * value.error_f64() + NONVANISHING_TOLERANCE {
            return Err(ThetaError::RankNotZero { character: psi.exponents().to_vec(), modulus: chi.conductor() });
        }
        sizes.push(size);
    }
    let theta = theta_for_field(f, field)?;
    let membership = membership_data(&theta, p, k, 1)?;
    let conclusion = match (sha_trivial, membership.unit) {
        (false, _) => Rank0Conclusion::MembershipOnly,
        (true, true) => Rank0Conclusion::Consistent,
        (true, false) => Rank0Conclusion::Inconsistent,
    };
    Ok(Rank0Verdict { theta, membership, twisted_lvalue_sizes: sizes, conclusion })
}

/// `v_p` of a nonzero rational, used in reports.
pub fn rational_valuation(x: &crate::arith::Rational, p: u64) -> Option<i64> {
    if x.is_zero() {
        return None;
    }
    let v = |n: &BigInt| crate::arith::nt::valuation(n, p).map(|v| v as i64).unwrap_or(0);
    Some(v(x.numer()) - v(x.denom()))
}
