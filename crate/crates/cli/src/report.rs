//! Machine-readable reports with exact values serialized as strings.

use std::collections::BTreeMap;

use rbsd::arith::{CycloElem, Rational};
use rbsd::grouprings::{GroupRingElem, ZpGroupRingElem};
use rbsd::padic::{PadicNum, UnramExtElem};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::job::JobSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
    Assumed,
    NotApplicable,
    Consistent,
    Inconsistent,
    MembershipOnly,
}

impl Status {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// How a verdict was reached: exactly, to a tolerance, or at a p-adic precision.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum VerdictContext {
    Exact,
    Tolerance { tolerance: f64, observed: f64 },
    Padic { prime: u64, precision: i64 },
    Unchecked,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerdictRecord {
    pub name: String,
    pub status: Status,
    pub context: VerdictContext,
    #[serde(default, skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub name: String,
    pub value: Value,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Assumptions {
    /// Modular symbols are normalized assuming Manin constant one.
    pub manin_constant_one: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha_p_part_trivial: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sha_source: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub embedding_residue: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub job: JobSpec,
    pub verdicts: Vec<VerdictRecord>,
    pub witnesses: Vec<Witness>,
    pub assumptions: Assumptions,
    /// Wall-clock milliseconds per stage; the only nondeterministic field.
    pub timings: BTreeMap<String, u128>,
}

impl Report {
    pub fn new(job: JobSpec) -> Self {
        Report {
            job,
            verdicts: Vec::new(),
            witnesses: Vec::new(),
            assumptions: Assumptions::default(),
            timings: BTreeMap::new(),
        }
    }

    pub fn verdict(
        &mut self,
        name: impl Into<String>,
        status: Status,
        context: VerdictContext,
        detail: impl Into<String>,
    ) {
        self.verdicts.push(VerdictRecord { name: name.into(), status, context, detail: detail.into() });
    }

    pub fn witness(&mut self, name: impl Into<String>, value: Value) {
        self.witnesses.push(Witness { name: name.into(), value });
    }

    pub fn get(&self, name: &str) -> Option<&VerdictRecord> {
        self.verdicts.iter().find(|v| v.name == name)
    }

    /// The report with timings cleared, for byte comparisons.
    pub fn without_timings(&self) -> Self {
        Report { timings: BTreeMap::new(), ..self.clone() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// `"num/den"`, with the denominator always written.
pub fn rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Coefficients keyed by `sigma_a` labels, in group order.
pub fn group_ring(x: &GroupRingElem) -> Value {
    let group = x.group();
    Value::Array(x.coeffs().iter().enumerate().map(|(g, c)| json!({ "g": group.label(g), "c": rational(c) })).collect())
}

pub fn group_ring_mod(x: &ZpGroupRingElem) -> Value {
    let group = x.group();
    json!({
        "modulus": format!("{}^{}", x.prime(), x.precision()),
        "coeffs": x.coeffs().iter().enumerate().map(|(g, c)| json!({ "g": group.label(g), "c": c.to_string() })).collect::<Vec<_>>(),
    })
}

/// Coefficients on the power basis `zeta_m^i`, `i < phi(m)`.
pub fn cyclotomic(x: &CycloElem) -> Value {
    json!({ "level": x.level(), "coeffs": x.coeffs().iter().map(rational).collect::<Vec<_>>() })
}

pub fn padic(x: &PadicNum) -> Value {
    json!({ "p": x.prime(), "value": x.to_string(), "precision": x.absolute_precision() })
}

pub fn padic_ext(x: &UnramExtElem) -> Value {
    json!({
        "p": x.ctx().prime(),
        "degree": x.ctx().degree(),
        "valuation": x.valuation(),
        "precision": x.absolute_precision(),
        "unit": x.unit().iter().map(u64::to_string).collect::<Vec<_>>(),
    })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use rbsd::grouprings::AbGroup;

    use super::*;
    use crate::job::JobKind;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn rationals_always_carry_a_denominator() {
        assert_eq!(rational(&q(3, 1)), "3/1");
        assert_eq!(rational(&q(-2, 6)), "-1/3");
    }

    #[test]
    fn group_ring_elements_are_labelled() {
        let group = Arc::new(AbGroup::cyclic(2).with_labels(vec!["sigma_1".into(), "sigma_2".into()]));
        let x = GroupRingElem::from_coeffs(group, vec![q(1, 2), q(0, 1)]);
        assert_eq!(group_ring(&x), json!([{ "g": "sigma_1", "c": "1/2" }, { "g": "sigma_2", "c": "0/1" }]));
    }

    #[test]
    fn statuses_and_contexts_serialize_by_name() {
        let mut report = Report::new(JobSpec::new(JobKind::Gauss));
        report.verdict("x", Status::MembershipOnly, VerdictContext::Padic { prime: 3, precision: 10 }, "");
        report.timings.insert("total".into(), 5);
        let value: Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(value["verdicts"][0]["status"], "membership_only");
        assert_eq!(value["verdicts"][0]["context"], json!({ "mode": "padic", "prime": 3, "precision": 10 }));
        assert!(report.without_timings().timings.is_empty());
    }
}
