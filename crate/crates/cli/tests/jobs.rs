//! Jobs run through the library entry point and through the binary.

use std::process::Command;

use rbsd_cli::{run_job, CurveRecord, FieldRecord, JobKind, JobSpec, Report, Status};
use serde_json::json;

const E11: [i64; 5] = [0, -1, 1, -10, -20];

fn spec(kind: JobKind, ainvs: [i64; 5], conductor: u64, generators: &[u64], p: Option<u64>) -> JobSpec {
    let mut spec = JobSpec::new(kind);
    spec.curve = Some(CurveRecord { label: None, ainvs });
    spec.field = Some(FieldRecord { conductor, subgroup_generators: generators.to_vec() });
    spec.p = p;
    spec
}

fn witness<'a>(report: &'a Report, name: &str) -> &'a serde_json::Value {
    &report.witnesses.iter().find(|w| w.name == name).expect("witness present").value
}

#[test]
fn theta_of_11a1_over_q() {
    let report = run_job(&spec(JobKind::Theta, E11, 1, &[], Some(5))).unwrap();
    assert_eq!(witness(&report, "theta"), &json!([{ "g": "sigma_0", "c": "1/10" }]));
    assert_eq!(report.get("5_integral").unwrap().status, Status::Fail);
    assert!(report.assumptions.manin_constant_one);
}

#[test]
fn distribution_relation_for_11a1() {
    let report = run_job(&spec(JobKind::Distribution, E11, 1, &[], Some(3))).unwrap();
    assert_eq!(report.get("distribution_c1_p3").unwrap().status, Status::Pass);
    // -(3 - a_3 + 1) times 1/10, with a_3 = -1
    assert_eq!(witness(&report, "pushforward"), &json!([{ "g": "sigma_0", "c": "-1/2" }]));
    assert_eq!(witness(&report, "euler_factor_image"), witness(&report, "pushforward"));
}

#[test]
fn gauss_job_needs_only_a_conductor() {
    let mut job = JobSpec::new(JobKind::Gauss);
    job.field = Some(FieldRecord { conductor: 35, subgroup_generators: vec![] });
    let report = run_job(&job).unwrap();
    assert!(report.verdicts.iter().all(|v| v.status == Status::Pass), "{report:?}");
}

#[test]
fn missing_inputs_are_errors() {
    assert!(run_job(&JobSpec::new(JobKind::Theta)).is_err());
    let mut job = spec(JobKind::Rank0, E11, 7, &[6], None);
    assert!(run_job(&job).is_err());
    job.p = Some(3);
    job.field = Some(FieldRecord { conductor: 7, subgroup_generators: vec![2] });
    assert!(run_job(&job).is_err(), "subgroup without -1 must be rejected");
}

#[test]
fn rank_zero_reads_the_sha_fixture() {
    let report = run_job(&spec(JobKind::Rank0, E11, 7, &[6], Some(3))).unwrap();
    assert_eq!(report.get("rank0").unwrap().status, Status::Consistent);
    assert_eq!(report.assumptions.sha_p_part_trivial, Some(true));
    assert!(report.assumptions.sha_source.as_deref().unwrap().contains("11a1_cubic7_p3"));

    let mut asserted = spec(JobKind::Rank0, E11, 7, &[6], Some(3));
    asserted.sha_trivial = Some(false);
    let report = run_job(&asserted).unwrap();
    assert_eq!(report.assumptions.sha_source.as_deref(), Some("command line"));
}

#[test]
fn reports_are_deterministic() {
    let mut job = spec(JobKind::Equivariance, E11, 7, &[6], Some(5));
    job.precision = 12;
    job.seed = 17;
    let first = run_job(&job).unwrap().without_timings();
    let second = run_job(&job).unwrap().without_timings();
    assert_eq!(first.to_json(), second.to_json());
}

#[test]
fn echoed_job_reruns_to_the_same_verdicts() {
    for job in [
        spec(JobKind::Resolvent, E11, 7, &[6], Some(5)),
        spec(JobKind::Hypotheses, [0, 0, 1, -1, 0], 13, &[5], Some(3)),
    ] {
        let report = run_job(&job).unwrap();
        let parsed: Report = serde_json::from_str(&report.to_json()).unwrap();
        assert_eq!(parsed.without_timings(), report.without_timings());
        let again = run_job(&parsed.job).unwrap();
        assert_eq!(again.verdicts, report.verdicts);
    }
}

#[test]
fn binary_reads_input_files_and_replays() {
    let dir = std::env::temp_dir().join(format!("rbsd-jobs-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("input.jsonl");
    std::fs::write(
        &input,
        "# curves and one field\n{\"label\": \"37a1\", \"ainvs\": [0, 0, 1, -1, 0]}\n{\"label\": \"11a1\", \"ainvs\": [0, -1, 1, -10, -20]}\n{\"conductor\": 1, \"subgroup_generators\": []}\n",
    )
    .unwrap();
    let out = dir.join("report.json");
    let bin = env!("CARGO_BIN_EXE_rbsd");
    let status = Command::new(bin)
        .args(["run", "theta", "--label", "11a1", "--curve"])
        .arg(&input)
        .arg("--report")
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let report: Report = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(witness(&report, "theta"), &json!([{ "g": "sigma_0", "c": "1/10" }]));

    let replay = Command::new(bin).arg("replay").arg(&out).output().unwrap();
    assert!(replay.status.success());
    let replayed: Report = serde_json::from_slice(&replay.stdout).unwrap();
    assert_eq!(replayed.without_timings(), report.without_timings());

    let bad = Command::new(bin).args(["run", "theta", "--ainvs", "0,0,0,0,0", "--cond", "1"]).output().unwrap();
    assert!(!bad.status.success());
    std::fs::remove_dir_all(&dir).ok();
}
