//! Commands behind the `drt` binary, usable as a library.
//!
//! Every command returns an [`Outcome`]: a JSON `results` payload plus an
//! overall verdict. The binary wraps it in a [`Report`] with input digests
//! and timing.

use std::path::Path;
use std::time::Instant;

use drt_core::diffset::{self, EquivalenceSearch};
use drt_core::discrepancy::{self, MixingReport, SWEEP_CAP};
use drt_core::ranking::{self, Strategy, DP_CAP};
use drt_core::tourney::{self, Tournament};
use drt_core::{binom2, io, CandidateSet, FiniteField, RankingResult, VertexSet};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA_VERSION: u32 = 1;
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
pub const DEFAULT_SAMPLES: u64 = 100_000;
pub const THREADS_ENV: &str = "DRT_THREADS";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: drt_core::Error,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] drt_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = std::result::Result<T, CliError>;

/// Content hash of one input file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub tool_version: String,
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub passed: bool,
    pub results: Value,
    pub wall_time_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            1
        }
    }
}

/// Payload and verdict of one command.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub results: Value,
    pub passed: bool,
    pub inputs: Vec<InputDigest>,
}

/// Runs `f`, timing it, and wraps the outcome.
pub fn run_report(command: &str, f: impl FnOnce() -> CliResult<Outcome>) -> CliResult<Report> {
    let start = Instant::now();
    let outcome = f()?;
    Ok(Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION.to_string(),
        command: command.to_string(),
        inputs: outcome.inputs,
        passed: outcome.passed,
        results: outcome.results,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Input {
    text: String,
    digest: InputDigest,
}

fn read_input(path: &Path) -> CliResult<Input> {
    let shown = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CliError::Io {
        path: shown.clone(),
        source,
    })?;
    let digest = InputDigest {
        path: shown.clone(),
        sha256: sha256_hex(&bytes),
    };
    let text = String::from_utf8(bytes).map_err(|e| CliError::Input {
        path: shown,
        source: drt_core::Error::Parse {
            line: 1,
            msg: format!("not UTF-8: {e}"),
        },
    })?;
    Ok(Input { text, digest })
}

fn load_diffset(path: &Path) -> CliResult<(CandidateSet, InputDigest)> {
    let input = read_input(path)?;
    let d = io::parse_diffset(&input.text).map_err(|source| CliError::Input {
        path: input.digest.path.clone(),
        source,
    })?;
    Ok((d, input.digest))
}

fn load_tournament(path: &Path) -> CliResult<(Tournament, InputDigest)> {
    let input = read_input(path)?;
    let t = io::parse_tournament(&input.text).map_err(|source| CliError::Input {
        path: input.digest.path.clone(),
        source,
    })?;
    Ok((t, input.digest))
}

fn to_json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report values serialize")
}

fn vertices(s: &VertexSet) -> Vec<usize> {
    s.iter().collect()
}

pub fn mixing_json(r: &MixingReport) -> Value {
    json!({
        "n": r.n,
        "pairs_checked": r.pairs_checked,
        "violations": r.violations,
        "bound_holds": r.bound_holds(),
        "max_normalized_discrepancy": r.max_normalized_discrepancy(),
        "worst_discrepancy": r.worst_discrepancy,
        "worst_pair": r.worst_pair.as_ref().map(|p| json!({"a": vertices(&p.a), "b": vertices(&p.b)})),
    })
}

pub fn ranking_json(r: &RankingResult) -> Value {
    json!({
        "value": r.value,
        "ratio": r.ratio(),
        "method": r.method,
        "ranking": r.ranking.ranks(),
        "work": r.work,
    })
}

fn lower_bound_holds(n: usize, value: u64) -> bool {
    2 * value >= binom2(n)
}

/// `drt diffset paley`: the Paley set in the file format.
pub fn paley_text(p: u64, k: u32) -> CliResult<String> {
    let field = FiniteField::new(p, k)?;
    Ok(io::emit_diffset(&diffset::paley_set(&field)?))
}

pub fn cmd_diffset_verify(path: &Path) -> CliResult<Outcome> {
    let (d, digest) = load_diffset(path)?;
    let verdict = diffset::is_shds(&d);
    let results = json!({
        "group": d.group().to_string(),
        "order": d.group().order(),
        "size": d.len(),
        "skew": diffset::is_skew(&d),
        "shds": verdict,
        "difference_counts": diffset::difference_profile(&d).counts(),
    });
    Ok(Outcome {
        results,
        passed: verdict.is_shds,
        inputs: vec![digest],
    })
}

/// Groups whose Cayley digraphs are known to be CI: prime cyclic groups and
/// elementary abelian groups of rank at most 3.
pub fn ci_assumption(group: &drt_core::AbelianGroup) -> Option<&'static str> {
    match group.elementary_prime() {
        Some((_, 1)) => Some("Z_p is a CI-group for Cayley digraphs"),
        Some((_, 2)) => Some("(Z/pZ)^2 is a CI-group for Cayley digraphs"),
        Some((_, 3)) => Some("(Z/pZ)^3 is a CI-group for Cayley digraphs"),
        _ => None,
    }
}

pub fn cmd_classify(paths: &[impl AsRef<Path>]) -> CliResult<Outcome> {
    if paths.is_empty() {
        return Err(CliError::Usage("classify needs at least one file".into()));
    }
    let mut sets = Vec::new();
    let mut inputs = Vec::new();
    for p in paths {
        let (d, digest) = load_diffset(p.as_ref())?;
        sets.push(d);
        inputs.push(digest);
    }
    let search = EquivalenceSearch::default();
    let classes = diffset::classify(&sets, search)?;
    let group = sets[0].group().clone();
    let ci = ci_assumption(&group);

    let mut class_of = vec![0; sets.len()];
    for (c, members) in classes.iter().enumerate() {
        for &m in members {
            class_of[m] = c;
        }
    }
    let mut pairs = Vec::new();
    for i in 0..sets.len() {
        for j in i + 1..sets.len() {
            let equivalent = class_of[i] == class_of[j];
            let cayley = !sets[i].contains_zero() && !sets[j].contains_zero();
            let conclusion = match (equivalent, ci) {
                (true, _) => "equivalent: the Cayley digraphs are isomorphic".to_string(),
                (false, Some(assumption)) if cayley => {
                    format!("inequivalent: the Cayley digraphs are not isomorphic, assuming {assumption}")
                }
                (false, _) => "inequivalent: no isomorphism conclusion for this group".to_string(),
            };
            pairs.push(json!({
                "a": inputs[i].path,
                "b": inputs[j].path,
                "equivalent": equivalent,
                "conclusion": conclusion,
            }));
        }
    }
    let named: Vec<Vec<&str>> = classes
        .iter()
        .map(|c| c.iter().map(|&m| inputs[m].path.as_str()).collect())
        .collect();
    let shds: Vec<bool> = sets.iter().map(|d| diffset::is_shds(d).is_shds).collect();
    let results = json!({
        "group": group.to_string(),
        "ci_assumption": ci,
        "is_shds": shds,
        "classes": named,
        "class_count": classes.len(),
        "pairs": pairs,
    });
    Ok(Outcome {
        results,
        passed: true,
        inputs,
    })
}

/// `drt tourney cayley`: the Cayley tournament in the file format.
pub fn cayley_text(path: &Path) -> CliResult<String> {
    let (d, _) = load_diffset(path)?;
    Ok(io::emit_tournament(&tourney::cayley_tournament(&d)?))
}

pub fn random_tournament_text(n: usize, seed: u64) -> String {
    io::emit_tournament(&Tournament::random(n, seed))
}

fn tournament_checks(t: &Tournament) -> (Value, bool) {
    let regular = tourney::is_doubly_regular(t);
    let gram = tourney::verify_gram_identities(t);
    let passed = regular.doubly_regular && gram.holds;
    let value = json!({
        "n": t.n(),
        "transitive": t.is_transitive(),
        "out_degrees": t.out_degrees(),
        "doubly_regular": regular,
        "gram": gram,
    });
    (value, passed)
}

pub fn cmd_tourney_verify(path: &Path) -> CliResult<Outcome> {
    let (t, digest) = load_tournament(path)?;
    let (results, passed) = tournament_checks(&t);
    Ok(Outcome {
        results,
        passed,
        inputs: vec![digest],
    })
}

pub fn cmd_rank_exact(path: &Path) -> CliResult<Outcome> {
    let (t, digest) = load_tournament(path)?;
    let r = ranking::exact_max_consistent(&t)?;
    let holds = lower_bound_holds(t.n(), r.value);
    let mut results = ranking_json(&r);
    results["lower_bound_holds"] = json!(holds);
    Ok(Outcome {
        results,
        passed: holds,
        inputs: vec![digest],
    })
}

pub fn cmd_rank_heuristic(path: &Path, strategy: Strategy) -> CliResult<Outcome> {
    let (t, digest) = load_tournament(path)?;
    let r = ranking::heuristic_rank(&t, strategy);
    Ok(Outcome {
        results: ranking_json(&r),
        passed: true,
        inputs: vec![digest],
    })
}

pub fn cmd_rank_baseline(n: usize, trials: usize, seed: u64) -> CliResult<Outcome> {
    let summary = ranking::random_baseline(n, trials, seed)?;
    Ok(Outcome {
        passed: summary.lower_bound_holds,
        results: to_json(&summary),
        inputs: Vec::new(),
    })
}

pub fn cmd_discrepancy_sweep(path: &Path) -> CliResult<Outcome> {
    let (t, digest) = load_tournament(path)?;
    let r = discrepancy::exhaustive_mixing_check(&t)?;
    Ok(Outcome {
        passed: r.bound_holds(),
        results: mixing_json(&r),
        inputs: vec![digest],
    })
}

pub fn cmd_discrepancy_sample(path: &Path, samples: u64, seed: u64) -> CliResult<Outcome> {
    let (t, digest) = load_tournament(path)?;
    let r = discrepancy::sampled_mixing_check(&t, samples, seed);
    let mut results = mixing_json(&r);
    results["samples"] = json!(samples);
    results["seed"] = json!(seed);
    Ok(Outcome {
        passed: r.bound_holds(),
        results,
        inputs: vec![digest],
    })
}

/// Bound records for `t`. With no supplied `C(T)` the exact DP is run.
fn bound_checks(t: &Tournament, c_value: Option<u64>) -> CliResult<(Value, bool)> {
    let n = t.n();
    let (c, source, gap) = match c_value {
        Some(c) => (c, "supplied", None),
        None => {
            let best = ranking::exact_max_consistent(t)?;
            let gap = discrepancy::check_sigma_gap(t, &best.ranking)?;
            (best.value, "exact-dp", Some(gap))
        }
    };
    if c > binom2(n) {
        return Err(CliError::Usage(format!(
            "C(T) = {c} exceeds the {} pairs of an {n}-vertex tournament",
            binom2(n)
        )));
    }
    let theorem = discrepancy::check_theorem_bound(n, c);
    let lower = lower_bound_holds(n, c);
    let passed = theorem.holds && lower && gap.is_none_or(|g| g.holds);
    let value = json!({
        "n": n,
        "c_value": c,
        "c_source": source,
        "sigma_gap": gap,
        "theorem": theorem,
        "lower_bound_holds": lower,
        "first_non_vacuous_order": discrepancy::first_non_vacuous_order(),
    });
    Ok((value, passed))
}

pub fn cmd_discrepancy_bounds(path: &Path, c_value: Option<u64>) -> CliResult<Outcome> {
    let (t, digest) = load_tournament(path)?;
    if c_value.is_none() && t.n() > DP_CAP {
        return Err(CliError::Usage(format!(
            "n = {} exceeds the exact DP cap {DP_CAP}; pass --c-value",
            t.n()
        )));
    }
    let (mut results, passed) = bound_checks(&t, c_value)?;
    results["doubly_regular"] = json!(tourney::is_doubly_regular(&t).doubly_regular);
    Ok(Outcome {
        results,
        passed,
        inputs: vec![digest],
    })
}

/// Settings for [`cmd_pipeline_paley`].
#[derive(Debug, Clone, Copy)]
pub struct PipelineOptions {
    pub samples: u64,
    pub seed: u64,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        Self {
            samples: DEFAULT_SAMPLES,
            seed: 0,
        }
    }
}

/// Construct, verify, rank and bound-check the Paley tournament on `F_{p^k}`.
pub fn cmd_pipeline_paley(p: u64, k: u32, opts: PipelineOptions) -> CliResult<Outcome> {
    let field = FiniteField::new(p, k)?;
    let q = field.order();
    if q % 4 != 3 {
        return Err(drt_core::Error::NotSkewOrder { q }.into());
    }
    let mut notices: Vec<String> = Vec::new();
    let mut verdicts = Map::new();

    let d = diffset::paley_set(&field)?;
    let shds = diffset::is_shds(&d);
    verdicts.insert("shds".into(), json!(shds.is_shds));

    let t = tourney::cayley_tournament(&d)?;
    let n = t.n();
    let (checks, tourney_ok) = tournament_checks(&t);
    verdicts.insert("doubly_regular_and_gram".into(), json!(tourney_ok));

    let (rank, bounds) = if n <= DP_CAP {
        let best = ranking::exact_max_consistent(&t)?;
        let (mut bounds, bounds_ok) = bound_checks(&t, Some(best.value))?;
        let gap = discrepancy::check_sigma_gap(&t, &best.ranking)?;
        bounds["c_source"] = json!("exact-dp");
        bounds["sigma_gap"] = to_json(&gap);
        verdicts.insert("sigma_gap".into(), json!(gap.holds));
        verdicts.insert("bounds".into(), json!(bounds_ok));
        (ranking_json(&best), bounds)
    } else {
        notices.push(format!(
            "exact ranking skipped: n = {n} exceeds the DP cap {DP_CAP}; local-search value is a lower bound on C(T)"
        ));
        let h = ranking::heuristic_rank(&t, Strategy::LocalSearch);
        verdicts.insert(
            "heuristic_lower_bound".into(),
            json!(lower_bound_holds(n, h.value)),
        );
        (ranking_json(&h), Value::Null)
    };

    let mixing = if n <= SWEEP_CAP {
        let r = discrepancy::exhaustive_mixing_check(&t)?;
        let mut v = mixing_json(&r);
        v["mode"] = json!("exhaustive");
        verdicts.insert("mixing".into(), json!(r.bound_holds()));
        v
    } else {
        notices.push(format!(
            "exhaustive mixing sweep skipped: n = {n} exceeds {SWEEP_CAP}; {} seeded samples used",
            opts.samples
        ));
        let r = discrepancy::sampled_mixing_check(&t, opts.samples, opts.seed);
        let mut v = mixing_json(&r);
        v["mode"] = json!("sampled");
        v["samples"] = json!(opts.samples);
        v["seed"] = json!(opts.seed);
        verdicts.insert("mixing".into(), json!(r.bound_holds()));
        v
    };
    let signed = discrepancy::sampled_signed_sum_check(&t, opts.samples, opts.seed);
    verdicts.insert(
        "signed_sum".into(),
        json!(signed.violations == 0 && signed.route_mismatches == 0),
    );

    let passed = verdicts.values().all(|v| v == &Value::Bool(true));
    let results = json!({
        "p": p,
        "k": k,
        "q": q,
        "modulus": field.modulus_poly(),
        "diffset": {
            "group": d.group().to_string(),
            "indices": d.indices(),
            "shds": shds,
        },
        "tournament": checks,
        "ranking": rank,
        "mixing": mixing,
        "signed_sum": signed,
        "bounds": bounds,
        "notices": notices,
        "verdicts": verdicts,
    });
    Ok(Outcome {
        results,
        passed,
        inputs: Vec::new(),
    })
}

/// Sizes the global rayon pool from `DRT_THREADS`, if set.
pub fn configure_threads() -> CliResult<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let threads: usize = raw.trim().parse().ok().filter(|&t| t > 0).ok_or_else(|| {
        CliError::Usage(format!(
            "{THREADS_ENV} must be a positive integer, found {raw:?}"
        ))
    })?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global()
        .map_err(|e| CliError::Usage(format!("cannot size the thread pool: {e}")))
}

/// Flattens a JSON payload into aligned `path  value` lines.
pub fn render_pretty(report: &Report) -> String {
    let mut rows = vec![
        ("command".to_string(), report.command.clone()),
        ("passed".to_string(), report.passed.to_string()),
        ("wall_time_ms".to_string(), report.wall_time_ms.to_string()),
    ];
    for input in &report.inputs {
        rows.push((format!("input {}", input.path), input.sha256.clone()));
    }
    flatten("", &report.results, &mut rows);
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}\n"))
        .collect()
}

fn flatten(prefix: &str, v: &Value, out: &mut Vec<(String, String)>) {
    let join = |key: &str| {
        if prefix.is_empty() {
            key.to_string()
        } else {
            format!("{prefix}.{key}")
        }
    };
    match v {
        Value::Object(m) if !m.is_empty() => {
            for (k, x) in m {
                flatten(&join(k), x, out);
            }
        }
        Value::Array(a) if a.iter().any(|x| x.is_object() || x.is_array()) => {
            for (i, x) in a.iter().enumerate() {
                flatten(&join(&i.to_string()), x, out);
            }
        }
        Value::String(s) => out.push((prefix.to_string(), s.clone())),
        other => out.push((prefix.to_string(), other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_round_trips() {
        let report = run_report("pipeline paley", || {
            cmd_pipeline_paley(7, 1, PipelineOptions::default())
        })
        .unwrap();
        let text = serde_json::to_string(&report).unwrap();
        let back: Report = serde_json::from_str(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.schema_version, SCHEMA_VERSION);
    }

    #[test]
    fn digest_is_sha256() {
        assert_eq!(
            sha256_hex(b"abc"),
            "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad"
        );
    }

    #[test]
    fn pipeline_rejects_bad_congruence() {
        assert!(matches!(
            cmd_pipeline_paley(13, 1, PipelineOptions::default()),
            Err(CliError::Core(drt_core::Error::NotSkewOrder { q: 13 }))
        ));
        assert!(cmd_pipeline_paley(9, 1, PipelineOptions::default()).is_err());
    }

    #[test]
    fn pretty_rendering_lists_leaves() {
        let report = run_report("rank baseline", || cmd_rank_baseline(6, 3, 1)).unwrap();
        let text = render_pretty(&report);
        assert!(text.contains("mean_ratio"));
        assert!(text
            .lines()
            .any(|l| l.starts_with("passed") && l.ends_with("true")));
    }

    #[test]
    fn ci_groups() {
        use drt_core::AbelianGroup;
        assert!(ci_assumption(&AbelianGroup::cyclic(7).unwrap()).is_some());
        assert!(ci_assumption(&AbelianGroup::elementary(3, 3).unwrap()).is_some());
        assert!(ci_assumption(&AbelianGroup::cyclic(15).unwrap()).is_none());
    }
}
