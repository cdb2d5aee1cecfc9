//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any
//! failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use drt_cli::{cmd_pipeline_paley, PipelineOptions};
use drt_core::diffset::{
    are_equivalent, automorphism_count, is_shds, paley_set, EquivalenceSearch, GroupAutomorphism,
};
use drt_core::discrepancy::{
    check_mixing, check_sigma_gap, check_theorem_bound, exhaustive_mixing_check,
    sampled_mixing_check,
};
use drt_core::ranking::{
    brute_force_max, count_consistent, dp_table_bytes, exact_max_consistent, random_baseline,
    reverse_ranking,
};
use drt_core::rng::{stream_seed, XorShift64Star};
use drt_core::tourney::{
    cayley_tournament, is_doubly_regular, is_isomorphic_small, ISOMORPHISM_CAP,
};
use drt_core::{
    binom2, AbelianGroup, CandidateSet, Error, FiniteField, Ranking, Tournament, VertexSet,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn paley_tournament(p: u64, k: u32) -> Tournament {
    cayley_tournament(&paley_set(&FiniteField::new(p, k).unwrap()).unwrap()).unwrap()
}

fn secs(d: Duration) -> String {
    format!("{:.2}s", d.as_secs_f64())
}

const PALEY_ORDERS: [(u64, u32); 6] = [(3, 1), (7, 1), (11, 1), (19, 1), (23, 1), (3, 3)];

fn construction() -> Verdict {
    let start = Instant::now();
    for (p, k) in PALEY_ORDERS {
        let outcome =
            cmd_pipeline_paley(p, k, PipelineOptions::default()).map_err(|e| e.to_string())?;
        let v = &outcome.results["verdicts"];
        ensure!(outcome.passed, "p={p} k={k} verdicts {v}");
        for key in ["shds", "doubly_regular_and_gram", "mixing", "signed_sum"] {
            ensure!(v[key] == true, "p={p} k={k}: {key} missing or false");
        }
        let gram = &outcome.results["tournament"]["gram"];
        for key in ["adjacency", "signed_rows", "signed_columns"] {
            ensure!(gram[key]["holds"] == true, "p={p} k={k}: {key} identity");
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(5), "took {}", secs(elapsed));
    Ok(format!("6 pipelines in {}", secs(elapsed)))
}

fn proposition_z7() -> Verdict {
    let g = AbelianGroup::cyclic(7).unwrap();
    let (mut skew, mut rejected, mut shds) = (0, 0, 0);
    for a in 1..7 {
        for b in a + 1..7 {
            for c in b + 1..7 {
                let d = CandidateSet::new(g.clone(), [a, b, c]).unwrap();
                match cayley_tournament(&d) {
                    Ok(t) => {
                        skew += 1;
                        let s = is_shds(&d).is_shds;
                        ensure!(
                            s == is_doubly_regular(&t).doubly_regular,
                            "{d}: SHDS {s} disagrees"
                        );
                        shds += s as usize;
                    }
                    Err(Error::NotSkew(..)) => rejected += 1,
                    Err(e) => return Err(format!("{d}: {e}")),
                }
            }
        }
    }
    ensure!(skew + rejected == 20, "{skew} + {rejected} subsets");
    Ok(format!("{skew} skew ({shds} SHDS), {rejected} rejected"))
}

fn ranking_oracle() -> Verdict {
    let start = Instant::now();
    let mut instances = Vec::new();
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|x| (x + 1..5).map(move |y| (x, y)))
        .collect();
    for bits in 0u32..1 << 10 {
        instances.push(Tournament::from_fn(5, |x, y| {
            let i = pairs.iter().position(|&p| p == (x, y)).unwrap();
            bits >> i & 1 == 1
        }));
    }
    for n in 6..=8 {
        instances.extend((0..50).map(|i| Tournament::random(n, stream_seed(n as u64, i))));
    }
    for (i, t) in instances.iter().enumerate() {
        let dp = exact_max_consistent(t).map_err(|e| e.to_string())?.value;
        let bf = brute_force_max(t).map_err(|e| e.to_string())?.value;
        ensure!(dp == bf, "instance {i}: dp {dp} vs brute force {bf}");
        ensure!(
            2 * dp >= binom2(t.n()),
            "instance {i}: C below half the pairs"
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {}", secs(elapsed));
    Ok(format!(
        "{} instances, 0 mismatches in {}",
        instances.len(),
        secs(elapsed)
    ))
}

fn reversal_identity() -> Verdict {
    let mut checked = 0;
    for n in [5usize, 10, 15] {
        for i in 0..1000u64 {
            let seed = stream_seed(n as u64, i);
            let t = Tournament::random(n, seed);
            let mut order: Vec<usize> = (0..n).collect();
            XorShift64Star::new(seed ^ 0x5eed).shuffle(&mut order);
            let sigma = Ranking::from_order(&order).unwrap();
            let c = count_consistent(&t, &sigma).unwrap();
            let c_rev = count_consistent(&t, &reverse_ranking(&sigma)).unwrap();
            ensure!(c + c_rev == binom2(n), "n={n} trial {i}: {c} + {c_rev}");
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs"))
}

fn mixing_lemma() -> Verdict {
    let mut parts = Vec::new();
    for q in [7u64, 11] {
        let start = Instant::now();
        let r = exhaustive_mixing_check(&paley_tournament(q, 1)).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let expected = 3u64.pow(q as u32) - (2 * (1u64 << q) - 1);
        ensure!(
            r.pairs_checked == expected,
            "Paley {q}: {} pairs, expected {expected}",
            r.pairs_checked
        );
        ensure!(r.violations == 0, "Paley {q}: {} violations", r.violations);
        ensure!(
            elapsed < Duration::from_secs(10),
            "Paley {q} sweep took {}",
            secs(elapsed)
        );
        parts.push(format!(
            "sweep {q}: {} pairs {}",
            r.pairs_checked,
            secs(elapsed)
        ));
    }
    for (p, k) in [(19, 1), (23, 1), (3, 3)] {
        let start = Instant::now();
        let r = sampled_mixing_check(&paley_tournament(p, k), 1_000_000, 2024);
        let elapsed = start.elapsed();
        ensure!(
            r.pairs_checked == 1_000_000 && r.violations == 0,
            "{p}^{k}: {} violations",
            r.violations
        );
        ensure!(
            elapsed < Duration::from_secs(60),
            "{p}^{k} sampling took {}",
            secs(elapsed)
        );
        parts.push(format!("sample {}: {}", p.pow(k), secs(elapsed)));
    }
    let t8 = Tournament::transitive(8);
    let top = VertexSet::from_vertices(8, 0..4);
    let bottom = VertexSet::from_vertices(8, 4..8);
    let m = check_mixing(&t8, &top, &bottom).map_err(|e| e.to_string())?;
    ensure!(
        m.discrepancy == 16 && !m.holds,
        "transitive 8: d = {}",
        m.discrepancy
    );
    let sweep = exhaustive_mixing_check(&t8).map_err(|e| e.to_string())?;
    ensure!(
        sweep.violations > 0,
        "transitive 8 sweep found no violation"
    );
    parts.push(format!(
        "transitive 8: d=16, {} violations",
        sweep.violations
    ));
    Ok(parts.join("; "))
}

fn ranking_bounds() -> Verdict {
    let mut parts = Vec::new();
    for (p, k) in PALEY_ORDERS.into_iter().filter(|&(p, k)| p.pow(k) <= 24) {
        let t = paley_tournament(p, k);
        let n = t.n();
        let best = exact_max_consistent(&t).map_err(|e| e.to_string())?;
        let gap = check_sigma_gap(&t, &best.ranking).map_err(|e| e.to_string())?;
        ensure!(gap.holds, "n={n}: gap {} > {}", gap.gap, gap.bound);
        let th = check_theorem_bound(n, best.value);
        ensure!(th.holds && th.vacuous, "n={n}: theorem {th:?}");
        ensure!(
            2 * best.value >= binom2(n),
            "n={n}: C = {} below half",
            best.value
        );
        parts.push(format!("C({n})={}", best.value));
    }
    Ok(format!("{}; all vacuous", parts.join(" ")))
}

fn equivalence_engine() -> Verdict {
    let d = paley_set(&FiniteField::new(7, 1).unwrap()).unwrap();
    let search = EquivalenceSearch::default();
    let mut images = 0;
    for unit in 1..7 {
        let tau = GroupAutomorphism::Unit { modulus: 7, unit };
        for g in 0..7 {
            let image = d.affine_image(&tau, g);
            let out = are_equivalent(&image, &d, search).map_err(|e| e.to_string())?;
            ensure!(out.witness.is_some(), "τ=×{unit}, g={g}: not equivalent");
            images += 1;
        }
    }
    let neg = are_equivalent(&d, &d.negate(), search).map_err(|e| e.to_string())?;
    let w = neg.witness.ok_or("−D not equivalent")?;
    ensure!(
        w.automorphism
            == GroupAutomorphism::Unit {
                modulus: 7,
                unit: 3
            },
        "−D witness {}",
        w.automorphism
    );

    let field = FiniteField::new(3, 3).unwrap();
    let p27 = paley_set(&field).unwrap();
    let group = p27.group().clone();
    // swap one element for its negative: still skew, not a difference set
    let x = p27.indices()[0];
    let swapped = CandidateSet::new(
        group.clone(),
        p27.indices()
            .iter()
            .map(|&i| if i == x { group.neg_index(x) } else { i }),
    )
    .unwrap();
    let start = Instant::now();
    let full = are_equivalent(
        &p27,
        &swapped,
        EquivalenceSearch {
            precheck: false,
            ..search
        },
    )
    .map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let expected = automorphism_count(&group).unwrap() as u64 * 27;
    ensure!(full.witness.is_none(), "swapped set reported equivalent");
    ensure!(
        full.maps_examined == expected,
        "{} maps, expected {expected}",
        full.maps_examined
    );
    ensure!(
        elapsed < Duration::from_secs(60),
        "full enumeration took {}",
        secs(elapsed)
    );

    let z7 = AbelianGroup::cyclic(7).unwrap();
    let set = |i: [usize; 3]| CandidateSet::new(z7.clone(), i).unwrap();
    let fixtures = [
        (set([1, 2, 4]), set([3, 5, 6]), true),
        (set([1, 2, 4]), set([1, 2, 3]), false),
        (set([1, 2, 3]), set([4, 5, 6]), true),
        (set([1, 2, 3]), set([2, 4, 6]), true),
        (set([1, 2, 4]), set([1, 3, 5]), false),
    ];
    for (a, b, expect) in &fixtures {
        let eq = are_equivalent(a, b, search)
            .map_err(|e| e.to_string())?
            .witness
            .is_some();
        let ta = cayley_tournament(a).map_err(|e| e.to_string())?;
        let tb = cayley_tournament(b).map_err(|e| e.to_string())?;
        let iso = is_isomorphic_small(&ta, &tb, ISOMORPHISM_CAP)
            .map_err(|e| e.to_string())?
            .is_some();
        ensure!(
            eq == iso && eq == *expect,
            "{a} vs {b}: equivalent {eq}, isomorphic {iso}"
        );
    }
    Ok(format!(
        "{images} affine images, −D via ×3, {} maps in {}, {} fixture pairs agree",
        full.maps_examined,
        secs(elapsed),
        fixtures.len()
    ))
}

fn dp_performance() -> Verdict {
    let t20 = Tournament::random(20, 20);
    let bytes = dp_table_bytes(20);
    ensure!(bytes <= 64 << 20, "n=20 table {bytes} bytes");
    let start = Instant::now();
    let r20 = exact_max_consistent(&t20).map_err(|e| e.to_string())?;
    let e20 = start.elapsed();
    ensure!(e20 < Duration::from_secs(60), "n=20 took {}", secs(e20));

    let t23 = Tournament::random(23, 23);
    let start = Instant::now();
    let r23 = exact_max_consistent(&t23).map_err(|e| e.to_string())?;
    let e23 = start.elapsed();
    ensure!(
        e23 < Duration::from_secs(15 * 60),
        "n=23 took {}",
        secs(e23)
    );

    for threads in [1, 2, 4] {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        let again = pool
            .install(|| exact_max_consistent(&t20))
            .map_err(|e| e.to_string())?;
        ensure!(again == r20, "n=20 result differs with {threads} threads");
        let sampled = pool.install(|| sampled_mixing_check(&t20, 50_000, 7));
        ensure!(
            sampled == sampled_mixing_check(&t20, 50_000, 7),
            "sampling differs with {threads} threads"
        );
    }
    Ok(format!(
        "n=20 {} ({} KiB table, C={}), n=23 {} (C={}), 1/2/4 threads identical",
        secs(e20),
        bytes >> 10,
        r20.value,
        secs(e23),
        r23.value
    ))
}

fn random_baseline_check() -> Verdict {
    let a = random_baseline(16, 100, 16).map_err(|e| e.to_string())?;
    let b = random_baseline(16, 100, 16).map_err(|e| e.to_string())?;
    ensure!(a.values.iter().all(|&c| c >= 60), "min C = {}", a.min_value);
    ensure!(a.lower_bound_holds, "summary flags a lower-bound failure");
    ensure!(a == b, "rerun with the same seed differs");
    Ok(format!(
        "min C={} mean ratio={:.4} max ratio={:.4}",
        a.min_value, a.mean_ratio, a.max_ratio
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("construction correctness", construction),
        ("skew subsets of Z7", proposition_z7),
        ("ranking oracle equivalence", ranking_oracle),
        ("reversal identity", reversal_identity),
        ("mixing lemma", mixing_lemma),
        ("ranking bounds", ranking_bounds),
        ("equivalence engine", equivalence_engine),
        ("exact DP performance", dp_performance),
        ("random baseline", random_baseline_check),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let verdict = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match verdict {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
