//! Rankings of tournaments: consistent-edge counts, the exact maximum by
//! subset dynamic programming, a brute-force oracle and two heuristics.
//!
//! Every optimum reported here breaks ties toward the smallest vertex index,
//! so outputs are reproducible regardless of thread count.

use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU16, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::binom2;
use crate::bitset::{and_count, words_for, WORD};
use crate::error::{Error, Result};
use crate::rng::stream_seed;
use crate::tourney::Tournament;

/// Default vertex cap for [`exact_max_consistent`]: a table of `2^24` two-byte
/// entries (32 MiB).
pub const DP_CAP: usize = 24;
/// Hard limit of the DP implementation (subsets are `u32` masks).
pub const DP_HARD_CAP: usize = 30;
/// Vertex cap for [`brute_force_max`].
pub const BRUTE_FORCE_CAP: usize = 9;

/// Subsets per parallel work item inside one DP layer.
const DP_CHUNK: u64 = 1 << 12;

/// A bijection `σ : V → {1, ..., n}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Ranking {
    ranks: Vec<usize>,
}

impl Ranking {
    pub fn new(ranks: Vec<usize>) -> Result<Self> {
        let n = ranks.len();
        let mut seen = vec![false; n];
        for (v, &r) in ranks.iter().enumerate() {
            if r == 0 || r > n {
                return Err(Error::InvalidRanking(format!(
                    "vertex {v} has rank {r}, outside 1..={n}"
                )));
            }
            if std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::InvalidRanking(format!("rank {r} is used twice")));
            }
        }
        Ok(Self { ranks })
    }

    /// `order[i]` is the vertex ranked `i + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut ranks = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n {
                return Err(Error::InvalidRanking(format!("vertex {v} out of range")));
            }
            ranks[v] = i + 1;
        }
        Self::new(ranks)
    }

    pub fn identity(n: usize) -> Self {
        Self {
            ranks: (1..=n).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.ranks.len()
    }

    pub fn rank(&self, v: usize) -> usize {
        self.ranks[v]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    /// Vertices sorted by rank.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.n()];
        for (v, &r) in self.ranks.iter().enumerate() {
            order[r - 1] = v;
        }
        order
    }
}

/// `σ'(v) = n - σ(v) + 1`.
pub fn reverse_ranking(sigma: &Ranking) -> Ranking {
    let n = sigma.n();
    Ranking {
        ranks: sigma.ranks.iter().map(|&r| n - r + 1).collect(),
    }
}

/// Number of edges `(x, y)` with `σ(x) < σ(y)`.
pub fn count_consistent(t: &Tournament, sigma: &Ranking) -> Result<u64> {
    if sigma.n() != t.n() {
        return Err(Error::InvalidRanking(format!(
            "ranking has {} vertices, tournament has {}",
            sigma.n(),
            t.n()
        )));
    }
    let mut later = vec![0u64; words_for(t.n())];
    let mut total = 0u64;
    for &v in sigma.order().iter().rev() {
        total += and_count(t.out_row(v), &later) as u64;
        later[v / WORD] |= 1 << (v % WORD);
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    ExactDp,
    BruteForce,
    OutDegree,
    LocalSearch,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::ExactDp => "exact-dp",
            Self::BruteForce => "brute-force",
            Self::OutDegree => "out-degree",
            Self::LocalSearch => "local-search",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RankingResult {
    pub value: u64,
    pub ranking: Ranking,
    pub method: Method,
    /// DP states, permutations, or candidate moves examined.
    pub work: u64,
}

impl RankingResult {
    fn checked(t: &Tournament, ranking: Ranking, method: Method, work: u64, value: u64) -> Self {
        let recount = count_consistent(t, &ranking).expect("ranking built for this tournament");
        assert_eq!(
            value, recount,
            "{method} reported {value} but its ranking has {recount} consistent edges"
        );
        Self {
            value,
            ranking,
            method,
            work,
        }
    }

    /// `C / binom(n, 2)`, or 1 when there are no pairs.
    pub fn ratio(&self) -> f64 {
        ratio(self.value, self.ranking.n())
    }
}

pub(crate) fn ratio(value: u64, n: usize) -> f64 {
    match binom2(n) {
        0 => 1.0,
        pairs => value as f64 / pairs as f64,
    }
}

/// Bytes used by the DP value table at `n` vertices.
pub fn dp_table_bytes(n: usize) -> u64 {
    (std::mem::size_of::<u16>() as u64) << n
}

fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut c = vec![vec![0u64; n + 2]; n + 2];
    for i in 0..=n + 1 {
        c[i][0] = 1;
        for j in 1..=i {
            c[i][j] = c[i - 1][j - 1] + c[i - 1][j];
        }
    }
    c
}

/// The `rank`-th `k`-subset in increasing numeric order of bitmasks.
fn unrank_subset(mut rank: u64, k: usize, binom: &[Vec<u64>]) -> u32 {
    let mut mask = 0u32;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        while binom[c + 1][i] <= rank {
            c += 1;
        }
        mask |= 1 << c;
        rank -= binom[c][i];
    }
    mask
}

/// Next larger integer with the same popcount.
fn next_subset(s: u32) -> u32 {
    let low = s & s.wrapping_neg();
    let ripple = s + low;
    (((ripple ^ s) >> 2) / low) | ripple
}

/// Exact `C(T)` with the default cap.
pub fn exact_max_consistent(t: &Tournament) -> Result<RankingResult> {
    exact_max_consistent_capped(t, DP_CAP)
}

/// Exact `C(T)` by dynamic programming over vertex subsets.
///
/// `best(S)` is the largest number of consistent edges inside `S` when `S`
/// holds the `|S|` earliest-ranked vertices:
/// `best(S) = max_{v ∈ S} best(S \ v) + |{u ∈ S \ v : u → v}|`.
/// Layers of equal popcount only read the previous layer, so each layer is
/// filled in parallel. The ranking is rebuilt by recomputation from the
/// full set, always picking the smallest vertex that attains the optimum as
/// the last one.
pub fn exact_max_consistent_capped(t: &Tournament, cap: usize) -> Result<RankingResult> {
    let n = t.n();
    let cap = cap.min(DP_HARD_CAP);
    if n > cap {
        return Err(Error::TooLarge {
            what: "exact subset DP",
            n,
            cap,
            hint: "use a heuristic ranking for a certified lower bound",
        });
    }
    let in_mask: Vec<u32> = (0..n)
        .map(|v| t.in_row(v).first().copied().unwrap_or(0) as u32)
        .collect();
    let states = 1usize << n;
    let table: Vec<AtomicU16> = (0..states).map(|_| AtomicU16::new(0)).collect();
    let binom = binomial_table(n);

    let eval = |s: u32| -> u16 {
        let mut best = 0u16;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            let prev = s ^ (1 << v);
            let val = table[prev as usize].load(Ordering::Relaxed)
                + (in_mask[v as usize] & prev).count_ones() as u16;
            best = best.max(val);
        }
        best
    };

    for k in 1..=n {
        let layer = binom[n][k];
        let chunks = layer.div_ceil(DP_CHUNK);
        (0..chunks).into_par_iter().for_each(|c| {
            let start = c * DP_CHUNK;
            let end = (start + DP_CHUNK).min(layer);
            let mut s = unrank_subset(start, k, &binom);
            for r in start..end {
                table[s as usize].store(eval(s), Ordering::Relaxed);
                if r + 1 < end {
                    s = next_subset(s);
                }
            }
        });
    }

    let full = (states - 1) as u32;
    let value = table[full as usize].load(Ordering::Relaxed);
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = table[s as usize].load(Ordering::Relaxed);
        let v = (0..n as u32)
            .find(|&v| {
                let prev = s ^ (1 << v);
                s >> v & 1 == 1
                    && table[prev as usize].load(Ordering::Relaxed)
                        + (in_mask[v as usize] & prev).count_ones() as u16
                        == target
            })
            .expect("optimum is attained by some vertex");
        order.push(v as usize);
        s ^= 1 << v;
    }
    order.reverse();
    let ranking = Ranking::from_order(&order)?;
    Ok(RankingResult::checked(
        t,
        ranking,
        Method::ExactDp,
        states as u64,
        value as u64,
    ))
}

/// Lexicographic successor of a permutation; `false` after the last one.
fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len())
        .rev()
        .find(|&j| p[j] > p[i - 1])
        .expect("successor exists");
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Exhaustive maximum over all `n!` rankings, enumerated as rank sequences in
/// lexicographic order; the first maximum wins.
pub fn brute_force_max(t: &Tournament) -> Result<RankingResult> {
    let n = t.n();
    if n > BRUTE_FORCE_CAP {
        return Err(Error::TooLarge {
            what: "brute-force ranking",
            n,
            cap: BRUTE_FORCE_CAP,
            hint: "use the exact subset DP",
        });
    }
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| x != y && t.has_edge(x, y))
        .collect();
    let mut ranks: Vec<usize> = (1..=n).collect();
    let mut best: Option<(u64, Vec<usize>)> = None;
    let mut work = 0u64;
    loop {
        work += 1;
        let c = edges.iter().filter(|&&(x, y)| ranks[x] < ranks[y]).count() as u64;
        if best.as_ref().is_none_or(|(b, _)| c > *b) {
            best = Some((c, ranks.clone()));
        }
        if !next_permutation(&mut ranks) {
            break;
        }
    }
    let (value, ranks) = best.expect("at least one permutation");
    Ok(RankingResult::checked(
        t,
        Ranking::new(ranks)?,
        Method::BruteForce,
        work,
        value,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    OutDegree,
    LocalSearch,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "out-degree" => Ok(Self::OutDegree),
            "local-search" => Ok(Self::LocalSearch),
            other => Err(Error::InvalidRanking(format!(
                "unknown strategy {other:?} (expected out-degree or local-search)"
            ))),
        }
    }
}

fn out_degree_order(t: &Tournament) -> Vec<usize> {
    let deg = t.out_degrees();
    let mut order: Vec<usize> = (0..t.n()).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(deg[v]), v));
    order
}

#[derive(Debug, Clone, Copy)]
struct Move {
    delta: i64,
    vertex: usize,
    from: usize,
    to: usize,
}

impl Move {
    fn beats(&self, other: &Option<Move>) -> bool {
        match other {
            None => true,
            Some(o) => {
                self.delta > o.delta
                    || (self.delta == o.delta && (self.vertex, self.to) < (o.vertex, o.to))
            }
        }
    }
}

/// Best-improvement hill climbing over single-vertex reinsertions.
fn local_search(t: &Tournament, mut order: Vec<usize>, mut value: u64) -> (Vec<usize>, u64, u64) {
    let n = order.len();
    let mut work = 0u64;
    loop {
        let mut best: Option<Move> = None;
        for from in 0..n {
            let v = order[from];
            let mut delta = 0i64;
            for (to, &u) in order.iter().enumerate().skip(from + 1) {
                delta += if t.has_edge(u, v) { 1 } else { -1 };
                let m = Move {
                    delta,
                    vertex: v,
                    from,
                    to,
                };
                if m.beats(&best) {
                    best = Some(m);
                }
            }
            delta = 0;
            for to in (0..from).rev() {
                delta += if t.has_edge(v, order[to]) { 1 } else { -1 };
                let m = Move {
                    delta,
                    vertex: v,
                    from,
                    to,
                };
                if m.beats(&best) {
                    best = Some(m);
                }
            }
            work += n.saturating_sub(1) as u64;
        }
        match best {
            Some(m) if m.delta > 0 => {
                let v = order.remove(m.from);
                order.insert(m.to, v);
                value = value
                    .checked_add_signed(m.delta)
                    .expect("value stays nonnegative");
            }
            _ => return (order, value, work),
        }
    }
}

pub fn heuristic_rank(t: &Tournament, strategy: Strategy) -> RankingResult {
    let order = out_degree_order(t);
    let start = Ranking::from_order(&order).expect("permutation");
    let start_value = count_consistent(t, &start).expect("same size");
    match strategy {
        Strategy::OutDegree => {
            RankingResult::checked(t, start, Method::OutDegree, t.n() as u64, start_value)
        }
        Strategy::LocalSearch => {
            let (order, value, work) = local_search(t, order, start_value);
            let ranking = Ranking::from_order(&order).expect("permutation");
            RankingResult::checked(t, ranking, Method::LocalSearch, work, value)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BaselineSummary {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    pub pairs: u64,
    pub min_value: u64,
    pub max_value: u64,
    pub min_ratio: f64,
    pub mean_ratio: f64,
    pub max_ratio: f64,
    /// `max ratio - 1/2`: the smallest `ε` with `C ≤ (1/2 + ε) binom(n,2)` on
    /// every sample.
    pub epsilon: f64,
    /// `C ≥ binom(n,2) / 2` on every sample.
    pub lower_bound_holds: bool,
    pub values: Vec<u64>,
}

/// Exact `C(T)` of `trials` seeded random tournaments. Trial `i` uses stream
/// `i` of `seed`, so the summary does not depend on the worker count.
pub fn random_baseline(n: usize, trials: usize, seed: u64) -> Result<BaselineSummary> {
    if n > DP_CAP {
        return Err(Error::TooLarge {
            what: "random baseline (exact DP per sample)",
            n,
            cap: DP_CAP,
            hint: "choose a smaller n",
        });
    }
    let values = (0..trials)
        .into_par_iter()
        .map(|i| {
            let t = Tournament::random(n, stream_seed(seed, i as u64));
            exact_max_consistent(&t).map(|r| r.value)
        })
        .collect::<Result<Vec<u64>>>()?;
    let pairs = binom2(n);
    let ratios: Vec<f64> = values.iter().map(|&v| ratio(v, n)).collect();
    let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let max_ratio = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean_ratio = ratios.iter().sum::<f64>() / trials.max(1) as f64;
    Ok(BaselineSummary {
        n,
        trials,
        seed,
        pairs,
        min_value: values.iter().copied().min().unwrap_or(0),
        max_value: values.iter().copied().max().unwrap_or(0),
        min_ratio,
        mean_ratio,
        max_ratio,
        epsilon: max_ratio - 0.5,
        lower_bound_holds: values.iter().all(|&v| 2 * v >= pairs),
        values,
    })
}
