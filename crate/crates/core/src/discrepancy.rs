//! Edge discrepancy `e(A,B) - e(B,A)` between disjoint vertex sets and the
//! ranking bounds that follow from it.
//!
//! For a doubly regular tournament on `n` vertices every disjoint pair
//! satisfies `e(A,B) - e(B,A) ≤ sqrt(n |A| |B|)`. The sweeps below check the
//! squared form `d² ≤ n |A| |B|` in integers. Floating point only appears in
//! the `n^{3/2} log2(2n)` ranking bounds, where the slack at the sizes we can
//! compute is orders of magnitude larger than any rounding.

use std::cmp::Ordering;

use rayon::prelude::*;
use serde::Serialize;

use crate::binom2;
use crate::bitset::{and_count, VertexSet};
use crate::error::{Error, Result};
use crate::ranking::{count_consistent, reverse_ranking, Ranking};
use crate::rng::{stream_seed, XorShift64Star};
use crate::tourney::Tournament;

/// Largest `n` for [`exhaustive_mixing_check`] (`3^16 ≈ 4.3e7` assignments).
pub const SWEEP_CAP: usize = 16;

/// Samples per independent random stream in the sampled checks.
const SAMPLE_CHUNK: u64 = 1 << 13;

/// Disjoint vertex sets `A`, `B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct SubsetPair {
    pub a: VertexSet,
    pub b: VertexSet,
}

impl SubsetPair {
    pub fn new(a: VertexSet, b: VertexSet) -> Result<Self> {
        if !a.is_disjoint(&b) {
            return Err(Error::Overlap);
        }
        Ok(Self { a, b })
    }
}

/// `e(A, B) = |{(a, b) ∈ E : a ∈ A, b ∈ B}|`.
pub fn edge_count(t: &Tournament, a: &VertexSet, b: &VertexSet) -> Result<u64> {
    if !a.is_disjoint(b) {
        return Err(Error::Overlap);
    }
    Ok(a.iter()
        .map(|v| and_count(t.out_row(v), b.words()) as u64)
        .sum())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MixingCheck {
    /// `e(A,B) - e(B,A)`.
    pub discrepancy: i64,
    /// `d ≤ 0` or `d² ≤ n |A| |B|`.
    pub holds: bool,
}

fn mixing_holds(d: i64, n: usize, a: usize, b: usize) -> bool {
    d <= 0 || (d as i128) * (d as i128) <= (n * a * b) as i128
}

/// Discrepancy of one pair. Pairs with an empty side report `d = 0`.
pub fn check_mixing(t: &Tournament, a: &VertexSet, b: &VertexSet) -> Result<MixingCheck> {
    let e_ab = edge_count(t, a, b)? as i64;
    let (sa, sb) = (a.len(), b.len());
    let d = 2 * e_ab - (sa * sb) as i64;
    Ok(MixingCheck {
        discrepancy: d,
        holds: mixing_holds(d, t.n(), sa, sb),
    })
}

/// Aggregate of a sweep or a sample over disjoint nonempty pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MixingReport {
    pub n: usize,
    pub pairs_checked: u64,
    /// Largest `max(d, 0)² / (n |A| |B|)`, kept as an exact fraction.
    pub max_numerator: u128,
    pub max_denominator: u128,
    pub worst_pair: Option<SubsetPair>,
    pub worst_discrepancy: i64,
    /// Pairs with `d² > n |A| |B|` and `d > 0`.
    pub violations: u64,
}

impl MixingReport {
    fn empty(n: usize) -> Self {
        Self {
            n,
            pairs_checked: 0,
            max_numerator: 0,
            max_denominator: 1,
            worst_pair: None,
            worst_discrepancy: 0,
            violations: 0,
        }
    }

    pub fn max_normalized_discrepancy(&self) -> f64 {
        self.max_numerator as f64 / self.max_denominator as f64
    }

    /// Largest normalized discrepancy is at most 1.
    pub fn bound_holds(&self) -> bool {
        self.max_numerator <= self.max_denominator
    }

    fn compare_worst(&self, num: u128, den: u128, pair: &SubsetPair) -> Ordering {
        match &self.worst_pair {
            None => Ordering::Greater,
            Some(w) => (num * self.max_denominator)
                .cmp(&(self.max_numerator * den))
                .then_with(|| (&w.a, &w.b).cmp(&(&pair.a, &pair.b))),
        }
    }

    fn record(&mut self, d: i64, size_a: usize, size_b: usize, pair: impl FnOnce() -> SubsetPair) {
        self.pairs_checked += 1;
        let pos = d.max(0) as u128;
        let (num, den) = (pos * pos, (self.n * size_a * size_b) as u128);
        if num > den {
            self.violations += 1;
        }
        // cheap reject before materializing the pair
        if self.worst_pair.is_some() && num * self.max_denominator < self.max_numerator * den {
            return;
        }
        let pair = pair();
        if self.compare_worst(num, den, &pair) == Ordering::Greater {
            self.max_numerator = num;
            self.max_denominator = den;
            self.worst_pair = Some(pair);
            self.worst_discrepancy = d;
        }
    }

    /// Associative merge; ties on the normalized value go to the smaller
    /// `(A, B)` as binary integers.
    pub fn merge(mut self, other: Self) -> Self {
        self.pairs_checked += other.pairs_checked;
        self.violations += other.violations;
        if let Some(pair) = other.worst_pair {
            if self.compare_worst(other.max_numerator, other.max_denominator, &pair)
                == Ordering::Greater
            {
                self.max_numerator = other.max_numerator;
                self.max_denominator = other.max_denominator;
                self.worst_discrepancy = other.worst_discrepancy;
                self.worst_pair = Some(pair);
            }
        }
        self
    }
}

/// Every assignment of the vertices to `A`, `B` or neither with both sides
/// nonempty: `3^n - 2^{n+1} + 1` pairs.
pub fn exhaustive_mixing_check(t: &Tournament) -> Result<MixingReport> {
    let n = t.n();
    if n > SWEEP_CAP {
        return Err(Error::TooLarge {
            what: "exhaustive mixing sweep",
            n,
            cap: SWEEP_CAP,
            hint: "use sampled_mixing_check",
        });
    }
    let rows: Vec<u32> = (0..n)
        .map(|v| t.out_row(v).first().copied().unwrap_or(0) as u32)
        .collect();
    // the top `split` vertices are fixed per work item, the rest are swept
    let split = n.min(6);
    let low = n - split;
    let prefixes = 3u64.pow(split as u32);

    let partials: Vec<MixingReport> = (0..prefixes)
        .into_par_iter()
        .map(|prefix| {
            let (mut a, mut b) = (0u32, 0u32);
            let mut p = prefix;
            for i in 0..split {
                match p % 3 {
                    1 => a |= 1 << (low + i),
                    2 => b |= 1 << (low + i),
                    _ => {}
                }
                p /= 3;
            }
            let mut report = MixingReport::empty(n);
            let mut digits = vec![0u8; low];
            loop {
                if a != 0 && b != 0 {
                    let mut e_ab = 0i64;
                    let mut rest = a;
                    while rest != 0 {
                        let v = rest.trailing_zeros() as usize;
                        rest &= rest - 1;
                        e_ab += (rows[v] & b).count_ones() as i64;
                    }
                    let (sa, sb) = (a.count_ones() as usize, b.count_ones() as usize);
                    let d = 2 * e_ab - (sa * sb) as i64;
                    report.record(d, sa, sb, || SubsetPair {
                        a: VertexSet::from_mask(n, a as u64),
                        b: VertexSet::from_mask(n, b as u64),
                    });
                }
                // base-3 increment: 0 = neither, 1 = A, 2 = B
                let mut i = 0;
                loop {
                    if i == low {
                        return report;
                    }
                    let bit = 1u32 << i;
                    match digits[i] {
                        0 => {
                            digits[i] = 1;
                            a |= bit;
                            break;
                        }
                        1 => {
                            digits[i] = 2;
                            a &= !bit;
                            b |= bit;
                            break;
                        }
                        _ => {
                            digits[i] = 0;
                            b &= !bit;
                            i += 1;
                        }
                    }
                }
            }
        })
        .collect();
    Ok(partials
        .into_iter()
        .fold(MixingReport::empty(n), MixingReport::merge))
}

/// Draws a pair with every vertex independently in `A`, `B` or neither,
/// redrawing while either side is empty. Needs `n ≥ 2`.
fn draw_pair(n: usize, rng: &mut XorShift64Star) -> (VertexSet, VertexSet) {
    loop {
        let (mut a, mut b) = (VertexSet::empty(n), VertexSet::empty(n));
        for v in 0..n {
            match rng.below(3) {
                1 => a.insert(v),
                2 => b.insert(v),
                _ => {}
            }
        }
        if !a.is_empty() && !b.is_empty() {
            return (a, b);
        }
    }
}

fn sample_chunks<R: Send>(
    samples: u64,
    seed: u64,
    run: impl Fn(u64, &mut XorShift64Star) -> R + Sync,
) -> Vec<R> {
    let chunks = samples.div_ceil(SAMPLE_CHUNK);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let count = SAMPLE_CHUNK.min(samples - c * SAMPLE_CHUNK);
            run(count, &mut XorShift64Star::new(stream_seed(seed, c)))
        })
        .collect()
}

/// Uniformly sampled pairs; deterministic for a fixed seed. Tournaments with
/// fewer than two vertices have no valid pair and give an empty report.
pub fn sampled_mixing_check(t: &Tournament, samples: u64, seed: u64) -> MixingReport {
    let n = t.n();
    if n < 2 {
        return MixingReport::empty(n);
    }
    sample_chunks(samples, seed, |count, rng| {
        let mut report = MixingReport::empty(n);
        for _ in 0..count {
            let (a, b) = draw_pair(n, rng);
            let e_ab: i64 = a
                .iter()
                .map(|v| and_count(t.out_row(v), b.words()) as i64)
                .sum();
            let (sa, sb) = (a.len(), b.len());
            let d = 2 * e_ab - (sa * sb) as i64;
            report.record(d, sa, sb, || SubsetPair { a, b });
        }
        report
    })
    .into_iter()
    .fold(MixingReport::empty(n), MixingReport::merge)
}

/// Sampled check of the intermediate inequality
/// `(Σ_{i∈A} Σ_{j∈B} m_ij)² ≤ |A||B|n - |A||B|(|B|-1)` on the signed
/// adjacency matrix.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SignedSumReport {
    pub pairs_checked: u64,
    pub violations: u64,
    /// Pairs where the signed-matrix sum differs from `e(A,B) - e(B,A)`.
    pub route_mismatches: u64,
}

pub fn sampled_signed_sum_check(t: &Tournament, samples: u64, seed: u64) -> SignedSumReport {
    let n = t.n();
    let zero = SignedSumReport {
        pairs_checked: 0,
        violations: 0,
        route_mismatches: 0,
    };
    if n < 2 {
        return zero;
    }
    let m = t.signed_adjacency();
    sample_chunks(samples, seed, |count, rng| {
        let mut r = zero;
        for _ in 0..count {
            let (a, b) = draw_pair(n, rng);
            let bs: Vec<usize> = b.iter().collect();
            let sum: i64 = a
                .iter()
                .map(|i| bs.iter().map(|&j| m.get(i, j) as i64).sum::<i64>())
                .sum();
            let (sa, sb) = (a.len() as i64, b.len() as i64);
            let rhs = sa * sb * n as i64 - sa * sb * (sb - 1);
            r.pairs_checked += 1;
            if sum * sum > rhs {
                r.violations += 1;
            }
            let e_ab = edge_count(t, &a, &b).expect("disjoint") as i64;
            if sum != 2 * e_ab - sa * sb {
                r.route_mismatches += 1;
            }
        }
        r
    })
    .into_iter()
    .fold(zero, |x, y| SignedSumReport {
        pairs_checked: x.pairs_checked + y.pairs_checked,
        violations: x.violations + y.violations,
        route_mismatches: x.route_mismatches + y.route_mismatches,
    })
}

/// `n^{3/2} log2(2n)`.
pub fn ranking_gap_bound(n: usize) -> f64 {
    let n = n as f64;
    n.powf(1.5) * (2.0 * n).log2()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SigmaGap {
    /// `C(T,σ) - C(T,σ')`.
    pub gap: i64,
    pub bound: f64,
    pub holds: bool,
}

pub fn check_sigma_gap(t: &Tournament, sigma: &Ranking) -> Result<SigmaGap> {
    let forward = count_consistent(t, sigma)? as i64;
    let backward = count_consistent(t, &reverse_ranking(sigma))? as i64;
    let gap = forward - backward;
    let bound = ranking_gap_bound(t.n());
    Ok(SigmaGap {
        gap,
        bound,
        holds: (gap as f64) <= bound,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TheoremBound {
    pub n: usize,
    pub lhs: f64,
    /// `binom(n,2)/2 + n^{3/2} log2(2n)`.
    pub rhs: f64,
    pub holds: bool,
    /// `rhs ≥ binom(n,2)`: every tournament satisfies the bound trivially.
    pub vacuous: bool,
}

pub fn check_theorem_bound(n: usize, c_value: u64) -> TheoremBound {
    let pairs = binom2(n) as f64;
    let rhs = pairs / 2.0 + ranking_gap_bound(n);
    let lhs = c_value as f64;
    TheoremBound {
        n,
        lhs,
        rhs,
        holds: lhs <= rhs,
        vacuous: rhs >= pairs,
    }
}

/// Smallest `n ≡ 3 (mod 4)` at which the ranking bound drops below `binom(n,2)`.
pub fn first_non_vacuous_order() -> usize {
    (3..)
        .step_by(4)
        .find(|&n| !check_theorem_bound(n, 0).vacuous)
        .expect("bound grows as n^{3/2} log n against n^2")
}
