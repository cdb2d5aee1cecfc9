//! Tournaments as packed bit matrices, Cayley tournaments, double regularity
//! and the exact Gram identities of the adjacency matrix.

use serde::Serialize;

use crate::bitset::{and_count, words_for, VertexSet, WORD};
use crate::diffset::{skew_violation, CandidateSet};
use crate::error::{Error, Result};
use crate::rng::XorShift64Star;

/// Largest order accepted by [`is_isomorphic_small`].
pub const ISOMORPHISM_CAP: usize = 12;

/// An oriented complete graph on `0..n`.
///
/// Both the out-rows and the in-rows (columns) are stored, each packed into
/// 64-bit words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    words: usize,
    out: Vec<u64>,
    inn: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Tournament(n = {})", self.n)?;
        for x in 0..self.n {
            let row: String = (0..self.n)
                .map(|y| if self.has_edge(x, y) { '1' } else { '0' })
                .collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}

impl Tournament {
    /// `x_wins(x, y)` is consulted once per pair `x < y` and orients the edge
    /// `x → y` when true, `y → x` otherwise.
    pub fn from_fn(n: usize, mut x_wins: impl FnMut(usize, usize) -> bool) -> Self {
        let words = words_for(n);
        let mut t = Self {
            n,
            words,
            out: vec![0; n * words],
            inn: vec![0; n * words],
        };
        for x in 0..n {
            for y in x + 1..n {
                if x_wins(x, y) {
                    t.set_edge(x, y);
                } else {
                    t.set_edge(y, x);
                }
            }
        }
        t
    }

    fn set_edge(&mut self, x: usize, y: usize) {
        self.out[x * self.words + y / WORD] |= 1 << (y % WORD);
        self.inn[y * self.words + x / WORD] |= 1 << (x % WORD);
    }

    /// Validates a full adjacency matrix: zero diagonal and exactly one of
    /// `(x, y)`, `(y, x)` for every pair.
    #[allow(clippy::needless_range_loop)]
    pub fn from_adjacency(rows: &[Vec<bool>]) -> Result<Self> {
        let n = rows.len();
        for (x, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotTournament(format!(
                    "row {x} has {} entries, expected {n}",
                    row.len()
                )));
            }
            if row[x] {
                return Err(Error::NotTournament(format!("loop at vertex {x}")));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                match (rows[x][y], rows[y][x]) {
                    (true, true) => {
                        return Err(Error::NotTournament(format!(
                            "both ({x},{y}) and ({y},{x}) present"
                        )))
                    }
                    (false, false) => {
                        return Err(Error::NotTournament(format!(
                            "neither ({x},{y}) nor ({y},{x}) present"
                        )))
                    }
                    _ => {}
                }
            }
        }
        Ok(Self::from_fn(n, |x, y| rows[x][y]))
    }

    /// `x → y` iff `x < y`.
    pub fn transitive(n: usize) -> Self {
        Self::from_fn(n, |_, _| true)
    }

    /// Each pair oriented by an independent fair coin, pairs visited as
    /// `(0,1), (0,2), ..., (1,2), ...`.
    pub fn random(n: usize, seed: u64) -> Self {
        let mut rng = XorShift64Star::new(seed);
        Self::from_fn(n, |_, _| rng.coin())
    }

    /// Image under the vertex bijection `v ↦ perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm.len(), self.n);
        let mut inv = vec![0; self.n];
        for (v, &w) in perm.iter().enumerate() {
            inv[w] = v;
        }
        Self::from_fn(self.n, |a, b| self.has_edge(inv[a], inv[b]))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.out[x * self.words + y / WORD] >> (y % WORD) & 1 == 1
    }

    /// Packed out-neighbourhood of `x`.
    pub fn out_row(&self, x: usize) -> &[u64] {
        &self.out[x * self.words..(x + 1) * self.words]
    }

    /// Packed in-neighbourhood of `x`.
    pub fn in_row(&self, x: usize) -> &[u64] {
        &self.inn[x * self.words..(x + 1) * self.words]
    }

    pub fn out_neighbors(&self, x: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.out_row(x).to_vec())
    }

    pub fn in_neighbors(&self, x: usize) -> VertexSet {
        VertexSet::from_words(self.n, self.in_row(x).to_vec())
    }

    pub fn out_degree(&self, x: usize) -> usize {
        self.out_row(x)
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum()
    }

    pub fn in_degree(&self, x: usize) -> usize {
        self.n - 1 - self.out_degree(x)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|x| self.out_degree(x)).collect()
    }

    /// A tournament is transitive iff its out-degrees are `0, 1, ..., n-1`.
    pub fn is_transitive(&self) -> bool {
        let mut d = self.out_degrees();
        d.sort_unstable();
        d.iter().enumerate().all(|(i, &x)| i == x)
    }

    fn check_pair(&self, x: usize, y: usize) -> Result<()> {
        for v in [x, y] {
            if v >= self.n {
                return Err(Error::VertexOutOfRange {
                    vertex: v,
                    n: self.n,
                });
            }
        }
        if x == y {
            return Err(Error::SameVertex(x));
        }
        Ok(())
    }

    /// `N⁺(x, y) = { z : x → z and y → z }`.
    pub fn common_out_neighbors(&self, x: usize, y: usize) -> Result<VertexSet> {
        self.check_pair(x, y)?;
        Ok(self.out_neighbors(x).intersection(&self.out_neighbors(y)))
    }

    /// `N⁻(x, y) = { z : z → x and z → y }`.
    pub fn common_in_neighbors(&self, x: usize, y: usize) -> Result<VertexSet> {
        self.check_pair(x, y)?;
        Ok(self.in_neighbors(x).intersection(&self.in_neighbors(y)))
    }

    fn common_out_count(&self, x: usize, y: usize) -> usize {
        and_count(self.out_row(x), self.out_row(y)) as usize
    }

    fn common_in_count(&self, x: usize, y: usize) -> usize {
        and_count(self.in_row(x), self.in_row(y)) as usize
    }

    /// `M̃ = 2M - (J - I)`.
    pub fn signed_adjacency(&self) -> SignedMatrix {
        let n = self.n;
        let mut entries = vec![0i8; n * n];
        for x in 0..n {
            for y in 0..n {
                if x != y {
                    entries[x * n + y] = if self.has_edge(x, y) { 1 } else { -1 };
                }
            }
        }
        SignedMatrix { n, entries }
    }

    /// Rows as `0`/`1` strings.
    pub fn to_rows(&self) -> Vec<String> {
        (0..self.n)
            .map(|x| {
                (0..self.n)
                    .map(|y| if self.has_edge(x, y) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }
}

/// `{0, ±1}` matrix with zero diagonal and `entry(x, y) = -entry(y, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedMatrix {
    n: usize,
    entries: Vec<i8>,
}

impl SignedMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i8 {
        self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[i8] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn is_antisymmetric(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| self.get(i, j) == -self.get(j, i)))
    }

    pub fn row_sum(&self, i: usize) -> i64 {
        self.row(i).iter().map(|&v| v as i64).sum()
    }
}

/// `Cay(G, D)`: vertex `i` is the group element with index `i` and `x → y`
/// iff `x - y ∈ D`. Requires `G = {0} ⊔ D ⊔ -D`.
pub fn cayley_tournament(d: &CandidateSet) -> Result<Tournament> {
    if let Some((a, b)) = skew_violation(d) {
        return Err(Error::NotSkew(a, b));
    }
    let g = d.group();
    let n = g.order();
    let mut member = vec![false; n];
    for &i in d.indices() {
        member[i] = true;
    }
    let t = Tournament::from_fn(n, |x, y| member[g.sub_index(x, y)]);
    debug_assert!(
        (0..n).all(|x| (0..n).all(|y| x == y || t.has_edge(x, y) == member[g.sub_index(x, y)]))
    );
    Ok(t)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum RegularityFailure {
    /// `n < 3` or `n ≠ 3 (mod 4)`, so `(n-3)/4` is not a count.
    Order { n: usize },
    Degree {
        vertex: usize,
        out_degree: usize,
        in_degree: usize,
        expected: usize,
    },
    CommonOut {
        x: usize,
        y: usize,
        count: usize,
        expected: usize,
    },
    CommonIn {
        x: usize,
        y: usize,
        count: usize,
        expected: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RegularityVerdict {
    pub doubly_regular: bool,
    pub failure: Option<RegularityFailure>,
    /// `(n-3)/4` when the order allows it.
    pub common_neighbors: Option<usize>,
}

/// `(n-1)/2`-regular with `|N⁺(x,y)| = |N⁻(x,y)| = (n-3)/4` for all pairs.
pub fn is_doubly_regular(t: &Tournament) -> RegularityVerdict {
    let n = t.n();
    let fail = |failure, lambda| RegularityVerdict {
        doubly_regular: false,
        failure: Some(failure),
        common_neighbors: lambda,
    };
    if n < 3 || n % 4 != 3 {
        return fail(RegularityFailure::Order { n }, None);
    }
    let (half, lambda) = ((n - 1) / 2, (n - 3) / 4);
    for v in 0..n {
        let (out_degree, in_degree) = (t.out_degree(v), t.in_degree(v));
        if out_degree != half || in_degree != half {
            return fail(
                RegularityFailure::Degree {
                    vertex: v,
                    out_degree,
                    in_degree,
                    expected: half,
                },
                Some(lambda),
            );
        }
    }
    for x in 0..n {
        for y in x + 1..n {
            let count = t.common_out_count(x, y);
            if count != lambda {
                return fail(
                    RegularityFailure::CommonOut {
                        x,
                        y,
                        count,
                        expected: lambda,
                    },
                    Some(lambda),
                );
            }
            let count = t.common_in_count(x, y);
            if count != lambda {
                return fail(
                    RegularityFailure::CommonIn {
                        x,
                        y,
                        count,
                        expected: lambda,
                    },
                    Some(lambda),
                );
            }
        }
    }
    RegularityVerdict {
        doubly_regular: true,
        failure: None,
        common_neighbors: Some(lambda),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EntryMismatch {
    pub row: usize,
    pub col: usize,
    pub expected: i64,
    pub actual: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub holds: bool,
    pub first_mismatch: Option<EntryMismatch>,
}

impl IdentityCheck {
    fn run(
        n: usize,
        expected: impl Fn(usize, usize) -> i64,
        actual: impl Fn(usize, usize) -> i64,
    ) -> Self {
        for i in 0..n {
            for j in 0..n {
                let (e, a) = (expected(i, j), actual(i, j));
                if e != a {
                    return Self {
                        holds: false,
                        first_mismatch: Some(EntryMismatch {
                            row: i,
                            col: j,
                            expected: e,
                            actual: a,
                        }),
                    };
                }
            }
        }
        Self {
            holds: true,
            first_mismatch: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GramVerdict {
    /// All identities attempted and all hold.
    pub holds: bool,
    /// `M Mᵀ = ((n+1)/4) I + ((n-3)/4) J`; `None` when `n ≠ 3 (mod 4)`.
    pub adjacency: Option<IdentityCheck>,
    /// `M̃ M̃ᵀ = n I - J`.
    pub signed_rows: IdentityCheck,
    /// `M̃ᵀ M̃ = n I - J`: distinct columns of `M̃` have inner product `-1`.
    pub signed_columns: IdentityCheck,
    pub note: Option<String>,
}

/// Exact integer verification of the Gram identities satisfied by doubly
/// regular tournaments.
pub fn verify_gram_identities(t: &Tournament) -> GramVerdict {
    let n = t.n();
    let m: Vec<i64> = (0..n * n)
        .map(|e| t.has_edge(e / n, e % n) as i64)
        .collect();
    let s = t.signed_adjacency();
    let ni = n as i64;
    let target = |i: usize, j: usize| if i == j { ni - 1 } else { -1 };

    let (adjacency, note) = if n >= 3 && n % 4 == 3 {
        let (a, b) = (((n + 1) / 4) as i64, ((n - 3) / 4) as i64);
        let check = IdentityCheck::run(
            n,
            |i, j| if i == j { a + b } else { b },
            |i, j| (0..n).map(|k| m[i * n + k] * m[j * n + k]).sum(),
        );
        (Some(check), None)
    } else {
        (
            None,
            Some(format!(
                "n = {n} is not 3 mod 4; only the signed identities were checked"
            )),
        )
    };
    let signed_rows = IdentityCheck::run(n, target, |i, j| {
        (0..n)
            .map(|k| s.get(i, k) as i64 * s.get(j, k) as i64)
            .sum()
    });
    let signed_columns = IdentityCheck::run(n, target, |j, l| {
        (0..n)
            .map(|i| s.get(i, j) as i64 * s.get(i, l) as i64)
            .sum()
    });
    let holds =
        adjacency.as_ref().is_some_and(|c| c.holds) && signed_rows.holds && signed_columns.holds;
    GramVerdict {
        holds,
        adjacency,
        signed_rows,
        signed_columns,
        note,
    }
}

/// Searches for a bijection `f` with `x → y` in `t1` iff `f(x) → f(y)` in
/// `t2`. Candidates are tried in increasing order, so the returned witness is
/// the lexicographically least one.
pub fn is_isomorphic_small(
    t1: &Tournament,
    t2: &Tournament,
    cap: usize,
) -> Result<Option<Vec<usize>>> {
    let n = t1.n();
    for t in [t1, t2] {
        if t.n() > cap {
            return Err(Error::TooLarge {
                what: "brute-force isomorphism",
                n: t.n(),
                cap,
                hint: "for Cayley tournaments over CI-groups decide difference-set equivalence instead",
            });
        }
    }
    if t2.n() != n {
        return Ok(None);
    }
    let (d1, d2) = (t1.out_degrees(), t2.out_degrees());
    let (mut s1, mut s2) = (d1.clone(), d2.clone());
    s1.sort_unstable();
    s2.sort_unstable();
    if s1 != s2 {
        return Ok(None);
    }
    let profile = |t: &Tournament| -> Vec<usize> {
        (0..n * n)
            .map(|e| {
                let (x, y) = (e / n, e % n);
                if x == y {
                    0
                } else {
                    t.common_out_count(x, y)
                }
            })
            .collect()
    };
    let (p1, p2) = (profile(t1), profile(t2));

    struct Search<'a> {
        n: usize,
        t1: &'a Tournament,
        t2: &'a Tournament,
        d1: &'a [usize],
        d2: &'a [usize],
        p1: &'a [usize],
        p2: &'a [usize],
        map: Vec<usize>,
        used: Vec<bool>,
    }
    impl Search<'_> {
        fn extend(&mut self, x: usize) -> bool {
            if x == self.n {
                return true;
            }
            for w in 0..self.n {
                if self.used[w] || self.d1[x] != self.d2[w] {
                    continue;
                }
                let consistent = (0..x).all(|y| {
                    let v = self.map[y];
                    self.t1.has_edge(x, y) == self.t2.has_edge(w, v)
                        && self.p1[x * self.n + y] == self.p2[w * self.n + v]
                });
                if !consistent {
                    continue;
                }
                self.map[x] = w;
                self.used[w] = true;
                if self.extend(x + 1) {
                    return true;
                }
                self.used[w] = false;
            }
            false
        }
    }
    let mut search = Search {
        n,
        t1,
        t2,
        d1: &d1,
        d2: &d2,
        p1: &p1,
        p2: &p2,
        map: vec![0; n],
        used: vec![false; n],
    };
    Ok(search.extend(0).then_some(search.map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffset::{is_shds, is_skew, paley_set};
    use crate::groups::{AbelianGroup, FiniteField};

    fn paley(p: u64, k: u32) -> Tournament {
        cayley_tournament(&paley_set(&FiniteField::new(p, k).unwrap()).unwrap()).unwrap()
    }

    fn three_cycle() -> Tournament {
        let d = CandidateSet::new(AbelianGroup::cyclic(3).unwrap(), [1]).unwrap();
        cayley_tournament(&d).unwrap()
    }

    #[test]
    fn cayley_examples() {
        let t = three_cycle();
        assert!(t.has_edge(1, 0) && t.has_edge(2, 1) && t.has_edge(0, 2));
        let p7 = paley(7, 1);
        assert!((0..7).all(|v| p7.out_degree(v) == 3));
        let bad = CandidateSet::new(AbelianGroup::cyclic(4).unwrap(), [1, 2]).unwrap();
        assert!(matches!(cayley_tournament(&bad), Err(Error::NotSkew(..))));
    }

    #[test]
    fn adjacency_validation() {
        let both = vec![vec![false, true], vec![true, false]];
        let err = Tournament::from_adjacency(&both).unwrap_err().to_string();
        assert!(err.contains("(0,1)"), "{err}");
        let neither = vec![vec![false, false], vec![false, false]];
        assert!(Tournament::from_adjacency(&neither).is_err());
        let lp = vec![vec![true]];
        assert!(Tournament::from_adjacency(&lp).is_err());
        let ok = vec![vec![false, false], vec![true, false]];
        assert!(Tournament::from_adjacency(&ok).unwrap().has_edge(1, 0));
    }

    #[test]
    fn regularity_examples() {
        let v = is_doubly_regular(&paley(7, 1));
        assert!(v.doubly_regular);
        assert_eq!(v.common_neighbors, Some(1));
        let v = is_doubly_regular(&three_cycle());
        assert!(v.doubly_regular);
        assert_eq!(v.common_neighbors, Some(0));
        let v = is_doubly_regular(&Tournament::transitive(3));
        assert!(matches!(
            v.failure,
            Some(RegularityFailure::Degree {
                vertex: 0,
                out_degree: 2,
                ..
            })
        ));
    }

    #[test]
    fn common_neighbor_examples() {
        let p7 = paley(7, 1);
        assert_eq!(p7.common_out_neighbors(0, 1).unwrap().len(), 1);
        let c = three_cycle();
        for (x, y) in [(0, 1), (0, 2), (1, 2)] {
            assert!(c.common_out_neighbors(x, y).unwrap().is_empty());
            assert!(c.common_in_neighbors(x, y).unwrap().is_empty());
        }
        let p11 = paley(11, 1);
        // brute force from the edge predicate
        let out = (0..11)
            .filter(|&z| p11.has_edge(0, z) && p11.has_edge(1, z))
            .count();
        let inn = (0..11)
            .filter(|&z| p11.has_edge(z, 0) && p11.has_edge(z, 1))
            .count();
        assert_eq!((out, inn), (2, 2));
        assert_eq!(p11.common_out_neighbors(0, 1).unwrap().len(), 2);
        assert_eq!(p11.common_in_neighbors(0, 1).unwrap().len(), 2);
        assert!(matches!(
            p11.common_out_neighbors(3, 3),
            Err(Error::SameVertex(3))
        ));
    }

    #[test]
    fn signed_adjacency_examples() {
        let s = three_cycle().signed_adjacency();
        assert_eq!((s.get(1, 0), s.get(2, 1), s.get(0, 2)), (1, 1, 1));
        assert_eq!((s.get(0, 1), s.get(0, 0)), (-1, 0));
        for t in [
            paley(7, 1),
            Tournament::random(9, 1),
            Tournament::transitive(5),
        ] {
            assert!(t.signed_adjacency().is_antisymmetric());
        }
        let s7 = paley(7, 1).signed_adjacency();
        assert!((0..7).all(|i| s7.row_sum(i) == 0));
    }

    #[test]
    fn gram_identities() {
        assert!(verify_gram_identities(&paley(7, 1)).holds);
        assert!(verify_gram_identities(&paley(3, 3)).holds);
        let v = verify_gram_identities(&Tournament::transitive(7));
        assert!(!v.holds);
        let mm = v.adjacency.unwrap();
        // row 0 has out-degree 6 while (n+1)/4 + (n-3)/4 = 3
        assert_eq!(
            mm.first_mismatch,
            Some(EntryMismatch {
                row: 0,
                col: 0,
                expected: 3,
                actual: 6
            })
        );
        let v = verify_gram_identities(&Tournament::random(8, 2));
        assert!(!v.holds && v.adjacency.is_none() && v.note.is_some());
    }

    #[test]
    fn gram_agrees_with_double_regularity() {
        let mut corpus = vec![
            three_cycle(),
            paley(7, 1),
            paley(11, 1),
            paley(19, 1),
            Tournament::transitive(7),
        ];
        corpus.extend((0..40).map(|s| Tournament::random(3 + (s % 9) as usize, s)));
        let g7 = AbelianGroup::cyclic(7).unwrap();
        for mask in 0u32..64 {
            let idx: Vec<usize> = (1..7).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            let d = CandidateSet::new(g7.clone(), idx).unwrap();
            if is_skew(&d) {
                corpus.push(cayley_tournament(&d).unwrap());
            }
        }
        for t in &corpus {
            assert_eq!(
                verify_gram_identities(t).holds,
                is_doubly_regular(t).doubly_regular,
                "{t:?}"
            );
        }
    }

    #[test]
    fn cayley_tournaments_are_vertex_transitive() {
        let d = paley_set(&FiniteField::new(3, 3).unwrap()).unwrap();
        let g = d.group().clone();
        let t = cayley_tournament(&d).unwrap();
        for shift in [1usize, 5, 13, 26] {
            let perm: Vec<usize> = (0..27).map(|x| g.add_index(x, shift)).collect();
            assert_eq!(t.relabel(&perm), t);
        }
    }

    #[test]
    fn proposition_on_z7_three_subsets() {
        let g = AbelianGroup::cyclic(7).unwrap();
        let mut skew = 0;
        for a in 1..7 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    let d = CandidateSet::new(g.clone(), [a, b, c]).unwrap();
                    match cayley_tournament(&d) {
                        Ok(t) => {
                            skew += 1;
                            assert_eq!(is_doubly_regular(&t).doubly_regular, is_shds(&d).is_shds);
                        }
                        Err(_) => assert!(!is_skew(&d)),
                    }
                }
            }
        }
        assert_eq!(skew, 8);
    }

    #[test]
    fn random_tournaments() {
        assert_eq!(Tournament::random(1, 0).n(), 1);
        assert_eq!(Tournament::random(16, 42), Tournament::random(16, 42));
        assert_ne!(Tournament::random(16, 42), Tournament::random(16, 43));
        // out-degree of vertex 0 is Binomial(9, 1/2): mean 4.5, sd of the
        // sample mean sqrt(9/4/1000) ≈ 0.047
        let mean = (0..1000u64)
            .map(|s| Tournament::random(10, s).out_degree(0) as f64)
            .sum::<f64>()
            / 1000.0;
        assert!(
            (mean - 4.5).abs() < 3.0 * (9.0f64 / 4.0 / 1000.0).sqrt(),
            "{mean}"
        );
    }

    #[test]
    fn isomorphism_examples() {
        let c = three_cycle();
        let relabeled = c.relabel(&[2, 0, 1]);
        let w = is_isomorphic_small(&c, &relabeled, ISOMORPHISM_CAP)
            .unwrap()
            .unwrap();
        assert!((0..3).all(|x| (0..3).all(|y| c.has_edge(x, y) == relabeled.has_edge(w[x], w[y]))));
        assert!(
            is_isomorphic_small(&c, &Tournament::transitive(3), ISOMORPHISM_CAP)
                .unwrap()
                .is_none()
        );
        assert!(matches!(
            is_isomorphic_small(&paley(19, 1), &paley(19, 1), ISOMORPHISM_CAP),
            Err(Error::TooLarge { .. })
        ));
        let r = Tournament::random(10, 9);
        let perm = [3, 1, 4, 0, 9, 2, 6, 5, 8, 7];
        let w = is_isomorphic_small(&r, &r.relabel(&perm), ISOMORPHISM_CAP)
            .unwrap()
            .unwrap();
        let img = r.relabel(&perm);
        assert!((0..10).all(|x| (0..10).all(|y| r.has_edge(x, y) == img.has_edge(w[x], w[y]))));
    }
}
