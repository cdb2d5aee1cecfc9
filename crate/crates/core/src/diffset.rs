//! Skew Hadamard difference sets: construction of the Paley family,
//! verification, and equivalence under the affine group `Aut(G) ⋉ G`.
//!
//! Two sets are equivalent when `D1 = τ(D2) + g` for an automorphism `τ` and a
//! translation `g`. Over groups in which isomorphic Cayley digraphs are always
//! related by a group automorphism (CI-groups, e.g. `(Z/pZ)^3` for odd `p`),
//! inequivalent skew Hadamard difference sets give non-isomorphic tournaments.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::groups::{AbelianGroup, FiniteField, GroupElement};

/// Default cap on `|Aut(G)|` for [`enumerate_automorphisms`].
pub const DEFAULT_AUTOMORPHISM_BUDGET: u128 = 10_000_000;

/// A subset `D` of a finite abelian group, kept as sorted element indices.
///
/// A difference set never contains `0`, but affine images `τ(D) + g` of one
/// usually do, and those images are needed to state equivalence. The zero
/// element is therefore allowed here and rejected by [`is_shds`], [`is_skew`]
/// and Cayley construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CandidateSet {
    group: AbelianGroup,
    indices: Vec<usize>,
}

impl CandidateSet {
    /// Builds a set from element indices. Duplicates collapse.
    pub fn new(group: AbelianGroup, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut indices: Vec<usize> = indices.into_iter().collect();
        if let Some(&bad) = indices.iter().find(|&&i| i >= group.order()) {
            return Err(Error::IndexOutOfRange {
                index: bad,
                order: group.order(),
            });
        }
        indices.sort_unstable();
        indices.dedup();
        Ok(Self { group, indices })
    }

    pub fn from_elements<'a>(
        group: AbelianGroup,
        elements: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Result<Self> {
        let indices = elements
            .into_iter()
            .map(|x| group.index(x))
            .collect::<Result<Vec<_>>>()?;
        Self::new(group, indices)
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    /// Sorted element indices.
    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.indices.binary_search(&i).is_ok()
    }

    pub fn contains_zero(&self) -> bool {
        self.contains_index(0)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        self.indices
            .iter()
            .map(|&i| self.group.element(i).expect("stored indices are in range"))
    }

    /// `-D`.
    pub fn negate(&self) -> Self {
        let indices = self.indices.iter().map(|&i| self.group.neg_index(i));
        Self::new(self.group.clone(), indices).expect("negation stays in the group")
    }

    /// `D + g`.
    pub fn translate(&self, g: usize) -> Self {
        let indices = self.indices.iter().map(|&i| self.group.add_index(i, g));
        Self::new(self.group.clone(), indices).expect("translation stays in the group")
    }

    /// `τ(D) + g`.
    pub fn affine_image(&self, tau: &GroupAutomorphism, g: usize) -> Self {
        let indices = self
            .indices
            .iter()
            .map(|&i| self.group.add_index(tau.apply_index(&self.group, i), g));
        Self::new(self.group.clone(), indices).expect("affine image stays in the group")
    }
}

impl fmt::Display for CandidateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{{", self.group)?;
        for (i, x) in self.indices.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

/// The nonzero squares of a field of order `q = 3 (mod 4)`.
pub fn paley_set(field: &FiniteField) -> Result<CandidateSet> {
    let q = field.order();
    if q % 4 != 3 {
        return Err(Error::NotSkewOrder { q });
    }
    CandidateSet::from_elements(field.additive_group().clone(), &field.nonzero_squares())
}

/// How often each group element occurs as `d1 - d2` over ordered pairs of
/// distinct members.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceProfile {
    /// Indexed by element index; `counts[0]` is always zero.
    counts: Vec<u64>,
}

impl DifferenceProfile {
    pub fn count(&self, g: usize) -> u64 {
        self.counts[g]
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    /// Counts of the nonzero elements, sorted. Invariant under affine maps.
    pub fn sorted_counts(&self) -> Vec<u64> {
        let mut c = self.counts[1..].to_vec();
        c.sort_unstable();
        c
    }
}

pub fn difference_profile(d: &CandidateSet) -> DifferenceProfile {
    let g = d.group();
    let mut counts = vec![0u64; g.order()];
    for &a in d.indices() {
        for &b in d.indices() {
            if a != b {
                counts[g.sub_index(a, b)] += 1;
            }
        }
    }
    DifferenceProfile { counts }
}

/// `G = {0} ⊔ D ⊔ -D`.
pub fn is_skew(d: &CandidateSet) -> bool {
    skew_violation(d).is_none()
}

/// First pair of element indices breaking the skew partition, if any:
/// `(0, 0)` when `0 ∈ D`, `(x, -x)` when both or neither lie in `D`.
pub fn skew_violation(d: &CandidateSet) -> Option<(usize, usize)> {
    let g = d.group();
    if d.contains_zero() {
        return Some((0, 0));
    }
    (1..g.order()).find_map(|x| {
        let nx = g.neg_index(x);
        (d.contains_index(x) == d.contains_index(nx)).then_some((x.min(nx), x.max(nx)))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "snake_case")]
pub enum ShdsFailure {
    /// Group order is not `3 (mod 4)` (or below 3).
    OrderCongruence {
        order: usize,
    },
    ContainsZero,
    Size {
        expected: usize,
        actual: usize,
    },
    Frequency {
        element: usize,
        expected: u64,
        actual: u64,
    },
    Skewness {
        element: usize,
        negative: usize,
    },
}

impl fmt::Display for ShdsFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::OrderCongruence { order } => write!(f, "group order {order} is not 3 mod 4"),
            Self::ContainsZero => write!(f, "set contains the identity"),
            Self::Size { expected, actual } => write!(f, "|D| = {actual}, expected {expected}"),
            Self::Frequency {
                element,
                expected,
                actual,
            } => write!(
                f,
                "difference {element} occurs {actual} times, expected {expected}"
            ),
            Self::Skewness { element, negative } => {
                write!(
                    f,
                    "elements {element} and {negative} break the skew partition"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShdsVerdict {
    pub is_shds: bool,
    pub failure: Option<ShdsFailure>,
}

/// Checks order congruence, `0 ∉ D`, `|D| = (n-1)/2`, every nonzero difference
/// occurring exactly `(n-3)/4` times, and skewness, reporting the first failure
/// in that order.
pub fn is_shds(d: &CandidateSet) -> ShdsVerdict {
    let fail = |failure| ShdsVerdict {
        is_shds: false,
        failure: Some(failure),
    };
    let n = d.group().order();
    if n < 3 || n % 4 != 3 {
        return fail(ShdsFailure::OrderCongruence { order: n });
    }
    if d.contains_zero() {
        return fail(ShdsFailure::ContainsZero);
    }
    if d.len() != (n - 1) / 2 {
        return fail(ShdsFailure::Size {
            expected: (n - 1) / 2,
            actual: d.len(),
        });
    }
    let lambda = ((n - 3) / 4) as u64;
    let profile = difference_profile(d);
    if let Some(g) = (1..n).find(|&g| profile.count(g) != lambda) {
        return fail(ShdsFailure::Frequency {
            element: g,
            expected: lambda,
            actual: profile.count(g),
        });
    }
    if let Some((x, nx)) = skew_violation(d) {
        return fail(ShdsFailure::Skewness {
            element: x,
            negative: nx,
        });
    }
    ShdsVerdict {
        is_shds: true,
        failure: None,
    }
}

/// An automorphism of a cyclic or elementary abelian group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupAutomorphism {
    /// `x ↦ unit · x` on `Z_n`, `gcd(unit, n) = 1`.
    Unit { modulus: u64, unit: u64 },
    /// `x ↦ A x` on `(Z/pZ)^k`, `A` invertible, stored row-major.
    Matrix { p: u64, k: usize, entries: Vec<u64> },
}

impl GroupAutomorphism {
    pub fn identity(group: &AbelianGroup) -> Result<Self> {
        classify_shape(group).map(|shape| match shape {
            Shape::Cyclic(n) => Self::Unit {
                modulus: n,
                unit: 1,
            },
            Shape::Elementary(p, k) => {
                let mut entries = vec![0; k * k];
                for i in 0..k {
                    entries[i * k + i] = 1;
                }
                Self::Matrix { p, k, entries }
            }
        })
    }

    pub fn apply(&self, x: &GroupElement) -> GroupElement {
        let coords = x.coords();
        let image: Vec<i64> = match self {
            Self::Unit { modulus, unit } => {
                vec![(coords[0] as u128 * *unit as u128 % *modulus as u128) as i64]
            }
            Self::Matrix { p, k, entries } => (0..*k)
                .map(|r| {
                    let s: u64 = (0..*k).map(|c| entries[r * k + c] * coords[c] % p).sum();
                    (s % p) as i64
                })
                .collect(),
        };
        let moduli = match self {
            Self::Unit { modulus, .. } => vec![*modulus],
            Self::Matrix { p, k, .. } => vec![*p; *k],
        };
        AbelianGroup::new(&moduli)
            .and_then(|g| g.reduce(&image))
            .expect("automorphism image is well formed")
    }

    pub fn apply_index(&self, group: &AbelianGroup, i: usize) -> usize {
        match self {
            Self::Unit { modulus, unit } => (i as u128 * *unit as u128 % *modulus as u128) as usize,
            Self::Matrix { .. } => {
                let x = group.element(i).expect("index in range");
                group.index(&self.apply(&x)).expect("image in group")
            }
        }
    }

    pub fn inverse(&self) -> Self {
        match self {
            Self::Unit { modulus, unit } => Self::Unit {
                modulus: *modulus,
                unit: mod_inverse(*unit, *modulus).expect("unit is invertible"),
            },
            Self::Matrix { p, k, entries } => Self::Matrix {
                p: *p,
                k: *k,
                entries: matrix_inverse(entries, *k, *p).expect("matrix is invertible"),
            },
        }
    }

    pub fn compose(&self, other: &Self) -> Self {
        match (self, other) {
            (Self::Unit { modulus, unit: a }, Self::Unit { unit: b, .. }) => Self::Unit {
                modulus: *modulus,
                unit: (*a as u128 * *b as u128 % *modulus as u128) as u64,
            },
            (Self::Matrix { p, k, entries: a }, Self::Matrix { entries: b, .. }) => {
                let mut c = vec![0; k * k];
                for i in 0..*k {
                    for j in 0..*k {
                        c[i * k + j] = (0..*k)
                            .map(|l| a[i * k + l] * b[l * k + j] % p)
                            .sum::<u64>()
                            % p;
                    }
                }
                Self::Matrix {
                    p: *p,
                    k: *k,
                    entries: c,
                }
            }
            _ => panic!("composing automorphisms of different groups"),
        }
    }
}

impl fmt::Display for GroupAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Unit { unit, .. } => write!(f, "x -> {unit}x"),
            Self::Matrix { k, entries, .. } => {
                write!(f, "x -> [")?;
                for r in 0..*k {
                    if r > 0 {
                        write!(f, "; ")?;
                    }
                    let row: Vec<String> = entries[r * k..(r + 1) * k]
                        .iter()
                        .map(u64::to_string)
                        .collect();
                    write!(f, "{}", row.join(" "))?;
                }
                write!(f, "] x")
            }
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Shape {
    Cyclic(u64),
    Elementary(u64, usize),
}

fn classify_shape(group: &AbelianGroup) -> Result<Shape> {
    match group.moduli() {
        [n] => Ok(Shape::Cyclic(*n)),
        _ => group
            .elementary_prime()
            .map(|(p, k)| Shape::Elementary(p, k))
            .ok_or_else(|| Error::UnsupportedGroup(group.to_string())),
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    (old_r == 1).then(|| old_s.rem_euclid(m as i128) as u64)
}

/// Gauss-Jordan inverse over `F_p`; `None` when singular.
fn matrix_inverse(a: &[u64], k: usize, p: u64) -> Option<Vec<u64>> {
    let w = 2 * k;
    let mut m = vec![0u64; k * w];
    for r in 0..k {
        m[r * w..r * w + k].copy_from_slice(&a[r * k..(r + 1) * k]);
        m[r * w + k + r] = 1;
    }
    for col in 0..k {
        let pivot = (col..k).find(|&r| m[r * w + col] != 0)?;
        for j in 0..w {
            m.swap(col * w + j, pivot * w + j);
        }
        let inv = mod_inverse(m[col * w + col], p)?;
        for j in 0..w {
            m[col * w + j] = m[col * w + j] * inv % p;
        }
        for r in 0..k {
            let factor = m[r * w + col];
            if r == col || factor == 0 {
                continue;
            }
            for j in 0..w {
                m[r * w + j] = (m[r * w + j] + (p - factor) * m[col * w + j]) % p;
            }
        }
    }
    Some(
        (0..k)
            .flat_map(|r| m[r * w + k..r * w + w].to_vec())
            .collect(),
    )
}

fn is_invertible(a: &[u64], k: usize, p: u64) -> bool {
    let mut m = a.to_vec();
    for col in 0..k {
        let Some(pivot) = (col..k).find(|&r| m[r * k + col] != 0) else {
            return false;
        };
        for j in 0..k {
            m.swap(col * k + j, pivot * k + j);
        }
        let inv = mod_inverse(m[col * k + col], p).expect("p is prime");
        for r in col + 1..k {
            let factor = m[r * k + col] * inv % p;
            if factor == 0 {
                continue;
            }
            for j in col..k {
                m[r * k + j] = (m[r * k + j] + (p - factor) * m[col * k + j]) % p;
            }
        }
    }
    true
}

/// `|Aut(G)|` for the supported shapes.
pub fn automorphism_count(group: &AbelianGroup) -> Result<u128> {
    Ok(match classify_shape(group)? {
        Shape::Cyclic(n) => (1..=n).filter(|&u| gcd(u, n) == 1).count() as u128,
        Shape::Elementary(p, k) => {
            let q = (p as u128).pow(k as u32);
            (0..k as u32).map(|i| q - (p as u128).pow(i)).product()
        }
    })
}

/// Iterator over the automorphisms of a cyclic or elementary abelian group.
///
/// Cyclic groups yield the units in increasing order. `(Z/pZ)^k` with `k ≥ 2`
/// yields invertible matrices in row-major lexicographic order, first entry
/// most significant.
#[derive(Debug, Clone)]
pub struct Automorphisms {
    shape: Shape,
    next: u128,
    end: u128,
}

impl Iterator for Automorphisms {
    type Item = GroupAutomorphism;

    fn next(&mut self) -> Option<Self::Item> {
        while self.next < self.end {
            let r = self.next;
            self.next += 1;
            match self.shape {
                Shape::Cyclic(n) => {
                    let u = r as u64;
                    if gcd(u, n) == 1 {
                        return Some(GroupAutomorphism::Unit {
                            modulus: n,
                            unit: u,
                        });
                    }
                }
                Shape::Elementary(p, k) => {
                    let mut entries = vec![0u64; k * k];
                    let mut rest = r;
                    for e in entries.iter_mut().rev() {
                        *e = (rest % p as u128) as u64;
                        rest /= p as u128;
                    }
                    if is_invertible(&entries, k, p) {
                        return Some(GroupAutomorphism::Matrix { p, k, entries });
                    }
                }
            }
        }
        None
    }
}

pub fn enumerate_automorphisms(group: &AbelianGroup, budget: u128) -> Result<Automorphisms> {
    let shape = classify_shape(group)?;
    let size = automorphism_count(group)?;
    if size > budget {
        return Err(Error::BudgetExceeded { size, budget });
    }
    let (next, end) = match shape {
        Shape::Cyclic(n) => (1, n as u128),
        Shape::Elementary(p, k) => (0, (p as u128).pow((k * k) as u32)),
    };
    Ok(Automorphisms { shape, next, end })
}

/// Search configuration for [`are_equivalent`].
#[derive(Debug, Clone, Copy)]
pub struct EquivalenceSearch {
    pub budget: u128,
    /// Compare sizes and sorted difference profiles before enumerating.
    pub precheck: bool,
}

impl Default for EquivalenceSearch {
    fn default() -> Self {
        Self {
            budget: DEFAULT_AUTOMORPHISM_BUDGET,
            precheck: true,
        }
    }
}

/// `(τ, g)` with `D1 = τ(D2) + g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub automorphism: GroupAutomorphism,
    pub translation: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceOutcome {
    pub witness: Option<Equivalence>,
    /// Affine maps `(τ, g)` compared before the search stopped.
    pub maps_examined: u64,
}

/// Decides whether `D1 = τ(D2) + g` for some automorphism `τ` and translation
/// `g`. Automorphisms are tried in enumeration order and translations in
/// index order; the first witness is returned.
pub fn are_equivalent(
    d1: &CandidateSet,
    d2: &CandidateSet,
    search: EquivalenceSearch,
) -> Result<EquivalenceOutcome> {
    let group = d1.group();
    if group != d2.group() {
        return Err(Error::GroupMismatch(
            group.to_string(),
            d2.group().to_string(),
        ));
    }
    let automorphisms = enumerate_automorphisms(group, search.budget)?;
    let none = EquivalenceOutcome {
        witness: None,
        maps_examined: 0,
    };
    if d1.len() != d2.len() {
        return Ok(none);
    }
    if search.precheck
        && difference_profile(d1).sorted_counts() != difference_profile(d2).sorted_counts()
    {
        return Ok(none);
    }

    let elements: Vec<GroupElement> = group.elements().collect();
    let target = d1.indices();
    let mut image: Vec<GroupElement> = Vec::with_capacity(d2.len());
    let mut shifted: Vec<usize> = Vec::with_capacity(d2.len());
    let mut examined = 0u64;
    for tau in automorphisms {
        image.clear();
        image.extend(d2.indices().iter().map(|&i| tau.apply(&elements[i])));
        for (g, ge) in elements.iter().enumerate() {
            examined += 1;
            shifted.clear();
            shifted.extend(
                image
                    .iter()
                    .map(|x| group.index(&group.add(x, ge)).expect("sum in group")),
            );
            shifted.sort_unstable();
            if shifted == target {
                return Ok(EquivalenceOutcome {
                    witness: Some(Equivalence {
                        automorphism: tau,
                        translation: g,
                    }),
                    maps_examined: examined,
                });
            }
        }
    }
    Ok(EquivalenceOutcome {
        witness: None,
        maps_examined: examined,
    })
}

/// One equivalence class: input positions, the lowest first.
pub type EquivalenceClass = Vec<usize>;

/// Partitions `sets` into equivalence classes via union-find over pairwise
/// [`are_equivalent`] checks. Classes are ordered by representative.
pub fn classify(sets: &[CandidateSet], search: EquivalenceSearch) -> Result<Vec<EquivalenceClass>> {
    let Some(first) = sets.first() else {
        return Ok(Vec::new());
    };
    if let Some(other) = sets.iter().find(|s| s.group() != first.group()) {
        return Err(Error::GroupMismatch(
            first.group().to_string(),
            other.group().to_string(),
        ));
    }
    enumerate_automorphisms(first.group(), search.budget)?;

    let pairs: Vec<(usize, usize)> = (0..sets.len())
        .flat_map(|i| (i + 1..sets.len()).map(move |j| (i, j)))
        .collect();
    let verdicts = pairs
        .par_iter()
        .map(|&(i, j)| are_equivalent(&sets[i], &sets[j], search).map(|o| o.witness.is_some()))
        .collect::<Result<Vec<bool>>>()?;

    let mut parent: Vec<usize> = (0..sets.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for (&(i, j), &eq) in pairs.iter().zip(&verdicts) {
        if eq {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            // keep the smaller index as root
            let (lo, hi) = (ri.min(rj), ri.max(rj));
            parent[hi] = lo;
        }
    }
    let mut classes: Vec<EquivalenceClass> = Vec::new();
    let mut slot = vec![usize::MAX; sets.len()];
    for i in 0..sets.len() {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = classes.len();
            classes.push(Vec::new());
        }
        classes[slot[r]].push(i);
    }
    Ok(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::XorShift64Star;

    fn z(n: u64) -> AbelianGroup {
        AbelianGroup::cyclic(n).unwrap()
    }

    fn set(g: &AbelianGroup, idx: &[usize]) -> CandidateSet {
        CandidateSet::new(g.clone(), idx.iter().copied()).unwrap()
    }

    fn paley(p: u64, k: u32) -> CandidateSet {
        paley_set(&FiniteField::new(p, k).unwrap()).unwrap()
    }

    #[test]
    fn paley_sets() {
        assert_eq!(paley(7, 1).indices(), &[1, 2, 4]);
        assert_eq!(paley(11, 1).indices(), &[1, 3, 4, 5, 9]);
        assert_eq!(paley(3, 3).len(), 13);
        assert!(matches!(
            paley_set(&FiniteField::new(13, 1).unwrap()),
            Err(Error::NotSkewOrder { q: 13 })
        ));
    }

    #[test]
    fn profiles() {
        let p7 = difference_profile(&paley(7, 1));
        assert_eq!(p7.counts(), &[0, 1, 1, 1, 1, 1, 1]);
        let g = z(5);
        assert_eq!(difference_profile(&set(&g, &[1])).counts(), &[0; 5]);
        assert_eq!(
            difference_profile(&set(&g, &[1, 2])).counts(),
            &[0, 1, 0, 0, 1]
        );
    }

    #[test]
    fn skewness() {
        assert!(is_skew(&paley(7, 1)));
        assert_eq!(paley(7, 1).negate().indices(), &[3, 5, 6]);
        assert!(!is_skew(&set(&z(5), &[1, 4])));
        let empty = CandidateSet::new(AbelianGroup::trivial(), []).unwrap();
        assert!(is_skew(&empty));
        assert_eq!(skew_violation(&set(&z(7), &[0, 1, 2])), Some((0, 0)));
    }

    #[test]
    fn shds_verdicts() {
        assert!(is_shds(&paley(7, 1)).is_shds);
        let p11 = paley(11, 1);
        assert!(is_shds(&p11).is_shds);
        assert!((1..11).all(|g| difference_profile(&p11).count(g) == 2));

        // {1,2,3}: -D = {6,5,4} is a skew complement, but difference 1 occurs twice
        let v = is_shds(&set(&z(7), &[1, 2, 3]));
        assert_eq!(
            v.failure,
            Some(ShdsFailure::Frequency {
                element: 1,
                expected: 1,
                actual: 2
            })
        );
        assert!(matches!(
            is_shds(&set(&z(5), &[1, 2])).failure,
            Some(ShdsFailure::OrderCongruence { order: 5 })
        ));
        assert!(matches!(
            is_shds(&set(&z(7), &[1, 2])).failure,
            Some(ShdsFailure::Size {
                expected: 3,
                actual: 2
            })
        ));
        assert_eq!(
            is_shds(&paley(7, 1).translate(3)).failure,
            Some(ShdsFailure::ContainsZero)
        );
    }

    #[test]
    fn paley_family_is_shds() {
        for (p, k) in [(3, 1), (7, 1), (11, 1), (19, 1), (23, 1), (3, 3)] {
            let d = paley(p, k);
            assert!(is_shds(&d).is_shds, "F_{p}^{k}");
            let n = d.group().order() as u64;
            let prof = difference_profile(&d);
            assert_eq!(prof.total(), (d.len() * (d.len() - 1)) as u64);
            for g in 1..d.group().order() {
                let ng = d.group().neg_index(g);
                assert_eq!(prof.count(g) + prof.count(ng), (n - 3) / 2);
            }
        }
    }

    #[test]
    fn automorphism_counts() {
        assert_eq!(
            enumerate_automorphisms(&z(7), DEFAULT_AUTOMORPHISM_BUDGET)
                .unwrap()
                .count(),
            6
        );
        assert_eq!(
            enumerate_automorphisms(&z(12), DEFAULT_AUTOMORPHISM_BUDGET)
                .unwrap()
                .count(),
            4
        );
        let g = AbelianGroup::elementary(3, 3).unwrap();
        let q = 27u128;
        let formula = (q - 1) * (q - 3) * (q - 9);
        assert_eq!(formula, 11232);
        assert_eq!(automorphism_count(&g).unwrap(), formula);
        let all: Vec<_> = enumerate_automorphisms(&g, DEFAULT_AUTOMORPHISM_BUDGET)
            .unwrap()
            .collect();
        assert_eq!(all.len() as u128, formula);
        let g22 = AbelianGroup::elementary(2, 2).unwrap();
        assert_eq!(enumerate_automorphisms(&g22, 100).unwrap().count(), 6);
        assert!(matches!(
            enumerate_automorphisms(&AbelianGroup::new(&[2, 4]).unwrap(), 100),
            Err(Error::UnsupportedGroup(_))
        ));
        assert!(matches!(
            enumerate_automorphisms(
                &AbelianGroup::elementary(7, 3).unwrap(),
                DEFAULT_AUTOMORPHISM_BUDGET
            ),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn automorphisms_are_homomorphisms() {
        let g = AbelianGroup::elementary(3, 3).unwrap();
        let mut rng = XorShift64Star::new(5);
        for tau in enumerate_automorphisms(&g, DEFAULT_AUTOMORPHISM_BUDGET)
            .unwrap()
            .step_by(97)
        {
            for _ in 0..10 {
                let x = g.element(rng.below(27) as usize).unwrap();
                let y = g.element(rng.below(27) as usize).unwrap();
                assert_eq!(
                    tau.apply(&g.add(&x, &y)),
                    g.add(&tau.apply(&x), &tau.apply(&y))
                );
            }
            let inv = tau.inverse();
            assert_eq!(tau.compose(&inv), GroupAutomorphism::identity(&g).unwrap());
        }
    }

    #[test]
    fn equivalence_examples() {
        let d = paley(7, 1);
        let s = EquivalenceSearch::default();
        let w = are_equivalent(&d, &d, s).unwrap().witness.unwrap();
        assert_eq!(
            w.automorphism,
            GroupAutomorphism::Unit {
                modulus: 7,
                unit: 1
            }
        );
        assert_eq!(w.translation, 0);

        let w = are_equivalent(&d, &d.translate(3), s)
            .unwrap()
            .witness
            .unwrap();
        assert_eq!(
            d.translate(3).affine_image(&w.automorphism, w.translation),
            d
        );

        let w = are_equivalent(&d, &d.negate(), s).unwrap().witness.unwrap();
        assert_eq!(
            w.automorphism,
            GroupAutomorphism::Unit {
                modulus: 7,
                unit: 3
            }
        );
        assert_eq!(w.translation, 0);

        let other = set(&z(7), &[1, 2, 3]);
        assert!(are_equivalent(&d, &other, s).unwrap().witness.is_none());
        let mismatch = are_equivalent(&d, &paley(11, 1), s);
        assert!(matches!(mismatch, Err(Error::GroupMismatch(..))));
    }

    #[test]
    fn equivalence_is_symmetric_via_inverse_witness() {
        let g = AbelianGroup::elementary(3, 3).unwrap();
        let d = paley(3, 3);
        let auts: Vec<_> = enumerate_automorphisms(&g, DEFAULT_AUTOMORPHISM_BUDGET)
            .unwrap()
            .collect();
        let mut rng = XorShift64Star::new(11);
        for _ in 0..5 {
            let tau = &auts[rng.below(auts.len() as u64) as usize];
            let img = d.affine_image(tau, rng.below(27) as usize);
            let w = are_equivalent(&d, &img, EquivalenceSearch::default())
                .unwrap()
                .witness
                .unwrap();
            assert_eq!(img.affine_image(&w.automorphism, w.translation), d);
            // D2 = τ⁻¹(D1) - τ⁻¹(g)
            let inv = w.automorphism.inverse();
            let back_shift = g.neg_index(inv.apply_index(&g, w.translation));
            assert_eq!(d.affine_image(&inv, back_shift), img);
        }
    }

    #[test]
    fn affine_images_of_shds_stay_shds() {
        let mut rng = XorShift64Star::new(3);
        for (p, k) in [(7u64, 1u32), (11, 1), (19, 1), (3, 3)] {
            let d = paley(p, k);
            let g = d.group().clone();
            assert!(is_shds(&d.negate()).is_shds);
            let auts: Vec<_> = enumerate_automorphisms(&g, DEFAULT_AUTOMORPHISM_BUDGET)
                .unwrap()
                .collect();
            for _ in 0..20 {
                let tau = &auts[rng.below(auts.len() as u64) as usize];
                let t = rng.below(g.order() as u64) as usize;
                let img = d.affine_image(tau, t);
                // translates may hit 0; the difference profile is what survives
                let prof = difference_profile(&img);
                assert!((1..g.order()).all(|x| prof.count(x) == ((g.order() - 3) / 4) as u64));
                if !img.contains_zero() {
                    assert_eq!(is_shds(&img).is_shds, is_skew(&img));
                }
                assert!(is_shds(&d.affine_image(tau, 0)).is_shds);
            }
        }
    }

    #[test]
    fn classify_examples() {
        let d = paley(7, 1);
        let classes = classify(
            &[d.clone(), d.translate(3), d.negate()],
            EquivalenceSearch::default(),
        )
        .unwrap();
        assert_eq!(classes, vec![vec![0, 1, 2]]);
        assert!(classify(&[], EquivalenceSearch::default())
            .unwrap()
            .is_empty());
        let classes = classify(
            &[
                set(&z(7), &[1, 2, 3]),
                d.clone(),
                set(&z(7), &[4, 5, 6]),
                d.negate(),
            ],
            EquivalenceSearch::default(),
        )
        .unwrap();
        assert_eq!(classes, vec![vec![0, 2], vec![1, 3]]);
        assert!(matches!(
            classify(&[d, paley(11, 1)], EquivalenceSearch::default()),
            Err(Error::GroupMismatch(..))
        ));
    }
}
