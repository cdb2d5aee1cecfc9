//! Finite abelian groups in direct-product form and small finite fields
//! `F_{p^k}` layered over the elementary abelian group `(Z/pZ)^k`.
//!
//! Elements are numbered by a mixed-radix encoding with `coords[0]` the most
//! significant digit. Every vertex numbering and file in this crate depends on
//! that encoding, so it must not change.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An element of an [`AbelianGroup`], stored as canonical residues.
///
/// The derived ordering is lexicographic on coordinates, which coincides with
/// the ordering of element indices inside one group.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    coords: Vec<u64>,
}

impl GroupElement {
    pub fn coords(&self) -> &[u64] {
        &self.coords
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// `Z_{m_1} x Z_{m_2} x ... x Z_{m_r}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
    order: usize,
}

impl AbelianGroup {
    /// Builds the direct product of cyclic groups of the given orders.
    pub fn new(moduli: &[u64]) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::InvalidGroup("empty list of moduli".into()));
        }
        let mut order: usize = 1;
        for &m in moduli {
            if m < 2 {
                return Err(Error::InvalidGroup(format!("modulus {m} is below 2")));
            }
            order = usize::try_from(m)
                .ok()
                .and_then(|m| order.checked_mul(m))
                .ok_or_else(|| Error::InvalidGroup("group order overflows".into()))?;
        }
        Ok(Self {
            moduli: moduli.to_vec(),
            order,
        })
    }

    pub fn cyclic(n: u64) -> Result<Self> {
        Self::new(&[n])
    }

    /// `(Z/pZ)^k`. `p` is not required to be prime here.
    pub fn elementary(p: u64, k: usize) -> Result<Self> {
        Self::new(&vec![p; k])
    }

    /// The group of order one. It has no cyclic factors.
    pub fn trivial() -> Self {
        Self {
            moduli: Vec::new(),
            order: 1,
        }
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_cyclic(&self) -> bool {
        self.moduli.len() == 1
    }

    /// `Some((p, k))` when the group is `(Z/pZ)^k` for a prime `p`.
    pub fn elementary_prime(&self) -> Option<(u64, usize)> {
        let p = *self.moduli.first()?;
        (is_prime(p) && self.moduli.iter().all(|&m| m == p)).then_some((p, self.moduli.len()))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            coords: vec![0; self.moduli.len()],
        }
    }

    /// Reduces arbitrary integer coordinates into a canonical element.
    pub fn reduce(&self, coords: &[i64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        let coords = coords
            .iter()
            .zip(&self.moduli)
            .map(|(&c, &m)| c.rem_euclid(m as i64) as u64)
            .collect();
        Ok(GroupElement { coords })
    }

    /// Wraps already-canonical residues, rejecting anything out of range.
    pub fn element_from_coords(&self, coords: &[u64]) -> Result<GroupElement> {
        self.check_len(coords.len())?;
        if coords.iter().zip(&self.moduli).any(|(&c, &m)| c >= m) {
            return Err(Error::NotCanonical(coords.to_vec()));
        }
        Ok(GroupElement {
            coords: coords.to_vec(),
        })
    }

    fn check_len(&self, len: usize) -> Result<()> {
        if len != self.moduli.len() {
            return Err(Error::InvalidGroup(format!(
                "element has {len} coordinates, group {self} has {}",
                self.moduli.len()
            )));
        }
        Ok(())
    }

    pub fn contains(&self, x: &GroupElement) -> bool {
        x.coords.len() == self.moduli.len()
            && x.coords.iter().zip(&self.moduli).all(|(&c, &m)| c < m)
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .zip(&y.coords)
            .zip(&self.moduli)
            .map(|((&a, &b), &m)| (a + b) % m)
            .collect();
        GroupElement { coords }
    }

    pub fn neg(&self, x: &GroupElement) -> GroupElement {
        let coords = x
            .coords
            .iter()
            .zip(&self.moduli)
            .map(|(&a, &m)| (m - a) % m)
            .collect();
        GroupElement { coords }
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.add(x, &self.neg(y))
    }

    /// Mixed-radix index of `x`, `coords[0]` most significant.
    pub fn index(&self, x: &GroupElement) -> Result<usize> {
        if !self.contains(x) {
            return Err(Error::NotCanonical(x.coords.clone()));
        }
        Ok(self.index_unchecked(&x.coords))
    }

    fn index_unchecked(&self, coords: &[u64]) -> usize {
        coords
            .iter()
            .zip(&self.moduli)
            .fold(0usize, |acc, (&c, &m)| acc * m as usize + c as usize)
    }

    /// Inverse of [`AbelianGroup::index`].
    pub fn element(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange {
                index,
                order: self.order,
            });
        }
        Ok(self.element_unchecked(index))
    }

    fn element_unchecked(&self, mut index: usize) -> GroupElement {
        let mut coords = vec![0; self.moduli.len()];
        for (c, &m) in coords.iter_mut().zip(&self.moduli).rev() {
            *c = (index % m as usize) as u64;
            index /= m as usize;
        }
        GroupElement { coords }
    }

    /// All elements in index order.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(|i| self.element_unchecked(i))
    }

    /// `x + y` on indices.
    pub fn add_index(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.element_unchecked(x), self.element_unchecked(y));
        self.index_unchecked(&self.add(&a, &b).coords)
    }

    /// `x - y` on indices.
    pub fn sub_index(&self, x: usize, y: usize) -> usize {
        let (a, b) = (self.element_unchecked(x), self.element_unchecked(y));
        self.index_unchecked(&self.sub(&a, &b).coords)
    }

    /// `-x` on indices.
    pub fn neg_index(&self, x: usize) -> usize {
        let a = self.element_unchecked(x);
        self.index_unchecked(&self.neg(&a).coords)
    }

    /// Full subtraction table, `table[x * n + y] = x - y`.
    pub fn difference_table(&self) -> Vec<usize> {
        let n = self.order;
        let elems: Vec<GroupElement> = self.elements().collect();
        let mut table = Vec::with_capacity(n * n);
        for x in &elems {
            for y in &elems {
                table.push(self.index_unchecked(&self.sub(x, y).coords));
            }
        }
        table
    }
}

impl fmt::Display for AbelianGroup {
    /// Canonical spec string: `Z7`, `Z3^3`, `Z2xZ4`, `Z1` for the trivial group.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.moduli.as_slice() {
            [] => write!(f, "Z1"),
            [m] => write!(f, "Z{m}"),
            [m, rest @ ..] if rest.iter().all(|r| r == m) => {
                write!(f, "Z{m}^{}", self.moduli.len())
            }
            ms => {
                for (i, m) in ms.iter().enumerate() {
                    if i > 0 {
                        write!(f, "x")?;
                    }
                    write!(f, "Z{m}")?;
                }
                Ok(())
            }
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An element of `F_{p^k}` as `k` coefficients over `F_p`, constant term first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: Vec<u64>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

/// `F_{p^k} = F_p[x] / (f)` for the lexicographically smallest monic
/// irreducible `f` of degree `k` (coefficients compared constant term first).
///
/// The additive group is `(Z/pZ)^k`. A field element with coefficients
/// `a_0, ..., a_{k-1}` has group coordinates `(a_{k-1}, ..., a_0)`, so its
/// group index is `a_0 + a_1 p + ... + a_{k-1} p^{k-1}`. For `k = 1` the
/// index is the residue itself.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteField {
    p: u64,
    k: u32,
    /// Non-leading coefficients of the monic modulus, constant term first.
    modulus: Vec<u64>,
    order: u64,
    group: AbelianGroup,
}

impl FiniteField {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidGroup(
                "field degree must be at least 1".into(),
            ));
        }
        let order = p
            .checked_pow(k)
            .filter(|&q| q < 1 << 31)
            .ok_or_else(|| Error::InvalidGroup(format!("field F_{p}^{k} is too large")))?;
        let modulus = smallest_irreducible(p, k).ok_or(Error::NoIrreducible { p, k })?;
        let group = AbelianGroup::elementary(p, k as usize)?;
        Ok(Self {
            p,
            k,
            modulus,
            order,
            group,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Non-leading coefficients of the modulus polynomial, constant term first.
    pub fn modulus_poly(&self) -> &[u64] {
        &self.modulus
    }

    pub fn additive_group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            coeffs: vec![0; self.k as usize],
        }
    }

    pub fn one(&self) -> FieldElement {
        let mut e = self.zero();
        e.coeffs[0] = 1;
        e
    }

    /// Field element with the given group index.
    pub fn from_index(&self, mut index: u64) -> Result<FieldElement> {
        if index >= self.order {
            return Err(Error::IndexOutOfRange {
                index: index as usize,
                order: self.order as usize,
            });
        }
        let mut coeffs = vec![0; self.k as usize];
        for c in coeffs.iter_mut() {
            *c = index % self.p;
            index /= self.p;
        }
        Ok(FieldElement { coeffs })
    }

    pub fn index(&self, a: &FieldElement) -> u64 {
        a.coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c)
    }

    pub fn to_group_element(&self, a: &FieldElement) -> GroupElement {
        GroupElement {
            coords: a.coeffs.iter().rev().copied().collect(),
        }
    }

    pub fn from_group_element(&self, x: &GroupElement) -> Result<FieldElement> {
        if !self.group.contains(x) {
            return Err(Error::NotCanonical(x.coords.clone()));
        }
        Ok(FieldElement {
            coeffs: x.coords.iter().rev().copied().collect(),
        })
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order).map(|i| self.from_index(i).expect("index in range"))
    }

    pub fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let coeffs = a
            .coeffs
            .iter()
            .zip(&b.coeffs)
            .map(|(&x, &y)| (x + y) % self.p)
            .collect();
        FieldElement { coeffs }
    }

    pub fn neg(&self, a: &FieldElement) -> FieldElement {
        let coeffs = a.coeffs.iter().map(|&x| (self.p - x) % self.p).collect();
        FieldElement { coeffs }
    }

    /// Polynomial product reduced by the modulus.
    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.p;
        let k = self.k as usize;
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        // x^k = -(c_0 + c_1 x + ... + c_{k-1} x^{k-1})
        for d in (k..prod.len()).rev() {
            let t = prod[d];
            if t == 0 {
                continue;
            }
            prod[d] = 0;
            for (i, &c) in self.modulus.iter().enumerate() {
                let slot = &mut prod[d - k + i];
                *slot = (*slot + (p - t) * c) % p;
            }
        }
        prod.truncate(k);
        FieldElement { coeffs: prod }
    }

    /// Square-and-multiply.
    pub fn pow(&self, a: &FieldElement, mut e: u64) -> FieldElement {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// `{ a^2 : a != 0 }` as elements of the additive group.
    pub fn nonzero_squares(&self) -> BTreeSet<GroupElement> {
        self.elements()
            .filter(|a| !a.is_zero())
            .map(|a| self.to_group_element(&self.mul(&a, &a)))
            .collect()
    }
}

/// Remainder of `a` modulo the monic polynomial `g` over `F_p`. Both are
/// full coefficient vectors, constant term first.
fn poly_rem(a: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let dg = g.len() - 1;
    let mut r = a.to_vec();
    while r.len() > dg {
        let t = r.pop().expect("nonempty");
        if t == 0 {
            continue;
        }
        let shift = r.len() - dg;
        for (i, &c) in g[..dg].iter().enumerate() {
            r[shift + i] = (r[shift + i] + (p - t) * c % p) % p;
        }
    }
    r
}

/// Monic polynomials of degree `d` in lexicographic order of their
/// non-leading coefficients compared constant term first.
fn monic_polys(p: u64, d: u32) -> impl Iterator<Item = Vec<u64>> {
    let count = p.pow(d);
    (0..count).map(move |mut r| {
        let mut coeffs = vec![0u64; d as usize + 1];
        for i in (0..d as usize).rev() {
            coeffs[i] = r % p;
            r /= p;
        }
        coeffs[d as usize] = 1;
        coeffs
    })
}

fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = (f.len() - 1) as u32;
    (1..=k / 2).all(|d| monic_polys(p, d).all(|g| poly_rem(f, &g, p).iter().any(|&c| c != 0)))
}

fn smallest_irreducible(p: u64, k: u32) -> Option<Vec<u64>> {
    monic_polys(p, k)
        .find(|f| is_irreducible(f, p))
        .map(|mut f| {
            f.pop();
            f
        })
}
