//! Multi-indices over the index set ℕ ⊔ ℕ^d∖{0}, with homogeneity, the
//! integer norm ‖·‖ and bounded enumeration.
//!
//! Invariants of [`MultiIndex`]:
//! - entries are sorted by [`IndexSymbol`] order (pure before spatial);
//! - no zero count is stored.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::Ratio;
use num_traits::One;
use smallvec::SmallVec;

use crate::util::{binomial, factorial};

/// Exact grade or homogeneity value.
pub type Grade = Ratio<i64>;

/// A vector of naturals of length `d`: a spatial index or a derivation order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct NVec(SmallVec<[u32; 3]>);

impl NVec {
    pub fn zero(dim: usize) -> Self {
        NVec(SmallVec::from_elem(0, dim))
    }

    /// The unit vector `e_i`, with `i` counted from 1.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.0[i - 1] = 1;
        v
    }

    pub fn from_slice(c: &[u32]) -> Self {
        NVec(SmallVec::from_slice(c))
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    /// Component `i`, counted from 1.
    pub fn get(&self, i: usize) -> u32 {
        self.0[i - 1]
    }

    /// The length |n| = Σ n_i.
    pub fn norm(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &NVec) -> NVec {
        NVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn checked_sub(&self, other: &NVec) -> Option<NVec> {
        let mut out = SmallVec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(NVec(out))
    }

    pub fn inc(&self, i: usize) -> NVec {
        let mut v = self.clone();
        v.0[i - 1] += 1;
        v
    }

    pub fn dec(&self, i: usize) -> Option<NVec> {
        let mut v = self.clone();
        v.0[i - 1] = v.0[i - 1].checked_sub(1)?;
        Some(v)
    }

    /// Componentwise `self ≤ other`.
    pub fn le(&self, other: &NVec) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// n! = Π n_i!.
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&c| factorial(c)).product()
    }

    /// binom(n, k) = Π binom(n_i, k_i).
    pub fn binomial(&self, k: &NVec) -> BigInt {
        self.0.iter().zip(&k.0).map(|(&a, &b)| binomial(a, b)).product()
    }

    /// Index of the first nonzero component (counted from 1).
    pub fn first_nonzero(&self) -> Option<usize> {
        self.0.iter().position(|&c| c != 0).map(|p| p + 1)
    }

    /// All vectors `k ≤ self` componentwise, in lexicographic order.
    pub fn below(&self) -> Vec<NVec> {
        let mut out = vec![NVec(SmallVec::new())];
        for &c in &self.0 {
            let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
            for v in &out {
                for x in 0..=c {
                    let mut w = v.clone();
                    w.0.push(x);
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }

    /// All vectors of dimension `dim` with |n| ≤ `max_norm`, in lexicographic order.
    pub fn all_up_to(dim: usize, max_norm: u32) -> Vec<NVec> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; dim];
        fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<NVec>) {
            if pos == cur.len() {
                out.push(NVec::from_slice(cur));
                return;
            }
            for x in 0..=left {
                cur[pos] = x;
                rec(pos + 1, left - x, cur, out);
            }
            cur[pos] = 0;
        }
        rec(0, max_norm, &mut cur, &mut out);
        out
    }

    /// All vectors of dimension `dim` with |n| = `norm` exactly.
    pub fn all_of_norm(dim: usize, norm: u32) -> Vec<NVec> {
        Self::all_up_to(dim, norm).into_iter().filter(|v| v.norm() == norm).collect()
    }
}

/// A variable index: pure `k ∈ ℕ` or spatial `n ∈ ℕ^d∖{0}`.
///
/// The derived order puts every pure symbol before every spatial one.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum IndexSymbol {
    Pure(u32),
    Spatial(NVec),
}

impl IndexSymbol {
    pub fn homogeneity(&self, alpha: Grade) -> Grade {
        match self {
            IndexSymbol::Pure(_) => alpha,
            IndexSymbol::Spatial(n) => Grade::from_integer(n.norm() as i64),
        }
    }
}

/// A finitely supported map from index symbols to positive counts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct MultiIndex {
    entries: Vec<(IndexSymbol, u32)>,
}

impl MultiIndex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// The unit multi-index `e_s`.
    pub fn unit(sym: IndexSymbol) -> Self {
        MultiIndex { entries: vec![(sym, 1)] }
    }

    pub fn pure(k: u32) -> Self {
        Self::unit(IndexSymbol::Pure(k))
    }

    pub fn spatial(n: NVec) -> Self {
        Self::unit(IndexSymbol::Spatial(n))
    }

    /// Builds a multi-index from arbitrary entries; repeated symbols add up
    /// and zero counts vanish.
    pub fn from_entries<I: IntoIterator<Item = (IndexSymbol, u32)>>(entries: I) -> Self {
        let mut v: Vec<(IndexSymbol, u32)> = entries.into_iter().filter(|e| e.1 > 0).collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut out: Vec<(IndexSymbol, u32)> = Vec::with_capacity(v.len());
        for (s, c) in v {
            match out.last_mut() {
                Some(last) if last.0 == s => last.1 += c,
                _ => out.push((s, c)),
            }
        }
        MultiIndex { entries: out }
    }

    pub fn entries(&self) -> &[(IndexSymbol, u32)] {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, sym: &IndexSymbol) -> u32 {
        match self.entries.binary_search_by(|e| e.0.cmp(sym)) {
            Ok(p) => self.entries[p].1,
            Err(_) => 0,
        }
    }

    /// Pointwise sum.
    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        let mut out = Vec::with_capacity(self.entries.len() + other.entries.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.entries, &other.entries);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((a[i].0.clone(), a[i].1 + b[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        MultiIndex { entries: out }
    }

    /// Pointwise difference, `None` if some count would become negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        let mut out = self.clone();
        for (s, c) in &other.entries {
            out = out.adjust(s, -(*c as i64))?;
        }
        Some(out)
    }

    /// `self ≤ other` pointwise.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        self.entries.iter().all(|(s, c)| other.get(s) >= *c)
    }

    /// Adds `delta` to the count of `sym`; `None` if the count turns negative.
    pub fn adjust(&self, sym: &IndexSymbol, delta: i64) -> Option<MultiIndex> {
        let mut entries = self.entries.clone();
        match entries.binary_search_by(|e| e.0.cmp(sym)) {
            Ok(p) => {
                let c = entries[p].1 as i64 + delta;
                match c.cmp(&0) {
                    Ordering::Less => return None,
                    Ordering::Equal => {
                        entries.remove(p);
                    }
                    Ordering::Greater => entries[p].1 = c as u32,
                }
            }
            Err(p) => match delta.cmp(&0) {
                Ordering::Less => return None,
                Ordering::Equal => {}
                Ordering::Greater => entries.insert(p, (sym.clone(), delta as u32)),
            },
        }
        Some(MultiIndex { entries })
    }

    /// `self − e_from + e_to`, `None` if `from` is absent.
    pub fn moved(&self, from: &IndexSymbol, to: &IndexSymbol) -> Option<MultiIndex> {
        self.adjust(from, -1)?.adjust(to, 1)
    }

    pub fn pure_count(&self) -> u32 {
        self.entries
            .iter()
            .filter(|e| matches!(e.0, IndexSymbol::Pure(_)))
            .map(|e| e.1)
            .sum()
    }

    pub fn spatial_count(&self) -> u32 {
        self.entries
            .iter()
            .filter(|e| matches!(e.0, IndexSymbol::Spatial(_)))
            .map(|e| e.1)
            .sum()
    }

    /// Σ_n |n|·γ(n) over the spatial entries.
    pub fn spatial_weight(&self) -> u32 {
        self.entries
            .iter()
            .map(|e| match &e.0 {
                IndexSymbol::Spatial(n) => n.norm() * e.1,
                IndexSymbol::Pure(_) => 0,
            })
            .sum()
    }

    pub fn max_pure(&self) -> Option<u32> {
        self.entries
            .iter()
            .filter_map(|e| match e.0 {
                IndexSymbol::Pure(k) => Some(k),
                IndexSymbol::Spatial(_) => None,
            })
            .max()
    }

    /// The spatial vectors in the support.
    pub fn spatial_support(&self) -> impl Iterator<Item = (&NVec, u32)> {
        self.entries.iter().filter_map(|e| match &e.0 {
            IndexSymbol::Spatial(n) => Some((n, e.1)),
            IndexSymbol::Pure(_) => None,
        })
    }

    /// |γ| = α·Σ_k γ(k) + Σ_n |n|·γ(n).
    pub fn homogeneity(&self, alpha: Grade) -> Grade {
        alpha * self.pure_count() as i64 + self.spatial_weight() as i64
    }

    /// ‖γ‖ = Σ_k (k−1)γ(k) − Σ_n γ(n).
    pub fn bar_norm(&self) -> i64 {
        self.entries
            .iter()
            .map(|e| match e.0 {
                IndexSymbol::Pure(k) => (k as i64 - 1) * e.1 as i64,
                IndexSymbol::Spatial(_) => -(e.1 as i64),
            })
            .sum()
    }

    /// If `self = e_n` for a spatial `n`, returns `n`.
    pub fn as_single_spatial(&self) -> Option<&NVec> {
        match self.entries.as_slice() {
            [(IndexSymbol::Spatial(n), 1)] => Some(n),
            _ => None,
        }
    }

    /// Membership in ℳ⁻: ‖γ‖ = −1 and γ is not a single spatial variable.
    pub fn in_m_minus(&self) -> bool {
        self.bar_norm() == -1 && self.as_single_spatial().is_none()
    }

    /// σ(γ) = Π_k (k!)^{γ(k)}.
    pub fn sigma(&self) -> BigInt {
        let mut acc = BigInt::one();
        for (s, c) in &self.entries {
            if let IndexSymbol::Pure(k) = s {
                for _ in 0..*c {
                    acc *= factorial(*k);
                }
            }
        }
        acc
    }

    /// Checks that every spatial vector has length `dim`.
    pub fn check_dim(&self, dim: usize) -> Option<usize> {
        self.spatial_support().map(|(n, _)| n.dim()).find(|&d| d != dim)
    }
}

/// Pointwise sum of two multi-indices.
pub fn mi_add(g1: &MultiIndex, g2: &MultiIndex) -> MultiIndex {
    g1.add(g2)
}

/// Homogeneity |γ| with respect to `alpha`.
pub fn homogeneity(g: &MultiIndex, alpha: Grade) -> Grade {
    g.homogeneity(alpha)
}

/// The norm ‖γ‖ together with the ℳ⁻ membership flag.
pub fn bar_norm(g: &MultiIndex) -> (i64, bool) {
    (g.bar_norm(), g.in_m_minus())
}

/// The symmetry factor σ(γ).
pub fn sigma(g: &MultiIndex) -> BigInt {
    g.sigma()
}

fn scaled(alpha: Grade, bound: Grade) -> (i64, i64, i64) {
    // homogeneities become integers once multiplied by the denominator q of α
    let (p, q) = (*alpha.numer(), *alpha.denom());
    let b = bound * q;
    let floor = b.numer().div_euclid(*b.denom());
    (p, q, floor)
}

/// Spatial parts: every multiset of nonzero vectors with Σ|n|·count ≤ `max_weight`.
fn spatial_parts(dim: usize, max_weight: i64) -> Vec<Vec<(NVec, u32)>> {
    let mut out = Vec::new();
    if max_weight < 0 {
        return out;
    }
    let vecs: Vec<NVec> = NVec::all_up_to(dim, max_weight as u32)
        .into_iter()
        .filter(|v| !v.is_zero())
        .collect();
    fn rec(
        i: usize,
        left: i64,
        vecs: &[NVec],
        cur: &mut Vec<(NVec, u32)>,
        out: &mut Vec<Vec<(NVec, u32)>>,
    ) {
        if i == vecs.len() {
            out.push(cur.clone());
            return;
        }
        let w = vecs[i].norm() as i64;
        let mut c = 0u32;
        loop {
            if c > 0 {
                cur.push((vecs[i].clone(), c));
            }
            rec(i + 1, left - w * c as i64, vecs, cur, out);
            if c > 0 {
                cur.pop();
            }
            c += 1;
            if w * c as i64 > left {
                break;
            }
        }
    }
    rec(0, max_weight, &vecs, &mut Vec::new(), &mut out);
    out
}

/// Partitions of `total` into at most `parts` positive parts, non-increasing.
fn partitions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    fn rec(left: u32, max: u32, parts: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if parts == 0 {
            return;
        }
        for x in (1..=max.min(left)).rev() {
            cur.push(x);
            rec(left - x, x, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(total, total, parts, &mut Vec::new(), &mut out);
    out
}

/// All multi-indices γ with |γ| ≤ `max_hom` and ‖γ‖ = `norm`, sorted.
///
/// Pure indices are bounded through |γ| = α(Σ_k kγ(k) − ‖γ‖) + Σ_n (|n|−α)γ(n):
/// once the spatial part and the pure count P are fixed, Σ_k kγ(k) = ‖γ‖ + P + S.
pub fn enumerate_by_norm(dim: usize, alpha: Grade, max_hom: Grade, norm: i64) -> Vec<MultiIndex> {
    let (p, q, budget) = scaled(alpha, max_hom);
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    for sp in spatial_parts(dim, budget / q) {
        let s: u32 = sp.iter().map(|e| e.1).sum();
        let used: i64 = sp.iter().map(|e| e.0.norm() as i64 * e.1 as i64).sum();
        let rem = budget - used * q;
        if rem < 0 {
            continue;
        }
        let pmax = rem / p;
        for pc in 0..=pmax as u32 {
            let w = norm + pc as i64 + s as i64;
            if w < 0 {
                continue;
            }
            let spatial = sp.iter().map(|(n, c)| (IndexSymbol::Spatial(n.clone()), *c));
            if pc == 0 {
                if w == 0 {
                    out.push(MultiIndex::from_entries(spatial));
                }
                continue;
            }
            for part in partitions(w as u32, pc) {
                let zeros = pc - part.len() as u32;
                let pure = part
                    .iter()
                    .map(|&k| (IndexSymbol::Pure(k), 1))
                    .chain(std::iter::once((IndexSymbol::Pure(0), zeros)));
                out.push(MultiIndex::from_entries(pure.chain(spatial.clone())));
            }
        }
    }
    out.sort();
    out
}

/// All multi-indices with |γ| ≤ `max_hom` and every pure index ≤ `max_pure`, sorted.
pub fn enumerate_by_homogeneity(
    dim: usize,
    alpha: Grade,
    max_hom: Grade,
    max_pure: u32,
) -> Vec<MultiIndex> {
    let (p, q, budget) = scaled(alpha, max_hom);
    let mut out = Vec::new();
    if budget < 0 {
        return out;
    }
    for sp in spatial_parts(dim, budget / q) {
        let used: i64 = sp.iter().map(|e| e.0.norm() as i64 * e.1 as i64).sum();
        let rem = budget - used * q;
        if rem < 0 {
            continue;
        }
        let pmax = (rem / p) as u32;
        // multisets of pure indices in 0..=max_pure of size ≤ pmax
        let mut cur = vec![0u32; max_pure as usize + 1];
        fn rec(
            k: usize,
            left: u32,
            cur: &mut Vec<u32>,
            sp: &[(NVec, u32)],
            out: &mut Vec<MultiIndex>,
        ) {
            if k == cur.len() {
                let pure = cur
                    .iter()
                    .enumerate()
                    .map(|(k, &c)| (IndexSymbol::Pure(k as u32), c));
                let spatial = sp.iter().map(|(n, c)| (IndexSymbol::Spatial(n.clone()), *c));
                out.push(MultiIndex::from_entries(pure.chain(spatial)));
                return;
            }
            for c in 0..=left {
                cur[k] = c;
                rec(k + 1, left - c, cur, sp, out);
            }
            cur[k] = 0;
        }
        rec(0, pmax, &mut cur, &sp, &mut out);
    }
    out.sort();
    out
}
