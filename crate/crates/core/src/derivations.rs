//! The tilt derivations D^(n), the shift derivations ∂_i, and composite
//! applications of them to monomials.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use num_bigint::BigInt;
use num_traits::One;

use crate::algebra::Polynomial;
use crate::error::{Error, Result};
use crate::index::{IndexSymbol, MultiIndex, NVec};
use crate::util::{binomial, factorial, int};
use crate::Q;

/// A derivation of the polynomial algebra.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum DerivationSymbol {
    /// D^(n); D^(0) raises pure indices, D^(n) for n ≠ 0 differentiates in z_n.
    Tilt(NVec),
    /// ∂_i, counted from 1.
    Shift(usize),
}

impl DerivationSymbol {
    pub fn apply(&self, dim: usize, p: &Polynomial) -> Polynomial {
        match self {
            DerivationSymbol::Tilt(n) => apply_tilt(n, p),
            DerivationSymbol::Shift(i) => apply_shift(dim, *i, p),
        }
    }
}

fn tilt_monomial(n: &NVec, g: &MultiIndex, c: &Q, out: &mut Polynomial) {
    if n.is_zero() {
        for (s, cnt) in g.entries() {
            if let IndexSymbol::Pure(k) = s {
                let h = g.moved(s, &IndexSymbol::Pure(k + 1)).expect("entry present");
                out.add_term(h, c * int((k + 1) as u64 * *cnt as u64));
            }
        }
    } else {
        let s = IndexSymbol::Spatial(n.clone());
        let cnt = g.get(&s);
        if cnt > 0 {
            out.add_term(g.adjust(&s, -1).expect("entry present"), c * int(cnt));
        }
    }
}

fn shift_monomial(dim: usize, i: usize, g: &MultiIndex, c: &Q, out: &mut Polynomial) {
    let ei = IndexSymbol::Spatial(NVec::unit(dim, i));
    for (s, cnt) in g.entries() {
        match s {
            IndexSymbol::Pure(k) => {
                let h = g
                    .moved(s, &IndexSymbol::Pure(k + 1))
                    .expect("entry present")
                    .adjust(&ei, 1)
                    .expect("increment");
                out.add_term(h, c * int((k + 1) as u64 * *cnt as u64));
            }
            IndexSymbol::Spatial(n) => {
                let h = g.moved(s, &IndexSymbol::Spatial(n.inc(i))).expect("entry present");
                out.add_term(h, c * int((n.get(i) + 1) as u64 * *cnt as u64));
            }
        }
    }
}

/// D^(n) applied to a polynomial.
pub fn apply_tilt(n: &NVec, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (g, c) in p.terms() {
        tilt_monomial(n, g, c, &mut out);
    }
    out
}

/// ∂_i applied to a polynomial (i counted from 1).
pub fn apply_shift(dim: usize, i: usize, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (g, c) in p.terms() {
        shift_monomial(dim, i, g, c, &mut out);
    }
    out
}

type DeriveKey = (NVec, Vec<NVec>, MultiIndex);

/// Memo table for ∂^m ∘ D^(n_1) ∘ … ∘ D^(n_r) applied to monomials.
///
/// Entries are pure functions of their key, so concurrent inserts of the same
/// key are harmless.
#[derive(Debug)]
pub struct RhoCache {
    dim: usize,
    table: Mutex<HashMap<DeriveKey, Arc<Polynomial>>>,
}

impl RhoCache {
    pub fn new(dim: usize) -> Self {
        RhoCache { dim, table: Mutex::new(HashMap::new()) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.table.lock().expect("cache poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// ∂^m ∘ Π_j D^(n_j) z^g without any normalization. `ns` must be sorted.
    pub fn derive(&self, m: &NVec, ns: &[NVec], g: &MultiIndex) -> Arc<Polynomial> {
        if m.is_zero() && ns.is_empty() {
            return Arc::new(Polynomial::monomial(g.clone()));
        }
        let key = (m.clone(), ns.to_vec(), g.clone());
        if let Some(hit) = self.table.lock().expect("cache poisoned").get(&key) {
            return hit.clone();
        }
        let value = if let Some(i) = m.first_nonzero() {
            let inner = self.derive(&m.dec(i).expect("nonzero"), ns, g);
            apply_shift(self.dim, i, &inner)
        } else if !self.spatial_orders_available(ns, g) {
            Polynomial::zero()
        } else {
            let inner = self.derive(m, &ns[1..], g);
            apply_tilt(&ns[0], &inner)
        };
        let value = Arc::new(value);
        self.table.lock().expect("cache poisoned").insert(key, value.clone());
        value
    }

    // D^(n) with n ≠ 0 consumes one z_n; D^(0) never creates spatial variables.
    fn spatial_orders_available(&self, ns: &[NVec], g: &MultiIndex) -> bool {
        let mut i = 0;
        while i < ns.len() {
            let mut j = i;
            while j < ns.len() && ns[j] == ns[i] {
                j += 1;
            }
            if !ns[i].is_zero() && g.get(&IndexSymbol::Spatial(ns[i].clone())) < (j - i) as u32 {
                return false;
            }
            i = j;
        }
        true
    }

    /// ρ̄(E_m F_J)(p) where J is the multiset of `letters`:
    /// z^{Σγ}/(m!·J!) · ∂^m ∘ Π D^(n) applied to p.
    pub fn rho_word_apply(&self, m: &NVec, letters: &[(MultiIndex, NVec)], p: &Polynomial) -> Polynomial {
        let mut sorted: Vec<&(MultiIndex, NVec)> = letters.iter().collect();
        sorted.sort();
        let mut norm = m.factorial();
        let mut run = 1u32;
        for w in sorted.windows(2) {
            if w[0] == w[1] {
                run += 1;
                norm *= BigInt::from(run);
            } else {
                run = 1;
            }
        }
        let raw = self.rho_raw_apply(m, letters, p);
        raw.scale(&Q::new(BigInt::one(), norm))
    }

    /// The unnormalized variant for the raw word (𝟙⊗∂)^m · Π (z^γ⊗D^(n)):
    /// z^{Σγ} · ∂^m ∘ Π D^(n) applied to p.
    pub fn rho_raw_apply(&self, m: &NVec, letters: &[(MultiIndex, NVec)], p: &Polynomial) -> Polynomial {
        let mut ns: Vec<NVec> = letters.iter().map(|l| l.1.clone()).collect();
        ns.sort();
        let prefactor = letters.iter().fold(MultiIndex::empty(), |acc, l| acc.add(&l.0));
        let mut out = Polynomial::zero();
        for (g, c) in p.terms() {
            self.derive(m, &ns, g).add_scaled_into(c, &mut out);
        }
        out.shift(&prefactor)
    }
}

/// ρ̄(E_m F_J)(p) with a throwaway cache; see [`RhoCache::rho_word_apply`].
pub fn rho_word_apply(dim: usize, m: &NVec, letters: &[(MultiIndex, NVec)], p: &Polynomial) -> Polynomial {
    RhoCache::new(dim).rho_word_apply(m, letters, p)
}

/// Ordered tuples (m_1, …, m_l) of nonzero vectors summing to `m`.
fn compositions(m: &NVec, parts: usize) -> Vec<Vec<NVec>> {
    if parts == 0 {
        return if m.is_zero() { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in m.below() {
        if first.is_zero() || (parts == 1 && first != *m) {
            continue;
        }
        let rest = m.checked_sub(&first).expect("below");
        for mut tail in compositions(&rest, parts - 1) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

/// Closed forms for single variables:
/// (1/m!)∂^m (D^(0))^ℓ z_k and (1/m!)∂^m z_n (the latter needs ℓ = 0).
pub fn closed_form_monomial(dim: usize, sym: &IndexSymbol, m: &NVec, ell: u32) -> Result<Polynomial> {
    match sym {
        IndexSymbol::Spatial(n) => {
            if ell != 0 {
                return Err(Error::Config("closed form for z_n needs ell = 0".into()));
            }
            let top = n.add(m);
            Ok(Polynomial::term(MultiIndex::spatial(top.clone()), int(top.binomial(n))))
        }
        IndexSymbol::Pure(k0) => {
            let k = k0 + ell;
            let lead = int(factorial(k) / factorial(*k0));
            if m.is_zero() {
                return Ok(Polynomial::term(MultiIndex::pure(k), lead));
            }
            let mut out = Polynomial::zero();
            for l in 1..=m.norm() {
                let c = &lead * int(binomial(k + l, k));
                for parts in compositions(m, l as usize) {
                    let g = MultiIndex::from_entries(
                        parts
                            .into_iter()
                            .map(|v| (IndexSymbol::Spatial(v), 1))
                            .chain(std::iter::once((IndexSymbol::Pure(k + l), 1))),
                    );
                    out.add_term(g, c.clone());
                }
            }
            debug_assert!(dim == m.dim());
            Ok(out)
        }
    }
}
