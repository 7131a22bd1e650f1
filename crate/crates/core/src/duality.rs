//! The graded dual of 𝒰(L): the basis Ē_mF̄_J = T(E_mF_J), the ∗-product,
//! Θ, the coproduct Δ_▷̄ dual to ▷̄, and the coaction of the dual on 𝒜.
//!
//! Tensor keys always name dual basis elements: a key (u, w) stands for
//! Ē_u⊗Ē_w, and a coaction key (u, b) for Ē_u⊗z^b.
//!
//! Everything here rests on one enumeration: given a target monomial z^a,
//! list every pair (u, b) with ⟨ρ̄(E_u)(z^b), z^a⟩ ≠ 0. The tilt letters of u
//! contribute the prefactor z^{Σγ}, so Σγ ≤ a; ρ̄ raises homogeneity by
//! exactly the grade of u, so grade(u) ≤ |a|; and the source b is recovered
//! from a − Σγ by undoing each derivation step. Candidates are then checked
//! by direct evaluation.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::Polynomial;
use crate::engine::{memo, Engine};
use crate::envelope::{BasisWord, FMono, UElement};
use crate::error::{Error, Result};
use crate::index::{enumerate_by_norm, Grade, IndexSymbol, MultiIndex, NVec};
use crate::postlie::{DLetter, LGenerator};
use crate::util::{add_into, int};
use crate::Q;

/// Coefficients of Ē_u⊗Ē_w.
pub type UTensor = BTreeMap<(BasisWord, BasisWord), Q>;

/// Coefficients of Ē_u⊗z^b.
pub type Coaction = BTreeMap<(BasisWord, MultiIndex), Q>;

/// T(E_mF_J) = m!·J!·E_mF_J.
pub fn t_map(u: &UElement) -> UElement {
    UElement::from_terms(u.terms().map(|(w, c)| (w.clone(), c * Q::from_integer(w.factorial()))))
}

/// ⟨u, Ē_w⟩: the E_w coordinate of u.
pub fn pairing_u(u: &UElement, w: &BasisWord) -> Q {
    u.coeff(w)
}

/// Ē_u ∗ Ē_v = Ē_{u+v}.
pub fn star(u: &BasisWord, v: &BasisWord) -> BasisWord {
    u.add(v)
}

/// The ∗-product on combinations of dual basis elements (coordinates in Ē).
pub fn star_u(u: &UElement, v: &UElement) -> UElement {
    let mut out = UElement::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            out.add_term(a.add(b), ca * cb);
        }
    }
    out
}

/// Componentwise ∗ on tensors.
pub fn tensor_star(x: &UTensor, y: &UTensor) -> UTensor {
    let mut out = UTensor::new();
    for ((a, b), c) in x {
        for ((a2, b2), c2) in y {
            add_into(&mut out, (a.add(a2), b.add(b2)), c * c2);
        }
    }
    out
}

fn pure_entries(s: &MultiIndex) -> Vec<u32> {
    s.entries()
        .iter()
        .filter_map(|(sym, _)| match sym {
            IndexSymbol::Pure(k) => Some(*k),
            IndexSymbol::Spatial(_) => None,
        })
        .collect()
}

// Sources s' with D^(n) s' ∋ s.
fn undo_tilt(n: &NVec, s: &MultiIndex, out: &mut BTreeSet<MultiIndex>) {
    if n.is_zero() {
        for k in pure_entries(s).into_iter().filter(|&k| k > 0) {
            if let Some(b) = s.moved(&IndexSymbol::Pure(k), &IndexSymbol::Pure(k - 1)) {
                out.insert(b);
            }
        }
    } else if let Some(b) = s.adjust(&IndexSymbol::Spatial(n.clone()), 1) {
        out.insert(b);
    }
}

// Sources s' with ∂_i s' ∋ s.
fn undo_shift(dim: usize, i: usize, s: &MultiIndex, out: &mut BTreeSet<MultiIndex>) {
    if let Some(without) = s.adjust(&IndexSymbol::Spatial(NVec::unit(dim, i)), -1) {
        for k in pure_entries(&without).into_iter().filter(|&k| k > 0) {
            if let Some(b) = without.moved(&IndexSymbol::Pure(k), &IndexSymbol::Pure(k - 1)) {
                out.insert(b);
            }
        }
    }
    for (n, _) in s.spatial_support() {
        if let Some(lower) = n.dec(i) {
            if !lower.is_zero() {
                if let Some(b) = s.moved(&IndexSymbol::Spatial(n.clone()), &IndexSymbol::Spatial(lower)) {
                    out.insert(b);
                }
            }
        }
    }
}

/// Every z^b that ∂^m ∘ Π D^(n) can map onto a multiple of z^c.
fn source_candidates(dim: usize, w: &BasisWord, c: &MultiIndex) -> BTreeSet<MultiIndex> {
    let mut cur = BTreeSet::from([c.clone()]);
    let step = |cur: BTreeSet<MultiIndex>, f: &dyn Fn(&MultiIndex, &mut BTreeSet<MultiIndex>)| {
        let mut next = BTreeSet::new();
        for s in &cur {
            f(s, &mut next);
        }
        next
    };
    for (idx, &count) in w.m().components().iter().enumerate() {
        for _ in 0..count {
            cur = step(cur, &|s, out| undo_shift(dim, idx + 1, s, out));
        }
    }
    for x in w.d_letters() {
        cur = step(cur, &|s, out| undo_tilt(&x.n, s, out));
    }
    cur
}

fn sub_multi_indices(a: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::empty()];
    for (sym, c) in a.entries() {
        let mut next = Vec::with_capacity(out.len() * (*c as usize + 1));
        for g in &out {
            for k in 0..=*c {
                next.push(g.adjust(sym, k as i64).expect("nonnegative"));
            }
        }
        out = next;
    }
    out
}

/// Tilt letters D{β|n} of L with β ≤ a and grade ≤ `limit`.
fn letter_pool(dim: usize, alpha: Grade, a: &MultiIndex, limit: Grade) -> Vec<DLetter> {
    let mut out = Vec::new();
    for beta in sub_multi_indices(a) {
        if !beta.in_m_minus() {
            continue;
        }
        let h = beta.homogeneity(alpha);
        for n in NVec::all_up_to(dim, h.ceil().to_integer().max(0) as u32) {
            let x = DLetter::new(beta.clone(), n);
            let g = x.grade(alpha);
            if g > Grade::zero() && g <= limit {
                out.push(x);
            }
        }
    }
    out.sort();
    out
}

/// Multisets of letters from `pool` whose γ-sum divides `a` and whose grade
/// is at most `limit`, returned as (E-part, F-part) basis words.
fn word_candidates(dim: usize, alpha: Grade, pool: &[DLetter], a: &MultiIndex, limit: Grade) -> Vec<BasisWord> {
    let mut fs = Vec::new();
    fn rec(
        i: usize,
        pool: &[DLetter],
        alpha: Grade,
        used: &MultiIndex,
        a: &MultiIndex,
        left: Grade,
        cur: &mut FMono,
        out: &mut Vec<(FMono, Grade)>,
    ) {
        if i == pool.len() {
            out.push((cur.clone(), left));
            return;
        }
        rec(i + 1, pool, alpha, used, a, left, cur, out);
        let x = &pool[i];
        let g = x.grade(alpha);
        let mut used = used.clone();
        let mut left = left;
        let mut k = 0;
        loop {
            used = used.add(&x.gamma);
            left -= g;
            if left < Grade::zero() || !used.divides(a) {
                break;
            }
            k += 1;
            cur.insert(x.clone(), k);
            rec(i + 1, pool, alpha, &used, a, left, cur, out);
        }
        cur.remove(x);
    }
    rec(0, pool, alpha, &MultiIndex::empty(), a, limit, &mut FMono::new(), &mut fs);
    let mut out = Vec::new();
    for (j, left) in fs {
        let max_e = left.floor().to_integer().max(0) as u32;
        for m in NVec::all_up_to(dim, max_e) {
            out.push(BasisWord::new(m, j.clone()));
        }
    }
    out
}

impl Engine {
    /// All (u, b, ⟨ρ̄(E_u)(z^b), z^a⟩ ≠ 0) with grade(u) ≤ min(budget, |a|).
    /// Once budget ≥ |a| the list is complete.
    pub fn comodule_delta(&self, a: &MultiIndex, budget: Grade) -> Result<Arc<Coaction>> {
        self.config().require_l("comodule_delta")?;
        self.config().check_multi_index(a)?;
        let limit = budget.min(a.homogeneity(self.alpha()));
        Ok(memo(&self.caches().coaction, (a.clone(), limit), || self.coaction_uncached(a, limit)))
    }

    fn coaction_uncached(&self, a: &MultiIndex, limit: Grade) -> Coaction {
        let (dim, alpha) = (self.dim(), self.alpha());
        let mut out = Coaction::new();
        if limit < Grade::zero() {
            return out;
        }
        let pool = letter_pool(dim, alpha, a, limit);
        for w in word_candidates(dim, alpha, &pool, a, limit) {
            let prefactor = w.d_letters().iter().fold(MultiIndex::empty(), |acc, x| acc.add(&x.gamma));
            let c = a.checked_sub(&prefactor).expect("divides");
            for b in source_candidates(dim, &w, &c) {
                let coeff = self.rho_basis_monomial(&w, &b).coeff(a);
                if !coeff.is_zero() {
                    out.insert((w.clone(), b), coeff);
                }
            }
        }
        out
    }

    /// Θ(E_u⊗z^target) = Σ_b ⟨ρ̄(E_u)(z^b), z^target⟩ z^b.
    pub fn theta(&self, u: &BasisWord, target: &MultiIndex) -> Result<Polynomial> {
        self.config().require_l("theta")?;
        self.config().check_multi_index(target)?;
        let prefactor = u.d_letters().iter().fold(MultiIndex::empty(), |acc, x| acc.add(&x.gamma));
        let mut out = Polynomial::zero();
        let Some(c) = target.checked_sub(&prefactor) else { return Ok(out) };
        for b in source_candidates(self.dim(), u, &c) {
            let coeff = self.rho_basis_monomial(u, &b).coeff(target);
            out.add_term(b, coeff);
        }
        Ok(out)
    }

    /// Δ_▷̄ of a single generator.
    pub fn generator_delta(&self, g: &LGenerator) -> Result<Arc<UTensor>> {
        self.config().require_l("delta_gl")?;
        self.config().validate(g)?;
        let dim = self.dim();
        let one = BasisWord::unit(dim);
        let x = BasisWord::generator(dim, g);
        let LGenerator::D(letter) = g else {
            return Ok(Arc::new(UTensor::from([((x.clone(), one.clone()), Q::one()), ((one, x), Q::one())])));
        };
        let h = letter.gamma.homogeneity(self.alpha());
        let coaction = self.comodule_delta(&letter.gamma, h)?;
        Ok(memo(&self.caches().generator_delta, letter.clone(), || {
            let mut out = UTensor::from([((x, one), Q::one())]);
            for ((u, b), c) in coaction.iter() {
                let right = LGenerator::d(b.clone(), letter.n.clone());
                if self.config().in_space(&right) {
                    add_into(&mut out, (u.clone(), BasisWord::generator(dim, &right)), c.clone());
                }
            }
            // D{γ|n+m}·E_m reorders to binom(n+m, m)·D{γ|n} plus longer words,
            // so these pairs also reach the single letter.
            let room = (h - Grade::from_integer(letter.n.norm() as i64)).ceil().to_integer().max(0) as u32;
            for m in NVec::all_up_to(dim, room).into_iter().filter(|m| !m.is_zero()) {
                let raised = LGenerator::d(letter.gamma.clone(), letter.n.add(&m));
                if self.config().in_space(&raised) {
                    let c = int(letter.n.add(&m).binomial(&m));
                    add_into(&mut out, (BasisWord::generator(dim, &raised), BasisWord::e(m)), c);
                }
            }
            out
        }))
    }

    /// Δ_▷̄(Ē_w), the ∗-product of the generator coproducts.
    pub fn delta_gl_basis(&self, w: &BasisWord) -> Result<Arc<UTensor>> {
        let letters = w.letters();
        let mut factors = Vec::with_capacity(letters.len());
        for g in &letters {
            factors.push(self.generator_delta(g)?);
        }
        Ok(memo(&self.caches().delta, w.clone(), || {
            let one = BasisWord::unit(self.dim());
            let mut acc = UTensor::from([((one.clone(), one), Q::one())]);
            for f in &factors {
                acc = tensor_star(&acc, f);
            }
            acc
        }))
    }

    /// Δ_▷̄(v) for v given in E-coordinates, as coefficients of Ē_u⊗Ē_w.
    /// The budget must cover the grade of every term of v.
    pub fn delta_gl(&self, v: &UElement, budget: Grade) -> Result<UTensor> {
        self.config().require_l("delta_gl")?;
        let mut out = UTensor::new();
        for (w, c) in v.terms() {
            let g = w.grade(self.alpha());
            if g > budget {
                return Err(Error::Budget { budget, required: g });
            }
            let scale = c / Q::from_integer(w.factorial());
            for (k, x) in self.delta_gl_basis(w)?.iter() {
                add_into(&mut out, k.clone(), x * &scale);
            }
        }
        Ok(out)
    }

    /// Tilt letters of L with γ ∈ ℳ⁻, |γ| ≤ `max_hom` and 0 < grade.
    pub fn l_letters(&self, max_hom: Grade) -> Vec<DLetter> {
        let (dim, alpha) = (self.dim(), self.alpha());
        let mut out = Vec::new();
        for beta in enumerate_by_norm(dim, alpha, max_hom, -1) {
            if !beta.in_m_minus() {
                continue;
            }
            let h = beta.homogeneity(alpha);
            for n in NVec::all_up_to(dim, h.ceil().to_integer().max(0) as u32) {
                let x = DLetter::new(beta.clone(), n);
                if x.grade(alpha) > Grade::zero() {
                    out.push(x);
                }
            }
        }
        out.sort();
        out
    }
}

/// Splits a dual-basis tensor into its value on a pair.
pub fn tensor_coeff(t: &UTensor, u: &BasisWord, w: &BasisWord) -> Q {
    t.get(&(u.clone(), w.clone())).cloned().unwrap_or_else(Q::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config::{Config, Space};
    use crate::util::int;

    fn v(c: &[u32]) -> NVec {
        NVec::from_slice(c)
    }

    fn mi(pure: &[(u32, u32)]) -> MultiIndex {
        MultiIndex::from_entries(pure.iter().map(|&(k, c)| (IndexSymbol::Pure(k), c)))
    }

    fn engine() -> Engine {
        Engine::new(Config::default())
    }

    fn fw(x: DLetter) -> BasisWord {
        BasisWord::new(v(&[0]), FMono::from([(x, 1)]))
    }

    #[test]
    fn t_map_examples() {
        let e2 = BasisWord::e(v(&[2]));
        assert_eq!(t_map(&UElement::basis(e2.clone())), UElement::term(e2, int(2)));
        assert_eq!(t_map(&UElement::one(1)), UElement::one(1));
        let f2 = BasisWord::new(v(&[0]), FMono::from([(DLetter::new(mi(&[(0, 1)]), v(&[0])), 2)]));
        assert_eq!(t_map(&UElement::basis(f2.clone())), UElement::term(f2, int(2)));
    }

    #[test]
    fn star_examples() {
        assert_eq!(star(&BasisWord::e(v(&[1])), &BasisWord::e(v(&[2]))), BasisWord::e(v(&[3])));
        let x = fw(DLetter::new(mi(&[(0, 1)]), v(&[0])));
        assert_eq!(star(&BasisWord::unit(1), &x), x);
    }

    #[test]
    fn theta_examples() {
        let e = engine();
        let u = fw(DLetter::new(mi(&[(0, 1)]), v(&[0])));
        let g = mi(&[(0, 1), (1, 1)]);
        assert_eq!(e.theta(&BasisWord::unit(1), &g).unwrap(), Polynomial::monomial(g.clone()));
        assert_eq!(e.theta(&u, &g).unwrap(), Polynomial::monomial(mi(&[(0, 1)])));
        assert!(e.theta(&u, &mi(&[(1, 1)])).unwrap().is_zero());
    }

    #[test]
    fn coaction_example() {
        let e = engine();
        let a = mi(&[(0, 1), (1, 1)]);
        let got = e.comodule_delta(&a, Grade::from_integer(2)).unwrap();
        let x = fw(DLetter::new(mi(&[(0, 1)]), v(&[0])));
        let expect = Coaction::from([((BasisWord::unit(1), a), int(1)), ((x, mi(&[(0, 1)])), int(1))]);
        assert_eq!(*got, expect);
        let empty = e.comodule_delta(&MultiIndex::empty(), Grade::zero()).unwrap();
        assert_eq!(*empty, Coaction::from([((BasisWord::unit(1), MultiIndex::empty()), int(1))]));
    }

    #[test]
    fn generator_coproducts() {
        let e = engine();
        let one = BasisWord::unit(1);
        let p = e.generator_delta(&LGenerator::P(1)).unwrap();
        assert_eq!(p.len(), 2);
        let vx = DLetter::new(mi(&[(0, 1), (1, 1)]), v(&[0]));
        let x = fw(DLetter::new(mi(&[(0, 1)]), v(&[0])));
        let got = e.generator_delta(&LGenerator::D(vx.clone())).unwrap();
        let expect = UTensor::from([
            ((fw(vx.clone()), one.clone()), int(1)),
            ((one, fw(vx)), int(1)),
            ((x.clone(), x), int(1)),
        ]);
        assert_eq!(*got, expect);
    }

    #[test]
    fn reordering_pairs_reach_lowered_letters() {
        // D{γ|(1)}·P(1) = E(1)F[D{γ|(1)}] + F[D{γ|(0)}]
        let e = engine();
        let gamma = mi(&[(0, 1), (1, 2)]);
        let low = DLetter::new(gamma.clone(), v(&[0]));
        let high = DLetter::new(gamma, v(&[1]));
        let got = e.generator_delta(&LGenerator::D(low)).unwrap();
        assert_eq!(tensor_coeff(&got, &fw(high.clone()), &BasisWord::e(v(&[1]))), int(1));
        let product = e.gl_basis(&fw(high), &BasisWord::e(v(&[1])));
        assert_eq!(product.coeff(&fw(DLetter::new(mi(&[(0, 1), (1, 2)]), v(&[0])))), int(1));
    }

    #[test]
    fn budget_and_space_errors() {
        let e = engine();
        let w = UElement::basis(BasisWord::e(v(&[2])));
        assert!(matches!(e.delta_gl(&w, Grade::from_integer(1)), Err(Error::Budget { .. })));
        let l0 = Engine::new(Config::new(1, Grade::new(2, 5), Space::L0).unwrap());
        assert!(matches!(l0.delta_gl(&w, Grade::from_integer(3)), Err(Error::Config(_))));
    }
}
