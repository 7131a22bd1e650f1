//! Linear forms on 𝒰(L), the convolution product ▷̄ dual to Δ_▷̄, and the
//! actions of functionals on polynomials and truncated series.
//!
//! A functional is identified with the formal sum Σ_w f(Ē_w) E_w, so that
//! ρ̄(f) = Σ_w f(Ē_w) ρ̄(E_w). Values are always requested on dual basis
//! elements Ē_w, keyed by the basis word w.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::algebra::{Polynomial, TruncatedSeries};
use crate::config::Config;
use crate::engine::Engine;
use crate::envelope::{BasisWord, FMono, UElement};
use crate::error::{Error, Result};
use crate::index::{enumerate_by_norm, Grade, IndexSymbol, MultiIndex, NVec};
use crate::postlie::{DLetter, LGenerator};
use crate::util::{binomial, int};
use crate::Q;

/// A ∗-multiplicative functional, stored by its values on generators.
/// Unlisted generators take the value 0.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Character {
    dim: usize,
    values: BTreeMap<LGenerator, Q>,
}

impl Character {
    /// The unit of the group: zero on every generator.
    pub fn unit(dim: usize) -> Self {
        Character { dim, values: BTreeMap::new() }
    }

    pub fn from_values<I: IntoIterator<Item = (LGenerator, Q)>>(dim: usize, values: I) -> Self {
        let mut c = Self::unit(dim);
        for (g, q) in values {
            c.set(g, q);
        }
        c
    }

    pub fn set(&mut self, g: LGenerator, q: Q) {
        if q.is_zero() {
            self.values.remove(&g);
        } else {
            self.values.insert(g, q);
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn value(&self, g: &LGenerator) -> Q {
        self.values.get(g).cloned().unwrap_or_else(Q::zero)
    }

    /// Generators with a nonzero value.
    pub fn support(&self) -> impl Iterator<Item = (&LGenerator, &Q)> {
        self.values.iter()
    }

    pub fn validate(&self, cfg: &Config) -> Result<()> {
        self.values.keys().try_for_each(|g| cfg.validate(g))
    }

    /// f(Ē_mF̄_J) = Π f(P(i))^{m_i} · Π f(x)^{J(x)}.
    pub fn eval(&self, w: &BasisWord) -> Q {
        let mut acc = Q::one();
        for (i, &c) in w.m().components().iter().enumerate() {
            if c > 0 {
                acc *= self.value(&LGenerator::P(i + 1)).pow(c as i32);
            }
        }
        for (x, &c) in w.j() {
            acc *= self.values.get(&LGenerator::D(x.clone())).cloned().unwrap_or_else(Q::zero).pow(c as i32);
            if acc.is_zero() {
                break;
            }
        }
        acc
    }
}

/// Value of a character on Ē_w.
pub fn char_eval(f: &Character, w: &BasisWord) -> Q {
    f.eval(w)
}

type Oracle = dyn Fn(&BasisWord) -> Q + Send + Sync;

enum Source {
    Counit,
    Character(Character),
    Oracle(Arc<Oracle>),
    Convolution(Engine, Functional, Functional),
    Inverse(Engine, Functional),
}

struct Inner {
    source: Source,
    cache: Mutex<HashMap<BasisWord, Q>>,
}

/// A linear form on 𝒰(L), evaluated lazily on dual basis elements.
///
/// Values of convolutions and inverses are memoized. A word whose letters do
/// not belong to L is outside the domain and evaluates to 0.
#[derive(Clone)]
pub struct Functional {
    inner: Arc<Inner>,
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.inner.source {
            Source::Counit => "counit",
            Source::Character(_) => "character",
            Source::Oracle(_) => "oracle",
            Source::Convolution(..) => "convolution",
            Source::Inverse(..) => "inverse",
        };
        f.debug_struct("Functional").field("kind", &kind).finish_non_exhaustive()
    }
}

impl From<Character> for Functional {
    fn from(c: Character) -> Self {
        Functional::new(Source::Character(c))
    }
}

impl Functional {
    fn new(source: Source) -> Self {
        Functional { inner: Arc::new(Inner { source, cache: Mutex::default() }) }
    }

    /// The counit ε, the unit of the convolution group.
    pub fn counit() -> Self {
        Self::new(Source::Counit)
    }

    /// A functional given by an arbitrary oracle w ↦ f(Ē_w).
    pub fn from_fn(f: impl Fn(&BasisWord) -> Q + Send + Sync + 'static) -> Self {
        Self::new(Source::Oracle(Arc::new(f)))
    }

    /// The character backing this functional, if it was built from one.
    pub fn as_character(&self) -> Option<&Character> {
        match &self.inner.source {
            Source::Character(c) => Some(c),
            _ => None,
        }
    }

    pub fn is_character(&self) -> bool {
        self.as_character().is_some()
    }

    /// f(Ē_w).
    pub fn value(&self, w: &BasisWord) -> Q {
        match &self.inner.source {
            Source::Counit => {
                if w.is_unit() {
                    Q::one()
                } else {
                    Q::zero()
                }
            }
            Source::Character(c) => c.eval(w),
            Source::Oracle(f) => f(w),
            Source::Convolution(engine, f1, f2) => self.cached(w, || {
                let Ok(delta) = engine.delta_gl_basis(w) else { return Q::zero() };
                let mut acc = Q::zero();
                for ((a, b), c) in delta.iter() {
                    let x = f1.value(a);
                    if !x.is_zero() {
                        acc += c * x * f2.value(b);
                    }
                }
                acc
            }),
            Source::Inverse(engine, f) => self.cached(w, || {
                let unit = f.value(&BasisWord::unit(w.dim()));
                if w.is_unit() {
                    return unit.recip();
                }
                let Ok(delta) = engine.delta_gl_basis(w) else { return Q::zero() };
                let mut acc = Q::zero();
                for ((a, b), c) in delta.iter() {
                    if a == w {
                        continue;
                    }
                    let y = f.value(b);
                    if !y.is_zero() {
                        acc += c * self.value(a) * y;
                    }
                }
                -acc / unit
            }),
        }
    }

    /// f(u) for u in E-coordinates: Σ u_w f(Ē_w)/w!.
    pub fn eval(&self, u: &UElement) -> Q {
        u.terms()
            .map(|(w, c)| c * self.value(w) / Q::from_integer(w.factorial()))
            .fold(Q::zero(), |a, b| a + b)
    }

    fn cached(&self, w: &BasisWord, compute: impl FnOnce() -> Q) -> Q {
        if let Some(q) = self.inner.cache.lock().expect("cache poisoned").get(w) {
            return q.clone();
        }
        let q = compute();
        self.inner.cache.lock().expect("cache poisoned").insert(w.clone(), q.clone());
        q
    }
}

/// Letters available to a forward enumeration: shift letters and tilt letters.
struct Pool {
    shifts: Vec<usize>,
    tilts: Vec<DLetter>,
}

impl Engine {
    /// The convolution f₁ ▷̄ f₂, dual to Δ_▷̄.
    pub fn convolve(&self, f1: &Functional, f2: &Functional) -> Result<Functional> {
        self.config().require_l("convolve")?;
        Ok(Functional::new(Source::Convolution(self.clone(), f1.clone(), f2.clone())))
    }

    /// (f₁ ▷̄ f₂)(v) for v in E-coordinates, via Δ_▷̄(v).
    pub fn convolve_eval(&self, f1: &Functional, f2: &Functional, v: &UElement, budget: Grade) -> Result<Q> {
        let delta = self.delta_gl(v, budget)?;
        let mut acc = Q::zero();
        for ((a, b), c) in &delta {
            acc += c * f1.value(a) * f2.value(b);
        }
        Ok(acc)
    }

    /// The convolution inverse, built by recursion on the grade: the terms of
    /// Δ_▷̄(Ē_w) other than Ē_w⊗𝟙 have strictly smaller grade on the left.
    pub fn group_inverse(&self, f: &Functional) -> Result<Functional> {
        self.config().require_l("group_inverse")?;
        if f.value(&BasisWord::unit(self.dim())).is_zero() {
            return Err(Error::Config("a functional with f(1) = 0 has no inverse".into()));
        }
        Ok(Functional::new(Source::Inverse(self.clone(), f.clone())))
    }

    /// Tilt letters D{γ|n} of L reached by grafting words over `left` onto
    /// letters in `right`, up to grade `max_grade`.
    fn graft_targets(&self, left: &Pool, right: &[DLetter], max_grade: Grade) -> BTreeSet<DLetter> {
        let alpha = self.alpha();
        let mut out = BTreeSet::new();
        for y in right {
            let room = max_grade - y.grade(alpha);
            if room < Grade::zero() {
                continue;
            }
            for u in self.forward_words(left, &y.gamma, room) {
                if u.is_unit() {
                    continue;
                }
                for (g, _) in self.rho_basis_monomial(&u, &y.gamma).terms() {
                    let x = LGenerator::d(g.clone(), y.n.clone());
                    if self.config().in_space(&x) && x.grade(alpha) <= max_grade {
                        let LGenerator::D(x) = x else { unreachable!() };
                        out.insert(x);
                    }
                }
            }
        }
        out
    }

    /// Letters D{γ|n−m} of L with D{γ|n} in `tilts` and m ≠ 0 supported on
    /// `shifts`: the pairs (D{γ|n}, E_m) reach them through reordering.
    fn lowered_targets(&self, tilts: &[DLetter], shifts: &[usize]) -> BTreeSet<DLetter> {
        let mut out = BTreeSet::new();
        for x in tilts {
            for k in x.n.below() {
                if k.is_zero() || (1..=self.dim()).any(|i| k.get(i) > 0 && !shifts.contains(&i)) {
                    continue;
                }
                let lowered = LGenerator::d(x.gamma.clone(), x.n.checked_sub(&k).expect("below"));
                if self.config().in_space(&lowered) {
                    let LGenerator::D(y) = lowered else { unreachable!() };
                    out.insert(y);
                }
            }
        }
        out
    }

    /// f₁ ▷̄ f₂ for characters, as a character on generators of grade ≤ `max_grade`.
    /// Convolution preserves ∗-multiplicativity, so this agrees with
    /// [`Engine::convolve`] on every word built from such generators.
    pub fn convolve_characters(&self, f1: &Character, f2: &Character, max_grade: Grade) -> Result<Character> {
        self.config().require_l("convolve")?;
        let alpha = self.alpha();
        let mut letters: BTreeSet<LGenerator> = f1.values.keys().chain(f2.values.keys()).cloned().collect();
        let right: Vec<DLetter> = f2.values.keys().filter_map(d_letter).collect();
        let grafted = self.graft_targets(&pool_of(f1), &right, max_grade);
        letters.extend(grafted.into_iter().map(LGenerator::D));
        let left: Vec<DLetter> = f1.values.keys().filter_map(d_letter).collect();
        letters.extend(self.lowered_targets(&left, &pool_of(f2).shifts).into_iter().map(LGenerator::D));
        let product = self.convolve(&f1.clone().into(), &f2.clone().into())?;
        let mut out = Character::unit(self.dim());
        for g in letters.into_iter().filter(|g| g.grade(alpha) <= max_grade) {
            let q = product.value(&BasisWord::generator(self.dim(), &g));
            out.set(g, q);
        }
        Ok(out)
    }

    /// The convolution inverse of a character, on generators of grade ≤ `max_grade`.
    pub fn inverse_character(&self, f: &Character, max_grade: Grade) -> Result<Character> {
        self.config().require_l("group_inverse")?;
        let alpha = self.alpha();
        let right: Vec<DLetter> = f.values.keys().filter_map(d_letter).collect();
        let mut support: BTreeSet<LGenerator> = f.values.keys().cloned().collect();
        loop {
            let pool = Pool {
                shifts: support.iter().filter_map(|g| if let LGenerator::P(i) = g { Some(*i) } else { None }).collect(),
                tilts: support.iter().filter_map(d_letter).collect(),
            };
            let before = support.len();
            support.extend(self.graft_targets(&pool, &right, max_grade).into_iter().map(LGenerator::D));
            support.extend(self.lowered_targets(&pool.tilts, &pool.shifts).into_iter().map(LGenerator::D));
            if support.len() == before {
                break;
            }
        }
        let inverse = self.group_inverse(&f.clone().into())?;
        let mut out = Character::unit(self.dim());
        for g in support.into_iter().filter(|g| g.grade(alpha) <= max_grade) {
            out.set(g.clone(), inverse.value(&BasisWord::generator(self.dim(), &g)));
        }
        Ok(out)
    }

    /// Every word u over `pool` with grade(u) ≤ `limit` that can act nontrivially
    /// on z^γ: a tilt letter D^(n) with n ≠ 0 consumes one z_n of γ.
    fn forward_words(&self, pool: &Pool, gamma: &MultiIndex, limit: Grade) -> Vec<BasisWord> {
        let alpha = self.alpha();
        let tilts: Vec<&DLetter> = pool
            .tilts
            .iter()
            .filter(|x| {
                x.grade(alpha) <= limit
                    && (x.n.is_zero() || gamma.get(&IndexSymbol::Spatial(x.n.clone())) > 0)
                    && (!x.n.is_zero() || gamma.pure_count() > 0)
            })
            .collect();
        let mut fs: Vec<(FMono, Grade)> = Vec::new();
        #[allow(clippy::too_many_arguments)]
        fn rec(
            i: usize,
            tilts: &[&DLetter],
            alpha: Grade,
            gamma: &MultiIndex,
            left: Grade,
            used: &mut BTreeMap<NVec, u32>,
            cur: &mut FMono,
            out: &mut Vec<(FMono, Grade)>,
        ) {
            if i == tilts.len() {
                out.push((cur.clone(), left));
                return;
            }
            rec(i + 1, tilts, alpha, gamma, left, used, cur, out);
            let x = tilts[i];
            let g = x.grade(alpha);
            let cap = if x.n.is_zero() { u32::MAX } else { gamma.get(&IndexSymbol::Spatial(x.n.clone())) };
            let mut left = left;
            let mut k = 0;
            loop {
                left -= g;
                let taken = used.get(&x.n).copied().unwrap_or(0);
                if left < Grade::zero() || (!x.n.is_zero() && taken + 1 > cap) {
                    break;
                }
                k += 1;
                *used.entry(x.n.clone()).or_insert(0) += 1;
                cur.insert(x.clone(), k);
                rec(i + 1, tilts, alpha, gamma, left, used, cur, out);
            }
            if k > 0 {
                *used.get_mut(&x.n).expect("counted") -= k;
                cur.remove(x);
            }
        }
        rec(0, &tilts, alpha, gamma, limit, &mut BTreeMap::new(), &mut FMono::new(), &mut fs);
        let dim = self.dim();
        let mut out = Vec::new();
        for (j, left) in fs {
            let max_e = left.floor().to_integer().max(0) as u32;
            for m in NVec::all_up_to(dim, max_e) {
                if (1..=dim).all(|i| m.get(i) == 0 || pool.shifts.contains(&i)) {
                    out.push(BasisWord::new(m, j.clone()));
                }
            }
        }
        out
    }

    fn pool_for(&self, f: &Functional, max_hom: Grade) -> Pool {
        match f.as_character() {
            Some(c) => pool_of(c),
            None => Pool { shifts: (1..=self.dim()).collect(), tilts: self.l_letters(max_hom) },
        }
    }

    /// ρ̄(f)(s) = Σ_w f(Ē_w) ρ̄(E_w)(s), exact up to the cutoff of s.
    pub fn char_act(&self, f: &Functional, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.config().require_l("char_act")?;
        self.check_series(s)?;
        let alpha = self.alpha();
        let cutoff = s.cutoff();
        let max_n = s.terms().terms().flat_map(|(g, _)| g.spatial_support().map(|(n, _)| n.norm())).max().unwrap_or(0);
        let pool = self.pool_for(f, cutoff + max_n as i64);
        let mut out = TruncatedSeries::zero(self.dim(), alpha, cutoff);
        for (gamma, sc) in s.terms().terms() {
            let limit = cutoff - gamma.homogeneity(alpha);
            for u in self.forward_words(&pool, gamma, limit) {
                let fu = f.value(&u);
                if fu.is_zero() {
                    continue;
                }
                let c = fu * sc;
                for (b, k) in self.rho_basis_monomial(&u, gamma).terms() {
                    out.add_term(b.clone(), &c * k);
                }
            }
        }
        Ok(out)
    }

    /// f^(n) = Σ_{m≠0} binom(n+m, n) f(Ē_m) z_{n+m} + Σ_{β∈ℳ⁻, |β|>|n|} f(z^β⊗D^(n)) z^β.
    pub fn f_hash_n(&self, f: &Functional, n: &NVec, cutoff: Grade) -> Result<TruncatedSeries> {
        self.config().check_vec(n)?;
        let (dim, alpha) = (self.dim(), self.alpha());
        let mut out = TruncatedSeries::zero(dim, alpha, cutoff);
        let top = (cutoff - n.norm() as i64).floor().to_integer();
        if top >= 1 {
            for m in NVec::all_up_to(dim, top as u32).into_iter().filter(|m| !m.is_zero()) {
                let q = f.value(&BasisWord::e(m.clone()));
                if !q.is_zero() {
                    out.add_term(MultiIndex::spatial(n.add(&m)), q * int(n.add(&m).binomial(n)));
                }
            }
        }
        let height = Grade::from_integer(n.norm() as i64);
        let mut add_letter = |x: &DLetter, q: Q| {
            if x.n == *n && x.gamma.in_m_minus() && x.gamma.homogeneity(alpha) > height && !q.is_zero() {
                out.add_term(x.gamma.clone(), q);
            }
        };
        match f.as_character() {
            Some(c) => {
                for (g, q) in c.support() {
                    if let LGenerator::D(x) = g {
                        add_letter(x, q.clone());
                    }
                }
            }
            None => {
                for beta in enumerate_by_norm(dim, alpha, cutoff, -1) {
                    let x = DLetter::new(beta, n.clone());
                    let q = f.value(&BasisWord::generator(dim, &LGenerator::D(x.clone())));
                    add_letter(&x, q);
                }
            }
        }
        Ok(out)
    }

    /// The action of a character on a single variable by the closed formulas
    /// z_n ↦ z_n + f^(n) and z_k ↦ Σ_ℓ binom(k+ℓ, k) (f^(0))^ℓ z_{k+ℓ}.
    pub fn char_act_gen_closed(&self, f: &Character, sym: &IndexSymbol, cutoff: Grade) -> Result<TruncatedSeries> {
        let (dim, alpha) = (self.dim(), self.alpha());
        let func: Functional = f.clone().into();
        match sym {
            IndexSymbol::Spatial(n) => {
                let single = TruncatedSeries::from_polynomial(
                    dim,
                    alpha,
                    cutoff,
                    &Polynomial::monomial(MultiIndex::spatial(n.clone())),
                );
                single.add(&self.f_hash_n(&func, n, cutoff)?)
            }
            IndexSymbol::Pure(k) => {
                let f0 = self.f_hash_n(&func, &NVec::zero(dim), cutoff)?;
                let mut power = TruncatedSeries::from_polynomial(dim, alpha, cutoff, &Polynomial::one());
                let mut out = TruncatedSeries::zero(dim, alpha, cutoff);
                let mut ell = 0u32;
                // every term of f^(0) has homogeneity ≥ α, so (f^(0))^ℓ z_{k+ℓ} vanishes once (ℓ+1)α > cutoff
                while alpha * (ell as i64 + 1) <= cutoff {
                    let zk = Polynomial::term(MultiIndex::pure(k + ell), int(binomial(k + ell, *k)));
                    let term = power.mul(&TruncatedSeries::from_polynomial(dim, alpha, cutoff, &zk))?;
                    out = out.add(&term)?;
                    power = power.mul(&f0)?;
                    ell += 1;
                }
                Ok(out)
            }
        }
    }

    /// Λ(f⊗s) = ρ̄(f)(s) + s_∅·f^(0).
    pub fn lambda_act(&self, f: &Functional, s: &TruncatedSeries) -> Result<TruncatedSeries> {
        let acted = self.char_act(f, s)?;
        let f0 = self.f_hash_n(f, &NVec::zero(self.dim()), s.cutoff())?;
        acted.add(&f0.scale(&s.constant_term()))
    }

    /// Γ_f z^β = Σ_γ ⟨ρ̄(f)(z^γ), z^β⟩ z^γ + ⟨f^(0), z^β⟩ 𝟙, extended linearly.
    pub fn gamma_act(&self, f: &Functional, p: &Polynomial, budget: Grade) -> Result<Polynomial> {
        self.config().require_l("gamma")?;
        let alpha = self.alpha();
        let dim = self.dim();
        let mut out = Polynomial::zero();
        for (beta, c) in p.terms() {
            self.config().check_multi_index(beta)?;
            let h = beta.homogeneity(alpha);
            if h > budget {
                return Err(Error::Budget { budget, required: h });
            }
            for ((u, gamma), k) in self.comodule_delta(beta, budget)?.iter() {
                let fu = f.value(u);
                if !fu.is_zero() {
                    out.add_term(gamma.clone(), c * k * fu);
                }
            }
            let paired = if let Some(m) = beta.as_single_spatial() {
                f.value(&BasisWord::e(m.clone()))
            } else if beta.in_m_minus() {
                f.value(&BasisWord::generator(dim, &LGenerator::d(beta.clone(), NVec::zero(dim))))
            } else {
                Q::zero()
            };
            out.add_term(MultiIndex::empty(), c * paired);
        }
        Ok(out)
    }

    fn check_series(&self, s: &TruncatedSeries) -> Result<()> {
        if s.dim() != self.dim() {
            return Err(Error::Dimension { expected: self.dim(), found: s.dim() });
        }
        if s.alpha() != self.alpha() {
            return Err(Error::Config(format!("series graded with alpha {} but engine uses {}", s.alpha(), self.alpha())));
        }
        s.terms().terms().try_for_each(|(g, _)| self.config().check_multi_index(g))
    }
}

fn d_letter(g: &LGenerator) -> Option<DLetter> {
    match g {
        LGenerator::D(x) => Some(x.clone()),
        LGenerator::P(_) => None,
    }
}

fn pool_of(c: &Character) -> Pool {
    Pool {
        shifts: c.values.keys().filter_map(|g| if let LGenerator::P(i) = g { Some(*i) } else { None }).collect(),
        tilts: c.values.keys().filter_map(d_letter).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::util::frac;

    fn v(c: &[u32]) -> NVec {
        NVec::from_slice(c)
    }

    fn mi(pure: &[(u32, u32)], spatial: &[(&[u32], u32)]) -> MultiIndex {
        MultiIndex::from_entries(
            pure.iter()
                .map(|&(k, c)| (IndexSymbol::Pure(k), c))
                .chain(spatial.iter().map(|&(n, c)| (IndexSymbol::Spatial(v(n)), c))),
        )
    }

    fn engine() -> Engine {
        Engine::new(Config::default())
    }

    fn shift_only(c: Q) -> Character {
        Character::from_values(1, [(LGenerator::P(1), c)])
    }

    #[test]
    fn char_eval_examples() {
        let f = Character::from_values(1, [(LGenerator::P(1), frac(1, 3)), (LGenerator::d(mi(&[(0, 1)], &[]), v(&[0])), int(2))]);
        assert_eq!(f.eval(&BasisWord::unit(1)), int(1));
        assert_eq!(f.eval(&BasisWord::e(v(&[2]))), frac(1, 9));
        let x = BasisWord::generator(1, &LGenerator::d(mi(&[(0, 1)], &[]), v(&[0])));
        assert_eq!(f.eval(&x), int(2));
    }

    #[test]
    fn convolution_micro_example() {
        let e = engine();
        let x = LGenerator::d(mi(&[(0, 1)], &[]), v(&[0]));
        let vgen = LGenerator::d(mi(&[(0, 1), (1, 1)], &[]), v(&[0]));
        let f1 = Character::from_values(1, [(x.clone(), int(2)), (vgen.clone(), int(3))]);
        let f2 = Character::from_values(1, [(x.clone(), int(5)), (vgen.clone(), int(7))]);
        let w = UElement::generator(1, &vgen);
        let got = e.convolve_eval(&f1.into(), &f2.into(), &w, Grade::from_integer(2)).unwrap();
        assert_eq!(got, int(3 + 7 + 2 * 5));
    }

    #[test]
    fn counit_is_neutral_and_inverse_cancels() {
        let e = engine();
        let x = LGenerator::d(mi(&[(0, 1)], &[]), v(&[0]));
        let f: Functional = Character::from_values(1, [(x.clone(), int(2)), (LGenerator::P(1), int(3))]).into();
        let left = e.convolve(&Functional::counit(), &f).unwrap();
        let g = e.group_inverse(&f).unwrap();
        let prod = e.convolve(&g, &f).unwrap();
        let w = BasisWord::generator(1, &LGenerator::d(mi(&[(0, 1), (1, 1)], &[]), v(&[0])));
        for word in [BasisWord::unit(1), BasisWord::generator(1, &x), BasisWord::e(v(&[2])), w] {
            assert_eq!(left.value(&word), f.value(&word));
            let expect = if word.is_unit() { int(1) } else { int(0) };
            assert_eq!(prod.value(&word), expect);
        }
    }

    #[test]
    fn char_act_shift_only() {
        let e = engine();
        let f: Functional = shift_only(int(1)).into();
        let s = TruncatedSeries::from_polynomial(1, Grade::new(2, 5), Grade::new(12, 5), &Polynomial::monomial(MultiIndex::pure(0)));
        let got = e.char_act(&f, &s).unwrap();
        assert_eq!(got.terms().coeff(&mi(&[(1, 1)], &[(&[2], 1)])), int(1));
        assert_eq!(got.terms().coeff(&mi(&[(2, 1)], &[(&[1], 2)])), int(1));
        assert_eq!(got.terms().coeff(&MultiIndex::pure(0)), int(1));
        let unit = e.char_act(&Functional::counit(), &s).unwrap();
        assert_eq!(unit, s);
    }

    #[test]
    fn f_hash_examples() {
        let e = engine();
        let c = frac(1, 2);
        let f: Functional = shift_only(c.clone()).into();
        let cutoff = Grade::from_integer(3);
        let f0 = e.f_hash_n(&f, &v(&[0]), cutoff).unwrap();
        for m in 1..=3u32 {
            assert_eq!(f0.terms().coeff(&MultiIndex::spatial(v(&[m]))), c.pow(m as i32));
        }
        let f1 = e.f_hash_n(&f, &v(&[1]), cutoff).unwrap();
        assert_eq!(f1.terms().coeff(&MultiIndex::spatial(v(&[3]))), c.pow(2) * int(3));
        assert!(e.f_hash_n(&Functional::counit(), &v(&[0]), cutoff).unwrap().terms().is_zero());
    }

    #[test]
    fn closed_forms_match_generic_action() {
        let e = engine();
        let alpha = Grade::new(2, 5);
        let cutoff = Grade::from_integer(2) + alpha;
        let f = Character::from_values(1, [(LGenerator::P(1), int(2)), (LGenerator::d(mi(&[(0, 1)], &[]), v(&[0])), int(3))]);
        for sym in [IndexSymbol::Pure(0), IndexSymbol::Pure(1), IndexSymbol::Spatial(v(&[1]))] {
            let s = TruncatedSeries::from_polynomial(1, alpha, cutoff, &Polynomial::monomial(MultiIndex::unit(sym.clone())));
            let generic = e.char_act(&f.clone().into(), &s).unwrap();
            assert_eq!(e.char_act_gen_closed(&f, &sym, cutoff).unwrap(), generic, "{sym:?}");
        }
    }

    #[test]
    fn gamma_examples() {
        let e = engine();
        let f: Functional = shift_only(int(3)).into();
        let p = Polynomial::monomial(MultiIndex::spatial(v(&[1])));
        let got = e.gamma_act(&f, &p, Grade::from_integer(2)).unwrap();
        assert_eq!(got, &p + &Polynomial::term(MultiIndex::empty(), int(3)));
        assert_eq!(e.gamma_act(&Functional::counit(), &p, Grade::from_integer(2)).unwrap(), p);
    }

    #[test]
    fn lambda_on_unit_series() {
        let e = engine();
        let f: Functional = shift_only(int(1)).into();
        let cutoff = Grade::from_integer(2);
        let one = TruncatedSeries::from_polynomial(1, Grade::new(2, 5), cutoff, &Polynomial::one());
        let got = e.lambda_act(&f, &one).unwrap();
        let f0 = e.f_hash_n(&f, &v(&[0]), cutoff).unwrap();
        assert_eq!(got, one.add(&f0).unwrap());
    }
}
