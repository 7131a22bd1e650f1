//! The enveloping algebra 𝒰(L) in the PBW basis
//! E_m F_J = (1/m!)(𝟙⊗∂)^m · Π_x x^{J(x)}/J(x)!,
//! with shift letters ordered before tilt letters.
//!
//! Products are computed by right multiplication with single letters, using
//! D{γ|n}·P(i) = P(i)·D{γ|n} + n_i·D{γ|n−e_i}. The Guin–Oudom extension of ▷
//! and the product ▷̄ are built on top of the representation ρ̄.

use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Polynomial;
use crate::engine::{memo, Engine};
use crate::error::Result;
use crate::index::{Grade, MultiIndex, NVec};
use crate::postlie::{DLetter, LGenerator};
use crate::util::{add_into, binomial, factorial, int};
use crate::Q;

/// A raw word of generators, read left to right.
pub type Word = Vec<LGenerator>;

/// The multiplicity map J of an F-block.
pub type FMono = BTreeMap<DLetter, u32>;

/// A rational combination of F_J, i.e. an element of the commutative
/// subalgebra generated by the tilt letters.
pub type FComb = BTreeMap<FMono, Q>;

/// The basis element E_m F_J.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct BasisWord {
    m: NVec,
    j: FMono,
}

fn j_factorial(j: &FMono) -> BigInt {
    j.values().map(|&c| factorial(c)).product()
}

fn j_binomial(a: &FMono, b: &FMono) -> BigInt {
    b.iter()
        .map(|(x, &cb)| binomial(a.get(x).copied().unwrap_or(0) + cb, cb))
        .product()
}

fn j_add(a: &FMono, b: &FMono) -> FMono {
    let mut out = a.clone();
    for (x, c) in b {
        *out.entry(x.clone()).or_insert(0) += c;
    }
    out
}

fn j_letters(j: &FMono) -> Vec<&DLetter> {
    j.iter().flat_map(|(x, &c)| std::iter::repeat_n(x, c as usize)).collect()
}

fn j_subsets(j: &FMono) -> Vec<FMono> {
    let mut out = vec![FMono::new()];
    for (x, &c) in j {
        let mut next = Vec::with_capacity(out.len() * (c as usize + 1));
        for s in &out {
            for k in 0..=c {
                let mut t = s.clone();
                if k > 0 {
                    t.insert(x.clone(), k);
                }
                next.push(t);
            }
        }
        out = next;
    }
    out
}

impl BasisWord {
    pub fn unit(dim: usize) -> Self {
        BasisWord { m: NVec::zero(dim), j: FMono::new() }
    }

    /// E_m F_J; zero multiplicities are dropped.
    pub fn new(m: NVec, j: FMono) -> Self {
        BasisWord { m, j: j.into_iter().filter(|e| e.1 > 0).collect() }
    }

    pub fn e(m: NVec) -> Self {
        BasisWord { m, j: FMono::new() }
    }

    /// The basis word of a single generator.
    pub fn generator(dim: usize, g: &LGenerator) -> Self {
        match g {
            LGenerator::P(i) => Self::e(NVec::unit(dim, *i)),
            LGenerator::D(x) => BasisWord { m: NVec::zero(dim), j: FMono::from([(x.clone(), 1)]) },
        }
    }

    pub fn m(&self) -> &NVec {
        &self.m
    }

    pub fn j(&self) -> &FMono {
        &self.j
    }

    pub fn dim(&self) -> usize {
        self.m.dim()
    }

    pub fn is_unit(&self) -> bool {
        self.m.is_zero() && self.j.is_empty()
    }

    /// Number of letters |m| + Σ J.
    pub fn len(&self) -> u32 {
        self.m.norm() + self.j.values().sum::<u32>()
    }

    pub fn is_empty(&self) -> bool {
        self.is_unit()
    }

    /// If the word is a single generator, returns it.
    pub fn as_generator(&self) -> Option<LGenerator> {
        if self.len() != 1 {
            return None;
        }
        match self.m.first_nonzero() {
            Some(i) => Some(LGenerator::P(i)),
            None => self.j.keys().next().map(|x| LGenerator::D(x.clone())),
        }
    }

    /// The ordered raw word (𝟙⊗∂)^m Π x^{J(x)}; it equals m!·J!·E_mF_J.
    pub fn letters(&self) -> Word {
        let mut w = Word::new();
        for (i, &c) in self.m.components().iter().enumerate() {
            w.extend(std::iter::repeat_n(LGenerator::P(i + 1), c as usize));
        }
        w.extend(j_letters(&self.j).into_iter().map(|x| LGenerator::D(x.clone())));
        w
    }

    /// The tilt letters with multiplicity, in order.
    pub fn d_letters(&self) -> Vec<&DLetter> {
        j_letters(&self.j)
    }

    /// m!·J!.
    pub fn factorial(&self) -> BigInt {
        self.m.factorial() * j_factorial(&self.j)
    }

    /// |m| + Σ J(γ,n)(|γ| − |n|).
    pub fn grade(&self, alpha: Grade) -> Grade {
        self.j
            .iter()
            .fold(Grade::from_integer(self.m.norm() as i64), |acc, (x, &c)| acc + x.grade(alpha) * c as i64)
    }

    /// Index-wise sum (m + m', J + J').
    pub fn add(&self, other: &BasisWord) -> BasisWord {
        BasisWord { m: self.m.add(&other.m), j: j_add(&self.j, &other.j) }
    }

    pub fn checked_sub(&self, other: &BasisWord) -> Option<BasisWord> {
        let m = self.m.checked_sub(&other.m)?;
        let mut j = self.j.clone();
        for (x, &c) in &other.j {
            let have = j.get_mut(x)?;
            *have = have.checked_sub(c)?;
            if *have == 0 {
                j.remove(x);
            }
        }
        Some(BasisWord { m, j })
    }

    /// Every w' with w' ≤ w index-wise, including 𝟙 and w itself.
    pub fn sub_words(&self) -> Vec<BasisWord> {
        let js = j_subsets(&self.j);
        let mut out = Vec::new();
        for m in self.m.below() {
            for j in &js {
                out.push(BasisWord { m: m.clone(), j: j.clone() });
            }
        }
        out
    }

    /// All pairs (w', w'') with w' + w'' = w.
    pub fn splits(&self) -> Vec<(BasisWord, BasisWord)> {
        self.sub_words()
            .into_iter()
            .map(|a| {
                let b = self.checked_sub(&a).expect("sub word");
                (a, b)
            })
            .collect()
    }
}

/// A finite rational combination of PBW basis words.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UElement {
    terms: BTreeMap<BasisWord, Q>,
}

impl UElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one(dim: usize) -> Self {
        Self::basis(BasisWord::unit(dim))
    }

    pub fn basis(w: BasisWord) -> Self {
        Self::term(w, Q::one())
    }

    pub fn generator(dim: usize, g: &LGenerator) -> Self {
        Self::basis(BasisWord::generator(dim, g))
    }

    pub fn term(w: BasisWord, c: Q) -> Self {
        let mut u = Self::zero();
        u.add_term(w, c);
        u
    }

    pub fn from_terms<I: IntoIterator<Item = (BasisWord, Q)>>(terms: I) -> Self {
        let mut u = Self::zero();
        for (w, c) in terms {
            u.add_term(w, c);
        }
        u
    }

    pub fn add_term(&mut self, w: BasisWord, c: Q) {
        add_into(&mut self.terms, w, c);
    }

    pub fn add_scaled(&mut self, other: &UElement, c: &Q) {
        for (w, x) in &other.terms {
            self.add_term(w.clone(), x * c);
        }
    }

    pub fn coeff(&self, w: &BasisWord) -> Q {
        self.terms.get(w).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&BasisWord, &Q)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &Q) -> UElement {
        UElement::from_terms(self.terms.iter().map(|(w, x)| (w.clone(), x * c)))
    }
}

impl<'a> Add<&'a UElement> for &'a UElement {
    type Output = UElement;
    fn add(self, rhs: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &Q::one());
        out
    }
}

impl<'a> Sub<&'a UElement> for &'a UElement {
    type Output = UElement;
    fn sub(self, rhs: &UElement) -> UElement {
        let mut out = self.clone();
        out.add_scaled(rhs, &-Q::one());
        out
    }
}

/// E_m F_J · P(i) = (m_i+1)E_{m+e_i}F_J + Σ_y n_i(y) E_m F_{J−e_y}·y', y' = D{γ_y|n_y−e_i}.
fn mul_right_p(w: &BasisWord, i: usize, c: &Q, out: &mut UElement) {
    let mi = w.m.get(i);
    out.add_term(BasisWord { m: w.m.inc(i), j: w.j.clone() }, c * int(mi + 1));
    for y in w.j.keys() {
        let ni = y.n.get(i);
        if ni == 0 {
            continue;
        }
        let lowered = DLetter::new(y.gamma.clone(), y.n.dec(i).expect("positive"));
        let mut j = w.j.clone();
        let slot = j.get_mut(y).expect("present");
        *slot -= 1;
        if *slot == 0 {
            j.remove(y);
        }
        let e = j.entry(lowered).or_insert(0);
        *e += 1;
        let k = *e;
        out.add_term(BasisWord { m: w.m.clone(), j }, c * int(ni as u64 * k as u64));
    }
}

/// E_m F_J · x = (J(x)+1) E_m F_{J+e_x}.
fn mul_right_d(w: &BasisWord, x: &DLetter, c: &Q, out: &mut UElement) {
    let mut j = w.j.clone();
    let e = j.entry(x.clone()).or_insert(0);
    *e += 1;
    let k = *e;
    out.add_term(BasisWord { m: w.m.clone(), j }, c * int(k));
}

fn mul_right_letter(u: &UElement, g: &LGenerator) -> UElement {
    let mut out = UElement::zero();
    for (w, c) in u.terms() {
        match g {
            LGenerator::P(i) => mul_right_p(w, *i, c, &mut out),
            LGenerator::D(x) => mul_right_d(w, x, c, &mut out),
        }
    }
    out
}

/// Normal-orders a raw word into the PBW basis.
pub fn normal_form(dim: usize, word: &[LGenerator]) -> UElement {
    word.iter().fold(UElement::one(dim), |u, g| mul_right_letter(&u, g))
}

/// Normal ordering by explicit rewriting of raw words, with the redex at
/// each step picked by `choose(count)` (which must return an index below
/// `count`). Any strategy yields the same result.
pub fn normal_form_by_rewriting(
    dim: usize,
    word: &[LGenerator],
    choose: &mut dyn FnMut(usize) -> usize,
) -> UElement {
    let mut pending: BTreeMap<Word, Q> = BTreeMap::new();
    pending.insert(word.to_vec(), Q::one());
    let inversions = |w: &Word| -> Vec<usize> { (0..w.len().saturating_sub(1)).filter(|&p| w[p] > w[p + 1]).collect() };
    loop {
        let open: Vec<Word> = pending.keys().filter(|w| !inversions(w).is_empty()).cloned().collect();
        if open.is_empty() {
            break;
        }
        let w = open[choose(open.len())].clone();
        let c = pending.remove(&w).expect("present");
        let spots = inversions(&w);
        let p = spots[choose(spots.len())];
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        add_into(&mut pending, swapped, c.clone());
        if let (LGenerator::D(y), LGenerator::P(i)) = (&w[p], &w[p + 1]) {
            let ni = y.n.get(*i);
            if ni > 0 {
                let mut shorter = w.clone();
                shorter[p] = LGenerator::d(y.gamma.clone(), y.n.dec(*i).expect("positive"));
                shorter.remove(p + 1);
                add_into(&mut pending, shorter, c * int(ni));
            }
        }
    }
    let mut out = UElement::zero();
    for (w, c) in pending {
        let mut m = NVec::zero(dim);
        let mut j = FMono::new();
        for g in &w {
            match g {
                LGenerator::P(i) => m = m.inc(*i),
                LGenerator::D(x) => *j.entry(x.clone()).or_insert(0) += 1,
            }
        }
        let b = BasisWord { m, j };
        let k = int(b.factorial());
        out.add_term(b, c * k);
    }
    out
}

/// Concatenation product of two basis words.
pub fn conc_basis(a: &BasisWord, b: &BasisWord) -> UElement {
    let mut u = UElement::basis(a.clone());
    for (i, &c) in b.m.components().iter().enumerate() {
        for _ in 0..c {
            u = mul_right_letter(&u, &LGenerator::P(i + 1));
        }
    }
    let scale = Q::new(BigInt::one(), b.m.factorial());
    let mut out = UElement::zero();
    for (w, c) in u.terms() {
        let j = j_add(&w.j, &b.j);
        let k = int(j_binomial(&w.j, &b.j));
        out.add_term(BasisWord { m: w.m.clone(), j }, c * &scale * k);
    }
    out
}

/// Concatenation product in 𝒰(L).
pub fn conc(u: &UElement, v: &UElement) -> UElement {
    let mut out = UElement::zero();
    for (a, ca) in u.terms() {
        for (b, cb) in v.terms() {
            out.add_scaled(&conc_basis(a, b), &(ca * cb));
        }
    }
    out
}

/// The counit: the coefficient of 𝟙.
pub fn counit(u: &UElement) -> Q {
    u.terms().find(|(w, _)| w.is_unit()).map(|(_, c)| c.clone()).unwrap_or_else(Q::zero)
}

/// The coshuffle coproduct Δ_∗, as coefficients of basis-word pairs.
pub fn delta_star(u: &UElement) -> BTreeMap<(BasisWord, BasisWord), Q> {
    let mut out = BTreeMap::new();
    for (w, c) in u.terms() {
        for pair in w.splits() {
            add_into(&mut out, pair, c.clone());
        }
    }
    out
}

/// Grade of a basis word.
pub fn grade_u(w: &BasisWord, alpha: Grade) -> Grade {
    w.grade(alpha)
}

fn fcomb_mul_letter(comb: &FComb, x: &DLetter, c: &Q, out: &mut FComb) {
    for (j, cj) in comb {
        let mut j2 = j.clone();
        let e = j2.entry(x.clone()).or_insert(0);
        *e += 1;
        let k = *e;
        add_into(out, j2, cj * c * int(k));
    }
}

fn fcomb_mul(a: &FComb, b: &FComb) -> FComb {
    let mut out = FComb::new();
    for (ja, ca) in a {
        for (jb, cb) in b {
            add_into(&mut out, j_add(ja, jb), ca * cb * int(j_binomial(ja, jb)));
        }
    }
    out
}

/// δ^k(F_J)/k! where δ_i(y) = [y, P(i)] = n_i(y)·y'. Reordering a block of
/// tilt letters past k shift letters produces exactly these terms.
fn lowered_block(j: &FMono, k: &NVec) -> FComb {
    let letters = j_letters(j);
    fn rec(letters: &[&DLetter], k: &NVec, acc: FComb) -> FComb {
        let Some((x, rest)) = letters.split_first() else {
            return if k.is_zero() { acc } else { FComb::new() };
        };
        let mut out = FComb::new();
        for kx in x.n.below() {
            if !kx.le(k) {
                continue;
            }
            let weight = int(x.n.binomial(&kx));
            let lowered = DLetter::new(x.gamma.clone(), x.n.checked_sub(&kx).expect("below"));
            let mut next = FComb::new();
            fcomb_mul_letter(&acc, &lowered, &weight, &mut next);
            for (jj, c) in rec(rest, &k.checked_sub(&kx).expect("le"), next) {
                add_into(&mut out, jj, c);
            }
        }
        out
    }
    let start = FComb::from([(FMono::new(), Q::new(BigInt::one(), j_factorial(j)))]);
    rec(&letters, k, start)
}

/// F_J E_m written in the PBW basis by the closed reordering identity
/// F_J E_m = Σ_{k ≤ m} E_{m−k} · δ^k(F_J)/k!.
pub fn reorder_block(j: &FMono, m: &NVec) -> UElement {
    let mut out = UElement::zero();
    for k in m.below() {
        let rest = m.checked_sub(&k).expect("below");
        for (jj, c) in lowered_block(j, &k) {
            out.add_term(BasisWord { m: rest.clone(), j: jj }, c);
        }
    }
    out
}

impl Engine {
    /// Normal form of a raw word after validating its generators.
    pub fn normal_form(&self, word: &[LGenerator]) -> Result<UElement> {
        for g in word {
            self.config().validate(g)?;
        }
        Ok(normal_form(self.dim(), word))
    }

    pub fn conc(&self, u: &UElement, v: &UElement) -> UElement {
        conc(u, v)
    }

    /// ρ̄(E_w)(z^γ), memoized.
    pub fn rho_basis_monomial(&self, w: &BasisWord, g: &MultiIndex) -> Arc<Polynomial> {
        if w.is_unit() {
            return Arc::new(Polynomial::monomial(g.clone()));
        }
        memo(&self.caches().basis_rho, (w.clone(), g.clone()), || {
            let mut ns: Vec<NVec> = w.d_letters().iter().map(|x| x.n.clone()).collect();
            ns.sort();
            let der = self.caches().rho.derive(&w.m, &ns, g);
            if der.is_zero() {
                return Polynomial::zero();
            }
            let prefactor = w.d_letters().iter().fold(MultiIndex::empty(), |acc, x| acc.add(&x.gamma));
            der.shift(&prefactor).scale(&Q::new(BigInt::one(), w.factorial()))
        })
    }

    /// ρ̄(u)(p).
    pub fn rho_apply(&self, u: &UElement, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (w, cw) in u.terms() {
            for (g, cg) in p.terms() {
                self.rho_basis_monomial(w, g).add_scaled_into(&(cw * cg), &mut out);
            }
        }
        out
    }

    /// ρ̂(a₁⋯a_n) = (a₁·D₁)∘⋯∘(a_n·D_n).
    pub fn hat_rho_apply(&self, word: &[LGenerator], p: &Polynomial) -> Polynomial {
        word.iter().rev().fold(p.clone(), |acc, g| g.apply(self.dim(), &acc))
    }

    /// ρ̄(E_w)(z^γ)⊗D^(n) as a combination of tilt letters.
    fn graft_letter(&self, w: &BasisWord, target: &DLetter) -> Vec<(DLetter, Q)> {
        self.rho_basis_monomial(w, &target.gamma)
            .terms()
            .map(|(g, c)| (DLetter::new(g.clone(), target.n.clone()), c.clone()))
            .collect()
    }

    /// E_u ▷ F_J̄ = (1/J̄!) Σ over splittings of u across the letters of J̄ of
    /// Π_l ρ̄(part_l)(z^{γ_l})⊗D^(n_l), as an F-combination.
    pub(crate) fn graft_block(&self, u: &BasisWord, jb: &FMono) -> Arc<FComb> {
        if u.is_unit() {
            return Arc::new(FComb::from([(jb.clone(), Q::one())]));
        }
        if jb.is_empty() {
            return Arc::new(FComb::new());
        }
        memo(&self.caches().graft, (u.clone(), jb.clone()), || {
            let letters = j_letters(jb);
            let mut table: HashMap<(usize, BasisWord), FComb> = HashMap::new();
            let mut out = self.graft_rec(&letters, 0, u, &mut table);
            let scale = Q::new(BigInt::one(), j_factorial(jb));
            for c in out.values_mut() {
                *c *= &scale;
            }
            out
        })
    }

    fn graft_rec(
        &self,
        letters: &[&DLetter],
        l: usize,
        rem: &BasisWord,
        table: &mut HashMap<(usize, BasisWord), FComb>,
    ) -> FComb {
        if l + 1 == letters.len() {
            let mut out = FComb::new();
            for (x, c) in self.graft_letter(rem, letters[l]) {
                add_into(&mut out, FMono::from([(x, 1)]), c);
            }
            return out;
        }
        if let Some(hit) = table.get(&(l, rem.clone())) {
            return hit.clone();
        }
        let mut out = FComb::new();
        for part in rem.sub_words() {
            let head = self.graft_letter(&part, letters[l]);
            if head.is_empty() {
                continue;
            }
            let tail = self.graft_rec(letters, l + 1, &rem.checked_sub(&part).expect("sub word"), table);
            if tail.is_empty() {
                continue;
            }
            for (x, c) in &head {
                fcomb_mul_letter(&tail, x, c, &mut out);
            }
        }
        table.insert((l, rem.clone()), out.clone());
        out
    }

    /// E_u ▷ E_v.
    pub fn tri_ext_basis(&self, u: &BasisWord, v: &BasisWord) -> UElement {
        if u.is_unit() {
            return UElement::basis(v.clone());
        }
        let mut out = UElement::zero();
        for (j, c) in self.graft_block(u, &v.j).iter() {
            out.add_term(BasisWord { m: v.m.clone(), j: j.clone() }, c.clone());
        }
        out
    }

    /// The Guin–Oudom extension u ▷ v.
    pub fn tri_ext(&self, u: &UElement, v: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                out.add_scaled(&self.tri_ext_basis(a, b), &(ca * cb));
            }
        }
        out
    }

    /// E_u ▷̄ E_v = Σ_{(u)} E_{u'}·(E_{u''} ▷ E_v), memoized.
    pub fn gl_basis(&self, u: &BasisWord, v: &BasisWord) -> Arc<UElement> {
        if u.is_unit() {
            return Arc::new(UElement::basis(v.clone()));
        }
        memo(&self.caches().gl, (u.clone(), v.clone()), || {
            let mut out = UElement::zero();
            for (a, b) in u.splits() {
                let grafted = self.tri_ext_basis(&b, v);
                for (w, c) in grafted.terms() {
                    out.add_scaled(&conc_basis(&a, w), c);
                }
            }
            out
        })
    }

    /// The associative product u ▷̄ v.
    pub fn gl(&self, u: &UElement, v: &UElement) -> UElement {
        let mut out = UElement::zero();
        for (a, ca) in u.terms() {
            for (b, cb) in v.terms() {
                out.add_scaled(&self.gl_basis(a, b), &(ca * cb));
            }
        }
        out
    }

    /// E_mF_J ▷̄ E_m̄F_J̄ by the closed expansion
    /// Σ E_{m'} [F_{J'} E_m̄] (E_{m''}F_{J''} ▷ F_J̄), with the bracket term
    /// reordered by [`reorder_block`] and E, F blocks merged by binomials.
    pub fn gl_explicit(&self, u: &BasisWord, v: &BasisWord) -> UElement {
        let mut out = UElement::zero();
        for (a, b) in u.splits() {
            let grafted = self.graft_block(&b, &v.j);
            if grafted.is_empty() {
                continue;
            }
            for (mid, c_mid) in reorder_block(&a.j, &v.m).terms() {
                let m = a.m.add(&mid.m);
                let e_merge = int(m.binomial(&a.m));
                let front = FComb::from([(mid.j.clone(), c_mid * e_merge)]);
                for (j, c) in fcomb_mul(&front, &grafted) {
                    out.add_term(BasisWord { m: m.clone(), j }, c);
                }
            }
        }
        out
    }

    /// Φ(a₁⋯a_n) = a₁ ▷̄ (a₂ ▷̄ ⋯ ▷̄ a_n).
    pub fn phi(&self, word: &[LGenerator]) -> UElement {
        let dim = self.dim();
        let mut acc = UElement::one(dim);
        for g in word.iter().rev() {
            acc = self.gl(&UElement::generator(dim, g), &acc);
        }
        acc
    }
}

/// Letter-level ▷ between two generators, lifted to words: used by callers
/// that need L-products inside 𝒰(L).
pub fn generator_as_element(dim: usize, g: &LGenerator) -> UElement {
    UElement::generator(dim, g)
}
