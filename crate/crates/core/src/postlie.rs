//! The post-Lie algebra L₀ spanned by 𝟙⊗∂_i and z^γ⊗D^(n), and its graded
//! subalgebra L.
//!
//! The product is (a₁⊗D₁)▷(a₂⊗D₂) = a₁D₁(a₂)⊗D₂ and the bracket is
//! a₁a₂⊗[D₁,D₂]. Only [D^(n), ∂_i] = n_i D^(n−e_i) is nonzero among the basic
//! commutators.

use std::collections::BTreeMap;
use std::ops::{Add, Sub};

use num_traits::{One, Zero};

use crate::algebra::Polynomial;
use crate::config::Space;
use crate::derivations::{apply_shift, apply_tilt};
use crate::index::{Grade, MultiIndex, NVec};
use crate::util::{add_into, int};
use crate::Q;

/// The generator z^γ⊗D^(n).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct DLetter {
    pub gamma: MultiIndex,
    pub n: NVec,
}

impl DLetter {
    pub fn new(gamma: MultiIndex, n: NVec) -> Self {
        DLetter { gamma, n }
    }

    /// |γ| − |n|.
    pub fn grade(&self, alpha: Grade) -> Grade {
        self.gamma.homogeneity(alpha) - self.n.norm() as i64
    }
}

/// A basis element of L₀. The derived order is the PBW order:
/// P(1) < … < P(d) < every D{γ|n}.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum LGenerator {
    /// 𝟙⊗∂_i, counted from 1.
    P(usize),
    D(DLetter),
}

impl LGenerator {
    pub fn d(gamma: MultiIndex, n: NVec) -> Self {
        LGenerator::D(DLetter::new(gamma, n))
    }

    pub fn grade(&self, alpha: Grade) -> Grade {
        match self {
            LGenerator::P(_) => Grade::one(),
            LGenerator::D(x) => x.grade(alpha),
        }
    }

    /// ρ(a⊗D)(p) = a·D(p).
    pub fn apply(&self, dim: usize, p: &Polynomial) -> Polynomial {
        match self {
            LGenerator::P(i) => apply_shift(dim, *i, p),
            LGenerator::D(x) => apply_tilt(&x.n, p).shift(&x.gamma),
        }
    }
}

/// Membership of a generator in L (γ ∈ ℳ⁻ and |γ| > |n|) or L₀ (always).
pub fn in_space(g: &LGenerator, space: Space, alpha: Grade) -> bool {
    match (space, g) {
        (Space::L0, _) | (_, LGenerator::P(_)) => true,
        (Space::L, LGenerator::D(x)) => {
            x.gamma.in_m_minus() && x.gamma.homogeneity(alpha) > Grade::from_integer(x.n.norm() as i64)
        }
    }
}

/// A finite rational combination of generators.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LElement {
    terms: BTreeMap<LGenerator, Q>,
}

impl LElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn generator(g: LGenerator) -> Self {
        Self::term(g, Q::one())
    }

    pub fn term(g: LGenerator, c: Q) -> Self {
        let mut e = Self::zero();
        e.add_term(g, c);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (LGenerator, Q)>>(terms: I) -> Self {
        let mut e = Self::zero();
        for (g, c) in terms {
            e.add_term(g, c);
        }
        e
    }

    pub fn add_term(&mut self, g: LGenerator, c: Q) {
        add_into(&mut self.terms, g, c);
    }

    pub fn coeff(&self, g: &LGenerator) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&LGenerator, &Q)> {
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

    pub fn scale(&self, c: &Q) -> LElement {
        LElement::from_terms(self.terms.iter().map(|(g, x)| (g.clone(), x * c)))
    }

    /// ρ(a)(p) extended linearly.
    pub fn apply(&self, dim: usize, p: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (g, c) in &self.terms {
            g.apply(dim, p).add_scaled_into(c, &mut out);
        }
        out
    }
}

impl<'a> Add<&'a LElement> for &'a LElement {
    type Output = LElement;
    fn add(self, rhs: &LElement) -> LElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LElement> for &'a LElement {
    type Output = LElement;
    fn sub(self, rhs: &LElement) -> LElement {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), -c.clone());
        }
        out
    }
}

/// x ▷ y on generators, accumulated into `out` with weight `c`.
pub(crate) fn generator_product(dim: usize, x: &LGenerator, y: &LGenerator, c: &Q, out: &mut LElement) {
    // anything ▷ P(j) involves D(𝟙) = 0
    let LGenerator::D(target) = y else { return };
    let image = x.apply(dim, &Polynomial::monomial(target.gamma.clone()));
    for (g, k) in image.terms() {
        out.add_term(LGenerator::d(g.clone(), target.n.clone()), c * k);
    }
}

/// [x, y] on generators, accumulated into `out` with weight `c`.
pub(crate) fn generator_bracket(x: &LGenerator, y: &LGenerator, c: &Q, out: &mut LElement) {
    let (d, i, sign) = match (x, y) {
        (LGenerator::D(d), LGenerator::P(i)) => (d, *i, Q::one()),
        (LGenerator::P(i), LGenerator::D(d)) => (d, *i, -Q::one()),
        _ => return,
    };
    let ni = d.n.get(i);
    if ni > 0 {
        let lowered = d.n.dec(i).expect("positive component");
        out.add_term(LGenerator::d(d.gamma.clone(), lowered), c * sign * int(ni));
    }
}

/// The post-Lie product a ▷ b.
pub fn pl_product(dim: usize, a: &LElement, b: &LElement) -> LElement {
    let mut out = LElement::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            generator_product(dim, x, y, &(cx * cy), &mut out);
        }
    }
    out
}

/// The Lie bracket [a, b].
pub fn pl_bracket(a: &LElement, b: &LElement) -> LElement {
    let mut out = LElement::zero();
    for (x, cx) in a.terms() {
        for (y, cy) in b.terms() {
            generator_bracket(x, y, &(cx * cy), &mut out);
        }
    }
    out
}

/// The composition bracket ⟦a, b⟧ = a▷b − b▷a + [a, b].
pub fn comp_bracket(dim: usize, a: &LElement, b: &LElement) -> LElement {
    let ab = pl_product(dim, a, b);
    let ba = pl_product(dim, b, a);
    &(&ab - &ba) + &pl_bracket(a, b)
}
