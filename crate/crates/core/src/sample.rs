//! Bounded generator pools, random elements, and the randomized check of the
//! post-Lie laws.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::Polynomial;
use crate::engine::Engine;
use crate::envelope::{BasisWord, FMono};
use crate::group::Character;
use crate::index::{enumerate_by_homogeneity, Grade, MultiIndex, NVec};
use crate::postlie::{comp_bracket, pl_bracket, pl_product, DLetter, LElement, LGenerator};
use crate::util::frac;
use crate::Q;

/// Generators of L with |γ| ≤ `max_hom` and pure indices ≤ `max_pure`,
/// shift generators first.
pub fn generator_pool(engine: &Engine, max_hom: Grade, max_pure: u32) -> Vec<LGenerator> {
    let mut out: Vec<LGenerator> = (1..=engine.dim()).map(LGenerator::P).collect();
    out.extend(
        engine
            .l_letters(max_hom)
            .into_iter()
            .filter(|x| x.gamma.max_pure().is_none_or(|k| k <= max_pure))
            .map(LGenerator::D),
    );
    out
}

/// Monomials with |γ| ≤ `max_hom` and pure indices ≤ `max_pure`.
pub fn monomial_pool(engine: &Engine, max_hom: Grade, max_pure: u32) -> Vec<MultiIndex> {
    enumerate_by_homogeneity(engine.dim(), engine.alpha(), max_hom, max_pure)
}

/// A small rational p/q with |p| ≤ 3 and 1 ≤ q ≤ 3.
pub fn small_rational<R: Rng + ?Sized>(rng: &mut R) -> Q {
    frac(rng.gen_range(-3i64..=3), rng.gen_range(1i64..=3))
}

fn nonzero_rational<R: Rng + ?Sized>(rng: &mut R) -> Q {
    loop {
        let q = small_rational(rng);
        if !q.is_zero() {
            return q;
        }
    }
}

/// A combination of one to three generators from `pool`.
pub fn random_lelement<R: Rng + ?Sized>(rng: &mut R, pool: &[LGenerator]) -> LElement {
    let k = rng.gen_range(1..=3);
    LElement::from_terms((0..k).map(|_| (pool.choose(rng).expect("nonempty pool").clone(), nonzero_rational(rng))))
}

/// A raw word of length 0..=`max_len`.
pub fn random_word<R: Rng + ?Sized>(rng: &mut R, pool: &[LGenerator], max_len: usize) -> Vec<LGenerator> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| pool.choose(rng).expect("nonempty pool").clone()).collect()
}

/// A random basis word of grade ≤ `max_grade`, built letter by letter.
pub fn random_basis_word<R: Rng + ?Sized>(rng: &mut R, engine: &Engine, pool: &[LGenerator], max_grade: Grade) -> BasisWord {
    let alpha = engine.alpha();
    let mut w = BasisWord::unit(engine.dim());
    let len = rng.gen_range(0..=4);
    for _ in 0..len {
        let fitting: Vec<&LGenerator> =
            pool.iter().filter(|g| w.grade(alpha) + g.grade(alpha) <= max_grade).collect();
        let Some(g) = fitting.choose(rng) else { break };
        w = w.add(&BasisWord::generator(engine.dim(), g));
    }
    w
}

/// Every basis word over `pool` of grade ≤ `max_grade`.
pub fn basis_words_up_to(engine: &Engine, pool: &[LGenerator], max_grade: Grade) -> Vec<BasisWord> {
    let alpha = engine.alpha();
    let dim = engine.dim();
    let mut out = Vec::new();
    fn rec(i: usize, pool: &[LGenerator], alpha: Grade, dim: usize, left: Grade, cur: &BasisWord, out: &mut Vec<BasisWord>) {
        if i == pool.len() {
            out.push(cur.clone());
            return;
        }
        rec(i + 1, pool, alpha, dim, left, cur, out);
        let g = pool[i].grade(alpha);
        let one = BasisWord::generator(dim, &pool[i]);
        let (mut w, mut left) = (cur.clone(), left);
        while g <= left {
            left -= g;
            w = w.add(&one);
            rec(i + 1, pool, alpha, dim, left, &w, out);
        }
    }
    rec(0, pool, alpha, dim, max_grade, &BasisWord::unit(dim), &mut out);
    out.sort();
    out
}

/// A character with `count` nonzero small-rational generator values.
pub fn random_character<R: Rng + ?Sized>(rng: &mut R, dim: usize, pool: &[LGenerator], count: usize) -> Character {
    let chosen: Vec<&LGenerator> = pool.choose_multiple(rng, count).collect();
    Character::from_values(dim, chosen.into_iter().map(|g| (g.clone(), nonzero_rational(rng))))
}

/// A multiplicity map with a single letter.
pub fn single_letter(x: &DLetter) -> FMono {
    FMono::from([(x.clone(), 1)])
}

/// A random polynomial over monomials from `pool`.
pub fn random_polynomial<R: Rng + ?Sized>(rng: &mut R, pool: &[MultiIndex], terms: usize) -> Polynomial {
    Polynomial::from_terms((0..terms).map(|_| (pool.choose(rng).expect("nonempty pool").clone(), nonzero_rational(rng))))
}

/// Pass/fail counts for one law.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawCount {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
}

/// Outcome of [`check_axioms`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomReport {
    pub laws: Vec<LawCount>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.laws.iter().all(|l| l.failed == 0)
    }
}

fn associator(dim: usize, x: &LElement, y: &LElement, z: &LElement) -> LElement {
    let left = pl_product(dim, x, &pl_product(dim, y, z));
    let right = pl_product(dim, &pl_product(dim, x, y), z);
    &left - &right
}

fn jacobi(x: &LElement, y: &LElement, z: &LElement, br: impl Fn(&LElement, &LElement) -> LElement) -> LElement {
    let a = br(x, &br(y, z));
    let b = br(y, &br(z, x));
    let c = br(z, &br(x, y));
    &(&a + &b) + &c
}

/// Checks on `trials` random triples from the bounded pool:
/// ▷ is a derivation of [·,·]; [x,y]▷z = a(x,y,z) − a(y,x,z); Jacobi for
/// [·,·] and ⟦·,·⟧; and ρ(⟦x,y⟧) = [ρ(x), ρ(y)] on a random monomial.
pub fn check_axioms<R: Rng + ?Sized>(engine: &Engine, rng: &mut R, trials: usize) -> AxiomReport {
    let dim = engine.dim();
    let pool = generator_pool(engine, Grade::from_integer(2), 4);
    let monomials = monomial_pool(engine, Grade::from_integer(2), 4);
    let names = ["derivation", "bracket-associator", "jacobi-bracket", "jacobi-composition", "representation"];
    let mut counts = [(0usize, 0usize); 5];
    for _ in 0..trials {
        let x = random_lelement(rng, &pool);
        let y = random_lelement(rng, &pool);
        let z = random_lelement(rng, &pool);
        let p = random_polynomial(rng, &monomials, 2);
        let checks = [
            {
                let lhs = pl_product(dim, &x, &pl_bracket(&y, &z));
                let rhs = &pl_bracket(&pl_product(dim, &x, &y), &z) + &pl_bracket(&y, &pl_product(dim, &x, &z));
                lhs == rhs
            },
            {
                let lhs = pl_product(dim, &pl_bracket(&x, &y), &z);
                let rhs = &associator(dim, &x, &y, &z) - &associator(dim, &y, &x, &z);
                lhs == rhs
            },
            jacobi(&x, &y, &z, pl_bracket).is_zero(),
            jacobi(&x, &y, &z, |a, b| comp_bracket(dim, a, b)).is_zero(),
            {
                let lhs = comp_bracket(dim, &x, &y).apply(dim, &p);
                let rhs = &x.apply(dim, &y.apply(dim, &p)) - &y.apply(dim, &x.apply(dim, &p));
                lhs == rhs
            },
        ];
        for (c, ok) in counts.iter_mut().zip(checks) {
            if ok {
                c.0 += 1;
            } else {
                c.1 += 1;
            }
        }
    }
    AxiomReport {
        laws: names
            .iter()
            .zip(counts)
            .map(|(name, (passed, failed))| LawCount { name, passed, failed })
            .collect(),
    }
}

/// Vectors of dimension `dim` with |n| ≤ `max`, excluding zero.
pub fn nonzero_vectors(dim: usize, max: u32) -> Vec<NVec> {
    NVec::all_up_to(dim, max).into_iter().filter(|n| !n.is_zero()).collect()
}
