//! Independent reference computations used by the integration tests.
//!
//! Each oracle works from first principles on raw letters and plain
//! derivation applications, never through the memoized engine paths it is
//! compared against.

#![allow(dead_code)]

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use postlie::envelope::{normal_form, FMono};
use postlie::{
    apply_shift, apply_tilt, BasisWord, DLetter, Engine, Grade, LGenerator, MultiIndex, NVec, Polynomial, UElement,
    Q,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

pub fn grade(n: i64, d: i64) -> Grade {
    Grade::new(n, d)
}

/// z^γ · ∂^m ∘ Π D^(n) applied to p by plain sequential application.
pub fn raw_block_apply(dim: usize, m: &NVec, letters: &[&DLetter], p: &Polynomial) -> Polynomial {
    let mut acc = p.clone();
    for x in letters {
        acc = apply_tilt(&x.n, &acc);
    }
    for i in 1..=dim {
        for _ in 0..m.get(i) {
            acc = apply_shift(dim, i, &acc);
        }
    }
    let prefactor = letters.iter().fold(MultiIndex::empty(), |acc, x| acc.add(&x.gamma));
    acc.shift(&prefactor)
}

/// ρ̄(E_w)(p) = raw block application divided by w!.
pub fn rho_oracle(dim: usize, w: &BasisWord, p: &Polynomial) -> Polynomial {
    let letters = w.d_letters();
    raw_block_apply(dim, w.m(), &letters, p).scale(&Q::new(BigInt::one(), w.factorial()))
}

/// ρ̄(u)(p) for a combination u.
pub fn rho_oracle_u(dim: usize, u: &UElement, p: &Polynomial) -> Polynomial {
    let mut out = Polynomial::zero();
    for (w, c) in u.terms() {
        out = &out + &rho_oracle(dim, w, p).scale(c);
    }
    out
}

/// u ▷ v by distributing the letters of the raw word of u over the letters
/// of the raw word of v in every possible way (Guin–Oudom), each block
/// acting on its target letter through its derivations.
pub fn tri_ext_letters(dim: usize, u: &BasisWord, v: &BasisWord) -> UElement {
    let left = u.letters();
    let right = v.letters();
    let norm = Q::new(BigInt::one(), u.factorial() * v.factorial());
    if right.is_empty() {
        return if left.is_empty() { UElement::one(dim).scale(&norm) } else { UElement::zero() };
    }
    let mut words: BTreeMap<Vec<LGenerator>, Q> = BTreeMap::new();
    let n = right.len();
    let total = n.pow(left.len() as u32);
    for code in 0..total {
        let mut assign = vec![Vec::new(); n];
        let mut c = code;
        for g in &left {
            assign[c % n].push(g);
            c /= n;
        }
        // each target letter receives the product of its block
        let mut factors: Vec<Vec<(LGenerator, Q)>> = Vec::with_capacity(n);
        let mut dead = false;
        for (target, block) in right.iter().zip(&assign) {
            match target {
                LGenerator::P(_) => {
                    if block.is_empty() {
                        factors.push(vec![(target.clone(), Q::one())]);
                    } else {
                        dead = true;
                    }
                }
                LGenerator::D(y) => {
                    let mut m = NVec::zero(dim);
                    let mut ds = Vec::new();
                    for g in block {
                        match g {
                            LGenerator::P(i) => m = m.inc(*i),
                            LGenerator::D(x) => ds.push(x),
                        }
                    }
                    let image = raw_block_apply(dim, &m, &ds, &Polynomial::monomial(y.gamma.clone()));
                    let terms: Vec<(LGenerator, Q)> =
                        image.terms().map(|(g, k)| (LGenerator::d(g.clone(), y.n.clone()), k.clone())).collect();
                    if terms.is_empty() {
                        dead = true;
                    }
                    factors.push(terms);
                }
            }
            if dead {
                break;
            }
        }
        if dead {
            continue;
        }
        let mut partial: Vec<(Vec<LGenerator>, Q)> = vec![(Vec::new(), Q::one())];
        for f in &factors {
            let mut next = Vec::new();
            for (w, c) in &partial {
                for (g, k) in f {
                    let mut w2 = w.clone();
                    w2.push(g.clone());
                    next.push((w2, c * k));
                }
            }
            partial = next;
        }
        for (w, c) in partial {
            let e = words.entry(w).or_insert_with(Q::zero);
            *e += c;
        }
    }
    let mut out = UElement::zero();
    for (w, c) in words {
        if !c.is_zero() {
            out.add_scaled(&normal_form(dim, &w), &(c * &norm));
        }
    }
    out
}

/// u ▷̄ v = Σ_{(u)} u' · (u'' ▷ v), with ▷ from the letter-level oracle and
/// the product from normal ordering of concatenated raw words.
pub fn gl_oracle(dim: usize, u: &BasisWord, v: &BasisWord) -> UElement {
    let mut out = UElement::zero();
    for (a, b) in u.splits() {
        let grafted = tri_ext_letters(dim, &b, v);
        let a_letters = a.letters();
        let a_norm = Q::new(BigInt::one(), a.factorial());
        for (w, c) in grafted.terms() {
            let mut raw = a_letters.clone();
            raw.extend(w.letters());
            let w_norm = Q::new(BigInt::one(), w.factorial());
            out.add_scaled(&normal_form(dim, &raw), &(c * &a_norm * w_norm));
        }
    }
    out
}

/// F_J E_m by the closed inversion identity exactly as displayed in the
/// literature for one space dimension: the E_m F_J term plus (1/m!) times a
/// sum over lowerings of the tilt letters with total order |m|, each weighted
/// by (J₀!/J!)·Π(n!)^{J−J₀}. Lowerings are counted per letter occurrence.
pub fn inversion_literal(j: &FMono, m: &NVec) -> UElement {
    assert_eq!(m.dim(), 1, "the displayed identity is one-dimensional");
    let mut out = UElement::basis(BasisWord::new(m.clone(), j.clone()));
    let total = m.norm();
    if total == 0 {
        return out;
    }
    let letters: Vec<&DLetter> = j.iter().flat_map(|(x, &c)| std::iter::repeat_n(x, c as usize)).collect();
    let j_fact: BigInt = j.values().map(|&c| fact(c)).product();
    let n_weight = |mono: &FMono| -> BigInt {
        mono.iter().map(|(x, &c)| num_traits::pow(fact(x.n.get(1)), c as usize)).product()
    };
    let m_fact = fact(total);
    // every tuple of lowerings (k_1, …, k_L) with Σ k_l = |m|, k_l ≤ n_l
    fn tuples(letters: &[&DLetter], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if letters.is_empty() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..=letters[0].n.get(1).min(left) {
            cur.push(k);
            tuples(&letters[1..], left - k, cur, out);
            cur.pop();
        }
    }
    let mut all = Vec::new();
    tuples(&letters, total, &mut Vec::new(), &mut all);
    for t in all {
        let mut j0 = FMono::new();
        for (x, &k) in letters.iter().zip(&t) {
            let lowered = DLetter::new(x.gamma.clone(), NVec::from_slice(&[x.n.get(1) - k]));
            *j0.entry(lowered).or_insert(0) += 1;
        }
        let j0_fact: BigInt = j0.values().map(|&c| fact(c)).product();
        let c = Q::new(j0_fact * n_weight(j), j_fact.clone() * n_weight(&j0) * m_fact.clone());
        out.add_term(BasisWord::new(NVec::zero(1), j0), c);
    }
    out
}

/// F_J E_m by normal ordering the raw word (letters of J then ∂^m), scaled
/// by 1/(J!·m!).
pub fn inversion_by_rewriting(dim: usize, j: &FMono, m: &NVec) -> UElement {
    let fj = BasisWord::new(NVec::zero(dim), j.clone());
    let em = BasisWord::e(m.clone());
    let mut raw = fj.letters();
    raw.extend(em.letters());
    normal_form(dim, &raw).scale(&Q::new(BigInt::one(), fj.factorial() * em.factorial()))
}

pub fn fact(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |a, k| a * BigInt::from(k))
}

/// Forward search for ⟨ρ̄(E_u)(z^b), z^a⟩ over explicit boxes of sources and
/// words: every b in `sources` and every u in `words`.
pub fn coaction_forward(
    engine: &Engine,
    a: &MultiIndex,
    sources: &[MultiIndex],
    words: &[BasisWord],
) -> BTreeMap<(BasisWord, MultiIndex), Q> {
    let mut out = BTreeMap::new();
    let alpha = engine.alpha();
    let ha = a.homogeneity(alpha);
    for b in sources {
        let hb = b.homogeneity(alpha);
        for u in words {
            if hb + u.grade(alpha) != ha {
                continue;
            }
            let c = rho_oracle(engine.dim(), u, &Polynomial::monomial(b.clone())).coeff(a);
            if !c.is_zero() {
                out.insert((u.clone(), b.clone()), c);
            }
        }
    }
    out
}
