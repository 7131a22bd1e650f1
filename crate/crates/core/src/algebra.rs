//! Polynomials in the variables z_k, z_n and formal series truncated at a
//! homogeneity cutoff.

use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{Grade, MultiIndex};
use crate::util::add_into;
use crate::Q;

/// A finite rational combination of monomials z^γ. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Polynomial {
    terms: BTreeMap<MultiIndex, Q>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(MultiIndex::empty())
    }

    pub fn monomial(g: MultiIndex) -> Self {
        Self::term(g, Q::one())
    }

    pub fn term(g: MultiIndex, c: Q) -> Self {
        let mut p = Self::zero();
        p.add_term(g, c);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Q)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (g, c) in terms {
            p.add_term(g, c);
        }
        p
    }

    pub fn add_term(&mut self, g: MultiIndex, c: Q) {
        add_into(&mut self.terms, g, c);
    }

    pub fn coeff(&self, g: &MultiIndex) -> Q {
        self.terms.get(g).cloned().unwrap_or_else(Q::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Q)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<MultiIndex, Q> {
        self.terms
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

    pub fn scale(&self, c: &Q) -> Polynomial {
        if c.is_zero() {
            return Self::zero();
        }
        Polynomial { terms: self.terms.iter().map(|(g, x)| (g.clone(), x * c)).collect() }
    }

    /// Multiplication by the monomial z^g.
    pub fn shift(&self, g: &MultiIndex) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(h, x)| (h.add(g), x.clone())).collect() }
    }

    /// Adds `c·self` into `acc`.
    pub fn add_scaled_into(&self, c: &Q, acc: &mut Polynomial) {
        for (g, x) in &self.terms {
            acc.add_term(g.clone(), x * c);
        }
    }

    pub fn max_homogeneity(&self, alpha: Grade) -> Option<Grade> {
        self.terms.keys().map(|g| g.homogeneity(alpha)).max()
    }

    /// Drops every term of homogeneity above `cutoff`.
    pub fn truncate(&self, alpha: Grade, cutoff: Grade) -> Polynomial {
        Polynomial {
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| g.homogeneity(alpha) <= cutoff)
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&Polynomial> for Polynomial {
    fn add_assign(&mut self, rhs: &Polynomial) {
        for (g, c) in &rhs.terms {
            self.add_term(g.clone(), c.clone());
        }
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        let mut out = self.clone();
        for (g, c) in &rhs.terms {
            out.add_term(g.clone(), -c.clone());
        }
        out
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { terms: self.terms.iter().map(|(g, c)| (g.clone(), -c.clone())).collect() }
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        let mut out = Polynomial::zero();
        for (g1, c1) in &self.terms {
            for (g2, c2) in &rhs.terms {
                out.add_term(g1.add(g2), c1 * c2);
            }
        }
        out
    }
}

/// Product of polynomials: z^γ·z^γ' = z^{γ+γ'}.
pub fn poly_mul(a: &Polynomial, b: &Polynomial) -> Polynomial {
    a * b
}

/// A formal series known exactly up to (and including) homogeneity `cutoff`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TruncatedSeries {
    dim: usize,
    alpha: Grade,
    cutoff: Grade,
    terms: Polynomial,
}

impl TruncatedSeries {
    pub fn zero(dim: usize, alpha: Grade, cutoff: Grade) -> Self {
        TruncatedSeries { dim, alpha, cutoff, terms: Polynomial::zero() }
    }

    /// The series agreeing with `p` up to `cutoff`; higher terms are dropped.
    pub fn from_polynomial(dim: usize, alpha: Grade, cutoff: Grade, p: &Polynomial) -> Self {
        TruncatedSeries { dim, alpha, cutoff, terms: p.truncate(alpha, cutoff) }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn alpha(&self) -> Grade {
        self.alpha
    }

    pub fn cutoff(&self) -> Grade {
        self.cutoff
    }

    /// The stored terms, all of homogeneity ≤ cutoff.
    pub fn terms(&self) -> &Polynomial {
        &self.terms
    }

    /// Adds a term; terms beyond the cutoff are ignored.
    pub fn add_term(&mut self, g: MultiIndex, c: Q) {
        if g.homogeneity(self.alpha) <= self.cutoff {
            self.terms.add_term(g, c);
        }
    }

    /// Coefficient of z^g; refused beyond the cutoff.
    pub fn coeff(&self, g: &MultiIndex) -> Result<Q> {
        let h = g.homogeneity(self.alpha);
        if h > self.cutoff {
            return Err(Error::Truncation { homogeneity: h, cutoff: self.cutoff });
        }
        Ok(self.terms.coeff(g))
    }

    pub fn constant_term(&self) -> Q {
        self.terms.coeff(&MultiIndex::empty())
    }

    pub fn scale(&self, c: &Q) -> TruncatedSeries {
        TruncatedSeries { terms: self.terms.scale(c), ..self.clone() }
    }

    fn check_compatible(&self, other: &TruncatedSeries) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::Dimension { expected: self.dim, found: other.dim });
        }
        if self.alpha != other.alpha {
            return Err(Error::Config(format!(
                "series graded with different alpha ({} and {})",
                self.alpha, other.alpha
            )));
        }
        Ok(())
    }

    /// Sum; the result is known up to the smaller cutoff.
    pub fn add(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let cutoff = self.cutoff.min(other.cutoff);
        Ok(TruncatedSeries::from_polynomial(self.dim, self.alpha, cutoff, &(&self.terms + &other.terms)))
    }

    /// Product; the result is known up to the smaller cutoff.
    pub fn mul(&self, other: &TruncatedSeries) -> Result<TruncatedSeries> {
        self.check_compatible(other)?;
        let cutoff = self.cutoff.min(other.cutoff);
        let mut out = TruncatedSeries::zero(self.dim, self.alpha, cutoff);
        let other_terms: Vec<_> = other
            .terms
            .terms()
            .map(|(g, c)| (g, c, g.homogeneity(self.alpha)))
            .collect();
        for (g1, c1) in self.terms.terms() {
            let h1 = g1.homogeneity(self.alpha);
            for (g2, c2, h2) in &other_terms {
                if h1 + h2 <= cutoff {
                    out.terms.add_term(g1.add(g2), c1 * *c2);
                }
            }
        }
        Ok(out)
    }
}

/// Product of truncated series.
pub fn series_mul(a: &TruncatedSeries, b: &TruncatedSeries) -> Result<TruncatedSeries> {
    a.mul(b)
}

/// ⟨s, p⟩ = Σ s_γ p_γ; refused if p reaches beyond the cutoff of s.
pub fn pairing(s: &TruncatedSeries, p: &Polynomial) -> Result<Q> {
    let mut acc = Q::zero();
    for (g, c) in p.terms() {
        acc += s.coeff(g)? * c;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::{IndexSymbol, NVec};
    use crate::util::int;

    fn a() -> Grade {
        Grade::new(2, 5)
    }

    fn z0() -> MultiIndex {
        MultiIndex::pure(0)
    }

    fn zs(n: u32) -> MultiIndex {
        MultiIndex::spatial(NVec::from_slice(&[n]))
    }

    #[test]
    fn products() {
        let p = Polynomial::monomial(z0());
        assert_eq!(&p * &p, Polynomial::monomial(z0().add(&z0())));
        assert_eq!(&Polynomial::one() * &p, p);
        let q = &Polynomial::monomial(z0()) + &Polynomial::term(MultiIndex::pure(1), int(2));
        let r = &q * &Polynomial::monomial(zs(1));
        let expect = Polynomial::from_terms([
            (z0().add(&zs(1)), int(1)),
            (MultiIndex::pure(1).add(&zs(1)), int(2)),
        ]);
        assert_eq!(r, expect);
    }

    #[test]
    fn zero_coefficients_vanish() {
        let p = &Polynomial::monomial(z0()) - &Polynomial::monomial(z0());
        assert!(p.is_zero());
    }

    #[test]
    fn series_square() {
        let s = TruncatedSeries::from_polynomial(
            1,
            a(),
            Grade::from_integer(2),
            &(&Polynomial::one() + &Polynomial::monomial(zs(1))),
        );
        let sq = s.mul(&s).unwrap();
        let expect = Polynomial::from_terms([
            (MultiIndex::empty(), int(1)),
            (zs(1), int(2)),
            (zs(1).add(&zs(1)), int(1)),
        ]);
        assert_eq!(sq.terms(), &expect);
        let c0 = TruncatedSeries::from_polynomial(1, a(), Grade::from_integer(0), s.terms());
        assert_eq!(c0.mul(&c0).unwrap().terms(), &Polynomial::one());
    }

    #[test]
    fn series_square_of_spatial_sum() {
        // (Σ_m z_(m))² at cutoff 2 keeps z_(1)² only; brute-force convolution below
        let s = TruncatedSeries::from_polynomial(
            1,
            a(),
            Grade::from_integer(2),
            &Polynomial::from_terms((1..=4).map(|m| (zs(m), int(1)))),
        );
        let sq = s.mul(&s).unwrap();
        let mut brute = Polynomial::zero();
        for m1 in 1..=4 {
            for m2 in 1..=4 {
                let g = zs(m1).add(&zs(m2));
                if g.homogeneity(a()) <= Grade::from_integer(2) {
                    brute.add_term(g, int(1));
                }
            }
        }
        assert_eq!(sq.terms(), &brute);
        assert_eq!(sq.terms(), &Polynomial::monomial(zs(1).add(&zs(1))));
    }

    #[test]
    fn pairing_examples() {
        let s = TruncatedSeries::from_polynomial(
            1,
            a(),
            Grade::from_integer(1),
            &(&Polynomial::one() + &Polynomial::term(z0(), int(3))),
        );
        assert_eq!(pairing(&s, &Polynomial::monomial(z0())).unwrap(), int(3));
        assert_eq!(pairing(&s, &Polynomial::one()).unwrap(), int(1));
        assert_eq!(s.constant_term(), int(1));
        let too_high = Polynomial::monomial(MultiIndex::unit(IndexSymbol::Pure(0)).add(&zs(1)));
        assert!(matches!(pairing(&s, &too_high), Err(Error::Truncation { .. })));
    }

    #[test]
    fn shifted_pairing() {
        let series = TruncatedSeries::from_polynomial(
            1,
            a(),
            Grade::from_integer(2),
            &Polynomial::from_terms([(z0(), int(5)), (MultiIndex::pure(1), int(7))]),
        );
        let z = TruncatedSeries::from_polynomial(1, a(), Grade::from_integer(2), &Polynomial::monomial(z0()));
        let prod = z.mul(&series).unwrap();
        assert_eq!(pairing(&prod, &Polynomial::monomial(z0().add(&z0()))).unwrap(), int(5));
    }
}
