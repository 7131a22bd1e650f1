//! Text forms of every element kind and their parsers.
//!
//! ```text
//! multi-index   {0:2, 1:1, (1,0):3}
//! polynomial    3*z{0:1} - 1/2*z{1:1} + z{}
//! generator     P(1)   D{0:1|(0)}   D{{0:1}|(0)}   D{|(0)}
//! word          D{0:1|(0)} . P(1)
//! basis word    E(1)F[({0:1}|(0)):1]      (𝟙 is written 1)
//! U-element     2*E(2) - 1/2*F[({0:1}|(0)):2] + 3      (words allowed as factors)
//! ```
//!
//! Parsed values are checked against a [`Config`]: vector lengths must equal
//! the dimension and generators must belong to the configured space.
//! Printing is canonical, so `parse(print(x)) == x`.

use std::fmt::{self, Display, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Polynomial, TruncatedSeries};
use crate::config::Config;
use crate::envelope::{normal_form, BasisWord, FMono, UElement};
use crate::error::{Error, Result};
use crate::index::{Grade, IndexSymbol, MultiIndex, NVec};
use crate::postlie::{DLetter, LElement, LGenerator};
use crate::Q;

impl Display for NVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_char('(')?;
        for (i, c) in self.components().iter().enumerate() {
            if i > 0 {
                f.write_char(',')?;
            }
            write!(f, "{c}")?;
        }
        f.write_char(')')
    }
}

impl Display for IndexSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IndexSymbol::Pure(k) => write!(f, "{k}"),
            IndexSymbol::Spatial(n) => write!(f, "{n}"),
        }
    }
}

struct Entries<'a>(&'a MultiIndex);

impl Display for Entries<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, c)) in self.0.entries().iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{s}:{c}")?;
        }
        Ok(())
    }
}

impl Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", Entries(self))
    }
}

impl Display for DLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{{{}|{}}}", Entries(&self.gamma), self.n)
    }
}

impl Display for LGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LGenerator::P(i) => write!(f, "P({i})"),
            LGenerator::D(x) => write!(f, "{x}"),
        }
    }
}

impl Display for BasisWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_unit() {
            return f.write_char('1');
        }
        if !self.m().is_zero() {
            write!(f, "E{}", self.m())?;
        }
        if !self.j().is_empty() {
            f.write_str("F[")?;
            for (i, (x, c)) in self.j().iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "({}|{}):{c}", x.gamma, x.n)?;
            }
            f.write_char(']')?;
        }
        Ok(())
    }
}

/// Writes Σ c·factor with signs folded into the separators; unit factors
/// (`None`) print as the bare coefficient.
fn write_sum<'a, T: Display + 'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (Option<&'a T>, &'a Q)>,
) -> fmt::Result {
    let mut first = true;
    for (factor, c) in terms {
        let negative = c.is_negative();
        match (first, negative) {
            (true, true) => f.write_char('-')?,
            (true, false) => {}
            (false, true) => f.write_str(" - ")?,
            (false, false) => f.write_str(" + ")?,
        }
        first = false;
        let a = c.abs();
        match factor {
            None => write!(f, "{a}")?,
            Some(x) if a.is_one() => write!(f, "{x}")?,
            Some(x) => write!(f, "{a}*{x}")?,
        }
    }
    if first {
        f.write_char('0')?;
    }
    Ok(())
}

struct Mono<'a>(&'a MultiIndex);

impl Display for Mono<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "z{}", self.0)
    }
}

impl Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let monos: Vec<(Option<Mono>, &Q)> =
            self.terms().map(|(g, c)| ((!g.is_empty()).then_some(Mono(g)), c)).collect();
        write_sum(f, monos.iter().map(|(m, c)| (m.as_ref(), *c)))
    }
}

impl Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.terms())
    }
}

impl Display for LElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(g, c)| (Some(g), c)))
    }
}

impl Display for UElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_sum(f, self.terms().map(|(w, c)| ((!w.is_unit()).then_some(w), c)))
    }
}

/// A word printed with ` . ` between letters; the empty word prints as `1`.
pub fn format_word(word: &[LGenerator]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" . ")
}

struct Parser {
    chars: Vec<char>,
    pos: usize,
}

impl Parser {
    fn new(src: &str) -> Self {
        Parser { chars: src.chars().collect(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        let before: String = self.chars[..self.pos.min(self.chars.len())].iter().collect();
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Error::Parse { line, column, message: message.into() }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&mut self, offset: usize) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos + offset).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            let found = self.peek().map_or("end of input".to_string(), |x| format!("{x:?}"));
            Err(self.error(format!("expected {c:?}, found {found}")))
        }
    }

    fn finish(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected {c:?} after the end of the expression"))),
        }
    }

    fn digits(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn nat(&mut self) -> Result<u32> {
        let at = self.pos;
        let s = self.digits()?;
        s.parse().map_err(|_| {
            self.pos = at;
            self.error(format!("number {s} is too large"))
        })
    }

    fn rational(&mut self) -> Result<Q> {
        let num: BigInt = self.digits()?.parse().expect("digits");
        if self.peek() == Some('/') {
            self.pos += 1;
            let at = self.pos;
            let den: BigInt = self.digits()?.parse().expect("digits");
            if den.is_zero() {
                self.pos = at;
                return Err(self.error("zero denominator"));
            }
            return Ok(Q::new(num, den));
        }
        Ok(Q::from_integer(num))
    }

    fn vector(&mut self) -> Result<NVec> {
        self.expect('(')?;
        let mut c = vec![self.nat()?];
        while self.eat(',') {
            c.push(self.nat()?);
        }
        self.expect(')')?;
        Ok(NVec::from_slice(&c))
    }

    fn symbol(&mut self) -> Result<IndexSymbol> {
        if self.peek() == Some('(') {
            let at = self.pos;
            let n = self.vector()?;
            if n.is_zero() {
                self.pos = at;
                return Err(self.error("spatial index must be a nonzero vector"));
            }
            Ok(IndexSymbol::Spatial(n))
        } else {
            Ok(IndexSymbol::Pure(self.nat()?))
        }
    }

    /// `key:count, ...` up to (not including) the closing delimiter.
    fn entries(&mut self, close: char) -> Result<MultiIndex> {
        let mut out = MultiIndex::empty();
        if self.peek() == Some(close) {
            return Ok(out);
        }
        loop {
            let s = self.symbol()?;
            self.expect(':')?;
            let c = self.nat()?;
            out = out.adjust(&s, c as i64).expect("nonnegative");
            if !self.eat(',') {
                return Ok(out);
            }
        }
    }

    fn multi_index(&mut self) -> Result<MultiIndex> {
        self.expect('{')?;
        let g = self.entries('}')?;
        self.expect('}')?;
        Ok(g)
    }

    /// γ inside a generator or F entry: either bare entries or a braced multi-index.
    fn gamma(&mut self) -> Result<MultiIndex> {
        if self.peek() == Some('{') {
            self.multi_index()
        } else {
            self.entries('|')
        }
    }

    fn generator(&mut self) -> Result<LGenerator> {
        match self.peek() {
            Some('P') => {
                self.pos += 1;
                self.expect('(')?;
                let at = self.pos;
                let i = self.nat()?;
                if i == 0 {
                    self.pos = at;
                    return Err(self.error("shift generators are numbered from 1"));
                }
                self.expect(')')?;
                Ok(LGenerator::P(i as usize))
            }
            Some('D') => {
                self.pos += 1;
                self.expect('{')?;
                let gamma = self.gamma()?;
                self.expect('|')?;
                let n = self.vector()?;
                self.expect('}')?;
                Ok(LGenerator::d(gamma, n))
            }
            _ => Err(self.error("expected a generator P(i) or D{...|(...)}")),
        }
    }

    fn word(&mut self) -> Result<Vec<LGenerator>> {
        if self.peek() == Some('1') {
            self.pos += 1;
            return Ok(Vec::new());
        }
        let mut w = vec![self.generator()?];
        while self.eat('.') {
            w.push(self.generator()?);
        }
        Ok(w)
    }

    fn basis_word(&mut self, dim: usize) -> Result<BasisWord> {
        let mut m = None;
        if self.peek() == Some('E') {
            self.pos += 1;
            m = Some(self.vector()?);
        }
        let mut j = FMono::new();
        if self.peek() == Some('F') {
            self.pos += 1;
            self.expect('[')?;
            if self.peek() != Some(']') {
                loop {
                    self.expect('(')?;
                    let gamma = self.gamma()?;
                    self.expect('|')?;
                    let n = self.vector()?;
                    self.expect(')')?;
                    self.expect(':')?;
                    let c = self.nat()?;
                    *j.entry(DLetter::new(gamma, n)).or_insert(0) += c;
                    if !self.eat(',') {
                        break;
                    }
                }
            }
            self.expect(']')?;
        } else if m.is_none() {
            return Err(self.error("expected a basis word E(...)F[...]"));
        }
        let m = m.unwrap_or_else(|| NVec::zero(dim));
        Ok(BasisWord::new(m, j))
    }

    /// `[sign] term (sign term)*`, each term `rat`, `rat*factor` or `factor`.
    fn linear<T>(
        &mut self,
        starts_factor: impl Fn(char) -> bool,
        mut factor: impl FnMut(&mut Self) -> Result<T>,
    ) -> Result<Vec<(Q, Option<T>)>> {
        let mut out = Vec::new();
        let mut sign = if self.eat('-') {
            -Q::one()
        } else {
            self.eat('+');
            Q::one()
        };
        loop {
            let term = match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let r = self.rational()?;
                    if self.eat('*') {
                        (r, Some(factor(self)?))
                    } else {
                        (r, None)
                    }
                }
                Some(c) if starts_factor(c) => (Q::one(), Some(factor(self)?)),
                _ => return Err(self.error("expected a term")),
            };
            out.push((sign * term.0, term.1));
            sign = if self.eat('+') {
                Q::one()
            } else if self.eat('-') {
                -Q::one()
            } else {
                return Ok(out);
            };
        }
    }
}

fn check_generator(cfg: &Config, g: &LGenerator) -> Result<()> {
    cfg.validate(g)
}

/// Parses a whole input with `f`, rejecting trailing text.
fn parse_all<T>(src: &str, f: impl FnOnce(&mut Parser) -> Result<T>) -> Result<T> {
    let mut p = Parser::new(src);
    let out = f(&mut p)?;
    p.finish()?;
    Ok(out)
}

/// A rational `p` or `p/q`, optionally signed.
pub fn parse_rational(src: &str) -> Result<Q> {
    parse_all(src, |p| {
        let neg = p.eat('-');
        let r = p.rational()?;
        Ok(if neg { -r } else { r })
    })
}

/// A grade `p/q` (nonnegative or negative integers allowed).
pub fn parse_grade(src: &str) -> Result<Grade> {
    let r = parse_rational(src)?;
    let conv = |x: &BigInt| -> Result<i64> {
        i64::try_from(x).map_err(|_| Error::Parse { line: 1, column: 1, message: format!("{src} is out of range") })
    };
    Ok(Grade::new(conv(r.numer())?, conv(r.denom())?))
}

pub fn parse_multi_index(src: &str, cfg: &Config) -> Result<MultiIndex> {
    let g = parse_all(src, |p| p.multi_index())?;
    cfg.check_multi_index(&g)?;
    Ok(g)
}

pub fn parse_polynomial(src: &str, cfg: &Config) -> Result<Polynomial> {
    let terms = parse_all(src, |p| {
        p.linear(
            |c| c == 'z',
            |p| {
                p.expect('z')?;
                p.multi_index()
            },
        )
    })?;
    let mut out = Polynomial::zero();
    for (c, g) in terms {
        let g = g.unwrap_or_default();
        cfg.check_multi_index(&g)?;
        out.add_term(g, c);
    }
    Ok(out)
}

pub fn parse_generator(src: &str, cfg: &Config) -> Result<LGenerator> {
    let g = parse_all(src, |p| p.generator())?;
    check_generator(cfg, &g)?;
    Ok(g)
}

pub fn parse_lelement(src: &str, cfg: &Config) -> Result<LElement> {
    let terms = parse_all(src, |p| p.linear(|c| c == 'P' || c == 'D', |p| p.generator()))?;
    let mut out = LElement::zero();
    for (c, g) in terms {
        let Some(g) = g else {
            return Err(Error::Parse { line: 1, column: 1, message: "L has no unit element; every term needs a generator".into() });
        };
        check_generator(cfg, &g)?;
        out.add_term(g, c);
    }
    Ok(out)
}

/// A raw word; `1` is the empty word.
pub fn parse_word(src: &str, cfg: &Config) -> Result<Vec<LGenerator>> {
    let w = parse_all(src, |p| p.word())?;
    w.iter().try_for_each(|g| check_generator(cfg, g))?;
    Ok(w)
}

fn check_basis_word(cfg: &Config, w: &BasisWord) -> Result<()> {
    cfg.check_vec(w.m())?;
    w.j().keys().try_for_each(|x| check_generator(cfg, &LGenerator::D(x.clone())))
}

pub fn parse_basis_word(src: &str, cfg: &Config) -> Result<BasisWord> {
    let w = parse_all(src, |p| {
        if p.peek() == Some('1') && p.peek_at(1).is_none() {
            p.pos += 1;
            return Ok(BasisWord::unit(cfg.dim));
        }
        p.basis_word(cfg.dim)
    })?;
    check_basis_word(cfg, &w)?;
    Ok(w)
}

enum Factor {
    Basis(BasisWord),
    Word(Vec<LGenerator>),
}

/// A combination of basis words and raw words; words are normal-ordered.
pub fn parse_uelement(src: &str, cfg: &Config) -> Result<UElement> {
    let dim = cfg.dim;
    let terms = parse_all(src, |p| {
        p.linear(
            |c| matches!(c, 'E' | 'F' | 'P' | 'D'),
            |p| match p.peek() {
                Some('E') | Some('F') => p.basis_word(dim).map(Factor::Basis),
                _ => p.word().map(Factor::Word),
            },
        )
    })?;
    let mut out = UElement::zero();
    for (c, f) in terms {
        match f {
            None => out.add_term(BasisWord::unit(dim), c),
            Some(Factor::Basis(w)) => {
                check_basis_word(cfg, &w)?;
                out.add_term(w, c);
            }
            Some(Factor::Word(w)) => {
                w.iter().try_for_each(|g| check_generator(cfg, g))?;
                out.add_scaled(&normal_form(dim, &w), &c);
            }
        }
    }
    Ok(out)
}
