//! Multivariate polynomials over GF(2), stored sparsely.
//!
//! A polynomial is the set of monomials whose coefficient is 1, so addition
//! is symmetric difference and every polynomial is its own negative. The
//! monomial order is graded (higher total degree first) with a lexicographic
//! tie-break on the variable word, using *natural* variable comparison
//! (`b4 < b11`), so displayed polynomials read the way hand calculations
//! are written: `b4*b7 + b11*b12 + b42`.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;
use thiserror::Error;

use super::gf2m::{FieldElem, Gf2m};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("{0} is not a perfect square over GF(2) (an odd exponent remains)")]
    NotAPerfectSquare(String),
    #[error("no value assigned to variable {0}")]
    MissingVariable(String),
    #[error("assignment for {var} lives in GF(2^{found}), expected GF(2^{expected})")]
    RingMismatch {
        var: String,
        found: u32,
        expected: u32,
    },
    #[error("parse error at byte {at}: {message}")]
    Parse { at: usize, message: String },
    #[error("invalid variable name {0:?}")]
    BadVariableName(String),
}

/// Compare identifiers digit-run-aware, so `b4 < b11` and `a < a' < b`.
fn natural_cmp(a: &str, b: &str) -> Ordering {
    let ab = a.as_bytes();
    let bb = b.as_bytes();
    let (mut i, mut j) = (0, 0);
    while i < ab.len() && j < bb.len() {
        if ab[i].is_ascii_digit() && bb[j].is_ascii_digit() {
            let si = i;
            while i < ab.len() && ab[i].is_ascii_digit() {
                i += 1;
            }
            let sj = j;
            while j < bb.len() && bb[j].is_ascii_digit() {
                j += 1;
            }
            let ra = a[si..i].trim_start_matches('0');
            let rb = b[sj..j].trim_start_matches('0');
            let numeric = ra.len().cmp(&rb.len()).then_with(|| ra.cmp(rb));
            let run = numeric.then_with(|| (i - si).cmp(&(j - sj)));
            if run != Ordering::Equal {
                return run;
            }
        } else {
            match ab[i].cmp(&bb[j]) {
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
                other => return other,
            }
        }
    }
    (ab.len() - i).cmp(&(bb.len() - j))
}

fn is_valid_var_name(name: &str) -> bool {
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'')
}

/// An interned variable name. Ordered naturally (digit runs compare as
/// numbers), which fixes both the solver's pivot choice and display order.
#[derive(Clone, Eq, PartialEq, Hash)]
pub struct Var(Arc<str>);

impl Var {
    /// Construct a variable. Names must look like identifiers:
    /// a letter or `_`, then letters, digits, `_`, or `'`.
    pub fn new(name: &str) -> Result<Self, PolyError> {
        if !is_valid_var_name(name) {
            return Err(PolyError::BadVariableName(name.to_string()));
        }
        Ok(Var(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }
}

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        natural_cmp(&self.0, &other.0)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A power product of variables; the empty product is 1. Factors are kept
/// sorted with strictly positive exponents.
#[derive(Clone, Eq, PartialEq, Hash, Debug)]
pub struct Monomial(Vec<(Var, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(v: Var) -> Self {
        Monomial(vec![(v, 1)])
    }

    pub fn factors(&self) -> &[(Var, u32)] {
        &self.0
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    /// `Some(v)` when the monomial is exactly the single variable `v`.
    pub fn as_linear(&self) -> Option<&Var> {
        match self.0.as_slice() {
            [(v, 1)] => Some(v),
            _ => None,
        }
    }

    pub fn contains(&self, v: &Var) -> bool {
        self.0.iter().any(|(w, _)| w == v)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out: Vec<(Var, u32)> = Vec::with_capacity(self.0.len() + other.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].0.cmp(&other.0[j].0) {
                Ordering::Less => {
                    out.push(self.0[i].clone());
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(other.0[j].clone());
                    j += 1;
                }
                Ordering::Equal => {
                    out.push((self.0[i].0.clone(), self.0[i].1 + other.0[j].1));
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.0[i..]);
        out.extend_from_slice(&other.0[j..]);
        Monomial(out)
    }

    /// The monomial with `v` struck out entirely, and `v`'s old exponent.
    fn without(&self, v: &Var) -> (Monomial, u32) {
        let mut e = 0;
        let rest = self
            .0
            .iter()
            .filter(|(w, k)| {
                if w == v {
                    e = *k;
                    false
                } else {
                    true
                }
            })
            .cloned()
            .collect();
        (Monomial(rest), e)
    }

    /// The variable word with multiplicity, e.g. `a^2*b -> [a, a, b]`.
    /// Used for the lexicographic tie-break of the monomial order.
    fn word(&self) -> Vec<&Var> {
        let mut w = Vec::with_capacity(self.total_degree() as usize);
        for (v, e) in &self.0 {
            for _ in 0..*e {
                w.push(v);
            }
        }
        w
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .total_degree()
            .cmp(&self.total_degree())
            .then_with(|| self.word().cmp(&other.word()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for (v, e) in &self.0 {
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// A multivariate polynomial over GF(2): the set of monomials present.
#[derive(Clone, Eq, PartialEq, Ord, PartialOrd, Hash, Debug, Default)]
pub struct SparsePoly(BTreeSet<Monomial>);

impl SparsePoly {
    pub fn zero() -> Self {
        SparsePoly(BTreeSet::new())
    }

    pub fn one() -> Self {
        SparsePoly(BTreeSet::from([Monomial::one()]))
    }

    pub fn constant(on: bool) -> Self {
        if on {
            Self::one()
        } else {
            Self::zero()
        }
    }

    /// The polynomial consisting of a single variable.
    pub fn var(v: &Var) -> Self {
        SparsePoly(BTreeSet::from([Monomial::var(v.clone())]))
    }

    /// Convenience: `var` from a raw name. Panics on invalid names, which
    /// are a programming error at this level.
    pub fn var_named(name: &str) -> Self {
        Self::var(&Var::new(name).expect("valid variable name"))
    }

    pub fn from_monomials<I: IntoIterator<Item = Monomial>>(monomials: I) -> Self {
        let mut p = SparsePoly::zero();
        for m in monomials {
            p.toggle(m);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0.iter().next().unwrap().is_one()
    }

    pub fn monomials(&self) -> impl Iterator<Item = &Monomial> {
        self.0.iter()
    }

    pub fn term_count(&self) -> usize {
        self.0.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().map(Monomial::total_degree).max().unwrap_or(0)
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        for m in &self.0 {
            for (v, _) in m.factors() {
                out.insert(v.clone());
            }
        }
        out
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        self.0.iter().any(|m| m.contains(v))
    }

    /// Flip the coefficient of one monomial (GF(2) addition of one term).
    fn toggle(&mut self, m: Monomial) {
        if !self.0.remove(&m) {
            self.0.insert(m);
        }
    }

    pub fn add(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = self.clone();
        for m in &other.0 {
            out.toggle(m.clone());
        }
        out
    }

    pub fn mul(&self, other: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for a in &self.0 {
            for b in &other.0 {
                out.toggle(a.mul(b));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> SparsePoly {
        let mut acc = SparsePoly::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Simultaneously substitute polynomials for variables.
    pub fn substitute_map(&self, map: &BTreeMap<Var, SparsePoly>) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for m in &self.0 {
            let mut term = SparsePoly::one();
            for (v, e) in m.factors() {
                let factor = match map.get(v) {
                    Some(rep) => rep.pow(*e),
                    None => SparsePoly(BTreeSet::from([Monomial(vec![(v.clone(), *e)])])),
                };
                term = term.mul(&factor);
            }
            out = out.add(&term);
        }
        out
    }

    pub fn substitute(&self, v: &Var, replacement: &SparsePoly) -> SparsePoly {
        let mut out = SparsePoly::zero();
        for m in &self.0 {
            let (rest, e) = m.without(v);
            if e == 0 {
                out.toggle(m.clone());
            } else {
                let mut term = replacement.pow(e);
                term = term.mul(&SparsePoly(BTreeSet::from([rest])));
                out = out.add(&term);
            }
        }
        out
    }

    /// Square root of a perfect square: every exponent must be even, and
    /// then halving all exponents is exact because squaring is the additive
    /// Frobenius endomorphism over GF(2). `a^2 + b^2 -> a + b`;
    /// `a^2 + a*b` is rejected.
    pub fn sqrt(&self) -> Result<SparsePoly, PolyError> {
        let mut out = BTreeSet::new();
        for m in &self.0 {
            if m.factors().iter().any(|(_, e)| e % 2 != 0) {
                return Err(PolyError::NotAPerfectSquare(self.to_string()));
            }
            let halved = Monomial(
                m.factors()
                    .iter()
                    .map(|(v, e)| (v.clone(), e / 2))
                    .collect(),
            );
            out.insert(halved);
        }
        Ok(SparsePoly(out))
    }

    /// Is this polynomial a perfect square (all exponents even)?
    pub fn is_perfect_square(&self) -> bool {
        self.0
            .iter()
            .all(|m| m.factors().iter().all(|(_, e)| e % 2 == 0))
    }

    /// The sum of the degree-1 monomials: the differential at the origin.
    pub fn linear_part(&self) -> SparsePoly {
        SparsePoly(
            self.0
                .iter()
                .filter(|m| m.total_degree() == 1)
                .cloned()
                .collect(),
        )
    }

    /// Coefficient of the pure linear monomial `v` (0 or 1).
    pub fn linear_coeff(&self, v: &Var) -> bool {
        self.0.contains(&Monomial::var(v.clone()))
    }

    /// Does the polynomial have a constant term?
    pub fn constant_term(&self) -> bool {
        self.0.contains(&Monomial::one())
    }

    /// Evaluate in a concrete field. Every variable occurring in the
    /// polynomial must be assigned a value of exactly the field `field`.
    pub fn specialize(
        &self,
        field: Gf2m,
        assignment: &BTreeMap<Var, FieldElem>,
    ) -> Result<FieldElem, PolyError> {
        for (v, val) in assignment {
            if val.field() != field {
                return Err(PolyError::RingMismatch {
                    var: v.name().to_string(),
                    found: val.field().degree(),
                    expected: field.degree(),
                });
            }
        }
        let mut acc = field.zero();
        for m in &self.0 {
            let mut term = field.one();
            for (v, e) in m.factors() {
                let val = assignment
                    .get(v)
                    .ok_or_else(|| PolyError::MissingVariable(v.name().to_string()))?;
                term = term.mul(val.pow(*e as u64));
            }
            acc = acc.add(term);
        }
        Ok(acc)
    }

    /// Parse the display grammar: sums of `*`-separated factors, each a
    /// variable with optional `^exponent`, a constant `0`/`1`, or a
    /// parenthesized subexpression. Whitespace is ignored.
    pub fn parse(input: &str) -> Result<SparsePoly, PolyError> {
        let mut parser = Parser {
            bytes: input.as_bytes(),
            pos: 0,
        };
        let poly = parser.poly()?;
        parser.skip_ws();
        if parser.pos != parser.bytes.len() {
            return Err(PolyError::Parse {
                at: parser.pos,
                message: "unexpected trailing input".to_string(),
            });
        }
        Ok(poly)
    }
}

impl fmt::Display for SparsePoly {
    /// Terms in the canonical monomial order, joined by ` + `.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for m in &self.0 {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.bytes.get(self.pos).copied()
    }

    fn error(&self, message: &str) -> PolyError {
        PolyError::Parse {
            at: self.pos,
            message: message.to_string(),
        }
    }

    fn poly(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = self.term()?;
        while self.peek() == Some(b'+') {
            self.pos += 1;
            acc = acc.add(&self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<SparsePoly, PolyError> {
        let mut acc = self.factor()?;
        while self.peek() == Some(b'*') {
            self.pos += 1;
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly, PolyError> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.poly()?;
                if self.peek() != Some(b')') {
                    return Err(self.error("expected ')'"));
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                match n {
                    0 => Ok(SparsePoly::zero()),
                    1 => Ok(SparsePoly::one()),
                    _ => Err(self.error("constants over GF(2) must be 0 or 1")),
                }
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                self.pos += 1;
                while self.pos < self.bytes.len() {
                    let c = self.bytes[self.pos];
                    if c.is_ascii_alphanumeric() || c == b'_' || c == b'\'' {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                let name = std::str::from_utf8(&self.bytes[start..self.pos]).expect("ascii slice");
                let var = Var::new(name)?;
                let exp = if self.peek() == Some(b'^') {
                    self.pos += 1;
                    self.skip_ws();
                    self.number()?
                } else {
                    1
                };
                Ok(SparsePoly::var(&var).pow(exp))
            }
            _ => Err(self.error("expected a variable, constant, or '('")),
        }
    }

    fn number(&mut self) -> Result<u32, PolyError> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a number"));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .expect("ascii slice")
            .parse()
            .map_err(|_| self.error("number out of range"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> Var {
        Var::new(name).unwrap()
    }

    fn p(s: &str) -> SparsePoly {
        SparsePoly::parse(s).unwrap()
    }

    #[test]
    fn natural_variable_order() {
        assert!(v("b4") < v("b7"));
        assert!(v("b7") < v("b11"), "digit runs compare numerically");
        assert!(v("a") < v("a'"));
        assert!(v("a'") < v("b"));
    }

    #[test]
    fn display_uses_graded_order_with_natural_ties() {
        let poly = p("b42 + b34*b35 + b4*b7 + b22*b25 + b11*b12");
        assert_eq!(
            poly.to_string(),
            "b4*b7 + b11*b12 + b22*b25 + b34*b35 + b42"
        );
        assert_eq!(p("c + a + d + b").to_string(), "a + b + c + d");
        assert_eq!(SparsePoly::zero().to_string(), "0");
        assert_eq!(SparsePoly::one().to_string(), "1");
        assert_eq!(p("x^2").to_string(), "x^2");
    }

    #[test]
    fn parse_display_round_trip() {
        for s in [
            "0",
            "1",
            "a",
            "a + b + c + d",
            "b4*b7 + b11*b12 + b22*b25 + b34*b35 + b42",
            "a^2 + a*b + b^2",
            "a^4*b^2 + 1",
        ] {
            assert_eq!(p(s).to_string(), s, "round trip of {s}");
        }
        // Non-canonical input normalizes.
        assert_eq!(p("b+a+b").to_string(), "a");
        assert_eq!(p("(a + b) * (a + b)").to_string(), "a^2 + b^2");
    }

    #[test]
    fn addition_is_cancellative() {
        let q = p("a*b + c");
        assert!(q.add(&q).is_zero(), "p + p = 0 over GF(2)");
        assert_eq!(p("a + b").add(&p("b + c")), p("a + c"));
    }

    #[test]
    fn multiplication_distributes_and_squares_are_frobenius() {
        let a = p("x + y*z");
        let b = p("y + 1");
        let c = p("z^2 + x");
        assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        assert_eq!(
            a.add(&b).mul(&a.add(&b)),
            a.mul(&a).add(&b.mul(&b)),
            "(p+q)^2 = p^2 + q^2"
        );
    }

    #[test]
    fn sqrt_linearizes_perfect_squares() {
        assert_eq!(p("a^2 + b^2").sqrt().unwrap(), p("a + b"));
        assert_eq!(p("a^2*b^2 + c^4").sqrt().unwrap(), p("a*b + c^2"));
        assert_eq!(
            p("a^2 + a*b").sqrt(),
            Err(PolyError::NotAPerfectSquare("a^2 + a*b".to_string()))
        );
        assert!(SparsePoly::zero().sqrt().unwrap().is_zero());
    }

    #[test]
    fn substitution() {
        // a + b with b := a collapses to 0.
        assert!(p("a + b").substitute(&v("b"), &p("a")).is_zero());
        // Exponents push through: (a^2) with a := b + c gives b^2 + c^2.
        assert_eq!(p("a^2").substitute(&v("a"), &p("b + c")), p("b^2 + c^2"));
        let map = BTreeMap::from([(v("x"), p("u + v")), (v("y"), p("u"))]);
        assert_eq!(p("x*y + y").substitute_map(&map), p("u^2 + u*v + u"));
    }

    #[test]
    fn specialize_into_gf4() {
        let f = Gf2m::gf4();
        let t = f.t();
        let asg = BTreeMap::from([(v("a"), t), (v("b"), t), (v("c"), f.one())]);
        // t*t + 1 = (t + 1) + 1 = t in GF(4).
        assert_eq!(p("a*b + c").specialize(f, &asg).unwrap(), t);
        assert_eq!(
            p("a + d").specialize(f, &asg),
            Err(PolyError::MissingVariable("d".to_string()))
        );
        let bad = BTreeMap::from([(v("a"), Gf2m::gf8().one())]);
        assert!(matches!(
            p("a").specialize(f, &bad),
            Err(PolyError::RingMismatch { .. })
        ));
    }

    #[test]
    fn linear_part_extraction() {
        let q = p("a + b*c + d + 1");
        assert_eq!(q.linear_part(), p("a + d"));
        assert!(q.linear_coeff(&v("a")));
        assert!(!q.linear_coeff(&v("b")));
        assert!(q.constant_term());
    }

    #[test]
    fn parser_rejects_malformed_input() {
        assert!(SparsePoly::parse("a +").is_err());
        assert!(SparsePoly::parse("2*a").is_err(), "constants are 0 or 1");
        assert!(SparsePoly::parse("(a + b").is_err());
        assert!(
            SparsePoly::parse("a b").is_err(),
            "implicit products are not allowed"
        );
    }
}
