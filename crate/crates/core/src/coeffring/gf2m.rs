//! The finite fields GF(2^m) for 1 <= m <= 16.
//!
//! A field is described by its degree `m` and an irreducible modulus
//! polynomial over GF(2), stored as a bit pattern with bit `m` set (so
//! x^3 + x + 1 is `0b1011`). Elements are bit patterns of degree < m.
//! Irreducibility of the modulus is certified by trial division when the
//! field is constructed, so an invalid modulus cannot produce silent
//! garbage arithmetic.

use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("field degree must be between 1 and 16, got {0}")]
    UnsupportedDegree(u32),
    #[error("modulus {modulus:#b} has degree {found}, expected {expected}")]
    WrongModulusDegree {
        modulus: u32,
        found: u32,
        expected: u32,
    },
    #[error("modulus {0:#b} is reducible over GF(2)")]
    ReducibleModulus(u32),
    #[error("ring mismatch: GF(2^{0}) vs GF(2^{1})")]
    RingMismatch(u32, u32),
    #[error("zero has no multiplicative inverse")]
    NotInvertible,
}

/// Degree of a GF(2) polynomial given as a bit pattern; -1 for the zero
/// polynomial.
fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

/// Carryless (GF(2)[x]) product of two bit-pattern polynomials.
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut a = a;
    let mut shift = 0;
    while a != 0 {
        if a & 1 == 1 {
            acc ^= b << shift;
        }
        a >>= 1;
        shift += 1;
    }
    acc
}

/// Remainder of `a` modulo `b` in GF(2)[x]. `b` must be nonzero.
fn poly_rem(mut a: u64, b: u64) -> u64 {
    let db = poly_degree(b);
    loop {
        let da = poly_degree(a);
        if da < db {
            return a;
        }
        a ^= b << (da - db);
    }
}

/// Trial-division irreducibility test for a GF(2) polynomial of degree >= 1.
fn is_irreducible(p: u64) -> bool {
    let d = poly_degree(p);
    if d < 1 {
        return false;
    }
    // A reducible polynomial of degree d has a factor of degree in 1..=d/2.
    for q in 2u64..(1u64 << (d as u32 / 2 + 1)) {
        if poly_degree(q) >= 1 && poly_rem(p, q) == 0 {
            return false;
        }
    }
    true
}

/// Lexicographically least irreducible polynomial of the given degree
/// (monic, degree bit set; candidates ordered by their low bits).
fn least_irreducible(m: u32) -> u32 {
    for low in 0u32..(1 << m) {
        let candidate = (1u64 << m) | low as u64;
        if is_irreducible(candidate) {
            return candidate as u32;
        }
    }
    unreachable!("an irreducible polynomial of each degree exists")
}

/// A field GF(2^m), 1 <= m <= 16. Cheap to copy; two descriptors denote the
/// same field exactly when they have the same degree and modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Gf2m {
    m: u8,
    modulus: u32,
}

impl fmt::Debug for Gf2m {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}; {:#b})", self.m, self.modulus)
    }
}

impl fmt::Display for Gf2m {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.order())
    }
}

impl Gf2m {
    /// The field GF(2^m) with the bundled default modulus: the
    /// lexicographically least irreducible polynomial of degree m.
    pub fn new(m: u32) -> Result<Self, FieldError> {
        if !(1..=16).contains(&m) {
            return Err(FieldError::UnsupportedDegree(m));
        }
        Ok(Gf2m {
            m: m as u8,
            modulus: least_irreducible(m),
        })
    }

    /// GF(2^m) with an explicit modulus, which is certified irreducible of
    /// the right degree before any arithmetic is allowed.
    pub fn with_modulus(m: u32, modulus: u32) -> Result<Self, FieldError> {
        if !(1..=16).contains(&m) {
            return Err(FieldError::UnsupportedDegree(m));
        }
        let found = poly_degree(modulus as u64);
        if found != m as i32 {
            return Err(FieldError::WrongModulusDegree {
                modulus,
                found: found.max(0) as u32,
                expected: m,
            });
        }
        if !is_irreducible(modulus as u64) {
            return Err(FieldError::ReducibleModulus(modulus));
        }
        Ok(Gf2m {
            m: m as u8,
            modulus,
        })
    }

    /// The prime field GF(2).
    pub fn gf2() -> Self {
        Gf2m::new(1).expect("degree 1 is supported")
    }

    /// GF(4).
    pub fn gf4() -> Self {
        Gf2m::new(2).expect("degree 2 is supported")
    }

    /// GF(8), with default modulus x^3 + x + 1.
    pub fn gf8() -> Self {
        Gf2m::new(3).expect("degree 3 is supported")
    }

    pub fn degree(&self) -> u32 {
        self.m as u32
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    /// Number of elements, 2^m.
    pub fn order(&self) -> u64 {
        1u64 << self.m
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem {
            field: *self,
            bits: 0,
        }
    }

    pub fn one(&self) -> FieldElem {
        FieldElem {
            field: *self,
            bits: 1,
        }
    }

    /// The residue class of x — a generator of the field over GF(2) when
    /// m > 1 (for m = 1 it reduces to a constant).
    pub fn t(&self) -> FieldElem {
        self.element(2)
    }

    /// The element with the given bit pattern, reduced modulo the modulus.
    pub fn element(&self, bits: u32) -> FieldElem {
        FieldElem {
            field: *self,
            bits: poly_rem(bits as u64, self.modulus as u64) as u32,
        }
    }

    /// All field elements, in bit-pattern order (deterministic).
    pub fn elements(&self) -> impl Iterator<Item = FieldElem> + '_ {
        let field = *self;
        (0..self.order() as u32).map(move |bits| FieldElem { field, bits })
    }
}

/// An element of a concrete GF(2^m). Carries its field descriptor, so
/// elements of different fields can never be silently mixed: checked
/// operations report [`FieldError::RingMismatch`] and the operator forms
/// panic.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem {
    field: Gf2m,
    bits: u32,
}

impl FieldElem {
    pub fn field(&self) -> Gf2m {
        self.field
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn is_zero(self) -> bool {
        self.bits == 0
    }

    pub fn checked_add(self, other: FieldElem) -> Result<FieldElem, FieldError> {
        if self.field != other.field {
            return Err(FieldError::RingMismatch(
                self.field.degree(),
                other.field.degree(),
            ));
        }
        Ok(FieldElem {
            field: self.field,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn checked_mul(self, other: FieldElem) -> Result<FieldElem, FieldError> {
        if self.field != other.field {
            return Err(FieldError::RingMismatch(
                self.field.degree(),
                other.field.degree(),
            ));
        }
        let product = clmul(self.bits as u64, other.bits as u64);
        let bits = poly_rem(product, self.field.modulus as u64) as u32;
        Ok(FieldElem {
            field: self.field,
            bits,
        })
    }

    /// Panicking shorthand for [`FieldElem::checked_add`]; both operands
    /// must come from the same field.
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: FieldElem) -> FieldElem {
        self.checked_add(other).expect("field mismatch in add")
    }

    /// Panicking shorthand for [`FieldElem::checked_mul`]; both operands
    /// must come from the same field.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: FieldElem) -> FieldElem {
        self.checked_mul(other).expect("field mismatch in mul")
    }

    pub fn pow(self, mut e: u64) -> FieldElem {
        let mut base = self;
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse, via a^(2^m - 2).
    pub fn inv(self) -> Result<FieldElem, FieldError> {
        if self.is_zero() {
            return Err(FieldError::NotInvertible);
        }
        Ok(self.pow(self.field.order() - 2))
    }

    /// The unique square root (Frobenius is bijective in characteristic 2).
    pub fn sqrt(self) -> FieldElem {
        self.pow(self.field.order() / 2)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.bits == 0 {
            return write!(f, "0");
        }
        let mut first = true;
        for k in (0..32).rev() {
            if self.bits >> k & 1 == 1 {
                if !first {
                    write!(f, " + ")?;
                }
                match k {
                    0 => write!(f, "1")?,
                    1 => write!(f, "t")?,
                    _ => write!(f, "t^{k}")?,
                }
                first = false;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {:?}", self, self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli_match_the_classical_small_fields() {
        assert_eq!(Gf2m::gf2().modulus(), 0b10);
        assert_eq!(Gf2m::gf4().modulus(), 0b111); // x^2 + x + 1
        assert_eq!(Gf2m::gf8().modulus(), 0b1011); // x^3 + x + 1
        assert_eq!(Gf2m::new(4).unwrap().modulus(), 0b10011); // x^4 + x + 1
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        // x^3 + 1 = (x + 1)(x^2 + x + 1)
        assert_eq!(
            Gf2m::with_modulus(3, 0b1001),
            Err(FieldError::ReducibleModulus(0b1001))
        );
        // degree mismatch
        assert!(matches!(
            Gf2m::with_modulus(3, 0b111),
            Err(FieldError::WrongModulusDegree { .. })
        ));
    }

    #[test]
    fn gf8_field_axioms_exhaustively() {
        let f = Gf2m::gf8();
        let elems: Vec<_> = f.elements().collect();
        assert_eq!(elems.len(), 8);
        for &a in &elems {
            assert_eq!(a.add(f.zero()), a);
            assert_eq!(a.mul(f.one()), a);
            assert_eq!(a.add(a), f.zero(), "characteristic 2");
            for &b in &elems {
                assert_eq!(a.add(b), b.add(a));
                assert_eq!(a.mul(b), b.mul(a));
                for &c in &elems {
                    assert_eq!(a.add(b).add(c), a.add(b.add(c)));
                    assert_eq!(a.mul(b).mul(c), a.mul(b.mul(c)));
                    assert_eq!(a.mul(b.add(c)), a.mul(b).add(a.mul(c)));
                }
            }
        }
    }

    #[test]
    fn inverses_and_sqrt_in_gf16() {
        let f = Gf2m::new(4).unwrap();
        for a in f.elements() {
            if a.is_zero() {
                assert_eq!(a.inv(), Err(FieldError::NotInvertible));
            } else {
                assert_eq!(a.mul(a.inv().unwrap()), f.one());
            }
            assert_eq!(a.sqrt().mul(a.sqrt()), a, "sqrt is a genuine square root");
        }
    }

    #[test]
    fn frobenius_is_additive() {
        let f = Gf2m::gf8();
        for a in f.elements() {
            for b in f.elements() {
                let lhs = a.add(b).mul(a.add(b));
                let rhs = a.mul(a).add(b.mul(b));
                assert_eq!(lhs, rhs, "(a+b)^2 = a^2 + b^2");
            }
        }
    }

    #[test]
    fn gf8_multiplicative_group_has_order_seven() {
        let f = Gf2m::gf8();
        let t = f.t();
        let mut pow = f.one();
        for k in 1..=7u32 {
            pow = pow.mul(t);
            if k < 7 {
                assert_ne!(pow, f.one(), "t has order exactly 7");
            }
        }
        assert_eq!(pow, f.one(), "t^7 = 1 in GF(8)");
    }

    #[test]
    fn cross_field_operations_are_rejected() {
        let a = Gf2m::gf4().one();
        let b = Gf2m::gf8().one();
        assert_eq!(a.checked_add(b), Err(FieldError::RingMismatch(2, 3)));
        assert_eq!(a.checked_mul(b), Err(FieldError::RingMismatch(2, 3)));
    }

    #[test]
    fn all_supported_degrees_construct_and_validate() {
        for m in 1..=16 {
            let f = Gf2m::new(m).unwrap();
            assert_eq!(f.order(), 1 << m);
            // The stored modulus round-trips through the explicit validator.
            assert_eq!(Gf2m::with_modulus(m, f.modulus()).unwrap(), f);
        }
        assert_eq!(Gf2m::new(0), Err(FieldError::UnsupportedDegree(0)));
        assert_eq!(Gf2m::new(17), Err(FieldError::UnsupportedDegree(17)));
    }

    #[test]
    fn display_is_polynomial_in_t() {
        let f = Gf2m::gf8();
        assert_eq!(f.zero().to_string(), "0");
        assert_eq!(f.one().to_string(), "1");
        assert_eq!(f.t().to_string(), "t");
        assert_eq!(f.element(0b101).to_string(), "t^2 + 1");
    }
}
