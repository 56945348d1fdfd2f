//! Coefficient rings for Chevalley-group computations in characteristic 2.
//!
//! Two rings are provided:
//!
//! * [`FieldElem`] — an element of a concrete finite field GF(2^m),
//!   represented as a bit pattern modulo a certified irreducible polynomial
//!   (see [`Gf2m`]);
//! * [`SparsePoly`] — a multivariate polynomial over GF(2), represented as a
//!   set of monomials (a monomial is present iff its coefficient is 1).
//!
//! Both implement the [`Coeff`] trait, which is all the collection and
//! solving machinery needs: addition, multiplication, and a zero test.
//! Subtraction is addition (characteristic 2), so the trait has no negation.

mod gf2m;
mod poly;

pub use gf2m::{FieldElem, FieldError, Gf2m};
pub use poly::{Monomial, PolyError, SparsePoly, Var};

use std::fmt;

/// Common interface of the coefficient rings.
///
/// Implementations must be commutative rings of characteristic 2. The trait
/// deliberately has no `zero()`/`one()` constructors: a [`FieldElem`] cannot
/// be produced without knowing its field, so fresh constants are always
/// derived from an existing element (`zero_like`, `one_like`).
pub trait Coeff: Clone + Eq + fmt::Debug + fmt::Display {
    fn add(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
    /// The additive identity of the same ring as `self`.
    fn zero_like(&self) -> Self;
    /// The multiplicative identity of the same ring as `self`.
    fn one_like(&self) -> Self;
    /// Frobenius square. `(a + b)^2 = a^2 + b^2` in characteristic 2.
    fn sq(&self) -> Self {
        self.mul(self)
    }
}

impl Coeff for FieldElem {
    fn add(&self, other: &Self) -> Self {
        FieldElem::add(*self, *other)
    }
    fn mul(&self, other: &Self) -> Self {
        FieldElem::mul(*self, *other)
    }
    fn is_zero(&self) -> bool {
        FieldElem::is_zero(*self)
    }
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
}

impl Coeff for SparsePoly {
    fn add(&self, other: &Self) -> Self {
        SparsePoly::add(self, other)
    }
    fn mul(&self, other: &Self) -> Self {
        SparsePoly::mul(self, other)
    }
    fn is_zero(&self) -> bool {
        SparsePoly::is_zero(self)
    }
    fn zero_like(&self) -> Self {
        SparsePoly::zero()
    }
    fn one_like(&self) -> Self {
        SparsePoly::one()
    }
}
