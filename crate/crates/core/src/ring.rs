//! Ring abstraction shared by matrices and algebra structure tensors.
//!
//! Values of the coefficient rings used here (`Ratio`, `MPoly`, `QSeries`)
//! cannot all be constructed from nothing — a polynomial needs its variable
//! table. Zero and one are therefore derived from an existing element.

use crate::ratio::Ratio;

/// A commutative ring element. All operations are pure.
pub trait Ring: Clone + PartialEq + std::fmt::Debug {
    /// Zero of the same ring as `self` (same table/truncation).
    fn ring_zero(&self) -> Self;
    /// One of the same ring as `self`.
    fn ring_one(&self) -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplication by a rational scalar.
    fn scale(&self, k: &Ratio) -> Self;
}

/// Integral domains with decidable exact division.
pub trait ExactDiv: Ring {
    /// `self / d` when the division is exact, `None` otherwise.
    fn exact_div(&self, d: &Self) -> Option<Self>;
}

impl Ring for Ratio {
    fn ring_zero(&self) -> Self {
        Ratio::zero()
    }
    fn ring_one(&self) -> Self {
        Ratio::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn is_zero(&self) -> bool {
        Ratio::is_zero(self)
    }
    fn scale(&self, k: &Ratio) -> Self {
        self * k
    }
}

impl ExactDiv for Ratio {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            None
        } else {
            Some(self / d)
        }
    }
}
