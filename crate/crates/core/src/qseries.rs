//! Polynomial-coefficient series in `q`, truncated at a fixed order.
//!
//! Arithmetic discards every order above the truncation order `D`. A series
//! always carries exactly `D + 1` coefficient slots.

use std::sync::Arc;

use crate::mpoly::MPoly;
use crate::ratio::Ratio;
use crate::ring::Ring;
use crate::vars::VarTable;

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QSeries {
    coeffs: Vec<MPoly>,
}

impl QSeries {
    pub fn zero(table: &Arc<VarTable>, order: usize) -> Self {
        QSeries {
            coeffs: vec![MPoly::zero(table); order + 1],
        }
    }

    pub fn one(table: &Arc<VarTable>, order: usize) -> Self {
        let mut s = QSeries::zero(table, order);
        s.coeffs[0] = MPoly::one(table);
        s
    }

    /// Series with the given coefficient at a single power of `q`.
    pub fn from_coeff(order: usize, power: usize, p: MPoly) -> Self {
        assert!(power <= order, "power beyond truncation order");
        let mut s = QSeries::zero(p.table(), order);
        s.coeffs[power] = p;
        s
    }

    pub fn constant(_table: &Arc<VarTable>, order: usize, p: MPoly) -> Self {
        QSeries::from_coeff(order, 0, p)
    }

    pub fn truncation_order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn table(&self) -> &Arc<VarTable> {
        self.coeffs[0].table()
    }

    pub fn coeff(&self, power: usize) -> &MPoly {
        &self.coeffs[power]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn assert_compatible(&self, rhs: &QSeries) {
        assert_eq!(
            self.coeffs.len(),
            rhs.coeffs.len(),
            "QSeries truncation orders differ"
        );
    }

    pub fn add(&self, rhs: &QSeries) -> QSeries {
        self.assert_compatible(rhs);
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &QSeries) -> QSeries {
        self.assert_compatible(rhs);
        QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn neg(&self) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Truncated Cauchy product.
    pub fn mul(&self, rhs: &QSeries) -> QSeries {
        self.assert_compatible(rhs);
        let d = self.truncation_order();
        let mut out = QSeries::zero(self.table(), d);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j > d {
                    break;
                }
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] = out.coeffs[i + j].add(&a.mul(b));
            }
        }
        out
    }

    pub fn scale(&self, k: &Ratio) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.scale(k)).collect(),
        }
    }

    pub fn scale_poly(&self, p: &MPoly) -> QSeries {
        QSeries {
            coeffs: self.coeffs.iter().map(|c| c.mul(p)).collect(),
        }
    }

    /// Multiply by `q^k`, truncating: coefficients shift up, the top drops off.
    pub fn shift_up(&self, k: usize) -> QSeries {
        let d = self.truncation_order();
        let mut out = QSeries::zero(self.table(), d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= d {
                out.coeffs[i + k] = c.clone();
            }
        }
        out
    }

    /// Divide by `q^k`; requires the low `k` coefficients to vanish. The new
    /// top slots are unknown beyond the truncation and are set to zero.
    pub fn shift_down(&self, k: usize) -> QSeries {
        let d = self.truncation_order();
        assert!(
            self.coeffs[..k].iter().all(|c| c.is_zero()),
            "shift_down of a series not divisible by q^{k}"
        );
        let mut out = QSeries::zero(self.table(), d);
        for i in k..=d {
            out.coeffs[i - k] = self.coeffs[i].clone();
        }
        out
    }

    /// Smallest power with nonzero coefficient, if any.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }
}

impl Ring for QSeries {
    fn ring_zero(&self) -> Self {
        QSeries::zero(self.table(), self.truncation_order())
    }
    fn ring_one(&self) -> Self {
        QSeries::one(self.table(), self.truncation_order())
    }
    fn add(&self, rhs: &Self) -> Self {
        QSeries::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QSeries::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QSeries::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        QSeries::neg(self)
    }
    fn is_zero(&self) -> bool {
        QSeries::is_zero(self)
    }
    fn scale(&self, k: &Ratio) -> Self {
        QSeries::scale(self, k)
    }
}
