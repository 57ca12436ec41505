//! Dense univariate polynomials over `Ratio`: gcd, squarefree decomposition,
//! and numeric evaluation. Just enough for characteristic-polynomial work.

use num_complex::Complex64;

use crate::ratio::Ratio;

/// Coefficients in ascending degree order. Canonical form: empty for the zero
/// polynomial, nonzero last entry otherwise.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct UniPoly {
    coeffs: Vec<Ratio>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn from_coeffs(coeffs: Vec<Ratio>) -> Self {
        let mut p = UniPoly { coeffs };
        p.normalize();
        p
    }

    /// From descending-order coefficients (as produced by `Matrix::charpoly`).
    pub fn from_descending(coeffs: &[Ratio]) -> Self {
        UniPoly::from_coeffs(coeffs.iter().rev().cloned().collect())
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Ratio] {
        &self.coeffs
    }

    pub fn leading(&self) -> Option<&Ratio> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => UniPoly::zero(),
            Some(lc) => {
                let inv = lc.recip();
                UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * &inv).collect())
            }
        }
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        UniPoly::from_coeffs(
            self.coeffs[1..]
                .iter()
                .enumerate()
                .map(|(i, c)| c * &Ratio::from_int((i + 1) as i64))
                .collect(),
        )
    }

    pub fn sub(&self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = vec![Ratio::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in rhs.coeffs.iter().enumerate() {
            out[i] -= c;
        }
        UniPoly::from_coeffs(out)
    }

    pub fn mul(&self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Ratio::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += &(a * b);
            }
        }
        UniPoly::from_coeffs(out)
    }

    /// Euclidean division: `(quotient, remainder)`.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let dlc = d.leading().unwrap().clone();
        let mut rem = self.clone();
        let mut quot = vec![Ratio::zero(); self.coeffs.len().saturating_sub(dd)];
        while let Some(rd) = rem.degree() {
            if rd < dd {
                break;
            }
            let f = rem.leading().unwrap() / &dlc;
            let shift = rd - dd;
            quot[shift] = f.clone();
            let mut coeffs = rem.coeffs.clone();
            for (j, c) in d.coeffs.iter().enumerate() {
                coeffs[shift + j] -= &(&f * c);
            }
            rem = UniPoly::from_coeffs(coeffs);
        }
        (UniPoly::from_coeffs(quot), rem)
    }

    /// Monic gcd by the Euclidean algorithm.
    pub fn gcd(&self, rhs: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = rhs.clone();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Yun squarefree decomposition: returns `[(g_1, 1), (g_2, 2), ...]` with
    /// `self = lc * prod g_i^i`, each `g_i` squarefree and monic. Factors with
    /// `g_i = 1` are omitted.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, usize)> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let p = self.monic();
        let dp = p.derivative();
        let a0 = p.gcd(&dp);
        let mut b = p.div_rem(&a0).0;
        let mut c = dp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut out = Vec::new();
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let g = b.gcd(&d);
            if g.degree().unwrap_or(0) > 0 {
                out.push((g.clone(), i));
            }
            b = b.div_rem(&g).0;
            c = d.div_rem(&g).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }

    /// True if `gcd(p, p') = 1`.
    pub fn is_squarefree(&self) -> bool {
        self.gcd(&self.derivative()).degree() == Some(0)
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + Complex64::new(c.to_f64(), 0.0);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> UniPoly {
        UniPoly::from_coeffs(coeffs.iter().map(|&c| Ratio::from_int(c)).collect())
    }

    #[test]
    fn gcd_of_shared_factor() {
        // (x-1)(x-2) and (x-1)(x+3) share (x-1)
        let a = p(&[2, -3, 1]);
        let b = p(&[-3, 2, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 1]));
    }

    #[test]
    fn yun_decomposition() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let q = p(&[2, -3, 0, 1]);
        let sf = q.squarefree_decomposition();
        assert_eq!(sf.len(), 2);
        assert_eq!(sf[0], (p(&[2, 1]), 1));
        assert_eq!(sf[1], (p(&[-1, 1]), 2));
        assert!(!q.is_squarefree());
        assert!(p(&[-2, 1, 1]).is_squarefree());
    }

    #[test]
    fn division() {
        let a = p(&[2, -3, 0, 1]);
        let d = p(&[-1, 1]);
        let (q, r) = a.div_rem(&d);
        assert!(r.is_zero());
        assert_eq!(q.mul(&d), a);
    }
}
