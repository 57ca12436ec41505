//! Sparse multivariate polynomials with exact rational coefficients.
//!
//! Exponent vectors are dense, fixed-length, and keyed to a shared
//! [`VarTable`]. Terms are kept in graded-reverse-lexicographic order (in
//! table order), which makes iteration, leading terms, and serialization
//! deterministic. No zero coefficient is ever stored.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::ratio::Ratio;
use crate::ring::{ExactDiv, Ring};
use crate::vars::VarTable;

/// A dense exponent vector, ordered graded-reverse-lexicographically:
/// higher total degree is larger; on ties the exponent vector whose last
/// differing entry is smaller is the larger monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Expo(pub Vec<u32>);

impl Expo {
    pub fn zero(n: usize) -> Self {
        Expo(vec![0; n])
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Expo) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn checked_sub(&self, other: &Expo) -> Option<Expo> {
        if other.divides(self) {
            Some(Expo(
                self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
            ))
        } else {
            None
        }
    }

    fn add(&self, other: &Expo) -> Expo {
        Expo(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn lcm(&self, other: &Expo) -> Expo {
        Expo(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }
}

impl Ord for Expo {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        debug_assert_eq!(self.0.len(), other.0.len());
        match self.total_degree().cmp(&other.total_degree()) {
            std::cmp::Ordering::Equal => {}
            ord => return ord,
        }
        for k in (0..self.0.len()).rev() {
            if self.0[k] != other.0[k] {
                // larger exponent in the last differing slot => smaller monomial
                return other.0[k].cmp(&self.0[k]);
            }
        }
        std::cmp::Ordering::Equal
    }
}

impl PartialOrd for Expo {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Result of a weighted-degree query.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum WeightedDegree {
    /// The zero polynomial has no degree.
    Zero,
    /// All terms share this weighted degree.
    Homogeneous(Ratio),
    Inhomogeneous,
}

/// Sparse multivariate polynomial over [`Ratio`] coefficients.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MPoly {
    table: Arc<VarTable>,
    terms: BTreeMap<Expo, Ratio>,
}

impl MPoly {
    pub fn zero(table: &Arc<VarTable>) -> Self {
        MPoly {
            table: Arc::clone(table),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(table: &Arc<VarTable>, c: Ratio) -> Self {
        let mut p = MPoly::zero(table);
        if !c.is_zero() {
            p.terms.insert(Expo::zero(table.len()), c);
        }
        p
    }

    pub fn one(table: &Arc<VarTable>) -> Self {
        MPoly::constant(table, Ratio::one())
    }

    pub fn var(table: &Arc<VarTable>, idx: usize) -> Self {
        assert!(idx < table.len(), "variable index out of range");
        let mut e = Expo::zero(table.len());
        e.0[idx] = 1;
        MPoly::monomial(table, e, Ratio::one())
    }

    pub fn monomial(table: &Arc<VarTable>, e: Expo, c: Ratio) -> Self {
        assert_eq!(e.0.len(), table.len(), "exponent length mismatch");
        let mut p = MPoly::zero(table);
        if !c.is_zero() {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Expo, &Ratio)> {
        self.terms.iter()
    }

    /// Coefficient of the given exponent vector (zero if absent).
    pub fn coeff(&self, e: &Expo) -> Ratio {
        self.terms.get(e).cloned().unwrap_or_else(Ratio::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> Ratio {
        self.coeff(&Expo::zero(self.table.len()))
    }

    /// If the polynomial is a constant, return it.
    pub fn as_constant(&self) -> Option<Ratio> {
        match self.terms.len() {
            0 => Some(Ratio::zero()),
            1 => {
                let (e, c) = self.terms.iter().next().unwrap();
                (e.total_degree() == 0).then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading term in grevlex order.
    pub fn leading_term(&self) -> Option<(&Expo, &Ratio)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.leading_term().map(|(e, _)| e.total_degree())
    }

    fn assert_same_table(&self, rhs: &MPoly) {
        assert!(
            Arc::ptr_eq(&self.table, &rhs.table) || self.table == rhs.table,
            "MPoly arithmetic across different variable tables"
        );
    }

    fn insert_add(&mut self, e: Expo, c: Ratio) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += &c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn add(&self, rhs: &MPoly) -> MPoly {
        self.assert_same_table(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &MPoly) -> MPoly {
        self.assert_same_table(rhs);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.insert_add(e.clone(), -c);
        }
        out
    }

    pub fn neg(&self) -> MPoly {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn mul(&self, rhs: &MPoly) -> MPoly {
        self.assert_same_table(rhs);
        let mut out = MPoly::zero(&self.table);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.insert_add(ea.add(eb), ca * cb);
            }
        }
        out
    }

    pub fn scale(&self, k: &Ratio) -> MPoly {
        if k.is_zero() {
            return MPoly::zero(&self.table);
        }
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c *= k;
        }
        out
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut acc = MPoly::one(&self.table);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact formal partial derivative with respect to the named variable.
    pub fn partial_derivative(&self, var: &str) -> Result<MPoly> {
        let idx = self.table.index_of(var)?;
        Ok(self.partial_derivative_idx(idx))
    }

    /// Partial derivative by variable index.
    pub fn partial_derivative_idx(&self, idx: usize) -> MPoly {
        assert!(idx < self.table.len(), "variable index out of range");
        let mut out = MPoly::zero(&self.table);
        for (e, c) in &self.terms {
            let k = e.0[idx];
            if k == 0 {
                continue;
            }
            let mut e2 = e.clone();
            e2.0[idx] = k - 1;
            out.insert_add(e2, c * &Ratio::from_int(k as i64));
        }
        out
    }

    /// Weighted degree under the table's weights: the common degree of all
    /// terms if homogeneous, a marker otherwise.
    pub fn weighted_degree(&self) -> WeightedDegree {
        let mut common: Option<Ratio> = None;
        for e in self.terms.keys() {
            let mut d = Ratio::zero();
            for (i, k) in e.0.iter().enumerate() {
                if *k > 0 {
                    d += &(self.table.weight(i) * &Ratio::from_int(*k as i64));
                }
            }
            match &common {
                None => common = Some(d),
                Some(c) if *c == d => {}
                Some(_) => return WeightedDegree::Inhomogeneous,
            }
        }
        match common {
            None => WeightedDegree::Zero,
            Some(d) => WeightedDegree::Homogeneous(d),
        }
    }

    /// Substitute rational values for a subset of variables (by index).
    pub fn substitute(&self, values: &BTreeMap<usize, Ratio>) -> MPoly {
        let mut out = MPoly::zero(&self.table);
        'term: for (e, c) in &self.terms {
            let mut coeff = c.clone();
            let mut e2 = e.clone();
            for (&i, v) in values {
                let k = e.0[i];
                if k > 0 {
                    if v.is_zero() {
                        continue 'term;
                    }
                    coeff *= &v.pow(k as i32);
                    e2.0[i] = 0;
                }
            }
            out.insert_add(e2, coeff);
        }
        out
    }

    /// Re-express on another table. `map[i]` gives the target index of
    /// variable `i`; `None` requires the variable to be absent from every term.
    pub fn map_variables(&self, target: &Arc<VarTable>, map: &[Option<usize>]) -> Result<MPoly> {
        assert_eq!(map.len(), self.table.len());
        let mut out = MPoly::zero(target);
        for (e, c) in &self.terms {
            let mut e2 = Expo::zero(target.len());
            for (i, k) in e.0.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => e2.0[j] += k,
                    None => {
                        return Err(Error::UnknownVariable(format!(
                            "variable `{}` has no image in the target table",
                            self.table.name(i)
                        )))
                    }
                }
            }
            out.insert_add(e2, c.clone());
        }
        Ok(out)
    }

    /// Drop every term that involves any of the given variables (reduction
    /// modulo the ideal those variables generate).
    pub fn reduce_mod_vars(&self, vars: &[usize]) -> MPoly {
        let mut out = MPoly::zero(&self.table);
        for (e, c) in &self.terms {
            if vars.iter().any(|&i| e.0[i] > 0) {
                continue;
            }
            out.insert_add(e.clone(), c.clone());
        }
        out
    }

    /// True if every term involves at least one of the given variables
    /// (membership in the monomial ideal they generate).
    pub fn in_var_ideal(&self, vars: &[usize]) -> bool {
        self.reduce_mod_vars(vars).is_zero()
    }

    /// Exact polynomial division: `Some(q)` with `self == q * d` when the
    /// division is exact, `None` otherwise.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        self.assert_same_table(d);
        if d.is_zero() {
            return None;
        }
        let (dlm, dlc) = d.leading_term()?;
        let (dlm, dlc) = (dlm.clone(), dlc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(&self.table);
        while let Some((rlm, rlc)) = rem.leading_term() {
            let e = rlm.checked_sub(&dlm)?;
            let c = rlc / &dlc;
            let t = MPoly::monomial(&self.table, e, c);
            rem = rem.sub(&t.mul(d));
            quot = quot.add(&t);
        }
        Some(quot)
    }

    /// Numeric evaluation at a complex point (one value per variable).
    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        assert_eq!(point.len(), self.table.len());
        let mut acc = Complex64::new(0.0, 0.0);
        for (e, c) in &self.terms {
            let mut t = Complex64::new(c.to_f64(), 0.0);
            for (i, k) in e.0.iter().enumerate() {
                if *k > 0 {
                    t *= point[i].powu(*k);
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical serialization: grevlex-sorted `(exponents, coefficient)` pairs.
    pub fn to_pairs(&self) -> Vec<(Vec<u32>, String)> {
        self.terms
            .iter()
            .map(|(e, c)| (e.0.clone(), c.to_string()))
            .collect()
    }

    pub fn from_pairs(table: &Arc<VarTable>, pairs: &[(Vec<u32>, String)]) -> Result<MPoly> {
        let mut out = MPoly::zero(table);
        for (e, c) in pairs {
            if e.len() != table.len() {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {} on a table of {} variables",
                    e.len(),
                    table.len()
                )));
            }
            out.insert_add(Expo(e.clone()), c.parse()?);
        }
        Ok(out)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest term first reads naturally
        for (n, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if n == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut wrote_factor = false;
            if !mag.is_one() || e.total_degree() == 0 {
                write!(f, "{mag}")?;
                wrote_factor = true;
            }
            for (i, k) in e.0.iter().enumerate() {
                if *k == 0 {
                    continue;
                }
                if wrote_factor {
                    write!(f, "*")?;
                }
                write!(f, "{}", self.table.name(i))?;
                if *k > 1 {
                    write!(f, "^{k}")?;
                }
                wrote_factor = true;
            }
        }
        Ok(())
    }
}

impl Ring for MPoly {
    fn ring_zero(&self) -> Self {
        MPoly::zero(&self.table)
    }
    fn ring_one(&self) -> Self {
        MPoly::one(&self.table)
    }
    fn add(&self, rhs: &Self) -> Self {
        MPoly::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        MPoly::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        MPoly::mul(self, rhs)
    }
    fn neg(&self) -> Self {
        MPoly::neg(self)
    }
    fn is_zero(&self) -> bool {
        MPoly::is_zero(self)
    }
    fn scale(&self, k: &Ratio) -> Self {
        MPoly::scale(self, k)
    }
}

impl ExactDiv for MPoly {
    fn exact_div(&self, d: &Self) -> Option<Self> {
        MPoly::exact_div(self, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Arc<VarTable> {
        VarTable::unweighted(&["x", "y"])
    }

    #[test]
    fn grevlex_order() {
        // x^2 > xy > y^2 > x > y > 1 with x before y in the table
        let t = xy();
        let m = |ex: &[u32]| Expo(ex.to_vec());
        assert!(m(&[2, 0]) > m(&[1, 1]));
        assert!(m(&[1, 1]) > m(&[0, 2]));
        assert!(m(&[0, 2]) > m(&[1, 0]));
        assert!(m(&[1, 0]) > m(&[0, 1]));
        let _ = t;
    }

    #[test]
    fn derivative_power_rule() {
        let t = VarTable::unweighted(&["t1"]);
        let p = MPoly::var(&t, 0).pow(4);
        let d = p.partial_derivative("t1").unwrap();
        let expected = MPoly::var(&t, 0).pow(3).scale(&Ratio::from_int(4));
        assert_eq!(d, expected);
        assert!(p.partial_derivative("t2").is_err());
    }

    #[test]
    fn derivative_absent_variable() {
        let t = xy();
        let p = MPoly::var(&t, 0).pow(3);
        assert!(p.partial_derivative("y").unwrap().is_zero());
    }

    #[test]
    fn weighted_degree_homogeneous() {
        // weights 1/2 on a single variable: (t1)^4 has degree 2
        let t = VarTable::new(vec!["t1".into()], vec![Ratio::new(1, 2)]).unwrap();
        let p = MPoly::var(&t, 0).pow(4);
        assert_eq!(
            p.weighted_degree(),
            WeightedDegree::Homogeneous(Ratio::from_int(2))
        );
        let q = MPoly::var(&t, 0).add(&MPoly::var(&t, 0).pow(2));
        assert_eq!(q.weighted_degree(), WeightedDegree::Inhomogeneous);
        assert_eq!(MPoly::zero(&t).weighted_degree(), WeightedDegree::Zero);
    }

    #[test]
    fn weighted_degree_two_vars() {
        // P^1_3 weights: deg t1 = 2/3, deg t2 = 1/3; t1*t2 has degree 1
        let t = VarTable::new(
            vec!["t1".into(), "t2".into()],
            vec![Ratio::new(2, 3), Ratio::new(1, 3)],
        )
        .unwrap();
        let p = MPoly::var(&t, 0).mul(&MPoly::var(&t, 1));
        assert_eq!(
            p.weighted_degree(),
            WeightedDegree::Homogeneous(Ratio::one())
        );
    }

    #[test]
    fn exact_division() {
        let t = xy();
        let x = MPoly::var(&t, 0);
        let y = MPoly::var(&t, 1);
        let a = x.add(&y);
        let b = x.sub(&y);
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert!(prod.add(&MPoly::one(&t)).exact_div(&a).is_none());
    }

    #[test]
    fn pairs_roundtrip() {
        let t = xy();
        let p = MPoly::var(&t, 0)
            .pow(2)
            .scale(&Ratio::new(-3, 7))
            .add(&MPoly::one(&t));
        let pairs = p.to_pairs();
        assert_eq!(MPoly::from_pairs(&t, &pairs).unwrap(), p);
    }
}
