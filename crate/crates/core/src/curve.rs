//! Orbi-curve data model: classification by orbifold Euler characteristic,
//! the even-parity cohomology basis, the orbifold Poincaré pairing, and the
//! Chen–Ruan product.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ratio::Ratio;
use crate::ring::Ring;

/// An orbi-curve: genus of the underlying surface plus the orders of its
/// marked points. Orders equal to 1 are allowed (trivial orbifold points);
/// they contribute no twisted classes but are kept because the small-quantum
/// presentations for `P^1_{a1,a2}` use them.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OrbiCurve {
    genus: u32,
    orders: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CurveClass {
    Fano,
    CalabiYau,
    GeneralType,
}

impl fmt::Display for CurveClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveClass::Fano => write!(f, "Fano"),
            CurveClass::CalabiYau => write!(f, "Calabi-Yau"),
            CurveClass::GeneralType => write!(f, "general type"),
        }
    }
}

impl OrbiCurve {
    pub fn new(genus: u32, orders: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&a| a == 0) {
            return Err(Error::InvalidOrder(bad));
        }
        Ok(OrbiCurve { genus, orders })
    }

    /// `P^1_a` tear drop.
    pub fn teardrop(a: u32) -> Result<Self> {
        OrbiCurve::new(0, vec![a])
    }

    /// Canonical form: orders sorted descending with trailing 1's dropped.
    pub fn canonicalized(&self) -> OrbiCurve {
        let mut orders: Vec<u32> = self.orders.iter().copied().filter(|&a| a > 1).collect();
        orders.sort_unstable_by(|a, b| b.cmp(a));
        OrbiCurve {
            genus: self.genus,
            orders,
        }
    }

    /// Parse the literal form `g=<int>;a=<comma list>` (empty list allowed).
    pub fn parse(literal: &str) -> Result<Self> {
        let bad = |msg: &str| Error::Parse(format!("curve literal `{literal}`: {msg}"));
        let (g_part, a_part) = literal
            .split_once(';')
            .ok_or_else(|| bad("expected `g=<int>;a=<comma list>`"))?;
        let g = g_part
            .trim()
            .strip_prefix("g=")
            .ok_or_else(|| bad("missing `g=`"))?
            .trim()
            .parse::<u32>()
            .map_err(|_| bad("invalid genus"))?;
        let a_list = a_part
            .trim()
            .strip_prefix("a=")
            .ok_or_else(|| bad("missing `a=`"))?
            .trim();
        let orders = if a_list.is_empty() {
            Vec::new()
        } else {
            a_list
                .split(',')
                .enumerate()
                .map(|(i, s)| {
                    s.trim()
                        .parse::<u32>()
                        .map_err(|_| bad(&format!("invalid order at position {}", i + 1)))
                })
                .collect::<Result<Vec<_>>>()?
        };
        OrbiCurve::new(g, orders)
    }

    /// The literal form accepted by [`OrbiCurve::parse`].
    pub fn literal(&self) -> String {
        let list = self
            .orders
            .iter()
            .map(|a| a.to_string())
            .collect::<Vec<_>>()
            .join(",");
        format!("g={};a={}", self.genus, list)
    }

    pub fn genus(&self) -> u32 {
        self.genus
    }

    pub fn orders(&self) -> &[u32] {
        &self.orders
    }

    /// Order of the marked point `alpha` (1-based).
    pub fn order(&self, alpha: usize) -> u32 {
        self.orders[alpha - 1]
    }

    pub fn num_points(&self) -> usize {
        self.orders.len()
    }

    /// chi_orb = (2 - 2g) - sum(1 - 1/a).
    pub fn euler_char(&self) -> Ratio {
        let mut chi = Ratio::from_int(2 - 2 * self.genus as i64);
        for &a in &self.orders {
            chi -= &(Ratio::one() - Ratio::new(1, a as i64));
        }
        chi
    }

    pub fn classify(&self) -> CurveClass {
        let chi = self.euler_char();
        if chi.is_zero() {
            CurveClass::CalabiYau
        } else if chi.is_negative() {
            CurveClass::GeneralType
        } else {
            CurveClass::Fano
        }
    }

    /// Basis index set: (0,0), (0,1), then (alpha, i) in lexicographic order.
    pub fn basis(&self) -> Vec<BasisIndex> {
        let mut out = vec![BasisIndex::Unit, BasisIndex::Point];
        for (a_idx, &a) in self.orders.iter().enumerate() {
            for i in 1..a {
                out.push(BasisIndex::Twisted {
                    point: a_idx + 1,
                    power: i,
                });
            }
        }
        out
    }

    /// N = 2 + sum(a - 1).
    pub fn dim(&self) -> usize {
        2 + self.orders.iter().map(|&a| (a - 1) as usize).sum::<usize>()
    }

    /// Position of a basis index in the fixed basis ordering.
    pub fn basis_position(&self, s: &BasisIndex) -> Result<usize> {
        match s {
            BasisIndex::Unit => Ok(0),
            BasisIndex::Point => Ok(1),
            BasisIndex::Twisted { point, power } => {
                let alpha = *point;
                if alpha == 0 || alpha > self.orders.len() {
                    return Err(Error::Invalid(format!("no marked point {alpha}")));
                }
                let a = self.orders[alpha - 1];
                if *power == 0 || *power >= a {
                    return Err(Error::Invalid(format!(
                        "twisted index ({alpha},{power}) out of range for order {a}"
                    )));
                }
                let before: usize = self.orders[..alpha - 1]
                    .iter()
                    .map(|&b| (b - 1) as usize)
                    .sum();
                Ok(2 + before + (*power as usize - 1))
            }
        }
    }

    /// Orbifold degree of a basis class: 0, 2, and 2i/a.
    pub fn orb_degree(&self, s: &BasisIndex) -> Ratio {
        match s {
            BasisIndex::Unit => Ratio::zero(),
            BasisIndex::Point => Ratio::from_int(2),
            BasisIndex::Twisted { point, power } => {
                Ratio::new(2 * *power as i64, self.order(*point) as i64)
            }
        }
    }
}

impl fmt::Display for OrbiCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.genus == 0 && !self.orders.is_empty() {
            let list = self
                .orders
                .iter()
                .map(|a| a.to_string())
                .collect::<Vec<_>>()
                .join(",");
            write!(f, "P1_{{{list}}}")
        } else {
            write!(f, "{}", self.literal())
        }
    }
}

/// Index into the cohomology basis `{phi_s}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum BasisIndex {
    /// (0,0): the fundamental class, the unit.
    Unit,
    /// (0,1): the point class.
    Point,
    /// (alpha, i): twisted class at the marked point `alpha`, 1 <= i < a.
    Twisted { point: usize, power: u32 },
}

impl BasisIndex {
    pub fn twisted(point: usize, power: u32) -> Self {
        BasisIndex::Twisted { point, power }
    }
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BasisIndex::Unit => write!(f, "phi_00"),
            BasisIndex::Point => write!(f, "phi_01"),
            BasisIndex::Twisted { point, power } => write!(f, "phi_{point},{power}"),
        }
    }
}

/// Orbifold Poincaré pairing <phi_s, phi_t>.
pub fn pairing_value(curve: &OrbiCurve, s: &BasisIndex, t: &BasisIndex) -> Ratio {
    match (s, t) {
        (BasisIndex::Unit, BasisIndex::Point) | (BasisIndex::Point, BasisIndex::Unit) => {
            Ratio::one()
        }
        (
            BasisIndex::Twisted {
                point: a1,
                power: i,
            },
            BasisIndex::Twisted {
                point: a2,
                power: j,
            },
        ) if a1 == a2 && i + j == curve.order(*a1) => Ratio::new(1, curve.order(*a1) as i64),
        _ => Ratio::zero(),
    }
}

/// Pairing Gram matrix in the fixed basis order.
pub fn pairing_matrix(curve: &OrbiCurve) -> Matrix<Ratio> {
    let basis = curve.basis();
    Matrix::from_rows(
        basis
            .iter()
            .map(|s| basis.iter().map(|t| pairing_value(curve, s, t)).collect())
            .collect(),
    )
    .expect("square by construction")
}

/// Inverse pairing matrix. The pairing pairs each basis element with exactly
/// one partner, so the inverse is written down directly.
pub fn pairing_inverse(curve: &OrbiCurve) -> Matrix<Ratio> {
    let basis = curve.basis();
    let n = basis.len();
    let mut m = Matrix::zero(n, n, &Ratio::one());
    for (i, s) in basis.iter().enumerate() {
        let (t, c) = dual_index(curve, s);
        let j = curve.basis_position(&t).expect("partner in basis");
        *m.at_mut(i, j) = c;
    }
    m
}

/// The dual basis element `phi^s` as `(partner index, coefficient)`:
/// `phi^00 = phi_01`, `phi^01 = phi_00`, `phi^{a,i} = a * phi_{a, a-i}`.
pub fn dual_index(curve: &OrbiCurve, s: &BasisIndex) -> (BasisIndex, Ratio) {
    match s {
        BasisIndex::Unit => (BasisIndex::Point, Ratio::one()),
        BasisIndex::Point => (BasisIndex::Unit, Ratio::one()),
        BasisIndex::Twisted { point, power } => {
            let a = curve.order(*point);
            (
                BasisIndex::twisted(*point, a - *power),
                Ratio::from_int(a as i64),
            )
        }
    }
}

/// Chen–Ruan product of two basis classes. The product of basis classes is
/// always a rational multiple of a single basis class (or zero).
pub fn cr_basis_mul(
    curve: &OrbiCurve,
    s: &BasisIndex,
    t: &BasisIndex,
) -> Option<(BasisIndex, Ratio)> {
    match (s, t) {
        (BasisIndex::Unit, other) | (other, BasisIndex::Unit) => Some((*other, Ratio::one())),
        // phi_01 against anything of positive degree lands above top degree
        (BasisIndex::Point, _) | (_, BasisIndex::Point) => None,
        (
            BasisIndex::Twisted {
                point: a1,
                power: i,
            },
            BasisIndex::Twisted {
                point: a2,
                power: j,
            },
        ) => {
            if a1 != a2 {
                return None;
            }
            let a = curve.order(*a1);
            let k = i + j;
            if k < a {
                Some((BasisIndex::twisted(*a1, k), Ratio::one()))
            } else if k == a {
                Some((BasisIndex::Point, Ratio::new(1, a as i64)))
            } else {
                None
            }
        }
    }
}

/// A cohomology class: coefficients over a ring, indexed by the basis.
/// Absent indices are zero.
#[derive(Clone, PartialEq, Debug)]
pub struct CohClass<T> {
    curve: OrbiCurve,
    coeffs: BTreeMap<BasisIndex, T>,
}

impl<T: Ring> CohClass<T> {
    pub fn zero(curve: &OrbiCurve) -> Self {
        CohClass {
            curve: curve.clone(),
            coeffs: BTreeMap::new(),
        }
    }

    /// The basis class `phi_s` with the given unit coefficient.
    pub fn basis_class(curve: &OrbiCurve, s: BasisIndex, one: T) -> Self {
        let mut c = CohClass::zero(curve);
        c.set(s, one);
        c
    }

    pub fn curve(&self) -> &OrbiCurve {
        &self.curve
    }

    pub fn set(&mut self, s: BasisIndex, v: T) {
        if v.is_zero() {
            self.coeffs.remove(&s);
        } else {
            self.coeffs.insert(s, v);
        }
    }

    pub fn add_to(&mut self, s: BasisIndex, v: &T) {
        let cur = match self.coeffs.get(&s) {
            Some(c) => c.add(v),
            None => v.clone(),
        };
        self.set(s, cur);
    }

    pub fn coeff(&self, s: &BasisIndex) -> Option<&T> {
        self.coeffs.get(s)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&BasisIndex, &T)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, rhs: &CohClass<T>) -> Result<CohClass<T>> {
        if self.curve != rhs.curve {
            return Err(Error::CurveMismatch);
        }
        let mut out = self.clone();
        for (s, v) in &rhs.coeffs {
            out.add_to(*s, v);
        }
        Ok(out)
    }

    /// Dense coefficient vector in the fixed basis order.
    pub fn to_vec(&self, zero: &T) -> Vec<T> {
        let basis = self.curve.basis();
        basis
            .iter()
            .map(|s| {
                self.coeffs
                    .get(s)
                    .cloned()
                    .unwrap_or_else(|| zero.ring_zero())
            })
            .collect()
    }
}

/// Chen–Ruan product, extended bilinearly from the basis rules.
pub fn chen_ruan_mul<T: Ring>(x: &CohClass<T>, y: &CohClass<T>) -> Result<CohClass<T>> {
    if x.curve() != y.curve() {
        return Err(Error::CurveMismatch);
    }
    let curve = x.curve();
    let mut out = CohClass::zero(curve);
    for (s, xs) in x.iter() {
        for (t, yt) in y.iter() {
            if let Some((w, c)) = cr_basis_mul(curve, s, t) {
                out.add_to(w, &xs.mul(yt).scale(&c));
            }
        }
    }
    Ok(out)
}
