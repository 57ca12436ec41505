//! Genus-zero potential of an orbi-curve, truncated in `q = Qe^{t01}`.
//!
//! A potential is stored in three parts over one variable table:
//!   - `classical`: the cubic terms `(t00)^2 t01 / 2 + sum t00 t^{a,i} t^{a,a-i} / 2a`,
//!   - `a_poly`: the degree-zero quantum part `A` (twisted variables only),
//!   - `b[d-1]`: the degree-`d` coefficient `B_d` (twisted variables only).
//!
//! `t01` is not a series variable: the series parameter `q` stands for
//! `Qe^{t01}`, so differentiating by `t01` multiplies the `q^d` coefficient
//! by `d`, while the classical cubic keeps an honest `t01` variable. This is
//! the variable grouping under which every computation here is finite.
//!
//! The canonical table layout is `t00, t01, t{a}_{i}...` in basis order;
//! tables may carry extra trailing variables (the reconstruction solver uses
//! them for unknown coefficients), which simply ride along as scalars.

use std::sync::Arc;

use crate::curve::{dual_index, BasisIndex, CohClass, OrbiCurve};
use crate::error::{Error, Result};
use crate::mpoly::{MPoly, WeightedDegree};
use crate::qseries::QSeries;
use crate::ratio::Ratio;
use crate::reconstruct::TearDropData;
use crate::vars::VarTable;

/// A derivative triple `F_{s1,s2,s3}`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct DerivTriple(pub BasisIndex, pub BasisIndex, pub BasisIndex);

#[derive(Clone, PartialEq, Debug)]
pub struct Potential {
    curve: OrbiCurve,
    table: Arc<VarTable>,
    classical: MPoly,
    a_poly: MPoly,
    b: Vec<MPoly>,
}

/// Canonical variable table of a curve: `t00` (weight 1), `t01` (weight 0),
/// then `t{alpha}_{i}` with weight `1 - i/a` in basis order.
pub fn standard_table(curve: &OrbiCurve) -> Arc<VarTable> {
    let mut names = vec!["t00".to_string(), "t01".to_string()];
    let mut weights = vec![Ratio::one(), Ratio::zero()];
    for (idx, &a) in curve.orders().iter().enumerate() {
        for i in 1..a {
            names.push(format!("t{}_{}", idx + 1, i));
            weights.push(Ratio::one() - Ratio::new(i as i64, a as i64));
        }
    }
    VarTable::new(names, weights).expect("canonical table")
}

/// Index of the variable `t^s` in a table with the canonical layout.
pub fn var_index(curve: &OrbiCurve, s: &BasisIndex) -> usize {
    curve.basis_position(s).expect("basis index on this curve")
}

/// The cubic classical part of the potential as a polynomial.
pub fn classical_terms(curve: &OrbiCurve, table: &Arc<VarTable>) -> MPoly {
    let t00 = MPoly::var(table, 0);
    let t01 = MPoly::var(table, 1);
    let mut p = t00.mul(&t00).mul(&t01).scale(&Ratio::new(1, 2));
    for (idx, &a) in curve.orders().iter().enumerate() {
        for i in 1..a {
            let vi = MPoly::var(table, var_index(curve, &BasisIndex::twisted(idx + 1, i)));
            let vai = MPoly::var(
                table,
                var_index(curve, &BasisIndex::twisted(idx + 1, a - i)),
            );
            p = p.add(&t00.mul(&vi).mul(&vai).scale(&Ratio::new(1, 2 * a as i64)));
        }
    }
    p
}

impl Potential {
    /// Potential with `A = 0` and `B_d = 0` for all `d` up to the truncation.
    pub fn classical(curve: &OrbiCurve, truncation_order: usize) -> Potential {
        let table = standard_table(curve);
        let classical = classical_terms(curve, &table);
        let zero = MPoly::zero(&table);
        Potential {
            curve: curve.clone(),
            table,
            classical,
            a_poly: zero.clone(),
            b: vec![zero; truncation_order],
        }
    }

    /// Potential with the given quantum parts on the canonical table.
    pub fn with_parts(curve: &OrbiCurve, a_poly: MPoly, b: Vec<MPoly>) -> Result<Potential> {
        let table = standard_table(curve);
        Potential::with_parts_on(curve, &table, a_poly, b)
    }

    /// Same, over an explicit table that extends the canonical layout.
    pub fn with_parts_on(
        curve: &OrbiCurve,
        table: &Arc<VarTable>,
        a_poly: MPoly,
        b: Vec<MPoly>,
    ) -> Result<Potential> {
        if table.len() < curve.dim() {
            return Err(Error::DimensionMismatch(
                "table shorter than the canonical layout".into(),
            ));
        }
        if a_poly.table() != table || b.iter().any(|p| p.table() != table) {
            return Err(Error::TableMismatch);
        }
        // the quantum parts live in the twisted variables alone, and A
        // starts at cubic order in them
        let twisted_count = curve.dim() - 2;
        for (e, _) in a_poly.terms() {
            if e.0[0] > 0 || e.0[1] > 0 {
                return Err(Error::Invalid("A may not involve t00 or t01".into()));
            }
            let tdeg: u32 = e.0[2..2 + twisted_count].iter().sum();
            if tdeg < 3 {
                return Err(Error::Invalid(
                    "A has a term below cubic order in the twisted variables".into(),
                ));
            }
        }
        for bd in &b {
            for (e, _) in bd.terms() {
                if e.0[0] > 0 || e.0[1] > 0 {
                    return Err(Error::Invalid("B_d may not involve t00 or t01".into()));
                }
            }
        }
        Ok(Potential {
            curve: curve.clone(),
            table: Arc::clone(table),
            classical: classical_terms(curve, table),
            a_poly,
            b,
        })
    }

    pub fn curve(&self) -> &OrbiCurve {
        &self.curve
    }

    pub fn table(&self) -> &Arc<VarTable> {
        &self.table
    }

    pub fn truncation_order(&self) -> usize {
        self.b.len()
    }

    pub fn classical_part(&self) -> &MPoly {
        &self.classical
    }

    pub fn a_part(&self) -> &MPoly {
        &self.a_poly
    }

    pub fn b_part(&self, d: usize) -> &MPoly {
        &self.b[d - 1]
    }

    pub fn b_parts(&self) -> &[MPoly] {
        &self.b
    }

    /// Exact third derivative `F_{s1,s2,s3}` as a series in `q`.
    ///
    /// On the polynomial part the derivative is formal. On `B_d q^d` a `t01`
    /// derivative multiplies by `d` (divisor rule under `q = Qe^{t01}`) and a
    /// `t00` derivative kills the term.
    pub fn third_derivative(&self, d: &DerivTriple) -> QSeries {
        let order = self.truncation_order();
        let triple = [d.0, d.1, d.2];

        let mut q0 = self.classical.add(&self.a_poly);
        for s in &triple {
            q0 = q0.partial_derivative_idx(var_index(&self.curve, s));
        }

        let mut out = QSeries::constant(&self.table, order, q0);
        for (dm1, bd) in self.b.iter().enumerate() {
            let deg = dm1 + 1;
            let mut p = bd.clone();
            for s in &triple {
                if p.is_zero() {
                    break;
                }
                match s {
                    BasisIndex::Unit => p = MPoly::zero(&self.table),
                    BasisIndex::Point => p = p.scale(&Ratio::from_int(deg as i64)),
                    BasisIndex::Twisted { .. } => {
                        p = p.partial_derivative_idx(var_index(&self.curve, s))
                    }
                }
            }
            if !p.is_zero() {
                out = out.add(&QSeries::from_coeff(order, deg, p));
            }
        }
        out
    }

    /// Big quantum product of two basis classes:
    /// `phi_{s1} * phi_{s2} = sum_s F_{s1,s2,s} phi^s`.
    pub fn quantum_basis_product(&self, s1: &BasisIndex, s2: &BasisIndex) -> CohClass<QSeries> {
        let mut out = CohClass::zero(&self.curve);
        for s in self.curve.basis() {
            let f = self.third_derivative(&DerivTriple(*s1, *s2, s));
            if f.is_zero() {
                continue;
            }
            let (partner, c) = dual_index(&self.curve, &s);
            out.add_to(partner, &f.scale(&c));
        }
        out
    }

    /// Big quantum product, extended bilinearly.
    pub fn quantum_product(
        &self,
        x: &CohClass<QSeries>,
        y: &CohClass<QSeries>,
    ) -> Result<CohClass<QSeries>> {
        if x.curve() != &self.curve || y.curve() != &self.curve {
            return Err(Error::CurveMismatch);
        }
        let mut out = CohClass::zero(&self.curve);
        for (s1, a) in x.iter() {
            for (s2, b) in y.iter() {
                let ab = a.mul(b);
                if ab.is_zero() {
                    continue;
                }
                for (w, f) in self.quantum_basis_product(s1, s2).iter() {
                    out.add_to(*w, &ab.mul(f));
                }
            }
        }
        Ok(out)
    }

    /// WDVV residual of type `(s1, s2; s3, s4)`:
    /// `sum F_{s1,s2,s'} g^{s's''} F_{s'',s3,s4} - sum F_{s1,s3,s'} g^{s's''} F_{s'',s2,s4}`.
    /// Zero for a genuine potential.
    pub fn wdvv_residual(
        &self,
        s1: &BasisIndex,
        s2: &BasisIndex,
        s3: &BasisIndex,
        s4: &BasisIndex,
    ) -> QSeries {
        let half = |a: &BasisIndex, b: &BasisIndex, c: &BasisIndex, d: &BasisIndex| {
            let mut acc = QSeries::zero(&self.table, self.truncation_order());
            for s in self.curve.basis() {
                let left = self.third_derivative(&DerivTriple(*a, *b, s));
                if left.is_zero() {
                    continue;
                }
                let (partner, coeff) = dual_index(&self.curve, &s);
                let right = self.third_derivative(&DerivTriple(partner, *c, *d));
                if right.is_zero() {
                    continue;
                }
                acc = acc.add(&left.mul(&right).scale(&coeff));
            }
            acc
        };
        half(s1, s2, s3, s4).sub(&half(s1, s3, s2, s4))
    }

    /// All WDVV residuals over unordered pairs of unordered index pairs.
    /// Every pairing difference appears in this enumeration.
    pub fn wdvv_residuals_all(&self) -> Vec<(DerivTriple, BasisIndex, QSeries)> {
        let basis = self.curve.basis();
        let mut pairs = Vec::new();
        for (i, s) in basis.iter().enumerate() {
            for t in &basis[i..] {
                pairs.push((*s, *t));
            }
        }
        let mut out = Vec::new();
        for (i, (s1, s2)) in pairs.iter().enumerate() {
            for (s3, s4) in &pairs[i..] {
                let r = self.wdvv_residual(s1, s2, s3, s4);
                out.push((DerivTriple(*s1, *s2, *s3), *s4, r));
            }
        }
        out
    }

    /// True if every WDVV residual vanishes identically up to the truncation.
    pub fn wdvv_holds(&self) -> bool {
        let basis = self.curve.basis();
        let mut pairs = Vec::new();
        for (i, s) in basis.iter().enumerate() {
            for t in &basis[i..] {
                pairs.push((*s, *t));
            }
        }
        for (i, (s1, s2)) in pairs.iter().enumerate() {
            for (s3, s4) in &pairs[i..] {
                if !self.wdvv_residual(s1, s2, s3, s4).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Weighted-degree audit against `deg F = deg A = 2`,
    /// `deg B_d = 2 - d * chi_orb`.
    pub fn homogeneity_report(&self) -> HomogeneityReport {
        let chi = self.curve.euler_char();
        let two = Ratio::from_int(2);
        let check = |p: &MPoly, expected: &Ratio| -> ComponentDegree {
            let degree = p.weighted_degree();
            let pass = match &degree {
                WeightedDegree::Zero => true,
                WeightedDegree::Homogeneous(d) => d == expected,
                WeightedDegree::Inhomogeneous => false,
            };
            ComponentDegree {
                degree,
                expected: expected.clone(),
                pass,
            }
        };
        let classical = check(&self.classical, &two);
        let a = check(&self.a_poly, &two);
        let b = self
            .b
            .iter()
            .enumerate()
            .map(|(dm1, bd)| {
                let expected = &two - &(&chi * &Ratio::from_int((dm1 + 1) as i64));
                check(bd, &expected)
            })
            .collect::<Vec<_>>();
        let pass = classical.pass && a.pass && b.iter().all(|c| c.pass);
        HomogeneityReport {
            classical,
            a,
            b,
            pass,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ComponentDegree {
    pub degree: WeightedDegree,
    pub expected: Ratio,
    pub pass: bool,
}

#[derive(Clone, Debug)]
pub struct HomogeneityReport {
    pub classical: ComponentDegree,
    pub a: ComponentDegree,
    pub b: Vec<ComponentDegree>,
    pub pass: bool,
}

/// Assemble the potential of `P^1_a` from per-point tear-drop data:
/// `A = sum_alpha A^{a_alpha}` and `B_1 = prod_alpha B^{a_alpha}_1`, with each
/// point's variables relabeled into the joint table. Marked point `alpha` is
/// the position in the list. Truncated at `D = 1`.
pub fn assemble_multipoint(tds: &[TearDropData]) -> Result<Potential> {
    let orders: Vec<u32> = tds.iter().map(|td| td.order()).collect();
    let curve = OrbiCurve::new(0, orders)?;
    let table = standard_table(&curve);

    let mut a_poly = MPoly::zero(&table);
    let mut b1 = MPoly::one(&table);
    for (idx, td) in tds.iter().enumerate() {
        let map: Vec<Option<usize>> = (1..td.order())
            .map(|i| Some(var_index(&curve, &BasisIndex::twisted(idx + 1, i))))
            .collect();
        a_poly = a_poly.add(&td.a_part().map_variables(&table, &map)?);
        b1 = b1.mul(&td.b1_part().map_variables(&table, &map)?);
    }
    Potential::with_parts(&curve, a_poly, vec![b1])
}

// ---- JSON interchange ----

#[derive(serde::Serialize, serde::Deserialize)]
struct PotentialJson {
    curve: String,
    truncation_order: usize,
    classical: Vec<(Vec<u32>, String)>,
    #[serde(rename = "A")]
    a: Vec<(Vec<u32>, String)>,
    #[serde(rename = "B")]
    b: Vec<Vec<(Vec<u32>, String)>>,
}

impl Potential {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(PotentialJson {
            curve: self.curve.literal(),
            truncation_order: self.truncation_order(),
            classical: self.classical.to_pairs(),
            a: self.a_poly.to_pairs(),
            b: self.b.iter().map(|p| p.to_pairs()).collect(),
        })
        .expect("potential serialization")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Potential> {
        let pj: PotentialJson = serde_json::from_value(v.clone())?;
        let curve = OrbiCurve::parse(&pj.curve)?;
        let table = standard_table(&curve);
        if pj.b.len() != pj.truncation_order {
            return Err(Error::TruncationOrder {
                expected: pj.truncation_order,
                got: pj.b.len(),
            });
        }
        let classical = MPoly::from_pairs(&table, &pj.classical)?;
        if classical != classical_terms(&curve, &table) {
            return Err(Error::Invalid(
                "classical part does not match the curve".into(),
            ));
        }
        let a_poly = MPoly::from_pairs(&table, &pj.a)?;
        let b =
            pj.b.iter()
                .map(|pairs| MPoly::from_pairs(&table, pairs))
                .collect::<Result<Vec<_>>>()?;
        Potential::with_parts(&curve, a_poly, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::chen_ruan_mul;

    fn p2_potential() -> Potential {
        // P^1_2 with A = -(t1)^4/96, B1 = t1
        let curve = OrbiCurve::teardrop(2).unwrap();
        let table = standard_table(&curve);
        let t1 = MPoly::var(&table, 2);
        let a = t1.pow(4).scale(&Ratio::new(-1, 96));
        Potential::with_parts(&curve, a, vec![t1]).unwrap()
    }

    #[test]
    fn classical_shapes() {
        let p1 = Potential::classical(&OrbiCurve::new(0, vec![]).unwrap(), 1);
        // (t00)^2 t01 / 2 only
        assert_eq!(p1.classical_part().num_terms(), 1);

        let p2 = Potential::classical(&OrbiCurve::teardrop(2).unwrap(), 1);
        let t = p2.table().clone();
        let expected = MPoly::var(&t, 0)
            .pow(2)
            .mul(&MPoly::var(&t, 1))
            .scale(&Ratio::new(1, 2))
            .add(
                &MPoly::var(&t, 0)
                    .mul(&MPoly::var(&t, 2).pow(2))
                    .scale(&Ratio::new(1, 4)),
            );
        assert_eq!(p2.classical_part(), &expected);

        let p3 = Potential::classical(&OrbiCurve::teardrop(3).unwrap(), 1);
        let t = p3.table().clone();
        let expected = MPoly::var(&t, 0)
            .pow(2)
            .mul(&MPoly::var(&t, 1))
            .scale(&Ratio::new(1, 2))
            .add(
                &MPoly::var(&t, 0)
                    .mul(&MPoly::var(&t, 2))
                    .mul(&MPoly::var(&t, 3))
                    .scale(&Ratio::new(1, 3)),
            );
        assert_eq!(p3.classical_part(), &expected);
    }

    #[test]
    fn third_derivative_unit_triple() {
        let f = p2_potential();
        let d = f.third_derivative(&DerivTriple(
            BasisIndex::Unit,
            BasisIndex::Unit,
            BasisIndex::Point,
        ));
        assert_eq!(d.coeff(0), &MPoly::one(f.table()));
        assert!(d.coeff(1).is_zero());
    }

    #[test]
    fn third_derivative_quartic() {
        let f = p2_potential();
        let s = BasisIndex::twisted(1, 1);
        let d = f.third_derivative(&DerivTriple(s, s, s));
        // -(t1)^4/96 differentiates to -t1/4; B1 = t1 has zero third derivative
        let t1 = MPoly::var(f.table(), 2);
        assert_eq!(d.coeff(0), &t1.scale(&Ratio::new(-1, 4)));
        assert!(d.coeff(1).is_zero());
    }

    #[test]
    fn third_derivative_divisor_rule() {
        let f = p2_potential();
        let d = f.third_derivative(&DerivTriple(
            BasisIndex::twisted(1, 1),
            BasisIndex::Point,
            BasisIndex::Point,
        ));
        // d/dt1 d/dt01 d/dt01 of (t1 q) = q
        assert!(d.coeff(0).is_zero());
        assert_eq!(d.coeff(1), &MPoly::one(f.table()));
    }

    #[test]
    fn quantum_product_unit() {
        let f = p2_potential();
        for s in f.curve().basis() {
            let prod = f.quantum_basis_product(&BasisIndex::Unit, &s);
            for (w, c) in prod.iter() {
                if w == &s {
                    assert_eq!(c, &QSeries::one(f.table(), 1));
                } else {
                    assert!(c.is_zero());
                }
            }
            assert!(prod.coeff(&s).is_some());
        }
    }

    #[test]
    fn quantum_product_twisted_square() {
        let f = p2_potential();
        let s = BasisIndex::twisted(1, 1);
        let prod = f.quantum_basis_product(&s, &s);
        let t1 = MPoly::var(f.table(), 2);
        // -(t1/2) phi_11 + (1/2) phi_01 + O(q)
        assert_eq!(
            prod.coeff(&s).unwrap().coeff(0),
            &t1.scale(&Ratio::new(-1, 2))
        );
        assert_eq!(
            prod.coeff(&BasisIndex::Point).unwrap().coeff(0),
            &MPoly::constant(f.table(), Ratio::new(1, 2))
        );
    }

    #[test]
    fn quantum_product_point_squared() {
        let f = p2_potential();
        let prod = f.quantum_basis_product(&BasisIndex::Point, &BasisIndex::Point);
        let t1 = MPoly::var(f.table(), 2);
        // B1 q phi_00 + 2 q phi_11
        let c_unit = prod.coeff(&BasisIndex::Unit).unwrap();
        assert!(c_unit.coeff(0).is_zero());
        assert_eq!(c_unit.coeff(1), &t1);
        let c_tw = prod.coeff(&BasisIndex::twisted(1, 1)).unwrap();
        assert_eq!(
            c_tw.coeff(1),
            &MPoly::constant(f.table(), Ratio::from_int(2))
        );
    }

    #[test]
    fn wdvv_rank_two() {
        // P^1 with B1 = 1: all residual types vanish
        let curve = OrbiCurve::new(0, vec![]).unwrap();
        let table = standard_table(&curve);
        let f =
            Potential::with_parts(&curve, MPoly::zero(&table), vec![MPoly::one(&table)]).unwrap();
        assert!(f.wdvv_holds());
    }

    #[test]
    fn wdvv_detects_corruption() {
        // A = -(t1)^4/95 genuinely violates the order-q WDVV identity.
        // (Rescaling B1 alone does not: it is the Q-rescaling symmetry.)
        let curve = OrbiCurve::teardrop(2).unwrap();
        let table = standard_table(&curve);
        let t1 = MPoly::var(&table, 2);
        let a = t1.pow(4).scale(&Ratio::new(-1, 95));
        let f = Potential::with_parts(&curve, a, vec![t1.clone()]).unwrap();
        let s = BasisIndex::twisted(1, 1);
        let r = f.wdvv_residual(&s, &s, &BasisIndex::Point, &BasisIndex::Point);
        assert!(!r.is_zero());
        // while the scaled-B1 potential satisfies WDVV identically
        let a_good = t1.pow(4).scale(&Ratio::new(-1, 96));
        let g = Potential::with_parts(&curve, a_good, vec![t1.scale(&Ratio::from_int(2))]).unwrap();
        assert!(g.wdvv_holds());
    }

    #[test]
    fn wdvv_holds_for_p2() {
        assert!(p2_potential().wdvv_holds());
    }

    #[test]
    fn quantum_product_reduces_to_chen_ruan() {
        // with F cut down to its cubic terms (classical plus the cubic part
        // of A) and q = 0, the quantum product is the Chen-Ruan product
        for a in [2u32, 3, 4, 5] {
            let curve = OrbiCurve::teardrop(a).unwrap();
            let table = standard_table(&curve);
            let cubic = crate::reconstruct::cr_cubic(a, &table, 2);
            let f = Potential::with_parts(&curve, cubic, vec![MPoly::zero(&table)]).unwrap();
            for s in curve.basis() {
                for t in curve.basis() {
                    let q = f.quantum_basis_product(&s, &t);
                    let x = CohClass::basis_class(&curve, s, Ratio::one());
                    let y = CohClass::basis_class(&curve, t, Ratio::one());
                    let cr = chen_ruan_mul(&x, &y).unwrap();
                    for w in curve.basis() {
                        let got = q
                            .coeff(&w)
                            .map(|c| c.coeff(0).as_constant().unwrap_or_else(Ratio::zero))
                            .unwrap_or_else(Ratio::zero);
                        let expect = cr.coeff(&w).cloned().unwrap_or_else(Ratio::zero);
                        assert_eq!(got, expect, "a={a}: ({s}) * ({t}) at {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn homogeneity_of_p2() {
        let rep = p2_potential().homogeneity_report();
        assert!(rep.pass);
        assert_eq!(
            rep.a.degree,
            WeightedDegree::Homogeneous(Ratio::from_int(2))
        );
        // deg B1 = 2 - chi = 2 - 3/2 = 1/2
        assert_eq!(
            rep.b[0].degree,
            WeightedDegree::Homogeneous(Ratio::new(1, 2))
        );
    }

    #[test]
    fn homogeneity_flags_wrong_degree() {
        // B1 containing t1 t2 on P^1_3 has degree 1, expected 2 - 4/3 = 2/3
        let curve = OrbiCurve::teardrop(3).unwrap();
        let table = standard_table(&curve);
        let b1 = MPoly::var(&table, 2).mul(&MPoly::var(&table, 3));
        let f = Potential::with_parts(&curve, MPoly::zero(&table), vec![b1]).unwrap();
        let rep = f.homogeneity_report();
        assert!(!rep.pass);
        assert_eq!(rep.b[0].degree, WeightedDegree::Homogeneous(Ratio::one()));
        assert_eq!(rep.b[0].expected, Ratio::new(2, 3));
    }

    #[test]
    fn json_roundtrip() {
        let f = p2_potential();
        let v = f.to_json();
        let g = Potential::from_json(&v).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn assemble_two_points_of_order_two() {
        // A = -(t^{11})^4/96 - (t^{21})^4/96 and B1 = t^{11} t^{21}
        let td = crate::reconstruct::solve_teardrop(2).unwrap();
        let f = assemble_multipoint(&[td.clone(), td]).unwrap();
        let table = f.table().clone();
        let t11 = MPoly::var(&table, 2);
        let t21 = MPoly::var(&table, 3);
        let quarter = Ratio::new(-1, 96);
        assert_eq!(
            f.a_part(),
            &t11.pow(4).scale(&quarter).add(&t21.pow(4).scale(&quarter))
        );
        assert_eq!(f.b_part(1), &t11.mul(&t21));
        assert!(f.wdvv_holds());
    }
}
