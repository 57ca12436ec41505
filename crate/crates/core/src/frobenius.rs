//! Finite-dimensional commutative Frobenius algebras: multiplication
//! matrices, the quantum Euler class, its determinant series, and two
//! independent semisimplicity criteria.
//!
//! The structure tensor may live over any coefficient ring; the invariant
//! metric is always a rational Gram matrix here (the orbifold pairing, or a
//! trace form). A singular metric is allowed at construction — only the
//! quantum Euler class needs the inverse and reports the failure.

use crate::curve::{BasisIndex, OrbiCurve};
use crate::error::{Error, Result};
use crate::matrix::{det_exact, invert_rational, Matrix};
use crate::mpoly::MPoly;
use crate::potential::{standard_table, Potential};
use crate::qseries::QSeries;
use crate::ratio::Ratio;
use crate::ring::Ring;

/// Structure-constant presentation of a commutative algebra with an
/// invariant pairing: `e_u e_v = sum_w c_{uv}^w e_w`, `g_{uv} = <e_u, e_v>`.
#[derive(Clone, Debug)]
pub struct AlgebraData<T> {
    dim: usize,
    labels: Vec<String>,
    structure: Vec<T>,
    metric: Matrix<Ratio>,
    unit: usize,
}

impl<T: Ring> AlgebraData<T> {
    /// Validates commutativity, the unit, and the Frobenius compatibility
    /// `g(xy, z) = g(x, yz)` on all basis triples.
    pub fn new(
        labels: Vec<String>,
        structure: Vec<T>,
        metric: Matrix<Ratio>,
        unit: usize,
    ) -> Result<Self> {
        let dim = labels.len();
        if structure.len() != dim * dim * dim {
            return Err(Error::DimensionMismatch(format!(
                "structure tensor has {} entries, expected {}",
                structure.len(),
                dim * dim * dim
            )));
        }
        if metric.rows() != dim || metric.cols() != dim {
            return Err(Error::DimensionMismatch("metric size".into()));
        }
        if unit >= dim {
            return Err(Error::DimensionMismatch("unit index out of range".into()));
        }
        let alg = AlgebraData {
            dim,
            labels,
            structure,
            metric,
            unit,
        };
        for u in 0..dim {
            for v in 0..dim {
                for w in 0..dim {
                    if alg.c(u, v, w) != alg.c(v, u, w) {
                        return Err(Error::Invalid(format!(
                            "structure tensor not symmetric at ({u},{v},{w})"
                        )));
                    }
                }
                let expect_unit = if v == u { "one" } else { "zero" };
                let got = alg.c(alg.unit, u, v);
                let ok = if v == u {
                    *got == got.ring_one()
                } else {
                    got.is_zero()
                };
                if !ok {
                    return Err(Error::Invalid(format!(
                        "unit does not act as identity at ({u},{v}); expected {expect_unit}"
                    )));
                }
            }
        }
        // Frobenius compatibility: sum_x c_{uv}^x g_{xw} = sum_x c_{vw}^x g_{ux}
        for u in 0..dim {
            for v in 0..dim {
                for w in 0..dim {
                    let mut lhs = alg.structure[0].ring_zero();
                    let mut rhs = lhs.clone();
                    for x in 0..dim {
                        lhs = lhs.add(&alg.c(u, v, x).scale(alg.metric.at(x, w)));
                        rhs = rhs.add(&alg.c(v, w, x).scale(alg.metric.at(u, x)));
                    }
                    if lhs != rhs {
                        return Err(Error::Invalid(format!(
                            "pairing is not invariant at ({u},{v},{w})"
                        )));
                    }
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn metric(&self) -> &Matrix<Ratio> {
        &self.metric
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    /// Structure constant `c_{uv}^w`.
    pub fn c(&self, u: usize, v: usize, w: usize) -> &T {
        &self.structure[(u * self.dim + v) * self.dim + w]
    }

    /// Matrix of left multiplication by the element with coefficient
    /// vector `x`, in the stored basis: column `v` holds the coordinates
    /// of `x * e_v`.
    pub fn mult_matrix(&self, x: &[T]) -> Result<Matrix<T>> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "element has {} coordinates, algebra dimension is {}",
                x.len(),
                self.dim
            )));
        }
        let like = &self.structure[0];
        let mut m = Matrix::zero(self.dim, self.dim, like);
        for v in 0..self.dim {
            for (u, xu) in x.iter().enumerate() {
                if xu.is_zero() {
                    continue;
                }
                for w in 0..self.dim {
                    let cw = self.c(u, v, w);
                    if !cw.is_zero() {
                        *m.at_mut(w, v) = m.at(w, v).add(&xu.mul(cw));
                    }
                }
            }
        }
        Ok(m)
    }

    /// The quantum Euler class `e_q = sum_s e_s * e^s`, i.e.
    /// `(e_q)_w = sum_{u,v} g^{uv} c_{uv}^w`.
    pub fn quantum_euler(&self) -> Result<Vec<T>> {
        let ginv = invert_rational(&self.metric).ok_or(Error::SingularMetric)?;
        let like = &self.structure[0];
        let mut e = vec![like.ring_zero(); self.dim];
        for u in 0..self.dim {
            for v in 0..self.dim {
                let guv = ginv.at(u, v);
                if guv.is_zero() {
                    continue;
                }
                for (w, slot) in e.iter_mut().enumerate() {
                    let cw = self.c(u, v, w);
                    if !cw.is_zero() {
                        *slot = slot.add(&cw.scale(guv));
                    }
                }
            }
        }
        Ok(e)
    }
}

/// Verdict attached to a quantum-Euler-class computation.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SemisimpleVerdict {
    Semisimple,
    NotSemisimple,
    /// The determinant vanishes up to the truncation order; nothing can be
    /// concluded at this order.
    UndecidedAtTruncation,
}

impl std::fmt::Display for SemisimpleVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SemisimpleVerdict::Semisimple => write!(f, "semisimple"),
            SemisimpleVerdict::NotSemisimple => write!(f, "not semisimple"),
            SemisimpleVerdict::UndecidedAtTruncation => write!(f, "undecided at truncation"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EulerClassResult<T> {
    pub element: Vec<T>,
    pub det: T,
    pub verdict: SemisimpleVerdict,
}

impl AlgebraData<Ratio> {
    /// `det(e_q *)` over a scalar algebra. Nonzero iff semisimple
    /// (Abrams' criterion).
    pub fn euler_det(&self) -> Result<EulerClassResult<Ratio>> {
        let element = self.quantum_euler()?;
        let det = det_exact(&self.mult_matrix(&element)?)?;
        let verdict = if det.is_zero() {
            SemisimpleVerdict::NotSemisimple
        } else {
            SemisimpleVerdict::Semisimple
        };
        Ok(EulerClassResult {
            element,
            det,
            verdict,
        })
    }

    /// Trace-form criterion: the Gram matrix `T_{uv} = tr(L_{e_u e_v})` is
    /// nondegenerate iff the algebra has no nilpotents (characteristic zero).
    /// Returns the verdict together with the Gram matrix.
    pub fn trace_form_semisimple(&self) -> (bool, Matrix<Ratio>) {
        // tau_w = tr(L_{e_w})
        let tau: Vec<Ratio> = (0..self.dim)
            .map(|w| {
                let mut t = Ratio::zero();
                for u in 0..self.dim {
                    t += self.c(w, u, u);
                }
                t
            })
            .collect();
        let mut gram = Matrix::zero(self.dim, self.dim, &Ratio::one());
        for u in 0..self.dim {
            for v in 0..self.dim {
                let mut s = Ratio::zero();
                for (w, tw) in tau.iter().enumerate() {
                    s += &(self.c(u, v, w) * tw);
                }
                *gram.at_mut(u, v) = s;
            }
        }
        let nondegenerate = !det_exact(&gram).expect("square Gram matrix").is_zero();
        (nondegenerate, gram)
    }
}

impl AlgebraData<QSeries> {
    /// Big quantum cohomology algebra of a potential: basis classes with the
    /// quantum product and the orbifold pairing.
    pub fn from_potential(f: &Potential) -> Result<Self> {
        let curve = f.curve();
        let basis = curve.basis();
        let n = basis.len();
        let order = f.truncation_order();
        let zero = QSeries::zero(f.table(), order);
        let mut structure = vec![zero.clone(); n * n * n];
        for (u, su) in basis.iter().enumerate() {
            for (v, sv) in basis.iter().enumerate().skip(u) {
                let prod = f.quantum_basis_product(su, sv);
                for (w, sw) in basis.iter().enumerate() {
                    if let Some(c) = prod.coeff(sw) {
                        structure[(u * n + v) * n + w] = c.clone();
                        structure[(v * n + u) * n + w] = c.clone();
                    }
                }
            }
        }
        let labels = basis.iter().map(|s| s.to_string()).collect();
        AlgebraData::new(labels, structure, crate::curve::pairing_matrix(curve), 0)
    }

    /// `det(e_q *)` as a truncated series. A column entirely divisible by
    /// `q^k` has the factor taken out before the determinant (multilinearity
    /// in columns), which exposes the low-order coefficients without
    /// computing beyond the truncation.
    pub fn euler_det(&self) -> Result<EulerClassResult<QSeries>> {
        let element = self.quantum_euler()?;
        let m = self.mult_matrix(&element)?;
        let d = self.structure[0].truncation_order();
        let zero = self.structure[0].ring_zero();

        let mut total_shift = 0usize;
        let mut columns: Vec<Vec<QSeries>> = Vec::with_capacity(self.dim);
        let mut vanished = false;
        for j in 0..self.dim {
            let col: Vec<QSeries> = (0..self.dim).map(|i| m.at(i, j).clone()).collect();
            let k = col.iter().filter_map(|e| e.valuation()).min();
            match k {
                None => {
                    vanished = true;
                    columns.push(col);
                }
                Some(0) => columns.push(col),
                Some(k) => {
                    total_shift += k;
                    columns.push(col.into_iter().map(|e| e.shift_down(k)).collect());
                }
            }
        }
        let det = if vanished || total_shift > d {
            zero
        } else {
            let factored = Matrix::from_rows(
                (0..self.dim)
                    .map(|i| (0..self.dim).map(|j| columns[j][i].clone()).collect())
                    .collect(),
            )?;
            det_exact(&factored)?.shift_up(total_shift)
        };
        let verdict = if det.is_zero() {
            SemisimpleVerdict::UndecidedAtTruncation
        } else {
            SemisimpleVerdict::Semisimple
        };
        Ok(EulerClassResult {
            element,
            det,
            verdict,
        })
    }
}

impl AlgebraData<Ratio> {
    /// JSON form: labels, unit, dense metric rows, and the structure tensor
    /// as sparse `[u, v, w, coefficient]` quadruples.
    pub fn to_json(&self) -> serde_json::Value {
        let mut triples = Vec::new();
        for u in 0..self.dim {
            for v in 0..self.dim {
                for w in 0..self.dim {
                    let c = self.c(u, v, w);
                    if !c.is_zero() {
                        triples.push(serde_json::json!([u, v, w, c.to_string()]));
                    }
                }
            }
        }
        let metric: Vec<Vec<String>> = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| self.metric.at(i, j).to_string())
                    .collect()
            })
            .collect();
        serde_json::json!({
            "dim": self.dim,
            "labels": self.labels,
            "unit": self.unit,
            "metric": metric,
            "structure": triples,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        #[derive(serde::Deserialize)]
        struct Json {
            dim: usize,
            labels: Vec<String>,
            unit: usize,
            metric: Vec<Vec<String>>,
            structure: Vec<(usize, usize, usize, String)>,
        }
        let j: Json = serde_json::from_value(v.clone())?;
        if j.labels.len() != j.dim {
            return Err(Error::DimensionMismatch("labels vs dim".into()));
        }
        let metric = Matrix::from_rows(
            j.metric
                .iter()
                .map(|row| {
                    row.iter()
                        .map(|s| s.parse())
                        .collect::<Result<Vec<Ratio>>>()
                })
                .collect::<Result<Vec<_>>>()?,
        )?;
        let mut structure = vec![Ratio::zero(); j.dim * j.dim * j.dim];
        for (u, v, w, c) in &j.structure {
            if *u >= j.dim || *v >= j.dim || *w >= j.dim {
                return Err(Error::DimensionMismatch("structure index".into()));
            }
            structure[(*u * j.dim + *v) * j.dim + *w] = c.parse()?;
        }
        AlgebraData::new(j.labels, structure, metric, j.unit)
    }
}

/// Outcome of the leading-determinant check for an assembled potential.
#[derive(Clone, Debug)]
pub struct LeadingDetReport {
    pub pass: bool,
    pub order_zero_vanishes: bool,
    /// Order-q coefficient reduced modulo the ideal `(t^{a,i} : i >= 2)`.
    pub leading: MPoly,
    pub expected: MPoly,
    pub det: QSeries,
}

/// Check the closed-form leading term of `det(e_q *)` for a potential
/// truncated at order one:
///   (i) the order-q^0 coefficient vanishes identically;
///   (ii) the order-q^1 coefficient, reduced modulo `(t^{a,i} : i >= 2)`,
///        equals `-4 prod_a ((a-1)^{a-1} / a) (t^{a,1})^{a+1}` exactly.
pub fn leading_det_check(curve: &OrbiCurve, f: &Potential) -> Result<LeadingDetReport> {
    if f.curve() != curve {
        return Err(Error::CurveMismatch);
    }
    if f.truncation_order() != 1 {
        return Err(Error::TruncationOrder {
            expected: 1,
            got: f.truncation_order(),
        });
    }
    let alg = AlgebraData::from_potential(f)?;
    let result = alg.euler_det()?;
    let order_zero_vanishes = result.det.coeff(0).is_zero();

    let table = standard_table(curve);
    let higher: Vec<usize> = curve
        .basis()
        .iter()
        .filter(|s| matches!(s, BasisIndex::Twisted { power, .. } if *power >= 2))
        .map(|s| crate::potential::var_index(curve, s))
        .collect();
    let leading = result.det.coeff(1).reduce_mod_vars(&higher);

    let mut coeff = Ratio::from_int(-4);
    let mut expo = crate::mpoly::Expo::zero(table.len());
    for (idx, &a) in curve.orders().iter().enumerate() {
        let mut pow = Ratio::one();
        for _ in 0..a - 1 {
            pow *= &Ratio::from_int(a as i64 - 1);
        }
        coeff *= &(pow / Ratio::from_int(a as i64));
        if a >= 2 {
            let j = crate::potential::var_index(curve, &BasisIndex::twisted(idx + 1, 1));
            expo.0[j] = a + 1;
        }
    }
    let expected = MPoly::monomial(&table, expo, coeff);

    Ok(LeadingDetReport {
        pass: order_zero_vanishes && leading == expected,
        order_zero_vanishes,
        leading,
        expected,
        det: result.det,
    })
}
