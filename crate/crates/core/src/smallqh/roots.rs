//! Floating-point root finding and small complex linear algebra, used only
//! for explicit solution tables. Verdicts are never taken from here; they
//! come from exact arithmetic.

use num_complex::Complex64;

use crate::mpoly::MPoly;
use crate::unipoly::UniPoly;

/// Simultaneous Aberth–Ehrlich iteration on a squarefree polynomial.
/// Deterministic initial guesses on a Cauchy-bound circle.
pub fn aberth_roots(p: &UniPoly) -> Vec<Complex64> {
    let n = match p.degree() {
        None | Some(0) => return Vec::new(),
        Some(n) => n,
    };
    let monic = p.monic();
    let coeffs: Vec<f64> = monic.coeffs().iter().map(|c| c.to_f64()).collect();
    let radius = 1.0 + coeffs[..n].iter().map(|c| c.abs()).fold(0.0f64, f64::max);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (n as f64) + 0.4;
            Complex64::from_polar(radius, angle)
        })
        .collect();

    let eval = |x: Complex64| -> (Complex64, Complex64) {
        // Horner for p and p'
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            dv = dv * x + v;
            v = v * x + Complex64::new(*c, 0.0);
        }
        (v, dv)
    };

    for _ in 0..500 {
        let mut max_step = 0.0f64;
        let snapshot = z.clone();
        for k in 0..n {
            let (v, dv) = eval(z[k]);
            if v.norm() == 0.0 {
                continue;
            }
            let newton = if dv.norm() == 0.0 {
                Complex64::new(1e-12, 1e-12)
            } else {
                v / dv
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (j, other) in snapshot.iter().enumerate() {
                if j != k {
                    let diff = z[k] - other;
                    if diff.norm() > 1e-300 {
                        repulsion += diff.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom.norm() < 1e-300 {
                newton
            } else {
                newton / denom
            };
            z[k] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[k].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }
    // Newton polish
    for zk in z.iter_mut() {
        for _ in 0..4 {
            let (v, dv) = eval(*zk);
            if dv.norm() > 1e-300 {
                *zk -= v / dv;
            }
        }
    }
    z
}

/// Solve a small dense complex system by LU with partial pivoting. Pivots
/// below `clamp` are lifted to it, which turns a singular solve into a
/// least-harm inverse iteration step.
pub fn solve_complex_clamped(a: &[Vec<Complex64>], b: &[Complex64], clamp: f64) -> Vec<Complex64> {
    let n = b.len();
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let mut rhs = b.to_vec();
    for k in 0..n {
        let (pivot_row, _) = (k..n)
            .map(|i| (i, m[i][k].norm()))
            .max_by(|x, y| x.1.total_cmp(&y.1))
            .unwrap();
        m.swap(k, pivot_row);
        rhs.swap(k, pivot_row);
        if m[k][k].norm() < clamp {
            m[k][k] = Complex64::new(clamp, 0.0);
        }
        for i in k + 1..n {
            let f = m[i][k] / m[k][k];
            for j in k..n {
                let delta = f * m[k][j];
                m[i][j] -= delta;
            }
            let delta = f * rhs[k];
            rhs[i] -= delta;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut s = rhs[i];
        for j in i + 1..n {
            s -= m[i][j] * x[j];
        }
        x[i] = s / m[i][i];
    }
    x
}

/// Eigenvector of `m` for the (accurate) eigenvalue `theta`, by two rounds
/// of inverse iteration from a deterministic start.
pub fn eigenvector(m: &[Vec<Complex64>], theta: Complex64) -> Vec<Complex64> {
    let n = m.len();
    let shifted: Vec<Vec<Complex64>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { m[i][j] - theta } else { m[i][j] })
                .collect()
        })
        .collect();
    let scale = m.iter().flatten().map(|e| e.norm()).fold(1.0f64, f64::max);
    let clamp = 1e-14 * scale;
    let mut v: Vec<Complex64> = (0..n)
        .map(|k| Complex64::new(1.0, 0.3 + 0.1 * k as f64))
        .collect();
    for _ in 0..3 {
        v = solve_complex_clamped(&shifted, &v, clamp);
        let norm = v.iter().map(|e| e.norm_sqr()).sum::<f64>().sqrt();
        if norm > 0.0 {
            for e in v.iter_mut() {
                *e /= norm;
            }
        }
    }
    v
}

/// Newton iteration on a square polynomial system from a good initial
/// point. Leaves the point unchanged when the Jacobian is near-singular.
pub fn newton_polish(gens: &[MPoly], point: &mut [Complex64]) {
    let n = point.len();
    if gens.len() != n {
        return;
    }
    for _ in 0..6 {
        let f: Vec<Complex64> = gens.iter().map(|g| g.eval_complex(point)).collect();
        let jac: Vec<Vec<Complex64>> = gens
            .iter()
            .map(|g| {
                (0..n)
                    .map(|j| g.partial_derivative_idx(j).eval_complex(point))
                    .collect()
            })
            .collect();
        // bail out on singular Jacobians (multiple points)
        let det_scale: f64 = jac.iter().flatten().map(|e| e.norm()).fold(0.0, f64::max);
        if det_scale == 0.0 {
            return;
        }
        let delta = solve_complex_clamped(&jac, &f, 1e-13 * det_scale);
        let step: f64 = delta.iter().map(|e| e.norm()).fold(0.0, f64::max);
        let scale: f64 = point.iter().map(|e| e.norm()).fold(1.0, f64::max);
        if !step.is_finite() || step > 0.5 * scale {
            return;
        }
        for (p, d) in point.iter_mut().zip(&delta) {
            *p -= d;
        }
        if step < 1e-15 {
            break;
        }
    }
}
