//! Buchberger's algorithm over the rationals in the crate's fixed
//! graded-reverse-lexicographic order, plus quotient-algebra machinery for
//! zero-dimensional ideals: standard monomials and multiplication matrices.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mpoly::{Expo, MPoly};
use crate::ratio::Ratio;
use crate::vars::VarTable;

fn make_monic(p: &MPoly) -> MPoly {
    match p.leading_term() {
        None => p.clone(),
        Some((_, lc)) => p.scale(&lc.recip()),
    }
}

/// Full normal form: every term of the result is reducible by no basis
/// leading term. Divisor choice is the first match in basis order, so the
/// reduction is deterministic.
pub fn normal_form(f: &MPoly, basis: &[MPoly]) -> MPoly {
    let table = f.table().clone();
    let mut rem = f.clone();
    let mut out = MPoly::zero(&table);
    'outer: while let Some((lm, lc)) = rem.leading_term() {
        let (lm, lc) = (lm.clone(), lc.clone());
        for g in basis {
            let (glm, glc) = g.leading_term().expect("no zero polynomials in basis");
            if glm.divides(&lm) {
                let e = Expo(lm.0.iter().zip(&glm.0).map(|(a, b)| a - b).collect());
                let t = MPoly::monomial(&table, e, &lc / glc);
                rem = rem.sub(&t.mul(g));
                continue 'outer;
            }
        }
        let head = MPoly::monomial(&table, lm, lc);
        out = out.add(&head);
        rem = rem.sub(&head);
    }
    out
}

fn s_polynomial(f: &MPoly, g: &MPoly) -> MPoly {
    let table = f.table().clone();
    let (flm, flc) = f.leading_term().unwrap();
    let (glm, glc) = g.leading_term().unwrap();
    let lcm = flm.lcm(glm);
    let ef = Expo(lcm.0.iter().zip(&flm.0).map(|(a, b)| a - b).collect());
    let eg = Expo(lcm.0.iter().zip(&glm.0).map(|(a, b)| a - b).collect());
    let tf = MPoly::monomial(&table, ef, glc.clone());
    let tg = MPoly::monomial(&table, eg, flc.clone());
    tf.mul(f).sub(&tg.mul(g))
}

fn coprime_leading_terms(f: &MPoly, g: &MPoly) -> bool {
    let (flm, _) = f.leading_term().unwrap();
    let (glm, _) = g.leading_term().unwrap();
    flm.0.iter().zip(&glm.0).all(|(a, b)| *a == 0 || *b == 0)
}

/// The unique reduced Gröbner basis of the input ideal: monic generators,
/// minimal leading terms, fully inter-reduced, sorted by leading monomial.
pub fn reduced_groebner(gens: &[MPoly]) -> Vec<MPoly> {
    let mut basis: Vec<MPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(make_monic)
        .collect();
    if basis.is_empty() {
        return basis;
    }

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            pairs.push((i, j));
        }
    }
    while let Some((i, j)) = pairs.pop() {
        if coprime_leading_terms(&basis[i], &basis[j]) {
            continue;
        }
        let s = s_polynomial(&basis[i], &basis[j]);
        let r = normal_form(&s, &basis);
        if !r.is_zero() {
            let k = basis.len();
            basis.push(make_monic(&r));
            for i in 0..k {
                pairs.push((i, k));
            }
        }
    }

    // minimalize: drop generators whose leading term another divides
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        for j in 0..basis.len() {
            if i != j && keep[i] && keep[j] {
                let (lmi, _) = basis[i].leading_term().unwrap();
                let (lmj, _) = basis[j].leading_term().unwrap();
                if lmj.divides(lmi) && (lmi != lmj || j < i) {
                    keep[i] = false;
                }
            }
        }
    }
    let minimal: Vec<MPoly> = basis
        .into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(p, _)| p)
        .collect();

    // inter-reduce tails
    let mut reduced: Vec<MPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<MPoly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, p)| p.clone())
            .collect();
        let r = normal_form(&minimal[i], &others);
        if !r.is_zero() {
            reduced.push(make_monic(&r));
        }
    }
    reduced.sort_by(|a, b| a.leading_term().unwrap().0.cmp(b.leading_term().unwrap().0));
    reduced
}

/// The standard monomials of a zero-dimensional ideal: those divisible by no
/// leading term of the reduced basis, in ascending order. Errors when some
/// variable has no pure power among the leading terms (positive-dimensional).
pub fn standard_monomials(gb: &[MPoly], table: &Arc<VarTable>) -> Result<Vec<Expo>> {
    let n = table.len();
    if gb.iter().any(|p| p.total_degree() == Some(0)) {
        return Ok(Vec::new()); // unit ideal
    }
    let leads: Vec<&Expo> = gb
        .iter()
        .map(|p| p.leading_term().expect("nonzero").0)
        .collect();
    let mut bounds = vec![0u32; n];
    for (i, bound) in bounds.iter_mut().enumerate() {
        let pure = leads
            .iter()
            .filter(|e| e.0.iter().enumerate().all(|(j, &k)| j == i || k == 0))
            .map(|e| e.0[i])
            .min();
        match pure {
            Some(k) => *bound = k,
            None => return Err(Error::PositiveDimensional(table.name(i).to_string())),
        }
    }
    let mut out = Vec::new();
    let mut cur = Expo::zero(n);
    fn rec(var: usize, bounds: &[u32], leads: &[&Expo], cur: &mut Expo, out: &mut Vec<Expo>) {
        if var == bounds.len() {
            if !leads.iter().any(|l| l.divides(cur)) {
                out.push(cur.clone());
            }
            return;
        }
        for k in 0..bounds[var] {
            cur.0[var] = k;
            rec(var + 1, bounds, leads, cur, out);
        }
        cur.0[var] = 0;
    }
    rec(0, &bounds, &leads, &mut cur, &mut out);
    out.sort();
    Ok(out)
}

/// Matrix of multiplication by `x_var` on the quotient, in the standard
/// monomial basis: column `j` holds the normal form of `x_var * m_j`.
pub fn multiplication_matrix(
    gb: &[MPoly],
    table: &Arc<VarTable>,
    std_monomials: &[Expo],
    var: usize,
) -> Result<Matrix<Ratio>> {
    let n = std_monomials.len();
    let index_of = |e: &Expo| std_monomials.iter().position(|m| m == e);
    let mut m = Matrix::zero(n, n, &Ratio::one());
    for (j, mono) in std_monomials.iter().enumerate() {
        let mut e = mono.clone();
        e.0[var] += 1;
        let nf = normal_form(&MPoly::monomial(table, e, Ratio::one()), gb);
        for (t, c) in nf.terms() {
            let i = index_of(t).ok_or_else(|| {
                Error::Invalid("normal form outside the standard monomial span".into())
            })?;
            *m.at_mut(i, j) = c.clone();
        }
    }
    Ok(m)
}

/// Normal form of a single variable, as standard-monomial coordinates.
pub fn variable_coordinates(
    gb: &[MPoly],
    table: &Arc<VarTable>,
    std_monomials: &[Expo],
    var: usize,
) -> Result<Vec<Ratio>> {
    let nf = normal_form(&MPoly::var(table, var), gb);
    let mut coords = vec![Ratio::zero(); std_monomials.len()];
    for (t, c) in nf.terms() {
        let i = std_monomials
            .iter()
            .position(|m| m == t)
            .ok_or_else(|| Error::Invalid("normal form outside the standard span".into()))?;
        coords[i] = c.clone();
    }
    Ok(coords)
}
