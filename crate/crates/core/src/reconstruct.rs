//! Tear-drop potential reconstruction: determine `A^a` and `B^a_1` for
//! `P^1_a` by solving the coefficient equations that WDVV imposes, under the
//! grading and normalization constraints.
//!
//! The ansatz fixes everything the three-point theory pins down (the cubic
//! part of `A` and the `t1` coefficient of `B_1`) and introduces one unknown
//! per remaining monomial of admissible weighted degree. WDVV residuals of
//! the symbolic potential are polynomials in those unknowns; equations are
//! read off coefficient-wise and solved by repeated rounds of exact linear
//! elimination, substituting solved values until the system closes. The
//! reduced row echelon form is canonical, so the outcome does not depend on
//! equation order.

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use crate::curve::{BasisIndex, OrbiCurve};
use crate::error::{Error, Result};
use crate::matrix::rref;
use crate::mpoly::{Expo, MPoly, WeightedDegree};
use crate::potential::{DerivTriple, Potential};
use crate::qseries::QSeries;
use crate::ratio::Ratio;
use crate::vars::VarTable;

/// Largest tear-drop order the solver accepts. Orders up to 4 run in
/// seconds; 5 takes minutes and sits behind an opt-in flag at the CLI.
pub const MAX_TEARDROP_ORDER: u32 = 5;

/// Variable table `t1 .. t{a-1}` with weights `(a-i)/a`.
pub fn teardrop_table(a: u32) -> Arc<VarTable> {
    let names = (1..a).map(|i| format!("t{i}")).collect();
    let weights = (1..a)
        .map(|i| Ratio::new((a - i) as i64, a as i64))
        .collect();
    VarTable::new(names, weights).expect("teardrop table")
}

/// The cubic part of `A^a`: one term per multiset `{i,j,k}` with
/// `i + j + k = a`, carrying the three-point value `1/a` divided by the
/// symmetry factorial of repeated indices.
pub(crate) fn cr_cubic(a: u32, table: &Arc<VarTable>, t_offset: usize) -> MPoly {
    let mut p = MPoly::zero(table);
    for i in 1..a {
        for j in i..a {
            let rest = a as i64 - i as i64 - j as i64;
            if rest < j as i64 || rest >= a as i64 || rest < 1 {
                continue;
            }
            let k = rest as u32;
            let sym = if i == j && j == k {
                6
            } else if i == j || j == k {
                2
            } else {
                1
            };
            let mut e = Expo::zero(table.len());
            e.0[t_offset + (i - 1) as usize] += 1;
            e.0[t_offset + (j - 1) as usize] += 1;
            e.0[t_offset + (k - 1) as usize] += 1;
            p = p.add(&MPoly::monomial(table, e, Ratio::new(1, a as i64 * sym)));
        }
    }
    p
}

/// All exponent vectors `(j_1..j_{a-1})` with `sum (a-i) j_i = target`.
fn weighted_monomials(a: u32, target: u32) -> Vec<Vec<u32>> {
    let nvars = (a - 1) as usize;
    let mut out = Vec::new();
    let mut cur = vec![0u32; nvars];
    fn rec(a: u32, var: usize, remaining: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if var == cur.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = a - (var as u32 + 1);
        let max = remaining / w;
        for j in 0..=max {
            cur[var] = j;
            rec(a, var + 1, remaining - j * w, cur, out);
        }
        cur[var] = 0;
    }
    rec(a, 0, target, &mut cur, &mut out);
    out
}

/// Which polynomial an unknown slot belongs to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SlotHost {
    A,
    B1,
}

/// One unknown coefficient slot: a monomial (over the `t` variables of the
/// tear-drop table) in either `A` or `B_1`.
#[derive(Clone, Debug)]
pub struct Slot {
    pub host: SlotHost,
    pub t_expo: Vec<u32>,
}

/// The symbolic reconstruction system for one tear drop.
pub struct AnsatzSystem {
    a: u32,
    /// `[t00, t01, t1..t{a-1}, u0..u{K-1}]`
    ext_table: Arc<VarTable>,
    slots: Vec<Slot>,
    a_sym: MPoly,
    b_sym: MPoly,
}

impl AnsatzSystem {
    pub fn order(&self) -> u32 {
        self.a
    }

    pub fn slots(&self) -> &[Slot] {
        &self.slots
    }

    pub fn num_unknowns(&self) -> usize {
        self.slots.len()
    }
}

/// Enumerate unknown slots and fixed parts for `P^1_a`.
///
/// `A` slots: monomials of weighted degree exactly 2 and total degree at
/// least 4 (the degree-3 ones are the fixed cubic). `B_1` slots: monomials of
/// weighted degree `(a-1)/a` other than `t1` itself, whose coefficient is
/// normalized to 1.
pub fn build_ansatz(a: u32) -> Result<AnsatzSystem> {
    build_ansatz_with_b1_leading(a, Ratio::one())
}

/// Test hook: same ansatz with an arbitrary fixed `t1` coefficient in `B_1`.
pub(crate) fn build_ansatz_with_b1_leading(a: u32, b1_leading: Ratio) -> Result<AnsatzSystem> {
    if a < 2 {
        return Err(Error::OrderOutOfRange(a, MAX_TEARDROP_ORDER));
    }
    let t_offset = 2usize;
    let nt = (a - 1) as usize;

    let a_slots: Vec<Vec<u32>> = weighted_monomials(a, 2 * a)
        .into_iter()
        .filter(|e| e.iter().sum::<u32>() >= 4)
        .collect();
    let t1_expo = {
        let mut e = vec![0u32; nt];
        e[0] = 1;
        e
    };
    let b_slots: Vec<Vec<u32>> = weighted_monomials(a, a - 1)
        .into_iter()
        .filter(|e| *e != t1_expo)
        .collect();

    let mut slots = Vec::new();
    for e in a_slots {
        slots.push(Slot {
            host: SlotHost::A,
            t_expo: e,
        });
    }
    for e in b_slots {
        slots.push(Slot {
            host: SlotHost::B1,
            t_expo: e,
        });
    }

    let mut names = vec!["t00".to_string(), "t01".to_string()];
    let mut weights = vec![Ratio::one(), Ratio::zero()];
    for i in 1..a {
        names.push(format!("t{i}"));
        weights.push(Ratio::new((a - i) as i64, a as i64));
    }
    for k in 0..slots.len() {
        names.push(format!("u{k}"));
        weights.push(Ratio::zero());
    }
    let ext_table = VarTable::new(names, weights)?;

    let mut a_sym = cr_cubic(a, &ext_table, t_offset);
    let mut b_sym = {
        let mut e = Expo::zero(ext_table.len());
        e.0[t_offset] = 1;
        MPoly::monomial(&ext_table, e, b1_leading)
    };
    for (k, slot) in slots.iter().enumerate() {
        let mut e = Expo::zero(ext_table.len());
        for (i, j) in slot.t_expo.iter().enumerate() {
            e.0[t_offset + i] = *j;
        }
        e.0[t_offset + nt + k] = 1;
        let term = MPoly::monomial(&ext_table, e, Ratio::one());
        match slot.host {
            SlotHost::A => a_sym = a_sym.add(&term),
            SlotHost::B1 => b_sym = b_sym.add(&term),
        }
    }

    Ok(AnsatzSystem {
        a,
        ext_table,
        slots,
        a_sym,
        b_sym,
    })
}

/// A polynomial equation in the unknowns: map from `u`-exponent vector
/// (length = number of unknowns) to rational coefficient.
type UEq = BTreeMap<Vec<u32>, Ratio>;

fn ueq_insert(eq: &mut UEq, key: Vec<u32>, c: Ratio) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match eq.entry(key) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            *o.get_mut() += &c;
            if o.get().is_zero() {
                o.remove();
            }
        }
    }
}

/// Extract coefficient-wise equations from all WDVV residuals of the
/// symbolic potential, deduplicated and in a canonical order.
fn collect_equations(sys: &AnsatzSystem) -> Result<Vec<UEq>> {
    let curve = OrbiCurve::teardrop(sys.a)?;
    let nt = (sys.a - 1) as usize;
    let n_u = sys.slots.len();
    let t_end = 2 + nt;

    let f = Potential::with_parts_on(
        &curve,
        &sys.ext_table,
        sys.a_sym.clone(),
        vec![sys.b_sym.clone()],
    )?;

    // cache third derivatives by sorted basis positions
    let basis = curve.basis();
    let mut cache: BTreeMap<[usize; 3], QSeries> = BTreeMap::new();
    let mut deriv = |s1: &BasisIndex, s2: &BasisIndex, s3: &BasisIndex| -> QSeries {
        let mut key = [
            curve.basis_position(s1).unwrap(),
            curve.basis_position(s2).unwrap(),
            curve.basis_position(s3).unwrap(),
        ];
        key.sort_unstable();
        cache
            .entry(key)
            .or_insert_with(|| f.third_derivative(&DerivTriple(*s1, *s2, *s3)))
            .clone()
    };

    let mut pairs = Vec::new();
    for (i, s) in basis.iter().enumerate() {
        for t in &basis[i..] {
            pairs.push((*s, *t));
        }
    }

    // equation fingerprint: (t-monomial, u-monomial, normalized coefficient) list
    type Fingerprint = Vec<(Vec<u32>, Vec<u32>, Ratio)>;
    let mut seen: BTreeSet<Fingerprint> = BTreeSet::new();
    let mut keyed: BTreeMap<(u32, Vec<u32>), Vec<UEq>> = BTreeMap::new();

    for (i, (s1, s2)) in pairs.iter().enumerate() {
        for (s3, s4) in &pairs[i..] {
            // residual of type (s1, s2; s3, s4)
            let mut residual = QSeries::zero(&sys.ext_table, 1);
            for s in &basis {
                let (partner, coeff) = crate::curve::dual_index(&curve, s);
                let left1 = deriv(s1, s2, s);
                if !left1.is_zero() {
                    let right1 = deriv(&partner, s3, s4);
                    if !right1.is_zero() {
                        residual = residual.add(&left1.mul(&right1).scale(&coeff));
                    }
                }
                let left2 = deriv(s1, s3, s);
                if !left2.is_zero() {
                    let right2 = deriv(&partner, s2, s4);
                    if !right2.is_zero() {
                        residual = residual.sub(&left2.mul(&right2).scale(&coeff));
                    }
                }
            }
            for power in 0..=1usize {
                let poly = residual.coeff(power);
                if poly.is_zero() {
                    continue;
                }
                // group terms by their t-monomial part
                let mut groups: BTreeMap<Vec<u32>, UEq> = BTreeMap::new();
                for (e, c) in poly.terms() {
                    let t_part: Vec<u32> = e.0[..t_end].to_vec();
                    let u_part: Vec<u32> = e.0[t_end..t_end + n_u].to_vec();
                    ueq_insert(groups.entry(t_part).or_default(), u_part, c.clone());
                }
                for (t_part, eq) in groups {
                    if eq.is_empty() {
                        continue;
                    }
                    // normalize by the coefficient of the largest u-monomial for dedup
                    let lead = eq.iter().next_back().unwrap().1.clone();
                    let inv = lead.recip();
                    let normalized: Vec<(Vec<u32>, Vec<u32>, Ratio)> = eq
                        .iter()
                        .map(|(k, v)| (t_part.clone(), k.clone(), v * &inv))
                        .collect();
                    if seen.insert(normalized) {
                        let deg = t_part.iter().sum::<u32>();
                        keyed.entry((deg, t_part)).or_default().push(eq);
                    }
                }
            }
        }
    }

    // equations sorted by ascending t-degree, then t-monomial
    Ok(keyed.into_values().flatten().collect())
}

fn substitute_eq(eq: &UEq, solved: &[Option<Ratio>]) -> UEq {
    let mut out = UEq::new();
    for (key, c) in eq {
        let mut coeff = c.clone();
        let mut k2 = key.clone();
        for (i, e) in key.iter().enumerate() {
            if *e > 0 {
                if let Some(v) = &solved[i] {
                    coeff *= &v.pow(*e as i32);
                    k2[i] = 0;
                }
            }
        }
        ueq_insert(&mut out, k2, coeff);
    }
    out
}

fn u_degree(key: &[u32]) -> u32 {
    key.iter().sum()
}

/// Outcome of the elimination rounds.
enum SolveOutcome {
    Solved(Vec<Ratio>),
    Underdetermined { kernel_dim: usize },
    Inconsistent,
    Nonlinear,
}

/// Solve the equation set by rounds of canonical linear elimination.
fn solve_equations(eqs: &[UEq], n_u: usize) -> SolveOutcome {
    let mut solved: Vec<Option<Ratio>> = vec![None; n_u];
    loop {
        let mut linear: Vec<UEq> = Vec::new();
        let mut any_nonlinear = false;
        for eq in eqs {
            let sub = substitute_eq(eq, &solved);
            if sub.is_empty() {
                continue;
            }
            let max_deg = sub.keys().map(|k| u_degree(k)).max().unwrap();
            match max_deg {
                0 => return SolveOutcome::Inconsistent,
                1 => linear.push(sub),
                _ => any_nonlinear = true,
            }
        }
        let unsolved: Vec<usize> = (0..n_u).filter(|&i| solved[i].is_none()).collect();
        if unsolved.is_empty() {
            // everything pinned; nonlinear leftovers were checked by substitution
            return SolveOutcome::Solved(solved.into_iter().map(Option::unwrap).collect());
        }
        if linear.is_empty() {
            return if any_nonlinear {
                SolveOutcome::Nonlinear
            } else {
                SolveOutcome::Underdetermined {
                    kernel_dim: unsolved.len(),
                }
            };
        }
        let col_of: BTreeMap<usize, usize> =
            unsolved.iter().enumerate().map(|(c, &i)| (i, c)).collect();
        let ncols = unsolved.len();
        let mut rows: Vec<Vec<Ratio>> = Vec::with_capacity(linear.len());
        for eq in &linear {
            let mut row = vec![Ratio::zero(); ncols + 1];
            for (key, c) in eq {
                match key.iter().position(|&e| e > 0) {
                    None => row[ncols] -= c,
                    Some(i) => {
                        debug_assert_eq!(key[i], 1);
                        row[col_of[&i]] = c.clone();
                    }
                }
            }
            rows.push(row);
        }
        let pivots = rref(&mut rows);
        if pivots.contains(&ncols) {
            return SolveOutcome::Inconsistent;
        }
        let mut progressed = false;
        for (r, &p) in pivots.iter().enumerate() {
            let pinned = (0..ncols).all(|c| c == p || rows[r][c].is_zero());
            if pinned {
                solved[unsolved[p]] = Some(rows[r][ncols].clone());
                progressed = true;
            }
        }
        if !progressed {
            let free = ncols - pivots.len();
            return SolveOutcome::Underdetermined { kernel_dim: free };
        }
    }
}

/// Reconstructed tear-drop data: `A^a` and `B^a_1` over `t1..t{a-1}`.
#[derive(Clone, PartialEq, Debug)]
pub struct TearDropData {
    a: u32,
    a_poly: MPoly,
    b1: MPoly,
}

impl TearDropData {
    /// Validate and wrap the two polynomials. Checks the table, weighted
    /// homogeneity (`deg A = 2`, `deg B1 = (a-1)/a`), the `t1` normalization
    /// of `B1`, and that `A`'s cubic part equals the three-point values.
    pub fn new(a: u32, a_poly: MPoly, b1: MPoly) -> Result<Self> {
        let table = teardrop_table(a);
        if a_poly.table() != &table || b1.table() != &table {
            return Err(Error::TableMismatch);
        }
        match a_poly.weighted_degree() {
            WeightedDegree::Zero => {}
            WeightedDegree::Homogeneous(d) if d == Ratio::from_int(2) => {}
            other => {
                return Err(Error::StructureCheck(format!(
                    "A must be weighted-homogeneous of degree 2, got {other:?}"
                )))
            }
        }
        match b1.weighted_degree() {
            WeightedDegree::Homogeneous(d) if d == Ratio::new((a - 1) as i64, a as i64) => {}
            other => {
                return Err(Error::StructureCheck(format!(
                    "B1 must be weighted-homogeneous of degree (a-1)/a, got {other:?}"
                )))
            }
        }
        let mut t1 = Expo::zero(table.len());
        t1.0[0] = 1;
        if b1.coeff(&t1) != Ratio::one() {
            return Err(Error::StructureCheck(
                "B1 must have t1 coefficient 1".into(),
            ));
        }
        let cubic: MPoly = {
            let mut p = MPoly::zero(&table);
            for (e, c) in a_poly.terms() {
                if e.total_degree() == 3 {
                    p = p.add(&MPoly::monomial(&table, e.clone(), c.clone()));
                }
            }
            p
        };
        if cubic != cr_cubic(a, &table, 0) {
            return Err(Error::StructureCheck(
                "cubic part of A does not match the three-point values".into(),
            ));
        }
        Ok(TearDropData { a, a_poly, b1 })
    }

    /// Wrap without validation. Intended for feeding deliberately corrupted
    /// data to the structure and assembly detectors in tests.
    pub fn from_parts_unchecked(a: u32, a_poly: MPoly, b1: MPoly) -> Self {
        TearDropData { a, a_poly, b1 }
    }

    pub fn order(&self) -> u32 {
        self.a
    }

    pub fn a_part(&self) -> &MPoly {
        &self.a_poly
    }

    pub fn b1_part(&self) -> &MPoly {
        &self.b1
    }

    pub fn table(&self) -> Arc<VarTable> {
        teardrop_table(self.a)
    }

    /// Potential of `P^1_a` at truncation 1 induced by this data.
    pub fn potential(&self) -> Result<Potential> {
        crate::potential::assemble_multipoint(std::slice::from_ref(self))
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "a": self.a,
            "A": self.a_poly.to_pairs(),
            "B1": self.b1.to_pairs(),
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<TearDropData> {
        #[derive(serde::Deserialize)]
        struct Json {
            a: u32,
            #[serde(rename = "A")]
            a_poly: Vec<(Vec<u32>, String)>,
            #[serde(rename = "B1")]
            b1: Vec<(Vec<u32>, String)>,
        }
        let j: Json = serde_json::from_value(v.clone())?;
        let table = teardrop_table(j.a);
        TearDropData::new(
            j.a,
            MPoly::from_pairs(&table, &j.a_poly)?,
            MPoly::from_pairs(&table, &j.b1)?,
        )
    }
}

/// Solve the WDVV coefficient system for `P^1_a` and return the unique
/// tear-drop data. Fails loudly if the system is underdetermined,
/// inconsistent, or stays nonlinear after substitution.
pub fn solve_teardrop(a: u32) -> Result<TearDropData> {
    if !(2..=MAX_TEARDROP_ORDER).contains(&a) {
        return Err(Error::OrderOutOfRange(a, MAX_TEARDROP_ORDER));
    }
    let sys = build_ansatz(a)?;
    let eqs = collect_equations(&sys)?;
    let values = match solve_equations(&eqs, sys.num_unknowns()) {
        SolveOutcome::Solved(v) => v,
        SolveOutcome::Underdetermined { kernel_dim } => {
            return Err(Error::Underdetermined { kernel_dim })
        }
        SolveOutcome::Inconsistent => return Err(Error::InconsistentSystem),
        SolveOutcome::Nonlinear => return Err(Error::NonlinearSystem),
    };
    let td = data_from_solution(&sys, &values)?;
    // the induced potential must satisfy every WDVV residual identically
    if !td.potential()?.wdvv_holds() {
        return Err(Error::StructureCheck(
            "solved data does not satisfy WDVV; solver invariant broken".into(),
        ));
    }
    Ok(td)
}

fn data_from_solution(sys: &AnsatzSystem, values: &[Ratio]) -> Result<TearDropData> {
    let nt = (sys.a - 1) as usize;
    let t_end = 2 + nt;
    let assignments: BTreeMap<usize, Ratio> = values
        .iter()
        .enumerate()
        .map(|(k, v)| (t_end + k, v.clone()))
        .collect();
    let table = teardrop_table(sys.a);
    // t00, t01 and the u's map to nothing; they carry no exponent after
    // substitution
    let mut map: Vec<Option<usize>> = vec![None; sys.ext_table.len()];
    for (i, m) in map.iter_mut().enumerate().take(t_end).skip(2) {
        *m = Some(i - 2);
    }
    let a_poly = sys
        .a_sym
        .substitute(&assignments)
        .map_variables(&table, &map)?;
    let b1 = sys
        .b_sym
        .substitute(&assignments)
        .map_variables(&table, &map)?;
    TearDropData::new(sys.a, a_poly, b1)
}

// ---- Structural verification of tear-drop data ----

#[derive(Clone, Debug)]
pub struct StructureCheck {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug)]
pub struct StructureReport {
    pub checks: Vec<StructureCheck>,
    pub pass: bool,
}

/// Verify the structural identities of the tear-drop data with exact
/// arithmetic:
///   - `B1 = t1 + O(t^{>1})` with leading coefficient 1,
///   - `(B1)_{i,a-i} = 0` for every `i`,
///   - `sum_i A_{i,a-i,a-k}` is `-(a-1)/a^2 t1 + O(t^{>1})` for `k = 1` and
///     lies in `(t2..t^{a-1})` for `k >= 2`,
///   - `A_{1,j,a-l}` is `1/a + O(t^{>1})` for `l = j+1`, `-t1/a^2 + O(t^{>1})`
///     at `(j,l) = (a-1,1)`, and lies in `(t2..t^{a-1})` otherwise,
///   - `sum_k A_{i,a-i,a-k} (B1)_k = -B1/a^2` identically for every `i`.
pub fn verify_structure(td: &TearDropData) -> StructureReport {
    let a = td.order();
    let table = td.table();
    let nt = (a - 1) as usize;
    let higher: Vec<usize> = (1..nt).collect(); // indices of t2..t{a-1}
    let mut checks = Vec::new();

    let dv = |p: &MPoly, i: u32| -> MPoly { p.partial_derivative_idx((i - 1) as usize) };

    // B1 = t1 + terms in (t2..)
    {
        let mut e = Expo::zero(table.len());
        e.0[0] = 1;
        let lead_ok = td.b1_part().coeff(&e) == Ratio::one();
        let t1 = MPoly::monomial(&table, e, Ratio::one());
        let tail = td.b1_part().sub(&t1);
        let tail_ok = tail.in_var_ideal(&higher);
        checks.push(StructureCheck {
            name: "b1_leading_term".into(),
            pass: lead_ok && tail_ok,
            details: format!("B1 = {}", td.b1_part()),
        });
    }

    // (B1)_{i,a-i} = 0
    {
        let mut bad = Vec::new();
        for i in 1..a {
            let d2 = dv(&dv(td.b1_part(), i), a - i);
            if !d2.is_zero() {
                bad.push(format!("(B1)_{{{i},{}}} = {d2}", a - i));
            }
        }
        checks.push(StructureCheck {
            name: "b1_mixed_vanishing".into(),
            pass: bad.is_empty(),
            details: if bad.is_empty() {
                "all second derivatives (B1)_{i,a-i} vanish".into()
            } else {
                bad.join("; ")
            },
        });
    }

    // sum_i A_{i,a-i,a-k}: leading value -(a-1)/a^2 t1 at k = 1, higher twists otherwise
    {
        let mut bad = Vec::new();
        for k in 1..a {
            let mut sum = MPoly::zero(&table);
            for i in 1..a {
                sum = sum.add(&dv(&dv(&dv(td.a_part(), i), a - i), a - k));
            }
            let reduced = sum.reduce_mod_vars(&higher);
            let expected = if k == 1 {
                let mut e = Expo::zero(table.len());
                e.0[0] = 1;
                MPoly::monomial(&table, e, -Ratio::new((a - 1) as i64, (a * a) as i64))
            } else {
                MPoly::zero(&table)
            };
            if reduced != expected {
                bad.push(format!("k={k}: got {reduced}, expected {expected}"));
            }
        }
        checks.push(StructureCheck {
            name: "a_pair_sum_leading".into(),
            pass: bad.is_empty(),
            details: if bad.is_empty() {
                format!(
                    "leading coefficient -(a-1)/a^2 = {}",
                    -Ratio::new((a - 1) as i64, (a * a) as i64)
                )
            } else {
                bad.join("; ")
            },
        });
    }

    // A_{1,j,a-l}: 1/a at l = j+1, -t1/a^2 at (j,l) = (a-1,1), higher twists otherwise
    {
        let mut bad = Vec::new();
        for j in 1..a {
            for l in 1..a {
                let d3 = dv(&dv(&dv(td.a_part(), 1), j), a - l);
                let reduced = d3.reduce_mod_vars(&higher);
                let expected = if l == j + 1 {
                    MPoly::constant(&table, Ratio::new(1, a as i64))
                } else if j == a - 1 && l == 1 {
                    let mut e = Expo::zero(table.len());
                    e.0[0] = 1;
                    MPoly::monomial(&table, e, -Ratio::new(1, (a * a) as i64))
                } else {
                    MPoly::zero(&table)
                };
                if reduced != expected {
                    bad.push(format!(
                        "(j,l)=({j},{l}): got {reduced}, expected {expected}"
                    ));
                }
            }
        }
        checks.push(StructureCheck {
            name: "a_unit_slice_leading".into(),
            pass: bad.is_empty(),
            details: if bad.is_empty() {
                "all A_{1,j,a-l} leading values match".into()
            } else {
                bad.join("; ")
            },
        });
    }

    // contraction identity: sum_k A_{i,a-i,a-k} (B1)_k = -B1/a^2 for every i
    {
        let mut bad = Vec::new();
        let rhs = td.b1_part().scale(&Ratio::new(-1, (a * a) as i64));
        for i in 1..a {
            let mut lhs = MPoly::zero(&table);
            for k in 1..a {
                let a3 = dv(&dv(&dv(td.a_part(), i), a - i), a - k);
                let b1k = dv(td.b1_part(), k);
                lhs = lhs.add(&a3.mul(&b1k));
            }
            if lhs != rhs {
                bad.push(format!("i={i}: lhs = {lhs}, rhs = {rhs}"));
            }
        }
        checks.push(StructureCheck {
            name: "a_b1_contraction".into(),
            pass: bad.is_empty(),
            details: if bad.is_empty() {
                "holds as an exact polynomial identity for every i".into()
            } else {
                bad.join("; ")
            },
        });
    }

    let pass = checks.iter().all(|c| c.pass);
    StructureReport { checks, pass }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ansatz_a2() {
        let sys = build_ansatz(2).unwrap();
        assert_eq!(sys.num_unknowns(), 1);
        assert_eq!(sys.slots()[0].host, SlotHost::A);
        assert_eq!(sys.slots()[0].t_expo, vec![4]);
    }

    #[test]
    fn ansatz_a3() {
        let sys = build_ansatz(3).unwrap();
        let a_slots: Vec<_> = sys
            .slots()
            .iter()
            .filter(|s| s.host == SlotHost::A)
            .map(|s| s.t_expo.clone())
            .collect();
        let b_slots: Vec<_> = sys
            .slots()
            .iter()
            .filter(|s| s.host == SlotHost::B1)
            .map(|s| s.t_expo.clone())
            .collect();
        // A: 2 j1 + j2 = 6 with total degree >= 4
        assert_eq!(a_slots, vec![vec![0, 6], vec![1, 4], vec![2, 2]]);
        // B1: 2 j1 + j2 = 2 minus the fixed t1
        assert_eq!(b_slots, vec![vec![0, 2]]);
    }

    #[test]
    fn no_cubic_slot_at_a2() {
        // no monomial of total degree 3 has weighted degree 2 at a = 2
        let cubics = weighted_monomials(2, 4)
            .into_iter()
            .filter(|e| e.iter().sum::<u32>() == 3)
            .count();
        assert_eq!(cubics, 0);
    }

    #[test]
    fn solve_a2_exact() {
        let td = solve_teardrop(2).unwrap();
        let table = td.table();
        let t1 = MPoly::var(&table, 0);
        assert_eq!(td.a_part(), &t1.pow(4).scale(&Ratio::new(-1, 96)));
        assert_eq!(td.b1_part(), &t1);
    }

    #[test]
    fn structure_a2() {
        let td = solve_teardrop(2).unwrap();
        let rep = verify_structure(&td);
        assert!(rep.pass, "{:?}", rep.checks);
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(solve_teardrop(1).is_err());
        assert!(solve_teardrop(MAX_TEARDROP_ORDER + 1).is_err());
    }

    #[test]
    fn corrupted_quartic_detected() {
        // A = -(t1)^4/95 breaks the AB identity
        let table = teardrop_table(2);
        let t1 = MPoly::var(&table, 0);
        let td = TearDropData::new(2, t1.pow(4).scale(&Ratio::new(-1, 95)), t1.clone()).unwrap();
        let rep = verify_structure(&td);
        assert!(!rep.pass);
        assert!(rep
            .checks
            .iter()
            .any(|c| c.name == "a_b1_contraction" && !c.pass));
    }

    #[test]
    fn corrupted_leading_rejected_by_validation() {
        let table = teardrop_table(2);
        let t1 = MPoly::var(&table, 0);
        let bad = TearDropData::new(
            2,
            t1.pow(4).scale(&Ratio::new(-1, 96)),
            t1.scale(&Ratio::from_int(2)),
        );
        assert!(bad.is_err());
    }

    #[test]
    fn solver_is_order_independent() {
        // the canonical elimination gives the same answer on any equation order
        let sys = build_ansatz(3).unwrap();
        let mut eqs = collect_equations(&sys).unwrap();
        let forward = match solve_equations(&eqs, sys.num_unknowns()) {
            SolveOutcome::Solved(v) => v,
            _ => panic!("a=3 should solve"),
        };
        eqs.reverse();
        let backward = match solve_equations(&eqs, sys.num_unknowns()) {
            SolveOutcome::Solved(v) => v,
            _ => panic!("a=3 should solve in reverse order"),
        };
        assert_eq!(forward, backward);
    }

    #[test]
    fn teardrop_json_roundtrip() {
        let td = solve_teardrop(2).unwrap();
        let j = td.to_json();
        assert_eq!(TearDropData::from_json(&j).unwrap(), td);
    }
}
