//! Connected Hurwitz numbers `H^0_{0,d}(mu^1, ..., mu^r)`: genus-zero,
//! degree-`d` connected covers of the sphere branched exactly at the `r`
//! marked points with the prescribed ramification profiles, weighted by
//! `1/d!` (tuple count over `|S_d|`).
//!
//! Two independent computation paths: direct enumeration of permutation
//! tuples, and the Frobenius character formula with symmetric-group
//! characters from the Murnaghan–Nakayama rule, made connected by
//! inclusion–exclusion over the orbit of a marked sheet.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::curve::OrbiCurve;
use crate::error::{Error, Result};
use crate::mpoly::{Expo, MPoly};
use crate::potential::{assemble_multipoint, standard_table};
use crate::ratio::Ratio;
use crate::reconstruct::TearDropData;

/// Enumeration is exponential in `d`; the character path is cheap.
pub const MAX_ENUMERATION_DEGREE: u32 = 6;
pub const MAX_CHARACTER_DEGREE: u32 = 8;

/// A partition of `d`: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Partition {
    parts: Vec<u32>,
}

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.iter().any(|&p| p == 0) {
            return Err(Error::Invalid("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Partition { parts })
    }

    /// `(1^d)`.
    pub fn ones(d: u32) -> Self {
        Partition {
            parts: vec![1; d as usize],
        }
    }

    pub fn single(d: u32) -> Result<Self> {
        Partition::new(vec![d])
    }

    pub fn parts(&self) -> &[u32] {
        &self.parts
    }

    pub fn sum(&self) -> u32 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Parse a comma-separated part list, e.g. `2,1`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<u32>()
                    .map_err(|_| Error::Parse(format!("invalid partition `{s}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }

    /// `z_mu = prod w^{m_w} m_w!`; the centralizer order of the class.
    fn centralizer_order(&self) -> BigInt {
        let mut mult: BTreeMap<u32, u32> = BTreeMap::new();
        for &p in &self.parts {
            *mult.entry(p).or_insert(0) += 1;
        }
        let mut z = BigInt::from(1);
        for (w, m) in mult {
            for _ in 0..m {
                z *= w;
            }
            z *= factorial(m);
        }
        z
    }
}

impl std::fmt::Display for Partition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = self
            .parts
            .iter()
            .map(|p| p.to_string())
            .collect::<Vec<_>>()
            .join(",");
        write!(f, "({s})")
    }
}

/// A Hurwitz query: degree plus one ramification profile per marked point.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct HurwitzQuery {
    pub d: u32,
    pub profiles: Vec<Partition>,
}

impl HurwitzQuery {
    pub fn new(d: u32, profiles: Vec<Partition>) -> Result<Self> {
        if d == 0 {
            return Err(Error::Invalid("degree must be positive".into()));
        }
        for p in &profiles {
            if p.sum() != d {
                return Err(Error::Invalid(format!(
                    "profile {p} is not a partition of {d}"
                )));
            }
        }
        Ok(HurwitzQuery { d, profiles })
    }
}

fn factorial(n: u32) -> BigInt {
    let mut f = BigInt::from(1);
    for k in 2..=n {
        f *= k;
    }
    f
}

fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::from(0);
    }
    let mut b = BigInt::from(1);
    for i in 0..k {
        b = b * (n - i) / (i + 1);
    }
    b
}

/// Genus-zero Riemann–Hurwitz feasibility with branching exactly at the
/// marked points: `sum (d - len(mu)) = 2d - 2`.
pub fn rh_feasible(q: &HurwitzQuery) -> bool {
    let total: i64 = q.profiles.iter().map(|p| q.d as i64 - p.len() as i64).sum();
    total == 2 * q.d as i64 - 2
}

// ---- Path 1: direct enumeration ----

fn cycle_type(perm: &[usize]) -> Vec<u32> {
    let mut seen = vec![false; perm.len()];
    let mut type_ = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u32;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        type_.push(len);
    }
    type_.sort_unstable_by(|a, b| b.cmp(a));
    type_
}

fn all_permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..d).collect();
    fn heap(k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(cur.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, cur, out);
            if k % 2 == 0 {
                cur.swap(i, k - 1);
            } else {
                cur.swap(0, k - 1);
            }
        }
    }
    heap(d, &mut cur, &mut out);
    out
}

fn compose(a: &[usize], b: &[usize]) -> Vec<usize> {
    // (a ∘ b)(i) = a(b(i))
    b.iter().map(|&i| a[i]).collect()
}

fn inverse(a: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn tuple_is_transitive(d: usize, tuple: &[&Vec<usize>]) -> bool {
    if d == 1 {
        return true;
    }
    // orbit of 0 under the generated group; forward edges suffice since
    // every permutation's inverse is a forward power of itself
    let mut seen = vec![false; d];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut count = 1;
    while let Some(i) = stack.pop() {
        for sigma in tuple {
            let j = sigma[i];
            if !seen[j] {
                seen[j] = true;
                count += 1;
                stack.push(j);
            }
        }
    }
    count == d
}

/// Transitive tuple count over `d!` by brute-force enumeration.
pub fn transitive_fraction_enumeration(q: &HurwitzQuery) -> Result<Ratio> {
    if q.d > MAX_ENUMERATION_DEGREE {
        return Err(Error::DegreeBudget(q.d, MAX_ENUMERATION_DEGREE));
    }
    let d = q.d as usize;
    let r = q.profiles.len();
    if r == 0 {
        // the empty tuple generates the trivial group
        return Ok(if d == 1 { Ratio::one() } else { Ratio::zero() });
    }
    if r == 1 {
        // single factor must be the identity
        let ok = q.profiles[0] == Partition::ones(q.d) && d == 1;
        return Ok(if ok { Ratio::one() } else { Ratio::zero() });
    }
    let perms = all_permutations(d);
    let classes: Vec<Vec<usize>> = q
        .profiles
        .iter()
        .map(|p| {
            perms
                .iter()
                .enumerate()
                .filter(|(_, perm)| cycle_type(perm) == p.parts())
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    if classes.iter().any(|c: &Vec<usize>| c.is_empty()) {
        return Ok(Ratio::zero());
    }
    let last_type = q.profiles[r - 1].parts().to_vec();

    // depth-first over the first r-1 factors; the last one is forced
    let mut count = 0u64;
    let mut choice = vec![0usize; r - 1];
    let mut products: Vec<Vec<usize>> = vec![(0..d).collect(); r];
    let mut level = 0usize;
    loop {
        if level == r - 1 {
            let needed = inverse(&products[level]);
            if cycle_type(&needed) == last_type {
                let mut tuple: Vec<&Vec<usize>> = choice
                    .iter()
                    .zip(&classes)
                    .map(|(&c, cl)| &perms[cl[c]])
                    .collect();
                tuple.push(&needed);
                if tuple_is_transitive(d, &tuple) {
                    count += 1;
                }
            }
            // backtrack
            loop {
                if level == 0 {
                    return Ok(Ratio::from_bigint(BigInt::from(count))
                        / Ratio::from_bigint(factorial(q.d)));
                }
                level -= 1;
                choice[level] += 1;
                if choice[level] < classes[level].len() {
                    break;
                }
                choice[level] = 0;
            }
        }
        let sigma = &perms[classes[level][choice[level]]];
        products[level + 1] = compose(&products[level], sigma);
        level += 1;
    }
}

// ---- Path 2: characters plus inclusion-exclusion ----

/// Murnaghan–Nakayama character `chi_lambda(mu)` via beta sets: removing a
/// border strip of length `t` is moving a beta number down by `t`.
fn mn_character(
    lambda: &[u32],
    mu: &[u32],
    memo: &mut BTreeMap<(Vec<u32>, Vec<u32>), BigInt>,
) -> BigInt {
    if mu.is_empty() {
        return BigInt::from(1);
    }
    let key = (lambda.to_vec(), mu.to_vec());
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let n = lambda.len();
    let beta: Vec<i64> = lambda
        .iter()
        .enumerate()
        .map(|(i, &l)| l as i64 + (n - 1 - i) as i64)
        .collect();
    let t = mu[0] as i64;
    let rest = &mu[1..];
    let mut total = BigInt::from(0);
    for (pos, &b) in beta.iter().enumerate() {
        let target = b - t;
        if target < 0 || beta.contains(&target) {
            continue;
        }
        let height = beta.iter().filter(|&&x| target < x && x < b).count();
        let mut new_beta = beta.clone();
        new_beta[pos] = target;
        new_beta.sort_unstable_by(|a, b| b.cmp(a));
        let m = new_beta.len();
        let new_lambda: Vec<u32> = new_beta
            .iter()
            .enumerate()
            .map(|(i, &x)| (x - (m - 1 - i) as i64) as u32)
            .filter(|&x| x > 0)
            .collect();
        let term = mn_character(&new_lambda, rest, memo);
        if height % 2 == 0 {
            total += term;
        } else {
            total -= term;
        }
    }
    memo.insert(key, total.clone());
    total
}

fn partitions_of(d: u32) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(remaining: u32, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=remaining.min(max)).rev() {
            cur.push(p);
            rec(remaining - p, p, cur, out);
            cur.pop();
        }
    }
    rec(d, d, &mut cur, &mut out);
    out
}

/// Frobenius formula: the number of tuples `(s_1..s_r)`, `s_i` in the class
/// of `mu^i`, with `s_1 ... s_r = id` — not necessarily transitive —
/// divided by `d!`.
fn tuple_fraction_characters(
    d: u32,
    profiles: &[&Partition],
    memo: &mut BTreeMap<(Vec<u32>, Vec<u32>), BigInt>,
) -> Ratio {
    if d == 0 {
        return Ratio::one();
    }
    let r = profiles.len() as i32;
    let dfact = Ratio::from_bigint(factorial(d));
    let class_product: Ratio = profiles
        .iter()
        .map(|p| &dfact / &Ratio::from_bigint(p.centralizer_order()))
        .fold(Ratio::one(), |acc, c| &acc * &c);
    let mut sum = Ratio::zero();
    for lambda in partitions_of(d) {
        let dim = Ratio::from_bigint(mn_character(&lambda, &vec![1; d as usize], memo));
        let mut prod = Ratio::one();
        for p in profiles {
            prod *= &Ratio::from_bigint(mn_character(&lambda, p.parts(), memo));
        }
        sum += &(&prod * &dim.pow(2 - r));
    }
    // N / d! = (prod |C_i| / d!) * sum / d!
    &class_product * &sum / (&dfact * &dfact)
}

/// Distinct sub-multisets of `parts` with the given sum, paired with the
/// complementary multiset.
fn submultisets_with_sum(parts: &[u32], k: u32) -> Vec<(Vec<u32>, Vec<u32>)> {
    let mut values: Vec<(u32, u32)> = Vec::new();
    for &p in parts {
        match values.last_mut() {
            Some((v, m)) if *v == p => *m += 1,
            _ => values.push((p, 1)),
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    fn rec(
        values: &[(u32, u32)],
        idx: usize,
        remaining: u32,
        chosen: &mut Vec<u32>,
        out: &mut Vec<(Vec<u32>, Vec<u32>)>,
    ) {
        if idx == values.len() {
            if remaining == 0 {
                let mut rest = Vec::new();
                let mut it = chosen.iter();
                let mut cur = it.next();
                for &(v, m) in values {
                    let mut used = 0;
                    while let Some(&c) = cur {
                        if c == v && used < m {
                            used += 1;
                            cur = it.next();
                        } else {
                            break;
                        }
                    }
                    for _ in used..m {
                        rest.push(v);
                    }
                }
                out.push((chosen.clone(), rest));
            }
            return;
        }
        let (v, m) = values[idx];
        let max_take = (remaining / v).min(m);
        for take in 0..=max_take {
            for _ in 0..take {
                chosen.push(v);
            }
            rec(values, idx + 1, remaining - take * v, chosen, out);
            for _ in 0..take {
                chosen.pop();
            }
        }
    }
    rec(&values, 0, k, &mut chosen, &mut out);
    out
}

type CountMemo = BTreeMap<(u32, Vec<Vec<u32>>), Ratio>;

/// Transitive tuple count over `d!` by the character formula and
/// inclusion–exclusion over the orbit of sheet 1.
pub fn transitive_fraction_characters(q: &HurwitzQuery) -> Result<Ratio> {
    if q.d > MAX_CHARACTER_DEGREE {
        return Err(Error::DegreeBudget(q.d, MAX_CHARACTER_DEGREE));
    }
    let mut chi_memo = BTreeMap::new();
    let mut memo: CountMemo = BTreeMap::new();
    Ok(transitive_fraction_rec(
        q.d,
        &q.profiles.iter().collect::<Vec<_>>(),
        &mut chi_memo,
        &mut memo,
    ))
}

fn profile_key(d: u32, profiles: &[&Partition]) -> (u32, Vec<Vec<u32>>) {
    let mut key: Vec<Vec<u32>> = profiles.iter().map(|p| p.parts().to_vec()).collect();
    key.sort();
    (d, key)
}

/// T(d) = N(d) - sum over proper orbits O of sheet 1:
///   C(d-1, k-1) * T(k, nu) * N(d-k, mu \ nu).
fn transitive_fraction_rec(
    d: u32,
    profiles: &[&Partition],
    chi_memo: &mut BTreeMap<(Vec<u32>, Vec<u32>), BigInt>,
    memo: &mut CountMemo,
) -> Ratio {
    let key = profile_key(d, profiles);
    if let Some(v) = memo.get(&key) {
        return v.clone();
    }
    let dfact = Ratio::from_bigint(factorial(d));
    // work with raw counts, divide at the end
    let n_full = &tuple_fraction_characters(d, profiles, chi_memo) * &dfact;
    let mut subtract = Ratio::zero();
    for k in 1..d {
        // all ways to split every profile into (orbit part of k, rest)
        let mut splits: Vec<(Vec<Partition>, Vec<Partition>)> = vec![(Vec::new(), Vec::new())];
        for p in profiles {
            let choices = submultisets_with_sum(p.parts(), k);
            let mut next = Vec::new();
            for (nu, rest) in &choices {
                for (acc_nu, acc_rest) in &splits {
                    let mut a = acc_nu.clone();
                    let mut b = acc_rest.clone();
                    a.push(
                        Partition::new(nu.clone())
                            .unwrap_or_else(|_| Partition { parts: Vec::new() }),
                    );
                    b.push(
                        Partition::new(rest.clone())
                            .unwrap_or_else(|_| Partition { parts: Vec::new() }),
                    );
                    next.push((a, b));
                }
            }
            splits = next;
        }
        let kfact = Ratio::from_bigint(factorial(k));
        let restfact = Ratio::from_bigint(factorial(d - k));
        let choose = Ratio::from_bigint(binomial(d - 1, k - 1));
        for (nu, rest) in splits {
            if nu.iter().any(|p| p.sum() != k) || rest.iter().any(|p| p.sum() != d - k) {
                continue;
            }
            let t_orbit =
                &transitive_fraction_rec(k, &nu.iter().collect::<Vec<_>>(), chi_memo, memo)
                    * &kfact;
            if t_orbit.is_zero() {
                continue;
            }
            let n_rest =
                &tuple_fraction_characters(d - k, &rest.iter().collect::<Vec<_>>(), chi_memo)
                    * &restfact;
            subtract += &(&choose * &(&t_orbit * &n_rest));
        }
    }
    let result = &(&n_full - &subtract) / &dfact;
    memo.insert(key, result.clone());
    result
}

/// The connected genus-zero Hurwitz number. Zero whenever the genus-zero
/// Riemann–Hurwitz count fails; otherwise the transitive tuple fraction,
/// computed by the character path.
pub fn hurwitz_connected(q: &HurwitzQuery) -> Result<Ratio> {
    if q.d > MAX_CHARACTER_DEGREE {
        return Err(Error::DegreeBudget(q.d, MAX_CHARACTER_DEGREE));
    }
    if !rh_feasible(q) {
        return Ok(Ratio::zero());
    }
    transitive_fraction_characters(q)
}

// ---- d = 1 assembly check ----

#[derive(Clone, Debug)]
pub struct AssemblyCheck {
    pub name: String,
    pub pass: bool,
    pub details: String,
}

#[derive(Clone, Debug)]
pub struct AssemblyReport {
    pub checks: Vec<AssemblyCheck>,
    pub pass: bool,
}

/// Check the degree-one factorization: `H^0_{0,1}((1),...,(1)) = 1`, and the
/// assembled `B_1` is exactly that Hurwitz number times the product of
/// per-point `B_1` factors, with leading monomial `prod t^{alpha,1}` and all
/// corrections involving some `t^{alpha,i}` with `i >= 2`.
pub fn b1_assembly_check(curve: &OrbiCurve, tds: &[TearDropData]) -> Result<AssemblyReport> {
    let orders: Vec<u32> = tds.iter().map(|td| td.order()).collect();
    if curve.genus() != 0 || curve.orders() != orders.as_slice() {
        return Err(Error::CurveMismatch);
    }
    let r = tds.len();
    let mut checks = Vec::new();

    let q = HurwitzQuery::new(1, vec![Partition::ones(1); r])?;
    let h = hurwitz_connected(&q)?;
    checks.push(AssemblyCheck {
        name: "hurwitz_degree_one".into(),
        pass: h == Ratio::one(),
        details: format!("H^0_{{0,1}}((1),...,(1)) = {h}"),
    });

    let f = assemble_multipoint(tds)?;
    let table = standard_table(curve);
    let b1 = f.b_part(1);

    // leading monomial prod t^{alpha,1} carries exactly the Hurwitz factor
    let mut lead = Expo::zero(table.len());
    let mut higher = Vec::new();
    for (idx, &a) in curve.orders().iter().enumerate() {
        for i in 1..a {
            let j =
                crate::potential::var_index(curve, &crate::curve::BasisIndex::twisted(idx + 1, i));
            if i == 1 {
                lead.0[j] = 1;
            } else {
                higher.push(j);
            }
        }
    }
    let lead_coeff = b1.coeff(&lead);
    checks.push(AssemblyCheck {
        name: "b1_leading_coefficient".into(),
        pass: lead_coeff == h,
        details: format!("coefficient of prod t^(alpha,1) is {lead_coeff}, Hurwitz value {h}"),
    });

    let tail = b1.sub(&MPoly::monomial(&table, lead, lead_coeff.clone()));
    checks.push(AssemblyCheck {
        name: "b1_corrections_in_higher_twists".into(),
        pass: tail.in_var_ideal(&higher),
        details: "B1 - leading term lies in (t^{alpha,i} : i >= 2)".into(),
    });

    // assembly consistency: B1 equals the relabeled product exactly
    let mut product = MPoly::one(&table);
    for (idx, td) in tds.iter().enumerate() {
        let map: Vec<Option<usize>> = (1..td.order())
            .map(|i| {
                Some(crate::potential::var_index(
                    curve,
                    &crate::curve::BasisIndex::twisted(idx + 1, i),
                ))
            })
            .collect();
        product = product.mul(&td.b1_part().map_variables(&table, &map)?);
    }
    let product = product.scale(&h);
    checks.push(AssemblyCheck {
        name: "b1_product_formula".into(),
        pass: *b1 == product,
        details: "B1 = H * prod B1^(a_alpha) after relabeling".into(),
    });

    let pass = checks.iter().all(|c| c.pass);
    Ok(AssemblyReport { checks, pass })
}
