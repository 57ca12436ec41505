//! Randomized invariants: ring axioms, grading multiplicativity,
//! determinant cross-checks, truncation consistency, basis independence of
//! the quantum Euler class, and Hurwitz symmetries.

use proptest::prelude::*;

use orbiq_core::frobenius::AlgebraData;
use orbiq_core::hurwitz::{
    hurwitz_connected, rh_feasible, transitive_fraction_characters,
    transitive_fraction_enumeration, HurwitzQuery, Partition,
};
use orbiq_core::matrix::{det_exact, invert_rational, Matrix};
use orbiq_core::mpoly::{Expo, MPoly, WeightedDegree};
use orbiq_core::potential::assemble_multipoint;
use orbiq_core::qseries::QSeries;
use orbiq_core::ratio::Ratio;
use orbiq_core::reconstruct::solve_teardrop;
use orbiq_core::ring::Ring;
use orbiq_core::vars::VarTable;

fn ratio_strategy() -> impl Strategy<Value = Ratio> {
    (-400i64..400, 1i64..40).prop_map(|(n, d)| Ratio::new(n, d))
}

fn small_matrix(n: usize) -> impl Strategy<Value = Matrix<Ratio>> {
    proptest::collection::vec(ratio_strategy(), n * n)
        .prop_map(move |entries| Matrix::new(n, n, entries).unwrap())
}

/// Naive cofactor expansion: the independent determinant oracle.
fn det_cofactor<T: Ring>(m: &Matrix<T>) -> T {
    let n = m.rows();
    if n == 1 {
        return m.at(0, 0).clone();
    }
    let mut acc = m.at(0, 0).ring_zero();
    for j in 0..n {
        if m.at(0, j).is_zero() {
            continue;
        }
        let minor = Matrix::from_rows(
            (1..n)
                .map(|i| {
                    (0..n)
                        .filter(|&c| c != j)
                        .map(|c| m.at(i, c).clone())
                        .collect()
                })
                .collect(),
        )
        .unwrap();
        let term = m.at(0, j).mul(&det_cofactor(&minor));
        acc = if j % 2 == 0 {
            acc.add(&term)
        } else {
            acc.sub(&term)
        };
    }
    acc
}

proptest! {
    #[test]
    fn ratio_field_axioms(a in ratio_strategy(), b in ratio_strategy(), c in ratio_strategy()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        // normalization invariants hold after arithmetic
        for v in [&a + &b, &a * &b, &a - &c] {
            prop_assert!(!v.denom().le(&num_bigint::BigInt::from(0)));
            prop_assert!(num_integer::gcd(v.numer().clone(), v.denom().clone())
                == num_bigint::BigInt::from(1) || v.is_zero());
        }
    }

    #[test]
    fn ratio_display_roundtrip(a in ratio_strategy()) {
        let s = a.to_string();
        let back: Ratio = s.parse().unwrap();
        prop_assert_eq!(a, back);
    }

    #[test]
    fn weighted_degree_multiplicative(
        pc in proptest::collection::vec(ratio_strategy(), 3),
        qc in proptest::collection::vec(ratio_strategy(), 4),
        dp in 1u32..5,
        dq in 1u32..5,
    ) {
        // homogeneous by construction: all terms share the total degree,
        // weights 1/2 per variable
        let table = VarTable::new(
            vec!["x".into(), "y".into()],
            vec![Ratio::new(1, 2), Ratio::new(1, 2)],
        ).unwrap();
        let build = |coeffs: &[Ratio], d: u32| {
            let mut p = MPoly::zero(&table);
            for (i, c) in coeffs.iter().enumerate() {
                let i = (i as u32).min(d);
                p = p.add(&MPoly::monomial(&table, Expo(vec![i, d - i]), c.clone()));
            }
            p
        };
        let p = build(&pc, dp);
        let q = build(&qc, dq);
        prop_assume!(!p.is_zero() && !q.is_zero());
        let (wp, wq) = (p.weighted_degree(), q.weighted_degree());
        if let (WeightedDegree::Homogeneous(a), WeightedDegree::Homogeneous(b)) = (wp, wq) {
            match p.mul(&q).weighted_degree() {
                WeightedDegree::Homogeneous(c) => prop_assert_eq!(&a + &b, c),
                WeightedDegree::Zero => {}
                WeightedDegree::Inhomogeneous => prop_assert!(false, "product inhomogeneous"),
            }
        }
    }

    #[test]
    fn det_matches_cofactor_rational(m in (2usize..=4).prop_flat_map(small_matrix)) {
        prop_assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
    }

    #[test]
    fn det_matches_cofactor_mpoly(
        coeffs in proptest::collection::vec(-9i64..=9, 8),
        n in 2usize..=3,
    ) {
        let table = VarTable::unweighted(&["x", "y"]);
        let x = MPoly::var(&table, 0);
        let y = MPoly::var(&table, 1);
        let mut entries = Vec::with_capacity(n * n);
        for k in 0..n * n {
            let c0 = Ratio::from_int(coeffs[k % coeffs.len()]);
            let c1 = Ratio::from_int(coeffs[(k + 3) % coeffs.len()]);
            entries.push(
                x.scale(&c0).add(&y.scale(&c1)).add(&MPoly::constant(
                    &table,
                    Ratio::from_int(coeffs[(k + 5) % coeffs.len()]),
                )),
            );
        }
        let m = Matrix::new(n, n, entries).unwrap();
        prop_assert_eq!(det_exact(&m).unwrap(), det_cofactor(&m));
    }

    #[test]
    fn qseries_truncation_consistency(
        ac in proptest::collection::vec(-9i64..=9, 4),
        bc in proptest::collection::vec(-9i64..=9, 4),
        d in 1usize..=3,
    ) {
        // multiply two coefficient lists fully, then truncate; must agree
        // with the truncated product
        let table = VarTable::unweighted(&["x"]);
        let x = MPoly::var(&table, 0);
        let coeff = |k: i64, pow: u32| x.pow(pow).scale(&Ratio::from_int(k));
        let a_list: Vec<MPoly> = ac.iter().enumerate().take(d + 1)
            .map(|(i, &k)| coeff(k, i as u32)).collect();
        let b_list: Vec<MPoly> = bc.iter().enumerate().take(d + 1)
            .map(|(i, &k)| coeff(k, (i % 2) as u32)).collect();

        let mut a = QSeries::zero(&table, d);
        let mut b = QSeries::zero(&table, d);
        for (i, p) in a_list.iter().enumerate() {
            a = a.add(&QSeries::from_coeff(d, i, p.clone()));
        }
        for (i, p) in b_list.iter().enumerate() {
            b = b.add(&QSeries::from_coeff(d, i, p.clone()));
        }
        let product = a.mul(&b);

        let mut full = vec![MPoly::zero(&table); 2 * d + 1];
        for (i, p) in a_list.iter().enumerate() {
            for (j, q) in b_list.iter().enumerate() {
                full[i + j] = full[i + j].add(&p.mul(q));
            }
        }
        for i in 0..=d {
            prop_assert_eq!(product.coeff(i), &full[i]);
        }
    }

#[test]
    fn charpoly_consistency(m in (2usize..=4).prop_flat_map(small_matrix)) {
        // Berkowitz characteristic polynomial vs Bareiss determinant and trace
        let p = m.charpoly().unwrap();
        let n = m.rows();
        prop_assert_eq!(&p[0], &Ratio::one());
        let det = det_exact(&m).unwrap();
        let sign = if n % 2 == 0 { Ratio::one() } else { Ratio::from_int(-1) };
        prop_assert_eq!(&p[n] * &sign, det);
        prop_assert_eq!(p[1].clone(), -m.trace().unwrap());
    }

    #[test]
    fn hurwitz_profile_permutation_symmetry(
        d in 1u32..=4,
        seed in 0usize..100,
    ) {
        let parts = partitions_of(d);
        let p1 = parts[seed % parts.len()].clone();
        let p2 = parts[(seed / 3) % parts.len()].clone();
        let p3 = parts[(seed / 7) % parts.len()].clone();
        let a = transitive_fraction_characters(
            &HurwitzQuery::new(d, vec![p1.clone(), p2.clone(), p3.clone()]).unwrap()).unwrap();
        let b = transitive_fraction_characters(
            &HurwitzQuery::new(d, vec![p3, p1, p2]).unwrap()).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn hurwitz_gate(d in 2u32..=5, seed in 0usize..64) {
        let parts = partitions_of(d);
        let profiles = vec![parts[seed % parts.len()].clone()];
        let q = HurwitzQuery::new(d, profiles).unwrap();
        // single profile at d >= 2 is never genus-zero feasible
        prop_assert!(!rh_feasible(&q));
        prop_assert!(hurwitz_connected(&q).unwrap().is_zero());
    }
}

fn partitions_of(d: u32) -> Vec<Partition> {
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
    let mut raw = Vec::new();
    rec(d, d, &mut Vec::new(), &mut raw);
    raw.into_iter()
        .map(|p| Partition::new(p).unwrap())
        .collect()
}

// ---- deterministic structural properties that need heavier setup ----

#[test]
fn quantum_product_commutes_and_wdvv_iff_associative() {
    let td = solve_teardrop(3).unwrap();
    let f = assemble_multipoint(std::slice::from_ref(&td)).unwrap();
    let curve = f.curve().clone();
    let basis = curve.basis();
    for s in &basis {
        for t in &basis {
            assert_eq!(
                f.quantum_basis_product(s, t),
                f.quantum_basis_product(t, s),
                "commutativity at ({s},{t})"
            );
        }
    }
    // associativity through the algebra: L_{x*y} = L_x L_y for basis samples
    let alg = AlgebraData::from_potential(&f).unwrap();
    let n = alg.dim();
    let one = QSeries::one(f.table(), 1);
    for u in 0..n.min(3) {
        for v in 0..n.min(3) {
            let mut eu = vec![one.ring_zero(); n];
            eu[u] = one.clone();
            let mut ev = vec![one.ring_zero(); n];
            ev[v] = one.clone();
            let prod: Vec<QSeries> = (0..n).map(|w| alg.c(u, v, w).clone()).collect();
            let lhs = alg.mult_matrix(&prod).unwrap();
            let rhs = alg
                .mult_matrix(&eu)
                .unwrap()
                .mul(&alg.mult_matrix(&ev).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "homomorphism at ({u},{v})");
        }
    }
    assert!(f.wdvv_holds());

    // corrupting A breaks WDVV and, equivalently, associativity
    let table = f.table().clone();
    let bad_a = f
        .a_part()
        .add(&MPoly::var(&table, 2).pow(3).scale(&Ratio::new(1, 7)));
    let g = orbiq_core::potential::Potential::with_parts(&curve, bad_a, vec![f.b_part(1).clone()])
        .unwrap();
    assert!(!g.wdvv_holds());
    let bad_alg = AlgebraData::from_potential(&g).unwrap();
    let mut hom_broken = false;
    'outer: for u in 0..n {
        for v in 0..n {
            let mut eu = vec![one.ring_zero(); n];
            eu[u] = one.clone();
            let mut ev = vec![one.ring_zero(); n];
            ev[v] = one.clone();
            let prod: Vec<QSeries> = (0..n).map(|w| bad_alg.c(u, v, w).clone()).collect();
            let lhs = bad_alg.mult_matrix(&prod).unwrap();
            let rhs = bad_alg
                .mult_matrix(&eu)
                .unwrap()
                .mul(&bad_alg.mult_matrix(&ev).unwrap())
                .unwrap();
            if lhs != rhs {
                hom_broken = true;
                break 'outer;
            }
        }
    }
    assert!(hom_broken, "a non-WDVV potential cannot be associative");
}

/// Element of the small quantum ring at `t = 0`, truncated at order one in
/// `Q`: one `(Q^0, Q^1)` rational pair per basis coordinate.
type SmallElement = Vec<(Ratio, Ratio)>;

/// Structure constants of the potential's product at `t = 0`.
fn small_ring_at_zero(f: &orbiq_core::potential::Potential) -> Vec<Vec<SmallElement>> {
    use std::collections::BTreeMap;
    let basis = f.curve().basis();
    let n = basis.len();
    let zero_subst: BTreeMap<usize, Ratio> =
        (2..f.table().len()).map(|i| (i, Ratio::zero())).collect();
    let mut c = vec![vec![vec![(Ratio::zero(), Ratio::zero()); n]; n]; n];
    for (u, su) in basis.iter().enumerate() {
        for (v, sv) in basis.iter().enumerate() {
            let prod = f.quantum_basis_product(su, sv);
            for (w, sw) in basis.iter().enumerate() {
                if let Some(series) = prod.coeff(sw) {
                    c[u][v][w] = (
                        series
                            .coeff(0)
                            .substitute(&zero_subst)
                            .as_constant()
                            .unwrap(),
                        series
                            .coeff(1)
                            .substitute(&zero_subst)
                            .as_constant()
                            .unwrap(),
                    );
                }
            }
        }
    }
    c
}

fn small_mul(c: &[Vec<SmallElement>], x: &SmallElement, y: &SmallElement) -> SmallElement {
    let n = x.len();
    let mut out = vec![(Ratio::zero(), Ratio::zero()); n];
    for (u, (x0, x1)) in x.iter().enumerate() {
        for (v, (y0, y1)) in y.iter().enumerate() {
            for w in 0..n {
                let (c0, c1) = &c[u][v][w];
                out[w].0 = &out[w].0 + &(&(x0 * y0) * c0);
                out[w].1 = &out[w].1 + &(&(&(x0 * y0) * c1) + &(&(&(x0 * y1) + &(x1 * y0)) * c0));
            }
        }
    }
    out
}

fn small_basis_element(n: usize, idx: usize) -> SmallElement {
    let mut e = vec![(Ratio::zero(), Ratio::zero()); n];
    e[idx] = (Ratio::one(), Ratio::zero());
    e
}

#[test]
fn small_quantum_limit_matches_presentation_relation() {
    // at t = 0 the reconstructed potential's product must satisfy the
    // presentation relation of the two-point family with one trivial point:
    // x1 x2 = Q and a x1^a = x2 force x1^{a+1} = Q/a
    use orbiq_core::curve::BasisIndex;

    for a in 2u32..=5 {
        let td = solve_teardrop(a).unwrap();
        let f = assemble_multipoint(std::slice::from_ref(&td)).unwrap();
        let curve = f.curve().clone();
        let basis = curve.basis();
        let n = basis.len();
        let c = small_ring_at_zero(&f);
        let x1 = small_basis_element(n, curve.basis_position(&BasisIndex::twisted(1, 1)).unwrap());
        let mut power = x1.clone();
        for _ in 0..a {
            power = small_mul(&c, &power, &x1);
        }
        for (w, (q0, q1)) in power.iter().enumerate() {
            let expect_q1 = if w == 0 {
                Ratio::new(1, a as i64)
            } else {
                Ratio::zero()
            };
            assert!(q0.is_zero(), "a={a}: x1^{} has classical part", a + 1);
            assert_eq!(q1, &expect_q1, "a={a}: x1^{} at {}", a + 1, basis[w]);
        }
    }
}

#[test]
fn multi_point_small_limit_matches_presentations() {
    // two nontrivial points: the small ring of the assembled potential must
    // satisfy both presentation relations of the two-point family exactly,
    // x1 x2 = Q and a1 x1^{a1} = a2 x2^{a2}
    use orbiq_core::curve::BasisIndex;

    for (a1, a2) in [(2u32, 2u32), (2, 3), (3, 4)] {
        let t1 = solve_teardrop(a1).unwrap();
        let t2 = solve_teardrop(a2).unwrap();
        let f = assemble_multipoint(&[t1, t2]).unwrap();
        let curve = f.curve().clone();
        let n = curve.dim();
        let c = small_ring_at_zero(&f);
        let x1 = small_basis_element(n, curve.basis_position(&BasisIndex::twisted(1, 1)).unwrap());
        let x2 = small_basis_element(n, curve.basis_position(&BasisIndex::twisted(2, 1)).unwrap());

        // x1 x2 = Q, i.e. (0, 1) at phi_00
        let prod = small_mul(&c, &x1, &x2);
        for (w, (q0, q1)) in prod.iter().enumerate() {
            assert!(q0.is_zero(), "({a1},{a2}): x1 x2 classical part at {w}");
            let expect = if w == 0 { Ratio::one() } else { Ratio::zero() };
            assert_eq!(q1, &expect, "({a1},{a2}): x1 x2 at {w}");
        }

        // a1 x1^{a1} = a2 x2^{a2}
        let mut p1 = x1.clone();
        for _ in 1..a1 {
            p1 = small_mul(&c, &p1, &x1);
        }
        let mut p2 = x2.clone();
        for _ in 1..a2 {
            p2 = small_mul(&c, &p2, &x2);
        }
        let r1 = Ratio::from_int(a1 as i64);
        let r2 = Ratio::from_int(a2 as i64);
        for w in 0..n {
            assert_eq!(
                (&p1[w].0 * &r1, &p1[w].1 * &r1),
                (&p2[w].0 * &r2, &p2[w].1 * &r2),
                "({a1},{a2}): a1 x1^a1 vs a2 x2^a2 at {w}"
            );
        }
    }
}

#[test]
fn euler_class_matches_closed_form() {
    // e_q = (a+1) phi_01 + a^2 sum_{k,i} A_{i,a-i,a-k} phi_k, with no
    // q-corrections (the mixed second derivatives of B1 vanish)
    for a in [3u32, 4] {
        let td = solve_teardrop(a).unwrap();
        let f = assemble_multipoint(std::slice::from_ref(&td)).unwrap();
        let alg = AlgebraData::from_potential(&f).unwrap();
        let e = alg.quantum_euler().unwrap();
        let table = f.table();

        assert!(e[0].is_zero());
        assert_eq!(
            e[1].coeff(0),
            &MPoly::constant(table, Ratio::from_int(a as i64 + 1))
        );
        assert!(e[1].coeff(1).is_zero());
        let dv = |p: &MPoly, i: u32| p.partial_derivative_idx(1 + i as usize);
        for k in 1..a {
            let mut sum = MPoly::zero(table);
            for i in 1..a {
                sum = sum.add(&dv(&dv(&dv(f.a_part(), i), a - i), a - k));
            }
            let expected = sum.scale(&Ratio::from_int((a * a) as i64));
            let got = &e[1 + k as usize];
            assert_eq!(got.coeff(0), &expected, "a={a}, k={k}");
            assert!(got.coeff(1).is_zero(), "a={a}, k={k}: q-correction");
        }
    }
}

#[test]
fn order_five_teardrop_solves_and_checks() {
    // opt-in tear-drop order: everything must still close exactly
    let td = solve_teardrop(5).unwrap();
    assert!(orbiq_core::reconstruct::verify_structure(&td).pass);
    let f = assemble_multipoint(std::slice::from_ref(&td)).unwrap();
    let rep = orbiq_core::frobenius::leading_det_check(f.curve(), &f).unwrap();
    assert!(rep.pass);
    // -4 * 4^4/5 * (t1)^6
    let table = f.table();
    assert_eq!(
        rep.leading,
        MPoly::var(table, 2).pow(6).scale(&Ratio::new(-1024, 5))
    );
}

#[test]
fn leading_det_three_points() {
    // three order-two points: -4 (1/2)^3 (t^{11} t^{21} t^{31})^3
    let t2 = solve_teardrop(2).unwrap();
    let f = assemble_multipoint(&[t2.clone(), t2.clone(), t2]).unwrap();
    let rep = orbiq_core::frobenius::leading_det_check(f.curve(), &f).unwrap();
    assert!(rep.pass);
    let table = f.table();
    let expected = MPoly::var(table, 2)
        .mul(&MPoly::var(table, 3))
        .mul(&MPoly::var(table, 4))
        .pow(3)
        .scale(&Ratio::new(-1, 2));
    assert_eq!(rep.leading, expected);
}

#[test]
fn cyclic_cover_counts() {
    // two full-cycle profiles: the only tuples are (s, s^{-1}) over the
    // (d-1)! long cycles, all transitive, so the count is 1/d
    for d in 2u32..=6 {
        let q = HurwitzQuery::new(
            d,
            vec![Partition::single(d).unwrap(), Partition::single(d).unwrap()],
        )
        .unwrap();
        let expected = Ratio::new(1, d as i64);
        assert_eq!(hurwitz_connected(&q).unwrap(), expected, "d = {d}");
        assert_eq!(
            transitive_fraction_enumeration(&q).unwrap(),
            expected,
            "d = {d} by enumeration"
        );
    }
    // degree seven and eight only have the character path
    for d in [7u32, 8] {
        let q = HurwitzQuery::new(
            d,
            vec![Partition::single(d).unwrap(), Partition::single(d).unwrap()],
        )
        .unwrap();
        assert_eq!(hurwitz_connected(&q).unwrap(), Ratio::new(1, d as i64));
    }
}

#[test]
fn multi_point_euler_class_closed_form() {
    // e_q = (2 + sum (a-1)) phi_01 + sum_a a^2 sum_{k,i} A^a_{i,a-i,a-k} phi_{a,k},
    // with no q-corrections
    use orbiq_core::curve::BasisIndex;
    let t2 = solve_teardrop(2).unwrap();
    let t3 = solve_teardrop(3).unwrap();
    let f = assemble_multipoint(&[t2, t3]).unwrap();
    let curve = f.curve().clone();
    let alg = AlgebraData::from_potential(&f).unwrap();
    let e = alg.quantum_euler().unwrap();

    assert!(e[0].is_zero());
    assert_eq!(
        e[1].coeff(0),
        &MPoly::constant(f.table(), Ratio::from_int(5))
    );
    for (alpha, &a) in curve.orders().iter().enumerate() {
        for k in 1..a {
            let pos = curve
                .basis_position(&BasisIndex::twisted(alpha + 1, k))
                .unwrap();
            let mut sum = MPoly::zero(f.table());
            for i in 1..a {
                let d3 = f
                    .a_part()
                    .partial_derivative_idx(orbiq_core::potential::var_index(
                        &curve,
                        &BasisIndex::twisted(alpha + 1, i),
                    ))
                    .partial_derivative_idx(orbiq_core::potential::var_index(
                        &curve,
                        &BasisIndex::twisted(alpha + 1, a - i),
                    ))
                    .partial_derivative_idx(orbiq_core::potential::var_index(
                        &curve,
                        &BasisIndex::twisted(alpha + 1, a - k),
                    ));
                sum = sum.add(&d3);
            }
            let expected = sum.scale(&Ratio::from_int((a * a) as i64));
            assert_eq!(e[pos].coeff(0), &expected, "point {}, k = {k}", alpha + 1);
            assert!(e[pos].coeff(1).is_zero());
        }
    }
}

#[test]
fn euler_class_is_basis_independent() {
    // det(+-1) rational change of basis fixing the unit vector: the euler
    // class transforms as an element and det(e_q *) is unchanged
    let alg = {
        let c = orbiq_core::curve::OrbiCurve::new(0, vec![2, 3]).unwrap();
        let pres = orbiq_core::smallqh::presentation(&c, Ratio::one()).unwrap();
        orbiq_core::smallqh::quotient_algebra(&pres)
            .unwrap()
            .algebra
    };
    let n = alg.dim();
    // shear matrix: identity plus small integer off-diagonal entries in the
    // non-unit block; determinant 1
    let mut p = Matrix::identity(n, &Ratio::one());
    let mut bump = 1i64;
    for i in 1..n {
        for j in (i + 1..n).take(2) {
            *p.at_mut(i, j) = Ratio::from_int(bump % 3 - 1);
            bump += 1;
        }
    }
    assert_eq!(det_exact(&p).unwrap(), Ratio::one());
    let p_inv = invert_rational(&p).unwrap();

    // transform structure and metric
    let mut structure = Vec::with_capacity(n * n * n);
    for u in 0..n {
        for v in 0..n {
            for w in 0..n {
                let mut s = Ratio::zero();
                for i in 0..n {
                    for j in 0..n {
                        for k in 0..n {
                            let c = alg.c(i, j, k);
                            if c.is_zero() {
                                continue;
                            }
                            s += &(&(&(p.at(i, u) * p.at(j, v)) * c) * p_inv.at(w, k));
                        }
                    }
                }
                structure.push(s);
            }
        }
    }
    let mut metric = Matrix::zero(n, n, &Ratio::one());
    for u in 0..n {
        for v in 0..n {
            let mut s = Ratio::zero();
            for i in 0..n {
                for j in 0..n {
                    s += &(&(p.at(i, u) * p.at(j, v)) * alg.metric().at(i, j));
                }
            }
            *metric.at_mut(u, v) = s;
        }
    }
    let labels = (0..n).map(|i| format!("f{i}")).collect();
    let transformed = AlgebraData::new(labels, structure, metric, alg.unit()).unwrap();

    // e_q transforms by the inverse coordinate change
    let e_old = alg.quantum_euler().unwrap();
    let e_new = transformed.quantum_euler().unwrap();
    let expected: Vec<Ratio> = (0..n)
        .map(|u| {
            let mut s = Ratio::zero();
            for (i, e) in e_old.iter().enumerate() {
                s += &(p_inv.at(u, i) * e);
            }
            s
        })
        .collect();
    assert_eq!(e_new, expected);

    // determinant changes by det(P)^2 = 1
    let d_old = alg.euler_det().unwrap().det;
    let d_new = transformed.euler_det().unwrap().det;
    assert_eq!(d_old, d_new);
}
