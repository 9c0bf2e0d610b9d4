use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::*;
use crate::catalog;
use crate::grading::GroupElement;
use crate::repmodule::BasisVector;

type Q = BigRational;

/// Classical Chevalley-Eilenberg dimensions with trivial coefficients,
/// computed on antisymmetric functions of all n-tuples with plain rational
/// elimination.
fn classical_oracle(l: &ColorLieAlgebra, top: usize) -> Vec<usize> {
    let d = l.dim();
    let c = |i: usize, j: usize, k: usize| -> Q {
        l.bracket(i, j)
            .get(&k)
            .map(|s| s.as_rational().unwrap().clone())
            .unwrap_or_else(Q::zero)
    };
    let tuples = |n: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..n {
            out = out
                .into_iter()
                .flat_map(|t| (0..d).map(move |k| [t.clone(), vec![k]].concat()))
                .collect();
        }
        out
    };
    let perm_sign = |t: &[usize]| -> Option<(i32, Vec<usize>)> {
        let mut v = t.to_vec();
        let mut s = 1;
        for i in 0..v.len() {
            for j in 0..v.len() - 1 - i {
                if v[j] > v[j + 1] {
                    v.swap(j, j + 1);
                    s = -s;
                }
            }
        }
        if v.windows(2).any(|p| p[0] == p[1]) {
            None
        } else {
            Some((s, v))
        }
    };
    // Columns: basis cochains e_S (S increasing), as functions on all tuples.
    let rank = |mut rows: Vec<Vec<Q>>| -> usize {
        let mut r = 0;
        let cols = rows.first().map_or(0, Vec::len);
        for col in 0..cols {
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(r, p);
            let piv = rows[r][col].clone();
            for i in 0..rows.len() {
                if i != r && !rows[i][col].is_zero() {
                    let f = &rows[i][col] / &piv;
                    let pivot_row = rows[r].clone();
                    for (x, p) in rows[i].iter_mut().zip(&pivot_row) {
                        *x -= p * &f;
                    }
                }
            }
            r += 1;
        }
        r
    };
    let mut ranks = Vec::new();
    let mut dims = Vec::new();
    for n in 0..=top {
        let basis: Vec<Vec<usize>> = tuples(n)
            .into_iter()
            .filter(|t| t.windows(2).all(|p| p[0] < p[1]))
            .collect();
        dims.push(basis.len());
        let idx: HashMap<Vec<usize>, usize> = basis
            .iter()
            .enumerate()
            .map(|(i, b)| (b.clone(), i))
            .collect();
        // Row per (n+1)-tuple, column per basis cochain.
        let mut rows = Vec::new();
        for t in tuples(n + 1) {
            let mut row = vec![Q::zero(); basis.len()];
            for i in 0..t.len() {
                for j in i + 1..t.len() {
                    let sign = if (i + j) % 2 == 0 {
                        Q::one()
                    } else {
                        -Q::one()
                    };
                    let rest: Vec<usize> = t
                        .iter()
                        .enumerate()
                        .filter(|&(p, _)| p != i && p != j)
                        .map(|(_, &v)| v)
                        .collect();
                    for k in 0..d {
                        let ck = c(t[i], t[j], k);
                        if ck.is_zero() {
                            continue;
                        }
                        let arg = [vec![k], rest.clone()].concat();
                        if let Some((ps, sorted)) = perm_sign(&arg) {
                            let col = idx[&sorted];
                            row[col] += &sign * &ck * Q::from_integer(ps.into());
                        }
                    }
                }
            }
            rows.push(row);
        }
        ranks.push(if basis.is_empty() { 0 } else { rank(rows) });
    }
    (0..=top)
        .map(|n| dims[n] - ranks[n] - if n == 0 { 0 } else { ranks[n - 1] })
        .collect()
}

fn h_dims(l: &ColorLieAlgebra, top: usize) -> Vec<usize> {
    let m = GradedModule::trivial(l);
    let rep = cohomology_dims(l, &m, top, DegreeFilter::Identity, Exec::default()).unwrap();
    (0..=top)
        .map(|n| rep.dim(n, &l.grading().identity()).unwrap())
        .collect()
}

#[test]
fn wedge_counts() {
    assert_eq!(wedge_basis(&catalog::abelian(2), 2), vec![vec![0, 1]]);
    let (cl, _) = catalog::clifford_parts();
    assert_eq!(
        wedge_basis(&cl, 2),
        vec![vec![0, 0], vec![0, 1], vec![1, 1]]
    );
    let sup = catalog::super_1_1();
    assert_eq!(wedge_basis(&sup, 3), vec![vec![0, 1, 1], vec![1, 1, 1]]);
    // Even: binomial; odd: multiset counts.
    assert_eq!(wedge_basis(&catalog::abelian(5), 3).len(), 10);
    assert_eq!(wedge_basis(&cl, 4).len(), 5);
}

#[test]
fn canonical_wedge_signs() {
    let h = catalog::heisenberg();
    assert_eq!(
        canonical_wedge(&h, &[1, 0]),
        Some((CycScalar::from_int(-1, 1), vec![0, 1]))
    );
    assert_eq!(canonical_wedge(&h, &[1, 1]), None);
    let (cl, _) = catalog::clifford_parts();
    // Odd generators commute in the eps-exterior power.
    assert_eq!(
        canonical_wedge(&cl, &[1, 0]),
        Some((CycScalar::from_int(1, 1), vec![0, 1]))
    );
    assert_eq!(
        canonical_wedge(&cl, &[0, 0]),
        Some((CycScalar::one(1), vec![0, 0]))
    );
}

#[test]
fn coboundary_examples() {
    // Trivial module, n = 1: delta lambda (x, y) = -lambda([x, y]).
    let h = catalog::heisenberg();
    let m = GradedModule::trivial(&h);
    let d1 = coboundary_matrix(&h, &m, 1);
    let mut expected = Matrix::zeros(3, 3, 1);
    // Rows xy, xz, yz; columns x, y, z.
    expected[(0, 2)] = CycScalar::from_int(-1, 1);
    assert_eq!(d1, expected);

    // n = 0: delta m (x) = phi(x) m.
    let (cl, w) = catalog::clifford_parts_over(4);
    let o = CycScalar::zero(4);
    let one = CycScalar::one(4);
    let z = CycScalar::zeta_pow(1, 4);
    let spinor = GradedModule {
        name: "spinor".into(),
        basis: vec![
            BasisVector {
                name: "v1".into(),
                degree: GroupElement(vec![0]),
            },
            BasisVector {
                name: "v2".into(),
                degree: GroupElement(vec![1]),
            },
        ],
        actions: vec![
            Matrix::from_rows(
                vec![vec![o.clone(), one.clone()], vec![one.clone(), o.clone()]],
                4,
            ),
            Matrix::from_rows(vec![vec![o.clone(), -&z], vec![z.clone(), o.clone()]], 4),
        ],
        twist: w.clone(),
    };
    let d0 = coboundary_matrix(&cl, &spinor, 0);
    // Rows (e1, v1), (e1, v2), (e2, v1), (e2, v2).
    for i in 0..2 {
        for r in 0..2 {
            for s in 0..2 {
                assert_eq!(d0[(2 * i + r, s)], spinor.actions[i][(r, s)]);
            }
        }
    }
    // That module realizes omega, so delta^2 picks it up: cohomology refuses.
    let rep = verify_complex(&cl, &w, &spinor, 2, Exec::Sequential);
    assert!(!rep.squares_zero);
    assert!(matches!(
        cohomology_dims(&cl, &spinor, 2, DegreeFilter::All, Exec::Sequential),
        Err(Error::NonzeroDefect(0))
    ));
}

#[test]
fn classical_dimensions() {
    assert_eq!(h_dims(&catalog::heisenberg(), 3), vec![1, 2, 2, 1]);
    assert_eq!(h_dims(&catalog::sl2(), 3), vec![1, 0, 0, 1]);
    assert_eq!(h_dims(&catalog::aff1(), 2), vec![1, 1, 0]);
    assert_eq!(h_dims(&catalog::abelian(1), 3), vec![1, 1, 0, 0]);
}

#[test]
fn classical_oracle_agrees() {
    for l in [
        catalog::heisenberg(),
        catalog::sl2(),
        catalog::aff1(),
        catalog::heisenberg_plus_w(),
    ] {
        let top = l.dim();
        assert_eq!(h_dims(&l, top), classical_oracle(&l, top));
    }
}

#[test]
fn euler_characteristic_matches() {
    for l in [catalog::heisenberg(), catalog::sl2(), catalog::aff1()] {
        let e = EnvelopingAlgebra::new(l.clone(), Cocycle2::zero()).unwrap();
        let ad = adjoint_truncated(&e, 2).unwrap();
        let top = l.dim();
        let rep = cohomology_dims(&l, &ad, top, DegreeFilter::All, Exec::default()).unwrap();
        let alt = |f: &dyn Fn(&BlockDims) -> usize| -> i64 {
            rep.blocks
                .iter()
                .map(|b| {
                    if b.n % 2 == 0 {
                        f(b) as i64
                    } else {
                        -(f(b) as i64)
                    }
                })
                .sum()
        };
        assert_eq!(alt(&|b| b.cochains), alt(&|b| b.cohomology));
    }
}

fn fixture_algebras() -> Vec<EnvelopingAlgebra> {
    let with = |(l, w): (ColorLieAlgebra, Cocycle2)| EnvelopingAlgebra::new(l, w).unwrap();
    vec![
        with(catalog::weyl_parts()),
        with(catalog::clifford_parts()),
        with((catalog::heisenberg(), Cocycle2::zero())),
        with((
            catalog::sl2(),
            Cocycle2::from_entries([((1, 2), CycScalar::one(1))]),
        )),
        with((catalog::aff1(), Cocycle2::zero())),
        with((catalog::super_1_1(), Cocycle2::zero())),
        with(catalog::z3z3_parts()),
    ]
}

#[test]
fn delta_squares_vanish_on_trivial_and_adjoint_modules() {
    for e in fixture_algebras() {
        let l = e.lie();
        let trivial = GradedModule::trivial(l);
        let rep = verify_complex(l, &Cocycle2::zero(), &trivial, 4, Exec::default());
        assert!(rep.squares_zero, "trivial {:?}", l.generators());
        let ad = adjoint_truncated(&e, 2).unwrap();
        let rep = verify_complex(l, &Cocycle2::zero(), &ad, 4, Exec::default());
        assert!(rep.squares_zero, "adjoint {:?}", l.generators());
    }
}

#[test]
fn weyl_twist_defect_is_omega() {
    let (l, w) = catalog::weyl_parts();
    let m = GradedModule::trivial(&l);
    let rep = verify_complex(&l, &w, &m, 2, Exec::Sequential);
    assert!(rep.squares_zero);
    assert_eq!(
        rep.twist_defect.unwrap(),
        vec![
            vec!["0".to_string(), "1".into()],
            vec!["-1".into(), "0".into()]
        ]
    );
}

#[test]
fn hochschild_examples() {
    let (l, w) = catalog::weyl_parts();
    let weyl = EnvelopingAlgebra::new(l, w).unwrap();
    let rows = hochschild_truncated(&weyl, 0, &[1, 2, 3, 4], Exec::default()).unwrap();
    assert!(rows.iter().all(|r| r.dim == 1));

    let line = EnvelopingAlgebra::new(catalog::abelian(1), Cocycle2::zero()).unwrap();
    let rows = hochschild_truncated(&line, 0, &[1, 2, 3, 4], Exec::default()).unwrap();
    assert_eq!(
        rows.iter().map(|r| r.dim).collect::<Vec<_>>(),
        vec![2, 3, 4, 5]
    );

    let h3 = EnvelopingAlgebra::new(catalog::heisenberg(), Cocycle2::zero()).unwrap();
    let rows = hochschild_truncated(&h3, 0, &[2], Exec::default()).unwrap();
    assert_eq!(rows[0].dim, 3);
}

#[test]
fn resolution_examples() {
    let h3 = EnvelopingAlgebra::new(catalog::heisenberg(), Cocycle2::zero()).unwrap();
    let one = CycScalar::one(1);
    let d1 = resolution_d(&h3, &ResElement::single((vec![], vec![0]), one.clone()));
    assert_eq!(d1, ResElement::single((vec![0], vec![]), one.clone()));
    let d2 = resolution_d(&h3, &ResElement::single((vec![], vec![0, 1]), one.clone()));
    let expected: ResElement = [
        ((vec![0], vec![1]), one.clone()),
        ((vec![1], vec![0]), -one.clone()),
        ((vec![], vec![2]), -one.clone()),
    ]
    .into_iter()
    .collect();
    assert_eq!(d2, expected);
    assert!(resolution_d(&h3, &d2).is_zero());
}

#[test]
fn resolution_checks_on_fixtures() {
    for e in fixture_algebras() {
        let rep = verify_resolution(&e, 4, 5, Exec::default()).unwrap();
        assert!(rep.dd_failures.is_empty(), "{:?}", rep.dd_failures);
        assert!(rep.koszul_exact);
        // The quotient complex is off by omega exactly when omega is nonzero.
        assert_eq!(rep.quotient_defect.is_empty(), e.omega().is_zero());
    }
}

#[test]
fn weyl_quotient_defect_is_omega() {
    let (l, w) = catalog::weyl_parts();
    let e = EnvelopingAlgebra::new(l, w).unwrap();
    let rep = verify_resolution(&e, 2, 2, Exec::Sequential).unwrap();
    assert_eq!(rep.quotient_defect.len(), 1);
    assert_eq!(
        rep.quotient_defect[0].value.get("|").map(String::as_str),
        Some("1")
    );
}

#[test]
fn mutated_structure_constants_break_the_resolution() {
    let mut l = catalog::heisenberg();
    l.set_bracket(0, 2, crate::colorlie::LieVec::single(0, l.one()))
        .unwrap();
    let e = EnvelopingAlgebra::untrusted(l, Cocycle2::zero(), None, Some(100_000)).unwrap();
    let rep = verify_resolution(&e, 3, 2, Exec::Sequential).unwrap();
    assert!(!rep.dd_failures.is_empty());
    assert!(!rep.ok);
}

#[test]
fn sequential_and_parallel_agree() {
    let e = EnvelopingAlgebra::new(catalog::sl2(), Cocycle2::zero()).unwrap();
    let ad = adjoint_truncated(&e, 2).unwrap();
    let a = cohomology_dims(e.lie(), &ad, 3, DegreeFilter::All, Exec::Sequential).unwrap();
    let b = cohomology_dims(e.lie(), &ad, 3, DegreeFilter::All, Exec::default()).unwrap();
    assert_eq!(a.blocks, b.blocks);
}
