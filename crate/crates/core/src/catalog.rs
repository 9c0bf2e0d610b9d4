//! Small standard algebras, built directly in code.

use crate::colorlie::{Cocycle2, ColorLieAlgebra, Generator, LieVec};
use crate::grading::{Bicharacter, Grading, GroupElement, GroupSpec};
use crate::scalar::CycScalar;

fn gens(names: &[&str], degrees: &[&[i64]]) -> Vec<Generator> {
    names
        .iter()
        .zip(degrees)
        .map(|(n, d)| Generator {
            name: n.to_string(),
            degree: GroupElement(d.to_vec()),
        })
        .collect()
}

/// Bracket entries `(i, j, [(k, c)])` meaning `[x_i, x_j] = sum c x_k`.
type BracketTable<'a> = &'a [(usize, usize, &'a [(usize, i64)])];

fn classical(names: &[&str], brackets: BracketTable) -> ColorLieAlgebra {
    let degs: Vec<&[i64]> = names.iter().map(|_| &[][..]).collect();
    let mut l = ColorLieAlgebra::new(Grading::trivial(1), gens(names, &degs)).unwrap();
    for &(i, j, coeffs) in brackets {
        let v = coeffs
            .iter()
            .map(|&(k, c)| (k, CycScalar::from_int(c, 1)))
            .collect::<LieVec>();
        l.set_bracket(i, j, v).unwrap();
    }
    l
}

fn int_cocycle(entries: &[((usize, usize), i64)]) -> Cocycle2 {
    Cocycle2::from_entries(entries.iter().map(|&(p, v)| (p, CycScalar::from_int(v, 1))))
}

/// Abelian span(x_1..x_d), trivial grading.
pub fn abelian(d: usize) -> ColorLieAlgebra {
    let names: Vec<String> = (1..=d).map(|i| format!("x{i}")).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    classical(&refs, &[])
}

/// h3: [x, y] = z.
pub fn heisenberg() -> ColorLieAlgebra {
    classical(&["x", "y", "z"], &[(0, 1, &[(2, 1)])])
}

/// h3 plus a central w (index 3).
pub fn heisenberg_plus_w() -> ColorLieAlgebra {
    classical(&["x", "y", "z", "w"], &[(0, 1, &[(2, 1)])])
}

/// sl2 on (h, e, f): [h,e] = 2e, [h,f] = -2f, [e,f] = h.
pub fn sl2() -> ColorLieAlgebra {
    classical(
        &["h", "e", "f"],
        &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
    )
}

/// aff(1): [x, y] = y.
pub fn aff1() -> ColorLieAlgebra {
    classical(&["x", "y"], &[(0, 1, &[(1, 1)])])
}

/// Abelian span(q, p) with omega(q, p) = 1.
pub fn weyl_parts() -> (ColorLieAlgebra, Cocycle2) {
    let l = classical(&["q", "p"], &[]);
    (l, int_cocycle(&[((0, 1), 1)]))
}

/// Odd abelian span(e1, e2) over Z_2 with omega(e_i, e_j) = 2 delta_ij.
pub fn clifford_parts() -> (ColorLieAlgebra, Cocycle2) {
    clifford_parts_over(1)
}

/// As [`clifford_parts`], with scalars in Q(zeta_order).
pub fn clifford_parts_over(order: u32) -> (ColorLieAlgebra, Cocycle2) {
    let grading = Grading {
        field_order: order,
        bicharacter: Bicharacter {
            values: vec![vec![CycScalar::from_int(-1, order)]],
        },
        ..Grading::super_grading()
    };
    let l = ColorLieAlgebra::new(grading, gens(&["e1", "e2"], &[&[1], &[1]])).unwrap();
    let two = CycScalar::from_int(2, order);
    (
        l,
        Cocycle2::from_entries([((0, 0), two.clone()), ((1, 1), two)]),
    )
}

/// One even x and one odd theta over Z_2, abelian.
pub fn super_1_1() -> ColorLieAlgebra {
    ColorLieAlgebra::new(
        Grading::super_grading(),
        gens(&["x", "theta"], &[&[0], &[1]]),
    )
    .unwrap()
}

/// Z_3 x Z_3 color algebra: a (1,0), b (0,1), c (1,1), a2 (2,0) with
/// [a, b] = c and eps((1,0),(0,1)) = z_3. omega(a, a2) = 1.
pub fn z3z3_parts() -> (ColorLieAlgebra, Cocycle2) {
    let z = |k| CycScalar::zeta_pow(k, 3);
    let grading = Grading {
        group: GroupSpec {
            free_rank: 0,
            torsion: vec![3, 3],
        },
        bicharacter: Bicharacter {
            values: vec![vec![z(0), z(1)], vec![z(2), z(0)]],
        },
        field_order: 3,
    };
    let mut l = ColorLieAlgebra::new(
        grading,
        gens(
            &["a", "b", "c", "a2"],
            &[&[1, 0], &[0, 1], &[1, 1], &[2, 0]],
        ),
    )
    .unwrap();
    l.set_bracket(0, 1, LieVec::single(2, z(0))).unwrap();
    let w = Cocycle2::from_entries([((0, 3), z(0))]);
    (l, w)
}
