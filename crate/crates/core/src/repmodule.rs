//! Finite-dimensional graded modules given by matrices, the induced action
//! of the enveloping algebra, and truncated adjoint modules.

use std::collections::BTreeMap;

use crate::colorlie::{Cocycle2, ColorLieAlgebra};
use crate::enveloping::{EnvelopingAlgebra, PbwElement, Word};
use crate::error::{Error, Result};
use crate::grading::GroupElement;
use crate::linalg::Matrix;
use crate::report::Violation;
use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisVector {
    pub name: String,
    pub degree: GroupElement,
}

/// phi(x_i) for every generator, as matrices acting on column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedModule {
    pub name: String,
    pub basis: Vec<BasisVector>,
    pub actions: Vec<Matrix>,
    /// The cocycle the module relation is checked against.
    pub twist: Cocycle2,
}

impl GradedModule {
    /// The ground field in degree e with every generator acting by zero.
    pub fn trivial(l: &ColorLieAlgebra) -> Self {
        GradedModule {
            name: "trivial".into(),
            basis: vec![BasisVector {
                name: "1".into(),
                degree: l.grading().identity(),
            }],
            actions: vec![Matrix::zeros(1, 1, l.field_order()); l.dim()],
            twist: Cocycle2::zero(),
        }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self, s: usize) -> &GroupElement {
        &self.basis[s].degree
    }

    /// phi applied to an element of L.
    pub fn act(&self, l: &ColorLieAlgebra, v: &crate::colorlie::LieVec) -> Matrix {
        let mut acc = Matrix::zeros(self.dim(), self.dim(), l.field_order());
        for (&k, c) in v {
            acc = acc.add(&self.actions[k].scale(c));
        }
        acc
    }
}

/// phi(x)phi(y) - eps phi(y)phi(x) - phi([x, y]), before subtracting any twist.
pub fn commutator_defect(l: &ColorLieAlgebra, m: &GradedModule, i: usize, j: usize) -> Matrix {
    let (a, b) = (&m.actions[i], &m.actions[j]);
    a.mul(b)
        .sub(&b.mul(a).scale(l.eps(i, j)))
        .sub(&m.act(l, &l.bracket(i, j)))
}

/// Left side minus right side of the module relation for (x_i, x_j) with
/// twist `w`.
pub fn relation_defect(
    l: &ColorLieAlgebra,
    w: &Cocycle2,
    m: &GradedModule,
    i: usize,
    j: usize,
) -> Matrix {
    let id = Matrix::identity(m.dim(), l.field_order());
    commutator_defect(l, m, i, j).sub(&id.scale(&w.value(l, i, j)))
}

/// The scalar cocycle the module actually realizes, if every commutator
/// defect is a multiple of the identity.
pub fn measured_twist(l: &ColorLieAlgebra, m: &GradedModule) -> Option<Cocycle2> {
    let d = l.dim();
    let n = m.dim();
    let mut entries = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let c = commutator_defect(l, m, i, j);
            let s = if n == 0 { l.zero() } else { c[(0, 0)].clone() };
            if c != Matrix::identity(n, l.field_order()).scale(&s) {
                return None;
            }
            entries.push(((i, j), s));
        }
    }
    Some(Cocycle2::from_entries(entries))
}

fn matrix_literal(m: &Matrix) -> String {
    let rows: Vec<String> = m
        .to_literals()
        .into_iter()
        .map(|r| format!("[{}]", r.join(", ")))
        .collect();
    format!("[{}]", rows.join(", "))
}

/// Shape, degree compatibility and the module relation against `w`.
pub fn validate_module(l: &ColorLieAlgebra, w: &Cocycle2, m: &GradedModule) -> Vec<Violation> {
    let d = l.dim();
    let n = m.dim();
    let mut out = Vec::new();
    if m.actions.len() != d {
        out.push(Violation::new(
            "module_shape",
            vec![],
            format!("{} action matrices for {d} generators", m.actions.len()),
        ));
        return out;
    }
    for (i, a) in m.actions.iter().enumerate() {
        if a.rows() != n || a.cols() != n || a.order() != l.field_order() {
            out.push(Violation::new(
                "module_shape",
                vec![i],
                format!(
                    "action is {}x{}, module has dimension {n}",
                    a.rows(),
                    a.cols()
                ),
            ));
        }
    }
    if m.basis
        .iter()
        .any(|b| b.degree.0.len() != l.grading().group.rank())
    {
        out.push(Violation::new(
            "module_shape",
            vec![],
            "basis degree of wrong length",
        ));
    }
    if !out.is_empty() {
        return out;
    }
    for (i, a) in m.actions.iter().enumerate() {
        for r in 0..n {
            for s in 0..n {
                if !a[(r, s)].is_zero()
                    && *m.degree(r) != l.grading().compose(l.degree(i), m.degree(s))
                {
                    out.push(Violation::new(
                        "module_degree",
                        vec![i, r, s],
                        format!("entry {} breaks the grading", a[(r, s)]),
                    ));
                }
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            let defect = relation_defect(l, w, m, i, j);
            if !defect.is_zero() {
                out.push(Violation::new(
                    "module_relation",
                    vec![i, j],
                    matrix_literal(&defect),
                ));
            }
        }
    }
    out
}

/// Matrices of U_omega(L) elements on a module whose relation holds with
/// twist omega.
#[derive(Debug)]
pub struct InducedAction<'a> {
    e: &'a EnvelopingAlgebra,
    m: &'a GradedModule,
}

pub fn induce_action<'a>(
    e: &'a EnvelopingAlgebra,
    m: &'a GradedModule,
) -> Result<InducedAction<'a>> {
    let problems = validate_module(e.lie(), e.omega(), m);
    if let Some(v) = problems.first() {
        return Err(Error::ModuleMismatch(format!(
            "{} violation(s), first {} at {:?}: {}",
            problems.len(),
            v.axiom,
            v.site,
            v.detail
        )));
    }
    Ok(InducedAction { e, m })
}

impl InducedAction<'_> {
    pub fn word(&self, w: &[usize]) -> Matrix {
        let order = self.e.lie().field_order();
        w.iter()
            .fold(Matrix::identity(self.m.dim(), order), |acc, &i| {
                acc.mul(&self.m.actions[i])
            })
    }

    pub fn element(&self, a: &PbwElement) -> Matrix {
        let order = self.e.lie().field_order();
        a.iter().fold(
            Matrix::zeros(self.m.dim(), self.m.dim(), order),
            |acc, (w, c)| acc.add(&self.word(w).scale(c)),
        )
    }
}

/// ad(x) m = x m - eps(|x|, |m|) m x on PBW monomials of length at most `n`.
///
/// The closure of U_{<=n} under ad is checked, not assumed. The result
/// carries zero twist: ad kills the central part of omega.
pub fn adjoint_truncated(e: &EnvelopingAlgebra, n: usize) -> Result<GradedModule> {
    let l = e.lie();
    let basis_words: Vec<Word> = e.pbw_monomials(n);
    let index: BTreeMap<&Word, usize> = basis_words
        .iter()
        .enumerate()
        .map(|(p, w)| (w, p))
        .collect();
    let dim = basis_words.len();
    let mut actions = Vec::with_capacity(l.dim());
    for i in 0..l.dim() {
        let x = e.generator(i);
        let mut mat = Matrix::zeros(dim, dim, l.field_order());
        for (s, w) in basis_words.iter().enumerate() {
            let mw = PbwElement::single(w.clone(), e.one());
            let sign: CycScalar = e.eps_words(&[i], w);
            let img = e.multiply(&x, &mw).sub(&e.multiply(&mw, &x).scale(&sign));
            for (u, c) in &img {
                let r = *index.get(u).ok_or(Error::Closure(i))?;
                mat[(r, s)] = c.clone();
            }
        }
        actions.push(mat);
    }
    Ok(GradedModule {
        name: format!("ad<={n}"),
        basis: basis_words
            .iter()
            .map(|w| BasisVector {
                name: if w.is_empty() {
                    "1".into()
                } else {
                    e.word_name(w)
                },
                degree: e.word_degree(w),
            })
            .collect(),
        actions,
        twist: Cocycle2::zero(),
    })
}
