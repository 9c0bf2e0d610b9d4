//! Filtered isomorphism U_omega1(L) -> U_omega2(L), x |-> x + lambda(x),
//! for cohomologous cocycles.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{symbol, EnvelopingAlgebra, PbwElement};
use crate::colorlie::{coboundary, Cochain1};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Debug, Clone, Serialize)]
pub struct IsoReport {
    pub lambda: BTreeMap<String, String>,
    pub max_degree: usize,
    /// Relations of the source algebra checked in the target.
    pub relations_checked: usize,
    /// Relation images that did not normalize to zero.
    pub relation_failures: Vec<BTreeMap<String, String>>,
    pub basis_size: usize,
    /// psi(m) - m lies in strictly lower filtration for every basis monomial.
    pub unitriangular: bool,
    pub image_rank: usize,
    /// symbol(psi(m)) = m for every basis monomial.
    pub symbols_identity: bool,
    pub ok: bool,
}

fn psi_generator(e2: &EnvelopingAlgebra, lambda: &Cochain1, i: usize) -> PbwElement {
    let mut g = e2.generator(i);
    g.add_term(vec![], lambda.get(e2.lie(), i));
    g
}

fn psi_word(e2: &EnvelopingAlgebra, lambda: &Cochain1, w: &[usize]) -> PbwElement {
    w.iter().fold(e2.unit(), |acc, &i| {
        e2.multiply(&acc, &psi_generator(e2, lambda, i))
    })
}

/// Checks that psi: x_i -> x_i + lambda(x_i) is a filtered isomorphism
/// `e1 -> e2` up to filtration degree `max_degree`.
pub fn filtered_iso(
    e1: &EnvelopingAlgebra,
    e2: &EnvelopingAlgebra,
    lambda: &Cochain1,
    max_degree: usize,
) -> Result<IsoReport> {
    let l = e1.lie();
    if l != e2.lie() || e1.order() != e2.order() {
        return Err(Error::AlgebraMismatch);
    }
    let expected = e1.omega().sub(l, e2.omega());
    if coboundary(l, lambda)?.normalized(l) != expected.normalized(l) {
        return Err(Error::NotCohomologous);
    }

    let d = l.dim();
    let mut relation_failures = Vec::new();
    for i in 0..d {
        for j in 0..d {
            let pi = psi_generator(e2, lambda, i);
            let pj = psi_generator(e2, lambda, j);
            let mut r = e2.multiply(&pi, &pj);
            r = r.sub(&e2.multiply(&pj, &pi).scale(l.eps(i, j)));
            for (&k, c) in &l.bracket(i, j) {
                r = r.sub(&psi_generator(e2, lambda, k).scale(c));
            }
            r.add_term(vec![], -e1.omega().value(l, i, j));
            if !r.is_zero() {
                let mut m = e2.to_json_map(&r);
                m.insert("relation".into(), format!("({i},{j})"));
                relation_failures.push(m);
            }
        }
    }

    let basis = e1.pbw_monomials(max_degree);
    let index: BTreeMap<&Vec<usize>, usize> =
        basis.iter().enumerate().map(|(p, w)| (w, p)).collect();
    let mut image = Matrix::zeros(basis.len(), basis.len(), l.field_order());
    let mut unitriangular = true;
    let mut symbols_identity = true;
    for (col, m) in basis.iter().enumerate() {
        let img = psi_word(e2, lambda, m);
        let lower = img.sub(&PbwElement::single(m.clone(), e2.one()));
        if lower.keys().any(|w| w.len() >= m.len()) {
            unitriangular = false;
        }
        match symbol(&img) {
            Ok(s) if s == PbwElement::single(m.clone(), e2.one()) => {}
            _ => symbols_identity = false,
        }
        for (w, c) in &img {
            match index.get(w) {
                Some(&row) => image[(row, col)] = c.clone(),
                None => unitriangular = false,
            }
        }
    }
    let image_rank = image.rank();
    let ok = relation_failures.is_empty()
        && unitriangular
        && symbols_identity
        && image_rank == basis.len();
    Ok(IsoReport {
        lambda: lambda
            .values
            .iter()
            .map(|(&k, v)| (l.generators()[k].name.clone(), v.to_string()))
            .collect(),
        max_degree,
        relations_checked: d * d,
        relation_failures,
        basis_size: basis.len(),
        unitriangular,
        image_rank,
        symbols_identity,
        ok,
    })
}
