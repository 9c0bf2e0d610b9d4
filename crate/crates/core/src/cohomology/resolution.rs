//! The free resolution U (x) wedge^n L with its differential, and the
//! Koszul complex of the associated graded.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{canonical_wedge, eps_prefix, wedge_basis, Wedge};
use crate::colorlie::{central_extension, Cocycle2};
use crate::enveloping::{sym_mul, EnvelopingAlgebra, PbwElement, SymElement, Word};
use crate::error::Result;
use crate::exec::Exec;
use crate::linalg::Matrix;
use crate::lincomb::LinComb;

/// Sum of u (x) <wedge> with u an ordered monomial.
pub type ResElement = LinComb<(Word, Wedge)>;

/// ```text
/// d(u (x) <x_1..x_n>) = sum_i (-1)^(i+1) eps_i u x_i (x) <..^x_i..>
///   + sum_{i<j} (-1)^(i+j) eps_i eps_j eps(x_j, x_i) u (x) <[x_i,x_j], ..^x_i..^x_j..>
/// ```
///
/// with products and brackets taken in `e`.
pub fn resolution_d(e: &EnvelopingAlgebra, elt: &ResElement) -> ResElement {
    let l = e.lie();
    let sgn = |k: usize| {
        if k.is_multiple_of(2) {
            e.one()
        } else {
            -e.one()
        }
    };
    let mut out = ResElement::new();
    for ((u, w), c) in elt {
        let eps_i = eps_prefix(l, w);
        let u_el = PbwElement::single(u.clone(), e.one());
        for i in 0..w.len() {
            let mut rest = w.clone();
            rest.remove(i);
            let f = &(c * &sgn(i)) * &eps_i[i];
            for (v, a) in &e.multiply(&u_el, &e.generator(w[i])) {
                out.add_term((v.clone(), rest.clone()), &f * a);
            }
            for j in i + 1..w.len() {
                let coef = &(&(&(c * &sgn(i + j)) * &eps_i[i]) * &eps_i[j]) * l.eps(w[j], w[i]);
                let mut rest = w.clone();
                rest.remove(j);
                rest.remove(i);
                for (&k, b) in &l.bracket(w[i], w[j]) {
                    let seq: Vec<usize> = std::iter::once(k).chain(rest.iter().copied()).collect();
                    if let Some((s, cw)) = canonical_wedge(l, &seq) {
                        out.add_term((u.clone(), cw), &(&coef * b) * &s);
                    }
                }
            }
        }
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct DdFailure {
    /// Size of the wedge d d was applied to.
    pub n: usize,
    pub wedge: Vec<String>,
    pub value: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct KoszulRow {
    pub total_degree: usize,
    pub n: usize,
    pub dim: usize,
    pub rank_out: usize,
    pub rank_in: usize,
    pub homology: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResolutionReport {
    pub n_max: usize,
    pub deg_max: usize,
    /// Basis wedges of L_omega checked in U(L_omega) (x) wedge L_omega.
    pub checked: usize,
    pub dd_failures: Vec<DdFailure>,
    /// d d on U_omega(L) (x) wedge L, which picks up omega on pairs.
    pub quotient_defect: Vec<DdFailure>,
    pub koszul: Vec<KoszulRow>,
    pub koszul_exact: bool,
    pub ok: bool,
}

fn dd_failures(e: &EnvelopingAlgebra, n_max: usize, exec: Exec) -> (usize, Vec<DdFailure>) {
    let l = e.lie();
    let wedges: Vec<Wedge> = (2..=n_max).flat_map(|n| wedge_basis(l, n)).collect();
    let fails = exec.flat_map(&wedges, |w| {
        let start = ResElement::single((vec![], w.clone()), e.one());
        let dd = resolution_d(e, &resolution_d(e, &start));
        if dd.is_zero() {
            return vec![];
        }
        let value = dd
            .iter()
            .map(|((u, cw), c)| {
                let names: Vec<&str> = cw
                    .iter()
                    .map(|&k| l.generators()[k].name.as_str())
                    .collect();
                (
                    format!("{}|{}", e.word_name(u), names.join(",")),
                    c.to_string(),
                )
            })
            .collect();
        vec![DdFailure {
            n: w.len(),
            wedge: w.iter().map(|&k| l.generators()[k].name.clone()).collect(),
            value,
        }]
    });
    (wedges.len(), fails)
}

/// Koszul differential on S(L) (x) wedge^n L:
/// s (x) <x_1..x_n> -> sum_i (-1)^(i+1) eps_i s x_i (x) <..^x_i..>.
fn koszul(e: &EnvelopingAlgebra, deg_max: usize, exec: Exec) -> Vec<KoszulRow> {
    let l = e.lie();
    let monomials = e.pbw_monomials(deg_max);
    let sym_of = |k: usize| -> Vec<&Word> { monomials.iter().filter(|w| w.len() == k).collect() };
    let basis = |t: usize, n: usize| -> Vec<(Word, Wedge)> {
        if n > t {
            return vec![];
        }
        let wedges = wedge_basis(l, n);
        sym_of(t - n)
            .into_iter()
            .flat_map(|s| wedges.iter().map(move |w| (s.clone(), w.clone())))
            .collect()
    };
    let matrix = |t: usize, n: usize| -> Matrix {
        // d_n : K_n -> K_{n-1} at total degree t.
        let src = basis(t, n);
        let dst = basis(t, n - 1);
        let at: BTreeMap<&(Word, Wedge), usize> =
            dst.iter().enumerate().map(|(i, b)| (b, i)).collect();
        let mut m = Matrix::zeros(dst.len(), src.len(), l.field_order());
        let sgn = |k: usize| {
            if k.is_multiple_of(2) {
                e.one()
            } else {
                -e.one()
            }
        };
        for (col, (s, w)) in src.iter().enumerate() {
            let eps_i = eps_prefix(l, w);
            let s_el = SymElement::single(s.clone(), e.one());
            for i in 0..w.len() {
                let mut rest = w.clone();
                rest.remove(i);
                let f = &sgn(i) * &eps_i[i];
                let prod = sym_mul(e, &s_el, &SymElement::single(vec![w[i]], e.one()));
                for (v, a) in &prod {
                    let row = at[&(v.clone(), rest.clone())];
                    let cur = &m[(row, col)] + &(&f * a);
                    m[(row, col)] = cur;
                }
            }
        }
        m
    };
    let jobs: Vec<(usize, usize)> = (1..=deg_max)
        .flat_map(|t| (1..=t).map(move |n| (t, n)))
        .collect();
    exec.map(&jobs, |&(t, n)| {
        let dim = basis(t, n).len();
        let rank_out = matrix(t, n).rank();
        let rank_in = if n < t { matrix(t, n + 1).rank() } else { 0 };
        KoszulRow {
            total_degree: t,
            n,
            dim,
            rank_out,
            rank_in,
            homology: dim - rank_out - rank_in,
        }
    })
}

/// d d = 0 on U(L_omega) (x) wedge L_omega, the omega-defect of the quotient
/// complex U_omega(L) (x) wedge L, and exactness of the Koszul complex of
/// gr U_omega(L) in positive homological degree.
pub fn verify_resolution(
    e: &EnvelopingAlgebra,
    n_max: usize,
    deg_max: usize,
    exec: Exec,
) -> Result<ResolutionReport> {
    let ext = central_extension(e.lie(), e.omega())?;
    let e_ext = EnvelopingAlgebra::untrusted(ext, Cocycle2::zero(), None, None)?;
    let (checked, dd) = dd_failures(&e_ext, n_max, exec);
    let (_, quotient_defect) = dd_failures(e, n_max, exec);
    let koszul = koszul(e, deg_max, exec);
    let koszul_exact = koszul.iter().all(|r| r.homology == 0);
    Ok(ResolutionReport {
        n_max,
        deg_max,
        checked,
        ok: dd.is_empty() && koszul_exact,
        dd_failures: dd,
        quotient_defect,
        koszul,
        koszul_exact,
    })
}
