//! The eps-symmetric algebra S(L) = gr U_omega(L): symbols and dimension counts.

use std::collections::BTreeMap;

use serde::Serialize;

use super::{EnvelopingAlgebra, PbwElement, Word};
use crate::error::{Error, Result};
use crate::grading::GroupElement;
use crate::lincomb::LinComb;
use crate::scalar::CycScalar;

/// Element of S(L) on ordered monomials (odd generators square to zero).
pub type SymElement = LinComb<Word>;

/// Sorts a word into order using x y = eps(x, y) y x; zero if an odd
/// generator repeats.
fn sym_normalize(e: &EnvelopingAlgebra, w: &[usize]) -> Option<(CycScalar, Word)> {
    let mut w = w.to_vec();
    let mut sign = e.one();
    // Insertion sort by rank, one adjacent swap at a time.
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && e.rank[w[j - 1]] > e.rank[w[j]] {
            sign = &sign * e.lie.eps(w[j - 1], w[j]);
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && e.lie.is_odd(p[0])) {
        return None;
    }
    Some((sign, w))
}

pub fn sym_mul(e: &EnvelopingAlgebra, a: &SymElement, b: &SymElement) -> SymElement {
    let mut out = SymElement::new();
    for (u, x) in a {
        for (v, y) in b {
            let mut w = u.clone();
            w.extend_from_slice(v);
            if let Some((s, w)) = sym_normalize(e, &w) {
                out.add_term(w, &(x * y) * &s);
            }
        }
    }
    out
}

/// Top filtration component of a nonzero element.
pub fn symbol(a: &PbwElement) -> Result<SymElement> {
    let top = EnvelopingAlgebra::filtration_degree(a).ok_or(Error::ZeroSymbol)?;
    Ok(a.iter()
        .filter(|(w, _)| w.len() == top)
        .map(|(w, c)| (w.clone(), c.clone()))
        .collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DimsRow {
    pub n: usize,
    pub degree: Vec<i64>,
    pub pbw: usize,
    pub symmetric: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct DimsTable {
    pub max_degree: usize,
    pub rows: Vec<DimsRow>,
    /// Total count per filtration degree n.
    pub per_degree: Vec<usize>,
    pub agrees: bool,
}

/// PBW monomials of each length and G-degree against the Hilbert series of
/// S(L) (even generators polynomial, odd generators exterior).
pub fn dims(e: &EnvelopingAlgebra, max_degree: usize) -> DimsTable {
    let mut pbw: BTreeMap<(usize, GroupElement), usize> = BTreeMap::new();
    for w in e.pbw_monomials(max_degree) {
        *pbw.entry((w.len(), e.word_degree(&w))).or_default() += 1;
    }

    let g = e.lie.grading();
    let mut series: BTreeMap<(usize, GroupElement), usize> = BTreeMap::new();
    series.insert((0, g.identity()), 1);
    for i in 0..e.dim() {
        let top = if e.lie.is_odd(i) { 1 } else { max_degree };
        let mut next: BTreeMap<(usize, GroupElement), usize> = BTreeMap::new();
        for ((n, deg), count) in &series {
            let mut d = deg.clone();
            for k in 0..=top {
                if n + k > max_degree {
                    break;
                }
                *next.entry((n + k, d.clone())).or_default() += count;
                d = g.compose(&d, e.lie.degree(i));
            }
        }
        series = next;
    }

    let mut keys: Vec<&(usize, GroupElement)> = pbw.keys().chain(series.keys()).collect();
    keys.sort();
    keys.dedup();
    let rows: Vec<DimsRow> = keys
        .into_iter()
        .map(|k| DimsRow {
            n: k.0,
            degree: k.1 .0.clone(),
            pbw: pbw.get(k).copied().unwrap_or(0),
            symmetric: series.get(k).copied().unwrap_or(0),
        })
        .collect();
    let mut per_degree = vec![0; max_degree + 1];
    for r in &rows {
        per_degree[r.n] += r.pbw;
    }
    DimsTable {
        max_degree,
        agrees: rows.iter().all(|r| r.pbw == r.symmetric),
        rows,
        per_degree,
    }
}
