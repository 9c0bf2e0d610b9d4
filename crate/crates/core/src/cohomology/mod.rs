//! eps-exterior powers, the Chevalley-Eilenberg cochain complex with
//! coefficients in a graded module, its cohomology per G-degree, and
//! truncated Hochschild cohomology through adjoint modules.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::colorlie::{Cocycle2, ColorLieAlgebra};
use crate::enveloping::EnvelopingAlgebra;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grading::GroupElement;
use crate::linalg::Matrix;
use crate::repmodule::{adjoint_truncated, measured_twist, GradedModule};
use crate::scalar::CycScalar;

mod resolution;
#[cfg(test)]
mod tests;

pub use resolution::{
    resolution_d, verify_resolution, DdFailure, KoszulRow, ResElement, ResolutionReport,
};

/// Generator indices, weakly increasing; strictly at even generators.
pub type Wedge = Vec<usize>;

/// Basis of the n-th eps-exterior power in lexicographic order.
pub fn wedge_basis(l: &ColorLieAlgebra, n: usize) -> Vec<Wedge> {
    fn extend(l: &ColorLieAlgebra, n: usize, cur: &mut Wedge, out: &mut Vec<Wedge>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        let start = match cur.last() {
            None => 0,
            Some(&k) if l.is_odd(k) => k,
            Some(&k) => k + 1,
        };
        for k in start..l.dim() {
            cur.push(k);
            extend(l, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    extend(l, n, &mut Vec::with_capacity(n), &mut out);
    out
}

/// Rewrites an arbitrary sequence as sign * basis wedge, using
/// <.., a, b, ..> = -eps(a, b) <.., b, a, ..>. None if it vanishes.
pub fn canonical_wedge(l: &ColorLieAlgebra, seq: &[usize]) -> Option<(CycScalar, Wedge)> {
    let mut w = seq.to_vec();
    let mut sign = l.one();
    for i in 1..w.len() {
        let mut j = i;
        while j > 0 && w[j - 1] > w[j] {
            sign = -(&sign * l.eps(w[j - 1], w[j]));
            w.swap(j - 1, j);
            j -= 1;
        }
    }
    if w.windows(2).any(|p| p[0] == p[1] && !l.is_odd(p[0])) {
        return None;
    }
    Some((sign, w))
}

/// eps_i = prod_{h < i} eps(|x_h|, |x_i|) for each position of `w`.
pub fn eps_prefix(l: &ColorLieAlgebra, w: &[usize]) -> Vec<CycScalar> {
    (0..w.len())
        .map(|i| w[..i].iter().fold(l.one(), |acc, &h| &acc * l.eps(h, w[i])))
        .collect()
}

pub fn wedge_degree(l: &ColorLieAlgebra, w: &[usize]) -> GroupElement {
    w.iter().fold(l.grading().identity(), |acc, &i| {
        l.grading().compose(&acc, l.degree(i))
    })
}

/// Group element label used in report keys; "e" for the trivial group.
pub fn degree_label(g: &GroupElement) -> String {
    if g.0.is_empty() {
        "e".into()
    } else {
        g.to_string()
    }
}

/// Hom(wedge^n L, M): basis pairs (wedge, module basis vector).
#[derive(Debug, Clone)]
pub struct CochainSpace {
    pub n: usize,
    pub wedges: Vec<Wedge>,
    /// (wedge position, module basis index) per cochain basis vector.
    pub pairs: Vec<(usize, usize)>,
    /// |m_s| - |w| for each basis vector.
    pub degrees: Vec<GroupElement>,
    wedge_index: BTreeMap<Wedge, usize>,
}

impl CochainSpace {
    pub fn new(l: &ColorLieAlgebra, m: &GradedModule, n: usize) -> Self {
        let g = l.grading();
        let wedges = wedge_basis(l, n);
        let mut pairs = Vec::with_capacity(wedges.len() * m.dim());
        let mut degrees = Vec::with_capacity(wedges.len() * m.dim());
        for (wi, w) in wedges.iter().enumerate() {
            let inv = g.invert(&wedge_degree(l, w));
            for s in 0..m.dim() {
                pairs.push((wi, s));
                degrees.push(g.compose(m.degree(s), &inv));
            }
        }
        let wedge_index = wedges
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        CochainSpace {
            n,
            wedges,
            pairs,
            degrees,
            wedge_index,
        }
    }

    pub fn dim(&self) -> usize {
        self.pairs.len()
    }

    pub fn position(&self, wedge: &[usize], s: usize, module_dim: usize) -> Option<usize> {
        self.wedge_index.get(wedge).map(|&wi| wi * module_dim + s)
    }

    /// Basis positions of G-degree `g`.
    pub fn block(&self, g: &GroupElement) -> Vec<usize> {
        (0..self.dim()).filter(|&p| self.degrees[p] == *g).collect()
    }
}

/// Sparse matrix of the coboundary C^n -> C^{n+1}, keyed (row, col).
pub fn coboundary_entries(
    l: &ColorLieAlgebra,
    m: &GradedModule,
    src: &CochainSpace,
    dst: &CochainSpace,
) -> BTreeMap<(usize, usize), CycScalar> {
    let dm = m.dim();
    let mut out: BTreeMap<(usize, usize), CycScalar> = BTreeMap::new();
    let mut add = |r: usize, c: usize, v: CycScalar| {
        if v.is_zero() {
            return;
        }
        let e = out.entry((r, c)).or_insert_with(|| l.zero());
        *e = &*e + &v;
    };
    let sgn = |k: usize| {
        if k.is_multiple_of(2) {
            l.one()
        } else {
            -l.one()
        }
    };
    for w in &dst.wedges {
        let eps_i = eps_prefix(l, w);
        for i in 0..w.len() {
            // Positions are 1-based in the sign (-1)^(i+1).
            let x = w[i];
            let mut rest = w.clone();
            rest.remove(i);
            let front = &sgn(i) * &eps_i[i];
            for s in 0..dm {
                let Some(col) = src.position(&rest, s, dm) else {
                    continue;
                };
                for r in 0..dm {
                    let a = &m.actions[x][(r, s)];
                    if !a.is_zero() {
                        let row = dst
                            .position(w, r, dm)
                            .expect("target wedge is a basis wedge");
                        add(row, col, &front * a);
                    }
                }
            }
            for j in i + 1..w.len() {
                let y = w[j];
                let coef = &(&(&sgn(i + j) * &eps_i[i]) * &eps_i[j]) * l.eps(y, x);
                let mut rest = w.clone();
                rest.remove(j);
                rest.remove(i);
                for (&k, c) in &l.bracket(x, y) {
                    let seq: Vec<usize> = std::iter::once(k).chain(rest.iter().copied()).collect();
                    let Some((s2, cw)) = canonical_wedge(l, &seq) else {
                        continue;
                    };
                    let v = &(&coef * c) * &s2;
                    for s in 0..dm {
                        let col = src.position(&cw, s, dm).expect("canonical wedge");
                        let row = dst.position(w, s, dm).expect("target wedge");
                        add(row, col, v.clone());
                    }
                }
            }
        }
    }
    out
}

/// Full coboundary matrix C^n -> C^{n+1} in the enumerated bases.
pub fn coboundary_matrix(l: &ColorLieAlgebra, m: &GradedModule, n: usize) -> Matrix {
    let src = CochainSpace::new(l, m, n);
    let dst = CochainSpace::new(l, m, n + 1);
    let mut mat = Matrix::zeros(dst.dim(), src.dim(), l.field_order());
    for ((r, c), v) in coboundary_entries(l, m, &src, &dst) {
        mat[(r, c)] = v;
    }
    mat
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DegreeFilter {
    Identity,
    All,
}

impl FromStr for DegreeFilter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "identity" => Ok(DegreeFilter::Identity),
            "all" => Ok(DegreeFilter::All),
            other => Err(Error::Input(format!(
                "degree filter must be identity or all, got {other:?}"
            ))),
        }
    }
}

impl fmt::Display for DegreeFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegreeFilter::Identity => "identity",
            DegreeFilter::All => "all",
        })
    }
}

/// Cochain spaces C^0..C^top and the coboundaries between them, split into
/// G-degree blocks.
#[derive(Debug, Clone)]
pub struct Complex {
    pub spaces: Vec<CochainSpace>,
    /// deltas[n][g]: block of C^n -> C^{n+1} in degree g.
    pub deltas: Vec<BTreeMap<GroupElement, Matrix>>,
    pub degrees: Vec<GroupElement>,
}

impl Complex {
    pub fn build(
        l: &ColorLieAlgebra,
        m: &GradedModule,
        top: usize,
        filter: DegreeFilter,
        exec: Exec,
    ) -> Self {
        let spaces: Vec<CochainSpace> = (0..=top).map(|n| CochainSpace::new(l, m, n)).collect();
        let mut degrees: Vec<GroupElement> = match filter {
            DegreeFilter::Identity => vec![l.grading().identity()],
            DegreeFilter::All => spaces
                .iter()
                .flat_map(|s| s.degrees.iter().cloned())
                .collect(),
        };
        degrees.sort();
        degrees.dedup();
        let steps: Vec<usize> = (0..top).collect();
        let deltas = exec.map(&steps, |&n| {
            let (src, dst) = (&spaces[n], &spaces[n + 1]);
            let entries = coboundary_entries(l, m, src, dst);
            degrees
                .iter()
                .map(|g| {
                    let cols = src.block(g);
                    let rows = dst.block(g);
                    let col_at: BTreeMap<usize, usize> =
                        cols.iter().enumerate().map(|(a, &c)| (c, a)).collect();
                    let row_at: BTreeMap<usize, usize> =
                        rows.iter().enumerate().map(|(a, &r)| (r, a)).collect();
                    let mut mat = Matrix::zeros(rows.len(), cols.len(), l.field_order());
                    for ((r, c), v) in &entries {
                        if let (Some(&a), Some(&b)) = (row_at.get(r), col_at.get(c)) {
                            mat[(a, b)] = v.clone();
                        }
                    }
                    (g.clone(), mat)
                })
                .collect()
        });
        Complex {
            spaces,
            deltas,
            degrees,
        }
    }

    /// delta_{n+1} delta_n per degree block, for n + 2 <= top.
    pub fn squares(&self, exec: Exec) -> Vec<(usize, GroupElement, Matrix)> {
        let jobs: Vec<(usize, &GroupElement)> = (0..self.deltas.len().saturating_sub(1))
            .flat_map(|n| self.degrees.iter().map(move |g| (n, g)))
            .collect();
        exec.map(&jobs, |&(n, g)| {
            let p = self.deltas[n + 1][g].mul(&self.deltas[n][g]);
            (n, g.clone(), p)
        })
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SquareBlock {
    pub n: usize,
    pub degree: String,
    pub rows: usize,
    pub cols: usize,
    pub nonzero_entries: usize,
    /// The product matrix, only when it is nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub matrix: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DefectReport {
    pub module: String,
    pub n_max: usize,
    /// phi(x)phi(y) - eps phi(y)phi(x) - phi([x,y]) as a scalar table, when
    /// it is scalar.
    pub measured_twist: Option<Vec<Vec<String>>>,
    /// Declared twist minus measured twist: what delta^2 would pick up on a
    /// module that satisfied the relation with the declared cocycle.
    pub twist_defect: Option<Vec<Vec<String>>>,
    pub squares: Vec<SquareBlock>,
    /// Every delta_{n+1} delta_n is exactly zero.
    pub squares_zero: bool,
}

fn cocycle_table(l: &ColorLieAlgebra, w: &Cocycle2) -> Matrix {
    let d = l.dim();
    let mut t = Matrix::zeros(d, d, l.field_order());
    for i in 0..d {
        for j in 0..d {
            t[(i, j)] = w.value(l, i, j);
        }
    }
    t
}

/// Computes delta_{n+1} delta_n for n < n_max in every degree block, plus
/// the twist the module realizes against the declared one.
pub fn verify_complex(
    l: &ColorLieAlgebra,
    declared: &Cocycle2,
    m: &GradedModule,
    n_max: usize,
    exec: Exec,
) -> DefectReport {
    let cx = Complex::build(l, m, n_max + 1, DegreeFilter::All, exec);
    let squares: Vec<SquareBlock> = cx
        .squares(exec)
        .into_iter()
        .filter(|(n, _, _)| *n < n_max)
        .map(|(n, g, p)| {
            let nonzero = (0..p.rows())
                .flat_map(|r| (0..p.cols()).map(move |c| (r, c)))
                .filter(|&rc| !p[rc].is_zero())
                .count();
            SquareBlock {
                n,
                degree: degree_label(&g),
                rows: p.rows(),
                cols: p.cols(),
                nonzero_entries: nonzero,
                matrix: (nonzero > 0).then(|| p.to_literals()),
            }
        })
        .collect();
    let measured = measured_twist(l, m).map(|t| cocycle_table(l, &t));
    let twist_defect = measured
        .as_ref()
        .map(|t| cocycle_table(l, declared).sub(t).to_literals());
    DefectReport {
        module: m.name.clone(),
        n_max,
        measured_twist: measured.map(|t| t.to_literals()),
        twist_defect,
        squares_zero: squares.iter().all(|s| s.nonzero_entries == 0),
        squares,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockDims {
    pub n: usize,
    pub degree: String,
    pub cochains: usize,
    /// rank of delta_n (outgoing).
    pub rank_out: usize,
    /// rank of delta_{n-1} (incoming).
    pub rank_in: usize,
    pub kernel: usize,
    pub cohomology: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexReport {
    pub module: String,
    pub n_max: usize,
    pub filter: DegreeFilter,
    pub blocks: Vec<BlockDims>,
}

impl ComplexReport {
    /// "H<n>@<degree>" -> dimension.
    pub fn table(&self) -> BTreeMap<String, usize> {
        self.blocks
            .iter()
            .map(|b| (format!("H{}@{}", b.n, b.degree), b.cohomology))
            .collect()
    }

    pub fn dim(&self, n: usize, degree: &GroupElement) -> Option<usize> {
        let label = degree_label(degree);
        self.blocks
            .iter()
            .find(|b| b.n == n && b.degree == label)
            .map(|b| b.cohomology)
    }
}

/// dim H^n = dim ker delta_n - rank delta_{n-1} per degree block, n <= n_max.
/// Refuses modules on which delta^2 is not exactly zero.
pub fn cohomology_dims(
    l: &ColorLieAlgebra,
    m: &GradedModule,
    n_max: usize,
    filter: DegreeFilter,
    exec: Exec,
) -> Result<ComplexReport> {
    let cx = Complex::build(l, m, n_max + 1, filter, exec);
    for (n, _, p) in cx.squares(exec) {
        if n < n_max && !p.is_zero() {
            return Err(Error::NonzeroDefect(n));
        }
    }
    let jobs: Vec<(usize, &GroupElement)> = (0..=n_max)
        .flat_map(|n| cx.degrees.iter().map(move |g| (n, g)))
        .collect();
    let ranks: Vec<usize> = exec.map(&jobs, |&(n, g)| cx.deltas[n][g].rank());
    let rank_of: BTreeMap<(usize, &GroupElement), usize> =
        jobs.iter().copied().zip(ranks).collect();
    let blocks = jobs
        .iter()
        .map(|&(n, g)| {
            let cochains = cx.spaces[n].block(g).len();
            let rank_out = rank_of[&(n, g)];
            let rank_in = if n == 0 { 0 } else { rank_of[&(n - 1, g)] };
            let kernel = cochains - rank_out;
            BlockDims {
                n,
                degree: degree_label(g),
                cochains,
                rank_out,
                rank_in,
                kernel,
                cohomology: kernel - rank_in,
            }
        })
        .collect();
    Ok(ComplexReport {
        module: m.name.clone(),
        n_max,
        filter,
        blocks,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HochschildRow {
    pub truncation: usize,
    pub module_dim: usize,
    pub dim: usize,
}

/// dim H^n(L, ad U_{<=N}) in degree e for each truncation N. Only values
/// that have stabilized in N say anything about HH^n(U_omega(L)).
pub fn hochschild_truncated(
    e: &EnvelopingAlgebra,
    n: usize,
    truncations: &[usize],
    exec: Exec,
) -> Result<Vec<HochschildRow>> {
    let l = e.lie();
    truncations
        .iter()
        .map(|&t| {
            let ad = adjoint_truncated(e, t)?;
            let rep = cohomology_dims(l, &ad, n, DegreeFilter::Identity, exec)?;
            Ok(HochschildRow {
                truncation: t,
                module_dim: ad.dim(),
                dim: rep.dim(n, &l.grading().identity()).unwrap_or(0),
            })
        })
        .collect()
}
