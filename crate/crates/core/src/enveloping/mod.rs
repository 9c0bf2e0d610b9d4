//! U_omega(L) as a straightening rewriting system.
//!
//! Words in the generators are rewritten with
//!
//! ```text
//! x_j x_i -> eps(x_j, x_i) x_i x_j + [x_j, x_i] + omega(x_j, x_i)   (x_j > x_i)
//! x_i x_i -> 1/2 ([x_i, x_i] + omega(x_i, x_i))                    (x_i odd)
//! ```
//!
//! until only ordered (PBW) monomials remain. Every step strictly lowers
//! (length, inversion count), so the worklist below pops each distinct word
//! at most once.

mod iso;
mod symmetric;

pub use iso::{filtered_iso, IsoReport};
pub use symmetric::{dims, sym_mul, symbol, DimsRow, DimsTable, SymElement};

use std::collections::BTreeMap;

use serde::Serialize;

use crate::colorlie::{validate_algebra, validate_cocycle, Cocycle2, ColorLieAlgebra, LieVec};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grading::GroupElement;
use crate::lincomb::LinComb;
use crate::scalar::CycScalar;

/// Sequence of generator indices.
pub type Word = Vec<usize>;
/// Element of the tensor algebra T(L).
pub type NcPoly = LinComb<Word>;
/// Element of U_omega(L) supported on ordered monomials.
pub type PbwElement = LinComb<Word>;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Leftmost,
    Rightmost,
}

#[derive(Debug, Clone)]
pub struct EnvelopingAlgebra {
    lie: ColorLieAlgebra,
    omega: Cocycle2,
    order: Vec<usize>,
    rank: Vec<usize>,
    brackets: Vec<Vec<LieVec>>,
    omega_tab: Vec<Vec<CycScalar>>,
    half: CycScalar,
    trusted: bool,
    budget: Option<usize>,
}

impl EnvelopingAlgebra {
    /// Validated and overlap-checked algebra in the input generator order.
    pub fn new(lie: ColorLieAlgebra, omega: Cocycle2) -> Result<Self> {
        Self::with_order(lie, omega, None)
    }

    /// `order` lists generator indices from smallest to largest.
    pub fn with_order(
        lie: ColorLieAlgebra,
        omega: Cocycle2,
        order: Option<Vec<usize>>,
    ) -> Result<Self> {
        let mut e = Self::untrusted(lie, omega, order, None)?;
        let problems = validate_algebra(&e.lie).len()
            + validate_cocycle(&e.lie, &e.omega).len()
            + e.check_overlaps().mismatches.len();
        if problems > 0 {
            return Err(Error::Untrusted(problems));
        }
        e.trusted = true;
        Ok(e)
    }

    /// No validation; normal forms are still computed but carry no guarantee
    /// of strategy independence.
    pub fn untrusted(
        lie: ColorLieAlgebra,
        omega: Cocycle2,
        order: Option<Vec<usize>>,
        budget: Option<usize>,
    ) -> Result<Self> {
        let d = lie.dim();
        let order = order.unwrap_or_else(|| (0..d).collect());
        let mut seen = vec![false; d];
        if order.len() != d
            || order
                .iter()
                .any(|&i| i >= d || std::mem::replace(&mut seen[i], true))
        {
            return Err(Error::Input(format!(
                "generator order must be a permutation of 0..{d}"
            )));
        }
        let mut rank = vec![0; d];
        for (p, &g) in order.iter().enumerate() {
            rank[g] = p;
        }
        let brackets = (0..d)
            .map(|i| (0..d).map(|j| lie.bracket(i, j)).collect())
            .collect();
        let omega_tab = (0..d)
            .map(|i| (0..d).map(|j| omega.value(&lie, i, j)).collect())
            .collect();
        let half = CycScalar::from_rational(
            num_rational::BigRational::new(1.into(), 2.into()),
            lie.field_order(),
        );
        Ok(EnvelopingAlgebra {
            lie,
            omega,
            order,
            rank,
            brackets,
            omega_tab,
            half,
            trusted: false,
            budget,
        })
    }

    pub fn lie(&self) -> &ColorLieAlgebra {
        &self.lie
    }

    pub fn omega(&self) -> &Cocycle2 {
        &self.omega
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn is_trusted(&self) -> bool {
        self.trusted
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    pub fn zero(&self) -> CycScalar {
        self.lie.zero()
    }

    pub fn one(&self) -> CycScalar {
        self.lie.one()
    }

    pub fn unit(&self) -> PbwElement {
        PbwElement::single(vec![], self.one())
    }

    pub fn generator(&self, i: usize) -> PbwElement {
        PbwElement::single(vec![i], self.one())
    }

    pub fn scalar(&self, c: CycScalar) -> PbwElement {
        PbwElement::single(vec![], c)
    }

    fn reducible(&self, a: usize, b: usize) -> bool {
        self.rank[a] > self.rank[b] || (a == b && self.lie.is_odd(a))
    }

    /// True iff `w` is an ordered monomial.
    pub fn is_ordered(&self, w: &[usize]) -> bool {
        w.windows(2).all(|p| !self.reducible(p[0], p[1]))
    }

    fn inversions(&self, w: &[usize]) -> usize {
        let mut n = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if self.rank[w[i]] > self.rank[w[j]] {
                    n += 1;
                }
            }
        }
        n
    }

    /// One rewrite of the pair at `pos`, `pos + 1`; `None` if it is not a redex.
    pub fn rewrite_at(&self, w: &[usize], pos: usize) -> Option<NcPoly> {
        let (a, b) = (w[pos], w[pos + 1]);
        if !self.reducible(a, b) {
            return None;
        }
        let prefix = &w[..pos];
        let suffix = &w[pos + 2..];
        let splice = |mid: &[usize]| -> Word {
            let mut out = Vec::with_capacity(prefix.len() + mid.len() + suffix.len());
            out.extend_from_slice(prefix);
            out.extend_from_slice(mid);
            out.extend_from_slice(suffix);
            out
        };
        let mut out = NcPoly::new();
        let scale = if a == b {
            self.half.clone()
        } else {
            out.add_term(splice(&[b, a]), self.lie.eps(a, b).clone());
            self.one()
        };
        for (&k, c) in &self.brackets[a][b] {
            out.add_term(splice(&[k]), c * &scale);
        }
        out.add_term(splice(&[]), &self.omega_tab[a][b] * &scale);
        Some(out)
    }

    fn redex(&self, w: &[usize], strategy: Strategy) -> Option<usize> {
        let mut positions =
            (0..w.len().saturating_sub(1)).filter(|&p| self.reducible(w[p], w[p + 1]));
        match strategy {
            Strategy::Leftmost => positions.next(),
            Strategy::Rightmost => positions.next_back(),
        }
    }

    /// Upper bound on rewrite steps for inputs of length <= `len`: the number
    /// of distinct words that can ever be popped.
    pub fn step_bound(&self, len: usize) -> usize {
        let d = self.dim().max(1);
        let mut total: usize = 0;
        let mut pow: usize = 1;
        for _ in 0..=len {
            total = total.saturating_add(pow);
            pow = pow.saturating_mul(d);
        }
        total
    }

    pub fn try_normal_form(&self, p: &NcPoly, strategy: Strategy) -> Result<PbwElement> {
        let max_len = p.keys().map(Vec::len).max().unwrap_or(0);
        let bound = self.step_bound(max_len);
        let mut pending: LinComb<(usize, usize, Word)> = LinComb::new();
        for (w, c) in p {
            pending.add_term((w.len(), self.inversions(w), w.clone()), c.clone());
        }
        let mut out = PbwElement::new();
        let mut steps = 0usize;
        while let Some(((_, _, w), c)) = pending.pop_last() {
            match self.redex(&w, strategy) {
                None => out.add_term(w, c),
                Some(pos) => {
                    steps += 1;
                    if let Some(b) = self.budget {
                        if steps > b {
                            return Err(Error::StepBudget(b));
                        }
                    }
                    assert!(steps <= bound, "rewriting exceeded its termination bound");
                    let rewritten = self.rewrite_at(&w, pos).expect("redex");
                    for (v, k) in &rewritten {
                        pending.add_term((v.len(), self.inversions(v), v.clone()), k * &c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn normal_form(&self, p: &NcPoly) -> PbwElement {
        self.normal_form_with(p, Strategy::Leftmost)
    }

    pub fn normal_form_with(&self, p: &NcPoly, strategy: Strategy) -> PbwElement {
        self.try_normal_form(p, strategy)
            .expect("step budget exhausted during normal form")
    }

    pub fn nf_word(&self, w: &[usize]) -> PbwElement {
        self.normal_form(&NcPoly::single(w.to_vec(), self.one()))
    }

    pub fn multiply(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let mut prod = NcPoly::new();
        for (u, x) in a {
            for (v, y) in b {
                let mut w = u.clone();
                w.extend_from_slice(v);
                prod.add_term(w, x * y);
            }
        }
        self.normal_form(&prod)
    }

    /// x_i x_j - eps(x_i, x_j) x_j x_i in normal form.
    pub fn bracket_in_u(&self, i: usize, j: usize) -> PbwElement {
        let mut p = NcPoly::single(vec![i, j], self.one());
        p.add_term(vec![j, i], -self.lie.eps(i, j));
        self.normal_form(&p)
    }

    /// Graded commutator [[a, b]] of homogeneous elements.
    pub fn commutator(&self, a: &PbwElement, b: &PbwElement) -> PbwElement {
        let ab = self.multiply(a, b);
        let ba = self.multiply(b, a);
        let (Some(da), Some(db)) = (self.homogeneous_degree(a), self.homogeneous_degree(b)) else {
            panic!("commutator of inhomogeneous elements");
        };
        ab.sub(&ba.scale(&self.lie.grading().eps(&da, &db)))
    }

    /// The image of x in L inside U.
    pub fn embed(&self, v: &LieVec) -> PbwElement {
        v.map_keys(|&k| vec![k])
    }

    pub fn word_degree(&self, w: &[usize]) -> GroupElement {
        let g = self.lie.grading();
        w.iter()
            .fold(g.identity(), |acc, &i| g.compose(&acc, self.lie.degree(i)))
    }

    /// Common G-degree of all terms, or `None` when inhomogeneous. Zero has
    /// the identity degree.
    pub fn homogeneous_degree(&self, a: &PbwElement) -> Option<GroupElement> {
        let mut degrees = a.keys().map(|w| self.word_degree(w));
        let first = degrees
            .next()
            .unwrap_or_else(|| self.lie.grading().identity());
        degrees.all(|d| d == first).then_some(first)
    }

    /// eps(|u|, |v|) for words u, v.
    pub fn eps_words(&self, u: &[usize], v: &[usize]) -> CycScalar {
        let mut acc = self.one();
        for &a in u {
            for &b in v {
                acc = &acc * self.lie.eps(a, b);
            }
        }
        acc
    }

    /// Ordered monomials of length <= max_len, sorted by (length, order).
    pub fn pbw_monomials(&self, max_len: usize) -> Vec<Word> {
        let mut out = vec![vec![]];
        let mut layer: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for pos_word in &layer {
                let start = match pos_word.last() {
                    None => 0,
                    Some(&p) if self.lie.is_odd(self.order[p]) => p + 1,
                    Some(&p) => p,
                };
                for p in start..self.dim() {
                    let mut w = pos_word.clone();
                    w.push(p);
                    next.push(w);
                }
            }
            out.extend(
                next.iter()
                    .map(|pw| pw.iter().map(|&p| self.order[p]).collect()),
            );
            layer = next;
        }
        out
    }

    /// Filtration degree: length of the longest monomial; `None` for zero.
    pub fn filtration_degree(a: &PbwElement) -> Option<usize> {
        a.keys().map(Vec::len).max()
    }

    /// Ambiguities x_a x_b x_c reduced both ways.
    pub fn check_overlaps(&self) -> ConfluenceReport {
        self.check_overlaps_with(Exec::default())
    }

    pub fn check_overlaps_with(&self, exec: Exec) -> ConfluenceReport {
        let d = self.dim();
        let mut words = Vec::new();
        for a in 0..d {
            for b in 0..d {
                if !self.reducible(a, b) {
                    continue;
                }
                for c in 0..d {
                    if self.reducible(b, c) {
                        words.push(vec![a, b, c]);
                    }
                }
            }
        }
        let mismatches = exec.flat_map(&words, |w| {
            let left = self.rewrite_at(w, 0).expect("redex");
            let right = self.rewrite_at(w, 1).expect("redex");
            let nl = self.try_normal_form(&left, Strategy::Leftmost);
            let nr = self.try_normal_form(&right, Strategy::Leftmost);
            let mut site = w.clone();
            site.sort_unstable();
            match (nl, nr) {
                (Ok(l), Ok(r)) => {
                    let diff = l.sub(&r);
                    if diff.is_zero() {
                        vec![]
                    } else {
                        vec![OverlapMismatch {
                            word: self.word_name(w),
                            site,
                            difference: self.to_json_map(&diff),
                        }]
                    }
                }
                (Err(e), _) | (_, Err(e)) => vec![OverlapMismatch {
                    word: self.word_name(w),
                    site,
                    difference: BTreeMap::from([("error".to_string(), e.to_string())]),
                }],
            }
        });
        ConfluenceReport {
            checked: words.len(),
            mismatches,
        }
    }

    /// Generator names joined by `.`; the empty word is `""`.
    pub fn word_name(&self, w: &[usize]) -> String {
        w.iter()
            .map(|&i| self.lie.generators()[i].name.as_str())
            .collect::<Vec<_>>()
            .join(".")
    }

    pub fn to_json_map(&self, a: &PbwElement) -> BTreeMap<String, String> {
        a.iter()
            .map(|(w, c)| (self.word_name(w), c.to_string()))
            .collect()
    }

    /// Whitespace-separated generator names, e.g. `"p q q"`.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        text.split_whitespace()
            .map(|name| {
                self.lie
                    .index_of(name)
                    .ok_or_else(|| Error::Input(format!("unknown generator {name:?}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OverlapMismatch {
    pub word: String,
    /// Generator indices of the ambiguity, sorted.
    pub site: Vec<usize>,
    pub difference: BTreeMap<String, String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub mismatches: Vec<OverlapMismatch>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.mismatches.is_empty()
    }
}
