//! Color Lie algebras given by structure constants, scalar 2-cocycles,
//! coboundaries, central extensions and the scalar H^2 classifier.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::grading::{Grading, GroupElement};
use crate::linalg::Matrix;
use crate::lincomb::LinComb;
use crate::report::Violation;
use crate::scalar::CycScalar;

/// Element of L written in the generator basis.
pub type LieVec = LinComb<usize>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub name: String,
    pub degree: GroupElement,
}

/// A G-graded algebra with bracket given on generators.
///
/// Brackets are stored as given. Where only one of (i, j), (j, i) is present
/// the other is derived through epsilon-antisymmetry; where both are present
/// [`validate_algebra`] checks they agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColorLieAlgebra {
    grading: Grading,
    generators: Vec<Generator>,
    structure: BTreeMap<(usize, usize), LieVec>,
    eps: Vec<Vec<CycScalar>>,
    parity: Vec<i8>,
}

impl ColorLieAlgebra {
    pub fn new(grading: Grading, generators: Vec<Generator>) -> Result<Self> {
        for g in &generators {
            if g.degree.0.len() != grading.group.rank() {
                return Err(Error::LengthMismatch {
                    expected: grading.group.rank(),
                    got: g.degree.0.len(),
                });
            }
        }
        let generators: Vec<Generator> = generators
            .into_iter()
            .map(|g| Generator {
                degree: grading.group.element(g.degree.0).expect("length checked"),
                name: g.name,
            })
            .collect();
        let eps = generators
            .iter()
            .map(|a| {
                generators
                    .iter()
                    .map(|b| grading.eps(&a.degree, &b.degree))
                    .collect()
            })
            .collect();
        let parity = generators
            .iter()
            .map(|g| grading.parity(&g.degree))
            .collect();
        Ok(ColorLieAlgebra {
            grading,
            generators,
            structure: BTreeMap::new(),
            eps,
            parity,
        })
    }

    /// Sets [x_i, x_j] = sum_k coeffs[k] x_k.
    pub fn set_bracket(&mut self, i: usize, j: usize, coeffs: LieVec) -> Result<()> {
        let d = self.dim();
        if i >= d || j >= d || coeffs.keys().any(|&k| k >= d) {
            return Err(Error::Input(format!(
                "bracket ({i},{j}) refers to a generator outside 0..{d}"
            )));
        }
        if coeffs.is_zero() {
            self.structure.remove(&(i, j));
        } else {
            self.structure.insert((i, j), coeffs);
        }
        Ok(())
    }

    pub fn dim(&self) -> usize {
        self.generators.len()
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn field_order(&self) -> u32 {
        self.grading.field_order
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn degree(&self, i: usize) -> &GroupElement {
        &self.generators[i].degree
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.generators.iter().position(|g| g.name == name)
    }

    /// Stored structure constants, exactly as given.
    pub fn structure(&self) -> &BTreeMap<(usize, usize), LieVec> {
        &self.structure
    }

    /// epsilon(|x_i|, |x_j|).
    pub fn eps(&self, i: usize, j: usize) -> &CycScalar {
        &self.eps[i][j]
    }

    pub fn parity(&self, i: usize) -> i8 {
        self.parity[i]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.parity[i] < 0
    }

    pub fn zero(&self) -> CycScalar {
        CycScalar::zero(self.field_order())
    }

    pub fn one(&self) -> CycScalar {
        CycScalar::one(self.field_order())
    }

    pub fn bracket(&self, i: usize, j: usize) -> LieVec {
        if let Some(v) = self.structure.get(&(i, j)) {
            v.clone()
        } else if let Some(v) = self.structure.get(&(j, i)) {
            v.scale(&-&self.eps[i][j])
        } else {
            LieVec::new()
        }
    }

    pub fn bracket_vec(&self, u: &LieVec, v: &LieVec) -> LieVec {
        let mut out = LieVec::new();
        for (&i, a) in u {
            for (&j, b) in v {
                out.add_scaled(&self.bracket(i, j), &(a * b));
            }
        }
        out
    }

    /// Degree of a homogeneous product |x_i| |x_j|.
    pub fn pair_degree(&self, i: usize, j: usize) -> GroupElement {
        self.grading.compose(self.degree(i), self.degree(j))
    }

    /// Copy of the algebra with the generators permuted: new generator `p`
    /// is old generator `perm[p]`.
    pub fn permuted(&self, perm: &[usize]) -> ColorLieAlgebra {
        let mut inv = vec![0; perm.len()];
        for (p, &old) in perm.iter().enumerate() {
            inv[old] = p;
        }
        let gens = perm.iter().map(|&o| self.generators[o].clone()).collect();
        let mut out = ColorLieAlgebra::new(self.grading.clone(), gens).expect("same degrees");
        for (&(i, j), v) in &self.structure {
            out.structure
                .insert((inv[i], inv[j]), v.map_keys(|&k| inv[k]));
        }
        out
    }

    fn canonical_triples(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        let mut out = Vec::new();
        for i in 0..d {
            for j in i..d {
                for k in j..d {
                    out.push((i, j, k));
                }
            }
        }
        out
    }

    /// Left side of the epsilon-Jacobi identity on generators (a, b, c).
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> LieVec {
        let single = |i: usize| LieVec::single(i, self.one());
        let mut out = LieVec::new();
        for (x, y, z, sign) in [
            (a, b, c, &self.eps[c][a]),
            (b, c, a, &self.eps[a][b]),
            (c, a, b, &self.eps[b][c]),
        ] {
            let inner = self.bracket(y, z);
            out.add_scaled(&self.bracket_vec(&single(x), &inner), sign);
        }
        out
    }
}

/// Every violated axiom instance: bicharacter, grading, antisymmetry, Jacobi.
pub fn validate_algebra(l: &ColorLieAlgebra) -> Vec<Violation> {
    validate_algebra_with(l, Exec::default())
}

pub fn validate_algebra_with(l: &ColorLieAlgebra, exec: Exec) -> Vec<Violation> {
    let mut out = l.grading.validate();
    for (&(i, j), v) in &l.structure {
        let target = l.pair_degree(i, j);
        for (&k, _) in v {
            if *l.degree(k) != target {
                out.push(Violation::new(
                    "grading",
                    vec![i, j, k],
                    format!(
                        "[{}, {}] has a component along {} of degree {}, expected {}",
                        l.generators[i].name,
                        l.generators[j].name,
                        l.generators[k].name,
                        l.degree(k),
                        target
                    ),
                ));
            }
        }
        if i == j && !l.is_odd(i) {
            out.push(Violation::new(
                "antisymmetry",
                vec![i, i],
                format!("[{0}, {0}] must vanish for even {0}", l.generators[i].name),
            ));
        }
        if i < j {
            if let Some(w) = l.structure.get(&(j, i)) {
                let expected = w.scale(&-l.eps(i, j));
                if *v != expected {
                    out.push(Violation::new(
                        "antisymmetry",
                        vec![i, j],
                        format!(
                            "[{0}, {1}] != -eps [{1}, {0}]",
                            l.generators[i].name, l.generators[j].name
                        ),
                    ));
                }
            }
        }
    }
    let triples = l.canonical_triples();
    out.extend(exec.flat_map(&triples, |&(a, b, c)| {
        let jac = l.jacobiator(a, b, c);
        if jac.is_zero() {
            vec![]
        } else {
            vec![Violation::new(
                "jacobi",
                vec![a, b, c],
                format!(
                    "Jacobi sum on ({}, {}, {}) = {}",
                    l.generators[a].name,
                    l.generators[b].name,
                    l.generators[c].name,
                    fmt_lievec(l, &jac)
                ),
            )]
        }
    }));
    out
}

pub fn fmt_lievec(l: &ColorLieAlgebra, v: &LieVec) -> String {
    if v.is_zero() {
        return "0".into();
    }
    v.iter()
        .map(|(&k, c)| format!("({c})*{}", l.generators[k].name))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Bilinear scalar form on generators. Missing (i, j) is derived from (j, i)
/// by epsilon-antisymmetry, or zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cocycle2 {
    pub entries: BTreeMap<(usize, usize), CycScalar>,
}

impl Cocycle2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: impl IntoIterator<Item = ((usize, usize), CycScalar)>) -> Self {
        Cocycle2 {
            entries: entries.into_iter().filter(|(_, v)| !v.is_zero()).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.values().all(CycScalar::is_zero)
    }

    pub fn value(&self, l: &ColorLieAlgebra, i: usize, j: usize) -> CycScalar {
        if let Some(v) = self.entries.get(&(i, j)) {
            v.clone()
        } else if let Some(v) = self.entries.get(&(j, i)) {
            -(v * l.eps(i, j))
        } else {
            l.zero()
        }
    }

    /// omega(x_i, v) for v in L.
    pub fn pair_right(&self, l: &ColorLieAlgebra, i: usize, v: &LieVec) -> CycScalar {
        let mut acc = l.zero();
        for (&k, c) in v {
            acc = &acc + &(c * &self.value(l, i, k));
        }
        acc
    }

    /// Fully expanded table over all ordered pairs (i, j), nonzero values only.
    pub fn normalized(&self, l: &ColorLieAlgebra) -> Cocycle2 {
        let d = l.dim();
        Cocycle2::from_entries(
            (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .map(|(i, j)| ((i, j), self.value(l, i, j))),
        )
    }

    pub fn sub(&self, l: &ColorLieAlgebra, other: &Cocycle2) -> Cocycle2 {
        let d = l.dim();
        Cocycle2::from_entries(
            (0..d)
                .flat_map(|i| (0..d).map(move |j| (i, j)))
                .map(|(i, j)| ((i, j), &self.value(l, i, j) - &other.value(l, i, j))),
        )
    }

    /// Left side of the cocycle identity on (x, y, z).
    pub fn identity_defect(&self, l: &ColorLieAlgebra, x: usize, y: usize, z: usize) -> CycScalar {
        let t1 = l.eps(z, x) * &self.pair_right(l, x, &l.bracket(y, z));
        let t2 = l.eps(x, y) * &self.pair_right(l, y, &l.bracket(z, x));
        let t3 = l.eps(y, z) * &self.pair_right(l, z, &l.bracket(x, y));
        &(&t1 + &t2) + &t3
    }
}

/// Reports degree-zero, antisymmetry and cocycle-identity violations.
pub fn validate_cocycle(l: &ColorLieAlgebra, w: &Cocycle2) -> Vec<Violation> {
    validate_cocycle_with(l, w, Exec::default())
}

pub fn validate_cocycle_with(l: &ColorLieAlgebra, w: &Cocycle2, exec: Exec) -> Vec<Violation> {
    let d = l.dim();
    let mut out = Vec::new();
    for (&(i, j), v) in &w.entries {
        if i >= d || j >= d {
            out.push(Violation::new(
                "cocycle_index",
                vec![i, j],
                format!("index outside 0..{d}"),
            ));
            continue;
        }
        if v.is_zero() {
            continue;
        }
        if !l.pair_degree(i, j).is_identity() {
            out.push(Violation::new(
                "cocycle_degree",
                vec![i, j],
                format!(
                    "omega({}, {}) = {v} but the pair has degree {}",
                    l.generators[i].name,
                    l.generators[j].name,
                    l.pair_degree(i, j)
                ),
            ));
        }
        if i == j && !l.is_odd(i) {
            out.push(Violation::new(
                "cocycle_antisymmetry",
                vec![i, i],
                format!(
                    "omega({0}, {0}) must vanish for even {0}",
                    l.generators[i].name
                ),
            ));
        }
        if i < j {
            if let Some(back) = w.entries.get(&(j, i)) {
                if *v != -(back * l.eps(i, j)) {
                    out.push(Violation::new(
                        "cocycle_antisymmetry",
                        vec![i, j],
                        format!(
                            "omega({0}, {1}) != -eps omega({1}, {0})",
                            l.generators[i].name, l.generators[j].name
                        ),
                    ));
                }
            }
        }
    }
    if out.iter().any(|v| v.axiom == "cocycle_index") {
        return out;
    }
    let triples = l.canonical_triples();
    out.extend(exec.flat_map(&triples, |&(a, b, c)| {
        let defect = w.identity_defect(l, a, b, c);
        if defect.is_zero() {
            vec![]
        } else {
            vec![Violation::new(
                "cocycle_identity",
                vec![a, b, c],
                format!(
                    "cocycle identity on ({}, {}, {}) = {defect}",
                    l.generators[a].name, l.generators[b].name, l.generators[c].name
                ),
            )]
        }
    }));
    out
}

/// L + K c with [u + a c, v + b c]' = [u, v] + omega(u, v) c; c has degree e.
pub fn central_extension(l: &ColorLieAlgebra, w: &Cocycle2) -> Result<ColorLieAlgebra> {
    let violations = validate_cocycle(l, w);
    if let Some(v) = violations.first() {
        return Err(Error::InvalidCocycle(v.detail.clone()));
    }
    let mut name = "c".to_string();
    while l.index_of(&name).is_some() {
        name.push('\'');
    }
    let mut gens = l.generators.clone();
    gens.push(Generator {
        name,
        degree: l.grading.identity(),
    });
    let c = l.dim();
    let mut out = ColorLieAlgebra::new(l.grading.clone(), gens)?;
    for i in 0..c {
        for j in i..c {
            let mut v = l.bracket(i, j);
            v.add_term(c, w.value(l, i, j));
            out.set_bracket(i, j, v)?;
        }
    }
    Ok(out)
}

/// Degree-zero scalar 1-cochain.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Cochain1 {
    pub values: BTreeMap<usize, CycScalar>,
}

impl Cochain1 {
    pub fn eval(&self, l: &ColorLieAlgebra, v: &LieVec) -> CycScalar {
        let mut acc = l.zero();
        for (k, c) in v {
            if let Some(x) = self.values.get(k) {
                acc = &acc + &(c * x);
            }
        }
        acc
    }

    pub fn get(&self, l: &ColorLieAlgebra, k: usize) -> CycScalar {
        self.values.get(&k).cloned().unwrap_or_else(|| l.zero())
    }
}

/// (delta lambda)(x_i, x_j) = -lambda([x_i, x_j]).
pub fn coboundary(l: &ColorLieAlgebra, lambda: &Cochain1) -> Result<Cocycle2> {
    for (&k, v) in &lambda.values {
        if k >= l.dim() || (!v.is_zero() && !l.degree(k).is_identity()) {
            return Err(Error::Input(format!(
                "lambda must be supported on degree-e generators (index {k})"
            )));
        }
    }
    let d = l.dim();
    Ok(Cocycle2::from_entries((0..d).flat_map(|i| {
        (i..d).map(move |j| ((i, j), -lambda.eval(l, &l.bracket(i, j))))
    })))
}

/// A lambda with delta(lambda) = w1 - w2, if one exists.
pub fn is_cohomologous(l: &ColorLieAlgebra, w1: &Cocycle2, w2: &Cocycle2) -> Option<Cochain1> {
    let d = l.dim();
    let unknowns: Vec<usize> = (0..d).filter(|&k| l.degree(k).is_identity()).collect();
    let pairs: Vec<(usize, usize)> = (0..d).flat_map(|i| (i..d).map(move |j| (i, j))).collect();
    let order = l.field_order();
    let mut a = Matrix::zeros(pairs.len(), unknowns.len(), order);
    let mut b = Vec::with_capacity(pairs.len());
    for (r, &(i, j)) in pairs.iter().enumerate() {
        let br = l.bracket(i, j);
        for (c, k) in unknowns.iter().enumerate() {
            if let Some(x) = br.get(k) {
                a[(r, c)] = -x;
            }
        }
        b.push(&w1.value(l, i, j) - &w2.value(l, i, j));
    }
    let sol = a.solve(&b)?;
    Some(Cochain1 {
        values: unknowns
            .into_iter()
            .zip(sol)
            .filter(|(_, v)| !v.is_zero())
            .collect(),
    })
}

#[derive(Debug, Clone)]
pub struct H2Result {
    pub degree: GroupElement,
    pub cocycle_dim: usize,
    pub coboundary_dim: usize,
    pub dimension: usize,
    pub representatives: Vec<Cocycle2>,
}

/// Degree-e scalar H^2: degree-zero cocycles modulo coboundaries.
pub fn h2_scalar(l: &ColorLieAlgebra) -> H2Result {
    h2_block(l, &l.grading.identity())
}

/// H^2 blocks for every degree that occurs as |x_i||x_j|.
pub fn h2_all_blocks(l: &ColorLieAlgebra) -> Vec<H2Result> {
    let d = l.dim();
    let mut degrees: Vec<GroupElement> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .map(|(i, j)| l.pair_degree(i, j))
        .collect();
    degrees.sort();
    degrees.dedup();
    degrees.iter().map(|g| h2_block(l, g)).collect()
}

/// 2-cochains supported on pairs with |x_i||x_j| = degree, modulo coboundaries
/// of 1-cochains supported on generators of that degree.
pub fn h2_block(l: &ColorLieAlgebra, degree: &GroupElement) -> H2Result {
    let d = l.dim();
    let order = l.field_order();
    let unknowns: Vec<(usize, usize)> = (0..d)
        .flat_map(|i| (i..d).map(move |j| (i, j)))
        .filter(|&(i, j)| (i < j || l.is_odd(i)) && l.pair_degree(i, j) == *degree)
        .collect();
    let slot = |i: usize, j: usize| -> Option<(usize, CycScalar)> {
        if let Some(p) = unknowns.iter().position(|&u| u == (i, j)) {
            Some((p, l.one()))
        } else {
            unknowns
                .iter()
                .position(|&u| u == (j, i))
                .map(|p| (p, -l.eps(i, j)))
        }
    };
    // omega(x_i, v) as a row over the unknowns.
    let pair_row = |i: usize, v: &LieVec, factor: &CycScalar, row: &mut Vec<CycScalar>| {
        for (&k, c) in v {
            if let Some((p, s)) = slot(i, k) {
                row[p] = &row[p] + &(&(factor * c) * &s);
            }
        }
    };
    let mut rows = Vec::new();
    for x in 0..d {
        for y in x..d {
            for z in y..d {
                let mut row = vec![CycScalar::zero(order); unknowns.len()];
                pair_row(x, &l.bracket(y, z), l.eps(z, x), &mut row);
                pair_row(y, &l.bracket(z, x), l.eps(x, y), &mut row);
                pair_row(z, &l.bracket(x, y), l.eps(y, z), &mut row);
                if row.iter().any(|c| !c.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    let n = unknowns.len();
    let cocycles: Vec<Vec<CycScalar>> = if rows.is_empty() {
        (0..n)
            .map(|p| {
                let mut v = vec![CycScalar::zero(order); n];
                v[p] = CycScalar::one(order);
                v
            })
            .collect()
    } else {
        Matrix::from_rows(rows, order).kernel()
    };
    let boundaries: Vec<Vec<CycScalar>> = (0..d)
        .filter(|&k| l.degree(k) == degree)
        .map(|k| {
            unknowns
                .iter()
                .map(|&(i, j)| {
                    l.bracket(i, j)
                        .get(&k)
                        .map(|c| -c)
                        .unwrap_or_else(|| l.zero())
                })
                .collect()
        })
        .collect();
    let mut span = boundaries.clone();
    let mut rank = rank_of(&span, n, order);
    let coboundary_dim = rank;
    let mut representatives = Vec::new();
    for z in &cocycles {
        span.push(z.clone());
        let r = rank_of(&span, n, order);
        if r > rank {
            rank = r;
            representatives.push(Cocycle2::from_entries(
                unknowns.iter().copied().zip(z.iter().cloned()),
            ));
        } else {
            span.pop();
        }
    }
    H2Result {
        degree: degree.clone(),
        cocycle_dim: cocycles.len(),
        coboundary_dim,
        dimension: cocycles.len() - coboundary_dim,
        representatives,
    }
}

fn rank_of(rows: &[Vec<CycScalar>], cols: usize, order: u32) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    Matrix::from_rows(rows.to_vec(), order).rank()
}
