//! Grading groups Z^r x Z_m1 x ... x Z_mk and antisymmetric bicharacters on them.

use std::fmt;

use crate::error::{Error, Result};
use crate::report::Violation;
use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupSpec {
    pub free_rank: usize,
    pub torsion: Vec<u64>,
}

impl GroupSpec {
    pub fn trivial() -> Self {
        GroupSpec {
            free_rank: 0,
            torsion: vec![],
        }
    }

    pub fn rank(&self) -> usize {
        self.free_rank + self.torsion.len()
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement(vec![0; self.rank()])
    }

    /// Modulus of coordinate `i`, or `None` for a free coordinate.
    pub fn modulus(&self, i: usize) -> Option<u64> {
        i.checked_sub(self.free_rank).map(|t| self.torsion[t])
    }

    pub fn element(&self, coords: Vec<i64>) -> Result<GroupElement> {
        self.check(&coords)?;
        let mut g = GroupElement(coords);
        self.reduce(&mut g);
        Ok(g)
    }

    fn check(&self, coords: &[i64]) -> Result<()> {
        if coords.len() == self.rank() {
            Ok(())
        } else {
            Err(Error::LengthMismatch {
                expected: self.rank(),
                got: coords.len(),
            })
        }
    }

    fn reduce(&self, g: &mut GroupElement) {
        for (i, m) in self.torsion.iter().enumerate() {
            let c = &mut g.0[self.free_rank + i];
            *c = c.rem_euclid(*m as i64);
        }
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        self.check(&g.0)?;
        self.check(&h.0)?;
        let mut out = GroupElement(g.0.iter().zip(&h.0).map(|(a, b)| a + b).collect());
        self.reduce(&mut out);
        Ok(out)
    }

    pub fn invert(&self, g: &GroupElement) -> Result<GroupElement> {
        self.check(&g.0)?;
        let mut out = GroupElement(g.0.iter().map(|a| -a).collect());
        self.reduce(&mut out);
        Ok(out)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupOp {
    Compose,
    Invert,
}

/// `Invert` ignores `h`.
pub fn group_op(
    spec: &GroupSpec,
    g: &GroupElement,
    h: &GroupElement,
    mode: GroupOp,
) -> Result<GroupElement> {
    match mode {
        GroupOp::Compose => spec.compose(g, h),
        GroupOp::Invert => spec.invert(g),
    }
}

/// Coordinates of a group element; torsion coordinates are kept reduced.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<i64>);

impl GroupElement {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Values of the bicharacter on pairs of group generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bicharacter {
    pub values: Vec<Vec<CycScalar>>,
}

/// epsilon(g, h) = prod_{i,j} B[i][j]^(g_i h_j).
pub fn eps_eval(b: &Bicharacter, g: &GroupElement, h: &GroupElement, order: u32) -> CycScalar {
    let mut acc = CycScalar::one(order);
    for (i, gi) in g.0.iter().enumerate() {
        if *gi == 0 {
            continue;
        }
        for (j, hj) in h.0.iter().enumerate() {
            if *hj == 0 {
                continue;
            }
            // Zero entries are reported by validation; evaluate them as zero.
            let factor = b.values[i][j]
                .pow(gi * hj)
                .unwrap_or_else(|_| CycScalar::zero(order));
            acc = &acc * &factor;
        }
    }
    acc
}

pub fn validate_bicharacter(spec: &GroupSpec, b: &Bicharacter) -> Vec<Violation> {
    let k = spec.rank();
    if b.values.len() != k || b.values.iter().any(|row| row.len() != k) {
        return vec![Violation::new(
            "bicharacter_shape",
            vec![],
            format!("expected a {k}x{k} matrix"),
        )];
    }
    let mut out = Vec::new();
    for i in 0..k {
        for j in 0..k {
            let bij = &b.values[i][j];
            if bij.is_zero() {
                out.push(Violation::new(
                    "bicharacter_nonzero",
                    vec![i, j],
                    "value is zero",
                ));
                continue;
            }
            if i < j && !(bij * &b.values[j][i]).is_one() {
                out.push(Violation::new(
                    "bicharacter_antisymmetry",
                    vec![i, j],
                    format!("B[{i}][{j}]*B[{j}][{i}] = {} != 1", bij * &b.values[j][i]),
                ));
            }
            if i == j && !(bij * bij).is_one() {
                out.push(Violation::new(
                    "bicharacter_diagonal",
                    vec![i, i],
                    format!("B[{i}][{i}]^2 = {} != 1", bij * bij),
                ));
            }
            for (axis, idx) in [("row", i), ("column", j)] {
                if let Some(m) = spec.modulus(idx) {
                    let p = bij.pow(m as i64).expect("nonzero");
                    if !p.is_one() {
                        out.push(Violation::new(
                            "bicharacter_torsion",
                            vec![i, j],
                            format!("B[{i}][{j}]^{m} = {p} != 1 ({axis} generator has order {m})"),
                        ));
                    }
                }
            }
        }
    }
    out
}

/// A grading group with its bicharacter and the cyclotomic field the values live in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Grading {
    pub group: GroupSpec,
    pub bicharacter: Bicharacter,
    pub field_order: u32,
}

impl Grading {
    /// Trivial group, epsilon = 1.
    pub fn trivial(field_order: u32) -> Self {
        Grading {
            group: GroupSpec::trivial(),
            bicharacter: Bicharacter { values: vec![] },
            field_order,
        }
    }

    /// Z_2 with epsilon(i, j) = (-1)^(ij).
    pub fn super_grading() -> Self {
        Grading {
            group: GroupSpec {
                free_rank: 0,
                torsion: vec![2],
            },
            bicharacter: Bicharacter {
                values: vec![vec![CycScalar::from_int(-1, 1)]],
            },
            field_order: 1,
        }
    }

    pub fn identity(&self) -> GroupElement {
        self.group.identity()
    }

    pub fn eps(&self, g: &GroupElement, h: &GroupElement) -> CycScalar {
        eps_eval(&self.bicharacter, g, h, self.field_order)
    }

    pub fn parity(&self, g: &GroupElement) -> i8 {
        parity(&self.bicharacter, g, self.field_order)
    }

    pub fn compose(&self, g: &GroupElement, h: &GroupElement) -> GroupElement {
        self.group
            .compose(g, h)
            .expect("degrees validated against the group")
    }

    pub fn invert(&self, g: &GroupElement) -> GroupElement {
        self.group
            .invert(g)
            .expect("degrees validated against the group")
    }

    pub fn validate(&self) -> Vec<Violation> {
        validate_bicharacter(&self.group, &self.bicharacter)
    }
}

/// epsilon(g, g) as a sign; +1 is even, -1 odd. On an invalid bicharacter
/// anything other than 1 counts as odd.
pub fn parity(b: &Bicharacter, g: &GroupElement, order: u32) -> i8 {
    if eps_eval(b, g, g, order).is_one() {
        1
    } else {
        -1
    }
}
