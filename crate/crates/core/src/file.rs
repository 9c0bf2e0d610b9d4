//! JSON problem files: one algebra with its cocycles and modules.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::colorlie::{Cocycle2, ColorLieAlgebra, Generator, LieVec};
use crate::enveloping::EnvelopingAlgebra;
use crate::error::{Error, Result};
use crate::grading::{Bicharacter, Grading, GroupElement, GroupSpec};
use crate::linalg::Matrix;
use crate::repmodule::{BasisVector, GradedModule};
use crate::scalar::CycScalar;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDecl {
    #[serde(default)]
    pub free_rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedDegree {
    pub name: String,
    #[serde(default)]
    pub degree: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BracketDecl {
    pub i: String,
    pub j: String,
    /// Generator name -> scalar literal.
    pub coeffs: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleEntry {
    pub i: String,
    pub j: String,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDecl {
    pub name: String,
    pub basis: Vec<NamedDegree>,
    /// Generator name -> matrix of literals; missing generators act by zero.
    #[serde(default)]
    pub actions: BTreeMap<String, Vec<Vec<String>>>,
    /// "zero", "omega" or the name of an entry of `cocycles`.
    #[serde(default = "zero_name")]
    pub twist: String,
}

fn zero_name() -> String {
    "zero".into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cyclotomic_order: Option<u32>,
    pub group: GroupDecl,
    #[serde(default)]
    pub bicharacter: Vec<Vec<String>>,
    pub generators: Vec<NamedDegree>,
    /// PBW order, smallest first; defaults to the generator order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    #[serde(default)]
    pub brackets: Vec<BracketDecl>,
    #[serde(default)]
    pub cocycle: Vec<CocycleEntry>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub cocycles: BTreeMap<String, Vec<CocycleEntry>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub modules: Vec<ModuleDecl>,
}

/// A loaded problem instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Problem {
    pub name: String,
    pub lie: ColorLieAlgebra,
    pub omega: Cocycle2,
    pub order: Option<Vec<usize>>,
    pub cocycles: BTreeMap<String, Cocycle2>,
    pub modules: Vec<GradedModule>,
}

fn at(path: &str, e: impl std::fmt::Display) -> Error {
    Error::Input(format!("{path}: {e}"))
}

impl AlgebraFile {
    /// Parses JSON; errors name the offending key.
    pub fn parse(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let path = path.replace(['.', '['], "/").replace(']', "");
            at(&format!("/{path}"), e.into_inner())
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data serializes")
    }

    pub fn field_order(&self) -> u32 {
        self.cyclotomic_order.unwrap_or_else(|| {
            self.group
                .torsion
                .iter()
                .fold(1u64, |acc, &m| num_integer::lcm(acc, m.max(1))) as u32
        })
    }

    pub fn build(&self) -> Result<Problem> {
        let order = self.field_order();
        if order == 0 {
            return Err(at("/cyclotomic_order", "must be positive"));
        }
        if let Some(p) = self.group.torsion.iter().position(|&m| m == 0) {
            return Err(at(
                &format!("/group/torsion/{p}"),
                "torsion order must be positive",
            ));
        }
        let lit = |text: &str, path: &str| CycScalar::parse(text, order).map_err(|e| at(path, e));
        let group = GroupSpec {
            free_rank: self.group.free_rank,
            torsion: self.group.torsion.clone(),
        };
        let values = self
            .bicharacter
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .enumerate()
                    .map(|(j, s)| lit(s, &format!("/bicharacter/{i}/{j}")))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let grading = Grading {
            group,
            bicharacter: Bicharacter { values },
            field_order: order,
        };
        let mut gens = Vec::new();
        for (p, g) in self.generators.iter().enumerate() {
            if self.generators[..p].iter().any(|h| h.name == g.name) {
                return Err(at(&format!("/generators/{p}/name"), "duplicate generator"));
            }
            if g.degree.len() != grading.group.rank() {
                return Err(at(
                    &format!("/generators/{p}/degree"),
                    format!("expected {} coordinates", grading.group.rank()),
                ));
            }
            gens.push(Generator {
                name: g.name.clone(),
                degree: GroupElement(g.degree.clone()),
            });
        }
        let names: BTreeMap<String, usize> = gens
            .iter()
            .enumerate()
            .map(|(i, g)| (g.name.clone(), i))
            .collect();
        let mut lie = ColorLieAlgebra::new(grading, gens)?;
        let index = |name: &str, path: &str| {
            names
                .get(name)
                .copied()
                .ok_or_else(|| at(path, format!("unknown generator {name:?}")))
        };

        let mut seen = BTreeMap::new();
        let mut brackets = Vec::new();
        for (p, b) in self.brackets.iter().enumerate() {
            let base = format!("/brackets/{p}");
            let i = index(&b.i, &format!("{base}/i"))?;
            let j = index(&b.j, &format!("{base}/j"))?;
            if seen.insert((i, j), p).is_some() {
                return Err(at(&base, "bracket given twice"));
            }
            let mut v = LieVec::new();
            for (k, s) in &b.coeffs {
                let path = format!("{base}/coeffs/{k}");
                v.add_term(index(k, &path)?, lit(s, &path)?);
            }
            brackets.push((i, j, v));
        }
        for (i, j, v) in brackets {
            lie.set_bracket(i, j, v)?;
        }

        let cocycle = |entries: &[CocycleEntry], base: &str| -> Result<Cocycle2> {
            let mut out = BTreeMap::new();
            for (p, c) in entries.iter().enumerate() {
                let b = format!("{base}/{p}");
                let i = index(&c.i, &format!("{b}/i"))?;
                let j = index(&c.j, &format!("{b}/j"))?;
                let v = lit(&c.value, &format!("{b}/value"))?;
                if out.insert((i, j), v).is_some() {
                    return Err(at(&b, "cocycle entry given twice"));
                }
            }
            Ok(Cocycle2::from_entries(out))
        };
        let omega = cocycle(&self.cocycle, "/cocycle")?;
        let mut cocycles = BTreeMap::new();
        for (name, entries) in &self.cocycles {
            cocycles.insert(
                name.clone(),
                cocycle(entries, &format!("/cocycles/{name}"))?,
            );
        }

        let pbw_order = match &self.order {
            None => None,
            Some(names) => Some(
                names
                    .iter()
                    .enumerate()
                    .map(|(p, n)| index(n, &format!("/order/{p}")))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };

        let mut modules = Vec::new();
        for (p, m) in self.modules.iter().enumerate() {
            let base = format!("/modules/{p}");
            let dim = m.basis.len();
            let basis = m
                .basis
                .iter()
                .enumerate()
                .map(|(s, b)| {
                    if b.degree.len() != lie.grading().group.rank() {
                        return Err(at(&format!("{base}/basis/{s}/degree"), "wrong length"));
                    }
                    Ok(BasisVector {
                        name: b.name.clone(),
                        degree: lie.grading().group.element(b.degree.clone())?,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            let mut actions = vec![Matrix::zeros(dim, dim, order); lie.dim()];
            for (g, rows) in &m.actions {
                let path = format!("{base}/actions/{g}");
                let i = index(g, &path)?;
                if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                    return Err(at(&path, format!("expected a {dim}x{dim} matrix")));
                }
                let parsed = rows
                    .iter()
                    .enumerate()
                    .map(|(r, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(c, s)| lit(s, &format!("{path}/{r}/{c}")))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                actions[i] = Matrix::from_rows(parsed, order);
            }
            let twist = match m.twist.as_str() {
                "zero" => Cocycle2::zero(),
                "omega" => omega.clone(),
                other => cocycles.get(other).cloned().ok_or_else(|| {
                    at(
                        &format!("{base}/twist"),
                        format!("unknown cocycle {other:?}"),
                    )
                })?,
            };
            modules.push(GradedModule {
                name: m.name.clone(),
                basis,
                actions,
                twist,
            });
        }

        Ok(Problem {
            name: self.name.clone(),
            lie,
            omega,
            order: pbw_order,
            cocycles,
            modules,
        })
    }
}

impl Problem {
    pub fn load(text: &str) -> Result<Self> {
        AlgebraFile::parse(text)?.build()
    }

    /// "omega", "zero" or a named cocycle.
    pub fn cocycle(&self, name: &str) -> Result<Cocycle2> {
        match name {
            "omega" => Ok(self.omega.clone()),
            "zero" => Ok(Cocycle2::zero()),
            other => self
                .cocycles
                .get(other)
                .cloned()
                .ok_or_else(|| Error::Input(format!("unknown cocycle {other:?}"))),
        }
    }

    pub fn module(&self, name: &str) -> Result<&GradedModule> {
        self.modules
            .iter()
            .find(|m| m.name == name)
            .ok_or_else(|| Error::Input(format!("unknown module {name:?}")))
    }

    /// Validated U_omega(L); with `force`, an unchecked one under `budget`.
    pub fn enveloping(
        &self,
        omega: &Cocycle2,
        force: bool,
        budget: Option<usize>,
    ) -> Result<EnvelopingAlgebra> {
        if force {
            EnvelopingAlgebra::untrusted(
                self.lie.clone(),
                omega.clone(),
                self.order.clone(),
                budget,
            )
        } else {
            EnvelopingAlgebra::with_order(self.lie.clone(), omega.clone(), self.order.clone())
        }
    }

    /// Canonical file form of this problem.
    pub fn to_file(&self) -> AlgebraFile {
        let l = &self.lie;
        let g = l.grading();
        let name = |i: usize| l.generators()[i].name.clone();
        let entries = |w: &Cocycle2| -> Vec<CocycleEntry> {
            w.entries
                .iter()
                .map(|(&(i, j), v)| CocycleEntry {
                    i: name(i),
                    j: name(j),
                    value: v.to_string(),
                })
                .collect()
        };
        let twist_name = |t: &Cocycle2| -> String {
            if t.is_zero() {
                "zero".into()
            } else if *t == self.omega {
                "omega".into()
            } else {
                self.cocycles
                    .iter()
                    .find(|(_, c)| *c == t)
                    .map(|(n, _)| n.clone())
                    .unwrap_or_else(|| "omega".into())
            }
        };
        AlgebraFile {
            name: self.name.clone(),
            cyclotomic_order: Some(g.field_order),
            group: GroupDecl {
                free_rank: g.group.free_rank,
                torsion: g.group.torsion.clone(),
            },
            bicharacter: g
                .bicharacter
                .values
                .iter()
                .map(|r| r.iter().map(ToString::to_string).collect())
                .collect(),
            generators: l
                .generators()
                .iter()
                .map(|x| NamedDegree {
                    name: x.name.clone(),
                    degree: x.degree.0.clone(),
                })
                .collect(),
            order: self
                .order
                .as_ref()
                .map(|o| o.iter().map(|&i| name(i)).collect()),
            brackets: l
                .structure()
                .iter()
                .map(|(&(i, j), v)| BracketDecl {
                    i: name(i),
                    j: name(j),
                    coeffs: v.iter().map(|(&k, c)| (name(k), c.to_string())).collect(),
                })
                .collect(),
            cocycle: entries(&self.omega),
            cocycles: self
                .cocycles
                .iter()
                .map(|(n, c)| (n.clone(), entries(c)))
                .collect(),
            modules: self
                .modules
                .iter()
                .map(|m| ModuleDecl {
                    name: m.name.clone(),
                    basis: m
                        .basis
                        .iter()
                        .map(|b| NamedDegree {
                            name: b.name.clone(),
                            degree: b.degree.0.clone(),
                        })
                        .collect(),
                    actions: m
                        .actions
                        .iter()
                        .enumerate()
                        .filter(|(_, a)| !a.is_zero())
                        .map(|(i, a)| (name(i), a.to_literals()))
                        .collect(),
                    twist: twist_name(&m.twist),
                })
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const WEYL: &str = r#"{
        "name": "weyl",
        "group": {"free_rank": 0, "torsion": []},
        "generators": [{"name": "q"}, {"name": "p"}],
        "cocycle": [{"i": "q", "j": "p", "value": "1"}],
        "modules": [{"name": "point", "basis": [{"name": "m"}], "twist": "omega"}]
    }"#;

    #[test]
    fn loads_and_round_trips() {
        let p = Problem::load(WEYL).unwrap();
        assert_eq!(p.lie.dim(), 2);
        assert_eq!(p.omega.value(&p.lie, 1, 0), CycScalar::from_int(-1, 1));
        assert_eq!(p.modules[0].twist, p.omega);
        let again = Problem::load(&p.to_file().to_json()).unwrap();
        assert_eq!(again, p);
    }

    #[test]
    fn schema_errors_point_at_the_key() {
        let bad = WEYL.replace("\"value\": \"1\"", "\"value\": \"1/0\"");
        let err = Problem::load(&bad).unwrap_err().to_string();
        assert!(err.starts_with("/cocycle/0/value"), "{err}");

        let bad = WEYL.replace("\"j\": \"p\"", "\"j\": \"r\"");
        let err = Problem::load(&bad).unwrap_err().to_string();
        assert!(err.starts_with("/cocycle/0/j"), "{err}");

        let bad = WEYL.replace("\"free_rank\": 0", "\"free_rank\": \"x\"");
        let err = Problem::load(&bad).unwrap_err().to_string();
        assert!(err.contains("group/free_rank"), "{err}");

        let bad = WEYL.replace("\"cocycle\"", "\"cocycel\"");
        assert!(Problem::load(&bad).is_err());
    }

    #[test]
    fn default_field_order_is_lcm_of_torsion() {
        let f = AlgebraFile {
            name: "t".into(),
            cyclotomic_order: None,
            group: GroupDecl {
                free_rank: 1,
                torsion: vec![2, 3],
            },
            bicharacter: vec![],
            generators: vec![],
            order: None,
            brackets: vec![],
            cocycle: vec![],
            cocycles: BTreeMap::new(),
            modules: vec![],
        };
        assert_eq!(f.field_order(), 6);
    }
}
