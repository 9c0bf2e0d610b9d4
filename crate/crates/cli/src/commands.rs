//! One function per subcommand; each returns results plus violations.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use colorlie::cohomology::{
    cohomology_dims, hochschild_truncated, verify_complex, verify_resolution, DegreeFilter,
};
use colorlie::colorlie::{
    h2_all_blocks, is_cohomologous, validate_algebra, validate_cocycle, Cochain1, Cocycle2,
    ColorLieAlgebra,
};
use colorlie::enveloping::{dims as dims_table, filtered_iso, EnvelopingAlgebra, PbwElement};
use colorlie::file::Problem;
use colorlie::hopf::{hopf_ideal_check, verify_hopf};
use colorlie::repmodule::{adjoint_truncated, validate_module, GradedModule};
use colorlie::report::Violation;
use colorlie::{Error, Exec, Result};

use crate::{Outcome, Settings};

const DEFAULT_BUDGET: usize = 1_000_000;

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn ok(results: Value) -> Outcome {
    Outcome {
        results,
        violations: vec![],
    }
}

fn cocycle_json(l: &ColorLieAlgebra, w: &Cocycle2) -> BTreeMap<String, String> {
    w.normalized(l)
        .entries
        .iter()
        .filter(|((i, j), _)| i <= j)
        .map(|(&(i, j), v)| {
            let g = l.generators();
            (format!("{},{}", g[i].name, g[j].name), v.to_string())
        })
        .collect()
}

fn cochain_json(l: &ColorLieAlgebra, c: &Cochain1) -> BTreeMap<String, String> {
    c.values
        .iter()
        .map(|(&k, v)| (l.generators()[k].name.clone(), v.to_string()))
        .collect()
}

/// Violations of the algebra and of omega.
fn algebra_violations(p: &Problem) -> Vec<Violation> {
    let mut out = validate_algebra(&p.lie);
    out.extend(validate_cocycle(&p.lie, &p.omega));
    out
}

/// A validated enveloping algebra, or the reasons there is none.
fn enveloping(
    p: &Problem,
    settings: &Settings,
    omega: &Cocycle2,
) -> Result<std::result::Result<EnvelopingAlgebra, Vec<Violation>>> {
    if settings.force {
        let budget = settings.budget.or(Some(DEFAULT_BUDGET));
        return p.enveloping(omega, true, budget).map(Ok);
    }
    match p.enveloping(omega, false, None) {
        Ok(e) => Ok(Ok(e)),
        Err(Error::Untrusted(_)) => {
            let mut v = validate_algebra(&p.lie);
            v.extend(validate_cocycle(&p.lie, omega));
            if v.is_empty() {
                let e = p.enveloping(omega, true, Some(DEFAULT_BUDGET))?;
                v = overlap_violations(&e);
            }
            Ok(Err(v))
        }
        Err(e) => Err(e),
    }
}

fn refused(violations: Vec<Violation>) -> Outcome {
    Outcome {
        results: Value::Null,
        violations,
    }
}

macro_rules! trusted {
    ($p:expr, $settings:expr, $omega:expr) => {
        match enveloping($p, $settings, $omega)? {
            Ok(e) => e,
            Err(v) => return Ok(refused(v)),
        }
    };
}

fn overlap_violations(e: &EnvelopingAlgebra) -> Vec<Violation> {
    e.check_overlaps()
        .mismatches
        .into_iter()
        .map(|m| {
            Violation::new(
                "overlap",
                m.site,
                format!(
                    "{} resolves to two normal forms, difference {:?}",
                    m.word, m.difference
                ),
            )
        })
        .collect()
}

pub fn check(p: &Problem) -> Outcome {
    let mut violations = algebra_violations(p);
    for (name, w) in &p.cocycles {
        for mut v in validate_cocycle(&p.lie, w) {
            v.detail = format!("cocycles/{name}: {}", v.detail);
            violations.push(v);
        }
    }
    // A module may disagree with the twist it declares; that is reported
    // as a defect, while shape and degree errors are violations.
    let mut defects = BTreeMap::new();
    for m in &p.modules {
        for mut v in validate_module(&p.lie, &m.twist, m) {
            v.detail = format!("module {}: {}", m.name, v.detail);
            if v.axiom == "module_relation" {
                defects
                    .entry(m.name.clone())
                    .or_insert_with(Vec::new)
                    .push(to_value(&v));
            } else {
                violations.push(v);
            }
        }
    }
    Outcome {
        results: json!({
            "name": p.name,
            "generators": p.lie.dim(),
            "field_order": p.lie.field_order(),
            "cocycles": p.cocycles.len() + 1,
            "modules": p.modules.len(),
            "module_twist_defects": defects,
            "valid": violations.is_empty(),
        }),
        violations,
    }
}

pub fn overlaps(p: &Problem, settings: &Settings) -> Result<Outcome> {
    let mut violations = algebra_violations(p);
    let budget = settings.budget.or(Some(DEFAULT_BUDGET));
    let e = p.enveloping(&p.omega, true, budget)?;
    let report = e.check_overlaps();
    violations.extend(overlap_violations(&e));
    Ok(Outcome {
        results: json!({
            "checked": report.checked,
            "mismatches": to_value(&report.mismatches),
            "confluent": report.is_confluent(),
        }),
        violations,
    })
}

pub fn nf(p: &Problem, settings: &Settings, word: &str) -> Result<Outcome> {
    let e = trusted!(p, settings, &p.omega);
    let w = e.parse_word(word)?;
    let nf = e.try_normal_form(
        &PbwElement::single(w, e.one()),
        colorlie::enveloping::Strategy::Leftmost,
    )?;
    Ok(ok(to_value(&e.to_json_map(&nf))))
}

pub fn mul(p: &Problem, settings: &Settings, left: &str, right: &str) -> Result<Outcome> {
    let e = trusted!(p, settings, &p.omega);
    let a = e.nf_word(&e.parse_word(left)?);
    let b = e.nf_word(&e.parse_word(right)?);
    Ok(ok(to_value(&e.to_json_map(&e.multiply(&a, &b)))))
}

pub fn dims(p: &Problem, settings: &Settings, max_degree: usize) -> Result<Outcome> {
    let e = trusted!(p, settings, &p.omega);
    let table = dims_table(&e, max_degree);
    let mut violations = Vec::new();
    for r in table.rows.iter().filter(|r| r.pbw != r.symmetric) {
        violations.push(Violation::new(
            "pbw_count",
            vec![r.n],
            format!(
                "degree {:?}: {} PBW monomials, {} expected",
                r.degree, r.pbw, r.symmetric
            ),
        ));
    }
    Ok(Outcome {
        results: to_value(&table),
        violations,
    })
}

pub fn h2(p: &Problem) -> Outcome {
    let violations = validate_algebra(&p.lie);
    if !violations.is_empty() {
        return refused(violations);
    }
    let l = &p.lie;
    let blocks: Vec<Value> = h2_all_blocks(l)
        .iter()
        .map(|b| {
            json!({
                "degree": colorlie::cohomology::degree_label(&b.degree),
                "cocycles": b.cocycle_dim,
                "coboundaries": b.coboundary_dim,
                "dimension": b.dimension,
                "representatives": b.representatives.iter().map(|w| cocycle_json(l, w)).collect::<Vec<_>>(),
            })
        })
        .collect();
    let scalar = colorlie::colorlie::h2_scalar(l).dimension;
    ok(json!({ "H2@e": scalar, "blocks": blocks }))
}

pub fn cohomologous(p: &Problem, first: &str, second: &str) -> Result<Outcome> {
    let (w1, w2) = (p.cocycle(first)?, p.cocycle(second)?);
    let mut violations = validate_algebra(&p.lie);
    violations.extend(validate_cocycle(&p.lie, &w1));
    violations.extend(validate_cocycle(&p.lie, &w2));
    if !violations.is_empty() {
        return Ok(refused(violations));
    }
    let l = &p.lie;
    Ok(match is_cohomologous(l, &w1, &w2) {
        Some(lambda) => ok(json!({
            "first": first,
            "second": second,
            "cohomologous": true,
            "lambda": cochain_json(l, &lambda),
        })),
        None => Outcome {
            results: json!({ "first": first, "second": second, "cohomologous": false }),
            violations: vec![Violation::new(
                "not_cohomologous",
                vec![],
                format!("{first} - {second} is not a coboundary"),
            )],
        },
    })
}

pub fn iso(
    p: &Problem,
    settings: &Settings,
    first: &str,
    second: &str,
    max_degree: usize,
) -> Result<Outcome> {
    let (w1, w2) = (p.cocycle(first)?, p.cocycle(second)?);
    let e1 = trusted!(p, settings, &w1);
    let e2 = trusted!(p, settings, &w2);
    let Some(lambda) = is_cohomologous(&p.lie, &w1, &w2) else {
        return Ok(refused(vec![Violation::new(
            "not_cohomologous",
            vec![],
            format!("{first} - {second} is not a coboundary"),
        )]));
    };
    let report = filtered_iso(&e1, &e2, &lambda, max_degree)?;
    let violations = if report.ok {
        vec![]
    } else {
        vec![Violation::new(
            "filtered_iso",
            vec![],
            "induced map fails a check",
        )]
    };
    Ok(Outcome {
        results: to_value(&report),
        violations,
    })
}

fn select_module(
    p: &Problem,
    settings: &Settings,
    name: &str,
) -> Result<std::result::Result<GradedModule, Vec<Violation>>> {
    if name == "trivial" {
        return Ok(Ok(GradedModule::trivial(&p.lie)));
    }
    if let Some(n) = name.strip_prefix("adjoint:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Input(format!("bad truncation in {name:?}")))?;
        return Ok(match enveloping(p, settings, &p.omega)? {
            Ok(e) => Ok(adjoint_truncated(&e, n)?),
            Err(v) => Err(v),
        });
    }
    Ok(Ok(p.module(name)?.clone()))
}

pub fn cohomology(
    p: &Problem,
    settings: &Settings,
    module: &str,
    n_max: usize,
    filter: DegreeFilter,
) -> Result<Outcome> {
    let violations = algebra_violations(p);
    if !violations.is_empty() && !settings.force {
        return Ok(refused(violations));
    }
    let m = match select_module(p, settings, module)? {
        Ok(m) => m,
        Err(v) => return Ok(refused(v)),
    };
    let l = &p.lie;
    let mut violations: Vec<Violation> = validate_module(l, &m.twist, &m)
        .into_iter()
        .map(|mut v| {
            v.detail = format!("module {}: {}", m.name, v.detail);
            v
        })
        .collect();
    let defect = verify_complex(l, &m.twist, &m, n_max, Exec::default());
    let mut results = json!({
        "module": m.name,
        "module_dim": m.dim(),
        "n_max": n_max,
        "degree": filter,
        "defect": to_value(&defect),
    });
    if defect.squares_zero {
        let rep = cohomology_dims(l, &m, n_max, filter, Exec::default())?;
        results["table"] = to_value(&rep.table());
        results["blocks"] = to_value(&rep.blocks);
    } else {
        for b in defect.squares.iter().filter(|b| b.nonzero_entries > 0) {
            violations.push(Violation::new(
                "delta_squared",
                vec![b.n],
                format!("degree {}: {} nonzero entries", b.degree, b.nonzero_entries),
            ));
        }
    }
    Ok(Outcome {
        results,
        violations,
    })
}

pub fn resolution(
    p: &Problem,
    settings: &Settings,
    n_max: usize,
    deg_max: usize,
) -> Result<Outcome> {
    let e = trusted!(p, settings, &p.omega);
    let rep = verify_resolution(&e, n_max, deg_max, Exec::default())?;
    let mut violations: Vec<Violation> = rep
        .dd_failures
        .iter()
        .map(|f| {
            Violation::new(
                "d_squared",
                vec![f.n],
                format!("on <{}>", f.wedge.join(",")),
            )
        })
        .collect();
    for r in rep.koszul.iter().filter(|r| r.homology != 0) {
        violations.push(Violation::new(
            "koszul_exactness",
            vec![r.total_degree, r.n],
            format!("homology of dimension {}", r.homology),
        ));
    }
    Ok(Outcome {
        results: to_value(&rep),
        violations,
    })
}

pub fn hochschild(
    p: &Problem,
    settings: &Settings,
    n: usize,
    truncations: &[usize],
) -> Result<Outcome> {
    let e = trusted!(p, settings, &p.omega);
    let rows = hochschild_truncated(&e, n, truncations, Exec::default())?;
    let stabilized = rows.len() >= 2 && rows[rows.len() - 1].dim == rows[rows.len() - 2].dim;
    Ok(ok(json!({
        "n": n,
        "rows": to_value(&rows),
        "stabilized": stabilized,
    })))
}

pub fn hopf(p: &Problem, settings: &Settings, max_degree: usize) -> Result<Outcome> {
    let e = trusted!(p, settings, &p.omega);
    let e0 = trusted!(p, settings, &Cocycle2::zero());
    let axioms = verify_hopf(&e0, max_degree, Exec::default())?;
    let obstructions = hopf_ideal_check(&e);
    let mut violations: Vec<Violation> = obstructions
        .iter()
        .map(|o| {
            let site = [&o.i, &o.j]
                .iter()
                .filter_map(|n| p.lie.index_of(n))
                .collect();
            Violation::new(
                "hopf_ideal",
                site,
                format!(
                    "counit {}, coproduct residue {}",
                    o.counit, o.coproduct_residue
                ),
            )
        })
        .collect();
    violations.extend(
        axioms
            .failures
            .iter()
            .map(|f| Violation::new("hopf_axiom", vec![], f.clone())),
    );
    Ok(Outcome {
        results: json!({
            "axioms": to_value(&axioms),
            "obstructions": to_value(&obstructions),
        }),
        violations,
    })
}
