//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::{Command, ExitCode};
use std::time::Instant;

use num_rational::Rational64;
use num_traits::Zero;
use serde_json::Value;

use colorlie::file::Problem;

const VALID: [&str; 7] = [
    "weyl",
    "clifford2",
    "heisenberg",
    "sl2",
    "aff1",
    "super_1_1",
    "z3z3_example",
];

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn(&mut Runner) -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Runs the binary and keeps every invocation for the determinism pass.
struct Runner {
    fixtures: PathBuf,
    log: Vec<(Vec<String>, Vec<u8>)>,
}

impl Runner {
    fn fixture(&self, name: &str) -> String {
        self.fixtures
            .join(format!("{name}.json"))
            .to_string_lossy()
            .into_owned()
    }

    fn raw(args: &[String]) -> (i32, Vec<u8>) {
        let out = Command::new(env!("CARGO_BIN_EXE_colorlie"))
            .args(args)
            .output()
            .expect("binary runs");
        (out.status.code().unwrap_or(-1), out.stdout)
    }

    fn run(&mut self, cmd: &str, fixture: &str, extra: &[&str]) -> (i32, Value) {
        let mut args = vec![cmd.to_string(), self.fixture(fixture)];
        args.extend(extra.iter().map(|s| s.to_string()));
        let (code, stdout) = Self::raw(&args);
        let value = serde_json::from_slice(&stdout).unwrap_or(Value::Null);
        self.log.push((args, stdout));
        (code, value)
    }
}

fn sites(report: &Value, axiom: &str) -> Vec<Vec<u64>> {
    report["violations"]
        .as_array()
        .into_iter()
        .flatten()
        .filter(|v| v["axiom"] == axiom)
        .map(|v| {
            v["site"]
                .as_array()
                .unwrap()
                .iter()
                .map(|s| s.as_u64().unwrap())
                .collect()
        })
        .collect()
}

fn load(r: &Runner, name: &str) -> Problem {
    let text = std::fs::read_to_string(r.fixture(name)).expect("fixture readable");
    Problem::load(&text).expect("fixture loads")
}

fn axiom_gates(r: &mut Runner) -> Outcome {
    for f in VALID {
        let (code, out) = r.run("check", f, &[]);
        ensure(code == 0, || {
            format!("{f}: check exit {code}: {}", out["violations"])
        })?;
    }
    let seeded: [(&str, &str, &[u64]); 6] = [
        ("broken_jacobi", "jacobi", &[0, 1, 2]),
        ("broken_antisymmetry", "antisymmetry", &[0, 1]),
        ("broken_cocycle", "cocycle_identity", &[0, 1, 3]),
        ("bad_grading", "grading", &[0, 1, 0]),
        ("bad_bicharacter", "bicharacter_antisymmetry", &[0, 1]),
        ("bad_torsion", "bicharacter_torsion", &[0, 1]),
    ];
    for (f, axiom, site) in seeded {
        let (code, out) = r.run("check", f, &[]);
        ensure(code == 1, || format!("{f}: check exit {code}"))?;
        let found = sites(&out, axiom);
        ensure(found.contains(&site.to_vec()), || {
            format!("{f}: no {axiom} violation at {site:?}, got {found:?}")
        })?;
    }
    Ok(())
}

fn diamond(r: &mut Runner) -> Outcome {
    for f in VALID {
        let (code, out) = r.run("overlaps", f, &[]);
        ensure(code == 0 && out["results"]["confluent"] == true, || {
            format!("{f}: overlaps exit {code}")
        })?;
    }
    for f in [
        "broken_jacobi",
        "broken_antisymmetry",
        "broken_cocycle",
        "bad_grading",
        "bad_bicharacter",
        "bad_torsion",
    ] {
        let (code, _) = r.run("overlaps", f, &[]);
        ensure(code == 1, || format!("{f}: overlaps exit {code}"))?;
    }
    let (_, out) = r.run("overlaps", "broken_cocycle", &[]);
    let overlap = sites(&out, "overlap");
    let cocycle = sites(&out, "cocycle_identity");
    ensure(!overlap.is_empty() && overlap == cocycle, || {
        format!("overlap sites {overlap:?} vs cocycle sites {cocycle:?}")
    })
}

fn per_degree(out: &Value) -> Vec<u64> {
    out["results"]["per_degree"]
        .as_array()
        .map(|a| a.iter().map(|v| v.as_u64().unwrap()).collect())
        .unwrap_or_default()
}

fn pbw_counts(r: &mut Runner) -> Outcome {
    let expected: [(&str, Vec<u64>); 3] = [
        ("weyl", vec![1, 2, 3, 4, 5, 6, 7]),
        ("clifford2", vec![1, 2, 1, 0, 0, 0, 0]),
        ("super_1_1", vec![1, 2, 2, 2, 2, 2, 2]),
    ];
    for (f, want) in expected {
        let (code, out) = r.run("dims", f, &["--max-degree", "6"]);
        let got = per_degree(&out);
        ensure(code == 0 && out["results"]["agrees"] == true, || {
            format!("{f}: per-block counts disagree")
        })?;
        ensure(got == want, || format!("{f}: {got:?} != {want:?}"))?;
    }
    Ok(())
}

fn bracket_relation(r: &mut Runner) -> Outcome {
    for f in VALID {
        let p = load(r, f);
        let e = p
            .enveloping(&p.omega, false, None)
            .map_err(|e| format!("{f}: {e}"))?;
        let l = e.lie();
        for i in 0..e.dim() {
            for j in 0..e.dim() {
                let diff = e.bracket_in_u(i, j).sub(&e.embed(&l.bracket(i, j)));
                let want = e.scalar(p.omega.value(l, i, j));
                ensure(diff == want, || {
                    format!("{f}: pair ({i},{j}) gives {diff:?}")
                })?;
            }
        }
    }
    Ok(())
}

fn classification(r: &mut Runner) -> Outcome {
    let (code, out) = r.run("cohomologous", "sl2", &[]);
    ensure(code == 0 && out["results"]["lambda"]["h"] == "-1", || {
        format!("sl2: exit {code}, lambda {}", out["results"]["lambda"])
    })?;
    let (code, out) = r.run("iso", "sl2", &["--max-degree", "4"]);
    let res = &out["results"];
    ensure(
        code == 0 && res["ok"] == true && res["relation_failures"] == Value::Array(vec![]),
        || format!("sl2: iso exit {code}: {res}"),
    )?;
    let (code, out) = r.run("cohomologous", "weyl", &[]);
    ensure(code == 1 && out["results"]["cohomologous"] == false, || {
        format!("weyl: cohomologous exit {code}")
    })
}

/// Structure constants as (i, j, [(k, c)]) with i < j, trivial grading.
type Table = &'static [(usize, usize, &'static [(usize, i64)])];

const ABELIAN2: (usize, Table) = (2, &[]);
const SL2: (usize, Table) = (
    3,
    &[(0, 1, &[(1, 2)]), (0, 2, &[(2, -2)]), (1, 2, &[(0, 1)])],
);
const H3: (usize, Table) = (3, &[(0, 1, &[(2, 1)])]);
const AFF1: (usize, Table) = (2, &[(0, 1, &[(1, 1)])]);

fn subsets(d: usize, n: usize) -> Vec<Vec<usize>> {
    (0u32..1 << d)
        .filter(|m| m.count_ones() as usize == n)
        .map(|m| (0..d).filter(|i| m >> i & 1 == 1).collect())
        .collect()
}

fn rank(mut m: Vec<Vec<Rational64>>) -> usize {
    let mut rank = 0;
    let cols = m.first().map_or(0, Vec::len);
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c];
        for i in 0..m.len() {
            if i != rank && !m[i][c].is_zero() {
                let f = m[i][c] / pivot;
                let pivot_row = m[rank].clone();
                for (x, p) in m[i].iter_mut().zip(pivot_row) {
                    *x -= p * f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Classical coboundary C^n -> C^{n+1}, trivial coefficients.
fn ce_rank(alg: (usize, Table), n: usize) -> usize {
    let (d, table) = alg;
    let src = subsets(d, n);
    let dst = subsets(d, n + 1);
    let bracket = |a: usize, b: usize| -> Vec<(usize, i64)> {
        table
            .iter()
            .find(|t| (t.0, t.1) == (a, b))
            .map(|t| t.2.to_vec())
            .unwrap_or_default()
    };
    let mut rows = Vec::new();
    for s in &dst {
        let mut row = vec![Rational64::zero(); src.len()];
        for a in 0..s.len() {
            for b in a + 1..s.len() {
                let sign = if (a + b) % 2 == 0 { 1 } else { -1 };
                let rest: Vec<usize> = (0..s.len())
                    .filter(|&t| t != a && t != b)
                    .map(|t| s[t])
                    .collect();
                for (k, c) in bracket(s[a], s[b]) {
                    if rest.contains(&k) {
                        continue;
                    }
                    // Sort (k, rest) and track the sign of the permutation.
                    let below = rest.iter().filter(|&&x| x < k).count();
                    let perm = if below % 2 == 0 { 1 } else { -1 };
                    let mut key = rest.clone();
                    key.insert(below, k);
                    let col = src.iter().position(|x| *x == key).unwrap();
                    row[col] += Rational64::from(sign * perm * c);
                }
            }
        }
        rows.push(row);
    }
    if rows.is_empty() || src.is_empty() {
        0
    } else {
        rank(rows)
    }
}

fn ce_dims(alg: (usize, Table)) -> Vec<usize> {
    let d = alg.0;
    (0..=d)
        .map(|n| {
            let before = if n == 0 { 0 } else { ce_rank(alg, n - 1) };
            subsets(d, n).len() - ce_rank(alg, n) - before
        })
        .collect()
}

fn h2_classifier(r: &mut Runner) -> Outcome {
    for (f, alg, want) in [
        ("abelian2", ABELIAN2, 1u64),
        ("sl2", SL2, 0),
        ("heisenberg", H3, 2),
    ] {
        let oracle = ce_dims(alg)[2] as u64;
        let (code, out) = r.run("h2", f, &[]);
        let got = out["results"]["H2@e"].as_u64();
        let lib = colorlie::colorlie::h2_scalar(&load(r, f).lie).dimension as u64;
        ensure(
            code == 0 && oracle == want && got == Some(want) && lib == want,
            || format!("{f}: cli {got:?}, library {lib}, oracle {oracle}, expected {want}"),
        )?;
    }
    Ok(())
}

fn complexes(r: &mut Runner) -> Outcome {
    for f in VALID {
        for module in ["trivial", "adjoint:2"] {
            let (_, out) = r.run("cohomology", f, &["--module", module, "--n-max", "4"]);
            ensure(out["results"]["defect"]["squares_zero"] == true, || {
                format!("{f}/{module}: delta squared is nonzero")
            })?;
        }
        let (code, out) = r.run("resolution-check", f, &["--n-max", "4", "--deg-max", "5"]);
        let res = &out["results"];
        ensure(
            code == 0 && res["dd_failures"] == Value::Array(vec![]) && res["koszul_exact"] == true,
            || format!("{f}: resolution-check exit {code}"),
        )?;
    }
    let (_, out) = r.run("cohomology", "weyl", &["--module", "point"]);
    let defect = &out["results"]["defect"]["twist_defect"];
    ensure(
        *defect == serde_json::json!([["0", "1"], ["-1", "0"]]),
        || format!("weyl point module defect {defect}"),
    )
}

fn ce_oracle(r: &mut Runner) -> Outcome {
    for (f, alg) in [("heisenberg", H3), ("sl2", SL2), ("aff1", AFF1)] {
        let want = ce_dims(alg);
        let n_max = alg.0.to_string();
        let (code, out) = r.run("cohomology", f, &["--n-max", &n_max]);
        let got: Vec<usize> = (0..=alg.0)
            .map(|n| {
                out["results"]["table"][format!("H{n}@e")]
                    .as_u64()
                    .unwrap_or(99) as usize
            })
            .collect();
        ensure(code == 0 && got == want, || {
            format!("{f}: {got:?} vs oracle {want:?}")
        })?;
    }
    let expected: [(&str, &[usize]); 3] = [
        ("heisenberg", &[1, 2, 2, 1]),
        ("sl2", &[1, 0, 0, 1]),
        ("aff1", &[1, 1, 0]),
    ];
    for (alg, (f, want)) in [H3, SL2, AFF1].into_iter().zip(expected) {
        ensure(ce_dims(alg) == want, || {
            format!("{f}: oracle disagrees with {want:?}")
        })?;
    }
    Ok(())
}

fn hochschild_dims(out: &Value) -> Vec<u64> {
    out["results"]["rows"]
        .as_array()
        .into_iter()
        .flatten()
        .map(|row| row["dim"].as_u64().unwrap())
        .collect()
}

fn hochschild(r: &mut Runner) -> Outcome {
    let cases: [(&str, &str, Vec<u64>); 3] = [
        ("weyl", "1,2,3,4", vec![1, 1, 1, 1]),
        ("line", "1,2,3,4", vec![2, 3, 4, 5]),
        ("heisenberg", "2", vec![3]),
    ];
    for (f, truncs, want) in cases {
        let (code, out) = r.run("hochschild", f, &["--n", "0", "--truncations", truncs]);
        let got = hochschild_dims(&out);
        ensure(code == 0 && got == want, || {
            format!("{f}: {got:?} != {want:?}")
        })?;
    }
    Ok(())
}

fn hopf(r: &mut Runner) -> Outcome {
    for f in VALID {
        let (_, out) = r.run("hopf-check", f, &["--max-degree", "4"]);
        ensure(out["results"]["axioms"]["ok"] == true, || {
            format!("{f}: {}", out["results"]["axioms"]["failures"])
        })?;
    }
    for f in ["weyl", "clifford2"] {
        let p = load(r, f);
        let l = &p.lie;
        let name = |i: usize| l.generators()[i].name.clone();
        let mut want = BTreeSet::new();
        for i in 0..l.dim() {
            for j in i..l.dim() {
                let v = p.omega.value(l, i, j);
                if !v.is_zero() && (i < j || l.is_odd(i)) {
                    want.insert((name(i), name(j), (-v).to_string()));
                }
            }
        }
        let (code, out) = r.run("hopf-check", f, &[]);
        let got: BTreeSet<_> = out["results"]["obstructions"]
            .as_array()
            .into_iter()
            .flatten()
            .map(|o| {
                let s = |k: &str| o[k].as_str().unwrap_or_default().to_string();
                (s("i"), s("j"), s("counit"))
            })
            .collect();
        ensure(code == 1 && !want.is_empty() && got == want, || {
            format!("{f}: obstructions {got:?} vs {want:?}")
        })?;
    }
    Ok(())
}

fn determinism(r: &mut Runner) -> Outcome {
    ensure(!r.log.is_empty(), || "no recorded runs".into())?;
    for (args, first) in &r.log {
        let (_, second) = Runner::raw(args);
        ensure(*first == second, || format!("output differs for {args:?}"))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let mut runner = Runner {
        fixtures: PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures"),
        log: Vec::new(),
    };
    let criteria: [Criterion; 11] = [
        ("axiom gates on fixtures and seeded mutations", axiom_gates),
        ("overlap resolution and mutation localization", diamond),
        ("PBW counts match eps-symmetric counts", pbw_counts),
        ("bracket in U equals bracket plus omega", bracket_relation),
        ("sl2 cocycle trivialized, Weyl cocycle not", classification),
        ("scalar H2 against brute-force oracle", h2_classifier),
        (
            "complexes square to zero, Koszul exact, twist defect",
            complexes,
        ),
        ("cohomology against classical oracle", ce_oracle),
        ("truncated Hochschild dimensions", hochschild),
        ("Hopf identities and obstruction table", hopf),
        ("byte-identical reruns", determinism),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check(&mut runner);
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(()) => println!("PASS {:>2} {name} ({secs:.2}s)", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({secs:.2}s): {why}", k + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
