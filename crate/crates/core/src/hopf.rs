//! Color Hopf structure on U(L) and the Hopf-ideal obstruction for omega != 0.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::enveloping::{EnvelopingAlgebra, PbwElement, Word};
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::lincomb::LinComb;
use crate::scalar::CycScalar;

/// Element of the braided tensor square, sum of u (x) v.
pub type TensorSquareElement = LinComb<(Word, Word)>;

type TensorCube = LinComb<(Word, Word, Word)>;

fn render(e: &EnvelopingAlgebra, t: &TensorSquareElement) -> BTreeMap<String, String> {
    t.iter()
        .map(|((a, b), c)| {
            (
                format!("{}|{}", e.word_name(a), e.word_name(b)),
                c.to_string(),
            )
        })
        .collect()
}

/// (a (x) b) * (a' (x) b') = eps(|b|, |a'|) a a' (x) b b', factors in normal form.
pub fn braided_mul(
    e: &EnvelopingAlgebra,
    s: &TensorSquareElement,
    t: &TensorSquareElement,
) -> TensorSquareElement {
    let mut out = TensorSquareElement::new();
    for ((a, b), x) in s {
        for ((a2, b2), y) in t {
            let c = &(x * y) * &e.eps_words(b, a2);
            let left = e.nf_word(&[a.as_slice(), a2.as_slice()].concat());
            let right = e.nf_word(&[b.as_slice(), b2.as_slice()].concat());
            for (u, p) in &left {
                for (v, q) in &right {
                    out.add_term((u.clone(), v.clone()), &(&c * p) * q);
                }
            }
        }
    }
    out
}

pub fn tensor_unit(e: &EnvelopingAlgebra) -> TensorSquareElement {
    TensorSquareElement::single((vec![], vec![]), e.one())
}

fn require_untwisted(e: &EnvelopingAlgebra) -> Result<()> {
    if e.omega().is_zero() {
        Ok(())
    } else {
        Err(Error::NonzeroTwist)
    }
}

fn coproduct_word(e: &EnvelopingAlgebra, w: &[usize]) -> TensorSquareElement {
    w.iter().fold(tensor_unit(e), |acc, &i| {
        let prim: TensorSquareElement =
            [((vec![i], vec![]), e.one()), ((vec![], vec![i]), e.one())]
                .into_iter()
                .collect();
        braided_mul(e, &acc, &prim)
    })
}

/// Delta(x) = x (x) 1 + 1 (x) x, extended as a braided algebra map.
pub fn coproduct(e: &EnvelopingAlgebra, a: &PbwElement) -> Result<TensorSquareElement> {
    require_untwisted(e)?;
    let mut out = TensorSquareElement::new();
    for (w, c) in a {
        out.add_scaled(&coproduct_word(e, w), c);
    }
    Ok(out)
}

/// S(x_1..x_k) = (-1)^k prod_{p<q} eps(x_p, x_q) x_k..x_1.
pub fn antipode(e: &EnvelopingAlgebra, a: &PbwElement) -> Result<PbwElement> {
    require_untwisted(e)?;
    let l = e.lie();
    let mut out = PbwElement::new();
    for (w, c) in a {
        let mut coef = if w.len() % 2 == 0 { c.clone() } else { -c };
        for p in 0..w.len() {
            for q in p + 1..w.len() {
                coef = &coef * l.eps(w[p], w[q]);
            }
        }
        let rev: Word = w.iter().rev().copied().collect();
        out.add_scaled(&e.nf_word(&rev), &coef);
    }
    Ok(out)
}

/// Coefficient of the unit monomial.
pub fn counit(e: &EnvelopingAlgebra, a: &PbwElement) -> CycScalar {
    a.get(&vec![]).cloned().unwrap_or_else(|| e.zero())
}

#[derive(Debug, Clone, Serialize)]
pub struct HopfReport {
    pub max_degree: usize,
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub coassociative: bool,
    pub counit: bool,
    pub antipode: bool,
    pub multiplicative: bool,
    /// Monomials (or pairs) where an identity failed, with the axiom name.
    pub failures: Vec<String>,
    pub ok: bool,
}

fn apply_left(e: &EnvelopingAlgebra, t: &TensorSquareElement) -> TensorCube {
    let mut out = TensorCube::new();
    for ((a, b), c) in t {
        for ((u, v), d) in &coproduct_word(e, a) {
            out.add_term((u.clone(), v.clone(), b.clone()), c * d);
        }
    }
    out
}

fn apply_right(e: &EnvelopingAlgebra, t: &TensorSquareElement) -> TensorCube {
    let mut out = TensorCube::new();
    for ((a, b), c) in t {
        for ((u, v), d) in &coproduct_word(e, b) {
            out.add_term((a.clone(), u.clone(), v.clone()), c * d);
        }
    }
    out
}

/// Coassociativity, counit, antipode and multiplicativity of Delta on the
/// PBW basis of U(L) up to filtration degree `max_degree`.
pub fn verify_hopf(e: &EnvelopingAlgebra, max_degree: usize, exec: Exec) -> Result<HopfReport> {
    require_untwisted(e)?;
    let basis = e.pbw_monomials(max_degree);
    let per_monomial = exec.flat_map(&basis, |w| {
        let mut fails = Vec::new();
        let name = e.word_name(w);
        let a = PbwElement::single(w.clone(), e.one());
        let d = coproduct_word(e, w);
        if apply_left(e, &d) != apply_right(e, &d) {
            fails.push(format!("coassociative:{name}"));
        }
        let mut left = PbwElement::new();
        let mut right = PbwElement::new();
        for ((u, v), c) in &d {
            if v.is_empty() {
                left.add_term(u.clone(), c.clone());
            }
            if u.is_empty() {
                right.add_term(v.clone(), c.clone());
            }
        }
        if left != a || right != a {
            fails.push(format!("counit:{name}"));
        }
        let expected = e.scalar(counit(e, &a));
        let mut s_id = PbwElement::new();
        let mut id_s = PbwElement::new();
        for ((u, v), c) in &d {
            let u_el = PbwElement::single(u.clone(), e.one());
            let v_el = PbwElement::single(v.clone(), e.one());
            let su = antipode(e, &u_el).expect("checked untwisted");
            let sv = antipode(e, &v_el).expect("checked untwisted");
            s_id.add_scaled(&e.multiply(&su, &v_el), c);
            id_s.add_scaled(&e.multiply(&u_el, &sv), c);
        }
        if s_id != expected || id_s != expected {
            fails.push(format!("antipode:{name}"));
        }
        fails
    });
    let pairs: Vec<(&Word, &Word)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |b| (a, b)))
        .filter(|(a, b)| !a.is_empty() && !b.is_empty() && a.len() + b.len() <= max_degree)
        .collect();
    let per_pair = exec.flat_map(&pairs, |&(a, b)| {
        let ea = PbwElement::single(a.clone(), e.one());
        let eb = PbwElement::single(b.clone(), e.one());
        let lhs = coproduct(e, &e.multiply(&ea, &eb)).expect("checked untwisted");
        let rhs = braided_mul(e, &coproduct_word(e, a), &coproduct_word(e, b));
        if lhs == rhs {
            vec![]
        } else {
            vec![format!(
                "multiplicative:{}*{}",
                e.word_name(a),
                e.word_name(b)
            )]
        }
    });
    let has = |tag: &str| per_monomial.iter().any(|f| f.starts_with(tag));
    let failures: Vec<String> = per_monomial.iter().chain(&per_pair).cloned().collect();
    Ok(HopfReport {
        max_degree,
        basis_size: basis.len(),
        pairs_checked: pairs.len(),
        coassociative: !has("coassociative:"),
        counit: !has("counit:"),
        antipode: !has("antipode:"),
        multiplicative: per_pair.is_empty(),
        ok: failures.is_empty(),
        failures,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct Obstruction {
    pub i: String,
    pub j: String,
    pub counit: String,
    /// Coefficient of 1 (x) 1 in the residue.
    pub coproduct_residue: String,
    /// The full residue after reducing both tensor factors.
    pub residue_terms: BTreeMap<String, String>,
}

/// Evaluates the counit and the coproduct defect on every defining relation
/// r_ij = x_i x_j - eps x_j x_i - [x_i, x_j] - omega(x_i, x_j), i < j or
/// i = j odd. Relations are expanded in the free algebra, then each tensor
/// factor is reduced to normal form.
pub fn hopf_ideal_check(e: &EnvelopingAlgebra) -> Vec<Obstruction> {
    let l = e.lie();
    let d = l.dim();
    let mut out = Vec::new();
    for i in 0..d {
        for j in i..d {
            if i == j && !l.is_odd(i) {
                continue;
            }
            let mut r: LinComb<Word> = LinComb::new();
            r.add_term(vec![i, j], e.one());
            r.add_term(vec![j, i], -l.eps(i, j));
            for (&k, c) in &l.bracket(i, j) {
                r.add_term(vec![k], -c);
            }
            let w = e.omega().value(l, i, j);
            r.add_term(vec![], -&w);

            let counit_value = counit(e, &r);
            // Delta on the free algebra: braided, no reduction yet.
            let mut delta = TensorSquareElement::new();
            for (word, c) in &r {
                let mut acc = tensor_unit(e);
                for &g in word {
                    let mut next = TensorSquareElement::new();
                    for ((a, b), x) in &acc {
                        let a2 = [a.as_slice(), &[g]].concat();
                        next.add_term((a2, b.clone()), x * &e.eps_words(b, &[g]));
                        let b2 = [b.as_slice(), &[g]].concat();
                        next.add_term((a.clone(), b2), x.clone());
                    }
                    acc = next;
                }
                delta.add_scaled(&acc, c);
            }
            for (word, c) in &r {
                delta.add_term((word.clone(), vec![]), -c);
                delta.add_term((vec![], word.clone()), -c);
            }
            let mut residue = TensorSquareElement::new();
            for ((a, b), c) in &delta {
                for (u, p) in &e.nf_word(a) {
                    for (v, q) in &e.nf_word(b) {
                        residue.add_term((u.clone(), v.clone()), &(c * p) * q);
                    }
                }
            }
            if counit_value.is_zero() && residue.is_zero() {
                continue;
            }
            let unit_part = residue
                .get(&(vec![], vec![]))
                .cloned()
                .unwrap_or_else(|| e.zero());
            let names = l.generators();
            out.push(Obstruction {
                i: names[i].name.clone(),
                j: names[j].name.clone(),
                counit: counit_value.to_string(),
                coproduct_residue: unit_part.to_string(),
                residue_terms: render(e, &residue),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;
    use crate::catalog;
    use crate::colorlie::Cocycle2;

    fn untwisted(l: crate::colorlie::ColorLieAlgebra) -> EnvelopingAlgebra {
        EnvelopingAlgebra::new(l, Cocycle2::zero()).unwrap()
    }

    fn t(terms: &[(&[usize], &[usize], i64)]) -> TensorSquareElement {
        terms
            .iter()
            .map(|(a, b, c)| ((a.to_vec(), b.to_vec()), CycScalar::from_int(*c, 1)))
            .collect()
    }

    #[test]
    fn braided_product_examples() {
        let poly = untwisted(catalog::abelian(2));
        let ab = t(&[(&[0], &[1], 1)]);
        assert_eq!(braided_mul(&poly, &tensor_unit(&poly), &ab), ab);
        assert_eq!(
            braided_mul(&poly, &t(&[(&[], &[1], 1)]), &t(&[(&[0], &[], 1)])),
            t(&[(&[0], &[1], 1)])
        );
        let sup = untwisted(catalog::super_1_1());
        assert_eq!(
            braided_mul(&sup, &t(&[(&[], &[1], 1)]), &t(&[(&[1], &[], 1)])),
            t(&[(&[1], &[1], -1)])
        );
    }

    #[test]
    fn coproduct_examples() {
        let poly = untwisted(catalog::abelian(2));
        let x = poly.generator(0);
        assert_eq!(
            coproduct(&poly, &x).unwrap(),
            t(&[(&[0], &[], 1), (&[], &[0], 1)])
        );
        let qp = poly.nf_word(&[0, 1]);
        assert_eq!(
            coproduct(&poly, &qp).unwrap(),
            t(&[
                (&[0, 1], &[], 1),
                (&[0], &[1], 1),
                (&[1], &[0], 1),
                (&[], &[0, 1], 1)
            ])
        );
        // theta theta = 0 in U of the abelian super algebra; the cross terms
        // of Delta(theta) Delta(theta) cancel as well.
        let sup = untwisted(catalog::super_1_1());
        let th = coproduct_word(&sup, &[1]);
        assert!(braided_mul(&sup, &th, &th).is_zero());
        let (l, w) = catalog::weyl_parts();
        let weyl = EnvelopingAlgebra::new(l, w).unwrap();
        assert!(matches!(
            coproduct(&weyl, &weyl.unit()),
            Err(Error::NonzeroTwist)
        ));
    }

    #[test]
    fn antipode_examples() {
        let poly = untwisted(catalog::abelian(2));
        assert_eq!(
            antipode(&poly, &poly.generator(0)).unwrap(),
            poly.generator(0).scale(&CycScalar::from_int(-1, 1))
        );
        let qp = poly.nf_word(&[0, 1]);
        assert_eq!(antipode(&poly, &qp).unwrap(), qp);
        let sl2 = untwisted(catalog::sl2());
        // S(e f) = f e = e f - h.
        assert_eq!(
            antipode(&sl2, &sl2.nf_word(&[1, 2])).unwrap(),
            sl2.nf_word(&[2, 1])
        );
    }

    #[test]
    fn hopf_axioms_on_untwisted_algebras() {
        let algebras = vec![
            untwisted(catalog::heisenberg()),
            untwisted(catalog::sl2()),
            untwisted(catalog::super_1_1()),
            untwisted(catalog::clifford_parts().0),
            untwisted(catalog::z3z3_parts().0),
        ];
        for e in &algebras {
            let r = verify_hopf(e, 3, Exec::default()).unwrap();
            assert!(r.ok, "{:?}", r.failures);
            assert!(hopf_ideal_check(e).is_empty());
        }
    }

    #[test]
    fn obstruction_table_is_omega() {
        let (l, w) = catalog::weyl_parts();
        let weyl = EnvelopingAlgebra::new(l, w).unwrap();
        let obs = hopf_ideal_check(&weyl);
        assert_eq!(obs.len(), 1);
        assert_eq!((obs[0].i.as_str(), obs[0].j.as_str()), ("q", "p"));
        assert_eq!(obs[0].counit, "-1");
        assert_eq!(obs[0].coproduct_residue, "1");
        assert_eq!(obs[0].residue_terms.len(), 1);

        let (l, w) = catalog::clifford_parts();
        let cl = EnvelopingAlgebra::new(l, w).unwrap();
        let obs = hopf_ideal_check(&cl);
        let sites: Vec<(&str, &str, &str)> = obs
            .iter()
            .map(|o| (o.i.as_str(), o.j.as_str(), o.counit.as_str()))
            .collect();
        assert_eq!(sites, [("e1", "e1", "-2"), ("e2", "e2", "-2")]);
        assert!(obs.iter().all(|o| o.coproduct_residue == "2"));

        let (l, w) = catalog::z3z3_parts();
        let z = EnvelopingAlgebra::new(l, w).unwrap();
        let obs = hopf_ideal_check(&z);
        assert_eq!(obs.len(), 1);
        assert_eq!((obs[0].i.as_str(), obs[0].j.as_str()), ("a", "a2"));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn coproduct_is_multiplicative(u in prop::collection::vec(0usize..3, 0..4),
                                       v in prop::collection::vec(0usize..3, 0..4)) {
            let e = untwisted(catalog::sl2());
            let (a, b) = (e.nf_word(&u), e.nf_word(&v));
            let lhs = coproduct(&e, &e.multiply(&a, &b)).unwrap();
            let rhs = braided_mul(&e, &coproduct(&e, &a).unwrap(), &coproduct(&e, &b).unwrap());
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn antipode_is_anti_multiplicative(u in prop::collection::vec(0usize..4, 0..4),
                                           v in prop::collection::vec(0usize..4, 0..4)) {
            let e = untwisted(catalog::z3z3_parts().0);
            let (a, b) = (e.nf_word(&u), e.nf_word(&v));
            let lhs = antipode(&e, &e.multiply(&a, &b)).unwrap();
            let rhs = e
                .multiply(&antipode(&e, &b).unwrap(), &antipode(&e, &a).unwrap())
                .scale(&e.eps_words(&u, &v));
            prop_assert_eq!(lhs, rhs);
        }
    }
}
