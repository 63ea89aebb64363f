//! Bialgebras `S(V)` and `U_t(g)`, iterated coproducts, and checkers for the
//! Hopf, module-algebra and bimodule laws.

mod bialgebra;
mod bimodule;
mod enveloping;
pub(crate) mod lie;
mod symmetric;

pub use bialgebra::{
    binomial_coproduct, check_hopf_axioms, contract2, coproduct_on_leg, extend_on_monomials, legwise_mul,
    monomial_basis, sweedler_iterate, sweedler_iterate_with, Bialgebra,
};
pub use bimodule::{check_module_structures, BimoduleAlgebra, BrokenLeibniz, DerivationBimodule, TrivialRight};
pub use enveloping::EnvelopingAlgebra;
pub use lie::LieAlgebra;
pub use symmetric::{CorruptedSymmetric, SymmetricAlgebra};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactalg::{parse_poly, Poly, Tensor};
    use crate::scalar::rat;
    use crate::{QPoly, Rational};

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    fn t2(b: &dyn Bialgebra<Rational>, l: &str, r: &str) -> Tensor<Rational> {
        let n = b.name();
        Tensor::pure(&[&n, &n], &[p(l), p(r)])
    }

    fn sum(parts: &[Tensor<Rational>]) -> Tensor<Rational> {
        let mut acc = parts[0].zero_like();
        for x in parts {
            acc.add_assign(x);
        }
        acc
    }

    #[test]
    fn symmetric_coproduct_examples() {
        let s = SymmetricAlgebra::new(2, None);
        let b: &dyn Bialgebra<Rational> = &s;
        assert_eq!(
            b.coproduct(&p("p1^2")),
            sum(&[t2(b, "p1^2", "1"), t2(b, "p1", "p1").scale(&rat(2, 1)), t2(b, "1", "p1^2")])
        );
        assert_eq!(b.coproduct(&p("1")), t2(b, "1", "1"));
        assert_eq!(
            b.coproduct(&p("p1*p2")),
            sum(&[t2(b, "p1*p2", "1"), t2(b, "p1", "p2"), t2(b, "p2", "p1"), t2(b, "1", "p1*p2")])
        );
    }

    #[test]
    fn straightening_examples() {
        let h = EnvelopingAlgebra::<Rational>::new(LieAlgebra::heisenberg(), Some(4));
        assert_eq!(h.mul(&p("Y"), &p("X")), p("X*Y - t*Z"));
        let axb = EnvelopingAlgebra::<Rational>::new(LieAlgebra::axb(), Some(4));
        assert_eq!(axb.mul(&p("E"), &p("H")), p("H*E - t*E"));
        let ab = EnvelopingAlgebra::<Rational>::new(LieAlgebra::abelian(&["A", "B"]), Some(4));
        assert_eq!(ab.mul(&p("B^2 + A"), &p("A*B")), p("A*B^3 + A^2*B"));
    }

    #[test]
    fn straightening_at_zero_cap_is_commutative() {
        let h = EnvelopingAlgebra::<Rational>::new(LieAlgebra::heisenberg(), Some(0));
        assert_eq!(h.mul(&p("Y"), &p("X")), p("X*Y"));
    }

    #[test]
    fn sweedler_examples() {
        let s = SymmetricAlgebra::new(1, None);
        let b: &dyn Bialgebra<Rational> = &s;
        let n = b.name();
        let d = sweedler_iterate(b, &p("p1"), 2);
        let expect = Tensor::from_summands(
            &[&n, &n, &n],
            &[
                (rat(1, 1), vec![p("p1"), p("1"), p("1")]),
                (rat(1, 1), vec![p("1"), p("p1"), p("1")]),
                (rat(1, 1), vec![p("1"), p("1"), p("p1")]),
            ],
        )
        .unwrap();
        assert_eq!(d, expect);
        assert_eq!(sweedler_iterate_with(b, &p("p1"), 2, |_| 1), expect);
        assert_eq!(sweedler_iterate(b, &p("1"), 2), Tensor::pure(&[&n, &n, &n], &[p("1"), p("1"), p("1")]));
        let sq = sweedler_iterate(b, &p("p1^2"), 2);
        assert_eq!(sq.len(), 6);
        assert_eq!(sq.coefficient_sum(), rat(9, 1));
    }

    #[test]
    fn hopf_axioms_symmetric_and_heisenberg() {
        let s = SymmetricAlgebra::new(2, None);
        let r = check_hopf_axioms::<Rational, _>(&s, 3);
        assert!(r.all_passed(), "{:?}", r.failures());
        let h = EnvelopingAlgebra::<Rational>::new(LieAlgebra::heisenberg(), Some(4));
        let r = check_hopf_axioms::<Rational, _>(&h, 3);
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(r.checks.len(), 7);
    }

    #[test]
    fn corrupted_coproduct_is_caught() {
        let c = CorruptedSymmetric(SymmetricAlgebra::new(1, None));
        let r = check_hopf_axioms::<Rational, _>(&c, 3);
        assert!(!r.all_passed());
        let counit = r.get("counit").unwrap();
        assert!(!counit.passed);
        assert!(counit.witness.as_ref().unwrap().starts_with("a = p1"));
        assert!(!r.get("coassociativity").unwrap().passed);
        assert!(!r.get("compatibility").unwrap().passed);
    }

    fn abelian_fields(n: usize, factor: QPoly) -> DerivationBimodule<Rational> {
        let vars: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
        let fields: Vec<Vec<QPoly>> = (0..n)
            .map(|i| (0..n).map(|k| if i == k { Poly::one() } else { Poly::zero() }).collect())
            .collect();
        DerivationBimodule {
            name: "C".into(),
            vars,
            acting: Arc::new(SymmetricAlgebra::new(n, Some(4))),
            left_fields: fields.clone(),
            right_fields: fields,
            left_factor: factor.clone(),
            right_factor: factor,
            tcap: Some(4),
            coalgebra: None,
            basis_with_t: false,
        }
    }

    #[test]
    fn zero_actions_pass() {
        let c = abelian_fields(2, Poly::zero());
        let r = check_module_structures(&c, 2);
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn broken_leibniz_fails() {
        let c = BrokenLeibniz(abelian_fields(1, p("t")));
        let r = check_module_structures(&c, 2);
        assert!(!r.get("left_module_algebra").unwrap().passed);
        assert!(r.get("right_module_algebra").unwrap().passed);
        // the explicit counterexample: p ⇀ (q·q)
        assert_eq!(c.left_act(&p("p1"), &p("q1^2")), p("t*q1"));
    }
}
