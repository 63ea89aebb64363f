//! Exact polynomials, the truncated deformation parameter and tensor elements.

mod parse;
mod poly;
mod tensor;

pub use parse::parse_poly;
pub use poly::{var_order, Monomial, Poly, T};
pub use tensor::{Tensor, TensorKey};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num::BigRational;
    use std::collections::BTreeMap;

    type P = Poly<BigRational>;

    fn p(s: &str) -> P {
        parse_poly(s).unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(p("q+t") + p("q-t"), p("2*q"));
        assert_eq!((p("q") * p("p")).to_string(), "q*p");
        let t2 = p("t^2").with_tcap(Some(2));
        assert!((t2 * p("t")).is_zero());
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(p("q^3").diff("q", 1).unwrap(), p("3*q^2"));
        assert_eq!(p("q*p").diff("p", 1).unwrap(), p("q"));
        let twice = p("q^2*p^2").diff("q", 1).unwrap().diff("q", 1).unwrap();
        assert_eq!(p("q^2*p^2").diff("q", 2).unwrap(), twice);
        assert_eq!(twice, p("2*p^2"));
        assert!(matches!(p("q").diff("z", 1), Err(crate::Error::UnknownVariable(_))));
    }

    #[test]
    fn substitution_examples() {
        let m = |pairs: &[(&str, &str)]| -> BTreeMap<String, P> {
            pairs.iter().map(|(a, b)| (a.to_string(), p(b))).collect()
        };
        assert_eq!(p("q^2").substitute(&m(&[("q", "x+y")])), p("x^2+2*x*y+y^2"));
        assert_eq!(p("q").substitute(&m(&[("q", "-q")])), p("-q"));
        let expanded = p("(q+a)*p");
        assert_eq!(p("q*p").substitute(&m(&[("q", "q+a"), ("p", "p")])), expanded);
        assert_eq!(expanded, p("q*p + a*p"));
    }

    #[test]
    fn canonical_order() {
        assert_eq!(p("1/2*t + p1*q1").to_string(), "q1*p1 + 1/2*t");
        assert_eq!(p("q10 + q2").to_string(), "q2 + q10");
        assert_eq!(p("-t*q^2 + 1").to_string(), "-q^2*t + 1");
    }

    #[test]
    fn coefficient_extraction() {
        let u = p("q + t*q*p + 3*t^2");
        assert_eq!(u.coeff_of(T, 1), p("q*p"));
        assert_eq!(u.coeff_of(T, 2), p("3"));
        assert_eq!(u.degree_in(T), 2);
        assert_eq!(u.spatial_degree(), 2);
    }

    fn tq(legs: &[&str]) -> Tensor<BigRational> {
        let polys: Vec<P> = legs.iter().map(|s| p(s)).collect();
        Tensor::pure(&["C", "B"], &polys)
    }

    #[test]
    fn tensor_normal_form() {
        let mut a = tq(&["q", "p"]);
        a.add_assign(&tq(&["q", "p"]));
        assert_eq!(a, tq(&["q", "p"]).scale(&rat(2, 1)));
        assert!(tq(&["0", "p"]).is_zero());
        let s = Tensor::from_summands(
            &["C", "B"],
            &[(rat(1, 1), vec![p("p"), p("q")]), (rat(1, 1), vec![p("q"), p("p")])],
        )
        .unwrap();
        let again = Tensor::from_summands(
            &["C", "B"],
            &s.terms().map(|(k, c)| (c.clone(), Tensor::<BigRational>::key_legs(k))).collect::<Vec<_>>(),
        )
        .unwrap();
        assert_eq!(s, again);
        assert_eq!(s.to_string(), "(p⊗q) + (q⊗p)");
    }

    #[test]
    fn tensor_carrier_mismatch() {
        let a = tq(&["q", "p"]);
        let b = Tensor::pure(&["C", "C"], &[p("q"), p("p")]);
        assert!(matches!(a.try_add(&b), Err(crate::Error::CarrierMismatch(..))));
    }

    #[test]
    fn collect_t_moves_parameter() {
        let a = tq(&["t*q", "t*p"]);
        assert_eq!(a.collect_t(1), tq(&["q", "t^2*p"]));
        assert!(a.truncate_total_t(1).is_zero());
    }
}
