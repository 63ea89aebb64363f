//! Universal deformation formulae: transport of invariant products along
//! group actions, Poisson bivector extraction, and induction along split
//! extensions.

mod group;
mod ops;
mod product;

pub use group::{ActionDescriptor, GroupDescriptor};
pub use ops::{
    alpha, check_classical_limit, check_left_invariance, check_product_associativity, extract_poisson, first_order,
    fundamental_fields, induction_product, left_translate, predicted_poisson, udf_transport, Bivector, SplitExtension,
    Transported,
};
pub use product::{FnProduct, InducedProduct, InvariantProduct, LambdaStar, Pointwise};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::exactalg::parse_poly;
    use crate::{rat, QPoly};

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    fn names(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    fn translations(n: usize) -> ActionDescriptor {
        let tau = (1..=n).map(|i| p(&format!("x{i} + w{i}"))).collect();
        ActionDescriptor::new(GroupDescriptor::abelian(n), tau).unwrap()
    }

    #[test]
    fn translate_examples() {
        let g = GroupDescriptor::abelian(1);
        assert_eq!(left_translate(&g, &[p("a")], &p("q"), &names(&["q"])), p("q + a"));
        let h = GroupDescriptor::heisenberg();
        let xyz = names(&["x", "y", "z"]);
        let moved = left_translate(&h, &[p("a"), p("b"), p("c")], &p("z"), &xyz);
        assert_eq!(moved, p("z + c + (a*y - b*x)/2"));
        let e = vec![QPoly::zero(); 3];
        assert_eq!(left_translate(&h, &e, &p("x*z^2 + y"), &xyz), p("x*z^2 + y"));
    }

    #[test]
    fn transport_of_lambda_star_is_lambda_star() {
        let ls = LambdaStar::standard(rat(1, 2), 1, 3);
        let action = translations(2);
        let m = LambdaStar { lambda: rat(1, 2), tcap: 3, q: names(&["w1"]), p: names(&["w2"]) };
        for (u, v) in [("w1", "w2"), ("w1^2*w2", "w2^2"), ("w2^2 + w1", "w1^3")] {
            let got = udf_transport::<crate::Rational>(&ls, &action, &p(u), &p(v)).unwrap();
            assert_eq!(got, m.product(&p(u), &p(v)).unwrap(), "{u} ⋆ {v}");
        }
    }

    #[test]
    fn transport_trivial_cases() {
        let action = translations(2);
        let pw = Pointwise { coords: names(&["q1", "p1"]), tcap: Some(3) };
        assert_eq!(udf_transport::<crate::Rational>(&pw, &action, &p("w1"), &p("w2^2")).unwrap(), p("w1*w2^2"));
        let triv = ActionDescriptor::trivial(GroupDescriptor::abelian(2), 2);
        let ls = LambdaStar::standard(rat(1, 2), 1, 3);
        assert_eq!(udf_transport::<crate::Rational>(&ls, &triv, &p("w1 + 1"), &p("w2")).unwrap(), p("w1*w2 + w2"));
        assert!(matches!(
            udf_transport::<crate::Rational>(&ls, &action, &p("q1"), &p("w2")),
            Err(crate::Error::CarrierViolation(_))
        ));
    }

    #[test]
    fn poisson_of_lambda_star() {
        let ls = LambdaStar::standard(rat(1, 3), 1, 3);
        let bv = extract_poisson::<crate::Rational>(&ls, 2).unwrap();
        assert_eq!(bv.pi[0][1], p("1"));
        assert_eq!(bv.pi[1][0], p("-1"));
        assert!(bv.is_poisson());
        let pw = Pointwise { coords: names(&["q1", "p1"]), tcap: Some(3) };
        assert!(extract_poisson::<crate::Rational>(&pw, 2).unwrap().is_zero());
    }

    #[test]
    fn transported_poisson_matches_prediction() {
        let ls = LambdaStar::standard(rat(1, 2), 1, 3);
        let pi_e = extract_poisson::<crate::Rational>(&ls, 2).unwrap().at_origin();
        let tr = Transported { inner: Arc::new(ls), action: translations(2) };
        let bv = extract_poisson(&tr, 2).unwrap();
        assert_eq!(bv, predicted_poisson(&pi_e, &tr.action));
    }

    #[test]
    fn non_bidifferential_first_order_is_rejected() {
        let fake = FnProduct::<crate::Rational> {
            name: "fake".into(),
            coords: names(&["q1"]),
            tcap: Some(2),
            f: Box::new(|u, v| u * v + QPoly::t() * u.d("q1", 2) * v.clone()),
        };
        assert!(matches!(extract_poisson(&fake, 2), Err(crate::Error::NotBidifferential(_))));
    }

    #[test]
    fn invariance_examples() {
        let ls = LambdaStar::standard(rat(1, 2), 1, 3);
        assert!(check_left_invariance::<crate::Rational>(&ls, &GroupDescriptor::abelian(2), 2).passed);
        let pw = Pointwise { coords: names(&["x", "y", "z"]), tcap: None };
        assert!(check_left_invariance::<crate::Rational>(&pw, &GroupDescriptor::heisenberg(), 2).passed);
        let fake = FnProduct::<crate::Rational> {
            name: "fake".into(),
            coords: names(&["q1", "p1"]),
            tcap: Some(2),
            f: Box::new(|u, v| u * v + QPoly::t() * QPoly::var("q1") * u.d("q1", 1) * v.d("q1", 1)),
        };
        let c = check_left_invariance(&fake, &GroupDescriptor::abelian(2), 2);
        assert!(!c.passed);
        assert!(c.witness.unwrap().contains("g = (1, 0)"));
    }

    #[test]
    fn induced_product_examples() {
        let g = SplitExtension::r2_x_r2_unipotent();
        let fiber: Arc<dyn InvariantProduct<crate::Rational>> = Arc::new(LambdaStar::standard(rat(1, 2), 1, 3));
        let ind = InducedProduct { q_coords: g.q_coords.clone(), fiber: fiber.clone() };
        assert_eq!(ind.coords(), g.coords());
        assert!(check_left_invariance(&ind, &g.group, 2).passed);
        assert!(check_product_associativity(&ind, 2).passed);
        // trivial Q reduces to the fiber product
        let bare = InducedProduct { q_coords: vec![], fiber: fiber.clone() };
        assert_eq!(bare.product(&p("q1^2"), &p("p1")).unwrap(), fiber.product(&p("q1^2"), &p("p1")).unwrap());
        // pointwise fiber gives the pointwise product
        let pw = InducedProduct::<crate::Rational> {
            q_coords: g.q_coords.clone(),
            fiber: Arc::new(Pointwise { coords: names(&["q1", "p1"]), tcap: Some(3) }),
        };
        assert_eq!(pw.product(&p("z1*q1"), &p("z2*p1")).unwrap(), p("z1*z2*q1*p1"));
        assert_eq!(
            induction_product(&g.q_coords, fiber, &p("z1*p1"), &p("q1")).unwrap(),
            p("z1*q1*p1 - 1/2*z1*t")
        );
    }

    #[test]
    fn lambda_star_along_the_normal_factor_is_not_invariant() {
        // the shear z1 -> z1 + q1*z2 preserves the Moyal product in (z2, z1)
        // but not the standard-ordered one
        let g = SplitExtension::r2_x_r2_unipotent();
        for (lambda, invariant) in [(rat(1, 2), true), (rat(0, 1), false)] {
            let prod = FnProduct::<crate::Rational> {
                name: "fiber along Q".into(),
                coords: g.coords(),
                tcap: Some(3),
                f: Box::new(move |u, v| {
                    crate::phase_space::lambda_star_named(&lambda, 3, &names(&["z2"]), &names(&["z1"]), u, v)
                }),
            };
            assert_eq!(check_left_invariance(&prod, &g.group, 2).passed, invariant);
        }
    }
}
