//! Symplectic triples and their linear-algebraic invariants: validation,
//! central extension to an exact triple, holonomy-isotropy and split
//! diagnostics, the elementary construction from a split symplectic Lie
//! algebra, weight decomposition, the complex symplectic Lie algebra of a
//! positive system, and the twisting map.

pub mod catalog;
pub mod linalg;
mod triple;
pub mod upoly;
mod twist;
mod weights;

pub use triple::{
    central_extension, diag, elementary_from_symplectic_lie_algebra, hi_split_diagnostics, signature,
    ElementaryInstance, ExactTriple, Extension, HiSplit, Signature, SplitSymplecticLieAlgebra, SymplecticTriple,
    TripleFlags,
};
pub use twist::{twist_solve, TwistMap};
pub use weights::{
    build_symplectic_lie_algebra, check_positive_system, describe_c, eigenvalues, jordan_chevalley,
    lexicographic_positive, opposite_positive, weight_decomposition, ComplexSymplecticLieAlgebra, JordanChevalley,
    WeightData,
};

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::linalg::zeros;
    use super::*;
    use crate::hopf::LieAlgebra;
    use crate::{rat, Rational};
    use num_traits::Zero;

    fn passed(r: &crate::report::Report) -> bool {
        r.all_passed()
    }

    #[test]
    fn rank_one_construction() {
        let t = rank_one();
        assert_eq!(t.triple.dim(), 3);
        let r = t.triple.validate();
        assert!(passed(&r), "{:?}", r.failures());
        assert!(t.validate().all_passed());
        assert!(t.triple.is_exact());
        // k = {(X, X)}, p = {(X, -X)} ⊕ a
        assert_eq!(t.triple.k_basis(), vec![vec![rat(1, 1), rat(1, 1), rat(0, 1)]]);
        assert_eq!(t.triple.p_basis().len(), 2);
    }

    #[test]
    fn degenerate_inputs() {
        let mut t = rank_one().triple;
        t.omega = zeros(3, 3);
        let r = t.validate();
        assert!(!r.get("omega_p_nondegenerate").unwrap().passed);
        let mut u = flat_r2();
        u.sigma = linalg::identity(2);
        let r = u.validate();
        let c = r.get("omega_p_nondegenerate").unwrap();
        assert!(!c.passed && c.witness.as_ref().unwrap().contains("degenerate"));
    }

    #[test]
    fn central_extension_of_flat_plane_is_heisenberg() {
        let flat = flat_r2();
        assert!(flat.validate().all_passed());
        assert!(!flat.is_exact());
        let ext = central_extension(&flat).unwrap();
        assert!(ext.extended);
        assert!(ext.report.all_passed(), "{:?}", ext.report.failures());
        let h = &ext.exact.triple.lie;
        assert_eq!(h.c[0][1][2], rat(1, 1));
        assert_eq!(h.c[1][0][2], rat(-1, 1));
        assert_eq!(ext.exact.triple.center().len(), 1);
        let again = central_extension(&sl2_triple()).unwrap();
        assert!(!again.extended);
        assert_eq!(again.exact.triple, sl2_triple());
    }

    #[test]
    fn hi_and_split() {
        let d = hi_split_diagnostics(&rank_one().triple, TripleFlags::both());
        assert!(d.holonomy_isotropic && d.derived_abelian);
        assert!(d.complement.is_some());
        assert_eq!(d.dual_lagrangians, Some(true));
        assert!(d.report.all_passed());
        let s = hi_split_diagnostics(&sl2_triple(), TripleFlags::default());
        assert!(!s.holonomy_isotropic && !s.derived_abelian && s.report.all_passed());
        let f = hi_split_diagnostics(&flat_r2(), TripleFlags::default());
        assert!(f.holonomy_isotropic && f.derived_abelian);
    }

    #[test]
    fn hi_equivalence_over_catalog() {
        for t in hi_catalog() {
            let r = t.validate();
            assert!(r.all_passed(), "{}: {:?}", t.name, r.failures());
        }
    }

    #[test]
    fn trivial_splitting_is_flat() {
        let s = SplitSymplecticLieAlgebra::from_eta("zero", vec![vec![vec![rat(0, 1)]]], &[rat(1, 1), rat(0, 1)]).unwrap();
        let t = elementary_from_symplectic_lie_algebra(&s).unwrap();
        assert!(t.triple.lie.is_abelian());
    }

    #[test]
    fn non_exact_form_is_rejected() {
        // on the abelian plane every coboundary vanishes
        let s = SplitSymplecticLieAlgebra::new(
            "plane",
            vec![vec![vec![rat(0, 1)]]],
            vec![vec![rat(0, 1), rat(1, 1)], vec![rat(-1, 1), rat(0, 1)]],
        )
        .unwrap();
        assert!(matches!(elementary_from_symplectic_lie_algebra(&s), Err(crate::Error::NotExact(_))));
    }

    #[test]
    fn weights_of_examples() {
        let inst = ElementaryInstance::from_triple(&rank_one()).unwrap();
        let w = weight_decomposition(&inst, TripleFlags::both()).unwrap();
        assert!(w.report.all_passed(), "{:?}", w.report.failures());
        let mut ws: Vec<String> = (0..w.weights.len()).map(|i| w.describe(i)).collect();
        ws.sort();
        assert_eq!(ws, vec!["(-1)", "(1)"]);
        assert!(!w.has_zero_weight());

        let flat = ElementaryInstance::new(
            "rho=0",
            vec![zeros(2, 2)],
            vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
            vec![rat(1, 2), rat(1, 2)],
        )
        .unwrap();
        let w0 = weight_decomposition(&flat, TripleFlags::default()).unwrap();
        assert_eq!(w0.weights.len(), 1);
        assert!(w0.has_zero_weight());
        assert!(build_symplectic_lie_algebra(&flat, &w0, None).is_err());
        let flagged = weight_decomposition(&flat, TripleFlags::both()).unwrap();
        assert!(!flagged.report.get("b0_vanishes").unwrap().passed);

        let d = ElementaryInstance::from_triple(&diag_a_2a()).unwrap();
        let wd = weight_decomposition(&d, TripleFlags::both()).unwrap();
        assert!(wd.report.all_passed());
        assert_eq!(wd.positive.len(), 2);

        let rd = ElementaryInstance::from_triple(&rotation_dilation()).unwrap();
        let wr = weight_decomposition(&rd, TripleFlags::both()).unwrap();
        assert!(wr.report.all_passed(), "{:?}", wr.report.failures());
        assert!(wr.weights.iter().flatten().any(|c| !c.im.is_zero()));
    }

    #[test]
    fn jordan_chevalley_of_a_jordan_block() {
        let a = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(0, 1), rat(2, 1)]];
        let jc = jordan_chevalley(&a);
        assert_eq!(jc.semisimple, diag(&[rat(2, 1), rat(2, 1)]));
        assert_eq!(jc.nilpotent, vec![vec![rat(0, 1), rat(1, 1)], vec![rat(0, 1), rat(0, 1)]]);
        let rot = vec![vec![rat(0, 1), rat(-2, 1)], vec![rat(2, 1), rat(0, 1)]];
        assert_eq!(eigenvalues(&rot).unwrap().len(), 2);
        let irr = vec![vec![rat(0, 1), rat(2, 1)], vec![rat(1, 1), rat(0, 1)]];
        assert!(matches!(eigenvalues(&irr), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn nilpotent_instance_is_flat() {
        let inst = nilpotent_instance();
        let w = weight_decomposition(&inst, TripleFlags::both()).unwrap();
        assert_eq!(w.weights.len(), 1);
        assert!(w.has_zero_weight());
        assert!(!w.report.get("b0_vanishes").unwrap().passed);
    }

    #[test]
    fn symplectic_lie_algebra_round_trip() {
        for (s, t) in [(rank_one_s(), rank_one()), (diag_a_2a_s(), diag_a_2a()), (rotation_dilation_s(), rotation_dilation())] {
            let inst = ElementaryInstance::from_triple(&t).unwrap();
            let w = weight_decomposition(&inst, TripleFlags::both()).unwrap();
            let sc = build_symplectic_lie_algebra(&inst, &w, None).unwrap();
            assert!(sc.report.all_passed(), "{}: {:?}", s.name, sc.report.failures());
            assert_eq!(sc.signature(), s.signature(), "{}", s.name);
            let opp = opposite_positive(&w);
            let sc2 = build_symplectic_lie_algebra(&inst, &w, Some(&opp)).unwrap();
            assert_eq!(sc2.signature(), sc.signature());
        }
        let rank1 = build_symplectic_lie_algebra(
            &ElementaryInstance::from_triple(&rank_one()).unwrap(),
            &weight_decomposition(&ElementaryInstance::from_triple(&rank_one()).unwrap(), TripleFlags::both()).unwrap(),
            None,
        )
        .unwrap();
        assert_eq!(rank1.dim(), 2);
        assert_eq!(rank1.signature().derived_series, vec![2, 1, 0]);
    }

    #[test]
    fn invalid_positive_system() {
        let inst = ElementaryInstance::from_triple(&rank_one()).unwrap();
        let w = weight_decomposition(&inst, TripleFlags::both()).unwrap();
        assert!(matches!(
            build_symplectic_lie_algebra(&inst, &w, Some(&[0, 1])),
            Err(crate::Error::InvalidPositiveSystem(_))
        ));
    }

    #[test]
    fn twisting_maps() {
        let inst = ElementaryInstance::from_triple(&rank_one()).unwrap();
        let w = weight_decomposition(&inst, TripleFlags::both()).unwrap();
        let tw = twist_solve(&inst, &w).unwrap();
        assert!(tw.report.all_passed(), "{:?}", tw.report.failures());
        assert_eq!(tw.formulas(), vec!["sinh(a1)"]);
        assert!((tw.eval(&[0.7])[0] - 0.7f64.sinh()).abs() < 1e-14);
        assert!((tw.jacobian(&[0.7]) - 0.7f64.cosh()).abs() < 1e-14);
        assert!(tw.global_diffeo);

        let d = ElementaryInstance::from_triple(&diag_a_2a()).unwrap();
        let wd = weight_decomposition(&d, TripleFlags::both()).unwrap();
        let td = twist_solve(&d, &wd).unwrap();
        assert!(td.report.all_passed(), "{:?}", td.report.failures());
        assert_eq!(td.formulas(), vec!["sinh(a1)", "1/2*sinh(2*a2)"]);

        let flat = ElementaryInstance::new("rho=0", vec![zeros(2, 2)], diag(&[rat(1, 1), rat(-1, 1)]), vec![rat(1, 1), rat(0, 1)])
            .unwrap();
        let tf = twist_solve(&flat, &weight_decomposition(&flat, TripleFlags::default()).unwrap()).unwrap();
        assert!(tf.is_flat());
        assert_eq!(tf.eval(&[0.3]), vec![0.3]);

        let rd = ElementaryInstance::from_triple(&rotation_dilation()).unwrap();
        let wr = weight_decomposition(&rd, TripleFlags::both()).unwrap();
        assert!(matches!(twist_solve(&rd, &wr), Err(crate::Error::Unsupported(_))));
    }

    #[test]
    fn triple_file_round_trip() {
        let t = sl2_triple();
        let (back, xi) = SymplecticTriple::parse(&t.to_text()).unwrap();
        assert_eq!(back, t);
        assert!(xi.is_none());
        let text = "dim 2\nsymbols X Y\nsigma\n-1 0\n0 -1\nomega\n0 1\n-1 0\nxi\n0 0\n";
        let (p, xi) = SymplecticTriple::parse(text).unwrap();
        assert_eq!(p.lie, LieAlgebra::abelian(&["X", "Y"]));
        assert_eq!(xi, Some(vec![Rational::from_integer(0.into()); 2]));
        assert!(SymplecticTriple::parse("dim 2\nsigma\n1 0\n").is_err());
    }
}
