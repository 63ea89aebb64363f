use std::collections::BTreeMap;
use std::sync::Arc;

use deform_core::exactalg::Monomial;
use deform_core::hopf::{Bialgebra, EnvelopingAlgebra, LieAlgebra, SymmetricAlgebra};
use deform_core::phase_space::{lambda_star_direct, phase_space_smash, poisson_bracket, LambdaConfig};
use deform_core::structure::linalg::{add, commutator, is_nilpotent, is_zero};
use deform_core::structure::{jordan_chevalley, upoly::UPoly};
use deform_core::udf::{ActionDescriptor, GroupDescriptor, InvariantProduct, LambdaStar, Transported};
use deform_core::wkbnum::WkbSpace;
use deform_core::{rat, QPoly, QTensor, Rational};
use proptest::prelude::*;

fn mono(pairs: &[(&str, u32)]) -> Monomial {
    Monomial::new(pairs.iter().filter(|(_, e)| *e > 0).map(|(v, e)| (v.to_string(), *e)).collect())
}

/// Sums of up to four terms in `q1, p1` (and `t` when `with_t`).
fn poly(max_exp: u32, with_t: bool) -> impl Strategy<Value = QPoly> {
    let term = (-3i64..=3, 0..=max_exp, 0..=max_exp, 0..=u32::from(with_t));
    prop::collection::vec(term, 1..=4).prop_map(|ts| {
        ts.into_iter()
            .fold(QPoly::zero(), |acc, (c, a, b, t)| acc + QPoly::term(rat(c, 1), &mono(&[("q1", a), ("p1", b), ("t", t)])))
    })
}

fn lambda() -> impl Strategy<Value = Rational> {
    prop::sample::select(vec![rat(0, 1), rat(1, 3), rat(1, 2), rat(1, 1), rat(2, 5)])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn ring_axioms(u in poly(2, true), v in poly(2, true), w in poly(2, false)) {
        prop_assert_eq!(&(&u * &v) * &w, &u * &(&v * &w));
        prop_assert_eq!(&u * &(&v + &w), &(&u * &v) + &(&u * &w));
        prop_assert_eq!(&u * &v, &v * &u);
        prop_assert_eq!(&u - &u, QPoly::zero());
    }

    #[test]
    fn affine_substitution_round_trip(u in poly(2, true), m in prop::array::uniform4(-3i64..=3), c in prop::array::uniform2(-2i64..=2)) {
        let det = m[0] * m[3] - m[1] * m[2];
        prop_assume!(det != 0);
        let (q, p) = (QPoly::var("q1"), QPoly::var("p1"));
        let k = |x: i64| QPoly::constant(rat(x, 1));
        let fwd = BTreeMap::from([
            ("q1".to_string(), &(&(&k(m[0]) * &q) + &(&k(m[1]) * &p)) + &k(c[0])),
            ("p1".to_string(), &(&(&k(m[2]) * &q) + &(&k(m[3]) * &p)) + &k(c[1])),
        ]);
        // inverse of x -> Mx + c
        let r = |x: i64| QPoly::constant(rat(x, det));
        let (qs, ps) = (&q - &k(c[0]), &p - &k(c[1]));
        let back = BTreeMap::from([
            ("q1".to_string(), &(&r(m[3]) * &qs) - &(&r(m[1]) * &ps)),
            ("p1".to_string(), &(&r(m[0]) * &ps) - &(&r(m[2]) * &qs)),
        ]);
        prop_assert_eq!(u.substitute(&fwd).substitute(&back), u);
    }

    #[test]
    fn tensor_normal_form_is_idempotent(f in poly(2, true), a in poly(2, false), g in poly(1, true)) {
        let s = phase_space_smash::<Rational>(&LambdaConfig::new(rat(1, 2), 1, 2), None).unwrap();
        let (cn, bn) = s.carrier_names();
        let bpart = |p: &QPoly| p.substitute(&BTreeMap::from([("q1".to_string(), QPoly::t())]));
        let mut z = QTensor::pure(&[&cn, &bn], &[f, bpart(&a)]);
        z.add_assign(&QTensor::pure(&[&cn, &bn], &[g, bpart(&(&a * &a))]));
        let once = s.canon(&z);
        prop_assert_eq!(s.canon(&once), once.clone());
        prop_assert!(once.terms().all(|(k, _)| k[1].exponent("t") == 0 && k[0].exponent("t") <= 2));
    }

    #[test]
    fn lambda_star_first_order(l in lambda(), u in poly(2, false), v in poly(2, false)) {
        let cfg = LambdaConfig::new(l.clone(), 1, 3);
        let prod = lambda_star_direct(&cfg, &u, &v);
        prop_assert_eq!(prod.coeff_of("t", 0), &u * &v);
        let lk = QPoly::constant(l.clone());
        let first = &(&lk * &(&u.d("q1", 1) * &v.d("p1", 1)))
            + &(&QPoly::constant(l - rat(1, 1)) * &(&u.d("p1", 1) * &v.d("q1", 1)));
        prop_assert_eq!(prod.coeff_of("t", 1), first);
        let swapped = lambda_star_direct(&cfg, &v, &u);
        prop_assert_eq!((&prod - &swapped).coeff_of("t", 1), poisson_bracket(1, &u, &v));
    }

    #[test]
    fn lambda_star_is_associative(l in lambda(), u in poly(2, false), v in poly(1, false), w in poly(2, false)) {
        let cfg = LambdaConfig::new(l, 1, 4);
        let star = |a: &QPoly, b: &QPoly| lambda_star_direct(&cfg, a, b);
        prop_assert_eq!(star(&star(&u, &v), &w), star(&u, &star(&v, &w)));
    }

    #[test]
    fn symmetric_counit(e1 in 0u32..=3, e2 in 0u32..=2) {
        let s = SymmetricAlgebra::new(2, None);
        let a = QPoly::term(rat(1, 1), &mono(&[("p1", e1), ("p2", e2)]));
        let d = s.coproduct(&a);
        let left = d.terms().fold(QPoly::zero(), |acc, (k, c)| {
            let l = QTensor::key_legs(k);
            acc + (&s.counit(&l[0]) * &l[1]).scale(c)
        });
        let right = d.terms().fold(QPoly::zero(), |acc, (k, c)| {
            let l = QTensor::key_legs(k);
            acc + (&l[0] * &s.counit(&l[1])).scale(c)
        });
        prop_assert_eq!(&left, &a);
        prop_assert_eq!(&right, &a);
    }

    #[test]
    fn enveloping_straightening_is_associative(x in prop::array::uniform3(0u32..=2), y in prop::array::uniform3(0u32..=1), z in prop::array::uniform3(0u32..=1)) {
        for lie in [LieAlgebra::heisenberg(), LieAlgebra::axb()] {
            let h = EnvelopingAlgebra::<Rational>::new(lie.clone(), None);
            let g = &lie.symbols;
            let pbw = |e: [u32; 3]| {
                let pairs: Vec<(&str, u32)> = g.iter().zip(e).map(|(n, k)| (n.as_str(), k)).collect();
                QPoly::term(rat(1, 1), &mono(&pairs[..g.len().min(3)]))
            };
            let (a, b, c) = (pbw(x), pbw(y), pbw(z));
            prop_assert_eq!(h.mul(&h.mul(&a, &b), &c), h.mul(&a, &h.mul(&b, &c)));
            let d = h.canon(&h.coproduct(&a));
            prop_assert_eq!(h.canon(&d.permute(&[1, 0])), d);
        }
    }

    #[test]
    fn transported_product_associative_and_classical(l in lambda(), u in poly(2, false), v in poly(1, false), w in poly(1, false)) {
        let rename = |p: &QPoly| p.rename(&BTreeMap::from([("q1".to_string(), "w1".to_string()), ("p1".to_string(), "w2".to_string())]));
        let (u, v, w) = (rename(&u), rename(&v), rename(&w));
        let tau = vec![QPoly::var("x1") + QPoly::var("w1"), QPoly::var("x2") + QPoly::var("w2")];
        let action = ActionDescriptor::new(GroupDescriptor::abelian(2), tau).unwrap();
        let tr = Transported::<Rational> { inner: Arc::new(LambdaStar::standard(l, 1, 3)), action };
        let star = |a: &QPoly, b: &QPoly| tr.product(a, b).unwrap();
        prop_assert_eq!(star(&star(&u, &v), &w), star(&u, &star(&v, &w)));
        prop_assert_eq!(star(&u, &v).coeff_of("t", 0), &u * &v);
    }

    #[test]
    fn jordan_chevalley_decomposition(m in prop::array::uniform9(-2i64..=2)) {
        let a: Vec<Vec<Rational>> = m.chunks(3).map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect();
        let jc = jordan_chevalley(&a);
        prop_assert_eq!(add(&jc.semisimple, &jc.nilpotent), a.clone());
        prop_assert!(is_zero(&commutator(&jc.semisimple, &jc.nilpotent)));
        prop_assert!(is_nilpotent(&jc.nilpotent));
        let p = UPoly::charpoly(&a).squarefree();
        prop_assert!(is_zero(&p.eval_matrix(&jc.semisimple)));
    }

    #[test]
    fn phase_is_translation_invariant(x in prop::array::uniform6(-2.0f64..2.0), tau in -3.0f64..3.0) {
        let s = WkbSpace::<f64>::rank_one();
        let (x0, x1, x2) = ([x[0], x[3]], [x[1], x[4]], [x[2], x[5]]);
        let shift = |p: [f64; 2]| [p[0] + tau, p[1]];
        let base = s.phase(&x0, &x1, &x2).unwrap();
        let moved = s.phase(&shift(x0), &shift(x1), &shift(x2)).unwrap();
        prop_assert!((base - moved).abs() <= 1e-12 * (1.0 + base.abs()));
        prop_assert!((s.amplitude(&x1, &x1).unwrap() - 1.0).abs() < 1e-15);
        let a12 = s.amplitude(&x1, &x2).unwrap();
        prop_assert!((a12 - s.amplitude(&shift(x1), &shift(x2)).unwrap()).abs() <= 1e-12 * a12);
    }
}
