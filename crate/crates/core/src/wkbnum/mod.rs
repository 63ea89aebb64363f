//! Floating-point oscillatory kernel product on a one-channel chart
//! `p = a × l`: twisting maps, WKB phase and amplitude, partial Fourier
//! transforms, the pre-Hilbert pairing and the kernel product with
//! node-doubling error estimates.

mod asymptotic;
mod func;
mod integrals;
mod quad;
mod space;

use num_traits::{Float, FloatConst};

pub use asymptotic::{
    asymptotic_check, fd_poisson, fit_line, order_coefficients, AsymptoticPoint, FitReport, OrderCoefficients,
    MIN_SLOPE, SEPARATION,
};
pub use func::{Decay, Eval, GaussPoly, SampledFunction};
pub use integrals::{
    associativity, compose_spectra, hilbert_product, partial_fourier, wkb_star, Associativity, QuadratureConfig,
    Spectral,
};
pub use quad::{pairwise, pairwise_slice, Estimate, Rule};
pub use space::{Channel, WkbSpace};

/// Scalar for the numerical layer.
pub trait Real: Float + FloatConst + Send + Sync + std::fmt::Debug + std::fmt::Display + std::fmt::LowerExp + 'static {}
impl<T: Float + FloatConst + Send + Sync + std::fmt::Debug + std::fmt::Display + std::fmt::LowerExp + 'static> Real for T {}

/// Evaluates a spectral representation back at a point.
pub fn inverse_transform<F: Real>(s: &Spectral<F>, x0: [F; 2], n: usize) -> num::complex::Complex<F> {
    integrals::inverse_transform(s, x0, n)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num::complex::Complex;

    use super::*;
    use crate::structure::{catalog, twist_solve, weight_decomposition, ElementaryInstance, TripleFlags};

    fn g(s: &str) -> GaussPoly {
        GaussPoly::parse(s).unwrap()
    }

    fn cfg(hbar: f64, nodes: usize) -> QuadratureConfig<f64> {
        QuadratureConfig::new(hbar, nodes)
    }

    #[test]
    fn phi_hbar_examples() {
        let s = WkbSpace::<f64>::rank_one();
        assert_eq!(s.phi_hbar(&[0.0], 0.3).unwrap(), vec![0.0]);
        assert!((s.phi_hbar(&[0.7], 2.0).unwrap()[0] - 0.7f64.sinh()).abs() < 1e-15);
        for h in [0.4, 0.2, 0.1, 0.05] {
            let a = 1.3;
            let dev = (s.phi_hbar(&[a], h).unwrap()[0] - a).abs() / a;
            assert!(dev <= (h * a).powi(2) / 20.0, "ħ = {h}: {dev}");
        }
        assert!(s.phi_hbar(&[1.0], 0.0).is_err());
    }

    #[test]
    fn phase_examples() {
        let s = WkbSpace::<f64>::rank_one();
        let x = [0.4, -1.1];
        assert_eq!(s.phase(&x, &x, &x).unwrap(), 0.0);
        let (x0, x1, x2) = ([0.3, 0.5], [-0.2, 1.0], [0.9, -0.4]);
        let flat = WkbSpace::<f64>::flat(1).phase(&x0, &x1, &x2).unwrap();
        let area = (x0[0] - x1[0]) * x2[1] + (x1[0] - x2[0]) * x0[1] + (x2[0] - x0[0]) * x1[1];
        assert!((flat - area).abs() < 1e-15);
        let sw = s.phase(&x0, &x2, &x1).unwrap();
        assert!((s.phase(&x0, &x1, &x2).unwrap() + sw).abs() < 1e-14);
        let t = 0.77;
        let shift = |x: [f64; 2]| [x[0] + t, x[1]];
        let moved = s.phase(&shift(x0), &shift(x1), &shift(x2)).unwrap();
        assert!((moved - s.phase(&x0, &x1, &x2).unwrap()).abs() < 1e-14);
        assert!(s.phase(&[0.0], &x1, &x2).is_err());
    }

    #[test]
    fn amplitude_examples() {
        let s = WkbSpace::<f64>::rank_one();
        assert_eq!(s.amplitude(&[0.2, 1.0], &[0.2, -3.0]).unwrap(), 1.0);
        let a = s.amplitude(&[1.5, 0.0], &[0.5, 2.0]).unwrap();
        assert!((a - 1.5430806348152437).abs() < 1e-12);
        assert_eq!(a, s.amplitude(&[0.5, 2.0], &[1.5, 0.0]).unwrap());
    }

    #[test]
    fn space_from_solved_twist() {
        let inst = ElementaryInstance::from_triple(&catalog::rank_one()).unwrap();
        let w = weight_decomposition(&inst, TripleFlags::both()).unwrap();
        let t = twist_solve(&inst, &w).unwrap();
        let s = WkbSpace::<f64>::from_twist("rank1", &t).unwrap();
        assert_eq!(s, WkbSpace::rank_one());
        let f = WkbSpace::<f64>::from_twist("flat", &crate::structure::TwistMap::identity(1)).unwrap();
        assert_eq!(f.channels, WkbSpace::<f64>::flat(1).channels);
    }

    #[test]
    fn space_text_format() {
        let s = WkbSpace::<f64>::parse("# name: rank1\n# φ = sinh\nweights 1\n").unwrap();
        assert_eq!(s, WkbSpace::rank_one());
        assert_eq!(WkbSpace::<f64>::parse("weights 0 0.5").unwrap().channels.len(), 2);
        for bad in ["", "weights", "weights x", "weights 1\nweights 2", "dim 1"] {
            assert!(matches!(WkbSpace::<f64>::parse(bad), Err(crate::Error::Parse { .. })), "{bad}");
        }
    }

    #[test]
    fn fourier_of_gaussian() {
        let u = SampledFunction::gaussian(Arc::new(|a: f64, l: f64| Complex::new((-a * a - l * l).exp(), 0.0)), 0.5f64.sqrt(), 0)
            .unwrap();
        let (a, al) = (vec![0.0, 0.5, -1.2], vec![0.0, 1.0, 2.5, -4.0]);
        let t = partial_fourier(&u, &a, &al, 128).unwrap();
        for (i, &x) in a.iter().enumerate() {
            for (j, &k) in al.iter().enumerate() {
                let exact = (-x * x).exp() * std::f64::consts::PI.sqrt() * (-k * k / 4.0).exp();
                assert!((t[i][j] - exact).norm() < 1e-8, "{x} {k}");
            }
        }
        let zero = SampledFunction::gaussian(Arc::new(|_, _| Complex::new(0.0, 0.0)), 1.0, 0).unwrap();
        assert!(partial_fourier(&zero, &a, &al, 64).unwrap().iter().flatten().all(|z| z.norm() == 0.0));
        let on_box = |s: &str| SampledFunction { l_box: 11.0, ..g(s).sampled::<f64>().unwrap() };
        let (p, q, sum) = (on_box("gauss*q"), on_box("gauss*(p^2 - 1)"), on_box("gauss*(q + p^2 - 1)"));
        let (tp, tq, ts) = (
            partial_fourier(&p, &a, &al, 64).unwrap(),
            partial_fourier(&q, &a, &al, 64).unwrap(),
            partial_fourier(&sum, &a, &al, 64).unwrap(),
        );
        for i in 0..a.len() {
            for j in 0..al.len() {
                assert!((tp[i][j] + tq[i][j] - ts[i][j]).norm() < 1e-13);
            }
        }
    }

    #[test]
    fn decay_is_checked() {
        let wide = SampledFunction::gaussian(Arc::new(|a: f64, l: f64| Complex::new((-(a * a + l * l) / 50.0).exp(), 0.0)), 1.0, 0);
        assert!(matches!(wide, Err(crate::Error::CarrierViolation(_))));
        assert!(g("q*p").sampled::<f64>().is_err());
        assert!(matches!(g("1").sampled::<f64>().unwrap().decay, Decay::Constant(_)));
    }

    #[test]
    fn hilbert_product_examples() {
        let (u, v) = (g("gauss*(1 + q)").sampled::<f64>().unwrap(), g("gauss*(p - q*p)").sampled::<f64>().unwrap());
        for s in [WkbSpace::rank_one(), WkbSpace::flat(1)] {
            let uu = hilbert_product(&s, &u, &u, &cfg(0.2, 32)).unwrap();
            assert!(uu.value.re > 0.0 && uu.value.im.abs() < 1e-12);
            let (uv, vu) = (hilbert_product(&s, &u, &v, &cfg(0.2, 32)).unwrap(), hilbert_product(&s, &v, &u, &cfg(0.2, 32)).unwrap());
            assert!((uv.value - vu.value.conj()).norm() < 1e-12);
        }
        // Parseval: ∫∫ ũ conj(ṽ) = 2π ∫∫ u v
        let flat = hilbert_product(&WkbSpace::flat(1), &u, &v, &cfg(0.2, 48)).unwrap();
        let r = Rule::<f64>::new(96, u.a_box);
        let direct = r.integrate(|a| r.integrate(|l| u.eval(a, l) * v.eval(a, l).conj())) * std::f64::consts::TAU;
        assert!((flat.value - direct).norm() < 1e-9, "{} vs {}", flat.value, direct);
        assert!(flat.error < 1e-9);
    }

    #[test]
    fn constant_factor_is_reproduced() {
        let v = g("gauss*(q + 2*p^2)");
        let (c, sv) = (g("3").sampled::<f64>().unwrap(), v.sampled::<f64>().unwrap());
        for s in [WkbSpace::flat(1), WkbSpace::rank_one()] {
            for x0 in [[0.0, 0.0], [0.4, -0.7], [-1.0, 0.3]] {
                let want = 3.0 * v.eval_f64(x0[0], x0[1]);
                for (a, b) in [(&c, &sv), (&sv, &c)] {
                    let got = wkb_star(&s, a, b, x0, &cfg(0.2, 32)).unwrap();
                    assert!((got.value - want).norm() < 1e-12, "{}: {} vs {want}", s.name, got.value);
                }
            }
        }
    }

    #[test]
    fn gaussians_at_origin_and_self_convergence() {
        let s = WkbSpace::rank_one();
        let (u, v) = (g("gauss").sampled::<f64>().unwrap(), g("gauss*(1 + p)").sampled::<f64>().unwrap());
        let e = wkb_star(&s, &u, &v, [0.0, 0.0], &cfg(0.2, 32)).unwrap();
        assert!(e.value.re.is_finite() && e.value.im.is_finite() && e.error.is_finite());
        assert_eq!(e.nodes, 64);
        for h in [0.05, 0.2, 0.4] {
            let c = QuadratureConfig { doubling: false, ..cfg(h, 16) };
            let vals: Vec<Complex<f64>> = [16, 32, 64, 128]
                .iter()
                .map(|&n| wkb_star(&s, &u, &v, [0.3, -0.2], &QuadratureConfig { nodes: n, ..c }).unwrap().value)
                .collect();
            let (d1, d3) = ((vals[1] - vals[0]).norm(), (vals[3] - vals[2]).norm());
            assert!(d3 <= d1 && d3 < 1e-10, "ħ = {h}: {d1:e} {d3:e}");
        }
    }

    #[test]
    fn both_quadrature_routes_agree() {
        let (u, v) = (g("gauss*(1 + q)").sampled::<f64>().unwrap(), g("gauss*p").sampled::<f64>().unwrap());
        for s in [WkbSpace::rank_one(), WkbSpace::flat(1)] {
            let x0 = [0.25, 0.4];
            let direct = wkb_star(&s, &u, &v, x0, &cfg(0.3, 48)).unwrap();
            let su = Spectral::of(&u, 96, None, None);
            let sv = Spectral::of(&v, 96, None, None);
            let uv = compose_spectra(&s, &su, &sv, 0.3, 96).unwrap();
            let back = inverse_transform(&uv, x0, 128);
            assert!((back - direct.value).norm() < 1e-8, "{}: {back} vs {}", s.name, direct.value);
        }
    }

    #[test]
    fn flat_kernel_is_the_weyl_product_on_gaussians() {
        // e^{-|x|²} ⋆ e^{-|x|²} = (1 + 4ħ²)^{-1} e^{-2|x|² / (1 + 4ħ²)} for the bracket 2∂_q∧∂_p
        let (u, x0) = (g("gauss(1/2)").sampled::<f64>().unwrap(), [0.3, -0.5]);
        for h in [0.1, 0.3] {
            let got = wkb_star(&WkbSpace::flat(1), &u, &u, x0, &cfg(h, 48)).unwrap();
            let r2 = x0[0] * x0[0] + x0[1] * x0[1];
            let want = (-2.0 * r2 / (1.0 + 4.0 * h * h)).exp() / (1.0 + 4.0 * h * h);
            assert!((got.value - want).norm() < 1e-10, "ħ = {h}: {} vs {want}", got.value);
        }
    }

    #[test]
    fn asymptotic_examples() {
        let hbars = [0.05, 0.1, 0.15, 0.2, 0.3];
        let s = WkbSpace::rank_one();
        let fit = asymptotic_check(&s, &g("gauss*1"), &g("gauss*q"), [0.3, 0.2], &hbars, &cfg(0.1, 64)).unwrap();
        assert!(fit.slope >= 2.0 - 0.25, "slope {}", fit.slope);
        assert!(fit.report.all_passed(), "{:?}", fit.report.failures());
        let c = asymptotic_check(&s, &g("2"), &g("gauss*(q + p)"), [0.3, 0.2], &hbars, &cfg(0.1, 64)).unwrap();
        assert!(c.points.iter().all(|p| p.residual.norm() < 1e-12));
        assert!(asymptotic_check(&s, &g("gauss"), &g("gauss"), [0.0, 0.0], &hbars[..4], &cfg(0.1, 64)).is_err());
        assert!(asymptotic_check(&s, &g("gauss"), &g("gauss"), [0.0, 0.0], &[0.1, 0.2, 0.3, 0.4, 0.6], &cfg(0.1, 64)).is_err());
    }

    #[test]
    fn symbolic_bracket_matches_finite_differences() {
        for (a, b) in [("gauss*q", "gauss*p"), ("gauss*(q^2 + p)", "gauss(2)*(1 - q*p)"), ("gauss", "gauss*q^3")] {
            let (u, v) = (g(a), g(b));
            for x0 in [[0.3, 0.2], [-0.5, 0.9]] {
                let sym = u.poisson(&v).eval_f64(x0[0], x0[1]);
                let fd = fd_poisson(|q, p| u.eval_f64(q, p), |q, p| v.eval_f64(q, p), x0, 1e-4);
                assert!((sym - fd).abs() < 1e-6, "{a}, {b}: {sym} vs {fd}");
            }
        }
    }

    #[test]
    fn numerical_associativity() {
        let (u, v, w) = (
            g("gauss*(1 + q)").sampled::<f64>().unwrap(),
            g("gauss*p").sampled::<f64>().unwrap(),
            g("gauss*(q - p)").sampled::<f64>().unwrap(),
        );
        let r = associativity(&WkbSpace::rank_one(), &u, &v, &w, [0.2, 0.1], &cfg(0.2, 24)).unwrap();
        assert!(r.defect < 3.0 * r.error, "{} vs {}", r.defect, r.error);
        assert!(r.left.value.norm() > 1e-3);
    }

    #[test]
    fn first_orders_match_the_formal_product() {
        let (u, v) = (g("gauss*(1 + q)"), g("gauss*(p + q*p)"));
        for s in [WkbSpace::flat(1), WkbSpace::rank_one()] {
            let c = order_coefficients(&s, &u, &v, [0.3, -0.4], 0.01, 64).unwrap();
            assert!(c.max_deviation() < 1e-6, "{}: {c:?}", s.name);
            assert!(c.c1_formal.norm() > 1e-2);
        }
    }

    #[test]
    fn config_validation() {
        let (u, v) = (g("gauss").sampled::<f64>().unwrap(), g("gauss").sampled::<f64>().unwrap());
        let s = WkbSpace::rank_one();
        assert!(wkb_star(&s, &u, &v, [0.0, 0.0], &cfg(0.2, 8)).is_err());
        assert!(wkb_star(&s, &u, &v, [0.0, 0.0], &cfg(-0.2, 32)).is_err());
        let strict = QuadratureConfig { tolerance: Some(0.0), ..cfg(0.2, 16) };
        assert!(matches!(wkb_star(&s, &u, &v, [0.0, 0.0], &strict), Err(crate::Error::Numerical(_))));
        assert!(wkb_star(&WkbSpace::flat(2), &u, &v, [0.0, 0.0], &cfg(0.2, 32)).is_err());
    }

    #[test]
    fn single_precision_runs() {
        let (u, v) = (g("gauss").sampled::<f32>().unwrap(), g("gauss*q").sampled::<f32>().unwrap());
        let e = wkb_star(&WkbSpace::<f32>::rank_one(), &u, &v, [0.3, 0.2], &QuadratureConfig::new(0.2f32, 32)).unwrap();
        let d = wkb_star(&WkbSpace::<f64>::rank_one(), &g("gauss").sampled().unwrap(), &g("gauss*q").sampled().unwrap(), [0.3, 0.2], &cfg(0.2, 32)).unwrap();
        assert!((e.value.re as f64 - d.value.re).abs() < 1e-4);
    }
}
