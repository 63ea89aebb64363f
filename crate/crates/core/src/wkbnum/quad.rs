use std::num::NonZeroUsize;

use gauss_quad::GaussLegendre;
use num::complex::Complex;

use super::Real;

pub(crate) fn cst<F: Real>(x: f64) -> F {
    F::from(x).expect("constant representable")
}

/// Gauss–Legendre rule on `[-h, h]`.
#[derive(Clone, Debug)]
pub struct Rule<F> {
    pub nodes: Vec<F>,
    pub weights: Vec<F>,
}

impl<F: Real> Rule<F> {
    pub fn new(n: usize, half_width: F) -> Self {
        let gl = GaussLegendre::new(NonZeroUsize::new(n.max(1)).unwrap());
        let nodes = gl.nodes().map(|x| cst::<F>(*x) * half_width).collect();
        let weights = gl.weights().map(|w| cst::<F>(*w) * half_width).collect();
        Rule { nodes, weights }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn integrate(&self, f: impl Fn(F) -> Complex<F>) -> Complex<F> {
        pairwise(0, self.len(), &|i| f(self.nodes[i]) * self.weights[i])
    }
}

/// Sum of `f(lo..hi)` by recursive halving; the order depends only on the
/// range, so results are bitwise reproducible.
pub fn pairwise<F: Real>(lo: usize, hi: usize, f: &impl Fn(usize) -> Complex<F>) -> Complex<F> {
    if hi - lo <= 8 {
        (lo..hi).fold(Complex::new(F::zero(), F::zero()), |s, i| s + f(i))
    } else {
        let mid = lo + (hi - lo) / 2;
        pairwise(lo, mid, f) + pairwise(mid, hi, f)
    }
}

pub fn pairwise_slice<F: Real>(xs: &[Complex<F>]) -> Complex<F> {
    pairwise(0, xs.len(), &|i| xs[i])
}

/// Quadrature value with an error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<F> {
    pub value: Complex<F>,
    pub error: F,
    /// Nodes per axis of the reported (finer) evaluation.
    pub nodes: usize,
}

/// Round-off floor for a sum whose terms have absolute sum `abs`.
pub(crate) fn rounding<F: Real>(abs: F) -> F {
    cst::<F>(64.0) * F::epsilon() * abs
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_rule() {
        let r = Rule::<f64>::new(16, 2.0);
        let v = r.integrate(|x| Complex::new(x.powi(4), 0.0));
        assert!((v.re - 64.0 / 5.0).abs() < 1e-12);
        let g = Rule::<f64>::new(64, 10.0).integrate(|x| Complex::new((-x * x).exp(), 0.0));
        assert!((g.re - std::f64::consts::PI.sqrt()).abs() < 1e-13);
    }

    #[test]
    fn pairwise_matches_plain_sum() {
        let xs: Vec<Complex<f64>> = (0..1000).map(|i| Complex::new(i as f64, -(i as f64))).collect();
        assert_eq!(pairwise_slice(&xs), Complex::new(499500.0, -499500.0));
    }
}
