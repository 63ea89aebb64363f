use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::Poly;
use crate::phase_space::lambda_star_named;
use crate::scalar::Coeff;
use crate::Rational;

/// An associative product on polynomial functions in `coords`; any other
/// variable is treated as a constant parameter.
pub trait InvariantProduct<K: Coeff>: Send + Sync {
    fn name(&self) -> String;

    fn coords(&self) -> Vec<String>;

    fn tcap(&self) -> Option<u32>;

    fn product(&self, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>>;
}

/// Pointwise multiplication.
#[derive(Clone, Debug)]
pub struct Pointwise {
    pub coords: Vec<String>,
    pub tcap: Option<u32>,
}

impl<K: Coeff> InvariantProduct<K> for Pointwise {
    fn name(&self) -> String {
        "pointwise".into()
    }
    fn coords(&self) -> Vec<String> {
        self.coords.clone()
    }
    fn tcap(&self) -> Option<u32> {
        self.tcap
    }
    fn product(&self, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>> {
        Ok((u * v).with_tcap(self.tcap))
    }
}

/// The lambda-ordered product in position variables `q` and momenta `p`.
#[derive(Clone, Debug)]
pub struct LambdaStar {
    pub lambda: Rational,
    pub tcap: u32,
    pub q: Vec<String>,
    pub p: Vec<String>,
}

impl LambdaStar {
    /// Standard names `q1..qn`, `p1..pn`.
    pub fn standard(lambda: Rational, n: usize, tcap: u32) -> Self {
        LambdaStar {
            lambda,
            tcap,
            q: (1..=n).map(|i| format!("q{i}")).collect(),
            p: (1..=n).map(|i| format!("p{i}")).collect(),
        }
    }
}

impl<K: Coeff> InvariantProduct<K> for LambdaStar {
    fn name(&self) -> String {
        format!("lambda:{}", self.lambda)
    }
    fn coords(&self) -> Vec<String> {
        self.q.iter().chain(self.p.iter()).cloned().collect()
    }
    fn tcap(&self) -> Option<u32> {
        Some(self.tcap)
    }
    fn product(&self, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>> {
        Ok(lambda_star_named(&self.lambda, self.tcap, &self.q, &self.p, u, v))
    }
}

type ProductFn<K> = dyn Fn(&Poly<K>, &Poly<K>) -> Poly<K> + Send + Sync;

/// A product given by a closure.
pub struct FnProduct<K: Coeff> {
    pub name: String,
    pub coords: Vec<String>,
    pub tcap: Option<u32>,
    pub f: Box<ProductFn<K>>,
}

impl<K: Coeff> InvariantProduct<K> for FnProduct<K> {
    fn name(&self) -> String {
        self.name.clone()
    }
    fn coords(&self) -> Vec<String> {
        self.coords.clone()
    }
    fn tcap(&self) -> Option<u32> {
        self.tcap
    }
    fn product(&self, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>> {
        Ok((self.f)(u, v).with_tcap(self.tcap))
    }
}

/// `u ⋆ v (q, s) = (u(q, ·) ⋆^S v(q, ·))(s)` on `G = Q·S`, computed fiberwise:
/// both factors are expanded in monomials of the `Q` coordinates and the
/// fiber product is applied to each pair of coefficients.
pub struct InducedProduct<K: Coeff> {
    pub q_coords: Vec<String>,
    pub fiber: Arc<dyn InvariantProduct<K>>,
}

impl<K: Coeff> InvariantProduct<K> for InducedProduct<K> {
    fn name(&self) -> String {
        format!("induced({})", self.fiber.name())
    }
    fn coords(&self) -> Vec<String> {
        self.q_coords.iter().cloned().chain(self.fiber.coords()).collect()
    }
    fn tcap(&self) -> Option<u32> {
        self.fiber.tcap()
    }
    fn product(&self, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>> {
        let mut acc = Poly::zero().with_tcap(self.tcap());
        let vs = v.split_by(&self.q_coords);
        for (ma, ua) in u.split_by(&self.q_coords) {
            for (mb, vb) in &vs {
                let fiber = self.fiber.product(&ua, vb)?;
                acc = acc + Poly::term(K::one(), &ma.mul(mb)) * fiber;
            }
        }
        Ok(acc.with_tcap(self.tcap()))
    }
}
