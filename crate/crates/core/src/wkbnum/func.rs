use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num::complex::Complex;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Monomial, Poly};
use crate::scalar::Coeff;
use crate::{QPoly, Rational};

use super::quad::cst;
use super::Real;

/// Decay class declared by a sampled function.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Decay<F> {
    /// Constant value; its transform is a point mass handled exactly.
    Constant(Complex<F>),
    /// Bounded by a polynomial times `exp(-|x|² / (2 width²))`.
    Gaussian { width: F },
}

pub type Eval<F> = Arc<dyn Fn(F, F) -> Complex<F> + Send + Sync>;

/// `u(a, l)` on a one-channel chart with its declared decay and support box.
#[derive(Clone)]
pub struct SampledFunction<F> {
    pub f: Eval<F>,
    pub decay: Decay<F>,
    /// Half-widths of the support box in `a` and `l`.
    pub a_box: F,
    pub l_box: F,
    /// Half-width beyond which the partial transform is negligible.
    pub k_box: F,
}

impl<F: Real> fmt::Debug for SampledFunction<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SampledFunction {{ decay: {:?}, box: ({}, {}), k_box: {} }}", self.decay, self.a_box, self.l_box, self.k_box)
    }
}

/// Relative size allowed on the support-box boundary.
const DECAY_TOL: f64 = 1e-12;

impl<F: Real> SampledFunction<F> {
    pub fn constant(c: Complex<F>) -> Self {
        SampledFunction {
            f: Arc::new(move |_, _| c),
            decay: Decay::Constant(c),
            a_box: F::infinity(),
            l_box: F::infinity(),
            k_box: F::zero(),
        }
    }

    /// Gaussian-weighted function of envelope width `width` and polynomial
    /// degree at most `degree`; the box is checked against the decay claim.
    pub fn gaussian(f: Eval<F>, width: F, degree: u32) -> Result<Self> {
        if !(width > F::zero()) || !width.is_finite() {
            return Err(Error::Invalid("envelope width must be positive".into()));
        }
        let reach = cst::<F>(9.0 + degree as f64);
        let s = SampledFunction {
            f,
            decay: Decay::Gaussian { width },
            a_box: width * reach,
            l_box: width * reach,
            k_box: reach / width,
        };
        s.check_decay()?;
        Ok(s)
    }

    pub fn eval(&self, a: F, l: F) -> Complex<F> {
        (self.f)(a, l)
    }

    /// Values on the box boundary must be below `DECAY_TOL` times the
    /// largest sampled interior value.
    pub fn check_decay(&self) -> Result<()> {
        if let Decay::Constant(_) = self.decay {
            return Ok(());
        }
        let m = 32;
        let grid = |h: F, i: usize| h * (cst::<F>(2.0 * i as f64 / m as f64) - F::one());
        let mut interior = F::zero();
        for i in 0..=m {
            for j in 0..=m {
                let v = self.eval(grid(self.a_box, i) / cst(4.0), grid(self.l_box, j) / cst(4.0)).norm();
                if !v.is_finite() {
                    return Err(Error::Numerical("non-finite sample inside the support box".into()));
                }
                interior = interior.max(v);
            }
        }
        let tol = cst::<F>(DECAY_TOL) * interior.max(F::min_positive_value());
        for i in 0..=m {
            let edge = [
                (grid(self.a_box, i), self.l_box),
                (grid(self.a_box, i), -self.l_box),
                (self.a_box, grid(self.l_box, i)),
                (-self.a_box, grid(self.l_box, i)),
            ];
            for (a, l) in edge {
                let v = self.eval(a, l).norm();
                if !(v <= tol) {
                    return Err(Error::CarrierViolation(format!(
                        "|u({a}, {l})| = {v} exceeds the declared decay at the box boundary"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// `P(q, p) · exp(-(q² + p²) / (2 var))` with exact rational data; `var = None`
/// means no envelope. `q` is the `a` coordinate and `p` the `l` coordinate.
#[derive(Clone, Debug, PartialEq)]
pub struct GaussPoly {
    pub poly: QPoly,
    pub var: Option<Rational>,
}

fn qp_degrees(m: &Monomial) -> (i32, i32) {
    (m.exponent("q") as i32, m.exponent("p") as i32)
}

impl GaussPoly {
    pub fn new(poly: QPoly, var: Option<Rational>) -> Result<Self> {
        let poly = poly.compact();
        if let Some(v) = poly.vars().iter().find(|v| *v != "q" && *v != "p") {
            return Err(Error::UnknownVariable(v.clone()));
        }
        if let Some(v) = &var {
            if *v <= Rational::zero() {
                return Err(Error::Invalid("envelope variance must be positive".into()));
            }
        }
        Ok(GaussPoly { poly, var })
    }

    /// `exp(-(q² + p²)/2)`.
    pub fn gauss() -> Self {
        GaussPoly { poly: QPoly::one(), var: Some(Rational::one()) }
    }

    pub fn constant(c: Rational) -> Self {
        GaussPoly { poly: Poly::constant(c), var: None }
    }

    /// Reads `gauss`, `gauss*EXPR`, `EXPR*gauss`, `gauss(v)*EXPR` (variance
    /// `v`) or a bare constant.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let (var, rest) = if let Some(r) = s.strip_prefix("gauss") {
            let (v, r) = if let Some(r2) = r.strip_prefix('(') {
                let close = r2.find(')').ok_or(Error::Parse { pos: 6, msg: "missing `)`".into() })?;
                (crate::hopf::lie::parse_rational(&r2[..close], 0)?, &r2[close + 1..])
            } else {
                (Rational::one(), r)
            };
            let r = r.trim();
            let body = if r.is_empty() {
                "1"
            } else {
                r.strip_prefix('*').ok_or(Error::Parse { pos: s.len() - r.len(), msg: "expected `*`".into() })?
            };
            (Some(v), body.to_string())
        } else if let Some(r) = s.strip_suffix("gauss") {
            let body = r.trim().strip_suffix('*').ok_or(Error::Parse { pos: 0, msg: "expected `*gauss`".into() })?;
            (Some(Rational::one()), body.to_string())
        } else {
            (None, s.to_string())
        };
        if rest.contains("gauss") {
            return Err(Error::Parse { pos: 0, msg: "`gauss` may appear once, as a factor".into() });
        }
        Self::new(parse_poly(&rest)?, var)
    }

    pub fn is_constant(&self) -> bool {
        self.var.is_none() && self.poly.is_constant()
    }

    fn exponent_coeff(&self) -> Rational {
        match &self.var {
            Some(v) => -(Rational::one() / (v.clone() * Rational::from_integer(2.into()))),
            None => Rational::zero(),
        }
    }

    /// `∂/∂var` with `var ∈ {q, p}`.
    pub fn d(&self, var: &str) -> GaussPoly {
        let env = match &self.var {
            Some(v) => self.poly.clone() * Poly::var(var).scale(&(-(Rational::one() / v.clone()))),
            None => QPoly::zero(),
        };
        GaussPoly { poly: (self.poly.d(var, 1) + env).compact(), var: self.var.clone() }
    }

    pub fn mul(&self, o: &GaussPoly) -> GaussPoly {
        let var = match (&self.var, &o.var) {
            (Some(a), Some(b)) => Some(a.clone() * b.clone() / (a.clone() + b.clone())),
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        };
        GaussPoly { poly: (self.poly.clone() * o.poly.clone()).compact(), var }
    }

    pub fn add(&self, o: &GaussPoly) -> Result<GaussPoly> {
        if self.var != o.var {
            return Err(Error::Invalid("sum of functions with different envelopes".into()));
        }
        Ok(GaussPoly { poly: (self.poly.clone() + o.poly.clone()).compact(), var: self.var.clone() })
    }

    pub fn scale(&self, c: &Rational) -> GaussPoly {
        GaussPoly { poly: self.poly.scale(c).compact(), var: self.var.clone() }
    }

    /// `{u, v} = 2(∂_q u ∂_p v - ∂_p u ∂_q v)`, the bracket of `Ω` in this chart.
    pub fn poisson(&self, o: &GaussPoly) -> GaussPoly {
        let a = self.d("q").mul(&o.d("p"));
        let b = self.d("p").mul(&o.d("q"));
        let two = Rational::from_integer(2.into());
        GaussPoly { poly: (a.poly - b.poly.clone()).scale(&two).compact(), var: a.var.or(b.var) }
    }

    /// Fast evaluator.
    pub fn compile<F: Real>(&self) -> impl Fn(F, F) -> F + Send + Sync + Clone {
        let terms: Vec<(F, i32, i32)> = self
            .poly
            .monomials()
            .iter()
            .map(|(m, c)| {
                let (i, j) = qp_degrees(m);
                (cst::<F>(c.to_f64()), i, j)
            })
            .collect();
        let e = cst::<F>(self.exponent_coeff().to_f64());
        move |q: F, p: F| {
            let s = terms.iter().fold(F::zero(), |s, &(c, i, j)| s + c * q.powi(i) * p.powi(j));
            s * (e * (q * q + p * p)).exp()
        }
    }

    pub fn eval<F: Real>(&self, q: F, p: F) -> F {
        self.compile()(q, p)
    }

    pub fn eval_f64(&self, q: f64, p: f64) -> f64 {
        let pt: BTreeMap<String, f64> = [("q".to_string(), q), ("p".to_string(), p)].into();
        self.poly.eval_f64(&pt) * (self.exponent_coeff().to_f64() * (q * q + p * p)).exp()
    }

    pub fn sampled<F: Real>(&self) -> Result<SampledFunction<F>> {
        match &self.var {
            None if self.poly.is_constant() => {
                Ok(SampledFunction::constant(Complex::new(cst(self.poly.constant_term().to_f64()), F::zero())))
            }
            None => Err(Error::CarrierViolation(format!("`{}` has no decaying envelope", self.poly))),
            Some(v) => {
                let g = self.compile::<F>();
                let width = cst::<F>(v.to_f64().sqrt());
                SampledFunction::gaussian(Arc::new(move |a, l| Complex::new(g(a, l), F::zero())), width, self.poly.total_degree())
            }
        }
    }
}

impl fmt::Display for GaussPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.var {
            None => write!(f, "{}", self.poly),
            Some(v) if v.is_one() => write!(f, "gauss*({})", self.poly),
            Some(v) => write!(f, "gauss({v})*({})", self.poly),
        }
    }
}
