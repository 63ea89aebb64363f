use num::complex::Complex;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::report::{Check, Report};
use crate::scalar::rat;
use crate::QPoly;

use super::func::GaussPoly;
use super::integrals::{star_signed, wkb_star, QuadratureConfig};
use super::quad::{cst, Estimate};
use super::space::WkbSpace;
use super::Real;

/// Smallest accepted slope of `log|r|` against `log ħ`.
pub const MIN_SLOPE: f64 = 1.75;
/// Required ratio between the smallest residual and its quadrature error.
pub const SEPARATION: f64 = 10.0;

#[derive(Clone, Copy, Debug)]
pub struct AsymptoticPoint<F> {
    pub hbar: F,
    pub star: Estimate<F>,
    /// `u⋆v(x0) - uv(x0) - (ħ/2i){u,v}(x0)`.
    pub residual: Complex<F>,
}

#[derive(Clone, Debug)]
pub struct FitReport<F> {
    pub points: Vec<AsymptoticPoint<F>>,
    pub slope: F,
    pub intercept: F,
    /// Root-mean-square deviation of the fit in `log|r|`.
    pub rms: F,
    pub uv: F,
    pub bracket: F,
    /// `min |r| / error` over the sweep.
    pub separation: F,
    pub report: Report,
}

/// Least-squares line through `(x, y)`: `(slope, intercept, rms)`.
pub fn fit_line<F: Real>(x: &[F], y: &[F]) -> (F, F, F) {
    let n = cst::<F>(x.len() as f64);
    let mx = x.iter().fold(F::zero(), |s, &v| s + v) / n;
    let my = y.iter().fold(F::zero(), |s, &v| s + v) / n;
    let sxy = x.iter().zip(y).fold(F::zero(), |s, (&a, &b)| s + (a - mx) * (b - my));
    let sxx = x.iter().fold(F::zero(), |s, &a| s + (a - mx) * (a - mx));
    let slope = sxy / sxx;
    let icpt = my - slope * mx;
    let ss = x.iter().zip(y).fold(F::zero(), |s, (&a, &b)| {
        let r = b - (icpt + slope * a);
        s + r * r
    });
    (slope, icpt, (ss / n).sqrt())
}

/// `2(∂_q u ∂_p v - ∂_p u ∂_q v)` by central differences with step `h`.
pub fn fd_poisson<F: Real>(u: impl Fn(F, F) -> F, v: impl Fn(F, F) -> F, x0: [F; 2], h: F) -> F {
    let [q, p] = x0;
    let two = cst::<F>(2.0);
    let dq = |f: &dyn Fn(F, F) -> F| (f(q + h, p) - f(q - h, p)) / (two * h);
    let dp = |f: &dyn Fn(F, F) -> F| (f(q, p + h) - f(q, p - h)) / (two * h);
    two * (dq(&u) * dp(&v) - dp(&u) * dq(&v))
}

/// Fits the remainder of the first-order expansion over an `ħ` sweep.
pub fn asymptotic_check<F: Real>(
    space: &WkbSpace<F>,
    u: &GaussPoly,
    v: &GaussPoly,
    x0: [F; 2],
    hbars: &[F],
    cfg: &QuadratureConfig<F>,
) -> Result<FitReport<F>> {
    if hbars.len() < 5 {
        return Err(Error::Invalid(format!("{} values of ħ; at least 5 required", hbars.len())));
    }
    if let Some(h) = hbars.iter().find(|&&h| !(h > F::zero() && h <= cst(0.5))) {
        return Err(Error::Invalid(format!("ħ = {h} outside (0, 0.5]")));
    }
    let (su, sv) = (u.sampled::<F>()?, v.sampled::<F>()?);
    let [q, p] = x0;
    let uv = u.eval(q, p) * v.eval(q, p);
    let bracket = u.poisson(v).eval(q, p);
    let mut points = Vec::new();
    for &h in hbars {
        let star = wkb_star(space, &su, &sv, x0, &QuadratureConfig { hbar: h, ..*cfg })?;
        // (ħ/2i){u,v} = -iħ/2 {u,v}
        let first = Complex::new(F::zero(), -h / cst(2.0) * bracket);
        points.push(AsymptoticPoint { hbar: h, star, residual: star.value - uv - first });
    }
    let xs: Vec<F> = points.iter().map(|pt| pt.hbar.ln()).collect();
    let ys: Vec<F> = points.iter().map(|pt| pt.residual.norm().max(F::min_positive_value()).ln()).collect();
    let (slope, intercept, rms) = fit_line(&xs, &ys);
    let separation = points
        .iter()
        .map(|pt| pt.residual.norm() / pt.star.error.max(F::min_positive_value()))
        .fold(F::infinity(), F::min);
    let mut report = Report::new();
    let worst = points
        .iter()
        .find(|pt| pt.residual.norm() < cst::<F>(SEPARATION) * pt.star.error)
        .map(|pt| format!("ħ = {}: |r| = {:e}, error = {:e}", pt.hbar, pt.residual.norm(), pt.star.error));
    report.push(match worst {
        None => Check::pass("quadrature_below_residual", points.len() as u64),
        Some(w) => Check::fail("quadrature_below_residual", points.len() as u64, w),
    });
    report.push(Check::from_bool("slope", slope >= cst(MIN_SLOPE), || format!("slope {slope} < {MIN_SLOPE}")));
    for pt in &points {
        report.value(&format!("residual(ħ={})", pt.hbar), pt.residual.norm().to_f64().unwrap_or(f64::NAN), pt.star.error.to_f64());
    }
    report.value("slope", slope.to_f64().unwrap_or(f64::NAN), None);
    Ok(FitReport { points, slope, intercept, rms, uv, bracket, separation, report })
}

/// `ħ⁰` and `ħ¹` coefficients of the kernel product at `x0` and of the
/// formal `λ = 1/2` product under `t = -2iħ`.
#[derive(Clone, Copy, Debug)]
pub struct OrderCoefficients<F> {
    pub c0: Complex<F>,
    pub c1: Complex<F>,
    pub c0_formal: Complex<F>,
    pub c1_formal: Complex<F>,
}

impl<F: Real> OrderCoefficients<F> {
    pub fn max_deviation(&self) -> F {
        (self.c0 - self.c0_formal).norm().max((self.c1 - self.c1_formal).norm())
    }
}

/// First-order part of the `λ = 1/2` product as `Σ c_ij ∂_i u ∂_j v` on `(q, p)`.
fn formal_first_order(u: &GaussPoly, v: &GaussPoly) -> GaussPoly {
    let coords = ["q", "p"];
    let (qs, ps) = (vec!["q".to_string()], vec!["p".to_string()]);
    let mut acc: Option<GaussPoly> = None;
    for i in coords {
        for j in coords {
            let prod = crate::phase_space::lambda_star_named::<crate::Rational>(&rat(1, 2), 1, &qs, &ps, &Poly::var(i), &Poly::var(j));
            let c = prod.coeff_of("t", 1).constant_term();
            if c.is_zero() {
                continue;
            }
            let term = u.d(i).mul(&v.d(j)).scale(&c);
            acc = Some(match acc {
                None => term,
                Some(a) => GaussPoly { poly: (a.poly + term.poly).compact(), var: a.var.or(term.var) },
            });
        }
    }
    acc.unwrap_or(GaussPoly { poly: QPoly::zero(), var: None })
}

/// Richardson differences of `ħ ↦ u⋆_ħ v(x0)` at `±step, ±2 step`.
pub fn order_coefficients<F: Real>(
    space: &WkbSpace<F>,
    u: &GaussPoly,
    v: &GaussPoly,
    x0: [F; 2],
    step: F,
    nodes: usize,
) -> Result<OrderCoefficients<F>> {
    let (su, sv) = (u.sampled::<F>()?, v.sampled::<F>()?);
    let at = |h: F| star_signed(space, &su, &sv, x0, h, nodes);
    let two = cst::<F>(2.0);
    let (fp1, fm1, fp2, fm2) = (at(step)?, at(-step)?, at(two * step)?, at(-two * step)?);
    let c0 = ((fp1 + fm1) * cst::<F>(4.0) - (fp2 + fm2)) / cst::<F>(6.0);
    let c1 = ((fp1 - fm1) * cst::<F>(8.0) - (fp2 - fm2)) / (cst::<F>(12.0) * step);
    let [q, p] = x0;
    let c0_formal = Complex::new(u.eval(q, p) * v.eval(q, p), F::zero());
    // t = -2iħ
    let c1_formal = Complex::new(F::zero(), -two * formal_first_order(u, v).eval(q, p));
    Ok(OrderCoefficients { c0, c1, c0_formal, c1_formal })
}

