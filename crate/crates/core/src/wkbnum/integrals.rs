use std::sync::Arc;

use num::complex::Complex;
use rayon::prelude::*;

use crate::error::{Error, Result};

use super::func::{Decay, Eval, SampledFunction};
use super::quad::{pairwise, pairwise_slice, rounding, Estimate, Rule};
use super::space::{Channel, WkbSpace};
use super::Real;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureConfig<F> {
    pub hbar: F,
    /// Nodes per axis of the coarse evaluation.
    pub nodes: usize,
    /// Optional overrides of the box half-widths in `l` and in the dual variable.
    pub l_box: Option<F>,
    pub k_box: Option<F>,
    /// Repeat with twice the nodes and report the difference as the error.
    pub doubling: bool,
    /// Fail when the error estimate exceeds this.
    pub tolerance: Option<F>,
}

impl<F: Real> QuadratureConfig<F> {
    pub fn new(hbar: F, nodes: usize) -> Self {
        QuadratureConfig { hbar, nodes, l_box: None, k_box: None, doubling: true, tolerance: None }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.hbar > F::zero()) || !self.hbar.is_finite() {
            return Err(Error::Invalid("ħ must be positive".into()));
        }
        if self.nodes < 16 {
            return Err(Error::Invalid(format!("{} nodes per axis; at least 16 required", self.nodes)));
        }
        Ok(())
    }

    fn finish(&self, coarse: Option<(Complex<F>, F)>, fine: (Complex<F>, F), nodes: usize) -> Result<Estimate<F>> {
        let (v, abs) = fine;
        if !v.re.is_finite() || !v.im.is_finite() {
            return Err(Error::Numerical("non-finite quadrature value".into()));
        }
        let error = rounding(abs) + coarse.map_or(F::zero(), |(c, _)| (v - c).norm());
        if let Some(tol) = self.tolerance {
            if error > tol {
                return Err(Error::Numerical(format!("error estimate {error} exceeds tolerance {tol}")));
            }
        }
        Ok(Estimate { value: v, error, nodes })
    }

    /// Runs `f(n)` at the configured nodes and, when doubling, at twice as many.
    pub(crate) fn run(&self, f: impl Fn(usize) -> Result<(Complex<F>, F)>) -> Result<Estimate<F>> {
        self.validate()?;
        if self.doubling {
            let c = f(self.nodes)?;
            let fine = f(2 * self.nodes)?;
            self.finish(Some(c), fine, 2 * self.nodes)
        } else {
            self.finish(None, f(self.nodes)?, self.nodes)
        }
    }
}

/// Partial transform `ũ(a, k) = ∫ e^{ikl} u(a, l) dl` of a sampled function.
#[derive(Clone)]
pub enum Spectral<F> {
    /// `ũ = 2π c δ(k)`.
    Delta(Complex<F>),
    /// Negligible for `|k| > k_box`; `width` is the envelope scale in `a`.
    Smooth { f: Eval<F>, k_box: F, width: F },
}

impl<F: Real> Spectral<F> {
    pub fn of(u: &SampledFunction<F>, n: usize, l_box: Option<F>, k_box: Option<F>) -> Self {
        match u.decay {
            Decay::Constant(c) => Spectral::Delta(c),
            Decay::Gaussian { width } => {
                let (l_box, k_box) = (l_box.unwrap_or(u.l_box), k_box.unwrap_or(u.k_box));
                let rule = Rule::new(inner_nodes(n, l_box, k_box), l_box);
                let f = u.f.clone();
                Spectral::Smooth {
                    f: Arc::new(move |a, k| {
                        if k.abs() > k_box {
                            return Complex::new(F::zero(), F::zero());
                        }
                        rule.integrate(|l| f(a, l) * Complex::from_polar(F::one(), k * l))
                    }),
                    k_box,
                    width,
                }
            }
        }
    }

    pub fn eval(&self, a: F, k: F) -> Option<Complex<F>> {
        match self {
            Spectral::Delta(_) => None,
            Spectral::Smooth { f, .. } => Some(f(a, k)),
        }
    }

    /// Shrinks `k_box` to where sampled values fall below `1e-13` of the peak.
    fn measured(self) -> Self {
        let Spectral::Smooth { f, k_box, width } = self else { return self };
        let steps = 128;
        let h = k_box / F::from(steps).unwrap();
        let two = F::from(2.0).unwrap();
        let mags: Vec<F> = (0..=steps)
            .into_par_iter()
            .map(|j| {
                let k = h * F::from(j).unwrap();
                [-two, -F::one(), F::zero(), F::one(), two]
                    .iter()
                    .flat_map(|&t| [f(t * width, k).norm(), f(t * width, -k).norm()])
                    .fold(F::zero(), F::max)
            })
            .collect();
        let peak = mags.iter().copied().fold(F::zero(), F::max);
        let tol = F::from(1e-13).unwrap() * peak;
        let last = mags.iter().rposition(|&m| m > tol).unwrap_or(0);
        let k_box = (h * F::from((last + 1).min(steps)).unwrap()).max(h);
        Spectral::Smooth { f, k_box, width }
    }
}

/// Nodes in `l` needed to resolve `e^{ikl}` for `|k| ≤ k_box` on `[-l_box, l_box]`:
/// Gauss–Legendre spacing near the centre is about `π l_box / n`.
fn inner_nodes<F: Real>(n: usize, l_box: F, k_box: F) -> usize {
    let need = (l_box * k_box * F::from(1.25).unwrap()).ceil().to_usize().unwrap_or(n);
    n.max(need)
}

/// Table `ũ(a_i, α_j)` by `n`-node quadrature in `l`.
pub fn partial_fourier<F: Real>(u: &SampledFunction<F>, a: &[F], alpha: &[F], n: usize) -> Result<Vec<Vec<Complex<F>>>> {
    if let Decay::Constant(_) = u.decay {
        return Err(Error::Invalid("the transform of a constant is a point mass".into()));
    }
    u.check_decay()?;
    let rule = Rule::new(n, u.l_box);
    let table: Vec<Vec<Complex<F>>> = a
        .iter()
        .map(|&x| alpha.iter().map(|&k| rule.integrate(|l| u.eval(x, l) * Complex::from_polar(F::one(), k * l))).collect())
        .collect();
    if table.iter().flatten().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
        return Err(Error::Numerical("non-finite transform value".into()));
    }
    Ok(table)
}

fn one_channel<F: Real>(space: &WkbSpace<F>) -> Result<Channel<F>> {
    match space.channels[..] {
        [c] => Ok(c),
        _ => Err(Error::Unsupported(format!("quadrature is implemented on one channel, space has {}", space.dim()))),
    }
}

/// Double sum `Σ_ij w_i w_j f(i, j)` in a fixed order; rows run in parallel.
fn grid_sum<F: Real>(r1: &Rule<F>, r2: &Rule<F>, f: impl Fn(usize, usize) -> Complex<F> + Sync) -> (Complex<F>, F) {
    let rows: Vec<(Complex<F>, F)> = (0..r1.len())
        .into_par_iter()
        .map(|i| {
            let terms: Vec<Complex<F>> = (0..r2.len()).map(|j| f(i, j) * (r1.weights[i] * r2.weights[j])).collect();
            let abs = terms.iter().fold(F::zero(), |s, t| s + t.norm());
            (pairwise_slice(&terms), abs)
        })
        .collect();
    let abs = rows.iter().fold(F::zero(), |s, r| s + r.1);
    (pairwise(0, rows.len(), &|i| rows[i].0), abs)
}

/// `<u | v>_ħ = ∫∫ ũ(a,α) conj(ṽ(a,α)) |Jac φ_ħ⁻¹(α)| da dα`.
pub fn hilbert_product<F: Real>(
    space: &WkbSpace<F>,
    u: &SampledFunction<F>,
    v: &SampledFunction<F>,
    cfg: &QuadratureConfig<F>,
) -> Result<Estimate<F>> {
    one_channel(space)?;
    if matches!(u.decay, Decay::Constant(_)) || matches!(v.decay, Decay::Constant(_)) {
        return Err(Error::Invalid("constants are not square integrable".into()));
    }
    let hbar = cfg.hbar;
    cfg.run(|n| {
        let (su, sv) = (Spectral::of(u, n, cfg.l_box, None), Spectral::of(v, n, cfg.l_box, None));
        let ra = Rule::new(n, u.a_box.min(v.a_box));
        let rk = Rule::new(n, cfg.k_box.unwrap_or(u.k_box.min(v.k_box)));
        Ok(grid_sum(&ra, &rk, |i, j| {
            let (a, k) = (ra.nodes[i], rk.nodes[j]);
            su.eval(a, k).unwrap() * sv.eval(a, k).unwrap().conj() * space.jacobian_inv_hbar(&[k], hbar)
        }))
    })
}

/// `(1/2π) ∫ e^{-ikl} g(a, k) dk`: the inverse transform at `(a, l)`.
fn inverse_at<F: Real>(g: &Eval<F>, k_box: F, a: F, l: F, n: usize) -> (Complex<F>, F) {
    let r = Rule::new(n, k_box);
    let terms: Vec<Complex<F>> = (0..n).map(|i| g(a, r.nodes[i]) * Complex::from_polar(r.weights[i], -r.nodes[i] * l)).collect();
    let abs = terms.iter().fold(F::zero(), |s, t| s + t.norm());
    let inv = F::one() / F::TAU();
    (pairwise_slice(&terms) * inv, abs * inv)
}

/// The product at `x0` from the transforms of both factors. After integrating
/// the linear dependence on `l1, l2` and substituting `k_i = φ(±Δa)/ħ` the
/// kernel is a smooth double integral over `(k1, k2)`.
fn star_from_spectra<F: Real>(ch: Channel<F>, norm: F, u: &Spectral<F>, v: &Spectral<F>, x0: [F; 2], hbar: F, n: usize) -> (Complex<F>, F) {
    let [a0, l0] = x0;
    let scale = norm * F::TAU() * F::TAU();
    match (u, v) {
        (Spectral::Delta(c), Spectral::Delta(d)) => (c * d * scale, (c * d * scale).norm()),
        (Spectral::Delta(c), Spectral::Smooth { f, k_box, .. }) | (Spectral::Smooth { f, k_box, .. }, Spectral::Delta(c)) => {
            let (val, abs) = inverse_at(f, *k_box, a0, l0, n);
            (val * c * scale, abs * c.norm() * scale)
        }
        (Spectral::Smooth { f: fu, k_box: ku, .. }, Spectral::Smooth { f: fv, k_box: kv, .. }) => {
            let (r1, r2) = (Rule::new(n, *ku), Rule::new(n, *kv));
            let s1: Vec<F> = r1.nodes.iter().map(|&k| ch.phi_inv(hbar * k)).collect();
            let s2: Vec<F> = r2.nodes.iter().map(|&k| ch.phi_inv(hbar * k)).collect();
            let (sum, abs) = grid_sum(&r1, &r2, |i, j| {
                let (a1, a2) = (a0 - s2[j], a0 + s1[i]);
                let d = a1 - a2;
                let jac = ch.dphi(d) / (ch.dphi(s1[i]) * ch.dphi(s2[j]));
                let phase = Complex::from_polar(jac, ch.phi(d) * l0 / hbar);
                phase * fu(a1, r1.nodes[i]) * fv(a2, r2.nodes[j])
            });
            let c = norm;
            (sum * c, abs * c)
        }
    }
}

/// Transform of `u ⋆ v` from the transforms of the factors: the `l`-integral
/// of the kernel phase is a point mass, leaving a single integral.
pub fn compose_spectra<F: Real>(space: &WkbSpace<F>, u: &Spectral<F>, v: &Spectral<F>, hbar: F, n: usize) -> Result<Spectral<F>> {
    let ch = one_channel(space)?;
    let hbar = hbar / space.xi;
    let scale = space.norm * F::TAU();
    Ok(match (u, v) {
        (Spectral::Delta(c), Spectral::Delta(d)) => Spectral::Delta(c * d * (scale * F::TAU())),
        (Spectral::Delta(c), Spectral::Smooth { f, k_box, width }) | (Spectral::Smooth { f, k_box, width }, Spectral::Delta(c)) => {
            let (f, c) = (f.clone(), *c * (scale * F::TAU()));
            Spectral::Smooth { f: Arc::new(move |a, k| f(a, k) * c), k_box: *k_box, width: *width }
        }
        (Spectral::Smooth { f: fu, k_box: ku, width: wu }, Spectral::Smooth { f: fv, k_box: kv, width: wv }) => {
            let r = Rule::new(n, *ku);
            let s1: Vec<F> = r.nodes.iter().map(|&k| ch.phi_inv(hbar * k)).collect();
            let k_box = ch.phi(ch.phi_inv(hbar * *ku) + ch.phi_inv(hbar * *kv)) / hbar;
            let (fu, fv) = (fu.clone(), fv.clone());
            Spectral::Smooth {
                f: Arc::new(move |a: F, k: F| {
                    if k.abs() > k_box {
                        return Complex::new(F::zero(), F::zero());
                    }
                    let s = ch.phi_inv(hbar * k);
                    let sum = pairwise(0, r.len(), &|i| {
                        let k2 = ch.phi(s - s1[i]) / hbar;
                        fu(a - s + s1[i], r.nodes[i]) * fv(a + s1[i], k2) * (r.weights[i] / ch.dphi(s1[i]))
                    });
                    sum * scale
                }),
                k_box,
                width: wu.min(*wv),
            }
            .measured()
        }
    })
}

/// `u ⋆_ħ v(x0) = N ∫∫ u(x1) v(x2) A(x1,x2) e^{(i/ħ) S(x0,x1,x2)} dx1 dx2`.
pub fn wkb_star<F: Real>(
    space: &WkbSpace<F>,
    u: &SampledFunction<F>,
    v: &SampledFunction<F>,
    x0: [F; 2],
    cfg: &QuadratureConfig<F>,
) -> Result<Estimate<F>> {
    let ch = one_channel(space)?;
    let hbar = cfg.hbar / space.xi;
    cfg.run(|n| {
        let (su, sv) = (Spectral::of(u, n, cfg.l_box, cfg.k_box), Spectral::of(v, n, cfg.l_box, cfg.k_box));
        Ok(star_from_spectra(ch, space.norm, &su, &sv, x0, hbar, n))
    })
}

/// Same kernel at any nonzero `ħ`, single resolution; used for derivatives in `ħ`.
pub(crate) fn star_signed<F: Real>(space: &WkbSpace<F>, u: &SampledFunction<F>, v: &SampledFunction<F>, x0: [F; 2], hbar: F, n: usize) -> Result<Complex<F>> {
    let ch = one_channel(space)?;
    if hbar.is_zero() {
        return Err(Error::Invalid("ħ must be nonzero".into()));
    }
    let (su, sv) = (Spectral::of(u, n, None, None), Spectral::of(v, n, None, None));
    Ok(star_from_spectra(ch, space.norm, &su, &sv, x0, hbar / space.xi, n).0)
}

/// Both bracketings of a triple product at `x0`.
#[derive(Clone, Copy, Debug)]
pub struct Associativity<F> {
    pub left: Estimate<F>,
    pub right: Estimate<F>,
    pub defect: F,
    /// Sum of both error estimates.
    pub error: F,
}

pub fn associativity<F: Real>(
    space: &WkbSpace<F>,
    u: &SampledFunction<F>,
    v: &SampledFunction<F>,
    w: &SampledFunction<F>,
    x0: [F; 2],
    cfg: &QuadratureConfig<F>,
) -> Result<Associativity<F>> {
    let ch = one_channel(space)?;
    let hbar = cfg.hbar / space.xi;
    let sp = |f: &SampledFunction<F>, n| Spectral::of(f, n, cfg.l_box, cfg.k_box);
    let left = cfg.run(|n| {
        let uv = compose_spectra(space, &sp(u, n), &sp(v, n), cfg.hbar, n)?;
        Ok(star_from_spectra(ch, space.norm, &uv, &sp(w, n), x0, hbar, n))
    })?;
    let right = cfg.run(|n| {
        let vw = compose_spectra(space, &sp(v, n), &sp(w, n), cfg.hbar, n)?;
        Ok(star_from_spectra(ch, space.norm, &sp(u, n), &vw, x0, hbar, n))
    })?;
    Ok(Associativity { defect: (left.value - right.value).norm(), error: left.error + right.error, left, right })
}

pub(crate) fn inverse_transform<F: Real>(s: &Spectral<F>, x0: [F; 2], n: usize) -> Complex<F> {
    match s {
        Spectral::Delta(c) => *c,
        Spectral::Smooth { f, k_box, .. } => inverse_at(f, *k_box, x0[0], x0[1], n).0,
    }
}
