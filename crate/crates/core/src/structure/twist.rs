use num_traits::Zero;

use super::linalg::{inverse, nullspace, rank, Mat};
use super::triple::ElementaryInstance;
use super::weights::WeightData;
use crate::error::{Error, Result};
use crate::exactalg::Poly;
use crate::report::{Check, Report};
use crate::scalar::Coeff;
use crate::{QPoly, Rational};

/// Twisting map in the diagonal case: with `W` the matrix of positive
/// weights, `α(φ(a)) = sinh(α(a))` for every `α ∈ Φ⁺`, i.e.
/// `φ(a) = W⁻¹ sinh(W a)`. The flat case is the identity.
#[derive(Clone, Debug)]
pub struct TwistMap {
    /// Rows are the positive weights; empty when flat.
    pub weights: Mat<Rational>,
    pub weights_inv: Mat<Rational>,
    pub dim: usize,
    pub global_diffeo: bool,
    pub report: Report,
}

fn to_f64(m: &Mat<Rational>) -> Vec<Vec<f64>> {
    m.iter().map(|r| r.iter().map(|c| c.to_f64()).collect()).collect()
}

fn mv(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

impl TwistMap {
    pub fn is_flat(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn identity(dim: usize) -> Self {
        TwistMap { weights: vec![], weights_inv: vec![], dim, global_diffeo: true, report: Report::new() }
    }

    fn channels(&self, a: &[f64], f: impl Fn(f64) -> f64) -> Vec<f64> {
        if self.is_flat() {
            return a.to_vec();
        }
        let y: Vec<f64> = mv(&to_f64(&self.weights), a).into_iter().map(f).collect();
        mv(&to_f64(&self.weights_inv), &y)
    }

    pub fn eval(&self, a: &[f64]) -> Vec<f64> {
        self.channels(a, f64::sinh)
    }

    pub fn inverse(&self, alpha: &[f64]) -> Vec<f64> {
        self.channels(alpha, f64::asinh)
    }

    /// `det dφ(a) = Π_α cosh(α(a))`.
    pub fn jacobian(&self, a: &[f64]) -> f64 {
        if self.is_flat() {
            return 1.0;
        }
        mv(&to_f64(&self.weights), a).into_iter().map(f64::cosh).product()
    }

    /// Component formulas in the coordinates `a1..am`.
    pub fn formulas(&self) -> Vec<String> {
        let names: Vec<String> = (1..=self.dim).map(|i| format!("a{i}")).collect();
        if self.is_flat() {
            return names;
        }
        let forms: Vec<String> = self
            .weights
            .iter()
            .map(|row| {
                let p: QPoly = row.iter().zip(&names).map(|(c, v)| Poly::constant(c.clone()) * Poly::var(v)).sum();
                p.to_string()
            })
            .collect();
        self.weights_inv
            .iter()
            .map(|row| {
                let terms: Vec<String> = row
                    .iter()
                    .zip(&forms)
                    .filter(|(c, _)| !c.is_zero())
                    .map(|(c, f)| {
                        if *c == Rational::from_integer(1.into()) {
                            format!("sinh({f})")
                        } else {
                            format!("{c}*sinh({f})")
                        }
                    })
                    .collect();
                if terms.is_empty() {
                    "0".into()
                } else {
                    terms.join(" + ")
                }
            })
            .collect()
    }
}

/// `sinh(M)` by its Taylor series.
fn sinh_matrix(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    let n = m.len();
    let mul = |a: &[Vec<f64>], b: &[Vec<f64>]| -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let sq = mul(m, m);
    let mut term = m.to_vec();
    let mut acc = m.to_vec();
    for k in 1..200 {
        term = mul(&term, &sq);
        let f = 1.0 / ((2 * k) as f64 * (2 * k + 1) as f64);
        term.iter_mut().flatten().for_each(|x| *x *= f);
        acc.iter_mut().flatten().zip(term.iter().flatten()).for_each(|(a, t)| *a += t);
        if term.iter().flatten().all(|x| x.abs() < 1e-18) {
            break;
        }
    }
    acc
}

/// Solves `ξ(sinh(a) l) = ξ[φ(a), l]` channel by channel and confirms the
/// identity numerically on sample points `a` and a basis of `l = b ∩ p`.
pub fn twist_solve(inst: &ElementaryInstance, w: &WeightData) -> Result<TwistMap> {
    let m = inst.a_dim();
    if w.jordan.iter().any(|jc| !super::linalg::is_zero(&jc.nilpotent)) {
        return Err(Error::Unsupported("ρ(a) is not diagonalizable".into()));
    }
    if w.weights.iter().flatten().any(|c| !c.im.is_zero()) {
        return Err(Error::Unsupported("non-real weights".into()));
    }
    if w.nonzero_count() == 0 {
        let mut t = TwistMap::identity(m);
        t.report.push(Check::pass("flat_limit_identity", 1));
        return Ok(t);
    }
    let rows: Mat<Rational> = w.positive.iter().map(|&i| w.weights[i].iter().map(|c| c.re.clone()).collect()).collect();
    if rows.len() != m || rank(&rows) != m {
        return Err(Error::Unsupported(format!(
            "{} positive weights for dim a = {m}: twisting map is not channel-diagonal",
            rows.len()
        )));
    }
    let inv = inverse(&rows).expect("full rank");
    let twist = TwistMap { weights: rows, weights_inv: inv, dim: m, global_diffeo: true, report: Report::new() };
    let mut twist = twist;

    let n = inst.b_dim();
    let l_basis: Vec<Vec<f64>> = nullspace(&super::linalg::add(&inst.sigma_b, &super::linalg::identity(n)), n)
        .iter()
        .map(|v| v.iter().map(|c| c.to_f64()).collect())
        .collect();
    let xi: Vec<f64> = inst.xi_b.iter().map(|c| c.to_f64()).collect();
    let rho: Vec<Vec<Vec<f64>>> = inst.rho.iter().map(to_f64).collect();
    let rho_of = |a: &[f64]| -> Vec<Vec<f64>> {
        (0..n).map(|i| (0..n).map(|j| (0..m).map(|k| a[k] * rho[k][i][j]).sum()).collect()).collect()
    };
    let samples: Vec<Vec<f64>> = (0..5)
        .map(|s| (0..m).map(|k| 0.37 * (s as f64 + 1.0) * if (s + k) % 2 == 0 { 1.0 } else { -0.6 }).collect())
        .collect();
    let mut worst = 0.0f64;
    let mut nonzero_channel = false;
    for a in &samples {
        let sh = sinh_matrix(&rho_of(a));
        let lin = rho_of(&twist.eval(a));
        for l in &l_basis {
            let lhs: f64 = xi.iter().zip(mv(&sh, l)).map(|(x, y)| x * y).sum();
            let rhs: f64 = xi.iter().zip(mv(&lin, l)).map(|(x, y)| x * y).sum();
            nonzero_channel |= lhs.abs() > 1e-12;
            worst = worst.max((lhs - rhs).abs() / (1.0 + lhs.abs()));
        }
    }
    twist.report.push(Check::from_bool("twist_identity", worst < 1e-10 && nonzero_channel, || {
        format!("max relative defect {worst:e}")
    }));
    let jac_ok = samples.iter().all(|a| twist.jacobian(a) > 0.0);
    twist.report.push(Check::from_bool("jacobian_positive", jac_ok, || "det dφ ≤ 0 at a sample".into()));
    let inv_ok = samples.iter().all(|a| {
        let back = twist.inverse(&twist.eval(a));
        back.iter().zip(a).all(|(x, y)| (x - y).abs() < 1e-9 * (1.0 + y.abs()))
    });
    twist.report.push(Check::from_bool("inverse_round_trip", inv_ok, || "φ⁻¹(φ(a)) ≠ a".into()));
    // every channel is sinh, strictly increasing and onto R
    twist.global_diffeo = true;
    twist.report.note("each channel is sinh: strictly monotone onto R, so φ is a global diffeomorphism");
    Ok(twist)
}
