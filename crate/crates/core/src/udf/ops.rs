use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{Poly, T};
use crate::hopf::monomial_basis;
use crate::report::Check;
use crate::scalar::Coeff;
use crate::{QPoly, Rational};

use super::group::{ActionDescriptor, GroupDescriptor};
use super::product::{InducedProduct, InvariantProduct};

fn point<K: Coeff>(names: &[String]) -> Vec<Poly<K>> {
    names.iter().map(|s| Poly::var(s)).collect()
}

fn lift<K: Coeff>(p: &QPoly) -> Poly<K> {
    p.map_coeffs(|c| K::from_ratio(c.numer(), c.denom()))
}

/// Names `prefix1..prefixn` that avoid every name in `taken`.
fn fresh(prefix: &str, n: usize, taken: &[String]) -> Vec<String> {
    let mut p = prefix.to_string();
    loop {
        let names: Vec<String> = (1..=n).map(|i| format!("{p}{i}")).collect();
        if names.iter().all(|x| !taken.contains(x)) {
            return names;
        }
        p.push('_');
    }
}

/// `(L_g^* u)(x) = u(m(g, x))`, where `coords` name the coordinates `x`
/// appearing in `u` and `g` may be numeric or symbolic.
pub fn left_translate<K: Coeff>(group: &GroupDescriptor, g: &[Poly<K>], u: &Poly<K>, coords: &[String]) -> Poly<K> {
    let moved = group.compose(g, &point::<K>(coords));
    let map: BTreeMap<String, Poly<K>> = coords.iter().cloned().zip(moved).collect();
    u.substitute(&map)
}

/// `α^x(u)(g) = u(τ(g⁻¹, x))` as a polynomial in the product coordinates
/// (standing for `g`) and the point coordinates `w`.
pub fn alpha<K: Coeff>(coords: &[String], action: &ActionDescriptor, u: &Poly<K>) -> Poly<K> {
    let g = point::<K>(coords);
    let moved = action.act(&action.group.inverse_of(&g), &point::<K>(&action.w_vars()));
    let map: BTreeMap<String, Poly<K>> = action.w_vars().into_iter().zip(moved).collect();
    u.substitute(&map)
}

/// `u ⋆^M v (x) = (α^x(u) ⋆^G α^x(v))(e)` with `x` symbolic.
pub fn udf_transport<K: Coeff>(
    p: &dyn InvariantProduct<K>,
    action: &ActionDescriptor,
    u: &Poly<K>,
    v: &Poly<K>,
) -> Result<Poly<K>> {
    let coords = p.coords();
    if coords.len() != action.group.dim() {
        return Err(Error::Dimension(format!(
            "product has {} coordinates, group has dimension {}",
            coords.len(),
            action.group.dim()
        )));
    }
    for f in [u, v] {
        if let Some(c) = f.compact().vars().iter().find(|x| coords.contains(x)) {
            return Err(Error::CarrierViolation(format!("function on M uses group coordinate {c}")));
        }
    }
    let prod = p.product(&alpha(&coords, action, u), &alpha(&coords, action, v))?;
    let origin: BTreeMap<String, K> = coords.iter().map(|c| (c.clone(), K::zero())).collect();
    Ok(prod.eval(&origin).compact())
}

/// A product on `M` obtained by transporting `inner` along `action`.
pub struct Transported<K: Coeff> {
    pub inner: Arc<dyn InvariantProduct<K>>,
    pub action: ActionDescriptor,
}

impl<K: Coeff> InvariantProduct<K> for Transported<K> {
    fn name(&self) -> String {
        format!("transported({})", self.inner.name())
    }
    fn coords(&self) -> Vec<String> {
        self.action.w_vars()
    }
    fn tcap(&self) -> Option<u32> {
        self.inner.tcap()
    }
    fn product(&self, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>> {
        udf_transport(self.inner.as_ref(), &self.action, u, v)
    }
}

/// Fiberwise product over the `Q` coordinates of `G = Q·S`.
pub fn induction_product<K: Coeff>(
    q_coords: &[String],
    fiber: Arc<dyn InvariantProduct<K>>,
    u: &Poly<K>,
    v: &Poly<K>,
) -> Result<Poly<K>> {
    InducedProduct { q_coords: q_coords.to_vec(), fiber }.product(u, v)
}

/// Bivector field `π = Σ π^{ij} ∂_i ⊗ ∂_j` in the coordinates `coords`.
#[derive(Clone, Debug, PartialEq)]
pub struct Bivector<K: Coeff> {
    pub coords: Vec<String>,
    pub pi: Vec<Vec<Poly<K>>>,
}

impl<K: Coeff> Bivector<K> {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// `{u, v} = Σ π^{ij} ∂_i u ∂_j v`.
    pub fn bracket(&self, u: &Poly<K>, v: &Poly<K>) -> Poly<K> {
        let mut acc = Poly::zero();
        for (i, ci) in self.coords.iter().enumerate() {
            let du = u.d(ci, 1);
            if du.is_zero() {
                continue;
            }
            for (j, cj) in self.coords.iter().enumerate() {
                if !self.pi[i][j].is_zero() {
                    acc = acc + &self.pi[i][j] * &du * v.d(cj, 1);
                }
            }
        }
        acc.compact()
    }

    pub fn is_zero(&self) -> bool {
        self.pi.iter().flatten().all(|p| p.is_zero())
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| (0..n).all(|j| (&self.pi[i][j] + &self.pi[j][i]).is_zero()))
    }

    /// First nonzero component of `[π, π]`, as `(i, j, k, value)`.
    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize, Poly<K>)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let mut s = Poly::zero();
                    for l in 0..n {
                        let c = &self.coords[l];
                        s = s
                            + &self.pi[l][i] * self.pi[j][k].d(c, 1)
                            + &self.pi[l][j] * self.pi[k][i].d(c, 1)
                            + &self.pi[l][k] * self.pi[i][j].d(c, 1);
                    }
                    if !s.is_zero() {
                        return Some((i, j, k, s));
                    }
                }
            }
        }
        None
    }

    pub fn is_poisson(&self) -> bool {
        self.is_antisymmetric() && self.jacobi_violation().is_none()
    }

    /// Components at the origin.
    pub fn at_origin(&self) -> Vec<Vec<K>> {
        let origin: BTreeMap<String, K> = self.coords.iter().map(|c| (c.clone(), K::zero())).collect();
        self.pi.iter().map(|row| row.iter().map(|p| p.eval(&origin).constant_term()).collect()).collect()
    }
}

impl<K: Coeff> fmt::Display for Bivector<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for i in 0..self.dim() {
            for j in i + 1..self.dim() {
                if !self.pi[i][j].is_zero() {
                    parts.push(format!("({})*∂{}∧∂{}", self.pi[i][j], self.coords[i], self.coords[j]));
                }
            }
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Coefficient of `t` in `u ⋆ v`.
pub fn first_order<K: Coeff>(p: &dyn InvariantProduct<K>, u: &Poly<K>, v: &Poly<K>) -> Result<Poly<K>> {
    Ok(p.product(u, v)?.coeff_of(T, 1).compact())
}

/// Antisymmetrised first-order term `π^{ij} = C₁(x_i, x_j) - C₁(x_j, x_i)`,
/// checked to act as a biderivation on every pair of monomials of degree at
/// most `check_deg`.
pub fn extract_poisson<K: Coeff>(p: &dyn InvariantProduct<K>, check_deg: u32) -> Result<Bivector<K>> {
    let coords = p.coords();
    let n = coords.len();
    let xs: Vec<Poly<K>> = point(&coords);
    let mut pi = vec![vec![Poly::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            pi[i][j] = (first_order(p, &xs[i], &xs[j])? - first_order(p, &xs[j], &xs[i])?).compact();
        }
    }
    let bv = Bivector { coords: coords.clone(), pi };
    let basis: Vec<Poly<K>> = monomial_basis(&coords, check_deg);
    for a in &basis {
        for b in &basis {
            let anti = first_order(p, a, b)? - first_order(p, b, a)?;
            if anti != bv.bracket(a, b) {
                return Err(Error::NotBidifferential(format!(
                    "antisymmetrised first-order term on ({a}, {b}) is {anti}, the bivector gives {}",
                    bv.bracket(a, b)
                )));
            }
        }
    }
    Ok(bv)
}

/// Fundamental fields of `α_g = τ*_{g⁻¹}`: entry `[i][k]` is the
/// `∂/∂w_k` coefficient of `X*_i = -∂τ_k/∂x_i (e, w)`.
pub fn fundamental_fields(action: &ActionDescriptor) -> Vec<Vec<QPoly>> {
    let xs = action.group.x_vars();
    let origin: BTreeMap<String, Rational> = xs.iter().map(|x| (x.clone(), Rational::zero())).collect();
    xs.iter()
        .map(|x| action.tau.iter().map(|t| (-t.d(x, 1)).eval(&origin).compact()).collect())
        .collect()
}

/// `Σ [π_e]^{ij} X*_i ⊗ X*_j` on `M`.
pub fn predicted_poisson<K: Coeff>(pi_e: &[Vec<K>], action: &ActionDescriptor) -> Bivector<K> {
    let x = fundamental_fields(action);
    let m = action.dim_m;
    let mut pi = vec![vec![Poly::zero(); m]; m];
    for (i, row) in pi_e.iter().enumerate() {
        for (j, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for k in 0..m {
                for l in 0..m {
                    pi[k][l] = &pi[k][l] + Poly::constant(c.clone()) * lift::<K>(&x[i][k]) * lift::<K>(&x[j][l]);
                }
            }
        }
    }
    let pi = pi.into_iter().map(|r| r.into_iter().map(|p| p.compact()).collect()).collect();
    Bivector { coords: action.w_vars(), pi }
}

/// `L_g^* a ⋆ L_g^* b = L_g^*(a ⋆ b)` with `g` a symbolic group element, for
/// all monomials `a, b` of degree at most `degbox`. On failure the witness
/// names the pair and a concrete `g` at which the identity breaks.
pub fn check_left_invariance<K: Coeff>(p: &dyn InvariantProduct<K>, group: &GroupDescriptor, degbox: u32) -> Check {
    let coords = p.coords();
    if coords.len() != group.dim() {
        return Check::fail(
            "left_invariance",
            0,
            format!("product has {} coordinates, group has dimension {}", coords.len(), group.dim()),
        );
    }
    let gnames = fresh("g", coords.len(), &coords);
    let g: Vec<Poly<K>> = point(&gnames);
    let basis: Vec<Poly<K>> = monomial_basis(&coords, degbox);
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    Check::over("left_invariance", &pairs, |&(i, j)| {
        let (a, b) = (&basis[i], &basis[j]);
        let lhs = p.product(&left_translate(group, &g, a, &coords), &left_translate(group, &g, b, &coords));
        let rhs = p.product(a, b).map(|ab| left_translate(group, &g, &ab, &coords));
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let diff = (l - r).compact();
                if diff.is_zero() {
                    None
                } else {
                    Some(format!("a = {a}, b = {b}, g = ({})", concrete_witness(&diff, &gnames)))
                }
            }
            (Err(e), _) | (_, Err(e)) => Some(format!("a = {a}, b = {b}: {e}")),
        }
    })
}

/// A small integer point for the `g` variables at which `diff` stays nonzero.
fn concrete_witness<K: Coeff>(diff: &Poly<K>, gnames: &[String]) -> String {
    let n = gnames.len();
    let mut candidates: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|k| (k == i) as i64).collect()).collect();
    candidates.push(vec![1; n]);
    candidates.push((1..=n as i64).collect());
    for c in &candidates {
        let at: BTreeMap<String, K> = gnames.iter().cloned().zip(c.iter().map(|&x| K::from_i64(x))).collect();
        if !diff.eval(&at).is_zero() {
            return c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        }
    }
    gnames.join(", ")
}

/// `(a ⋆ b) ⋆ c = a ⋆ (b ⋆ c)` on monomials of degree at most `degbox` each.
pub fn check_product_associativity<K: Coeff>(p: &dyn InvariantProduct<K>, degbox: u32) -> Check {
    let basis: Vec<Poly<K>> = monomial_basis(&p.coords(), degbox);
    let n = basis.len();
    let triples: Vec<(usize, usize, usize)> =
        (0..n).flat_map(|i| (0..n).flat_map(move |j| (0..n).map(move |k| (i, j, k)))).collect();
    Check::over("associativity", &triples, |&(i, j, k)| {
        let (a, b, c) = (&basis[i], &basis[j], &basis[k]);
        let l = p.product(a, b).and_then(|ab| p.product(&ab, c));
        let r = p.product(b, c).and_then(|bc| p.product(a, &bc));
        match (l, r) {
            (Ok(l), Ok(r)) if l == r => None,
            (Ok(l), Ok(r)) => Some(format!("({a}, {b}, {c}): defect {}", l - r)),
            (Err(e), _) | (_, Err(e)) => Some(format!("({a}, {b}, {c}): {e}")),
        }
    })
}

/// `u ⋆ v` at `t = 0` equals `u v` on the degree box.
pub fn check_classical_limit<K: Coeff>(p: &dyn InvariantProduct<K>, degbox: u32) -> Check {
    let basis: Vec<Poly<K>> = monomial_basis(&p.coords(), degbox);
    let pairs: Vec<(usize, usize)> = (0..basis.len()).flat_map(|i| (0..basis.len()).map(move |j| (i, j))).collect();
    Check::over("classical_limit", &pairs, |&(i, j)| {
        let (a, b) = (&basis[i], &basis[j]);
        match p.product(a, b) {
            Ok(ab) if ab.coeff_of(T, 0) == a * b => None,
            Ok(ab) => Some(format!("{a} ⋆ {b} = {ab}")),
            Err(e) => Some(e.to_string()),
        }
    })
}

/// `G = Q ⋊ S` with `Q = R^k`, `S = R^m` abelian and `S` acting on `Q` by
/// `ρ(s) = exp(Σ s_i N_i)` for commuting nilpotent `N_i`. Points are written
/// `(q, s)`, i.e. the chart `(q, s) ↦ q s`, so
/// `(q, s)(q', s') = (q + ρ(s) q', s + s')`.
#[derive(Clone, Debug)]
pub struct SplitExtension {
    pub group: GroupDescriptor,
    pub q_coords: Vec<String>,
    pub s_coords: Vec<String>,
}

impl SplitExtension {
    pub fn new(
        name: &str,
        q_coords: &[&str],
        s_coords: &[&str],
        nilpotents: &[Vec<Vec<Rational>>],
    ) -> Result<Self> {
        let (k, m) = (q_coords.len(), s_coords.len());
        if nilpotents.len() != m || nilpotents.iter().any(|n| n.len() != k || n.iter().any(|r| r.len() != k)) {
            return Err(Error::Dimension(format!("need {m} matrices of size {k}x{k}")));
        }
        let var = |p: &str, i: usize| QPoly::var(&format!("{p}{}", i + 1));
        // ρ(s) for s given in the variables `prefix(k+1)..`
        let rho = |prefix: &str, sign: i64| -> Vec<Vec<QPoly>> {
            let gen: Vec<Vec<QPoly>> = (0..k)
                .map(|r| {
                    (0..k)
                        .map(|c| {
                            (0..m)
                                .map(|i| QPoly::constant(nilpotents[i][r][c].clone()) * var(prefix, k + i))
                                .sum::<QPoly>()
                                * QPoly::constant(Rational::from_integer(sign.into()))
                        })
                        .collect()
                })
                .collect();
            let mut out: Vec<Vec<QPoly>> =
                (0..k).map(|r| (0..k).map(|c| if r == c { QPoly::one() } else { QPoly::zero() }).collect()).collect();
            let mut power = out.clone();
            for j in 1..=k {
                power = matmul(&power, &gen);
                let f = QPoly::constant(Rational::new(1.into(), factorial(j)));
                for r in 0..k {
                    for c in 0..k {
                        out[r][c] = &out[r][c] + &f * &power[r][c];
                    }
                }
            }
            out
        };
        let rx = rho("x", 1);
        let rinv = rho("x", -1);
        let mut mul = Vec::new();
        let mut inv = Vec::new();
        for r in 0..k {
            let acted: QPoly = (0..k).map(|c| &rx[r][c] * var("y", c)).sum();
            mul.push(var("x", r) + acted);
            let back: QPoly = (0..k).map(|c| &rinv[r][c] * var("x", c)).sum();
            inv.push(-back);
        }
        for i in 0..m {
            mul.push(var("x", k + i) + var("y", k + i));
            inv.push(-var("x", k + i));
        }
        let group = GroupDescriptor::new(name, mul, inv)?;
        Ok(SplitExtension {
            group,
            q_coords: q_coords.iter().map(|s| s.to_string()).collect(),
            s_coords: s_coords.iter().map(|s| s.to_string()).collect(),
        })
    }

    /// All coordinates in chart order.
    pub fn coords(&self) -> Vec<String> {
        self.q_coords.iter().chain(self.s_coords.iter()).cloned().collect()
    }

    /// `R × R²`: the only polynomial action of the 2-dimensional `S` on a
    /// line is trivial.
    pub fn r_x_r2() -> Self {
        let z = vec![Rational::zero()];
        Self::new("R x R^2", &["z1"], &["q1", "p1"], &[vec![z.clone()], vec![z]]).expect("valid group")
    }

    /// `R² ⋊ R²` with `ρ(q, p) = [[1, q], [0, 1]]`.
    pub fn r2_x_r2_unipotent() -> Self {
        let o = Rational::zero();
        let l = Rational::from_integer(1.into());
        let n1 = vec![vec![o.clone(), l], vec![o.clone(), o.clone()]];
        let n2 = vec![vec![o.clone(), o.clone()], vec![o.clone(), o]];
        Self::new("R^2 x| R^2", &["z1", "z2"], &["q1", "p1"], &[n1, n2]).expect("valid group")
    }
}

fn factorial(j: usize) -> num::BigInt {
    (1..=j).fold(num::BigInt::from(1), |a, b| a * b)
}

fn matmul(a: &[Vec<QPoly>], b: &[Vec<QPoly>]) -> Vec<Vec<QPoly>> {
    let k = a.len();
    (0..k).map(|r| (0..k).map(|c| (0..k).map(|i| &a[r][i] * &b[i][c]).sum()).collect()).collect()
}
