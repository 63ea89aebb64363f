use num::{Complex, Signed};
use num_traits::{One, Zero};

use super::linalg::{
    commutator, coords_in, eigenspace, identity, intersect, inverse, is_nilpotent, is_zero, lift, matmul, matvec,
    rank, sub, Mat,
};
use super::triple::{signature, ElementaryInstance, Signature, TripleFlags};
use super::upoly::UPoly;
use crate::error::{Error, Result};
use crate::report::{Check, Report};
use crate::scalar::Coeff;
use crate::{GaussianRational, Rational};

type C = GaussianRational;

fn gi(re: Rational, im: Rational) -> C {
    Complex::new(re, im)
}

/// `a = S + N` with `S` semisimple, `N` nilpotent and `[S, N] = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct JordanChevalley {
    pub semisimple: Mat<Rational>,
    pub nilpotent: Mat<Rational>,
}

/// Newton iteration `S ← S - p(S) p'(S)⁻¹` on the squarefree part `p` of
/// the characteristic polynomial; exact over Q.
pub fn jordan_chevalley(a: &Mat<Rational>) -> JordanChevalley {
    let n = a.len();
    let p = UPoly::charpoly(a).squarefree();
    let dp = p.derivative();
    let mut s = a.clone();
    for _ in 0..=n + 1 {
        let ps = p.eval_matrix(&s);
        if is_zero(&ps) {
            break;
        }
        let inv = inverse(&dp.eval_matrix(&s)).expect("p' is invertible at a root of a squarefree p");
        s = sub(&s, &matmul(&ps, &inv));
    }
    JordanChevalley { nilpotent: sub(a, &s), semisimple: s }
}

fn rational_sqrt(x: &Rational) -> Option<Rational> {
    if x.is_negative() {
        return None;
    }
    let (n, d) = (num::integer::Roots::sqrt(x.numer()), num::integer::Roots::sqrt(x.denom()));
    (&n * &n == *x.numer() && &d * &d == *x.denom()).then(|| Rational::new(n, d))
}

/// Distinct eigenvalues, restricted to `Q ∪ iQ`.
pub fn eigenvalues(a: &Mat<Rational>) -> Result<Vec<C>> {
    let mut p = UPoly::charpoly(a);
    let mut out = Vec::new();
    for r in p.rational_roots() {
        let lin = UPoly::new(vec![-r.clone(), Rational::one()]);
        while p.eval(&r).is_zero() {
            p = p.divrem(&lin).0;
        }
        out.push(gi(r, Rational::zero()));
    }
    if p.degree().unwrap_or(0) == 0 {
        return Ok(out);
    }
    // what is left must be h(x²) with h having negative rational-square roots
    if p.0.iter().enumerate().any(|(i, c)| i % 2 == 1 && !c.is_zero()) {
        return Err(Error::Unsupported("eigenvalues outside Q(i) (odd irreducible factor)".into()));
    }
    let mut h = UPoly::new(p.0.iter().step_by(2).cloned().collect());
    for y in h.rational_roots() {
        let beta = rational_sqrt(&-y.clone())
            .ok_or_else(|| Error::Unsupported(format!("eigenvalue ±sqrt({y}) is not in Q(i)")))?;
        let lin = UPoly::new(vec![-y.clone(), Rational::one()]);
        while h.eval(&y).is_zero() {
            h = h.divrem(&lin).0;
        }
        out.push(gi(Rational::zero(), beta.clone()));
        out.push(gi(Rational::zero(), -beta));
    }
    if h.degree().unwrap_or(0) > 0 {
        return Err(Error::Unsupported("eigenvalues outside Q(i)".into()));
    }
    Ok(out)
}

/// Weight space decomposition of `b^c` under `a_S`.
#[derive(Clone, Debug)]
pub struct WeightData {
    /// `α(a_j)` for each weight `α`.
    pub weights: Vec<Vec<C>>,
    /// Basis of each `b_α`, in coordinates of `b^c`.
    pub spaces: Vec<Vec<Vec<C>>>,
    pub jordan: Vec<JordanChevalley>,
    /// Indices into `weights` of the chosen positive system.
    pub positive: Vec<usize>,
    pub report: Report,
}

impl WeightData {
    pub fn index_of(&self, w: &[C]) -> Option<usize> {
        self.weights.iter().position(|x| x.as_slice() == w)
    }

    pub fn has_zero_weight(&self) -> bool {
        self.weights.iter().any(|w| w.iter().all(|c| c.is_zero()))
    }

    pub fn nonzero_count(&self) -> usize {
        self.weights.iter().filter(|w| !w.iter().all(|c| c.is_zero())).count()
    }

    /// Weights as strings, e.g. `(1, 0)` or `(i, 1)`.
    pub fn describe(&self, i: usize) -> String {
        let parts: Vec<String> = self.weights[i].iter().map(describe_c).collect();
        format!("({})", parts.join(", "))
    }
}

pub fn describe_c(c: &C) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) if c.im == Rational::one() => "i".into(),
        (true, false) if c.im == -Rational::one() => "-i".into(),
        (true, false) => format!("{}i", c.im),
        _ => format!("{}{}{}i", c.re, if c.im.is_negative() { "" } else { "+" }, c.im),
    }
}

fn neg(w: &[C]) -> Vec<C> {
    w.iter().map(|c| -c.clone()).collect()
}

/// Positive when the first nonzero entry of `(Re α(a_1), …, Re α(a_m), Im α(a_1), …)` is positive.
pub fn lexicographic_positive(weights: &[Vec<C>]) -> Vec<usize> {
    (0..weights.len())
        .filter(|&i| {
            let w = &weights[i];
            w.iter()
                .map(|c| c.re.clone())
                .chain(w.iter().map(|c| c.im.clone()))
                .find(|x| !x.is_zero())
                .is_some_and(|x| x.is_positive())
        })
        .collect()
}

/// `Φ = {0} ∪ Φ⁺ ∪ (-Φ⁺)`, disjointly.
pub fn check_positive_system(weights: &[Vec<C>], positive: &[usize]) -> Result<()> {
    for &i in positive {
        if i >= weights.len() {
            return Err(Error::InvalidPositiveSystem(format!("index {i} is not a weight")));
        }
        if weights[i].iter().all(|c| c.is_zero()) {
            return Err(Error::InvalidPositiveSystem("0 cannot be positive".into()));
        }
    }
    for (i, w) in weights.iter().enumerate() {
        if w.iter().all(|c| c.is_zero()) {
            continue;
        }
        let j = weights.iter().position(|x| *x == neg(w));
        let pos_i = positive.contains(&i);
        let pos_j = j.is_some_and(|j| positive.contains(&j));
        if pos_i == pos_j {
            return Err(Error::InvalidPositiveSystem(format!(
                "exactly one of ±α must be positive (weight #{i})"
            )));
        }
    }
    Ok(())
}

/// Exact Jordan–Chevalley decomposition of each `ρ(a_j)`, simultaneous
/// eigenspaces of the semisimple parts over `Q(i)`, the `σ`-pairing
/// `σ b_α = b_{-α}` and, under the flags, `b_0 = 0`.
pub fn weight_decomposition(inst: &ElementaryInstance, flags: TripleFlags) -> Result<WeightData> {
    let n = inst.b_dim();
    for (i, x) in inst.rho.iter().enumerate() {
        for y in &inst.rho[i + 1..] {
            if !is_zero(&commutator(x, y)) {
                return Err(Error::Invalid("ρ(a) is not a commuting family".into()));
            }
        }
    }
    let mut report = Report::new();
    let jordan: Vec<JordanChevalley> = inst.rho.iter().map(jordan_chevalley).collect();
    let jc_ok = inst.rho.iter().zip(&jordan).all(|(a, jc)| {
        let p = UPoly::charpoly(&jc.semisimple).squarefree();
        super::linalg::add(&jc.semisimple, &jc.nilpotent) == *a
            && is_zero(&commutator(&jc.semisimple, &jc.nilpotent))
            && is_nilpotent(&jc.nilpotent)
            && is_zero(&p.eval_matrix(&jc.semisimple))
    });
    report.push(Check::from_bool("jordan_chevalley", jc_ok, || "S + N = a with [S,N] = 0 failed".into()));

    let mut parts: Vec<(Vec<C>, Vec<Vec<C>>)> = vec![(vec![], identity::<C>(n))];
    for jc in &jordan {
        let s: Mat<C> = lift(&jc.semisimple);
        let evs = eigenvalues(&jc.semisimple)?;
        let mut next = Vec::new();
        for (w, space) in &parts {
            for ev in &evs {
                let e = intersect(space, &eigenspace(&s, ev));
                if !e.is_empty() {
                    let mut w2 = w.clone();
                    w2.push(ev.clone());
                    next.push((w2, e));
                }
            }
        }
        parts = next;
    }
    if inst.rho.is_empty() {
        parts = vec![(vec![], identity::<C>(n))];
    }
    let (weights, spaces): (Vec<_>, Vec<_>) = parts.into_iter().unzip();
    let total: usize = spaces.iter().map(|s: &Vec<Vec<C>>| s.len()).sum();
    report.push(Check::from_bool("weight_spaces_span", total == n, || format!("Σ dim b_α = {total} ≠ {n}")));

    let sigma: Mat<C> = lift(&inst.sigma_b);
    let mut pairing = Ok(());
    for (i, w) in weights.iter().enumerate() {
        let Some(j) = weights.iter().position(|x| *x == neg(w)) else {
            pairing = Err(format!("-α missing for α = {}", i));
            break;
        };
        let ok = spaces[i].len() == spaces[j].len()
            && spaces[i].iter().all(|v| super::linalg::in_span(&spaces[j], &matvec(&sigma, v)));
        if !ok {
            pairing = Err(format!("σ b_α ≠ b_-α for weight #{i}"));
            break;
        }
    }
    report.push(match pairing {
        Ok(()) => Check::pass("sigma_pairing", weights.len() as u64),
        Err(w) => Check::fail("sigma_pairing", weights.len() as u64, w),
    });
    let positive = lexicographic_positive(&weights);
    let data = WeightData { weights, spaces, jordan, positive, report };
    let mut data = data;
    if data.nonzero_count() == 0 {
        data.report.note("Φ = {0}: flat or decomposable");
    }
    if flags.set() {
        let zero = data.has_zero_weight();
        data.report.push(Check::from_bool("b0_vanishes", !zero, || "0 ∈ Φ for an instance flagged indecomposable and non-flat".into()));
    }
    Ok(data)
}

/// Complex symplectic Lie algebra `s^c = a^c ⋉ b⁺`; basis `A1..Am` then a
/// basis of `b⁺`.
#[derive(Clone, Debug)]
pub struct ComplexSymplecticLieAlgebra {
    pub symbols: Vec<String>,
    pub c: Vec<Vec<Vec<C>>>,
    pub omega: Mat<C>,
    pub report: Report,
}

impl ComplexSymplecticLieAlgebra {
    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn signature(&self) -> Signature {
        signature(&self.c, &self.omega)
    }
}

/// `s^c = a^c ⋉ b⁺` with `Ω|_{s^c}`; `positive` defaults to the stored
/// (lexicographic) choice.
pub fn build_symplectic_lie_algebra(
    inst: &ElementaryInstance,
    w: &WeightData,
    positive: Option<&[usize]>,
) -> Result<ComplexSymplecticLieAlgebra> {
    let pos: Vec<usize> = positive.map(|p| p.to_vec()).unwrap_or_else(|| w.positive.clone());
    if w.nonzero_count() == 0 {
        return Err(Error::InvalidPositiveSystem("no nonzero weights (flat input)".into()));
    }
    check_positive_system(&w.weights, &pos)?;
    let bplus: Vec<Vec<C>> = pos.iter().flat_map(|&i| w.spaces[i].clone()).collect();
    let (m, k) = (inst.a_dim(), bplus.len());
    let n = m + k;
    let mut symbols: Vec<String> = (1..=m).map(|i| format!("A{i}")).collect();
    symbols.extend((1..=k).map(|i| format!("X{i}")));
    let mut c = vec![vec![vec![C::zero(); n]; n]; n];
    for i in 0..m {
        let r: Mat<C> = lift(&inst.rho[i]);
        for (s, x) in bplus.iter().enumerate() {
            let img = coords_in(&bplus, &matvec(&r, x))
                .ok_or_else(|| Error::Invalid("b⁺ is not stable under ρ(a)".into()))?;
            for (t, v) in img.into_iter().enumerate() {
                c[i][m + s][m + t] = v.clone();
                c[m + s][i][m + t] = -v;
            }
        }
    }
    let mut omega = vec![vec![C::zero(); n]; n];
    for i in 0..m {
        for (s, x) in bplus.iter().enumerate() {
            let v: C = inst.omega_ab(i, x);
            omega[i][m + s] = v.clone();
            omega[m + s][i] = -v;
        }
    }
    let mut report = Report::new();
    report.push(Check::pass("positive_system", w.weights.len() as u64));
    // p(X) = ½(X - σX) : b⁺ → l^c
    let sigma: Mat<C> = lift(&inst.sigma_b);
    let proj: Vec<Vec<C>> =
        bplus.iter().map(|x| x.iter().zip(matvec(&sigma, x)).map(|(a, b)| a.clone() - b).collect()).collect();
    let proj_rank = if proj.is_empty() { 0 } else { rank(&proj) };
    report.push(Check::from_bool("projection_isomorphism", proj_rank == k && 2 * k == inst.b_dim(), || {
        format!("rank p|b⁺ = {proj_rank}, dim b⁺ = {k}, dim b = {}", inst.b_dim())
    }));
    let closed = cocycle_defect(&c, &omega);
    report.push(Check::from_bool("omega_closed", closed.is_none(), || format!("{closed:?}")));
    let r = rank(&omega);
    report.push(Check::from_bool("omega_nondegenerate", r == n, || format!("rank Ω|s = {r} < {n}")));
    if r != n {
        return Err(Error::Degenerate(format!("Ω restricted to s^c has rank {r} < {n}; b_0 ≠ 0 upstream?")));
    }
    Ok(ComplexSymplecticLieAlgebra { symbols, c, omega, report })
}

fn cocycle_defect<K: Coeff>(c: &[Vec<Vec<K>>], omega: &Mat<K>) -> Option<(usize, usize, usize)> {
    let n = c.len();
    let om = |x: &[K], z: usize| -> K { (0..n).fold(K::zero(), |a, k| a + x[k].clone() * omega[k][z].clone()) };
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let s = om(&c[i][j], k) + om(&c[j][k], i) + om(&c[k][i], j);
                if !s.is_zero() {
                    return Some((i, j, k));
                }
            }
        }
    }
    None
}

/// Mirror of `Φ⁺`.
pub fn opposite_positive(w: &WeightData) -> Vec<usize> {
    w.positive
        .iter()
        .filter_map(|&i| w.index_of(&neg(&w.weights[i])))
        .collect()
}
