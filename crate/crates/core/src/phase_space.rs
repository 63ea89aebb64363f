//! Lambda-ordered quantization of `T*(G)` as an L-R smash product, the
//! closed-form product, the Weyl/Moyal oracle, and the Hopf structure of
//! phase space.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::{Monomial, Poly, Tensor, T};
use crate::hopf::{Bialgebra, DerivationBimodule, EnvelopingAlgebra, SymmetricAlgebra};
use crate::scalar::Coeff;
use crate::smash::{SmashAlgebra, SmashBialgebra, SmashKind};
use crate::udf::GroupDescriptor;
use crate::Rational;

/// Ordering parameter, configuration dimension and truncation order.
#[derive(Clone, Debug, PartialEq)]
pub struct LambdaConfig {
    pub lambda: Rational,
    pub n: usize,
    pub tcap: u32,
}

impl LambdaConfig {
    pub fn new(lambda: Rational, n: usize, tcap: u32) -> Self {
        LambdaConfig { lambda, n, tcap }
    }

    /// Values outside `[0, 1]` are accepted; the formulas stay total.
    pub fn out_of_range(&self) -> bool {
        self.lambda < Rational::from_integer(0.into()) || self.lambda > Rational::from_integer(1.into())
    }

    pub fn q_vars(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("q{i}")).collect()
    }

    pub fn p_vars(&self) -> Vec<String> {
        (1..=self.n).map(|i| format!("p{i}")).collect()
    }

    fn lambda_k<K: Coeff>(&self) -> K {
        K::from_ratio(self.lambda.numer(), self.lambda.denom())
    }

    /// `(t(λ-1), tλ)`.
    fn factors<K: Coeff>(&self) -> (Poly<K>, Poly<K>) {
        let l: K = self.lambda_k();
        (Poly::t().scale(&(l.clone() - K::one())), Poly::t().scale(&l))
    }
}

/// Polynomial functions with the additive coproduct `Δf(x, y) = f(x + y)`,
/// where `t` is doubled as well (`t ↦ t1 + t2`), counit `f(0)` at `t = 0`
/// and antipode `f(-x)` with `t ↦ -t`.
#[derive(Clone, Debug)]
pub struct AdditiveFunctions {
    pub vars: Vec<String>,
    pub tcap: Option<u32>,
}

const LEG1: &str = "__1";
const LEG2: &str = "__2";

impl AdditiveFunctions {
    fn all_vars(&self) -> Vec<String> {
        let mut v = self.vars.clone();
        v.push(T.to_string());
        v
    }
}

impl<K: Coeff> Bialgebra<K> for AdditiveFunctions {
    fn name(&self) -> String {
        format!("C({})", self.vars.join(","))
    }

    fn generators(&self) -> Vec<String> {
        self.all_vars()
    }

    fn tcap(&self) -> Option<u32> {
        self.tcap
    }

    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        (a * b).with_tcap(self.tcap)
    }

    fn coproduct(&self, a: &Poly<K>) -> Tensor<K> {
        // variable doubling: substitute v -> v__1 + v__2, then split by leg
        let all = self.all_vars();
        let doubled: BTreeMap<String, Poly<K>> = all
            .iter()
            .map(|v| (v.clone(), Poly::var(&format!("{v}{LEG1}")) + Poly::var(&format!("{v}{LEG2}"))))
            .collect();
        let expanded = a.clone().with_tcap(None).substitute(&doubled);
        let name = Bialgebra::<K>::name(self);
        let mut out = Tensor::zero(&[&name, &name]);
        let strip = |m: &Monomial, suffix: &str| {
            Monomial::new(
                m.pairs()
                    .iter()
                    .filter_map(|(v, e)| v.strip_suffix(suffix).map(|s| (s.to_string(), *e)))
                    .collect(),
            )
        };
        for (m, c) in expanded.monomials() {
            out.add_key(vec![strip(&m, LEG1), strip(&m, LEG2)], c);
        }
        match self.tcap {
            Some(cap) => out.truncate_total_t(cap),
            None => out,
        }
    }

    fn counit(&self, a: &Poly<K>) -> Poly<K> {
        let zero: BTreeMap<String, K> = self.all_vars().into_iter().map(|v| (v, K::zero())).collect();
        a.eval(&zero)
    }

    fn antipode(&self, a: &Poly<K>) -> Option<Poly<K>> {
        let neg: BTreeMap<String, Poly<K>> = self.all_vars().iter().map(|v| (v.clone(), -Poly::var(v))).collect();
        Some(a.substitute(&neg).with_tcap(self.tcap))
    }

    fn claims_cocommutative(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn scalar_t(&self) -> bool {
        false
    }
}

fn to_k<K: Coeff>(p: &Poly<Rational>) -> Poly<K> {
    p.map_coeffs(|c| K::from_ratio(c.numer(), c.denom()))
}

/// The actions `X ⇀ f = t(λ-1) X̃ f` and `f ↼ X = tλ X̄ f` by left- and
/// right-invariant fields. Without a group, `G = R^n` acts by translations and
/// `B = S(R^n)` on `p1..pn`; with a group, `B = U_t(g)` with generators
/// `p1..pn` and brackets read off the group law. The carrier is polynomials in
/// `q1..qn`; for abelian groups the additive coproduct is attached.
pub fn lr_actions<K: Coeff>(cfg: &LambdaConfig, group: Option<&GroupDescriptor>) -> Result<DerivationBimodule<K>> {
    let q = cfg.q_vars();
    let p = cfg.p_vars();
    let cap = Some(cfg.tcap);
    let abelian = group.map(|g| g.lie_algebra(&p).map(|l| l.is_abelian())).transpose()?.unwrap_or(true);
    let (left_fields, right_fields, acting): (Vec<Vec<Poly<K>>>, Vec<Vec<Poly<K>>>, Arc<dyn Bialgebra<K>>) =
        match group {
            None => {
                let unit: Vec<Vec<Poly<K>>> = (0..cfg.n)
                    .map(|i| (0..cfg.n).map(|k| if i == k { Poly::one() } else { Poly::zero() }).collect())
                    .collect();
                (unit.clone(), unit, Arc::new(SymmetricAlgebra::with_symbols(p, cap)))
            }
            Some(g) => {
                if g.dim() != cfg.n {
                    return Err(crate::Error::Dimension(format!("group of dimension {} for n = {}", g.dim(), cfg.n)));
                }
                let conv = |f: Vec<Vec<Poly<Rational>>>| f.iter().map(|r| r.iter().map(to_k).collect()).collect();
                let lie = g.lie_algebra(&p)?;
                let u: Arc<dyn Bialgebra<K>> = if lie.is_abelian() {
                    Arc::new(SymmetricAlgebra::with_symbols(p, cap))
                } else {
                    Arc::new(EnvelopingAlgebra::<K>::new(lie, cap))
                };
                (conv(g.left_invariant_fields(&q)), conv(g.right_invariant_fields(&q)), u)
            }
        };
    let (cl, cr) = cfg.factors::<K>();
    Ok(DerivationBimodule {
        name: format!("C({})", q.join(",")),
        vars: q.clone(),
        acting,
        left_fields,
        right_fields,
        left_factor: cl,
        right_factor: cr,
        tcap: cap,
        coalgebra: abelian.then(|| Arc::new(AdditiveFunctions { vars: q, tcap: cap }) as Arc<dyn Bialgebra<K>>),
        basis_with_t: true,
    })
}

/// The L-R smash algebra of phase space.
pub fn phase_space_smash<K: Coeff>(cfg: &LambdaConfig, group: Option<&GroupDescriptor>) -> Result<SmashAlgebra<K>> {
    SmashAlgebra::new(Arc::new(lr_actions::<K>(cfg, group)?), SmashKind::Lr)
}

/// Multi-indices of length `n` with entries bounded by `max`.
fn multi_indices(max: &[u32]) -> Vec<Vec<u32>> {
    let mut out = vec![vec![]];
    for &m in max {
        out = out.into_iter().flat_map(|v| (0..=m).map(move |e| [v.clone(), vec![e]].concat())).collect();
    }
    out
}

fn multi_diff<K: Coeff>(u: &Poly<K>, vars: &[String], orders: &[u32]) -> Poly<K> {
    let mut out = u.clone();
    for (v, &o) in vars.iter().zip(orders) {
        if o > 0 {
            out = out.d(v, o);
        }
    }
    out
}

/// `u *_λ v = Σ_{l,m} t^{|l|+|m|}/(l! m!) λ^{|m|} (λ-1)^{|l|}
/// ∂_q^m ∂_p^l u · ∂_q^l ∂_p^m v`.
pub fn lambda_star_direct<K: Coeff>(cfg: &LambdaConfig, u: &Poly<K>, v: &Poly<K>) -> Poly<K> {
    lambda_star_named(&cfg.lambda, cfg.tcap, &cfg.q_vars(), &cfg.p_vars(), u, v)
}

/// The closed-form lambda-ordered product with explicit position and momentum
/// variable names; all other variables are parameters.
pub fn lambda_star_named<K: Coeff>(
    lambda: &Rational,
    cap: u32,
    q: &[String],
    p: &[String],
    u: &Poly<K>,
    v: &Poly<K>,
) -> Poly<K> {
    let lam: K = K::from_ratio(lambda.numer(), lambda.denom());
    let lm1 = lam.clone() - K::one();
    let n = q.len();
    // the sum is finite: orders beyond the degrees kill a factor
    let bound = |a: &Poly<K>, b: &Poly<K>, va: &String, vb: &String| a.degree_in(va).min(b.degree_in(vb));
    let lmax: Vec<u32> = (0..n).map(|i| bound(u, v, &p[i], &q[i]).min(cap)).collect();
    let mmax: Vec<u32> = (0..n).map(|i| bound(u, v, &q[i], &p[i]).min(cap)).collect();
    let mut acc = Poly::zero().with_tcap(Some(cap));
    for l in multi_indices(&lmax) {
        let ll: u32 = l.iter().sum();
        if ll > cap {
            continue;
        }
        for m in multi_indices(&mmax) {
            let mm: u32 = m.iter().sum();
            if ll + mm > cap {
                continue;
            }
            let mut coeff = lam.pow_u(mm) * lm1.pow_u(ll);
            for &e in l.iter().chain(m.iter()) {
                coeff = coeff / K::factorial(e);
            }
            if coeff.is_zero() {
                continue;
            }
            let du = multi_diff(&multi_diff(u, q, &m), p, &l);
            let dv = multi_diff(&multi_diff(v, q, &l), p, &m);
            if du.is_zero() || dv.is_zero() {
                continue;
            }
            let tpow = Poly::term(coeff, &Monomial::new(vec![(T.to_string(), ll + mm)]));
            acc = acc + (tpow * du * dv).with_tcap(Some(cap));
        }
    }
    acc
}

/// `u *_λ v` computed as the L-R smash product on `C ⊗ S(R^n)` under
/// `q^a p^r ↔ q^a ⊗ p^r`.
pub fn lambda_star_smash<K: Coeff>(cfg: &LambdaConfig, u: &Poly<K>, v: &Poly<K>) -> Poly<K> {
    let s = phase_space_smash::<K>(cfg, None).expect("abelian phase space is well formed");
    lambda_star_on(&s, u, v)
}

/// Product of phase-space functions in a given smash algebra.
pub fn lambda_star_on<K: Coeff>(s: &SmashAlgebra<K>, u: &Poly<K>, v: &Poly<K>) -> Poly<K> {
    let bvars = s.b().generators();
    let split = |w: &Poly<K>| {
        let (cn, bn) = s.carrier_names();
        let mut out = Tensor::zero(&[&cn, &bn]);
        for (bm, rest) in w.split_by(&bvars) {
            out.add_pure(K::one(), &[rest, Poly::term(K::one(), &bm)]);
        }
        out
    };
    let prod = s.mul(&split(u), &split(v)).expect("carriers agree");
    prod.flatten(|a, b| a * b).with_tcap(s.tcap())
}

/// Weyl-ordered product `Σ_k (t/2)^k / k! P^k(u, v)` with
/// `P = Σ_i ∂_{q_i} ⊗ ∂_{p_i} - ∂_{p_i} ⊗ ∂_{q_i}`.
pub fn moyal_star<K: Coeff>(n: usize, tcap: u32, u: &Poly<K>, v: &Poly<K>) -> Poly<K> {
    let q: Vec<String> = (1..=n).map(|i| format!("q{i}")).collect();
    let p: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
    let mut pairs: Vec<(K, Poly<K>, Poly<K>)> = vec![(K::one(), u.clone(), v.clone())];
    let mut acc = (u * v).with_tcap(Some(tcap));
    let half = K::one() / K::from_i64(2);
    for k in 1..=tcap {
        let mut next = Vec::new();
        for (c, a, b) in &pairs {
            for i in 0..n {
                let (aq, bp) = (a.d(&q[i], 1), b.d(&p[i], 1));
                if !aq.is_zero() && !bp.is_zero() {
                    next.push((c.clone(), aq, bp));
                }
                let (ap, bq) = (a.d(&p[i], 1), b.d(&q[i], 1));
                if !ap.is_zero() && !bq.is_zero() {
                    next.push((-c.clone(), ap, bq));
                }
            }
        }
        pairs = next;
        if pairs.is_empty() {
            break;
        }
        let scale = half.pow_u(k) / K::factorial(k);
        let tk = Poly::term(scale, &Monomial::new(vec![(T.to_string(), k)]));
        let mut level = Poly::zero();
        for (c, a, b) in &pairs {
            level = level + (a * b).scale(c);
        }
        acc = acc + (tk * level).with_tcap(Some(tcap));
    }
    acc
}

/// `{u, v} = Σ_i ∂_{q_i}u ∂_{p_i}v - ∂_{p_i}u ∂_{q_i}v`.
pub fn poisson_bracket<K: Coeff>(n: usize, u: &Poly<K>, v: &Poly<K>) -> Poly<K> {
    let mut acc = Poly::zero();
    for i in 1..=n {
        let (q, p) = (format!("q{i}"), format!("p{i}"));
        acc = acc + u.d(&q, 1) * v.d(&p, 1) - u.d(&p, 1) * v.d(&q, 1);
    }
    acc
}

/// Phase space `C^∞(R^n)[[t]] ♮ S(R^n)` with the bialgebra structure built
/// from the additive coproduct on both factors.
pub fn phase_space_hopf<K: Coeff>(cfg: &LambdaConfig) -> Result<SmashBialgebra<K>> {
    SmashBialgebra::new(phase_space_smash(cfg, None)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;
    use crate::hopf::{check_hopf_axioms, check_module_structures, BimoduleAlgebra};
    use crate::scalar::rat;
    use crate::QPoly;

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    fn cfg(l: Rational, n: usize) -> LambdaConfig {
        LambdaConfig::new(l, n, 4)
    }

    #[test]
    fn action_examples() {
        let c = lr_actions::<Rational>(&cfg(rat(1, 3), 1), None).unwrap();
        assert_eq!(c.left_act(&p("p1"), &p("q1")), p("-2/3*t"));
        assert!(c.left_act(&p("p1"), &p("1")).is_zero());
        let h = GroupDescriptor::heisenberg();
        let c = lr_actions::<Rational>(&cfg(rat(1, 3), 3), Some(&h)).unwrap();
        assert_eq!(c.left_act(&p("p1"), &p("q3")), p("-2/3*t * (-1/2*q2)"));
        assert_eq!(c.right_act(&p("q3"), &p("p1")), p("1/3*t * (1/2*q2)"));
    }

    #[test]
    fn direct_examples() {
        let c = cfg(rat(1, 3), 1);
        assert_eq!(lambda_star_direct(&c, &p("q1"), &p("p1")), p("q1*p1 + 1/3*t"));
        assert_eq!(lambda_star_direct(&c, &p("p1"), &p("q1")), p("q1*p1 - 2/3*t"));
        let half = cfg(rat(1, 2), 1);
        assert_eq!(lambda_star_direct(&half, &p("q1^2"), &p("p1^2")), moyal_star(1, 4, &p("q1^2"), &p("p1^2")));
        assert_eq!(lambda_star_direct(&half, &p("q1^2"), &p("p1^2")), p("q1^2*p1^2 + 2*t*q1*p1 + 1/2*t^2"));
    }

    #[test]
    fn smash_matches_direct_on_small_box() {
        for l in [rat(0, 1), rat(1, 2), rat(1, 1)] {
            let c = cfg(l, 1);
            for u in ["q1^2*p1", "p1^2", "q1", "3", "q1*p1 + t"] {
                for v in ["p1^2*q1", "q1^2", "p1", "2*q1*p1"] {
                    assert_eq!(
                        lambda_star_smash(&c, &p(u), &p(v)),
                        lambda_star_direct(&c, &p(u), &p(v)),
                        "{u} * {v}"
                    );
                }
            }
        }
        let c = cfg(rat(1, 3), 1);
        assert_eq!(lambda_star_smash(&c, &p("5"), &p("q1*p1")), p("5*q1*p1"));
    }

    #[test]
    fn poisson_examples() {
        assert_eq!(poisson_bracket(1, &p("q1"), &p("p1")), p("1"));
        assert_eq!(poisson_bracket(1, &p("q1^2"), &p("p1")), p("2*q1"));
    }

    #[test]
    fn bimodule_laws_abelian() {
        let c = lr_actions::<Rational>(&cfg(rat(1, 3), 2), None).unwrap();
        let r = check_module_structures(&c, 2);
        assert!(r.all_passed(), "{:?}", r.failures());
    }

    #[test]
    fn bimodule_laws_heisenberg_need_lambda_one() {
        let h = GroupDescriptor::heisenberg();
        let c = lr_actions::<Rational>(&LambdaConfig::new(rat(1, 1), 3, 3), Some(&h)).unwrap();
        let r = check_module_structures(&c, 2);
        assert!(r.all_passed(), "{:?}", r.failures());
        let c = lr_actions::<Rational>(&LambdaConfig::new(rat(1, 2), 3, 3), Some(&h)).unwrap();
        let r = check_module_structures(&c, 2);
        assert!(!r.get("left_module").unwrap().passed);
        assert!(!r.get("right_module").unwrap().passed);
    }

    #[test]
    fn additive_coproduct_doubles_t() {
        let a = AdditiveFunctions { vars: vec!["q1".into()], tcap: Some(4) };
        let d = Bialgebra::<Rational>::coproduct(&a, &p("t*q1"));
        let n = Bialgebra::<Rational>::name(&a);
        let mut e = Tensor::zero(&[&n, &n]);
        for (l, r) in [("t*q1", "1"), ("t", "q1"), ("q1", "t"), ("1", "t*q1")] {
            e.add_pure(rat(1, 1), &[p(l), p(r)]);
        }
        assert_eq!(d, e);
    }

    #[test]
    fn phase_space_hopf_small() {
        let h = phase_space_hopf::<Rational>(&LambdaConfig::new(rat(1, 3), 1, 2)).unwrap();
        let r = check_hopf_axioms(&h, 2);
        assert!(r.all_passed(), "{:?}", r.failures());
        assert_eq!(h.counit(&p("1")), p("1"));
    }
}
