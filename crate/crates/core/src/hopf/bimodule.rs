use std::sync::Arc;

use super::bialgebra::{monomial_basis, Bialgebra};
use crate::exactalg::{Monomial, Poly, Tensor, T};
use crate::report::{Check, Report};
use crate::scalar::Coeff;

/// A commutative polynomial algebra `C` carrying compatible left and right
/// actions of a bialgebra `B`.
pub trait BimoduleAlgebra<K: Coeff>: Send + Sync {
    fn name(&self) -> String;

    fn acting(&self) -> &dyn Bialgebra<K>;

    /// Carrier variables, excluding `t`.
    fn vars(&self) -> Vec<String>;

    fn tcap(&self) -> Option<u32>;

    fn mul(&self, f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
        (f * g).with_tcap(self.tcap())
    }

    fn unit(&self) -> Poly<K> {
        Poly::one().with_tcap(self.tcap())
    }

    /// `a ⇀ f`.
    fn left_act(&self, a: &Poly<K>, f: &Poly<K>) -> Poly<K>;

    /// `f ↼ a`.
    fn right_act(&self, f: &Poly<K>, a: &Poly<K>) -> Poly<K>;

    /// Bialgebra structure on the carrier itself, when present.
    fn coalgebra(&self) -> Option<&dyn Bialgebra<K>> {
        None
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn basis(&self, maxdeg: u32) -> Vec<Poly<K>> {
        monomial_basis(&self.vars(), maxdeg)
    }
}

/// Actions of `B` on polynomials by vector fields: generator `X_i` acts on
/// the left by `c_L * L_i` and on the right by `c_R * R_i`.
///
/// A word `X_{w1} ... X_{wk}` acts on the left by applying its rightmost
/// letter first, and on the right by applying its leftmost letter first,
/// so that both are module structures whenever the letter operators
/// satisfy the defining relations of `B`.
#[derive(Clone)]
pub struct DerivationBimodule<K: Coeff> {
    pub name: String,
    pub vars: Vec<String>,
    pub acting: Arc<dyn Bialgebra<K>>,
    /// `left_fields[i][k]` is the `∂/∂vars[k]` coefficient of `L_i`.
    pub left_fields: Vec<Vec<Poly<K>>>,
    pub right_fields: Vec<Vec<Poly<K>>>,
    pub left_factor: Poly<K>,
    pub right_factor: Poly<K>,
    pub tcap: Option<u32>,
    pub coalgebra: Option<Arc<dyn Bialgebra<K>>>,
    /// Include powers of `t` in the spanning set used by checkers.
    pub basis_with_t: bool,
}

impl<K: Coeff> DerivationBimodule<K> {
    fn apply_field(&self, field: &[Poly<K>], f: &Poly<K>) -> Poly<K> {
        let mut acc = Poly::zero().with_tcap(self.tcap);
        for (k, v) in self.vars.iter().enumerate() {
            if field[k].is_zero() {
                continue;
            }
            acc = acc + &field[k] * &f.d(v, 1);
        }
        acc.with_tcap(self.tcap)
    }

    fn word(&self, m: &Monomial) -> (u32, Vec<usize>) {
        let gens = self.acting.generators();
        let mut w = Vec::new();
        for (i, s) in gens.iter().enumerate() {
            for _ in 0..m.exponent(s) {
                w.push(i);
            }
        }
        (m.exponent(T), w)
    }

    fn act(&self, a: &Poly<K>, f: &Poly<K>, left: bool) -> Poly<K> {
        let mut acc = Poly::zero().with_tcap(self.tcap);
        for (m, c) in a.monomials() {
            let (tp, mut w) = self.word(&m);
            if left {
                w.reverse();
            }
            let mut g = f.clone();
            for i in w {
                if g.is_zero() {
                    break;
                }
                g = if left {
                    &self.left_factor * &self.apply_field(&self.left_fields[i], &g)
                } else {
                    &self.right_factor * &self.apply_field(&self.right_fields[i], &g)
                }
                .with_tcap(self.tcap);
            }
            let scalar = Poly::term(c, &Monomial::new(vec![(T.to_string(), tp)]));
            acc = acc + (scalar * g).with_tcap(self.tcap);
        }
        acc
    }
}

impl<K: Coeff> BimoduleAlgebra<K> for DerivationBimodule<K> {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn acting(&self) -> &dyn Bialgebra<K> {
        self.acting.as_ref()
    }

    fn vars(&self) -> Vec<String> {
        self.vars.clone()
    }

    fn tcap(&self) -> Option<u32> {
        self.tcap
    }

    fn left_act(&self, a: &Poly<K>, f: &Poly<K>) -> Poly<K> {
        self.act(a, f, true)
    }

    fn right_act(&self, f: &Poly<K>, a: &Poly<K>) -> Poly<K> {
        self.act(a, f, false)
    }

    fn coalgebra(&self) -> Option<&dyn Bialgebra<K>> {
        self.coalgebra.as_deref()
    }

    fn basis(&self, maxdeg: u32) -> Vec<Poly<K>> {
        let mut vars = self.vars.clone();
        if self.basis_with_t {
            vars.push(T.to_string());
        }
        monomial_basis(&vars, maxdeg)
    }
}

/// Replaces the right action by `f ↼ b = ε(b) f`.
pub struct TrivialRight<C>(pub C);

impl<K: Coeff, C: BimoduleAlgebra<K>> BimoduleAlgebra<K> for TrivialRight<C> {
    fn name(&self) -> String {
        self.0.name()
    }
    fn acting(&self) -> &dyn Bialgebra<K> {
        self.0.acting()
    }
    fn vars(&self) -> Vec<String> {
        self.0.vars()
    }
    fn tcap(&self) -> Option<u32> {
        self.0.tcap()
    }
    fn left_act(&self, a: &Poly<K>, f: &Poly<K>) -> Poly<K> {
        self.0.left_act(a, f)
    }
    fn right_act(&self, f: &Poly<K>, a: &Poly<K>) -> Poly<K> {
        (self.0.acting().counit(a) * f.clone()).with_tcap(self.tcap())
    }
    fn coalgebra(&self) -> Option<&dyn Bialgebra<K>> {
        self.0.coalgebra()
    }
    fn basis(&self, maxdeg: u32) -> Vec<Poly<K>> {
        self.0.basis(maxdeg)
    }
}

/// Left action applied to one factor of each monomial only,
/// `a ⇀ (x·g) := (a ⇀ x)·g`, which breaks the Leibniz rule; a negative control.
pub struct BrokenLeibniz<C>(pub C);

impl<K: Coeff, C: BimoduleAlgebra<K>> BimoduleAlgebra<K> for BrokenLeibniz<C> {
    fn name(&self) -> String {
        self.0.name()
    }
    fn acting(&self) -> &dyn Bialgebra<K> {
        self.0.acting()
    }
    fn vars(&self) -> Vec<String> {
        self.0.vars()
    }
    fn tcap(&self) -> Option<u32> {
        self.0.tcap()
    }
    fn left_act(&self, a: &Poly<K>, f: &Poly<K>) -> Poly<K> {
        let mut acc = Poly::zero();
        for (m, c) in f.monomials() {
            let Some((v, _)) = m.pairs().iter().find(|(v, _)| v != T).cloned() else {
                acc = acc + self.0.left_act(a, &Poly::term(c, &m));
                continue;
            };
            let head = Poly::var(&v);
            let rest = Poly::term(c, &m.without(&v).mul(&Monomial::new(vec![(v.clone(), m.exponent(&v) - 1)])));
            acc = acc + self.0.left_act(a, &head) * rest;
        }
        acc.with_tcap(self.tcap())
    }
    fn right_act(&self, f: &Poly<K>, a: &Poly<K>) -> Poly<K> {
        self.0.right_act(f, a)
    }
    fn basis(&self, maxdeg: u32) -> Vec<Poly<K>> {
        self.0.basis(maxdeg)
    }
}

fn b_basis<K: Coeff>(b: &dyn Bialgebra<K>, maxdeg: u32) -> Vec<Poly<K>> {
    b.basis(maxdeg)
}

/// Verifies the module, module-algebra, bimodule and (when `C` has a
/// coproduct) module-coalgebra laws on monomials of degree at most `maxdeg`.
pub fn check_module_structures<K: Coeff, C: BimoduleAlgebra<K> + ?Sized>(c: &C, maxdeg: u32) -> Report {
    let b = c.acting();
    let cap = c.tcap();
    let bb_owned = b_basis(b, maxdeg);
    let cb_owned = c.basis(maxdeg);
    let (bb, cb) = (&bb_owned, &cb_owned);
    let mut r = Report::new();
    let tr = |p: Poly<K>| p.with_tcap(cap);

    let abf: Vec<(&Poly<K>, &Poly<K>, &Poly<K>)> =
        bb.iter().flat_map(|a| bb.iter().flat_map(move |x| cb.iter().map(move |f| (a, x, f)))).collect();
    let afg: Vec<(&Poly<K>, &Poly<K>, &Poly<K>)> =
        bb.iter().flat_map(|a| cb.iter().flat_map(move |f| cb.iter().map(move |g| (a, f, g)))).collect();
    let af: Vec<(&Poly<K>, &Poly<K>)> = bb.iter().flat_map(|a| cb.iter().map(move |f| (a, f))).collect();

    r.push(Check::over("left_unit", cb, |f| {
        let v = c.left_act(&b.unit(), f);
        (v != tr((*f).clone())).then(|| format!("1 ⇀ {f} = {v}"))
    }));
    r.push(Check::over("right_unit", cb, |f| {
        let v = c.right_act(f, &b.unit());
        (v != tr((*f).clone())).then(|| format!("{f} ↼ 1 = {v}"))
    }));
    r.push(Check::over("left_module", &abf, |(a, x, f)| {
        let lhs = c.left_act(&b.mul(a, x), f);
        let rhs = c.left_act(a, &c.left_act(x, f));
        (lhs != rhs).then(|| format!("a = {a}, b = {x}, f = {f}: (ab)⇀f = {lhs}, a⇀(b⇀f) = {rhs}"))
    }));
    r.push(Check::over("right_module", &abf, |(a, x, f)| {
        let lhs = c.right_act(f, &b.mul(a, x));
        let rhs = c.right_act(&c.right_act(f, a), x);
        (lhs != rhs).then(|| format!("a = {a}, b = {x}, f = {f}: f↼(ab) = {lhs}, (f↼a)↼b = {rhs}"))
    }));
    r.push(Check::over("bimodule_compatibility", &abf, |(a, x, f)| {
        let lhs = c.right_act(&c.left_act(a, f), x);
        let rhs = c.left_act(a, &c.right_act(f, x));
        (lhs != rhs).then(|| format!("a = {a}, b = {x}, f = {f}: (a⇀f)↼b = {lhs}, a⇀(f↼b) = {rhs}"))
    }));

    let sweedler = |a: &Poly<K>| -> Vec<(K, Poly<K>, Poly<K>)> {
        b.canon(&b.coproduct(a))
            .terms()
            .map(|(k, x)| {
                let legs = Tensor::<K>::key_legs(k);
                (x.clone(), legs[0].clone(), legs[1].clone())
            })
            .collect()
    };
    r.push(Check::over("left_module_algebra", &afg, |(a, f, g)| {
        let lhs = c.left_act(a, &c.mul(f, g));
        let mut rhs = Poly::zero();
        for (k, a1, a2) in sweedler(a) {
            rhs = rhs + c.mul(&c.left_act(&a1, f), &c.left_act(&a2, g)).scale(&k);
        }
        let rhs = tr(rhs);
        (lhs != rhs).then(|| format!("a = {a}, f = {f}, g = {g}: a⇀(fg) = {lhs}, Σ(a1⇀f)(a2⇀g) = {rhs}"))
    }));
    r.push(Check::over("right_module_algebra", &afg, |(a, f, g)| {
        let lhs = c.right_act(&c.mul(f, g), a);
        let mut rhs = Poly::zero();
        for (k, a1, a2) in sweedler(a) {
            rhs = rhs + c.mul(&c.right_act(f, &a1), &c.right_act(g, &a2)).scale(&k);
        }
        let rhs = tr(rhs);
        (lhs != rhs).then(|| format!("a = {a}, f = {f}, g = {g}: (fg)↼a = {lhs}, Σ(f↼a1)(g↼a2) = {rhs}"))
    }));
    r.push(Check::over("unit_module_algebra", bb, |a| {
        let e = tr(b.counit(a) * c.unit());
        let l = c.left_act(a, &c.unit());
        let rr = c.right_act(&c.unit(), a);
        (l != e || rr != e).then(|| format!("a = {a}: a⇀1 = {l}, 1↼a = {rr}, ε(a) = {e}"))
    }));

    if let Some(cc) = c.coalgebra() {
        let cname = cc.name();
        let car = [cname.as_str(), cname.as_str()];
        let coalg_law = |left: bool| {
            let sweedler = &sweedler;
            move |(a, f): &(&Poly<K>, &Poly<K>)| {
                let act = |x: &Poly<K>, g: &Poly<K>| if left { c.left_act(x, g) } else { c.right_act(g, x) };
                let lhs = cc.canon(&cc.coproduct(&act(a, f)));
                let df = cc.canon(&cc.coproduct(f));
                let mut rhs = Tensor::zero(&car);
                for (k, a1, a2) in sweedler(a) {
                    for (key, x) in df.terms() {
                        let legs = Tensor::<K>::key_legs(key);
                        rhs.add_pure(k.clone() * x.clone(), &[act(&a1, &legs[0]), act(&a2, &legs[1])]);
                    }
                }
                let rhs = cc.canon(&rhs);
                let side = if left { "a⇀f" } else { "f↼a" };
                if lhs != rhs {
                    return Some(format!("a = {a}, f = {f}: Δ({side}) = {lhs}, expected {rhs}"));
                }
                let e1 = tr(cc.counit(&act(a, f)));
                let e2 = tr(b.counit(a) * cc.counit(f));
                (e1 != e2).then(|| format!("a = {a}, f = {f}: ε({side}) = {e1}, ε(a)ε(f) = {e2}"))
            }
        };
        r.push(Check::over("left_module_coalgebra", &af, coalg_law(true)));
        r.push(Check::over("right_module_coalgebra", &af, coalg_law(false)));
    }
    r
}
