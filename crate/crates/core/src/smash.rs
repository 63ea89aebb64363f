//! Smash and L-R smash products, their bialgebra structure, the commutative
//! decomposition, and transport along a gauge map `S = Id + O(t)`.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Poly, Tensor, T};
use crate::hopf::{legwise_mul, sweedler_iterate, Bialgebra, BimoduleAlgebra};
use crate::report::{Check, Report};
use crate::scalar::Coeff;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SmashKind {
    /// `(f⊗a)(g⊗b) = Σ f (a1⇀g) ⊗ a2 b`.
    Plain,
    /// `(f⊗a)(g⊗b) = Σ (f↼b1)(a1⇀g) ⊗ a2 b2`.
    Lr,
}

type PairKey = (Vec<Monomial>, Vec<Monomial>);

/// The algebra `C⊗B` with a smash-type product.
#[derive(Clone)]
pub struct SmashAlgebra<K: Coeff> {
    pub c: Arc<dyn BimoduleAlgebra<K>>,
    pub kind: SmashKind,
    // products of monomial pure tensors, shared between clones
    memo: Arc<RwLock<HashMap<PairKey, Tensor<K>>>>,
}

/// Degree up to which cocommutativity of `B` is confirmed before use.
const COCOMMUTATIVITY_PROBE: u32 = 3;

impl<K: Coeff> SmashAlgebra<K> {
    /// For the L-R kind the acting bialgebra must be cocommutative; this is
    /// checked on low-degree monomials, not taken on trust.
    pub fn new(c: Arc<dyn BimoduleAlgebra<K>>, kind: SmashKind) -> Result<Self> {
        if kind == SmashKind::Lr {
            let b = c.acting();
            let ok = b.claims_cocommutative()
                && b.basis(COCOMMUTATIVITY_PROBE).iter().all(|a| {
                    let d = b.canon(&b.coproduct(a));
                    d == b.canon(&d.permute(&[1, 0]))
                });
            if !ok {
                return Err(Error::NotCocommutative(b.name()));
            }
        }
        Ok(SmashAlgebra { c, kind, memo: Arc::default() })
    }

    pub fn b(&self) -> &dyn Bialgebra<K> {
        self.c.acting()
    }

    pub fn carrier_names(&self) -> (String, String) {
        (self.c.name(), self.b().name())
    }

    fn carriers(&self) -> [String; 2] {
        let (c, b) = self.carrier_names();
        [c, b]
    }

    pub fn tcap(&self) -> Option<u32> {
        self.c.tcap()
    }

    /// Moves `t` into the `C` leg and truncates.
    pub fn canon(&self, x: &Tensor<K>) -> Tensor<K> {
        let x = x.collect_t(0);
        match self.tcap() {
            Some(c) => x.truncate_total_t(c),
            None => x,
        }
    }

    pub fn pure(&self, f: &Poly<K>, a: &Poly<K>) -> Tensor<K> {
        let [c, b] = self.carriers();
        self.canon(&Tensor::pure(&[&c, &b], &[f.clone(), a.clone()]))
    }

    pub fn one(&self) -> Tensor<K> {
        self.pure(&Poly::one(), &Poly::one())
    }

    fn check_carrier(&self, x: &Tensor<K>) -> Result<()> {
        let want = self.carriers().to_vec();
        if x.carriers() != want.as_slice() {
            return Err(Error::CarrierMismatch(x.carriers().to_vec(), want));
        }
        Ok(())
    }

    fn sweedler(&self, a: &Poly<K>) -> Vec<(K, Poly<K>, Poly<K>)> {
        let b = self.b();
        b.canon(&b.coproduct(a))
            .terms()
            .map(|(k, c)| {
                let l = Tensor::<K>::key_legs(k);
                (c.clone(), l[0].clone(), l[1].clone())
            })
            .collect()
    }

    /// Product of pure tensors `(f⊗a)(g⊗b)`.
    pub fn mul_pure(&self, f: &Poly<K>, a: &Poly<K>, g: &Poly<K>, bb: &Poly<K>) -> Tensor<K> {
        let [cn, bn] = self.carriers();
        let (c, b) = (self.c.as_ref(), self.b());
        let mut out = Tensor::zero(&[&cn, &bn]);
        let da = self.sweedler(a);
        match self.kind {
            SmashKind::Plain => {
                for (k, a1, a2) in &da {
                    let left = c.mul(f, &c.left_act(a1, g));
                    out.add_pure(k.clone(), &[left, b.mul(a2, bb)]);
                }
            }
            SmashKind::Lr => {
                let db = self.sweedler(bb);
                for (ka, a1, a2) in &da {
                    let act_g = c.left_act(a1, g);
                    for (kb, b1, b2) in &db {
                        let left = c.mul(&c.right_act(f, b1), &act_g);
                        out.add_pure(ka.clone() * kb.clone(), &[left, b.mul(a2, b2)]);
                    }
                }
            }
        }
        self.canon(&out)
    }

    pub fn mul(&self, x: &Tensor<K>, y: &Tensor<K>) -> Result<Tensor<K>> {
        self.check_carrier(x)?;
        self.check_carrier(y)?;
        let x = self.canon(x);
        let y = self.canon(y);
        let [cn, bn] = self.carriers();
        let out = x.bilinear(&y, &[&cn, &bn], |kx, ky| {
            let key = (kx.to_vec(), ky.to_vec());
            if let Some(v) = self.memo.read().unwrap().get(&key) {
                return v.clone();
            }
            let lx = Tensor::<K>::key_legs(kx);
            let ly = Tensor::<K>::key_legs(ky);
            let v = self.mul_pure(&lx[0], &lx[1], &ly[0], &ly[1]);
            self.memo.write().unwrap().insert(key, v.clone());
            v
        })?;
        Ok(self.canon(&out))
    }

    /// Coproduct `(23)∘(Δ_C⊗Δ_B)` with legs `[C, B, C, B]`, and the antipode
    /// `J(f⊗a) = Σ J(a1)⇀J_C(f)↼J(a2) ⊗ J(a3)`.
    pub fn lr_coproduct_antipode(&self, x: &Tensor<K>) -> Result<(Tensor<K>, Tensor<K>)> {
        self.check_carrier(x)?;
        let cc = self.c.coalgebra().ok_or(Error::MissingCoalgebra)?;
        let b = self.b();
        let [cn, bn] = self.carriers();
        let x = self.canon(x);
        let mut cop = Tensor::zero(&[&cn, &bn, &cn, &bn]);
        let mut anti = Tensor::zero(&[&cn, &bn]);
        for (key, k) in x.terms() {
            let legs = Tensor::<K>::key_legs(key);
            let (f, a) = (&legs[0], &legs[1]);
            let df = cc.canon(&cc.coproduct(f));
            let da = self.sweedler(a);
            for (fk, fc) in df.terms() {
                let fl = Tensor::<K>::key_legs(fk);
                for (ac, a1, a2) in &da {
                    cop.add_pure(k.clone() * fc.clone() * ac.clone(), &[fl[0].clone(), a1.clone(), fl[1].clone(), a2.clone()]);
                }
            }
            let jf = cc.antipode(f).ok_or(Error::MissingCoalgebra)?;
            let d2 = b.canon(&sweedler_iterate(b, a, 2));
            for (ak, ac) in d2.terms() {
                let al = Tensor::<K>::key_legs(ak);
                let ja = |p: &Poly<K>| b.antipode(p).ok_or(Error::MissingCoalgebra);
                let inner = self.c.right_act(&self.c.left_act(&ja(&al[0])?, &jf), &ja(&al[1])?);
                anti.add_pure(k.clone() * ac.clone(), &[inner, ja(&al[2])?]);
            }
        }
        let cop = match self.tcap() {
            Some(c) => cop.truncate_total_t(c),
            None => cop,
        };
        Ok((cop, self.canon(&anti)))
    }

    /// Counit `ε_C(f) ε_B(a)`.
    pub fn counit(&self, x: &Tensor<K>) -> Result<Poly<K>> {
        let cc = self.c.coalgebra().ok_or(Error::MissingCoalgebra)?;
        let b = self.b();
        let mut acc = Poly::zero();
        for (key, k) in x.terms() {
            let legs = Tensor::<K>::key_legs(key);
            acc = acc + (cc.counit(&legs[0]) * b.counit(&legs[1])).scale(k);
        }
        Ok(acc.with_tcap(self.tcap()))
    }
}

/// Which factor is declared commutative in [`decompose_commutative`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommutativeFactor {
    B,
    C,
}

/// The two factors of the commutative decomposition and their product.
#[derive(Clone, Debug)]
pub struct Decomposition<K: Coeff> {
    /// `Σ (f↼b1) ⊗ b2`.
    pub right_part: Tensor<K>,
    /// `Σ (a1⇀g) ⊗ a2`.
    pub left_part: Tensor<K>,
    /// Componentwise product of the two parts, ordered by the commutative factor.
    pub product: Tensor<K>,
    /// Whether `product` equals the smash product.
    pub matches: bool,
}

/// For `B` commutative, `(f⊗a)⋆(g⊗b) = [Σ(f↼b1)⊗b2]·[Σ(a1⇀g)⊗a2]`; for `C`
/// commutative the two factors appear in the opposite order.
pub fn decompose_commutative<K: Coeff>(
    s: &SmashAlgebra<K>,
    x: (&Poly<K>, &Poly<K>),
    y: (&Poly<K>, &Poly<K>),
    declared: &[CommutativeFactor],
) -> Result<Decomposition<K>> {
    let which = *declared.first().ok_or(Error::NoCommutativity)?;
    let (f, a) = x;
    let (g, b) = y;
    let [cn, bn] = s.carriers();
    let mut right_part = Tensor::zero(&[&cn, &bn]);
    for (k, b1, b2) in s.sweedler(b) {
        let fb = match s.kind {
            SmashKind::Lr => s.c.right_act(f, &b1),
            SmashKind::Plain => (s.b().counit(&b1) * f.clone()).with_tcap(s.tcap()),
        };
        right_part.add_pure(k, &[fb, b2]);
    }
    let mut left_part = Tensor::zero(&[&cn, &bn]);
    for (k, a1, a2) in s.sweedler(a) {
        left_part.add_pure(k, &[s.c.left_act(&a1, g), a2]);
    }
    let right_part = s.canon(&right_part);
    let left_part = s.canon(&left_part);
    let cm = |p: &Poly<K>, q: &Poly<K>| s.c.mul(p, q);
    let bm = |p: &Poly<K>, q: &Poly<K>| s.b().mul(p, q);
    let product = s.canon(&match which {
        CommutativeFactor::B => legwise_mul(&right_part, &left_part, &[&cm, &bm]),
        CommutativeFactor::C => legwise_mul(&left_part, &right_part, &[&cm, &bm]),
    });
    let smash = s.mul_pure(f, a, g, b);
    Ok(Decomposition { matches: product == smash, right_part, left_part, product })
}

type LinearFn<K> = dyn Fn(&Poly<K>) -> Poly<K> + Send + Sync;

/// A linear automorphism `S = Id + D` of `C` where `D` raises the `t`-degree,
/// so `S^{-1} = Σ_k (-D)^k` terminates at the truncation order. `D` is
/// tabulated on monomials as it is used.
pub struct GaugeMap<K: Coeff> {
    pub name: String,
    d: Box<LinearFn<K>>,
    tcap: u32,
    table: RwLock<HashMap<Monomial, Poly<K>>>,
}

impl<K: Coeff> GaugeMap<K> {
    pub fn new(name: &str, d: impl Fn(&Poly<K>) -> Poly<K> + Send + Sync + 'static, tcap: u32) -> Self {
        GaugeMap { name: name.to_string(), d: Box::new(d), tcap, table: RwLock::new(HashMap::new()) }
    }

    pub fn identity(tcap: u32) -> Self {
        Self::new("Id", |f| Poly::zero().with_tcap(f.tcap()), tcap)
    }

    /// `S = Id + t N`.
    pub fn id_plus_t(name: &str, n: impl Fn(&Poly<K>) -> Poly<K> + Send + Sync + 'static, tcap: u32) -> Self {
        Self::new(name, move |f| (Poly::t() * n(f)).with_tcap(Some(tcap)), tcap)
    }

    /// `S = exp(t N) = Σ t^k N^k / k!`.
    pub fn exp_t(name: &str, n: impl Fn(&Poly<K>) -> Poly<K> + Send + Sync + 'static, tcap: u32) -> Self {
        Self::new(
            name,
            move |f| {
                let mut acc = Poly::zero().with_tcap(Some(tcap));
                let mut term = f.clone().with_tcap(Some(tcap));
                for k in 1..=tcap {
                    term = (Poly::t() * n(&term)).with_tcap(Some(tcap)).scale(&(K::one() / K::from_i64(k as i64)));
                    acc = acc + term.clone();
                }
                acc
            },
            tcap,
        )
    }

    pub fn tcap(&self) -> u32 {
        self.tcap
    }

    /// `D` applied with memoization on monomials.
    pub fn d(&self, f: &Poly<K>) -> Poly<K> {
        let mut acc = Poly::zero().with_tcap(Some(self.tcap));
        for (m, c) in f.monomials() {
            let cached = self.table.read().unwrap().get(&m).cloned();
            let img = match cached {
                Some(v) => v,
                None => {
                    let v = (self.d)(&Poly::term(K::one(), &m)).with_tcap(Some(self.tcap));
                    self.table.write().unwrap().insert(m.clone(), v.clone());
                    v
                }
            };
            acc = acc + img.scale(&c);
        }
        acc
    }

    pub fn apply(&self, f: &Poly<K>) -> Poly<K> {
        f.clone().with_tcap(Some(self.tcap)) + self.d(f)
    }

    pub fn inverse(&self, f: &Poly<K>) -> Poly<K> {
        let mut term = f.clone().with_tcap(Some(self.tcap));
        let mut acc = term.clone();
        for _ in 0..self.tcap {
            term = -self.d(&term);
            if term.is_zero() {
                break;
            }
            acc = acc + term.clone();
        }
        acc
    }

    /// Confirms that `D` raises the `t`-degree on the given spanning set and
    /// that `S∘S^{-1} = Id` there.
    pub fn verify_invertible(&self, basis: &[Poly<K>]) -> Result<()> {
        for f in basis {
            let tdeg = f.monomials().iter().map(|(m, _)| m.exponent(T)).min().unwrap_or(0);
            let df = self.d(f);
            if let Some((m, _)) = df.monomials().into_iter().find(|(m, _)| m.exponent(T) <= tdeg) {
                return Err(Error::NonInvertibleGauge(format!(
                    "D({f}) contains {m}, which does not raise the t-degree"
                )));
            }
            if self.apply(&self.inverse(f)) != f.clone().with_tcap(Some(self.tcap)) {
                return Err(Error::NonInvertibleGauge(format!("S∘S⁻¹ differs from Id on {f}")));
            }
        }
        Ok(())
    }

    /// `T = S⊗Id` on `C⊗B`.
    pub fn t_map(&self, s: &SmashAlgebra<K>, x: &Tensor<K>) -> Tensor<K> {
        s.canon(&x.apply_leg(0, |f| self.apply(f)))
    }

    pub fn t_inverse(&self, s: &SmashAlgebra<K>, x: &Tensor<K>) -> Tensor<K> {
        s.canon(&x.apply_leg(0, |f| self.inverse(f)))
    }
}

/// `x ⋆^S y = T^{-1}(T x ⋆ T y)`.
pub fn gauge_product<K: Coeff>(s: &SmashAlgebra<K>, g: &GaugeMap<K>, x: &Tensor<K>, y: &Tensor<K>) -> Result<Tensor<K>> {
    let prod = s.mul(&g.t_map(s, x), &g.t_map(s, y))?;
    Ok(g.t_inverse(s, &prod))
}

/// The carrier with transported structure `f •^S g = S^{-1}(Sf·Sg)`,
/// `a ⇀^S f = S^{-1}(a ⇀ Sf)` and `f ↼^S a = S^{-1}(Sf ↼ a)`.
pub struct GaugedBimodule<K: Coeff> {
    pub inner: Arc<dyn BimoduleAlgebra<K>>,
    pub gauge: Arc<GaugeMap<K>>,
}

impl<K: Coeff> BimoduleAlgebra<K> for GaugedBimodule<K> {
    fn name(&self) -> String {
        self.inner.name()
    }
    fn acting(&self) -> &dyn Bialgebra<K> {
        self.inner.acting()
    }
    fn vars(&self) -> Vec<String> {
        self.inner.vars()
    }
    fn tcap(&self) -> Option<u32> {
        self.inner.tcap()
    }
    fn mul(&self, f: &Poly<K>, g: &Poly<K>) -> Poly<K> {
        let s = &self.gauge;
        s.inverse(&self.inner.mul(&s.apply(f), &s.apply(g)))
    }
    fn unit(&self) -> Poly<K> {
        self.gauge.inverse(&self.inner.unit())
    }
    fn left_act(&self, a: &Poly<K>, f: &Poly<K>) -> Poly<K> {
        let s = &self.gauge;
        s.inverse(&self.inner.left_act(a, &s.apply(f)))
    }
    fn right_act(&self, f: &Poly<K>, a: &Poly<K>) -> Poly<K> {
        let s = &self.gauge;
        s.inverse(&self.inner.right_act(&s.apply(f), a))
    }
    fn is_commutative(&self) -> bool {
        self.inner.is_commutative()
    }
    fn basis(&self, maxdeg: u32) -> Vec<Poly<K>> {
        self.inner.basis(maxdeg)
    }
}

/// `C⊗B` as a bialgebra on polynomials in the disjoint variables of `C` and
/// `B`: a monomial splits uniquely into its `C` part and its `B` part.
pub struct SmashBialgebra<K: Coeff> {
    pub smash: SmashAlgebra<K>,
}

impl<K: Coeff> SmashBialgebra<K> {
    pub fn new(smash: SmashAlgebra<K>) -> Result<Self> {
        smash.c.coalgebra().ok_or(Error::MissingCoalgebra)?;
        Ok(SmashBialgebra { smash })
    }

    fn b_vars(&self) -> Vec<String> {
        self.smash.b().generators()
    }

    pub fn to_tensor(&self, u: &Poly<K>) -> Tensor<K> {
        let [cn, bn] = self.smash.carriers();
        let mut out = Tensor::zero(&[&cn, &bn]);
        for (bm, rest) in u.split_by(&self.b_vars()) {
            out.add_pure(K::one(), &[rest, Poly::term(K::one(), &bm)]);
        }
        self.smash.canon(&out)
    }

    pub fn from_tensor(&self, x: &Tensor<K>) -> Poly<K> {
        x.flatten(|a, b| a * b).with_tcap(self.smash.tcap())
    }

    fn merge4(&self, x: &Tensor<K>) -> Tensor<K> {
        let n = Bialgebra::<K>::name(self);
        let mut out = Tensor::zero(&[&n, &n]);
        for (k, c) in x.terms() {
            let l = Tensor::<K>::key_legs(k);
            out.add_pure(c.clone(), &[&l[0] * &l[1], &l[2] * &l[3]]);
        }
        out
    }
}

impl<K: Coeff> Bialgebra<K> for SmashBialgebra<K> {
    fn name(&self) -> String {
        let (c, b) = self.smash.carrier_names();
        format!("{c}♮{b}")
    }

    fn generators(&self) -> Vec<String> {
        let mut g = self.smash.c.vars();
        g.extend(self.b_vars());
        if !self.scalar_t() {
            g.push(T.to_string());
        }
        g
    }

    fn tcap(&self) -> Option<u32> {
        self.smash.tcap()
    }

    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        let x = self.smash.mul(&self.to_tensor(a), &self.to_tensor(b)).expect("carriers agree");
        self.from_tensor(&x)
    }

    fn coproduct(&self, a: &Poly<K>) -> Tensor<K> {
        let (cop, _) = self.smash.lr_coproduct_antipode(&self.to_tensor(a)).expect("coalgebra present");
        self.merge4(&cop)
    }

    fn counit(&self, a: &Poly<K>) -> Poly<K> {
        self.smash.counit(&self.to_tensor(a)).expect("coalgebra present")
    }

    fn antipode(&self, a: &Poly<K>) -> Option<Poly<K>> {
        let (_, anti) = self.smash.lr_coproduct_antipode(&self.to_tensor(a)).ok()?;
        Some(self.from_tensor(&anti))
    }

    fn claims_cocommutative(&self) -> bool {
        self.smash.c.coalgebra().is_some_and(|c| c.claims_cocommutative()) && self.smash.b().claims_cocommutative()
    }

    fn is_commutative(&self) -> bool {
        false
    }

    fn scalar_t(&self) -> bool {
        self.smash.c.coalgebra().map(|c| c.scalar_t()).unwrap_or(true)
    }
}

/// Associativity and unit laws on all products of spanning pure tensors
/// `f⊗a` with `deg f ≤ cdeg`, `deg a ≤ bdeg`, where the degree box bounds the
/// combined degrees of each triple.
pub fn check_associativity<K: Coeff>(s: &SmashAlgebra<K>, cdeg: u32, bdeg: u32) -> Report {
    let cb = s.c.basis(cdeg);
    let bb = s.b().basis(bdeg);
    let pure: Vec<(Poly<K>, Poly<K>, u32, u32)> = cb
        .iter()
        .flat_map(|f| bb.iter().map(move |a| (f.clone(), a.clone(), f.spatial_degree(), a.spatial_degree())))
        .collect();
    let mut triples = Vec::new();
    for (i, x) in pure.iter().enumerate() {
        for (j, y) in pure.iter().enumerate() {
            if x.2 + y.2 > cdeg || x.3 + y.3 > bdeg {
                continue;
            }
            for (k, z) in pure.iter().enumerate() {
                if x.2 + y.2 + z.2 <= cdeg && x.3 + y.3 + z.3 <= bdeg {
                    triples.push((i, j, k));
                }
            }
        }
    }
    let el: Vec<Tensor<K>> = pure.iter().map(|(f, a, _, _)| s.pure(f, a)).collect();
    let mut pairs: Vec<(usize, usize)> = triples.iter().flat_map(|&(i, j, k)| [(i, j), (j, k)]).collect();
    pairs.sort_unstable();
    pairs.dedup();
    let prod: HashMap<(usize, usize), Result<Tensor<K>>> =
        pairs.into_iter().map(|(i, j)| ((i, j), s.mul(&el[i], &el[j]))).collect();
    let mut r = Report::new();
    r.push(Check::over("associativity", &triples, |&(i, j, k)| {
        let both = || -> Result<(Tensor<K>, Tensor<K>)> {
            let lhs = s.mul(prod[&(i, j)].as_ref().map_err(Clone::clone)?, &el[k])?;
            Ok((lhs, s.mul(&el[i], prod[&(j, k)].as_ref().map_err(Clone::clone)?)?))
        };
        let (lhs, rhs) = match both() {
            Ok(v) => v,
            Err(e) => return Some(format!("x = {}, y = {}, z = {}: {e}", el[i], el[j], el[k])),
        };
        (lhs != rhs).then(|| format!("x = {}, y = {}, z = {}: (xy)z = {lhs}, x(yz) = {rhs}", el[i], el[j], el[k]))
    }));
    let one = s.one();
    r.push(Check::over("unit", &el, |x| {
        let (l, rr) = match (s.mul(&one, x), s.mul(x, &one)) {
            (Ok(l), Ok(rr)) => (l, rr),
            (Err(e), _) | (_, Err(e)) => return Some(format!("x = {x}: {e}")),
        };
        (l != *x || rr != *x).then(|| format!("x = {x}: 1x = {l}, x1 = {rr}"))
    }));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::parse_poly;
    use crate::hopf::{DerivationBimodule, SymmetricAlgebra, TrivialRight};
    use crate::phase_space::{lr_actions, LambdaConfig};
    use crate::scalar::rat;
    use crate::{QPoly, Rational};

    fn p(s: &str) -> QPoly {
        parse_poly(s).unwrap()
    }

    fn bimod(l: Rational, tcap: u32) -> DerivationBimodule<Rational> {
        lr_actions(&LambdaConfig::new(l, 1, tcap), None).unwrap()
    }

    fn lr(l: Rational, tcap: u32) -> SmashAlgebra<Rational> {
        SmashAlgebra::new(Arc::new(bimod(l, tcap)), SmashKind::Lr).unwrap()
    }

    #[test]
    fn lr_product_example() {
        let s = lr(rat(1, 3), 4);
        let x = s.mul(&s.pure(&p("q1"), &p("1")), &s.pure(&p("1"), &p("p1"))).unwrap();
        let mut e = s.pure(&p("q1"), &p("p1"));
        e.add_assign(&s.pure(&p("1/3*t"), &p("1")));
        assert_eq!(x, e);
        let y = s.pure(&p("q1^2 + t"), &p("p1"));
        assert_eq!(s.mul(&s.one(), &y).unwrap(), y);
    }

    #[test]
    fn plain_equals_lr_with_trivial_right_action() {
        let c: Arc<dyn BimoduleAlgebra<Rational>> = Arc::new(TrivialRight(bimod(rat(1, 3), 4)));
        let a = SmashAlgebra::new(c.clone(), SmashKind::Lr).unwrap();
        let b = SmashAlgebra::new(c, SmashKind::Plain).unwrap();
        for (f, x, g, y) in [("q1^2", "p1", "q1", "p1^2"), ("q1", "p1^3", "q1^3", "1")] {
            assert_eq!(a.mul_pure(&p(f), &p(x), &p(g), &p(y)), b.mul_pure(&p(f), &p(x), &p(g), &p(y)));
        }
    }

    #[test]
    fn carrier_mismatch_is_reported() {
        let s = lr(rat(1, 2), 4);
        let bad = Tensor::pure(&["A", "B"], &[p("1"), p("1")]);
        assert!(matches!(s.mul(&bad, &s.one()), Err(Error::CarrierMismatch(..))));
    }

    #[test]
    fn cocommutativity_enforced() {
        struct Claimless(SymmetricAlgebra);
        impl Bialgebra<Rational> for Claimless {
            fn name(&self) -> String {
                "S".into()
            }
            fn generators(&self) -> Vec<String> {
                self.0.symbols.clone()
            }
            fn tcap(&self) -> Option<u32> {
                self.0.tcap
            }
            fn mul(&self, a: &QPoly, b: &QPoly) -> QPoly {
                self.0.mul(a, b)
            }
            fn coproduct(&self, a: &QPoly) -> Tensor<Rational> {
                // Δ(p) = p⊗1 + 1⊗p + p⊗p², not symmetric
                let mut d = Bialgebra::<Rational>::coproduct(&self.0, a);
                if *a == p("p1") {
                    d.add_pure(rat(1, 1), &[p("p1"), p("p1^2")]);
                }
                d
            }
            fn counit(&self, a: &QPoly) -> QPoly {
                self.0.counit(a)
            }
            fn antipode(&self, _: &QPoly) -> Option<QPoly> {
                None
            }
            fn claims_cocommutative(&self) -> bool {
                true
            }
            fn is_commutative(&self) -> bool {
                true
            }
        }
        let mut c = bimod(rat(1, 2), 4);
        c.acting = Arc::new(Claimless(SymmetricAlgebra::new(1, Some(4))));
        assert!(matches!(SmashAlgebra::new(Arc::new(c), SmashKind::Lr), Err(Error::NotCocommutative(_))));
    }

    #[test]
    fn coproduct_examples() {
        let s = lr(rat(1, 3), 4);
        let (_, j) = s.lr_coproduct_antipode(&s.pure(&p("1"), &p("p1"))).unwrap();
        assert_eq!(j, s.pure(&p("1"), &p("-p1")));
        let (d, _) = s.lr_coproduct_antipode(&s.one()).unwrap();
        let (cn, bn) = s.carrier_names();
        assert_eq!(d, Tensor::pure(&[&cn, &bn, &cn, &bn], &[p("1"), p("1"), p("1"), p("1")]));
        let h = SmashBialgebra::new(s).unwrap();
        let x = p("q1*p1");
        let d = h.coproduct(&x);
        let anti = crate::hopf::contract2(&d, |a| h.antipode(a).unwrap(), |a| a.clone(), |a, b| h.mul(a, b));
        assert_eq!(anti.with_tcap(Some(4)), h.counit(&x));
        let no_coalg = {
            let mut c = bimod(rat(1, 3), 4);
            c.coalgebra = None;
            SmashAlgebra::new(Arc::new(c), SmashKind::Lr).unwrap()
        };
        assert!(matches!(no_coalg.lr_coproduct_antipode(&no_coalg.one()), Err(Error::MissingCoalgebra)));
    }

    #[test]
    fn decomposition_examples() {
        let s = lr(rat(1, 3), 4);
        for which in [CommutativeFactor::B, CommutativeFactor::C] {
            let d = decompose_commutative(&s, (&p("q1"), &p("1")), (&p("1"), &p("p1")), &[which]).unwrap();
            assert!(d.matches);
            let d = decompose_commutative(&s, (&p("q1^2"), &p("p1^2")), (&p("q1^3"), &p("p1")), &[which]).unwrap();
            assert!(d.matches);
        }
        let d = decompose_commutative(&s, (&p("1"), &p("1")), (&p("1"), &p("1")), &[CommutativeFactor::B]).unwrap();
        assert_eq!(d.left_part, s.one());
        assert_eq!(d.right_part, s.one());
        assert!(matches!(
            decompose_commutative(&s, (&p("1"), &p("1")), (&p("1"), &p("1")), &[]),
            Err(Error::NoCommutativity)
        ));
    }

    #[test]
    fn gauge_examples() {
        let s = lr(rat(1, 2), 3);
        let id = GaugeMap::identity(3);
        let x = s.pure(&p("q1"), &p("1"));
        let y = s.pure(&p("q1"), &p("p1"));
        assert_eq!(gauge_product(&s, &id, &x, &y).unwrap(), s.mul(&x, &y).unwrap());
        let g = GaugeMap::exp_t("exp(t d2)", |f: &QPoly| f.d("q1", 2), 3);
        let basis = s.c.basis(3);
        g.verify_invertible(&basis).unwrap();
        let lhs = g.t_map(&s, &gauge_product(&s, &g, &x, &y).unwrap());
        let rhs = s.mul(&g.t_map(&s, &x), &g.t_map(&s, &y)).unwrap();
        assert_eq!(lhs, rhs);
        let gauged = GaugedBimodule { inner: s.c.clone(), gauge: Arc::new(GaugeMap::identity(3)) };
        assert_eq!(gauged.mul(&p("q1"), &p("q1^2")), p("q1^3"));
    }

    #[test]
    fn gauge_must_raise_t_degree() {
        let g = GaugeMap::<Rational>::new("bad", |f| f.d("q1", 1), 3);
        assert!(matches!(g.verify_invertible(&[p("q1^2")]), Err(Error::NonInvertibleGauge(_))));
    }

    #[test]
    fn gauged_bimodule_smash_equals_gauge_product() {
        let s = lr(rat(1, 3), 3);
        let g = Arc::new(GaugeMap::id_plus_t("Id+tN", |f: &QPoly| f.d("q1", 2), 3));
        let gs = SmashAlgebra::new(Arc::new(GaugedBimodule { inner: s.c.clone(), gauge: g.clone() }), SmashKind::Lr)
            .unwrap();
        let x = s.pure(&p("q1^2"), &p("p1"));
        let y = s.pure(&p("q1^3"), &p("p1^2"));
        assert_eq!(gauge_product(&s, &g, &x, &y).unwrap(), gs.mul(&x, &y).unwrap());
    }

    #[test]
    fn small_associativity_box() {
        let r = check_associativity(&lr(rat(1, 3), 4), 2, 2);
        assert!(r.all_passed(), "{:?}", r.failures());
    }
}
