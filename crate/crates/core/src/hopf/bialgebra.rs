use crate::exactalg::{Monomial, Poly, Tensor, T};
use crate::report::{Check, Report};
use crate::scalar::Coeff;

/// A bialgebra whose elements are polynomials in its generators (and `t`).
///
/// For non-commutative algebras a monomial stands for the ordered word in
/// the generator order, e.g. a PBW monomial.
pub trait Bialgebra<K: Coeff>: Send + Sync {
    fn name(&self) -> String;

    fn generators(&self) -> Vec<String>;

    fn tcap(&self) -> Option<u32>;

    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K>;

    fn unit(&self) -> Poly<K> {
        Poly::one().with_tcap(self.tcap())
    }

    fn coproduct(&self, a: &Poly<K>) -> Tensor<K>;

    /// Counit; the result is a polynomial in `t` only.
    fn counit(&self, a: &Poly<K>) -> Poly<K>;

    fn antipode(&self, a: &Poly<K>) -> Option<Poly<K>>;

    fn claims_cocommutative(&self) -> bool;

    fn is_commutative(&self) -> bool;

    /// Whether `t` is a central scalar (tensors are then taken over `k[[t]]`)
    /// rather than a variable of each tensor leg.
    fn scalar_t(&self) -> bool {
        true
    }

    /// Spanning monomials up to the given degree.
    fn basis(&self, maxdeg: u32) -> Vec<Poly<K>> {
        monomial_basis(&self.generators(), maxdeg)
    }

    /// Canonical representative of a tensor power element.
    fn canon(&self, x: &Tensor<K>) -> Tensor<K> {
        let x = if self.scalar_t() && x.rank() > 0 { x.collect_t(0) } else { x.clone() };
        match self.tcap() {
            Some(c) => x.truncate_total_t(c),
            None => x,
        }
    }
}

/// All monomials in `vars` of total degree at most `maxdeg`.
pub fn monomial_basis<K: Coeff>(vars: &[String], maxdeg: u32) -> Vec<Poly<K>> {
    let mut out = Vec::new();
    let mut exps = vec![0u32; vars.len()];
    fn rec<K: Coeff>(i: usize, left: u32, vars: &[String], exps: &mut Vec<u32>, out: &mut Vec<Poly<K>>) {
        if i == vars.len() {
            let m = Monomial::new(vars.iter().cloned().zip(exps.iter().cloned()).collect());
            out.push(Poly::term(K::one(), &m));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, vars, exps, out);
        }
        exps[i] = 0;
    }
    rec(0, maxdeg, vars, &mut exps, &mut out);
    out.sort_by_key(|p| p.total_degree());
    out
}

/// `Delta(X^a) = sum_b prod_i binom(a_i, b_i) X^b ⊗ X^(a-b)` on a monomial,
/// with `t` kept in the first leg.
pub fn binomial_coproduct<K: Coeff>(carrier: &str, m: &Monomial, coeff: &K) -> Tensor<K> {
    let mut out = Tensor::zero(&[carrier, carrier]);
    let tpow = m.exponent(T);
    let parts: Vec<(String, u32)> = m.pairs().iter().filter(|(v, _)| v != T).cloned().collect();
    let mut choice = vec![0u32; parts.len()];
    loop {
        let mut c = coeff.clone();
        let mut left = vec![(T.to_string(), tpow)];
        let mut right = Vec::new();
        for (k, (v, e)) in parts.iter().enumerate() {
            c = c * K::binomial(*e, choice[k]);
            left.push((v.clone(), choice[k]));
            right.push((v.clone(), e - choice[k]));
        }
        out.add_key(vec![Monomial::new(left), Monomial::new(right)], c);
        let mut k = 0;
        loop {
            if k == parts.len() {
                return out;
            }
            if choice[k] < parts[k].1 {
                choice[k] += 1;
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

/// Linear extension of a coproduct defined on monomials.
pub fn extend_on_monomials<K: Coeff>(
    carriers: &[&str],
    a: &Poly<K>,
    f: impl Fn(&Monomial, &K) -> Tensor<K>,
) -> Tensor<K> {
    let mut out = Tensor::zero(carriers);
    for (m, c) in a.monomials() {
        out.add_assign(&f(&m, &c));
    }
    out
}

/// Applies `Delta` to leg `i` of a tensor.
pub fn coproduct_on_leg<K: Coeff, B: Bialgebra<K> + ?Sized>(b: &B, x: &Tensor<K>, i: usize) -> Tensor<K> {
    let name = b.name();
    b.canon(&x.expand_leg(i, &[&name, &name], |p| b.coproduct(p)))
}

/// Iterated coproduct `Delta^(k)(a)`, a tensor with `k+1` legs, expanding
/// the leg `leg_choice(step)` at each step.
pub fn sweedler_iterate_with<K: Coeff, B: Bialgebra<K> + ?Sized>(
    b: &B,
    a: &Poly<K>,
    k: usize,
    leg_choice: impl Fn(usize) -> usize,
) -> Tensor<K> {
    let name = b.name();
    let mut x = Tensor::pure(&[&name], std::slice::from_ref(a));
    for step in 0..k {
        let leg = leg_choice(step).min(x.rank() - 1);
        x = coproduct_on_leg(b, &x, leg);
    }
    x
}

/// Iterated coproduct, always expanding the first leg.
pub fn sweedler_iterate<K: Coeff, B: Bialgebra<K> + ?Sized>(b: &B, a: &Poly<K>, k: usize) -> Tensor<K> {
    sweedler_iterate_with(b, a, k, |_| 0)
}

/// Tensor-power product `(x_1 ⊗ ... )(y_1 ⊗ ...) = x_1 y_1 ⊗ ...`, each leg
/// multiplied by the corresponding closure.
pub fn legwise_mul<K: Coeff>(
    x: &Tensor<K>,
    y: &Tensor<K>,
    muls: &[&(dyn Fn(&Poly<K>, &Poly<K>) -> Poly<K> + Sync)],
) -> Tensor<K> {
    let carriers: Vec<&str> = x.carriers().iter().map(|s| s.as_str()).collect();
    x.bilinear(y, &carriers, |ka, kb| {
        let la = Tensor::<K>::key_legs(ka);
        let lb = Tensor::<K>::key_legs(kb);
        let legs: Vec<Poly<K>> = (0..la.len()).map(|i| muls[i](&la[i], &lb[i])).collect();
        Tensor::pure(&carriers, &legs)
    })
    .expect("legwise product keeps carriers")
}

/// Applies `mul` across a rank-2 tensor after mapping each leg.
pub fn contract2<K: Coeff>(
    x: &Tensor<K>,
    f0: impl Fn(&Poly<K>) -> Poly<K>,
    f1: impl Fn(&Poly<K>) -> Poly<K>,
    mul: impl Fn(&Poly<K>, &Poly<K>) -> Poly<K>,
) -> Poly<K> {
    let mut acc = Poly::zero();
    for (k, c) in x.terms() {
        let legs = Tensor::<K>::key_legs(k);
        acc = acc + mul(&f0(&legs[0]), &f1(&legs[1])).scale(c);
    }
    acc
}

fn trunc<K: Coeff>(p: Poly<K>, cap: Option<u32>) -> Poly<K> {
    p.with_tcap(cap)
}

/// Verifies the bialgebra and Hopf laws exactly on all basis monomials of
/// degree at most `maxdeg` (pairs for the multiplicative laws).
pub fn check_hopf_axioms<K: Coeff, B: Bialgebra<K> + ?Sized>(b: &B, maxdeg: u32) -> Report {
    let basis = b.basis(maxdeg);
    let cap = b.tcap();
    let mut r = Report::new();

    r.push(Check::over("coassociativity", &basis, |a| {
        let d = b.canon(&b.coproduct(a));
        let lhs = coproduct_on_leg(b, &d, 0);
        let rhs = coproduct_on_leg(b, &d, 1);
        (lhs != rhs).then(|| format!("a = {a}: (Δ⊗id)Δa = {lhs}, (id⊗Δ)Δa = {rhs}"))
    }));

    r.push(Check::over("counit", &basis, |a| {
        let d = b.canon(&b.coproduct(a));
        let l = trunc(d.contract_leg(0, |x| b.counit(x)).flatten(|x, y| x * y), cap);
        let rr = trunc(d.contract_leg(1, |x| b.counit(x)).flatten(|x, y| x * y), cap);
        let a0 = trunc(a.clone(), cap);
        (l != a0 || rr != a0).then(|| format!("a = {a}: (ε⊗id)Δa = {l}, (id⊗ε)Δa = {rr}"))
    }));

    if b.antipode(&b.unit()).is_some() {
        let run = |left: bool| {
            move |a: &Poly<K>| {
                let d = b.canon(&b.coproduct(a));
                let s = |x: &Poly<K>| b.antipode(x).unwrap();
                let id = |x: &Poly<K>| x.clone();
                let val = if left {
                    contract2(&d, s, id, |x, y| b.mul(x, y))
                } else {
                    contract2(&d, id, s, |x, y| b.mul(x, y))
                };
                let expect = trunc(b.counit(a), cap);
                let val = trunc(val, cap);
                (val != expect).then(|| format!("a = {a}: got {val}, expected {expect}"))
            }
        };
        r.push(Check::over("antipode_left", &basis, run(true)));
        r.push(Check::over("antipode_right", &basis, run(false)));
    }

    let pairs: Vec<(Poly<K>, Poly<K>)> = basis
        .iter()
        .flat_map(|a| basis.iter().map(move |c| (a.clone(), c.clone())))
        .collect();
    let m = |x: &Poly<K>, y: &Poly<K>| b.mul(x, y);
    r.push(Check::over("compatibility", &pairs, |(a, c)| {
        let lhs = b.canon(&b.coproduct(&b.mul(a, c)));
        let rhs = b.canon(&legwise_mul(&b.canon(&b.coproduct(a)), &b.canon(&b.coproduct(c)), &[&m, &m]));
        (lhs != rhs).then(|| format!("a = {a}, b = {c}: Δ(ab) = {lhs}, Δa·Δb = {rhs}"))
    }));
    r.push(Check::over("counit_multiplicative", &pairs, |(a, c)| {
        let lhs = trunc(b.counit(&b.mul(a, c)), cap);
        let rhs = trunc(b.counit(a) * b.counit(c), cap);
        (lhs != rhs).then(|| format!("a = {a}, b = {c}: ε(ab) = {lhs}, ε(a)ε(b) = {rhs}"))
    }));

    if b.claims_cocommutative() {
        r.push(Check::over("cocommutativity", &basis, |a| {
            let d = b.canon(&b.coproduct(a));
            let s = b.canon(&d.permute(&[1, 0]));
            (d != s).then(|| format!("a = {a}: Δa = {d}"))
        }));
    }
    r
}
