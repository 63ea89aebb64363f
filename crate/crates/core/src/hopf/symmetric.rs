use std::collections::BTreeMap;

use super::bialgebra::{binomial_coproduct, extend_on_monomials, Bialgebra};
use crate::exactalg::{Poly, Tensor};
use crate::scalar::Coeff;

/// The symmetric algebra `S(R^n)` on `p1..pn` with primitive generators.
#[derive(Clone, Debug)]
pub struct SymmetricAlgebra {
    pub symbols: Vec<String>,
    pub tcap: Option<u32>,
}

impl SymmetricAlgebra {
    pub fn new(n: usize, tcap: Option<u32>) -> Self {
        Self::with_symbols((1..=n).map(|i| format!("p{i}")).collect(), tcap)
    }

    pub fn with_symbols(symbols: Vec<String>, tcap: Option<u32>) -> Self {
        SymmetricAlgebra { symbols, tcap }
    }
}

impl<K: Coeff> Bialgebra<K> for SymmetricAlgebra {
    fn name(&self) -> String {
        format!("S({})", self.symbols.join(","))
    }

    fn generators(&self) -> Vec<String> {
        self.symbols.clone()
    }

    fn tcap(&self) -> Option<u32> {
        self.tcap
    }

    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        (a * b).with_tcap(self.tcap)
    }

    fn coproduct(&self, a: &Poly<K>) -> Tensor<K> {
        let name = <Self as Bialgebra<K>>::name(self);
        extend_on_monomials(&[&name, &name], a, |m, c| binomial_coproduct(&name, m, c))
    }

    fn counit(&self, a: &Poly<K>) -> Poly<K> {
        let zero: BTreeMap<String, K> = self.symbols.iter().map(|s| (s.clone(), K::zero())).collect();
        a.eval(&zero).with_tcap(self.tcap)
    }

    fn antipode(&self, a: &Poly<K>) -> Option<Poly<K>> {
        let neg: BTreeMap<String, Poly<K>> =
            self.symbols.iter().map(|s| (s.clone(), -Poly::var(s))).collect();
        Some(a.substitute(&neg).with_tcap(self.tcap))
    }

    fn claims_cocommutative(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        true
    }
}

/// `S(R^n)` with `Delta(p_i) = p_i ⊗ p_i` on generators (binomial elsewhere),
/// a deliberately broken coproduct for negative controls.
#[derive(Clone, Debug)]
pub struct CorruptedSymmetric(pub SymmetricAlgebra);

impl<K: Coeff> Bialgebra<K> for CorruptedSymmetric {
    fn name(&self) -> String {
        <SymmetricAlgebra as Bialgebra<K>>::name(&self.0)
    }

    fn generators(&self) -> Vec<String> {
        self.0.symbols.clone()
    }

    fn tcap(&self) -> Option<u32> {
        self.0.tcap
    }

    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        self.0.mul(a, b)
    }

    fn coproduct(&self, a: &Poly<K>) -> Tensor<K> {
        let name = <Self as Bialgebra<K>>::name(self);
        extend_on_monomials(&[&name, &name], a, |m, c| {
            let spatial = m.without(crate::exactalg::T);
            if spatial.degree() == 1 {
                let g = Poly::term(K::one(), &spatial);
                let tpart = Poly::term(c.clone(), &m.split(&[crate::exactalg::T.to_string()]).0);
                Tensor::pure(&[&name, &name], &[&tpart * &g, g])
            } else {
                binomial_coproduct(&name, m, c)
            }
        })
    }

    fn counit(&self, a: &Poly<K>) -> Poly<K> {
        self.0.counit(a)
    }

    fn antipode(&self, a: &Poly<K>) -> Option<Poly<K>> {
        self.0.antipode(a)
    }

    fn claims_cocommutative(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        true
    }
}
