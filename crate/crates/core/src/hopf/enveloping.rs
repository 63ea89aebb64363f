use std::collections::HashMap;
use std::sync::RwLock;

use super::bialgebra::{binomial_coproduct, extend_on_monomials, Bialgebra};
use super::lie::LieAlgebra;
use crate::error::{Error, Result};
use crate::exactalg::{Monomial, Poly, Tensor, T};
use crate::scalar::Coeff;

/// The parametrized enveloping algebra `U_t(g)`: generated by a basis of `g`
/// subject to `XY - YX = t[X, Y]`, with elements stored in the PBW basis
/// `X_1^a_1 ... X_n^a_n`.
pub struct EnvelopingAlgebra<K> {
    pub lie: LieAlgebra,
    pub tcap: Option<u32>,
    cache: RwLock<HashMap<Vec<usize>, Poly<K>>>,
}

impl<K: Coeff> Clone for EnvelopingAlgebra<K> {
    fn clone(&self) -> Self {
        Self::new(self.lie.clone(), self.tcap)
    }
}

impl<K: Coeff> EnvelopingAlgebra<K> {
    pub fn new(lie: LieAlgebra, tcap: Option<u32>) -> Self {
        EnvelopingAlgebra { lie, tcap, cache: RwLock::new(HashMap::new()) }
    }

    fn word_of(&self, m: &Monomial) -> Vec<usize> {
        let mut w = Vec::new();
        for (i, s) in self.lie.symbols.iter().enumerate() {
            for _ in 0..m.exponent(s) {
                w.push(i);
            }
        }
        w
    }

    fn pbw(&self, word: &[usize]) -> Poly<K> {
        let pairs = word.iter().map(|&i| (self.lie.symbols[i].clone(), 1)).collect();
        Poly::term(K::one(), &Monomial::new(pairs)).with_tcap(self.tcap)
    }

    /// Rewrites a word in the generators into PBW normal order.
    pub fn straighten(&self, word: &[usize]) -> Result<Poly<K>> {
        // each rewrite either removes an inversion or shortens the word, so the
        // recursion depth is bounded by a cubic in the length
        let bound = (word.len().pow(3) + word.len() + 1) as u32;
        self.straighten_rec(word, bound)
    }

    fn straighten_rec(&self, word: &[usize], budget: u32) -> Result<Poly<K>> {
        if let Some(p) = self.cache.read().unwrap().get(word) {
            return Ok(p.clone());
        }
        if budget == 0 {
            return Err(Error::StraighteningBound(word.len() as u32));
        }
        let Some(pos) = (0..word.len().saturating_sub(1)).find(|&k| word[k] > word[k + 1]) else {
            return Ok(self.pbw(word));
        };
        let (j, i) = (word[pos], word[pos + 1]);
        // X_j X_i = X_i X_j - t [X_i, X_j]
        let mut swapped = word.to_vec();
        swapped.swap(pos, pos + 1);
        let mut out = self.straighten_rec(&swapped, budget - 1)?;
        if self.tcap != Some(0) {
            for k in 0..self.lie.dim() {
                let c: K = self.lie.constant(i, j, k);
                if c.is_zero() {
                    continue;
                }
                let mut shorter = word[..pos].to_vec();
                shorter.push(k);
                shorter.extend_from_slice(&word[pos + 2..]);
                let sub = self.straighten_rec(&shorter, budget - 1)?;
                out = out - (Poly::t() * sub).scale(&c).with_tcap(self.tcap);
            }
        }
        self.cache.write().unwrap().insert(word.to_vec(), out.clone());
        Ok(out)
    }

    pub fn try_mul(&self, a: &Poly<K>, b: &Poly<K>) -> Result<Poly<K>> {
        let mut acc = Poly::zero().with_tcap(self.tcap);
        for (ma, ca) in a.monomials() {
            for (mb, cb) in b.monomials() {
                let mut w = self.word_of(&ma);
                w.extend(self.word_of(&mb));
                let tp = ma.exponent(T) + mb.exponent(T);
                let tm = Poly::term(ca.clone() * cb.clone(), &Monomial::new(vec![(T.to_string(), tp)]));
                acc = acc + (tm * self.straighten(&w)?).with_tcap(self.tcap);
            }
        }
        Ok(acc)
    }
}

impl<K: Coeff> Bialgebra<K> for EnvelopingAlgebra<K> {
    fn name(&self) -> String {
        format!("U({})", self.lie.symbols.join(","))
    }

    fn generators(&self) -> Vec<String> {
        self.lie.symbols.clone()
    }

    fn tcap(&self) -> Option<u32> {
        self.tcap
    }

    fn mul(&self, a: &Poly<K>, b: &Poly<K>) -> Poly<K> {
        self.try_mul(a, b).expect("PBW straightening terminates for a valid Lie algebra")
    }

    fn coproduct(&self, a: &Poly<K>) -> Tensor<K> {
        // generators are primitive and PBW words stay ordered in each leg
        let name = Bialgebra::<K>::name(self);
        extend_on_monomials(&[&name, &name], a, |m, c| binomial_coproduct(&name, m, c))
    }

    fn counit(&self, a: &Poly<K>) -> Poly<K> {
        let mut out = Poly::zero();
        for (m, c) in a.monomials() {
            if m.pairs().iter().all(|(v, _)| v == T) {
                out.add_term(&m, c);
            }
        }
        out.with_tcap(self.tcap)
    }

    fn antipode(&self, a: &Poly<K>) -> Option<Poly<K>> {
        let mut acc = Poly::zero().with_tcap(self.tcap);
        for (m, c) in a.monomials() {
            let mut w = self.word_of(&m);
            w.reverse();
            let sign = if w.len().is_multiple_of(2) { K::one() } else { -K::one() };
            let tm = Poly::term(c * sign, &Monomial::new(vec![(T.to_string(), m.exponent(T))]));
            acc = acc + (tm * self.straighten(&w).ok()?).with_tcap(self.tcap);
        }
        Some(acc)
    }

    fn claims_cocommutative(&self) -> bool {
        true
    }

    fn is_commutative(&self) -> bool {
        self.lie.is_abelian()
    }
}
