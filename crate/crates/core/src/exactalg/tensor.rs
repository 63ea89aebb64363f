use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use super::poly::{Monomial, Poly, T};
use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Key of a pure monomial tensor. Ordered by the last leg first, so that a
/// rank-2 tensor sorts by right factor and then by left factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TensorKey(pub Vec<Monomial>);

impl Ord for TensorKey {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.iter().rev().cmp(other.0.iter().rev())
    }
}

impl PartialOrd for TensorKey {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite sum of pure tensors over named carriers, always in normal form.
#[derive(Clone, Debug)]
pub struct Tensor<K> {
    carriers: Vec<String>,
    terms: BTreeMap<TensorKey, K>,
}

impl<K: Coeff> Tensor<K> {
    pub fn zero(carriers: &[&str]) -> Self {
        Tensor { carriers: carriers.iter().map(|s| s.to_string()).collect(), terms: BTreeMap::new() }
    }

    pub fn zero_like(&self) -> Self {
        Tensor { carriers: self.carriers.clone(), terms: BTreeMap::new() }
    }

    fn with_carriers(carriers: Vec<String>) -> Self {
        Tensor { carriers, terms: BTreeMap::new() }
    }

    /// The pure tensor `legs[0] ⊗ legs[1] ⊗ ...` expanded on monomials.
    pub fn pure(carriers: &[&str], legs: &[Poly<K>]) -> Self {
        let mut t = Self::zero(carriers);
        t.add_pure(K::one(), legs);
        t
    }

    /// Canonical form of an arbitrary list of weighted pure tensors.
    pub fn from_summands(carriers: &[&str], summands: &[(K, Vec<Poly<K>>)]) -> Result<Self> {
        let mut t = Self::zero(carriers);
        for (c, legs) in summands {
            if legs.len() != carriers.len() {
                return Err(Error::Dimension(format!(
                    "summand of rank {} in a rank-{} tensor",
                    legs.len(),
                    carriers.len()
                )));
            }
            t.add_pure(c.clone(), legs);
        }
        Ok(t)
    }

    pub fn carriers(&self) -> &[String] {
        &self.carriers
    }

    pub fn rank(&self) -> usize {
        self.carriers.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[Monomial], &K)> {
        self.terms.iter().map(|(k, c)| (k.0.as_slice(), c))
    }

    pub fn add_key(&mut self, key: Vec<Monomial>, c: K) {
        debug_assert_eq!(key.len(), self.carriers.len());
        if c.is_zero() {
            return;
        }
        let key = TensorKey(key);
        match self.terms.get_mut(&key) {
            Some(x) => {
                let s = x.clone() + c;
                if s.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    pub fn add_pure(&mut self, c: K, legs: &[Poly<K>]) {
        let mut partial: Vec<(Vec<Monomial>, K)> = vec![(Vec::new(), c)];
        for leg in legs {
            let mons = leg.monomials();
            let mut next = Vec::with_capacity(partial.len() * mons.len());
            for (key, c) in &partial {
                for (m, d) in &mons {
                    let mut k = key.clone();
                    k.push(m.clone());
                    next.push((k, c.clone() * d.clone()));
                }
            }
            partial = next;
        }
        for (k, c) in partial {
            self.add_key(k, c);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.carriers != other.carriers {
            return Err(Error::CarrierMismatch(self.carriers.clone(), other.carriers.clone()));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_key(k.0.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.scale(&(-K::one())))
    }

    pub fn add_assign(&mut self, other: &Self) {
        assert_eq!(self.carriers, other.carriers, "tensor carrier mismatch");
        for (k, c) in &other.terms {
            self.add_key(k.0.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &Self, s: &K) {
        assert_eq!(self.carriers, other.carriers, "tensor carrier mismatch");
        for (k, c) in &other.terms {
            self.add_key(k.0.clone(), c.clone() * s.clone());
        }
    }

    pub fn scale(&self, s: &K) -> Self {
        let mut out = self.zero_like();
        for (k, c) in &self.terms {
            out.add_key(k.0.clone(), c.clone() * s.clone());
        }
        out
    }

    /// Legs of one summand as polynomials.
    pub fn key_legs(key: &[Monomial]) -> Vec<Poly<K>> {
        key.iter().map(|m| Poly::term(K::one(), m)).collect()
    }

    /// Extends a multilinear map defined on monomial keys.
    pub fn map_terms(&self, carriers: &[&str], f: impl Fn(&[Monomial]) -> Tensor<K>) -> Result<Tensor<K>> {
        let mut out = Tensor::zero(carriers);
        for (k, c) in &self.terms {
            let img = f(&k.0);
            out.check(&img)?;
            out.add_scaled(&img, c);
        }
        Ok(out)
    }

    /// Bilinear extension of a map on pairs of keys.
    pub fn bilinear(
        &self,
        other: &Self,
        carriers: &[&str],
        f: impl Fn(&[Monomial], &[Monomial]) -> Tensor<K>,
    ) -> Result<Tensor<K>> {
        let mut out = Tensor::zero(carriers);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let img = f(&ka.0, &kb.0);
                out.check(&img)?;
                out.add_scaled(&img, &(ca.clone() * cb.clone()));
            }
        }
        Ok(out)
    }

    /// Applies a linear map on leg `i`.
    pub fn apply_leg(&self, i: usize, f: impl Fn(&Poly<K>) -> Poly<K>) -> Self {
        let mut out = self.zero_like();
        for (k, c) in &self.terms {
            let mut legs = Self::key_legs(&k.0);
            legs[i] = f(&legs[i]);
            out.add_pure(c.clone(), &legs);
        }
        out
    }

    /// Replaces leg `i` by a tensor (for example its coproduct).
    pub fn expand_leg(&self, i: usize, new_carriers: &[&str], f: impl Fn(&Poly<K>) -> Tensor<K>) -> Self {
        let mut carriers = self.carriers.clone();
        carriers.splice(i..=i, new_carriers.iter().map(|s| s.to_string()));
        let mut out = Tensor::with_carriers(carriers);
        for (k, c) in &self.terms {
            let img = f(&Poly::term(K::one(), &k.0[i]));
            for (ik, ic) in &img.terms {
                let mut key = k.0[..i].to_vec();
                key.extend(ik.0.iter().cloned());
                key.extend(k.0[i + 1..].iter().cloned());
                out.add_key(key, c.clone() * ic.clone());
            }
        }
        out
    }

    /// Collapses leg `i` through a scalar-valued map (for example the counit).
    pub fn contract_leg(&self, i: usize, f: impl Fn(&Poly<K>) -> Poly<K>) -> Self {
        let mut carriers = self.carriers.clone();
        carriers.remove(i);
        let mut out = Tensor::with_carriers(carriers);
        for (k, c) in &self.terms {
            let s = f(&Poly::term(K::one(), &k.0[i]));
            let mut legs = Self::key_legs(&k.0);
            legs.remove(i);
            if legs.is_empty() {
                out.add_key(Vec::new(), c.clone() * s.constant_term());
                continue;
            }
            let j = i.min(legs.len() - 1);
            legs[j] = if i < legs.len() { &s * &legs[j] } else { &legs[j] * &s };
            out.add_pure(c.clone(), &legs);
        }
        out
    }

    /// Multiplies all legs together into one polynomial.
    pub fn flatten(&self, mul: impl Fn(&Poly<K>, &Poly<K>) -> Poly<K>) -> Poly<K> {
        let mut acc = Poly::zero();
        for (k, c) in &self.terms {
            let legs = Self::key_legs(&k.0);
            let mut prod = legs[0].clone();
            for l in &legs[1..] {
                prod = mul(&prod, l);
            }
            acc = acc + prod.scale(c);
        }
        acc
    }

    /// Reorders legs: leg `j` of the result is leg `perm[j]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let carriers = perm.iter().map(|&j| self.carriers[j].clone()).collect();
        let mut out = Tensor::with_carriers(carriers);
        for (k, c) in &self.terms {
            out.add_key(perm.iter().map(|&j| k.0[j].clone()).collect(), c.clone());
        }
        out
    }

    /// Moves every power of `t` into leg `leg`, as for a scalar parameter.
    pub fn collect_t(&self, leg: usize) -> Self {
        let mut out = self.zero_like();
        for (k, c) in &self.terms {
            let total: u32 = k.0.iter().map(|m| m.exponent(T)).sum();
            let mut key: Vec<Monomial> = k.0.iter().map(|m| m.without(T)).collect();
            key[leg] = key[leg].mul(&Monomial::new(vec![(T.to_string(), total)]));
            out.add_key(key, c.clone());
        }
        out
    }

    /// Drops summands whose combined `t`-degree exceeds `cap`.
    pub fn truncate_total_t(&self, cap: u32) -> Self {
        let mut out = self.zero_like();
        for (k, c) in &self.terms {
            if k.0.iter().map(|m| m.exponent(T)).sum::<u32>() <= cap {
                out.add_key(k.0.clone(), c.clone());
            }
        }
        out
    }

    /// Sum of all coefficients after every variable is set to one.
    pub fn coefficient_sum(&self) -> K {
        self.terms.values().fold(K::zero(), |a, c| a + c.clone())
    }
}

impl<K: Coeff> PartialEq for Tensor<K> {
    fn eq(&self, other: &Self) -> bool {
        self.carriers == other.carriers && self.terms == other.terms
    }
}

impl<K: Coeff> fmt::Display for Tensor<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = c.display_parts();
            let sign = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sign}")?;
            if mag != "1" {
                write!(f, "{mag}*")?;
            }
            let legs: Vec<String> = k.0.iter().map(|m| m.to_string()).collect();
            write!(f, "({})", legs.join("⊗"))?;
        }
        Ok(())
    }
}
