use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Coeff;

/// Name of the formal deformation parameter.
pub const T: &str = "t";

/// Sort key for variable names: `q*` first, then `p*`, then other names, `t` last.
/// Numeric suffixes compare numerically so that `q2 < q10`.
pub fn var_order(a: &str, b: &str) -> Ordering {
    fn key(name: &str) -> (u8, &str, u64, &str) {
        let split = name
            .char_indices()
            .find(|(_, c)| c.is_ascii_digit())
            .map(|(i, _)| i)
            .unwrap_or(name.len());
        let (prefix, suffix) = name.split_at(split);
        let rank = match prefix {
            "t" if suffix.is_empty() => 3,
            "q" => 0,
            "p" => 1,
            _ => 2,
        };
        let num = suffix.parse::<u64>().unwrap_or(0);
        (rank, prefix, num, suffix)
    }
    key(a).cmp(&key(b))
}

/// A monomial independent of any variable universe: sorted `(name, exponent)`
/// pairs with positive exponents.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(String, u32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn new(mut pairs: Vec<(String, u32)>) -> Self {
        pairs.retain(|(_, e)| *e > 0);
        pairs.sort_by(|a, b| var_order(&a.0, &b.0));
        let mut out: Vec<(String, u32)> = Vec::with_capacity(pairs.len());
        for (v, e) in pairs {
            match out.last_mut() {
                Some((last, le)) if *last == v => *le += e,
                _ => out.push((v, e)),
            }
        }
        Monomial(out)
    }

    pub fn var(name: &str) -> Self {
        Monomial(vec![(name.to_string(), 1)])
    }

    pub fn pairs(&self) -> &[(String, u32)] {
        &self.0
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|(_, e)| e).sum()
    }

    pub fn exponent(&self, var: &str) -> u32 {
        self.0.iter().find(|(v, _)| v == var).map(|(_, e)| *e).unwrap_or(0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut pairs = self.0.clone();
        pairs.extend(other.0.iter().cloned());
        Monomial::new(pairs)
    }

    /// Splits into the part in `vars` and the remainder.
    pub fn split(&self, vars: &[String]) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.0.iter().cloned().partition(|(v, _)| vars.contains(v));
        (Monomial(a), Monomial(b))
    }

    pub fn without(&self, var: &str) -> Monomial {
        Monomial(self.0.iter().filter(|(v, _)| v != var).cloned().collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        // lexicographic on the common variable order, higher exponents first
        let mut i = 0;
        let mut j = 0;
        loop {
            match (self.0.get(i), other.0.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Less,
                (None, Some(_)) => return Ordering::Greater,
                (Some((va, ea)), Some((vb, eb))) => match var_order(va, vb) {
                    Ordering::Less => return Ordering::Less,
                    Ordering::Greater => return Ordering::Greater,
                    Ordering::Equal => match eb.cmp(ea) {
                        Ordering::Equal => {
                            i += 1;
                            j += 1;
                        }
                        o => return o,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, (v, e)) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            if *e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multivariate polynomial over named variables with exact coefficients.
///
/// Variables are kept sorted by [`var_order`]; no zero coefficient is ever
/// stored. When `tcap` is set, terms whose degree in [`T`] exceeds it are
/// dropped after every operation.
#[derive(Clone, Debug)]
pub struct Poly<K> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, K>,
    tcap: Option<u32>,
}

fn merge_vars(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let next = match (a.get(i), b.get(j)) {
            (Some(x), Some(y)) => match var_order(x, y) {
                Ordering::Less => {
                    i += 1;
                    x
                }
                Ordering::Greater => {
                    j += 1;
                    y
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    x
                }
            },
            (Some(x), None) => {
                i += 1;
                x
            }
            (None, Some(y)) => {
                j += 1;
                y
            }
            (None, None) => unreachable!(),
        };
        out.push(next.clone());
    }
    out
}

fn min_cap(a: Option<u32>, b: Option<u32>) -> Option<u32> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl<K: Coeff> Poly<K> {
    pub fn zero() -> Self {
        Poly { vars: Vec::new(), terms: BTreeMap::new(), tcap: None }
    }

    pub fn one() -> Self {
        Self::constant(K::one())
    }

    pub fn constant(c: K) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(Vec::new(), c);
        }
        p
    }

    pub fn var(name: &str) -> Self {
        Self::term(K::one(), &Monomial::var(name))
    }

    /// The parameter `t`.
    pub fn t() -> Self {
        Self::var(T)
    }

    pub fn term(c: K, m: &Monomial) -> Self {
        let vars: Vec<String> = m.0.iter().map(|(v, _)| v.clone()).collect();
        let exps: Vec<u32> = m.0.iter().map(|(_, e)| *e).collect();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Poly { vars, terms, tcap: None }
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, K)>>(it: I) -> Self {
        let mut acc = Self::zero();
        for (m, c) in it {
            acc.add_term(&m, c);
        }
        acc
    }

    pub fn with_tcap(mut self, cap: Option<u32>) -> Self {
        self.tcap = cap;
        self.truncate();
        self
    }

    pub fn tcap(&self) -> Option<u32> {
        self.tcap
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
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

    fn monomial_of(&self, exps: &[u32]) -> Monomial {
        Monomial(
            self.vars
                .iter()
                .zip(exps)
                .filter(|(_, e)| **e > 0)
                .map(|(v, e)| (v.clone(), *e))
                .collect(),
        )
    }

    /// Terms as `(monomial, coefficient)` pairs in ascending key order.
    pub fn monomials(&self) -> Vec<(Monomial, K)> {
        self.terms.iter().map(|(e, c)| (self.monomial_of(e), c.clone())).collect()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().sum()).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: &str) -> u32 {
        match self.var_index(var) {
            Some(i) => self.terms.keys().map(|e| e[i]).max().unwrap_or(0),
            None => 0,
        }
    }

    /// Degree excluding the parameter `t`.
    pub fn spatial_degree(&self) -> u32 {
        let ti = self.var_index(T);
        self.terms
            .keys()
            .map(|e| e.iter().enumerate().filter(|(i, _)| Some(*i) != ti).map(|(_, x)| x).sum())
            .max()
            .unwrap_or(0)
    }

    fn var_index(&self, var: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == var)
    }

    /// Constant term.
    pub fn constant_term(&self) -> K {
        self.terms
            .iter()
            .find(|(e, _)| e.iter().all(|x| *x == 0))
            .map(|(_, c)| c.clone())
            .unwrap_or_else(K::zero)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|x| *x == 0))
    }

    fn realign(&self, target: &[String]) -> BTreeMap<Vec<u32>, K> {
        if self.vars.as_slice() == target {
            return self.terms.clone();
        }
        let map: Vec<usize> = self
            .vars
            .iter()
            .map(|v| target.iter().position(|w| w == v).expect("target universe covers vars"))
            .collect();
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut ne = vec![0u32; target.len()];
                for (i, x) in e.iter().enumerate() {
                    ne[map[i]] = *x;
                }
                (ne, c.clone())
            })
            .collect()
    }

    fn truncate(&mut self) {
        if let (Some(cap), Some(ti)) = (self.tcap, self.var_index(T)) {
            self.terms.retain(|e, _| e[ti] <= cap);
        }
    }

    pub fn add_term(&mut self, m: &Monomial, c: K) {
        if c.is_zero() {
            return;
        }
        let mvars: Vec<String> = m.0.iter().map(|(v, _)| v.clone()).collect();
        if !mvars.iter().all(|v| self.vars.contains(v)) {
            let merged = merge_vars(&self.vars, &mvars);
            self.terms = self.realign(&merged);
            self.vars = merged;
        }
        let mut exps = vec![0u32; self.vars.len()];
        for (v, e) in &m.0 {
            exps[self.var_index(v).unwrap()] = *e;
        }
        if let (Some(cap), Some(ti)) = (self.tcap, self.var_index(T)) {
            if exps[ti] > cap {
                return;
            }
        }
        let entry = self.terms.entry(exps);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> K {
        if !m.0.iter().all(|(v, _)| self.vars.contains(v)) {
            return K::zero();
        }
        let mut exps = vec![0u32; self.vars.len()];
        for (v, e) in &m.0 {
            exps[self.var_index(v).unwrap()] = *e;
        }
        self.terms.get(&exps).cloned().unwrap_or_else(K::zero)
    }

    pub fn scale(&self, c: &K) -> Self {
        if c.is_zero() {
            return Poly { vars: self.vars.clone(), terms: BTreeMap::new(), tcap: self.tcap };
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(e, x)| (e.clone(), x.clone() * c.clone())).collect(),
            tcap: self.tcap,
        }
    }

    fn add_impl(&self, other: &Self, negate: bool) -> Self {
        let vars = merge_vars(&self.vars, &other.vars);
        let mut terms = self.realign(&vars);
        for (e, c) in other.realign(&vars) {
            let c = if negate { -c } else { c };
            match terms.get_mut(&e) {
                Some(x) => {
                    let s = x.clone() + c;
                    if s.is_zero() {
                        terms.remove(&e);
                    } else {
                        *x = s;
                    }
                }
                None => {
                    terms.insert(e, c);
                }
            }
        }
        let mut p = Poly { vars, terms, tcap: min_cap(self.tcap, other.tcap) };
        p.truncate();
        p
    }

    pub fn mul_poly(&self, other: &Self) -> Self {
        let vars = merge_vars(&self.vars, &other.vars);
        let a = self.realign(&vars);
        let b = other.realign(&vars);
        let cap = min_cap(self.tcap, other.tcap);
        let ti = vars.iter().position(|v| v == T);
        let mut terms: BTreeMap<Vec<u32>, K> = BTreeMap::new();
        for (ea, ca) in &a {
            for (eb, cb) in &b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if let (Some(cap), Some(ti)) = (cap, ti) {
                    if e[ti] > cap {
                        continue;
                    }
                }
                let c = ca.clone() * cb.clone();
                match terms.get_mut(&e) {
                    Some(x) => *x = x.clone() + c,
                    None => {
                        terms.insert(e, c);
                    }
                }
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Poly { vars, terms, tcap: cap }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one().with_tcap(self.tcap);
        for _ in 0..e {
            acc = acc.mul_poly(self);
        }
        acc
    }

    /// Partial derivative of the given order.
    pub fn diff(&self, var: &str, order: u32) -> Result<Self> {
        let Some(i) = self.var_index(var) else {
            if self.is_zero() {
                return Ok(self.clone());
            }
            return Err(Error::UnknownVariable(var.to_string()));
        };
        Ok(self.diff_at(i, order))
    }

    /// Partial derivative; a variable absent from the universe yields zero.
    pub fn d(&self, var: &str, order: u32) -> Self {
        match self.var_index(var) {
            Some(i) => self.diff_at(i, order),
            None if order == 0 => self.clone(),
            None => Poly { vars: self.vars.clone(), terms: BTreeMap::new(), tcap: self.tcap },
        }
    }

    fn diff_at(&self, i: usize, order: u32) -> Self {
        let mut terms = BTreeMap::new();
        for (e, c) in &self.terms {
            if e[i] < order {
                continue;
            }
            let mut factor = K::one();
            for k in 0..order {
                factor = factor * K::from_i64((e[i] - k) as i64);
            }
            let mut ne = e.clone();
            ne[i] -= order;
            terms.insert(ne, c.clone() * factor);
        }
        Poly { vars: self.vars.clone(), terms, tcap: self.tcap }
    }

    /// Simultaneous substitution of variables by polynomials.
    pub fn substitute(&self, map: &BTreeMap<String, Poly<K>>) -> Self {
        let mut cache: HashMap<(usize, u32), Poly<K>> = HashMap::new();
        let mut acc = Poly::zero().with_tcap(self.tcap);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(c.clone()).with_tcap(self.tcap);
            let mut kept = Vec::new();
            for (i, x) in e.iter().enumerate() {
                if *x == 0 {
                    continue;
                }
                match map.get(&self.vars[i]) {
                    Some(s) => {
                        let pw = cache.entry((i, *x)).or_insert_with(|| s.pow(*x)).clone();
                        term = term.mul_poly(&pw);
                    }
                    None => kept.push((self.vars[i].clone(), *x)),
                }
            }
            if !kept.is_empty() {
                term = term.mul_poly(&Poly::term(K::one(), &Monomial::new(kept)));
            }
            acc = acc + term;
        }
        acc
    }

    /// Sets `var = value`.
    pub fn eval_var(&self, var: &str, value: &K) -> Self {
        let mut m = BTreeMap::new();
        m.insert(var.to_string(), Poly::constant(value.clone()));
        self.substitute(&m)
    }

    /// Evaluates every variable in `point`; unspecified variables stay symbolic.
    pub fn eval(&self, point: &BTreeMap<String, K>) -> Self {
        let m = point.iter().map(|(k, v)| (k.clone(), Poly::constant(v.clone()))).collect();
        self.substitute(&m)
    }

    /// Renames variables.
    pub fn rename(&self, map: &BTreeMap<String, String>) -> Self {
        let mut out = Poly::zero().with_tcap(self.tcap);
        for (m, c) in self.monomials() {
            let pairs = m
                .0
                .into_iter()
                .map(|(v, e)| (map.get(&v).cloned().unwrap_or(v), e))
                .collect();
            out.add_term(&Monomial::new(pairs), c);
        }
        out
    }

    /// Coefficient of `var^k` as a polynomial in the remaining variables.
    pub fn coeff_of(&self, var: &str, k: u32) -> Self {
        let mut out = Poly::zero().with_tcap(self.tcap);
        for (m, c) in self.monomials() {
            if m.exponent(var) == k {
                out.add_term(&m.without(var), c);
            }
        }
        out
    }

    /// Groups terms by their part in `vars`: `self = sum_m m * rest_m`.
    pub fn split_by(&self, vars: &[String]) -> Vec<(Monomial, Poly<K>)> {
        let mut groups: BTreeMap<Monomial, Poly<K>> = BTreeMap::new();
        for (m, c) in self.monomials() {
            let (inside, rest) = m.split(vars);
            groups.entry(inside).or_insert_with(|| Poly::zero().with_tcap(self.tcap)).add_term(&rest, c);
        }
        groups.into_iter().collect()
    }

    /// Drops variables that no term uses.
    pub fn compact(&self) -> Self {
        Poly::from_terms(self.monomials()).with_tcap(self.tcap)
    }

    /// Maps coefficients into another field.
    pub fn map_coeffs<L: Coeff>(&self, f: impl Fn(&K) -> L) -> Poly<L> {
        let mut out = Poly::<L>::zero();
        for (m, c) in self.monomials() {
            out.add_term(&m, f(&c));
        }
        out.with_tcap(self.tcap)
    }

    /// Numerical evaluation with all variables assigned.
    pub fn eval_f64(&self, point: &BTreeMap<String, f64>) -> f64 {
        self.monomials()
            .iter()
            .map(|(m, c)| {
                m.pairs().iter().fold(c.to_f64(), |acc, (v, e)| {
                    acc * point.get(v).copied().unwrap_or(0.0).powi(*e as i32)
                })
            })
            .sum()
    }
}

impl<K: Coeff> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        if self.vars == other.vars {
            return self.terms == other.terms;
        }
        let vars = merge_vars(&self.vars, &other.vars);
        self.realign(&vars) == other.realign(&vars)
    }
}

impl<K: Coeff> Add for Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Self {
        self.add_impl(&rhs, false)
    }
}

impl<K: Coeff> Add for &Poly<K> {
    type Output = Poly<K>;
    fn add(self, rhs: Self) -> Poly<K> {
        self.add_impl(rhs, false)
    }
}

impl<K: Coeff> Sub for Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Self {
        self.add_impl(&rhs, true)
    }
}

impl<K: Coeff> Sub for &Poly<K> {
    type Output = Poly<K>;
    fn sub(self, rhs: Self) -> Poly<K> {
        self.add_impl(rhs, true)
    }
}

impl<K: Coeff> Mul for Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Self {
        self.mul_poly(&rhs)
    }
}

impl<K: Coeff> Mul for &Poly<K> {
    type Output = Poly<K>;
    fn mul(self, rhs: Self) -> Poly<K> {
        self.mul_poly(rhs)
    }
}

macro_rules! mixed_ops {
    ($tr:ident, $m:ident, $body:expr) => {
        impl<K: Coeff> $tr<Poly<K>> for &Poly<K> {
            type Output = Poly<K>;
            fn $m(self, rhs: Poly<K>) -> Poly<K> {
                $body(self, &rhs)
            }
        }

        impl<K: Coeff> $tr<&Poly<K>> for Poly<K> {
            type Output = Poly<K>;
            fn $m(self, rhs: &Poly<K>) -> Poly<K> {
                $body(&self, rhs)
            }
        }
    };
}

mixed_ops!(Add, add, |a: &Poly<K>, b: &Poly<K>| a.add_impl(b, false));
mixed_ops!(Sub, sub, |a: &Poly<K>, b: &Poly<K>| a.add_impl(b, true));
mixed_ops!(Mul, mul, |a: &Poly<K>, b: &Poly<K>| a.mul_poly(b));

impl<K: Coeff> Neg for Poly<K> {
    type Output = Poly<K>;
    fn neg(self) -> Self {
        self.scale(&(-K::one()))
    }
}

impl<K: Coeff> std::iter::Sum for Poly<K> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Poly::zero(), |a, b| a + b)
    }
}

impl<K: Coeff> fmt::Display for Poly<K> {
    /// Canonical emission: monomials in descending lexicographic order.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut mons = self.monomials();
        mons.sort_by(|a, b| a.0.cmp(&b.0));
        for (i, (m, c)) in mons.iter().enumerate() {
            let (neg, mag) = c.display_parts();
            let sign = match (i, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            };
            write!(f, "{sign}")?;
            if m.is_one() {
                write!(f, "{mag}")?;
            } else if mag == "1" {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag}*{m}")?;
            }
        }
        Ok(())
    }
}
