//! Univariate polynomials over Q, coefficients stored lowest degree first.

use num::{BigInt, Integer, Signed};
use num_traits::{One, Zero};

use super::linalg::{add, identity, matmul, scale, zeros, Mat};
use crate::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct UPoly(pub Vec<Rational>);

impl UPoly {
    pub fn new(mut c: Vec<Rational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    fn lead(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        UPoly::new(self.0.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        let g = |p: &Self, i: usize| p.0.get(i).cloned().unwrap_or_else(Rational::zero);
        UPoly::new((0..n).map(|i| g(self, i) + g(o, i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return UPoly(vec![]);
        }
        let mut c = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        UPoly::new(c)
    }

    pub fn neg(&self) -> Self {
        UPoly(self.0.iter().map(|c| -c).collect())
    }

    /// `(q, r)` with `self = q·d + r`.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let mut r = self.0.clone();
        let mut q = vec![Rational::zero(); r.len().saturating_sub(dd)];
        let l = d.lead();
        while r.len() > dd && !r.is_empty() {
            let k = r.len() - 1 - dd;
            let f = r.last().unwrap() / &l;
            for (i, c) in d.0.iter().enumerate() {
                r[k + i] -= &f * c;
            }
            q[k] = f;
            r.pop();
            while r.last().is_some_and(|x| x.is_zero()) {
                r.pop();
            }
        }
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        UPoly::new(self.0.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect())
    }

    /// `p / gcd(p, p')`, monic.
    pub fn squarefree(&self) -> Self {
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.0.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    /// `p(M)` by Horner's rule.
    pub fn eval_matrix(&self, m: &Mat<Rational>) -> Mat<Rational> {
        let n = m.len();
        self.0.iter().rev().fold(zeros(n, n), |acc, c| add(&matmul(&acc, m), &scale(&identity(n), c)))
    }

    /// Characteristic polynomial `det(x - M)` by Faddeev–LeVerrier.
    pub fn charpoly(m: &Mat<Rational>) -> Self {
        let n = m.len();
        let mut c = vec![Rational::zero(); n + 1];
        c[n] = Rational::one();
        let mut mk: Mat<Rational> = zeros(n, n);
        for k in 1..=n {
            // M_k = A M_{k-1} + c_{n-k+1} I
            let prev = add(&mk, &scale(&identity(n), &c[n - k + 1]));
            mk = matmul(m, &prev);
            let tr: Rational = (0..n).map(|i| mk[i][i].clone()).sum();
            c[n - k] = -tr / Rational::from_integer(BigInt::from(k));
        }
        UPoly::new(c)
    }

    /// Distinct rational roots, by the rational root theorem.
    pub fn rational_roots(&self) -> Vec<Rational> {
        let mut p = self.clone();
        let mut roots = Vec::new();
        if p.is_zero() {
            return roots;
        }
        while p.0.first().is_some_and(|c| c.is_zero()) {
            if !roots.contains(&Rational::zero()) {
                roots.push(Rational::zero());
            }
            p = UPoly::new(p.0[1..].to_vec());
        }
        let lcm = p.0.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = p.0.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let (a0, an) = (ints[0].abs(), ints.last().unwrap().abs());
        for num in divisors(&a0) {
            for den in divisors(&an) {
                for s in [1, -1] {
                    let x = Rational::new(num.clone() * s, den.clone());
                    if !roots.contains(&x) && p.eval(&x).is_zero() {
                        roots.push(x);
                    }
                }
            }
        }
        roots.sort();
        roots
    }
}

fn divisors(n: &BigInt) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= *n {
        if (n % &d).is_zero() {
            out.push(d.clone());
            let e = n / &d;
            if e != d {
                out.push(e);
            }
        }
        d += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&x| rat(x, 1)).collect())
    }

    #[test]
    fn arithmetic() {
        // (x - 1)^2 (x + 2)
        let p = up(&[1, -2, 1]).mul(&up(&[2, 1]));
        assert_eq!(p.squarefree(), up(&[-2, 1, 1]));
        assert_eq!(p.rational_roots(), vec![rat(-2, 1), rat(1, 1)]);
        let (q, r) = p.divrem(&up(&[-1, 1]));
        assert_eq!(q, up(&[-1, 1]).mul(&up(&[2, 1])));
        assert!(r.is_zero());
        assert_eq!(up(&[4, 0, 1]).rational_roots(), vec![]);
    }

    #[test]
    fn characteristic_polynomial() {
        let m: Mat<Rational> = vec![vec![rat(2, 1), rat(1, 1)], vec![rat(0, 1), rat(3, 1)]];
        let c = UPoly::charpoly(&m);
        assert_eq!(c, up(&[6, -5, 1]));
        assert!(super::super::linalg::is_zero(&c.eval_matrix(&m)));
    }
}
