use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{parse_poly, Poly};
use crate::hopf::LieAlgebra;
use crate::scalar::Coeff;
use crate::{QPoly, Rational};

fn xs(n: usize, prefix: &str) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

/// Polynomial group law on `R^n` in exponential coordinates, identity at the
/// origin. The law is written in `x1..xn` (first factor) and `y1..yn`
/// (second factor); the inverse in `x1..xn`.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupDescriptor {
    pub name: String,
    pub mul: Vec<QPoly>,
    pub inv: Vec<QPoly>,
}

fn subst<K: Coeff>(p: &QPoly, pairs: &[(&[String], &[Poly<K>])]) -> Poly<K> {
    let mut map: BTreeMap<String, Poly<K>> = BTreeMap::new();
    for (names, vals) in pairs {
        for (n, v) in names.iter().zip(vals.iter()) {
            map.insert(n.clone(), v.clone());
        }
    }
    p.map_coeffs(|c| K::from_ratio(c.numer(), c.denom())).substitute(&map)
}

impl GroupDescriptor {
    /// Builds and validates a group law.
    pub fn new(name: &str, mul: Vec<QPoly>, inv: Vec<QPoly>) -> Result<Self> {
        if mul.len() != inv.len() {
            return Err(Error::Dimension(format!("{} product components, {} inverse components", mul.len(), inv.len())));
        }
        let g = GroupDescriptor { name: name.to_string(), mul, inv };
        g.validate()?;
        Ok(g)
    }

    pub fn dim(&self) -> usize {
        self.mul.len()
    }

    pub fn x_vars(&self) -> Vec<String> {
        xs(self.dim(), "x")
    }

    pub fn y_vars(&self) -> Vec<String> {
        xs(self.dim(), "y")
    }

    /// `m(g, h)` for points given as polynomials.
    pub fn compose<K: Coeff>(&self, g: &[Poly<K>], h: &[Poly<K>]) -> Vec<Poly<K>> {
        let (x, y) = (self.x_vars(), self.y_vars());
        self.mul.iter().map(|m| subst(m, &[(&x, g), (&y, h)])).collect()
    }

    pub fn inverse_of<K: Coeff>(&self, g: &[Poly<K>]) -> Vec<Poly<K>> {
        let x = self.x_vars();
        self.inv.iter().map(|m| subst(m, &[(&x, g)])).collect()
    }

    fn point(names: &[String]) -> Vec<QPoly> {
        names.iter().map(|s| Poly::var(s)).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        let x = Self::point(&xs(n, "x"));
        let y = Self::point(&xs(n, "y"));
        let z = Self::point(&xs(n, "z"));
        let e = vec![QPoly::zero(); n];
        if self.compose(&e, &x) != x || self.compose(&x, &e) != x {
            return Err(Error::InvalidGroup("origin is not a two-sided identity".into()));
        }
        if self.compose(&x, &self.inverse_of(&x)) != e || self.compose(&self.inverse_of(&x), &x) != e {
            return Err(Error::InvalidGroup("inverse map is not a two-sided inverse".into()));
        }
        let lhs = self.compose(&self.compose(&x, &y), &z);
        let rhs = self.compose(&x, &self.compose(&y, &z));
        if lhs != rhs {
            return Err(Error::InvalidGroup("law is not associative".into()));
        }
        Ok(())
    }

    /// `∂m_k(x, y)/∂y_i` (left-invariant) or `∂m_k(y, x)/∂y_i` (right-invariant)
    /// at `y = 0`, written in the coordinates `coords`.
    fn fields(&self, coords: &[String], left: bool) -> Vec<Vec<QPoly>> {
        let n = self.dim();
        let c = Self::point(coords);
        let y = Self::point(&xs(n, "y"));
        let law = if left { self.compose(&c, &y) } else { self.compose(&y, &c) };
        let zero: BTreeMap<String, Rational> = xs(n, "y").into_iter().map(|v| (v, Rational::zero())).collect();
        (0..n)
            .map(|i| (0..n).map(|k| law[k].d(&format!("y{}", i + 1), 1).eval(&zero).compact()).collect())
            .collect()
    }

    /// Left-invariant fields `X̃_i`: entry `[i][k]` is the `∂/∂coords[k]` coefficient.
    pub fn left_invariant_fields(&self, coords: &[String]) -> Vec<Vec<QPoly>> {
        self.fields(coords, true)
    }

    /// Right-invariant fields `X̄_i`.
    pub fn right_invariant_fields(&self, coords: &[String]) -> Vec<Vec<QPoly>> {
        self.fields(coords, false)
    }

    /// Lie algebra from the second-order part of the law:
    /// `[X_i, X_j]_k = ∂²m_k/∂x_i∂y_j - ∂²m_k/∂x_j∂y_i` at the origin.
    pub fn lie_algebra(&self, symbols: &[String]) -> Result<LieAlgebra> {
        let n = self.dim();
        let zero: BTreeMap<String, Rational> =
            xs(n, "x").into_iter().chain(xs(n, "y")).map(|v| (v, Rational::zero())).collect();
        let d2 = |k: usize, i: usize, j: usize| -> Rational {
            self.mul[k].d(&format!("x{}", i + 1), 1).d(&format!("y{}", j + 1), 1).eval(&zero).constant_term()
        };
        let c = (0..n)
            .map(|i| (0..n).map(|j| (0..n).map(|k| d2(k, i, j) - d2(k, j, i)).collect()).collect())
            .collect();
        LieAlgebra::new(symbols.to_vec(), c)
    }

    /// Additive group `R^n`.
    pub fn abelian(n: usize) -> Self {
        let mul = (1..=n).map(|i| Poly::var(&format!("x{i}")) + Poly::var(&format!("y{i}"))).collect();
        let inv = (1..=n).map(|i| -Poly::var(&format!("x{i}"))).collect();
        GroupDescriptor { name: format!("R^{n}"), mul, inv }
    }

    /// `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+(xy'-yx')/2)`.
    pub fn heisenberg() -> Self {
        Self::parse(include_str!("../../data/heisenberg.grp")).expect("bundled group is valid")
    }

    /// Reads `dim n`, then `n` product components and `n` inverse components,
    /// one polynomial per line; optional `mul` and `inv` header lines and `#`
    /// comments are ignored.
    pub fn parse(text: &str) -> Result<Self> {
        let lines: Vec<(usize, &str)> = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty() && *l != "mul" && *l != "inv")
            .collect();
        let Some(&(ln, head)) = lines.first() else {
            return Err(Error::Parse { pos: 0, msg: "empty group file".into() });
        };
        let n: usize = head
            .strip_prefix("dim")
            .and_then(|s| s.trim().parse().ok())
            .ok_or(Error::Parse { pos: ln, msg: "expected `dim n`".into() })?;
        if lines.len() != 1 + 2 * n {
            return Err(Error::Parse { pos: ln, msg: format!("expected {} polynomial lines, found {}", 2 * n, lines.len() - 1) });
        }
        let allowed: Vec<String> = xs(n, "x").into_iter().chain(xs(n, "y")).collect();
        let mut polys = Vec::new();
        for (k, (ln, l)) in lines[1..].iter().enumerate() {
            let p: QPoly = parse_poly(l).map_err(|e| match e {
                Error::Parse { msg, .. } => Error::Parse { pos: *ln, msg },
                other => other,
            })?;
            let ok_vars: &[String] = if k < n { &allowed } else { &allowed[..n] };
            if let Some(v) = p.compact().vars().iter().find(|v| !ok_vars.contains(v)) {
                return Err(Error::UnknownVariable(v.clone()));
            }
            polys.push(p);
        }
        let inv = polys.split_off(n);
        let name = text
            .lines()
            .find_map(|l| l.trim().strip_prefix("# name:").map(|s| s.trim().to_string()))
            .unwrap_or_else(|| format!("group{n}"));
        Self::new(&name, polys, inv)
    }
}

/// Smooth action `τ : G × M → M` given by polynomials in the group
/// coordinates `x1..xn` and point coordinates `w1..wm`.
#[derive(Clone, Debug)]
pub struct ActionDescriptor {
    pub group: GroupDescriptor,
    pub dim_m: usize,
    pub tau: Vec<QPoly>,
}

impl ActionDescriptor {
    pub fn new(group: GroupDescriptor, tau: Vec<QPoly>) -> Result<Self> {
        let a = ActionDescriptor { dim_m: tau.len(), group, tau };
        a.validate()?;
        Ok(a)
    }

    pub fn w_vars(&self) -> Vec<String> {
        xs(self.dim_m, "w")
    }

    /// `τ(g, pt)`.
    pub fn act<K: Coeff>(&self, g: &[Poly<K>], pt: &[Poly<K>]) -> Vec<Poly<K>> {
        let (x, w) = (self.group.x_vars(), self.w_vars());
        self.tau.iter().map(|p| subst(p, &[(&x, g), (&w, pt)])).collect()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.group.dim();
        let e = vec![QPoly::zero(); n];
        let w: Vec<QPoly> = self.w_vars().iter().map(|s| Poly::var(s)).collect();
        if self.act(&e, &w) != w {
            return Err(Error::InvalidGroup("identity does not act trivially".into()));
        }
        let g: Vec<QPoly> = xs(n, "a").iter().map(|s| Poly::var(s)).collect();
        let h: Vec<QPoly> = xs(n, "b").iter().map(|s| Poly::var(s)).collect();
        if self.act(&g, &self.act(&h, &w)) != self.act(&self.group.compose(&g, &h), &w) {
            return Err(Error::InvalidGroup("τ(g, τ(h, x)) ≠ τ(gh, x)".into()));
        }
        Ok(())
    }

    /// Left translation of `G` on itself.
    pub fn regular(group: GroupDescriptor) -> Self {
        let n = group.dim();
        let w: Vec<QPoly> = xs(n, "w").iter().map(|s| Poly::var(s)).collect();
        let x: Vec<QPoly> = xs(n, "x").iter().map(|s| Poly::var(s)).collect();
        let tau = group.compose(&x, &w);
        ActionDescriptor { group, dim_m: n, tau }
    }

    /// The trivial action on `R^m`.
    pub fn trivial(group: GroupDescriptor, m: usize) -> Self {
        ActionDescriptor { group, dim_m: m, tau: xs(m, "w").iter().map(|s| Poly::var(s)).collect() }
    }
}
