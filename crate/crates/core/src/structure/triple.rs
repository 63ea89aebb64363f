use num_traits::{One, Zero};

use super::linalg::{
    bilinear, coords_in, identity, in_span, independent, intersect, lift, matmul, matvec, nullspace, rank, scale,
    solve, sub, transpose, vec_is_zero, zeros, Mat,
};
use crate::error::{Error, Result};
use crate::hopf::lie::{parse_lie_block, parse_rational};
use crate::hopf::LieAlgebra;
use crate::report::{Check, Report};
use crate::scalar::Coeff;
use crate::Rational;

fn unit(n: usize, i: usize) -> Vec<Rational> {
    (0..n).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect()
}

fn fmt_vec<K: Coeff>(v: &[K]) -> String {
    let parts: Vec<String> = v
        .iter()
        .map(|c| {
            let (neg, mag) = c.display_parts();
            if neg {
                format!("-{mag}")
            } else {
                mag
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

/// `(g, σ, Ω)`: a Lie algebra with an involution and a skew form, all in the
/// basis of `lie`. `sigma` acts on coordinate columns; `omega[i][j] = Ω(e_i, e_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SymplecticTriple {
    pub name: String,
    pub lie: LieAlgebra,
    pub sigma: Mat<Rational>,
    pub omega: Mat<Rational>,
}

/// A triple with `Ω = δξ`, where `δξ(X, Y) = -ξ([X, Y])`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExactTriple {
    pub triple: SymplecticTriple,
    pub xi: Vec<Rational>,
}

/// Output of [`central_extension`].
#[derive(Clone, Debug)]
pub struct Extension {
    pub exact: ExactTriple,
    /// False when the input was already exact and is returned unchanged.
    pub extended: bool,
    pub report: Report,
}

/// Caller-supplied hypotheses for the HI-split diagnostics.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TripleFlags {
    pub indecomposable: bool,
    pub non_flat: bool,
}

impl TripleFlags {
    pub fn both() -> Self {
        TripleFlags { indecomposable: true, non_flat: true }
    }

    pub fn set(&self) -> bool {
        self.indecomposable && self.non_flat
    }
}

/// Result of [`hi_split_diagnostics`].
#[derive(Clone, Debug)]
pub struct HiSplit {
    pub holonomy_isotropic: bool,
    pub derived_abelian: bool,
    /// Abelian `σ`-stable complement of `[g, g]` inside `p`, if the extension splits.
    pub complement: Option<Vec<Vec<Rational>>>,
    pub derived: Vec<Vec<Rational>>,
    /// `a` and `l = [k, p]` dual Lagrangians; evaluated only when split.
    pub dual_lagrangians: Option<bool>,
    pub report: Report,
}

impl SymplecticTriple {
    pub fn new(name: &str, lie: LieAlgebra, sigma: Mat<Rational>, omega: Mat<Rational>) -> Result<Self> {
        let n = lie.dim();
        for (what, m) in [("sigma", &sigma), ("omega", &omega)] {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::Dimension(format!("{what} must be {n}x{n}")));
            }
        }
        Ok(SymplecticTriple { name: name.to_string(), lie, sigma, omega })
    }

    pub fn dim(&self) -> usize {
        self.lie.dim()
    }

    /// `+1` eigenspace of `σ`.
    pub fn k_basis(&self) -> Vec<Vec<Rational>> {
        nullspace(&sub(&self.sigma, &identity(self.dim())), self.dim())
    }

    /// `-1` eigenspace of `σ`.
    pub fn p_basis(&self) -> Vec<Vec<Rational>> {
        nullspace(&super::linalg::add(&self.sigma, &identity(self.dim())), self.dim())
    }

    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        self.lie.bracket(x, y)
    }

    pub fn omega_of(&self, x: &[Rational], y: &[Rational]) -> Rational {
        bilinear(&self.omega, x, y)
    }

    /// Span of all brackets between the two families.
    pub fn bracket_span(&self, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
        let all: Vec<Vec<Rational>> = a.iter().flat_map(|x| b.iter().map(move |y| self.bracket(x, y))).collect();
        independent(&all)
    }

    /// `δξ` as a matrix.
    pub fn delta(&self, xi: &[Rational]) -> Mat<Rational> {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| -super::linalg::dot(&self.bracket(&unit(n, i), &unit(n, j)), xi)).collect())
            .collect()
    }

    /// Some `ξ` with `δξ = Ω`, preferring `ξ(p) = 0`.
    pub fn primitive(&self) -> Option<Vec<Rational>> {
        let n = self.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rows.push(self.bracket(&unit(n, i), &unit(n, j)).into_iter().map(|c| -c).collect::<Vec<_>>());
                rhs.push(self.omega[i][j].clone());
            }
        }
        let mut constrained = rows.clone();
        let mut crhs = rhs.clone();
        for p in self.p_basis() {
            constrained.push(p);
            crhs.push(Rational::zero());
        }
        solve(&constrained, &crhs, n).or_else(|| solve(&rows, &rhs, n))
    }

    pub fn is_exact(&self) -> bool {
        self.primitive().is_some()
    }

    fn check_involution(&self) -> Check {
        let n = self.dim();
        Check::from_bool("sigma_involution", matmul(&self.sigma, &self.sigma) == identity(n), || {
            "σ² ≠ Id".into()
        })
    }

    fn check_automorphism(&self) -> Check {
        let n = self.dim();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Check::over("sigma_automorphism", &pairs, |&(i, j)| {
            let (x, y) = (unit(n, i), unit(n, j));
            let lhs = matvec(&self.sigma, &self.bracket(&x, &y));
            let rhs = self.bracket(&matvec(&self.sigma, &x), &matvec(&self.sigma, &y));
            (lhs != rhs).then(|| format!("σ[{}, {}] ≠ [σ{0}, σ{1}]", self.lie.symbols[i], self.lie.symbols[j]))
        })
    }

    fn check_pp(&self, name: &str) -> Check {
        let (k, p) = (self.k_basis(), self.p_basis());
        let pp = self.bracket_span(&p, &p);
        let ok = pp.len() == k.len() && pp.iter().all(|v| in_span(&k, v));
        Check::from_bool(name, ok, || format!("dim [p,p] = {}, dim k = {}", pp.len(), k.len()))
    }

    fn check_antisymmetric(&self) -> Check {
        Check::from_bool("omega_antisymmetric", self.omega == scale(&transpose(&self.omega), &-Rational::one()), || {
            "Ω is not skew".into()
        })
    }

    fn check_cocycle(&self) -> Check {
        let n = self.dim();
        let triples: Vec<(usize, usize, usize)> =
            (0..n).flat_map(|i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| (i, j, k)))).collect();
        Check::over("omega_cocycle", &triples, |&(i, j, k)| {
            let e = |a| unit(n, a);
            let s = self.omega_of(&self.bracket(&e(i), &e(j)), &e(k))
                + self.omega_of(&self.bracket(&e(j), &e(k)), &e(i))
                + self.omega_of(&self.bracket(&e(k), &e(i)), &e(j));
            (!s.is_zero()).then(|| format!("cyclic sum on ({}, {}, {}) is {s}", i + 1, j + 1, k + 1))
        })
    }

    fn check_radical(&self, name: &str) -> Check {
        let n = self.dim();
        let k = self.k_basis();
        Check::over(name, &k, |x| {
            (0..n)
                .find(|&j| !self.omega_of(x, &unit(n, j)).is_zero())
                .map(|j| format!("Ω({}, e{}) ≠ 0", fmt_vec(x), j + 1))
        })
    }

    fn check_nondegenerate(&self) -> Check {
        let p = self.p_basis();
        if p.is_empty() {
            return Check::fail("omega_p_nondegenerate", 0, "p is zero-dimensional (degenerate)".into());
        }
        let gram: Mat<Rational> = p.iter().map(|x| p.iter().map(|y| self.omega_of(x, y)).collect()).collect();
        let r = rank(&gram);
        Check::from_bool("omega_p_nondegenerate", r == p.len(), || format!("rank Ω|p = {r} < dim p = {}", p.len()))
    }

    fn check_faithful(&self) -> Check {
        let (k, p) = (self.k_basis(), self.p_basis());
        let images: Vec<Vec<Rational>> = k
            .iter()
            .map(|x| p.iter().flat_map(|y| self.bracket(x, y)).collect::<Vec<_>>())
            .collect();
        let r = if images.is_empty() { 0 } else { rank(&images) };
        Check::from_bool("k_faithful_on_p", r == k.len(), || format!("ad: k -> End(p) has rank {r} < dim k = {}", k.len()))
    }

    /// Every defining property of a symplectic triple, the Hamiltonian
    /// criterion, and the HI equivalence.
    pub fn validate(&self) -> Report {
        let mut r = Report::new();
        r.push(self.check_involution());
        r.push(self.check_automorphism());
        r.push(self.check_pp("pp_equals_k"));
        r.push(self.check_faithful());
        r.push(self.check_antisymmetric());
        r.push(self.check_cocycle());
        r.push(self.check_radical("k_in_radical"));
        r.push(self.check_nondegenerate());
        match self.primitive() {
            Some(xi) => r.note(format!("exact: Ω = δξ with ξ = {}", fmt_vec(&xi))),
            None => r.note("not exact: no ξ with δξ = Ω"),
        }
        let (iso, ab) = (self.kp_isotropic(), self.derived_abelian());
        r.push(hi_equivalence(iso, ab));
        r
    }

    /// `[k, p]` isotropic for `Ω`.
    pub fn kp_isotropic(&self) -> bool {
        let kp = self.bracket_span(&self.k_basis(), &self.p_basis());
        kp.iter().all(|x| kp.iter().all(|y| self.omega_of(x, y).is_zero()))
    }

    pub fn derived(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        let e: Vec<Vec<Rational>> = (0..n).map(|i| unit(n, i)).collect();
        self.bracket_span(&e, &e)
    }

    pub fn derived_abelian(&self) -> bool {
        let d = self.derived();
        d.iter().all(|x| d.iter().all(|y| vec_is_zero(&self.bracket(x, y))))
    }

    /// Center of the Lie algebra.
    pub fn center(&self) -> Vec<Vec<Rational>> {
        let n = self.dim();
        // rows: for each basis e_j and component k, Σ_i z_i c[i][j][k] = 0
        let mut m = Vec::new();
        for j in 0..n {
            for k in 0..n {
                m.push((0..n).map(|i| self.lie.c[i][j][k].clone()).collect::<Vec<_>>());
            }
        }
        nullspace(&m, n)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("# name: {}\n", self.name);
        s.push_str(&self.lie.to_text());
        let rows = |m: &Mat<Rational>| {
            m.iter().map(|r| r.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ") + "\n").collect::<String>()
        };
        s.push_str("sigma\n");
        s.push_str(&rows(&self.sigma));
        s.push_str("omega\n");
        s.push_str(&rows(&self.omega));
        s
    }

    /// Lie-algebra block followed by `sigma` and `omega` sections of `n` rows
    /// each and an optional one-row `xi` section.
    pub fn parse(text: &str) -> Result<(Self, Option<Vec<Rational>>)> {
        let (lie, rest) = parse_lie_block(text)?;
        let n = lie.dim();
        let mut sections: Vec<(String, usize, Vec<Vec<Rational>>)> = Vec::new();
        for (ln, l) in rest {
            if matches!(l.as_str(), "sigma" | "omega" | "xi") {
                sections.push((l.clone(), ln, vec![]));
                continue;
            }
            let Some(cur) = sections.last_mut() else {
                return Err(Error::Parse { pos: ln, msg: format!("unexpected line `{l}`") });
            };
            let row: Vec<Rational> = l.split_whitespace().map(|t| parse_rational(t, ln)).collect::<Result<_>>()?;
            if row.len() != n {
                return Err(Error::Parse { pos: ln, msg: format!("expected {n} entries") });
            }
            cur.2.push(row);
        }
        let take = |name: &str, rows: usize| -> Result<Option<Mat<Rational>>> {
            match sections.iter().find(|s| s.0 == name) {
                None => Ok(None),
                Some((_, ln, m)) if m.len() != rows => {
                    Err(Error::Parse { pos: *ln, msg: format!("section {name} needs {rows} rows, found {}", m.len()) })
                }
                Some((_, _, m)) => Ok(Some(m.clone())),
            }
        };
        let sigma = take("sigma", n)?.ok_or(Error::Parse { pos: 0, msg: "missing sigma section".into() })?;
        let omega = take("omega", n)?.ok_or(Error::Parse { pos: 0, msg: "missing omega section".into() })?;
        let xi = take("xi", 1)?.map(|mut m| m.remove(0));
        let name = text
            .lines()
            .find_map(|l| l.trim().strip_prefix("# name:").map(|s| s.trim().to_string()))
            .unwrap_or_else(|| "triple".into());
        Ok((SymplecticTriple::new(&name, lie, sigma, omega)?, xi))
    }
}

fn hi_equivalence(iso: bool, ab: bool) -> Check {
    Check::from_bool("hi_equivalence", iso == ab, || {
        format!("[k,p] isotropic = {iso} but [g,g] abelian = {ab}")
    })
}

impl ExactTriple {
    pub fn validate(&self) -> Report {
        let t = &self.triple;
        let mut r = Report::new();
        r.push(t.check_involution());
        r.push(t.check_automorphism());
        r.push(t.check_pp("pp_equals_l"));
        r.push(Check::from_bool("omega_coboundary", t.delta(&self.xi) == t.omega, || {
            format!("δξ ≠ Ω for ξ = {}", fmt_vec(&self.xi))
        }));
        r.push(t.check_radical("l_in_radical"));
        r.push(t.check_nondegenerate());
        let p = t.p_basis();
        r.push(Check::from_bool(
            "xi_vanishes_on_p",
            p.iter().all(|x| super::linalg::dot(x, &self.xi).is_zero()),
            || "ξ(p) ≠ 0".into(),
        ));
        r
    }
}

/// `h(g) = g ⊕ RE` with `[X, Y] = Ω(X, Y) E + [X, Y]_g`, `σ` extended by
/// the identity on `E` and `Ω` extended by zero. An exact input is returned
/// unchanged.
pub fn central_extension(t: &SymplecticTriple) -> Result<Extension> {
    if let Some(xi) = t.primitive() {
        let exact = ExactTriple { triple: t.clone(), xi };
        let mut report = exact.validate();
        report.note("input is already exact; returned unchanged");
        return Ok(Extension { exact, extended: false, report });
    }
    let n = t.dim();
    let m = n + 1;
    let mut entries = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                if !t.lie.c[i][j][k].is_zero() {
                    entries.push((i, j, k, t.lie.c[i][j][k].clone()));
                }
            }
            if !t.omega[i][j].is_zero() {
                entries.push((i, j, n, t.omega[i][j].clone()));
            }
        }
    }
    let mut symbols = t.lie.symbols.clone();
    symbols.push(if symbols.contains(&"E".to_string()) { "E_".into() } else { "E".into() });
    let lie = LieAlgebra::from_entries(symbols, &entries)?;
    let mut sigma = zeros(m, m);
    let mut omega = zeros(m, m);
    for i in 0..n {
        for j in 0..n {
            sigma[i][j] = t.sigma[i][j].clone();
            omega[i][j] = t.omega[i][j].clone();
        }
    }
    sigma[n][n] = Rational::one();
    let h = SymplecticTriple::new(&format!("{} (central extension)", t.name), lie, sigma, omega)?;
    let xi = h.primitive().ok_or_else(|| Error::NotExact("central extension is not exact".into()))?;
    let exact = ExactTriple { triple: h, xi };
    let mut report = exact.validate();
    let z = exact.triple.center().len();
    report.push(Check::from_bool("center_dim_at_most_one", z <= 1, || format!("center has dimension {z}")));
    Ok(Extension { exact, extended: true, report })
}

/// HI equivalence, the split test and, under the flags, `a`–`l` duality.
pub fn hi_split_diagnostics(t: &SymplecticTriple, flags: TripleFlags) -> HiSplit {
    let mut report = Report::new();
    let iso = t.kp_isotropic();
    let ab = t.derived_abelian();
    report.push(hi_equivalence(iso, ab));
    report.note(format!("holonomy isotropic: {iso}"));
    report.note(format!("[g,g] abelian: {ab}"));
    let derived = t.derived();
    let complement = if ab { split_complement(t, &derived) } else { None };
    report.note(format!("split: {}", complement.is_some()));
    let mut dual = None;
    if let Some(a) = &complement {
        let l = t.bracket_span(&t.k_basis(), &t.p_basis());
        let pairing: Mat<Rational> = a.iter().map(|x| l.iter().map(|y| t.omega_of(x, y)).collect()).collect();
        let iso_a = a.iter().all(|x| a.iter().all(|y| t.omega_of(x, y).is_zero()));
        let iso_l = l.iter().all(|x| l.iter().all(|y| t.omega_of(x, y).is_zero()));
        let nondeg = a.len() == l.len() && (a.is_empty() || rank(&pairing) == a.len());
        dual = Some(iso_a && iso_l && nondeg && 2 * a.len() == t.p_basis().len());
        if flags.set() {
            report.push(Check::from_bool("a_l_duality", nondeg, || {
                format!("Ω pairing a × [k,p] is not perfect (dim a = {}, dim l = {})", a.len(), l.len())
            }));
        }
    } else if flags.set() && ab {
        report.note("duality not evaluated: extension does not split");
    }
    HiSplit { holonomy_isotropic: iso, derived_abelian: ab, complement, derived, dual_lagrangians: dual, report }
}

/// Abelian complement of `b = [g, g]` inside `p`: a graph `w + f(w)` over a
/// complement `W` of `p ∩ b` in `p`, with `f : W → p ∩ b` solved linearly
/// (the quadratic term vanishes because `b` is abelian).
fn split_complement(t: &SymplecticTriple, b: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = t.dim();
    let p = t.p_basis();
    if !t.k_basis().iter().all(|k| in_span(b, k)) {
        return None;
    }
    let pb = intersect(&p, b);
    let mut basis = pb.clone();
    let mut w = Vec::new();
    for v in &p {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(&trial) == trial.len() {
            basis = trial;
            w.push(v.clone());
        }
    }
    if w.len() + b.len() != n {
        return None;
    }
    let (dw, du) = (w.len(), pb.len());
    // unknown F[r][i] at index r * dw + i
    let nv = du * dw;
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..dw {
        for j in i + 1..dw {
            let base = t.bracket(&w[i], &w[j]);
            let mut coeffs = vec![vec![Rational::zero(); nv]; n];
            for r in 0..du {
                let wi_u = t.bracket(&w[i], &pb[r]);
                let u_wj = t.bracket(&pb[r], &w[j]);
                for c in 0..n {
                    coeffs[c][r * dw + j] += wi_u[c].clone();
                    coeffs[c][r * dw + i] += u_wj[c].clone();
                }
            }
            for c in 0..n {
                rows.push(coeffs[c].clone());
                rhs.push(-base[c].clone());
            }
        }
    }
    let f = if rows.is_empty() { vec![Rational::zero(); nv] } else { solve(&rows, &rhs, nv)? };
    Some(
        (0..dw)
            .map(|i| {
                let mut v = w[i].clone();
                for r in 0..du {
                    for c in 0..n {
                        v[c] += f[r * dw + i].clone() * pb[r][c].clone();
                    }
                }
                v
            })
            .collect(),
    )
}

/// Split exact symplectic Lie algebra `s = d ⋊ a` with `d = R^k`, `a = R^m`
/// abelian; basis `D1..Dk, A1..Am`, `[A_i, D_j] = ρ(A_i) D_j`.
#[derive(Clone, Debug, PartialEq)]
pub struct SplitSymplecticLieAlgebra {
    pub name: String,
    pub rho: Vec<Mat<Rational>>,
    pub omega: Mat<Rational>,
}

impl SplitSymplecticLieAlgebra {
    pub fn new(name: &str, rho: Vec<Mat<Rational>>, omega: Mat<Rational>) -> Result<Self> {
        let s = SplitSymplecticLieAlgebra { name: name.to_string(), rho, omega };
        let n = s.d_dim() + s.a_dim();
        if s.rho.iter().any(|r| r.len() != s.d_dim() || r.iter().any(|row| row.len() != s.d_dim())) {
            return Err(Error::Dimension("all ρ(A_i) must be square of the same size".into()));
        }
        if s.omega.len() != n || s.omega.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("ω must be {n}x{n}")));
        }
        s.lie()?;
        Ok(s)
    }

    /// `ω = δη`.
    pub fn from_eta(name: &str, rho: Vec<Mat<Rational>>, eta: &[Rational]) -> Result<Self> {
        let n = rho.first().map_or(0, |r| r.len()) + rho.len();
        let lie = SplitSymplecticLieAlgebra { name: name.to_string(), rho: rho.clone(), omega: vec![] }.lie()?;
        let omega = (0..n)
            .map(|i| (0..n).map(|j| -super::linalg::dot(&lie.bracket(&unit(n, i), &unit(n, j)), eta)).collect())
            .collect();
        SplitSymplecticLieAlgebra::new(name, rho, omega)
    }

    pub fn d_dim(&self) -> usize {
        self.rho.first().map_or(0, |r| r.len())
    }

    pub fn a_dim(&self) -> usize {
        self.rho.len()
    }

    pub fn lie(&self) -> Result<LieAlgebra> {
        let (k, m) = (self.d_dim(), self.a_dim());
        let mut symbols: Vec<String> = (1..=k).map(|i| format!("D{i}")).collect();
        symbols.extend((1..=m).map(|i| format!("A{i}")));
        let mut entries = Vec::new();
        for (i, r) in self.rho.iter().enumerate() {
            for j in 0..k {
                for (l, row) in r.iter().enumerate() {
                    if !row[j].is_zero() {
                        entries.push((k + i, j, l, row[j].clone()));
                    }
                }
            }
        }
        LieAlgebra::from_entries(symbols, &entries)
    }

    /// `η` with `δη = ω`.
    pub fn eta(&self) -> Option<Vec<Rational>> {
        let lie = self.lie().ok()?;
        let t = SymplecticTriple { name: String::new(), lie, sigma: vec![], omega: self.omega.clone() };
        let n = t.dim();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                rows.push(t.bracket(&unit(n, i), &unit(n, j)).into_iter().map(|c| -c).collect::<Vec<_>>());
                rhs.push(self.omega[i][j].clone());
            }
        }
        solve(&rows, &rhs, n)
    }

    pub fn signature(&self) -> Signature {
        let lie = self.lie().expect("validated at construction");
        let c: Vec<Vec<Vec<Rational>>> = lie.c.clone();
        signature(&c, &self.omega)
    }
}

/// Isomorphism invariants compared in round trips.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Signature {
    pub dim: usize,
    pub derived_series: Vec<usize>,
    pub omega_rank: usize,
}

/// Dimensions of the derived series and the rank of `ω` for structure
/// constants `c[i][j][k]` over any field.
pub fn signature<K: Coeff>(c: &[Vec<Vec<K>>], omega: &Mat<K>) -> Signature {
    let n = c.len();
    let br = |x: &[K], y: &[K]| -> Vec<K> {
        let mut out = vec![K::zero(); n];
        for i in 0..n {
            for j in 0..n {
                let s = x[i].clone() * y[j].clone();
                if s.is_zero() {
                    continue;
                }
                for k in 0..n {
                    out[k] = out[k].clone() + s.clone() * c[i][j][k].clone();
                }
            }
        }
        out
    };
    let mut cur: Vec<Vec<K>> = super::linalg::identity(n);
    let mut series = vec![n];
    loop {
        let next = independent(&cur.iter().flat_map(|x| cur.iter().map(|y| br(x, y))).collect::<Vec<_>>());
        let next: Vec<Vec<K>> = next.into_iter().filter(|v| !vec_is_zero(v)).collect();
        if next.len() == cur.len() {
            break;
        }
        series.push(next.len());
        cur = next;
        if cur.is_empty() {
            break;
        }
    }
    Signature { dim: n, derived_series: series, omega_rank: if n == 0 { 0 } else { rank(omega) } }
}

/// `g = (d ⊕ d) ⋊_{ρ ⊕ ρ̄} a` with `σ(X, Y, a) = (Y, X, -a)`, `ξ(X, X) = η(X)`,
/// `ξ(p) = 0` and `Ω = δξ`. Basis: `D1..Dk` (first copy), `D1'..Dk'`, `A1..Am`.
pub fn elementary_from_symplectic_lie_algebra(s: &SplitSymplecticLieAlgebra) -> Result<ExactTriple> {
    let eta = s.eta().ok_or_else(|| Error::NotExact(format!("ω on {} is not δη for any η", s.name)))?;
    let (k, m) = (s.d_dim(), s.a_dim());
    let n = 2 * k + m;
    let mut symbols: Vec<String> = (1..=k).map(|i| format!("D{i}")).collect();
    symbols.extend((1..=k).map(|i| format!("D{i}'")));
    symbols.extend((1..=m).map(|i| format!("A{i}")));
    let mut entries = Vec::new();
    for (i, r) in s.rho.iter().enumerate() {
        for j in 0..k {
            for (l, row) in r.iter().enumerate() {
                if !row[j].is_zero() {
                    entries.push((2 * k + i, j, l, row[j].clone()));
                    entries.push((2 * k + i, k + j, k + l, -row[j].clone()));
                }
            }
        }
    }
    let lie = LieAlgebra::from_entries(symbols, &entries)?;
    let mut sigma = zeros(n, n);
    for j in 0..k {
        sigma[k + j][j] = Rational::one();
        sigma[j][k + j] = Rational::one();
    }
    for i in 0..m {
        sigma[2 * k + i][2 * k + i] = -Rational::one();
    }
    // (e_j, 0) = ½(e_j, e_j) + ½(e_j, -e_j)
    let half = Rational::new(1.into(), 2.into());
    let mut xi = vec![Rational::zero(); n];
    for j in 0..k {
        xi[j] = eta[j].clone() * half.clone();
        xi[k + j] = eta[j].clone() * half.clone();
    }
    let mut t = SymplecticTriple::new(&format!("elementary({})", s.name), lie, sigma, zeros(n, n))?;
    t.omega = t.delta(&xi);
    Ok(ExactTriple { triple: t, xi })
}

/// `b ⋊_ρ a` data of an elementary solvable triple, with `σ|_b` and `ξ|_b`
/// in a basis of `b`.
#[derive(Clone, Debug, PartialEq)]
pub struct ElementaryInstance {
    pub name: String,
    pub rho: Vec<Mat<Rational>>,
    pub sigma_b: Mat<Rational>,
    pub xi_b: Vec<Rational>,
}

impl ElementaryInstance {
    pub fn new(name: &str, rho: Vec<Mat<Rational>>, sigma_b: Mat<Rational>, xi_b: Vec<Rational>) -> Result<Self> {
        let inst = ElementaryInstance { name: name.to_string(), rho, sigma_b, xi_b };
        let n = inst.b_dim();
        if inst.rho.iter().any(|r| r.len() != n || r.iter().any(|x| x.len() != n)) || inst.xi_b.len() != n {
            return Err(Error::Dimension(format!("ρ(a_i), σ|b and ξ|b must all live on a {n}-dimensional b")));
        }
        if matmul(&inst.sigma_b, &inst.sigma_b) != identity(n) {
            return Err(Error::Invalid("σ|b is not an involution".into()));
        }
        for r in &inst.rho {
            if matmul(&matmul(&inst.sigma_b, r), &inst.sigma_b) != scale(r, &-Rational::one()) {
                return Err(Error::Invalid("σ|b does not anticommute with ρ(a); a ⊄ p".into()));
            }
        }
        Ok(inst)
    }

    pub fn b_dim(&self) -> usize {
        self.sigma_b.len()
    }

    pub fn a_dim(&self) -> usize {
        self.rho.len()
    }

    /// Reads `b = [g, g]`, the split complement `a` and `ρ = ad|_b` off an
    /// HI-split exact triple.
    pub fn from_triple(t: &ExactTriple) -> Result<Self> {
        let tr = &t.triple;
        let diag = hi_split_diagnostics(tr, TripleFlags::default());
        let a = diag
            .complement
            .ok_or_else(|| Error::Invalid(format!("{} is not HI split", tr.name)))?;
        let b = diag.derived;
        let in_b = |v: &[Rational]| coords_in(&b, v).ok_or_else(|| Error::Invalid("[g,g] is not ad-stable".into()));
        let rho = a
            .iter()
            .map(|x| -> Result<Mat<Rational>> {
                let cols: Vec<Vec<Rational>> = b.iter().map(|y| in_b(&tr.bracket(x, y))).collect::<Result<_>>()?;
                Ok(transpose(&cols))
            })
            .collect::<Result<Vec<_>>>()?;
        let sig_cols: Vec<Vec<Rational>> = b.iter().map(|y| in_b(&matvec(&tr.sigma, y))).collect::<Result<_>>()?;
        let xi_b = b.iter().map(|y| super::linalg::dot(y, &t.xi)).collect();
        ElementaryInstance::new(&tr.name, rho, transpose(&sig_cols), xi_b)
    }

    /// `Ω(a_i, X) = -ξ(ρ(a_i) X)` for `X ∈ b^c`.
    pub fn omega_ab<K: Coeff>(&self, i: usize, x: &[K]) -> K {
        let r: Mat<K> = lift(&self.rho[i]);
        let xi: Vec<K> = super::linalg::lift_vec(&self.xi_b);
        -super::linalg::dot(&xi, &matvec(&r, x))
    }
}

/// Simple matrix `diag(entries)`.
pub fn diag(entries: &[Rational]) -> Mat<Rational> {
    let n = entries.len();
    let mut m = zeros(n, n);
    for (i, e) in entries.iter().enumerate() {
        m[i][i] = e.clone();
    }
    m
}
