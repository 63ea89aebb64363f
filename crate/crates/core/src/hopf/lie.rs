use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::scalar::{rat, Coeff};
use crate::Rational;

/// Finite-dimensional Lie algebra given by structure constants
/// `[X_i, X_j] = sum_k c[i][j][k] X_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct LieAlgebra {
    pub symbols: Vec<String>,
    pub c: Vec<Vec<Vec<Rational>>>,
}

impl LieAlgebra {
    /// Validates antisymmetry and the Jacobi identity.
    pub fn new(symbols: Vec<String>, c: Vec<Vec<Vec<Rational>>>) -> Result<Self> {
        let n = symbols.len();
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::Dimension(format!("structure constants are not {n}x{n}x{n}")));
        }
        let g = LieAlgebra { symbols, c };
        g.validate()?;
        Ok(g)
    }

    /// Builds from nonzero entries `(i, j, k, c)` (0-based); the antisymmetric
    /// partner `c[j][i][k] = -c` is filled in when absent.
    pub fn from_entries(symbols: Vec<String>, entries: &[(usize, usize, usize, Rational)]) -> Result<Self> {
        let n = symbols.len();
        let mut c = vec![vec![vec![Rational::zero(); n]; n]; n];
        let mut set = vec![vec![vec![false; n]; n]; n];
        for (i, j, k, v) in entries {
            let (i, j, k) = (*i, *j, *k);
            if i >= n || j >= n || k >= n {
                return Err(Error::Dimension(format!("index ({},{},{}) out of range", i + 1, j + 1, k + 1)));
            }
            if set[i][j][k] && c[i][j][k] != *v {
                return Err(Error::InvalidLieAlgebra(format!(
                    "conflicting values for c[{}][{}][{}]",
                    i + 1,
                    j + 1,
                    k + 1
                )));
            }
            c[i][j][k] = v.clone();
            set[i][j][k] = true;
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if set[i][j][k] && !set[j][i][k] {
                        c[j][i][k] = -c[i][j][k].clone();
                        set[j][i][k] = true;
                    }
                }
            }
        }
        Self::new(symbols, c)
    }

    pub fn dim(&self) -> usize {
        self.symbols.len()
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if self.c[i][j][k] != -self.c[j][i][k].clone() {
                        return Err(Error::InvalidLieAlgebra(format!(
                            "antisymmetry fails at ({},{},{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        if let Some((i, j, k)) = self.jacobi_violation() {
            return Err(Error::InvalidLieAlgebra(format!(
                "Jacobi identity fails on ({}, {}, {})",
                self.symbols[i], self.symbols[j], self.symbols[k]
            )));
        }
        Ok(())
    }

    fn basis_vec(&self, i: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[i] = Rational::one();
        v
    }

    pub fn jacobi_violation(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let (x, y, z) = (self.basis_vec(i), self.basis_vec(j), self.basis_vec(k));
                    let a = self.bracket(&x, &self.bracket(&y, &z));
                    let b = self.bracket(&y, &self.bracket(&z, &x));
                    let c = self.bracket(&z, &self.bracket(&x, &y));
                    if a.iter().zip(&b).zip(&c).any(|((a, b), c)| !(a.clone() + b.clone() + c.clone()).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// Bracket of coordinate vectors.
    pub fn bracket(&self, x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for i in 0..n {
            if x[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if y[j].is_zero() {
                    continue;
                }
                let s = x[i].clone() * y[j].clone();
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[i][j][k].is_zero() {
                        *o += s.clone() * self.c[i][j][k].clone();
                    }
                }
            }
        }
        out
    }

    /// Matrix of `ad(X_i)` acting on coordinate columns.
    pub fn ad(&self, i: usize) -> Vec<Vec<Rational>> {
        let n = self.dim();
        (0..n).map(|k| (0..n).map(|j| self.c[i][j][k].clone()).collect()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.c.iter().flatten().flatten().all(|v| v.is_zero())
    }

    /// Structure constants converted into another field.
    pub fn constant<K: Coeff>(&self, i: usize, j: usize, k: usize) -> K {
        let v = &self.c[i][j][k];
        K::from_ratio(v.numer(), v.denom())
    }

    /// Parses `dim n`, optional `symbols a b c`, then lines `i j k c` (1-based).
    /// Lines starting with `#` are comments.
    pub fn parse(text: &str) -> Result<Self> {
        let (g, rest) = parse_lie_block(text)?;
        if let Some((line, _)) = rest.first() {
            return Err(Error::Parse { pos: *line, msg: "unexpected section after structure constants".into() });
        }
        Ok(g)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\nsymbols {}\n", self.dim(), self.symbols.join(" "));
        let n = self.dim();
        for i in 0..n {
            for j in (i + 1)..n {
                for k in 0..n {
                    if !self.c[i][j][k].is_zero() {
                        s.push_str(&format!("{} {} {} {}\n", i + 1, j + 1, k + 1, self.c[i][j][k]));
                    }
                }
            }
        }
        s
    }

    pub fn abelian(symbols: &[&str]) -> Self {
        Self::from_entries(symbols.iter().map(|s| s.to_string()).collect(), &[]).unwrap()
    }

    /// `[X, Y] = Z`.
    pub fn heisenberg() -> Self {
        Self::from_entries(vec!["X".into(), "Y".into(), "Z".into()], &[(0, 1, 2, rat(1, 1))]).unwrap()
    }

    /// `[H, E] = E`.
    pub fn axb() -> Self {
        Self::from_entries(vec!["H".into(), "E".into()], &[(0, 1, 1, rat(1, 1))]).unwrap()
    }

    /// `[H, E] = 2E`, `[H, F] = -2F`, `[E, F] = H`.
    pub fn sl2() -> Self {
        Self::from_entries(
            vec!["H".into(), "E".into(), "F".into()],
            &[(0, 1, 1, rat(2, 1)), (0, 2, 2, rat(-2, 1)), (1, 2, 0, rat(1, 1))],
        )
        .unwrap()
    }

    /// `[L1, L2] = L3` and cyclic.
    pub fn so3() -> Self {
        Self::from_entries(
            vec!["L1".into(), "L2".into(), "L3".into()],
            &[(0, 1, 2, rat(1, 1)), (1, 2, 0, rat(1, 1)), (2, 0, 1, rat(1, 1))],
        )
        .unwrap()
    }
}

pub(crate) fn parse_rational(tok: &str, line: usize) -> Result<Rational> {
    let p = crate::exactalg::parse_poly::<Rational>(tok).map_err(|_| Error::Parse {
        pos: line,
        msg: format!("bad number `{tok}`"),
    })?;
    if !p.is_constant() {
        return Err(Error::Parse { pos: line, msg: format!("bad number `{tok}`") });
    }
    Ok(p.constant_term())
}

/// Reads the Lie-algebra header and constants, returning the remaining
/// non-empty lines (1-based line numbers) for extended formats.
pub(crate) fn parse_lie_block(text: &str) -> Result<(LieAlgebra, Vec<(usize, String)>)> {
    let lines: Vec<(usize, String)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim().to_string()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let mut it = lines.into_iter().peekable();
    let (ln, head) = it.next().ok_or(Error::Parse { pos: 0, msg: "empty input".into() })?;
    let n: usize = match head.split_whitespace().collect::<Vec<_>>()[..] {
        ["dim", n] => n.parse().map_err(|_| Error::Parse { pos: ln, msg: "bad dimension".into() })?,
        _ => return Err(Error::Parse { pos: ln, msg: "expected `dim n`".into() }),
    };
    let mut symbols: Vec<String> = (1..=n).map(|i| format!("X{i}")).collect();
    if let Some((ln, l)) = it.peek().cloned() {
        if let Some(rest) = l.strip_prefix("symbols") {
            let s: Vec<String> = rest.split_whitespace().map(String::from).collect();
            if s.len() != n {
                return Err(Error::Parse { pos: ln, msg: format!("expected {n} symbols") });
            }
            symbols = s;
            it.next();
        }
    }
    let mut entries = Vec::new();
    let mut rest = Vec::new();
    for (ln, l) in it.by_ref() {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks.len() == 4 && toks[0].chars().all(|c| c.is_ascii_digit()) {
            let idx = |s: &str| -> Result<usize> {
                let v: usize = s.parse().map_err(|_| Error::Parse { pos: ln, msg: "bad index".into() })?;
                if v == 0 {
                    return Err(Error::Parse { pos: ln, msg: "indices are 1-based".into() });
                }
                Ok(v - 1)
            };
            entries.push((idx(toks[0])?, idx(toks[1])?, idx(toks[2])?, parse_rational(toks[3], ln)?));
        } else {
            rest.push((ln, l));
            break;
        }
    }
    rest.extend(it);
    Ok((LieAlgebra::from_entries(symbols, &entries)?, rest))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_algebras_are_valid() {
        for g in [LieAlgebra::heisenberg(), LieAlgebra::axb(), LieAlgebra::sl2(), LieAlgebra::so3()] {
            assert!(g.validate().is_ok());
        }
    }

    #[test]
    fn jacobi_violation_detected() {
        // [X,Y]=Y, [Y,Z]=X, [X,Z]=0 breaks Jacobi
        let r = LieAlgebra::from_entries(
            vec!["X".into(), "Y".into(), "Z".into()],
            &[(0, 1, 1, rat(1, 1)), (1, 2, 0, rat(1, 1))],
        );
        assert!(matches!(r, Err(Error::InvalidLieAlgebra(_))));
    }

    #[test]
    fn inconsistent_partner_rejected() {
        let r = LieAlgebra::from_entries(
            vec!["H".into(), "E".into()],
            &[(0, 1, 1, rat(1, 1)), (1, 0, 1, rat(1, 1))],
        );
        assert!(r.is_err());
    }

    #[test]
    fn text_round_trip() {
        let g = LieAlgebra::sl2();
        assert_eq!(LieAlgebra::parse(&g.to_text()).unwrap(), g);
        let h = LieAlgebra::parse("dim 3\n# heisenberg\n1 2 3 1\n").unwrap();
        assert_eq!(h.c[1][0][2], rat(-1, 1));
        assert_eq!(h.symbols, vec!["X1", "X2", "X3"]);
    }
}
