use crate::error::{Error, Result};
use crate::scalar::Coeff;
use crate::structure::TwistMap;

use super::quad::cst;
use super::Real;

/// One diagonal channel `φ(a) = sinh(w a) / w`; `w = 0` is the identity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Channel<F> {
    pub weight: F,
}

impl<F: Real> Channel<F> {
    pub fn phi(&self, a: F) -> F {
        if self.weight.is_zero() {
            a
        } else {
            (self.weight * a).sinh() / self.weight
        }
    }

    pub fn phi_inv(&self, s: F) -> F {
        if self.weight.is_zero() {
            s
        } else {
            (self.weight * s).asinh() / self.weight
        }
    }

    /// `φ'(a)`, positive everywhere.
    pub fn dphi(&self, a: F) -> F {
        if self.weight.is_zero() {
            F::one()
        } else {
            (self.weight * a).cosh()
        }
    }
}

/// Chart `p = a × l` with `dim a = dim l = d`, channel-wise twisting map and
/// pairing `Ω(α, l) = Σ α_i l_i`. Points are slices `(a_1..a_d, l_1..l_d)`.
#[derive(Clone, Debug, PartialEq)]
pub struct WkbSpace<F> {
    pub name: String,
    pub channels: Vec<Channel<F>>,
    /// Scale of `ξ` on the pairing; the phase is multiplied by it.
    pub xi: F,
    /// Kernel prefactor times `ħ^{2d}`, fixed by `1 ⋆ u = u` in the flat limit.
    pub norm: F,
}

impl<F: Real> WkbSpace<F> {
    pub fn new(name: &str, weights: &[F]) -> Self {
        let d = weights.len() as i32;
        WkbSpace {
            name: name.to_string(),
            channels: weights.iter().map(|&weight| Channel { weight }).collect(),
            xi: F::one(),
            norm: (F::TAU()).powi(-2 * d),
        }
    }

    /// `φ = sinh` on a line.
    pub fn rank_one() -> Self {
        Self::new("rank1", &[F::one()])
    }

    /// `φ = Id`: the Weyl kernel.
    pub fn flat(d: usize) -> Self {
        Self::new(if d == 1 { "flat" } else { "flat-d" }, &vec![F::zero(); d])
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name {
            "rank1" | "rank-one" => Ok(Self::rank_one()),
            "flat" => Ok(Self::flat(1)),
            _ => Err(Error::Invalid(format!("unknown space `{name}` (expected rank1 or flat)"))),
        }
    }

    /// Reads `weights w1 ... wd`, with an optional `# name:` line and `#`
    /// comments; each channel is `φ(a) = sinh(w a)/w`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = "space".to_string();
        let mut weights = None;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if let Some(n) = line.strip_prefix("# name:") {
                name = n.trim().to_string();
                continue;
            }
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |msg: String| Error::Parse { pos: i + 1, msg };
            let rest = line.strip_prefix("weights").ok_or_else(|| bad(format!("unexpected line `{line}`")))?;
            let w: Vec<F> = rest
                .split_whitespace()
                .map(|t| t.parse::<f64>().map(cst).map_err(|_| bad(format!("bad weight `{t}`"))))
                .collect::<Result<_>>()?;
            if w.is_empty() || weights.is_some() {
                return Err(bad("expected one non-empty `weights` line".into()));
            }
            weights = Some(w);
        }
        let w = weights.ok_or(Error::Parse { pos: 0, msg: "missing `weights` line".into() })?;
        Ok(Self::new(&name, &w))
    }

    /// Channels from a solved twisting map; needs one weight per coordinate.
    pub fn from_twist(name: &str, t: &TwistMap) -> Result<Self> {
        if !t.global_diffeo {
            return Err(Error::Unsupported("twisting map is not a global diffeomorphism".into()));
        }
        if t.is_flat() {
            return Ok(Self { name: name.to_string(), ..Self::flat(t.dim) });
        }
        let mut ws = Vec::new();
        for (i, row) in t.weights.iter().enumerate() {
            let nz: Vec<usize> = (0..row.len()).filter(|&j| !num_traits::Zero::is_zero(&row[j])).collect();
            if nz != [i] {
                return Err(Error::Unsupported("weights are not diagonal in the chart".into()));
            }
            ws.push(cst::<F>(row[i].to_f64()));
        }
        Ok(Self::new(name, &ws))
    }

    pub fn dim(&self) -> usize {
        self.channels.len()
    }

    fn check_point(&self, x: &[F]) -> Result<()> {
        if x.len() != 2 * self.dim() {
            return Err(Error::Dimension(format!("point has {} coordinates, expected {}", x.len(), 2 * self.dim())));
        }
        Ok(())
    }

    pub fn phi(&self, a: &[F]) -> Vec<F> {
        self.channels.iter().zip(a).map(|(c, &x)| c.phi(x)).collect()
    }

    /// `φ_ħ(a) = (2/ħ) φ(ħa/2)`.
    pub fn phi_hbar(&self, a: &[F], hbar: F) -> Result<Vec<F>> {
        if hbar.is_zero() || !hbar.is_finite() {
            return Err(Error::Invalid("ħ must be nonzero and finite".into()));
        }
        let two = cst::<F>(2.0);
        Ok(self.channels.iter().zip(a).map(|(c, &x)| two / hbar * c.phi(hbar * x / two)).collect())
    }

    /// `|Jac φ(a)|`.
    pub fn jacobian(&self, a: &[F]) -> F {
        self.channels.iter().zip(a).fold(F::one(), |p, (c, &x)| p * c.dphi(x))
    }

    /// `|Jac φ_ħ⁻¹(α)|`.
    pub fn jacobian_inv_hbar(&self, alpha: &[F], hbar: F) -> F {
        let two = cst::<F>(2.0);
        self.channels.iter().zip(alpha).fold(F::one(), |p, (c, &x)| p / c.dphi(c.phi_inv(hbar * x / two)))
    }

    /// `S(x0, x1, x2) = ξ(Σ_cyclic φ(a0 - a1) l2)`.
    pub fn phase(&self, x0: &[F], x1: &[F], x2: &[F]) -> Result<F> {
        for x in [x0, x1, x2] {
            self.check_point(x)?;
        }
        let d = self.dim();
        let mut s = F::zero();
        for (i, c) in self.channels.iter().enumerate() {
            let term = |p: &[F], q: &[F], r: &[F]| c.phi(p[i] - q[i]) * r[d + i];
            s = s + term(x0, x1, x2) + term(x1, x2, x0) + term(x2, x0, x1);
        }
        Ok(self.xi * s)
    }

    /// `A(x1, x2) = |Jac φ(a1 - a2)|`.
    pub fn amplitude(&self, x1: &[F], x2: &[F]) -> Result<F> {
        self.check_point(x1)?;
        self.check_point(x2)?;
        let diff: Vec<F> = (0..self.dim()).map(|i| x1[i] - x2[i]).collect();
        Ok(self.jacobian(&diff).abs())
    }
}
