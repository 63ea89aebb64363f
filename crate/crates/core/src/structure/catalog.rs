//! Named triples and split symplectic Lie algebras used by tests and the CLI.

use super::linalg::{identity, scale, zeros, Mat};
use super::triple::{
    diag, elementary_from_symplectic_lie_algebra, ElementaryInstance, ExactTriple, SplitSymplecticLieAlgebra,
    SymplecticTriple,
};
use crate::hopf::LieAlgebra;
use crate::{rat, Rational};

fn m(rows: &[&[i64]]) -> Mat<Rational> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x, 1)).collect()).collect()
}

/// Abelian plane, `σ = -Id`, `Ω = dX ∧ dY`. Not exact.
pub fn flat_r2() -> SymplecticTriple {
    SymplecticTriple::new(
        "flat R^2",
        LieAlgebra::abelian(&["X", "Y"]),
        scale(&identity(2), &rat(-1, 1)),
        m(&[&[0, 1], &[-1, 0]]),
    )
    .expect("valid")
}

/// `[A, D] = D`, `η = D*`: the `ax+b` algebra.
pub fn rank_one_s() -> SplitSymplecticLieAlgebra {
    SplitSymplecticLieAlgebra::from_eta("rank one", vec![m(&[&[1]])], &[rat(1, 1), rat(0, 1)]).expect("valid")
}

/// `d = R²`, `a = R²`, `ρ(a) = diag(a1, 2 a2)`, `η = D1* + D2*`.
pub fn diag_a_2a_s() -> SplitSymplecticLieAlgebra {
    SplitSymplecticLieAlgebra::from_eta(
        "diag(a,2a)",
        vec![diag(&[rat(1, 1), rat(0, 1)]), diag(&[rat(0, 1), rat(2, 1)])],
        &[rat(1, 1), rat(1, 1), rat(0, 1), rat(0, 1)],
    )
    .expect("valid")
}

/// `ρ(a) = a1 J + a2 Id` on `R²` with `J` the rotation generator; weights
/// `(±i, 1)` after complexification.
pub fn rotation_dilation_s() -> SplitSymplecticLieAlgebra {
    SplitSymplecticLieAlgebra::from_eta(
        "rotation-dilation",
        vec![m(&[&[0, -1], &[1, 0]]), identity(2)],
        &[rat(1, 1), rat(0, 1), rat(0, 1), rat(0, 1)],
    )
    .expect("valid")
}

pub fn rank_one() -> ExactTriple {
    elementary_from_symplectic_lie_algebra(&rank_one_s()).expect("exact")
}

pub fn diag_a_2a() -> ExactTriple {
    elementary_from_symplectic_lie_algebra(&diag_a_2a_s()).expect("exact")
}

pub fn rotation_dilation() -> ExactTriple {
    elementary_from_symplectic_lie_algebra(&rotation_dilation_s()).expect("exact")
}

fn with_primitive(name: &str, lie: LieAlgebra, sigma: Mat<Rational>, xi: &[Rational]) -> SymplecticTriple {
    let n = lie.dim();
    let mut t = SymplecticTriple::new(name, lie, sigma, zeros(n, n)).expect("valid");
    t.omega = t.delta(xi);
    t
}

/// `sl₂` with `σ = Ad(diag(1, -1))` and `Ω = δ(H*)`.
pub fn sl2_triple() -> SymplecticTriple {
    with_primitive("sl2", LieAlgebra::sl2(), diag(&[rat(1, 1), rat(-1, 1), rat(-1, 1)]), &[rat(1, 1), rat(0, 1), rat(0, 1)])
}

/// `so(3)` with `σ = diag(1, -1, -1)` and `Ω = δ(L1*)`.
pub fn so3_triple() -> SymplecticTriple {
    with_primitive("so3", LieAlgebra::so3(), diag(&[rat(1, 1), rat(-1, 1), rat(-1, 1)]), &[rat(1, 1), rat(0, 1), rat(0, 1)])
}

/// Six valid triples, HI and not.
pub fn hi_catalog() -> Vec<SymplecticTriple> {
    vec![
        flat_r2(),
        rank_one().triple,
        diag_a_2a().triple,
        rotation_dilation().triple,
        sl2_triple(),
        so3_triple(),
    ]
}

/// `ρ(a) = [[0, a], [0, 0]]` on `b = R²`, `σ|b = diag(1, -1)`.
pub fn nilpotent_instance() -> ElementaryInstance {
    ElementaryInstance::new("nilpotent", vec![m(&[&[0, 1], &[0, 0]])], diag(&[rat(1, 1), rat(-1, 1)]), vec![rat(1, 1), rat(0, 1)])
        .expect("valid")
}

/// Looks a catalog entry up by name.
pub fn triple_by_name(name: &str) -> Option<SymplecticTriple> {
    match name {
        "flat" | "flat_r2" => Some(flat_r2()),
        "rank_one" | "rank1" => Some(rank_one().triple),
        "diag" | "diag_a_2a" => Some(diag_a_2a().triple),
        "rotation_dilation" => Some(rotation_dilation().triple),
        "sl2" => Some(sl2_triple()),
        "so3" => Some(so3_triple()),
        _ => None,
    }
}
