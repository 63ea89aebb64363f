//! Bundled instance files. Any argument naming one of these is served from
//! the binary; anything else is read from disk.

use deform_core::hopf::LieAlgebra;
use deform_core::structure::{catalog, SymplecticTriple};
use deform_core::udf::GroupDescriptor;
use deform_core::wkbnum::WkbSpace;
use deform_core::Rational;

use crate::{CliError, CliResult};

pub const FILES: [(&str, &str); 4] = [
    ("heisenberg.grp", include_str!("../data/heisenberg.grp")),
    ("axb.lie", include_str!("../data/axb.lie")),
    ("rank1.wkb", include_str!("../data/rank1.wkb")),
    ("diag_a_2a.triple", include_str!("../data/diag_a_2a.triple")),
];

pub fn bundled(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Bundled text or file contents.
pub fn read(name: &str) -> CliResult<String> {
    if let Some(t) = bundled(name) {
        return Ok(t.to_string());
    }
    std::fs::read_to_string(name).map_err(|source| CliError::Io { path: name.to_string(), source })
}

pub fn group(spec: &str) -> CliResult<GroupDescriptor> {
    if spec == "heisenberg" {
        return Ok(GroupDescriptor::heisenberg());
    }
    if let Some(n) = spec.strip_prefix("abelian:") {
        let n = n.parse().map_err(|_| CliError::Usage(format!("bad dimension in `{spec}`")))?;
        return Ok(GroupDescriptor::abelian(n));
    }
    Ok(GroupDescriptor::parse(&read(spec)?)?)
}

pub fn lie(spec: &str) -> CliResult<LieAlgebra> {
    match spec {
        "heisenberg" => Ok(LieAlgebra::heisenberg()),
        "axb" => Ok(LieAlgebra::axb()),
        _ => Ok(LieAlgebra::parse(&read(spec)?)?),
    }
}

pub fn space(spec: &str) -> CliResult<WkbSpace<f64>> {
    match WkbSpace::by_name(spec) {
        Ok(s) => Ok(s),
        Err(_) => Ok(WkbSpace::parse(&read(spec)?)?),
    }
}

/// A triple with its primitive when the file supplies one.
pub fn triple(spec: &str) -> CliResult<(SymplecticTriple, Option<Vec<Rational>>)> {
    if let Some(t) = catalog::triple_by_name(spec) {
        return Ok((t, None));
    }
    Ok(SymplecticTriple::parse(&read(spec)?)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_files_match_the_built_in_instances() {
        assert_eq!(group("heisenberg.grp").unwrap().mul, GroupDescriptor::heisenberg().mul);
        assert_eq!(lie("axb.lie").unwrap(), LieAlgebra::axb());
        assert_eq!(space("rank1.wkb").unwrap(), WkbSpace::rank_one());
        let (t, xi) = triple("diag_a_2a.triple").unwrap();
        let d = catalog::diag_a_2a();
        assert_eq!(t.lie, d.triple.lie);
        assert_eq!((t.sigma, t.omega), (d.triple.sigma, d.triple.omega));
        assert_eq!(xi, Some(d.xi));
    }

    #[test]
    fn missing_file_is_a_usage_error() {
        let e = group("no/such/file.grp").unwrap_err();
        assert_eq!(e.exit_code(), crate::EXIT_USAGE);
    }
}
