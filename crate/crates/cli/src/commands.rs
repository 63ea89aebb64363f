use std::str::FromStr;
use std::sync::Arc;

use deform_core::exactalg::parse_poly;
use deform_core::hopf::{check_hopf_axioms, Bialgebra, EnvelopingAlgebra};
use deform_core::phase_space::{
    lambda_star_direct, lambda_star_named, lambda_star_smash, lr_actions, phase_space_hopf, LambdaConfig,
};
use deform_core::report::Check;
use deform_core::smash::{check_associativity, SmashAlgebra, SmashKind};
use deform_core::structure::{
    build_symplectic_lie_algebra, central_extension, hi_split_diagnostics, opposite_positive, twist_solve,
    weight_decomposition, ElementaryInstance, ExactTriple, TripleFlags,
};
use deform_core::udf::{
    check_classical_limit, check_left_invariance, check_product_associativity, extract_poisson, ActionDescriptor,
    FnProduct, InvariantProduct, Pointwise, Transported,
};
use deform_core::verify;
use deform_core::wkbnum::{self, GaussPoly, QuadratureConfig};
use deform_core::{QPoly, QTensor, Rational};

use crate::args::*;
use crate::catalog;
use crate::report::Outcome;
use crate::{CliError, CliResult};

pub fn dispatch(cli: &Cli) -> CliResult<Outcome> {
    match &cli.command {
        Command::Star(a) => star(a),
        Command::Smash(a) => smash(a),
        Command::Udf(a) => udf(a),
        Command::Triple(a) => triple(a),
        Command::Wkb(WkbCommand::Star(a)) => wkb_star(a),
        Command::Wkb(WkbCommand::Asymptotic(a)) => wkb_asymptotic(a),
        Command::VerifyAll(a) => verify_all(a, cli.seed),
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn rational(s: &str) -> CliResult<Rational> {
    Rational::from_str(s.trim()).map_err(|_| usage(format!("`{s}` is not a rational number")))
}

fn poly(s: &str) -> CliResult<QPoly> {
    Ok(parse_poly(s)?)
}

fn check_vars(p: &QPoly, allowed: &[String]) -> CliResult<()> {
    match p.compact().vars().iter().find(|v| v.as_str() != "t" && !allowed.contains(v)) {
        Some(v) => Err(deform_core::Error::UnknownVariable(v.clone()).into()),
        None => Ok(()),
    }
}

/// Largest index among `q<i>`/`p<i>` variables.
fn pairs_used(ps: &[&QPoly]) -> usize {
    ps.iter()
        .flat_map(|p| p.compact().vars().to_vec())
        .filter_map(|v| v.strip_prefix('q').or_else(|| v.strip_prefix('p')).and_then(|i| i.parse::<usize>().ok()))
        .max()
        .unwrap_or(1)
}

fn star(a: &StarArgs) -> CliResult<Outcome> {
    let (u, v) = (poly(&a.lhs)?, poly(&a.rhs)?);
    let n = a.n.unwrap_or_else(|| pairs_used(&[&u, &v]));
    let cfg = LambdaConfig::new(rational(&a.lambda)?, n, a.order);
    let allowed: Vec<String> = cfg.q_vars().into_iter().chain(cfg.p_vars()).collect();
    check_vars(&u, &allowed)?;
    check_vars(&v, &allowed)?;
    let mut o = Outcome::default();
    o.instance(format!("phase space R^{}, λ = {}, t-order {}", 2 * n, cfg.lambda, a.order));
    let direct = || lambda_star_direct(&cfg, &u, &v);
    let smashed = || lambda_star_smash(&cfg, &u, &v);
    match a.engine {
        Engine::Direct => o.output("product", direct().to_string()),
        Engine::Smash => o.output("product", smashed().to_string()),
        Engine::Both => {
            let (d, s) = (direct(), smashed());
            let equal = d == s;
            o.output("product", d.to_string());
            o.output("equality", equal);
            if !equal {
                o.output("smash_product", s.to_string());
            }
            o.report.push(Check::from_bool("engines_agree", equal, || format!("direct {d}, smash {s}")));
        }
    }
    Ok(o)
}

/// `lambda:R[,n=N][,group=G]`.
struct AlgebraSpec {
    lambda: Rational,
    n: Option<usize>,
    group: Option<String>,
}

fn algebra_spec(s: &str) -> CliResult<AlgebraSpec> {
    let mut parts = s.split(',');
    let head = parts.next().unwrap_or("");
    let lambda = rational(head.strip_prefix("lambda:").ok_or_else(|| usage(format!("unknown algebra `{s}`")))?)?;
    let mut spec = AlgebraSpec { lambda, n: None, group: None };
    for p in parts {
        match p.split_once('=') {
            Some(("n", v)) => spec.n = Some(v.parse().map_err(|_| usage(format!("bad n in `{s}`")))?),
            Some(("group", g)) => spec.group = Some(g.to_string()),
            _ => return Err(usage(format!("unknown algebra option `{p}`"))),
        }
    }
    Ok(spec)
}

/// `f | a; g | b` as a tensor on the given carriers.
fn tensor(s: &str, carriers: [&str; 2], c_vars: &[String], b_vars: &[String]) -> CliResult<QTensor> {
    let mut out = QTensor::zero(&carriers);
    for summand in s.split(';') {
        let (f, a) = summand.split_once('|').ok_or_else(|| usage(format!("expected `f | a` in `{summand}`")))?;
        let (f, a) = (poly(f)?, poly(a)?);
        check_vars(&f, c_vars)?;
        check_vars(&a, b_vars)?;
        out.add_pure(Rational::from_integer(1.into()), &[f, a]);
    }
    Ok(out)
}

fn smash(a: &SmashArgs) -> CliResult<Outcome> {
    if let Some(file) = a.algebra.strip_prefix("lie:") {
        return enveloping(a, file);
    }
    let spec = algebra_spec(&a.algebra)?;
    let group = spec.group.as_deref().map(catalog::group).transpose()?;
    let n = match (&group, spec.n) {
        (Some(g), _) => g.dim(),
        (None, Some(n)) => n,
        (None, None) => 1,
    };
    let cfg = LambdaConfig::new(spec.lambda.clone(), n, a.order);
    let kind = match a.kind {
        SmashKindArg::Lr => SmashKind::Lr,
        SmashKindArg::Plain => SmashKind::Plain,
    };
    let s = SmashAlgebra::new(Arc::new(lr_actions::<Rational>(&cfg, group.as_ref())?), kind)?;
    let (cn, bn) = s.carrier_names();
    let (c_vars, b_vars) = (s.c.vars(), s.b().generators());
    let x = tensor(&a.lhs, [&cn, &bn], &c_vars, &b_vars)?;
    let y = tensor(&a.rhs, [&cn, &bn], &c_vars, &b_vars)?;
    let mut o = Outcome::default();
    o.instance(format!("{kind:?} smash {cn} ⊗ {bn}, λ = {}", spec.lambda));
    if let Some(g) = &group {
        o.instance(g.name.clone());
    }
    o.output("c_variables", &c_vars);
    o.output("b_generators", &b_vars);
    o.output("product", s.mul(&x, &y)?.to_string());
    if a.verify {
        o.report.extend("", check_associativity(&s, a.deg, a.deg));
        if kind == SmashKind::Lr && group.is_none() {
            o.report.extend("hopf/", check_hopf_axioms(&phase_space_hopf::<Rational>(&cfg)?, a.deg));
        } else {
            o.report.note("Hopf checks need the additive coproduct on C, attached for abelian groups only");
        }
    }
    Ok(o)
}

fn enveloping(a: &SmashArgs, file: &str) -> CliResult<Outcome> {
    let lie = catalog::lie(file)?;
    let h = EnvelopingAlgebra::<Rational>::new(lie.clone(), Some(a.order));
    let (x, y) = (poly(&a.lhs)?, poly(&a.rhs)?);
    check_vars(&x, &lie.symbols)?;
    check_vars(&y, &lie.symbols)?;
    let mut o = Outcome::default();
    o.instance(format!("U_t({})", lie.symbols.join(", ")));
    o.output("product", h.mul(&x, &y).to_string());
    if a.verify {
        o.report = check_hopf_axioms::<Rational, _>(&h, a.deg);
    }
    Ok(o)
}

fn product_on_group(spec: &str, coords: &[String], tcap: u32) -> CliResult<Arc<dyn InvariantProduct<Rational>>> {
    if spec == "pointwise" {
        return Ok(Arc::new(Pointwise { coords: coords.to_vec(), tcap: Some(tcap) }));
    }
    let lambda = rational(spec.strip_prefix("lambda:").ok_or_else(|| usage(format!("unknown product `{spec}`")))?)?;
    let k = coords.len() / 2;
    if k == 0 {
        return Err(usage("a λ-product needs at least two coordinates"));
    }
    // q = first k coordinates, p = next k, any remaining one is a spectator
    let (q, p) = (coords[..k].to_vec(), coords[k..2 * k].to_vec());
    let name = format!("lambda:{lambda} in ({} | {})", q.join(","), p.join(","));
    Ok(Arc::new(FnProduct {
        name,
        coords: coords.to_vec(),
        tcap: Some(tcap),
        f: Box::new(move |u: &QPoly, v: &QPoly| lambda_star_named(&lambda, tcap, &q, &p, u, v)),
    }))
}

fn udf(a: &UdfArgs) -> CliResult<Outcome> {
    let group = catalog::group(&a.group)?;
    let action = match a.action.as_str() {
        "regular" => ActionDescriptor::regular(group.clone()),
        s => match s.strip_prefix("trivial:").map(str::parse) {
            Some(Ok(m)) => ActionDescriptor::trivial(group.clone(), m),
            _ => return Err(usage(format!("unknown action `{s}` (expected regular or trivial:M)"))),
        },
    };
    let inner = product_on_group(&a.product, &group.x_vars(), a.order)?;
    let tr = Transported { inner: inner.clone(), action };
    let (u, v) = (poly(&a.lhs)?, poly(&a.rhs)?);
    let w = tr.action.w_vars();
    check_vars(&u, &w)?;
    check_vars(&v, &w)?;
    let mut o = Outcome::default();
    o.instance(group.name.clone());
    o.instance(inner.name());
    o.output("product", tr.product(&u, &v)?.to_string());
    match extract_poisson(&tr, a.deg) {
        Ok(bv) => o.output("poisson", bv.to_string()),
        Err(e) => o.report.note(format!("no Poisson bivector: {e}")),
    }
    o.report.push(check_left_invariance(inner.as_ref(), &group, a.deg));
    o.report.push(check_product_associativity(&tr, a.deg));
    o.report.push(check_classical_limit(&tr, a.deg));
    Ok(o)
}

fn triple(a: &TripleArgs) -> CliResult<Outcome> {
    let (t, xi) = catalog::triple(&a.file)?;
    let flags = TripleFlags { indecomposable: a.indecomposable, non_flat: a.non_flat };
    let mut o = Outcome::default();
    o.instance(t.name.clone());
    let exact = |xi: Option<Vec<Rational>>| -> CliResult<ExactTriple> {
        let xi = xi.or_else(|| t.primitive()).ok_or_else(|| deform_core::Error::NotExact(t.name.clone()))?;
        Ok(ExactTriple { triple: t.clone(), xi })
    };
    let show = |v: &[Rational]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
    match a.action {
        TripleAction::Validate => {
            o.report = t.validate();
            o.output("exact", t.is_exact());
            if let Some(xi) = xi {
                o.report.extend("exact/", ExactTriple { triple: t.clone(), xi }.validate());
            }
        }
        TripleAction::Extend => {
            let ext = central_extension(&t)?;
            o.output("extended", ext.extended);
            o.output("xi", show(&ext.exact.xi));
            o.output("triple", format!("{}xi\n{}\n", ext.exact.triple.to_text(), show(&ext.exact.xi).join(" ")));
            o.report = ext.report;
        }
        TripleAction::Diagnose => {
            let d = hi_split_diagnostics(&t, flags);
            o.output("holonomy_isotropic", d.holonomy_isotropic);
            o.output("derived_abelian", d.derived_abelian);
            o.output("split", d.complement.is_some());
            o.output("dual_lagrangians", d.dual_lagrangians);
            o.report = d.report;
        }
        TripleAction::Weights | TripleAction::BuildS | TripleAction::Twist => {
            let inst = ElementaryInstance::from_triple(&exact(xi)?)?;
            let w = weight_decomposition(&inst, flags)?;
            o.output("weights", (0..w.weights.len()).map(|i| w.describe(i)).collect::<Vec<_>>());
            o.output("positive", (w.positive.iter().map(|&i| w.describe(i))).collect::<Vec<_>>());
            o.report.extend("weights/", w.report.clone());
            match a.action {
                TripleAction::BuildS => {
                    let sc = build_symplectic_lie_algebra(&inst, &w, None)?;
                    let opp_pos = opposite_positive(&w);
                    let opp = build_symplectic_lie_algebra(&inst, &w, Some(&opp_pos))?;
                    let sig = sc.signature();
                    o.output("dim", sig.dim);
                    o.output("derived_series", &sig.derived_series);
                    o.output("omega_rank", sig.omega_rank);
                    o.report.extend("s/", sc.report);
                    o.report.push(Check::from_bool("opposite_positive_system_isomorphic", opp.signature() == sig, || {
                        format!("{:?} vs {:?}", opp.signature(), sig)
                    }));
                }
                TripleAction::Twist => {
                    let tw = twist_solve(&inst, &w)?;
                    o.output("phi", tw.formulas());
                    o.output("global_diffeo", tw.global_diffeo);
                    o.output("flat", tw.is_flat());
                    o.report.extend("twist/", tw.report);
                }
                _ => {}
            }
        }
    }
    Ok(o)
}

fn point(s: &str) -> CliResult<[f64; 2]> {
    let v: Vec<f64> = s.split(',').map(|x| x.trim().parse::<f64>()).collect::<Result<_, _>>().map_err(|_| usage(format!("bad point `{s}`")))?;
    match v.as_slice() {
        [a, l] => Ok([*a, *l]),
        _ => Err(usage(format!("point `{s}` needs two coordinates a,l"))),
    }
}

fn wkb_star(a: &WkbStarArgs) -> CliResult<Outcome> {
    let space = catalog::space(&a.space)?;
    let (u, v) = (GaussPoly::parse(&a.u)?, GaussPoly::parse(&a.v)?);
    let x0 = point(&a.x0)?;
    let cfg = QuadratureConfig::new(a.hbar, a.nodes);
    let est = wkbnum::wkb_star(&space, &u.sampled()?, &v.sampled()?, x0, &cfg)?;
    let mut o = Outcome::default();
    o.instance(space.name.clone());
    o.output("u", u.to_string());
    o.output("v", v.to_string());
    o.output("x0", x0);
    o.output("hbar", a.hbar);
    o.output("nodes", est.nodes);
    o.report.value("re", est.value.re, Some(est.error));
    o.report.value("im", est.value.im, Some(est.error));
    o.report.value("uv", u.mul(&v).eval_f64(x0[0], x0[1]), None);
    o.report.value("bracket", u.poisson(&v).eval_f64(x0[0], x0[1]), None);
    o.report.push(Check::from_bool("error_within_tolerance", est.error <= a.tolerance, || {
        format!("error estimate {:e} exceeds {:e}", est.error, a.tolerance)
    }));
    Ok(o)
}

fn wkb_asymptotic(a: &WkbAsymptoticArgs) -> CliResult<Outcome> {
    let space = catalog::space(&a.space)?;
    let (u, v) = (GaussPoly::parse(&a.u)?, GaussPoly::parse(&a.v)?);
    let hbars: Vec<f64> =
        a.hbars.split(',').map(|h| h.trim().parse()).collect::<Result<_, _>>().map_err(|_| usage("bad --hbars list"))?;
    let x0 = point(&a.x0)?;
    let first = *hbars.first().ok_or_else(|| usage("empty --hbars list"))?;
    let fit = wkbnum::asymptotic_check(&space, &u, &v, x0, &hbars, &QuadratureConfig::new(first, a.nodes))?;
    let mut o = Outcome::default();
    o.instance(space.name.clone());
    o.output("u", u.to_string());
    o.output("v", v.to_string());
    o.output("x0", x0);
    o.output("slope", fit.slope);
    o.output("intercept", fit.intercept);
    o.output("rms", fit.rms);
    let table: Vec<[f64; 5]> = fit
        .points
        .iter()
        .map(|p| [p.hbar, p.star.value.re, p.star.value.im, p.residual.norm(), p.star.error])
        .collect();
    o.output("points", table);
    o.output("points_columns", ["hbar", "re", "im", "residual", "error"]);
    o.report = fit.report;
    Ok(o)
}

fn verify_all(a: &VerifyArgs, seed: u64) -> CliResult<Outcome> {
    let ids: Vec<u32> = match (&a.only, a.quick) {
        (Some(s), _) => s
            .split(',')
            .map(|x| x.trim().parse::<u32>().ok().filter(|i| verify::ALL.contains(i)))
            .collect::<Option<_>>()
            .ok_or_else(|| usage(format!("--only expects numbers 1..=12, got `{s}`")))?,
        (None, true) => verify::EXACT.to_vec(),
        (None, false) => verify::ALL.to_vec(),
    };
    let mut o = Outcome::default();
    for id in &ids {
        let c = verify::run(*id, seed);
        eprintln!("criterion {:>2} {} ({:.1} s) {}", c.id, if c.passed() { "PASS" } else { "FAIL" }, c.seconds, c.title);
        o.criteria.push(c);
    }
    o.output("criteria_run", &ids);
    Ok(o)
}
