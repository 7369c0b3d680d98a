//! The single-purpose subcommands.

use serde_json::json;
use zetacorr::level::{act_frobenius, act_group, build_level_data_from, companion_matrix, solve_nu, tau_n_matrix};
use zetacorr::zeta::{quotient_rank1, scan_graphs, scan_members, theta_member_rank1, zeta_member};
use zetacorr::{CensusEntry, FqElem, LevelData, Poly};

use crate::config::Session;
use crate::error::CliError;
use crate::report::{self, to_value, Claim, Report};
use crate::transform::{self, Transform};

fn header(s: &Session) -> String {
    let c = &s.config;
    format!(
        "q={} p={} m={} M={} rank={} divisor={} theta={}",
        c.q,
        c.p,
        c.m,
        s.tower.ambient_degree(),
        c.rank,
        c.divisor,
        report::elem(&s.module.theta)
    )
}

pub fn level_data(s: &Session) -> Result<LevelData, CliError> {
    let x = build_level_data_from(&s.module, &s.div, &s.torsion, &s.tower)?;
    x.validate(&s.tower)?;
    Ok(x)
}

pub fn torsion(s: &Session) -> Result<Report, CliError> {
    let tw = &s.tower;
    // every jet must map to the previous one under φ_{t-α}
    let mut chains_ok = true;
    let mut lines = vec![header(s), "point  h  j  element".to_string()];
    for (i, pt) in s.div.points().iter().enumerate() {
        let f = s.module.phi(&Poly::linear(tw, &s.div.alpha(i, tw)), tw)?;
        for h in 0..pt.r {
            for (j, z) in s.torsion.jet(i, h).iter().enumerate() {
                let expected = if h == 0 { tw.zero() } else { s.torsion.jet(i, h - 1)[j].clone() };
                chains_ok &= f.eval(z, tw) == expected;
                lines.push(format!("{:>5}  {h}  {j}  {}", pt.alpha, report::elem(z)));
            }
        }
    }
    let claims = [Claim::new("torsion chains", chains_ok, "phi_{t-a}(z_{h}) = z_{h-1} and phi_{t-a}(z_0) = 0")];
    lines.push(report::claims_table(&claims));
    let json = json!({
        "config": to_value(&s.config),
        "tower": to_value(&s.tower),
        "module": to_value(&s.module),
        "torsion": to_value(&s.torsion),
        "claims": to_value(&claims),
    });
    Ok(Report::with_claims(json, lines.join("\n"), &claims))
}

pub fn level(s: &Session) -> Result<Report, CliError> {
    let x = level_data(s)?;
    let mut lines = vec![header(s)];
    for (k, m) in x.delta.iter().enumerate() {
        lines.push(format!("Delta_{k}:"));
        lines.push(report::matrix(m, "  "));
    }
    lines.push("Delta_inf:".into());
    lines.push(report::matrix(&x.delta_inf, "  "));
    let json = json!({
        "config": to_value(&s.config),
        "tower": to_value(&s.tower),
        "module": to_value(&s.module),
        "level": to_value(&x),
    });
    Ok(Report::new(json, lines.join("\n")))
}

pub fn tau_matrix(s: &Session) -> Result<Report, CliError> {
    let tw = &s.tower;
    let c = companion_matrix(&s.module, tw);
    let cp = tau_n_matrix(&s.module, tw);
    let lines = [
        header(s),
        "C = C_0 + C_1 t with C_0:".into(),
        report::matrix(&c[0], "  "),
        "C_1:".into(),
        report::matrix(&c[1], "  "),
        "tau^n matrix A t + B with A:".into(),
        report::matrix(&cp.a, "  "),
        "B:".into(),
        report::matrix(&cp.b, "  "),
    ];
    let json = json!({
        "config": to_value(&s.config),
        "tower": to_value(tw),
        "module": to_value(&s.module),
        "companion": to_value(&c),
        "a": to_value(&cp.a),
        "b": to_value(&cp.b),
    });
    Ok(Report::new(json, lines.join("\n")))
}

pub fn nu_solve(s: &Session) -> Result<Report, CliError> {
    let tw = &s.tower;
    let n = s.module.n;
    let cp = tau_n_matrix(&s.module, tw);
    let sol = solve_nu(&cp, n, tw)?;
    let satisfies = |v: &[FqElem]| v.iter().map(|x| tw.frobenius_q(x, n)).collect::<Vec<_>>() == cp.a.vec_mul(v, tw);
    let rows_ok = sol.fq_basis.iter().all(|v| satisfies(v)) && (0..n).all(|r| satisfies(sol.nu.row(r)));
    let claims = [
        Claim::new("semilinear equation", rows_ok, "every basis row and every row of nu satisfies v^(q^n) = v A"),
        Claim::new(
            "solution space",
            sol.fq_basis.len() == n * n && sol.fqn_basis.len() == n,
            format!("{} rows over F_q, {} over F_(q^n)", sol.fq_basis.len(), sol.fqn_basis.len()),
        ),
        Claim::new("nu invertible", !sol.nu.det(tw).is_zero(), "det(nu) != 0"),
    ];
    let lines = [
        header(s),
        "A:".into(),
        report::matrix(&cp.a, "  "),
        "canonical nu:".into(),
        report::matrix(&sol.nu, "  "),
        report::claims_table(&claims),
    ];
    let json = json!({
        "config": to_value(&s.config),
        "tower": to_value(tw),
        "a": to_value(&cp.a),
        "solution": to_value(&sol),
        "claims": to_value(&claims),
    });
    Ok(Report::with_claims(json, lines.join("\n"), &claims))
}

/// The source g·F^i(x) of a transform.
fn source(s: &Session, x: &LevelData, t: &Transform) -> Result<LevelData, CliError> {
    Ok(act_group(&t.g, &act_frobenius(x, t.i, &s.tower), &s.tower)?)
}

fn transform_json(t: &Transform) -> serde_json::Value {
    json!({ "spec": t.spec, "g": to_value(&t.g), "i": t.i })
}

pub fn zeta_check(s: &Session, spec: &str, expect: Option<bool>) -> Result<Report, CliError> {
    let tw = &s.tower;
    let x = level_data(s)?;
    let t = transform::parse(spec, s.module.n, &s.div, tw)?;
    let src = source(s, &x, &t)?;
    let (member, cert) = zeta_member(&src, &x, tw)?;
    let form = cert.theorem_form(&src, &x, tw)?;
    let mut lines = vec![
        header(s),
        format!("transform {spec}: g = {}, i = {}", t.g.label(), t.i),
        format!("member: {member}"),
        "residual:".into(),
        report::matrix(&cert.residual, "  "),
    ];
    let mut claims = Vec::new();
    if let Some(e) = expect {
        claims.push(Claim::new("expected verdict", e == member, format!("expected {e}, found {member}")));
        lines.push(report::claims_table(&claims));
    }
    let json = json!({
        "config": to_value(&s.config),
        "tower": to_value(tw),
        "transform": transform_json(&t),
        "member": member,
        "residual": to_value(&cert.residual),
        "a_poly": to_value(&cert.a_poly),
        "theorem_form": to_value(&form),
        "claims": to_value(&claims),
    });
    Ok(Report::with_claims(json, lines.join("\n"), &claims))
}

pub fn theta_check(s: &Session, spec: &str) -> Result<Report, CliError> {
    let tw = &s.tower;
    let x = level_data(s)?;
    let t = transform::parse(spec, s.module.n, &s.div, tw)?;
    let src = source(s, &x, &t)?;
    let quotient = quotient_rank1(&src, &x, tw)?;
    let theta = theta_member_rank1(&quotient)?;
    let (member, _) = zeta_member(&src, &x, tw)?;
    let claims = [Claim::new(
        "theta identity",
        theta == member,
        format!("quotient on theta divisor: {theta}; pair on correspondence: {member}"),
    )];
    let lines =
        [header(s), format!("transform {spec}: g = {}, i = {}", t.g.label(), t.i), report::claims_table(&claims)];
    let json = json!({
        "config": to_value(&s.config),
        "tower": to_value(tw),
        "transform": transform_json(&t),
        "quotient": to_value(&quotient),
        "theta_member": theta,
        "zeta_member": member,
        "claims": to_value(&claims),
    });
    Ok(Report::with_claims(json, lines.join("\n"), &claims))
}

pub fn census_table(s: &Session, entries: &[CensusEntry], checked: usize) -> String {
    let mut lines = vec![header(s), format!("{checked} pairs examined, {} listed", entries.len())];
    lines.push(format!("{:>3}  {:<6}  {:<8}  g", "i", "member", "residual"));
    for e in entries {
        let residual = if e.residual.is_zero() { "0" } else { "nonzero" };
        lines.push(format!("{:>3}  {:<6}  {:<8}  {}", e.i, e.member, residual, e.g.label()));
    }
    lines.join("\n")
}

/// The census report is the bare array of entries.
pub fn scan(s: &Session, i_max: Option<usize>, members_only: bool) -> Result<Report, CliError> {
    let tw = &s.tower;
    let x = level_data(s)?;
    let i_max = i_max.unwrap_or(s.module.n * (s.div.degree() - 1));
    let cap = u128::from(s.config.cap);
    let (entries, checked) = if members_only {
        let summary = scan_members(&x, i_max, cap, tw)?;
        (summary.members, summary.checked)
    } else {
        let all = scan_graphs(&x, i_max, cap, tw)?;
        let n = all.len();
        (all, n)
    };
    let table = census_table(s, &entries, checked);
    Ok(Report::new(to_value(&entries), table))
}
