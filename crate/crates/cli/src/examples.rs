//! Built-in worked examples, each a list of checked sub-claims.
//!
//! 1. Rank 1, p = t(t-1): torsion identities, ν = 1 and the census.
//! 2. Rank 1, p a product of distinct linear factors: partial fractions, the
//!    CRT isomorphism, the membership formula and the census.
//! 3. Rank 2, p = t: the τ² matrix, the ∞-level relations and the diagonal.
//! 4. Rank 2, p = t(t-1): the census.

use std::collections::BTreeSet;

use serde_json::json;
use zetacorr::level::{act_frobenius, act_group, moore_block, partial_fractions, tau_n_matrix, CrtPlan};
use zetacorr::zeta::{is_equivalent, scan_graphs, zeta_member};
use zetacorr::{CensusEntry, FieldTower, FqElem, GroupElement, LevelData, Matrix, Poly};

use crate::commands::level_data;
use crate::config::{Ambient, ConfigFile, Session, SessionConfig};
use crate::error::CliError;
use crate::report::{self, to_value, Claim, Report};

type MemberSet = BTreeSet<(usize, GroupElement)>;

/// The example's fixed shape, with the user's other settings on top. The
/// user may not change what the example is about.
fn config(k: u8, user: &ConfigFile) -> Result<SessionConfig, CliError> {
    let (rank, divisor, q, divisor_free) = match k {
        1 => (1, "0:1,1:1", 3, false),
        2 => (1, "0:1,1:1,2:1", 5, true),
        3 => (2, "0:1", 3, false),
        _ => (2, "0:1,1:1", 2, false),
    };
    if user.rank.is_some_and(|r| r != rank) {
        return Err(CliError::Config(format!("example {k} has rank {rank}")));
    }
    if !divisor_free && user.divisor.as_deref().is_some_and(|d| d.replace(' ', "") != divisor) {
        return Err(CliError::Config(format!("example {k} has divisor {divisor}")));
    }
    let base = ConfigFile {
        q: Some(q),
        rank: Some(rank),
        divisor: Some(divisor.into()),
        ambient: Some(Ambient::Named("auto".into())),
        ..Default::default()
    };
    let mut over = user.clone();
    if over.p.is_some() || over.m.is_some() {
        // an explicit p/m replaces the example's default q
        over.q = over.q.or(Some(u64::from(over.p.unwrap_or(3)).pow(over.m.unwrap_or(1) as u32)));
    }
    SessionConfig::resolve(&base.merge(over))
}

pub fn run(k: u8, user: &ConfigFile) -> Result<Report, CliError> {
    let session = Session::build(config(k, user)?)?;
    let x = level_data(&session)?;
    let claims = match k {
        1 => example_1(&session, &x)?,
        2 => example_2(&session, &x)?,
        3 => example_3(&session, &x)?,
        _ => example_4(&session, &x)?,
    };
    let c = &session.config;
    let head = format!(
        "example {k}: q={} rank={} divisor={} M={} theta={}",
        c.q,
        c.rank,
        c.divisor,
        session.tower.ambient_degree(),
        report::elem(&session.module.theta)
    );
    let table = format!("{head}\n{}", report::claims_table(&claims));
    let json = json!({
        "example": k,
        "config": to_value(c),
        "tower": to_value(&session.tower),
        "module": to_value(&session.module),
        "claims": to_value(&claims),
        "passed": claims.iter().all(|c| c.ok),
    });
    Ok(Report::with_claims(json, table, &claims))
}

fn members(entries: &[CensusEntry]) -> MemberSet {
    entries.iter().filter(|e| e.member).map(|e| (e.i, e.g.clone())).collect()
}

fn show(set: &MemberSet) -> String {
    set.iter().map(|(i, g)| format!("(i={i} {})", g.label())).collect::<Vec<_>>().join(", ")
}

fn is_unit_mod_p(poly: &Poly, s: &Session) -> bool {
    (0..s.div.len()).all(|i| !poly.eval(&s.div.alpha(i, &s.tower), &s.tower).is_zero())
}

/// Monic s of degree `deg` over F_q, lexicographic in their labels.
fn monic_polys(deg: usize, tw: &FieldTower) -> Vec<Poly> {
    let q = tw.q();
    let count = q.pow(deg as u32);
    (0..count)
        .map(|mut idx| {
            let mut labels = Vec::with_capacity(deg + 1);
            for _ in 0..deg {
                labels.push(idx % q);
                idx /= q;
            }
            labels.push(1);
            Poly::from_fq_ints(tw, &labels).expect("labels lie in F_q")
        })
        .collect()
}

/// The graphs of h_s·F^{n·i} with s monic of degree d-1-i and a unit mod p.
fn homothety_graphs(s: &Session) -> Result<MemberSet, CliError> {
    let (n, d) = (s.module.n, s.div.degree());
    let mut set = MemberSet::new();
    for i in 0..d {
        for poly in monic_polys(d - 1 - i, &s.tower) {
            if is_unit_mod_p(&poly, s) {
                set.insert((n * i, GroupElement::central(&poly, n, &s.div, &s.tower)?));
            }
        }
    }
    Ok(set)
}

fn census_claims(s: &Session, x: &LevelData) -> Result<(Vec<Claim>, Vec<CensusEntry>), CliError> {
    let i_max = s.module.n * (s.div.degree() - 1);
    let entries = scan_graphs(x, i_max, u128::from(s.config.cap), &s.tower)?;
    let found = members(&entries);
    let expected = homothety_graphs(s)?;
    let mut claims = vec![Claim::new(
        "census contains the monic-homothety graphs",
        expected.is_subset(&found),
        format!("{} of {} expected graphs are members", expected.intersection(&found).count(), expected.len()),
    )];
    let detail = if found == expected {
        format!("{} pairs scanned, members {{{}}}", entries.len(), show(&found))
    } else {
        format!("{} pairs scanned, members {{{}}}, expected {{{}}}", entries.len(), show(&found), show(&expected))
    };
    claims.push(Claim::new("census is exactly the monic-homothety graphs", found == expected, detail));
    Ok((claims, entries))
}

fn example_1(s: &Session, x: &LevelData) -> Result<Vec<Claim>, CliError> {
    let tw = &s.tower;
    let q = tw.q();
    let theta = &s.module.theta;
    let u = &s.torsion.jet(0, 0)[0];
    let v = &s.torsion.jet(1, 0)[0];
    let eq_u = tw.add(&tw.pow(u, q), &tw.mul(u, theta));
    let eq_v = tw.add(&tw.pow(v, q), &tw.mul(v, &tw.sub(theta, &tw.one())));
    let identity = tw.add(&tw.sub(&tw.pow(u, q - 1), &tw.pow(v, q - 1)), &tw.one());
    let mut claims = vec![
        Claim::new(
            "torsion equations",
            eq_u.is_zero() && eq_v.is_zero(),
            "u^q + u theta = 0 and v^q + v (theta - 1) = 0",
        ),
        Claim::new("torsion identity", identity.is_zero(), "u^(q-1) - v^(q-1) + 1 = 0"),
        Claim::new(
            "nu = 1",
            x.delta_inf == Matrix::identity(tw, 1),
            format!("Delta_inf = {}", report::elem(x.delta_inf.get(0, 0))),
        ),
    ];
    let (census, _) = census_claims(s, x)?;
    claims.extend(census);
    let homotheties = homothety_graphs(s)?.iter().filter(|(i, _)| *i == 0).count() as u64;
    claims.push(Claim::new(
        "q - 2 homothety graphs",
        homotheties == q.saturating_sub(2),
        format!("{homotheties} degree-1 monic units t + c, c != 0, -1"),
    ));
    Ok(claims)
}

/// Values of a rank-one Δ at the (simple) points of D.
fn point_values(x: &LevelData, plan: &CrtPlan, tw: &FieldTower) -> Vec<FqElem> {
    x.local_jets(plan, tw).iter().map(|jet| jet[0].get(0, 0).clone()).collect()
}

fn example_2(s: &Session, x: &LevelData) -> Result<Vec<Claim>, CliError> {
    let tw = &s.tower;
    if s.div.points().iter().any(|pt| pt.r != 1) {
        return Err(CliError::Config("example 2 needs distinct points of multiplicity one".into()));
    }
    let l = s.div.len();
    let p = s.div.p_poly(tw);
    let cofactors: Vec<Poly> = (0..l).map(|i| p.divrem(&Poly::linear(tw, &s.div.alpha(i, tw)), tw).0).collect();
    let pf = partial_fractions(&s.div, tw)?;
    let m: Vec<FqElem> = pf.iter().map(|c| c[0].clone()).collect();
    // Σ m_i·p/(t - α_i) = 1
    let sum = (0..l).fold(Poly::zero(), |acc, i| acc.add(&cofactors[i].scale(&m[i], tw), tw));
    let mut claims = vec![Claim::new(
        "partial fractions",
        sum == Poly::one(tw) && m.iter().all(|c| tw.in_base(c) && !c.is_zero()),
        format!(
            "1/p = sum m_i/(t - a_i) with m = ({})",
            m.iter().map(|c| tw.fq_to_int(c).map(|v| v.to_string()).unwrap_or_default()).collect::<Vec<_>>().join(",")
        ),
    )];

    // δ(h) = Σ m_i·h_i·p/(t - α_i) agrees with the CRT plan on all of F_q^l
    let plan = CrtPlan::new(&s.div, tw)?;
    let fq = tw.fq_elements();
    let total = (tw.q() as usize).pow(l as u32);
    let mut crt_ok = true;
    for mut idx in 0..total {
        let h: Vec<FqElem> = (0..l)
            .map(|_| {
                let v = fq[idx % fq.len()].clone();
                idx /= fq.len();
                v
            })
            .collect();
        let delta = (0..l).fold(Poly::zero(), |acc, i| acc.add(&cofactors[i].scale(&tw.mul(&m[i], &h[i]), tw), tw));
        let jets: Vec<Vec<FqElem>> = h.iter().map(|v| vec![v.clone()]).collect();
        crt_ok &= plan.assemble(&jets, tw) == delta.padded(l, tw);
        crt_ok &= (0..l).all(|i| delta.eval(&s.div.alpha(i, tw), tw) == h[i]);
    }
    claims.push(Claim::new(
        "CRT isomorphism",
        crt_ok,
        format!("delta(h) = sum m_i h_i p/(t - a_i) on all {total} tuples, with delta(h)(a_i) = h_i"),
    ));

    let theta = &s.module.theta;
    let torsion_ok = (0..l).all(|i| {
        let a = s.div.alpha(i, tw);
        let z = &s.torsion.jet(i, 0)[0];
        tw.add(&tw.pow(z, tw.q()), &tw.mul(z, &tw.sub(theta, &a))).is_zero()
    });
    claims.push(Claim::new("torsion equations", torsion_ok, "a_i^q + a_i (theta - alpha_i) = 0 at every point"));

    let (census, entries) = census_claims(s, x)?;
    // membership ⇔ Σ m_i·(source_i / target_i) = ν_source / ν_target
    let target = point_values(x, &plan, tw);
    let nu_target = x.delta_inf.get(0, 0);
    let frob: Vec<LevelData> = (0..=s.div.degree()).map(|i| act_frobenius(x, i, tw)).collect();
    let mut formula_ok = true;
    for e in &entries {
        let src = act_group(&e.g, &frob[e.i], tw)?;
        let values = point_values(&src, &plan, tw);
        let mut lhs = tw.zero();
        for i in 0..l {
            lhs = tw.add(&lhs, &tw.mul(&m[i], &tw.div(&values[i], &target[i])?));
        }
        let rhs = tw.div(src.delta_inf.get(0, 0), nu_target)?;
        formula_ok &= (lhs == rhs) == e.member;
    }
    claims.push(Claim::new(
        "membership formula",
        formula_ok,
        format!("sum m_i (a_i x 1)/(1 x a_i) - 1 vanishes exactly on members, over {} pairs", entries.len()),
    ));
    claims.extend(census);
    Ok(claims)
}

fn example_3(s: &Session, x: &LevelData) -> Result<Vec<Claim>, CliError> {
    let tw = &s.tower;
    let a1 = s.module.coeff(1);
    let cp = tau_n_matrix(&s.module, tw);
    let shape = |c: &FqElem| {
        Matrix::from_fn(2, 2, |i, j| match (i, j) {
            (0, 1) => tw.neg(c),
            (1, 0) => tw.zero(),
            _ => tw.one(),
        })
    };
    let literal = shape(a1);
    let twisted = shape(&tw.frobenius_q(a1, 1));
    let mut claims = vec![Claim::new(
        "A = [[1, -a_1], [0, 1]]",
        cp.a == literal,
        format!(
            "A = [{}]; A {} [[1, -a_1^q], [0, 1]]",
            (0..2)
                .map(|i| cp.a.row(i).iter().map(report::elem).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("; "),
            if cp.a == twisted { "equals" } else { "differs from" }
        ),
    )];

    let nu = &x.delta_inf;
    let (n11, n21) = (nu.get(0, 0), nu.get(1, 0));
    let fixed = tw.frobenius_q(n21, 2) == *n21;
    let rel = tw.add(&tw.sub(&tw.frobenius_q(n11, 2), n11), &tw.mul(a1, n21));
    claims.push(Claim::new(
        "nu relations",
        fixed && rel.is_zero(),
        format!("nu_21^(q^2) = nu_21: {fixed}; nu_11^(q^2) - nu_11 + a_1 nu_21 = 0: {}", rel.is_zero()),
    ));
    let block = moore_block(&s.torsion, 0, 0, 2, tw);
    claims.push(Claim::new(
        "Delta is one Moore block",
        x.delta.len() == 1 && x.delta[0] == block,
        "Delta = (z_j^(q^k)) for the torsion basis z_1, z_2",
    ));
    let (diag, _) = zeta_member(x, x, tw)?;
    claims.push(Claim::new("diagonal", diag, "(x, x) lies on the correspondence"));

    let entries = scan_graphs(x, 0, u128::from(s.config.cap), tw)?;
    let mut agree = true;
    let mut count = 0;
    for e in &entries {
        let gx = act_group(&e.g, x, tw)?;
        agree &= e.member == is_equivalent(x, &gx, tw)?;
        count += usize::from(e.member);
    }
    claims.push(Claim::new(
        "diagonal census",
        agree,
        format!("{} group elements: (gx, x) is a member iff gx is equivalent to x ({count} members)", entries.len()),
    ));
    Ok(claims)
}

fn example_4(s: &Session, x: &LevelData) -> Result<Vec<Claim>, CliError> {
    let (mut claims, _) = census_claims(s, x)?;
    let cp = tau_n_matrix(&s.module, &s.tower);
    claims.insert(0, Claim::new("tau^2 matrix invertible", !cp.a.det(&s.tower).is_zero(), "det A != 0"));
    Ok(claims)
}
