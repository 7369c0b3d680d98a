//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Each line reports the wall time next to its budget. Fixture construction
//! (searching for a sufficient ambient degree) is counted inside the budget
//! of the criterion that needs it.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{fixture, oracle_member, params, random_elem, random_label, rank1, rank2, Fixture, LinearOracle};
use zetacorr::drinfeld::{torsion_dimension, DivisorSpec, DrinfeldModule, ThetaSpec};
use zetacorr::field::{FieldTower, FpMatrix, FqElem, Matrix};
use zetacorr::level::{
    act_frobenius, act_group, crt_delta, solve_nu, tau_n_matrix, CrtPlan, GroupElement, LabelMatrix, LevelData,
};
use zetacorr::ore::OrePoly;
use zetacorr::poly::{series_mul, Poly};
use zetacorr::zeta::{
    enumerate_group, is_equivalent, quotient_rank1, scan_graphs, theta_member_rank1, zeta_member, TransferPlan,
};

struct Outcome {
    ok: bool,
    detail: String,
    /// Time spent in the oracle, charged to criterion 10 instead.
    oracle: Duration,
    /// Replaces the measured wall time when set.
    elapsed: Option<Duration>,
}

fn verdict(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into(), oracle: Duration::ZERO, elapsed: None }
}

/// Agreement log between the closed-form criterion and the linear oracle,
/// filled by criteria 6 to 9 and judged by criterion 10.
#[derive(Default)]
struct OracleLog {
    pairs: usize,
    disagreements: usize,
    time: Duration,
}

impl OracleLog {
    fn record(&mut self, tw: &FieldTower, source: &LevelData, target: &LevelData, closed_form: bool) {
        let t0 = Instant::now();
        let oracle = oracle_member(tw, source, target);
        self.time += t0.elapsed();
        self.tally(oracle, closed_form);
    }

    fn tally(&mut self, oracle: bool, closed_form: bool) {
        self.pairs += 1;
        if oracle != closed_form {
            self.disagreements += 1;
        }
    }
}

fn run(n: usize, name: &str, budget: Duration, failures: &mut Vec<usize>, f: impl FnOnce() -> Outcome) {
    let t0 = Instant::now();
    let out = f();
    let elapsed = out.elapsed.unwrap_or_else(|| t0.elapsed().saturating_sub(out.oracle));
    let in_time = elapsed <= budget;
    let ok = out.ok && in_time;
    if !ok {
        failures.push(n);
    }
    let timing = format!(
        "{:.3}s / {:.3}s{}",
        elapsed.as_secs_f64(),
        budget.as_secs_f64(),
        if in_time { "" } else { " OVER BUDGET" }
    );
    println!("criterion {n}: {} {name} [{timing}] {}", if ok { "PASS" } else { "FAIL" }, out.detail);
}

fn fq(tw: &FieldTower, x: u64) -> FqElem {
    tw.fq_from_int(x).unwrap()
}

fn random_invertible(tw: &FieldTower, n: usize, rng: &mut ChaCha8Rng) -> LabelMatrix {
    loop {
        let l: LabelMatrix = (0..n).map(|_| (0..n).map(|_| random_label(tw, rng)).collect()).collect();
        let m = Matrix::from_rows(l.iter().map(|r| r.iter().map(|&x| fq(tw, x)).collect()).collect()).unwrap();
        if !m.det(tw).is_zero() {
            return l;
        }
    }
}

/// Companion product for rank 2 compared with [[1, -a_1], [0, 1]].
fn criterion_1() -> Outcome {
    let tw = FieldTower::new(3, 1, 4).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut worst = Duration::ZERO;
    let (mut literal, mut twisted, mut outside_fq) = (0, 0, 0);
    let cases = 40;
    for k in 0..cases {
        let theta = random_elem(&tw, &mut rng);
        // half the cases draw a_1 from F_q, half from the whole field
        let a1 = if k % 2 == 0 { fq(&tw, random_label(&tw, &mut rng)) } else { random_elem(&tw, &mut rng) };
        if !tw.in_base(&a1) {
            outside_fq += 1;
        }
        let dm = DrinfeldModule::new(2, theta, vec![a1.clone()]).unwrap();
        let t0 = Instant::now();
        let cp = tau_n_matrix(&dm, &tw);
        worst = worst.max(t0.elapsed());
        let expect =
            |x: &FqElem| Matrix::from_rows(vec![vec![tw.one(), tw.neg(x)], vec![tw.zero(), tw.one()]]).unwrap();
        if cp.a == expect(&a1) {
            literal += 1;
        }
        if cp.a == expect(&tw.frobenius_q(&a1, 1)) {
            twisted += 1;
        }
    }
    verdict(
        literal == cases && worst < Duration::from_millis(1),
        format!(
            "A = [[1,-a_1],[0,1]] in {literal}/{cases} modules ({outside_fq} with a_1 outside F_q); \
             A = [[1,-a_1^q],[0,1]] in {twisted}/{cases}; slowest call {:?}",
            worst
        ),
    )
}

fn poly_det(m: &[Vec<Poly>], tw: &FieldTower) -> Poly {
    let n = m.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut total = Poly::zero();
    permutations(&mut perm, 0, &mut |p| {
        let inversions = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
        let term = (0..n).fold(Poly::one(tw), |acc, i| acc.mul(&m[i][p[i]], tw));
        total = if inversions % 2 == 0 { total.add(&term, tw) } else { total.sub(&term, tw) };
    });
    total
}

fn permutations(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// det(A·t + B) = Π_{k<n} (t - θ^{q^k}).
fn criterion_2() -> Outcome {
    let towers = [FieldTower::new(2, 1, 6).unwrap(), FieldTower::new(3, 1, 6).unwrap()];
    let mut rng = ChaCha8Rng::seed_from_u64(202);
    let mut good = 0;
    for k in 0..100 {
        let tw = &towers[k % 2];
        let n = 1 + (k / 2) % 3;
        let theta = loop {
            let x = random_elem(tw, &mut rng);
            if !x.is_zero() {
                break x;
            }
        };
        let a: Vec<FqElem> = (1..n).map(|_| random_elem(tw, &mut rng)).collect();
        let dm = DrinfeldModule::new(n, theta.clone(), a).unwrap();
        let cp = tau_n_matrix(&dm, tw);
        let entries: Vec<Vec<Poly>> = (0..n)
            .map(|i| (0..n).map(|j| Poly::new(vec![cp.b.get(i, j).clone(), cp.a.get(i, j).clone()])).collect())
            .collect();
        let expected = (0..n).fold(Poly::one(tw), |acc, k| acc.mul(&Poly::linear(tw, &tw.frobenius_q(&theta, k)), tw));
        if poly_det(&entries, tw) == expected {
            good += 1;
        }
    }
    verdict(good == 100, format!("{good}/100 random modules with n in 1..=3, q in {{2,3}}"))
}

/// ν-solver on the rank-2, d = 1 fixtures.
fn criterion_3() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let fx = rank2(p, "0:1");
        let tw = fx.tw();
        let n = 2;
        let cp = tau_n_matrix(&fx.s.module, tw);
        let sol = solve_nu(&cp, n, tw).unwrap();
        let rows_ok = sol
            .fq_basis
            .iter()
            .all(|v| v.iter().map(|x| tw.frobenius_q(x, n)).collect::<Vec<_>>() == cp.a.vec_mul(v, tw));
        // F_p-span of the F_q-basis versus the F_{q^n}-span of the small basis
        let span = |vs: &[Vec<FqElem>], scalars: &[FqElem]| {
            let rows: Vec<Vec<u32>> = vs
                .iter()
                .flat_map(|v| {
                    scalars.iter().map(move |l| tw.flatten(&v.iter().map(|x| tw.mul(l, x)).collect::<Vec<_>>()))
                })
                .collect();
            rows
        };
        let fq_rows = span(&sol.fq_basis, tw.fq_basis_over_fp());
        let fqn_rows = span(&sol.fqn_basis, &tw.subfield_basis(n).unwrap());
        let r_fq = FpMatrix::from_rows(tw.p(), &fq_rows).rank();
        let r_fqn = FpMatrix::from_rows(tw.p(), &fqn_rows).rank();
        let r_both = FpMatrix::from_rows(tw.p(), &[fq_rows, fqn_rows].concat()).rank();
        let dim_ok = sol.fq_basis.len() == n * n && sol.fqn_basis.len() == n && r_fq == r_fqn && r_both == r_fq;

        let nu = &sol.nu;
        let a1 = fx.s.module.coeff(1);
        let fixed21 = tw.frobenius_q(nu.get(1, 0), 2) == *nu.get(1, 0);
        let rel11 =
            tw.add(&tw.sub(&tw.frobenius_q(nu.get(0, 0), 2), nu.get(0, 0)), &tw.mul(a1, nu.get(1, 0))).is_zero();
        let fixed11 = tw.frobenius_q(nu.get(0, 0), 2) == *nu.get(0, 0);
        ok &= rows_ok && dim_ok && fixed21 && rel11;
        notes.push(format!(
            "q={}: rows {} , F_q^n-dim {} , nu21 fixed {} , nu11 relation {} (nu11 fixed {})",
            tw.q(),
            if rows_ok { "ok" } else { "BAD" },
            if dim_ok { n } else { 0 },
            fixed21,
            rel11,
            fixed11
        ));
    }
    verdict(ok, notes.join("; "))
}

/// CRT on F_3[t]/(t(t-1)) and F_3[t]/(t²).
fn criterion_4() -> Outcome {
    let tw = FieldTower::new(3, 1, 1).unwrap();
    let elems = tw.fq_elements();
    let mut notes = Vec::new();
    let mut ok = true;
    for (div_s, jet_mul) in [("0:1,1:1", false), ("0:2", true)] {
        let div: DivisorSpec = div_s.parse().unwrap();
        let p = div.p_poly(&tw);
        let plan = CrtPlan::new(&div, &tw).unwrap();
        // an element of the product ring, as jets per point
        let locals: Vec<Vec<Vec<FqElem>>> = elems
            .iter()
            .flat_map(|a| elems.iter().map(move |b| (a.clone(), b.clone())))
            .map(|(a, b)| if jet_mul { vec![vec![a, b]] } else { vec![vec![a], vec![b]] })
            .collect();
        let mul_local = |x: &Vec<Vec<FqElem>>, y: &Vec<Vec<FqElem>>| -> Vec<Vec<FqElem>> {
            x.iter().zip(y).map(|(a, b)| series_mul(a, b, a.len(), &tw)).collect()
        };
        let add_local = |x: &Vec<Vec<FqElem>>, y: &Vec<Vec<FqElem>>| -> Vec<Vec<FqElem>> {
            x.iter().zip(y).map(|(a, b)| a.iter().zip(b).map(|(u, v)| tw.add(u, v)).collect()).collect()
        };
        let delta = |x: &Vec<Vec<FqElem>>| crt_delta(&div, x, &tw).unwrap();
        let images: BTreeSet<Vec<FqElem>> = locals.iter().map(|x| delta(x).padded(2, &tw)).collect();
        let bijective = images.len() == 9 && locals.iter().all(|x| plan.extract(&delta(x).padded(2, &tw), &tw) == *x);
        let mut morph = 0;
        for x in &locals {
            for y in &locals {
                let prod = delta(&mul_local(x, y));
                let sum = delta(&add_local(x, y));
                if prod == delta(x).mul(&delta(y), &tw).rem(&p, &tw) && sum == delta(x).add(&delta(y), &tw) {
                    morph += 1;
                }
            }
        }
        let one_ok = delta(
            &locals
                .iter()
                .find(|x| x.iter().all(|j| j[0] == tw.one() && j[1..].iter().all(FqElem::is_zero)))
                .unwrap()
                .clone(),
        ) == Poly::one(&tw);
        ok &= bijective && morph == 81 && one_ok;
        notes.push(format!("p={div_s}: bijective {bijective}, morphism on {morph}/81 pairs, unit {one_ok}"));
    }
    verdict(ok, notes.join("; "))
}

/// Example-1 torsion identity and kernel dimensions.
fn criterion_5() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [3u32, 5] {
        let fx = rank1(p, "0:1,1:1");
        let tw = fx.tw();
        let u = &fx.s.torsion.jet(0, 0)[0];
        let v = &fx.s.torsion.jet(1, 0)[0];
        let e = tw.q() - 1;
        let lhs = tw.add(&tw.sub(&tw.pow(u, e), &tw.pow(v, e)), &tw.one());
        ok &= lhs.is_zero();
        notes.push(format!("q={p}: u^(q-1) - v^(q-1) + 1 = 0 {}", lhs.is_zero()));
    }
    let fixtures: Vec<(&str, Fixture)> = vec![
        ("n=1 q=3 0:1,1:1", rank1(3, "0:1,1:1")),
        ("n=1 q=5 0:1,1:1", rank1(5, "0:1,1:1")),
        ("n=1 q=3 0:2,1:1", rank1(3, "0:2,1:1")),
        ("n=2 q=2 0:1", rank2(2, "0:1")),
        ("n=2 q=3 0:1", rank2(3, "0:1")),
        ("n=2 q=2 0:1,1:1", rank2(2, "0:1,1:1")),
        ("n=2 q=3 0:1,1:1", rank2(3, "0:1,1:1")),
    ];
    let mut dims_ok = 0;
    for (_, fx) in &fixtures {
        let dim = torsion_dimension(&fx.s.module, &fx.div, fx.tw()).unwrap();
        if dim == fx.s.module.n * fx.div.degree() {
            dims_ok += 1;
        }
    }
    ok &= dims_ok == fixtures.len();
    notes.push(format!("kernel dimension n*d on {dims_ok}/{} fixtures", fixtures.len()));
    verdict(ok, notes.join("; "))
}

fn random_divisor(q: u64, rng: &mut ChaCha8Rng) -> String {
    let d = rng.gen_range(1..=3usize);
    let mut points: Vec<(u64, usize)> = Vec::new();
    for _ in 0..d {
        let a = rng.gen_range(0..q);
        match points.iter_mut().find(|(x, _)| *x == a) {
            Some(pt) => pt.1 += 1,
            None => points.push((a, 1)),
        }
    }
    points.sort();
    points.iter().map(|(a, r)| format!("{a}:{r}")).collect::<Vec<_>>().join(",")
}

/// A monic s of the given degree over F_q that is a unit mod p, if one is drawn.
fn random_monic_unit(deg: usize, div: &DivisorSpec, tw: &FieldTower, rng: &mut ChaCha8Rng) -> Option<Poly> {
    for _ in 0..50 {
        let mut labels: Vec<u64> = (0..deg).map(|_| random_label(tw, rng)).collect();
        labels.push(1);
        let s = Poly::from_fq_ints(tw, &labels).unwrap();
        if (0..div.len()).all(|i| !s.eval(&div.alpha(i, tw), tw).is_zero()) {
            return Some(s);
        }
    }
    None
}

/// Monic-homothety inclusion on random modules.
fn criterion_6(log: &mut OracleLog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(606);
    let (mut done, mut members, mut skipped) = (0, 0, 0);
    while done < 50 {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let n = rng.gen_range(1..=2usize);
        let div_s = random_divisor(p as u64, &mut rng);
        let theta = ThetaSpec::Random { min_degree: 4, seed: rng.gen() };
        let a_polys = if n == 2 { vec![(0..3).map(|_| rng.gen_range(0..p as u64)).collect()] } else { vec![] };
        let Some(fx) = fixture(p, &params(n, theta, a_polys), &div_s, 16) else {
            skipped += 1;
            continue;
        };
        let tw = fx.tw();
        let d = fx.div.degree();
        let i = rng.gen_range(0..d);
        let Some(s) = random_monic_unit(d - 1 - i, &fx.div, tw, &mut rng) else {
            skipped += 1;
            continue;
        };
        let h = GroupElement::central(&s, n, &fx.div, tw).unwrap();
        let source = act_group(&h, &act_frobenius(&fx.x, n * i, tw), tw).unwrap();
        let (member, _) = zeta_member(&source, &fx.x, tw).unwrap();
        log.record(tw, &source, &fx.x, member);
        done += 1;
        if member {
            members += 1;
        }
    }
    verdict(
        members == 50,
        format!("{members}/50 members ({skipped} draws skipped: no sufficient degree <= 16 or no unit s)"),
    )
}

type MemberSet = BTreeSet<(usize, GroupElement)>;

/// Scans the census, then re-derives every verdict pair by pair with the
/// closed-form criterion and the linear oracle. The re-derivation is charged
/// to the oracle log, not to the scan.
fn census_members(fx: &Fixture, i_max: usize, log: &mut OracleLog) -> (MemberSet, usize, bool) {
    let tw = fx.tw();
    let entries = scan_graphs(&fx.x, i_max, u128::MAX, tw).unwrap();
    let t0 = Instant::now();
    let mut closed_form_agrees = true;
    let frob: Vec<LevelData> = (0..=i_max).map(|i| act_frobenius(&fx.x, i, tw)).collect();
    let plan = TransferPlan::new(&fx.x, tw).unwrap();
    let oracle = LinearOracle::new(tw, &fx.x);
    for e in &entries {
        let source = act_group(&e.g, &frob[e.i], tw).unwrap();
        let member = plan.transfer(&source, tw).unwrap().member;
        closed_form_agrees &= member == e.member;
        log.tally(oracle.member(tw, &source), member);
    }
    log.time += t0.elapsed();
    let set = entries.iter().filter(|e| e.member).map(|e| (e.i, e.g.clone())).collect();
    (set, entries.len(), closed_form_agrees)
}

/// {h_{t+c} at i = 0 : t+c a unit mod p} ∪ {identity at i = n}.
fn expected_census(fx: &Fixture) -> MemberSet {
    let tw = fx.tw();
    let n = fx.s.module.n;
    let mut set = MemberSet::new();
    for c in 0..tw.q() {
        let s = Poly::from_fq_ints(tw, &[c, 1]).unwrap();
        if (0..fx.div.len()).all(|i| !s.eval(&fx.div.alpha(i, tw), tw).is_zero()) {
            set.insert((0, GroupElement::central(&s, n, &fx.div, tw).unwrap()));
        }
    }
    set.insert((n, GroupElement::identity(n, &fx.div)));
    set
}

fn show(set: &MemberSet) -> String {
    set.iter().map(|(i, g)| format!("i={i} {}", g.label())).collect::<Vec<_>>().join(", ")
}

fn census_criterion(fx: &Fixture, log: &mut OracleLog) -> (bool, String) {
    let n = fx.s.module.n;
    let i_max = n * (fx.div.degree() - 1);
    let (found, checked, agrees) = census_members(fx, i_max, log);
    let expected = expected_census(fx);
    let ok = found == expected && agrees;
    let detail = format!(
        "q={} M={}: {checked} pairs, members {{{}}}{}{}",
        fx.tw().q(),
        fx.tw().ambient_degree(),
        show(&found),
        if found == expected { String::new() } else { format!(" expected {{{}}}", show(&expected)) },
        if agrees { "" } else { " (census and direct check disagree)" }
    );
    (ok, detail)
}

/// Example-1 census.
fn criterion_7(log: &mut OracleLog) -> Outcome {
    let fx = rank1(3, "0:1,1:1");
    let (ok, detail) = census_criterion(&fx, log);
    verdict(ok, detail)
}

/// Example-3 diagonal for d = 1.
fn criterion_8(log: &mut OracleLog) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(808);
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let fx = rank2(p, "0:1");
        let tw = fx.tw();
        let (diag, _) = zeta_member(&fx.x, &fx.x, tw).unwrap();
        log.record(tw, &fx.x, &fx.x, diag);
        let (mut tested, mut rejected, mut equivalent_draws) = (0, 0, 0);
        while tested < 20 {
            let g = GroupElement {
                g_inf: random_invertible(tw, 2, &mut rng),
                g_d: vec![vec![random_invertible(tw, 2, &mut rng)]],
            };
            let gx = act_group(&g, &fx.x, tw).unwrap();
            if is_equivalent(&fx.x, &gx, tw).unwrap() {
                equivalent_draws += 1;
                continue;
            }
            tested += 1;
            let (member, _) = zeta_member(&gx, &fx.x, tw).unwrap();
            log.record(tw, &gx, &fx.x, member);
            if !member {
                rejected += 1;
            }
        }
        ok &= diag && rejected == 20;
        notes.push(format!(
            "q={p}: diagonal {diag}, {rejected}/20 rejected ({equivalent_draws} equivalent draws skipped)"
        ));
    }
    verdict(ok, notes.join("; "))
}

/// Example-4 census, rank 2.
fn criterion_9(log: &mut OracleLog) -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for p in [2u32, 3] {
        let fx = rank2(p, "0:1,1:1");
        let (good, detail) = census_criterion(&fx, log);
        ok &= good;
        notes.push(detail);
    }
    verdict(ok, notes.join("; "))
}

fn criterion_10(log: &OracleLog) -> Outcome {
    let mut out = verdict(
        log.disagreements == 0 && log.pairs > 0,
        format!("{} pairs from criteria 6-9, {} disagreements", log.pairs, log.disagreements),
    );
    out.elapsed = Some(log.time);
    out
}

/// Runs a criterion that feeds the oracle log, keeping the oracle's time
/// out of its own budget.
fn with_log(log: &mut OracleLog, f: impl FnOnce(&mut OracleLog) -> Outcome) -> Outcome {
    let before = log.time;
    let mut out = f(log);
    out.oracle = log.time - before;
    out
}

/// Rank-one theta identity over every census pair of the rank-one fixtures.
fn criterion_11() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (p, div) in [(3u32, "0:1,1:1"), (5, "0:1,1:1"), (3, "0:2,1:1"), (3, "0:1"), (2, "0:1,1:1")] {
        let fx = rank1(p, div);
        let tw = fx.tw();
        let d = fx.div.degree();
        let group = enumerate_group(1, &fx.div, tw, u128::MAX).unwrap();
        let mut agree = 0;
        let mut total = 0;
        for i in 0..d {
            let fi = act_frobenius(&fx.x, i, tw);
            for g in &group {
                let source = act_group(g, &fi, tw).unwrap();
                let (member, _) = zeta_member(&source, &fx.x, tw).unwrap();
                let theta = theta_member_rank1(&quotient_rank1(&source, &fx.x, tw).unwrap()).unwrap();
                total += 1;
                if theta == member {
                    agree += 1;
                }
            }
        }
        ok &= agree == total;
        notes.push(format!("q={p} D={div}: {agree}/{total}"));
    }
    verdict(ok, notes.join("; "))
}

/// Isogeny test.
fn criterion_12() -> Outcome {
    let fx = rank2(3, "0:1");
    let tw = fx.tw();
    let dm = &fx.s.module;
    let mut rng = ChaCha8Rng::seed_from_u64(1212);
    let mut endo = 0;
    for _ in 0..20 {
        let deg = rng.gen_range(0..4);
        let b: Vec<u64> = (0..=deg).map(|_| random_label(tw, &mut rng)).collect();
        let u = dm.phi(&Poly::from_fq_ints(tw, &b).unwrap(), tw).unwrap();
        if DrinfeldModule::is_isogeny(&u, dm, dm, tw).unwrap() {
            endo += 1;
        }
    }
    let sigma = OrePoly::sigma_pow(tw, 1);
    let frob = DrinfeldModule::is_isogeny(&sigma, dm, &dm.frobenius_twist(1, tw), tw).unwrap();
    let mut rejected = 0;
    for _ in 0..20 {
        let u = OrePoly::new((0..3).map(|_| random_elem(tw, &mut rng)).collect());
        if !DrinfeldModule::is_isogeny(&u, dm, dm, tw).unwrap() {
            rejected += 1;
        }
    }
    verdict(
        endo == 20 && frob && rejected == 20,
        format!("phi_b endomorphisms {endo}/20, sigma: phi -> phi^(q) {frob}, random rejected {rejected}/20"),
    )
}

fn main() {
    let mut failures = Vec::new();
    let mut log = OracleLog::default();
    let s = Duration::from_secs;
    run(1, "companion product", s(1), &mut failures, criterion_1);
    run(2, "determinant identity", s(1), &mut failures, criterion_2);
    run(3, "infinity-level solver", s(1), &mut failures, criterion_3);
    run(4, "CRT ring isomorphism", s(1), &mut failures, criterion_4);
    run(5, "torsion identities", s(1), &mut failures, criterion_5);
    run(6, "monic-homothety inclusion", s(5), &mut failures, || with_log(&mut log, criterion_6));
    run(7, "rank-one census", s(10), &mut failures, || with_log(&mut log, criterion_7));
    run(8, "diagonal for d = 1", s(5), &mut failures, || with_log(&mut log, criterion_8));
    run(9, "rank-two census", s(60), &mut failures, || with_log(&mut log, criterion_9));
    run(10, "oracle equivalence", s(60), &mut failures, || criterion_10(&log));
    run(11, "rank-one theta identity", s(60), &mut failures, criterion_11);
    run(12, "isogeny test", s(1), &mut failures, criterion_12);
    if failures.is_empty() {
        println!("acceptance: all 12 criteria PASS");
    } else {
        println!("acceptance: {} FAIL ({:?})", failures.len(), failures);
        std::process::exit(1);
    }
}
