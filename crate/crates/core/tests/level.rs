mod common;

use std::sync::OnceLock;

use proptest::prelude::*;
use zetacorr::drinfeld::DivisorSpec;
use zetacorr::field::{FieldTower, FqElem, Matrix};
use zetacorr::level::{
    act_frobenius, act_group, companion_matrix, jet_mat_inv, jet_mat_mul, solve_nu, tau_n_matrix, CrtPlan,
    GroupElement, LevelData,
};
use zetacorr::poly::Poly;
use zetacorr::zeta::enumerate_group;
use zetacorr::Error;

use common::{rank1, rank2, rank3, Fixture};

struct Setup {
    fx: Fixture,
    group: Vec<GroupElement>,
}

fn rank_two() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let fx = rank2(3, "0:1,1:1");
        let group = enumerate_group(2, &fx.div, fx.tw(), u128::MAX).unwrap();
        Setup { fx, group }
    })
}

fn rank_one_jets() -> &'static Setup {
    static S: OnceLock<Setup> = OnceLock::new();
    S.get_or_init(|| {
        let fx = rank1(3, "0:2,1:1");
        let group = enumerate_group(1, &fx.div, fx.tw(), u128::MAX).unwrap();
        Setup { fx, group }
    })
}

fn setups() -> [&'static Setup; 2] {
    [rank_two(), rank_one_jets()]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn group_action_is_an_action(which in 0usize..2, a in any::<usize>(), b in any::<usize>()) {
        let s = setups()[which];
        let tw = s.fx.tw();
        let g = &s.group[a % s.group.len()];
        let h = &s.group[b % s.group.len()];
        let lhs = act_group(g, &act_group(h, &s.fx.x, tw).unwrap(), tw).unwrap();
        let rhs = act_group(&g.compose(h, tw).unwrap(), &s.fx.x, tw).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn frobenius_action_composes(which in 0usize..2, i in 0usize..30, j in 0usize..30) {
        let s = setups()[which];
        let (tw, x) = (s.fx.tw(), &s.fx.x);
        prop_assert_eq!(act_frobenius(&act_frobenius(x, i, tw), j, tw), act_frobenius(x, i + j, tw));
    }

    #[test]
    fn frobenius_commutes_with_the_group(which in 0usize..2, a in any::<usize>(), i in 1usize..4) {
        let s = setups()[which];
        let (tw, x) = (s.fx.tw(), &s.fx.x);
        let g = &s.group[a % s.group.len()];
        prop_assert_eq!(
            act_group(g, &act_frobenius(x, i, tw), tw).unwrap(),
            act_frobenius(&act_group(g, x, tw).unwrap(), i, tw)
        );
    }

    #[test]
    fn crt_round_trip(div_idx in 0usize..4, seed in proptest::collection::vec(0u32..81, 6)) {
        let tw = FieldTower::new(3, 1, 4).unwrap();
        let div: DivisorSpec = ["0:1,1:1", "0:2,1:1", "0:3", "0:1,1:1,2:1"][div_idx].parse().unwrap();
        let plan = CrtPlan::new(&div, &tw).unwrap();
        let mut it = seed.iter().cycle();
        let jets: Vec<Vec<FqElem>> = (0..div.len())
            .map(|i| (0..div.mult(i)).map(|_| {
                let v = *it.next().unwrap();
                tw.elem((0..4).map(|c| (v >> c) % 3).collect()).unwrap()
            }).collect())
            .collect();
        let coeffs = plan.assemble(&jets, &tw);
        prop_assert_eq!(coeffs.len(), div.degree());
        prop_assert_eq!(plan.extract(&coeffs, &tw), jets.clone());
        // the assembled polynomial really has these Taylor jets
        let poly = Poly::new(coeffs);
        for (i, jet) in jets.iter().enumerate() {
            prop_assert_eq!(&poly.jet(&div.alpha(i, &tw), div.mult(i), &tw), jet);
        }
    }
}

#[test]
fn global_scalars_and_identity_act_as_expected() {
    let s = rank_two();
    let tw = s.fx.tw();
    let x = &s.fx.x;
    assert_eq!(act_group(&GroupElement::identity(2, &s.fx.div), x, tw).unwrap(), *x);
    let two = GroupElement::scalar(2, 2, &s.fx.div);
    let c = tw.fq_from_int(2).unwrap();
    let scaled = act_group(&two, x, tw).unwrap();
    assert_eq!(scaled.delta_inf, x.delta_inf.scale(&c, tw));
    assert_eq!(scaled.delta, x.delta.iter().map(|m| m.scale(&c, tw)).collect::<Vec<_>>());
    assert!(two.is_global_scalar());
    assert_eq!(two.normalize(tw).unwrap(), GroupElement::identity(2, &s.fx.div));
}

#[test]
fn central_elements_multiply_delta_by_a_polynomial() {
    let s = rank_one_jets();
    let tw = s.fx.tw();
    let x = &s.fx.x;
    let p = s.fx.div.p_poly(tw);
    let poly_s = Poly::from_fq_ints(tw, &[2, 1, 1]).unwrap();
    let h = GroupElement::central(&poly_s, 1, &s.fx.div, tw).unwrap();
    let moved = act_group(&h, x, tw).unwrap();
    let delta = Poly::new(x.delta.iter().map(|m| m.get(0, 0).clone()).collect());
    let expected = delta.mul(&poly_s, tw).rem(&p, tw).padded(s.fx.div.degree(), tw);
    assert_eq!(moved.delta.iter().map(|m| m.get(0, 0).clone()).collect::<Vec<_>>(), expected);
    assert_eq!(moved.delta_inf, x.delta_inf);
    // s vanishing on D is not a group element
    let bad = Poly::from_fq_ints(tw, &[0, 1]).unwrap();
    assert!(matches!(GroupElement::central(&bad, 1, &s.fx.div, tw), Err(Error::NotInvertible(_))));
}

#[test]
fn moore_rows_are_eigenrows_of_the_companion_matrix() {
    let fx = &rank_two().fx;
    let tw = fx.tw();
    let c = companion_matrix(&fx.s.module, tw);
    for i in 0..fx.div.len() {
        let alpha = fx.div.alpha(i, tw);
        // C evaluated at t = α_i
        let c_at = c[0].add(&c[1].scale(&alpha, tw), tw);
        for z in fx.s.torsion.jet(i, 0) {
            let row = vec![z.clone(), tw.frobenius_q(z, 1)];
            let twisted: Vec<FqElem> = row.iter().map(|x| tw.frobenius_q(x, 1)).collect();
            assert_eq!(twisted, c_at.vec_mul(&row, tw));
        }
    }
}

/// Row k of the last column must carry -a_k; the reversed order breaks the
/// eigenrow property from rank three on.
#[test]
fn rank_three_companion_column_order() {
    let fx = rank3(3, "0:1,1:1");
    let tw = fx.tw();
    let dm = &fx.s.module;
    assert_ne!(dm.coeff(1), dm.coeff(2));
    let c = companion_matrix(dm, tw);
    let mut reversed = c.clone();
    reversed[0].set(1, 2, tw.neg(dm.coeff(2)));
    reversed[0].set(2, 2, tw.neg(dm.coeff(1)));
    let eigen = |c: &[Matrix], i: usize, z: &FqElem| {
        let alpha = fx.div.alpha(i, tw);
        let c_at = c[0].add(&c[1].scale(&alpha, tw), tw);
        let row: Vec<FqElem> = (0..3).map(|k| tw.frobenius_q(z, k)).collect();
        let twisted: Vec<FqElem> = row.iter().map(|x| tw.frobenius_q(x, 1)).collect();
        twisted == c_at.vec_mul(&row, tw)
    };
    for i in 0..fx.div.len() {
        for z in fx.s.torsion.jet(i, 0) {
            assert!(eigen(&c, i, z));
            assert!(!eigen(&reversed, i, z));
        }
    }
}

#[test]
fn canonical_nu_solves_the_infinity_equation() {
    for fx in [&rank_two().fx, &rank_one_jets().fx] {
        let tw = fx.tw();
        let n = fx.s.module.n;
        let cp = tau_n_matrix(&fx.s.module, tw);
        let nu = &fx.x.delta_inf;
        for r in 0..n {
            let row = nu.row(r).to_vec();
            let lhs: Vec<FqElem> = row.iter().map(|x| tw.frobenius_q(x, n)).collect();
            assert_eq!(lhs, cp.a.vec_mul(&row, tw));
        }
        assert!(!nu.det(tw).is_zero());
        assert_eq!(solve_nu(&cp, n, tw).unwrap().nu, *nu);
    }
}

#[test]
fn nu_solver_reports_bad_inputs() {
    let fx = &rank_two().fx;
    let tw = fx.tw();
    let mut cp = tau_n_matrix(&fx.s.module, tw);
    cp.a = Matrix::zeros(tw, 2, 2);
    assert_eq!(solve_nu(&cp, 2, tw).unwrap_err(), Error::SingularA);
    let odd = FieldTower::new(3, 1, 3).unwrap();
    let cp = zetacorr::CompanionPair { a: Matrix::identity(&odd, 2), b: Matrix::zeros(&odd, 2, 2) };
    assert!(matches!(solve_nu(&cp, 2, &odd), Err(Error::AmbientTooSmall(_))));
}

#[test]
fn jet_matrices_invert() {
    let fx = &rank_one_jets().fx;
    let tw = fx.tw();
    let plan = CrtPlan::new(&fx.div, tw).unwrap();
    for jet in fx.x.local_jets(&plan, tw) {
        let r = jet.len();
        let inv = jet_mat_inv(&jet, r, tw).unwrap();
        let prod = jet_mat_mul(&jet, &inv, r, tw);
        assert_eq!(prod[0], Matrix::identity(tw, 1));
        assert!(prod[1..].iter().all(Matrix::is_zero));
    }
}

#[test]
fn validation_rejects_broken_data() {
    let fx = &rank_two().fx;
    let tw = fx.tw();
    assert!(fx.x.validate(tw).is_ok());
    let mut singular = fx.x.clone();
    singular.delta_inf = Matrix::zeros(tw, 2, 2);
    assert!(matches!(singular.validate(tw), Err(Error::InvalidLevelData(_))));
    let mut short = fx.x.clone();
    short.delta.pop();
    assert!(matches!(short.validate(tw), Err(Error::InvalidLevelData(_))));
    let mut dead = fx.x.clone();
    dead.delta = vec![Matrix::zeros(tw, 2, 2); 2];
    assert!(matches!(dead.validate(tw), Err(Error::InvalidLevelData(_))));
}

#[test]
fn level_data_serializes_with_stable_keys() {
    let fx = &rank_one_jets().fx;
    let json = serde_json::to_value(&fx.x).unwrap();
    let keys: Vec<&str> = json.as_object().unwrap().keys().map(String::as_str).collect();
    assert_eq!(keys, ["delta", "delta_inf", "divisor"]);
    assert_eq!(json["divisor"], serde_json::json!([{ "alpha": 0, "r": 2 }, { "alpha": 1, "r": 1 }]));
    let back: LevelData = serde_json::from_value(json).unwrap();
    assert_eq!(back, fx.x);
}

#[test]
fn group_elements_are_checked() {
    let s = rank_two();
    let tw = s.fx.tw();
    let mut g = GroupElement::identity(2, &s.fx.div);
    g.g_inf = vec![vec![1, 1], vec![1, 1]];
    assert!(matches!(act_group(&g, &s.fx.x, tw), Err(Error::NotInvertible(_))));
    let mut g = GroupElement::identity(2, &s.fx.div);
    g.g_d.pop();
    assert!(g.check(2, &s.fx.div, tw).is_err());
}
