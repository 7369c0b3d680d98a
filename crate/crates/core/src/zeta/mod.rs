//! Membership in the zeta correspondence: the transfer matrix between two
//! level data, the residual criterion, the rank-one theta test and the
//! graph census.

mod census;

pub use census::{enumerate_group, group_order, scan_graphs, scan_members, CensusEntry, CensusSummary};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTower, Matrix};
use crate::level::{jet_mat_inv, jet_mat_mul, CrtPlan, LevelData};

/// A(t) with Δ_target·A ≡ Δ_source (mod p), and the residual
/// Δ_∞(source) - Δ_∞(target)·A_{d-1}.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransferResult {
    /// A_0 … A_{d-1}
    pub a_poly: Vec<Matrix>,
    pub residual: Matrix,
    pub member: bool,
}

impl TransferResult {
    /// The top coefficient A_{d-1}.
    pub fn top(&self) -> &Matrix {
        self.a_poly.last().expect("d >= 1")
    }

    /// The equivalent form Δ̄_∞^{-1}·Δ_∞·A_{d-1} - Id, defined when the
    /// source Δ_∞ is invertible (always, for valid level data).
    pub fn theorem_form(&self, source: &LevelData, target: &LevelData, tw: &FieldTower) -> Result<Matrix> {
        let inv = source.delta_inf.inverse(tw)?;
        let n = source.n();
        Ok(inv.mul(&target.delta_inf, tw).mul(self.top(), tw).sub(&Matrix::identity(tw, n), tw))
    }
}

fn check_pair(source: &LevelData, target: &LevelData) -> Result<()> {
    if source.divisor != target.divisor {
        return Err(Error::ShapeMismatch("level data over different divisors".into()));
    }
    if source.n() != target.n() || source.d() != target.d() {
        return Err(Error::ShapeMismatch("level data of different rank".into()));
    }
    Ok(())
}

/// Cached data of a fixed target: its CRT plan and the inverses of its
/// local jets. Reused across many sources in a census.
#[derive(Clone, Debug)]
pub struct TransferPlan {
    crt: CrtPlan,
    target: LevelData,
    inv_jets: Vec<Vec<Matrix>>,
}

impl TransferPlan {
    pub fn new(target: &LevelData, tw: &FieldTower) -> Result<Self> {
        let crt = CrtPlan::new(&target.divisor, tw)?;
        let inv_jets = target
            .local_jets(&crt, tw)
            .iter()
            .enumerate()
            .map(|(i, jet)| jet_mat_inv(jet, crt.mult(i), tw).map_err(|_| Error::SingularDPart))
            .collect::<Result<Vec<_>>>()?;
        Ok(TransferPlan { crt, target: target.clone(), inv_jets })
    }

    pub fn crt(&self) -> &CrtPlan {
        &self.crt
    }

    pub fn target(&self) -> &LevelData {
        &self.target
    }

    /// Local jets of A = Δ_target^{-1}·Δ_source given the source's local jets.
    pub fn local_transfer(&self, source_jets: &[Vec<Matrix>], tw: &FieldTower) -> Vec<Vec<Matrix>> {
        source_jets
            .iter()
            .zip(&self.inv_jets)
            .enumerate()
            .map(|(i, (s, inv))| jet_mat_mul(inv, s, self.crt.mult(i), tw))
            .collect()
    }

    /// Residual Δ_∞(source) - Δ_∞(target)·A_{d-1} from local data of the source.
    pub fn residual_local(&self, source_jets: &[Vec<Matrix>], source_inf: &Matrix, tw: &FieldTower) -> Matrix {
        let a_local = self.local_transfer(source_jets, tw);
        let top = self.crt.assemble_mats_coeff(&a_local, self.crt.degree() - 1, tw);
        source_inf.sub(&self.target.delta_inf.mul(&top, tw), tw)
    }

    pub fn transfer(&self, source: &LevelData, tw: &FieldTower) -> Result<TransferResult> {
        check_pair(source, &self.target)?;
        let a_local = self.local_transfer(&source.local_jets(&self.crt, tw), tw);
        let a_poly = self.crt.assemble_mats(&a_local, tw);
        verify_defining_equation(&self.target, &a_poly, source, &self.crt, tw)?;
        let top = a_poly.last().expect("d >= 1");
        let residual = source.delta_inf.sub(&self.target.delta_inf.mul(top, tw), tw);
        let member = residual.is_zero();
        Ok(TransferResult { a_poly, residual, member })
    }
}

/// Re-checks Δ_target(t)·A(t) ≡ Δ_source(t) by polynomial multiplication and
/// reduction modulo p(t).
fn verify_defining_equation(
    target: &LevelData,
    a_poly: &[Matrix],
    source: &LevelData,
    crt: &CrtPlan,
    tw: &FieldTower,
) -> Result<()> {
    let n = target.n();
    let p = crt.modulus();
    let d = crt.degree();
    for r in 0..n {
        for c in 0..n {
            let mut acc = crate::poly::Poly::zero();
            for k in 0..n {
                let x = crate::poly::Poly::new(target.delta.iter().map(|m| m.get(r, k).clone()).collect());
                let y = crate::poly::Poly::new(a_poly.iter().map(|m| m.get(k, c).clone()).collect());
                acc = acc.add(&x.mul(&y, tw), tw);
            }
            let lhs = acc.rem(p, tw).padded(d, tw);
            let rhs: Vec<_> = source.delta.iter().map(|m| m.get(r, c).clone()).collect();
            if lhs != rhs {
                return Err(Error::InvalidLevelData("transfer matrix fails its defining equation".into()));
            }
        }
    }
    Ok(())
}

/// A(t) = Δ_target^{-1}·Δ_source mod p(t) and the residual criterion.
pub fn transfer(source: &LevelData, target: &LevelData, tw: &FieldTower) -> Result<TransferResult> {
    check_pair(source, target)?;
    TransferPlan::new(target, tw)?.transfer(source, tw)
}

/// Whether the pair (source, target) lies on the correspondence, with the
/// transfer certificate.
pub fn zeta_member(source: &LevelData, target: &LevelData, tw: &FieldTower) -> Result<(bool, TransferResult)> {
    let res = transfer(source, target, tw)?;
    Ok((res.member, res))
}

/// Rank one: Δ_∞ equals the t^{d-1} coefficient of Δ(t).
pub fn theta_member_rank1(l: &LevelData) -> Result<bool> {
    if l.n() != 1 {
        return Err(Error::RankNotOne(l.n()));
    }
    Ok(l.delta.last().expect("d >= 1") == &l.delta_inf)
}

/// Rank one: the quotient datum (Δ_source/Δ_target, ν_source/ν_target).
pub fn quotient_rank1(source: &LevelData, target: &LevelData, tw: &FieldTower) -> Result<LevelData> {
    check_pair(source, target)?;
    if source.n() != 1 {
        return Err(Error::RankNotOne(source.n()));
    }
    let plan = TransferPlan::new(target, tw)?;
    let a_local = plan.local_transfer(&source.local_jets(&plan.crt, tw), tw);
    let delta = plan.crt.assemble_mats(&a_local, tw);
    let inf = target.delta_inf.inverse(tw)?.mul(&source.delta_inf, tw);
    Ok(LevelData { delta, delta_inf: inf, divisor: source.divisor.clone() })
}

/// Whether two level data are equivalent under a change of section basis:
/// Δ_b ≡ Δ_a·G (mod p) and Δ_∞(b) = Δ_∞(a)·G for a constant invertible G.
pub fn is_equivalent(a: &LevelData, b: &LevelData, tw: &FieldTower) -> Result<bool> {
    let res = transfer(b, a, tw)?;
    let g = &res.a_poly[0];
    let constant = res.a_poly[1..].iter().all(Matrix::is_zero);
    Ok(constant && a.delta_inf.mul(g, tw) == b.delta_inf)
}
