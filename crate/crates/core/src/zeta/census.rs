//! Exhaustive scan of the graphs Γ_{g·F^i}: for every group element g (modulo
//! global scalars) and every Frobenius power i, decide whether the pair
//! (g·F^i(x), x) lies on the correspondence.
//!
//! The residual Δ_∞(source) - Δ_∞(x)·A_{d-1} is F_q-linear in the entries of
//! g, so it splits into one contribution per group component. Each
//! contribution is tabulated once per i, and the residual of g is the sum of
//! its components' table entries.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::TransferPlan;
use crate::drinfeld::DivisorSpec;
use crate::error::{Error, Result};
use crate::field::{FieldTower, FqElem, Matrix};
use crate::level::{act_frobenius, jet_mat_mul, GroupElement, LabelMatrix, LevelData};

/// One census line.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    pub g: GroupElement,
    pub i: usize,
    pub member: bool,
    pub residual: Matrix,
}

/// Members only, with the number of (g, i) pairs examined.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub checked: usize,
    pub members: Vec<CensusEntry>,
}

fn gl_order(n: usize, q: u128) -> u128 {
    let qn = q.pow(n as u32);
    (0..n as u32).map(|k| qn - q.pow(k)).product()
}

/// Order of GL_n(F_q) × Π GL_n(F_q[ε]/ε^{r_i}) modulo global scalars.
pub fn group_order(n: usize, div: &DivisorSpec, q: u64) -> u128 {
    let q = q as u128;
    let gl = gl_order(n, q);
    let higher: usize = div.points().iter().map(|pt| pt.r - 1).sum();
    let full = gl.saturating_pow(div.len() as u32 + 1).saturating_mul(q.saturating_pow((n * n * higher) as u32));
    full / (q - 1)
}

/// All n×n label matrices, lexicographic in row-major order.
fn all_matrices(n: usize, q: u64) -> Vec<LabelMatrix> {
    let cells = n * n;
    let total = q.pow(cells as u32);
    (0..total)
        .map(|mut idx| {
            let mut flat = vec![0u64; cells];
            for c in (0..cells).rev() {
                flat[c] = idx % q;
                idx /= q;
            }
            flat.chunks(n).map(<[u64]>::to_vec).collect()
        })
        .collect()
}

fn invertible(l: &LabelMatrix, tw: &FieldTower) -> bool {
    crate::level::labels_matrix(l, tw).is_ok_and(|m| !m.det(tw).is_zero())
}

/// The choices for each component of a group element, in enumeration order.
struct Slots {
    /// (point, jet level) per slot after the ∞ slot
    layout: Vec<(usize, usize)>,
    choices: Vec<Vec<LabelMatrix>>,
}

impl Slots {
    fn new(n: usize, div: &DivisorSpec, tw: &FieldTower) -> Self {
        let mats = all_matrices(n, tw.q());
        let gl: Vec<LabelMatrix> = mats.iter().filter(|m| invertible(m, tw)).cloned().collect();
        let gl_norm: Vec<LabelMatrix> =
            gl.iter().filter(|m| m.iter().flatten().copied().find(|&x| x != 0) == Some(1)).cloned().collect();
        let mut layout = Vec::new();
        let mut choices = vec![gl_norm];
        for i in 0..div.len() {
            for h in 0..div.mult(i) {
                layout.push((i, h));
                choices.push(if h == 0 { gl.clone() } else { mats.clone() });
            }
        }
        Slots { layout, choices }
    }

    fn count(&self) -> usize {
        self.choices.iter().map(Vec::len).product()
    }

    /// Mixed-radix decoding, last slot fastest.
    fn decode(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.choices.len()];
        for s in (0..self.choices.len()).rev() {
            let len = self.choices[s].len();
            out[s] = idx % len;
            idx /= len;
        }
        out
    }

    fn element(&self, pick: &[usize], div: &DivisorSpec) -> GroupElement {
        let mut g_d: Vec<Vec<LabelMatrix>> = (0..div.len()).map(|i| Vec::with_capacity(div.mult(i))).collect();
        for (s, &(i, _)) in self.layout.iter().enumerate() {
            g_d[i].push(self.choices[s + 1][pick[s + 1]].clone());
        }
        GroupElement { g_inf: self.choices[0][pick[0]].clone(), g_d }
    }
}

/// Normalized representatives of the level group modulo global scalars, in
/// census order.
pub fn enumerate_group(n: usize, div: &DivisorSpec, tw: &FieldTower, cap: u128) -> Result<Vec<GroupElement>> {
    let order = group_order(n, div, tw.q());
    if order > cap {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let slots = Slots::new(n, div, tw);
    Ok((0..slots.count()).map(|idx| slots.element(&slots.decode(idx), div)).collect())
}

/// Per Frobenius power, the residual contribution of every slot choice,
/// flattened to F_p coordinates.
struct Tables {
    per_slot: Vec<Vec<Vec<u32>>>,
}

impl Tables {
    fn new(slots: &Slots, plan: &TransferPlan, y: &LevelData, tw: &FieldTower) -> Result<Self> {
        let n = y.n();
        let crt = plan.crt();
        let nu_t = &plan.target().delta_inf;
        let jets = y.local_jets(crt, tw);
        let top = crt.degree() - 1;
        let mut per_slot = Vec::with_capacity(slots.choices.len());
        let inf: Vec<Vec<u32>> = slots.choices[0]
            .iter()
            .map(|g| Ok(flatten(&crate::level::labels_matrix(g, tw)?.mul(&y.delta_inf, tw), tw)))
            .collect::<Result<_>>()?;
        per_slot.push(inf);
        for (s, &(i, h)) in slots.layout.iter().enumerate() {
            let r = crt.mult(i);
            let table = slots.choices[s + 1]
                .iter()
                .map(|g| {
                    let mut unit = vec![Matrix::zeros(tw, n, n); r];
                    unit[h] = crate::level::labels_matrix(g, tw)?;
                    let moved = jet_mat_mul(&unit, &jets[i], r, tw);
                    // only this point contributes; other points' jets are zero
                    let mut local: Vec<Vec<Matrix>> =
                        (0..crt.points()).map(|j| vec![Matrix::zeros(tw, n, n); crt.mult(j)]).collect();
                    local[i] = moved;
                    let a_local = plan.local_transfer(&local, tw);
                    let a_top = crt.assemble_mats_coeff(&a_local, top, tw);
                    Ok(flatten(&nu_t.mul(&a_top, tw).neg(tw), tw))
                })
                .collect::<Result<Vec<_>>>()?;
            per_slot.push(table);
        }
        Ok(Tables { per_slot })
    }

    fn residual(&self, pick: &[usize], p: u32) -> Vec<u32> {
        let len = self.per_slot[0][0].len();
        let mut acc = vec![0u64; len];
        for (s, &c) in pick.iter().enumerate() {
            for (a, &v) in acc.iter_mut().zip(&self.per_slot[s][c]) {
                *a += v as u64;
            }
        }
        acc.into_iter().map(|a| (a % p as u64) as u32).collect()
    }
}

fn flatten(m: &Matrix, tw: &FieldTower) -> Vec<u32> {
    tw.flatten(m.entries())
}

fn unflatten(v: &[u32], n: usize, tw: &FieldTower) -> Matrix {
    let elems: Vec<FqElem> = tw.unflatten(v);
    Matrix::from_fn(n, n, |a, b| elems[a * n + b].clone())
}

fn scan<F>(x: &LevelData, i_max: usize, cap: u128, tw: &FieldTower, keep: F) -> Result<(usize, Vec<CensusEntry>)>
where
    F: Fn(bool) -> bool + Sync,
{
    x.validate(tw)?;
    let n = x.n();
    let div = &x.divisor;
    let order = group_order(n, div, tw.q());
    if order > cap {
        return Err(Error::GroupTooLarge { order, cap });
    }
    let slots = Slots::new(n, div, tw);
    let plan = TransferPlan::new(x, tw)?;
    let tables =
        (0..=i_max).map(|i| Tables::new(&slots, &plan, &act_frobenius(x, i, tw), tw)).collect::<Result<Vec<_>>>()?;
    let count = slots.count();
    let p = tw.p();
    let entries: Vec<CensusEntry> = (0..count)
        .into_par_iter()
        .flat_map_iter(|idx| {
            let pick = slots.decode(idx);
            let mut out = Vec::new();
            for (i, t) in tables.iter().enumerate() {
                let res = t.residual(&pick, p);
                let member = res.iter().all(|&c| c == 0);
                if keep(member) {
                    out.push(CensusEntry { g: slots.element(&pick, div), i, member, residual: unflatten(&res, n, tw) });
                }
            }
            out
        })
        .collect();
    Ok((count * (i_max + 1), entries))
}

/// Full census over g (modulo global scalars) and 0 ≤ i ≤ i_max, ordered by
/// g then i. The pair examined is (act_group(g, act_frobenius(x, i)), x).
pub fn scan_graphs(x: &LevelData, i_max: usize, cap: u128, tw: &FieldTower) -> Result<Vec<CensusEntry>> {
    Ok(scan(x, i_max, cap, tw, |_| true)?.1)
}

/// As [`scan_graphs`] but keeps only members; suited to large groups.
pub fn scan_members(x: &LevelData, i_max: usize, cap: u128, tw: &FieldTower) -> Result<CensusSummary> {
    let (checked, members) = scan(x, i_max, cap, tw, |m| m)?;
    Ok(CensusSummary { checked, members })
}
