//! The level group GL_n(F_q) × Π GL_n(F_q[ε]/ε^{r_i}) and its action on
//! level data.

use serde::{Deserialize, Serialize};

use super::crt::{jet_mat_mul, CrtPlan};
use super::LevelData;
use crate::drinfeld::DivisorSpec;
use crate::error::{Error, Result};
use crate::field::{FieldTower, Matrix};
use crate::poly::Poly;

/// An n×n matrix over F_q written with integer labels of F_q elements.
pub type LabelMatrix = Vec<Vec<u64>>;

/// (g_∞, g_D): an invertible matrix at ∞ and, at each point of D, an
/// invertible matrix jet `g_d[i][h]` (coefficient of ε^h, h < r_i).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub g_inf: LabelMatrix,
    pub g_d: Vec<Vec<LabelMatrix>>,
}

fn label_identity(n: usize, c: u64) -> LabelMatrix {
    (0..n).map(|i| (0..n).map(|j| if i == j { c } else { 0 }).collect()).collect()
}

fn label_zero(n: usize) -> LabelMatrix {
    vec![vec![0; n]; n]
}

pub(crate) fn labels_to_matrix(l: &LabelMatrix, tw: &FieldTower) -> Result<Matrix> {
    let rows = l
        .iter()
        .map(|row| row.iter().map(|&x| tw.fq_from_int(x)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows)
}

pub(crate) fn matrix_to_labels(m: &Matrix, tw: &FieldTower) -> Result<LabelMatrix> {
    (0..m.rows()).map(|i| m.row(i).iter().map(|x| tw.fq_to_int(x)).collect()).collect()
}

impl GroupElement {
    pub fn identity(n: usize, div: &DivisorSpec) -> Self {
        Self::scalar(1, n, div)
    }

    /// The global scalar c (an F_q label) at every component.
    pub fn scalar(c: u64, n: usize, div: &DivisorSpec) -> Self {
        let g_d = (0..div.len())
            .map(|i| {
                let mut jets = vec![label_identity(n, c)];
                jets.extend((1..div.mult(i)).map(|_| label_zero(n)));
                jets
            })
            .collect();
        GroupElement { g_inf: label_identity(n, c), g_d }
    }

    /// h_s: identity at ∞ and the scalar s(t) mod p(t) on the D-part.
    pub fn central(s: &Poly, n: usize, div: &DivisorSpec, tw: &FieldTower) -> Result<Self> {
        let s = s.rem(&div.p_poly(tw), tw);
        let mut g_d = Vec::with_capacity(div.len());
        for i in 0..div.len() {
            let jet = s.jet(&div.alpha(i, tw), div.mult(i), tw);
            let mut mats = Vec::with_capacity(jet.len());
            for x in &jet {
                mats.push(label_identity(n, tw.fq_to_int(x)?));
            }
            g_d.push(mats);
        }
        let g = GroupElement { g_inf: label_identity(n, 1), g_d };
        g.check(n, div, tw)?;
        Ok(g)
    }

    pub fn rank(&self) -> usize {
        self.g_inf.len()
    }

    pub fn inf_matrix(&self, tw: &FieldTower) -> Result<Matrix> {
        labels_to_matrix(&self.g_inf, tw)
    }

    pub fn local_matrices(&self, tw: &FieldTower) -> Result<Vec<Vec<Matrix>>> {
        self.g_d.iter().map(|pt| pt.iter().map(|l| labels_to_matrix(l, tw)).collect()).collect()
    }

    /// Shape and invertibility at every component.
    pub fn check(&self, n: usize, div: &DivisorSpec, tw: &FieldTower) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidLevelData(msg));
        if self.g_inf.len() != n || self.g_inf.iter().any(|r| r.len() != n) {
            return bad(format!("g_inf must be {n}x{n}"));
        }
        if self.g_d.len() != div.len() {
            return bad(format!("g_D has {} points, divisor has {}", self.g_d.len(), div.len()));
        }
        if self.inf_matrix(tw)?.det(tw).is_zero() {
            return Err(Error::NotInvertible("g_inf is singular".into()));
        }
        for (i, jets) in self.local_matrices(tw)?.iter().enumerate() {
            if jets.len() != div.mult(i) || jets.iter().any(|m| m.rows() != n || m.cols() != n) {
                return bad(format!("g_D at point {i} has the wrong shape"));
            }
            if jets[0].det(tw).is_zero() {
                return Err(Error::NotInvertible(format!("g_D at point {i} is singular")));
            }
        }
        Ok(())
    }

    /// The product self · other.
    pub fn compose(&self, other: &GroupElement, tw: &FieldTower) -> Result<GroupElement> {
        let g_inf = matrix_to_labels(&self.inf_matrix(tw)?.mul(&other.inf_matrix(tw)?, tw), tw)?;
        let a = self.local_matrices(tw)?;
        let b = other.local_matrices(tw)?;
        let g_d = a
            .iter()
            .zip(&b)
            .map(|(x, y)| jet_mat_mul(x, y, x.len(), tw).iter().map(|m| matrix_to_labels(m, tw)).collect())
            .collect::<Result<Vec<_>>>()?;
        Ok(GroupElement { g_inf, g_d })
    }

    /// Whether every component is the same scalar c·Id (constant jets).
    pub fn is_global_scalar(&self) -> bool {
        let n = self.rank();
        let c = self.g_inf[0][0];
        let is_c = |m: &LabelMatrix| *m == label_identity(n, c);
        c != 0
            && is_c(&self.g_inf)
            && self.g_d.iter().all(|jets| is_c(&jets[0]) && jets[1..].iter().all(|m| *m == label_zero(n)))
    }

    /// Representative of the class modulo global scalars: the first nonzero
    /// entry of g_inf (row-major) becomes 1.
    pub fn normalize(&self, tw: &FieldTower) -> Result<GroupElement> {
        let lead = self
            .g_inf
            .iter()
            .flatten()
            .copied()
            .find(|&x| x != 0)
            .ok_or_else(|| Error::NotInvertible("g_inf is zero".into()))?;
        let c = tw.inv(&tw.fq_from_int(lead)?)?;
        let scale = |l: &LabelMatrix| -> Result<LabelMatrix> {
            l.iter().map(|row| row.iter().map(|&x| tw.fq_to_int(&tw.mul(&c, &tw.fq_from_int(x)?))).collect()).collect()
        };
        Ok(GroupElement {
            g_inf: scale(&self.g_inf)?,
            g_d: self.g_d.iter().map(|pt| pt.iter().map(&scale).collect()).collect::<Result<_>>()?,
        })
    }

    /// Compact text form used by the table report.
    pub fn label(&self) -> String {
        let mat = |m: &LabelMatrix| {
            m.iter().map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" ")).collect::<Vec<_>>().join(";")
        };
        let parts: Vec<String> =
            self.g_d.iter().map(|pt| pt.iter().map(&mat).collect::<Vec<_>>().join("+e*")).collect();
        format!("inf[{}] D[{}]", mat(&self.g_inf), parts.join(" | "))
    }
}

/// Applies g: each local jet of Δ is left-multiplied by g_D's jet, and Δ_∞ by g_∞.
pub fn act_group(g: &GroupElement, l: &LevelData, tw: &FieldTower) -> Result<LevelData> {
    let plan = CrtPlan::new(&l.divisor, tw)?;
    act_group_with(g, l, &plan, tw)
}

fn act_group_with(g: &GroupElement, l: &LevelData, plan: &CrtPlan, tw: &FieldTower) -> Result<LevelData> {
    let n = l.n();
    g.check(n, &l.divisor, tw)?;
    let local = plan.extract_mats(&l.delta, tw);
    let gd = g.local_matrices(tw)?;
    let moved: Vec<Vec<Matrix>> =
        local.iter().zip(&gd).enumerate().map(|(i, (jet, gj))| jet_mat_mul(gj, jet, plan.mult(i), tw)).collect();
    Ok(LevelData {
        delta: plan.assemble_mats(&moved, tw),
        delta_inf: g.inf_matrix(tw)?.mul(&l.delta_inf, tw),
        divisor: l.divisor.clone(),
    })
}
