//! Level data (Δ(t), Δ_∞) built from a Drinfeld module: the τ^n matrix, the
//! semilinear ∞-level equation, Moore blocks and CRT assembly, together with
//! the group and Frobenius actions.

mod crt;
mod group;

pub use crt::{crt_delta, jet_mat_inv, jet_mat_mul, partial_fractions, CrtPlan};
pub use group::{act_group, GroupElement, LabelMatrix};

pub(crate) use group::labels_to_matrix as labels_matrix;

use serde::{Deserialize, Serialize};

use crate::drinfeld::{torsion_basis, DivisorSpec, DrinfeldModule, TorsionData};
use crate::error::{Error, Result};
use crate::field::{FieldTower, FqElem, Matrix, SpanTracker};

/// Matrix with entries in K[t], stored by t-degree: Σ coeffs[i] t^i.
pub type MatPoly = Vec<Matrix>;

fn matpoly_mul(a: &MatPoly, b: &MatPoly, tw: &FieldTower) -> MatPoly {
    let rows = a[0].rows();
    let cols = b[0].cols();
    let mut out = vec![Matrix::zeros(tw, rows, cols); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = out[i + j].add(&x.mul(y, tw), tw);
        }
    }
    while out.len() > 1 && out.last().is_some_and(Matrix::is_zero) {
        out.pop();
    }
    out
}

/// The matrix of σ on the basis {s, σs, …, σ^{n-1}s}: subdiagonal ones and
/// last column (t - θ, -a_1, …, -a_{n-1}). Returned as [C_0, C_1] with
/// C = C_0 + C_1·t.
///
/// Row k of the last column carries -a_k, so that the Moore row
/// r = (α, α^q, …, α^{q^{n-1}}) of a torsion point satisfies F(r) = r·C.
pub fn companion_matrix(dm: &DrinfeldModule, tw: &FieldTower) -> MatPoly {
    let n = dm.n;
    let mut c0 = Matrix::zeros(tw, n, n);
    let mut c1 = Matrix::zeros(tw, n, n);
    for k in 1..n {
        c0.set(k, k - 1, tw.one());
        c0.set(k, n - 1, tw.neg(dm.coeff(k)));
    }
    c0.set(0, n - 1, tw.neg(&dm.theta));
    c1.set(0, n - 1, tw.one());
    vec![c0, c1]
}

/// The τ^n matrix A·t + B.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompanionPair {
    pub a: Matrix,
    pub b: Matrix,
}

/// C · F(C) · F²(C) ⋯ F^{n-1}(C), where F raises scalar entries to the q-th
/// power. The product has t-degree exactly one.
pub fn tau_n_matrix(dm: &DrinfeldModule, tw: &FieldTower) -> CompanionPair {
    let c = companion_matrix(dm, tw);
    let mut prod = c.clone();
    for k in 1..dm.n {
        let twisted: MatPoly = c.iter().map(|m| m.frobenius(k, tw)).collect();
        prod = matpoly_mul(&prod, &twisted, tw);
    }
    debug_assert_eq!(prod.len(), 2, "the τ^n matrix has degree one");
    let mut it = prod.into_iter();
    let b = it.next().expect("constant term");
    let a = it.next().unwrap_or_else(|| Matrix::zeros(tw, dm.n, dm.n));
    CompanionPair { a, b }
}

/// Solutions of the ∞-level equation v^{(q^n)} = v·A.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NuSolution {
    /// Echelon F_q-basis of the row solutions (n² rows).
    pub fq_basis: Vec<Vec<FqElem>>,
    /// An F_{q^n}-basis of the same space (n rows).
    pub fqn_basis: Vec<Vec<FqElem>>,
    /// The canonical invertible ν assembled from the echelon basis.
    pub nu: Matrix,
}

/// Solves v^{(q^n)} = v·A over F_q, extracts an F_{q^n}-basis and assembles
/// the canonical ν: echelon solutions are taken in order whenever they raise
/// the rank over the ambient field, until n rows are chosen.
pub fn solve_nu(cp: &CompanionPair, n: usize, tw: &FieldTower) -> Result<NuSolution> {
    let a = &cp.a;
    if a.rows() != n || a.cols() != n {
        return Err(Error::ShapeMismatch(format!("A is {}x{}, rank is {n}", a.rows(), a.cols())));
    }
    if a.det(tw).is_zero() {
        return Err(Error::SingularA);
    }
    if !tw.ambient_degree().is_multiple_of(n) {
        return Err(Error::AmbientTooSmall(format!("F_q^{n} is not contained in F_q^{}", tw.ambient_degree())));
    }
    let l = tw.flatten_map(n, n, |v| {
        let va = a.vec_mul(v, tw);
        v.iter().zip(&va).map(|(x, y)| tw.sub(&tw.frobenius_q(x, n), y)).collect()
    });
    let fq_basis = tw.kernel_over_fq(&l, n)?;
    if fq_basis.len() != n * n {
        return Err(Error::AmbientTooSmall(format!(
            "the ∞-level equation has {} independent solutions over F_q, need {}",
            fq_basis.len(),
            n * n
        )));
    }
    // F_p basis of F_{q^n}
    let scalars = tw.subfield_basis(n)?;
    let mut span = SpanTracker::new(tw.p());
    let mut fqn_basis = Vec::with_capacity(n);
    for v in &fq_basis {
        if span.contains(&tw.flatten(v)) {
            continue;
        }
        for lam in &scalars {
            let w: Vec<FqElem> = v.iter().map(|x| tw.mul(lam, x)).collect();
            span.insert(&tw.flatten(&w));
        }
        fqn_basis.push(v.clone());
    }
    let mut rows: Vec<Vec<FqElem>> = Vec::with_capacity(n);
    for v in &fq_basis {
        if rows.len() == n {
            break;
        }
        let mut trial = rows.clone();
        trial.push(v.clone());
        if Matrix::from_rows(trial.clone())?.rank(tw) == trial.len() {
            rows = trial;
        }
    }
    if rows.len() < n {
        return Err(Error::AmbientTooSmall("no invertible ν among the solutions".into()));
    }
    Ok(NuSolution { fq_basis, fqn_basis, nu: Matrix::from_rows(rows)? })
}

/// Entry (j, k) = (α_{j,h})^{q^k} at the given point and jet level.
pub fn moore_block(td: &TorsionData, point: usize, h: usize, n: usize, tw: &FieldTower) -> Matrix {
    let jets = td.jet(point, h);
    Matrix::from_fn(n, n, |j, k| tw.frobenius_q(&jets[j], k))
}

/// One rigidified point: Δ(t) mod p(t) by coefficients, and Δ_∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LevelData {
    /// Δ_0 … Δ_{d-1}
    pub delta: Vec<Matrix>,
    pub delta_inf: Matrix,
    pub divisor: DivisorSpec,
}

impl LevelData {
    pub fn n(&self) -> usize {
        self.delta_inf.rows()
    }

    pub fn d(&self) -> usize {
        self.delta.len()
    }

    /// Local matrix jets of Δ(t) at every point.
    pub fn local_jets(&self, plan: &CrtPlan, tw: &FieldTower) -> Vec<Vec<Matrix>> {
        plan.extract_mats(&self.delta, tw)
    }

    /// Shapes, tower membership, det Δ a unit mod p(t), det Δ_∞ ≠ 0.
    pub fn validate(&self, tw: &FieldTower) -> Result<()> {
        let n = self.n();
        let bad = |m: String| Err(Error::InvalidLevelData(m));
        self.divisor.check(tw)?;
        if self.delta.len() != self.divisor.degree() {
            return bad(format!("{} coefficients for a divisor of degree {}", self.delta.len(), self.divisor.degree()));
        }
        for m in self.delta.iter().chain(std::iter::once(&self.delta_inf)) {
            if m.rows() != n || m.cols() != n {
                return bad("all matrices must be n x n".into());
            }
            m.check(tw)?;
        }
        if self.delta_inf.det(tw).is_zero() {
            return bad("Δ_∞ is singular".into());
        }
        let plan = CrtPlan::new(&self.divisor, tw)?;
        for (i, jet) in self.local_jets(&plan, tw).iter().enumerate() {
            if jet[0].det(tw).is_zero() {
                return bad(format!("Δ(t) is not invertible at point {}", self.divisor.points()[i].alpha));
            }
        }
        Ok(())
    }

    /// Assembles level data from local jets `jets[i][h]`.
    pub fn from_local_jets(
        div: &DivisorSpec,
        jets: &[Vec<Matrix>],
        delta_inf: Matrix,
        tw: &FieldTower,
    ) -> Result<Self> {
        let plan = CrtPlan::new(div, tw)?;
        Ok(LevelData { delta: plan.assemble_mats(jets, tw), delta_inf, divisor: div.clone() })
    }
}

/// Moore-block local jets Σ_h A_{x_i,h} ε^h for every point.
pub fn moore_jets(td: &TorsionData, div: &DivisorSpec, n: usize, tw: &FieldTower) -> Vec<Vec<Matrix>> {
    (0..div.len()).map(|i| (0..div.mult(i)).map(|h| moore_block(td, i, h, n, tw)).collect()).collect()
}

/// The full level data of a Drinfeld module along ∞ + D.
pub fn build_level_data(dm: &DrinfeldModule, div: &DivisorSpec, tw: &FieldTower) -> Result<LevelData> {
    let td = torsion_basis(dm, div, tw)?;
    build_level_data_from(dm, div, &td, tw)
}

/// As [`build_level_data`] with a precomputed torsion basis.
pub fn build_level_data_from(
    dm: &DrinfeldModule,
    div: &DivisorSpec,
    td: &TorsionData,
    tw: &FieldTower,
) -> Result<LevelData> {
    let jets = moore_jets(td, div, dm.n, tw);
    for (i, jet) in jets.iter().enumerate() {
        if jet[0].det(tw).is_zero() {
            return Err(Error::InvalidLevelData(format!(
                "torsion at point {} is not independent over F_q",
                div.points()[i].alpha
            )));
        }
    }
    let nu = solve_nu(&tau_n_matrix(dm, tw), dm.n, tw)?.nu;
    let l = LevelData::from_local_jets(div, &jets, nu, tw)?;
    l.validate(tw)?;
    Ok(l)
}

/// Every scalar entry raised to the q^i-th power.
pub fn act_frobenius(l: &LevelData, i: usize, tw: &FieldTower) -> LevelData {
    LevelData {
        delta: l.delta.iter().map(|m| m.frobenius(i, tw)).collect(),
        delta_inf: l.delta_inf.frobenius(i, tw),
        divisor: l.divisor.clone(),
    }
}
