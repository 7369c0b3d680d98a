//! Chinese remainder assembly K[t]/p(t) ≅ Π K[ε]/ε^{r_i}, with ε = t - α_i.

use crate::drinfeld::DivisorSpec;
use crate::error::Result;
use crate::field::{FieldTower, FqElem, Matrix};
use crate::poly::{series_inv, series_mul, Poly};

/// Per point, the ε-polynomial p_i of degree < r_i with
/// 1/p(t) = Σ p_i(t - α_i) / (t - α_i)^{r_i}.
pub fn partial_fractions(div: &DivisorSpec, tw: &FieldTower) -> Result<Vec<Vec<FqElem>>> {
    (0..div.len())
        .map(|i| {
            let r = div.mult(i);
            let g = cofactor(div, i, tw).jet(&div.alpha(i, tw), r, tw);
            series_inv(&g, r, tw)
        })
        .collect()
}

/// Π_{j≠i} (t - α_j)^{r_j} = p(t) / (t - α_i)^{r_i}.
fn cofactor(div: &DivisorSpec, i: usize, tw: &FieldTower) -> Poly {
    (0..div.len())
        .filter(|&j| j != i)
        .fold(Poly::one(tw), |acc, j| acc.mul(&Poly::linear(tw, &div.alpha(j, tw)).pow(div.mult(j), tw), tw))
}

/// Precomputed F_q-valued tables for assembling and splitting residues
/// modulo p(t). All entries lie in F_q, so applying the tables to ambient
/// scalars costs only subfield multiplications.
#[derive(Clone, Debug)]
pub struct CrtPlan {
    d: usize,
    mults: Vec<usize>,
    /// `assemble[i][h]`: coefficients (length d) of δ applied to the jet ε^h at point i.
    assemble: Vec<Vec<Vec<FqElem>>>,
    /// `taylor[i][c]`: the jet of t^c at α_i (length r_i).
    taylor: Vec<Vec<Vec<FqElem>>>,
    p: Poly,
}

impl CrtPlan {
    pub fn new(div: &DivisorSpec, tw: &FieldTower) -> Result<Self> {
        let d = div.degree();
        let p = div.p_poly(tw);
        let pf = partial_fractions(div, tw)?;
        let mut assemble = Vec::with_capacity(div.len());
        let mut taylor = Vec::with_capacity(div.len());
        for i in 0..div.len() {
            let r = div.mult(i);
            let alpha = div.alpha(i, tw);
            let cof = cofactor(div, i, tw);
            let mut rows = Vec::with_capacity(r);
            for h in 0..r {
                // (p_i · ε^h mod ε^r) · cofactor, reduced mod p
                let mut e = vec![tw.zero(); r];
                e[h] = tw.one();
                let jet = series_mul(&pf[i], &e, r, tw);
                let poly = Poly::from_jet(&jet, &alpha, tw).mul(&cof, tw).rem(&p, tw);
                rows.push(poly.padded(d, tw));
            }
            assemble.push(rows);
            let tpow: Vec<Vec<FqElem>> = (0..d)
                .map(|c| {
                    let mut m = vec![tw.zero(); c + 1];
                    m[c] = tw.one();
                    Poly::new(m).jet(&alpha, r, tw)
                })
                .collect();
            taylor.push(tpow);
        }
        Ok(CrtPlan { d, mults: (0..div.len()).map(|i| div.mult(i)).collect(), assemble, taylor, p })
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &Poly {
        &self.p
    }

    pub fn points(&self) -> usize {
        self.mults.len()
    }

    pub fn mult(&self, i: usize) -> usize {
        self.mults[i]
    }

    /// The F_q-weights of jet coordinate (i, h) in the t^c coefficient of δ.
    pub fn weight(&self, i: usize, h: usize, c: usize) -> &FqElem {
        &self.assemble[i][h][c]
    }

    /// δ: local jets (one list of length r_i per point) to the coefficients
    /// (length d) of the canonical representative mod p(t).
    pub fn assemble(&self, jets: &[Vec<FqElem>], tw: &FieldTower) -> Vec<FqElem> {
        let mut out = vec![tw.zero(); self.d];
        for (i, jet) in jets.iter().enumerate() {
            for (h, x) in jet.iter().enumerate().take(self.mults[i]) {
                if x.is_zero() {
                    continue;
                }
                for (o, w) in out.iter_mut().zip(&self.assemble[i][h]) {
                    if !w.is_zero() {
                        *o = tw.add(o, &tw.mul_base(w, x));
                    }
                }
            }
        }
        out
    }

    /// Only the t^c coefficient of δ(jets).
    pub fn assemble_coeff(&self, jets: &[Vec<FqElem>], c: usize, tw: &FieldTower) -> FqElem {
        let mut out = tw.zero();
        for (i, jet) in jets.iter().enumerate() {
            for (h, x) in jet.iter().enumerate().take(self.mults[i]) {
                let w = &self.assemble[i][h][c];
                if !w.is_zero() && !x.is_zero() {
                    out = tw.add(&out, &tw.mul_base(w, x));
                }
            }
        }
        out
    }

    /// Jets at every point of the residue with the given coefficients.
    pub fn extract(&self, coeffs: &[FqElem], tw: &FieldTower) -> Vec<Vec<FqElem>> {
        (0..self.points())
            .map(|i| {
                let r = self.mults[i];
                let mut jet = vec![tw.zero(); r];
                for (c, x) in coeffs.iter().enumerate().take(self.d) {
                    if x.is_zero() {
                        continue;
                    }
                    for (o, w) in jet.iter_mut().zip(&self.taylor[i][c]) {
                        if !w.is_zero() {
                            *o = tw.add(o, &tw.mul_base(w, x));
                        }
                    }
                }
                jet
            })
            .collect()
    }

    /// Entrywise δ on matrices: `jets[i][h]` is the ε^h coefficient at point i.
    pub fn assemble_mats(&self, jets: &[Vec<Matrix>], tw: &FieldTower) -> Vec<Matrix> {
        let (rows, cols) = shape(jets);
        let mut out = vec![Matrix::zeros(tw, rows, cols); self.d];
        for a in 0..rows {
            for b in 0..cols {
                let scal: Vec<Vec<FqElem>> =
                    jets.iter().map(|pt| pt.iter().map(|m| m.get(a, b).clone()).collect()).collect();
                for (c, v) in self.assemble(&scal, tw).into_iter().enumerate() {
                    out[c].set(a, b, v);
                }
            }
        }
        out
    }

    /// The t^c coefficient matrix of δ(jets).
    pub fn assemble_mats_coeff(&self, jets: &[Vec<Matrix>], c: usize, tw: &FieldTower) -> Matrix {
        let (rows, cols) = shape(jets);
        Matrix::from_fn(rows, cols, |a, b| {
            let scal: Vec<Vec<FqElem>> =
                jets.iter().map(|pt| pt.iter().map(|m| m.get(a, b).clone()).collect()).collect();
            self.assemble_coeff(&scal, c, tw)
        })
    }

    /// Entrywise jet extraction: `out[i][h]` is the ε^h coefficient at point i.
    pub fn extract_mats(&self, coeffs: &[Matrix], tw: &FieldTower) -> Vec<Vec<Matrix>> {
        let rows = coeffs[0].rows();
        let cols = coeffs[0].cols();
        let mut out: Vec<Vec<Matrix>> =
            (0..self.points()).map(|i| vec![Matrix::zeros(tw, rows, cols); self.mults[i]]).collect();
        for a in 0..rows {
            for b in 0..cols {
                let scal: Vec<FqElem> = coeffs.iter().map(|m| m.get(a, b).clone()).collect();
                for (i, jet) in self.extract(&scal, tw).into_iter().enumerate() {
                    for (h, v) in jet.into_iter().enumerate() {
                        out[i][h].set(a, b, v);
                    }
                }
            }
        }
        out
    }
}

fn shape(jets: &[Vec<Matrix>]) -> (usize, usize) {
    let m = &jets[0][0];
    (m.rows(), m.cols())
}

/// δ of the scalar jets h_i, as a polynomial of degree < d.
pub fn crt_delta(div: &DivisorSpec, jets: &[Vec<FqElem>], tw: &FieldTower) -> Result<Poly> {
    let plan = CrtPlan::new(div, tw)?;
    Ok(Poly::new(plan.assemble(jets, tw)))
}

/// Product of matrix jets modulo ε^r.
pub fn jet_mat_mul(a: &[Matrix], b: &[Matrix], r: usize, tw: &FieldTower) -> Vec<Matrix> {
    let rows = a[0].rows();
    let cols = b[0].cols();
    let mut out = vec![Matrix::zeros(tw, rows, cols); r];
    for (i, x) in a.iter().enumerate().take(r) {
        for (j, y) in b.iter().enumerate().take(r - i) {
            if x.is_zero() || y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].add(&x.mul(y, tw), tw);
        }
    }
    out
}

/// Inverse of a matrix jet modulo ε^r (Newton iteration on the constant term).
pub fn jet_mat_inv(a: &[Matrix], r: usize, tw: &FieldTower) -> Result<Vec<Matrix>> {
    let n = a[0].rows();
    let inv0 = a[0].inverse(tw)?;
    let mut out = vec![Matrix::zeros(tw, n, n); r];
    if r == 0 {
        return Ok(out);
    }
    out[0] = inv0.clone();
    for k in 1..r {
        // X_k = -A_0^{-1} Σ_{j=1..k} A_j X_{k-j}
        let mut s = Matrix::zeros(tw, n, n);
        for j in 1..=k.min(a.len() - 1) {
            s = s.add(&a[j].mul(&out[k - j], tw), tw);
        }
        out[k] = inv0.mul(&s, tw).neg(tw);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_fractions_of_t_times_t_minus_one() {
        let tw = FieldTower::new(3, 1, 1).unwrap();
        let div: DivisorSpec = "0:1,1:1".parse().unwrap();
        let pf = partial_fractions(&div, &tw).unwrap();
        assert_eq!(pf[0], vec![tw.neg(&tw.one())]);
        assert_eq!(pf[1], vec![tw.one()]);
    }

    #[test]
    fn delta_values_at_points() {
        let tw = FieldTower::new(3, 1, 2).unwrap();
        let div: DivisorSpec = "0:1,1:1".parse().unwrap();
        let h0 = tw.basis_elem(1);
        let h1 = tw.from_fp(2);
        let d = crt_delta(&div, &[vec![h0.clone()], vec![h1.clone()]], &tw).unwrap();
        assert_eq!(d.eval(&tw.zero(), &tw), h0);
        assert_eq!(d.eval(&tw.one(), &tw), h1);
    }

    #[test]
    fn matrix_jet_inverse() {
        let tw = FieldTower::new(5, 1, 2).unwrap();
        let a = vec![
            Matrix::from_fn(2, 2, |i, j| tw.from_fp((i + 2 * j + 1) as u32)),
            Matrix::from_fn(2, 2, |i, j| tw.basis_elem((i + j) % 2)),
            Matrix::identity(&tw, 2),
        ];
        let inv = jet_mat_inv(&a, 3, &tw).unwrap();
        let prod = jet_mat_mul(&a, &inv, 3, &tw);
        assert_eq!(prod[0], Matrix::identity(&tw, 2));
        assert!(prod[1].is_zero() && prod[2].is_zero());
    }
}
