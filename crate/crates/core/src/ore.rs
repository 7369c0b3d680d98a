//! The twisted polynomial ring K{σ} with σ·b = b^q·σ, and its action on the
//! field by q-linearized (additive) maps.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTower, FqElem};

/// Σ b_i σ^i, ascending σ-degree, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OrePoly(Vec<FqElem>);

impl OrePoly {
    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(FqElem::is_zero) {
            coeffs.pop();
        }
        OrePoly(coeffs)
    }

    pub fn zero() -> Self {
        OrePoly(Vec::new())
    }

    pub fn constant(c: FqElem) -> Self {
        OrePoly::new(vec![c])
    }

    pub fn one(tw: &FieldTower) -> Self {
        OrePoly::constant(tw.one())
    }

    /// σ^k
    pub fn sigma_pow(tw: &FieldTower, k: usize) -> Self {
        let mut c = vec![tw.zero(); k + 1];
        c[k] = tw.one();
        OrePoly(c)
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize, tw: &FieldTower) -> FqElem {
        self.0.get(i).cloned().unwrap_or_else(|| tw.zero())
    }

    /// Checks that every coefficient belongs to `tw`.
    pub fn check(&self, tw: &FieldTower) -> Result<()> {
        self.0.iter().try_for_each(|c| tw.check(c))
    }

    pub fn add(&self, other: &OrePoly, tw: &FieldTower) -> OrePoly {
        let n = self.0.len().max(other.0.len());
        OrePoly::new((0..n).map(|i| tw.add(&self.coeff(i, tw), &other.coeff(i, tw))).collect())
    }

    pub fn sub(&self, other: &OrePoly, tw: &FieldTower) -> OrePoly {
        let n = self.0.len().max(other.0.len());
        OrePoly::new((0..n).map(|i| tw.sub(&self.coeff(i, tw), &other.coeff(i, tw))).collect())
    }

    /// Left multiplication by a scalar: c·f.
    pub fn scale_left(&self, c: &FqElem, tw: &FieldTower) -> OrePoly {
        OrePoly::new(self.0.iter().map(|x| tw.mul(c, x)).collect())
    }

    /// The twisted product (Σ a_i σ^i)(Σ b_j σ^j) = Σ a_i b_j^(q^i) σ^(i+j).
    pub fn mul(&self, other: &OrePoly, tw: &FieldTower) -> Result<OrePoly> {
        self.check_len(tw)?;
        other.check_len(tw)?;
        Ok(self.mul_unchecked(other, tw))
    }

    pub(crate) fn mul_unchecked(&self, other: &OrePoly, tw: &FieldTower) -> OrePoly {
        if self.is_zero() || other.is_zero() {
            return OrePoly::zero();
        }
        let mut out = vec![tw.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let term = tw.mul(a, &tw.frobenius_q(b, i));
                out[i + j] = tw.add(&out[i + j], &term);
            }
        }
        OrePoly::new(out)
    }

    fn check_len(&self, tw: &FieldTower) -> Result<()> {
        match self.0.iter().find(|c| c.coeffs().len() != tw.degree()) {
            Some(c) => Err(Error::TowerMismatch { expected: tw.degree(), found: c.coeffs().len() }),
            None => Ok(()),
        }
    }

    /// Evaluation as an additive map: Σ b_i z^(q^i).
    pub fn eval(&self, z: &FqElem, tw: &FieldTower) -> FqElem {
        let mut acc = tw.zero();
        for (i, b) in self.0.iter().enumerate() {
            if b.is_zero() {
                continue;
            }
            acc = tw.add(&acc, &tw.mul(b, &tw.frobenius_q(z, i)));
        }
        acc
    }

    /// Every coefficient raised to the q^k-th power.
    pub fn frobenius(&self, k: usize, tw: &FieldTower) -> OrePoly {
        OrePoly::new(self.0.iter().map(|x| tw.frobenius_q(x, k)).collect())
    }

    fn flattened(&self, tw: &FieldTower) -> crate::field::FpMatrix {
        tw.flatten_map(1, 1, |v| vec![self.eval(&v[0], tw)])
    }

    /// Echelonized F_q-basis of the roots of the additive map.
    pub fn additive_kernel(&self, tw: &FieldTower) -> Result<Vec<FqElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.check_len(tw)?;
        let l = self.flattened(tw);
        Ok(tw.kernel_over_fq(&l, 1)?.into_iter().map(|mut v| v.remove(0)).collect())
    }

    /// One z with f(z) = w, choosing zero for every free coordinate, or `None`
    /// if w is outside the image.
    pub fn additive_preimage(&self, w: &FqElem, tw: &FieldTower) -> Result<Option<FqElem>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        self.check_len(tw)?;
        tw.check(w)?;
        let l = self.flattened(tw);
        Ok(l.solve(w.coeffs()).map(FqElem::from_coeffs))
    }
}
