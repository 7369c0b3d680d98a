//! Univariate polynomials in t with coefficients in the ambient field.

use serde::{Deserialize, Serialize};

use crate::field::{FieldTower, FqElem};

/// A polynomial Σ c_i t^i, constant term first, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Poly(Vec<FqElem>);

impl Poly {
    pub fn zero() -> Self {
        Poly(Vec::new())
    }

    pub fn constant(c: FqElem) -> Self {
        Poly::new(vec![c])
    }

    pub fn one(tw: &FieldTower) -> Self {
        Poly::constant(tw.one())
    }

    /// t - a
    pub fn linear(tw: &FieldTower, a: &FqElem) -> Self {
        Poly::new(vec![tw.neg(a), tw.one()])
    }

    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(FqElem::is_zero) {
            coeffs.pop();
        }
        Poly(coeffs)
    }

    /// Polynomial with F_q coefficients given by their integer labels.
    pub fn from_fq_ints(tw: &FieldTower, ints: &[u64]) -> crate::Result<Self> {
        let coeffs = ints.iter().map(|&n| tw.fq_from_int(n)).collect::<crate::Result<_>>()?;
        Ok(Poly::new(coeffs))
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize, tw: &FieldTower) -> FqElem {
        self.0.get(i).cloned().unwrap_or_else(|| tw.zero())
    }

    pub fn add(&self, other: &Poly, tw: &FieldTower) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| tw.add(&self.coeff(i, tw), &other.coeff(i, tw))).collect())
    }

    pub fn sub(&self, other: &Poly, tw: &FieldTower) -> Poly {
        let n = self.0.len().max(other.0.len());
        Poly::new((0..n).map(|i| tw.sub(&self.coeff(i, tw), &other.coeff(i, tw))).collect())
    }

    pub fn scale(&self, c: &FqElem, tw: &FieldTower) -> Poly {
        Poly::new(self.0.iter().map(|x| tw.mul(c, x)).collect())
    }

    pub fn mul(&self, other: &Poly, tw: &FieldTower) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![tw.zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = tw.add(&out[i + j], &tw.mul(a, b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, e: usize, tw: &FieldTower) -> Poly {
        (0..e).fold(Poly::one(tw), |acc, _| acc.mul(self, tw))
    }

    /// Quotient and remainder by a polynomial with invertible leading coefficient.
    pub fn divrem(&self, m: &Poly, tw: &FieldTower) -> (Poly, Poly) {
        let dm = m.degree().expect("division by the zero polynomial");
        let lead_inv = tw.inv(&m.0[dm]).expect("leading coefficient is nonzero");
        let mut r = self.0.clone();
        if r.len() <= dm {
            return (Poly::zero(), self.clone());
        }
        let mut q = vec![tw.zero(); r.len() - dm];
        for top in (dm..r.len()).rev() {
            let f = tw.mul(&r[top], &lead_inv);
            if f.is_zero() {
                continue;
            }
            let shift = top - dm;
            for (j, c) in m.0.iter().enumerate() {
                r[shift + j] = tw.sub(&r[shift + j], &tw.mul(&f, c));
            }
            q[shift] = f;
        }
        r.truncate(dm);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, m: &Poly, tw: &FieldTower) -> Poly {
        self.divrem(m, tw).1
    }

    pub fn eval(&self, x: &FqElem, tw: &FieldTower) -> FqElem {
        tw.eval_poly(&self.0, x)
    }

    /// Coefficients of h(a + ε) in ε, truncated to length `r` (the jet of h
    /// at t = a of order r).
    pub fn jet(&self, a: &FqElem, r: usize, tw: &FieldTower) -> Vec<FqElem> {
        // Horner with ε-polynomials truncated at r
        let mut acc = vec![tw.zero(); r];
        for c in self.0.iter().rev() {
            // acc <- acc * (ε + a) + c
            let mut next = vec![tw.zero(); r];
            for i in 0..r {
                let mut v = tw.mul(&acc[i], a);
                if i > 0 {
                    v = tw.add(&v, &acc[i - 1]);
                }
                next[i] = v;
            }
            if r > 0 {
                next[0] = tw.add(&next[0], c);
            }
            acc = next;
        }
        acc
    }

    /// The polynomial Σ c_i (t - a)^i from ε-coefficients.
    pub fn from_jet(jet: &[FqElem], a: &FqElem, tw: &FieldTower) -> Poly {
        let lin = Poly::linear(tw, a);
        jet.iter().rev().fold(Poly::zero(), |acc, c| acc.mul(&lin, tw).add(&Poly::constant(c.clone()), tw))
    }

    pub fn frobenius(&self, k: usize, tw: &FieldTower) -> Poly {
        Poly::new(self.0.iter().map(|x| tw.frobenius_q(x, k)).collect())
    }

    /// Pads to exactly `len` coefficients (zeros above the degree).
    pub fn padded(&self, len: usize, tw: &FieldTower) -> Vec<FqElem> {
        (0..len).map(|i| self.coeff(i, tw)).collect()
    }
}

/// Product of two truncated power series in ε, truncated to length `r`.
pub fn series_mul(a: &[FqElem], b: &[FqElem], r: usize, tw: &FieldTower) -> Vec<FqElem> {
    let mut out = vec![tw.zero(); r];
    for (i, x) in a.iter().enumerate().take(r) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(r - i) {
            out[i + j] = tw.add(&out[i + j], &tw.mul(x, y));
        }
    }
    out
}

/// Inverse of a truncated power series with invertible constant term.
pub fn series_inv(a: &[FqElem], r: usize, tw: &FieldTower) -> crate::Result<Vec<FqElem>> {
    let a0 = a.first().cloned().unwrap_or_else(|| tw.zero());
    let inv0 = tw.inv(&a0)?;
    let mut out = vec![tw.zero(); r];
    if r == 0 {
        return Ok(out);
    }
    out[0] = inv0.clone();
    for k in 1..r {
        let mut s = tw.zero();
        for j in 1..=k.min(a.len().saturating_sub(1)) {
            s = tw.add(&s, &tw.mul(&a[j], &out[k - j]));
        }
        out[k] = tw.neg(&tw.mul(&s, &inv0));
    }
    Ok(out)
}
