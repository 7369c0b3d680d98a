use serde::{Deserialize, Serialize};

use super::prime::{
    echelon_rows, inv_mod, is_prime, least_irreducible, mul_mod, poly_trim, sub_mod, FastMod, FpMatrix, SpanTracker,
    MAX_PRIME,
};
use crate::error::{Error, Result};

/// An element of the ambient field: power-basis coordinates modulo the
/// tower's modulus, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FqElem(Vec<u32>);

impl FqElem {
    pub fn from_coeffs(coeffs: Vec<u32>) -> Self {
        FqElem(coeffs)
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.0
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }
}

/// The tower F_p ⊂ F_q ⊂ F_{q^M} with q = p^m.
///
/// Everything needed for fast arithmetic (reduction table, Frobenius
/// matrices, the embedding of F_q) is precomputed at construction.
#[derive(Clone, Debug)]
pub struct FieldTower {
    p: u32,
    m: usize,
    big_m: usize,
    modulus: Vec<u32>,
    /// Nonzero low coefficients of the modulus, negated: X^k ≡ Σ c·X^j.
    reduce: Vec<(usize, u64)>,
    fast: FastMod,
    /// `frob[j][i]` = coordinates of (X^i)^(q^j), for j < M.
    frob: Vec<Vec<Vec<u32>>>,
    /// Powers γ^0 .. γ^(m-1) of the chosen generator of F_q over F_p.
    gamma_pows: Vec<FqElem>,
}

#[derive(Serialize, Deserialize)]
struct TowerRepr {
    p: u32,
    m: usize,
    #[serde(rename = "M")]
    big_m: usize,
    modulus: Vec<u32>,
}

impl Serialize for FieldTower {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TowerRepr { p: self.p, m: self.m, big_m: self.big_m, modulus: self.modulus.clone() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for FieldTower {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TowerRepr::deserialize(d)?;
        let t = FieldTower::new(r.p, r.m, r.big_m).map_err(serde::de::Error::custom)?;
        if t.modulus != r.modulus {
            return Err(serde::de::Error::custom(Error::ModulusMismatch));
        }
        Ok(t)
    }
}

impl PartialEq for FieldTower {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.m == other.m && self.big_m == other.big_m
    }
}

impl Eq for FieldTower {}

impl FieldTower {
    /// Builds F_{p^(mM)} with the canonical modulus.
    pub fn new(p: u32, m: usize, big_m: usize) -> Result<Self> {
        if !is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if p as u64 >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p as u64));
        }
        if m == 0 || big_m == 0 {
            return Err(Error::InvalidDegree(format!("m = {m}, M = {big_m}")));
        }
        let k = m * big_m;
        let modulus = least_irreducible(p, k);
        let mut tower = FieldTower {
            p,
            m,
            big_m,
            modulus,
            reduce: Vec::new(),
            fast: FastMod::new(p),
            frob: Vec::new(),
            gamma_pows: Vec::new(),
        };
        tower.build_reduce_table();
        tower.build_frobenius_tables();
        tower.build_gamma();
        Ok(tower)
    }

    fn build_reduce_table(&mut self) {
        let k = self.degree();
        let p = self.p;
        self.reduce =
            (0..k).filter(|&j| self.modulus[j] != 0).map(|j| (j, sub_mod(0, self.modulus[j], p) as u64)).collect();
    }

    fn build_frobenius_tables(&mut self) {
        let k = self.degree();
        let q = self.q();
        // images of X^i under x -> x^q
        let x = self.basis_elem(1);
        let xq = self.pow(&x, q);
        let mut first = Vec::with_capacity(k);
        let mut cur = self.one();
        for _ in 0..k {
            first.push(cur.0.clone());
            cur = self.mul(&cur, &xq);
        }
        let mut tables = vec![identity_images(k)];
        for j in 1..self.big_m {
            let prev: &Vec<Vec<u32>> = &tables[j - 1];
            let next = prev.iter().map(|img| apply_images(&first, img, self.p)).collect();
            tables.push(next);
        }
        self.frob = tables;
    }

    fn build_gamma(&mut self) {
        let m = self.m;
        let gamma = if m == 1 {
            self.one()
        } else {
            let f = least_irreducible(self.p, m);
            self.least_root_in_subfield(&f, m)
                .expect("the ambient field contains F_q, so the modulus of F_q has a root")
        };
        let mut pows = Vec::with_capacity(m);
        let mut cur = self.one();
        for _ in 0..m {
            pows.push(cur.clone());
            cur = self.mul(&cur, &gamma);
        }
        self.gamma_pows = pows;
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Degree of the ambient field over F_q.
    pub fn ambient_degree(&self) -> usize {
        self.big_m
    }

    /// Degree of the ambient field over F_p; the length of every element.
    pub fn degree(&self) -> usize {
        self.m * self.big_m
    }

    pub fn q(&self) -> u64 {
        (self.p as u64).pow(self.m as u32)
    }

    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> FqElem {
        FqElem(vec![0; self.degree()])
    }

    pub fn one(&self) -> FqElem {
        self.from_fp(1)
    }

    pub fn from_fp(&self, c: u32) -> FqElem {
        let mut v = vec![0; self.degree()];
        v[0] = c % self.p;
        FqElem(v)
    }

    /// The element X^i (i < degree).
    pub fn basis_elem(&self, i: usize) -> FqElem {
        let k = self.degree();
        if i < k {
            let mut v = vec![0; k];
            v[i] = 1;
            FqElem(v)
        } else if k == 1 {
            // X ≡ -c_0 modulo the linear modulus X + c_0
            let x = self.from_fp(sub_mod(0, self.modulus[0], self.p));
            self.pow(&x, i as u64)
        } else {
            self.pow(&self.basis_elem(1), i as u64)
        }
    }

    /// Validates length and residue range of an element.
    pub fn check(&self, x: &FqElem) -> Result<()> {
        if x.0.len() != self.degree() {
            return Err(Error::TowerMismatch { expected: self.degree(), found: x.0.len() });
        }
        if let Some(&c) = x.0.iter().find(|&&c| c >= self.p) {
            return Err(Error::DimensionMismatch(format!("residue {c} is not below p = {}", self.p)));
        }
        Ok(())
    }

    pub fn elem(&self, coeffs: Vec<u32>) -> Result<FqElem> {
        let x = FqElem(coeffs);
        self.check(&x)?;
        Ok(x)
    }

    pub fn add(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p;
        FqElem(a.0.iter().zip(&b.0).map(|(&x, &y)| super::prime::add_mod(x, y, p)).collect())
    }

    pub fn sub(&self, a: &FqElem, b: &FqElem) -> FqElem {
        let p = self.p;
        FqElem(a.0.iter().zip(&b.0).map(|(&x, &y)| sub_mod(x, y, p)).collect())
    }

    pub fn neg(&self, a: &FqElem) -> FqElem {
        let p = self.p;
        FqElem(a.0.iter().map(|&x| sub_mod(0, x, p)).collect())
    }

    pub fn scale_fp(&self, c: u32, a: &FqElem) -> FqElem {
        let p = self.p;
        FqElem(a.0.iter().map(|&x| mul_mod(c % p, x, p)).collect())
    }

    pub fn mul(&self, a: &FqElem, b: &FqElem) -> FqElem {
        // p < 2^16: every product is below 2^32, and each slot collects at
        // most 2k of them, so u64 accumulators cannot overflow
        let k = self.degree();
        let mut stack = [0u64; 64];
        let mut heap = Vec::new();
        let prod: &mut [u64] = if 2 * k - 1 <= stack.len() {
            &mut stack[..2 * k - 1]
        } else {
            heap.resize(2 * k - 1, 0);
            &mut heap
        };
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            let x = x as u64;
            for (slot, &y) in prod[i..i + k].iter_mut().zip(&b.0) {
                *slot += x * y as u64;
            }
        }
        self.reduce_wide(prod)
    }

    /// Reduces a product of length 2k - 1 modulo the modulus, top down.
    fn reduce_wide(&self, prod: &mut [u64]) -> FqElem {
        let k = self.degree();
        let fast = self.fast;
        for i in (k..prod.len()).rev() {
            let c = fast.reduce(prod[i]);
            if c == 0 {
                continue;
            }
            let base = i - k;
            for &(j, r) in &self.reduce {
                prod[base + j] += c * r;
            }
        }
        FqElem(prod[..k].iter().map(|&c| fast.reduce(c) as u32).collect())
    }

    /// Product where `c` is usually a prime-field constant; falls back to a
    /// full multiplication otherwise.
    pub fn mul_base(&self, c: &FqElem, x: &FqElem) -> FqElem {
        if c.0[1..].iter().all(|&v| v == 0) {
            self.scale_fp(c.0[0], x)
        } else {
            self.mul(c, x)
        }
    }

    pub fn square(&self, a: &FqElem) -> FqElem {
        self.mul(a, a)
    }

    pub fn pow(&self, a: &FqElem, mut e: u64) -> FqElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.square(&base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by the extended Euclidean algorithm.
    pub fn inv(&self, a: &FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::NotInvertible("zero has no inverse".into()));
        }
        let p = self.p;
        // invariant: s * a ≡ r (mod modulus)
        let mut r0 = self.modulus.clone();
        let mut r1 = a.0.clone();
        poly_trim(&mut r1);
        let mut s0: Vec<u32> = Vec::new();
        let mut s1: Vec<u32> = vec![1];
        while r1.len() > 1 {
            let (quot, rem) = poly_divrem(&r0, &r1, p);
            let s2 = super::prime::poly_sub(&s0, &super::prime::poly_mul(&quot, &s1, p), p);
            r0 = std::mem::replace(&mut r1, rem);
            s0 = std::mem::replace(&mut s1, s2);
        }
        let c = inv_mod(r1[0], p);
        let mut out = vec![0u32; self.degree()];
        for (i, &x) in s1.iter().enumerate() {
            out[i] = mul_mod(x, c, p);
        }
        Ok(FqElem(out))
    }

    pub fn div(&self, a: &FqElem, b: &FqElem) -> Result<FqElem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// x^(q^k); the exponent is taken modulo M.
    pub fn frobenius_q(&self, x: &FqElem, k: usize) -> FqElem {
        let j = k % self.big_m;
        if j == 0 {
            return x.clone();
        }
        FqElem(apply_images(&self.frob[j], &x.0, self.p))
    }

    /// x^(p^k) for k < m·M. Computed by exponentiation; only used off hot paths.
    pub fn frobenius_p(&self, x: &FqElem, k: usize) -> FqElem {
        let mut out = x.clone();
        for _ in 0..k % self.degree() {
            out = self.pow(&out, self.p as u64);
        }
        out
    }

    /// Whether x lies in F_q.
    pub fn in_base(&self, x: &FqElem) -> bool {
        self.frobenius_q(x, 1) == *x
    }

    /// Smallest e with x^(q^e) = x; the degree of x over F_q.
    pub fn degree_over_fq(&self, x: &FqElem) -> usize {
        (1..=self.big_m)
            .filter(|e| self.big_m.is_multiple_of(*e))
            .find(|&e| self.frobenius_q(x, e) == *x)
            .unwrap_or(self.big_m)
    }

    /// The element of F_q indexed by the integer `n < q`: writing
    /// n = Σ d_i p^i, this is Σ d_i γ^i. Thus 0 ↦ 0 and 1 ↦ 1.
    pub fn fq_from_int(&self, n: u64) -> Result<FqElem> {
        if n >= self.q() {
            return Err(Error::NotInSubfield);
        }
        let mut acc = self.zero();
        let mut rest = n;
        for g in &self.gamma_pows {
            let d = (rest % self.p as u64) as u32;
            rest /= self.p as u64;
            acc = self.add(&acc, &self.scale_fp(d, g));
        }
        Ok(acc)
    }

    /// Inverse of [`fq_from_int`](Self::fq_from_int).
    pub fn fq_to_int(&self, x: &FqElem) -> Result<u64> {
        let k = self.degree();
        let m = self.m;
        let mut mat = FpMatrix::zeros(self.p, k, m);
        for (j, g) in self.gamma_pows.iter().enumerate() {
            for i in 0..k {
                mat.set(i, j, g.0[i]);
            }
        }
        let sol = mat.solve(&x.0).ok_or(Error::NotInSubfield)?;
        Ok(sol.iter().rev().fold(0u64, |acc, &d| acc * self.p as u64 + d as u64))
    }

    /// All q elements of F_q in integer order.
    pub fn fq_elements(&self) -> Vec<FqElem> {
        (0..self.q()).map(|n| self.fq_from_int(n).expect("n < q")).collect()
    }

    /// The nonzero elements of F_q in integer order.
    pub fn fq_units(&self) -> Vec<FqElem> {
        (1..self.q()).map(|n| self.fq_from_int(n).expect("n < q")).collect()
    }

    /// An F_q-basis of F_q itself inside the ambient field: (γ^0, …, γ^(m-1)).
    pub fn fq_basis_over_fp(&self) -> &[FqElem] {
        &self.gamma_pows
    }

    /// Integer index Σ c_i p^i of the coordinates (may overflow for huge fields,
    /// in which case it saturates). Used only to order small sets canonically.
    pub fn index_of(&self, x: &FqElem) -> u128 {
        x.0.iter().rev().fold(0u128, |acc, &c| acc.saturating_mul(self.p as u128).saturating_add(c as u128))
    }

    /// The F_p-subspace F_{q^e} (requires e | M), as an echelon F_p basis.
    pub fn subfield_basis(&self, e: usize) -> Result<Vec<FqElem>> {
        if e == 0 || !self.big_m.is_multiple_of(e) {
            return Err(Error::InvalidDegree(format!("{e} does not divide M = {}", self.big_m)));
        }
        let l = self.flatten_map(1, 1, |v| vec![self.sub(&self.frobenius_q(&v[0], e), &v[0])]);
        Ok(l.kernel().into_iter().map(FqElem).collect())
    }

    /// The root with least [`index_of`](Self::index_of) of the monic F_p-polynomial
    /// `f` (coefficients low first) inside F_{q^e}, if one exists. Exhaustive over
    /// the subfield.
    pub fn least_root_in_subfield(&self, f: &[u32], sub_degree_over_fp: usize) -> Option<FqElem> {
        // F_{p^s} for s dividing m·M: kernel of x^(p^s) - x
        let s = sub_degree_over_fp;
        let basis: Vec<FqElem> = if s.is_multiple_of(self.m) {
            self.subfield_basis(s / self.m).ok()?
        } else {
            let l = self.flatten_map(1, 1, |v| vec![self.sub(&self.frobenius_p(&v[0], s), &v[0])]);
            l.kernel().into_iter().map(FqElem).collect()
        };
        let size = (self.p as u128).checked_pow(basis.len() as u32)?;
        let mut best: Option<(u128, FqElem)> = None;
        for n in 0..size {
            let mut x = self.zero();
            let mut rest = n;
            for b in &basis {
                let d = (rest % self.p as u128) as u32;
                rest /= self.p as u128;
                if d != 0 {
                    x = self.add(&x, &self.scale_fp(d, b));
                }
            }
            if self.eval_fp_poly(f, &x).is_zero() {
                let idx = self.index_of(&x);
                if best.as_ref().is_none_or(|(b, _)| idx < *b) {
                    best = Some((idx, x));
                }
            }
        }
        best.map(|(_, x)| x)
    }

    /// Evaluates a polynomial with F_p coefficients at x.
    pub fn eval_fp_poly(&self, f: &[u32], x: &FqElem) -> FqElem {
        f.iter().rev().fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, x), &self.from_fp(c)))
    }

    /// Evaluates a polynomial with ambient coefficients (low first) at x.
    pub fn eval_poly(&self, f: &[FqElem], x: &FqElem) -> FqElem {
        f.iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), c))
    }

    /// The F_p-matrix of an F_p-linear map from n_in ambient elements to n_out
    /// ambient elements, built by evaluating `f` on basis vectors. Flattening puts
    /// the coordinates of element 0 first, then element 1, and so on.
    pub fn flatten_map<F>(&self, n_in: usize, n_out: usize, f: F) -> FpMatrix
    where
        F: Fn(&[FqElem]) -> Vec<FqElem>,
    {
        let k = self.degree();
        let mut mat = FpMatrix::zeros(self.p, n_out * k, n_in * k);
        let mut input = vec![self.zero(); n_in];
        for c in 0..n_in * k {
            let (blk, coord) = (c / k, c % k);
            input[blk].0[coord] = 1;
            let out = f(&input);
            debug_assert_eq!(out.len(), n_out);
            for (ob, v) in out.iter().enumerate() {
                for (oc, &x) in v.0.iter().enumerate() {
                    mat.set(ob * k + oc, c, x);
                }
            }
            input[blk].0[coord] = 0;
        }
        mat
    }

    pub fn flatten(&self, v: &[FqElem]) -> Vec<u32> {
        v.iter().flat_map(|x| x.0.iter().copied()).collect()
    }

    pub fn unflatten(&self, v: &[u32]) -> Vec<FqElem> {
        v.chunks(self.degree()).map(|c| FqElem(c.to_vec())).collect()
    }

    /// Echelonized F_q-basis of the kernel of a flattened F_q-linear map whose
    /// domain is `n` ambient elements. For m = 1 this is the reduced row echelon
    /// basis of the F_p kernel; for m > 1 the echelon F_p basis is thinned
    /// greedily to an F_q-basis.
    pub fn kernel_over_fq(&self, l: &FpMatrix, n: usize) -> Result<Vec<Vec<FqElem>>> {
        if l.cols() != n * self.degree() {
            return Err(Error::DimensionMismatch(format!(
                "map has {} columns, expected {} = {n} x {}",
                l.cols(),
                n * self.degree(),
                self.degree()
            )));
        }
        if l.prime() != self.p {
            return Err(Error::DimensionMismatch("matrix is over a different prime".into()));
        }
        let fp_basis = l.kernel();
        Ok(self.fq_thin(fp_basis, n))
    }

    /// Greedy F_q-basis extraction from F_p-spanning vectors of an F_q-subspace
    /// of (ambient)^n.
    pub(crate) fn fq_thin(&self, fp_basis: Vec<Vec<u32>>, n: usize) -> Vec<Vec<FqElem>> {
        if self.m == 1 {
            return fp_basis.into_iter().map(|v| self.unflatten(&v)).collect();
        }
        let mut span = SpanTracker::new(self.p);
        let mut out = Vec::new();
        for v in fp_basis {
            if span.contains(&v) {
                continue;
            }
            let elems = self.unflatten(&v);
            for g in &self.gamma_pows {
                let w: Vec<FqElem> = elems.iter().map(|x| self.mul(g, x)).collect();
                span.insert(&self.flatten(&w));
            }
            debug_assert_eq!(elems.len(), n);
            out.push(elems);
        }
        out
    }

    /// Reduced echelon form of a set of flattened vectors.
    pub fn echelon(&self, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
        echelon_rows(self.p, rows)
    }
}

fn identity_images(k: usize) -> Vec<Vec<u32>> {
    (0..k)
        .map(|i| {
            let mut v = vec![0; k];
            v[i] = 1;
            v
        })
        .collect()
}

/// Σ x_i · images[i] over F_p.
fn apply_images(images: &[Vec<u32>], x: &[u32], p: u32) -> Vec<u32> {
    let fast = FastMod::new(p);
    let k = x.len();
    let mut acc = vec![0u64; k];
    for (img, &c) in images.iter().zip(x) {
        if c == 0 {
            continue;
        }
        for (a, &y) in acc.iter_mut().zip(img) {
            *a += c as u64 * y as u64;
        }
    }
    acc.into_iter().map(|a| fast.reduce(a) as u32).collect()
}

fn poly_divrem(a: &[u32], b: &[u32], p: u32) -> (Vec<u32>, Vec<u32>) {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = inv_mod(b[db], p);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0u32; r.len() - db];
    while r.len() > db {
        let top = r.len() - 1;
        let f = mul_mod(r[top], lead_inv, p);
        let shift = top - db;
        q[shift] = f;
        for (j, &c) in b.iter().enumerate() {
            r[shift + j] = sub_mod(r[shift + j], mul_mod(f, c, p), p);
        }
        poly_trim(&mut r);
    }
    poly_trim(&mut q);
    (q, r)
}
