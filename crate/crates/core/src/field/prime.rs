//! Arithmetic and linear algebra over the prime field F_p.
//!
//! Residues are stored as `u32` in `[0, p)`; `p` is bounded by 2^16 so that
//! products fit comfortably in `u64` accumulators.

pub(crate) const MAX_PRIME: u64 = 1 << 16;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Prime divisors of `n`, ascending, without multiplicity.
pub(crate) fn prime_divisors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Barrett reduction of u64 values modulo a fixed p.
#[derive(Clone, Copy, Debug)]
pub(crate) struct FastMod {
    p: u64,
    m: u64,
}

impl FastMod {
    pub(crate) fn new(p: u32) -> Self {
        let p = p as u64;
        FastMod { p, m: ((1u128 << 64) / p as u128) as u64 }
    }

    #[inline]
    pub(crate) fn reduce(self, x: u64) -> u64 {
        // the quotient estimate is short by at most one
        let q = ((x as u128 * self.m as u128) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

#[inline]
pub(crate) fn add_mod(a: u32, b: u32, p: u32) -> u32 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn sub_mod(a: u32, b: u32, p: u32) -> u32 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

#[inline]
pub(crate) fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, (p - 2) as u64, p)
}

pub(crate) fn pow_mod(a: u32, mut e: u64, p: u32) -> u32 {
    let mut base = a % p;
    let mut acc = 1 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    acc
}

/// Dense matrix over F_p, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FpMatrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl FpMatrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1 % p);
        }
        m
    }

    /// Builds a matrix from rows; entries are reduced mod `p`.
    pub fn from_rows(p: u32, rows: &[Vec<u32>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let acc = self.row(i).iter().zip(v).fold(0u64, |acc, (&a, &b)| (acc + a as u64 * b as u64) % p);
                acc as u32
            })
            .collect()
    }

    pub fn mul(&self, other: &FpMatrix) -> FpMatrix {
        assert_eq!(self.cols, other.rows);
        let p = self.p as u64;
        let mut out = FpMatrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k) as u64;
                if a == 0 {
                    continue;
                }
                for j in 0..other.cols {
                    let cur = out.get(i, j) as u64;
                    out.set(i, j, ((cur + a * other.get(k, j) as u64) % p) as u32);
                }
            }
        }
        out
    }

    /// Reduced row echelon form with the list of pivot columns.
    pub fn rref(&self) -> (FpMatrix, Vec<usize>) {
        let mut m = self.clone();
        let p = self.p;
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| m.get(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, piv);
            let inv = inv_mod(m.get(r, c), p);
            for j in c..m.cols {
                let v = mul_mod(m.get(r, j), inv, p);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c);
                if f == 0 {
                    continue;
                }
                for j in c..m.cols {
                    let v = sub_mod(m.get(i, j), mul_mod(f, m.get(r, j), p), p);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Basis of the null space in reduced row echelon form (leading ones,
    /// zeros above and below every leading one). The basis is unique for
    /// a given subspace.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let (r, pivots) = self.rref();
        let p = self.p;
        let mut raw = Vec::new();
        let mut is_pivot = vec![false; self.cols];
        for &c in &pivots {
            is_pivot[c] = true;
        }
        for f in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![0u32; self.cols];
            v[f] = 1 % p;
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = sub_mod(0, r.get(row, f), p);
            }
            raw.push(v);
        }
        echelon_rows(p, raw)
    }

    /// One solution of `self * x = rhs` with every free variable set to zero,
    /// or `None` if the system is inconsistent.
    pub fn solve(&self, rhs: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(rhs.len(), self.rows);
        let mut aug = FpMatrix::zeros(self.p, self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, self.cols, rhs[i] % self.p);
        }
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![0u32; self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols);
        }
        Some(x)
    }
}

/// Reduced row echelon form of a list of vectors, dropping zero rows.
pub(crate) fn echelon_rows(p: u32, rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    if rows.is_empty() {
        return rows;
    }
    let m = FpMatrix::from_rows(p, &rows);
    let (r, pivots) = m.rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Incremental F_p span used for greedy basis extraction.
#[derive(Clone, Debug)]
pub(crate) struct SpanTracker {
    p: u32,
    /// Echelon rows keyed by pivot column.
    rows: Vec<(usize, Vec<u32>)>,
}

impl SpanTracker {
    pub(crate) fn new(p: u32) -> Self {
        Self { p, rows: Vec::new() }
    }

    fn reduce(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p;
        let mut w = v.to_vec();
        for (pc, row) in &self.rows {
            let f = w[*pc];
            if f != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        w
    }

    pub(crate) fn contains(&self, v: &[u32]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Adds `v`; returns whether the span grew.
    pub(crate) fn insert(&mut self, v: &[u32]) -> bool {
        let p = self.p;
        let mut w = self.reduce(v);
        let Some(pc) = w.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = inv_mod(w[pc], p);
        for x in w.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
        for (_, row) in self.rows.iter_mut() {
            let f = row[pc];
            if f != 0 {
                for (x, &y) in row.iter_mut().zip(&w) {
                    *x = sub_mod(*x, mul_mod(f, y, p), p);
                }
            }
        }
        self.rows.push((pc, w));
        true
    }
}

// Dense univariate polynomials over F_p, low degree first. Only used to find
// and test field moduli, so they stay private to the field module.

pub(crate) fn poly_trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

pub(crate) fn poly_sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let n = a.len().max(b.len());
    let mut out: Vec<u32> = (0..n).map(|i| sub_mod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
    poly_trim(&mut out);
    out
}

pub(crate) fn poly_mul(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    let mut out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    poly_trim(&mut out);
    out
}

/// Remainder of `a` modulo the nonzero polynomial `m`.
pub(crate) fn poly_rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    poly_trim(&mut r);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let f = mul_mod(r[top], lead_inv, p);
        let shift = top - dm;
        for (j, &c) in m.iter().enumerate() {
            r[shift + j] = sub_mod(r[shift + j], mul_mod(f, c, p), p);
        }
        poly_trim(&mut r);
    }
    r
}

pub(crate) fn poly_gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    poly_trim(&mut a);
    poly_trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lead) = a.last() {
        let inv = inv_mod(lead, p);
        for x in a.iter_mut() {
            *x = mul_mod(*x, inv, p);
        }
    }
    a
}

fn poly_powmod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = poly_rem(base, m, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_rem(&poly_mul(&acc, &b, p), m, p);
        }
        b = poly_rem(&poly_mul(&b, &b, p), m, p);
        e >>= 1;
    }
    acc
}

/// Rabin's irreducibility test for a monic polynomial of degree >= 1.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let k = f.len() - 1;
    if k == 1 {
        return true;
    }
    let x = vec![0, 1];
    // x^(p^j) mod f for j = 0..=k
    let mut powers = Vec::with_capacity(k + 1);
    let mut cur = poly_rem(&x, f, p);
    powers.push(cur.clone());
    for _ in 0..k {
        cur = poly_powmod(&cur, p as u64, f, p);
        powers.push(cur.clone());
    }
    if poly_sub(&powers[k], &x, p).iter().any(|&c| c != 0) {
        return false;
    }
    prime_divisors(k).into_iter().all(|r| {
        let h = poly_sub(&powers[k / r], &x, p);
        poly_gcd(f, &h, p) == vec![1]
    })
}

/// The lexicographically least monic irreducible polynomial of degree `k`
/// over F_p, coefficients compared from the constant term upwards.
pub(crate) fn least_irreducible(p: u32, k: usize) -> Vec<u32> {
    let mut coeffs = vec![0u32; k];
    if k > 1 {
        // a zero constant term means divisibility by X
        coeffs[0] = 1;
    }
    loop {
        let mut f = coeffs.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        // increment with c_{k-1} as the least significant digit
        let mut i = k;
        loop {
            i -= 1;
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            assert!(i > 0, "no irreducible polynomial found");
        }
    }
}
