//! Fixtures and independent oracles shared by the integration tests.
#![allow(dead_code)]

use zetacorr::drinfeld::{sufficient_extension, DivisorSpec, ModuleParams, Sufficient, ThetaSpec};
use zetacorr::field::{FieldTower, FqElem, Matrix};
use zetacorr::level::{build_level_data_from, LevelData};

/// a_1 = θ + 1 for every rank-2 fixture.
pub const A1_THETA_PLUS_ONE: [u64; 2] = [1, 1];

pub struct Fixture {
    pub s: Sufficient,
    pub div: DivisorSpec,
    pub x: LevelData,
}

impl Fixture {
    pub fn tw(&self) -> &FieldTower {
        &self.s.tower
    }
}

pub fn params(n: usize, theta: ThetaSpec, a_polys: Vec<Vec<u64>>) -> ModuleParams {
    ModuleParams { n, theta, a_polys }
}

pub fn fixture(p: u32, params: &ModuleParams, div: &str, cap: usize) -> Option<Fixture> {
    let div: DivisorSpec = div.parse().unwrap();
    let s = sufficient_extension(p, 1, params, &div, cap).ok()?;
    let x = build_level_data_from(&s.module, &div, &s.torsion, &s.tower).ok()?;
    Some(Fixture { s, div, x })
}

/// Rank one with the canonical degree-4 characteristic.
pub fn rank1(p: u32, div: &str) -> Fixture {
    fixture(p, &params(1, ThetaSpec::Auto, vec![]), div, 48).expect("rank-one fixture")
}

/// Rank two, canonical degree-4 characteristic, a_1 = θ + 1.
pub fn rank2(p: u32, div: &str) -> Fixture {
    fixture(p, &params(2, ThetaSpec::Auto, vec![A1_THETA_PLUS_ONE.to_vec()]), div, 48).expect("rank-two fixture")
}

/// Rank three, canonical degree-3 characteristic, a_1 = θ + 1, a_2 = 2.
pub fn rank3(p: u32, div: &str) -> Fixture {
    let a = vec![A1_THETA_PLUS_ONE.to_vec(), vec![2]];
    fixture(p, &params(3, ThetaSpec::Generator { degree: 3 }, a), div, 48).expect("rank-three fixture")
}

/// Every element of the ambient field, by enumerating all coordinate vectors.
pub fn all_elements(tw: &FieldTower) -> Vec<FqElem> {
    let k = tw.degree();
    let p = tw.p() as u64;
    let total = p.pow(k as u32);
    (0..total)
        .map(|mut n| {
            let c: Vec<u32> = (0..k)
                .map(|_| {
                    let d = (n % p) as u32;
                    n /= p;
                    d
                })
                .collect();
            tw.elem(c).unwrap()
        })
        .collect()
}

/// x^e by plain repeated multiplication (no square-and-multiply, no tables).
pub fn naive_pow(tw: &FieldTower, x: &FqElem, e: u64) -> FqElem {
    (0..e).fold(tw.one(), |acc, _| tw.mul(&acc, x))
}

/// Row-reduces `rows` over the ambient field; returns the pivot columns.
fn rref(tw: &FieldTower, rows: &mut [Vec<FqElem>]) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, piv);
        let inv = tw.inv(&rows[r][c]).unwrap();
        let pivot_row: Vec<FqElem> = rows[r].iter().map(|x| tw.mul(x, &inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = tw.sub(x, &tw.mul(&f, y));
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Right kernel of a matrix given by rows.
fn kernel(tw: &FieldTower, mut rows: Vec<Vec<FqElem>>, cols: usize) -> Vec<Vec<FqElem>> {
    let pivots = rref(tw, &mut rows);
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![tw.zero(); cols];
            v[free] = tw.one();
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = tw.neg(&rows[r][free]);
            }
            v
        })
        .collect()
}

/// Gaussian elimination on an augmented system [M | b]: is it consistent?
pub fn solvable(tw: &FieldTower, mut rows: Vec<Vec<FqElem>>) -> bool {
    let Some(cols) = rows.first().map(|r| r.len() - 1) else { return true };
    let pivots = rref(tw, &mut rows);
    !pivots.contains(&cols)
}

/// Polynomial product reduced modulo a monic p (coefficient vectors).
fn mulmod(tw: &FieldTower, a: &[FqElem], b: &[FqElem], p: &[FqElem]) -> Vec<FqElem> {
    let d = p.len() - 1;
    let mut prod = vec![tw.zero(); a.len() + b.len()];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            prod[i + j] = tw.add(&prod[i + j], &tw.mul(x, y));
        }
    }
    for top in (d..prod.len()).rev() {
        let f = prod[top].clone();
        if f.is_zero() {
            continue;
        }
        for (j, c) in p.iter().enumerate() {
            prod[top - d + j] = tw.sub(&prod[top - d + j], &tw.mul(&f, c));
        }
    }
    prod.truncate(d);
    prod
}

/// Direct linear-solvability test for membership against a fixed target.
///
/// Unknowns are the n²·d entries of A_0 … A_{d-1}; equations are
/// Δ_target(t)·A(t) ≡ Δ_source(t) (mod p) and Δ_∞(source) = Δ_∞(target)·A_{d-1}.
/// The coefficient matrix depends only on the target, so its left kernel is
/// computed once; a source is a member iff its right-hand side is
/// annihilated by that kernel.
pub struct LinearOracle {
    n: usize,
    d: usize,
    equations: Vec<Vec<FqElem>>,
    left_kernel: Vec<Vec<FqElem>>,
}

impl LinearOracle {
    pub fn new(tw: &FieldTower, target: &LevelData) -> Self {
        let n = target.n();
        let d = target.d();
        let p: Vec<FqElem> = target.divisor.p_poly(tw).coeffs().to_vec();
        let unknowns = n * n * d;
        let var = |k: usize, j: usize, c: usize| k * n * n + j * n + c;
        // equation order matches `rhs`: per (r, c), the d coefficients then ∞
        let mut equations = Vec::new();
        for r in 0..n {
            for c in 0..n {
                let mut eqs = vec![vec![tw.zero(); unknowns]; d];
                for j in 0..n {
                    let dt: Vec<FqElem> = target.delta.iter().map(|m| m.get(r, j).clone()).collect();
                    for k in 0..d {
                        let mut tk = vec![tw.zero(); k + 1];
                        tk[k] = tw.one();
                        for (e, coef) in mulmod(tw, &dt, &tk, &p).iter().enumerate() {
                            eqs[e][var(k, j, c)] = tw.add(&eqs[e][var(k, j, c)], coef);
                        }
                    }
                }
                equations.extend(eqs);
                let mut eq = vec![tw.zero(); unknowns];
                for j in 0..n {
                    eq[var(d - 1, j, c)] = target.delta_inf.get(r, j).clone();
                }
                equations.push(eq);
            }
        }
        let transposed: Vec<Vec<FqElem>> =
            (0..unknowns).map(|u| equations.iter().map(|eq| eq[u].clone()).collect()).collect();
        let left_kernel = kernel(tw, transposed, equations.len());
        LinearOracle { n, d, equations, left_kernel }
    }

    fn rhs(&self, source: &LevelData) -> Vec<FqElem> {
        let mut b = Vec::with_capacity(self.equations.len());
        for r in 0..self.n {
            for c in 0..self.n {
                b.extend((0..self.d).map(|e| source.delta[e].get(r, c).clone()));
                b.push(source.delta_inf.get(r, c).clone());
            }
        }
        b
    }

    pub fn member(&self, tw: &FieldTower, source: &LevelData) -> bool {
        let b = self.rhs(source);
        self.left_kernel
            .iter()
            .all(|y| y.iter().zip(&b).fold(tw.zero(), |acc, (u, v)| tw.add(&acc, &tw.mul(u, v))).is_zero())
    }

    /// The same verdict by eliminating the full augmented system.
    pub fn member_by_elimination(&self, tw: &FieldTower, source: &LevelData) -> bool {
        let rows = self.equations.iter().zip(self.rhs(source)).map(|(eq, b)| [eq.clone(), vec![b]].concat()).collect();
        solvable(tw, rows)
    }
}

pub fn oracle_member(tw: &FieldTower, source: &LevelData, target: &LevelData) -> bool {
    LinearOracle::new(tw, target).member_by_elimination(tw, source)
}

/// Matrix over F_q from integer labels.
pub fn fq_matrix(tw: &FieldTower, rows: &[&[u64]]) -> Matrix {
    Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| tw.fq_from_int(x).unwrap()).collect()).collect()).unwrap()
}

/// Uniform element of the ambient field.
pub fn random_elem<R: rand::Rng>(tw: &FieldTower, rng: &mut R) -> FqElem {
    let c = (0..tw.degree()).map(|_| rng.gen_range(0..tw.p())).collect();
    tw.elem(c).unwrap()
}

/// Uniform element of F_q, as an integer label.
pub fn random_label<R: rand::Rng>(tw: &FieldTower, rng: &mut R) -> u64 {
    rng.gen_range(0..tw.q())
}
