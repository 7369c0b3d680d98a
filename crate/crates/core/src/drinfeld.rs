//! Rank-n Drinfeld modules φ: F_q[t] → K{σ}, rational divisors on the affine
//! line, torsion jet bases and the isogeny test.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldTower, FqElem};
use crate::level;
use crate::ore::OrePoly;
use crate::poly::Poly;

/// φ_t = σ^n + a_{n-1}σ^{n-1} + … + a_1σ + θ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DrinfeldModule {
    pub n: usize,
    pub theta: FqElem,
    /// a_1 … a_{n-1}
    pub a: Vec<FqElem>,
}

impl DrinfeldModule {
    pub fn new(n: usize, theta: FqElem, a: Vec<FqElem>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidModule("rank must be at least 1".into()));
        }
        if a.len() != n - 1 {
            return Err(Error::InvalidModule(format!("rank {n} needs {} coefficients, got {}", n - 1, a.len())));
        }
        Ok(DrinfeldModule { n, theta, a })
    }

    pub fn check(&self, tw: &FieldTower) -> Result<()> {
        if self.n == 0 || self.a.len() + 1 != self.n {
            return Err(Error::InvalidModule(format!("rank {} with {} coefficients", self.n, self.a.len())));
        }
        tw.check(&self.theta)?;
        self.a.iter().try_for_each(|x| tw.check(x))
    }

    /// a_k for 1 ≤ k < n.
    pub fn coeff(&self, k: usize) -> &FqElem {
        &self.a[k - 1]
    }

    pub fn phi_t(&self, tw: &FieldTower) -> OrePoly {
        let mut c = Vec::with_capacity(self.n + 1);
        c.push(self.theta.clone());
        c.extend(self.a.iter().cloned());
        c.push(tw.one());
        OrePoly::new(c)
    }

    /// φ_a for a ∈ F_q[t], by Horner's rule in the Ore ring.
    pub fn phi(&self, a: &Poly, tw: &FieldTower) -> Result<OrePoly> {
        if a.coeffs().iter().any(|c| !tw.in_base(c)) {
            return Err(Error::NotInSubfield);
        }
        let pt = self.phi_t(tw);
        let mut acc = OrePoly::zero();
        for c in a.coeffs().iter().rev() {
            acc = acc.mul(&pt, tw)?.add(&OrePoly::constant(c.clone()), tw);
        }
        Ok(acc)
    }

    /// The module with every coefficient raised to the q^k-th power.
    pub fn frobenius_twist(&self, k: usize, tw: &FieldTower) -> DrinfeldModule {
        DrinfeldModule {
            n: self.n,
            theta: tw.frobenius_q(&self.theta, k),
            a: self.a.iter().map(|x| tw.frobenius_q(x, k)).collect(),
        }
    }

    /// Whether u·φ_t = ψ_t·u. Since t generates F_q[t] this is equivalent to
    /// u·φ_a = ψ_a·u for every a.
    pub fn is_isogeny(u: &OrePoly, from: &DrinfeldModule, to: &DrinfeldModule, tw: &FieldTower) -> Result<bool> {
        let lhs = u.mul(&from.phi_t(tw), tw)?;
        let rhs = to.phi_t(tw).mul(u, tw)?;
        Ok(lhs == rhs)
    }
}

/// One point α (an element of F_q given by its integer label) with multiplicity r.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DivisorPoint {
    pub alpha: u64,
    pub r: usize,
}

/// D = Σ r_i [α_i], with p(t) = Π (t - α_i)^{r_i}.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DivisorSpec {
    points: Vec<DivisorPoint>,
}

impl DivisorSpec {
    pub fn new(points: Vec<(u64, usize)>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::InvalidDivisor("the divisor must have positive degree".into()));
        }
        for (i, &(a, r)) in points.iter().enumerate() {
            if r == 0 {
                return Err(Error::InvalidDivisor(format!("multiplicity of point {a} is zero")));
            }
            if points[..i].iter().any(|&(b, _)| b == a) {
                return Err(Error::InvalidDivisor(format!("point {a} repeated")));
            }
        }
        Ok(DivisorSpec { points: points.into_iter().map(|(alpha, r)| DivisorPoint { alpha, r }).collect() })
    }

    /// Checks that every point lies in F_q.
    pub fn check(&self, tw: &FieldTower) -> Result<()> {
        match self.points.iter().find(|pt| pt.alpha >= tw.q()) {
            Some(pt) => Err(Error::InvalidDivisor(format!("point {} is not an element of F_{}", pt.alpha, tw.q()))),
            None => Ok(()),
        }
    }

    pub fn points(&self) -> &[DivisorPoint] {
        &self.points
    }

    /// Number of distinct points.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// d = deg p(t).
    pub fn degree(&self) -> usize {
        self.points.iter().map(|pt| pt.r).sum()
    }

    pub fn alpha(&self, i: usize, tw: &FieldTower) -> FqElem {
        tw.fq_from_int(self.points[i].alpha).expect("divisor points are checked against the tower")
    }

    pub fn mult(&self, i: usize) -> usize {
        self.points[i].r
    }

    pub fn p_poly(&self, tw: &FieldTower) -> Poly {
        (0..self.len())
            .fold(Poly::one(tw), |acc, i| acc.mul(&Poly::linear(tw, &self.alpha(i, tw)).pow(self.mult(i), tw), tw))
    }
}

impl FromStr for DivisorSpec {
    type Err = Error;

    /// Parses "a1:r1,a2:r2,…"; a bare "a" means multiplicity 1.
    fn from_str(s: &str) -> Result<Self> {
        let mut pts = Vec::new();
        for item in s.split(',').map(str::trim).filter(|x| !x.is_empty()) {
            let (a, r) = item.split_once(':').unwrap_or((item, "1"));
            let a = a.trim().parse().map_err(|_| Error::InvalidDivisor(format!("bad point '{a}'")))?;
            let r = r.trim().parse().map_err(|_| Error::InvalidDivisor(format!("bad multiplicity '{r}'")))?;
            pts.push((a, r));
        }
        DivisorSpec::new(pts)
    }
}

impl fmt::Display for DivisorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.points.iter().map(|pt| format!("{}:{}", pt.alpha, pt.r)).collect();
        f.write_str(&parts.join(","))
    }
}

/// Torsion jets: `jets[i][h][j]` is α_{j,h} at the i-th point, with
/// φ_{t-α_i}(α_{j,h}) = α_{j,h-1} and φ_{t-α_i}(α_{j,0}) = 0.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorsionData {
    pub jets: Vec<Vec<Vec<FqElem>>>,
}

impl TorsionData {
    pub fn jet(&self, point: usize, h: usize) -> &[FqElem] {
        &self.jets[point][h]
    }
}

/// Kernel dimension of φ_{p(t)} over F_q.
pub fn torsion_dimension(dm: &DrinfeldModule, div: &DivisorSpec, tw: &FieldTower) -> Result<usize> {
    let f = dm.phi(&div.p_poly(tw), tw)?;
    Ok(f.additive_kernel(tw)?.len())
}

/// Jet bases of the p(t)-torsion, one chain per point of D.
pub fn torsion_basis(dm: &DrinfeldModule, div: &DivisorSpec, tw: &FieldTower) -> Result<TorsionData> {
    dm.check(tw)?;
    div.check(tw)?;
    if div.p_poly(tw).eval(&dm.theta, tw).is_zero() {
        return Err(Error::CharacteristicMeetsDivisor);
    }
    let need = dm.n * div.degree();
    let dim = torsion_dimension(dm, div, tw)?;
    if dim != need {
        return Err(Error::AmbientTooSmall(format!("p(t)-torsion has dimension {dim} over F_q, need {need}")));
    }
    let mut jets = Vec::with_capacity(div.len());
    for i in 0..div.len() {
        let f = dm.phi(&Poly::linear(tw, &div.alpha(i, tw)), tw)?;
        let base = f.additive_kernel(tw)?;
        if base.len() != dm.n {
            return Err(Error::AmbientTooSmall(format!(
                "torsion at point {} has dimension {}, need {}",
                div.points()[i].alpha,
                base.len(),
                dm.n
            )));
        }
        let mut levels = vec![base];
        for _ in 1..div.mult(i) {
            let prev = levels.last().expect("level 0 exists");
            let mut next = Vec::with_capacity(dm.n);
            for w in prev {
                let z = f.additive_preimage(w, tw)?.ok_or_else(|| {
                    Error::AmbientTooSmall("a torsion jet has no preimage in the ambient field".into())
                })?;
                next.push(z);
            }
            levels.push(next);
        }
        jets.push(levels);
    }
    Ok(TorsionData { jets })
}

/// How the characteristic θ is chosen inside a tower.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ThetaSpec {
    /// The canonical generator of the degree-4 subextension.
    Auto,
    /// The least root (by coordinate index) of the canonical F_p-irreducible
    /// of degree m·e, i.e. a canonical generator of F_{q^e}.
    Generator { degree: usize },
    /// A seeded random element of exact degree `min_degree` over F_q.
    Random { min_degree: usize, seed: u64 },
    /// The element of F_q with the given integer label.
    Base(u64),
    /// Explicit power-basis coordinates (fixes the ambient degree).
    Coords(Vec<u32>),
}

/// Genericity floor for the default characteristic.
pub const DEFAULT_THETA_DEGREE: usize = 4;

impl ThetaSpec {
    /// Parses "auto", "gen:E", "random:K" (seed supplied separately),
    /// "fq:N" or "coords:c0,c1,…".
    pub fn parse(s: &str, seed: u64) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::InvalidModule(format!("cannot parse theta spec '{s}'"));
        if s == "auto" {
            return Ok(ThetaSpec::Auto);
        }
        let (kind, arg) = s.split_once(':').ok_or_else(bad)?;
        match kind {
            "gen" => Ok(ThetaSpec::Generator { degree: arg.parse().map_err(|_| bad())? }),
            "random" => Ok(ThetaSpec::Random { min_degree: arg.parse().map_err(|_| bad())?, seed }),
            "fq" => Ok(ThetaSpec::Base(arg.parse().map_err(|_| bad())?)),
            "coords" => {
                let c = arg.split(',').map(|x| x.trim().parse()).collect::<std::result::Result<_, _>>();
                Ok(ThetaSpec::Coords(c.map_err(|_| bad())?))
            }
            _ => Err(bad()),
        }
    }

    /// Degree over F_q that the ambient degree must be a multiple of.
    pub fn degree_step(&self) -> usize {
        match self {
            ThetaSpec::Auto => DEFAULT_THETA_DEGREE,
            ThetaSpec::Generator { degree } => *degree,
            ThetaSpec::Random { min_degree, .. } => *min_degree,
            ThetaSpec::Base(_) | ThetaSpec::Coords(_) => 1,
        }
    }

    pub fn resolve(&self, tw: &FieldTower) -> Result<FqElem> {
        match self {
            ThetaSpec::Auto => canonical_generator(tw, DEFAULT_THETA_DEGREE),
            ThetaSpec::Generator { degree } => canonical_generator(tw, *degree),
            ThetaSpec::Random { min_degree, seed } => random_of_degree(tw, *min_degree, *seed),
            ThetaSpec::Base(n) => tw.fq_from_int(*n),
            ThetaSpec::Coords(c) => tw.elem(c.clone()),
        }
    }
}

/// The least root of the canonical degree-(m·e) irreducible over F_p,
/// a generator of F_{q^e} over F_q.
pub fn canonical_generator(tw: &FieldTower, e: usize) -> Result<FqElem> {
    if e == 0 || !tw.ambient_degree().is_multiple_of(e) {
        return Err(Error::InvalidDegree(format!("F_q^{e} is not a subfield of F_q^{}", tw.ambient_degree())));
    }
    let f = crate::field::least_irreducible_poly(tw.p(), tw.m() * e);
    tw.least_root_in_subfield(&f, tw.m() * e)
        .ok_or_else(|| Error::InvalidDegree(format!("no generator of degree {e} found")))
}

fn random_of_degree(tw: &FieldTower, e: usize, seed: u64) -> Result<FqElem> {
    let basis = tw.subfield_basis(e)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..10_000 {
        let mut x = tw.zero();
        for b in &basis {
            let c = rng.gen_range(0..tw.p());
            x = tw.add(&x, &tw.scale_fp(c, b));
        }
        if tw.degree_over_fq(&x) == e {
            return Ok(x);
        }
    }
    Err(Error::InvalidDegree(format!("no element of degree {e} drawn")))
}

/// Recipe for a module inside any tower: rank, characteristic and the
/// coefficients a_j = q_j(θ), each q_j given by F_q integer labels
/// (constant term first).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleParams {
    pub n: usize,
    pub theta: ThetaSpec,
    pub a_polys: Vec<Vec<u64>>,
}

impl ModuleParams {
    pub fn build(&self, tw: &FieldTower) -> Result<DrinfeldModule> {
        if self.n == 0 {
            return Err(Error::InvalidModule("rank must be at least 1".into()));
        }
        if self.a_polys.len() > self.n - 1 {
            return Err(Error::InvalidModule(format!(
                "{} coefficient polynomials for rank {}",
                self.a_polys.len(),
                self.n
            )));
        }
        let theta = self.theta.resolve(tw)?;
        let mut a = Vec::with_capacity(self.n - 1);
        for j in 0..self.n - 1 {
            let q = self.a_polys.get(j).map(Vec::as_slice).unwrap_or(&[]);
            a.push(Poly::from_fq_ints(tw, q)?.eval(&theta, tw));
        }
        DrinfeldModule::new(self.n, theta, a)
    }
}

/// Result of the ambient-degree search.
#[derive(Clone, Debug)]
pub struct Sufficient {
    pub tower: FieldTower,
    pub module: DrinfeldModule,
    pub torsion: TorsionData,
}

/// Smallest ambient degree M (a multiple of the θ degree, at most `cap`) in
/// which the torsion splits and the ∞-level equation has a full solution space.
pub fn sufficient_extension(
    p: u32,
    m: usize,
    params: &ModuleParams,
    div: &DivisorSpec,
    cap: usize,
) -> Result<Sufficient> {
    let step = match &params.theta {
        ThetaSpec::Coords(c) => {
            if c.len() % m != 0 {
                return Err(Error::InvalidModule("theta coordinates do not fit the tower".into()));
            }
            let big_m = c.len() / m;
            return try_degree(p, m, big_m, params, div)?.ok_or(Error::CapExceeded(big_m));
        }
        other => other.degree_step(),
    };
    let mut big_m = step;
    while big_m <= cap {
        if let Some(found) = try_degree(p, m, big_m, params, div)? {
            return Ok(found);
        }
        big_m += step;
    }
    Err(Error::CapExceeded(cap))
}

fn try_degree(p: u32, m: usize, big_m: usize, params: &ModuleParams, div: &DivisorSpec) -> Result<Option<Sufficient>> {
    let tw = FieldTower::new(p, m, big_m)?;
    div.check(&tw)?;
    let dm = params.build(&tw)?;
    let torsion = match torsion_basis(&dm, div, &tw) {
        Ok(t) => t,
        Err(Error::AmbientTooSmall(_)) => return Ok(None),
        Err(e) => return Err(e),
    };
    let cp = level::tau_n_matrix(&dm, &tw);
    match level::solve_nu(&cp, dm.n, &tw) {
        Ok(_) => Ok(Some(Sufficient { tower: tw, module: dm, torsion })),
        Err(Error::AmbientTooSmall(_)) => Ok(None),
        Err(e) => Err(e),
    }
}
