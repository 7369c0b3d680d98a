//! Fixtures for the benchmarks: modules in their smallest sufficient tower
//! together with their level data.

use zetacorr::drinfeld::{sufficient_extension, ModuleParams, Sufficient, ThetaSpec};
use zetacorr::level::build_level_data_from;
use zetacorr::{DivisorSpec, LevelData};

pub struct Fixture {
    pub s: Sufficient,
    pub div: DivisorSpec,
    pub x: LevelData,
}

/// Rank `n` with the canonical degree-4 characteristic and a_j = θ + 1.
pub fn fixture(p: u32, n: usize, div: &str) -> Fixture {
    let div: DivisorSpec = div.parse().expect("valid divisor");
    let params = ModuleParams { n, theta: ThetaSpec::Auto, a_polys: vec![vec![1, 1]; n - 1] };
    let s = sufficient_extension(p, 1, &params, &div, 48).expect("sufficient extension");
    let x = build_level_data_from(&s.module, &div, &s.torsion, &s.tower).expect("level data");
    Fixture { s, div, x }
}
