//! Session configuration: a JSON file merged with command-line overrides,
//! resolved into a field tower, a Drinfeld module and its torsion.

use std::path::Path;

use serde::{Deserialize, Serialize};
use zetacorr::drinfeld::{sufficient_extension, torsion_basis, ModuleParams};
use zetacorr::{DivisorSpec, DrinfeldModule, FieldTower, ThetaSpec, TorsionData};

use crate::error::CliError;

pub const DEFAULT_GROUP_CAP: u64 = 2_000_000;
pub const DEFAULT_AMBIENT_CAP: usize = 48;

/// Ambient degree: a fixed M or the smallest sufficient one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Ambient {
    Fixed(usize),
    Named(String),
}

impl Ambient {
    fn parse(s: &str) -> Result<Self, CliError> {
        if s == "auto" {
            return Ok(Ambient::Named(s.into()));
        }
        s.parse()
            .map(Ambient::Fixed)
            .map_err(|_| CliError::Config(format!("M must be an integer or \"auto\", got '{s}'")))
    }

    fn fixed(&self) -> Result<Option<usize>, CliError> {
        match self {
            Ambient::Fixed(m) => Ok(Some(*m)),
            Ambient::Named(s) if s == "auto" => Ok(None),
            Ambient::Named(s) => Err(CliError::Config(format!("M must be an integer or \"auto\", got '{s}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Table,
}

/// Every key is optional; absent keys take their defaults at resolution.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub q: Option<u64>,
    pub p: Option<u32>,
    pub m: Option<usize>,
    #[serde(rename = "M", alias = "ambient")]
    pub ambient: Option<Ambient>,
    pub rank: Option<usize>,
    pub divisor: Option<String>,
    pub theta: Option<String>,
    pub seed: Option<u64>,
    pub a: Option<Vec<Vec<u64>>>,
    pub cap: Option<u64>,
    pub ambient_cap: Option<usize>,
    pub output: Option<String>,
    pub format: Option<Format>,
}

impl ConfigFile {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))
    }

    /// Keys set in `over` replace those set here.
    pub fn merge(self, over: ConfigFile) -> ConfigFile {
        ConfigFile {
            q: over.q.or(self.q),
            p: over.p.or(self.p),
            m: over.m.or(self.m),
            ambient: over.ambient.or(self.ambient),
            rank: over.rank.or(self.rank),
            divisor: over.divisor.or(self.divisor),
            theta: over.theta.or(self.theta),
            seed: over.seed.or(self.seed),
            a: over.a.or(self.a),
            cap: over.cap.or(self.cap),
            ambient_cap: over.ambient_cap.or(self.ambient_cap),
            output: over.output.or(self.output),
            format: over.format.or(self.format),
        }
    }

    pub fn set_ambient(&mut self, s: &str) -> Result<(), CliError> {
        self.ambient = Some(Ambient::parse(s)?);
        Ok(())
    }
}

/// Parses "1,1;2" into [[1,1],[2]]: one polynomial in θ per coefficient a_j.
pub fn parse_a_polys(s: &str) -> Result<Vec<Vec<u64>>, CliError> {
    s.split(';')
        .map(|poly| {
            poly.split(',')
                .map(str::trim)
                .filter(|x| !x.is_empty())
                .map(|x| x.parse().map_err(|_| CliError::Config(format!("bad coefficient '{x}' in --a"))))
                .collect()
        })
        .collect()
}

/// Splits q = p^m, with p prime.
fn prime_power(q: u64) -> Result<(u32, usize), CliError> {
    let bad = || CliError::Config(format!("q = {q} is not a prime power"));
    if q < 2 {
        return Err(bad());
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d)).expect("q >= 2 has a divisor");
    let (mut rest, mut m) = (q, 0);
    while rest % p == 0 {
        rest /= p;
        m += 1;
    }
    if rest != 1 {
        return Err(bad());
    }
    Ok((u32::try_from(p).map_err(|_| bad())?, m))
}

/// The fully resolved configuration, echoed in every report.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub p: u32,
    pub m: usize,
    pub q: u64,
    #[serde(rename = "M")]
    pub ambient: Ambient,
    pub rank: usize,
    pub divisor: String,
    pub theta: String,
    pub seed: u64,
    pub a: Vec<Vec<u64>>,
    pub cap: u64,
    pub ambient_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub output: Option<String>,
    pub format: Format,
}

impl SessionConfig {
    pub fn resolve(file: &ConfigFile) -> Result<Self, CliError> {
        let (p, m) = match (file.q, file.p, file.m) {
            (Some(q), None, None) => prime_power(q)?,
            (Some(q), p, m) => {
                let (pp, mm) = prime_power(q)?;
                if p.is_some_and(|p| p != pp) || m.is_some_and(|m| m != mm) {
                    return Err(CliError::Config(format!("q = {q} disagrees with p and m")));
                }
                (pp, mm)
            }
            (None, p, m) => (p.unwrap_or(3), m.unwrap_or(1)),
        };
        if m == 0 {
            return Err(CliError::Config("m must be positive".into()));
        }
        let q =
            u64::from(p).checked_pow(m as u32).ok_or_else(|| CliError::Config("q does not fit in 64 bits".into()))?;
        let rank = file.rank.unwrap_or(1);
        if rank == 0 {
            return Err(CliError::Config("rank must be at least 1".into()));
        }
        let ambient = file.ambient.clone().unwrap_or(Ambient::Named("auto".into()));
        ambient.fixed()?;
        // a_j = θ + 1 by default: a_j = 0 is a degenerate choice
        let a = file.a.clone().unwrap_or_else(|| vec![vec![1, 1]; rank - 1]);
        Ok(SessionConfig {
            p,
            m,
            q,
            ambient,
            rank,
            divisor: file.divisor.clone().unwrap_or_else(|| "0:1,1:1".into()),
            theta: file.theta.clone().unwrap_or_else(|| "auto".into()),
            seed: file.seed.unwrap_or(0),
            a,
            cap: file.cap.unwrap_or(DEFAULT_GROUP_CAP),
            ambient_cap: file.ambient_cap.unwrap_or(DEFAULT_AMBIENT_CAP),
            output: file.output.clone(),
            format: file.format.unwrap_or_default(),
        })
    }

    pub fn divisor_spec(&self) -> Result<DivisorSpec, CliError> {
        self.divisor.parse().map_err(|e: zetacorr::Error| CliError::Config(e.to_string()))
    }

    pub fn module_params(&self) -> Result<ModuleParams, CliError> {
        let theta = ThetaSpec::parse(&self.theta, self.seed).map_err(|e| CliError::Config(e.to_string()))?;
        if self.a.len() > self.rank - 1 {
            return Err(CliError::Config(format!(
                "{} coefficient polynomials given for rank {}",
                self.a.len(),
                self.rank
            )));
        }
        if let Some(x) = self.a.iter().flatten().find(|&&x| x >= self.q) {
            return Err(CliError::Config(format!("coefficient label {x} is not an element of F_{}", self.q)));
        }
        Ok(ModuleParams { n: self.rank, theta, a_polys: self.a.clone() })
    }
}

/// A tower with a module and its full p(t)-torsion.
pub struct Session {
    pub config: SessionConfig,
    pub tower: FieldTower,
    pub div: DivisorSpec,
    pub module: DrinfeldModule,
    pub torsion: TorsionData,
}

impl Session {
    pub fn build(config: SessionConfig) -> Result<Self, CliError> {
        let div = config.divisor_spec()?;
        let params = config.module_params()?;
        let (tower, module, torsion) = match config.ambient.fixed()? {
            None => {
                let s = sufficient_extension(config.p, config.m, &params, &div, config.ambient_cap)?;
                (s.tower, s.module, s.torsion)
            }
            Some(big_m) => {
                let tower = FieldTower::new(config.p, config.m, big_m)?;
                div.check(&tower)?;
                let module = params.build(&tower)?;
                let torsion = torsion_basis(&module, &div, &tower)?;
                (tower, module, torsion)
            }
        };
        Ok(Session { config, tower, div, module, torsion })
    }
}
