//! Exact arithmetic for rank-n Drinfeld modules over F_q[t], their level
//! structures along a divisor ∞ + D on the projective line, and membership
//! in the associated zeta correspondence.
//!
//! The crate is organised bottom-up: [`field`] provides the finite-field
//! tower, [`ore`] the twisted polynomial ring, [`drinfeld`] the modules and
//! their torsion, [`level`] the level-data matrix pairs, and [`zeta`] the
//! membership criterion and the graph census.

pub mod drinfeld;
pub mod error;
pub mod field;
pub mod level;
pub mod ore;
pub mod poly;
pub mod zeta;

pub use drinfeld::{DivisorSpec, DrinfeldModule, ModuleParams, ThetaSpec, TorsionData};
pub use error::{Error, Result};
pub use field::{FieldTower, FpMatrix, FqElem, Matrix};
pub use level::{CompanionPair, GroupElement, LevelData, NuSolution};
pub use ore::OrePoly;
pub use poly::Poly;
pub use zeta::{CensusEntry, TransferPlan, TransferResult};
