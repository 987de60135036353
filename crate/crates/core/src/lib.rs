//! Generation and numerical verification of theta relations attached to the
//! involution `S_n = (2/n)Λ − E`.

pub mod charalg;
pub mod cli;
pub mod error;
pub mod identity_suite;
pub mod relation_engine;
pub mod report;
pub mod rational;
pub mod sn_transform;
pub mod theta_eval;

pub use charalg::{Characteristic, CycleClass};
pub use error::{Result, ThetaError};
pub use rational::Rational;
pub use sn_transform::{ArgTuple, TransformMatrix};
pub use theta_eval::{EvalSettings, PeriodMatrix, ThetaValue};
