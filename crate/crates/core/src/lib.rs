//! LCLM-decomposition of linear differential operators with coefficients
//! in F_q(t), q = p^n.

pub mod algext;
pub mod asd;
pub mod decomp;
pub mod display;
pub mod error;
pub mod field;
pub mod fieldkit;
pub mod linalg;
pub mod ore;
pub mod pcurv;
pub mod yfactor;

pub use error::{Error, Result};
pub use field::{DifferentialField, Field, FiniteField};
