//! Exact arithmetic for the recursively defined polynomial families
//! `P_n^{g,h}` and `Q_n^g`, their classical special cases, certified real
//! root location and instance checks of the zero transfer between them.

pub mod arith;
pub mod classical;
pub mod error;
pub mod exact;
pub mod families;
pub mod poly;
pub mod rootloc;
pub mod tables;
pub mod transfer;

pub use arith::ArithmeticFunctionSpec;
pub use error::{Error, Result};
pub use exact::Rational;
pub use families::{compute_family, compute_p, compute_q, PolyFamily};
pub use poly::Poly;
