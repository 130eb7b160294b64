//! Exact algebra for prelog rings over `Q` and prime fields.

pub mod abgroups;
pub mod arith;
pub mod error;
pub mod groebner;
pub mod intmat;
pub mod localalg;
pub mod logdiff;
pub mod monoids;
pub mod poly;
pub mod prelog;
pub mod regcheck;
pub mod replay;
pub mod verdict;

pub use arith::{Coef, Field};
pub use error::{Error, ParseError, Result};
pub use poly::{Mono, Poly};
pub use abgroups::{AbGroupMap, FgAbGroup, Snf};
pub use intmat::IntMat;
pub use localalg::{FpModule, PresentedRing, RingMode};
pub use monoids::{FinMonoid, MonoidHom};
pub use prelog::{PrelogHom, PrelogRing};
pub use regcheck::CheckOptions;
pub use replay::{replay, ReplayReport};
pub use verdict::{Certificate, Fact, Precondition, Status, Verdict};
