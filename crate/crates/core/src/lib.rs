//! Exact counting of real intersections between bivariate fewnomials and
//! lines, plus tooling to search for trinomials that attain the extremal
//! count.
//!
//! Arithmetic is exact throughout (`Rational` over `BigInt`); floats appear
//! only for display.

pub mod error;
pub mod fewnomial;
pub mod interval;
pub mod poly;
pub mod rational;
pub mod rootcount;
pub mod sharpsearch;
pub mod signvar;
pub mod theorem;
mod zpoly;

pub use error::{Error, ParseError, Result};
pub use fewnomial::{substitute_line, Fewnomial2, Line, Term};
pub use poly::{ArithOp, DensePoly, Transform};
pub use rational::Rational;
pub use rootcount::{Bound, IsolatingInterval, SturmChain};
pub use sharpsearch::{CertifiedExample, DistributionTarget, ExponentTuple, PhiData, SearchConfig};
pub use signvar::{IntervalId, NewtonInterval, SharpnessOrdering};
pub use theorem::{intersection_count, verify_bound, InstanceParams, RootCountReport};
