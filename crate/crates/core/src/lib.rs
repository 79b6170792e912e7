//! Monogenity of pure number fields `Q(alpha)`, `alpha^(p^r) = m`, decided with
//! first-order Newton polygons and Ore's theorem.
//!
//! The polygon engine ([`newton`], [`ore`]) works for any monic integer
//! polynomial; [`monogenity`] specializes it to `x^(p^r) - m`. Brute-force
//! cross-checks live in [`oracle`].

pub mod arith;
pub mod error;
pub mod fp;
pub mod monogenity;
pub mod newton;
pub mod oracle;
pub mod ore;
pub mod zpoly;

pub use arith::{Prime, Valuation};
pub use error::{Error, Result};
pub use monogenity::{classify, MonogenityVerdict, Provenance, Status};

pub use zpoly::{PureFieldParams, ZPoly};
