//! Exact computations for quadric surface bundles: quadratic forms with simple
//! degeneration, even Clifford algebras, quaternion algebras over quadratic
//! étale extensions, and the quadric bundles attached to cubic fourfolds
//! containing a plane.

pub mod clifford;
pub mod correspondence;
pub mod cubicbundle;
pub mod error;
pub mod field;
pub mod linalg;
pub mod places;
pub mod quadform;
pub mod quaternion;
pub mod search;

pub use error::{Error, Result};
pub use field::{Elem, FieldTower};
