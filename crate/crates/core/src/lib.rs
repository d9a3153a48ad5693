#![no_std]

extern crate alloc;

pub mod ar;
pub mod decompose;
pub mod endo;
pub mod error;
pub mod ext;
pub mod field;
pub mod hom;
pub mod infinite;
pub mod poly;
pub mod projective;
pub mod quiver;
pub mod rep;
pub mod stable;
pub mod subcat;
pub mod torsion;

pub use error::{Error, Result};
pub use field::{Fp, Matrix, QuotientSpace, DEFAULT_PRIME};
pub use poly::Poly;
pub use quiver::{Quiver, RayQuiver};
pub use rep::{Morphism, Rep};
