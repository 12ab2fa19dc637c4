//! Exact computation in the rings `k[T1..Tm, U, V]/(T^r U - F)` and
//! `k[X1..Xm, Y, Z, T]/(X^r Y - H)` over `Q` and prime fields: normal forms, weighted
//! filtrations and their graded rings, exponential maps with symbolic axiom checks, and
//! certificates for `B(r, F)[w] ≅ B(s, F)[w]`.
//!
//! ```
//! use danielewski::{FieldSpec, Ring};
//!
//! let b = Ring::danielewski(FieldSpec::Rationals, &[2], "V^2").unwrap();
//! assert_eq!(b.parse("T1^3*U^2").unwrap().to_string(), "t1*u*v^2");
//! ```

pub mod asanuma;
pub mod error;
pub mod expmap;
pub mod field;
pub mod filtration;
pub mod parse;
pub mod poly;
pub mod quotient;
pub mod sample;
pub mod stable_iso;
pub mod suite;

pub use expmap::ExpMap;
pub use field::{FieldElem, FieldSpec};
pub use filtration::{Filtration, GradedRing};
pub use parse::{parse_poly, parse_ring_config, print_poly, Family, RingConfig};
pub use poly::{Degree, Monomial, Polynomial, Universe, WeightVector};
pub use quotient::{Ring, RingElement, RingHom};
pub use stable_iso::{BezoutPair, IsoCertificate};
