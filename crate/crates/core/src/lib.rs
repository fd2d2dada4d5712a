//! Quaternion rings over Galois rings and one-sided linear codes over them.
//!
//! The crate is organised bottom-up:
//!
//! - [`galois`]: exact arithmetic in `GR(p^r, m)`, its generating character
//!   and its closed-form homogeneous weight.
//! - [`quaternion`]: the rings `H_{a,b}(R)` over a Galois ring `R`.
//! - [`structure`]: principal ideal posets, Möbius functions, minimal ideals,
//!   socles and homogeneous weights computed three independent ways.
//! - [`codes`]: enumeration and analysis of one-sided quaternion codes and
//!   their coordinate images over the base ring.
//! - [`search`]: exhaustive template search for good codes.
//!
//! All weights are exact rationals ([`Rational`]).

pub mod codes;
pub mod galois;
pub mod quaternion;
pub mod rational;
pub mod ring;
pub mod search;
pub mod structure;

pub use codes::{Code, CodeError, CodeReport, GeneratorMatrix};
pub use galois::{GaloisRing, GaloisRingError, GrElement, RingDescriptor};
pub use quaternion::{Quat, QuatDescriptor, QuatRing, QuaternionError};
pub use rational::Rational;
pub use ring::{CharacterValue, FiniteRing, Side};
pub use search::{Objective, SearchConfig, SearchError, SearchResult, Template};
pub use structure::{IdealPoset, MobiusTable, StructureError, WeightFunction};
