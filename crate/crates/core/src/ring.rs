//! The finite-ring interface shared by Galois rings and quaternion rings.

use std::fmt::Debug;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

/// Which side scalars act from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    #[default]
    Left,
    Right,
}

impl std::str::FromStr for Side {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "left" => Ok(Side::Left),
            "right" => Ok(Side::Right),
            other => Err(format!("unknown side {other:?} (expected left or right)")),
        }
    }
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Left => "left",
            Side::Right => "right",
        })
    }
}

/// An additive character value `exp(2πi · phase / modulus)`, kept as an exact phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CharacterValue {
    phase: u32,
    modulus: u32,
}

impl CharacterValue {
    pub fn new(phase: u32, modulus: u32) -> Self {
        debug_assert!(modulus > 0);
        CharacterValue { phase: phase % modulus, modulus }
    }

    pub fn phase(&self) -> u32 {
        self.phase
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn is_one(&self) -> bool {
        self.phase == 0
    }

    /// Product of character values, i.e. phase addition.
    pub fn combine(&self, other: &CharacterValue) -> CharacterValue {
        debug_assert_eq!(self.modulus, other.modulus);
        CharacterValue::new(
            ((self.phase as u64 + other.phase as u64) % self.modulus as u64) as u32,
            self.modulus,
        )
    }

    /// `(re, im)` of the complex value.
    pub fn to_complex(&self) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI * self.phase as f64 / self.modulus as f64;
        (theta.cos(), theta.sin())
    }
}

/// A finite ring with unity whose elements can be enumerated and indexed.
///
/// `element_at` and `index_of` are inverse bijections between `0..order()`
/// and the ring; index 0 is always the zero element.
pub trait FiniteRing: Send + Sync {
    type Element: Copy + Eq + Hash + Debug + Send + Sync;

    fn order(&self) -> usize;
    fn element_at(&self, index: usize) -> Self::Element;
    fn index_of(&self, x: &Self::Element) -> usize;

    fn zero(&self) -> Self::Element;
    fn one(&self) -> Self::Element;
    fn add(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;
    fn neg(&self, x: &Self::Element) -> Self::Element;
    fn mul(&self, x: &Self::Element, y: &Self::Element) -> Self::Element;

    fn sub(&self, x: &Self::Element, y: &Self::Element) -> Self::Element {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Element) -> bool {
        *x == self.zero()
    }

    fn is_unit(&self, x: &Self::Element) -> bool;

    /// The ring's generating character.
    fn character(&self, x: &Self::Element) -> CharacterValue;

    /// Elements whose sums generate the additive group.
    fn additive_generators(&self) -> Vec<Self::Element>;

    fn format_element(&self, x: &Self::Element) -> String;

    /// Multiplies with `scalar` on the given side: `scalar·x` for `Left`, `x·scalar` for `Right`.
    fn mul_side(&self, scalar: &Self::Element, x: &Self::Element, side: Side) -> Self::Element {
        match side {
            Side::Left => self.mul(scalar, x),
            Side::Right => self.mul(x, scalar),
        }
    }

    fn elements(&self) -> Box<dyn Iterator<Item = Self::Element> + '_> {
        Box::new((0..self.order()).map(move |i| self.element_at(i)))
    }
}
