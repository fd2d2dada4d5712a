use std::collections::HashMap;

use num_traits::{One, Zero};

use super::poset::{ideal_poset, mobius, principal_ideal, unique_minimal_ideal, ElementSet};
use super::{check_order, minimal_ideal_candidate, StructureError, POSET_LIMIT};
use crate::galois::GaloisRing;
use crate::quaternion::QuatRing;
use crate::rational::Rational;
use crate::ring::{FiniteRing, Side};

const IMAGINARY_TOLERANCE: f64 = 1e-9;

/// A weight tabulated over every ring element (by element index), with its average value Γ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightFunction {
    table: Vec<Rational>,
    gamma: Rational,
}

/// First failure found by [`WeightFunction::check_homogeneous`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DefinitionViolation {
    NonzeroAtZero,
    NotConstantOnAssociates { x: usize, y: usize },
    WrongIdealAverage { generator: usize, average: Rational },
}

impl WeightFunction {
    pub fn new(table: Vec<Rational>, gamma: Rational) -> Self {
        WeightFunction { table, gamma }
    }

    pub fn gamma(&self) -> Rational {
        self.gamma
    }

    pub fn table(&self) -> &[Rational] {
        &self.table
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn weight(&self, index: usize) -> Rational {
        self.table[index]
    }

    pub fn weight_of<R: FiniteRing>(&self, ring: &R, x: &R::Element) -> Rational {
        self.table[ring.index_of(x)]
    }

    /// Multiplies every weight (and Γ) by `factor`.
    pub fn scaled(&self, factor: Rational) -> WeightFunction {
        WeightFunction { table: self.table.iter().map(|w| *w * factor).collect(), gamma: self.gamma * factor }
    }

    /// Divides by Γ, giving average value 1.
    pub fn normalized(&self) -> WeightFunction {
        self.scaled(Rational::one() / self.gamma)
    }

    /// Checks the homogeneity conditions exhaustively on the given side:
    /// `w(0) = 0`, `w` is constant on elements generating the same principal ideal,
    /// and the average of `w` over every nonzero principal ideal is Γ.
    pub fn check_homogeneous<R: FiniteRing>(&self, ring: &R, side: Side) -> Result<(), StructureError> {
        self.definition_violation(ring, side).map(|_| ())
    }

    /// Like [`check_homogeneous`](Self::check_homogeneous) but reports the first violation.
    pub fn definition_violation<R: FiniteRing>(
        &self,
        ring: &R,
        side: Side,
    ) -> Result<Option<DefinitionViolation>, StructureError> {
        check_order(ring.order(), POSET_LIMIT)?;
        if !self.table[ring.index_of(&ring.zero())].is_zero() {
            return Ok(Some(DefinitionViolation::NonzeroAtZero));
        }
        let mut seen: HashMap<ElementSet, usize> = HashMap::new();
        for idx in 0..ring.order() {
            let x = ring.element_at(idx);
            let ideal = principal_ideal(ring, &x, side)?;
            if let Some(&first) = seen.get(&ideal) {
                if self.table[first] != self.table[idx] {
                    return Ok(Some(DefinitionViolation::NotConstantOnAssociates { x: first, y: idx }));
                }
                continue;
            }
            if ideal.len() > 1 {
                let total: Rational = ideal.indices().iter().map(|&e| self.table[e]).sum();
                let average = total / Rational::from_integer(ideal.len() as i64);
                if average != self.gamma {
                    return Ok(Some(DefinitionViolation::WrongIdealAverage { generator: idx, average }));
                }
            }
            seen.insert(ideal, idx);
        }
        Ok(None)
    }
}

fn units<R: FiniteRing>(ring: &R) -> Vec<R::Element> {
    ring.elements().filter(|x| ring.is_unit(x)).collect()
}

/// `w(x) = Γ [1 - (1/|R^×|) Σ_{u ∈ R^×} χ(xu)]`.
///
/// The character sum is accumulated as a histogram of exact phases and only then
/// evaluated in floating point; it must come out as a real integer.
pub fn hom_weight_character<R: FiniteRing>(ring: &R, gamma: Rational) -> Result<WeightFunction, StructureError> {
    check_order(ring.order(), POSET_LIMIT)?;
    let units = units(ring);
    let modulus = ring.character(&ring.one()).modulus() as usize;
    let n_units = Rational::from_integer(units.len() as i64);
    let mut table = Vec::with_capacity(ring.order());
    for x in ring.elements() {
        let mut hist = vec![0u64; modulus];
        for u in &units {
            hist[ring.character(&ring.mul(&x, u)).phase() as usize] += 1;
        }
        let (mut re, mut im) = (0.0f64, 0.0f64);
        for (phase, &count) in hist.iter().enumerate() {
            let theta = 2.0 * std::f64::consts::PI * phase as f64 / modulus as f64;
            re += count as f64 * theta.cos();
            im += count as f64 * theta.sin();
        }
        if im.abs() > IMAGINARY_TOLERANCE {
            return Err(StructureError::NonVanishingImaginaryPart {
                element: ring.format_element(&x),
                imag: format!("{im:e}"),
            });
        }
        let rounded = re.round();
        if (re - rounded).abs() > IMAGINARY_TOLERANCE {
            return Err(StructureError::NonIntegralCharacterSum {
                element: ring.format_element(&x),
                value: format!("{re}"),
            });
        }
        let sum = Rational::from_integer(rounded as i64);
        table.push(gamma * (Rational::one() - sum / n_units));
    }
    Ok(WeightFunction { table, gamma })
}

/// `w(x) = Γ [1 - μ(0, Rx) / |R^× x|]` over the poset of principal left ideals,
/// with `|R^× x|` the orbit of `x` under left multiplication by units.
pub fn hom_weight_mobius<R: FiniteRing>(ring: &R, gamma: Rational) -> Result<WeightFunction, StructureError> {
    let poset = ideal_poset(ring, Side::Left)?;
    let mu = mobius(&poset);
    let units = units(ring);
    let zero = poset.zero_ideal();
    let mut table = Vec::with_capacity(ring.order());
    let mut seen = vec![0u32; ring.order()];
    for idx in 0..ring.order() {
        let x = ring.element_at(idx);
        let stamp = idx as u32 + 1;
        let mut orbit = 0i64;
        for u in &units {
            let y = ring.index_of(&ring.mul(u, &x));
            if seen[y] != stamp {
                seen[y] = stamp;
                orbit += 1;
            }
        }
        let m = mu.get(zero, poset.ideal_of(idx));
        table.push(gamma * (Rational::one() - Rational::new(m, orbit)));
    }
    Ok(WeightFunction { table, gamma })
}

/// Weight determined by a minimal ideal `I` contained in every nonzero ideal:
/// `0` at `0`, `Γ|I|/(|I|-1)` on `I \ {0}`, `Γ` elsewhere.
pub fn weight_from_minimal_ideal<R: FiniteRing>(ring: &R, ideal: &ElementSet, gamma: Rational) -> WeightFunction {
    let size = ideal.len() as i64;
    let zero = ring.index_of(&ring.zero());
    let table = (0..ring.order())
        .map(|i| {
            if i == zero {
                Rational::zero()
            } else if ideal.contains(i) {
                gamma * Rational::new(size, size - 1)
            } else {
                gamma
            }
        })
        .collect();
    WeightFunction { table, gamma }
}

/// The unique-minimal-ideal weight, with the ideal found from the left poset.
pub fn hom_weight_unique_minimal<R: FiniteRing>(ring: &R, gamma: Rational) -> Result<WeightFunction, StructureError> {
    let poset = ideal_poset(ring, Side::Left)?;
    let minimal = poset.minimal_ideals();
    if minimal.len() != 1 {
        return Err(StructureError::NoUniqueMinimalIdeal(minimal.len()));
    }
    debug_assert!(unique_minimal_ideal(ring, Side::Left)?.is_some());
    Ok(weight_from_minimal_ideal(ring, &poset.ideal(minimal[0]).members, gamma))
}

/// Chain-ring closed form of a Galois ring, rescaled to average value `gamma`.
pub fn galois_closed_form_weight(ring: &GaloisRing, gamma: Rational) -> WeightFunction {
    let factor = gamma / ring.gamma();
    let table = ring.elements().map(|x| ring.hom_weight(&x) * factor).collect();
    WeightFunction { table, gamma }
}

/// Quaternions over a field of odd order `q`: `Γ q²/(q²-1)` on zero divisors,
/// `Γ (1 - 1/((q-1)(q²-1)))` on units.
pub fn odd_field_quaternion_weight(ring: &QuatRing, gamma: Rational) -> Result<WeightFunction, StructureError> {
    let base = ring.base();
    if base.p() == 2 || base.r() != 1 {
        return Err(StructureError::UnsupportedRing("base ring must be a field of odd characteristic".into()));
    }
    check_order(ring.order(), 1 << 20)?;
    let q = (base.p() as i64).pow(base.m() as u32);
    let zd = gamma * Rational::new(q * q, q * q - 1);
    let unit = gamma * (Rational::one() - Rational::new(1, (q - 1) * (q * q - 1)));
    let zero = ring.zero();
    let table = ring
        .elements()
        .map(|x| {
            if x == zero {
                Rational::zero()
            } else if ring.is_unit(&x) {
                unit
            } else {
                zd
            }
        })
        .collect();
    Ok(WeightFunction { table, gamma })
}

/// Normalized weight on `H(F_2)`: 2 at `1+i+j+k`, 1 on the other nonzero elements.
pub fn f2_quaternion_weight(ring: &QuatRing) -> Result<WeightFunction, StructureError> {
    let base = ring.base();
    if base.order() != 2 {
        return Err(StructureError::UnsupportedRing("base ring must be F_2".into()));
    }
    let special = ring.from_ints([1, 1, 1, 1]);
    let zero = ring.zero();
    let table = ring
        .elements()
        .map(|x| {
            if x == zero {
                Rational::zero()
            } else if x == special {
                Rational::from_integer(2)
            } else {
                Rational::one()
            }
        })
        .collect();
    Ok(WeightFunction { table, gamma: Rational::one() })
}

/// The closed form that applies to this quaternion ring: the odd-field formula,
/// or for `H(GR(2^r, m))` the minimal-ideal formula with the explicit generator.
pub fn closed_form_quaternion_weight(ring: &QuatRing, gamma: Rational) -> Result<WeightFunction, StructureError> {
    let base = ring.base();
    if base.p() != 2 {
        return odd_field_quaternion_weight(ring, gamma);
    }
    check_order(ring.order(), 1 << 20)?;
    let generator = minimal_ideal_candidate(ring)?;
    let ideal = principal_ideal(ring, &generator, Side::Left)?;
    Ok(weight_from_minimal_ideal(ring, &ideal, gamma))
}
