use num_traits::One;
use serde::{Deserialize, Serialize};

use super::image::{bounds_check, tau_code, type_alpha, BoundsReport};
use super::{
    hamming_enumerator, is_free, min_hamming, min_hom_distance, quasi_cyclic_orders, singleton_check, span, Code,
    CodeError, GeneratorMatrix,
};
use crate::quaternion::{QuatDescriptor, QuatRing};
use crate::rational::{self, Rational};
use crate::ring::{FiniteRing, Side};
use crate::structure::{
    closed_form_quaternion_weight, galois_closed_form_weight, hom_weight_mobius, WeightFunction, POSET_LIMIT,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingletonReport {
    #[serde(with = "rational::serde_string")]
    pub bound: Rational,
    pub mds: bool,
}

/// Distances of the image code over the base ring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TauReport {
    pub length: usize,
    pub size: usize,
    pub d_hamming: usize,
    /// Minimum homogeneous distance with the chain-ring weight of its natural average value.
    #[serde(with = "rational::serde_string")]
    pub delta: Rational,
    #[serde(with = "rational::serde_string")]
    pub delta_normalized: Rational,
    pub type_alpha: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeReport {
    pub ring: QuatDescriptor,
    pub side: Side,
    pub k: usize,
    pub n: usize,
    pub size: usize,
    pub free: bool,
    pub rate: String,
    pub d_hamming: usize,
    pub enumerator: Vec<(usize, u64)>,
    /// Average value of the weight used for `d_hom`.
    #[serde(with = "rational::serde_string")]
    pub hom_gamma: Rational,
    #[serde(with = "rational::serde_string")]
    pub d_hom: Rational,
    #[serde(with = "rational::serde_string")]
    pub d_hom_normalized: Rational,
    pub singleton: SingletonReport,
    pub quasi_cyclic: Vec<usize>,
    pub tau: TauReport,
    pub type_alpha: bool,
    pub bounds: BoundsReport,
}

/// Normalized homogeneous weight on a quaternion ring: the closed form when one
/// applies, otherwise the ideal-poset formula.
pub fn default_weight(ring: &QuatRing) -> Result<WeightFunction, CodeError> {
    match closed_form_quaternion_weight(ring, Rational::one()) {
        Ok(w) => Ok(w),
        Err(_) if ring.order() <= POSET_LIMIT => Ok(hom_weight_mobius(ring, Rational::one())?),
        Err(e) => Err(e.into()),
    }
}

/// Spans `G` on `side` and analyzes the result. Uses [`default_weight`] when `weight` is `None`.
pub fn analyze(g: &GeneratorMatrix, side: Side, weight: Option<&WeightFunction>) -> Result<CodeReport, CodeError> {
    let code = span(g, side)?;
    analyze_code(g, &code, side, weight)
}

/// Analyzes an already spanned code of `G`.
pub fn analyze_code(
    g: &GeneratorMatrix,
    code: &Code,
    side: Side,
    weight: Option<&WeightFunction>,
) -> Result<CodeReport, CodeError> {
    let ring = g.ring();
    let base = ring.base();
    let owned;
    let weight = match weight {
        Some(w) => w,
        None => {
            owned = default_weight(ring)?;
            &owned
        }
    };
    let d_hamming = min_hamming(code)?;
    let d_hom = min_hom_distance(code, weight)?;

    let image = tau_code(ring, code);
    let image_weight = galois_closed_form_weight(base, base.gamma());
    let d_tau = min_hamming(&image)?;
    let delta = min_hom_distance(&image, &image_weight)?;
    let alpha = type_alpha(delta, d_tau, base);
    let bounds = bounds_check(d_hamming, delta, base)?;

    Ok(CodeReport {
        ring: ring.descriptor(),
        side,
        k: g.k(),
        n: g.n(),
        size: code.len(),
        free: is_free(code, g),
        rate: format!("{}/{}", g.k(), g.n()),
        d_hamming,
        enumerator: hamming_enumerator(code).to_pairs(),
        hom_gamma: weight.gamma(),
        d_hom,
        d_hom_normalized: d_hom / weight.gamma(),
        singleton: singleton_check(code)?,
        quasi_cyclic: quasi_cyclic_orders(code),
        tau: TauReport {
            length: image.n(),
            size: image.len(),
            d_hamming: d_tau,
            delta,
            delta_normalized: bounds.delta_normalized,
            type_alpha: alpha,
        },
        type_alpha: alpha,
        bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisRing;

    #[test]
    fn example2_report() {
        let ring = QuatRing::hamilton(GaloisRing::new(2, 1, 1, None).unwrap());
        let rows: Vec<Vec<String>> = [["1", "1", "i", "i", "1+j", "1+j"], ["i", "1+j", "1+j", "1", "1", "i"]]
            .iter()
            .map(|r| r.iter().map(|s| s.to_string()).collect())
            .collect();
        let g = GeneratorMatrix::parse(ring, &rows).unwrap();
        let r = analyze(&g, Side::Left, None).unwrap();
        assert_eq!(r.size, 256);
        assert!(r.free);
        assert_eq!(r.rate, "2/6");
        assert_eq!(r.d_hamming, 4);
        assert_eq!(r.d_hom_normalized, Rational::from_integer(4));
        assert_eq!(r.tau.length, 24);
        assert_eq!(r.tau.d_hamming, 8);
        assert_eq!(r.tau.delta, Rational::from_integer(8));
        assert!(r.type_alpha);
        assert!(r.bounds.homogeneous && r.bounds.normalized);
        let json = serde_json::to_string(&r).unwrap();
        let back: CodeReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn default_weight_falls_back_to_poset_formula() {
        let z4 = GaloisRing::new(2, 2, 1, None).unwrap();
        let ring = QuatRing::new(z4.clone(), z4.scalar(1), z4.scalar(1)).unwrap();
        assert!(closed_form_quaternion_weight(&ring, Rational::one()).is_err());
        let w = default_weight(&ring).unwrap();
        assert_eq!(w.len(), ring.order());
        assert_eq!(w.gamma(), Rational::one());
    }
}
