use num_traits::One;
use serde::{Deserialize, Serialize};

use super::{Code, CodeError};
use crate::galois::{GaloisRing, GrElement};
use crate::quaternion::{Quat, QuatRing};
use crate::rational::{self, Rational};
use crate::ring::FiniteRing;

/// Coordinate read-off `H^n → R^{4n}`: `x0 + x1 i + x2 j + x3 k ↦ (x0, x1, x2, x3)` per symbol.
pub fn tau(v: &[Quat]) -> Vec<GrElement> {
    v.iter().flat_map(|x| x.0).collect()
}

/// Image of a quaternion code under [`tau`], as a code of length `4n` over the base ring.
pub fn tau_code(ring: &QuatRing, code: &Code) -> Code {
    let n_base = ring.base().order() as u32;
    let mut flat = Vec::with_capacity(code.len() * code.n() * 4);
    for w in code.words() {
        for &x in w {
            flat.extend_from_slice(&[x / (n_base * n_base * n_base), x / (n_base * n_base) % n_base, x / n_base % n_base, x % n_base]);
        }
    }
    Code::from_flat(code.n() * 4, n_base as usize, code.side(), flat)
}

/// Outcome of [`bounds_check`]: both inequality chains and the quantities involved.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsReport {
    /// `Γ d ≤ δ ≤ p^{m(r-1)}·4d`.
    pub homogeneous: bool,
    /// `d ≤ δ/Γ ≤ (p^m/(p^m-1))·4d`.
    pub normalized: bool,
    #[serde(with = "rational::serde_string")]
    pub gamma: Rational,
    #[serde(with = "rational::serde_string")]
    pub delta: Rational,
    #[serde(with = "rational::serde_string")]
    pub delta_normalized: Rational,
}

/// Checks the distance chains relating the minimum Hamming distance `d` of a quaternion
/// code to the minimum homogeneous distance `delta` of its image over `base`
/// (with the chain-ring weight of average value Γ).
pub fn bounds_check(d: usize, delta: Rational, base: &GaloisRing) -> Result<BoundsReport, CodeError> {
    if d == 0 {
        return Err(CodeError::BoundViolated("minimum distance must be positive".into()));
    }
    let (p, r, m) = (base.p() as i64, base.r() as i64, base.m() as i64);
    let gamma = base.gamma();
    let d_r = Rational::from_integer(d as i64);
    let top_weight = rational::pow(p, m * (r - 1));
    let pm = rational::pow(p, m);
    let four_d = d_r * Rational::from_integer(4);
    let delta_normalized = delta / gamma;
    let homogeneous = gamma * d_r <= delta && delta <= top_weight * four_d;
    let normalized = d_r <= delta_normalized && delta_normalized <= pm / (pm - Rational::one()) * four_d;
    let report = BoundsReport { homogeneous, normalized, gamma, delta, delta_normalized };
    if !(homogeneous && normalized) {
        return Err(CodeError::BoundViolated(format!(
            "d = {d}, delta = {}, gamma = {} over GR({}^{}, {})",
            rational::format(&delta),
            rational::format(&gamma),
            p,
            r,
            m
        )));
    }
    Ok(report)
}

/// `δ = p^{m(r-1)}·d_τ`.
pub fn type_alpha(delta: Rational, d_tau: usize, base: &GaloisRing) -> bool {
    let (p, r, m) = (base.p() as i64, base.r() as i64, base.m() as i64);
    delta == rational::pow(p, m * (r - 1)) * Rational::from_integer(d_tau as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes::{encode, is_linear, min_hamming, span, GeneratorMatrix};
    use crate::ring::Side;

    fn gr(p: u32, r: u32, m: usize) -> GaloisRing {
        GaloisRing::new(p, r, m, None).unwrap()
    }

    #[test]
    fn tau_examples() {
        let ring = QuatRing::hamilton(gr(3, 1, 1));
        let base = ring.base();
        assert_eq!(tau(&[ring.zero(); 3]), vec![base.zero(); 12]);
        let x = ring.parse("1+2i+j").unwrap();
        assert_eq!(tau(&[x]), vec![base.scalar(1), base.scalar(2), base.scalar(1), base.scalar(0)]);
    }

    #[test]
    fn tau_is_additive_bijection_on_single_symbols() {
        for base in [gr(2, 1, 1), gr(3, 1, 1), gr(2, 2, 1)] {
            let ring = QuatRing::hamilton(base.clone());
            assert!(ring.order() <= 256);
            let mut seen = std::collections::HashSet::new();
            for x in ring.elements() {
                assert!(seen.insert(tau(&[x])));
                for y in ring.elements().step_by(5) {
                    let lhs = tau(&[ring.add(&x, &y)]);
                    let rhs: Vec<_> = tau(&[x]).iter().zip(tau(&[y])).map(|(a, b)| base.add(a, &b)).collect();
                    assert_eq!(lhs, rhs);
                }
            }
            assert_eq!(seen.len(), ring.order());
        }
    }

    #[test]
    fn tau_code_matches_pointwise_tau() {
        let ring = QuatRing::hamilton(gr(2, 2, 1));
        let g = GeneratorMatrix::new(ring.clone(), vec![vec![ring.one(), ring.from_ints([1, 1, 0, 2])]]).unwrap();
        let c = span(&g, Side::Left).unwrap();
        let t = tau_code(&ring, &c);
        assert_eq!(t.len(), c.len());
        assert_eq!(t.n(), 8);
        assert_eq!(t.alphabet(), 4);
        for w in c.words() {
            let quats: Vec<Quat> = w.iter().map(|&x| ring.element_at(x as usize)).collect();
            let image: Vec<u32> = tau(&quats).iter().map(|e| ring.base().index_of(e) as u32).collect();
            assert!(t.contains(&image));
        }
        assert!(is_linear(ring.base(), &t, Side::Left));
        assert!(min_hamming(&t).unwrap() >= min_hamming(&c).unwrap());
        let _ = encode(&ring, &[ring.one()]);
    }

    #[test]
    fn bounds_examples() {
        let f3 = gr(3, 1, 1);
        let b = bounds_check(5, Rational::from_integer(6), &f3).unwrap();
        assert!(b.homogeneous && b.normalized);
        assert_eq!(b.gamma, Rational::new(2, 3));
        assert_eq!(b.delta_normalized, Rational::from_integer(9));
        let f2 = gr(2, 1, 1);
        assert!(bounds_check(4, Rational::from_integer(8), &f2).is_ok());
        assert!(matches!(bounds_check(4, Rational::from_integer(1), &f2), Err(CodeError::BoundViolated(_))));
        assert!(matches!(bounds_check(0, Rational::from_integer(0), &f2), Err(CodeError::BoundViolated(_))));
    }

    #[test]
    fn type_alpha_examples() {
        assert!(type_alpha(Rational::from_integer(6), 6, &gr(3, 1, 1)));
        assert!(type_alpha(Rational::from_integer(8), 8, &gr(2, 1, 1)));
        let z4 = gr(2, 2, 1);
        assert!(!type_alpha(Rational::from_integer(8), 8, &z4));
        assert!(type_alpha(Rational::from_integer(16), 8, &z4));
    }
}
