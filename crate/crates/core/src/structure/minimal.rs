use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::poset::{ideal_contains, principal_ideal};
use super::{check_order, StructureError, IDEAL_LIMIT, POSET_LIMIT};
use crate::quaternion::{Quat, QuatRing};
use crate::ring::{FiniteRing, Side};

/// Closed-form generator of the minimal ideal of `H(GR(2^r, m))`:
/// `1+i+j+k` for `r = 1`, otherwise `2^{r-1}(1+ω+…+ω^{m-1})(1+i+j+k)`.
pub fn minimal_ideal_candidate(ring: &QuatRing) -> Result<Quat, StructureError> {
    let base = ring.base();
    if base.p() != 2 {
        return Err(StructureError::UnsupportedRing(format!(
            "closed-form minimal ideal needs characteristic a power of 2, got p = {}",
            base.p()
        )));
    }
    let minus_one = base.scalar(-1);
    if *ring.a() != minus_one || *ring.b() != minus_one {
        return Err(StructureError::UnsupportedRing("closed-form minimal ideal needs a = b = -1".into()));
    }
    let ones = ring.from_ints([1, 1, 1, 1]);
    if base.r() == 1 {
        return Ok(ones);
    }
    let mut factor = base.zero();
    for e in 0..base.m() {
        factor = base.add(&factor, &base.omega_power(e));
    }
    let factor = base.mul(&base.scalar(1 << (base.r() - 1)), &factor);
    Ok(ring.scale(&factor, &ones))
}

/// How [`verify_candidate`] checks containment in other ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CandidateMode {
    /// Random nonzero generators plus every element of the form `c + e`
    /// with `c` in the candidate ideal and `e` supported on one base coordinate.
    Sampled { samples: usize, seed: u64 },
    /// Every nonzero element. Slow above a few thousand elements.
    Exhaustive,
}

impl Default for CandidateMode {
    fn default() -> Self {
        CandidateMode::Sampled { samples: 1000, seed: 0x5eed }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateReport {
    pub generator: String,
    /// Elements of the ideal generated by the candidate, in canonical text.
    pub ideal: Vec<String>,
    pub ideal_size: usize,
    pub two_sided: bool,
    pub minimal: bool,
    /// Number of nonzero generators `y` checked for `x ∈ Hy` and `x ∈ yH`.
    pub generators_checked: usize,
    pub contained_in_all_checked: bool,
    pub exhaustive: bool,
}

impl CandidateReport {
    pub fn verified(&self) -> bool {
        self.two_sided && self.minimal && self.contained_in_all_checked
    }
}

/// Checks that `H·x` for the closed-form candidate `x` is a two-sided minimal ideal
/// contained in every (checked) nonzero principal left and right ideal.
pub fn verify_candidate(ring: &QuatRing, mode: CandidateMode) -> Result<CandidateReport, StructureError> {
    check_order(ring.order(), IDEAL_LIMIT)?;
    let x = minimal_ideal_candidate(ring)?;
    let ideal = principal_ideal(ring, &x, Side::Left)?;
    let zero = ring.zero();

    // Right multiples of x landing in Hx make Hx two-sided; additive generators suffice.
    let two_sided = ring
        .additive_generators()
        .iter()
        .all(|g| ideal.contains(ring.index_of(&ring.mul(&x, g))))
        && principal_ideal(ring, &x, Side::Right)? == ideal;

    let mut minimal = true;
    for y in ideal.elements(ring).filter(|y| *y != zero) {
        if principal_ideal(ring, &y, Side::Left)? != ideal {
            minimal = false;
        }
    }

    let candidates: Vec<usize> = match mode {
        CandidateMode::Exhaustive => (1..ring.order()).collect(),
        CandidateMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out: Vec<usize> = (0..samples).map(|_| rng.gen_range(1..ring.order())).collect();
            let base = ring.base();
            for c in ideal.elements(ring) {
                for slot in 0..4 {
                    for coord in 0..base.m() {
                        for v in 1..base.characteristic() {
                            let mut e = ring.zero();
                            let mut coeffs = vec![0u32; base.m()];
                            coeffs[coord] = v;
                            e.0[slot] = base.element(&coeffs).expect("reduced");
                            let y = ring.add(&c, &e);
                            if y != zero {
                                out.push(ring.index_of(&y));
                            }
                        }
                    }
                }
            }
            out
        }
    };
    let mut contained = true;
    for &yi in &candidates {
        let y = ring.element_at(yi);
        if !ideal_contains(ring, &y, &x, Side::Left)? || !ideal_contains(ring, &y, &x, Side::Right)? {
            contained = false;
            break;
        }
    }
    Ok(CandidateReport {
        generator: ring.format_element(&x),
        ideal: ideal.elements(ring).map(|e| ring.format_element(&e)).collect(),
        ideal_size: ideal.len(),
        two_sided,
        minimal,
        generators_checked: candidates.len(),
        contained_in_all_checked: contained,
        exhaustive: matches!(mode, CandidateMode::Exhaustive),
    })
}

/// True iff the kernel of the ring's character contains no nonzero left and no nonzero
/// right ideal: every nonzero `x` has some `s·x` and some `x·t` off the kernel.
pub fn is_frobenius_by_character<R: FiniteRing>(ring: &R) -> Result<bool, StructureError> {
    check_order(ring.order(), POSET_LIMIT)?;
    let elems: Vec<R::Element> = ring.elements().collect();
    Ok(elems.iter().filter(|x| !ring.is_zero(x)).all(|x| {
        elems.iter().any(|s| !ring.character(&ring.mul(s, x)).is_one())
            && elems.iter().any(|t| !ring.character(&ring.mul(x, t)).is_one())
    }))
}
