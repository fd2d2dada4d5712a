/// Arithmetic on packed element indices.
///
/// A quaternion over `GR(p^r, m)` has index `Σ d_t · q^{4m-1-t}` where `q = p^r` and
/// the digits `d_t` are its `4m` base-ring coefficients in order `x0, x1, x2, x3`.
/// Addition is therefore digit-wise addition modulo `q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PackedArith {
    q: u32,
    digits: usize,
}

impl PackedArith {
    pub fn new(q: u32, digits: usize) -> Self {
        PackedArith { q, digits }
    }

    pub fn alphabet(&self) -> usize {
        (self.q as usize).pow(self.digits as u32)
    }

    pub fn add(&self, a: u32, b: u32) -> u32 {
        let q = self.q;
        let (mut a, mut b) = (a, b);
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.digits {
            let d = (a % q + b % q) % q;
            out += d * place;
            a /= q;
            b /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    pub fn neg(&self, a: u32) -> u32 {
        let q = self.q;
        let mut a = a;
        let mut out = 0u32;
        let mut place = 1u32;
        for _ in 0..self.digits {
            let d = a % q;
            out += ((q - d) % q) * place;
            a /= q;
            place = place.wrapping_mul(q);
        }
        out
    }

    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisRing;
    use crate::quaternion::QuatRing;
    use crate::ring::FiniteRing;

    #[test]
    fn packed_addition_matches_ring_addition() {
        for (p, r, m) in [(3u32, 1u32, 1usize), (2, 2, 1), (2, 1, 2)] {
            let ring = QuatRing::hamilton(GaloisRing::new(p, r, m, None).unwrap());
            let arith = PackedArith::new(p.pow(r), 4 * m);
            assert_eq!(arith.alphabet(), ring.order());
            for a in 0..ring.order() {
                let x = ring.element_at(a);
                assert_eq!(arith.neg(a as u32) as usize, ring.index_of(&ring.neg(&x)));
                for b in (0..ring.order()).step_by(7) {
                    let y = ring.element_at(b);
                    assert_eq!(arith.add(a as u32, b as u32) as usize, ring.index_of(&ring.add(&x, &y)));
                }
            }
        }
    }
}
