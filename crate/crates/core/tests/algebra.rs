use hquat::{FiniteRing, GaloisRing, QuatRing};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn gr(p: u32, r: u32, m: usize) -> GaloisRing {
    GaloisRing::new(p, r, m, None).unwrap()
}

fn rings() -> Vec<QuatRing> {
    let f5 = gr(5, 1, 1);
    vec![
        QuatRing::hamilton(gr(2, 2, 2)),
        QuatRing::hamilton(gr(2, 3, 1)),
        QuatRing::hamilton(gr(3, 2, 1)),
        QuatRing::hamilton(gr(2, 2, 3)),
        QuatRing::new(f5.clone(), f5.scalar(2), f5.scalar(3)).unwrap(),
        QuatRing::new(gr(3, 2, 1), gr(3, 2, 1).scalar(2), gr(3, 2, 1).scalar(4)).unwrap(),
    ]
}

#[test]
fn associativity_on_random_triples() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut checked = 0;
    for ring in rings() {
        for _ in 0..20_000 {
            let [x, y, z] = [0; 3].map(|_| ring.element_at(rng.gen_range(0..ring.order())));
            assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)), "{x:?} {y:?} {z:?}");
            checked += 1;
        }
    }
    assert!(checked >= 100_000);
}

#[test]
fn distributivity_and_norm_on_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for ring in rings() {
        let base = ring.base();
        for _ in 0..5_000 {
            let [x, y, z] = [0; 3].map(|_| ring.element_at(rng.gen_range(0..ring.order())));
            assert_eq!(ring.mul(&x, &ring.add(&y, &z)), ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z)));
            assert_eq!(ring.mul(&ring.add(&x, &y), &z), ring.add(&ring.mul(&x, &z), &ring.mul(&y, &z)));
            assert_eq!(ring.norm(&ring.mul(&x, &y)), base.mul(&ring.norm(&x), &ring.norm(&y)));
            assert_eq!(ring.mul(&x, &ring.conj(&x)), ring.scalar(ring.norm(&x)));
        }
    }
}

#[test]
fn unit_count_matches_inverse_search_on_h_z9() {
    let ring = QuatRing::hamilton(gr(3, 2, 1));
    let elems: Vec<_> = ring.elements().collect();
    let one = ring.one();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..200 {
        let x = elems[rng.gen_range(0..elems.len())];
        let has_inverse = elems.iter().any(|y| ring.mul(&x, y) == one);
        assert_eq!(ring.is_unit(&x), has_inverse, "{x:?}");
    }
}

proptest! {
    #[test]
    fn galois_ring_axioms(p in prop::sample::select(vec![2u32, 3, 5]), r in 1u32..3, m in 1usize..3,
                          seed in any::<u64>()) {
        let ring = gr(p, r, m);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y, z] = [0; 3].map(|_| ring.element_at(rng.gen_range(0..ring.order())));
        prop_assert_eq!(ring.mul(&ring.mul(&x, &y), &z), ring.mul(&x, &ring.mul(&y, &z)));
        prop_assert_eq!(ring.mul(&x, &y), ring.mul(&y, &x));
        prop_assert_eq!(ring.mul(&x, &ring.add(&y, &z)), ring.add(&ring.mul(&x, &y), &ring.mul(&x, &z)));
        prop_assert_eq!(ring.add(&x, &ring.neg(&x)), ring.zero());
        prop_assert_eq!(ring.index_of(&x), ring.index_of(&ring.element_at(ring.index_of(&x))));
        let cx = ring.character(&x).combine(&ring.character(&y));
        prop_assert_eq!(cx, ring.character(&ring.add(&x, &y)));
    }

    #[test]
    fn quaternion_character_is_additive(seed in any::<u64>()) {
        let ring = QuatRing::hamilton(gr(2, 2, 2));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let [x, y] = [0; 2].map(|_| ring.element_at(rng.gen_range(0..ring.order())));
        prop_assert_eq!(ring.character(&x).combine(&ring.character(&y)), ring.character(&ring.add(&x, &y)));
    }
}
