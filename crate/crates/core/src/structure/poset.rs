use std::collections::HashMap;

use super::{check_order, StructureError, IDEAL_LIMIT, POSET_LIMIT};
use crate::ring::{FiniteRing, Side};

/// A set of ring elements, as sorted element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet(Vec<usize>);

impl ElementSet {
    pub fn from_indices(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        ElementSet(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.binary_search(&index).is_ok()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.len() <= other.len() && self.0.iter().all(|i| other.contains(*i))
    }

    pub fn elements<'a, R: FiniteRing>(&'a self, ring: &'a R) -> impl Iterator<Item = R::Element> + 'a {
        self.0.iter().map(move |&i| ring.element_at(i))
    }
}

/// Closure of `seeds` under addition. In a finite ring this is the additive subgroup they generate.
pub fn additive_span<R: FiniteRing>(ring: &R, seeds: &[R::Element]) -> ElementSet {
    span_until(ring, seeds, None).0
}

/// Breadth-first additive closure; stops early once `target` (an index) is reached.
fn span_until<R: FiniteRing>(ring: &R, seeds: &[R::Element], target: Option<usize>) -> (ElementSet, bool) {
    let zero = ring.zero();
    let mut seen = vec![false; ring.order()];
    let mut members = vec![ring.index_of(&zero)];
    seen[members[0]] = true;
    let mut frontier = vec![zero];
    let gens: Vec<R::Element> = seeds.iter().copied().filter(|s| !ring.is_zero(s)).collect();
    if target == Some(members[0]) {
        return (ElementSet::from_indices(members), true);
    }
    while let Some(x) = frontier.pop() {
        for g in &gens {
            let y = ring.add(&x, g);
            let iy = ring.index_of(&y);
            if !seen[iy] {
                seen[iy] = true;
                members.push(iy);
                if target == Some(iy) {
                    return (ElementSet::from_indices(members), true);
                }
                frontier.push(y);
            }
        }
    }
    (ElementSet::from_indices(members), false)
}

fn ideal_seeds<R: FiniteRing>(ring: &R, x: &R::Element, side: Side) -> Vec<R::Element> {
    ring.additive_generators().iter().map(|g| ring.mul_side(g, x, side)).collect()
}

/// `Rx` (left) or `xR` (right).
///
/// Computed as the additive span of `g·x` over additive generators `g` of the ring,
/// which equals `{r·x : r ∈ R}`.
pub fn principal_ideal<R: FiniteRing>(ring: &R, x: &R::Element, side: Side) -> Result<ElementSet, StructureError> {
    check_order(ring.order(), IDEAL_LIMIT)?;
    Ok(additive_span(ring, &ideal_seeds(ring, x, side)))
}

/// Whether `target` lies in the principal one-sided ideal generated by `y`.
pub fn ideal_contains<R: FiniteRing>(
    ring: &R,
    y: &R::Element,
    target: &R::Element,
    side: Side,
) -> Result<bool, StructureError> {
    check_order(ring.order(), IDEAL_LIMIT)?;
    if ring.is_unit(y) {
        return Ok(true);
    }
    Ok(span_until(ring, &ideal_seeds(ring, y, side), Some(ring.index_of(target))).1)
}

/// A principal one-sided ideal with the first element (in enumeration order) generating it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal {
    pub generator: usize,
    pub members: ElementSet,
}

/// The poset of principal left (or right) ideals under inclusion.
///
/// Ideals are sorted by size, then by generator index, so index 0 is the zero
/// ideal and the last index is the whole ring.
#[derive(Debug, Clone)]
pub struct IdealPoset {
    side: Side,
    ideals: Vec<Ideal>,
    /// `leq[j][i]` iff ideal `j` ⊆ ideal `i`.
    leq: Vec<Vec<bool>>,
    /// For every ring element, the position of the ideal it generates.
    generated: Vec<usize>,
}

impl IdealPoset {
    pub fn side(&self) -> Side {
        self.side
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[Ideal] {
        &self.ideals
    }

    pub fn ideal(&self, i: usize) -> &Ideal {
        &self.ideals[i]
    }

    pub fn leq(&self, j: usize, i: usize) -> bool {
        self.leq[j][i]
    }

    pub fn zero_ideal(&self) -> usize {
        0
    }

    pub fn full_ideal(&self) -> usize {
        self.ideals.len() - 1
    }

    /// Position of the ideal generated by the element with this index.
    pub fn ideal_of(&self, element: usize) -> usize {
        self.generated[element]
    }

    pub fn is_minimal(&self, i: usize) -> bool {
        i != 0 && (1..self.len()).all(|j| j == i || !self.leq[j][i])
    }

    /// Maximal among the proper principal ideals.
    pub fn is_maximal(&self, i: usize) -> bool {
        let full = self.full_ideal();
        i != full && (0..full).all(|j| j == i || !self.leq[i][j])
    }

    pub fn minimal_ideals(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.is_minimal(i)).collect()
    }

    /// Ideals other than `{0}` and the whole ring.
    pub fn proper_nonzero(&self) -> Vec<usize> {
        (1..self.full_ideal()).collect()
    }
}

pub fn ideal_poset<R: FiniteRing>(ring: &R, side: Side) -> Result<IdealPoset, StructureError> {
    let order = ring.order();
    check_order(order, POSET_LIMIT)?;
    let mut found: Vec<Ideal> = Vec::new();
    let mut by_members: HashMap<ElementSet, usize> = HashMap::new();
    let mut generated = vec![0usize; order];
    for idx in 0..order {
        let x = ring.element_at(idx);
        let members = principal_ideal(ring, &x, side)?;
        let pos = *by_members.entry(members.clone()).or_insert_with(|| {
            found.push(Ideal { generator: idx, members });
            found.len() - 1
        });
        generated[idx] = pos;
    }
    let mut perm: Vec<usize> = (0..found.len()).collect();
    perm.sort_by_key(|&i| (found[i].members.len(), found[i].generator));
    let mut rank = vec![0usize; found.len()];
    for (new, &old) in perm.iter().enumerate() {
        rank[old] = new;
    }
    let ideals: Vec<Ideal> = perm.iter().map(|&i| found[i].clone()).collect();
    let generated = generated.into_iter().map(|g| rank[g]).collect();
    let flags: Vec<Vec<bool>> = ideals
        .iter()
        .map(|ideal| {
            let mut f = vec![false; order];
            for &i in ideal.members.indices() {
                f[i] = true;
            }
            f
        })
        .collect();
    let leq = ideals
        .iter()
        .map(|j| {
            (0..ideals.len())
                .map(|i| j.members.len() <= ideals[i].members.len() && j.members.indices().iter().all(|&e| flags[i][e]))
                .collect()
        })
        .collect();
    Ok(IdealPoset { side, ideals, leq, generated })
}

/// Möbius function of an [`IdealPoset`], indexed by poset positions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusTable {
    values: Vec<Vec<i64>>,
}

impl MobiusTable {
    /// `μ(J, I)`; zero unless `J ⊆ I`.
    pub fn get(&self, j: usize, i: usize) -> i64 {
        self.values[j][i]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Checks the three defining properties against the poset:
    /// `μ(I,I) = 1`, `μ(J,I) = 0` when `J ⊄ I`, and
    /// `Σ_{J ≤ Z ≤ I} μ(Z, I) = 0` whenever `J < I`.
    pub fn satisfies_defining_properties(&self, poset: &IdealPoset) -> bool {
        let n = poset.len();
        (0..n).all(|i| self.get(i, i) == 1)
            && (0..n).all(|j| (0..n).all(|i| poset.leq(j, i) || self.get(j, i) == 0))
            && (0..n).all(|j| {
                (0..n).filter(|&i| i != j && poset.leq(j, i)).all(|i| {
                    (0..n).filter(|&z| poset.leq(j, z) && poset.leq(z, i)).map(|z| self.get(z, i)).sum::<i64>() == 0
                })
            })
    }
}

/// Interval recursion `μ(J,J) = 1`, `μ(J,I) = -Σ_{J ≤ Z < I} μ(J,Z)`.
pub fn mobius(poset: &IdealPoset) -> MobiusTable {
    let n = poset.len();
    let mut values = vec![vec![0i64; n]; n];
    // Positions are sorted by size, so every Z strictly below I precedes I.
    for j in 0..n {
        values[j][j] = 1;
        for i in j + 1..n {
            if !poset.leq(j, i) {
                continue;
            }
            let s: i64 = (j..i).filter(|&z| poset.leq(j, z) && poset.leq(z, i)).map(|z| values[j][z]).sum();
            values[j][i] = -s;
        }
    }
    MobiusTable { values }
}

/// The minimal ideal, if there is exactly one; `None` when there are several.
pub fn unique_minimal_ideal<R: FiniteRing>(ring: &R, side: Side) -> Result<Option<Ideal>, StructureError> {
    let poset = ideal_poset(ring, side)?;
    let minimal = poset.minimal_ideals();
    Ok(match minimal.as_slice() {
        [only] => Some(poset.ideal(*only).clone()),
        _ => None,
    })
}

/// Sum of all minimal one-sided ideals.
pub fn socle<R: FiniteRing>(ring: &R, side: Side) -> Result<ElementSet, StructureError> {
    let poset = ideal_poset(ring, side)?;
    let seeds: Vec<R::Element> = poset
        .minimal_ideals()
        .into_iter()
        .flat_map(|i| poset.ideal(i).members.indices().to_vec())
        .map(|e| ring.element_at(e))
        .collect();
    Ok(additive_span(ring, &seeds))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::GaloisRing;
    use crate::quaternion::QuatRing;

    fn gr(p: u32, r: u32, m: usize) -> GaloisRing {
        GaloisRing::new(p, r, m, None).unwrap()
    }

    fn h(p: u32, r: u32, m: usize) -> QuatRing {
        QuatRing::hamilton(gr(p, r, m))
    }

    /// `{r·x : r ∈ R}` by direct enumeration.
    fn naive_ideal<R: FiniteRing>(ring: &R, x: &R::Element, side: Side) -> ElementSet {
        ElementSet::from_indices(ring.elements().map(|r| ring.index_of(&ring.mul_side(&r, x, side))).collect())
    }

    #[test]
    fn span_matches_naive_enumeration() {
        let rings = [h(2, 1, 1), h(3, 1, 1), h(2, 2, 1)];
        for ring in &rings {
            for x in ring.elements() {
                for side in [Side::Left, Side::Right] {
                    assert_eq!(principal_ideal(ring, &x, side).unwrap(), naive_ideal(ring, &x, side));
                }
            }
        }
        let g = gr(2, 2, 2);
        for x in g.elements() {
            assert_eq!(principal_ideal(&g, &x, Side::Left).unwrap(), naive_ideal(&g, &x, Side::Left));
        }
    }

    #[test]
    fn principal_ideal_examples() {
        let h2 = h(2, 1, 1);
        assert_eq!(principal_ideal(&h2, &h2.zero(), Side::Left).unwrap().len(), 1);
        let x = h2.parse("1+i+j+k").unwrap();
        let ideal = principal_ideal(&h2, &x, Side::Left).unwrap();
        assert_eq!(ideal.indices(), &[0, h2.index_of(&x)]);
        let h3 = h(3, 1, 1);
        for x in h3.elements().filter(|x| *x != h3.zero() && !h3.is_unit(x)) {
            assert_eq!(principal_ideal(&h3, &x, Side::Left).unwrap().len(), 9);
            assert_eq!(principal_ideal(&h3, &x, Side::Right).unwrap().len(), 9);
        }
    }

    #[test]
    fn containment_with_early_exit() {
        let h4 = h(2, 2, 1);
        let target = h4.parse("2+2i+2j+2k").unwrap();
        for y in h4.elements().filter(|y| *y != h4.zero()) {
            assert_eq!(
                ideal_contains(&h4, &y, &target, Side::Left).unwrap(),
                naive_ideal(&h4, &y, Side::Left).contains(h4.index_of(&target))
            );
        }
    }

    #[test]
    fn poset_examples() {
        let f3 = gr(3, 1, 1);
        let p = ideal_poset(&f3, Side::Left).unwrap();
        assert_eq!(p.len(), 2);
        assert!(p.leq(0, 1));

        let z4 = gr(2, 2, 1);
        let p = ideal_poset(&z4, Side::Left).unwrap();
        let sizes: Vec<usize> = p.ideals().iter().map(|i| i.members.len()).collect();
        assert_eq!(sizes, [1, 2, 4]);
        assert!(p.leq(0, 1) && p.leq(1, 2) && !p.leq(2, 1));

        let h3 = h(3, 1, 1);
        let p = ideal_poset(&h3, Side::Left).unwrap();
        assert_eq!(p.len(), 6);
        let proper = p.proper_nonzero();
        assert_eq!(proper.len(), 4);
        for i in proper {
            assert_eq!(p.ideal(i).members.len(), 9);
            assert!(p.is_minimal(i) && p.is_maximal(i));
        }
    }

    #[test]
    fn poset_generators_are_first_in_enumeration_order() {
        let h4 = h(2, 2, 1);
        let p = ideal_poset(&h4, Side::Left).unwrap();
        for (pos, ideal) in p.ideals().iter().enumerate() {
            let first = (0..h4.order()).find(|&e| p.ideal_of(e) == pos).unwrap();
            assert_eq!(ideal.generator, first);
            assert_eq!(p.ideal_of(ideal.generator), pos);
        }
        // Every Rx appears exactly once.
        let mut sets: Vec<&ElementSet> = p.ideals().iter().map(|i| &i.members).collect();
        sets.sort();
        sets.dedup();
        assert_eq!(sets.len(), p.len());
    }

    #[test]
    fn mobius_examples() {
        let f3 = gr(3, 1, 1);
        let p = ideal_poset(&f3, Side::Left).unwrap();
        let mu = mobius(&p);
        assert_eq!(mu.get(0, 1), -1);
        assert_eq!(mu.get(1, 1), 1);

        let z4 = gr(2, 2, 1);
        let p = ideal_poset(&z4, Side::Left).unwrap();
        let mu = mobius(&p);
        assert_eq!(mu.get(0, 1), -1);
        assert_eq!(mu.get(0, 2), 0);

        let h3 = h(3, 1, 1);
        let p = ideal_poset(&h3, Side::Left).unwrap();
        let mu = mobius(&p);
        for i in p.proper_nonzero() {
            assert_eq!(mu.get(0, i), -1);
        }
        assert_eq!(mu.get(0, p.full_ideal()), 3);
    }

    #[test]
    fn mobius_properties_hold() {
        for side in [Side::Left, Side::Right] {
            for p in [
                ideal_poset(&h(2, 1, 1), side).unwrap(),
                ideal_poset(&h(3, 1, 1), side).unwrap(),
                ideal_poset(&h(2, 2, 1), side).unwrap(),
                ideal_poset(&gr(2, 3, 1), side).unwrap(),
            ] {
                assert!(mobius(&p).satisfies_defining_properties(&p));
            }
        }
    }

    #[test]
    fn partial_order_axioms() {
        let p = ideal_poset(&h(2, 2, 1), Side::Left).unwrap();
        let n = p.len();
        for a in 0..n {
            assert!(p.leq(a, a));
            assert!(p.leq(0, a) && p.leq(a, p.full_ideal()));
            for b in 0..n {
                if a != b {
                    assert!(!(p.leq(a, b) && p.leq(b, a)));
                }
                for c in 0..n {
                    if p.leq(a, b) && p.leq(b, c) {
                        assert!(p.leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn unique_minimal_examples() {
        let h2 = h(2, 1, 1);
        let m = unique_minimal_ideal(&h2, Side::Left).unwrap().unwrap();
        assert_eq!(m.members.len(), 2);
        assert_eq!(h2.element_at(m.generator), h2.parse("1+i+j+k").unwrap());

        let h4 = h(2, 2, 1);
        let m = unique_minimal_ideal(&h4, Side::Left).unwrap().unwrap();
        let expected = h4.parse("2+2i+2j+2k").unwrap();
        assert_eq!(m.members.indices(), &[0, h4.index_of(&expected)]);

        assert!(unique_minimal_ideal(&h(3, 1, 1), Side::Left).unwrap().is_none());
    }

    #[test]
    fn socle_examples() {
        let h2 = h(2, 1, 1);
        assert_eq!(socle(&h2, Side::Left).unwrap().len(), 2);
        let h3 = h(3, 1, 1);
        assert_eq!(socle(&h3, Side::Left).unwrap().len(), 81);
        assert_eq!(socle(&h3, Side::Right).unwrap().len(), 81);
        let z4 = gr(2, 2, 1);
        assert_eq!(socle(&z4, Side::Left).unwrap().indices(), &[0, 2]);
    }

    #[test]
    fn too_large() {
        let big = h(2, 2, 2);
        assert!(matches!(ideal_poset(&big, Side::Left), Err(StructureError::TooLarge { .. })));
    }

    #[test]
    fn odd_field_quaternions_have_q_plus_one_ideals() {
        for q in [3u32, 5] {
            let ring = h(q, 1, 1);
            for side in [Side::Left, Side::Right] {
                let p = ideal_poset(&ring, side).unwrap();
                let proper = p.proper_nonzero();
                assert_eq!(proper.len(), q as usize + 1);
                for i in proper {
                    assert_eq!(p.ideal(i).members.len(), (q * q) as usize);
                    assert!(p.is_minimal(i) && p.is_maximal(i));
                }
            }
        }
    }
}
