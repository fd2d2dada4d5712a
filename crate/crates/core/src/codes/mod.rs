//! One-sided linear block codes over quaternion rings.
//!
//! Codes are enumerated in full. Each codeword is a vector of element indices
//! (see [`FiniteRing::index_of`]), and a [`Code`] keeps its words sorted so that
//! membership and equality are cheap. Distances are always computed by scanning
//! every codeword.

mod file;
mod image;
mod packed;
mod report;

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use thiserror::Error;

use crate::quaternion::{Quat, QuatRing, QuaternionError};
use crate::rational::Rational;
use crate::ring::{FiniteRing, Side};
use crate::structure::{StructureError, WeightFunction};

pub use file::GeneratorFile;
pub use image::{bounds_check, tau, tau_code, type_alpha, BoundsReport};
pub use packed::PackedArith;
pub use report::{analyze, analyze_code, default_weight, CodeReport, SingletonReport, TauReport};

/// Largest number of message tuples `|H|^k` that [`span`] enumerates.
pub const MESSAGE_LIMIT: u128 = 1 << 24;
/// Largest alphabet whose element indices fit a codeword symbol.
pub const ALPHABET_LIMIT: u128 = 1 << 32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodeError {
    #[error("{what} = {size} exceeds the limit {limit}")]
    TooLarge { what: &'static str, size: u128, limit: u128 },
    #[error("the code has no nonzero codeword")]
    EmptyCode,
    #[error("weight table covers {got} symbols but the alphabet has {expected}")]
    AlphabetMismatch { expected: usize, got: usize },
    #[error("bound violated: {0}")]
    BoundViolated(String),
    #[error("malformed generator matrix: {0}")]
    Shape(String),
    #[error("code size {size} is not a power of the alphabet's prime")]
    NotPrimePowerSize { size: usize },
    #[error(transparent)]
    Quaternion(#[from] QuaternionError),
    #[error(transparent)]
    Structure(#[from] StructureError),
}

/// A `k × n` matrix over a quaternion ring.
#[derive(Debug, Clone)]
pub struct GeneratorMatrix {
    ring: QuatRing,
    rows: Vec<Vec<Quat>>,
}

impl GeneratorMatrix {
    pub fn new(ring: QuatRing, rows: Vec<Vec<Quat>>) -> Result<Self, CodeError> {
        if rows.is_empty() {
            return Err(CodeError::Shape("k must be at least 1".into()));
        }
        let n = rows[0].len();
        if n == 0 {
            return Err(CodeError::Shape("n must be at least 1".into()));
        }
        if let Some(i) = rows.iter().position(|r| r.len() != n) {
            return Err(CodeError::Shape(format!("row {i} has {} entries, expected {n}", rows[i].len())));
        }
        let order = ring.order_u128();
        if order > ALPHABET_LIMIT {
            return Err(CodeError::TooLarge { what: "alphabet size", size: order, limit: ALPHABET_LIMIT });
        }
        for x in rows.iter().flatten() {
            if !ring.contains(x) {
                return Err(QuaternionError::RingMismatch(format!("{x:?}")).into());
            }
        }
        Ok(GeneratorMatrix { ring, rows })
    }

    /// Parses every entry with [`QuatRing::parse`].
    pub fn parse(ring: QuatRing, rows: &[Vec<String>]) -> Result<Self, CodeError> {
        let parsed = rows
            .iter()
            .map(|row| row.iter().map(|t| ring.parse(t)).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        GeneratorMatrix::new(ring, parsed)
    }

    pub fn ring(&self) -> &QuatRing {
        &self.ring
    }

    pub fn k(&self) -> usize {
        self.rows.len()
    }

    pub fn n(&self) -> usize {
        self.rows[0].len()
    }

    pub fn rows(&self) -> &[Vec<Quat>] {
        &self.rows
    }

    pub fn entry(&self, i: usize, j: usize) -> &Quat {
        &self.rows[i][j]
    }

    /// Number of message tuples, `|H|^k`.
    pub fn message_count(&self) -> u128 {
        self.ring.order_u128().saturating_pow(self.k() as u32)
    }
}

/// A set of length-`n` words over an alphabet of element indices, kept sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Code {
    n: usize,
    alphabet: usize,
    side: Option<Side>,
    words: Vec<u32>,
}

impl Code {
    /// Builds a code from concatenated words, sorting and removing duplicates.
    pub fn from_flat(n: usize, alphabet: usize, side: Option<Side>, flat: Vec<u32>) -> Self {
        assert!(n > 0 && flat.len() % n == 0, "flat word buffer must be a multiple of n");
        let count = flat.len() / n;
        let mut order: Vec<usize> = (0..count).collect();
        order.par_sort_unstable_by(|&a, &b| flat[a * n..a * n + n].cmp(&flat[b * n..b * n + n]));
        order.dedup_by(|a, b| flat[*a * n..*a * n + n] == flat[*b * n..*b * n + n]);
        let mut words = Vec::with_capacity(order.len() * n);
        for i in order {
            words.extend_from_slice(&flat[i * n..i * n + n]);
        }
        Code { n, alphabet, side, words }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn side(&self) -> Option<Side> {
        self.side
    }

    pub fn len(&self) -> usize {
        self.words.len() / self.n
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn word(&self, i: usize) -> &[u32] {
        &self.words[i * self.n..(i + 1) * self.n]
    }

    pub fn words(&self) -> std::slice::ChunksExact<'_, u32> {
        self.words.chunks_exact(self.n)
    }

    /// Position of `word` in sorted order.
    pub fn position(&self, word: &[u32]) -> Option<usize> {
        if word.len() != self.n {
            return None;
        }
        let (mut lo, mut hi) = (0, self.len());
        while lo < hi {
            let mid = (lo + hi) / 2;
            match self.word(mid).cmp(word) {
                Ordering::Less => lo = mid + 1,
                Ordering::Greater => hi = mid,
                Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    pub fn contains(&self, word: &[u32]) -> bool {
        self.position(word).is_some()
    }

    /// Same word set, ignoring the recorded side.
    pub fn same_words(&self, other: &Code) -> bool {
        self.n == other.n && self.alphabet == other.alphabet && self.words == other.words
    }
}

/// `{uG : u ∈ H^k}`. On the left `v_j = Σ_i u_i·G[i][j]`, on the right `v_j = Σ_i G[i][j]·u_i`.
pub fn span(g: &GeneratorMatrix, side: Side) -> Result<Code, CodeError> {
    let total = g.message_count();
    if total > MESSAGE_LIMIT {
        return Err(CodeError::TooLarge { what: "message count", size: total, limit: MESSAGE_LIMIT });
    }
    let ring = g.ring();
    let base = ring.base();
    let arith = PackedArith::new(base.characteristic(), 4 * base.m());
    let order = ring.order();
    let (k, n) = (g.k(), g.n());

    // multiples[i][s * n + j] = index of s·G[i][j] (or G[i][j]·s).
    let multiples: Vec<Vec<u32>> = g
        .rows()
        .iter()
        .map(|row| {
            (0..order)
                .into_par_iter()
                .flat_map_iter(|s| {
                    let s = ring.element_at(s);
                    row.iter().map(move |x| ring.index_of(&ring.mul_side(&s, x, side)) as u32)
                })
                .collect()
        })
        .collect();

    let total = total as usize;
    let mut flat = vec![0u32; total * n];
    flat.par_chunks_mut(n).enumerate().for_each(|(msg, word)| {
        let mut rest = msg;
        for i in (0..k).rev() {
            let s = rest % order;
            rest /= order;
            let m = &multiples[i][s * n..s * n + n];
            for (w, &x) in word.iter_mut().zip(m) {
                *w = arith.add(*w, x);
            }
        }
    });
    Ok(Code::from_flat(n, order, Some(side), flat))
}

/// Encodes a quaternion vector as a codeword.
pub fn encode(ring: &QuatRing, v: &[Quat]) -> Vec<u32> {
    v.iter().map(|x| ring.index_of(x) as u32).collect()
}

pub fn decode(ring: &QuatRing, word: &[u32]) -> Vec<Quat> {
    word.iter().map(|&x| ring.element_at(x as usize)).collect()
}

pub fn membership(ring: &QuatRing, code: &Code, word: &[Quat]) -> bool {
    code.contains(&encode(ring, word))
}

pub fn code_equal(a: &Code, b: &Code) -> bool {
    a.same_words(b)
}

/// `|C| = |H|^k`.
pub fn is_free(code: &Code, g: &GeneratorMatrix) -> bool {
    code.len() as u128 == g.message_count()
}

/// Counts of codewords by weight.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightEnumerator<K: Ord> {
    counts: BTreeMap<K, u64>,
}

impl<K: Ord + Copy + Zero> WeightEnumerator<K> {
    pub fn counts(&self) -> &BTreeMap<K, u64> {
        &self.counts
    }

    pub fn count(&self, weight: K) -> u64 {
        self.counts.get(&weight).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum()
    }

    /// Smallest weight of a nonzero codeword, assuming only the zero word has weight zero.
    pub fn min_nonzero(&self) -> Option<K> {
        self.counts.keys().copied().find(|w| !w.is_zero())
    }

    pub fn to_pairs(&self) -> Vec<(K, u64)> {
        self.counts.iter().map(|(w, c)| (*w, *c)).collect()
    }
}

fn hamming_weight(word: &[u32]) -> usize {
    word.iter().filter(|&&x| x != 0).count()
}

pub fn hamming_enumerator(code: &Code) -> WeightEnumerator<usize> {
    let mut counts = BTreeMap::new();
    for w in code.words() {
        *counts.entry(hamming_weight(w)).or_insert(0) += 1;
    }
    WeightEnumerator { counts }
}

/// Minimum Hamming weight over nonzero codewords.
pub fn min_hamming(code: &Code) -> Result<usize, CodeError> {
    code.words().map(hamming_weight).filter(|&w| w > 0).min().ok_or(CodeError::EmptyCode)
}

/// A weight table rescaled to integers: `weight(x) = nums[x] / denom`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntegerWeights {
    pub nums: Vec<i64>,
    pub denom: i64,
}

impl IntegerWeights {
    pub fn new(w: &WeightFunction) -> Self {
        let denom = w.table().iter().fold(1i64, |acc, q| num_integer::lcm(acc, *q.denom()));
        let nums = w.table().iter().map(|q| q.numer() * (denom / q.denom())).collect();
        IntegerWeights { nums, denom }
    }

    pub fn word_weight(&self, word: &[u32]) -> i64 {
        word.iter().map(|&x| self.nums[x as usize]).sum()
    }

    pub fn to_rational(&self, total: i64) -> Rational {
        Rational::new(total, self.denom)
    }
}

fn check_alphabet(code: &Code, w: &WeightFunction) -> Result<(), CodeError> {
    if w.len() != code.alphabet() {
        return Err(CodeError::AlphabetMismatch { expected: code.alphabet(), got: w.len() });
    }
    Ok(())
}

pub fn hom_enumerator(code: &Code, w: &WeightFunction) -> Result<WeightEnumerator<Rational>, CodeError> {
    check_alphabet(code, w)?;
    let iw = IntegerWeights::new(w);
    let mut raw: BTreeMap<i64, u64> = BTreeMap::new();
    for word in code.words() {
        *raw.entry(iw.word_weight(word)).or_insert(0) += 1;
    }
    Ok(WeightEnumerator { counts: raw.into_iter().map(|(t, c)| (iw.to_rational(t), c)).collect() })
}

/// Minimum of the coordinate-wise weight sum over nonzero codewords.
pub fn min_hom_distance(code: &Code, w: &WeightFunction) -> Result<Rational, CodeError> {
    check_alphabet(code, w)?;
    let iw = IntegerWeights::new(w);
    code.words()
        .filter(|word| word.iter().any(|&x| x != 0))
        .map(|word| iw.word_weight(word))
        .min()
        .map(|t| iw.to_rational(t))
        .ok_or(CodeError::EmptyCode)
}

/// `min d(x, y)` over distinct pairs, with `d(x, y) = weight(x - y)`. Quadratic; for cross-checks.
pub fn min_distance_pairwise<R: FiniteRing>(
    ring: &R,
    code: &Code,
    weight: impl Fn(usize) -> Rational + Sync,
) -> Result<Rational, CodeError> {
    let words: Vec<Vec<R::Element>> =
        code.words().map(|w| w.iter().map(|&x| ring.element_at(x as usize)).collect()).collect();
    (0..words.len())
        .into_par_iter()
        .filter_map(|a| {
            (a + 1..words.len())
                .map(|b| {
                    words[a]
                        .iter()
                        .zip(&words[b])
                        .map(|(x, y)| weight(ring.index_of(&ring.sub(x, y))))
                        .fold(Rational::zero(), |acc, v| acc + v)
                })
                .min()
        })
        .min()
        .ok_or(CodeError::EmptyCode)
}

/// `n - log_{|A|} |C| + 1` and whether the minimum Hamming distance reaches it.
pub fn singleton_check(code: &Code) -> Result<SingletonReport, CodeError> {
    let p = smallest_prime_factor(code.alphabet());
    let log_p = |mut v: usize| -> Option<i64> {
        let mut e = 0;
        while v > 1 {
            if v % p != 0 {
                return None;
            }
            v /= p;
            e += 1;
        }
        Some(e)
    };
    let alphabet_exp = log_p(code.alphabet()).ok_or(CodeError::NotPrimePowerSize { size: code.alphabet() })?;
    let size_exp = log_p(code.len()).ok_or(CodeError::NotPrimePowerSize { size: code.len() })?;
    let bound = Rational::from_integer(code.n() as i64 + 1) - Rational::new(size_exp, alphabet_exp);
    let mds = min_hamming(code).map(|d| Rational::from_integer(d as i64) == bound).unwrap_or(false);
    Ok(SingletonReport { bound, mds })
}

fn smallest_prime_factor(n: usize) -> usize {
    (2..=n).find(|d| n % d == 0).unwrap_or(n)
}

/// Every `ℓ ∈ [1, n]` such that shifting each codeword right by `ℓ`,
/// `(c_1..c_n) ↦ (c_{n-ℓ+1}..c_n, c_1..c_{n-ℓ})`, stays in the code.
pub fn quasi_cyclic_orders(code: &Code) -> Vec<usize> {
    let n = code.n();
    (1..=n)
        .filter(|&l| {
            code.words().collect::<Vec<_>>().par_iter().all(|w| {
                let shifted: Vec<u32> = (0..n).map(|j| w[(j + n - l) % n]).collect();
                code.contains(&shifted)
            })
        })
        .collect()
}

/// Exact check that a code over `ring` is a one-sided submodule: closed under addition
/// and under multiplication by every ring element on `side`.
pub fn is_linear<R: FiniteRing>(ring: &R, code: &Code, side: Side) -> bool {
    if code.alphabet() != ring.order() {
        return false;
    }
    additively_closed(ring, code) && scalar_closed(ring, code, side)
}

/// Grows the additive span of the codewords one generator at a time and
/// fails as soon as a sum leaves the code.
fn additively_closed<R: FiniteRing>(ring: &R, code: &Code) -> bool {
    let n = code.n();
    let Some(zero_pos) = code.position(&vec![0; n]) else {
        return false;
    };
    let add = |a: &[u32], b: &[u32]| -> Vec<u32> {
        a.iter()
            .zip(b)
            .map(|(&x, &y)| {
                ring.index_of(&ring.add(&ring.element_at(x as usize), &ring.element_at(y as usize))) as u32
            })
            .collect()
    };
    let mut in_span = vec![false; code.len()];
    in_span[zero_pos] = true;
    let mut members = vec![zero_pos];
    for idx in 0..code.len() {
        if in_span[idx] {
            continue;
        }
        let c = code.word(idx).to_vec();
        let before = members.clone();
        let mut multiple = c.clone();
        // Cosets S + t·c until t·c falls back into S.
        loop {
            let Some(mp) = code.position(&multiple) else {
                return false;
            };
            if in_span[mp] {
                break;
            }
            for &s in &before {
                let Some(pos) = code.position(&add(code.word(s), &multiple)) else {
                    return false;
                };
                if !in_span[pos] {
                    in_span[pos] = true;
                    members.push(pos);
                }
            }
            multiple = add(&multiple, &c);
        }
    }
    true
}

/// Multiplication by additive generators suffices once the code is additively closed.
fn scalar_closed<R: FiniteRing>(ring: &R, code: &Code, side: Side) -> bool {
    let gens = ring.additive_generators();
    code.words().collect::<Vec<_>>().par_iter().all(|w| {
        gens.iter().all(|s| {
            let scaled: Vec<u32> =
                w.iter().map(|&x| ring.index_of(&ring.mul_side(s, &ring.element_at(x as usize), side)) as u32).collect();
            code.contains(&scaled)
        })
    })
}

/// `|C|` divides `|H|^k`.
pub fn size_divides_messages(code: &Code, g: &GeneratorMatrix) -> bool {
    g.message_count() % code.len() as u128 == 0
}
