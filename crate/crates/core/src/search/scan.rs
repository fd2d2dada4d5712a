use std::sync::atomic::{AtomicI64, Ordering};

use rayon::prelude::*;

use super::template::{Entry, Template};
use crate::codes::PackedArith;
use crate::quaternion::QuatRing;
use crate::ring::{FiniteRing, Side};

/// Dense tables are built up to this ring order.
const DENSE_LIMIT: usize = 1024;
/// Largest number of assignments handed to one worker at a time.
const CHUNK_LIMIT: u64 = 4096;

#[derive(Debug, Clone, Copy)]
enum Slot {
    Var(usize),
    Const(u32),
}

/// Evaluates the objective distance of template instances on packed element indices.
pub(super) struct Kernel<'a> {
    ring: &'a QuatRing,
    side: Side,
    order: usize,
    k: usize,
    n: usize,
    slots: Vec<Slot>,
    domain: Vec<u32>,
    vars: usize,
    weights: Vec<i64>,
    require_free: bool,
    mul: Option<Vec<u32>>,
    add: Option<Vec<u32>>,
    arith: PackedArith,
}

impl<'a> Kernel<'a> {
    pub(super) fn new(
        ring: &'a QuatRing,
        template: &Template,
        side: Side,
        domain: Vec<u32>,
        weights: Vec<i64>,
        require_free: bool,
    ) -> Self {
        let order = ring.order();
        let base = ring.base();
        let arith = PackedArith::new(base.characteristic(), 4 * base.m());
        let slots = template
            .slots()
            .iter()
            .flatten()
            .map(|e| match e {
                Entry::Var(v) => Slot::Var(*v),
                Entry::Const(c) => Slot::Const(ring.index_of(c) as u32),
            })
            .collect();
        let (mul, add) = if order <= DENSE_LIMIT {
            let elems: Vec<_> = ring.elements().collect();
            let mul = (0..order * order)
                .into_par_iter()
                .map(|t| ring.index_of(&ring.mul_side(&elems[t / order], &elems[t % order], side)) as u32)
                .collect();
            let add = (0..order * order).map(|t| arith.add((t / order) as u32, (t % order) as u32)).collect();
            (Some(mul), Some(add))
        } else {
            (None, None)
        };
        Kernel {
            ring,
            side,
            order,
            k: template.k(),
            n: template.n(),
            slots,
            domain,
            vars: template.vars().len(),
            weights,
            require_free,
            mul,
            add,
            arith,
        }
    }

    pub(super) fn assignment_count(&self) -> u128 {
        (self.domain.len() as u128).pow(self.vars as u32)
    }

    pub(super) fn message_count(&self) -> u128 {
        (self.order as u128).pow(self.k as u32)
    }

    /// Element indices of assignment `index`; the first variable is the most significant digit.
    pub(super) fn values(&self, index: u64) -> Vec<u32> {
        let d = self.domain.len() as u64;
        let mut out = vec![0u32; self.vars];
        let mut rest = index;
        for v in (0..self.vars).rev() {
            out[v] = self.domain[(rest % d) as usize];
            rest /= d;
        }
        out
    }

    fn mul(&self, s: u32, e: u32) -> u32 {
        match &self.mul {
            Some(t) => t[s as usize * self.order + e as usize],
            None => {
                let r = self.ring;
                r.index_of(&r.mul_side(&r.element_at(s as usize), &r.element_at(e as usize), self.side)) as u32
            }
        }
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        match &self.add {
            Some(t) => t[a as usize * self.order + b as usize],
            None => self.arith.add(a, b),
        }
    }

    /// Weight of a word and whether it is nonzero.
    fn weigh(&self, word: &[u32]) -> (i64, bool) {
        let mut w = 0;
        let mut nonzero = false;
        for &x in word {
            w += self.weights[x as usize];
            nonzero |= x != 0;
        }
        (w, nonzero)
    }

    /// Minimum objective weight over nonzero codewords of assignment `values`,
    /// or `None` as soon as a nonzero codeword lighter than `threshold` appears.
    /// With `require_free`, a nonzero message mapping to the zero word also gives `None`.
    /// A code with no nonzero word has distance 0.
    pub(super) fn evaluate(&self, values: &[u32], threshold: i64) -> Option<i64> {
        let (k, n, order) = (self.k, self.n, self.order);
        let entries: Vec<u32> = self
            .slots
            .iter()
            .map(|s| match s {
                Slot::Var(v) => values[*v],
                Slot::Const(c) => *c,
            })
            .collect();
        // rows[i][s * n + j] = s·G[i][j] on the configured side.
        let rows: Vec<Vec<u32>> = (0..k)
            .map(|i| {
                let mut r = vec![0u32; order * n];
                for s in 0..order {
                    for j in 0..n {
                        r[s * n + j] = self.mul(s as u32, entries[i * n + j]);
                    }
                }
                r
            })
            .collect();

        let mut best = i64::MAX;
        // Single-row words first: they are cheap and usually light.
        for row in &rows {
            for s in 1..order {
                let (w, nonzero) = self.weigh(&row[s * n..s * n + n]);
                if nonzero {
                    if w < threshold {
                        return None;
                    }
                    best = best.min(w);
                } else if self.require_free {
                    return None;
                }
            }
        }
        if k > 1 {
            let mut partial = vec![vec![0u32; n]; k + 1];
            if !self.descend(&rows, 0, false, &mut partial, threshold, &mut best) {
                return None;
            }
        }
        Some(if best == i64::MAX { 0 } else { best })
    }

    fn descend(
        &self,
        rows: &[Vec<u32>],
        level: usize,
        message_nonzero: bool,
        partial: &mut [Vec<u32>],
        threshold: i64,
        best: &mut i64,
    ) -> bool {
        let n = self.n;
        for s in 0..self.order {
            let message_nonzero = message_nonzero || s != 0;
            let (head, tail) = partial.split_at_mut(level + 1);
            let prev = &head[level];
            let next = &mut tail[0];
            let m = &rows[level][s * n..s * n + n];
            for j in 0..n {
                next[j] = self.add(prev[j], m[j]);
            }
            if level + 1 == self.k {
                let (w, nonzero) = self.weigh(next);
                if nonzero {
                    if w < threshold {
                        return false;
                    }
                    *best = (*best).min(w);
                } else if message_nonzero && self.require_free {
                    return false;
                }
            } else if !self.descend(rows, level + 1, message_nonzero, partial, threshold, best) {
                return false;
            }
        }
        true
    }

    /// Scans assignments `start..end` on the current rayon pool and returns the best
    /// distance with every assignment attaining it, in increasing index order.
    pub(super) fn scan(&self, start: u64, end: u64, floor: Option<i64>) -> (Option<i64>, Vec<u64>) {
        if start >= end {
            return (None, Vec::new());
        }
        let per_first = (self.assignment_count() / self.domain.len().max(1) as u128).max(1);
        let chunk = (per_first.min(CHUNK_LIMIT as u128)) as u64;
        let chunks: Vec<(u64, u64)> =
            (start..end).step_by(chunk as usize).map(|a| (a, (a + chunk).min(end))).collect();
        let shared = AtomicI64::new(floor.unwrap_or(i64::MIN));
        let results: Vec<(Option<i64>, Vec<u64>)> = chunks
            .par_iter()
            .map(|&(a, b)| {
                let mut local_best: Option<i64> = None;
                let mut hits = Vec::new();
                for idx in a..b {
                    let threshold = shared.load(Ordering::Relaxed).max(local_best.unwrap_or(i64::MIN));
                    if let Some(d) = self.evaluate(&self.values(idx), threshold) {
                        match local_best {
                            Some(b) if d < b => continue,
                            Some(b) if d == b => hits.push(idx),
                            _ => {
                                local_best = Some(d);
                                hits.clear();
                                hits.push(idx);
                                shared.fetch_max(d, Ordering::Relaxed);
                            }
                        }
                    }
                }
                (local_best, hits)
            })
            .collect();
        merge(results)
    }
}

/// Keeps the best distance and the union of its maximizers, sorted.
pub(super) fn merge(parts: impl IntoIterator<Item = (Option<i64>, Vec<u64>)>) -> (Option<i64>, Vec<u64>) {
    let parts: Vec<_> = parts.into_iter().collect();
    let best = parts.iter().filter_map(|p| p.0).max();
    let mut hits: Vec<u64> =
        parts.into_iter().filter(|p| p.0.is_some() && p.0 == best).flat_map(|p| p.1).collect();
    hits.sort_unstable();
    hits.dedup();
    (best, hits)
}
