//! Exhaustive search over template generator matrices.
//!
//! Every assignment of ring elements to the template's variables is spanned and
//! scored by its minimum distance. A shared lower bound lets workers abandon a code
//! as soon as one of its words is lighter than the best distance seen so far; the
//! maximizers are unaffected because abandoning only happens strictly below it.

mod scan;
mod template;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::codes::{analyze, default_weight, CodeError, CodeReport, IntegerWeights};
use crate::quaternion::{Quat, QuatRing, QuaternionError};
use crate::rational::{self, Rational};
use crate::ring::{FiniteRing, Side};
use crate::structure::galois_closed_form_weight;

pub use template::{Entry, Template, TemplateFile};

/// Default budget in (assignment, message) pairs.
pub const DEFAULT_BUDGET: u128 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Objective {
    #[serde(rename = "hamming")]
    Hamming,
    #[serde(rename = "hom")]
    Homogeneous,
}

impl FromStr for Objective {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "hamming" => Ok(Objective::Hamming),
            "hom" | "homogeneous" => Ok(Objective::Homogeneous),
            _ => Err(format!("unknown objective {s:?} (expected hamming or hom)")),
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Objective::Hamming => "hamming",
            Objective::Homogeneous => "hom",
        })
    }
}

/// Values each variable ranges over.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Domain {
    All,
    UnitsOnly,
    Subset(Vec<Quat>),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub ring: QuatRing,
    pub template: Template,
    pub side: Side,
    pub objective: Objective,
    pub domain: Domain,
    /// Worker threads.
    pub jobs: usize,
    /// Maximum (assignment, message) pairs per call before stopping with a resume token.
    pub budget: u128,
    /// Maximizers that get a full [`CodeReport`].
    pub report_limit: usize,
    /// Skip assignments whose code is not free (`|C| < |H|^k`), so that the rate is `k/n`.
    pub require_free: bool,
}

impl SearchConfig {
    pub fn new(ring: QuatRing, template: Template) -> Self {
        SearchConfig {
            ring,
            template,
            side: Side::Left,
            objective: Objective::Hamming,
            domain: Domain::All,
            jobs: std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            budget: DEFAULT_BUDGET,
            report_limit: 8,
            require_free: true,
        }
    }

    fn domain_indices(&self) -> Vec<u32> {
        let ring = &self.ring;
        match &self.domain {
            Domain::All => (0..ring.order() as u32).collect(),
            Domain::UnitsOnly => {
                (0..ring.order()).filter(|&i| ring.is_unit(&ring.element_at(i))).map(|i| i as u32).collect()
            }
            Domain::Subset(values) => {
                let mut v: Vec<u32> = values.iter().map(|x| ring.index_of(x) as u32).collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }

    /// Hash of everything that determines the scan order and scores.
    pub fn fingerprint(&self) -> String {
        let domain = match &self.domain {
            Domain::All => serde_json::json!("all"),
            Domain::UnitsOnly => serde_json::json!("units"),
            Domain::Subset(v) => serde_json::json!(v.iter().map(|x| self.ring.format_element(x)).collect::<Vec<_>>()),
        };
        let doc = serde_json::json!({
            "ring": self.ring.descriptor(),
            "a": self.ring.format_element(&self.ring.scalar(*self.ring.a())),
            "b": self.ring.format_element(&self.ring.scalar(*self.ring.b())),
            "template": self.template.rows_text(),
            "side": self.side,
            "objective": self.objective,
            "domain": domain,
            "require_free": self.require_free,
        });
        let digest = Sha256::digest(doc.to_string().as_bytes());
        hex::encode(digest)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("budget exhausted after {} assignments; resume with the token", .partial.assignments_scanned)]
    BudgetExceeded { partial: Box<SearchResult>, token: ResumeToken },
    #[error("resume token does not match this search configuration")]
    StaleToken,
    #[error("the variable domain is empty")]
    EmptyDomain,
    #[error("malformed template: {0}")]
    Template(String),
    #[error("bound check failed: {0}")]
    BoundViolated(String),
    #[error("re-verification of assignment {index} disagrees with the scan: {detail}")]
    Verification { index: u64, detail: String },
    #[error(transparent)]
    Code(#[from] CodeError),
    #[error(transparent)]
    Quaternion(#[from] QuaternionError),
}

/// Progress through the assignment space, carried across budget-limited calls.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResumeToken {
    pub fingerprint: String,
    pub next: u64,
    pub total: u64,
    #[serde(flatten)]
    pub partial: PartialScan,
}

/// Best scaled distance over a range of assignments and every index attaining it.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialScan {
    pub scanned: u64,
    pub best: Option<i64>,
    pub maximizers: Vec<u64>,
}

impl PartialScan {
    pub fn merge(parts: &[PartialScan]) -> PartialScan {
        let (best, maximizers) = scan::merge(parts.iter().map(|p| (p.best, p.maximizers.clone())));
        PartialScan { scanned: parts.iter().map(|p| p.scanned).sum(), best, maximizers }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub index: u64,
    pub values: BTreeMap<String, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    pub objective: Objective,
    pub side: Side,
    pub variables: Vec<String>,
    pub domain_size: usize,
    pub assignments_total: u64,
    pub assignments_scanned: u64,
    /// Best objective distance; homogeneous distances use the normalized weight.
    #[serde(with = "rational::serde_string_opt")]
    pub best: Option<Rational>,
    pub maximizers: Vec<Assignment>,
    /// Full analyses of the first maximizers, in the same order.
    pub reports: Vec<CodeReport>,
}

impl SearchResult {
    /// True if some maximizer assigns exactly these texts (after parsing) to the named variables.
    pub fn has_maximizer(&self, ring: &QuatRing, values: &[(&str, &str)]) -> bool {
        let want: Option<Vec<(String, Quat)>> =
            values.iter().map(|(v, t)| ring.parse(t).ok().map(|q| (v.to_string(), q))).collect();
        let Some(want) = want else {
            return false;
        };
        self.maximizers.iter().any(|a| {
            want.iter().all(|(v, q)| a.values.get(v).and_then(|t| ring.parse(t).ok()).as_ref() == Some(q))
        })
    }
}

struct Prepared<'a> {
    kernel: scan::Kernel<'a>,
    denom: i64,
    total: u64,
}

fn prepare(config: &SearchConfig) -> Result<Prepared<'_>, SearchError> {
    let domain = config.domain_indices();
    if domain.is_empty() {
        return Err(SearchError::EmptyDomain);
    }
    if config.template.n() == 0 || config.template.k() == 0 {
        return Err(SearchError::Template("empty template".into()));
    }
    check_element_bounds(&config.ring)?;
    let (weights, denom) = match config.objective {
        Objective::Hamming => ((0..config.ring.order()).map(|i| i64::from(i != 0)).collect(), 1),
        Objective::Homogeneous => {
            let iw = IntegerWeights::new(&default_weight(&config.ring)?);
            (iw.nums, iw.denom)
        }
    };
    let kernel = scan::Kernel::new(&config.ring, &config.template, config.side, domain, weights, config.require_free);
    let total = u64::try_from(kernel.assignment_count()).map_err(|_| {
        SearchError::Code(CodeError::TooLarge {
            what: "assignment count",
            size: kernel.assignment_count(),
            limit: u64::MAX as u128,
        })
    })?;
    Ok(Prepared { kernel, denom, total })
}

/// Per-symbol form of the distance chains between a quaternion code and its image:
/// every nonzero `x` has `Γ ≤ Σ_t w(x_t) ≤ 4 p^{m(r-1)}` for the chain-ring weight `w`.
/// Summing over coordinates gives the chains for every code over the ring at once.
pub fn check_element_bounds(ring: &QuatRing) -> Result<(), SearchError> {
    let base = ring.base();
    let w = galois_closed_form_weight(base, base.gamma());
    let gamma = base.gamma();
    let top = rational::pow(base.p() as i64, (base.m() as i64) * (base.r() as i64 - 1)) * Rational::from_integer(4);
    let nb = base.order();
    for idx in 1..ring.order() {
        let digits = [idx / (nb * nb * nb), idx / (nb * nb) % nb, idx / nb % nb, idx % nb];
        let total: Rational = digits.iter().map(|&d| w.weight(d)).sum();
        if total < gamma || total > top {
            return Err(SearchError::BoundViolated(format!(
                "{} has image weight {} outside [{}, {}]",
                ring.format_element(&ring.element_at(idx)),
                rational::format(&total),
                rational::format(&gamma),
                rational::format(&top)
            )));
        }
    }
    Ok(())
}

fn pool(jobs: usize) -> rayon::ThreadPool {
    rayon::ThreadPoolBuilder::new().num_threads(jobs.max(1)).build().expect("thread pool")
}

/// Scans assignments `start..end` (clamped to the assignment count) without a budget.
pub fn scan_range(config: &SearchConfig, start: u64, end: u64) -> Result<PartialScan, SearchError> {
    let prep = prepare(config)?;
    let end = end.min(prep.total);
    let (best, maximizers) = pool(config.jobs).install(|| prep.kernel.scan(start, end, None));
    Ok(PartialScan { scanned: end.saturating_sub(start), best, maximizers })
}

/// Scans every assignment, or stops with [`SearchError::BudgetExceeded`].
pub fn search(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    run(config, 0, PartialScan::default())
}

/// Continues a scan stopped by the budget.
pub fn resume(config: &SearchConfig, token: &ResumeToken) -> Result<SearchResult, SearchError> {
    if token.fingerprint != config.fingerprint() {
        return Err(SearchError::StaleToken);
    }
    run(config, token.next, token.partial.clone())
}

/// Builds the final result from partial scans covering the whole assignment space.
pub fn finish(config: &SearchConfig, parts: &[PartialScan]) -> Result<SearchResult, SearchError> {
    let prep = prepare(config)?;
    build_result(config, &prep, &PartialScan::merge(parts))
}

fn run(config: &SearchConfig, start: u64, prior: PartialScan) -> Result<SearchResult, SearchError> {
    let prep = prepare(config)?;
    let per_assignment = prep.kernel.message_count();
    let affordable = u64::try_from(config.budget / per_assignment.max(1)).unwrap_or(u64::MAX);
    let stop = start.saturating_add(affordable).min(prep.total);
    let (best, maximizers) = pool(config.jobs).install(|| prep.kernel.scan(start, stop, prior.best));
    let merged = PartialScan::merge(&[prior, PartialScan { scanned: stop - start, best, maximizers }]);
    if stop < prep.total {
        let partial = build_result(config, &prep, &merged)?;
        let token = ResumeToken { fingerprint: config.fingerprint(), next: stop, total: prep.total, partial: merged };
        return Err(SearchError::BudgetExceeded { partial: Box::new(partial), token });
    }
    build_result(config, &prep, &merged)
}

fn build_result(config: &SearchConfig, prep: &Prepared<'_>, scan: &PartialScan) -> Result<SearchResult, SearchError> {
    let ring = &config.ring;
    let vars = config.template.vars();
    let maximizers: Vec<Assignment> = scan
        .maximizers
        .iter()
        .map(|&index| {
            let values = prep
                .kernel
                .values(index)
                .iter()
                .zip(vars)
                .map(|(&x, v)| (v.clone(), ring.format_element(&ring.element_at(x as usize))))
                .collect();
            Assignment { index, values }
        })
        .collect();
    let best = scan.best.map(|b| Rational::new(b, prep.denom));

    let weight = default_weight(ring).ok();
    let mut reports = Vec::new();
    for &index in scan.maximizers.iter().take(config.report_limit) {
        let values: Vec<Quat> = prep.kernel.values(index).iter().map(|&x| ring.element_at(x as usize)).collect();
        let g = config.template.instantiate(ring, &values)?;
        let report = match analyze(&g, config.side, weight.as_ref()) {
            Ok(r) => r,
            Err(CodeError::BoundViolated(msg)) => return Err(SearchError::BoundViolated(msg)),
            Err(CodeError::EmptyCode) => continue,
            Err(e) => return Err(e.into()),
        };
        let rescored = match config.objective {
            Objective::Hamming => Rational::from_integer(report.d_hamming as i64),
            Objective::Homogeneous => report.d_hom_normalized,
        };
        if Some(rescored) != best {
            return Err(SearchError::Verification {
                index,
                detail: format!(
                    "full enumeration gives {} but the scan recorded {}",
                    rational::format(&rescored),
                    best.map(|b| rational::format(&b)).unwrap_or_default()
                ),
            });
        }
        reports.push(report);
    }
    debug_assert!(reports.iter().all(|r| r.hom_gamma.is_one()));

    Ok(SearchResult {
        objective: config.objective,
        side: config.side,
        variables: vars.to_vec(),
        domain_size: config.domain_indices().len(),
        assignments_total: prep.total,
        assignments_scanned: scan.scanned,
        best,
        maximizers,
        reports,
    })
}
