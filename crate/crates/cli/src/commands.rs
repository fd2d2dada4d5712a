use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use hquat::codes::{
    analyze, bounds_check, hamming_enumerator, min_hamming, min_hom_distance, span, tau, tau_code, type_alpha,
    GeneratorFile,
};
use hquat::quaternion::QuatDescriptor;
use hquat::rational;
use hquat::search::{self, Domain, ResumeToken, SearchConfig, SearchError, Template, TemplateFile};
use hquat::structure::{
    closed_form_quaternion_weight, galois_closed_form_weight, hom_weight_character, hom_weight_mobius, ideal_poset,
    is_frobenius_by_character, mobius, socle, verify_candidate, CandidateMode, WeightFunction, POSET_LIMIT,
};
use hquat::{FiniteRing, GaloisRing, QuatRing, Rational, RingDescriptor, Side};
use serde_json::{json, Value};

use crate::output::{Failure, Outcome};
use crate::{RingArgs, WeightMethod};

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Validation(format!("cannot read {}: {e}", path.display())))
}

fn galois(text: &str) -> Result<GaloisRing, Failure> {
    let d: RingDescriptor = serde_json::from_str(text)?;
    Ok(d.build()?)
}

fn quaternion(text: &str) -> Result<QuatRing, Failure> {
    let d: QuatDescriptor = serde_json::from_str(text)?;
    Ok(d.build()?)
}

fn r(q: &Rational) -> Value {
    Value::String(rational::format(q))
}

fn galois_summary(gr: &GaloisRing) -> Value {
    let (p, rr, m) = (gr.p() as i64, gr.r() as i64, gr.m() as i64);
    json!({
        "ring": gr.descriptor(),
        "h": gr.h_text(),
        "cardinality": gr.order(),
        "characteristic": gr.characteristic(),
        "unit_count": gr.unit_count(),
        "gamma": r(&gr.gamma()),
        "max_weight": r(&rational::pow(p, m * (rr - 1))),
    })
}

pub fn ring_info(args: &RingArgs) -> Outcome {
    if !args.quat {
        return Ok(galois_summary(&galois(&args.ring)?));
    }
    let ring = quaternion(&args.ring)?;
    let base = ring.base();
    let classes = match ring.classify() {
        Ok(c) => json!({"units": c.units, "zero_divisors": c.zero_divisors, "idempotents": c.idempotents}),
        Err(_) => Value::Null,
    };
    Ok(json!({
        "base": galois_summary(base),
        "a": base.format_element(ring.a()),
        "b": base.format_element(ring.b()),
        "cardinality": ring.order_u128().to_string().parse::<u64>().map(Value::from).unwrap_or_else(|_| Value::String(ring.order_u128().to_string())),
        "characteristic": base.characteristic(),
        "classification": classes,
    }))
}

fn default_gamma(text: Option<&str>, fallback: Rational) -> Result<Rational, Failure> {
    match text {
        None => Ok(fallback),
        Some(t) => match rational::parse(t) {
            Some(g) if g > Rational::from_integer(0) => Ok(g),
            _ => Err(Failure::Validation(format!("--gamma must be a positive rational, got {t:?}"))),
        },
    }
}

fn compute<R: FiniteRing>(
    ring: &R,
    gamma: Rational,
    method: WeightMethod,
    closed: impl Fn() -> Result<WeightFunction, Failure>,
) -> Result<WeightFunction, Failure> {
    match method {
        WeightMethod::Closed => closed(),
        WeightMethod::Character => Ok(hom_weight_character(ring, gamma)?),
        WeightMethod::Mobius => Ok(hom_weight_mobius(ring, gamma)?),
        WeightMethod::All => {
            let c = closed()?;
            let x = hom_weight_character(ring, gamma)?;
            let m = hom_weight_mobius(ring, gamma)?;
            if c != x || c != m {
                return Err(Failure::Internal("the weight formulas disagree".into()));
            }
            Ok(c)
        }
    }
}

fn weight_report<R: FiniteRing>(ring: &R, w: &WeightFunction, summary: bool, kinds: bool) -> Value {
    let mut distinct: BTreeMap<Rational, usize> = BTreeMap::new();
    let mut by_kind: BTreeMap<&str, Vec<Rational>> = BTreeMap::new();
    let zero = ring.zero();
    let mut table = Vec::new();
    for (i, x) in ring.elements().enumerate() {
        let wi = w.weight(i);
        *distinct.entry(wi).or_insert(0) += 1;
        let kind = if x == zero {
            "zero"
        } else if ring.is_unit(&x) {
            "unit"
        } else {
            "zero_divisor"
        };
        let list = by_kind.entry(kind).or_default();
        if !list.contains(&wi) {
            list.push(wi);
        }
        if !summary {
            table.push(json!([ring.format_element(&x), r(&wi)]));
        }
    }
    let mut out = json!({
        "gamma": r(&w.gamma()),
        "distinct": distinct.iter().map(|(w, c)| json!([r(w), c])).collect::<Vec<_>>(),
    });
    if kinds {
        out["by_kind"] = by_kind
            .into_iter()
            .map(|(k, mut v)| {
                v.sort();
                (k.to_string(), Value::from(v.iter().map(r).collect::<Vec<_>>()))
            })
            .collect::<serde_json::Map<_, _>>()
            .into();
    }
    if !summary {
        out["table"] = table.into();
    }
    out
}

pub fn weights(args: &RingArgs, gamma: Option<&str>, method: WeightMethod, summary: bool) -> Outcome {
    let method_name = format!("{method:?}").to_lowercase();
    if args.quat {
        let ring = quaternion(&args.ring)?;
        let gamma = default_gamma(gamma, Rational::from_integer(1))?;
        let w = compute(&ring, gamma, method, || Ok(closed_form_quaternion_weight(&ring, gamma)?))?;
        let mut out = weight_report(&ring, &w, summary, true);
        out["method"] = method_name.into();
        Ok(out)
    } else {
        let gr = galois(&args.ring)?;
        let gamma = default_gamma(gamma, gr.gamma())?;
        let w = compute(&gr, gamma, method, || Ok(galois_closed_form_weight(&gr, gamma)))?;
        let mut out = weight_report(&gr, &w, summary, false);
        out["method"] = method_name.into();
        Ok(out)
    }
}

fn structure_small<R: FiniteRing>(ring: &R, side: Side) -> Outcome {
    let poset = ideal_poset(ring, side)?;
    let mu = mobius(&poset);
    let ideals: Vec<Value> = poset
        .ideals()
        .iter()
        .enumerate()
        .map(|(i, ideal)| {
            json!({
                "generator": ring.format_element(&ring.element_at(ideal.generator)),
                "size": ideal.members.len(),
                "minimal": poset.is_minimal(i),
                "maximal": poset.is_maximal(i),
                "mobius_from_zero": mu.get(poset.zero_ideal(), i),
            })
        })
        .collect();
    let minimal = poset.minimal_ideals();
    let unique = if minimal.len() == 1 {
        let ideal = poset.ideal(minimal[0]);
        json!({
            "generator": ring.format_element(&ring.element_at(ideal.generator)),
            "elements": ideal.members.elements(ring).map(|x| ring.format_element(&x)).collect::<Vec<_>>(),
        })
    } else {
        Value::Null
    };
    Ok(json!({
        "side": side,
        "principal_ideals": ideals,
        "proper_nonzero": poset.proper_nonzero().len(),
        "minimal_ideals": minimal.len(),
        "unique_minimal_ideal": unique,
        "socle_size": socle(ring, side)?.len(),
        "generating_character": is_frobenius_by_character(ring)?,
    }))
}

pub fn structure(args: &RingArgs, side: Side, long_running: bool, samples: usize) -> Outcome {
    if !args.quat {
        return structure_small(&galois(&args.ring)?, side);
    }
    let ring = quaternion(&args.ring)?;
    if ring.order() <= POSET_LIMIT {
        return structure_small(&ring, side);
    }
    let mode = if long_running { CandidateMode::Exhaustive } else { CandidateMode::Sampled { samples, seed: 0x5eed } };
    let report = verify_candidate(&ring, mode)?;
    Ok(json!({
        "minimal_ideal_check": report,
        "verified": report.verified(),
    }))
}

fn load_matrix(path: &Path, side: Option<Side>) -> Result<(hquat::GeneratorMatrix, Side), Failure> {
    let file: GeneratorFile = serde_json::from_str(&read(path)?)?;
    let g = file.build()?;
    Ok((g, side.unwrap_or(file.side)))
}

pub fn code_analyze(path: &Path, side: Option<Side>) -> Outcome {
    let (g, side) = load_matrix(path, side)?;
    let report = analyze(&g, side, None)?;
    Ok(serde_json::to_value(report)?)
}

pub fn image(path: &Path, side: Option<Side>) -> Outcome {
    let (g, side) = load_matrix(path, side)?;
    let ring = g.ring();
    let base = ring.base();
    let code = span(&g, side)?;
    let img = tau_code(ring, &code);
    let weight = galois_closed_form_weight(base, base.gamma());
    let d = min_hamming(&code)?;
    let d_tau = min_hamming(&img)?;
    let delta = min_hom_distance(&img, &weight)?;
    let bounds = bounds_check(d, delta, base)?;
    let rows: Vec<Vec<String>> =
        g.rows().iter().map(|row| tau(row).iter().map(|x| base.format_element(x)).collect()).collect();
    Ok(json!({
        "base": base.descriptor(),
        "side": side,
        "length": img.n(),
        "size": img.len(),
        "generator_rows_image": rows,
        "d_hamming": d_tau,
        "enumerator": hamming_enumerator(&img).to_pairs(),
        "gamma": r(&base.gamma()),
        "delta": r(&delta),
        "delta_normalized": r(&bounds.delta_normalized),
        "type_alpha": type_alpha(delta, d_tau, base),
        "quaternion_d_hamming": d,
        "bounds": bounds,
    }))
}

pub struct SearchOpts {
    pub ring: String,
    pub template: String,
    pub side: Side,
    pub objective: search::Objective,
    pub jobs: Option<usize>,
    pub budget: Option<u128>,
    pub units_only: bool,
    pub allow_non_free: bool,
    pub report_limit: usize,
    pub resume: Option<PathBuf>,
}

pub fn search(opts: &SearchOpts) -> Outcome {
    let ring = quaternion(&opts.ring)?;
    let template = match Template::builtin(&opts.template) {
        Some(t) => t,
        None => {
            let file: TemplateFile = serde_json::from_str(&read(Path::new(&opts.template))?)?;
            Template::from_file(&file, &ring)?
        }
    };
    let mut cfg = SearchConfig::new(ring, template);
    cfg.side = opts.side;
    cfg.objective = opts.objective;
    if let Some(j) = opts.jobs {
        cfg.jobs = j.max(1);
    }
    if let Some(b) = opts.budget {
        cfg.budget = b;
    }
    if opts.units_only {
        cfg.domain = Domain::UnitsOnly;
    }
    cfg.require_free = !opts.allow_non_free;
    cfg.report_limit = opts.report_limit;

    let result = match &opts.resume {
        Some(path) => {
            let saved: Value = serde_json::from_str(&read(path)?)?;
            let token: ResumeToken = serde_json::from_value(saved.get("resume_token").cloned().ok_or_else(|| {
                Failure::Validation(format!("{} holds no resume_token", path.display()))
            })?)?;
            search::resume(&cfg, &token)
        }
        None => search::search(&cfg),
    };
    match result {
        Ok(r) => Ok(serde_json::to_value(r)?),
        Err(SearchError::BudgetExceeded { partial, token }) => {
            Err(Failure::Budget(json!({"partial": partial, "resume_token": token})))
        }
        Err(e) => Err(e.into()),
    }
}
