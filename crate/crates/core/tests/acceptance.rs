//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if any criterion fails.
//!
//! Set `HQUAT_LONG_RUNNING=1` to verify the minimal ideal of `H(GR(4,2))` exhaustively.

use std::cell::RefCell;
use std::time::{Duration, Instant};

use hquat::codes::{
    self, analyze_code, code_equal, hamming_enumerator, membership, span, tau_code, CodeReport,
    GeneratorMatrix,
};
use hquat::search::{self, SearchConfig, Template};
use hquat::structure::{
    closed_form_quaternion_weight, f2_quaternion_weight, galois_closed_form_weight, hom_weight_character,
    hom_weight_mobius, ideal_poset, is_frobenius_by_character, odd_field_quaternion_weight, principal_ideal,
    unique_minimal_ideal, verify_candidate, CandidateMode, WeightFunction,
};
use hquat::{FiniteRing, GaloisRing, QuatRing, Rational, Side};
use num_traits::{One, Zero};

type Outcome = Result<String, String>;

/// `(d, δ, p, r, m)` for every analyzed code, checked by the bound criterion.
struct Recorded {
    d: usize,
    delta: Rational,
    p: i64,
    r: i64,
    m: i64,
    label: String,
}

thread_local! {
    static RECORDED: RefCell<Vec<Recorded>> = const { RefCell::new(Vec::new()) };
}

fn record(label: &str, report: &CodeReport) {
    let base = &report.ring.base;
    RECORDED.with(|r| {
        r.borrow_mut().push(Recorded {
            d: report.d_hamming,
            delta: report.tau.delta,
            p: base.p as i64,
            r: base.r as i64,
            m: base.m as i64,
            label: label.to_string(),
        })
    });
}

fn ensure(cond: bool, what: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(what.into())
    }
}

fn h(p: u32, r: u32, m: usize) -> QuatRing {
    QuatRing::hamilton(GaloisRing::new(p, r, m, None).unwrap())
}

fn matrix(ring: &QuatRing, rows: [[&str; 6]; 2]) -> GeneratorMatrix {
    let rows: Vec<Vec<String>> = rows.iter().map(|r| r.iter().map(|s| s.to_string()).collect()).collect();
    GeneratorMatrix::parse(ring.clone(), &rows).unwrap()
}

fn qc_h3() -> GeneratorMatrix {
    matrix(&h(3, 1, 1), [["1", "1", "i", "i", "1+i", "1+i"], ["i", "1+i", "1+i", "1", "1", "i"]])
}

fn qc_h2() -> GeneratorMatrix {
    matrix(&h(2, 1, 1), [["1", "1", "i", "i", "1+j", "1+j"], ["i", "1+j", "1+j", "1", "1", "i"]])
}

fn qc_z4() -> GeneratorMatrix {
    matrix(&h(2, 2, 1), [["1", "1", "2", "2", "1+4i", "1+4i"], ["2", "1+4i", "1+4i", "1", "1", "2"]])
}

fn int(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn within(elapsed: Duration, limit_s: u64) -> Result<(), String> {
    ensure(elapsed.as_secs_f64() < limit_s as f64, format!("took {:.1} s, limit {limit_s} s", elapsed.as_secs_f64()))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let g = qc_h3();
    let code = span(&g, Side::Left).map_err(|e| e.to_string())?;
    let rep = analyze_code(&g, &code, Side::Left, None).map_err(|e| e.to_string())?;
    record("H(F3) left", &rep);
    ensure(rep.size == 6561, format!("size {}", rep.size))?;
    ensure(rep.free, "not free")?;
    ensure(rep.d_hamming == 5, format!("d = {}", rep.d_hamming))?;
    ensure(rep.enumerator == vec![(0, 1), (5, 480), (6, 6080)], format!("enumerator {:?}", rep.enumerator))?;
    ensure(rep.d_hom_normalized == Rational::new(75, 16), format!("normalized hom distance {}", rep.d_hom_normalized))?;
    ensure(rep.singleton.bound == int(5) && rep.singleton.mds, "not MDS")?;
    ensure(rep.quasi_cyclic.contains(&3), format!("quasi-cyclic orders {:?}", rep.quasi_cyclic))?;
    ensure(rep.tau.length == 24, "image length")?;
    ensure(rep.tau.d_hamming == 6 && rep.tau.delta == int(6), format!("image d = {}, delta = {}", rep.tau.d_hamming, rep.tau.delta))?;
    ensure(rep.type_alpha, "not Type alpha")?;
    within(start.elapsed(), 5)?;
    Ok(format!("6561 words, d=5, d_hom~=75/16, image d=delta=6 in {:.2} s", start.elapsed().as_secs_f64()))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let g = qc_h3();
    let ring = g.ring();
    let left = span(&g, Side::Left).map_err(|e| e.to_string())?;
    let right = span(&g, Side::Right).map_err(|e| e.to_string())?;
    let witness: Vec<_> =
        ["1+2k", "1+j+2k", "i+j+2k", "i+j", "1+i+j", "1+i+2k"].iter().map(|t| ring.parse(t).unwrap()).collect();
    ensure(membership(ring, &left, &witness), "witness not in left code")?;
    ensure(!membership(ring, &right, &witness), "witness in right code")?;
    ensure(hamming_enumerator(&left) == hamming_enumerator(&right), "enumerators differ")?;
    ensure(!code_equal(&left, &right), "left and right codes are equal")?;
    ensure(!code_equal(&tau_code(ring, &left), &tau_code(ring, &right)), "images are equal")?;
    let rep = analyze_code(&g, &right, Side::Right, None).map_err(|e| e.to_string())?;
    record("H(F3) right", &rep);
    within(start.elapsed(), 5)?;
    Ok(format!("witness separates the codes in {:.2} s", start.elapsed().as_secs_f64()))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let g = qc_h2();
    let left = span(&g, Side::Left).map_err(|e| e.to_string())?;
    let right = span(&g, Side::Right).map_err(|e| e.to_string())?;
    let rep = analyze_code(&g, &left, Side::Left, None).map_err(|e| e.to_string())?;
    record("H(F2) left", &rep);
    ensure(rep.size == 256, format!("size {}", rep.size))?;
    ensure(rep.d_hamming == 4, format!("d = {}", rep.d_hamming))?;
    ensure(rep.d_hom_normalized == int(4), format!("normalized hom distance {}", rep.d_hom_normalized))?;
    ensure(code_equal(&left, &right), "not two-sided")?;
    ensure(rep.tau.length == 24 && rep.tau.d_hamming == 8 && rep.tau.delta == int(8), "image distances")?;
    ensure(rep.type_alpha, "not Type alpha")?;
    within(start.elapsed(), 1)?;
    Ok(format!("256 words, d=4, two-sided in {:.2} s", start.elapsed().as_secs_f64()))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let g = qc_z4();
    let ring = g.ring();
    let literal = ring.parse("1+4i").unwrap();
    ensure(literal == ring.one(), "1+4i does not reduce to 1 over Z4")?;
    let left = span(&g, Side::Left).map_err(|e| e.to_string())?;
    ensure(left.len() == 65536, format!("size {}", left.len()))?;
    let rep = analyze_code(&g, &left, Side::Left, None).map_err(|e| e.to_string())?;
    record("H(Z4) left", &rep);
    let right = span(&g, Side::Right).map_err(|e| e.to_string())?;
    let rep_r = analyze_code(&g, &right, Side::Right, None).map_err(|e| e.to_string())?;
    record("H(Z4) right", &rep_r);
    ensure(rep.bounds.homogeneous && rep.bounds.normalized, "bounds")?;
    within(start.elapsed(), 30)?;
    let claim = |ok: bool| if ok { "agrees" } else { "disagrees" };
    Ok(format!(
        "65536 words; d={} ({} with 4), d_hom~={}, image d={} delta={} ({} with 8), Type alpha {}; left==right {} in {:.2} s",
        rep.d_hamming,
        claim(rep.d_hamming == 4),
        rep.d_hom_normalized,
        rep.tau.d_hamming,
        rep.tau.delta,
        claim(rep.tau.delta == int(8)),
        rep.type_alpha,
        code_equal(&left, &right),
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_5() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for q in [3i64, 5] {
        let c = h(q as u32, 1, 1).classify().map_err(|e| e.to_string())?;
        let zd = q.pow(3) + q.pow(2) - q - 1;
        let idem = q.pow(2) + q + 2;
        ensure(c.zero_divisors as i64 == zd, format!("q={q}: {} zero divisors, expected {zd}", c.zero_divisors))?;
        ensure(c.idempotents as i64 == idem, format!("q={q}: {} idempotents, expected {idem}", c.idempotents))?;
        notes.push(format!("q={q}: {zd} zero divisors, {idem} idempotents"));
    }
    ensure(notes[0].contains("32 zero divisors, 14 idempotents"), "H(F3) counts")?;
    ensure(notes[1].contains("144 zero divisors, 32 idempotents"), "H(F5) counts")?;
    within(start.elapsed(), 10)?;
    Ok(format!("{} in {:.2} s", notes.join("; "), start.elapsed().as_secs_f64()))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let ring = h(3, 1, 1);
    let poset = ideal_poset(&ring, Side::Left).map_err(|e| e.to_string())?;
    let proper = poset.proper_nonzero();
    ensure(proper.len() == 4, format!("{} proper nonzero principal left ideals", proper.len()))?;
    for &i in &proper {
        ensure(poset.ideal(i).members.len() == 9, "ideal size")?;
        ensure(poset.is_minimal(i) && poset.is_maximal(i), "not both minimal and maximal")?;
    }
    within(start.elapsed(), 10)?;
    Ok(format!("4 ideals of size 9 in {:.2} s", start.elapsed().as_secs_f64()))
}

fn triple<R: FiniteRing>(name: &str, ring: &R, gamma: Rational, closed: &[WeightFunction], sides: &[Side]) -> Result<(), String> {
    let chi = hom_weight_character(ring, gamma).map_err(|e| format!("{name}: {e}"))?;
    let mu = hom_weight_mobius(ring, gamma).map_err(|e| format!("{name}: {e}"))?;
    ensure(chi == mu, format!("{name}: character and poset weights differ"))?;
    for c in closed {
        ensure(*c == chi, format!("{name}: closed form differs"))?;
    }
    for &side in sides {
        let v = chi.definition_violation(ring, side).map_err(|e| e.to_string())?;
        ensure(v.is_none(), format!("{name}: {side} violation {v:?}"))?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    for (p, r, m) in [(2, 1, 1), (3, 1, 1), (2, 1, 2), (2, 2, 1), (2, 3, 1), (3, 2, 1), (2, 2, 2)] {
        let gr = GaloisRing::new(p, r, m, None).unwrap();
        let gamma = gr.gamma();
        triple(&format!("GR({p}^{r},{m})"), &gr, gamma, &[galois_closed_form_weight(&gr, gamma)], &[Side::Left])?;
    }
    let one = Rational::one();
    let h2 = h(2, 1, 1);
    let closed = vec![f2_quaternion_weight(&h2).unwrap(), closed_form_quaternion_weight(&h2, one).unwrap()];
    triple("H(F2)", &h2, one, &closed, &[Side::Left, Side::Right])?;
    let h3 = h(3, 1, 1);
    triple("H(F3)", &h3, one, &[odd_field_quaternion_weight(&h3, one).unwrap()], &[Side::Left, Side::Right])?;
    let hz4 = h(2, 2, 1);
    triple("H(Z4)", &hz4, one, &[closed_form_quaternion_weight(&hz4, one).unwrap()], &[Side::Left, Side::Right])?;
    let w3 = odd_field_quaternion_weight(&h3, one).unwrap();
    let (unit, zd) = (w3.weight_of(&h3, &h3.one()), w3.weight_of(&h3, &h3.parse("1+i+j").unwrap()));
    ensure(unit == Rational::new(15, 16) && zd == Rational::new(9, 8), format!("H(F3) weights {unit}, {zd}"))?;
    within(start.elapsed(), 60)?;
    Ok(format!("10 rings agree in {:.2} s", start.elapsed().as_secs_f64()))
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let h2 = h(2, 1, 1);
    let m2 = unique_minimal_ideal(&h2, Side::Left).map_err(|e| e.to_string())?.ok_or("H(F2): none")?;
    let expect2 = [h2.zero(), h2.parse("1+i+j+k").unwrap()];
    ensure(m2.members.len() == 2 && expect2.iter().all(|x| m2.members.contains(h2.index_of(x))), "H(F2) ideal")?;

    let h4 = h(2, 1, 2);
    let m4 = unique_minimal_ideal(&h4, Side::Left).map_err(|e| e.to_string())?.ok_or("H(F4): none")?;
    ensure(m4.members.len() == 4, format!("H(F4) ideal size {}", m4.members.len()))?;

    let hz4 = h(2, 2, 1);
    let mz = unique_minimal_ideal(&hz4, Side::Left).map_err(|e| e.to_string())?.ok_or("H(Z4): none")?;
    let expectz = [hz4.zero(), hz4.parse("2+2i+2j+2k").unwrap()];
    ensure(mz.members.len() == 2 && expectz.iter().all(|x| mz.members.contains(hz4.index_of(x))), "H(Z4) ideal")?;

    let big = h(2, 2, 2);
    let long = std::env::var("HQUAT_LONG_RUNNING").is_ok_and(|v| v == "1");
    let mode = if long { CandidateMode::Exhaustive } else { CandidateMode::Sampled { samples: 1000, seed: 0x5eed } };
    let rep = verify_candidate(&big, mode).map_err(|e| e.to_string())?;
    ensure(rep.generators_checked >= 1000, "too few samples")?;
    ensure(rep.two_sided, "candidate ideal is not two-sided")?;
    ensure(rep.minimal, "candidate ideal is not minimal")?;
    ensure(rep.contained_in_all_checked, "candidate ideal escapes a checked ideal")?;
    // The generator x = 2(1+w)(1+i+j+k) has w·x != x, so H·x is larger than {0, x}.
    let x = big.parse(&rep.generator).unwrap();
    let generated = principal_ideal(&big, &x, Side::Left).map_err(|e| e.to_string())?;
    ensure(generated.len() == rep.ideal_size, "ideal size mismatch")?;
    if !long {
        within(start.elapsed(), 60)?;
    }
    Ok(format!(
        "sizes 2, 4, 2; H(GR(4,2)) ideal H*{} has {} elements ({} generators checked{}) in {:.2} s",
        rep.generator,
        rep.ideal_size,
        rep.generators_checked,
        if long { ", exhaustive" } else { "" },
        start.elapsed().as_secs_f64()
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    for (name, ring) in [("H(F2)", h(2, 1, 1)), ("H(F3)", h(3, 1, 1)), ("H(Z4)", h(2, 2, 1))] {
        ensure(is_frobenius_by_character(&ring).map_err(|e| e.to_string())?, format!("{name}: kernel holds an ideal"))?;
    }
    within(start.elapsed(), 30)?;
    Ok(format!("3 rings in {:.2} s", start.elapsed().as_secs_f64()))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let mut notes = Vec::new();
    for (name, ring, best, witness) in [
        ("H(F2)", h(2, 1, 1), 4, [("x", "1"), ("y", "i"), ("z", "1+j")]),
        ("H(F3)", h(3, 1, 1), 5, [("x", "1"), ("y", "i"), ("z", "1+i")]),
    ] {
        let mut results = Vec::new();
        for jobs in [1, 2, 8] {
            let mut cfg = SearchConfig::new(ring.clone(), Template::qc_2x6());
            cfg.jobs = jobs;
            let t = Instant::now();
            let r = search::search(&cfg).map_err(|e| format!("{name}: {e}"))?;
            notes.push(format!("{name}/{jobs}: {:.1} s", t.elapsed().as_secs_f64()));
            results.push(r);
        }
        let r = &results[0];
        ensure(results.iter().all(|x| x == r), format!("{name}: results depend on worker count"))?;
        ensure(r.best == Some(int(best)), format!("{name}: best {:?}", r.best))?;
        ensure(r.has_maximizer(&ring, &witness), format!("{name}: witness assignment is not a maximizer"))?;
        for (i, rep) in r.reports.iter().enumerate() {
            record(&format!("{name} search winner {i}"), rep);
        }
        notes.push(format!("{name}: best {best}, {} maximizers", r.maximizers.len()));
    }
    within(start.elapsed(), 600)?;
    Ok(notes.join("; "))
}

fn criterion_11() -> Outcome {
    let recorded = RECORDED.with(|r| r.borrow_mut().drain(..).collect::<Vec<_>>());
    ensure(recorded.len() >= 7, format!("only {} codes recorded", recorded.len()))?;
    for c in &recorded {
        // Chain-ring weight average and top value, straight from their definitions.
        let pm = c.p.pow(c.m as u32);
        let q_r1 = Rational::from_integer(c.p).pow((c.m * (c.r - 1)) as i32);
        let gamma = Rational::from_integer(pm - 1) * Rational::from_integer(c.p).pow((c.m * (c.r - 2)) as i32);
        let d = int(c.d as i64);
        let four_d = int(4) * d;
        let delta_n = c.delta / gamma;
        ensure(!d.is_zero(), format!("{}: zero distance", c.label))?;
        ensure(gamma * d <= c.delta && c.delta <= q_r1 * four_d, format!("{}: homogeneous chain fails", c.label))?;
        ensure(
            d <= delta_n && delta_n <= Rational::new(pm, pm - 1) * four_d,
            format!("{}: normalized chain fails", c.label),
        )?;
    }
    Ok(format!("{} codes satisfy both chains", recorded.len()))
}

fn main() {
    // Make sure the library-level check agrees with the oracle above on a known case.
    assert!(codes::bounds_check(5, int(6), &GaloisRing::new(3, 1, 1, None).unwrap()).is_ok());

    let criteria: [(&str, fn() -> Outcome); 11] = [
        ("quasi-cyclic code over H(F3)", criterion_1),
        ("left and right codes over H(F3) differ", criterion_2),
        ("quasi-cyclic code over H(F2)", criterion_3),
        ("quasi-cyclic code over H(Z4), literal entries", criterion_4),
        ("zero divisors and idempotents of H(F3), H(F5)", criterion_5),
        ("principal left ideals of H(F3)", criterion_6),
        ("three weight formulas agree", criterion_7),
        ("minimal ideals", criterion_8),
        ("generating characters", criterion_9),
        ("template search", criterion_10),
        ("distance chains", criterion_11),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(note) => println!("PASS criterion {:>2}: {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {:>2}: {name}: {why}", i + 1);
            }
        }
    }
    if failed > 0 {
        println!("{failed} of {} criteria failed", criteria.len());
        std::process::exit(1);
    }
    println!("all {} criteria passed", criteria.len());
}
