//! Galois rings `GR(p^r, m) = Z_{p^r}[x]/(h(x))`.
//!
//! Elements are coefficient vectors `b_0 + b_1 ω + … + b_{m-1} ω^{m-1}` with
//! `b_i ∈ Z_{p^r}` and `ω` a root of the basic irreducible polynomial `h`.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::{self, Rational};
use crate::ring::{CharacterValue, FiniteRing};

/// Largest supported extension degree `m`.
pub const MAX_DEGREE: usize = 8;

/// Largest supported ring order `p^{rm}`; quaternion indices must fit in 64 bits.
pub const MAX_ORDER: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GaloisRingError {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("h(x) = {poly} does not reduce to an irreducible polynomial modulo {p}")]
    NotBasicIrreducible { poly: String, p: u32 },
    #[error("bad degree: {0}")]
    BadDegree(String),
    #[error("element {0} does not belong to this ring")]
    RingMismatch(String),
    #[error("cannot parse ring element {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// An element of a Galois ring, as its coordinate vector in the basis `{1, ω, …, ω^{m-1}}`.
///
/// Coordinates are always reduced modulo `p^r`, so equality of elements is
/// equality of coordinate vectors.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrElement {
    len: u8,
    coeffs: [u32; MAX_DEGREE],
}

impl GrElement {
    fn from_slice(c: &[u32]) -> Self {
        let mut coeffs = [0u32; MAX_DEGREE];
        coeffs[..c.len()].copy_from_slice(c);
        GrElement { len: c.len() as u8, coeffs }
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs[..self.len as usize]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs().iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for GrElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", format_coeffs(self.coeffs()))
    }
}

fn format_coeffs(c: &[u32]) -> String {
    if c.len() == 1 {
        c[0].to_string()
    } else {
        let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
        format!("[{}]", parts.join(","))
    }
}

/// JSON ring descriptor: `{"p":2,"r":2,"m":2,"h":[1,1,1]}` with `h` low degree first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub p: u32,
    pub r: u32,
    pub m: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<u32>>,
}

impl RingDescriptor {
    pub fn build(&self) -> Result<GaloisRing, GaloisRingError> {
        GaloisRing::new(self.p, self.r, self.m, self.h.clone())
    }
}

/// The Galois ring `GR(p^r, m)`. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaloisRing {
    p: u32,
    r: u32,
    m: usize,
    /// `p^r`
    modulus: u32,
    order: usize,
    /// Monic, low degree first, length `m + 1`.
    h: Vec<u32>,
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Remainder of `a` modulo the monic polynomial `b` over `F_p` (low degree first).
fn fp_poly_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut rem: Vec<u64> = a.iter().map(|&c| (c % p) as u64).collect();
    let p = p as u64;
    let db = b.len() - 1;
    while rem.len() > db {
        let lead = rem.pop().unwrap();
        if lead != 0 {
            let shift = rem.len() - db;
            for (t, &bc) in b[..db].iter().enumerate() {
                rem[shift + t] = (rem[shift + t] + (p - lead) * bc as u64) % p;
            }
        }
    }
    rem.into_iter().map(|c| c as u32).collect()
}

/// Every monic polynomial of degree `d` over `F_p`, low degree first, in lexicographic order.
fn monic_polys(p: u32, d: usize) -> impl Iterator<Item = Vec<u32>> {
    let count = (p as u64).pow(d as u32);
    (0..count).map(move |mut n| {
        let mut digits = vec![0u32; d + 1];
        for slot in (0..d).rev() {
            digits[slot] = (n % p as u64) as u32;
            n /= p as u64;
        }
        digits[d] = 1;
        digits
    })
}

/// Trial division of a monic polynomial of degree `m` over `F_p`.
pub fn is_irreducible_mod_p(h: &[u32], p: u32) -> bool {
    let m = h.len() - 1;
    (1..=m / 2).all(|d| {
        monic_polys(p, d).all(|f| fp_poly_rem(h, &f, p).iter().any(|&c| c != 0))
    })
}

fn poly_text(h: &[u32]) -> String {
    let mut terms = Vec::new();
    for (deg, &c) in h.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match deg {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{deg}"),
        };
        terms.push(match (c, deg) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

impl GaloisRing {
    /// Builds `GR(p^r, m)`. Without `h`, the lexicographically smallest monic
    /// degree-`m` polynomial with coefficients in `0..p` that is irreducible
    /// modulo `p` is used.
    pub fn new(p: u32, r: u32, m: usize, h: Option<Vec<u32>>) -> Result<Self, GaloisRingError> {
        if !is_prime(p as u64) {
            return Err(GaloisRingError::NotPrime(p as u64));
        }
        if r == 0 {
            return Err(GaloisRingError::BadDegree("r must be at least 1".into()));
        }
        if m == 0 || m > MAX_DEGREE {
            return Err(GaloisRingError::BadDegree(format!(
                "m = {m} outside 1..={MAX_DEGREE}"
            )));
        }
        let modulus = (p as u64).checked_pow(r).filter(|&q| q <= u32::MAX as u64);
        let order = modulus.and_then(|q| q.checked_pow(m as u32)).filter(|&o| o <= MAX_ORDER);
        let (modulus, order) = match (modulus, order) {
            (Some(q), Some(o)) => (q as u32, o as usize),
            _ => {
                return Err(GaloisRingError::BadDegree(format!(
                    "p^(rm) = {p}^({r}·{m}) exceeds the supported order {MAX_ORDER}"
                )))
            }
        };
        let h = match h {
            Some(h) => {
                if h.len() != m + 1 {
                    return Err(GaloisRingError::BadDegree(format!(
                        "h has {} coefficients, expected m + 1 = {}",
                        h.len(),
                        m + 1
                    )));
                }
                if h[m] != 1 {
                    return Err(GaloisRingError::BadDegree(format!(
                        "h = {} is not monic",
                        poly_text(&h)
                    )));
                }
                if let Some(&c) = h.iter().find(|&&c| c >= modulus) {
                    return Err(GaloisRingError::BadDegree(format!(
                        "coefficient {c} of h is not reduced modulo {modulus}"
                    )));
                }
                if !is_irreducible_mod_p(&h, p) {
                    return Err(GaloisRingError::NotBasicIrreducible { poly: poly_text(&h), p });
                }
                h
            }
            None => monic_polys(p, m)
                .find(|f| is_irreducible_mod_p(f, p))
                .expect("irreducible polynomials exist in every degree"),
        };
        Ok(GaloisRing { p, r, m, modulus, order, h })
    }

    pub fn p(&self) -> u32 {
        self.p
    }
    pub fn r(&self) -> u32 {
        self.r
    }
    pub fn m(&self) -> usize {
        self.m
    }
    pub fn h(&self) -> &[u32] {
        &self.h
    }

    /// The characteristic `p^r`.
    pub fn characteristic(&self) -> u32 {
        self.modulus
    }

    pub fn descriptor(&self) -> RingDescriptor {
        RingDescriptor { p: self.p, r: self.r, m: self.m, h: Some(self.h.clone()) }
    }

    /// `p^{rm} - p^{(r-1)m}`.
    pub fn unit_count(&self) -> usize {
        self.order - (self.p as usize).pow((self.r - 1) * self.m as u32)
    }

    pub fn h_text(&self) -> String {
        poly_text(&self.h)
    }

    /// Builds an element from already-reduced coordinates.
    pub fn element(&self, coeffs: &[u32]) -> Result<GrElement, GaloisRingError> {
        if coeffs.len() != self.m || coeffs.iter().any(|&c| c >= self.modulus) {
            return Err(GaloisRingError::RingMismatch(format_coeffs(coeffs)));
        }
        Ok(GrElement::from_slice(coeffs))
    }

    /// Builds an element, reducing each coordinate modulo `p^r`.
    pub fn element_reduced(&self, coeffs: &[i64]) -> Result<GrElement, GaloisRingError> {
        if coeffs.len() != self.m {
            return Err(GaloisRingError::RingMismatch(format!("{coeffs:?}")));
        }
        let q = self.modulus as i64;
        let c: Vec<u32> = coeffs.iter().map(|&x| x.rem_euclid(q) as u32).collect();
        Ok(GrElement::from_slice(&c))
    }

    /// The integer `n` as an element (`n · 1`).
    pub fn scalar(&self, n: i64) -> GrElement {
        let mut c = vec![0i64; self.m];
        c[0] = n;
        self.element_reduced(&c).expect("length matches")
    }

    /// `ω`, or `ω^0 = 1` when `m = 1`.
    pub fn omega_power(&self, e: usize) -> GrElement {
        let mut x = self.one();
        let omega = if self.m == 1 {
            self.one()
        } else {
            let mut c = vec![0u32; self.m];
            c[1] = 1;
            GrElement::from_slice(&c)
        };
        for _ in 0..e {
            x = self.mul(&x, &omega);
        }
        x
    }

    pub fn contains(&self, x: &GrElement) -> bool {
        x.len as usize == self.m && x.coeffs().iter().all(|&c| c < self.modulus)
    }

    fn check(&self, x: &GrElement) -> Result<(), GaloisRingError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(GaloisRingError::RingMismatch(format!("{x:?}")))
        }
    }

    pub fn try_add(&self, x: &GrElement, y: &GrElement) -> Result<GrElement, GaloisRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn try_sub(&self, x: &GrElement, y: &GrElement) -> Result<GrElement, GaloisRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(FiniteRing::sub(self, x, y))
    }

    pub fn try_mul(&self, x: &GrElement, y: &GrElement) -> Result<GrElement, GaloisRingError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    /// True iff `x` lies in the ideal `(p^e)`, i.e. every coordinate is divisible by `p^e`.
    pub fn in_power_ideal(&self, x: &GrElement, e: u32) -> bool {
        let d = self.p.pow(e);
        x.coeffs().iter().all(|&c| c % d == 0)
    }

    /// Average value of the closed-form homogeneous weight: `(p^m - 1) p^{m(r-2)}`.
    pub fn gamma(&self) -> Rational {
        let pm = (self.p as i64).pow(self.m as u32);
        Rational::from_integer(pm - 1) * rational::pow(self.p as i64, self.m as i64 * (self.r as i64 - 2))
    }

    /// Closed-form homogeneous weight of a Galois ring as a chain ring.
    pub fn hom_weight(&self, x: &GrElement) -> Rational {
        if x.is_zero() {
            rational::zero()
        } else if self.in_power_ideal(x, self.r - 1) {
            Rational::from_integer((self.p as i64).pow(self.m as u32 * (self.r - 1)))
        } else {
            self.gamma()
        }
    }

    /// Parses `[b0,b1,...]`, or a bare integer when `m = 1`. Coordinates are reduced modulo `p^r`.
    pub fn parse_element(&self, text: &str) -> Result<GrElement, GaloisRingError> {
        let err = |reason: &str| GaloisRingError::Parse { text: text.to_string(), reason: reason.to_string() };
        let t = text.trim();
        let coeffs: Vec<i64> = if let Some(inner) = t.strip_prefix('[') {
            let inner = inner.strip_suffix(']').ok_or_else(|| err("missing ']'"))?;
            inner
                .split(',')
                .map(|s| s.trim().parse::<i64>().map_err(|_| err("bad coefficient")))
                .collect::<Result<_, _>>()?
        } else {
            if self.m != 1 {
                return Err(err("bare integers are only accepted when m = 1"));
            }
            vec![t.parse::<i64>().map_err(|_| err("bad integer"))?]
        };
        if coeffs.len() != self.m {
            return Err(err(&format!("expected {} coefficients", self.m)));
        }
        self.element_reduced(&coeffs)
    }
}

impl FiniteRing for GaloisRing {
    type Element = GrElement;

    fn order(&self) -> usize {
        self.order
    }

    /// Lexicographic order of coordinate lists, `b_0` most significant.
    fn element_at(&self, mut index: usize) -> GrElement {
        let q = self.modulus as usize;
        let mut c = [0u32; MAX_DEGREE];
        for slot in (0..self.m).rev() {
            c[slot] = (index % q) as u32;
            index /= q;
        }
        GrElement { len: self.m as u8, coeffs: c }
    }

    fn index_of(&self, x: &GrElement) -> usize {
        let q = self.modulus as usize;
        x.coeffs().iter().fold(0, |acc, &c| acc * q + c as usize)
    }

    fn zero(&self) -> GrElement {
        GrElement { len: self.m as u8, coeffs: [0; MAX_DEGREE] }
    }

    fn one(&self) -> GrElement {
        let mut c = [0; MAX_DEGREE];
        c[0] = 1 % self.modulus;
        GrElement { len: self.m as u8, coeffs: c }
    }

    fn add(&self, x: &GrElement, y: &GrElement) -> GrElement {
        debug_assert!(self.contains(x) && self.contains(y));
        let q = self.modulus as u64;
        let mut out = *x;
        for i in 0..self.m {
            out.coeffs[i] = ((x.coeffs[i] as u64 + y.coeffs[i] as u64) % q) as u32;
        }
        out
    }

    fn neg(&self, x: &GrElement) -> GrElement {
        let q = self.modulus;
        let mut out = *x;
        for i in 0..self.m {
            out.coeffs[i] = if x.coeffs[i] == 0 { 0 } else { q - x.coeffs[i] };
        }
        out
    }

    /// Polynomial product reduced by the monic `h` and modulo `p^r`.
    fn mul(&self, x: &GrElement, y: &GrElement) -> GrElement {
        debug_assert!(self.contains(x) && self.contains(y));
        let q = self.modulus as u64;
        let m = self.m;
        if m == 1 {
            let mut out = *x;
            out.coeffs[0] = ((x.coeffs[0] as u64 * y.coeffs[0] as u64) % q) as u32;
            return out;
        }
        let mut prod = [0u64; 2 * MAX_DEGREE];
        for i in 0..m {
            let a = x.coeffs[i] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] = (prod[i + j] + a * y.coeffs[j] as u64) % q;
            }
        }
        for d in (m..2 * m - 1).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for t in 0..m {
                prod[d - m + t] = (prod[d - m + t] + (q - c) * self.h[t] as u64) % q;
            }
        }
        let mut out = GrElement { len: m as u8, coeffs: [0; MAX_DEGREE] };
        for i in 0..m {
            out.coeffs[i] = prod[i] as u32;
        }
        out
    }

    /// Units are exactly the elements outside the maximal ideal `(p)`.
    fn is_unit(&self, x: &GrElement) -> bool {
        x.coeffs().iter().any(|&c| c % self.p != 0)
    }

    /// `χ(x) = exp(2πi b_{m-1} / p^r)`.
    fn character(&self, x: &GrElement) -> CharacterValue {
        CharacterValue::new(x.coeffs[self.m - 1], self.modulus)
    }

    fn additive_generators(&self) -> Vec<GrElement> {
        (0..self.m)
            .map(|i| {
                let mut c = [0; MAX_DEGREE];
                c[i] = 1;
                GrElement { len: self.m as u8, coeffs: c }
            })
            .collect()
    }

    fn format_element(&self, x: &GrElement) -> String {
        format_coeffs(x.coeffs())
    }
}
