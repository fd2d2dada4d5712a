//! Quaternion rings `H_{a,b}(R)` over a Galois ring `R`.
//!
//! Elements are `x0 + x1 i + x2 j + x3 k` with `i² = a`, `j² = b`, `ij = -ji = k`.
//! Associativity forces the rest of the table:
//!
//! ```text
//!   k² = -ab   ik = aj   ki = -aj   jk = -bi   kj = bi
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::galois::{GaloisRing, GaloisRingError, GrElement, RingDescriptor};
use crate::ring::{CharacterValue, FiniteRing};

/// Rings above this order are not classified by enumeration.
pub const CLASSIFY_LIMIT: usize = 1 << 20;
/// Zero divisors are found by pairwise products up to this order, above it by the unit criterion.
const PAIRWISE_LIMIT: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuaternionError {
    #[error(transparent)]
    Base(#[from] GaloisRingError),
    #[error("quaternion parameter {name} = {value} is not a unit of the base ring")]
    NonUnitParameter { name: &'static str, value: String },
    #[error("quaternion {0} does not belong to this ring")]
    RingMismatch(String),
    #[error("ring of order {order} is too large (limit {limit})")]
    TooLarge { order: u128, limit: u128 },
    #[error("cannot parse quaternion {text:?}: {reason}")]
    Parse { text: String, reason: String },
}

/// `x0 + x1 i + x2 j + x3 k`, stored as its four base-ring coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Quat(pub [GrElement; 4]);

impl Quat {
    pub fn coords(&self) -> &[GrElement; 4] {
        &self.0
    }

    pub fn scalar_part(&self) -> &GrElement {
        &self.0[0]
    }
}

impl fmt::Debug for Quat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?},{:?},{:?},{:?})", self.0[0], self.0[1], self.0[2], self.0[3])
    }
}

/// Element kinds found by [`QuatRing::classify`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub units: usize,
    pub zero_divisors: usize,
    pub idempotents: usize,
}

/// A coordinate given in a JSON descriptor: an integer, a coordinate list or element text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ScalarText {
    Int(i64),
    List(Vec<i64>),
    Text(String),
}

impl ScalarText {
    fn parse(&self, base: &GaloisRing) -> Result<GrElement, GaloisRingError> {
        match self {
            ScalarText::Int(n) => {
                let mut c = vec![0i64; base.m()];
                c[0] = *n;
                base.element_reduced(&c)
            }
            ScalarText::List(c) => base.element_reduced(c),
            ScalarText::Text(t) => base.parse_element(t),
        }
    }
}

/// JSON descriptor of a quaternion ring: the base-ring fields plus optional `a`, `b`
/// (both default to `-1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuatDescriptor {
    #[serde(flatten)]
    pub base: RingDescriptor,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a: Option<ScalarText>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<ScalarText>,
}

impl QuatDescriptor {
    pub fn build(&self) -> Result<QuatRing, QuaternionError> {
        let base = self.base.build()?;
        let a = match &self.a {
            Some(a) => a.parse(&base)?,
            None => base.scalar(-1),
        };
        let b = match &self.b {
            Some(b) => b.parse(&base)?,
            None => base.scalar(-1),
        };
        QuatRing::new(base, a, b)
    }
}

/// The quaternion ring `H_{a,b}(R)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatRing {
    base: GaloisRing,
    a: GrElement,
    b: GrElement,
    ab: GrElement,
    base_order: usize,
}

impl QuatRing {
    pub fn new(base: GaloisRing, a: GrElement, b: GrElement) -> Result<Self, QuaternionError> {
        for (name, v) in [("a", &a), ("b", &b)] {
            if !base.contains(v) {
                return Err(QuaternionError::RingMismatch(format!("{v:?}")));
            }
            if !base.is_unit(v) {
                return Err(QuaternionError::NonUnitParameter { name, value: base.format_element(v) });
            }
        }
        let ab = base.mul(&a, &b);
        let base_order = base.order();
        Ok(QuatRing { base, a, b, ab, base_order })
    }

    /// `H(R)`, i.e. `a = b = -1`.
    pub fn hamilton(base: GaloisRing) -> Self {
        let minus_one = base.scalar(-1);
        QuatRing::new(base, minus_one, minus_one).expect("-1 is a unit")
    }

    pub fn base(&self) -> &GaloisRing {
        &self.base
    }
    pub fn a(&self) -> &GrElement {
        &self.a
    }
    pub fn b(&self) -> &GrElement {
        &self.b
    }

    pub fn descriptor(&self) -> QuatDescriptor {
        QuatDescriptor {
            base: self.base.descriptor(),
            a: Some(ScalarText::Text(self.base.format_element(&self.a))),
            b: Some(ScalarText::Text(self.base.format_element(&self.b))),
        }
    }

    /// `|R|^4` without overflow concerns.
    pub fn order_u128(&self) -> u128 {
        (self.base_order as u128).pow(4)
    }

    pub fn quat(&self, x0: GrElement, x1: GrElement, x2: GrElement, x3: GrElement) -> Quat {
        Quat([x0, x1, x2, x3])
    }

    /// Embeds a base-ring element as `c + 0i + 0j + 0k`.
    pub fn scalar(&self, c: GrElement) -> Quat {
        let z = self.base.zero();
        Quat([c, z, z, z])
    }

    pub fn from_ints(&self, c: [i64; 4]) -> Quat {
        Quat(c.map(|n| self.base.scalar(n)))
    }

    pub fn i(&self) -> Quat {
        self.from_ints([0, 1, 0, 0])
    }
    pub fn j(&self) -> Quat {
        self.from_ints([0, 0, 1, 0])
    }
    pub fn k(&self) -> Quat {
        self.from_ints([0, 0, 0, 1])
    }

    /// Multiplies every coordinate by a base-ring scalar (central in the quaternions).
    pub fn scale(&self, c: &GrElement, x: &Quat) -> Quat {
        Quat(x.0.map(|xi| self.base.mul(c, &xi)))
    }

    pub fn contains(&self, x: &Quat) -> bool {
        x.0.iter().all(|c| self.base.contains(c))
    }

    fn check(&self, x: &Quat) -> Result<(), QuaternionError> {
        if self.contains(x) {
            Ok(())
        } else {
            Err(QuaternionError::RingMismatch(format!("{x:?}")))
        }
    }

    pub fn try_add(&self, x: &Quat, y: &Quat) -> Result<Quat, QuaternionError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.add(x, y))
    }

    pub fn try_sub(&self, x: &Quat, y: &Quat) -> Result<Quat, QuaternionError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.sub(x, y))
    }

    pub fn try_mul(&self, x: &Quat, y: &Quat) -> Result<Quat, QuaternionError> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul(x, y))
    }

    pub fn conj(&self, x: &Quat) -> Quat {
        let g = &self.base;
        Quat([x.0[0], g.neg(&x.0[1]), g.neg(&x.0[2]), g.neg(&x.0[3])])
    }

    /// Reduced norm `x0² - a x1² - b x2² + ab x3²`.
    pub fn norm(&self, x: &Quat) -> GrElement {
        let g = &self.base;
        let sq = |c: &GrElement| g.mul(c, c);
        let t0 = sq(&x.0[0]);
        let t1 = g.mul(&self.a, &sq(&x.0[1]));
        let t2 = g.mul(&self.b, &sq(&x.0[2]));
        let t3 = g.mul(&self.ab, &sq(&x.0[3]));
        g.add(&g.sub(&g.sub(&t0, &t1), &t2), &t3)
    }

    /// Counts units, zero divisors (one-sided) and idempotents by enumeration.
    pub fn classify(&self) -> Result<Classification, QuaternionError> {
        let order = self.order_u128();
        if order > CLASSIFY_LIMIT as u128 {
            return Err(QuaternionError::TooLarge { order, limit: CLASSIFY_LIMIT as u128 });
        }
        let elems: Vec<Quat> = self.elements().collect();
        let zero = self.zero();
        let mut out = Classification { units: 0, zero_divisors: 0, idempotents: 0 };
        for x in &elems {
            if self.mul(x, x) == *x {
                out.idempotents += 1;
            }
            if self.is_unit(x) {
                out.units += 1;
            }
            if *x == zero {
                continue;
            }
            let zd = if elems.len() <= PAIRWISE_LIMIT {
                elems
                    .iter()
                    .any(|y| *y != zero && (self.mul(x, y) == zero || self.mul(y, x) == zero))
            } else {
                // In a finite ring every nonzero non-unit kills something.
                !self.is_unit(x)
            };
            out.zero_divisors += zd as usize;
        }
        Ok(out)
    }

    /// Parses `(c0,c1,c2,c3)` with base-ring element text per coordinate, or for `m = 1`
    /// a sum of terms such as `1+2i+j-k`.
    pub fn parse(&self, text: &str) -> Result<Quat, QuaternionError> {
        let t = text.trim();
        let err = |reason: &str| QuaternionError::Parse { text: text.to_string(), reason: reason.to_string() };
        if let Some(inner) = t.strip_prefix('(') {
            let inner = inner.strip_suffix(')').ok_or_else(|| err("missing ')'"))?;
            let parts = split_top_level(inner);
            if parts.len() != 4 {
                return Err(err("expected four coordinates"));
            }
            let mut c = [self.base.zero(); 4];
            for (slot, part) in c.iter_mut().zip(parts) {
                *slot = self.base.parse_element(part)?;
            }
            return Ok(Quat(c));
        }
        if self.base.m() != 1 {
            return Err(err("term syntax is only accepted when m = 1; use (c0,c1,c2,c3)"));
        }
        let mut acc = [0i64; 4];
        let compact: String = t.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut rest = compact.as_str();
        while !rest.is_empty() {
            let (sign, body) = match rest.as_bytes()[0] {
                b'+' => (1, &rest[1..]),
                b'-' => (-1, &rest[1..]),
                _ => (1, rest),
            };
            let end = body.find(['+', '-']).unwrap_or(body.len());
            let term = &body[..end];
            rest = &body[end..];
            if term.is_empty() {
                return Err(err("empty term"));
            }
            let (digits, slot) = match term.as_bytes()[term.len() - 1] {
                b'i' => (&term[..term.len() - 1], 1),
                b'j' => (&term[..term.len() - 1], 2),
                b'k' => (&term[..term.len() - 1], 3),
                _ => (term, 0),
            };
            let digits = digits.strip_suffix('*').unwrap_or(digits);
            let coeff: i64 = if digits.is_empty() {
                1
            } else {
                digits.parse().map_err(|_| err("bad coefficient"))?
            };
            acc[slot] += sign * coeff;
        }
        Ok(self.from_ints(acc))
    }

    /// `1+2i+j` style text for `m = 1`, canonical tuple text otherwise.
    pub fn pretty(&self, x: &Quat) -> String {
        if self.base.m() != 1 {
            return self.format_element(x);
        }
        let mut out = String::new();
        for (c, unit) in x.0.iter().zip(["", "i", "j", "k"]) {
            let v = c.coeffs()[0];
            if v == 0 {
                continue;
            }
            if !out.is_empty() {
                out.push('+');
            }
            if v != 1 || unit.is_empty() {
                out.push_str(&v.to_string());
            }
            out.push_str(unit);
        }
        if out.is_empty() {
            "0".into()
        } else {
            out
        }
    }
}

fn split_top_level(s: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&s[start..]);
    parts
}

impl FiniteRing for QuatRing {
    type Element = Quat;

    fn order(&self) -> usize {
        self.base_order.pow(4)
    }

    /// Lexicographic in `(x0, x1, x2, x3)`, each coordinate in base-ring order.
    fn element_at(&self, index: usize) -> Quat {
        let n = self.base_order;
        Quat([
            self.base.element_at(index / (n * n * n)),
            self.base.element_at(index / (n * n) % n),
            self.base.element_at(index / n % n),
            self.base.element_at(index % n),
        ])
    }

    fn index_of(&self, x: &Quat) -> usize {
        let n = self.base_order;
        x.0.iter().fold(0, |acc, c| acc * n + self.base.index_of(c))
    }

    fn zero(&self) -> Quat {
        let z = self.base.zero();
        Quat([z; 4])
    }

    fn one(&self) -> Quat {
        self.scalar(self.base.one())
    }

    fn add(&self, x: &Quat, y: &Quat) -> Quat {
        let g = &self.base;
        Quat([0, 1, 2, 3].map(|t| g.add(&x.0[t], &y.0[t])))
    }

    fn neg(&self, x: &Quat) -> Quat {
        Quat(x.0.map(|c| self.base.neg(&c)))
    }

    fn mul(&self, x: &Quat, y: &Quat) -> Quat {
        let g = &self.base;
        let [x0, x1, x2, x3] = &x.0;
        let [y0, y1, y2, y3] = &y.0;
        let m = |p: &GrElement, q: &GrElement| g.mul(p, q);
        // 1: x0y0 + a x1y1 + b x2y2 - ab x3y3
        let c0 = g.sub(
            &g.add(&g.add(&m(x0, y0), &m(&self.a, &m(x1, y1))), &m(&self.b, &m(x2, y2))),
            &m(&self.ab, &m(x3, y3)),
        );
        // i: x0y1 + x1y0 - b x2y3 + b x3y2
        let c1 = g.add(
            &g.add(&m(x0, y1), &m(x1, y0)),
            &m(&self.b, &g.sub(&m(x3, y2), &m(x2, y3))),
        );
        // j: x0y2 + x2y0 + a x1y3 - a x3y1
        let c2 = g.add(
            &g.add(&m(x0, y2), &m(x2, y0)),
            &m(&self.a, &g.sub(&m(x1, y3), &m(x3, y1))),
        );
        // k: x0y3 + x3y0 + x1y2 - x2y1
        let c3 = g.add(&g.add(&m(x0, y3), &m(x3, y0)), &g.sub(&m(x1, y2), &m(x2, y1)));
        Quat([c0, c1, c2, c3])
    }

    /// Over a commutative local base, `x` is a unit iff its reduced norm is.
    fn is_unit(&self, x: &Quat) -> bool {
        self.base.is_unit(&self.norm(x))
    }

    /// `χ*(x) = χ(x0)`.
    fn character(&self, x: &Quat) -> CharacterValue {
        self.base.character(&x.0[0])
    }

    fn additive_generators(&self) -> Vec<Quat> {
        let z = self.base.zero();
        let mut out = Vec::new();
        for slot in 0..4 {
            for g in self.base.additive_generators() {
                let mut c = [z; 4];
                c[slot] = g;
                out.push(Quat(c));
            }
        }
        out
    }

    fn format_element(&self, x: &Quat) -> String {
        let parts: Vec<String> = x.0.iter().map(|c| self.base.format_element(c)).collect();
        format!("({})", parts.join(","))
    }
}
