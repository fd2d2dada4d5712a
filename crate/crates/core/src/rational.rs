//! Exact rational helpers. Weights and distances never touch floating point.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serializer};

pub type Rational = Ratio<i64>;

/// Formats as `"num/den"`, or a bare integer when the denominator is one.
pub fn format(q: &Rational) -> String {
    q.to_string()
}

pub fn parse(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: i64 = n.trim().parse().ok()?;
            let d: i64 = d.trim().parse().ok()?;
            if d == 0 {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<i64>().ok().map(Rational::from_integer),
    }
}

/// Exact `base^exp` for a possibly negative exponent.
pub fn pow(base: i64, exp: i64) -> Rational {
    let b = Rational::from_integer(base);
    if exp >= 0 {
        (0..exp).fold(Rational::one(), |acc, _| acc * b)
    } else {
        Rational::one() / (0..-exp).fold(Rational::one(), |acc, _| acc * b)
    }
}

pub fn is_integer(q: &Rational) -> bool {
    q.denom().is_one()
}

pub fn zero() -> Rational {
    Rational::zero()
}

/// Serde adapter: rationals travel as strings so that no float ever appears.
pub mod serde_string {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format(q))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}")))
    }
}

pub mod serde_string_opt {
    use super::*;

    pub fn serialize<S: Serializer>(q: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match q {
            Some(q) => s.serialize_some(&format(q)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let s = Option::<String>::deserialize(d)?;
        s.map(|s| parse(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        assert_eq!(parse("75/16"), Some(Rational::new(75, 16)));
        assert_eq!(parse(" 4 "), Some(Rational::from_integer(4)));
        assert_eq!(parse("1/0"), None);
        assert_eq!(format(&Rational::new(75, 16)), "75/16");
        assert_eq!(format(&Rational::new(8, 2)), "4");
    }

    #[test]
    fn negative_powers() {
        assert_eq!(pow(3, -1), Rational::new(1, 3));
        assert_eq!(pow(2, 3), Rational::from_integer(8));
        assert_eq!(pow(5, 0), Rational::one());
    }
}
