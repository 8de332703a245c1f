use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// The four supported coefficient rings.
///
/// Every scalar and matrix carries one of these tags; mixing tags is a
/// `RingMismatch` error rather than a silent coercion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BaseRing {
    /// The ring of integers.
    Integers,
    /// Integers modulo n, n >= 2. The modulus must fit in a u64.
    IntegersMod(u64),
    /// The field of rational numbers.
    Rationals,
    /// Univariate polynomials over the rationals in the variable t.
    RationalPolynomials,
}

impl BaseRing {
    pub fn is_field(self) -> bool {
        match self {
            BaseRing::Rationals => true,
            BaseRing::IntegersMod(n) => is_prime(n),
            _ => false,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, BaseRing::IntegersMod(_))
    }

    /// Canonical text token used in JSON files and catalog URIs.
    pub fn token(self) -> String {
        match self {
            BaseRing::Integers => "Z".to_string(),
            BaseRing::IntegersMod(n) => format!("Z/{n}"),
            BaseRing::Rationals => "Q".to_string(),
            BaseRing::RationalPolynomials => "Q[t]".to_string(),
        }
    }

    /// Parses a ring token. Accepts `Z`, `Q`, `Q[t]`, `Z/n`, and the alias
    /// `Fp` for `Z/p` with p prime.
    pub fn parse_token(s: &str) -> Result<BaseRing> {
        match s {
            "Z" => return Ok(BaseRing::Integers),
            "Q" => return Ok(BaseRing::Rationals),
            "Q[t]" => return Ok(BaseRing::RationalPolynomials),
            _ => {}
        }
        if let Some(rest) = s.strip_prefix("Z/") {
            let n: u64 = rest
                .parse()
                .map_err(|_| Error::Invalid(format!("bad modulus in ring token {s:?}")))?;
            if n < 2 {
                return Err(Error::Invalid("modulus must be >= 2".to_string()));
            }
            return Ok(BaseRing::IntegersMod(n));
        }
        if let Some(rest) = s.strip_prefix('F') {
            let n: u64 = rest
                .parse()
                .map_err(|_| Error::Invalid(format!("bad ring token {s:?}")))?;
            if !is_prime(n) {
                return Err(Error::NotPrime);
            }
            return Ok(BaseRing::IntegersMod(n));
        }
        Err(Error::Invalid(format!("unknown ring token {s:?}")))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.checked_mul(d).map_or(false, |sq| sq <= n) {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn token_round_trip() {
        for ring in [
            BaseRing::Integers,
            BaseRing::Rationals,
            BaseRing::RationalPolynomials,
            BaseRing::IntegersMod(6),
            BaseRing::IntegersMod(97),
        ] {
            assert_eq!(BaseRing::parse_token(&ring.token()).unwrap(), ring);
        }
        assert_eq!(
            BaseRing::parse_token("F3").unwrap(),
            BaseRing::IntegersMod(3)
        );
        assert!(BaseRing::parse_token("F4").is_err());
        assert!(BaseRing::parse_token("Z/1").is_err());
    }

    #[test]
    fn field_detection() {
        assert!(BaseRing::Rationals.is_field());
        assert!(BaseRing::IntegersMod(5).is_field());
        assert!(!BaseRing::IntegersMod(6).is_field());
        assert!(!BaseRing::Integers.is_field());
        assert!(!BaseRing::RationalPolynomials.is_field());
    }

    #[test]
    fn primality() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }
}
