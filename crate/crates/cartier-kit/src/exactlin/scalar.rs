use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exactlin::ring::BaseRing;

/// An exact scalar in one of the supported rings, always kept in canonical
/// form: residues reduced into [0, n), rationals reduced with positive
/// denominator, polynomials with no trailing zero coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scalar {
    ring: BaseRing,
    value: Value,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    Int(BigInt),
    Mod(u64),
    Rat(BigRational),
    /// Coefficients by ascending degree; empty vector is the zero polynomial.
    Poly(Vec<BigRational>),
}

fn strip_poly(mut coeffs: Vec<BigRational>) -> Vec<BigRational> {
    while coeffs.last().map_or(false, |c| c.is_zero()) {
        coeffs.pop();
    }
    coeffs
}

fn mod_reduce(v: &BigInt, n: u64) -> u64 {
    let n_big = BigInt::from(n);
    let r = v.mod_floor(&n_big);
    let (_, digits) = r.to_u64_digits();
    match digits.len() {
        0 => 0,
        1 => digits[0],
        _ => unreachable!("residue below a u64 modulus fits in one digit"),
    }
}

fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// Extended gcd on u64, returning (g, x) with x * a == g (mod n).
fn inverse_mod(a: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, a as i128);
    let (mut s0, mut s1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return None;
    }
    Some(s0.rem_euclid(n as i128) as u64)
}

impl Scalar {
    pub fn ring(&self) -> BaseRing {
        self.ring
    }

    pub fn zero(ring: BaseRing) -> Scalar {
        let value = match ring {
            BaseRing::Integers => Value::Int(BigInt::zero()),
            BaseRing::IntegersMod(_) => Value::Mod(0),
            BaseRing::Rationals => Value::Rat(BigRational::zero()),
            BaseRing::RationalPolynomials => Value::Poly(Vec::new()),
        };
        Scalar { ring, value }
    }

    pub fn one(ring: BaseRing) -> Scalar {
        Scalar::from_i64(ring, 1)
    }

    pub fn from_i64(ring: BaseRing, v: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(v))
    }

    pub fn from_bigint(ring: BaseRing, v: BigInt) -> Scalar {
        let value = match ring {
            BaseRing::Integers => Value::Int(v),
            BaseRing::IntegersMod(n) => Value::Mod(mod_reduce(&v, n)),
            BaseRing::Rationals => Value::Rat(BigRational::from_integer(v)),
            BaseRing::RationalPolynomials => {
                Value::Poly(strip_poly(vec![BigRational::from_integer(v)]))
            }
        };
        Scalar { ring, value }
    }

    pub fn from_rational(ring: BaseRing, v: BigRational) -> Result<Scalar> {
        match ring {
            BaseRing::Rationals => Ok(Scalar {
                ring,
                value: Value::Rat(v),
            }),
            BaseRing::RationalPolynomials => Ok(Scalar {
                ring,
                value: Value::Poly(strip_poly(vec![v])),
            }),
            _ if v.is_integer() => Ok(Scalar::from_bigint(ring, v.to_integer())),
            _ => Err(Error::Invalid(
                "non-integral rational in an integral ring".to_string(),
            )),
        }
    }

    /// Polynomial in Q[t] from coefficients by ascending degree.
    pub fn poly(coeffs: Vec<BigRational>) -> Scalar {
        Scalar {
            ring: BaseRing::RationalPolynomials,
            value: Value::Poly(strip_poly(coeffs)),
        }
    }

    /// The monomial t in Q[t].
    pub fn t() -> Scalar {
        Scalar::poly(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.is_zero(),
            Value::Mod(v) => *v == 0,
            Value::Rat(v) => v.is_zero(),
            Value::Poly(c) => c.is_empty(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.value {
            Value::Int(v) => v.is_one(),
            Value::Mod(v) => {
                *v == 1
                    || matches!(self.ring, BaseRing::IntegersMod(n) if n == 1)
            }
            Value::Rat(v) => v.is_one(),
            Value::Poly(c) => c.len() == 1 && c[0].is_one(),
        }
    }

    fn check_ring(&self, other: &Scalar) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a + b),
            (Value::Mod(a), Value::Mod(b)) => {
                let n = self.modulus();
                Value::Mod(((*a as u128 + *b as u128) % n as u128) as u64)
            }
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a + b),
            (Value::Poly(a), Value::Poly(b)) => {
                let len = a.len().max(b.len());
                let mut out = Vec::with_capacity(len);
                for i in 0..len {
                    let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
                    let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
                    out.push(x + y);
                }
                Value::Poly(strip_poly(out))
            }
            _ => unreachable!("ring tag and value variant always agree"),
        };
        Ok(Scalar {
            ring: self.ring,
            value,
        })
    }

    pub fn sub(&self, other: &Scalar) -> Result<Scalar> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Scalar {
        let value = match &self.value {
            Value::Int(a) => Value::Int(-a),
            Value::Mod(a) => {
                let n = self.modulus();
                Value::Mod(if *a == 0 { 0 } else { n - *a })
            }
            Value::Rat(a) => Value::Rat(-a),
            Value::Poly(a) => Value::Poly(a.iter().map(|c| -c).collect()),
        };
        Scalar {
            ring: self.ring,
            value,
        }
    }

    pub fn mul(&self, other: &Scalar) -> Result<Scalar> {
        self.check_ring(other)?;
        let value = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => Value::Int(a * b),
            (Value::Mod(a), Value::Mod(b)) => Value::Mod(mul_mod(*a, *b, self.modulus())),
            (Value::Rat(a), Value::Rat(b)) => Value::Rat(a * b),
            (Value::Poly(a), Value::Poly(b)) => {
                if a.is_empty() || b.is_empty() {
                    Value::Poly(Vec::new())
                } else {
                    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
                    for (i, x) in a.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        for (j, y) in b.iter().enumerate() {
                            out[i + j] += x * y;
                        }
                    }
                    Value::Poly(strip_poly(out))
                }
            }
            _ => unreachable!("ring tag and value variant always agree"),
        };
        Ok(Scalar {
            ring: self.ring,
            value,
        })
    }

    /// Multiplicative inverse; `NonUnit` when the element has none.
    pub fn inv(&self) -> Result<Scalar> {
        let value = match &self.value {
            Value::Int(a) => {
                if a.is_one() || (-a).is_one() {
                    Value::Int(a.clone())
                } else {
                    return Err(Error::NonUnit);
                }
            }
            Value::Mod(a) => match inverse_mod(*a, self.modulus()) {
                Some(x) => Value::Mod(x),
                None => return Err(Error::NonUnit),
            },
            Value::Rat(a) => {
                if a.is_zero() {
                    return Err(Error::NonUnit);
                }
                Value::Rat(a.recip())
            }
            Value::Poly(c) => {
                if c.len() != 1 {
                    return Err(Error::NonUnit);
                }
                Value::Poly(vec![c[0].recip()])
            }
        };
        Ok(Scalar {
            ring: self.ring,
            value,
        })
    }

    fn modulus(&self) -> u64 {
        match self.ring {
            BaseRing::IntegersMod(n) => n,
            _ => unreachable!("modulus requested for a non-modular scalar"),
        }
    }

    /// Residue value for scalars over Z/n.
    pub fn residue(&self) -> Option<u64> {
        match &self.value {
            Value::Mod(v) => Some(*v),
            _ => None,
        }
    }

    /// Euclidean division with the canonical remainder:
    /// integers get r in [0, |b|), rationals r = 0, polynomials deg r < deg b.
    /// Over Z/n it is plain integer division of residues, which is the right
    /// reduction step against Howell-form pivots (divisors of n).
    pub fn div_rem(&self, other: &Scalar) -> Result<(Scalar, Scalar)> {
        self.check_ring(other)?;
        if other.is_zero() {
            return Err(Error::Invalid("division by zero".to_string()));
        }
        let (q, r) = match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => {
                let r = a.mod_floor(&b.abs());
                let q = (a - &r) / b;
                (Value::Int(q), Value::Int(r))
            }
            (Value::Mod(a), Value::Mod(b)) => (Value::Mod(a / b), Value::Mod(a % b)),
            (Value::Rat(a), Value::Rat(b)) => (Value::Rat(a / b), Value::Rat(BigRational::zero())),
            (Value::Poly(a), Value::Poly(b)) => {
                let mut rem = a.clone();
                let mut quot = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
                let lead = b.last().expect("divisor is nonzero");
                while rem.len() >= b.len() && !rem.is_empty() {
                    let shift = rem.len() - b.len();
                    let coef = rem.last().expect("nonempty") / lead;
                    for (i, bc) in b.iter().enumerate() {
                        let delta = &coef * bc;
                        rem[shift + i] -= delta;
                    }
                    rem = strip_poly(rem);
                    quot[shift] = coef;
                }
                (Value::Poly(strip_poly(quot)), Value::Poly(rem))
            }
            _ => unreachable!("ring tag and value variant always agree"),
        };
        Ok((
            Scalar {
                ring: self.ring,
                value: q,
            },
            Scalar {
                ring: self.ring,
                value: r,
            },
        ))
    }

    /// Euclidean size used to drive gcd elimination: |a| for integers,
    /// residue value for Z/n, 0/1 for field elements, 1 + deg for polynomials.
    pub fn euclidean_size(&self) -> BigInt {
        match &self.value {
            Value::Int(a) => a.abs(),
            Value::Mod(a) => BigInt::from(*a),
            Value::Rat(a) => {
                if a.is_zero() {
                    BigInt::zero()
                } else {
                    BigInt::one()
                }
            }
            Value::Poly(c) => BigInt::from(c.len()),
        }
    }

    /// The unit u making u * self the canonical associate: positive for
    /// integers, monic for polynomials, 1 for nonzero field elements. Over
    /// Z/n the canonical associate is gcd(residue, n).
    pub fn canonicalizing_unit(&self) -> Scalar {
        if self.is_zero() {
            return Scalar::one(self.ring);
        }
        match &self.value {
            Value::Int(a) => Scalar::from_i64(self.ring, if a.is_negative() { -1 } else { 1 }),
            Value::Rat(_) | Value::Poly(_) => self
                .leading_unit_part()
                .inv()
                .expect("leading coefficient of a nonzero element is invertible"),
            Value::Mod(a) => {
                let n = self.modulus();
                let d = a.gcd(&n);
                let a1 = a / d;
                let n1 = n / d;
                let u0 = inverse_mod(a1 % n1.max(1), n1.max(1)).unwrap_or(1);
                let mut k = 0u64;
                loop {
                    let cand = (u0 as u128 + k as u128 * n1 as u128) % n as u128;
                    let cand = cand as u64;
                    if cand.gcd(&n) == 1 {
                        return Scalar {
                            ring: self.ring,
                            value: Value::Mod(cand),
                        };
                    }
                    k += 1;
                    assert!(k <= d, "a canonicalizing unit exists for every residue");
                }
            }
        }
    }

    fn leading_unit_part(&self) -> Scalar {
        match &self.value {
            Value::Rat(_) => self.clone(),
            Value::Poly(c) => {
                let lead = c.last().expect("nonzero polynomial").clone();
                Scalar {
                    ring: self.ring,
                    value: Value::Poly(vec![lead]),
                }
            }
            _ => self.clone(),
        }
    }

    /// Canonical string form: decimal for integers and residues, `p/q`
    /// (denominator suppressed when 1) for rationals. Polynomials have no
    /// single-string form; they serialize as coefficient arrays.
    pub fn to_json_string(&self) -> Option<String> {
        match &self.value {
            Value::Int(a) => Some(a.to_string()),
            Value::Mod(a) => Some(a.to_string()),
            Value::Rat(a) => Some(rational_string(a)),
            Value::Poly(_) => None,
        }
    }

    /// Coefficient strings by ascending degree for Q[t] scalars.
    pub fn to_coeff_strings(&self) -> Option<Vec<String>> {
        match &self.value {
            Value::Poly(c) => Some(c.iter().map(rational_string).collect()),
            _ => None,
        }
    }

    /// Parses the canonical string form in the given ring. Accepts signs and
    /// unreduced residues/fractions; the result is reduced.
    pub fn parse(ring: BaseRing, s: &str) -> Result<Scalar> {
        match ring {
            BaseRing::Integers | BaseRing::IntegersMod(_) => {
                let v: BigInt = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad integer scalar {s:?}")))?;
                Ok(Scalar::from_bigint(ring, v))
            }
            BaseRing::Rationals => Ok(Scalar {
                ring,
                value: Value::Rat(parse_rational(s)?),
            }),
            BaseRing::RationalPolynomials => {
                let c = parse_rational(s)?;
                Ok(Scalar::poly(vec![c]))
            }
        }
    }

    pub fn parse_poly(coeffs: &[String]) -> Result<Scalar> {
        let mut out = Vec::with_capacity(coeffs.len());
        for c in coeffs {
            out.push(parse_rational(c)?);
        }
        Ok(Scalar::poly(out))
    }

    /// Total order used only to make enumeration output deterministic.
    pub fn cmp_key(&self, other: &Scalar) -> Ordering {
        match (&self.value, &other.value) {
            (Value::Int(a), Value::Int(b)) => a.cmp(b),
            (Value::Mod(a), Value::Mod(b)) => a.cmp(b),
            (Value::Rat(a), Value::Rat(b)) => a.cmp(b),
            (Value::Poly(a), Value::Poly(b)) => a
                .len()
                .cmp(&b.len())
                .then_with(|| a.iter().rev().cmp(b.iter().rev())),
            _ => Ordering::Equal,
        }
    }
}

fn rational_string(a: &BigRational) -> String {
    if a.denom().is_one() {
        a.numer().to_string()
    } else {
        format!("{}/{}", a.numer(), a.denom())
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = num
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational scalar {s:?}")))?;
    let q: BigInt = den
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("bad rational scalar {s:?}")))?;
    if q.is_zero() {
        return Err(Error::Invalid("zero denominator".to_string()));
    }
    Ok(BigRational::new(p, q))
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.value {
            Value::Int(a) => write!(f, "{a}"),
            Value::Mod(a) => write!(f, "{a}"),
            Value::Rat(a) => write!(f, "{}", rational_string(a)),
            Value::Poly(c) => {
                if c.is_empty() {
                    return write!(f, "0");
                }
                let mut first = true;
                for (deg, coef) in c.iter().enumerate() {
                    if coef.is_zero() {
                        continue;
                    }
                    if !first {
                        write!(f, " + ")?;
                    }
                    first = false;
                    match deg {
                        0 => write!(f, "{}", rational_string(coef))?,
                        1 if coef.is_one() => write!(f, "t")?,
                        1 => write!(f, "{}*t", rational_string(coef))?,
                        _ if coef.is_one() => write!(f, "t^{deg}")?,
                        _ => write!(f, "{}*t^{deg}", rational_string(coef))?,
                    }
                }
                Ok(())
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residue_arithmetic() {
        let r = BaseRing::IntegersMod(6);
        let a = Scalar::from_i64(r, 5);
        assert_eq!(a.inv().unwrap(), Scalar::from_i64(r, 5));
        let b = Scalar::from_i64(r, 3);
        assert_eq!(b.inv(), Err(Error::NonUnit));
        assert_eq!(a.mul(&b).unwrap(), Scalar::from_i64(r, 3));
        assert_eq!(Scalar::from_i64(r, -1), Scalar::from_i64(r, 5));
    }

    #[test]
    fn poly_arithmetic() {
        let t = Scalar::t();
        let t2 = t.mul(&t).unwrap();
        let (q, rem) = t2.div_rem(&t).unwrap();
        assert_eq!(q, t);
        assert!(rem.is_zero());
        assert_eq!(t.inv(), Err(Error::NonUnit));
        let half = Scalar::parse(BaseRing::RationalPolynomials, "1/2").unwrap();
        assert!(half.inv().unwrap().mul(&half).unwrap().is_one());
    }

    #[test]
    fn integer_div_rem_is_canonical() {
        let z = BaseRing::Integers;
        for (a, b) in [(7, 3), (-7, 3), (7, -3), (-7, -3)] {
            let (q, r) = Scalar::from_i64(z, a)
                .div_rem(&Scalar::from_i64(z, b))
                .unwrap();
            let back = q
                .mul(&Scalar::from_i64(z, b))
                .unwrap()
                .add(&r)
                .unwrap();
            assert_eq!(back, Scalar::from_i64(z, a));
            let r_val: BigInt = r.to_json_string().unwrap().parse().unwrap();
            assert!(BigInt::zero() <= r_val.clone() && r_val < BigInt::from(3));
        }
    }

    #[test]
    fn canonicalizing_units() {
        let r = BaseRing::IntegersMod(12);
        for a in 1..12u64 {
            let s = Scalar::from_i64(r, a as i64);
            let u = s.canonicalizing_unit();
            assert!(u.inv().is_ok(), "canonicalizing unit must be a unit");
            let d = a.gcd(&12);
            assert_eq!(u.mul(&s).unwrap(), Scalar::from_i64(r, d as i64));
        }
        let z = BaseRing::Integers;
        let m3 = Scalar::from_i64(z, -3);
        assert_eq!(
            m3.canonicalizing_unit().mul(&m3).unwrap(),
            Scalar::from_i64(z, 3)
        );
        let p = Scalar::poly(vec![
            BigRational::one(),
            BigRational::new(BigInt::from(2), BigInt::from(1)),
        ]);
        let monic = p.canonicalizing_unit().mul(&p).unwrap();
        assert_eq!(
            monic.to_coeff_strings().unwrap(),
            vec!["1/2".to_string(), "1".to_string()]
        );
    }

    #[test]
    fn rational_strings() {
        let q = BaseRing::Rationals;
        let s = Scalar::parse(q, "4/6").unwrap();
        assert_eq!(s.to_json_string().unwrap(), "2/3");
        let neg = Scalar::parse(q, "3/-6").unwrap();
        assert_eq!(neg.to_json_string().unwrap(), "-1/2");
        let int = Scalar::parse(q, "-8/4").unwrap();
        assert_eq!(int.to_json_string().unwrap(), "-2");
    }
}
