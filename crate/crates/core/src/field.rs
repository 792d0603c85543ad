//! Exact fields: the rationals and prime fields `Z/p` with `p < 2^62`.
//!
//! Heavy computations are generic over [`Field`], which carries the arithmetic
//! context (the modulus for prime fields). [`Scalar`] is the tagged,
//! field-independent value used by [`crate::exactmat::WordMatrix`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use crate::error::{Error, Result};

/// Default prime: the Mersenne prime 2^61 - 1.
pub const P1: u64 = (1 << 61) - 1;
/// Second prime for dual-prime cross-checks: 2^62 - 57.
pub const P2: u64 = (1 << 62) - 57;

/// Which field a value or matrix lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldTag {
    Rational,
    Prime(u64),
}

impl FieldTag {
    /// Characteristic of the field (0 for the rationals).
    pub fn characteristic(&self) -> u64 {
        match self {
            FieldTag::Rational => 0,
            FieldTag::Prime(p) => *p,
        }
    }
}

impl fmt::Display for FieldTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldTag::Rational => write!(f, "Q"),
            FieldTag::Prime(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for FieldTag {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "Q" {
            return Ok(FieldTag::Rational);
        }
        if let Some(p) = s.strip_prefix("Fp:") {
            let p: u64 = p.parse().map_err(|_| Error::Parse(format!("bad prime in field tag {s:?}")))?;
            PrimeField::new(p)?;
            return Ok(FieldTag::Prime(p));
        }
        Err(Error::Parse(format!("unknown field tag {s:?}")))
    }
}

/// An exact scalar: a rational in lowest terms or a residue mod a prime.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Prime { value: u64, p: u64 },
}

impl Scalar {
    pub fn tag(&self) -> FieldTag {
        match self {
            Scalar::Rational(_) => FieldTag::Rational,
            Scalar::Prime { p, .. } => FieldTag::Prime(*p),
        }
    }

    pub fn zero(tag: FieldTag) -> Scalar {
        Scalar::from_i64(tag, 0)
    }

    pub fn one(tag: FieldTag) -> Scalar {
        Scalar::from_i64(tag, 1)
    }

    pub fn from_i64(tag: FieldTag, v: i64) -> Scalar {
        match tag {
            FieldTag::Rational => Scalar::Rational(BigRational::from_integer(v.into())),
            FieldTag::Prime(p) => Scalar::Prime { value: reduce_i128(v as i128, p), p },
        }
    }

    /// Maps a rational into the field `tag`.
    pub fn from_rational(tag: FieldTag, r: &BigRational) -> Result<Scalar> {
        match tag {
            FieldTag::Rational => Ok(Scalar::Rational(r.clone())),
            FieldTag::Prime(p) => Ok(Scalar::Prime { value: rational_mod(r, p)?, p }),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Prime { value, .. } => *value == 1,
        }
    }

    fn check(&self, other: &Scalar) {
        assert_eq!(self.tag(), other.tag(), "scalar field mismatch");
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: add_mod(*a, *b, *p), p: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn sub(&self, o: &Scalar) -> Scalar {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        self.check(o);
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Prime { value: a, p }, Scalar::Prime { value: b, .. }) => {
                Scalar::Prime { value: mul_mod(*a, *b, *p), p: *p }
            }
            _ => unreachable!(),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { value, p } => Scalar::Prime { value: if *value == 0 { 0 } else { p - value }, p: *p },
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Prime { value, p } => Scalar::Prime { value: inv_mod(*value, *p), p: *p },
        })
    }

    /// The rational value, if this is a rational scalar.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(r) => Some(r),
            _ => None,
        }
    }

    /// Parses `"p/q"` or `"p"` into the field `tag`.
    pub fn parse(tag: FieldTag, s: &str) -> Result<Scalar> {
        let r = parse_rational(s)?;
        Scalar::from_rational(tag, &r)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

/// Parses a rational written as `"a"` or `"a/b"`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("bad rational {s:?}"));
    match s.split_once('/') {
        None => Ok(BigRational::from_integer(s.parse::<BigInt>().map_err(|_| bad())?)),
        Some((a, b)) => {
            let a: BigInt = a.trim().parse().map_err(|_| bad())?;
            let b: BigInt = b.trim().parse().map_err(|_| bad())?;
            if b.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(a, b))
        }
    }
}

/// Arithmetic context for an exact field.
pub trait Field: Clone + Send + Sync + fmt::Debug + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn tag(&self) -> FieldTag;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn from_rational(&self, r: &BigRational) -> Result<Self::Elem>;
    fn to_scalar(&self, a: &Self::Elem) -> Scalar;
    /// A random element; small integers for the rationals, uniform for prime fields.
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    /// `a -= b * c`
    fn sub_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.sub(a, &self.mul(b, c));
    }

    /// `a += b * c`
    fn add_mul_assign(&self, a: &mut Self::Elem, b: &Self::Elem, c: &Self::Elem) {
        *a = self.add(a, &self.mul(b, c));
    }

    fn from_scalar(&self, s: &Scalar) -> Result<Self::Elem> {
        match s {
            Scalar::Rational(r) => self.from_rational(r),
            Scalar::Prime { value, p } => {
                if self.tag() != FieldTag::Prime(*p) {
                    return Err(Error::FieldMismatch(s.tag().to_string(), self.tag().to_string()));
                }
                Ok(self.from_i64(*value as i64))
            }
        }
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// The field of rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn tag(&self) -> FieldTag {
        FieldTag::Rational
    }
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }
    fn from_rational(&self, r: &BigRational) -> Result<BigRational> {
        Ok(r.clone())
    }
    fn to_scalar(&self, a: &BigRational) -> Scalar {
        Scalar::Rational(a.clone())
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        self.from_i64(rng.random_range(-1000..=1000))
    }
    fn sub_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        *a -= b * c;
    }
    fn add_mul_assign(&self, a: &mut BigRational, b: &BigRational, c: &BigRational) {
        *a += b * c;
    }
}

/// The prime field `Z/p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Builds `Z/p`, rejecting composites and moduli of 2^62 or more.
    pub fn new(p: u64) -> Result<PrimeField> {
        if p >= 1 << 62 || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn tag(&self) -> FieldTag {
        FieldTag::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        add_mod(*a, *b, self.p)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mul_mod(*a, *b, self.p)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            None
        } else {
            Some(inv_mod(*a, self.p))
        }
    }
    fn from_i64(&self, v: i64) -> u64 {
        reduce_i128(v as i128, self.p)
    }
    fn from_rational(&self, r: &BigRational) -> Result<u64> {
        rational_mod(r, self.p)
    }
    fn to_scalar(&self, a: &u64) -> Scalar {
        Scalar::Prime { value: *a, p: self.p }
    }
    fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
    #[inline]
    fn sub_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        let t = mul_mod(*b, *c, self.p);
        *a = if *a >= t { *a - t } else { *a + self.p - t };
    }
    #[inline]
    fn add_mul_assign(&self, a: &mut u64, b: &u64, c: &u64) {
        *a = add_mod(*a, mul_mod(*b, *c, self.p), self.p);
    }
}

#[inline]
fn add_mod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    if p == P1 {
        // Mersenne reduction: 2^61 ≡ 1.
        let t = (a as u128) * (b as u128);
        let lo = (t as u64) & P1;
        let hi = (t >> 61) as u64;
        let s = lo + hi;
        if s >= P1 {
            s - P1
        } else {
            s
        }
    } else {
        ((a as u128 * b as u128) % p as u128) as u64
    }
}

#[cfg(test)]
fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut r0, mut r1) = (p as i128, a as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    reduce_i128(t0, p)
}

fn reduce_i128(v: i128, p: u64) -> u64 {
    v.rem_euclid(p as i128) as u64
}

fn bigint_mod(v: &BigInt, p: u64) -> u64 {
    let m = BigInt::from(p);
    v.mod_floor(&m).to_u64().expect("residue fits in u64")
}

fn rational_mod(r: &BigRational, p: u64) -> Result<u64> {
    let n = bigint_mod(r.numer(), p);
    let d = bigint_mod(r.denom(), p);
    if d == 0 {
        return Err(Error::DenominatorVanishes(p));
    }
    Ok(mul_mod(n, inv_mod(d, p), p))
}

/// Deterministic Miller–Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    let mulm = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = {
            let (mut acc, mut base, mut e) = (1u64, a % n, d);
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulm(acc, base);
                }
                base = mulm(base, base);
                e >>= 1;
            }
            acc
        };
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulm(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_primes_are_prime() {
        assert!(is_prime(P1));
        assert!(is_prime(P2));
        assert!(!is_prime(P1 - 2));
        assert!(!is_prime(561));
        assert!(PrimeField::new(P2).is_ok());
        assert_eq!(PrimeField::new(15), Err(Error::NotPrime(15)));
    }

    #[test]
    fn mersenne_reduction_matches_generic() {
        let vals = [0u64, 1, 2, P1 - 1, P1 - 2, 1 << 60, 123456789123456789 % P1];
        for &a in &vals {
            for &b in &vals {
                let generic = ((a as u128 * b as u128) % P1 as u128) as u64;
                assert_eq!(mul_mod(a, b, P1), generic);
            }
        }
    }

    #[test]
    fn inverses() {
        for p in [7u64, 101, P1, P2] {
            let f = PrimeField::new(p).unwrap();
            for a in [1u64, 2, 3, p - 1, p / 2] {
                let i = f.inv(&a).unwrap();
                assert_eq!(f.mul(&a, &i), 1);
            }
        }
        assert_eq!(pow_mod(3, 100, 7), 4);
    }

    #[test]
    fn rational_reduction() {
        let f = PrimeField::new(7).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(f.from_rational(&half).unwrap(), 4);
        let bad = BigRational::new(1.into(), 14.into());
        assert_eq!(f.from_rational(&bad), Err(Error::DenominatorVanishes(7)));
        assert_eq!(f.from_i64(-1), 6);
    }

    #[test]
    fn scalar_text() {
        let s = Scalar::parse(FieldTag::Rational, "-6/4").unwrap();
        assert_eq!(s.to_string(), "-3/2");
        assert_eq!(Scalar::parse(FieldTag::Rational, "5").unwrap().to_string(), "5");
        assert!(Scalar::parse(FieldTag::Rational, "1/0").is_err());
        assert_eq!("Fp:7".parse::<FieldTag>().unwrap(), FieldTag::Prime(7));
        assert!("Fp:8".parse::<FieldTag>().is_err());
        assert_eq!(FieldTag::Prime(7).to_string(), "Fp:7");
    }
}
