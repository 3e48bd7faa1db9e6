//! Exact coefficient fields.
//!
//! Two backends are provided: the prime field GF(p) with `u32` residues, and
//! the rationals with arbitrary-precision numerators and denominators. The
//! engine is generic over [`Field`], so every computation can run in either
//! backend; [`FieldScalar`] is the tagged runtime value used at the API and
//! serialization boundary.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, Echelon, Matrix};

/// Default characteristic used wherever the ground field is not specified.
pub const DEFAULT_PRIME: u32 = 32003;

/// Which arithmetic a field (or scalar) uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Prime(u32),
    Rational,
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Backend::Prime(p) => write!(f, "GF({p})"),
            Backend::Rational => write!(f, "QQ"),
        }
    }
}

// On the wire a backend is either the prime as a number or the string "rational".
impl Serialize for Backend {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Backend::Prime(p) => s.serialize_u32(*p),
            Backend::Rational => s.serialize_str("rational"),
        }
    }
}

impl<'de> Deserialize<'de> for Backend {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(u64),
            Str(String),
        }
        match Raw::deserialize(d)? {
            Raw::Num(p) => {
                check_prime(p).map_err(serde::de::Error::custom)?;
                Ok(Backend::Prime(p as u32))
            }
            Raw::Str(s) if s == "rational" => Ok(Backend::Rational),
            Raw::Str(s) => Err(serde::de::Error::custom(format!(
                "unknown backend {s:?}, expected a prime or \"rational\""
            ))),
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if p >= (1 << 31) || !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(())
}

/// A field of coefficients. Elements are plain values; all operations go
/// through the field object so that runtime parameters (the prime) live in
/// one place.
pub trait Field: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync;

    fn backend(&self) -> Backend;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Image of the rational number `num/den`. Fails when `den` is not
    /// invertible in the field.
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<Self::Elem>;
    /// Random element; uniform over GF(p), bounded integers over QQ.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    fn to_scalar(&self, a: &Self::Elem) -> FieldScalar;

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

    /// `dst += c * src`, entrywise.
    fn axpy(&self, dst: &mut [Self::Elem], c: &Self::Elem, src: &[Self::Elem]) {
        for (d, s) in dst.iter_mut().zip(src) {
            if !self.is_zero(s) {
                *d = self.add(d, &self.mul(c, s));
            }
        }
    }

    fn format(&self, a: &Self::Elem) -> String {
        self.to_scalar(a).to_string()
    }

    fn parse(&self, s: &str) -> Result<Self::Elem> {
        let (num, den) = parse_ratio(s)?;
        self.from_ratio(&num, &den)
    }

    /// Rank of a matrix. Gaussian elimination unless a backend overrides it.
    fn rank(&self, m: &Matrix<Self::Elem>) -> usize {
        linalg::gauss_rank(self, m)
    }

    /// Reduced row-echelon basis of the span of `rows`.
    fn echelon<I>(&self, rows: I, ncols: usize) -> Echelon<Self::Elem>
    where
        I: IntoIterator<Item = Vec<Self::Elem>>,
    {
        linalg::gauss_echelon(self, rows, ncols)
    }
}

fn parse_ratio(s: &str) -> Result<(BigInt, BigInt)> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid coefficient {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((a, b)) => (
            a.trim().parse::<BigInt>().map_err(|_| bad())?,
            b.trim().parse::<BigInt>().map_err(|_| bad())?,
        ),
        None => (s.parse::<BigInt>().map_err(|_| bad())?, BigInt::one()),
    };
    if den.is_zero() {
        return Err(bad());
    }
    Ok((num, den))
}

/// GF(p) with residues stored in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u32,
}

impl PrimeField {
    pub fn new(p: u32) -> Result<Self> {
        check_prime(p as u64)?;
        Ok(Self { p })
    }

    pub fn prime(&self) -> u32 {
        self.p
    }

    #[inline]
    fn reduce(&self, v: u64) -> u32 {
        (v % self.p as u64) as u32
    }
}

impl Default for PrimeField {
    fn default() -> Self {
        Self { p: DEFAULT_PRIME }
    }
}

impl Field for PrimeField {
    type Elem = u32;

    fn backend(&self) -> Backend {
        Backend::Prime(self.p)
    }
    #[inline]
    fn zero(&self) -> u32 {
        0
    }
    #[inline]
    fn one(&self) -> u32 {
        1 % self.p
    }
    #[inline]
    fn is_zero(&self, a: &u32) -> bool {
        *a == 0
    }
    #[inline]
    fn add(&self, a: &u32, b: &u32) -> u32 {
        let s = *a as u64 + *b as u64;
        if s >= self.p as u64 {
            (s - self.p as u64) as u32
        } else {
            s as u32
        }
    }
    #[inline]
    fn sub(&self, a: &u32, b: &u32) -> u32 {
        if a >= b {
            a - b
        } else {
            (*a as u64 + self.p as u64 - *b as u64) as u32
        }
    }
    #[inline]
    fn mul(&self, a: &u32, b: &u32) -> u32 {
        self.reduce(*a as u64 * *b as u64)
    }
    #[inline]
    fn neg(&self, a: &u32) -> u32 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u32) -> Option<u32> {
        if *a == 0 {
            return None;
        }
        // extended Euclid on (a, p)
        let (mut r0, mut r1) = (self.p as i64, *a as i64);
        let (mut s0, mut s1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        Some(s0.rem_euclid(self.p as i64) as u32)
    }
    fn from_i64(&self, v: i64) -> u32 {
        v.rem_euclid(self.p as i64) as u32
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<u32> {
        let p = BigInt::from(self.p);
        let n = ((num % &p) + &p) % &p;
        let d = ((den % &p) + &p) % &p;
        let n = n.to_u32().expect("residue fits");
        let d = d.to_u32().expect("residue fits");
        let dinv = self.inv(&d).ok_or_else(|| {
            Error::Parse(format!("denominator {den} is not invertible mod {}", self.p))
        })?;
        Ok(self.mul(&n, &dinv))
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u32 {
        rng.gen_range(0..self.p)
    }
    fn to_scalar(&self, a: &u32) -> FieldScalar {
        FieldScalar::Gfp {
            value: *a,
            prime: self.p,
        }
    }

    fn rank(&self, m: &Matrix<u32>) -> usize {
        linalg::prime_rank(self.p, m)
    }

    fn axpy(&self, dst: &mut [u32], c: &u32, src: &[u32]) {
        if *c == 0 {
            return;
        }
        let p = self.p as u64;
        let c = *c as u64;
        for (d, s) in dst.iter_mut().zip(src) {
            if *s != 0 {
                *d = ((*d as u64 + c * *s as u64) % p) as u32;
            }
        }
    }
}

/// The rational numbers. `sample` draws integers uniformly from
/// `[-sample_bound, sample_bound]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RationalField {
    pub sample_bound: i64,
}

impl Default for RationalField {
    fn default() -> Self {
        Self { sample_bound: 100 }
    }
}

impl Field for RationalField {
    type Elem = BigRational;

    fn backend(&self) -> Backend {
        Backend::Rational
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
        BigRational::from_integer(BigInt::from(v))
    }
    fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Result<BigRational> {
        Ok(BigRational::new(num.clone(), den.clone()))
    }
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> BigRational {
        let b = self.sample_bound.max(1);
        self.from_i64(rng.gen_range(-b..=b))
    }
    fn to_scalar(&self, a: &BigRational) -> FieldScalar {
        FieldScalar::Rational(a.clone())
    }

    fn rank(&self, m: &Matrix<BigRational>) -> usize {
        linalg::bareiss_rank(m)
    }

    fn echelon<I>(&self, rows: I, ncols: usize) -> Echelon<BigRational>
    where
        I: IntoIterator<Item = Vec<BigRational>>,
    {
        linalg::bareiss_echelon(rows, ncols)
    }
}

/// A single tagged scalar. Arithmetic is checked: mixing a GF(p) value with a
/// rational (or with a different prime) is an error.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FieldScalar {
    Gfp { value: u32, prime: u32 },
    Rational(BigRational),
}

impl FieldScalar {
    pub fn gfp(value: i64, prime: u32) -> Result<Self> {
        let f = PrimeField::new(prime)?;
        Ok(FieldScalar::Gfp {
            value: f.from_i64(value),
            prime,
        })
    }

    pub fn rational(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::ZeroInverse);
        }
        Ok(FieldScalar::Rational(BigRational::new(num.into(), den.into())))
    }

    pub fn backend(&self) -> Backend {
        match self {
            FieldScalar::Gfp { prime, .. } => Backend::Prime(*prime),
            FieldScalar::Rational(_) => Backend::Rational,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Gfp { value, .. } => *value == 0,
            FieldScalar::Rational(q) => q.is_zero(),
        }
    }

    fn binary(
        &self,
        other: &Self,
        gfp: impl Fn(&PrimeField, &u32, &u32) -> u32,
        rat: impl Fn(&BigRational, &BigRational) -> BigRational,
    ) -> Result<Self> {
        match (self, other) {
            (FieldScalar::Gfp { value: a, prime: p }, FieldScalar::Gfp { value: b, prime: q })
                if p == q =>
            {
                let f = PrimeField { p: *p };
                Ok(FieldScalar::Gfp {
                    value: gfp(&f, a, b),
                    prime: *p,
                })
            }
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => {
                Ok(FieldScalar::Rational(rat(a, b)))
            }
            _ => Err(Error::MixedBackends(
                self.backend().to_string(),
                other.backend().to_string(),
            )),
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| f.add(a, b), |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| f.sub(a, b), |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.binary(other, |f, a, b| f.mul(a, b), |a, b| a * b)
    }

    pub fn neg(&self) -> Self {
        match self {
            FieldScalar::Gfp { value, prime } => FieldScalar::Gfp {
                value: PrimeField { p: *prime }.neg(value),
                prime: *prime,
            },
            FieldScalar::Rational(q) => FieldScalar::Rational(-q),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        match self {
            FieldScalar::Gfp { value, prime } => PrimeField { p: *prime }
                .inv(value)
                .map(|v| FieldScalar::Gfp {
                    value: v,
                    prime: *prime,
                })
                .ok_or(Error::ZeroInverse),
            FieldScalar::Rational(q) if q.is_zero() => Err(Error::ZeroInverse),
            FieldScalar::Rational(q) => Ok(FieldScalar::Rational(q.recip())),
        }
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Gfp { value, .. } => write!(f, "{value}"),
            FieldScalar::Rational(q) if q.denom().is_one() => write!(f, "{}", q.numer()),
            FieldScalar::Rational(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

/// Symmetric integer lift of a GF(p) residue, in `(-p/2, p/2]`.
pub fn symmetric_lift(value: u32, p: u32) -> i64 {
    let v = value as i64;
    if v > p as i64 / 2 {
        v - p as i64
    } else {
        v
    }
}
