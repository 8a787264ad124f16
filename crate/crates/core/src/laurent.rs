//! Exact Laurent polynomials in one variable `t` with integer coefficients.
//!
//! A [`Poly`] is stored as a list of `(exponent, coefficient)` pairs sorted by
//! exponent with no zero coefficients, so structural equality is ring
//! equality. The coefficient type is pluggable: [`LaurentPoly`] uses
//! arbitrary-precision integers and never overflows, [`FastPoly`] uses `i64`
//! with checked arithmetic and reports [`LaurentError::Overflow`] instead of
//! wrapping.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LaurentError {
    #[error("coefficient overflow")]
    Overflow,
    #[error("lowest degree of the zero polynomial is undefined")]
    ZeroPolynomial,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
}

/// Integer coefficient ring used by [`Poly`].
pub trait Coefficient:
    Clone + Eq + Ord + Hash + fmt::Debug + fmt::Display + FromStr + Send + Sync + 'static
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_i64(v: i64) -> Self;
    fn to_big(&self) -> BigInt;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn checked_add(&self, other: &Self) -> Option<Self>;
    fn checked_sub(&self, other: &Self) -> Option<Self>;
    fn checked_mul(&self, other: &Self) -> Option<Self>;
    fn checked_neg(&self) -> Option<Self>;
    /// `Ok(None)` when `self` is not a multiple of `divisor`.
    fn checked_div_exact(&self, divisor: &Self) -> Result<Option<Self>, LaurentError>;
    fn is_negative(&self) -> bool;
    fn is_unit_magnitude(&self) -> bool;
    fn abs(&self) -> Self;
}

impl Coefficient for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn from_i64(v: i64) -> Self {
        v
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        v.to_i64()
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        i64::checked_add(*self, *other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        i64::checked_sub(*self, *other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        i64::checked_mul(*self, *other)
    }
    fn checked_neg(&self) -> Option<Self> {
        i64::checked_neg(*self)
    }
    fn checked_div_exact(&self, divisor: &Self) -> Result<Option<Self>, LaurentError> {
        if *divisor == 0 {
            return Err(LaurentError::DivisionByZero);
        }
        let rem = self.checked_rem(*divisor).ok_or(LaurentError::Overflow)?;
        if rem != 0 {
            return Ok(None);
        }
        self.checked_div(*divisor)
            .map(Some)
            .ok_or(LaurentError::Overflow)
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn is_unit_magnitude(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn abs(&self) -> Self {
        i64::abs(*self)
    }
}

impl Coefficient for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn checked_add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn checked_sub(&self, other: &Self) -> Option<Self> {
        Some(self - other)
    }
    fn checked_mul(&self, other: &Self) -> Option<Self> {
        Some(self * other)
    }
    fn checked_neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn checked_div_exact(&self, divisor: &Self) -> Result<Option<Self>, LaurentError> {
        if Zero::is_zero(divisor) {
            return Err(LaurentError::DivisionByZero);
        }
        let (q, r) = self.div_rem(divisor);
        Ok(if Zero::is_zero(&r) { Some(q) } else { None })
    }
    fn is_negative(&self) -> bool {
        self.sign() == num_bigint::Sign::Minus
    }
    fn is_unit_magnitude(&self) -> bool {
        self.magnitude().is_one()
    }
    fn abs(&self) -> Self {
        num_traits::Signed::abs(self)
    }
}

/// Laurent polynomial over a coefficient ring `C`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Poly<C> {
    terms: Vec<(i32, C)>,
}

/// Arbitrary-precision Laurent polynomial; the default scalar everywhere.
pub type LaurentPoly = Poly<BigInt>;

/// Machine-word Laurent polynomial for hot loops; every operation is checked.
pub type FastPoly = Poly<i64>;

/// Which quotient a geometric partial sum uses: `-t` or `-t^-1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Direction {
    T,
    TInv,
}

impl Direction {
    fn sign(self) -> i32 {
        match self {
            Direction::T => 1,
            Direction::TInv => -1,
        }
    }
}

impl<C: Coefficient> Default for Poly<C> {
    fn default() -> Self {
        Self::zero()
    }
}

impl<C: Coefficient> Poly<C> {
    pub fn zero() -> Self {
        Poly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(C::one(), 0)
    }

    /// `t`
    pub fn t() -> Self {
        Self::monomial(C::one(), 1)
    }

    /// `t^-1`
    pub fn t_inv() -> Self {
        Self::monomial(C::one(), -1)
    }

    pub fn constant(c: C) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: C, exponent: i32) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Poly {
                terms: vec![(exponent, c)],
            }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging repeated exponents.
    pub fn from_terms<I>(terms: I) -> Result<Self, LaurentError>
    where
        I: IntoIterator<Item = (i32, C)>,
    {
        let mut raw: Vec<(i32, C)> = terms.into_iter().collect();
        raw.sort_by_key(|(e, _)| *e);
        let mut out: Vec<(i32, C)> = Vec::with_capacity(raw.len());
        for (e, c) in raw {
            match out.last_mut() {
                Some((le, lc)) if *le == e => {
                    *lc = lc.checked_add(&c).ok_or(LaurentError::Overflow)?;
                }
                _ => out.push((e, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Ok(Poly { terms: out })
    }

    /// Convenience constructor from small integer terms.
    pub fn from_i64_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i32, i64)>,
    {
        Self::from_terms(terms.into_iter().map(|(e, c)| (e, C::from_i64(c))))
            .expect("small integer terms overflowed the coefficient type")
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0 == 0 && self.terms[0].1 == C::one()
    }

    /// Sorted nonzero terms.
    pub fn terms(&self) -> &[(i32, C)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exponent: i32) -> C {
        match self.terms.binary_search_by_key(&exponent, |(e, _)| *e) {
            Ok(i) => self.terms[i].1.clone(),
            Err(_) => C::zero(),
        }
    }

    /// Exponent of the lowest-degree term.
    pub fn deg_min(&self) -> Result<i32, LaurentError> {
        self.terms
            .first()
            .map(|(e, _)| *e)
            .ok_or(LaurentError::ZeroPolynomial)
    }

    pub fn deg_max(&self) -> Result<i32, LaurentError> {
        self.terms
            .last()
            .map(|(e, _)| *e)
            .ok_or(LaurentError::ZeroPolynomial)
    }

    /// Returns `(exponent, coefficient)` of the nonzero monomial, if `self` is one.
    pub fn as_monomial(&self) -> Option<(i32, &C)> {
        match self.terms.as_slice() {
            [(e, c)] => Some((*e, c)),
            _ => None,
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, LaurentError> {
        self.merge(other, false)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, LaurentError> {
        self.merge(other, true)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Result<Self, LaurentError> {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        let rhs = |c: &C| -> Result<C, LaurentError> {
            if negate_other {
                c.checked_neg().ok_or(LaurentError::Overflow)
            } else {
                Ok(c.clone())
            }
        };
        while i < a.len() && j < b.len() {
            let (ea, eb) = (a[i].0, b[j].0);
            if ea < eb {
                out.push(a[i].clone());
                i += 1;
            } else if eb < ea {
                out.push((eb, rhs(&b[j].1)?));
                j += 1;
            } else {
                let s = if negate_other {
                    a[i].1.checked_sub(&b[j].1)
                } else {
                    a[i].1.checked_add(&b[j].1)
                }
                .ok_or(LaurentError::Overflow)?;
                if !s.is_zero() {
                    out.push((ea, s));
                }
                i += 1;
                j += 1;
            }
        }
        out.extend(a[i..].iter().cloned());
        for t in &b[j..] {
            out.push((t.0, rhs(&t.1)?));
        }
        Ok(Poly { terms: out })
    }

    pub fn checked_neg(&self) -> Result<Self, LaurentError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| c.checked_neg().map(|c| (*e, c)))
            .collect::<Option<Vec<_>>>()
            .ok_or(LaurentError::Overflow)?;
        Ok(Poly { terms })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, LaurentError> {
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero());
        }
        let (short, long) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if let Some((e, c)) = short.as_monomial() {
            return long.scale_shift(c, e);
        }
        let lo = short.terms[0].0 + long.terms[0].0;
        let hi = short.terms[short.len() - 1].0 + long.terms[long.len() - 1].0;
        let span = (hi as i64 - lo as i64 + 1) as usize;
        // Dense accumulation is cheaper than map insertion for the
        // near-contiguous polynomials that arise from Burau products.
        let mut acc: Vec<C> = vec![C::zero(); span];
        for (ea, ca) in &short.terms {
            for (eb, cb) in &long.terms {
                let slot = &mut acc[(ea + eb - lo) as usize];
                let prod = ca.checked_mul(cb).ok_or(LaurentError::Overflow)?;
                *slot = slot.checked_add(&prod).ok_or(LaurentError::Overflow)?;
            }
        }
        let terms = acc
            .into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| (lo + k as i32, c))
            .collect();
        Ok(Poly { terms })
    }

    /// `c * t^shift * self`.
    pub fn scale_shift(&self, c: &C, shift: i32) -> Result<Self, LaurentError> {
        if c.is_zero() {
            return Ok(Self::zero());
        }
        let terms = self
            .terms
            .iter()
            .map(|(e, k)| {
                let e = e.checked_add(shift).ok_or(LaurentError::Overflow)?;
                let k = k.checked_mul(c).ok_or(LaurentError::Overflow)?;
                Ok((e, k))
            })
            .collect::<Result<Vec<_>, LaurentError>>()?;
        Ok(Poly { terms })
    }

    /// `t^shift * self`.
    pub fn shift(&self, shift: i32) -> Self {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e + shift, c.clone()))
                .collect(),
        }
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, LaurentError> {
        let mut acc = Self::one();
        for _ in 0..k {
            acc = acc.checked_mul(self)?;
        }
        Ok(acc)
    }

    /// Exact division: `Ok(Some(q))` with `q * divisor == self`, or `Ok(None)`
    /// when `divisor` does not divide `self` in `Z[t, t^-1]`.
    ///
    /// Long division that cancels the lowest remaining term at each step.
    pub fn exact_div(&self, divisor: &Self) -> Result<Option<Self>, LaurentError> {
        let (d_lo, d_lead) = match divisor.terms.first() {
            Some((e, c)) => (*e, c.clone()),
            None => return Err(LaurentError::DivisionByZero),
        };
        if self.is_zero() {
            return Ok(Some(Self::zero()));
        }
        let d_hi = divisor.deg_max()?;
        let q_hi = self.deg_max()? - d_hi;
        let mut rem = self.clone();
        let mut quotient: Vec<(i32, C)> = Vec::new();
        while let Some((r_lo, r_lead)) = rem.terms.first().cloned() {
            let q_exp = r_lo - d_lo;
            if q_exp > q_hi {
                return Ok(None);
            }
            let q_coeff = match r_lead.checked_div_exact(&d_lead)? {
                Some(q) => q,
                None => return Ok(None),
            };
            rem = rem.checked_sub(&divisor.scale_shift(&q_coeff, q_exp)?)?;
            quotient.push((q_exp, q_coeff));
        }
        Ok(Some(Poly { terms: quotient }))
    }

    /// Partial sum `1 + (-x) + (-x)^2 + ... + (-x)^i` with `x = t` or `t^-1`;
    /// it has `i + 1` terms.
    pub fn geometric_partial_sum(i: u32, direction: Direction) -> Self {
        let s = direction.sign();
        let terms = (0..=i as i32)
            .map(|k| {
                let c = if k % 2 == 0 {
                    C::one()
                } else {
                    C::from_i64(-1)
                };
                (s * k, c)
            })
            .collect::<Vec<_>>();
        let mut terms = terms;
        terms.sort_by_key(|(e, _)| *e);
        Poly { terms }
    }

    /// Evaluates at `t -> t^-1`.
    pub fn bar(&self) -> Self {
        let mut terms: Vec<(i32, C)> = self.terms.iter().map(|(e, c)| (-e, c.clone())).collect();
        terms.reverse();
        Poly { terms }
    }

    /// Converts between coefficient rings; fails if a coefficient does not fit.
    pub fn convert<D: Coefficient>(&self) -> Result<Poly<D>, LaurentError> {
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| D::from_big(&c.to_big()).map(|d| (*e, d)))
            .collect::<Option<Vec<_>>>()
            .ok_or(LaurentError::Overflow)?;
        Ok(Poly { terms })
    }

    pub fn to_big(&self) -> LaurentPoly {
        Poly {
            terms: self.terms.iter().map(|(e, c)| (*e, c.to_big())).collect(),
        }
    }
}

impl LaurentPoly {
    pub fn deg_min_opt(&self) -> Option<i32> {
        self.deg_min().ok()
    }
}

impl<C: Coefficient> fmt::Display for Poly<C> {
    /// Canonical text: increasing exponent, e.g. `-t^-3+t^-2-1+2*t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if neg {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            let mag = c.abs();
            let unit = c.is_unit_magnitude();
            if *e == 0 {
                write!(f, "{mag}")?;
                continue;
            }
            if !unit {
                write!(f, "{mag}*")?;
            }
            if *e == 1 {
                f.write_str("t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

impl<C: Coefficient> fmt::Debug for Poly<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<C: Coefficient> FromStr for Poly<C> {
    type Err = LaurentError;

    /// Accepts the canonical text form, with optional whitespace, repeated
    /// exponents and `t^1`; terms may appear in any order.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<(usize, char)> = s
            .char_indices()
            .filter(|(_, ch)| !ch.is_whitespace())
            .collect();
        let err = |position: usize, message: &str| LaurentError::Parse {
            position,
            message: message.to_string(),
        };
        if bytes.is_empty() {
            return Err(err(0, "empty polynomial"));
        }
        let end = s.len();
        let pos_at = |k: usize| bytes.get(k).map(|(p, _)| *p).unwrap_or(end);
        let mut k = 0;
        let mut terms: Vec<(i32, C)> = Vec::new();
        let read_int = |k: &mut usize| -> Option<String> {
            let start = *k;
            while *k < bytes.len() && bytes[*k].1.is_ascii_digit() {
                *k += 1;
            }
            (*k > start).then(|| bytes[start..*k].iter().map(|(_, c)| *c).collect())
        };
        while k < bytes.len() {
            let mut negative = false;
            match bytes[k].1 {
                '+' => k += 1,
                '-' => {
                    negative = true;
                    k += 1
                }
                _ if !terms.is_empty() => return Err(err(pos_at(k), "expected '+' or '-'")),
                _ => {}
            }
            let coeff_text = read_int(&mut k);
            let mut exponent = 0i32;
            let has_t = if coeff_text.is_some() {
                if k < bytes.len() && bytes[k].1 == '*' {
                    k += 1;
                    if k >= bytes.len() || bytes[k].1 != 't' {
                        return Err(err(pos_at(k), "expected 't' after '*'"));
                    }
                    true
                } else {
                    k < bytes.len() && bytes[k].1 == 't'
                }
            } else if k < bytes.len() && bytes[k].1 == 't' {
                true
            } else {
                return Err(err(pos_at(k), "expected coefficient or 't'"));
            };
            if has_t {
                k += 1;
                exponent = 1;
                if k < bytes.len() && bytes[k].1 == '^' {
                    k += 1;
                    let mut neg_exp = false;
                    if k < bytes.len() && bytes[k].1 == '-' {
                        neg_exp = true;
                        k += 1;
                    }
                    let digits =
                        read_int(&mut k).ok_or_else(|| err(pos_at(k), "expected exponent"))?;
                    let v: i32 = digits
                        .parse()
                        .map_err(|_| err(pos_at(k), "exponent out of range"))?;
                    exponent = if neg_exp { -v } else { v };
                }
            }
            let mut c = match coeff_text {
                Some(text) => C::from_str(&text).map_err(|_| err(pos_at(k), "bad coefficient"))?,
                None => C::one(),
            };
            if negative {
                c = c.checked_neg().ok_or(LaurentError::Overflow)?;
            }
            terms.push((exponent, c));
        }
        Self::from_terms(terms)
    }
}

// JSON form: a list of [exponent, coefficient] pairs sorted by exponent.
// Coefficients that fit in an i64 are JSON numbers, larger ones are decimal strings.
impl<C: Coefficient> Serialize for Poly<C> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeSeq;
        let mut seq = serializer.serialize_seq(Some(self.terms.len()))?;
        for (e, c) in &self.terms {
            match c.to_big().to_i64() {
                Some(v) => seq.serialize_element(&(e, v))?,
                None => seq.serialize_element(&(e, c.to_string()))?,
            }
        }
        seq.end()
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum JsonCoeff {
    Int(i64),
    Text(String),
}

impl<'de, C: Coefficient> Deserialize<'de> for Poly<C> {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let raw: Vec<(i32, JsonCoeff)> = Vec::deserialize(deserializer)?;
        let terms = raw
            .into_iter()
            .map(|(e, c)| {
                let c = match c {
                    JsonCoeff::Int(v) => C::from_i64(v),
                    JsonCoeff::Text(s) => {
                        C::from_str(&s).map_err(|_| D::Error::custom("bad coefficient"))?
                    }
                };
                Ok((e, c))
            })
            .collect::<Result<Vec<_>, D::Error>>()?;
        Poly::from_terms(terms).map_err(D::Error::custom)
    }
}

// Operator sugar is only provided for the arbitrary-precision form, where
// arithmetic cannot fail.

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_add(rhs)
            .expect("bigint addition is infallible")
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        &self + &rhs
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = &*self + rhs;
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_sub(rhs)
            .expect("bigint subtraction is infallible")
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: LaurentPoly) -> LaurentPoly {
        &self - &rhs
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        self.checked_mul(rhs)
            .expect("bigint multiplication is infallible")
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.checked_neg().expect("bigint negation is infallible")
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

/// Parses canonical text into a [`LaurentPoly`], panicking on malformed input.
/// Intended for literals in tests and tables.
pub fn lp(text: &str) -> LaurentPoly {
    text.parse()
        .unwrap_or_else(|e| panic!("bad polynomial literal {text:?}: {e}"))
}
