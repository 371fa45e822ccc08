//! Exact fractions and the two continued-fraction conventions.
//!
//! Fractions are *formal*: `2/2` and `1/1` are different values, and `1/0` is a
//! legal entry. Hirzebruch–Jung (minus-convention) expansions are evaluated with
//! the division-free continuant recursion, so any integer sequence has a value.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::json::IntRepr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArithError {
    #[error("0/0 is not a fraction")]
    ZeroOverZero,
    #[error("{0} has no canonical Hirzebruch-Jung expansion (need p > q > 0 in lowest terms)")]
    NoHjExpansion(Frac),
    #[error("{0} has no Euclidean expansion (need p > q >= 1 coprime)")]
    NoEucExpansion(Frac),
    #[error("Euclidean coefficients must be positive, got {0}")]
    NonPositiveEucCoefficient(BigInt),
    #[error("empty Euclidean continued fraction")]
    EmptyEuc,
    #[error("dual of {0} is undefined (need p >= q >= 0, p > 0)")]
    NoDual(Frac),
    #[error("cannot parse {0:?} as a fraction")]
    Parse(String),
}

/// A formal fraction `p/q` of unbounded integers. Never reduced implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Frac {
    p: BigInt,
    q: BigInt,
}

impl Frac {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, ArithError> {
        let (p, q) = (p.into(), q.into());
        if p.is_zero() && q.is_zero() {
            return Err(ArithError::ZeroOverZero);
        }
        Ok(Frac { p, q })
    }

    /// Caller guarantees `(p, q) != (0, 0)`.
    pub(crate) fn from_parts(p: BigInt, q: BigInt) -> Self {
        debug_assert!(!(p.is_zero() && q.is_zero()));
        Frac { p, q }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.p, self.q)
    }

    pub fn gcd(&self) -> BigInt {
        self.p.gcd(&self.q)
    }

    pub fn is_reduced(&self) -> bool {
        self.gcd().is_one()
    }

    /// Divides out the gcd and makes the denominator nonnegative.
    pub fn reduce(&self) -> Frac {
        let g = self.gcd();
        let (mut p, mut q) = (&self.p / &g, &self.q / &g);
        if q.is_negative() || (q.is_zero() && p.is_negative()) {
            p = -p;
            q = -q;
        }
        Frac { p, q }
    }

    /// `(-p)/(-q)`; same rational value, different formal fraction.
    pub fn negate(&self) -> Frac {
        Frac {
            p: -&self.p,
            q: -&self.q,
        }
    }

    /// True when both describe the same rational value (or both are `±1/0`-like).
    pub fn same_value(&self, other: &Frac) -> bool {
        det(self, other).is_zero()
    }
}

impl fmt::Display for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Frac {
    type Err = ArithError;

    /// Accepts `p/q` or a bare integer `p` (meaning `p/1`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ArithError::Parse(s.to_string());
        let (p, q) = match s.trim().split_once('/') {
            Some((p, q)) => (p.trim(), q.trim()),
            None => (s.trim(), "1"),
        };
        let p: BigInt = p.parse().map_err(|_| err())?;
        let q: BigInt = q.parse().map_err(|_| err())?;
        Frac::new(p, q).map_err(|_| err())
    }
}

impl Serialize for Frac {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (IntRepr::from(&self.p), IntRepr::from(&self.q)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frac {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let (p, q) = <(IntRepr, IntRepr)>::deserialize(d)?;
        let (p, q) = (
            p.into_bigint().map_err(serde::de::Error::custom)?,
            q.into_bigint().map_err(serde::de::Error::custom)?,
        );
        Frac::new(p, q).map_err(serde::de::Error::custom)
    }
}

/// Mediant `(p1+p2)/(q1+q2)`, unreduced.
pub fn mediant(a: &Frac, b: &Frac) -> Frac {
    Frac::new(&a.p + &b.p, &a.q + &b.q)
        .unwrap_or_else(|_| Frac::from_parts(&a.p + &b.p, &a.q + &b.q))
}

/// `p1*q2 - q1*p2`.
pub fn det(a: &Frac, b: &Frac) -> BigInt {
    &a.p * &b.q - &a.q * &b.p
}

/// `p/(p-q)`.
pub fn dual(f: &Frac) -> Result<Frac, ArithError> {
    if !f.p.is_positive() || f.q.is_negative() || f.q > f.p {
        return Err(ArithError::NoDual(f.clone()));
    }
    Ok(Frac::from_parts(f.p.clone(), &f.p - &f.q))
}

/// Inverse of `a` modulo `m > 0`, in `[0, m)`. For `m == 1` returns `0`.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    if !m.is_positive() {
        return None;
    }
    if m.is_one() {
        return Some(BigInt::zero());
    }
    let e = a.mod_floor(m).extended_gcd(m);
    if !e.gcd.is_one() {
        return None;
    }
    Some(e.x.mod_floor(m))
}

fn is_canonical_hj_input(f: &Frac) -> bool {
    f.q.is_positive() && f.p > f.q && f.is_reduced()
}

/// `p/q̄` with `q·q̄ ≡ 1 (mod p)`; its HJ expansion is the reverse of that of `p/q`.
pub fn hj_reversal_partner(f: &Frac) -> Result<Frac, ArithError> {
    if !is_canonical_hj_input(f) {
        return Err(ArithError::NoHjExpansion(f.clone()));
    }
    let inv = mod_inverse(&f.q, &f.p).ok_or_else(|| ArithError::NoHjExpansion(f.clone()))?;
    Ok(Frac::from_parts(f.p.clone(), inv))
}

/// A Hirzebruch–Jung continued fraction `[a1, ..., ak] = a1 - 1/(a2 - ...)`.
///
/// Entries are arbitrary integers; only expansions produced by
/// [`HjCf::of_frac`] are guaranteed canonical (all entries ≥ 2).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct HjCf(pub Vec<BigInt>);

impl HjCf {
    pub fn new<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        HjCf(coeffs.into_iter().map(Into::into).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn reversed(&self) -> HjCf {
        HjCf(self.0.iter().rev().cloned().collect())
    }

    pub fn is_canonical(&self) -> bool {
        self.0.iter().all(|a| *a >= BigInt::from(2))
    }

    pub fn value(&self) -> Frac {
        frac_of_hj(&self.0)
    }

    /// Canonical expansion of `p/q` with `p > q > 0` coprime, plus the two
    /// conventions `1/0 -> []` and `2/2 -> [1]`.
    pub fn of_frac(f: &Frac) -> Result<HjCf, ArithError> {
        hj_of_frac(f)
    }
}

impl fmt::Display for HjCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int_list(f, &self.0)
    }
}

impl FromStr for HjCf {
    type Err = ArithError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_int_list(s).map(HjCf)
    }
}

impl Serialize for HjCf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(IntRepr::from))
    }
}

impl<'de> Deserialize<'de> for HjCf {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<IntRepr>::deserialize(d)?;
        v.into_iter()
            .map(|x| x.into_bigint().map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()
            .map(HjCf)
    }
}

/// Incremental HJ continuant: `p_k = a_k p_{k-1} - p_{k-2}` with `p_0 = 1, p_{-1} = 0`,
/// and the same recursion for denominators seeded `q_0 = 0, q_{-1} = -1`.
///
/// Cloning a partially fed continuant lets many expansions share a prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Continuant {
    p: (BigInt, BigInt),
    q: (BigInt, BigInt),
}

impl Default for Continuant {
    fn default() -> Self {
        Continuant {
            p: (BigInt::one(), BigInt::zero()),
            q: (BigInt::zero(), -BigInt::one()),
        }
    }
}

impl Continuant {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, a: &BigInt) {
        let p = a * &self.p.0 - &self.p.1;
        let q = a * &self.q.0 - &self.q.1;
        self.p.1 = std::mem::replace(&mut self.p.0, p);
        self.q.1 = std::mem::replace(&mut self.q.0, q);
    }

    pub fn extend<'a>(&mut self, coeffs: impl IntoIterator<Item = &'a BigInt>) {
        for a in coeffs {
            self.push(a);
        }
    }

    /// Never `0/0`: consecutive continuants have determinant 1.
    pub fn value(&self) -> Frac {
        Frac::from_parts(self.p.0.clone(), self.q.0.clone())
    }
}

/// Division-free evaluation of `[a1, ..., ak]`; total on all integer sequences.
pub fn frac_of_hj(coeffs: &[BigInt]) -> Frac {
    let mut c = Continuant::new();
    c.extend(coeffs);
    c.value()
}

pub fn hj_of_frac(f: &Frac) -> Result<HjCf, ArithError> {
    if f.p.is_one() && f.q.is_zero() {
        return Ok(HjCf::default());
    }
    if f.p == BigInt::from(2) && f.q == BigInt::from(2) {
        return Ok(HjCf::new([1]));
    }
    if !is_canonical_hj_input(f) {
        return Err(ArithError::NoHjExpansion(f.clone()));
    }
    let (mut p, mut q) = (f.p.clone(), f.q.clone());
    let mut out = Vec::new();
    while q.is_positive() {
        let a = p.div_ceil(&q);
        let r = &a * &q - &p;
        out.push(a);
        p = std::mem::replace(&mut q, r);
    }
    Ok(HjCf(out))
}

/// A Euclidean continued fraction `[n1, ..., nm]^+ = n1 + 1/(n2 + ...)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EucCf(Vec<BigInt>);

impl EucCf {
    pub fn new<I, T>(coeffs: I) -> Result<Self, ArithError>
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let v: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        if v.is_empty() {
            return Err(ArithError::EmptyEuc);
        }
        if let Some(bad) = v.iter().find(|n| !n.is_positive()) {
            return Err(ArithError::NonPositiveEucCoefficient(bad.clone()));
        }
        Ok(EucCf(v))
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn value(&self) -> Frac {
        frac_of_euc(self)
    }
}

impl fmt::Display for EucCf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_int_list(f, &self.0)?;
        f.write_str("+")
    }
}

impl Serialize for EucCf {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.0.iter().map(IntRepr::from))
    }
}

/// Quotients and remainders of the Euclidean algorithm run on `p/q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EuclidRun {
    pub cf: EucCf,
    /// `r1 > r2 > ... > 1`; empty when `q == 1`.
    pub remainders: Vec<BigInt>,
}

pub fn euc_of_frac(f: &Frac) -> Result<EuclidRun, ArithError> {
    if !(f.q.is_positive() && f.p > f.q && f.is_reduced()) {
        return Err(ArithError::NoEucExpansion(f.clone()));
    }
    let (mut a, mut b) = (f.p.clone(), f.q.clone());
    let mut quotients = Vec::new();
    let mut remainders = Vec::new();
    loop {
        let (n, r) = a.div_rem(&b);
        quotients.push(n);
        if r.is_zero() {
            break;
        }
        remainders.push(r.clone());
        a = std::mem::replace(&mut b, r);
    }
    Ok(EuclidRun {
        cf: EucCf(quotients),
        remainders,
    })
}

pub fn frac_of_euc(cf: &EucCf) -> Frac {
    // Same recursion as the HJ continuant with a plus sign.
    let (mut p1, mut p2) = (BigInt::one(), BigInt::zero());
    let (mut q1, mut q2) = (BigInt::zero(), BigInt::one());
    for n in &cf.0 {
        let p = n * &p1 + &p2;
        let q = n * &q1 + &q2;
        p2 = std::mem::replace(&mut p1, p);
        q2 = std::mem::replace(&mut q1, q);
    }
    Frac::from_parts(p1, q1)
}

fn write_int_list(f: &mut fmt::Formatter<'_>, v: &[BigInt]) -> fmt::Result {
    f.write_str("[")?;
    for (i, a) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{a}")?;
    }
    f.write_str("]")
}

pub(crate) fn parse_int_list(s: &str) -> Result<Vec<BigInt>, ArithError> {
    let err = || ArithError::Parse(s.to_string());
    let inner = s
        .trim()
        .trim_start_matches('[')
        .trim_end_matches(']')
        .trim();
    if inner.is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|t| t.trim().parse::<BigInt>().map_err(|_| err()))
        .collect()
}
