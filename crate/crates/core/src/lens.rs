//! Lens spaces, the balls `B_{p,q}` and their boundaries.
//!
//! Orientation convention: `L(p,q)` is `-p/q` surgery on the unknot, so
//! `-L(p,q) = L(p, p-q)`. The ball `B_{p,q}` (gcd 1 or 2) has boundary
//! `L(p², pq-1)`; `-B_{p,q}` has the reversed boundary.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::mod_inverse;
use crate::json::IntRepr;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LensError {
    #[error("L({p},{q}): order must be positive")]
    NonPositiveOrder { p: BigInt, q: BigInt },
    #[error("L({p},{q}): p and q must be coprime")]
    NotCoprime { p: BigInt, q: BigInt },
    #[error("B_{{{p},{q}}}: need gcd(p,q) in {{1,2}} and p >= 0")]
    BadBall { p: BigInt, q: BigInt },
}

/// Orientation sign `δ = ±1`. Serialised as `1` / `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Option<Sign> {
        match v {
            1 => Some(Sign::Plus),
            -1 => Some(Sign::Minus),
            _ => None,
        }
    }

    pub fn of(n: &BigInt) -> Option<Sign> {
        if n.is_positive() {
            Some(Sign::Plus)
        } else if n.is_negative() {
            Some(Sign::Minus)
        } else {
            None
        }
    }

    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn as_bigint(self) -> BigInt {
        BigInt::from(self.as_i64())
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.as_i64())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

/// `L(p,q)` with `0 <= q < p` and `gcd(p,q) = 1`; `L(1,0)` is S³.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LensSpace {
    p: BigInt,
    q: BigInt,
}

impl LensSpace {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>) -> Result<Self, LensError> {
        let (p, q) = (p.into(), q.into());
        if !p.is_positive() {
            return Err(LensError::NonPositiveOrder { p, q });
        }
        if !p.gcd(&q).is_one() {
            return Err(LensError::NotCoprime { p, q });
        }
        let q = q.mod_floor(&p);
        Ok(LensSpace { p, q })
    }

    pub fn sphere() -> Self {
        LensSpace {
            p: BigInt::one(),
            q: BigInt::zero(),
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    /// `-L(p,q) = L(p, p-q)`.
    pub fn reverse_orientation(&self) -> LensSpace {
        LensSpace {
            q: (-&self.q).mod_floor(&self.p),
            p: self.p.clone(),
        }
    }

    pub fn with_sign(&self, s: Sign) -> LensSpace {
        match s {
            Sign::Plus => self.clone(),
            Sign::Minus => self.reverse_orientation(),
        }
    }

    fn q_inverse(&self) -> BigInt {
        mod_inverse(&self.q, &self.p).expect("lens space invariant: gcd(p,q) = 1")
    }

    /// Least representative of `{q, q⁻¹} mod p`.
    pub fn canonical_oriented(&self) -> LensSpace {
        let inv = self.q_inverse();
        LensSpace {
            p: self.p.clone(),
            q: self.q.clone().min(inv),
        }
    }

    /// Least representative of `{±q, ±q⁻¹} mod p`.
    pub fn canonical_unoriented(&self) -> LensSpace {
        let a = self.canonical_oriented();
        let b = self.reverse_orientation().canonical_oriented();
        a.min(b)
    }

    pub fn equiv_oriented(&self, other: &LensSpace) -> bool {
        self.p == other.p
            && (self.q == other.q
                || (&self.q * &other.q).mod_floor(&self.p).is_one()
                || self.p.is_one())
    }

    pub fn equiv_unoriented(&self, other: &LensSpace) -> bool {
        self.equiv_oriented(other) || self.equiv_oriented(&other.reverse_orientation())
    }
}

impl fmt::Display for LensSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L({},{})", self.p, self.q)
    }
}

impl Serialize for LensSpace {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (IntRepr::from(&self.p), IntRepr::from(&self.q)).serialize(s)
    }
}

impl<'de> Deserialize<'de> for LensSpace {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let (p, q) = <(IntRepr, IntRepr)>::deserialize(d)?;
        let p = p.into_bigint().map_err(D::Error::custom)?;
        let q = q.into_bigint().map_err(D::Error::custom)?;
        LensSpace::new(p, q).map_err(D::Error::custom)
    }
}

pub fn equiv_oriented(a: &LensSpace, b: &LensSpace) -> bool {
    a.equiv_oriented(b)
}

pub fn equiv_unoriented(a: &LensSpace, b: &LensSpace) -> bool {
    a.equiv_unoriented(b)
}

pub fn reverse_orientation(a: &LensSpace) -> LensSpace {
    a.reverse_orientation()
}

/// A formal connected sum; equality ignores the order of summands.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct LensSum(Vec<LensSpace>);

impl LensSum {
    pub fn new(mut summands: Vec<LensSpace>) -> Self {
        summands.sort();
        LensSum(summands)
    }

    pub fn summands(&self) -> &[LensSpace] {
        &self.0
    }

    /// Summand-wise oriented equivalence, up to reordering.
    pub fn equiv_oriented(&self, other: &LensSum) -> bool {
        let key = |s: &LensSum| {
            let mut v: Vec<_> = s.0.iter().map(LensSpace::canonical_oriented).collect();
            v.sort();
            v
        };
        key(self) == key(other)
    }
}

/// Parameters of `δ·B_{p,q}`: `p >= 0`, `gcd(p,q) ∈ {1,2}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BallParams {
    p: BigInt,
    q: BigInt,
    sign: Sign,
}

impl BallParams {
    pub fn new(p: impl Into<BigInt>, q: impl Into<BigInt>, sign: Sign) -> Result<Self, LensError> {
        let (p, q) = (p.into(), q.into());
        let g = p.gcd(&q);
        if p.is_negative() || g.is_zero() || g > BigInt::from(2) {
            return Err(LensError::BadBall { p, q });
        }
        Ok(BallParams { p, q, sign })
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn with_sign(&self, sign: Sign) -> BallParams {
        BallParams {
            sign,
            ..self.clone()
        }
    }

    pub fn negate(&self) -> BallParams {
        self.with_sign(-self.sign)
    }

    /// Representative with `0 <= q <= p/2` (same ball up to diffeomorphism).
    pub fn normalized(&self) -> BallParams {
        let q = if self.p.is_zero() {
            self.q.abs()
        } else {
            let r = self.q.mod_floor(&self.p);
            let s = &self.p - &r;
            r.min(s)
        };
        BallParams {
            p: self.p.clone(),
            q,
            sign: self.sign,
        }
    }

    pub fn is_normalized(&self) -> bool {
        *self == self.normalized()
    }

    /// `±B_{2,0} = ∓B_{2,1}`: the other name of a `p = 2` ball.
    pub fn alternate(&self) -> Option<BallParams> {
        let n = self.normalized();
        if n.p != BigInt::from(2) {
            return None;
        }
        let q = if n.q.is_zero() { 1 } else { 0 };
        Some(BallParams {
            p: n.p,
            q: BigInt::from(q),
            sign: -n.sign,
        })
    }

    pub fn boundary(&self) -> LensSpace {
        boundary_of_ball(self)
    }
}

impl fmt::Display for BallParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign == Sign::Minus {
            f.write_str("-")?;
        }
        write!(f, "B_{{{},{}}}", self.p, self.q)
    }
}

impl Serialize for BallParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        (IntRepr::from(&self.p), IntRepr::from(&self.q), self.sign).serialize(s)
    }
}

impl<'de> Deserialize<'de> for BallParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let (p, q, sign) = <(IntRepr, IntRepr, Sign)>::deserialize(d)?;
        let p = p.into_bigint().map_err(D::Error::custom)?;
        let q = q.into_bigint().map_err(D::Error::custom)?;
        BallParams::new(p, q, sign).map_err(D::Error::custom)
    }
}

/// Normalised `+B_{p,q}`.
pub fn normalize_ball_params(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<BallParams, LensError> {
    Ok(BallParams::new(p, q, Sign::Plus)?.normalized())
}

/// `∂(δ·B_{p,q}) = δ·L(p², pq-1)`; `B_{0,q}` and `B_{1,q}` bound S³.
pub fn boundary_of_ball(b: &BallParams) -> LensSpace {
    if b.p <= BigInt::one() {
        return LensSpace::sphere();
    }
    let l = LensSpace::new(&b.p * &b.p, &b.p * &b.q - 1)
        .expect("p(pq-1) - q·p² = -p, so gcd(p², pq-1) = 1");
    l.with_sign(b.sign)
}

/// All normalised balls `δ·B_{a,b}` with `δ·∂B_{a,b}` oriented-equivalent to `l`.
///
/// Each ball whose boundary matches `l` up to orientation appears once per
/// orientation that works. Sorted by `(gcd, q, sign)`.
pub fn recognize_ball_boundary(l: &LensSpace) -> Vec<BallParams> {
    let a = l.p.sqrt();
    if &a * &a != l.p {
        return Vec::new();
    }
    let mut out = Vec::new();
    if a.is_one() {
        out.push(BallParams {
            p: a,
            q: BigInt::zero(),
            sign: Sign::Plus,
        });
        return out;
    }
    let half: BigInt = &a / 2;
    let mut b = BigInt::zero();
    while b <= half {
        let g = a.gcd(&b);
        if g <= BigInt::from(2) {
            let ball = BallParams {
                p: a.clone(),
                q: b.clone(),
                sign: Sign::Plus,
            };
            let d = boundary_of_ball(&ball);
            if d.equiv_oriented(l) {
                out.push(ball.clone());
            }
            if d.reverse_orientation().equiv_oriented(l) {
                out.push(ball.negate());
            }
        }
        b += 1;
    }
    out.sort_by(|x, y| (x.p.gcd(&x.q), &x.q, x.sign).cmp(&(y.p.gcd(&y.q), &y.q, y.sign)));
    out
}

/// Decides whether a lens space bounds a rational homology ball, and names one.
///
/// Only the `B_{p,q}` family is built in; other families plug in here.
pub trait BallOracle: Sync {
    /// Signed balls `δ·B` with `δ·∂B ≅ l` (oriented); empty when unrecognised.
    fn recognize(&self, l: &LensSpace) -> Vec<BallParams>;
}

/// Brute-force recognition over the whole `B_{p,q}` family.
#[derive(Debug, Default, Clone, Copy)]
pub struct BallFamilyOracle;

impl BallOracle for BallFamilyOracle {
    fn recognize(&self, l: &LensSpace) -> Vec<BallParams> {
        recognize_ball_boundary(l)
    }
}

/// Precomputed recognition for balls with `p <= max_p`, falling back to brute
/// force above that. Answers always agree with [`recognize_ball_boundary`].
#[derive(Debug, Clone)]
pub struct TabulatedOracle {
    max_p: u64,
    table: HashMap<LensSpace, Vec<BallParams>>,
}

impl TabulatedOracle {
    pub fn new(max_p: u64) -> Self {
        let mut table: HashMap<LensSpace, Vec<BallParams>> = HashMap::new();
        for a in 1..=max_p {
            for b in 0..=a / 2 {
                if a.gcd(&b) > 2 {
                    continue;
                }
                let ball = BallParams {
                    p: BigInt::from(a),
                    q: BigInt::from(b),
                    sign: Sign::Plus,
                };
                if a == 1 && b > 0 {
                    continue;
                }
                // S³ is recorded once, as +B_{1,0}
                let signs: &[Sign] = if a == 1 {
                    &[Sign::Plus]
                } else {
                    &[Sign::Plus, Sign::Minus]
                };
                for &s in signs {
                    let ball = ball.with_sign(s);
                    let key = boundary_of_ball(&ball).canonical_oriented();
                    table.entry(key).or_default().push(ball);
                }
            }
        }
        for v in table.values_mut() {
            v.sort_by(|x, y| (x.p.gcd(&x.q), &x.q, x.sign).cmp(&(y.p.gcd(&y.q), &y.q, y.sign)));
            v.dedup();
        }
        TabulatedOracle { max_p, table }
    }

    pub fn max_p(&self) -> u64 {
        self.max_p
    }
}

impl BallOracle for TabulatedOracle {
    fn recognize(&self, l: &LensSpace) -> Vec<BallParams> {
        if l.p > BigInt::from(self.max_p) * self.max_p {
            return recognize_ball_boundary(l);
        }
        self.table
            .get(&l.canonical_oriented())
            .cloned()
            .unwrap_or_default()
    }
}

/// Checks the lens-space identities behind the three example families of
/// Berge-type embeddings at parameter `r >= 2`.
pub fn berge_example_identities(r: u64) -> bool {
    if r < 2 {
        return false;
    }
    let r = BigInt::from(r);
    let ball = |p: &BigInt, q: &BigInt| {
        BallParams::new(p.clone(), q.clone(), Sign::Plus).map(|b| b.boundary())
    };
    let lens = |p: BigInt, q: BigInt| LensSpace::new(p, q);
    let check = |b: Result<LensSpace, LensError>, l: Result<LensSpace, LensError>| match (b, l) {
        (Ok(b), Ok(l)) => b.equiv_oriented(&l),
        _ => false,
    };
    let two = BigInt::from(2);
    let a = &two * &r + 2;
    let first = check(ball(&a, &two), lens(&a * &a, BigInt::from(4) * &r + 3));
    let second = check(ball(&r, &(&r - 2)), lens(&r * &r, &r * &r - &two * &r - 1));
    let r1 = &r + 1;
    let third = check(ball(&r1, &two), lens(&r1 * &r1, &two * &r + 1));
    first && second && third
}
