//! Framing sequences from the blow-up construction of `B_{p,q}`.
//!
//! Blowing up along the Euclidean algorithm of `p/q` leaves a linear chain of
//! unknots whose framings (negated) read `hj(p/q) ++ [1] ++ reverse(hj(p/(p-q)))`.
//! [`framing_sequence`] uses that form; [`framing_sequence_closed_form`] builds
//! the same sequence from the Euclidean quotients and serves as a cross-check.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

use crate::arith::{dual, euc_of_frac, hj_of_frac, ArithError, Frac, HjCf};
use crate::json::IntRepr;

/// Framings of the chain, with the index of the `1` that separates the two halves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FramingSequence {
    pub entries: Vec<BigInt>,
    pub separator: usize,
}

impl FramingSequence {
    pub fn left(&self) -> &[BigInt] {
        &self.entries[..self.separator]
    }

    pub fn right(&self) -> &[BigInt] {
        &self.entries[self.separator + 1..]
    }

    pub fn reversed(&self) -> FramingSequence {
        FramingSequence {
            entries: self.entries.iter().rev().cloned().collect(),
            separator: self.entries.len() - 1 - self.separator,
        }
    }
}

impl fmt::Display for FramingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, a) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if i == self.separator {
                write!(f, "({a})")?;
            } else {
                write!(f, "{a}")?;
            }
        }
        f.write_str("]")
    }
}

impl Serialize for FramingSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            entries: Vec<IntRepr>,
            separator: usize,
        }
        Repr {
            entries: self.entries.iter().map(IntRepr::from).collect(),
            separator: self.separator,
        }
        .serialize(s)
    }
}

/// Coprime reduction: `gcd(p,q) = 2` inputs are halved, as for `B_{p,q}`
/// with even `p`.
fn halve(p: &BigInt, q: &BigInt) -> Result<Frac, ArithError> {
    let f = Frac::new(p.clone(), q.clone())?;
    if f.gcd() == BigInt::from(2) {
        return Frac::new(p / 2, q / 2);
    }
    Ok(f)
}

pub fn framing_sequence(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<FramingSequence, ArithError> {
    let f = halve(&p.into(), &q.into())?;
    // euc_of_frac carries the domain check (p > q >= 1, coprime)
    euc_of_frac(&f)?;
    let left = hj_of_frac(&f)?;
    let right = hj_of_frac(&dual(&f)?)?.reversed();
    let separator = left.len();
    let mut entries = left.0;
    entries.push(BigInt::one());
    entries.extend(right.0);
    Ok(FramingSequence { entries, separator })
}

/// The same sequence assembled directly from the Euclidean quotients `n_1..n_m`.
///
/// Left of the separator, block `i` is `n_i + [i>1] + [i<m]` for odd `i` and
/// `n_i - 1` twos for even `i`; right of it the blocks run `i = m..1` with the
/// parities swapped.
pub fn framing_sequence_closed_form(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<FramingSequence, ArithError> {
    let f = halve(&p.into(), &q.into())?;
    let run = euc_of_frac(&f)?;
    let n = run.cf.coeffs();
    let m = n.len();
    let bumped = |i: usize| &n[i - 1] + i64::from(i > 1) + i64::from(i < m);
    let twos = |i: usize| {
        let k = (&n[i - 1] - BigInt::one())
            .to_usize()
            .expect("quotient count fits in memory");
        std::iter::repeat_n(BigInt::from(2), k)
    };
    let mut entries = Vec::new();
    for i in 1..=m {
        if i.is_odd() {
            entries.push(bumped(i));
        } else {
            entries.extend(twos(i));
        }
    }
    let separator = entries.len();
    entries.push(BigInt::one());
    for i in (1..=m).rev() {
        if i.is_even() {
            entries.push(bumped(i));
        } else {
            entries.extend(twos(i));
        }
    }
    Ok(FramingSequence { entries, separator })
}

/// `pq = n_1 q² + n_2 r_1² + ... + n_{m-1} r_{m-2}² + n_m`.
pub fn euclid_identity_check(
    p: impl Into<BigInt>,
    q: impl Into<BigInt>,
) -> Result<bool, ArithError> {
    let f = Frac::new(p.into(), q.into())?;
    let run = euc_of_frac(&f)?;
    // s = (q, r_1, ..., r_{m-1} = 1)
    let s = std::iter::once(f.q()).chain(run.remainders.iter());
    let rhs: BigInt = run.cf.coeffs().iter().zip(s).map(|(n, s)| n * s * s).sum();
    Ok(f.p() * f.q() == rhs)
}

/// The HJ halves of the framing sequence as continued fractions.
pub fn framing_halves(seq: &FramingSequence) -> (HjCf, HjCf) {
    (HjCf(seq.left().to_vec()), HjCf(seq.right().to_vec()))
}
