//! The 2-Farey tree and the classical Farey tree.
//!
//! Nodes are ordered triples `(f1, f2, f3)` of formal fractions. The left child
//! is `(f1, f1⊕f2, f2)` and the right child `(f2, f2⊕f3, f3)`, where `⊕` is the
//! unreduced mediant. In the 2-Farey tree adjacent entries have determinant 2,
//! all denominators are even, and exactly one entry per node has gcd 2.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{det, mediant, mod_inverse, Frac};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FareyError {
    #[error("{0} is not a middle entry of the 2-Farey tree (need q even, p > q, gcd(p, q/2) = 1)")]
    NotInTree(Frac),
    #[error("complete_pair needs coprime positive integers, got ({0}, {1})")]
    BadPair(BigInt, BigInt),
    #[error("cannot parse path {0:?}; expected a word in L and R")]
    BadPath(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    L,
    R,
}

/// A word in `{L, R}` from the root. Displays as e.g. `LRL`; the root is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreePath(pub Vec<Step>);

impl TreePath {
    pub fn root() -> Self {
        TreePath(Vec::new())
    }

    pub fn child(&self, s: Step) -> TreePath {
        let mut v = self.0.clone();
        v.push(s);
        TreePath(v)
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }
}

impl fmt::Display for TreePath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            f.write_str(match s {
                Step::L => "L",
                Step::R => "R",
            })?;
        }
        Ok(())
    }
}

impl FromStr for TreePath {
    type Err = FareyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.trim()
            .chars()
            .map(|c| match c {
                'L' | 'l' => Ok(Step::L),
                'R' | 'r' => Ok(Step::R),
                _ => Err(FareyError::BadPath(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(TreePath)
    }
}

impl Serialize for TreePath {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for TreePath {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        String::deserialize(d)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TripleNode {
    pub fracs: [Frac; 3],
    pub path: TreePath,
}

impl TripleNode {
    pub fn middle(&self) -> &Frac {
        &self.fracs[1]
    }

    pub fn max_numerator(&self) -> BigInt {
        self.fracs
            .iter()
            .map(|f| f.p().abs())
            .max()
            .expect("three entries")
    }
}

impl fmt::Display for TripleNode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = &self.fracs;
        write!(f, "({a}, {b}, {c})")
    }
}

fn fr(p: i64, q: i64) -> Frac {
    Frac::new(p, q).expect("nonzero literal")
}

pub fn two_farey_root() -> TripleNode {
    TripleNode {
        fracs: [fr(1, 0), fr(3, 2), fr(2, 2)],
        path: TreePath::root(),
    }
}

pub fn farey_root() -> TripleNode {
    TripleNode {
        fracs: [fr(1, 0), fr(1, 1), fr(0, 1)],
        path: TreePath::root(),
    }
}

pub fn left_child(n: &TripleNode) -> TripleNode {
    let [a, b, _] = &n.fracs;
    TripleNode {
        fracs: [a.clone(), mediant(a, b), b.clone()],
        path: n.path.child(Step::L),
    }
}

pub fn right_child(n: &TripleNode) -> TripleNode {
    let [_, b, c] = &n.fracs;
    TripleNode {
        fracs: [b.clone(), mediant(b, c), c.clone()],
        path: n.path.child(Step::R),
    }
}

pub fn children(n: &TripleNode) -> (TripleNode, TripleNode) {
    (left_child(n), right_child(n))
}

pub fn child(n: &TripleNode, s: Step) -> TripleNode {
    match s {
        Step::L => left_child(n),
        Step::R => right_child(n),
    }
}

/// Walks `path` down from `root`.
pub fn node_at(root: &TripleNode, path: &TreePath) -> TripleNode {
    path.0.iter().fold(root.clone(), |n, &s| child(&n, s))
}

/// The two nodes above the root in the enlarged tree, followed by the root.
/// Each node's left child is the next one. Paths are empty.
pub fn enlarged_base_chain() -> Vec<TripleNode> {
    let first = TripleNode {
        fracs: [fr(1, 0), fr(1, 2), fr(0, 2)],
        path: TreePath::root(),
    };
    let second = TripleNode {
        path: TreePath::root(),
        ..left_child(&first)
    };
    let root = TripleNode {
        path: TreePath::root(),
        ..left_child(&second)
    };
    vec![first, second, root]
}

/// Sum rule, determinant rule, even denominators, one gcd-2 entry.
pub fn validate_two_farey_triple(fracs: &[Frac; 3]) -> bool {
    let two = BigInt::from(2);
    let [a, b, c] = fracs;
    let sum = *b.p() == a.p() + c.p() && *b.q() == a.q() + c.q();
    let dets = det(a, b) == two && det(b, c) == two;
    let gcd2 = fracs.iter().filter(|f| f.gcd() == two).count() == 1;
    let reduced = fracs.iter().filter(|f| f.is_reduced()).count() == 2;
    let even = fracs.iter().all(|f| f.q().is_even());
    sum && dets && gcd2 && reduced && even
}

/// The exact set of middle entries: `q` even, `p > q`, `gcd(p, q/2) = 1`.
pub fn is_two_farey_middle(f: &Frac) -> bool {
    let (p, q) = (f.p(), f.q());
    q.is_positive() && q.is_even() && p > q && p.gcd(&(q / 2)).is_one()
}

/// Path to the unique node whose middle entry is `f`.
pub fn locate(f: &Frac) -> Result<TreePath, FareyError> {
    if !is_two_farey_middle(f) {
        return Err(FareyError::NotInTree(f.clone()));
    }
    let mut node = two_farey_root();
    // The middle numerator grows by at least 1 per step.
    let cap = f.p().clone();
    let mut steps = BigInt::zero();
    while node.middle() != f {
        if steps > cap {
            return Err(FareyError::NotInTree(f.clone()));
        }
        // larger value goes left: det(f, m) > 0 iff f > m (positive denominators)
        node = if det(f, node.middle()).is_positive() {
            left_child(&node)
        } else {
            right_child(&node)
        };
        steps += 1;
    }
    Ok(node.path)
}

/// Even `q1, q2` with `p1 q2 - p2 q1 = ±2`, `0 <= q_i <= max(p_i, 2)`.
/// When both signs are possible the `+2` solution is returned.
pub fn complete_pair(
    p1: impl Into<BigInt>,
    p2: impl Into<BigInt>,
) -> Result<(BigInt, BigInt), FareyError> {
    let (p1, p2) = (p1.into(), p2.into());
    if !p1.is_positive() || !p2.is_positive() || !p1.gcd(&p2).is_one() {
        return Err(FareyError::BadPair(p1, p2));
    }
    let two = BigInt::from(2);
    let in_range = |q: &BigInt, p: &BigInt| !q.is_negative() && *q <= p.clone().max(two.clone());
    // q1 = 2a, q2 = 2b with p1 b - p2 a = e, e = ±1
    let inv = mod_inverse(&p1, &p2).expect("coprime");
    for e in [1i64, -1] {
        let b0 = (&inv * e).mod_floor(&p2);
        for b in [b0.clone(), &b0 + &p2] {
            let num = &p1 * &b - e;
            if !num.is_multiple_of(&p2) {
                continue;
            }
            let a = num / &p2;
            let (q1, q2) = (&a * 2, &b * 2);
            if in_range(&q1, &p1) && in_range(&q2, &p2) {
                return Ok((q1, q2));
            }
        }
    }
    Err(FareyError::BadPair(p1, p2))
}

/// All 2-Farey nodes whose three numerators are `<= bound`, depth first, L before R.
pub fn enumerate_two_farey(bound: u64) -> Vec<TripleNode> {
    enumerate_from(&two_farey_root(), bound)
}

/// As [`enumerate_two_farey`], preceded by the in-bound nodes of the enlarged base chain.
pub fn enumerate_two_farey_enlarged(bound: u64) -> Vec<TripleNode> {
    let b = BigInt::from(bound);
    let mut out: Vec<TripleNode> = enlarged_base_chain()
        .into_iter()
        .take(2)
        .filter(|n| n.max_numerator() <= b)
        .collect();
    out.extend(enumerate_two_farey(bound));
    out
}

/// Depth-first enumeration below `root`, pruned on numerator size. Numerators
/// never shrink from parent to child, so the pruning is exact.
pub fn enumerate_from(root: &TripleNode, bound: u64) -> Vec<TripleNode> {
    let b = BigInt::from(bound);
    let mut out = Vec::new();
    let mut stack = vec![root.clone()];
    while let Some(n) = stack.pop() {
        if n.max_numerator() > b {
            continue;
        }
        let (l, r) = children(&n);
        stack.push(r);
        stack.push(l);
        out.push(n);
    }
    out
}

/// All nodes of depth `<= depth` below `root`, depth first.
pub fn enumerate_depth(root: &TripleNode, depth: usize) -> Vec<TripleNode> {
    let mut out = Vec::new();
    let mut stack = vec![root.clone()];
    while let Some(n) = stack.pop() {
        if n.path.depth() < depth {
            let (l, r) = children(&n);
            stack.push(r);
            stack.push(l);
        }
        out.push(n);
    }
    out
}
