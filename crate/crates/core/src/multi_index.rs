//! Signed multi-indices and the enumerators for the three index schemes.
//!
//! Ordering is graded lexicographic: lower one-norm first, and within a
//! degree the index whose entries are lexicographically larger comes first,
//! so `(2,0)` precedes `(1,1)` precedes `(0,2)`. Every enumerator emits its
//! indices in this order, which fixes all matrix layouts.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Neg, Sub};

/// A signed exponent vector of fixed dimension.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MultiIndex(pub Vec<i64>);

impl MultiIndex {
    pub fn new(entries: Vec<i64>) -> Self {
        MultiIndex(entries)
    }

    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// The k-th unit vector in dimension n.
    pub fn unit(n: usize, k: usize) -> Self {
        let mut e = vec![0; n];
        e[k] = 1;
        MultiIndex(e)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn one_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).sum()
    }

    pub fn inf_norm(&self) -> i64 {
        self.0.iter().map(|x| x.abs()).max().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&x| x >= 0)
    }

    /// Componentwise positive part.
    pub fn positive_part(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&x| x.max(0)).collect())
    }

    /// Componentwise negative part (as a nonnegative vector).
    pub fn negative_part(&self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|&x| (-x).max(0)).collect())
    }

    /// The representative actually queried for a signed index: the index
    /// itself when its first nonzero entry is positive (or it is zero),
    /// otherwise its negation. Returns the representative and whether the
    /// original was flipped (so its value must be conjugated).
    pub fn canonical(&self) -> (MultiIndex, bool) {
        for &x in &self.0 {
            if x > 0 {
                return (self.clone(), false);
            }
            if x < 0 {
                return (-self.clone(), true);
            }
        }
        (self.clone(), false)
    }

    pub fn is_canonical(&self) -> bool {
        !self.canonical().1
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        self.one_norm()
            .cmp(&other.one_norm())
            .then_with(|| other.0.cmp(&self.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &MultiIndex {
    type Output = MultiIndex;
    fn add(self, rhs: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), rhs.dim());
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &MultiIndex {
    type Output = MultiIndex;
    fn sub(self, rhs: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), rhs.dim());
        MultiIndex(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for MultiIndex {
    type Output = MultiIndex;
    fn neg(self) -> MultiIndex {
        MultiIndex(self.0.into_iter().map(|x| -x).collect())
    }
}

impl Neg for &MultiIndex {
    type Output = MultiIndex;
    fn neg(self) -> MultiIndex {
        MultiIndex(self.0.iter().map(|x| -x).collect())
    }
}

/// All nonnegative indices of exact one-norm `degree`, graded-lex order.
pub fn natural_of_degree(n: usize, degree: i64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    fill_degree(&mut out, &mut current, 0, degree);
    out
}

fn fill_degree(out: &mut Vec<MultiIndex>, current: &mut Vec<i64>, pos: usize, remaining: i64) {
    let n = current.len();
    if pos == n - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        current[pos] = 0;
        return;
    }
    for v in (0..=remaining).rev() {
        current[pos] = v;
        fill_degree(out, current, pos + 1, remaining - v);
    }
    current[pos] = 0;
}

/// All nonnegative indices with one-norm at most `degree`, graded-lex order.
/// This is the simplex scheme; its cardinality is C(n+degree, n).
pub fn natural_up_to(n: usize, degree: i64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    for d in 0..=degree.max(-1) {
        out.extend(natural_of_degree(n, d));
    }
    out
}

/// All signed indices expressible as a difference of two nonnegative indices
/// of one-norm at most `degree` each, sorted. Equivalently: indices whose
/// positive and negative parts both have one-norm at most `degree`.
pub fn signed_differences(n: usize, degree: i64) -> Vec<MultiIndex> {
    let simplex = natural_up_to(n, degree);
    let mut out = Vec::new();
    for p in &simplex {
        for m in &simplex {
            // disjoint supports give each difference exactly once
            if p.0.iter().zip(&m.0).all(|(&a, &b)| a == 0 || b == 0) {
                out.push(p - m);
            }
        }
    }
    out.sort();
    out
}

/// All signed indices with sup-norm at most `degree`, sorted;
/// cardinality (2·degree+1)^n.
pub fn box_up_to(n: usize, degree: i64) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut current = vec![0i64; n];
    fill_box(&mut out, &mut current, 0, degree);
    out.sort();
    out
}

fn fill_box(out: &mut Vec<MultiIndex>, current: &mut Vec<i64>, pos: usize, bound: i64) {
    if pos == current.len() {
        out.push(MultiIndex(current.clone()));
        return;
    }
    for v in -bound..=bound {
        current[pos] = v;
        fill_box(out, current, pos + 1, bound);
    }
    current[pos] = 0;
}

/// First `count` nonnegative indices in graded-lex order.
pub fn first_natural(n: usize, count: usize) -> Vec<MultiIndex> {
    let mut out = Vec::new();
    let mut d = 0;
    while out.len() < count {
        out.extend(natural_of_degree(n, d));
        d += 1;
    }
    out.truncate(count);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn norms() {
        let a = MultiIndex::new(vec![2, -3, 0]);
        assert_eq!(a.one_norm(), 5);
        assert_eq!(a.inf_norm(), 3);
        assert!(!a.is_nonnegative());
        assert_eq!(a.positive_part().entries(), &[2, 0, 0]);
        assert_eq!(a.negative_part().entries(), &[0, 3, 0]);
    }

    #[test]
    fn graded_lex_order() {
        let idx = natural_up_to(2, 2);
        let flat: Vec<Vec<i64>> = idx.iter().map(|m| m.0.clone()).collect();
        assert_eq!(
            flat,
            vec![
                vec![0, 0],
                vec![1, 0],
                vec![0, 1],
                vec![2, 0],
                vec![1, 1],
                vec![0, 2]
            ]
        );
    }

    #[test]
    fn canonical_representative() {
        let a = MultiIndex::new(vec![0, -2, 1]);
        let (rep, flipped) = a.canonical();
        assert!(flipped);
        assert_eq!(rep.entries(), &[0, 2, -1]);
        assert!(MultiIndex::zero(3).is_canonical());
        assert!(MultiIndex::new(vec![0, 1, -5]).is_canonical());
    }

    #[test]
    fn scheme_cardinalities() {
        // simplex: C(n+d, n)
        assert_eq!(natural_up_to(1, 3).len(), 4);
        assert_eq!(natural_up_to(2, 3).len(), 10);
        assert_eq!(natural_up_to(10, 2).len(), 66);
        // box: (2d+1)^n
        assert_eq!(box_up_to(2, 1).len(), 9);
        // signed differences, total and canonical
        let s = signed_differences(2, 2);
        assert_eq!(s.len(), 19);
        assert_eq!(s.iter().filter(|g| g.is_canonical()).count(), 10);
        let s = signed_differences(5, 2);
        assert_eq!(s.iter().filter(|g| g.is_canonical()).count(), 136);
    }

    #[test]
    fn signed_differences_no_duplicates() {
        let mut s = signed_differences(3, 2);
        let before = s.len();
        s.dedup();
        assert_eq!(s.len(), before);
    }

    #[test]
    fn containment() {
        for n in 1..=3 {
            for d in 0..=3 {
                let simplex = natural_up_to(n, d);
                let signed = signed_differences(n, d);
                let bx = box_up_to(n, d);
                assert!(simplex.len() <= signed.len());
                assert!(signed.len() <= bx.len());
                for a in &simplex {
                    assert!(signed.contains(a));
                }
                for a in &signed {
                    assert!(bx.contains(a));
                }
            }
        }
    }

    #[test]
    fn first_natural_prefix() {
        let f = first_natural(2, 4);
        let flat: Vec<Vec<i64>> = f.iter().map(|m| m.0.clone()).collect();
        assert_eq!(flat, vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![2, 0]]);
    }
}
