//! Exponent vectors for sparse polynomials and Weyl algebra keys.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

use crate::rat::factorial;

/// Componentwise exponent vector.  The `Ord` implementation is graded
/// lexicographic (total degree first, then lex), which fixes the term order
/// used everywhere a leading term matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(n: usize) -> Self {
        MultiIndex(vec![0; n])
    }

    /// Standard basis exponent, a single 1 in position `i`.
    pub fn unit(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i] = 1;
        MultiIndex(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Total degree.
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        assert_eq!(self.len(), other.len());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise difference, `None` if any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        assert_eq!(self.len(), other.len());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<u32>>>()
            .map(MultiIndex)
    }

    /// True iff `self <= other` componentwise.
    pub fn divides(&self, other: &MultiIndex) -> bool {
        assert_eq!(self.len(), other.len());
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Product of componentwise factorials.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.0 {
            acc *= factorial(e);
        }
        acc
    }

    /// Iterates every exponent vector `lo <= e <= hi` componentwise.
    pub fn box_range(lo: &MultiIndex, hi: &MultiIndex) -> Vec<MultiIndex> {
        assert_eq!(lo.len(), hi.len());
        let mut out = Vec::new();
        let mut cur = lo.0.clone();
        if lo.0.iter().zip(&hi.0).any(|(a, b)| a > b) {
            return out;
        }
        loop {
            out.push(MultiIndex(cur.clone()));
            let mut pos = 0;
            loop {
                if pos == cur.len() {
                    return out;
                }
                if cur[pos] < hi.0[pos] {
                    cur[pos] += 1;
                    break;
                }
                cur[pos] = lo.0[pos];
                pos += 1;
            }
        }
    }
}

impl Ord for MultiIndex {
    fn cmp(&self, other: &Self) -> Ordering {
        assert_eq!(self.len(), other.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for MultiIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({})",
            self.0
                .iter()
                .map(|e| e.to_string())
                .collect::<Vec<_>>()
                .join(",")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_order() {
        let a = MultiIndex(vec![2, 0]);
        let b = MultiIndex(vec![0, 3]);
        let c = MultiIndex(vec![1, 1]);
        assert!(a < b); // degree 2 < 3
        assert!(c < a); // same degree, lex on (1,1) vs (2,0)
    }

    #[test]
    fn sub_and_divides() {
        let a = MultiIndex(vec![2, 1]);
        let b = MultiIndex(vec![1, 1]);
        assert_eq!(a.checked_sub(&b), Some(MultiIndex(vec![1, 0])));
        assert_eq!(b.checked_sub(&a), None);
        assert!(b.divides(&a));
        assert!(!a.divides(&b));
    }

    #[test]
    fn box_enumeration() {
        let lo = MultiIndex(vec![0, 1]);
        let hi = MultiIndex(vec![1, 2]);
        let all = MultiIndex::box_range(&lo, &hi);
        assert_eq!(all.len(), 4);
        assert!(all.contains(&MultiIndex(vec![1, 2])));
    }

    #[test]
    fn factorial_product() {
        assert_eq!(MultiIndex(vec![3, 2]).factorial(), BigInt::from(12));
    }
}
