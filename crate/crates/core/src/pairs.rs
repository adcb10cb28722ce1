//! Index-pair sets recording precedence between the segments of one or two
//! multisegments.

use std::fmt;

use serde::{Serialize, Serializer};

use crate::multisegment::Multisegment;
use crate::segment::Segment;

/// A pair of 0-based segment indices. Displayed 1-based as `(i,j)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pair {
    pub i: usize,
    pub j: usize,
}

impl Pair {
    pub const fn new(i: usize, j: usize) -> Self {
        Pair { i, j }
    }

    /// Build from the 1-based indices used in printed output.
    pub fn one_based(i: usize, j: usize) -> Self {
        assert!(i >= 1 && j >= 1, "1-based indices");
        Pair { i: i - 1, j: j - 1 }
    }
}

impl fmt::Display for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.i + 1, self.j + 1)
    }
}

impl fmt::Debug for Pair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Pair {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A sorted set of index pairs `(i, j)` with `i` indexing a multisegment of
/// `left_len` segments and `j` one of `right_len` segments.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PairSet {
    left_len: usize,
    right_len: usize,
    pairs: Vec<Pair>,
}

impl PairSet {
    pub fn from_pairs(left_len: usize, right_len: usize, pairs: impl IntoIterator<Item = Pair>) -> Self {
        let mut pairs: Vec<Pair> = pairs.into_iter().collect();
        pairs.sort_unstable();
        pairs.dedup();
        assert!(
            pairs.iter().all(|p| p.i < left_len && p.j < right_len),
            "pair index out of range"
        );
        PairSet {
            left_len,
            right_len,
            pairs,
        }
    }

    fn build(m: &Multisegment, m2: &Multisegment, rel: impl Fn(&Segment, &Segment) -> bool) -> Self {
        let mut pairs = Vec::new();
        for (i, d) in m.segments().iter().enumerate() {
            for (j, d2) in m2.segments().iter().enumerate() {
                if rel(d, d2) {
                    pairs.push(Pair::new(i, j));
                }
            }
        }
        PairSet {
            left_len: m.len(),
            right_len: m2.len(),
            pairs,
        }
    }

    pub fn left_len(&self) -> usize {
        self.left_len
    }

    pub fn right_len(&self) -> usize {
        self.right_len
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn iter(&self) -> impl Iterator<Item = Pair> + '_ {
        self.pairs.iter().copied()
    }

    pub fn contains(&self, p: Pair) -> bool {
        self.pairs.binary_search(&p).is_ok()
    }

    pub fn contains_ij(&self, i: usize, j: usize) -> bool {
        self.contains(Pair::new(i, j))
    }

    /// Position of `p` in the canonical (lexicographic) pair order.
    pub fn position(&self, p: Pair) -> Option<usize> {
        self.pairs.binary_search(&p).ok()
    }

    pub fn difference(&self, other: &PairSet) -> PairSet {
        PairSet {
            left_len: self.left_len,
            right_len: self.right_len,
            pairs: self.iter().filter(|p| !other.contains(*p)).collect(),
        }
    }

    pub fn filter(&self, keep: impl Fn(Pair) -> bool) -> PairSet {
        PairSet {
            left_len: self.left_len,
            right_len: self.right_len,
            pairs: self.iter().filter(|&p| keep(p)).collect(),
        }
    }
}

/// `X_{m,m2} = {(i,j) : Δ_i ≺ Δ'_j}`
pub fn pairset_x_cross(m: &Multisegment, m2: &Multisegment) -> PairSet {
    PairSet::build(m, m2, |d, d2| d.precedes(d2))
}

/// `Y_{m,m2} = {(i,j) : Δ_i ≺ shift_right(Δ'_j)}`, i.e. `b_i <= b_j <= e_i <= e_j`
/// on a common line.
pub fn pairset_y_cross(m: &Multisegment, m2: &Multisegment) -> PairSet {
    PairSet::build(m, m2, |d, d2| {
        d.line() == d2.line() && d.b() <= d2.b() && d2.b() <= d.e() && d.e() <= d2.e()
    })
}

pub fn pairset_x(m: &Multisegment) -> PairSet {
    pairset_x_cross(m, m)
}

pub fn pairset_y(m: &Multisegment) -> PairSet {
    pairset_y_cross(m, m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::segment::Segment;

    fn ms(pairs: &[(i64, i64)]) -> Multisegment {
        Multisegment::from_pairs(pairs)
    }

    fn p(i: usize, j: usize) -> Pair {
        Pair::one_based(i, j)
    }

    #[test]
    fn two_segment_example() {
        let m = ms(&[(1, 2), (0, 1)]);
        assert_eq!(pairset_x(&m).pairs(), &[p(2, 1)]);
        assert_eq!(pairset_y(&m).pairs(), &[p(1, 1), p(2, 1), p(2, 2)]);
        assert!(pairset_x(&ms(&[(0, 3)])).is_empty());
    }

    #[test]
    fn cross_examples() {
        let (a, b) = (ms(&[(0, 0)]), ms(&[(1, 1)]));
        assert_eq!(pairset_x_cross(&a, &b).pairs(), &[p(1, 1)]);
        assert!(pairset_y_cross(&a, &b).is_empty());
        assert_eq!(pairset_y_cross(&ms(&[(0, 1)]), &ms(&[(1, 2)])).pairs(), &[p(1, 1)]);
        let la = Multisegment::new([Segment::new("a", 0, 1).unwrap()]);
        let lb = Multisegment::new([Segment::new("b", 1, 2).unwrap()]);
        assert!(pairset_x_cross(&la, &lb).is_empty());
        assert!(pairset_y_cross(&la, &lb).is_empty());
    }

    #[test]
    fn y_unfolds_shifted_precedence() {
        for b1 in -2..=2 {
            for e1 in b1..=2 {
                for b2 in -2..=2 {
                    for e2 in b2..=2 {
                        let (m, m2) = (ms(&[(b1, e1)]), ms(&[(b2, e2)]));
                        let direct = m.get(0).precedes(&m2.get(0).shift_right());
                        assert_eq!(pairset_y_cross(&m, &m2).contains_ij(0, 0), direct);
                    }
                }
            }
        }
    }

    #[test]
    fn diagonal_in_y() {
        let m = ms(&[(0, 2), (1, 3), (1, 3), (-1, 0)]);
        let y = pairset_y(&m);
        for i in 0..m.len() {
            assert!(y.contains_ij(i, i));
        }
    }

    #[test]
    fn display_is_one_based() {
        assert_eq!(Pair::new(1, 0).to_string(), "(2,1)");
    }
}
