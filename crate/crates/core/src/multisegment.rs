//! Multisegments: finite multisets of segments kept in canonical order.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::segment::{CuspidalPoint, Line, Segment};

/// A multiset of segments.
///
/// Segments are stored in descending total order, equal segments adjacent.
/// The 0-based position in [`Multisegment::segments`] is the index used by
/// every pair set, matching and coefficient vector built from this value.
/// Since `a ≺ b` implies `a < b`, no segment precedes a later one.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

/// Multiplicity map of the points covered by a multisegment.
pub type SuppMultiset = BTreeMap<CuspidalPoint, u64>;

/// Selection predicates for [`Multisegment::filter`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SegFilter {
    /// segments `>= d` in the total order
    GeSeg,
    /// segments whose end lies in `d`
    EndIn,
    /// segments whose beginning lies in `d`
    BeginIn,
}

impl Multisegment {
    pub fn new(segs: impl IntoIterator<Item = Segment>) -> Self {
        let mut segs: Vec<Segment> = segs.into_iter().collect();
        segs.sort_by(|a, b| b.cmp(a));
        Multisegment { segs }
    }

    pub fn zero() -> Self {
        Multisegment::default()
    }

    /// Convenience constructor for the default line; panics on an empty pair.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Multisegment::new(
            pairs
                .iter()
                .map(|&(b, e)| Segment::on_default(b, e).expect("nonempty segment")),
        )
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn get(&self, i: usize) -> &Segment {
        &self.segs[i]
    }

    pub fn add(&self, other: &Multisegment) -> Multisegment {
        Multisegment::new(self.segs.iter().chain(&other.segs).cloned())
    }

    pub fn with(&self, seg: Segment) -> Multisegment {
        Multisegment::new(self.segs.iter().cloned().chain(std::iter::once(seg)))
    }

    pub fn supp(&self) -> SuppMultiset {
        let mut out = SuppMultiset::new();
        for s in &self.segs {
            for p in s.points() {
                *out.entry(p).or_default() += 1;
            }
        }
        out
    }

    pub fn dual(&self) -> Multisegment {
        Multisegment::new(self.segs.iter().map(Segment::dual))
    }

    /// The largest segment end.
    pub fn max_end(&self) -> Result<CuspidalPoint> {
        self.segs
            .first()
            .map(Segment::end)
            .ok_or(Error::EmptyMultisegment)
    }

    /// Split into the segments ending at `max_end` and the rest.
    pub fn split_mx(&self) -> (Multisegment, Multisegment) {
        let Ok(top) = self.max_end() else {
            return (Multisegment::zero(), Multisegment::zero());
        };
        let (mx, nmx): (Vec<_>, Vec<_>) = self.segs.iter().cloned().partition(|s| s.end() == top);
        (Multisegment { segs: mx }, Multisegment { segs: nmx })
    }

    /// Whether consecutive canonical segments form a chain `Δ_{i+1} ≺ Δ_i`.
    pub fn is_ladder(&self) -> bool {
        self.segs.windows(2).all(|w| w[1].precedes(&w[0]))
    }

    pub fn filter(&self, kind: SegFilter, d: &Segment) -> Multisegment {
        let keep = |s: &Segment| match kind {
            SegFilter::GeSeg => s >= d,
            SegFilter::EndIn => d.contains(&s.end()),
            SegFilter::BeginIn => d.contains(&s.begin()),
        };
        Multisegment {
            segs: self.segs.iter().filter(|s| keep(s)).cloned().collect(),
        }
    }

    pub fn lines(&self) -> Vec<Line> {
        let mut lines: Vec<Line> = self.segs.iter().map(|s| s.line().clone()).collect();
        lines.dedup();
        lines.reverse();
        lines
    }

    /// Sub-multisegment on one line together with the original index of each segment.
    pub fn restrict_to_line(&self, line: &Line) -> (Multisegment, Vec<usize>) {
        let (idx, segs): (Vec<usize>, Vec<Segment>) = self
            .segs
            .iter()
            .enumerate()
            .filter(|(_, s)| s.line() == line)
            .map(|(i, s)| (i, s.clone()))
            .unzip();
        (Multisegment { segs }, idx)
    }

    pub fn is_single_line(&self) -> bool {
        self.lines().len() <= 1
    }

    /// Replace the segment at `i` (or drop it when `None`), recanonicalizing.
    pub fn replace(&self, i: usize, seg: Option<Segment>) -> Multisegment {
        let mut segs = self.segs.clone();
        match seg {
            Some(s) => segs[i] = s,
            None => {
                segs.remove(i);
            }
        }
        Multisegment::new(segs)
    }
}

/// True when no segment of `m` precedes a segment of `m2`, a sufficient
/// condition for the strong product property.
pub fn sli_sufficient(m: &Multisegment, m2: &Multisegment) -> bool {
    m.segments()
        .iter()
        .all(|d| m2.segments().iter().all(|d2| !d.precedes(d2)))
}

pub fn supp_dual(s: &SuppMultiset) -> SuppMultiset {
    s.iter().map(|(p, &n)| (p.dual(), n)).collect()
}

impl FromIterator<Segment> for Multisegment {
    fn from_iter<T: IntoIterator<Item = Segment>>(iter: T) -> Self {
        Multisegment::new(iter)
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.segs.is_empty() {
            return f.write_str("0");
        }
        for (k, s) in self.segs.iter().enumerate() {
            if k > 0 {
                f.write_str("+")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Multisegment {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seg(b: i64, e: i64) -> Segment {
        Segment::on_default(b, e).unwrap()
    }

    fn ms(pairs: &[(i64, i64)]) -> Multisegment {
        Multisegment::from_pairs(pairs)
    }

    #[test]
    fn canonical_order() {
        let m = ms(&[(0, 1), (1, 2)]);
        assert_eq!(m.segments(), &[seg(1, 2), seg(0, 1)]);
        let m = ms(&[(0, 0), (1, 2), (0, 0), (0, 2)]);
        assert_eq!(m.segments(), &[seg(1, 2), seg(0, 2), seg(0, 0), seg(0, 0)]);
    }

    #[test]
    fn supp_counts() {
        let s = ms(&[(0, 1), (1, 2)]).supp();
        let got: Vec<(i64, u64)> = s.iter().map(|(p, &n)| (p.pos, n)).collect();
        assert_eq!(got, vec![(0, 1), (1, 2), (2, 1)]);
        let total: u64 = s.values().sum();
        assert_eq!(total, 4);
    }

    #[test]
    fn duals_and_max() {
        assert_eq!(ms(&[(1, 2), (-1, 0)]).dual(), ms(&[(0, 1), (-2, -1)]));
        assert_eq!(ms(&[(0, 1), (1, 2)]).max_end().unwrap(), CuspidalPoint::at(2));
        assert_eq!(Multisegment::zero().max_end(), Err(Error::EmptyMultisegment));
    }

    #[test]
    fn split_mx_examples() {
        let (mx, nmx) = ms(&[(1, 2), (0, 2), (0, 1)]).split_mx();
        assert_eq!(mx, ms(&[(1, 2), (0, 2)]));
        assert_eq!(nmx, ms(&[(0, 1)]));
        assert_eq!(ms(&[(0, 0)]).split_mx(), (ms(&[(0, 0)]), Multisegment::zero()));
        assert_eq!(
            Multisegment::zero().split_mx(),
            (Multisegment::zero(), Multisegment::zero())
        );
    }

    #[test]
    fn ladder_examples() {
        assert!(ms(&[(1, 2), (0, 1)]).is_ladder());
        assert!(!ms(&[(0, 1), (0, 2)]).is_ladder());
        assert!(ms(&[(3, 7)]).is_ladder());
        assert!(Multisegment::zero().is_ladder());
        assert!(!ms(&[(0, 0), (0, 0)]).is_ladder());
    }

    #[test]
    fn sli_examples() {
        assert!(sli_sufficient(&ms(&[(1, 2)]), &ms(&[(0, 1)])));
        assert!(!sli_sufficient(&ms(&[(0, 1)]), &ms(&[(1, 2)])));
        assert!(sli_sufficient(&Multisegment::zero(), &ms(&[(0, 5)])));
    }

    #[test]
    fn filter_examples() {
        let m = ms(&[(1, 2), (0, 1)]);
        assert_eq!(m.filter(SegFilter::GeSeg, &seg(1, 1)), ms(&[(1, 2)]));
        assert_eq!(m.filter(SegFilter::EndIn, &seg(1, 1)), ms(&[(0, 1)]));
        assert_eq!(m.filter(SegFilter::BeginIn, &seg(0, 0)), ms(&[(0, 1)]));
    }

    #[test]
    fn multi_line_lines() {
        let m = Multisegment::new([
            Segment::new("b", 0, 1).unwrap(),
            Segment::new("a", 0, 1).unwrap(),
            Segment::new("a", 3, 3).unwrap(),
        ]);
        assert_eq!(m.lines(), vec![Line::new("a"), Line::new("b")]);
        let (sub, idx) = m.restrict_to_line(&Line::new("a"));
        assert_eq!(sub.len(), 2);
        assert_eq!(idx, vec![1, 2]);
        assert_eq!(m.max_end().unwrap(), CuspidalPoint::new("b", 1));
    }
}
