//! Segments on labeled integer lines.
//!
//! A segment `[b, e]` on a line is the run of consecutive points
//! `b, b + 1, ..., e`. Points on different lines never interact.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Opaque label of a line of points.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Line(Arc<str>);

impl Line {
    pub const DEFAULT: &'static str = "0";

    pub fn new(label: &str) -> Self {
        Line(Arc::from(label))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_default(&self) -> bool {
        &*self.0 == Self::DEFAULT
    }
}

impl Default for Line {
    fn default() -> Self {
        Line::new(Self::DEFAULT)
    }
}

impl fmt::Debug for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", &*self.0)
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Line {
    fn from(s: &str) -> Self {
        Line::new(s)
    }
}

/// A point `pos` on a line. Ordered by line label, then position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CuspidalPoint {
    pub line: Line,
    pub pos: i64,
}

impl CuspidalPoint {
    pub fn new(line: impl Into<Line>, pos: i64) -> Self {
        CuspidalPoint {
            line: line.into(),
            pos,
        }
    }

    /// Point on the default line.
    pub fn at(pos: i64) -> Self {
        CuspidalPoint {
            line: Line::default(),
            pos,
        }
    }

    pub fn dual(&self) -> Self {
        CuspidalPoint {
            line: self.line.clone(),
            pos: -self.pos,
        }
    }
}

impl fmt::Display for CuspidalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line.is_default() {
            write!(f, "{}", self.pos)
        } else {
            write!(f, "{}:{}", self.line, self.pos)
        }
    }
}

/// Surgeries taking a segment to a (possibly absent) segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Surgery {
    /// `[b, e-1]`
    RightTrunc,
    /// `[b+1, e]`
    LeftTrunc,
    /// `[b, e+1]`
    RightExt,
    /// `[b-1, e]`
    LeftExt,
    /// `[b+1, e+1]`
    ShiftRight,
    /// `[b-1, e-1]`
    ShiftLeft,
    /// `[-e, -b]` on the same line.
    Dual,
}

/// A nonempty segment `[b, e]` on a line.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    line: Line,
    b: i64,
    e: i64,
}

impl Segment {
    pub fn new(line: impl Into<Line>, b: i64, e: i64) -> Result<Self> {
        if b > e {
            return Err(Error::EmptySegment { b, e });
        }
        Ok(Segment {
            line: line.into(),
            b,
            e,
        })
    }

    /// Segment on the default line.
    pub fn on_default(b: i64, e: i64) -> Result<Self> {
        Segment::new(Line::default(), b, e)
    }

    /// Singleton segment `[p, p]`.
    pub fn point(p: &CuspidalPoint) -> Self {
        Segment {
            line: p.line.clone(),
            b: p.pos,
            e: p.pos,
        }
    }

    /// Construct without checking; callers guarantee `b <= e`.
    pub(crate) fn new_unchecked(line: Line, b: i64, e: i64) -> Self {
        debug_assert!(b <= e);
        Segment { line, b, e }
    }

    pub fn line(&self) -> &Line {
        &self.line
    }

    pub fn b(&self) -> i64 {
        self.b
    }

    pub fn e(&self) -> i64 {
        self.e
    }

    pub fn len(&self) -> usize {
        (self.e - self.b + 1) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn begin(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line.clone(), self.b)
    }

    pub fn end(&self) -> CuspidalPoint {
        CuspidalPoint::new(self.line.clone(), self.e)
    }

    pub fn contains_pos(&self, line: &Line, pos: i64) -> bool {
        &self.line == line && self.b <= pos && pos <= self.e
    }

    pub fn contains(&self, p: &CuspidalPoint) -> bool {
        self.contains_pos(&p.line, p.pos)
    }

    /// `self ≺ other`: same line, `b < b' <= e + 1` and `e' > e`.
    pub fn precedes(&self, other: &Segment) -> bool {
        self.line == other.line && self.b < other.b && other.b <= self.e + 1 && other.e > self.e
    }

    /// Linked segments: one precedes the other.
    pub fn is_linked(&self, other: &Segment) -> bool {
        self.precedes(other) || other.precedes(self)
    }

    /// The total order on segments: by line, then end, then beginning.
    pub fn total_cmp(&self, other: &Segment) -> Ordering {
        self.line
            .cmp(&other.line)
            .then(self.e.cmp(&other.e))
            .then(self.b.cmp(&other.b))
    }

    pub fn surgery(&self, kind: Surgery) -> Option<Segment> {
        let (b, e) = match kind {
            Surgery::RightTrunc => (self.b, self.e - 1),
            Surgery::LeftTrunc => (self.b + 1, self.e),
            Surgery::RightExt => (self.b, self.e + 1),
            Surgery::LeftExt => (self.b - 1, self.e),
            Surgery::ShiftRight => (self.b + 1, self.e + 1),
            Surgery::ShiftLeft => (self.b - 1, self.e - 1),
            Surgery::Dual => (-self.e, -self.b),
        };
        (b <= e).then(|| Segment::new_unchecked(self.line.clone(), b, e))
    }

    pub fn right_trunc(&self) -> Option<Segment> {
        self.surgery(Surgery::RightTrunc)
    }

    pub fn left_trunc(&self) -> Option<Segment> {
        self.surgery(Surgery::LeftTrunc)
    }

    pub fn right_ext(&self) -> Segment {
        Segment::new_unchecked(self.line.clone(), self.b, self.e + 1)
    }

    pub fn left_ext(&self) -> Segment {
        Segment::new_unchecked(self.line.clone(), self.b - 1, self.e)
    }

    pub fn shift_right(&self) -> Segment {
        Segment::new_unchecked(self.line.clone(), self.b + 1, self.e + 1)
    }

    pub fn shift_left(&self) -> Segment {
        Segment::new_unchecked(self.line.clone(), self.b - 1, self.e - 1)
    }

    pub fn dual(&self) -> Segment {
        Segment::new_unchecked(self.line.clone(), -self.e, -self.b)
    }

    pub fn points(&self) -> impl Iterator<Item = CuspidalPoint> + '_ {
        (self.b..=self.e).map(move |pos| CuspidalPoint::new(self.line.clone(), pos))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_cmp(other)
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.line.is_default() {
            write!(f, "{}:", self.line)?;
        }
        write!(f, "[{},{}]", self.b, self.e)
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Segment {
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

    #[test]
    fn construction() {
        let s = seg(1, 2);
        assert_eq!((s.b(), s.e(), s.len()), (1, 2, 2));
        assert_eq!(seg(0, 0).len(), 1);
        assert_eq!(
            Segment::on_default(3, 1),
            Err(Error::EmptySegment { b: 3, e: 1 })
        );
    }

    #[test]
    fn precedence_examples() {
        assert!(seg(0, 1).precedes(&seg(1, 2)));
        assert!(!seg(0, 0).precedes(&seg(0, 1)));
        assert!(!seg(0, 2).precedes(&seg(1, 1)));
        let a = Segment::new("a", 0, 1).unwrap();
        let b = Segment::new("b", 1, 2).unwrap();
        assert!(!a.precedes(&b));
        // adjacency counts
        assert!(seg(0, 0).precedes(&seg(1, 1)));
        assert!(!seg(0, 0).precedes(&seg(2, 2)));
    }

    #[test]
    fn precedence_matches_set_definition() {
        // b(d) ∉ d2, b(d2) ∈ shift_right(d), e(d2) ∉ d
        for b1 in -3..=3 {
            for e1 in b1..=3 {
                for b2 in -3..=3 {
                    for e2 in b2..=3 {
                        let (d, d2) = (seg(b1, e1), seg(b2, e2));
                        let by_sets = !d2.contains(&d.begin())
                            && d.shift_right().contains(&d2.begin())
                            && !d.contains(&d2.end());
                        assert_eq!(d.precedes(&d2), by_sets, "{d} {d2}");
                    }
                }
            }
        }
    }

    #[test]
    fn total_order_examples() {
        assert_eq!(seg(0, 1).total_cmp(&seg(1, 1)), Ordering::Less);
        assert_eq!(seg(0, 1).total_cmp(&seg(1, 2)), Ordering::Less);
        assert_eq!(seg(0, 1).total_cmp(&seg(0, 1)), Ordering::Equal);
        let a = Segment::new("a", 5, 9).unwrap();
        let b = Segment::new("b", 0, 0).unwrap();
        assert_eq!(a.total_cmp(&b), Ordering::Less);
    }

    #[test]
    fn surgeries() {
        assert_eq!(seg(0, 2).right_trunc(), Some(seg(0, 1)));
        assert_eq!(seg(0, 0).left_trunc(), None);
        assert_eq!(seg(0, 0).right_trunc(), None);
        assert_eq!(seg(1, 2).dual(), seg(-2, -1));
        assert_eq!(seg(1, 2).surgery(Surgery::RightExt), Some(seg(1, 3)));
        assert_eq!(seg(1, 2).surgery(Surgery::LeftExt), Some(seg(0, 2)));
        assert_eq!(seg(1, 2).surgery(Surgery::ShiftLeft), Some(seg(0, 1)));
        assert_eq!(seg(1, 2).surgery(Surgery::ShiftRight), Some(seg(2, 3)));
        assert_eq!(seg(1, 2).surgery(Surgery::Dual), Some(seg(-2, -1)));
    }

    #[test]
    fn shifted_precedence_identity() {
        // shift_left(d) ≺ d2 ⟺ d ≺ shift_right(d2) ⟺ b(d2) ∈ d and e(d) ∈ d2
        for b1 in -3..=3 {
            for e1 in b1..=3 {
                for b2 in -3..=3 {
                    for e2 in b2..=3 {
                        let (d, d2) = (seg(b1, e1), seg(b2, e2));
                        let lhs = d.shift_left().precedes(&d2);
                        let mid = d.precedes(&d2.shift_right());
                        let rhs = d.contains(&d2.begin()) && d2.contains(&d.end());
                        assert_eq!(lhs, mid);
                        assert_eq!(mid, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn order_laws() {
        for b1 in -2..=2 {
            for e1 in b1..=2 {
                for b2 in -2..=2 {
                    for e2 in b2..=2 {
                        let (d, d2) = (seg(b1, e1), seg(b2, e2));
                        assert!(!d.precedes(&d));
                        if d.precedes(&d2) {
                            assert_eq!(d.total_cmp(&d2), Ordering::Less);
                        }
                        if d.shift_left().precedes(&d2) {
                            assert_ne!(d.total_cmp(&d2), Ordering::Greater);
                        }
                        if e1 == e2 {
                            let superset = b1 <= b2;
                            assert_eq!(d <= d2, superset);
                        }
                    }
                }
            }
        }
    }
}
