//! Seeded random multisegments.
//!
//! Instance `index` draws from ChaCha8 stream `index` of the generator
//! seeded with `seed`, so any instance can be regenerated on its own.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::segment::{Line, Segment};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GenParams {
    pub max_segments: usize,
    /// Coordinates lie in `[-R, R]`.
    pub coord_range: i64,
    /// Maximal number of points in a segment.
    pub max_length: i64,
    pub lines: usize,
    pub seed: u64,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_segments: 4,
            coord_range: 3,
            max_length: 3,
            lines: 1,
            seed: 0,
        }
    }
}

impl GenParams {
    pub fn validate(&self) -> Result<()> {
        if self.coord_range < 0 {
            return Err(Error::InvalidConfig("coordinate range must be nonnegative".into()));
        }
        if self.max_length < 1 {
            return Err(Error::InvalidConfig("segments need at least one point".into()));
        }
        if self.lines < 1 {
            return Err(Error::InvalidConfig("at least one line is required".into()));
        }
        Ok(())
    }

    pub fn with_seed(&self, seed: u64) -> Self {
        GenParams { seed, ..self.clone() }
    }
}

/// Label of the `k`-th generated line; line 0 is the default line.
pub fn line_label(k: usize) -> Line {
    if k == 0 {
        Line::default()
    } else {
        Line::new(&format!("l{k}"))
    }
}

/// The random stream of one instance.
pub fn instance_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// A segment inside `[lo, hi]` with at most `max_length` points.
pub fn sample_segment(rng: &mut impl Rng, line: Line, lo: i64, hi: i64, max_length: i64) -> Segment {
    let b = rng.gen_range(lo..=hi);
    let len = rng.gen_range(1..=max_length.max(1));
    Segment::new_unchecked(line, b, (b + len - 1).min(hi))
}

/// Up to `p.max_segments` segments with coordinates in `[lo, hi]`.
pub fn sample_ms_in(rng: &mut impl Rng, p: &GenParams, lo: i64, hi: i64) -> Multisegment {
    if lo > hi {
        return Multisegment::zero();
    }
    let n = rng.gen_range(0..=p.max_segments);
    Multisegment::new((0..n).map(|_| {
        let line = line_label(rng.gen_range(0..p.lines.max(1)));
        sample_segment(rng, line, lo, hi, p.max_length)
    }))
}

pub fn sample_ms(rng: &mut impl Rng, p: &GenParams) -> Multisegment {
    sample_ms_in(rng, p, -p.coord_range, p.coord_range)
}

/// A nonempty ladder `Δ_k ≺ … ≺ Δ_1` on the default line.
///
/// Beginnings are distinct sorted draws; each end is drawn from the window
/// that keeps the chain linked and leaves room for the later ends.
pub fn sample_ladder(rng: &mut impl Rng, p: &GenParams) -> Multisegment {
    let r = p.coord_range;
    let cap = (2 * r + 1) as usize;
    let k = rng.gen_range(1..=p.max_segments.clamp(1, cap));
    let mut bs = rand::seq::index::sample(rng, cap, k).into_vec();
    bs.sort_unstable();
    let bs: Vec<i64> = bs.into_iter().map(|v| v as i64 - r).collect();
    let mut segs = Vec::with_capacity(k);
    let mut prev_e = i64::MIN;
    for t in 0..k {
        let b = bs[t];
        let mut lo = b.max(prev_e.saturating_add(1));
        if t + 1 < k {
            lo = lo.max(bs[t + 1] - 1);
        }
        let hi = r - (k - 1 - t) as i64;
        let hi = hi.min((b + p.max_length - 1).max(lo));
        let e = rng.gen_range(lo..=hi);
        segs.push(Segment::new_unchecked(Line::default(), b, e));
        prev_e = e;
    }
    Multisegment::new(segs)
}

pub fn gen_ms(p: &GenParams, index: u64) -> Multisegment {
    if p.max_segments == 0 {
        return Multisegment::zero();
    }
    sample_ms(&mut instance_rng(p.seed, index), p)
}

pub fn gen_ladder(p: &GenParams, index: u64) -> Multisegment {
    if p.max_segments == 0 {
        return Multisegment::zero();
    }
    sample_ladder(&mut instance_rng(p.seed, index), p)
}
