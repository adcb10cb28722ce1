//! The Mœglin–Waldspurger algorithm computing the involution `m ↦ m#`.
//!
//! Each step strips a chain of segments ending at consecutive points below
//! `max m`, contributing one segment of `m#`.

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::pairs::{pairset_x_cross, pairset_y_cross, Pair, PairSet};
use crate::segment::Segment;

/// Leading indices `i_1, ..., i_k` of a nonzero multisegment.
///
/// `Δ_{i_1}` is the largest segment ending at `max m`; each next index is the
/// largest segment preceding the current one and ending one step lower.
/// Equal segments resolve to the smallest canonical index.
pub fn leading_indices(m: &Multisegment) -> Result<Vec<usize>> {
    if m.is_zero() {
        return Err(Error::EmptyMultisegment);
    }
    let segs = m.segments();
    // canonical order is descending, so index 0 is the maximal segment ending at max m
    let mut chain = vec![0usize];
    loop {
        let cur = &segs[*chain.last().expect("nonempty")];
        // first hit in descending order is maximal, and the smallest index among equals
        let next = segs
            .iter()
            .position(|d| d.e() == cur.e() - 1 && d.precedes(cur));
        match next {
            Some(i) => chain.push(i),
            None => return Ok(chain),
        }
    }
}

/// One reduction step: the segment `Δ(m)` and the reduced multisegment `m⁻`.
pub fn mw_step(m: &Multisegment) -> Result<(Segment, Multisegment)> {
    let chain = leading_indices(m)?;
    let first = m.get(chain[0]);
    let last = m.get(*chain.last().expect("nonempty"));
    let delta = Segment::new(first.line().clone(), last.e(), first.e())?;
    let reduced = Multisegment::new(m.segments().iter().enumerate().filter_map(|(i, d)| {
        if chain.contains(&i) {
            d.right_trunc()
        } else {
            Some(d.clone())
        }
    }));
    Ok((delta, reduced))
}

/// `m⁻`, or zero for the zero multisegment.
pub fn mw_reduce(m: &Multisegment) -> Multisegment {
    match mw_step(m) {
        Ok((_, r)) => r,
        Err(_) => Multisegment::zero(),
    }
}

/// The involution `m#`, computed line by line.
pub fn mw_dual(m: &Multisegment) -> Multisegment {
    let mut out = Vec::new();
    for line in m.lines() {
        let (mut cur, _) = m.restrict_to_line(&line);
        while let Ok((delta, reduced)) = mw_step(&cur) {
            out.push(delta);
            cur = reduced;
        }
    }
    Multisegment::new(out)
}

/// The sets `X̃ = X_{m,m2} \ X_{m,m2⁻}` and `Ỹ = Y_{m,m2} \ Y_{m,m2⁻}` and the
/// map `f : Ỹ → X̃` sending `(i, i'_j)` to `(i, i'_{j-1})`.
#[derive(Clone, Debug)]
pub struct Frontier {
    pub xt: PairSet,
    pub yt: PairSet,
    /// Graph of `f`, sorted by source.
    pub map: Vec<(Pair, Pair)>,
    /// Whether `(m + m2)⁻ = m + m2⁻`.
    pub reduction_splits: bool,
}

impl Frontier {
    pub fn is_injective(&self) -> bool {
        let mut targets: Vec<Pair> = self.map.iter().map(|&(_, t)| t).collect();
        targets.sort_unstable();
        targets.windows(2).all(|w| w[0] != w[1])
    }

    /// Strictly increasing in lexicographic order on pairs.
    pub fn is_monotone(&self) -> bool {
        self.map.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1)
    }

    pub fn is_bijective(&self) -> bool {
        self.is_injective() && self.map.len() == self.xt.len()
    }
}

/// Frontier sets between `m` and the reduction of `m2` (single line,
/// `max m < max m2`).
pub fn mw_frontier(m: &Multisegment, m2: &Multisegment) -> Result<Frontier> {
    if m.is_zero() || m2.is_zero() {
        return Err(Error::PreconditionViolated("both multisegments must be nonzero".into()));
    }
    if !m.add(m2).is_single_line() {
        return Err(Error::PreconditionViolated("inputs must lie on a single line".into()));
    }
    if m.max_end()? >= m2.max_end()? {
        return Err(Error::PreconditionViolated("requires max m < max m2".into()));
    }
    let chain = leading_indices(m2)?;
    // m2⁻ indexed like m2; emptied segments carry no pairs
    let reduced: Vec<Option<Segment>> = m2
        .segments()
        .iter()
        .enumerate()
        .map(|(i, d)| if chain.contains(&i) { d.right_trunc() } else { Some(d.clone()) })
        .collect();

    let x = pairset_x_cross(m, m2);
    let y = pairset_y_cross(m, m2);
    let xt = x.filter(|p| match &reduced[p.j] {
        Some(d2) => !m.get(p.i).precedes(d2),
        None => true,
    });
    let yt = y.filter(|p| match &reduced[p.j] {
        Some(d2) => !m.get(p.i).precedes(&d2.shift_right()),
        None => true,
    });

    let mut map = Vec::with_capacity(yt.len());
    for p in yt.iter() {
        let pos = chain.iter().position(|&c| c == p.j);
        let target = match pos {
            Some(k) if k >= 1 => Pair::new(p.i, chain[k - 1]),
            _ => {
                return Err(Error::PreconditionViolated(format!(
                    "frontier map undefined at {p}"
                )))
            }
        };
        if !xt.contains(target) {
            return Err(Error::PreconditionViolated(format!(
                "frontier map sends {p} outside X̃"
            )));
        }
        map.push((p, target));
    }

    let reduction_splits = mw_reduce(&m.add(m2)) == m.add(&mw_reduce(m2));
    Ok(Frontier {
        xt,
        yt,
        map,
        reduction_splits,
    })
}
