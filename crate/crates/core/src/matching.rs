//! ρ-matchings, left ρ-derivatives and the socle of `ρ × Z(m)`.
//!
//! For a point `ρ`, `Y^ρ` indexes the segments beginning at `ρ` and `X^ρ`
//! those beginning at `ρ + 1`. A ρ-matching pairs them one-to-one along `≺`.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::multisegment::Multisegment;
use crate::pairs::{pairset_x_cross, pairset_y_cross, PairSet};
use crate::segment::{CuspidalPoint, Segment};

/// Index sets `(X^ρ, Y^ρ)`: segments beginning at `ρ + 1` and at `ρ`.
pub fn rho_sets(m: &Multisegment, rho: &CuspidalPoint) -> (Vec<usize>, Vec<usize>) {
    let mut x = Vec::new();
    let mut y = Vec::new();
    for (i, d) in m.segments().iter().enumerate() {
        if d.line() != &rho.line {
            continue;
        }
        if d.b() == rho.pos + 1 {
            x.push(i);
        } else if d.b() == rho.pos {
            y.push(i);
        }
    }
    (x, y)
}

/// A one-to-one relation between `Y^ρ` and `X^ρ` along `≺`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matching {
    /// `(i, j)` with `i ∈ Y^ρ`, `j ∈ X^ρ`, sorted.
    pub pairs: Vec<(usize, usize)>,
    /// Unmatched indices of `Y^ρ`.
    pub a: Vec<usize>,
    /// Unmatched indices of `X^ρ`.
    pub b: Vec<usize>,
}

impl Matching {
    /// Validate `pairs` against `(m, ρ)` and fill in the unmatched sets.
    pub fn new(m: &Multisegment, rho: &CuspidalPoint, mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        let (x, y) = rho_sets(m, rho);
        pairs.sort_unstable();
        for &(i, j) in &pairs {
            if !y.contains(&i) || !x.contains(&j) {
                return Err(Error::InvalidMatching(format!(
                    "pair ({}, {}) outside Y^ρ × X^ρ",
                    i + 1,
                    j + 1
                )));
            }
            if !m.get(i).precedes(m.get(j)) {
                return Err(Error::InvalidMatching(format!(
                    "{} does not precede {}",
                    m.get(i),
                    m.get(j)
                )));
            }
        }
        let mut left: Vec<usize> = pairs.iter().map(|p| p.0).collect();
        let mut right: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        left.sort_unstable();
        right.sort_unstable();
        if left.windows(2).any(|w| w[0] == w[1]) || right.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidMatching("relation is not one-to-one".into()));
        }
        let a = y.into_iter().filter(|i| left.binary_search(i).is_err()).collect();
        let b = x.into_iter().filter(|j| right.binary_search(j).is_err()).collect();
        Ok(Matching { pairs, a, b })
    }

    pub fn partner_of_y(&self, i: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.0 == i).map(|p| p.1)
    }

    pub fn partner_of_x(&self, j: usize) -> Option<usize> {
        self.pairs.iter().find(|p| p.1 == j).map(|p| p.0)
    }

    /// Segments indexed by `A(R)`, canonically ordered.
    pub fn a_segments(&self, m: &Multisegment) -> Multisegment {
        Multisegment::new(self.a.iter().map(|&i| m.get(i).clone()))
    }

    pub fn b_segments(&self, m: &Multisegment) -> Multisegment {
        Multisegment::new(self.b.iter().map(|&j| m.get(j).clone()))
    }

    /// The multiset of matched segment pairs.
    pub fn pair_values(&self, m: &Multisegment) -> Vec<(Segment, Segment)> {
        let mut v: Vec<_> = self
            .pairs
            .iter()
            .map(|&(i, j)| (m.get(i).clone(), m.get(j).clone()))
            .collect();
        v.sort();
        v
    }

    /// Whether two matchings of `m` agree as multisets of segment pairs.
    pub fn equivalent(&self, other: &Matching, m: &Multisegment) -> bool {
        self.pair_values(m) == other.pair_values(m)
    }
}

fn by_value_then_index(m: &Multisegment) -> impl Fn(&usize, &usize) -> Ordering + '_ {
    move |&p, &q| m.get(p).cmp(m.get(q)).then(p.cmp(&q))
}

/// The greedy best ρ-matching: `X^ρ` is visited in increasing order, each
/// `j` taking the largest still-unmatched `i ∈ Y^ρ` with `Δ_i ≺ Δ_j`.
pub fn best_matching(m: &Multisegment, rho: &CuspidalPoint) -> Matching {
    let (mut x, y) = rho_sets(m, rho);
    x.sort_by(by_value_then_index(m));
    let mut used = vec![false; m.len()];
    let mut pairs = Vec::new();
    for &j in &x {
        let pick = y
            .iter()
            .copied()
            .filter(|&i| !used[i] && m.get(i).precedes(m.get(j)))
            .max_by(|&p, &q| m.get(p).cmp(m.get(q)).then(q.cmp(&p)));
        if let Some(i) = pick {
            used[i] = true;
            pairs.push((i, j));
        }
    }
    Matching::new(m, rho, pairs).expect("greedy matching is valid")
}

/// Whether `r` is maximal: every linked pair `(i, j) ∈ Y^ρ × X^ρ` is either
/// fully matched, or has `i` matched with `Δ_j >= Δ_{R(i)}`, or has `j`
/// matched with `Δ_i <= Δ_{R⁻¹(j)}`.
pub fn is_maximal_matching(m: &Multisegment, rho: &CuspidalPoint, r: &Matching) -> Result<bool> {
    let checked = Matching::new(m, rho, r.pairs.clone())?;
    let (x, y) = rho_sets(m, rho);
    for &i in &y {
        for &j in &x {
            if !m.get(i).precedes(m.get(j)) {
                continue;
            }
            let ok = match (checked.partner_of_y(i), checked.partner_of_x(j)) {
                (Some(_), Some(_)) => true,
                (Some(ri), None) => m.get(j) >= m.get(ri),
                (None, Some(rj)) => m.get(i) <= m.get(rj),
                (None, None) => false,
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `r` has matched pairs `(i, j), (i', j')` with
/// `Δ_i < Δ_i' ≺ Δ_j < Δ_j'`.
pub fn has_crossing(m: &Multisegment, r: &Matching) -> bool {
    r.pairs.iter().any(|&(i, j)| {
        r.pairs.iter().any(|&(i2, j2)| {
            m.get(i) < m.get(i2) && m.get(i2).precedes(m.get(j)) && m.get(j) < m.get(j2)
        })
    })
}

pub const ENUMERATION_LIMIT: usize = 12;

/// Every maximal ρ-matching (exhaustive; small instances only).
pub fn enumerate_maximal_matchings(m: &Multisegment, rho: &CuspidalPoint) -> Result<Vec<Matching>> {
    let (x, y) = rho_sets(m, rho);
    let size = x.len() + y.len();
    if size > ENUMERATION_LIMIT {
        return Err(Error::TooLarge {
            size,
            limit: ENUMERATION_LIMIT,
        });
    }
    let mut all = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; m.len()];
    enumerate(m, &y, &x, 0, &mut used, &mut cur, &mut all);
    let mut out = Vec::new();
    for pairs in all {
        let r = Matching::new(m, rho, pairs)?;
        if is_maximal_matching(m, rho, &r)? {
            out.push(r);
        }
    }
    Ok(out)
}

fn enumerate(
    m: &Multisegment,
    y: &[usize],
    x: &[usize],
    k: usize,
    used: &mut [bool],
    cur: &mut Vec<(usize, usize)>,
    all: &mut Vec<Vec<(usize, usize)>>,
) {
    if k == y.len() {
        all.push(cur.clone());
        return;
    }
    let i = y[k];
    enumerate(m, y, x, k + 1, used, cur, all);
    for &j in x {
        if !used[j] && m.get(i).precedes(m.get(j)) {
            used[j] = true;
            cur.push((i, j));
            enumerate(m, y, x, k + 1, used, cur, all);
            cur.pop();
            used[j] = false;
        }
    }
}

/// Left ρ-derivative data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivativeResult {
    /// `μ^ρ(m) = #A^ρ_m`
    pub mu: usize,
    /// `∂ρ m`: the segments of `A^ρ_m` left-truncated.
    pub derived: Multisegment,
    pub a_set: Vec<usize>,
    pub b_set: Vec<usize>,
    pub matching: Matching,
}

pub fn derivative(m: &Multisegment, rho: &CuspidalPoint) -> DerivativeResult {
    let matching = best_matching(m, rho);
    let derived = Multisegment::new(m.segments().iter().enumerate().filter_map(|(i, d)| {
        if matching.a.contains(&i) {
            d.left_trunc()
        } else {
            Some(d.clone())
        }
    }));
    DerivativeResult {
        mu: matching.a.len(),
        derived,
        a_set: matching.a.clone(),
        b_set: matching.b.clone(),
        matching,
    }
}

/// The multisegment of `soc(ρ × Z(m))`.
pub fn soc_cuspidal(m: &Multisegment, rho: &CuspidalPoint) -> Multisegment {
    let r = best_matching(m, rho);
    let top = r
        .b
        .iter()
        .copied()
        .max_by(|&p, &q| m.get(p).cmp(m.get(q)).then(q.cmp(&p)));
    match top {
        None => m.with(Segment::point(rho)),
        Some(i0) => m.replace(i0, Some(m.get(i0).left_ext())),
    }
}

/// `X̃^ρ_{m,m2} = X_{m,m2} ∩ (A^ρ_m × X^ρ_{m2})` and
/// `Ỹ^ρ_{m,m2} = Y_{m,m2} ∩ (A^ρ_m × Y^ρ_{m2})`.
pub fn rho_frontier(m: &Multisegment, m2: &Multisegment, rho: &CuspidalPoint) -> (PairSet, PairSet) {
    let a = derivative(m, rho).a_set;
    let (x2, y2) = rho_sets(m2, rho);
    let xt = pairset_x_cross(m, m2).filter(|p| a.contains(&p.i) && x2.contains(&p.j));
    let yt = pairset_y_cross(m, m2).filter(|p| a.contains(&p.i) && y2.contains(&p.j));
    (xt, yt)
}
