//! The conditions GLS(m), LC(m,m'), IG(m,m') as full-rank conditions on
//! linear maps parametrized by coefficients `λ`.
//!
//! A TRUE verdict carries a witness `λ` for which the vectors are
//! independent. A FALSE verdict means no trial found one; its probability of
//! being wrong is bounded by Schwartz–Zippel.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::linalg::{rank_exact, rank_mod_p_rows, CoeffSampler, IntMatrix, RankConfig};
use crate::multisegment::Multisegment;
use crate::pairs::{pairset_x, pairset_x_cross, pairset_y, pairset_y_cross, Pair, PairSet};

/// Coefficients over an X-type pair set. Absent keys are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffVector {
    support: PairSet,
    values: BTreeMap<Pair, i64>,
}

impl CoeffVector {
    pub fn new(support: PairSet, values: BTreeMap<Pair, i64>) -> Result<Self> {
        if let Some(p) = values.keys().find(|p| !support.contains(**p)) {
            return Err(Error::SupportMismatch(format!("coefficient at {p} outside support")));
        }
        Ok(CoeffVector { support, values })
    }

    pub fn zero(support: PairSet) -> Self {
        CoeffVector {
            support,
            values: BTreeMap::new(),
        }
    }

    /// Every coefficient equal to one.
    pub fn ones(support: PairSet) -> Self {
        let values = support.iter().map(|p| (p, 1)).collect();
        CoeffVector { support, values }
    }

    pub fn support(&self) -> &PairSet {
        &self.support
    }

    pub fn values(&self) -> &BTreeMap<Pair, i64> {
        &self.values
    }

    pub fn get(&self, p: Pair) -> i64 {
        self.values.get(&p).copied().unwrap_or(0)
    }
}

/// Coefficients witnessing a TRUE verdict. `lam2` is present for the cross
/// conditions, `reverse` for IG (the witness of the reversed LC).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub lam: CoeffVector,
    pub lam2: Option<CoeffVector>,
    pub reverse: Option<Box<Witness>>,
}

impl Witness {
    /// Flattened entries keyed `(i,j)` for `λ`, `(i,j)'` for `λ'`, with a
    /// `rev` prefix for the reversed condition.
    pub fn entries(&self) -> Vec<(String, i64)> {
        let mut out = Vec::new();
        self.push_entries("", &mut out);
        out
    }

    fn push_entries(&self, prefix: &str, out: &mut Vec<(String, i64)>) {
        out.extend(self.lam.values.iter().map(|(p, v)| (format!("{prefix}{p}"), *v)));
        if let Some(l2) = &self.lam2 {
            out.extend(l2.values.iter().map(|(p, v)| (format!("{prefix}{p}'"), *v)));
        }
        if let Some(r) = &self.reverse {
            r.push_entries("rev", out);
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// TRUE: the witness was confirmed by exact rational rank. FALSE: the
    /// refutation is deterministic (more rows than columns).
    pub certified: bool,
    pub witness: Option<Witness>,
    pub trials_run: u32,
    /// Upper bound on the probability that a FALSE verdict is wrong.
    pub false_verdict_bound: BigRational,
}

impl Verdict {
    /// The bound as `num/den`.
    pub fn bound_string(&self) -> String {
        format!("{}/{}", self.false_verdict_bound.numer(), self.false_verdict_bound.denom())
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.holds)?;
        if self.certified {
            write!(f, " (certified)")?;
        } else if !self.holds {
            write!(f, " (error bound {})", self.bound_string())?;
        }
        Ok(())
    }
}

fn check_support(lam: &CoeffVector, expected: &PairSet) -> Result<()> {
    if lam.support != *expected {
        return Err(Error::SupportMismatch(format!(
            "coefficient support has {} pairs, expected {}",
            lam.support.len(),
            expected.len()
        )));
    }
    Ok(())
}

/// Rows over `x`, columns over `y`, entries as wide integers.
type Rows = Vec<Vec<i128>>;

fn gls_rows(x: &PairSet, y: &PairSet, n: usize, lam: impl Fn(Pair) -> i128) -> Rows {
    x.iter()
        .map(|p| {
            let (i, j) = (p.i, p.j);
            let mut row = vec![0i128; y.len()];
            for k in 0..n {
                if x.contains_ij(k, j) {
                    if let Some(c) = y.position(Pair::new(i, k)) {
                        row[c] += lam(Pair::new(k, j));
                    }
                }
            }
            for l in 0..n {
                if x.contains_ij(i, l) {
                    if let Some(c) = y.position(Pair::new(l, j)) {
                        row[c] -= lam(Pair::new(i, l));
                    }
                }
            }
            row
        })
        .collect()
}

struct CrossSets<'a> {
    x1: &'a PairSet,
    x2: &'a PairSet,
    x: &'a PairSet,
    y: &'a PairSet,
}

fn lc_rows(
    s: &CrossSets<'_>,
    lam: impl Fn(Pair) -> i128,
    lam2: impl Fn(Pair) -> i128,
) -> Rows {
    let (n, n2) = (s.x1.left_len(), s.x2.left_len());
    s.x.iter()
        .map(|p| {
            let (i, j) = (p.i, p.j);
            let mut row = vec![0i128; s.y.len()];
            for r in 0..n {
                if s.x1.contains_ij(i, r) {
                    if let Some(c) = s.y.position(Pair::new(r, j)) {
                        row[c] += lam(Pair::new(i, r));
                    }
                }
            }
            for t in 0..n2 {
                if s.x2.contains_ij(t, j) {
                    if let Some(c) = s.y.position(Pair::new(i, t)) {
                        row[c] -= lam2(Pair::new(t, j));
                    }
                }
            }
            row
        })
        .collect()
}

fn to_int_matrix(rows: &Rows, cols: usize) -> IntMatrix {
    let mut a = IntMatrix::zeros(rows.len(), cols);
    for (r, row) in rows.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if *v != 0 {
                a.set(r, c, BigInt::from(*v));
            }
        }
    }
    a
}

fn rank_mod(rows: &Rows, cols: usize, p: u64) -> usize {
    let reduced = rows
        .iter()
        .map(|row| row.iter().map(|v| v.rem_euclid(p as i128) as u64).collect())
        .collect();
    rank_mod_p_rows(reduced, cols, p)
}

/// The vectors `v^m_{i,j}(λ)`, rows over `X_m`, columns over `Y_m` (both in
/// lexicographic pair order).
pub fn gls_matrix(m: &Multisegment, lam: &CoeffVector) -> Result<IntMatrix> {
    let (x, y) = (pairset_x(m), pairset_y(m));
    check_support(lam, &x)?;
    let rows = gls_rows(&x, &y, m.len(), |p| lam.get(p) as i128);
    Ok(to_int_matrix(&rows, y.len()))
}

/// The vectors `v^{m,m2}_{i,j}(λ,λ')`, rows over `X_{m,m2}`, columns over
/// `Y_{m,m2}`.
pub fn lc_matrix(m: &Multisegment, m2: &Multisegment, lam: &CoeffVector, lam2: &CoeffVector) -> Result<IntMatrix> {
    let (x1, x2) = (pairset_x(m), pairset_x(m2));
    check_support(lam, &x1)?;
    check_support(lam2, &x2)?;
    let (x, y) = (pairset_x_cross(m, m2), pairset_y_cross(m, m2));
    let sets = CrossSets {
        x1: &x1,
        x2: &x2,
        x: &x,
        y: &y,
    };
    let rows = lc_rows(&sets, |p| lam.get(p) as i128, |p| lam2.get(p) as i128);
    Ok(to_int_matrix(&rows, y.len()))
}

/// One line of a condition: local pair sets plus the maps from local to
/// original indices.
struct Block {
    idx: Vec<usize>,
    idx2: Vec<usize>,
    x1: PairSet,
    x2: PairSet,
    x: PairSet,
    y: PairSet,
    cross: bool,
}

impl Block {
    fn global(&self, p: Pair, left: &[usize], right: &[usize]) -> Pair {
        Pair::new(left[p.i], right[p.j])
    }

    fn rows(&self, s: &CoeffSampler) -> Rows {
        let g1 = |p: Pair| s.value(0, self.global(p, &self.idx, &self.idx)) as i128;
        if self.cross {
            let g2 = |p: Pair| s.value(1, self.global(p, &self.idx2, &self.idx2)) as i128;
            let sets = CrossSets {
                x1: &self.x1,
                x2: &self.x2,
                x: &self.x,
                y: &self.y,
            };
            lc_rows(&sets, g1, g2)
        } else {
            gls_rows(&self.x, &self.y, self.idx.len(), g1)
        }
    }
}

fn gls_blocks(m: &Multisegment) -> Vec<Block> {
    m.lines()
        .into_iter()
        .map(|line| {
            let (ml, idx) = m.restrict_to_line(&line);
            let x = pairset_x(&ml);
            Block {
                idx2: idx.clone(),
                idx,
                x1: x.clone(),
                x2: x.clone(),
                y: pairset_y(&ml),
                x,
                cross: false,
            }
        })
        .collect()
}

fn lc_blocks(m: &Multisegment, m2: &Multisegment) -> Vec<Block> {
    let mut lines = m.lines();
    lines.retain(|l| m2.lines().contains(l));
    lines
        .into_iter()
        .map(|line| {
            let (ml, idx) = m.restrict_to_line(&line);
            let (ml2, idx2) = m2.restrict_to_line(&line);
            Block {
                idx,
                idx2,
                x1: pairset_x(&ml),
                x2: pairset_x(&ml2),
                x: pairset_x_cross(&ml, &ml2),
                y: pairset_y_cross(&ml, &ml2),
                cross: true,
            }
        })
        .collect()
}

fn bound(rows: usize, cfg: &RankConfig) -> BigRational {
    let per_trial = BigRational::new(BigInt::from(rows), BigInt::from(cfg.prime - 1));
    if per_trial >= BigRational::one() {
        return BigRational::one();
    }
    let mut b = BigRational::one();
    for _ in 0..cfg.trials {
        b *= &per_trial;
    }
    b
}

fn refuted(certified: bool, trials_run: u32, bound: BigRational) -> Verdict {
    Verdict {
        holds: false,
        certified,
        witness: None,
        trials_run,
        false_verdict_bound: bound,
    }
}

/// Runs the trial protocol on each block; the witness is assembled from the
/// first successful trial of every block.
fn decide(blocks: &[Block], cfg: &RankConfig, lam_support: PairSet, lam2_support: Option<PairSet>) -> Verdict {
    if blocks.iter().any(|b| b.x.len() > b.y.len()) {
        return refuted(true, 0, BigRational::zero());
    }
    let mut lam = BTreeMap::new();
    let mut lam2 = BTreeMap::new();
    let mut rounds = 0;
    let mut certified = true;
    for block in blocks.iter().filter(|b| !b.x.is_empty()) {
        let mut found = None;
        for trial in 1..=cfg.trials {
            let s = CoeffSampler {
                prime: cfg.prime,
                seed: cfg.seed,
                trial: trial as u64,
            };
            let rows = block.rows(&s);
            if rank_mod(&rows, block.y.len(), cfg.prime) == block.x.len() {
                found = Some((trial, s, rows));
                break;
            }
        }
        let Some((trial, s, rows)) = found else {
            return refuted(false, cfg.trials, bound(block.x.len(), cfg));
        };
        rounds = rounds.max(trial);
        certified &= cfg.certify && rank_exact(&to_int_matrix(&rows, block.y.len())) == block.x.len();
        for p in block.x1.iter() {
            let g = block.global(p, &block.idx, &block.idx);
            lam.insert(g, s.value(0, g) as i64);
        }
        if block.cross {
            for p in block.x2.iter() {
                let g = block.global(p, &block.idx2, &block.idx2);
                lam2.insert(g, s.value(1, g) as i64);
            }
        }
    }
    let witness = Witness {
        lam: CoeffVector {
            support: lam_support,
            values: lam,
        },
        lam2: lam2_support.map(|support| CoeffVector { support, values: lam2 }),
        reverse: None,
    };
    Verdict {
        holds: true,
        certified,
        witness: Some(witness),
        trials_run: rounds,
        false_verdict_bound: BigRational::zero(),
    }
}

/// GLS(m): some `λ` makes the vectors `v^m_{i,j}(λ)` independent.
pub fn check_gls(m: &Multisegment, cfg: &RankConfig) -> Verdict {
    decide(&gls_blocks(m), cfg, pairset_x(m), None)
}

/// LC(m,m2): some `(λ,λ')` makes the vectors `v^{m,m2}_{i,j}(λ,λ')`
/// independent.
pub fn check_lc(m: &Multisegment, m2: &Multisegment, cfg: &RankConfig) -> Verdict {
    decide(&lc_blocks(m, m2), cfg, pairset_x(m), Some(pairset_x(m2)))
}

/// IG(m,m2) = LC(m,m2) ∧ LC(m2,m).
pub fn check_ig(m: &Multisegment, m2: &Multisegment, cfg: &RankConfig) -> Verdict {
    let a = check_lc(m, m2, cfg);
    let b = check_lc(m2, m, cfg);
    let holds = a.holds && b.holds;
    let certified = if holds {
        a.certified && b.certified
    } else {
        (!a.holds && a.certified) || (!b.holds && b.certified)
    };
    let witness = match (a.witness, b.witness) {
        (Some(mut w), Some(r)) if holds => {
            w.reverse = Some(Box::new(r));
            Some(w)
        }
        _ => None,
    };
    Verdict {
        holds,
        certified,
        witness,
        trials_run: a.trials_run + b.trials_run,
        false_verdict_bound: a.false_verdict_bound + b.false_verdict_bound,
    }
}

/// Which ladder the LI decision rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LiRoute {
    /// `m` is a ladder: LI(m,m2) ⟺ LC(m,m2).
    Direct,
    /// `m2` is a ladder: LI(m,m2) ⟺ LC(m2^∨, m^∨).
    Dual,
}

impl fmt::Display for LiRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LiRoute::Direct => "direct",
            LiRoute::Dual => "dual",
        })
    }
}

/// LI(m,m2) decided through LC, valid since ladders are good.
pub fn li_for_good(m: &Multisegment, m2: &Multisegment, cfg: &RankConfig) -> Result<(LiRoute, Verdict)> {
    if m.is_ladder() {
        Ok((LiRoute::Direct, check_lc(m, m2, cfg)))
    } else if m2.is_ladder() {
        Ok((LiRoute::Dual, check_lc(&m2.dual(), &m.dual(), cfg)))
    } else {
        Err(Error::NotApplicable("neither multisegment is a ladder".into()))
    }
}

/// Exact rank check of a GLS witness.
pub fn verify_gls_witness(m: &Multisegment, w: &Witness) -> Result<bool> {
    Ok(rank_exact(&gls_matrix(m, &w.lam)?) == pairset_x(m).len())
}

/// Exact rank check of an LC witness.
pub fn verify_lc_witness(m: &Multisegment, m2: &Multisegment, w: &Witness) -> Result<bool> {
    let lam2 = w
        .lam2
        .as_ref()
        .ok_or_else(|| Error::SupportMismatch("witness lacks λ'".into()))?;
    Ok(rank_exact(&lc_matrix(m, m2, &w.lam, lam2)?) == pairset_x_cross(m, m2).len())
}
