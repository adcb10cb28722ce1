//! Property suites over random instances.
//!
//! Each property generates an [`Instance`] from `(seed, index)`, checks which
//! of its parts have their hypothesis satisfied, and records a violation
//! when a conclusion fails. Instances are evaluated in parallel batches and
//! merged in index order, so reports do not depend on the thread count.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom::{check_gls, check_lc, gls_matrix, lc_matrix, CoeffVector};
use crate::harness::gen::{instance_rng, sample_ladder, sample_ms, sample_ms_in, sample_segment, GenParams};
use crate::harness::report::{Checker, PropertyReport, Violation};
use crate::linalg::RankConfig;
use crate::matching::{best_matching, derivative, has_crossing, is_maximal_matching, rho_frontier, soc_cuspidal};
use crate::multisegment::{supp_dual, Multisegment, SegFilter};
use crate::mw::{mw_dual, mw_frontier, mw_reduce, mw_step};
use crate::notation::{parse_mseg, parse_point};
use crate::pairs::{pairset_x, pairset_x_cross, pairset_y, pairset_y_cross, Pair};
use crate::segment::{CuspidalPoint, Line, Segment};

/// One generated input of a property.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    pub inputs: Vec<Multisegment>,
    pub param: Option<Param>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Param {
    Point(CuspidalPoint),
    Seg(Segment),
}

impl Param {
    fn render(&self) -> String {
        match self {
            Param::Point(p) => format!("rho={p}"),
            Param::Seg(d) => format!("delta={d}"),
        }
    }

    fn parse(text: &str) -> Result<Param> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("invalid parameter {text:?}"),
        };
        if let Some(p) = text.strip_prefix("rho=") {
            return Ok(Param::Point(parse_point(p)?));
        }
        let d = text.strip_prefix("delta=").ok_or_else(bad)?;
        let m = parse_mseg(d)?;
        match m.segments() {
            [s] => Ok(Param::Seg(s.clone())),
            _ => Err(bad()),
        }
    }
}

/// Hypotheses met and conclusions failed on one instance.
#[derive(Default)]
struct Eval {
    hyp: Vec<&'static str>,
    failed: Vec<(&'static str, String)>,
}

impl Eval {
    fn hyp(&mut self, part: &'static str) {
        self.hyp.push(part);
    }

    fn fail(&mut self, part: &'static str, detail: impl Into<String>) {
        self.failed.push((part, detail.into()));
    }

    /// Part whose hypothesis always holds.
    fn expect(&mut self, part: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.hyp(part);
        if !ok {
            self.fail(part, detail());
        }
    }
}

/// The available properties.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    /// LC(m,m2) ⟺ LC(m,m2⁻) ∧ (m+m2)⁻ = m+m2⁻ when max m < max m2.
    MmMinus,
    /// LC over a split sum implies LC of the blocks.
    SplitDisj,
    /// LC survives the ≥Δ, end-in-Δ and begin-in-Δ filters.
    GeDelta,
    /// The LC parts of the three-multisegment compatibilities.
    ThreeMs,
    /// GLS(m), GLS(m'), LC(m,m'), LC(m+m',m) imply GLS(m+m').
    SumOfSeg,
    /// LC(m,m2) ⟺ LC(∂ρm,m2) ∧ #X̃ = #Ỹ when μ^ρ(m2) = 0.
    RhoExt,
    Dual,
    MwInvolution,
    GlsInvariance,
    LcDuality,
    GlsImpliesLc,
    DiagonalEmbedding,
    PairDecomposition,
    MwFrontier,
    BestMatching,
    DerivativeSoc,
    SeedStability,
}

impl Property {
    pub const PROPOSITIONS: [Property; 6] = [
        Property::MmMinus,
        Property::SplitDisj,
        Property::GeDelta,
        Property::ThreeMs,
        Property::SumOfSeg,
        Property::RhoExt,
    ];

    pub const INVARIANCES: [Property; 11] = [
        Property::Dual,
        Property::MwInvolution,
        Property::GlsInvariance,
        Property::LcDuality,
        Property::GlsImpliesLc,
        Property::DiagonalEmbedding,
        Property::PairDecomposition,
        Property::MwFrontier,
        Property::BestMatching,
        Property::DerivativeSoc,
        Property::SeedStability,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::MmMinus => "mm_minus",
            Property::SplitDisj => "splitdisj",
            Property::GeDelta => "gedelta",
            Property::ThreeMs => "3ms",
            Property::SumOfSeg => "sumofseg",
            Property::RhoExt => "rhoext",
            Property::Dual => "dual",
            Property::MwInvolution => "mw_involution",
            Property::GlsInvariance => "gls_invariance",
            Property::LcDuality => "lc_duality",
            Property::GlsImpliesLc => "gls_implies_lc",
            Property::DiagonalEmbedding => "diagonal_embedding",
            Property::PairDecomposition => "pair_decomposition",
            Property::MwFrontier => "mw_frontier",
            Property::BestMatching => "best_matching",
            Property::DerivativeSoc => "derivative_soc",
            Property::SeedStability => "seed_stability",
        }
    }

    pub fn from_name(name: &str) -> Option<Property> {
        Property::PROPOSITIONS
            .iter()
            .chain(Property::INVARIANCES.iter())
            .copied()
            .find(|p| p.name() == name)
    }

    pub fn parts(self) -> &'static [&'static str] {
        match self {
            Property::GeDelta => &["ge", "end", "begin"],
            Property::ThreeMs => &["2", "3", "4", "5=>", "5<="],
            Property::RhoExt => &["equiv", "count"],
            Property::Dual => &["involution", "supp", "ladder"],
            Property::MwInvolution => &["involution", "supp", "delta"],
            Property::MwFrontier => &["injective", "monotone", "surjective", "count"],
            Property::BestMatching => &["maximal", "crossing"],
            _ => &["main"],
        }
    }

    /// Properties comparing maxima of multisegments run on one line.
    fn single_line(self) -> bool {
        matches!(self, Property::MmMinus | Property::RhoExt | Property::MwFrontier)
    }

    /// Default budget: hypothesis-satisfying instances per part for the
    /// propositions, plain instance counts for the invariances.
    pub fn default_budget(self) -> Budget {
        match self {
            Property::MmMinus | Property::ThreeMs | Property::RhoExt => Budget::hypotheses(300),
            Property::SplitDisj | Property::GeDelta | Property::SumOfSeg => Budget::hypotheses(200),
            Property::MwInvolution | Property::Dual => Budget::Instances(1000),
            Property::SeedStability => Budget::Instances(200),
            _ => Budget::Instances(500),
        }
    }

    fn salt(self) -> u64 {
        self.name()
            .bytes()
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
    }

    pub fn generate(self, gen: &GenParams, index: u64) -> Instance {
        let gen = if self.single_line() {
            GenParams { lines: 1, ..gen.clone() }
        } else {
            gen.clone()
        };
        let rng = &mut instance_rng(gen.seed ^ self.salt(), index);
        let r = gen.coord_range;
        let two = |rng: &mut _| vec![sample_ms(rng, &gen), sample_ms(rng, &gen)];
        match self {
            Property::SplitDisj => {
                let inputs = if index.is_multiple_of(2) {
                    // two blocks separated by a gap of three points
                    vec![
                        sample_ms_in(rng, &gen, 2, r + 2),
                        sample_ms_in(rng, &gen, 2, r + 2),
                        sample_ms_in(rng, &gen, -r - 2, -2),
                        sample_ms_in(rng, &gen, -r - 2, -2),
                    ]
                } else {
                    let (m, m2) = (sample_ms(rng, &gen), sample_ms(rng, &gen));
                    let t = rng.gen_range(-r..=r);
                    let above = |x: &Multisegment, up: bool| -> Multisegment {
                        x.segments().iter().filter(|d| (d.b() > t) == up).cloned().collect()
                    };
                    vec![above(&m, true), above(&m2, true), above(&m, false), above(&m2, false)]
                };
                Instance { inputs, param: None }
            }
            Property::GeDelta => {
                let inputs = two(rng);
                let delta = sample_segment(rng, Line::default(), -r, r, gen.max_length);
                Instance {
                    inputs,
                    param: Some(Param::Seg(delta)),
                }
            }
            Property::ThreeMs => Instance {
                inputs: vec![sample_ms(rng, &gen), sample_ms(rng, &gen), sample_ms(rng, &gen)],
                param: None,
            },
            Property::RhoExt => {
                let inputs = two(rng);
                let pts: Vec<CuspidalPoint> = inputs[0].supp().into_keys().collect();
                let rho = if pts.is_empty() {
                    CuspidalPoint::at(rng.gen_range(-r..=r))
                } else {
                    pts[rng.gen_range(0..pts.len())].clone()
                };
                Instance {
                    inputs,
                    param: Some(Param::Point(rho)),
                }
            }
            Property::BestMatching | Property::DerivativeSoc => {
                let m = sample_ms(rng, &gen);
                let line = crate::harness::gen::line_label(rng.gen_range(0..gen.lines.max(1)));
                let rho = CuspidalPoint::new(line, rng.gen_range(-r - 1..=r));
                Instance {
                    inputs: vec![m],
                    param: Some(Param::Point(rho)),
                }
            }
            Property::Dual => {
                // mix in ladders so the ladder part has hypotheses to check
                let m = if rng.gen_bool(0.5) {
                    sample_ladder(rng, &gen)
                } else {
                    sample_ms(rng, &gen)
                };
                Instance {
                    inputs: vec![m],
                    param: None,
                }
            }
            Property::MwInvolution
            | Property::GlsInvariance
            | Property::GlsImpliesLc
            | Property::DiagonalEmbedding => Instance {
                inputs: vec![sample_ms(rng, &gen)],
                param: None,
            },
            Property::MmMinus
            | Property::SumOfSeg
            | Property::LcDuality
            | Property::PairDecomposition
            | Property::MwFrontier
            | Property::SeedStability => Instance {
                inputs: two(rng),
                param: None,
            },
        }
    }

    fn evaluate(self, inst: &Instance, c: &mut Checker<'_>) -> Eval {
        let mut ev = Eval::default();
        let ins = &inst.inputs;
        match self {
            Property::MmMinus => {
                let (m, m2) = (&ins[0], &ins[1]);
                if m.is_zero() || m2.is_zero() || m.max_end().ok() >= m2.max_end().ok() {
                    return ev;
                }
                ev.hyp("main");
                let lhs = c.lc(m, m2);
                let reduced = mw_reduce(m2);
                let splits = mw_reduce(&m.add(m2)) == m.add(&reduced);
                let rhs = c.lc(m, &reduced) && splits;
                if lhs != rhs {
                    ev.fail("main", format!("LC(m,m2)={lhs} but LC(m,m2-)∧split={rhs} (split={splits})"));
                }
            }
            Property::SplitDisj => {
                let (m1, m1p, m2, m2p) = (&ins[0], &ins[1], &ins[2], &ins[3]);
                if !np_conditions(&m1.add(m1p), &m2.add(m2p)) {
                    return ev;
                }
                if !c.lc(&m1.add(m2), &m1p.add(m2p)) {
                    return ev;
                }
                ev.hyp("main");
                let (a, b) = (c.lc(m1, m1p), c.lc(m2, m2p));
                if !(a && b) {
                    ev.fail("main", format!("LC(m1,m1')={a}, LC(m2,m2')={b}"));
                }
            }
            Property::GeDelta => {
                let (m, m2) = (&ins[0], &ins[1]);
                let Some(Param::Seg(d)) = &inst.param else {
                    return ev;
                };
                if !c.lc(m, m2) {
                    return ev;
                }
                for (part, kind) in [("ge", SegFilter::GeSeg), ("end", SegFilter::EndIn), ("begin", SegFilter::BeginIn)] {
                    ev.hyp(part);
                    let (f, f2) = (m.filter(kind, d), m2.filter(kind, d));
                    if !c.lc(&f, &f2) {
                        ev.fail(part, format!("LC fails on filtered pair {f} ; {f2}"));
                    }
                }
            }
            Property::ThreeMs => {
                let (m, mp, n) = (&ins[0], &ins[1], &ins[2]);
                let lc_m_mp = c.lc(m, mp);
                let lc_m_n = c.lc(m, n);
                let lc_mp_n = c.lc(mp, n);
                let lc_sum_n = c.lc(&m.add(mp), n);
                let lc_m_mpn = c.lc(m, &mp.add(n));
                if lc_m_mp && lc_sum_n {
                    ev.hyp("2");
                    if !(lc_m_mpn && lc_m_n) {
                        ev.fail("2", format!("LC(m,m'+n)={lc_m_mpn}, LC(m,n)={lc_m_n}"));
                    }
                }
                if lc_m_mp && lc_m_n {
                    ev.hyp("3");
                    if !lc_m_mpn {
                        ev.fail("3", "LC(m,m'+n) fails");
                    }
                }
                if lc_m_n && lc_mp_n {
                    ev.hyp("4");
                    if !lc_sum_n {
                        ev.fail("4", "LC(m+m',n) fails");
                    }
                }
                if lc_m_mp && c.lc(mp, m) {
                    if lc_sum_n {
                        ev.hyp("5=>");
                        if !(lc_m_n && lc_mp_n) {
                            ev.fail("5=>", format!("LC(m,n)={lc_m_n}, LC(m',n)={lc_mp_n}"));
                        }
                    }
                    if lc_m_n && lc_mp_n {
                        ev.hyp("5<=");
                        if !lc_sum_n {
                            ev.fail("5<=", "LC(m+m',n) fails");
                        }
                    }
                }
            }
            Property::SumOfSeg => {
                let (m, mp) = (&ins[0], &ins[1]);
                let n = m.add(mp);
                if c.gls(m) && c.gls(mp) && c.lc(m, mp) && c.lc(&n, m) {
                    ev.hyp("main");
                    if !c.gls(&n) {
                        ev.fail("main", format!("GLS({n}) fails"));
                    }
                }
            }
            Property::RhoExt => {
                let (m, m2) = (&ins[0], &ins[1]);
                let Some(Param::Point(rho)) = &inst.param else {
                    return ev;
                };
                if derivative(m2, rho).mu != 0 {
                    return ev;
                }
                let (xt, yt) = rho_frontier(m, m2, rho);
                ev.expect("count", xt.len() >= yt.len(), || {
                    format!("#X̃={} < #Ỹ={}", xt.len(), yt.len())
                });
                ev.hyp("equiv");
                let lhs = c.lc(m, m2);
                let derived = derivative(m, rho).derived;
                let rhs = c.lc(&derived, m2) && xt.len() == yt.len();
                if lhs != rhs {
                    ev.fail(
                        "equiv",
                        format!("LC(m,m2)={lhs} but LC({derived},m2)∧counts={rhs} (#X̃={}, #Ỹ={})", xt.len(), yt.len()),
                    );
                }
            }
            Property::Dual => {
                let m = &ins[0];
                let d = m.dual();
                ev.expect("involution", d.dual() == *m, || format!("dual twice gives {}", d.dual()));
                ev.expect("supp", d.supp() == supp_dual(&m.supp()), || "supp(m^∨) ≠ supp(m)^∨".into());
                if m.is_ladder() {
                    ev.expect("ladder", d.is_ladder(), || format!("{d} is not a ladder"));
                }
            }
            Property::MwInvolution => {
                let m = &ins[0];
                let sharp = mw_dual(m);
                ev.expect("involution", mw_dual(&sharp) == *m, || {
                    format!("m#={sharp}, (m#)#={}", mw_dual(&sharp))
                });
                ev.expect("supp", sharp.supp() == m.supp(), || format!("supp differs from m#={sharp}"));
                if let Ok((delta, _)) = mw_step(m) {
                    let top = m.max_end().expect("nonzero");
                    let smallest = sharp.segments().iter().filter(|s| s.end() == top).min();
                    ev.expect("delta", smallest == Some(&delta), || {
                        format!("Δ(m)={delta}, smallest in m# ending at max: {smallest:?}")
                    });
                }
            }
            Property::GlsInvariance => {
                let m = &ins[0];
                ev.hyp("main");
                let (a, b, s) = (c.gls(m), c.gls(&m.dual()), c.gls(&mw_dual(m)));
                if !(a == b && b == s) {
                    ev.fail("main", format!("GLS(m)={a}, GLS(m^∨)={b}, GLS(m#)={s}"));
                }
            }
            Property::LcDuality => {
                let (m, m2) = (&ins[0], &ins[1]);
                ev.hyp("main");
                let (a, b) = (c.lc(m, m2), c.lc(&m2.dual(), &m.dual()));
                if a != b {
                    ev.fail("main", format!("LC(m,m2)={a}, LC(m2^∨,m^∨)={b}"));
                }
            }
            Property::GlsImpliesLc => {
                let m = &ins[0];
                if c.gls(m) {
                    ev.hyp("main");
                    if !c.lc(m, m) {
                        ev.fail("main", "GLS holds but LC(m,m) fails");
                    }
                }
            }
            Property::DiagonalEmbedding => {
                let m = &ins[0];
                let x = pairset_x(m);
                let values = x.iter().map(|p| (p, diagonal_coeff(c.cfg().seed, p))).collect();
                let lam = CoeffVector::new(x, values).expect("keys drawn from support");
                let g = gls_matrix(m, &lam).expect("support matches");
                let l = lc_matrix(m, m, &lam, &lam).expect("support matches");
                let same_shape = (g.rows(), g.cols()) == (l.rows(), l.cols());
                let negated = same_shape
                    && (0..g.rows()).all(|r| (0..g.cols()).all(|k| *g.get(r, k) == -l.get(r, k)));
                ev.expect("main", negated, || "v^{m,m}(λ,λ) ≠ -v^m(λ)".into());
            }
            Property::PairDecomposition => {
                let (m, m2) = (&ins[0], &ins[1]);
                let s = m.add(m2);
                let nx = pairset_x(m).len() + pairset_x(m2).len() + pairset_x_cross(m, m2).len() + pairset_x_cross(m2, m).len();
                let ny = pairset_y(m).len() + pairset_y(m2).len() + pairset_y_cross(m, m2).len() + pairset_y_cross(m2, m).len();
                let y = pairset_y(m);
                let diag = (0..m.len()).all(|i| y.contains(Pair::new(i, i)));
                ev.expect("main", nx == pairset_x(&s).len() && ny == pairset_y(&s).len() && diag, || {
                    format!("|X|: {nx} vs {}, |Y|: {ny} vs {}, diagonal: {diag}", pairset_x(&s).len(), pairset_y(&s).len())
                });
            }
            Property::MwFrontier => {
                let (m, m2) = (&ins[0], &ins[1]);
                if m.is_zero() || m2.is_zero() || m.max_end().ok() >= m2.max_end().ok() {
                    return ev;
                }
                match mw_frontier(m, m2) {
                    Err(e) => {
                        ev.hyp("injective");
                        ev.fail("injective", e.to_string());
                    }
                    Ok(f) => {
                        ev.expect("injective", f.is_injective(), || "f is not injective".into());
                        ev.expect("monotone", f.is_monotone(), || "f is not monotone".into());
                        ev.expect("surjective", f.is_bijective() == f.reduction_splits, || {
                            format!("bijective={} but split={}", f.is_bijective(), f.reduction_splits)
                        });
                        if f.xt.len() <= f.yt.len() {
                            ev.expect("count", f.is_bijective(), || "#X̃ ≤ #Ỹ without surjectivity".into());
                        }
                    }
                }
            }
            Property::BestMatching => {
                let m = &ins[0];
                let Some(Param::Point(rho)) = &inst.param else {
                    return ev;
                };
                let r = best_matching(m, rho);
                let maximal = is_maximal_matching(m, rho, &r).unwrap_or(false);
                ev.expect("maximal", maximal, || format!("best matching {:?} is not maximal", r.pairs));
                ev.expect("crossing", !has_crossing(m, &r), || format!("best matching {:?} crosses", r.pairs));
            }
            Property::DerivativeSoc => {
                let m = &ins[0];
                let Some(Param::Point(rho)) = &inst.param else {
                    return ev;
                };
                let d = derivative(m, rho);
                let mut back = d.derived.clone();
                for _ in 0..d.mu {
                    back = soc_cuspidal(&back, rho);
                }
                ev.expect("main", back.supp() == m.supp(), || {
                    format!("μ={}, ∂ρm={}, rebuilt {back}", d.mu, d.derived)
                });
            }
            Property::SeedStability => {
                let (m, m2) = (&ins[0], &ins[1]);
                ev.hyp("main");
                let base = c.cfg().clone();
                let seeds: Vec<u64> = (0..5).map(|k| base.seed.wrapping_add(k * 0x9e37_79b9)).collect();
                let gls: Vec<bool> = seeds.iter().map(|&s| check_gls(m, &base.with_seed(s)).holds).collect();
                let lc: Vec<bool> = seeds.iter().map(|&s| check_lc(m, m2, &base.with_seed(s)).holds).collect();
                c.gls(m);
                c.lc(m, m2);
                if gls.windows(2).any(|w| w[0] != w[1]) || lc.windows(2).any(|w| w[0] != w[1]) {
                    ev.fail("main", format!("GLS across seeds {gls:?}, LC across seeds {lc:?}"));
                }
            }
        }
        ev
    }
}

/// Coefficients for the diagonal identity; any values do, these vary with
/// the seed.
fn diagonal_coeff(seed: u64, p: Pair) -> i64 {
    let h = crate::linalg::splitmix64(seed ^ ((p.i as u64) << 32 | p.j as u64));
    (h % 2001) as i64 - 1000
}

/// The separation conditions between an upper part `a` and a lower part `b`:
/// no segment of `a`, nor its left shift, precedes a segment of `b`.
pub fn np_conditions(a: &Multisegment, b: &Multisegment) -> bool {
    a.segments()
        .iter()
        .all(|d| b.segments().iter().all(|d2| !d.precedes(d2) && !d.shift_left().precedes(d2)))
}

/// How long a suite runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Budget {
    /// Exactly this many instances.
    Instances(u64),
    /// Until every part has `target` instances satisfying its hypothesis,
    /// giving up after `max_instances`.
    Hypotheses { target: u64, max_instances: u64 },
}

impl Budget {
    pub fn hypotheses(target: u64) -> Budget {
        Budget::Hypotheses {
            target,
            max_instances: target.saturating_mul(200),
        }
    }

    fn limit(self) -> u64 {
        match self {
            Budget::Instances(n) => n,
            Budget::Hypotheses { max_instances, .. } => max_instances,
        }
    }
}

const BATCH: u64 = 256;

pub fn run_property(prop: Property, gen: &GenParams, cfg: &RankConfig, budget: Budget) -> PropertyReport {
    let mut parts: BTreeMap<String, u64> = prop.parts().iter().map(|p| (p.to_string(), 0)).collect();
    let mut report = PropertyReport {
        name: prop.name().to_string(),
        instances_generated: 0,
        hypothesis_satisfied: 0,
        parts: BTreeMap::new(),
        violations: Vec::new(),
        true_verdicts: 0,
        certified_true: 0,
        false_verdict_bound: BigRational::zero(),
        gen: gen.clone(),
        cfg: cfg.clone(),
    };
    let done = |parts: &BTreeMap<String, u64>, n: u64| match budget {
        Budget::Instances(k) => n >= k,
        Budget::Hypotheses { target, max_instances } => n >= max_instances || parts.values().all(|&v| v >= target),
    };
    let mut start = 0;
    'outer: while !done(&parts, report.instances_generated) {
        let end = (start + BATCH).min(budget.limit());
        let batch: Vec<(u64, Instance, Eval, Checker<'_>)> = (start..end)
            .into_par_iter()
            .map(|index| {
                let inst = prop.generate(gen, index);
                let mut c = Checker::new(cfg);
                let ev = prop.evaluate(&inst, &mut c);
                (index, inst, ev, c)
            })
            .collect();
        for (index, inst, ev, c) in batch {
            if done(&parts, report.instances_generated) {
                break 'outer;
            }
            report.instances_generated += 1;
            report.true_verdicts += c.trues;
            report.certified_true += c.certified;
            report.false_verdict_bound += c.bound;
            if !ev.hyp.is_empty() {
                report.hypothesis_satisfied += 1;
            }
            for p in &ev.hyp {
                *parts.entry(p.to_string()).or_default() += 1;
            }
            for (part, detail) in ev.failed {
                report.violations.push(Violation {
                    index,
                    part: part.to_string(),
                    inputs: inst.inputs.iter().map(|m| m.to_string()).collect(),
                    param: inst.param.as_ref().map(Param::render),
                    detail,
                    possibly_spurious: c.probabilistic_false,
                });
            }
        }
        start = end;
        if start >= budget.limit() {
            break;
        }
    }
    report.parts = parts;
    report
}

/// Re-run a recorded violation from its printed inputs alone. True when the
/// same part fails again.
pub fn replay(prop: Property, v: &Violation, cfg: &RankConfig) -> Result<bool> {
    let inputs = v.inputs.iter().map(|s| parse_mseg(s)).collect::<Result<Vec<_>>>()?;
    let param = v.param.as_deref().map(Param::parse).transpose()?;
    let inst = Instance { inputs, param };
    let mut c = Checker::new(cfg);
    let ev = prop.evaluate(&inst, &mut c);
    Ok(ev.failed.iter().any(|(p, _)| *p == v.part))
}

/// Evaluate one instance outside a suite run.
pub fn evaluate_instance(prop: Property, inst: &Instance, cfg: &RankConfig) -> (Vec<&'static str>, Vec<String>) {
    let mut c = Checker::new(cfg);
    let ev = prop.evaluate(inst, &mut c);
    (ev.hyp, ev.failed.into_iter().map(|(p, d)| format!("{p}: {d}")).collect())
}

pub fn prop_mm_minus(p: &GenParams, cfg: &RankConfig) -> PropertyReport {
    run_property(Property::MmMinus, p, cfg, Property::MmMinus.default_budget())
}

pub fn prop_splitdisj(p: &GenParams, cfg: &RankConfig) -> PropertyReport {
    run_property(Property::SplitDisj, p, cfg, Property::SplitDisj.default_budget())
}

pub fn prop_gedelta(p: &GenParams, cfg: &RankConfig) -> PropertyReport {
    run_property(Property::GeDelta, p, cfg, Property::GeDelta.default_budget())
}

pub fn prop_3ms(p: &GenParams, cfg: &RankConfig) -> PropertyReport {
    run_property(Property::ThreeMs, p, cfg, Property::ThreeMs.default_budget())
}

pub fn prop_sumofseg_geom(p: &GenParams, cfg: &RankConfig) -> PropertyReport {
    run_property(Property::SumOfSeg, p, cfg, Property::SumOfSeg.default_budget())
}

pub fn prop_rhoext_geom(p: &GenParams, cfg: &RankConfig) -> PropertyReport {
    run_property(Property::RhoExt, p, cfg, Property::RhoExt.default_budget())
}

/// All invariance bundles, one report each.
pub fn suite_invariances(p: &GenParams, cfg: &RankConfig) -> Vec<PropertyReport> {
    Property::INVARIANCES
        .iter()
        .map(|&prop| run_property(prop, p, cfg, prop.default_budget()))
        .collect()
}

/// Every multisegment of at most `max_segments` segments inside `[lo, hi]`
/// on the default line.
pub fn all_multisegments(max_segments: usize, lo: i64, hi: i64) -> Vec<Multisegment> {
    let segs: Vec<Segment> = (lo..=hi)
        .flat_map(|b| (b..=hi).map(move |e| Segment::new_unchecked(Line::default(), b, e)))
        .collect();
    let mut out = vec![Multisegment::zero()];
    let mut frontier: Vec<(usize, Vec<Segment>)> = vec![(0, Vec::new())];
    for _ in 0..max_segments {
        let mut next = Vec::new();
        for (from, cur) in &frontier {
            for k in *from..segs.len() {
                let mut v = cur.clone();
                v.push(segs[k].clone());
                out.push(Multisegment::new(v.clone()));
                next.push((k, v));
            }
        }
        frontier = next;
    }
    out
}

/// Compare the greedy matching with every maximal matching, for every
/// multisegment in the box and every point `ρ` where matchings exist.
/// A disagreement is an enumerated maximal matching whose unmatched set
/// `A` differs from the greedy one as a multiset of segments.
pub fn matching_oracle_exhaustive(max_segments: usize, lo: i64, hi: i64) -> Result<PropertyReport> {
    let corpus = all_multisegments(max_segments, lo, hi);
    let results: Vec<Result<(u64, Vec<Violation>)>> = corpus
        .par_iter()
        .enumerate()
        .map(|(index, m)| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for pos in lo - 1..=hi {
                let rho = CuspidalPoint::at(pos);
                let best = best_matching(m, &rho);
                let a = best.a_segments(m);
                for r in crate::matching::enumerate_maximal_matchings(m, &rho)? {
                    checked += 1;
                    if r.a_segments(m) != a {
                        bad.push(Violation {
                            index: index as u64,
                            part: "a_set".into(),
                            inputs: vec![m.to_string()],
                            param: Some(Param::Point(rho.clone()).render()),
                            detail: format!("greedy A = {a}, maximal matching {:?} has A = {}", r.pairs, r.a_segments(m)),
                            possibly_spurious: false,
                        });
                    }
                }
            }
            Ok((checked, bad))
        })
        .collect();
    let mut report = PropertyReport {
        name: "matching_oracle".into(),
        instances_generated: corpus.len() as u64,
        hypothesis_satisfied: corpus.len() as u64,
        parts: BTreeMap::new(),
        violations: Vec::new(),
        true_verdicts: 0,
        certified_true: 0,
        false_verdict_bound: BigRational::zero(),
        gen: GenParams {
            max_segments,
            coord_range: hi.abs().max(lo.abs()),
            max_length: hi - lo + 1,
            lines: 1,
            seed: 0,
        },
        cfg: RankConfig::default(),
    };
    let mut compared = 0;
    for r in results {
        let (n, bad) = r?;
        compared += n;
        report.violations.extend(bad);
    }
    report.parts.insert("matchings".into(), compared);
    Ok(report)
}
