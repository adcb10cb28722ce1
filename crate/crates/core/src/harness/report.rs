use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::Zero;
use serde::{Serialize, Serializer};

use crate::geom::{check_gls, check_lc, Verdict};
use crate::harness::gen::GenParams;
use crate::linalg::RankConfig;
use crate::multisegment::Multisegment;

/// A failed property instance, with everything needed to replay it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub index: u64,
    pub part: String,
    /// Canonical strings of the instance's multisegments.
    pub inputs: Vec<String>,
    /// Extra parameter (a point or a segment) where the property uses one.
    pub param: Option<String>,
    pub detail: String,
    /// Some FALSE verdict involved was probabilistic.
    pub possibly_spurious: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub name: String,
    pub instances_generated: u64,
    /// Instances satisfying the hypothesis of at least one part.
    pub hypothesis_satisfied: u64,
    /// Hypothesis counts per part.
    pub parts: BTreeMap<String, u64>,
    pub violations: Vec<Violation>,
    /// TRUE verdicts computed, and how many of them were confirmed exactly.
    pub true_verdicts: u64,
    pub certified_true: u64,
    #[serde(serialize_with = "ser_ratio")]
    pub false_verdict_bound: BigRational,
    pub gen: GenParams,
    #[serde(serialize_with = "ser_cfg")]
    pub cfg: RankConfig,
}

impl PropertyReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Smallest hypothesis count over the parts.
    pub fn min_part(&self) -> u64 {
        self.parts.values().copied().min().unwrap_or(0)
    }
}

impl fmt::Display for PropertyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} instances, {} satisfying hypotheses, {} violations",
            self.name,
            self.instances_generated,
            self.hypothesis_satisfied,
            self.violations.len()
        )?;
        if self.parts.len() > 1 {
            let parts: Vec<String> = self.parts.iter().map(|(k, v)| format!("{k}={v}")).collect();
            write!(f, " [{}]", parts.join(" "))?;
        }
        for v in &self.violations {
            write!(f, "\n  #{} {} {}", v.index, v.part, v.inputs.join(" ; "))?;
            if let Some(p) = &v.param {
                write!(f, " ; {p}")?;
            }
            write!(f, ": {}", v.detail)?;
            if v.possibly_spurious {
                write!(f, " (possibly spurious)")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn ratio_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

fn ser_ratio<S: Serializer>(r: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.collect_str(&ratio_string(r))
}

fn ser_cfg<S: Serializer>(c: &RankConfig, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeStruct;
    let mut st = s.serialize_struct("RankConfig", 4)?;
    st.serialize_field("prime", &c.prime)?;
    st.serialize_field("trials", &c.trials)?;
    st.serialize_field("seed", &c.seed)?;
    st.serialize_field("certify", &c.certify)?;
    st.end()
}

/// Runs condition checks for one instance and keeps the bookkeeping the
/// report needs.
pub(crate) struct Checker<'a> {
    cfg: &'a RankConfig,
    pub bound: BigRational,
    pub trues: u64,
    pub certified: u64,
    pub probabilistic_false: bool,
}

impl<'a> Checker<'a> {
    pub fn new(cfg: &'a RankConfig) -> Self {
        Checker {
            cfg,
            bound: BigRational::zero(),
            trues: 0,
            certified: 0,
            probabilistic_false: false,
        }
    }

    pub fn cfg(&self) -> &RankConfig {
        self.cfg
    }

    fn record(&mut self, v: Verdict) -> bool {
        if v.holds {
            self.trues += 1;
            self.certified += v.certified as u64;
        } else if !v.certified {
            self.probabilistic_false = true;
            self.bound += v.false_verdict_bound;
        }
        v.holds
    }

    pub fn gls(&mut self, m: &Multisegment) -> bool {
        let v = check_gls(m, self.cfg);
        self.record(v)
    }

    pub fn lc(&mut self, m: &Multisegment, m2: &Multisegment) -> bool {
        let v = check_lc(m, m2, self.cfg);
        self.record(v)
    }
}
