//! Acceptance criteria. Runs as a plain binary so each criterion prints one
//! line whether it passes or not.

use std::time::{Duration, Instant};

use multiseg::harness::{gen_ladder, gen_ms, matching_oracle_exhaustive, run_property, Budget, GenParams, Property};
use multiseg::*;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

/// Counts TRUE verdicts from criteria 1-6 and how many were confirmed by
/// exact rank.
#[derive(Default)]
struct Certificates {
    trues: u64,
    certified: u64,
}

impl Certificates {
    fn add(&mut self, v: &Verdict) {
        if v.holds {
            self.trues += 1;
            self.certified += v.certified as u64;
        }
    }
}

fn ms(s: &str) -> Multisegment {
    parse_mseg(s).expect("valid multisegment")
}

const LECLERC: &str = "[1,2]+[-1,1]+[0,0]+[-2,-1]";

fn leclerc(certs: &mut Certificates) -> Outcome {
    let m = ms(LECLERC);
    let cfg = RankConfig::default();
    let gls = check_gls(&m, &cfg);
    let lc = check_lc(&m, &m, &cfg);
    let lc_cert = check_lc(&m, &m, &cfg.certified());
    certs.add(&lc_cert);
    let witnessed = lc_cert
        .witness
        .as_ref()
        .is_some_and(|w| verify_lc_witness(&m, &m, w).unwrap_or(false));
    outcome(
        !gls.holds && lc.holds && witnessed,
        format!("GLS={} LC(m,m)={} witness confirmed={witnessed}", gls.holds, lc.holds),
    )
}

fn length_examples() -> Outcome {
    let cfg = RankConfig::default();
    let mut details = Vec::new();
    let mut ok = true;
    for s in ["[1,3]+[-2,2]+[-1,1]+[0,0]+[-3,-1]", "[2,4]+[-2,3]+[-1,2]+[0,1]+[-4,0]+[-3,-1]"] {
        let start = Instant::now();
        let v = check_lc(&ms(s), &ms(s), &cfg);
        let t = start.elapsed();
        ok &= !v.holds && t < Duration::from_secs(1);
        details.push(format!("LC={} in {t:.1?}", v.holds));
    }
    outcome(ok, details.join(", "))
}

fn ladders(certs: &mut Certificates) -> Outcome {
    let p = GenParams {
        max_segments: 8,
        coord_range: 10,
        max_length: 21,
        lines: 1,
        seed: 3,
    };
    let cfg = RankConfig::default().certified();
    let mut failures = 0;
    let mut sizes = 0;
    for i in 0..200 {
        let m = gen_ladder(&p, i);
        assert!(m.is_ladder());
        sizes += m.len();
        let v = check_gls(&m, &cfg);
        certs.add(&v);
        let sound = v.witness.as_ref().is_some_and(|w| verify_gls_witness(&m, w).unwrap_or(false));
        if !(v.holds && v.certified && sound) {
            failures += 1;
        }
    }
    outcome(
        failures == 0,
        format!("{failures} failures, mean size {:.1}", sizes as f64 / 200.0),
    )
}

fn involution() -> Outcome {
    let p = GenParams {
        max_segments: 8,
        coord_range: 5,
        max_length: 4,
        lines: 1,
        seed: 4,
    };
    let r = run_property(Property::MwInvolution, &p, &RankConfig::default(), Budget::Instances(1000));
    outcome(r.passed() && r.instances_generated == 1000, r.to_string())
}

fn invariances(certs: &mut Certificates) -> Outcome {
    let p = GenParams {
        max_segments: 6,
        coord_range: 4,
        max_length: 4,
        lines: 2,
        seed: 5,
    };
    let cfg = RankConfig::default().certified();
    let mut ok = true;
    let mut lines = Vec::new();
    for prop in [Property::GlsInvariance, Property::LcDuality, Property::GlsImpliesLc] {
        let r = run_property(prop, &p, &cfg, Budget::Instances(500));
        certs.trues += r.true_verdicts;
        certs.certified += r.certified_true;
        ok &= r.passed() && r.instances_generated == 500;
        lines.push(r.to_string());
    }
    outcome(ok, lines.join("; "))
}

fn propositions(certs: &mut Certificates) -> Outcome {
    let p = GenParams {
        max_segments: 6,
        coord_range: 4,
        max_length: 4,
        lines: 1,
        seed: 6,
    };
    let cfg = RankConfig::default().certified();
    let mut ok = true;
    let mut lines = Vec::new();
    for prop in Property::PROPOSITIONS {
        let r = run_property(prop, &p, &cfg, prop.default_budget());
        certs.trues += r.true_verdicts;
        certs.certified += r.certified_true;
        ok &= r.passed() && r.min_part() >= 200;
        lines.push(format!("{} {}/{}", r.name, r.min_part(), r.violations.len()));
        if !r.passed() {
            eprintln!("{r}");
        }
    }
    outcome(ok, format!("hypotheses/violations: {}", lines.join(", ")))
}

fn matching_oracle() -> Outcome {
    match matching_oracle_exhaustive(5, 0, 3) {
        Ok(r) => outcome(
            r.passed(),
            format!(
                "{} multisegments, {} maximal matchings compared, {} disagreements",
                r.instances_generated,
                r.parts["matchings"],
                r.violations.len()
            ),
        ),
        Err(e) => outcome(false, e.to_string()),
    }
}

fn seed_stability() -> Outcome {
    let p = GenParams {
        max_segments: 6,
        coord_range: 4,
        max_length: 4,
        lines: 1,
        seed: 8,
    };
    let corpus: Vec<(Multisegment, Multisegment)> = (0..200).map(|i| (gen_ms(&p, 2 * i), gen_ms(&p, 2 * i + 1))).collect();
    let seeds = [1u64, 2, 3, 0xdead_beef, u64::MAX];
    let verdicts: Vec<Vec<(bool, bool)>> = seeds
        .iter()
        .map(|&s| {
            let cfg = RankConfig::default().with_seed(s);
            corpus
                .iter()
                .map(|(m, m2)| (check_gls(m, &cfg).holds, check_lc(m, m2, &cfg).holds))
                .collect()
        })
        .collect();
    let discrepancies = (0..corpus.len())
        .filter(|&i| verdicts.iter().any(|v| v[i] != verdicts[0][i]))
        .count();
    let falses = verdicts[0].iter().filter(|(g, l)| !g || !l).count();
    outcome(
        discrepancies == 0,
        format!("{discrepancies} discrepancies over 200 instances x 5 seeds ({falses} with a FALSE verdict)"),
    )
}

fn main() {
    let mut certs = Certificates::default();
    type Criterion<'a> = (&'a str, Duration, Box<dyn FnOnce(&mut Certificates) -> Outcome>);
    let criteria: Vec<Criterion> = vec![
        ("Leclerc example: GLS false, LC(m,m) true", Duration::from_secs(1), Box::new(leclerc)),
        ("LC(m,m) false on the length 9 and 257 examples", Duration::from_secs(2), Box::new(|_| length_examples())),
        ("GLS on 200 ladders, certified", Duration::from_secs(30), Box::new(ladders)),
        ("MW involution on 1000 multisegments", Duration::from_secs(10), Box::new(|_| involution())),
        ("GLS/LC invariance suite", Duration::from_secs(120), Box::new(invariances)),
        ("proposition suites", Duration::from_secs(300), Box::new(propositions)),
        ("best matching vs maximal matchings, exhaustive", Duration::from_secs(60), Box::new(|_| matching_oracle())),
        ("verdict stability across 5 seeds", Duration::from_secs(300), Box::new(|_| seed_stability())),
    ];
    let mut failed = 0;
    for (k, (name, limit, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let out = run(&mut certs);
        let t = start.elapsed();
        let ok = out.ok && t <= limit;
        failed += !ok as u32;
        println!(
            "[{}] AC{} {name} ({t:.2?} / {limit:?}): {}",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            out.detail
        );
    }
    let ok = certs.trues > 0 && certs.trues == certs.certified;
    failed += !ok as u32;
    println!(
        "[{}] AC9 exact rank confirms every TRUE verdict of AC1-AC6: {}/{} certified",
        if ok { "PASS" } else { "FAIL" },
        certs.certified,
        certs.trues
    );
    if failed > 0 {
        eprintln!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
