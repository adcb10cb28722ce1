//! Command-line front end: argument parsing, dispatch and output.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use multiseg::harness::{matching_oracle_exhaustive, run_property, Budget, GenParams, Property, PropertyReport};
use multiseg::{
    check_gls, check_ig, check_lc, derivative, li_for_good, mw_dual, mw_step, pairset_x, pairset_x_cross, pairset_y,
    pairset_y_cross, parse_mseg, parse_point, sli_sufficient, soc_cuspidal, Error, Multisegment, RankConfig, Verdict,
    DEFAULT_PRIME, DEFAULT_TRIALS,
};
use serde::ser::{SerializeMap, Serializer};
use serde::Serialize;
use serde_json::{Map, Value};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FALSE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "multiseg", version, about = "Multisegment combinatorics and geometric condition checks")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Global {
    /// Prime for modular rank computations.
    #[arg(long, global = true, default_value_t = DEFAULT_PRIME)]
    pub prime: u64,
    /// Random trials before a condition is declared false.
    #[arg(long, global = true, default_value_t = DEFAULT_TRIALS)]
    pub trials: u32,
    /// Seed for coefficient sampling and for suite instance generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Confirm TRUE verdicts by exact rational rank.
    #[arg(long, global = true)]
    pub certify: bool,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Exit with 0 iff the verdict is true, 1 otherwise.
    #[arg(long, global = true)]
    pub exit_code_verdict: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide a geometric condition.
    #[command(subcommand)]
    Check(Check),
    /// Print the Mœglin–Waldspurger involution m#.
    Mw { m: String },
    /// Print one reduction step: m⁻ and Δ(m).
    Reduce { m: String },
    /// Print μ, the left derivative and the socle of ρ × Z(m).
    Derivative {
        /// Point ρ, written LABEL:INT or INT.
        #[arg(long, allow_hyphen_values = true)]
        rho: String,
        m: String,
    },
    /// Whether m is a ladder.
    Ladder { m: String },
    /// The sufficient condition that no segment of m precedes one of m2.
    Sli { m: String, m2: String },
    /// Run a property suite.
    Suite(SuiteArgs),
}

#[derive(Subcommand, Debug)]
pub enum Check {
    Gls { m: String },
    Lc { m: String, m2: String },
    Ig { m: String, m2: String },
    /// LI through LC; one side must be a ladder.
    Li { m: String, m2: String },
}

#[derive(Args, Debug)]
pub struct SuiteArgs {
    /// A property name, `propositions`, `invariances` or `matching_oracle`.
    pub name: String,
    /// Hypothesis-satisfying instances per part (propositions) or instances
    /// (invariances). Defaults to each suite's own budget.
    #[arg(long)]
    pub instances: Option<u64>,
    #[arg(long, default_value_t = 4)]
    pub max_segments: usize,
    #[arg(long, default_value_t = 3)]
    pub range: i64,
    #[arg(long, default_value_t = 3)]
    pub max_length: i64,
    #[arg(long, default_value_t = 1)]
    pub lines: usize,
}

/// Exit code and the two output streams of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Machine-readable result; field order is the output order.
#[derive(Serialize, Debug)]
pub struct JsonResult {
    pub command: String,
    pub inputs: Vec<String>,
    pub verdict: Option<bool>,
    pub certified: bool,
    pub trials: u32,
    pub false_verdict_bound: String,
    #[serde(serialize_with = "ordered_map")]
    pub witness: Option<Vec<(String, i64)>>,
    pub prime: u64,
    pub seed: u64,
    pub outputs: Map<String, Value>,
}

fn ordered_map<S: Serializer>(w: &Option<Vec<(String, i64)>>, s: S) -> Result<S::Ok, S::Error> {
    match w {
        None => s.serialize_none(),
        Some(entries) => {
            let mut map = s.serialize_map(Some(entries.len()))?;
            for (k, v) in entries {
                map.serialize_entry(k, v)?;
            }
            map.end()
        }
    }
}

pub fn emit_json(r: &JsonResult) -> String {
    serde_json::to_string(r).expect("serializable")
}

struct Failure {
    code: i32,
    msg: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::EmptySegment { .. } | Error::InvalidConfig(_) => EXIT_PARSE,
            _ => EXIT_INTERNAL,
        };
        Failure { code, msg: e.to_string() }
    }
}

fn parse_arg(text: &str) -> Result<Multisegment, Failure> {
    parse_mseg(text).map_err(|e| Failure {
        code: EXIT_PARSE,
        msg: format!("{e} in {text:?}"),
    })
}

impl JsonResult {
    fn new(command: &str, inputs: &[&Multisegment], g: &Global) -> Self {
        JsonResult {
            command: command.to_string(),
            inputs: inputs.iter().map(|m| m.to_string()).collect(),
            verdict: None,
            certified: false,
            trials: 0,
            false_verdict_bound: "0/1".into(),
            witness: None,
            prime: g.prime,
            seed: g.seed,
            outputs: Map::new(),
        }
    }

    fn with_verdict(mut self, v: &Verdict) -> Self {
        self.verdict = Some(v.holds);
        self.certified = v.certified;
        self.trials = v.trials_run;
        self.false_verdict_bound = v.bound_string();
        self.witness = v.witness.as_ref().map(|w| w.entries());
        self
    }

    fn out(mut self, key: &str, v: impl Into<Value>) -> Self {
        self.outputs.insert(key.to_string(), v.into());
        self
    }
}

fn render_text(r: &JsonResult) -> String {
    let mut s = String::new();
    if r.inputs.is_empty() {
        let _ = writeln!(s, "{}", r.command);
    } else {
        let _ = writeln!(s, "{} {}", r.command, r.inputs.join(" ; "));
    }
    if let Some(v) = r.verdict {
        let _ = write!(s, "verdict: {v}");
        if r.certified {
            s.push_str(" (certified)");
        } else if !v && r.trials > 0 {
            let _ = write!(s, " (after {} trials, error bound {})", r.trials, r.false_verdict_bound);
        }
        s.push('\n');
    }
    if let Some(w) = &r.witness {
        if !w.is_empty() {
            let entries: Vec<String> = w.iter().map(|(k, v)| format!("{k}={v}")).collect();
            let _ = writeln!(s, "witness: {}", entries.join(" "));
        }
    }
    for (k, v) in r.outputs.iter().filter(|(k, _)| *k != "reports") {
        match v {
            Value::String(t) => {
                let _ = writeln!(s, "{k}: {t}");
            }
            Value::Array(items) if items.iter().all(Value::is_string) => {
                for t in items {
                    let _ = writeln!(s, "{}", t.as_str().unwrap_or_default());
                }
            }
            other => {
                let _ = writeln!(s, "{k}: {other}");
            }
        }
    }
    s
}

fn rank_config(g: &Global) -> Result<RankConfig, Failure> {
    Ok(RankConfig::new(g.prime, g.trials, g.seed, g.certify)?)
}

fn suite(args: &SuiteArgs, g: &Global) -> Result<JsonResult, Failure> {
    let cfg = rank_config(g)?;
    let gen = GenParams {
        max_segments: args.max_segments,
        coord_range: args.range,
        max_length: args.max_length,
        lines: args.lines,
        seed: g.seed,
    };
    gen.validate()?;
    let budget = |p: Property| match (args.instances, p.default_budget()) {
        (None, b) => b,
        (Some(n), Budget::Instances(_)) => Budget::Instances(n),
        (Some(n), Budget::Hypotheses { .. }) => Budget::hypotheses(n),
    };
    let props: Vec<Property> = match args.name.as_str() {
        "propositions" => Property::PROPOSITIONS.to_vec(),
        "invariances" => Property::INVARIANCES.to_vec(),
        "matching_oracle" => Vec::new(),
        name => vec![Property::from_name(name).ok_or_else(|| Failure {
            code: EXIT_PARSE,
            msg: format!("unknown suite {name:?}"),
        })?],
    };
    let reports: Vec<PropertyReport> = if props.is_empty() {
        vec![matching_oracle_exhaustive(args.max_segments, 0, args.range)?]
    } else {
        props.iter().map(|&p| run_property(p, &gen, &cfg, budget(p))).collect()
    };
    let passed = reports.iter().all(PropertyReport::passed);
    let mut r = JsonResult::new(&format!("suite {}", args.name), &[], g);
    r.verdict = Some(passed);
    r.certified = false;
    let summary: Vec<Value> = reports.iter().map(|r| Value::String(r.to_string())).collect();
    let json_reports = serde_json::to_value(&reports).expect("serializable");
    r.outputs.insert("reports".into(), json_reports);
    r.outputs.insert("summary".into(), Value::Array(summary));
    Ok(r)
}

fn dispatch(cli: &Cli) -> Result<JsonResult, Failure> {
    let g = &cli.global;
    match &cli.command {
        Command::Check(check) => {
            let cfg = rank_config(g)?;
            match check {
                Check::Gls { m } => {
                    let m = parse_arg(m)?;
                    let v = check_gls(&m, &cfg);
                    Ok(JsonResult::new("check gls", &[&m], g)
                        .with_verdict(&v)
                        .out("rows", pairset_x(&m).len())
                        .out("cols", pairset_y(&m).len()))
                }
                Check::Lc { m, m2 } => {
                    let (m, m2) = (parse_arg(m)?, parse_arg(m2)?);
                    let v = check_lc(&m, &m2, &cfg);
                    Ok(JsonResult::new("check lc", &[&m, &m2], g)
                        .with_verdict(&v)
                        .out("rows", pairset_x_cross(&m, &m2).len())
                        .out("cols", pairset_y_cross(&m, &m2).len()))
                }
                Check::Ig { m, m2 } => {
                    let (m, m2) = (parse_arg(m)?, parse_arg(m2)?);
                    let v = check_ig(&m, &m2, &cfg);
                    Ok(JsonResult::new("check ig", &[&m, &m2], g).with_verdict(&v))
                }
                Check::Li { m, m2 } => {
                    let (m, m2) = (parse_arg(m)?, parse_arg(m2)?);
                    let (route, v) = li_for_good(&m, &m2, &cfg)?;
                    Ok(JsonResult::new("check li", &[&m, &m2], g)
                        .with_verdict(&v)
                        .out("route", route.to_string()))
                }
            }
        }
        Command::Mw { m } => {
            let m = parse_arg(m)?;
            Ok(JsonResult::new("mw", &[&m], g).out("mw", mw_dual(&m).to_string()))
        }
        Command::Reduce { m } => {
            let m = parse_arg(m)?;
            let r = JsonResult::new("reduce", &[&m], g);
            Ok(match mw_step(&m) {
                Ok((delta, reduced)) => r.out("reduced", reduced.to_string()).out("delta", delta.to_string()),
                Err(_) => r.out("reduced", "0").out("delta", Value::Null),
            })
        }
        Command::Derivative { rho, m } => {
            let point = parse_point(rho)?;
            let m = parse_arg(m)?;
            let d = derivative(&m, &point);
            Ok(JsonResult::new("derivative", &[&m], g)
                .out("rho", point.to_string())
                .out("mu", d.mu)
                .out("derivative", d.derived.to_string())
                .out("soc", soc_cuspidal(&m, &point).to_string()))
        }
        Command::Ladder { m } => {
            let m = parse_arg(m)?;
            let mut r = JsonResult::new("ladder", &[&m], g);
            r.verdict = Some(m.is_ladder());
            r.certified = true;
            Ok(r)
        }
        Command::Sli { m, m2 } => {
            let (m, m2) = (parse_arg(m)?, parse_arg(m2)?);
            let mut r = JsonResult::new("sli", &[&m, &m2], g);
            r.verdict = Some(sli_sufficient(&m, &m2));
            r.certified = true;
            Ok(r)
        }
        Command::Suite(args) => suite(args, g),
    }
}

/// Run one invocation. `args` includes the program name.
pub fn run<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(&cli) {
        Err(f) => Output {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.msg),
        },
        Ok(r) => {
            let code = match (cli.global.exit_code_verdict, r.verdict) {
                (true, Some(false)) => EXIT_FALSE,
                _ => EXIT_OK,
            };
            let stdout = match cli.global.format {
                Format::Json => emit_json(&r) + "\n",
                Format::Text => render_text(&r),
            };
            Output {
                code,
                stdout,
                stderr: String::new(),
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_args(args: &[&str]) -> Output {
        run(std::iter::once("multiseg").chain(args.iter().copied()))
    }

    fn json(args: &[&str]) -> Value {
        let mut all = vec!["--format", "json"];
        all.extend_from_slice(args);
        let out = run_args(&all);
        assert_eq!(out.code, 0, "{}", out.stderr);
        serde_json::from_str(&out.stdout).unwrap()
    }

    #[test]
    fn leclerc_gls_is_false() {
        let v = json(&["check", "gls", "[1,2]+[-1,1]+[0,0]+[-2,-1]"]);
        assert_eq!(v["verdict"], false);
        assert_eq!(v["witness"], Value::Null);
        assert_eq!(v["trials"], 8);
    }

    #[test]
    fn mw_output() {
        let v = json(&["mw", "[0,0]+[1,1]"]);
        assert_eq!(v["outputs"]["mw"], "[0,1]");
        assert_eq!(v["verdict"], Value::Null);
        assert_eq!(run_args(&["mw", "[0,0]+[1,1]"]).stdout, "mw [1,1]+[0,0]\nmw: [0,1]\n");
    }

    #[test]
    fn lc_false_on_linked_points() {
        let v = json(&["check", "lc", "[0,0]", "[1,1]"]);
        assert_eq!(v["verdict"], false);
        assert_eq!(v["outputs"]["rows"], 1);
        assert_eq!(v["outputs"]["cols"], 0);
    }

    #[test]
    fn gls_witness_key() {
        let v = json(&["check", "gls", "[1,2]+[0,1]", "--certify"]);
        assert_eq!(v["verdict"], true);
        assert_eq!(v["certified"], true);
        let w = v["witness"].as_object().unwrap();
        assert_eq!(w.keys().collect::<Vec<_>>(), vec!["(2,1)"]);
    }

    #[test]
    fn field_order() {
        let out = run_args(&["--format", "json", "ladder", "[1,2]+[0,1]"]);
        let keys = [
            "command",
            "inputs",
            "verdict",
            "certified",
            "trials",
            "false_verdict_bound",
            "witness",
            "prime",
            "seed",
            "outputs",
        ];
        let pos: Vec<usize> = keys.iter().map(|k| out.stdout.find(&format!("\"{k}\"")).unwrap()).collect();
        assert!(pos.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_args(&["mw", "[1,2"]).code, EXIT_PARSE);
        assert!(run_args(&["mw", "[1,2"]).stdout.is_empty());
        assert_eq!(run_args(&["mw", "[3,1]"]).code, EXIT_PARSE);
        assert_eq!(run_args(&["--prime", "15", "check", "gls", "[0,0]"]).code, EXIT_PARSE);
        assert_eq!(run_args(&["bogus"]).code, EXIT_PARSE);
        let li = run_args(&["check", "li", "[1,2]+[-1,1]+[0,0]+[-2,-1]", "[1,2]+[-1,1]+[0,0]+[-2,-1]"]);
        assert_eq!(li.code, EXIT_INTERNAL);
        assert!(li.stderr.contains("not applicable"));
        assert_eq!(run_args(&["--exit-code-verdict", "check", "lc", "[0,0]", "[1,1]"]).code, EXIT_FALSE);
        assert_eq!(run_args(&["--exit-code-verdict", "check", "lc", "[1,1]", "[0,0]"]).code, EXIT_OK);
        assert_eq!(run_args(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn derivative_and_reduce() {
        let v = json(&["derivative", "--rho", "0", "[0,2]+[1,1]"]);
        assert_eq!(v["outputs"]["mu"], 1);
        assert_eq!(v["outputs"]["derivative"], "[1,2]+[1,1]");
        let v = json(&["derivative", "--rho", "-1", "[0,0]"]);
        assert_eq!(v["outputs"]["rho"], "-1");
        let v = json(&["reduce", "[1,2]+[0,1]"]);
        assert_eq!(v["outputs"]["reduced"], "[1,1]+[0,0]");
        assert_eq!(v["outputs"]["delta"], "[1,2]");
        let v = json(&["reduce", "0"]);
        assert_eq!(v["outputs"]["delta"], Value::Null);
    }

    #[test]
    fn li_routes() {
        let v = json(&["check", "li", "[1,2]", "[0,1]"]);
        assert_eq!(v["verdict"], true);
        assert_eq!(v["outputs"]["route"], "direct");
        let v = json(&["check", "li", "[1,2]+[-1,1]+[0,0]+[-2,-1]", "[0,0]"]);
        assert_eq!(v["outputs"]["route"], "dual");
    }

    #[test]
    fn small_suite() {
        let v = json(&["suite", "rhoext", "--instances", "20", "--seed", "3"]);
        assert_eq!(v["verdict"], true);
        assert_eq!(v["outputs"]["reports"][0]["name"], "rhoext");
        assert_eq!(v["outputs"]["reports"][0]["gen"]["seed"], 3);
        assert_eq!(run_args(&["suite", "nope"]).code, EXIT_PARSE);
    }
}
