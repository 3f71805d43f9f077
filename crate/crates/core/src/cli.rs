//! Command-line front end.
//!
//! Probe settings resolve in order: built-in defaults, then the `--config`
//! file, then explicit flags. Suite seeds resolve as: `--seed`, then
//! `SUBORDLAB_SEED`, then [`DEFAULT_SEED`].

use std::fs;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;

use crate::disk::{boundary_curve, subordination_check, ProbeConfig};
use crate::dsl::{parse_complex, parse_function_spec, FunctionSpec};
use crate::error::{Error, Result};
use crate::harness::{
    self, verify_linear_dominant, verify_log_dominant, verify_robertson_corollary, verify_sandwich,
    verify_spirallike_corollary, verify_superordination, SuiteSummary, TheoremRun,
};
use crate::lemmas::{
    family_floor_check, halfplane_check, linear_dominant_admissibility, log_dominant_admissibility,
    moebius_convexity_threshold, nonvanishing_check, royster_region, LemmaReport,
};
use crate::operators::{class_membership, operator_series, ClassKind, ClassParams, OperatorParams};
use crate::report::{curve_csv, exit_code, Json, RunReport, Verdict};
use crate::zoo::{make_binomial_power, DominantSpec};

pub const DEFAULT_SEED: u64 = 20_240_601;
pub const SEED_ENV: &str = "SUBORDLAB_SEED";

#[derive(Parser, Debug)]
#[command(name = "subordlab", version, about = "Numerical checks for differential subordination on p-valent functions")]
struct Cli {
    /// Flat key=value file overriding probe defaults (radii, n_theta, tol, order)
    #[arg(long, global = true)]
    config: Option<String>,
    /// Comma-separated probe radii
    #[arg(long, global = true)]
    radii: Option<String>,
    #[arg(long, global = true)]
    n_theta: Option<usize>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Series truncation order
    #[arg(long, global = true)]
    order: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide g ≺ h on the probe ladder
    CheckSubordination {
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
        /// Write the traced boundary image of h as theta,re,im CSV
        #[arg(long)]
        dump_curve: Option<String>,
    },
    /// Run one of the lemma-level checks
    VerifyLemma(LemmaArgs),
    /// Run an implication check or a randomized suite
    VerifyTheorem(TheoremArgs),
    /// Membership in the spirallike or Robertson class
    ClassTest {
        #[arg(long)]
        f: String,
        #[arg(long, value_enum)]
        class: ClassArg,
        /// Spiral angle lambda, |lambda| < pi/2
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        angle: f64,
        #[arg(long, default_value_t = 0.0)]
        alpha: f64,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        b: String,
    },
    /// Taylor coefficients of F (or Psi) at the origin
    ExpandOperator {
        #[arg(long)]
        f: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        eta: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        mu: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        gamma: String,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        sigma: String,
        /// Expand sigma F + gamma z F' instead of F
        #[arg(long)]
        psi: bool,
    },
    /// Sweep a parameter grid
    RegionScan(ScanArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ClassArg {
    Spirallike,
    Robertson,
}

impl From<ClassArg> for ClassKind {
    fn from(c: ClassArg) -> Self {
        match c {
            ClassArg::Spirallike => ClassKind::Spirallike,
            ClassArg::Robertson => ClassKind::Robertson,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum LemmaName {
    /// Membership of --lam in |lam+1| <= 1 or |lam-1| <= 1
    Royster,
    /// Re(1 + zq''/q' - zq'/q) > 0 for a Moebius or binomial-power --q
    Floor,
    /// q has no zero in the disk
    Nonvanishing,
    /// Moebius convexity threshold for --b and --zeta
    Threshold,
    /// Re((u + vz)/(1 + Bz)) > 0 from --u, --v, --b
    Halfplane,
    /// Admissibility of --q for the log-derivative dominant with --gamma
    LogAdmissible,
    /// Admissibility of --q for the linear dominant with --sigma, --gamma
    LinearAdmissible,
}

#[derive(Args, Debug)]
struct LemmaArgs {
    #[arg(long, value_enum)]
    name: LemmaName,
    #[arg(long, allow_hyphen_values = true)]
    lam: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long, allow_negative_numbers = true)]
    b: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    zeta: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    u: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    v: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    sigma: String,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TheoremName {
    /// 1 + gamma[...] ≺ 1 + gamma zq'/q implies F ≺ q
    LogDominant,
    /// Psi ≺ sigma q + gamma zq' implies F ≺ q
    LinearDominant,
    /// sigma q + gamma zq' ≺ Psi implies q ≺ F
    Superordination,
    /// Two-sided version with --q1 and --q2
    Sandwich,
    /// Spirallike class gives (f/z^p)^a ≺ (1-z)^(-kappa)
    Spirallike,
    /// Robertson class gives (f'/(p z^(p-1)))^a ≺ (1-z)^(-kappa)
    Robertson,
    /// Seeded randomized suites for both dominant theorems
    Suite,
}

#[derive(Args, Debug)]
struct TheoremArgs {
    #[arg(long, value_enum)]
    theorem: TheoremName,
    #[arg(long)]
    f: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    q1: Option<String>,
    #[arg(long)]
    q2: Option<String>,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    eta: String,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    mu: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    gamma: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    sigma: String,
    /// Class exponent a
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    b: String,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    angle: f64,
    #[arg(long, default_value_t = 0.0)]
    alpha: f64,
    /// Runs per suite
    #[arg(long, default_value_t = 500)]
    runs: usize,
    #[arg(long)]
    seed: Option<u64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ScanKind {
    /// Royster membership over a lambda rectangle
    Royster,
    /// Binomial-power floor over a lambda rectangle at fixed --b
    Floor,
    /// Moebius convexity threshold over --b values and a Re zeta range
    Threshold,
}

#[derive(Args, Debug)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: ScanKind,
    #[arg(long, default_value_t = -2.0, allow_negative_numbers = true)]
    re_min: f64,
    #[arg(long, default_value_t = 2.0, allow_negative_numbers = true)]
    re_max: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    im_min: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    im_max: f64,
    /// Grid points per axis
    #[arg(long, default_value_t = 9)]
    steps: usize,
    /// Fixed B (floor) or comma-separated B list (threshold)
    #[arg(long, default_value = "0.5", allow_hyphen_values = true)]
    b: String,
}

/// Parses argv (including the program name), runs the command and returns the
/// exit code together with everything that would go to stdout.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> (i32, String) {
    let args: Vec<&str> = argv.iter().map(AsRef::as_ref).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            return (code, e.render().to_string());
        }
    };
    match dispatch(&cli) {
        Ok(reports) => {
            let code = exit_code(reports.iter().map(|r| r.verdict));
            let mut out = String::new();
            for r in &reports {
                out.push_str(&r.to_line());
                out.push('\n');
            }
            (code, out)
        }
        Err(e) => (3, format!("error: {e}\n")),
    }
}

/// Applies a flat `key=value` config text on top of `cfg`.
pub fn apply_config(cfg: &mut ProbeConfig, text: &str) -> Result<()> {
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line
            .split_once('=')
            .ok_or_else(|| Error::Usage(format!("config line {}: expected key=value", i + 1)))?;
        set_probe_key(cfg, k.trim(), v.trim()).map_err(|e| Error::Usage(format!("config line {}: {e}", i + 1)))?;
    }
    Ok(())
}

fn set_probe_key(cfg: &mut ProbeConfig, key: &str, value: &str) -> Result<()> {
    let bad = || Error::Usage(format!("invalid value '{value}' for {key}"));
    match key {
        "radii" => {
            cfg.radii = value
                .split(',')
                .map(|s| s.trim().parse::<f64>().map_err(|_| bad()))
                .collect::<Result<_>>()?
        }
        "n_theta" => cfg.n_theta = value.parse().map_err(|_| bad())?,
        "tol" => cfg.tol = value.parse().map_err(|_| bad())?,
        "order" => cfg.order = value.parse().map_err(|_| bad())?,
        _ => return Err(Error::Usage(format!("unknown config key '{key}'"))),
    }
    Ok(())
}

fn probe(cli: &Cli) -> Result<ProbeConfig> {
    let mut cfg = ProbeConfig::default();
    if let Some(path) = &cli.config {
        apply_config(&mut cfg, &fs::read_to_string(path)?)?;
    }
    if let Some(r) = &cli.radii {
        set_probe_key(&mut cfg, "radii", r)?;
    }
    if let Some(n) = cli.n_theta {
        cfg.n_theta = n;
    }
    if let Some(t) = cli.tol {
        cfg.tol = t;
    }
    if let Some(o) = cli.order {
        cfg.order = o;
    }
    cfg.validate()?;
    Ok(cfg)
}

/// `--seed`, else `SUBORDLAB_SEED`, else the default.
pub fn resolve_seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::Usage(format!("{SEED_ENV} must be an unsigned integer, got '{v}'"))),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn cx(name: &str, text: &str) -> Result<Complex<f64>> {
    parse_complex(text).map_err(|e| Error::Usage(format!("--{name}: {e}")))
}

fn required<'a>(name: &str, v: &'a Option<String>) -> Result<&'a str> {
    v.as_deref().ok_or_else(|| Error::Usage(format!("--{name} is required")))
}

fn spec(name: &str, text: &str) -> Result<FunctionSpec> {
    parse_function_spec(text).map_err(|e| Error::Usage(format!("--{name}: {e}")))
}

fn dispatch(cli: &Cli) -> Result<Vec<RunReport>> {
    let cfg = probe(cli)?;
    match &cli.command {
        Command::CheckSubordination { g, h, dump_curve } => {
            let gm = spec("g", g)?.build()?;
            let hm = spec("h", h)?.build()?;
            if let Some(path) = dump_curve {
                let hf = |z: Complex<f64>| hm.eval(z);
                let curve = boundary_curve(&hf, cfg.outer_radius(), cfg.n_theta)?;
                fs::write(path, curve_csv(&curve))?;
            }
            let v = subordination_check(gm.as_ref(), hm.as_ref(), &cfg);
            let mut r = RunReport::new("subordination", v.status.into(), v.margin, &cfg)
                .param("g", gm.descriptor())
                .param("h", hm.descriptor())
                .witness(v.witness);
            if let Some(reason) = v.reason {
                r = r.detail("reason", reason);
            }
            Ok(vec![r])
        }
        Command::VerifyLemma(a) => lemma(a, &cfg).map(|r| vec![r]),
        Command::VerifyTheorem(a) => theorem(a, &cfg),
        Command::ClassTest {
            f,
            class,
            angle,
            alpha,
            b,
        } => {
            let fm = spec("f", f)?.build_pvalent()?;
            let cls = ClassParams::new(fm_valence(&fm), *angle, *alpha, cx("b", b)?)?;
            let m = class_membership(&fm, &cls, (*class).into(), &cfg)?;
            Ok(vec![RunReport::new(
                format!("class:{}", class_label(*class)),
                m.status.into(),
                m.margin,
                &cfg,
            )
            .param("f", f.as_str())
            .param("angle", *angle)
            .param("alpha", *alpha)
            .param("b", cls.b)
            .detail("min_re", m.min_re)
            .detail("at", m.at)])
        }
        Command::ExpandOperator {
            f,
            eta,
            mu,
            gamma,
            sigma,
            psi,
        } => {
            let fm = spec("f", f)?.build_pvalent()?;
            let params = OperatorParams::new(fm_valence(&fm), cx("eta", eta)?, cx("mu", mu)?)
                .with_gamma(cx("gamma", gamma)?)
                .with_sigma(cx("sigma", sigma)?);
            params.validate()?;
            let mut s = operator_series(&fm, &params, cfg.order)?;
            if *psi {
                let zs = crate::series::Series::variable(cfg.order).mul(&s.derivative());
                s = s.scale(params.sigma).add(&zs.scale(params.gamma));
            }
            let coeffs: Vec<Json> = s.coeffs().iter().map(|c| Json::complex(*c)).collect();
            let first = s.coeff(1);
            Ok(vec![RunReport::new(if *psi { "expand:psi" } else { "expand:F" }, Verdict::Pass, f64::NAN, &cfg)
                .param("f", f.as_str())
                .param("eta", params.eta)
                .param("mu", params.mu)
                .param("gamma", params.gamma)
                .param("sigma", params.sigma)
                .detail("coefficients", Json::Arr(coeffs))
                .detail("z_coefficient", first)])
        }
        Command::RegionScan(a) => scan(a, &cfg),
    }
}

fn fm_valence(f: &crate::zoo::PValentMap<f64>) -> u32 {
    use crate::zoo::PValentAnalytic;
    f.valence()
}

fn class_label(c: ClassArg) -> &'static str {
    match c {
        ClassArg::Spirallike => "spirallike",
        ClassArg::Robertson => "robertson",
    }
}

fn lemma_report(r: LemmaReport, cfg: &ProbeConfig) -> RunReport {
    let mut out = RunReport::new(format!("lemma:{}", r.check), r.status.into(), r.margin, cfg).witness(r.witness);
    for (k, v) in r.values {
        out = out.detail(&k, v);
    }
    if !r.notes.is_empty() {
        out = out.detail("notes", r.notes);
    }
    out
}

fn lemma(a: &LemmaArgs, cfg: &ProbeConfig) -> Result<RunReport> {
    let gamma = cx("gamma", &a.gamma)?;
    let sigma = cx("sigma", &a.sigma)?;
    let q_map = || -> Result<Box<dyn crate::zoo::AnalyticMap<f64>>> { spec("q", required("q", &a.q)?)?.build() };
    Ok(match a.name {
        LemmaName::Royster => {
            let lam = cx("lam", required("lam", &a.lam)?)?;
            let member = royster_region(lam)?;
            let margin = 1.0 - (lam + 1.0).norm().min((lam - 1.0).norm());
            RunReport::new("lemma:royster", Verdict::from_bool(member), margin, cfg).param("lam", lam)
        }
        LemmaName::Floor => {
            let text = required("q", &a.q)?;
            let FunctionSpec::Dominant(d) = spec("q", text)? else {
                return Err(Error::Usage("--q must be a moebius or binpow spec".into()));
            };
            lemma_report(family_floor_check(&d, cfg)?, cfg).param("q", text)
        }
        LemmaName::Nonvanishing => {
            let q = q_map()?;
            lemma_report(nonvanishing_check(q.as_ref(), cfg)?, cfg).param("q", q.descriptor())
        }
        LemmaName::Threshold => {
            let b = a.b.ok_or_else(|| Error::Usage("--b is required".into()))?;
            let zeta = cx("zeta", required("zeta", &a.zeta)?)?;
            let t = moebius_convexity_threshold(b, zeta, cfg)?;
            let ok = t.inf_matches && t.equivalence != Some(false);
            let verdict = if !ok { Verdict::Fail } else { t.status.into() };
            RunReport::new("lemma:threshold", verdict, zeta.re - t.threshold, cfg)
                .param("b", b)
                .param("zeta", zeta)
                .detail("inf_re", t.inf_re)
                .detail("analytic_inf", t.analytic_inf)
                .detail("threshold", t.threshold)
                .detail("numeric_condition", t.numeric_condition.to_string())
                .detail("equivalence", t.equivalence)
                .detail("degenerate", t.degenerate)
        }
        LemmaName::Halfplane => {
            let b = a.b.ok_or_else(|| Error::Usage("--b is required".into()))?;
            let u = cx("u", required("u", &a.u)?)?;
            let v = cx("v", required("v", &a.v)?)?;
            lemma_report(halfplane_check(u, v, b, cfg)?, cfg)
                .param("u", u)
                .param("v", v)
                .param("b", b)
        }
        LemmaName::LogAdmissible => {
            let q = q_map()?;
            let r = log_dominant_admissibility(q.as_ref(), gamma, cfg)?;
            let mut out = RunReport::new("lemma:log_admissible", r.status.into(), r.margin, cfg)
                .param("q", q.descriptor())
                .param("gamma", gamma);
            for (k, v) in r.values {
                out = out.detail(&k, v);
            }
            out
        }
        LemmaName::LinearAdmissible => {
            let q = q_map()?;
            let r = linear_dominant_admissibility(q.as_ref(), sigma, gamma, cfg)?;
            let mut out = RunReport::new("lemma:linear_admissible", r.status.into(), r.margin, cfg)
                .param("q", q.descriptor())
                .param("sigma", sigma)
                .param("gamma", gamma);
            for (k, v) in r.values {
                out = out.detail(&k, v);
            }
            out
        }
    })
}

/// Flattens a theorem run into a report.
pub fn theorem_report(run: &TheoremRun) -> RunReport {
    let mut r = RunReport::new(format!("theorem:{}", run.theorem), run.status().into(), run.margin(), &run.probe)
        .param("function", run.function.as_str())
        .param("dominants", run.dominants.clone())
        .witness(run.counterexample)
        .detail("outcome", run.outcome.label());
    if let Some(p) = &run.params {
        r = r
            .param("p", p.p)
            .param("eta", p.eta)
            .param("mu", p.mu)
            .param("gamma", p.gamma)
            .param("sigma", p.sigma);
    }
    if let Some(c) = &run.class {
        r = r
            .param("p", c.p)
            .param("angle", c.spiral_angle)
            .param("alpha", c.alpha)
            .param("b", c.b);
    }
    if let Some(a) = run.exponent {
        r = r.param("a", a);
    }
    let checks = |list: &[harness::CheckRecord]| -> Json {
        Json::Arr(
            list.iter()
                .map(|c| {
                    Json::obj()
                        .with("name", c.name.as_str())
                        .with("status", c.status.to_string())
                        .with("margin", c.margin)
                        .with("reason", c.reason.clone())
                })
                .collect(),
        )
    };
    r = r
        .detail("hypotheses", checks(&run.hypotheses))
        .detail("conclusions", checks(&run.conclusions));
    if !run.assumptions.is_empty() {
        r = r.detail("assumptions", run.assumptions.clone());
    }
    r
}

/// Summary line for a randomized suite.
pub fn suite_report(s: &SuiteSummary, cfg: &ProbeConfig) -> RunReport {
    let mut r = RunReport::new(format!("suite:{}", s.theorem), s.status().into(), s.min_margin, cfg)
        .seed(s.seed)
        .param("runs", s.runs)
        .detail("confirmed", s.confirmed)
        .detail("vacuous", s.vacuous)
        .detail("inconclusive", s.inconclusive)
        .detail("counterexamples", s.counterexamples)
        .detail("non_vacuous", s.non_vacuous)
        .detail("non_vacuous_fraction", s.non_vacuous_fraction());
    if let Some(run) = &s.aborted {
        r = r.witness(run.counterexample).detail("aborted_run", run.dump());
    }
    r
}

fn theorem(a: &TheoremArgs, cfg: &ProbeConfig) -> Result<Vec<RunReport>> {
    if let TheoremName::Suite = a.theorem {
        let seed = resolve_seed(a.seed)?;
        let log = harness::log_dominant_suite(a.runs, seed, cfg);
        let lin = harness::linear_dominant_suite(a.runs, seed, cfg);
        return Ok(vec![suite_report(&log, cfg), suite_report(&lin, cfg)]);
    }
    let f = spec("f", required("f", &a.f)?)?.build_pvalent()?;
    let p = fm_valence(&f);
    let params = OperatorParams::new(p, cx("eta", &a.eta)?, cx("mu", &a.mu)?)
        .with_gamma(cx("gamma", &a.gamma)?)
        .with_sigma(cx("sigma", &a.sigma)?);
    let q = || -> Result<Box<dyn crate::zoo::AnalyticMap<f64>>> { spec("q", required("q", &a.q)?)?.build() };
    let class = || ClassParams::new(p, a.angle, a.alpha, cx("b", &a.b)?);
    let run = match a.theorem {
        TheoremName::LogDominant => verify_log_dominant(&f, &params, q()?.as_ref(), cfg),
        TheoremName::LinearDominant => verify_linear_dominant(&f, &params, q()?.as_ref(), cfg),
        TheoremName::Superordination => verify_superordination(&f, &params, q()?.as_ref(), cfg),
        TheoremName::Sandwich => {
            let q1 = spec("q1", required("q1", &a.q1)?)?.build()?;
            let q2 = spec("q2", required("q2", &a.q2)?)?.build()?;
            verify_sandwich(&f, &params, q1.as_ref(), q2.as_ref(), cfg)
        }
        TheoremName::Spirallike => verify_spirallike_corollary(&f, &class()?, cx("a", &a.a)?, cfg),
        TheoremName::Robertson => verify_robertson_corollary(&f, &class()?, cx("a", &a.a)?, cfg),
        TheoremName::Suite => unreachable!(),
    };
    Ok(vec![theorem_report(&run)])
}

fn grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    if n <= 1 || lo == hi {
        return vec![lo];
    }
    (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect()
}

fn scan(a: &ScanArgs, cfg: &ProbeConfig) -> Result<Vec<RunReport>> {
    if a.steps == 0 || a.steps > 1000 {
        return Err(Error::Usage("--steps must be in 1..=1000".into()));
    }
    let mut out = Vec::new();
    match a.kind {
        ScanKind::Royster | ScanKind::Floor => {
            let b: f64 = a.b.parse().map_err(|_| Error::Usage(format!("--b: invalid real '{}'", a.b)))?;
            for im in grid(a.im_min, a.im_max, a.steps) {
                for re in grid(a.re_min, a.re_max, a.steps) {
                    let lam = Complex::new(re, im);
                    if lam.norm() == 0.0 {
                        continue;
                    }
                    let member = royster_region(lam)?;
                    out.push(match a.kind {
                        ScanKind::Royster => {
                            let margin = 1.0 - (lam + 1.0).norm().min((lam - 1.0).norm());
                            RunReport::new("scan:royster", Verdict::from_bool(member), margin, cfg).param("lam", lam)
                        }
                        _ => {
                            let spec = DominantSpec::BinomialPower { b, lambda: lam };
                            make_binomial_power(b, lam)?;
                            let mut r = lemma_report(family_floor_check(&spec, cfg)?, cfg)
                                .param("b", b)
                                .param("lam", lam)
                                .detail("royster_member", member);
                            r.check = "scan:floor".into();
                            r
                        }
                    });
                }
            }
        }
        ScanKind::Threshold => {
            let bs: Vec<f64> = a
                .b
                .split(',')
                .map(|s| s.trim().parse().map_err(|_| Error::Usage(format!("--b: invalid real '{s}'"))))
                .collect::<Result<_>>()?;
            for b in bs {
                for re in grid(a.re_min, a.re_max, a.steps) {
                    let zeta = Complex::new(re, 0.0);
                    let t = moebius_convexity_threshold(b, zeta, cfg)?;
                    let verdict = match t.equivalence {
                        Some(true) => Verdict::Pass,
                        Some(false) => Verdict::Fail,
                        None => Verdict::Inconclusive,
                    };
                    out.push(
                        RunReport::new("scan:threshold", verdict, re - t.threshold, cfg)
                            .param("b", b)
                            .param("zeta", zeta)
                            .detail("side", t.status.to_string())
                            .detail("numeric_condition", t.numeric_condition.to_string()),
                    );
                }
            }
        }
    }
    Ok(out)
}
