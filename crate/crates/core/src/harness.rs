//! End-to-end implication testing of the subordination / superordination
//! theorems on concrete and randomly generated p-valent functions.
//!
//! A theorem is a conditional: a run counts against it only when every
//! hypothesis holds with positive margin and the conclusion fails. Runs with a
//! failing hypothesis are vacuous.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::disk::{convex_check, univalence_check, PreparedDominant, ProbeConfig, Status, SubordinationVerdict, Univalence, Witness};
use crate::error::Result;
use crate::lemmas::{linear_dominant_admissibility, log_dominant_admissibility};
use crate::operators::{
    class_membership, f_op, linear_dominant_rhs, log_derivative_lhs, psi_op, ClassKind, ClassParams,
    OperatorMap, OperatorParams, PsiMap,
};
use crate::scalar::principal_pow;
use crate::series::Series;
use crate::zoo::{make_pvalent, make_spiral_power, AnalyticMap, DominantSpec, PValentAnalytic, PValentSpec};

type C = Complex<f64>;

/// Default probe for theorem runs: the standard ladder with 1024 samples per circle.
pub fn theorem_probe() -> ProbeConfig {
    ProbeConfig::default().with_n_theta(1024)
}

/// Final classification of a run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// Hypotheses hold and the conclusion holds.
    Confirmed,
    /// Some hypothesis fails; the theorem asserts nothing.
    Vacuous,
    Inconclusive,
    /// Hypotheses hold with margin and the conclusion fails.
    Counterexample,
}

impl Outcome {
    pub fn label(&self) -> &'static str {
        match self {
            Outcome::Confirmed => "confirmed",
            Outcome::Vacuous => "vacuous",
            Outcome::Inconclusive => "inconclusive",
            Outcome::Counterexample => "counterexample",
        }
    }

    pub fn status(&self) -> Status {
        match self {
            Outcome::Confirmed => Status::Holds,
            Outcome::Counterexample => Status::Fails,
            Outcome::Vacuous | Outcome::Inconclusive => Status::Inconclusive,
        }
    }
}

/// One hypothesis or conclusion check inside a run.
#[derive(Clone, Debug, PartialEq)]
pub struct CheckRecord {
    pub name: String,
    pub status: Status,
    pub margin: f64,
    pub witness: Option<Witness<f64>>,
    pub reason: Option<String>,
}

impl CheckRecord {
    fn new(name: &str, status: Status, margin: f64) -> Self {
        Self {
            name: name.to_string(),
            status,
            margin,
            witness: None,
            reason: None,
        }
    }

    fn because(mut self, reason: impl Into<String>) -> Self {
        self.reason = Some(reason.into());
        self
    }

    fn from_verdict(name: &str, v: &SubordinationVerdict<f64>) -> Self {
        Self {
            name: name.to_string(),
            status: v.status,
            margin: v.margin,
            witness: v.witness,
            reason: v.reason.clone(),
        }
    }

    fn from_result<E: std::fmt::Display>(name: &str, r: std::result::Result<Self, E>) -> Self {
        r.unwrap_or_else(|e| CheckRecord::new(name, Status::Inconclusive, f64::NAN).because(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TheoremRun {
    pub theorem: &'static str,
    pub function: String,
    pub params: Option<OperatorParams<f64>>,
    pub class: Option<ClassParams<f64>>,
    /// Exponent `a` of the class corollaries.
    pub exponent: Option<C>,
    pub dominants: Vec<String>,
    pub probe: ProbeConfig,
    pub hypotheses: Vec<CheckRecord>,
    pub conclusions: Vec<CheckRecord>,
    pub outcome: Outcome,
    pub counterexample: Option<Witness<f64>>,
    /// Hypotheses taken on trust rather than checked.
    pub assumptions: Vec<String>,
}

impl TheoremRun {
    pub fn status(&self) -> Status {
        self.outcome.status()
    }

    /// Smallest conclusion margin, NaN when no conclusion was evaluated.
    pub fn margin(&self) -> f64 {
        self.conclusions.iter().map(|c| c.margin).fold(f64::NAN, f64::min)
    }

    pub fn hypotheses_hold(&self) -> bool {
        self.hypotheses.iter().all(|h| h.status == Status::Holds)
    }

    /// Multi-line dump of every check.
    pub fn dump(&self) -> String {
        let mut s = format!(
            "theorem={} outcome={} function={} dominants=[{}]\n",
            self.theorem,
            self.outcome.label(),
            self.function,
            self.dominants.join(", ")
        );
        if let Some(p) = &self.params {
            s.push_str(&format!(
                "  params p={} eta={} mu={} gamma={} sigma={}\n",
                p.p, p.eta, p.mu, p.gamma, p.sigma
            ));
        }
        for (kind, list) in [("hypothesis", &self.hypotheses), ("conclusion", &self.conclusions)] {
            for c in list {
                s.push_str(&format!("  {kind} {}: {} margin={:e}", c.name, c.status, c.margin));
                if let Some(w) = c.witness {
                    s.push_str(&format!(" witness z={} value={}", w.z, w.value));
                }
                if let Some(r) = &c.reason {
                    s.push_str(&format!(" ({r})"));
                }
                s.push('\n');
            }
        }
        for a in &self.assumptions {
            s.push_str(&format!("  assumption: {a}\n"));
        }
        s
    }
}

struct RunBuilder {
    run: TheoremRun,
}

impl RunBuilder {
    fn new(theorem: &'static str, function: String, probe: &ProbeConfig) -> Self {
        Self {
            run: TheoremRun {
                theorem,
                function,
                params: None,
                class: None,
                exponent: None,
                dominants: Vec::new(),
                probe: probe.clone(),
                hypotheses: Vec::new(),
                conclusions: Vec::new(),
                outcome: Outcome::Inconclusive,
                counterexample: None,
                assumptions: Vec::new(),
            },
        }
    }

    fn hyp(&mut self, c: CheckRecord) {
        self.run.hypotheses.push(c);
    }

    /// Classifies from the hypotheses, evaluating conclusions only when all hold.
    fn finish(mut self, conclusions: impl FnOnce() -> Vec<CheckRecord>) -> TheoremRun {
        let hs: Vec<Status> = self.run.hypotheses.iter().map(|h| h.status).collect();
        if hs.contains(&Status::Fails) {
            self.run.outcome = Outcome::Vacuous;
            return self.run;
        }
        if hs.contains(&Status::Inconclusive) {
            self.run.outcome = Outcome::Inconclusive;
            return self.run;
        }
        self.run.conclusions = conclusions();
        let failing = self.run.conclusions.iter().find(|c| c.status == Status::Fails);
        self.run.outcome = if let Some(c) = failing {
            self.run.counterexample = c.witness;
            Outcome::Counterexample
        } else if self.run.conclusions.iter().all(|c| c.status == Status::Holds) {
            Outcome::Confirmed
        } else {
            Outcome::Inconclusive
        };
        self.run
    }
}

fn univalence_record(name: &str, u: &Univalence<f64>) -> CheckRecord {
    let status = match u {
        Univalence::Certified(_) | Univalence::CertifiedNumerically => Status::Holds,
        Univalence::Refuted { .. } => Status::Fails,
        Univalence::Unknown(_) => Status::Inconclusive,
    };
    let mut c = CheckRecord::new(name, status, f64::NAN).because(match u {
        Univalence::Certified(why) => why.clone(),
        Univalence::CertifiedNumerically => "boundary image is a simple curve".into(),
        Univalence::Refuted { z1, z2, .. } => format!("equal values at {z1} and {z2}"),
        Univalence::Unknown(why) => why.clone(),
    });
    if let Univalence::Refuted { z1, w1, .. } = u {
        c.witness = Some(Witness { z: *z1, value: *w1 });
    }
    c
}

fn normalized_at_origin(name: &str, q: &dyn AnalyticMap<f64>, target: C, tol: f64) -> CheckRecord {
    let gap = (q.eval(C::new(0.0, 0.0)) - target).norm();
    CheckRecord::new(name, if gap <= tol { Status::Holds } else { Status::Fails }, -gap)
}

/// `|F| > tol` and finite on the ladder.
fn operator_nonvanishing(f: &dyn PValentAnalytic<f64>, params: &OperatorParams<f64>, cfg: &ProbeConfig) -> CheckRecord {
    let mut min = f64::INFINITY;
    for &r in &cfg.radii {
        for (_, z) in crate::disk::circle_samples(r, cfg.n_theta) {
            match f_op(f, params, z) {
                Ok(v) if v.re.is_finite() && v.im.is_finite() => min = min.min(v.norm()),
                Ok(_) => return CheckRecord::new("F nonvanishing", Status::Inconclusive, f64::NAN).because("non-finite F"),
                Err(e) => {
                    return CheckRecord::new("F nonvanishing", Status::Fails, f64::NAN)
                        .because(format!("F undefined at {z}: {e}"))
                }
            }
        }
    }
    CheckRecord::new("F nonvanishing", Status::from_margin(min, cfg.tol), min)
}

// ---------------------------------------------------------------------------
// 1 + gamma [...] ≺ 1 + gamma z q'/q  =>  F ≺ q

/// `1 + gamma z q'/q` as a map.
pub struct LogRhsMap<'a> {
    q: &'a dyn AnalyticMap<f64>,
    gamma: C,
}

impl<'a> LogRhsMap<'a> {
    pub fn new(q: &'a dyn AnalyticMap<f64>, gamma: C) -> Self {
        Self { q, gamma }
    }
}

impl AnalyticMap<f64> for LogRhsMap<'_> {
    fn eval(&self, z: C) -> C {
        self.gamma * z * self.q.d1(z) / self.q.eval(z) + 1.0
    }
    fn d1(&self, z: C) -> C {
        let (v, d1, d2) = (self.q.eval(z), self.q.d1(z), self.q.d2(z));
        self.gamma * ((d1 + z * d2) / v - z * d1 * d1 / (v * v))
    }
    fn d2(&self, z: C) -> C {
        let h = 1e-4;
        (self.d1(z + h) - self.d1(z - h)) / (2.0 * h)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<f64>> {
        let s = self.q.series_at_origin(order)?;
        let l = Series::variable(order).mul(&s.derivative()).div(&s)?;
        Ok(l.scale(self.gamma).add(&Series::one(order)))
    }
    fn descriptor(&self) -> String {
        format!("1+gamma*z*q'/q for {}", self.q.descriptor())
    }
}

/// `sigma q + gamma z q'` as a map.
pub struct LinearRhsMap<'a> {
    q: &'a dyn AnalyticMap<f64>,
    sigma: C,
    gamma: C,
}

impl<'a> LinearRhsMap<'a> {
    pub fn new(q: &'a dyn AnalyticMap<f64>, sigma: C, gamma: C) -> Self {
        Self { q, sigma, gamma }
    }
}

impl AnalyticMap<f64> for LinearRhsMap<'_> {
    fn eval(&self, z: C) -> C {
        linear_dominant_rhs(self.q, self.sigma, self.gamma, z)
    }
    fn d1(&self, z: C) -> C {
        (self.sigma + self.gamma) * self.q.d1(z) + self.gamma * z * self.q.d2(z)
    }
    fn d2(&self, z: C) -> C {
        let h = 1e-4;
        (self.d1(z + h) - self.d1(z - h)) / (2.0 * h)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<f64>> {
        let s = self.q.series_at_origin(order)?;
        let zs = Series::variable(order).mul(&s.derivative());
        Ok(s.scale(self.sigma).add(&zs.scale(self.gamma)))
    }
    fn descriptor(&self) -> String {
        format!("sigma*q+gamma*z*q' for {}", self.q.descriptor())
    }
}

/// Per-dominant state shared by many runs: the `f`-independent hypotheses
/// and the traced image curves.
pub struct LogDominantContext<'a> {
    gamma: C,
    cfg: ProbeConfig,
    dominants: Vec<String>,
    fixed: Vec<CheckRecord>,
    rhs: PreparedDominant<'a, f64>,
    target: PreparedDominant<'a, f64>,
}

impl<'a> LogDominantContext<'a> {
    pub fn new(q: &'a dyn AnalyticMap<f64>, rhs: &'a LogRhsMap<'a>, cfg: &ProbeConfig) -> Self {
        let gamma = rhs.gamma;
        let qu = univalence_check(q, cfg);
        let mut fixed = vec![
            univalence_record("q univalent", &qu),
            normalized_at_origin("q(0) = 1", q, C::new(1.0, 0.0), cfg.tol),
        ];
        let adm = CheckRecord::from_result(
            "q admissible",
            log_dominant_admissibility(q, gamma, cfg).map(|r| {
                CheckRecord::new("q admissible", r.status, r.margin).because("Q = gamma z q'/q starlike, Re(zh'/Q) > 0")
            }),
        );
        let admissible = adm.status == Status::Holds;
        fixed.push(adm);
        // h = 1 + Q with Q starlike is univalent
        let rhs_univalence = if admissible {
            Univalence::Certified("1 + Q with Q starlike".into())
        } else {
            Univalence::Unknown("admissibility not established".into())
        };
        Self {
            gamma,
            cfg: cfg.clone(),
            dominants: vec![q.descriptor()],
            fixed,
            rhs: PreparedDominant::with_univalence(rhs, cfg, rhs_univalence),
            target: PreparedDominant::with_univalence(q, cfg, qu),
        }
    }

    pub fn run(&self, f: &dyn PValentAnalytic<f64>, params: &OperatorParams<f64>) -> TheoremRun {
        let mut b = RunBuilder::new("log_dominant", f.descriptor(), &self.cfg);
        b.run.params = Some(*params);
        b.run.dominants = self.dominants.clone();
        for h in &self.fixed {
            b.hyp(h.clone());
        }
        if params.gamma != self.gamma || params.validate_with_gamma().is_err() {
            b.hyp(CheckRecord::new("parameters", Status::Fails, f64::NAN).because("gamma mismatch or invalid parameters"));
            return b.finish(Vec::new);
        }
        if f.valence() != params.p {
            b.hyp(CheckRecord::new("parameters", Status::Fails, f64::NAN).because("valence mismatch"));
            return b.finish(Vec::new);
        }
        let nz = operator_nonvanishing(f, params, &self.cfg);
        let defined = nz.status == Status::Holds;
        b.hyp(nz);
        if defined {
            let lhs = |z: C| log_derivative_lhs(f, params, z).unwrap_or(C::new(f64::NAN, f64::NAN));
            b.hyp(CheckRecord::from_verdict("1+gamma*zF'/F ≺ 1+gamma*zq'/q", &self.rhs.check(&lhs)));
        }
        b.finish(|| {
            let big_f = |z: C| f_op(f, params, z).unwrap_or(C::new(f64::NAN, f64::NAN));
            vec![CheckRecord::from_verdict("F ≺ q", &self.target.check(&big_f))]
        })
    }
}

/// `1 + gamma [eta(1-p+zf''/f') + mu(p-zf'/f)] ≺ 1 + gamma z q'/q` implies `F[f] ≺ q`.
pub fn verify_log_dominant(
    f: &dyn PValentAnalytic<f64>,
    params: &OperatorParams<f64>,
    q: &dyn AnalyticMap<f64>,
    cfg: &ProbeConfig,
) -> TheoremRun {
    let rhs = LogRhsMap::new(q, params.gamma);
    LogDominantContext::new(q, &rhs, cfg).run(f, params)
}

// ---------------------------------------------------------------------------
// Psi ≺ sigma q + gamma z q'  =>  F ≺ q

pub struct LinearDominantContext<'a> {
    sigma: C,
    gamma: C,
    cfg: ProbeConfig,
    dominants: Vec<String>,
    fixed: Vec<CheckRecord>,
    rhs: PreparedDominant<'a, f64>,
    target: PreparedDominant<'a, f64>,
}

impl<'a> LinearDominantContext<'a> {
    pub fn new(q: &'a dyn AnalyticMap<f64>, rhs: &'a LinearRhsMap<'a>, cfg: &ProbeConfig) -> Self {
        let (sigma, gamma) = (rhs.sigma, rhs.gamma);
        let qu = univalence_check(q, cfg);
        let mut fixed = vec![
            univalence_record("q univalent", &qu),
            normalized_at_origin("q(0) = 1", q, C::new(1.0, 0.0), cfg.tol),
        ];
        let adm = CheckRecord::from_result(
            "q admissible",
            linear_dominant_admissibility(q, sigma, gamma, cfg).map(|r| {
                CheckRecord::new("q admissible", r.status, r.margin)
                    .because("Re(1 + zq''/q') > max(0, -Re(sigma/gamma))")
            }),
        );
        let admissible = adm.status == Status::Holds;
        fixed.push(adm);
        // z h'/Q = sigma/gamma + 1 + z q''/q' with Q = gamma z q' starlike: h is close-to-convex
        let rhs_univalence = if admissible {
            Univalence::Certified("close-to-convex: Q starlike and Re(zh'/Q) > 0".into())
        } else {
            Univalence::Unknown("admissibility not established".into())
        };
        Self {
            sigma,
            gamma,
            cfg: cfg.clone(),
            dominants: vec![q.descriptor()],
            fixed,
            rhs: PreparedDominant::with_univalence(rhs, cfg, rhs_univalence),
            target: PreparedDominant::with_univalence(q, cfg, qu),
        }
    }

    pub fn run(&self, f: &dyn PValentAnalytic<f64>, params: &OperatorParams<f64>) -> TheoremRun {
        let mut b = RunBuilder::new("linear_dominant", f.descriptor(), &self.cfg);
        b.run.params = Some(*params);
        b.run.dominants = self.dominants.clone();
        for h in &self.fixed {
            b.hyp(h.clone());
        }
        if params.gamma != self.gamma
            || params.sigma != self.sigma
            || params.validate_with_gamma().is_err()
            || f.valence() != params.p
        {
            b.hyp(CheckRecord::new("parameters", Status::Fails, f64::NAN).because("parameter mismatch"));
            return b.finish(Vec::new);
        }
        let nz = operator_nonvanishing(f, params, &self.cfg);
        let defined = nz.status == Status::Holds;
        b.hyp(nz);
        if defined {
            let psi = |z: C| psi_op(f, params, z).unwrap_or(C::new(f64::NAN, f64::NAN));
            b.hyp(CheckRecord::from_verdict("Psi ≺ sigma*q+gamma*zq'", &self.rhs.check(&psi)));
        }
        b.finish(|| {
            let big_f = |z: C| f_op(f, params, z).unwrap_or(C::new(f64::NAN, f64::NAN));
            vec![CheckRecord::from_verdict("F ≺ q", &self.target.check(&big_f))]
        })
    }
}

/// `Psi ≺ sigma q + gamma z q'` implies `F[f] ≺ q`.
pub fn verify_linear_dominant(
    f: &dyn PValentAnalytic<f64>,
    params: &OperatorParams<f64>,
    q: &dyn AnalyticMap<f64>,
    cfg: &ProbeConfig,
) -> TheoremRun {
    let rhs = LinearRhsMap::new(q, params.sigma, params.gamma);
    LinearDominantContext::new(q, &rhs, cfg).run(f, params)
}

// ---------------------------------------------------------------------------
// Superordination and sandwich

const Q_ASSUMPTION: &str =
    "F in H[q(0),1] ∩ Q (injective with nonvanishing derivative on the closed disk minus an exceptional set) is assumed, not certified";

fn ratio_positive(params: &OperatorParams<f64>, tol: f64) -> CheckRecord {
    let r = (params.sigma / params.gamma).re;
    CheckRecord::new("Re(sigma/gamma) > 0", Status::from_margin(r, tol), r)
}

fn convex_record(name: &str, q: &dyn AnalyticMap<f64>, cfg: &ProbeConfig) -> CheckRecord {
    CheckRecord::from_result(
        name,
        convex_check(q, cfg).map(|s| CheckRecord::new(name, s.status, s.min)),
    )
}

/// `sigma q + gamma z q' ≺ Psi` implies `q ≺ F[f]`, for convex `q` with
/// `Re(sigma/gamma) > 0` and univalent `Psi`.
pub fn verify_superordination(
    f: &dyn PValentAnalytic<f64>,
    params: &OperatorParams<f64>,
    q: &dyn AnalyticMap<f64>,
    cfg: &ProbeConfig,
) -> TheoremRun {
    let mut b = RunBuilder::new("superordination", f.descriptor(), cfg);
    b.run.params = Some(*params);
    b.run.dominants = vec![q.descriptor()];
    b.run.assumptions.push(Q_ASSUMPTION.into());
    if params.validate_with_gamma().is_err() || f.valence() != params.p {
        b.hyp(CheckRecord::new("parameters", Status::Fails, f64::NAN).because("invalid parameters"));
        return b.finish(Vec::new);
    }
    b.hyp(convex_record("q convex", q, cfg));
    b.hyp(normalized_at_origin("q(0) = F(0)", q, C::new(1.0, 0.0), cfg.tol));
    b.hyp(ratio_positive(params, cfg.tol));
    let nz = operator_nonvanishing(f, params, cfg);
    let defined = nz.status == Status::Holds;
    b.hyp(nz);
    if !defined {
        return b.finish(Vec::new);
    }
    let psi = PsiMap::new(f, *params);
    let pu = univalence_check(&psi, cfg);
    let psi_ok = pu.is_univalent();
    b.hyp(univalence_record("Psi univalent", &pu));
    if psi_ok {
        let lin = LinearRhsMap::new(q, params.sigma, params.gamma);
        let pre = PreparedDominant::with_univalence(&psi, cfg, pu);
        b.hyp(CheckRecord::from_verdict("sigma*q+gamma*zq' ≺ Psi", &pre.check(&|z| lin.eval(z))));
    }
    b.finish(|| {
        let fm = OperatorMap::new(f, *params);
        let pre = PreparedDominant::new(&fm, cfg);
        vec![CheckRecord::from_verdict("q ≺ F", &pre.check(&|z| q.eval(z)))]
    })
}

/// `sigma q1 + gamma z q1' ≺ Psi ≺ sigma q2 + gamma z q2'` implies `q1 ≺ F ≺ q2`.
pub fn verify_sandwich(
    f: &dyn PValentAnalytic<f64>,
    params: &OperatorParams<f64>,
    q1: &dyn AnalyticMap<f64>,
    q2: &dyn AnalyticMap<f64>,
    cfg: &ProbeConfig,
) -> TheoremRun {
    let mut b = RunBuilder::new("sandwich", f.descriptor(), cfg);
    b.run.params = Some(*params);
    b.run.dominants = vec![q1.descriptor(), q2.descriptor()];
    b.run.assumptions.push(Q_ASSUMPTION.into());
    if params.validate_with_gamma().is_err() || f.valence() != params.p {
        b.hyp(CheckRecord::new("parameters", Status::Fails, f64::NAN).because("invalid parameters"));
        return b.finish(Vec::new);
    }
    b.hyp(convex_record("q1 convex", q1, cfg));
    let q2u = univalence_check(q2, cfg);
    b.hyp(univalence_record("q2 univalent", &q2u));
    b.hyp(normalized_at_origin("q1(0) = 1", q1, C::new(1.0, 0.0), cfg.tol));
    b.hyp(normalized_at_origin("q2(0) = 1", q2, C::new(1.0, 0.0), cfg.tol));
    let adm = CheckRecord::from_result(
        "q2 admissible",
        linear_dominant_admissibility(q2, params.sigma, params.gamma, cfg)
            .map(|r| CheckRecord::new("q2 admissible", r.status, r.margin)),
    );
    let q2_admissible = adm.status == Status::Holds;
    b.hyp(adm);
    b.hyp(ratio_positive(params, cfg.tol));
    // the chain can only hold when q1 ≺ q2
    let q2_pre = PreparedDominant::with_univalence(q2, cfg, q2u);
    b.hyp(CheckRecord::from_verdict("q1 ≺ q2", &q2_pre.check(&|z| q1.eval(z))));
    let nz = operator_nonvanishing(f, params, cfg);
    let defined = nz.status == Status::Holds;
    b.hyp(nz);
    if !defined {
        return b.finish(Vec::new);
    }
    let psi = PsiMap::new(f, *params);
    let pu = univalence_check(&psi, cfg);
    let psi_ok = pu.is_univalent();
    b.hyp(univalence_record("Psi univalent", &pu));
    let lin2 = LinearRhsMap::new(q2, params.sigma, params.gamma);
    if psi_ok {
        let lin1 = LinearRhsMap::new(q1, params.sigma, params.gamma);
        let pre = PreparedDominant::with_univalence(&psi, cfg, pu);
        b.hyp(CheckRecord::from_verdict("sigma*q1+gamma*zq1' ≺ Psi", &pre.check(&|z| lin1.eval(z))));
        let rhs_u = if q2_admissible {
            Univalence::Certified("close-to-convex".into())
        } else {
            Univalence::Unknown("q2 admissibility not established".into())
        };
        let pre2 = PreparedDominant::with_univalence(&lin2, cfg, rhs_u);
        let psi_eval = |z: C| psi.eval(z);
        b.hyp(CheckRecord::from_verdict("Psi ≺ sigma*q2+gamma*zq2'", &pre2.check(&psi_eval)));
    }
    b.finish(|| {
        let fm = OperatorMap::new(f, *params);
        let f_pre = PreparedDominant::new(&fm, cfg);
        let lower = CheckRecord::from_verdict("q1 ≺ F", &f_pre.check(&|z| q1.eval(z)));
        let upper = CheckRecord::from_verdict("F ≺ q2", &q2_pre.check(&|z| fm.eval(z)));
        vec![lower, upper]
    })
}

// ---------------------------------------------------------------------------
// Class corollaries

fn class_corollary(
    theorem: &'static str,
    which: ClassKind,
    f: &dyn PValentAnalytic<f64>,
    cls: &ClassParams<f64>,
    a: C,
    cfg: &ProbeConfig,
) -> TheoremRun {
    let mut b = RunBuilder::new(theorem, f.descriptor(), cfg);
    b.run.class = Some(*cls);
    b.run.exponent = Some(a);
    let member = CheckRecord::from_result(
        "class membership",
        class_membership(f, cls, which, cfg).map(|m| CheckRecord::new("class membership", m.status, m.margin)),
    );
    b.hyp(member);
    if a.norm() == 0.0 {
        b.hyp(CheckRecord::new("a nonzero", Status::Fails, 0.0));
        return b.finish(Vec::new);
    }
    let q = match make_spiral_power(cls.p, a, cls.b, cls.alpha, cls.spiral_angle) {
        Ok(q) => q,
        Err(e) => {
            b.hyp(CheckRecord::new("dominant", Status::Fails, f64::NAN).because(e.to_string()));
            return b.finish(Vec::new);
        }
    };
    b.run.dominants = vec![q.descriptor()];
    b.hyp(
        CheckRecord::new(
            "exponent in Royster region",
            if q.in_royster_region { Status::Holds } else { Status::Fails },
            f64::NAN,
        )
        .because(format!("exponent {}", q.kappa)),
    );
    b.finish(|| {
        let pre = PreparedDominant::new(&q, cfg);
        let g = |z: C| {
            let base = match which {
                ClassKind::Spirallike => f.quotient(z).0,
                ClassKind::Robertson => f.slope(z).0,
            };
            if z == C::new(0.0, 0.0) {
                C::new(1.0, 0.0)
            } else {
                principal_pow(base, a)
            }
        };
        let name = match which {
            ClassKind::Spirallike => "(f/z^p)^a ≺ (1-z)^(-kappa)",
            ClassKind::Robertson => "(f'/(p z^(p-1)))^a ≺ (1-z)^(-kappa)",
        };
        vec![CheckRecord::from_verdict(name, &pre.check(&g))]
    })
}

/// Spirallike membership implies `(f/z^p)^a ≺ (1-z)^{-2pab(1-alpha)e^{-i lambda}cos lambda}`.
pub fn verify_spirallike_corollary(
    f: &dyn PValentAnalytic<f64>,
    cls: &ClassParams<f64>,
    a: C,
    cfg: &ProbeConfig,
) -> TheoremRun {
    class_corollary("spirallike_corollary", ClassKind::Spirallike, f, cls, a, cfg)
}

/// Robertson membership implies `(f'/(p z^{p-1}))^a ≺ (1-z)^{-2pab(1-alpha)e^{-i lambda}cos lambda}`.
pub fn verify_robertson_corollary(
    f: &dyn PValentAnalytic<f64>,
    cls: &ClassParams<f64>,
    a: C,
    cfg: &ProbeConfig,
) -> TheoremRun {
    class_corollary("robertson_corollary", ClassKind::Robertson, f, cls, a, cfg)
}

// ---------------------------------------------------------------------------
// Seeded random suites

/// Random p-valent polynomial: tail length 1..=5, `a_k` uniform in the disk of radius `0.3/k^2`.
pub fn random_pvalent(rng: &mut ChaCha8Rng, p: u32) -> PValentSpec<f64> {
    let len = rng.gen_range(1..=5usize);
    let mut spec = PValentSpec::new(p);
    for j in 1..=len {
        let k = p as usize + j;
        spec = spec.with(k, random_disk(rng, 0.3 / (k * k) as f64));
    }
    spec
}

/// Uniform sample from the disk `|w| < r`.
pub fn random_disk(rng: &mut ChaCha8Rng, r: f64) -> C {
    C::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
}

#[derive(Clone, Debug, PartialEq)]
pub struct SuiteSummary {
    pub theorem: &'static str,
    pub seed: u64,
    pub runs: usize,
    pub confirmed: usize,
    pub vacuous: usize,
    pub inconclusive: usize,
    pub counterexamples: usize,
    /// Runs whose hypotheses all held.
    pub non_vacuous: usize,
    /// Smallest conclusion margin across confirmed runs.
    pub min_margin: f64,
    /// The run that stopped the suite, with its full record.
    pub aborted: Option<Box<TheoremRun>>,
}

impl SuiteSummary {
    fn new(theorem: &'static str, seed: u64) -> Self {
        Self {
            theorem,
            seed,
            runs: 0,
            confirmed: 0,
            vacuous: 0,
            inconclusive: 0,
            counterexamples: 0,
            non_vacuous: 0,
            min_margin: f64::INFINITY,
            aborted: None,
        }
    }

    /// Records a run; returns `false` when the suite must stop.
    fn add(&mut self, run: TheoremRun) -> bool {
        self.runs += 1;
        if run.hypotheses_hold() {
            self.non_vacuous += 1;
        }
        match run.outcome {
            Outcome::Confirmed => {
                self.confirmed += 1;
                self.min_margin = self.min_margin.min(run.margin());
            }
            Outcome::Vacuous => self.vacuous += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
            Outcome::Counterexample => {
                self.counterexamples += 1;
                self.aborted = Some(Box::new(run));
                return false;
            }
        }
        true
    }

    pub fn non_vacuous_fraction(&self) -> f64 {
        if self.runs == 0 {
            0.0
        } else {
            self.non_vacuous as f64 / self.runs as f64
        }
    }

    pub fn status(&self) -> Status {
        if self.counterexamples > 0 {
            Status::Fails
        } else if self.runs > 0 && self.confirmed + self.vacuous == self.runs {
            Status::Holds
        } else {
            Status::Inconclusive
        }
    }
}

fn log_groups() -> Vec<(DominantSpec<f64>, C)> {
    vec![
        (DominantSpec::Moebius { a: 1.0, b: -0.5 }, C::new(1.0, 0.0)),
        (DominantSpec::Moebius { a: 0.5, b: -0.5 }, C::new(0.5, 0.5)),
        (DominantSpec::BinomialPower { b: 0.5, lambda: C::new(1.5, 0.0) }, C::new(1.0, 0.0)),
        (DominantSpec::ExpLine { c: C::new(0.8, 0.0) }, C::new(0.7, -0.3)),
        (
            DominantSpec::SpiralPower {
                p: 1,
                a: C::new(0.5, 0.0),
                b: C::new(1.0, 0.0),
                alpha: 0.0,
                spiral_angle: 0.0,
            },
            C::new(1.0, 0.0),
        ),
    ]
}

fn linear_groups() -> Vec<(DominantSpec<f64>, C, C)> {
    let one = C::new(1.0, 0.0);
    vec![
        (DominantSpec::Moebius { a: 1.0, b: -0.5 }, one, one),
        (DominantSpec::Moebius { a: 0.5, b: -0.5 }, C::new(2.0, 0.0), C::new(1.0, 1.0)),
        (DominantSpec::ExpLine { c: C::new(0.8, 0.0) }, one, one),
        (DominantSpec::ExpLine { c: C::new(0.3, 0.4) }, C::new(0.5, 0.0), one),
        (DominantSpec::BinomialPower { b: 0.5, lambda: C::new(0.5, 0.0) }, C::new(0.5, 0.0), one),
    ]
}

fn random_params(rng: &mut ChaCha8Rng) -> (C, C) {
    loop {
        let eta = random_disk(rng, 1.0);
        let mu = random_disk(rng, 1.0);
        if eta.norm() + mu.norm() > 0.05 {
            return (eta, mu);
        }
    }
}

/// Randomized implication suite for `1 + gamma[...] ≺ 1 + gamma z q'/q => F ≺ q`.
pub fn log_dominant_suite(runs: usize, seed: u64, cfg: &ProbeConfig) -> SuiteSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SuiteSummary::new("log_dominant", seed);
    let groups = log_groups();
    let maps: Vec<Box<dyn AnalyticMap<f64>>> = groups.iter().map(|(d, _)| d.build().expect("suite dominant")).collect();
    let rhs: Vec<LogRhsMap> = maps.iter().zip(&groups).map(|(q, (_, g))| LogRhsMap::new(q.as_ref(), *g)).collect();
    let ctxs: Vec<LogDominantContext> = maps
        .iter()
        .zip(&rhs)
        .map(|(q, r)| LogDominantContext::new(q.as_ref(), r, cfg))
        .collect();
    for i in 0..runs {
        let g = i % groups.len();
        let p = rng.gen_range(1..=3u32);
        let spec = random_pvalent(&mut rng, p);
        let (eta, mu) = random_params(&mut rng);
        let params = OperatorParams::new(p, eta, mu).with_gamma(groups[g].1);
        let f = make_pvalent(&spec).expect("generated spec is valid");
        if !summary.add(ctxs[g].run(&f, &params)) {
            break;
        }
    }
    summary
}

/// Randomized implication suite for `Psi ≺ sigma q + gamma z q' => F ≺ q`.
pub fn linear_dominant_suite(runs: usize, seed: u64, cfg: &ProbeConfig) -> SuiteSummary {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut summary = SuiteSummary::new("linear_dominant", seed);
    let groups = linear_groups();
    let maps: Vec<Box<dyn AnalyticMap<f64>>> = groups.iter().map(|(d, ..)| d.build().expect("suite dominant")).collect();
    let rhs: Vec<LinearRhsMap> = maps
        .iter()
        .zip(&groups)
        .map(|(q, (_, s, g))| LinearRhsMap::new(q.as_ref(), *s, *g))
        .collect();
    let ctxs: Vec<LinearDominantContext> = maps
        .iter()
        .zip(&rhs)
        .map(|(q, r)| LinearDominantContext::new(q.as_ref(), r, cfg))
        .collect();
    for i in 0..runs {
        let g = i % groups.len();
        let p = rng.gen_range(1..=3u32);
        let spec = random_pvalent(&mut rng, p);
        let (eta, mu) = random_params(&mut rng);
        let params = OperatorParams::new(p, eta, mu).with_sigma(groups[g].1).with_gamma(groups[g].2);
        let f = make_pvalent(&spec).expect("generated spec is valid");
        if !summary.add(ctxs[g].run(&f, &params)) {
            break;
        }
    }
    summary
}

#[cfg(test)]
mod tests {
    use super::*;
    fn c(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }
    use crate::zoo::{make_binomial_power, make_exp_line, make_koebe_type, make_moebius, Polynomial};

    fn monomial(p: u32) -> crate::zoo::PValentMap<f64> {
        make_pvalent(&PValentSpec::new(p)).unwrap()
    }

    fn cfg() -> ProbeConfig {
        theorem_probe()
    }

    #[test]
    fn log_dominant_monomial_holds() {
        for p in 1..=3 {
            let f = monomial(p);
            let q = make_moebius(1.0, -0.5).unwrap();
            let prm = OperatorParams::new(p, c(0.4, 0.1), c(-0.3, 0.2));
            let run = verify_log_dominant(&f, &prm, &q, &cfg());
            assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
        }
    }

    #[test]
    fn log_dominant_sharp_koebe() {
        // F = f/z = (1-z)^{-2} = q
        let f = make_koebe_type(1, c(-2.0, 0.0)).unwrap();
        let prm = OperatorParams::new(1, c(0.0, 0.0), c(-1.0, 0.0));
        let q = make_binomial_power(-1.0, c(-2.0, 0.0)).unwrap();
        for z in [c(0.3, 0.4), c(-0.8, 0.1)] {
            assert!((f_op(&f, &prm, z).unwrap() - q.eval(z)).norm() < 1e-12);
        }
        let run = verify_log_dominant(&f, &prm, &q, &cfg());
        assert_ne!(run.outcome, Outcome::Counterexample, "{}", run.dump());
        assert_ne!(run.outcome, Outcome::Vacuous, "{}", run.dump());
        assert!(run.margin().abs() <= 1e-2 || run.margin().is_nan(), "{}", run.dump());
    }

    #[test]
    fn linear_dominant_monomial_and_broken_hypothesis() {
        let f = monomial(2);
        let q = make_exp_line(c(1.0, 0.0)).unwrap();
        let prm = OperatorParams::new(2, c(0.5, 0.0), c(0.5, 0.0));
        let run = verify_linear_dominant(&f, &prm, &q, &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
        // C = 2.5: admissibility fails, the run is vacuous rather than a counterexample
        let q = make_exp_line(c(2.5, 0.0)).unwrap();
        let f = make_pvalent(&PValentSpec::new(1).with(2, c(0.05, 0.0))).unwrap();
        let prm = OperatorParams::new(1, c(1.0, 0.0), c(0.0, 0.0));
        let run = verify_linear_dominant(&f, &prm, &q, &cfg());
        assert_eq!(run.outcome, Outcome::Vacuous, "{}", run.dump());
        assert!(run.counterexample.is_none());
    }

    #[test]
    fn linear_dominant_exp_instance() {
        let q = make_exp_line(c(1.0, 0.0)).unwrap();
        let f = make_pvalent(&PValentSpec::new(1).with(2, c(0.05, 0.02)).with(3, c(-0.01, 0.0))).unwrap();
        let prm = OperatorParams::new(1, c(0.6, 0.0), c(-0.4, 0.1));
        let run = verify_linear_dominant(&f, &prm, &q, &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
    }

    #[test]
    fn superordination_sanity_instance() {
        // f = z + z^2, eta = 0, mu = -1: F = 1 + z, Psi = 1 + 2z
        let f = make_pvalent(&PValentSpec::new(1).with(2, c(1.0, 0.0))).unwrap();
        let prm = OperatorParams::new(1, c(0.0, 0.0), c(-1.0, 0.0));
        let q = Polynomial::<f64>::from_real(&[1.0, 0.5]);
        let z = c(0.3, 0.2);
        assert!((f_op(&f, &prm, z).unwrap() - (1.0 + z)).norm() < 1e-14);
        assert!((psi_op(&f, &prm, z).unwrap() - (1.0 + 2.0 * z)).norm() < 1e-14);
        let run = verify_superordination(&f, &prm, &q, &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
        assert!(!run.assumptions.is_empty());
    }

    #[test]
    fn superordination_constant_psi_is_not_asserted() {
        let f = monomial(2);
        let prm = OperatorParams::new(2, c(1.0, 0.0), c(0.5, 0.0));
        let q = Polynomial::<f64>::from_real(&[1.0, 0.5]);
        let run = verify_superordination(&f, &prm, &q, &cfg());
        assert_eq!(run.status(), Status::Inconclusive, "{}", run.dump());
        assert_ne!(run.outcome, Outcome::Confirmed);
    }

    #[test]
    fn superordination_specialization_derivative_form() {
        // eta = 1, mu = 0, sigma = gamma = 1: Psi = (z f'/(p z^{p-1}))' and sigma q + gamma z q' = (z q)'
        let f = make_pvalent(&PValentSpec::new(2).with(3, c(0.1, 0.05)).with(4, c(0.02, 0.0))).unwrap();
        let prm = OperatorParams::new(2, c(1.0, 0.0), c(0.0, 0.0));
        let zf = |z: C| z * f.d1(z) / (2.0 * z);
        for z in [c(0.3, 0.1), c(-0.5, 0.4)] {
            let h = 1e-6;
            let deriv = (zf(z + h) - zf(z - h)) / (2.0 * h);
            assert!((psi_op(&f, &prm, z).unwrap() - deriv).norm() < 1e-8);
        }
        let q = make_moebius(0.5, -0.2).unwrap();
        let lin = LinearRhsMap::new(&q, c(1.0, 0.0), c(1.0, 0.0));
        let z = c(0.2, -0.3);
        let h = 1e-6;
        let deriv = ((z + h) * q.eval(z + h) - (z - h) * q.eval(z - h)) / (2.0 * h);
        assert!((lin.eval(z) - deriv).norm() < 1e-8);
    }

    #[test]
    fn sandwich_instances() {
        let q1 = Polynomial::<f64>::from_real(&[1.0, 0.25]);
        let q2 = make_moebius(1.0, -1.0).unwrap();
        let prm = OperatorParams::new(1, c(0.0, 0.0), c(-1.0, 0.0));
        // F = 1 + c z with |c| = 1/2
        for phase in [0.0, 1.0, 2.5] {
            let cc = C::from_polar(0.5, phase);
            let f = make_pvalent(&PValentSpec::new(1).with(2, cc)).unwrap();
            let run = verify_sandwich(&f, &prm, &q1, &q2, &cfg());
            assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
            assert_eq!(run.conclusions.len(), 2);
        }
        // constant F: the lower chain cannot hold
        let f = monomial(1);
        let run = verify_sandwich(&f, &prm, &q1, &q2, &cfg());
        assert_eq!(run.status(), Status::Inconclusive, "{}", run.dump());
        // swapped pair fails screening
        let f = make_pvalent(&PValentSpec::new(1).with(2, c(0.5, 0.0))).unwrap();
        let run = verify_sandwich(&f, &prm, &q2, &q1, &cfg());
        assert_eq!(run.outcome, Outcome::Vacuous, "{}", run.dump());
        assert!(run.hypotheses.iter().any(|h| h.name == "q1 ≺ q2" && h.status == Status::Fails));
    }

    #[test]
    fn spirallike_corollary_cases() {
        let cls = ClassParams::new(1, 0.0, 0.0, c(1.0, 0.0)).unwrap();
        let koebe = make_koebe_type(1, c(-2.0, 0.0)).unwrap();
        let run = verify_spirallike_corollary(&koebe, &cls, c(0.5, 0.0), &cfg());
        assert_ne!(run.outcome, Outcome::Counterexample, "{}", run.dump());
        assert!(run.margin().abs() <= 1e-2, "{}", run.dump());
        let run = verify_spirallike_corollary(&monomial(1), &cls, c(0.5, 0.0), &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
        let f = make_pvalent(&PValentSpec::new(1).with(2, c(0.2, 0.0))).unwrap();
        let run = verify_spirallike_corollary(&f, &cls, c(0.5, 0.0), &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
    }

    #[test]
    fn robertson_corollary_cases() {
        let cls = ClassParams::new(1, 0.0, 0.0, c(1.0, 0.0)).unwrap();
        // f = z/(1-z) has f' = (1-z)^{-2}
        let f = make_koebe_type(1, c(-1.0, 0.0)).unwrap();
        let z = c(0.4, -0.3);
        assert!((f.slope(z).0 - (1.0 - z).powi(-2)).norm() < 1e-13);
        let run = verify_robertson_corollary(&f, &cls, c(0.5, 0.0), &cfg());
        assert_ne!(run.outcome, Outcome::Counterexample, "{}", run.dump());
        assert!(run.margin().abs() <= 1e-2, "{}", run.dump());
        let run = verify_robertson_corollary(&monomial(1), &cls, c(1.0, 0.0), &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
        let f = make_pvalent(&PValentSpec::new(1).with(2, c(0.1, 0.0))).unwrap();
        let run = verify_robertson_corollary(&f, &cls, c(1.0, 0.0), &cfg());
        assert_eq!(run.outcome, Outcome::Confirmed, "{}", run.dump());
    }

    #[test]
    fn small_suites_have_no_counterexample() {
        let s = log_dominant_suite(40, 3, &cfg());
        assert_eq!(s.counterexamples, 0, "{:?}", s.aborted.map(|r| r.dump()));
        assert!(s.non_vacuous_fraction() >= 0.5);
        let s = linear_dominant_suite(40, 3, &cfg());
        assert_eq!(s.counterexamples, 0, "{:?}", s.aborted.map(|r| r.dump()));
        assert!(s.non_vacuous_fraction() >= 0.5);
    }

    #[test]
    fn suites_are_seed_deterministic() {
        let a = log_dominant_suite(12, 9, &cfg());
        let b = log_dominant_suite(12, 9, &cfg());
        assert_eq!(a, b);
    }

    #[test]
    fn random_pvalent_respects_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let p = rng.gen_range(1..=3);
            let s = random_pvalent(&mut rng, p);
            assert!(!s.tail.is_empty() && s.tail.len() <= 5);
            for (&k, a) in &s.tail {
                assert!(k > p as usize && a.norm() <= 0.3 / (k * k) as f64);
            }
            assert!(s.tail_l1() < 0.3);
        }
    }
}
