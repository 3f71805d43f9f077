//! Deterministic JSON-lines and CSV emission.
//!
//! Objects are key-sorted, reals are written as `{:.16e}` (17 significant
//! digits, locale independent) and non-finite reals become `null`.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use num_complex::Complex;

use crate::disk::{ClosedCurve, ProbeConfig, Status, Witness};

#[derive(Clone, Debug, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Num(f64),
    Str(String),
    Arr(Vec<Json>),
    Obj(BTreeMap<String, Json>),
}

impl Json {
    pub fn obj() -> Self {
        Json::Obj(BTreeMap::new())
    }

    /// Inserts into an object; no-op on other variants.
    pub fn with(mut self, key: &str, v: impl Into<Json>) -> Self {
        if let Json::Obj(m) = &mut self {
            m.insert(key.to_string(), v.into());
        }
        self
    }

    pub fn complex(z: Complex<f64>) -> Self {
        Json::obj().with("re", z.re).with("im", z.im)
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => {
                let _ = write!(out, "{i}");
            }
            Json::Num(x) if x.is_finite() => {
                let _ = write!(out, "{x:.16e}");
            }
            Json::Num(_) => out.push_str("null"),
            Json::Str(s) => out.push_str(&serde_json::to_string(s).expect("string escape")),
            Json::Arr(v) => {
                out.push('[');
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    x.write(out);
                }
                out.push(']');
            }
            Json::Obj(m) => {
                out.push('{');
                for (i, (k, v)) in m.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&serde_json::to_string(k).expect("string escape"));
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }
}

impl fmt::Display for Json {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        self.write(&mut s);
        f.write_str(&s)
    }
}

impl From<f64> for Json {
    fn from(x: f64) -> Self {
        Json::Num(x)
    }
}
impl From<i64> for Json {
    fn from(x: i64) -> Self {
        Json::Int(x)
    }
}
impl From<usize> for Json {
    fn from(x: usize) -> Self {
        Json::Int(x as i64)
    }
}
impl From<u32> for Json {
    fn from(x: u32) -> Self {
        Json::Int(x as i64)
    }
}
impl From<bool> for Json {
    fn from(x: bool) -> Self {
        Json::Bool(x)
    }
}
impl From<&str> for Json {
    fn from(x: &str) -> Self {
        Json::Str(x.to_string())
    }
}
impl From<String> for Json {
    fn from(x: String) -> Self {
        Json::Str(x)
    }
}
impl From<Complex<f64>> for Json {
    fn from(z: Complex<f64>) -> Self {
        Json::complex(z)
    }
}
impl<T: Into<Json>> From<Option<T>> for Json {
    fn from(x: Option<T>) -> Self {
        x.map_or(Json::Null, Into::into)
    }
}
impl<T: Into<Json>> From<Vec<T>> for Json {
    fn from(v: Vec<T>) -> Self {
        Json::Arr(v.into_iter().map(Into::into).collect())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Holds,
    Fails,
    Inconclusive,
    Pass,
    Fail,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn is_failure(self) -> bool {
        matches!(self, Verdict::Fails | Verdict::Fail)
    }

    pub fn is_success(self) -> bool {
        matches!(self, Verdict::Holds | Verdict::Pass)
    }
}

impl From<Status> for Verdict {
    fn from(s: Status) -> Self {
        match s {
            Status::Holds => Verdict::Holds,
            Status::Fails => Verdict::Fails,
            Status::Inconclusive => Verdict::Inconclusive,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "Holds",
            Verdict::Fails => "Fails",
            Verdict::Inconclusive => "Inconclusive",
            Verdict::Pass => "Pass",
            Verdict::Fail => "Fail",
        })
    }
}

/// Exit code for a batch of verdicts: 1 if any failed, 0 if all succeeded, 2 otherwise.
pub fn exit_code(verdicts: impl IntoIterator<Item = Verdict>) -> i32 {
    let mut any = false;
    let mut all_ok = true;
    for v in verdicts {
        any = true;
        if v.is_failure() {
            return 1;
        }
        all_ok &= v.is_success();
    }
    if any && all_ok {
        0
    } else {
        2
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunReport {
    pub check: String,
    pub params: BTreeMap<String, Json>,
    pub verdict: Verdict,
    pub margin: f64,
    pub witness: Option<Witness<f64>>,
    pub probe: ProbeConfig,
    pub seed: Option<u64>,
    pub details: BTreeMap<String, Json>,
}

impl RunReport {
    pub fn new(check: impl Into<String>, verdict: Verdict, margin: f64, probe: &ProbeConfig) -> Self {
        Self {
            check: check.into(),
            params: BTreeMap::new(),
            verdict,
            margin,
            witness: None,
            probe: probe.clone(),
            seed: None,
            details: BTreeMap::new(),
        }
    }

    pub fn param(mut self, key: &str, v: impl Into<Json>) -> Self {
        self.params.insert(key.to_string(), v.into());
        self
    }

    pub fn detail(mut self, key: &str, v: impl Into<Json>) -> Self {
        self.details.insert(key.to_string(), v.into());
        self
    }

    pub fn witness(mut self, w: Option<Witness<f64>>) -> Self {
        self.witness = w;
        self
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn to_json(&self) -> Json {
        let witness = self.witness.map_or(Json::Null, |w| {
            Json::obj()
                .with("z_re", w.z.re)
                .with("z_im", w.z.im)
                .with("value_re", w.value.re)
                .with("value_im", w.value.im)
        });
        let probe = Json::obj()
            .with("r_max", self.probe.r_max())
            .with("n_theta", self.probe.n_theta)
            .with("tol", self.probe.tol)
            .with("order", self.probe.order);
        let mut out = Json::obj()
            .with("check", self.check.as_str())
            .with("params", Json::Obj(self.params.clone()))
            .with("verdict", self.verdict.to_string())
            .with("margin", self.margin)
            .with("witness", witness)
            .with("probe", probe)
            .with("seed", self.seed.map(|s| Json::Int(s as i64)));
        if !self.details.is_empty() {
            out = out.with("details", Json::Obj(self.details.clone()));
        }
        out
    }

    /// One JSON object on a single line, without a trailing newline.
    pub fn to_line(&self) -> String {
        self.to_json().to_string()
    }
}

/// `theta,re,im` CSV of a traced boundary image.
pub fn curve_csv(curve: &ClosedCurve<f64>) -> String {
    let mut s = String::from("theta,re,im\n");
    for (t, w) in curve.params().iter().zip(curve.points()) {
        let _ = writeln!(s, "{t:.16e},{:.16e},{:.16e}", w.re, w.im);
    }
    s
}
