//! Direct numerical checks of the admissibility lemmas feeding the subordination theorems.

use std::collections::BTreeMap;

use num_complex::Complex;

use crate::disk::{convex_check, scan_min_re, starlike_check, ProbeConfig, ScanReport, Status, Witness};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};
use crate::series::Series;
use crate::zoo::{AnalyticMap, DominantSpec, Moebius, MoebiusConvention};

/// Margin-carrying outcome of a lemma check.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaReport {
    pub check: &'static str,
    pub status: Status,
    /// Signed distance from the decision threshold; positive means the check passed.
    pub margin: f64,
    pub values: BTreeMap<String, f64>,
    pub witness: Option<Witness<f64>>,
    pub notes: Vec<String>,
}

impl LemmaReport {
    fn new(check: &'static str, status: Status, margin: f64) -> Self {
        Self {
            check,
            status,
            margin,
            values: BTreeMap::new(),
            witness: None,
            notes: Vec::new(),
        }
    }

    fn value(mut self, key: &str, v: f64) -> Self {
        self.values.insert(key.to_string(), v);
        self
    }

    fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Holds
    }
}

fn witness_of<T: Real>(z: Complex<T>, value: Complex<T>) -> Witness<f64> {
    Witness {
        z: Complex::new(z.re.as_f64(), z.im.as_f64()),
        value: Complex::new(value.re.as_f64(), value.im.as_f64()),
    }
}

/// `|lambda + 1| <= 1` or `|lambda - 1| <= 1`.
pub fn in_royster_region<T: Real>(lambda: Complex<T>) -> bool {
    (lambda + T::one()).norm() <= T::one() || (lambda - T::one()).norm() <= T::one()
}

/// Univalence region of `(1 - z)^lambda`; `lambda = 0` is rejected.
pub fn royster_region<T: Real>(lambda: Complex<T>) -> Result<bool> {
    if lambda.norm() == T::zero() {
        return Err(Error::ZeroLambda);
    }
    Ok(in_royster_region(lambda))
}

/// `1 + z q''/q' - z q'/q`, the real part of which must stay positive.
pub fn log_starlike_expression<T: Real>(q: &dyn AnalyticMap<T>, z: Complex<T>) -> Complex<T> {
    let (v, d1, d2) = (q.eval(z), q.d1(z), q.d2(z));
    z * d2 / d1 - z * d1 / v + T::one()
}

/// Boundary scan of `Re(1 + z q''/q' - z q'/q)` for the two univalent
/// families `(1 + B z)^lambda` and `(1 + A z)/(1 + B z)`.
///
/// Passes when the minimum on the outermost circle is at least `-tol`. For the
/// binomial family the analytic floor `1/(1 + |B|)` is cross-checked with a
/// `2e-3` allowance.
pub fn family_floor_check<T: Real>(spec: &DominantSpec<T>, cfg: &ProbeConfig) -> Result<LemmaReport> {
    cfg.validate()?;
    let q = spec.build()?;
    let scan: ScanReport<T> = scan_min_re(|z| log_starlike_expression(q.as_ref(), z), cfg);
    let at_r_max = scan.at_r_max.as_f64();
    let min = scan.min.as_f64();
    if !at_r_max.is_finite() {
        return Ok(LemmaReport::new("family_floor", Status::Inconclusive, f64::NAN)
            .note("non-finite value on the probe ladder"));
    }
    let mut status = if at_r_max >= -cfg.tol { Status::Holds } else { Status::Fails };
    let mut report = match *spec {
        DominantSpec::BinomialPower { b, .. } => {
            let floor = 1.0 / (1.0 + b.as_f64().abs());
            let cross = at_r_max >= floor - 2e-3;
            if !cross {
                status = Status::Fails;
            }
            LemmaReport::new("family_floor", status, at_r_max)
                .value("floor", floor)
                .note(if cross {
                    "binomial floor 1/(1+|B|) confirmed"
                } else {
                    "binomial floor 1/(1+|B|) violated"
                })
        }
        DominantSpec::Moebius { a, b } => LemmaReport::new("family_floor", status, at_r_max)
            .value("A", a.as_f64())
            .value("B", b.as_f64()),
        _ => {
            return Err(Error::InvalidParameter(
                "floor check covers the binomial-power and Moebius families only".into(),
            ))
        }
    };
    report = report.value("min_at_r_max", at_r_max).value("min", min);
    for (r, m) in &scan.per_radius {
        report = report.value(&format!("min_r={r}"), m.as_f64());
    }
    report.witness = Some(witness_of(scan.at, log_starlike_expression(q.as_ref(), scan.at)));
    Ok(report)
}

/// Minimum of `|q|` over the ladder; flags values below `1e-4` as near-zero.
pub fn nonvanishing_check<T: Real>(q: &dyn AnalyticMap<T>, cfg: &ProbeConfig) -> Result<LemmaReport> {
    cfg.validate()?;
    let z0 = Complex::new(T::zero(), T::zero());
    let q0 = q.eval(z0).norm().as_f64();
    if !(q0 > cfg.tol) {
        return Ok(LemmaReport::new("nonvanishing", Status::Fails, -q0).note("q(0) = 0"));
    }
    let mut min = f64::INFINITY;
    let mut at = z0;
    for &r in &cfg.radii {
        for (_, z) in crate::disk::circle_samples(T::lit(r), cfg.n_theta) {
            let v = q.eval(z);
            let m = if is_finite(v) { v.norm().as_f64() } else { f64::NAN };
            if m.is_nan() {
                return Ok(LemmaReport::new("nonvanishing", Status::Inconclusive, f64::NAN)
                    .note("non-finite value on the probe ladder"));
            }
            if m < min {
                min = m;
                at = z;
            }
        }
    }
    let mut report = LemmaReport::new("nonvanishing", Status::from_margin(min, cfg.tol), min).value("min_abs", min);
    if min < 1e-4 {
        report = report.note("near-zero: min |q| below 1e-4");
    }
    report.witness = Some(witness_of(at, q.eval(at)));
    Ok(report)
}

/// Outcome of the Moebius convexity threshold check.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdReport {
    /// Scanned infimum of `Re((1 - Bz)/(1 + Bz))`.
    pub inf_re: f64,
    /// `(1 - |B|)/(1 + |B|)`.
    pub analytic_inf: f64,
    /// `(|B| - 1)/(|B| + 1)`, or `-1` when `B = 0`.
    pub threshold: f64,
    /// `Re zeta` against the threshold, with a `tol` band.
    pub status: Status,
    /// The condition `Re(1 + z q''/q') > max(0, -Re zeta)` evaluated on the scan.
    pub numeric_condition: Status,
    /// Whether the two verdicts agree; `None` when either is inconclusive.
    pub equivalence: Option<bool>,
    /// Scanned infimum within `2e-3` of the analytic one.
    pub inf_matches: bool,
    pub degenerate: bool,
}

/// For `q = (1 + A z)/(1 + B z)`, `1 + z q''/q' = (1 - Bz)/(1 + Bz)`; the
/// condition `Re(1 + z q''/q') > max(0, -Re zeta)` is equivalent to
/// `Re zeta >= (|B| - 1)/(|B| + 1)`. `B = 0` is handled as the degenerate case
/// with threshold `-1`.
pub fn moebius_convexity_threshold<T: Real>(b: T, zeta: Complex<T>, cfg: &ProbeConfig) -> Result<ThresholdReport> {
    cfg.validate()?;
    if !(b.abs() <= T::one()) {
        return Err(Error::InvalidParameter(format!("need -1 <= B <= 1, got {b}")));
    }
    let degenerate = b == T::zero();
    let (a, convention) = if b < T::one() {
        (T::one(), MoebiusConvention::BBelowA)
    } else {
        (-T::one(), MoebiusConvention::ABelowB)
    };
    let q = Moebius { a, b, convention };
    let scan = convex_check(&q, cfg)?;
    let bb = b.as_f64().abs();
    let analytic_inf = (1.0 - bb) / (1.0 + bb);
    let threshold = if degenerate { -1.0 } else { -analytic_inf };
    let inf_re = scan.at_r_max.as_f64();
    let re_zeta = zeta.re.as_f64();
    let status = Status::from_margin(re_zeta - threshold, cfg.tol);
    let numeric_condition = Status::from_margin(inf_re - f64::max(0.0, -re_zeta), cfg.tol);
    let equivalence = match (status, numeric_condition) {
        (Status::Inconclusive, _) | (_, Status::Inconclusive) => None,
        (s, n) => Some(s == n),
    };
    Ok(ThresholdReport {
        inf_re,
        analytic_inf,
        threshold,
        status,
        numeric_condition,
        equivalence,
        inf_matches: (inf_re - analytic_inf).abs() <= 2e-3,
        degenerate,
    })
}

/// `omega(z) = (u + v z)/(1 + B z)` maps the disk onto the disk with center
/// `(u - vB)/(1 - B^2)` and radius `|v - uB|/(1 - B^2)`; under
/// `Re(u - vB) >= |v - uB|` the real part of `omega` is positive.
///
/// The circle formula is checked on `|z| = 1` (within `1e-6`) and the images
/// of `|z| = 0.9999` must lie inside the closed disk.
pub fn halfplane_check<T: Real>(u: Complex<T>, v: Complex<T>, b: T, cfg: &ProbeConfig) -> Result<LemmaReport> {
    cfg.validate()?;
    if !(b.abs() < T::one()) {
        return Err(Error::InvalidParameter(format!("need -1 < B < 1, got {b}")));
    }
    if u.norm() == T::zero() && v.norm() == T::zero() {
        return Err(Error::InvalidParameter("(u, v) must not both vanish".into()));
    }
    let omega = |z: Complex<T>| (u + v * z) / (z * b + T::one());
    let den = T::one() - b * b;
    let center = (u - v * b) / den;
    let radius = (v - u * b).norm() / den;

    let mut dev_on_circle = T::zero();
    let mut outside_inner = T::neg_infinity();
    for (_, z) in crate::disk::circle_samples(T::one(), cfg.n_theta) {
        dev_on_circle = dev_on_circle.max(((omega(z) - center).norm() - radius).abs());
    }
    for (_, z) in crate::disk::circle_samples(T::lit(0.9999), cfg.n_theta) {
        outside_inner = outside_inner.max((omega(z) - center).norm() - radius);
    }
    let circle_ok = dev_on_circle.as_f64() < 1e-6 && outside_inner.as_f64() <= 1e-12;

    let hyp = (u - v * b).re - (v - u * b).norm();
    let scan = scan_min_re(omega, cfg);
    let min = scan.min.as_f64();
    let status = if !circle_ok {
        Status::Fails
    } else if hyp.as_f64() < -cfg.tol {
        Status::Inconclusive
    } else if min > -cfg.tol {
        Status::Holds
    } else {
        Status::Fails
    };
    let mut report = LemmaReport::new("halfplane", status, min)
        .value("center_re", center.re.as_f64())
        .value("center_im", center.im.as_f64())
        .value("radius", radius.as_f64())
        .value("circle_deviation", dev_on_circle.as_f64())
        .value("inner_excess", outside_inner.as_f64())
        .value("hypothesis_margin", hyp.as_f64())
        .value("min_re", min);
    if hyp.as_f64() < -cfg.tol {
        report = report.note("hypothesis Re(u - vB) >= |v - uB| not met");
    }
    if !circle_ok {
        report = report.note("boundary image deviates from the predicted circle");
    }
    report.witness = Some(witness_of(scan.at, omega(scan.at)));
    Ok(report)
}

/// `Q(z) = gamma z q'(z)/q(z)` as an analytic map.
pub struct LogAux<'a, T: Real> {
    q: &'a dyn AnalyticMap<T>,
    gamma: Complex<T>,
}

impl<'a, T: Real> LogAux<'a, T> {
    pub fn new(q: &'a dyn AnalyticMap<T>, gamma: Complex<T>) -> Self {
        Self { q, gamma }
    }
}

impl<T: Real> AnalyticMap<T> for LogAux<'_, T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.gamma * z * self.q.d1(z) / self.q.eval(z)
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        let (v, d1, d2) = (self.q.eval(z), self.q.d1(z), self.q.d2(z));
        self.gamma * ((d1 + z * d2) / v - z * d1 * d1 / (v * v))
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        let h = T::lit(1e-4);
        let e = Complex::new(h, T::zero());
        (self.d1(z + e) - self.d1(z - e)) / (h + h)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        let s = self.q.series_at_origin(order)?;
        Series::variable(order)
            .mul(&s.derivative())
            .div(&s)
            .map(|r| r.scale(self.gamma))
    }
    fn descriptor(&self) -> String {
        format!("gamma*z*q'/q for {}", self.q.descriptor())
    }
}

/// Starlikeness of `Q` and positivity of `Re(z h'/Q)` for `h = 1 + Q`.
#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibilityReport {
    pub status: Status,
    pub margin: f64,
    pub values: BTreeMap<String, f64>,
    pub notes: Vec<String>,
}

/// Admissibility bundle for `1 + gamma z p'/p ≺ 1 + gamma z q'/q`.
pub fn log_dominant_admissibility<T: Real>(
    q: &dyn AnalyticMap<T>,
    gamma: Complex<T>,
    cfg: &ProbeConfig,
) -> Result<AdmissibilityReport> {
    cfg.validate()?;
    if gamma.norm() == T::zero() {
        return Err(Error::QNotAdmissible("gamma = 0".into()));
    }
    let z0 = Complex::new(T::zero(), T::zero());
    if (q.eval(z0) - T::one()).norm().as_f64() > cfg.tol {
        return Err(Error::QNotAdmissible("q(0) != 1".into()));
    }
    if !(q.d1(z0).norm().as_f64() > cfg.tol) {
        return Err(Error::QNotAdmissible("Q = gamma z q'/q vanishes to second order".into()));
    }
    let big_q = LogAux::new(q, gamma);
    let star = starlike_check(&big_q, cfg)?;
    // h = 1 + Q, so z h'/Q is z Q'/Q computed through h
    let hscan = scan_min_re(|z| z * big_q.d1(z) / big_q.eval(z), cfg);
    let nonvanishing = nonvanishing_check(q, cfg)?;
    let status = star.status.and(hscan.status).and(nonvanishing.status);
    let margin = star.min.as_f64().min(hscan.min.as_f64()).min(nonvanishing.margin);
    let mut values = BTreeMap::new();
    values.insert("starlike_min".into(), star.min.as_f64());
    values.insert("zh_over_q_min".into(), hscan.min.as_f64());
    values.insert("min_abs_q".into(), nonvanishing.margin);
    Ok(AdmissibilityReport {
        status,
        margin,
        values,
        notes: nonvanishing.notes,
    })
}

/// `Re(1 + z q''/q') > max(0, -Re(sigma/gamma))` on the ladder.
///
/// For `q = e^{Cz}` this requires `|C| <= 1`; the note records whether the
/// weaker `Re(sigma/gamma) >= |C| - 1` holds as well.
pub fn linear_dominant_admissibility<T: Real>(
    q: &dyn AnalyticMap<T>,
    sigma: Complex<T>,
    gamma: Complex<T>,
    cfg: &ProbeConfig,
) -> Result<AdmissibilityReport> {
    cfg.validate()?;
    if gamma.norm() == T::zero() {
        return Err(Error::QNotAdmissible("gamma = 0".into()));
    }
    let scan = convex_check(q, cfg)?;
    let ratio = (sigma / gamma).re.as_f64();
    let threshold = f64::max(0.0, -ratio);
    let min = scan.min.as_f64();
    let margin = min - threshold;
    let mut values = BTreeMap::new();
    values.insert("convexity_min".into(), min);
    values.insert("threshold".into(), threshold);
    values.insert("re_sigma_over_gamma".into(), ratio);
    Ok(AdmissibilityReport {
        status: Status::from_margin(margin, cfg.tol),
        margin,
        values,
        notes: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    fn c(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }
    use crate::zoo::{make_binomial_power, make_exp_line, make_moebius, make_spiral_power, Polynomial};

    type C = Complex<f64>;

    #[test]
    fn royster_examples() {
        assert!(royster_region(c(2.0, 0.0)).unwrap());
        assert!(!royster_region(c(3.0, 0.0)).unwrap());
        assert!(royster_region(c(-0.5, 0.0)).unwrap());
        assert_eq!(royster_region(c(0.0, 0.0)), Err(Error::ZeroLambda));
    }

    #[test]
    fn royster_reflection_symmetry() {
        for i in -30..=30 {
            for j in -30..=30 {
                let l = c(i as f64 / 10.0, j as f64 / 10.0);
                if l.norm() == 0.0 {
                    continue;
                }
                assert_eq!((l - 1.0).norm() <= 1.0, (-l + 1.0).norm() <= 1.0);
                assert_eq!(in_royster_region(l), in_royster_region(-l));
            }
        }
    }

    #[test]
    fn binomial_floor() {
        let cfg = ProbeConfig::default();
        for lam in [c(0.5, 0.0), c(1.0, 0.0), c(2.0, 0.0), c(-1.0, 0.5)] {
            let spec = DominantSpec::BinomialPower { b: 0.5, lambda: lam };
            let r = family_floor_check(&spec, &cfg).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.margin >= 1.0 / 1.5 - 2e-3);
        }
    }

    #[test]
    fn binomial_expression_is_reciprocal_linear() {
        let q = make_binomial_power(-0.7, c(1.3, 0.4)).unwrap();
        for z in [c(0.3, 0.2), c(-0.5, 0.1), c(0.0, 0.8)] {
            let e: C = log_starlike_expression(&q, z);
            assert!((e - (1.0 - 0.7 * z).inv()).norm() < 1e-12);
        }
    }

    #[test]
    fn moebius_floor() {
        let cfg = ProbeConfig::default().with_n_theta(8192);
        // A=1, B=0 reduces to 1/(1+z); its infimum is 1/2, not 0
        let r = family_floor_check(&DominantSpec::Moebius { a: 1.0, b: 0.0 }, &cfg).unwrap();
        assert!(r.passed());
        assert!((r.margin - 1.0 / 1.999).abs() < 1e-9);
        let r = family_floor_check(&DominantSpec::Moebius { a: 0.0, b: -1.0 }, &cfg).unwrap();
        assert!((r.margin - 1.0 / 1.999).abs() < 1e-9);
        // the zero infimum occurs for A=1, B=-1
        let r = family_floor_check(&DominantSpec::Moebius { a: 1.0, b: -1.0 }, &cfg).unwrap();
        assert!(r.passed());
        assert!(r.margin >= -1e-6 && r.margin <= 1e-2);
        let r = family_floor_check(&DominantSpec::Moebius { a: 0.5, b: -0.5 }, &cfg).unwrap();
        assert!(r.margin > 0.0);
        assert!(family_floor_check(&DominantSpec::ExpLine { c: c(1.0, 0.0) }, &cfg).is_err());
    }

    #[test]
    fn moebius_expression_oracle() {
        // brute-force minimum of (1 - AB z^2)/((1+Az)(1+Bz)) on |z| = 0.999
        let (a, b) = (0.5, -0.5);
        let q = make_moebius(a, b).unwrap();
        let mut brute = f64::INFINITY;
        for k in 0..20000 {
            let z = C::from_polar(0.999, k as f64 * std::f64::consts::TAU / 20000.0);
            let v = (1.0 - a * b * z * z) / ((1.0 + a * z) * (1.0 + b * z));
            assert!((log_starlike_expression(&q, z) - v).norm() < 1e-10);
            brute = brute.min(v.re);
        }
        let cfg = ProbeConfig::default();
        let r = family_floor_check(&DominantSpec::Moebius { a, b }, &cfg).unwrap();
        assert!((r.margin - brute).abs() < 1e-5);
    }

    #[test]
    fn nonvanishing_examples() {
        let cfg = ProbeConfig::default();
        let hp = make_moebius(1.0, -1.0).unwrap();
        let r = nonvanishing_check(&hp, &cfg).unwrap();
        assert!(r.passed());
        let sq = make_binomial_power(-1.0, c(2.0, 0.0)).unwrap();
        let r = nonvanishing_check(&sq, &cfg).unwrap();
        assert!(r.passed());
        assert!((r.margin - 1e-6).abs() < 1e-9);
        assert!(r.notes.iter().any(|n| n.contains("near-zero")));
        let one = Polynomial::<f64>::from_real(&[1.0]);
        assert!(nonvanishing_check(&one, &cfg).unwrap().passed());
    }

    #[test]
    fn threshold_examples() {
        let cfg = ProbeConfig::default();
        let r = moebius_convexity_threshold(0.5, c(0.0, 0.0), &cfg).unwrap();
        assert!((r.analytic_inf - 1.0 / 3.0).abs() < 1e-15);
        assert!(r.inf_matches);
        assert_eq!(r.status, Status::Holds);
        let r = moebius_convexity_threshold(0.5, c(-1.0 / 3.0, 0.0), &cfg).unwrap();
        assert_eq!(r.status, Status::Inconclusive);
        let r = moebius_convexity_threshold(0.0, c(-0.9, 0.0), &cfg).unwrap();
        assert!(r.degenerate);
        assert_eq!(r.threshold, -1.0);
        assert!((r.inf_re - 1.0).abs() < 1e-12);
        assert_eq!(r.status, Status::Holds);
        assert_eq!(r.equivalence, Some(true));
    }

    #[test]
    fn threshold_equivalence_grid() {
        let cfg = ProbeConfig::default().with_n_theta(1024);
        for b in [-0.8, -0.5, -0.2, 0.2, 0.5, 0.8] {
            let thr = (f64::abs(b) - 1.0) / (f64::abs(b) + 1.0);
            for k in -10..=10 {
                let zeta = c(thr + 0.013 * k as f64, 0.3);
                let r = moebius_convexity_threshold(b, zeta, &cfg).unwrap();
                if k == 0 {
                    continue;
                }
                assert_eq!(r.equivalence, Some(true), "B={b} zeta={zeta}");
                assert_eq!(r.status == Status::Holds, k > 0);
            }
        }
    }

    #[test]
    fn moebius_convexity_image_disk() {
        // (1 - Bz)/(1 + Bz) on |z| = 1 lies on |w - (1+B^2)/(1-B^2)| = 2|B|/(1-B^2)
        for b in [-0.7, 0.3, 0.9] {
            let q = make_moebius(1.0, b).unwrap();
            let center = (1.0 + b * b) / (1.0 - b * b);
            let radius = 2.0 * f64::abs(b) / (1.0 - b * b);
            for k in 0..512 {
                let z = C::from_polar(1.0, k as f64 * std::f64::consts::TAU / 512.0);
                let w = z * q.d2(z) / q.d1(z) + 1.0;
                assert!(((w - center).norm() - radius).abs() < 1e-6);
                let zi = z * 0.9999;
                let wi = zi * q.d2(zi) / q.d1(zi) + 1.0;
                assert!((wi - center).norm() < radius);
            }
        }
    }

    #[test]
    fn halfplane_examples() {
        let cfg = ProbeConfig::default();
        let r = halfplane_check(c(1.0, 0.0), c(0.0, 0.0), 0.0, &cfg).unwrap();
        assert!(r.passed());
        assert!((r.margin - 1.0).abs() < 1e-15);
        // u = 1 + sigma/gamma, v = B(sigma - gamma)/gamma with sigma = gamma = 1
        let (sigma, gamma, b) = (c(1.0, 0.0), c(1.0, 0.0), 0.4);
        let u: C = sigma / gamma + 1.0;
        let v: C = (sigma - gamma) * b / gamma;
        assert_eq!(v, c(0.0, 0.0));
        assert!(halfplane_check(u, v, b, &cfg).unwrap().passed());
        let r = halfplane_check(c(2.0, 0.0), c(1.0, 0.0), 0.5, &cfg).unwrap();
        assert!(r.passed());
        assert!(r.margin > 0.0);
        assert!(r.values["circle_deviation"] < 1e-6);
        let r = halfplane_check(c(1.0, 0.0), c(0.8, 0.3), -0.6, &cfg).unwrap();
        assert!(r.values["circle_deviation"] < 1e-6);
        assert!(r.values["inner_excess"] <= 1e-12);
        assert!(halfplane_check(c(0.0, 0.0), c(0.0, 0.0), 0.1, &cfg).is_err());
        assert!(halfplane_check(c(1.0, 0.0), c(0.0, 0.0), 1.0, &cfg).is_err());
    }

    #[test]
    fn halfplane_bound_is_tight() {
        // min Re omega -> (Re(u - vB) - |v - uB|)/(1 - B^2)
        let cfg = ProbeConfig::default();
        let (u, v, b) = (c(1.5, 0.2), c(0.4, -0.1), 0.3);
        let r = halfplane_check(u, v, b, &cfg).unwrap();
        let bound = ((u - v * b).re - (v - u * b).norm()) / (1.0 - b * b);
        assert!(r.margin > bound && r.margin < bound + 2e-3);
    }

    #[test]
    fn log_admissibility_examples() {
        let cfg = ProbeConfig::default();
        let hp = make_moebius(1.0, -1.0).unwrap();
        let r = log_dominant_admissibility(&hp, c(1.0, 0.0), &cfg).unwrap();
        assert_eq!(r.status, Status::Holds);
        // Re((1+z^2)/(1-z^2)) at r = 0.999 dips to (1-r^2)/(1+r^2)
        let r2 = 0.999f64 * 0.999;
        let floor = (1.0 - r2) / (1.0 + r2);
        assert!((r.values["starlike_min"] - floor).abs() < 1e-5);
        let one = Polynomial::<f64>::from_real(&[1.0]);
        assert!(matches!(
            log_dominant_admissibility(&one, c(1.0, 0.0), &cfg),
            Err(Error::QNotAdmissible(_))
        ));
        let sp = make_spiral_power(1, c(0.5, 0.0), c(1.0, 0.0), 0.0, 0.0).unwrap();
        let r = log_dominant_admissibility(&sp, c(1.0, 0.0), &cfg).unwrap();
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn log_aux_matches_closed_form() {
        let hp = make_moebius(1.0, -1.0).unwrap();
        let q = LogAux::new(&hp, c(1.0, 0.0));
        for z in [c(0.3, 0.1), c(-0.2, 0.3)] {
            assert!((q.eval(z) - 2.0 * z / (1.0 - z * z)).norm() < 1e-12);
            let s = q.series_at_origin(40).unwrap();
            assert!((s.eval(z) - q.eval(z)).norm() < 1e-8);
        }
    }

    #[test]
    fn linear_admissibility_examples() {
        let cfg = ProbeConfig::default();
        let one = c(1.0, 0.0);
        for (cc, sigma, expect) in [
            (0.5, 1.0, Status::Holds),
            (0.9, 1.0, Status::Holds),
            (0.8, -0.1, Status::Holds),
            (0.8, -0.3, Status::Fails),
            (2.5, 1.0, Status::Fails),
        ] {
            let q = make_exp_line(c(cc, 0.0)).unwrap();
            let r = linear_dominant_admissibility(&q, c(sigma, 0.0), one, &cfg).unwrap();
            assert_eq!(r.status, expect, "C={cc} sigma={sigma}");
            assert!((r.values["convexity_min"] - (1.0 - 0.999 * cc)).abs() < 1e-6);
        }
        let q = Polynomial::<f64>::from_real(&[1.0, 1.0]);
        let r = linear_dominant_admissibility(&q, one, one, &cfg).unwrap();
        assert_eq!(r.status, Status::Holds);
        assert!((r.margin - 1.0).abs() < 1e-12);
        for b in [-0.5, 0.5] {
            let q = make_moebius(1.0, b).unwrap();
            let r = linear_dominant_admissibility(&q, one, one, &cfg).unwrap();
            assert!((r.values["convexity_min"] - 1.0 / 3.0).abs() < 2e-3);
        }
    }
}
