//! Boundary sampling, containment and the subordination decision procedure.
//!
//! `g ≺ h` for univalent `h` is decided as `g(0) = h(0)` plus `g(U) ⊂ h(U)`,
//! checked on a ladder of circles. A `Holds` verdict is a numerical
//! certificate with a reported clearance, not a proof.

use std::fmt;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, Real};
use crate::zoo::AnalyticMap;

/// Sampling plan for boundary scans.
#[derive(Clone, Debug, PartialEq)]
pub struct ProbeConfig {
    /// Strictly increasing radii in (0, 1).
    pub radii: Vec<f64>,
    /// Samples per circle.
    pub n_theta: usize,
    pub tol: f64,
    /// Series truncation order.
    pub order: usize,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        Self {
            radii: vec![0.5, 0.9, 0.99, 0.999],
            n_theta: 4096,
            tol: 1e-9,
            order: crate::series::DEFAULT_ORDER,
        }
    }
}

impl ProbeConfig {
    pub fn validate(&self) -> Result<()> {
        if self.radii.is_empty() {
            return Err(Error::InvalidProbe("radii must be nonempty".into()));
        }
        if self.radii.windows(2).any(|w| !(w[0] < w[1])) {
            return Err(Error::InvalidProbe("radii must be strictly increasing".into()));
        }
        if self.radii.iter().any(|&r| !(r > 0.0 && r < 1.0)) {
            return Err(Error::InvalidProbe("radii must lie in (0, 1)".into()));
        }
        if self.n_theta < 64 {
            return Err(Error::InvalidProbe("n_theta must be at least 64".into()));
        }
        if !(self.tol > 0.0 && self.tol.is_finite()) {
            return Err(Error::InvalidProbe("tol must be positive".into()));
        }
        Ok(())
    }

    pub fn r_max(&self) -> f64 {
        *self.radii.last().expect("validated probe")
    }

    /// Radius at which a dominant's image curve is traced: halfway between
    /// `r_max` and 1, so samples of `g` at `r_max` stay strictly inside when `g = h`.
    pub fn outer_radius(&self) -> f64 {
        0.5 * (1.0 + self.r_max())
    }

    /// Same ladder with a different angular density.
    pub fn with_n_theta(&self, n_theta: usize) -> Self {
        Self {
            n_theta,
            ..self.clone()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

impl Status {
    /// Tri-state comparison of `margin` against zero with a `tol` guard band.
    pub fn from_margin(margin: f64, tol: f64) -> Self {
        if !margin.is_finite() {
            Status::Inconclusive
        } else if margin > tol {
            Status::Holds
        } else if margin < -tol {
            Status::Fails
        } else {
            Status::Inconclusive
        }
    }

    /// Conjunction: any `Fails` wins, then any `Inconclusive`.
    pub fn and(self, other: Status) -> Status {
        match (self, other) {
            (Status::Fails, _) | (_, Status::Fails) => Status::Fails,
            (Status::Inconclusive, _) | (_, Status::Inconclusive) => Status::Inconclusive,
            _ => Status::Holds,
        }
    }
}

/// Sample point and the value observed there.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Witness<T> {
    pub z: Complex<T>,
    pub value: Complex<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SubordinationVerdict<T> {
    pub status: Status,
    pub witness: Option<Witness<T>>,
    /// Smallest signed clearance observed: positive inside `h(U)`, negative outside.
    pub margin: f64,
    pub reason: Option<String>,
    pub probe: ProbeConfig,
}

impl<T: Real> SubordinationVerdict<T> {
    fn inconclusive(reason: impl Into<String>, margin: f64, cfg: &ProbeConfig) -> Self {
        Self {
            status: Status::Inconclusive,
            witness: None,
            margin,
            reason: Some(reason.into()),
            probe: cfg.clone(),
        }
    }
}

/// Equispaced samples `r e^{2 pi i j / n}`; the set is closed under conjugation.
pub fn circle_samples<T: Real>(r: T, n: usize) -> impl Iterator<Item = (T, Complex<T>)> {
    let nn = T::from_usize(n).unwrap();
    (0..n).map(move |j| {
        let th = T::TAU() * T::from_usize(j).unwrap() / nn;
        (th, Complex::from_polar(r, th))
    })
}

/// Minimum of a real functional with its location.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ScanMin<T> {
    pub value: T,
    pub at: Complex<T>,
}

/// `min_j Re g(r e^{i theta_j})` over `n` equispaced samples. Non-finite
/// values propagate as NaN.
pub fn boundary_min_re<T: Real>(g: impl Fn(Complex<T>) -> Complex<T>, r: T, n: usize) -> ScanMin<T> {
    let mut best = ScanMin {
        value: T::infinity(),
        at: Complex::new(r, T::zero()),
    };
    for (_, z) in circle_samples(r, n) {
        let v = g(z);
        if !is_finite(v) {
            return ScanMin { value: T::nan(), at: z };
        }
        if v.re < best.value {
            best = ScanMin { value: v.re, at: z };
        }
    }
    best
}

/// Ladder-wide scan of `Re g` with per-radius minima.
#[derive(Clone, Debug, PartialEq)]
pub struct ScanReport<T> {
    pub min: T,
    pub at: Complex<T>,
    pub per_radius: Vec<(f64, T)>,
    /// Minimum on the outermost probe circle.
    pub at_r_max: T,
    /// `min` compared against zero with the probe tolerance.
    pub status: Status,
}

impl<T: Real> ScanReport<T> {
    pub fn holds(&self) -> bool {
        self.status == Status::Holds
    }
}

/// Minimum of `Re g` over every probe circle.
pub fn scan_min_re<T: Real>(g: impl Fn(Complex<T>) -> Complex<T>, cfg: &ProbeConfig) -> ScanReport<T> {
    let mut per_radius = Vec::with_capacity(cfg.radii.len());
    let mut best = ScanMin {
        value: T::infinity(),
        at: Complex::new(T::zero(), T::zero()),
    };
    for &r in &cfg.radii {
        let m = boundary_min_re(&g, T::lit(r), cfg.n_theta);
        per_radius.push((r, m.value));
        if m.value.is_nan() || m.value < best.value {
            best = m;
        }
        if m.value.is_nan() {
            break;
        }
    }
    let at_r_max = per_radius.last().map(|p| p.1).unwrap_or_else(T::nan);
    ScanReport {
        min: best.value,
        at: best.at,
        status: Status::from_margin(best.value.as_f64(), cfg.tol),
        per_radius,
        at_r_max,
    }
}

// ---------------------------------------------------------------------------
// Winding numbers

fn seg_dist<T: Real>(a: Complex<T>, b: Complex<T>, w: Complex<T>) -> T {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    let t = if len2 > T::zero() {
        (((w - a) * ab.conj()).re / len2).max(T::zero()).min(T::one())
    } else {
        T::zero()
    };
    (a + ab * t - w).norm_sqr().sqrt()
}

/// Winding number of the closed polyline `curve` about `w` by summed argument
/// increments. Errors when `w` is within `tol` of a segment or when a single
/// increment reaches `0.9 pi` (the curve is too coarse to resolve).
pub fn winding_number<T: Real>(curve: &[Complex<T>], w: Complex<T>, tol: T) -> Result<i64> {
    let n = curve.len();
    if n < 3 {
        return Err(Error::InvalidParameter("closed curve needs at least 3 points".into()));
    }
    let cap = T::lit(0.9) * T::PI();
    let mut total = T::zero();
    for i in 0..n {
        let a = curve[i];
        let b = curve[(i + 1) % n];
        let d = seg_dist(a, b, w);
        if !(d > tol) {
            return Err(Error::PointTooCloseToCurve { distance: d.as_f64() });
        }
        let inc = ((b - w) / (a - w)).arg();
        if inc.abs() >= cap {
            return Err(Error::CurveUnderSampled(inc.as_f64()));
        }
        total = total + inc;
    }
    Ok((total / T::TAU()).round().to_i64().unwrap_or(0))
}

const CHUNK: usize = 16;

#[derive(Clone, Copy, Debug)]
struct BBox<T> {
    min_x: T,
    max_x: T,
    min_y: T,
    max_y: T,
}

impl<T: Real> BBox<T> {
    fn dist(&self, w: Complex<T>) -> T {
        let dx = (self.min_x - w.re).max(w.re - self.max_x).max(T::zero());
        let dy = (self.min_y - w.im).max(w.im - self.max_y).max(T::zero());
        (dx * dx + dy * dy).sqrt()
    }

    fn overlaps(&self, o: &Self) -> bool {
        self.min_x <= o.max_x && o.min_x <= self.max_x && self.min_y <= o.max_y && o.min_y <= self.max_y
    }
}

/// Closed polyline with chunked bounding boxes for fast point location.
#[derive(Clone, Debug)]
pub struct ClosedCurve<T> {
    points: Vec<Complex<T>>,
    /// Parameter (angle) of each point when the curve is a boundary image.
    params: Vec<T>,
    boxes: Vec<BBox<T>>,
}

/// Winding number and distance of a point relative to a [`ClosedCurve`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Location<T> {
    pub winding: i64,
    pub distance: T,
}

#[inline]
fn cross<T: Real>(a: Complex<T>, b: Complex<T>, w: Complex<T>) -> T {
    (b.re - a.re) * (w.im - a.im) - (w.re - a.re) * (b.im - a.im)
}

impl<T: Real> ClosedCurve<T> {
    pub fn new(points: Vec<Complex<T>>, params: Vec<T>) -> Result<Self> {
        if points.len() < 3 {
            return Err(Error::InvalidParameter("closed curve needs at least 3 points".into()));
        }
        if !points.iter().all(|&p| is_finite(p)) {
            return Err(Error::NonFinite("curve samples"));
        }
        let n = points.len();
        let boxes = (0..n)
            .step_by(CHUNK)
            .map(|s| {
                let e = (s + CHUNK).min(n);
                let mut bb = BBox {
                    min_x: T::infinity(),
                    max_x: T::neg_infinity(),
                    min_y: T::infinity(),
                    max_y: T::neg_infinity(),
                };
                // segment i runs from point i to point i+1 (cyclic)
                for i in s..=e {
                    let p = points[i % n];
                    bb.min_x = bb.min_x.min(p.re);
                    bb.max_x = bb.max_x.max(p.re);
                    bb.min_y = bb.min_y.min(p.im);
                    bb.max_y = bb.max_y.max(p.im);
                }
                bb
            })
            .collect();
        Ok(Self { points, params, boxes })
    }

    pub fn points(&self) -> &[Complex<T>] {
        &self.points
    }

    pub fn params(&self) -> &[T] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    fn seg(&self, i: usize) -> (Complex<T>, Complex<T>) {
        let n = self.points.len();
        (self.points[i], self.points[(i + 1) % n])
    }

    /// Signed crossing count (nonzero-winding rule) plus distance to the curve.
    pub fn locate(&self, w: Complex<T>) -> Location<T> {
        self.locate_capped(w, T::infinity())
    }

    /// Like [`locate`](Self::locate), but the distance is exact only when it
    /// is below `cap`; otherwise some value `>= cap` is returned.
    pub fn locate_capped(&self, w: Complex<T>, cap: T) -> Location<T> {
        let n = self.points.len();
        let mut winding = 0i64;
        let mut nearest = (T::infinity(), 0usize);
        for (ci, bb) in self.boxes.iter().enumerate() {
            let d = bb.dist(w);
            if d < nearest.0 {
                nearest = (d, ci);
            }
            if !(bb.min_y <= w.im && w.im < bb.max_y && bb.max_x >= w.re) {
                continue;
            }
            let s = ci * CHUNK;
            for i in s..(s + CHUNK).min(n) {
                let (a, b) = self.seg(i);
                if a.im <= w.im {
                    if b.im > w.im && cross(a, b, w) > T::zero() {
                        winding += 1;
                    }
                } else if b.im <= w.im && cross(a, b, w) < T::zero() {
                    winding -= 1;
                }
            }
        }
        let scan = |ci: usize, best: T| -> T {
            let s = ci * CHUNK;
            (s..(s + CHUNK).min(n)).fold(best, |acc, i| {
                let (a, b) = self.seg(i);
                acc.min(seg_dist(a, b, w))
            })
        };
        if nearest.0 >= cap {
            return Location { winding, distance: nearest.0 };
        }
        // the nearest box usually holds the nearest segment
        let mut best = scan(nearest.1, T::infinity());
        for (ci, bb) in self.boxes.iter().enumerate() {
            if ci != nearest.1 && bb.dist(w) < best.min(cap) {
                best = scan(ci, best);
            }
        }
        Location { winding, distance: best }
    }

    /// First proper crossing between two non-adjacent segments, as
    /// `(i, s, j, t)` with crossing point `P_i + s (P_{i+1} - P_i) = P_j + t (...)`.
    pub fn self_intersection(&self) -> Option<(usize, T, usize, T)> {
        let n = self.points.len();
        let nb = self.boxes.len();
        for bi in 0..nb {
            for bj in bi..nb {
                if !self.boxes[bi].overlaps(&self.boxes[bj]) {
                    continue;
                }
                let (si, ei) = (bi * CHUNK, (bi * CHUNK + CHUNK).min(n));
                let (sj, ej) = (bj * CHUNK, (bj * CHUNK + CHUNK).min(n));
                for i in si..ei {
                    let (a, b) = self.seg(i);
                    for j in sj.max(i + 2)..ej {
                        if (j + 1) % n == i {
                            continue;
                        }
                        let (c, d) = self.seg(j);
                        let d1 = cross(a, b, c);
                        let d2 = cross(a, b, d);
                        let d3 = cross(c, d, a);
                        let d4 = cross(c, d, b);
                        let zero = T::zero();
                        if ((d1 > zero && d2 < zero) || (d1 < zero && d2 > zero))
                            && ((d3 > zero && d4 < zero) || (d3 < zero && d4 > zero))
                        {
                            let s = d3 / (d3 - d4);
                            let t = d1 / (d1 - d2);
                            return Some((i, s, j, t));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Image of the circle `|z| = r` under `h`, with segments whose chord exceeds
/// eight times the median chord bisected (up to 10 levels) so that poles and
/// spikes near the boundary stay resolved.
pub fn boundary_curve<T: Real>(h: &dyn Fn(Complex<T>) -> Complex<T>, r: T, n: usize) -> Result<ClosedCurve<T>> {
    let base: Vec<(T, Complex<T>)> = circle_samples(r, n).map(|(th, z)| (th, h(z))).collect();
    if !base.iter().all(|&(_, v)| is_finite(v)) {
        return Err(Error::NonFinite("boundary image"));
    }
    let mut chords: Vec<T> = (0..n).map(|i| (base[(i + 1) % n].1 - base[i].1).norm()).collect();
    chords.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let limit = chords[n / 2] * T::lit(8.0);

    let mut params = Vec::with_capacity(n + n / 8);
    let mut points = Vec::with_capacity(n + n / 8);
    let step = T::TAU() / T::from_usize(n).unwrap();
    for i in 0..n {
        let (th0, v0) = base[i];
        let v1 = base[(i + 1) % n].1;
        params.push(th0);
        points.push(v0);
        refine(h, r, th0, v0, th0 + step, v1, limit, 10, &mut params, &mut points)?;
    }
    ClosedCurve::new(points, params)
}

#[allow(clippy::too_many_arguments)]
fn refine<T: Real>(
    h: &dyn Fn(Complex<T>) -> Complex<T>,
    r: T,
    th0: T,
    v0: Complex<T>,
    th1: T,
    v1: Complex<T>,
    limit: T,
    depth: u32,
    params: &mut Vec<T>,
    points: &mut Vec<Complex<T>>,
) -> Result<()> {
    if depth == 0 || !((v1 - v0).norm() > limit) {
        return Ok(());
    }
    let tm = (th0 + th1) * T::lit(0.5);
    let vm = h(Complex::from_polar(r, tm));
    if !is_finite(vm) {
        return Err(Error::NonFinite("boundary image"));
    }
    refine(h, r, th0, v0, tm, vm, limit, depth - 1, params, points)?;
    params.push(tm);
    points.push(vm);
    refine(h, r, tm, vm, th1, v1, limit, depth - 1, params, points)
}

// ---------------------------------------------------------------------------
// Containment and subordination

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Containment<T> {
    /// `Holds` = inside, `Fails` = outside, `Inconclusive` = within `tol` of the curve.
    pub status: Status,
    pub winding: i64,
    /// Distance from the point to the sampled image curve.
    pub margin: T,
}

impl<T: Real> Containment<T> {
    pub fn inside(&self) -> bool {
        self.status == Status::Holds
    }
}

fn classify<T: Real>(loc: Location<T>, tol: f64) -> Containment<T> {
    let status = if !(loc.distance.as_f64() > tol) {
        Status::Inconclusive
    } else if loc.winding == 1 {
        Status::Holds
    } else if loc.winding == 0 {
        Status::Fails
    } else {
        Status::Inconclusive
    };
    Containment {
        status,
        winding: loc.winding,
        margin: loc.distance,
    }
}

/// Whether `w` lies in `h(U)`, judged by the winding of the traced image curve.
pub fn image_contains<T: Real>(h: &dyn AnalyticMap<T>, w: Complex<T>, cfg: &ProbeConfig) -> Result<Containment<T>> {
    cfg.validate()?;
    let curve = boundary_curve(&|z| h.eval(z), T::lit(cfg.outer_radius()), cfg.n_theta)?;
    Ok(classify(curve.locate(w), cfg.tol))
}

/// Univalence assessment of a map on the disk.
#[derive(Clone, Debug, PartialEq)]
pub enum Univalence<T> {
    /// Analytic certificate (family membership).
    Certified(String),
    /// Boundary image at `r_max` is a simple closed curve.
    CertifiedNumerically,
    /// Distinct points with (numerically) equal images.
    Refuted {
        z1: Complex<T>,
        z2: Complex<T>,
        w1: Complex<T>,
        w2: Complex<T>,
    },
    Unknown(String),
}

impl<T> Univalence<T> {
    pub fn is_univalent(&self) -> bool {
        matches!(self, Univalence::Certified(_) | Univalence::CertifiedNumerically)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Univalence::Certified(_) => "Certified",
            Univalence::CertifiedNumerically => "CertifiedNumerically",
            Univalence::Refuted { .. } => "Refuted",
            Univalence::Unknown(_) => "Unknown",
        }
    }
}

fn newton_partner<T: Real>(h: &dyn AnalyticMap<T>, target: Complex<T>, mut z: Complex<T>, tol: T) -> Option<Complex<T>> {
    for _ in 0..60 {
        let f = h.eval(z) - target;
        if !is_finite(f) {
            return None;
        }
        if f.norm() < tol * T::lit(1e-3) {
            return Some(z);
        }
        let d = h.d1(z);
        if !(d.norm() > T::zero()) {
            return None;
        }
        let mut step = f / d;
        // damp steps that would leave the disk
        while (z - step).norm() >= T::one() && step.norm() > T::epsilon() {
            step = step * T::lit(0.5);
        }
        z = z - step;
    }
    ((h.eval(z) - target).norm() < tol).then_some(z)
}

/// Certified by family, refuted by an explicit collision, certified
/// numerically when the traced boundary image is simple, unknown otherwise.
pub fn univalence_check<T: Real>(h: &dyn AnalyticMap<T>, cfg: &ProbeConfig) -> Univalence<T> {
    if let Err(e) = cfg.validate() {
        return Univalence::Unknown(e.to_string());
    }
    if let Some(cert) = h.univalence_certificate() {
        return Univalence::Certified(cert);
    }
    let tol = T::lit(cfg.tol);
    let sep = tol * T::lit(10.0);

    // direct collisions among ladder samples
    let mut samples: Vec<(Complex<T>, Complex<T>)> = Vec::with_capacity(cfg.radii.len() * cfg.n_theta + 1);
    samples.push((Complex::new(T::zero(), T::zero()), h.eval(Complex::new(T::zero(), T::zero()))));
    for &r in &cfg.radii {
        for (_, z) in circle_samples(T::lit(r), cfg.n_theta) {
            samples.push((z, h.eval(z)));
        }
    }
    if samples.iter().any(|&(_, w)| !is_finite(w)) {
        return Univalence::Unknown("non-finite values on the probe ladder".into());
    }
    samples.sort_by(|a, b| a.1.re.partial_cmp(&b.1.re).unwrap());
    for i in 0..samples.len() {
        for j in i + 1..samples.len() {
            if samples[j].1.re - samples[i].1.re >= tol {
                break;
            }
            let (z1, w1) = samples[i];
            let (z2, w2) = samples[j];
            if (w1 - w2).norm() < tol && (z1 - z2).norm() > sep {
                return Univalence::Refuted { z1, z2, w1, w2 };
            }
        }
    }

    let r = T::lit(cfg.r_max());
    let curve = match boundary_curve(&|z| h.eval(z), r, cfg.n_theta) {
        Ok(c) => c,
        Err(e) => return Univalence::Unknown(e.to_string()),
    };
    match curve.self_intersection() {
        None => Univalence::CertifiedNumerically,
        Some((i, s, j, t)) => {
            let n = curve.len();
            let lerp = |k: usize, u: T| {
                let t0 = curve.params()[k];
                let mut t1 = curve.params()[(k + 1) % n];
                if t1 < t0 {
                    t1 = t1 + T::TAU();
                }
                t0 + (t1 - t0) * u
            };
            let z1 = Complex::from_polar(r, lerp(i, s));
            let guess = Complex::from_polar(r, lerp(j, t));
            let w1 = h.eval(z1);
            match newton_partner(h, w1, guess, tol) {
                Some(z2) if (z2 - z1).norm() > sep && z2.norm() < T::one() => Univalence::Refuted {
                    z1,
                    z2,
                    w1,
                    w2: h.eval(z2),
                },
                _ => Univalence::Unknown(format!(
                    "boundary image self-intersects near theta={} and theta={} but no collision was confirmed",
                    lerp(i, s),
                    lerp(j, t)
                )),
            }
        }
    }
}

/// A dominant prepared for repeated subordination checks: its image curve and
/// univalence status are computed once.
pub struct PreparedDominant<'a, T: Real> {
    h: &'a dyn AnalyticMap<T>,
    curve: Option<ClosedCurve<T>>,
    univalence: Univalence<T>,
    cfg: ProbeConfig,
    setup_error: Option<String>,
}

impl<'a, T: Real> PreparedDominant<'a, T> {
    pub fn new(h: &'a dyn AnalyticMap<T>, cfg: &ProbeConfig) -> Self {
        let univalence = univalence_check(h, cfg);
        Self::with_univalence(h, cfg, univalence)
    }

    pub fn with_univalence(h: &'a dyn AnalyticMap<T>, cfg: &ProbeConfig, univalence: Univalence<T>) -> Self {
        let (curve, setup_error) = match cfg
            .validate()
            .and_then(|_| boundary_curve(&|z| h.eval(z), T::lit(cfg.outer_radius()), cfg.n_theta))
        {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        };
        Self {
            h,
            curve,
            univalence,
            cfg: cfg.clone(),
            setup_error,
        }
    }

    pub fn univalence(&self) -> &Univalence<T> {
        &self.univalence
    }

    pub fn curve(&self) -> Option<&ClosedCurve<T>> {
        self.curve.as_ref()
    }

    pub fn contains(&self, w: Complex<T>) -> Option<Containment<T>> {
        self.curve.as_ref().map(|c| classify(c.locate(w), self.cfg.tol))
    }

    /// Decides `g ≺ h` on the probe ladder.
    pub fn check(&self, g: &dyn Fn(Complex<T>) -> Complex<T>) -> SubordinationVerdict<T> {
        let cfg = &self.cfg;
        if let Some(e) = &self.setup_error {
            return SubordinationVerdict::inconclusive(format!("dominant not traceable: {e}"), f64::NAN, cfg);
        }
        if !self.univalence.is_univalent() {
            return SubordinationVerdict::inconclusive(
                format!("univalence of dominant uncertain ({})", self.univalence.label()),
                f64::NAN,
                cfg,
            );
        }
        let curve = self.curve.as_ref().expect("curve present without setup error");
        let z0 = Complex::new(T::zero(), T::zero());
        let (g0, h0) = (g(z0), self.h.eval(z0));
        let gap = (g0 - h0).norm().as_f64();
        if !gap.is_finite() {
            return SubordinationVerdict::inconclusive("non-finite value at the origin", f64::NAN, cfg);
        }
        if gap > cfg.tol {
            return SubordinationVerdict {
                status: Status::Fails,
                witness: Some(Witness { z: z0, value: g0 }),
                margin: -gap,
                reason: Some("g(0) != h(0)".into()),
                probe: cfg.clone(),
            };
        }

        let mut margin = f64::INFINITY;
        let mut undecided: Option<String> = None;
        // deepest violation across the ladder
        let mut worst: Option<(f64, Witness<T>)> = None;
        for &r in &cfg.radii {
            for (_, z) in circle_samples(T::lit(r), cfg.n_theta) {
                let w = g(z);
                if !is_finite(w) {
                    return SubordinationVerdict::inconclusive(format!("g not finite at {z}"), margin, cfg);
                }
                // exact distances matter only below the running margin
                let cap = T::lit(margin.max(2.0 * cfg.tol));
                let mut loc = curve.locate_capped(w, cap);
                if loc.winding != 1 {
                    loc = curve.locate(w);
                }
                let c = classify(loc, cfg.tol);
                let d = c.margin.as_f64();
                match c.status {
                    Status::Holds => margin = margin.min(d),
                    Status::Fails => {
                        if worst.map_or(true, |(m, _)| -d < m) {
                            worst = Some((-d, Witness { z, value: w }));
                        }
                    }
                    Status::Inconclusive => {
                        margin = margin.min(if c.winding == 1 { d } else { -d });
                        undecided.get_or_insert_with(|| {
                            format!("g({z}) within {d:e} of the image boundary (winding {})", c.winding)
                        });
                    }
                }
            }
        }
        if let Some((m, wit)) = worst {
            return SubordinationVerdict {
                status: Status::Fails,
                witness: Some(wit),
                margin: m,
                reason: Some(format!("g({}) lies outside h(U)", wit.z)),
                probe: cfg.clone(),
            };
        }
        match undecided {
            Some(reason) => SubordinationVerdict::inconclusive(reason, margin, cfg),
            None => SubordinationVerdict {
                status: Status::from_margin(margin, cfg.tol),
                witness: None,
                margin,
                reason: None,
                probe: cfg.clone(),
            },
        }
    }
}

/// Decides `g ≺ h` for a dominant `h` whose univalence is checked first.
pub fn subordination_check<T: Real>(
    g: &dyn AnalyticMap<T>,
    h: &dyn AnalyticMap<T>,
    cfg: &ProbeConfig,
) -> SubordinationVerdict<T> {
    PreparedDominant::new(h, cfg).check(&|z| g.eval(z))
}

// ---------------------------------------------------------------------------
// Geometric classes

/// `Re(z Q'(z)/Q(z)) > 0` on the ladder, with the limit value 1 at the origin.
pub fn starlike_check<T: Real>(q: &dyn AnalyticMap<T>, cfg: &ProbeConfig) -> Result<ScanReport<T>> {
    cfg.validate()?;
    let z0 = Complex::new(T::zero(), T::zero());
    let q0 = q.eval(z0).norm();
    if q0.as_f64() > cfg.tol {
        return Err(Error::QNotVanishingAtOrigin(q0.as_f64()));
    }
    if !(q.d1(z0).norm().as_f64() > cfg.tol) {
        return Err(Error::DegenerateDerivative);
    }
    Ok(scan_min_re(|z| z * q.d1(z) / q.eval(z), cfg))
}

/// `Re(1 + z q''(z)/q'(z)) > 0` on the ladder.
pub fn convex_check<T: Real>(q: &dyn AnalyticMap<T>, cfg: &ProbeConfig) -> Result<ScanReport<T>> {
    cfg.validate()?;
    let z0 = Complex::new(T::zero(), T::zero());
    if !(q.d1(z0).norm().as_f64() > cfg.tol) {
        return Err(Error::DegenerateDerivative);
    }
    Ok(scan_min_re(|z| z * q.d2(z) / q.d1(z) + T::one(), cfg))
}
