//! Closed-form analytic maps of the unit disk.
//!
//! Every map exposes its value and first two derivatives in closed form plus a
//! Taylor expansion at the origin. Boundary scans near `|z| = 1` rely on the
//! closed forms, never on the truncated series.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::lemmas::in_royster_region;
use crate::scalar::{principal_pow, Real};
use crate::series::Series;

/// Analytic function object on the open unit disk.
pub trait AnalyticMap<T: Real>: Send + Sync {
    fn eval(&self, z: Complex<T>) -> Complex<T>;
    fn d1(&self, z: Complex<T>) -> Complex<T>;
    fn d2(&self, z: Complex<T>) -> Complex<T>;
    fn series_at_origin(&self, order: usize) -> Result<Series<T>>;
    fn descriptor(&self) -> String;

    /// Analytic reason the map is univalent on the disk, when one is known.
    fn univalence_certificate(&self) -> Option<String> {
        None
    }
}

impl<T: Real, M: AnalyticMap<T> + ?Sized> AnalyticMap<T> for Box<M> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        (**self).eval(z)
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        (**self).d1(z)
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        (**self).d2(z)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        (**self).series_at_origin(order)
    }
    fn descriptor(&self) -> String {
        (**self).descriptor()
    }
    fn univalence_certificate(&self) -> Option<String> {
        (**self).univalence_certificate()
    }
}

impl<T: Real, M: AnalyticMap<T> + ?Sized> AnalyticMap<T> for Arc<M> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        (**self).eval(z)
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        (**self).d1(z)
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        (**self).d2(z)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        (**self).series_at_origin(order)
    }
    fn descriptor(&self) -> String {
        (**self).descriptor()
    }
    fn univalence_certificate(&self) -> Option<String> {
        (**self).univalence_certificate()
    }
}

/// A p-valent map `f(z) = z^p + ...` with access to the normalized forms
/// `f(z)/z^p` and `f'(z)/(p z^{p-1})`, both equal to 1 at the origin.
pub trait PValentAnalytic<T: Real>: AnalyticMap<T> {
    fn valence(&self) -> u32;
    /// `f(z)/z^p` and its derivative.
    fn quotient(&self, z: Complex<T>) -> (Complex<T>, Complex<T>);
    /// `f'(z)/(p z^{p-1})` and its derivative.
    fn slope(&self, z: Complex<T>) -> (Complex<T>, Complex<T>);
    fn quotient_series(&self, order: usize) -> Result<Series<T>>;
    fn slope_series(&self, order: usize) -> Result<Series<T>>;
}

fn zero<T: Real>() -> Complex<T> {
    Complex::new(T::zero(), T::zero())
}

fn one<T: Real>() -> Complex<T> {
    Complex::new(T::one(), T::zero())
}

fn real<T: Real>(x: T) -> Complex<T> {
    Complex::new(x, T::zero())
}

/// DSL rendering of a complex literal, `<re>+<im>i`.
pub fn fmt_complex<T: Real>(w: Complex<T>) -> String {
    if w.im < T::zero() {
        format!("{}-{}i", w.re, -w.im)
    } else {
        format!("{}+{}i", w.re, w.im)
    }
}

/// Value, first and second derivative of a polynomial by Horner's scheme.
pub fn poly_eval3<T: Real>(coeffs: &[Complex<T>], z: Complex<T>) -> [Complex<T>; 3] {
    let (mut p, mut dp, mut ddp) = (zero::<T>(), zero::<T>(), zero::<T>());
    for &c in coeffs.iter().rev() {
        ddp = ddp * z + dp * T::lit(2.0);
        dp = dp * z + p;
        p = p * z + c;
    }
    [p, dp, ddp]
}

// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq)]
pub struct Polynomial<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Polynomial<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Self {
        assert!(!coeffs.is_empty(), "polynomial needs a coefficient");
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        Self::new(coeffs.iter().map(|&r| real(T::lit(r))).collect())
    }

    pub fn identity() -> Self {
        Self::from_real(&[0.0, 1.0])
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.norm() != T::zero())
            .unwrap_or(0)
    }
}

impl<T: Real> AnalyticMap<T> for Polynomial<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        poly_eval3(&self.coeffs, z)[0]
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        poly_eval3(&self.coeffs, z)[1]
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        poly_eval3(&self.coeffs, z)[2]
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&self.coeffs, order)
    }
    fn descriptor(&self) -> String {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| c.norm() != T::zero())
            .map(|(k, c)| format!("({})z^{k}", fmt_complex(*c)))
            .collect();
        format!("polynomial:{}", terms.join("+"))
    }
    fn univalence_certificate(&self) -> Option<String> {
        (self.degree() == 1).then(|| "affine map".to_string())
    }
}

// ---------------------------------------------------------------------------

/// Parameter-order convention for `(1+Az)/(1+Bz)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MoebiusConvention {
    /// `-1 <= B < A <= 1`.
    BBelowA,
    /// `-1 <= A < B <= 1`.
    ABelowB,
}

impl fmt::Display for MoebiusConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoebiusConvention::BBelowA => f.write_str("-1<=B<A<=1"),
            MoebiusConvention::ABelowB => f.write_str("-1<=A<B<=1"),
        }
    }
}

/// `q(z) = (1 + A z) / (1 + B z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moebius<T> {
    pub a: T,
    pub b: T,
    pub convention: MoebiusConvention,
}

pub fn make_moebius<T: Real>(a: T, b: T) -> Result<Moebius<T>> {
    if !(-T::one() <= b && b < a && a <= T::one()) {
        return Err(Error::ParameterOrderViolated(format!(
            "-1 <= B < A <= 1, got A={a}, B={b}"
        )));
    }
    Ok(Moebius {
        a,
        b,
        convention: MoebiusConvention::BBelowA,
    })
}

/// Same map under the reversed ordering `-1 <= A < B <= 1`.
pub fn make_moebius_reversed<T: Real>(a: T, b: T) -> Result<Moebius<T>> {
    if !(-T::one() <= a && a < b && b <= T::one()) {
        return Err(Error::ParameterOrderViolated(format!(
            "-1 <= A < B <= 1, got A={a}, B={b}"
        )));
    }
    Ok(Moebius {
        a,
        b,
        convention: MoebiusConvention::ABelowB,
    })
}

impl<T: Real> AnalyticMap<T> for Moebius<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        (z * self.a + T::one()) / (z * self.b + T::one())
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        let den = z * self.b + T::one();
        real(self.a - self.b) / (den * den)
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        let den = z * self.b + T::one();
        real(T::lit(-2.0) * self.b * (self.a - self.b)) / (den * den * den)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        let num = Series::padded(&[one(), real(self.a)], order)?;
        let den = Series::padded(&[one(), real(self.b)], order)?;
        num.div(&den)
    }
    fn descriptor(&self) -> String {
        format!("moebius:A={},B={}", self.a, self.b)
    }
    fn univalence_certificate(&self) -> Option<String> {
        (self.a != self.b).then(|| format!("Moebius map with A != B ({})", self.convention))
    }
}

// ---------------------------------------------------------------------------

/// `q(z) = (1 + B z)^lambda`, principal branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BinomialPower<T> {
    pub b: T,
    pub lambda: Complex<T>,
}

pub fn make_binomial_power<T: Real>(b: T, lambda: Complex<T>) -> Result<BinomialPower<T>> {
    if !(-T::one() <= b && b <= T::one()) {
        return Err(Error::InvalidParameter(format!("need -1 <= B <= 1, got {b}")));
    }
    if b == T::zero() {
        return Err(Error::ZeroB);
    }
    if lambda.norm() == T::zero() {
        return Err(Error::ZeroLambda);
    }
    Ok(BinomialPower { b, lambda })
}

impl<T: Real> AnalyticMap<T> for BinomialPower<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        principal_pow(z * self.b + T::one(), self.lambda)
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        let base = z * self.b + T::one();
        self.lambda * self.b * principal_pow(base, self.lambda - T::one())
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        let base = z * self.b + T::one();
        self.lambda * (self.lambda - T::one()) * self.b * self.b
            * principal_pow(base, self.lambda - T::lit(2.0))
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&[one(), real(self.b)], order)?.pow(self.lambda)
    }
    fn descriptor(&self) -> String {
        format!("binpow:B={},lam={}", self.b, fmt_complex(self.lambda))
    }
    fn univalence_certificate(&self) -> Option<String> {
        in_royster_region(self.lambda)
            .then(|| format!("lambda={} in the Royster region", fmt_complex(self.lambda)))
    }
}

// ---------------------------------------------------------------------------

/// `q(z) = e^{C z}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExpLine<T> {
    pub c: Complex<T>,
}

pub fn make_exp_line<T: Real>(c: Complex<T>) -> Result<ExpLine<T>> {
    if !(c.norm() < T::PI()) {
        return Err(Error::COutOfRange(c.norm().as_f64()));
    }
    Ok(ExpLine { c })
}

impl<T: Real> AnalyticMap<T> for ExpLine<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        (self.c * z).exp()
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        self.c * (self.c * z).exp()
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        self.c * self.c * (self.c * z).exp()
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&[zero(), self.c], order)?.exp()
    }
    fn descriptor(&self) -> String {
        format!("expline:C={}", fmt_complex(self.c))
    }
    fn univalence_certificate(&self) -> Option<String> {
        (self.c.norm() < T::PI()).then(|| "e^{Cz} with |C| < pi".to_string())
    }
}

// ---------------------------------------------------------------------------

/// `q(z) = (1 - z)^{-kappa}` with `kappa = 2 p a b (1 - alpha) e^{-i lambda} cos(lambda)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpiralPower<T> {
    pub p: u32,
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub alpha: T,
    pub spiral_angle: T,
    /// `kappa`; the map is `(1-z)^{-kappa}`.
    pub kappa: Complex<T>,
    /// Whether `kappa` lies in the Royster region. Outside it the map is not
    /// univalent; this is reported, not fatal.
    pub in_royster_region: bool,
}

/// Exponent `2 p a b (1 - alpha) e^{-i lambda} cos(lambda)`.
pub fn spiral_exponent<T: Real>(
    p: u32,
    a: Complex<T>,
    b: Complex<T>,
    alpha: T,
    spiral_angle: T,
) -> Complex<T> {
    let rot = Complex::new(spiral_angle.cos(), -spiral_angle.sin());
    a * b * rot * (T::lit(2.0) * T::from_u32(p).unwrap() * (T::one() - alpha) * spiral_angle.cos())
}

pub fn make_spiral_power<T: Real>(
    p: u32,
    a: Complex<T>,
    b: Complex<T>,
    alpha: T,
    spiral_angle: T,
) -> Result<SpiralPower<T>> {
    if p == 0 {
        return Err(Error::InvalidParameter("valence p must be positive".into()));
    }
    if !(T::zero() <= alpha && alpha <= T::one()) {
        return Err(Error::InvalidParameter(format!("need 0 <= alpha < 1, got {alpha}")));
    }
    if !(spiral_angle.abs() < T::FRAC_PI_2()) {
        return Err(Error::InvalidParameter(format!(
            "need |lambda| < pi/2, got {spiral_angle}"
        )));
    }
    if b.norm() == T::zero() {
        return Err(Error::InvalidParameter("complex order b must be nonzero".into()));
    }
    let kappa = spiral_exponent(p, a, b, alpha, spiral_angle);
    // alpha = 1 is admitted only as the degenerate limit q = 1.
    let in_royster_region = kappa.norm() != T::zero() && in_royster_region(kappa);
    Ok(SpiralPower {
        p,
        a,
        b,
        alpha,
        spiral_angle,
        kappa,
        in_royster_region,
    })
}

impl<T: Real> SpiralPower<T> {
    fn one_minus_z_pow(&self, z: Complex<T>, shift: T) -> Complex<T> {
        principal_pow(one::<T>() - z, -self.kappa - shift)
    }
}

impl<T: Real> AnalyticMap<T> for SpiralPower<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.one_minus_z_pow(z, T::zero())
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        self.kappa * self.one_minus_z_pow(z, T::one())
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        self.kappa * (self.kappa + T::one()) * self.one_minus_z_pow(z, T::lit(2.0))
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&[one(), real(-T::one())], order)?.pow(-self.kappa)
    }
    fn descriptor(&self) -> String {
        format!(
            "spiralpow:p={},a={},b={},alpha={},lam={}",
            self.p,
            fmt_complex(self.a),
            fmt_complex(self.b),
            self.alpha,
            self.spiral_angle
        )
    }
    fn univalence_certificate(&self) -> Option<String> {
        // (1-z)^{-kappa} is univalent iff -kappa is in the region, which is symmetric.
        self.in_royster_region
            .then(|| format!("exponent {} in the Royster region", fmt_complex(self.kappa)))
    }
}

// ---------------------------------------------------------------------------

/// Family tag and parameters of a dominant.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DominantSpec<T> {
    Moebius { a: T, b: T },
    BinomialPower { b: T, lambda: Complex<T> },
    ExpLine { c: Complex<T> },
    SpiralPower { p: u32, a: Complex<T>, b: Complex<T>, alpha: T, spiral_angle: T },
}

impl<T: Real> DominantSpec<T> {
    pub fn build(&self) -> Result<Box<dyn AnalyticMap<T>>> {
        Ok(match *self {
            DominantSpec::Moebius { a, b } => Box::new(make_moebius(a, b)?),
            DominantSpec::BinomialPower { b, lambda } => Box::new(make_binomial_power(b, lambda)?),
            DominantSpec::ExpLine { c } => Box::new(make_exp_line(c)?),
            DominantSpec::SpiralPower { p, a, b, alpha, spiral_angle } => {
                Box::new(make_spiral_power(p, a, b, alpha, spiral_angle)?)
            }
        })
    }

    pub fn family(&self) -> &'static str {
        match self {
            DominantSpec::Moebius { .. } => "moebius",
            DominantSpec::BinomialPower { .. } => "binomial_power",
            DominantSpec::ExpLine { .. } => "exp_line",
            DominantSpec::SpiralPower { .. } => "spiral_power",
        }
    }
}

// ---------------------------------------------------------------------------

/// `f(z) = z^p + sum_{k>p} a_k z^k` with finitely many tail coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PValentSpec<T> {
    pub p: u32,
    pub tail: BTreeMap<usize, Complex<T>>,
}

impl<T: Real> PValentSpec<T> {
    pub fn new(p: u32) -> Self {
        Self {
            p,
            tail: BTreeMap::new(),
        }
    }

    pub fn with(mut self, k: usize, a: Complex<T>) -> Self {
        self.tail.insert(k, a);
        self
    }

    /// `sum |a_k|`; below 1 both normalized forms stay nonvanishing on the disk.
    pub fn tail_l1(&self) -> T {
        self.tail.values().fold(T::zero(), |s, a| s + a.norm())
    }
}

/// Polynomial p-valent map built from a [`PValentSpec`].
#[derive(Clone, Debug, PartialEq)]
pub struct PValentMap<T> {
    p: u32,
    /// Full coefficients of `f`.
    full: Vec<Complex<T>>,
    /// Coefficients of `f(z)/z^p`.
    quotient: Vec<Complex<T>>,
    /// Coefficients of `f'(z)/(p z^{p-1})`.
    slope: Vec<Complex<T>>,
}

pub fn make_pvalent<T: Real>(spec: &PValentSpec<T>) -> Result<PValentMap<T>> {
    let p = spec.p as usize;
    if p == 0 {
        return Err(Error::InvalidParameter("valence p must be positive".into()));
    }
    if let Some((&k, _)) = spec.tail.iter().find(|(&k, _)| k <= p) {
        return Err(Error::InvalidParameter(format!(
            "tail index {k} must exceed p = {p}"
        )));
    }
    if spec.tail.values().any(|a| !(a.re.is_finite() && a.im.is_finite())) {
        return Err(Error::NonFinite("p-valent tail"));
    }
    let top = spec.tail.keys().next_back().copied().unwrap_or(p);
    let mut full = vec![zero(); top + 1];
    full[p] = one();
    let mut quotient = vec![zero(); top - p + 1];
    quotient[0] = one();
    let mut slope = quotient.clone();
    let pp = T::from_usize(p).unwrap();
    for (&k, &a) in &spec.tail {
        full[k] = a;
        quotient[k - p] = a;
        slope[k - p] = a * (T::from_usize(k).unwrap() / pp);
    }
    Ok(PValentMap {
        p: spec.p,
        full,
        quotient,
        slope,
    })
}

impl<T: Real> AnalyticMap<T> for PValentMap<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        poly_eval3(&self.full, z)[0]
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        poly_eval3(&self.full, z)[1]
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        poly_eval3(&self.full, z)[2]
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&self.full, order)
    }
    fn descriptor(&self) -> String {
        let mut s = format!("poly:p={}", self.p);
        for (k, a) in self.full.iter().enumerate().skip(self.p as usize + 1) {
            if a.norm() != T::zero() {
                s.push_str(&format!(";a{k}={}", fmt_complex(*a)));
            }
        }
        s
    }
    fn univalence_certificate(&self) -> Option<String> {
        (self.p == 1 && self.full.len() == 2).then(|| "identity map".to_string())
    }
}

impl<T: Real> PValentAnalytic<T> for PValentMap<T> {
    fn valence(&self) -> u32 {
        self.p
    }
    fn quotient(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let [v, d, _] = poly_eval3(&self.quotient, z);
        (v, d)
    }
    fn slope(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let [v, d, _] = poly_eval3(&self.slope, z);
        (v, d)
    }
    fn quotient_series(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&self.quotient, order)
    }
    fn slope_series(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&self.slope, order)
    }
}

// ---------------------------------------------------------------------------

/// `f(z) = z^p (1 - z)^kappa`; `p = 1, kappa = -2` is the Koebe function and
/// `p = 1, kappa = -1` is `z/(1-z)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct KoebeType<T> {
    pub p: u32,
    pub kappa: Complex<T>,
}

pub fn make_koebe_type<T: Real>(p: u32, kappa: Complex<T>) -> Result<KoebeType<T>> {
    if p == 0 {
        return Err(Error::InvalidParameter("valence p must be positive".into()));
    }
    Ok(KoebeType { p, kappa })
}

impl<T: Real> KoebeType<T> {
    fn pp(&self) -> T {
        T::from_u32(self.p).unwrap()
    }

    /// `1 - (1 + kappa/p) z`
    fn linear(&self, z: Complex<T>) -> Complex<T> {
        one::<T>() - (self.kappa / self.pp() + T::one()) * z
    }

    fn zpow(&self, z: Complex<T>, k: i32) -> Complex<T> {
        z.powi(k)
    }
}

impl<T: Real> AnalyticMap<T> for KoebeType<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.zpow(z, self.p as i32) * self.quotient(z).0
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        self.zpow(z, self.p as i32 - 1) * self.slope(z).0 * self.pp()
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        let (s, ds) = self.slope(z);
        let p = self.pp();
        let lead = if self.p >= 2 {
            self.zpow(z, self.p as i32 - 2) * s * (p * (p - T::one()))
        } else {
            zero()
        };
        lead + self.zpow(z, self.p as i32 - 1) * ds * p
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        let q = self.quotient_series(order)?;
        let p = self.p as usize;
        let mut coeffs = vec![zero(); order + 1];
        for k in p..=order {
            coeffs[k] = q.coeff(k - p);
        }
        Series::new(coeffs)
    }
    fn descriptor(&self) -> String {
        format!("koebe:p={},kappa={}", self.p, fmt_complex(self.kappa))
    }
}

impl<T: Real> PValentAnalytic<T> for KoebeType<T> {
    fn valence(&self) -> u32 {
        self.p
    }
    fn quotient(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let w = one::<T>() - z;
        (
            principal_pow(w, self.kappa),
            -self.kappa * principal_pow(w, self.kappa - T::one()),
        )
    }
    fn slope(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let w = one::<T>() - z;
        let head = principal_pow(w, self.kappa - T::one());
        let lin = self.linear(z);
        let dhead = -(self.kappa - T::one()) * principal_pow(w, self.kappa - T::lit(2.0));
        let dlin = -(self.kappa / self.pp() + T::one());
        (head * lin, dhead * lin + head * dlin)
    }
    fn quotient_series(&self, order: usize) -> Result<Series<T>> {
        Series::padded(&[one(), real(-T::one())], order)?.pow(self.kappa)
    }
    fn slope_series(&self, order: usize) -> Result<Series<T>> {
        let head = Series::padded(&[one(), real(-T::one())], order)?.pow(self.kappa - T::one())?;
        let lin = Series::padded(&[one(), -(self.kappa / self.pp() + T::one())], order)?;
        Ok(head.mul(&lin))
    }
}

// ---------------------------------------------------------------------------

type Eval<T> = Arc<dyn Fn(Complex<T>) -> Complex<T> + Send + Sync>;

/// Map given only by an evaluator (optionally with an analytic first
/// derivative). Missing derivatives use fourth-order tangential finite
/// differences; the series comes from a trapezoidal Cauchy integral on `|z| = 1/2`.
#[derive(Clone)]
pub struct FnMap<T> {
    f: Eval<T>,
    df: Option<Eval<T>>,
    descriptor: String,
}

impl<T: Real> FnMap<T> {
    pub fn new(
        descriptor: impl Into<String>,
        f: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
    ) -> Self {
        Self {
            f: Arc::new(f),
            df: None,
            descriptor: descriptor.into(),
        }
    }

    pub fn with_derivative(
        mut self,
        df: impl Fn(Complex<T>) -> Complex<T> + Send + Sync + 'static,
    ) -> Self {
        self.df = Some(Arc::new(df));
        self
    }

    fn step(z: Complex<T>) -> (T, Complex<T>) {
        let r = z.norm();
        let h = T::lit(1e-3)
            .min((T::one() - r).abs() * T::lit(0.25))
            .max(T::lit(1e-5));
        let dir = if r > T::zero() {
            Complex::new(-z.im / r, z.re / r)
        } else {
            one()
        };
        (h, dir)
    }

    fn fd1(g: &dyn Fn(Complex<T>) -> Complex<T>, z: Complex<T>) -> Complex<T> {
        let (h, u) = Self::step(z);
        let s = u * h;
        let num = (g(z + s) - g(z - s)) * T::lit(8.0) - g(z + s * T::lit(2.0)) + g(z - s * T::lit(2.0));
        num / (s * T::lit(12.0))
    }
}

impl<T: Real> AnalyticMap<T> for FnMap<T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        (self.f)(z)
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        match &self.df {
            Some(df) => df(z),
            None => Self::fd1(&*self.f, z),
        }
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        match &self.df {
            Some(df) => Self::fd1(&**df, z),
            None => {
                let (h, u) = Self::step(z);
                let h = h * T::lit(5.0);
                let s = u * h;
                let g = &self.f;
                let two = T::lit(2.0);
                let num = (g(z + s) + g(z - s)) * T::lit(16.0)
                    - g(z + s * two)
                    - g(z - s * two)
                    - g(z) * T::lit(30.0);
                num / (s * s * T::lit(12.0))
            }
        }
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        let n = (4 * (order + 1)).max(128);
        let r = T::lit(0.5);
        let nn = T::from_usize(n).unwrap();
        let samples: Vec<Complex<T>> = (0..n)
            .map(|j| {
                let th = T::TAU() * T::from_usize(j).unwrap() / nn;
                (self.f)(Complex::from_polar(r, th))
            })
            .collect();
        let coeffs = (0..=order)
            .map(|k| {
                let mut acc = zero::<T>();
                for (j, &s) in samples.iter().enumerate() {
                    let th = -T::TAU() * T::from_usize((j * k) % n).unwrap() / nn;
                    acc = acc + s * Complex::from_polar(T::one(), th);
                }
                acc / (nn * r.powi(k as i32))
            })
            .collect();
        Series::new(coeffs)
    }
    fn descriptor(&self) -> String {
        self.descriptor.clone()
    }
}

impl<T> fmt::Debug for FnMap<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FnMap").field("descriptor", &self.descriptor).finish()
    }
}
