//! The operator `F[f] = (f'/(p z^{p-1}))^eta (z^p/f)^mu`, the differential
//! expressions built on it, and the spirallike / Robertson class functionals.

use num_complex::Complex;

use crate::disk::{scan_min_re, ProbeConfig, Status};
use crate::error::{Error, Result};
use crate::scalar::{is_finite, on_branch_cut, principal_pow, Real};
use crate::series::Series;
use crate::zoo::{AnalyticMap, PValentAnalytic};

/// Smallest base modulus accepted by the principal powers.
const EPS_BASE: f64 = 1e-300;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OperatorParams<T> {
    pub eta: Complex<T>,
    pub mu: Complex<T>,
    pub gamma: Complex<T>,
    pub sigma: Complex<T>,
    pub p: u32,
}

impl<T: Real> OperatorParams<T> {
    /// `gamma = sigma = 1`.
    pub fn new(p: u32, eta: Complex<T>, mu: Complex<T>) -> Self {
        let one = Complex::new(T::one(), T::zero());
        Self {
            eta,
            mu,
            gamma: one,
            sigma: one,
            p,
        }
    }

    pub fn with_gamma(mut self, gamma: Complex<T>) -> Self {
        self.gamma = gamma;
        self
    }

    pub fn with_sigma(mut self, sigma: Complex<T>) -> Self {
        self.sigma = sigma;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidParameter("valence p must be positive".into()));
        }
        if self.eta.norm() == T::zero() && self.mu.norm() == T::zero() {
            return Err(Error::InvalidParameter("(eta, mu) must not both vanish".into()));
        }
        if ![self.eta, self.mu, self.gamma, self.sigma].iter().all(|&w| is_finite(w)) {
            return Err(Error::NonFinite("operator parameters"));
        }
        Ok(())
    }

    /// Additionally requires `gamma != 0`.
    pub fn validate_with_gamma(&self) -> Result<()> {
        self.validate()?;
        if self.gamma.norm() == T::zero() {
            return Err(Error::InvalidParameter("gamma must be nonzero".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassParams<T> {
    pub p: u32,
    /// `lambda`, with `|lambda| < pi/2`.
    pub spiral_angle: T,
    /// Type, `0 <= alpha < 1`.
    pub alpha: T,
    /// Complex order, nonzero.
    pub b: Complex<T>,
}

impl<T: Real> ClassParams<T> {
    pub fn new(p: u32, spiral_angle: T, alpha: T, b: Complex<T>) -> Result<Self> {
        let c = Self {
            p,
            spiral_angle,
            alpha,
            b,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p == 0 {
            return Err(Error::InvalidParameter("valence p must be positive".into()));
        }
        if !(self.spiral_angle.abs() < T::FRAC_PI_2()) {
            return Err(Error::InvalidParameter(format!(
                "need |lambda| < pi/2, got {}",
                self.spiral_angle
            )));
        }
        if !(T::zero() <= self.alpha && self.alpha < T::one()) {
            return Err(Error::InvalidParameter(format!("need 0 <= alpha < 1, got {}", self.alpha)));
        }
        if !(self.b.norm() > T::zero()) {
            return Err(Error::InvalidParameter("complex order b must be nonzero".into()));
        }
        Ok(())
    }
}

fn is_origin<T: Real>(z: Complex<T>) -> bool {
    z.re == T::zero() && z.im == T::zero()
}

fn is_integer<T: Real>(s: Complex<T>) -> bool {
    s.im == T::zero() && s.re == s.re.round()
}

/// Principal `base^s`, rejecting bases on the cut when `s` is not an integer.
fn checked_pow<T: Real>(base: Complex<T>, s: Complex<T>) -> Result<Complex<T>> {
    if !is_finite(base) {
        return Err(Error::NonFinite("operator base"));
    }
    if is_origin(s) {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    if base.norm() <= T::lit(EPS_BASE) {
        return Err(Error::VanishingBase);
    }
    if !is_integer(s) && on_branch_cut(base, T::epsilon()) {
        return Err(Error::BaseOnBranchCut {
            re: base.re.as_f64(),
            im: base.im.as_f64(),
        });
    }
    Ok(principal_pow(base, s))
}

/// `F[f](z)`; exactly 1 at the origin.
pub fn f_op<T: Real>(f: &dyn PValentAnalytic<T>, params: &OperatorParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    if is_origin(z) {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    let (s, _) = f.slope(z);
    let (qt, _) = f.quotient(z);
    if qt.norm() <= T::lit(EPS_BASE) {
        return Err(Error::VanishingBase);
    }
    Ok(checked_pow(s, params.eta)? * checked_pow(qt.inv(), params.mu)?)
}

/// `z F'(z)/F(z) = eta z s'/s - mu z g'/g` with `s = f'/(p z^{p-1})`, `g = f/z^p`.
pub fn log_derivative_f_op<T: Real>(
    f: &dyn PValentAnalytic<T>,
    params: &OperatorParams<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let (s, ds) = f.slope(z);
    let (g, dg) = f.quotient(z);
    if s.norm() <= T::lit(EPS_BASE) || g.norm() <= T::lit(EPS_BASE) {
        return Err(Error::VanishingBase);
    }
    Ok(params.eta * z * ds / s - params.mu * z * dg / g)
}

/// `eta (1 - p + z f''/f') + mu (p - z f'/f)`, evaluated from `f, f', f''`.
fn bracket<T: Real>(f: &dyn PValentAnalytic<T>, params: &OperatorParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    let (v, d1, d2) = (f.eval(z), f.d1(z), f.d2(z));
    if !(d1.norm() > T::zero()) || !is_finite(d1) {
        return Err(Error::DerivativeVanishes);
    }
    if !(v.norm() > T::zero()) || !is_finite(v) {
        return Err(Error::VanishingBase);
    }
    let p = T::from_u32(params.p).unwrap();
    Ok(params.eta * (z * d2 / d1 + (T::one() - p)) + params.mu * (-(z * d1 / v) + p))
}

/// `1 + gamma [eta (1 - p + z f''/f') + mu (p - z f'/f)]`, equal to
/// `1 + gamma z F'/F`; 1 at the origin.
pub fn log_derivative_lhs<T: Real>(
    f: &dyn PValentAnalytic<T>,
    params: &OperatorParams<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    if is_origin(z) {
        return Ok(Complex::new(T::one(), T::zero()));
    }
    Ok(params.gamma * bracket(f, params, z)? + T::one())
}

/// `Psi(z) = F(z) {sigma + gamma [...]}`, equal to `sigma F + gamma z F'`;
/// `sigma` at the origin.
pub fn psi_op<T: Real>(f: &dyn PValentAnalytic<T>, params: &OperatorParams<T>, z: Complex<T>) -> Result<Complex<T>> {
    if is_origin(z) {
        return Ok(params.sigma);
    }
    Ok(f_op(f, params, z)? * (params.sigma + params.gamma * bracket(f, params, z)?))
}

/// `1 + gamma z q'/q`.
pub fn log_dominant_rhs<T: Real>(q: &dyn AnalyticMap<T>, gamma: Complex<T>, z: Complex<T>) -> Result<Complex<T>> {
    let v = q.eval(z);
    if !(v.norm() > T::zero()) {
        return Err(Error::QVanishes);
    }
    Ok(gamma * z * q.d1(z) / v + T::one())
}

/// `sigma q + gamma z q'`.
pub fn linear_dominant_rhs<T: Real>(
    q: &dyn AnalyticMap<T>,
    sigma: Complex<T>,
    gamma: Complex<T>,
    z: Complex<T>,
) -> Complex<T> {
    sigma * q.eval(z) + gamma * z * q.d1(z)
}

/// Taylor expansion of `F[f]` at the origin.
pub fn operator_series<T: Real>(
    f: &dyn PValentAnalytic<T>,
    params: &OperatorParams<T>,
    order: usize,
) -> Result<Series<T>> {
    let s = f.slope_series(order)?.pow(params.eta)?;
    let g = f.quotient_series(order)?.recip()?.pow(params.mu)?;
    Ok(s.mul(&g))
}

/// `F[f]` as an [`AnalyticMap`]; evaluation failures surface as NaN.
pub struct OperatorMap<'a, T: Real> {
    f: &'a dyn PValentAnalytic<T>,
    params: OperatorParams<T>,
}

impl<'a, T: Real> OperatorMap<'a, T> {
    pub fn new(f: &'a dyn PValentAnalytic<T>, params: OperatorParams<T>) -> Self {
        Self { f, params }
    }
}

fn nan<T: Real>() -> Complex<T> {
    Complex::new(T::nan(), T::nan())
}

impl<T: Real> AnalyticMap<T> for OperatorMap<'_, T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        f_op(self.f, &self.params, z).unwrap_or_else(|_| nan())
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        if is_origin(z) {
            let (_, ds) = self.f.slope(z);
            let (_, dg) = self.f.quotient(z);
            return self.params.eta * ds - self.params.mu * dg;
        }
        match (f_op(self.f, &self.params, z), log_derivative_f_op(self.f, &self.params, z)) {
            (Ok(v), Ok(l)) => v * l / z,
            _ => nan(),
        }
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        let h = T::lit(1e-4);
        let e = Complex::new(h, T::zero());
        (self.d1(z + e) - self.d1(z - e)) / (h + h)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        operator_series(self.f, &self.params, order)
    }
    fn descriptor(&self) -> String {
        format!("F[{}]", self.f.descriptor())
    }
}

/// `Psi` as an [`AnalyticMap`], with derivatives by finite differences.
pub struct PsiMap<'a, T: Real> {
    f: &'a dyn PValentAnalytic<T>,
    params: OperatorParams<T>,
}

impl<'a, T: Real> PsiMap<'a, T> {
    pub fn new(f: &'a dyn PValentAnalytic<T>, params: OperatorParams<T>) -> Self {
        Self { f, params }
    }
}

impl<T: Real> AnalyticMap<T> for PsiMap<'_, T> {
    fn eval(&self, z: Complex<T>) -> Complex<T> {
        psi_op(self.f, &self.params, z).unwrap_or_else(|_| nan())
    }
    fn d1(&self, z: Complex<T>) -> Complex<T> {
        let h = T::lit(1e-5);
        let e = Complex::new(h, T::zero());
        (self.eval(z + e) - self.eval(z - e)) / (h + h)
    }
    fn d2(&self, z: Complex<T>) -> Complex<T> {
        let h = T::lit(1e-4);
        let e = Complex::new(h, T::zero());
        (self.eval(z + e) - self.eval(z) * T::lit(2.0) + self.eval(z - e)) / (h * h)
    }
    fn series_at_origin(&self, order: usize) -> Result<Series<T>> {
        // sigma F + gamma z F'
        let f = operator_series(self.f, &self.params, order)?;
        let zf = Series::variable(order).mul(&f.derivative());
        Ok(f.scale(self.params.sigma).add(&zf.scale(self.params.gamma)))
    }
    fn descriptor(&self) -> String {
        format!("Psi[{}]", self.f.descriptor())
    }
}

fn class_normalize<T: Real>(cls: &ClassParams<T>, x: Complex<T>) -> Complex<T> {
    let (s, c) = cls.spiral_angle.sin_cos();
    let rot = Complex::new(c, s);
    (rot * x - (-cls.b + T::one()) * c - Complex::new(T::zero(), s)) / (cls.b * c)
}

/// `(1/(b cos l)) [e^{il} z f'/(p f) - (1 - b) cos l - i sin l]`.
pub fn spirallike_functional<T: Real>(
    f: &dyn PValentAnalytic<T>,
    cls: &ClassParams<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let (g, dg) = f.quotient(z);
    if !(g.norm() > T::zero()) || !is_finite(g) {
        return Err(Error::VanishingDenominator);
    }
    let p = T::from_u32(cls.p).unwrap();
    // z f'/f = p + z g'/g
    let x = (z * dg / g + p) / p;
    Ok(class_normalize(cls, x))
}

/// Same normalization applied to `(1/p)(1 + z f''/f')`.
pub fn robertson_functional<T: Real>(
    f: &dyn PValentAnalytic<T>,
    cls: &ClassParams<T>,
    z: Complex<T>,
) -> Result<Complex<T>> {
    let (s, ds) = f.slope(z);
    if !(s.norm() > T::zero()) || !is_finite(s) {
        return Err(Error::VanishingDenominator);
    }
    let p = T::from_u32(cls.p).unwrap();
    // 1 + z f''/f' = p + z s'/s
    let x = (z * ds / s + p) / p;
    Ok(class_normalize(cls, x))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClassKind {
    Spirallike,
    Robertson,
}

impl std::str::FromStr for ClassKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "spirallike" => Ok(ClassKind::Spirallike),
            "robertson" => Ok(ClassKind::Robertson),
            other => Err(Error::Usage(format!("unknown class '{other}' (spirallike|robertson)"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct MembershipReport {
    pub status: Status,
    /// `min Re(functional) - alpha`.
    pub margin: f64,
    pub min_re: f64,
    pub at: Complex<f64>,
}

/// Compares the ladder minimum of `Re(functional)` with `alpha`.
pub fn class_membership<T: Real>(
    f: &dyn PValentAnalytic<T>,
    cls: &ClassParams<T>,
    which: ClassKind,
    cfg: &ProbeConfig,
) -> Result<MembershipReport> {
    cfg.validate()?;
    cls.validate()?;
    if f.valence() != cls.p {
        return Err(Error::InvalidParameter(format!(
            "function valence {} differs from class valence {}",
            f.valence(),
            cls.p
        )));
    }
    let functional = |z: Complex<T>| {
        let r = match which {
            ClassKind::Spirallike => spirallike_functional(f, cls, z),
            ClassKind::Robertson => robertson_functional(f, cls, z),
        };
        r.unwrap_or_else(|_| nan())
    };
    let scan = scan_min_re(functional, cfg);
    let min_re = scan.min.as_f64();
    let margin = min_re - cls.alpha.as_f64();
    Ok(MembershipReport {
        status: Status::from_margin(margin, cfg.tol),
        margin,
        min_re,
        at: Complex::new(scan.at.re.as_f64(), scan.at.im.as_f64()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    fn c(re: f64, im: f64) -> num_complex::Complex<f64> {
        num_complex::Complex::new(re, im)
    }
    use crate::zoo::{make_koebe_type, make_pvalent, PValentMap, PValentSpec};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    type C = Complex<f64>;

    fn poly(p: u32, tail: &[(usize, C)]) -> PValentMap<f64> {
        let mut s = PValentSpec::new(p);
        for &(k, a) in tail {
            s = s.with(k, a);
        }
        make_pvalent(&s).unwrap()
    }

    fn rand_c(rng: &mut ChaCha8Rng, r: f64) -> C {
        C::from_polar(r * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..std::f64::consts::TAU))
    }

    /// Central difference of `F` along the real axis.
    fn fd(f: &dyn Fn(C) -> C, z: C) -> C {
        let h = 1e-5;
        (f(z + h) * 8.0 - f(z - h) * 8.0 - f(z + 2.0 * h) + f(z - 2.0 * h)) / (12.0 * h)
    }

    #[test]
    fn monomial_operator_is_one() {
        for p in 1..=3 {
            let f = poly(p, &[]);
            let prm = OperatorParams::new(p, c(0.7, 0.2), c(-1.1, 0.5));
            for z in [c(0.3, 0.4), c(-0.8, 0.1), c(0.0, 0.0)] {
                assert!((f_op(&f, &prm, z).unwrap() - 1.0).norm() < 1e-14);
                assert!((log_derivative_lhs(&f, &prm, z).unwrap() - 1.0).norm() < 1e-14);
                assert!((psi_op(&f, &prm, z).unwrap() - prm.sigma).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn first_coefficient_examples() {
        let f = poly(2, &[(3, c(1.0, 0.0))]);
        let prm = OperatorParams::new(2, c(1.0, 0.0), c(1.0, 0.0));
        let s = operator_series(&f, &prm, 3).unwrap();
        assert!((s.coeff(0) - 1.0).norm() < 1e-15);
        assert!((s.coeff(1) - 0.5).norm() < 1e-12);
        let f = poly(1, &[(2, c(1.0, 0.0))]);
        let prm = OperatorParams::new(1, c(1.0, 0.0), c(0.0, 0.0));
        assert!((f_op(&f, &prm, c(0.1, 0.0)).unwrap() - 1.2).norm() < 1e-14);
    }

    #[test]
    fn first_coefficient_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let p = rng.gen_range(1..=3u32);
            let a = rand_c(&mut rng, 0.5);
            let prm = OperatorParams::new(p, rand_c(&mut rng, 2.0), rand_c(&mut rng, 2.0));
            let f = poly(p, &[(p as usize + 1, a), (p as usize + 2, rand_c(&mut rng, 0.1))]);
            let s = operator_series(&f, &prm, 8).unwrap();
            let want = (prm.eta - prm.mu + prm.eta / p as f64) * a;
            assert!((s.coeff(1) - want).norm() < 1e-10);
            assert_eq!(s.coeff(0), c(1.0, 0.0));
        }
    }

    #[test]
    fn series_matches_evaluator() {
        let f = poly(2, &[(3, c(0.1, 0.05)), (5, c(-0.02, 0.01))]);
        let prm = OperatorParams::new(2, c(0.5, 0.3), c(-0.7, 0.0));
        let s = operator_series(&f, &prm, 30).unwrap();
        let z = c(0.25, -0.1);
        assert!((s.eval(z) - f_op(&f, &prm, z).unwrap()).norm() < 1e-12);
    }

    #[test]
    fn log_derivative_identities_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..100 {
            let p = rng.gen_range(1..=3u32);
            let tail: Vec<(usize, C)> = (1..=3)
                .map(|j| {
                    let k = p as usize + j;
                    (k, rand_c(&mut rng, 0.3 / (k * k) as f64))
                })
                .collect();
            let f = poly(p, &tail);
            let prm = OperatorParams::new(p, rand_c(&mut rng, 1.5), rand_c(&mut rng, 1.5))
                .with_gamma(rand_c(&mut rng, 2.0))
                .with_sigma(rand_c(&mut rng, 2.0));
            let z = rand_c(&mut rng, 0.9);
            let big_f = |w: C| f_op(&f, &prm, w).unwrap();
            let fv = big_f(z);
            let dfv = fd(&big_f, z);
            let lhs = log_derivative_lhs(&f, &prm, z).unwrap();
            assert!((lhs - (prm.gamma * z * dfv / fv + 1.0)).norm() < 1e-8, "lhs at {z}");
            let psi = psi_op(&f, &prm, z).unwrap();
            assert!((psi - (prm.sigma * fv + prm.gamma * z * dfv)).norm() < 1e-8, "psi at {z}");
            let m = OperatorMap::new(&f, prm);
            assert!((m.d1(z) - dfv).norm() < 1e-8);
        }
    }

    #[test]
    fn closed_form_lhs_example() {
        // f = z/(1-z), eta = 0, mu = 1, gamma = 1: 1 + (1 - 1/(1-z)) vanishes at z = 1/2
        let f = make_koebe_type(1, c(-1.0, 0.0)).unwrap();
        let prm = OperatorParams::new(1, c(0.0, 0.0), c(1.0, 0.0));
        let v = log_derivative_lhs(&f, &prm, c(0.5, 0.0)).unwrap();
        assert!(v.norm() < 1e-14);
        let z = c(0.3, 0.2);
        let v = log_derivative_lhs(&f, &prm, z).unwrap();
        assert!((v - (1.0 - z / (1.0 - z))).norm() < 1e-14);
    }

    #[test]
    fn psi_with_zero_sigma() {
        let f = poly(1, &[(2, c(0.3, 0.0))]);
        let prm = OperatorParams::new(1, c(1.0, 0.0), c(0.0, 0.0)).with_sigma(c(0.0, 0.0));
        assert_eq!(psi_op(&f, &prm, c(0.0, 0.0)).unwrap(), c(0.0, 0.0));
        // F = f' = 1 + 0.6 z, z F' = 0.6 z
        let z = c(0.4, 0.1);
        assert!((psi_op(&f, &prm, z).unwrap() - 0.6 * z).norm() < 1e-14);
    }

    #[test]
    fn branch_cut_and_vanishing_errors() {
        // f = z - 2 z^2 has f/z = 1 - 2z = -1 at z = 1
        let f = poly(1, &[(2, c(-2.0, 0.0))]);
        let prm = OperatorParams::new(1, c(0.0, 0.0), c(0.5, 0.0));
        assert!(matches!(f_op(&f, &prm, c(1.0, 0.0)), Err(Error::BaseOnBranchCut { .. })));
        assert_eq!(f_op(&f, &prm, c(0.5, 0.0)), Err(Error::VanishingBase));
        // integer exponents pass through the cut
        let prm = OperatorParams::new(1, c(0.0, 0.0), c(-1.0, 0.0));
        assert!((f_op(&f, &prm, c(1.0, 0.0)).unwrap() + 1.0).norm() < 1e-14);
        let q = crate::zoo::Polynomial::<f64>::from_real(&[1.0, 1.0]);
        assert_eq!(log_dominant_rhs(&q, c(1.0, 0.0), c(-1.0, 0.0)), Err(Error::QVanishes));
    }

    #[test]
    fn dominant_rhs_examples() {
        let one = crate::zoo::Polynomial::<f64>::from_real(&[1.0]);
        assert_eq!(log_dominant_rhs(&one, c(2.0, 1.0), c(0.3, 0.3)).unwrap(), c(1.0, 0.0));
        assert_eq!(linear_dominant_rhs(&one, c(0.7, 0.0), c(2.0, 0.0), c(0.3, 0.3)), c(0.7, 0.0));
        let hp = crate::zoo::make_moebius(1.0, -1.0).unwrap();
        let v = log_dominant_rhs(&hp, c(1.0, 0.0), c(0.5, 0.0)).unwrap();
        assert!((v - (1.0 + 4.0 / 3.0)).norm() < 1e-14);
        let e = crate::zoo::make_exp_line(c(1.0, 0.0)).unwrap();
        let g = c(0.7, -0.2);
        assert!((log_dominant_rhs(&e, g, c(0.3, 0.0)).unwrap() - (g * 0.3 + 1.0)).norm() < 1e-14);
        let (sigma, cc) = (c(1.2, 0.1), c(0.4, 0.3));
        let e = crate::zoo::make_exp_line(cc).unwrap();
        let z = c(0.2, -0.5);
        let want = (sigma + g * cc * z) * (cc * z).exp();
        assert!((linear_dominant_rhs(&e, sigma, g, z) - want).norm() < 1e-14);
        let (a, b) = (0.6, -0.3);
        let m = crate::zoo::make_moebius(a, b).unwrap();
        let want = sigma * (1.0 + a * z) / (1.0 + b * z) + g * (a - b) * z / ((1.0 + b * z) * (1.0 + b * z));
        assert!((linear_dominant_rhs(&m, sigma, g, z) - want).norm() < 1e-14);
    }

    #[test]
    fn specializations_reproduce_moebius_displays() {
        // eta = 0 or mu = 0 with gamma = 1 and a Moebius dominant: the
        // right side is 1 + (A - B) z/((1 + Az)(1 + Bz))
        let (a, b) = (0.8, -0.4);
        let q = crate::zoo::make_moebius(a, b).unwrap();
        let f = poly(2, &[(3, c(0.05, 0.02)), (4, c(-0.01, 0.0))]);
        for prm in [
            OperatorParams::new(2, c(0.0, 0.0), c(0.7, 0.1)),
            OperatorParams::new(2, c(1.3, -0.2), c(0.0, 0.0)),
        ] {
            for z in [c(0.2, 0.3), c(-0.6, 0.1)] {
                let rhs = log_dominant_rhs(&q, prm.gamma, z).unwrap();
                let disp = 1.0 + (a - b) * z / ((1.0 + a * z) * (1.0 + b * z));
                assert!((rhs - disp).norm() < 1e-10);
                // lhs by substitution into the displayed bracket
                let (v, d1, d2) = (f.eval(z), f.d1(z), f.d2(z));
                let disp_lhs = if prm.eta == c(0.0, 0.0) {
                    prm.mu * (2.0 - z * d1 / v) + 1.0
                } else {
                    prm.eta * (z * d2 / d1 - 1.0) + 1.0
                };
                assert!((log_derivative_lhs(&f, &prm, z).unwrap() - disp_lhs).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn class_functional_examples() {
        let cfg = ProbeConfig::default();
        for p in 1..=3u32 {
            let f = poly(p, &[]);
            let cls = ClassParams::new(p, 0.4, 0.2, c(0.5, -0.3)).unwrap();
            for z in [c(0.1, 0.2), c(-0.7, 0.3)] {
                assert!((spirallike_functional(&f, &cls, z).unwrap() - 1.0).norm() < 1e-14);
                assert!((robertson_functional(&f, &cls, z).unwrap() - 1.0).norm() < 1e-14);
            }
            for which in [ClassKind::Spirallike, ClassKind::Robertson] {
                let r = class_membership(&f, &cls, which, &cfg).unwrap();
                assert_eq!(r.status, Status::Holds);
                assert!((r.margin - 0.8).abs() < 1e-14);
            }
        }
        // Koebe: (1+z)/(1-z)
        let koebe = make_koebe_type(1, c(-2.0, 0.0)).unwrap();
        let cls = ClassParams::new(1, 0.0, 0.0, c(1.0, 0.0)).unwrap();
        let z = c(0.3, -0.4);
        let v = spirallike_functional(&koebe, &cls, z).unwrap();
        assert!((v - (1.0 + z) / (1.0 - z)).norm() < 1e-13);
        let r = class_membership(&koebe, &cls, ClassKind::Spirallike, &cfg).unwrap();
        assert_ne!(r.status, Status::Fails);
        assert!(r.margin < 1e-3);
        // z/(1-z) is the Robertson extremal
        let f = make_koebe_type(1, c(-1.0, 0.0)).unwrap();
        let v = robertson_functional(&f, &cls, z).unwrap();
        assert!((v - (1.0 + z) / (1.0 - z)).norm() < 1e-13);
    }

    #[test]
    fn membership_threshold_at_one_half() {
        // z/(1-z): z f'/f = 1/(1-z), min Re -> 1/2
        let cfg = ProbeConfig::default();
        let f = crate::zoo::make_koebe_type(1, c(-1.0, 0.0)).unwrap();
        let below = ClassParams::new(1, 0.0, 0.45, c(1.0, 0.0)).unwrap();
        let above = ClassParams::new(1, 0.0, 0.55, c(1.0, 0.0)).unwrap();
        assert_eq!(class_membership(&f, &below, ClassKind::Spirallike, &cfg).unwrap().status, Status::Holds);
        assert_eq!(class_membership(&f, &above, ClassKind::Spirallike, &cfg).unwrap().status, Status::Fails);
    }

    #[test]
    fn class_reduces_to_classical() {
        // lambda = 0, b = 1: the functional is z f'/(p f)
        let f = poly(2, &[(3, c(0.2, 0.1)), (4, c(0.05, 0.0))]);
        let cls = ClassParams::new(2, 0.0, 0.0, c(1.0, 0.0)).unwrap();
        let z = c(0.4, 0.3);
        let direct = z * f.d1(z) / (2.0 * f.eval(z));
        assert!((spirallike_functional(&f, &cls, z).unwrap() - direct).norm() < 1e-13);
        let direct = (1.0 + z * f.d2(z) / f.d1(z)) / 2.0;
        assert!((robertson_functional(&f, &cls, z).unwrap() - direct).norm() < 1e-13);
    }

    #[test]
    fn f32_operator() {
        let mut s = PValentSpec::<f32>::new(2);
        s = s.with(3, Complex::new(1.0, 0.0));
        let f = make_pvalent(&s).unwrap();
        let prm = OperatorParams::new(2, Complex::new(1.0f32, 0.0), Complex::new(1.0, 0.0));
        let ser = operator_series(&f, &prm, 4).unwrap();
        assert!((ser.coeff(1).re - 0.5).abs() < 1e-5);
    }
}
