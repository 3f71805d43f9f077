//! Truncated Taylor series at the origin.
//!
//! A [`Series`] of order `N` stores `c_0, ..., c_N`. Binary operations truncate to
//! the smaller order. Logarithms and powers use the principal branch of the
//! constant term; constant terms on `(-inf, 0]` are rejected.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;

use crate::error::{Error, Result};
use crate::scalar::{is_finite, on_branch_cut, Real};

/// Default truncation order.
pub const DEFAULT_ORDER: usize = 24;
/// Default lower bound on `|c_0|` for division, logarithm and powers.
pub const EPS_DIV: f64 = 1e-12;
/// Largest `|c_0|` of an inner series accepted by [`Series::compose`].
pub const EPS_COMPOSE: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> Series<T> {
    pub fn new(coeffs: Vec<Complex<T>>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::EmptySeries);
        }
        if !coeffs.iter().all(|&c| is_finite(c)) {
            return Err(Error::NonFinite("series coefficients"));
        }
        Ok(Self { coeffs })
    }

    pub fn from_real(coeffs: &[T]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&r| Complex::new(r, T::zero())).collect())
    }

    /// Builds a series of the given order from (possibly fewer) leading coefficients.
    pub fn padded(leading: &[Complex<T>], order: usize) -> Result<Self> {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); order + 1];
        for (slot, &c) in coeffs.iter_mut().zip(leading) {
            *slot = c;
        }
        Self::new(coeffs)
    }

    pub fn zero(order: usize) -> Self {
        Self {
            coeffs: vec![Complex::new(T::zero(), T::zero()); order + 1],
        }
    }

    pub fn constant(c: Complex<T>, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Self {
        Self::constant(Complex::new(T::one(), T::zero()), order)
    }

    /// The series of `z`.
    pub fn variable(order: usize) -> Self {
        let mut s = Self::zero(order);
        if order >= 1 {
            s.coeffs[1] = Complex::new(T::one(), T::zero());
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Coefficient of `z^k`, zero beyond the truncation order.
    pub fn coeff(&self, k: usize) -> Complex<T> {
        self.coeffs
            .get(k)
            .copied()
            .unwrap_or_else(|| Complex::new(T::zero(), T::zero()))
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::padded(&self.coeffs[..self.coeffs.len().min(order + 1)], order)
            .expect("truncation of a finite series")
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Horner evaluation of the truncated polynomial.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] + other.coeffs[k]).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        Self {
            coeffs: (0..=n).map(|k| self.coeffs[k] - other.coeffs[k]).collect(),
        }
    }

    /// Cauchy product truncated at the smaller order.
    pub fn mul(&self, other: &Self) -> Self {
        let n = self.order().min(other.order());
        let coeffs = (0..=n)
            .map(|k| {
                (0..=k).fold(Complex::new(T::zero(), T::zero()), |acc, j| {
                    acc + self.coeffs[j] * other.coeffs[k - j]
                })
            })
            .collect();
        Self { coeffs }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.div_eps(other, T::lit(EPS_DIV))
    }

    /// Long division `self / other`; requires `|other.c_0| > eps`.
    pub fn div_eps(&self, other: &Self, eps: T) -> Result<Self> {
        let d0 = other.coeffs[0];
        if !(d0.norm() > eps) {
            return Err(Error::DivisionByNearZeroConstantTerm(d0.norm().as_f64()));
        }
        let n = self.order().min(other.order());
        let mut q: Vec<Complex<T>> = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let mut acc = self.coeffs[k];
            for j in 1..=k {
                acc = acc - other.coeffs[j] * q[k - j];
            }
            q.push(acc / d0);
        }
        Self::new(q)
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one(self.order()).div(self)
    }

    pub fn derivative(&self) -> Self {
        let n = self.order();
        if n == 0 {
            return Self::zero(0);
        }
        Self {
            coeffs: (0..n)
                .map(|k| self.coeffs[k + 1] * T::from_usize(k + 1).unwrap())
                .collect(),
        }
    }

    /// Principal logarithm.
    pub fn log(&self) -> Result<Self> {
        self.log_eps(T::lit(EPS_DIV))
    }

    pub fn log_eps(&self, eps: T) -> Result<Self> {
        let c0 = self.coeffs[0];
        if !(c0.norm() > eps) {
            return Err(Error::DivisionByNearZeroConstantTerm(c0.norm().as_f64()));
        }
        if on_branch_cut(c0, eps) {
            return Err(Error::ConstantTermOnBranchCut {
                re: c0.re.as_f64(),
                im: c0.im.as_f64(),
            });
        }
        // L' = s'/s, i.e. k l_k c_0 = k c_k - sum_{j=1}^{k-1} j l_j c_{k-j}.
        let n = self.order();
        let mut l = Vec::with_capacity(n + 1);
        l.push(c0.ln());
        for k in 1..=n {
            let kk = T::from_usize(k).unwrap();
            let mut acc = self.coeffs[k] * kk;
            for j in 1..k {
                acc = acc - l[j] * self.coeffs[k - j] * T::from_usize(j).unwrap();
            }
            l.push(acc / (c0 * kk));
        }
        Self::new(l)
    }

    pub fn exp(&self) -> Result<Self> {
        // E' = s' E, i.e. k e_k = sum_{j=1}^{k} j c_j e_{k-j}.
        let n = self.order();
        let mut e = Vec::with_capacity(n + 1);
        e.push(self.coeffs[0].exp());
        for k in 1..=n {
            let mut acc = Complex::new(T::zero(), T::zero());
            for j in 1..=k {
                acc = acc + self.coeffs[j] * e[k - j] * T::from_usize(j).unwrap();
            }
            e.push(acc / T::from_usize(k).unwrap());
        }
        Self::new(e)
    }

    /// Principal power `exp(lambda * log s)`.
    pub fn pow(&self, lambda: Complex<T>) -> Result<Self> {
        if lambda.re == T::zero() && lambda.im == T::zero() {
            // still reject inadmissible bases
            self.log()?;
            return Ok(Self::one(self.order()));
        }
        self.log()?.scale(lambda).exp()
    }

    /// `outer(inner(z))`; the inner series must vanish at the origin.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let i0 = inner.coeffs[0].norm();
        if i0 > T::lit(EPS_COMPOSE) {
            return Err(Error::InnerNotZeroAtOrigin(i0.as_f64()));
        }
        let n = self.order().min(inner.order());
        let mut w = inner.truncate(n);
        w.coeffs[0] = Complex::new(T::zero(), T::zero());
        let mut acc = Self::constant(self.coeffs[n], n);
        for k in (0..n).rev() {
            acc = acc.mul(&w);
            acc.coeffs[0] = acc.coeffs[0] + self.coeffs[k];
        }
        Ok(acc)
    }

    /// Largest coefficient-wise modulus difference over the common order.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let n = self.order().min(other.order());
        (0..=n).fold(T::zero(), |m, k| m.max((self.coeffs[k] - other.coeffs[k]).norm()))
    }
}

impl<T: Real> Add for &Series<T> {
    type Output = Series<T>;
    fn add(self, rhs: Self) -> Series<T> {
        Series::add(self, rhs)
    }
}

impl<T: Real> Sub for &Series<T> {
    type Output = Series<T>;
    fn sub(self, rhs: Self) -> Series<T> {
        Series::sub(self, rhs)
    }
}

impl<T: Real> Mul for &Series<T> {
    type Output = Series<T>;
    fn mul(self, rhs: Self) -> Series<T> {
        Series::mul(self, rhs)
    }
}

impl<T: Real> Neg for &Series<T> {
    type Output = Series<T>;
    fn neg(self) -> Series<T> {
        Series {
            coeffs: self.coeffs.iter().map(|&c| -c).collect(),
        }
    }
}
