//! Dual complex and dual real scalars.
//!
//! A dual complex number is `a = s + d*eps` with `s, d` complex and `eps` a
//! nilpotent unit, `eps^2 = 0`. The standard part `s` decides invertibility:
//! `a` is *appreciable* when `s != 0` and *infinitesimal* otherwise. Dual
//! real numbers additionally carry a total order, compared lexicographically:
//! standard parts first, dual parts only to break ties.

use crate::error::{Error, Result};
use num_complex::Complex64;

/// Default tolerance below which a standard part is treated as zero when
/// classifying scalars.
pub const SCALAR_ZERO_TOL: f64 = 1e-12;

/// A dual complex number `standard + dual * eps` with `eps^2 = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualComplex {
    /// Standard (non-nilpotent) part.
    pub standard: Complex64,
    /// Dual (nilpotent) part.
    pub dual: Complex64,
}

impl DualComplex {
    /// Builds a dual complex number from its two parts.
    pub fn new(standard: Complex64, dual: Complex64) -> Self {
        Self { standard, dual }
    }

    /// A purely standard (non-dual) value.
    pub fn from_standard(standard: Complex64) -> Self {
        Self {
            standard,
            dual: Complex64::ZERO,
        }
    }

    /// A purely real dual number embedded in the complex duals.
    pub fn from_real(standard: f64, dual: f64) -> Self {
        Self {
            standard: Complex64::new(standard, 0.0),
            dual: Complex64::new(dual, 0.0),
        }
    }

    /// Additive identity.
    pub fn zero() -> Self {
        Self::default()
    }

    /// Multiplicative identity.
    pub fn one() -> Self {
        Self::from_standard(Complex64::ONE)
    }

    /// The nilpotent unit `eps`.
    pub fn eps() -> Self {
        Self::new(Complex64::ZERO, Complex64::ONE)
    }

    /// Complex conjugate, taken on both parts.
    pub fn conj(&self) -> Self {
        Self::new(self.standard.conj(), self.dual.conj())
    }

    /// True when the standard part exceeds `tol` in magnitude.
    pub fn is_appreciable(&self, tol: f64) -> bool {
        self.standard.norm() > tol
    }

    /// True when the standard part vanishes (at `tol`) but the dual part
    /// does not.
    pub fn is_infinitesimal(&self, tol: f64) -> bool {
        !self.is_appreciable(tol) && self.dual.norm() > tol
    }

    /// Multiplicative inverse. Exists exactly for appreciable numbers:
    /// `(s + d*eps)^-1 = 1/s - d/s^2 * eps`.
    ///
    /// # Errors
    ///
    /// [`Error::NotAppreciable`] when `|standard| <= tol`.
    pub fn inv(&self, tol: f64) -> Result<Self> {
        if !self.is_appreciable(tol) {
            return Err(Error::NotAppreciable {
                std_part: self.standard.norm(),
                tol,
            });
        }
        let s_inv = self.standard.inv();
        Ok(Self::new(s_inv, -self.dual * s_inv * s_inv))
    }

    /// Largest magnitude over both parts; a cheap size measure for residuals.
    pub fn max_norm(&self) -> f64 {
        self.standard.norm().max(self.dual.norm())
    }
}

impl std::ops::Add for DualComplex {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.standard + rhs.standard, self.dual + rhs.dual)
    }
}

impl std::ops::Sub for DualComplex {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.standard - rhs.standard, self.dual - rhs.dual)
    }
}

impl std::ops::Mul for DualComplex {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // (s1 + d1 eps)(s2 + d2 eps) = s1 s2 + (s1 d2 + d1 s2) eps
        Self::new(
            self.standard * rhs.standard,
            self.standard * rhs.dual + self.dual * rhs.standard,
        )
    }
}

impl std::ops::Neg for DualComplex {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.standard, -self.dual)
    }
}

impl std::fmt::Display for DualComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + ({})e", self.standard, self.dual)
    }
}

/// Sign classification of a dual real number at a given tolerance.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignClass {
    /// Standard part positive.
    PositiveAppreciable,
    /// Standard part zero, dual part positive.
    PositiveInfinitesimal,
    /// Both parts zero.
    Zero,
    /// Standard part zero, dual part negative.
    NegativeInfinitesimal,
    /// Standard part negative.
    NegativeAppreciable,
}

/// A dual real number `standard + dual * eps`, totally ordered.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct DualReal {
    /// Standard (non-nilpotent) part.
    pub standard: f64,
    /// Dual (nilpotent) part.
    pub dual: f64,
}

impl DualReal {
    /// Builds a dual real number from its two parts.
    pub fn new(standard: f64, dual: f64) -> Self {
        Self { standard, dual }
    }

    /// Additive identity.
    pub fn zero() -> Self {
        Self::default()
    }

    /// True when the standard part exceeds `tol` in magnitude.
    pub fn is_appreciable(&self, tol: f64) -> bool {
        self.standard.abs() > tol
    }

    /// Total order on dual reals: compare standard parts, fall back to dual
    /// parts only on exact ties. IEEE total ordering breaks float edge cases
    /// (`-0.0` vs `0.0`, NaN) deterministically.
    pub fn total_cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.standard
            .total_cmp(&other.standard)
            .then_with(|| self.dual.total_cmp(&other.dual))
    }

    /// Classifies the sign of the number, treating parts within `tol` of
    /// zero as zero.
    pub fn classify(&self, tol: f64) -> SignClass {
        if self.standard > tol {
            SignClass::PositiveAppreciable
        } else if self.standard < -tol {
            SignClass::NegativeAppreciable
        } else if self.dual > tol {
            SignClass::PositiveInfinitesimal
        } else if self.dual < -tol {
            SignClass::NegativeInfinitesimal
        } else {
            SignClass::Zero
        }
    }

    /// Multiplicative inverse; requires an appreciable number.
    ///
    /// # Errors
    ///
    /// [`Error::NotAppreciable`] when `|standard| <= tol`.
    pub fn inv(&self, tol: f64) -> Result<Self> {
        if !self.is_appreciable(tol) {
            return Err(Error::NotAppreciable {
                std_part: self.standard,
                tol,
            });
        }
        Ok(Self::new(
            1.0 / self.standard,
            -self.dual / (self.standard * self.standard),
        ))
    }

    /// Dual square root: `sqrt(s + d*eps) = sqrt(s) + d / (2 sqrt(s)) * eps`.
    /// Defined only for positive appreciable numbers.
    ///
    /// # Errors
    ///
    /// [`Error::Negative`] for values below zero in the total order,
    /// [`Error::NotAppreciable`] for infinitesimal values, whose square root
    /// leaves the dual numbers.
    pub fn sqrt(&self, tol: f64) -> Result<Self> {
        match self.classify(tol) {
            SignClass::NegativeAppreciable | SignClass::NegativeInfinitesimal => {
                Err(Error::Negative {
                    std_part: self.standard,
                })
            }
            SignClass::Zero | SignClass::PositiveInfinitesimal => Err(Error::NotAppreciable {
                std_part: self.standard,
                tol,
            }),
            SignClass::PositiveAppreciable => {
                let root = self.standard.sqrt();
                Ok(Self::new(root, self.dual / (2.0 * root)))
            }
        }
    }
}

impl std::ops::Add for DualReal {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.standard + rhs.standard, self.dual + rhs.dual)
    }
}

impl std::ops::Sub for DualReal {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.standard - rhs.standard, self.dual - rhs.dual)
    }
}

impl std::ops::Mul for DualReal {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Self::new(
            self.standard * rhs.standard,
            self.standard * rhs.dual + self.dual * rhs.standard,
        )
    }
}

impl std::ops::Neg for DualReal {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.standard, -self.dual)
    }
}

impl std::fmt::Display for DualReal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} + ({})e", self.standard, self.dual)
    }
}
