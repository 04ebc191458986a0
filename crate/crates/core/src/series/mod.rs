//! Truncated formal power series with exact rational coefficients, the
//! generating-function catalog and the counting recurrences.

mod bivariate;
mod catalog;
mod expr;
mod laurent;
mod recurrence;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub use bivariate::{expand_f_a, BiSeries};
pub use catalog::{
    catalog, expand_catalog, parse_catalog, verify_all, verify_entry, CatalogEntry, EntryKind, EntryReport, NamedSequence,
    OracleCheck, OracleFilter, Recipe, SameAsCheck, Source,
};
pub use expr::{eval_expr, Expr};
pub use recurrence::{recurrence_eval, Recurrence, RecurrenceInput, RecurrenceOutput};

/// Exact rational coefficient.
pub type Q = BigRational;

pub(crate) fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// A power series known up to and including `x^order`.
#[derive(Clone, PartialEq, Eq)]
pub struct Series {
    coeffs: Vec<Q>,
}

impl Series {
    /// Wrap coefficients `c_0, …, c_N`; the order is `N`.
    pub fn from_coeffs(coeffs: Vec<Q>) -> Series {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        Series { coeffs }
    }

    pub fn zero(order: usize) -> Series {
        Series { coeffs: vec![Q::zero(); order + 1] }
    }

    pub fn constant(c: Q, order: usize) -> Series {
        let mut s = Series::zero(order);
        s.coeffs[0] = c;
        s
    }

    pub fn one(order: usize) -> Series {
        Series::constant(Q::one(), order)
    }

    /// The series `x`.
    pub fn var(order: usize) -> Series {
        Series::monomial(Q::one(), 1, order)
    }

    /// `c·x^k`.
    pub fn monomial(c: Q, k: usize, order: usize) -> Series {
        let mut s = Series::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    /// A polynomial truncated to `order`.
    pub fn from_poly(poly: &[Q], order: usize) -> Series {
        let mut s = Series::zero(order);
        for (c, p) in s.coeffs.iter_mut().zip(poly) {
            *c = p.clone();
        }
        s
    }

    pub fn from_ints(poly: &[i64], order: usize) -> Series {
        let poly: Vec<Q> = poly.iter().map(|&c| q(c)).collect();
        Series::from_poly(&poly, order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    /// Coefficient of `x^i`, zero beyond the order.
    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn truncate(&self, order: usize) -> Series {
        assert!(order <= self.order(), "cannot raise the order of a truncated series");
        Series { coeffs: self.coeffs[..=order].to_vec() }
    }

    pub fn add(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series { coeffs: (0..=order).map(|i| &self.coeffs[i] + &other.coeffs[i]).collect() }
    }

    pub fn sub(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        Series { coeffs: (0..=order).map(|i| &self.coeffs[i] - &other.coeffs[i]).collect() }
    }

    pub fn neg(&self) -> Series {
        Series { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn scale(&self, c: &Q) -> Series {
        Series { coeffs: self.coeffs.iter().map(|x| x * c).collect() }
    }

    pub fn mul(&self, other: &Series) -> Series {
        let order = self.order().min(other.order());
        let mut out = vec![Q::zero(); order + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(order + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(order + 1 - i) {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Series { coeffs: out }
    }

    /// Multiply by `x^k`, keeping the order.
    pub fn shift(&self, k: usize) -> Series {
        let mut s = Series::zero(self.order());
        for i in k..=self.order() {
            s.coeffs[i] = self.coeffs[i - k].clone();
        }
        s
    }

    pub fn inv(&self) -> Result<Series> {
        let c0 = &self.coeffs[0];
        if c0.is_zero() {
            return Err(Error::DivisionByZeroConstantTerm);
        }
        let inv0 = c0.recip();
        let n = self.order();
        let mut out: Vec<Q> = Vec::with_capacity(n + 1);
        out.push(inv0.clone());
        for k in 1..=n {
            let mut acc = Q::zero();
            for j in 1..=k {
                if !self.coeffs[j].is_zero() {
                    acc += &self.coeffs[j] * &out[k - j];
                }
            }
            out.push(-(acc * &inv0));
        }
        Ok(Series { coeffs: out })
    }

    pub fn div(&self, other: &Series) -> Result<Series> {
        Ok(self.mul(&other.inv()?))
    }

    /// The square root whose constant term is the positive root of `c_0`.
    pub fn sqrt(&self) -> Result<Series> {
        let s0 = rational_sqrt(&self.coeffs[0]).ok_or(Error::SqrtNonsquareConstant)?;
        if s0.is_zero() {
            return Err(Error::SqrtNonsquareConstant);
        }
        let two_s0 = &s0 + &s0;
        let n = self.order();
        let mut out: Vec<Q> = Vec::with_capacity(n + 1);
        out.push(s0);
        for k in 1..=n {
            let mut acc = self.coeffs[k].clone();
            for i in 1..k {
                acc -= &out[i] * &out[k - i];
            }
            out.push(acc / &two_s0);
        }
        Ok(Series { coeffs: out })
    }

    /// `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Series) -> Result<Series> {
        if !inner.coeffs[0].is_zero() {
            return Err(Error::ComposeNonzeroConstant);
        }
        let order = self.order().min(inner.order());
        let inner = inner.truncate(order);
        // Horner: f(g) = f_0 + g(f_1 + g(f_2 + ...)).
        let mut acc = Series::constant(self.coeffs[order].clone(), order);
        for i in (0..order).rev() {
            acc = acc.mul(&inner);
            acc.coeffs[0] += &self.coeffs[i];
        }
        Ok(acc)
    }

    pub fn pow(&self, k: u32) -> Series {
        let mut result = Series::one(self.order());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        result
    }

    /// The coefficients as integers, if all of them are.
    pub fn integer_coeffs(&self) -> Option<Vec<BigInt>> {
        self.coeffs.iter().map(|c| c.is_integer().then(|| c.to_integer())).collect()
    }
}

impl fmt::Debug for Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}; O(x^{})]", parts.join(", "), self.coeffs.len())
    }
}

/// The nonnegative rational square root, if it exists.
pub(crate) fn rational_sqrt(c: &Q) -> Option<Q> {
    if c.is_negative() {
        return None;
    }
    let (n, d) = (c.numer(), c.denom());
    let (rn, rd) = (n.sqrt(), d.sqrt());
    (&rn * &rn == *n && &rd * &rd == *d).then(|| Q::new(rn, rd))
}

/// `C(n, k)` as a small integer, for the closed-form recipes.
pub(crate) fn binomial(n: i64, k: i64) -> BigInt {
    if k < 0 || n < 0 || k > n {
        return BigInt::zero();
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc
}

#[cfg(test)]
pub(crate) fn to_i64(c: &Q) -> Option<i64> {
    c.is_integer().then(|| num_traits::ToPrimitive::to_i64(&c.to_integer())).flatten()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &Series) -> Vec<i64> {
        s.coeffs().iter().map(|c| to_i64(c).unwrap()).collect()
    }

    #[test]
    fn catalan_expansion() {
        let n = 8;
        let root = Series::from_ints(&[1, -4], n + 1).sqrt().unwrap();
        let num = Series::one(n + 1).sub(&root);
        // (1 - sqrt(1 - 4x)) / (2x): drop the vanishing constant term.
        let c: Vec<Q> = (1..=n + 1).map(|i| num.coeff(i) / q(2)).collect();
        assert_eq!(ints(&Series::from_coeffs(c)), [1, 1, 2, 5, 14, 42, 132, 429, 1430]);
    }

    #[test]
    fn tribonacci_by_long_division() {
        let s = Series::one(6).div(&Series::from_ints(&[1, -1, -1, -1], 6)).unwrap();
        assert_eq!(ints(&s), [1, 1, 2, 4, 7, 13, 24]);
    }

    #[test]
    fn error_cases() {
        assert_eq!(Series::var(3).inv(), Err(Error::DivisionByZeroConstantTerm));
        assert_eq!(Series::from_ints(&[2, 1], 3).sqrt(), Err(Error::SqrtNonsquareConstant));
        assert_eq!(Series::one(3).compose(&Series::one(3)), Err(Error::ComposeNonzeroConstant));
    }

    #[test]
    fn composition_with_geometric() {
        // 1/(1-y) at y = x/(1-x) is (1-x)/(1-2x).
        let geo = Series::one(8).div(&Series::from_ints(&[1, -1], 8)).unwrap();
        let inner = Series::var(8).mul(&geo);
        let got = geo.compose(&inner).unwrap();
        let want = Series::from_ints(&[1, -1], 8).div(&Series::from_ints(&[1, -2], 8)).unwrap();
        assert_eq!(got, want);
    }
}
