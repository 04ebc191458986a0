//! Truncated Laurent series, used to evaluate closed forms such as
//! `(1 - sqrt(1-4x)) / (2x)` whose intermediate steps divide by powers of `x`.

use num_traits::Zero;

use super::{Series, Q};
use crate::error::{Error, Result};

/// `x^val · (body_0 + body_1 x + ⋯)`, with every coefficient below `x^val`
/// zero and the coefficients known for exponents below `val + body.len()`.
#[derive(Clone, Debug)]
pub(crate) struct Laurent {
    val: i64,
    body: Vec<Q>,
}

impl Laurent {
    pub fn from_series(s: &Series) -> Laurent {
        Laurent { val: 0, body: s.coeffs().to_vec() }
    }

    /// Exclusive exponent bound of the known coefficients.
    pub fn prec(&self) -> i64 {
        self.val + self.body.len() as i64
    }

    fn normalized(&self) -> Laurent {
        let lead = self.body.iter().position(|c| !c.is_zero()).unwrap_or(self.body.len());
        Laurent { val: self.val + lead as i64, body: self.body[lead..].to_vec() }
    }

    fn body_series(&self) -> Series {
        Series::from_coeffs(self.body.clone())
    }

    fn coeff(&self, e: i64) -> Q {
        if e < self.val {
            Q::zero()
        } else {
            self.body.get((e - self.val) as usize).cloned().unwrap_or_else(Q::zero)
        }
    }

    pub fn add(&self, other: &Laurent) -> Laurent {
        let prec = self.prec().min(other.prec());
        let val = self.val.min(other.val).min(prec);
        Laurent { val, body: (val..prec).map(|e| self.coeff(e) + other.coeff(e)).collect() }
    }

    pub fn neg(&self) -> Laurent {
        Laurent { val: self.val, body: self.body.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &Laurent) -> Laurent {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Laurent) -> Laurent {
        let (a, b) = (self.normalized(), other.normalized());
        let val = a.val + b.val;
        let len = a.body.len().min(b.body.len());
        if len == 0 {
            return Laurent { val, body: Vec::new() };
        }
        let prod = Series::from_coeffs(a.body[..len].to_vec()).mul(&Series::from_coeffs(b.body[..len].to_vec()));
        Laurent { val, body: prod.coeffs().to_vec() }
    }

    pub fn inv(&self) -> Result<Laurent> {
        let a = self.normalized();
        if a.body.is_empty() {
            return Err(Error::InsufficientPrecision("divisor vanishes to the working order".into()));
        }
        Ok(Laurent { val: -a.val, body: a.body_series().inv()?.coeffs().to_vec() })
    }

    pub fn div(&self, other: &Laurent) -> Result<Laurent> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn sqrt(&self) -> Result<Laurent> {
        let a = self.normalized();
        if a.body.is_empty() {
            return Err(Error::InsufficientPrecision("radicand vanishes to the working order".into()));
        }
        if a.val % 2 != 0 {
            return Err(Error::SqrtNonsquareConstant);
        }
        Ok(Laurent { val: a.val / 2, body: a.body_series().sqrt()?.coeffs().to_vec() })
    }

    pub fn pow(&self, k: i64) -> Result<Laurent> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        if k == 0 {
            let mut body = vec![Q::zero(); self.prec().max(1) as usize];
            body[0] = Q::from_integer(1.into());
            return Ok(Laurent { val: 0, body });
        }
        let mut acc = base.clone();
        for _ in 1..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// `self(inner)`, for `self` a power series and `inner` of positive valuation.
    pub fn compose(&self, inner: &Laurent) -> Result<Laurent> {
        let f = self.normalized();
        let g = inner.normalized();
        if f.val < 0 && !f.body.is_empty() {
            return Err(Error::PreconditionViolated("outer series of a composition has negative powers".into()));
        }
        if g.val < 1 && !g.body.is_empty() {
            return Err(Error::ComposeNonzeroConstant);
        }
        let prec = f.prec().min(g.prec());
        if prec <= 0 {
            return Err(Error::InsufficientPrecision("composition".into()));
        }
        let order = (prec - 1) as usize;
        let fs = Series::from_coeffs((0..prec).map(|e| f.coeff(e)).collect());
        let gs = Series::from_coeffs((0..prec).map(|e| g.coeff(e)).collect());
        let out = fs.compose(&gs)?;
        Ok(Laurent { val: 0, body: out.coeffs()[..=order].to_vec() })
    }

    /// The power series `c_0 + ⋯ + c_order x^order`, if it is one and known that far.
    pub fn to_series(&self, order: usize) -> Result<Series> {
        let a = self.normalized();
        if a.prec() <= order as i64 {
            return Err(Error::InsufficientPrecision(format!("known below x^{}, wanted x^{order}", a.prec())));
        }
        if a.val < 0 && !a.body.is_empty() {
            return Err(Error::PreconditionViolated("closed form has negative powers of x".into()));
        }
        Ok(Series::from_coeffs((0..=order as i64).map(|e| a.coeff(e)).collect()))
    }
}
