//! Power series in `x` whose coefficients are polynomials in `y`.

use num_traits::{One, Zero};

use super::{q, Series, Q};
use crate::composition::Composition;
use crate::error::{Error, Result};

/// `Σ_n c_n(y) x^n` known up to `x^order`; `c_n` is a dense coefficient list in `y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiSeries {
    coeffs: Vec<Vec<Q>>,
}

fn trim(mut p: Vec<Q>) -> Vec<Q> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn poly_add(a: &[Q], b: &[Q]) -> Vec<Q> {
    let n = a.len().max(b.len());
    let get = |p: &[Q], i: usize| p.get(i).cloned().unwrap_or_else(Q::zero);
    trim((0..n).map(|i| get(a, i) + get(b, i)).collect())
}

fn poly_mul(a: &[Q], b: &[Q]) -> Vec<Q> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![Q::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, z) in b.iter().enumerate() {
            out[i + j] += x * z;
        }
    }
    trim(out)
}

fn poly_eval(p: &[Q], y: &Q) -> Q {
    p.iter().rev().fold(Q::zero(), |acc, c| acc * y + c)
}

impl BiSeries {
    /// From coefficient polynomials `c_0(y), …, c_N(y)`.
    pub fn from_coeffs(coeffs: Vec<Vec<Q>>) -> BiSeries {
        assert!(!coeffs.is_empty(), "a series needs at least its constant term");
        BiSeries { coeffs: coeffs.into_iter().map(trim).collect() }
    }

    /// A series free of `y`.
    pub fn from_series(s: &Series) -> BiSeries {
        BiSeries::from_coeffs(s.coeffs().iter().map(|c| vec![c.clone()]).collect())
    }

    /// `c·x^i·y^j`.
    pub fn monomial(c: Q, i: usize, j: usize, order: usize) -> BiSeries {
        let mut coeffs = vec![Vec::new(); order + 1];
        if i <= order {
            let mut p = vec![Q::zero(); j + 1];
            p[j] = c;
            coeffs[i] = p;
        }
        BiSeries::from_coeffs(coeffs)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// The coefficient of `x^n` as a polynomial in `y` (trailing zeros trimmed).
    pub fn coeff(&self, n: usize) -> &[Q] {
        &self.coeffs[n]
    }

    pub fn add(&self, other: &BiSeries) -> BiSeries {
        let order = self.order().min(other.order());
        BiSeries { coeffs: (0..=order).map(|i| poly_add(&self.coeffs[i], &other.coeffs[i])).collect() }
    }

    pub fn scale(&self, c: &Q) -> BiSeries {
        BiSeries { coeffs: self.coeffs.iter().map(|p| trim(p.iter().map(|x| x * c).collect())).collect() }
    }

    pub fn sub(&self, other: &BiSeries) -> BiSeries {
        self.add(&other.scale(&q(-1)))
    }

    pub fn mul(&self, other: &BiSeries) -> BiSeries {
        let order = self.order().min(other.order());
        let mut out = vec![Vec::new(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_empty() {
                continue;
            }
            for j in 0..=order - i {
                let prod = poly_mul(&self.coeffs[i], &other.coeffs[j]);
                out[i + j] = poly_add(&out[i + j], &prod);
            }
        }
        BiSeries { coeffs: out }
    }

    /// Inverse; the `x^0` coefficient must be a nonzero constant.
    pub fn inv(&self) -> Result<BiSeries> {
        let c0 = match self.coeffs[0].as_slice() {
            [c] if !c.is_zero() => c.clone(),
            _ => return Err(Error::DivisionByZeroConstantTerm),
        };
        let inv0 = c0.recip();
        let order = self.order();
        let mut out: Vec<Vec<Q>> = vec![vec![inv0.clone()]];
        for k in 1..=order {
            let mut acc = Vec::new();
            for j in 1..=k {
                acc = poly_add(&acc, &poly_mul(&self.coeffs[j], &out[k - j]));
            }
            out.push(trim(acc.iter().map(|c| -(c * &inv0)).collect()));
        }
        Ok(BiSeries { coeffs: out })
    }

    pub fn div(&self, other: &BiSeries) -> Result<BiSeries> {
        Ok(self.mul(&other.inv()?))
    }

    /// Substitute a rational value for `y`.
    pub fn specialize(&self, y: &Q) -> Series {
        Series::from_coeffs(self.coeffs.iter().map(|p| poly_eval(p, y)).collect())
    }
}

/// `F_a(x,y) = Σ_{j<ℓ} x^{a_1+⋯+a_j} y^j (1-x) / Π_{i≤j+1} (1 - x(1+y) + x^{a_i} y)`,
/// the generating function of partitions avoiding 112 and `τ_112(a)` by size
/// and number of blocks.
pub fn expand_f_a(a: &Composition, order: usize) -> Result<BiSeries> {
    if a.is_empty() {
        return Err(Error::BadParams("F_a needs a nonempty composition".into()));
    }
    let one = Q::one();
    let unit = BiSeries::monomial(one.clone(), 0, 0, order);
    let x = BiSeries::monomial(one.clone(), 1, 0, order);
    let xy = BiSeries::monomial(one.clone(), 1, 1, order);
    let one_minus_x = unit.sub(&x);
    let mut denom = unit.clone();
    let mut prefix = 0usize;
    let mut total = BiSeries::from_coeffs(vec![Vec::new(); order + 1]);
    for (j, &part) in a.parts().iter().enumerate() {
        // factor 1 - x - xy + x^{a_{j+1}} y
        let factor = unit.sub(&x).sub(&xy).add(&BiSeries::monomial(one.clone(), part as usize, 1, order));
        denom = denom.mul(&factor);
        let lead = BiSeries::monomial(one.clone(), prefix, j, order);
        total = total.add(&lead.mul(&one_minus_x).div(&denom)?);
        prefix += part as usize;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn specialization_commutes_with_arithmetic() {
        let a = BiSeries::from_coeffs(vec![vec![q(1)], vec![q(2), q(-1)], vec![q(0), q(3), q(1)], vec![q(5)]]);
        let b = BiSeries::from_coeffs(vec![vec![q(1), q(1)], vec![], vec![q(-2)], vec![q(1), q(0), q(4)]]);
        for y in [q(1), q(-2), Q::new(3.into(), 7.into())] {
            assert_eq!(a.mul(&b).specialize(&y), a.specialize(&y).mul(&b.specialize(&y)));
            assert_eq!(a.add(&b).specialize(&y), a.specialize(&y).add(&b.specialize(&y)));
        }
        let inv = BiSeries::from_coeffs(vec![vec![q(1)], vec![q(1), q(1)], vec![], vec![q(0), q(2)]]).inv().unwrap();
        assert_eq!(inv.specialize(&q(3)), Series::from_ints(&[1, 4, 0, 6], 3).inv().unwrap());
    }

    #[test]
    fn single_part_blocks_everything() {
        // a = (1): τ = 1, only the empty partition survives.
        let f = expand_f_a(&Composition::new(vec![1]).unwrap(), 6).unwrap();
        assert_eq!(f.specialize(&q(1)), Series::one(6));
    }
}
