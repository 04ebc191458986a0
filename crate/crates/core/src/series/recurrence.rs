//! Counting recurrences that produce one count sequence from another, and
//! the recurrences for the `fasc` triangles.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::{binomial, q, Series};
use crate::error::{Error, Result};
use crate::partition::CountVector;
use crate::triangle::{FascTriangle, TriangleVariant};

/// The recurrences [`recurrence_eval`] knows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Recurrence {
    /// `p_n(T') = Σ_{k<n} C(n-1,k) p_k(T)` where `T' = {1(τ+1) : τ ∈ T}`.
    /// Input: the counts of `T`.
    BinomialTransform,
    /// `f_n(σ,T') = Σ_{i=1}^{k-2} f_{n-i}(σ,T) C(n-1,i-1) + Σ_{i=k-1}^{n} f_{n-i}(σ,T) C(n-i+k-3,k-3)`
    /// for `σ = 1^a 2 1^b` of size `k ≥ 3`. Input: the counts of `{σ} ∪ T`.
    Lift1a21b { k: usize },
    /// `a_n(T') = a_{n-1}(T) + (n-1) a_{n-2}(T) + a_{n-3}(T) + ⋯ + a_0(T)` for
    /// `n ≥ 4`, where both sides also avoid {1112,1121} (or {1121,1211}).
    /// Inputs: the counts of `T'` for `n ≤ 3`, then either the counts of `T`
    /// or, when `T = T'`, the target size.
    TwoOnesLift,
    /// `H_ρ = 1 + x/(1-x) H_τ + x²/((1-x)(1-2x)) (H_τ - 1)` for `ρ = 1(τ+1)`,
    /// `H` counting avoiders of 1213 and one more pattern. Input: `H_τ`.
    PrependOne,
    /// `Σ_j Π_{i≤j} x/(1-ix)` (`j ≤ m`) minus
    /// `(x/(1-(m-1)x))^{k-m} · x/(1-mx) · Π_{j<m} x/(1-jx)`: avoiders of
    /// `12⋯(m+1)` and any size-`k` pattern with `m` blocks starting `12⋯(m-1)`.
    /// Input: the order.
    IncreasingBound { m: usize, k: usize },
    /// The recurrence for the `fasc` triangle of the variant. Input: `max_n`.
    Triangle(TriangleVariant),
}

/// An input to [`recurrence_eval`].
#[derive(Clone, Debug)]
pub enum RecurrenceInput {
    Counts(CountVector),
    Series(Series),
    Size(usize),
}

/// The result of [`recurrence_eval`].
#[derive(Clone, Debug)]
pub enum RecurrenceOutput {
    Counts(CountVector),
    Series(Series),
    Triangle(FascTriangle),
}

fn mismatch(kind: &Recurrence) -> Error {
    Error::ArityMismatch(format!("{kind:?}"))
}

/// Evaluate a recurrence on its inputs.
pub fn recurrence_eval(kind: &Recurrence, inputs: &[RecurrenceInput]) -> Result<RecurrenceOutput> {
    use RecurrenceInput as I;
    match (kind, inputs) {
        (Recurrence::BinomialTransform, [I::Counts(base)]) => Ok(RecurrenceOutput::Counts(binomial_transform(base))),
        (Recurrence::Lift1a21b { k }, [I::Counts(base)]) if *k >= 3 => {
            Ok(RecurrenceOutput::Counts(lift_1a21b(*k, base)))
        }
        (Recurrence::TwoOnesLift, [I::Counts(init), rest]) if init.counts.len() >= 4 => {
            let out = match rest {
                I::Counts(base) => two_ones_lift(init, Some(base), base.max_n() + 1),
                I::Size(n) => two_ones_lift(init, None, *n),
                I::Series(_) => return Err(mismatch(kind)),
            };
            Ok(RecurrenceOutput::Counts(out))
        }
        (Recurrence::PrependOne, [I::Series(h)]) => Ok(RecurrenceOutput::Series(prepend_one(h)?)),
        (Recurrence::IncreasingBound { m, k }, [I::Size(order)]) if *m >= 2 && k >= m => {
            Ok(RecurrenceOutput::Series(increasing_bound(*m, *k, *order)?))
        }
        (Recurrence::Triangle(v), [I::Size(n)]) => Ok(RecurrenceOutput::Triangle(triangle(*v, *n))),
        _ => Err(mismatch(kind)),
    }
}

fn big(n: &num_bigint::BigInt) -> BigUint {
    n.to_biguint().expect("binomials are nonnegative")
}

pub(crate) fn binomial_transform(base: &CountVector) -> CountVector {
    let top = base.max_n() + 1;
    let mut counts = vec![BigUint::one()];
    for n in 1..=top {
        let s = (0..n).map(|k| big(&binomial(n as i64 - 1, k as i64)) * base.get(k)).sum();
        counts.push(s);
    }
    CountVector { counts }
}

pub(crate) fn lift_1a21b(k: usize, base: &CountVector) -> CountVector {
    let top = base.max_n();
    let mut counts = vec![BigUint::one()];
    for n in 1..=top {
        let mut s = BigUint::zero();
        for i in 1..=n {
            let c = if i + 2 <= k {
                binomial(n as i64 - 1, i as i64 - 1)
            } else {
                binomial((n - i + k) as i64 - 3, k as i64 - 3)
            };
            s += big(&c) * base.get(n - i);
        }
        counts.push(s);
    }
    CountVector { counts }
}

pub(crate) fn two_ones_lift(init: &CountVector, base: Option<&CountVector>, top: usize) -> CountVector {
    let mut counts: Vec<BigUint> = init.counts.iter().take(4).take(top + 1).cloned().collect();
    for n in 4..=top {
        let src: &[BigUint] = match base {
            Some(b) => &b.counts,
            None => &counts,
        };
        let tail: BigUint = src[..n - 2].iter().sum();
        let v = &src[n - 1] + BigUint::from(n - 1) * &src[n - 2] + tail;
        counts.push(v);
    }
    CountVector { counts }
}

pub(crate) fn prepend_one(h: &Series) -> Result<Series> {
    let n = h.order();
    let one = Series::one(n);
    let one_minus_x = Series::from_ints(&[1, -1], n);
    let a = Series::var(n).div(&one_minus_x)?.mul(h);
    let b = Series::monomial(q(1), 2, n).div(&one_minus_x.mul(&Series::from_ints(&[1, -2], n)))?.mul(&h.sub(&one));
    Ok(one.add(&a).add(&b))
}

pub(crate) fn increasing_bound(m: usize, k: usize, order: usize) -> Result<Series> {
    let x = Series::var(order);
    let step = |j: usize| -> Result<Series> { x.div(&Series::from_ints(&[1, -(j as i64)], order)) };
    let mut total = Series::one(order);
    let mut prod = Series::one(order);
    for j in 1..=m {
        prod = prod.mul(&step(j)?);
        total = total.add(&prod);
    }
    let mut sub = step(m - 1)?.pow((k - m) as u32).mul(&step(m)?);
    for j in 1..m {
        sub = sub.mul(&step(j)?);
    }
    Ok(total.sub(&sub))
}

fn triangle(variant: TriangleVariant, max_n: usize) -> FascTriangle {
    let mut tri = FascTriangle::new(variant, max_n);
    let mut b = FascTriangle::new(TriangleVariant::B, max_n);
    let u = |v: usize| BigUint::from(v);
    // k = 2 rows.
    for n in 2..=max_n {
        for t in 2..=n {
            let a_val = match (n, t) {
                (2, _) => 1,
                (_, 2) => n - 2,
                _ if t == n => 2,
                _ => n - t + 1,
            };
            let b_val = match (n, t) {
                (2, 2) | (3, 2) => 1,
                (3, 3) => 2,
                (4, _) => 1,
                _ => 0,
            };
            let c_val = match (n, t) {
                (2, 2) => 1,
                (_, 2) => n - 2,
                (_, 3) => 1,
                _ => 0,
            };
            b.set(n, 2, t, u(b_val));
            match variant {
                TriangleVariant::A => tri.set(n, 2, t, u(a_val)),
                TriangleVariant::B => {}
                TriangleVariant::C => tri.set(n, 2, t, u(c_val)),
            }
        }
    }
    // k ≥ 3, by increasing n so every referenced entry is already known.
    let lifted = |x: &FascTriangle, n: usize, k: usize, t: usize| -> BigUint {
        let s: BigUint = (t - 1..=n - k + 1).map(|j| x.get(n - 2, k - 1, j)).sum();
        x.get(n - 1, k - 1, t) + s
    };
    for n in 3..=max_n {
        for k in 3..=n {
            for t in 2..=n - k + 2 {
                let bv = lifted(&b, n, k, t);
                match variant {
                    TriangleVariant::A => {
                        let v = lifted(&tri, n, k, t);
                        tri.set(n, k, t, v);
                    }
                    TriangleVariant::B => {}
                    TriangleVariant::C => {
                        let s: BigUint = (t..=n - k + 1).map(|j| tri.get(n - 1, k, j)).sum();
                        tri.set(n, k, t, b.get(n - 1, k - 1, t) + s);
                    }
                }
                b.set(n, k, t, bv);
            }
        }
    }
    if variant == TriangleVariant::B {
        return b;
    }
    tri
}
