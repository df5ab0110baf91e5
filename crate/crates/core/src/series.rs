//! Truncated formal power series in `z` with coefficients in `F(c)`.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;

/// Default truncation order for generating functions.
pub const DEFAULT_ORDER: i64 = 64;

/// `Σ a_k z^k` known for `low ≤ k < order`.
///
/// `low` is the lowest allowed exponent (the "low shift"); it is negative only
/// for intermediate integrands such as `(4c - z^-2)·Σ ...`. Coefficients at or
/// above `order` are unknown and never stored; zero coefficients are dropped.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PowerSeries<F: Scalar> {
    order: i64,
    low: i64,
    coeffs: BTreeMap<i64, RatFunc<F>>,
}

impl<F: Scalar> PowerSeries<F> {
    pub fn zero(order: i64) -> Self {
        Self::with_low(order, 0)
    }

    pub fn with_low(order: i64, low: i64) -> Self {
        PowerSeries {
            order,
            low,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(order: i64) -> Self {
        let mut s = Self::zero(order);
        s.set(0, RatFunc::from_i64(1));
        s
    }

    /// Series from `(exponent, coefficient)` pairs; terms at or above `order`
    /// are discarded and `low` is the smallest nonzero exponent (or 0).
    pub fn from_terms(order: i64, terms: impl IntoIterator<Item = (i64, RatFunc<F>)>) -> Self {
        let mut coeffs: BTreeMap<i64, RatFunc<F>> = BTreeMap::new();
        for (k, a) in terms {
            if k < order {
                let slot = coeffs.entry(k).or_insert_with(RatFunc::zero);
                *slot = &*slot + &a;
            }
        }
        coeffs.retain(|_, a| !a.is_zero());
        let low = coeffs.keys().next().copied().unwrap_or(0);
        PowerSeries { order, low, coeffs }
    }

    pub fn order(&self) -> i64 {
        self.order
    }

    pub fn low_shift(&self) -> i64 {
        self.low
    }

    /// Lower the low shift to `low`; no stored coefficient may lie below it.
    pub fn rebase_low(mut self, low: i64) -> Self {
        assert!(low <= self.low, "rebase_low can only lower the shift");
        self.low = low;
        self
    }

    pub fn coeff(&self, k: i64) -> RatFunc<F> {
        assert!(k < self.order, "coefficient z^{k} is beyond truncation order {}", self.order);
        self.coeffs.get(&k).cloned().unwrap_or_else(RatFunc::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &RatFunc<F>)> {
        self.coeffs.iter().map(|(k, a)| (*k, a))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn set(&mut self, k: i64, a: RatFunc<F>) {
        if k >= self.order {
            return;
        }
        self.low = self.low.min(k);
        if a.is_zero() {
            self.coeffs.remove(&k);
        } else {
            self.coeffs.insert(k, a);
        }
    }

    pub fn truncate(&self, order: i64) -> Self {
        let order = order.min(self.order);
        PowerSeries {
            order,
            low: self.low,
            coeffs: self.coeffs.range(..order).map(|(k, a)| (*k, a.clone())).collect(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.combine(rhs, |a, b| a - b)
    }

    fn combine(&self, rhs: &Self, op: impl Fn(&RatFunc<F>, &RatFunc<F>) -> RatFunc<F>) -> Self {
        let order = self.order.min(rhs.order);
        let mut out = Self::with_low(order, self.low.min(rhs.low));
        let zero = RatFunc::zero();
        let keys: std::collections::BTreeSet<i64> =
            self.coeffs.keys().chain(rhs.coeffs.keys()).copied().collect();
        for k in keys.into_iter().filter(|&k| k < order) {
            let a = self.coeffs.get(&k).unwrap_or(&zero);
            let b = rhs.coeffs.get(&k).unwrap_or(&zero);
            out.set(k, op(a, b));
        }
        out
    }

    pub fn scale(&self, a: &RatFunc<F>) -> Self {
        let mut out = Self::with_low(self.order, self.low);
        for (k, x) in &self.coeffs {
            out.set(*k, x * a);
        }
        out
    }

    /// Multiply by `z^shift`.
    pub fn shift(&self, shift: i64) -> Self {
        PowerSeries {
            order: self.order + shift,
            low: self.low + shift,
            coeffs: self.coeffs.iter().map(|(k, a)| (k + shift, a.clone())).collect(),
        }
    }

    /// Cauchy product truncated at `order`.
    ///
    /// The result is only known where both factors are: its order is the
    /// least of `order`, `self.order + rhs.low` and `rhs.order + self.low`.
    /// Low shifts add.
    pub fn mul(&self, rhs: &Self, order: i64) -> Self {
        let order = order
            .min(self.order + rhs.low)
            .min(rhs.order + self.low);
        let mut acc: BTreeMap<i64, RatFunc<F>> = BTreeMap::new();
        for (ka, a) in &self.coeffs {
            for (kb, b) in &rhs.coeffs {
                let k = ka + kb;
                if k >= order {
                    break;
                }
                let slot = acc.entry(k).or_insert_with(RatFunc::zero);
                *slot = &*slot + &(a * b);
            }
        }
        acc.retain(|_, a| !a.is_zero());
        PowerSeries {
            order,
            low: self.low + rhs.low,
            coeffs: acc,
        }
    }

    /// Term-wise antiderivative `z^k ↦ z^(k+1)/(k+1)` with zero constant.
    pub fn integrate(&self) -> Result<Self> {
        if self.coeffs.contains_key(&-1) {
            return Err(Error::LogarithmicTerm);
        }
        Ok(PowerSeries {
            order: self.order + 1,
            low: self.low + 1,
            coeffs: self
                .coeffs
                .iter()
                .map(|(k, a)| (k + 1, a.scale(&F::ratio(1, k + 1))))
                .collect(),
        })
    }

    /// Formal derivative `z^k ↦ k z^(k-1)`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::with_low(self.order - 1, if self.low == 0 { 0 } else { self.low - 1 });
        for (k, a) in &self.coeffs {
            if *k != 0 {
                out.set(k - 1, a.scale(&F::from_i64(*k)));
            }
        }
        out
    }
}

/// Free-function form of [`PowerSeries::mul`].
pub fn series_multiply<F: Scalar>(a: &PowerSeries<F>, b: &PowerSeries<F>, order: i64) -> PowerSeries<F> {
    a.mul(b, order)
}

/// Free-function form of [`PowerSeries::integrate`].
pub fn series_formal_integrate<F: Scalar>(a: &PowerSeries<F>) -> Result<PowerSeries<F>> {
    a.integrate()
}
