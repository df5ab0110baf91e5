//! Dense univariate polynomials in the curve parameter `c`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A polynomial `Σ a_i c^i`, coefficients stored in ascending degree.
///
/// The coefficient vector never has a trailing zero, so the zero polynomial is
/// the empty vector and structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Scalar> {
    coeffs: Vec<F>,
}

impl<F: Scalar> Poly<F> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(F::one())
    }

    pub fn constant(a: F) -> Self {
        Self::from_coeffs(vec![a])
    }

    /// The variable `c`.
    pub fn var() -> Self {
        Self::monomial(F::one(), 1)
    }

    pub fn monomial(a: F, degree: usize) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); degree + 1];
        coeffs[degree] = a;
        Poly { coeffs }
    }

    pub fn from_coeffs(mut coeffs: Vec<F>) -> Self {
        while coeffs.last().is_some_and(|a| a.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&a| F::from_i64(a)).collect())
    }

    pub fn coeffs(&self) -> &[F] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F {
        self.coeffs.get(i).cloned().unwrap_or_else(F::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> F {
        self.coeffs.last().cloned().unwrap_or_else(F::zero)
    }

    /// Number of nonzero coefficients.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|a| !a.is_zero()).count()
    }

    pub fn scale(&self, a: &F) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        Poly {
            coeffs: self.coeffs.iter().map(|x| x.clone() * a.clone()).collect(),
        }
    }

    /// Multiply by `c^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![F::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a.clone() * F::from_i64(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &F) -> F {
        self.coeffs
            .iter()
            .rev()
            .fold(F::zero(), |acc, a| acc * x.clone() + a.clone())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = F::one() / self.leading();
        self.scale(&inv)
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn div_rem(&self, divisor: &Self) -> Result<(Self, Self)> {
        let dd = divisor.degree().ok_or(Error::DivisionByZeroPolynomial)?;
        let lead_inv = F::one() / divisor.leading();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return Ok((Self::zero(), Self::zero()));
        };
        if sd < dd {
            return Ok((Self::zero(), self.clone()));
        }
        let mut quot = vec![F::zero(); sd - dd + 1];
        for top in (dd..=sd).rev() {
            let q = rem[top].clone() * lead_inv.clone();
            if q.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = rem[idx].clone() - q.clone() * b.clone();
            }
            quot[top - dd] = q;
        }
        rem.truncate(dd);
        Ok((Self::from_coeffs(quot), Self::from_coeffs(rem)))
    }

    /// Quotient when `divisor` divides `self` exactly, otherwise `None`.
    pub fn exact_div(&self, divisor: &Self) -> Option<Self> {
        match self.div_rem(divisor) {
            Ok((q, r)) if r.is_zero() => Some(q),
            _ => None,
        }
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let (_, r) = x.div_rem(&y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        x.monic()
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::from_coeffs((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![F::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::from_coeffs(out)
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        Poly {
            coeffs: self.coeffs.iter().map(|a| -a.clone()).collect(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Scalar> $tr for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: Poly<F>) -> Poly<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Scalar> $tr<&Poly<F>> for Poly<F> {
            type Output = Poly<F>;
            fn $m(self, rhs: &Poly<F>) -> Poly<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::render_fraction(self, &Poly::one()))
    }
}

impl<F: Scalar> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    #[test]
    fn trailing_zeros_are_trimmed() {
        let p = P::from_i64s(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(P::from_i64s(&[0, 0]).is_zero());
    }

    #[test]
    fn division_with_remainder() {
        // c^3 + 2 = (c - 1)(c^2 + c + 1) + 3
        let a = P::from_i64s(&[2, 0, 0, 1]);
        let b = P::from_i64s(&[-1, 1]);
        let (q, r) = a.div_rem(&b).unwrap();
        assert_eq!(q, P::from_i64s(&[1, 1, 1]));
        assert_eq!(r, P::from_i64s(&[3]));
        assert_eq!(a.div_rem(&P::zero()), Err(Error::DivisionByZeroPolynomial));
    }

    #[test]
    fn gcd_is_monic() {
        let a = P::from_i64s(&[-2, 0, 2]); // 2(c^2 - 1)
        let b = P::from_i64s(&[3, 3]); // 3(c + 1)
        assert_eq!(P::gcd(&a, &b), P::from_i64s(&[1, 1]));
        assert!(P::gcd(&P::zero(), &P::zero()).is_zero());
    }

    #[test]
    fn derivative_and_eval() {
        let p = P::from_i64s(&[1, 0, -3, 2]);
        assert_eq!(p.derivative(), P::from_i64s(&[0, -6, 6]));
        assert_eq!(p.eval(&BigRational::from_i64(2)), BigRational::from_i64(5));
    }
}
