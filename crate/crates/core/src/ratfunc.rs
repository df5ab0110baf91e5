//! Reduced rational functions in `c`: the scalar field `F(c)`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `num / den` with `gcd(num, den) = 1` and `den` monic.
///
/// The representation is canonical, so derived equality is equality of
/// rational functions. Zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc<F: Scalar> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Scalar> RatFunc<F> {
    /// Canonical form of `num / den`.
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        if den.is_constant() {
            let inv = F::one() / den.leading();
            return Ok(RatFunc {
                num: num.scale(&inv),
                den: Poly::one(),
            });
        }
        let g = Poly::gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let inv = F::one() / den.leading();
        Ok(RatFunc {
            num: num.scale(&inv),
            den: den.scale(&inv),
        })
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFunc {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(a: F) -> Self {
        Self::from_poly(Poly::constant(a))
    }

    pub fn from_i64(n: i64) -> Self {
        Self::constant(F::from_i64(n))
    }

    pub fn ratio(n: i64, d: i64) -> Self {
        Self::constant(F::ratio(n, d))
    }

    /// The transcendental `c`.
    pub fn var() -> Self {
        Self::from_poly(Poly::var())
    }

    pub fn num(&self) -> &Poly<F> {
        &self.num
    }

    pub fn den(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial itself, if the denominator is 1.
    pub fn as_poly(&self) -> Option<&Poly<F>> {
        self.is_polynomial().then_some(&self.num)
    }

    /// The scalar value, if this is a constant.
    pub fn as_constant(&self) -> Option<F> {
        (self.is_polynomial() && self.num.is_constant()).then(|| self.num.coeff(0))
    }

    pub fn scale(&self, a: &F) -> Self {
        RatFunc {
            num: self.num.scale(a),
            den: if a.is_zero() { Poly::one() } else { self.den.clone() },
        }
    }

    pub fn inv(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZeroPolynomial);
        }
        if rhs.is_polynomial() && rhs.num.is_constant() {
            return Ok(self.scale(&(F::one() / rhs.num.coeff(0))));
        }
        Self::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(RatFunc {
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    /// Exact value at `c = c0`.
    pub fn specialize(&self, c0: &F) -> Result<F> {
        let d = self.den.eval(c0);
        if d.is_zero() {
            return Err(Error::PoleAtSpecialization);
        }
        Ok(self.num.eval(c0) / d)
    }

    /// LaTeX form, e.g. `\frac{8c}{35}`.
    pub fn to_latex(&self) -> String {
        crate::grammar::render_latex(&self.num, &self.den)
    }

    pub fn derivative(&self) -> Self {
        if self.is_polynomial() {
            return Self::from_poly(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::new(top, &self.den * &self.den).expect("nonzero denominator")
    }
}

impl<F: Scalar> Poly<F> {
    /// Evaluate at a rational function value (composition `p(x(c))`).
    pub fn eval_at(&self, x: &RatFunc<F>) -> RatFunc<F> {
        if x.is_polynomial() && x.num() == &Poly::var() {
            return RatFunc::from_poly(self.clone());
        }
        self.coeffs()
            .iter()
            .rev()
            .fold(RatFunc::zero(), |acc, a| &(&acc * x) + &RatFunc::constant(a.clone()))
    }
}

/// Free-function form of [`RatFunc::new`].
pub fn normalize_ratfunc<F: Scalar>(num: Poly<F>, den: Poly<F>) -> Result<RatFunc<F>> {
    RatFunc::new(num, den)
}

impl<F: Scalar> Zero for RatFunc<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl<F: Scalar> One for RatFunc<F> {
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
}

impl<F: Scalar> Add for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn add(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
        .expect("product of nonzero denominators")
    }
}

impl<F: Scalar> Sub for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn sub(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self + &(-rhs)
    }
}

impl<F: Scalar> Mul for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn mul(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

/// Panics on division by zero, like integer division.
impl<F: Scalar> Div for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn div(self, rhs: &RatFunc<F>) -> RatFunc<F> {
        self.checked_div(rhs).expect("division by zero polynomial")
    }
}

impl<F: Scalar> Neg for &RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

macro_rules! forward_owned_binop {
    ($tr:ident, $m:ident) => {
        impl<F: Scalar> $tr for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: RatFunc<F>) -> RatFunc<F> {
                (&self).$m(&rhs)
            }
        }
        impl<F: Scalar> $tr<&RatFunc<F>> for RatFunc<F> {
            type Output = RatFunc<F>;
            fn $m(self, rhs: &RatFunc<F>) -> RatFunc<F> {
                (&self).$m(rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl<F: Scalar> Neg for RatFunc<F> {
    type Output = RatFunc<F>;
    fn neg(self) -> RatFunc<F> {
        -&self
    }
}

impl<F: Scalar> From<Poly<F>> for RatFunc<F> {
    fn from(p: Poly<F>) -> Self {
        Self::from_poly(p)
    }
}

impl<F: Scalar> fmt::Display for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::grammar::render_fraction(&self.num, &self.den))
    }
}

impl<F: Scalar> fmt::Debug for RatFunc<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl<F: Scalar> FromStr for RatFunc<F> {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        crate::grammar::parse_ratfunc(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;
    type R = RatFunc<BigRational>;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::ratio(n, d)
    }

    #[test]
    fn cancels_common_factor() {
        let r = R::new(P::from_i64s(&[-1, 0, 1]), P::from_i64s(&[-1, 1])).unwrap();
        assert_eq!(r, R::from_poly(P::from_i64s(&[1, 1])));
        assert!(r.is_polynomial());
    }

    #[test]
    fn zero_numerator_normalizes_to_zero() {
        let r = R::new(P::zero(), P::from_i64s(&[2, 0, 0, 1])).unwrap();
        assert!(r.is_zero());
        assert!(r.den().is_one());
    }

    #[test]
    fn zero_denominator_is_rejected() {
        assert_eq!(
            R::new(P::one(), P::zero()),
            Err(Error::DivisionByZeroPolynomial)
        );
    }

    #[test]
    fn gegenbauer_quotient_cancels() {
        // Q_2^(-1/2) = (1 - c^2)/2, so -c Q_2 / (c^2 - 1) = c/2.
        let q2 = P::from_coeffs(vec![q(1, 2), q(0, 1), q(-1, 2)]);
        let num = -(&P::var() * &q2);
        let r = R::new(num, P::from_i64s(&[-1, 0, 1])).unwrap();
        assert_eq!(r, R::from_poly(P::from_coeffs(vec![q(0, 1), q(1, 2)])));
    }

    #[test]
    fn denominator_is_monic() {
        let r = R::new(P::from_i64s(&[3]), P::from_i64s(&[0, 6])).unwrap();
        assert_eq!(r.den(), &P::var());
        assert_eq!(r.num(), &P::constant(q(1, 2)));
    }

    #[test]
    fn specialization() {
        let r: R = "(32*c^2-5)/35".parse().unwrap();
        assert_eq!(r.specialize(&q(1, 2)).unwrap(), q(3, 35));
        assert_eq!(R::var().specialize(&q(0, 1)).unwrap(), q(0, 1));
        let pole = R::new(P::one(), P::from_i64s(&[-1, 0, 1])).unwrap();
        assert_eq!(pole.specialize(&q(1, 1)), Err(Error::PoleAtSpecialization));
    }

    #[test]
    fn quotient_rule() {
        // d/dc (1/c) = -1/c^2
        let r = R::var().inv().unwrap();
        let expected = R::new(P::from_i64s(&[-1]), P::from_i64s(&[0, 0, 1])).unwrap();
        assert_eq!(r.derivative(), expected);
    }
}
