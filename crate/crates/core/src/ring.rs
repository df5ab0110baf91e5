//! The coordinate ring `R = F(c)[t, t^-1, u] / (u^m - p(t))` and the curve
//! involution `σ: t ↦ t^-1, u ↦ t^-2 u`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::grammar::{self, ExprTarget};
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;

/// The curve `u^m = p(t)` with `p` monic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveSpec<F: Scalar> {
    m: u32,
    p: Vec<RatFunc<F>>,
}

impl<F: Scalar> CurveSpec<F> {
    /// `p_coeffs` is `a_0, ..., a_n` with `a_n = 1`.
    pub fn new(m: u32, p_coeffs: Vec<RatFunc<F>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::UnsupportedCurve("m must be at least 1".into()));
        }
        match p_coeffs.last() {
            Some(lead) if p_coeffs.len() >= 2 && lead.is_one() => Ok(CurveSpec { m, p: p_coeffs }),
            _ => Err(Error::UnsupportedCurve(
                "p(t) must be monic of degree at least 1".into(),
            )),
        }
    }

    /// `u^2 = t^4 - 2ct^2 + 1` with `c` symbolic.
    pub fn djkm() -> Self {
        Self::djkm_with(RatFunc::var())
    }

    /// The DJKM curve at a fixed value of `c`. Rejects `c = ±1`, where the
    /// quartic acquires a double root (`a = ±b`).
    pub fn djkm_at(c0: F) -> Result<Self> {
        if c0 == F::one() || c0 == -F::one() {
            return Err(Error::DegenerateParameter(grammar::render_scalar(&c0)));
        }
        Ok(Self::djkm_with(RatFunc::constant(c0)))
    }

    fn djkm_with(c: RatFunc<F>) -> Self {
        let z = RatFunc::zero();
        CurveSpec {
            m: 2,
            p: vec![RatFunc::one(), z.clone(), c.scale(&F::from_i64(-2)), z, RatFunc::one()],
        }
    }

    /// The general quartic `(t^2 - a^2)(t^2 - b^2)` before the `a^2 b^2 = 1`
    /// normalization.
    pub fn quartic_ab(a: F, b: F) -> Self {
        let a2 = a.clone() * a;
        let b2 = b.clone() * b;
        let z = RatFunc::zero();
        CurveSpec {
            m: 2,
            p: vec![
                RatFunc::constant(a2.clone() * b2.clone()),
                z.clone(),
                RatFunc::constant(-(a2 + b2)),
                z,
                RatFunc::one(),
            ],
        }
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    /// Degree `n` of `p`.
    pub fn degree(&self) -> usize {
        self.p.len() - 1
    }

    pub fn p_coeffs(&self) -> &[RatFunc<F>] {
        &self.p
    }

    pub fn a(&self, j: usize) -> RatFunc<F> {
        self.p.get(j).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// True for `m = 2`, `p = t^4 + a_2 t^2 + 1`: the normalized DJKM shape.
    pub fn is_djkm(&self) -> bool {
        self.m == 2
            && self.p.len() == 5
            && self.p[0].is_one()
            && self.p[1].is_zero()
            && self.p[3].is_zero()
    }

    /// The parameter `c = -a_2 / 2` of a DJKM-shaped curve.
    pub fn djkm_c(&self) -> Option<RatFunc<F>> {
        self.is_djkm().then(|| self.p[2].scale(&F::ratio(-1, 2)))
    }

    /// `p(t)` as a ring element.
    pub fn p_elem(&self) -> RingElem<F> {
        RingElem::from_terms(self.p.iter().enumerate().map(|(j, a)| (j as i64, 0, a.clone())))
    }

    /// `p'(t)` as a ring element.
    pub fn p_prime_elem(&self) -> RingElem<F> {
        RingElem::from_terms(
            self.p
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, a)| (j as i64 - 1, 0, a.scale(&F::from_i64(j as i64)))),
        )
    }

    /// Product in `R`, rewriting `u^2 = p(t)`.
    pub fn ring_mul(&self, a: &RingElem<F>, b: &RingElem<F>) -> Result<RingElem<F>> {
        if self.m != 2 {
            return Err(Error::UnsupportedSheetCount(self.m));
        }
        Ok(self.mul_m2(a, b))
    }

    pub(crate) fn mul_m2(&self, a: &RingElem<F>, b: &RingElem<F>) -> RingElem<F> {
        let mut out = RingElem::zero();
        for (&(i, s), x) in &a.terms {
            for (&(j, r), y) in &b.terms {
                let xy = x * y;
                if s + r < 2 {
                    out.add_term(i + j, s + r, xy);
                } else {
                    for (k, ak) in self.p.iter().enumerate() {
                        if !ak.is_zero() {
                            out.add_term(i + j + k as i64, 0, &xy * ak);
                        }
                    }
                }
            }
        }
        out
    }

    /// The involution `σ(t) = t^-1`, `σ(u) = t^-2 u`. Defined only for the
    /// DJKM shape, where `t^-4 p(t) = p(t^-1)`.
    pub fn sigma_ring(&self, a: &RingElem<F>) -> Result<RingElem<F>> {
        if !self.is_djkm() {
            return Err(Error::SigmaUndefined);
        }
        Ok(sigma_unchecked(a))
    }
}

pub(crate) fn sigma_unchecked<F: Scalar>(a: &RingElem<F>) -> RingElem<F> {
    RingElem {
        terms: a
            .terms
            .iter()
            .map(|(&(i, s), x)| ((-i - 2 * s as i64, s), x.clone()))
            .collect(),
    }
}

/// `Σ f_{i,s} t^i u^s`, keyed by `(i, s)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElem<F: Scalar> {
    terms: BTreeMap<(i64, u32), RatFunc<F>>,
}

impl<F: Scalar> RingElem<F> {
    pub fn zero() -> Self {
        RingElem {
            terms: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self::monomial(RatFunc::one(), 0, 0)
    }

    pub fn scalar(a: RatFunc<F>) -> Self {
        Self::monomial(a, 0, 0)
    }

    /// `coeff · t^i u^s`.
    pub fn monomial(coeff: RatFunc<F>, i: i64, s: u32) -> Self {
        let mut e = Self::zero();
        e.add_term(i, s, coeff);
        e
    }

    /// `t^i u^s` with unit coefficient.
    pub fn basis(i: i64, s: u32) -> Self {
        Self::monomial(RatFunc::one(), i, s)
    }

    pub fn t() -> Self {
        Self::basis(1, 0)
    }

    pub fn u() -> Self {
        Self::basis(0, 1)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, u32, RatFunc<F>)>) -> Self {
        let mut e = Self::zero();
        for (i, s, a) in terms {
            e.add_term(i, s, a);
        }
        e
    }

    pub fn add_term(&mut self, i: i64, s: u32, a: RatFunc<F>) {
        if a.is_zero() {
            return;
        }
        match self.terms.entry((i, s)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(a);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get() + &a;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: i64, s: u32) -> RatFunc<F> {
        self.terms.get(&(i, s)).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Terms `(i, s, coefficient)` in `(i, s)`-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &RatFunc<F>)> {
        self.terms.iter().map(|(&(i, s), a)| (i, s, a))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Set of sheets present.
    pub fn sheets(&self) -> impl Iterator<Item = u32> + '_ {
        self.terms.keys().map(|&(_, s)| s)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (&(i, s), a) in &rhs.terms {
            out.add_term(i, s, a.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        RingElem {
            terms: self.terms.iter().map(|(k, a)| (*k, -a)).collect(),
        }
    }

    pub fn scale(&self, a: &RatFunc<F>) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        RingElem {
            terms: self.terms.iter().map(|(k, x)| (*k, x * a)).collect(),
        }
    }

    /// Multiply by `t^k`.
    pub fn shift_t(&self, k: i64) -> Self {
        RingElem {
            terms: self.terms.iter().map(|(&(i, s), a)| ((i + k, s), a.clone())).collect(),
        }
    }

    /// Product where at most one factor carries `u`, so no curve is needed.
    fn mul_free(&self, rhs: &Self) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i, s), x) in &self.terms {
            for (&(j, r), y) in &rhs.terms {
                if s + r > 1 {
                    return Err(Error::InvalidArgument(
                        "u^2 needs a curve: multiply through CurveSpec::ring_mul".into(),
                    ));
                }
                out.add_term(i + j, s + r, x * y);
            }
        }
        Ok(out)
    }

    /// Map every coefficient (used to specialize `c`).
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc<F>) -> Result<RatFunc<F>>) -> Result<Self> {
        let mut out = Self::zero();
        for (&(i, s), a) in &self.terms {
            out.add_term(i, s, f(a)?);
        }
        Ok(out)
    }

    /// Leibniz expansion `d(t^i u^s) = i t^(i-1) u^s dt + s t^i u^(s-1) du`.
    pub fn d(&self) -> crate::omega::DiffForm<F> {
        let mut dt = Self::zero();
        let mut du = Self::zero();
        for (&(i, s), a) in &self.terms {
            if i != 0 {
                dt.add_term(i - 1, s, a.scale(&F::from_i64(i)));
            }
            if s != 0 {
                du.add_term(i, s - 1, a.scale(&F::from_i64(s as i64)));
            }
        }
        crate::omega::DiffForm { dt, du }
    }
}

/// Free-function form of [`RingElem::d`].
pub fn ring_d<F: Scalar>(a: &RingElem<F>) -> crate::omega::DiffForm<F> {
    a.d()
}

fn coeff_str<F: Scalar>(a: &RatFunc<F>) -> String {
    let s = a.to_string();
    if s.starts_with('(') || (a.is_polynomial() && a.num().term_count() <= 1) {
        s
    } else {
        format!("({s})")
    }
}

/// `f(c)*t^i*u^s` terms joined by ` + `, in `(i, s)` order; `0` when empty.
impl<F: Scalar> fmt::Display for RingElem<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (n, (&(i, s), a)) in self.terms.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*t^{}*u^{}", coeff_str(a), i, s)?;
        }
        Ok(())
    }
}

impl<F: Scalar> FromStr for RingElem<F> {
    type Err = Error;

    /// Parses the rendering grammar and ordinary expressions such as
    /// `t^4*u` or `2*c*t^-1`. Powers `u^s` with `s ≥ 2` are rejected since the
    /// parser has no curve to reduce them.
    fn from_str(s: &str) -> Result<Self> {
        grammar::parse_expr(s)
    }
}

impl<F: Scalar> ExprTarget for RingElem<F> {
    fn integer(n: &BigInt) -> Result<Self> {
        Ok(Self::scalar(RatFunc::constant(grammar::scalar_from_bigint(n)?)))
    }

    fn variable(name: char) -> Option<Self> {
        match name {
            'c' => Some(Self::scalar(RatFunc::var())),
            't' => Some(Self::t()),
            'u' => Some(Self::u()),
            _ => None,
        }
    }

    fn add(self, rhs: Self) -> Self {
        RingElem::add(&self, &rhs)
    }

    fn sub(self, rhs: Self) -> Self {
        RingElem::sub(&self, &rhs)
    }

    fn mul(self, rhs: Self) -> Result<Self> {
        self.mul_free(&rhs)
    }

    fn div(self, rhs: Self) -> Result<Self> {
        match rhs.terms.iter().next() {
            Some((&(0, 0), a)) if rhs.len() == 1 => Ok(self.scale(&a.inv()?)),
            Some((&(k, 0), a)) if rhs.len() == 1 => Ok(self.scale(&a.inv()?).shift_t(-k)),
            None => Err(Error::DivisionByZeroPolynomial),
            _ => Err(Error::InvalidArgument("can only divide by a monomial in t".into())),
        }
    }

    fn neg(self) -> Self {
        RingElem::neg(&self)
    }

    fn pow(self, e: i64) -> Result<Self> {
        if self.len() == 1 {
            let (&(i, s), a) = self.terms.iter().next().expect("one term");
            if s == 0 {
                let e32 = i32::try_from(e).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
                return Ok(Self::monomial(a.pow(e32)?, i * e, 0));
            }
            if e == 0 {
                return Ok(Self::one());
            }
            if e == 1 {
                return Ok(self);
            }
        }
        if e < 0 {
            return Err(Error::InvalidArgument(
                "negative powers only of monomials in t".into(),
            ));
        }
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul_free(&self)?;
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type E = RingElem<BigRational>;
    type R = RatFunc<BigRational>;

    fn curve() -> CurveSpec<BigRational> {
        CurveSpec::djkm()
    }

    fn p_of_t() -> E {
        E::from_terms([(4, 0, R::one()), (2, 0, "-2*c".parse().unwrap()), (0, 0, R::one())])
    }

    #[test]
    fn u_squared_is_the_quartic() {
        assert_eq!(curve().ring_mul(&E::u(), &E::u()).unwrap(), p_of_t());
    }

    #[test]
    fn t_powers_add() {
        let p = curve().ring_mul(&E::basis(3, 0), &E::basis(-7, 0)).unwrap();
        assert_eq!(p, E::basis(-4, 0));
    }

    #[test]
    fn shifted_u_product() {
        let p = curve().ring_mul(&E::basis(-1, 1), &E::basis(1, 1)).unwrap();
        assert_eq!(p, p_of_t());
    }

    #[test]
    fn general_m_multiplication_is_unsupported() {
        let cubic = CurveSpec::<BigRational>::new(3, vec![R::one(), R::zero(), R::one()]).unwrap();
        assert_eq!(
            cubic.ring_mul(&E::u(), &E::u()),
            Err(Error::UnsupportedSheetCount(3))
        );
    }

    #[test]
    fn sigma_on_generators() {
        let c = curve();
        assert_eq!(c.sigma_ring(&E::t()).unwrap(), E::basis(-1, 0));
        assert_eq!(c.sigma_ring(&E::u()).unwrap(), E::basis(-2, 1));
        let x = E::basis(3, 1);
        assert_eq!(c.sigma_ring(&c.sigma_ring(&x).unwrap()).unwrap(), x);
    }

    #[test]
    fn sigma_needs_djkm_shape() {
        let q = CurveSpec::quartic_ab(BigRational::from_i64(2), BigRational::from_i64(3));
        assert_eq!(q.sigma_ring(&E::t()), Err(Error::SigmaUndefined));
    }

    #[test]
    fn sigma_respects_the_defining_relation() {
        // σ(u)^2 = t^-4 p(t) = 1 - 2c t^-2 + t^-4 = σ(p(t))
        let c = curve();
        let su = c.sigma_ring(&E::u()).unwrap();
        let lhs = c.ring_mul(&su, &su).unwrap();
        assert_eq!(lhs, c.sigma_ring(&p_of_t()).unwrap());
        assert_eq!(lhs, p_of_t().shift_t(-4));
    }

    #[test]
    fn differential_of_monomials() {
        let d = E::basis(5, 0).d();
        assert_eq!(d.dt, E::monomial(R::from_i64(5), 4, 0));
        assert!(d.du.is_zero());
        let d = E::u().d();
        assert!(d.dt.is_zero());
        assert_eq!(d.du, E::one());
        let d = E::basis(3, 1).d();
        assert_eq!(d.dt, E::monomial(R::from_i64(3), 2, 1));
        assert_eq!(d.du, E::basis(3, 0));
    }

    #[test]
    fn render_and_parse() {
        let e: E = "t^4*u - 2*c*t^2 + 1/2".parse().unwrap();
        let s = e.to_string();
        assert_eq!(s, "(1/2)*t^0*u^0 + -2*c*t^2*u^0 + 1*t^4*u^1");
        assert_eq!(s.parse::<E>().unwrap(), e);
        let f: E = "(c+1)*t^-3*u".parse().unwrap();
        assert_eq!(f.to_string(), "(c+1)*t^-3*u^1");
        assert!("u^2".parse::<E>().is_err());
        assert!("x".parse::<E>().is_err());
    }
}
