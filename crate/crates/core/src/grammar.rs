//! Text grammar for scalars in `Q(c)` and for ring elements.
//!
//! Rendering clears denominators so only integers appear:
//!
//! * polynomials: `32*c^2-5`, `-c`, `0`
//! * multi-term numerator: `(32*c^2-5)/35`, `(c^2+1)/(c^2-1)`
//! * single-term numerator: `(c/2)`, `(-8*c/35)`, `(1/(c^2-1))`
//!
//! The parser accepts the ordinary infix grammar with `+ - * / ^` and
//! parentheses, which is a superset of everything the renderer emits.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;

fn render_int_poly(coeffs: &[BigInt]) -> String {
    int_poly_with(coeffs, "*", |d| format!("^{d}"))
}

fn latex_int_poly(coeffs: &[BigInt]) -> String {
    int_poly_with(coeffs, "", |d| format!("^{{{d}}}"))
}

fn int_poly_with(coeffs: &[BigInt], times: &str, power: impl Fn(usize) -> String) -> String {
    let mut out = String::new();
    for (deg, a) in coeffs.iter().enumerate().rev() {
        if a.is_zero() {
            continue;
        }
        let neg = a.is_negative();
        let mag = a.abs();
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if deg == 0 {
            out.push_str(&mag.to_string());
            continue;
        }
        if !mag.is_one() {
            out.push_str(&mag.to_string());
            out.push_str(times);
        }
        out.push('c');
        if deg > 1 {
            out.push_str(&power(deg));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Clear rational coefficients of `num / den` to a pair of coprime-content
/// integer polynomials with positive leading denominator.
fn integer_form<F: Scalar>(num: &Poly<F>, den: &Poly<F>) -> (Vec<BigInt>, Vec<BigInt>) {
    let nq: Vec<BigRational> = num.coeffs().iter().map(|a| a.to_big_rational()).collect();
    let dq: Vec<BigRational> = den.coeffs().iter().map(|a| a.to_big_rational()).collect();
    let lcm = nq
        .iter()
        .chain(dq.iter())
        .fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let scale = |v: &[BigRational]| -> Vec<BigInt> {
        v.iter()
            .map(|a| (a * BigRational::from_integer(lcm.clone())).to_integer())
            .collect()
    };
    let mut ni = scale(&nq);
    let mut di = scale(&dq);
    let g = ni
        .iter()
        .chain(di.iter())
        .fold(BigInt::zero(), |acc, a| acc.gcd(a));
    if !g.is_zero() && !g.is_one() {
        ni.iter_mut().for_each(|a| *a = &*a / &g);
        di.iter_mut().for_each(|a| *a = &*a / &g);
    }
    if di.last().is_some_and(|a| a.is_negative()) {
        ni.iter_mut().for_each(|a| *a = -&*a);
        di.iter_mut().for_each(|a| *a = -&*a);
    }
    (ni, di)
}

/// Canonical string of `num / den` (assumed already reduced).
pub fn render_fraction<F: Scalar>(num: &Poly<F>, den: &Poly<F>) -> String {
    if num.is_zero() {
        return "0".to_string();
    }
    let (ni, di) = integer_form(num, den);
    let num_str = render_int_poly(&ni);
    if di.len() == 1 && di[0].is_one() {
        return num_str;
    }
    let den_str = render_int_poly(&di);
    let den_str = if den_str.contains(['+', '-', '*']) {
        format!("({den_str})")
    } else {
        den_str
    };
    let terms = ni.iter().filter(|a| !a.is_zero()).count();
    if terms > 1 {
        format!("({num_str})/{den_str}")
    } else {
        format!("({num_str}/{den_str})")
    }
}

/// LaTeX for `num / den`, e.g. `\frac{32c^{2}-5}{35}`.
pub fn render_latex<F: Scalar>(num: &Poly<F>, den: &Poly<F>) -> String {
    if num.is_zero() {
        return "0".to_string();
    }
    let (mut ni, di) = integer_form(num, den);
    if di.len() == 1 && di[0].is_one() {
        return latex_int_poly(&ni);
    }
    let single = ni.iter().filter(|a| !a.is_zero()).count() == 1;
    let sign = if single && ni.iter().any(|a| a.is_negative()) {
        ni.iter_mut().for_each(|a| *a = -&*a);
        "-"
    } else {
        ""
    };
    format!("{sign}\\frac{{{}}}{{{}}}", latex_int_poly(&ni), latex_int_poly(&di))
}

/// Canonical string of a scalar.
pub fn render_scalar<F: Scalar>(a: &F) -> String {
    render_fraction(&Poly::constant(a.clone()), &Poly::one())
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Var(char),
    Op(char),
}

fn tokenize(s: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        match ch {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("ascii digits");
                out.push((start, Tok::Int(n)));
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push((i, Tok::Op(ch)));
                i += 1;
            }
            c if c.is_ascii_alphabetic() => {
                out.push((i, Tok::Var(c)));
                i += 1;
            }
            _ => {
                return Err(Error::Parse {
                    pos: i,
                    msg: format!("unexpected character {ch:?}"),
                })
            }
        }
    }
    Ok(out)
}

/// Values an expression can be evaluated into.
pub trait ExprTarget: Sized {
    fn integer(n: &BigInt) -> Result<Self>;
    fn variable(name: char) -> Option<Self>;
    fn add(self, rhs: Self) -> Self;
    fn sub(self, rhs: Self) -> Self;
    fn mul(self, rhs: Self) -> Result<Self>;
    fn div(self, rhs: Self) -> Result<Self>;
    fn neg(self) -> Self;
    fn pow(self, e: i64) -> Result<Self>;
}

struct Parser<'a> {
    toks: &'a [(usize, Tok)],
    at: usize,
    len: usize,
}

impl<'a> Parser<'a> {
    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.len, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn peek_op(&self) -> Option<char> {
        match self.toks.get(self.at) {
            Some((_, Tok::Op(c))) => Some(*c),
            _ => None,
        }
    }

    fn wrap<T>(&self, pos: usize, r: Result<T>) -> Result<T> {
        r.map_err(|e| match e {
            Error::Parse { .. } => e,
            other => Error::Parse {
                pos,
                msg: other.to_string(),
            },
        })
    }

    fn expr<T: ExprTarget>(&mut self) -> Result<T> {
        let mut acc = self.term::<T>()?;
        while let Some(op @ ('+' | '-')) = self.peek_op() {
            self.at += 1;
            let rhs = self.term::<T>()?;
            acc = if op == '+' { acc.add(rhs) } else { acc.sub(rhs) };
        }
        Ok(acc)
    }

    fn term<T: ExprTarget>(&mut self) -> Result<T> {
        let mut acc = self.unary::<T>()?;
        while let Some(op @ ('*' | '/')) = self.peek_op() {
            let pos = self.pos();
            self.at += 1;
            let rhs = self.unary::<T>()?;
            acc = self.wrap(pos, if op == '*' { acc.mul(rhs) } else { acc.div(rhs) })?;
        }
        Ok(acc)
    }

    fn unary<T: ExprTarget>(&mut self) -> Result<T> {
        match self.peek_op() {
            Some('-') => {
                self.at += 1;
                Ok(self.unary::<T>()?.neg())
            }
            Some('+') => {
                self.at += 1;
                self.unary()
            }
            _ => self.power(),
        }
    }

    fn power<T: ExprTarget>(&mut self) -> Result<T> {
        let base = self.atom::<T>()?;
        if self.peek_op() != Some('^') {
            return Ok(base);
        }
        let pos = self.pos();
        self.at += 1;
        let neg = match self.peek_op() {
            Some('-') => {
                self.at += 1;
                true
            }
            Some('+') => {
                self.at += 1;
                false
            }
            _ => false,
        };
        let e = match self.toks.get(self.at) {
            Some((_, Tok::Int(n))) => {
                self.at += 1;
                i64::try_from(n.clone()).or_else(|_| self.err("exponent too large"))?
            }
            _ => return self.err("expected integer exponent"),
        };
        self.wrap(pos, base.pow(if neg { -e } else { e }))
    }

    fn atom<T: ExprTarget>(&mut self) -> Result<T> {
        let pos = self.pos();
        match self.toks.get(self.at) {
            Some((_, Tok::Int(n))) => {
                self.at += 1;
                self.wrap(pos, T::integer(n))
            }
            Some((_, Tok::Var(v))) => {
                self.at += 1;
                match T::variable(*v) {
                    Some(x) => Ok(x),
                    None => Err(Error::Parse {
                        pos,
                        msg: format!("unknown variable {v:?}"),
                    }),
                }
            }
            Some((_, Tok::Op('('))) => {
                self.at += 1;
                let inner = self.expr::<T>()?;
                if self.peek_op() != Some(')') {
                    return self.err("expected ')'");
                }
                self.at += 1;
                Ok(inner)
            }
            Some(_) => self.err("unexpected token"),
            None => self.err("unexpected end of input"),
        }
    }
}

/// Parse a complete expression into any [`ExprTarget`].
pub fn parse_expr<T: ExprTarget>(s: &str) -> Result<T> {
    let toks = tokenize(s)?;
    let mut p = Parser {
        toks: &toks,
        at: 0,
        len: s.len(),
    };
    let v = p.expr::<T>()?;
    if p.at != toks.len() {
        return p.err("trailing input");
    }
    Ok(v)
}

pub fn parse_ratfunc<F: Scalar>(s: &str) -> Result<RatFunc<F>> {
    parse_expr(s)
}

/// Parse a constant such as `-3/4`; anything involving `c` is rejected.
pub fn parse_scalar<F: Scalar>(s: &str) -> Result<F> {
    let r: RatFunc<F> = parse_expr(s)?;
    r.as_constant().ok_or_else(|| Error::Parse {
        pos: 0,
        msg: format!("{s:?} is not a rational constant"),
    })
}

pub(crate) fn scalar_from_bigint<F: Scalar>(n: &BigInt) -> Result<F> {
    F::from_big_rational(&BigRational::from_integer(n.clone())).ok_or(Error::ScalarOverflow)
}

impl<F: Scalar> ExprTarget for RatFunc<F> {
    fn integer(n: &BigInt) -> Result<Self> {
        Ok(RatFunc::constant(scalar_from_bigint(n)?))
    }
    fn variable(name: char) -> Option<Self> {
        (name == 'c').then(RatFunc::var)
    }
    fn add(self, rhs: Self) -> Self {
        &self + &rhs
    }
    fn sub(self, rhs: Self) -> Self {
        &self - &rhs
    }
    fn mul(self, rhs: Self) -> Result<Self> {
        Ok(&self * &rhs)
    }
    fn div(self, rhs: Self) -> Result<Self> {
        self.checked_div(&rhs)
    }
    fn neg(self) -> Self {
        -self
    }
    fn pow(self, e: i64) -> Result<Self> {
        let e = i32::try_from(e).map_err(|_| Error::InvalidArgument("exponent too large".into()))?;
        RatFunc::pow(&self, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::Ratio;

    type R = RatFunc<BigRational>;

    fn roundtrip(s: &str) {
        let r: R = s.parse().unwrap();
        assert_eq!(r.to_string(), s);
    }

    #[test]
    fn canonical_strings() {
        roundtrip("(32*c^2-5)/35");
        roundtrip("(c/2)");
        roundtrip("(c^2/2)");
        roundtrip("(8*c/35)");
        roundtrip("(-c/2)");
        roundtrip("c+1");
        roundtrip("-c");
        roundtrip("0");
        roundtrip("(1/(c^2-1))");
        roundtrip("(c^2+1)/(c^2-1)");
        roundtrip("(3/35)");
        roundtrip("-7");
    }

    #[test]
    fn parses_general_expressions() {
        let a: R = "c*(c-1)/2 - c^2/2".parse().unwrap();
        assert_eq!(a.to_string(), "(-c/2)");
        let b: R = "(c^2-1)/(c-1)".parse().unwrap();
        assert_eq!(b.to_string(), "c+1");
        let c: R = "c^-1".parse().unwrap();
        assert_eq!(c.to_string(), "(1/c)");
    }

    #[test]
    fn parse_errors_carry_position() {
        let e = "c + * 2".parse::<R>().unwrap_err();
        assert!(matches!(e, Error::Parse { pos: 4, .. }), "{e:?}");
        assert!(matches!("1/(c-c)".parse::<R>(), Err(Error::Parse { .. })));
        assert!(matches!("t".parse::<R>(), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!("(c".parse::<R>(), Err(Error::Parse { .. })));
    }

    #[test]
    fn scalar_literals() {
        let q: BigRational = parse_scalar("-3/4").unwrap();
        assert_eq!(q, BigRational::ratio(-3, 4));
        assert!(parse_scalar::<BigRational>("c").is_err());
        let small: Ratio<i64> = parse_scalar("5/10").unwrap();
        assert_eq!(small, Ratio::new(1, 2));
        assert_eq!(
            parse_scalar::<Ratio<i64>>("99999999999999999999"),
            Err(Error::Parse {
                pos: 0,
                msg: Error::ScalarOverflow.to_string()
            })
        );
    }

    #[test]
    fn latex_rendering() {
        let r = |s: &str| s.parse::<RatFunc<BigRational>>().unwrap();
        assert_eq!(r("(32*c^2-5)/35").to_latex(), "\\frac{32c^{2}-5}{35}");
        assert_eq!(r("-8*c/35").to_latex(), "-\\frac{8c}{35}");
        assert_eq!(r("c^2-1").to_latex(), "c^{2}-1");
        assert_eq!(r("1/(c^2-1)").to_latex(), "\\frac{1}{c^{2}-1}");
    }

    #[test]
    fn compound_denominator_round_trip() {
        let a = "1/(2*c)".parse::<RatFunc<BigRational>>().unwrap();
        assert_eq!(a.to_string(), "(1/(2*c))");
        assert_eq!(a.to_string().parse::<RatFunc<BigRational>>().unwrap(), a);
    }
}
