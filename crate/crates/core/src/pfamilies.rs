//! The polynomial families `P_{f,k}(c)`, `f ∈ {-1, -2, -3, -4}`.
//!
//! Every family solves
//!
//! ```text
//! (6 + 2k) P_k = 4kc P_{k-2} - 2(k - 3) P_{k-4},   k ≥ 0,
//! ```
//!
//! and differs only in its initial values: `P_{f,j} = δ_{f,j}` for
//! `j ∈ {-4, ..., -1}`. Three independent constructions are provided:
//! the recursion itself, the generating series `Σ_k P_{f,k-4} z^k` built from
//! Gegenbauer expansions of `(1 - 2cz^2 + z^4)^{±1/2}`, and (for the odd
//! families) the closed form in `Q_n^(-1/2)`.

use std::fmt;


use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use crate::series::PowerSeries;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Family {
    M1,
    M2,
    M3,
    M4,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::M1, Family::M2, Family::M3, Family::M4];

    pub fn from_index(f: i64) -> Result<Self> {
        match f {
            -1 => Ok(Family::M1),
            -2 => Ok(Family::M2),
            -3 => Ok(Family::M3),
            -4 => Ok(Family::M4),
            _ => Err(Error::UnknownFamily(f)),
        }
    }

    /// `-1`, `-2`, `-3` or `-4`.
    pub fn index(self) -> i64 {
        match self {
            Family::M1 => -1,
            Family::M2 => -2,
            Family::M3 => -3,
            Family::M4 => -4,
        }
    }

    /// Initial values `(P_{-4}, P_{-3}, P_{-2}, P_{-1})`.
    pub fn initials<F: Scalar>(self) -> [F; 4] {
        std::array::from_fn(|j| if j as i64 - 4 == self.index() { F::one() } else { F::zero() })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// `Q_n^(λ)(c)` for `n = 0..=nmax`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct GegenbauerTable<F: Scalar> {
    pub lambda: F,
    entries: Vec<Poly<F>>,
}

impl<F: Scalar> GegenbauerTable<F> {
    pub fn get(&self, n: usize) -> &Poly<F> {
        &self.entries[n]
    }

    pub fn entries(&self) -> &[Poly<F>] {
        &self.entries
    }

    pub fn nmax(&self) -> usize {
        self.entries.len() - 1
    }
}

/// Gegenbauer polynomials by `n C_n = 2c(n+λ-1) C_{n-1} - (n+2λ-2) C_{n-2}`.
pub fn gegenbauer<F: Scalar>(lambda: F, nmax: usize) -> GegenbauerTable<F> {
    let mut entries = vec![Poly::one()];
    if nmax >= 1 {
        entries.push(Poly::monomial(F::from_i64(2) * lambda.clone(), 1));
    }
    for n in 2..=nmax {
        let nf = F::from_i64(n as i64);
        let a = (F::from_i64(2) * (nf.clone() + lambda.clone() - F::one())).clone();
        let b = nf.clone() + F::from_i64(2) * lambda.clone() - F::from_i64(2);
        let next = &entries[n - 1].shift(1).scale(&a) - &entries[n - 2].scale(&b);
        entries.push(next.scale(&(F::one() / nf)));
    }
    GegenbauerTable { lambda, entries }
}

/// `P_k` for `k = -4..=kmax`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PFamilyTable<F: Scalar> {
    family: Option<Family>,
    entries: Vec<Poly<F>>,
}

impl<F: Scalar> PFamilyTable<F> {
    /// The named family, or `None` for a table built from arbitrary initials.
    pub fn family(&self) -> Option<Family> {
        self.family
    }

    pub fn kmax(&self) -> i64 {
        self.entries.len() as i64 - 5
    }

    pub fn get(&self, k: i64) -> &Poly<F> {
        assert!(
            (-4..=self.kmax()).contains(&k),
            "k = {k} outside table range -4..={}",
            self.kmax()
        );
        &self.entries[(k + 4) as usize]
    }

    /// `(k, P_k)` in ascending `k`.
    pub fn iter(&self) -> impl Iterator<Item = (i64, &Poly<F>)> {
        self.entries.iter().enumerate().map(|(i, p)| (i as i64 - 4, p))
    }

    /// `Σ_{k ≥ 0} P_{k-4} z^k`, truncated at `order`.
    pub fn generating_series(&self, order: i64) -> PowerSeries<F> {
        let order = order.min(self.entries.len() as i64);
        PowerSeries::from_terms(
            order,
            self.iter().map(|(k, p)| (k + 4, RatFunc::from_poly(p.clone()))),
        )
        .rebase_low(0)
    }
}

/// Recursion with arbitrary initial values `(P_{-4}, P_{-3}, P_{-2}, P_{-1})`.
pub fn recursion_with_initials<F: Scalar>(initials: [F; 4], kmax: i64) -> PFamilyTable<F> {
    let mut entries: Vec<Poly<F>> = initials.into_iter().map(Poly::constant).collect();
    for k in 0..=kmax {
        let at = |j: i64| &entries[(j + 4) as usize];
        let up = at(k - 2).shift(1).scale(&F::from_i64(4 * k));
        let down = at(k - 4).scale(&F::from_i64(2 * (k - 3)));
        let next = (&up - &down).scale(&F::ratio(1, 6 + 2 * k));
        entries.push(next);
    }
    entries.truncate((kmax + 5).max(0) as usize);
    PFamilyTable {
        family: None,
        entries,
    }
}

pub fn pfamily_recursion<F: Scalar>(family: Family, kmax: i64) -> PFamilyTable<F> {
    PFamilyTable {
        family: Some(family),
        ..recursion_with_initials(family.initials(), kmax)
    }
}

/// `c^2 - 1`
fn c2_minus_1<F: Scalar>() -> Poly<F> {
    Poly::from_i64s(&[-1, 0, 1])
}

fn exact_div_c2_minus_1<F: Scalar>(p: &Poly<F>) -> Poly<F> {
    p.exact_div(&c2_minus_1())
        .unwrap_or_else(|| panic!("{p} is not divisible by c^2-1"))
}

/// `Σ_n Q_n^(λ) z^(2n + shift)` with each term scaled by `weight(n)`.
fn gegenbauer_series<F: Scalar>(
    q: &GegenbauerTable<F>,
    shift: i64,
    order: i64,
    weight: impl Fn(i64) -> F,
) -> PowerSeries<F> {
    PowerSeries::from_terms(
        order,
        q.entries()
            .iter()
            .enumerate()
            .map(|(n, p)| (2 * n as i64 + shift, RatFunc::from_poly(p.scale(&weight(n as i64))))),
    )
}

/// Generating series `Σ_{k≥0} P_{f,k-4}(c) z^k` truncated at `order`, built
/// without the recursion.
pub fn pfamily_series<F: Scalar>(family: Family, order: i64) -> PowerSeries<F> {
    assert!(order >= 1, "truncation order must be positive");
    // Enough Gegenbauer terms for every product below to be exact to `order`.
    let nmax = (order / 2 + 3) as usize;
    let work = order + 2;
    let q_half = gegenbauer::<F>(F::ratio(-1, 2), nmax);
    // z·sqrt(1 - 2cz^2 + z^4)
    let root = gegenbauer_series(&q_half, 1, work, |_| F::one());

    let series = match family {
        Family::M4 => {
            let q = gegenbauer::<F>(F::ratio(3, 2), nmax);
            // (4c - z^-2) Σ Q_n^(3/2) z^(2n)
            let four_c = RatFunc::var().scale(&F::from_i64(4));
            let integrand = gegenbauer_series(&q, 0, work, |_| F::one())
                .scale(&four_c)
                .sub(&gegenbauer_series(&q, -2, work, |_| F::one()));
            let integral = integrand.integrate().expect("no z^-1 term");
            root.mul(&integral, order)
        }
        Family::M2 => {
            let q = gegenbauer::<F>(F::ratio(3, 2), nmax);
            let integral = gegenbauer_series(&q, 1, work, |n| F::ratio(1, 2 * n + 1));
            root.mul(&integral, order).rebase_low(0)
        }
        Family::M1 | Family::M3 => {
            // M1: (cz - z^3 - c·root)/(c^2-1);  M3: (c^2 z - c z^3 - root)/(c^2-1)
            let c = Poly::<F>::var();
            let (lin, cubic, root_factor) = match family {
                Family::M1 => (c.clone(), Poly::one(), c),
                _ => (c.pow(2), c.clone(), Poly::one()),
            };
            let mut num: Vec<(i64, Poly<F>)> = vec![(1, lin), (3, -cubic)];
            for (k, a) in root.terms() {
                let a = a.as_poly().expect("Gegenbauer coefficients are polynomials");
                num.push((k, -(a * &root_factor)));
            }
            let mut acc = std::collections::BTreeMap::<i64, Poly<F>>::new();
            for (k, p) in num {
                let slot = acc.entry(k).or_insert_with(Poly::zero);
                *slot = &*slot + &p;
            }
            PowerSeries::from_terms(
                order,
                acc.into_iter()
                    .map(|(k, p)| (k, RatFunc::from_poly(exact_div_c2_minus_1(&p)))),
            )
            .rebase_low(0)
        }
    };
    let series = series.truncate(order);
    assert_eq!(series.low_shift(), 0, "generating function must start at z^0");
    assert_eq!(series.order(), order, "series construction lost precision");
    series
}

/// The closed form of the odd families: `P_{-3,2n-3} = -Q_n/(c^2-1)` and
/// `P_{-1,2n-3} = -c Q_n/(c^2-1)` with `Q_n = Q_n^(-1/2)`, zero at even `k`.
/// `None` for the even families, which have no such closed form.
pub fn pfamily_closed_form<F: Scalar>(family: Family, kmax: i64) -> Option<PFamilyTable<F>> {
    let scale_c = match family {
        Family::M1 => true,
        Family::M3 => false,
        Family::M2 | Family::M4 => return None,
    };
    let nmax = ((kmax + 3) / 2).max(0) as usize;
    let q = gegenbauer::<F>(F::ratio(-1, 2), nmax);
    let mut entries: Vec<Poly<F>> = family.initials::<F>().into_iter().map(Poly::constant).collect();
    for k in 0..=kmax {
        let p = if k % 2 == 0 {
            Poly::zero()
        } else {
            let n = ((k + 3) / 2) as usize;
            let mut top = -q.get(n);
            if scale_c {
                top = top.shift(1);
            }
            exact_div_c2_minus_1(&top)
        };
        entries.push(p);
    }
    entries.truncate((kmax + 5).max(0) as usize);
    Some(PFamilyTable {
        family: Some(family),
        entries,
    })
}

/// Outcome of [`check_funde`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FundeCheck {
    pub holds: bool,
    /// Lowest power of `z` where the two sides differ.
    pub first_failure: Option<i64>,
    /// Highest power of `z` compared.
    pub checked_through: i64,
}

/// Verify that `P(z) = Σ_k P_{k-4} z^k`, built by the recursion from the given
/// initial values `(P_{-4}, P_{-3}, P_{-2}, P_{-1})`, satisfies
///
/// ```text
/// (z^5 - 2cz^3 + z) P' - (3z^4 - 4cz^2 + 1) P
///     = 2(P_{-1} + c P_{-3}) z^3 + P_{-2} z^2 + (4cz^2 - 1) P_{-4}
/// ```
///
/// through `z^(order-5)`.
pub fn check_funde<F: Scalar>(initials: [F; 4], order: i64) -> Result<FundeCheck> {
    if order < 8 {
        return Err(Error::InvalidArgument(format!("check_funde needs order ≥ 8, got {order}")));
    }
    let table = recursion_with_initials(initials.clone(), order - 5);
    let p = table.generating_series(order);
    let c = RatFunc::<F>::var();
    let int = |n: i64| RatFunc::<F>::from_i64(n);
    let poly = |terms: Vec<(i64, RatFunc<F>)>| PowerSeries::from_terms(order + 8, terms);

    let left_mult = poly(vec![(5, int(1)), (3, c.scale(&F::from_i64(-2))), (1, int(1))]);
    let right_mult = poly(vec![(4, int(3)), (2, c.scale(&F::from_i64(-4))), (0, int(1))]);
    let lhs = left_mult
        .mul(&p.derivative(), order)
        .sub(&right_mult.mul(&p, order));

    let [p4, p3, p2, p1] = initials.map(RatFunc::constant);
    let rhs = poly(vec![
        (3, (&p1 + &(&c * &p3)).scale(&F::from_i64(2))),
        (2, p2),
        (2, &c.scale(&F::from_i64(4)) * &p4),
        (0, -p4),
    ]);

    let through = order - 5;
    let first_failure = (0..=through).find(|&k| lhs.coeff(k) != rhs.coeff(k));
    Ok(FundeCheck {
        holds: first_failure.is_none(),
        first_failure,
        checked_through: through,
    })
}

/// One of the second-order identities verified by [`check_odes`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum OdeIdentity {
    /// `(1 - c^2) Q_n'' + n(n-1) Q_n = 0`
    Gegenbauer,
    /// `(c^2 - 1) P'' + 4c P' - (n+1)(n-2) P = 0`, `P = P_{-3,2n-3}`
    FamilyM3,
    /// `(c^4 - c^2) P'' + 2c(c^2+1) P' - (c^2 n(n-1) + 2) P = 0`, `P = P_{-1,2n-3}`
    FamilyM1,
    /// `P_{-1,2n-3} = c P_{-3,2n-3}`
    CrossFamily,
}

impl OdeIdentity {
    pub const ALL: [OdeIdentity; 4] = [
        OdeIdentity::Gegenbauer,
        OdeIdentity::FamilyM3,
        OdeIdentity::FamilyM1,
        OdeIdentity::CrossFamily,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OdeIdentity::Gegenbauer => "gegenbauer",
            OdeIdentity::FamilyM3 => "p_m3",
            OdeIdentity::FamilyM1 => "p_m1",
            OdeIdentity::CrossFamily => "p_m1_eq_c_p_m3",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct OdeReport {
    pub nmax: usize,
    pub checked: usize,
    pub failures: Vec<(usize, OdeIdentity)>,
}

impl OdeReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Residual of a single identity at index `n` (zero when it holds).
fn ode_residual<F: Scalar>(
    id: OdeIdentity,
    n: usize,
    q: &Poly<F>,
    p3: &Poly<F>,
    p1: &Poly<F>,
) -> Poly<F> {
    let ni = n as i64;
    let c = Poly::<F>::var();
    match id {
        OdeIdentity::Gegenbauer => {
            let d2 = q.derivative().derivative();
            &(&Poly::from_i64s(&[1, 0, -1]) * &d2) + &q.scale(&F::from_i64(ni * (ni - 1)))
        }
        OdeIdentity::FamilyM3 => {
            let d1 = p3.derivative();
            let d2 = d1.derivative();
            &(&(&Poly::from_i64s(&[-1, 0, 1]) * &d2) + &d1.shift(1).scale(&F::from_i64(4)))
                - &p3.scale(&F::from_i64((ni + 1) * (ni - 2)))
        }
        OdeIdentity::FamilyM1 => {
            let d1 = p1.derivative();
            let d2 = d1.derivative();
            let a = &Poly::from_i64s(&[0, 0, -1, 0, 1]) * &d2;
            let b = &Poly::from_i64s(&[0, 2, 0, 2]) * &d1;
            let k = &Poly::from_i64s(&[-2, 0, -(ni * (ni - 1))]) * p1;
            &(&a + &b) + &k
        }
        OdeIdentity::CrossFamily => p1 - &(&c * p3),
    }
}

/// Check all four identities for `2 ≤ n ≤ nmax`; the `P` values come from the
/// recursion and `Q_n` from the Gegenbauer recurrence.
pub fn check_odes<F: Scalar>(nmax: usize) -> Result<OdeReport> {
    if nmax < 2 {
        return Err(Error::InvalidArgument(format!("check_odes needs nmax ≥ 2, got {nmax}")));
    }
    let kmax = 2 * nmax as i64 - 3;
    let q = gegenbauer::<F>(F::ratio(-1, 2), nmax);
    let p3 = pfamily_recursion::<F>(Family::M3, kmax);
    let p1 = pfamily_recursion::<F>(Family::M1, kmax);
    let mut failures = Vec::new();
    let mut checked = 0;
    for n in 2..=nmax {
        let k = 2 * n as i64 - 3;
        for id in OdeIdentity::ALL {
            checked += 1;
            if !ode_residual(id, n, q.get(n), p3.get(k), p1.get(k)).is_zero() {
                failures.push((n, id));
            }
        }
    }
    Ok(OdeReport {
        nmax,
        checked,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use num_traits::Zero;
    use super::*;
    use num_rational::BigRational;

    type P = Poly<BigRational>;

    fn p(s: &str) -> P {
        let r: RatFunc<BigRational> = s.parse().unwrap();
        r.as_poly().unwrap().clone()
    }

    fn half() -> BigRational {
        BigRational::ratio(-1, 2)
    }

    #[test]
    fn gegenbauer_low_orders() {
        let q = gegenbauer(half(), 3);
        assert_eq!(q.get(0), &P::one());
        assert_eq!(q.get(1), &p("-c"));
        assert_eq!(q.get(2), &p("(1-c^2)/2"));
    }

    #[test]
    fn gegenbauer_minus_half_divisible_by_c2_minus_1() {
        let q = gegenbauer(half(), 20);
        for n in 2..=20 {
            assert!(q.get(n).exact_div(&c2_minus_1()).is_some(), "n = {n}");
        }
    }

    #[test]
    fn gegenbauer_square_is_the_quadratic() {
        // (Σ Q_n^(-1/2) w^n)^2 = 1 - 2cw + w^2
        let n = 16;
        let q = gegenbauer(half(), n);
        let s = PowerSeries::from_terms(
            n as i64 + 1,
            q.entries().iter().enumerate().map(|(i, x)| (i as i64, RatFunc::from_poly(x.clone()))),
        );
        let sq = s.mul(&s, n as i64 + 1);
        let expected = PowerSeries::from_terms(
            n as i64 + 1,
            [(0, RatFunc::from_i64(1)), (1, "-2*c".parse().unwrap()), (2, RatFunc::from_i64(1))],
        );
        assert_eq!(sq, expected);
    }

    #[test]
    fn recursion_examples() {
        let m3 = pfamily_recursion::<BigRational>(Family::M3, 5);
        assert_eq!(m3.get(1), &p("1/2"));
        assert_eq!(m3.get(3), &p("c/2"));
        assert_eq!(m3.get(5), &p("(5*c^2-1)/8"));
        let m4 = pfamily_recursion::<BigRational>(Family::M4, 4);
        assert_eq!(m4.get(4), &p("(32*c^2-5)/35"));
        let m2 = pfamily_recursion::<BigRational>(Family::M2, 4);
        assert_eq!(m2.get(4), &p("8*c/35"));
        let m1 = pfamily_recursion::<BigRational>(Family::M1, 0);
        assert_eq!(m1.get(-1), &P::one());
        for k in [-4, -3, -2, 0] {
            assert!(m1.get(k).is_zero());
        }
    }

    #[test]
    fn series_initial_coefficients() {
        let s4 = pfamily_series::<BigRational>(Family::M4, 16);
        assert_eq!(s4.coeff(0), RatFunc::from_i64(1));
        let s1 = pfamily_series::<BigRational>(Family::M1, 16);
        let got: Vec<_> = (0..4).map(|k| s1.coeff(k)).collect();
        assert_eq!(
            got,
            vec![RatFunc::zero(), RatFunc::zero(), RatFunc::zero(), RatFunc::from_i64(1)]
        );
        let s3 = pfamily_series::<BigRational>(Family::M3, 16);
        // coefficient of z^(2n+1) at n = 2 is P_{-3,1} = 1/2
        assert_eq!(s3.coeff(5), RatFunc::ratio(1, 2));
    }

    #[test]
    fn closed_form_only_for_odd_families() {
        assert!(pfamily_closed_form::<BigRational>(Family::M2, 10).is_none());
        let t = pfamily_closed_form::<BigRational>(Family::M3, 5).unwrap();
        assert_eq!(t.get(5), &p("(5*c^2-1)/8"));
    }

    #[test]
    fn funde_small_cases() {
        let one = BigRational::from_i64(1);
        let zero = BigRational::from_i64(0);
        let f = |a: [BigRational; 4]| check_funde(a, 16).unwrap();
        assert!(f([one.clone(), zero.clone(), zero.clone(), zero.clone()]).holds);
        assert!(f([zero.clone(), zero.clone(), zero.clone(), zero.clone()]).holds);
        assert!(f([zero.clone(), zero.clone(), one.clone(), zero.clone()]).holds);
        assert!(check_funde([zero.clone(), zero.clone(), zero.clone(), zero], 7).is_err());
    }

    #[test]
    fn ode_n2_holds_trivially() {
        let rep = check_odes::<BigRational>(2).unwrap();
        assert!(rep.passed(), "{:?}", rep.failures);
        assert_eq!(rep.checked, 4);
    }

    #[test]
    fn ode_residual_detects_wrong_polynomial() {
        let q = gegenbauer(half(), 3);
        let bad = &q.get(3).clone() + &P::one();
        let r = ode_residual(OdeIdentity::Gegenbauer, 3, &bad, &P::zero(), &P::zero());
        assert!(!r.is_zero());
    }
}
