//! Kähler differentials modulo exact forms.
//!
//! For the quartic curve `u^2 = p(t)` with `p(0) ≠ 0` the space `Ω¹_R / dR`
//! has the basis
//!
//! ```text
//! ω0 = [t^-1 dt],  ω-1 = [t^-1 u dt],  ω-2 = [t^-2 u dt],  ω-3 = [t^-3 u dt],  ω-4 = [t^-4 u dt]
//! ```
//!
//! [`Reducer`] rewrites any `A dt + B du` into these coordinates.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ratfunc::RatFunc;
use crate::ring::{CurveSpec, RingElem};
use crate::scalar::Scalar;

/// The differential `A dt + B du` with `A`, `B` in `R`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DiffForm<F: Scalar> {
    pub dt: RingElem<F>,
    pub du: RingElem<F>,
}

impl<F: Scalar> DiffForm<F> {
    pub fn zero() -> Self {
        DiffForm {
            dt: RingElem::zero(),
            du: RingElem::zero(),
        }
    }

    /// `a · dt`.
    pub fn dt(a: RingElem<F>) -> Self {
        DiffForm {
            dt: a,
            du: RingElem::zero(),
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        DiffForm {
            dt: self.dt.add(&rhs.dt),
            du: self.du.add(&rhs.du),
        }
    }

    pub fn scale(&self, a: &RatFunc<F>) -> Self {
        DiffForm {
            dt: self.dt.scale(a),
            du: self.du.scale(a),
        }
    }

    /// `f · self`, distributing `f` over both components.
    pub fn mul_elem(&self, f: &RingElem<F>, curve: &CurveSpec<F>) -> Result<Self> {
        Ok(DiffForm {
            dt: curve.ring_mul(f, &self.dt)?,
            du: curve.ring_mul(f, &self.du)?,
        })
    }
}

/// Basis vectors of `Ω¹_R / dR`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OmegaBasis {
    /// `[t^-1 dt]`
    Omega0,
    /// `[t^-1 u dt]`
    M1,
    /// `[t^-2 u dt]`
    M2,
    /// `[t^-3 u dt]`
    M3,
    /// `[t^-4 u dt]`
    M4,
}

impl OmegaBasis {
    pub const ALL: [OmegaBasis; 5] = [Self::Omega0, Self::M1, Self::M2, Self::M3, Self::M4];

    fn index(self) -> usize {
        self as usize
    }

    /// `ω_k = [t^k u dt]` for `k ∈ {-1, -2, -3, -4}`.
    pub fn odd(k: i64) -> Option<Self> {
        match k {
            -1 => Some(Self::M1),
            -2 => Some(Self::M2),
            -3 => Some(Self::M3),
            -4 => Some(Self::M4),
            _ => None,
        }
    }

    /// Z/2 degree: `ω0` is even, the `u`-classes are odd.
    pub fn parity(self) -> u32 {
        u32::from(self != Self::Omega0)
    }

    pub fn key(self) -> &'static str {
        match self {
            Self::Omega0 => "omega0",
            Self::M1 => "omega_m1",
            Self::M2 => "omega_m2",
            Self::M3 => "omega_m3",
            Self::M4 => "omega_m4",
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Omega0 => "ω0",
            Self::M1 => "ω-1",
            Self::M2 => "ω-2",
            Self::M3 => "ω-3",
            Self::M4 => "ω-4",
        }
    }
}

/// A class in `Ω¹_R / dR` by its coordinates on [`OmegaBasis`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct OmegaClass<F: Scalar> {
    coords: [RatFunc<F>; 5],
}

impl<F: Scalar> OmegaClass<F> {
    pub fn zero() -> Self {
        OmegaClass {
            coords: std::array::from_fn(|_| RatFunc::zero()),
        }
    }

    pub fn basis(b: OmegaBasis) -> Self {
        Self::from_coord(b, RatFunc::one())
    }

    pub fn from_coord(b: OmegaBasis, a: RatFunc<F>) -> Self {
        let mut out = Self::zero();
        out.coords[b.index()] = a;
        out
    }

    /// Coordinates in the order `ω0, ω-1, ω-2, ω-3, ω-4`.
    pub fn from_coords(coords: [RatFunc<F>; 5]) -> Self {
        OmegaClass { coords }
    }

    pub fn get(&self, b: OmegaBasis) -> &RatFunc<F> {
        &self.coords[b.index()]
    }

    pub fn coords(&self) -> &[RatFunc<F>; 5] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        OmegaClass {
            coords: std::array::from_fn(|i| &self.coords[i] + &rhs.coords[i]),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        OmegaClass {
            coords: std::array::from_fn(|i| &self.coords[i] - &rhs.coords[i]),
        }
    }

    pub fn neg(&self) -> Self {
        OmegaClass {
            coords: std::array::from_fn(|i| -&self.coords[i]),
        }
    }

    pub fn scale(&self, a: &RatFunc<F>) -> Self {
        OmegaClass {
            coords: std::array::from_fn(|i| &self.coords[i] * a),
        }
    }

    pub fn add_assign_scaled(&mut self, rhs: &Self, a: &RatFunc<F>) {
        for (x, y) in self.coords.iter_mut().zip(&rhs.coords) {
            if !y.is_zero() {
                *x = &*x + &(y * a);
            }
        }
    }

    /// Parities of the nonzero coordinates.
    pub fn parities(&self) -> impl Iterator<Item = u32> + '_ {
        OmegaBasis::ALL
            .into_iter()
            .filter(|b| !self.get(*b).is_zero())
            .map(OmegaBasis::parity)
    }

    /// Action of the curve involution on the basis of the DJKM curve:
    /// `ω0 ↦ -ω0`, `ω-1 ↦ -ω-3`, `ω-3 ↦ -ω-1`, `ω-2 ↦ -ω-2`, `ω-4 ↦ -ω-4`.
    pub fn sigma(&self) -> Self {
        let [w0, m1, m2, m3, m4] = &self.coords;
        OmegaClass {
            coords: [-w0, -m3, -m2, -m1, -m4],
        }
    }

    pub fn map_coords(&self, f: impl Fn(&RatFunc<F>) -> Result<RatFunc<F>>) -> Result<Self> {
        let [a, b, c, d, e] = &self.coords;
        Ok(OmegaClass {
            coords: [f(a)?, f(b)?, f(c)?, f(d)?, f(e)?],
        })
    }
}

impl<F: Scalar> fmt::Display for OmegaClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for b in OmegaBasis::ALL {
            let a = self.get(b);
            if a.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "{a}*{}", b.label())?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl<F: Scalar> fmt::Debug for OmegaClass<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OmegaClass({self})")
    }
}

/// `{"omega0": str, "omega_m1": str, ..., "omega_m4": str}` in that order.
impl<F: Scalar> Serialize for OmegaClass<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("OmegaClass", 5)?;
        for b in OmegaBasis::ALL {
            st.serialize_field(b.key(), &self.get(b).to_string())?;
        }
        st.end()
    }
}

/// Coefficient data of the relation
/// `((m+1)n + im) [t^(n+i-1) u dt] ≡ -Σ_{j<n} ((m+1)j + mi) a_j [t^(i+j-1) u dt]`
/// valid in `Ω¹_R / dR` for `u^m = p(t)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LemmaRelation<F: Scalar> {
    pub m: u32,
    pub i: i64,
    /// `(n + i - 1, (m+1)n + im)`
    pub lead: (i64, i64),
    /// `(i + j - 1, ((m+1)j + mi) a_j)` for `j = 0..n`
    pub tail: Vec<(i64, RatFunc<F>)>,
}

pub fn lemma_relation<F: Scalar>(m: u32, curve: &CurveSpec<F>, i: i64) -> Result<LemmaRelation<F>> {
    if m == 0 {
        return Err(Error::InvalidArgument("m must be at least 1".into()));
    }
    let m = i64::from(m);
    let n = curve.degree() as i64;
    let tail = (0..n)
        .map(|j| {
            let k = (m + 1) * j + m * i;
            (i + j - 1, curve.a(j as usize).scale(&F::from_i64(k)))
        })
        .collect();
    Ok(LemmaRelation {
        m: m as u32,
        i,
        lead: (n + i - 1, (m + 1) * n + i * m),
        tail,
    })
}

/// Normal-form reduction for a quartic curve `u^2 = p(t)` with `p(0) ≠ 0`.
#[derive(Clone, Debug)]
pub struct Reducer<F: Scalar> {
    curve: CurveSpec<F>,
    half_p_prime: RingElem<F>,
    a0_inv: RatFunc<F>,
}

/// First exponent of the basis window `{-4, ..., -1}` and one past its last.
const WINDOW_LOW: i64 = -4;
const WINDOW_HIGH: i64 = 0;

impl<F: Scalar> Reducer<F> {
    pub fn new(curve: CurveSpec<F>) -> Result<Self> {
        if curve.m() != 2 {
            return Err(Error::UnsupportedSheetCount(curve.m()));
        }
        if curve.degree() != 4 {
            return Err(Error::UnsupportedCurve(format!(
                "basis reduction needs deg p = 4, got {}",
                curve.degree()
            )));
        }
        let a0 = curve.a(0);
        if a0.is_zero() {
            return Err(Error::UnsupportedCurve("p(0) = 0 drops ω-4; not supported".into()));
        }
        Ok(Reducer {
            half_p_prime: curve.p_prime_elem().scale(&RatFunc::ratio(1, 2)),
            a0_inv: a0.inv()?,
            curve,
        })
    }

    pub fn djkm() -> Self {
        Self::new(CurveSpec::djkm()).expect("DJKM curve is quartic with p(0) = 1")
    }

    pub fn curve(&self) -> &CurveSpec<F> {
        &self.curve
    }

    /// Class of `A dt + B du` in `Ω¹_R / dR`.
    pub fn reduce(&self, form: &DiffForm<F>) -> OmegaClass<F> {
        let mut omega0 = RatFunc::zero();
        let mut odd: BTreeMap<i64, RatFunc<F>> = BTreeMap::new();

        // Worklist of (i, s, coefficient, is_du) monomial forms.
        let mut work: Vec<(i64, u32, RatFunc<F>, bool)> = Vec::new();
        work.extend(form.dt.terms().map(|(i, s, a)| (i, s, a.clone(), false)));
        work.extend(form.du.terms().map(|(i, s, a)| (i, s, a.clone(), true)));

        while let Some((i, s, a, is_du)) = work.pop() {
            match (is_du, s) {
                // t^i u^s dt with s ≥ 2: substitute u^2 = p(t).
                (false, s) if s >= 2 => {
                    for (j, aj) in self.curve.p_coeffs().iter().enumerate() {
                        if !aj.is_zero() {
                            work.push((i + j as i64, s - 2, &a * aj, false));
                        }
                    }
                }
                (false, 0) => {
                    // t^i dt is exact unless i = -1.
                    if i == -1 {
                        omega0 = &omega0 + &a;
                    }
                }
                (false, _) => accumulate(&mut odd, i, &a),
                // t^i u^s du = t^i u^(s-1) · (1/2) p'(t) dt
                (true, s) if s >= 1 => {
                    for (j, _, b) in self.half_p_prime.terms() {
                        work.push((i + j, s - 1, &a * b, false));
                    }
                }
                // t^i du ≡ -i t^(i-1) u dt  since d(t^i u) is exact.
                (true, _) => {
                    if i != 0 {
                        work.push((i - 1, 1, a.scale(&F::from_i64(-i)), false));
                    }
                }
            }
        }

        self.reduce_odd(&mut odd);

        let mut out = OmegaClass::zero();
        out.coords[OmegaBasis::Omega0.index()] = omega0;
        for (k, a) in odd {
            let b = OmegaBasis::odd(k).expect("reduction lands in the basis window");
            out.coords[b.index()] = a;
        }
        out
    }

    /// Push every `[t^k u dt]` into the window `-4 ≤ k ≤ -1`.
    fn reduce_odd(&self, odd: &mut BTreeMap<i64, RatFunc<F>>) {
        // High exponents: the relation with i = k - 3 has leading term t^k.
        while let Some((&k, _)) = odd.last_key_value() {
            if k < WINDOW_HIGH {
                break;
            }
            let a = odd.remove(&k).expect("present");
            let rel = lemma_relation(2, &self.curve, k - 3).expect("m = 2");
            debug_assert_eq!(rel.lead.0, k);
            let divisor = rel.lead.1;
            assert!(divisor != 0, "upward divisor 6 + 2k vanished at k = {k}");
            let factor = a.scale(&F::ratio(-1, divisor));
            for (e, coeff) in &rel.tail {
                if !coeff.is_zero() {
                    accumulate(odd, *e, &(coeff * &factor));
                }
            }
        }
        // Low exponents: the relation with i = k + 1 has lowest term t^k,
        // carrying coefficient 2(k+1) a_0.
        while let Some((&k, _)) = odd.first_key_value() {
            if k >= WINDOW_LOW {
                break;
            }
            let a = odd.remove(&k).expect("present");
            let i = k + 1;
            let rel = lemma_relation(2, &self.curve, i).expect("m = 2");
            let lowest = 2 * i;
            assert!(lowest != 0, "downward divisor 2(k + 1) vanished at k = {k}");
            let factor = (&a * &self.a0_inv).scale(&F::ratio(-1, lowest));
            for (e, coeff) in rel.tail.iter().skip(1) {
                if !coeff.is_zero() {
                    accumulate(odd, *e, &(coeff * &factor));
                }
            }
            accumulate(odd, rel.lead.0, &factor.scale(&F::from_i64(rel.lead.1)));
        }
    }

    /// Kassel's central term `[f dg]`.
    pub fn cocycle(&self, f: &RingElem<F>, g: &RingElem<F>) -> OmegaClass<F> {
        let dg = g.d();
        self.reduce(&DiffForm {
            dt: self.curve.mul_m2(f, &dg.dt),
            du: self.curve.mul_m2(f, &dg.du),
        })
    }

    /// Class of the monomial form `t^k u dt`.
    pub fn reduce_odd_monomial(&self, k: i64) -> OmegaClass<F> {
        self.reduce(&DiffForm::dt(RingElem::basis(k, 1)))
    }
}

fn accumulate<F: Scalar>(map: &mut BTreeMap<i64, RatFunc<F>>, k: i64, a: &RatFunc<F>) {
    if a.is_zero() {
        return;
    }
    let slot = map.entry(k).or_insert_with(RatFunc::zero);
    *slot = &*slot + a;
    if slot.is_zero() {
        map.remove(&k);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type R = RatFunc<BigRational>;
    type E = RingElem<BigRational>;

    fn r(s: &str) -> R {
        s.parse().unwrap()
    }

    fn class(w0: &str, m1: &str, m2: &str, m3: &str, m4: &str) -> OmegaClass<BigRational> {
        OmegaClass::from_coords([r(w0), r(m1), r(m2), r(m3), r(m4)])
    }

    #[test]
    fn t_u_dt() {
        let red = Reducer::djkm();
        assert_eq!(red.reduce_odd_monomial(1), class("0", "c/2", "0", "1/2", "0"));
    }

    #[test]
    fn t4_u_dt() {
        let red = Reducer::djkm();
        assert_eq!(
            red.reduce_odd_monomial(4),
            class("0", "0", "8*c/35", "0", "(32*c^2-5)/35")
        );
    }

    #[test]
    fn exact_form_vanishes() {
        let red = Reducer::djkm();
        assert!(red.reduce(&E::basis(5, 0).d()).is_zero());
    }

    #[test]
    fn t_minus_7_u_dt_by_hand() {
        // Solving the relation for its lowest term, Σ_j (3j + 2i) a_j ω_{i+j-1} = 0:
        //   i = -4: -8 ω-5 + 4c ω-3 + 4 ω-1 = 0   ⇒  ω-5 = (ω-1 + c ω-3)/2
        //   i = -6: -12 ω-7 + 12c ω-5 = 0           ⇒  ω-7 = c ω-5
        let red = Reducer::djkm();
        let w5 = class("0", "1/2", "0", "c/2", "0");
        assert_eq!(red.reduce_odd_monomial(-5), w5);
        assert_eq!(red.reduce_odd_monomial(-7), w5.scale(&R::var()));
    }

    #[test]
    fn cocycle_examples() {
        let red = Reducer::djkm();
        assert_eq!(red.cocycle(&E::basis(-1, 0), &E::t()), OmegaClass::basis(OmegaBasis::Omega0));
        assert!(red.cocycle(&E::u(), &E::u()).is_zero());
        assert_eq!(red.cocycle(&E::u(), &E::t()), OmegaClass::basis(OmegaBasis::M4));
    }

    #[test]
    fn higher_sheets_are_rewritten() {
        // u^2 dt = p(t) dt is exact; u^2 du = (1/2) d(u^2 · u)·(2/3) is exact.
        let red = Reducer::djkm();
        assert!(red.reduce(&DiffForm::dt(E::basis(0, 2))).is_zero());
        let f = DiffForm {
            dt: E::zero(),
            du: E::basis(0, 2),
        };
        assert!(red.reduce(&f).is_zero());
        // t^-5 u^2 dt = (t^-1 - 2c t^-3 + t^-5) dt ≡ ω0
        assert_eq!(
            red.reduce(&DiffForm::dt(E::basis(-5, 2))),
            OmegaClass::basis(OmegaBasis::Omega0)
        );
    }

    #[test]
    fn lemma_relation_examples() {
        let curve = CurveSpec::<BigRational>::djkm();
        let rel = lemma_relation(2, &curve, -3).unwrap();
        assert_eq!(rel.lead, (0, 6));
        assert_eq!(rel.tail[0], (-4, R::from_i64(-6)));
        assert!(rel.tail[1..].iter().all(|(_, a)| a.is_zero()));

        let rel = lemma_relation(2, &curve, -1).unwrap();
        assert_eq!(rel.lead, (2, 10));
        assert_eq!(rel.tail[0], (-2, R::from_i64(-2)));
        assert_eq!(rel.tail[2], (0, r("-8*c")));
    }

    #[test]
    fn lemma_relation_cubic_root() {
        // m = 3, p = t^2 + 5t + 7, i = 0: lead (1, 8); tail (−1, 0·7), (0, 4·5)
        let curve = CurveSpec::<BigRational>::new(3, vec![R::from_i64(7), R::from_i64(5), R::one()]).unwrap();
        let rel = lemma_relation(3, &curve, 0).unwrap();
        assert_eq!(rel.lead, (1, 8));
        assert_eq!(rel.tail, vec![(-1, R::zero()), (0, R::from_i64(20))]);
        assert!(lemma_relation(0, &curve, 0).is_err());
    }

    #[test]
    fn reducer_rejects_unsupported_curves() {
        let cubic = CurveSpec::<BigRational>::new(2, vec![R::one(), R::zero(), R::zero(), R::one()]).unwrap();
        assert!(matches!(Reducer::new(cubic), Err(Error::UnsupportedCurve(_))));
        let no_const = CurveSpec::<BigRational>::new(
            2,
            vec![R::zero(), R::one(), R::zero(), R::zero(), R::one()],
        )
        .unwrap();
        assert!(Reducer::new(no_const).is_err());
    }

    #[test]
    fn json_shape() {
        let w = class("0", "c/2", "0", "1/2", "0");
        let s = serde_json::to_string(&w).unwrap();
        assert_eq!(
            s,
            r#"{"omega0":"0","omega_m1":"(c/2)","omega_m2":"0","omega_m3":"(1/2)","omega_m4":"0"}"#
        );
    }
}
