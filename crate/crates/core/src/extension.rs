//! The universal central extension `ĝ = (g ⊗ R) ⊕ Ω¹_R/dR` of the DJKM
//! current algebra.
//!
//! Two brackets are implemented independently. [`Djkm::bracket_kassel`] is the
//! defining one, `[x⊗f, y⊗g] = [x,y]⊗fg + κ(x,y)[f dg]`, evaluated through the
//! normal-form reducer. [`Djkm::bracket_closed`] uses the closed formulas
//! indexed by exponents, with the odd-odd central term expressed through
//! [`psi`]. Agreement of the two on basis pairs is the main structural check.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::liealg::SimpleLieAlgebra;
use crate::omega::{OmegaBasis, OmegaClass, Reducer};
use crate::pfamilies::{pfamily_recursion, Family, PFamilyTable};
use crate::ratfunc::RatFunc;
use crate::ring::{sigma_unchecked, CurveSpec, RingElem};
use crate::scalar::Scalar;

/// `Σ_x x ⊗ f_x + ω` with `x` running over a basis of `g`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ExtElement<F: Scalar> {
    loops: BTreeMap<usize, RingElem<F>>,
    center: OmegaClass<F>,
}

impl<F: Scalar> ExtElement<F> {
    pub fn zero() -> Self {
        ExtElement {
            loops: BTreeMap::new(),
            center: OmegaClass::zero(),
        }
    }

    /// `x_k ⊗ f`.
    pub fn loop_elem(k: usize, f: RingElem<F>) -> Self {
        let mut out = Self::zero();
        out.add_loop(k, &f);
        out
    }

    /// `x_k ⊗ t^i u^s`.
    pub fn basis(k: usize, i: i64, s: u32) -> Self {
        Self::loop_elem(k, RingElem::basis(i, s))
    }

    pub fn central(w: OmegaClass<F>) -> Self {
        ExtElement {
            loops: BTreeMap::new(),
            center: w,
        }
    }

    pub fn loops(&self) -> &BTreeMap<usize, RingElem<F>> {
        &self.loops
    }

    pub fn center(&self) -> &OmegaClass<F> {
        &self.center
    }

    pub fn is_zero(&self) -> bool {
        self.loops.is_empty() && self.center.is_zero()
    }

    fn add_loop(&mut self, k: usize, f: &RingElem<F>) {
        if f.is_zero() {
            return;
        }
        let slot = self.loops.entry(k).or_insert_with(RingElem::zero);
        *slot = slot.add(f);
        if slot.is_zero() {
            self.loops.remove(&k);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (k, f) in &rhs.loops {
            out.add_loop(*k, f);
        }
        out.center = out.center.add(&rhs.center);
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        ExtElement {
            loops: self.loops.iter().map(|(k, f)| (*k, f.neg())).collect(),
            center: self.center.neg(),
        }
    }

    pub fn scale(&self, a: &RatFunc<F>) -> Self {
        if a.is_zero() {
            return Self::zero();
        }
        ExtElement {
            loops: self.loops.iter().map(|(k, f)| (*k, f.scale(a))).collect(),
            center: self.center.scale(a),
        }
    }

    /// The set of Z/2 degrees present: sheet of `u` for loops, and the
    /// parity of each central basis vector.
    pub fn parities(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .loops
            .values()
            .flat_map(|f| f.sheets().collect::<Vec<_>>())
            .chain(self.center.parities())
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `Some(p)` if the element is homogeneous of degree `p`.
    pub fn parity(&self) -> Option<u32> {
        match self.parities().as_slice() {
            [p] => Some(*p),
            _ => None,
        }
    }

    /// `(x, i, s, coefficient)` over all loop terms.
    pub fn loop_terms(&self) -> impl Iterator<Item = (usize, i64, u32, &RatFunc<F>)> {
        self.loops
            .iter()
            .flat_map(|(x, f)| f.terms().map(move |(i, s, a)| (*x, i, s, a)))
    }

    /// Human-readable form using the algebra's basis labels.
    pub fn render(&self, algebra: &SimpleLieAlgebra<F>) -> String {
        let mut out = String::new();
        for (x, f) in &self.loops {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}⊗({})", algebra.label(*x), f);
        }
        if !self.center.is_zero() {
            if !out.is_empty() {
                out.push_str(" + ");
            }
            let _ = write!(out, "{}", self.center);
        }
        if out.is_empty() {
            out.push('0');
        }
        out
    }
}

/// `ψ(s) = [t^(s-2) u dt]` in the center basis.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PsiValue<F: Scalar> {
    pub s: i64,
    pub value: OmegaClass<F>,
}

/// Family tables needed for ψ out to `|s| ≤ smax`.
struct PsiFamilies<F: Scalar> {
    m4: PFamilyTable<F>,
    m3: PFamilyTable<F>,
    m2: PFamilyTable<F>,
}

impl<F: Scalar> PsiFamilies<F> {
    fn new(smax: i64) -> Self {
        let kmax = (smax - 2).max(0);
        PsiFamilies {
            m4: pfamily_recursion(Family::M4, kmax),
            m3: pfamily_recursion(Family::M3, kmax),
            m2: pfamily_recursion(Family::M2, kmax),
        }
    }

    /// The case table, with `P_{f,k}` evaluated at `c`.
    fn psi(&self, s: i64, c: &RatFunc<F>) -> OmegaClass<F> {
        let odd = |b: OmegaBasis| OmegaClass::basis(b);
        if (-2..=1).contains(&s) {
            return odd(OmegaBasis::odd(s - 2).expect("window"));
        }
        let k = s.abs() - 2;
        let at = |t: &PFamilyTable<F>| t.get(k).eval_at(c);
        if s % 2 != 0 {
            let p = at(&self.m3);
            // s ≥ 3: ω-3 + c ω-1;  s ≤ -3: c ω-3 + ω-1
            let (a3, a1) = if s > 0 {
                (RatFunc::one(), c.clone())
            } else {
                (c.clone(), RatFunc::one())
            };
            let mut w = OmegaClass::from_coord(OmegaBasis::M3, &p * &a3);
            w.add_assign_scaled(&OmegaClass::basis(OmegaBasis::M1), &(&p * &a1));
            w
        } else {
            OmegaClass::from_coord(OmegaBasis::M4, at(&self.m4))
                .add(&OmegaClass::from_coord(OmegaBasis::M2, at(&self.m2)))
        }
    }
}

/// Precomputed ψ values for `-smax ≤ s ≤ smax`; other `s` are computed on
/// demand.
#[derive(Clone, Debug)]
pub struct PsiTable<F: Scalar> {
    c: RatFunc<F>,
    smax: i64,
    entries: Vec<OmegaClass<F>>,
}

pub const DEFAULT_PSI_RANGE: i64 = 40;

impl<F: Scalar> PsiTable<F> {
    pub fn new(c: RatFunc<F>, smax: i64) -> Self {
        let smax = smax.max(2);
        let fams = PsiFamilies::new(smax);
        let entries = (-smax..=smax).map(|s| fams.psi(s, &c)).collect();
        PsiTable { c, smax, entries }
    }

    pub fn get(&self, s: i64) -> OmegaClass<F> {
        if s.abs() <= self.smax {
            return self.entries[(s + self.smax) as usize].clone();
        }
        PsiFamilies::new(s.abs()).psi(s, &self.c)
    }

    /// Copy with the sign of one entry reversed. Only useful for checking that
    /// the verifier notices a corrupted table.
    pub fn with_sign_flipped(mut self, s: i64) -> Self {
        assert!(s.abs() <= self.smax, "s = {s} is outside the precomputed range");
        let slot = &mut self.entries[(s + self.smax) as usize];
        *slot = slot.neg();
        self
    }
}

/// `ψ(s)` with `c` symbolic.
pub fn psi<F: Scalar>(s: i64) -> PsiValue<F> {
    PsiValue {
        s,
        value: PsiFamilies::new(s.abs()).psi(s, &RatFunc::var()),
    }
}

/// Which bracket implementation to use.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BracketRoute {
    Kassel,
    Closed,
}

/// `ĝ` for a given simple Lie algebra and DJKM curve.
#[derive(Clone, Debug)]
pub struct Djkm<F: Scalar> {
    algebra: SimpleLieAlgebra<F>,
    reducer: Reducer<F>,
    c: RatFunc<F>,
    psi: PsiTable<F>,
}

impl<F: Scalar> Djkm<F> {
    /// Fails unless the curve has the normalized shape `u^2 = t^4 - 2ct^2 + 1`.
    pub fn new(algebra: SimpleLieAlgebra<F>, curve: CurveSpec<F>) -> Result<Self> {
        let c = curve
            .djkm_c()
            .ok_or_else(|| Error::UnsupportedCurve("expected u^2 = t^4 - 2ct^2 + 1".into()))?;
        Ok(Djkm {
            algebra,
            reducer: Reducer::new(curve)?,
            psi: PsiTable::new(c.clone(), DEFAULT_PSI_RANGE),
            c,
        })
    }

    /// Symbolic `c`.
    pub fn symbolic(algebra: SimpleLieAlgebra<F>) -> Self {
        Self::new(algebra, CurveSpec::djkm()).expect("DJKM preset")
    }

    pub fn with_psi_table(mut self, psi: PsiTable<F>) -> Self {
        self.psi = psi;
        self
    }

    pub fn psi_table(&self) -> &PsiTable<F> {
        &self.psi
    }

    pub fn algebra(&self) -> &SimpleLieAlgebra<F> {
        &self.algebra
    }

    pub fn reducer(&self) -> &Reducer<F> {
        &self.reducer
    }

    pub fn curve(&self) -> &CurveSpec<F> {
        self.reducer.curve()
    }

    /// The curve parameter (symbolic `c` or a constant).
    pub fn c(&self) -> &RatFunc<F> {
        &self.c
    }

    pub fn psi(&self, s: i64) -> PsiValue<F> {
        PsiValue {
            s,
            value: self.psi.get(s),
        }
    }

    pub fn bracket(&self, route: BracketRoute, a: &ExtElement<F>, b: &ExtElement<F>) -> ExtElement<F> {
        match route {
            BracketRoute::Kassel => self.bracket_kassel(a, b),
            BracketRoute::Closed => self.bracket_closed(a, b),
        }
    }

    /// `[x⊗f, y⊗g] = [x,y]⊗fg + κ(x,y)[f dg]`; central elements bracket to 0.
    pub fn bracket_kassel(&self, a: &ExtElement<F>, b: &ExtElement<F>) -> ExtElement<F> {
        let mut out = ExtElement::zero();
        let curve = self.curve();
        for (&x, f) in &a.loops {
            for (&y, g) in &b.loops {
                let brk = self.algebra.bracket(x, y);
                let kappa = self.algebra.form(x, y);
                if brk.is_empty() && kappa.is_zero() {
                    continue;
                }
                let fg = curve.mul_m2(f, g);
                for (k, v) in brk {
                    out.add_loop(*k, &fg.scale(&RatFunc::constant(v.clone())));
                }
                if !kappa.is_zero() {
                    let w = self.reducer.cocycle(f, g);
                    out.center.add_assign_scaled(&w, &RatFunc::constant(kappa.clone()));
                }
            }
        }
        out
    }

    /// The closed-form bracket on exponent-indexed basis elements:
    ///
    /// ```text
    /// [x⊗t^i, y⊗t^j]         = [x,y]⊗t^(i+j) + j δ_{i+j,0} κ ω0
    /// [x⊗t^(i-1)u, y⊗t^(j-1)u] = [x,y]⊗(t^(i+j+2) - 2c t^(i+j) + t^(i+j-2))
    ///                           + (δ_{i+j,-2}(j+1) - 2cj δ_{i+j,0} + (j-1) δ_{i+j,2}) κ ω0
    /// [x⊗t^(i-1)u, y⊗t^j]     = [x,y]⊗t^(i+j-1)u + j κ ψ(i+j)
    /// ```
    ///
    /// and `[x⊗t^i, y⊗t^(j-1)u]` by antisymmetry.
    pub fn bracket_closed(&self, a: &ExtElement<F>, b: &ExtElement<F>) -> ExtElement<F> {
        let mut out = ExtElement::zero();
        let int = |n: i64| RatFunc::<F>::from_i64(n);
        for (x, ea, sa, ca) in a.loop_terms() {
            for (y, eb, sb, cb) in b.loop_terms() {
                let brk = self.algebra.bracket(x, y);
                let kappa = RatFunc::constant(self.algebra.form(x, y).clone());
                if brk.is_empty() && kappa.is_zero() {
                    continue;
                }
                let coeff = ca * cb;
                let (loop_part, central): (RingElem<F>, OmegaClass<F>) = match (sa, sb) {
                    (0, 0) => {
                        let (i, j) = (ea, eb);
                        let w = if i + j == 0 {
                            OmegaClass::from_coord(OmegaBasis::Omega0, int(j))
                        } else {
                            OmegaClass::zero()
                        };
                        (RingElem::basis(i + j, 0), w)
                    }
                    (1, 1) => {
                        let (i, j) = (ea + 1, eb + 1);
                        let n = i + j;
                        let loop_part = RingElem::from_terms([
                            (n + 2, 0, int(1)),
                            (n, 0, self.c.scale(&F::from_i64(-2))),
                            (n - 2, 0, int(1)),
                        ]);
                        let mut w0 = RatFunc::zero();
                        if n == -2 {
                            w0 = &w0 + &int(j + 1);
                        }
                        if n == 0 {
                            w0 = &w0 - &self.c.scale(&F::from_i64(2 * j));
                        }
                        if n == 2 {
                            w0 = &w0 + &int(j - 1);
                        }
                        (loop_part, OmegaClass::from_coord(OmegaBasis::Omega0, w0))
                    }
                    (1, 0) => {
                        let (i, j) = (ea + 1, eb);
                        (
                            RingElem::basis(i + j - 1, 1),
                            self.psi.get(i + j).scale(&int(j)),
                        )
                    }
                    (0, 1) => {
                        let (i, j) = (ea, eb + 1);
                        (
                            RingElem::basis(i + j - 1, 1),
                            self.psi.get(i + j).scale(&int(-i)),
                        )
                    }
                    _ => unreachable!("sheets are 0 or 1 for m = 2"),
                };
                let loop_part = loop_part.scale(&coeff);
                for (k, v) in brk {
                    out.add_loop(*k, &loop_part.scale(&RatFunc::constant(v.clone())));
                }
                if !kappa.is_zero() {
                    out.center.add_assign_scaled(&central, &(&coeff * &kappa));
                }
            }
        }
        out
    }

    /// The involution lifted to `ĝ`.
    pub fn sigma(&self, a: &ExtElement<F>) -> ExtElement<F> {
        ExtElement {
            loops: a.loops.iter().map(|(k, f)| (*k, sigma_unchecked(f))).collect(),
            center: a.center.sigma(),
        }
    }
}

/// Free-function form of [`Djkm::sigma`]; fails off the DJKM curve.
pub fn sigma_ext<F: Scalar>(curve: &CurveSpec<F>, a: &ExtElement<F>) -> Result<ExtElement<F>> {
    if !curve.is_djkm() {
        return Err(Error::SigmaUndefined);
    }
    Ok(ExtElement {
        loops: a
            .loops
            .iter()
            .map(|(k, f)| curve.sigma_ring(f).map(|g| (*k, g)))
            .collect::<Result<_>>()?,
        center: a.center.sigma(),
    })
}
