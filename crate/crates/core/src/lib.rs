//! Exact computer algebra for the universal central extension of the current
//! algebra `g ⊗ C[t, t⁻¹, u | u² = t⁴ − 2ct² + 1]`.
//!
//! Everything is generic over an exact field `F: Scalar` of constants, with
//! coefficients in `F(c)`. The aliases at the crate root fix `F` to
//! [`BigRational`], which is what the CLI and the tests use.
//!
//! ```
//! use djkm::{OmegaBasis, RatFuncC, Reducer, RingElemC};
//!
//! let r = Reducer::djkm();
//! let f: RingElemC = "t^4*u".parse().unwrap();
//! let w = r.cocycle(&f, &RingElemC::t());
//! assert_eq!(w.get(OmegaBasis::M4), &"(32*c^2-5)/35".parse::<RatFuncC>().unwrap());
//! ```

pub mod error;
pub mod extension;
pub mod grammar;
pub mod liealg;
pub mod omega;
pub mod pfamilies;
pub mod poly;
pub mod ratfunc;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod verify;

pub use num_rational::BigRational;

pub use error::{Error, Result};
pub use extension::{psi, sigma_ext, BracketRoute, Djkm, ExtElement, PsiTable, PsiValue};
pub use grammar::{parse_ratfunc, parse_scalar, render_latex};
pub use liealg::{load_structure_constants, FormKind, SimpleLieAlgebra};
pub use omega::{lemma_relation, DiffForm, LemmaRelation, OmegaBasis, OmegaClass, Reducer};
pub use pfamilies::{
    check_funde, check_odes, gegenbauer, pfamily_closed_form, pfamily_recursion, pfamily_series,
    recursion_with_initials, Family, FundeCheck, GegenbauerTable, OdeIdentity, OdeReport,
    PFamilyTable,
};
pub use poly::Poly;
pub use ratfunc::{normalize_ratfunc, RatFunc};
pub use ring::{ring_d, CurveSpec, RingElem};
pub use scalar::Scalar;
pub use series::{series_formal_integrate, series_multiply, PowerSeries, DEFAULT_ORDER};
pub use verify::{basis_window, parse_checks, verify, Check, CheckReport, VerifyConfig, VerifyReport};

/// Exact rationals.
pub type Rational = BigRational;
/// Polynomials in `c` over `Q`.
pub type PolyC = Poly<Rational>;
/// Elements of `Q(c)`.
pub type RatFuncC = RatFunc<Rational>;
/// Truncated series in `z` over `Q(c)`.
pub type PowerSeriesZ = PowerSeries<Rational>;
pub type CurveSpecC = CurveSpec<Rational>;
pub type RingElemC = RingElem<Rational>;
pub type DiffFormC = DiffForm<Rational>;
pub type OmegaClassC = OmegaClass<Rational>;
pub type ReducerC = Reducer<Rational>;
pub type PFamilyTableC = PFamilyTable<Rational>;
pub type SimpleLieAlgebraC = SimpleLieAlgebra<Rational>;
pub type ExtElementC = ExtElement<Rational>;
pub type DjkmC = Djkm<Rational>;
