//! Exhaustive identity sweeps over basis elements `x ⊗ t^i u^s`, `|i| ≤ window`.
//!
//! Each sweep runs in parallel and merges into a count plus the
//! lexicographically first failing pair or triple, so the report does not
//! depend on scheduling.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::extension::{BracketRoute, Djkm, ExtElement};
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Check {
    Antisymmetry,
    Jacobi,
    Agreement,
    Sigma,
    Grading,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Antisymmetry,
        Check::Jacobi,
        Check::Agreement,
        Check::Sigma,
        Check::Grading,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Antisymmetry => "antisymmetry",
            Check::Jacobi => "jacobi",
            Check::Agreement => "agreement",
            Check::Sigma => "sigma",
            Check::Grading => "grading",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::InvalidArgument(format!("unknown check '{s}'")))
    }
}

/// Parse `all` or a comma-separated list of check names.
pub fn parse_checks(s: &str) -> Result<Vec<Check>> {
    if s.trim() == "all" {
        return Ok(Check::ALL.to_vec());
    }
    let mut out = s
        .split(',')
        .map(|p| p.trim().parse())
        .collect::<Result<Vec<Check>>>()?;
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub window: i64,
    pub checks: Vec<Check>,
    /// Bracket used by the antisymmetry, Jacobi, σ and grading sweeps.
    pub route: BracketRoute,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            window: 4,
            checks: Check::ALL.to_vec(),
            route: BracketRoute::Kassel,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CheckReport {
    pub name: String,
    pub cases: u64,
    pub failures: u64,
    pub first_counterexample: Option<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct VerifyReport {
    pub window: i64,
    pub basis_size: usize,
    pub form: String,
    pub route: String,
    pub psi_indexing: Vec<String>,
    pub checks: Vec<CheckReport>,
    pub passed: bool,
}

/// Basis element `x ⊗ t^i u^s` as `(x, i, s)`.
pub type BasisIndex = (usize, i64, u32);

/// All basis elements with `|i| ≤ window`, in lexicographic order.
pub fn basis_window(dim: usize, window: i64) -> Vec<BasisIndex> {
    let mut out = Vec::new();
    for x in 0..dim {
        for i in -window..=window {
            for s in 0..=1 {
                out.push((x, i, s));
            }
        }
    }
    out
}

/// Count and lexicographically-least failing index.
#[derive(Clone, Copy, Default)]
struct Tally<K> {
    cases: u64,
    failures: u64,
    first: Option<K>,
}

impl<K: Ord + Copy> Tally<K> {
    fn one(key: K, ok: bool) -> Self {
        Tally {
            cases: 1,
            failures: u64::from(!ok),
            first: (!ok).then_some(key),
        }
    }

    fn merge(self, other: Self) -> Self {
        let first = match (self.first, other.first) {
            (Some(a), Some(b)) => Some(a.min(b)),
            (a, b) => a.or(b),
        };
        Tally {
            cases: self.cases + other.cases,
            failures: self.failures + other.failures,
            first,
        }
    }
}

fn empty<K>() -> Tally<K> {
    Tally {
        cases: 0,
        failures: 0,
        first: None,
    }
}

struct Sweep<'a, F: Scalar> {
    g: &'a Djkm<F>,
    route: BracketRoute,
    basis: Vec<BasisIndex>,
    elems: Vec<ExtElement<F>>,
}

impl<'a, F: Scalar> Sweep<'a, F> {
    fn new(g: &'a Djkm<F>, window: i64, route: BracketRoute) -> Self {
        let basis = basis_window(g.algebra().dim(), window);
        let elems = basis.iter().map(|&(x, i, s)| ExtElement::basis(x, i, s)).collect();
        Sweep {
            g,
            route,
            basis,
            elems,
        }
    }

    fn bracket(&self, a: &ExtElement<F>, b: &ExtElement<F>) -> ExtElement<F> {
        self.g.bracket(self.route, a, b)
    }

    fn name(&self, k: usize) -> String {
        let (x, i, s) = self.basis[k];
        let label = self.g.algebra().label(x);
        match (i, s) {
            (0, 0) => format!("{label}⊗1"),
            (0, 1) => format!("{label}⊗u"),
            (i, 0) => format!("{label}⊗t^{i}"),
            (i, _) => format!("{label}⊗t^{i}*u"),
        }
    }

    fn pair_name(&self, (a, b): (usize, usize)) -> String {
        format!("[{}, {}]", self.name(a), self.name(b))
    }

    fn triple_name(&self, (a, b, c): (usize, usize, usize)) -> String {
        format!("({}, {}, {})", self.name(a), self.name(b), self.name(c))
    }

    fn over_pairs(&self, f: impl Fn(usize, usize) -> bool + Sync) -> Tally<(usize, usize)> {
        let n = self.elems.len();
        (0..n)
            .into_par_iter()
            .map(|a| {
                (0..n)
                    .map(|b| Tally::one((a, b), f(a, b)))
                    .fold(empty(), Tally::merge)
            })
            .reduce(empty, Tally::merge)
    }

    fn report_pairs(&self, check: Check, t: Tally<(usize, usize)>) -> CheckReport {
        CheckReport {
            name: check.name().into(),
            cases: t.cases,
            failures: t.failures,
            first_counterexample: t.first.map(|p| self.pair_name(p)),
        }
    }

    fn antisymmetry(&self) -> CheckReport {
        let t = self.over_pairs(|a, b| {
            let (x, y) = (&self.elems[a], &self.elems[b]);
            self.bracket(x, y).add(&self.bracket(y, x)).is_zero()
        });
        self.report_pairs(Check::Antisymmetry, t)
    }

    fn agreement(&self) -> CheckReport {
        let t = self.over_pairs(|a, b| {
            let (x, y) = (&self.elems[a], &self.elems[b]);
            self.g.bracket_closed(x, y) == self.g.bracket_kassel(x, y)
        });
        self.report_pairs(Check::Agreement, t)
    }

    /// `σ[A,B] = [σA, σB]` on pairs, plus `σ²A = A` on each element (counted
    /// as the pair `(A, A)` when it fails).
    fn sigma(&self) -> CheckReport {
        let sig: Vec<ExtElement<F>> = self.elems.iter().map(|e| self.g.sigma(e)).collect();
        let mut t = self.over_pairs(|a, b| {
            let lhs = self.g.sigma(&self.bracket(&self.elems[a], &self.elems[b]));
            lhs == self.bracket(&sig[a], &sig[b])
        });
        for (k, e) in self.elems.iter().enumerate() {
            t = t.merge(Tally::one((k, k), self.g.sigma(&sig[k]) == *e));
        }
        self.report_pairs(Check::Sigma, t)
    }

    /// Parity additivity on pairs, plus one case per element asserting that
    /// it does not commute with the whole window.
    fn grading(&self) -> CheckReport {
        let brackets: Vec<Vec<ExtElement<F>>> = (0..self.elems.len())
            .into_par_iter()
            .map(|a| self.elems.iter().map(|y| self.bracket(&self.elems[a], y)).collect())
            .collect();
        let mut t = self.over_pairs(|a, b| {
            let z = &brackets[a][b];
            let p = (self.basis[a].2 + self.basis[b].2) % 2;
            z.is_zero() || z.parity() == Some(p)
        });
        for (a, row) in brackets.iter().enumerate() {
            t = t.merge(Tally::one((a, a), row.iter().any(|z| !z.is_zero())));
        }
        self.report_pairs(Check::Grading, t)
    }

    /// `[A,[B,C]] + [B,[C,A]] + [C,[A,B]] = 0` on all triples.
    ///
    /// The inner brackets come from the pair table; the outer brackets are
    /// expanded by bilinearity against a memo of brackets of window elements
    /// with single monomials.
    fn jacobi(&self) -> CheckReport {
        let n = self.elems.len();
        let inner: Vec<Vec<ExtElement<F>>> = (0..n)
            .into_par_iter()
            .map(|a| (0..n).map(|b| self.bracket(&self.elems[a], &self.elems[b])).collect())
            .collect();

        let mut monomials: Vec<BasisIndex> = inner
            .iter()
            .flatten()
            .flat_map(|z| z.loop_terms().map(|(x, i, s, _)| (x, i, s)).collect::<Vec<_>>())
            .collect();
        monomials.sort_unstable();
        monomials.dedup();
        let memo: Vec<HashMap<BasisIndex, ExtElement<F>>> = (0..n)
            .into_par_iter()
            .map(|a| {
                monomials
                    .iter()
                    .map(|&(x, i, s)| ((x, i, s), self.bracket(&self.elems[a], &ExtElement::basis(x, i, s))))
                    .collect()
            })
            .collect();
        let outer = |a: usize, z: &ExtElement<F>| -> ExtElement<F> {
            let mut acc = ExtElement::zero();
            for (x, i, s, coef) in z.loop_terms() {
                acc = acc.add(&memo[a][&(x, i, s)].scale(coef));
            }
            acc
        };

        let t = (0..n)
            .into_par_iter()
            .map(|a| {
                let mut t = empty();
                for b in 0..n {
                    for c in 0..n {
                        let sum = outer(a, &inner[b][c])
                            .add(&outer(b, &inner[c][a]))
                            .add(&outer(c, &inner[a][b]));
                        t = t.merge(Tally::one((a, b, c), sum.is_zero()));
                    }
                }
                t
            })
            .reduce(empty, Tally::merge);
        CheckReport {
            name: Check::Jacobi.name().into(),
            cases: t.cases,
            failures: t.failures,
            first_counterexample: t.first.map(|p| self.triple_name(p)),
        }
    }
}

/// Notes on how ψ is indexed, carried in every report.
pub fn psi_indexing_notes() -> Vec<String> {
    vec![
        "psi(s) is keyed by s = i+j and equals the class of t^(s-2) u dt".into(),
        "s in {1,0,-1,-2}: omega_(s-2); the alternative reading omega_s is not used".into(),
        "odd s <= -3: P_{-3,|s|-2}; the alternative reading P_{-3,s-2} is not used".into(),
    ]
}

/// Run the selected sweeps.
pub fn verify<F: Scalar>(g: &Djkm<F>, config: &VerifyConfig) -> Result<VerifyReport> {
    if config.window < 0 {
        return Err(Error::InvalidArgument("window must be non-negative".into()));
    }
    let sweep = Sweep::new(g, config.window, config.route);
    let mut checks: Vec<Check> = config.checks.clone();
    checks.sort_unstable();
    checks.dedup();
    let reports: Vec<CheckReport> = checks
        .iter()
        .map(|c| match c {
            Check::Antisymmetry => sweep.antisymmetry(),
            Check::Jacobi => sweep.jacobi(),
            Check::Agreement => sweep.agreement(),
            Check::Sigma => sweep.sigma(),
            Check::Grading => sweep.grading(),
        })
        .collect();
    Ok(VerifyReport {
        window: config.window,
        basis_size: sweep.basis.len(),
        form: g.algebra().form_kind().name().into(),
        route: match config.route {
            BracketRoute::Kassel => "kassel",
            BracketRoute::Closed => "closed",
        }
        .into(),
        psi_indexing: psi_indexing_notes(),
        passed: reports.iter().all(CheckReport::passed),
        checks: reports,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::SimpleLieAlgebra;
    use num_rational::BigRational;

    fn g() -> Djkm<BigRational> {
        Djkm::symbolic(SimpleLieAlgebra::sl2())
    }

    #[test]
    fn window_size() {
        assert_eq!(basis_window(3, 4).len(), 54);
        assert_eq!(basis_window(3, 0).len(), 6);
    }

    #[test]
    fn parse_check_lists() {
        assert_eq!(parse_checks("all").unwrap(), Check::ALL.to_vec());
        assert_eq!(
            parse_checks("jacobi,antisymmetry").unwrap(),
            vec![Check::Antisymmetry, Check::Jacobi]
        );
        assert!(parse_checks("jacobi,bogus").is_err());
    }

    #[test]
    fn window_zero_all_pass() {
        let cfg = VerifyConfig {
            window: 0,
            ..Default::default()
        };
        let r = verify(&g(), &cfg).unwrap();
        assert!(r.passed, "{r:?}");
        assert_eq!(r.checks.len(), 5);
        assert_eq!(r.checks[1].cases, 216);
    }

    #[test]
    fn window_one_all_pass() {
        let cfg = VerifyConfig {
            window: 1,
            ..Default::default()
        };
        assert!(verify(&g(), &cfg).unwrap().passed);
    }

    #[test]
    fn flipped_psi_names_a_pair() {
        let d = g();
        let flipped = d.psi_table().clone().with_sign_flipped(1);
        let d = d.with_psi_table(flipped);
        let cfg = VerifyConfig {
            window: 1,
            checks: vec![Check::Agreement],
            ..Default::default()
        };
        let r = verify(&d, &cfg).unwrap();
        assert!(!r.passed);
        let ce = r.checks[0].first_counterexample.as_deref().unwrap();
        assert!(ce.starts_with('['), "{ce}");
    }

    #[test]
    fn report_json_keys() {
        let cfg = VerifyConfig {
            window: 0,
            checks: vec![Check::Antisymmetry],
            ..Default::default()
        };
        let v = serde_json::to_value(verify(&g(), &cfg).unwrap()).unwrap();
        let c = &v["checks"][0];
        assert_eq!(c["name"], "antisymmetry");
        assert!(c["firstCounterexample"].is_null());
    }
}
