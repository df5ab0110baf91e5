//! Finite-dimensional simple Lie algebras given by structure constants.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::grammar;
use crate::scalar::Scalar;

/// Where the invariant form came from.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormKind {
    /// `κ(x, y) = tr(ad x ∘ ad y)`
    Killing,
    UserSupplied,
}

impl FormKind {
    pub fn name(self) -> &'static str {
        match self {
            FormKind::Killing => "killing",
            FormKind::UserSupplied => "user",
        }
    }
}

/// `[x_i, x_j] = Σ_k c_{ij}^k x_k` together with a nondegenerate invariant form.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SimpleLieAlgebra<F: Scalar> {
    labels: Vec<String>,
    /// Dense `c_{ij}^k` at `(i * dim + j) * dim + k`.
    constants: Vec<F>,
    /// Sparse rows of the bracket table, `(k, c_{ij}^k)` with nonzero values.
    brackets: Vec<Vec<(usize, F)>>,
    form: Vec<Vec<F>>,
    form_kind: FormKind,
}

impl<F: Scalar> SimpleLieAlgebra<F> {
    /// `sl2` with basis `(e, h, f)`: `[h,e] = 2e`, `[h,f] = -2f`, `[e,f] = h`.
    pub fn sl2() -> Self {
        let (e, h, f) = (0, 1, 2);
        Self::from_constants(
            vec!["e".into(), "h".into(), "f".into()],
            [
                (h, e, e, F::from_i64(2)),
                (h, f, f, F::from_i64(-2)),
                (e, f, h, F::from_i64(1)),
            ],
        )
        .expect("sl2 is simple")
    }

    /// Validate and build from `(i, j, k, c_{ij}^k)` entries. Missing
    /// antisymmetric partners are filled in; inconsistent ones are rejected.
    pub fn from_constants(
        labels: Vec<String>,
        entries: impl IntoIterator<Item = (usize, usize, usize, F)>,
    ) -> Result<Self> {
        let dim = labels.len();
        if dim == 0 {
            return Err(Error::InvalidStructureConstants("dimension is zero".into()));
        }
        let mut constants = vec![F::zero(); dim * dim * dim];
        let mut given = vec![false; dim * dim * dim];
        let idx = |i: usize, j: usize, k: usize| (i * dim + j) * dim + k;
        for (i, j, k, v) in entries {
            if i >= dim || j >= dim || k >= dim {
                return Err(Error::InvalidStructureConstants(format!(
                    "index ({i}, {j}, {k}) out of range for dim {dim}"
                )));
            }
            if given[idx(i, j, k)] && constants[idx(i, j, k)] != v {
                return Err(Error::InvalidStructureConstants(format!(
                    "conflicting values for c_({i},{j})^{k}"
                )));
            }
            given[idx(i, j, k)] = true;
            constants[idx(i, j, k)] = v;
        }
        for i in 0..dim {
            for j in 0..dim {
                for k in 0..dim {
                    let (a, b) = (idx(i, j, k), idx(j, i, k));
                    if given[a] && !given[b] {
                        constants[b] = -constants[a].clone();
                        given[b] = true;
                    }
                }
            }
        }
        let mut alg = Self::assemble(labels, constants);
        alg.check_antisymmetry()?;
        alg.check_jacobi()?;
        alg.form = alg.killing_from_constants();
        if alg.determinant().is_zero() {
            return Err(Error::NotSemisimple);
        }
        Ok(alg)
    }

    fn assemble(labels: Vec<String>, constants: Vec<F>) -> Self {
        let dim = labels.len();
        let brackets = (0..dim * dim)
            .map(|ij| {
                (0..dim)
                    .filter_map(|k| {
                        let v = &constants[ij * dim + k];
                        (!v.is_zero()).then(|| (k, v.clone()))
                    })
                    .collect()
            })
            .collect();
        SimpleLieAlgebra {
            labels,
            constants,
            brackets,
            form: vec![vec![F::zero(); dim]; dim],
            form_kind: FormKind::Killing,
        }
    }

    /// Replace the Killing form by a user-supplied invariant form.
    pub fn with_form(mut self, form: Vec<Vec<F>>) -> Result<Self> {
        let dim = self.dim();
        if form.len() != dim || form.iter().any(|r| r.len() != dim) {
            return Err(Error::InvalidForm(format!("expected a {dim}x{dim} matrix")));
        }
        for i in 0..dim {
            for j in 0..dim {
                if form[i][j] != form[j][i] {
                    return Err(Error::InvalidForm(format!("not symmetric at ({i}, {j})")));
                }
            }
        }
        let old = std::mem::replace(&mut self.form, form);
        if let Some((a, b, c)) = self.first_non_invariant_triple() {
            self.form = old;
            return Err(Error::InvalidForm(format!(
                "not ad-invariant on triple ({a}, {b}, {c})"
            )));
        }
        if self.determinant().is_zero() {
            return Err(Error::NotSemisimple);
        }
        self.form_kind = FormKind::UserSupplied;
        Ok(self)
    }

    /// Overwrite one structure constant without any validation.
    ///
    /// Exists for fault-injection tests of the verifier; the invariant form is
    /// left untouched.
    pub fn with_constant_unchecked(mut self, i: usize, j: usize, k: usize, value: F) -> Self {
        let dim = self.dim();
        self.constants[(i * dim + j) * dim + k] = value;
        let fresh = Self::assemble(self.labels.clone(), self.constants.clone());
        self.brackets = fresh.brackets;
        self
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn constant(&self, i: usize, j: usize, k: usize) -> &F {
        &self.constants[(i * self.dim() + j) * self.dim() + k]
    }

    /// Nonzero `(k, c_{ij}^k)`.
    pub fn bracket(&self, i: usize, j: usize) -> &[(usize, F)] {
        &self.brackets[i * self.dim() + j]
    }

    pub fn form(&self, i: usize, j: usize) -> &F {
        &self.form[i][j]
    }

    pub fn form_matrix(&self) -> &[Vec<F>] {
        &self.form
    }

    pub fn form_kind(&self) -> FormKind {
        self.form_kind
    }

    fn check_antisymmetry(&self) -> Result<()> {
        let dim = self.dim();
        for i in 0..dim {
            for j in i..dim {
                for k in 0..dim {
                    if self.constant(i, j, k).clone() + self.constant(j, i, k).clone() != F::zero() {
                        return Err(Error::AntisymmetryViolation(i, j));
                    }
                }
            }
        }
        Ok(())
    }

    /// Coefficient vector of `[x_a, [x_b, x_c]] + cyclic`.
    pub fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<F> {
        let mut out = vec![F::zero(); self.dim()];
        for (x, y, z) in [(a, b, c), (b, c, a), (c, a, b)] {
            for (m, v) in self.bracket(y, z) {
                for (l, w) in self.bracket(x, *m) {
                    out[*l] = out[*l].clone() + v.clone() * w.clone();
                }
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    if self.jacobiator(a, b, c).iter().any(|v| !v.is_zero()) {
                        return Err(Error::JacobiViolation(a, b, c));
                    }
                }
            }
        }
        Ok(())
    }

    /// `κ(x_a, x_b) = Σ_{k,l} c_{al}^k c_{bk}^l`.
    pub fn killing_from_constants(&self) -> Vec<Vec<F>> {
        let dim = self.dim();
        let mut out = vec![vec![F::zero(); dim]; dim];
        for (a, row) in out.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                let mut acc = F::zero();
                for l in 0..dim {
                    for (k, v) in self.bracket(a, l) {
                        let w = self.constant(b, *k, l);
                        if !w.is_zero() {
                            acc = acc + v.clone() * w.clone();
                        }
                    }
                }
                *slot = acc;
            }
        }
        out
    }

    /// First triple where `κ([x_a, x_b], x_c) ≠ κ(x_a, [x_b, x_c])`.
    pub fn first_non_invariant_triple(&self) -> Option<(usize, usize, usize)> {
        let dim = self.dim();
        for a in 0..dim {
            for b in 0..dim {
                for c in 0..dim {
                    let left = self
                        .bracket(a, b)
                        .iter()
                        .fold(F::zero(), |acc, (k, v)| acc + v.clone() * self.form[*k][c].clone());
                    let right = self
                        .bracket(b, c)
                        .iter()
                        .fold(F::zero(), |acc, (k, v)| acc + v.clone() * self.form[a][*k].clone());
                    if left != right {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// Determinant of the invariant form by Gaussian elimination.
    pub fn determinant(&self) -> F {
        let n = self.dim();
        let mut m = self.form.clone();
        let mut det = F::one();
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| !m[r][col].is_zero()) else {
                return F::zero();
            };
            if piv != col {
                m.swap(piv, col);
                det = -det;
            }
            let p = m[col][col].clone();
            det = det * p.clone();
            for r in col + 1..n {
                let factor = m[r][col].clone() / p.clone();
                if factor.is_zero() {
                    continue;
                }
                for c in col..n {
                    m[r][c] = m[r][c].clone() - factor.clone() * m[col][c].clone();
                }
            }
        }
        det
    }

    /// Text form accepted by [`load_structure_constants`].
    pub fn to_text(&self) -> String {
        let dim = self.dim();
        let mut out = format!("dim {dim}\nlabels {}\n", self.labels.join(" "));
        for i in 0..dim {
            for j in i + 1..dim {
                for (k, v) in self.bracket(i, j) {
                    let _ = writeln!(out, "{i} {j} {k} {}", grammar::render_scalar(v));
                }
            }
        }
        if self.form_kind == FormKind::UserSupplied {
            for i in 0..dim {
                for j in i..dim {
                    if !self.form[i][j].is_zero() {
                        let _ = writeln!(out, "form {i} {j} {}", grammar::render_scalar(&self.form[i][j]));
                    }
                }
            }
        }
        out
    }
}

/// Parse the structure-constant file format:
///
/// ```text
/// # comment
/// dim 3
/// labels e h f
/// 1 0 0 2        # [h, e] = 2 e
/// 1 2 2 -2
/// 0 2 1 1
/// form 0 2 4     # optional invariant form entries (symmetric)
/// ```
///
/// Values are rational literals such as `-3/2`. Without `form` lines the
/// Killing form is computed.
pub fn load_structure_constants<F: Scalar>(text: &str) -> Result<SimpleLieAlgebra<F>> {
    let mut dim: Option<usize> = None;
    let mut labels: Option<Vec<String>> = None;
    let mut entries = Vec::new();
    let mut form_entries = Vec::new();
    let bad = |line: usize, msg: &str| Error::InvalidStructureConstants(format!("line {line}: {msg}"));

    for (n, raw) in text.lines().enumerate() {
        let line_no = n + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let index = |w: &str| w.parse::<usize>().map_err(|_| bad(line_no, &format!("bad index {w:?}")));
        let value = |w: &str| grammar::parse_scalar::<F>(w).map_err(|e| bad(line_no, &e.to_string()));
        match words[0] {
            "dim" if words.len() == 2 => dim = Some(index(words[1])?),
            "labels" => labels = Some(words[1..].iter().map(|s| s.to_string()).collect()),
            "form" if words.len() == 4 => {
                form_entries.push((index(words[1])?, index(words[2])?, value(words[3])?))
            }
            _ if words.len() == 4 => entries.push((
                index(words[0])?,
                index(words[1])?,
                index(words[2])?,
                value(words[3])?,
            )),
            _ => return Err(bad(line_no, "expected `i j k value`")),
        }
    }
    let dim = dim.ok_or_else(|| Error::InvalidStructureConstants("missing `dim` header".into()))?;
    let labels = labels.unwrap_or_else(|| (0..dim).map(|i| format!("x{i}")).collect());
    if labels.len() != dim {
        return Err(Error::InvalidStructureConstants(format!(
            "{} labels for dim {dim}",
            labels.len()
        )));
    }
    let alg = SimpleLieAlgebra::from_constants(labels, entries)?;
    if form_entries.is_empty() {
        return Ok(alg);
    }
    let mut form = vec![vec![F::zero(); dim]; dim];
    for (i, j, v) in form_entries {
        if i >= dim || j >= dim {
            return Err(Error::InvalidForm(format!("index ({i}, {j}) out of range")));
        }
        form[i][j] = v.clone();
        form[j][i] = v;
    }
    alg.with_form(form)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type L = SimpleLieAlgebra<BigRational>;

    fn q(n: i64) -> BigRational {
        BigRational::from_i64(n)
    }

    #[test]
    fn sl2_relations() {
        let g = L::sl2();
        assert_eq!(g.bracket(0, 2), &[(1, q(1))]);
        assert_eq!(g.bracket(2, 0), &[(1, q(-1))]);
        assert_eq!(g.bracket(1, 0), &[(0, q(2))]);
    }

    #[test]
    fn sl2_killing_form() {
        // ad h = diag(2, 0, -2): tr(ad h)^2 = 8. ad e ad f has trace 4.
        let g = L::sl2();
        assert_eq!(g.form(1, 1), &q(8));
        assert_eq!(g.form(0, 2), &q(4));
        assert_eq!(g.form(2, 0), &q(4));
        assert_eq!(g.form(0, 0), &q(0));
        assert_eq!(g.form(0, 1), &q(0));
        assert_eq!(g.form(2, 2), &q(0));
        assert_eq!(g.form_kind(), FormKind::Killing);
    }

    #[test]
    fn sl2_killing_is_invariant() {
        let g = L::sl2();
        assert!(g.first_non_invariant_triple().is_none());
        // κ([h,e], f) = 2·κ(e,f) = 8 = κ(h, [e,f]) = κ(h,h)
        assert_eq!(q(2) * g.form(0, 2).clone(), g.form(1, 1).clone());
        assert_eq!(g.determinant(), q(-128));
    }

    #[test]
    fn text_round_trip() {
        let g = L::sl2();
        let back: L = load_structure_constants(&g.to_text()).unwrap();
        assert_eq!(back, g);
    }

    #[test]
    fn jacobi_violation_is_named() {
        let text = "dim 3\nlabels e h f\n1 0 0 3\n1 2 2 -2\n0 2 1 1\n";
        let err = load_structure_constants::<BigRational>(text).unwrap_err();
        assert!(matches!(err, Error::JacobiViolation(_, _, _)), "{err:?}");
    }

    #[test]
    fn abelian_is_not_semisimple() {
        let err = load_structure_constants::<BigRational>("dim 1\nlabels x\n").unwrap_err();
        assert_eq!(err, Error::NotSemisimple);
    }

    #[test]
    fn inconsistent_antisymmetry_rejected() {
        let text = "dim 3\nlabels e h f\n0 2 1 1\n2 0 1 1\n1 0 0 2\n1 2 2 -2\n";
        assert!(load_structure_constants::<BigRational>(text).is_err());
    }

    #[test]
    fn user_form_is_validated() {
        // The trace form of the defining representation is κ/4.
        let text = "dim 3\nlabels e h f\n1 0 0 2\n1 2 2 -2\n0 2 1 1\nform 0 2 1\nform 1 1 2\n";
        let g: L = load_structure_constants(text).unwrap();
        assert_eq!(g.form_kind(), FormKind::UserSupplied);
        assert_eq!(g.form(1, 1), &q(2));
        let bad = "dim 3\nlabels e h f\n1 0 0 2\n1 2 2 -2\n0 2 1 1\nform 0 2 1\nform 1 1 1\n";
        assert!(matches!(
            load_structure_constants::<BigRational>(bad),
            Err(Error::InvalidForm(_))
        ));
    }
}
