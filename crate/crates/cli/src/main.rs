use std::fmt::Write as _;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use djkm::{
    gegenbauer, load_structure_constants, parse_checks, parse_scalar, pfamily_closed_form,
    pfamily_recursion, pfamily_series, verify, BracketRoute, CurveSpecC, DjkmC, Family,
    OmegaBasis, OmegaClassC, RatFuncC, Rational, Reducer, RingElemC, SimpleLieAlgebraC,
    VerifyConfig,
};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "djkm", version, about = "Exact computations in the DJKM central extension")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Specialize the curve parameter c to a rational number (not 1 or -1).
    #[arg(long = "c", global = true, allow_hyphen_values = true, value_name = "RATIONAL")]
    c: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Reduce f dg to the basis of Ω¹/dR.
    Reduce {
        /// The coefficient f, e.g. "t^4*u".
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
        /// The function g being differentiated.
        #[arg(long, default_value = "t", allow_hyphen_values = true)]
        d: String,
    },
    /// Table of ψ(s) = [t^(s-2) u dt].
    Psi {
        #[arg(long, default_value_t = -6, allow_negative_numbers = true)]
        smin: i64,
        #[arg(long, default_value_t = 6, allow_negative_numbers = true)]
        smax: i64,
    },
    /// Coefficients P_{f,k} for k = -4..=kmax.
    Pfamily {
        /// One of -1, -2, -3, -4.
        #[arg(long, allow_negative_numbers = true)]
        family: i64,
        #[arg(long, default_value_t = 20)]
        kmax: i64,
        #[arg(long, value_enum, default_value_t = Route::Recursion)]
        route: Route,
    },
    /// Gegenbauer polynomials C_n^(λ)(c), n = 0..=nmax.
    Gegenbauer {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, default_value_t = 10)]
        nmax: usize,
    },
    /// Generating series Σ P_{f,k-4} z^k built from Gegenbauer series.
    Series {
        #[arg(long, allow_negative_numbers = true)]
        family: i64,
        /// Truncation order N.
        #[arg(long, env = "DJKM_TRUNCATION", default_value_t = djkm::DEFAULT_ORDER)]
        order: i64,
    },
    /// Exhaustive identity sweeps over basis elements with |i| <= window.
    Verify {
        #[arg(long, default_value_t = 4)]
        window: i64,
        /// "all" or a comma-separated subset of
        /// antisymmetry,jacobi,agreement,sigma,grading.
        #[arg(long, default_value = "all")]
        checks: String,
        /// "sl2" or a structure-constant file.
        #[arg(long, default_value = "sl2")]
        algebra: String,
        /// Bracket used by the sweeps other than agreement.
        #[arg(long, value_enum, default_value_t = BracketArg::Kassel)]
        bracket: BracketArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Route {
    Recursion,
    Series,
    Closed,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum BracketArg {
    Kassel,
    Closed,
}

#[derive(Debug)]
enum Failure {
    /// Bad input; exit 2.
    Usage(String),
    /// Computation or verification failed; exit 1.
    Failed(String),
}

impl From<djkm::Error> for Failure {
    fn from(e: djkm::Error) -> Self {
        use djkm::Error::*;
        match e {
            Parse { .. }
            | DegenerateParameter(_)
            | UnknownFamily(_)
            | InvalidArgument(_)
            | InvalidStructureConstants(_)
            | InvalidForm(_)
            | NotSemisimple
            | JacobiViolation(..)
            | AntisymmetryViolation(..)
            | UnsupportedCurve(_)
            | ScalarOverflow => Failure::Usage(e.to_string()),
            _ => Failure::Failed(e.to_string()),
        }
    }
}

/// Command output plus whether a verification failed.
struct Output {
    text: String,
    ok: bool,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, ok: true }
    }
}

struct Ctx {
    format: Format,
    c0: Option<Rational>,
}

impl Ctx {
    fn spec(&self, a: &RatFuncC) -> Result<RatFuncC, Failure> {
        match &self.c0 {
            None => Ok(a.clone()),
            Some(c0) => Ok(RatFuncC::constant(a.specialize(c0)?)),
        }
    }

    fn spec_class(&self, w: &OmegaClassC) -> Result<OmegaClassC, Failure> {
        Ok(w.map_coords(|a| match &self.c0 {
            None => Ok(a.clone()),
            Some(c0) => a.specialize(c0).map(RatFuncC::constant),
        })?)
    }

    fn c_json(&self) -> Value {
        match &self.c0 {
            None => Value::Null,
            Some(c0) => Value::String(RatFuncC::constant(c0.clone()).to_string()),
        }
    }

    fn curve(&self) -> Result<CurveSpecC, Failure> {
        match &self.c0 {
            None => Ok(CurveSpecC::djkm()),
            Some(c0) => Ok(CurveSpecC::djkm_at(c0.clone())?),
        }
    }
}

/// A cell with distinct plain-text and LaTeX forms.
struct Cell {
    plain: String,
    latex: String,
}

impl Cell {
    fn text(s: impl Into<String>) -> Self {
        let s = s.into();
        Cell {
            latex: s.clone(),
            plain: s,
        }
    }

    /// Plain word, set upright in LaTeX.
    fn word(s: &str) -> Self {
        Cell::math(s, format!("\\text{{{s}}}"))
    }

    fn value(a: &RatFuncC) -> Self {
        Cell {
            plain: a.to_string(),
            latex: a.to_latex(),
        }
    }

    fn math(plain: impl Into<String>, latex: impl Into<String>) -> Self {
        Cell {
            plain: plain.into(),
            latex: latex.into(),
        }
    }
}

struct Table {
    headers: Vec<Cell>,
    rows: Vec<Vec<Cell>>,
}

impl Table {
    fn csv(&self) -> Result<String, Failure> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Failure::Failed(e.to_string());
        w.write_record(self.headers.iter().map(|c| &c.plain)).map_err(io)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| &c.plain)).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Failure::Failed(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Failure::Failed(e.to_string()))
    }

    fn latex(&self) -> String {
        let cols = self.headers.len();
        let mut out = String::new();
        let _ = writeln!(out, "\\begin{{tabular}}{{l|{}}}", "c".repeat(cols.saturating_sub(1)));
        let head: Vec<String> = self.headers.iter().map(|c| format!("${}$", c.latex)).collect();
        let _ = writeln!(out, "{} \\\\ \\hline", head.join(" & "));
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| format!("${}$", c.latex)).collect();
            let _ = writeln!(out, "{} \\\\", cells.join(" & "));
        }
        out.push_str("\\end{tabular}\n");
        out
    }

    fn render(&self, format: Format, json: impl FnOnce() -> Value) -> Result<String, Failure> {
        match format {
            Format::Json => Ok(to_json(&json())),
            Format::Csv => self.csv(),
            Format::Latex => Ok(self.latex()),
        }
    }
}

fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values serialize");
    s.push('\n');
    s
}

fn omega_headers() -> Vec<Cell> {
    OmegaBasis::ALL
        .iter()
        .map(|b| Cell::math(b.key(), omega_latex(*b)))
        .collect()
}

fn omega_latex(b: OmegaBasis) -> &'static str {
    match b {
        OmegaBasis::Omega0 => "\\omega_{0}",
        OmegaBasis::M1 => "\\omega_{-1}",
        OmegaBasis::M2 => "\\omega_{-2}",
        OmegaBasis::M3 => "\\omega_{-3}",
        OmegaBasis::M4 => "\\omega_{-4}",
    }
}

fn omega_cells(w: &OmegaClassC) -> impl Iterator<Item = Cell> + '_ {
    w.coords().iter().map(Cell::value)
}

fn monomial_latex(i: i64, s: u32) -> String {
    let t = match i {
        0 => String::new(),
        1 => "t".into(),
        _ => format!("t^{{{i}}}"),
    };
    let u = match s {
        0 => String::new(),
        1 => "u".into(),
        _ => format!("u^{{{s}}}"),
    };
    match (t.is_empty(), u.is_empty()) {
        (true, true) => "1".into(),
        _ => format!("{t}{u}"),
    }
}

fn ring_latex(f: &RingElemC) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (i, s, a)) in f.terms().enumerate() {
        let mono = monomial_latex(i, s);
        let coef = a.to_latex();
        let multi = a.den().is_one() && a.num().term_count() > 1;
        let term = match (coef.as_str(), mono.as_str()) {
            (c, "1") => c.to_string(),
            ("1", m) => m.to_string(),
            ("-1", m) => format!("-{m}"),
            (c, m) if multi => format!("({c}){m}"),
            (c, m) => format!("{c}{m}"),
        };
        if n > 0 && !term.starts_with('-') {
            out.push('+');
        }
        out.push_str(&term);
    }
    out
}

fn parse_family(f: i64) -> Result<Family, Failure> {
    Ok(Family::from_index(f)?)
}

fn reduce_cmd(ctx: &Ctx, expr: &str, d: &str) -> Result<Output, Failure> {
    let f: RingElemC = expr.parse()?;
    let g: RingElemC = d.parse()?;
    let red = Reducer::djkm();
    let form = g.d().mul_elem(&f, red.curve())?;
    let class = ctx.spec_class(&red.reduce(&form))?;
    let mut headers = vec![Cell::text("f"), Cell::text("g")];
    headers.extend(omega_headers());
    let mut row = vec![
        Cell::math(f.to_string(), ring_latex(&f)),
        Cell::math(g.to_string(), format!("d({})", ring_latex(&g))),
    ];
    row.extend(omega_cells(&class));
    let table = Table {
        headers,
        rows: vec![row],
    };
    let text = table.render(ctx.format, || {
        json!({
            "f": f.to_string(),
            "g": g.to_string(),
            "c": ctx.c_json(),
            "class": class,
        })
    })?;
    Ok(Output::ok(text))
}

fn psi_cmd(ctx: &Ctx, smin: i64, smax: i64) -> Result<Output, Failure> {
    if smin > smax {
        return Err(Failure::Usage(format!("empty range {smin}..={smax}")));
    }
    let g = DjkmC::symbolic(SimpleLieAlgebraC::sl2());
    let mut rows = Vec::new();
    let mut entries = Vec::new();
    for s in smin..=smax {
        let w = ctx.spec_class(&g.psi(s).value)?;
        let mut row = vec![Cell::math(
            s.to_string(),
            format!("\\psi({s}) = \\overline{{{}\\,dt}}", monomial_latex(s - 2, 1)),
        )];
        row.extend(omega_cells(&w));
        rows.push(row);
        entries.push(json!({
            "s": s,
            "differential": format!("t^{}*u*dt", s - 2),
            "value": w,
        }));
    }
    let mut headers = vec![Cell::text("s")];
    headers.extend(omega_headers());
    let text = Table { headers, rows }.render(ctx.format, || {
        json!({
            "c": ctx.c_json(),
            "indexing": djkm::verify::psi_indexing_notes(),
            "rows": entries,
        })
    })?;
    Ok(Output::ok(text))
}

fn pfamily_cmd(ctx: &Ctx, family: i64, kmax: i64, route: Route) -> Result<Output, Failure> {
    let fam = parse_family(family)?;
    if kmax < -4 {
        return Err(Failure::Usage("kmax must be at least -4".into()));
    }
    let values: Vec<(i64, RatFuncC)> = match route {
        Route::Recursion => pfamily_recursion(fam, kmax)
            .iter()
            .map(|(k, p)| (k, RatFuncC::from_poly(p.clone())))
            .collect(),
        Route::Closed => pfamily_closed_form(fam, kmax)
            .ok_or_else(|| Failure::Usage(format!("family {fam} has no closed form")))?
            .iter()
            .map(|(k, p)| (k, RatFuncC::from_poly(p.clone())))
            .collect(),
        Route::Series => {
            let s = pfamily_series(fam, kmax + 5);
            (-4..=kmax).map(|k| (k, s.coeff(k + 4))).collect()
        }
    };
    let values = values
        .into_iter()
        .map(|(k, a)| Ok((k, ctx.spec(&a)?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let rows = values
        .iter()
        .map(|(k, a)| vec![Cell::text(family.to_string()), Cell::text(k.to_string()), Cell::value(a)])
        .collect();
    let headers = vec![
        Cell::word("family"),
        Cell::text("k"),
        Cell::math("polynomial", format!("P_{{{family},k}}")),
    ];
    let route_name = format!("{route:?}").to_lowercase();
    let text = Table { headers, rows }.render(ctx.format, || {
        json!({
            "family": family,
            "route": route_name,
            "c": ctx.c_json(),
            "entries": values
                .iter()
                .map(|(k, a)| json!({ "k": k, "value": a.to_string() }))
                .collect::<Vec<_>>(),
        })
    })?;
    Ok(Output::ok(text))
}

fn gegenbauer_cmd(ctx: &Ctx, lambda: &str, nmax: usize) -> Result<Output, Failure> {
    let lam: Rational = parse_scalar(lambda)?;
    let table = gegenbauer(lam.clone(), nmax);
    let lam_str = RatFuncC::constant(lam).to_string();
    let values = table
        .entries()
        .iter()
        .enumerate()
        .map(|(n, p)| Ok((n, ctx.spec(&RatFuncC::from_poly(p.clone()))?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let rows = values
        .iter()
        .map(|(n, a)| vec![Cell::text(lam_str.clone()), Cell::text(n.to_string()), Cell::value(a)])
        .collect();
    let headers = vec![
        Cell::math("lambda", "\\lambda"),
        Cell::text("n"),
        Cell::math("polynomial", "C_n^{(\\lambda)}(c)"),
    ];
    let text = Table { headers, rows }.render(ctx.format, || {
        json!({
            "lambda": lam_str,
            "c": ctx.c_json(),
            "entries": values
                .iter()
                .map(|(n, a)| json!({ "n": n, "value": a.to_string() }))
                .collect::<Vec<_>>(),
        })
    })?;
    Ok(Output::ok(text))
}

fn series_cmd(ctx: &Ctx, family: i64, order: i64) -> Result<Output, Failure> {
    let fam = parse_family(family)?;
    if order < 1 {
        return Err(Failure::Usage("order must be positive".into()));
    }
    let s = pfamily_series(fam, order);
    let values = (0..order)
        .map(|k| Ok((k, ctx.spec(&s.coeff(k))?)))
        .collect::<Result<Vec<_>, Failure>>()?;
    let rows = values
        .iter()
        .map(|(k, a)| vec![Cell::text(family.to_string()), Cell::text(k.to_string()), Cell::value(a)])
        .collect();
    let headers = vec![Cell::word("family"), Cell::text("k"), Cell::math("coefficient", "[z^k]")];
    let text = Table { headers, rows }.render(ctx.format, || {
        json!({
            "family": family,
            "order": order,
            "c": ctx.c_json(),
            "coefficients": values
                .iter()
                .map(|(k, a)| json!({ "k": k, "value": a.to_string() }))
                .collect::<Vec<_>>(),
        })
    })?;
    Ok(Output::ok(text))
}

fn load_algebra(spec: &str) -> Result<SimpleLieAlgebraC, Failure> {
    if spec == "sl2" {
        return Ok(SimpleLieAlgebraC::sl2());
    }
    let text = std::fs::read_to_string(spec)
        .map_err(|e| Failure::Usage(format!("cannot read {spec}: {e}")))?;
    Ok(load_structure_constants(&text)?)
}

fn verify_cmd(
    ctx: &Ctx,
    window: i64,
    checks: &str,
    algebra: &str,
    bracket: BracketArg,
) -> Result<Output, Failure> {
    if window < 0 {
        return Err(Failure::Usage("window must be non-negative".into()));
    }
    let checks = parse_checks(checks)?;
    let g = DjkmC::new(load_algebra(algebra)?, ctx.curve()?)?;
    let cfg = VerifyConfig {
        window,
        checks,
        route: match bracket {
            BracketArg::Kassel => BracketRoute::Kassel,
            BracketArg::Closed => BracketRoute::Closed,
        },
    };
    let report = verify(&g, &cfg)?;
    let rows = report
        .checks
        .iter()
        .map(|c| {
            vec![
                Cell::text(c.name.clone()),
                Cell::text(c.cases.to_string()),
                Cell::text(c.failures.to_string()),
                Cell::math(
                    c.first_counterexample.clone().unwrap_or_default(),
                    format!(
                        "\\text{{{}}}",
                        c.first_counterexample.as_deref().unwrap_or("--")
                    ),
                ),
            ]
        })
        .collect();
    let headers = vec![
        Cell::word("name"),
        Cell::word("cases"),
        Cell::word("failures"),
        Cell::word("firstCounterexample"),
    ];
    let text = Table { headers, rows }.render(ctx.format, || {
        serde_json::to_value(&report).expect("report serializes")
    })?;
    Ok(Output {
        text,
        ok: report.passed,
    })
}

fn run(cli: Cli) -> Result<Output, Failure> {
    let c0 = match &cli.c {
        None => None,
        Some(s) => {
            let c0: Rational = parse_scalar(s)?;
            CurveSpecC::djkm_at(c0.clone())?;
            Some(c0)
        }
    };
    let ctx = Ctx {
        format: cli.format,
        c0,
    };
    match &cli.command {
        Command::Reduce { expr, d } => reduce_cmd(&ctx, expr, d),
        Command::Psi { smin, smax } => psi_cmd(&ctx, *smin, *smax),
        Command::Pfamily { family, kmax, route } => pfamily_cmd(&ctx, *family, *kmax, *route),
        Command::Gegenbauer { lambda, nmax } => gegenbauer_cmd(&ctx, lambda, *nmax),
        Command::Series { family, order } => series_cmd(&ctx, *family, *order),
        Command::Verify {
            window,
            checks,
            algebra,
            bracket,
        } => verify_cmd(&ctx, *window, checks, algebra, *bracket),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{}", out.text);
            if out.ok {
                ExitCode::SUCCESS
            } else {
                eprintln!("verification failed");
                ExitCode::from(1)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Failed(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
