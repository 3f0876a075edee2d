//! Command-line front end.  `run` is the whole program minus process I/O so
//! it can be driven in-process.
//!
//! Exit codes: 0 every reported property holds, 1 a property failed,
//! 2 invalid input.

pub mod suite;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::clifford::{random_symplectic_pair, Cliff, Parity};
use crate::exactla::Mat;
use crate::quadforms::QForm;
use crate::quadpairs::QPair;
use crate::scalars::{parse_field_header, AnyField, Field, Gf2k};
use crate::triality::{class_rep, make_triple, verify_triple_permutation, Oct, PairInvariants, Triality};
use suite::{Check, SuiteName};

#[derive(Parser, Debug)]
#[command(name = "cliffpair", version, about = "Quadratic pairs, Clifford algebras and triality in characteristic 2")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct FormInput {
    /// Field header: gf2, gf4, gf4:g^2+g+1, gf2(t), ...
    #[arg(long, default_value = "gf2")]
    field: String,
    /// Symplectic blocks [[a1,b1],[a2,b2],...] giving [a1,b1] ⊥ [a2,b2] ⊥ ...
    #[arg(long, conflicts_with = "gram", required_unless_present = "gram")]
    blocks: Option<String>,
    /// Upper-triangular Gram matrix [[..],[..],...] with q(x) = xᵀGx
    #[arg(long)]
    gram: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Arf invariant, Witt index and hyperbolicity of a form
    Arf(FormInput),
    /// Clifford algebra of a form, its centre and components
    Clifford {
        #[command(flatten)]
        input: FormInput,
        /// Print quaternion generators of the even Clifford algebra
        #[arg(long)]
        decompose: bool,
        /// Use the full Clifford algebra instead of the even one
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Triality pair (t⁺, t⁻) of a proper similitude of the octonion norm
    Triality {
        #[arg(long, default_value = "gf2")]
        field: String,
        /// 8x8 matrix, nested [[..],..] or 64 comma-separated entries
        #[arg(long)]
        matrix: String,
        /// Cayley-Dickson parameters a,b,c (default: split octonions)
        #[arg(long, default_value = "0,1,1")]
        octonion: String,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// The triple (Ad_q, C⁺, C⁻) for an 8-dimensional form of trivial Arf invariant
    Triple {
        #[command(flatten)]
        input: FormInput,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Randomized verification suites
    Suite {
        #[arg(value_enum)]
        name: SuiteArg,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(short = 'n', long = "samples", default_value_t = 10)]
        samples: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Format {
    Text,
    Kv,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum SuiteArg {
    Semitrace,
    Clifford,
    Triality,
    Triples,
    Appendix,
    All,
}

impl From<SuiteArg> for SuiteName {
    fn from(s: SuiteArg) -> Self {
        match s {
            SuiteArg::Semitrace => SuiteName::Semitrace,
            SuiteArg::Clifford => SuiteName::Clifford,
            SuiteArg::Triality => SuiteName::Triality,
            SuiteArg::Triples => SuiteName::Triples,
            SuiteArg::Appendix => SuiteName::Appendix,
            SuiteArg::All => SuiteName::All,
        }
    }
}

/// Exit code plus captured output streams.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Line {
    Value(String, String),
    Check(Check),
}

struct Report {
    lines: Vec<Line>,
}

impl Report {
    fn new() -> Self {
        Report { lines: Vec::new() }
    }
    fn value(&mut self, key: &str, v: impl ToString) {
        self.lines.push(Line::Value(key.to_string(), v.to_string()));
    }
    fn check(&mut self, c: Check) {
        self.lines.push(Line::Check(c));
    }
    fn flag(&mut self, name: &str, ok: bool) {
        self.check(Check { name: name.to_string(), passed: ok as usize, total: 1 });
    }
    fn code(&self) -> i32 {
        let failed = self.lines.iter().any(|l| matches!(l, Line::Check(c) if !c.ok()));
        failed as i32
    }
    fn render(&self, format: Format) -> String {
        let mut out = String::new();
        for line in &self.lines {
            match (line, format) {
                (Line::Value(k, v), Format::Text) => writeln!(out, "{k}: {v}"),
                (Line::Value(k, v), Format::Kv) => writeln!(out, "{k}={v}"),
                (Line::Check(c), Format::Text) => {
                    writeln!(out, "{} {} {}/{}", if c.ok() { "PASS" } else { "FAIL" }, c.name, c.passed, c.total)
                }
                (Line::Check(c), Format::Kv) => writeln!(
                    out,
                    "check={} status={} passed={} total={}",
                    c.name,
                    if c.ok() { "pass" } else { "fail" },
                    c.passed,
                    c.total
                ),
            }
            .expect("write to string");
        }
        out
    }
}

fn input_error(msg: impl ToString) -> String {
    msg.to_string()
}

/// Parses `[[a,b],[c,d]]` into rows of trimmed tokens.  A flat `[a,b,c]` or
/// bare `a,b,c` becomes a single row.
pub fn parse_nested(s: &str) -> Result<Vec<Vec<String>>, String> {
    let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if t.is_empty() {
        return Err("empty list".into());
    }
    let inner = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')).unwrap_or(&t);
    if !inner.starts_with('[') {
        if inner.contains(['[', ']']) {
            return Err(format!("malformed list: {s}"));
        }
        return Ok(vec![inner.split(',').map(str::to_string).collect()]);
    }
    let mut rows = Vec::new();
    let mut rest = inner;
    loop {
        let body = rest.strip_prefix('[').ok_or_else(|| format!("malformed list: {s}"))?;
        let close = body.find(']').ok_or_else(|| format!("unbalanced brackets: {s}"))?;
        let row = &body[..close];
        if row.contains('[') {
            return Err(format!("lists nest at most two deep: {s}"));
        }
        rows.push(row.split(',').map(str::to_string).collect());
        rest = &body[close + 1..];
        if rest.is_empty() {
            break;
        }
        rest = rest.strip_prefix(',').ok_or_else(|| format!("malformed list: {s}"))?;
    }
    Ok(rows)
}

fn parse_matrix<F: Field>(f: &F, s: &str, n: Option<usize>) -> Result<Mat<F>, String> {
    let mut rows = parse_nested(s)?;
    if let (Some(n), 1) = (n, rows.len()) {
        if rows[0].len() != n * n {
            return Err(format!("expected {} entries, got {}", n * n, rows[0].len()));
        }
        rows = rows[0].chunks(n).map(|c| c.to_vec()).collect();
    }
    let cols = rows[0].len();
    if rows.iter().any(|r| r.len() != cols) {
        return Err("rows have different lengths".into());
    }
    if let Some(n) = n {
        if rows.len() != n || cols != n {
            return Err(format!("expected a {n}x{n} matrix"));
        }
    }
    let mut data = Vec::with_capacity(rows.len() * cols);
    for tok in rows.iter().flatten() {
        data.push(f.parse_elem(tok).map_err(input_error)?);
    }
    Mat::from_entries(f, rows.len(), cols, data).map_err(input_error)
}

fn parse_form<F: Field>(f: &F, input: &FormInput) -> Result<QForm<F>, String> {
    if let Some(b) = &input.blocks {
        let rows = parse_nested(b)?;
        let mut blocks = Vec::new();
        for r in &rows {
            if r.len() != 2 {
                return Err(format!("a block needs two entries, got {}", r.len()));
            }
            blocks.push((f.parse_elem(&r[0]).map_err(input_error)?, f.parse_elem(&r[1]).map_err(input_error)?));
        }
        let q = QForm::from_blocks(f, &blocks);
        if q.polar_matrix().rank() != q.dim() {
            return Err("form is singular".into());
        }
        return Ok(q);
    }
    let g = input.gram.as_deref().ok_or("one of --blocks or --gram is required")?;
    QForm::new(parse_matrix(f, g, None)?).map_err(input_error)
}

fn fmt_class(c: Option<bool>) -> String {
    match c {
        Some(b) => (b as u8).to_string(),
        None => "undecided".into(),
    }
}

fn fmt_matrix<F: Field>(m: &Mat<F>) -> String {
    let f = m.field();
    let rows: Vec<String> = (0..m.rows())
        .map(|i| format!("[{}]", m.row(i).iter().map(|x| f.format_elem(x)).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn fmt_invariants(p: &PairInvariants) -> String {
    format!("degree={} disc={} arf={} witt={}", p.degree, fmt_class(p.disc), fmt_class(p.arf), p.witt)
}

fn with_field<T>(
    header: &str,
    binary: impl FnOnce(&Gf2k) -> Result<T, String>,
    rational: impl FnOnce(&crate::scalars::RationalFunctionField) -> Result<T, String>,
) -> Result<T, String> {
    match parse_field_header(header).map_err(input_error)? {
        AnyField::Binary(f) => binary(&f),
        AnyField::Rational(f) => rational(&f),
    }
}

fn cmd_arf<F: Field>(f: &F, input: &FormInput) -> Result<Report, String> {
    let q = parse_form(f, input)?;
    let arf = q.arf();
    let mut r = Report::new();
    r.value("field", f.name());
    r.value("dim", q.dim());
    r.value("arf.value", f.format_elem(&arf.value));
    r.value("arf.class", fmt_class(arf.class));
    if f.is_finite() {
        let w = q.witt_index().map_err(input_error)?;
        r.value("witt.index", w);
        r.value("hyperbolic", w * 2 == q.dim());
    }
    Ok(r)
}

fn cmd_clifford<F: Field>(f: &F, input: &FormInput, decompose: bool, full: bool, seed: u64) -> Result<Report, String> {
    let q = parse_form(f, input)?;
    let parity = if full { Parity::Full } else { Parity::Even };
    let c = Cliff::new(&q, parity).map_err(input_error)?;
    let arf = q.arf();
    let mut r = Report::new();
    r.value("field", f.name());
    r.value("form.dim", q.dim());
    r.value("parity", if full { "full" } else { "even" });
    r.value("algebra.dim", c.dim());
    r.value("centre.dim", c.alg().centre().dim());
    r.value("arf.value", f.format_elem(&arf.value));
    r.value("arf.class", fmt_class(arf.class));
    if !full {
        r.value(
            "centre",
            match arf.class {
                Some(false) => "split (F x F)",
                Some(true) => "field",
                None => "undecided",
            },
        );
    }
    if decompose {
        if full {
            for (i, blk) in c.blocks().iter().enumerate() {
                let (a, b) = (f.mul(&blk.a, &blk.b), blk.a.clone());
                r.value(&format!("Q{}", i + 1), format!("[{}, {})", f.format_elem(&a), f.format_elem(&b)));
            }
        } else {
            let dec = c.decompose_even().map_err(input_error)?;
            for (i, (a, b)) in dec.params.iter().enumerate() {
                r.value(&format!("Q{}", i + 1), format!("[{}, {})", f.format_elem(a), f.format_elem(b)));
            }
            r.flag("decomposition-relations", c.verify_decomposition(&dec).is_empty());
        }
    }
    if full {
        if q.dim() >= 6 && f.is_finite() {
            let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
            let (e, ep) = random_symplectic_pair(&q, &mut rng);
            let p = c.full_semitrace(&e, &ep).map_err(input_error)?;
            let inv = PairInvariants::of(&p, seed).map_err(input_error)?;
            r.value("semitrace.pair", fmt_invariants(&inv));
        }
    } else if arf.class == Some(false) && q.dim() >= 4 && f.is_finite() {
        let comps = c.split_components().map_err(input_error)?;
        for (name, comp) in [("plus", &comps.plus), ("minus", &comps.minus)] {
            let inv = PairInvariants::of(&comp.pair, seed).map_err(input_error)?;
            r.value(&format!("component.{name}"), fmt_invariants(&inv));
        }
    } else if arf.class == Some(true) {
        r.value("components", "none (centre is a field)");
    }
    Ok(r)
}

fn parse_params(f: &Gf2k, s: &str) -> Result<(u32, u32, u32), String> {
    let rows = parse_nested(s)?;
    if rows.len() != 1 || rows[0].len() != 3 {
        return Err("octonion parameters are a,b,c".into());
    }
    let p: Vec<u32> = rows[0].iter().map(|t| f.parse_elem(t)).collect::<Result<_, _>>().map_err(input_error)?;
    Ok((p[0], p[1], p[2]))
}

fn cmd_triality(f: &Gf2k, matrix: &str, octonion: &str) -> Result<Report, String> {
    let (a, b, c) = parse_params(f, octonion)?;
    let oct = Oct::cayley_dickson(f, &a, &b, &c).map_err(input_error)?;
    let m = parse_matrix(f, matrix, Some(8))?;
    let tri = Triality::new(oct).map_err(input_error)?;
    let t = tri.similitude(&m).map_err(input_error)?;
    if !t.proper {
        return Err("the similitude is improper".into());
    }
    let pair = tri.triality_pair(&t).map_err(input_error)?;
    let mut r = Report::new();
    r.value("field", f.name());
    r.value("mu", f.format_elem(&t.mu));
    r.value("proper", t.proper);
    r.value("nullity", pair.nullity);
    r.value("t_plus", fmt_matrix(&pair.plus.matrix));
    r.value("mu_plus", f.format_elem(&pair.plus.mu));
    r.value("t_minus", fmt_matrix(&pair.minus.matrix));
    r.value("mu_minus", f.format_elem(&pair.minus.mu));
    r.value("theta_plus", fmt_matrix(&class_rep(&pair.plus.matrix)));
    r.value("theta_minus", fmt_matrix(&class_rep(&pair.minus.matrix)));
    let failures = tri.check_relations(&t, &pair);
    r.flag("triality-relations", !failures.iter().any(|s| !s.starts_with("multiplier")));
    r.flag("multiplier-identity", !failures.iter().any(|s| s.starts_with("multiplier")));
    let theta = tri.check_theta(&t, &pair).map_err(input_error)?;
    r.flag("theta-action", theta.is_empty());
    Ok(r)
}

fn cmd_triple(f: &Gf2k, input: &FormInput, seed: u64) -> Result<Report, String> {
    let q = parse_form(f, input)?;
    if q.dim() != 8 {
        return Err(format!("the form must be 8-dimensional, got {}", q.dim()));
    }
    if q.arf().class != Some(false) {
        return Err("the Arf invariant is nontrivial; the centre of the even Clifford algebra is a field".into());
    }
    let p = QPair::adjoint(&q).map_err(input_error)?;
    let t = make_triple(&p, seed).map_err(input_error)?;
    let mut r = Report::new();
    r.value("field", f.name());
    for (name, slot) in [("A", &t.a), ("B", &t.b), ("C", &t.c)] {
        r.value(name, fmt_invariants(&PairInvariants::of(slot, seed).map_err(input_error)?));
    }
    for (name, ok) in verify_triple_permutation(&t, seed).map_err(input_error)? {
        r.flag(&name.replace(' ', "-").replace(['(', ')'], ""), ok);
    }
    Ok(r)
}

fn dispatch(cli: Cli) -> Result<(Report, Format), String> {
    match cli.cmd {
        Cmd::Arf(input) => {
            let r = with_field(&input.field, |f| cmd_arf(f, &input), |f| cmd_arf(f, &input))?;
            Ok((r, input.format))
        }
        Cmd::Clifford { input, decompose, full, seed } => {
            let r = with_field(
                &input.field,
                |f| cmd_clifford(f, &input, decompose, full, seed),
                |f| cmd_clifford(f, &input, decompose, full, seed),
            )?;
            Ok((r, input.format))
        }
        Cmd::Triality { field, matrix, octonion, format } => {
            let r = with_field(&field, |f| cmd_triality(f, &matrix, &octonion), |_| Err(finite_only("triality")))?;
            Ok((r, format))
        }
        Cmd::Triple { input, seed } => {
            let r = with_field(&input.field, |f| cmd_triple(f, &input, seed), |_| Err(finite_only("triple")))?;
            Ok((r, input.format))
        }
        Cmd::Suite { name, seed, samples, format } => {
            let mut r = Report::new();
            r.value("suite", format!("{name:?}").to_lowercase());
            r.value("seed", seed);
            r.value("samples", samples);
            for c in suite::run_suite(name.into(), seed, samples) {
                r.check(c);
            }
            Ok((r, format))
        }
    }
}

fn finite_only(cmd: &str) -> String {
    format!("{cmd} needs a finite field")
}

/// Runs the program on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: 0, stdout: text, stderr: String::new() }
            };
        }
    };
    match dispatch(cli) {
        Ok((report, format)) => Outcome { code: report.code(), stdout: report.render(format), stderr: String::new() },
        Err(msg) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
