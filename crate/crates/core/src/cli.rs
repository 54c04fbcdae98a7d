//! Command implementations behind the `hankel-catalan` binary.
//!
//! Every command produces a [`CommandResult`]: an ordered table of rows plus a
//! status. Rendering is deterministic: rows are emitted in a fixed order and
//! wall-clock time is printed only on request (`--timing`).
//!
//! Exit codes: `0` all checks pass, `1` usage or input error, `2` mathematical
//! mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::{One, Signed, Zero};
use serde_json::{json, Map, Value};

use crate::exact_algebra::{fmt_rational, parse_rational, rat, to_f64, ExactRational};
use crate::genfunc::{
    big_g_l1_closed, big_g_l2_closed, big_g_laurent, default_order, f_l1_closed, f_l2_closed, f_series, rho_series,
    GenFuncError,
};
use crate::opoly::{chain_coeffs, stieltjes_from_moments};
use crate::sequences::a_sequence;
use crate::verification::{verify_cell, verify_grid, Route, VerificationReport};
use crate::weight::{moments_quadrature, QuadratureConfig, Scheme, WeightSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "hankel-catalan",
    version,
    about = "Exact Hankel transforms of sums of consecutive generalized Catalan numbers"
)]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Plain)]
    pub format: Format,
    /// Append elapsed_ms to the summary (makes output time-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Plain,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// a_0 ..= a_n.
    Seq(SeqArgs),
    /// h_1 ..= h_n by one or all routes.
    Hankel(HankelArgs),
    /// The four-route grid over a set of L values.
    Verify(VerifyArgs),
    /// Recurrence coefficients alpha_k, beta_k for k = 0 ..= n.
    Recurrence(RecurrenceArgs),
    /// Series coefficients of G(t;L), F(z;L) or rho(t;L).
    Series(SeriesArgs),
    /// Quadrature moments of the weight function against a_n.
    Quad(QuadArgs),
}

#[derive(Debug, Args)]
pub struct SeqArgs {
    /// Parameter L as p/q or an integer.
    #[arg(long = "L", value_parser = parse_l)]
    pub l: ExactRational,
    #[arg(long)]
    pub n: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum HankelMethod {
    Det,
    Closed,
    Product,
    Poly,
    All,
}

#[derive(Debug, Args)]
pub struct HankelArgs {
    #[arg(long = "L", value_parser = parse_l)]
    pub l: ExactRational,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = HankelMethod::All)]
    pub method: HankelMethod,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Values of L: a list such as `1,5/2,3` and/or spans such as `1..8`.
    #[arg(long = "L", value_parser = parse_l_range, default_value = "1..8")]
    pub l: LRange,
    #[arg(long = "n-max", default_value_t = 12)]
    pub n_max: usize,
    /// Worker threads; 0 picks the number of CPUs.
    #[arg(long, default_value_t = 0)]
    pub jobs: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum RecurrenceMethod {
    Chain,
    Moments,
    Both,
}

#[derive(Debug, Args)]
pub struct RecurrenceArgs {
    #[arg(long = "L", value_parser = parse_l)]
    pub l: ExactRational,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub n: u64,
    #[arg(long, value_enum, default_value_t = RecurrenceMethod::Chain)]
    pub method: RecurrenceMethod,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SeriesKind {
    #[value(name = "G")]
    G,
    #[value(name = "F")]
    F,
    #[value(name = "rho")]
    Rho,
}

#[derive(Debug, Args)]
pub struct SeriesArgs {
    #[arg(long = "L", value_parser = parse_l)]
    pub l: ExactRational,
    /// Number of coefficients; defaults to HF_DEFAULT_ORDER or 30.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    pub terms: Option<u64>,
    #[arg(long, value_enum, default_value_t = SeriesKind::G)]
    pub which: SeriesKind,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum QuadScheme {
    Midpoint,
    Gauss,
}

#[derive(Debug, Args)]
pub struct QuadArgs {
    #[arg(long = "L", value_parser = parse_l)]
    pub l: ExactRational,
    /// Highest moment index.
    #[arg(long, default_value_t = 10)]
    pub moments: u32,
    #[arg(long, default_value_t = 4000)]
    pub nodes: usize,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, value_enum, default_value_t = QuadScheme::Midpoint)]
    pub scheme: QuadScheme,
}

/// A list of L values in the order given, duplicates removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LRange(pub Vec<ExactRational>);

fn parse_l(text: &str) -> Result<ExactRational, String> {
    let l = parse_rational(text).map_err(|e| e.to_string())?;
    if !l.is_positive() {
        return Err(format!("L must be positive, got {}", fmt_rational(&l)));
    }
    Ok(l)
}

/// `a..b` steps by one from `a` while not exceeding `b`.
pub fn parse_l_range(text: &str) -> Result<LRange, String> {
    let mut values: Vec<ExactRational> = Vec::new();
    for part in text.split(',').map(str::trim) {
        if let Some((lo, hi)) = part.split_once("..") {
            let (lo, hi) = (parse_l(lo.trim())?, parse_l(hi.trim())?);
            if lo > hi {
                return Err(format!("empty span {part}"));
            }
            let mut l = lo;
            while l <= hi {
                values.push(l.clone());
                l += rat(1);
            }
        } else {
            values.push(parse_l(part)?);
        }
    }
    let mut seen = Vec::with_capacity(values.len());
    values.retain(|v| {
        let fresh = !seen.contains(v);
        if fresh {
            seen.push(v.clone());
        }
        fresh
    });
    Ok(LRange(values))
}

/// One table entry.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    /// Small index, rendered as a JSON number.
    Index(u64),
    /// Exact integer or rational, rendered as a string.
    Exact(String),
    Float(f64),
    /// Float shown in scientific notation.
    Sci(f64),
    Flag(bool),
    Empty,
}

impl Cell {
    fn exact(x: &ExactRational) -> Self {
        Cell::Exact(fmt_rational(x))
    }

    fn opt(x: Option<&ExactRational>) -> Self {
        x.map_or(Cell::Empty, Cell::exact)
    }

    fn text(&self) -> String {
        match self {
            Cell::Index(i) => i.to_string(),
            Cell::Exact(s) => s.clone(),
            Cell::Float(x) => x.to_string(),
            Cell::Sci(x) => format!("{x:e}"),
            Cell::Flag(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Index(i) => json!(i),
            Cell::Exact(s) => json!(s),
            Cell::Float(x) | Cell::Sci(x) => json!(x),
            Cell::Flag(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Mismatch,
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Mismatch => "mismatch",
            Status::Error => "error",
        }
    }

    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => EXIT_OK,
            Status::Mismatch => EXIT_MISMATCH,
            Status::Error => EXIT_USAGE,
        }
    }
}

/// The first failing check: where it happened and the two values compared.
#[derive(Debug, Clone, PartialEq)]
pub struct Mismatch {
    pub at: Vec<(String, String)>,
    pub left: (String, String),
    pub right: (String, String),
}

impl Mismatch {
    fn new(at: &[(&str, String)], left: (&str, String), right: (&str, String)) -> Self {
        Self {
            at: at.iter().map(|(k, v)| (k.to_string(), v.clone())).collect(),
            left: (left.0.to_string(), left.1),
            right: (right.0.to_string(), right.1),
        }
    }

    fn describe(&self) -> String {
        let at: Vec<String> = self.at.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{}: {} = {} but {} = {}", at.join(" "), self.left.0, self.left.1, self.right.0, self.right.1)
    }

    fn json(&self) -> Value {
        let at: Map<String, Value> = self.at.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        json!({
            "at": at,
            "left": { "name": self.left.0, "value": self.left.1 },
            "right": { "name": self.right.0, "value": self.right.1 },
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CommandResult {
    pub command: String,
    pub params: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    /// Extra summary fields, e.g. the pole coefficient of a series.
    pub extras: Vec<(String, Cell)>,
    pub status: Status,
    pub mismatch: Option<Mismatch>,
    pub message: Option<String>,
    pub elapsed_ms: u128,
}

impl CommandResult {
    fn new(command: &str, params: Vec<(&str, String)>, columns: &[&str]) -> Self {
        Self {
            command: command.to_string(),
            params: params.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
            extras: Vec::new(),
            status: Status::Ok,
            mismatch: None,
            message: None,
            elapsed_ms: 0,
        }
    }

    /// Records a failed check; only the first one is kept.
    fn fail(&mut self, mismatch: Mismatch) {
        if self.mismatch.is_none() {
            self.status = Status::Mismatch;
            self.mismatch = Some(mismatch);
        }
    }

    fn error(mut self, message: String) -> Self {
        self.status = Status::Error;
        self.message = Some(message);
        self
    }

    pub fn exit_code(&self) -> i32 {
        self.status.exit_code()
    }

    fn summary_json(&self, timing: bool) -> Value {
        let mut s = Map::new();
        s.insert("command".into(), json!(self.command));
        let params: Map<String, Value> = self.params.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
        s.insert("params".into(), Value::Object(params));
        s.insert("status".into(), json!(self.status.name()));
        s.insert("rows".into(), json!(self.rows.len()));
        for (k, v) in &self.extras {
            s.insert(k.clone(), v.json());
        }
        s.insert("mismatch".into(), self.mismatch.as_ref().map_or(Value::Null, Mismatch::json));
        if let Some(m) = &self.message {
            s.insert("message".into(), json!(m));
        }
        if timing {
            s.insert("elapsed_ms".into(), json!(self.elapsed_ms as u64));
        }
        json!({ "summary": s })
    }

    /// JSON Lines: one object per row, then `{"summary": {...}}`.
    pub fn render_json(&self, timing: bool) -> String {
        let mut out = String::new();
        for row in &self.rows {
            let obj: Map<String, Value> = self.columns.iter().cloned().zip(row.iter().map(Cell::json)).collect();
            writeln!(out, "{}", Value::Object(obj)).unwrap();
        }
        writeln!(out, "{}", self.summary_json(timing)).unwrap();
        out
    }

    /// Header plus rows; the status travels in the exit code.
    pub fn render_csv(&self) -> String {
        let escape = |s: String| {
            if s.contains([',', '"', '\n']) {
                format!("\"{}\"", s.replace('"', "\"\""))
            } else {
                s
            }
        };
        let mut out = String::new();
        writeln!(out, "{}", self.columns.iter().cloned().map(escape).collect::<Vec<_>>().join(",")).unwrap();
        for row in &self.rows {
            writeln!(out, "{}", row.iter().map(|c| escape(c.text())).collect::<Vec<_>>().join(",")).unwrap();
        }
        out
    }

    /// Aligned table followed by a status line.
    pub fn render_plain(&self, timing: bool) -> String {
        let texts: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(Cell::text).collect()).collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|j| texts.iter().map(|r| r[j].chars().count()).chain([self.columns[j].chars().count()]).max().unwrap())
            .collect();
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:>w$}")).collect();
            padded.join("  ").trim_end().to_string()
        };
        let mut out = String::new();
        if !self.rows.is_empty() {
            writeln!(out, "{}", line(&self.columns)).unwrap();
            for r in &texts {
                writeln!(out, "{}", line(r)).unwrap();
            }
        }
        for (k, v) in &self.extras {
            writeln!(out, "{k}: {}", v.text()).unwrap();
        }
        write!(out, "status: {}", self.status.name()).unwrap();
        if timing {
            write!(out, " ({} ms)", self.elapsed_ms).unwrap();
        }
        writeln!(out).unwrap();
        if let Some(m) = &self.mismatch {
            writeln!(out, "first mismatch: {}", m.describe()).unwrap();
        }
        if let Some(m) = &self.message {
            writeln!(out, "error: {m}").unwrap();
        }
        out
    }

    pub fn render(&self, format: Format, timing: bool) -> String {
        match format {
            Format::Json => self.render_json(timing),
            Format::Csv => self.render_csv(),
            Format::Plain => self.render_plain(timing),
        }
    }
}

fn l_param(l: &ExactRational) -> (&'static str, String) {
    ("L", fmt_rational(l))
}

pub fn cmd_seq(args: &SeqArgs) -> CommandResult {
    let mut res = CommandResult::new("seq", vec![l_param(&args.l), ("n", args.n.to_string())], &["n", "a_n"]);
    match a_sequence(&args.l, args.n) {
        Ok(w) => {
            res.rows = w.terms().iter().enumerate().map(|(n, a)| vec![Cell::Index(n as u64), Cell::exact(a)]).collect();
            res
        }
        Err(e) => res.error(e.to_string()),
    }
}

fn routes_for(method: HankelMethod) -> Vec<Route> {
    match method {
        HankelMethod::Det => vec![Route::Det],
        HankelMethod::Closed => vec![Route::Closed],
        HankelMethod::Product => vec![Route::Product],
        HankelMethod::Poly => vec![Route::Poly],
        HankelMethod::All => Route::ALL.to_vec(),
    }
}

fn report_mismatch(r: &VerificationReport) -> Option<Mismatch> {
    let at = [("L", fmt_rational(&r.l)), ("n", r.n.to_string())];
    if let Some((a, va, b, vb)) = r.first_disagreement() {
        return Some(Mismatch::new(&at, (a.name(), fmt_rational(va)), (b.name(), fmt_rational(vb))));
    }
    let fib = r.fibonacci.as_ref()?;
    let (route, v) = Route::ALL.iter().find_map(|&rt| r.value(rt).map(|v| (rt, v)))?;
    (v != fib).then(|| Mismatch::new(&at, (route.name(), fmt_rational(v)), ("fibonacci", fmt_rational(fib))))
}

pub fn cmd_hankel(args: &HankelArgs) -> CommandResult {
    let routes = routes_for(args.method);
    let all = args.method == HankelMethod::All;
    let with_fib = all && args.l.is_one();
    let mut columns = vec!["n"];
    columns.extend(routes.iter().map(|r| r.name()));
    if with_fib {
        columns.push("fibonacci");
    }
    if all {
        columns.push("agree");
    }
    let method = format!("{:?}", args.method).to_lowercase();
    let params = vec![l_param(&args.l), ("n", args.n.to_string()), ("method", method)];
    let mut res = CommandResult::new("hankel", params, &columns);
    for n in 1..=args.n as usize {
        let report = match verify_cell(&args.l, n, &routes) {
            Ok(r) => r,
            Err(e) => return res.error(e.to_string()),
        };
        let mut row = vec![Cell::Index(n as u64)];
        row.extend(routes.iter().map(|&r| Cell::opt(report.value(r))));
        if with_fib {
            row.push(Cell::opt(report.fibonacci.as_ref()));
        }
        if all {
            row.push(Cell::Flag(report.agree));
            if let Some(m) = report_mismatch(&report) {
                res.fail(m);
            }
        }
        res.rows.push(row);
    }
    res
}

pub fn cmd_verify(args: &VerifyArgs) -> CommandResult {
    let ls = &args.l.0;
    let with_fib = ls.iter().any(|l| l.is_one());
    let mut columns = vec!["L", "n", "det", "closed", "product", "poly"];
    if with_fib {
        columns.push("fibonacci");
    }
    columns.push("agree");
    let list: Vec<String> = ls.iter().map(fmt_rational).collect();
    let params = vec![("L", list.join(",")), ("n_max", args.n_max.to_string())];
    let mut res = CommandResult::new("verify", params, &columns);
    let reports = match verify_grid(ls, args.n_max, args.jobs) {
        Ok(r) => r,
        Err(e) => return res.error(e.to_string()),
    };
    for r in &reports {
        let mut row = vec![Cell::exact(&r.l), Cell::Index(r.n as u64)];
        row.extend(Route::ALL.iter().map(|&rt| Cell::opt(r.value(rt))));
        if with_fib {
            row.push(Cell::opt(r.fibonacci.as_ref()));
        }
        row.push(Cell::Flag(r.agree));
        if let Some(m) = report_mismatch(r) {
            res.fail(m);
        }
        res.rows.push(row);
    }
    res.extras.push(("cells".into(), Cell::Index(reports.len() as u64)));
    res
}

pub fn cmd_recurrence(args: &RecurrenceArgs) -> CommandResult {
    let levels = args.n as usize + 1;
    let method = format!("{:?}", args.method).to_lowercase();
    let columns: &[&str] = match args.method {
        RecurrenceMethod::Chain => &["k", "alpha", "beta", "r_prev"],
        RecurrenceMethod::Moments => &["k", "alpha", "beta"],
        RecurrenceMethod::Both => &["k", "alpha", "beta", "r_prev", "equal"],
    };
    let params = vec![l_param(&args.l), ("n", args.n.to_string()), ("method", method)];
    let mut res = CommandResult::new("recurrence", params, columns);

    let chain = match args.method {
        RecurrenceMethod::Moments => None,
        _ => match chain_coeffs(&args.l, levels) {
            Ok(c) => Some(c),
            Err(e) => return res.error(e.to_string()),
        },
    };
    let moments = match args.method {
        RecurrenceMethod::Chain => None,
        _ => match a_sequence(&args.l, 2 * levels)
            .map_err(|e| e.to_string())
            .and_then(|w| stieltjes_from_moments(&w, levels).map_err(|e| e.to_string()))
        {
            Ok(c) => Some(c),
            Err(e) => return res.error(e),
        },
    };
    for k in 0..levels {
        let mut row = vec![Cell::Index(k as u64)];
        match (&chain, &moments) {
            (Some((c, state)), m) => {
                row.push(Cell::exact(&c.alpha[k]));
                row.push(Cell::exact(&c.beta[k]));
                row.push(Cell::exact(state.r(k as i64 - 1)));
                if let Some(m) = m {
                    let equal = c.alpha[k] == m.alpha[k] && c.beta[k] == m.beta[k];
                    row.push(Cell::Flag(equal));
                    if !equal {
                        let (name, cv, mv) = if c.alpha[k] != m.alpha[k] {
                            ("alpha", &c.alpha[k], &m.alpha[k])
                        } else {
                            ("beta", &c.beta[k], &m.beta[k])
                        };
                        res.fail(Mismatch::new(
                            &[("L", fmt_rational(&args.l)), ("k", k.to_string())],
                            (&format!("chain {name}"), fmt_rational(cv)),
                            (&format!("moments {name}"), fmt_rational(mv)),
                        ));
                    }
                }
            }
            (None, Some(m)) => {
                row.push(Cell::exact(&m.alpha[k]));
                row.push(Cell::exact(&m.beta[k]));
            }
            (None, None) => unreachable!("at least one method runs"),
        }
        res.rows.push(row);
    }
    res
}

pub fn cmd_series(args: &SeriesArgs) -> CommandResult {
    let terms = args.terms.map_or_else(default_order, |t| t as i64);
    let which = match args.which {
        SeriesKind::G => "G",
        SeriesKind::F => "F",
        SeriesKind::Rho => "rho",
    };
    let params = vec![l_param(&args.l), ("terms", terms.to_string()), ("which", which.to_string())];
    let l = &args.l;
    let closed_available = l.is_one() || *l == rat(2);
    match args.which {
        SeriesKind::Rho => {
            let mut res = CommandResult::new("series", params, &["k", "coeff"]);
            let s = rho_series(l, terms - 1);
            res.rows = (0..terms).map(|k| vec![Cell::Index(k as u64), Cell::exact(&s.coeff(k))]).collect();
            res
        }
        SeriesKind::G => {
            let mut columns = vec!["k", "coeff", "a_k"];
            if closed_available {
                columns.push("closed");
            }
            columns.push("match");
            let mut res = CommandResult::new("series", params, &columns);
            let order = terms - 1;
            let raw = big_g_laurent(l, order);
            let pole = raw.pole_coefficient();
            res.extras.push(("pole".into(), Cell::exact(&pole)));
            if !pole.is_zero() {
                res.fail(Mismatch::new(
                    &[("L", fmt_rational(l)), ("k", "-1".into())],
                    ("pole", fmt_rational(&pole)),
                    ("expected", "0".into()),
                ));
            }
            let closed = if l.is_one() {
                Some(big_g_l1_closed(order))
            } else if closed_available {
                Some(big_g_l2_closed(order))
            } else {
                None
            };
            series_rows(&mut res, l, &raw.regular_part(), closed, 0, terms)
        }
        SeriesKind::F => {
            let mut columns = vec!["k", "coeff", "a_{k-1}"];
            if closed_available {
                columns.push("closed");
            }
            columns.push("match");
            let mut res = CommandResult::new("series", params, &columns);
            let f = match f_series(l, terms) {
                Ok(f) => f,
                Err(GenFuncError::PoleNotCancelled { coefficient, .. }) => {
                    res.extras.push(("constant".into(), Cell::Exact(coefficient.clone())));
                    res.fail(Mismatch::new(
                        &[("L", fmt_rational(l)), ("k", "0".into())],
                        ("constant", coefficient),
                        ("expected", "0".into()),
                    ));
                    return res;
                }
                Err(e) => return res.error(e.to_string()),
            };
            res.extras.push(("constant".into(), Cell::exact(&f.coeff(0))));
            let closed = if l.is_one() {
                Some(f_l1_closed(terms))
            } else if closed_available {
                Some(f_l2_closed(terms))
            } else {
                None
            };
            series_rows(&mut res, l, &f, closed, 1, terms)
        }
    }
}

/// Rows for exponents `first ..= first + terms − 1`, compared against
/// `a_{k−first}` and, when given, a closed-form expansion.
fn series_rows(
    res: &mut CommandResult,
    l: &ExactRational,
    s: &crate::exact_algebra::TruncatedSeries,
    closed: Option<Result<crate::exact_algebra::TruncatedSeries, GenFuncError>>,
    first: i64,
    terms: i64,
) -> CommandResult {
    let closed = match closed.transpose() {
        Ok(c) => c,
        Err(e) => return res.clone().error(e.to_string()),
    };
    let window = match a_sequence(l, terms as usize - 1) {
        Ok(w) => w,
        Err(e) => return res.clone().error(e.to_string()),
    };
    for k in first..first + terms {
        let coeff = s.coeff(k);
        let expected = &window.terms()[(k - first) as usize];
        let mut row = vec![Cell::Index(k as u64), Cell::exact(&coeff), Cell::exact(expected)];
        let mut ok = coeff == *expected;
        let at = [("L", fmt_rational(l)), ("k", k.to_string())];
        if !ok {
            res.fail(Mismatch::new(&at, ("coeff", fmt_rational(&coeff)), ("a", fmt_rational(expected))));
        }
        if let Some(c) = &closed {
            let cv = c.coeff(k);
            if cv != coeff {
                ok = false;
                res.fail(Mismatch::new(&at, ("coeff", fmt_rational(&coeff)), ("closed", fmt_rational(&cv))));
            }
            row.push(Cell::exact(&cv));
        }
        row.push(Cell::Flag(ok));
        res.rows.push(row);
    }
    res.clone()
}

pub fn cmd_quad(args: &QuadArgs) -> CommandResult {
    let scheme_name = format!("{:?}", args.scheme).to_lowercase();
    let params = vec![
        l_param(&args.l),
        ("moments", args.moments.to_string()),
        ("nodes", args.nodes.to_string()),
        ("tol", format!("{:e}", args.tol)),
        ("scheme", scheme_name),
    ];
    let mut res = CommandResult::new("quad", params, &["n", "quadrature", "exact", "rel_err"]);
    let scheme = match args.scheme {
        QuadScheme::Midpoint => Scheme::ThetaMidpoint,
        QuadScheme::Gauss => Scheme::ThetaGauss,
    };
    let setup = WeightSpec::from_exact(&args.l)
        .and_then(|spec| QuadratureConfig::new(args.nodes, scheme).map(|cfg| (spec, cfg)));
    let (spec, cfg) = match setup {
        Ok(v) => v,
        Err(e) => return res.error(e.to_string()),
    };
    let window = match a_sequence(&args.l, args.moments as usize) {
        Ok(w) => w,
        Err(e) => return res.error(e.to_string()),
    };
    let values = moments_quadrature(&spec, args.moments, &cfg);
    let mut worst = 0.0f64;
    for (n, (q, a)) in values.iter().zip(window.terms()).enumerate() {
        let exact = to_f64(a);
        let rel = ((q - exact) / exact).abs();
        worst = worst.max(rel);
        if rel.is_nan() || rel > args.tol {
            res.fail(Mismatch::new(
                &[("L", fmt_rational(&args.l)), ("n", n.to_string())],
                ("rel_err", format!("{rel:e}")),
                ("tol", format!("{:e}", args.tol)),
            ));
        }
        res.rows.push(vec![Cell::Index(n as u64), Cell::Float(*q), Cell::exact(a), Cell::Sci(rel)]);
    }
    res.extras.push(("max_rel_err".into(), Cell::Sci(worst)));
    res
}

pub fn execute(command: &Command) -> CommandResult {
    let start = Instant::now();
    let mut res = match command {
        Command::Seq(a) => cmd_seq(a),
        Command::Hankel(a) => cmd_hankel(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Recurrence(a) => cmd_recurrence(a),
        Command::Series(a) => cmd_series(a),
        Command::Quad(a) => cmd_quad(a),
    };
    res.elapsed_ms = start.elapsed().as_millis();
    res
}

/// Parses `args`, runs the command and writes its output; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                EXIT_OK
            };
        }
    };
    let res = execute(&cli.command);
    let _ = out.write_all(res.render(cli.format, cli.timing).as_bytes());
    if cli.format == Format::Csv {
        if let Some(m) = &res.mismatch {
            let _ = writeln!(err, "first mismatch: {}", m.describe());
        }
    }
    if let Some(m) = &res.message {
        if cli.format != Format::Plain {
            let _ = writeln!(err, "error: {m}");
        }
    }
    res.exit_code()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_algebra::ratio;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("hankel-catalan").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn column(res: &CommandResult, name: &str) -> Vec<String> {
        let j = res.columns.iter().position(|c| c == name).unwrap();
        res.rows.iter().map(|r| r[j].text()).collect()
    }

    #[test]
    fn l_range_parsing() {
        assert_eq!(parse_l_range("1..3").unwrap().0, [1, 2, 3].map(rat));
        assert_eq!(parse_l_range("5/2, 1..2,1").unwrap().0, vec![ratio(5, 2), rat(1), rat(2)]);
        assert_eq!(parse_l_range("1/2..2").unwrap().0, vec![ratio(1, 2), ratio(3, 2)]);
        assert!(parse_l_range("3..1").is_err());
        assert!(parse_l_range("0..2").is_err());
        assert!(parse_l_range("x").is_err());
    }

    #[test]
    fn seq_rows() {
        let res = cmd_seq(&SeqArgs { l: rat(2), n: 4 });
        assert_eq!(column(&res, "a_n"), ["3", "8", "28", "112", "484"]);
        let res = cmd_seq(&SeqArgs { l: rat(1), n: 0 });
        assert_eq!(column(&res, "a_n"), ["2"]);
        let res = cmd_seq(&SeqArgs { l: ratio(5, 2), n: 1 });
        assert_eq!(column(&res, "a_n"), ["7/2", "45/4"]);
    }

    #[test]
    fn hankel_methods() {
        let res = cmd_hankel(&HankelArgs { l: rat(2), n: 5, method: HankelMethod::All });
        assert_eq!(res.status, Status::Ok);
        assert_eq!(column(&res, "poly").last().unwrap(), "405504");
        let res = cmd_hankel(&HankelArgs { l: rat(4), n: 3, method: HankelMethod::Product });
        assert_eq!(res.columns, ["n", "product"]);
        assert_eq!(column(&res, "product"), ["5", "104", "8704"]);
    }

    #[test]
    fn recurrence_both() {
        let res = cmd_recurrence(&RecurrenceArgs { l: rat(4), n: 3, method: RecurrenceMethod::Both });
        assert_eq!(res.status, Status::Ok);
        assert_eq!(column(&res, "r_prev"), ["-5", "-13/15", "-51/52", "-356/357"]);
        assert_eq!(column(&res, "alpha")[..2], ["24/5", "323/65"]);
        assert_eq!(column(&res, "beta")[..3], ["5", "104/25", "680/169"]);
    }

    #[test]
    fn series_kinds() {
        let res = cmd_series(&SeriesArgs { l: rat(1), terms: Some(4), which: SeriesKind::Rho });
        assert_eq!(column(&res, "coeff"), ["1", "-2", "-2", "-4"]);
        let res = cmd_series(&SeriesArgs { l: rat(2), terms: Some(5), which: SeriesKind::G });
        assert_eq!(res.status, Status::Ok);
        assert_eq!(column(&res, "coeff"), ["3", "8", "28", "112", "484"]);
        assert_eq!(res.extras[0], ("pole".to_string(), Cell::Exact("0".into())));
        let res = cmd_series(&SeriesArgs { l: rat(3), terms: Some(6), which: SeriesKind::F });
        assert_eq!(res.status, Status::Ok);
        assert_eq!(column(&res, "k")[0], "1");
    }

    #[test]
    fn quad_breach_is_a_mismatch() {
        let args = |tol| QuadArgs { l: rat(4), moments: 4, nodes: 16, tol, scheme: QuadScheme::Gauss };
        assert_eq!(cmd_quad(&args(1e-8)).status, Status::Ok);
        let res = cmd_quad(&args(0.0));
        assert!(res.status == Status::Mismatch || res.rows.iter().all(|r| r[3] == Cell::Sci(0.0)));
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["seq", "--L", "2", "--n", "3"]).0, EXIT_OK);
        assert_eq!(run_str(&["seq", "--L", "abc", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["seq", "--L", "-1", "--n", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["hankel", "--L", "2", "--n", "0"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["quad", "--L", "2", "--nodes", "4"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        let (code, out, _) = run_str(&["--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn json_rows_and_summary() {
        let (code, out, _) = run_str(&["--format", "json", "seq", "--L", "2", "--n", "2"]);
        assert_eq!(code, 0);
        let lines: Vec<Value> = out.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
        assert_eq!(lines.len(), 4);
        assert_eq!(lines[2], json!({ "n": 2, "a_n": "28" }));
        assert_eq!(lines[3]["summary"]["status"], "ok");
        assert_eq!(lines[3]["summary"]["params"]["L"], "2");
        assert!(lines[3]["summary"].get("elapsed_ms").is_none());
    }

    #[test]
    fn csv_output() {
        let (_, out, _) = run_str(&["--format", "csv", "seq", "--L", "1", "--n", "2"]);
        assert_eq!(out, "n,a_n\n0,2\n1,3\n2,7\n");
    }
}
