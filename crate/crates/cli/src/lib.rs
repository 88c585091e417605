//! `pseq` command line: every library operation as a subcommand, printing
//! CSV or JSON.

mod output;

use std::io::Write;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;

use pseq::breedsim::{closed_form_a2b2g3, rabbit_rows, recurrence_extract, simulate, BreedConfig};
use pseq::charpoly::{
    all_roots, char_poly, classic_polynomial, classic_ratio, dominant_root, golden_polynomial, limiting_ratio,
    metallic_closed_form, Classic, IntPolynomial, RecurrenceSpec, DEFAULT_ROOT_TOL,
};
use pseq::format_fixed;
use pseq::genfunc::{gf_from_spec, series_coeffs};
use pseq::goldprops::{
    binet, cf_expand, cf_fixed_point_phi, cf_of_rational, cf_pattern_holds, convergent, golden_angle_in, golden_ratio,
    nested_radical_phi, phi_power_cf_pattern, phi_power_reduce, phi_power_surd, phi_series_partial,
    phi_series_partial_exact, power_convergent_mismatches, recursion_checks, surd_arith, trig_checks, AngleUnit,
    ContinuedFraction, QuadraticSurd, SurdOp, CF_MAX_DEPTH,
};
use pseq::qmatrix::{advance_state, cassini, determinantal_identity, mat_pow, q_matrix, q_tilde, Structural};
use pseq::seqcore::{
    composition_classes, compositions_count, fib_lucas, k_decomposition_check, krcadinac_term, make_family,
    one_seq_term, stakhov_binomial, stakhov_term, Family, Krcadinac, SequenceSpec,
};
use pseq::sums::{
    general_sum_forms, odd_even_sum, product_sums, sum_first_n, sum_first_n_one_seq, sum_squares, sum_squares_one_seq,
    triple_range_scan, Parity, ProductForm, SumRange, SumReport,
};
use pseq::tables::{self, CellStatus};

pub use output::{Format, Report};

/// Exit status for success, computation failure and usage error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_COMPUTE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug)]
enum CliError {
    Usage(String),
    Compute(String),
}

impl From<pseq::Error> for CliError {
    fn from(e: pseq::Error) -> Self {
        use pseq::Error::*;
        match e {
            // numerical breakdowns are computation failures; everything else
            // is a violated precondition on user-supplied parameters
            NoSignChange { .. } | NoConvergence { .. } => CliError::Compute(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Inclusive integer range written `a..b`, or a single value `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Span {
    pub lo: usize,
    pub hi: usize,
}

impl Span {
    fn iter(self) -> std::ops::RangeInclusive<usize> {
        self.lo..=self.hi
    }
}

impl FromStr for Span {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("invalid number {t:?} in range {s:?}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
            None => {
                let v = num(s)?;
                (v, v)
            }
        };
        if lo > hi {
            return Err(format!("empty range {s:?}"));
        }
        Ok(Span { lo, hi })
    }
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.lo == self.hi {
            write!(f, "{}", self.lo)
        } else {
            write!(f, "{}..{}", self.lo, self.hi)
        }
    }
}

/// Quadratic surd `u,v` = u + v√5 with rational parts (`3`, `-1/2`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdArg(QuadraticSurd);

impl FromStr for SurdArg {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (u, v) = s.split_once(',').unwrap_or((s, "0"));
        let q = |t: &str| BigRational::from_str(t.trim()).map_err(|_| format!("invalid rational {t:?}"));
        Ok(SurdArg(QuadraticSurd::new(q(u)?, q(v)?)))
    }
}

#[derive(Debug, Clone, Args)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Decimal places for real-valued output.
    #[arg(long, default_value_t = 5, global = true)]
    digits: usize,
}

#[derive(Debug, Parser)]
#[command(name = "pseq", version, about = "Additive p-sequences, golden ratios and related identities")]
struct Cli {
    #[command(flatten)]
    out: OutputArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ParityArg {
    Odd,
    Even,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormArg {
    A,
    B,
    Triple,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RangeArg {
    /// i = 0 ..= n−1
    #[value(name = "0..n-1")]
    ZeroToNMinusOne,
    /// i = 1 ..= n−1
    #[value(name = "1..n-1")]
    OneToNMinusOne,
    /// i = 1 ..= n
    #[value(name = "1..n")]
    OneToN,
}

impl From<RangeArg> for SumRange {
    fn from(r: RangeArg) -> Self {
        match r {
            RangeArg::ZeroToNMinusOne => SumRange::ZeroToNMinusOne,
            RangeArg::OneToNMinusOne => SumRange::OneToNMinusOne,
            RangeArg::OneToN => SumRange::OneToN,
        }
    }
}

fn range_name(r: SumRange) -> &'static str {
    match r {
        SumRange::ZeroToNMinusOne => "0..n-1",
        SumRange::OneToNMinusOne => "1..n-1",
        SumRange::OneToN => "1..n",
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ClassicKind {
    Stakhov,
    Metallic,
    Klower,
    Kupper,
    Wilson,
    CousinA,
    CousinB,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum AngleWhat {
    Golden,
    Trig,
    Series,
    Recursion,
    Radical,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OpArg {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Terms of a sequence. Families: G (with --seeds), C, X, S, K<k>, one,
    /// stakhov, klower, kupper, fib.
    Gen {
        #[arg(long, default_value = "X")]
        family: String,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// Last index.
        #[arg(long, default_value_t = 10)]
        n: usize,
        /// Seeds of a general sequence (sets p).
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seeds: Vec<BigInt>,
        /// 1-sequence start value.
        #[arg(long, default_value = "0")]
        s0: BigInt,
        /// 1-sequence step.
        #[arg(long, default_value = "1")]
        a: BigInt,
        /// Add a column checking the Kronecker-sequence decomposition (G only),
        /// or the binomial form (stakhov).
        #[arg(long)]
        decompose: bool,
    },
    /// Sum of the first n terms of S_X(p) against its closed form.
    Sum {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value = "1..10")]
        n: Span,
        /// Odd- or even-indexed terms only.
        #[arg(long, value_enum)]
        parity: Option<ParityArg>,
        /// Print the four equivalent general forms instead.
        #[arg(long)]
        forms: bool,
        /// Use the 1-sequence s0 + n·a (requires p = 1).
        #[arg(long, num_args = 2, value_names = ["S0", "A"], allow_hyphen_values = true)]
        one: Option<Vec<BigInt>>,
    },
    /// Sum of squares of S_X(p) against its closed form.
    Sumsq {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, default_value = "1..10")]
        n: Span,
        #[arg(long, num_args = 2, value_names = ["S0", "A"], allow_hyphen_values = true)]
        one: Option<Vec<BigInt>>,
    },
    /// Sums of products of consecutive terms.
    Prodsum {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, value_enum, default_value_t = FormArg::A)]
        form: FormArg,
        /// Summation range of the triple form.
        #[arg(long, value_enum, default_value_t = RangeArg::OneToNMinusOne)]
        range: RangeArg,
        #[arg(long, default_value = "1..10")]
        n: Span,
        /// Report, for each range, the n up to this bound where the triple form holds.
        #[arg(long)]
        scan: Option<usize>,
    },
    /// p-golden ratios Φ_p, optionally next to a family's term-ratio limit.
    Ratio {
        #[arg(long, default_value = "2..10")]
        p: Span,
        /// Also iterate t_{n+1}/t_n of this family.
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
    },
    /// All complex roots of a golden, recurrence or explicit polynomial.
    Roots {
        #[arg(long, group = "poly")]
        golden_p: Option<usize>,
        /// Unit-coefficient recurrence lags, e.g. 1,4.
        #[arg(long, group = "poly", value_delimiter = ',')]
        lags: Vec<usize>,
        /// Coefficients, constant term first.
        #[arg(long, group = "poly", value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<BigInt>,
        #[arg(long, default_value_t = DEFAULT_ROOT_TOL)]
        tol: f64,
    },
    /// Classic golden-ratio generalizations.
    Classic {
        #[arg(long, value_enum)]
        kind: ClassicKind,
        /// Order (Meru number for wilson).
        #[arg(long, default_value = "1..5")]
        p: Span,
        /// Second metallic parameter.
        #[arg(long, default_value_t = 1)]
        q: u32,
    },
    /// Φ_p^n as a polynomial of degree < p in Φ_p.
    Reduce {
        #[arg(long, default_value_t = 3)]
        p: usize,
        #[arg(long, default_value = "0..10")]
        n: Span,
    },
    /// Golden angles, trigonometric forms, series and radicals.
    Angle {
        #[arg(long, value_enum, default_value_t = AngleWhat::Golden)]
        what: AngleWhat,
        #[arg(long, default_value = "1..5")]
        p: Span,
        /// Series terms or recursion depth.
        #[arg(long, default_value_t = 30)]
        n: usize,
        #[arg(long)]
        radians: bool,
    },
    /// Continued fraction of a surd u + v√5, a rational, or Φ^n.
    Cf {
        #[arg(long, group = "x", allow_hyphen_values = true)]
        surd: Option<SurdArg>,
        #[arg(long, group = "x", allow_hyphen_values = true)]
        rational: Option<BigRational>,
        #[arg(long, group = "x")]
        phi_power: Option<u64>,
        #[arg(long, default_value_t = CF_MAX_DEPTH)]
        depth: usize,
        /// List convergents 1..=m.
        #[arg(long)]
        convergents: Option<usize>,
        /// Check the Φ^n quotient patterns for n in this range.
        #[arg(long)]
        patterns: Option<Span>,
    },
    /// Binet's formula, or exact surd arithmetic with --op.
    Binet {
        #[arg(long, default_value = "0..20")]
        n: Span,
        #[arg(long, value_enum)]
        op: Option<OpArg>,
        #[arg(long, allow_hyphen_values = true)]
        a: Option<SurdArg>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<SurdArg>,
        /// Exponent for --op pow.
        #[arg(long, default_value_t = 2)]
        k: u64,
    },
    /// Powers of Q_p (or Q̃ from --coeffs) and state advancement.
    Qmat {
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        coeffs: Vec<BigInt>,
        #[arg(long, default_value_t = 1)]
        n: u64,
        /// State vector (t_{p−1}, …, t_0) to advance n steps.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        state: Vec<BigInt>,
    },
    /// f_{n+1} f_{n−1} − f_n².
    Cassini {
        #[arg(long, default_value = "1..10")]
        n: Span,
    },
    /// det(Q_p^n) against (det Q_p)^n, with the entry identification.
    Detid {
        #[arg(long, default_value = "2..4")]
        p: Span,
        #[arg(long, default_value = "1..5")]
        n: Span,
    },
    /// Generating function of a sequence and its series coefficients.
    Gf {
        #[arg(long, default_value = "X")]
        family: String,
        #[arg(long, default_value_t = 2)]
        p: usize,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        seeds: Vec<BigInt>,
        #[arg(long, default_value_t = 16)]
        terms: usize,
    },
    /// Cohort simulation of the generalized breeding problem.
    Breed {
        #[arg(long, default_value_t = 1)]
        alpha: u32,
        #[arg(long, default_value_t = 1)]
        beta: u32,
        #[arg(long)]
        gamma: Option<u32>,
        #[arg(long)]
        delta: Option<u32>,
        #[arg(long, default_value_t = 12)]
        steps: usize,
        #[arg(long)]
        allow_degenerate: bool,
        #[arg(long)]
        include_founder: bool,
        /// Compare with the closed form for β = 2 (requires --gamma).
        #[arg(long)]
        closed_form: bool,
        /// Fit an integer recurrence with lags up to this window.
        #[arg(long)]
        extract: Option<usize>,
        /// The classic rabbit table.
        #[arg(long)]
        rabbit: bool,
    },
    /// Compositions of n into parts of size at most p.
    Compositions {
        #[arg(long, default_value = "1..10")]
        n: Span,
        #[arg(long, default_value_t = 2)]
        p: usize,
        /// List the part-count classes with multiplicities.
        #[arg(long)]
        classes: bool,
    },
    /// Reproduce a printed reference table cell by cell.
    Tables {
        id: Option<String>,
        #[arg(long)]
        list: bool,
        /// Exit 1 if any cell fails (errata excluded).
        #[arg(long)]
        strict: bool,
    },
}

/// Runs the command line `argv` (program name first), writing the payload to
/// `out` and diagnostics to `err`; returns the exit status.
pub fn run(argv: &[String], out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(err, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let strict_fail = matches!(cli.command, Command::Tables { strict: true, .. });
    match execute(cli.command, &cli.out) {
        Ok(report) => {
            if let Err(e) = report.write(cli.out.format, out) {
                let _ = writeln!(err, "error: {e}");
                return EXIT_COMPUTE;
            }
            if strict_fail && report.rows.iter().any(|r| r.last().is_some_and(|s| s == "FAIL")) {
                let _ = writeln!(err, "error: reproduction has failing cells");
                return EXIT_COMPUTE;
            }
            EXIT_OK
        }
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "usage error: {m}");
            EXIT_USAGE
        }
        Err(CliError::Compute(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_COMPUTE
        }
    }
}

fn s(x: impl ToString) -> String {
    x.to_string()
}

fn join(v: &[BigInt]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn parse_family(tag: &str) -> CliResult<Family> {
    Family::parse(tag).ok_or_else(|| usage(format!("unknown family {tag:?} (expected G, C, X, S or K<k>)")))
}

fn spec_from(family: &str, p: usize, seeds: &[BigInt]) -> CliResult<SequenceSpec> {
    let fam = parse_family(family)?;
    if fam == Family::General {
        if seeds.is_empty() {
            return Err(usage("family G needs --seeds"));
        }
        return Ok(SequenceSpec::general(seeds.to_vec())?);
    }
    if !seeds.is_empty() {
        return Err(usage("--seeds applies to family G only"));
    }
    Ok(make_family(fam, p)?)
}

fn sum_rows(rep: &mut Report, n: usize, r: &SumReport) {
    rep.push(vec![s(n), s(&r.naive), s(&r.closed), s(&r.residual), s(&r.remainder), s(r.is_exact())]);
}

const SUM_HEADER: &[&str] = &["n", "naive", "closed", "residual", "remainder", "exact"];

fn execute(cmd: Command, o: &OutputArgs) -> CliResult<Report> {
    let d = o.digits;
    let fx = |x: f64| format_fixed(x, d);
    Ok(match cmd {
        Command::Gen { family, p, n, seeds, s0, a, decompose } => {
            let mut rep;
            match family.as_str() {
                "fib" => {
                    rep = Report::new("gen", &["n", "fibonacci", "lucas"]);
                    for i in 0..=n {
                        let (f, l) = fib_lucas(i as u64);
                        rep.push(vec![s(i), s(f), s(l)]);
                    }
                }
                "one" => {
                    rep = Report::new("gen", &["n", "t"]);
                    rep.param("s0", &s0).param("a", &a);
                    for i in 0..=n {
                        rep.push(vec![s(i), s(one_seq_term(&s0, &a, i))]);
                    }
                }
                "stakhov" => {
                    let h: &[&str] = if decompose { &["n", "t", "binomial"] } else { &["n", "t"] };
                    rep = Report::new("gen", h);
                    rep.param("p", p);
                    for i in 0..=n {
                        let mut row = vec![s(i), s(stakhov_term(p, i))];
                        if decompose {
                            row.push(s(stakhov_binomial(p, i)));
                        }
                        rep.push(row);
                    }
                }
                "klower" | "kupper" => {
                    let v = if family == "klower" { Krcadinac::Lower } else { Krcadinac::Upper };
                    rep = Report::new("gen", &["n", "t"]);
                    rep.param("p", p);
                    for i in 0..=n {
                        rep.push(vec![s(i), s(krcadinac_term(p, v, i)?)]);
                    }
                }
                _ => {
                    let spec = spec_from(&family, p, &seeds)?;
                    if decompose && spec.family() != &Family::General {
                        return Err(usage("--decompose needs family G with --seeds"));
                    }
                    let h: &[&str] = if decompose { &["n", "t", "decomposition_ok"] } else { &["n", "t"] };
                    rep = Report::new("gen", h);
                    rep.param("family", spec.family()).param("p", spec.order()).param("seeds", join(spec.seeds()));
                    for (i, t) in spec.terms(n + 1).into_iter().enumerate() {
                        let mut row = vec![s(i), s(t)];
                        if decompose {
                            row.push(s(k_decomposition_check(spec.seeds(), i)?));
                        }
                        rep.push(row);
                    }
                }
            }
            rep.param("n", n);
            rep
        }
        Command::Sum { p, n, parity, forms, one } => {
            if forms {
                let mut rep = Report::new("sum", &["n", "form1", "form2", "form3", "form4"]);
                rep.param("n", n);
                rep.param("p", p);
                for i in n.iter() {
                    let f = general_sum_forms(p, i)?;
                    rep.push(vec![s(i), s(&f[0]), s(&f[1]), s(&f[2]), s(&f[3])]);
                }
                return Ok(rep);
            }
            let mut rep = Report::new("sum", SUM_HEADER);
            rep.param("n", n);
            rep.param("p", p);
            if let Some(par) = parity {
                let par = if par == ParityArg::Odd { Parity::Odd } else { Parity::Even };
                rep.param("parity", format!("{par:?}").to_lowercase());
                for i in n.iter() {
                    sum_rows(&mut rep, i, &odd_even_sum(p, par, i)?);
                }
            } else if let Some(v) = one {
                if p != 1 {
                    return Err(usage("--one requires --p 1"));
                }
                rep.param("s0", &v[0]).param("a", &v[1]);
                for i in n.iter() {
                    sum_rows(&mut rep, i, &sum_first_n_one_seq(&v[0], &v[1], i));
                }
            } else {
                for i in n.iter() {
                    sum_rows(&mut rep, i, &sum_first_n(p, i)?);
                }
            }
            rep
        }
        Command::Sumsq { p, n, one } => {
            let mut rep = Report::new("sumsq", SUM_HEADER);
            rep.param("n", n);
            rep.param("p", p);
            if let Some(v) = one {
                if p != 1 {
                    return Err(usage("--one requires --p 1"));
                }
                rep.param("s0", &v[0]).param("a", &v[1]);
                for i in n.iter() {
                    sum_rows(&mut rep, i, &sum_squares_one_seq(&v[0], &v[1], i));
                }
            } else {
                for i in n.iter() {
                    sum_rows(&mut rep, i, &sum_squares(p, i)?);
                }
            }
            rep
        }
        Command::Prodsum { p, form, range, n, scan } => {
            if let Some(n_max) = scan {
                let mut rep = Report::new("prodsum", &["range", "exact_at"]);
                rep.param("p", 3).param("scan", n_max);
                for (r, ns) in triple_range_scan(n_max) {
                    let list: Vec<String> = ns.iter().map(|x| x.to_string()).collect();
                    rep.push(vec![range_name(r).into(), list.join(" ")]);
                }
                return Ok(rep);
            }
            let pf = match form {
                FormArg::A => ProductForm::A,
                FormArg::B => ProductForm::B,
                FormArg::Triple => ProductForm::Triple(range.into()),
            };
            let mut rep = Report::new("prodsum", SUM_HEADER);
            rep.param("n", n);
            rep.param("p", p).param("form", format!("{form:?}").to_lowercase());
            if form == FormArg::Triple {
                rep.param("range", range_name(range.into()));
            }
            for i in n.iter() {
                sum_rows(&mut rep, i, &product_sums(p, pf, i)?);
            }
            rep
        }
        Command::Ratio { p, family, tol } => {
            let h: &[&str] = if family.is_some() { &["p", "phi", "limit"] } else { &["p", "phi"] };
            let mut rep = Report::new("ratio", h);
            rep.param("p", p).param("digits", d);
            if let Some(f) = &family {
                rep.param("family", f).param("tol", tol);
            }
            for q in p.iter() {
                let phi = if q == 1 { format_fixed(1.0, d) } else { dominant_root(&golden_polynomial(q)?)?.decimal(d) };
                let mut row = vec![s(q), phi];
                if let Some(f) = &family {
                    row.push(fx(limiting_ratio(&spec_from(f, q, &[])?, tol)?));
                }
                rep.push(row);
            }
            rep
        }
        Command::Roots { golden_p, lags, coeffs, tol } => {
            let (poly, what) = if let Some(p) = golden_p {
                (golden_polynomial(p)?, format!("golden p={p}"))
            } else if !lags.is_empty() {
                let rec = RecurrenceSpec::unit(&lags)?;
                (char_poly(&rec), rec.to_string())
            } else if !coeffs.is_empty() {
                (IntPolynomial::new(coeffs), "coefficients".into())
            } else {
                return Err(usage("roots needs --golden-p, --lags or --coeffs"));
            };
            let set = all_roots(&poly, tol)?;
            let mut rep = Report::new("roots", &["re", "im", "modulus"]);
            rep.param("source", what).param("polynomial", &poly).param("tol", tol);
            rep.param("dominant", set.dominant.as_ref().map_or("none".into(), |r| r.decimal(d)));
            for z in &set.roots {
                rep.push(vec![fx(z.re), fx(z.im), fx(z.norm())]);
            }
            rep
        }
        Command::Classic { kind, p, q } => {
            let metallic = kind == ClassicKind::Metallic;
            let h: &[&str] = if metallic {
                &["p", "polynomial", "dominant", "closed_form"]
            } else {
                &["p", "polynomial", "dominant"]
            };
            let mut rep = Report::new("classic", h);
            rep.param("kind", format!("{kind:?}").to_lowercase()).param("p", p);
            if metallic {
                rep.param("q", q);
            }
            for i in p.iter() {
                let i32_ = u32::try_from(i).map_err(|_| usage("p too large"))?;
                let c = match kind {
                    ClassicKind::Stakhov => Classic::Stakhov(i32_),
                    ClassicKind::Metallic => Classic::Metallic { p: i32_, q },
                    ClassicKind::Klower => Classic::KrcadinacLower(i32_),
                    ClassicKind::Kupper => Classic::KrcadinacUpper(i32_),
                    ClassicKind::Wilson => Classic::Wilson(i32_),
                    ClassicKind::CousinA => Classic::CousinA(i32_),
                    ClassicKind::CousinB => Classic::CousinB(i32_),
                };
                let poly = classic_polynomial(&c)?;
                let set = classic_ratio(&c)?;
                let mut row = vec![s(i), s(&poly), set.dominant.as_ref().map_or("none".into(), |r| r.decimal(d))];
                if metallic {
                    row.push(fx(metallic_closed_form(i32_, q)));
                }
                rep.push(row);
            }
            rep
        }
        Command::Reduce { p, n } => {
            let mut h: Vec<String> = vec!["n".into()];
            h.extend((0..p).map(|k| format!("c{k}")));
            h.extend(["value", "relative_error", "alternate"].map(String::from));
            let hs: Vec<&str> = h.iter().map(String::as_str).collect();
            let mut rep = Report::new("reduce", &hs);
            rep.param("n", n);
            rep.param("p", p);
            for i in n.iter() {
                let r = phi_power_reduce(p, i)?;
                let phi = golden_ratio(p)?;
                let mut row = vec![s(i)];
                row.extend(r.coeffs.iter().map(s));
                row.push(fx(r.evaluate(phi)));
                row.push(format!("{:.3e}", r.relative_error()?));
                row.push(r.alternate.map_or("n/a".into(), s));
                rep.push(row);
            }
            rep
        }
        Command::Angle { what, p, n, radians } => match what {
            AngleWhat::Golden => {
                let unit = if radians { AngleUnit::Radians } else { AngleUnit::Degrees };
                let mut rep = Report::new("angle", &["p", "phi", "angle"]);
                rep.param("p", p);
                rep.param("what", "golden").param("unit", if radians { "radians" } else { "degrees" });
                for i in p.iter() {
                    rep.push(vec![s(i), fx(golden_ratio(i)?), fx(golden_angle_in(i, unit)?)]);
                }
                rep
            }
            AngleWhat::Trig => {
                let mut rep = Report::new("angle", &["identity", "lhs", "rhs", "diff"]);
                rep.param("what", "trig");
                for c in trig_checks() {
                    rep.push(vec![c.identity, fx(c.lhs), fx(c.rhs), format!("{:.3e}", c.diff)]);
                }
                rep
            }
            AngleWhat::Series => {
                let mut rep = Report::new("angle", &["terms", "exact", "value", "phi"]);
                rep.param("what", "series").param("n", n);
                let phi = golden_ratio(2)?;
                for k in 1..=n {
                    rep.push(vec![s(k), s(phi_series_partial_exact(k)?), fx(phi_series_partial(k)?), fx(phi)]);
                }
                rep
            }
            AngleWhat::Recursion => {
                let mut rep = Report::new("angle", &["p", "holds"]);
                rep.param("p", p);
                rep.param("what", "recursion").param("n_max", n);
                for i in p.iter() {
                    rep.push(vec![s(i), s(recursion_checks(i, n)?)]);
                }
                rep
            }
            AngleWhat::Radical => {
                let tol = 10f64.powi(-(d as i32) - 2);
                let mut rep = Report::new("angle", &["method", "value", "iterations"]);
                rep.param("what", "radical").param("tol", tol);
                let (v, k) = nested_radical_phi(tol)?;
                rep.push(vec!["nested_radical".into(), fx(v), s(k)]);
                let (v, k) = cf_fixed_point_phi(tol)?;
                rep.push(vec!["continued_fraction".into(), fx(v), s(k)]);
                rep
            }
        },
        Command::Cf { surd, rational, phi_power, depth, convergents, patterns } => {
            if let Some(span) = patterns {
                let mut rep = Report::new("cf", &["n", "expansion", "pattern", "holds", "convergent_mismatches"]);
                rep.param("patterns", span);
                for i in span.iter() {
                    let cf = cf_expand(&phi_power_surd(i as u64), depth);
                    let pat = phi_power_cf_pattern(i as u64, 6);
                    let bad: Vec<String> =
                        power_convergent_mismatches(i as u64, 12).iter().map(|x| x.to_string()).collect();
                    rep.push(vec![s(i), s(&cf), join(&pat), s(cf_pattern_holds(i as u64)), bad.join(" ")]);
                }
                return Ok(rep);
            }
            let (cf, what): (ContinuedFraction, String) = if let Some(SurdArg(x)) = surd {
                let w = s(&x);
                (cf_expand(&x, depth), w)
            } else if let Some(r) = rational {
                (cf_of_rational(&r), s(&r))
            } else {
                let k = phi_power.unwrap_or(1);
                (cf_expand(&phi_power_surd(k), depth), format!("phi^{k}"))
            };
            if let Some(m) = convergents {
                let mut rep = Report::new("cf", &["m", "numerator", "denominator", "value"]);
                rep.param("x", what).param("expansion", &cf);
                for k in 1..=m {
                    let c = convergent(&cf, k)?;
                    let v = pseq::charpoly::rational_decimal(&c, d);
                    rep.push(vec![s(k), s(c.numer()), s(c.denom()), v]);
                }
                rep
            } else {
                let mut rep = Report::new("cf", &["x", "head", "tail", "period", "complete", "expansion"]);
                rep.param("depth", depth);
                let period = cf.periodic.as_deref().map_or(String::new(), join);
                rep.push(vec![what, s(&cf.head), join(&cf.tail), period, s(cf.complete), s(&cf)]);
                rep
            }
        }
        Command::Binet { n, op, a, b, k } => {
            if let Some(op) = op {
                let a = a.ok_or_else(|| usage("--op needs --a"))?.0;
                let sop = match op {
                    OpArg::Add => SurdOp::Add,
                    OpArg::Sub => SurdOp::Sub,
                    OpArg::Mul => SurdOp::Mul,
                    OpArg::Div => SurdOp::Div,
                    OpArg::Pow => SurdOp::Pow(k),
                };
                let b = match (op, b) {
                    (OpArg::Pow, b) => b.map_or_else(|| QuadraticSurd::from_int(0), |x| x.0),
                    (_, Some(b)) => b.0,
                    _ => return Err(usage("--op needs --b")),
                };
                let r = surd_arith(&a, &b, sop)?;
                let mut rep = Report::new("binet", &["u", "v", "value", "approx"]);
                rep.param("op", format!("{op:?}").to_lowercase()).param("a", &a);
                if op == OpArg::Pow {
                    rep.param("k", k);
                } else {
                    rep.param("b", &b);
                }
                rep.push(vec![s(r.u()), s(r.v()), s(&r), fx(r.to_f64())]);
                return Ok(rep);
            }
            let mut rep = Report::new("binet", &["n", "binet", "phi_power", "fibonacci", "equal"]);
            rep.param("n", n);
            for i in n.iter() {
                let v = binet(i as u64);
                let f = fib_lucas(i as u64).0;
                rep.push(vec![s(i), s(&v), s(phi_power_surd(i as u64)), s(&f), s(v == f)]);
            }
            rep
        }
        Command::Qmat { p, coeffs, n, state } => {
            let m = if coeffs.is_empty() { q_matrix(p)? } else { q_tilde(&coeffs)? };
            let pw = mat_pow(&m, n);
            let mut rep;
            if state.is_empty() {
                let h: Vec<String> = (0..m.order()).map(|j| format!("c{j}")).collect();
                let hs: Vec<&str> = h.iter().map(String::as_str).collect();
                rep = Report::new("qmat", &hs);
                for r in pw.string_rows() {
                    rep.push(r);
                }
            } else {
                rep = Report::new("qmat", &["i", "value"]);
                for (i, v) in advance_state(&m, &state, n)?.into_iter().enumerate() {
                    rep.push(vec![s(i), s(v)]);
                }
                rep.param("state", join(&state));
            }
            rep.param("order", m.order()).param("n", n).param("matrix", &m).param("det", pw.det());
            rep
        }
        Command::Cassini { n } => {
            if n.lo == 0 {
                return Err(usage("cassini needs n >= 1"));
            }
            let mut rep = Report::new("cassini", &["n", "f_next", "f_prev", "f_n", "value"]);
            rep.param("n", n);
            for i in n.iter() {
                let i = i as u64;
                rep.push(vec![s(i), s(fib_lucas(i + 1).0), s(fib_lucas(i - 1).0), s(fib_lucas(i).0), s(cassini(i)?)]);
            }
            rep
        }
        Command::Detid { p, n } => {
            let mut rep = Report::new("detid", &["p", "n", "det_of_power", "expected", "holds", "structural"]);
            rep.param("p", p).param("n", n);
            for pi in p.iter() {
                for ni in n.iter() {
                    let id = determinantal_identity(pi, ni as u64)?;
                    let st = match &id.structural {
                        Structural::Matches => "matches".to_string(),
                        Structural::Mismatch(c) => format!("mismatch {c:?}"),
                        Structural::NotApplicable => "n/a".into(),
                        Structural::Unsupported => "unsupported".into(),
                    };
                    rep.push(vec![s(pi), s(ni), s(&id.det_of_power), s(&id.expected), s(id.holds()), st]);
                }
            }
            rep
        }
        Command::Gf { family, p, seeds, terms } => {
            let spec = spec_from(&family, p, &seeds)?;
            let gf = gf_from_spec(&spec)?;
            let coeffs = series_coeffs(&gf, terms)?;
            let mut rep = Report::new("gf", &["n", "coefficient", "term", "equal"]);
            rep.param("terms", terms);
            rep.param("family", spec.family()).param("p", spec.order()).param("gf", &gf);
            for (i, (c, t)) in coeffs.iter().zip(spec.terms(terms)).enumerate() {
                rep.push(vec![s(i), s(c), s(&t), s(*c == t)]);
            }
            rep
        }
        Command::Breed {
            alpha,
            beta,
            gamma,
            delta,
            steps,
            allow_degenerate,
            include_founder,
            closed_form,
            extract,
            rabbit,
        } => {
            if rabbit {
                let mut rep = Report::new("breed", &["month", "adults", "babies", "total"]);
                rep.param("steps", steps);
                for r in rabbit_rows(steps)? {
                    rep.push(vec![s(r.month), s(r.adults), s(r.babies), s(r.total)]);
                }
                return Ok(rep);
            }
            let cfg = BreedConfig { alpha, beta, gamma, delta, allow_degenerate, include_founder };
            cfg.validate()?;
            let mut rep;
            if let Some(w) = extract {
                rep = Report::new("breed", &["window", "recurrence"]);
                let r = recurrence_extract(&cfg, w)?;
                rep.push(vec![s(w), r.map_or("none".into(), |r| r.to_string())]);
            } else if closed_form {
                if beta != 2 {
                    return Err(usage("--closed-form applies to --beta 2"));
                }
                let g = gamma.ok_or_else(|| usage("--closed-form needs --gamma"))?;
                rep = Report::new("breed", &["n", "closed_form", "simulated", "equal"]);
                for row in simulate(&cfg, steps)? {
                    let c = closed_form_a2b2g3(alpha, g, row.step)?;
                    let eq = c == row.total;
                    rep.push(vec![s(row.step), s(c), s(&row.total), s(eq)]);
                }
            } else {
                rep = Report::new("breed", &["step", "births", "total", "cumulative", "population", "deaths"]);
                for r in simulate(&cfg, steps)? {
                    rep.push(vec![s(r.step), s(r.births), s(r.total), s(r.cumulative), s(r.population), s(r.deaths)]);
                }
            }
            let opt = |x: Option<u32>| x.map_or("none".to_string(), s);
            rep.param("steps", steps)
                .param("alpha", alpha)
                .param("beta", beta)
                .param("gamma", opt(gamma))
                .param("delta", opt(delta));
            rep
        }
        Command::Compositions { n, p, classes } => {
            let mut rep;
            if classes {
                rep = Report::new("compositions", &["n", "counts", "multiplicity", "arrangements"]);
                rep.param("n", n);
                for i in n.iter() {
                    for c in composition_classes(i, p)? {
                        let counts: Vec<String> = c.counts.iter().map(|x| x.to_string()).collect();
                        rep.push(vec![s(i), counts.join(" "), s(&c.multiplicity), c.arrangements.join(" ")]);
                    }
                }
            } else {
                rep = Report::new("compositions", &["n", "count", "syllable_term"]);
                rep.param("n", n);
                let sy = make_family(Family::Syllable, p)?;
                for i in n.iter() {
                    let t = if i == 0 { "-".into() } else { s(sy.term(i - 1)) };
                    rep.push(vec![s(i), s(compositions_count(i, p)?), t]);
                }
            }
            rep.param("p", p);
            rep
        }
        Command::Tables { id, list, strict } => {
            if list || id.is_none() {
                let mut rep = Report::new("tables", &["id", "title"]);
                for i in tables::ids() {
                    rep.push(vec![i.into(), tables::table(i)?.title.into()]);
                }
                return Ok(rep);
            }
            let id = id.expect("checked");
            let cells = tables::reproduce(&id).map_err(|e| usage(e.to_string()))?;
            let mut rep = Report::new("tables", &["row", "column", "expected", "computed", "status"]);
            rep.param("id", &id).param("strict", strict);
            let count = |st: CellStatus| cells.iter().filter(|c| c.status == st).count();
            rep.param("ok", count(CellStatus::Ok))
                .param("erratum", count(CellStatus::Erratum))
                .param("fail", count(CellStatus::Fail));
            for c in cells {
                rep.push(vec![c.row, c.column, c.expected, c.computed, c.status.to_string()]);
            }
            rep
        }
    })
}

/// Every library operation with one invocation that reaches it.
pub const OPERATIONS: &[(&str, &[&str])] = &[
    ("seqcore::make_family", &["gen", "--family", "X", "--p", "3", "--n", "25"]),
    ("seqcore::term", &["gen", "--family", "K1", "--p", "4", "--n", "12"]),
    ("seqcore::one_seq_term", &["gen", "--family", "one", "--s0", "2", "--a", "3", "--n", "6"]),
    ("seqcore::k_decomposition_check", &["gen", "--family", "G", "--seeds", "2,21", "--decompose", "--n", "8"]),
    ("seqcore::compositions_count", &["compositions", "--n", "1..10", "--p", "3"]),
    ("seqcore::stakhov_term", &["gen", "--family", "stakhov", "--p", "2", "--n", "9", "--decompose"]),
    ("seqcore::krcadinac_terms", &["gen", "--family", "klower", "--p", "2", "--n", "10"]),
    ("seqcore::fib_lucas", &["gen", "--family", "fib", "--n", "12"]),
    ("sums::sum_first_n", &["sum", "--p", "3", "--n", "1..8"]),
    ("sums::odd_even_sum", &["sum", "--p", "3", "--parity", "odd", "--n", "1..6"]),
    ("sums::sum_squares", &["sumsq", "--p", "3", "--n", "1..9"]),
    ("sums::product_sums", &["prodsum", "--p", "2", "--form", "a", "--n", "1..6"]),
    ("charpoly::golden_polynomial", &["ratio", "--p", "2..21"]),
    ("charpoly::char_poly", &["roots", "--lags", "1,4"]),
    ("charpoly::all_roots", &["roots", "--golden-p", "5"]),
    ("charpoly::dominant_root", &["ratio", "--p", "2..5", "--digits", "12"]),
    ("charpoly::limiting_ratio", &["ratio", "--p", "2..4", "--family", "S"]),
    ("charpoly::classic_ratio", &["classic", "--kind", "wilson", "--p", "1..9"]),
    ("goldprops::surd_arith", &["binet", "--op", "mul", "--a", "1/2,1/2", "--b", "1/2,-1/2"]),
    ("goldprops::binet", &["binet", "--n", "0..15"]),
    ("goldprops::phi_power_surd", &["binet", "--op", "pow", "--a", "1/2,1/2", "--k", "10"]),
    ("goldprops::cf_expand", &["cf", "--surd", "1/2,1/2"]),
    ("goldprops::convergent", &["cf", "--phi-power", "1", "--convergents", "8"]),
    ("goldprops::phi_power_reduce", &["reduce", "--p", "3", "--n", "0..8"]),
    ("goldprops::golden_angle", &["angle", "--what", "golden", "--p", "1..4"]),
    ("goldprops::phi_series_partial", &["angle", "--what", "series", "--n", "10"]),
    ("goldprops::trig_checks", &["angle", "--what", "trig"]),
    ("goldprops::recursion_checks", &["angle", "--what", "recursion", "--p", "2..4", "--n", "20"]),
    ("qmatrix::q_matrix", &["qmat", "--p", "3", "--n", "5"]),
    ("qmatrix::q_tilde", &["qmat", "--coeffs", "2,0,3", "--n", "3"]),
    ("qmatrix::mat_pow", &["qmat", "--p", "2", "--n", "9"]),
    ("qmatrix::advance_state", &["qmat", "--p", "3", "--state", "1,1,1", "--n", "7"]),
    ("qmatrix::cassini", &["cassini", "--n", "1..10"]),
    ("qmatrix::determinantal_identity", &["detid", "--p", "2..4", "--n", "1..4"]),
    ("genfunc::gf_from_spec", &["gf", "--family", "X", "--p", "3"]),
    ("genfunc::series_coeffs", &["gf", "--family", "G", "--seeds", "2,21", "--terms", "12"]),
    ("breedsim::simulate", &["breed", "--alpha", "2", "--beta", "3", "--gamma", "2", "--steps", "15"]),
    (
        "breedsim::closed_form_a2b2g3",
        &["breed", "--alpha", "2", "--beta", "2", "--gamma", "3", "--closed-form", "--steps", "12"],
    ),
    ("breedsim::recurrence_extract", &["breed", "--alpha", "1", "--beta", "3", "--extract", "5"]),
    ("cli::tables", &["tables", "plimits"]),
];

/// Names of all subcommands.
pub fn subcommands() -> Vec<String> {
    use clap::CommandFactory;
    Cli::command().get_subcommands().map(|c| c.get_name().to_string()).collect()
}
