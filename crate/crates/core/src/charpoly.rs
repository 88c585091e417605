//! Characteristic polynomials of lagged recurrences, their complex roots,
//! exact dominant roots and the classic golden-ratio generalizations.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::io::{self, Write};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::format_fixed;
use crate::seqcore::{Family, SequenceSpec};

/// Iteration cap of the simultaneous root iteration.
pub const ROOT_ITERATIONS: usize = 1000;
/// Default tolerance of [`all_roots`].
pub const DEFAULT_ROOT_TOL: f64 = 1e-10;
/// Iteration cap of [`limiting_ratio`].
pub const RATIO_ITERATIONS: usize = 10_000;

/// Dense integer polynomial, coefficients in ascending degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    /// Builds a polynomial, trimming trailing zero coefficients.
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// x^n.
    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        IntPolynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Sign-faithful evaluation at a rational a/b: returns P(a/b)·b^deg (b > 0).
    pub fn eval_scaled(&self, x: &BigRational) -> BigInt {
        let (a, b) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut bpow = BigInt::one();
        // Horner in a with the b-powers folded in from the top coefficient down.
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            acc = acc * a + c * &bpow;
            if i > 0 {
                bpow *= b;
            }
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn eval_complex(&self, z: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, c| acc * z + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Integer upper bound on the modulus of every root: 1 + max |c_i / c_deg|.
    pub fn cauchy_bound(&self) -> BigInt {
        let lead = self.coeffs.last().map(|c| c.abs()).unwrap_or_else(BigInt::one);
        let m = self.coeffs[..self.degree()].iter().map(|c| c.abs()).max().unwrap_or_default();
        BigInt::one() + (m + &lead - 1) / lead
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            if show_mag {
                write!(f, "{mag}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "x")?,
                _ => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

/// Recurrence t_n = Σ c_k t_{n - m_k} with distinct positive lags.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceSpec {
    terms: Vec<(BigInt, usize)>,
}

impl RecurrenceSpec {
    pub fn new(mut terms: Vec<(BigInt, usize)>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("a recurrence needs at least one term".into()));
        }
        terms.sort_by_key(|t| t.1);
        for w in terms.windows(2) {
            if w[0].1 == w[1].1 {
                return Err(Error::InvalidArgument(format!("lag {} appears twice", w[0].1)));
            }
        }
        if terms[0].1 == 0 {
            return Err(Error::InvalidArgument("lags must be positive".into()));
        }
        Ok(RecurrenceSpec { terms })
    }

    /// Unit coefficients on the given lags.
    pub fn unit(lags: &[usize]) -> Result<Self> {
        Self::new(lags.iter().map(|&m| (BigInt::one(), m)).collect())
    }

    /// (coefficient, lag) pairs sorted by lag.
    pub fn terms(&self) -> &[(BigInt, usize)] {
        &self.terms
    }

    pub fn max_lag(&self) -> usize {
        self.terms.last().map(|t| t.1).unwrap_or(0)
    }

    /// Next term from the most recent history (history[len-1] = t_{n-1}).
    pub fn apply(&self, history: &[BigInt]) -> Option<BigInt> {
        let mut s = BigInt::zero();
        for (c, m) in &self.terms {
            s += c * history.get(history.len().checked_sub(*m)?)?;
        }
        Some(s)
    }
}

impl fmt::Display for RecurrenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "t_n =")?;
        for (i, (c, m)) in self.terms.iter().enumerate() {
            let sep = if i == 0 { " " } else { " + " };
            if c.is_one() {
                write!(f, "{sep}t_{{n-{m}}}")?;
            } else {
                write!(f, "{sep}{c}*t_{{n-{m}}}")?;
            }
        }
        Ok(())
    }
}

/// Golden equation x^p − Σ_{k<p} x^k.
pub fn golden_polynomial(p: usize) -> Result<IntPolynomial> {
    if p == 0 {
        return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" });
    }
    let mut c = vec![-BigInt::one(); p];
    c.push(BigInt::one());
    Ok(IntPolynomial::new(c))
}

/// x^m − Σ c_k x^{m − m_k}, m the largest lag.
pub fn char_poly(rec: &RecurrenceSpec) -> IntPolynomial {
    let m = rec.max_lag();
    let mut c = vec![BigInt::zero(); m + 1];
    c[m] = BigInt::one();
    for (ck, mk) in rec.terms() {
        c[m - mk] -= ck;
    }
    IntPolynomial::new(c)
}

/// Exact bracket [lo, hi] around a real root, of width below 1e-12.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominantRoot {
    lo: BigRational,
    hi: BigRational,
}

impl DominantRoot {
    pub fn lower(&self) -> &BigRational {
        &self.lo
    }

    pub fn upper(&self) -> &BigRational {
        &self.hi
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width_f64(&self) -> f64 {
        (&self.hi - &self.lo).to_f64().unwrap_or(f64::NAN)
    }

    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64().unwrap_or(f64::NAN)
    }

    /// Midpoint rounded half-up to `digits` decimals (meaningful up to 11 digits).
    pub fn decimal(&self, digits: usize) -> String {
        rational_decimal(&self.midpoint(), digits)
    }
}

impl fmt::Display for DominantRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal(12))
    }
}

/// Decimal string of a rational rounded half-up (away from zero) to `digits` places.
pub fn rational_decimal(x: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = x.abs() * BigRational::from_integer(scale.clone());
    let rounded = (scaled + BigRational::new(BigInt::one(), BigInt::from(2))).floor().to_integer();
    let int_part = &rounded / &scale;
    let frac = (&rounded % &scale).to_string();
    let sign = if x.is_negative() && !rounded.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac:0>digits$}")
    }
}

fn sign_at(poly: &IntPolynomial, x: &BigRational) -> Ordering {
    poly.eval_scaled(x).cmp(&BigInt::zero())
}

/// Exact bisection on [lo, hi]; the endpoints must have opposite signs (or be roots).
pub fn dominant_root_in(poly: &IntPolynomial, lo: &BigRational, hi: &BigRational) -> Result<DominantRoot> {
    let mut lo = lo.clone();
    let mut hi = hi.clone();
    let s_lo = sign_at(poly, &lo);
    let s_hi = sign_at(poly, &hi);
    if s_lo == Ordering::Equal {
        return Ok(DominantRoot { lo: lo.clone(), hi: lo });
    }
    if s_hi == Ordering::Equal {
        return Ok(DominantRoot { lo: hi.clone(), hi });
    }
    if s_lo == s_hi {
        return Err(Error::NoSignChange { lo: lo.to_string(), hi: hi.to_string() });
    }
    let width = BigRational::new(BigInt::one(), BigInt::from(10).pow(12));
    while &hi - &lo >= width {
        let mid = (&lo + &hi) / BigInt::from(2);
        match sign_at(poly, &mid) {
            Ordering::Equal => return Ok(DominantRoot { lo: mid.clone(), hi: mid }),
            s if s == s_lo => lo = mid,
            _ => hi = mid,
        }
    }
    Ok(DominantRoot { lo, hi })
}

/// Root of a golden-family polynomial, bracketed in [1, 2].
pub fn dominant_root(poly: &IntPolynomial) -> Result<DominantRoot> {
    dominant_root_in(poly, &BigRational::from_integer(1.into()), &BigRational::from_integer(2.into()))
}

/// Roots of a polynomial with their largest residual.
#[derive(Debug, Clone, PartialEq)]
pub struct RootSet {
    pub roots: Vec<Complex64>,
    /// The unique positive real root, exactly bracketed, when there is one.
    pub dominant: Option<DominantRoot>,
    /// Largest |P(r)| over the reported roots.
    pub residual_bound: f64,
}

impl RootSet {
    /// Writes `re,im,modulus` rows with fixed decimals.
    pub fn write_csv<W: Write>(&self, out: &mut W, digits: usize) -> io::Result<()> {
        writeln!(out, "re,im,modulus")?;
        for z in &self.roots {
            writeln!(
                out,
                "{},{},{}",
                format_fixed(z.re, digits),
                format_fixed(z.im, digits),
                format_fixed(z.norm(), digits)
            )?;
        }
        Ok(())
    }
}

/// Backward-error residual |P(z)| / Σ|c_i||z|^i.
fn relative_residual(coeffs: &[f64], z: Complex64) -> (f64, f64) {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    let r = z.norm();
    for &c in coeffs.iter().rev() {
        value = value * z + c;
        scale = scale * r + c.abs();
    }
    let abs = value.norm();
    (abs, if scale > 0.0 { abs / scale } else { abs })
}

/// All complex roots by simultaneous (Durand–Kerner) iteration.
///
/// Converged when every root's backward error |P(z)| / Σ|c_i||z|^i is below `tol`.
pub fn all_roots(poly: &IntPolynomial, tol: f64) -> Result<RootSet> {
    if poly.degree() == 0 {
        return Err(Error::InvalidArgument("polynomial must have degree >= 1".into()));
    }
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    // Zero roots are known exactly; iterate only on the remaining factor.
    let zeros = poly.coeffs().iter().take_while(|c| c.is_zero()).count();
    let reduced = &poly.coeffs()[zeros..];
    let d = reduced.len() - 1;
    let lead = reduced[d].to_f64().unwrap_or(f64::NAN);
    let monic: Vec<f64> = reduced.iter().map(|c| c.to_f64().unwrap_or(f64::NAN) / lead).collect();
    let radius = 1.0 + monic[..d].iter().map(|c| c.abs()).fold(0.0, f64::max);
    // Irrational offset keeps the start off any symmetry axis of a real polynomial.
    let offset = 0.5 * std::f64::consts::SQRT_2;
    let mut z: Vec<Complex64> =
        (0..d).map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / d as f64 + offset)).collect();

    let mut worst = f64::INFINITY;
    for _ in 0..ROOT_ITERATIONS {
        worst = z.iter().map(|&zi| relative_residual(&monic, zi).1).fold(0.0, f64::max);
        if worst < tol {
            break;
        }
        for i in 0..d {
            let zi = z[i];
            let num = monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * zi + c);
            let mut den = Complex64::new(1.0, 0.0);
            for (j, &zj) in z.iter().enumerate() {
                if j != i {
                    den *= zi - zj;
                }
            }
            if den.norm() > 0.0 {
                z[i] = zi - num / den;
            }
        }
    }
    if worst.is_nan() || worst >= tol {
        return Err(Error::NoConvergence { iterations: ROOT_ITERATIONS, residual: worst });
    }
    z.extend(std::iter::repeat_n(Complex64::new(0.0, 0.0), zeros));
    z.sort_by(|a, b| {
        b.norm()
            .partial_cmp(&a.norm())
            .unwrap_or(Ordering::Equal)
            .then(b.im.partial_cmp(&a.im).unwrap_or(Ordering::Equal))
    });
    let residual_bound = z.iter().map(|&zi| poly.eval_complex(zi).norm()).fold(0.0, f64::max);
    let dominant = positive_root(poly, &z);
    Ok(RootSet { roots: z, dominant, residual_bound })
}

fn is_real(z: &Complex64) -> bool {
    z.im.abs() <= 1e-7 * (1.0 + z.re.abs())
}

/// Exact bracket of the unique positive real root, if the numeric roots show exactly one.
fn positive_root(poly: &IntPolynomial, roots: &[Complex64]) -> Option<DominantRoot> {
    let positive: Vec<f64> = roots.iter().filter(|z| is_real(z) && z.re > 0.0).map(|z| z.re).collect();
    if positive.len() != 1 {
        return None;
    }
    let zero = BigRational::zero();
    let bound = BigRational::from_integer(poly.cauchy_bound());
    if let Ok(d) = dominant_root_in(poly, &zero, &bound) {
        if !d.lower().is_zero() || !d.is_exact() {
            return Some(d);
        }
    }
    let r = positive[0];
    let delta = 1e-6 * r.max(1.0);
    let lo = BigRational::from_float(r - delta)?;
    let hi = BigRational::from_float(r + delta)?;
    dominant_root_in(poly, &lo, &hi).ok()
}

/// Limit of t_{n+1}/t_n.
///
/// Ratios are taken by scaled integer division (15 fractional digits). The
/// iteration stops once p consecutive ratio steps all move by less than `tol`
/// and the transient of the first 2p terms has passed, so coincidentally equal
/// early ratios (e.g. 6/3 = 12/6 in the exponent 4-sequence) do not stop it.
pub fn limiting_ratio(spec: &SequenceSpec, tol: f64) -> Result<f64> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    let seeds = spec.seeds();
    let one_seq = matches!(spec.family(), Family::OneSeq { .. });
    if seeds.iter().any(|s| s.is_negative()) || (!one_seq && seeds.iter().all(|s| s.is_zero())) {
        return Err(Error::InvalidArgument("seeds must be non-negative and not all zero".into()));
    }
    let p = spec.order();
    let scale = BigInt::from(10).pow(15);
    let mut terms = spec.iter();
    let mut prev_term = terms.next().unwrap_or_default();
    let mut prev_ratio: Option<f64> = None;
    let mut stable = 0usize;
    for n in 1..=RATIO_ITERATIONS {
        let t = terms.next().unwrap_or_default();
        if !prev_term.is_zero() {
            let q = (&t * &scale) / &prev_term;
            let r = q.to_f64().unwrap_or(f64::NAN) / 1e15;
            if let Some(pr) = prev_ratio {
                stable = if (r - pr).abs() < tol { stable + 1 } else { 0 };
                if stable >= p && n > 2 * p {
                    return Ok(r);
                }
            }
            prev_ratio = Some(r);
        }
        prev_term = t;
    }
    Err(Error::NoConvergence { iterations: RATIO_ITERATIONS, residual: f64::NAN })
}

/// Classic generalizations of the golden ratio.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Classic {
    /// Golden p-proportion: x^{p+1} = x^p + 1.
    Stakhov(u32),
    /// Metallic mean: x^2 = p x + q.
    Metallic { p: u32, q: u32 },
    /// x^{p+1} = x + 1.
    KrcadinacLower(u32),
    /// x (x − 1)^p = 1.
    KrcadinacUpper(u32),
    /// Meru 1..9.
    Wilson(u32),
    /// x^p = Σ_{k<p} (−1)^{p−1−k} x^k.
    CousinA(u32),
    /// x^p = −Σ_{k<p} x^k.
    CousinB(u32),
}

/// Lag pairs of Meru 1..9.
pub const WILSON_LAGS: [(usize, usize); 9] = [(1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (2, 5), (3, 5), (4, 5)];

pub fn wilson_recurrence(meru: u32) -> Result<RecurrenceSpec> {
    let idx = (meru as usize).checked_sub(1).filter(|&i| i < WILSON_LAGS.len()).ok_or(Error::UnknownMeru(meru))?;
    let (a, b) = WILSON_LAGS[idx];
    RecurrenceSpec::unit(&[a, b])
}

pub fn classic_polynomial(kind: &Classic) -> Result<IntPolynomial> {
    let big = |v: i64| BigInt::from(v);
    Ok(match *kind {
        Classic::Stakhov(p) => {
            let p = p as usize;
            let mut c = vec![BigInt::zero(); p + 2];
            c[p + 1] += 1;
            c[p] -= 1;
            c[0] -= 1;
            IntPolynomial::new(c)
        }
        Classic::Metallic { p, q } => {
            if p == 0 && q == 0 {
                return Err(Error::InvalidArgument("metallic mean needs p >= 1 or q >= 1".into()));
            }
            IntPolynomial::new(vec![-big(q.into()), -big(p.into()), big(1)])
        }
        Classic::KrcadinacLower(p) => {
            if p == 0 {
                return Err(Error::InvalidOrder { got: 0, expected: "p >= 1 for the lower ratio" });
            }
            let mut c = vec![BigInt::zero(); p as usize + 2];
            c[p as usize + 1] += 1;
            c[1] -= 1;
            c[0] -= 1;
            IntPolynomial::new(c)
        }
        Classic::KrcadinacUpper(p) => {
            // x (x − 1)^p − 1 = Σ_k C(p,k) (−1)^{p−k} x^{k+1} − 1
            let p = p as usize;
            let mut c = vec![BigInt::zero(); p + 2];
            for k in 0..=p {
                let b = binomial(BigInt::from(p), BigInt::from(k));
                c[k + 1] = if (p - k).is_multiple_of(2) { b } else { -b };
            }
            c[0] -= 1;
            IntPolynomial::new(c)
        }
        Classic::Wilson(m) => char_poly(&wilson_recurrence(m)?),
        Classic::CousinA(p) => {
            let p = p as usize;
            if p == 0 {
                return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" });
            }
            let mut c: Vec<BigInt> =
                (0..p).map(|k| if (p - 1 - k).is_multiple_of(2) { big(-1) } else { big(1) }).collect();
            c.push(big(1));
            IntPolynomial::new(c)
        }
        Classic::CousinB(p) => {
            if p == 0 {
                return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" });
            }
            IntPolynomial::new(vec![big(1); p as usize + 1])
        }
    })
}

/// Roots of the classic polynomial, with the positive root bracketed exactly.
pub fn classic_ratio(kind: &Classic) -> Result<RootSet> {
    all_roots(&classic_polynomial(kind)?, DEFAULT_ROOT_TOL)
}

/// (p + √(p² + 4q)) / 2.
pub fn metallic_closed_form(p: u32, q: u32) -> f64 {
    let (p, q) = (p as f64, q as f64);
    (p + (p * p + 4.0 * q).sqrt()) / 2.0
}
