//! Number-theoretic properties of the golden ratio in exact ℚ(√5) arithmetic,
//! plus the numeric identities for Φ_p (reduction of powers, golden angles,
//! recursion relations).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::charpoly::{dominant_root, golden_polynomial};
use crate::error::{Error, Result};
use crate::seqcore::{fib_lucas, make_family, Family};
use crate::tables;

/// Default partial-quotient budget of [`cf_expand`].
pub const CF_MAX_DEPTH: usize = 64;

/// u + v√5 with rational u, v.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    u: BigRational,
    v: BigRational,
}

impl QuadraticSurd {
    pub fn new(u: BigRational, v: BigRational) -> Self {
        QuadraticSurd { u, v }
    }

    pub fn rational(u: BigRational) -> Self {
        QuadraticSurd { u, v: BigRational::zero() }
    }

    pub fn from_int(n: i64) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    /// Φ = (1 + √5)/2.
    pub fn phi() -> Self {
        let half = BigRational::new(1.into(), 2.into());
        QuadraticSurd { u: half.clone(), v: half }
    }

    /// −φ = (1 − √5)/2, the conjugate of Φ.
    pub fn phi_conjugate() -> Self {
        QuadraticSurd::phi().conjugate()
    }

    pub fn sqrt5() -> Self {
        QuadraticSurd { u: BigRational::zero(), v: BigRational::one() }
    }

    pub fn u(&self) -> &BigRational {
        &self.u
    }

    pub fn v(&self) -> &BigRational {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    /// u − v√5.
    pub fn conjugate(&self) -> Self {
        QuadraticSurd { u: self.u.clone(), v: -&self.v }
    }

    /// u² − 5v².
    pub fn norm(&self) -> BigRational {
        &self.u * &self.u - &self.v * &self.v * BigRational::from_integer(5.into())
    }

    pub fn recip(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        let n = self.norm();
        Ok(QuadraticSurd { u: &self.u / &n, v: -&self.v / &n })
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuadraticSurd::from_int(1);
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        acc
    }

    /// Exact sign of u + v√5.
    pub fn signum(&self) -> Ordering {
        let su = self.u.cmp(&BigRational::zero());
        let sv = self.v.cmp(&BigRational::zero());
        if su == sv || sv == Ordering::Equal {
            return su;
        }
        if su == Ordering::Equal {
            return sv;
        }
        // opposite signs: the larger of u² and 5v² wins
        let uu = &self.u * &self.u;
        let vv = &self.v * &self.v * BigRational::from_integer(5.into());
        match uu.cmp(&vv) {
            Ordering::Greater => su,
            Ordering::Less => sv,
            Ordering::Equal => Ordering::Equal,
        }
    }

    /// Exact floor.
    pub fn floor(&self) -> BigInt {
        // v√5 lies within 1/denom(v) of ±isqrt(5·numer(v)²)/denom(v)
        let (vn, vd) = (self.v.numer(), self.v.denom());
        let s: BigInt = (vn * vn * 5u32).sqrt();
        let approx = BigRational::new(if vn.is_negative() { -s } else { s }, vd.clone());
        let mut m = (&self.u + approx).floor().to_integer();
        let as_surd = |m: &BigInt| QuadraticSurd::rational(BigRational::from_integer(m.clone()));
        while as_surd(&m) > *self {
            m -= 1;
        }
        while as_surd(&(&m + 1)) <= *self {
            m += 1;
        }
        m
    }

    pub fn to_f64(&self) -> f64 {
        let u = self.u.to_f64().unwrap_or(f64::NAN);
        let v = self.v.to_f64().unwrap_or(f64::NAN);
        u + v * 5f64.sqrt()
    }
}

impl PartialOrd for QuadraticSurd {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for QuadraticSurd {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum()
    }
}

impl Add for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn add(self, o: &QuadraticSurd) -> QuadraticSurd {
        QuadraticSurd { u: &self.u + &o.u, v: &self.v + &o.v }
    }
}

impl Sub for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn sub(self, o: &QuadraticSurd) -> QuadraticSurd {
        QuadraticSurd { u: &self.u - &o.u, v: &self.v - &o.v }
    }
}

impl Mul for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn mul(self, o: &QuadraticSurd) -> QuadraticSurd {
        let five = BigRational::from_integer(5.into());
        QuadraticSurd { u: &self.u * &o.u + &self.v * &o.v * five, v: &self.u * &o.v + &self.v * &o.u }
    }
}

impl Neg for &QuadraticSurd {
    type Output = QuadraticSurd;
    fn neg(self) -> QuadraticSurd {
        QuadraticSurd { u: -&self.u, v: -&self.v }
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "{}", self.u);
        }
        let sign = if self.v.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt5", self.u, sign, self.v.abs())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SurdOp {
    Add,
    Sub,
    Mul,
    Div,
    /// a^n; the second operand is ignored.
    Pow(u64),
}

pub fn surd_arith(a: &QuadraticSurd, b: &QuadraticSurd, op: SurdOp) -> Result<QuadraticSurd> {
    Ok(match op {
        SurdOp::Add => a + b,
        SurdOp::Sub => a - b,
        SurdOp::Mul => a * b,
        SurdOp::Div => a * &b.recip()?,
        SurdOp::Pow(n) => a.pow(n),
    })
}

/// Φ^n exactly.
pub fn phi_power_surd(n: u64) -> QuadraticSurd {
    QuadraticSurd::phi().pow(n)
}

/// f_n = (Φ^n − (−φ)^n)/√5, evaluated in ℚ(√5).
pub fn binet(n: u64) -> BigInt {
    let diff = &phi_power_surd(n) - &QuadraticSurd::phi_conjugate().pow(n);
    let q = &diff * &QuadraticSurd::sqrt5().recip().expect("√5 is nonzero");
    debug_assert!(q.v.is_zero() && q.u.is_integer());
    q.u.to_integer()
}

/// Simple continued fraction [head; tail, (periodic)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContinuedFraction {
    pub head: BigInt,
    pub tail: Vec<BigInt>,
    /// Repeating block following the tail.
    pub periodic: Option<Vec<BigInt>>,
    /// False when the depth budget ran out before the expansion ended or a
    /// period was found.
    pub complete: bool,
}

impl ContinuedFraction {
    /// Number of partial quotients, `None` when periodic.
    pub fn len(&self) -> Option<usize> {
        match self.periodic {
            Some(_) => None,
            None => Some(1 + self.tail.len()),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// The first m partial quotients, unrolling the period as needed.
    pub fn quotients(&self, m: usize) -> Vec<BigInt> {
        let mut out = vec![self.head.clone()];
        out.extend(self.tail.iter().cloned());
        if let Some(block) = &self.periodic {
            let mut i = 0;
            while out.len() < m {
                out.push(block[i % block.len()].clone());
                i += 1;
            }
        }
        out.truncate(m);
        out
    }
}

impl fmt::Display for ContinuedFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ");
        let mut parts = Vec::new();
        if !self.tail.is_empty() {
            parts.push(join(&self.tail));
        }
        if let Some(block) = &self.periodic {
            parts.push(format!("({})", join(block)));
        } else if !self.complete {
            parts.push("...".into());
        }
        if parts.is_empty() {
            write!(f, "[{}]", self.head)
        } else {
            write!(f, "[{}; {}]", self.head, parts.join(", "))
        }
    }
}

/// Continued-fraction expansion on exact surd state. A repeated complete
/// quotient marks the period; at most `max_depth` partial quotients are
/// produced otherwise.
pub fn cf_expand(x: &QuadraticSurd, max_depth: usize) -> ContinuedFraction {
    let max_depth = max_depth.max(1);
    let mut seen: HashMap<QuadraticSurd, usize> = HashMap::new();
    let mut quotients: Vec<BigInt> = Vec::new();
    let mut state = x.clone();
    let (period_start, complete) = loop {
        if let Some(&j) = seen.get(&state) {
            break (Some(j), true);
        }
        if quotients.len() == max_depth {
            break (None, false);
        }
        seen.insert(state.clone(), quotients.len());
        let a = state.floor();
        let frac = &state - &QuadraticSurd::rational(BigRational::from_integer(a.clone()));
        quotients.push(a);
        if frac.is_zero() {
            break (None, true);
        }
        state = frac.recip().expect("nonzero fractional part");
    };
    let head = quotients[0].clone();
    match period_start {
        Some(0) => {
            let mut block = quotients[1..].to_vec();
            block.push(head.clone());
            ContinuedFraction { head, tail: Vec::new(), periodic: Some(block), complete }
        }
        Some(j) => ContinuedFraction {
            head,
            tail: quotients[1..j].to_vec(),
            periodic: Some(quotients[j..].to_vec()),
            complete,
        },
        None => ContinuedFraction { head, tail: quotients[1..].to_vec(), periodic: None, complete },
    }
}

/// Finite expansion of a rational.
pub fn cf_of_rational(x: &BigRational) -> ContinuedFraction {
    let (mut n, mut d) = (x.numer().clone(), x.denom().clone());
    let mut quotients = Vec::new();
    while !d.is_zero() {
        let (q, r) = n.div_mod_floor(&d);
        quotients.push(q);
        n = std::mem::replace(&mut d, r);
    }
    ContinuedFraction { head: quotients[0].clone(), tail: quotients[1..].to_vec(), periodic: None, complete: true }
}

/// Value of the first m partial quotients [a_0; …, a_{m−1}].
pub fn convergent(cf: &ContinuedFraction, m: usize) -> Result<BigRational> {
    let available = cf.len().unwrap_or(usize::MAX);
    if m == 0 || m > available {
        return Err(Error::IndexBeyondExpansion { index: m, available: cf.len().unwrap_or(0) });
    }
    let (mut h, mut h_prev) = (BigInt::one(), BigInt::zero());
    let (mut k, mut k_prev) = (BigInt::zero(), BigInt::one());
    for a in cf.quotients(m) {
        let h_next = &a * &h + &h_prev;
        let k_next = &a * &k + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
    }
    Ok(BigRational::new(h, k))
}

/// The expected expansion of Φ^n: [l_n; l_n, …] for odd n and
/// [l_n − 1; 1, l_n − 2, 1, l_n − 2, …] for even n.
pub fn phi_power_cf_pattern(n: u64, m: usize) -> Vec<BigInt> {
    let (_, l) = fib_lucas(n);
    if n % 2 == 1 {
        return vec![l; m];
    }
    let mut v = vec![&l - 1];
    while v.len() < m {
        v.push(if v.len() % 2 == 1 { BigInt::one() } else { &l - 2 });
    }
    v.truncate(m);
    v
}

/// Whether the exact expansion of Φ^n (n >= 1) follows [`phi_power_cf_pattern`]
/// for its first 24 partial quotients.
pub fn cf_pattern_holds(n: u64) -> bool {
    let cf = cf_expand(&phi_power_surd(n), CF_MAX_DEPTH);
    cf.periodic.is_some() && cf.quotients(24) == phi_power_cf_pattern(n, 24)
}

/// Positions n in 1..=n_max at which the convergent of Φ^a fails to equal
/// f_{a(n+1)}/f_{an}; the convergent index is n for odd a and 2n for even a.
pub fn power_convergent_mismatches(a: u64, n_max: u64) -> Vec<u64> {
    let cf = cf_expand(&phi_power_surd(a), CF_MAX_DEPTH);
    (1..=n_max)
        .filter(|&n| {
            let index = if a % 2 == 1 { n } else { 2 * n } as usize;
            let want = BigRational::new(fib_lucas(a * (n + 1)).0, fib_lucas(a * n).0);
            convergent(&cf, index).map_or(true, |c| c != want)
        })
        .collect()
}

/// Φ_p, with Φ_1 = 1.
pub fn golden_ratio(p: usize) -> Result<f64> {
    match p {
        0 => Err(Error::InvalidOrder { got: 0, expected: "p >= 1" }),
        1 => Ok(1.0),
        _ => Ok(dominant_root(&golden_polynomial(p)?)?.to_f64()),
    }
}

/// Φ_p^n = Σ_k coeffs_k Φ_p^k with coeffs_k = t_n[S_k(p)].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiPowerReduction {
    pub p: usize,
    pub n: usize,
    pub coeffs: Vec<BigInt>,
    /// Agreement of the alternative coefficient forms (p = 2 for n >= 2,
    /// p = 3 for n >= 4); `None` where no alternative form applies.
    pub alternate: Option<bool>,
}

impl PhiPowerReduction {
    /// Σ_k coeffs_k x^k.
    pub fn evaluate(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// |Φ_p^n − Σ coeffs_k Φ_p^k| / Φ_p^n.
    pub fn relative_error(&self) -> Result<f64> {
        let phi = golden_ratio(self.p)?;
        let exact = phi.powi(self.n as i32);
        Ok((exact - self.evaluate(phi)).abs() / exact)
    }
}

pub fn phi_power_reduce(p: usize, n: usize) -> Result<PhiPowerReduction> {
    if p < 2 {
        return Err(Error::InvalidOrder { got: p, expected: "p >= 2" });
    }
    let coeffs: Vec<BigInt> =
        (0..p).map(|k| make_family(Family::Kronecker(k), p).map(|s| s.term(n))).collect::<Result<_>>()?;
    let alternate = match (p, n) {
        (2, n) if n >= 2 => {
            let s0 = make_family(Family::Kronecker(0), 2)?;
            let x = make_family(Family::Exponent, 2)?;
            Some(s0.term(n + 1) == coeffs[1] && x.term(n) == coeffs[1] && x.term(n - 1) == coeffs[0])
        }
        (3, n) if n >= 4 => {
            let s = make_family(Family::Syllable, 3)?;
            let x = make_family(Family::Exponent, 3)?;
            Some(s.term(n - 3) == coeffs[2] && x.term(n - 2) == coeffs[1] && s.term(n - 4) == coeffs[0])
        }
        _ => None,
    };
    Ok(PhiPowerReduction { p, n, coeffs, alternate })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AngleUnit {
    Degrees,
    Radians,
}

/// θ_g(p) = 360°/(1 + Φ_p).
pub fn golden_angle(p: usize) -> Result<f64> {
    golden_angle_in(p, AngleUnit::Degrees)
}

pub fn golden_angle_in(p: usize, unit: AngleUnit) -> Result<f64> {
    let full = match unit {
        AngleUnit::Degrees => 360.0,
        AngleUnit::Radians => 2.0 * std::f64::consts::PI,
    };
    Ok(full / (1.0 + golden_ratio(p)?))
}

/// 13/8 + Σ_{n=0}^{N−1} (−1)^{n+1} (2n+1)! / (n! (n+2)! 4^{2n+3}).
pub fn phi_series_partial_exact(terms: usize) -> Result<BigRational> {
    if terms == 0 {
        return Err(Error::InvalidArgument("at least one series term is required".into()));
    }
    let mut sum = BigRational::new(13.into(), 8.into());
    // running (2n+1)!, n!, (n+2)!, 4^{2n+3}
    let (mut f2n1, mut fnn, mut fn2, mut pow4) = (BigInt::one(), BigInt::one(), BigInt::from(2), BigInt::from(64));
    for n in 0..terms {
        if n > 0 {
            f2n1 *= BigInt::from(2 * n) * BigInt::from(2 * n + 1);
            fnn *= n;
            fn2 *= n + 2;
            pow4 *= 16;
        }
        let term = BigRational::new(f2n1.clone(), &fnn * &fn2 * &pow4);
        if n % 2 == 0 {
            sum -= term;
        } else {
            sum += term;
        }
    }
    Ok(sum)
}

pub fn phi_series_partial(terms: usize) -> Result<f64> {
    Ok(phi_series_partial_exact(terms)?.to_f64().unwrap_or(f64::NAN))
}

/// One evaluated identity: |lhs − rhs| = diff.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigCheck {
    pub identity: String,
    pub lhs: f64,
    pub rhs: f64,
    pub diff: f64,
}

impl TrigCheck {
    fn new(identity: String, lhs: f64, rhs: f64) -> Self {
        TrigCheck { identity, lhs, rhs, diff: (lhs - rhs).abs() }
    }
}

/// Angles θ with Φ_p = 1 + 2 sin θ and Φ_p = 2 sin θ, in degrees. As in the
/// printed table, Φ_p is first rounded to five decimals.
pub fn trig_angles(p: usize) -> Result<(f64, f64)> {
    let phi: f64 = match p {
        0 => return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" }),
        1 => 1.0,
        _ => dominant_root(&golden_polynomial(p)?)?.decimal(5).parse().expect("decimal rendering"),
    };
    let minus = ((phi - 1.0) / 2.0).asin().to_degrees();
    let half = (phi / 2.0).min(1.0).asin().to_degrees();
    Ok((minus, half))
}

/// Trigonometric forms of Φ, then both angle columns of the printed
/// Φ_p table (p = 1..20) against recomputed values.
pub fn trig_checks() -> Vec<TrigCheck> {
    let phi = QuadraticSurd::phi().to_f64();
    let s18 = 18f64.to_radians().sin();
    let mut out = vec![
        TrigCheck::new("1 + 2 sin 18deg = Phi".into(), 1.0 + 2.0 * s18, phi),
        TrigCheck::new("2 sin 54deg = Phi".into(), 2.0 * 54f64.to_radians().sin(), phi),
        TrigCheck::new("csc 18deg / 2 = Phi".into(), 0.5 / s18, phi),
    ];
    let table = tables::table("phi").expect("embedded table");
    let (ps, minus, half) = (
        table.parsed::<usize>("p").expect("p column"),
        table.parsed::<f64>("theta_minus").expect("angle column"),
        table.parsed::<f64>("theta_half").expect("angle column"),
    );
    for (i, &p) in ps.iter().enumerate() {
        let (m, h) = trig_angles(p).expect("p >= 1");
        out.push(TrigCheck::new(format!("p={p}: arcsin((Phi_p - 1)/2)"), m, minus[i]));
        out.push(TrigCheck::new(format!("p={p}: arcsin(Phi_p/2)"), h, half[i]));
    }
    out
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * a.abs().max(b.abs())
}

/// Numeric check of the relations satisfied by Φ_p (within relative 1e−10):
/// Φ^p = Σ_{k<p} Φ^k, Φ^{p+1} = 2Φ^p − 1, the two rearranged forms of Φ, and
/// Φ^n = Σ_{k=n−p}^{n−1} Φ^k for p <= n <= n_max.
pub fn recursion_checks(p: usize, n_max: usize) -> Result<bool> {
    if p < 2 {
        return Err(Error::InvalidOrder { got: p, expected: "p >= 2" });
    }
    let phi = golden_ratio(p)?;
    let pw = |k: usize| phi.powi(k as i32);
    let tol = 1e-10;
    let below: f64 = (0..=p - 2).map(pw).sum();
    let mut ok = close(pw(p), (0..p).map(pw).sum(), tol)
        && close(pw(p + 1), 2.0 * pw(p) - 1.0, tol)
        && close(phi, 1.0 + below / pw(p - 1), tol)
        && close(phi, 1.0 + 1.0 / (phi - 1.0 + 1.0 / below), tol);
    for n in p..=n_max {
        ok &= close(pw(n), (n - p..n).map(pw).sum(), tol);
    }
    Ok(ok)
}

/// Fixed-point iteration from 1 until successive iterates differ by less
/// than `tol`; returns the limit and the number of steps.
fn iterate_to_fixed_point(f: impl Fn(f64) -> f64, tol: f64, cap: usize) -> Result<(f64, usize)> {
    let mut x = 1.0;
    for step in 1..=cap {
        let next = f(x);
        if (next - x).abs() < tol {
            return Ok((next, step));
        }
        x = next;
    }
    Err(Error::NoConvergence { iterations: cap, residual: (f(x) - x).abs() })
}

/// Φ = √(1 + √(1 + …)).
pub fn nested_radical_phi(tol: f64) -> Result<(f64, usize)> {
    iterate_to_fixed_point(|x| (1.0 + x).sqrt(), tol, 200)
}

/// Φ = 1 + 1/(1 + 1/(1 + …)).
pub fn cf_fixed_point_phi(tol: f64) -> Result<(f64, usize)> {
    iterate_to_fixed_point(|x| 1.0 + 1.0 / x, tol, 200)
}
