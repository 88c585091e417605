//! Rational generating functions Σ t_n x^n = N(x) / (1 − x − … − x^p).

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::charpoly::IntPolynomial;
use crate::error::{Error, Result};
use crate::seqcore::{Family, SequenceSpec};

/// numerator / denominator, with denominator(0) = 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalGF {
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
}

impl RationalGF {
    pub fn new(numerator: IntPolynomial, denominator: IntPolynomial) -> Result<Self> {
        if !denominator.coeff(0).is_one() {
            return Err(Error::InvalidArgument("denominator constant term must be 1".into()));
        }
        Ok(RationalGF { numerator, denominator })
    }
}

/// Ascending-power rendering: "1 - x - x^2".
fn ascending(p: &IntPolynomial) -> String {
    let mut out = String::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        let sign = if c.is_negative() { "-" } else { "+" };
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(&format!(" {sign} "));
        }
        let coef = if i > 0 && mag.is_one() { String::new() } else { mag.to_string() };
        let var = match i {
            0 => String::new(),
            1 => "x".into(),
            _ => format!("x^{i}"),
        };
        out.push_str(&coef);
        out.push_str(&var);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for RationalGF {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = ascending(&self.numerator);
        if self.numerator.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
            write!(f, "({num})")?;
        } else {
            write!(f, "{num}")?;
        }
        write!(f, " / ({})", ascending(&self.denominator))
    }
}

/// Generating function of a p-sequence (p >= 2): numerator coefficient k is
/// t_k − Σ_{j<k} t_j.
pub fn gf_from_spec(spec: &SequenceSpec) -> Result<RationalGF> {
    if matches!(spec.family(), Family::OneSeq { .. }) {
        return Err(Error::InvalidArgument("1-sequences are not p-sequences".into()));
    }
    let p = spec.order();
    if p < 2 {
        return Err(Error::InvalidOrder { got: p, expected: "p >= 2" });
    }
    let mut prefix = BigInt::zero();
    let numerator = spec
        .seeds()
        .iter()
        .map(|t| {
            let c = t - &prefix;
            prefix += t;
            c
        })
        .collect();
    let mut den = vec![BigInt::one()];
    den.extend(std::iter::repeat_n(-BigInt::one(), p));
    RationalGF::new(IntPolynomial::new(numerator), IntPolynomial::new(den))
}

/// First `count` power-series coefficients, by exact long division.
pub fn series_coeffs(gf: &RationalGF, count: usize) -> Result<Vec<BigInt>> {
    if !gf.denominator.coeff(0).is_one() {
        return Err(Error::InvalidArgument("denominator constant term must be 1".into()));
    }
    let den = gf.denominator.coeffs();
    let mut out: Vec<BigInt> = Vec::with_capacity(count);
    for n in 0..count {
        let mut c = gf.numerator.coeff(n);
        for (k, d) in den.iter().enumerate().skip(1).take(n) {
            c -= d * &out[n - k];
        }
        out.push(c);
    }
    Ok(out)
}
