//! Closed-form sum identities for exponent p-sequences and the 1-sequence,
//! each checked against naive summation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::seqcore::{make_family, one_seq_term, Family};

/// Naive sum, closed form and their difference.
///
/// Closed forms with a denominator are evaluated by floor division; the
/// remainder is kept so that a non-integral right-hand side is never mistaken
/// for agreement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SumReport {
    pub naive: BigInt,
    pub closed: BigInt,
    /// closed − naive.
    pub residual: BigInt,
    /// Remainder of the closed form's division (0 when it divides exactly).
    pub remainder: BigInt,
}

impl SumReport {
    fn new(naive: BigInt, numerator: BigInt, denominator: BigInt) -> Self {
        let (closed, remainder) = numerator.div_mod_floor(&denominator);
        let residual = &closed - &naive;
        SumReport { naive, closed, residual, remainder }
    }

    fn integral(naive: BigInt, closed: BigInt) -> Self {
        Self::new(naive, closed, BigInt::from(1))
    }

    /// True when the closed form equals the naive sum exactly.
    pub fn is_exact(&self) -> bool {
        self.residual.is_zero() && self.remainder.is_zero()
    }
}

/// Exponent-sequence terms with indices reaching below zero by running the
/// recurrence backwards: t_j = t_{j+p} − Σ_{k=j+1}^{j+p−1} t_k.
struct Extended {
    back: usize,
    vals: Vec<BigInt>,
}

impl Extended {
    fn exponent(p: usize, back: usize, upto: usize) -> Result<Self> {
        let fwd = make_family(Family::Exponent, p)?.terms(upto + 1);
        let mut vals = vec![BigInt::zero(); back];
        vals.extend(fwd);
        for j in (0..back).rev() {
            let later: BigInt = vals[j + 1..j + p].iter().sum();
            vals[j] = &vals[j + p] - later;
        }
        Ok(Extended { back, vals })
    }

    fn t(&self, i: isize) -> &BigInt {
        &self.vals[(i + self.back as isize) as usize]
    }
}

fn exponent_terms(p: usize, upto: usize) -> Result<Vec<BigInt>> {
    make_family(Family::Exponent, p)?.terms(upto + 1).into_iter().map(Ok).collect()
}

/// Σ_{k=1}^{n} t_k(Xp) against its closed form, p in 1..=6.
///
/// p = 1 uses the 1-sequence with s0 = 0, a = 1 (see [`sum_first_n_one_seq`]).
/// p = 2, 3, 4 use the dedicated identities; p = 5, 6 use the general
/// (p−1)Σ formula.
pub fn sum_first_n(p: usize, n: usize) -> Result<SumReport> {
    if !(1..=6).contains(&p) {
        return Err(Error::InvalidOrder { got: p, expected: "1..=6" });
    }
    if p == 1 {
        return Ok(sum_first_n_one_seq(&BigInt::zero(), &BigInt::from(1), n));
    }
    let ext = Extended::exponent(p, p, n + p + 2)?;
    let t = |i: isize| ext.t(i).clone();
    let naive: BigInt = (1..=n as isize).map(t).sum();
    let n = n as isize;
    Ok(match p {
        2 => SumReport::integral(naive, t(n + 2) - t(2)),
        3 => SumReport::new(naive, t(n + 2) + t(n) - (t(3) - t(1)), BigInt::from(2)),
        4 => SumReport::new(naive, t(n + 2) + t(n) * 2 + t(n - 1) - (t(3) - t(1)), BigInt::from(3)),
        _ => {
            let forms = general_sum_forms(p, n as usize)?;
            SumReport::new(naive, forms[0].clone(), BigInt::from(p - 1))
        }
    })
}

/// The four printed right-hand sides of (p−1)·Σ_{k=1}^{n} t_k(Xp), p >= 2.
///
/// Forms 1–3 are equal to (p−1)Σ for every n >= 1 (terms with negative index
/// come from the backward-extended recurrence). Form 4 only holds for p = 2.
pub fn general_sum_forms(p: usize, n: usize) -> Result<[BigInt; 4]> {
    if p < 2 {
        return Err(Error::InvalidOrder { got: p, expected: "p >= 2" });
    }
    let ext = Extended::exponent(p, p, n + p + 2)?;
    let t = |i: isize| ext.t(i).clone();
    let (n, pi) = (n as isize, p as isize);
    let constant = t(pi) - (1..=pi - 2).map(|k| t(k) * (pi - 1 - k)).sum::<BigInt>();
    let f1: BigInt = (0..pi).map(|k| t(n - k) * (pi - k)).sum();
    let f2: BigInt = t(n + 1) + (0..=pi - 2).map(|k| t(n - k) * (pi - 1 - k)).sum::<BigInt>();
    let f3: BigInt = t(n + 2) + (0..=pi - 3).map(|k| t(n - k) * (pi - 2 - k)).sum::<BigInt>();
    let f4: BigInt = t(n + pi) + (1..=pi - 2).map(|k| t(n + k) * (pi - 1 - k)).sum::<BigInt>();
    Ok([f1 - &constant, f2 - &constant, f3 - &constant, f4 - &constant])
}

/// Σ_{k=0}^{n} (s0 + k a) against (n+1)(2 s0 + n a)/2.
pub fn sum_first_n_one_seq(s0: &BigInt, a: &BigInt, n: usize) -> SumReport {
    let naive: BigInt = (0..=n).map(|k| one_seq_term(s0, a, k)).sum();
    let nb = BigInt::from(n);
    SumReport::new(naive, (&nb + 1) * (s0 * 2 + &nb * a), BigInt::from(2))
}

/// Odd- or even-indexed terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    Odd,
    Even,
}

/// Σ_{i=1}^{n} t_{2i−1} (odd) or Σ t_{2i} (even) of S_X(p), p in 2..=5,
/// against the printed closed forms.
///
/// The p = 4 and p = 5 forms are reproduced as printed; they agree with the
/// naive sum only at n = 2 and 3, which the residual exposes.
pub fn odd_even_sum(p: usize, parity: Parity, n: usize) -> Result<SumReport> {
    if !(2..=5).contains(&p) {
        return Err(Error::InvalidOrder { got: p, expected: "2..=5" });
    }
    let ext = Extended::exponent(p, p, 2 * n + 2)?;
    let t = |i: isize| ext.t(i).clone();
    let m = n as isize;
    let naive: BigInt = (1..=m)
        .map(|i| match parity {
            Parity::Odd => t(2 * i - 1),
            Parity::Even => t(2 * i),
        })
        .sum();
    let k = 2 * m;
    let (num, den): (BigInt, i64) = match (p, parity) {
        (2, Parity::Odd) => (t(k), 1),
        (3, Parity::Odd) => (t(k) + t(k - 1) - 1, 2),
        (4, Parity::Odd) => (t(k + 1) + t(k - 2) - 2, 3),
        (5, Parity::Odd) => (t(k + 1) + t(k - 1) + t(k - 2) + t(k - 3), 4),
        (2, Parity::Even) => (t(k + 1) - 1, 1),
        (3, Parity::Even) => (t(k + 1) + t(k) - 1, 2),
        (4, Parity::Even) => (t(k) * 3 + t(k - 1) * 2, 3),
        (5, Parity::Even) => (t(k) * 4 + t(k - 1) * 2 + t(k - 2), 4),
        _ => unreachable!("p checked above"),
    };
    Ok(SumReport::new(naive, num, BigInt::from(den)))
}

/// Σ t_k² against its closed form, p in 1..=4.
///
/// p = 1: the 1-sequence s0 = 0, a = 1 (see [`sum_squares_one_seq`]);
/// p = 2: t_n t_{n+1}; p = 3: t_n t_{n+1} − t_{n+1}[S_2(3)]²;
/// p = 4: t_n t_{n+1} − (t_{n+2}[S_3(4)] + t_{n−1}[S_3(4)])², which is not an
/// identity: the residual is the signed correction δ_n.
pub fn sum_squares(p: usize, n: usize) -> Result<SumReport> {
    if !(1..=4).contains(&p) {
        return Err(Error::InvalidOrder { got: p, expected: "1..=4" });
    }
    if p == 1 {
        return Ok(sum_squares_one_seq(&BigInt::zero(), &BigInt::from(1), n));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let t = exponent_terms(p, n + 2)?;
    let naive: BigInt = t[1..=n].iter().map(|x| x * x).sum();
    let product = &t[n] * &t[n + 1];
    let closed = match p {
        2 => product,
        3 => {
            let s = make_family(Family::Kronecker(2), 3)?.term(n + 1);
            product - &s * &s
        }
        _ => {
            let s = make_family(Family::Kronecker(3), 4)?.terms(n + 3);
            let inner = &s[n + 2] + &s[n - 1];
            product - &inner * &inner
        }
    };
    Ok(SumReport::integral(naive, closed))
}

/// Σ_{k=0}^{n} (s0 + k a)² against (n+1)[s0² + n s0 a + n(2n+1)a²/6].
pub fn sum_squares_one_seq(s0: &BigInt, a: &BigInt, n: usize) -> SumReport {
    let naive: BigInt = (0..=n).map(|k| one_seq_term(s0, a, k).pow(2)).sum();
    let nb = BigInt::from(n);
    let inner = s0 * s0 * 6 + &nb * s0 * a * 6 + &nb * (&nb * 2 + 1) * a * a;
    SumReport::new(naive, (&nb + 1) * inner, BigInt::from(6))
}

/// Summation range of the three-product identity for S_X(3).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SumRange {
    /// i = 0 ..= n−1
    ZeroToNMinusOne,
    /// i = 1 ..= n−1 (as printed)
    OneToNMinusOne,
    /// i = 1 ..= n
    OneToN,
}

impl SumRange {
    pub const ALL: [SumRange; 3] = [SumRange::ZeroToNMinusOne, SumRange::OneToNMinusOne, SumRange::OneToN];

    fn bounds(self, n: usize) -> (usize, usize) {
        match self {
            SumRange::ZeroToNMinusOne => (0, n),
            SumRange::OneToNMinusOne => (1, n),
            SumRange::OneToN => (1, n + 1),
        }
    }
}

/// Product-sum identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ProductForm {
    /// p = 2: Σ t_i t_{i+1} = ½(t_{n+2}² − t_n t_{n+1} − t_2²).
    A,
    /// p = 2: Σ t_i t_{i+1} = Σ_j (n+1−j) t_j².
    B,
    /// p = 3: Σ (t_i t_{i+1} + t_{i+1} t_{i+2} + t_{i+2} t_i) over the range
    /// against ½[t_{n+2}(t_{n+2}−1) + t_n(t_n−1) − (t_3−t_1)(t_3+t_1−1)].
    Triple(SumRange),
}

pub fn product_sums(p: usize, form: ProductForm, n: usize) -> Result<SumReport> {
    let t = exponent_terms(p.max(2), n + 3)?;
    match (p, form) {
        (2, ProductForm::A) | (2, ProductForm::B) => {
            let naive: BigInt = (1..=n).map(|i| &t[i] * &t[i + 1]).sum();
            Ok(match form {
                ProductForm::A => {
                    let num = &t[n + 2] * &t[n + 2] - &t[n] * &t[n + 1] - &t[2] * &t[2];
                    SumReport::new(naive, num, BigInt::from(2))
                }
                _ => {
                    let closed: BigInt = (1..=n).map(|j| &t[j] * &t[j] * (n + 1 - j)).sum();
                    SumReport::integral(naive, closed)
                }
            })
        }
        (3, ProductForm::Triple(range)) => {
            let (lo, hi) = range.bounds(n);
            let naive: BigInt = (lo..hi).map(|i| &t[i] * &t[i + 1] + &t[i + 1] * &t[i + 2] + &t[i + 2] * &t[i]).sum();
            let num = &t[n + 2] * (&t[n + 2] - 1) + &t[n] * (&t[n] - 1) - (&t[3] - &t[1]) * (&t[3] + &t[1] - 1);
            Ok(SumReport::new(naive, num, BigInt::from(2)))
        }
        _ => Err(Error::InvalidArgument(format!("product form {form:?} is not defined for p = {p}"))),
    }
}

/// For each summation range, the n in 1..=n_max at which the three-product
/// identity holds exactly.
pub fn triple_range_scan(n_max: usize) -> Vec<(SumRange, Vec<usize>)> {
    SumRange::ALL
        .iter()
        .map(|&range| {
            let exact = (1..=n_max)
                .filter(|&n| product_sums(3, ProductForm::Triple(range), n).map(|r| r.is_exact()).unwrap_or(false))
                .collect();
            (range, exact)
        })
        .collect()
}

/// The summation range that makes the three-product identity hold for every
/// n in 1..=n_max, if any.
pub fn identity_range(n_max: usize) -> Option<SumRange> {
    triple_range_scan(n_max).into_iter().find(|(_, exact)| exact.len() == n_max).map(|(r, _)| r)
}
