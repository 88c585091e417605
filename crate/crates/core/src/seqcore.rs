//! Additive p-sequences: t_n is the sum of the p previous terms.

use std::fmt;
use std::sync::RwLock;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Largest n accepted by the brute-force composition enumerator.
pub const COMPOSITION_BOUND: usize = 25;

/// Seed family of a p-sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    /// Caller-supplied seeds.
    General,
    /// Kronecker-delta seeds, s_i = [i = k].
    Kronecker(usize),
    /// All-ones seeds.
    Coefficient,
    /// Seeds (0, 1, ..., p-1).
    Exponent,
    /// Seeds (1, 2, ..., 2^(p-1)).
    Syllable,
    /// The 1-sequence s0 + n*a.
    OneSeq { a: BigInt },
}

impl Family {
    /// Parses the short tags used on the command line: `G`, `K<k>`, `C`, `X`, `S`.
    pub fn parse(tag: &str) -> Option<Family> {
        match tag {
            "G" | "general" => Some(Family::General),
            "C" | "coefficient" => Some(Family::Coefficient),
            "X" | "exponent" => Some(Family::Exponent),
            "S" | "syllable" => Some(Family::Syllable),
            _ => {
                let k = tag.strip_prefix('K').or_else(|| tag.strip_prefix('k'))?;
                k.parse().ok().map(Family::Kronecker)
            }
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::General => write!(f, "G"),
            Family::Kronecker(k) => write!(f, "K{k}"),
            Family::Coefficient => write!(f, "C"),
            Family::Exponent => write!(f, "X"),
            Family::Syllable => write!(f, "S"),
            Family::OneSeq { a } => write!(f, "one(a={a})"),
        }
    }
}

/// One additive sequence: order, seeds and family tag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceSpec {
    seeds: Vec<BigInt>,
    family: Family,
}

impl SequenceSpec {
    /// A general p-sequence; p is the number of seeds.
    pub fn general(seeds: Vec<BigInt>) -> Result<Self> {
        if seeds.is_empty() {
            return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" });
        }
        Ok(SequenceSpec { seeds, family: Family::General })
    }

    /// The 1-sequence s0, s0 + a, s0 + 2a, ...
    pub fn one_seq(s0: BigInt, a: BigInt) -> Result<Self> {
        if a.is_negative() {
            return Err(Error::InvalidArgument(format!("increment a = {a} must be non-negative")));
        }
        Ok(SequenceSpec { seeds: vec![s0], family: Family::OneSeq { a } })
    }

    pub fn order(&self) -> usize {
        self.seeds.len()
    }

    pub fn seeds(&self) -> &[BigInt] {
        &self.seeds
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    /// t_n, computed with a sliding window.
    pub fn term(&self, n: usize) -> BigInt {
        if let Family::OneSeq { a } = &self.family {
            return &self.seeds[0] + a * BigInt::from(n);
        }
        let p = self.order();
        if n < p {
            return self.seeds[n].clone();
        }
        let mut window: Vec<BigInt> = self.seeds.clone();
        let mut sum: BigInt = window.iter().sum();
        let mut head = 0;
        for _ in p..n {
            let next = sum.clone();
            sum = &sum * 2 - &window[head];
            window[head] = next;
            head = (head + 1) % p;
        }
        sum
    }

    /// t_0 .. t_{count-1}.
    pub fn terms(&self, count: usize) -> Vec<BigInt> {
        self.iter().take(count).collect()
    }

    pub fn iter(&self) -> Terms<'_> {
        Terms { spec: self, window: Vec::new(), n: 0 }
    }
}

/// Sequential term iterator.
pub struct Terms<'a> {
    spec: &'a SequenceSpec,
    window: Vec<BigInt>,
    n: usize,
}

impl Iterator for Terms<'_> {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        let spec = self.spec;
        let value = match &spec.family {
            Family::OneSeq { a } => &spec.seeds[0] + a * BigInt::from(self.n),
            _ => {
                let p = spec.order();
                let v = if self.n < p { spec.seeds[self.n].clone() } else { self.window.iter().sum() };
                if self.window.len() == p {
                    self.window.remove(0);
                }
                self.window.push(v.clone());
                v
            }
        };
        self.n += 1;
        Some(value)
    }
}

/// Random-access view of a sequence with a shared, growable cache.
pub struct MemoSequence {
    spec: SequenceSpec,
    cache: RwLock<Vec<BigInt>>,
}

impl MemoSequence {
    pub fn new(spec: SequenceSpec) -> Self {
        MemoSequence { spec, cache: RwLock::new(Vec::new()) }
    }

    pub fn spec(&self) -> &SequenceSpec {
        &self.spec
    }

    pub fn term(&self, n: usize) -> BigInt {
        if let Some(t) = self.cache.read().expect("cache lock").get(n) {
            return t.clone();
        }
        let mut cache = self.cache.write().expect("cache lock");
        if cache.len() <= n {
            *cache = self.spec.terms(n + 1);
        }
        cache[n].clone()
    }
}

/// Builds a spec with the canonical seeds of `family`.
pub fn make_family(family: Family, p: usize) -> Result<SequenceSpec> {
    if p == 0 {
        return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" });
    }
    let seeds: Vec<BigInt> = match &family {
        Family::General => return Err(Error::InvalidArgument("general family needs explicit seeds".into())),
        Family::OneSeq { .. } => {
            return Err(Error::InvalidArgument("use SequenceSpec::one_seq for the 1-sequence".into()))
        }
        Family::Kronecker(k) => {
            if *k >= p {
                return Err(Error::KOutOfRange { k: *k, p });
            }
            (0..p).map(|i| BigInt::from(u8::from(i == *k))).collect()
        }
        Family::Coefficient => vec![BigInt::one(); p],
        Family::Exponent => (0..p).map(BigInt::from).collect(),
        Family::Syllable => (0..p).map(|i| BigInt::one() << i).collect(),
    };
    Ok(SequenceSpec { seeds, family })
}

/// t_n of `spec`.
pub fn term(spec: &SequenceSpec, n: usize) -> BigInt {
    spec.term(n)
}

/// s0 + n*a.
pub fn one_seq_term(s0: &BigInt, a: &BigInt, n: usize) -> BigInt {
    s0 + a * BigInt::from(n)
}

/// Checks t_n[S_G] = Σ_k t_n[S_k]·s_k and t_n[S_C] = Σ_k t_n[S_k].
pub fn k_decomposition_check(seeds: &[BigInt], n: usize) -> Result<bool> {
    let p = seeds.len();
    let general = SequenceSpec::general(seeds.to_vec())?.term(n);
    let mut weighted = BigInt::zero();
    let mut plain = BigInt::zero();
    for (k, s) in seeds.iter().enumerate() {
        let tk = make_family(Family::Kronecker(k), p)?.term(n);
        weighted += &tk * s;
        plain += tk;
    }
    let coefficient = make_family(Family::Coefficient, p)?.term(n);
    Ok(general == weighted && coefficient == plain)
}

/// One multiset of parts in a composition count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompositionClass {
    /// counts[k-1] = n_k, the number of parts equal to k.
    pub counts: Vec<usize>,
    /// (Σ n_k)! / Π n_k!
    pub multiplicity: BigInt,
    /// Every ordering, e.g. "121", in lexicographic order.
    pub arrangements: Vec<String>,
}

fn check_composition_args(n: usize, p: usize) -> Result<()> {
    if p == 0 {
        return Err(Error::InvalidOrder { got: 0, expected: "p >= 1" });
    }
    if n == 0 || n > COMPOSITION_BOUND {
        return Err(Error::InvalidArgument(format!("n = {n} outside the enumeration range 1..={COMPOSITION_BOUND}")));
    }
    Ok(())
}

fn enumerate(rest: usize, p: usize, prefix: &mut Vec<usize>, visit: &mut dyn FnMut(&[usize])) {
    if rest == 0 {
        visit(prefix);
        return;
    }
    for part in 1..=p.min(rest) {
        prefix.push(part);
        enumerate(rest - part, p, prefix, visit);
        prefix.pop();
    }
}

/// Number of ordered compositions of n into parts from {1..p}, by enumeration.
pub fn compositions_count(n: usize, p: usize) -> Result<BigInt> {
    check_composition_args(n, p)?;
    let mut count: u64 = 0;
    enumerate(n, p, &mut Vec::with_capacity(n), &mut |_| count += 1);
    Ok(BigInt::from(count))
}

/// Compositions of n grouped by part multiset, ordered by decreasing count of 1s
/// (then 2s, ...), as laid out in the syllable table.
pub fn composition_classes(n: usize, p: usize) -> Result<Vec<CompositionClass>> {
    check_composition_args(n, p)?;
    let mut classes: Vec<CompositionClass> = Vec::new();
    enumerate(n, p, &mut Vec::with_capacity(n), &mut |parts| {
        let mut counts = vec![0usize; p];
        for &part in parts {
            counts[part - 1] += 1;
        }
        let word: String = parts.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("");
        match classes.iter_mut().find(|c| c.counts == counts) {
            Some(c) => c.arrangements.push(word),
            None => {
                classes.push(CompositionClass { multiplicity: multiplicity(&counts), counts, arrangements: vec![word] })
            }
        }
    });
    classes.sort_by(|a, b| b.counts.cmp(&a.counts));
    for c in &mut classes {
        c.arrangements.sort();
    }
    Ok(classes)
}

/// Multinomial (Σ n_k)! / Π n_k!.
pub fn multiplicity(counts: &[usize]) -> BigInt {
    let mut total = 0usize;
    let mut m = BigInt::one();
    for &c in counts {
        total += c;
        m *= binomial(BigInt::from(total), BigInt::from(c));
    }
    m
}

/// Fibonacci p-number f_n(p): f_k = 1 for k <= p, f_n = f_{n-1} + f_{n-(p+1)}.
pub fn stakhov_term(p: usize, n: usize) -> BigInt {
    let mut f: Vec<BigInt> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let v = if k <= p { BigInt::one() } else { &f[k - 1] + &f[k - p - 1] };
        f.push(v);
    }
    f.swap_remove(n)
}

/// Σ_k C(n - kp, k). Equals f_n(p) (the table index, one below the textbook f_{n+1}).
pub fn stakhov_binomial(p: usize, n: usize) -> BigInt {
    let mut sum = BigInt::zero();
    let mut k = 0usize;
    while k * p <= n && k <= n - k * p {
        sum += binomial(BigInt::from(n - k * p), BigInt::from(k));
        k += 1;
    }
    sum
}

/// Lower or upper Krcadinac recurrence.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Krcadinac {
    /// f_n = f_{n-p} + f_{n-(p+1)}.
    Lower,
    /// F_n = Σ_{k=1}^{p} C(p,k)(-1)^{k+1} F_{n-k} + F_{n-(p+1)}.
    Upper,
}

/// Krcadinac sequence term with all-ones seeds (p + 1 of them).
pub fn krcadinac_term(p: usize, variant: Krcadinac, n: usize) -> Result<BigInt> {
    if variant == Krcadinac::Lower && p == 0 {
        return Err(Error::InvalidOrder { got: 0, expected: "p >= 1 for the lower recurrence" });
    }
    let weights: Vec<BigInt> = (1..=p)
        .map(|k| {
            let c = binomial(BigInt::from(p), BigInt::from(k));
            if k % 2 == 1 {
                c
            } else {
                -c
            }
        })
        .collect();
    let mut f: Vec<BigInt> = Vec::with_capacity(n + 1);
    for m in 0..=n {
        let v = if m <= p {
            BigInt::one()
        } else {
            match variant {
                Krcadinac::Lower => &f[m - p] + &f[m - p - 1],
                Krcadinac::Upper => {
                    let mut s = f[m - p - 1].clone();
                    for (k, w) in weights.iter().enumerate() {
                        s += w * &f[m - k - 1];
                    }
                    s
                }
            }
        };
        f.push(v);
    }
    Ok(f.swap_remove(n))
}

/// (f_n, l_n): Fibonacci and Lucas numbers.
pub fn fib_lucas(n: u64) -> (BigInt, BigInt) {
    let (mut f0, mut f1) = (BigInt::zero(), BigInt::one());
    let (mut l0, mut l1) = (BigInt::from(2), BigInt::one());
    for _ in 0..n {
        let f2 = &f0 + &f1;
        f0 = std::mem::replace(&mut f1, f2);
        let l2 = &l0 + &l1;
        l0 = std::mem::replace(&mut l1, l2);
    }
    (f0, l0)
}

/// Smallest |s| <= max_shift with b_n = a_{n-s} over `window` comparable terms.
/// Ties prefer the positive shift.
pub fn find_shift(a: &SequenceSpec, b: &SequenceSpec, window: usize, max_shift: usize) -> Option<isize> {
    let len = window + 2 * max_shift;
    let ta = a.terms(len);
    let tb = b.terms(len);
    let matches = |s: isize| {
        let start = s.max(0) as usize;
        (start..start + window).all(|n| tb[n] == ta[(n as isize - s) as usize])
    };
    for d in 0..=max_shift as isize {
        for s in [d, -d] {
            if matches(s) {
                return Some(s);
            }
        }
    }
    None
}
