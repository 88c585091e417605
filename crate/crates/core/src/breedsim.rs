//! Cohort simulation of the generalized progeny problem: every creature of
//! breeding age gives birth to α young per time step, starting β + 1 steps
//! after its own birth, for at most γ births, and dies at age δ.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charpoly::RecurrenceSpec;
use crate::error::{Error, Result};

/// Parameters (α, β, γ, δ).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreedConfig {
    /// Young per birthing event.
    pub alpha: u32,
    /// Breeding age.
    pub beta: u32,
    /// Maximum number of birthing events (`None`: unlimited).
    pub gamma: Option<u32>,
    /// Death age (`None`: immortal).
    pub delta: Option<u32>,
    /// Accept δ <= β, where no newborn ever breeds.
    pub allow_degenerate: bool,
    /// Count the founder in the step-0 total (t_0 = 1 instead of 0).
    pub include_founder: bool,
}

impl BreedConfig {
    pub fn new(alpha: u32, beta: u32, gamma: Option<u32>, delta: Option<u32>) -> Result<Self> {
        let cfg = BreedConfig { alpha, beta, gamma, delta, allow_degenerate: false, include_founder: false };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.alpha == 0 || self.beta == 0 {
            return Err(Error::InvalidArgument("alpha and beta must be positive".into()));
        }
        if self.gamma == Some(0) || self.delta == Some(0) {
            return Err(Error::InvalidArgument("gamma and delta must be positive when given".into()));
        }
        if let Some(d) = self.delta {
            if d <= self.beta && !self.allow_degenerate {
                return Err(Error::Degenerate(format!("death age {d} does not exceed breeding age {}", self.beta)));
            }
        }
        Ok(())
    }

    fn fertile(&self, age: u32, births: u32) -> bool {
        age >= self.beta && self.gamma.is_none_or(|g| births < g)
    }
}

/// Population counts by (age, births given).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohortState {
    pub step: usize,
    pub counts: BTreeMap<(u32, u32), BigInt>,
}

impl CohortState {
    /// One founder of breeding age that has not yet given birth.
    pub fn founder(cfg: &BreedConfig) -> Self {
        let mut counts = BTreeMap::new();
        counts.insert((cfg.beta, 0), BigInt::one());
        CohortState { step: 0, counts }
    }

    pub fn population(&self) -> BigInt {
        self.counts.values().sum()
    }

    /// Advances one step; returns (births, deaths).
    pub fn advance(&mut self, cfg: &BreedConfig) -> (BigInt, BigInt) {
        let mut births = BigInt::zero();
        let mut deaths = BigInt::zero();
        let mut next: BTreeMap<(u32, u32), BigInt> = BTreeMap::new();
        for (&(age, given), count) in &self.counts {
            let fertile = cfg.fertile(age, given);
            if fertile {
                births += count * cfg.alpha;
            }
            let age = age + 1;
            if cfg.delta.is_some_and(|d| age >= d) {
                deaths += count;
                continue;
            }
            // without death, ages past β and birth counts without a cap are
            // indistinguishable, so they are collapsed
            let age = if cfg.delta.is_none() { age.min(cfg.beta) } else { age };
            let given = match cfg.gamma {
                Some(g) => (given + u32::from(fertile)).min(g),
                None => 0,
            };
            *next.entry((age, given)).or_default() += count;
        }
        if !births.is_zero() {
            *next.entry((0, 0)).or_default() += &births;
        }
        self.counts = next;
        self.step += 1;
        (births, deaths)
    }
}

/// One simulated step.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimRow {
    pub step: usize,
    /// Young born during this step (b_n).
    pub births: BigInt,
    /// t_n = b_n + b_{n−1} + … + b_{n−β}.
    pub total: BigInt,
    /// All young born so far.
    pub cumulative: BigInt,
    /// Living creatures, founder included.
    pub population: BigInt,
    /// Deaths so far, founder included.
    pub deaths: BigInt,
}

/// Steps 0..=n of the cohort model.
pub fn simulate(cfg: &BreedConfig, n: usize) -> Result<Vec<SimRow>> {
    cfg.validate()?;
    let mut state = CohortState::founder(cfg);
    let mut births: Vec<BigInt> = vec![BigInt::zero()];
    let first_total = if cfg.include_founder { BigInt::one() } else { BigInt::zero() };
    let mut rows = vec![SimRow {
        step: 0,
        births: BigInt::zero(),
        total: first_total,
        cumulative: BigInt::zero(),
        population: state.population(),
        deaths: BigInt::zero(),
    }];
    let (mut cumulative, mut dead) = (BigInt::zero(), BigInt::zero());
    let window = cfg.beta as usize + 1;
    for k in 1..=n {
        let (b, d) = state.advance(cfg);
        cumulative += &b;
        dead += d;
        births.push(b.clone());
        let total = births[k.saturating_sub(window - 1)..=k].iter().sum();
        rows.push(SimRow {
            step: k,
            births: b,
            total,
            cumulative: cumulative.clone(),
            population: state.population(),
            deaths: dead.clone(),
        });
    }
    Ok(rows)
}

/// Rabbit pairs at month n: adults, babies and total.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RabbitRow {
    pub month: usize,
    pub adults: BigInt,
    pub babies: BigInt,
    pub total: BigInt,
}

/// The classic rabbit table: totals of (α = 1, β = 1) counting the founder,
/// adults_n = t_{n−1} and babies_n = t_n − t_{n−1}.
pub fn rabbit_rows(n: usize) -> Result<Vec<RabbitRow>> {
    let mut cfg = BreedConfig::new(1, 1, None, None)?;
    cfg.include_founder = true;
    let rows = simulate(&cfg, n)?;
    Ok(rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let adults = if i == 0 { r.total.clone() } else { rows[i - 1].total.clone() };
            RabbitRow { month: i, babies: &r.total - &adults, adults, total: r.total.clone() }
        })
        .collect())
}

/// Closed form of the (β = 2) totals with n = aγ + b, 0 <= b < γ:
/// bα for a = 0, otherwise [b(α − 1) + γ] α^a.
pub fn closed_form_a2b2g3(alpha: u32, gamma: u32, n: usize) -> Result<BigInt> {
    if alpha == 0 || gamma == 0 {
        return Err(Error::InvalidArgument("alpha and gamma must be positive".into()));
    }
    let (a, b) = (n / gamma as usize, (n % gamma as usize) as u32);
    let alpha_b = BigInt::from(alpha);
    if a == 0 {
        return Ok(BigInt::from(b) * &alpha_b);
    }
    Ok((BigInt::from(b) * (&alpha_b - 1) + gamma) * alpha_b.pow(a as u32))
}

/// Solves A x = y exactly; `None` when A is singular.
#[allow(clippy::needless_range_loop)]
fn solve(mut a: Vec<Vec<BigRational>>, mut y: Vec<BigRational>) -> Option<Vec<BigRational>> {
    let n = y.len();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, pivot);
        y.swap(col, pivot);
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[col][col];
                for c in col..n {
                    let v = &f * &a[col][c];
                    a[r][c] -= v;
                }
                let v = &f * &y[col];
                y[r] -= v;
            }
        }
    }
    Some((0..n).map(|i| &y[i] / &a[i][i]).collect())
}

/// Integer recurrence of the simulated totals over lags <= `window`, fitted
/// exactly past a transient and verified on 20 further terms. The
/// lowest-order fit is returned; `None` if no window fits.
pub fn recurrence_extract(cfg: &BreedConfig, window: usize) -> Result<Option<RecurrenceSpec>> {
    if cfg.gamma.is_some() || cfg.delta.is_some() {
        return Err(Error::InvalidArgument("recurrences are extracted only without gamma and delta".into()));
    }
    const VERIFY: usize = 20;
    let skip = 2 * window + cfg.beta as usize + 2;
    let t: Vec<BigInt> = simulate(cfg, skip + 2 * window + VERIFY)?.into_iter().map(|r| r.total).collect();
    for m in 1..=window {
        let start = 2 * m + cfg.beta as usize + 2;
        let rat = |x: &BigInt| BigRational::from_integer(x.clone());
        let a = (start..start + m).map(|n| (1..=m).map(|k| rat(&t[n - k])).collect()).collect();
        let y = (start..start + m).map(|n| rat(&t[n])).collect();
        let Some(x) = solve(a, y) else { continue };
        if !x.iter().all(|c| c.is_integer()) {
            continue;
        }
        let terms: Vec<(BigInt, usize)> =
            x.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| (c.to_integer(), k + 1)).collect();
        if terms.is_empty() {
            continue;
        }
        let rec = RecurrenceSpec::new(terms)?;
        let fits = (start + m..start + m + VERIFY).all(|n| rec.apply(&t[..n]).as_ref() == Some(&t[n]));
        if fits && t[start..].iter().any(|v| v.is_positive()) {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}
