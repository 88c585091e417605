//! Q-matrices of p-sequences: powers, state advancement, exact determinants
//! and the determinantal (Cassini-type) identities.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::seqcore::{fib_lucas, make_family, Family};

/// Square matrix of big integers, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BigIntMatrix {
    order: usize,
    entries: Vec<BigInt>,
}

impl BigIntMatrix {
    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Result<Self> {
        let order = rows.len();
        if order == 0 {
            return Err(Error::InvalidArgument("matrix must have order >= 1".into()));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != order) {
            return Err(Error::DimensionMismatch { expected: order, got: bad.len() });
        }
        Ok(BigIntMatrix { order, entries: rows.into_iter().flatten().collect() })
    }

    pub fn identity(order: usize) -> Self {
        let mut entries = vec![BigInt::zero(); order * order];
        for i in 0..order {
            entries[i * order + i] = BigInt::one();
        }
        BigIntMatrix { order, entries }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.order + j]
    }

    pub fn row(&self, i: usize) -> Vec<BigInt> {
        self.entries[i * self.order..(i + 1) * self.order].to_vec()
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.order).map(|i| self.row(i)).collect()
    }

    /// Rows as exact decimal strings, for serialization.
    pub fn string_rows(&self) -> Vec<Vec<String>> {
        self.rows().iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect()
    }

    pub fn mul(&self, other: &BigIntMatrix) -> Result<BigIntMatrix> {
        if other.order != self.order {
            return Err(Error::DimensionMismatch { expected: self.order, got: other.order });
        }
        let n = self.order;
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] += a * other.get(k, j);
                }
            }
        }
        Ok(BigIntMatrix { order: n, entries })
    }

    pub fn apply(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.order {
            return Err(Error::DimensionMismatch { expected: self.order, got: v.len() });
        }
        Ok((0..self.order).map(|i| (0..self.order).map(|j| self.get(i, j) * &v[j]).sum()).collect())
    }

    /// Determinant by Bareiss fraction-free elimination.
    pub fn det(&self) -> BigInt {
        let n = self.order;
        let mut a = self.rows();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v / &prev;
                }
            }
            prev = a[k][k].clone();
        }
        sign * &a[n - 1][n - 1]
    }
}

impl fmt::Display for BigIntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.string_rows().iter().map(|r| format!("[{}]", r.join(", "))).collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// Q̃ for t_n = Σ_k c_k t_{n−k}: first row c_1..c_p, ones below the diagonal.
pub fn q_tilde(coeffs: &[BigInt]) -> Result<BigIntMatrix> {
    let p = coeffs.len();
    if p < 2 {
        return Err(Error::InvalidOrder { got: p, expected: "p >= 2" });
    }
    if coeffs[p - 1].is_zero() {
        return Err(Error::SingularGenerator);
    }
    let mut rows = vec![coeffs.to_vec()];
    for i in 1..p {
        let mut r = vec![BigInt::zero(); p];
        r[i - 1] = BigInt::one();
        rows.push(r);
    }
    BigIntMatrix::from_rows(rows)
}

/// Q_p: Q̃ with all coefficients 1.
pub fn q_matrix(p: usize) -> Result<BigIntMatrix> {
    if p < 2 {
        return Err(Error::InvalidOrder { got: p, expected: "p >= 2" });
    }
    q_tilde(&vec![BigInt::one(); p])
}

pub fn mat_pow(m: &BigIntMatrix, mut n: u64) -> BigIntMatrix {
    let mut acc = BigIntMatrix::identity(m.order);
    let mut base = m.clone();
    while n > 0 {
        if n & 1 == 1 {
            acc = acc.mul(&base).expect("same order");
        }
        n >>= 1;
        if n > 0 {
            base = base.mul(&base).expect("same order");
        }
    }
    acc
}

/// M^n · state. With M = Q̃ and state (t_{p−1}, …, t_0) this is
/// (t_{n+p−1}, …, t_n).
pub fn advance_state(m: &BigIntMatrix, state: &[BigInt], n: u64) -> Result<Vec<BigInt>> {
    if state.len() != m.order {
        return Err(Error::DimensionMismatch { expected: m.order, got: state.len() });
    }
    mat_pow(m, n).apply(state)
}

/// f_{n+1} f_{n−1} − f_n².
pub fn cassini(n: u64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidArgument("cassini needs n >= 1".into()));
    }
    let (f1, f0, fm) = (fib_lucas(n + 1).0, fib_lucas(n).0, fib_lucas(n - 1).0);
    Ok(f1 * fm - &f0 * &f0)
}

/// One cell of an entry identification: term (n + offset) of `family`,
/// times term `factor.1` of `factor.0` when present.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellRef {
    pub family: Family,
    pub offset: isize,
    pub factor: Option<(Family, usize)>,
}

// Entry identifications of Q_p^n: (family tag, index offset, scaled by the
// factor term). The factor is t_2[S_2(3)] for p = 3 and t_3[S_3(4)] for p = 4.
type CellSpec = (&'static str, isize, bool);
type CellTable = &'static [&'static [CellSpec]];

const CELLS_2: &[&[CellSpec]] = &[&[("K1", 1, false), ("K1", 0, false)], &[("K1", 0, false), ("K1", -1, false)]];

const CELLS_3: &[&[CellSpec]] = &[
    &[("K2", 2, false), ("X", 0, true), ("K2", 1, false)],
    &[("K2", 1, false), ("X", -1, true), ("K2", 0, false)],
    &[("K2", 0, false), ("X", -2, true), ("K2", -1, false)],
];

const CELLS_4: &[&[CellSpec]] = &[
    &[("K3", 3, false), ("K2", 3, true), ("X", 0, true), ("K3", 2, false)],
    &[("K3", 2, false), ("K2", 2, true), ("X", -1, true), ("K3", 1, false)],
    &[("K3", 1, false), ("K2", 1, true), ("X", -2, true), ("K3", 0, false)],
    &[("K3", 0, false), ("K2", 0, true), ("X", -3, true), ("K3", -1, false)],
];

/// The entry identification of Q_p^n and the smallest n it covers, for
/// p = 2, 3, 4.
pub fn structural_cells(p: usize) -> Option<(u64, Vec<Vec<CellRef>>)> {
    let (min_n, cells, factor): (u64, CellTable, Option<(&str, usize)>) = match p {
        2 => (1, CELLS_2, None),
        3 => (2, CELLS_3, Some(("K2", 2))),
        4 => (3, CELLS_4, Some(("K3", 3))),
        _ => return None,
    };
    let fam = |tag: &str| Family::parse(tag).expect("valid family tag");
    let rows = cells
        .iter()
        .map(|row| {
            row.iter()
                .map(|&(tag, offset, scaled)| CellRef {
                    family: fam(tag),
                    offset,
                    factor: if scaled { factor.map(|(t, i)| (fam(t), i)) } else { None },
                })
                .collect()
        })
        .collect();
    Some((min_n, rows))
}

/// Outcome of the entry-wise identification.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Structural {
    Matches,
    /// Cells (row, column) that disagree.
    Mismatch(Vec<(usize, usize)>),
    /// n below the range of the identification.
    NotApplicable,
    /// No identification is known for this p.
    Unsupported,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminantalIdentity {
    pub p: usize,
    pub n: u64,
    /// det(Q_p^n), by exact elimination.
    pub det_of_power: BigInt,
    /// (det Q_p)^n.
    pub expected: BigInt,
    pub structural: Structural,
}

impl DeterminantalIdentity {
    pub fn holds(&self) -> bool {
        self.det_of_power == self.expected
    }

    /// `None` when no identification applies.
    pub fn structural_ok(&self) -> Option<bool> {
        match self.structural {
            Structural::Matches => Some(true),
            Structural::Mismatch(_) => Some(false),
            _ => None,
        }
    }
}

pub fn determinantal_identity(p: usize, n: u64) -> Result<DeterminantalIdentity> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let q = q_matrix(p)?;
    let power = mat_pow(&q, n);
    let det_of_power = power.det();
    let expected = q.det().pow(n as u32);
    let structural = match structural_cells(p) {
        None => Structural::Unsupported,
        Some((min_n, _)) if n < min_n => Structural::NotApplicable,
        Some((_, cells)) => {
            let mut bad = Vec::new();
            for (i, row) in cells.iter().enumerate() {
                for (j, cell) in row.iter().enumerate() {
                    if cell_value(cell, p, n)? != *power.get(i, j) {
                        bad.push((i, j));
                    }
                }
            }
            if bad.is_empty() {
                Structural::Matches
            } else {
                Structural::Mismatch(bad)
            }
        }
    };
    Ok(DeterminantalIdentity { p, n, det_of_power, expected, structural })
}

fn cell_value(cell: &CellRef, p: usize, n: u64) -> Result<BigInt> {
    let index = n as isize + cell.offset;
    let index = usize::try_from(index).map_err(|_| Error::InvalidArgument(format!("negative index {index}")))?;
    let mut v = make_family(cell.family.clone(), p)?.term(index);
    if let Some((fam, k)) = &cell.factor {
        v *= make_family(fam.clone(), p)?.term(*k);
    }
    Ok(v)
}
