//! Printed reference tables, embedded as CSV.

use num_bigint::BigInt;

use crate::breedsim::{rabbit_rows, simulate, BreedConfig};
use crate::charpoly::{char_poly, dominant_root, golden_polynomial, wilson_recurrence, IntPolynomial};
use crate::error::{Error, Result};
use crate::format_fixed;
use crate::goldprops::{golden_angle, trig_angles};
use crate::qmatrix::cassini;
use crate::seqcore::{
    composition_classes, compositions_count, fib_lucas, make_family, stakhov_term, Family, SequenceSpec,
};
use crate::sums::sum_squares;

const SOURCES: &[(&str, &str, &str)] = &[
    ("fibonacci", "rabbit pairs: adults, babies, total", include_str!("../data/fibonacci.csv")),
    ("2syllable", "syllable compositions by class", include_str!("../data/2syllable.csv")),
    ("stakhov", "Stakhov p-sequences f_n", include_str!("../data/stakhov.csv")),
    ("p2", "named 2-sequences", include_str!("../data/p2.csv")),
    ("p3", "named 3-sequences", include_str!("../data/p3.csv")),
    ("p4", "named 4-sequences", include_str!("../data/p4.csv")),
    ("p5", "named 5-sequences", include_str!("../data/p5.csv")),
    ("wilson", "Meru recurrences and limits", include_str!("../data/wilson.csv")),
    ("phi", "golden ratios and trig angles", include_str!("../data/phi.csv")),
    ("plimits", "p-golden ratios", include_str!("../data/plimits.csv")),
    ("a1b2gna", "breeding alpha=1 beta=2", include_str!("../data/a1b2gna.csv")),
    ("a1b3gna", "breeding alpha=1 beta=3", include_str!("../data/a1b3gna.csv")),
    ("a2b2g3", "breeding alpha=2 beta=2 gamma=3", include_str!("../data/a2b2g3.csv")),
    ("a2b3g2", "breeding alpha=2 beta=3 gamma=2", include_str!("../data/a2b3g2.csv")),
    ("sum2xsq", "sums of squares, p=2", include_str!("../data/sum2xsq.csv")),
    ("sum3xsq", "sums of squares, p=3", include_str!("../data/sum3xsq.csv")),
    ("sum4xsq", "sums of squares, p=4", include_str!("../data/sum4xsq.csv")),
    ("goldenang", "golden angles", include_str!("../data/goldenang.csv")),
    ("2cassini", "Cassini identity", include_str!("../data/2cassini.csv")),
];

/// A printed table: header and rows of cells, kept as the printed strings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub id: &'static str,
    pub title: &'static str,
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn column_index(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<&str>> {
        let i = self.column_index(name)?;
        Some(self.rows.iter().map(|r| r[i].as_str()).collect())
    }

    /// Column parsed into values of `T`.
    pub fn parsed<T: std::str::FromStr>(&self, name: &str) -> Result<Vec<T>> {
        let col = self
            .column(name)
            .ok_or_else(|| Error::InvalidArgument(format!("table {} has no column {name}", self.id)))?;
        col.iter()
            .map(|c| c.parse().map_err(|_| Error::InvalidArgument(format!("bad cell {c:?} in {}/{name}", self.id))))
            .collect()
    }
}

/// Identifiers of all embedded tables.
pub fn ids() -> impl Iterator<Item = &'static str> {
    SOURCES.iter().map(|(id, _, _)| *id)
}

pub fn table(id: &str) -> Result<Table> {
    let (id, title, text) = SOURCES
        .iter()
        .find(|(i, _, _)| *i == id)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown table {id:?}")))?;
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    let header: Vec<String> = lines.next().unwrap_or_default().split(',').map(str::to_string).collect();
    let rows = lines.map(|l| l.split(',').map(|c| c.trim().to_string()).collect()).collect();
    Ok(Table { id, title, header, rows })
}

/// How a printed table is known to be wrong at some cells.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErratumProof {
    /// The column is a verbatim copy of another printed column.
    CopyOf(&'static str),
    /// Each listed cell differs from the sum of the p printed cells above it.
    BreaksRecurrence(usize),
    /// The row's own printed columns give a different value:
    /// product − inner² − sum.
    RowArithmetic,
}

/// A printed cell (or column) shown to be a misprint by the table itself.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Erratum {
    pub table: &'static str,
    pub column: &'static str,
    /// Row keys (first column values); empty means the whole column.
    pub rows: &'static [usize],
    pub proof: ErratumProof,
}

pub const ERRATA: &[Erratum] = &[
    Erratum { table: "p3", column: "S_0", rows: &[], proof: ErratumProof::CopyOf("S_2") },
    Erratum { table: "p4", column: "S_X", rows: &[23, 24, 25], proof: ErratumProof::BreaksRecurrence(4) },
    Erratum { table: "p5", column: "S_3", rows: &[25], proof: ErratumProof::BreaksRecurrence(5) },
    Erratum { table: "sum4xsq", column: "delta", rows: &[9], proof: ErratumProof::RowArithmetic },
];

impl Erratum {
    fn covers(&self, table: &str, column: &str, row: usize) -> bool {
        self.table == table && self.column == column && (self.rows.is_empty() || self.rows.contains(&row))
    }

    /// Checks the proof against the printed table alone.
    pub fn confirmed(&self) -> Result<bool> {
        let t = table(self.table)?;
        let col: Vec<BigInt> = t.parsed(self.column)?;
        let keys: Vec<usize> = t.parsed(&t.header[0])?;
        let at = |key: usize| keys.iter().position(|&k| k == key);
        Ok(match self.proof {
            ErratumProof::CopyOf(src) => col == t.parsed::<BigInt>(src)?,
            ErratumProof::BreaksRecurrence(p) => self.rows.iter().all(|&r| match at(r) {
                Some(i) if i >= p => col[i] != col[i - p..i].iter().sum::<BigInt>(),
                _ => false,
            }),
            ErratumProof::RowArithmetic => {
                let (sum, product, inner): (Vec<BigInt>, Vec<BigInt>, Vec<BigInt>) =
                    (t.parsed("sum")?, t.parsed("product")?, t.parsed("inner")?);
                self.rows.iter().all(|&r| match at(r) {
                    Some(i) => col[i] != &product[i] - &inner[i] * &inner[i] - &sum[i],
                    None => false,
                })
            }
        })
    }
}

pub fn erratum_for(table: &str, column: &str, row: usize) -> Option<&'static Erratum> {
    ERRATA.iter().find(|e| e.covers(table, column, row))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellStatus {
    Ok,
    Fail,
    /// Mismatch at a confirmed misprint.
    Erratum,
}

impl std::fmt::Display for CellStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            CellStatus::Ok => "ok",
            CellStatus::Fail => "FAIL",
            CellStatus::Erratum => "erratum",
        })
    }
}

/// One reproduced cell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellCheck {
    pub row: String,
    pub column: String,
    pub expected: String,
    pub computed: String,
    pub status: CellStatus,
}

/// A computed cell and the comparison it is held to.
enum Computed {
    /// Exact string equality (integers, labels).
    Exact(String),
    /// Value to be rounded to the printed number of decimals.
    Decimal(Box<dyn Fn(usize) -> String>),
    /// Absolute tolerance.
    Near(f64, f64),
}

fn decimals_of(s: &str) -> usize {
    s.split_once('.').map_or(0, |(_, d)| d.len())
}

fn same_number(a: &str, b: &str) -> bool {
    match (a.parse::<f64>(), b.parse::<f64>()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn judge(table: &str, column: &str, key: usize, expected: &str, computed: Computed) -> (String, CellStatus) {
    let (shown, ok) = match computed {
        Computed::Exact(s) => {
            let ok = s == expected;
            (s, ok)
        }
        Computed::Decimal(f) => {
            let s = f(decimals_of(expected));
            let ok = same_number(&s, expected);
            (s, ok)
        }
        Computed::Near(v, tol) => {
            let ok = expected.parse::<f64>().is_ok_and(|e| (e - v).abs() <= tol);
            (format_fixed(v, 6), ok)
        }
    };
    let status = if ok {
        CellStatus::Ok
    } else if erratum_for(table, column, key).is_some_and(|e| e.confirmed().unwrap_or(false)) {
        CellStatus::Erratum
    } else {
        CellStatus::Fail
    };
    (shown, status)
}

fn int(v: &BigInt) -> Computed {
    Computed::Exact(v.to_string())
}

fn root_decimal(poly: &IntPolynomial) -> Result<Computed> {
    let root = dominant_root(poly)?;
    Ok(Computed::Decimal(Box::new(move |d| root.decimal(d))))
}

fn float_decimal(v: f64) -> Computed {
    Computed::Decimal(Box::new(move |d| format_fixed(v, d)))
}

fn sequence_column(p: usize, name: &str) -> Result<SequenceSpec> {
    let fam = match name {
        "S_C" => Family::Coefficient,
        "S_X" => Family::Exponent,
        "S_S" => Family::Syllable,
        "S_G" => return SequenceSpec::general(vec![2.into(), 21.into()]),
        _ => {
            let k = name
                .strip_prefix("S_")
                .and_then(|k| k.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("unknown sequence column {name}")))?;
            Family::Kronecker(k)
        }
    };
    make_family(fam, p)
}

type CellFn = Box<dyn Fn(&str, usize) -> Result<Computed>>;

/// Recomputes every printed cell of a table.
pub fn reproduce(id: &str) -> Result<Vec<CellCheck>> {
    let t = table(id)?;
    let keys: Vec<usize> = t.parsed(&t.header[0])?;
    let max_key = keys.iter().copied().max().unwrap_or(0);
    // per-table cell function: (column, row key) -> computed value
    let cell: CellFn = match id {
        "p2" | "p3" | "p4" | "p5" => {
            let p: usize = id[1..].parse().expect("table id");
            let cols: Vec<(String, Vec<BigInt>)> = t.header[1..]
                .iter()
                .map(|c| Ok((c.clone(), sequence_column(p, c)?.terms(max_key + 1))))
                .collect::<Result<_>>()?;
            Box::new(move |c, n| {
                let col = &cols.iter().find(|(name, _)| name == c).expect("header column").1;
                Ok(int(&col[n]))
            })
        }
        "stakhov" => Box::new(|c, p| {
            let n: usize = c[1..].parse().map_err(|_| Error::InvalidArgument(c.into()))?;
            Ok(int(&stakhov_term(p, n)))
        }),
        "fibonacci" => {
            let rows = rabbit_rows(max_key)?;
            Box::new(move |c, n| {
                let r = &rows[n];
                Ok(int(match c {
                    "adult" => &r.adults,
                    "baby" => &r.babies,
                    _ => &r.total,
                }))
            })
        }
        "2syllable" => Box::new(|c, n| {
            Ok(match c {
                "total" => int(&compositions_count(n, 2)?),
                _ => {
                    let classes = composition_classes(n, 2)?;
                    let s: Vec<String> = classes
                        .iter()
                        .map(|k| format!("{}.{}({})", k.counts[0], k.counts[1], k.multiplicity))
                        .collect();
                    Computed::Exact(s.join(" "))
                }
            })
        }),
        "wilson" => Box::new(|c, m| {
            let rec = wilson_recurrence(m as u32)?;
            Ok(match c {
                "lags" => {
                    let lags: Vec<String> = rec.terms().iter().map(|(_, l)| l.to_string()).collect();
                    Computed::Exact(lags.join(" "))
                }
                _ => root_decimal(&char_poly(&rec))?,
            })
        }),
        "plimits" | "phi" | "goldenang" => Box::new(|c, p| {
            Ok(match c {
                "phi" if p == 1 => float_decimal(1.0),
                "phi" => root_decimal(&golden_polynomial(p)?)?,
                "angle" => float_decimal(golden_angle(p)?),
                "theta_minus" => Computed::Near(trig_angles(p)?.0, 1e-3),
                _ => Computed::Near(trig_angles(p)?.1, 1e-3),
            })
        }),
        "a1b2gna" | "a1b3gna" | "a2b2g3" | "a2b3g2" => {
            let (alpha, beta, gamma) = match id {
                "a1b2gna" => (1, 2, None),
                "a1b3gna" => (1, 3, None),
                "a2b2g3" => (2, 2, Some(3)),
                _ => (2, 3, Some(2)),
            };
            let rows = simulate(&BreedConfig::new(alpha, beta, gamma, None)?, max_key)?;
            Box::new(move |c, n| Ok(int(if c == "baby" { &rows[n].births } else { &rows[n].total })))
        }
        "sum2xsq" | "sum3xsq" | "sum4xsq" => {
            let p: usize = id[3..4].parse().expect("table id");
            Box::new(move |c, n| {
                let r = sum_squares(p, n)?;
                let x = make_family(Family::Exponent, p)?.terms(n + 3);
                Ok(int(&match c {
                    "sum" => r.naive,
                    "closed" => r.closed,
                    "product" => &x[n] * &x[n + 1],
                    "square" => make_family(Family::Kronecker(2), 3)?.term(n + 1).pow(2),
                    "inner" => {
                        let s = make_family(Family::Kronecker(3), 4)?.terms(n + 3);
                        &s[n + 2] + &s[n - 1]
                    }
                    _ => r.residual,
                }))
            })
        }
        "2cassini" => Box::new(|c, n| {
            let n64 = n as u64;
            Ok(int(&match c {
                "f_next" => fib_lucas(n64 + 1).0,
                "f_prev" => fib_lucas(n64 - 1).0,
                "f_n" => fib_lucas(n64).0,
                _ => cassini(n64)?,
            }))
        }),
        _ => return Err(Error::InvalidArgument(format!("no reproduction for table {id:?}"))),
    };
    let mut out = Vec::new();
    for (i, row) in t.rows.iter().enumerate() {
        for (j, column) in t.header.iter().enumerate().skip(1) {
            let (computed, status) = judge(id, column, keys[i], &row[j], cell(column, keys[i])?);
            out.push(CellCheck {
                row: row[0].clone(),
                column: column.clone(),
                expected: row[j].clone(),
                computed,
                status,
            });
        }
    }
    Ok(out)
}
