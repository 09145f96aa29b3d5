//! The five integer coordinate families.
//!
//! | family | identity                                               | from  |
//! |--------|--------------------------------------------------------|-------|
//! | `a`    | `2U_{2n+1} = sum_{k=0}^{n}   a_{n,k} x^{n-k} V_{n+k}`   | n >= 0 |
//! | `b`    | `U_{2n}    = sum_{k=0}^{n-1} b_{n,k} x^{n-k} U_{n+k}`   | n >= 1 |
//! | `c`    | `V_{2n-1}  = sum_{k=0}^{n-1} c_{n,k} x^{n-k} U_{n+k}`   | n >= 1 |
//! | `d`    | `2V_{2n-1} = sum_{k=0}^{n-1} d_{n,k} x^{n-k} V_{n+k-1}` | n >= 1 |
//! | `e`    | `2U_{2n}   = sum_{k=0}^{n-1} e_{n,k} x^{n-k} V_{n+k-1}` | n >= 1 |
//!
//! Each family is produced three ways: closed form, Pascal-like recurrence,
//! and exact linear solve over the matching basis ([`Method::Oracle`]).
//! Printed tables of `b`, `c`, `d` also carry the `k = n` entry
//! (`-1`, `-2`, `-2`), which the recurrences consume but the identities do not.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::bases::{decompose, BasisFamily, BasisSpec, Decomposition};
use crate::error::{Error, Result};
use crate::poly::BivarPoly;
use crate::report::{Check, Report};
use crate::sequences::{binomial, SequenceTerm, Sequences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CoeffFamily {
    A,
    B,
    C,
    D,
    E,
}

impl CoeffFamily {
    pub const ALL: [CoeffFamily; 5] = [
        CoeffFamily::A,
        CoeffFamily::B,
        CoeffFamily::C,
        CoeffFamily::D,
        CoeffFamily::E,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CoeffFamily::A => "a",
            CoeffFamily::B => "b",
            CoeffFamily::C => "c",
            CoeffFamily::D => "d",
            CoeffFamily::E => "e",
        }
    }

    /// First row index.
    pub fn min_n(self) -> usize {
        match self {
            CoeffFamily::A | CoeffFamily::B => 0,
            _ => 1,
        }
    }

    /// Entries per printed row.
    pub fn table_width(self, n: usize) -> usize {
        match self {
            CoeffFamily::E => n,
            _ => n + 1,
        }
    }

    /// Number of coordinates in the decomposition identity of row `n`.
    pub fn identity_width(self, n: usize) -> usize {
        match self {
            CoeffFamily::A => n + 1,
            _ => n,
        }
    }

    /// `(multiplier, W)` such that the identity reads `multiplier * W = ...`.
    pub fn target(self, n: usize) -> (i64, SequenceTerm) {
        match self {
            CoeffFamily::A => (2, SequenceTerm::u(2 * n + 1)),
            CoeffFamily::B => (1, SequenceTerm::u(2 * n)),
            CoeffFamily::C => (1, SequenceTerm::v(2 * n - 1)),
            CoeffFamily::D => (2, SequenceTerm::v(2 * n - 1)),
            CoeffFamily::E => (2, SequenceTerm::u(2 * n)),
        }
    }

    pub fn basis(self, n: usize) -> BasisSpec {
        let family = match self {
            CoeffFamily::A => BasisFamily::BV,
            CoeffFamily::B | CoeffFamily::C => BasisFamily::BUstar,
            CoeffFamily::D | CoeffFamily::E => BasisFamily::BVstar,
        };
        BasisSpec::new(family, n as u32)
    }

    /// The `k = n` table entry the identity does not determine.
    fn closing_seed(self) -> Option<i64> {
        match self {
            CoeffFamily::B => Some(-1),
            CoeffFamily::C | CoeffFamily::D => Some(-2),
            CoeffFamily::A | CoeffFamily::E => None,
        }
    }

    pub fn closed(self, n: usize, k: usize) -> Result<BigInt> {
        match self {
            CoeffFamily::A => a_closed(n, k),
            CoeffFamily::B => b_closed(n, k),
            CoeffFamily::C => c_closed(n, k),
            CoeffFamily::D => d_closed(n, k),
            CoeffFamily::E => e_closed(n, k),
        }
    }

    fn check_domain(self, n: usize, k: usize) -> Result<()> {
        if n < self.min_n() || k > n {
            return Err(Error::Index(format!(
                "{}_{{{n},{k}}} needs {} <= n and 0 <= k <= n",
                self.name(),
                self.min_n()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for CoeffFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CoeffFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "a" | "A" => Ok(CoeffFamily::A),
            "b" | "B" => Ok(CoeffFamily::B),
            "c" | "C" => Ok(CoeffFamily::C),
            "d" | "D" => Ok(CoeffFamily::D),
            "e" | "E" => Ok(CoeffFamily::E),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown coefficient family {other:?}"),
            }),
        }
    }
}

fn sign(e: usize) -> BigInt {
    if e.is_multiple_of(2) {
        BigInt::one()
    } else {
        -BigInt::one()
    }
}

fn delta(i: usize, j: usize) -> BigInt {
    BigInt::from(u8::from(i == j))
}

fn c_nk(n: usize, k: usize) -> BigInt {
    binomial(n as u64, k as u64)
}

/// `(-1)^{k+1} C(n,k) + 2 (-1)^{n-k} sum_{j=0}^{n} (-1)^j C(j, n-k)`.
pub fn a_closed(n: usize, k: usize) -> Result<BigInt> {
    CoeffFamily::A.check_domain(n, k)?;
    let sum: BigInt = (0..=n).map(|j| sign(j) * c_nk(j, n - k)).sum();
    Ok(sign(k + 1) * c_nk(n, k) + BigInt::from(2) * sign(n - k) * sum)
}

/// `(-1)^{n-k+1} C(n,k)`.
pub fn b_closed(n: usize, k: usize) -> Result<BigInt> {
    CoeffFamily::B.check_domain(n, k)?;
    Ok(sign(n - k + 1) * c_nk(n, k))
}

/// `2 (-1)^{n-k+1} C(n,k) - delta_{n-1,k}`.
pub fn c_closed(n: usize, k: usize) -> Result<BigInt> {
    CoeffFamily::C.check_domain(n, k)?;
    Ok(BigInt::from(2) * sign(n - k + 1) * c_nk(n, k) - delta(n - 1, k))
}

/// `(-1)^{n-k+1} (n+k)/n C(n,k)`, computed over the rationals and checked to
/// be an integer.
pub fn d_closed(n: usize, k: usize) -> Result<BigInt> {
    CoeffFamily::D.check_domain(n, k)?;
    let v = BigRational::new(
        sign(n - k + 1) * BigInt::from(n + k) * c_nk(n, k),
        BigInt::from(n),
    );
    integral(v, || format!("d_{{{n},{k}}}"))
}

/// `(a_{n-1,k} + d_{n,k})/2 + delta_{n,k}`, with `a_{n-1,n} = 0`.
pub fn e_closed(n: usize, k: usize) -> Result<BigInt> {
    CoeffFamily::E.check_domain(n, k)?;
    let a = if k < n { a_closed(n - 1, k)? } else { BigInt::zero() };
    let v = BigRational::new(a + d_closed(n, k)?, BigInt::from(2))
        + BigRational::from_integer(delta(n, k));
    integral(v, || format!("e_{{{n},{k}}}"))
}

fn integral(v: BigRational, what: impl FnOnce() -> String) -> Result<BigInt> {
    if v.is_integer() {
        Ok(v.to_integer())
    } else {
        Err(Error::IntegralityViolation(format!("{} = {v}", what())))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Closed,
    Recurrence,
    Oracle,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Closed, Method::Recurrence, Method::Oracle];

    pub fn name(self) -> &'static str {
        match self {
            Method::Closed => "closed",
            Method::Recurrence => "recurrence",
            Method::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
    Json,
    Latex,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(TableFormat::Text),
            "csv" => Ok(TableFormat::Csv),
            "json" => Ok(TableFormat::Json),
            "latex" => Ok(TableFormat::Latex),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown table format {other:?}"),
            }),
        }
    }
}

/// Rows `first_n..=first_n + rows.len() - 1` of one family, each
/// `family.table_width(n)` long.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoeffTriangle {
    pub family: CoeffFamily,
    pub method: Method,
    pub first_n: usize,
    pub rows: Vec<Vec<BigInt>>,
}

#[derive(Serialize)]
struct TriangleJson {
    family: CoeffFamily,
    method: Method,
    first_n: usize,
    rows: Vec<Vec<String>>,
}

impl CoeffTriangle {
    pub fn row(&self, n: usize) -> Option<&[BigInt]> {
        n.checked_sub(self.first_n)
            .and_then(|i| self.rows.get(i))
            .map(Vec::as_slice)
    }

    pub fn last_n(&self) -> Option<usize> {
        (!self.rows.is_empty()).then(|| self.first_n + self.rows.len() - 1)
    }

    /// Same family and values; the method is ignored.
    pub fn same_values(&self, other: &CoeffTriangle) -> bool {
        self.family == other.family && self.first_n == other.first_n && self.rows == other.rows
    }

    pub fn render(&self, format: TableFormat) -> String {
        let cell = |v: &BigInt| v.to_string();
        match format {
            TableFormat::Text | TableFormat::Csv => {
                let sep = if format == TableFormat::Text { "\t" } else { "," };
                let mut out = String::new();
                for row in &self.rows {
                    out.push_str(&row.iter().map(cell).collect::<Vec<_>>().join(sep));
                    out.push('\n');
                }
                out
            }
            TableFormat::Json => {
                let j = TriangleJson {
                    family: self.family,
                    method: self.method,
                    first_n: self.first_n,
                    rows: self.rows.iter().map(|r| r.iter().map(cell).collect()).collect(),
                };
                let mut s = serde_json::to_string(&j).expect("triangle serializes");
                s.push('\n');
                s
            }
            TableFormat::Latex => {
                let width = self.rows.iter().map(Vec::len).max().unwrap_or(0);
                let mut out = format!("\\begin{{tabular}}{{c|{}}}\n", "r".repeat(width));
                out.push_str("$n \\backslash k$");
                for k in 0..width {
                    out.push_str(&format!(" & {k}"));
                }
                out.push_str(" \\\\\n\\hline\n");
                for (i, row) in self.rows.iter().enumerate() {
                    out.push_str(&(self.first_n + i).to_string());
                    for k in 0..width {
                        match row.get(k) {
                            Some(v) => out.push_str(&format!(" & ${v}$")),
                            None => out.push_str(" & "),
                        }
                    }
                    out.push_str(" \\\\\n");
                }
                out.push_str("\\end{tabular}\n");
                out
            }
        }
    }
}

fn check_n_max(family: CoeffFamily, n_max: usize) -> Result<()> {
    if n_max < family.min_n() {
        return Err(Error::Domain(format!(
            "family {family} starts at n = {}, got n_max = {n_max}",
            family.min_n()
        )));
    }
    Ok(())
}

pub fn closed_triangle(family: CoeffFamily, n_max: usize) -> Result<CoeffTriangle> {
    check_n_max(family, n_max)?;
    let rows = (family.min_n()..=n_max)
        .map(|n| {
            (0..family.table_width(n))
                .map(|k| family.closed(n, k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CoeffTriangle {
        family,
        method: Method::Closed,
        first_n: family.min_n(),
        rows,
    })
}

/// Full rows `k = 0..=n` of each family by its recurrence alone.
fn recurrence_full_rows(family: CoeffFamily, n_max: usize) -> Vec<Vec<BigInt>> {
    let at = |row: &Vec<BigInt>, k: usize| row.get(k).cloned().unwrap_or_default();
    let two = BigInt::from(2);
    match family {
        CoeffFamily::A => {
            let mut rows = vec![vec![BigInt::one()]];
            for n in 1..=n_max {
                let prev = &rows[n - 1];
                let mut row = vec![BigInt::one()];
                for k in 1..=n {
                    row.push(at(prev, k) - at(prev, k - 1) + &two * delta(n, k));
                }
                rows.push(row);
            }
            rows
        }
        CoeffFamily::B => {
            let mut rows = vec![vec![-BigInt::one()]];
            for n in 1..=n_max {
                let prev = &rows[n - 1];
                let mut row = vec![sign(n + 1)];
                for k in 1..=n {
                    row.push(-at(prev, k) + at(prev, k - 1));
                }
                rows.push(row);
            }
            rows
        }
        CoeffFamily::C | CoeffFamily::D | CoeffFamily::E => {
            let a_rows = if family == CoeffFamily::E {
                recurrence_full_rows(CoeffFamily::A, n_max)
            } else {
                Vec::new()
            };
            let first = match family {
                CoeffFamily::E => vec![BigInt::one(), BigInt::zero()],
                _ => vec![BigInt::one(), BigInt::from(-2)],
            };
            let mut rows = vec![first];
            for n in 2..=n_max {
                let prev = &rows[n - 2];
                let head = match family {
                    CoeffFamily::C => &two * sign(n + 1) - delta(n, 1),
                    CoeffFamily::D => sign(n + 1),
                    _ => {
                        if n % 2 == 1 {
                            BigInt::one()
                        } else {
                            BigInt::zero()
                        }
                    }
                };
                let mut row = vec![head];
                for k in 1..=n {
                    let mut v = -at(prev, k) + at(prev, k - 1);
                    match family {
                        CoeffFamily::C => v -= delta(n, k + 2),
                        CoeffFamily::E => v += at(&a_rows[n - 1], k),
                        _ => {}
                    }
                    row.push(v);
                }
                rows.push(row);
            }
            rows
        }
    }
}

pub fn recurrence_triangle(family: CoeffFamily, n_max: usize) -> Result<CoeffTriangle> {
    check_n_max(family, n_max)?;
    let rows = recurrence_full_rows(family, n_max)
        .into_iter()
        .enumerate()
        .map(|(i, mut row)| {
            row.truncate(family.table_width(family.min_n() + i));
            row
        })
        .collect();
    Ok(CoeffTriangle {
        family,
        method: Method::Recurrence,
        first_n: family.min_n(),
        rows,
    })
}

/// Row `n` of the identity coefficients by exact linear solve.
pub fn oracle_row(family: CoeffFamily, n: usize, seqs: &mut Sequences) -> Result<Vec<BigInt>> {
    if n < family.min_n() {
        return Err(Error::Index(format!("family {family} has no row {n}")));
    }
    let (mult, term) = family.target(n);
    let target = term.eval(seqs).scale_int(mult);
    if family.identity_width(n) == 0 {
        // b at n = 0: U_0 = 0 over the empty family
        return if target.is_zero() {
            Ok(Vec::new())
        } else {
            Err(Error::Internal(format!("{term} is not zero")))
        };
    }
    let d = decompose(&target, family.basis(n), seqs)?;
    d.integer_coords().ok_or_else(|| {
        Error::IntegralityViolation(format!(
            "coordinates of {mult}{term} over {} are not integers",
            family.basis(n)
        ))
    })
}

pub fn oracle_triangle(
    family: CoeffFamily,
    n_max: usize,
    seqs: &mut Sequences,
) -> Result<CoeffTriangle> {
    check_n_max(family, n_max)?;
    let mut rows = Vec::new();
    for n in family.min_n()..=n_max {
        let mut row = oracle_row(family, n, seqs)?;
        if let Some(seed) = family.closing_seed() {
            row.push(BigInt::from(seed));
        }
        debug_assert_eq!(row.len(), family.table_width(n));
        rows.push(row);
    }
    Ok(CoeffTriangle {
        family,
        method: Method::Oracle,
        first_n: family.min_n(),
        rows,
    })
}

pub fn triangle(
    family: CoeffFamily,
    n_max: usize,
    method: Method,
    seqs: &mut Sequences,
) -> Result<CoeffTriangle> {
    match method {
        Method::Closed => closed_triangle(family, n_max),
        Method::Recurrence => recurrence_triangle(family, n_max),
        Method::Oracle => oracle_triangle(family, n_max, seqs),
    }
}

/// Checks the row-`n` identity as a polynomial equality, using closed-form
/// coefficients.
pub fn verify_identity(family: CoeffFamily, n: usize, seqs: &mut Sequences) -> Result<bool> {
    let (mult, term) = family.target(n);
    let lhs = term.eval(seqs).scale_int(mult);
    let spec = family.basis(n);
    let mut rhs = BivarPoly::zero();
    for k in 0..family.identity_width(n) {
        let (xp, t) = spec.element(k).expect("special basis");
        let c = BigRational::from_integer(family.closed(n, k)?);
        rhs += &t.eval(seqs).mul_monomial(crate::poly::Monomial::new(xp, 0)).scale(&c);
    }
    Ok(lhs == rhs)
}

/// Row-`n` identity with closed-form coefficients, e.g. `2U_1 = V_0`.
pub fn identity_text(family: CoeffFamily, n: usize) -> Result<String> {
    let (mult, term) = family.target(n);
    let coords = (0..family.identity_width(n))
        .map(|k| family.closed(n, k).map(BigRational::from_integer))
        .collect::<Result<Vec<_>>>()?;
    let d = Decomposition {
        target: BivarPoly::zero(),
        basis: family.basis(n),
        coords,
    };
    let text = d.render_identity(term);
    Ok(if mult == 1 { text } else { format!("{mult}{text}") })
}

/// Compares closed form, recurrence and oracle rows for `n <= n_max`, plus
/// the polynomial identity itself. One check per row.
pub fn cross_check(family: CoeffFamily, n_max: usize, seqs: &mut Sequences) -> Report {
    let mut report = Report::new();
    let name = |n: usize| {
        let head = format!("theorem {} n={n}", family.name().to_uppercase());
        match identity_text(family, n) {
            Ok(text) => format!("{head}: {text}"),
            Err(_) => head,
        }
    };
    let tables = (|| -> Result<_> {
        Ok((
            closed_triangle(family, n_max)?,
            recurrence_triangle(family, n_max)?,
        ))
    })();
    let (closed, recur) = match tables {
        Ok(t) => t,
        Err(e) => {
            report.push(Check::fail(format!("theorem {family}"), e.to_string()));
            return report;
        }
    };
    for n in family.min_n()..=n_max {
        let width = family.identity_width(n);
        let c = &closed.row(n).unwrap()[..width];
        let r = &recur.row(n).unwrap()[..width];
        let check = match (oracle_row(family, n, seqs), verify_identity(family, n, seqs)) {
            (Ok(o), Ok(identity)) => {
                let mut problems = Vec::new();
                for k in 0..width {
                    if c[k] != r[k] || c[k] != o[k] {
                        problems.push(format!(
                            "({family}, n={n}, k={k}): closed={} recurrence={} oracle={}",
                            c[k], r[k], o[k]
                        ));
                    }
                }
                if !identity {
                    problems.push(format!("identity for row {n} does not hold"));
                }
                Check::from_bool(name(n), problems.is_empty(), problems.join("; "))
            }
            (Err(e), _) | (_, Err(e)) => Check::fail(name(n), e.to_string()),
        };
        report.push(check);
    }
    report
}

/// Closed form against recurrence only, over full printed rows.
pub fn closed_vs_recurrence(family: CoeffFamily, n_max: usize) -> Report {
    let mut report = Report::new();
    match (closed_triangle(family, n_max), recurrence_triangle(family, n_max)) {
        (Ok(c), Ok(r)) => {
            for n in family.min_n()..=n_max {
                let (cr, rr) = (c.row(n).unwrap(), r.row(n).unwrap());
                let bad: Vec<String> = (0..cr.len())
                    .filter(|&k| cr[k] != rr[k])
                    .map(|k| format!("k={k}: closed={} recurrence={}", cr[k], rr[k]))
                    .collect();
                report.push(Check::from_bool(
                    format!("{family} closed=recurrence n={n}"),
                    bad.is_empty(),
                    bad.join("; "),
                ));
            }
        }
        (Err(e), _) | (_, Err(e)) => report.push(Check::fail(format!("{family} closed=recurrence"), e.to_string())),
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&c| BigInt::from(c)).collect()
    }

    #[test]
    fn a_examples() {
        assert_eq!(a_closed(7, 3).unwrap(), BigInt::from(-13));
        for n in 0..=8 {
            assert_eq!(a_closed(n, 0).unwrap(), BigInt::one());
        }
        assert_eq!(a_closed(8, 4).unwrap(), BigInt::from(22));
        assert!(matches!(a_closed(3, 4), Err(Error::Index(_))));
    }

    #[test]
    fn a_recurrence_rows() {
        let t = recurrence_triangle(CoeffFamily::A, 5).unwrap();
        assert_eq!(t.row(0).unwrap(), ints(&[1]));
        assert_eq!(t.row(2).unwrap(), ints(&[1, 0, 1]));
        assert_eq!(t.row(5).unwrap(), ints(&[1, -3, 4, -2, 1, 1]));
    }

    #[test]
    fn b_examples() {
        assert_eq!(b_closed(4, 2).unwrap(), BigInt::from(-6));
        assert_eq!(b_closed(5, 5).unwrap(), BigInt::from(-1));
        assert_eq!(b_closed(0, 0).unwrap(), BigInt::from(-1));
    }

    #[test]
    fn c_examples() {
        assert_eq!(c_closed(4, 2).unwrap(), BigInt::from(-12));
        assert_eq!(c_closed(1, 0).unwrap(), BigInt::from(1));
        assert_eq!(c_closed(5, 4).unwrap(), BigInt::from(9));
        assert!(matches!(c_closed(0, 0), Err(Error::Index(_))));
    }

    #[test]
    fn d_examples() {
        assert_eq!(d_closed(5, 2).unwrap(), BigInt::from(14));
        assert_eq!(d_closed(6, 3).unwrap(), BigInt::from(30));
        assert_eq!(d_closed(1, 1).unwrap(), BigInt::from(-2));
    }

    #[test]
    fn e_examples() {
        assert_eq!(e_closed(6, 3).unwrap(), BigInt::from(14));
        assert_eq!(e_closed(2, 1).unwrap(), BigInt::from(2));
        assert_eq!(e_closed(5, 0).unwrap(), BigInt::from(1));
        assert_eq!(e_closed(4, 4).unwrap(), BigInt::zero());
    }

    #[test]
    fn cross_check_b_and_d() {
        let mut s = Sequences::new();
        let r = cross_check(CoeffFamily::B, 5, &mut s);
        assert!(r.all_passed(), "{:?}", r.failures().next());
        assert_eq!(
            oracle_row(CoeffFamily::B, 5, &mut s).unwrap(),
            ints(&[1, -5, 10, -10, 5])
        );
        assert!(cross_check(CoeffFamily::D, 6, &mut s).all_passed());
    }

    #[test]
    fn cross_check_all_small() {
        let mut s = Sequences::new();
        for fam in CoeffFamily::ALL {
            let r = cross_check(fam, 10, &mut s);
            assert!(r.all_passed(), "{:?}", r.failures().next());
        }
    }

    #[test]
    fn table_methods_agree_including_seed_columns() {
        let mut s = Sequences::new();
        for fam in CoeffFamily::ALL {
            let c = closed_triangle(fam, 8).unwrap();
            for m in [Method::Recurrence, Method::Oracle] {
                let t = triangle(fam, 8, m, &mut s).unwrap();
                assert!(c.same_values(&t), "{fam} {m}");
            }
        }
    }

    #[test]
    fn n_max_below_domain_is_rejected() {
        for fam in [CoeffFamily::C, CoeffFamily::D, CoeffFamily::E] {
            assert!(matches!(closed_triangle(fam, 0), Err(Error::Domain(_))));
        }
        let b0 = closed_triangle(CoeffFamily::B, 0).unwrap();
        assert_eq!(b0.render(TableFormat::Text), "-1\n");
    }

    #[test]
    fn render_formats() {
        let t = closed_triangle(CoeffFamily::B, 2).unwrap();
        assert_eq!(t.render(TableFormat::Text), "-1\n1\t-1\n-1\t2\t-1\n");
        assert_eq!(t.render(TableFormat::Csv), "-1\n1,-1\n-1,2,-1\n");
        assert_eq!(
            t.render(TableFormat::Json),
            "{\"family\":\"b\",\"method\":\"closed\",\"first_n\":0,\"rows\":[[\"-1\"],[\"1\",\"-1\"],[\"-1\",\"2\",\"-1\"]]}\n"
        );
        let latex = t.render(TableFormat::Latex);
        assert!(latex.starts_with("\\begin{tabular}{c|rrr}\n"));
        assert!(latex.contains("\n0 & $-1$ &  &  \\\\\n"));
        assert!(latex.ends_with("\\end{tabular}\n"));
    }

    #[test]
    fn identity_texts() {
        assert_eq!(identity_text(CoeffFamily::A, 0).unwrap(), "2U_1 = V_0");
        assert_eq!(identity_text(CoeffFamily::B, 1).unwrap(), "U_2 = x U_1");
        assert_eq!(
            identity_text(CoeffFamily::C, 4).unwrap(),
            "V_7 = -2x^4 U_4 + 8x^3 U_5 - 12x^2 U_6 + 7x U_7"
        );
        assert_eq!(identity_text(CoeffFamily::E, 2).unwrap(), "2U_4 = 2x V_2");
        let mut s = Sequences::new();
        let r = cross_check(CoeffFamily::A, 1, &mut s);
        assert!(r.checks.iter().any(|c| c.name == "theorem A n=0: 2U_1 = V_0"));
    }

    #[test]
    fn family_metadata() {
        assert_eq!(CoeffFamily::E.table_width(3), 3);
        assert_eq!(CoeffFamily::C.table_width(3), 4);
        assert_eq!(CoeffFamily::A.identity_width(3), 4);
        assert_eq!(CoeffFamily::D.target(4), (2, SequenceTerm::v(7)));
        assert_eq!("e".parse::<CoeffFamily>().unwrap(), CoeffFamily::E);
        assert!("f".parse::<CoeffFamily>().is_err());
    }
}
