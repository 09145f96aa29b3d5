//! The sequences `U_n` (Fibonacci) and `V_n` (Lucas), both satisfying
//! `W_n = x W_{n-1} + y W_{n-2}`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BivarPoly, Monomial};
use crate::report::{Check, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum SequenceKind {
    /// `U_0 = 0`, `U_1 = 1`.
    FibonacciU,
    /// `V_0 = 2`, `V_1 = x`.
    LucasV,
}

impl SequenceKind {
    pub fn seeds(self) -> [BivarPoly; 2] {
        match self {
            SequenceKind::FibonacciU => [BivarPoly::zero(), BivarPoly::one()],
            SequenceKind::LucasV => [BivarPoly::from_int(2), BivarPoly::x()],
        }
    }

    pub fn letter(self) -> char {
        match self {
            SequenceKind::FibonacciU => 'U',
            SequenceKind::LucasV => 'V',
        }
    }
}

impl FromStr for SequenceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "U" | "u" => Ok(SequenceKind::FibonacciU),
            "V" | "v" => Ok(SequenceKind::LucasV),
            other => Err(Error::Parse {
                pos: 0,
                msg: format!("unknown sequence {other:?}, expected U or V"),
            }),
        }
    }
}

/// Append-only memo of one sequence, indexed from 0.
#[derive(Debug, Clone)]
pub struct SequenceCache {
    kind: SequenceKind,
    values: Vec<BivarPoly>,
}

impl SequenceCache {
    pub fn new(kind: SequenceKind) -> Self {
        SequenceCache {
            kind,
            values: kind.seeds().into(),
        }
    }

    /// A cache already holding indices `0..=n`.
    pub fn materialized(kind: SequenceKind, n: usize) -> Self {
        let mut c = Self::new(kind);
        c.extend_to(n);
        c
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    /// Number of materialized terms.
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn extend_to(&mut self, n: usize) {
        let x = BivarPoly::x();
        let y = BivarPoly::y();
        while self.values.len() <= n {
            let len = self.values.len();
            let next = &(&x * &self.values[len - 1]) + &(&y * &self.values[len - 2]);
            self.values.push(next);
        }
    }

    pub fn get(&self, n: usize) -> Option<&BivarPoly> {
        self.values.get(n)
    }

    /// Like [`get`](Self::get), but reports a missing index as an error.
    pub fn at(&self, n: usize) -> Result<&BivarPoly> {
        self.values.get(n).ok_or_else(|| {
            Error::Index(format!(
                "{}_{n} not materialized (cache holds 0..{})",
                self.kind.letter(),
                self.values.len()
            ))
        })
    }

    pub fn term(&mut self, n: usize) -> &BivarPoly {
        self.extend_to(n);
        &self.values[n]
    }

    pub fn values(&self) -> &[BivarPoly] {
        &self.values
    }
}

/// Both caches together; most computations need `U` and `V` side by side.
#[derive(Debug, Clone)]
pub struct Sequences {
    u: SequenceCache,
    v: SequenceCache,
}

impl Default for Sequences {
    fn default() -> Self {
        Self::new()
    }
}

impl Sequences {
    pub fn new() -> Self {
        Sequences {
            u: SequenceCache::new(SequenceKind::FibonacciU),
            v: SequenceCache::new(SequenceKind::LucasV),
        }
    }

    pub fn materialized(n: usize) -> Self {
        let mut s = Self::new();
        s.extend_to(n);
        s
    }

    pub fn extend_to(&mut self, n: usize) {
        self.u.extend_to(n);
        self.v.extend_to(n);
    }

    pub fn cache(&self, kind: SequenceKind) -> &SequenceCache {
        match kind {
            SequenceKind::FibonacciU => &self.u,
            SequenceKind::LucasV => &self.v,
        }
    }

    pub fn cache_mut(&mut self, kind: SequenceKind) -> &mut SequenceCache {
        match kind {
            SequenceKind::FibonacciU => &mut self.u,
            SequenceKind::LucasV => &mut self.v,
        }
    }

    pub fn term(&mut self, kind: SequenceKind, n: usize) -> &BivarPoly {
        self.cache_mut(kind).term(n)
    }

    pub fn u(&mut self, n: usize) -> &BivarPoly {
        self.u.term(n)
    }

    pub fn v(&mut self, n: usize) -> &BivarPoly {
        self.v.term(n)
    }
}

pub fn u_poly(n: usize) -> BivarPoly {
    SequenceCache::materialized(SequenceKind::FibonacciU, n).values[n].clone()
}

pub fn v_poly(n: usize) -> BivarPoly {
    SequenceCache::materialized(SequenceKind::LucasV, n).values[n].clone()
}

/// `C(n, k)` by the running product `C(n, i+1) = C(n, i) * (n - i) / (i + 1)`;
/// every division is exact. Zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        let (q, r) = acc.div_rem(&BigInt::from(i + 1));
        debug_assert!(r.is_zero());
        acc = q;
    }
    acc
}

/// `U_n` from the binomial expansion `U_{m+1} = sum_k C(m-k, k) x^{m-2k} y^k`.
pub fn u_poly_closed(n: usize) -> Result<BivarPoly> {
    if n == 0 {
        return Err(Error::Domain("closed form for U_n needs n >= 1".into()));
    }
    let m = (n - 1) as u64;
    Ok(BivarPoly::from_terms((0..=m / 2).map(|k| {
        (
            Monomial::new((m - 2 * k) as u32, k as u32),
            BigRational::from_integer(binomial(m - k, k)),
        )
    })))
}

/// `V_n` from `V_n = sum_k n/(n-k) C(n-k, k) x^{n-2k} y^k`.
pub fn v_poly_closed(n: usize) -> Result<BivarPoly> {
    if n == 0 {
        return Err(Error::Domain(
            "closed form for V_n needs n >= 1 (V_0 = 2 is a seed)".into(),
        ));
    }
    let n = n as u64;
    let mut terms = Vec::new();
    for k in 0..=n / 2 {
        let c = BigRational::new(BigInt::from(n), BigInt::from(n - k))
            * BigRational::from_integer(binomial(n - k, k));
        if !c.is_integer() {
            return Err(Error::IntegralityViolation(format!(
                "coefficient {c} of x^{}y^{k} in V_{n}",
                n - 2 * k
            )));
        }
        terms.push((Monomial::new((n - 2 * k) as u32, k as u32), c));
    }
    Ok(BivarPoly::from_terms(terms))
}

fn neg_y_pow(e: usize) -> BivarPoly {
    let sign = if e.is_multiple_of(2) { 1 } else { -1 };
    BivarPoly::term(sign, 0, e as u32)
}

/// Verifies, for every `n <= n_max` in each identity's range:
///
/// * `V_n = 2U_{n+1} - x U_n` (`n >= 0`), which at even indices is the
///   decomposition of `V_{2n}` over `B_U`;
/// * `V_n = U_{n+1} + y U_{n-1}` (`n >= 1`);
/// * `sum_{k=1..n} (-y)^{n-k} V_{2k} = U_{2n+1} - (-y)^n` (`n >= 0`).
pub fn check_lemma2(n_max: usize) -> Report {
    let mut seqs = Sequences::materialized(2 * n_max + 2);
    let x = BivarPoly::x();
    let y = BivarPoly::y();
    let mut report = Report::new();

    for n in 0..=n_max {
        let lhs = seqs.v(n).clone();
        let rhs = &seqs.u(n + 1).scale_int(2) - &(&x * seqs.u(n));
        report.push(Check::from_bool(
            format!("lemma2.2 V_{n} = 2U_{} - xU_{n}", n + 1),
            lhs == rhs,
            format!("lhs {lhs} != rhs {rhs}"),
        ));
    }
    for n in 1..=n_max {
        let lhs = seqs.v(n).clone();
        let rhs = &seqs.u(n + 1).clone() + &(&y * seqs.u(n - 1));
        report.push(Check::from_bool(
            format!("lemma2.3 V_{n} = U_{} + yU_{}", n + 1, n - 1),
            lhs == rhs,
            format!("lhs {lhs} != rhs {rhs}"),
        ));
    }
    for n in 0..=n_max {
        let mut lhs = BivarPoly::zero();
        for k in 1..=n {
            lhs += &(&neg_y_pow(n - k) * seqs.v(2 * k));
        }
        let rhs = seqs.u(2 * n + 1) - &neg_y_pow(n);
        report.push(Check::from_bool(
            format!("lemma2.4 sum (-y)^(n-k) V_2k = U_{} - (-y)^{n}", 2 * n + 1),
            lhs == rhs,
            format!("lhs {lhs} != rhs {rhs}"),
        ));
    }
    for n in 0..=n_max {
        let lhs = seqs.v(2 * n).clone();
        let rhs = &seqs.u(2 * n + 1).scale_int(2) - &(&x * seqs.u(2 * n));
        report.push(Check::from_bool(
            format!("simple V_{} over B_U = 2U_{} - xU_{}", 2 * n, 2 * n + 1, 2 * n),
            lhs == rhs,
            format!("lhs {lhs} != rhs {rhs}"),
        ));
    }
    report
}

/// A named sequence term such as `U_8`.
///
/// Parses `U 8`, `U8`, `U_8` and `U_{8}` (either letter case).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SequenceTerm {
    pub kind: SequenceKind,
    pub index: usize,
}

impl SequenceTerm {
    pub fn new(kind: SequenceKind, index: usize) -> Self {
        SequenceTerm { kind, index }
    }

    pub fn u(index: usize) -> Self {
        Self::new(SequenceKind::FibonacciU, index)
    }

    pub fn v(index: usize) -> Self {
        Self::new(SequenceKind::LucasV, index)
    }

    pub fn eval(&self, seqs: &mut Sequences) -> BivarPoly {
        seqs.term(self.kind, self.index).clone()
    }
}

impl fmt::Display for SequenceTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}", self.kind.letter(), self.index)
    }
}

impl FromStr for SequenceTerm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = |pos: usize, msg: &str| Error::Parse {
            pos,
            msg: msg.to_string(),
        };
        let t = s.trim_start();
        let offset = s.len() - t.len();
        let t = t.trim_end();
        let mut chars = t.char_indices();
        let kind = match chars.next() {
            Some((_, c)) => c.to_string().parse::<SequenceKind>()?,
            None => return Err(err(offset, "empty sequence term")),
        };
        let mut rest = t[1..].trim_start();
        rest = rest.strip_prefix('_').unwrap_or(rest);
        if let Some(inner) = rest.strip_prefix('{') {
            rest = inner
                .strip_suffix('}')
                .ok_or_else(|| err(s.len(), "missing '}'"))?;
        }
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err(offset + 1, "expected a non-negative index"));
        }
        let index = rest
            .parse::<usize>()
            .map_err(|_| err(offset + 1, "index out of range"))?;
        Ok(SequenceTerm { kind, index })
    }
}
