//! Sparse bivariate polynomials in `x` and `y` with exact rational coefficients.
//!
//! A [`BivarPoly`] is a map from [`Monomial`] to a non-zero [`BigRational`].
//! Every constructor and operation re-canonicalizes, so a stored coefficient is
//! never zero and structural equality is polynomial equality.
//!
//! The text form lists terms by descending power of `x` (then of `y`), writes
//! powers with `^` and omits the multiplication sign: `x^4 + 3x^2y + y^2`.
//! Non-integer coefficients are parenthesized: `(1/2)x^2 - (3/4)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// The monomial `x^x_exp * y^y_exp`.
///
/// Ordered by total degree, then by the exponent of `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub x_exp: u32,
    pub y_exp: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x_exp: 0, y_exp: 0 };

    pub const fn new(x_exp: u32, y_exp: u32) -> Self {
        Monomial { x_exp, y_exp }
    }

    pub fn total_degree(self) -> u64 {
        u64::from(self.x_exp) + u64::from(self.y_exp)
    }

    /// `x_exp + 2 * y_exp`, the degree under which `x^{n-2k} y^k` all weigh `n`.
    pub fn weight(self) -> u64 {
        u64::from(self.x_exp) + 2 * u64::from(self.y_exp)
    }

    pub fn is_one(self) -> bool {
        self == Self::ONE
    }

    pub fn checked_mul(self, other: Monomial) -> Option<Monomial> {
        Some(Monomial {
            x_exp: self.x_exp.checked_add(other.x_exp)?,
            y_exp: self.y_exp.checked_add(other.y_exp)?,
        })
    }

    fn mul(self, other: Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then(self.x_exp.cmp(&other.x_exp))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        for (var, exp) in [('x', self.x_exp), ('y', self.y_exp)] {
            match exp {
                0 => {}
                1 => write!(f, "{var}")?,
                e => write!(f, "{var}^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sparse polynomial in `x`, `y` over the rationals.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct BivarPoly {
    terms: BTreeMap<Monomial, BigRational>,
}

impl BivarPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn x() -> Self {
        Self::monomial(BigRational::one(), Monomial::new(1, 0))
    }

    pub fn y() -> Self {
        Self::monomial(BigRational::one(), Monomial::new(0, 1))
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Monomial::ONE)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        BivarPoly { terms }
    }

    /// `c * x^x_exp * y^y_exp` with an integer coefficient.
    pub fn term(c: i64, x_exp: u32, y_exp: u32) -> Self {
        Self::monomial(
            BigRational::from_integer(BigInt::from(c)),
            Monomial::new(x_exp, y_exp),
        )
    }

    pub fn x_pow(e: u32) -> Self {
        Self::term(1, e, 0)
    }

    /// Builds a polynomial from arbitrary `(monomial, coefficient)` pairs,
    /// summing duplicates and dropping zeros.
    pub fn from_terms<I>(terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, BigRational)>,
    {
        let mut p = BivarPoly::zero();
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                add_rational(e.get_mut(), c);
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Monomial::ONE)
                .is_some_and(|c| c.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, m: Monomial) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// Terms in display order: descending power of `x`, then of `y`.
    pub fn display_terms(&self) -> Vec<(Monomial, &BigRational)> {
        let mut v: Vec<_> = self.terms.iter().map(|(m, c)| (*m, c)).collect();
        v.sort_by(|a, b| {
            b.0.x_exp
                .cmp(&a.0.x_exp)
                .then(b.0.y_exp.cmp(&a.0.y_exp))
        });
        v
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|c| c.is_integer())
    }

    /// Coefficients as integers, or `None` if any is fractional.
    pub fn integer_terms(&self) -> Option<Vec<(Monomial, BigInt)>> {
        self.terms
            .iter()
            .map(|(m, c)| c.is_integer().then(|| (*m, c.to_integer())))
            .collect()
    }

    /// The common value of `x_exp + 2 y_exp` over all terms, if there is one.
    /// The zero polynomial has no weight.
    pub fn weight(&self) -> Option<u64> {
        let mut it = self.terms.keys().map(|m| m.weight());
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    pub fn degree_in_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x_exp).max()
    }

    pub fn scale(&self, c: &BigRational) -> BivarPoly {
        if c.is_zero() {
            return BivarPoly::zero();
        }
        BivarPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, mul_rational(v, c))).collect(),
        }
    }

    pub fn scale_int(&self, c: i64) -> BivarPoly {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Multiplies by the single monomial `m`.
    pub fn mul_monomial(&self, m: Monomial) -> BivarPoly {
        BivarPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> BivarPoly {
        let mut base = self.clone();
        let mut acc = BivarPoly::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Simultaneous substitution `x <- x_image`, `y <- y_image`, fully expanded.
    pub fn substitute(&self, x_image: &BivarPoly, y_image: &BivarPoly) -> BivarPoly {
        let mut x_powers = PowerTable::new(x_image);
        let mut y_powers = PowerTable::new(y_image);
        let mut out = BivarPoly::zero();
        for (m, c) in &self.terms {
            let t = x_powers.get(m.x_exp) * y_powers.get(m.y_exp);
            out += &t.scale(c);
        }
        out
    }

    pub fn evaluate(&self, x0: &BigRational, y0: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            acc += c * pow_rational(x0, m.x_exp) * pow_rational(y0, m.y_exp);
        }
        acc
    }

    /// Coordinates over `(x^{n-2k} y^k)_{0 <= k <= n/2}`.
    pub fn coordinates_canonical(&self, n: u32) -> Result<Vec<BigRational>> {
        let len = (n / 2) as usize + 1;
        let mut out = vec![BigRational::zero(); len];
        for (m, c) in &self.terms {
            if m.weight() != u64::from(n) {
                return Err(Error::MalformedElement(format!(
                    "monomial {m} is not of the form x^({n}-2k) y^k"
                )));
            }
            out[m.y_exp as usize] = c.clone();
        }
        Ok(out)
    }

    /// Inverse of [`coordinates_canonical`](Self::coordinates_canonical):
    /// `sum_k coords[k] x^{n-2k} y^k`.
    pub fn from_canonical_coordinates(n: u32, coords: &[BigRational]) -> Result<BivarPoly> {
        let len = (n / 2) as usize + 1;
        if coords.len() != len {
            return Err(Error::Dimension(format!(
                "expected {len} canonical coordinates for degree {n}, got {}",
                coords.len()
            )));
        }
        Ok(BivarPoly::from_terms(coords.iter().enumerate().map(|(k, c)| {
            let k = k as u32;
            (Monomial::new(n - 2 * k, k), c.clone())
        })))
    }

    pub fn to_records(&self) -> Vec<TermRecord> {
        self.display_terms()
            .into_iter()
            .map(|(m, c)| TermRecord {
                x: m.x_exp,
                y: m.y_exp,
                num: c.numer().to_string(),
                den: c.denom().to_string(),
            })
            .collect()
    }

    pub fn from_records(records: &[TermRecord]) -> Result<BivarPoly> {
        let mut p = BivarPoly::zero();
        for (i, r) in records.iter().enumerate() {
            let bad = |what: &str| Error::MalformedElement(format!("term {i}: {what}"));
            let num = BigInt::from_str(&r.num).map_err(|_| bad("numerator is not an integer"))?;
            let den = BigInt::from_str(&r.den).map_err(|_| bad("denominator is not an integer"))?;
            if den.is_zero() {
                return Err(bad("zero denominator"));
            }
            p.add_term(Monomial::new(r.x, r.y), BigRational::new(num, den));
        }
        Ok(p)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("term records always serialize")
    }

    pub fn from_json(s: &str) -> Result<BivarPoly> {
        let records: Vec<TermRecord> =
            serde_json::from_str(s).map_err(|e| Error::Parse {
                pos: e.column(),
                msg: e.to_string(),
            })?;
        BivarPoly::from_records(&records)
    }
}

struct PowerTable<'a> {
    base: &'a BivarPoly,
    powers: Vec<BivarPoly>,
}

impl<'a> PowerTable<'a> {
    fn new(base: &'a BivarPoly) -> Self {
        PowerTable {
            base,
            powers: vec![BivarPoly::one()],
        }
    }

    fn get(&mut self, e: u32) -> &BivarPoly {
        let e = e as usize;
        while self.powers.len() <= e {
            let next = self.powers.last().unwrap() * self.base;
            self.powers.push(next);
        }
        &self.powers[e]
    }
}

fn pow_rational(b: &BigRational, e: u32) -> BigRational {
    num_traits::pow::pow(b.clone(), e as usize)
}

/// One `{"x", "y", "num", "den"}` entry of the JSON form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub x: u32,
    pub y: u32,
    pub num: String,
    pub den: String,
}

impl Serialize for BivarPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_records().serialize(s)
    }
}

impl<'de> Deserialize<'de> for BivarPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let records = Vec::<TermRecord>::deserialize(d)?;
        BivarPoly::from_records(&records).map_err(serde::de::Error::custom)
    }
}

impl AddAssign<&BivarPoly> for BivarPoly {
    fn add_assign(&mut self, rhs: &BivarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, c.clone());
        }
    }
}

impl SubAssign<&BivarPoly> for BivarPoly {
    fn sub_assign(&mut self, rhs: &BivarPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(*m, -c);
        }
    }
}

impl Add for &BivarPoly {
    type Output = BivarPoly;
    fn add(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for BivarPoly {
    type Output = BivarPoly;
    fn add(mut self, rhs: BivarPoly) -> BivarPoly {
        self += &rhs;
        self
    }
}

impl Sub for &BivarPoly {
    type Output = BivarPoly;
    fn sub(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for BivarPoly {
    type Output = BivarPoly;
    fn sub(mut self, rhs: BivarPoly) -> BivarPoly {
        self -= &rhs;
        self
    }
}

impl Neg for &BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        BivarPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

impl Neg for BivarPoly {
    type Output = BivarPoly;
    fn neg(self) -> BivarPoly {
        -&self
    }
}

impl Mul for &BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: &BivarPoly) -> BivarPoly {
        let mut out = BivarPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(*mb), mul_rational(ca, cb));
            }
        }
        out
    }
}

impl Mul for BivarPoly {
    type Output = BivarPoly;
    fn mul(self, rhs: BivarPoly) -> BivarPoly {
        &self * &rhs
    }
}

fn write_rational_magnitude(f: &mut fmt::Formatter<'_>, c: &BigRational) -> fmt::Result {
    if c.is_integer() {
        write!(f, "{}", c.numer().abs())
    } else {
        write!(f, "({}/{})", c.numer().abs(), c.denom())
    }
}

impl fmt::Display for BivarPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.display_terms().into_iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let unit = c.abs().is_one();
            if m.is_one() {
                write_rational_magnitude(f, c)?;
            } else {
                if !unit {
                    write_rational_magnitude(f, c)?;
                }
                write!(f, "{m}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for BivarPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s).parse_poly()
    }
}

/// Recursive-descent parser for the text form. Accepts what `Display`
/// produces plus optional `*` separators, repeated variables, and
/// unparenthesized fractions.
struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str) -> Self {
        Parser {
            src: s.as_bytes(),
            pos: 0,
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|b| b.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, b: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(b) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Option<&'a str> {
        self.skip_ws();
        let start = self.pos;
        while self.peek().is_some_and(|b| b.is_ascii_digit()) {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    fn parse_poly(&mut self) -> Result<BivarPoly> {
        let mut out = BivarPoly::zero();
        let mut negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        loop {
            let (m, c) = self.parse_term()?;
            out.add_term(m, if negative { -c } else { c });
            self.skip_ws();
            match self.peek() {
                None => return Ok(out),
                Some(b'+') => negative = false,
                Some(b'-') => negative = true,
                Some(_) => return self.err("expected '+', '-' or end of input"),
            }
            self.pos += 1;
        }
    }

    fn parse_term(&mut self) -> Result<(Monomial, BigRational)> {
        let coeff = self.parse_coefficient()?;
        let had_coeff = coeff.is_some();
        let mut mono = Monomial::ONE;
        let mut had_factor = false;
        loop {
            let save = self.pos;
            let star = self.eat(b'*');
            if star && !(had_coeff || had_factor) {
                return self.err("unexpected '*'");
            }
            self.skip_ws();
            let var = match self.peek() {
                Some(b @ (b'x' | b'y')) => b,
                _ if star => return self.err("expected 'x' or 'y' after '*'"),
                _ => {
                    self.pos = save;
                    break;
                }
            };
            self.pos += 1;
            let exp = if self.eat(b'^') {
                match self.digits() {
                    Some(d) => match d.parse::<u32>() {
                        Ok(e) => e,
                        Err(_) => return self.err("exponent out of range"),
                    },
                    None => return self.err("expected exponent after '^'"),
                }
            } else {
                1
            };
            let factor = if var == b'x' {
                Monomial::new(exp, 0)
            } else {
                Monomial::new(0, exp)
            };
            mono = match mono.checked_mul(factor) {
                Some(m) => m,
                None => return self.err("exponent out of range"),
            };
            had_factor = true;
        }
        if !had_coeff && !had_factor {
            return self.err("expected a term");
        }
        Ok((mono, coeff.unwrap_or_else(BigRational::one)))
    }

    fn parse_coefficient(&mut self) -> Result<Option<BigRational>> {
        if self.eat(b'(') {
            let negative = self.eat(b'-');
            let c = match self.parse_fraction()? {
                Some(c) => c,
                None => return self.err("expected a number after '('"),
            };
            if !self.eat(b')') {
                return self.err("expected ')'");
            }
            Ok(Some(if negative { -c } else { c }))
        } else {
            self.parse_fraction()
        }
    }

    fn parse_fraction(&mut self) -> Result<Option<BigRational>> {
        let Some(num) = self.digits() else {
            return Ok(None);
        };
        let num = BigInt::from_str(num).unwrap();
        let save = self.pos;
        if self.eat(b'/') {
            let Some(den) = self.digits() else {
                self.pos = save;
                return self.err("expected denominator after '/'");
            };
            let den = BigInt::from_str(den).unwrap();
            if den.is_zero() {
                return self.err("zero denominator");
            }
            return Ok(Some(BigRational::new(num, den)));
        }
        Ok(Some(BigRational::from_integer(num)))
    }
}

/// Integer value of an exact rational, if it is one.
// Ratio arithmetic always renormalizes through gcds; almost every
// coefficient here is an integer, so skip that when both sides are.
fn mul_rational(a: &BigRational, b: &BigRational) -> BigRational {
    if a.is_integer() && b.is_integer() {
        BigRational::from_integer(a.numer() * b.numer())
    } else {
        a * b
    }
}

fn add_rational(a: &mut BigRational, b: BigRational) {
    if a.is_integer() && b.is_integer() {
        *a = BigRational::from_integer(a.numer() + b.numer());
    } else {
        *a += b;
    }
}

pub fn rational_to_int(c: &BigRational) -> Option<BigInt> {
    c.is_integer().then(|| c.to_integer())
}

/// Small-integer convenience for tests and rendering.
pub fn rational_to_i64(c: &BigRational) -> Option<i64> {
    rational_to_int(c)?.to_i64()
}

pub fn int(c: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(c))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
