//! Polynomials in the forward shift `E` (with `E W_n = W_{n+1}`) whose
//! coefficients are bivariate polynomials, and the operator families
//! `A_m, B_m, C_m, D_m, E_m` whose expansions carry the coefficient triangles.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::{BivarPoly, Monomial};
use crate::report::{Check, Report};
use crate::sequences::{SequenceCache, SequenceKind, Sequences};

/// `sum_k p_k E^k`. No stored `p_k` is zero.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OperatorPoly {
    coeffs: BTreeMap<u32, BivarPoly>,
}

impl OperatorPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::constant(BivarPoly::one())
    }

    /// `E^k`.
    pub fn shift(k: u32) -> Self {
        Self::monomial(BivarPoly::one(), k)
    }

    /// `p E^0`.
    pub fn constant(p: BivarPoly) -> Self {
        Self::monomial(p, 0)
    }

    pub fn monomial(p: BivarPoly, k: u32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !p.is_zero() {
            coeffs.insert(k, p);
        }
        OperatorPoly { coeffs }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (u32, BivarPoly)>>(it: I) -> Self {
        let mut op = OperatorPoly::zero();
        for (k, p) in it {
            op.add_coeff(k, &p);
        }
        op
    }

    /// `x - E`.
    pub fn x_minus_e() -> Self {
        &Self::constant(BivarPoly::x()) - &Self::shift(1)
    }

    /// `E - x`.
    pub fn e_minus_x() -> Self {
        -&Self::x_minus_e()
    }

    fn add_coeff(&mut self, k: u32, p: &BivarPoly) {
        if p.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_default();
        *slot += p;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coefficient(&self, k: u32) -> BivarPoly {
        self.coeffs.get(&k).cloned().unwrap_or_default()
    }

    pub fn coeffs(&self) -> impl DoubleEndedIterator<Item = (u32, &BivarPoly)> {
        self.coeffs.iter().map(|(k, p)| (*k, p))
    }

    /// Highest shift power with a non-zero coefficient.
    pub fn max_shift(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn scale(&self, c: &BigRational) -> OperatorPoly {
        OperatorPoly::from_coeffs(self.coeffs.iter().map(|(k, p)| (*k, p.scale(c))))
    }

    pub fn mul_poly(&self, q: &BivarPoly) -> OperatorPoly {
        OperatorPoly::from_coeffs(self.coeffs.iter().map(|(k, p)| (*k, p * q)))
    }

    pub fn pow(&self, e: u32) -> OperatorPoly {
        let mut acc = OperatorPoly::identity();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// `(sum_k p_k E^k) W` evaluated at index `base`: `sum_k p_k W_{base+k}`.
    pub fn apply(&self, seq: &SequenceCache, base: usize) -> Result<BivarPoly> {
        let mut out = BivarPoly::zero();
        for (k, p) in &self.coeffs {
            let w = seq.at(base + *k as usize)?;
            if p.len() == 1 {
                let (m, c) = p.terms().next().unwrap();
                out += &w.mul_monomial(*m).scale(c);
            } else {
                out += &(p * w);
            }
        }
        Ok(out)
    }

    /// Reads the operator as `sum_{k < len} c_k x^{m-k} E^k` and returns the
    /// scalars `c_k`. Fails if some coefficient is not a rational multiple of
    /// `x^{m-k}` or if a shift power `>= len` is present.
    pub fn x_graded_coefficients(&self, m: u32, len: usize) -> Result<Vec<BigRational>> {
        if let Some(top) = self.max_shift() {
            if top as usize >= len {
                return Err(Error::MalformedElement(format!(
                    "shift power E^{top} beyond expected length {len}"
                )));
            }
        }
        (0..len)
            .map(|k| {
                let p = self.coefficient(k as u32);
                if p.is_zero() {
                    return Ok(BigRational::zero());
                }
                let expected = Monomial::new(m.checked_sub(k as u32).unwrap_or(u32::MAX), 0);
                let only = p.terms().next().filter(|_| p.len() == 1);
                match only {
                    Some((mono, c)) if *mono == expected => Ok(c.clone()),
                    _ => Err(Error::MalformedElement(format!(
                        "coefficient of E^{k} is {p}, not a multiple of x^{}",
                        m as i64 - k as i64
                    ))),
                }
            })
            .collect()
    }

    /// Renders `(p_0)·E^0 + (p_1)·E^1 + ...`, optionally highest shift first.
    pub fn render(&self, descending: bool) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(k, p)| format!("({p})·E^{k}"))
            .collect();
        if descending {
            parts.into_iter().rev().collect::<Vec<_>>().join(" + ")
        } else {
            parts.join(" + ")
        }
    }
}

impl fmt::Display for OperatorPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

impl Add for &OperatorPoly {
    type Output = OperatorPoly;
    fn add(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = self.clone();
        for (k, p) in &rhs.coeffs {
            out.add_coeff(*k, p);
        }
        out
    }
}

impl Sub for &OperatorPoly {
    type Output = OperatorPoly;
    fn sub(self, rhs: &OperatorPoly) -> OperatorPoly {
        self + &(-rhs)
    }
}

impl Neg for &OperatorPoly {
    type Output = OperatorPoly;
    fn neg(self) -> OperatorPoly {
        OperatorPoly {
            coeffs: self.coeffs.iter().map(|(k, p)| (*k, -p)).collect(),
        }
    }
}

impl Mul for &OperatorPoly {
    type Output = OperatorPoly;
    fn mul(self, rhs: &OperatorPoly) -> OperatorPoly {
        let mut out = OperatorPoly::zero();
        for (ka, pa) in &self.coeffs {
            for (kb, pb) in &rhs.coeffs {
                out.add_coeff(ka + kb, &(pa * pb));
            }
        }
        out
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OperatorTag {
    A,
    B,
    C,
    D,
    E,
}

impl OperatorTag {
    pub const ALL: [OperatorTag; 5] = [
        OperatorTag::A,
        OperatorTag::B,
        OperatorTag::C,
        OperatorTag::D,
        OperatorTag::E,
    ];

    pub fn min_order(self) -> u32 {
        match self {
            OperatorTag::A | OperatorTag::B => 0,
            OperatorTag::C | OperatorTag::D | OperatorTag::E => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct OperatorFamily {
    pub tag: OperatorTag,
    pub m: u32,
}

impl OperatorFamily {
    pub fn new(tag: OperatorTag, m: u32) -> Self {
        OperatorFamily { tag, m }
    }
}

fn half() -> BigRational {
    BigRational::new(1.into(), 2.into())
}

/// Expands one member of the operator families:
///
/// * `A_m = (x-E)^m + 2 sum_{k=1..m} E^k (x-E)^{m-k}`, `m >= 0`
/// * `B_m = -(E-x)^m`, `m >= 0`
/// * `C_m = 2E^m + 2B_m - x E^{m-1}`, `m >= 1`
/// * `D_m = (E-x)^{m-1} (x-2E)`, `m >= 1`
/// * `E_m = (x A_{m-1} + D_m)/2 + E^m`, `m >= 1`
pub fn build_family(family: OperatorFamily) -> Result<OperatorPoly> {
    let OperatorFamily { tag, m } = family;
    if m < tag.min_order() {
        return Err(Error::Domain(format!(
            "{tag:?}_m is defined for m >= {}, got m = {m}",
            tag.min_order()
        )));
    }
    let x = BivarPoly::x();
    Ok(match tag {
        OperatorTag::A => {
            let powers = x_minus_e_powers(m);
            let mut sum = OperatorPoly::zero();
            for k in 1..=m {
                sum = &sum + &(&OperatorPoly::shift(k) * &powers[(m - k) as usize]);
            }
            &powers[m as usize] + &sum.scale(&BigRational::from_integer(2.into()))
        }
        OperatorTag::B => -&OperatorPoly::e_minus_x().pow(m),
        OperatorTag::C => {
            let two = BigRational::from_integer(2.into());
            let b = build_family(OperatorFamily::new(OperatorTag::B, m))?;
            &(&OperatorPoly::shift(m).scale(&two) + &b.scale(&two))
                - &OperatorPoly::monomial(x, m - 1)
        }
        OperatorTag::D => {
            let x_minus_2e = &OperatorPoly::constant(x)
                - &OperatorPoly::shift(1).scale(&BigRational::from_integer(2.into()));
            &OperatorPoly::e_minus_x().pow(m - 1) * &x_minus_2e
        }
        OperatorTag::E => {
            let a = build_family(OperatorFamily::new(OperatorTag::A, m - 1))?;
            let d = build_family(OperatorFamily::new(OperatorTag::D, m))?;
            &(&a.mul_poly(&x) + &d).scale(&half()) + &OperatorPoly::shift(m)
        }
    })
}

/// `[(x-E)^0, ..., (x-E)^m]`.
pub fn x_minus_e_powers(m: u32) -> Vec<OperatorPoly> {
    let base = OperatorPoly::x_minus_e();
    let mut out = vec![OperatorPoly::identity()];
    for i in 0..m as usize {
        let next = &out[i] * &base;
        out.push(next);
    }
    out
}

/// Verifies, by applying the expanded operators to the sequences,
///
/// * a. `A_n V_n = 2U_{2n+1}`, `n >= 0`
/// * b. `B_n U_n = 0`, `n >= 0`
/// * c. `C_n U_n = V_{2n-1}`, `n >= 1`
/// * d. `D_n V_{n-1} = 0`, `n >= 1`
/// * e. `E_n V_{n-1} = 2U_{2n}`, `n >= 1`
///
/// where `P W_j` means `P` applied to the sequence `W` at base index `j`.
pub fn check_relations(n_max: usize) -> Report {
    let seqs = Sequences::materialized(2 * n_max + 2);
    let u = seqs.cache(SequenceKind::FibonacciU);
    let v = seqs.cache(SequenceKind::LucasV);
    let mut report = Report::new();

    let mut relation = |label: &str, tag: OperatorTag, n: usize, lhs: Result<BivarPoly>, rhs: &BivarPoly| {
        let check = match lhs {
            Ok(lhs) => Check::from_bool(
                format!("relation {label} n={n}"),
                &lhs == rhs,
                format!("{tag:?}_{n} gives {lhs}, expected {rhs}"),
            ),
            Err(e) => Check::fail(format!("relation {label} n={n}"), e.to_string()),
        };
        report.push(check);
    };

    for n in 0..=n_max {
        let m = n as u32;
        let a = build_family(OperatorFamily::new(OperatorTag::A, m)).and_then(|op| op.apply(v, n));
        relation("a", OperatorTag::A, n, a, &u.values()[2 * n + 1].scale_int(2));
        let b = build_family(OperatorFamily::new(OperatorTag::B, m)).and_then(|op| op.apply(u, n));
        relation("b", OperatorTag::B, n, b, &BivarPoly::zero());
        if n == 0 {
            continue;
        }
        let c = build_family(OperatorFamily::new(OperatorTag::C, m)).and_then(|op| op.apply(u, n));
        relation("c", OperatorTag::C, n, c, &v.values()[2 * n - 1]);
        let d = build_family(OperatorFamily::new(OperatorTag::D, m))
            .and_then(|op| op.apply(v, n - 1));
        relation("d", OperatorTag::D, n, d, &BivarPoly::zero());
        let e = build_family(OperatorFamily::new(OperatorTag::E, m))
            .and_then(|op| op.apply(v, n - 1));
        relation("e", OperatorTag::E, n, e, &u.values()[2 * n].scale_int(2));
    }
    report
}

/// `(x-E)^k W_m = (-y)^k W_{m-k}` for both sequences and all `0 <= k <= m <= m_max`.
pub fn check_shift_law(m_max: usize) -> Report {
    let seqs = Sequences::materialized(2 * m_max + 1);
    let powers = x_minus_e_powers(m_max as u32);
    let mut report = Report::new();
    for kind in [SequenceKind::FibonacciU, SequenceKind::LucasV] {
        let cache = seqs.cache(kind);
        let letter = kind.letter();
        for m in 0..=m_max {
            for (k, power) in powers.iter().enumerate().take(m + 1) {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let rhs = cache.values()[m - k].mul_monomial(Monomial::new(0, k as u32)).scale_int(sign);
                let name = format!("lemma2.1 (x-E)^{k} {letter}_{m}");
                report.push(match power.apply(cache, m) {
                    Ok(lhs) => Check::from_bool(name, lhs == rhs, format!("{lhs} != {rhs}")),
                    Err(e) => Check::fail(name, e.to_string()),
                });
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::int;

    fn p(s: &str) -> BivarPoly {
        s.parse().unwrap()
    }

    #[test]
    fn operator_products() {
        let sq = &OperatorPoly::x_minus_e() * &OperatorPoly::x_minus_e();
        let expect = OperatorPoly::from_coeffs([(0, p("x^2")), (1, p("-2x")), (2, p("1"))]);
        assert_eq!(sq, expect);
        assert_eq!(&sq * &OperatorPoly::identity(), sq);

        // (E - x)(x - 2E) = -x^2 + 3x E - 2E^2
        let lhs = &OperatorPoly::e_minus_x()
            * &OperatorPoly::from_coeffs([(0, p("x")), (1, p("-2"))]);
        let expect = OperatorPoly::from_coeffs([(0, p("-x^2")), (1, p("3x")), (2, p("-2"))]);
        assert_eq!(lhs, expect);
    }

    #[test]
    fn apply_examples() {
        let u = SequenceCache::materialized(SequenceKind::FibonacciU, 10);
        let v = SequenceCache::materialized(SequenceKind::LucasV, 10);
        assert_eq!(OperatorPoly::shift(1).apply(&u, 3).unwrap(), p("x^3 + 2xy"));
        assert_eq!(
            OperatorPoly::x_minus_e().apply(&u, 5).unwrap(),
            p("-x^3y - 2xy^2")
        );
        let x_minus_2e = OperatorPoly::from_coeffs([(0, p("x")), (1, p("-2"))]);
        assert!(x_minus_2e.apply(&v, 0).unwrap().is_zero());
    }

    #[test]
    fn apply_past_cache_is_an_error() {
        let u = SequenceCache::materialized(SequenceKind::FibonacciU, 3);
        assert!(matches!(OperatorPoly::shift(2).apply(&u, 2), Err(Error::Index(_))));
    }

    #[test]
    fn build_family_examples() {
        let b0 = build_family(OperatorFamily::new(OperatorTag::B, 0)).unwrap();
        assert_eq!(b0, OperatorPoly::constant(BivarPoly::from_int(-1)));

        let d1 = build_family(OperatorFamily::new(OperatorTag::D, 1)).unwrap();
        assert_eq!(d1, OperatorPoly::from_coeffs([(0, p("x")), (1, p("-2"))]));

        let a2 = build_family(OperatorFamily::new(OperatorTag::A, 2)).unwrap();
        assert_eq!(
            a2.x_graded_coefficients(2, 3).unwrap(),
            vec![int(1), int(0), int(1)]
        );
    }

    #[test]
    fn build_family_rejects_out_of_domain() {
        for tag in [OperatorTag::C, OperatorTag::D, OperatorTag::E] {
            assert!(matches!(
                build_family(OperatorFamily::new(tag, 0)),
                Err(Error::Domain(_))
            ));
        }
    }

    #[test]
    fn relation_b_at_three() {
        let u = SequenceCache::materialized(SequenceKind::FibonacciU, 6);
        let b3 = build_family(OperatorFamily::new(OperatorTag::B, 3)).unwrap();
        assert!(b3.apply(&u, 3).unwrap().is_zero());
    }

    #[test]
    fn relation_c_at_two() {
        let mut s = Sequences::materialized(6);
        let c2 = build_family(OperatorFamily::new(OperatorTag::C, 2)).unwrap();
        let lhs = c2.apply(s.cache(SequenceKind::FibonacciU), 2).unwrap();
        let rhs = &s.u(4).scale_int(2) - &(&BivarPoly::x() * s.u(3));
        assert_eq!(lhs, rhs);
        assert_eq!(lhs, *s.v(3));
    }

    #[test]
    fn relations_hold_to_twelve() {
        let r = check_relations(12);
        assert!(r.all_passed(), "{:?}", r.failures().next());
        assert_eq!(r.len(), 13 * 2 + 12 * 3);
    }

    #[test]
    fn shift_law_small() {
        assert!(check_shift_law(10).all_passed());
    }

    #[test]
    fn x_graded_coefficients_rejects_other_shapes() {
        let op = OperatorPoly::from_coeffs([(0, p("x + y"))]);
        assert!(op.x_graded_coefficients(1, 2).is_err());
        assert!(OperatorPoly::shift(3).x_graded_coefficients(3, 2).is_err());
    }

    #[test]
    fn render_forms() {
        let sq = OperatorPoly::x_minus_e().pow(2);
        assert_eq!(sq.render(false), "(x^2)·E^0 + (-2x)·E^1 + (1)·E^2");
        assert_eq!(sq.render(true), "(1)·E^2 + (-2x)·E^1 + (x^2)·E^0");
        assert_eq!(OperatorPoly::zero().to_string(), "0");
    }

    /// The definitions block writes `E_m = (x A_{m-1} + D_m + 2 C_m)/2`; that
    /// reading does not reproduce the e-table, the `+ E^m` reading does.
    #[test]
    fn literal_e_definition_disagrees_with_table() {
        let m = 2;
        let a = build_family(OperatorFamily::new(OperatorTag::A, m - 1)).unwrap();
        let d = build_family(OperatorFamily::new(OperatorTag::D, m)).unwrap();
        let c = build_family(OperatorFamily::new(OperatorTag::C, m)).unwrap();
        let literal = (&(&a.mul_poly(&BivarPoly::x()) + &d)
            + &c.scale(&int(2)))
            .scale(&crate::poly::ratio(1, 2));
        let used = build_family(OperatorFamily::new(OperatorTag::E, m)).unwrap();
        assert_eq!(used.x_graded_coefficients(2, 2).unwrap(), vec![int(0), int(2)]);
        assert_ne!(literal, used);
    }
}
