//! The canonical basis `C_m = (x^{m-2k} y^k)_k` and the four Fibonacci/Lucas
//! families built from shifted sequence terms:
//!
//! | family  | vectors                             | space       |
//! |---------|-------------------------------------|-------------|
//! | `BU`    | `x^{n-k} U_{n+k+1}`, `0 <= k <= n`  | `E_{2n}`    |
//! | `BV`    | `x^{n-k} V_{n+k}`, `0 <= k <= n`    | `E_{2n}`    |
//! | `BUstar`| `x^{n-k} U_{n+k}`, `0 <= k < n`     | `E_{2n-1}`  |
//! | `BVstar`| `x^{n-k} V_{n+k-1}`, `0 <= k < n`   | `E_{2n-1}`  |
//!
//! Coordinates over any of them are found by an exact linear solve against the
//! canonical coordinates, which makes [`decompose`] an oracle independent of
//! the closed-form coefficient formulas.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::matrix::RationalMatrix;
use crate::poly::{BivarPoly, Monomial};
use crate::report::{Check, Report};
use crate::sequences::{SequenceKind, SequenceTerm, Sequences};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BasisFamily {
    Canonical,
    BU,
    BV,
    BUstar,
    BVstar,
}

impl BasisFamily {
    pub const SPECIAL: [BasisFamily; 4] = [
        BasisFamily::BU,
        BasisFamily::BV,
        BasisFamily::BUstar,
        BasisFamily::BVstar,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BasisFamily::Canonical => "C",
            BasisFamily::BU => "BU",
            BasisFamily::BV => "BV",
            BasisFamily::BUstar => "BUstar",
            BasisFamily::BVstar => "BVstar",
        }
    }

    pub fn is_starred(self) -> bool {
        matches!(self, BasisFamily::BUstar | BasisFamily::BVstar)
    }

    /// Sequence the basis vectors are drawn from.
    pub fn sequence(self) -> Option<SequenceKind> {
        match self {
            BasisFamily::Canonical => None,
            BasisFamily::BU | BasisFamily::BUstar => Some(SequenceKind::FibonacciU),
            BasisFamily::BV | BasisFamily::BVstar => Some(SequenceKind::LucasV),
        }
    }

    /// Smallest valid order; the starred families are empty at `n = 0`.
    pub fn min_order(self) -> u32 {
        if self.is_starred() {
            1
        } else {
            0
        }
    }

    /// Determinant over the canonical basis.
    pub fn expected_det(self) -> i64 {
        match self {
            BasisFamily::Canonical | BasisFamily::BU | BasisFamily::BUstar => 1,
            BasisFamily::BV | BasisFamily::BVstar => 2,
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for BasisFamily {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl FromStr for BasisFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .chars()
            .filter(|c| !matches!(c, '_' | '-'))
            .collect::<String>()
            .to_ascii_lowercase();
        Ok(match norm.as_str() {
            "c" | "canonical" => BasisFamily::Canonical,
            "bu" => BasisFamily::BU,
            "bv" => BasisFamily::BV,
            "bustar" | "bu*" => BasisFamily::BUstar,
            "bvstar" | "bv*" => BasisFamily::BVstar,
            _ => {
                return Err(Error::Parse {
                    pos: 0,
                    msg: format!("unknown basis family {s:?}"),
                })
            }
        })
    }
}

/// A family together with its order. For `Canonical`, `n` is the degree `m`
/// of `C_m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BasisSpec {
    pub family: BasisFamily,
    pub n: u32,
}

impl BasisSpec {
    pub fn new(family: BasisFamily, n: u32) -> Self {
        BasisSpec { family, n }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < self.family.min_order() {
            return Err(Error::Domain(format!(
                "{} needs n >= {}, got {}",
                self.family,
                self.family.min_order(),
                self.n
            )));
        }
        Ok(())
    }

    /// Degree `m` of the space `E_m` the vectors live in.
    pub fn ambient_degree(&self) -> u32 {
        match self.family {
            BasisFamily::Canonical => self.n,
            BasisFamily::BU | BasisFamily::BV => 2 * self.n,
            BasisFamily::BUstar | BasisFamily::BVstar => (2 * self.n).saturating_sub(1),
        }
    }

    pub fn len(&self) -> usize {
        match self.family {
            BasisFamily::Canonical => (self.n / 2) as usize + 1,
            BasisFamily::BU | BasisFamily::BV => self.n as usize + 1,
            BasisFamily::BUstar | BasisFamily::BVstar => self.n as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Vector `k` as `(power of x, sequence term)`; `None` for `Canonical`.
    pub fn element(&self, k: usize) -> Option<(u32, SequenceTerm)> {
        let n = self.n as usize;
        let kind = self.family.sequence()?;
        let index = match self.family {
            BasisFamily::BU => n + k + 1,
            BasisFamily::BV | BasisFamily::BUstar => n + k,
            BasisFamily::BVstar => n + k - 1,
            BasisFamily::Canonical => unreachable!(),
        };
        Some(((n - k) as u32, SequenceTerm::new(kind, index)))
    }

    /// Highest sequence index any vector uses.
    pub fn max_index(&self) -> usize {
        let n = self.n as usize;
        match self.family {
            BasisFamily::Canonical => 0,
            BasisFamily::BU => 2 * n + 1,
            BasisFamily::BV => 2 * n,
            BasisFamily::BUstar => 2 * n - 1,
            BasisFamily::BVstar => 2 * n - 2,
        }
    }
}

impl fmt::Display for BasisSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.family, self.n)
    }
}

/// The basis vectors in ascending `k`.
pub fn build_basis(spec: BasisSpec, seqs: &mut Sequences) -> Result<Vec<BivarPoly>> {
    spec.validate()?;
    if spec.family == BasisFamily::Canonical {
        let m = spec.n;
        return Ok((0..=m / 2)
            .map(|k| BivarPoly::term(1, m - 2 * k, k))
            .collect());
    }
    seqs.extend_to(spec.max_index());
    Ok((0..spec.len())
        .map(|k| {
            let (xp, term) = spec.element(k).unwrap();
            seqs.term(term.kind, term.index)
                .mul_monomial(Monomial::new(xp, 0))
        })
        .collect())
}

/// Column `k` holds the canonical coordinates of basis vector `k`; rows follow
/// `C_m` in ascending `k`.
pub fn coordinate_matrix(spec: BasisSpec, seqs: &mut Sequences) -> Result<RationalMatrix> {
    spec.validate()?;
    let m = spec.ambient_degree();
    let cols = build_basis(spec, seqs)?
        .iter()
        .map(|v| v.coordinates_canonical(m))
        .collect::<Result<Vec<_>>>()?;
    let mat = RationalMatrix::from_columns(cols)?;
    if !mat.is_square() {
        return Err(Error::Internal(format!(
            "{spec} gives a {}x{} coordinate matrix",
            mat.rows(),
            mat.cols()
        )));
    }
    Ok(mat)
}

pub fn det_exact(m: &RationalMatrix) -> Result<BigRational> {
    m.det()
}

/// Determinant of a family's coordinate matrix by repeated column
/// telescoping: replacing each column `W_j` by `W_j - W_{j-1}` turns it into
/// `y` times a vector of the next-smaller basis, the first row becomes
/// `(p, 0, ..., 0)` and the trailing minor is the coordinate matrix of the
/// same family one order down. Verifies both facts at every step and returns
/// the product of the `p`s times the base determinant.
pub fn telescoping_det(spec: BasisSpec, seqs: &mut Sequences) -> Result<BigRational> {
    spec.validate()?;
    if spec.family == BasisFamily::Canonical {
        return Ok(BigRational::one());
    }
    let base = spec.family.min_order();
    let mut acc = BigRational::one();
    let mut n = spec.n;
    while n > base {
        let mat = coordinate_matrix(BasisSpec::new(spec.family, n), seqs)?;
        let size = mat.cols();
        let mut stepped = mat.clone();
        for j in (1..size).rev() {
            for i in 0..mat.rows() {
                stepped.set(i, j, mat.get(i, j) - mat.get(i, j - 1));
            }
        }
        if stepped.row(0)[1..].iter().any(|v| !v.is_zero()) {
            return Err(Error::Internal(format!(
                "telescoped {} has a non-zero leading row beyond column 0",
                BasisSpec::new(spec.family, n)
            )));
        }
        let minor = stepped.trailing_minor(1, 1);
        let smaller = coordinate_matrix(BasisSpec::new(spec.family, n - 1), seqs)?;
        if minor != smaller {
            return Err(Error::Internal(format!(
                "telescoped minor of {} differs from the order {} matrix",
                BasisSpec::new(spec.family, n),
                n - 1
            )));
        }
        acc *= stepped.get(0, 0).clone();
        n -= 1;
    }
    Ok(acc * coordinate_matrix(BasisSpec::new(spec.family, base), seqs)?.det()?)
}

/// Coordinates of `target` over one basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub target: BivarPoly,
    #[serde(flatten)]
    pub basis: BasisSpec,
    #[serde(serialize_with = "serialize_rationals")]
    pub coords: Vec<BigRational>,
}

fn serialize_rationals<S: Serializer>(
    v: &[BigRational],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl Decomposition {
    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|c| c.is_integer())
    }

    pub fn integer_coords(&self) -> Option<Vec<BigInt>> {
        self.coords
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Smallest positive integer `d` with `d * coords` integral.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decompositions always serialize")
    }

    /// Renders `mult*W_i = c_0 x^n W_.. + ...`, clearing denominators into
    /// the left-hand multiplier. Zero coordinates are omitted.
    pub fn render_identity(&self, target: SequenceTerm) -> String {
        let d = self.denominator_lcm();
        let lhs = if d.is_one() {
            target.to_string()
        } else {
            format!("{d}{target}")
        };
        let scale = BigRational::from_integer(d);
        let mut rhs = String::new();
        for (k, c) in self.coords.iter().enumerate() {
            let c = c * &scale;
            if c.is_zero() {
                continue;
            }
            let vector = match self.basis.element(k) {
                Some((0, term)) => term.to_string(),
                Some((1, term)) => format!("x {term}"),
                Some((p, term)) => format!("x^{p} {term}"),
                None => {
                    let k = k as u32;
                    Monomial::new(self.basis.n - 2 * k, k).to_string()
                }
            };
            let mag = c.abs().to_integer();
            let sign = c.is_negative();
            if rhs.is_empty() {
                if sign {
                    rhs.push('-');
                }
            } else {
                rhs.push_str(if sign { " - " } else { " + " });
            }
            match (mag.is_one(), vector.as_str()) {
                (true, "1") => rhs.push('1'),
                (true, _) => {}
                (false, _) => rhs.push_str(&mag.to_string()),
            }
            if vector != "1" {
                rhs.push_str(&vector);
            }
        }
        if rhs.is_empty() {
            rhs.push('0');
        }
        format!("{lhs} = {rhs}")
    }
}

/// Determinants of the four special bases for `1 <= n <= n_max`, one check
/// each, named like `lemma1 det(BV,3) = 2`.
pub fn check_lemma1(n_max: u32) -> Report {
    let mut seqs = Sequences::new();
    let mut report = Report::new();
    for n in 1..=n_max {
        for family in BasisFamily::SPECIAL {
            let spec = BasisSpec::new(family, n);
            let want = family.expected_det();
            let name = format!("lemma1 det({family},{n}) = {want}");
            let got = coordinate_matrix(spec, &mut seqs).and_then(|m| det_exact(&m));
            report.push(match got {
                Ok(d) => Check::from_bool(name, d == BigRational::from_integer(want.into()), format!("got {d}")),
                Err(e) => Check::fail(name, e.to_string()),
            });
        }
    }
    report
}

/// Exact coordinates of `target` over `spec` by solving
/// `coordinate_matrix(spec) * coords = coordinates_canonical(target)`. The
/// result is re-expanded and compared with `target`.
pub fn decompose(target: &BivarPoly, spec: BasisSpec, seqs: &mut Sequences) -> Result<Decomposition> {
    if spec.family == BasisFamily::Canonical {
        spec.validate()?;
        let coords = target.coordinates_canonical(spec.n)?;
        return Ok(Decomposition {
            target: target.clone(),
            basis: spec,
            coords,
        });
    }
    let basis = build_basis(spec, seqs)?;
    let mat = coordinate_matrix(spec, seqs)?;
    let rhs = target.coordinates_canonical(spec.ambient_degree())?;
    let coords = mat.solve(&rhs).map_err(|e| match e {
        Error::SingularMatrix => Error::Internal(format!("{spec} coordinate matrix is singular")),
        other => other,
    })?;
    let mut rebuilt = BivarPoly::zero();
    for (c, v) in coords.iter().zip(&basis) {
        rebuilt += &v.scale(c);
    }
    if &rebuilt != target {
        return Err(Error::Internal(format!(
            "decomposition over {spec} leaves a non-zero residual"
        )));
    }
    Ok(Decomposition {
        target: target.clone(),
        basis: spec,
        coords,
    })
}

/// Picks the order `n` at which `term` lives in the space spanned by `family`.
///
/// `U_{2n+1}` and `V_{2n}` lie in `E_{2n}` (bases `BU`, `BV`); `U_{2n}` and
/// `V_{2n-1}` lie in `E_{2n-1}` (bases `BUstar`, `BVstar`, `n >= 1`).
pub fn pairing(term: SequenceTerm, family: BasisFamily) -> Result<BasisSpec> {
    let i = term.index;
    let degree = match term.kind {
        SequenceKind::FibonacciU if i == 0 => None,
        SequenceKind::FibonacciU => Some(i - 1),
        SequenceKind::LucasV => Some(i),
    };
    let incompatible = |why: String| Err(Error::IncompatiblePairing(why));
    let Some(degree) = degree else {
        return incompatible(format!(
            "{term} is the zero polynomial and lies in no E_m with a special basis"
        ));
    };
    let degree = u32::try_from(degree)
        .map_err(|_| Error::IncompatiblePairing(format!("{term}: index too large")))?;
    match family {
        BasisFamily::Canonical => Ok(BasisSpec::new(family, degree)),
        BasisFamily::BU | BasisFamily::BV => {
            if degree % 2 == 0 {
                Ok(BasisSpec::new(family, degree / 2))
            } else {
                incompatible(format!(
                    "{term} lies in E_{degree} (odd); {family} spans E_2n, use BUstar or BVstar"
                ))
            }
        }
        BasisFamily::BUstar | BasisFamily::BVstar => {
            if degree % 2 == 1 {
                Ok(BasisSpec::new(family, degree.div_ceil(2)))
            } else {
                incompatible(format!(
                    "{term} lies in E_{degree} (even); {family} spans E_2n-1, use BU or BV"
                ))
            }
        }
    }
}
