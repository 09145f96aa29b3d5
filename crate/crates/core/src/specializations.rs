//! Chebyshev specializations and numeric evaluation.
//!
//! Under `x -> 2x`, `y -> -1` the recurrence `W_n = x W_{n-1} + y W_{n-2}`
//! becomes `W_n = 2x W_{n-1} - W_{n-2}`, so `V_n / 2` is the Chebyshev
//! polynomial `T_n` and `U_{n+1}` is the Chebyshev polynomial `U_n`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::coefficients::CoeffFamily;
use crate::error::Result;
use crate::poly::{ratio, BivarPoly, Monomial};
use crate::report::{Check, Report};
use crate::sequences::{SequenceKind, Sequences};

/// `p -> post_scale * p(x_image, y_image)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpecializationRule {
    pub name: String,
    pub x_image: BivarPoly,
    pub y_image: BivarPoly,
    pub post_scale: BigRational,
}

impl SpecializationRule {
    pub fn apply(&self, p: &BivarPoly) -> BivarPoly {
        p.substitute(&self.x_image, &self.y_image).scale(&self.post_scale)
    }

    pub fn chebyshev_t() -> Self {
        SpecializationRule {
            name: "chebyshev-T".into(),
            x_image: BivarPoly::term(2, 1, 0),
            y_image: BivarPoly::from_int(-1),
            post_scale: ratio(1, 2),
        }
    }

    pub fn chebyshev_u() -> Self {
        SpecializationRule {
            name: "chebyshev-U".into(),
            x_image: BivarPoly::term(2, 1, 0),
            y_image: BivarPoly::from_int(-1),
            post_scale: BigRational::one(),
        }
    }
}

/// Chebyshev `T_n(x) = V_n(2x, -1) / 2`.
pub fn chebyshev_t(n: usize) -> BivarPoly {
    let mut s = Sequences::new();
    SpecializationRule::chebyshev_t().apply(s.v(n))
}

/// Chebyshev `U_n(x) = U_{n+1}(2x, -1)`.
pub fn chebyshev_u(n: usize) -> BivarPoly {
    let mut s = Sequences::new();
    SpecializationRule::chebyshev_u().apply(s.u(n + 1))
}

/// `U_n(x0, y0)` or `V_n(x0, y0)`; at `(1, 1)` these are the Fibonacci and
/// Lucas numbers.
pub fn evaluate_numbers(kind: SequenceKind, n: usize, x0: i64, y0: i64) -> BigInt {
    let mut s = Sequences::new();
    let to_q = |v: i64| BigRational::from_integer(BigInt::from(v));
    s.term(kind, n).evaluate(&to_q(x0), &to_q(y0)).to_integer()
}

/// Checks that the substituted sequences obey the Chebyshev recurrences
/// and seeds for `n <= n_max`.
pub fn check_chebyshev(n_max: usize) -> Report {
    let mut s = Sequences::materialized(n_max + 2);
    let t_rule = SpecializationRule::chebyshev_t();
    let u_rule = SpecializationRule::chebyshev_u();
    let t: Vec<BivarPoly> = (0..=n_max).map(|n| t_rule.apply(s.v(n))).collect();
    let u: Vec<BivarPoly> = (0..=n_max).map(|n| u_rule.apply(s.u(n + 1))).collect();
    let two_x = BivarPoly::term(2, 1, 0);
    let mut report = Report::new();

    let seeds = [
        ("T_0 = 1", &t[0], BivarPoly::one()),
        ("U_0 = 1", &u[0], BivarPoly::one()),
    ];
    for (name, got, want) in seeds {
        report.push(Check::from_bool(format!("chebyshev {name}"), *got == want, format!("got {got}")));
    }
    if n_max >= 1 {
        report.push(Check::from_bool("chebyshev T_1 = x", t[1] == BivarPoly::x(), format!("got {}", t[1])));
        report.push(Check::from_bool("chebyshev U_1 = 2x", u[1] == two_x, format!("got {}", u[1])));
    }
    for n in 2..=n_max {
        for (letter, seq) in [('T', &t), ('U', &u)] {
            let want = &(&two_x * &seq[n - 1]) - &seq[n - 2];
            report.push(Check::from_bool(
                format!("chebyshev {letter}_{n} = 2x{letter}_{} - {letter}_{}", n - 1, n - 2),
                seq[n] == want,
                format!("got {}, recurrence gives {want}", seq[n]),
            ));
        }
    }
    report
}

/// Pushes every row identity with `n <= n_max` through `(x, y) -> (2x, -1)`
/// and checks it as an identity among Chebyshev polynomials, with
/// `U_m -> U^cheb_{m-1}` and `V_m -> 2 T^cheb_m`.
pub fn check_theorem_transfer(n_max: usize) -> Report {
    let mut report = Report::new();
    let top = 2 * n_max + 2;
    let mut s = Sequences::materialized(top);
    let t_rule = SpecializationRule::chebyshev_t();
    let u_rule = SpecializationRule::chebyshev_u();
    let image = |kind: SequenceKind, i: usize, s: &mut Sequences| -> BivarPoly {
        match kind {
            SequenceKind::FibonacciU if i == 0 => BivarPoly::zero(),
            SequenceKind::FibonacciU => u_rule.apply(s.u(i)),
            SequenceKind::LucasV => t_rule.apply(s.v(i)).scale_int(2),
        }
    };
    for family in CoeffFamily::ALL {
        for n in family.min_n().max(1)..=n_max {
            let name = format!("chebyshev transfer {} n={n}", family.name().to_uppercase());
            let result = (|| -> Result<bool> {
                let (mult, target) = family.target(n);
                let lhs = image(target.kind, target.index, &mut s).scale_int(mult);
                let spec = family.basis(n);
                let mut rhs = BivarPoly::zero();
                for k in 0..family.identity_width(n) {
                    let (xp, term) = spec.element(k).expect("special basis");
                    let c = BigRational::from_integer(family.closed(n, k)?);
                    let two_x_pow = BivarPoly::monomial(
                        BigRational::from_integer(BigInt::from(2).pow(xp)),
                        Monomial::new(xp, 0),
                    );
                    rhs += &(&two_x_pow * &image(term.kind, term.index, &mut s)).scale(&c);
                }
                Ok(lhs == rhs)
            })();
            report.push(match result {
                Ok(ok) => Check::from_bool(name, ok, "sides differ after substitution"),
                Err(e) => Check::fail(name, e.to_string()),
            });
        }
    }
    report
}

/// Substitutes `(x, y) -> (x_image, y_image)` into both sides of every row
/// identity with `n <= n_max`. Substitution is a ring map, so this holds for
/// any images; it exercises the identities away from the generic point.
pub fn check_substitution_transfer(n_max: usize, x_image: &BivarPoly, y_image: &BivarPoly) -> Report {
    let mut report = Report::new();
    let mut s = Sequences::materialized(2 * n_max + 2);
    for family in CoeffFamily::ALL {
        for n in family.min_n().max(1)..=n_max {
            let name = format!(
                "substitution ({x_image}, {y_image}) {} n={n}",
                family.name().to_uppercase()
            );
            let result = (|| -> Result<bool> {
                let (mult, target) = family.target(n);
                let lhs = target.eval(&mut s).scale_int(mult).substitute(x_image, y_image);
                let spec = family.basis(n);
                let mut rhs = BivarPoly::zero();
                for k in 0..family.identity_width(n) {
                    let (xp, term) = spec.element(k).expect("special basis");
                    let c = BigRational::from_integer(family.closed(n, k)?);
                    let v = term.eval(&mut s).mul_monomial(Monomial::new(xp, 0));
                    rhs += &v.substitute(x_image, y_image).scale(&c);
                }
                Ok(lhs == rhs)
            })();
            report.push(match result {
                Ok(ok) => Check::from_bool(name, ok, "sides differ after substitution"),
                Err(e) => Check::fail(name, e.to_string()),
            });
        }
    }
    report
}
