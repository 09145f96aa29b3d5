//! Checks against values computed independently here: integer recurrences,
//! binomials from Pascal's rule, and plain Fibonacci numbers.

use bifib_core::bases::{coordinate_matrix, decompose, det_exact, telescoping_det};
use bifib_core::coefficients::{self, CoeffFamily};
use bifib_core::operators::{build_family, OperatorFamily, OperatorTag};
use bifib_core::poly::int;
use bifib_core::sequences::{u_poly_closed, v_poly_closed};
use bifib_core::{BasisFamily, BasisSpec, Sequences};
use num_bigint::BigInt;
use num_rational::BigRational;

fn fib_lucas(n: usize) -> (Vec<i64>, Vec<i64>) {
    let mut f = vec![0i64, 1];
    let mut l = vec![2i64, 1];
    for i in 2..=n {
        f.push(f[i - 1] + f[i - 2]);
        l.push(l[i - 1] + l[i - 2]);
    }
    (f, l)
}

fn pascal(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows = vec![vec![BigInt::from(1)]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![BigInt::from(1)];
        for k in 1..i {
            row.push(&prev[k - 1] + &prev[k]);
        }
        row.push(BigInt::from(1));
        rows.push(row);
    }
    rows
}

#[test]
fn sequences_match_closed_forms_to_100() {
    let mut s = Sequences::materialized(101);
    for n in 1..=100 {
        assert_eq!(&u_poly_closed(n).unwrap(), s.u(n), "U_{n}");
        assert_eq!(&v_poly_closed(n).unwrap(), s.v(n), "V_{n}");
    }
}

#[test]
fn coefficients_nonnegative_and_weighted() {
    let mut s = Sequences::materialized(101);
    for n in 0..=100usize {
        for (p, w) in [(s.u(n + 1).clone(), n as u64), (s.v(n).clone(), n as u64)] {
            assert!(p.terms().all(|(m, c)| c.is_integer() && *c > int(0) && m.weight() == w));
            assert_eq!(p.weight(), Some(w));
        }
    }
}

#[test]
fn fibonacci_and_lucas_anchors() {
    let (f, l) = fib_lucas(30);
    let mut s = Sequences::materialized(30);
    for n in 0..=30 {
        assert_eq!(s.u(n).evaluate(&int(1), &int(1)), int(f[n]), "F_{n}");
        assert_eq!(s.v(n).evaluate(&int(1), &int(1)), int(l[n]), "L_{n}");
    }
}

#[test]
fn basis_determinants_to_20() {
    let mut s = Sequences::new();
    for n in 1..=20u32 {
        for family in BasisFamily::SPECIAL {
            let spec = BasisSpec::new(family, n);
            let m = coordinate_matrix(spec, &mut s).unwrap();
            let want = int(family.expected_det());
            assert_eq!(det_exact(&m).unwrap(), want, "{spec}");
        }
    }
    for n in 1..=10u32 {
        for family in BasisFamily::SPECIAL {
            let spec = BasisSpec::new(family, n);
            assert_eq!(telescoping_det(spec, &mut s).unwrap(), int(family.expected_det()), "{spec}");
        }
    }
}

#[test]
fn decompositions_integral_and_equal_to_closed_rows() {
    let mut s = Sequences::new();
    for family in CoeffFamily::ALL {
        for n in family.min_n().max(1)..=30 {
            let (mult, term) = family.target(n);
            let target = term.eval(&mut s).scale_int(mult);
            let d = decompose(&target, family.basis(n), &mut s).unwrap();
            assert!(d.is_integral(), "{family} n={n}");
            let closed: Vec<BigRational> = (0..family.identity_width(n))
                .map(|k| BigRational::from_integer(family.closed(n, k).unwrap()))
                .collect();
            assert_eq!(d.coords, closed, "{family} n={n}");
        }
    }
}

#[test]
fn closed_forms_against_pascal() {
    let c = pascal(61);
    for n in 0..=60usize {
        for k in 0..=n {
            let sign = if (n - k + 1) % 2 == 0 { 1 } else { -1 };
            let b = coefficients::b_closed(n, k).unwrap();
            assert_eq!(b, &c[n][k] * sign, "b_{n},{k}");
            if n >= 1 {
                let delta = i64::from(n - 1 == k);
                assert_eq!(coefficients::c_closed(n, k).unwrap(), &b * 2 - delta, "c_{n},{k}");
                // d_{n,k} = sign (n+k)/n C(n,k) = sign (C(n,k) + C(n-1,k-1))
                let extra = if k == 0 { BigInt::from(0) } else { c[n - 1][k - 1].clone() };
                assert_eq!(coefficients::d_closed(n, k).unwrap(), (&c[n][k] + extra) * sign, "d_{n},{k}");
            }
        }
        if n >= 1 {
            assert_eq!(coefficients::b_closed(n, n).unwrap(), BigInt::from(-1));
            assert_eq!(coefficients::a_closed(n, n).unwrap(), BigInt::from(1));
        }
    }
}

#[test]
fn e_is_mean_of_a_and_d() {
    for n in 1..=60usize {
        for k in 0..=n {
            let a_prev = if k < n { coefficients::a_closed(n - 1, k).unwrap() } else { BigInt::from(0) };
            let sum = a_prev + coefficients::d_closed(n, k).unwrap();
            assert_eq!(&sum % 2, BigInt::from(0));
            let want = sum / 2 + i64::from(n == k);
            assert_eq!(coefficients::e_closed(n, k).unwrap(), want, "e_{n},{k}");
        }
    }
}

#[test]
fn fibonacci_numbers_through_b() {
    let (f, _) = fib_lucas(40);
    // the k = n column is the closing seed and takes no part in the identity
    for n in 1..=20usize {
        let sum: BigInt = (0..n)
            .map(|k| coefficients::b_closed(n, k).unwrap() * f[n + k])
            .sum();
        assert_eq!(sum, BigInt::from(f[2 * n]), "F_{}", 2 * n);
    }
}

#[test]
fn operator_expansions_match_closed_forms() {
    let tags = [
        (OperatorTag::A, CoeffFamily::A),
        (OperatorTag::B, CoeffFamily::B),
        (OperatorTag::C, CoeffFamily::C),
        (OperatorTag::D, CoeffFamily::D),
        (OperatorTag::E, CoeffFamily::E),
    ];
    for (tag, family) in tags {
        for m in tag.min_order()..=40 {
            let op = build_family(OperatorFamily::new(tag, m)).unwrap();
            let got = op.x_graded_coefficients(m, m as usize + 1).unwrap();
            for (k, g) in got.iter().enumerate() {
                let want = match (family, k == m as usize) {
                    (CoeffFamily::C | CoeffFamily::E, true) => int(0),
                    _ => BigRational::from_integer(family.closed(m as usize, k).unwrap()),
                };
                assert_eq!(g, &want, "{tag:?}_{m} at E^{k}");
            }
            if tag == OperatorTag::E {
                assert!(op.coeffs().all(|(_, p)| p.is_integral()), "E_{m}");
            }
        }
    }
}

#[test]
fn closed_and_recurrence_agree_to_100() {
    for family in CoeffFamily::ALL {
        let r = coefficients::closed_vs_recurrence(family, 100);
        assert!(r.all_passed(), "{:?}", r.failures().next());
    }
}
