//! Acceptance suite: eight criteria, one PASS/FAIL line each, all exact.
//!
//! Run with `cargo test -p bifib-cli --test acceptance -- --nocapture` to see
//! the lines.

use std::path::PathBuf;
use std::process::Command;
use std::time::{Duration, Instant};

use bifib_core::bases::{self, build_basis, decompose};
use bifib_core::coefficients::{self, closed_triangle};
use bifib_core::operators::{check_relations, check_shift_law};
use bifib_core::poly::{int, BivarPoly, Monomial};
use bifib_core::sequences::{u_poly, u_poly_closed, v_poly, v_poly_closed};
use bifib_core::specializations::{check_chebyshev, check_substitution_transfer, check_theorem_transfer};
use bifib_core::{BasisFamily, BasisSpec, CoeffFamily, Report, Sequences};
use num_rational::BigRational;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};

struct Outcome {
    passed: bool,
    detail: String,
}

fn from_report(r: &Report) -> Outcome {
    let failed: Vec<String> = r
        .failures()
        .take(3)
        .map(|c| format!("{}: {}", c.name, c.detail))
        .collect();
    Outcome {
        passed: r.all_passed() && !r.is_empty(),
        detail: if failed.is_empty() {
            format!("{} checks", r.len())
        } else {
            failed.join("; ")
        },
    }
}

fn golden_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

fn table_reproduction() -> Outcome {
    let mut bad = Vec::new();
    for (family, n) in [("a", 8), ("b", 5), ("c", 5), ("d", 6), ("e", 6)] {
        let out = Command::new(env!("CARGO_BIN_EXE_bifib"))
            .args(["table", family, &n.to_string()])
            .output()
            .expect("bifib runs");
        let want = std::fs::read(golden_dir().join(format!("table_{family}_{n}.txt"))).unwrap();
        if !out.status.success() || out.stdout != want {
            bad.push(format!("table {family} {n}"));
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "5 tables byte-identical".into() } else { bad.join(", ") },
    }
}

fn lemma1_determinants() -> Outcome {
    from_report(&bases::check_lemma1(20))
}

fn theorem_identities() -> Outcome {
    let mut s = Sequences::new();
    let mut r = Report::new();
    for family in CoeffFamily::ALL {
        r.extend(coefficients::cross_check(family, 30, &mut s));
    }
    from_report(&r)
}

fn closed_equals_recurrence() -> Outcome {
    let mut r = Report::new();
    for family in CoeffFamily::ALL {
        r.extend(coefficients::closed_vs_recurrence(family, 100));
        if let Err(e) = closed_triangle(family, 100) {
            return Outcome { passed: false, detail: e.to_string() };
        }
    }
    from_report(&r)
}

fn operator_relations() -> Outcome {
    let mut r = check_relations(40);
    r.extend(check_shift_law(60));
    from_report(&r)
}

fn sequence_closed_forms() -> Outcome {
    let mut bad = Vec::new();
    for n in 1..=100 {
        if u_poly_closed(n).ok() != Some(u_poly(n)) {
            bad.push(format!("U_{n}"));
        }
        if v_poly_closed(n).ok() != Some(v_poly(n)) {
            bad.push(format!("V_{n}"));
        }
    }
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "n <= 100".into() } else { bad.join(", ") },
    }
}

fn chebyshev_transfer() -> Outcome {
    // The correspondence needs y -> -1; the row identities survive any
    // substitution, so they are also checked under (2x, 1).
    let mut r = check_chebyshev(40);
    r.extend(check_theorem_transfer(15));
    r.extend(check_substitution_transfer(15, &BivarPoly::term(2, 1, 0), &BivarPoly::one()));
    from_report(&r)
}

fn small_poly() -> impl Strategy<Value = BivarPoly> {
    prop::collection::vec((-9i64..=9, 0u32..=6, 0u32..=6), 0..6).prop_map(|ts| {
        BivarPoly::from_terms(ts.into_iter().map(|(c, a, b)| (Monomial::new(a, b), int(c))))
    })
}

fn property_suite() -> Outcome {
    let cases = 1000;
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    let mut results = Vec::new();

    results.push((
        "ring axioms",
        runner.run(&(small_poly(), small_poly(), small_poly()), |(p, q, r)| {
            prop_assert_eq!(&(&p + &q) + &r, &p + &(&q + &r));
            prop_assert_eq!(&(&p * &q) * &r, &p * &(&q * &r));
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &q, &q * &p);
            prop_assert_eq!(&p * &(&q + &r), &(&p * &q) + &(&p * &r));
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let families = prop::sample::select(BasisFamily::SPECIAL.to_vec());
    results.push((
        "decomposition round trip",
        runner.run(
            &(families, 1u32..=12, prop::collection::vec(-9i64..=9, 13)),
            |(family, n, seed)| {
                let spec = BasisSpec::new(family, n);
                let mut s = Sequences::new();
                let basis = build_basis(spec, &mut s).unwrap();
                let v: Vec<BigRational> = seed[..basis.len()].iter().map(|&c| int(c)).collect();
                let mut target = BivarPoly::zero();
                for (b, c) in basis.iter().zip(&v) {
                    target += &b.scale(c);
                }
                prop_assert_eq!(decompose(&target, spec, &mut s).unwrap().coords, v);
                Ok(())
            },
        )
        .map_err(|e| e.to_string()),
    ));

    let mut seqs = Sequences::materialized(101);
    let anchors: Vec<(BivarPoly, BivarPoly)> = (0..=30).map(|n| (seqs.u(n).clone(), seqs.v(n).clone())).collect();
    let weights: Vec<(BivarPoly, BivarPoly)> =
        (0..=100).map(|n| (seqs.u(n + 1).clone(), seqs.v(n).clone())).collect();
    results.push((
        "homogeneity weight",
        runner.run(&(0usize..=100), |n| {
            let (u, v) = &weights[n];
            prop_assert!(u.terms().all(|(m, _)| m.weight() == n as u64));
            prop_assert!(v.terms().all(|(m, _)| m.weight() == n as u64));
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let (mut f, mut l) = (vec![0i64, 1], vec![2i64, 1]);
    for i in 2..=30 {
        f.push(f[i - 1] + f[i - 2]);
        l.push(l[i - 1] + l[i - 2]);
    }
    results.push((
        "Fibonacci/Lucas anchors",
        runner.run(&(0usize..=30), |n| {
            let (u, v) = &anchors[n];
            prop_assert_eq!(u.evaluate(&int(1), &int(1)), int(f[n]));
            prop_assert_eq!(v.evaluate(&int(1), &int(1)), int(l[n]));
            Ok(())
        })
        .map_err(|e| e.to_string()),
    ));

    let failed: Vec<String> = results
        .iter()
        .filter_map(|(name, r)| r.as_ref().err().map(|e| format!("{name}: {e}")))
        .collect();
    Outcome {
        passed: failed.is_empty(),
        detail: if failed.is_empty() {
            format!("{} properties x {cases} cases", results.len())
        } else {
            failed.join("; ")
        },
    }
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);
    let criteria: [Criterion; 8] = [
        ("1 table reproduction", table_reproduction, Some(Duration::from_secs(1))),
        ("2 basis determinants n<=20", lemma1_determinants, Some(Duration::from_secs(10))),
        ("3 decomposition identities n<=30", theorem_identities, Some(Duration::from_secs(60))),
        ("4 closed form = recurrence n<=100", closed_equals_recurrence, Some(Duration::from_secs(10))),
        ("5 operator relations and shift law", operator_relations, Some(Duration::from_secs(30))),
        ("6 sequence closed forms n<=100", sequence_closed_forms, None),
        ("7 Chebyshev transfer", chebyshev_transfer, None),
        ("8 property suite", property_suite, None),
    ];
    let mut all_ok = true;
    for (name, run, limit) in criteria {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed < l);
        let ok = outcome.passed && in_time;
        all_ok &= ok;
        let budget = limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
        println!(
            "{} criterion {name}: {} ({:.2}s{budget})",
            if ok { "PASS" } else { "FAIL" },
            outcome.detail,
            elapsed.as_secs_f64()
        );
    }
    assert!(all_ok, "acceptance criteria failed");
}
