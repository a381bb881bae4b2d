use super::*;
use crate::exactnum::rational;
use proptest::prelude::*;

fn qn(s: &str) -> QuadraticNumber {
    s.parse().unwrap()
}

fn params(alpha: &str, rho: &str, branch: Branch) -> SturmianParams {
    SturmianParams::new(qn(alpha), qn(rho), branch).unwrap()
}

fn golden() -> SturmianParams {
    params("(sqrt(5) - 1)/2", "1/2", Branch::Upper)
}

#[test]
fn parameter_validation() {
    assert!(SturmianParams::new(qn("1/2"), qn("0"), Branch::Upper).is_err());
    assert!(SturmianParams::new(qn("sqrt(2)"), qn("0"), Branch::Upper).is_err());
    assert!(SturmianParams::new(qn("sqrt(2) - 1"), qn("1"), Branch::Upper).is_err());
    assert!(SturmianParams::new(qn("sqrt(2) - 1"), qn("sqrt(3) - 1"), Branch::Upper).is_err());
    // nonsingular intercepts forget the branch
    let p = params("sqrt(2) - 1", "1/3", Branch::Lower);
    assert_eq!(p.branch(), Branch::Upper);
    let p = params("sqrt(2) - 1", "0", Branch::Lower);
    assert_eq!(p.branch(), Branch::Lower);
    assert_eq!(p.singular_index(), Some(BigInt::from(0)));
    // alpha + rho = 1
    let p = params("sqrt(2) - 1", "2 - sqrt(2)", Branch::Upper);
    assert_eq!(p.singular_index(), Some(BigInt::from(1)));
}

#[test]
fn telescoping_prefix_sums() {
    for p in [golden(), params("sqrt(3) - 1", "0", Branch::Lower)] {
        let mut sum = 0i64;
        for big_n in 1..200 {
            sum += sturmian_symbol(&p, big_n) as i64;
            assert_eq!(BigInt::from(sum), ones_in_prefix(&p, big_n));
        }
    }
}

#[test]
fn golden_block() {
    let w = sturmian_block(&golden(), 0, 20);
    // direct evaluation with floats as an independent oracle
    let a = (5f64.sqrt() - 1.0) / 2.0;
    let expect: Vec<u8> = (0..20)
        .map(|n| ((n as f64 * a + 0.5).ceil() - ((n - 1) as f64 * a + 0.5).ceil()) as u8)
        .collect();
    assert_eq!(w.symbols, expect);
    assert_eq!(w.to_string(), "11010110110101101101");
    let ones = w.count(1) as f64;
    assert!((ones / 20.0 - a).abs() < 1.0 / 20.0);
}

#[test]
fn branches_differ_in_two_symbols() {
    for (alpha, rho) in [("sqrt(2) - 1", "0"), ("(3 - sqrt(5))/2", "sqrt(5) - 2")] {
        let up = params(alpha, rho, Branch::Upper);
        let lo = up.with_branch(Branch::Lower);
        let n0 = up.singular_index().unwrap().to_i64().unwrap();
        let a = sturmian_block(&up, n0 - 30, n0 + 30);
        let b = sturmian_block(&lo, n0 - 30, n0 + 30);
        let diff: Vec<i64> = (n0 - 30..n0 + 30).filter(|&n| a.at(n) != b.at(n)).collect();
        assert_eq!(diff, vec![n0, n0 + 1]);
        assert_eq!((a.at(n0), a.at(n0 + 1)), (Some(0), Some(1)));
        assert_eq!((b.at(n0), b.at(n0 + 1)), (Some(1), Some(0)));
    }
}

#[test]
fn empty_requests() {
    assert!(sturmian_block(&golden(), 5, 5).is_empty());
    assert!(sturmian_block(&golden(), 5, 2).is_empty());
    let p = golden();
    assert!(cutting_sequence(p.alpha(), p.rho(), 3, 3)
        .unwrap()
        .is_empty());
}

#[test]
fn cutting_sequence_at_integer_intercept() {
    let alpha = qn("sqrt(2) - 1");
    let cut = cutting_sequence(&alpha, &qn("0"), -10, 10).unwrap();
    let lower = sturmian_block(&params("sqrt(2) - 1", "0", Branch::Lower), -10, 10);
    let upper = sturmian_block(&params("sqrt(2) - 1", "0", Branch::Upper), -10, 10);
    assert_eq!(cut, lower);
    assert_ne!(cut, upper);
    // the crossing at x = 0 is credited to step 0, i.e. to (-1, 0]
    assert_eq!(cut.at(0), Some(1));
}

#[test]
fn small_slope_runs() {
    // 1/alpha = 2 + sqrt(3) lies in (3, 4)
    let alpha = qn("2 - sqrt(3)");
    let w = cutting_sequence(&alpha, &qn("1/5"), 0, 5000).unwrap();
    let ones: Vec<usize> = (0..w.len()).filter(|&i| w.symbols[i] == 1).collect();
    let gaps: HashSet<usize> = ones.windows(2).map(|p| p[1] - p[0]).collect();
    assert_eq!(gaps, HashSet::from([3, 4]));
}

#[test]
fn complexity_examples() {
    assert_eq!(complexity(&golden(), 1), 2);
    assert_eq!(complexity(&golden(), 10), 11);
    let p = params("sqrt(7) - 2", "sqrt(7)/5 - 1/3", Branch::Upper);
    for n in [1, 5, 17, 40] {
        assert_eq!(complexity(&p, n), n + 1);
    }
}

#[test]
fn shift_examples() {
    let p = golden();
    let q = shift_params(&p);
    for n in -20..20 {
        assert_eq!(sturmian_symbol(&q, n), sturmian_symbol(&p, n + 1));
    }
    let mut r = p.clone();
    for _ in 0..7 {
        r = shift_params(&r);
    }
    assert_eq!(r, shift_params_by(&p, 7));
    // a singular word keeps its branch under shifting
    let s = params("sqrt(2) - 1", "0", Branch::Lower);
    let t = shift_params_by(&s, 3);
    assert_eq!(t.branch(), Branch::Lower);
    assert_eq!(t.singular_index(), Some(BigInt::from(-3)));
}

#[test]
fn json_form() {
    let p = params("sqrt(2) - 1", "0", Branch::Lower);
    let v = serde_json::to_value(&p).unwrap();
    assert_eq!(v["branch"], "lower");
    let back: SturmianParams = serde_json::from_value(v).unwrap();
    assert_eq!(back, p);
    let bad = serde_json::json!({"alpha": qn("1/2"), "rho": qn("0")});
    assert!(serde_json::from_value::<SturmianParams>(bad).is_err());
}

pub(crate) fn arb_params() -> impl Strategy<Value = SturmianParams> {
    (
        prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 13]),
        -20i64..20,
        1i64..9,
        prop_oneof![Just(-1i64), Just(1)],
        1i64..5,
        1i64..9,
        -20i64..20,
        1i64..9,
        -4i64..5,
        1i64..9,
        any::<bool>(),
    )
        .prop_map(|(d, a1, a2, s, b1, b2, r1, r2, r3, r4, lower)| {
            let d = BigInt::from(d);
            let alpha =
                QuadraticNumber::new(rational(a1, a2), rational(s * b1, b2), d.clone()).unwrap();
            let rho = QuadraticNumber::new(rational(r1, r2), rational(r3, r4), d).unwrap();
            let branch = if lower { Branch::Lower } else { Branch::Upper };
            SturmianParams::with_any_intercept(alpha.fract(), rho, branch).unwrap()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn block_matches_pointwise(p in arb_params(), from in -300i64..300, len in 0i64..80) {
        let w = sturmian_block(&p, from, from + len);
        for n in from..from + len {
            prop_assert_eq!(w.at(n), Some(sturmian_symbol(&p, n)));
        }
    }

    #[test]
    fn cutting_sequence_is_lower_branch(p in arb_params(), from in -500i64..500) {
        let cut = cutting_sequence(p.alpha(), p.rho(), from, from + 400).unwrap();
        let lower = sturmian_block(&p.with_branch(Branch::Lower), from, from + 400);
        prop_assert_eq!(cut, lower);
    }

    #[test]
    fn balanced_with_exact_frequency(p in arb_params()) {
        let w = sturmian_block(&p, 1, 301);
        prop_assert!(w.is_balanced(25));
        let count = QuadraticNumber::from_integer(w.count(1) as i64);
        let expected = p.alpha() * &QuadraticNumber::from_integer(300);
        prop_assert!((&count - &expected).abs() <= QuadraticNumber::one());
    }

    #[test]
    fn shift_is_index_translation(p in arb_params(), k in -40i64..40) {
        let q = shift_params_by(&p, k);
        let a = sturmian_block(&p, k - 50, k + 50);
        let b = sturmian_block(&q, -50, 50);
        prop_assert_eq!(a.symbols, b.symbols);
    }

    #[test]
    fn intercepts_in_the_same_orbit(p in arb_params(), e in -3i64..3, f in -30i64..30) {
        // rho' - rho = e + f alpha gives s'_n = s_{n + f}
        let shifted = &(p.rho() + &QuadraticNumber::from_integer(e))
            + &(p.alpha() * &QuadraticNumber::from_integer(f));
        let q = SturmianParams::with_any_intercept(p.alpha().clone(), shifted, p.branch()).unwrap();
        for n in -30..30 {
            prop_assert_eq!(sturmian_symbol(&q, n), sturmian_symbol(&p, n + f));
        }
    }

    #[test]
    fn factor_complexity(p in arb_params(), n in 1usize..30) {
        prop_assert_eq!(complexity(&p, n), n + 1);
    }
}
