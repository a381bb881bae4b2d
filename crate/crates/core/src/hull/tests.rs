use super::*;
use crate::cps::{tiling_from_cps, CutProjectScheme, WindowConvention};
use crate::exactnum::rational;
use crate::words::{shift_params, Branch};
use proptest::prelude::*;

fn qn(s: &str) -> QuadraticNumber {
    s.parse().unwrap()
}

fn params(alpha: &str, rho: &str, branch: Branch) -> SturmianParams {
    SturmianParams::new(qn(alpha), qn(rho), branch).unwrap()
}

fn silver() -> SturmianParams {
    params("sqrt(2) - 1", "1/3", Branch::Upper)
}

#[test]
fn translation_is_an_action() {
    let t = psi(&silver());
    assert_eq!(translate(&t, &QuadraticNumber::zero()), t);
    let (x, y) = (qn("7/3 - sqrt(2)"), qn("-19/4 + 3*sqrt(2)"));
    assert_eq!(translate(&translate(&t, &x), &y), translate(&t, &(&x + &y)));
    let back = translate(&translate(&t, &x), &-&x);
    assert_eq!(back, t);
}

#[test]
fn psi_phi_section() {
    let s = silver();
    let (labels, offset) = phi(&psi(&s));
    assert_eq!(labels.sturmian_params(), Some(&s));
    assert!(offset.is_zero());
    let t = psi(&s);
    // moving less than the rest of tile 0 keeps the word
    let x = &t.lengths()[t.labels().at(0) as usize] * &qn("99/100");
    assert_eq!(phi(&translate(&t, &x)).0, labels);
}

#[test]
fn shift_is_translation_by_delta() {
    let mut s = silver();
    let mut t = psi(&s);
    let start = t.clone();
    let mut total = QuadraticNumber::zero();
    for _ in 0..30 {
        let d = delta_alpha(&s);
        assert_eq!(translation_cocycle(&t, &d), 1);
        total = &total + &d;
        s = shift_params(&s);
        t = translate(&t, &d);
        assert_eq!(t, psi(&s));
    }
    assert_eq!(translate(&start, &total), t);
    // the k-th vertex sits at the sum of the first k deltas
    assert_eq!(start.tile_start(30), total);
}

#[test]
fn delta_values() {
    // s_0 = 1 exactly for rho in (0, alpha]
    let one = params("sqrt(2) - 1", "1/10", Branch::Upper);
    assert_eq!(delta_alpha(&one), qn("sqrt(2) - 1"));
    let zero = params("sqrt(2) - 1", "9/10", Branch::Upper);
    assert_eq!(delta_alpha(&zero), QuadraticNumber::one());
}

#[test]
fn windows() {
    let t = psi(&silver());
    let p = window(&t, &qn("-3"), &qn("5"));
    assert!(p.tiles.windows(2).all(|w| w[0].end() == w[1].start));
    assert!(p.start().unwrap() <= &qn("-3") && p.end().unwrap() >= qn("5"));
    let inner = window(&t, &qn("-1"), &qn("2"));
    assert!(inner.tiles.iter().all(|x| p.tiles.contains(x)));
    assert!(window(&t, &qn("2"), &qn("1")).is_empty());
    // a tile ending exactly at lo still meets [lo, hi]
    let v = t.tile_start(3);
    let w = window(&t, &v, &(&v + &qn("1/100")));
    assert_eq!(w.tiles[0].end(), v);
}

#[test]
fn cocycle_examples() {
    let t = psi(&silver());
    assert_eq!(translation_cocycle(&t, &QuadraticNumber::zero()), 0);
    assert_eq!(translation_cocycle(&t, &qn("-1/100")), -1);
    assert_eq!(translation_cocycle(&t, &t.tile_start(17)), 17);
}

#[test]
fn substitution_tiling() {
    let fib = SubstitutionRule::fibonacci();
    let t = Tiling::substitution(&fib).unwrap();
    let phi_len = QuadraticNumber::golden_ratio();
    assert_eq!(t.lengths(), &[QuadraticNumber::one(), phi_len.clone()]);
    let LabelSource::Substitution(fp) = t.labels().source() else {
        panic!("substitution source");
    };
    let w = fp.rule().power(fp.power());
    let (l, r) = fp.seam();
    assert!(w.image(r).starts_with(&[r]) && w.image(l).ends_with(&[l]));
    // labels on both sides are fixed by the chosen power
    let block = t.labels().block(-40, 40).symbols;
    let right = w.apply_letters(&block[40..60]);
    assert_eq!(&right[..20], &block[40..60]);
    let left = w.apply_letters(&block[20..40]);
    assert_eq!(&left[left.len() - 20..], &block[20..40]);
    // vertices lie in Z + phi Z, and the translate by a tile lands on a vertex
    for v in window(&t, &qn("-20"), &qn("20")).vertices() {
        assert!(crate::cps::lattice_coordinates(&phi_len, &v).is_ok());
    }
    let x = t.tile_start(5);
    assert_eq!(translate(&t, &x).offset(), &QuadraticNumber::zero());
}

#[test]
fn return_module_examples() {
    let a = qn("sqrt(2) - 1");
    let one = QuadraticNumber::one();
    let m = return_module(&[one.clone(), a.clone(), &one + &a], &a).unwrap();
    assert_eq!(m.generators(), vec![one.clone(), a.clone()]);
    assert!(m.is_full_lattice());
    let two = QuadraticNumber::from_integer(2);
    let m = return_module(&[two.clone(), &two * &a], &a).unwrap();
    assert_eq!(m.generators(), vec![two.clone(), &two * &a]);
    assert_eq!(m.index(), Some(4.into()));
    assert!(return_module(&[qn("1/2")], &a).is_err());
}

#[test]
fn sturmian_return_vectors() {
    let s = silver();
    let t = psi(&s);
    let p = window(&t, &qn("0"), &qn("5/2"));
    let radius = qn("400");
    let v = return_vectors(&t, &p, &radius).unwrap();
    assert!(v.contains(&QuadraticNumber::zero()));
    assert!(v.iter().all(|x| x.abs() <= radius));
    let m = return_module(&v, s.alpha()).unwrap();
    assert!(m.is_full_lattice());
    let elsewhere = Patch {
        tiles: p
            .tiles
            .iter()
            .map(|x| Tile {
                start: &x.start + &qn("1/7"),
                ..x.clone()
            })
            .collect(),
    };
    assert_eq!(
        return_vectors(&t, &elsewhere, &radius),
        Err(Error::PatchNotFound)
    );
}

#[test]
fn periodic_return_vectors() {
    let a = qn("sqrt(2) - 1");
    let lengths = vec![QuadraticNumber::one(), a.clone()];
    let t = Tiling::periodic(vec![0, 1, 1], vec!['0', '1'], lengths, qn("1/3")).unwrap();
    let period = &QuadraticNumber::one() + &(&a * &QuadraticNumber::from_integer(2));
    let p = window(&t, &qn("-1/3"), &qn("1/2"));
    let radius = qn("20");
    let got = return_vectors(&t, &p, &radius).unwrap();
    let expect: Vec<QuadraticNumber> = (-20i64..=20)
        .map(|k| &period * &QuadraticNumber::from_integer(k))
        .filter(|x| x.abs() <= radius)
        .collect();
    assert_eq!(got, expect);
    assert_eq!(translate(&t, &period), t);
}

#[test]
fn torus_projection() {
    let s = silver();
    let t = psi(&s);
    let m = return_module(&[QuadraticNumber::one(), s.alpha().clone()], s.alpha()).unwrap();
    let base = torus_project(&t, &m).unwrap();
    assert_eq!(base.origin_tag, None);
    for r in [qn("1"), qn("sqrt(2) - 1"), qn("-5 + 3*sqrt(2)")] {
        assert_eq!(torus_project(&translate(&t, &r), &m).unwrap(), base);
    }
    let x = qn("3/7 + 1/5*sqrt(2)");
    let moved = torus_project(&translate(&t, &x), &m).unwrap();
    assert_eq!(
        moved.representative,
        m.reduce(&(&base.representative + &x)).unwrap()
    );
    // the singular pair: same class, two tags
    let low = params("sqrt(2) - 1", "0", Branch::Upper);
    let pl = torus_project(&psi(&low), &m).unwrap();
    let ph = torus_project(&psi(&low.with_branch(Branch::Lower)), &m).unwrap();
    assert_eq!(pl.representative, ph.representative);
    assert_eq!(
        (pl.origin_tag, ph.origin_tag),
        (Some(Branch::Upper), Some(Branch::Lower))
    );
}

#[test]
fn metric_basics() {
    let t = psi(&silver());
    let tol = rational(1, 1_000_000);
    let d = metric_d(&t, &t, &tol).unwrap();
    assert!(
        d.contains(&QuadraticNumber::zero())
            && d.width() <= QuadraticNumber::from_rational(tol.clone())
    );
    for x in [qn("1/50"), qn("-3/40"), qn("sqrt(2)/30")] {
        let d = metric_d(&t, &translate(&t, &x), &rational(1, 1000)).unwrap();
        assert!(d.upper <= x.abs(), "{x}: {d:?}");
        assert!(d.lower.is_positive());
    }
}

#[test]
fn singular_branch_pair_is_apart() {
    let scheme = CutProjectScheme::new(qn("sqrt(2) - 1"), qn("0"), WindowConvention::Low).unwrap();
    let low = tiling_from_cps(&scheme).unwrap();
    let high = tiling_from_cps(&scheme.with_convention(WindowConvention::High)).unwrap();
    let d = metric_d(&low, &high, &rational(1, 1000)).unwrap();
    assert!(d.lower.is_positive(), "{d:?}");
    let back = metric_d(&high, &low, &rational(1, 1000)).unwrap();
    assert!(back.lower <= d.upper && d.lower <= back.upper);
}

fn arb_shift() -> impl Strategy<Value = QuadraticNumber> {
    (-60i64..60, 1i64..9, -20i64..20, 1i64..9).prop_map(|(a, b, c, d)| {
        QuadraticNumber::new(rational(a, b), rational(c, d), 2.into()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn cocycle_identity(rho in 0i64..97, x in arb_shift(), y in arb_shift()) {
        let s = params("sqrt(2) - 1", &format!("{rho}/97"), Branch::Upper);
        let t = psi(&s);
        let m = |t: &Tiling, x: &QuadraticNumber| translation_cocycle(t, x);
        prop_assert_eq!(m(&t, &(&x + &y)), m(&t, &x) + m(&translate(&t, &x), &y));
        let (labels, _) = phi(&translate(&t, &x));
        prop_assert_eq!(labels, phi(&t).0.shifted(m(&t, &x)));
    }

    #[test]
    fn projection_is_equivariant(x in arb_shift(), i in -50i64..50, j in -50i64..50) {
        let s = silver();
        let t = psi(&s);
        let m = return_module(&[QuadraticNumber::one(), s.alpha().clone()], s.alpha()).unwrap();
        let r = &QuadraticNumber::from_integer(i) + &(s.alpha() * &QuadraticNumber::from_integer(j));
        let base = torus_project(&t, &m).unwrap();
        prop_assert_eq!(torus_project(&translate(&t, &r), &m).unwrap(), base.clone());
        let moved = torus_project(&translate(&t, &x), &m).unwrap();
        prop_assert_eq!(moved.representative, m.reduce(&(&base.representative + &x)).unwrap());
    }
}
