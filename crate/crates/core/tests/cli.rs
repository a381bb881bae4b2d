use aperiodic::cli::run;
use aperiodic::confrac::{cf_expand, ContinuedFraction};
use aperiodic::cps::CutProjectScheme;
use aperiodic::exactnum::QuadraticNumber;
use aperiodic::words::{sturmian_block, Branch, SturmianParams, Word};
use serde_json::Value;

fn cli(args: &[&str]) -> (u8, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("aperiodic").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(args: &[&str]) -> Value {
    let (code, out, err) = cli(args);
    assert_eq!(code, 0, "{err}");
    serde_json::from_str(&out).unwrap()
}

fn qn(s: &str) -> QuadraticNumber {
    s.parse().unwrap()
}

#[test]
fn golden_ratio_expansion() {
    assert_eq!(
        cli(&["cf", "1/2 + 1/2*sqrt(5)"]),
        (0, "[1; (1)]\n".into(), String::new())
    );
    assert_eq!(cli(&["cf", "-7/3"]).1, "[-3; 1, 2]\n");
}

#[test]
fn golden_and_silver_slopes_are_inequivalent() {
    let (code, out, _) = cli(&[
        "equiv",
        "--alpha",
        "-1/2 + 1/2*sqrt(5)",
        "--beta",
        "sqrt(2) - 1",
    ]);
    assert_eq!(code, 0);
    assert!(out.starts_with("not equivalent\n"), "{out}");
    let v = json(&[
        "equiv",
        "sqrt(2) - 1",
        "1/(3 + sqrt(2))",
        "--format",
        "json",
    ]);
    assert_eq!(v["verdict"]["equivalent"], true);
    assert!(v["verdict"]["witness"].is_object() || v["verdict"]["witness"].is_array());
}

#[test]
fn empty_range_prints_nothing() {
    assert_eq!(
        cli(&[
            "sturmian",
            "--alpha",
            "sqrt(2) - 1",
            "--rho",
            "0",
            "--from",
            "0",
            "--to",
            "0"
        ]),
        (0, String::new(), String::new())
    );
}

#[test]
fn sturmian_text_matches_library() {
    let (_, out, _) = cli(&[
        "sturmian",
        "--alpha",
        "sqrt(2) - 1",
        "--rho",
        "1/3",
        "--from",
        "-5",
        "--to",
        "40",
    ]);
    let p = SturmianParams::new(qn("sqrt(2) - 1"), qn("1/3"), Branch::Upper).unwrap();
    assert_eq!(out, format!("{}\n", sturmian_block(&p, -5, 40)));
}

#[test]
fn exit_codes() {
    let (code, _, err) = cli(&["cf", "1/2 + sqrt(5"]);
    assert_eq!(code, 2);
    assert!(err.contains("position 12"), "{err}");
    assert_eq!(cli(&["cf", "0.5"]).0, 2);
    assert_eq!(cli(&["frobnicate"]).0, 2);
    assert_eq!(cli(&["metric", "{\"kind\": \"nope\"}", "{}"]).0, 2);
    // well-formed but outside the domain
    let (code, _, err) = cli(&[
        "sturmian", "--alpha", "1/2", "--rho", "0", "--from", "0", "--to", "3",
    ]);
    assert_eq!(code, 1);
    assert!(err.contains("rational"), "{err}");
    assert_eq!(cli(&["ap", "--rule", "a>a; b>b"]).0, 1);
    assert_eq!(cli(&["--help"]).0, 0);
}

#[test]
fn output_is_deterministic() {
    let args = [
        "cps",
        "--alpha",
        "sqrt(3) - 1",
        "--rho",
        "2/7",
        "--lo",
        "-4",
        "--hi",
        "9",
        "--format",
        "json",
    ];
    assert_eq!(cli(&args), cli(&args));
    let render = [
        "render",
        "{\"kind\": \"subst\", \"rule\": \"a>b; b>ab\"}",
        "--lo",
        "-5",
        "--hi",
        "5",
    ];
    let (code, svg, _) = cli(&render);
    assert_eq!(code, 0);
    assert!(svg.starts_with("<svg"));
    assert_eq!(cli(&render).1, svg);
}

#[test]
fn json_round_trips() {
    let v = json(&[
        "sturmian",
        "--alpha",
        "sqrt(2) - 1",
        "--rho",
        "1/3",
        "--from",
        "2",
        "--to",
        "30",
        "--format",
        "json",
    ]);
    let p: SturmianParams = serde_json::from_value(v["params"].clone()).unwrap();
    let w: Word = serde_json::from_value(v["word"].clone()).unwrap();
    assert_eq!(
        p,
        SturmianParams::new(qn("sqrt(2) - 1"), qn("1/3"), Branch::Upper).unwrap()
    );
    assert_eq!(w, sturmian_block(&p, 2, 30));

    let v = json(&["cf", "sqrt(7)", "--format", "json"]);
    assert_eq!(
        ContinuedFraction::from_json(&v).unwrap(),
        cf_expand(&qn("sqrt(7)"))
    );

    let v = json(&[
        "cps", "--alpha", "sqrt(2)", "--rho", "1/5", "--lo", "0", "--hi", "4", "--format", "json",
    ]);
    let s: CutProjectScheme = serde_json::from_value(v["scheme"].clone()).unwrap();
    assert_eq!(s.alpha(), &qn("sqrt(2)"));
    for vert in v["vertices"].as_array().unwrap() {
        let x: QuadraticNumber = serde_json::from_value(vert["position"].clone()).unwrap();
        let (i, j) = (
            vert["lattice"][0].as_i64().unwrap(),
            vert["lattice"][1].as_i64().unwrap(),
        );
        assert_eq!(x, s.position((i, j)));
    }

    let v = json(&[
        "metric",
        "{\"kind\": \"subst\", \"rule\": \"a>b; b>ab\"}",
        "{\"kind\": \"subst\", \"rule\": \"a>b; b>ab\", \"translate\": \"1/3\"}",
        "--tol",
        "1/1000",
        "--format",
        "json",
    ]);
    let upper: QuadraticNumber = serde_json::from_value(v["upper"].clone()).unwrap();
    let lower: QuadraticNumber = serde_json::from_value(v["lower"].clone()).unwrap();
    assert!(lower > QuadraticNumber::zero() && lower <= upper && upper <= qn("1/3"));
}

#[test]
fn return_module_is_the_unit_lattice() {
    let (code, out, _) = cli(&[
        "return-module",
        "--alpha",
        "sqrt(5) - 2",
        "--rho",
        "1/7",
        "--tiles",
        "3000",
    ]);
    assert_eq!(code, 0);
    assert!(
        out.contains("basis (1, alpha) coordinates: (1, 0) (0, 1)"),
        "{out}"
    );
    assert!(out.contains("full lattice: true"));
}

#[test]
fn fibonacci_ap_graphs() {
    for collared in [false, true] {
        let mut args = vec!["ap", "--rule", "a>b; b>ab", "--tower", "3"];
        if collared {
            args.push("--collared");
        }
        let v = json(&args);
        assert_eq!(v["betti1"], 2);
        assert_eq!(v["tower"]["scaling_exact"], true);
    }
    let (_, dot, _) = cli(&["ap", "--rule", "a>b; b>ab", "--format", "dot"]);
    assert!(dot.starts_with("digraph ap {"));
}

#[test]
fn substitution_commands() {
    assert_eq!(
        cli(&[
            "subst",
            "--rule",
            "a>b; b>ab",
            "--seed",
            "a",
            "--iters",
            "5"
        ])
        .1,
        "bababbab\n"
    );
    let v = json(&["subst", "--from-slope", "sqrt(3) - 1", "--format", "json"]);
    assert_eq!(v["pisot"], true);
    assert_eq!(cli(&["subst", "--rule", "a>b; b>ab", "--seed", "z"]).0, 2);
}

#[test]
fn diffeomorphism_classes() {
    assert_eq!(cli(&["equiv", "--matrix", "2 1 1 1"]).1, "diffeomorphism\n");
    assert_eq!(cli(&["equiv", "--matrix", "2,0,0,1"]).1, "smooth-only\n");
    assert_eq!(cli(&["equiv", "--matrix", "1 2 2 4"]).1, "neither\n");
}

#[test]
fn verify_runs_a_single_criterion() {
    let (code, out, _) = cli(&["verify", "--criterion", "9"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("[PASS]  9."), "{out}");
    assert_eq!(cli(&["verify", "--criterion", "11"]).0, 2);
}
