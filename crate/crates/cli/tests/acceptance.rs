//! Acceptance suite: one test per promised behavior, at the stated
//! tolerance, each printing a `[criterion N] PASS` line with the
//! measured numbers (visible under `--nocapture`; the per-test ok/FAILED
//! line doubles as the criterion verdict).

use std::process::Command;
use std::time::{Duration, Instant};

use gasing_core::derive::{
    cofunction, decompose_degrees, derived_functions, difference_formulas, double_angle,
    quadrant_signed, sum_formulas, Formula,
};
use gasing_core::exactnum::{rat, ExactReal};
use gasing_core::figures;
use gasing_core::proofs::{prove_case, prove_target, CASE_NAMES};
use gasing_core::solver::showcase;
use gasing_core::trigexpr::{
    guarded_reduction_count, ideal_reduce, AngleSymbol, Assignment, TrigPoly, TrigRational, Var,
};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn pass(criterion: u32, detail: &str) {
    println!("[criterion {criterion}] PASS — {detail}");
}

fn assert_fast(what: &str, elapsed: Duration, budget: Duration) {
    assert!(
        elapsed <= budget,
        "{what} took {elapsed:?}, over the {budget:?} budget"
    );
}

// ======================================================================
// 1. The five showcase problems, exactly
// ======================================================================

#[test]
fn criterion_1_showcase_answers_are_exact() {
    let started = Instant::now();
    let sols = showcase().expect("all five problems solve");
    let expected: [(ExactReal, f64); 5] = [
        (ExactReal::sqrt_of(&rat(3, 4)).unwrap(), 3.0_f64.sqrt() / 2.0),
        (ExactReal::from_ratio(4, 5), 0.8),
        (
            &ExactReal::from_int(6) * &ExactReal::sqrt_int(2),
            6.0 * 2.0_f64.sqrt(),
        ),
        (
            &ExactReal::from_int(2) * &ExactReal::sqrt_int(37),
            148.0_f64.sqrt(),
        ),
        (
            &ExactReal::from_int(6) + &(&ExactReal::from_int(6) * &ExactReal::sqrt_int(3)),
            16.392304845413264,
        ),
    ];
    assert_eq!(sols.len(), expected.len());
    for (sol, (want_exact, want_float)) in sols.iter().zip(&expected) {
        let got = sol
            .value
            .as_exact()
            .unwrap_or_else(|| panic!("{}: expected an exact radical answer", sol.problem));
        assert_eq!(got, want_exact, "{}", sol.problem);
        assert!(
            (sol.value.to_float() - want_float).abs() < 1e-10,
            "{}: numeric cross-check",
            sol.problem
        );
    }
    let elapsed = started.elapsed();
    assert_fast("the showcase set", elapsed, Duration::from_secs(1));
    pass(
        1,
        &format!(
            "five exact answers ({}; {}; {}; {}; {}) in {elapsed:?}",
            sols[0].value, sols[1].value, sols[2].value, sols[3].value, sols[4].value
        ),
    );
}

// ======================================================================
// 2. The two chain identities, free-ring clean
// ======================================================================

#[test]
fn criterion_2_chain_identities_certify_with_unit_cofactor() {
    let started = Instant::now();
    let before = guarded_reduction_count();
    let main = prove_target("main").unwrap();
    let alt = prove_target("alt").unwrap();
    for cert in [&main, &alt] {
        assert!(
            cert.verdict.is_verified(),
            "{}: {}",
            cert.case_id,
            cert.verdict
        );
        let a = AngleSymbol::new("a");
        assert_eq!(cert.cofactors.len(), 1, "{}", cert.case_id);
        assert_eq!(
            cert.cofactors.get(&a),
            Some(&TrigPoly::one()),
            "{}: cofactor must be exactly 1",
            cert.case_id
        );
    }
    assert_eq!(
        guarded_reduction_count(),
        before,
        "no reduction may run while the free-ring guard is held"
    );
    let elapsed = started.elapsed();
    assert_fast("both chain proofs", elapsed, Duration::from_secs(1));
    pass(
        2,
        &format!("main and alt verified, cofactor exactly 1, guard untripped, {elapsed:?}"),
    );
}

// ======================================================================
// 3. All eight dissection cases
// ======================================================================

#[test]
fn criterion_3_every_dissection_case_certifies() {
    let mut worst = Duration::ZERO;
    for name in CASE_NAMES {
        let started = Instant::now();
        let cert = prove_case(name).unwrap();
        let elapsed = started.elapsed();
        worst = worst.max(elapsed);
        assert!(cert.verdict.is_verified(), "{name}: {}", cert.verdict);
        assert_fast(name, elapsed, Duration::from_secs(1));
    }

    // The staircase series must close to the authored segment forms.
    let a = AngleSymbol::new("a");
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let denominator = &c.pow(2) - &s.pow(2);
    let expected_ea = &(&TrigRational::from_int(2) * &(&s * &c)) / &denominator;
    let expected_eb = &(&c.pow(2) + &s.pow(2)) / &denominator;
    let staircase = (figures::by_name("staircase").unwrap().build)();
    assert!(
        staircase
            .segment("E", "A")
            .unwrap()
            .expr_equals(&expected_ea),
        "series limit for the slant side"
    );
    assert!(
        staircase
            .segment("E", "B")
            .unwrap()
            .expr_equals(&expected_eb),
        "series limit for the long side"
    );
    pass(
        3,
        &format!(
            "{} case certificates verified (slowest {worst:?}), staircase series limits match",
            CASE_NAMES.len()
        ),
    );
}

// ======================================================================
// 4. The derived formula catalog, symbolically and numerically
// ======================================================================

fn expected_single_angle(label: &str) -> TrigRational {
    let a = AngleSymbol::new("a");
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let one = TrigRational::from_int(1);
    match label {
        "sin" => s,
        "cos" => c,
        "tan" => &s / &c,
        "cot" => &c / &s,
        "sec" => &one / &c,
        "csc" => &one / &s,
        other => panic!("unexpected function {other}"),
    }
}

fn expected_cofunction(label: &str) -> TrigRational {
    let a = AngleSymbol::new("a");
    let s = TrigRational::sin(&a);
    let c = TrigRational::cos(&a);
    let one = TrigRational::from_int(1);
    match label {
        "sin" => c,
        "cos" => s,
        "tan" => &c / &s,
        "cot" => &s / &c,
        "sec" => &one / &s,
        "csc" => &one / &c,
        other => panic!("unexpected function {other}"),
    }
}

/// 1000 random tuples per formula, sampled at least `margin` away from
/// every side condition, each within 1e-12 of machine trigonometry.
fn check_formula_numerically(f: &Formula, rng: &mut ChaCha8Rng) {
    let margin = 1e-3;
    let mut checked = 0;
    while checked < 1000 {
        let mut asg = Assignment::new();
        asg.angles.insert("a".to_string(), rng.gen_range(0.05..1.52));
        asg.angles.insert("b".to_string(), rng.gen_range(0.05..1.52));
        let clear = f
            .conditions
            .iter()
            .all(|cond| cond.holds_with_margin(&asg, margin).unwrap());
        if !clear {
            continue;
        }
        let dev = f.numeric_deviation(&asg).unwrap();
        assert!(dev <= 1e-12, "{}: deviation {dev} at {asg:?}", f.name());
        checked += 1;
    }
}

#[test]
fn criterion_4_formula_catalog_matches_printed_forms() {
    let a = AngleSymbol::new("a");
    let b = AngleSymbol::new("b");
    let (sa, ca) = (TrigRational::sin(&a), TrigRational::cos(&a));
    let (sb, cb) = (TrigRational::sin(&b), TrigRational::cos(&b));

    let mut catalog: Vec<(Formula, TrigRational)> = Vec::new();

    for f in derived_functions().unwrap().formulas {
        let expected = expected_single_angle(f.func.label());
        catalog.push((f, expected));
    }
    let sum = sum_formulas().unwrap();
    catalog.push((sum.sin, &(&sa * &cb) + &(&ca * &sb)));
    catalog.push((sum.cos, &(&ca * &cb) - &(&sa * &sb)));
    let diff = difference_formulas().unwrap();
    catalog.push((diff.sin, &(&sa * &cb) - &(&ca * &sb)));
    catalog.push((diff.cos, &(&ca * &cb) + &(&sa * &sb)));
    let dbl = double_angle().unwrap();
    let two = TrigRational::from_int(2);
    let one = TrigRational::from_int(1);
    catalog.push((dbl.sin, &two * &(&sa * &ca)));
    catalog.push((dbl.cos, &ca.pow(2) - &sa.pow(2)));
    catalog.push((dbl.cos_from_cos_only, &(&two * &ca.pow(2)) - &one));
    catalog.push((dbl.cos_from_sin_only, &one - &(&two * &sa.pow(2))));
    for f in cofunction().unwrap().formulas {
        let expected = expected_cofunction(f.func.label());
        catalog.push((f, expected));
    }
    assert_eq!(catalog.len(), 20, "the full formula catalog");

    let mut rng = ChaCha8Rng::seed_from_u64(0xf0a4);
    for (formula, expected) in &catalog {
        assert!(
            formula.rhs.expr_equals(expected),
            "{}: derived {} but expected {}",
            formula.name(),
            formula.rhs,
            expected
        );
        check_formula_numerically(formula, &mut rng);
    }
    pass(
        4,
        &format!(
            "{} formulas match their printed forms; 1000 samples each within 1e-12",
            catalog.len()
        ),
    );
}

// ======================================================================
// 5. Quadrant table and whole-circle decomposition
// ======================================================================

#[test]
fn criterion_5_quadrant_table_and_full_circle() {
    let a = AngleSymbol::new("a");
    let (sa, ca) = (TrigRational::sin(&a), TrigRational::cos(&a));
    let table = [
        (2u8, -&ca, sa.clone()),
        (3, -&ca, -&sa),
        (4, ca.clone(), -&sa),
    ];
    for (quadrant, want_cos, want_sin) in &table {
        let (cos_f, sin_f) = quadrant_signed(&a, *quadrant).unwrap();
        assert!(
            cos_f.rhs.expr_equals(want_cos),
            "cosine sign in quadrant {quadrant}"
        );
        assert!(
            sin_f.rhs.expr_equals(want_sin),
            "sine sign in quadrant {quadrant}"
        );
    }

    for degrees in 0..360i64 {
        let (quadrant, reference) = decompose_degrees(degrees);
        let (cos_f, sin_f) = quadrant_signed(&a, quadrant).unwrap();
        let mut asg = Assignment::new();
        asg.angles
            .insert("a".to_string(), f64::from(reference).to_radians());
        let cos_v = cos_f.rhs.eval_numeric(&asg).unwrap();
        let sin_v = sin_f.rhs.eval_numeric(&asg).unwrap();
        let unit = cos_v * cos_v + sin_v * sin_v;
        assert!(
            (unit - 1.0).abs() <= 1e-12,
            "{degrees} degrees: squared sum {unit}"
        );
        let theta = (degrees as f64).to_radians();
        assert!(
            (cos_v - theta.cos()).abs() <= 1e-12 && (sin_v - theta.sin()).abs() <= 1e-12,
            "{degrees} degrees: signed values disagree with machine trig"
        );
    }
    pass(
        5,
        "signed quadrant forms match; all 360 integer degrees decompose to unit squared sum within 1e-12",
    );
}

// ======================================================================
// 6. Squared variants and double-angle consistency
// ======================================================================

#[test]
fn criterion_6_squared_certificates_and_double_angle_consistency() {
    for name in ["tangent-squared", "cotangent-squared"] {
        let cert = prove_target(name).unwrap();
        assert!(cert.verdict.is_verified(), "{name}: {}", cert.verdict);
    }

    let dbl = double_angle().unwrap();
    let forms = [
        &dbl.sin,
        &dbl.cos,
        &dbl.cos_from_cos_only,
        &dbl.cos_from_sin_only,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0b1);
    for _ in 0..100 {
        let mut asg = Assignment::new();
        asg.angles.insert("a".to_string(), rng.gen_range(0.05..1.52));
        for f in forms {
            let dev = f.numeric_deviation(&asg).unwrap();
            assert!(dev <= 1e-12, "{}: deviation {dev}", f.name());
        }
        let cos_values: Vec<f64> = forms[1..]
            .iter()
            .map(|f| f.rhs.eval_numeric(&asg).unwrap())
            .collect();
        for pair in cos_values.windows(2) {
            assert!(
                (pair[0] - pair[1]).abs() <= 1e-12,
                "double-angle cosine forms disagree: {cos_values:?}"
            );
        }
    }
    pass(
        6,
        "squared-variant certificates verified; double-angle forms agree within 1e-12 at 100 angles",
    );
}

// ======================================================================
// 7. Property suites, rerun compactly
// ======================================================================

fn random_exact(rng: &mut ChaCha8Rng) -> ExactReal {
    let radicands = [1u64, 2, 3, 5, 6, 7, 10];
    let terms = rng.gen_range(0..=3);
    let mut value = ExactReal::zero();
    for _ in 0..terms {
        let m = radicands[rng.gen_range(0..radicands.len())];
        let p = rng.gen_range(-50i64..=50);
        let q = rng.gen_range(1i64..=50);
        value = &value + &(&ExactReal::from_ratio(p, q) * &ExactReal::sqrt_int(m));
    }
    value
}

fn random_poly(rng: &mut ChaCha8Rng) -> TrigPoly {
    let vars = [
        Var::Cos(AngleSymbol::new("a")),
        Var::Sin(AngleSymbol::new("a")),
        Var::Cos(AngleSymbol::new("b")),
        Var::Sin(AngleSymbol::new("b")),
        Var::Len("u".to_string()),
    ];
    let mut poly = TrigPoly::zero();
    for _ in 0..rng.gen_range(0..=3) {
        let mut term = TrigPoly::constant(ExactReal::from_ratio(
            rng.gen_range(-6i64..=6),
            rng.gen_range(1i64..=4),
        ));
        for _ in 0..rng.gen_range(0..=2) {
            let v = vars[rng.gen_range(0..vars.len())].clone();
            term = &term * &TrigPoly::var(v).pow(rng.gen_range(1..=2));
        }
        poly = &poly + &term;
    }
    poly
}

#[test]
fn criterion_7_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7a3e);

    // Field axioms on 1000 random triples.
    for _ in 0..1000 {
        let (x, y, z) = (
            random_exact(&mut rng),
            random_exact(&mut rng),
            random_exact(&mut rng),
        );
        assert_eq!(&x + &y, &y + &x);
        assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
        assert_eq!(&x * &y, &y * &x);
        assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        if !z.is_zero() {
            assert_eq!((&x * &z).checked_div(&z).unwrap(), x);
        }
    }

    // Reduction recomposes exactly on 500 random polynomials.
    for _ in 0..500 {
        let p = random_poly(&mut rng);
        assert_eq!(ideal_reduce(&p).recompose(), p);
    }

    // Scaling preserves ratios and composes, 500 random factors.
    for _ in 0..500 {
        let p = random_poly(&mut rng);
        let c = random_exact(&mut rng);
        let d = random_exact(&mut rng);
        assert_eq!(p.scale(&c), &p * &TrigPoly::constant(c.clone()));
        assert_eq!(p.scale(&c).scale(&d), p.scale(&(&c * &d)));
    }

    // Parser round-trip on 1000 canonical renderings.
    for _ in 0..1000 {
        let v = random_exact(&mut rng);
        let reparsed = gasing_cli::parse::parse_exact(&v.to_string())
            .unwrap_or_else(|e| panic!("reparsing {v}: {e}"));
        assert_eq!(reparsed, v);
    }

    // Layout fidelity: every figure, 20 sampled assignments, with the
    // 1e-9 consistency gates built into layout itself.
    for entry in figures::all() {
        let built = (entry.build)();
        for _ in 0..20 {
            let uniforms: Vec<f64> = (0..entry.free.len()).map(|_| rng.gen()).collect();
            built.layout(&entry.sample(&uniforms)).unwrap();
        }
    }

    pass(
        7,
        "field axioms x1000, recomposition x500, scaling x500, parser round-trip x1000, layouts x20 per figure",
    );
}

// ======================================================================
// 8. CLI end to end
// ======================================================================

fn gasing(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_gasing"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn criterion_8_cli_end_to_end() {
    let first = gasing(&["--json", "prove", "all"]);
    let second = gasing(&["--json", "prove", "all"]);
    assert!(first.status.success(), "prove all --json must exit 0");
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(
        first.stdout, second.stdout,
        "JSON output must be byte-stable"
    );
    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed.as_array().unwrap().len(), 12);

    let render = gasing(&["render", "combined", "--at", "a=30deg"]);
    assert!(render.status.success());
    let svg = String::from_utf8(render.stdout).unwrap();

    let entry = figures::by_name("combined").unwrap();
    let construction = (entry.build)();
    let mut asg = Assignment::new();
    asg.angles.insert("a".to_string(), 30f64.to_radians());
    entry.augment(&mut asg).unwrap();

    let mut measured_lines = 0;
    for line in svg.lines().filter(|l| l.contains("<line")) {
        let field = |key: &str| -> String {
            let tag = format!("{key}=\"");
            let start = line.find(&tag).expect("attribute present") + tag.len();
            let end = line[start..].find('"').unwrap() + start;
            line[start..end].to_string()
        };
        let num = |key: &str| -> f64 { field(key).parse().unwrap() };
        let dx = num("x2") - num("x1");
        let dy = num("y2") - num("y1");
        let embedded = (dx * dx + dy * dy).sqrt();
        let symbolic = construction
            .segment(&field("data-from"), &field("data-to"))
            .unwrap()
            .eval_numeric(&asg)
            .unwrap();
        assert!(
            (embedded - symbolic).abs() <= 1e-6,
            "{line}: embedded {embedded} vs symbolic {symbolic}"
        );
        measured_lines += 1;
    }
    assert_eq!(measured_lines, construction.segments().count());

    // Exercise the solve and error exit paths through the binary too.
    let solve = gasing(&["solve", "sightlines", "12", "45", "30"]);
    assert!(solve.status.success());
    assert!(String::from_utf8_lossy(&solve.stdout).contains("6 + 6*sqrt(3)"));
    let bad = gasing(&["eval", "1 +"]);
    assert_eq!(bad.status.code(), Some(2));

    pass(
        8,
        &format!(
            "prove all --json byte-stable (exit 0); rendered {measured_lines} segments match symbolic lengths within 1e-6"
        ),
    );
}
