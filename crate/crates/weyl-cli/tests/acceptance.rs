//! Acceptance suite: each test implements one release criterion at its
//! stated size and tolerance (exact equality unless noted) and prints a
//! single pass/fail line. Run with
//! `cargo test -p weyl-cli --test acceptance -- --test-threads=1 --nocapture`.

use std::process::Command;
use std::sync::Mutex;

use rayon::prelude::*;
use weyl::{
    eval_matrix, eval_matrix_padded, hermite_evaluate, hermite_interpolate, mat_mul,
    operator_from_eval_matrix, DiffOperator, FieldDescriptor, FieldElement, HermiteSpec,
    Polynomial, Sampler,
};
use weyl_cli::bench;

// The scaling criterion times real work; serialize the suite so no other
// criterion competes for cores while it measures.
static GATE: Mutex<()> = Mutex::new(());

fn gate() -> std::sync::MutexGuard<'static, ()> {
    GATE.lock().unwrap_or_else(|e| e.into_inner())
}

fn fp31() -> FieldDescriptor {
    FieldDescriptor::prime_field(2147483647).unwrap()
}

fn report(index: usize, name: &str, failures: &[String], detail: &str) {
    let verdict = if failures.is_empty() { "PASS" } else { "FAIL" };
    println!("criterion {index} ({name}): {verdict} — {detail}");
    for line in failures.iter().take(10) {
        println!("    {line}");
    }
    assert!(failures.is_empty(), "criterion {index} failed: {name}");
}

#[test]
fn criterion_1_oracle_equivalence() {
    let _g = gate();
    let mut failures = Vec::new();
    let mut total = 0usize;
    let fp_profiles = [(8usize, 8usize), (16, 4), (4, 16), (64, 16), (16, 64)];
    let rational_profiles = [(8usize, 8usize), (16, 4), (4, 16)];
    let cases_per_profile = 200usize;
    for (field, profiles) in [
        (fp31(), &fp_profiles[..]),
        (FieldDescriptor::Rational, &rational_profiles[..]),
    ] {
        for &(d, r) in profiles {
            let mut sampler = Sampler::new(0xacce0001 ^ ((d as u64) << 20) ^ (r as u64));
            let pairs: Vec<(DiffOperator, DiffOperator)> = (0..cases_per_profile)
                .map(|_| (sampler.operator(field, d, r), sampler.operator(field, d, r)))
                .collect();
            total += pairs.len();
            let bad: Vec<usize> = pairs
                .par_iter()
                .enumerate()
                .filter_map(|(idx, (a, b))| {
                    let fast = a.multiply(b).unwrap();
                    let naive = a.multiply_naive(b).unwrap();
                    (fast != naive).then_some(idx)
                })
                .collect();
            for idx in bad {
                failures.push(format!("profile {d}x{r} field {field} case {idx}"));
            }
        }
    }
    report(
        1,
        "oracle equivalence",
        &failures,
        &format!("{total} random products match the naive rewrite exactly"),
    );
}

#[test]
fn criterion_2_reflection() {
    let _g = gate();
    let mut failures = Vec::new();
    let field = fp31();
    let mut sampler = Sampler::new(0xacce0002);
    let profiles = [(16usize, 16usize), (32, 4), (4, 32)];
    let mut oracle_cases = 0usize;
    for &(d, r) in &profiles {
        let ops: Vec<DiffOperator> = (0..100).map(|_| sampler.operator(field, d, r)).collect();
        oracle_cases += ops.len();
        let bad: Vec<usize> = ops
            .par_iter()
            .enumerate()
            .filter_map(|(idx, l)| {
                let fast = l.reflect().unwrap();
                if fast != l.reflect_naive() {
                    return Some(idx);
                }
                if fast.reflect().unwrap() != l.sign_involution() {
                    return Some(idx);
                }
                if fast.reflect_inverse().unwrap() != *l {
                    return Some(idx);
                }
                None
            })
            .collect();
        for idx in bad {
            failures.push(format!("profile {d}x{r} case {idx}"));
        }
    }
    for idx in 0..100 {
        let k = sampler.operator(field, 6, 6);
        let l = sampler.operator(field, 6, 6);
        let left = k.multiply_naive(&l).unwrap().reflect().unwrap();
        let right = k
            .reflect()
            .unwrap()
            .multiply_naive(&l.reflect().unwrap())
            .unwrap();
        if left != right {
            failures.push(format!("morphism law case {idx}"));
        }
    }
    report(
        2,
        "reflection",
        &failures,
        &format!(
            "{oracle_cases} reflections match the naive rewrite; involution, inverse, and morphism laws hold on 100 pairs"
        ),
    );
}

#[test]
fn criterion_3_hermite_round_trip() {
    let _g = gate();
    let mut failures = Vec::new();
    let field = fp31();
    let mut sampler = Sampler::new(0xacce0003);
    for case in 0..100 {
        let k = 1 + sampler.below(8) as usize;
        let mut points = Vec::new();
        while points.len() < k {
            let p = sampler.scalar(field);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let mults: Vec<usize> = (0..k).map(|_| 1 + sampler.below(64) as usize).collect();
        let spec = HermiteSpec::new(points, mults).unwrap();
        let bound = spec.total().min(256);
        let deg = sampler.below(bound as u64) as usize;
        let p = sampler.polynomial(field, deg + 1);
        let vals = hermite_evaluate(&p, &spec).unwrap();
        if hermite_interpolate(&vals, &spec).unwrap() != p {
            failures.push(format!("round trip case {case} (total {})", spec.total()));
        }
    }
    // Low-degree agreement with repeated symbolic differentiation.
    let rat = FieldDescriptor::Rational;
    for case in 0..50 {
        let field = if case % 2 == 0 { field } else { rat };
        let k = 1 + sampler.below(4) as usize;
        let mut points = Vec::new();
        while points.len() < k {
            let p = FieldElement::from_integer(field, sampler.below(19) as i64 - 9);
            if !points.contains(&p) {
                points.push(p);
            }
        }
        let mults: Vec<usize> = (0..k).map(|_| 1 + sampler.below(6) as usize).collect();
        let spec = HermiteSpec::new(points, mults).unwrap();
        let deg = sampler.below(25) as usize;
        let p = sampler.polynomial(field, deg + 1);
        let got = hermite_evaluate(&p, &spec).unwrap();
        let want: Vec<Vec<FieldElement>> = spec
            .points()
            .iter()
            .zip(spec.multiplicities())
            .map(|(alpha, &c)| {
                let mut d = p.clone();
                let mut block = Vec::new();
                for _ in 0..c {
                    block.push(d.eval(alpha));
                    d = d.derivative();
                }
                block
            })
            .collect();
        if got.blocks() != &want[..] {
            failures.push(format!("symbolic oracle case {case}"));
        }
    }
    report(
        3,
        "Hermite round trip",
        &failures,
        "100 evaluate/interpolate round trips up to degree 255 and 50 symbolic-derivative checks",
    );
}

#[test]
fn criterion_4_eval_matrix_factorization() {
    let _g = gate();
    let mut failures = Vec::new();
    let mut sampler = Sampler::new(0xacce0004);
    for case in 0..100 {
        let field = if case % 2 == 0 {
            fp31()
        } else {
            FieldDescriptor::Rational
        };
        let k_op = sampler.operator(field, 5, 5);
        let l_op = sampler.operator(field, 5, 5);
        let (dk, _) = k_op.bidegree();
        let (dl, rl) = l_op.bidegree();
        let ek = dk.saturating_sub(1);
        let el = dl.saturating_sub(1);
        let cols = 1 + sampler.below(5) as usize;
        let right = eval_matrix_padded(&l_op, cols, el).unwrap();
        let left = eval_matrix_padded(&k_op, cols + el, ek).unwrap();
        let product = k_op.multiply_naive(&l_op).unwrap();
        let want = eval_matrix_padded(&product, cols, ek + el).unwrap();
        if &mat_mul(left.matrix(), right.matrix()).unwrap() != want.matrix() {
            failures.push(format!("factorization case {case} field {field}"));
        }
        if !l_op.is_zero() {
            let k = rl + sampler.below(3) as usize;
            let em = eval_matrix(&l_op, k).unwrap();
            if operator_from_eval_matrix(&em, dl - 1, rl).unwrap() != l_op {
                failures.push(format!("round trip case {case} field {field}"));
            }
        }
    }
    report(
        4,
        "evaluation-matrix factorization",
        &failures,
        "products factor through evaluation matrices and invert exactly on 100 instances",
    );
}

#[test]
fn criterion_5_scaling() {
    let _g = gate();
    let mut failures = Vec::new();
    let field = FieldDescriptor::prime_field(2013265921).unwrap();
    let seed = 0xacce0005u64;
    let r = 4usize;
    let reps = |d: usize| if d >= 2048 { 3 } else { 5 };
    let fast_grid = [256usize, 512, 1024, 2048, 4096];
    let mut fast_times = Vec::new();
    for &d in &fast_grid {
        let rec = bench::measure("fast", d, r, field, reps(d), seed).unwrap();
        fast_times.push(rec.median_ns as f64);
    }
    let naive_grid = [256usize, 512, 1024];
    let mut naive_times = Vec::new();
    for &d in &naive_grid {
        let rec = bench::measure("naive", d, r, field, reps(d), seed).unwrap();
        naive_times.push(rec.median_ns as f64);
    }
    let fast_ratios: Vec<f64> = fast_times.windows(2).map(|w| w[1] / w[0]).collect();
    let naive_ratios: Vec<f64> = naive_times.windows(2).map(|w| w[1] / w[0]).collect();
    for (i, &ratio) in fast_ratios.iter().rev().take(2).enumerate() {
        if ratio > 3.0 {
            failures.push(format!(
                "fast doubling ratio {} at the {}-to-last step exceeds 3.0",
                ratio,
                i + 1
            ));
        }
    }
    for (i, &ratio) in naive_ratios.iter().enumerate() {
        if ratio < 3.5 {
            failures.push(format!(
                "naive doubling ratio {ratio} at step {i} is below 3.5"
            ));
        }
    }
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|t| format!("{:.1}ms", t / 1e6))
            .collect::<Vec<_>>()
            .join(" ")
    };
    report(
        5,
        "scaling",
        &failures,
        &format!(
            "fast medians [{}] ratios [{}]; naive medians [{}] ratios [{}]",
            fmt(&fast_times),
            fast_ratios
                .iter()
                .map(|x| format!("{x:.2}"))
                .collect::<Vec<_>>()
                .join(" "),
            fmt(&naive_times),
            naive_ratios
                .iter()
                .map(|x| format!("{x:.2}"))
                .collect::<Vec<_>>()
                .join(" ")
        ),
    );
}

#[test]
fn criterion_6_cli_determinism() {
    let _g = gate();
    let mut failures = Vec::new();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_weyl"))
            .args(["verify", "--seed", "42"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    let second = run();
    if !first.status.success() {
        failures.push("verify --seed 42 did not pass".into());
    }
    if first.stdout != second.stdout {
        failures.push("verify reports differ between runs".into());
    }
    let text = String::from_utf8_lossy(&first.stdout).to_string();
    let checks: usize = text
        .lines()
        .find_map(|l| l.strip_prefix("total: "))
        .and_then(|rest| rest.split_whitespace().next())
        .and_then(|n| n.parse().ok())
        .unwrap_or(0);
    if checks < 1000 {
        failures.push(format!("verify ran only {checks} checks (need 1000)"));
    }
    // Parse/print round trip on 500 random operators.
    let mut sampler = Sampler::new(0xacce0006);
    for case in 0..500 {
        let field = if case % 2 == 0 {
            fp31()
        } else {
            FieldDescriptor::Rational
        };
        let op = sampler.operator(field, 6, 6);
        if DiffOperator::parse(&op.to_string(), field).unwrap() != op {
            failures.push(format!("text round trip case {case}"));
        }
    }
    // The printable grammar itself stays stable.
    let d = DiffOperator::parse("D", FieldDescriptor::Rational).unwrap();
    let x = DiffOperator::parse("x", FieldDescriptor::Rational).unwrap();
    if d.multiply(&x).unwrap().to_string() != "1 + x*D" {
        failures.push("canonical print of the commutation product changed".into());
    }
    if Polynomial::parse("x^2 - 1", FieldDescriptor::Rational)
        .unwrap()
        .to_string()
        != "x^2 - 1"
    {
        failures.push("canonical polynomial print changed".into());
    }
    report(
        6,
        "CLI determinism",
        &failures,
        &format!("verify --seed 42 ran {checks} checks twice with byte-identical reports; 500 text round trips"),
    );
}
