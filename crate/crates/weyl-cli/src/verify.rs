//! Deterministic verification suite: oracle equivalences and algebra
//! laws, driven by a seeded generator so reports reproduce byte-for-byte.

use weyl::{
    eval_matrix, eval_matrix_padded, mat_mul, mat_mul_with_threshold, operator_from_eval_matrix,
    DiffOperator, FieldDescriptor, FieldElement, HermitePlan, HermiteSpec, Matrix, MulOptions,
    Polynomial, Sampler,
};

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    pub trials: usize,
    pub profiles: Vec<(usize, usize)>,
    pub inject_fault: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 42,
            trials: 25,
            profiles: vec![(8, 8), (16, 4), (4, 16), (6, 12), (12, 6)],
            inject_fault: false,
        }
    }
}

#[derive(Debug)]
pub struct VerifyReport {
    pub text: String,
    pub checks: usize,
    pub failures: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

struct Suite {
    name: &'static str,
    checks: usize,
    failures: Vec<String>,
    seed: u64,
}

impl Suite {
    fn new(name: &'static str, seed: u64) -> Self {
        Suite {
            name,
            checks: 0,
            failures: Vec::new(),
            seed,
        }
    }

    fn check(&mut self, ok: bool, detail: impl FnOnce() -> String) {
        let case = self.checks;
        self.checks += 1;
        if !ok {
            self.failures.push(format!(
                "FAIL {} case {case}: {} (seed {})",
                self.name,
                detail(),
                self.seed
            ));
        }
    }
}

fn rational() -> FieldDescriptor {
    FieldDescriptor::Rational
}

fn fp31() -> FieldDescriptor {
    FieldDescriptor::prime_field(2147483647).unwrap()
}

const FORCE_FAST: MulOptions = MulOptions {
    naive_min: 0,
    naive_product: 0,
    guard_fallback_product: 0,
};

pub fn run(config: &VerifyConfig) -> VerifyReport {
    let t = config.trials;
    let seed = config.seed;
    let salt = |idx: u64| seed.wrapping_add(idx.wrapping_mul(0x9e3779b97f4a7c15));
    let suites = vec![
        field_laws(salt(1), t),
        poly_kernels(salt(2), t),
        poly_shift(salt(3), t),
        falling_transforms(salt(4), t),
        hermite_round_trip(salt(5), t),
        matrix_paths(salt(6), t),
        eval_matrices(salt(7), t),
        mul_oracle(salt(8), t, &config.profiles, config.inject_fault),
        forced_paths(salt(9), t),
        reflect_oracle(salt(10), t),
        reflect_laws(salt(11), t),
        operator_laws(salt(12), t),
        text_round_trip(salt(13), t),
    ];
    let mut text = format!(
        "weyl verify: seed={} trials={} profiles={}\n",
        seed,
        t,
        config
            .profiles
            .iter()
            .map(|(d, r)| format!("{d}x{r}"))
            .collect::<Vec<_>>()
            .join(",")
    );
    let mut checks = 0;
    let mut failures = 0;
    for suite in &suites {
        checks += suite.checks;
        failures += suite.failures.len();
        text.push_str(&format!(
            "  {:<20} {}/{}\n",
            suite.name,
            suite.checks - suite.failures.len(),
            suite.checks
        ));
    }
    for suite in &suites {
        for line in suite.failures.iter().take(12) {
            text.push_str(line);
            text.push('\n');
        }
    }
    text.push_str(&format!("total: {checks} checks, {failures} failures\n"));
    if failures == 0 {
        text.push_str("PASS\n");
    } else {
        text.push_str(&format!(
            "reproduce: weyl verify --seed {seed} --trials {t}\n"
        ));
        text.push_str("FAIL\n");
    }
    VerifyReport {
        text,
        checks,
        failures,
    }
}

fn field_laws(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("field_laws", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let a = s.scalar(field);
            let b = s.scalar(field);
            let c = s.scalar(field);
            suite.check(
                (a.checked_add(&b).unwrap()).checked_add(&c).unwrap()
                    == a.checked_add(&b.checked_add(&c).unwrap()).unwrap(),
                || format!("addition associativity over {field}"),
            );
            let left = a.checked_mul(&b.checked_add(&c).unwrap()).unwrap();
            let right = a
                .checked_mul(&b)
                .unwrap()
                .checked_add(&a.checked_mul(&c).unwrap())
                .unwrap();
            suite.check(left == right, || format!("distributivity over {field}"));
            let nz = s.nonzero_scalar(field);
            suite.check(nz.checked_mul(&nz.inv().unwrap()).unwrap().is_one(), || {
                format!("multiplicative inverse over {field}")
            });
            let roundtrip = a.checked_sub(&b).unwrap().checked_add(&b).unwrap();
            suite.check(roundtrip == a, || {
                format!("sub/add round trip over {field}")
            });
        }
    }
    suite
}

fn poly_kernels(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("poly_kernels", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let a = s.polynomial(field, 40);
            let b = s.polynomial(field, 37);
            let fast = a.mul(&b).unwrap();
            let slow = a.mul_with_kernel(&b, weyl::MulKernel::Schoolbook).unwrap();
            suite.check(fast == slow, || format!("kernel agreement over {field}"));
            let q = s.polynomial(field, 9);
            if q.is_zero() {
                suite.check(true, String::new);
                continue;
            }
            let (quot, rem) = a.divrem(&q).unwrap();
            let ok = quot.mul(&q).unwrap().add(&rem).unwrap() == a && rem.len() < q.len();
            suite.check(ok, || format!("division reconstruction over {field}"));
        }
    }
    suite
}

fn poly_shift(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("poly_shift", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let p = s.polynomial(field, 24);
            let a = s.scalar(field);
            let shifted = p.taylor_shift(&a).unwrap();
            suite.check(shifted.taylor_shift(&a.negated()).unwrap() == p, || {
                format!("shift round trip over {field}")
            });
            let x = s.scalar(field);
            suite.check(
                shifted.eval(&x) == p.eval(&x.checked_add(&a).unwrap()),
                || format!("shift evaluation law over {field}"),
            );
        }
    }
    suite
}

fn falling_transforms(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("falling_transforms", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let len = 1 + s.below(24) as usize;
            let coeffs: Vec<FieldElement> = (0..len).map(|_| s.scalar(field)).collect();
            let vals = weyl::falling_to_values(&coeffs, len, field).unwrap();
            suite.check(
                weyl::values_to_falling(&vals, field).unwrap() == coeffs,
                || format!("falling transform round trip over {field}"),
            );
        }
    }
    suite
}

fn hermite_round_trip(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("hermite", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let k = 1 + s.below(4) as usize;
            let mut points = Vec::new();
            while points.len() < k {
                let c = s.scalar(field);
                if !points.contains(&c) {
                    points.push(c);
                }
            }
            let mults: Vec<usize> = (0..k).map(|_| 1 + s.below(6) as usize).collect();
            let spec = HermiteSpec::new(points, mults).unwrap();
            let plan = HermitePlan::new(spec.clone()).unwrap();
            let deg = s.below(spec.total() as u64) as usize;
            let p = s.polynomial(field, deg + 1);
            let vals = plan.evaluate(&p).unwrap();
            suite.check(plan.interpolate(&vals).unwrap() == p, || {
                format!("evaluate/interpolate round trip over {field}")
            });
        }
    }
    suite
}

fn matrix_paths(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("matrix_paths", seed);
    let mut s = Sampler::new(seed);
    let field = fp31();
    for _ in 0..trials {
        let m = 1 + s.below(24) as usize;
        let n = 1 + s.below(24) as usize;
        let q = 1 + s.below(24) as usize;
        let mut a = Matrix::zero(m, n, field);
        let mut b = Matrix::zero(n, q, field);
        for i in 0..m {
            for j in 0..n {
                *a.get_mut(i, j) = s.scalar(field);
            }
        }
        for i in 0..n {
            for j in 0..q {
                *b.get_mut(i, j) = s.scalar(field);
            }
        }
        let strassen = mat_mul_with_threshold(&a, &b, 4).unwrap();
        let plain = mat_mul_with_threshold(&a, &b, usize::MAX).unwrap();
        suite.check(strassen == plain, || "strassen vs schoolbook".into());
    }
    suite
}

fn eval_matrices(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("eval_matrices", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let l = s.operator(field, 4, 4);
            let (d, r) = l.bidegree();
            if l.is_zero() {
                suite.check(true, String::new);
                suite.check(true, String::new);
                continue;
            }
            let k = r + s.below(3) as usize;
            let em = eval_matrix(&l, k).unwrap();
            suite.check(
                operator_from_eval_matrix(&em, d - 1, r).unwrap() == l,
                || format!("evaluation matrix round trip over {field}"),
            );
            let other = s.operator(field, 4, 4);
            let (d2, _) = other.bidegree();
            let e1 = d.saturating_sub(1);
            let e2 = d2.saturating_sub(1);
            let cols = 1 + s.below(4) as usize;
            let right = eval_matrix_padded(&other, cols, e2).unwrap();
            let left = eval_matrix_padded(&l, cols + e2, e1).unwrap();
            let product = l.multiply_naive(&other).unwrap();
            let want = eval_matrix_padded(&product, cols, e1 + e2).unwrap();
            suite.check(
                &mat_mul(left.matrix(), right.matrix()).unwrap() == want.matrix(),
                || format!("evaluation matrix factorization over {field}"),
            );
        }
    }
    suite
}

fn mul_oracle(seed: u64, trials: usize, profiles: &[(usize, usize)], inject_fault: bool) -> Suite {
    let mut suite = Suite::new("mul_oracle", seed);
    let mut s = Sampler::new(seed);
    for &(d, r) in profiles {
        for _ in 0..trials {
            let a = s.operator(fp31(), d, r);
            let b = s.operator(fp31(), d, r);
            let got = a.multiply(&b).unwrap();
            let mut want = a.multiply_naive(&b).unwrap();
            if inject_fault && suite.checks == 0 {
                want = want.add(&DiffOperator::one(fp31())).unwrap();
            }
            suite.check(got == want, || {
                format!("profile {d}x{r} field {} mul vs naive", fp31())
            });
        }
    }
    for &(d, r) in profiles.iter().filter(|(d, r)| d * r <= 72).take(3) {
        for _ in 0..trials.div_ceil(2) {
            let a = s.operator(rational(), d, r);
            let b = s.operator(rational(), d, r);
            suite.check(
                a.multiply(&b).unwrap() == a.multiply_naive(&b).unwrap(),
                || format!("profile {d}x{r} field rational mul vs naive"),
            );
        }
    }
    suite
}

fn forced_paths(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("forced_paths", seed);
    let mut s = Sampler::new(seed);
    for _ in 0..trials {
        let a = s.operator(fp31(), 4, 8);
        let b = s.operator(fp31(), 4, 8);
        suite.check(
            a.multiply_tall(&b).unwrap() == a.multiply_naive(&b).unwrap(),
            || "order-dominant path vs naive".into(),
        );
        let c = s.operator(fp31(), 8, 4);
        let e = s.operator(fp31(), 8, 4);
        suite.check(
            c.multiply_wide(&e).unwrap() == c.multiply_naive(&e).unwrap(),
            || "degree-dominant path vs naive".into(),
        );
    }
    suite
}

fn reflect_oracle(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("reflect_oracle", seed);
    let mut s = Sampler::new(seed);
    for (d, r) in [(12usize, 12usize), (24, 4), (4, 24)] {
        for _ in 0..trials {
            let l = s.operator(fp31(), d, r);
            suite.check(l.reflect().unwrap() == l.reflect_naive(), || {
                format!("profile {d}x{r} field {} reflect vs naive", fp31())
            });
        }
    }
    for _ in 0..trials {
        let l = s.operator(rational(), 6, 6);
        suite.check(l.reflect().unwrap() == l.reflect_naive(), || {
            "profile 6x6 field rational reflect vs naive".into()
        });
    }
    suite
}

fn reflect_laws(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("reflect_laws", seed);
    let mut s = Sampler::new(seed);
    for _ in 0..trials {
        let l = s.operator(fp31(), 6, 5);
        suite.check(
            l.reflect().unwrap().reflect().unwrap() == l.sign_involution(),
            || "double reflection is the sign involution".into(),
        );
        suite.check(l.reflect().unwrap().reflect_inverse().unwrap() == l, || {
            "inverse reflection round trip".into()
        });
        let (d, r) = l.bidegree();
        suite.check(
            l.is_zero() || l.reflect().unwrap().bidegree() == (r, d),
            || "reflection swaps the bidegree".into(),
        );
        let k = s.operator(fp31(), 4, 4);
        suite.check(
            k.multiply_naive(&l).unwrap().reflect().unwrap()
                == k.reflect()
                    .unwrap()
                    .multiply_naive(&l.reflect().unwrap())
                    .unwrap(),
            || "reflection is a ring morphism".into(),
        );
    }
    suite
}

fn operator_laws(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("operator_laws", seed);
    let mut s = Sampler::new(seed);
    for _ in 0..trials {
        let k = s.operator(fp31(), 4, 5);
        let l = s.operator(fp31(), 5, 4);
        let p = s.polynomial(fp31(), 12);
        let composed = k.apply(&l.apply(&p).unwrap()).unwrap();
        suite.check(
            k.multiply_with(&l, &FORCE_FAST).unwrap().apply(&p).unwrap() == composed,
            || "product acts as composition".into(),
        );
        let n = 1 + s.below(6) as usize;
        let q = s.polynomial(fp31(), n);
        suite.check(
            l.apply(&q).unwrap() == l.truncate_order(n).apply(&q).unwrap(),
            || "truncation preserves low-degree action".into(),
        );
        let a = s.operator(fp31(), 4, 4);
        let b = s.operator(fp31(), 4, 4);
        let c = s.operator(fp31(), 4, 4);
        let left = a.multiply(&b).unwrap().multiply(&c).unwrap();
        let right = a.multiply(&b.multiply(&c).unwrap()).unwrap();
        suite.check(left == right, || "multiplication associativity".into());
    }
    suite
}

fn text_round_trip(seed: u64, trials: usize) -> Suite {
    let mut suite = Suite::new("text_round_trip", seed);
    let mut s = Sampler::new(seed);
    for field in [rational(), fp31()] {
        for _ in 0..trials {
            let l = s.operator(field, 5, 5);
            suite.check(
                DiffOperator::parse(&l.to_string(), field).unwrap() == l,
                || format!("text round trip over {field}"),
            );
            suite.check(DiffOperator::from_json(&l.to_json()).unwrap() == l, || {
                format!("JSON round trip over {field}")
            });
        }
    }
    suite
}

/// Sanity anchor used by the CLI tests: a tiny deterministic evaluation
/// also exercised through the public API.
pub fn quick_self_check() -> bool {
    let f = FieldDescriptor::Rational;
    let d = DiffOperator::parse("D", f).unwrap();
    let x = DiffOperator::parse("x", f).unwrap();
    d.multiply(&x).unwrap().to_string() == "1 + x*D"
        && Polynomial::parse("x^2 - 1", f).unwrap().to_string() == "x^2 - 1"
}
