//! Benchmark harness: times operator products on a profile grid and
//! emits CSV rows.

use std::time::Instant;

use weyl::{DiffOperator, FieldDescriptor, MulOptions, Result, Sampler, WeylError};

/// One measured cell of the benchmark grid.
#[derive(Debug, Clone)]
pub struct BenchRecord {
    pub algorithm: String,
    pub d: usize,
    pub r: usize,
    pub field: FieldDescriptor,
    pub reps: usize,
    pub median_ns: u128,
}

fn run_once(algorithm: &str, a: &DiffOperator, b: &DiffOperator) -> Result<DiffOperator> {
    match algorithm {
        "naive" => a.multiply_naive(b),
        "fast" => a.multiply_with(
            b,
            &MulOptions {
                naive_min: 0,
                naive_product: 0,
                guard_fallback_product: 0,
            },
        ),
        other => Err(WeylError::Parse(format!(
            "unknown algorithm {other:?}; expected naive or fast"
        ))),
    }
}

/// Times one `(algorithm, d, r)` cell: a seeded random pair, one warm-up
/// run discarded, then the median of `reps` monotonic-clock timings.
pub fn measure(
    algorithm: &str,
    d: usize,
    r: usize,
    field: FieldDescriptor,
    reps: usize,
    seed: u64,
) -> Result<BenchRecord> {
    if reps < 3 {
        return Err(WeylError::PreconditionViolated(
            "benchmarks need at least 3 repetitions".into(),
        ));
    }
    field.characteristic_guard(8 * d.max(r) as u64)?;
    let mut sampler = Sampler::new(seed ^ ((d as u64) << 32) ^ r as u64);
    let a = sampler.operator(field, d, r);
    let b = sampler.operator(field, d, r);
    run_once(algorithm, &a, &b)?;
    let mut times = Vec::with_capacity(reps);
    for _ in 0..reps {
        let start = Instant::now();
        let product = run_once(algorithm, &a, &b)?;
        times.push(start.elapsed().as_nanos());
        std::hint::black_box(product);
    }
    times.sort_unstable();
    Ok(BenchRecord {
        algorithm: algorithm.to_string(),
        d,
        r,
        field,
        reps,
        median_ns: times[reps / 2],
    })
}

pub fn run_grid(
    algorithms: &[String],
    profiles: &[(usize, usize)],
    field: FieldDescriptor,
    reps: usize,
    seed: u64,
) -> Result<Vec<BenchRecord>> {
    let mut out = Vec::with_capacity(algorithms.len() * profiles.len());
    for algorithm in algorithms {
        for &(d, r) in profiles {
            out.push(measure(algorithm, d, r, field, reps, seed)?);
        }
    }
    Ok(out)
}

pub fn to_csv(records: &[BenchRecord]) -> String {
    let mut out = String::from("algorithm,d,r,field,reps,median_ns\n");
    for rec in records {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            rec.algorithm, rec.d, rec.r, rec.field, rec.reps, rec.median_ns
        ));
    }
    out
}
