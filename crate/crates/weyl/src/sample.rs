//! Deterministic sampling for verification and benchmarks.
//!
//! The generator is SplitMix64: `state += 0x9E3779B97F4A7C15`, then two
//! xor-multiply finalization rounds. Draw discipline, fixed across
//! platforms and releases so reports reproduce byte-for-byte:
//!
//! - `below(n)` consumes one draw and reduces it modulo `n`;
//! - a prime-field scalar consumes one draw;
//! - a rational scalar consumes two draws (numerator in `[-10, 10]`,
//!   denominator in `[1, 9]`);
//! - polynomials and operators fill coefficients in increasing index
//!   order (operators row-major: D-exponent outer, x-exponent inner).

use crate::field::{FieldDescriptor, FieldElement};
use crate::op::DiffOperator;
use crate::poly::Polynomial;

#[derive(Debug, Clone)]
pub struct Sampler {
    state: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw below `n` (single draw, modulo reduction).
    pub fn below(&mut self, n: u64) -> u64 {
        debug_assert!(n > 0);
        self.next_u64() % n
    }

    pub fn scalar(&mut self, field: FieldDescriptor) -> FieldElement {
        match field {
            FieldDescriptor::PrimeField(p) => {
                FieldElement::from_integer(field, self.below(p) as i64)
            }
            FieldDescriptor::Rational => {
                let numer = self.below(21) as i64 - 10;
                let denom = self.below(9) as i64 + 1;
                FieldElement::rational(numer, denom).expect("nonzero denominator")
            }
        }
    }

    pub fn nonzero_scalar(&mut self, field: FieldDescriptor) -> FieldElement {
        loop {
            let c = self.scalar(field);
            if !c.is_zero() {
                return c;
            }
        }
    }

    /// Dense polynomial with `len` sampled coefficients (then trimmed).
    pub fn polynomial(&mut self, field: FieldDescriptor, len: usize) -> Polynomial {
        Polynomial::new((0..len).map(|_| self.scalar(field)).collect(), field)
    }

    /// Dense operator with bidegree at most `(d, r)` (trimmed).
    pub fn operator(&mut self, field: FieldDescriptor, d: usize, r: usize) -> DiffOperator {
        let mut terms = Vec::with_capacity(d * r);
        for i in 0..r {
            for j in 0..d {
                terms.push((i, j, self.scalar(field)));
            }
        }
        DiffOperator::from_terms(field, terms)
    }
}
