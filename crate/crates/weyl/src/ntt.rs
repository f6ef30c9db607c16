//! Radix-2 number-theoretic transform for prime fields whose modulus has
//! enough 2-adic headroom in `p - 1`.

use crate::field::modarith::{inv_mod, mul_mod, pow_mod, sub_mod};

/// Largest power of two dividing `p - 1`.
fn two_adic_valuation(p: u64) -> u32 {
    (p - 1).trailing_zeros()
}

/// Returns a primitive `2^k`-th root of unity mod `p`, or `None` when the
/// multiplicative group has no element of that order.
fn primitive_root_of_unity(p: u64, k: u32) -> Option<u64> {
    let v = two_adic_valuation(p);
    if k > v {
        return None;
    }
    let odd = (p - 1) >> v;
    // Deterministic search: g^odd has order dividing 2^v; it has order
    // exactly 2^v iff its 2^(v-1) power is not one.
    let mut g = 2u64;
    loop {
        let x = pow_mod(g, odd, p);
        if x != 0 && pow_mod(x, 1u64 << (v - 1), p) != 1 {
            return Some(pow_mod(x, 1u64 << (v - k), p));
        }
        g += 1;
        debug_assert!(g < p, "no generator found");
    }
}

/// True when length-`n` transforms are available mod `p`.
pub(crate) fn supports_length(p: u64, n: usize) -> bool {
    n.is_power_of_two() && (n.trailing_zeros()) <= two_adic_valuation(p) && (n as u64) < p
}

fn bit_reverse_permute(a: &mut [u64]) {
    let n = a.len();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
}

/// In-place transform with the given root of unity of order `a.len()`.
fn transform(a: &mut [u64], root: u64, p: u64) {
    let n = a.len();
    bit_reverse_permute(a);
    let mut len = 2;
    while len <= n {
        let w_len = pow_mod(root, (n / len) as u64, p);
        for chunk in a.chunks_mut(len) {
            let mut w = 1u64;
            let half = len / 2;
            for i in 0..half {
                let u = chunk[i];
                let v = mul_mod(chunk[i + half], w, p);
                chunk[i] = if u + v >= p { u + v - p } else { u + v };
                chunk[i + half] = sub_mod(u, v, p);
                w = mul_mod(w, w_len, p);
            }
        }
        len <<= 1;
    }
}

/// Cyclic convolution sized to hold the full product of `a` and `b`.
/// Returns `None` when the modulus cannot support the transform length.
pub(crate) fn convolve(a: &[u64], b: &[u64], p: u64) -> Option<Vec<u64>> {
    if a.is_empty() || b.is_empty() {
        return Some(Vec::new());
    }
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    if !supports_length(p, n) {
        return None;
    }
    let root = primitive_root_of_unity(p, n.trailing_zeros())?;
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    transform(&mut fa, root, p);
    transform(&mut fb, root, p);
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = mul_mod(*x, *y, p);
    }
    transform(&mut fa, inv_mod(root, p), p);
    let n_inv = inv_mod(n as u64, p);
    fa.truncate(out_len);
    for x in fa.iter_mut() {
        *x = mul_mod(*x, n_inv, p);
    }
    Some(fa)
}
