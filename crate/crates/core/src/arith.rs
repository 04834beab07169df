//! Small integer helpers: primality, factoring, 2-adic inverses and
//! representations by the forms a² + c·b².

pub fn isqrt(n: u64) -> u64 {
    if n == 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn is_odd_prime(n: u64) -> bool {
    n != 2 && is_prime(n)
}

/// Odd primes `3 ≤ p ≤ bound`, ascending.
pub fn odd_primes_up_to(bound: u64) -> Vec<u64> {
    if bound < 3 {
        return Vec::new();
    }
    let n = bound as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        if i != 2 {
            out.push(i as u64);
        }
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Prime factors of `m` with multiplicity, ascending.
pub fn factor(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        while m.is_multiple_of(d) {
            out.push(d);
            m /= d;
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

#[inline]
pub fn mask(bits: u32) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

/// Inverse of an odd `a` modulo `2^bits` by Newton lifting.
pub fn inverse_mod_pow2(a: u64, bits: u32) -> u64 {
    assert!(a & 1 == 1, "only odd residues are invertible mod 2^n");
    // a·a ≡ 1 (mod 8) for odd a; each step doubles the number of correct bits.
    let mut inv = a;
    let mut correct = 3;
    while correct < 64 {
        inv = inv.wrapping_mul(2u64.wrapping_sub(a.wrapping_mul(inv)));
        correct *= 2;
    }
    inv & mask(bits)
}

/// All `(a, b) ∈ Z²` with `a² + c·b² = n`.
pub fn representations(n: u64, c: u64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    let bmax = isqrt(n / c);
    for b in 0..=bmax {
        let rest = n - c * b * b;
        let a = isqrt(rest);
        if a * a != rest {
            continue;
        }
        for sa in [1i64, -1] {
            for sb in [1i64, -1] {
                let pair = (sa * a as i64, sb * b as i64);
                if !out.contains(&pair) {
                    out.push(pair);
                }
            }
        }
    }
    out
}

/// Whether `n = a² + c·b²` for some integers, optionally with `b` odd.
pub fn is_represented(n: u64, c: u64, b_odd: bool) -> bool {
    representations(n, c)
        .iter()
        .any(|&(_, b)| !b_odd || b.rem_euclid(2) == 1)
}
