//! Truncated power series over GF(2) in `q`, and the Hecke operators.
//!
//! A series carries an inclusive precision `N`: coefficients of `q^0..=q^N`
//! are known, nothing beyond is ever read. Binary operations take the
//! smaller precision of their operands.

use std::fmt;

use crate::arith::is_odd_prime;
use crate::bits::{words_for, Bits};
use crate::error::{Error, Result};

#[derive(Clone)]
pub struct F2Series {
    coeffs: Bits,
}

impl F2Series {
    pub fn zero(precision: usize) -> Self {
        F2Series {
            coeffs: Bits::zeros(precision + 1),
        }
    }

    pub fn one(precision: usize) -> Self {
        Self::monomial(0, precision)
    }

    /// `q^k`, or zero if `k` exceeds the precision.
    pub fn monomial(k: usize, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        if k <= precision {
            s.coeffs.set(k, true);
        }
        s
    }

    /// Sum of `q^e` over the given exponents; repeated exponents cancel and
    /// exponents above the precision are dropped.
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I, precision: usize) -> Self {
        let mut s = Self::zero(precision);
        for e in exps {
            if e <= precision {
                s.coeffs.flip(e);
            }
        }
        s
    }

    #[inline]
    pub fn precision(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of `q^k`. Panics when `k` is beyond the precision.
    #[inline]
    pub fn coeff(&self, k: usize) -> bool {
        assert!(
            k <= self.precision(),
            "coefficient q^{k} read beyond precision {}",
            self.precision()
        );
        self.coeffs.get(k)
    }

    pub fn get(&self, k: usize) -> Option<bool> {
        (k <= self.precision()).then(|| self.coeffs.get(k))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_zero()
    }

    /// Smallest exponent with a nonzero coefficient.
    pub fn leading_exponent(&self) -> Option<usize> {
        self.coeffs.first_one()
    }

    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.coeffs.iter_ones()
    }

    pub fn weight(&self) -> usize {
        self.coeffs.count_ones()
    }

    pub fn truncate(&self, precision: usize) -> Self {
        assert!(
            precision <= self.precision(),
            "cannot raise precision {} to {precision}",
            self.precision()
        );
        F2Series {
            coeffs: self.coeffs.resized(precision + 1),
        }
    }

    /// Equality of the coefficients up to the smaller of the two precisions.
    pub fn agrees_with(&self, other: &F2Series) -> bool {
        let p = self.precision().min(other.precision());
        let a = self.coeffs.resized(p + 1);
        let b = other.coeffs.resized(p + 1);
        a == b
    }

    pub fn add(&self, other: &F2Series) -> F2Series {
        let p = self.precision().min(other.precision());
        let mut coeffs = self.coeffs.resized(p + 1);
        let rhs = other.coeffs.resized(p + 1);
        coeffs.xor_assign(&rhs);
        F2Series { coeffs }
    }

    pub fn add_assign(&mut self, other: &F2Series) {
        if other.precision() < self.precision() {
            self.coeffs = self.coeffs.resized(other.precision() + 1);
            self.coeffs.xor_assign(&other.coeffs);
        } else {
            let rhs = other.coeffs.resized(self.coeffs.len());
            self.coeffs.xor_assign(&rhs);
        }
    }

    /// Carry-free product; each set bit of the sparser factor contributes a
    /// word-level shifted XOR of the other.
    pub fn mul(&self, other: &F2Series) -> F2Series {
        let p = self.precision().min(other.precision());
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let dense_words = &dense.coeffs.words()[..words_for(p + 1).min(dense.coeffs.words().len())];
        let mut out = Bits::zeros(p + 1);
        for e in sparse.exponents() {
            if e > p {
                break;
            }
            let room = words_for(p + 1 - e);
            out.xor_shifted(&dense_words[..room.min(dense_words.len())], e);
        }
        F2Series { coeffs: out }
    }

    /// Frobenius: `f(q)² = f(q²)` in characteristic 2. The result keeps the
    /// precision of `f`.
    pub fn square(&self) -> F2Series {
        let p = self.precision();
        let mut out = Bits::zeros(p + 1);
        {
            let src = self.coeffs.words();
            let dst = out.words_mut();
            for (i, &w) in src.iter().enumerate() {
                let lo = spread_bits((w & 0xffff_ffff) as u32);
                let hi = spread_bits((w >> 32) as u32);
                if 2 * i < dst.len() {
                    dst[2 * i] = lo;
                }
                if 2 * i + 1 < dst.len() {
                    dst[2 * i + 1] = hi;
                }
            }
        }
        out.clear_tail();
        F2Series { coeffs: out }
    }

    /// Hecke operator for an odd prime `p`: `a_n ↦ a_{pn} + a_{n/p}`, with
    /// precision `⌊N/p⌋`.
    pub fn hecke(&self, p: u64) -> Result<F2Series> {
        if !is_odd_prime(p) {
            return Err(Error::NotOddPrime(p));
        }
        let p = p as usize;
        let np = self.precision() / p;
        let mut out = Bits::zeros(np + 1);
        for n in 0..=np {
            let mut bit = self.coeffs.get(p * n);
            if n % p == 0 {
                bit ^= self.coeffs.get(n / p);
            }
            if bit {
                out.set(n, true);
            }
        }
        Ok(F2Series { coeffs: out })
    }

    /// Apply `T_{p_1} ⋯ T_{p_r}` right to left.
    pub fn hecke_product(&self, primes: &[u64]) -> Result<F2Series> {
        let mut f = self.clone();
        for &p in primes.iter().rev() {
            f = f.hecke(p)?;
        }
        Ok(f)
    }
}

/// Interleave the 32 bits of `x` with zeros: bit i moves to bit 2i.
#[inline]
fn spread_bits(x: u32) -> u64 {
    let mut v = x as u64;
    v = (v | (v << 16)) & 0x0000_ffff_0000_ffff;
    v = (v | (v << 8)) & 0x00ff_00ff_00ff_00ff;
    v = (v | (v << 4)) & 0x0f0f_0f0f_0f0f_0f0f;
    v = (v | (v << 2)) & 0x3333_3333_3333_3333;
    v = (v | (v << 1)) & 0x5555_5555_5555_5555;
    v
}

impl PartialEq for F2Series {
    /// Compares up to the smaller precision.
    fn eq(&self, other: &Self) -> bool {
        self.agrees_with(other)
    }
}

impl fmt::Debug for F2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps: Vec<usize> = self.exponents().collect();
        write!(f, "F2Series{{prec: {}, support: {:?}}}", self.precision(), exps)
    }
}

impl fmt::Display for F2Series {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for e in self.exponents() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match e {
                0 => write!(f, "1")?,
                1 => write!(f, "q")?,
                _ => write!(f, "q^{e}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.precision() + 1)
    }
}

/// `Δ = Σ_{m ≥ 0} q^{(2m+1)²}` mod 2, the generating series of odd squares.
pub fn delta(precision: usize) -> F2Series {
    let squares = (0..)
        .map(|m: usize| (2 * m + 1) * (2 * m + 1))
        .take_while(|&s| s <= precision);
    F2Series::from_exponents(squares, precision)
}

/// `Δ^k` for odd `k ≥ 1` by square-and-multiply.
pub fn delta_pow(k: i64, precision: usize) -> Result<F2Series> {
    if k <= 0 || k % 2 == 0 {
        return Err(Error::EvenPower(k));
    }
    let mut result = F2Series::one(precision);
    let mut base = delta(precision);
    let mut e = k as u64;
    while e > 0 {
        if e & 1 == 1 {
            result = result.mul(&base);
        }
        e >>= 1;
        if e > 0 {
            base = base.square();
        }
    }
    Ok(result)
}

/// The odd powers `Δ, Δ³, …, Δ^{2n−1}` at a common precision, built by
/// repeated multiplication with the sparse `Δ²`.
#[derive(Clone, Debug)]
pub struct OddDeltaPowers {
    powers: Vec<F2Series>,
    precision: usize,
}

impl OddDeltaPowers {
    pub fn new(count: usize, precision: usize) -> Self {
        let mut powers = Vec::with_capacity(count);
        if count > 0 {
            let d = delta(precision);
            let d2 = d.square();
            powers.push(d);
            for i in 1..count {
                let next = powers[i - 1].mul(&d2);
                powers.push(next);
            }
        }
        OddDeltaPowers { powers, precision }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    /// Number of stored powers.
    pub fn count(&self) -> usize {
        self.powers.len()
    }

    /// `Δ^k` for odd `k ≤ 2·count − 1`.
    pub fn get(&self, k: usize) -> &F2Series {
        assert!(k % 2 == 1, "only odd powers are stored");
        &self.powers[(k - 1) / 2]
    }

    /// `Δ^{2i+1}`.
    pub fn by_index(&self, i: usize) -> &F2Series {
        &self.powers[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn support(f: &F2Series) -> Vec<usize> {
        f.exponents().collect()
    }

    /// Schoolbook convolution on explicit coefficient vectors.
    fn naive_mul(f: &F2Series, g: &F2Series) -> F2Series {
        let p = f.precision().min(g.precision());
        let mut c = vec![false; p + 1];
        for i in 0..=p {
            for j in 0..=p - i {
                c[i + j] ^= f.coeff(i) & g.coeff(j);
            }
        }
        F2Series::from_exponents((0..=p).filter(|&k| c[k]), p)
    }

    #[test]
    fn delta_supports() {
        assert_eq!(support(&delta(30)), vec![1, 9, 25]);
        assert!(delta(0).is_zero());
        assert_eq!(delta(0).precision(), 0);
        assert_eq!(support(&delta(100)), vec![1, 9, 25, 49, 81]);
    }

    #[test]
    fn small_products() {
        let q = F2Series::monomial(1, 10);
        assert_eq!(support(&q.mul(&q)), vec![2]);
        assert!(q.mul(&F2Series::zero(10)).is_zero());
        let d = delta(30);
        let sq = d.mul(&d);
        assert_eq!(sq.precision(), 30);
        assert_eq!(support(&sq), support(&naive_mul(&d, &d)));
        assert_eq!(support(&sq), vec![2, 18]);
    }

    #[test]
    fn frobenius() {
        let f = F2Series::from_exponents([1, 9], 40);
        assert_eq!(support(&f.square()), vec![2, 18]);
        assert!(F2Series::zero(5).square().is_zero());
        assert_eq!(support(&delta(100).square()), vec![2, 18, 50, 98]);
        let big = delta(1000);
        assert_eq!(big.square(), big.mul(&big));
    }

    #[test]
    fn odd_powers() {
        assert_eq!(support(&delta_pow(1, 30).unwrap()), vec![1, 9, 25]);
        // (q + q^9 + ...)^3 = (q^2 + q^18 + ...)(q + q^9 + ...)
        let d = delta(15);
        assert_eq!(delta_pow(3, 15).unwrap(), naive_mul(&naive_mul(&d, &d), &d));
        assert_eq!(support(&delta_pow(3, 15).unwrap()), vec![3, 11]);
        for k in (1..100).step_by(2) {
            assert_eq!(delta_pow(k, 200).unwrap().leading_exponent(), Some(k as usize));
        }
        assert_eq!(delta_pow(2, 10).unwrap_err(), Error::EvenPower(2));
        assert!(delta_pow(0, 10).is_err());
        assert!(delta_pow(-3, 10).is_err());
    }

    #[test]
    fn cached_powers_match_square_and_multiply() {
        let cache = OddDeltaPowers::new(40, 500);
        for k in (1..80).step_by(2) {
            assert_eq!(cache.get(k), &delta_pow(k as i64, 500).unwrap());
        }
    }

    #[test]
    fn hecke_on_delta_powers() {
        let d = delta(300);
        let t3 = d.hecke(3).unwrap();
        assert_eq!(t3.precision(), 100);
        assert!(t3.is_zero());
        let d3 = delta_pow(3, 300).unwrap();
        assert_eq!(d3.hecke(3).unwrap(), delta(100));
        let d5 = delta_pow(5, 500).unwrap();
        assert_eq!(d5.hecke(5).unwrap(), delta(100));
    }

    #[test]
    fn hecke_rejects_bad_primes() {
        let d = delta(50);
        assert_eq!(d.hecke(2).unwrap_err(), Error::NotOddPrime(2));
        assert_eq!(d.hecke(9).unwrap_err(), Error::NotOddPrime(9));
        assert!(d.hecke(1).is_err());
    }

    #[test]
    fn t3_kills_delta_by_support_cancellation() {
        // 3n is an odd square iff n = 3u² with u odd, iff n/3 is an odd square.
        for n in 1..=100usize {
            let odd_sq = |m: usize| {
                let r = (m as f64).sqrt().round() as usize;
                r * r == m && r % 2 == 1
            };
            let a = odd_sq(3 * n);
            let b = n % 3 == 0 && odd_sq(n / 3);
            assert_eq!(a, b, "n = {n}");
        }
    }

    #[test]
    fn mismatched_precision_compares_on_overlap() {
        let a = F2Series::from_exponents([1, 9, 40], 50);
        let b = F2Series::from_exponents([1, 9], 20);
        assert_eq!(a, b);
        assert_eq!(a.add(&b).precision(), 20);
        assert!(a.add(&b).is_zero());
        assert_eq!(format!("{}", b), "q + q^9 + O(q^21)");
    }

    #[test]
    #[should_panic(expected = "beyond precision")]
    fn reading_past_precision_panics() {
        delta(10).coeff(11);
    }
}
