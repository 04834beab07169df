//! The spaces `F(n) = ⟨Δ, Δ³, …, Δ^{2n−1}⟩`, Hecke operators as matrices on
//! them, and the algebra `A(n) ⊂ End(F(n))` they generate.
//!
//! Coordinates are in the ascending basis `Δ^1, Δ^3, …`; coordinate `i`
//! is the coefficient of `Δ^{2i+1}`. In this basis every `T_p` sends each
//! `Δ^k` into the span of lower powers, so its matrix has nonzero entries
//! only above the diagonal.

use std::fmt;

use crate::arith::{factor, is_odd_prime};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::gf2::{Echelon, GF2Matrix};
use crate::monomial::MExpansion;
use crate::series::{F2Series, OddDeltaPowers};

/// An element of `F(n)` in the basis of odd powers of `Δ`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FElement {
    coords: Bits,
}

impl FElement {
    pub fn zero(level: usize) -> Self {
        FElement {
            coords: Bits::zeros(level),
        }
    }

    pub fn from_coords(coords: Bits) -> Self {
        FElement { coords }
    }

    /// `Σ Δ^k` over the given odd exponents, at the given level.
    pub fn from_delta_exponents<I: IntoIterator<Item = usize>>(exps: I, level: usize) -> Result<Self> {
        let mut coords = Bits::zeros(level);
        for k in exps {
            if k % 2 == 0 {
                return Err(Error::EvenPower(k as i64));
            }
            if k > 2 * level - 1 {
                return Err(Error::InvalidArgument(format!(
                    "Δ^{k} is not in F({level})"
                )));
            }
            coords.flip((k - 1) / 2);
        }
        Ok(FElement { coords })
    }

    pub fn level(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &Bits {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_zero()
    }

    /// Odd exponents `k` with `Δ^k` in the support, ascending.
    pub fn delta_exponents(&self) -> Vec<usize> {
        self.coords.iter_ones().map(|i| 2 * i + 1).collect()
    }

    /// Largest exponent in the support.
    pub fn dominant_exponent(&self) -> Option<usize> {
        self.coords.last_one().map(|i| 2 * i + 1)
    }

    /// Smallest `n` with the element in `F(n)`.
    pub fn minimal_level(&self) -> usize {
        self.coords.last_one().map_or(1, |i| i + 1)
    }

    /// The same element viewed in `F(level)`.
    pub fn at_level(&self, level: usize) -> FElement {
        assert!(
            level >= self.minimal_level(),
            "element does not fit in F({level})"
        );
        FElement {
            coords: self.coords.resized(level),
        }
    }

    pub fn add(&self, other: &FElement) -> FElement {
        let level = self.level().max(other.level());
        let mut coords = self.coords.resized(level);
        coords.xor_assign(&other.coords);
        FElement { coords }
    }

    /// q-expansion at the given precision.
    pub fn to_series(&self, precision: usize) -> F2Series {
        let powers = OddDeltaPowers::new(self.minimal_level(), precision);
        self.to_series_with(&powers)
    }

    pub fn to_series_with(&self, powers: &OddDeltaPowers) -> F2Series {
        let mut s = F2Series::zero(powers.precision());
        for i in self.coords.iter_ones() {
            s.add_assign(powers.by_index(i));
        }
        s
    }
}

impl fmt::Debug for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FElement(F({}), Δ^{:?})", self.level(), self.delta_exponents())
    }
}

impl fmt::Display for FElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let exps = self.delta_exponents();
        if exps.is_empty() {
            return write!(f, "0");
        }
        let terms: Vec<String> = exps.iter().map(|k| format!("Δ^{k}")).collect();
        write!(f, "{}", terms.join(" + "))
    }
}

/// The basis `Δ, Δ³, …, Δ^{2n−1}` of `F(n)` with q-expansions at a fixed
/// precision, used to read off coordinates of series.
#[derive(Clone, Debug)]
pub struct DeltaBasis {
    level: usize,
    powers: OddDeltaPowers,
}

impl DeltaBasis {
    pub fn new(level: usize, precision: usize) -> Self {
        assert!(level >= 1);
        assert!(precision >= 2 * level - 1, "basis precision below 2n-1");
        DeltaBasis {
            level,
            powers: OddDeltaPowers::new(level, precision),
        }
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn precision(&self) -> usize {
        self.powers.precision()
    }

    pub fn powers(&self) -> &OddDeltaPowers {
        &self.powers
    }

    /// Greedy elimination on leading exponents. The residue is checked
    /// against the full precision of `f`, so components of higher `Δ`
    /// powers show up as errors rather than being dropped.
    pub fn expand(&self, f: &F2Series) -> Result<FElement> {
        let n = self.level;
        if f.precision() < 2 * n - 1 {
            return Err(Error::InsufficientPrecision {
                have: f.precision(),
                need: 2 * n - 1,
            });
        }
        if f.precision() > self.precision() {
            return Err(Error::InsufficientPrecision {
                have: self.precision(),
                need: f.precision(),
            });
        }
        let not_in = |reason: String| Error::NotInF {
            level: n,
            precision: f.precision(),
            reason,
        };
        let mut residue = f.clone();
        let mut coords = Bits::zeros(n);
        while let Some(e) = residue.leading_exponent() {
            if e % 2 == 0 {
                return Err(not_in(format!("even leading exponent {e}")));
            }
            if e > 2 * n - 1 {
                return Err(not_in(format!("leading exponent {e} exceeds {}", 2 * n - 1)));
            }
            residue.add_assign(self.powers.get(e));
            coords.set((e - 1) / 2, true);
        }
        Ok(FElement { coords })
    }
}

/// Coordinates of `f` in `F(n)`; `f` must be known to precision `2n − 1`.
pub fn expand_in_delta_basis(f: &F2Series, n: usize) -> Result<FElement> {
    if n == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    if f.precision() < 2 * n - 1 {
        return Err(Error::InsufficientPrecision {
            have: f.precision(),
            need: 2 * n - 1,
        });
    }
    DeltaBasis::new(n, f.precision()).expand(f)
}

/// Matrix of `T_p` on `F(n)`; column `k` holds the coordinates of
/// `T_p Δ^{2k+1}`.
///
/// Images are computed to precision `4n − 1` and must expand inside `F(n)`
/// with zero residue; this checks `T_p F(n) ⊆ F(n)` rather than assuming it.
pub fn hecke_matrix(p: u64, n: usize) -> Result<GF2Matrix> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("level must be positive".into()));
    }
    let image_precision = 4 * n - 1;
    let powers = OddDeltaPowers::new(n, p as usize * image_precision);
    let basis = DeltaBasis::new(n, image_precision);
    let mut columns = Vec::with_capacity(n);
    for i in 0..n {
        let image = powers.by_index(i).hecke(p)?;
        columns.push(basis.expand(&image)?.coords);
    }
    let m = GF2Matrix::from_columns(&columns, n);
    assert!(
        m.is_strictly_upper(),
        "T_{p} on F({n}) does not lower Δ-exponents"
    );
    Ok(m)
}

/// The matrices of `T₃` and `T₅` on `F(n)`.
pub fn t3_t5(n: usize) -> Result<(GF2Matrix, GF2Matrix)> {
    Ok((hecke_matrix(3, n)?, hecke_matrix(5, n)?))
}

/// Dimension of the unital algebra generated by the given Hecke operators
/// on `F(n)`.
pub fn algebra_dimension(n: usize, generators: &[u64]) -> Result<usize> {
    if generators.is_empty() {
        return Err(Error::InvalidArgument("no generators".into()));
    }
    let mats = generators
        .iter()
        .map(|&p| hecke_matrix(p, n))
        .collect::<Result<Vec<_>>>()?;
    Ok(span_dimension(&mats))
}

/// Dimension of the unital algebra generated by commuting square matrices:
/// closes `{I}` under left multiplication by each generator.
pub fn span_dimension(generators: &[GF2Matrix]) -> usize {
    let n = generators.first().map_or(0, GF2Matrix::nrows);
    let mut basis = Echelon::new(n * n);
    let identity = GF2Matrix::identity(n);
    basis.insert(&identity.flatten());
    let mut frontier = vec![identity];
    while let Some(m) = frontier.pop() {
        for g in generators {
            let prod = g.mul(&m);
            if basis.insert(&prod.flatten()) {
                frontier.push(prod);
            }
        }
    }
    basis.rank()
}

/// Dimension of `{X ∈ End(F(n)) : X T₃ = T₃ X, X T₅ = T₅ X}`.
pub fn commutant_dimension(n: usize) -> Result<usize> {
    let (t3, t5) = t3_t5(n)?;
    Ok(commutant_of(&[t3, t5]))
}

/// Dimension of the commutant of a set of `n × n` matrices, by solving the
/// linear system in the `n²` entries of `X`.
pub fn commutant_of(mats: &[GF2Matrix]) -> usize {
    let n = mats.first().map_or(0, GF2Matrix::nrows);
    let unknowns = n * n;
    let mut eqs = Echelon::new(unknowns);
    for t in mats {
        for i in 0..n {
            for j in 0..n {
                // (XT − TX)_{ij} = Σ_k X_{ik} T_{kj} + Σ_k T_{ik} X_{kj}
                let mut row = Bits::zeros(unknowns);
                for k in 0..n {
                    if t.get(k, j) {
                        row.flip(i * n + k);
                    }
                    if t.get(i, k) {
                        row.flip(k * n + j);
                    }
                }
                eqs.insert(&row);
            }
        }
    }
    unknowns - eqs.rank()
}

pub fn nilpotency_index(m: &GF2Matrix) -> Result<usize> {
    m.nilpotency_index()
}

/// `u(T₃, T₅)` on `F(n)`.
pub fn evaluate_on_level(u: &MExpansion, n: usize) -> Result<GF2Matrix> {
    let (t3, t5) = t3_t5(n)?;
    u.evaluate(&t3, &t5)
}

/// Whether `F(n) ⊆ u(T₃, T₅) · F(big_n)`.
pub fn check_divisibility(u: &MExpansion, n: usize, big_n: usize) -> Result<bool> {
    if u.is_zero() {
        return Err(Error::ZeroElement);
    }
    if big_n < n || n == 0 {
        return Err(Error::InvalidArgument(format!(
            "need 1 ≤ n ≤ N, got n = {n}, N = {big_n}"
        )));
    }
    let m = evaluate_on_level(u, big_n)?;
    let mut image = Echelon::new(big_n);
    for j in 0..big_n {
        image.insert(&m.column(j));
    }
    Ok((0..n).all(|i| image.contains(&Bits::unit(big_n, i))))
}

/// Smallest `N ∈ [n, max_level]` with `F(n) ⊆ u · F(N)`.
pub fn minimal_divisibility_level(u: &MExpansion, n: usize, max_level: usize) -> Result<Option<usize>> {
    for big_n in n..=max_level {
        if check_divisibility(u, n, big_n)? {
            return Ok(Some(big_n));
        }
    }
    Ok(None)
}

/// `dim F(n) / (T₃F(n) + T₅F(n))`, the minimal number of generators of
/// `F(n)` as an `A(n)`-module. A free module of rank one would need 1.
pub fn module_generator_count(n: usize) -> Result<usize> {
    let (t3, t5) = t3_t5(n)?;
    let mut image = Echelon::new(n);
    for j in 0..n {
        image.insert(&t3.column(j));
        image.insert(&t5.column(j));
    }
    Ok(n - image.rank())
}

/// The Hecke word `T_{p_1}⋯T_{p_r}` with `p_1⋯p_r` the leading q-exponent
/// of `f`; it pairs with `f` to 1.
pub fn witness_word(f: &FElement) -> Result<Vec<u64>> {
    let lead = f.coords().first_one().ok_or(Error::ZeroElement)?;
    Ok(factor(2 * lead as u64 + 1))
}

/// The q¹ coefficient of `T_{p_1}⋯T_{p_r} f` for the witness word of
/// [`witness_word`].
pub fn witness_pairing(f: &FElement, powers: &OddDeltaPowers) -> Result<bool> {
    let word = witness_word(f)?;
    let series = f.to_series_with(powers);
    let image = series.hecke_product(&word)?;
    Ok(image.coeff(1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::series::{delta, delta_pow};

    #[test]
    fn expansion_examples() {
        assert_eq!(expand_in_delta_basis(&delta(9), 1).unwrap().delta_exponents(), vec![1]);
        let f = delta(40).add(&delta_pow(3, 40).unwrap());
        assert_eq!(expand_in_delta_basis(&f, 2).unwrap().delta_exponents(), vec![1, 3]);
        let g = F2Series::from_exponents([2, 5], 20);
        assert!(matches!(expand_in_delta_basis(&g, 3), Err(Error::NotInF { .. })));
        assert!(matches!(
            expand_in_delta_basis(&delta(2), 2),
            Err(Error::InsufficientPrecision { .. })
        ));
        // Δ^5 is invisible at level 2 only if the precision hides it.
        let d5 = delta_pow(5, 40).unwrap();
        assert!(matches!(expand_in_delta_basis(&d5, 2), Err(Error::NotInF { .. })));
    }

    #[test]
    fn small_hecke_matrices() {
        let t3 = hecke_matrix(3, 2).unwrap();
        assert!(t3.get(0, 1) && !t3.get(0, 0) && !t3.get(1, 1) && !t3.get(1, 0));
        assert_eq!(t3.rank(), 1);
        assert!(hecke_matrix(5, 2).unwrap().is_zero());
        let t5 = hecke_matrix(5, 3).unwrap();
        let mut expected = GF2Matrix::zeros(3, 3);
        expected.set(0, 2, true);
        assert_eq!(t5, expected);
        assert_eq!(hecke_matrix(4, 3).unwrap_err(), Error::NotOddPrime(4));
    }

    #[test]
    fn algebra_and_commutant_small() {
        assert_eq!(algebra_dimension(1, &[3, 5]).unwrap(), 1);
        assert_eq!(algebra_dimension(2, &[3, 5]).unwrap(), 2);
        assert_eq!(commutant_dimension(1).unwrap(), 1);
        assert_eq!(commutant_dimension(2).unwrap(), 2);
        assert!(algebra_dimension(3, &[]).is_err());
    }

    #[test]
    fn commutant_of_jordan_block_by_enumeration() {
        // All 16 matrices X with X J = J X for J = [[0,1],[0,0]].
        let j = hecke_matrix(3, 2).unwrap();
        let mut count = 0;
        for bits in 0u32..16 {
            let mut x = GF2Matrix::zeros(2, 2);
            for k in 0..4 {
                x.set(k / 2, k % 2, bits >> k & 1 == 1);
            }
            if x.mul(&j) == j.mul(&x) {
                count += 1;
            }
        }
        assert_eq!(count, 1 << commutant_of(&[j]));
    }

    #[test]
    fn nilpotency_examples() {
        assert_eq!(nilpotency_index(&hecke_matrix(3, 2).unwrap()), Ok(2));
        assert_eq!(nilpotency_index(&GF2Matrix::zeros(4, 4)), Ok(1));
    }

    #[test]
    fn divisibility_examples() {
        let one = MExpansion::from_pairs([(0, 0)]);
        assert!(check_divisibility(&one, 3, 3).unwrap());
        let x = MExpansion::from_pairs([(1, 0)]);
        assert!(!check_divisibility(&x, 1, 1).unwrap());
        assert!(check_divisibility(&x, 1, 2).unwrap());
        assert_eq!(check_divisibility(&MExpansion::new(), 1, 2), Err(Error::ZeroElement));
    }

    #[test]
    fn cyclic_exactly_at_powers_of_two() {
        // F(4) = A(4)·Δ^7 since T3 Δ^7 = Δ^5, T5 Δ^7 = Δ^3, T3 T5 Δ^7 = Δ.
        for n in 1..=40 {
            let cyclic = module_generator_count(n).unwrap() == 1;
            assert_eq!(cyclic, n.is_power_of_two(), "n = {n}");
        }
    }

    #[test]
    fn witness_word_for_delta_nine() {
        let f = FElement::from_delta_exponents([9, 11], 6).unwrap();
        assert_eq!(witness_word(&f).unwrap(), vec![3, 3]);
        let powers = OddDeltaPowers::new(6, 11);
        assert!(witness_pairing(&f, &powers).unwrap());
    }
}
