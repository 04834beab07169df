//! The basis `m(a, b)` of `F` dual to the monomials `x^a y^b`, where
//! `x = T₃` and `y = T₅`.
//!
//! `m(0,0) = Δ`, `T₃ m(a,b) = m(a−1,b)`, `T₅ m(a,b) = m(a,b−1)` (zero when
//! the index would go negative), and `m(a,b)` has vanishing q¹ coefficient
//! for `(a,b) ≠ (0,0)`. Each element is found by solving those conditions
//! as a linear system inside some `F(n)`, growing `n` until the system is
//! consistent. The pairing `c_{a,b}(f) = a₁(T₃^a T₅^b f)` gives
//! coordinates in the basis, and `a_ij(p) = a_p(m(i,j))` gives the
//! expansion `T_p = Σ a_ij(p) x^i y^j`.

use std::collections::HashMap;

use crate::arith::{is_odd_prime, is_represented};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::fspace::{t3_t5, FElement};
use crate::gf2::GF2Matrix;
use crate::monomial::{MExpansion, MIndex};
use crate::series::{F2Series, OddDeltaPowers};

/// Largest level the solver will grow to.
pub const DEFAULT_LEVEL_CAP: usize = 1 << 13;

/// Default total-degree bound for `T_p` expansions.
pub const DEFAULT_TP_DEGREE: usize = 12;

/// Lazily grown table of `m(a, b)` together with `T₃`, `T₅` on the current
/// working level.
#[derive(Clone, Debug)]
pub struct MTable {
    level: usize,
    cap: usize,
    t3: GF2Matrix,
    t5: GF2Matrix,
    elements: HashMap<MIndex, FElement>,
}

impl Default for MTable {
    fn default() -> Self {
        Self::new()
    }
}

impl MTable {
    pub fn new() -> Self {
        Self::with_cap(DEFAULT_LEVEL_CAP)
    }

    pub fn with_cap(cap: usize) -> Self {
        let (t3, t5) = t3_t5(1).expect("level 1 Hecke matrices");
        MTable {
            level: 1,
            cap: cap.max(1),
            t3,
            t5,
            elements: HashMap::new(),
        }
    }

    /// The working level `n` of the cached `T₃`, `T₅` matrices.
    pub fn level(&self) -> usize {
        self.level
    }

    pub fn t3(&self) -> &GF2Matrix {
        &self.t3
    }

    pub fn t5(&self) -> &GF2Matrix {
        &self.t5
    }

    /// Grow the working level to at least `n`.
    pub fn ensure_level(&mut self, n: usize) -> Result<()> {
        if n <= self.level {
            return Ok(());
        }
        if n > self.cap {
            return Err(Error::PrecisionExhausted(format!(
                "level {n} exceeds the cap {}",
                self.cap
            )));
        }
        let (t3, t5) = t3_t5(n)?;
        self.t3 = t3;
        self.t5 = t5;
        self.level = n;
        Ok(())
    }

    pub fn m_element(&mut self, idx: MIndex) -> Result<FElement> {
        if let Some(e) = self.elements.get(&idx) {
            return Ok(e.clone());
        }
        let left = match idx.a {
            0 => None,
            a => Some(self.m_element(MIndex::new(a - 1, idx.b))?),
        };
        let down = match idx.b {
            0 => None,
            b => Some(self.m_element(MIndex::new(idx.a, b - 1))?),
        };
        self.ensure_level(2 * idx.degree() + 1)?;
        loop {
            if let Some(solution) = self.solve_at_current_level(idx, left.as_ref(), down.as_ref()) {
                let trimmed = solution.at_level(solution.minimal_level());
                self.elements.insert(idx, trimmed.clone());
                return Ok(trimmed);
            }
            let next = self.level * 2;
            self.ensure_level(next).map_err(|_| {
                Error::PrecisionExhausted(format!(
                    "m{idx} not found in F({}) and the level cap is {}",
                    self.level, self.cap
                ))
            })?;
        }
    }

    /// Solve `[T₃; T₅; e] v = [m(a−1,b); m(a,b−1); δ]` in `F(level)`.
    fn solve_at_current_level(
        &self,
        idx: MIndex,
        left: Option<&FElement>,
        down: Option<&FElement>,
    ) -> Option<FElement> {
        let n = self.level;
        let mut rows = Vec::with_capacity(2 * n + 1);
        rows.extend((0..n).map(|i| self.t3.row(i).clone()));
        rows.extend((0..n).map(|i| self.t5.row(i).clone()));
        rows.push(Bits::unit(n, 0));
        let system = GF2Matrix::from_rows(rows, n);

        let target_of = |e: Option<&FElement>| match e {
            Some(e) if e.minimal_level() > n => None,
            Some(e) => Some(e.coords().resized(n)),
            None => Some(Bits::zeros(n)),
        };
        let rhs_a = target_of(left)?;
        let rhs_b = target_of(down)?;
        let mut rhs = rhs_a.concat(&rhs_b).resized(2 * n + 1);
        if idx == MIndex::new(0, 0) {
            rhs.set(2 * n, true);
        }
        let (x, nullity) = system.solve(&rhs)?;
        assert_eq!(
            nullity, 0,
            "m{idx}: ker T3 ∩ ker T5 ∩ ker e is nonzero in F({n})"
        );
        Some(FElement::from_coords(x))
    }

    /// `m(a, b)` as a q-series at the given precision.
    pub fn m_series(&mut self, idx: MIndex, precision: usize) -> Result<F2Series> {
        Ok(self.m_element(idx)?.to_series(precision))
    }

    /// `Σ_{(a,b) ∈ c} m(a, b)`.
    pub fn recombine(&mut self, c: &MExpansion) -> Result<FElement> {
        let mut acc = FElement::zero(1);
        for idx in c.iter() {
            acc = acc.add(&self.m_element(idx)?);
        }
        Ok(acc.at_level(acc.minimal_level()))
    }

    /// Coordinates of `f` in the `m(a, b)` basis: `c_{a,b} = a₁(T₃^a T₅^b f)`,
    /// computed with the Hecke matrices on the working level.
    pub fn m_coefficients(&mut self, f: &FElement) -> Result<MExpansion> {
        self.ensure_level(f.minimal_level())?;
        let v = f.coords().resized(self.level);
        let mut out = MExpansion::new();
        let mut w = v;
        let mut b = 0;
        while !w.is_zero() {
            let mut u = w.clone();
            let mut a = 0;
            while !u.is_zero() {
                if u.get(0) {
                    out.toggle(MIndex::new(a, b));
                }
                u = self.t3.mul_vec(&u);
                a += 1;
            }
            w = self.t5.mul_vec(&w);
            b += 1;
        }
        Ok(out)
    }

    /// The index `(a, b)` such that `Δ^k` is the dominant (largest) exponent
    /// of `m(a, b)`.
    ///
    /// The code lies in the top-degree stratum of the `m`-expansion of `Δ^k`.
    /// When that stratum has several members (as for `Δ^19 = m(1,2) + m(3,0)`)
    /// the candidates are told apart by their dominant exponents.
    pub fn code_of(&mut self, k: usize) -> Result<MIndex> {
        if k.is_multiple_of(2) {
            return Err(Error::EvenPower(k as i64));
        }
        let f = FElement::from_delta_exponents([k], k.div_ceil(2))?;
        let coeffs = self.m_coefficients(&f)?;
        let top = coeffs.max_degree().expect("Δ^k is nonzero");
        let stratum = coeffs.stratum(top);
        if let [only] = stratum[..] {
            return Ok(only);
        }
        let mut matches = Vec::new();
        for &idx in &stratum {
            if self.m_element(idx)?.dominant_exponent() == Some(k) {
                matches.push(idx);
            }
        }
        match matches[..] {
            [only] => Ok(only),
            _ => Err(Error::AmbiguousCode {
                k,
                detail: format!("top stratum {stratum:?}, dominant matches {matches:?}"),
            }),
        }
    }

    /// One more than the largest total degree in the `m`-expansion.
    pub fn nilpotence_order(&mut self, f: &FElement) -> Result<usize> {
        if f.is_zero() {
            return Err(Error::ZeroElement);
        }
        let c = self.m_coefficients(f)?;
        Ok(c.max_degree().expect("nonzero element") + 1)
    }

    /// `u(T₃, T₅) f` on the working level.
    pub fn apply_polynomial(&mut self, u: &MExpansion, f: &FElement) -> Result<FElement> {
        self.ensure_level(f.minimal_level())?;
        let v = f.coords().resized(self.level);
        let mut acc = Bits::zeros(self.level);
        let mut w = v;
        let mut b = 0;
        let max_b = u.iter().map(|i| i.b).max().unwrap_or(0);
        while b <= max_b {
            let mut t = w.clone();
            let max_a = u.iter().filter(|i| i.b == b).map(|i| i.a).max();
            if let Some(max_a) = max_a {
                for a in 0..=max_a {
                    if u.contains(MIndex::new(a, b)) {
                        acc.xor_assign(&t);
                    }
                    t = self.t3.mul_vec(&t);
                }
            }
            w = self.t5.mul_vec(&w);
            b += 1;
        }
        let out = FElement::from_coords(acc);
        Ok(out.at_level(out.minimal_level()))
    }

    /// `T_p = Σ a_ij(p) x^i y^j` for `i + j ≤ degree`, with
    /// `a_ij(p) = a_p(m(i, j))`.
    pub fn tp_expansion(&mut self, p: u64, degree: usize) -> Result<MExpansion> {
        let mut all = self.tp_expansions(&[p], degree)?;
        Ok(all.pop().expect("one prime").1)
    }

    /// [`tp_expansion`](Self::tp_expansion) for several primes, sharing the
    /// q-expansions of the basis elements.
    pub fn tp_expansions(&mut self, primes: &[u64], degree: usize) -> Result<Vec<(u64, MExpansion)>> {
        for &p in primes {
            if !is_odd_prime(p) {
                return Err(Error::NotOddPrime(p));
            }
        }
        let indices: Vec<MIndex> = MIndex::up_to_degree(degree).collect();
        let mut elems = Vec::with_capacity(indices.len());
        for &idx in &indices {
            elems.push(self.m_element(idx)?);
        }
        let max_level = elems.iter().map(FElement::minimal_level).max().unwrap_or(1);
        let max_p = primes.iter().copied().max().unwrap_or(3) as usize;
        let powers = OddDeltaPowers::new(max_level, max_p);
        let mut out = Vec::with_capacity(primes.len());
        for &p in primes {
            // a_p(Δ^{2i+1}) for every basis index i.
            let ap = Bits::from_ones(
                max_level,
                (0..max_level).filter(|&i| powers.by_index(i).coeff(p as usize)),
            );
            let expansion: MExpansion = indices
                .iter()
                .zip(&elems)
                .filter(|(idx, m)| idx.degree() >= 1 && m.coords().resized(max_level).dot(&ap))
                .map(|(idx, _)| *idx)
                .collect();
            out.push((p, expansion));
        }
        Ok(out)
    }

    /// Every `a_ij(p) = 1` with `i + j ≤ degree` has `(i mod 2, j mod 2)`
    /// equal to `(0,0), (1,0), (0,1), (1,1)` for `p ≡ 1, 3, 5, 7 (mod 8)`.
    pub fn verify_parity_pattern(&mut self, p: u64, degree: usize) -> Result<bool> {
        let e = self.tp_expansion(p, degree)?;
        Ok(parity_pattern_holds(p, &e))
    }

    /// The five closed-form criteria for `a₁₀, a₀₁, a₁₁, a₂₀, a₀₂`.
    pub fn verify_frobenian_criteria(&mut self, p: u64) -> Result<FrobenianCheck> {
        let e = self.tp_expansion(p, 2)?;
        Ok(FrobenianCheck::evaluate(p, &e))
    }

    /// An odd `k` with `Σ λ_ij T₃^i T₅^j Δ^k = Δ`.
    ///
    /// Takes the support index of minimal degree (largest `a` among ties) and
    /// searches for the odd `k` whose code is that index.
    pub fn injectivity_witness(&mut self, lambda: &MExpansion, max_k: usize) -> Result<usize> {
        let min_deg = lambda.min_degree().ok_or(Error::ZeroElement)?;
        let target = if lambda.contains(MIndex::new(0, 0)) {
            MIndex::new(0, 0)
        } else {
            lambda
                .stratum(min_deg)
                .into_iter()
                .max_by_key(|i| i.a)
                .expect("nonempty stratum")
        };
        let mut found = None;
        for k in (1..=max_k).step_by(2) {
            if self.code_of(k)? == target {
                found = Some(k);
                break;
            }
        }
        let k = found.ok_or_else(|| {
            Error::PrecisionExhausted(format!("no odd k ≤ {max_k} has code {target}"))
        })?;
        let f = FElement::from_delta_exponents([k], k.div_ceil(2))?;
        let image = self.apply_polynomial(lambda, &f)?;
        assert_eq!(
            image.delta_exponents(),
            vec![1],
            "witness Δ^{k} for {lambda} does not map to Δ"
        );
        Ok(k)
    }
}

/// Expected parity class `(i mod 2, j mod 2)` of the support of `T_p`.
pub fn parity_class(p: u64) -> (usize, usize) {
    match p % 8 {
        1 => (0, 0),
        3 => (1, 0),
        5 => (0, 1),
        7 => (1, 1),
        _ => panic!("{p} is even"),
    }
}

pub fn parity_pattern_holds(p: u64, expansion: &MExpansion) -> bool {
    let class = parity_class(p);
    expansion.iter().all(|i| (i.a % 2, i.b % 2) == class)
}

/// Each field is whether the coefficient agrees with its arithmetic
/// criterion:
/// `a₁₀ ⟺ p ≡ 3 (8)`, `a₀₁ ⟺ p ≡ 5 (8)`, `a₁₁ ⟺ p ≡ 7 (16)`,
/// `a₂₀ ⟺ p = a² + 8b²` with `b` odd, `a₀₂ ⟺ p = a² + 16b²` with `b` odd.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FrobenianCheck {
    pub a10: bool,
    pub a01: bool,
    pub a11: bool,
    pub a20: bool,
    pub a02: bool,
}

impl FrobenianCheck {
    pub fn evaluate(p: u64, e: &MExpansion) -> Self {
        let has = |a, b| e.contains(MIndex::new(a, b));
        FrobenianCheck {
            a10: has(1, 0) == (p % 8 == 3),
            a01: has(0, 1) == (p % 8 == 5),
            a11: has(1, 1) == (p % 16 == 7),
            a20: has(2, 0) == is_represented(p, 8, true),
            a02: has(0, 2) == is_represented(p, 16, true),
        }
    }

    pub fn all(&self) -> bool {
        self.a10 && self.a01 && self.a11 && self.a20 && self.a02
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exps(t: &mut MTable, a: usize, b: usize) -> Vec<usize> {
        t.m_element(MIndex::new(a, b)).unwrap().delta_exponents()
    }

    #[test]
    fn low_degree_table() {
        let mut t = MTable::new();
        assert_eq!(exps(&mut t, 0, 0), vec![1]);
        assert_eq!(exps(&mut t, 1, 0), vec![3]);
        assert_eq!(exps(&mut t, 0, 1), vec![5]);
        assert_eq!(exps(&mut t, 2, 0), vec![9]);
        assert_eq!(exps(&mut t, 1, 1), vec![7]);
        assert_eq!(exps(&mut t, 0, 2), vec![17]);
        assert_eq!(exps(&mut t, 3, 0), vec![11]);
        assert_eq!(exps(&mut t, 2, 1), vec![13]);
        assert_eq!(exps(&mut t, 1, 2), vec![11, 19]);
        assert_eq!(exps(&mut t, 0, 3), vec![13, 21]);
    }

    #[test]
    fn coefficients_of_small_powers() {
        let mut t = MTable::new();
        let d = |k| FElement::from_delta_exponents([k], 16).unwrap();
        assert_eq!(t.m_coefficients(&d(1)).unwrap(), MExpansion::from_pairs([(0, 0)]));
        assert_eq!(t.m_coefficients(&d(11)).unwrap(), MExpansion::from_pairs([(3, 0)]));
        assert_eq!(
            t.m_coefficients(&d(19)).unwrap(),
            MExpansion::from_pairs([(3, 0), (1, 2)])
        );
    }

    #[test]
    fn codes_and_nilpotence() {
        let mut t = MTable::new();
        assert_eq!(t.code_of(1).unwrap(), MIndex::new(0, 0));
        assert_eq!(t.code_of(11).unwrap(), MIndex::new(3, 0));
        assert_eq!(t.code_of(19).unwrap(), MIndex::new(1, 2));
        assert_eq!(t.code_of(4), Err(Error::EvenPower(4)));
        let d19 = FElement::from_delta_exponents([19], 10).unwrap();
        assert_eq!(t.nilpotence_order(&d19).unwrap(), 4);
        assert_eq!(t.nilpotence_order(&FElement::zero(3)), Err(Error::ZeroElement));
    }

    #[test]
    fn t3_is_x() {
        let mut t = MTable::new();
        assert_eq!(t.tp_expansion(3, 4).unwrap(), MExpansion::from_pairs([(1, 0)]));
        assert_eq!(t.tp_expansion(5, 4).unwrap(), MExpansion::from_pairs([(0, 1)]));
        assert_eq!(t.tp_expansion(9, 4), Err(Error::NotOddPrime(9)));
    }

    #[test]
    fn criteria_for_small_primes() {
        let mut t = MTable::new();
        assert!(t.verify_parity_pattern(3, 6).unwrap());
        assert!(t.verify_parity_pattern(7, 6).unwrap());
        let c3 = t.verify_frobenian_criteria(3).unwrap();
        assert!(c3.all());
        assert!(t.tp_expansion(17, 2).unwrap().contains(MIndex::new(2, 0)));
        assert!(t.tp_expansion(7, 2).unwrap().contains(MIndex::new(1, 1)));
        assert!(t.verify_frobenian_criteria(17).unwrap().all());
    }

    #[test]
    fn witnesses() {
        let mut t = MTable::new();
        assert_eq!(t.injectivity_witness(&MExpansion::from_pairs([(0, 0)]), 99).unwrap(), 1);
        assert_eq!(t.injectivity_witness(&MExpansion::from_pairs([(1, 0)]), 99).unwrap(), 3);
        assert_eq!(
            t.injectivity_witness(&MExpansion::from_pairs([(2, 0), (0, 2)]), 99).unwrap(),
            9
        );
        assert_eq!(t.injectivity_witness(&MExpansion::new(), 99), Err(Error::ZeroElement));
    }

    #[test]
    fn level_cap_is_reported() {
        let mut t = MTable::with_cap(4);
        assert!(matches!(
            t.m_element(MIndex::new(0, 2)),
            Err(Error::PrecisionExhausted(_))
        ));
    }
}
