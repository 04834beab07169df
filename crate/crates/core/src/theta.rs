//! Theta series of the forms `x² + 2y²` and `x² + 4y²` reduced mod 2, and
//! the composition laws `x • y = (x + y)/(1 − c·xy)` on `Z/2ⁿZ` that
//! describe how Hecke operators permute them.
//!
//! For `c ∈ {2, 4}`, `θ_{t,n} = Σ_{a odd > 0} Σ_{b ≡ ta (mod 2ⁿ)} q^{a² + c·b²}`
//! with `b` ranging over all integers.

use std::fmt;

use crate::arith::{inverse_mod_pow2, is_odd_prime, isqrt, mask, representations};
use crate::error::{Error, Result};
use crate::fspace::{hecke_matrix, DeltaBasis, FElement};
use crate::gf2::Echelon;
use crate::mbasis::MTable;
use crate::monomial::MIndex;
use crate::series::{delta, delta_pow, F2Series};

/// The coefficient `c` of the form `a² + c·b²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormParam {
    /// `a² + 2b²`, attached to `Q(√−2)`.
    Two,
    /// `a² + 4b²`, attached to `Q(i)`.
    Four,
}

impl FormParam {
    pub fn value(self) -> u64 {
        match self {
            FormParam::Two => 2,
            FormParam::Four => 4,
        }
    }

    pub fn from_value(c: u64) -> Result<Self> {
        match c {
            2 => Ok(FormParam::Two),
            4 => Ok(FormParam::Four),
            _ => Err(Error::InvalidArgument(format!("form parameter must be 2 or 4, got {c}"))),
        }
    }

    /// Primes for which `T_p` acts through the composition law; for the
    /// others it kills every theta series.
    pub fn is_split(self, p: u64) -> bool {
        match self {
            FormParam::Two => matches!(p % 8, 1 | 3),
            FormParam::Four => matches!(p % 8, 1 | 5),
        }
    }

    /// The Hecke operator whose kernel the theta series span: `T₅` for
    /// `c = 2`, `T₃` for `c = 4`.
    pub fn annihilating_prime(self) -> u64 {
        match self {
            FormParam::Two => 5,
            FormParam::Four => 3,
        }
    }

    /// The `m`-basis elements with the same span at level `n`:
    /// `m(a, 0)` for `c = 2` and `m(0, b)` for `c = 4`, index `< 2^{n−1}`.
    pub fn m_family(self, n: u32) -> Vec<MIndex> {
        let count = 1usize << (n - 1);
        (0..count)
            .map(|i| match self {
                FormParam::Two => MIndex::new(i, 0),
                FormParam::Four => MIndex::new(0, i),
            })
            .collect()
    }

    /// Exponent `k` in `θ_{2^{n−2}, n} = Δ^k`.
    pub fn special_exponent(self, n: u32) -> usize {
        assert!(n >= 2);
        match self {
            FormParam::Two => 1 + (1usize << (2 * n - 3)),
            FormParam::Four => 1 + (1usize << (2 * n - 2)),
        }
    }

    /// Exponent `k` with `θ_{2^{n−1} − t(p), n} = T_p Δ^k`.
    pub fn hecke_source_exponent(self, n: u32) -> usize {
        match self {
            FormParam::Two => 1 + (1usize << (2 * n - 1)),
            FormParam::Four => 1 + (1usize << (2 * n)),
        }
    }
}

impl fmt::Display for FormParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

/// Index `(t, n)` of a theta series, normalized with `θ_t = θ_{−t}` so that
/// `0 ≤ t ≤ 2^{n−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ThetaIndex {
    t: u64,
    n: u32,
    c: FormParam,
}

impl ThetaIndex {
    pub fn new(t: i64, n: u32, c: FormParam) -> Self {
        assert!((1..=40).contains(&n), "level n = {n} out of range");
        let modulus = 1i64 << n;
        let r = t.rem_euclid(modulus) as u64;
        let t = r.min(modulus as u64 - r);
        ThetaIndex { t, n, c }
    }

    pub fn t(&self) -> u64 {
        self.t
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn c(&self) -> FormParam {
        self.c
    }
}

impl fmt::Display for ThetaIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prime = if self.c == FormParam::Four { "'" } else { "" };
        write!(f, "θ{prime}({},{})", self.t, self.n)
    }
}

/// `θ_{t,n}` to precision `N`, by direct enumeration of `(a, b)` with
/// `b ≡ t·a (mod 2ⁿ)`.
pub fn theta(idx: ThetaIndex, precision: usize) -> F2Series {
    let c = idx.c.value();
    let modulus = 1i64 << idx.n;
    let n_max = precision as u64;
    let mut out = F2Series::zero(precision);
    let mut exps = Vec::new();
    let mut a = 1u64;
    while a * a <= n_max {
        let bmax = isqrt((n_max - a * a) / c) as i64;
        for b in -bmax..=bmax {
            if (b - idx.t as i64 * a as i64).rem_euclid(modulus) == 0 {
                exps.push((a * a + c * (b * b) as u64) as usize);
            }
        }
        a += 2;
    }
    out.add_assign(&F2Series::from_exponents(exps, precision));
    out
}

/// Every `θ_{t,n}` for raw residues `t = 0, …, 2ⁿ − 1`, in one pass over the
/// lattice points: each `(a, b)` lands in the series of `t = b·a⁻¹`.
pub fn theta_family(n: u32, c: FormParam, precision: usize) -> Vec<F2Series> {
    let cv = c.value();
    let m = mask(n);
    let count = 1usize << n;
    let mut exps: Vec<Vec<usize>> = vec![Vec::new(); count];
    let n_max = precision as u64;
    let mut a = 1u64;
    while a * a <= n_max {
        let inv = inverse_mod_pow2(a, n);
        let bmax = isqrt((n_max - a * a) / cv) as i64;
        for b in -bmax..=bmax {
            let t = ((b as u64).wrapping_mul(inv) & m) as usize;
            exps[t].push((a * a + cv * (b * b) as u64) as usize);
        }
        a += 2;
    }
    exps.into_iter()
        .map(|e| F2Series::from_exponents(e, precision))
        .collect()
}

/// The law `x • y = (x + y)/(1 − c·xy)` on `Z/2ⁿZ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CompositionLaw {
    pub n: u32,
    pub c: FormParam,
}

impl CompositionLaw {
    pub fn new(n: u32, c: FormParam) -> Self {
        assert!((1..=63).contains(&n));
        CompositionLaw { n, c }
    }

    pub fn modulus(&self) -> u64 {
        1u64 << self.n
    }

    pub fn compose(&self, x: u64, y: u64) -> u64 {
        compose(x, y, *self)
    }

    pub fn negate(&self, x: u64) -> u64 {
        x.wrapping_neg() & mask(self.n)
    }

    /// Order of `x` under the law, by iteration from the identity 0; `None`
    /// if the iterates never return to 0.
    pub fn order(&self, x: u64) -> Option<u64> {
        let mut acc = x & mask(self.n);
        let mut k = 1;
        while acc != 0 {
            if k >= self.modulus() {
                return None;
            }
            acc = self.compose(acc, x);
            k += 1;
        }
        Some(k)
    }

    /// Brute-force group check on the full Cayley table.
    pub fn check_group(&self) -> GroupCheck {
        let size = self.modulus() as usize;
        let mut table = vec![0u32; size * size];
        for x in 0..size {
            for y in 0..size {
                table[x * size + y] = self.compose(x as u64, y as u64) as u32;
            }
        }
        let op = |x: usize, y: usize| table[x * size + y] as usize;
        let commutative = (0..size).all(|x| (0..size).all(|y| op(x, y) == op(y, x)));
        let identity = (0..size).all(|x| op(0, x) == x);
        let inverses = (0..size).all(|x| op(x, self.negate(x as u64) as usize) == 0);
        // (x•y)•z = x•(y•z) row by row: rows of x•y and y are read in
        // order, the row of x is indexed by y•z.
        let row = |x: usize| &table[x * size..(x + 1) * size];
        let associative = (0..size).all(|x| {
            let rx = row(x);
            (0..size).all(|y| {
                row(op(x, y))
                    .iter()
                    .zip(row(y))
                    .all(|(&l, &yz)| l == rx[yz as usize])
            })
        });
        let generator = (0..size as u64).find(|&g| self.order(g) == Some(size as u64));
        // k ↦ g^{•k} must be a bijective homomorphism from (Z/2ⁿ, +).
        let cyclic_isomorphism = generator.is_some_and(|g| {
            let mut powers = vec![0usize; size];
            for k in 1..size {
                powers[k] = op(powers[k - 1], g as usize);
            }
            let mut seen = vec![false; size];
            powers.iter().all(|&p| !std::mem::replace(&mut seen[p], true))
                && (0..size).all(|j| {
                    (0..size).all(|k| powers[(j + k) % size] == op(powers[j], powers[k]))
                })
        });
        GroupCheck {
            commutative,
            associative,
            identity,
            inverses,
            generator,
            cyclic_isomorphism,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GroupCheck {
    pub commutative: bool,
    pub associative: bool,
    pub identity: bool,
    pub inverses: bool,
    pub generator: Option<u64>,
    pub cyclic_isomorphism: bool,
}

impl GroupCheck {
    pub fn is_cyclic_group(&self) -> bool {
        self.commutative
            && self.associative
            && self.identity
            && self.inverses
            && self.generator.is_some()
            && self.cyclic_isomorphism
    }
}

/// `(x + y)·(1 − c·xy)⁻¹ mod 2ⁿ`; the denominator is odd, hence invertible.
pub fn compose(x: u64, y: u64, law: CompositionLaw) -> u64 {
    let m = mask(law.n);
    let num = x.wrapping_add(y) & m;
    let den = 1u64.wrapping_sub(law.c.value().wrapping_mul(x).wrapping_mul(y)) & m;
    num.wrapping_mul(inverse_mod_pow2(den, law.n)) & m
}

/// `t(p) ≡ b/a (mod 2ⁿ)` for `p = a² + c·b²`, normalized up to sign.
pub fn t_of_prime(p: u64, n: u32, c: FormParam) -> Result<u64> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let reps = representations(p, c.value());
    if reps.is_empty() {
        return Err(Error::NoRepresentation { p, c: c.value() });
    }
    let m = mask(n);
    let ts: Vec<u64> = reps
        .iter()
        .map(|&(a, b)| (b as u64).wrapping_mul(inverse_mod_pow2(a as u64, n)) & m)
        .collect();
    let t = ts[0];
    let neg = t.wrapping_neg() & m;
    assert!(
        ts.iter().all(|&s| s == t || s == neg),
        "representations of {p} give residues {ts:?} beyond ±t"
    );
    Ok(t.min(neg))
}

/// Expected `T_p θ_{t,n}` from the composition law, or zero in the inert
/// classes.
pub fn predicted_hecke_image(
    t: u64,
    n: u32,
    c: FormParam,
    p: u64,
    family: &[F2Series],
) -> Result<F2Series> {
    let precision = family[0].precision();
    if !c.is_split(p) {
        return Ok(F2Series::zero(precision));
    }
    let law = CompositionLaw::new(n, c);
    let tp = t_of_prime(p, n, c)?;
    let plus = law.compose(t, tp) as usize;
    let minus = law.compose(t, law.negate(tp)) as usize;
    Ok(family[plus].add(&family[minus]))
}

/// Precision at which the theta family of level `n` is safely expanded in
/// the Δ basis (dominant exponents stay below `4ⁿ + 1`).
pub fn family_precision(n: u32) -> usize {
    (1usize << (2 * n + 2)) + 63
}

/// `θ_{t,n}` in `F` coordinates at the given precision.
pub fn theta_in_f(series: &F2Series, basis: &DeltaBasis) -> Result<FElement> {
    let e = basis.expand(series)?;
    Ok(e.at_level(e.minimal_level()))
}

/// Checks the identities `θ_{0,n} = Δ`, `θ_t = θ_{−t}`, `θ_{2^{n−1}} = 0`,
/// `θ_{t,n} + θ_{2^{n−1}−t,n} = θ_{t,n−1}` and the special value
/// `θ_{2^{n−2},n} = Δ^{1+2^{2n−3}}` (resp. `Δ^{1+2^{2n−2}}`) at precision `N`.
pub fn verify_theta_identities(n: u32, c: FormParam, precision: usize) -> Result<ThetaIdentityCheck> {
    let fam = theta_family(n, c, precision);
    let size = 1usize << n;
    let half = size / 2;
    let d = delta(precision);
    let base = fam[0].agrees_with(&d);
    let reflection = (0..size).all(|t| fam[t].agrees_with(&fam[(size - t) % size]));
    let middle_vanishes = fam[half].is_zero();
    let direct_matches = (0..size)
        .all(|t| fam[t].agrees_with(&theta(ThetaIndex::new(t as i64, n, c), precision)));
    let (descent, special) = if n >= 2 {
        let lower = theta_family(n - 1, c, precision);
        let descent = (0..size).all(|t| {
            fam[t]
                .add(&fam[(half + size - t) % size])
                .agrees_with(&lower[t % half])
        });
        let k = c.special_exponent(n) as i64;
        let special = fam[size / 4].agrees_with(&delta_pow(k, precision)?);
        (descent, special)
    } else {
        (true, true)
    };
    Ok(ThetaIdentityCheck {
        base,
        reflection,
        middle_vanishes,
        descent,
        special,
        direct_matches,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ThetaIdentityCheck {
    pub base: bool,
    pub reflection: bool,
    pub middle_vanishes: bool,
    pub descent: bool,
    pub special: bool,
    pub direct_matches: bool,
}

impl ThetaIdentityCheck {
    pub fn all(&self) -> bool {
        self.base
            && self.reflection
            && self.middle_vanishes
            && self.descent
            && self.special
            && self.direct_matches
    }
}

/// Whether `T_p θ_{t,n}` equals the composition-law prediction for every
/// `t`, comparing at precision `N`.
pub fn verify_hecke_on_theta(p: u64, n: u32, c: FormParam, precision: usize) -> Result<bool> {
    if !is_odd_prime(p) {
        return Err(Error::NotOddPrime(p));
    }
    let big = theta_family(n, c, precision * p as usize);
    let small = theta_family(n, c, precision);
    for (t, series) in big.iter().enumerate() {
        let lhs = series.hecke(p)?;
        let rhs = predicted_hecke_image(t as u64, n, c, p, &small)?;
        if !lhs.agrees_with(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T_p T_q θ_{t,n}` against the four-term prediction from applying the law
/// twice.
pub fn verify_double_hecke(p: u64, q: u64, n: u32, c: FormParam, precision: usize) -> Result<bool> {
    let big = theta_family(n, c, precision * (p * q) as usize);
    let small = theta_family(n, c, precision);
    let law = CompositionLaw::new(n, c);
    let sign = |s: u64, neg: bool| if neg { law.negate(s) } else { s };
    let tp = t_of_prime(p, n, c)?;
    let tq = t_of_prime(q, n, c)?;
    for (t, series) in big.iter().enumerate() {
        let lhs = series.hecke(q)?.hecke(p)?;
        let mut rhs = F2Series::zero(precision);
        for np in [false, true] {
            for nq in [false, true] {
                let s = law.compose(law.compose(t as u64, sign(tp, np)), sign(tq, nq));
                rhs.add_assign(&small[s as usize]);
            }
        }
        if !lhs.agrees_with(&rhs) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `θ_{2^{n−1} − t(p), n} = T_p Δ^k` with `k = 1 + 2^{2n−1}` (`c = 2`) or
/// `1 + 2^{2n}` (`c = 4`).
pub fn verify_special_hecke_relation(p: u64, n: u32, c: FormParam, precision: usize) -> Result<bool> {
    let tp = t_of_prime(p, n, c)?;
    let k = c.hecke_source_exponent(n) as i64;
    let lhs = delta_pow(k, precision * p as usize)?.hecke(p)?;
    let half = 1i64 << (n - 1);
    let rhs = theta(ThetaIndex::new(half - tp as i64, n, c), precision);
    Ok(lhs.agrees_with(&rhs))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SpanCheck {
    pub theta_rank: usize,
    pub m_rank: usize,
    pub union_rank: usize,
    pub expected: usize,
}

impl SpanCheck {
    pub fn equal(&self) -> bool {
        self.theta_rank == self.expected
            && self.m_rank == self.expected
            && self.union_rank == self.expected
    }
}

/// Ranks of `{θ_{t,n}}`, of the matching `m`-family, and of their union.
pub fn verify_span_equality(n: u32, c: FormParam, table: &mut MTable) -> Result<SpanCheck> {
    let precision = family_precision(n);
    let level = precision.div_ceil(2);
    let basis = DeltaBasis::new(level, precision);
    let fam = theta_family(n, c, precision);
    let half = 1usize << (n - 1);
    let mut theta_span = Echelon::new(level);
    let mut union = Echelon::new(level);
    for series in fam.iter().take(half + 1) {
        let v = basis.expand(series)?.coords().clone();
        theta_span.insert(&v);
        union.insert(&v);
    }
    let mut m_span = Echelon::new(level);
    for idx in c.m_family(n) {
        let m = table.m_element(idx)?;
        if m.minimal_level() > level {
            return Err(Error::PrecisionExhausted(format!(
                "m{idx} lies beyond F({level})"
            )));
        }
        let v = m.coords().resized(level);
        m_span.insert(&v);
        union.insert(&v);
    }
    Ok(SpanCheck {
        theta_rank: theta_span.rank(),
        m_rank: m_span.rank(),
        union_rank: union.rank(),
        expected: half,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCheck {
    pub kernel_dim: usize,
    /// Every kernel vector has q-support in `{a² + 2b²}` (resp. `{a² + b²}`).
    pub support_ok: bool,
    /// Smallest theta level whose family span contains the kernel.
    pub theta_level: Option<u32>,
}

impl KernelCheck {
    pub fn holds(&self) -> bool {
        self.support_ok && self.theta_level.is_some()
    }
}

/// Whether `n = a² + c·b²` for integers `a, b` (`c = 2`) or `a² + b²`
/// (`c = 4`), the support condition on the kernel.
pub fn in_support_set(n: u64, c: FormParam) -> bool {
    let cv = match c {
        FormParam::Two => 2,
        FormParam::Four => 1,
    };
    !representations(n, cv).is_empty()
}

/// Kernel of `T₅` (`c = 2`) or `T₃` (`c = 4`) on `F(level)`: support of each
/// basis vector up to `N`, and membership in a theta span of level at most
/// `max_theta_level`.
pub fn verify_kernel_characterization(
    level: usize,
    c: FormParam,
    precision: usize,
    max_theta_level: u32,
) -> Result<KernelCheck> {
    let op = hecke_matrix(c.annihilating_prime(), level)?;
    let kernel = op.kernel();
    let support_ok = kernel.iter().all(|v| {
        let f = FElement::from_coords(v.clone());
        f.to_series(precision)
            .exponents()
            .all(|e| in_support_set(e as u64, c))
    });
    let mut theta_level = None;
    for m in 1..=max_theta_level {
        let p = family_precision(m).max(2 * level - 1);
        let basis_level = p.div_ceil(2);
        let basis = DeltaBasis::new(basis_level, p);
        let mut span = Echelon::new(basis_level);
        for series in theta_family(m, c, p) {
            span.insert(basis.expand(&series)?.coords());
        }
        if kernel
            .iter()
            .all(|v| span.contains(&v.resized(basis_level)))
        {
            theta_level = Some(m);
            break;
        }
    }
    Ok(KernelCheck {
        kernel_dim: kernel.len(),
        support_ok,
        theta_level,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d_exps(series: &F2Series) -> Vec<usize> {
        let basis = DeltaBasis::new(series.precision().div_ceil(2), series.precision());
        basis.expand(series).unwrap().delta_exponents()
    }

    #[test]
    fn normalization() {
        let i = ThetaIndex::new(7, 3, FormParam::Two);
        assert_eq!(i.t(), 1);
        assert_eq!(ThetaIndex::new(-3, 3, FormParam::Two).t(), 3);
        assert_eq!(ThetaIndex::new(4, 3, FormParam::Four).t(), 4);
    }

    #[test]
    fn small_thetas() {
        let two = FormParam::Two;
        let four = FormParam::Four;
        assert_eq!(theta(ThetaIndex::new(0, 1, two), 500), delta(500));
        assert_eq!(d_exps(&theta(ThetaIndex::new(1, 2, two), 401)), vec![3]);
        assert_eq!(d_exps(&theta(ThetaIndex::new(1, 2, four), 401)), vec![5]);
        assert_eq!(d_exps(&theta(ThetaIndex::new(1, 3, two), 401)), vec![3, 11]);
        assert_eq!(d_exps(&theta(ThetaIndex::new(3, 3, four), 401)), vec![13, 21]);
    }

    #[test]
    fn family_matches_direct_enumeration() {
        for c in [FormParam::Two, FormParam::Four] {
            for n in 1..=4 {
                let fam = theta_family(n, c, 700);
                for (t, s) in fam.iter().enumerate() {
                    assert_eq!(s, &theta(ThetaIndex::new(t as i64, n, c), 700));
                }
            }
        }
    }

    #[test]
    fn composition_examples() {
        let law = CompositionLaw::new(2, FormParam::Two);
        assert_eq!(law.compose(1, 1), 2);
        assert_eq!(law.compose(1, 3), 0);
        for t in 0..4 {
            assert_eq!(law.compose(0, t), t);
        }
        let g = CompositionLaw::new(5, FormParam::Four).check_group();
        assert!(g.is_cyclic_group(), "{g:?}");
    }

    #[test]
    fn t_of_small_primes() {
        assert_eq!(t_of_prime(3, 2, FormParam::Two).unwrap(), 1);
        // 17 = 3² + 2·2², t = 2·3⁻¹ = 2·3 = 6 ≡ −2 (mod 8)
        assert_eq!(t_of_prime(17, 3, FormParam::Two).unwrap(), 2);
        assert_eq!(t_of_prime(5, 2, FormParam::Four).unwrap(), 1);
        assert_eq!(
            t_of_prime(5, 3, FormParam::Two),
            Err(Error::NoRepresentation { p: 5, c: 2 })
        );
        assert_eq!(t_of_prime(15, 3, FormParam::Two), Err(Error::NotOddPrime(15)));
    }

    #[test]
    fn hecke_action_small() {
        assert!(verify_hecke_on_theta(3, 2, FormParam::Two, 300).unwrap());
        assert!(verify_hecke_on_theta(5, 3, FormParam::Two, 300).unwrap());
        assert!(verify_hecke_on_theta(3, 3, FormParam::Four, 300).unwrap());
        let d3 = delta_pow(3, 900).unwrap();
        assert_eq!(d3.hecke(3).unwrap(), delta(300));
    }

    #[test]
    fn kernel_of_t5_on_f2() {
        let k = verify_kernel_characterization(2, FormParam::Two, 500, 4).unwrap();
        assert_eq!(k.kernel_dim, 2);
        assert!(k.holds());
    }
}
