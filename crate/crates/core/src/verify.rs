//! Finite checks of the structural statements, grouped into suites.
//!
//! Each check returns a [`Check`] with a pass flag, the number of individual
//! comparisons made and a short detail string. Errors raised by the
//! underlying computations are reported as failures, never propagated.

use std::fmt;
use std::str::FromStr;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::arith::{factor, odd_primes_up_to};
use crate::bits::Bits;
use crate::error::{Error, Result};
use crate::fspace::{
    algebra_dimension, commutant_dimension, hecke_matrix, witness_pairing,
    minimal_divisibility_level, module_generator_count, t3_t5, DeltaBasis, FElement,
};
use crate::gf2::{Echelon, GF2Matrix};
use crate::mbasis::{parity_pattern_holds, FrobenianCheck, MTable};
use crate::monomial::{MExpansion, MIndex};
use crate::series::{delta_pow, OddDeltaPowers};
use crate::theta::{
    family_precision, in_support_set, theta, verify_double_hecke, verify_hecke_on_theta,
    verify_kernel_characterization, verify_span_equality, verify_special_hecke_relation,
    verify_theta_identities, CompositionLaw, FormParam, ThetaIndex,
};

/// `m(a, b)` for `a + b ≤ 3` as lists of `Δ` exponents.
pub const REFERENCE_M_TABLE: [((usize, usize), &[usize]); 10] = [
    ((0, 0), &[1]),
    ((1, 0), &[3]),
    ((0, 1), &[5]),
    ((2, 0), &[9]),
    ((1, 1), &[7]),
    ((0, 2), &[17]),
    ((3, 0), &[11]),
    ((2, 1), &[13]),
    ((1, 2), &[11, 19]),
    ((0, 3), &[13, 21]),
];

/// A prime, the total degree through which its list is complete, and the
/// support `(i, j)` of `T_p` up to that degree.
pub type TpReference = (u64, usize, &'static [(usize, usize)]);

/// Published leading terms of `T_p` in `x = T₃`, `y = T₅`.
pub const REFERENCE_TP: [TpReference; 4] = [
    (
        7,
        14,
        &[
            (1, 1), (3, 1), (5, 1), (3, 3), (1, 7), (7, 3), (1, 9), (11, 1), (9, 3), (7, 5),
            (13, 1), (5, 9), (3, 11),
        ],
    ),
    (
        11,
        13,
        &[
            (1, 0), (3, 0), (1, 2), (5, 0), (3, 2), (1, 4), (3, 4), (1, 6), (7, 2), (9, 2),
            (7, 4), (3, 8), (1, 10), (11, 2),
        ],
    ),
    (
        13,
        11,
        &[
            (0, 1), (2, 1), (0, 3), (4, 1), (0, 5), (6, 1), (4, 3), (2, 5), (6, 3), (2, 7),
            (0, 9), (10, 1), (8, 3), (6, 5), (0, 11),
        ],
    ),
    (
        17,
        12,
        &[
            (2, 0), (0, 2), (2, 2), (6, 0), (4, 2), (0, 6), (6, 2), (4, 4), (2, 6), (10, 0),
            (10, 2), (6, 6), (4, 8), (2, 10),
        ],
    ),
];

/// `θ_{t,n}` for `n ≤ 3` as `(c, n, t, Δ exponents)`.
pub const REFERENCE_THETA: [(u64, u32, u64, &[usize]); 14] = [
    (2, 1, 0, &[1]),
    (2, 2, 0, &[1]),
    (2, 2, 1, &[3]),
    (2, 3, 0, &[1]),
    (2, 3, 1, &[3, 11]),
    (2, 3, 2, &[9]),
    (2, 3, 3, &[11]),
    (4, 1, 0, &[1]),
    (4, 2, 0, &[1]),
    (4, 2, 1, &[5]),
    (4, 3, 0, &[1]),
    (4, 3, 1, &[5, 13, 21]),
    (4, 3, 2, &[17]),
    (4, 3, 3, &[13, 21]),
];

/// Outcome of one named check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub count: usize,
    pub detail: String,
}

impl Check {
    fn run(name: &str, body: impl FnOnce() -> Result<Tally>) -> Check {
        match body() {
            Ok(t) => Check {
                name: name.to_string(),
                passed: t.failures.is_empty(),
                count: t.count,
                detail: if t.failures.is_empty() {
                    t.note
                } else {
                    let shown: Vec<&str> = t.failures.iter().take(5).map(String::as_str).collect();
                    let more = t.failures.len().saturating_sub(5);
                    let mut d = format!("{} failed: {}", t.failures.len(), shown.join("; "));
                    if more > 0 {
                        d.push_str(&format!("; … {more} more"));
                    }
                    d
                },
            },
            Err(e) => Check {
                name: name.to_string(),
                passed: false,
                count: 0,
                detail: format!("error: {e}"),
            },
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} ({} checks)", self.name, self.count)?;
        if !self.detail.is_empty() {
            write!(f, ": {}", self.detail)?;
        }
        Ok(())
    }
}

/// Accumulates comparisons inside a check.
#[derive(Default)]
struct Tally {
    count: usize,
    failures: Vec<String>,
    note: String,
}

impl Tally {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.count += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = note.into();
        self
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    Algebra,
    MBasis,
    Tp,
    Theta,
    All,
}

impl Suite {
    pub const NAMES: [&'static str; 5] = ["algebra", "mbasis", "tp", "theta", "all"];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Algebra => "algebra",
            Suite::MBasis => "mbasis",
            Suite::Tp => "tp",
            Suite::Theta => "theta",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "algebra" => Ok(Suite::Algebra),
            "mbasis" => Ok(Suite::MBasis),
            "tp" => Ok(Suite::Tp),
            "theta" => Ok(Suite::Theta),
            "all" => Ok(Suite::All),
            _ => Err(Error::InvalidArgument(format!(
                "unknown suite {s:?}; expected one of {}",
                Suite::NAMES.join(", ")
            ))),
        }
    }
}

/// Sizes for the suites. The defaults are the full acceptance sizes.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    pub algebra_level: usize,
    pub extra_prime_bound: u64,
    pub commutant_level: usize,
    pub triangular_prime_bound: u64,
    pub triangular_level: usize,
    pub witness_level: usize,
    pub divisibility_max_level: usize,
    pub pair_prime_bound: u64,
    pub pair_level: usize,
    pub mbasis_degree: usize,
    pub roundtrip_samples: usize,
    pub roundtrip_level: usize,
    pub seed: u64,
    pub criteria_prime_bound: u64,
    pub parity_degree: usize,
    pub consistency_prime_bound: u64,
    pub consistency_degree: usize,
    pub kernel_prime_bound: u64,
    pub kernel_level: usize,
    pub theta_identity_level: u32,
    pub theta_precision: usize,
    pub hecke_theta_level: u32,
    pub hecke_theta_prime_bound: u64,
    pub hecke_theta_precision: usize,
    pub group_level: u32,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            algebra_level: 64,
            extra_prime_bound: 31,
            commutant_level: 32,
            triangular_prime_bound: 97,
            triangular_level: 64,
            witness_level: 8,
            divisibility_max_level: 64,
            pair_prime_bound: 37,
            pair_level: 32,
            mbasis_degree: 6,
            roundtrip_samples: 100,
            roundtrip_level: 16,
            seed: 0x5eed,
            criteria_prime_bound: 1000,
            parity_degree: 8,
            consistency_prime_bound: 50,
            consistency_degree: 5,
            kernel_prime_bound: 100,
            kernel_level: 32,
            theta_identity_level: 6,
            theta_precision: 4096,
            hecke_theta_level: 4,
            hecke_theta_prime_bound: 100,
            hecke_theta_precision: 1024,
            group_level: 10,
        }
    }
}

/// Runs a suite and returns its checks in a fixed order.
pub fn run_suite(suite: Suite, cfg: &VerifyConfig) -> Vec<Check> {
    match suite {
        Suite::Algebra => algebra_suite(cfg),
        Suite::MBasis => mbasis_suite(cfg),
        Suite::Tp => tp_suite(cfg),
        Suite::Theta => theta_suite(cfg),
        Suite::All => {
            let mut all = algebra_suite(cfg);
            all.extend(mbasis_suite(cfg));
            all.extend(tp_suite(cfg));
            all.extend(theta_suite(cfg));
            all
        }
    }
}

pub fn algebra_suite(cfg: &VerifyConfig) -> Vec<Check> {
    vec![
        check_algebra_dimension(cfg.algebra_level, cfg.extra_prime_bound),
        check_commutant(cfg.commutant_level),
        check_triangularity(cfg.triangular_prime_bound, cfg.triangular_level),
        check_hecke_commutativity(31, 32),
        check_pairing_formula(105, 15),
        check_hecke_word_witnesses(cfg.witness_level),
        check_divisibility(3, cfg.divisibility_max_level),
        check_pair_generation(cfg.pair_prime_bound, cfg.pair_level),
        check_cyclicity(40),
    ]
}

pub fn mbasis_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut table = MTable::new();
    vec![
        check_m_table(&mut table),
        check_shift_action(&mut table, cfg.mbasis_degree),
        check_m_coefficients_by_hecke(&mut table, 21, 3),
        check_duality_roundtrip(&mut table, cfg.roundtrip_samples, cfg.roundtrip_level, cfg.seed),
        check_dominant_exponents(&mut table, cfg.mbasis_degree),
        check_injectivity_witnesses(&mut table, 2),
    ]
}

pub fn tp_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut table = MTable::new();
    vec![
        check_reference_tp(&mut table),
        check_parity_pattern(&mut table, cfg.criteria_prime_bound, cfg.parity_degree),
        check_frobenian_criteria(&mut table, cfg.criteria_prime_bound),
        check_tp_two_routes(&mut table, cfg.consistency_prime_bound, cfg.consistency_degree),
        check_tp_matrix_expansion(&mut table, cfg.consistency_prime_bound, 16),
        check_kernel_equality(cfg.kernel_prime_bound, cfg.kernel_level),
    ]
}

pub fn theta_suite(cfg: &VerifyConfig) -> Vec<Check> {
    let mut table = MTable::new();
    vec![
        check_theta_tables(),
        check_theta_identities(cfg.theta_identity_level, cfg.theta_precision),
        check_span_equality(&mut table, 4, 3),
        check_hecke_on_theta(
            cfg.hecke_theta_level,
            cfg.hecke_theta_prime_bound,
            cfg.hecke_theta_precision,
        ),
        check_special_relations(3, cfg.hecke_theta_precision),
        check_double_hecke(3, 30, 256),
        check_composition_groups(cfg.group_level),
        check_kernel_characterization(32, 4096, 6),
    ]
}

/// `dim A(n) = n` with generators `T₃, T₅`, unchanged by adding every
/// `T_p` with `p ≤ extra_bound`.
pub fn check_algebra_dimension(max_level: usize, extra_bound: u64) -> Check {
    Check::run("algebra dimension", || {
        let mut t = Tally::default();
        let extra = odd_primes_up_to(extra_bound);
        for n in 1..=max_level {
            let d = algebra_dimension(n, &[3, 5])?;
            t.expect(d == n, || format!("dim A({n}) from T3,T5 is {d}"));
            let d_all = algebra_dimension(n, &extra)?;
            t.expect(d_all == n, || format!("dim A({n}) with p ≤ {extra_bound} is {d_all}"));
        }
        Ok(t.with_note(format!("n ≤ {max_level}, extra generators p ≤ {extra_bound}")))
    })
}

/// The commutant of `{T₃, T₅}` in `End(F(n))` has dimension `n`.
pub fn check_commutant(max_level: usize) -> Check {
    Check::run("commutant dimension", || {
        let mut t = Tally::default();
        for n in 1..=max_level {
            let d = commutant_dimension(n)?;
            t.expect(d == n, || format!("commutant on F({n}) has dimension {d}"));
        }
        Ok(t.with_note(format!("n ≤ {max_level}")))
    })
}

/// Every `T_p` is strictly triangular, hence nilpotent, on `F(n)`, and its
/// matrix on a smaller level is the corresponding block.
pub fn check_triangularity(prime_bound: u64, level: usize) -> Check {
    Check::run("triangular and nilpotent", || {
        let mut t = Tally::default();
        let mut max_index = 0;
        for p in odd_primes_up_to(prime_bound) {
            let m = hecke_matrix(p, level)?;
            t.expect(m.is_strictly_upper(), || format!("T_{p} not triangular"));
            match m.nilpotency_index() {
                Ok(s) => max_index = max_index.max(s),
                Err(_) => t.expect(false, || format!("T_{p} not nilpotent")),
            }
            for n in [1, level / 4, level / 2] {
                if n >= 1 {
                    let small = hecke_matrix(p, n)?;
                    t.expect(small == m.restrict(n), || format!("T_{p} block at n = {n}"));
                }
            }
        }
        Ok(t.with_note(format!(
            "p ≤ {prime_bound} on F({level}), largest nilpotency index {max_index}"
        )))
    })
}

/// `T_p T_q = T_q T_p` on `F(n)` for odd primes `p, q ≤ bound`.
pub fn check_hecke_commutativity(bound: u64, level: usize) -> Check {
    Check::run("Hecke operators commute", || {
        let mut t = Tally::default();
        let primes = odd_primes_up_to(bound);
        let mats = primes
            .iter()
            .map(|&p| hecke_matrix(p, level))
            .collect::<Result<Vec<_>>>()?;
        for i in 0..mats.len() {
            for j in i + 1..mats.len() {
                t.expect(mats[i].mul(&mats[j]) == mats[j].mul(&mats[i]), || {
                    format!("T_{} T_{} on F({level})", primes[i], primes[j])
                });
            }
        }
        Ok(t.with_note(format!("p, q ≤ {bound} on F({level})")))
    })
}

/// `a₁(T_{p_1}⋯T_{p_r} f) = a_{p_1⋯p_r}(f)` for squarefree odd products
/// `m ≤ max_product`, over `f = Δ^k`, `k ≤ max_k`.
///
/// Repeated primes are excluded: on q-expansions `T_p² = T_{p²} + 1`, so a
/// repeated prime adds the coefficients at proper divisors (`T₃²Δ = 0` while
/// `a₉(Δ) = 1`).
pub fn check_pairing_formula(max_product: u64, max_k: usize) -> Check {
    Check::run("pairing with Hecke words", || {
        let mut t = Tally::default();
        let words: Vec<(u64, Vec<u64>)> = (1..=max_product)
            .step_by(2)
            .map(|m| (m, factor(m)))
            .filter(|(_, f)| f.windows(2).all(|w| w[0] != w[1]))
            .collect();
        let precision = max_product as usize;
        let powers = OddDeltaPowers::new(max_k.div_ceil(2), precision);
        for k in (1..=max_k).step_by(2) {
            let f = powers.get(k);
            for (m, word) in &words {
                let lhs = f.hecke_product(word)?.coeff(1);
                t.expect(lhs == f.coeff(*m as usize), || format!("Δ^{k} against word {m}"));
            }
        }
        Ok(t.with_note(format!("squarefree odd m ≤ {max_product}, Δ^k with k ≤ {max_k}")))
    })
}

/// For every nonzero `f ∈ F(n)`, the Hecke word read off the leading
/// q-exponent pairs with `f` to 1.
pub fn check_hecke_word_witnesses(level: usize) -> Check {
    Check::run("Hecke word witnesses", || {
        let mut t = Tally::default();
        assert!(level < 24, "exhaustive check over 2^{level} elements");
        let powers = OddDeltaPowers::new(level, 2 * level - 1);
        for mask in 1u64..(1 << level) {
            let f = FElement::from_coords(Bits::from_ones(
                level,
                (0..level).filter(|&i| mask >> i & 1 == 1),
            ));
            let ok = witness_pairing(&f, &powers)?;
            t.expect(ok, || format!("{f}"));
        }
        Ok(t.with_note(format!("all nonzero f in F({level})")))
    })
}

/// `F(n) ⊆ u · F(N)` for the sample polynomials `u`, reporting the least `N`.
pub fn check_divisibility(level: usize, max_level: usize) -> Check {
    Check::run("divisibility", || {
        let mut t = Tally::default();
        let samples = [
            ("x", MExpansion::from_pairs([(1, 0)])),
            ("y", MExpansion::from_pairs([(0, 1)])),
            ("x+y", MExpansion::from_pairs([(1, 0), (0, 1)])),
            ("x+y+xy", MExpansion::from_pairs([(1, 0), (0, 1), (1, 1)])),
        ];
        let mut found = Vec::new();
        for (name, u) in &samples {
            let n = minimal_divisibility_level(u, level, max_level)?;
            t.expect(n.is_some(), || format!("{name}: no N ≤ {max_level}"));
            found.push(format!("{name}: N={}", n.map_or("-".into(), |n| n.to_string())));
        }
        Ok(t.with_note(format!("F({level}); {}", found.join(", "))))
    })
}

/// Any `p ≡ 3` and `p' ≡ 5 (mod 8)` generate `A(n)`.
pub fn check_pair_generation(prime_bound: u64, max_level: usize) -> Check {
    Check::run("pairs 3, 5 mod 8 generate", || {
        let mut t = Tally::default();
        let primes = odd_primes_up_to(prime_bound);
        for &p in primes.iter().filter(|p| *p % 8 == 3) {
            for &q in primes.iter().filter(|q| *q % 8 == 5) {
                for n in 1..=max_level {
                    let d = algebra_dimension(n, &[p, q])?;
                    t.expect(d == n, || format!("T_{p}, T_{q} on F({n}) give {d}"));
                }
            }
        }
        Ok(t.with_note(format!("p, p' ≤ {prime_bound}, n ≤ {max_level}")))
    })
}

/// `F(n)` is a cyclic `A(n)`-module exactly when `n` is a power of two.
pub fn check_cyclicity(max_level: usize) -> Check {
    Check::run("cyclic levels", || {
        let mut t = Tally::default();
        for n in 1..=max_level {
            let g = module_generator_count(n)?;
            t.expect((g == 1) == n.is_power_of_two(), || {
                format!("F({n}) needs {g} generators")
            });
        }
        Ok(t.with_note(format!("n ≤ {max_level}")))
    })
}

/// The low-degree table and the three power-of-two families for `r ≤ 3`.
pub fn check_m_table(table: &mut MTable) -> Check {
    Check::run("m-table", || {
        let mut t = Tally::default();
        for ((a, b), exps) in REFERENCE_M_TABLE {
            let got = table.m_element(MIndex::new(a, b))?.delta_exponents();
            t.expect(got == exps, || format!("m({a},{b}) = {got:?}"));
        }
        for r in 0..=3u32 {
            let a = 1usize << r;
            let families = [
                (MIndex::new(a, 0), 1 + (1usize << (2 * r + 1))),
                (MIndex::new(a - 1, 0), (1 + (1usize << (2 * r + 1))) / 3),
                (MIndex::new(0, a), 1 + (1usize << (2 * r + 2))),
            ];
            for (idx, k) in families {
                let got = table.m_element(idx)?.delta_exponents();
                t.expect(got == [k], || format!("m{idx} = {got:?}, expected [{k}]"));
            }
        }
        Ok(t)
    })
}

/// `T₃ m(a,b) = m(a−1,b)`, `T₅ m(a,b) = m(a,b−1)` on q-expansions, and
/// `ker T₃ ∩ ker T₅ ∩ ker a₁ = 0` on each level used.
pub fn check_shift_action(table: &mut MTable, degree: usize) -> Check {
    Check::run("shift action and uniqueness", || {
        let mut t = Tally::default();
        let mut levels = Vec::new();
        for idx in MIndex::up_to_degree(degree) {
            let m = table.m_element(idx)?;
            let level = m.minimal_level();
            levels.push(level);
            let target_precision = 2 * level - 1;
            let series = m.to_series(5 * target_precision);
            let basis = DeltaBasis::new(level, target_precision);
            for (p, prev) in [(3u64, idx.a.checked_sub(1).map(|a| MIndex::new(a, idx.b))),
                              (5u64, idx.b.checked_sub(1).map(|b| MIndex::new(idx.a, b)))]
            {
                let image = basis.expand(&series.hecke(p)?.truncate(target_precision))?;
                let expected = match prev {
                    Some(j) => table.m_element(j)?.at_level(level),
                    None => FElement::zero(level),
                };
                t.expect(image == expected, || format!("T_{p} m{idx} = {image}"));
            }
            t.expect(series.coeff(1) == (idx.degree() == 0), || format!("a₁(m{idx})"));
        }
        levels.sort_unstable();
        levels.dedup();
        for n in levels {
            let (t3, t5) = t3_t5(n)?;
            let mut rows = Echelon::new(n);
            for i in 0..n {
                rows.insert(t3.row(i));
                rows.insert(t5.row(i));
            }
            rows.insert(&Bits::unit(n, 0));
            t.expect(rows.rank() == n, || format!("joint kernel nonzero on F({n})"));
        }
        Ok(t.with_note(format!("a+b ≤ {degree}")))
    })
}

/// Matrix-route `m`-coefficients of `Δ^k` against `a₁(T₃^a T₅^b Δ^k)`
/// computed on q-expansions.
pub fn check_m_coefficients_by_hecke(table: &mut MTable, max_k: usize, degree: usize) -> Check {
    Check::run("m-coefficients by iterated Hecke", || {
        let mut t = Tally::default();
        let mut word_len = 1usize;
        for _ in 0..degree {
            word_len *= 5;
        }
        for k in (1..=max_k).step_by(2) {
            let f = FElement::from_delta_exponents([k], k.div_ceil(2))?;
            let coeffs = table.m_coefficients(&f)?;
            let series = delta_pow(k as i64, word_len)?;
            for idx in MIndex::up_to_degree(degree) {
                let mut word = vec![3; idx.a];
                word.extend(std::iter::repeat_n(5, idx.b));
                let direct = series.hecke_product(&word)?.coeff(1);
                t.expect(direct == coeffs.contains(idx), || format!("c{idx}(Δ^{k})"));
            }
        }
        Ok(t.with_note(format!("Δ^k, k ≤ {max_k}, a+b ≤ {degree}")))
    })
}

/// `Σ c_{a,b}(f) m(a,b) = f` for random `f ∈ F(level)`.
pub fn check_duality_roundtrip(table: &mut MTable, samples: usize, level: usize, seed: u64) -> Check {
    Check::run("duality roundtrip", || {
        let mut t = Tally::default();
        let mut rng = StdRng::seed_from_u64(seed);
        for _ in 0..samples {
            let f = loop {
                let f = FElement::from_coords(Bits::from_ones(
                    level,
                    (0..level).filter(|_| rng.gen::<bool>()),
                ));
                if !f.is_zero() {
                    break f;
                }
            };
            let c = table.m_coefficients(&f)?;
            let back = table.recombine(&c)?;
            t.expect(back.delta_exponents() == f.delta_exponents(), || format!("{f}"));
        }
        Ok(t.with_note(format!("{samples} samples in F({level}), seed {seed:#x}")))
    })
}

/// The dominant exponent of `m(a,b)` has code `(a,b)`, and the nilpotence
/// order of `m(a,b)` is `a+b+1`, checked against the monomials directly.
pub fn check_dominant_exponents(table: &mut MTable, degree: usize) -> Check {
    Check::run("dominant exponents and nilpotence", || {
        let mut t = Tally::default();
        for idx in MIndex::up_to_degree(degree) {
            let m = table.m_element(idx)?;
            let k = m.dominant_exponent().expect("m(a,b) is nonzero");
            let code = table.code_of(k)?;
            t.expect(code == idx, || format!("code of {k} is {code}, not {idx}"));
            let order = table.nilpotence_order(&m)?;
            t.expect(order == idx.degree() + 1, || format!("order of m{idx} is {order}"));
            // Direct: all monomials of degree a+b+1 kill m(a,b); x^a y^b does not.
            let d = idx.degree();
            let kills = MIndex::of_degree(d + 1)
                .map(|j| table.apply_polynomial(&MExpansion::unit(j), &m))
                .collect::<Result<Vec<_>>>()?
                .iter()
                .all(FElement::is_zero);
            let survives = !table.apply_polynomial(&MExpansion::unit(idx), &m)?.is_zero();
            t.expect(kills && survives, || format!("monomial action on m{idx}"));
        }
        Ok(t.with_note(format!("a+b ≤ {degree}")))
    })
}

/// Every nonzero `λ` supported in total degree `≤ degree` has a witness
/// `Δ^k` with `λ(T₃, T₅) Δ^k = Δ`.
pub fn check_injectivity_witnesses(table: &mut MTable, degree: usize) -> Check {
    Check::run("injectivity witnesses", || {
        let mut t = Tally::default();
        let indices: Vec<MIndex> = MIndex::up_to_degree(degree).collect();
        assert!(indices.len() < 20);
        for mask in 1u32..(1 << indices.len()) {
            let lambda: MExpansion = indices
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &j)| j)
                .collect();
            // injectivity_witness asserts the image is Δ before returning.
            let k = table.injectivity_witness(&lambda, 1 << 12)?;
            t.expect(k % 2 == 1, || format!("{lambda}: k = {k}"));
        }
        Ok(t.with_note(format!("all λ of degree ≤ {degree}")))
    })
}

/// `T_p` against the published leading terms, through each printed degree.
pub fn check_reference_tp(table: &mut MTable) -> Check {
    Check::run("T_p reference expansions", || {
        let mut t = Tally::default();
        let max_degree = REFERENCE_TP.iter().map(|r| r.1).max().unwrap_or(0);
        let primes: Vec<u64> = REFERENCE_TP.iter().map(|r| r.0).collect();
        let computed = table.tp_expansions(&primes, max_degree)?;
        for ((p, degree, terms), (_, e)) in REFERENCE_TP.iter().zip(&computed) {
            let expected = MExpansion::from_pairs(terms.iter().copied());
            let got = e.truncated(*degree);
            t.expect(got == expected, || format!("T_{p} through degree {degree}: {got}"));
        }
        Ok(t.with_note("T7, T11, T13, T17"))
    })
}

/// The support of `T_p` lies in the parity class of `p mod 8`.
pub fn check_parity_pattern(table: &mut MTable, prime_bound: u64, degree: usize) -> Check {
    Check::run("parity pattern", || {
        let mut t = Tally::default();
        let primes: Vec<u64> = odd_primes_up_to(prime_bound.saturating_sub(1));
        for (p, e) in table.tp_expansions(&primes, degree)? {
            t.expect(parity_pattern_holds(p, &e), || format!("T_{p} = {e}"));
        }
        Ok(t.with_note(format!("p < {prime_bound}, degree ≤ {degree}")))
    })
}

/// The closed-form criteria for `a₁₀, a₀₁, a₁₁, a₂₀, a₀₂`.
pub fn check_frobenian_criteria(table: &mut MTable, prime_bound: u64) -> Check {
    Check::run("coefficient criteria", || {
        let mut t = Tally::default();
        let primes: Vec<u64> = odd_primes_up_to(prime_bound.saturating_sub(1));
        for (p, e) in table.tp_expansions(&primes, 2)? {
            let c = FrobenianCheck::evaluate(p, &e);
            for (name, ok) in [
                ("a10", c.a10),
                ("a01", c.a01),
                ("a11", c.a11),
                ("a20", c.a20),
                ("a02", c.a02),
            ] {
                t.expect(ok, || format!("{name}({p})"));
            }
        }
        Ok(t.with_note(format!("p < {prime_bound}")))
    })
}

/// `a_ij(p) = a_p(m(i,j))` against the `m`-expansion of `T_p m(i,j)`,
/// which must be `Σ_{k ≤ i, l ≤ j} a_kl(p) m(i−k, j−l)`.
pub fn check_tp_two_routes(table: &mut MTable, prime_bound: u64, degree: usize) -> Check {
    Check::run("a_ij two routes", || {
        let mut t = Tally::default();
        let primes = odd_primes_up_to(prime_bound);
        let expansions = table.tp_expansions(&primes, degree)?;
        let indices: Vec<MIndex> = MIndex::up_to_degree(degree).collect();
        let mut elems = Vec::new();
        for &idx in &indices {
            elems.push(table.m_element(idx)?);
        }
        let level = elems.iter().map(FElement::minimal_level).max().unwrap_or(1);
        for (p, a) in &expansions {
            let tp = hecke_matrix(*p, level)?;
            for (idx, m) in indices.iter().zip(&elems) {
                let image = FElement::from_coords(tp.mul_vec(&m.at_level(level).coords().clone()));
                let got = table.m_coefficients(&image)?;
                let mut expected = MExpansion::new();
                for kl in a.iter().filter(|kl| kl.a <= idx.a && kl.b <= idx.b) {
                    expected.toggle(MIndex::new(idx.a - kl.a, idx.b - kl.b));
                }
                t.expect(got == expected, || format!("T_{p} m{idx} = {got}"));
            }
        }
        Ok(t.with_note(format!("p ≤ {prime_bound}, i+j ≤ {degree}")))
    })
}

/// The matrix of `T_p` on `F(level)` equals `Σ a_ij(p) T₃^i T₅^j`, with the
/// expansion taken to the largest code degree occurring in `F(level)`.
pub fn check_tp_matrix_expansion(table: &mut MTable, prime_bound: u64, level: usize) -> Check {
    Check::run("T_p as a series in T3, T5", || {
        let mut t = Tally::default();
        let mut degree = 0;
        for k in (1..2 * level).step_by(2) {
            degree = degree.max(table.code_of(k)?.degree());
        }
        let (t3, t5) = t3_t5(level)?;
        let primes = odd_primes_up_to(prime_bound);
        for (p, e) in table.tp_expansions(&primes, degree)? {
            let lhs = hecke_matrix(p, level)?;
            let rhs = e.evaluate(&t3, &t5)?;
            t.expect(lhs == rhs, || format!("T_{p} on F({level})"));
        }
        Ok(t.with_note(format!("p ≤ {prime_bound} on F({level}), degree {degree}")))
    })
}

fn kernel_span(m: &GF2Matrix) -> Echelon {
    let mut e = Echelon::new(m.ncols());
    for v in m.kernel() {
        e.insert(&v);
    }
    e
}

fn same_span(a: &Echelon, b_vectors: &[Bits]) -> bool {
    b_vectors.len() == a.rank() && b_vectors.iter().all(|v| a.contains(v))
}

/// `ker T_p = ker T₃` on `F(n)` for `p ≡ 3 (mod 8)` and `ker T_p = ker T₅`
/// for `p ≡ 5 (mod 8)`.
pub fn check_kernel_equality(prime_bound: u64, max_level: usize) -> Check {
    Check::run("kernel equality", || {
        let mut t = Tally::default();
        let (t3, t5) = t3_t5(max_level)?;
        for p in odd_primes_up_to(prime_bound) {
            let reference = match p % 8 {
                3 => &t3,
                5 => &t5,
                _ => continue,
            };
            let tp = hecke_matrix(p, max_level)?;
            for n in 1..=max_level {
                let ours = kernel_span(&reference.restrict(n));
                let theirs = tp.restrict(n).kernel();
                t.expect(same_span(&ours, &theirs), || format!("ker T_{p} on F({n})"));
            }
        }
        Ok(t.with_note(format!("p ≤ {prime_bound}, n ≤ {max_level}")))
    })
}

fn form(c: u64) -> FormParam {
    FormParam::from_value(c).expect("c is 2 or 4")
}

/// `θ_{t,n}` for `n ≤ 3` in the `Δ` basis.
pub fn check_theta_tables() -> Check {
    Check::run("theta tables", || {
        let mut t = Tally::default();
        for (c, n, tt, exps) in REFERENCE_THETA {
            let precision = family_precision(n);
            let basis = DeltaBasis::new(precision.div_ceil(2), precision);
            let series = theta(ThetaIndex::new(tt as i64, n, form(c)), precision);
            let got = basis.expand(&series)?.delta_exponents();
            t.expect(got == exps, || format!("θ({tt},{n}) c={c} = {got:?}"));
        }
        Ok(t.with_note("n ≤ 3, c = 2 and 4"))
    })
}

/// Base, reflection, vanishing, descent and special-value identities.
pub fn check_theta_identities(max_level: u32, precision: usize) -> Check {
    Check::run("theta identities", || {
        let mut t = Tally::default();
        for c in [FormParam::Two, FormParam::Four] {
            for n in 1..=max_level {
                let precision = if n >= 2 {
                    precision.max(c.special_exponent(n))
                } else {
                    precision
                };
                let r = verify_theta_identities(n, c, precision)?;
                t.expect(r.all(), || format!("n = {n}, c = {}: {r:?}", c.value()));
            }
        }
        Ok(t.with_note(format!("n ≤ {max_level} at precision {precision}")))
    })
}

/// Span of the theta family equals the span of the matching `m`-family.
pub fn check_span_equality(table: &mut MTable, max_level_2: u32, max_level_4: u32) -> Check {
    Check::run("theta and m spans", || {
        let mut t = Tally::default();
        for (c, max) in [(FormParam::Two, max_level_2), (FormParam::Four, max_level_4)] {
            for n in 1..=max {
                let s = verify_span_equality(n, c, table)?;
                t.expect(s.equal(), || format!("n = {n}, c = {}: {s:?}", c.value()));
            }
        }
        Ok(t.with_note(format!("c=2 n ≤ {max_level_2}, c=4 n ≤ {max_level_4}")))
    })
}

/// `T_p θ_{t,n}` matches the composition-law prediction in split classes and
/// vanishes in inert ones.
pub fn check_hecke_on_theta(max_level: u32, prime_bound: u64, precision: usize) -> Check {
    Check::run("Hecke action on theta", || {
        let mut t = Tally::default();
        for c in [FormParam::Two, FormParam::Four] {
            for n in 1..=max_level {
                for p in odd_primes_up_to(prime_bound) {
                    let ok = verify_hecke_on_theta(p, n, c, precision)?;
                    t.expect(ok, || format!("p = {p}, n = {n}, c = {}", c.value()));
                }
            }
        }
        Ok(t.with_note(format!("n ≤ {max_level}, p ≤ {prime_bound}, precision {precision}")))
    })
}

/// `θ_{2^{n−1}−t(p),n} = T_p Δ^k` for the special exponent `k`.
pub fn check_special_relations(max_level: u32, precision: usize) -> Check {
    Check::run("special Hecke relations", || {
        let mut t = Tally::default();
        for (c, primes) in [(FormParam::Two, [3u64, 11, 17]), (FormParam::Four, [5, 13, 17])] {
            for n in 1..=max_level {
                for p in primes {
                    let ok = verify_special_hecke_relation(p, n, c, precision)?;
                    t.expect(ok, || format!("p = {p}, n = {n}, c = {}", c.value()));
                }
            }
        }
        Ok(t.with_note(format!("n ≤ {max_level}")))
    })
}

/// `T_p T_q θ_{t,n}` against the law applied twice, for split `p, q`.
pub fn check_double_hecke(max_level: u32, prime_bound: u64, precision: usize) -> Check {
    Check::run("double Hecke on theta", || {
        let mut t = Tally::default();
        for c in [FormParam::Two, FormParam::Four] {
            let split: Vec<u64> = odd_primes_up_to(prime_bound)
                .into_iter()
                .filter(|&p| c.is_split(p))
                .collect();
            for n in 1..=max_level {
                for &p in &split {
                    for &q in &split {
                        let ok = verify_double_hecke(p, q, n, c, precision)?;
                        t.expect(ok, || format!("p = {p}, q = {q}, n = {n}, c = {}", c.value()));
                    }
                }
            }
        }
        Ok(t.with_note(format!("n ≤ {max_level}, split p, q ≤ {prime_bound}")))
    })
}

/// `(Z/2ⁿ, •)` is an abelian group, cyclic of order `2ⁿ`, for both laws.
pub fn check_composition_groups(max_level: u32) -> Check {
    Check::run("composition groups", || {
        let mut t = Tally::default();
        for c in [FormParam::Two, FormParam::Four] {
            for n in 1..=max_level {
                let g = CompositionLaw::new(n, c).check_group();
                t.expect(g.is_cyclic_group(), || format!("n = {n}, c = {}: {g:?}", c.value()));
            }
        }
        Ok(t.with_note(format!("n ≤ {max_level}")))
    })
}

/// The kernel of `T₅` (resp. `T₃`) on `F(level)` is spanned by theta series
/// and supported on `a² + 2b²` (resp. `a² + b²`); conversely on `F(8)` every
/// element with that support lies in the kernel.
pub fn check_kernel_characterization(level: usize, precision: usize, max_theta_level: u32) -> Check {
    Check::run("kernel characterization", || {
        let mut t = Tally::default();
        let mut notes = Vec::new();
        for c in [FormParam::Two, FormParam::Four] {
            for n in [2, level / 2, level] {
                let r = verify_kernel_characterization(n, c, precision, max_theta_level)?;
                t.expect(r.holds(), || format!("F({n}), c = {}: {r:?}", c.value()));
                if n == level {
                    notes.push(format!(
                        "c={}: dim {} in theta level {}",
                        c.value(),
                        r.kernel_dim,
                        r.theta_level.map_or("-".into(), |l| l.to_string())
                    ));
                }
            }
            // Converse on a small level, exhaustively.
            let small = 8;
            let op = hecke_matrix(c.annihilating_prime(), small)?;
            let powers = OddDeltaPowers::new(small, precision);
            for mask in 1u64..(1 << small) {
                let v = Bits::from_ones(small, (0..small).filter(|&i| mask >> i & 1 == 1));
                let series = FElement::from_coords(v.clone()).to_series_with(&powers);
                let supported = series.exponents().all(|e| in_support_set(e as u64, c));
                let killed = op.mul_vec(&v).is_zero();
                t.expect(supported == killed, || {
                    format!("c = {}: {} support/kernel mismatch", c.value(), FElement::from_coords(v))
                });
            }
        }
        t.expect(!delta_pow(5, 45)?.hecke(5)?.is_zero(), || "T5 kills Δ^5".into());
        Ok(t.with_note(notes.join(", ")))
    })
}
