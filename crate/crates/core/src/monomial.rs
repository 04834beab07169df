//! Exponent pairs `(a, b)` and finitely supported GF(2) coefficient maps on
//! them. The same type holds polynomials in `x = T₃, y = T₅`, the
//! coefficients `a_ij(p)` of `T_p`, and coordinates in the `m(a, b)` basis.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::gf2::GF2Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MIndex {
    pub a: usize,
    pub b: usize,
}

impl MIndex {
    pub const fn new(a: usize, b: usize) -> Self {
        MIndex { a, b }
    }

    pub const fn degree(self) -> usize {
        self.a + self.b
    }

    /// All indices of total degree `d`, in graded order.
    pub fn of_degree(d: usize) -> impl Iterator<Item = MIndex> {
        (0..=d).rev().map(move |a| MIndex::new(a, d - a))
    }

    /// All indices with `a + b ≤ d`, in graded order.
    pub fn up_to_degree(d: usize) -> impl Iterator<Item = MIndex> {
        (0..=d).flat_map(MIndex::of_degree)
    }
}

impl Ord for MIndex {
    /// Graded order: total degree first, then larger `a` first, matching how
    /// expansions in `x` and `y` are usually printed.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| other.a.cmp(&self.a))
    }
}

impl PartialOrd for MIndex {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for MIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.a, self.b)
    }
}

/// A finite set of indices carrying coefficient 1.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct MExpansion {
    support: BTreeSet<MIndex>,
}

impl MExpansion {
    pub fn new() -> Self {
        Self::default()
    }

    /// Builds from pairs; repeated pairs cancel.
    pub fn from_pairs<I: IntoIterator<Item = (usize, usize)>>(pairs: I) -> Self {
        let mut e = Self::new();
        for (a, b) in pairs {
            e.toggle(MIndex::new(a, b));
        }
        e
    }

    pub fn unit(idx: MIndex) -> Self {
        let mut e = Self::new();
        e.toggle(idx);
        e
    }

    pub fn toggle(&mut self, idx: MIndex) {
        if !self.support.remove(&idx) {
            self.support.insert(idx);
        }
    }

    pub fn contains(&self, idx: MIndex) -> bool {
        self.support.contains(&idx)
    }

    pub fn is_zero(&self) -> bool {
        self.support.is_empty()
    }

    pub fn len(&self) -> usize {
        self.support.len()
    }

    pub fn is_empty(&self) -> bool {
        self.support.is_empty()
    }

    /// Support in graded order.
    pub fn iter(&self) -> impl Iterator<Item = MIndex> + '_ {
        self.support.iter().copied()
    }

    pub fn max_degree(&self) -> Option<usize> {
        self.support.iter().map(|i| i.degree()).max()
    }

    pub fn min_degree(&self) -> Option<usize> {
        self.support.iter().map(|i| i.degree()).min()
    }

    /// Terms of total degree at most `d`.
    pub fn truncated(&self, d: usize) -> MExpansion {
        MExpansion {
            support: self.iter().filter(|i| i.degree() <= d).collect(),
        }
    }

    /// Terms of exactly total degree `d`.
    pub fn stratum(&self, d: usize) -> Vec<MIndex> {
        self.iter().filter(|i| i.degree() == d).collect()
    }

    /// `Σ x^a y^b` evaluated at commuting matrices `x`, `y`.
    pub fn evaluate(&self, x: &GF2Matrix, y: &GF2Matrix) -> Result<GF2Matrix> {
        if !x.is_square() || x.nrows() != y.nrows() || !y.is_square() {
            return Err(Error::InvalidArgument(
                "evaluation needs two square matrices of the same size".into(),
            ));
        }
        let n = x.nrows();
        let mut acc = GF2Matrix::zeros(n, n);
        let max_a = self.iter().map(|i| i.a).max().unwrap_or(0);
        let max_b = self.iter().map(|i| i.b).max().unwrap_or(0);
        let mut x_pows = vec![GF2Matrix::identity(n)];
        for _ in 0..max_a {
            let next = x_pows.last().unwrap().mul(x);
            x_pows.push(next);
        }
        let mut y_pow = GF2Matrix::identity(n);
        for b in 0..=max_b {
            for idx in self.iter().filter(|i| i.b == b) {
                acc = acc.add(&x_pows[idx.a].mul(&y_pow));
            }
            y_pow = y_pow.mul(y);
        }
        Ok(acc)
    }
}

impl FromIterator<MIndex> for MExpansion {
    fn from_iter<I: IntoIterator<Item = MIndex>>(iter: I) -> Self {
        let mut e = MExpansion::new();
        for i in iter {
            e.toggle(i);
        }
        e
    }
}

impl fmt::Display for MExpansion {
    /// Polynomial notation in `x` and `y`, e.g. `x^2 + y^2 + x^2y^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .iter()
            .map(|MIndex { a, b }| {
                let var = |name: &str, e: usize| match e {
                    0 => String::new(),
                    1 => name.to_string(),
                    _ => format!("{name}^{e}"),
                };
                let t = format!("{}{}", var("x", a), var("y", b));
                if t.is_empty() {
                    "1".to_string()
                } else {
                    t
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}
