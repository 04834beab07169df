//! Dense matrices over GF(2), row-major and bit-packed, with Gaussian
//! elimination that always pivots on the lowest available row index.

use std::fmt;

use crate::bits::Bits;
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GF2Matrix {
    rows: Vec<Bits>,
    cols: usize,
}

impl GF2Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        GF2Matrix {
            rows: vec![Bits::zeros(cols); rows],
            cols,
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i].set(i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<Bits>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        GF2Matrix { rows, cols }
    }

    /// Matrix whose `j`-th column is `columns[j]`.
    pub fn from_columns(columns: &[Bits], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length mismatch");
            for i in c.iter_ones() {
                m.rows[i].set(j, true);
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i].get(j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: bool) {
        self.rows[i].set(j, v);
    }

    pub fn row(&self, i: usize) -> &Bits {
        &self.rows[i]
    }

    pub fn column(&self, j: usize) -> Bits {
        Bits::from_ones(self.nrows(), (0..self.nrows()).filter(|&i| self.get(i, j)))
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Bits::is_zero)
    }

    pub fn transpose(&self) -> GF2Matrix {
        let mut t = Self::zeros(self.cols, self.nrows());
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                t.rows[j].set(i, true);
            }
        }
        t
    }

    pub fn add(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!((self.nrows(), self.cols), (other.nrows(), other.cols));
        let mut out = self.clone();
        for (a, b) in out.rows.iter_mut().zip(&other.rows) {
            a.xor_assign(b);
        }
        out
    }

    pub fn mul(&self, other: &GF2Matrix) -> GF2Matrix {
        assert_eq!(self.cols, other.nrows(), "dimension mismatch in product");
        let rows = self
            .rows
            .iter()
            .map(|r| {
                let mut acc = Bits::zeros(other.cols);
                for k in r.iter_ones() {
                    acc.xor_assign(&other.rows[k]);
                }
                acc
            })
            .collect();
        GF2Matrix {
            rows,
            cols: other.cols,
        }
    }

    pub fn mul_vec(&self, v: &Bits) -> Bits {
        assert_eq!(self.cols, v.len(), "dimension mismatch in product");
        Bits::from_ones(
            self.nrows(),
            self.rows
                .iter()
                .enumerate()
                .filter(|(_, r)| r.dot(v))
                .map(|(i, _)| i),
        )
    }

    pub fn pow(&self, mut e: u32) -> GF2Matrix {
        assert!(self.is_square());
        let mut result = Self::identity(self.cols);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Row-major flattening into one vector of length `rows · cols`.
    pub fn flatten(&self) -> Bits {
        let mut out = Bits::zeros(self.nrows() * self.cols);
        for (i, r) in self.rows.iter().enumerate() {
            for j in r.iter_ones() {
                out.set(i * self.cols + j, true);
            }
        }
        out
    }

    /// Upper-left `n × n` block.
    pub fn restrict(&self, n: usize) -> GF2Matrix {
        assert!(n <= self.nrows() && n <= self.cols);
        GF2Matrix {
            rows: self.rows[..n].iter().map(|r| r.resized(n)).collect(),
            cols: n,
        }
    }

    /// Every nonzero entry `(i, j)` has `i < j`: each basis vector maps into
    /// the span of strictly earlier ones.
    pub fn is_strictly_upper(&self) -> bool {
        self.rows
            .iter()
            .enumerate()
            .all(|(i, r)| r.first_one().is_none_or(|j| j > i))
    }

    /// Smallest `s ≥ 1` with `M^s = 0`.
    pub fn nilpotency_index(&self) -> Result<usize> {
        assert!(self.is_square());
        let n = self.cols;
        let mut power = self.clone();
        for s in 1..=n.max(1) {
            if power.is_zero() {
                return Ok(s);
            }
            power = power.mul(self);
        }
        // M^n ≠ 0 for an n×n matrix means M is not nilpotent.
        Err(Error::NotNilpotent)
    }

    pub fn rank(&self) -> usize {
        let mut e = Echelon::new(self.cols);
        self.rows.iter().filter(|r| e.insert(r)).count()
    }

    /// A basis of `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Bits> {
        let (reduced, pivots) = self.rref();
        let pivot_cols: Vec<usize> = pivots.iter().map(|&(_, c)| c).collect();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|c| !pivot_cols.contains(c)) {
            let mut v = Bits::unit(self.cols, free);
            for &(r, c) in &pivots {
                if reduced.rows[r].get(free) {
                    v.set(c, true);
                }
            }
            basis.push(v);
        }
        basis
    }

    /// Solve `M x = b`. Returns a particular solution and the dimension of
    /// the solution space's direction (the nullity), or `None` when the
    /// system is inconsistent.
    pub fn solve(&self, b: &Bits) -> Option<(Bits, usize)> {
        assert_eq!(b.len(), self.nrows());
        let mut aug = GF2Matrix::zeros(self.nrows(), self.cols + 1);
        for (i, r) in self.rows.iter().enumerate() {
            let mut row = r.resized(self.cols + 1);
            if b.get(i) {
                row.set(self.cols, true);
            }
            aug.rows[i] = row;
        }
        let (reduced, pivots) = aug.rref();
        if pivots.iter().any(|&(_, c)| c == self.cols) {
            return None;
        }
        let mut x = Bits::zeros(self.cols);
        for &(r, c) in &pivots {
            if reduced.rows[r].get(self.cols) {
                x.set(c, true);
            }
        }
        Some((x, self.cols - pivots.len()))
    }

    /// Reduced row echelon form with `(row, pivot column)` pairs.
    fn rref(&self) -> (GF2Matrix, Vec<(usize, usize)>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut next = 0;
        for col in 0..m.cols {
            let Some(p) = (next..m.nrows()).find(|&r| m.rows[r].get(col)) else {
                continue;
            };
            m.rows.swap(next, p);
            let pivot = m.rows[next].clone();
            for r in 0..m.nrows() {
                if r != next && m.rows[r].get(col) {
                    m.rows[r].xor_assign(&pivot);
                }
            }
            pivots.push((next, col));
            next += 1;
            if next == m.nrows() {
                break;
            }
        }
        (m, pivots)
    }
}

impl fmt::Debug for GF2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "GF2Matrix {}x{}", self.nrows(), self.cols)?;
        for r in &self.rows {
            let line: String = (0..self.cols)
                .map(|j| if r.get(j) { '1' } else { '.' })
                .collect();
            writeln!(f, "  {line}")?;
        }
        Ok(())
    }
}

/// Incremental row-echelon basis of a subspace of `GF(2)^len`.
///
/// Each stored row is reduced against all earlier ones before insertion, so
/// reducing a vector against the rows in insertion order clears every pivot.
#[derive(Clone, Debug)]
pub struct Echelon {
    len: usize,
    rows: Vec<(usize, Bits)>,
}

impl Echelon {
    pub fn new(len: usize) -> Self {
        Echelon {
            len,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn reduce(&self, v: &Bits) -> Bits {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let mut w = v.clone();
        for (pivot, row) in &self.rows {
            if w.get(*pivot) {
                w.xor_assign(row);
            }
        }
        w
    }

    pub fn contains(&self, v: &Bits) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether it was independent.
    pub fn insert(&mut self, v: &Bits) -> bool {
        let w = self.reduce(v);
        match w.first_one() {
            Some(p) => {
                self.rows.push((p, w));
                true
            }
            None => false,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: &[&str]) -> GF2Matrix {
        let cols = rows[0].len();
        GF2Matrix::from_rows(
            rows.iter()
                .map(|r| Bits::from_ones(cols, r.chars().enumerate().filter(|(_, c)| *c == '1').map(|(i, _)| i)))
                .collect(),
            cols,
        )
    }

    #[test]
    fn rank_and_kernel() {
        let m = mat(&["110", "011", "101"]);
        assert_eq!(m.rank(), 2);
        let k = m.kernel();
        assert_eq!(k.len(), 1);
        assert!(m.mul_vec(&k[0]).is_zero());
        assert_eq!(GF2Matrix::identity(5).rank(), 5);
        assert_eq!(GF2Matrix::zeros(3, 4).kernel().len(), 4);
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = mat(&["110", "011", "101"]);
        let (x, nullity) = m.solve(&Bits::from_ones(3, [0, 1])).unwrap();
        assert_eq!(nullity, 1);
        assert_eq!(m.mul_vec(&x), Bits::from_ones(3, [0, 1]));
        assert!(m.solve(&Bits::from_ones(3, [0])).is_none());
    }

    #[test]
    fn nilpotency() {
        assert_eq!(GF2Matrix::zeros(3, 3).nilpotency_index(), Ok(1));
        let j = mat(&["0100", "0010", "0001", "0000"]);
        assert!(j.is_strictly_upper());
        assert_eq!(j.nilpotency_index(), Ok(4));
        assert_eq!(GF2Matrix::identity(2).nilpotency_index(), Err(Error::NotNilpotent));
    }

    #[test]
    fn products_transpose_and_powers() {
        let a = mat(&["11", "01"]);
        assert_eq!(a.mul(&a), GF2Matrix::identity(2));
        assert_eq!(a.pow(3), a);
        assert_eq!(a.transpose(), mat(&["10", "11"]));
        assert_eq!(a.column(1), Bits::from_ones(2, [0, 1]));
    }

    #[test]
    fn echelon_membership() {
        let mut e = Echelon::new(4);
        assert!(e.insert(&Bits::from_ones(4, [0, 1])));
        assert!(e.insert(&Bits::from_ones(4, [1, 2])));
        assert!(!e.insert(&Bits::from_ones(4, [0, 2])));
        assert!(e.contains(&Bits::from_ones(4, [0, 2])));
        assert!(!e.contains(&Bits::from_ones(4, [3])));
        assert_eq!(e.rank(), 2);
    }
}
