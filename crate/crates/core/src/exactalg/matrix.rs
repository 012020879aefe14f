use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Error, Result};

/// Largest dimension [`IntMatrix::permanent_ryser`] accepts by default.
pub const DEFAULT_PERMANENT_CAP: usize = 24;

/// Square matrix of big integers, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    n: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(n: usize) -> Self {
        Self { n, entries: alloc::vec![BigInt::zero(); n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    /// Builds a matrix from rows, rejecting ragged or non-square input.
    pub fn from_rows<T>(rows: &[Vec<T>]) -> Result<Self>
    where
        T: Clone + Into<BigInt>,
    {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::NotSquare { row, len: r.len(), dim: n });
            }
            entries.extend(r.iter().cloned().map(Into::into));
        }
        Ok(Self { n, entries })
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.n + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[BigInt]> {
        (0..self.n).map(move |i| self.row(i))
    }

    pub fn is_skew_symmetric(&self) -> bool {
        (0..self.n).all(|i| {
            self.get(i, i).is_zero() && (0..i).all(|j| self.get(i, j) == &-self.get(j, i))
        })
    }

    /// The matrix with row `k` and column `k` removed.
    pub fn minor(&self, k: usize) -> Result<IntMatrix> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k, size: self.n });
        }
        let m = self.n - 1;
        let mut entries = Vec::with_capacity(m * m);
        for i in (0..self.n).filter(|&i| i != k) {
            for j in (0..self.n).filter(|&j| j != k) {
                entries.push(self.get(i, j).clone());
            }
        }
        Ok(IntMatrix { n: m, entries })
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    ///
    /// Every division in the sweep is exact, so intermediate entries stay
    /// integral and are bounded by minors of the input. The empty matrix has
    /// determinant 1.
    pub fn det(&self) -> BigInt {
        let n = self.n;
        if n == 0 {
            return BigInt::one();
        }
        let mut a: Vec<Vec<BigInt>> = self.rows().map(<[BigInt]>::to_vec).collect();
        let mut negate = false;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                    Some(i) => {
                        a.swap(i, k);
                        negate = !negate;
                    }
                    None => return BigInt::zero(),
                }
            }
            let (head, tail) = a.split_at_mut(k + 1);
            let pivot_row = &head[k];
            let pivot = &pivot_row[k];
            for row in tail.iter_mut() {
                let factor = row[k].clone();
                for j in k + 1..n {
                    let v = &row[j] * pivot - &factor * &pivot_row[j];
                    row[j] = v / &prev;
                }
                row[k] = BigInt::zero();
            }
            prev = a[k][k].clone();
        }
        let d = a[n - 1][n - 1].clone();
        if negate {
            -d
        } else {
            d
        }
    }

    /// Permanent by Ryser's inclusion-exclusion over column subsets, visiting
    /// the subsets in Gray-code order so each step updates the row sums by a
    /// single column. Dimensions above [`DEFAULT_PERMANENT_CAP`] are refused.
    pub fn permanent_ryser(&self) -> Result<BigInt> {
        self.permanent_ryser_capped(DEFAULT_PERMANENT_CAP)
    }

    pub fn permanent_ryser_capped(&self, cap: usize) -> Result<BigInt> {
        let n = self.n;
        if n > cap || n >= 64 {
            return Err(Error::DimensionTooLarge { dim: n, cap: cap.min(63) });
        }
        if n == 0 {
            return Ok(BigInt::one());
        }
        if let Some(small) = self.to_i128_if_safe() {
            return Ok(BigInt::from(ryser_i128(n, &small)));
        }
        Ok(ryser_big(n, &self.entries))
    }

    /// Entries as `i128` when every partial sum and product of the Ryser
    /// expansion provably fits.
    fn to_i128_if_safe(&self) -> Option<Vec<i128>> {
        let mut max_abs = BigInt::zero();
        for e in &self.entries {
            let a = e.abs();
            if a > max_abs {
                max_abs = a;
            }
        }
        let row_bound = max_abs * BigInt::from(self.n);
        // |product| <= row_bound^n and at most 2^n terms are summed.
        let bits = row_bound.bits().max(1) * self.n as u64 + self.n as u64 + 1;
        if bits >= 126 {
            return None;
        }
        self.entries.iter().map(ToPrimitive::to_i128).collect()
    }
}

fn ryser_i128(n: usize, a: &[i128]) -> i128 {
    let mut row_sums = alloc::vec![0i128; n];
    let mut total = 0i128;
    let mut in_set = 0u64;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let adding = in_set & (1 << j) == 0;
        in_set ^= 1 << j;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if adding {
                *s += a[i * n + j];
            } else {
                *s -= a[i * n + j];
            }
        }
        let prod: i128 = row_sums.iter().product();
        if in_set.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

fn ryser_big(n: usize, a: &[BigInt]) -> BigInt {
    let mut row_sums = alloc::vec![BigInt::zero(); n];
    let mut total = BigInt::zero();
    let mut in_set = 0u64;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let adding = in_set & (1 << j) == 0;
        in_set ^= 1 << j;
        for (i, s) in row_sums.iter_mut().enumerate() {
            if adding {
                *s += &a[i * n + j];
            } else {
                *s -= &a[i * n + j];
            }
        }
        let prod = row_sums.iter().fold(BigInt::one(), |acc, s| acc * s);
        if in_set.count_ones() % 2 == 1 {
            total -= prod;
        } else {
            total += prod;
        }
    }
    if n % 2 == 1 {
        -total
    } else {
        total
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<_> = row.iter().map(|v| format!("{v}")).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}
