//! Permutations with a prescribed up/down shape.
//!
//! A permutation `[a_1 .. a_n]` has shape `q = (q_1 .. q_{n-1})` when
//! `q_i * (a_{i+1} - a_i) > 0` for every `i`; `+1` is a rise and `-1` a
//! descent. `theta(q; j)` counts those ending in `j`.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exactalg::binomial;
use crate::{Error, Result};

/// Largest degree [`psi_bruteforce`] accepts.
pub const BRUTEFORCE_DEGREE_LIMIT: usize = 9;

/// Degrees accepted by [`niven_maximality`].
pub const NIVEN_DEGREES: core::ops::RangeInclusive<usize> = 2..=12;

/// Sequence of rises (+1) and descents (-1); degree is length plus one.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Shape(Vec<i8>);

impl Shape {
    pub fn new(q: Vec<i8>) -> Result<Self> {
        if let Some(&x) = q.iter().find(|&&x| x != 1 && x != -1) {
            return Err(Error::InvalidParameter(format!("shape entry {x} is not +1 or -1")));
        }
        Ok(Self(q))
    }

    /// The alternating shape `a_1 > a_2 < a_3 > ...` of the given degree.
    pub fn alternating(degree: usize) -> Self {
        Self((0..degree.saturating_sub(1)).map(|i| if i % 2 == 0 { -1 } else { 1 }).collect())
    }

    /// All `2^(degree-1)` shapes, in binary counting order with -1 as 0.
    pub fn all(degree: usize) -> impl Iterator<Item = Shape> {
        let len = degree.saturating_sub(1);
        (0u64..1 << len).map(move |bits| Shape((0..len).map(|i| if bits >> (len - 1 - i) & 1 == 1 { 1 } else { -1 }).collect()))
    }

    pub fn entries(&self) -> &[i8] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() + 1
    }

    pub fn negated(&self) -> Shape {
        Shape(self.0.iter().map(|&x| -x).collect())
    }

    pub fn reversed(&self) -> Shape {
        Shape(self.0.iter().rev().copied().collect())
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Reads `+` and `-` (the Unicode minus sign also counts as `-`).
    fn from_str(s: &str) -> Result<Self> {
        s.chars()
            .filter(|c| !c.is_whitespace())
            .map(|c| match c {
                '+' => Ok(1),
                '-' | '\u{2212}' => Ok(-1),
                _ => Err(Error::InvalidParameter(format!("{c:?} is not a shape symbol"))),
            })
            .collect::<Result<Vec<i8>>>()
            .map(Shape)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &x in &self.0 {
            f.write_str(if x > 0 { "+" } else { "-" })?;
        }
        Ok(())
    }
}

/// `rows[k][j - 1] = theta(q_1 .. q_k; j)` for `j = 1 ..= k + 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaTable {
    rows: Vec<Vec<BigInt>>,
}

impl ThetaTable {
    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    pub fn last_row(&self) -> &[BigInt] {
        self.rows.last().expect("row 0 always exists")
    }

    /// `theta(q; j)` for the full shape, 1-based `j`.
    pub fn theta(&self, j: usize) -> BigInt {
        self.last_row().get(j.wrapping_sub(1)).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn row_sum(&self, k: usize) -> BigInt {
        self.rows[k].iter().sum()
    }
}

/// Builds the table one shape letter at a time with running sums: a rise
/// sums the previous row below `j`, a descent sums it from `j` up.
pub fn theta_table(q: &Shape) -> ThetaTable {
    let mut rows = vec![vec![BigInt::one()]];
    for &step in &q.0 {
        let old = rows.last().unwrap();
        let m = old.len();
        let mut new = vec![BigInt::zero(); m + 1];
        if step > 0 {
            for j in 1..=m {
                new[j] = &new[j - 1] + &old[j - 1];
            }
        } else {
            for j in (0..m).rev() {
                new[j] = &new[j + 1] + &old[j];
            }
        }
        rows.push(new);
    }
    ThetaTable { rows }
}

/// Number of permutations of shape `q`.
pub fn psi(q: &Shape) -> BigInt {
    theta_table(q).last_row().iter().sum()
}

/// Counts permutations of shape `q` by depth-first placement.
pub fn psi_bruteforce(q: &Shape) -> Result<BigInt> {
    let n = q.degree();
    if n > BRUTEFORCE_DEGREE_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: BRUTEFORCE_DEGREE_LIMIT as u128 });
    }
    fn place(q: &[i8], n: usize, used: u32, last: usize, depth: usize) -> u64 {
        if depth == n {
            return 1;
        }
        let mut total = 0;
        for v in 0..n {
            if used >> v & 1 == 1 {
                continue;
            }
            if depth > 0 && (q[depth - 1] > 0) != (v > last) {
                continue;
            }
            total += place(q, n, used | 1 << v, v, depth + 1);
        }
        total
    }
    Ok(BigInt::from(place(&q.0, n, 0, 0, 0)))
}

/// Euler zigzag number: alternating permutations of degree `n`, with
/// `E_0 = 1`.
pub fn euler_number(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    psi(&Shape::alternating(n))
}

/// `E_0 ..= E_max` from `E_{n+1} = sum_{odd j <= n} C(n, j) E_j E_{n-j}`
/// (n >= 1), independent of the theta table.
pub fn euler_numbers_by_recurrence(max: usize) -> Vec<BigInt> {
    let mut e: Vec<BigInt> = vec![BigInt::one(), BigInt::one()];
    while e.len() <= max {
        let n = e.len() - 1;
        let s: BigInt = (1..=n).step_by(2).map(|j| binomial(n as u64, j as u64) * &e[j] * &e[n - j]).sum();
        e.push(s);
    }
    e.truncate(max + 1);
    e
}

/// True iff the alternating shape and its negation strictly beat every
/// other shape of degree `n`.
pub fn niven_maximality(n: usize) -> Result<bool> {
    if !NIVEN_DEGREES.contains(&n) {
        return Err(Error::InvalidParameter(format!("degree {n} is outside 2..=12")));
    }
    let q0 = Shape::alternating(n);
    let minus = q0.negated();
    let best = psi(&q0);
    if psi(&minus) != best {
        return Ok(false);
    }
    Ok(Shape::all(n).filter(|q| *q != q0 && *q != minus).all(|q| psi(&q) < best))
}

/// Shapes of degree `n` with the largest count, and that count.
pub fn maximal_shapes(n: usize) -> (BigInt, Vec<Shape>) {
    let mut best = BigInt::zero();
    let mut winners = Vec::new();
    for q in Shape::all(n.max(1)) {
        let p = psi(&q);
        match p.cmp(&best) {
            core::cmp::Ordering::Greater => {
                best = p;
                winners = vec![q];
            }
            core::cmp::Ordering::Equal => winners.push(q),
            core::cmp::Ordering::Less => {}
        }
    }
    (best, winners)
}
