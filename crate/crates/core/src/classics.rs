//! Common representatives of two partitions, linear spaces, ordinary
//! lines, integer bases built from odd digit sequences, and
//! factorizations of finite abelian groups.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::{Error, Result};

/// A ground set `0..size` with two partitions `u` and `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepInstance {
    size: usize,
    u: Vec<Vec<usize>>,
    b: Vec<Vec<usize>>,
    u_of: Vec<usize>,
    b_of: Vec<usize>,
}

fn block_index(size: usize, blocks: &[Vec<usize>], name: &str) -> Result<Vec<usize>> {
    let mut owner = vec![usize::MAX; size];
    for (i, block) in blocks.iter().enumerate() {
        if block.is_empty() {
            return Err(Error::MalformedPartition(format!("{name} block {i} is empty")));
        }
        for &x in block {
            if x >= size {
                return Err(Error::MalformedPartition(format!("{name} block {i} has element {x} outside 0..{size}")));
            }
            if owner[x] != usize::MAX {
                return Err(Error::MalformedPartition(format!("element {x} appears twice in {name}")));
            }
            owner[x] = i;
        }
    }
    if let Some(x) = owner.iter().position(|&o| o == usize::MAX) {
        return Err(Error::MalformedPartition(format!("element {x} is missing from {name}")));
    }
    Ok(owner)
}

impl RepInstance {
    pub fn new(size: usize, u: Vec<Vec<usize>>, b: Vec<Vec<usize>>) -> Result<Self> {
        let u_of = block_index(size, &u, "U")?;
        let b_of = block_index(size, &b, "B")?;
        Ok(Self { size, u, b, u_of, b_of })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn u_blocks(&self) -> &[Vec<usize>] {
        &self.u
    }

    pub fn b_blocks(&self) -> &[Vec<usize>] {
        &self.b
    }

    /// True iff `x` meets every block of both partitions exactly once.
    pub fn is_common_system(&self, x: &[usize]) -> bool {
        let mut u_hits = vec![0usize; self.u.len()];
        let mut b_hits = vec![0usize; self.b.len()];
        for &e in x {
            if e >= self.size {
                return false;
            }
            u_hits[self.u_of[e]] += 1;
            b_hits[self.b_of[e]] += 1;
        }
        u_hits.iter().chain(&b_hits).all(|&h| h == 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    U,
    B,
}

/// Failure certificate: `blocks` (k - 1 of them, from partition `side`)
/// have a union containing all of `contained` (k blocks of the other one).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HallWitness {
    pub side: Side,
    pub blocks: Vec<usize>,
    pub contained: Vec<usize>,
}

impl HallWitness {
    /// Checks the certificate against the instance.
    pub fn is_valid(&self, inst: &RepInstance) -> bool {
        let (mine, theirs) = match self.side {
            Side::U => (&inst.u, &inst.b),
            Side::B => (&inst.b, &inst.u),
        };
        if self.contained.len() != self.blocks.len() + 1 {
            return false;
        }
        let distinct = |v: &[usize], bound: usize| {
            v.iter().all(|&i| i < bound) && v.iter().collect::<BTreeSet<_>>().len() == v.len()
        };
        if !distinct(&self.blocks, mine.len()) || !distinct(&self.contained, theirs.len()) {
            return false;
        }
        let union: BTreeSet<usize> = self.blocks.iter().flat_map(|&i| mine[i].iter().copied()).collect();
        self.contained.iter().all(|&j| theirs[j].iter().all(|x| union.contains(x)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepOutcome {
    /// Sorted elements, one per block of each partition.
    System(Vec<usize>),
    Failure(HallWitness),
}

// Alternating-chain search from one partition (sources) into the other
// (targets). `to_of[x]` is the target block holding `x`.
struct Chains<'a> {
    from: &'a [Vec<usize>],
    to_of: &'a [usize],
    // target block -> (source block, representing element)
    target_rep: Vec<Option<(usize, usize)>>,
    source_rep: Vec<Option<usize>>,
}

impl Chains<'_> {
    /// Extends the system to source block `t`. On failure returns the
    /// reachable target blocks and the sources they are matched to.
    fn extend(&mut self, t: usize) -> core::result::Result<(), (Vec<usize>, Vec<usize>)> {
        let mut parent: BTreeMap<usize, (usize, usize)> = BTreeMap::new();
        let mut sources = Vec::new();
        let mut queue = VecDeque::from([t]);
        while let Some(s) = queue.pop_front() {
            for &x in &self.from[s] {
                let target = self.to_of[x];
                if parent.contains_key(&target) {
                    continue;
                }
                parent.insert(target, (s, x));
                match self.target_rep[target] {
                    None => {
                        let mut cur = target;
                        loop {
                            let (src, elem) = parent[&cur];
                            let previous = self.source_rep[src];
                            self.target_rep[cur] = Some((src, elem));
                            self.source_rep[src] = Some(cur);
                            if src == t {
                                return Ok(());
                            }
                            cur = previous.expect("chain sources are represented");
                        }
                    }
                    Some((next, _)) => {
                        sources.push(next);
                        queue.push_back(next);
                    }
                }
            }
        }
        sources.sort_unstable();
        Err((parent.into_keys().collect(), sources))
    }
}

// Ok: representative of each target block. Err: (targets, sources, t).
#[allow(clippy::type_complexity)]
fn run_side(
    from: &[Vec<usize>],
    to_count: usize,
    to_of: &[usize],
) -> core::result::Result<Vec<Option<(usize, usize)>>, (Vec<usize>, Vec<usize>, usize)> {
    let mut chains = Chains { from, to_of, target_rep: vec![None; to_count], source_rep: vec![None; from.len()] };
    for t in 0..from.len() {
        if let Err((targets, sources)) = chains.extend(t) {
            return Err((targets, sources, t));
        }
    }
    Ok(chains.target_rep)
}

/// Builds a common system one `B` block at a time, extending along
/// alternating chains `B, U, B, U, ...` of intersecting blocks.
pub fn common_representatives(inst: &RepInstance) -> RepOutcome {
    // sources are B blocks, targets U blocks
    match run_side(&inst.b, inst.u.len(), &inst.u_of) {
        Err((u_blocks, mut b_blocks, t)) => {
            b_blocks.push(t);
            b_blocks.sort_unstable();
            RepOutcome::Failure(HallWitness { side: Side::U, blocks: u_blocks, contained: b_blocks })
        }
        Ok(reps) if reps.iter().all(Option::is_some) => {
            let mut x: Vec<usize> = reps.into_iter().map(|r| r.unwrap().1).collect();
            x.sort_unstable();
            RepOutcome::System(x)
        }
        Ok(_) => match run_side(&inst.u, inst.b.len(), &inst.b_of) {
            Err((b_blocks, mut u_blocks, t)) => {
                u_blocks.push(t);
                u_blocks.sort_unstable();
                RepOutcome::Failure(HallWitness { side: Side::B, blocks: b_blocks, contained: u_blocks })
            }
            Ok(_) => unreachable!("every B block is represented but some U block is not"),
        },
    }
}

/// Points `0..n` and lines as point sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpace {
    points: usize,
    lines: Vec<Vec<usize>>,
}

impl LinearSpace {
    /// Validates that every pair of points lies on exactly one line, that
    /// lines have at least two points, and that there are at least two
    /// lines.
    pub fn new(points: usize, lines: Vec<Vec<usize>>) -> Result<Self> {
        let mut lines: Vec<Vec<usize>> = lines;
        for (i, line) in lines.iter_mut().enumerate() {
            line.sort_unstable();
            if line.len() < 2 {
                return Err(Error::InvalidLineSet(format!("line {i} has fewer than two points")));
            }
            if line.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidLineSet(format!("line {i} repeats a point")));
            }
            if let Some(&p) = line.iter().find(|&&p| p >= points) {
                return Err(Error::InvalidLineSet(format!("line {i} has point {p} outside 0..{points}")));
            }
        }
        if lines.len() < 2 {
            return Err(Error::InvalidLineSet(format!("{} lines; at least two are required", lines.len())));
        }
        let mut cover = vec![0usize; points * points];
        for line in &lines {
            for (i, &a) in line.iter().enumerate() {
                for &b in &line[i + 1..] {
                    cover[a * points + b] += 1;
                }
            }
        }
        for a in 0..points {
            for b in a + 1..points {
                let count = cover[a * points + b];
                if count != 1 {
                    return Err(Error::NotLinearSpace { a, b, count });
                }
            }
        }
        Ok(Self { points, lines })
    }

    pub fn point_count(&self) -> usize {
        self.points
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// `k_i`: lines through each point.
    pub fn point_degrees(&self) -> Vec<usize> {
        let mut k = vec![0; self.points];
        for line in &self.lines {
            for &p in line {
                k[p] += 1;
            }
        }
        k
    }

    /// The near-pencil: line `{0 .. n-2}` plus `{n-1, i}` for each `i`.
    pub fn near_pencil(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("a near-pencil needs at least 3 points, got {n}")));
        }
        let mut lines = vec![(0..n - 1).collect::<Vec<_>>()];
        lines.extend((0..n - 1).map(|i| vec![i, n - 1]));
        Self::new(n, lines)
    }

    pub fn fano() -> Self {
        let lines = (0..7).map(|i| vec![i, (i + 1) % 7, (i + 3) % 7]).collect();
        Self::new(7, lines).expect("difference set {0, 1, 3} mod 7")
    }

    /// Every pair of `n` points as its own line.
    pub fn complete(n: usize) -> Result<Self> {
        let mut lines = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                lines.push(vec![a, b]);
            }
        }
        Self::new(n, lines)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EqualityCase {
    /// One line holds all points but one.
    NearPencil,
    /// `n = k(k - 1) + 1`, every line has `k` points and every point lies
    /// on `k` lines.
    ProjectivePlane { k: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSpaceReport {
    pub points: usize,
    pub lines: usize,
    pub bound_holds: bool,
    /// Set when `lines == points`. The triangle (n = 3) is reported as a
    /// near-pencil although it is also the case `k = 2`.
    pub equality_case: Option<EqualityCase>,
}

pub fn linear_space_validate(ls: &LinearSpace) -> LinearSpaceReport {
    let n = ls.points;
    let m = ls.lines.len();
    let equality_case = if m != n {
        None
    } else if ls.lines.iter().any(|l| l.len() + 1 == n) {
        Some(EqualityCase::NearPencil)
    } else {
        let k = ls.lines[0].len();
        let uniform = ls.lines.iter().all(|l| l.len() == k);
        let regular = ls.point_degrees().iter().all(|&d| d == k);
        (uniform && regular && n == k * (k - 1) + 1).then_some(EqualityCase::ProjectivePlane { k })
    };
    LinearSpaceReport { points: n, lines: m, bound_holds: m >= n, equality_case }
}

pub type Point = (BigRational, BigRational);

fn collinear(p: &Point, q: &Point, r: &Point) -> bool {
    (&q.0 - &p.0) * (&r.1 - &p.1) == (&q.1 - &p.1) * (&r.0 - &p.0)
}

/// First pair `(i, j)`, `i < j`, whose line meets no other point.
pub fn ordinary_line(points: &[Point]) -> Result<(usize, usize)> {
    for j in 0..points.len() {
        if let Some(i) = (0..j).find(|&i| points[i] == points[j]) {
            let _ = i;
            return Err(Error::DuplicatePoint(j));
        }
    }
    let n = points.len();
    if n < 3 || (2..n).all(|k| collinear(&points[0], &points[1], &points[k])) {
        return Err(Error::AllCollinear);
    }
    for i in 0..n {
        for j in i + 1..n {
            if (0..n).all(|k| k == i || k == j || !collinear(&points[i], &points[j], &points[k])) {
                return Ok((i, j));
            }
        }
    }
    unreachable!("a non-collinear finite point set has an ordinary line")
}

/// Odd digits `d_1 .. d_s`, repeated with period `s`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicOddSeq {
    digits: Vec<i64>,
}

impl PeriodicOddSeq {
    pub fn new(digits: Vec<i64>) -> Result<Self> {
        if digits.is_empty() {
            return Err(Error::InvalidParameter("period must be at least 1".into()));
        }
        if let Some(d) = digits.iter().find(|d| d.is_even()) {
            return Err(Error::InvalidParameter(format!("digit {d} is even")));
        }
        if digits.iter().any(|d| d.unsigned_abs() > 1 << 40) {
            return Err(Error::InvalidParameter("digits must not exceed 2^40 in magnitude".into()));
        }
        Ok(Self { digits })
    }

    pub fn digits(&self) -> &[i64] {
        &self.digits
    }

    pub fn period(&self) -> usize {
        self.digits.len()
    }

    /// `d_i`, 1-based, extended periodically.
    pub fn digit(&self, i: usize) -> i64 {
        self.digits[(i - 1) % self.digits.len()]
    }

    fn bound(&self) -> i64 {
        self.digits.iter().map(|d| d.abs()).max().unwrap()
    }
}

/// The forced expansion of `x` over `d_1, 2 d_2, 4 d_3, ...`: returns the
/// 1-based indices with coefficient 1, or `None` when the walk cycles.
pub fn represent(d: &PeriodicOddSeq, x: &BigInt) -> Option<Vec<usize>> {
    let bound = BigInt::from(d.bound());
    let mut x = x.clone();
    let mut i = 1usize;
    let mut used = Vec::new();
    let mut seen = BTreeSet::new();
    while !x.is_zero() {
        if x.abs() <= bound && !seen.insert((x.clone(), (i - 1) % d.period())) {
            return None;
        }
        if x.is_odd() {
            used.push(i);
            x -= d.digit(i);
        }
        x /= 2;
        i += 1;
    }
    Some(used)
}

// States (x, phase) with |x| <= M. Returns the bad state with the smallest
// phase, then smallest x, if any.
fn first_bad_state(d: &PeriodicOddSeq) -> Option<(i64, usize)> {
    let m = d.bound();
    let s = d.period();
    let width = (2 * m + 1) as usize;
    let idx = |x: i64, p: usize| p * width + (x + m) as usize;
    // 0 unknown, 1 on the current path, 2 reaches zero, 3 cycles
    let mut state = vec![0u8; width * s];
    for p in 0..s {
        state[idx(0, p)] = 2;
    }
    for p0 in 0..s {
        for x0 in -m..=m {
            if state[idx(x0, p0)] != 0 {
                continue;
            }
            let mut path = Vec::new();
            let (mut x, mut p) = (x0, p0);
            let verdict = loop {
                match state[idx(x, p)] {
                    0 => {
                        state[idx(x, p)] = 1;
                        path.push(idx(x, p));
                        let e = x.rem_euclid(2);
                        x = (x - e * d.digits[p]) / 2;
                        p = (p + 1) % s;
                    }
                    1 | 3 => break 3,
                    _ => break 2,
                }
            };
            for k in path {
                state[k] = verdict;
            }
        }
    }
    (0..s).flat_map(|p| (-m..=m).map(move |x| (x, p))).find(|&(x, p)| state[idx(x, p)] == 3)
}

/// True iff `{d_1, 2 d_2, 4 d_3, ...}` is a basis of the integers.
///
/// The digit at each step is forced by parity, so only termination is in
/// question. `x -> (x - e d) / 2` keeps `|x| <= max |d_i|` once there, so
/// the walk lives on finitely many states `(x, i mod s)`; every integer
/// terminates iff every such state reaches zero.
pub fn fundament_decide(d: &PeriodicOddSeq) -> bool {
    first_bad_state(d).is_none()
}

/// An integer with no expansion, when `d` is not a fundament.
pub fn fundament_witness(d: &PeriodicOddSeq) -> Option<BigInt> {
    // x at phase p is reached from 2^p x at phase 0 through p zero digits
    first_bad_state(d).map(|(x, p)| BigInt::from(x) << p)
}

/// Fundaments `[a, b]` of period two with `0 < -b < a <= max`.
pub fn two_period_fundaments(max: i64) -> Vec<(i64, i64)> {
    let mut out = Vec::new();
    for a in (1..=max).filter(|a| a.is_odd()) {
        for b in (1..a).filter(|b| b.is_odd()).map(|b| -b) {
            if fundament_decide(&PeriodicOddSeq { digits: vec![a, b] }) {
                out.push((a, b));
            }
        }
    }
    out.sort_unstable();
    out
}

/// Integers whose base-4 digits are all 0 or 1, ascending.
pub fn moser_debruijn(count: usize) -> Vec<BigInt> {
    (0..count as u64)
        .map(|k| {
            let mut v = BigInt::zero();
            for bit in (0..64).rev() {
                v <<= 2;
                if k >> bit & 1 == 1 {
                    v += 1;
                }
            }
            v
        })
        .collect()
}

/// Largest group order [`hajos_search`] accepts.
pub const HAJOS_ORDER_LIMIT: usize = 72;
/// Default step budget for [`hajos_search`].
pub const DEFAULT_HAJOS_BUDGET: u64 = 50_000_000;

/// `Z_{m_1} x ... x Z_{m_t}`; elements are residue tuples.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    moduli: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if let Some(m) = moduli.iter().find(|&&m| m < 2) {
            return Err(Error::InvalidParameter(format!("cyclic factor of order {m}")));
        }
        if moduli.iter().try_fold(1u64, |acc, &m| acc.checked_mul(m)).is_none_or(|o| o > 1 << 32) {
            return Err(Error::InvalidParameter("group order exceeds 2^32".into()));
        }
        Ok(Self { moduli })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product::<u64>() as usize
    }

    /// Mixed-radix index, first coordinate most significant.
    pub fn index(&self, g: &[u64]) -> Result<usize> {
        if g.len() != self.moduli.len() || g.iter().zip(&self.moduli).any(|(x, m)| x >= m) {
            return Err(Error::ElementOutOfGroup(g.to_vec()));
        }
        Ok(g.iter().zip(&self.moduli).fold(0u64, |acc, (x, m)| acc * m + x) as usize)
    }

    pub fn element(&self, mut i: usize) -> Vec<u64> {
        let mut g = vec![0; self.moduli.len()];
        for (slot, &m) in g.iter_mut().zip(&self.moduli).rev() {
            *slot = i as u64 % m;
            i /= m as usize;
        }
        g
    }

    pub fn elements(&self) -> Vec<Vec<u64>> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect()
    }

    fn table(&self) -> Vec<Vec<usize>> {
        let els = self.elements();
        els.iter().map(|a| els.iter().map(|b| self.index(&self.add(a, b)).unwrap()).collect()).collect()
    }

    fn indices(&self, s: &[Vec<u64>]) -> Result<BTreeSet<usize>> {
        s.iter().map(|g| self.index(g)).collect()
    }
}

/// True iff every group element is uniquely `a + b` with `a` in `a_set`
/// and `b` in `b_set`. Repeated entries count once.
pub fn is_factorization(g: &AbelianGroup, a_set: &[Vec<u64>], b_set: &[Vec<u64>]) -> Result<bool> {
    let a = g.indices(a_set)?;
    let b = g.indices(b_set)?;
    if a.len() * b.len() != g.order() {
        return Ok(false);
    }
    let mut hit = vec![false; g.order()];
    for &x in &a {
        for &y in &b {
            let s = g.index(&g.add(&g.element(x), &g.element(y)))?;
            if core::mem::replace(&mut hit[s], true) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// True iff some non-identity translation maps `a_set` onto itself.
pub fn is_periodic_subset(g: &AbelianGroup, a_set: &[Vec<u64>]) -> Result<bool> {
    let a = g.indices(a_set)?;
    let table = g.table();
    Ok(periodic(&table, &a))
}

fn periodic(table: &[Vec<usize>], a: &BTreeSet<usize>) -> bool {
    (1..table.len()).any(|t| a.iter().all(|&x| a.contains(&table[x][t])))
}

/// A factorization with the identity in both factors.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Factorization {
    pub a: Vec<Vec<u64>>,
    pub b: Vec<Vec<u64>>,
}

/// All factorizations `G = A + B` with `0` in both factors, `1 < |A|,
/// |B| < |G|`, and neither factor periodic. Empty means the group has
/// the Hajos property.
pub fn hajos_search(g: &AbelianGroup) -> Result<Vec<Factorization>> {
    hajos_search_with_budget(g, DEFAULT_HAJOS_BUDGET)
}

pub fn hajos_search_with_budget(g: &AbelianGroup, budget: u64) -> Result<Vec<Factorization>> {
    let n = g.order();
    if n > HAJOS_ORDER_LIMIT {
        return Err(Error::GroupTooLarge { order: n, limit: HAJOS_ORDER_LIMIT });
    }
    let table = g.table();
    let neg: Vec<usize> = (0..n).map(|x| (0..n).find(|&y| table[x][y] == 0).unwrap()).collect();
    let mut search = Hajos { table: &table, neg: &neg, n, steps: 0, budget, found: BTreeSet::new() };
    for r in (2..n).filter(|r| n.is_multiple_of(*r)) {
        let mut a = vec![0usize];
        search.choose_a(&mut a, 1, r)?;
    }
    let to_elems = |s: &[usize]| -> Vec<Vec<u64>> { s.iter().map(|&i| g.element(i)).collect() };
    Ok(search.found.into_iter().map(|(a, b)| Factorization { a: to_elems(&a), b: to_elems(&b) }).collect())
}

struct Hajos<'a> {
    table: &'a [Vec<usize>],
    neg: &'a [usize],
    n: usize,
    steps: u64,
    budget: u64,
    found: BTreeSet<(Vec<usize>, Vec<usize>)>,
}

impl Hajos<'_> {
    fn tick(&mut self) -> Result<()> {
        self.steps += 1;
        if self.steps > self.budget {
            return Err(Error::SearchBudgetExceeded(self.budget));
        }
        Ok(())
    }

    fn choose_a(&mut self, a: &mut Vec<usize>, next: usize, r: usize) -> Result<()> {
        self.tick()?;
        if a.len() == r {
            let set: BTreeSet<usize> = a.iter().copied().collect();
            if periodic(self.table, &set) {
                return Ok(());
            }
            let mut covered = vec![false; self.n];
            for &x in a.iter() {
                covered[x] = true;
            }
            let mut b = vec![0usize];
            return self.tile(a, &mut b, &mut covered);
        }
        // prune: differences of A must stay distinct enough to tile later;
        // the only cheap necessary condition is room for the remaining picks
        for x in next..self.n {
            if self.n - x < r - a.len() {
                break;
            }
            a.push(x);
            self.choose_a(a, x + 1, r)?;
            a.pop();
        }
        Ok(())
    }

    // covers the smallest free element by some translate A + t
    fn tile(&mut self, a: &[usize], b: &mut Vec<usize>, covered: &mut [bool]) -> Result<()> {
        self.tick()?;
        let Some(free) = covered.iter().position(|&c| !c) else {
            let mut bs = b.clone();
            bs.sort_unstable();
            let set: BTreeSet<usize> = bs.iter().copied().collect();
            if !periodic(self.table, &set) {
                self.found.insert((a.to_vec(), bs));
            }
            return Ok(());
        };
        for &x in a {
            let t = self.table[free][self.neg[x]];
            if b.contains(&t) {
                continue;
            }
            let cells: Vec<usize> = a.iter().map(|&y| self.table[y][t]).collect();
            if cells.iter().any(|&c| covered[c]) {
                continue;
            }
            for &c in &cells {
                covered[c] = true;
            }
            b.push(t);
            self.tile(a, b, covered)?;
            b.pop();
            for &c in &cells {
                covered[c] = false;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn representatives() {
        let inst = RepInstance::new(4, vec![vec![0, 1], vec![2, 3]], vec![vec![0, 2], vec![1, 3]]).unwrap();
        match common_representatives(&inst) {
            RepOutcome::System(x) => assert!(inst.is_common_system(&x)),
            other => panic!("{other:?}"),
        }
        let single = RepInstance::new(3, vec![vec![0], vec![1], vec![2]], vec![vec![2], vec![0], vec![1]]).unwrap();
        assert_eq!(common_representatives(&single), RepOutcome::System(vec![0, 1, 2]));
        let bad = RepInstance::new(2, vec![vec![0, 1]], vec![vec![0], vec![1]]).unwrap();
        match common_representatives(&bad) {
            RepOutcome::Failure(w) => {
                assert!(w.is_valid(&bad));
                assert_eq!((w.blocks.len(), w.contained.len()), (1, 2));
            }
            other => panic!("{other:?}"),
        }
        let swapped = RepInstance::new(2, vec![vec![0], vec![1]], vec![vec![0, 1]]).unwrap();
        match common_representatives(&swapped) {
            RepOutcome::Failure(w) => assert!(w.is_valid(&swapped) && w.side == Side::B),
            other => panic!("{other:?}"),
        }
        assert!(RepInstance::new(2, vec![vec![0]], vec![vec![0, 1]]).is_err());
        assert!(RepInstance::new(2, vec![vec![0, 1], vec![]], vec![vec![0, 1]]).is_err());
    }

    #[test]
    fn long_chain() {
        // U_i = {2i, 2i+1}, B_i = {2i+1, 2i+2 mod 2n}: a single alternating cycle
        let n = 6;
        let u = (0..n).map(|i| vec![2 * i, 2 * i + 1]).collect();
        let b = (0..n).map(|i| vec![2 * i + 1, (2 * i + 2) % (2 * n)]).collect();
        let inst = RepInstance::new(2 * n, u, b).unwrap();
        match common_representatives(&inst) {
            RepOutcome::System(x) => assert!(inst.is_common_system(&x)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn linear_spaces() {
        let r = linear_space_validate(&LinearSpace::near_pencil(4).unwrap());
        assert_eq!((r.points, r.lines, r.equality_case), (4, 4, Some(EqualityCase::NearPencil)));
        let r = linear_space_validate(&LinearSpace::fano());
        assert_eq!(r.equality_case, Some(EqualityCase::ProjectivePlane { k: 3 }));
        let r = linear_space_validate(&LinearSpace::complete(5).unwrap());
        assert_eq!((r.lines, r.bound_holds, r.equality_case), (10, true, None));
        assert_eq!(
            LinearSpace::new(3, vec![vec![0, 1], vec![0, 1, 2]]),
            Err(Error::NotLinearSpace { a: 0, b: 1, count: 2 })
        );
        assert!(matches!(LinearSpace::new(3, vec![vec![0, 1, 2]]), Err(Error::InvalidLineSet(_))));
    }

    fn pt(x: i64, y: i64) -> Point {
        (BigRational::from_integer(x.into()), BigRational::from_integer(y.into()))
    }

    #[test]
    fn ordinary_lines() {
        let tri = [pt(0, 0), pt(3, 0), pt(0, 3)];
        assert_eq!(ordinary_line(&tri).unwrap(), (0, 1));
        let with_centroid = [pt(0, 0), pt(3, 0), pt(0, 3), pt(1, 1)];
        let (i, j) = ordinary_line(&with_centroid).unwrap();
        assert!((0..4).filter(|&k| k != i && k != j).all(|k| !collinear(&with_centroid[i], &with_centroid[j], &with_centroid[k])));
        let line = [pt(0, 0), pt(1, 1), pt(2, 2)];
        assert_eq!(ordinary_line(&line), Err(Error::AllCollinear));
        assert_eq!(ordinary_line(&[pt(0, 0), pt(1, 0), pt(0, 0)]), Err(Error::DuplicatePoint(2)));
        for n in 4..=8 {
            // n - 1 points on the x axis, apex last
            let mut pts: Vec<Point> = (0..n - 1).map(|i| pt(i, 0)).collect();
            pts.push(pt(0, 1));
            let (i, j) = ordinary_line(&pts).unwrap();
            assert_eq!(j, n as usize - 1, "{i}");
        }
    }

    #[test]
    fn fundaments() {
        let nega = PeriodicOddSeq::new(vec![1, -1]).unwrap();
        assert!(fundament_decide(&nega));
        for x in -100..=100 {
            let used = represent(&nega, &BigInt::from(x)).expect("negabinary");
            let sum: BigInt = used.iter().map(|&i| BigInt::from(nega.digit(i)) << (i - 1)).sum();
            assert_eq!(sum, BigInt::from(x));
        }
        let pos = PeriodicOddSeq::new(vec![1, 1]).unwrap();
        assert!(!fundament_decide(&pos));
        let w = fundament_witness(&pos).unwrap();
        assert!(represent(&pos, &w).is_none());
        assert!(represent(&pos, &BigInt::from(-1)).is_none());
        assert!(PeriodicOddSeq::new(vec![2]).is_err());
        assert!(PeriodicOddSeq::new(vec![]).is_err());
    }

    #[test]
    fn moser() {
        let v = moser_debruijn(10);
        assert_eq!(v, [0, 1, 4, 5, 16, 17, 20, 21, 64, 65].map(BigInt::from));
    }

    #[test]
    fn factorizations() {
        let z4 = AbelianGroup::new(vec![4]).unwrap();
        let e = |x: u64| vec![x];
        assert!(is_factorization(&z4, &[e(0), e(1)], &[e(0), e(2)]).unwrap());
        assert!(!is_factorization(&z4, &[e(0), e(1)], &[e(0), e(1)]).unwrap());
        assert!(is_factorization(&z4, &[e(5)], &[e(0)]).is_err());
        assert!(is_periodic_subset(&z4, &z4.elements()).unwrap());
        assert!(!is_periodic_subset(&z4, &[e(0)]).unwrap());
        assert!(is_periodic_subset(&z4, &[e(0), e(2)]).unwrap());
        let z2z3 = AbelianGroup::new(vec![2, 3]).unwrap();
        let h1: Vec<Vec<u64>> = vec![vec![0, 0], vec![1, 0]];
        let h2: Vec<Vec<u64>> = vec![vec![0, 0], vec![0, 1], vec![0, 2]];
        assert!(is_factorization(&z2z3, &h1, &h2).unwrap());
    }

    #[test]
    fn hajos_small() {
        for p in [2, 3, 5, 7, 11, 13] {
            assert!(hajos_search(&AbelianGroup::new(vec![p]).unwrap()).unwrap().is_empty());
        }
        assert!(hajos_search(&AbelianGroup::new(vec![4]).unwrap()).unwrap().is_empty());
        assert!(hajos_search(&AbelianGroup::new(vec![3, 3]).unwrap()).unwrap().is_empty());
        assert_eq!(
            hajos_search(&AbelianGroup::new(vec![73]).unwrap()),
            Err(Error::GroupTooLarge { order: 73, limit: 72 })
        );
        assert_eq!(
            hajos_search_with_budget(&AbelianGroup::new(vec![2, 2, 2, 2]).unwrap(), 10),
            Err(Error::SearchBudgetExceeded(10))
        );
    }
}
