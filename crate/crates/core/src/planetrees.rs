//! Plane rooted trees, binary plane trees and their codes.
//!
//! Heights count edges: a lone root has height 0.

use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactalg::binomial;
use crate::{Error, Result};

/// Largest node count [`enumerate_plane_trees`] accepts.
pub const PLANE_ENUMERATION_LIMIT: usize = 12;
/// Largest node count [`enumerate_binary_trees`] accepts.
pub const BINARY_ENUMERATION_LIMIT: usize = 23;
/// Largest series degree for [`gf_identity_check`].
pub const GF_DEGREE_LIMIT: usize = 64;
/// Largest node count for [`average_height`].
pub const HEIGHT_NODE_LIMIT: usize = 60;

/// A root with an ordered list of subtrees.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct PlaneTree {
    children: Vec<PlaneTree>,
}

impl PlaneTree {
    pub fn leaf() -> Self {
        Self::default()
    }

    pub fn new(children: Vec<PlaneTree>) -> Self {
        Self { children }
    }

    pub fn children(&self) -> &[PlaneTree] {
        &self.children
    }

    pub fn node_count(&self) -> usize {
        1 + self.children.iter().map(PlaneTree::node_count).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        self.children.iter().map(|c| c.height() + 1).max().unwrap_or(0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BinaryPlaneTree {
    Leaf,
    Node(Box<BinaryPlaneTree>, Box<BinaryPlaneTree>),
}

impl BinaryPlaneTree {
    pub fn node(left: BinaryPlaneTree, right: BinaryPlaneTree) -> Self {
        Self::Node(Box::new(left), Box::new(right))
    }

    pub fn node_count(&self) -> usize {
        match self {
            Self::Leaf => 1,
            Self::Node(l, r) => 1 + l.node_count() + r.node_count(),
        }
    }

    pub fn leaf_count(&self) -> usize {
        self.node_count().div_ceil(2)
    }
}

/// Catalan number `C(2m, m) / (m + 1)`.
pub fn catalan(m: u64) -> BigInt {
    binomial(2 * m, m) / BigInt::from(m + 1)
}

/// Plane trees with `n` nodes; zero for `n = 0`.
pub fn count_plane_trees(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::zero();
    }
    catalan(n as u64 - 1)
}

fn forests(m: usize, memo: &mut Vec<Option<Vec<Vec<PlaneTree>>>>) -> Vec<Vec<PlaneTree>> {
    if let Some(f) = &memo[m] {
        return f.clone();
    }
    let mut out = Vec::new();
    if m == 0 {
        out.push(Vec::new());
    }
    for k in 1..=m {
        let firsts: Vec<PlaneTree> = forests(k - 1, memo).into_iter().map(PlaneTree::new).collect();
        let rests = forests(m - k, memo);
        for first in &firsts {
            for rest in &rests {
                let mut f = Vec::with_capacity(rest.len() + 1);
                f.push(first.clone());
                f.extend(rest.iter().cloned());
                out.push(f);
            }
        }
    }
    memo[m] = Some(out.clone());
    out
}

/// Every plane tree with `n` nodes, sorted by UD code.
pub fn enumerate_plane_trees(n: usize) -> Result<Vec<PlaneTree>> {
    if n > PLANE_ENUMERATION_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: PLANE_ENUMERATION_LIMIT as u128 });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let mut memo = vec![None; n];
    let mut trees: Vec<(String, PlaneTree)> = forests(n - 1, &mut memo)
        .into_iter()
        .map(|f| {
            let t = PlaneTree::new(f);
            (ud_encode(&t), t)
        })
        .collect();
    trees.sort();
    Ok(trees.into_iter().map(|(_, t)| t).collect())
}

/// Every binary plane tree with `nodes` nodes (empty for even counts),
/// sorted by KE code.
pub fn enumerate_binary_trees(nodes: usize) -> Result<Vec<BinaryPlaneTree>> {
    if nodes > BINARY_ENUMERATION_LIMIT {
        return Err(Error::TooLarge { size: nodes as u128, limit: BINARY_ENUMERATION_LIMIT as u128 });
    }
    let mut by_size: Vec<Vec<BinaryPlaneTree>> = vec![Vec::new(); nodes + 1];
    for m in 1..=nodes {
        if m == 1 {
            by_size[1].push(BinaryPlaneTree::Leaf);
            continue;
        }
        let mut here = Vec::new();
        for l in 1..m - 1 {
            for left in &by_size[l] {
                for right in &by_size[m - 1 - l] {
                    here.push(BinaryPlaneTree::node(left.clone(), right.clone()));
                }
            }
        }
        by_size[m] = here;
    }
    let mut out: Vec<(String, BinaryPlaneTree)> =
        by_size.pop().unwrap_or_default().into_iter().map(|t| (ke_encode(&t), t)).collect();
    out.sort();
    Ok(out.into_iter().map(|(_, t)| t).collect())
}

pub fn ud_encode(t: &PlaneTree) -> String {
    fn go(t: &PlaneTree, out: &mut String) {
        for c in &t.children {
            out.push('U');
            go(c, out);
            out.push('D');
        }
    }
    let mut s = String::new();
    go(t, &mut s);
    s
}

pub fn ud_decode(code: &str) -> Result<PlaneTree> {
    let bad = |reason: &str| Error::InvalidCode { code: code.into(), reason: reason.into() };
    let mut stack: Vec<Vec<PlaneTree>> = vec![Vec::new()];
    for c in code.chars() {
        match c {
            'U' => stack.push(Vec::new()),
            'D' => {
                if stack.len() == 1 {
                    return Err(bad("a prefix has more D than U"));
                }
                let kids = stack.pop().unwrap();
                stack.last_mut().unwrap().push(PlaneTree::new(kids));
            }
            _ => return Err(bad(&format!("unexpected symbol {c:?}"))),
        }
    }
    if stack.len() != 1 {
        return Err(bad("more U than D"));
    }
    Ok(PlaneTree::new(stack.pop().unwrap()))
}

/// Preorder: internal nodes give `K`, leaves `E`.
pub fn ke_encode(t: &BinaryPlaneTree) -> String {
    fn go(t: &BinaryPlaneTree, out: &mut String) {
        match t {
            BinaryPlaneTree::Leaf => out.push('E'),
            BinaryPlaneTree::Node(l, r) => {
                out.push('K');
                go(l, out);
                go(r, out);
            }
        }
    }
    let mut s = String::new();
    go(t, &mut s);
    s
}

pub fn ke_decode(code: &str) -> Result<BinaryPlaneTree> {
    let bad = |reason: &str| Error::InvalidCode { code: code.into(), reason: reason.into() };
    // need = subtrees still to be read; the code ends exactly when it hits zero
    let mut need = 1usize;
    for (i, c) in code.chars().enumerate() {
        if need == 0 {
            return Err(bad(&format!("trailing symbols from position {i}")));
        }
        match c {
            'K' => need += 1,
            'E' => need -= 1,
            _ => return Err(bad(&format!("unexpected symbol {c:?}"))),
        }
    }
    if need != 0 {
        return Err(bad("code ends before the tree is complete"));
    }
    fn build(s: &[u8], pos: &mut usize) -> BinaryPlaneTree {
        let c = s[*pos];
        *pos += 1;
        if c == b'E' {
            BinaryPlaneTree::Leaf
        } else {
            let l = build(s, pos);
            let r = build(s, pos);
            BinaryPlaneTree::node(l, r)
        }
    }
    Ok(build(code.as_bytes(), &mut 0))
}

/// The grammar bijection: the first subtree's children go left, the
/// remaining siblings go right.
pub fn plane_to_binary(t: &PlaneTree) -> BinaryPlaneTree {
    fn forest(f: &[PlaneTree]) -> BinaryPlaneTree {
        match f.split_first() {
            None => BinaryPlaneTree::Leaf,
            Some((first, rest)) => BinaryPlaneTree::node(forest(&first.children), forest(rest)),
        }
    }
    forest(&t.children)
}

pub fn binary_to_plane(b: &BinaryPlaneTree) -> PlaneTree {
    fn forest(b: &BinaryPlaneTree, out: &mut Vec<PlaneTree>) {
        let mut cur = b;
        while let BinaryPlaneTree::Node(l, r) = cur {
            let mut kids = Vec::new();
            forest(l, &mut kids);
            out.push(PlaneTree::new(kids));
            cur = r;
        }
    }
    let mut kids = Vec::new();
    forest(b, &mut kids);
    PlaneTree::new(kids)
}

/// Outcome of [`gf_identities`], one flag per identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GfReport {
    /// `f = x + f^2`
    pub catalan_square: bool,
    /// `f = (1 - sqrt(1 - 4x)) / 2`
    pub closed_form: bool,
    /// `g = x + x g^2`
    pub binary_square: bool,
    /// `x g(x) = f(x^2)`
    pub substitution: bool,
}

impl GfReport {
    pub fn all(&self) -> bool {
        self.catalan_square && self.closed_form && self.binary_square && self.substitution
    }
}

fn series_mul(a: &[BigInt], b: &[BigInt], n: usize) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n + 1];
    for (i, x) in a.iter().enumerate().take(n + 1) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n + 1 - i) {
            c[i + j] += x * y;
        }
    }
    c
}

/// Coefficients `g_0 ..= g_n` of the binary tree series, counted as KE
/// words: lattice paths tracking how many subtrees are still owed.
pub fn binary_tree_counts(n: usize) -> Vec<BigInt> {
    let mut g = vec![BigInt::zero(); n + 1];
    // ways[d] = prefixes of the current length owing d subtrees (d >= 1)
    let mut ways = vec![BigInt::zero(); n + 2];
    ways[1] = BigInt::one();
    for len in 1..=n {
        let mut next = vec![BigInt::zero(); n + 2];
        for d in 1..=n {
            if ways[d].is_zero() {
                continue;
            }
            next[d + 1] += &ways[d];
            next[d - 1] += &ways[d];
        }
        g[len] = core::mem::take(&mut next[0]);
        ways = next;
    }
    g
}

/// Checks the four generating-function identities through degree `n`.
/// `f` takes its coefficients from [`count_plane_trees`], `g` from
/// [`binary_tree_counts`].
pub fn gf_identities(n: usize) -> Result<GfReport> {
    if n > GF_DEGREE_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: GF_DEGREE_LIMIT as u128 });
    }
    let f: Vec<BigInt> = (0..=n).map(count_plane_trees).collect();
    let g = binary_tree_counts(n);
    let x = |k: usize| BigInt::from(u8::from(k == 1));

    let f2 = series_mul(&f, &f, n);
    let catalan_square = (0..=n).all(|k| f[k] == x(k) + &f2[k]);

    // sqrt(1 - 4x) = sum_k binom(1/2, k) (-4)^k x^k
    let mut closed_form = true;
    let mut coeff = BigRational::one();
    for k in 0..=n {
        if k > 0 {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            let kk = BigRational::from_integer(BigInt::from(k));
            coeff = coeff * (half - (&kk - BigRational::one())) / kk * BigRational::from_integer(BigInt::from(-4));
        }
        let rhs = (BigRational::from_integer(BigInt::from(u8::from(k == 0))) - &coeff) / BigRational::from_integer(BigInt::from(2));
        if rhs != BigRational::from_integer(f[k].clone()) {
            closed_form = false;
        }
    }

    let g2 = series_mul(&g, &g, n);
    let binary_square = (0..=n).all(|k| g[k] == x(k) + if k > 0 { g2[k - 1].clone() } else { BigInt::zero() });

    let substitution = (0..=n).all(|k| {
        let lhs = if k > 0 { g[k - 1].clone() } else { BigInt::zero() };
        let rhs = if k % 2 == 0 { count_plane_trees(k / 2) } else { BigInt::zero() };
        lhs == rhs
    });

    Ok(GfReport { catalan_square, closed_form, binary_square, substitution })
}

pub fn gf_identity_check(n: usize) -> Result<bool> {
    gf_identities(n).map(|r| r.all())
}

/// Mean height of the plane trees with `n` nodes. `at_most[h][m]` counts
/// trees of height at most `h` with `m` nodes; a tree fits height `h` iff
/// its child forest fits `h - 1`.
pub fn average_height(n: usize) -> Result<BigRational> {
    if n > HEIGHT_NODE_LIMIT {
        return Err(Error::TooLarge { size: n as u128, limit: HEIGHT_NODE_LIMIT as u128 });
    }
    if n == 0 {
        return Err(Error::InvalidParameter("a tree needs at least one node".into()));
    }
    let total = count_plane_trees(n);
    let mut trees = vec![BigInt::zero(); n + 1];
    trees[1] = BigInt::one();
    let mut excess = BigInt::zero();
    for _h in 0..n {
        excess += &total - &trees[n];
        // forests of trees of height <= h, then trees of height <= h + 1
        let mut forest = vec![BigInt::zero(); n];
        forest[0] = BigInt::one();
        for m in 1..n {
            let mut s = BigInt::zero();
            for k in 1..=m {
                s += &trees[k] * &forest[m - k];
            }
            forest[m] = s;
        }
        let mut next = vec![BigInt::zero(); n + 1];
        next[1..=n].clone_from_slice(&forest);
        trees = next;
    }
    debug_assert!(!excess.is_negative());
    Ok(BigRational::new(excess, total))
}

/// Mean height by listing every tree; `n` up to [`PLANE_ENUMERATION_LIMIT`].
pub fn average_height_bruteforce(n: usize) -> Result<BigRational> {
    let trees = enumerate_plane_trees(n)?;
    if trees.is_empty() {
        return Err(Error::InvalidParameter("a tree needs at least one node".into()));
    }
    let sum: usize = trees.iter().map(PlaneTree::height).sum();
    Ok(BigRational::new(BigInt::from(sum), BigInt::from(trees.len())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_counts() {
        let c: Vec<BigInt> = (0..7).map(count_plane_trees).collect();
        assert_eq!(c, [0, 1, 1, 2, 5, 14, 42].map(BigInt::from));
        for n in 1..=10 {
            assert_eq!(BigInt::from(enumerate_plane_trees(n).unwrap().len()), count_plane_trees(n));
        }
        assert!(enumerate_plane_trees(13).is_err());
    }

    #[test]
    fn codes() {
        assert_eq!(ud_encode(&PlaneTree::leaf()), "");
        let three: Vec<String> = enumerate_plane_trees(3).unwrap().iter().map(ud_encode).collect();
        assert_eq!(three, ["UDUD", "UUDD"]);
        assert_eq!(ke_encode(&BinaryPlaneTree::Leaf), "E");
        let five: Vec<String> = enumerate_binary_trees(5).unwrap().iter().map(ke_encode).collect();
        assert_eq!(five, ["KEKEE", "KKEEE"]);
        for bad in ["DU", "UUD", "UXD"] {
            assert!(ud_decode(bad).is_err());
        }
        for bad in ["", "EE", "KE", "KEEE", "KEX"] {
            assert!(ke_decode(bad).is_err());
        }
    }

    #[test]
    fn bijection_examples() {
        assert_eq!(plane_to_binary(&PlaneTree::leaf()), BinaryPlaneTree::Leaf);
        let path = ud_decode("UUDD").unwrap();
        assert_eq!(ke_encode(&plane_to_binary(&path)), "KKEEE");
        for n in 1..=8 {
            for t in enumerate_plane_trees(n).unwrap() {
                let b = plane_to_binary(&t);
                assert_eq!(b.node_count(), 2 * n - 1);
                let ke = ke_encode(&b);
                let abbreviated: String =
                    ke[..ke.len() - 1].chars().map(|c| if c == 'K' { 'U' } else { 'D' }).collect();
                assert_eq!(abbreviated, ud_encode(&t));
                assert_eq!(binary_to_plane(&b), t);
            }
        }
    }

    #[test]
    fn series() {
        let r = gf_identities(40).unwrap();
        assert!(r.all(), "{r:?}");
        let g = binary_tree_counts(15);
        assert_eq!(g[..8], [0, 1, 0, 1, 0, 2, 0, 5].map(BigInt::from));
        assert!(gf_identity_check(65).is_err());
    }

    #[test]
    fn heights() {
        assert!(average_height(1).unwrap().is_zero());
        assert_eq!(average_height(3).unwrap(), BigRational::new(3.into(), 2.into()));
        for n in 1..=11 {
            assert_eq!(average_height(n).unwrap(), average_height_bruteforce(n).unwrap(), "n = {n}");
        }
        assert!(average_height(61).is_err());
    }
}
