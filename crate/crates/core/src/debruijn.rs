//! De Bruijn graphs and cycles.
//!
//! Words over a `k`-letter alphabet are stored as base-`k` integers, most
//! significant letter first. In the graph of order `n` the nodes are the
//! words of length `n - 1` and arc `w` (a word of length `n`) runs from its
//! prefix `w / k` to its suffix `w mod k^(n-1)`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use num_bigint::BigInt;

use crate::eulertours::{euler_circuit, DirectedMultigraph};
use crate::exactalg::pow_big;
use crate::{Error, Result};

/// Default cap on the arc count `k^n` of a generated graph.
pub const DEFAULT_ARC_CAP: u64 = 1 << 24;

/// Largest order the binary enumeration oracle accepts by default; order 5
/// works but takes noticeably longer.
pub const DEFAULT_ENUMERATION_LIMIT: u32 = 4;

/// Largest order accepted by [`count_pn_cycles`]; the count for order 25
/// already has about 16 million bits.
pub const COUNT_ORDER_LIMIT: u32 = 24;

const DIGITS: &[u8; 36] = b"0123456789abcdefghijklmnopqrstuvwxyz";

/// The De Bruijn graph on `alphabet_size` letters and of order `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DeBruijnGraph {
    alphabet_size: u32,
    order: u32,
    graph: DirectedMultigraph,
}

impl DeBruijnGraph {
    pub fn alphabet_size(&self) -> u32 {
        self.alphabet_size
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn graph(&self) -> &DirectedMultigraph {
        &self.graph
    }

    pub fn into_graph(self) -> DirectedMultigraph {
        self.graph
    }

    /// Letters of node `v` (a word of length `order - 1`).
    pub fn node_word(&self, v: usize) -> Vec<u8> {
        spell(v as u64, self.alphabet_size, self.order as usize - 1)
    }

    /// Letters of arc `a` (a word of length `order`).
    pub fn arc_word(&self, a: usize) -> Vec<u8> {
        spell(a as u64, self.alphabet_size, self.order as usize)
    }
}

fn spell(mut value: u64, k: u32, len: usize) -> Vec<u8> {
    let mut out = vec![0u8; len];
    for slot in out.iter_mut().rev() {
        *slot = (value % u64::from(k)) as u8;
        value /= u64::from(k);
    }
    out
}

fn checked_power(k: u32, n: u32, cap: u64) -> Result<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = match acc.checked_mul(u64::from(k)) {
            Some(x) if x <= cap => x,
            _ => {
                let size = u128::from(k).checked_pow(n).unwrap_or(u128::MAX);
                return Err(Error::TooLarge { size, limit: u128::from(cap) });
            }
        };
    }
    Ok(acc)
}

fn check_parameters(k: u32, n: u32) -> Result<()> {
    if !(2..=36).contains(&k) {
        return Err(Error::InvalidParameter(format!("alphabet size {k} is not in 2..=36")));
    }
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("order must be at least 1")));
    }
    Ok(())
}

/// Builds the De Bruijn graph, refusing graphs with more than
/// [`DEFAULT_ARC_CAP`] arcs.
pub fn build_graph(alphabet_size: u32, n: u32) -> Result<DeBruijnGraph> {
    build_graph_capped(alphabet_size, n, DEFAULT_ARC_CAP)
}

pub fn build_graph_capped(alphabet_size: u32, n: u32, arc_cap: u64) -> Result<DeBruijnGraph> {
    check_parameters(alphabet_size, n)?;
    let arcs = checked_power(alphabet_size, n, arc_cap)?;
    let k = u64::from(alphabet_size);
    let nodes = arcs / k;
    let arc_list = (0..arcs).map(|w| ((w / k) as usize, (w % nodes) as usize)).collect();
    let graph = DirectedMultigraph::new(nodes as usize, arc_list)?;
    Ok(DeBruijnGraph { alphabet_size, order: n, graph })
}

/// Nodes are the arcs of `g`; there is one arc `e -> f` for every pair with
/// `head(e) = tail(f)`.
pub fn line_graph(g: &DirectedMultigraph) -> DirectedMultigraph {
    let out = g.out_arcs();
    let mut arcs = Vec::new();
    for (e, &(_, h)) in g.arcs().iter().enumerate() {
        for &f in &out[h] {
            arcs.push((e, f));
        }
    }
    DirectedMultigraph::new(g.arc_count(), arcs).expect("line graph endpoints are arc indices")
}

/// Checks that relabelling each node of `L(G_n)` (an `n`-word) by itself
/// gives exactly `G_{n+1}`, arc multiset included.
///
/// Returns the node map (identity on word values) when it is an isomorphism.
pub fn line_graph_isomorphism(alphabet_size: u32, n: u32) -> Result<Option<Vec<usize>>> {
    let g = build_graph(alphabet_size, n)?;
    let next = build_graph(alphabet_size, n + 1)?;
    let lg = line_graph(g.graph());
    if lg.node_count() != next.graph().node_count() || lg.arc_count() != next.graph().arc_count() {
        return Ok(None);
    }
    let map: Vec<usize> = (0..lg.node_count()).collect();
    let mut mapped: Vec<(usize, usize)> = lg.arcs().iter().map(|&(a, b)| (map[a], map[b])).collect();
    let mut target = next.graph().arcs().to_vec();
    mapped.sort_unstable();
    target.sort_unstable();
    Ok((mapped == target).then_some(map))
}

/// A word read cyclically. Equality and ordering ignore rotation.
#[derive(Clone, Debug)]
pub struct CyclicWord {
    symbols: Vec<u8>,
}

impl CyclicWord {
    pub fn new(symbols: Vec<u8>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::InvalidParameter(String::from("cyclic word must be nonempty")));
        }
        if let Some(&s) = symbols.iter().find(|&&s| s >= 36) {
            return Err(Error::InvalidParameter(format!("symbol {s} is outside the 36-letter alphabet")));
        }
        Ok(Self { symbols })
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    /// Start index of the lexicographically least rotation.
    pub fn least_rotation(&self) -> usize {
        let s = &self.symbols;
        let n = s.len();
        let (mut i, mut j, mut k) = (0usize, 1usize, 0usize);
        while i < n && j < n && k < n {
            let (a, b) = (s[(i + k) % n], s[(j + k) % n]);
            if a == b {
                k += 1;
                continue;
            }
            if a > b {
                i += k + 1;
            } else {
                j += k + 1;
            }
            if i == j {
                j += 1;
            }
            k = 0;
        }
        i.min(j)
    }

    /// The same cycle written from its least rotation.
    pub fn canonical(&self) -> CyclicWord {
        let r = self.least_rotation();
        let mut symbols = self.symbols[r..].to_vec();
        symbols.extend_from_slice(&self.symbols[..r]);
        CyclicWord { symbols }
    }
}

impl PartialEq for CyclicWord {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.canonical().symbols == other.canonical().symbols
    }
}

impl Eq for CyclicWord {}

impl Ord for CyclicWord {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical().symbols.cmp(&other.canonical().symbols)
    }
}

impl PartialOrd for CyclicWord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl FromStr for CyclicWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .map(|c| match c.to_digit(36) {
                Some(d) => Ok(d as u8),
                None => Err(Error::InvalidParameter(format!("{c:?} is not a letter 0-9 or a-z"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        CyclicWord::new(symbols)
    }
}

impl fmt::Display for CyclicWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &s in &self.symbols {
            write!(f, "{}", DIGITS[s as usize] as char)?;
        }
        Ok(())
    }
}

/// True iff `w` has length `k^n` and each `n`-letter word occurs exactly
/// once among its cyclic factors.
pub fn is_pn_cycle(w: &CyclicWord, n: u32, alphabet_size: u32) -> bool {
    if check_parameters(alphabet_size, n).is_err() {
        return false;
    }
    let Ok(len) = checked_power(alphabet_size, n, DEFAULT_ARC_CAP) else {
        return false;
    };
    let s = w.symbols();
    if s.len() as u64 != len || s.iter().any(|&c| u32::from(c) >= alphabet_size) {
        return false;
    }
    let k = u64::from(alphabet_size);
    let len = len as usize;
    let mut seen = vec![false; len];
    let mut window = 0u64;
    for &c in &s[len - n as usize + 1..] {
        window = window * k + u64::from(c);
    }
    for &c in s {
        window = (window * k + u64::from(c)) % len as u64;
        if core::mem::replace(&mut seen[window as usize], true) {
            return false;
        }
    }
    true
}

/// Number of binary cycles of order `n`: `2^(2^(n-1) - n)`.
pub fn count_pn_cycles(n: u32) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("order must be at least 1")));
    }
    if n > COUNT_ORDER_LIMIT {
        return Err(Error::TooLarge { size: u128::from(n), limit: u128::from(COUNT_ORDER_LIMIT) });
    }
    Ok(pow_big(2, (1u64 << (n - 1)) - u64::from(n)))
}

/// One cycle of order `n`, read off an Euler circuit of the graph and
/// returned in canonical rotation.
pub fn generate_pn_cycle(n: u32, alphabet_size: u32) -> Result<CyclicWord> {
    let g = build_graph(alphabet_size, n)?;
    let tour = euler_circuit(g.graph())?;
    let k = alphabet_size as usize;
    let symbols = tour.arcs.iter().map(|&a| (a % k) as u8).collect();
    Ok(CyclicWord { symbols }.canonical())
}

/// All binary cycles of order `n`, canonical and sorted.
pub fn enumerate_pn_cycles(n: u32) -> Result<Vec<CyclicWord>> {
    enumerate_pn_cycles_with_limit(n, DEFAULT_ENUMERATION_LIMIT)
}

/// Every binary cycle contains `0^n` once; fixing it at the front gives the
/// least rotation, so the search needs no deduplication.
pub fn enumerate_pn_cycles_with_limit(n: u32, limit: u32) -> Result<Vec<CyclicWord>> {
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("order must be at least 1")));
    }
    if n > limit {
        return Err(Error::TooLarge { size: u128::from(n), limit: u128::from(limit) });
    }
    let len = 1usize << n;
    let mask = len - 1;
    let mut word = vec![0u8; n as usize];
    let mut seen = vec![false; len];
    seen[0] = true;
    let mut found = Vec::new();
    extend_cycle(n as usize, len, mask, &mut word, &mut seen, 0, &mut found);
    found.sort();
    Ok(found)
}

fn extend_cycle(
    n: usize,
    len: usize,
    mask: usize,
    word: &mut Vec<u8>,
    seen: &mut [bool],
    window: usize,
    found: &mut Vec<CyclicWord>,
) {
    if word.len() == len {
        // the last n - 1 windows wrap around the end
        let mut w = window;
        let mut fresh = Vec::new();
        let mut ok = true;
        for &c in &word[..n - 1] {
            w = ((w << 1) | c as usize) & mask;
            if seen[w] || fresh.contains(&w) {
                ok = false;
                break;
            }
            fresh.push(w);
        }
        if ok {
            found.push(CyclicWord { symbols: word[n - 1..].iter().chain(&word[..n - 1]).copied().collect() });
        }
        return;
    }
    for bit in 0..2u8 {
        let w = ((window << 1) | bit as usize) & mask;
        if !seen[w] {
            seen[w] = true;
            word.push(bit);
            extend_cycle(n, len, mask, word, seen, w, found);
            word.pop();
            seen[w] = false;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> CyclicWord {
        s.parse().unwrap()
    }

    #[test]
    fn graph_shapes() {
        let g = build_graph(2, 1).unwrap();
        assert_eq!(g.graph().node_count(), 1);
        assert_eq!(g.graph().arcs(), &[(0, 0), (0, 0)]);
        let g = build_graph(2, 3).unwrap();
        assert_eq!((g.graph().node_count(), g.graph().arc_count()), (4, 8));
        for v in 0..4 {
            assert_eq!(g.graph().out_degree(v), 2);
            assert_eq!(g.graph().in_degree(v), 2);
        }
        let g = build_graph(3, 2).unwrap();
        assert_eq!((g.graph().node_count(), g.graph().arc_count()), (3, 9));
        assert_eq!(g.arc_word(5), [1, 2]);
        assert_eq!(g.node_word(2), [2]);
        assert!(matches!(build_graph_capped(2, 10, 512), Err(Error::TooLarge { .. })));
        assert!(build_graph(1, 3).is_err());
        assert!(build_graph(2, 0).is_err());
    }

    #[test]
    fn arcs_join_prefix_to_suffix() {
        let g = build_graph(3, 3).unwrap();
        for (a, &(t, h)) in g.graph().arcs().iter().enumerate() {
            let word = g.arc_word(a);
            assert_eq!(g.node_word(t), word[..2]);
            assert_eq!(g.node_word(h), word[1..]);
        }
    }

    #[test]
    fn line_graph_examples() {
        let single = DirectedMultigraph::new(2, vec![(0, 1)]).unwrap();
        let l = line_graph(&single);
        assert_eq!((l.node_count(), l.arc_count()), (1, 0));
        let two = DirectedMultigraph::new(2, vec![(0, 1), (1, 0)]).unwrap();
        assert_eq!(line_graph(&two).arcs(), &[(0, 1), (1, 0)]);
        for n in 1..=4 {
            assert!(line_graph_isomorphism(2, n).unwrap().is_some());
        }
        assert!(line_graph_isomorphism(3, 2).unwrap().is_some());
    }

    #[test]
    fn recognition() {
        assert!(is_pn_cycle(&w("00010111"), 3, 2));
        assert!(is_pn_cycle(&w("0011"), 2, 2));
        assert!(is_pn_cycle(&w("1001"), 2, 2));
        assert!(!is_pn_cycle(&w("0101"), 2, 2));
        assert!(is_pn_cycle(&w("01"), 1, 2));
        assert!(!is_pn_cycle(&w("0012"), 2, 2));
        assert!(!is_pn_cycle(&w("000111"), 2, 2));
    }

    #[test]
    fn rotation_equality() {
        assert_eq!(w("10001011"), w("00010111"));
        assert_ne!(w("10110001"), w("00010111"));
        assert_ne!(w("0011"), w("0101"));
        assert_eq!(w("1100").canonical().to_string(), "0011");
        assert_eq!(w("0").canonical().to_string(), "0");
        assert_eq!(w("abab").least_rotation() % 2, 0);
    }

    #[test]
    fn closed_form() {
        let expected = [1u32, 1, 2, 16, 2048];
        for (n, &e) in (1..=5).zip(&expected) {
            assert_eq!(count_pn_cycles(n).unwrap(), BigInt::from(e));
        }
        assert!(count_pn_cycles(0).is_err());
        assert!(count_pn_cycles(25).is_err());
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_pn_cycles(1).unwrap(), [w("01")]);
        assert_eq!(enumerate_pn_cycles(2).unwrap(), [w("0011")]);
        let three = enumerate_pn_cycles(3).unwrap();
        assert_eq!(three.len(), 2);
        assert!(three.contains(&w("00010111")));
        assert_eq!(enumerate_pn_cycles(4).unwrap().len(), 16);
        assert!(matches!(enumerate_pn_cycles(5), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn generation() {
        assert_eq!(generate_pn_cycle(1, 2).unwrap().to_string(), "01");
        for (n, k) in [(2, 2), (3, 2), (2, 3), (3, 3), (6, 2), (4, 5)] {
            let c = generate_pn_cycle(n, k).unwrap();
            assert!(is_pn_cycle(&c, n, k), "order {n} alphabet {k}: {c}");
        }
        assert_eq!(generate_pn_cycle(2, 3).unwrap().len(), 9);
    }
}
