//! Line-oriented text formats. Blank lines and `#` comments are skipped
//! everywhere.
//!
//! | format | header | body lines |
//! |--------|--------|------------|
//! | digraph | `nodes N` | `tail head` |
//! | graph | `nodes N` | `u v` or `u v weight` |
//! | embedding | `embedding N` | `u: a b c` (counterclockwise neighbours), one optional `outer u v` |
//! | orientation | none | `tail head` |
//! | rep sets | `size N` | `U x y ...` or `B x y ...` |
//! | linear space | `points N` | point indices of one line |

use std::fmt::Write as _;
use std::str::FromStr;

use bruijn_core::classics::{LinearSpace, RepInstance};
use bruijn_core::dimers::{Orientation, PlanarEmbedding, UndirectedGraph};
use bruijn_core::eulertours::DirectedMultigraph;
use bruijn_core::BigInt;

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error(transparent)]
    Invalid(#[from] bruijn_core::Error),
}

type Result<T> = std::result::Result<T, FormatError>;

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_num<T: FromStr>(line: usize, tok: &str) -> Result<T> {
    tok.parse().map_err(|_| syntax(line, format!("{tok:?} is not a valid number")))
}

fn header(lines: &mut dyn Iterator<Item = (usize, &str)>, keyword: &str) -> Result<usize> {
    let (no, l) = lines.next().ok_or_else(|| syntax(0, format!("missing `{keyword} N` header")))?;
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        [k, n] if k == keyword => parse_num(no, n),
        _ => Err(syntax(no, format!("expected `{keyword} N`, found {l:?}"))),
    }
}

fn pair(no: usize, l: &str) -> Result<(usize, usize)> {
    match l.split_whitespace().collect::<Vec<_>>()[..] {
        [a, b] => Ok((parse_num(no, a)?, parse_num(no, b)?)),
        _ => Err(syntax(no, format!("expected two node indices, found {l:?}"))),
    }
}

pub fn parse_digraph(text: &str) -> Result<DirectedMultigraph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "nodes")?;
    let arcs = lines.map(|(no, l)| pair(no, l)).collect::<Result<Vec<_>>>()?;
    Ok(DirectedMultigraph::new(n, arcs)?)
}

pub fn write_digraph(g: &DirectedMultigraph) -> String {
    let mut s = format!("nodes {}\n", g.node_count());
    for &(t, h) in g.arcs() {
        let _ = writeln!(s, "{t} {h}");
    }
    s
}

pub fn parse_graph(text: &str) -> Result<UndirectedGraph> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "nodes")?;
    let mut edges = Vec::new();
    for (no, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let w = match toks[..] {
            [_, _] => BigInt::from(1),
            [_, _, w] => parse_num(no, w)?,
            _ => return Err(syntax(no, format!("expected `u v` or `u v weight`, found {l:?}"))),
        };
        edges.push((parse_num(no, toks[0])?, parse_num(no, toks[1])?, w));
    }
    Ok(UndirectedGraph::with_weights(n, edges)?)
}

pub fn write_graph(g: &UndirectedGraph) -> String {
    let mut s = format!("nodes {}\n", g.node_count());
    for (u, v, w) in g.edges() {
        if g.is_unweighted() {
            let _ = writeln!(s, "{u} {v}");
        } else {
            let _ = writeln!(s, "{u} {v} {w}");
        }
    }
    s
}

/// Reads an embedding; the graph is the one its rotation lists describe.
pub fn parse_embedding(text: &str) -> Result<(UndirectedGraph, PlanarEmbedding)> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "embedding")?;
    let mut rotation: Vec<Option<Vec<usize>>> = vec![None; n];
    let mut outer = None;
    for (no, l) in lines {
        if let Some(rest) = l.strip_prefix("outer") {
            if outer.is_some() {
                return Err(syntax(no, "second `outer` line"));
            }
            outer = Some(pair(no, rest)?);
            continue;
        }
        let (node, list) = l.split_once(':').ok_or_else(|| syntax(no, format!("expected `u: neighbours`, found {l:?}")))?;
        let u: usize = parse_num(no, node.trim())?;
        if u >= n {
            return Err(syntax(no, format!("node {u} is outside 0..{n}")));
        }
        if rotation[u].is_some() {
            return Err(syntax(no, format!("node {u} listed twice")));
        }
        rotation[u] = Some(list.split_whitespace().map(|t| parse_num(no, t)).collect::<Result<_>>()?);
    }
    let rotation: Vec<Vec<usize>> = rotation.into_iter().map(Option::unwrap_or_default).collect();
    let mut edges = Vec::new();
    for (u, list) in rotation.iter().enumerate() {
        edges.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
    }
    let g = UndirectedGraph::new(n, &edges)?;
    let emb = PlanarEmbedding::new(&g, rotation, outer)?;
    Ok((g, emb))
}

pub fn write_embedding(emb: &PlanarEmbedding) -> String {
    let mut s = format!("embedding {}\n", emb.rotation().len());
    for (u, list) in emb.rotation().iter().enumerate() {
        let items: Vec<String> = list.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{u}: {}", items.join(" "));
    }
    if let Some((u, v)) = emb.outer_dart() {
        let _ = writeln!(s, "outer {u} {v}");
    }
    s
}

pub fn parse_orientation(text: &str, g: &UndirectedGraph) -> Result<Orientation> {
    let arcs = content_lines(text).map(|(no, l)| pair(no, l)).collect::<Result<Vec<_>>>()?;
    Ok(Orientation::from_arcs(g, &arcs)?)
}

pub fn write_orientation(o: &Orientation) -> String {
    o.arcs().iter().map(|(t, h)| format!("{t} {h}\n")).collect()
}

pub fn parse_rep_sets(text: &str) -> Result<RepInstance> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "size")?;
    let (mut u, mut b) = (Vec::new(), Vec::new());
    for (no, l) in lines {
        let mut toks = l.split_whitespace();
        let target = match toks.next() {
            Some("U") => &mut u,
            Some("B") => &mut b,
            _ => return Err(syntax(no, format!("expected a `U` or `B` block, found {l:?}"))),
        };
        target.push(toks.map(|t| parse_num(no, t)).collect::<Result<Vec<usize>>>()?);
    }
    Ok(RepInstance::new(n, u, b)?)
}

pub fn write_rep_sets(inst: &RepInstance) -> String {
    let mut s = format!("size {}\n", inst.size());
    for (tag, blocks) in [("U", inst.u_blocks()), ("B", inst.b_blocks())] {
        for block in blocks {
            let items: Vec<String> = block.iter().map(ToString::to_string).collect();
            let _ = writeln!(s, "{tag} {}", items.join(" "));
        }
    }
    s
}

pub fn parse_linear_space(text: &str) -> Result<LinearSpace> {
    let mut lines = content_lines(text);
    let n = header(&mut lines, "points")?;
    let lines = lines
        .map(|(no, l)| l.split_whitespace().map(|t| parse_num(no, t)).collect::<Result<Vec<usize>>>())
        .collect::<Result<Vec<_>>>()?;
    Ok(LinearSpace::new(n, lines)?)
}

pub fn write_linear_space(ls: &LinearSpace) -> String {
    let mut s = format!("points {}\n", ls.point_count());
    for line in ls.lines() {
        let items: Vec<String> = line.iter().map(ToString::to_string).collect();
        let _ = writeln!(s, "{}", items.join(" "));
    }
    s
}
