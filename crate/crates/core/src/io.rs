//! Text formats.
//!
//! Graphs: `c` comment lines, a header `p tw <n> <m>`, then `m` lines `u v`
//! with 1-indexed endpoints. An optional rotation block follows, one line
//! `r v w1 w2 ... wk` per vertex listing its neighbours clockwise. A
//! neighbour joined by several parallel edges is written `w#j`, meaning the
//! `j`-th edge line (1-indexed, in file order) between `v` and `w`; the tag
//! is required whenever there are several such lines. Without a rotation
//! block a planar embedding is computed, one with all vertices on a face
//! when the graph is outer-planar.
//!
//! Decompositions: `s td <N> <max bag size> <n>`, then `b i v1 ... vk` for
//! `i = 1..N` in order, optionally followed by path edges `i i+1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::embed::{embed, embed_outerplanar};
use crate::error::{Error, Result};
use crate::path_decomp::PathDecomposition;
use crate::planar::{key, DartId, EmbeddedMultigraph, VertexId};

fn perr(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Meaningful lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let t: Vec<&str> = l.split_whitespace().collect();
        if t.is_empty() || t[0] == "c" {
            None
        } else {
            Some((i + 1, t))
        }
    })
}

fn num(line: usize, tok: &str) -> Result<usize> {
    tok.parse().map_err(|_| perr(line, format!("expected a number, got `{tok}`")))
}

fn vertex(line: usize, tok: &str, n: usize) -> Result<usize> {
    let v = num(line, tok)?;
    if v == 0 || v > n {
        return Err(perr(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

pub fn parse_graph(text: &str) -> Result<EmbeddedMultigraph> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| perr(0, "missing `p tw n m` header"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "tw" {
        return Err(perr(hl, "expected `p tw n m`"));
    }
    let n = num(hl, header[2])?;
    let m = num(hl, header[3])?;
    let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
    let mut rot_lines: BTreeMap<usize, (usize, Vec<&str>)> = BTreeMap::new();
    for (ln, t) in it {
        if t[0] == "r" {
            if t.len() < 2 {
                return Err(perr(ln, "rotation line without a vertex"));
            }
            let v = vertex(ln, t[1], n)?;
            if rot_lines.insert(v, (ln, t[2..].to_vec())).is_some() {
                return Err(perr(ln, format!("second rotation for vertex {}", v + 1)));
            }
            continue;
        }
        if !rot_lines.is_empty() {
            return Err(perr(ln, "edge line after the rotation block"));
        }
        if t.len() != 2 {
            return Err(perr(ln, "expected an edge `u v`"));
        }
        let (a, b) = (vertex(ln, t[0], n)?, vertex(ln, t[1], n)?);
        if a == b {
            return Err(Error::Loop(VertexId(a)));
        }
        edges.push((VertexId(a), VertexId(b)));
    }
    if edges.len() != m {
        return Err(perr(hl, format!("header announces {m} edges, found {}", edges.len())));
    }
    if rot_lines.is_empty() {
        return match embed_outerplanar(n, &edges) {
            Err(Error::NotOuterPlanar) => embed(n, &edges),
            other => other,
        };
    }
    // copies[{a, b}] = edge indices in file order
    let mut copies: BTreeMap<(VertexId, VertexId), Vec<usize>> = BTreeMap::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        copies.entry(key(a, b)).or_default().push(k);
    }
    let dart = |k: usize, from: usize| -> DartId {
        if edges[k].0 .0 == from {
            DartId(2 * k)
        } else {
            DartId(2 * k + 1)
        }
    };
    let mut rotation = vec![Vec::new(); n];
    for (&v, (ln, toks)) in &rot_lines {
        let ln = *ln;
        let mut slots = Vec::with_capacity(toks.len());
        for tok in toks {
            let (w, j) = match tok.split_once('#') {
                Some((w, j)) => (vertex(ln, w, n)?, Some(num(ln, j)?)),
                None => (vertex(ln, tok, n)?, None),
            };
            let list = copies
                .get(&key(VertexId(v), VertexId(w)))
                .ok_or_else(|| perr(ln, format!("no edge between {} and {}", v + 1, w + 1)))?;
            let k = match j {
                Some(j) => *list
                    .get(j.wrapping_sub(1))
                    .ok_or_else(|| perr(ln, format!("edge {}-{} has no copy {j}", v + 1, w + 1)))?,
                None if list.len() == 1 => list[0],
                None => return Err(perr(ln, format!("parallel edges {}-{} need `#j` tags", v + 1, w + 1))),
            };
            slots.push(dart(k, v));
        }
        rotation[v] = slots;
    }
    let g = EmbeddedMultigraph::from_parts(n, &edges, &rotation)
        .map_err(|e| perr(0, format!("rotation block: {e}")))?;
    if !g.is_planar_embedding() {
        return Err(Error::NonPlanar);
    }
    Ok(g)
}

/// Writes `g` with its rotation block. Edges are listed in dart order and
/// each rotation starts at the vertex's least dart, so parsing the output
/// gives back the same embedding. Deleted vertices are skipped and the
/// survivors renumbered in order.
pub fn emit_graph(g: &EmbeddedMultigraph) -> String {
    let mut g = g.clone();
    g.compact();
    let mut id = vec![0; g.vertex_bound()];
    for (i, v) in g.vertices().enumerate() {
        id[v.0] = i + 1;
    }
    let edges = g.edges();
    let mut copy_no: BTreeMap<usize, usize> = BTreeMap::new();
    let mut seen: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        let c = seen.entry(key(a, b)).or_default();
        *c += 1;
        copy_no.insert(k, *c);
    }
    let mut out = String::new();
    writeln!(out, "p tw {} {}", g.vertex_count(), edges.len()).unwrap();
    for &(a, b) in &edges {
        writeln!(out, "{} {}", id[a.0], id[b.0]).unwrap();
    }
    for v in g.vertices() {
        let mut rot = g.rotation(v);
        if let Some(s) = rot.iter().enumerate().min_by_key(|(_, d)| **d).map(|(i, _)| i) {
            rot.rotate_left(s);
        }
        write!(out, "r {}", id[v.0]).unwrap();
        for d in rot {
            let w = g.target(d);
            if g.multiplicity(v, w) > 1 {
                write!(out, " {}#{}", id[w.0], copy_no[&d.edge()]).unwrap();
            } else {
                write!(out, " {}", id[w.0]).unwrap();
            }
        }
        out.push('\n');
    }
    out
}

pub fn parse_decomposition(text: &str) -> Result<PathDecomposition> {
    let mut it = lines(text);
    let (hl, header) = it.next().ok_or_else(|| perr(0, "missing `s td N w n` header"))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(perr(hl, "expected `s td N w n`"));
    }
    let count = num(hl, header[2])?;
    let max_bag = num(hl, header[3])?;
    let n = num(hl, header[4])?;
    let mut bags: Vec<Vec<VertexId>> = Vec::with_capacity(count);
    for (ln, t) in it {
        if t[0] == "b" {
            if t.len() < 2 {
                return Err(perr(ln, "bag line without an index"));
            }
            let i = num(ln, t[1])?;
            if i != bags.len() + 1 {
                return Err(perr(ln, format!("bag {i} out of sequence, expected {}", bags.len() + 1)));
            }
            let mut bag = Vec::with_capacity(t.len() - 2);
            for tok in &t[2..] {
                bag.push(VertexId(vertex(ln, tok, n)?));
            }
            bags.push(bag);
            continue;
        }
        if t.len() != 2 {
            return Err(perr(ln, "expected a bag line or a path edge `i j`"));
        }
        let (i, j) = (num(ln, t[0])?, num(ln, t[1])?);
        if i.abs_diff(j) != 1 || i.min(j) == 0 || i.max(j) > count {
            return Err(perr(ln, format!("edge {i}-{j} does not join consecutive bags")));
        }
    }
    if bags.len() != count {
        return Err(perr(hl, format!("header announces {count} bags, found {}", bags.len())));
    }
    let actual = bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual != max_bag {
        return Err(perr(hl, format!("header announces bag size {max_bag}, largest bag has {actual}")));
    }
    PathDecomposition::new(bags)
}

/// Writes `p` for a graph on `n` vertices, with path edges.
pub fn emit_decomposition(p: &PathDecomposition, n: usize) -> String {
    let max_bag = p.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = String::new();
    writeln!(out, "s td {} {} {}", p.len(), max_bag, n).unwrap();
    for (i, bag) in p.bags().iter().enumerate() {
        write!(out, "b {}", i + 1).unwrap();
        for v in bag {
            write!(out, " {}", v.0 + 1).unwrap();
        }
        out.push('\n');
    }
    for i in 1..p.len() {
        writeln!(out, "{} {}", i, i + 1).unwrap();
    }
    out
}
