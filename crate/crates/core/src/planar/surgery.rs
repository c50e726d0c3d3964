//! Embedding mutations: flipping and reordering cut-components of a cutting
//! pair, trading a multi-edge copy for an edge between two components, and
//! edge contraction.

use super::{cut_components, CutComponents, DartId, EmbeddedMultigraph, VertexId};
use crate::error::{Error, Result};

/// End of a component's run of darts at the second separator vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RunEnd {
    First,
    Last,
}

fn pair_components(g: &EmbeddedMultigraph, u: VertexId, v: VertexId) -> Result<CutComponents> {
    if g.multiplicity(u, v) < 2 {
        return Err(Error::InvalidArgument(format!("({u}, {v}) is not a multi-edge")));
    }
    let cc = cut_components(g, &[u, v]);
    if !cc.alternates {
        return Err(Error::NotMultiTriangulated);
    }
    Ok(cc)
}

/// Rewrites the rotation at `s` so that the cyclically contiguous block
/// holding `block` is replaced by `replacement` (same length).
fn rewrite_block(g: &mut EmbeddedMultigraph, s: VertexId, block: &[DartId], replacement: &[DartId]) {
    debug_assert_eq!(block.len(), replacement.len());
    let mut rot = g.rotation(s);
    let n = rot.len();
    let pos = rot.iter().position(|&d| d == block[0]).expect("run dart not at separator");
    for (k, &d) in replacement.iter().enumerate() {
        debug_assert_eq!(rot[(pos + k) % n], block[k]);
        rot[(pos + k) % n] = d;
    }
    g.set_rotation(s, &rot);
}

/// Mirrors cut-component `index` of the cutting pair `{u, v}` inside its
/// lens: the rotations of its interior are reversed and so are its runs at
/// `u` and `v`. The abstract graph is unchanged.
pub fn reverse_component(g: &mut EmbeddedMultigraph, u: VertexId, v: VertexId, index: usize) -> Result<()> {
    let cc = pair_components(g, u, v)?;
    let comp = cc
        .components
        .get(index)
        .ok_or_else(|| Error::InvalidArgument(format!("no cut-component {index}")))?;
    for &w in &comp.interior {
        let mut r = g.rotation(w);
        r.reverse();
        g.set_rotation(w, &r);
    }
    for (si, &s) in cc.separator.iter().enumerate() {
        let run = &comp.runs[si];
        let rev: Vec<DartId> = run.iter().rev().copied().collect();
        rewrite_block(g, s, run, &rev);
    }
    Ok(())
}

/// Exchanges the lenses occupied by cut-components `i` and `j` of `{u, v}`.
pub fn swap_components(g: &mut EmbeddedMultigraph, u: VertexId, v: VertexId, i: usize, j: usize) -> Result<()> {
    let cc = pair_components(g, u, v)?;
    if i >= cc.len() || j >= cc.len() {
        return Err(Error::InvalidArgument(format!("no cut-component {}", i.max(j))));
    }
    if i == j {
        return Ok(());
    }
    for (si, &s) in cc.separator.iter().enumerate() {
        let sep: Vec<VertexId> = cc.separator.clone();
        let rot = g.rotation(s);
        let n = rot.len();
        let start = rot.iter().position(|&d| sep.contains(&g.target(d))).expect("no copy at separator");
        // Segments in clockwise order starting with a copy of (u, v).
        let mut out = Vec::with_capacity(n);
        let run_i = &cc.components[i].runs[si];
        let run_j = &cc.components[j].runs[si];
        let mut k = 0;
        while k < n {
            let d = rot[(start + k) % n];
            if d == run_i[0] {
                out.extend_from_slice(run_j);
                k += run_i.len();
            } else if d == run_j[0] {
                out.extend_from_slice(run_i);
                k += run_j.len();
            } else {
                out.push(d);
                k += 1;
            }
        }
        g.set_rotation(s, &out);
    }
    Ok(())
}

/// Order in which the components' runs appear clockwise around the second
/// separator vertex.
fn run_order(g: &EmbeddedMultigraph, cc: &CutComponents) -> Vec<usize> {
    let s = cc.separator[1];
    let mut order = Vec::new();
    for d in g.rotation(s) {
        if let Some(c) = cc.components.iter().position(|c| c.runs[1].first() == Some(&d)) {
            order.push(c);
        }
    }
    order
}

fn run_end_target(g: &EmbeddedMultigraph, cc: &CutComponents, c: usize, end: RunEnd) -> VertexId {
    let run = &cc.components[c].runs[1];
    match end {
        RunEnd::First => g.target(run[0]),
        RunEnd::Last => g.target(*run.last().unwrap()),
    }
}

/// Deletes one copy of the multi-edge `(u, v)` and inserts `(x, y)`, where
/// `x` and `y` are ends of the runs (at `v`) of two different
/// cut-components. Components are swapped and reversed first so that `x`
/// and `y` face a common copy; removing that copy leaves a quadrilateral
/// which the new edge splits. Returns the new dart leaving `x`.
pub fn replace_multiedge_copy_between(
    g: &mut EmbeddedMultigraph,
    u: VertexId,
    v: VertexId,
    x: VertexId,
    y: VertexId,
) -> Result<DartId> {
    if g.has_edge(x, y) {
        return Err(Error::Internal(format!(
            "edge ({x}, {y}) already present between different cut-components"
        )));
    }
    let cc = pair_components(g, u, v)?;
    let (i, j) = match (cc.component_of(x), cc.component_of(y)) {
        (Some(i), Some(j)) if i != j => (i, j),
        _ => {
            return Err(Error::InvalidArgument(format!(
                "{x} and {y} are not in two different cut-components of ({u}, {v})"
            )))
        }
    };
    for (c, w) in [(i, x), (j, y)] {
        if run_end_target(g, &cc, c, RunEnd::First) != w && run_end_target(g, &cc, c, RunEnd::Last) != w {
            return Err(Error::InvalidArgument(format!("{w} is not a peripheral vertex at ({u}, {v})")));
        }
    }

    // Bring j directly after i, clockwise around v.
    let order = run_order(g, &cc);
    let pi = order.iter().position(|&c| c == i).unwrap();
    let after = order[(pi + 1) % order.len()];
    if after != j {
        swap_components(g, u, v, j, after)?;
    }
    let cc = cut_components(g, &[u, v]);
    if run_end_target(g, &cc, i, RunEnd::Last) != x {
        reverse_component(g, u, v, i)?;
    }
    let cc = cut_components(g, &[u, v]);
    if run_end_target(g, &cc, j, RunEnd::First) != y {
        reverse_component(g, u, v, j)?;
    }
    let cc = cut_components(g, &[u, v]);
    let last_i = *cc.components[i].runs[1].last().unwrap();
    let first_j = cc.components[j].runs[1][0];
    let copy = g.next_cw(last_i);
    if g.target(copy) != u || g.next_cw(copy) != first_j {
        return Err(Error::Internal("components did not line up around a copy".into()));
    }
    g.delete_edge(copy)?;
    let quad = g.face_of(first_j);
    if quad.len() != 4 {
        return Err(Error::Internal(format!("expected a quadrilateral, got length {}", quad.len())));
    }
    g.insert_chord(&quad, x, y)
}

/// Same as [`replace_multiedge_copy_between`], addressing the new edge's
/// endpoints as run ends of components `i` and `j`.
pub fn replace_multiedge_copy(
    g: &mut EmbeddedMultigraph,
    u: VertexId,
    v: VertexId,
    i: usize,
    alpha: RunEnd,
    j: usize,
    beta: RunEnd,
) -> Result<DartId> {
    let cc = pair_components(g, u, v)?;
    if i == j || i >= cc.len() || j >= cc.len() {
        return Err(Error::InvalidArgument(format!("bad component indices {i}, {j}")));
    }
    let x = run_end_target(g, &cc, i, alpha);
    let y = run_end_target(g, &cc, j, beta);
    replace_multiedge_copy_between(g, u, v, x, y)
}

/// Contracts edge `(z, y)` into `y`: the darts of `z` are re-attached at `y`
/// in place of the contracted edge, loops are deleted and parallel edges are
/// merged down to one copy.
pub fn contract_edge(g: &mut EmbeddedMultigraph, z: VertexId, y: VertexId) -> Result<()> {
    let d0 = *g
        .darts_between(z, y)
        .first()
        .ok_or(Error::NoSuchEdge(z, y))?;
    let rz = g.rotation(z);
    let p = rz.iter().position(|&d| d == d0).unwrap();
    let moved: Vec<DartId> = (1..rz.len()).map(|k| rz[(p + k) % rz.len()]).collect();
    let t = d0.twin();
    let ry = g.rotation(y);
    let q = ry.iter().position(|&d| d == t).unwrap();
    let mut new_ry: Vec<DartId> = Vec::with_capacity(ry.len() + moved.len());
    new_ry.extend_from_slice(&ry[..q]);
    new_ry.extend_from_slice(&moved);
    new_ry.extend_from_slice(&ry[q + 1..]);
    for &d in &moved {
        g.set_origin(d, y);
    }
    g.darts[d0.0].alive = false;
    g.darts[t.0].alive = false;
    g.live_darts -= 2;
    g.first[z.0] = None;
    g.set_rotation(y, &new_ry);
    g.retire_vertex(z);
    g.rebuild_multiplicity();

    let loops: Vec<DartId> = g.rotation(y).into_iter().filter(|&d| g.target(d) == y && d.0 % 2 == 0).collect();
    for d in loops {
        g.delete_edge(d)?;
    }
    // Merge parallels at y, keeping y's original copy when there is one.
    loop {
        let rot = g.rotation(y);
        let mut extra = None;
        for &d in &rot {
            let x = g.target(d);
            if g.multiplicity(y, x) > 1 {
                let copies = g.darts_between(y, x);
                let keep = copies.iter().copied().find(|c| !moved.contains(c)).unwrap_or(copies[0]);
                extra = copies.into_iter().find(|&c| c != keep);
                break;
            }
        }
        match extra {
            Some(d) => g.delete_edge(d)?,
            None => break,
        }
    }
    Ok(())
}

/// Removes `v` and all its edges.
pub fn delete_vertex(g: &mut EmbeddedMultigraph, v: VertexId) -> Result<()> {
    if !g.is_vertex(v) {
        return Err(Error::InvalidArgument(format!("vertex {v} does not exist")));
    }
    while let Some(d) = g.first_dart(v) {
        g.delete_edge(d)?;
    }
    g.retire_vertex(v);
    Ok(())
}
