//! Outer layers of the pipeline: linking components, removing cut vertices
//! with temporary helper vertices, and maximal outer-planar augmentation
//! through a universal apex.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::multi_triangulator::{multi_triangulate, Chord};
use crate::path_decomp::PathDecomposition;
use crate::planar::{
    components, components_avoiding, contract_edge, cut_vertices, delete_vertex, is_multi_triangulated, DartId,
    EmbeddedMultigraph, FacialCircuit, VertexId,
};
use crate::simplifier::{simplify, SimplifyOptions, SimplifyOutcome};

/// A vertex inserted to destroy the cut vertex `at_cut_vertex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HelperVertexRecord {
    pub z: VertexId,
    pub at_cut_vertex: VertexId,
    /// The face `z` was placed in, as it was before the insertion.
    pub face_used: FacialCircuit,
}

/// Restricts `p` to each connected component of `g`, in the order of
/// [`components`], dropping empty end bags.
pub fn split_by_component(g: &EmbeddedMultigraph, p: &PathDecomposition) -> Vec<PathDecomposition> {
    components(g)
        .into_iter()
        .map(|comp| {
            let keep: BTreeSet<VertexId> = comp.iter().copied().collect();
            let part = p.restrict(|v| keep.contains(&v)).trim();
            if part.is_empty() {
                PathDecomposition::new(vec![comp]).expect("single bag")
            } else {
                part
            }
        })
        .collect()
}

/// Links the components of `g` into one. `parts[i]` decomposes the `i`-th
/// component of [`components`]. The least vertex of the last bag of part
/// `i` is joined to the least vertex of the first bag of part `i + 1`, and
/// the decompositions are chained with the bag of that edge between them.
/// Returns the chained decomposition and the added edges.
pub fn connect(
    g: &mut EmbeddedMultigraph,
    parts: &[PathDecomposition],
) -> Result<(PathDecomposition, Vec<(VertexId, VertexId)>)> {
    let comps = components(g);
    if comps.len() != parts.len() {
        return Err(Error::InvalidArgument(format!("{} components but {} decompositions", comps.len(), parts.len())));
    }
    let parts: Vec<PathDecomposition> = parts.iter().map(PathDecomposition::trim).collect();
    for (comp, part) in comps.iter().zip(&parts) {
        let covered: Vec<VertexId> = part.vertices().collect();
        if covered != *comp {
            return Err(Error::InvalidDecomposition(format!(
                "decomposition covers {covered:?}, component is {comp:?}"
            )));
        }
    }
    let mut links = Vec::with_capacity(parts.len().saturating_sub(1));
    for w in parts.windows(2) {
        let a = w[0].bag(w[0].len() - 1)[0];
        let b = w[1].bag(0)[0];
        let (da, db) = (g.first_dart(a), g.first_dart(b));
        g.insert_edge(a, da, b, db)?;
        links.push((a, b));
    }
    let p = if parts.len() == 1 { parts[0].clone() } else { PathDecomposition::concatenate(&parts, &links)? };
    p.check(g)?;
    Ok((p, links))
}

/// Reorders the rotation at `v` so that the darts into each component of
/// `g - v` are consecutive, groups ordered by least vertex and each group
/// keeping its cyclic order. Returns the face through every corner between
/// two groups.
fn regroup_at(g: &mut EmbeddedMultigraph, v: VertexId) -> Result<FacialCircuit> {
    let comps = components_avoiding(g, &[v]);
    let mut comp_of = vec![usize::MAX; g.vertex_bound()];
    for (i, c) in comps.iter().enumerate() {
        for &w in c {
            comp_of[w.0] = i;
        }
    }
    let rot = g.rotation(v);
    let group = |d: DartId| comp_of[g.target(d).0];
    let mut order: Vec<DartId> = Vec::with_capacity(rot.len());
    for i in 0..comps.len() {
        let members: Vec<usize> = (0..rot.len()).filter(|&k| group(rot[k]) == i).collect();
        let k = rot.len();
        let start = members
            .iter()
            .copied()
            .find(|&m| group(rot[(m + k - 1) % k]) != i)
            .unwrap_or(members[0]);
        let s = members.iter().position(|&m| m == start).unwrap();
        order.extend((0..members.len()).map(|t| rot[members[(s + t) % members.len()]]));
    }
    g.set_rotation(v, &order);
    if !g.is_planar_embedding() {
        return Err(Error::Internal(format!("regrouping at {v} broke planarity")));
    }
    Ok(g.face_of(order[0]))
}

/// Joins a fresh vertex `z` to the first corner of each of `targets` along
/// `face`, all edges routed inside it.
fn insert_star(g: &mut EmbeddedMultigraph, face: &FacialCircuit, z: VertexId, targets: &BTreeSet<VertexId>) -> Result<()> {
    let mut done: BTreeSet<VertexId> = BTreeSet::new();
    for &d in &face.darts {
        let o = g.origin(d);
        if !targets.contains(&o) || !done.insert(o) {
            continue;
        }
        let before_z = if g.degree(z) == 0 {
            None
        } else {
            let cur = g.face_of(d);
            Some(
                cur.darts
                    .iter()
                    .copied()
                    .find(|&x| g.origin(x) == z)
                    .ok_or_else(|| Error::Internal("helper left the face".into()))?,
            )
        };
        g.insert_edge(z, before_z, o, Some(d))?;
    }
    Ok(())
}

/// Destroys every cut vertex, least first. Each cut vertex `v` has its
/// rotation regrouped so that one face meets all its cut-components, and a
/// helper joined to `v` and to the neighbours of `v` on that face is placed
/// there. The helper enters every bag holding `v`.
pub fn biconnect(g: &mut EmbeddedMultigraph, p: &mut PathDecomposition) -> Result<Vec<HelperVertexRecord>> {
    if g.vertex_count() < 3 {
        return Err(Error::NotApplicable(format!("need at least 3 vertices, got {}", g.vertex_count())));
    }
    if !g.is_simple() {
        return Err(Error::InvalidArgument("input has parallel edges".into()));
    }
    p.check(g)?;
    let mut records = Vec::new();
    let mut done: BTreeSet<VertexId> = BTreeSet::new();
    while let Some(&v) = cut_vertices(g)?.first() {
        if !done.insert(v) {
            return Err(Error::Internal(format!("cut vertex {v} survived its helper")));
        }
        let face = regroup_at(g, v)?;
        let nbrs: BTreeSet<VertexId> = g.neighbors(v).into_iter().collect();
        let mut targets: BTreeSet<VertexId> = face.vertices(g).into_iter().filter(|w| nbrs.contains(w)).collect();
        targets.insert(v);
        let z = g.add_vertex();
        insert_star(g, &face, z, &targets)?;
        if g.neighbors(z).iter().any(|w| !targets.contains(w)) {
            return Err(Error::Internal(format!("helper {z} reached beyond the neighbours of {v}")));
        }
        p.shadow(v, z)?;
        let cuts = cut_vertices(g)?;
        if cuts.contains(&v) || cuts.contains(&z) {
            return Err(Error::Internal(format!("helper {z} at {v} left a cut vertex")));
        }
        log::debug!("helper {z} at cut vertex {v}, degree {}", g.degree(z));
        records.push(HelperVertexRecord { z, at_cut_vertex: v, face_used: face });
    }
    p.check(g)?;
    Ok(records)
}

/// Contracts each helper into its least neighbour sharing exactly two
/// neighbours with it; `p` follows by renaming. Returns the contracted
/// pairs `(z, y)`.
pub fn remove_helpers(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    records: &[HelperVertexRecord],
) -> Result<Vec<(VertexId, VertexId)>> {
    let mut out = Vec::with_capacity(records.len());
    for rec in records {
        let z = rec.z;
        if !g.is_vertex(z) {
            return Err(Error::InvalidArgument(format!("helper {z} is gone")));
        }
        let nz: BTreeSet<VertexId> = g.neighbors(z).into_iter().collect();
        let y = nz
            .iter()
            .copied()
            .find(|&y| g.neighbors(y).into_iter().collect::<BTreeSet<_>>().intersection(&nz).count() == 2)
            .ok_or_else(|| Error::Internal(format!("helper {z} has no neighbour with two common neighbours")))?;
        contract_edge(g, z, y)?;
        p.rename(z, y)?;
        out.push((z, y));
    }
    g.drop_dead_tail();
    if !g.is_simple() || !is_multi_triangulated(g)? {
        return Err(Error::Internal("contraction broke the triangulation".into()));
    }
    p.check(g)?;
    Ok(out)
}

/// What a triangulation run did.
#[derive(Clone, Debug)]
pub struct TriangulationOutcome {
    pub helpers: Vec<HelperVertexRecord>,
    /// Width after the helpers were added.
    pub width_after_helpers: usize,
    pub chords: Vec<Chord>,
    pub simplify: SimplifyOutcome,
    pub contractions: Vec<(VertexId, VertexId)>,
}

/// Multi-triangulation followed by simplification, for 2-connected input.
pub fn triangulate_biconnected(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    opts: SimplifyOptions,
) -> Result<TriangulationOutcome> {
    let width_after_helpers = p.width();
    let chords = multi_triangulate(g, p)?;
    let simplify = simplify(g, p, opts)?;
    Ok(TriangulationOutcome { helpers: Vec::new(), width_after_helpers, chords, simplify, contractions: Vec::new() })
}

/// Triangulates a simple connected planar graph on at least 3 vertices:
/// helpers, multi-triangulation, simplification, then helper contraction.
pub fn triangulate_connected(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    opts: SimplifyOptions,
) -> Result<TriangulationOutcome> {
    let helpers = biconnect(g, p)?;
    let mut out = triangulate_biconnected(g, p, opts)?;
    out.contractions = remove_helpers(g, p, &helpers)?;
    out.helpers = helpers;
    Ok(out)
}

/// What an outer-planar run did.
#[derive(Clone, Debug, Default)]
pub struct OuterplanarOutcome {
    /// The universal vertex, deleted again before returning.
    pub apex: Option<VertexId>,
    pub chords: Vec<Chord>,
    pub simplify: Option<SimplifyOutcome>,
}

/// Some face through every vertex, if any.
pub fn outer_face(g: &EmbeddedMultigraph) -> Option<FacialCircuit> {
    let n = g.vertex_count();
    g.trace_faces().into_iter().find(|f| {
        let vs: BTreeSet<VertexId> = f.vertices(g).into_iter().collect();
        vs.len() == n
    })
}

/// Places a vertex adjacent to every vertex inside a face through all of
/// them and puts it into every bag.
pub fn add_apex(g: &mut EmbeddedMultigraph, p: &mut PathDecomposition) -> Result<VertexId> {
    let face = outer_face(g).ok_or(Error::NotOuterPlanar)?;
    let all: BTreeSet<VertexId> = g.vertices().collect();
    let apex = g.add_vertex();
    insert_star(g, &face, apex, &all)?;
    p.add_everywhere(apex);
    Ok(apex)
}

/// Augments a simple connected graph, embedded with all vertices on one
/// face, to a maximal outer-planar graph: a universal apex is placed in that
/// face and put into every bag, the result is triangulated, and the apex is
/// deleted again. Graphs on one or two vertices are returned unchanged.
pub fn outerplanar_maximalize(
    g: &mut EmbeddedMultigraph,
    p: &mut PathDecomposition,
    opts: SimplifyOptions,
) -> Result<OuterplanarOutcome> {
    if !g.is_simple() {
        return Err(Error::InvalidArgument("input has parallel edges".into()));
    }
    if components(g).len() > 1 {
        return Err(Error::Disconnected);
    }
    p.check(g)?;
    let n = g.vertex_count();
    if n <= 2 {
        return Ok(OuterplanarOutcome::default());
    }
    let input_width = p.width();
    let apex = add_apex(g, p)?;
    let chords = multi_triangulate(g, p)?;
    let c = p.max_multi_edges_in_a_bag(g);
    if c > input_width + 1 {
        return Err(Error::Internal(format!("{c} cutting pairs share a bag, above {}", input_width + 1)));
    }
    let outcome = simplify(g, p, opts)?;
    delete_vertex(g, apex)?;
    g.drop_dead_tail();
    p.remove_vertex(apex);
    p.check(g)?;
    Ok(OuterplanarOutcome { apex: Some(apex), chords, simplify: Some(outcome) })
}
