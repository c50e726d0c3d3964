//! Chord insertion driven by a path decomposition: every face of length at
//! least four receives a chord whose ends already share a bag, so bags never
//! change. Multi-edges may appear.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::path_decomp::PathDecomposition;
use crate::planar::{cut_vertices, DartId, EmbeddedMultigraph, FacialCircuit, VertexId};

/// One inserted chord.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Chord {
    pub a: VertexId,
    pub b: VertexId,
    pub dart: DartId,
}

/// Multi-triangulates a 2-connected embedded graph in place. Faces are
/// handled in order of their least dart; each receives the least chord
/// from [`PathDecomposition::find_chord_in_face`], routed inside it.
pub fn multi_triangulate(g: &mut EmbeddedMultigraph, p: &PathDecomposition) -> Result<Vec<Chord>> {
    if g.vertex_count() < 3 {
        return Err(Error::NotApplicable(format!("need at least 3 vertices, got {}", g.vertex_count())));
    }
    if let Some(&v) = cut_vertices(g)?.first() {
        return Err(Error::NotBiconnected(v));
    }
    if !g.is_planar_embedding() {
        return Err(Error::NonPlanar);
    }
    p.check(g)?;
    let mut work: BTreeMap<DartId, FacialCircuit> = BTreeMap::new();
    for f in g.trace_faces() {
        if f.len() < 3 {
            return Err(Error::ShortFace);
        }
        if f.len() > 3 {
            work.insert(f.min_dart(), f);
        }
    }
    let mut chords = Vec::new();
    while let Some((_, face)) = work.pop_first() {
        let (a, b) = p.find_chord_in_face(g, &face)?;
        let dart = g.insert_chord(&face, a, b)?;
        chords.push(Chord { a, b, dart });
        for d in [dart, dart.twin()] {
            let f = g.face_of(d);
            if f.len() > 3 {
                work.insert(f.min_dart(), f);
            }
        }
    }
    Ok(chords)
}
