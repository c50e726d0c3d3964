//! Embedded planar multigraphs stored as rotation systems.
//!
//! Every edge is a pair of darts `2k` and `2k + 1`; the twin of a dart is
//! obtained by flipping the lowest bit. Each vertex carries a clockwise cyclic
//! order of its outgoing darts, linked through `next_cw` / `prev_cw`. Faces are
//! never stored: they are read off the rotation system on demand by walking
//! `d -> next_cw(twin(d))`.
//!
//! Deleted edges and vertices are tombstoned so identifiers held by callers
//! stay meaningful across mutations. [`EmbeddedMultigraph::compact`] drops
//! the tombstoned darts and renumbers the survivors in order.

mod structure;
mod surgery;

pub(crate) use structure::components_avoiding;
pub use structure::{
    components, cut_components, cut_vertices, cutting_pairs, is_biconnected,
    is_multi_triangulated, CutComponent, CutComponents, CuttingPair,
};
pub use surgery::{
    contract_edge, delete_vertex, replace_multiedge_copy, replace_multiedge_copy_between,
    reverse_component, swap_components, RunEnd,
};

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub usize);

impl VertexId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DartId(pub usize);

impl DartId {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }

    #[inline]
    pub fn twin(self) -> DartId {
        DartId(self.0 ^ 1)
    }

    /// Index of the undirected edge this dart belongs to.
    #[inline]
    pub fn edge(self) -> usize {
        self.0 >> 1
    }
}

impl fmt::Display for DartId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.0)
    }
}

/// Read-only view of one dart.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Dart {
    pub id: DartId,
    pub origin: VertexId,
    pub twin: DartId,
    pub next_cw: DartId,
}

#[derive(Clone, Debug)]
struct DartRecord {
    origin: VertexId,
    next_cw: DartId,
    prev_cw: DartId,
    alive: bool,
}

/// Closed walk around one face, as the sequence of darts traversed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacialCircuit {
    pub darts: Vec<DartId>,
}

impl FacialCircuit {
    pub fn len(&self) -> usize {
        self.darts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.darts.is_empty()
    }

    /// Origins of the darts, i.e. the corners of the face in walk order.
    pub fn vertices(&self, g: &EmbeddedMultigraph) -> Vec<VertexId> {
        self.darts.iter().map(|&d| g.origin(d)).collect()
    }

    pub fn min_dart(&self) -> DartId {
        *self.darts.iter().min().expect("empty facial circuit")
    }

    /// The dart leaving `v` along this face, if `v` occurs exactly once.
    pub fn out_dart_at(&self, g: &EmbeddedMultigraph, v: VertexId) -> Option<DartId> {
        let mut hits = self.darts.iter().filter(|&&d| g.origin(d) == v);
        let first = hits.next().copied();
        if hits.next().is_some() {
            None
        } else {
            first
        }
    }
}

/// Planar multigraph given by a rotation system.
#[derive(Clone, Debug, Default)]
pub struct EmbeddedMultigraph {
    alive: Vec<bool>,
    first: Vec<Option<DartId>>,
    darts: Vec<DartRecord>,
    multiplicity: BTreeMap<(VertexId, VertexId), usize>,
    live_darts: usize,
}

#[inline]
pub(crate) fn key(a: VertexId, b: VertexId) -> (VertexId, VertexId) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

impl EmbeddedMultigraph {
    /// `n` isolated vertices `0..n`.
    pub fn new(n: usize) -> Self {
        EmbeddedMultigraph {
            alive: vec![true; n],
            first: vec![None; n],
            ..Default::default()
        }
    }

    /// Builds a graph from explicit parts. Edge `k` owns darts `2k` (leaving
    /// `edges[k].0`) and `2k + 1`. `rotation[v]` lists the darts leaving `v`
    /// in clockwise order; every dart must appear exactly once at its origin.
    pub fn from_parts(
        n: usize,
        edges: &[(VertexId, VertexId)],
        rotation: &[Vec<DartId>],
    ) -> Result<Self> {
        if rotation.len() != n {
            return Err(Error::MalformedRotation(format!(
                "expected {n} rotation lists, got {}",
                rotation.len()
            )));
        }
        let mut g = EmbeddedMultigraph::new(n);
        for &(a, b) in edges {
            if a.0 >= n || b.0 >= n {
                return Err(Error::MalformedRotation(format!("edge ({a}, {b}) out of range")));
            }
            if a == b {
                return Err(Error::Loop(a));
            }
            for origin in [a, b] {
                let id = DartId(g.darts.len());
                g.darts.push(DartRecord { origin, next_cw: id, prev_cw: id, alive: true });
            }
            *g.multiplicity.entry(key(a, b)).or_insert(0) += 1;
            g.live_darts += 2;
        }
        let mut seen = vec![false; g.darts.len()];
        for (v, list) in rotation.iter().enumerate() {
            for &d in list {
                if d.0 >= g.darts.len() {
                    return Err(Error::MalformedRotation(format!("dart {d} out of range")));
                }
                if g.darts[d.0].origin != VertexId(v) {
                    return Err(Error::MalformedRotation(format!(
                        "dart {d} listed at {v} but leaves {}",
                        g.darts[d.0].origin
                    )));
                }
                if std::mem::replace(&mut seen[d.0], true) {
                    return Err(Error::MalformedRotation(format!("dart {d} listed twice")));
                }
            }
            g.set_rotation(VertexId(v), list);
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(Error::MalformedRotation(format!("dart d{d} missing from rotation")));
        }
        Ok(g)
    }

    /// Simple-graph convenience: `rotation[v]` lists the neighbours of `v`
    /// clockwise. Each undirected edge must be listed once at both ends.
    pub fn from_neighbor_rotation(rotation: &[Vec<usize>]) -> Result<Self> {
        let n = rotation.len();
        let mut edges = Vec::new();
        let mut dart_of: BTreeMap<(usize, usize), DartId> = BTreeMap::new();
        for (u, list) in rotation.iter().enumerate() {
            for &w in list {
                if w >= n {
                    return Err(Error::MalformedRotation(format!("neighbour {w} out of range")));
                }
                if u < w {
                    if dart_of.contains_key(&(u, w)) {
                        return Err(Error::MalformedRotation(format!(
                            "edge ({u}, {w}) listed twice"
                        )));
                    }
                    let k = edges.len();
                    edges.push((VertexId(u), VertexId(w)));
                    dart_of.insert((u, w), DartId(2 * k));
                    dart_of.insert((w, u), DartId(2 * k + 1));
                }
            }
        }
        let mut rot = Vec::with_capacity(n);
        for (u, list) in rotation.iter().enumerate() {
            let mut darts = Vec::with_capacity(list.len());
            for &w in list {
                match dart_of.get(&(u, w)) {
                    Some(&d) => darts.push(d),
                    None => {
                        return Err(Error::MalformedRotation(format!(
                            "edge ({u}, {w}) missing at {w}"
                        )))
                    }
                }
            }
            rot.push(darts);
        }
        Self::from_parts(n, &edges, &rot)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        self.alive.push(true);
        self.first.push(None);
        VertexId(self.alive.len() - 1)
    }

    /// Forgets trailing deleted vertices so that ids stay dense.
    pub fn drop_dead_tail(&mut self) {
        while self.alive.last() == Some(&false) {
            self.alive.pop();
            self.first.pop();
        }
    }

    /// One past the largest vertex id ever allocated.
    pub fn vertex_bound(&self) -> usize {
        self.alive.len()
    }

    pub fn dart_bound(&self) -> usize {
        self.darts.len()
    }

    pub fn is_vertex(&self, v: VertexId) -> bool {
        v.0 < self.alive.len() && self.alive[v.0]
    }

    pub fn vertex_count(&self) -> usize {
        self.alive.iter().filter(|a| **a).count()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.alive.iter().enumerate().filter(|(_, a)| **a).map(|(i, _)| VertexId(i))
    }

    pub fn edge_count(&self) -> usize {
        self.live_darts / 2
    }

    pub fn is_dart(&self, d: DartId) -> bool {
        d.0 < self.darts.len() && self.darts[d.0].alive
    }

    pub fn darts(&self) -> impl Iterator<Item = DartId> + '_ {
        self.darts.iter().enumerate().filter(|(_, r)| r.alive).map(|(i, _)| DartId(i))
    }

    pub fn dart(&self, d: DartId) -> Dart {
        Dart { id: d, origin: self.origin(d), twin: d.twin(), next_cw: self.next_cw(d) }
    }

    #[inline]
    pub fn origin(&self, d: DartId) -> VertexId {
        self.darts[d.0].origin
    }

    #[inline]
    pub fn target(&self, d: DartId) -> VertexId {
        self.darts[d.twin().0].origin
    }

    #[inline]
    pub fn next_cw(&self, d: DartId) -> DartId {
        self.darts[d.0].next_cw
    }

    #[inline]
    pub fn prev_cw(&self, d: DartId) -> DartId {
        self.darts[d.0].prev_cw
    }

    /// Successor of `d` along its face.
    #[inline]
    pub fn face_next(&self, d: DartId) -> DartId {
        self.next_cw(d.twin())
    }

    pub fn first_dart(&self, v: VertexId) -> Option<DartId> {
        self.first[v.0]
    }

    /// Darts leaving `v` in clockwise order, starting at the stored first dart.
    pub fn rotation(&self, v: VertexId) -> Vec<DartId> {
        let mut out = Vec::new();
        if let Some(start) = self.first[v.0] {
            let mut d = start;
            loop {
                out.push(d);
                d = self.next_cw(d);
                if d == start {
                    break;
                }
            }
        }
        out
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.rotation(v).len()
    }

    /// Neighbours in rotation order, repeated for multi-edges.
    pub fn neighbors(&self, v: VertexId) -> Vec<VertexId> {
        self.rotation(v).into_iter().map(|d| self.target(d)).collect()
    }

    pub fn multiplicity(&self, a: VertexId, b: VertexId) -> usize {
        self.multiplicity.get(&key(a, b)).copied().unwrap_or(0)
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.multiplicity(a, b) > 0
    }

    /// Unordered vertex pairs with multiplicity at least two, ascending.
    pub fn multi_edges(&self) -> Vec<((VertexId, VertexId), usize)> {
        self.multiplicity.iter().filter(|(_, &m)| m >= 2).map(|(&k, &m)| (k, m)).collect()
    }

    /// Distinct adjacent pairs `(a, b)` with `a < b`, ascending.
    pub fn simple_edges(&self) -> Vec<(VertexId, VertexId)> {
        self.multiplicity.iter().filter(|(_, &m)| m > 0).map(|(&k, _)| k).collect()
    }

    pub fn total_multiplicity_excess(&self) -> usize {
        self.multiplicity.values().map(|&m| m.saturating_sub(1)).sum()
    }

    pub fn is_simple(&self) -> bool {
        self.multiplicity.values().all(|&m| m <= 1)
    }

    /// Darts from `a` to `b`, in rotation order at `a`.
    pub fn darts_between(&self, a: VertexId, b: VertexId) -> Vec<DartId> {
        self.rotation(a).into_iter().filter(|&d| self.target(d) == b).collect()
    }

    /// Edge list with one entry per edge, `(origin, target)` of the even dart.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        (0..self.darts.len() / 2)
            .filter(|&k| self.darts[2 * k].alive)
            .map(|k| (self.darts[2 * k].origin, self.darts[2 * k + 1].origin))
            .collect()
    }

    pub(crate) fn set_rotation(&mut self, v: VertexId, list: &[DartId]) {
        if list.is_empty() {
            self.first[v.0] = None;
            return;
        }
        let k = list.len();
        for i in 0..k {
            let d = list[i];
            let nx = list[(i + 1) % k];
            self.darts[d.0].next_cw = nx;
            self.darts[nx.0].prev_cw = d;
        }
        self.first[v.0] = Some(list[0]);
    }

    fn splice_before(&mut self, new: DartId, v: VertexId, before: Option<DartId>) {
        match before.or(self.first[v.0]) {
            None => {
                self.darts[new.0].next_cw = new;
                self.darts[new.0].prev_cw = new;
                self.first[v.0] = Some(new);
            }
            Some(b) => {
                let p = self.prev_cw(b);
                self.darts[new.0].next_cw = b;
                self.darts[new.0].prev_cw = p;
                self.darts[p.0].next_cw = new;
                self.darts[b.0].prev_cw = new;
            }
        }
    }

    /// Inserts an edge `u -- v`. The new dart at `u` is placed immediately
    /// clockwise-before `before_u` (which must leave `u`); `None` appends it
    /// to the rotation. Same for `v`. Returns the new dart leaving `u`.
    ///
    /// If `before_u` and `before_v` are the out-darts of the same face at `u`
    /// and `v`, the new edge splits exactly that face.
    pub fn insert_edge(
        &mut self,
        u: VertexId,
        before_u: Option<DartId>,
        v: VertexId,
        before_v: Option<DartId>,
    ) -> Result<DartId> {
        if u == v {
            return Err(Error::Loop(u));
        }
        for (w, b) in [(u, before_u), (v, before_v)] {
            if !self.is_vertex(w) {
                return Err(Error::InvalidArgument(format!("vertex {w} does not exist")));
            }
            if let Some(b) = b {
                if !self.is_dart(b) || self.origin(b) != w {
                    return Err(Error::InvalidArgument(format!("dart {b} does not leave {w}")));
                }
            }
        }
        let du = DartId(self.darts.len());
        let dv = du.twin();
        self.darts.push(DartRecord { origin: u, next_cw: du, prev_cw: du, alive: true });
        self.darts.push(DartRecord { origin: v, next_cw: dv, prev_cw: dv, alive: true });
        self.splice_before(du, u, before_u);
        self.splice_before(dv, v, before_v);
        *self.multiplicity.entry(key(u, v)).or_insert(0) += 1;
        self.live_darts += 2;
        Ok(du)
    }

    /// Inserts a chord between the corners of `face` at `a` and `b`, routed
    /// inside the face. Both vertices must occur exactly once on the face.
    pub fn insert_chord(&mut self, face: &FacialCircuit, a: VertexId, b: VertexId) -> Result<DartId> {
        let ea = face.out_dart_at(self, a).ok_or_else(|| {
            Error::Internal(format!("vertex {a} does not occur exactly once on the face"))
        })?;
        let eb = face.out_dart_at(self, b).ok_or_else(|| {
            Error::Internal(format!("vertex {b} does not occur exactly once on the face"))
        })?;
        self.insert_edge(a, Some(ea), b, Some(eb))
    }

    fn unlink(&mut self, d: DartId) {
        let v = self.origin(d);
        let n = self.next_cw(d);
        let p = self.prev_cw(d);
        if n == d {
            self.first[v.0] = None;
        } else {
            self.darts[p.0].next_cw = n;
            self.darts[n.0].prev_cw = p;
            if self.first[v.0] == Some(d) {
                self.first[v.0] = Some(n);
            }
        }
        self.darts[d.0].alive = false;
    }

    /// Removes the edge owning dart `d`.
    pub fn delete_edge(&mut self, d: DartId) -> Result<()> {
        if !self.is_dart(d) {
            return Err(Error::InvalidArgument(format!("dart {d} is not live")));
        }
        let (a, b) = (self.origin(d), self.target(d));
        self.unlink(d);
        self.unlink(d.twin());
        let k = key(a, b);
        let m = self.multiplicity.get_mut(&k).expect("multiplicity out of sync");
        *m -= 1;
        if *m == 0 {
            self.multiplicity.remove(&k);
        }
        self.live_darts -= 2;
        Ok(())
    }

    pub(crate) fn retire_vertex(&mut self, v: VertexId) {
        debug_assert!(self.first[v.0].is_none());
        self.alive[v.0] = false;
    }

    pub(crate) fn set_origin(&mut self, d: DartId, v: VertexId) {
        self.darts[d.0].origin = v;
    }

    pub(crate) fn rebuild_multiplicity(&mut self) {
        self.multiplicity.clear();
        for (a, b) in self.edges() {
            *self.multiplicity.entry(key(a, b)).or_insert(0) += 1;
        }
    }

    /// The facial circuit containing dart `d`.
    pub fn face_of(&self, d: DartId) -> FacialCircuit {
        let mut darts = vec![d];
        let mut x = self.face_next(d);
        while x != d {
            darts.push(x);
            x = self.face_next(x);
        }
        FacialCircuit { darts }
    }

    /// All facial circuits, ordered by their least dart id; each circuit
    /// starts at its least dart.
    pub fn trace_faces(&self) -> Vec<FacialCircuit> {
        let mut seen = vec![false; self.darts.len()];
        let mut faces = Vec::new();
        for d in self.darts() {
            if seen[d.0] {
                continue;
            }
            let face = self.face_of(d);
            for &x in &face.darts {
                seen[x.0] = true;
            }
            faces.push(face);
        }
        faces
    }

    /// Number of faces of each connected component containing an edge.
    fn euler_defects(&self) -> Vec<i64> {
        let comps = components(self);
        let mut comp_of = vec![usize::MAX; self.vertex_bound()];
        for (i, c) in comps.iter().enumerate() {
            for &v in c {
                comp_of[v.0] = i;
            }
        }
        let mut faces = vec![0i64; comps.len()];
        let mut edges = vec![0i64; comps.len()];
        for f in self.trace_faces() {
            faces[comp_of[self.origin(f.darts[0]).0]] += 1;
        }
        for (a, _) in self.edges() {
            edges[comp_of[a.0]] += 1;
        }
        comps
            .iter()
            .enumerate()
            .map(|(i, c)| {
                if edges[i] == 0 {
                    0
                } else {
                    c.len() as i64 - edges[i] + faces[i] - 2
                }
            })
            .collect()
    }

    /// Euler's relation `|V| - |E| + |F| = 2` on every component with an edge.
    pub fn is_planar_embedding(&self) -> bool {
        self.euler_defects().iter().all(|&x| x == 0)
    }

    /// Structural sweep: twin involution, rotation cycles, multiplicity table,
    /// no loops. Does not check planarity.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Internal(m));
        if !self.darts.len().is_multiple_of(2) {
            return bad("odd dart count".into());
        }
        let mut live = 0;
        for d in self.darts() {
            live += 1;
            if !self.is_dart(d.twin()) {
                return bad(format!("twin of {d} is dead"));
            }
            if self.origin(d) == self.target(d) {
                return bad(format!("loop at {d}"));
            }
            if !self.is_vertex(self.origin(d)) {
                return bad(format!("{d} leaves a dead vertex"));
            }
            let n = self.next_cw(d);
            if !self.is_dart(n) || self.prev_cw(n) != d || self.origin(n) != self.origin(d) {
                return bad(format!("rotation broken after {d}"));
            }
        }
        if live != self.live_darts {
            return bad("live dart counter out of sync".into());
        }
        let mut on_rotation = 0;
        for v in self.vertices() {
            on_rotation += self.rotation(v).len();
        }
        for (v, f) in self.first.iter().enumerate() {
            if f.is_some() && !self.alive[v] {
                return bad(format!("dead vertex {v} still has darts"));
            }
        }
        if on_rotation != live {
            return bad("some vertex rotation is not a single cycle".into());
        }
        let mut mult: BTreeMap<(VertexId, VertexId), usize> = BTreeMap::new();
        for (a, b) in self.edges() {
            *mult.entry(key(a, b)).or_insert(0) += 1;
        }
        if mult != self.multiplicity {
            return bad("multiplicity table out of sync".into());
        }
        Ok(())
    }

    /// Drops tombstoned darts, renumbering survivors in their current order.
    /// Dart ids held by callers are invalidated.
    pub fn compact(&mut self) {
        let mut remap = vec![DartId(usize::MAX); self.darts.len()];
        let mut next = 0;
        for k in 0..self.darts.len() / 2 {
            if self.darts[2 * k].alive {
                remap[2 * k] = DartId(next);
                remap[2 * k + 1] = DartId(next + 1);
                next += 2;
            }
        }
        let old = std::mem::take(&mut self.darts);
        for (i, r) in old.iter().enumerate() {
            if r.alive {
                self.darts.push(DartRecord {
                    origin: r.origin,
                    next_cw: remap[r.next_cw.0],
                    prev_cw: remap[r.prev_cw.0],
                    alive: true,
                });
                debug_assert_eq!(remap[i].0, self.darts.len() - 1);
            }
        }
        for d in self.first.iter_mut().flatten() {
            *d = remap[d.0];
        }
    }

    /// Canonical comparison: same live vertices, same edge list (after
    /// compaction) and the same cyclic rotation at every vertex.
    pub fn same_embedding(&self, other: &EmbeddedMultigraph) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.compact();
        b.compact();
        if a.alive != b.alive || a.edges() != b.edges() {
            return false;
        }
        let verts: Vec<VertexId> = a.vertices().collect();
        verts.into_iter().all(|v| {
            let ra = a.rotation(v);
            let rb = b.rotation(v);
            if ra.len() != rb.len() {
                return false;
            }
            if ra.is_empty() {
                return true;
            }
            match rb.iter().position(|&d| d == ra[0]) {
                Some(s) => (0..ra.len()).all(|i| ra[i] == rb[(s + i) % rb.len()]),
                None => false,
            }
        })
    }

    /// The underlying simple graph as sorted adjacency lists over
    /// `0..vertex_bound()`; dead vertices get empty lists.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertex_bound()];
        for (a, b) in self.simple_edges() {
            adj[a.0].push(b.0);
            adj[b.0].push(a.0);
        }
        for l in adj.iter_mut() {
            l.sort_unstable();
        }
        adj
    }

    /// Mirror image: every rotation reversed.
    pub fn reversed(&self) -> EmbeddedMultigraph {
        let mut g = self.clone();
        for v in self.vertices() {
            let mut r = self.rotation(v);
            r.reverse();
            g.set_rotation(v, &r);
        }
        g
    }
}
