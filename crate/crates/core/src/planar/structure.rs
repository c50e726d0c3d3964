//! Connectivity and separator queries on embedded multigraphs.

use std::collections::VecDeque;

use super::{DartId, EmbeddedMultigraph, VertexId};
use crate::error::{Error, Result};

/// Connected components of the live vertices, each sorted, ordered by their
/// least vertex.
pub fn components(g: &EmbeddedMultigraph) -> Vec<Vec<VertexId>> {
    components_avoiding(g, &[])
}

pub(crate) fn components_avoiding(g: &EmbeddedMultigraph, removed: &[VertexId]) -> Vec<Vec<VertexId>> {
    let adj = g.adjacency();
    let mut mark = vec![false; g.vertex_bound()];
    for &r in removed {
        mark[r.0] = true;
    }
    let mut out = Vec::new();
    for s in g.vertices() {
        if mark[s.0] {
            continue;
        }
        mark[s.0] = true;
        let mut comp = vec![s];
        let mut queue = VecDeque::from([s.0]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !mark[y] {
                    mark[y] = true;
                    comp.push(VertexId(y));
                    queue.push_back(y);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Cut vertices in ascending order (iterative lowpoint DFS).
pub fn cut_vertices(g: &EmbeddedMultigraph) -> Result<Vec<VertexId>> {
    let n = g.vertex_bound();
    let Some(root) = g.vertices().next() else {
        return Ok(Vec::new());
    };
    let adj = g.adjacency();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut is_cut = vec![false; n];
    let mut time = 0;
    // (vertex, parent, next neighbour index)
    let mut stack: Vec<(usize, usize, usize)> = vec![(root.0, usize::MAX, 0)];
    disc[root.0] = 0;
    low[root.0] = 0;
    let mut root_children = 0;
    while let Some(&mut (x, parent, ref mut i)) = stack.last_mut() {
        if *i < adj[x].len() {
            let y = adj[x][*i];
            *i += 1;
            if disc[y] == usize::MAX {
                time += 1;
                disc[y] = time;
                low[y] = time;
                if x == root.0 {
                    root_children += 1;
                }
                stack.push((y, x, 0));
            } else if y != parent {
                low[x] = low[x].min(disc[y]);
            }
        } else {
            stack.pop();
            if parent != usize::MAX {
                low[parent] = low[parent].min(low[x]);
                if parent != root.0 && low[x] >= disc[parent] {
                    is_cut[parent] = true;
                }
            }
        }
    }
    if g.vertices().any(|v| disc[v.0] == usize::MAX) {
        return Err(Error::Disconnected);
    }
    is_cut[root.0] = root_children > 1;
    Ok((0..n).filter(|&v| is_cut[v]).map(VertexId).collect())
}

/// Connected, at least three vertices, no cut vertex.
pub fn is_biconnected(g: &EmbeddedMultigraph) -> bool {
    g.vertex_count() >= 3 && matches!(cut_vertices(g), Ok(c) if c.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutComponent {
    /// Vertices of the interior, sorted.
    pub interior: Vec<VertexId>,
    /// For each separator vertex (same order as `CutComponents::separator`),
    /// the darts from it into the interior in clockwise order. When the
    /// darts form one run between separator-separator darts, the run is
    /// listed from its first to its last dart.
    pub runs: Vec<Vec<DartId>>,
}

impl CutComponent {
    pub fn contains(&self, v: VertexId) -> bool {
        self.interior.binary_search(&v).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CutComponents {
    pub separator: Vec<VertexId>,
    pub components: Vec<CutComponent>,
    /// Set by the simplifier: index of the component holding the anchor edge.
    pub parent_index: Option<usize>,
    /// For a pair separator: at both separator vertices, the rotation
    /// alternates between one separator-separator dart and the complete run
    /// of exactly one component.
    pub alternates: bool,
}

impl CutComponents {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn component_of(&self, v: VertexId) -> Option<usize> {
        self.components.iter().position(|c| c.contains(v))
    }
}

/// Connected components of `g - separator` with their dart runs at each
/// separator vertex.
pub fn cut_components(g: &EmbeddedMultigraph, separator: &[VertexId]) -> CutComponents {
    let comps = components_avoiding(g, separator);
    let mut comp_of = vec![usize::MAX; g.vertex_bound()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v.0] = i;
        }
    }
    let mut runs = vec![vec![Vec::new(); separator.len()]; comps.len()];
    let mut alternates = separator.len() == 2;
    for (si, &s) in separator.iter().enumerate() {
        let rot = g.rotation(s);
        let is_sep = |d: DartId| separator.contains(&g.target(d));
        // Start right after a separator dart when there is one, so that runs
        // are read whole.
        let start = rot.iter().position(|&d| is_sep(d)).map(|p| (p + 1) % rot.len()).unwrap_or(0);
        let ordered: Vec<DartId> = (0..rot.len()).map(|k| rot[(start + k) % rot.len()]).collect();
        for &d in &ordered {
            if !is_sep(d) {
                runs[comp_of[g.target(d).0]][si].push(d);
            }
        }
        if separator.len() == 2 {
            alternates &= alternation_holds(g, &ordered, &is_sep, &comp_of, comps.len());
        }
    }
    let components = comps
        .into_iter()
        .zip(runs)
        .map(|(interior, runs)| CutComponent { interior, runs })
        .collect();
    CutComponents { separator: separator.to_vec(), components, parent_index: None, alternates }
}

/// `ordered` starts right after a separator dart. Between consecutive
/// separator darts there must be a nonempty run into a single component, and
/// every component must own exactly one run.
fn alternation_holds(
    g: &EmbeddedMultigraph,
    ordered: &[DartId],
    is_sep: &dyn Fn(DartId) -> bool,
    comp_of: &[usize],
    n_comps: usize,
) -> bool {
    if ordered.is_empty() || !is_sep(*ordered.last().unwrap()) {
        return false;
    }
    let mut owner_seen = vec![false; n_comps];
    let mut current: Option<usize> = None;
    let mut runs = 0;
    for &d in ordered {
        if is_sep(d) {
            if current.is_none() {
                return false;
            }
            current = None;
            continue;
        }
        let c = comp_of[g.target(d).0];
        match current {
            Some(x) if x == c => {}
            Some(_) => return false,
            None => {
                if std::mem::replace(&mut owner_seen[c], true) {
                    return false;
                }
                current = Some(c);
                runs += 1;
            }
        }
    }
    runs == n_comps
}

/// Face-length test: at least three vertices, connected, planar rotation
/// system and every face of length exactly three. Rejects `|V| < 3`.
pub fn is_multi_triangulated(g: &EmbeddedMultigraph) -> Result<bool> {
    if g.vertex_count() < 3 {
        return Err(Error::NotApplicable(format!(
            "triangulation predicates need at least 3 vertices, got {}",
            g.vertex_count()
        )));
    }
    if components(g).len() != 1 {
        return Ok(false);
    }
    if !g.is_planar_embedding() {
        return Ok(false);
    }
    Ok(g.trace_faces().iter().all(|f| f.len() == 3))
}

/// A multi-edge of a multi-triangulated graph, which is exactly a cutting pair.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CuttingPair {
    pub u: VertexId,
    pub v: VertexId,
    pub multiplicity: usize,
}

/// Cutting pairs of a multi-triangulated graph, read off the multi-edges.
pub fn cutting_pairs(g: &EmbeddedMultigraph) -> Result<Vec<CuttingPair>> {
    if !is_multi_triangulated(g)? {
        return Err(Error::NotMultiTriangulated);
    }
    let pairs: Vec<CuttingPair> = g
        .multi_edges()
        .into_iter()
        .map(|((u, v), m)| CuttingPair { u, v, multiplicity: m })
        .collect();
    if cfg!(debug_assertions) {
        for p in &pairs {
            let cc = cut_components(g, &[p.u, p.v]);
            if cc.len() != p.multiplicity || !cc.alternates {
                return Err(Error::Internal(format!(
                    "multi-edge ({}, {}) of multiplicity {} has {} cut-components",
                    p.u,
                    p.v,
                    p.multiplicity,
                    cc.len()
                )));
            }
        }
    }
    Ok(pairs)
}
