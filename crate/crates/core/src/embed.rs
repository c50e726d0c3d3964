//! Planar embedding of abstract graphs, for inputs that come without a
//! rotation system. Each biconnected block is embedded by path addition
//! (repeatedly routing a path of some bridge through a face that holds all
//! its attachments, preferring bridges with a single admissible face); the
//! block rotations are then concatenated at shared cut vertices.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::planar::{DartId, EmbeddedMultigraph, VertexId};

/// Biconnected blocks as edge-index lists (iterative edge-stack DFS).
/// Isolated vertices belong to no block.
fn blocks(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for (k, &(a, b)) in edges.iter().enumerate() {
        adj[a].push((b, k));
        adj[b].push((a, k));
    }
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut out = Vec::new();
    let mut estack: Vec<usize> = Vec::new();
    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        // (vertex, edge to parent, next adjacency index)
        let mut stack: Vec<(usize, usize, usize)> = vec![(root, usize::MAX, 0)];
        while let Some(&mut (x, pe, ref mut i)) = stack.last_mut() {
            if *i < adj[x].len() {
                let (y, k) = adj[x][*i];
                *i += 1;
                if k == pe {
                    continue;
                }
                if disc[y] == usize::MAX {
                    estack.push(k);
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    stack.push((y, k, 0));
                } else if disc[y] < disc[x] {
                    estack.push(k);
                    low[x] = low[x].min(disc[y]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[x]);
                    if low[x] >= disc[parent] {
                        let mut block = Vec::new();
                        while let Some(k) = estack.pop() {
                            block.push(k);
                            if k == pe {
                                break;
                            }
                        }
                        out.push(block);
                    }
                }
            }
        }
    }
    out
}

/// Clockwise neighbour order at every vertex of one 2-connected block.
fn embed_block(edges: &[(usize, usize)]) -> Result<BTreeMap<usize, Vec<usize>>> {
    let mut adj: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    for l in adj.values_mut() {
        l.sort_unstable();
    }
    if edges.len() == 1 {
        let (a, b) = edges[0];
        return Ok(BTreeMap::from([(a, vec![b]), (b, vec![a])]));
    }
    let nv = adj.len();
    if edges.len() > 3 * nv - 6 {
        return Err(Error::NonPlanar);
    }
    let cycle = find_cycle(&adj);
    let mut in_h: BTreeSet<usize> = cycle.iter().copied().collect();
    let mut h_edges: BTreeSet<(usize, usize)> = BTreeSet::new();
    for i in 0..cycle.len() {
        h_edges.insert(ord(cycle[i], cycle[(i + 1) % cycle.len()]));
    }
    let mut faces: Vec<Vec<usize>> = vec![cycle.clone(), cycle.iter().rev().copied().collect()];
    while h_edges.len() < edges.len() {
        let fragments = fragments(&adj, &in_h, &h_edges);
        let mut choice: Option<(usize, usize)> = None;
        for (fi, frag) in fragments.iter().enumerate() {
            let admissible: Vec<usize> = (0..faces.len())
                .filter(|&f| frag.attachments.iter().all(|a| faces[f].contains(a)))
                .collect();
            match admissible.len() {
                0 => return Err(Error::NonPlanar),
                1 => {
                    choice = Some((fi, admissible[0]));
                    break;
                }
                _ => {
                    if choice.is_none() {
                        choice = Some((fi, admissible[0]));
                    }
                }
            }
        }
        let (fi, f) = choice.expect("some fragment remains");
        let path = fragment_path(&adj, &in_h, &fragments[fi]);
        for w in path.windows(2) {
            h_edges.insert(ord(w[0], w[1]));
        }
        in_h.extend(path.iter().copied());
        let face = faces.swap_remove(f);
        let (a, b) = (path[0], path[path.len() - 1]);
        let i = face.iter().position(|&x| x == a).unwrap();
        let j = face.iter().position(|&x| x == b).unwrap();
        let k = face.len();
        let inner = &path[1..path.len() - 1];
        // a .. b along the face, then back through the path
        let mut f1: Vec<usize> = (0..=(j + k - i) % k).map(|t| face[(i + t) % k]).collect();
        f1.extend(inner.iter().rev());
        let mut f2: Vec<usize> = (0..=(i + k - j) % k).map(|t| face[(j + t) % k]).collect();
        f2.extend(inner.iter());
        faces.push(f1);
        faces.push(f2);
    }
    if faces.len() != edges.len() + 2 - nv {
        return Err(Error::Internal("path addition broke Euler's relation".into()));
    }
    // a face walking x -> y -> z means z follows x clockwise at y
    let mut succ: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for face in &faces {
        let k = face.len();
        for t in 0..k {
            let (x, y, z) = (face[t], face[(t + 1) % k], face[(t + 2) % k]);
            succ.insert((y, x), z);
        }
    }
    let mut rot = BTreeMap::new();
    for (&y, nbrs) in &adj {
        let mut order = vec![nbrs[0]];
        let mut x = succ[&(y, nbrs[0])];
        while x != nbrs[0] {
            order.push(x);
            x = succ[&(y, x)];
        }
        if order.len() != nbrs.len() {
            return Err(Error::Internal(format!("rotation at {y} is not a single cycle")));
        }
        rot.insert(y, order);
    }
    Ok(rot)
}

fn ord(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Some simple cycle of a 2-connected block, closed by a non-tree edge.
fn find_cycle(adj: &BTreeMap<usize, Vec<usize>>) -> Vec<usize> {
    let root = *adj.keys().next().unwrap();
    let mut parent: BTreeMap<usize, usize> = BTreeMap::from([(root, root)]);
    let mut depth: BTreeMap<usize, usize> = BTreeMap::from([(root, 0)]);
    let mut stack = vec![root];
    while let Some(x) = stack.pop() {
        for &y in &adj[&x] {
            if y == parent[&x] {
                continue;
            }
            if depth.contains_key(&y) {
                if parent[&y] == x {
                    continue;
                }
                // close the cycle through the lowest common ancestor
                let (mut a, mut b) = (vec![x], vec![y]);
                let (mut ca, mut cb) = (x, y);
                while ca != cb {
                    if depth[&ca] >= depth[&cb] {
                        ca = parent[&ca];
                        a.push(ca);
                    } else {
                        cb = parent[&cb];
                        b.push(cb);
                    }
                }
                b.pop();
                a.extend(b.into_iter().rev());
                return a;
            }
            parent.insert(y, x);
            depth.insert(y, depth[&x] + 1);
            stack.push(y);
        }
    }
    unreachable!("2-connected block without a cycle")
}

struct Fragment {
    attachments: Vec<usize>,
    /// Interior vertices, empty for a single chord.
    interior: BTreeSet<usize>,
}

fn fragments(adj: &BTreeMap<usize, Vec<usize>>, in_h: &BTreeSet<usize>, h_edges: &BTreeSet<(usize, usize)>) -> Vec<Fragment> {
    let mut out = Vec::new();
    for (&a, nbrs) in adj {
        if !in_h.contains(&a) {
            continue;
        }
        for &b in nbrs {
            if a < b && in_h.contains(&b) && !h_edges.contains(&(a, b)) {
                out.push(Fragment { attachments: vec![a, b], interior: BTreeSet::new() });
            }
        }
    }
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    for &s in adj.keys() {
        if in_h.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut interior = BTreeSet::from([s]);
        let mut att = BTreeSet::new();
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[&x] {
                if in_h.contains(&y) {
                    att.insert(y);
                } else if seen.insert(y) {
                    interior.insert(y);
                    queue.push_back(y);
                }
            }
        }
        out.push(Fragment { attachments: att.into_iter().collect(), interior });
    }
    out
}

/// A path through the fragment between its two least attachments.
fn fragment_path(adj: &BTreeMap<usize, Vec<usize>>, in_h: &BTreeSet<usize>, frag: &Fragment) -> Vec<usize> {
    if frag.interior.is_empty() {
        return frag.attachments.clone();
    }
    let (a, b) = (frag.attachments[0], frag.attachments[1]);
    let mut prev: BTreeMap<usize, usize> = BTreeMap::new();
    let mut queue = VecDeque::new();
    for &y in &adj[&a] {
        if frag.interior.contains(&y) && !prev.contains_key(&y) {
            prev.insert(y, a);
            queue.push_back(y);
        }
    }
    while let Some(x) = queue.pop_front() {
        if adj[&x].contains(&b) {
            let mut path = vec![b, x];
            let mut c = x;
            while prev[&c] != a {
                c = prev[&c];
                path.push(c);
            }
            path.push(a);
            path.reverse();
            return path;
        }
        for &y in &adj[&x] {
            if !in_h.contains(&y) && !prev.contains_key(&y) {
                prev.insert(y, x);
                queue.push_back(y);
            }
        }
    }
    unreachable!("fragment attachments not linked through its interior")
}

fn check_simple(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Vec<(usize, usize)>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::with_capacity(edges.len());
    for &(a, b) in edges {
        if a.0 >= n || b.0 >= n {
            return Err(Error::InvalidArgument(format!("edge ({a}, {b}) out of range")));
        }
        if a == b {
            return Err(Error::Loop(a));
        }
        if !seen.insert(ord(a.0, b.0)) {
            return Err(Error::InvalidArgument(format!("parallel edge ({a}, {b}) needs an explicit rotation")));
        }
        out.push((a.0, b.0));
    }
    Ok(out)
}

/// Clockwise neighbour lists of a planar embedding of a simple graph.
fn neighbour_rotation(n: usize, edges: &[(usize, usize)]) -> Result<Vec<Vec<usize>>> {
    let mut rot = vec![Vec::new(); n];
    for block in blocks(n, edges) {
        let be: Vec<(usize, usize)> = block.iter().map(|&k| edges[k]).collect();
        for (v, order) in embed_block(&be)? {
            rot[v].extend(order);
        }
    }
    Ok(rot)
}

fn assemble(n: usize, edges: &[(usize, usize)], rot: &[Vec<usize>]) -> Result<EmbeddedMultigraph> {
    let mut dart_of: BTreeMap<(usize, usize), DartId> = BTreeMap::new();
    for (k, &(a, b)) in edges.iter().enumerate() {
        dart_of.insert((a, b), DartId(2 * k));
        dart_of.insert((b, a), DartId(2 * k + 1));
    }
    let rotation: Vec<Vec<DartId>> =
        (0..n).map(|v| rot[v].iter().map(|&w| dart_of[&(v, w)]).collect()).collect();
    let e: Vec<(VertexId, VertexId)> = edges.iter().map(|&(a, b)| (VertexId(a), VertexId(b))).collect();
    let g = EmbeddedMultigraph::from_parts(n, &e, &rotation)?;
    if !g.is_planar_embedding() {
        return Err(Error::Internal("assembled rotation is not planar".into()));
    }
    Ok(g)
}

/// A planar embedding of the simple graph on `0..n` with the given edges;
/// edge `k` owns darts `2k` and `2k + 1`.
pub fn embed(n: usize, edges: &[(VertexId, VertexId)]) -> Result<EmbeddedMultigraph> {
    let e = check_simple(n, edges)?;
    let rot = neighbour_rotation(n, &e)?;
    assemble(n, &e, &rot)
}

/// An embedding in which every component has all its vertices on one face:
/// embed with an extra vertex adjacent to everything, then drop it.
pub fn embed_outerplanar(n: usize, edges: &[(VertexId, VertexId)]) -> Result<EmbeddedMultigraph> {
    let e = check_simple(n, edges)?;
    let mut with_apex = e.clone();
    with_apex.extend((0..n).map(|v| (v, n)));
    let mut rot = match neighbour_rotation(n + 1, &with_apex) {
        Ok(r) => r,
        Err(Error::NonPlanar) => return Err(Error::NotOuterPlanar),
        Err(err) => return Err(err),
    };
    rot.pop();
    for l in rot.iter_mut() {
        l.retain(|&w| w != n);
    }
    assemble(n, &e, &rot)
}
