//! Brute-force ground truth: exact pathwidth by a vertex-separation dynamic
//! program over subsets, structural cutting pairs by deletion, and a
//! maximal outer-planarity check.

use crate::error::{Error, Result};
use crate::path_decomp::PathDecomposition;
use crate::planar::{components, cut_vertices, is_biconnected, EmbeddedMultigraph, VertexId};

pub const DEFAULT_NODE_CAP: usize = 22;

/// Size cap of the exact solver, overridable through `PWTRI_NODE_CAP`.
pub fn node_cap() -> usize {
    std::env::var("PWTRI_NODE_CAP").ok().and_then(|s| s.parse().ok()).unwrap_or(DEFAULT_NODE_CAP)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactWidthResult {
    pub width: usize,
    pub witness: PathDecomposition,
}

pub fn exact_pathwidth(g: &EmbeddedMultigraph) -> Result<ExactWidthResult> {
    exact_pathwidth_capped(g, node_cap())
}

pub fn exact_pathwidth_capped(g: &EmbeddedMultigraph, cap: usize) -> Result<ExactWidthResult> {
    let verts: Vec<VertexId> = g.vertices().collect();
    let n = verts.len();
    if n > cap || n > 30 {
        return Err(Error::SizeCap { n, cap: cap.min(30) });
    }
    if n == 0 {
        return Ok(ExactWidthResult { width: 0, witness: PathDecomposition::default() });
    }
    let mut index = vec![usize::MAX; g.vertex_bound()];
    for (i, v) in verts.iter().enumerate() {
        index[v.0] = i;
    }
    let mut nbr = vec![0u32; n];
    for (a, b) in g.simple_edges() {
        nbr[index[a.0]] |= 1 << index[b.0];
        nbr[index[b.0]] |= 1 << index[a.0];
    }
    let boundary = |s: u32| -> u32 {
        let mut out = 0;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            if nbr[v] & !s != 0 {
                out |= 1 << v;
            }
        }
        out
    };
    let full: u32 = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
    let mut f = vec![u8::MAX; 1usize << n];
    f[0] = 0;
    for s in 1..=full {
        let mut best = u8::MAX;
        let mut rest = s;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            best = best.min(f[(s ^ (1 << v)) as usize]);
        }
        f[s as usize] = best.max(boundary(s).count_ones() as u8);
    }
    // Backtrack an optimal order from the full set.
    let mut order = Vec::with_capacity(n);
    let mut s = full;
    while s != 0 {
        let target = f[s as usize];
        let mut rest = s;
        let mut pick = None;
        while rest != 0 {
            let v = rest.trailing_zeros();
            rest &= rest - 1;
            if f[(s ^ (1 << v)) as usize] <= target {
                pick = Some(v);
                break;
            }
        }
        let v = pick.expect("dp backtrack");
        order.push(v as usize);
        s ^= 1 << v;
    }
    order.reverse();
    let mut bags = Vec::with_capacity(n);
    let mut placed = 0u32;
    for &v in &order {
        let mut bag: Vec<VertexId> = Vec::new();
        let b = boundary(placed);
        for (i, &w) in verts.iter().enumerate() {
            if b & (1 << i) != 0 {
                bag.push(w);
            }
        }
        bag.push(verts[v]);
        bags.push(bag);
        placed |= 1 << v;
    }
    let witness = PathDecomposition::new(bags)?;
    let width = f[full as usize] as usize;
    debug_assert_eq!(witness.width(), width);
    Ok(ExactWidthResult { width, witness })
}

/// Pairs `{a, b}`, `a < b`, whose removal disconnects `g`, restricted to
/// pairs where neither vertex alone is a cut vertex. Empty for
/// disconnected graphs.
pub fn structural_cut_pairs(g: &EmbeddedMultigraph) -> Vec<(VertexId, VertexId)> {
    let Ok(cuts) = cut_vertices(g) else {
        return Vec::new();
    };
    let verts: Vec<VertexId> = g.vertices().filter(|v| !cuts.contains(v)).collect();
    let mut out = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for &b in &verts[i + 1..] {
            if crate::planar::components_avoiding(g, &[a, b]).len() >= 2 {
                out.push((a, b));
            }
        }
    }
    out
}

/// Simple, 2-connected, `|E| = 2|V| - 3`, and some face of the embedding is
/// a simple cycle through every vertex. `K1` and `K2` count as maximal.
pub fn is_maximal_outerplanar(g: &EmbeddedMultigraph) -> bool {
    let n = g.vertex_count();
    if !g.is_simple() {
        return false;
    }
    match n {
        0 | 1 => return g.edge_count() == 0,
        2 => return g.edge_count() == 1,
        _ => {}
    }
    if !is_biconnected(g) || g.edge_count() != 2 * n - 3 || components(g).len() != 1 {
        return false;
    }
    g.trace_faces().iter().any(|f| {
        if f.len() != n {
            return false;
        }
        let mut vs = f.vertices(g);
        vs.sort_unstable();
        vs.dedup();
        vs.len() == n
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn pw(g: &EmbeddedMultigraph) -> usize {
        let r = exact_pathwidth(g).unwrap();
        r.witness.check(g).unwrap();
        assert_eq!(r.witness.width(), r.width);
        r.width
    }

    /// Brute force over all vertex orders, independent of the subset DP.
    fn pw_by_permutations(g: &EmbeddedMultigraph) -> usize {
        let verts: Vec<VertexId> = g.vertices().collect();
        let adj = g.adjacency();
        let mut order: Vec<usize> = verts.iter().map(|v| v.0).collect();
        let mut best = usize::MAX;
        permute(&mut order, 0, &mut |ord| {
            let mut worst = 0;
            for i in 0..ord.len() {
                let later = &ord[i + 1..];
                let active = ord[..=i].iter().filter(|&&x| adj[x].iter().any(|y| later.contains(y))).count();
                worst = worst.max(active);
            }
            best = best.min(worst);
        });
        best
    }

    fn permute(a: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == a.len() {
            f(a);
            return;
        }
        for i in k..a.len() {
            a.swap(k, i);
            permute(a, k + 1, f);
            a.swap(k, i);
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(pw(&fixtures::path(4)), 1);
        assert_eq!(pw(&fixtures::cycle(4)), 2);
        assert_eq!(pw(&fixtures::complete4()), 3);
        assert_eq!(pw(&fixtures::octahedron()), 4);
        assert_eq!(pw(&fixtures::star(4)), 1);
        assert_eq!(pw(&fixtures::fan(5)), 2);
        assert_eq!(pw(&EmbeddedMultigraph::new(1)), 0);
    }

    #[test]
    fn closed_forms() {
        for n in 3..9 {
            assert_eq!(pw(&fixtures::cycle(n)), 2);
        }
        for k in 2..5 {
            assert_eq!(pw(&fixtures::grid(k)), k);
        }
        // complete binary trees: height h has pathwidth ceil(h / 2)
        for h in 1..4usize {
            let n = (1 << (h + 1)) - 1;
            let mut rot = vec![Vec::new(); n];
            for v in 1..n {
                rot[v].push((v - 1) / 2);
                rot[(v - 1) / 2].push(v);
            }
            let g = EmbeddedMultigraph::from_neighbor_rotation(&rot).unwrap();
            assert_eq!(pw(&g), h.div_ceil(2));
        }
    }

    #[test]
    fn dp_agrees_with_permutation_brute_force() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for n in 3..8 {
            for _ in 0..4 {
                let g = crate::generate::random_planar_connected(n, &mut rng);
                assert_eq!(pw(&g), pw_by_permutations(&g));
            }
        }
        assert_eq!(pw_by_permutations(&fixtures::octahedron()), 4);
    }

    #[test]
    fn size_cap() {
        let g = fixtures::path(6);
        assert_eq!(exact_pathwidth_capped(&g, 5), Err(Error::SizeCap { n: 6, cap: 5 }));
    }

    #[test]
    fn cut_pairs() {
        assert!(structural_cut_pairs(&fixtures::octahedron()).is_empty());
        // the shared edge, plus opposite corners of each square
        let pairs: Vec<(usize, usize)> =
            structural_cut_pairs(&fixtures::double_square()).into_iter().map(|(a, b)| (a.0, b.0)).collect();
        assert_eq!(pairs, vec![(0, 1), (0, 2), (0, 4), (1, 3), (1, 5)]);
        assert!(structural_cut_pairs(&fixtures::path(4)).is_empty());
        assert_eq!(structural_cut_pairs(&fixtures::cycle(4)), vec![(VertexId(0), VertexId(2)), (VertexId(1), VertexId(3))]);
    }

    #[test]
    fn maximal_outerplanar_checks() {
        let mut fan = fixtures::fan(5);
        assert!(is_maximal_outerplanar(&fan));
        fan.delete_edge(fan.darts_between(VertexId(0), VertexId(3))[0]).unwrap();
        assert!(!is_maximal_outerplanar(&fan));
        assert!(!is_maximal_outerplanar(&fixtures::cycle(4)));
        assert!(!is_maximal_outerplanar(&fixtures::complete4()));
        assert!(is_maximal_outerplanar(&fixtures::cycle(3)));
    }
}
