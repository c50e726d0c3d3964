//! Instance generators: deterministic families built from straight-line
//! drawings, and seeded random planar families built by random vertex
//! insertion into a triangulation followed by constrained edge deletions.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::oracle;
use crate::planar::{components, cut_vertices, DartId, EmbeddedMultigraph, VertexId};

/// Embeds a straight-line drawing: neighbours are sorted clockwise by angle.
/// The caller guarantees the drawing is crossing-free.
pub fn from_drawing(points: &[(f64, f64)], edges: &[(usize, usize)]) -> EmbeddedMultigraph {
    let n = points.len();
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b) in edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let rotation: Vec<Vec<usize>> = nbrs
        .into_iter()
        .enumerate()
        .map(|(v, mut list)| {
            let (px, py) = points[v];
            let angle = |w: &usize| (points[*w].1 - py).atan2(points[*w].0 - px);
            list.sort_by(|a, b| angle(b).partial_cmp(&angle(a)).unwrap());
            list
        })
        .collect();
    EmbeddedMultigraph::from_neighbor_rotation(&rotation).expect("drawing yields a valid rotation")
}

/// Embeds the 1-skeleton of a convex polyhedron centred at the origin by
/// sorting neighbours by angle in each vertex's tangent plane.
pub fn from_convex_polyhedron(points: &[[f64; 3]], edges: &[(usize, usize)]) -> EmbeddedMultigraph {
    let n = points.len();
    let mut nbrs = vec![Vec::new(); n];
    for &(a, b) in edges {
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    let sub = |a: [f64; 3], b: [f64; 3]| [a[0] - b[0], a[1] - b[1], a[2] - b[2]];
    let dot = |a: [f64; 3], b: [f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let cross = |a: [f64; 3], b: [f64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let rotation: Vec<Vec<usize>> = nbrs
        .into_iter()
        .enumerate()
        .map(|(v, mut list)| {
            let normal = points[v];
            let r = sub(points[list[0]], points[v]);
            let e1 = sub(r, normal.map(|c| c * dot(r, normal) / dot(normal, normal)));
            let e2 = cross(normal, e1);
            let angle = |w: &usize| {
                let d = sub(points[*w], points[v]);
                dot(d, e2).atan2(dot(d, e1))
            };
            list.sort_by(|a, b| angle(b).partial_cmp(&angle(a)).unwrap());
            list
        })
        .collect();
    EmbeddedMultigraph::from_neighbor_rotation(&rotation).expect("polyhedron yields a valid rotation")
}

pub fn cycle(n: usize) -> EmbeddedMultigraph {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).filter(|&(a, b)| a != b).collect();
    if n == 2 {
        return from_drawing(&pts, &[(0, 1)]);
    }
    from_drawing(&pts, &edges)
}

pub fn path(n: usize) -> EmbeddedMultigraph {
    let pts: Vec<(f64, f64)> = (0..n).map(|i| (i as f64, 0.0)).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    from_drawing(&pts, &edges)
}

/// `k x k` grid; vertex `(r, c)` has id `r * k + c`.
pub fn grid(k: usize) -> EmbeddedMultigraph {
    let mut pts = Vec::new();
    let mut edges = Vec::new();
    for r in 0..k {
        for c in 0..k {
            pts.push((c as f64, r as f64));
            if c + 1 < k {
                edges.push((r * k + c, r * k + c + 1));
            }
            if r + 1 < k {
                edges.push((r * k + c, (r + 1) * k + c));
            }
        }
    }
    from_drawing(&pts, &edges)
}

/// Path `1..=n` plus apex `0` adjacent to every path vertex.
pub fn fan(n: usize) -> EmbeddedMultigraph {
    let mut pts = vec![(n as f64 / 2.0, 10.0)];
    pts.extend((1..=n).map(|i| (i as f64, 0.0)));
    let mut edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    edges.extend((2..=n).map(|i| (i - 1, i)));
    from_drawing(&pts, &edges)
}

/// `K_{1,n}` with centre `0`.
pub fn star(n: usize) -> EmbeddedMultigraph {
    let mut pts = vec![(0.0, 0.0)];
    pts.extend((0..n).map(|i| {
        let t = std::f64::consts::TAU * i as f64 / n as f64;
        (t.cos(), t.sin())
    }));
    let edges: Vec<(usize, usize)> = (1..=n).map(|i| (0, i)).collect();
    from_drawing(&pts, &edges)
}

fn random_face(g: &EmbeddedMultigraph, rng: &mut impl Rng) -> Vec<DartId> {
    let faces = g.trace_faces();
    faces[rng.gen_range(0..faces.len())].darts.clone()
}

/// Random simple triangulation on `n >= 3` vertices: stacked insertions into
/// random faces, then random edge flips.
pub fn random_triangulation(n: usize, rng: &mut impl Rng) -> EmbeddedMultigraph {
    assert!(n >= 3);
    let mut g = cycle(3);
    for _ in 3..n {
        let face = random_face(&g, rng);
        let (da, db, dc) = (face[0], face[1], face[2]);
        let (a, b, c) = (g.origin(da), g.origin(db), g.origin(dc));
        let w = g.add_vertex();
        g.insert_edge(a, Some(da), w, None).unwrap();
        let f = g.face_of(db);
        g.insert_chord(&f, w, b).unwrap();
        let f = g.face_of(dc);
        g.insert_chord(&f, w, c).unwrap();
    }
    let flips = 2 * n;
    for _ in 0..flips {
        let darts: Vec<DartId> = g.darts().collect();
        let d = *darts.choose(rng).unwrap();
        let (a, b) = (g.origin(d), g.target(d));
        if g.degree(a) <= 3 || g.degree(b) <= 3 {
            continue;
        }
        let c = g.target(g.face_next(d));
        let e = g.target(g.face_next(d.twin()));
        if c == e || g.has_edge(c, e) {
            continue;
        }
        g.delete_edge(d).unwrap();
        let quad = g.face_of(g.face_next(d.twin()));
        debug_assert_eq!(quad.len(), 4);
        g.insert_chord(&quad, c, e).unwrap();
    }
    g.compact();
    g
}

/// Deletes edges in random order, each with probability `keep_prob`
/// complement, as long as `still_ok` accepts the result.
fn thin(
    mut g: EmbeddedMultigraph,
    delete_prob: f64,
    rng: &mut impl Rng,
    still_ok: impl Fn(&EmbeddedMultigraph) -> bool,
) -> EmbeddedMultigraph {
    let mut edges: Vec<usize> = (0..g.dart_bound() / 2).collect();
    edges.shuffle(rng);
    for k in edges {
        let d = DartId(2 * k);
        if !g.is_dart(d) || !rng.gen_bool(delete_prob) {
            continue;
        }
        let mut h = g.clone();
        h.delete_edge(d).unwrap();
        if still_ok(&h) {
            g = h;
        }
    }
    g.compact();
    g
}

pub fn is_connected(g: &EmbeddedMultigraph) -> bool {
    components(g).len() <= 1
}

pub fn is_two_connected(g: &EmbeddedMultigraph) -> bool {
    crate::planar::is_biconnected(g)
}

pub fn is_three_connected(g: &EmbeddedMultigraph) -> bool {
    g.vertex_count() >= 4
        && matches!(cut_vertices(g), Ok(c) if c.is_empty())
        && oracle::structural_cut_pairs(g).is_empty()
}

pub fn random_planar_connected(n: usize, rng: &mut impl Rng) -> EmbeddedMultigraph {
    let g = random_triangulation(n, rng);
    let p = rng.gen_range(0.3..0.95);
    thin(g, p, rng, is_connected)
}

pub fn random_planar_2conn(n: usize, rng: &mut impl Rng) -> EmbeddedMultigraph {
    let g = random_triangulation(n, rng);
    let p = rng.gen_range(0.2..0.95);
    thin(g, p, rng, is_two_connected)
}

pub fn random_planar_3conn(n: usize, rng: &mut impl Rng) -> EmbeddedMultigraph {
    let g = random_triangulation(n, rng);
    let p = rng.gen_range(0.2..0.9);
    thin(g, p, rng, is_three_connected)
}

/// Random maximal outer-planar graph on a convex polygon, thinned while
/// connected. The embedding keeps every vertex on the outer face.
pub fn random_outerplanar(n: usize, rng: &mut impl Rng) -> EmbeddedMultigraph {
    let pts: Vec<(f64, f64)> = (0..n)
        .map(|i| {
            let t = std::f64::consts::TAU * i as f64 / n as f64;
            (t.cos(), t.sin())
        })
        .collect();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    if n == 2 {
        edges.push((0, 1));
    } else if n >= 3 {
        edges.extend((0..n).map(|i| (i, (i + 1) % n)));
        let mut stack = vec![(0usize, n - 1)];
        while let Some((lo, hi)) = stack.pop() {
            if hi - lo < 2 {
                continue;
            }
            let apex = rng.gen_range(lo + 1..hi);
            if apex - lo >= 2 {
                edges.push((lo, apex));
            }
            if hi - apex >= 2 {
                edges.push((apex, hi));
            }
            stack.push((lo, apex));
            stack.push((apex, hi));
        }
    }
    let g = from_drawing(&pts, &edges);
    let p = rng.gen_range(0.1..0.9);
    thin(g, p, rng, is_connected)
}

/// Appends `other` to `g`, identifying `other_at` with `g_at`. The rotation
/// of `other_at` is spliced into `g_at`'s rotation as one contiguous block.
pub fn glue(g: &EmbeddedMultigraph, g_at: VertexId, other: &EmbeddedMultigraph, other_at: VertexId) -> EmbeddedMultigraph {
    let mut a = g.clone();
    a.compact();
    let mut b = other.clone();
    b.compact();
    let na = a.vertex_bound();
    let map = |v: VertexId| {
        if v == other_at {
            g_at
        } else if v.0 < other_at.0 {
            VertexId(na + v.0)
        } else {
            VertexId(na + v.0 - 1)
        }
    };
    let n = na + b.vertex_bound() - 1;
    let offset = a.dart_bound();
    let mut edges = a.edges();
    edges.extend(b.edges().into_iter().map(|(x, y)| (map(x), map(y))));
    let mut rotation = vec![Vec::new(); n];
    for v in a.vertices() {
        rotation[v.0] = a.rotation(v);
    }
    for v in b.vertices() {
        let shifted: Vec<DartId> = b.rotation(v).into_iter().map(|d| DartId(d.0 + offset)).collect();
        rotation[map(v).0].extend(shifted);
    }
    EmbeddedMultigraph::from_parts(n, &edges, &rotation).expect("gluing keeps a valid rotation")
}

/// Random tree of blocks: bridges, cycles and small 2-connected planar
/// pieces glued at random vertices. Rich in cut vertices.
pub fn random_block_tree(n: usize, rng: &mut impl Rng) -> EmbeddedMultigraph {
    let mut g = EmbeddedMultigraph::new(1);
    while g.vertex_count() < n {
        let room = n - g.vertex_count();
        let piece = match rng.gen_range(0..3) {
            0 => path(2),
            1 if room >= 2 => cycle(rng.gen_range(3..=(room + 1).min(6))),
            _ if room >= 3 => random_planar_2conn(rng.gen_range(4..=(room + 1).min(7)), rng),
            _ => path(2),
        };
        let at = VertexId(rng.gen_range(0..g.vertex_bound()));
        let other_at = VertexId(rng.gen_range(0..piece.vertex_bound()));
        g = glue(&g, at, &piece, other_at);
    }
    g
}

/// Families exposed on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    Cycle,
    Path,
    Grid,
    Fan,
    Star,
    RandomOuterplanar,
    RandomPlanar2Conn,
    RandomPlanar3Conn,
    RandomPlanar,
    RandomBlockTree,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "cycle" => Family::Cycle,
            "path" => Family::Path,
            "grid" => Family::Grid,
            "fan" => Family::Fan,
            "star" => Family::Star,
            "random-outerplanar" => Family::RandomOuterplanar,
            "random-planar-2conn" => Family::RandomPlanar2Conn,
            "random-planar-3conn" => Family::RandomPlanar3Conn,
            "random-planar" => Family::RandomPlanar,
            "random-block-tree" => Family::RandomBlockTree,
            other => return Err(Error::InvalidArgument(format!("unknown family '{other}'"))),
        })
    }
}

pub fn generate(family: Family, n: usize, seed: u64) -> Result<EmbeddedMultigraph> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let min = match family {
        Family::Cycle => 3,
        Family::Path | Family::Grid | Family::Fan | Family::Star | Family::RandomOuterplanar => 1,
        Family::RandomPlanar2Conn | Family::RandomPlanar | Family::RandomBlockTree => 3,
        Family::RandomPlanar3Conn => 4,
    };
    if n < min {
        return Err(Error::InvalidArgument(format!("{family:?} needs n >= {min}")));
    }
    Ok(match family {
        Family::Cycle => cycle(n),
        Family::Path => path(n),
        Family::Grid => grid(n),
        Family::Fan => fan(n),
        Family::Star => star(n),
        Family::RandomOuterplanar => random_outerplanar(n, &mut rng),
        Family::RandomPlanar2Conn => random_planar_2conn(n, &mut rng),
        Family::RandomPlanar3Conn => random_planar_3conn(n, &mut rng),
        Family::RandomPlanar => random_planar_connected(n, &mut rng),
        Family::RandomBlockTree => random_block_tree(n, &mut rng),
    })
}
