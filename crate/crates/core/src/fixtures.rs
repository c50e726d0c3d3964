//! Small named instances shared by unit, integration and acceptance tests.

use crate::generate::{from_convex_polyhedron, from_drawing};
use crate::planar::{EmbeddedMultigraph, VertexId};

pub use crate::generate::{cycle, fan, grid, path, star};

pub fn complete4() -> EmbeddedMultigraph {
    let pts = [(0.0, 10.0), (-8.66, -5.0), (8.66, -5.0), (0.0, 0.0)];
    let edges = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    from_drawing(&pts, &edges)
}

/// Two triangles sharing the vertex returned alongside.
pub fn two_triangles() -> (EmbeddedMultigraph, VertexId) {
    let pts = [(0.0, 0.0), (-2.0, 1.0), (-2.0, -1.0), (2.0, 1.0), (2.0, -1.0)];
    let edges = [(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)];
    (from_drawing(&pts, &edges), VertexId(0))
}

/// Two 4-cycles `0-1-2-3` and `0-1-4-5` sharing the edge `(0, 1)`.
pub fn double_square() -> EmbeddedMultigraph {
    let pts = [(0.0, 1.0), (0.0, -1.0), (-2.0, -1.0), (-2.0, 1.0), (2.0, -1.0), (2.0, 1.0)];
    let edges = [(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 0)];
    from_drawing(&pts, &edges)
}

fn polyhedron_with_edge_length(points: Vec<[f64; 3]>, len2: f64) -> EmbeddedMultigraph {
    let mut edges = Vec::new();
    for a in 0..points.len() {
        for b in a + 1..points.len() {
            let d2: f64 = (0..3).map(|k| (points[a][k] - points[b][k]).powi(2)).sum();
            if (d2 - len2).abs() < 1e-9 {
                edges.push((a, b));
            }
        }
    }
    from_convex_polyhedron(&points, &edges)
}

pub fn octahedron() -> EmbeddedMultigraph {
    let pts = vec![
        [1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0],
        [0.0, 1.0, 0.0],
        [0.0, -1.0, 0.0],
        [0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0],
    ];
    polyhedron_with_edge_length(pts, 2.0)
}

pub fn icosahedron() -> EmbeddedMultigraph {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let mut pts = Vec::new();
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            pts.push([0.0, s1, s2 * phi]);
            pts.push([s1, s2 * phi, 0.0]);
            pts.push([s2 * phi, 0.0, s1]);
        }
    }
    polyhedron_with_edge_length(pts, 4.0)
}

/// `fan(5)` plus vertex `6` in the outer face, adjacent to the apex and to
/// every path vertex: a simple triangulation on 7 vertices.
pub fn triangulated_fan5() -> EmbeddedMultigraph {
    let mut g = fan(5);
    let outer = g.trace_faces().into_iter().find(|f| f.len() == 6).expect("outer face");
    let apex_out = outer.out_dart_at(&g, VertexId(0)).unwrap();
    let w = g.add_vertex();
    g.insert_edge(VertexId(0), Some(apex_out), w, None).unwrap();
    for x in 1..=5 {
        let face = g
            .trace_faces()
            .into_iter()
            .filter(|f| f.len() > 3)
            .find(|f| f.out_dart_at(&g, w).is_some() && f.out_dart_at(&g, VertexId(x)).is_some())
            .expect("outer vertex sees every path vertex");
        g.insert_chord(&face, w, VertexId(x)).unwrap();
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planar::{cut_vertices, is_multi_triangulated};

    #[test]
    fn named_instances_have_expected_counts() {
        let cases = [
            (complete4(), 4, 6),
            (octahedron(), 6, 12),
            (icosahedron(), 12, 30),
            (triangulated_fan5(), 7, 15),
            (double_square(), 6, 7),
            (two_triangles().0, 5, 6),
            (star(4), 5, 4),
        ];
        for (g, n, m) in cases {
            g.validate().unwrap();
            assert!(g.is_planar_embedding());
            assert_eq!((g.vertex_count(), g.edge_count()), (n, m));
        }
    }

    #[test]
    fn polyhedra_are_triangulations() {
        for g in [complete4(), octahedron(), icosahedron(), triangulated_fan5()] {
            assert!(is_multi_triangulated(&g).unwrap());
            assert!(cut_vertices(&g).unwrap().is_empty());
        }
    }
}
