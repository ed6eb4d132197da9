//! Cheap combinatorial necessary conditions for extremality of a curve.

use serde::Serialize;

use super::curve::{Curve, EdgeKind};
use crate::rigidity::pebble_game_23;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureReport {
    pub degrees: Vec<usize>,
    pub trivalent_vertices: usize,
    pub half_edges: usize,
    /// Two rays from one vertex whose dual edges share no endpoint.
    pub separating_half_edges: Option<(usize, usize)>,
    /// Number of sides of each face, i.e. degrees in the dual graph.
    pub face_sides: Vec<usize>,
    pub dual_graph_rigid: bool,
    /// Necessary conditions that fail; empty means all pass.
    pub violations: Vec<String>,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn structure_report(c: &Curve) -> StructureReport {
    let degrees = c.degrees();
    let trivalent = degrees.iter().filter(|&&d| d == 3).count();
    let half_edges = c
        .edges
        .iter()
        .filter(|e| matches!(e.kind, EdgeKind::Ray { .. }))
        .count();

    let sd = &c.subdivision;
    let mut separating = None;
    'outer: for (i, a) in c.edges.iter().enumerate() {
        let EdgeKind::Ray { from: va } = a.kind else { continue };
        for (j, b) in c.edges.iter().enumerate().skip(i + 1) {
            let EdgeKind::Ray { from: vb } = b.kind else { continue };
            let (da, db) = (&sd.edges[a.dual], &sd.edges[b.dual]);
            let share = [da.a, da.b].iter().any(|p| *p == db.a || *p == db.b);
            if va == vb && !share {
                separating = Some((i, j));
                break 'outer;
            }
        }
    }

    let graph = sd.graph_edges();
    let mut face_sides = vec![0; sd.vertices.len()];
    for &(u, v) in &graph {
        face_sides[u] += 1;
        face_sides[v] += 1;
    }
    let dual_graph_rigid = pebble_game_23(sd.vertices.len(), &graph).rigid;

    let mut violations = Vec::new();
    if !sd.degenerate {
        if trivalent == 0 {
            violations.push("no trivalent vertex".to_string());
        } else if trivalent == 1 {
            if half_edges != 3 {
                violations.push(format!("one trivalent vertex but {half_edges} half-edges"));
            }
            if degrees.iter().any(|&d| d != 3 && d != 4) {
                violations.push("one trivalent vertex and a vertex of degree other than 4".to_string());
            }
        }
        if face_sides.len() >= 7 && face_sides.iter().all(|&s| s <= 3) {
            violations.push(format!("{} faces, each with at most three sides", face_sides.len()));
        }
        if let Some((i, j)) = separating {
            violations.push(format!(
                "half-edges {} and {} share a vertex but no face",
                c.edge_id(i),
                c.edge_id(j)
            ));
        }
    }
    if !dual_graph_rigid {
        violations.push("dual graph is flexible in the plane".to_string());
    }
    StructureReport {
        degrees,
        trivalent_vertices: trivalent,
        half_edges,
        separating_half_edges: separating,
        face_sides,
        dual_graph_rigid,
        violations,
    }
}
