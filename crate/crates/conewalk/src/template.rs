//! Canonical combinatorial templates for the Platonic solids.
//!
//! Vertex numbering, face numbering, and cyclic face orders are all derived
//! from fixed coordinate tables so that every run (and every implementation
//! following the same convention) produces identical labels:
//!
//! * vertices are numbered by ascending lexicographic coordinate order,
//! * faces are the planar cycles of the convex hull, numbered by ascending
//!   lexicographic order of their sorted vertex lists,
//! * each face is listed counterclockwise as seen from outside the solid,
//!   starting at its smallest vertex index,
//! * `opposite(f)` is the face whose centroid is the negation of `f`'s
//!   (defined for the centrally symmetric solids, absent for the
//!   tetrahedron).

use thiserror::Error;

/// Golden ratio, used by the dodecahedron and icosahedron tables.
const PHI: f64 = 1.618_033_988_749_894_8;

/// Tolerance for coplanarity tests on the unit-scale coordinate tables.
const PLANE_EPS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PolyhedronKind {
    Tetrahedron,
    Cube,
    Octahedron,
    Dodecahedron,
    Icosahedron,
    Custom,
}

impl PolyhedronKind {
    pub const PLATONIC: [PolyhedronKind; 5] = [
        PolyhedronKind::Tetrahedron,
        PolyhedronKind::Cube,
        PolyhedronKind::Octahedron,
        PolyhedronKind::Dodecahedron,
        PolyhedronKind::Icosahedron,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PolyhedronKind::Tetrahedron => "tetrahedron",
            PolyhedronKind::Cube => "cube",
            PolyhedronKind::Octahedron => "octahedron",
            PolyhedronKind::Dodecahedron => "dodecahedron",
            PolyhedronKind::Icosahedron => "icosahedron",
            PolyhedronKind::Custom => "custom",
        }
    }

    /// Parses a solid name as used in complex documents and on the CLI.
    pub fn parse(s: &str) -> Option<Self> {
        Self::PLATONIC.into_iter().find(|k| k.name() == s)
    }

    /// Whether every face of the solid is a triangle.
    pub fn triangle_faced(self) -> bool {
        matches!(
            self,
            PolyhedronKind::Tetrahedron | PolyhedronKind::Octahedron | PolyhedronKind::Icosahedron
        )
    }
}

impl std::fmt::Display for PolyhedronKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum TemplateError {
    /// The template has no opposite-face involution (e.g. the tetrahedron).
    #[error("template {kind} has no opposite-face involution")]
    UnsupportedTemplate { kind: &'static str },
    #[error("invalid template: {0}")]
    Invalid(String),
}

/// A combinatorial polyhedron: faces as cyclic vertex lists plus derived
/// edge and adjacency tables. Immutable once built.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyhedronTemplate {
    kind: PolyhedronKind,
    /// Canonical coordinates; empty for custom templates.
    coords: Vec<[f64; 3]>,
    vertex_count: usize,
    faces: Vec<Vec<usize>>,
    /// Unordered vertex pairs, stored as (min, max), sorted.
    edges: Vec<(usize, usize)>,
    opposite: Option<Vec<usize>>,
    faces_of_vertex: Vec<Vec<usize>>,
    /// The two faces flanking each edge, in ascending order.
    faces_of_edge: Vec<[usize; 2]>,
}

impl PolyhedronTemplate {
    /// Builds the canonical template for one of the five Platonic solids.
    pub fn build(kind: PolyhedronKind) -> Self {
        let coords = canonical_coordinates(kind);
        let faces = hull_faces(&coords);
        let opposite = opposite_by_centroid(&coords, &faces);
        let template = Self::assemble(kind, coords, faces, opposite)
            .expect("canonical solid tables satisfy the template invariants");
        debug_assert!(template.validate().is_ok());
        template
    }

    /// Builds a custom template from explicit combinatorial data.
    pub fn from_parts(
        vertex_count: usize,
        faces: Vec<Vec<usize>>,
        opposite: Option<Vec<usize>>,
    ) -> Result<Self, TemplateError> {
        let t = Self::assemble(PolyhedronKind::Custom, Vec::new(), faces, opposite)?;
        if t.vertex_count != vertex_count {
            return Err(TemplateError::Invalid(format!(
                "faces reference {} vertices, expected {}",
                t.vertex_count, vertex_count
            )));
        }
        t.validate()?;
        Ok(t)
    }

    fn assemble(
        kind: PolyhedronKind,
        coords: Vec<[f64; 3]>,
        faces: Vec<Vec<usize>>,
        opposite: Option<Vec<usize>>,
    ) -> Result<Self, TemplateError> {
        let vertex_count = if coords.is_empty() {
            faces
                .iter()
                .flatten()
                .copied()
                .max()
                .map_or(0, |m| m + 1)
        } else {
            coords.len()
        };

        let mut edges: Vec<(usize, usize)> = Vec::new();
        for face in &faces {
            for (i, &v) in face.iter().enumerate() {
                let w = face[(i + 1) % face.len()];
                edges.push((v.min(w), v.max(w)));
            }
        }
        edges.sort_unstable();
        edges.dedup();

        let mut faces_of_vertex = vec![Vec::new(); vertex_count];
        for (fi, face) in faces.iter().enumerate() {
            for &v in face {
                if v >= vertex_count {
                    return Err(TemplateError::Invalid(format!(
                        "face {fi} references vertex {v} out of range"
                    )));
                }
                faces_of_vertex[v].push(fi);
            }
        }

        let mut faces_of_edge = vec![[usize::MAX; 2]; edges.len()];
        let mut edge_face_count = vec![0usize; edges.len()];
        for (fi, face) in faces.iter().enumerate() {
            for (i, &v) in face.iter().enumerate() {
                let w = face[(i + 1) % face.len()];
                let e = edge_lookup(&edges, v, w).ok_or_else(|| {
                    TemplateError::Invalid(format!("edge ({v},{w}) missing from table"))
                })?;
                if edge_face_count[e] < 2 {
                    faces_of_edge[e][edge_face_count[e]] = fi;
                }
                edge_face_count[e] += 1;
            }
        }
        for (e, &count) in edge_face_count.iter().enumerate() {
            if count != 2 {
                return Err(TemplateError::Invalid(format!(
                    "edge {:?} lies in {count} faces, expected 2",
                    edges[e]
                )));
            }
            faces_of_edge[e].sort_unstable();
        }

        Ok(Self {
            kind,
            coords,
            vertex_count,
            faces,
            edges,
            opposite,
            faces_of_vertex,
            faces_of_edge,
        })
    }

    pub fn kind(&self) -> PolyhedronKind {
        self.kind
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Cyclic vertex list of a face.
    pub fn face(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    /// Canonical coordinates; empty slice for custom templates.
    pub fn coords(&self) -> &[[f64; 3]] {
        &self.coords
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, v: usize, w: usize) -> Option<usize> {
        edge_lookup(&self.edges, v, w)
    }

    /// The faces containing a vertex (the vertex degree is their number).
    pub fn faces_of_vertex(&self, v: usize) -> &[usize] {
        &self.faces_of_vertex[v]
    }

    /// The two faces flanking an edge.
    pub fn faces_of_edge(&self, e: usize) -> [usize; 2] {
        self.faces_of_edge[e]
    }

    pub fn has_opposite(&self) -> bool {
        self.opposite.is_some()
    }

    /// The face opposite `f` under the central involution.
    pub fn opposite_face(&self, f: usize) -> Result<usize, TemplateError> {
        self.opposite
            .as_ref()
            .map(|o| o[f])
            .ok_or(TemplateError::UnsupportedTemplate {
                kind: self.kind.name(),
            })
    }

    /// Position of vertex `v` in face `f`'s cyclic list.
    pub fn position_in_face(&self, f: usize, v: usize) -> Option<usize> {
        self.faces[f].iter().position(|&x| x == v)
    }

    /// Whether faces `f` and `g` share an edge.
    pub fn faces_adjacent(&self, f: usize, g: usize) -> bool {
        f != g && self.shared_edge(f, g).is_some()
    }

    /// The edge shared by two faces, if any.
    pub fn shared_edge(&self, f: usize, g: usize) -> Option<usize> {
        self.faces_of_edge
            .iter()
            .position(|&pair| pair == [f.min(g), f.max(g)])
    }

    /// Whether two vertices lie on a common face.
    pub fn cofacial(&self, v: usize, w: usize) -> bool {
        self.faces_of_vertex[v]
            .iter()
            .any(|f| self.faces_of_vertex[w].contains(f))
    }

    /// Rechecks every template invariant.
    pub fn validate(&self) -> Result<(), TemplateError> {
        for (fi, face) in self.faces.iter().enumerate() {
            if face.len() < 3 {
                return Err(TemplateError::Invalid(format!("face {fi} has <3 vertices")));
            }
            let mut sorted = face.clone();
            sorted.sort_unstable();
            sorted.dedup();
            if sorted.len() != face.len() {
                return Err(TemplateError::Invalid(format!(
                    "face {fi} repeats a vertex"
                )));
            }
        }
        // Edge/face incidence was enforced during assembly; recheck degree
        // expectations for the canonical solids.
        if let Some(expected) = expected_counts(self.kind) {
            let (v, e, f, deg) = expected;
            if (self.vertex_count, self.edges.len(), self.faces.len()) != (v, e, f) {
                return Err(TemplateError::Invalid(format!(
                    "{} has counts V={} E={} F={}, expected V={v} E={e} F={f}",
                    self.kind,
                    self.vertex_count,
                    self.edges.len(),
                    self.faces.len()
                )));
            }
            for (vi, fs) in self.faces_of_vertex.iter().enumerate() {
                if fs.len() != deg {
                    return Err(TemplateError::Invalid(format!(
                        "vertex {vi} has degree {}, expected {deg}",
                        fs.len()
                    )));
                }
            }
        }
        if let Some(opp) = &self.opposite {
            if opp.len() != self.faces.len() {
                return Err(TemplateError::Invalid("opposite table length".into()));
            }
            for (f, &g) in opp.iter().enumerate() {
                if g >= self.faces.len() || g == f || opp[g] != f {
                    return Err(TemplateError::Invalid(format!(
                        "opposite is not a fixed-point-free involution at face {f}"
                    )));
                }
                if self.faces[f].iter().any(|v| self.faces[g].contains(v)) {
                    return Err(TemplateError::Invalid(format!(
                        "opposite faces {f} and {g} share a vertex"
                    )));
                }
            }
        }
        if matches!(
            self.kind,
            PolyhedronKind::Cube | PolyhedronKind::Dodecahedron
        ) && self.opposite.is_none()
        {
            return Err(TemplateError::Invalid(format!(
                "{} must carry an opposite-face involution",
                self.kind
            )));
        }
        Ok(())
    }
}

fn edge_lookup(edges: &[(usize, usize)], v: usize, w: usize) -> Option<usize> {
    let key = (v.min(w), v.max(w));
    edges.binary_search(&key).ok()
}

fn expected_counts(kind: PolyhedronKind) -> Option<(usize, usize, usize, usize)> {
    // (vertices, edges, faces, vertex degree)
    match kind {
        PolyhedronKind::Tetrahedron => Some((4, 6, 4, 3)),
        PolyhedronKind::Cube => Some((8, 12, 6, 3)),
        PolyhedronKind::Octahedron => Some((6, 12, 8, 4)),
        PolyhedronKind::Dodecahedron => Some((20, 30, 12, 3)),
        PolyhedronKind::Icosahedron => Some((12, 30, 20, 5)),
        PolyhedronKind::Custom => None,
    }
}

/// Coordinate tables, sorted lexicographically so that the vertex index is
/// the rank in that order.
fn canonical_coordinates(kind: PolyhedronKind) -> Vec<[f64; 3]> {
    let inv = PHI - 1.0; // 1/phi
    let mut pts: Vec<[f64; 3]> = match kind {
        PolyhedronKind::Tetrahedron => vec![
            [1.0, 1.0, 1.0],
            [1.0, -1.0, -1.0],
            [-1.0, 1.0, -1.0],
            [-1.0, -1.0, 1.0],
        ],
        PolyhedronKind::Cube => signs3(1.0, 1.0, 1.0),
        PolyhedronKind::Octahedron => vec![
            [1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, -1.0, 0.0],
            [0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0],
        ],
        PolyhedronKind::Dodecahedron => {
            let mut v = signs3(1.0, 1.0, 1.0);
            v.extend(signs2_yz(inv, PHI));
            v.extend(signs2_xy(inv, PHI));
            v.extend(signs2_zx(inv, PHI));
            v
        }
        PolyhedronKind::Icosahedron => {
            let mut v = signs2_yz(1.0, PHI);
            v.extend(signs2_xy(1.0, PHI));
            v.extend(signs2_zx(1.0, PHI));
            v
        }
        PolyhedronKind::Custom => panic!("custom templates have no canonical coordinates"),
    };
    pts.sort_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .map(|(x, y)| x.total_cmp(y))
            .find(|o| o.is_ne())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    pts
}

fn signs3(x: f64, y: f64, z: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for sx in [-1.0, 1.0] {
        for sy in [-1.0, 1.0] {
            for sz in [-1.0, 1.0] {
                out.push([sx * x, sy * y, sz * z]);
            }
        }
    }
    out
}

/// (0, ±a, ±b)
fn signs2_yz(a: f64, b: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for sa in [-1.0, 1.0] {
        for sb in [-1.0, 1.0] {
            out.push([0.0, sa * a, sb * b]);
        }
    }
    out
}

/// (±a, ±b, 0)
fn signs2_xy(a: f64, b: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for sa in [-1.0, 1.0] {
        for sb in [-1.0, 1.0] {
            out.push([sa * a, sb * b, 0.0]);
        }
    }
    out
}

/// (±b, 0, ±a)
fn signs2_zx(a: f64, b: f64) -> Vec<[f64; 3]> {
    let mut out = Vec::new();
    for sa in [-1.0, 1.0] {
        for sb in [-1.0, 1.0] {
            out.push([sb * b, 0.0, sa * a]);
        }
    }
    out
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

fn scale(a: [f64; 3], s: f64) -> [f64; 3] {
    [a[0] * s, a[1] * s, a[2] * s]
}

/// Extracts the hull facets of a convex, origin-centered vertex set by
/// enumerating supporting planes, then orders each facet counterclockwise
/// as seen from outside, starting at its smallest vertex index.
fn hull_faces(coords: &[[f64; 3]]) -> Vec<Vec<usize>> {
    let n = coords.len();
    let mut face_sets: Vec<Vec<usize>> = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            for k in (j + 1)..n {
                let nrm = cross(sub(coords[j], coords[i]), sub(coords[k], coords[i]));
                let len = norm(nrm);
                if len < 1e-9 {
                    continue;
                }
                let nrm = scale(nrm, 1.0 / len);
                let d: Vec<f64> = coords.iter().map(|&p| dot(nrm, sub(p, coords[i]))).collect();
                let all_below = d.iter().all(|&x| x <= PLANE_EPS);
                let all_above = d.iter().all(|&x| x >= -PLANE_EPS);
                if !(all_below || all_above) {
                    continue;
                }
                let mut members: Vec<usize> =
                    (0..n).filter(|&m| d[m].abs() <= PLANE_EPS).collect();
                members.sort_unstable();
                if !face_sets.contains(&members) {
                    face_sets.push(members);
                }
            }
        }
    }
    face_sets.sort();
    face_sets
        .into_iter()
        .map(|members| order_face_ccw(coords, &members))
        .collect()
}

fn order_face_ccw(coords: &[[f64; 3]], members: &[usize]) -> Vec<usize> {
    let m = members.len();
    let centroid = scale(
        members
            .iter()
            .fold([0.0; 3], |acc, &v| {
                [
                    acc[0] + coords[v][0],
                    acc[1] + coords[v][1],
                    acc[2] + coords[v][2],
                ]
            }),
        1.0 / m as f64,
    );
    // Outward plane normal: orient so it points away from the origin.
    let mut nrm = cross(
        sub(coords[members[1]], coords[members[0]]),
        sub(coords[members[2]], coords[members[0]]),
    );
    if dot(nrm, centroid) < 0.0 {
        nrm = scale(nrm, -1.0);
    }
    let nrm = scale(nrm, 1.0 / norm(nrm));
    let e1 = {
        let r = sub(coords[members[0]], centroid);
        scale(r, 1.0 / norm(r))
    };
    let e2 = cross(nrm, e1);
    let mut ordered = members.to_vec();
    ordered.sort_by(|&a, &b| {
        let ra = sub(coords[a], centroid);
        let rb = sub(coords[b], centroid);
        let ta = dot(ra, e2).atan2(dot(ra, e1));
        let tb = dot(rb, e2).atan2(dot(rb, e1));
        ta.total_cmp(&tb)
    });
    // Rotate so the smallest vertex index comes first.
    let start = ordered
        .iter()
        .enumerate()
        .min_by_key(|&(_, &v)| v)
        .map(|(i, _)| i)
        .unwrap();
    ordered.rotate_left(start);
    ordered
}

fn opposite_by_centroid(coords: &[[f64; 3]], faces: &[Vec<usize>]) -> Option<Vec<usize>> {
    let centroids: Vec<[f64; 3]> = faces
        .iter()
        .map(|face| {
            scale(
                face.iter().fold([0.0; 3], |acc, &v| {
                    [
                        acc[0] + coords[v][0],
                        acc[1] + coords[v][1],
                        acc[2] + coords[v][2],
                    ]
                }),
                1.0 / face.len() as f64,
            )
        })
        .collect();
    let mut opposite = vec![usize::MAX; faces.len()];
    for (f, cf) in centroids.iter().enumerate() {
        let hit = centroids
            .iter()
            .position(|cg| norm([cf[0] + cg[0], cf[1] + cg[1], cf[2] + cg[2]]) < PLANE_EPS)?;
        opposite[f] = hit;
    }
    Some(opposite)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_templates() -> Vec<PolyhedronTemplate> {
        PolyhedronKind::PLATONIC
            .into_iter()
            .map(PolyhedronTemplate::build)
            .collect()
    }

    #[test]
    fn counts_match_the_solids() {
        for t in all_templates() {
            t.validate().unwrap();
        }
        let cube = PolyhedronTemplate::build(PolyhedronKind::Cube);
        assert_eq!(cube.face_count(), 6);
        assert_eq!(cube.vertex_count(), 8);
        assert_eq!(cube.edge_count(), 12);
        assert!(cube.has_opposite());
        let dode = PolyhedronTemplate::build(PolyhedronKind::Dodecahedron);
        assert_eq!(dode.face_count(), 12);
        assert_eq!(dode.vertex_count(), 20);
        assert_eq!(dode.edge_count(), 30);
        for face in dode.faces() {
            assert_eq!(face.len(), 5);
        }
        for v in 0..20 {
            assert_eq!(dode.faces_of_vertex(v).len(), 3);
        }
    }

    #[test]
    fn opposite_is_a_fixed_point_free_involution() {
        for t in all_templates() {
            if t.kind() == PolyhedronKind::Tetrahedron {
                assert!(matches!(
                    t.opposite_face(0),
                    Err(TemplateError::UnsupportedTemplate { .. })
                ));
                continue;
            }
            for f in 0..t.face_count() {
                let g = t.opposite_face(f).unwrap();
                assert_ne!(f, g);
                assert_eq!(t.opposite_face(g).unwrap(), f);
                // Opposite faces are vertex-disjoint.
                assert!(!t.face(f).iter().any(|v| t.face(g).contains(v)));
            }
        }
    }

    #[test]
    fn cube_opposite_is_the_unique_disjoint_face() {
        let cube = PolyhedronTemplate::build(PolyhedronKind::Cube);
        for f in 0..6 {
            let disjoint: Vec<usize> = (0..6)
                .filter(|&g| g != f && !cube.face(f).iter().any(|v| cube.face(g).contains(v)))
                .collect();
            assert_eq!(disjoint, vec![cube.opposite_face(f).unwrap()]);
        }
    }

    #[test]
    fn faces_are_ccw_from_outside_and_start_at_min_vertex() {
        for t in all_templates() {
            for face in t.faces() {
                assert_eq!(*face.iter().min().unwrap(), face[0]);
                // Signed area against the outward normal is positive.
                let c = face.iter().fold([0.0; 3], |acc, &v| {
                    [
                        acc[0] + t.coords()[v][0],
                        acc[1] + t.coords()[v][1],
                        acc[2] + t.coords()[v][2],
                    ]
                });
                let c = scale(c, 1.0 / face.len() as f64);
                let mut area = [0.0; 3];
                for i in 0..face.len() {
                    let a = sub(t.coords()[face[i]], c);
                    let b = sub(t.coords()[face[(i + 1) % face.len()]], c);
                    let x = cross(a, b);
                    area = [area[0] + x[0], area[1] + x[1], area[2] + x[2]];
                }
                assert!(dot(area, c) > 0.0, "face wound clockwise in {}", t.kind());
            }
        }
    }

    #[test]
    fn build_is_deterministic() {
        for kind in PolyhedronKind::PLATONIC {
            let a = PolyhedronTemplate::build(kind);
            let b = PolyhedronTemplate::build(kind);
            assert_eq!(a, b);
        }
    }

    #[test]
    fn dodecahedron_vertex_of_a_face_edge_bounds_one_other_face() {
        // Each edge of a face is shared with exactly one neighboring face,
        // and each vertex of a pentagon lies on exactly two of its edges.
        let t = PolyhedronTemplate::build(PolyhedronKind::Dodecahedron);
        for f in 0..t.face_count() {
            let face = t.face(f);
            for i in 0..face.len() {
                let e = t.edge_index(face[i], face[(i + 1) % face.len()]).unwrap();
                let [a, b] = t.faces_of_edge(e);
                assert!(a == f || b == f);
            }
        }
    }

    #[test]
    fn from_parts_rejects_open_surfaces() {
        // A lone triangle: each edge lies in one face only.
        let err = PolyhedronTemplate::from_parts(3, vec![vec![0, 1, 2]], None);
        assert!(err.is_err());
    }

    #[test]
    fn from_parts_accepts_a_doubled_triangle() {
        let t = PolyhedronTemplate::from_parts(3, vec![vec![0, 1, 2], vec![0, 2, 1]], None).unwrap();
        assert_eq!(t.edge_count(), 3);
        assert_eq!(t.kind(), PolyhedronKind::Custom);
    }
}
