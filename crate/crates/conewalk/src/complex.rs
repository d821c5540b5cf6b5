//! Glued cell complexes and their derived quotient structure.
//!
//! A complex is a list of polyhedral cells plus a perfect matching of their
//! faces. Building one validates closedness and the dihedral shape of every
//! correspondence, then derives the 2-cells, the edge classes (union-find
//! over per-cell edges), the edge-end classes, and the ideal-vertex classes.
//! Everything is immutable after `build`, so reads are freely shareable.

use thiserror::Error;

use crate::template::{PolyhedronKind, PolyhedronTemplate};

/// One side of a gluing: a face of a cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceRef {
    pub cell: usize,
    pub face: usize,
}

impl FaceRef {
    pub fn new(cell: usize, face: usize) -> Self {
        Self { cell, face }
    }
}

impl std::fmt::Display for FaceRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(cell {}, face {})", self.cell, self.face)
    }
}

/// A face pairing. `corr[j]` is the position in face `b`'s cyclic vertex
/// list identified with position `j` of face `a`'s list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceGluing {
    pub a: FaceRef,
    pub b: FaceRef,
    pub corr: Vec<usize>,
}

impl FaceGluing {
    pub fn new(a: FaceRef, b: FaceRef, corr: Vec<usize>) -> Self {
        Self { a, b, corr }
    }

    /// Position map from one side to the other; `forward` means a-to-b.
    pub fn map_position(&self, forward: bool, pos: usize) -> usize {
        if forward {
            self.corr[pos]
        } else {
            self.corr.iter().position(|&p| p == pos).unwrap()
        }
    }

    /// Whether the correspondence reverses the cyclic order (a reflection).
    pub fn orientation_reversing(&self) -> bool {
        let m = self.corr.len();
        (self.corr[0] + 1) % m == self.corr[1] % m
    }
}

/// A 2-cell of the quotient: the image of one glued face pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoCell {
    pub a: FaceRef,
    pub b: FaceRef,
}

impl TwoCell {
    /// The representative on the other side from `side`.
    pub fn other(&self, side: FaceRef) -> FaceRef {
        if side == self.a {
            self.b
        } else {
            debug_assert_eq!(side, self.b);
            self.a
        }
    }

    pub fn sides(&self) -> [FaceRef; 2] {
        [self.a, self.b]
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ComplexError {
    #[error("face {0} is not glued to anything")]
    OpenComplex(FaceRef),
    #[error("face {0} appears in more than one gluing")]
    DoubleGluing(FaceRef),
    #[error("face {0} is glued to itself")]
    SelfGluedFace(FaceRef),
    #[error("gluing {index}: correspondence is not a dihedral symmetry")]
    CorrespondenceNotDihedral { index: usize },
    #[error("gluing {index}: face sizes differ ({a} vs {b})")]
    SizeMismatch { index: usize, a: usize, b: usize },
    #[error("gluing {index}: face reference {face} is out of range")]
    InvalidFaceRef { index: usize, face: FaceRef },
}

/// Union-find with path halving; no ranks, the instances here are tiny.
#[derive(Debug, Clone)]
struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // Point the larger root at the smaller for stable class ids.
            let (lo, hi) = (ra.min(rb), ra.max(rb));
            self.parent[hi] = lo;
        }
    }

    /// Dense class ids in order of first appearance.
    fn compress(mut self) -> (Vec<usize>, usize) {
        let n = self.parent.len();
        let mut id = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for x in 0..n {
            let r = self.find(x);
            if id[r] == usize::MAX {
                id[r] = next;
                next += 1;
            }
            out[x] = id[r];
        }
        (out, next)
    }
}

/// An immutable glued complex with its derived quotient structure.
#[derive(Debug, Clone)]
pub struct CellComplex {
    templates: Vec<PolyhedronTemplate>,
    cell_template: Vec<usize>,
    gluings: Vec<FaceGluing>,
    two_cells: Vec<TwoCell>,
    /// Per (cell, face): the 2-cell it belongs to.
    two_cell_of: Vec<Vec<usize>>,
    /// Flat offsets into the per-cell edge/vertex index spaces.
    edge_offset: Vec<usize>,
    vertex_offset: Vec<usize>,
    edge_class: Vec<usize>,
    edge_class_count: usize,
    /// Per edge slot and canonical end (0 = smaller vertex): the end class.
    end_class: Vec<[usize; 2]>,
    end_class_count: usize,
    vertex_class: Vec<usize>,
    vertex_class_count: usize,
}

impl CellComplex {
    /// Builds a complex whose cells are canonical Platonic solids.
    pub fn build(kinds: &[PolyhedronKind], gluings: Vec<FaceGluing>) -> Result<Self, ComplexError> {
        let mut templates: Vec<PolyhedronTemplate> = Vec::new();
        let mut cell_template = Vec::with_capacity(kinds.len());
        for &kind in kinds {
            let idx = match templates.iter().position(|t| t.kind() == kind) {
                Some(i) => i,
                None => {
                    templates.push(PolyhedronTemplate::build(kind));
                    templates.len() - 1
                }
            };
            cell_template.push(idx);
        }
        Self::build_with_templates(templates, cell_template, gluings)
    }

    /// Builds a complex from explicit templates (used for custom cells).
    pub fn build_with_templates(
        templates: Vec<PolyhedronTemplate>,
        cell_template: Vec<usize>,
        gluings: Vec<FaceGluing>,
    ) -> Result<Self, ComplexError> {
        let cell_count = cell_template.len();
        let template_of = |cell: usize| -> &PolyhedronTemplate { &templates[cell_template[cell]] };

        // Validate references and dihedral correspondences.
        for (index, g) in gluings.iter().enumerate() {
            for side in [g.a, g.b] {
                if side.cell >= cell_count || side.face >= template_of(side.cell).face_count() {
                    return Err(ComplexError::InvalidFaceRef { index, face: side });
                }
            }
            if g.a == g.b {
                return Err(ComplexError::SelfGluedFace(g.a));
            }
            let ma = template_of(g.a.cell).face(g.a.face).len();
            let mb = template_of(g.b.cell).face(g.b.face).len();
            if ma != mb || g.corr.len() != ma {
                return Err(ComplexError::SizeMismatch {
                    index,
                    a: ma,
                    b: mb,
                });
            }
            if !is_dihedral(&g.corr) {
                return Err(ComplexError::CorrespondenceNotDihedral { index });
            }
        }

        // Perfect matching on (cell, face).
        let mut two_cell_of: Vec<Vec<usize>> = (0..cell_count)
            .map(|c| vec![usize::MAX; template_of(c).face_count()])
            .collect();
        for (index, g) in gluings.iter().enumerate() {
            for side in [g.a, g.b] {
                let slot = &mut two_cell_of[side.cell][side.face];
                if *slot != usize::MAX {
                    return Err(ComplexError::DoubleGluing(side));
                }
                *slot = index;
            }
        }
        for (cell, faces) in two_cell_of.iter().enumerate() {
            for (face, &slot) in faces.iter().enumerate() {
                if slot == usize::MAX {
                    return Err(ComplexError::OpenComplex(FaceRef::new(cell, face)));
                }
            }
        }

        let two_cells: Vec<TwoCell> = gluings.iter().map(|g| TwoCell { a: g.a, b: g.b }).collect();

        // Flat index spaces for per-cell edges and vertices.
        let mut edge_offset = vec![0usize; cell_count + 1];
        let mut vertex_offset = vec![0usize; cell_count + 1];
        for c in 0..cell_count {
            edge_offset[c + 1] = edge_offset[c] + template_of(c).edge_count();
            vertex_offset[c + 1] = vertex_offset[c] + template_of(c).vertex_count();
        }

        let mut edge_uf = UnionFind::new(edge_offset[cell_count]);
        let mut end_uf = UnionFind::new(2 * edge_offset[cell_count]);
        let mut vertex_uf = UnionFind::new(vertex_offset[cell_count]);

        let end_slot = |edge_slot: usize, which: usize| 2 * edge_slot + which;

        for g in &gluings {
            let ta = template_of(g.a.cell);
            let tb = template_of(g.b.cell);
            let fa = ta.face(g.a.face);
            let fb = tb.face(g.b.face);
            let m = fa.len();
            for j in 0..m {
                let (va, va_next) = (fa[j], fa[(j + 1) % m]);
                let (vb, vb_next) = (fb[g.corr[j]], fb[g.corr[(j + 1) % m]]);
                let ea = edge_offset[g.a.cell] + ta.edge_index(va, va_next).unwrap();
                let eb = edge_offset[g.b.cell] + tb.edge_index(vb, vb_next).unwrap();
                edge_uf.union(ea, eb);
                // Endpoint va maps to vb; canonical end 0 is the smaller vertex.
                let enda = if va < va_next { 0 } else { 1 };
                let endb = if vb < vb_next { 0 } else { 1 };
                end_uf.union(end_slot(ea, enda), end_slot(eb, endb));
                vertex_uf.union(vertex_offset[g.a.cell] + va, vertex_offset[g.b.cell] + vb);
            }
        }

        let (edge_class, edge_class_count) = edge_uf.compress();
        let (end_flat, end_class_count) = end_uf.compress();
        let end_class: Vec<[usize; 2]> = (0..edge_offset[cell_count])
            .map(|e| [end_flat[2 * e], end_flat[2 * e + 1]])
            .collect();
        let (vertex_class, vertex_class_count) = vertex_uf.compress();

        Ok(Self {
            templates,
            cell_template,
            gluings,
            two_cells,
            two_cell_of,
            edge_offset,
            vertex_offset,
            edge_class,
            edge_class_count,
            end_class,
            end_class_count,
            vertex_class,
            vertex_class_count,
        })
    }

    pub fn cell_count(&self) -> usize {
        self.cell_template.len()
    }

    pub fn template(&self, cell: usize) -> &PolyhedronTemplate {
        &self.templates[self.cell_template[cell]]
    }

    pub fn kind(&self, cell: usize) -> PolyhedronKind {
        self.template(cell).kind()
    }

    pub fn gluings(&self) -> &[FaceGluing] {
        &self.gluings
    }

    pub fn two_cells(&self) -> &[TwoCell] {
        &self.two_cells
    }

    pub fn two_cell(&self, id: usize) -> &TwoCell {
        &self.two_cells[id]
    }

    /// The 2-cell containing a given face.
    pub fn two_cell_of(&self, side: FaceRef) -> usize {
        self.two_cell_of[side.cell][side.face]
    }

    pub fn gluing_of(&self, id: usize) -> &FaceGluing {
        &self.gluings[id]
    }

    /// Maps a vertex sitting on one side of a 2-cell to the other side.
    /// `v` must lie on `side`'s face.
    pub fn map_vertex_across(&self, id: usize, side: FaceRef, v: usize) -> usize {
        let g = &self.gluings[id];
        let forward = side == g.a;
        let from = self.template(side.cell);
        let to_side = if forward { g.b } else { g.a };
        let to = self.template(to_side.cell);
        let pos = from
            .position_in_face(side.face, v)
            .expect("vertex lies on the glued face");
        to.face(to_side.face)[g.map_position(forward, pos)]
    }

    pub fn edge_class_count(&self) -> usize {
        self.edge_class_count
    }

    pub fn edge_class(&self, cell: usize, edge: usize) -> usize {
        self.edge_class[self.edge_offset[cell] + edge]
    }

    pub fn end_class_count(&self) -> usize {
        self.end_class_count
    }

    /// End class of one endpoint of a cell edge. `vertex` must be an
    /// endpoint of that edge.
    pub fn end_class_at(&self, cell: usize, edge: usize, vertex: usize) -> usize {
        let (lo, hi) = self.template(cell).edges()[edge];
        let which = if vertex == lo {
            0
        } else {
            debug_assert_eq!(vertex, hi);
            1
        };
        self.end_class[self.edge_offset[cell] + edge][which]
    }

    /// The two end classes of an edge class. Returns one id twice when the
    /// identifications fold the edge onto itself.
    pub fn ends_of_edge_class(&self, class: usize) -> [usize; 2] {
        for slot in 0..self.edge_class.len() {
            if self.edge_class[slot] == class {
                return self.end_class[slot];
            }
        }
        unreachable!("edge class {class} has no members")
    }

    /// Whether some edge class has both of its ends identified.
    pub fn folded_edge_classes(&self) -> Vec<usize> {
        let mut folded: Vec<usize> = (0..self.edge_class.len())
            .filter(|&s| self.end_class[s][0] == self.end_class[s][1])
            .map(|s| self.edge_class[s])
            .collect();
        folded.sort_unstable();
        folded.dedup();
        folded
    }

    pub fn vertex_class_count(&self) -> usize {
        self.vertex_class_count
    }

    pub fn vertex_class(&self, cell: usize, vertex: usize) -> usize {
        self.vertex_class[self.vertex_offset[cell] + vertex]
    }

    /// All templates share an opposite-face involution.
    pub fn all_cells_have_opposites(&self) -> bool {
        self.templates.iter().all(|t| t.has_opposite())
    }

    pub fn all_cells_are(&self, kind: PolyhedronKind) -> bool {
        self.cell_template
            .iter()
            .all(|&i| self.templates[i].kind() == kind)
    }

    pub fn all_faces_triangles(&self) -> bool {
        self.cell_template
            .iter()
            .all(|&i| self.templates[i].faces().iter().all(|f| f.len() == 3))
    }

    /// Re-checks the invariants and summarizes the derived structure.
    pub fn validate(&self) -> ValidationReport {
        let cells = self.cell_count();
        let faces: usize = (0..cells).map(|c| self.template(c).face_count()).sum();
        let orientation_reversing = self.gluings.iter().all(FaceGluing::orientation_reversing);
        // Every (cell, face) in exactly one 2-cell; sides of each 2-cell distinct.
        let mut seen = vec![false; faces];
        let mut flat = 0;
        let mut matching_ok = true;
        for c in 0..cells {
            for f in 0..self.template(c).face_count() {
                let t = self.two_cell_of(FaceRef::new(c, f));
                let tc = self.two_cell(t);
                if !(tc.a == FaceRef::new(c, f) || tc.b == FaceRef::new(c, f)) {
                    matching_ok = false;
                }
                if seen[flat] {
                    matching_ok = false;
                }
                seen[flat] = true;
                flat += 1;
            }
        }
        let folded = self.folded_edge_classes();
        ValidationReport {
            cells,
            two_cells: self.two_cells.len(),
            edge_classes: self.edge_class_count,
            end_classes: self.end_class_count,
            vertex_classes: self.vertex_class_count,
            euler: self.vertex_class_count as i64 - self.edge_class_count as i64
                + self.two_cells.len() as i64
                - cells as i64,
            orientation_reversing,
            folded_edge_classes: folded.len(),
            matching_ok,
            ends_two_to_one: self.end_class_count == 2 * self.edge_class_count - folded.len(),
        }
    }
}

/// A dihedral position map sends cyclically adjacent positions to
/// cyclically adjacent positions with a constant step of +1 or -1.
fn is_dihedral(corr: &[usize]) -> bool {
    let m = corr.len();
    let mut seen = vec![false; m];
    for &p in corr {
        if p >= m || seen[p] {
            return false;
        }
        seen[p] = true;
    }
    if m <= 2 {
        return true;
    }
    let step = (corr[1] + m - corr[0]) % m;
    if step != 1 && step != m - 1 {
        return false;
    }
    (0..m).all(|j| (corr[j] + step) % m == corr[(j + 1) % m])
}

/// Findings of [`CellComplex::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub cells: usize,
    pub two_cells: usize,
    pub edge_classes: usize,
    pub end_classes: usize,
    pub vertex_classes: usize,
    /// V - E + F - C of the quotient complex.
    pub euler: i64,
    /// All correspondences reverse the cyclic order.
    pub orientation_reversing: bool,
    /// Edge classes whose two ends were identified with each other.
    pub folded_edge_classes: usize,
    pub matching_ok: bool,
    /// The end-class-to-edge-class map is 2-to-1.
    pub ends_two_to_one: bool,
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "cells {}", self.cells)?;
        writeln!(f, "two_cells {}", self.two_cells)?;
        writeln!(f, "edge_classes {}", self.edge_classes)?;
        writeln!(f, "edge_ends {}", self.end_classes)?;
        writeln!(f, "vertex_classes {}", self.vertex_classes)?;
        writeln!(f, "euler {}", self.euler)?;
        writeln!(f, "orientation_reversing {}", self.orientation_reversing)?;
        writeln!(f, "folded_edge_classes {}", self.folded_edge_classes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Glues two copies of a solid along all faces with the identity map.
    pub(crate) fn double(kind: PolyhedronKind) -> CellComplex {
        let t = PolyhedronTemplate::build(kind);
        let gluings = (0..t.face_count())
            .map(|f| {
                FaceGluing::new(
                    FaceRef::new(0, f),
                    FaceRef::new(1, f),
                    (0..t.face(f).len()).collect(),
                )
            })
            .collect();
        CellComplex::build(&[kind, kind], gluings).unwrap()
    }

    #[test]
    fn double_dodecahedron_has_the_expected_quotient() {
        let cx = double(PolyhedronKind::Dodecahedron);
        let report = cx.validate();
        assert_eq!(report.two_cells, 12);
        assert_eq!(report.edge_classes, 30);
        assert_eq!(report.vertex_classes, 20);
        assert_eq!(report.euler, 0);
        assert!(report.matching_ok);
        assert!(report.ends_two_to_one);
        assert_eq!(report.folded_edge_classes, 0);

        // Independent check of the edge classes: with identity gluings the
        // class of (cell, e) is exactly {(0, e), (1, e)}.
        for e in 0..30 {
            assert_eq!(cx.edge_class(0, e), cx.edge_class(1, e));
            for e2 in 0..30 {
                if e2 != e {
                    assert_ne!(cx.edge_class(0, e), cx.edge_class(0, e2));
                }
            }
        }
    }

    #[test]
    fn open_complex_is_rejected() {
        let t = PolyhedronTemplate::build(PolyhedronKind::Cube);
        let gluings: Vec<FaceGluing> = (0..t.face_count() - 1)
            .map(|f| {
                FaceGluing::new(
                    FaceRef::new(0, f),
                    FaceRef::new(1, f),
                    (0..t.face(f).len()).collect(),
                )
            })
            .collect();
        let err = CellComplex::build(&[PolyhedronKind::Cube, PolyhedronKind::Cube], gluings)
            .unwrap_err();
        assert!(matches!(err, ComplexError::OpenComplex(_)));
    }

    #[test]
    fn self_glued_face_is_rejected() {
        let gluings = vec![FaceGluing::new(
            FaceRef::new(0, 0),
            FaceRef::new(0, 0),
            vec![0, 1, 2, 3],
        )];
        let err = CellComplex::build(&[PolyhedronKind::Cube], gluings).unwrap_err();
        assert!(matches!(err, ComplexError::SelfGluedFace(_)));
    }

    #[test]
    fn double_gluing_is_rejected() {
        let t = PolyhedronTemplate::build(PolyhedronKind::Cube);
        let mut gluings: Vec<FaceGluing> = (0..t.face_count())
            .map(|f| {
                FaceGluing::new(
                    FaceRef::new(0, f),
                    FaceRef::new(1, f),
                    (0..4).collect(),
                )
            })
            .collect();
        gluings.push(FaceGluing::new(
            FaceRef::new(0, 0),
            FaceRef::new(1, 1),
            (0..4).collect(),
        ));
        let err = CellComplex::build(&[PolyhedronKind::Cube, PolyhedronKind::Cube], gluings)
            .unwrap_err();
        assert!(matches!(err, ComplexError::DoubleGluing(_)));
    }

    #[test]
    fn non_dihedral_correspondence_is_rejected() {
        let t = PolyhedronTemplate::build(PolyhedronKind::Cube);
        let mut gluings: Vec<FaceGluing> = (0..t.face_count())
            .map(|f| {
                FaceGluing::new(FaceRef::new(0, f), FaceRef::new(1, f), (0..4).collect())
            })
            .collect();
        gluings[0].corr = vec![0, 2, 1, 3]; // a transposition, not dihedral
        let err = CellComplex::build(&[PolyhedronKind::Cube, PolyhedronKind::Cube], gluings)
            .unwrap_err();
        assert!(matches!(
            err,
            ComplexError::CorrespondenceNotDihedral { index: 0 }
        ));
    }

    #[test]
    fn size_mismatch_is_rejected() {
        // Cube face (4-gon) against tetrahedron face (3-gon).
        let gluings = vec![FaceGluing::new(
            FaceRef::new(0, 0),
            FaceRef::new(1, 0),
            vec![0, 1, 2, 3],
        )];
        let err = CellComplex::build(
            &[PolyhedronKind::Cube, PolyhedronKind::Tetrahedron],
            gluings,
        )
        .unwrap_err();
        assert!(matches!(err, ComplexError::SizeMismatch { index: 0, .. }));
    }

    #[test]
    fn doubles_of_all_solids_have_f_equal_to_face_count(){
        for kind in PolyhedronKind::PLATONIC {
            let cx = double(kind);
            let t = PolyhedronTemplate::build(kind);
            let report = cx.validate();
            assert_eq!(report.two_cells, t.face_count());
            assert_eq!(report.edge_classes, t.edge_count());
            assert_eq!(report.vertex_classes, t.vertex_count());
            assert_eq!(report.euler, 0);
            assert!(report.ends_two_to_one);
        }
    }

    #[test]
    fn deterministic_rebuild_yields_identical_derived_ids() {
        let a = double(PolyhedronKind::Dodecahedron);
        let b = double(PolyhedronKind::Dodecahedron);
        for e in 0..30 {
            assert_eq!(a.edge_class(0, e), b.edge_class(0, e));
            assert_eq!(a.edge_class(1, e), b.edge_class(1, e));
        }
        for v in 0..20 {
            assert_eq!(a.vertex_class(0, v), b.vertex_class(0, v));
        }
    }

    #[test]
    fn map_vertex_across_respects_the_correspondence() {
        let cx = double(PolyhedronKind::Cube);
        let t = cx.template(0);
        for f in 0..6 {
            let id = cx.two_cell_of(FaceRef::new(0, f));
            for &v in t.face(f) {
                // Identity correspondence: same vertex id on the other cell.
                assert_eq!(cx.map_vertex_across(id, FaceRef::new(0, f), v), v);
                assert_eq!(cx.map_vertex_across(id, FaceRef::new(1, f), v), v);
            }
        }
    }
}
