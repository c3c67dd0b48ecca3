//! Closed convex meshes with outward CCW face loops.

use std::collections::HashMap;

use thiserror::Error;

use crate::kernel::{extent, parallel, Scalar, Tolerance, Vec3};

pub type VertexId = usize;
pub type FaceId = usize;
pub type EdgeId = usize;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BuildError {
    #[error("non-finite coordinate at vertex {0}")]
    NonFinite(VertexId),
    #[error("face {face} refers to missing vertex {index}")]
    BadIndex { face: FaceId, index: usize },
    #[error("vertex {0} is not on any face")]
    UnusedVertex(VertexId),
    #[error("face {0} has fewer than three vertices or repeats one")]
    BadLoop(FaceId),
    #[error("open mesh: edge ({a},{b}) has only one incident face")]
    OpenMesh { a: VertexId, b: VertexId },
    #[error("edge ({a},{b}) has more than two incident faces")]
    NonManifold { a: VertexId, b: VertexId },
    #[error("inconsistent orientation at face {face}")]
    Orientation { face: FaceId },
    #[error("Euler characteristic V - E + F = {v} - {e} + {f} != 2")]
    Euler { v: usize, e: usize, f: usize },
    #[error("face {face} is not planar (deviation {deviation:e})")]
    NonPlanar { face: FaceId, deviation: Scalar },
    #[error("face {face} is not strictly convex at vertex {vertex}")]
    NonConvexFace { face: FaceId, vertex: VertexId },
    #[error("solid is not convex: vertex {vertex} lies {excess:e} outside face {face}")]
    NonConvexSolid { vertex: VertexId, face: FaceId, excess: Scalar },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    /// Vertex pair, smaller index first.
    pub vertices: [VertexId; 2],
    /// The two incident faces: `faces[0]` holds the directed edge `vertices[0] -> vertices[1]`.
    pub faces: [FaceId; 2],
}

#[derive(Debug, Clone)]
pub struct Polyhedron {
    vertices: Vec<Vec3>,
    faces: Vec<Vec<VertexId>>,
    edges: Vec<Edge>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
    normals: Vec<Vec3>,
    offsets: Vec<Scalar>,
}

/// Newell normal of a loop (unnormalized; length is twice the area).
pub(crate) fn newell(vertices: &[Vec3], f: &[VertexId]) -> Vec3 {
    let mut n = Vec3::ZERO;
    for i in 0..f.len() {
        let a = vertices[f[i]];
        let b = vertices[f[(i + 1) % f.len()]];
        n.x += (a.y - b.y) * (a.z + b.z);
        n.y += (a.z - b.z) * (a.x + b.x);
        n.z += (a.x - b.x) * (a.y + b.y);
    }
    n
}

impl Polyhedron {
    /// Validate and index a mesh. Rejects instead of repairing.
    pub fn build(vertices: Vec<Vec3>, faces: Vec<Vec<VertexId>>, tol: Tolerance) -> Result<Self, BuildError> {
        if let Some(i) = vertices.iter().position(|v| !v.is_finite()) {
            return Err(BuildError::NonFinite(i));
        }
        for (fi, f) in faces.iter().enumerate() {
            if let Some(&index) = f.iter().find(|&&i| i >= vertices.len()) {
                return Err(BuildError::BadIndex { face: fi, index });
            }
            let mut s = f.clone();
            s.sort_unstable();
            s.dedup();
            if f.len() < 3 || s.len() != f.len() {
                return Err(BuildError::BadLoop(fi));
            }
        }
        // without this a face-less point set passes the Euler check
        let mut used = vec![false; vertices.len()];
        faces.iter().flatten().for_each(|&i| used[i] = true);
        if let Some(i) = used.iter().position(|u| !u) {
            return Err(BuildError::UnusedVertex(i));
        }

        // directed edge -> face
        let mut directed: HashMap<(VertexId, VertexId), FaceId> = HashMap::new();
        let mut undirected: HashMap<(VertexId, VertexId), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                *undirected.entry((a.min(b), a.max(b))).or_default() += 1;
                directed.insert((a, b), fi);
            }
        }
        let mut keys: Vec<_> = undirected.keys().copied().collect();
        keys.sort_unstable();
        for &(a, b) in &keys {
            match undirected[&(a, b)] {
                1 => return Err(BuildError::OpenMesh { a, b }),
                2 => {}
                _ => return Err(BuildError::NonManifold { a, b }),
            }
        }
        let mut edges = Vec::with_capacity(keys.len());
        let mut edge_index = HashMap::with_capacity(keys.len());
        for &(a, b) in &keys {
            let (f0, f1) = match (directed.get(&(a, b)), directed.get(&(b, a))) {
                (Some(&f0), Some(&f1)) => (f0, f1),
                (Some(&f0), None) | (None, Some(&f0)) => return Err(BuildError::Orientation { face: f0 }),
                (None, None) => unreachable!(),
            };
            edge_index.insert((a, b), edges.len());
            edges.push(Edge { vertices: [a, b], faces: [f0, f1] });
        }

        let (v, e, f) = (vertices.len(), edges.len(), faces.len());
        if v + f != e + 2 {
            return Err(BuildError::Euler { v, e, f });
        }

        let dtol = tol.len(extent(&vertices));
        let mut normals = Vec::with_capacity(f);
        let mut offsets = Vec::with_capacity(f);
        for (fi, loop_) in faces.iter().enumerate() {
            let nn = newell(&vertices, loop_);
            if nn.norm() <= dtol * dtol {
                return Err(BuildError::NonConvexFace { face: fi, vertex: loop_[0] });
            }
            let n = nn.unit();
            let c = loop_.iter().fold(Vec3::ZERO, |s, &i| s + vertices[i]) / loop_.len() as Scalar;
            let deviation = loop_.iter().map(|&i| n.dot(vertices[i] - c).abs()).fold(0.0, Scalar::max);
            if deviation > dtol {
                return Err(BuildError::NonPlanar { face: fi, deviation });
            }
            let k = loop_.len();
            for i in 0..k {
                let (p, q, r) = (vertices[loop_[i]], vertices[loop_[(i + 1) % k]], vertices[loop_[(i + 2) % k]]);
                let (e1, e2) = (q - p, r - q);
                // sine of the turn must be clearly positive
                if e1.cross(e2).dot(n) <= tol.eps() * e1.norm() * e2.norm() {
                    return Err(BuildError::NonConvexFace { face: fi, vertex: loop_[(i + 1) % k] });
                }
            }
            normals.push(n);
            offsets.push(n.dot(c));
        }

        for (fi, (&n, &off)) in normals.iter().zip(&offsets).enumerate() {
            for (vi, &p) in vertices.iter().enumerate() {
                let excess = n.dot(p) - off;
                if excess > dtol {
                    return Err(BuildError::NonConvexSolid { vertex: vi, face: fi, excess });
                }
            }
        }

        let centroid = vertices.iter().fold(Vec3::ZERO, |s, &p| s + p) / v as Scalar;
        for (fi, (&n, &off)) in normals.iter().zip(&offsets).enumerate() {
            if off - n.dot(centroid) <= 0.0 {
                return Err(BuildError::Orientation { face: fi });
            }
        }

        Ok(Polyhedron { vertices, faces, edges, edge_index, normals, offsets })
    }

    pub fn vertices(&self) -> &[Vec3] {
        &self.vertices
    }

    pub fn faces(&self) -> &[Vec<VertexId>] {
        &self.faces
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    /// Edge id of the unordered pair {a, b}.
    pub fn edge_between(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    /// Unit outward normal.
    pub fn face_normal(&self, f: FaceId) -> Vec3 {
        self.normals[f]
    }

    /// Plane offset: the face lies in {x : normal·x = offset}.
    pub fn face_offset(&self, f: FaceId) -> Scalar {
        self.offsets[f]
    }

    pub fn face_centroid(&self, f: FaceId) -> Vec3 {
        let l = &self.faces[f];
        l.iter().fold(Vec3::ZERO, |s, &i| s + self.vertices[i]) / l.len() as Scalar
    }

    pub fn face_area(&self, f: FaceId) -> Scalar {
        newell(&self.vertices, &self.faces[f]).norm() / 2.0
    }

    /// Unordered pairs of distinct faces with parallel normals (hence distinct, opposite planes).
    pub fn parallel_face_pairs(&self, tol: Tolerance) -> Vec<(FaceId, FaceId)> {
        let mut out = Vec::new();
        for i in 0..self.faces.len() {
            for j in i + 1..self.faces.len() {
                if parallel(self.normals[i], self.normals[j], tol).unwrap_or(false) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn centroid(&self) -> Vec3 {
        self.vertices.iter().fold(Vec3::ZERO, |s, &p| s + p) / self.vertices.len() as Scalar
    }

    pub fn volume(&self) -> Scalar {
        let mut s = 0.0;
        for f in &self.faces {
            for i in 1..f.len() - 1 {
                s += self.vertices[f[0]].dot(self.vertices[f[i]].cross(self.vertices[f[i + 1]]));
            }
        }
        s / 6.0
    }

    /// Characteristic size for tolerance scaling.
    pub fn extent(&self) -> Scalar {
        extent(&self.vertices)
    }

    /// Faces sorted by size, e.g. `[(3, 4), (4, 6)]` for four triangles and six squares.
    pub fn face_census(&self) -> Vec<(usize, usize)> {
        let mut m: std::collections::BTreeMap<usize, usize> = Default::default();
        for f in &self.faces {
            *m.entry(f.len()).or_default() += 1;
        }
        m.into_iter().collect()
    }

    /// Apply an affine map x -> m x + t (m given by rows); orientation is kept if det(m) > 0.
    pub fn transformed(&self, m: [Vec3; 3], t: Vec3, tol: Tolerance) -> Result<Polyhedron, BuildError> {
        let det = m[0].dot(m[1].cross(m[2]));
        let verts = self.vertices.iter().map(|p| Vec3::new(m[0].dot(*p), m[1].dot(*p), m[2].dot(*p)) + t).collect();
        let faces = if det > 0.0 {
            self.faces.clone()
        } else {
            self.faces.iter().map(|f| f.iter().rev().copied().collect()).collect()
        };
        Polyhedron::build(verts, faces, tol)
    }
}

impl PartialEq for Polyhedron {
    fn eq(&self, o: &Self) -> bool {
        self.vertices == o.vertices && self.faces == o.faces
    }
}
