//! Silhouette counting and seeded sampling of projection directions.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::kernel::{hull2d_indices, KernelError, Tolerance, Vec3, P2};
use crate::poly::{EdgeId, FaceId, Polyhedron};

/// |n̂·d̂| below this marks d as parallel to a face.
pub const DEGENERATE_ANGLE: f64 = 1e-7;

pub const DEFAULT_SAMPLES: usize = 1000;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ShadowError {
    #[error("zero projection direction")]
    ZeroDirection,
    #[error("direction is parallel to face {face}")]
    Degenerate { face: FaceId },
    #[error("silhouette routes disagree: shadow hull has {hull} edges, sign changes give {edges}")]
    RouteMismatch { hull: usize, edges: usize },
    #[error("at least one sample is required")]
    NoSamples,
    #[error("more than 99% of sampled directions were degenerate")]
    Pathological,
    #[error(transparent)]
    Kernel(#[from] KernelError),
}

/// Faces whose planes contain direction `d`.
pub fn degenerate_faces(p: &Polyhedron, d: Vec3) -> Result<Vec<FaceId>, ShadowError> {
    let d = d.normalize().map_err(|_| ShadowError::ZeroDirection)?;
    Ok((0..p.faces().len()).filter(|&f| p.face_normal(f).dot(d).abs() < DEGENERATE_ANGLE).collect())
}

pub fn is_degenerate_direction(p: &Polyhedron, d: Vec3, _tol: Tolerance) -> Result<bool, ShadowError> {
    Ok(!degenerate_faces(p, d)?.is_empty())
}

fn check_direction(p: &Polyhedron, d: Vec3) -> Result<Vec3, ShadowError> {
    if let Some(&face) = degenerate_faces(p, d)?.first() {
        return Err(ShadowError::Degenerate { face });
    }
    Ok(d.unit())
}

/// Edges separating front faces from back faces.
pub fn silhouette_edges(p: &Polyhedron, d: Vec3) -> Result<Vec<EdgeId>, ShadowError> {
    let d = check_direction(p, d)?;
    Ok(p.edges()
        .iter()
        .enumerate()
        .filter(|(_, e)| p.face_normal(e.faces[0]).dot(d) * p.face_normal(e.faces[1]).dot(d) < 0.0)
        .map(|(i, _)| i)
        .collect())
}

/// Edge count of the shadow polygon: the 2D hull of the projected vertices.
pub fn shadow_polygon_size(p: &Polyhedron, d: Vec3, tol: Tolerance) -> Result<usize, ShadowError> {
    let d = check_direction(p, d)?;
    let u = d.any_orthogonal();
    let w = d.cross(u);
    let flat: Vec<P2> = p.vertices().iter().map(|v| [v.dot(u), v.dot(w)]).collect();
    Ok(hull2d_indices(&flat, tol.len(p.extent()))?.len())
}

/// Both silhouette routes: (shadow hull edge count, sign-change edge count).
pub fn silhouette_counts(p: &Polyhedron, d: Vec3, tol: Tolerance) -> Result<(usize, usize), ShadowError> {
    Ok((shadow_polygon_size(p, d, tol)?, silhouette_edges(p, d)?.len()))
}

pub fn silhouette_count(p: &Polyhedron, d: Vec3, tol: Tolerance) -> Result<usize, ShadowError> {
    let (hull, edges) = silhouette_counts(p, d, tol)?;
    if hull != edges {
        return Err(ShadowError::RouteMismatch { hull, edges });
    }
    Ok(hull)
}

/// `n` seeded uniform unit vectors (normalized Gaussian triples, ChaCha8),
/// resampling any that are degenerate for `p`.
pub fn sample_directions(n: usize, seed: u64, p: &Polyhedron, _tol: Tolerance) -> Result<Vec<Vec3>, ShadowError> {
    Ok(sample_counting(n, seed, p)?.0)
}

fn sample_counting(n: usize, seed: u64, p: &Polyhedron) -> Result<(Vec<Vec3>, usize), ShadowError> {
    if n == 0 {
        return Err(ShadowError::NoSamples);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    let mut rejected = 0usize;
    while out.len() < n {
        let v = Vec3::new(rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal));
        let Ok(u) = v.normalize() else { continue };
        if degenerate_faces(p, u)?.is_empty() {
            out.push(u);
        } else {
            rejected += 1;
            if rejected > 99 * n.max(1) {
                return Err(ShadowError::Pathological);
            }
        }
    }
    Ok((out, rejected))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    ConstantK(usize),
    /// Two sampled directions whose shadows differ in size.
    NonConstant {
        witness: [(Vec3, usize); 2],
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ShadowReport {
    pub samples: usize,
    pub per_direction: Vec<(Vec3, usize)>,
    pub verdict: Verdict,
    pub skipped_degenerate: usize,
}

impl ShadowReport {
    pub fn k(&self) -> Option<usize> {
        match self.verdict {
            Verdict::ConstantK(k) => Some(k),
            Verdict::NonConstant { .. } => None,
        }
    }
}

/// Shadow sizes over `n` seeded directions, evaluated in parallel, kept in sample order.
pub fn measure_k(p: &Polyhedron, n: usize, seed: u64, tol: Tolerance) -> Result<ShadowReport, ShadowError> {
    let (dirs, skipped_degenerate) = sample_counting(n, seed, p)?;
    let counts: Vec<Result<usize, ShadowError>> = dirs.par_iter().map(|&d| silhouette_count(p, d, tol)).collect();
    let mut per_direction = Vec::with_capacity(n);
    for (d, c) in dirs.into_iter().zip(counts) {
        per_direction.push((d, c?));
    }
    let verdict = match per_direction.iter().find(|(_, c)| *c != per_direction[0].1) {
        None => Verdict::ConstantK(per_direction[0].1),
        Some(&other) => Verdict::NonConstant { witness: [per_direction[0], other] },
    };
    Ok(ShadowReport { samples: n, per_direction, verdict, skipped_degenerate })
}
