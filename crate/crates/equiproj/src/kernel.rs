//! Tolerant scalars, 3-vectors, predicates and convex hulls.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::{BuildError, Polyhedron};

pub type Scalar = f64;

/// Default absolute tolerance on normalized quantities.
pub const DEFAULT_EPS: Scalar = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum KernelError {
    #[error("zero-length vector")]
    ZeroVector,
    #[error("vectors are not parallel")]
    NotParallel,
    #[error("need at least {need} points, got {got}")]
    TooFewPoints { need: usize, got: usize },
    #[error("all points are collinear")]
    Collinear,
    #[error("all points are coplanar")]
    Coplanar,
    #[error("tolerance must lie in (0, 1e-3), got {0}")]
    BadTolerance(Scalar),
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("hull construction failed to close")]
    HullFailed,
    #[error("hull produced an invalid mesh: {0}")]
    Mesh(#[from] BuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[Scalar; 3]", into = "[Scalar; 3]")]
pub struct Vec3 {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl From<[Scalar; 3]> for Vec3 {
    fn from(a: [Scalar; 3]) -> Self {
        Vec3::new(a[0], a[1], a[2])
    }
}

impl From<Vec3> for [Scalar; 3] {
    fn from(v: Vec3) -> Self {
        [v.x, v.y, v.z]
    }
}

impl fmt::Display for Vec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

impl Vec3 {
    pub const ZERO: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 0.0 };
    pub const X: Vec3 = Vec3 { x: 1.0, y: 0.0, z: 0.0 };
    pub const Y: Vec3 = Vec3 { x: 0.0, y: 1.0, z: 0.0 };
    pub const Z: Vec3 = Vec3 { x: 0.0, y: 0.0, z: 1.0 };

    pub const fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        Vec3 { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> Scalar {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(self.y * o.z - self.z * o.y, self.z * o.x - self.x * o.z, self.x * o.y - self.y * o.x)
    }

    pub fn norm(self) -> Scalar {
        self.dot(self).sqrt()
    }

    pub fn norm_sq(self) -> Scalar {
        self.dot(self)
    }

    pub fn dist(self, o: Vec3) -> Scalar {
        (self - o).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite() && self.z.is_finite()
    }

    pub fn max_abs(self) -> Scalar {
        self.x.abs().max(self.y.abs()).max(self.z.abs())
    }

    /// Unit vector; zero and non-finite input is rejected.
    pub fn normalize(self) -> Result<Vec3, KernelError> {
        let n = self.norm();
        if !n.is_finite() {
            return Err(KernelError::NonFinite);
        }
        if n == 0.0 || n < Scalar::MIN_POSITIVE {
            return Err(KernelError::ZeroVector);
        }
        Ok(self / n)
    }

    /// Normalization for vectors known to be nonzero by construction.
    pub fn unit(self) -> Vec3 {
        self / self.norm()
    }

    /// Some unit vector orthogonal to `self`.
    pub fn any_orthogonal(self) -> Vec3 {
        let helper = if self.x.abs() < 0.6 * self.norm() { Vec3::X } else { Vec3::Y };
        self.cross(helper).unit()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for Vec3 {
    fn add_assign(&mut self, o: Vec3) {
        *self = *self + o;
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<Scalar> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: Scalar) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

impl Mul<Vec3> for Scalar {
    type Output = Vec3;
    fn mul(self, v: Vec3) -> Vec3 {
        v * self
    }
}

impl Div<Scalar> for Vec3 {
    type Output = Vec3;
    fn div(self, s: Scalar) -> Vec3 {
        Vec3::new(self.x / s, self.y / s, self.z / s)
    }
}

/// Absolute tolerance applied to normalized quantities.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    eps: Scalar,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance { eps: DEFAULT_EPS }
    }
}

impl Tolerance {
    pub fn new(eps: Scalar) -> Result<Self, KernelError> {
        if eps > 0.0 && eps < 1e-3 {
            Ok(Tolerance { eps })
        } else {
            Err(KernelError::BadTolerance(eps))
        }
    }

    pub fn eps(self) -> Scalar {
        self.eps
    }

    /// Length tolerance for data of characteristic size `scale`.
    pub fn len(self, scale: Scalar) -> Scalar {
        self.eps * scale.max(1.0)
    }
}

/// Characteristic size of a point set, used to scale length tolerances.
pub fn extent(points: &[Vec3]) -> Scalar {
    points.iter().fold(0.0, |m: Scalar, p| m.max(p.max_abs()))
}

pub fn parallel(u: Vec3, v: Vec3, tol: Tolerance) -> Result<bool, KernelError> {
    let (u, v) = (u.normalize()?, v.normalize()?);
    Ok(u.cross(v).norm() < tol.eps())
}

pub fn opposite_direction(u: Vec3, v: Vec3, tol: Tolerance) -> Result<bool, KernelError> {
    if !parallel(u, v, tol)? {
        return Err(KernelError::NotParallel);
    }
    Ok(u.unit().dot(v.unit()) < 0.0)
}

pub type P2 = [Scalar; 2];

fn cross2(o: P2, a: P2, b: P2) -> Scalar {
    (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
}

fn dist2(a: P2, b: P2) -> Scalar {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

/// Counter-clockwise hull as indices into `points`, collinear boundary points merged.
///
/// `dtol` is an absolute distance: a point closer than that to the chord of its
/// neighbours is dropped.
pub(crate) fn hull2d_indices(points: &[P2], dtol: Scalar) -> Result<Vec<usize>, KernelError> {
    if points.len() < 3 {
        return Err(KernelError::TooFewPoints { need: 3, got: points.len() });
    }
    if points.iter().any(|p| !p[0].is_finite() || !p[1].is_finite()) {
        return Err(KernelError::NonFinite);
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| points[i].partial_cmp(&points[j]).unwrap());
    order.dedup_by(|a, b| dist2(points[*a], points[*b]) <= dtol);
    if order.len() < 3 {
        return Err(KernelError::Collinear);
    }
    // monotone chain; pop while the middle point is not strictly left of the chord
    let keep = |h: &[usize], p: usize| {
        let (o, a) = (points[h[h.len() - 2]], points[h[h.len() - 1]]);
        let b = points[p];
        cross2(o, a, b) > dtol * dist2(o, b)
    };
    let mut lower: Vec<usize> = Vec::new();
    for &p in &order {
        while lower.len() >= 2 && !keep(&lower, p) {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &p in order.iter().rev() {
        while upper.len() >= 2 && !keep(&upper, p) {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(KernelError::Collinear);
    }
    Ok(lower)
}

/// Counter-clockwise convex hull with collinear boundary points merged.
pub fn hull2d(points: &[P2], tol: Tolerance) -> Result<Vec<P2>, KernelError> {
    let scale = points.iter().fold(0.0, |m: Scalar, p| m.max(p[0].abs()).max(p[1].abs()));
    let idx = hull2d_indices(points, tol.len(scale))?;
    Ok(idx.into_iter().map(|i| points[i]).collect())
}

/// Weld points closer than `dtol`; returns the representatives and the map.
pub(crate) fn weld(points: &[Vec3], dtol: Scalar) -> (Vec<Vec3>, Vec<usize>) {
    let mut reps: Vec<Vec3> = Vec::new();
    let mut map = Vec::with_capacity(points.len());
    for &p in points {
        match reps.iter().position(|r| r.dist(p) <= dtol) {
            Some(i) => map.push(i),
            None => {
                map.push(reps.len());
                reps.push(p);
            }
        }
    }
    (reps, map)
}

/// Rotate the plane {n·x = n·a} about the line through `a` along `e`, keeping all
/// points on the non-positive side, as far as it goes. Returns the new normal.
fn wrap(points: &[Vec3], a: Vec3, e: Vec3, n: Vec3, dtol: Scalar) -> Option<Vec3> {
    let o = e.cross(n);
    let mut best: Option<(Scalar, Vec3)> = None;
    for &p in points {
        let w = p - a;
        let x = w.dot(o);
        let y = w.dot(n);
        if x.hypot(y) <= dtol {
            continue;
        }
        let mut ang = x.atan2(y);
        if ang < 0.0 {
            ang += std::f64::consts::TAU;
        }
        if best.is_none_or(|(b, _)| ang < b) {
            best = Some((ang, p));
        }
    }
    let (ang, _) = best?;
    let phi = ang - std::f64::consts::FRAC_PI_2;
    Some((n * phi.cos() + o * phi.sin()).unit())
}

/// Maximal face on the supporting plane with normal `n` through `a`: CCW loop of point indices.
fn face_on_plane(points: &[Vec3], n: Vec3, a: Vec3, dtol: Scalar) -> Result<Vec<usize>, KernelError> {
    let u = n.any_orthogonal();
    let v = n.cross(u);
    let off = n.dot(a);
    let on: Vec<usize> = (0..points.len()).filter(|&i| (n.dot(points[i]) - off).abs() <= dtol).collect();
    let flat: Vec<P2> = on.iter().map(|&i| [points[i].dot(u), points[i].dot(v)]).collect();
    let loop_ = hull2d_indices(&flat, dtol)?;
    Ok(loop_.into_iter().map(|k| on[k]).collect())
}

/// Err unless the points span three dimensions.
fn classify_span(pts: &[Vec3], dtol: Scalar) -> Result<(), KernelError> {
    let far = |from: &dyn Fn(Vec3) -> Scalar| pts.iter().copied().max_by(|p, q| from(*p).total_cmp(&from(*q)));
    let Some(&p0) = pts.first() else { return Err(KernelError::TooFewPoints { need: 4, got: 0 }) };
    let p1 = far(&|p| p.dist(p0)).unwrap();
    if p1.dist(p0) <= dtol {
        return Err(KernelError::Collinear);
    }
    let u = (p1 - p0).unit();
    let off_line = |p: Vec3| (p - p0).cross(u).norm();
    let p2 = far(&off_line).unwrap();
    if off_line(p2) <= dtol {
        return Err(KernelError::Collinear);
    }
    let n = u.cross(p2 - p0).unit();
    if pts.iter().all(|p| n.dot(*p - p0).abs() <= dtol) {
        return Err(KernelError::Coplanar);
    }
    Ok(())
}

/// Convex hull with maximal (merged) faces, by gift wrapping across face edges.
pub fn hull3d(points: &[Vec3], tol: Tolerance) -> Result<Polyhedron, KernelError> {
    if points.len() < 4 {
        return Err(KernelError::TooFewPoints { need: 4, got: points.len() });
    }
    if points.iter().any(|p| !p.is_finite()) {
        return Err(KernelError::NonFinite);
    }
    let dtol = tol.len(extent(points));
    let (pts, _) = weld(points, dtol);
    classify_span(&pts, dtol)?;

    // first facet: support point in a generic direction, then two wraps
    let g = Vec3::new(std::f64::consts::FRAC_1_PI, 0.5772156649015329, 0.7548776662466927).unit();
    let a = *pts.iter().max_by(|p, q| p.dot(g).partial_cmp(&q.dot(g)).unwrap()).unwrap();
    let e0 = g.any_orthogonal();
    let n1 = wrap(&pts, a, e0, g, dtol).ok_or(KernelError::Coplanar)?;
    let on1: Vec<Vec3> = pts.iter().copied().filter(|p| (n1.dot(*p - a)).abs() <= dtol && p.dist(a) > dtol).collect();
    let b = *on1.iter().max_by(|p, q| p.dist(a).partial_cmp(&q.dist(a)).unwrap()).ok_or(KernelError::Collinear)?;
    let e1 = (b - a).unit();
    let n2 = wrap(&pts, a, e1, n1, dtol).ok_or(KernelError::Coplanar)?;
    if pts.iter().all(|p| (n2.dot(*p - a)).abs() <= dtol) {
        return Err(KernelError::Coplanar);
    }

    let mut faces: Vec<(Vec3, Vec<usize>)> = Vec::new();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut covered: HashSet<(usize, usize)> = HashSet::new();
    let mut queue: VecDeque<usize> = VecDeque::new();
    let mut tried: HashSet<(usize, usize)> = HashSet::new();

    let first = face_on_plane(&pts, n2, a, dtol).map_err(|_| KernelError::Coplanar)?;
    let mut pending = vec![(n2, first)];
    loop {
        for (n, f) in pending.drain(..) {
            let mut key = f.clone();
            key.sort_unstable();
            if seen.insert(key) {
                for i in 0..f.len() {
                    covered.insert((f[i], f[(i + 1) % f.len()]));
                }
                queue.push_back(faces.len());
                faces.push((n, f));
            }
        }
        // a closed convex surface on V vertices has at most 2V - 4 faces
        if faces.len() > 2 * pts.len() {
            return Err(KernelError::HullFailed);
        }
        let Some(fi) = queue.pop_front() else { break };
        let (n, f) = faces[fi].clone();
        for i in 0..f.len() {
            let (p, q) = (f[i], f[(i + 1) % f.len()]);
            if covered.contains(&(q, p)) || !tried.insert((p, q)) {
                continue;
            }
            let e = (pts[q] - pts[p]).unit();
            let m = wrap(&pts, pts[p], e, n, dtol).ok_or(KernelError::HullFailed)?;
            let g = face_on_plane(&pts, m, pts[p], dtol)?;
            pending.push((m, g));
            break;
        }
        if !pending.is_empty() {
            queue.push_front(fi);
        }
    }

    // compact to the vertices actually used
    let mut remap = vec![usize::MAX; pts.len()];
    let mut verts = Vec::new();
    let mut loops = Vec::with_capacity(faces.len());
    for (_, f) in &faces {
        let mut l = Vec::with_capacity(f.len());
        for &i in f {
            if remap[i] == usize::MAX {
                remap[i] = verts.len();
                verts.push(pts[i]);
            }
            l.push(remap[i]);
        }
        loops.push(l);
    }
    Ok(Polyhedron::build(verts, loops, tol)?)
}
