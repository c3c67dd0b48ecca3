//! Independent oracles and frozen expected values shared by the integration tests.
//!
//! Nothing here calls the library's predicates: every check is recomputed from
//! raw coordinates and face loops.

#![allow(dead_code)]

pub mod golden;

use equiproj::equi::CompensationCertificate;
use equiproj::{Polyhedron, Tolerance, Vec3};

pub type P3 = [f64; 3];
pub type Duple = ((usize, usize), usize);

/// Coordinates and loops, detached from the library's types.
pub fn raw(p: &Polyhedron) -> (Vec<P3>, Vec<Vec<usize>>) {
    (p.vertices().iter().map(|v| [v.x, v.y, v.z]).collect(), p.faces().to_vec())
}

pub fn cert_pairs(p: &Polyhedron, c: &CompensationCertificate) -> Option<Vec<(Duple, Duple)>> {
    let r = |d: &equiproj::EdgeFaceDuple| (tuple(p.edge(d.edge).vertices), d.face);
    c.pairs().map(|ps| ps.iter().map(|(a, b)| (r(a), r(b))).collect())
}

fn tuple([a, b]: [usize; 2]) -> (usize, usize) {
    (a, b)
}

pub fn tol() -> Tolerance {
    Tolerance::default()
}

/// The cube [0,1]^3 with outward loops.
pub fn unit_cube() -> Polyhedron {
    let v = (0..8).map(|i| Vec3::new((i & 1) as f64, ((i >> 1) & 1) as f64, ((i >> 2) & 1) as f64)).collect();
    let f = vec![
        vec![0, 2, 3, 1],
        vec![4, 5, 7, 6],
        vec![0, 1, 5, 4],
        vec![2, 6, 7, 3],
        vec![0, 4, 6, 2],
        vec![1, 3, 7, 5],
    ];
    Polyhedron::build(v, f, tol()).unwrap()
}

/// Seeded points on the unit sphere.
pub fn sphere_points(n: usize, seed: u64) -> Vec<Vec3> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(n);
    while out.len() < n {
        let v = Vec3::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0));
        let r = v.norm();
        if r > 0.1 && r <= 1.0 {
            out.push(v / r);
        }
    }
    out
}

fn sub(a: P3, b: P3) -> P3 {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn dot(a: P3, b: P3) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: P3, b: P3) -> P3 {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}
fn unit(a: P3) -> P3 {
    let n = dot(a, a).sqrt();
    [a[0] / n, a[1] / n, a[2] / n]
}

/// Newell normal of a loop, normalized.
pub fn loop_normal(v: &[P3], f: &[usize]) -> P3 {
    let mut n = [0.0; 3];
    for i in 0..f.len() {
        let a = v[f[i]];
        let b = v[f[(i + 1) % f.len()]];
        n[0] += (a[1] - b[1]) * (a[2] + b[2]);
        n[1] += (a[2] - b[2]) * (a[0] + b[0]);
        n[2] += (a[0] - b[0]) * (a[1] + b[1]);
    }
    unit(n)
}

/// Direction of edge {a,b} as met walking face `f` clockwise seen from outside.
pub fn cw_direction(v: &[P3], f: &[usize], a: usize, b: usize) -> P3 {
    let n = f.len();
    for i in 0..n {
        let (p, q) = (f[i], f[(i + 1) % n]);
        if (p, q) == (a, b) || (p, q) == (b, a) {
            // stored loops are CCW from outside, so clockwise runs q -> p
            return unit(sub(v[p], v[q]));
        }
    }
    panic!("edge not on face");
}

const ORACLE_TOL: f64 = 1e-7;

fn par(a: P3, b: P3) -> bool {
    let c = cross(unit(a), unit(b));
    dot(c, c).sqrt() < ORACLE_TOL
}

/// Raw-geometry compensation test for duples ((a,b), f) and ((c,d), g).
pub fn compensates(v: &[P3], faces: &[Vec<usize>], d1: Duple, d2: Duple) -> bool {
    let ((a, b), f) = d1;
    let ((c, d), g) = d2;
    if !par(sub(v[b], v[a]), sub(v[d], v[c])) {
        return false;
    }
    if f != g {
        let nf = loop_normal(v, &faces[f]);
        let ng = loop_normal(v, &faces[g]);
        if !(par(nf, ng) && dot(nf, ng) < 0.0) {
            return false;
        }
    } else if [a.min(b), a.max(b)] == [c.min(d), c.max(d)] {
        return false;
    }
    let u = cw_direction(v, &faces[f], a, b);
    let w = cw_direction(v, &faces[g], c, d);
    dot(u, w) < 0.0
}

/// Every (edge, face) incidence appears in exactly one pair and each pair compensates.
pub fn certificate_is_sound(v: &[P3], faces: &[Vec<usize>], pairs: &[(Duple, Duple)]) -> Result<(), String> {
    use std::collections::BTreeMap;
    let mut seen: BTreeMap<((usize, usize), usize), usize> = BTreeMap::new();
    for (fi, f) in faces.iter().enumerate() {
        for i in 0..f.len() {
            let (a, b) = (f[i], f[(i + 1) % f.len()]);
            seen.insert(((a.min(b), a.max(b)), fi), 0);
        }
    }
    let norm = |((a, b), f): ((usize, usize), usize)| ((a.min(b), a.max(b)), f);
    for &(p, q) in pairs {
        for x in [p, q] {
            match seen.get_mut(&norm(x)) {
                Some(c) => *c += 1,
                None => return Err(format!("{x:?} is not an edge-face incidence")),
            }
        }
        if !compensates(v, faces, p, q) {
            return Err(format!("{p:?} and {q:?} do not compensate"));
        }
    }
    for (k, c) in seen {
        if c != 1 {
            return Err(format!("{k:?} used {c} times"));
        }
    }
    Ok(())
}

/// Shadow size by Jarvis march on the projected vertices, collinear points skipped.
pub fn jarvis_shadow(v: &[P3], d: P3) -> usize {
    let d = unit(d);
    let helper = if d[0].abs() < 0.6 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = unit(cross(d, helper));
    let e2 = cross(d, e1);
    let pts: Vec<(f64, f64)> = v.iter().map(|p| (dot(*p, e1), dot(*p, e2))).collect();
    let scale = pts.iter().fold(1.0f64, |m, p| m.max(p.0.abs()).max(p.1.abs()));
    let tol = 1e-9 * scale;
    let start = (0..pts.len()).min_by(|&i, &j| pts[i].partial_cmp(&pts[j]).unwrap()).unwrap();
    let mut count = 0;
    let mut cur = start;
    loop {
        // farthest point that keeps every other point on the left
        let mut best = if cur == 0 { 1 } else { 0 };
        for j in 0..pts.len() {
            if j == cur {
                continue;
            }
            let (ax, ay) = (pts[best].0 - pts[cur].0, pts[best].1 - pts[cur].1);
            let (bx, by) = (pts[j].0 - pts[cur].0, pts[j].1 - pts[cur].1);
            let c = ax * by - ay * bx;
            let la = (ax * ax + ay * ay).sqrt();
            let lb = (bx * bx + by * by).sqrt();
            let tie = c.abs() <= tol * la.max(lb);
            if la < tol || c < -tol * la.max(lb) || (tie && lb > la) {
                best = j;
            }
        }
        count += 1;
        cur = best;
        if (pts[cur].0 - pts[start].0).abs() < tol && (pts[cur].1 - pts[start].1).abs() < tol {
            break;
        }
        assert!(count <= pts.len(), "jarvis march did not close");
    }
    count
}

/// Number of distinct supporting planes through point triples (small inputs only).
pub fn brute_face_count(pts: &[P3]) -> usize {
    let mut planes: Vec<(P3, f64)> = Vec::new();
    let n = pts.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let c = cross(sub(pts[j], pts[i]), sub(pts[k], pts[i]));
                if dot(c, c).sqrt() < 1e-9 {
                    continue;
                }
                let mut nrm = unit(c);
                let mut off = dot(nrm, pts[i]);
                let above = pts.iter().filter(|p| dot(nrm, **p) - off > 1e-9).count();
                let below = pts.iter().filter(|p| dot(nrm, **p) - off < -1e-9).count();
                if above > 0 && below > 0 {
                    continue;
                }
                if above > 0 {
                    nrm = [-nrm[0], -nrm[1], -nrm[2]];
                    off = -off;
                }
                if !planes.iter().any(|(m, o)| dot(*m, nrm) > 1.0 - 1e-9 && (o - off).abs() < 1e-9) {
                    planes.push((nrm, off));
                }
            }
        }
    }
    planes.len()
}

/// Signed volume of a closed, outward-oriented mesh.
pub fn volume(v: &[P3], faces: &[Vec<usize>]) -> f64 {
    let mut s = 0.0;
    for f in faces {
        for i in 1..f.len() - 1 {
            s += dot(v[f[0]], cross(v[f[i]], v[f[i + 1]]));
        }
    }
    s / 6.0
}

/// Independent mesh check: closed 2-manifold with consistent loops, Euler,
/// planar faces, every vertex inside every face plane, positive volume.
pub fn mesh_is_valid(v: &[P3], faces: &[Vec<usize>], eps: f64) -> Result<(), String> {
    use std::collections::HashMap;
    let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
    for f in faces {
        if f.len() < 3 {
            return Err("short loop".into());
        }
        for i in 0..f.len() {
            *directed.entry((f[i], f[(i + 1) % f.len()])).or_default() += 1;
        }
    }
    for (&(a, b), &c) in &directed {
        if c != 1 || directed.get(&(b, a)) != Some(&1) {
            return Err(format!("edge ({a},{b}) is not shared by exactly one opposite loop"));
        }
    }
    let e = directed.len() / 2;
    if v.len() + faces.len() != e + 2 {
        return Err(format!("Euler: {} - {e} + {} != 2", v.len(), faces.len()));
    }
    let scale = v.iter().fold(1.0f64, |m, p| m.max(p[0].abs()).max(p[1].abs()).max(p[2].abs()));
    for (fi, f) in faces.iter().enumerate() {
        let n = loop_normal(v, f);
        let off = dot(n, v[f[0]]);
        for &i in f {
            if (dot(n, v[i]) - off).abs() > eps * scale {
                return Err(format!("face {fi} not planar at vertex {i}"));
            }
        }
        for (i, p) in v.iter().enumerate() {
            if dot(n, *p) - off > eps * scale {
                return Err(format!("vertex {i} outside face {fi}"));
            }
        }
    }
    if volume(v, faces) <= 0.0 {
        return Err("non-positive volume".into());
    }
    Ok(())
}
