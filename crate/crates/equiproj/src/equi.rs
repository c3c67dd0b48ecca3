//! Edge-face duples, compensation and the matching-based recognizer.

use serde::Serialize;
use thiserror::Error;

use crate::kernel::{parallel, Tolerance, Vec3};
use crate::poly::{EdgeId, FaceId, Polyhedron};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EdgeFaceDuple {
    pub edge: EdgeId,
    pub face: FaceId,
    /// Unit vector along the edge as met walking the face clockwise, seen from outside.
    pub direction: Vec3,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GraphError {
    #[error("duple {node} has {degree} compensating duples; at most two are possible")]
    DegreeExceeded { node: usize, degree: usize },
}

/// All 2E duples, two per edge in edge order.
pub fn enumerate_duples(p: &Polyhedron) -> Vec<EdgeFaceDuple> {
    let v = p.vertices();
    let mut out = Vec::with_capacity(2 * p.edges().len());
    for (ei, e) in p.edges().iter().enumerate() {
        let [a, b] = e.vertices;
        // faces[0] stores a -> b counter-clockwise, so clockwise runs b -> a
        let along = (v[b] - v[a]).unit();
        out.push(EdgeFaceDuple { edge: ei, face: e.faces[0], direction: -along });
        out.push(EdgeFaceDuple { edge: ei, face: e.faces[1], direction: along });
    }
    out
}

pub fn compensates(p: &Polyhedron, d1: &EdgeFaceDuple, d2: &EdgeFaceDuple, tol: Tolerance) -> bool {
    if d1.edge == d2.edge && d1.face == d2.face {
        return false;
    }
    if !parallel(d1.direction, d2.direction, tol).unwrap_or(false) {
        return false;
    }
    if d1.face != d2.face && !parallel(p.face_normal(d1.face), p.face_normal(d2.face), tol).unwrap_or(false) {
        return false;
    }
    d1.direction.dot(d2.direction) < 0.0
}

#[derive(Debug, Clone)]
pub struct CompensationGraph {
    pub nodes: Vec<EdgeFaceDuple>,
    pub adjacency: Vec<Vec<usize>>,
}

impl CompensationGraph {
    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }
}

fn graph_over(p: &Polyhedron, nodes: Vec<EdgeFaceDuple>, tol: Tolerance) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); nodes.len()];
    for i in 0..nodes.len() {
        for j in i + 1..nodes.len() {
            if compensates(p, &nodes[i], &nodes[j], tol) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

pub fn build_compensation_graph(p: &Polyhedron, tol: Tolerance) -> Result<CompensationGraph, GraphError> {
    let nodes = enumerate_duples(p);
    let adjacency = graph_over(p, nodes.clone(), tol);
    if let Some((node, a)) = adjacency.iter().enumerate().find(|(_, a)| a.len() > 2) {
        return Err(GraphError::DegreeExceeded { node, degree: a.len() });
    }
    Ok(CompensationGraph { nodes, adjacency })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CompensationCertificate {
    /// Perfect matching of all duples into compensating pairs.
    Certificate { pairs: Vec<(EdgeFaceDuple, EdgeFaceDuple)> },
    /// A component with an odd number of duples; `cycle` tells paths from cycles.
    Refutation { component: Vec<EdgeFaceDuple>, cycle: bool },
}

impl CompensationCertificate {
    pub fn is_certificate(&self) -> bool {
        matches!(self, CompensationCertificate::Certificate { .. })
    }

    pub fn pairs(&self) -> Option<&[(EdgeFaceDuple, EdgeFaceDuple)]> {
        match self {
            CompensationCertificate::Certificate { pairs } => Some(pairs),
            _ => None,
        }
    }
}

/// Nodes of an unmatchable component, and whether it is a cycle.
pub(crate) type OddComponent = (Vec<usize>, bool);

/// Perfect matching on a graph of max degree 2 by walking each path or cycle.
///
/// Components are visited by smallest node; each walk starts at its smallest
/// endpoint (paths) or smallest node heading to its smaller neighbour (cycles),
/// so on a cycle the chosen matching holds the lexicographically smallest pair.
pub(crate) fn match_by_walk(adj: &[Vec<usize>]) -> Result<Vec<(usize, usize)>, OddComponent> {
    let n = adj.len();
    let mut seen = vec![false; n];
    let mut pairs = Vec::with_capacity(n / 2);
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![s];
        seen[s] = true;
        let mut k = 0;
        while k < comp.len() {
            for &w in &adj[comp[k]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        let cycle = comp.iter().all(|&u| adj[u].len() == 2);
        let start = if cycle {
            *comp.iter().min().unwrap()
        } else {
            *comp.iter().filter(|&&u| adj[u].len() < 2).min().unwrap()
        };
        let mut walk = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = adj[cur].iter().copied().filter(|&w| w != prev && w != start).min();
            match next {
                Some(w) if walk.len() < comp.len() => {
                    walk.push(w);
                    prev = cur;
                    cur = w;
                }
                _ => break,
            }
        }
        if walk.len() % 2 == 1 {
            return Err((walk, cycle));
        }
        for c in walk.chunks(2) {
            pairs.push((c[0].min(c[1]), c[0].max(c[1])));
        }
    }
    pairs.sort_unstable();
    Ok(pairs)
}

/// Decide equiprojectivity: certificate iff the duples split into compensating pairs.
pub fn decide(p: &Polyhedron, tol: Tolerance) -> Result<CompensationCertificate, GraphError> {
    let g = build_compensation_graph(p, tol)?;
    Ok(match match_by_walk(&g.adjacency) {
        Ok(pairs) => CompensationCertificate::Certificate {
            pairs: pairs.into_iter().map(|(i, j)| (g.nodes[i], g.nodes[j])).collect(),
        },
        Err((comp, cycle)) => {
            CompensationCertificate::Refutation { component: comp.into_iter().map(|i| g.nodes[i]).collect(), cycle }
        }
    })
}

/// True iff the duples of face `f` pair off among themselves.
pub fn is_self_compensating(p: &Polyhedron, f: FaceId, tol: Tolerance) -> bool {
    let nodes: Vec<EdgeFaceDuple> = enumerate_duples(p).into_iter().filter(|d| d.face == f).collect();
    let adj = graph_over(p, nodes, tol);
    adj.iter().all(|a| a.len() <= 2) && match_by_walk(&adj).is_ok()
}
