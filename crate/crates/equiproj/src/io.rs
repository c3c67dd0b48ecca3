//! OFF reading, OFF/OBJ/VRML writing.

use std::fmt::Write as _;

use thiserror::Error;

use crate::kernel::{Scalar, Tolerance, Vec3};
use crate::poly::{newell, BuildError, Polyhedron};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ReadError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Build(#[from] BuildError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MeshFormat {
    Off,
    Obj,
    Vrml,
}

impl std::str::FromStr for MeshFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "off" => Ok(MeshFormat::Off),
            "obj" => Ok(MeshFormat::Obj),
            "vrml" | "wrl" => Ok(MeshFormat::Vrml),
            other => Err(format!("unknown mesh format `{other}`")),
        }
    }
}

/// Non-empty lines with `#` comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn perr(line: usize, message: impl Into<String>) -> ReadError {
    ReadError::Parse { line, message: message.into() }
}

fn num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, ReadError> {
    tok.parse().map_err(|_| perr(line, format!("bad {what} `{tok}`")))
}

/// Parse OFF text into a validated polyhedron.
///
/// The edge count in the header is ignored. A mesh whose loops all run inward is flipped;
/// anything less consistent is left to `build` to reject.
pub fn read_off(text: &str, tol: Tolerance) -> Result<Polyhedron, ReadError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| perr(1, "empty input"))?;
    let rest = header.strip_prefix("OFF").ok_or_else(|| perr(hline, "missing OFF header"))?;
    let mut counts: Vec<&str> = rest.split_whitespace().collect();
    let mut cline = hline;
    if counts.is_empty() {
        let (l, c) = lines.next().ok_or_else(|| perr(hline, "missing counts"))?;
        cline = l;
        counts = c.split_whitespace().collect();
    }
    if counts.len() < 2 {
        return Err(perr(cline, "expected vertex and face counts"));
    }
    let nv: usize = num(cline, counts[0], "vertex count")?;
    let nf: usize = num(cline, counts[1], "face count")?;
    if let Some(e) = counts.get(2) {
        num::<usize>(cline, e, "edge count")?;
    }

    let mut vertices = Vec::with_capacity(nv.min(1 << 16));
    for _ in 0..nv {
        let (l, s) = lines.next().ok_or_else(|| perr(cline, format!("expected {nv} vertices")))?;
        let t: Vec<&str> = s.split_whitespace().collect();
        if t.len() < 3 {
            return Err(perr(l, "vertex needs three coordinates"));
        }
        let c: Vec<Scalar> = t[..3].iter().map(|x| num(l, x, "coordinate")).collect::<Result<_, _>>()?;
        vertices.push(Vec3::new(c[0], c[1], c[2]));
    }
    let mut faces = Vec::with_capacity(nf.min(1 << 16));
    let mut last = cline;
    for _ in 0..nf {
        let (l, s) = lines.next().ok_or_else(|| perr(last, format!("expected {nf} faces")))?;
        last = l;
        let mut t = s.split_whitespace();
        let n: usize = num(l, t.next().unwrap_or(""), "face size")?;
        let idx: Vec<usize> = t.by_ref().take(n).map(|x| num(l, x, "vertex index")).collect::<Result<_, _>>()?;
        if idx.len() != n {
            return Err(perr(l, format!("face lists {} of {n} indices", idx.len())));
        }
        if let Some(&i) = idx.iter().find(|&&i| i >= nv) {
            return Err(perr(l, format!("vertex index {i} out of range")));
        }
        faces.push(idx);
    }
    if let Some((l, _)) = lines.next() {
        return Err(perr(l, "trailing data"));
    }

    // all loops inward: signed volume is negative
    let signed: Scalar = faces.iter().map(|f| newell(&vertices, f).dot(vertices[f[0]])).sum();
    if signed < 0.0 {
        for f in &mut faces {
            f.reverse();
        }
    }
    Ok(Polyhedron::build(vertices, faces, tol)?)
}

pub fn write_off(p: &Polyhedron) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OFF");
    let _ = writeln!(s, "{} {} {}", p.vertices().len(), p.faces().len(), p.edges().len());
    for v in p.vertices() {
        let _ = writeln!(s, "{} {} {}", fmt(v.x), fmt(v.y), fmt(v.z));
    }
    for f in p.faces() {
        let _ = write!(s, "{}", f.len());
        for i in f {
            let _ = write!(s, " {i}");
        }
        s.push('\n');
    }
    s
}

pub fn write_obj(p: &Polyhedron) -> String {
    let mut s = String::new();
    for v in p.vertices() {
        let _ = writeln!(s, "v {} {} {}", fmt(v.x), fmt(v.y), fmt(v.z));
    }
    for f in p.faces() {
        s.push('f');
        for i in f {
            let _ = write!(s, " {}", i + 1);
        }
        s.push('\n');
    }
    s
}

pub fn write_vrml(p: &Polyhedron) -> String {
    let mut s =
        String::from("#VRML V2.0 utf8\nShape {\n  geometry IndexedFaceSet {\n    coord Coordinate {\n      point [\n");
    for v in p.vertices() {
        let _ = writeln!(s, "        {} {} {},", fmt(v.x), fmt(v.y), fmt(v.z));
    }
    s.push_str("      ]\n    }\n    coordIndex [\n");
    for f in p.faces() {
        s.push_str("     ");
        for i in f {
            let _ = write!(s, " {i},");
        }
        s.push_str(" -1,\n");
    }
    s.push_str("    ]\n  }\n}\n");
    s
}

pub fn write_mesh(p: &Polyhedron, format: MeshFormat) -> String {
    match format {
        MeshFormat::Off => write_off(p),
        MeshFormat::Obj => write_obj(p),
        MeshFormat::Vrml => write_vrml(p),
    }
}

// shortest text that parses back to the same f64
fn fmt(x: Scalar) -> String {
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:?}")
}
