#![no_main]

use equiproj::equi::decide;
use equiproj::{Polyhedron, Tolerance, Vec3};
use libfuzzer_sys::fuzz_target;

// small integer lattice so that valid solids actually turn up
fuzz_target!(|data: (Vec<[i8; 3]>, Vec<Vec<u8>>)| {
    let (pts, faces) = data;
    if pts.len() > 64 || faces.len() > 64 {
        return;
    }
    let vertices: Vec<Vec3> = pts.iter().map(|p| Vec3::new(p[0] as f64, p[1] as f64, p[2] as f64)).collect();
    let faces: Vec<Vec<usize>> = faces.into_iter().map(|f| f.into_iter().map(usize::from).collect()).collect();
    let tol = Tolerance::default();
    if let Ok(p) = Polyhedron::build(vertices, faces, tol) {
        assert!(p.volume() > 0.0);
        let _ = decide(&p, tol);
    }
});
