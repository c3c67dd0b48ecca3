#![no_main]

use equiproj::kernel::hull3d;
use equiproj::{Polyhedron, Tolerance, Vec3};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|pts: Vec<(f32, f32, f32)>| {
    if pts.len() > 200 {
        return;
    }
    let pts: Vec<Vec3> = pts.iter().map(|&(x, y, z)| Vec3::new(x as f64, y as f64, z as f64)).collect();
    if pts.iter().any(|p| !(p.x.is_finite() && p.y.is_finite() && p.z.is_finite()) || p.norm() > 1e6) {
        return;
    }
    let tol = Tolerance::default();
    if let Ok(h) = hull3d(&pts, tol) {
        let again = Polyhedron::build(h.vertices().to_vec(), h.faces().to_vec(), tol).expect("hull rebuilds");
        assert_eq!(again, h);
    }
});
