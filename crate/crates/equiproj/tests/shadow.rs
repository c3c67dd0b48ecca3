mod common;

use common::golden::{SAMPLES, SEED};
use common::{jarvis_shadow, raw, sphere_points, tol, unit_cube};
use equiproj::build::{generate, prism, tetrahedron, Params};
use equiproj::kernel::hull3d;
use equiproj::shadow::{
    degenerate_faces, is_degenerate_direction, measure_k, sample_directions, silhouette_count, silhouette_counts,
    ShadowError, Verdict,
};
use equiproj::Vec3;

fn v(x: f64, y: f64, z: f64) -> Vec3 {
    Vec3::new(x, y, z)
}

#[test]
fn degenerate_direction_examples() {
    let c = unit_cube();
    assert!(is_degenerate_direction(&c, Vec3::Z, tol()).unwrap());
    assert_eq!(degenerate_faces(&c, Vec3::Z).unwrap().len(), 4);
    assert!(!is_degenerate_direction(&c, v(1.0, 1.0, 1.0), tol()).unwrap());
    assert!(is_degenerate_direction(&prism(3, 1.0, 1.0).unwrap(), Vec3::Z, tol()).unwrap());
    assert_eq!(degenerate_faces(&c, Vec3::ZERO), Err(ShadowError::ZeroDirection));
}

#[test]
fn silhouette_examples() {
    let c = unit_cube();
    assert_eq!(silhouette_count(&c, v(1.0, 1.0, 1.0), tol()).unwrap(), 6);
    assert_eq!(silhouette_count(&c, v(1.0, 0.3, 0.2), tol()).unwrap(), 6);
    assert_eq!(silhouette_count(&prism(3, 1.0, 1.0).unwrap(), v(0.2, 0.3, 1.0), tol()).unwrap(), 5);
    assert!(matches!(silhouette_count(&c, Vec3::X, tol()), Err(ShadowError::Degenerate { .. })));
}

#[test]
fn sampling_examples() {
    let c = unit_cube();
    let a = sample_directions(SAMPLES, SEED, &c, tol()).unwrap();
    assert_eq!(a.len(), SAMPLES);
    assert!(a.iter().all(|d| (d.norm() - 1.0).abs() < 1e-12));
    assert!(a.iter().all(|&d| !is_degenerate_direction(&c, d, tol()).unwrap()));
    assert_eq!(a, sample_directions(SAMPLES, SEED, &c, tol()).unwrap());
    assert_eq!(sample_directions(0, SEED, &c, tol()), Err(ShadowError::NoSamples));
}

#[test]
fn measure_examples() {
    assert_eq!(measure_k(&unit_cube(), SAMPLES, SEED, tol()).unwrap().verdict, Verdict::ConstantK(6));
    assert_eq!(measure_k(&prism(7, 1.0, 1.0).unwrap(), SAMPLES, SEED, tol()).unwrap().verdict, Verdict::ConstantK(9));
    let r = measure_k(&tetrahedron().unwrap(), SAMPLES, SEED, tol()).unwrap();
    let Verdict::NonConstant { witness } = r.verdict else { panic!("tetrahedron looked constant") };
    let mut counts = [witness[0].1, witness[1].1];
    counts.sort_unstable();
    assert_eq!(counts, [3, 4]);
    // the witness is real
    for (d, k) in witness {
        let (pts, _) = raw(&tetrahedron().unwrap());
        assert_eq!(jarvis_shadow(&pts, [d.x, d.y, d.z]), k);
    }
}

#[test]
fn report_is_in_sample_order() {
    let p = prism(5, 1.0, 1.0).unwrap();
    let r = measure_k(&p, 300, 9, tol()).unwrap();
    let dirs = sample_directions(300, 9, &p, tol()).unwrap();
    assert_eq!(r.per_direction.iter().map(|x| x.0).collect::<Vec<_>>(), dirs);
    assert_eq!(r.k(), Some(7));
}

#[test]
fn both_routes_match_jarvis_oracle() {
    for name in ["cube", "prism8", "equitruncated_pyramid", "pentagonal_rotunda", "truncated_cuboctahedron"] {
        let p = generate(name, &Params::new()).unwrap();
        let (pts, _) = raw(&p);
        for d in sample_directions(100, 5, &p, tol()).unwrap() {
            let (hull, edges) = silhouette_counts(&p, d, tol()).unwrap();
            assert_eq!(hull, edges, "{name} {d:?}");
            assert_eq!(hull, jarvis_shadow(&pts, [d.x, d.y, d.z]), "{name} {d:?}");
        }
    }
}

#[test]
fn random_hulls_match_jarvis_oracle() {
    for seed in 0..10 {
        let p = hull3d(&sphere_points(12 + seed as usize, 100 + seed), tol()).unwrap();
        let (pts, _) = raw(&p);
        for d in sample_directions(50, seed, &p, tol()).unwrap() {
            assert_eq!(silhouette_count(&p, d, tol()).unwrap(), jarvis_shadow(&pts, [d.x, d.y, d.z]));
        }
    }
}
