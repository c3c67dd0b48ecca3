//! Frozen expected values. Edit only when the claim itself changes.

/// (catalog name, expected k) for every solid the catalog claims equiprojective.
pub const EXPECTED_K: &[(&str, usize)] = &[
    ("cube", 6),
    ("prism3", 5),
    ("prism4", 6),
    ("prism5", 7),
    ("prism6", 8),
    ("prism7", 9),
    ("prism8", 10),
    ("gyrobifastigium", 6),
    ("biprism3_4", 7),
    ("equitruncated_tetrahedron", 10),
    ("equitruncated_pyramid", 10),
    ("equitruncated_triangular_cupola", 11),
    ("equitruncated_pentagonal_rotunda1", 21),
    ("equitruncated_pentagonal_rotunda2", 23),
    ("equitruncated_rhombic_dodecahedron", 10),
    ("equitruncated_octahedron", 12),
    ("equitruncated_cuboctahedron1", 13),
    ("equitruncated_cuboctahedron2", 16),
    ("equitruncated_cuboctahedron3", 17),
];

/// Solids the catalog lists as not equiprojective.
pub const NEGATIVE: &[&str] = &["tetrahedron", "square_pyramid", "triangular_cupola", "pentagonal_rotunda"];

/// Face counts of the canonical generators.
pub const FACE_COUNTS: &[(&str, usize)] = &[
    ("tetrahedron", 4),
    ("square_pyramid", 5),
    ("triangular_cupola", 8),
    ("pentagonal_rotunda", 17),
    ("rhombic_dodecahedron", 12),
    ("truncated_octahedron", 14),
    ("truncated_cuboctahedron", 26),
];

pub const SEED: u64 = 42;
pub const SAMPLES: usize = 1000;
