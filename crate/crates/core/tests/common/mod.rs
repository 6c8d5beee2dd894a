#![allow(dead_code)]

use std::path::PathBuf;

use ndarray::Array2;
use racah::{PolyMatrix, RacahParams};

/// Fixture directory, overridable with `RACAH_FIXTURES`.
pub fn fixture_dir() -> PathBuf {
    std::env::var_os("RACAH_FIXTURES")
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures"))
}

pub fn fixture(name: &str) -> String {
    let path = fixture_dir().join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

fn header_value(header: &str, key: &str) -> f64 {
    header
        .split_whitespace()
        .find_map(|kv| kv.strip_prefix(&format!("{key}=")))
        .unwrap_or_else(|| panic!("header lacks {key}"))
        .parse()
        .unwrap()
}

/// Matrix CSV with a `# racah a=.. b=.. alpha=.. beta=..` header.
pub fn fixture_matrix(name: &str) -> PolyMatrix {
    let text = fixture(name);
    let mut lines = text.lines();
    let header = lines.next().unwrap();
    let p = RacahParams::new(
        header_value(header, "a"),
        header_value(header, "b"),
        header_value(header, "alpha"),
        header_value(header, "beta"),
    )
    .unwrap();
    let rows: Vec<Vec<f64>> = lines
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(|v| v.trim().parse().unwrap()).collect())
        .collect();
    let n = rows.len();
    let values = Array2::from_shape_vec((n, rows[0].len()), rows.concat()).unwrap();
    PolyMatrix::new(p, values).unwrap()
}

/// Table of transform variances: `table[l][column]`, columns ordered by
/// `rho in {0.9, 0.95, 0.98}` then `a in {0, 10, 30, 50}`.
pub fn table2() -> Vec<Vec<f64>> {
    fixture("table2.csv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('l'))
        .map(|l| l.split(',').skip(1).map(|v| v.parse().unwrap()).collect())
        .collect()
}

pub const TABLE2_RHO: [f64; 3] = [0.9, 0.95, 0.98];
pub const TABLE2_A: [f64; 4] = [0.0, 10.0, 30.0, 50.0];

/// Largest difference over entries where the reference exceeds `floor` in magnitude,
/// and over the remaining entries.
pub fn split_diff(m: &PolyMatrix, reference: &PolyMatrix, floor: f64) -> (f64, f64) {
    let mut big = 0.0f64;
    let mut small = 0.0f64;
    for ((i, j), r) in reference.values().indexed_iter() {
        let d = (m.get(i, j) - r).abs();
        if r.abs() > floor {
            big = big.max(d);
        } else {
            small = small.max(d);
        }
    }
    (big, small)
}
