//! Shared fixtures for the benchmarks.

use rpr_core::geometry::config_from_slice;
use rpr_core::{Configuration, ManipulatorGeometry, SlicePose};

/// Slice used by the reference cusp count.
pub const REFERENCE_L1: f64 = 14.98;

pub fn reference() -> ManipulatorGeometry {
    ManipulatorGeometry::reference()
}

/// Poses spread over the torus, deterministic.
pub fn poses(n: usize, l1: f64) -> Vec<SlicePose> {
    (0..n)
        .map(|k| {
            let u = k as f64 / n as f64;
            SlicePose::new(l1, std::f64::consts::TAU * u - 3.0, 2.399963 * k as f64 % std::f64::consts::TAU)
        })
        .collect()
}

pub fn configurations(geom: &ManipulatorGeometry, n: usize) -> Vec<Configuration> {
    poses(n, REFERENCE_L1).iter().map(|p| config_from_slice(geom, p)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_closed() {
        let g = reference();
        for c in configurations(&g, 16) {
            assert!(!c.is_degenerate());
        }
    }
}
