use rpr_core::atlas::{find_stabilization, slice_atlas, AtlasOptions};
use rpr_core::ManipulatorGeometry;

fn options() -> AtlasOptions {
    AtlasOptions { grid: (256, 256), region_resolution: (96, 96), ..Default::default() }
}

#[test]
fn four_mode_region_is_enclosed_by_a_two_mode_region() {
    let g = ManipulatorGeometry::reference();
    let a = slice_atlas(&g, 31.0, &options()).unwrap();
    assert_eq!(a.cusp_count, 4);
    assert!(a.checks.cusps_on_curves);
    assert_eq!(a.region_signature, vec![(2, 1), (4, 1)]);
    let comps = a.regions.components();
    let four = comps.iter().filter(|c| c.count == 4).max_by_key(|c| c.cells.len()).unwrap();
    let (around, border) = a.regions.surroundings(four);
    assert_eq!(around, vec![2]);
    assert!(!border);
}

#[test]
fn reference_pattern_is_constant_beyond_31() {
    let g = ManipulatorGeometry::reference();
    let (stable, entries) = find_stabilization(&g, (28.0, 37.0), 3.0, &options());
    let counts: Vec<Option<usize>> = entries.iter().map(|e| e.cusp_count).collect();
    assert_eq!(counts, [Some(8), Some(4), Some(4), Some(4)]);
    assert_eq!(stable, Some(31.0));
}
