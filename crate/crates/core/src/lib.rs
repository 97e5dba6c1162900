//! Singularity and cusp-point analysis of planar 3-RPR parallel manipulators.

pub mod atlas;
pub mod cuspfind;
pub mod directkin;
pub mod error;
pub mod geometry;
pub mod kinecore;
pub mod polysolve;
pub mod slicepoly;

pub use atlas::{
    find_stabilization, region_map, slice_atlas, sweep, trace_singular_curves, AtlasOptions, RegionGrid,
    SingularCurve, SliceAtlas, SweepEntry, Window,
};
pub use cuspfind::{find_cusps, find_cusps_report, verify_cusp, CuspOptions, CuspPoint, CuspReport, CuspVerdict};
pub use directkin::{assembly_modes, count_assembly_modes, AssemblyMode, ModeCounter, MAX_ASSEMBLY_MODES};
pub use error::{Error, Result};
pub use geometry::{
    BetaSign, Configuration, GeometryFile, JointPoint, ManipulatorGeometry, SlicePose,
};
pub use kinecore::{HessianTriple, JacobianMatrix, KFactors, KernelVectors};
pub use polysolve::{BiPoly, UniPoly};
