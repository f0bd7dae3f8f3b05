//! Numerical checks around the Milnor tube and the combined verdict.

pub mod residual;
pub mod scan;
pub mod verdict;

pub use residual::{milnor_residual, relative_sing_residual, sing_residual, sing_residual_parts};
pub use scan::{milnor_scan, sing_scan, singular_points, MilnorScan, ScanOptions, ShellEvidence, SingScan, SingShell};
pub use verdict::{tube_verdict, RouteRecord, ThomStatus, TubeInput, TubeOptions, TubeStatus, TubeVerdict};
