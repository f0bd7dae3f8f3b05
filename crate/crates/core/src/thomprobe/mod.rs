//! Numerical probes of limiting normal planes and of the Thom `(a_F)`
//! condition along candidate strata.

pub mod curve;
pub mod frame;
pub mod grassmann;
pub mod probe;

pub use curve::{default_battery, restrict, CurveGerm, Schedule};
pub use frame::{normal_family, FrameEvaluator, NormalFrame, SymbolicFamily};
pub use grassmann::Subspace;
pub use probe::{
    limit_normal_direction, limit_normal_plane, thom_test, CurveProbe, DirectionProbe, ProbeOptions, ProbeResult,
    ProbeVerdict, Stratum,
};
